//! Schutzenberger duals computed by exhausting crystal operations in the
//! opposite direction, and complements inside a rectangle.

use thiserror::Error;

use crate::crystal_bin::Direction;
use crate::doublecrystal::{exhaust_ranges, CrystalMatrix};
use crate::matrices::{Entry, Matrix};
use crate::shapes::{revert, Flavor, Partition, ShapeError, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("tableau of shape {0} is not straight")]
    Skew(String),
    #[error("bound {bound} is below the {needed} rows the tableau occupies")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("shape {shape} does not fit in the {rows}x{cols} rectangle")]
    DoesNotFit { shape: String, rows: usize, cols: usize },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// Rows occupied by the largest shape of the chain.
pub fn default_bound(t: &Tableau) -> usize {
    t.chain().iter().map(|p| p.len()).max().unwrap_or(0)
}

pub fn dual(t: &Tableau) -> Result<Tableau, DualError> {
    dual_with_bound(t, default_bound(t))
}

/// The dual, exhausting vertical operations on the first `bound` rows.
pub fn dual_with_bound(t: &Tableau, bound: usize) -> Result<Tableau, DualError> {
    if !t.is_straight() {
        return Err(DualError::Skew(t.shape().to_string()));
    }
    let needed = default_bound(t);
    if bound < needed {
        return Err(DualError::BoundTooSmall { bound, needed });
    }
    let chain = t.chain();
    let k = bound;
    let rev = |p: &Partition| revert(p.as_composition(), k).expect("bounded length").padded(k);
    let diff = |a: Vec<usize>, b: Vec<usize>| -> Vec<usize> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
    let columns: Vec<Vec<usize>> = chain
        .windows(2)
        .map(|w| match t.flavor() {
            Flavor::Semistandard => diff(w[1].padded(k), w[0].padded(k)),
            Flavor::Reverse => diff(rev(&w[0]), rev(&w[1])),
            Flavor::ReverseTranspose => diff(w[0].padded(k), w[1].padded(k)),
            Flavor::Transpose => diff(rev(&w[1]), rev(&w[0])),
        })
        .collect();
    let out = match t.flavor() {
        Flavor::Semistandard => across::<usize>(&columns, k, Direction::Down, Reading::RevertedSuffix),
        Flavor::Reverse => across::<usize>(&columns, k, Direction::Up, Reading::Prefix),
        Flavor::ReverseTranspose => across::<bool>(&columns, k, Direction::Down, Reading::RevertedPrefix),
        Flavor::Transpose => across::<bool>(&columns, k, Direction::Up, Reading::Suffix),
    };
    Ok(Tableau::new(t.flavor().reversed(), out)?)
}

#[derive(Clone, Copy)]
enum Reading {
    Prefix,
    Suffix,
    RevertedPrefix,
    RevertedSuffix,
}

/// Builds the matrix with the given columns, exhausts `dir` on its rows and
/// reads partial row sums over column prefixes or suffixes.
fn across<T: Entry>(columns: &[Vec<usize>], k: usize, dir: Direction, reading: Reading) -> Vec<Partition>
where
    Matrix<T>: CrystalMatrix,
{
    let n = columns.len();
    let rows: Vec<Vec<usize>> = (0..k).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let m = Matrix::<T>::from_values(&rows);
    let (m, _) = exhaust_ranges(&m, &[(dir, 0..k.saturating_sub(1))]);
    let sums = |cols: std::ops::Range<usize>| -> Vec<usize> { (0..k).map(|i| m.row_sum_in(i, cols.clone())).collect() };
    let shape = |v: Vec<usize>, reverted: bool| {
        let v = if reverted { v.into_iter().rev().collect() } else { v };
        Partition::new(v).expect("exhausted matrix has partition margins")
    };
    (0..=n)
        .map(|j| match reading {
            Reading::Prefix => shape(sums(0..j), false),
            Reading::Suffix => shape(sums(j..n), false),
            Reading::RevertedPrefix => shape(sums(0..j), true),
            Reading::RevertedSuffix => shape(sums(j..n), true),
        })
        .collect()
}

/// The dual of a semistandard or reverse semistandard tableau through its
/// transposed encoding and horizontal operations.
pub fn dual_by_rows(t: &Tableau) -> Result<Tableau, DualError> {
    match t.flavor() {
        Flavor::Semistandard | Flavor::Reverse => {}
        _ => return dual(t),
    }
    if !t.is_straight() {
        return Err(DualError::Skew(t.shape().to_string()));
    }
    let k = default_bound(t);
    let chain = t.chain();
    let rev = |p: &Partition| revert(p.as_composition(), k).expect("bounded length").padded(k);
    let mut rows: Vec<Vec<usize>> = chain
        .windows(2)
        .map(|w| {
            let (a, b) = match t.flavor() {
                Flavor::Semistandard => (w[1].padded(k), w[0].padded(k)),
                _ => (rev(&w[0]), rev(&w[1])),
            };
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();
    if rows.is_empty() {
        rows.push(vec![0; k]);
    }
    let m = Matrix::<usize>::from_values(&rows);
    let dir = if t.flavor() == Flavor::Semistandard { Direction::Right } else { Direction::Left };
    let (m, _) = exhaust_ranges(&m, &[(dir, 0..k.saturating_sub(1))]);
    let n = chain.len() - 1;
    let sums = |r: std::ops::Range<usize>| -> Vec<usize> { (0..k).map(|j| m.col_sum_in(j, r.clone())).collect() };
    let out: Vec<Partition> = (0..=n)
        .map(|i| {
            let v = if t.flavor() == Flavor::Semistandard { sums(i..n).into_iter().rev().collect() } else { sums(0..i) };
            Partition::new(v).expect("exhausted matrix has partition margins")
        })
        .collect();
    Ok(Tableau::new(t.flavor().reversed(), out)?)
}

/// Replaces every shape `p` of the chain by `rho - revert(p, rows)`, where
/// `rho` is the `rows x cols` rectangle.
pub fn rotate_complement(t: &Tableau, rows: usize, cols: usize) -> Result<Tableau, DualError> {
    let outer = t.shape().outer().clone();
    if outer.len() > rows || outer.get(0) > cols {
        return Err(DualError::DoesNotFit { shape: outer.to_string(), rows, cols });
    }
    let chain = t
        .chain()
        .iter()
        .map(|p| {
            let r = revert(p.as_composition(), rows).expect("fits");
            Partition::new((0..rows).map(|i| cols - r.get(i)).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tableau::new(t.flavor().reversed(), chain)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancellation::{strip_chains, strips_between};
    use crate::doublecrystal::tests::integral_p;
    use crate::insertion_oracles::rectify;
    use crate::insertion_oracles::tests::{tableau_lbar, tableau_r, tableau_r_star, tableau_s};
    use crate::matrices::encode_integral;
    use crate::matrices::fixtures::ints;
    use crate::shapes::{part, Strip};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lbar_star() -> Tableau {
        Tableau::parse(Flavor::Reverse, "4,4,4,3,3,1,1,1|3,3,3,2,2,0,0,0|2,2,2,1,1|1,1,0|0").unwrap()
    }

    fn s_star_rotated() -> Tableau {
        Tableau::parse(Flavor::Semistandard, "7:0|5:0,1,2|3:1,1,2,3,4|0:2,3,4,4,4,5,5,5|0:5,6,6,6,6,6,6,6").unwrap()
    }

    #[test]
    fn running_duals() {
        assert_eq!(dual(&tableau_r()).unwrap(), tableau_r_star());
        assert_eq!(dual(&tableau_r_star()).unwrap(), tableau_r());
        assert_eq!(dual(&tableau_lbar()).unwrap(), lbar_star());
        assert_eq!(dual(&lbar_star()).unwrap(), tableau_lbar());
        assert_eq!(dual_by_rows(&tableau_lbar()).unwrap(), lbar_star());
    }

    #[test]
    fn single_cell() {
        let t = Tableau::new(Flavor::Semistandard, vec![part(&[]), part(&[1])]).unwrap();
        let d = dual(&t).unwrap();
        assert_eq!(d, Tableau::new(Flavor::Reverse, vec![part(&[1]), part(&[])]).unwrap());
        let e = Tableau::constant(Flavor::Semistandard, Partition::empty());
        assert_eq!(dual(&e).unwrap(), Tableau::constant(Flavor::Reverse, Partition::empty()));
    }

    #[test]
    fn rotated_dual_of_s() {
        let d = dual(&tableau_s()).unwrap();
        let rot = rotate_complement(&d, 5, 8).unwrap();
        assert_eq!(rot, s_star_rotated());
        assert_eq!(rectify(&rot), tableau_s());
        let p_tilde = ints(&[
            &[1, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 0, 0, 0, 0],
            &[0, 2, 1, 1, 1, 0, 0],
            &[0, 0, 1, 1, 3, 3, 0],
            &[0, 0, 0, 0, 0, 1, 7],
        ]);
        assert_eq!(encode_integral(&rot).unwrap(), p_tilde);
        let (down, _) = exhaust_ranges(&integral_p(), &[(Direction::Down, 0..4)]);
        assert_eq!(down, p_tilde);
    }

    #[test]
    fn rotate_complement_edge_cases() {
        let e = Tableau::constant(Flavor::Semistandard, Partition::empty());
        assert_eq!(rotate_complement(&e, 2, 3).unwrap(), Tableau::constant(Flavor::Reverse, part(&[3, 3])));
        assert!(matches!(rotate_complement(&tableau_s(), 4, 8), Err(DualError::DoesNotFit { .. })));
        let t = tableau_s();
        assert_eq!(rotate_complement(&rotate_complement(&t, 5, 8).unwrap(), 5, 8).unwrap(), t);
    }

    #[test]
    fn skew_input_rejected() {
        let t = Tableau::new(Flavor::Semistandard, vec![part(&[1]), part(&[2])]).unwrap();
        assert!(matches!(dual(&t), Err(DualError::Skew(_))));
        assert!(matches!(dual_with_bound(&tableau_s(), 3), Err(DualError::BoundTooSmall { .. })));
    }

    fn small_tableaux(flavor: Flavor, max: usize, letters: usize) -> Vec<Tableau> {
        let strip = flavor.strip();
        (0..=max)
            .flat_map(Partition::all_of_size)
            .flat_map(|shape| strip_chains(&Partition::empty(), &shape, letters, strip))
            .map(|chain| Tableau::new(flavor, chain).unwrap())
            .collect()
    }

    #[test]
    fn involution_and_weight_exhaustive() {
        for flavor in [Flavor::Semistandard, Flavor::Transpose] {
            for t in small_tableaux(flavor, 5, 4) {
                let d = dual(&t).unwrap();
                assert_eq!(d.flavor(), flavor.reversed());
                assert_eq!(d.weight(), t.weight(), "{t}");
                assert_eq!(d.shape().outer(), t.shape().outer());
                assert_eq!(dual(&d).unwrap(), t, "{t}");
                assert_eq!(dual_by_rows(&t).unwrap(), d, "{t}");
            }
        }
    }

    fn random_sst(rng: &mut ChaCha8Rng, max: usize) -> Tableau {
        let letters = rng.gen_range(1..=5);
        let box_ = part(&[max; 4]);
        let mut chain = vec![Partition::empty()];
        for _ in 0..letters {
            let cur = chain.last().unwrap().clone();
            let room = max - cur.size();
            let options: Vec<Partition> = strips_between(&cur, &box_, Strip::Horizontal)
                .into_iter()
                .filter(|p| p.size() - cur.size() <= room)
                .collect();
            chain.push(options[rng.gen_range(0..options.len())].clone());
        }
        Tableau::new(Flavor::Semistandard, chain).unwrap()
    }

    #[test]
    fn random_duals_rectify_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let t = random_sst(&mut rng, 10);
            let d = dual(&t).unwrap();
            assert_eq!(dual(&d).unwrap(), t);
            let outer = t.shape().outer().clone();
            let (k, l) = (outer.len().max(1) + rng.gen_range(0..2), outer.get(0) + rng.gen_range(0..2));
            let rot = rotate_complement(&d, k, l).unwrap();
            assert_eq!(rectify(&rot), t, "{t}");
        }
    }

    #[test]
    fn transpose_duals_rectify_back() {
        for t in small_tableaux(Flavor::Transpose, 5, 3) {
            let d = dual(&t).unwrap();
            let outer = t.shape().outer().clone();
            let rot = rotate_complement(&d, outer.len(), outer.get(0)).unwrap();
            assert_eq!(rectify(&rot), t, "{t}");
        }
    }
}
