//! Crystal operations on integral matrices: unit transfers between adjacent
//! rows or columns.

use serde::{Deserialize, Serialize};

use crate::crystal_bin::{Axis, Direction};
use crate::matrices::IntegralMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransferRecord {
    pub direction: Direction,
    pub index: usize,
    /// Column (vertical transfers) or row (horizontal transfers) of the transfer.
    pub at: usize,
    pub amount: usize,
}

/// Whether moving `a` units into `M[k, at]` from `M[k+1, at]` (rows), or into
/// `M[at, k]` from `M[at, k+1]` (columns), is allowed. Negative `a` moves the
/// other way.
pub fn transfer_legal(m: &IntegralMatrix, axis: Axis, k: usize, at: usize, a: isize) -> bool {
    assert!(a != 0, "transfer amount must be nonzero");
    // work on rows; columns are handled by transposition
    let e = |r: usize, c: usize| -> isize {
        match axis {
            Axis::Rows => m.value(r, c) as isize,
            Axis::Cols => m.value(c, r) as isize,
        }
    };
    let len = match axis {
        Axis::Rows => m.width(),
        Axis::Cols => m.height(),
    };
    let l = at;
    let before = if l == 0 {
        e(k + 1, 0) >= a
    } else {
        (0..l).all(|lp| (lp..l).map(|j| e(k + 1, j + 1) - e(k, j)).sum::<isize>() >= a.max(0))
    };
    let after = (l + 1..=len.max(l) + 1).all(|lp| (l..lp).map(|j| e(k, j) - e(k + 1, j + 1)).sum::<isize>() >= (-a).max(0));
    before && after
}

/// Performs a legal transfer of `a` units; `None` when not legal.
pub fn transfer(m: &IntegralMatrix, axis: Axis, k: usize, at: usize, a: isize) -> Option<IntegralMatrix> {
    if !transfer_legal(m, axis, k, at, a) {
        return None;
    }
    let ((r0, c0), (r1, c1)) = match axis {
        Axis::Rows => ((k, at), (k + 1, at)),
        Axis::Cols => ((at, k), (at, k + 1)),
    };
    let mut out = m.clone();
    let v0 = m.value(r0, c0) as isize + a;
    let v1 = m.value(r1, c1) as isize - a;
    assert!(v0 >= 0 && v1 >= 0, "legal transfer produced a negative entry");
    out.set(r0, c0, v0 as usize);
    out.set(r1, c1, v1 as usize);
    Some(out)
}

/// Units of the lower row (or right column) as `)`, then units of the upper
/// row (or left column) as `(`, per position along the pair.
fn counts(m: &IntegralMatrix, axis: Axis, index: usize) -> Vec<(usize, usize)> {
    let len = match axis {
        Axis::Rows => m.width(),
        Axis::Cols => m.height(),
    };
    let mut v: Vec<(usize, usize)> = (0..len)
        .map(|p| match axis {
            Axis::Rows => (m.value(index + 1, p), m.value(index, p)),
            Axis::Cols => (m.value(p, index + 1), m.value(p, index)),
        })
        .collect();
    while v.last() == Some(&(0, 0)) {
        v.pop();
    }
    v
}

/// Per position: (unmatched `)`, unmatched `(`).
fn unmatched(counts: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut open_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = vec![(0, 0); counts.len()];
    for (p, &(closes, opens)) in counts.iter().enumerate() {
        let mut left = closes;
        while left > 0 {
            match open_stack.last_mut() {
                Some((_, n)) => {
                    let take = left.min(*n);
                    *n -= take;
                    left -= take;
                    if *n == 0 {
                        open_stack.pop();
                    }
                }
                None => break,
            }
        }
        out[p].0 = left;
        if opens > 0 {
            open_stack.push((p, opens));
        }
    }
    for (p, n) in open_stack {
        out[p].1 = n;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParenProfile {
    /// Symbols per position, separated by `|`.
    pub text: String,
    /// Unmatched `)` and `(` per position.
    pub unmatched: Vec<(usize, usize)>,
    pub unmatched_close: usize,
    pub unmatched_open: usize,
}

pub fn paren_profile(m: &IntegralMatrix, axis: Axis, index: usize) -> ParenProfile {
    let c = counts(m, axis, index);
    let un = unmatched(&c);
    let text = c.iter().map(|&(cl, op)| ")".repeat(cl) + &"(".repeat(op)).collect::<Vec<_>>().join("|");
    ParenProfile {
        text,
        unmatched_close: un.iter().map(|u| u.0).sum(),
        unmatched_open: un.iter().map(|u| u.1).sum(),
        unmatched: un,
    }
}

pub fn potential(m: &IntegralMatrix, d: Direction, index: usize) -> usize {
    let (len, e): (usize, Box<dyn Fn(usize, usize) -> isize>) = if d.is_vertical() {
        (m.width(), Box::new(|r, c| m.value(r, c) as isize))
    } else {
        (m.height(), Box::new(|r, c| m.value(c, r) as isize))
    };
    let i = index;
    match d {
        Direction::Up | Direction::Left => {
            let mut run = e(i + 1, 0);
            let mut best = run;
            for j in 0..len {
                run += e(i + 1, j + 1) - e(i, j);
                best = best.max(run);
            }
            best as usize
        }
        Direction::Down | Direction::Right => {
            let mut run = 0;
            let mut best = 0;
            for j in (0..len).rev() {
                run += e(i, j) - e(i + 1, j + 1);
                best = best.max(run);
            }
            best as usize
        }
    }
}

/// Applies one unit transfer in direction `d` between `index, index+1`.
pub fn apply(m: &IntegralMatrix, d: Direction, index: usize) -> Option<(IntegralMatrix, TransferRecord)> {
    let axis = if d.is_vertical() { Axis::Rows } else { Axis::Cols };
    let un = unmatched(&counts(m, axis, index));
    let (at, a) = if d.is_raising() {
        (un.iter().rposition(|u| u.0 > 0)?, 1)
    } else {
        (un.iter().position(|u| u.1 > 0)?, -1)
    };
    let out = transfer(m, axis, index, at, a).expect("unmatched unit is transferable");
    Some((out, TransferRecord { direction: d, index, at, amount: 1 }))
}

pub fn move_op(m: &IntegralMatrix, d: Direction, index: usize) -> Option<IntegralMatrix> {
    apply(m, d, index).map(|(out, _)| out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::matrices::fixtures::ints;
    use crate::matrices::{diagon, Encoded};
    use crate::shapes::{part, SkewShape};
    use proptest::prelude::*;

    fn example() -> IntegralMatrix {
        ints(&[&[1, 2, 1, 3, 3, 1, 2, 4, 0], &[2, 1, 1, 4, 2, 0, 5, 2, 0]])
    }

    pub(crate) fn all_integral(h: usize, w: usize, max: usize) -> impl Iterator<Item = IntegralMatrix> {
        let n = h * w;
        let total = (max + 1).pow(n as u32);
        (0..total).map(move |mut code| {
            let mut m = IntegralMatrix::zeros(h, w);
            for k in 0..n {
                m.set(k / w, k % w, code % (max + 1));
                code /= max + 1;
            }
            m
        })
    }

    #[test]
    fn legal_transfers_in_example() {
        let m = example();
        assert!(transfer_legal(&m, Axis::Rows, 0, 3, 2));
        assert!(!transfer_legal(&m, Axis::Rows, 0, 3, 3));
        assert!(transfer_legal(&m, Axis::Rows, 0, 7, -4));
        assert!(!transfer_legal(&m, Axis::Rows, 0, 7, -5));
        assert!(!transfer_legal(&m, Axis::Rows, 0, 3, -1));
        for l in 0..3 {
            for a in 1..4 {
                assert!(!transfer_legal(&m, Axis::Rows, 0, l, a));
            }
        }
    }

    #[test]
    fn successive_unit_moves_in_example() {
        let mut m = example();
        let mut cols = Vec::new();
        while let Some((next, rec)) = apply(&m, Direction::Up, 0) {
            cols.push(rec.at);
            m = next;
            if cols.len() == 2 {
                assert_eq!(m, ints(&[&[1, 2, 1, 5, 3, 1, 2, 4, 0], &[2, 1, 1, 2, 2, 0, 5, 2, 0]]));
            }
        }
        assert_eq!(cols, vec![3, 3, 0, 0]);
        let mut m = example();
        let mut cols = Vec::new();
        while let Some((next, rec)) = apply(&m, Direction::Down, 0) {
            cols.push(rec.at);
            m = next;
        }
        assert_eq!(cols, vec![7, 7, 7, 7]);
        assert_eq!((m.value(0, 7), m.value(1, 7)), (0, 6));
    }

    #[test]
    fn potentials_in_example() {
        let m = example();
        assert_eq!(potential(&m, Direction::Up, 0), 4);
        assert_eq!(potential(&m, Direction::Down, 0), 4);
        for d in Direction::ALL {
            assert_eq!(potential(&IntegralMatrix::zeros(3, 3), d, 1), 0);
        }
    }

    #[test]
    fn paren_profiles() {
        let p = paren_profile(&example(), Axis::Rows, 0);
        assert_eq!(p.text, "))(|)((|)(|))))(((|))(((|(|)))))((|))((((");
        assert_eq!((p.unmatched_close, p.unmatched_open), (4, 4));
        let d = paren_profile(&diagon(&part(&[2, 1])), Axis::Rows, 0);
        assert_eq!(d.text, "((|)");
        assert_eq!((d.unmatched_close, d.unmatched_open), (0, 1));
        assert_eq!(paren_profile(&IntegralMatrix::zeros(2, 2), Axis::Rows, 0).text, "");
    }

    #[test]
    fn diagonal_matrices_admit_no_raising() {
        let m = diagon(&part(&[8, 8, 5, 3, 1]));
        for i in 0..6 {
            assert!(apply(&m, Direction::Up, i).is_none());
            assert!(apply(&m, Direction::Left, i).is_none());
        }
    }

    #[test]
    fn unit_moves_are_the_unique_legal_unit_transfers() {
        for m in all_integral(3, 3, 2) {
            for d in Direction::ALL {
                let axis = if d.is_vertical() { Axis::Rows } else { Axis::Cols };
                let a = if d.is_raising() { 1 } else { -1 };
                for idx in 0..2 {
                    let legal: Vec<usize> = (0..4).filter(|&at| transfer_legal(&m, axis, idx, at, a)).collect();
                    assert!(legal.len() <= 1, "{m:?} {d} {idx}");
                    assert_eq!(apply(&m, d, idx).map(|(_, r)| r.at), legal.first().copied(), "{m:?} {d} {idx}");
                }
            }
        }
    }

    #[test]
    fn multi_unit_transfers_are_repeated_unit_moves() {
        for m in all_integral(2, 3, 3) {
            for d in Direction::ALL {
                let axis = if d.is_vertical() { Axis::Rows } else { Axis::Cols };
                let sign = if d.is_raising() { 1 } else { -1 };
                for at in 0..3 {
                    for a in 2..5isize {
                        let by_units = {
                            let mut cur = m.clone();
                            let mut ok = true;
                            for _ in 0..a {
                                match apply(&cur, d, 0) {
                                    Some((next, rec)) if rec.at == at => cur = next,
                                    _ => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            ok.then_some(cur)
                        };
                        assert_eq!(transfer(&m, axis, 0, at, sign * a), by_units, "{m:?} {d} {at} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn potential_counts_moves_exhaustively() {
        for m in all_integral(3, 3, 2) {
            for d in Direction::ALL {
                for idx in 0..3 {
                    let mut cur = m.clone();
                    let mut n = 0;
                    while let Some(next) = move_op(&cur, d, idx) {
                        cur = next;
                        n += 1;
                    }
                    assert_eq!(n, potential(&m, d, idx), "{m:?} {d} {idx}");
                }
            }
        }
    }

    #[test]
    fn conditions_via_potentials() {
        for m in all_integral(2, 3, 2) {
            for sk in SkewShape::all_up_to(6) {
                let (k, l) = (sk.inner(), sk.outer());
                let by_potential = m.row_sums() == sk.row_lengths()
                    && (0..4).all(|i| potential(&m, Direction::Up, i) <= k.get(i) - k.get(i + 1))
                    && (0..4).all(|i| potential(&m, Direction::Down, i) <= l.get(i) - l.get(i + 1));
                assert_eq!(by_potential, m.tableau_condition(&sk), "{m:?} {sk}");
                let by_potential = m.col_sums() == sk.row_lengths()
                    && (0..4).all(|j| potential(&m, Direction::Left, j) <= k.get(j) - k.get(j + 1))
                    && (0..4).all(|j| potential(&m, Direction::Right, j) <= l.get(j) - l.get(j + 1));
                assert_eq!(by_potential, m.lr_condition(&sk), "{m:?} {sk}");
            }
        }
    }

    fn arb_integral(h: usize, w: usize, max: usize) -> impl Strategy<Value = IntegralMatrix> {
        proptest::collection::vec(0..=max, h * w)
            .prop_map(move |v| IntegralMatrix::from_rows(v.chunks(w).map(|c| c.to_vec()).collect()).unwrap())
    }

    fn power(m: &IntegralMatrix, d: Direction, idx: usize, n: usize) -> Option<IntegralMatrix> {
        (0..n).try_fold(m.clone(), |cur, _| move_op(&cur, d, idx))
    }

    proptest! {
        #[test]
        fn moves_are_inverse(m in arb_integral(4, 4, 4), idx in 0usize..4) {
            for d in Direction::ALL {
                if let Some(next) = move_op(&m, d, idx) {
                    prop_assert_eq!(move_op(&next, d.opposite(), idx), Some(m.clone()));
                }
            }
        }

        #[test]
        fn margin_identities(m in arb_integral(4, 4, 4), idx in 0usize..4) {
            let (r, c) = m.margins();
            let pd = |d| potential(&m, d, idx) as isize;
            prop_assert_eq!(pd(Direction::Down) - pd(Direction::Up), r.get(idx) as isize - r.get(idx + 1) as isize);
            prop_assert_eq!(pd(Direction::Right) - pd(Direction::Left), c.get(idx) as isize - c.get(idx + 1) as isize);
        }

        #[test]
        fn diagonal_minimum_is_invariant(m in arb_integral(4, 4, 4), i in 0usize..3) {
            for d in Direction::ALL {
                if let Some(next) = move_op(&m, d, i) {
                    for j in 0..4 {
                        let (r, c) = if d.is_vertical() { (i, j) } else { (j, i) };
                        prop_assert_eq!(
                            m.value(r, c).min(m.value(r + 1, c + 1)),
                            next.value(r, c).min(next.value(r + 1, c + 1))
                        );
                    }
                }
            }
        }

        #[test]
        fn successive_transfer_positions_are_monotone(m in arb_integral(4, 5, 4), i in 0usize..3) {
            for d in Direction::ALL {
                let mut cur = m.clone();
                let mut last: Option<usize> = None;
                while let Some((next, rec)) = apply(&cur, d, i) {
                    if let Some(p) = last {
                        if d.is_raising() { prop_assert!(rec.at <= p) } else { prop_assert!(rec.at >= p) }
                    }
                    last = Some(rec.at);
                    cur = next;
                }
            }
        }

        #[test]
        fn perpendicular_invariance(m in arb_integral(4, 4, 4), i in 0usize..3, j in 0usize..3) {
            for v in [Direction::Up, Direction::Down] {
                if let Some(next) = move_op(&m, v, i) {
                    for h in [Direction::Left, Direction::Right] {
                        prop_assert_eq!(potential(&m, h, j), potential(&next, h, j));
                    }
                }
            }
        }

        #[test]
        fn commutation(m in arb_integral(4, 4, 4), i in 0usize..3, j in 0usize..3) {
            for v in [Direction::Up, Direction::Down] {
                for h in [Direction::Left, Direction::Right] {
                    if let (Some(a), Some(b)) = (move_op(&m, v, i), move_op(&m, h, j)) {
                        prop_assert_eq!(move_op(&a, h, j), move_op(&b, v, i));
                    }
                }
            }
        }

        #[test]
        fn power_commutation(m in arb_integral(4, 4, 4), i in 0usize..3, j in 0usize..3, p in 1usize..4, q in 1usize..4) {
            if let (Some(a), Some(b)) = (power(&m, Direction::Up, i, p), power(&m, Direction::Left, j, q)) {
                prop_assert_eq!(power(&a, Direction::Left, j, q), power(&b, Direction::Up, i, p));
            }
        }
    }
}
