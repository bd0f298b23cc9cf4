//! Implicit shapes of submatrices, the local rules relating them, growth
//! diagrams in four orientations, and the French and sliced normal forms.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::crystal_bin::Direction;
use crate::doublecrystal::{exhaust_ranges, normal_form, CrystalMatrix};
use crate::matrices::{BinaryMatrix, Entry, IntegralMatrix, Interval, Matrix, Mode};
use crate::shapes::{strip_le, Partition, ShapeError, Strip};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeDatumError {
    #[error("{lower} is not below {upper} by a {kind} strip")]
    NotStrip { lower: Partition, upper: Partition, kind: Strip },
    #[error("{0} is not an admissible shape for the given neighbours")]
    NotAdmissible(Partition),
    #[error("binary entry must be 0 or 1, got {0}")]
    NotABit(usize),
    #[error("no preimage: {0}")]
    NoPreimage(String),
}

type Cell = (usize, usize);

fn require(lower: &Partition, upper: &Partition, kind: Strip) -> Result<(), ShapeDatumError> {
    if strip_le(lower, upper, kind) {
        Ok(())
    } else {
        Err(ShapeDatumError::NotStrip { lower: lower.clone(), upper: upper.clone(), kind })
    }
}

fn sgn(p: &Partition, i: usize) -> isize {
    p.get(i) as isize
}

/// The shape of the normal form of `m`.
pub fn implicit_shape<M: CrystalMatrix>(m: &M) -> Partition {
    normal_form(m)
}

/// One pass of the carry loop: the part computed at `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BurgeStep {
    pub index: usize,
    pub d: usize,
    pub part: usize,
    pub carry: usize,
}

pub fn burge_forward(lambda: &Partition, mu: &Partition, nu: &Partition, m: usize) -> Result<Partition, ShapeDatumError> {
    burge_forward_traced(lambda, mu, nu, m).map(|(k, _)| k)
}

pub fn burge_forward_traced(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    m: usize,
) -> Result<(Partition, Vec<BurgeStep>), ShapeDatumError> {
    require(lambda, mu, Strip::Horizontal)?;
    require(lambda, nu, Strip::Horizontal)?;
    let n = lambda.len();
    let mut kappa = vec![0; n + 1];
    let mut carry = m;
    let mut trace = Vec::with_capacity(n);
    for i in (1..=n).rev() {
        let d = mu.get(i) + nu.get(i) + carry - lambda.get(i);
        kappa[i] = d.min(lambda.get(i - 1));
        carry = d - kappa[i];
        trace.push(BurgeStep { index: i, d, part: kappa[i], carry });
    }
    kappa[0] = mu.get(0) + nu.get(0) + carry - lambda.get(0);
    let kappa = Partition::new(kappa).expect("carry loop yields a partition");
    Ok((kappa, trace))
}

pub fn burge_backward(mu: &Partition, nu: &Partition, kappa: &Partition) -> Result<(Partition, usize), ShapeDatumError> {
    require(mu, kappa, Strip::Horizontal)?;
    require(nu, kappa, Strip::Horizontal)?;
    let n = kappa.len().max(mu.len()).max(nu.len());
    let mut lambda = Vec::with_capacity(n + 1);
    let mut carry: isize = 0;
    for i in 0..=n {
        let d = sgn(mu, i) + sgn(nu, i) - sgn(kappa, i) - carry;
        let part = d.max(sgn(kappa, i + 1));
        carry = part - d;
        lambda.push(part as usize);
    }
    let lambda = Partition::new(lambda).map_err(|e| ShapeDatumError::NoPreimage(e.to_string()))?;
    let m = carry as usize;
    match burge_forward(&lambda, mu, nu, m) {
        Ok(k) if k == *kappa => Ok((lambda, m)),
        _ => Err(ShapeDatumError::NoPreimage(format!("{mu:?}, {nu:?}, {kappa:?}"))),
    }
}

pub fn rsk_forward(lambda: &Partition, mu: &Partition, nu: &Partition, m: usize) -> Result<Partition, ShapeDatumError> {
    require(lambda, mu, Strip::Horizontal)?;
    require(lambda, nu, Strip::Horizontal)?;
    let n = mu.len().max(nu.len());
    let mut kappa = vec![m + mu.get(0).max(nu.get(0))];
    for i in 0..n {
        kappa.push(mu.get(i).min(nu.get(i)) - lambda.get(i) + mu.get(i + 1).max(nu.get(i + 1)));
    }
    Ok(Partition::new(kappa).expect("closed formula yields a partition"))
}

pub fn rsk_backward(mu: &Partition, nu: &Partition, kappa: &Partition) -> Result<(Partition, usize), ShapeDatumError> {
    require(mu, kappa, Strip::Horizontal)?;
    require(nu, kappa, Strip::Horizontal)?;
    let fail = || ShapeDatumError::NoPreimage(format!("{mu:?}, {nu:?}, {kappa:?}"));
    let m = kappa.get(0).checked_sub(mu.get(0).max(nu.get(0))).ok_or_else(fail)?;
    let n = kappa.len().max(mu.len()).max(nu.len());
    let lambda = (0..n)
        .map(|i| {
            let v = sgn(mu, i).min(sgn(nu, i)) + sgn(mu, i + 1).max(sgn(nu, i + 1)) - sgn(kappa, i + 1);
            usize::try_from(v).map_err(|_| fail())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lambda = Partition::new(lambda).map_err(|_| fail())?;
    match rsk_forward(&lambda, mu, nu, m) {
        Ok(k) if k == *kappa => Ok((lambda, m)),
        _ => Err(fail()),
    }
}

/// How optional squares removed below are paired with optional squares added above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Insertion {
    Row,
    Column,
}

struct OptionalSquares {
    pairs: Vec<(Cell, Cell)>,
    free: Cell,
}

fn cells_of(p: &Partition) -> BTreeSet<Cell> {
    p.cells().into_iter().collect()
}

fn from_cells(cells: &BTreeSet<Cell>) -> Option<Partition> {
    let rows = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
    let mut parts = vec![0; rows];
    for &(i, _) in cells {
        parts[i] += 1;
    }
    let p = Partition::new(parts).ok()?;
    (cells_of(&p) == *cells).then_some(p)
}

fn meet(a: &Partition, b: &Partition) -> Partition {
    let n = a.len().min(b.len());
    Partition::new((0..n).map(|i| a.get(i).min(b.get(i))).collect()).expect("meet of partitions")
}

fn join(a: &Partition, b: &Partition) -> Partition {
    let n = a.len().max(b.len());
    Partition::new((0..n).map(|i| a.get(i).max(b.get(i))).collect()).expect("join of partitions")
}

fn optional_squares(mu: &Partition, nu: &Partition, flavor: Insertion) -> Result<OptionalSquares, ShapeDatumError> {
    let (mu_t, nu_t) = (mu.conjugate(), nu.conjugate());
    let below: Vec<Cell> = (0..mu.len())
        .map(|i| (i, mu.get(i) - 1))
        .filter(|&(i, j)| nu_t.get(j) == i + 1)
        .collect();
    let above: Vec<Cell> = (0..=mu.len().max(nu.len()))
        .map(|i| (i, nu.get(i)))
        .filter(|&(i, j)| mu_t.get(j) == i)
        .collect();
    let fail = || ShapeDatumError::NoPreimage(format!("no shape datum for {mu:?}, {nu:?}"));
    if above.len() != below.len() + 1 {
        return Err(fail());
    }
    let mut pairs = Vec::with_capacity(below.len());
    for &s in &below {
        let t = match flavor {
            Insertion::Row => above.iter().filter(|t| t.0 > s.0).min_by_key(|t| t.0),
            Insertion::Column => above.iter().filter(|t| t.1 > s.1).min_by_key(|t| t.1),
        };
        pairs.push((s, *t.ok_or_else(fail)?));
    }
    let image: BTreeSet<Cell> = pairs.iter().map(|p| p.1).collect();
    let rest: Vec<Cell> = above.iter().copied().filter(|t| !image.contains(t)).collect();
    match (image.len() == pairs.len(), rest.as_slice()) {
        (true, [free]) => Ok(OptionalSquares { pairs, free: *free }),
        _ => Err(fail()),
    }
}

/// Binary local rule, forward: `lambda <=v mu`, `lambda <=h nu`.
pub fn dual_forward(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    bit: usize,
    flavor: Insertion,
) -> Result<Partition, ShapeDatumError> {
    if bit > 1 {
        return Err(ShapeDatumError::NotABit(bit));
    }
    require(lambda, mu, Strip::Vertical)?;
    require(lambda, nu, Strip::Horizontal)?;
    let sq = optional_squares(mu, nu, flavor)?;
    let lam = cells_of(lambda);
    let missing: BTreeSet<Cell> = cells_of(&meet(mu, nu)).difference(&lam).copied().collect();
    if !lam.is_subset(&cells_of(&meet(mu, nu))) || !missing.iter().all(|c| sq.pairs.iter().any(|p| p.0 == *c)) {
        return Err(ShapeDatumError::NotAdmissible(lambda.clone()));
    }
    let mut kappa = cells_of(&join(mu, nu));
    kappa.extend(sq.pairs.iter().filter(|p| missing.contains(&p.0)).map(|p| p.1));
    if bit == 1 {
        kappa.insert(sq.free);
    }
    Ok(from_cells(&kappa).expect("optional squares extend the union to a partition"))
}

/// Binary local rule, backward: `mu <=h kappa`, `nu <=v kappa`.
pub fn dual_backward(
    mu: &Partition,
    nu: &Partition,
    kappa: &Partition,
    flavor: Insertion,
) -> Result<(Partition, usize), ShapeDatumError> {
    require(mu, kappa, Strip::Horizontal)?;
    require(nu, kappa, Strip::Vertical)?;
    let sq = optional_squares(mu, nu, flavor)?;
    let kap = cells_of(kappa);
    let union = cells_of(&join(mu, nu));
    let added: BTreeSet<Cell> = kap.difference(&union).copied().collect();
    let optional = |c: &Cell| *c == sq.free || sq.pairs.iter().any(|p| p.1 == *c);
    if !union.is_subset(&kap) || !added.iter().all(optional) {
        return Err(ShapeDatumError::NotAdmissible(kappa.clone()));
    }
    let mut lam = cells_of(&meet(mu, nu));
    for (s, t) in &sq.pairs {
        if added.contains(t) {
            lam.remove(s);
        }
    }
    let lambda = from_cells(&lam).expect("removing optional squares leaves a partition");
    Ok((lambda, added.contains(&sq.free) as usize))
}

/// The four local rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeDatum {
    Burge,
    Rsk,
    RowInsertion,
    ColumnInsertion,
}

impl ShapeDatum {
    pub const ALL: [ShapeDatum; 4] =
        [ShapeDatum::Burge, ShapeDatum::Rsk, ShapeDatum::RowInsertion, ShapeDatum::ColumnInsertion];

    /// The rule governing implicit shapes of corner submatrices.
    pub fn for_growth(mode: Mode, orientation: Orientation) -> Self {
        use Orientation::*;
        match (mode, orientation) {
            (Mode::Integral, NorthWest | SouthEast) => ShapeDatum::Burge,
            (Mode::Integral, NorthEast | SouthWest) => ShapeDatum::Rsk,
            (Mode::Binary, NorthWest | SouthEast) => ShapeDatum::RowInsertion,
            (Mode::Binary, NorthEast | SouthWest) => ShapeDatum::ColumnInsertion,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            ShapeDatum::Burge | ShapeDatum::Rsk => Mode::Integral,
            ShapeDatum::RowInsertion | ShapeDatum::ColumnInsertion => Mode::Binary,
        }
    }

    /// Relations `lambda -> mu` and `lambda -> nu`.
    pub fn strips(self) -> (Strip, Strip) {
        match self.mode() {
            Mode::Integral => (Strip::Horizontal, Strip::Horizontal),
            Mode::Binary => (Strip::Vertical, Strip::Horizontal),
        }
    }

    pub fn forward(self, lambda: &Partition, mu: &Partition, nu: &Partition, entry: usize) -> Result<Partition, ShapeDatumError> {
        match self {
            ShapeDatum::Burge => burge_forward(lambda, mu, nu, entry),
            ShapeDatum::Rsk => rsk_forward(lambda, mu, nu, entry),
            ShapeDatum::RowInsertion => dual_forward(lambda, mu, nu, entry, Insertion::Row),
            ShapeDatum::ColumnInsertion => dual_forward(lambda, mu, nu, entry, Insertion::Column),
        }
    }

    pub fn backward(self, mu: &Partition, nu: &Partition, kappa: &Partition) -> Result<(Partition, usize), ShapeDatumError> {
        match self {
            ShapeDatum::Burge => burge_backward(mu, nu, kappa),
            ShapeDatum::Rsk => rsk_backward(mu, nu, kappa),
            ShapeDatum::RowInsertion => dual_backward(mu, nu, kappa, Insertion::Row),
            ShapeDatum::ColumnInsertion => dual_backward(mu, nu, kappa, Insertion::Column),
        }
    }
}

impl fmt::Display for ShapeDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeDatum::Burge => "burge",
            ShapeDatum::Rsk => "rsk",
            ShapeDatum::RowInsertion => "row-insertion",
            ShapeDatum::ColumnInsertion => "column-insertion",
        })
    }
}

impl FromStr for ShapeDatum {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ShapeDatum::ALL
            .into_iter()
            .find(|d| d.to_string() == s)
            .ok_or_else(|| format!("unknown shape datum {s:?}"))
    }
}

/// The corner of the matrix contained in every submatrix of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "NW")]
    NorthWest,
    #[serde(rename = "NE")]
    NorthEast,
    #[serde(rename = "SW")]
    SouthWest,
    #[serde(rename = "SE")]
    SouthEast,
}

impl Orientation {
    pub const ALL: [Orientation; 4] =
        [Orientation::NorthWest, Orientation::NorthEast, Orientation::SouthWest, Orientation::SouthEast];

    /// Rows and columns of the submatrix attached to grid point `(i, j)`.
    pub fn block(self, i: usize, j: usize) -> (Interval, Interval) {
        match self {
            Orientation::NorthWest => (Interval::prefix(i), Interval::prefix(j)),
            Orientation::NorthEast => (Interval::prefix(i), Interval::suffix(j)),
            Orientation::SouthWest => (Interval::suffix(i), Interval::prefix(j)),
            Orientation::SouthEast => (Interval::suffix(i), Interval::suffix(j)),
        }
    }

    // Canonical coordinates grow away from the corner.
    fn point(self, a: usize, b: usize, h: usize, w: usize) -> (usize, usize) {
        match self {
            Orientation::NorthWest => (a, b),
            Orientation::NorthEast => (a, w - b),
            Orientation::SouthWest => (h - a, b),
            Orientation::SouthEast => (h - a, w - b),
        }
    }

    fn cell(self, a: usize, b: usize, h: usize, w: usize) -> (usize, usize) {
        match self {
            Orientation::NorthWest => (a, b),
            Orientation::NorthEast => (a, w - 1 - b),
            Orientation::SouthWest => (h - 1 - a, b),
            Orientation::SouthEast => (h - 1 - a, w - 1 - b),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::NorthWest => "NW",
            Orientation::NorthEast => "NE",
            Orientation::SouthWest => "SW",
            Orientation::SouthEast => "SE",
        })
    }
}

impl FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Orientation::ALL
            .into_iter()
            .find(|o| o.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown orientation {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("grid point ({row},{col}): local rules give {local}, normalisation gives {direct}")]
pub struct GrowthMismatch {
    pub row: usize,
    pub col: usize,
    pub local: Partition,
    pub direct: Partition,
}

/// Shapes of the corner submatrices of a matrix, on the grid
/// `0..=height` by `0..=width` of its support.
#[derive(Clone)]
pub struct GrowthDiagram<T> {
    orientation: Orientation,
    grid: Vec<Vec<Partition>>,
    source: Matrix<T>,
}

impl<T: Entry> PartialEq for GrowthDiagram<T> {
    fn eq(&self, other: &Self) -> bool {
        self.orientation == other.orientation && self.grid == other.grid && self.source == other.source
    }
}

impl<T: Entry> Eq for GrowthDiagram<T> {}

impl<T: Entry> fmt::Debug for GrowthDiagram<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrowthDiagram")
            .field("orientation", &self.orientation)
            .field("grid", &self.grid)
            .field("source", &self.source)
            .finish()
    }
}

impl<T: Entry> GrowthDiagram<T>
where
    Matrix<T>: CrystalMatrix,
{
    /// Fills the grid from its empty borders by the local rule alone.
    pub fn compute(m: &Matrix<T>, orientation: Orientation) -> Self {
        let source = m.trimmed();
        let (h, w) = (source.height(), source.width());
        let datum = ShapeDatum::for_growth(T::MODE, orientation);
        let mut grid = vec![vec![Partition::empty(); w + 1]; h + 1];
        for a in 0..h {
            for b in 0..w {
                let at = |a, b| {
                    let (p, q) = orientation.point(a, b, h, w);
                    grid[p][q].clone()
                };
                let (i, j) = orientation.cell(a, b, h, w);
                let kappa = datum
                    .forward(&at(a, b), &at(a, b + 1), &at(a + 1, b), source.value(i, j))
                    .expect("neighbouring implicit shapes satisfy the local rule");
                let (p, q) = orientation.point(a + 1, b + 1, h, w);
                grid[p][q] = kappa;
            }
        }
        GrowthDiagram { orientation, grid, source }
    }

    /// Recovers the matrix from the two borders facing away from the corner:
    /// `across` runs along the far horizontal border (left to right) and
    /// `down` along the far vertical border (top to bottom).
    pub fn reconstruct(orientation: Orientation, across: &[Partition], down: &[Partition]) -> Result<Self, ShapeDatumError> {
        let (h, w) = (down.len().saturating_sub(1), across.len().saturating_sub(1));
        let bad = |what: &str| ShapeDatumError::NoPreimage(what.to_string());
        if across.is_empty() || down.is_empty() {
            return Err(bad("empty border"));
        }
        let datum = ShapeDatum::for_growth(T::MODE, orientation);
        let mut grid: Vec<Vec<Option<Partition>>> = vec![vec![None; w + 1]; h + 1];
        let far_row = orientation.point(h, 0, h, w).0;
        let far_col = orientation.point(0, w, h, w).1;
        for (q, p) in across.iter().enumerate() {
            grid[far_row][q] = Some(p.clone());
        }
        for (r, p) in down.iter().enumerate() {
            if grid[r][far_col].as_ref().is_some_and(|x| x != p) {
                return Err(bad("borders disagree at their common corner"));
            }
            grid[r][far_col] = Some(p.clone());
        }
        let mut source = Matrix::<T>::zeros(h, w);
        for a in (0..h).rev() {
            for b in (0..w).rev() {
                let at = |a, b| {
                    let (p, q) = orientation.point(a, b, h, w);
                    grid[p][q].clone().expect("filled before use")
                };
                let (lambda, m) = datum.backward(&at(a, b + 1), &at(a + 1, b), &at(a + 1, b + 1))?;
                let (i, j) = orientation.cell(a, b, h, w);
                source.set(i, j, T::from_value(m).ok_or(ShapeDatumError::NotABit(m))?);
                let (p, q) = orientation.point(a, b, h, w);
                grid[p][q] = Some(lambda);
            }
        }
        let grid: Vec<Vec<Partition>> = grid.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
        let near_empty = (0..=w).all(|b| {
            let (p, q) = orientation.point(0, b, h, w);
            grid[p][q].is_empty()
        }) && (0..=h).all(|a| {
            let (p, q) = orientation.point(a, 0, h, w);
            grid[p][q].is_empty()
        });
        if !near_empty {
            return Err(bad("borders do not shrink to the empty shape"));
        }
        Ok(GrowthDiagram { orientation, grid, source })
    }

    /// Compares every grid point with the implicit shape of its submatrix.
    pub fn verify(&self) -> Result<(), GrowthMismatch> {
        for (i, row) in self.grid.iter().enumerate() {
            for (j, local) in row.iter().enumerate() {
                let (rows, cols) = self.orientation.block(i, j);
                let direct = implicit_shape(&self.source.restrict(rows, cols));
                if direct != *local {
                    return Err(GrowthMismatch { row: i, col: j, local: local.clone(), direct });
                }
            }
        }
        Ok(())
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn source(&self) -> &Matrix<T> {
        &self.source
    }

    pub fn grid(&self) -> &[Vec<Partition>] {
        &self.grid
    }

    pub fn shape(&self, i: usize, j: usize) -> &Partition {
        &self.grid[i][j]
    }

    pub fn border(&self, side: Side) -> Vec<Partition> {
        let (h, w) = (self.grid.len() - 1, self.grid[0].len() - 1);
        match side {
            Side::Top => self.grid[0].clone(),
            Side::Bottom => self.grid[h].clone(),
            Side::Left => self.grid.iter().map(|r| r[0].clone()).collect(),
            Side::Right => self.grid.iter().map(|r| r[w].clone()).collect(),
        }
    }

    /// Text grid: each interior point shows the matrix entry of the square
    /// ending there, then the shape; the empty shape is `.`.
    pub fn render(&self) -> String {
        let shape = |p: &Partition| {
            if p.is_empty() {
                ".".to_string()
            } else {
                p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            }
        };
        let cells: Vec<Vec<String>> = self
            .grid
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, p)| {
                        if i == 0 || j == 0 {
                            shape(p)
                        } else {
                            format!("{} {}", self.source.value(i - 1, j - 1), shape(p))
                        }
                    })
                    .collect()
            })
            .collect();
        let cols = self.grid[0].len();
        let widths: Vec<usize> =
            (0..cols).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0).max(j.to_string().len())).collect();
        let label = (self.grid.len() - 1).to_string().len();
        let mut out = String::new();
        let header: Vec<String> = (0..cols).map(|j| format!("{:<w$}", j, w = widths[j])).collect();
        out.push_str(&format!("{:>label$} | {}\n", "", header.join("  ").trim_end()));
        out.push_str(&format!("{}-+-{}\n", "-".repeat(label), "-".repeat(widths.iter().sum::<usize>() + 2 * (cols - 1))));
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().enumerate().map(|(j, c)| format!("{:<w$}", c, w = widths[j])).collect();
            out.push_str(&format!("{:>label$} | {}\n", i, line.join("  ").trim_end()));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "orientation": self.orientation,
            "mode": T::MODE.to_string(),
            "datum": ShapeDatum::for_growth(T::MODE, self.orientation),
            "matrix": self.source.values(),
            "grid": self.grid.iter().map(|r| r.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// A French normal form: the diagram of `shape` drawn upside down in the
/// first `k` rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrenchForm {
    pub shape: Partition,
    pub k: usize,
}

impl FrenchForm {
    pub fn new(shape: Partition, k: usize) -> Result<Self, ShapeError> {
        if shape.len() > k {
            return Err(ShapeError::TooLong { shape: shape.to_string(), index: k });
        }
        Ok(FrenchForm { shape, k })
    }

    pub fn matrix(&self) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(self.k, self.shape.get(0));
        for (r, c) in self.shape.cells() {
            m.set(self.k - 1 - r, c, true);
        }
        m
    }
}

pub fn french_form(shape: &Partition, k: usize) -> Result<BinaryMatrix, ShapeError> {
    Ok(FrenchForm::new(shape.clone(), k)?.matrix())
}

pub fn recognize_french(m: &BinaryMatrix, k: usize) -> Option<Partition> {
    let shape = m.col_sums().to_partition().ok()?.conjugate();
    let f = FrenchForm::new(shape, k).ok()?;
    (f.matrix() == *m).then_some(f.shape)
}

/// Exhausts downward moves among the first `k` rows and leftward moves among
/// the first `l` columns.
pub fn french_normalize(m: &BinaryMatrix, k: usize, l: usize) -> BinaryMatrix {
    exhaust_ranges(m, &[(Direction::Down, 0..k.saturating_sub(1)), (Direction::Left, 0..l.saturating_sub(1))]).0
}

/// The sliced form: below row `k` and left of column `l`, each diagonal
/// carries the number of columns of `shape` of one length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlicedForm {
    pub shape: Partition,
    pub k: usize,
    pub l: usize,
}

impl SlicedForm {
    pub fn new(shape: Partition, k: usize, l: usize) -> Result<Self, ShapeError> {
        if shape.len() > l {
            return Err(ShapeError::TooLong { shape: shape.to_string(), index: l });
        }
        Ok(SlicedForm { shape, k, l })
    }

    pub fn matrix(&self) -> IntegralMatrix {
        let (k, l) = (self.k, self.l);
        let mut m = IntegralMatrix::zeros(k + l, l);
        for i in k..k + l {
            for j in 0..l {
                let d = i - k + l - j;
                m.set(i, j, self.shape.get(d - 1) - self.shape.get(d));
            }
        }
        m
    }
}

pub fn sliced_form(shape: &Partition, k: usize, l: usize) -> Result<IntegralMatrix, ShapeError> {
    Ok(SlicedForm::new(shape.clone(), k, l)?.matrix())
}

pub fn recognize_sliced(m: &IntegralMatrix, k: usize, l: usize) -> Option<Partition> {
    let rows = m.height().saturating_sub(k);
    let parts = (0..rows).map(|i| m.row_sum_in(k + i, 0..l)).collect();
    let f = SlicedForm::new(Partition::new(parts).ok()?, k, l).ok()?;
    (f.matrix() == *m).then_some(f.shape)
}

/// Exhausts upward transfers between rows at index `k` or beyond and
/// rightward transfers among the first `l` columns.
pub fn slice_normalize(m: &IntegralMatrix, k: usize, l: usize) -> IntegralMatrix {
    let h = m.height();
    exhaust_ranges(m, &[(Direction::Up, k..h.saturating_sub(1).max(k)), (Direction::Right, 0..l.saturating_sub(1))]).0
}
