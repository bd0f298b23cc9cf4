//! Exhaustion of crystal operations, normal forms, and the decomposition of a
//! matrix into a pair of extremal matrices.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Range;

use thiserror::Error;

use crate::crystal_bin::{self, Direction, MoveRecord};
use crate::crystal_int::{self, TransferRecord};
use crate::matrices::{diagon, diagram, BinaryMatrix, Encoded, IntegralMatrix, Matrix, Mode};
use crate::shapes::{Composition, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsageError {
    #[error("no directions given")]
    NoDirections,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("P admits an upward move at row pair {0}")]
    NotTopExhausted(usize),
    #[error("Q admits a leftward move at column pair {0}")]
    NotLeftExhausted(usize),
    #[error("row sums of P ({0}) do not match the shape given by Q ({1})")]
    Margins(Composition, Composition),
    #[error("internal error: composed matrix does not decompose back to the input")]
    RoundTrip,
}

/// A single applied operation of either mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpRecord {
    Move(MoveRecord),
    Transfer(TransferRecord),
}

impl OpRecord {
    pub fn direction(&self) -> Direction {
        match self {
            OpRecord::Move(m) => m.direction,
            OpRecord::Transfer(t) => t.direction,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            OpRecord::Move(m) => m.index,
            OpRecord::Transfer(t) => t.index,
        }
    }
}

impl std::fmt::Display for OpRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpRecord::Move(m) => write!(f, "{} {} at ({},{})", m.direction, m.index, m.position.0, m.position.1),
            OpRecord::Transfer(t) => write!(f, "{} {} at {}", t.direction, t.index, t.at),
        }
    }
}

/// Matrices carrying a double crystal structure.
pub trait CrystalMatrix: Encoded + Clone + Eq + Hash + Debug {
    const MODE: Mode;
    fn potential(&self, d: Direction, index: usize) -> usize;
    fn step(&self, d: Direction, index: usize) -> Option<(Self, OpRecord)>;
    fn extent(&self) -> (usize, usize);
    fn row_margin(&self) -> Composition;
    fn col_margin(&self) -> Composition;
    /// The normal form parametrised by `shape`.
    fn normal(shape: &Partition) -> Self;
    fn zero() -> Self;
}

impl CrystalMatrix for BinaryMatrix {
    const MODE: Mode = Mode::Binary;
    fn potential(&self, d: Direction, index: usize) -> usize {
        crystal_bin::potential(self, d, index)
    }
    fn step(&self, d: Direction, index: usize) -> Option<(Self, OpRecord)> {
        crystal_bin::apply(self, d, index).map(|(m, r)| (m, OpRecord::Move(r)))
    }
    fn extent(&self) -> (usize, usize) {
        (self.height(), self.width())
    }
    fn row_margin(&self) -> Composition {
        self.row_sums()
    }
    fn col_margin(&self) -> Composition {
        self.col_sums()
    }
    fn normal(shape: &Partition) -> Self {
        diagram(shape)
    }
    fn zero() -> Self {
        Matrix::zeros(0, 0)
    }
}

impl CrystalMatrix for IntegralMatrix {
    const MODE: Mode = Mode::Integral;
    fn potential(&self, d: Direction, index: usize) -> usize {
        crystal_int::potential(self, d, index)
    }
    fn step(&self, d: Direction, index: usize) -> Option<(Self, OpRecord)> {
        crystal_int::apply(self, d, index).map(|(m, r)| (m, OpRecord::Transfer(r)))
    }
    fn extent(&self) -> (usize, usize) {
        (self.height(), self.width())
    }
    fn row_margin(&self) -> Composition {
        self.row_sums()
    }
    fn col_margin(&self) -> Composition {
        self.col_sums()
    }
    fn normal(shape: &Partition) -> Self {
        diagon(shape)
    }
    fn zero() -> Self {
        Matrix::zeros(0, 0)
    }
}

/// Applies every operation of `ops`, in order, each fully, lowest index first,
/// until none is possible.
pub fn exhaust_ranges<M: CrystalMatrix>(m: &M, ops: &[(Direction, Range<usize>)]) -> (M, Vec<OpRecord>) {
    let mut cur = m.clone();
    let mut seq = Vec::new();
    'outer: loop {
        let lo = ops.iter().map(|(_, r)| r.start).min().unwrap_or(0);
        let hi = ops.iter().map(|(_, r)| r.end).max().unwrap_or(0);
        for idx in lo..hi {
            for (d, r) in ops {
                if !r.contains(&idx) {
                    continue;
                }
                if let Some((next, rec)) = cur.step(*d, idx) {
                    cur = next;
                    seq.push(rec);
                    while let Some((next, rec)) = cur.step(*d, idx) {
                        cur = next;
                        seq.push(rec);
                    }
                    continue 'outer;
                }
            }
        }
        return (cur, seq);
    }
}

/// Index range used for a direction: pairs `(i, i+1)` with `i + 1 < bound`,
/// where the bound defaults to the stored height (vertical) or width.
fn default_range<M: CrystalMatrix>(m: &M, d: Direction, bound: Option<usize>) -> Range<usize> {
    let (h, w) = m.extent();
    let b = bound.unwrap_or(if d.is_vertical() { h } else { w });
    0..b.saturating_sub(1)
}

pub fn exhaust<M: CrystalMatrix>(
    m: &M,
    directions: &[Direction],
    bound: Option<usize>,
) -> Result<(M, Vec<OpRecord>), UsageError> {
    if directions.is_empty() {
        return Err(UsageError::NoDirections);
    }
    let ops: Vec<(Direction, Range<usize>)> = directions.iter().map(|&d| (d, default_range(m, d, bound))).collect();
    Ok(exhaust_ranges(m, &ops))
}

fn exhaust_one<M: CrystalMatrix>(m: &M, d: Direction) -> M {
    exhaust(m, &[d], None).expect("one direction").0
}

/// Applies a recorded sequence (direction, index pairs) in order.
pub fn replay<M: CrystalMatrix>(m: &M, seq: &[OpRecord]) -> Option<M> {
    seq.iter().try_fold(m.clone(), |cur, op| cur.step(op.direction(), op.index()).map(|(n, _)| n))
}

/// Applies the inverse of a recorded sequence.
pub fn replay_inverse<M: CrystalMatrix>(m: &M, seq: &[OpRecord]) -> Option<M> {
    seq.iter()
        .rev()
        .try_fold(m.clone(), |cur, op| cur.step(op.direction().opposite(), op.index()).map(|(n, _)| n))
}

/// The shape `lambda` when `m` is the normal form for `lambda`.
pub fn is_normal<M: CrystalMatrix>(m: &M) -> Option<Partition> {
    let lambda = m.row_margin().to_partition().ok()?;
    (M::normal(&lambda) == *m).then_some(lambda)
}

pub fn normal_form<M: CrystalMatrix>(m: &M) -> Partition {
    let (n, _) = exhaust(m, &[Direction::Up, Direction::Left], None).expect("directions given");
    is_normal(&n).expect("fully raised matrix is a normal form")
}

pub fn decompose<M: CrystalMatrix>(m: &M) -> (M, M) {
    (exhaust_one(m, Direction::Up), exhaust_one(m, Direction::Left))
}

/// Shape determined by a fully left-raised matrix.
fn shape_of_left_extremal<M: CrystalMatrix>(q: &M) -> Composition {
    match M::MODE {
        Mode::Binary => match q.col_margin().to_partition() {
            Ok(p) => p.conjugate().as_composition().clone(),
            Err(_) => q.col_margin(),
        },
        Mode::Integral => q.col_margin(),
    }
}

pub fn compose<M: CrystalMatrix>(p: &M, q: &M) -> Result<M, ComposeError> {
    let (h, _) = p.extent();
    if let Some(i) = (0..h).find(|&i| p.potential(Direction::Up, i) > 0) {
        return Err(ComposeError::NotTopExhausted(i));
    }
    let (_, w) = q.extent();
    if let Some(j) = (0..w).find(|&j| q.potential(Direction::Left, j) > 0) {
        return Err(ComposeError::NotLeftExhausted(j));
    }
    let shape = shape_of_left_extremal(q);
    if p.row_margin() != shape || !q.col_margin().is_partition() {
        return Err(ComposeError::Margins(p.row_margin(), shape));
    }
    let (_, ups) = exhaust(q, &[Direction::Up], None).expect("one direction");
    let m = replay_inverse(p, &ups).ok_or(ComposeError::RoundTrip)?;
    if decompose(&m) != (p.clone(), q.clone()) {
        return Err(ComposeError::RoundTrip);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrystalAxis {
    Vertical,
    Horizontal,
}

/// Lowering potentials at the highest weight vertex of the vertical or
/// horizontal crystal containing `m`.
pub fn crystal_class_potentials<M: CrystalMatrix>(m: &M, axis: CrystalAxis) -> Composition {
    let (top, d) = match axis {
        CrystalAxis::Vertical => (exhaust_one(m, Direction::Up), Direction::Down),
        CrystalAxis::Horizontal => (exhaust_one(m, Direction::Left), Direction::Right),
    };
    let (h, w) = top.extent();
    let n = if axis == CrystalAxis::Vertical { h } else { w };
    Composition::new((0..n).map(|i| top.potential(d, i)).collect())
}

/// Shape reconstructed from class potentials: `lambda_k = sum_{i>=k} d_i`.
pub fn shape_from_potentials(d: &Composition) -> Partition {
    let n = d.len();
    let parts = (0..n).map(|k| (k..n).map(|i| d.get(i)).sum()).collect();
    Partition::new(parts).expect("suffix sums decrease")
}

/// Normal form matrix of `m` in its own mode.
pub fn normal_matrix<M: CrystalMatrix>(m: &M) -> M {
    M::normal(&normal_form(m))
}
