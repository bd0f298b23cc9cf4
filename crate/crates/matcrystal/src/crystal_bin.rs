//! Crystal operations on binary matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::matrices::BinaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    pub fn opposite(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::Up | Direction::Down)
    }

    pub fn is_raising(self) -> bool {
        matches!(self, Direction::Up | Direction::Left)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(format!("unknown direction {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Rows,
    Cols,
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rows" => Ok(Axis::Rows),
            "cols" | "columns" => Ok(Axis::Cols),
            _ => Err(format!("unknown axis {s:?}")),
        }
    }
}

/// One applied binary move; `position` is where the moving bit `1` sat before.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveRecord {
    pub direction: Direction,
    pub index: usize,
    pub position: (usize, usize),
}

/// Literal interchangeability test for the pair at `(k, l)` and its neighbour
/// below (vertical) or to the right (horizontal).
pub fn interchangeable(m: &BinaryMatrix, k: usize, l: usize, orientation: Orientation) -> bool {
    match orientation {
        Orientation::Vertical => {
            if m.get(k, l) == m.get(k + 1, l) {
                return false;
            }
            let w = m.width().max(l + 1);
            let left_ok = (0..=l).all(|lp| m.row_sum_in(k, lp..l) >= m.row_sum_in(k + 1, lp..l));
            let right_ok = (l..w).all(|lp| m.row_sum_in(k, l + 1..lp + 1) <= m.row_sum_in(k + 1, l + 1..lp + 1));
            left_ok && right_ok
        }
        Orientation::Horizontal => {
            if m.get(k, l) == m.get(k, l + 1) {
                return false;
            }
            let h = m.height().max(k + 1);
            let above_ok = (0..=k).all(|kp| m.col_sum_in(l, kp..k) <= m.col_sum_in(l + 1, kp..k));
            let below_ok = (k..h).all(|kp| m.col_sum_in(l, k + 1..kp + 1) >= m.col_sum_in(l + 1, k + 1..kp + 1));
            above_ok && below_ok
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symbol {
    Open,
    Close,
    Blank,
}

/// Symbols between rows `i, i+1` (per column) or columns `j, j+1` (per row,
/// top to bottom). For columns, `(1,0)` reads as `(` and `(0,1)` as `)`.
fn symbols(m: &BinaryMatrix, axis: Axis, index: usize) -> Vec<Symbol> {
    let n = match axis {
        Axis::Rows => m.width(),
        Axis::Cols => m.height(),
    };
    (0..n)
        .map(|p| {
            let (a, b) = match axis {
                Axis::Rows => (m.get(index, p), m.get(index + 1, p)),
                Axis::Cols => (m.get(p, index), m.get(p, index + 1)),
            };
            match (axis, a, b) {
                (Axis::Rows, false, true) | (Axis::Cols, true, false) => Symbol::Open,
                (Axis::Rows, true, false) | (Axis::Cols, false, true) => Symbol::Close,
                _ => Symbol::Blank,
            }
        })
        .collect()
}

/// Positions of unmatched `)` and unmatched `(`, each in increasing order.
fn unmatched(symbols: &[Symbol]) -> (Vec<usize>, Vec<usize>) {
    let mut closes = Vec::new();
    let mut opens: Vec<usize> = Vec::new();
    for (p, s) in symbols.iter().enumerate() {
        match s {
            Symbol::Open => opens.push(p),
            Symbol::Close => {
                if opens.pop().is_none() {
                    closes.push(p);
                }
            }
            Symbol::Blank => {}
        }
    }
    (closes, opens)
}

/// Parenthesis diagnostics for one pair of adjacent rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParenProfile {
    pub text: String,
    pub matched: Vec<bool>,
    pub unmatched_open: usize,
    pub unmatched_close: usize,
}

pub fn paren_profile(m: &BinaryMatrix, axis: Axis, index: usize) -> ParenProfile {
    let syms = symbols(m, axis, index);
    let (closes, opens) = unmatched(&syms);
    let text = syms
        .iter()
        .map(|s| match s {
            Symbol::Open => '(',
            Symbol::Close => ')',
            Symbol::Blank => '-',
        })
        .collect();
    let matched = (0..syms.len())
        .map(|p| syms[p] != Symbol::Blank && !closes.contains(&p) && !opens.contains(&p))
        .collect();
    ParenProfile { text, matched, unmatched_open: opens.len(), unmatched_close: closes.len() }
}

/// Number of successive applications possible of the move `d` at `index`.
pub fn potential(m: &BinaryMatrix, d: Direction, index: usize) -> usize {
    let diff = |p: usize| -> isize {
        match d {
            Direction::Up => m.value(index + 1, p) as isize - m.value(index, p) as isize,
            Direction::Down => m.value(index, p) as isize - m.value(index + 1, p) as isize,
            Direction::Left => m.value(p, index + 1) as isize - m.value(p, index) as isize,
            Direction::Right => m.value(p, index) as isize - m.value(p, index + 1) as isize,
        }
    };
    let n = if d.is_vertical() { m.width() } else { m.height() };
    let mut best = 0isize;
    let mut run = 0isize;
    match d {
        // suffix sums
        Direction::Up | Direction::Right => {
            for p in (0..n).rev() {
                run += diff(p);
                best = best.max(run);
            }
        }
        // prefix sums
        Direction::Down | Direction::Left => {
            for p in 0..n {
                run += diff(p);
                best = best.max(run);
            }
        }
    }
    best as usize
}

/// Applies the move `d` between rows (or columns) `index, index+1`, if any.
pub fn apply(m: &BinaryMatrix, d: Direction, index: usize) -> Option<(BinaryMatrix, MoveRecord)> {
    let axis = if d.is_vertical() { Axis::Rows } else { Axis::Cols };
    let (closes, opens) = unmatched(&symbols(m, axis, index));
    let p = match d {
        Direction::Up | Direction::Right => *opens.first()?,
        Direction::Down | Direction::Left => *closes.last()?,
    };
    let (from, to) = match d {
        Direction::Up => ((index + 1, p), (index, p)),
        Direction::Down => ((index, p), (index + 1, p)),
        Direction::Left => ((p, index + 1), (p, index)),
        Direction::Right => ((p, index), (p, index + 1)),
    };
    let mut out = m.clone();
    out.set(from.0, from.1, false);
    out.set(to.0, to.1, true);
    Some((out, MoveRecord { direction: d, index, position: from }))
}

pub fn move_op(m: &BinaryMatrix, d: Direction, index: usize) -> Option<BinaryMatrix> {
    apply(m, d, index).map(|(out, _)| out)
}
