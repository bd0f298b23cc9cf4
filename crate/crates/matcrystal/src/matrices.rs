//! Binary and integral matrices, margins, tableau encodings and the
//! tableau / Littlewood-Richardson conditions.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{strip_le, Composition, Flavor, Partition, ShapeError, SkewShape, Strip, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("rows have different lengths")]
    Ragged,
    #[error("mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: Mode, found: Mode },
    #[error("invalid json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("margins do not match the shape {0}")]
    Margins(String),
    #[error("partial sum at index {0} breaks the tableau condition")]
    Chain(usize),
    #[error("tableau flavor {0} has no encoding in this mode")]
    Flavor(Flavor),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Binary,
    Integral,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Binary => "binary",
            Mode::Integral => "integral",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "binary" | "bin" => Ok(Mode::Binary),
            "integral" | "int" => Ok(Mode::Integral),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// Entry type of a matrix: `bool` for binary matrices, `usize` for integral ones.
pub trait Entry: Copy + Default + Eq + fmt::Debug + Send + Sync + 'static {
    const MODE: Mode;
    fn value(self) -> usize;
    fn from_value(v: usize) -> Option<Self>;
}

impl Entry for bool {
    const MODE: Mode = Mode::Binary;
    fn value(self) -> usize {
        self as usize
    }
    fn from_value(v: usize) -> Option<Self> {
        match v {
            0 => Some(false),
            1 => Some(true),
            _ => None,
        }
    }
}

impl Entry for usize {
    const MODE: Mode = Mode::Integral;
    fn value(self) -> usize {
        self
    }
    fn from_value(v: usize) -> Option<Self> {
        Some(v)
    }
}

/// A finitely supported matrix over `N x N`, stored densely on a rectangle.
/// Reads outside the rectangle give zero; equality ignores zero padding.
#[derive(Clone, Default)]
pub struct Matrix<T> {
    height: usize,
    width: usize,
    data: Vec<T>,
}

pub type BinaryMatrix = Matrix<bool>;
pub type IntegralMatrix = Matrix<usize>;

/// Half-open index range `[start, end)`, with `end = None` meaning unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub start: usize,
    pub end: Option<usize>,
}

impl Interval {
    pub const ALL: Interval = Interval { start: 0, end: None };

    pub fn prefix(k: usize) -> Self {
        Interval { start: 0, end: Some(k) }
    }

    pub fn suffix(k: usize) -> Self {
        Interval { start: k, end: None }
    }

    pub fn range(start: usize, end: usize) -> Self {
        Interval { start, end: Some(end) }
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= self.start && self.end.is_none_or(|e| i < e)
    }
}

impl<T: Entry> Matrix<T> {
    pub fn zeros(height: usize, width: usize) -> Self {
        Matrix { height, width, data: vec![T::default(); height * width] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(MatrixError::Ragged);
        }
        Ok(Matrix { height, width, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from natural numbers; panics when a value is not an entry.
    pub fn from_values(rows: &[Vec<usize>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::from_value(v).expect("entry in range")).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular rows")
    }

    pub fn mode(&self) -> Mode {
        T::MODE
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if i < self.height && j < self.width {
            self.data[i * self.width + j]
        } else {
            T::default()
        }
    }

    pub fn value(&self, i: usize, j: usize) -> usize {
        self.get(i, j).value()
    }

    /// Sets an entry, growing the stored rectangle when needed.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        if i >= self.height || j >= self.width {
            if v == T::default() {
                return;
            }
            self.resize((i + 1).max(self.height), (j + 1).max(self.width));
        }
        let w = self.width;
        self.data[i * w + j] = v;
    }

    /// Changes the stored rectangle, dropping entries outside of it.
    pub fn resize(&mut self, height: usize, width: usize) {
        let mut next = Self::zeros(height, width);
        for i in 0..height.min(self.height) {
            for j in 0..width.min(self.width) {
                next.data[i * width + j] = self.get(i, j);
            }
        }
        *self = next;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.height).map(|i| (0..self.width).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn values(&self) -> Vec<Vec<usize>> {
        (0..self.height).map(|i| (0..self.width).map(|j| self.value(i, j)).collect()).collect()
    }

    pub fn row_sums(&self) -> Composition {
        Composition::new((0..self.height).map(|i| (0..self.width).map(|j| self.value(i, j)).sum()).collect())
    }

    pub fn col_sums(&self) -> Composition {
        Composition::new((0..self.width).map(|j| (0..self.height).map(|i| self.value(i, j)).sum()).collect())
    }

    pub fn margins(&self) -> (Composition, Composition) {
        (self.row_sums(), self.col_sums())
    }

    pub fn total(&self) -> usize {
        self.data.iter().map(|v| v.value()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == T::default())
    }

    /// Smallest `(rows, cols)` outside of which every entry is zero.
    pub fn support(&self) -> (usize, usize) {
        let mut h = 0;
        let mut w = 0;
        for i in 0..self.height {
            for j in 0..self.width {
                if self.get(i, j) != T::default() {
                    h = h.max(i + 1);
                    w = w.max(j + 1);
                }
            }
        }
        (h, w)
    }

    pub fn trimmed(&self) -> Self {
        let (h, w) = self.support();
        let mut m = self.clone();
        m.resize(h, w);
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.width, self.height);
        for i in 0..self.height {
            for j in 0..self.width {
                m.data[j * self.height + i] = self.get(i, j);
            }
        }
        m
    }

    /// Quarter turn counterclockwise of the stored rectangle:
    /// entry `(i, j)` moves to `(width - 1 - j, i)`.
    pub fn rotate_ccw(&self) -> Self {
        let mut m = Self::zeros(self.width, self.height);
        for i in 0..self.height {
            for j in 0..self.width {
                m.set(self.width - 1 - j, i, self.get(i, j));
            }
        }
        m
    }

    /// Half turn of the stored rectangle.
    pub fn rotate_half(&self) -> Self {
        let mut m = Self::zeros(self.height, self.width);
        for i in 0..self.height {
            for j in 0..self.width {
                m.set(self.height - 1 - i, self.width - 1 - j, self.get(i, j));
            }
        }
        m
    }

    /// Zeroes every entry outside `rows x cols`, keeping coordinates.
    pub fn restrict(&self, rows: Interval, cols: Interval) -> Self {
        let mut m = self.clone();
        for i in 0..self.height {
            for j in 0..self.width {
                if !(rows.contains(i) && cols.contains(j)) {
                    m.data[i * self.width + j] = T::default();
                }
            }
        }
        m
    }

    /// Sum of `M[i, j]` over `j` in `cols`.
    pub fn row_sum_in(&self, i: usize, cols: std::ops::Range<usize>) -> usize {
        cols.map(|j| self.value(i, j)).sum()
    }

    /// Sum of `M[i, j]` over `i` in `rows`.
    pub fn col_sum_in(&self, j: usize, rows: std::ops::Range<usize>) -> usize {
        rows.map(|i| self.value(i, j)).sum()
    }

    /// Text form: one row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.height {
            let row: Vec<String> = (0..self.width).map(|j| self.value(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<T>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            let mut column = 1;
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| MatrixError::Parse {
                    line: ln + 1,
                    column,
                    message: format!("expected a natural number, found {tok:?}"),
                })?;
                let e = T::from_value(v).ok_or_else(|| MatrixError::Parse {
                    line: ln + 1,
                    column,
                    message: format!("{v} is not a {} entry", T::MODE),
                })?;
                row.push(e);
                column += tok.len() + 1;
            }
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson { mode: T::MODE, rows: self.values() }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, MatrixError> {
        let mj: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| MatrixError::Json(e.to_string()))?;
        if mj.mode != T::MODE {
            return Err(MatrixError::ModeMismatch { expected: T::MODE, found: mj.mode });
        }
        let rows = mj
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| T::from_value(v).ok_or_else(|| MatrixError::Json(format!("{v} is not a {} entry", T::MODE))))
                    .collect::<Result<Vec<T>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    mode: Mode,
    rows: Vec<Vec<usize>>,
}

impl<T: Entry> PartialEq for Matrix<T> {
    fn eq(&self, other: &Self) -> bool {
        let h = self.height.max(other.height);
        let w = self.width.max(other.width);
        (0..h).all(|i| (0..w).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

impl<T: Entry> Eq for Matrix<T> {}

impl<T: Entry + Hash> Hash for Matrix<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let t = self.trimmed();
        t.height.hash(state);
        t.width.hash(state);
        t.data.hash(state);
    }
}

impl<T: Entry> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .values()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// `diagram(lambda)`: bit `(i, j)` set iff `(i, j)` lies in the Young diagram.
pub fn diagram(lambda: &Partition) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(lambda.len(), lambda.get(0));
    for (i, j) in lambda.cells() {
        m.set(i, j, true);
    }
    m
}

/// `diagon(lambda)`: the diagonal matrix with the parts of `lambda`.
pub fn diagon(lambda: &Partition) -> IntegralMatrix {
    let n = lambda.len();
    let mut m = IntegralMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, lambda.get(i));
    }
    m
}

fn sst_check(t: &Tableau) -> Result<(), DecodeError> {
    if t.flavor() != Flavor::Semistandard {
        return Err(DecodeError::Flavor(t.flavor()));
    }
    Ok(())
}

/// Binary encoding: row `i` marks the columns of the `i`-th horizontal strip.
pub fn encode_binary(t: &Tableau) -> Result<BinaryMatrix, DecodeError> {
    sst_check(t)?;
    let width = t.shape().outer().get(0);
    let mut m = BinaryMatrix::zeros(t.letters(), width);
    for i in 0..t.letters() {
        let lo = t.at(i).conjugate();
        let hi = t.at(i + 1).conjugate();
        for j in 0..width {
            if hi.get(j) > lo.get(j) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Integral encoding: column `j` is the difference of consecutive shapes.
pub fn encode_integral(t: &Tableau) -> Result<IntegralMatrix, DecodeError> {
    sst_check(t)?;
    let height = t.shape().outer().len();
    let mut m = IntegralMatrix::zeros(height, t.letters());
    for j in 0..t.letters() {
        for i in 0..height {
            m.set(i, j, t.at(j + 1).get(i) - t.at(j).get(i));
        }
    }
    Ok(m)
}

/// Which of the two kinds of condition a matrix is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Tableau,
    LittlewoodRichardson,
}

/// Mode-specific encodings and condition predicates.
pub trait Encoded: Sized {
    /// Whether `self` encodes a semistandard tableau of the given shape.
    fn tableau_condition(&self, shape: &SkewShape) -> bool;
    /// Whether `self` satisfies the Littlewood-Richardson condition for `shape`.
    fn lr_condition(&self, shape: &SkewShape) -> bool;
    fn encode(t: &Tableau) -> Result<Self, DecodeError>;
    fn decode(&self, shape: &SkewShape) -> Result<Tableau, DecodeError>;

    fn condition(&self, shape: &SkewShape, which: Condition) -> bool {
        match which {
            Condition::Tableau => self.tableau_condition(shape),
            Condition::LittlewoodRichardson => self.lr_condition(shape),
        }
    }
}

impl BinaryMatrix {
    /// `kappa^t + sum_{i<k} M_i` for `k = 0..=height`.
    fn row_prefix_chain(&self, start: &Composition) -> Vec<Composition> {
        let mut cur = start.padded(self.width.max(start.len()));
        let mut out = vec![Composition::new(cur.clone())];
        for i in 0..self.height {
            for (j, c) in cur.iter_mut().enumerate().take(self.width) {
                *c += self.value(i, j);
            }
            out.push(Composition::new(cur.clone()));
        }
        out
    }

    /// `mu + sum_{j>=l} M^t_j` for `l = width` down to `0`.
    fn col_suffix_chain(&self, start: &Composition) -> Vec<Composition> {
        let mut cur = start.padded(self.height.max(start.len()));
        let mut out = vec![Composition::new(cur.clone())];
        for j in (0..self.width).rev() {
            for (i, c) in cur.iter_mut().enumerate().take(self.height) {
                *c += self.value(i, j);
            }
            out.push(Composition::new(cur.clone()));
        }
        out
    }

    /// Reverse transpose tableau read from the columns: shape `l` is
    /// `mu + sum_{j>=l} M^t_j`.
    pub fn lr_tableau(&self, inner: &Partition) -> Result<Tableau, DecodeError> {
        let mut chain: Vec<Partition> = self
            .col_suffix_chain(inner)
            .into_iter()
            .map(|c| c.to_partition())
            .collect::<Result<_, _>>()?;
        chain.reverse();
        Ok(Tableau::new(Flavor::ReverseTranspose, chain)?)
    }
}

impl Encoded for BinaryMatrix {
    fn tableau_condition(&self, shape: &SkewShape) -> bool {
        let target = shape.col_lengths();
        if self.col_sums() != target {
            return false;
        }
        self.row_prefix_chain(shape.inner().conjugate().as_composition()).iter().all(|c| c.is_partition())
    }

    fn lr_condition(&self, shape: &SkewShape) -> bool {
        if self.row_sums() != shape.row_lengths() {
            return false;
        }
        self.col_suffix_chain(shape.inner().as_composition()).iter().all(|c| c.is_partition())
    }

    fn encode(t: &Tableau) -> Result<Self, DecodeError> {
        encode_binary(t)
    }

    fn decode(&self, shape: &SkewShape) -> Result<Tableau, DecodeError> {
        if self.col_sums() != shape.col_lengths() {
            return Err(DecodeError::Margins(shape.to_string()));
        }
        let chain = self.row_prefix_chain(shape.inner().conjugate().as_composition());
        let mut shapes = Vec::with_capacity(chain.len());
        for (k, c) in chain.iter().enumerate() {
            let p = c.to_partition().map_err(|_| DecodeError::Chain(k))?;
            shapes.push(p.conjugate());
        }
        Ok(Tableau::new(Flavor::Semistandard, shapes)?)
    }
}

impl IntegralMatrix {
    /// `start + sum_{j<l} M^t_j` for `l = 0..=width`.
    fn col_prefix_chain(&self, start: &Composition) -> Vec<Composition> {
        let mut cur = start.padded(self.height.max(start.len()));
        let mut out = vec![Composition::new(cur.clone())];
        for j in 0..self.width {
            for (i, c) in cur.iter_mut().enumerate().take(self.height) {
                *c += self.value(i, j);
            }
            out.push(Composition::new(cur.clone()));
        }
        out
    }

    /// Semistandard tableau read from the rows: shape `k` is `mu + sum_{i<k} M_i`.
    pub fn lr_tableau(&self, inner: &Partition) -> Result<Tableau, DecodeError> {
        self.transpose().decode_columns(inner)
    }

    fn decode_columns(&self, inner: &Partition) -> Result<Tableau, DecodeError> {
        let chain = self.col_prefix_chain(inner.as_composition());
        let mut shapes = Vec::with_capacity(chain.len());
        for (l, c) in chain.iter().enumerate() {
            shapes.push(c.to_partition().map_err(|_| DecodeError::Chain(l))?);
        }
        for (l, w) in shapes.windows(2).enumerate() {
            if !strip_le(&w[0], &w[1], Strip::Horizontal) {
                return Err(DecodeError::Chain(l + 1));
            }
        }
        Ok(Tableau::new(Flavor::Semistandard, shapes)?)
    }
}

impl Encoded for IntegralMatrix {
    fn tableau_condition(&self, shape: &SkewShape) -> bool {
        self.row_sums() == shape.row_lengths() && self.decode_columns(shape.inner()).is_ok()
    }

    fn lr_condition(&self, shape: &SkewShape) -> bool {
        self.transpose().tableau_condition(shape)
    }

    fn encode(t: &Tableau) -> Result<Self, DecodeError> {
        encode_integral(t)
    }

    fn decode(&self, shape: &SkewShape) -> Result<Tableau, DecodeError> {
        if self.row_sums() != shape.row_lengths() {
            return Err(DecodeError::Margins(shape.to_string()));
        }
        self.decode_columns(shape.inner())
    }
}

/// A matrix of either mode, for front ends that learn the mode at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Binary(BinaryMatrix),
    Integral(IntegralMatrix),
}

impl AnyMatrix {
    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Binary(_) => Mode::Binary,
            AnyMatrix::Integral(_) => Mode::Integral,
        }
    }

    pub fn parse(mode: Mode, text: &str) -> Result<Self, MatrixError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| MatrixError::Json(e.to_string()))?;
            return match mode {
                Mode::Binary => Ok(AnyMatrix::Binary(BinaryMatrix::from_json(&v)?)),
                Mode::Integral => Ok(AnyMatrix::Integral(IntegralMatrix::from_json(&v)?)),
            };
        }
        match mode {
            Mode::Binary => Ok(AnyMatrix::Binary(BinaryMatrix::parse_text(text)?)),
            Mode::Integral => Ok(AnyMatrix::Integral(IntegralMatrix::parse_text(text)?)),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Binary(m) => m.to_text(),
            AnyMatrix::Integral(m) => m.to_text(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnyMatrix::Binary(m) => m.to_json(),
            AnyMatrix::Integral(m) => m.to_json(),
        }
    }

    pub fn margins(&self) -> (Composition, Composition) {
        match self {
            AnyMatrix::Binary(m) => m.margins(),
            AnyMatrix::Integral(m) => m.margins(),
        }
    }
}

pub fn encode(t: &Tableau, mode: Mode) -> Result<AnyMatrix, DecodeError> {
    Ok(match mode {
        Mode::Binary => AnyMatrix::Binary(encode_binary(t)?),
        Mode::Integral => AnyMatrix::Integral(encode_integral(t)?),
    })
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::shapes::part;

    fn running_shape() -> SkewShape {
        "9,8,5,5,3/4,1".parse().unwrap()
    }

    #[test]
    fn margins_of_running_integral() {
        let (r, c) = running_integral().margins();
        assert_eq!(r, Composition::new(vec![5, 7, 5, 5, 3]));
        assert_eq!(c, Composition::new(vec![2, 3, 3, 2, 4, 4, 7]));
        let (r, c) = diagon(&part(&[8, 8, 5, 3, 1])).margins();
        assert_eq!(r, c);
        assert_eq!(r, Composition::new(vec![8, 8, 5, 3, 1]));
        assert_eq!(IntegralMatrix::zeros(3, 3).margins(), (Composition::zero(), Composition::zero()));
    }

    #[test]
    fn encode_running_tableau() {
        let t = running_tableau();
        assert_eq!(encode_binary(&t).unwrap(), running_binary());
        assert_eq!(encode_integral(&t).unwrap(), running_integral());
        let empty = Tableau::constant(Flavor::Semistandard, part(&[2, 1]));
        assert!(encode_binary(&empty).unwrap().is_zero());
        assert!(encode_integral(&empty).unwrap().is_zero());
    }

    #[test]
    fn decode_running_tableau() {
        let t = running_tableau();
        assert_eq!(running_binary().decode(&running_shape()).unwrap(), t);
        assert_eq!(running_integral().decode(&running_shape()).unwrap(), t);
        let lam: SkewShape = "2,1/2,1".parse().unwrap();
        assert_eq!(BinaryMatrix::zeros(0, 0).decode(&lam).unwrap(), Tableau::constant(Flavor::Semistandard, part(&[2, 1])));
    }

    #[test]
    fn conditions_on_running_matrices() {
        let s = running_shape();
        assert!(running_binary().tableau_condition(&s));
        assert!(running_integral().tableau_condition(&s));
        let mut flipped = running_binary();
        flipped.set(0, 0, true);
        assert!(!flipped.tableau_condition(&s));
        assert!(diagram(&part(&[3, 2])).lr_condition(&"3,2".parse().unwrap()));
    }

    #[test]
    fn decode_reports_failing_index() {
        // rows (0,1) then (1,0): after row 0, (0,1) is not a partition
        let m = bits(&["01", "10"]);
        let s: SkewShape = "2/0".parse().unwrap();
        assert_eq!(m.decode(&s), Err(DecodeError::Chain(1)));
    }

    #[test]
    fn restrict_and_rotate() {
        let m = running_integral();
        assert!(m.restrict(Interval::prefix(0), Interval::ALL).is_zero());
        assert_eq!(m.restrict(Interval::ALL, Interval::ALL), m);
        let b = m.restrict(Interval::prefix(3), Interval::prefix(6));
        assert_eq!(b.values()[0], vec![1, 0, 1, 0, 1, 2, 0]);
        assert_eq!(b.value(3, 0), 0);
        let r = running_binary();
        assert_eq!(r.rotate_ccw().rotate_ccw().rotate_ccw().rotate_ccw(), r);
        assert_eq!(r.rotate_ccw().rotate_ccw(), r.rotate_half());
        assert_eq!(r.rotate_ccw().value(8, 5), r.value(5, 0));
    }

    #[test]
    fn text_and_json_roundtrip() {
        let m = running_binary();
        assert_eq!(BinaryMatrix::parse_text(&m.to_text()).unwrap(), m);
        assert_eq!(BinaryMatrix::from_json(&m.to_json()).unwrap(), m);
        let e = BinaryMatrix::parse_text("0 1\n0 2\n").unwrap_err();
        assert!(matches!(e, MatrixError::Parse { line: 2, column: 3, .. }));
        assert!(IntegralMatrix::from_json(&m.to_json()).is_err());
    }

    #[test]
    fn equality_ignores_padding() {
        let mut a = ints(&[&[1, 0], &[0, 0]]);
        let b = ints(&[&[1]]);
        assert_eq!(a, b);
        a.set(5, 5, 0);
        assert_eq!(a, b);
    }

    /// Every semistandard tableau with outer shape of size at most `n`
    /// and at most `strips` letters.
    pub(crate) fn small_ssts(n: usize, strips: usize) -> Vec<Tableau> {
        let mut out = Vec::new();
        for sk in SkewShape::all_up_to(n) {
            fn extend(chain: &mut Vec<Partition>, target: &Partition, left: usize, out: &mut Vec<Tableau>) {
                let last = chain.last().unwrap().clone();
                if left == 0 {
                    if &last == target {
                        out.push(Tableau::new(Flavor::Semistandard, chain.clone()).unwrap());
                    }
                    return;
                }
                for p in target.subpartitions() {
                    if p.contains(&last) && strip_le(&last, &p, Strip::Horizontal) {
                        chain.push(p);
                        extend(chain, target, left - 1, out);
                        chain.pop();
                    }
                }
            }
            extend(&mut vec![sk.inner().clone()], sk.outer(), strips, &mut out);
        }
        out
    }

    #[test]
    fn decode_encode_identity_small() {
        let all = small_ssts(8, 3);
        assert!(all.len() > 1000);
        for t in all {
            let s = t.shape();
            let b = encode_binary(&t).unwrap();
            let i = encode_integral(&t).unwrap();
            assert!(b.tableau_condition(&s));
            assert!(i.tableau_condition(&s));
            assert_eq!(b.decode(&s).unwrap(), t);
            assert_eq!(i.decode(&s).unwrap(), t);
        }
    }

    fn all_binary(h: usize, w: usize) -> impl Iterator<Item = BinaryMatrix> {
        (0u32..(1 << (h * w))).map(move |bits| {
            let mut m = BinaryMatrix::zeros(h, w);
            for k in 0..h * w {
                m.set(k / w, k % w, bits >> k & 1 == 1);
            }
            m
        })
    }

    #[test]
    fn binary_conditions_count_tableaux() {
        // decoding is injective, so the count of matrices satisfying the tableau
        // condition equals the count of tableaux with at most three letters
        for sk in SkewShape::all_up_to(5) {
            if sk.outer().get(0) > 3 {
                continue;
            }
            let via_matrices = all_binary(3, 3).filter(|m| m.tableau_condition(&sk)).count();
            let via_tableaux = small_ssts(5, 3).iter().filter(|t| t.shape() == sk).count();
            assert_eq!(via_matrices, via_tableaux, "{sk}");
        }
    }

    #[test]
    fn integral_lr_is_transposed_tableau() {
        for sk in SkewShape::all_up_to(4) {
            for t in small_ssts(4, 3) {
                let m = encode_integral(&t).unwrap();
                assert_eq!(m.lr_condition(&sk), m.transpose().tableau_condition(&sk));
            }
        }
    }
}
