//! Partitions, compositions, skew shapes and tableaux.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("not a partition: {0}")]
    NotPartition(String),
    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    NotContained { inner: String, outer: String },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("partition {shape} has a nonzero part at index {index}")]
    TooLong { shape: String, index: usize },
    #[error("chain step {step} violates the {flavor} strip relation")]
    BadChain { step: usize, flavor: Flavor },
    #[error("empty chain")]
    EmptyChain,
    #[error("tableau is not straight-shaped")]
    NotStraight,
}

/// A finitely supported sequence of naturals, stored without trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition(parts)
    }

    pub fn zero() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of parts up to the last nonzero one.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_partition(&self) -> Result<Partition, ShapeError> {
        Partition::new(self.0.clone())
    }

    /// Parts padded with zeros to length `n` (or truncated when shorter).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub fn add(&self, other: &Composition) -> Composition {
        let n = self.len().max(other.len());
        Composition::new((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn checked_sub(&self, other: &Composition) -> Option<Composition> {
        let n = self.len().max(other.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.get(i).checked_sub(other.get(i))?);
        }
        Some(Composition::new(out))
    }
}

impl Index<usize> for Composition {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        self.0.get(i).unwrap_or(&0)
    }
}

impl From<Vec<usize>> for Composition {
    fn from(v: Vec<usize>) -> Self {
        Composition::new(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>, ShapeError> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| ShapeError::Parse(s.to_string())))
        .collect()
}

impl FromStr for Composition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Composition::new(parse_parts(s)?))
    }
}

/// A weakly decreasing composition.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Composition);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        let c = Composition::new(parts);
        if c.is_partition() {
            Ok(Partition(c))
        } else {
            Err(ShapeError::NotPartition(c.to_string()))
        }
    }

    pub fn empty() -> Self {
        Partition(Composition::zero())
    }

    pub fn as_composition(&self) -> &Composition {
        &self.0
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.get(0);
        let parts = (0..width)
            .map(|j| self.parts().iter().take_while(|&&p| p > j).count())
            .collect();
        Partition(Composition::new(parts))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.get(i) <= self.get(i))
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col < self.get(row)
    }

    /// Cells of the Young diagram in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
            .collect()
    }

    /// All partitions of `n`, largest parts first.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(Composition(cur.clone())));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn go(outer: &Partition, i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition(Composition::new(cur.clone())));
                return;
            }
            for p in 0..=outer.get(i).min(max) {
                cur.push(p);
                go(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl std::ops::Deref for Partition {
    type Target = Composition;
    fn deref(&self) -> &Composition {
        &self.0
    }
}

impl Index<usize> for Partition {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl TryFrom<Composition> for Partition {
    type Error = ShapeError;
    fn try_from(c: Composition) -> Result<Self, ShapeError> {
        if c.is_partition() {
            Ok(Partition(c))
        } else {
            Err(ShapeError::NotPartition(c.to_string()))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl FromStr for Partition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::new(parse_parts(s)?)
    }
}

/// Shorthand for building a partition from literal parts; panics on bad input.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("weakly decreasing parts")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if !outer.contains(&inner) {
            return Err(ShapeError::NotContained { inner: inner.to_string(), outer: outer.to_string() });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        self.outer.contains_cell(row, col) && !self.inner.contains_cell(row, col)
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len())
            .flat_map(|i| (self.inner.get(i)..self.outer.get(i)).map(move |j| (i, j)))
            .collect()
    }

    pub fn row_lengths(&self) -> Composition {
        self.outer.checked_sub(&self.inner).expect("containment")
    }

    pub fn col_lengths(&self) -> Composition {
        self.outer.conjugate().checked_sub(&self.inner.conjugate()).expect("containment")
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: self.outer.conjugate(), inner: self.inner.conjugate() }
    }

    /// Every skew shape whose outer partition has at most `max_outer` squares.
    pub fn all_up_to(max_outer: usize) -> Vec<SkewShape> {
        let mut out = Vec::new();
        for n in 0..=max_outer {
            for outer in Partition::all_of_size(n) {
                for inner in outer.subpartitions() {
                    out.push(SkewShape { outer: outer.clone(), inner });
                }
            }
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SkewShape {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strip {
    Horizontal,
    Vertical,
}

impl fmt::Display for Strip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strip::Horizontal => "horizontal",
            Strip::Vertical => "vertical",
        })
    }
}

/// `alpha <=h beta` or `alpha <=v beta`.
pub fn strip_le(alpha: &Composition, beta: &Composition, kind: Strip) -> bool {
    let n = alpha.len().max(beta.len());
    match kind {
        Strip::Horizontal => (0..n).all(|i| beta.get(i + 1) <= alpha.get(i) && alpha.get(i) <= beta.get(i)),
        Strip::Vertical => {
            alpha.is_partition()
                && beta.is_partition()
                && (0..n).all(|i| alpha.get(i) <= beta.get(i) && beta.get(i) <= alpha.get(i) + 1)
        }
    }
}

/// `(lambda[k-1], ..., lambda[0])`.
pub fn revert(lambda: &Composition, k: usize) -> Result<Composition, ShapeError> {
    if lambda.len() > k {
        return Err(ShapeError::TooLong { shape: lambda.to_string(), index: k });
    }
    Ok(Composition::new((0..k).rev().map(|i| lambda.get(i)).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Semistandard,
    Transpose,
    Reverse,
    ReverseTranspose,
}

impl Flavor {
    pub fn strip(self) -> Strip {
        match self {
            Flavor::Semistandard | Flavor::Reverse => Strip::Horizontal,
            Flavor::Transpose | Flavor::ReverseTranspose => Strip::Vertical,
        }
    }

    pub fn is_reverse(self) -> bool {
        matches!(self, Flavor::Reverse | Flavor::ReverseTranspose)
    }

    pub fn conjugate(self) -> Flavor {
        match self {
            Flavor::Semistandard => Flavor::Transpose,
            Flavor::Transpose => Flavor::Semistandard,
            Flavor::Reverse => Flavor::ReverseTranspose,
            Flavor::ReverseTranspose => Flavor::Reverse,
        }
    }

    pub fn reversed(self) -> Flavor {
        match self {
            Flavor::Semistandard => Flavor::Reverse,
            Flavor::Transpose => Flavor::ReverseTranspose,
            Flavor::Reverse => Flavor::Semistandard,
            Flavor::ReverseTranspose => Flavor::Transpose,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::Semistandard => "semistandard",
            Flavor::Transpose => "transpose",
            Flavor::Reverse => "reverse",
            Flavor::ReverseTranspose => "reverse-transpose",
        };
        f.write_str(s)
    }
}

impl FromStr for Flavor {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "semistandard" | "sst" => Ok(Flavor::Semistandard),
            "transpose" => Ok(Flavor::Transpose),
            "reverse" => Ok(Flavor::Reverse),
            "reverse-transpose" => Ok(Flavor::ReverseTranspose),
            _ => Err(ShapeError::Parse(s.to_string())),
        }
    }
}

/// A tableau stored as its chain of shapes. Trailing repetitions of the final
/// shape are dropped, so two tableaux compare equal iff they define the same
/// infinite sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    flavor: Flavor,
    chain: Vec<Partition>,
}

impl Tableau {
    pub fn new(flavor: Flavor, mut chain: Vec<Partition>) -> Result<Self, ShapeError> {
        if chain.is_empty() {
            return Err(ShapeError::EmptyChain);
        }
        for (step, w) in chain.windows(2).enumerate() {
            let ok = if flavor.is_reverse() {
                strip_le(&w[1], &w[0], flavor.strip())
            } else {
                strip_le(&w[0], &w[1], flavor.strip())
            };
            if !ok {
                return Err(ShapeError::BadChain { step, flavor });
            }
        }
        while chain.len() > 1 && chain[chain.len() - 1] == chain[chain.len() - 2] {
            chain.pop();
        }
        Ok(Tableau { flavor, chain })
    }

    /// The tableau with no entries on `shape`.
    pub fn constant(flavor: Flavor, shape: Partition) -> Self {
        Tableau { flavor, chain: vec![shape] }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    /// Shape at step `i`; the chain is constant beyond its stored part.
    pub fn at(&self, i: usize) -> &Partition {
        &self.chain[i.min(self.chain.len() - 1)]
    }

    /// Number of letters that occur (the length of the stored prefix).
    pub fn letters(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn shape(&self) -> SkewShape {
        let first = self.chain[0].clone();
        let last = self.chain[self.chain.len() - 1].clone();
        if self.flavor.is_reverse() {
            SkewShape { outer: first, inner: last }
        } else {
            SkewShape { outer: last, inner: first }
        }
    }

    pub fn is_straight(&self) -> bool {
        self.shape().is_straight()
    }

    pub fn weight(&self) -> Composition {
        Composition::new(
            self.chain
                .windows(2)
                .map(|w| if self.flavor.is_reverse() { w[0].size() - w[1].size() } else { w[1].size() - w[0].size() })
                .collect(),
        )
    }

    pub fn conjugate(&self) -> Tableau {
        Tableau { flavor: self.flavor.conjugate(), chain: self.chain.iter().map(|p| p.conjugate()).collect() }
    }

    /// Entry of the cell `(row, col)`, if the cell belongs to the shape.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        if !self.shape().contains_cell(row, col) {
            return None;
        }
        (0..self.letters()).find(|&i| {
            let (small, big) = if self.flavor.is_reverse() {
                (&self.chain[i + 1], &self.chain[i])
            } else {
                (&self.chain[i], &self.chain[i + 1])
            };
            big.contains_cell(row, col) && !small.contains_cell(row, col)
        })
    }

    /// Entries of each row of the display, left to right.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        (0..shape.outer().len())
            .map(|r| {
                (shape.inner().get(r)..shape.outer().get(r))
                    .map(|c| self.entry(r, c).expect("cell in shape"))
                    .collect()
            })
            .collect()
    }

    /// Builds a tableau from its display: `inner` is the shape left empty
    /// (for reverse flavors, the final shape of the chain) and `rows` gives
    /// the entries to the right of it.
    pub fn from_rows(flavor: Flavor, inner: Partition, rows: &[Vec<usize>]) -> Result<Self, ShapeError> {
        let letters = rows.iter().flatten().map(|&e| e + 1).max().unwrap_or(0);
        let nrows = rows.len().max(inner.len());
        let mut chain = Vec::with_capacity(letters + 1);
        for i in 0..=letters {
            let parts: Vec<usize> = (0..nrows)
                .map(|r| {
                    let row = rows.get(r).map(|v| v.as_slice()).unwrap_or(&[]);
                    let count = if flavor.is_reverse() {
                        row.iter().filter(|&&e| e >= i).count()
                    } else {
                        row.iter().filter(|&&e| e < i).count()
                    };
                    inner.get(r) + count
                })
                .collect();
            chain.push(Partition::new(parts)?);
        }
        let t = Tableau::new(flavor, chain)?;
        if t.rows().iter().zip(rows).any(|(a, b)| a != b) {
            return Err(ShapeError::Parse("entries do not match the flavor's ordering".into()));
        }
        Ok(t)
    }

    /// Parses a display such as `4:0,2,4,5,5|1:0,1,3` or `0,0,1|1,2`.
    pub fn parse(flavor: Flavor, s: &str) -> Result<Self, ShapeError> {
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        let s = s.trim();
        if !s.is_empty() && s != "0" {
            for chunk in s.split('|') {
                let (off, body) = match chunk.split_once(':') {
                    Some((o, b)) => (o.trim().parse::<usize>().map_err(|_| ShapeError::Parse(chunk.to_string()))?, b),
                    None => (0, chunk),
                };
                inner.push(off);
                rows.push(parse_parts(body)?);
            }
        }
        Tableau::from_rows(flavor, Partition::new(inner)?, &rows)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.shape();
        let rows = self.rows();
        if rows.is_empty() {
            return write!(f, "0");
        }
        let skew = !shape.is_straight();
        let text: Vec<String> = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let body: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                if skew {
                    format!("{}:{}", shape.inner().get(r), body.join(","))
                } else {
                    body.join(",")
                }
            })
            .collect();
        write!(f, "{}", text.join("|"))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.flavor, self)
    }
}
