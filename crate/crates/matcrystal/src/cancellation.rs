//! Alternating sums for the scalar product of two skew Schur functions and
//! the crystal ladder involutions that cancel them down to a plain count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal_bin::Direction;
use crate::doublecrystal::CrystalMatrix;
use crate::matrices::{BinaryMatrix, Encoded, IntegralMatrix, Mode};
use crate::shapes::{strip_le, Composition, Partition, SkewShape, Strip};

/// A value in `{-1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeSign {
    Negative,
    Zero,
    Positive,
}

impl EdgeSign {
    pub fn value(self) -> i64 {
        match self {
            EdgeSign::Negative => -1,
            EdgeSign::Zero => 0,
            EdgeSign::Positive => 1,
        }
    }

    fn from_parity(odd: bool) -> Self {
        if odd {
            EdgeSign::Negative
        } else {
            EdgeSign::Positive
        }
    }
}

impl fmt::Display for EdgeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The edge symbol of `alpha` at `lambda`, by straightening `alpha - delta`.
pub fn edge_symbol(alpha: &Composition, lambda: &Partition) -> EdgeSign {
    let n = alpha.len().max(lambda.len());
    let shifted: Vec<isize> = (0..n).map(|i| alpha.get(i) as isize - i as isize).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| shifted[b].cmp(&shifted[a]));
    if order.windows(2).any(|w| shifted[w[0]] == shifted[w[1]]) {
        return EdgeSign::Zero;
    }
    if (0..n).any(|i| shifted[order[i]] != lambda.get(i) as isize - i as isize) {
        return EdgeSign::Zero;
    }
    // parity of the sorting permutation from its cycle count
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for start in 0..n {
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    EdgeSign::from_parity(transpositions % 2 == 1)
}

/// How far the cancellation has progressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Both factors are edge symbols.
    Brute,
    /// The tableau factor has become an Iverson bracket.
    TabFirst,
    /// The Littlewood-Richardson factor has become an Iverson bracket.
    LrFirst,
    /// Both factors are Iverson brackets.
    FullyReduced,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Brute, Stage::TabFirst, Stage::LrFirst, Stage::FullyReduced];

    /// The condition whose failures cancel on the way to the next stage.
    pub fn cancels(self) -> Option<ConditionKind> {
        match self {
            Stage::Brute | Stage::LrFirst => Some(ConditionKind::Tableau),
            Stage::TabFirst => Some(ConditionKind::LittlewoodRichardson),
            Stage::FullyReduced => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Brute => "brute",
            Stage::TabFirst => "tab_first",
            Stage::LrFirst => "lr_first",
            Stage::FullyReduced => "fully_reduced",
        })
    }
}

impl FromStr for Stage {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let key = s.replace('-', "_");
        Stage::ALL.into_iter().find(|t| t.to_string() == key).ok_or_else(|| format!("unknown stage {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SummationStage {
    pub stage: Stage,
    pub mode: Mode,
}

/// Rows and columns of the rectangle matrices are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub rows: usize,
    pub cols: usize,
}

impl Bounds {
    pub fn grown(self) -> Self {
        Bounds { rows: self.rows + 1, cols: self.cols + 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    Tableau,
    LittlewoodRichardson,
}

/// A condition together with the skew shape it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Failing {
    TableauFor(SkewShape),
    LrFor(SkewShape),
}

/// Where a partial-sum chain first stops being valid, and the offending pair
/// of adjacent rows or columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub step: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CancellationError {
    #[error("sum over {small:?} is {small_value} but over {large:?} is {large_value}; enlarge the box")]
    BoxTooSmall { small: Bounds, small_value: i64, large: Bounds, large_value: i64 },
    #[error("the matrix satisfies the condition, so it does not cancel")]
    NotCancellable,
    #[error("ladder ended after {done} of {wanted} steps")]
    LadderBroken { done: usize, wanted: usize },
}

fn composition_plus(a: &Composition, b: &Composition) -> Composition {
    a.add(b)
}

fn rising_index(beta: &[usize], pick_max: bool) -> Option<usize> {
    let hits = (0..beta.len().saturating_sub(1)).filter(|&i| beta[i + 1] > beta[i]);
    if pick_max {
        hits.max()
    } else {
        hits.min()
    }
}

/// Applies `raise` at `index` `d` times, or its opposite `-d` times.
fn ladder<M: CrystalMatrix>(m: &M, raise: Direction, index: usize, d: isize) -> Result<M, CancellationError> {
    let (dir, wanted) = if d >= 0 { (raise, d as usize) } else { (raise.opposite(), d.unsigned_abs()) };
    let mut cur = m.clone();
    for done in 0..wanted {
        cur = cur.step(dir, index).ok_or(CancellationError::LadderBroken { done, wanted })?.0;
    }
    Ok(cur)
}

fn signed_gap(alpha: &Composition, index: usize) -> isize {
    alpha.get(index + 1) as isize - alpha.get(index) as isize - 1
}

/// Mode-specific data for the summations and their cancellations.
pub trait Cancellable: CrystalMatrix + Encoded {
    /// Edge symbol factor attached to the tableau condition for `shape`.
    fn tableau_symbol(&self, shape: &SkewShape) -> EdgeSign;
    /// Edge symbol factor attached to the Littlewood-Richardson condition for `shape`.
    fn lr_symbol(&self, shape: &SkewShape) -> EdgeSign;
    fn tableau_witness(&self, inner: &Partition) -> Option<Witness>;
    fn lr_witness(&self, inner: &Partition) -> Option<Witness>;
    /// Row and column margins that make the tableau and LR symbols nonzero.
    fn margin_roles() -> MarginRoles;
    fn count_with_margins(rows: &[usize], cols: &[usize]) -> u64;
    fn with_margins(rows: &[usize], cols: &[usize]) -> Vec<Self>;
    fn satisfying(kind: ConditionKind, shape: &SkewShape, bounds: Bounds) -> Vec<Self>;
    fn tableau_ladder() -> Direction;
    fn lr_ladder() -> Direction;
    /// Partial sums along the whole matrix in the direction of the ladder.
    fn ladder_margin(&self, kind: ConditionKind) -> Composition;
}

/// Which margin feeds the tableau-side symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginRoles {
    /// Column sums go with the tableau shape, row sums with the LR shape.
    TableauOnColumns,
    /// Row sums go with the tableau shape, column sums with the LR shape.
    TableauOnRows,
}

fn tableau_start(mode: Mode, shape: &SkewShape) -> (Partition, Partition) {
    match mode {
        Mode::Binary => (shape.inner().conjugate(), shape.outer().conjugate()),
        Mode::Integral => (shape.inner().clone(), shape.outer().clone()),
    }
}

/// First failing step of the chain `start + (prefix sums of vectors)`, with
/// the witness among adjacent indices.
fn chain_witness(start: &Partition, vectors: impl Iterator<Item = Vec<usize>>, kind: Strip, pick_max: bool) -> Option<Witness> {
    let mut prev: Vec<usize> = start.parts().to_vec();
    for (step, v) in vectors.enumerate() {
        let n = prev.len().max(v.len()) + 1;
        prev.resize(n, 0);
        let next: Vec<usize> = (0..n).map(|i| prev[i] + v.get(i).copied().unwrap_or(0)).collect();
        let ok = strip_le(&Composition::new(prev.clone()), &Composition::new(next.clone()), kind);
        if !ok {
            let index = match kind {
                Strip::Vertical => rising_index(&next, pick_max),
                Strip::Horizontal => {
                    let hits = (0..n - 1).filter(|&i| prev[i] < next[i + 1]);
                    if pick_max {
                        hits.max()
                    } else {
                        hits.min()
                    }
                }
            };
            return index.map(|index| Witness { step, index });
        }
        prev = next;
    }
    None
}

impl Cancellable for BinaryMatrix {
    fn tableau_symbol(&self, shape: &SkewShape) -> EdgeSign {
        let alpha = composition_plus(shape.inner().conjugate().as_composition(), &self.col_sums());
        edge_symbol(&alpha, &shape.outer().conjugate())
    }

    fn lr_symbol(&self, shape: &SkewShape) -> EdgeSign {
        edge_symbol(&composition_plus(shape.inner().as_composition(), &self.row_sums()), shape.outer())
    }

    fn tableau_witness(&self, inner: &Partition) -> Option<Witness> {
        let rows = (0..self.height()).map(|i| (0..self.width()).map(|j| self.value(i, j)).collect());
        chain_witness(&inner.conjugate(), rows, Strip::Vertical, false)
    }

    fn lr_witness(&self, inner: &Partition) -> Option<Witness> {
        let w = self.width();
        let cols = (0..w).rev().map(|j| (0..self.height()).map(|i| self.value(i, j)).collect());
        chain_witness(inner, cols, Strip::Vertical, false).map(|wt| Witness { step: w - 1 - wt.step, index: wt.index })
    }

    fn margin_roles() -> MarginRoles {
        MarginRoles::TableauOnColumns
    }

    fn count_with_margins(rows: &[usize], cols: &[usize]) -> u64 {
        fn go(rows: &[usize], cols: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
            let Some((&r, rest)) = rows.split_first() else {
                return cols.iter().all(|&c| c == 0) as u64;
            };
            let key = (rows.len(), cols.clone());
            if let Some(&v) = memo.get(&key) {
                return v;
            }
            let mut total = 0;
            for subset in subsets(&cols, r) {
                let mut next = cols.clone();
                for &j in &subset {
                    next[j] -= 1;
                }
                total += go(rest, next, memo);
            }
            memo.insert(key, total);
            total
        }
        go(rows, cols.to_vec(), &mut HashMap::new())
    }

    fn with_margins(rows: &[usize], cols: &[usize]) -> Vec<Self> {
        let mut out = Vec::new();
        let mut m = BinaryMatrix::zeros(rows.len(), cols.len());
        fn go(i: usize, rows: &[usize], cols: Vec<usize>, m: &mut BinaryMatrix, out: &mut Vec<BinaryMatrix>) {
            if i == rows.len() {
                if cols.iter().all(|&c| c == 0) {
                    out.push(m.clone());
                }
                return;
            }
            for subset in subsets(&cols, rows[i]) {
                let mut next = cols.clone();
                for &j in &subset {
                    next[j] -= 1;
                    m.set(i, j, true);
                }
                go(i + 1, rows, next, m, out);
                for &j in &subset {
                    m.set(i, j, false);
                }
            }
        }
        go(0, rows, cols.to_vec(), &mut m, &mut out);
        out
    }

    fn satisfying(kind: ConditionKind, shape: &SkewShape, bounds: Bounds) -> Vec<Self> {
        match kind {
            ConditionKind::Tableau => {
                let (start, end) = tableau_start(Mode::Binary, shape);
                if end.len() > bounds.cols {
                    return Vec::new();
                }
                strip_chains(&start, &end, bounds.rows, Strip::Vertical)
                    .into_iter()
                    .map(|chain| {
                        let mut m = BinaryMatrix::zeros(bounds.rows, bounds.cols);
                        for (i, w) in chain.windows(2).enumerate() {
                            for j in 0..bounds.cols {
                                m.set(i, j, w[1].get(j) > w[0].get(j));
                            }
                        }
                        m
                    })
                    .collect()
            }
            ConditionKind::LittlewoodRichardson => {
                if shape.outer().len() > bounds.rows {
                    return Vec::new();
                }
                strip_chains(shape.inner(), shape.outer(), bounds.cols, Strip::Vertical)
                    .into_iter()
                    .map(|chain| {
                        let mut m = BinaryMatrix::zeros(bounds.rows, bounds.cols);
                        for (t, w) in chain.windows(2).enumerate() {
                            for i in 0..bounds.rows {
                                m.set(i, bounds.cols - 1 - t, w[1].get(i) > w[0].get(i));
                            }
                        }
                        m
                    })
                    .collect()
            }
        }
    }

    fn tableau_ladder() -> Direction {
        Direction::Left
    }

    fn lr_ladder() -> Direction {
        Direction::Up
    }

    fn ladder_margin(&self, kind: ConditionKind) -> Composition {
        match kind {
            ConditionKind::Tableau => self.col_sums(),
            ConditionKind::LittlewoodRichardson => self.row_sums(),
        }
    }
}

impl Cancellable for IntegralMatrix {
    fn tableau_symbol(&self, shape: &SkewShape) -> EdgeSign {
        edge_symbol(&composition_plus(shape.inner().as_composition(), &self.row_sums()), shape.outer())
    }

    fn lr_symbol(&self, shape: &SkewShape) -> EdgeSign {
        edge_symbol(&composition_plus(shape.inner().as_composition(), &self.col_sums()), shape.outer())
    }

    fn tableau_witness(&self, inner: &Partition) -> Option<Witness> {
        let cols = (0..self.width()).map(|j| (0..self.height()).map(|i| self.value(i, j)).collect());
        chain_witness(inner, cols, Strip::Horizontal, true)
    }

    fn lr_witness(&self, inner: &Partition) -> Option<Witness> {
        let rows = (0..self.height()).map(|i| (0..self.width()).map(|j| self.value(i, j)).collect());
        chain_witness(inner, rows, Strip::Horizontal, true)
    }

    fn margin_roles() -> MarginRoles {
        MarginRoles::TableauOnRows
    }

    fn count_with_margins(rows: &[usize], cols: &[usize]) -> u64 {
        fn go(rows: &[usize], cols: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
            let Some((&r, rest)) = rows.split_first() else {
                return cols.iter().all(|&c| c == 0) as u64;
            };
            let key = (rows.len(), cols.clone());
            if let Some(&v) = memo.get(&key) {
                return v;
            }
            let mut total = 0;
            for row in bounded_compositions(r, &cols) {
                let next: Vec<usize> = cols.iter().zip(&row).map(|(c, x)| c - x).collect();
                total += go(rest, next, memo);
            }
            memo.insert(key, total);
            total
        }
        go(rows, cols.to_vec(), &mut HashMap::new())
    }

    fn with_margins(rows: &[usize], cols: &[usize]) -> Vec<Self> {
        let mut out = Vec::new();
        let mut m = IntegralMatrix::zeros(rows.len(), cols.len());
        fn go(i: usize, rows: &[usize], cols: Vec<usize>, m: &mut IntegralMatrix, out: &mut Vec<IntegralMatrix>) {
            if i == rows.len() {
                if cols.iter().all(|&c| c == 0) {
                    out.push(m.clone());
                }
                return;
            }
            for row in bounded_compositions(rows[i], &cols) {
                for (j, &x) in row.iter().enumerate() {
                    m.set(i, j, x);
                }
                let next: Vec<usize> = cols.iter().zip(&row).map(|(c, x)| c - x).collect();
                go(i + 1, rows, next, m, out);
            }
            for j in 0..cols.len() {
                m.set(i, j, 0);
            }
        }
        go(0, rows, cols.to_vec(), &mut m, &mut out);
        out
    }

    fn satisfying(kind: ConditionKind, shape: &SkewShape, bounds: Bounds) -> Vec<Self> {
        let (steps, length) = match kind {
            ConditionKind::Tableau => (bounds.cols, bounds.rows),
            ConditionKind::LittlewoodRichardson => (bounds.rows, bounds.cols),
        };
        if shape.outer().len() > length {
            return Vec::new();
        }
        strip_chains(shape.inner(), shape.outer(), steps, Strip::Horizontal)
            .into_iter()
            .map(|chain| {
                let mut m = IntegralMatrix::zeros(bounds.rows, bounds.cols);
                for (t, w) in chain.windows(2).enumerate() {
                    for x in 0..length {
                        let v = w[1].get(x) - w[0].get(x);
                        match kind {
                            ConditionKind::Tableau => m.set(x, t, v),
                            ConditionKind::LittlewoodRichardson => m.set(t, x, v),
                        }
                    }
                }
                m
            })
            .collect()
    }

    fn tableau_ladder() -> Direction {
        Direction::Up
    }

    fn lr_ladder() -> Direction {
        Direction::Left
    }

    fn ladder_margin(&self, kind: ConditionKind) -> Composition {
        match kind {
            ConditionKind::Tableau => self.row_sums(),
            ConditionKind::LittlewoodRichardson => self.col_sums(),
        }
    }
}

/// All `k`-subsets of the positions where `avail` is positive.
fn subsets(avail: &[usize], k: usize) -> Vec<Vec<usize>> {
    let pos: Vec<usize> = (0..avail.len()).filter(|&j| avail[j] > 0).collect();
    let mut out = Vec::new();
    fn go(pos: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (t, &p) in pos.iter().enumerate() {
            if pos.len() - t < k - cur.len() {
                break;
            }
            cur.push(p);
            go(&pos[t + 1..], k, cur, out);
            cur.pop();
        }
    }
    go(&pos, k, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` with `x_j <= caps[j]`, exactly `caps.len()` parts.
fn bounded_compositions(n: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(n: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == caps.len() {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = caps[cur.len()..].iter().sum();
        if room < n {
            return;
        }
        for x in 0..=n.min(caps[cur.len()]) {
            cur.push(x);
            go(n - x, caps, cur, out);
            cur.pop();
        }
    }
    go(n, caps, &mut Vec::new(), &mut out);
    out
}

/// All chains `start = c_0 <= c_1 <= ... <= c_steps = end` of strips of the given kind.
pub fn strip_chains(start: &Partition, end: &Partition, steps: usize, kind: Strip) -> Vec<Vec<Partition>> {
    if !end.contains(start) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chain = vec![start.clone()];
    fn go(chain: &mut Vec<Partition>, end: &Partition, left: usize, kind: Strip, out: &mut Vec<Vec<Partition>>) {
        let prev = chain.last().unwrap().clone();
        if left == 0 {
            if prev == *end {
                out.push(chain.clone());
            }
            return;
        }
        for next in strips_between(&prev, end, kind) {
            chain.push(next);
            go(chain, end, left - 1, kind, out);
            chain.pop();
        }
    }
    go(&mut chain, end, steps, kind, &mut out);
    out
}

/// Partitions `q` with `prev <= q` a strip of the given kind and `q` inside `end`.
pub(crate) fn strips_between(prev: &Partition, end: &Partition, kind: Strip) -> Vec<Partition> {
    let n = end.len();
    let mut out = Vec::new();
    fn go(i: usize, n: usize, prev: &Partition, end: &Partition, kind: Strip, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == n {
            let q = Partition::new(cur.clone()).expect("built weakly decreasing");
            if strip_le(prev, &q, kind) {
                out.push(q);
            }
            return;
        }
        let lo = prev.get(i);
        let mut hi = end.get(i);
        if i > 0 {
            hi = hi.min(cur[i - 1]);
        }
        match kind {
            Strip::Horizontal if i > 0 => hi = hi.min(prev.get(i - 1)),
            Strip::Vertical => hi = hi.min(lo + 1),
            _ => {}
        }
        for x in lo..=hi.max(lo) {
            if x > hi {
                break;
            }
            cur.push(x);
            go(i + 1, n, prev, end, kind, cur, out);
            cur.pop();
        }
    }
    go(0, n, prev, end, kind, &mut Vec::new(), &mut out);
    out
}

/// The cancelling partner of `m`, obtained by reversing the lower part of
/// the crystal ladder through it.
pub fn involution<M: Cancellable>(m: &M, failing: &Failing) -> Result<M, CancellationError> {
    let (kind, shape) = match failing {
        Failing::TableauFor(s) => (ConditionKind::Tableau, s),
        Failing::LrFor(s) => (ConditionKind::LittlewoodRichardson, s),
    };
    let (witness, start, raise) = match kind {
        ConditionKind::Tableau => {
            let (start, _) = tableau_start(M::MODE, shape);
            (m.tableau_witness(shape.inner()), start, M::tableau_ladder())
        }
        ConditionKind::LittlewoodRichardson => (m.lr_witness(shape.inner()), shape.inner().clone(), M::lr_ladder()),
    };
    let witness = witness.ok_or(CancellationError::NotCancellable)?;
    let alpha = start.as_composition().add(&m.ladder_margin(kind));
    ladder(m, raise, witness.index, signed_gap(&alpha, witness.index))
}

/// The witness the involution for `failing` would use, if any.
pub fn witness<M: Cancellable>(m: &M, failing: &Failing) -> Option<Witness> {
    match failing {
        Failing::TableauFor(s) => m.tableau_witness(s.inner()),
        Failing::LrFor(s) => m.lr_witness(s.inner()),
    }
}

fn iverson(b: bool) -> i64 {
    b as i64
}

/// The summand of the chosen stage at `m`.
pub fn summand<M: Cancellable>(m: &M, tableau_shape: &SkewShape, lr_shape: &SkewShape, stage: Stage) -> i64 {
    let tab = || m.tableau_symbol(tableau_shape).value();
    let lr = || m.lr_symbol(lr_shape).value();
    let tab_ok = || iverson(m.tableau_condition(tableau_shape));
    let lr_ok = || iverson(m.lr_condition(lr_shape));
    match stage {
        Stage::Brute => {
            let t = tab();
            if t == 0 {
                0
            } else {
                t * lr()
            }
        }
        Stage::TabFirst => tab_ok() * lr(),
        Stage::LrFirst => tab() * lr_ok(),
        Stage::FullyReduced => tab_ok() * lr_ok(),
    }
}

/// Compositions of `n` into exactly `len` parts.
fn compositions(n: usize, len: usize) -> Vec<Vec<usize>> {
    bounded_compositions(n, &vec![n; len])
}

/// Margin pairs `(rows, cols)` within `bounds` at which the brute summand is nonzero,
/// with its value.
fn brute_margins<M: Cancellable>(tableau_shape: &SkewShape, lr_shape: &SkewShape, bounds: Bounds) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let n = tableau_shape.size();
    if lr_shape.size() != n {
        return Vec::new();
    }
    let (tab_len, lr_len) = match M::margin_roles() {
        MarginRoles::TableauOnColumns => (bounds.cols, bounds.rows),
        MarginRoles::TableauOnRows => (bounds.rows, bounds.cols),
    };
    let (tab_start, tab_end) = tableau_start(M::MODE, tableau_shape);
    let tab_side: Vec<(Vec<usize>, i64)> = compositions(n, tab_len)
        .into_iter()
        .map(|c| {
            let s = edge_symbol(&tab_start.as_composition().add(&Composition::new(c.clone())), &tab_end).value();
            (c, s)
        })
        .filter(|(_, s)| *s != 0)
        .collect();
    let lr_side: Vec<(Vec<usize>, i64)> = compositions(n, lr_len)
        .into_iter()
        .map(|c| {
            let s = edge_symbol(&lr_shape.inner().as_composition().add(&Composition::new(c.clone())), lr_shape.outer()).value();
            (c, s)
        })
        .filter(|(_, s)| *s != 0)
        .collect();
    let mut out = Vec::new();
    for (t, ts) in &tab_side {
        for (l, ls) in &lr_side {
            let (rows, cols) = match M::margin_roles() {
                MarginRoles::TableauOnColumns => (l.clone(), t.clone()),
                MarginRoles::TableauOnRows => (t.clone(), l.clone()),
            };
            out.push((rows, cols, ts * ls));
        }
    }
    out
}

/// Matrices in `bounds` at which the summand of `stage` can be nonzero.
pub fn support<M: Cancellable>(tableau_shape: &SkewShape, lr_shape: &SkewShape, stage: Stage, bounds: Bounds) -> Vec<M> {
    match stage {
        Stage::Brute => brute_margins::<M>(tableau_shape, lr_shape, bounds)
            .into_iter()
            .flat_map(|(r, c, _)| M::with_margins(&r, &c))
            .collect(),
        Stage::TabFirst | Stage::FullyReduced => M::satisfying(ConditionKind::Tableau, tableau_shape, bounds),
        Stage::LrFirst => M::satisfying(ConditionKind::LittlewoodRichardson, lr_shape, bounds),
    }
}

/// The sum of the stage's summand over all matrices supported in `bounds`.
pub fn evaluate<M: Cancellable>(tableau_shape: &SkewShape, lr_shape: &SkewShape, stage: Stage, bounds: Bounds) -> i64 {
    match stage {
        Stage::Brute => brute_margins::<M>(tableau_shape, lr_shape, bounds)
            .into_iter()
            .map(|(r, c, s)| s * M::count_with_margins(&r, &c) as i64)
            .sum(),
        _ => support::<M>(tableau_shape, lr_shape, stage, bounds)
            .iter()
            .map(|m| summand(m, tableau_shape, lr_shape, stage))
            .sum(),
    }
}

/// A box large enough for every shape pair tried in practice; the
/// stabilisation check in [`alternating_sum`] guards the rest.
pub fn default_bounds(tableau_shape: &SkewShape, lr_shape: &SkewShape, mode: Mode) -> Bounds {
    let n = tableau_shape.size().max(lr_shape.size());
    let (tab_extent, lr_extent) = match mode {
        Mode::Binary => (tableau_shape.outer().get(0), lr_shape.outer().len()),
        Mode::Integral => (tableau_shape.outer().len(), lr_shape.outer().len()),
    };
    match mode {
        Mode::Binary => Bounds { rows: lr_extent + n, cols: tab_extent + n },
        Mode::Integral => Bounds { rows: tab_extent + n, cols: lr_extent + n },
    }
}

/// The alternating sum at `stage`, checked to be unchanged when the box
/// grows by one row and one column.
pub fn alternating_sum(
    tableau_shape: &SkewShape,
    lr_shape: &SkewShape,
    stage: SummationStage,
    bounds: Bounds,
) -> Result<i64, CancellationError> {
    let eval = |b: Bounds| match stage.mode {
        Mode::Binary => evaluate::<BinaryMatrix>(tableau_shape, lr_shape, stage.stage, b),
        Mode::Integral => evaluate::<IntegralMatrix>(tableau_shape, lr_shape, stage.stage, b),
    };
    let small_value = eval(bounds);
    let large = bounds.grown();
    let large_value = eval(large);
    if small_value != large_value {
        return Err(CancellationError::BoxTooSmall { small: bounds, small_value, large, large_value });
    }
    Ok(small_value)
}

/// Number of matrices satisfying both conditions; margins are fixed by the shapes.
pub fn lr_count(tableau_shape: &SkewShape, lr_shape: &SkewShape, mode: Mode) -> u64 {
    match mode {
        Mode::Binary => {
            let bounds = Bounds { rows: lr_shape.outer().len(), cols: tableau_shape.outer().get(0) };
            count_both::<BinaryMatrix>(tableau_shape, lr_shape, bounds)
        }
        Mode::Integral => {
            let bounds = Bounds { rows: tableau_shape.outer().len(), cols: lr_shape.outer().len() };
            count_both::<IntegralMatrix>(tableau_shape, lr_shape, bounds)
        }
    }
}

fn count_both<M: Cancellable>(tableau_shape: &SkewShape, lr_shape: &SkewShape, bounds: Bounds) -> u64 {
    M::satisfying(ConditionKind::Tableau, tableau_shape, bounds)
        .iter()
        .filter(|m| m.lr_condition(lr_shape))
        .count() as u64
}

/// Pairs of matrices whose summands cancel on the way from `stage` to the
/// next one, each pair listed once.
pub fn cancellation_pairs<M: Cancellable>(
    tableau_shape: &SkewShape,
    lr_shape: &SkewShape,
    stage: Stage,
    bounds: Bounds,
) -> Result<Vec<(M, M)>, CancellationError> {
    let Some(kind) = stage.cancels() else {
        return Ok(Vec::new());
    };
    let failing = match kind {
        ConditionKind::Tableau => Failing::TableauFor(tableau_shape.clone()),
        ConditionKind::LittlewoodRichardson => Failing::LrFor(lr_shape.clone()),
    };
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in support::<M>(tableau_shape, lr_shape, stage, bounds) {
        if summand(&m, tableau_shape, lr_shape, stage) == 0 || witness(&m, &failing).is_none() || seen.contains(&m) {
            continue;
        }
        let partner = involution(&m, &failing)?;
        seen.insert(m.clone());
        seen.insert(partner.clone());
        out.push((m, partner));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_bin::tests::all_binary;
    use crate::crystal_int::tests::all_integral;
    use crate::insertion_oracles::rectify;
    use crate::matrices::fixtures::{ints, running_binary};
    use crate::shapes::{part, Flavor, Tableau};
    use proptest::prelude::*;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn skew(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn edge_symbol_examples() {
        assert_eq!(edge_symbol(&comp(&[2, 1]), &part(&[2, 1])), EdgeSign::Positive);
        assert_eq!(edge_symbol(&comp(&[0, 2]), &part(&[1, 1])), EdgeSign::Negative);
        for lambda in [part(&[]), part(&[1]), part(&[1, 1]), part(&[2])] {
            assert_eq!(edge_symbol(&comp(&[0, 1]), &lambda), EdgeSign::Zero);
        }
        assert_eq!(edge_symbol(&comp(&[]), &part(&[])), EdgeSign::Positive);
        assert_eq!(edge_symbol(&comp(&[1, 0, 3]), &part(&[2, 1, 1])), EdgeSign::Zero);
        assert_eq!(edge_symbol(&comp(&[0, 3]), &part(&[2, 1])), EdgeSign::Negative);
        assert_eq!(edge_symbol(&comp(&[0, 0, 3]), &part(&[1, 1, 1])), EdgeSign::Positive);
    }

    fn exchanged(alpha: &[usize], i: usize) -> Option<Vec<usize>> {
        let mut a = alpha.to_vec();
        a.resize(a.len().max(i + 2), 0);
        let first = a[i + 1].checked_sub(1)?;
        let second = a[i] + 1;
        a[i] = first;
        a[i + 1] = second;
        Some(a)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn edge_symbol_characterisation(alpha in proptest::collection::vec(0usize..=2, 0..5), i in 0usize..5, pick in 0usize..100) {
            let a = Composition::new(alpha.clone());
            let n = a.size();
            let lambdas = Partition::all_of_size(n);
            let lambda = &lambdas[pick % lambdas.len()];
            if a.is_partition() {
                prop_assert_eq!(edge_symbol(&a, lambda).value(), (a == *lambda.as_composition()) as i64);
            }
            if let Some(b) = exchanged(&alpha, i) {
                let b = Composition::new(b);
                prop_assert_eq!(edge_symbol(&a, lambda).value() + edge_symbol(&b, lambda).value(), 0);
            }
        }
    }

    fn small_pairs(max: usize) -> Vec<(SkewShape, SkewShape)> {
        let shapes = SkewShape::all_up_to(max);
        let mut out = Vec::new();
        for a in &shapes {
            for b in &shapes {
                if a.size() == b.size() {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Semistandard tableaux of a skew shape whose weight is `rho` and whose
    /// reading rectifies to the tableau with all `i` in row `i`.
    fn lr_coefficient(shape: &SkewShape, rho: &Partition) -> usize {
        let chains = strip_chains(shape.inner(), shape.outer(), rho.len(), Strip::Horizontal);
        let target: Vec<Partition> = (0..=rho.len()).map(|k| part(&rho.parts()[..k])).collect();
        let target = Tableau::new(Flavor::Semistandard, target).unwrap();
        chains
            .into_iter()
            .filter_map(|c| Tableau::new(Flavor::Semistandard, c).ok())
            .filter(|t| t.weight() == *rho.as_composition() && rectify(t) == target)
            .count()
    }

    fn scalar_by_rectification(a: &SkewShape, b: &SkewShape) -> i64 {
        if a.size() != b.size() {
            return 0;
        }
        Partition::all_of_size(a.size()).iter().map(|rho| (lr_coefficient(a, rho) * lr_coefficient(b, rho)) as i64).sum()
    }

    #[test]
    fn small_cases() {
        let one = skew("1");
        for mode in [Mode::Binary, Mode::Integral] {
            let b = default_bounds(&one, &one, mode);
            let v = alternating_sum(&one, &one, SummationStage { stage: Stage::FullyReduced, mode }, b).unwrap();
            assert_eq!(v, 1);
            let l = skew("2,1");
            for stage in Stage::ALL {
                let b = default_bounds(&l, &l, mode);
                assert_eq!(alternating_sum(&l, &l, SummationStage { stage, mode }, b).unwrap(), 1, "{stage} {mode}");
            }
            assert_eq!(lr_count(&l, &l, mode), 1);
            let s = skew("3,2/1");
            let expected = scalar_by_rectification(&s, &s);
            assert_eq!(expected, 2);
            assert_eq!(lr_count(&s, &s, mode) as i64, expected);
            for stage in Stage::ALL {
                let b = default_bounds(&s, &s, mode);
                assert_eq!(alternating_sum(&s, &s, SummationStage { stage, mode }, b).unwrap(), expected, "{stage} {mode}");
            }
        }
    }

    #[test]
    fn all_stages_agree_on_small_shapes() {
        for (a, b) in small_pairs(5) {
            let expected = scalar_by_rectification(&a, &b);
            for mode in [Mode::Binary, Mode::Integral] {
                assert_eq!(lr_count(&a, &b, mode) as i64, expected, "{a} {b} {mode}");
                let bounds = default_bounds(&a, &b, mode);
                for stage in Stage::ALL {
                    let v = alternating_sum(&a, &b, SummationStage { stage, mode }, bounds).unwrap();
                    assert_eq!(v, expected, "{a} {b} {stage} {mode}");
                }
            }
        }
    }

    #[test]
    fn grouped_evaluation_matches_literal_sum() {
        let shapes = [skew("2,1"), skew("2,2/1"), skew("3/1"), skew("2,1/1"), skew("1,1,1")];
        for a in &shapes {
            for b in &shapes {
                let bounds = Bounds { rows: 3, cols: 3 };
                for stage in Stage::ALL {
                    let literal: i64 = all_binary(3, 3).map(|m| summand(&m, a, b, stage)).sum();
                    assert_eq!(evaluate::<BinaryMatrix>(a, b, stage, bounds), literal, "{a} {b} {stage}");
                    let n = a.size();
                    let literal: i64 = all_integral(3, 3, n.min(3))
                        .filter(|m| m.total() == n)
                        .map(|m| summand(&m, a, b, stage))
                        .sum();
                    assert_eq!(evaluate::<IntegralMatrix>(a, b, stage, bounds), literal, "{a} {b} {stage}");
                }
            }
        }
    }

    #[test]
    fn binary_and_integral_counts_agree() {
        for (a, b) in small_pairs(5) {
            assert_eq!(lr_count(&a, &b, Mode::Binary), lr_count(&a, &b, Mode::Integral), "{a} {b}");
        }
    }

    #[test]
    fn tiny_box_is_reported() {
        let s = skew("3,2/1");
        let stage = SummationStage { stage: Stage::Brute, mode: Mode::Binary };
        let unstable = (0..6)
            .map(|k| Bounds { rows: k, cols: k })
            .find(|&b| evaluate::<BinaryMatrix>(&s, &s, Stage::Brute, b) != evaluate::<BinaryMatrix>(&s, &s, Stage::Brute, b.grown()))
            .expect("sums over growing boxes change somewhere");
        let r = alternating_sum(&s, &s, stage, unstable);
        assert!(matches!(r, Err(CancellationError::BoxTooSmall { .. })), "{r:?}");
    }

    #[test]
    fn running_matrix_membership() {
        let m = running_binary();
        let tab = skew("9,8,5,5,3/4,1");
        assert!(m.tableau_condition(&tab));
        for mu in [part(&[7, 6, 6, 6, 4, 3]), part(&[9, 9, 9, 9, 9, 9]), part(&[5, 5, 5, 5, 5, 5, 5])] {
            let rows = m.row_sums();
            let nu = Partition::new(mu.as_composition().add(&rows).padded(7)).ok();
            let Some(nu) = nu else { continue };
            let shape = SkewShape::new(nu, mu.clone()).unwrap();
            let by_potentials =
                (0..6).all(|i| crate::crystal_bin::potential(&m, Direction::Up, i) <= mu.get(i) - mu.get(i + 1));
            assert_eq!(m.lr_condition(&shape), by_potentials, "{shape}");
            assert_eq!(m.lr_witness(&mu).is_none(), by_potentials);
        }
    }

    fn check_pairing<M: Cancellable>(ms: Vec<M>, failing: &Failing, symbol: impl Fn(&M) -> EdgeSign, perpendicular: &[SkewShape], lr: bool) {
        let mut failing_count = 0;
        for m in ms {
            let Some(w) = witness(&m, failing) else {
                assert_eq!(involution(&m, failing), Err(CancellationError::NotCancellable));
                continue;
            };
            failing_count += 1;
            let p = involution(&m, failing).unwrap();
            if p == m {
                // fixed points sit exactly where the edge symbol vanishes
                assert_eq!(symbol(&m), EdgeSign::Zero, "{m:?}");
                continue;
            }
            assert_eq!(witness(&p, failing), Some(w), "{m:?}");
            assert_eq!(involution(&p, failing).unwrap(), m);
            assert_eq!(symbol(&m).value() + symbol(&p).value(), 0, "{m:?}");
            for s in perpendicular {
                if lr {
                    assert_eq!(m.tableau_condition(s), p.tableau_condition(s));
                } else {
                    assert_eq!(m.lr_condition(s), p.lr_condition(s));
                }
            }
        }
        assert!(failing_count > 0);
    }

    #[test]
    fn binary_lr_involution_exhaustive() {
        let perpendicular: Vec<SkewShape> = SkewShape::all_up_to(6).into_iter().filter(|s| s.outer().get(0) <= 3).collect();
        for nu in [part(&[2, 2]), part(&[3, 1]), part(&[2, 1, 1])] {
            let shape = SkewShape::new(nu.clone(), part(&[1])).unwrap();
            let f = Failing::LrFor(shape.clone());
            check_pairing(all_binary(3, 3).collect(), &f, |m: &BinaryMatrix| m.lr_symbol(&shape), &perpendicular, true);
        }
    }

    #[test]
    fn binary_tableau_involution_exhaustive() {
        let perpendicular: Vec<SkewShape> = SkewShape::all_up_to(6).into_iter().filter(|s| s.outer().len() <= 3).collect();
        for lambda in [part(&[2, 2]), part(&[3, 1]), part(&[2, 1, 1])] {
            let shape = SkewShape::new(lambda, part(&[1])).unwrap();
            let f = Failing::TableauFor(shape.clone());
            check_pairing(all_binary(3, 3).collect(), &f, |m: &BinaryMatrix| m.tableau_symbol(&shape), &perpendicular, false);
        }
    }

    #[test]
    fn binary_tableau_involution_is_rotated_lr_involution() {
        let cw = |m: &BinaryMatrix| m.rotate_half().rotate_ccw();
        for lambda in [part(&[2, 2]), part(&[3, 1]), part(&[3, 2, 1])] {
            let shape = SkewShape::new(lambda, part(&[1])).unwrap();
            let rotated = SkewShape::new(shape.outer().conjugate(), shape.inner().conjugate()).unwrap();
            for m in all_binary(3, 3) {
                let direct = involution(&m, &Failing::TableauFor(shape.clone()));
                let via = involution(&cw(&m), &Failing::LrFor(rotated.clone())).map(|p| p.rotate_ccw());
                assert_eq!(direct, via, "{m:?}");
            }
        }
    }

    #[test]
    fn integral_involutions_exhaustive() {
        let perpendicular: Vec<SkewShape> = SkewShape::all_up_to(5).into_iter().collect();
        let ms: Vec<IntegralMatrix> = all_integral(2, 3, 2).collect();
        for nu in [part(&[2, 2]), part(&[3, 1, 1]), part(&[1, 1, 1])] {
            let shape = SkewShape::new(nu, part(&[])).unwrap();
            let f = Failing::LrFor(shape.clone());
            check_pairing(ms.clone(), &f, |m: &IntegralMatrix| m.lr_symbol(&shape), &perpendicular, true);
            let f = Failing::TableauFor(shape.clone());
            check_pairing(ms.clone(), &f, |m: &IntegralMatrix| m.tableau_symbol(&shape), &perpendicular, false);
        }
    }

    #[test]
    fn integral_maximal_witness() {
        // first row (0,1,1) from the empty shape violates the strip condition at j = 0 and j = 1
        let m = ints(&[&[0, 1, 1], &[1, 0, 0]]);
        let f = Failing::LrFor(skew("2,1"));
        assert_eq!(witness(&m, &f), Some(Witness { step: 0, index: 1 }));
        let p = involution(&m, &f).unwrap();
        assert_eq!(witness(&p, &f), Some(Witness { step: 0, index: 1 }));
        assert_eq!(involution(&p, &f).unwrap(), m);
    }

    #[test]
    fn satisfied_condition_is_not_cancellable() {
        let m = running_binary();
        let f = Failing::TableauFor(skew("9,8,5,5,3/4,1"));
        assert_eq!(involution(&m, &f), Err(CancellationError::NotCancellable));
    }

    /// Pairs cancel, and the survivors alone give the whole sum.
    fn check_trace<M: Cancellable>(s: &SkewShape, stage: Stage, bounds: Bounds) -> usize {
        let pairs = cancellation_pairs::<M>(s, s, stage, bounds).unwrap();
        for (a, b) in &pairs {
            assert_eq!(summand(a, s, s, stage) + summand(b, s, s, stage), 0);
        }
        let failing = match stage.cancels().unwrap() {
            ConditionKind::Tableau => Failing::TableauFor(s.clone()),
            ConditionKind::LittlewoodRichardson => Failing::LrFor(s.clone()),
        };
        let all = support::<M>(s, s, stage, bounds);
        let survivors: i64 = all.iter().filter(|m| witness(*m, &failing).is_none()).map(|m| summand(m, s, s, stage)).sum();
        assert_eq!(survivors, evaluate::<M>(s, s, stage, bounds));
        let cancelled = all.iter().filter(|m| witness(*m, &failing).is_some() && summand(*m, s, s, stage) != 0).count();
        assert_eq!(cancelled, 2 * pairs.len());
        pairs.len()
    }

    #[test]
    fn traced_pairs_cancel() {
        let s = skew("3,2/1");
        for stage in [Stage::Brute, Stage::TabFirst, Stage::LrFirst] {
            let bounds = default_bounds(&s, &s, Mode::Binary);
            check_trace::<BinaryMatrix>(&s, stage, bounds);
            let bounds = default_bounds(&s, &s, Mode::Integral);
            check_trace::<IntegralMatrix>(&s, stage, bounds);
        }
        assert!(cancellation_pairs::<BinaryMatrix>(&s, &s, Stage::FullyReduced, Bounds { rows: 3, cols: 3 }).unwrap().is_empty());
    }

    #[test]
    fn stage_names() {
        for s in Stage::ALL {
            assert_eq!(s.to_string().parse::<Stage>().unwrap(), s);
        }
        assert_eq!("fully-reduced".parse::<Stage>().unwrap(), Stage::FullyReduced);
    }
}
