//! Pictures between skew diagrams and their integral and binary matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::matrices::{BinaryMatrix, Encoded, IntegralMatrix, Mode};
use crate::shapes::SkewShape;

pub type Square = (usize, usize);

/// Largest diagram `enumerate` accepts.
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PictureError {
    #[error("matrix fails the {0} condition")]
    Condition(&'static str),
    #[error("greedy construction produced an invalid map at square {0:?}")]
    Lift(Square),
    #[error("diagrams of sizes {0} and {1} exceed the enumeration limit or differ")]
    Size(usize, usize),
    #[error("not a picture between {domain} and {codomain}")]
    Invalid { domain: String, codomain: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn nw_le(s: Square, t: Square) -> bool {
    s.0 <= t.0 && s.1 <= t.1
}

fn ne_le(s: Square, t: Square) -> bool {
    s.0 <= t.0 && s.1 >= t.1
}

/// Checks that `map` is a bijection between the diagrams satisfying both
/// order conditions.
pub fn validate(map: &BTreeMap<Square, Square>, domain: &SkewShape, codomain: &SkewShape) -> bool {
    let dom: BTreeSet<Square> = domain.cells().into_iter().collect();
    let cod: BTreeSet<Square> = codomain.cells().into_iter().collect();
    let keys: BTreeSet<Square> = map.keys().copied().collect();
    let image: BTreeSet<Square> = map.values().copied().collect();
    if keys != dom || image != cod || image.len() != map.len() {
        return false;
    }
    map.iter().all(|(&s, &fs)| map.iter().all(|(&t, &ft)| compatible(s, fs, t, ft)))
}

fn compatible(s: Square, fs: Square, t: Square, ft: Square) -> bool {
    (!nw_le(s, t) || ne_le(fs, ft)) && (!nw_le(fs, ft) || ne_le(s, t))
}

/// A validated picture.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Picture {
    domain: SkewShape,
    codomain: SkewShape,
    map: BTreeMap<Square, Square>,
}

impl Picture {
    pub fn new(domain: SkewShape, codomain: SkewShape, map: BTreeMap<Square, Square>) -> Result<Self, PictureError> {
        if !validate(&map, &domain, &codomain) {
            return Err(PictureError::Invalid { domain: domain.to_string(), codomain: codomain.to_string() });
        }
        Ok(Picture { domain, codomain, map })
    }

    pub fn domain(&self) -> &SkewShape {
        &self.domain
    }

    pub fn codomain(&self) -> &SkewShape {
        &self.codomain
    }

    pub fn map(&self) -> &BTreeMap<Square, Square> {
        &self.map
    }

    pub fn image(&self, s: Square) -> Option<Square> {
        self.map.get(&s).copied()
    }

    pub fn inverse(&self) -> Picture {
        Picture {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            map: self.map.iter().map(|(&s, &t)| (t, s)).collect(),
        }
    }

    /// Entry `(i, k)` counts squares of domain row `i` sent to codomain row `k`.
    pub fn integral(&self) -> IntegralMatrix {
        let mut m = IntegralMatrix::zeros(self.domain.outer().len(), self.codomain.outer().len());
        for (&(i, _), &(k, _)) in &self.map {
            m.set(i, k, m.get(i, k) + 1);
        }
        m
    }

    /// Entry `(k, j)` is set when a square of domain column `j` goes to codomain row `k`.
    pub fn binary(&self) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(self.codomain.outer().len(), self.domain.outer().get(0));
        for (&(_, j), &(k, _)) in &self.map {
            m.set(k, j, true);
        }
        m
    }

    pub fn to_text(&self) -> String {
        self.map.iter().map(|(s, t)| format!("{},{} -> {},{}\n", s.0, s.1, t.0, t.1)).collect()
    }

    pub fn parse(text: &str, domain: SkewShape, codomain: SkewShape) -> Result<Self, PictureError> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| PictureError::Parse { line: n + 1, message: message.to_string() };
            let (a, b) = line.split_once("->").ok_or_else(|| err("expected `r,c -> r',c'`"))?;
            let square = |s: &str| -> Result<Square, PictureError> {
                let (r, c) = s.trim().split_once(',').ok_or_else(|| err("expected `r,c`"))?;
                let r = r.trim().parse().map_err(|_| err("bad row"))?;
                let c = c.trim().parse().map_err(|_| err("bad column"))?;
                Ok((r, c))
            };
            if map.insert(square(a)?, square(b)?).is_some() {
                return Err(err("square listed twice"));
            }
        }
        Picture::new(domain, codomain, map)
    }
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Projection of a picture to a matrix of the given mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Integral(IntegralMatrix),
    Binary(BinaryMatrix),
}

pub fn project(f: &Picture, mode: Mode) -> Projection {
    match mode {
        Mode::Integral => Projection::Integral(f.integral()),
        Mode::Binary => Projection::Binary(f.binary()),
    }
}

/// Domain squares row by row from the top, each row right to left.
fn semitic(shape: &SkewShape) -> Vec<Square> {
    let mut cells = shape.cells();
    cells.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    cells
}

/// Domain squares column by column from the right, each column top to bottom.
fn kanji(shape: &SkewShape) -> Vec<Square> {
    let mut cells = shape.cells();
    cells.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    cells
}

/// Sends each square to the leftmost free square of its codomain row.
fn place(rows: Vec<(Square, usize)>, domain: &SkewShape, codomain: &SkewShape) -> Result<Picture, PictureError> {
    let mut next: Vec<usize> = (0..codomain.outer().len()).map(|k| codomain.inner().get(k)).collect();
    let mut map = BTreeMap::new();
    for (s, k) in rows {
        if k >= next.len() || next[k] >= codomain.outer().get(k) {
            return Err(PictureError::Lift(s));
        }
        map.insert(s, (k, next[k]));
        next[k] += 1;
    }
    Picture::new(domain.clone(), codomain.clone(), map).map_err(|_| PictureError::Lift((0, 0)))
}

/// The picture with `Int(f) = m`.
pub fn lift_integral(m: &IntegralMatrix, domain: &SkewShape, codomain: &SkewShape) -> Result<Picture, PictureError> {
    if !m.tableau_condition(domain) {
        return Err(PictureError::Condition("tableau"));
    }
    if !m.lr_condition(codomain) {
        return Err(PictureError::Condition("Littlewood-Richardson"));
    }
    // a domain row sends its squares to codomain rows weakly increasing from left to right
    let mut todo: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..m.height() {
        let row = todo.entry(i).or_default();
        for k in (0..m.width()).rev() {
            row.extend(std::iter::repeat_n(k, m.get(i, k)));
        }
    }
    let mut assigned = Vec::new();
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    for s in semitic(domain) {
        let pos = used.entry(s.0).or_default();
        let k = todo.get(&s.0).and_then(|r| r.get(*pos)).copied().ok_or(PictureError::Lift(s))?;
        *pos += 1;
        assigned.push((s, k));
    }
    place(assigned, domain, codomain)
}

/// The picture with `Bin(f) = m`.
pub fn lift_binary(m: &BinaryMatrix, domain: &SkewShape, codomain: &SkewShape) -> Result<Picture, PictureError> {
    if !m.tableau_condition(domain) {
        return Err(PictureError::Condition("tableau"));
    }
    if !m.lr_condition(codomain) {
        return Err(PictureError::Condition("Littlewood-Richardson"));
    }
    // a domain column sends its squares to the marked codomain rows, top to bottom
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    let mut assigned = Vec::new();
    for s in kanji(domain) {
        let rows: Vec<usize> = (0..m.height()).filter(|&k| m.get(k, s.1)).collect();
        let pos = used.entry(s.1).or_default();
        let k = rows.get(*pos).copied().ok_or(PictureError::Lift(s))?;
        *pos += 1;
        assigned.push((s, k));
    }
    place(assigned, domain, codomain)
}

pub fn lift(m: &Projection, domain: &SkewShape, codomain: &SkewShape) -> Result<Picture, PictureError> {
    match m {
        Projection::Integral(m) => lift_integral(m, domain, codomain),
        Projection::Binary(m) => lift_binary(m, domain, codomain),
    }
}

/// All pictures between two diagrams, by backtracking.
pub fn enumerate(domain: &SkewShape, codomain: &SkewShape) -> Result<Vec<Picture>, PictureError> {
    let (a, b) = (domain.size(), codomain.size());
    if a != b || a > ENUMERATION_LIMIT {
        return Err(PictureError::Size(a, b));
    }
    let order = semitic(domain);
    let targets = codomain.cells();
    let mut out = Vec::new();
    let mut chosen: Vec<Square> = Vec::with_capacity(a);
    let mut free = vec![true; targets.len()];
    fn go(
        order: &[Square],
        targets: &[Square],
        chosen: &mut Vec<Square>,
        free: &mut [bool],
        out: &mut Vec<BTreeMap<Square, Square>>,
    ) {
        let n = chosen.len();
        if n == order.len() {
            out.push(order.iter().copied().zip(chosen.iter().copied()).collect());
            return;
        }
        let s = order[n];
        for (x, &t) in targets.iter().enumerate() {
            if !free[x] {
                continue;
            }
            let ok = (0..n).all(|p| compatible(order[p], chosen[p], s, t) && compatible(s, t, order[p], chosen[p]));
            if ok {
                free[x] = false;
                chosen.push(t);
                go(order, targets, chosen, free, out);
                chosen.pop();
                free[x] = true;
            }
        }
    }
    let mut maps = Vec::new();
    go(&order, &targets, &mut chosen, &mut free, &mut maps);
    for map in maps {
        out.push(Picture { domain: domain.clone(), codomain: codomain.clone(), map });
    }
    Ok(out)
}
