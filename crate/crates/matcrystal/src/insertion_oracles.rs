//! Classical insertion algorithms and jeu de taquin, written directly on
//! tableau displays. These serve as independent references for the crystal
//! constructions and use nothing from the crystal modules.

use crate::matrices::{BinaryMatrix, IntegralMatrix};
use crate::shapes::{Flavor, Partition, Tableau};

type Rows = Vec<Vec<usize>>;

fn shape_of(rows: &Rows) -> Partition {
    Partition::new(rows.iter().map(|r| r.len()).collect()).expect("insertion keeps a partition shape")
}

fn to_tableau(flavor: Flavor, rows: &Rows) -> Tableau {
    Tableau::from_rows(flavor, Partition::empty(), rows).expect("insertion keeps the flavor's ordering")
}

/// Column insertion of `x`: in each column bump the topmost entry `>= x`
/// (semistandard) or `> x` (transpose), carrying it to the next column.
fn column_insert_rows(rows: &mut Rows, mut x: usize, flavor: Flavor) {
    let mut col = 0;
    loop {
        let height = rows.iter().take_while(|r| r.len() > col).count();
        let bumped = (0..height).find(|&r| match flavor {
            Flavor::Semistandard => rows[r][col] >= x,
            _ => rows[r][col] > x,
        });
        match bumped {
            Some(r) => {
                std::mem::swap(&mut rows[r][col], &mut x);
                col += 1;
            }
            None => {
                if height == rows.len() {
                    rows.push(Vec::new());
                }
                rows[height].push(x);
                return;
            }
        }
    }
}

/// Row insertion of `x`: in each row bump the leftmost entry `> x` (strict)
/// or `>= x` (weak), carrying it to the next row.
fn row_insert_rows(rows: &mut Rows, mut x: usize, weak: bool) {
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(vec![x]);
            return;
        }
        let pos = rows[r].iter().position(|&e| if weak { e >= x } else { e > x });
        match pos {
            Some(c) => {
                std::mem::swap(&mut rows[r][c], &mut x);
                r += 1;
            }
            None => {
                rows[r].push(x);
                return;
            }
        }
    }
}

/// Column inserts `letter` into a straight tableau of flavor semistandard or transpose.
pub fn column_insert(t: &Tableau, letter: usize, flavor: Flavor) -> Tableau {
    assert!(t.is_straight(), "column insertion needs a straight tableau");
    let mut rows = t.rows();
    rows.retain(|r| !r.is_empty());
    column_insert_rows(&mut rows, letter, flavor);
    to_tableau(flavor, &rows)
}

/// Column inserts a word from its last letter to its first.
pub fn column_insert_word(word: &[usize]) -> Tableau {
    let mut rows = Rows::new();
    for &x in word.iter().rev() {
        column_insert_rows(&mut rows, x, Flavor::Semistandard);
    }
    to_tableau(Flavor::Semistandard, &rows)
}

/// Burge correspondence: rows top to bottom, each read right to left,
/// column inserting `M[i,j]` copies of `j`.
pub fn burge(m: &IntegralMatrix) -> (Tableau, Tableau) {
    let mut rows = Rows::new();
    let mut chain = vec![Partition::empty()];
    for i in 0..m.height() {
        for j in (0..m.width()).rev() {
            for _ in 0..m.value(i, j) {
                column_insert_rows(&mut rows, j, Flavor::Semistandard);
            }
        }
        chain.push(shape_of(&rows));
    }
    let q = Tableau::new(Flavor::Semistandard, chain).expect("recording chain of horizontal strips");
    (to_tableau(Flavor::Semistandard, &rows), q)
}

/// Dual RSK by column insertion: columns right to left, each read top to
/// bottom, column inserting `i` for every bit `M[i,j] = 1`. The recording
/// tableau has the shape after column `j` at step `j`.
pub fn dual_rsk_col(m: &BinaryMatrix) -> (Tableau, Tableau) {
    let mut rows = Rows::new();
    let mut chain = vec![Partition::empty(); m.width() + 1];
    for j in (0..m.width()).rev() {
        for i in 0..m.height() {
            if m.get(i, j) {
                column_insert_rows(&mut rows, i, Flavor::Semistandard);
            }
        }
        chain[j] = shape_of(&rows);
    }
    let r = Tableau::new(Flavor::ReverseTranspose, chain).expect("recording chain of vertical strips");
    (to_tableau(Flavor::Semistandard, &rows), r)
}

/// Classical RSK: rows top to bottom, left to right, row inserting `M[i,j]`
/// copies of `j` with the strict bumping rule; the recording chain gives
/// the shape after each row.
pub fn rsk_row(m: &IntegralMatrix) -> (Tableau, Tableau) {
    let mut rows = Rows::new();
    let mut chain = vec![Partition::empty()];
    for i in 0..m.height() {
        for j in 0..m.width() {
            for _ in 0..m.value(i, j) {
                row_insert_rows(&mut rows, j, false);
            }
        }
        chain.push(shape_of(&rows));
    }
    let q = Tableau::new(Flavor::Semistandard, chain).expect("recording chain of horizontal strips");
    (to_tableau(Flavor::Semistandard, &rows), q)
}

/// Dual RSK by row insertion: row inserting, for each row `i`, the columns
/// of its bits in increasing order with the weak bumping rule. Returns the
/// insertion tableau (transpose flavor) and the recording tableau.
pub fn dual_rsk_row(m: &BinaryMatrix) -> (Tableau, Tableau) {
    let mut rows = Rows::new();
    let mut chain = vec![Partition::empty()];
    for i in 0..m.height() {
        for j in 0..m.width() {
            if m.get(i, j) {
                row_insert_rows(&mut rows, j, true);
            }
        }
        chain.push(shape_of(&rows));
    }
    let s = Tableau::new(Flavor::Semistandard, chain).expect("recording chain of horizontal strips");
    (to_tableau(Flavor::Transpose, &rows), s)
}

/// Skew display: `offsets[r]` empty cells, then entries.
struct Skew {
    offsets: Vec<usize>,
    cells: Vec<Vec<Option<usize>>>,
}

impl Skew {
    fn from_tableau(t: &Tableau) -> Self {
        let shape = t.shape();
        let rows = t.rows();
        let offsets: Vec<usize> = (0..rows.len()).map(|r| shape.inner().get(r)).collect();
        let cells = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = vec![None; offsets[r]];
                v.extend(row.iter().map(|&e| Some(e)));
                v
            })
            .collect();
        Skew { offsets, cells }
    }

    fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.cells.get(r).and_then(|row| row.get(c)).copied().flatten()
    }

    /// Inner corners: last empty cell of a row with nothing empty below it.
    fn inner_corners(&self) -> Vec<(usize, usize)> {
        (0..self.offsets.len())
            .filter(|&r| self.offsets[r] > 0 && self.offsets.get(r + 1).copied().unwrap_or(0) < self.offsets[r])
            .map(|r| (r, self.offsets[r] - 1))
            .collect()
    }

    /// Slides into the empty cell `(r, c)`. On ties the semistandard rule
    /// takes the entry below and the transpose rule the entry to the right.
    fn slide(&mut self, (mut r, mut c): (usize, usize), flavor: Flavor) {
        self.offsets[r] -= 1;
        loop {
            let right = self.get(r, c + 1);
            let below = self.get(r + 1, c);
            let take_below = match (right, below) {
                (None, None) => {
                    self.cells[r].truncate(c);
                    break;
                }
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some(a), Some(b)) => match flavor {
                    Flavor::Semistandard => b <= a,
                    _ => b < a,
                },
            };
            let (nr, nc) = if take_below { (r + 1, c) } else { (r, c + 1) };
            self.cells[r][c] = self.cells[nr][nc].take();
            r = nr;
            c = nc;
        }
        while self.cells.last().is_some_and(|row| row.is_empty()) {
            self.cells.pop();
            self.offsets.pop();
        }
    }

    fn rows(&self) -> Rows {
        self.cells.iter().map(|row| row.iter().flatten().copied().collect()).collect()
    }
}

/// Rectification by inward slides, always at the lowest inner corner.
pub fn rectify(t: &Tableau) -> Tableau {
    rectify_with(t, |corners| corners.len() - 1)
}

/// Rectification with a caller-chosen inner corner at each step.
pub fn rectify_with(t: &Tableau, mut choose: impl FnMut(&[(usize, usize)]) -> usize) -> Tableau {
    let flavor = t.flavor();
    assert!(matches!(flavor, Flavor::Semistandard | Flavor::Transpose), "rectification needs a forward flavor");
    let mut s = Skew::from_tableau(t);
    loop {
        let corners = s.inner_corners();
        if corners.is_empty() {
            break;
        }
        let k = choose(&corners);
        s.slide(corners[k], flavor);
    }
    to_tableau(flavor, &s.rows())
}
