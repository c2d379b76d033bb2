//! Pattern containment for 0-1 matrices.
//!
//! A host contains a pattern when some submatrix of the host, on strictly
//! increasing row and column indices, can be turned into the pattern by
//! changing ones to zeroes. Equivalently: every 1 of the pattern maps to a 1
//! of the host; host ones outside the image do not matter.
//!
//! The search backtracks over pattern rows in order, keeping for every
//! pattern column the bitset of host columns still able to carry it, and
//! prunes with a greedy increasing-transversal check after each row choice.

use serde::Serialize;

use crate::error::Result;
use crate::matrix::Matrix01;

/// Where each pattern row and column lands in the host. 1-based, strictly
/// increasing, one entry per pattern row/column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Embedding {
    /// True when this embedding really witnesses `pattern` inside `host`.
    pub fn validates(&self, host: &Matrix01, pattern: &Matrix01) -> bool {
        if self.rows.len() != pattern.rows() || self.cols.len() != pattern.cols() {
            return false;
        }
        let increasing_in = |v: &[usize], limit: usize| {
            v.iter().all(|&x| x >= 1 && x <= limit) && v.windows(2).all(|w| w[0] < w[1])
        };
        if !increasing_in(&self.rows, host.rows()) || !increasing_in(&self.cols, host.cols()) {
            return false;
        }
        pattern
            .iter_ones()
            .all(|(i, j)| host.get(self.rows[i - 1], self.cols[j - 1]))
    }
}

/// Does `host` contain `pattern`?
pub fn contains(host: &Matrix01, pattern: &Matrix01) -> bool {
    Search::new(host, pattern, None).run().is_some()
}

/// First embedding of `pattern` in `host` in row-lexicographic order, if any.
pub fn find_embedding(host: &Matrix01, pattern: &Matrix01) -> Option<Embedding> {
    Search::new(host, pattern, None).run()
}

/// Would setting `cell` to 1 give a matrix containing `pattern`? Errors if
/// the cell already holds a 1.
pub fn flip_creates(host: &Matrix01, pattern: &Matrix01, cell: (usize, usize)) -> Result<bool> {
    let flipped = host.with_flip(cell)?;
    Ok(find_embedding_through(&flipped, pattern, cell).is_some() || contains(host, pattern))
}

/// Embedding that uses `cell` for one of the pattern's ones. The caller
/// passes the matrix with the flip already applied. Saturation loops lean on
/// this: after a flip only copies through the new 1 are new.
pub(crate) fn find_embedding_through(
    flipped: &Matrix01,
    pattern: &Matrix01,
    cell: (usize, usize),
) -> Option<Embedding> {
    pattern
        .iter_ones()
        .find_map(|(pi, pj)| Search::new(flipped, pattern, Some(Anchor { pi, pj, cell })).run())
}

#[derive(Clone, Copy)]
struct Anchor {
    // pattern one (pi, pj) must land exactly on `cell`
    pi: usize,
    pj: usize,
    cell: (usize, usize),
}

/// Set of host columns, bit b = column b + 1.
#[derive(Clone)]
struct ColSet {
    words: Vec<u64>,
}

impl ColSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        let tail = n % 64;
        if tail != 0 {
            *words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        ColSet { words }
    }

    fn single(c: usize, n: usize) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        words[(c - 1) / 64] |= 1u64 << ((c - 1) % 64);
        ColSet { words }
    }

    fn intersect(&mut self, other: &[u64]) {
        for (w, o) in self.words.iter_mut().zip(other) {
            *w &= o;
        }
    }

    /// Smallest member >= lo (1-based), if any.
    fn first_at_or_after(&self, lo: usize) -> Option<usize> {
        if lo < 1 {
            return self.first_at_or_after(1);
        }
        let start = (lo - 1) / 64;
        for (wi, &word) in self.words.iter().enumerate().skip(start) {
            let mut w = word;
            if wi == start {
                w &= u64::MAX << ((lo - 1) % 64);
            }
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize + 1);
            }
        }
        None
    }
}

struct Search<'a> {
    host: &'a Matrix01,
    pattern: &'a Matrix01,
    anchor: Option<Anchor>,
    // pattern columns holding at least one 1, and per-row one positions
    row_ones: Vec<Vec<usize>>,
    col_has_one: Vec<bool>,
    feas: Vec<ColSet>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a Matrix01, pattern: &'a Matrix01, anchor: Option<Anchor>) -> Self {
        let pr = pattern.rows();
        let pc = pattern.cols();
        let row_ones: Vec<Vec<usize>> = (1..=pr)
            .map(|i| (1..=pc).filter(|&j| pattern.get(i, j)).collect())
            .collect();
        let mut col_has_one = vec![false; pc + 1];
        for ones in &row_ones {
            for &j in ones {
                col_has_one[j] = true;
            }
        }
        let feas = (0..=pc)
            .map(|j| {
                if let Some(a) = anchor {
                    if j == a.pj {
                        return ColSet::single(a.cell.1, host.cols());
                    }
                }
                ColSet::full(host.cols())
            })
            .collect();
        Search {
            host,
            pattern,
            anchor,
            row_ones,
            col_has_one,
            feas,
            assigned: Vec::with_capacity(pr),
        }
    }

    fn run(mut self) -> Option<Embedding> {
        let (pr, pc) = (self.pattern.rows(), self.pattern.cols());
        if pr > self.host.rows() || pc > self.host.cols() {
            return None;
        }
        if let Some(a) = self.anchor {
            // the anchored row needs room above and below
            if a.cell.0 < a.pi || self.host.rows() - a.cell.0 < pr - a.pi {
                return None;
            }
        }
        if !self.transversal_exists() {
            return None;
        }
        if self.recurse(1) {
            let cols = self.build_transversal().expect("checked at the leaf");
            return Some(Embedding {
                rows: std::mem::take(&mut self.assigned),
                cols,
            });
        }
        None
    }

    fn recurse(&mut self, i: usize) -> bool {
        let pr = self.pattern.rows();
        if i > pr {
            return self.transversal_exists();
        }
        let prev = self.assigned.last().copied().unwrap_or(0);
        let mut lo = prev + 1;
        let mut hi = self.host.rows() - (pr - i);
        if let Some(a) = self.anchor {
            if i == a.pi {
                if a.cell.0 < lo || a.cell.0 > hi {
                    return false;
                }
                lo = a.cell.0;
                hi = a.cell.0;
            } else if i < a.pi {
                hi = hi.min(a.cell.0 - (a.pi - i));
            }
        }
        if self.row_ones[i - 1].is_empty() {
            // an all-zero pattern row only has to respect the ordering, and
            // the smallest legal host row dominates any other choice
            if lo > hi {
                return false;
            }
            self.assigned.push(lo);
            if self.recurse(i + 1) {
                return true;
            }
            self.assigned.pop();
            return false;
        }
        for h in lo..=hi {
            if self.host.row_is_empty(h) {
                continue;
            }
            let saved: Vec<(usize, ColSet)> = self.row_ones[i - 1]
                .iter()
                .map(|&j| (j, self.feas[j].clone()))
                .collect();
            let words = self.host.row_words(h);
            let mut viable = true;
            for &j in &self.row_ones[i - 1] {
                self.feas[j].intersect(words);
                if self.feas[j].first_at_or_after(1).is_none() {
                    viable = false;
                }
            }
            if viable && self.transversal_exists() {
                self.assigned.push(h);
                if self.recurse(i + 1) {
                    return true;
                }
                self.assigned.pop();
            }
            for (j, set) in saved {
                self.feas[j] = set;
            }
        }
        false
    }

    /// Greedy strictly increasing choice of host columns; minimal choices
    /// are always safe, so failure here means no assignment exists.
    fn transversal_exists(&self) -> bool {
        let mut lo = 1;
        for j in 1..=self.pattern.cols() {
            if self.col_has_one[j] {
                match self.feas[j].first_at_or_after(lo) {
                    Some(g) => lo = g + 1,
                    None => return false,
                }
            } else {
                if lo > self.host.cols() {
                    return false;
                }
                lo += 1;
            }
        }
        true
    }

    fn build_transversal(&self) -> Option<Vec<usize>> {
        let mut lo = 1;
        let mut out = Vec::with_capacity(self.pattern.cols());
        for j in 1..=self.pattern.cols() {
            if self.col_has_one[j] {
                let g = self.feas[j].first_at_or_after(lo)?;
                out.push(g);
                lo = g + 1;
            } else {
                if lo > self.host.cols() {
                    return None;
                }
                out.push(lo);
                lo += 1;
            }
        }
        Some(out)
    }
}
