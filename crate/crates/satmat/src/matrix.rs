//! Dense 0-1 matrices with bit-packed rows.
//!
//! All public coordinates are 1-based, row 1 at the top and column 1 at the
//! left, which keeps cell addresses aligned with how the matrices are usually
//! drawn. The packed representation is not observable.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A 0-1 matrix. At least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix01 {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Matrix01 {
    /// All-zero matrix. Panics if either dimension is 0.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let words_per_row = cols.div_ceil(64);
        Matrix01 {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    /// Matrix with ones exactly at the given 1-based cells.
    pub fn from_ones(rows: usize, cols: usize, ones: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(r, c) in ones {
            m.set(r, c, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn word_bit(&self, r: usize, c: usize) -> (usize, u64) {
        debug_assert!(
            (1..=self.rows).contains(&r) && (1..=self.cols).contains(&c),
            "cell ({r}, {c}) out of bounds for {}x{}",
            self.rows,
            self.cols
        );
        let c0 = c - 1;
        ((r - 1) * self.words_per_row + c0 / 64, 1u64 << (c0 % 64))
    }

    /// Value at 1-based (row, col).
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let (w, b) = self.word_bit(r, c);
        self.bits[w] & b != 0
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let (w, b) = self.word_bit(r, c);
        if value {
            self.bits[w] |= b;
        } else {
            self.bits[w] &= !b;
        }
    }

    /// Copy with one extra 1 at `cell`. Errors if the cell already holds a 1.
    pub fn with_flip(&self, cell: (usize, usize)) -> Result<Self> {
        if self.get(cell.0, cell.1) {
            return Err(Error::CellAlreadyOne(cell.0, cell.1));
        }
        let mut out = self.clone();
        out.set(cell.0, cell.1, true);
        Ok(out)
    }

    /// Number of ones.
    pub fn ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-based coordinates of all ones, row-major.
    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.rows).flat_map(move |r| {
            (1..=self.cols)
                .filter(move |&c| self.get(r, c))
                .map(move |c| (r, c))
        })
    }

    /// Ones in row `r` as packed words, least significant bit = column 1.
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        let base = (r - 1) * self.words_per_row;
        &self.bits[base..base + self.words_per_row]
    }

    pub(crate) fn row_is_empty(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }
}

impl fmt::Display for Matrix01 {
    /// Text form: one line per row, '0'/'1' characters, no trailing spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.rows {
            for c in 1..=self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix01 {}x{}\n{}", self.rows, self.cols, self)
    }
}

impl FromStr for Matrix01 {
    type Err = Error;

    /// Parses the text form. Single spaces between digits are tolerated and a
    /// blank line ends the matrix.
    fn from_str(s: &str) -> Result<Self> {
        let mut grid: Vec<Vec<bool>> = Vec::new();
        for line in s.lines() {
            let line = line.trim_end_matches(['\r', ' ']);
            if line.is_empty() {
                break;
            }
            let mut row = Vec::new();
            let mut prev_space = true;
            for ch in line.chars() {
                match ch {
                    '0' => {
                        row.push(false);
                        prev_space = false;
                    }
                    '1' => {
                        row.push(true);
                        prev_space = false;
                    }
                    ' ' if !prev_space => prev_space = true,
                    _ => {
                        return Err(Error::ParseMatrix(format!(
                            "unexpected character {ch:?} in row {}",
                            grid.len() + 1
                        )))
                    }
                }
            }
            if row.is_empty() {
                return Err(Error::ParseMatrix(format!(
                    "row {} is empty",
                    grid.len() + 1
                )));
            }
            grid.push(row);
        }
        if grid.is_empty() {
            return Err(Error::ParseMatrix("no rows".into()));
        }
        let cols = grid[0].len();
        if let Some(i) = grid.iter().position(|r| r.len() != cols) {
            return Err(Error::ParseMatrix(format!(
                "row {} has {} columns, expected {cols}",
                i + 1,
                grid[i].len()
            )));
        }
        let mut m = Matrix01::zeros(grid.len(), cols);
        for (r, row) in grid.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v {
                    m.set(r + 1, c + 1, true);
                }
            }
        }
        Ok(m)
    }
}
