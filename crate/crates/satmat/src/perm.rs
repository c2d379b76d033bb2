//! Permutation matrices, stored as the row-to-column bijection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix01;

/// A k x k permutation matrix. Row i carries its single 1 in column
/// `col_of(i)`; rows and columns are 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationMatrix {
    // sigma[i] is the 1-based column of the one in row i+1
    sigma: Vec<usize>,
}

impl PermutationMatrix {
    /// Builds from 1-based column values, one per row. Errors unless the
    /// values are a permutation of 1..=k.
    pub fn from_sigma(sigma: &[usize]) -> Result<Self> {
        let k = sigma.len();
        if k == 0 {
            return Err(Error::ParsePermutation("empty".into()));
        }
        let mut seen = vec![false; k];
        for &v in sigma {
            if v < 1 || v > k {
                return Err(Error::ParsePermutation(format!(
                    "value {v} out of range 1..={k}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::ParsePermutation(format!("value {v} repeats")));
            }
            seen[v - 1] = true;
        }
        Ok(PermutationMatrix {
            sigma: sigma.to_vec(),
        })
    }

    pub fn identity(k: usize) -> Self {
        assert!(k >= 1);
        PermutationMatrix {
            sigma: (1..=k).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    /// Column of the single one in row `r` (1-based).
    pub fn col_of(&self, r: usize) -> usize {
        self.sigma[r - 1]
    }

    /// Row of the single one in column `c` (1-based).
    pub fn row_of(&self, c: usize) -> usize {
        1 + self
            .sigma
            .iter()
            .position(|&v| v == c)
            .expect("column in range")
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn inverse(&self) -> Self {
        let k = self.k();
        let mut inv = vec![0; k];
        for r in 1..=k {
            inv[self.col_of(r) - 1] = r;
        }
        PermutationMatrix { sigma: inv }
    }

    pub fn to_matrix(&self) -> Matrix01 {
        let k = self.k();
        let mut m = Matrix01::zeros(k, k);
        for r in 1..=k {
            m.set(r, self.col_of(r), true);
        }
        m
    }

    /// The `rank`-th permutation of size k in lexicographic order,
    /// rank in 0..k!. Decodes the factorial number system, so census
    /// work can be split by rank ranges.
    pub fn nth(k: usize, mut rank: u64) -> Self {
        assert!(k >= 1 && k <= 20, "factorials overflow past k = 20");
        let mut fact = vec![1u64; k];
        for i in 1..k {
            fact[i] = fact[i - 1] * i as u64;
        }
        assert!(rank < fact[k - 1] * k as u64, "rank out of range");
        let mut pool: Vec<usize> = (1..=k).collect();
        let mut sigma = Vec::with_capacity(k);
        for i in (0..k).rev() {
            let idx = (rank / fact[i]) as usize;
            rank %= fact[i];
            sigma.push(pool.remove(idx));
        }
        PermutationMatrix { sigma }
    }

    /// All k! permutations of size k in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = PermutationMatrix> {
        let total = factorial(k);
        (0..total).map(move |rank| PermutationMatrix::nth(k, rank))
    }
}

pub fn factorial(k: usize) -> u64 {
    assert!(k <= 20);
    (1..=k as u64).product()
}

impl fmt::Display for PermutationMatrix {
    /// One-line form: the column of each row's one, top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.sigma.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm[{self}]")
    }
}

impl FromStr for PermutationMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values: Vec<usize> = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::ParsePermutation(format!("bad token {tok:?}")))
            })
            .collect::<Result<_>>()?;
        PermutationMatrix::from_sigma(&values)
    }
}
