//! The eight symmetries of the square acting on matrices.
//!
//! Conventions are pinned so that witnesses and reports mean the same thing
//! everywhere: `Rot90` turns clockwise, `FlipHorizontal` reverses the column
//! order (mirror across the vertical axis), `FlipVertical` reverses the row
//! order, and `AntiTranspose` reflects across the anti-diagonal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix01;
use crate::perm::PermutationMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Transform {
    #[serde(rename = "identity")]
    Identity,
    #[serde(rename = "rot90")]
    Rot90,
    #[serde(rename = "rot180")]
    Rot180,
    #[serde(rename = "rot270")]
    Rot270,
    #[serde(rename = "flip-horizontal")]
    FlipHorizontal,
    #[serde(rename = "flip-vertical")]
    FlipVertical,
    #[serde(rename = "transpose")]
    Transpose,
    #[serde(rename = "anti-transpose")]
    AntiTranspose,
}

pub const ALL_TRANSFORMS: [Transform; 8] = [
    Transform::Identity,
    Transform::Rot90,
    Transform::Rot180,
    Transform::Rot270,
    Transform::FlipHorizontal,
    Transform::FlipVertical,
    Transform::Transpose,
    Transform::AntiTranspose,
];

impl Transform {
    /// Dimensions of the image of an `rows x cols` matrix.
    pub fn output_dims(self, rows: usize, cols: usize) -> (usize, usize) {
        match self {
            Transform::Identity
            | Transform::Rot180
            | Transform::FlipHorizontal
            | Transform::FlipVertical => (rows, cols),
            Transform::Rot90
            | Transform::Rot270
            | Transform::Transpose
            | Transform::AntiTranspose => (cols, rows),
        }
    }

    /// Image of the 1-based cell (r, c) of an `rows x cols` matrix.
    pub fn map_cell(self, (r, c): (usize, usize), rows: usize, cols: usize) -> (usize, usize) {
        match self {
            Transform::Identity => (r, c),
            Transform::Rot90 => (c, rows + 1 - r),
            Transform::Rot180 => (rows + 1 - r, cols + 1 - c),
            Transform::Rot270 => (cols + 1 - c, r),
            Transform::FlipHorizontal => (r, cols + 1 - c),
            Transform::FlipVertical => (rows + 1 - r, c),
            Transform::Transpose => (c, r),
            Transform::AntiTranspose => (cols + 1 - c, rows + 1 - r),
        }
    }

    pub fn apply(self, m: &Matrix01) -> Matrix01 {
        let (rows, cols) = (m.rows(), m.cols());
        let (or, oc) = self.output_dims(rows, cols);
        let mut out = Matrix01::zeros(or, oc);
        for (r, c) in m.iter_ones() {
            let (nr, nc) = self.map_cell((r, c), rows, cols);
            out.set(nr, nc, true);
        }
        out
    }

    pub fn apply_to_perm(self, p: &PermutationMatrix) -> PermutationMatrix {
        let k = p.k();
        let mut sigma = vec![0; k];
        for r in 1..=k {
            let (nr, nc) = self.map_cell((r, p.col_of(r)), k, k);
            sigma[nr - 1] = nc;
        }
        PermutationMatrix::from_sigma(&sigma).expect("symmetry of a permutation is a permutation")
    }

    /// `a.then(b)` applies `a` first, then `b`; the result is again one of
    /// the eight transforms. Identified by action on a 2x3 probe.
    pub fn then(self, next: Transform) -> Transform {
        let probe = |t: Transform, cell| {
            let (r1, c1) = self.map_cell(cell, 2, 3);
            let (d1r, d1c) = self.output_dims(2, 3);
            let two = next.map_cell((r1, c1), d1r, d1c);
            let direct = t.map_cell(cell, 2, 3);
            two == direct
        };
        let (fr, fc) = {
            let (d1r, d1c) = self.output_dims(2, 3);
            next.output_dims(d1r, d1c)
        };
        *ALL_TRANSFORMS
            .iter()
            .find(|&&t| {
                t.output_dims(2, 3) == (fr, fc)
                    && (1..=2).all(|r| (1..=3).all(|c| probe(t, (r, c))))
            })
            .expect("composition stays in the group")
    }

    pub fn inverse(self) -> Transform {
        *ALL_TRANSFORMS
            .iter()
            .find(|&&t| self.then(t) == Transform::Identity)
            .expect("every transform has an inverse")
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Transform::Identity => "identity",
            Transform::Rot90 => "rot90",
            Transform::Rot180 => "rot180",
            Transform::Rot270 => "rot270",
            Transform::FlipHorizontal => "flip-horizontal",
            Transform::FlipVertical => "flip-vertical",
            Transform::Transpose => "transpose",
            Transform::AntiTranspose => "anti-transpose",
        };
        f.write_str(name)
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_TRANSFORMS
            .iter()
            .copied()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown transform {s:?}")))
    }
}

/// All distinct images of `p` under the eight symmetries. Size divides 8.
pub fn orbit(p: &PermutationMatrix) -> BTreeSet<PermutationMatrix> {
    ALL_TRANSFORMS.iter().map(|t| t.apply_to_perm(p)).collect()
}
