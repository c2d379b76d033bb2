//! The four-section witness frame for a permutation pattern and its greedy
//! completion to a saturating matrix.
//!
//! For a k x k permutation pattern the frame is (6k+1) x (6k+1) with an
//! all-zero middle row and column. Four damaged copies of the pattern sit
//! north, south, east and west of the middle: each drops one designated one
//! (bottom, top, leftmost, rightmost respectively), and the damaged copy is
//! positioned so that the missing one would land exactly on the middle line.
//! Any flip on the middle line therefore completes a copy, while the frame
//! itself avoids the pattern whenever the pattern is ordinary.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix01;
use crate::pattern::{find_embedding, find_embedding_through, Embedding};
use crate::perm::PermutationMatrix;

/// Pattern cell, 1-based (row, col).
pub type Cell = (usize, usize);

/// Where each kept one of every section lands in the frame. Each list pairs a
/// pattern cell with its target cell and carries k - 1 entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionLayout {
    pub k: usize,
    /// Frame side length, 6k + 1.
    pub n: usize,
    /// Index of the all-zero middle row and column, 3k + 1.
    pub middle: usize,
    pub north: Vec<(Cell, Cell)>,
    pub south: Vec<(Cell, Cell)>,
    pub east: Vec<(Cell, Cell)>,
    pub west: Vec<(Cell, Cell)>,
}

impl SectionLayout {
    pub fn all_targets(&self) -> impl Iterator<Item = Cell> + '_ {
        self.north
            .iter()
            .chain(&self.south)
            .chain(&self.east)
            .chain(&self.west)
            .map(|&(_, target)| target)
    }
}

/// Computes the frame layout. Total for every permutation; the interesting
/// case is k >= 2.
pub fn section_layout(p: &PermutationMatrix) -> SectionLayout {
    let k = p.k();
    let n = 6 * k + 1;
    let m = 3 * k + 1;
    let c = p.col_of(k); // column of the bottom one
    let cp = p.col_of(1); // column of the top one
    let r = p.row_of(k); // row of the rightmost one
    let rp = p.row_of(1); // row of the leftmost one

    // north: the copy sits in the top k rows, columns shifted so the deleted
    // bottom one would fall on the middle column
    let north = (1..=k)
        .filter(|&i| i != k)
        .map(|i| ((i, p.col_of(i)), (i, m - c + p.col_of(i))))
        .collect();

    // west: mirror story, deleted rightmost one would fall on the middle row
    let west = (1..=k)
        .filter(|&i| i != r)
        .map(|i| ((i, p.col_of(i)), (m - r + i, p.col_of(i))))
        .collect();

    // south: bottom k rows; columns adjacent to the deleted top one hug the
    // middle column, the rest continue directly beside the north copy
    let south_col = |j: usize| -> usize {
        if j == cp {
            m
        } else if j + 1 == cp {
            m - 1
        } else if j == cp + 1 {
            m + 1
        } else if j < cp {
            (m - c + 1) - (cp - 1 - j)
        } else {
            (m + k - c) + (j - cp - 1)
        }
    };
    let south = (1..=k)
        .filter(|&i| i != 1)
        .map(|i| ((i, p.col_of(i)), (n - k + i, south_col(p.col_of(i)))))
        .collect();

    // east: rightmost k columns; rows adjacent to the deleted leftmost one
    // hug the middle row, the rest continue directly beside the west copy
    let east_row = |i: usize| -> usize {
        if i == rp {
            m
        } else if i + 1 == rp {
            m - 1
        } else if i == rp + 1 {
            m + 1
        } else if i < rp {
            (m - r + 1) - (rp - 1 - i)
        } else {
            (m + k - r) + (i - rp - 1)
        }
    };
    let east = (1..=k)
        .filter(|&i| i != rp)
        .map(|i| ((i, p.col_of(i)), (east_row(i), n - k + p.col_of(i))))
        .collect();

    SectionLayout {
        k,
        n,
        middle: m,
        north,
        south,
        east,
        west,
    }
}

/// The (6k+1) x (6k+1) frame with the four damaged copies placed and nothing
/// else.
pub fn build_tp(p: &PermutationMatrix) -> Matrix01 {
    let layout = section_layout(p);
    let mut m = Matrix01::zeros(layout.n, layout.n);
    for (r, c) in layout.all_targets() {
        debug_assert!(!m.get(r, c), "sections never share a cell");
        m.set(r, c, true);
    }
    m
}

/// Flips every 0-cell, row-major, whose flip does not create the pattern.
/// One pass is enough: extra ones only make future flips less legal, never
/// more. Errors if `a` already contains the pattern; the result is
/// saturating and running again returns it unchanged.
pub fn greedy_saturate(a: &Matrix01, pattern: &Matrix01) -> Result<Matrix01> {
    if crate::pattern::contains(a, pattern) {
        return Err(Error::AlreadyContains);
    }
    let mut out = a.clone();
    for r in 1..=out.rows() {
        for c in 1..=out.cols() {
            if out.get(r, c) {
                continue;
            }
            out.set(r, c, true);
            // `out` avoided the pattern before this flip, so a new copy must
            // pass through the flipped cell
            if find_embedding_through(&out, pattern, (r, c)).is_some() {
                out.set(r, c, false);
            }
        }
    }
    Ok(out)
}

/// Inserts `j` all-zero rows and columns right after the middle row and
/// column. Needs odd dimensions so the middle is unambiguous.
pub fn pad_middle(a: &Matrix01, j: usize) -> Result<Matrix01> {
    if a.rows() % 2 == 0 || a.cols() % 2 == 0 {
        return Err(Error::EvenDimensions {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if j == 0 {
        return Ok(a.clone());
    }
    let mr = (a.rows() + 1) / 2;
    let mc = (a.cols() + 1) / 2;
    let mut out = Matrix01::zeros(a.rows() + j, a.cols() + j);
    for (r, c) in a.iter_ones() {
        let nr = if r <= mr { r } else { r + j };
        let nc = if c <= mc { c } else { c + j };
        out.set(nr, nc, true);
    }
    Ok(out)
}

/// One verified flip: this 0-cell, once set, admits this embedding.
#[derive(Clone, Debug, Serialize)]
pub struct FlipWitness {
    pub cell: Cell,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Proof that a matrix saturates a pattern: the matrix avoids it, and every
/// single 0-cell flip is covered by an embedding through that cell.
#[derive(Clone, Debug)]
pub struct SaturationCertificate {
    pub matrix: Matrix01,
    pub pattern: Matrix01,
    pub flips: Vec<FlipWitness>,
}

impl SaturationCertificate {
    /// Recheck everything the certificate claims.
    pub fn validates(&self) -> bool {
        if crate::pattern::contains(&self.matrix, &self.pattern) {
            return false;
        }
        let mut zeros: Vec<Cell> = Vec::new();
        for r in 1..=self.matrix.rows() {
            for c in 1..=self.matrix.cols() {
                if !self.matrix.get(r, c) {
                    zeros.push((r, c));
                }
            }
        }
        if self.flips.len() != zeros.len() {
            return false;
        }
        self.flips.iter().zip(zeros).all(|(flip, cell)| {
            if flip.cell != cell {
                return false;
            }
            let Ok(flipped) = self.matrix.with_flip(cell) else {
                return false;
            };
            let e = Embedding {
                rows: flip.rows.clone(),
                cols: flip.cols.clone(),
            };
            e.validates(&flipped, &self.pattern)
        })
    }
}

impl Serialize for SaturationCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SaturationCertificate", 3)?;
        st.serialize_field("matrix", &self.matrix.to_string())?;
        st.serialize_field("pattern", &self.pattern.to_string())?;
        st.serialize_field("flips", &self.flips)?;
        st.end()
    }
}

/// Why a matrix is not saturating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationFailure {
    /// The matrix already contains the pattern, here is where.
    ContainsPattern { embedding: Embedding },
    /// Flipping this 0-cell creates no copy, so the matrix is not maximal.
    MissedFlip { cell: Cell },
}

impl std::fmt::Display for SaturationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SaturationFailure::ContainsPattern { embedding } => write!(
                f,
                "not avoiding: pattern embeds at rows {:?}, cols {:?}",
                embedding.rows, embedding.cols
            ),
            SaturationFailure::MissedFlip { cell } => write!(
                f,
                "not maximal: flipping ({}, {}) creates no copy",
                cell.0, cell.1
            ),
        }
    }
}

/// Checks saturation and returns a full certificate, or the first reason it
/// fails (0-cells scanned row-major).
pub fn verify_saturating(
    a: &Matrix01,
    pattern: &Matrix01,
) -> std::result::Result<SaturationCertificate, SaturationFailure> {
    if let Some(embedding) = find_embedding(a, pattern) {
        return Err(SaturationFailure::ContainsPattern { embedding });
    }
    let mut probe = a.clone();
    let mut flips = Vec::new();
    for r in 1..=a.rows() {
        for c in 1..=a.cols() {
            if a.get(r, c) {
                continue;
            }
            probe.set(r, c, true);
            let found = find_embedding_through(&probe, pattern, (r, c));
            probe.set(r, c, false);
            match found {
                Some(e) => flips.push(FlipWitness {
                    cell: (r, c),
                    rows: e.rows,
                    cols: e.cols,
                }),
                None => return Err(SaturationFailure::MissedFlip { cell: (r, c) }),
            }
        }
    }
    Ok(SaturationCertificate {
        matrix: a.clone(),
        pattern: pattern.clone(),
        flips,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{contains, flip_creates};
    use crate::rng::SplitMix64;

    fn q() -> PermutationMatrix {
        "4 1 3 5 2".parse().unwrap()
    }

    fn r() -> PermutationMatrix {
        "4 1 3 6 2 5".parse().unwrap()
    }

    const T_Q_TEXT: &str = include_str!("../fixtures/T_Q.txt");
    const T_R_TEXT: &str = include_str!("../fixtures/T_R.txt");

    #[test]
    fn layout_of_q_places_the_documented_cells() {
        let l = section_layout(&q());
        assert_eq!((l.k, l.n, l.middle), (5, 31, 16));
        for v in [&l.north, &l.south, &l.east, &l.west] {
            assert_eq!(v.len(), 4);
        }
        // far-left south columns sit directly left of the north copy
        assert!(l.south.contains(&(((2, 1), (28, 13)))));
        assert!(l.south.contains(&(((5, 2), (31, 14)))));
        // far-down east rows sit directly below the west copy
        assert!(l.east.contains(&(((4, 5), (18, 31)))));
        assert!(l.east.contains(&(((5, 2), (19, 28)))));
    }

    #[test]
    fn layout_of_r_places_the_documented_cells() {
        let l = section_layout(&r());
        assert_eq!((l.k, l.n, l.middle), (6, 37, 19));
        assert!(l.south.contains(&(((4, 6), (35, 21)))));
        assert!(l.east.contains(&(((4, 6), (22, 37)))));
        assert!(l.east.contains(&(((5, 2), (23, 33)))));
        assert!(l.east.contains(&(((6, 5), (24, 36)))));
    }

    #[test]
    fn layout_never_touches_the_middle_line_and_sections_stay_disjoint() {
        for k in 1..=4 {
            for p in PermutationMatrix::all(k) {
                let l = section_layout(&p);
                let targets: Vec<_> = l.all_targets().collect();
                assert_eq!(targets.len(), 4 * (k - 1));
                let mut dedup = targets.clone();
                dedup.sort_unstable();
                dedup.dedup();
                assert_eq!(dedup.len(), targets.len(), "overlap for {p}");
                for (r, c) in targets {
                    assert!((1..=l.n).contains(&r) && (1..=l.n).contains(&c));
                    assert!(
                        r != l.middle && c != l.middle,
                        "{p} hits middle at ({r},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn frames_match_the_reference_grids() {
        assert_eq!(build_tp(&q()).to_string(), T_Q_TEXT);
        assert_eq!(build_tp(&r()).to_string(), T_R_TEXT);
    }

    #[test]
    fn frame_ones_count() {
        for k in 1..=4 {
            for p in PermutationMatrix::all(k) {
                assert_eq!(build_tp(&p).ones(), 4 * (k - 1));
            }
        }
        assert_eq!(build_tp(&q()).ones(), 16);
        assert_eq!(build_tp(&r()).ones(), 20);
    }

    #[test]
    fn frame_avoids_its_ordinary_pattern() {
        assert!(!contains(&build_tp(&q()), &q().to_matrix()));
        assert!(!contains(&build_tp(&r()), &r().to_matrix()));
    }

    #[test]
    fn center_flip_completes_a_copy() {
        let t = build_tp(&q());
        assert!(flip_creates(&t, &q().to_matrix(), (16, 16)).unwrap());
    }

    #[test]
    fn greedy_rejects_containing_start() {
        let host: Matrix01 = "10\n01\n".parse().unwrap();
        assert_eq!(
            greedy_saturate(&host, &PermutationMatrix::identity(2).to_matrix()),
            Err(Error::AlreadyContains)
        );
    }

    #[test]
    fn greedy_on_single_one_pattern_flips_nothing() {
        let zero = Matrix01::zeros(3, 3);
        let single = PermutationMatrix::identity(1).to_matrix();
        let out = greedy_saturate(&zero, &single).unwrap();
        assert_eq!(out, zero);
        assert!(verify_saturating(&out, &single).is_ok());
    }

    #[test]
    fn greedy_result_is_saturating_and_idempotent() {
        let pat = PermutationMatrix::identity(2).to_matrix();
        let out = greedy_saturate(&Matrix01::zeros(4, 4), &pat).unwrap();
        let cert = verify_saturating(&out, &pat).expect("greedy output saturates");
        assert!(cert.validates());
        assert_eq!(greedy_saturate(&out, &pat).unwrap(), out);
    }

    #[test]
    fn greedy_keeps_the_middle_line_clear_for_ordinary_patterns() {
        let t = build_tp(&q());
        let full = greedy_saturate(&t, &q().to_matrix()).unwrap();
        for i in 1..=31 {
            assert!(!full.get(16, i), "middle row gained a one at col {i}");
            assert!(!full.get(i, 16), "middle col gained a one at row {i}");
        }
        assert!(full.ones() > t.ones());
    }

    #[test]
    fn random_starts_saturate_and_stay_fixed() {
        let mut rng = SplitMix64::new(21);
        let pat = PermutationMatrix::identity(2).to_matrix();
        for _ in 0..40 {
            let mut start = Matrix01::zeros(4, 4);
            for r in 1..=4 {
                for c in 1..=4 {
                    if rng.next_below(4) == 0 {
                        start.set(r, c, true);
                    }
                }
            }
            if contains(&start, &pat) {
                continue;
            }
            let full = greedy_saturate(&start, &pat).unwrap();
            assert!(verify_saturating(&full, &pat).is_ok());
            assert_eq!(greedy_saturate(&full, &pat).unwrap(), full);
        }
    }

    #[test]
    fn padding_inserts_zero_cross_at_the_middle() {
        let t = build_tp(&q());
        assert_eq!(pad_middle(&t, 0).unwrap(), t);
        let padded = pad_middle(&t, 2).unwrap();
        assert_eq!((padded.rows(), padded.cols()), (33, 33));
        assert_eq!(padded.ones(), t.ones());
        for i in 1..=33 {
            for mid in [16, 17, 18] {
                assert!(!padded.get(mid, i));
                assert!(!padded.get(i, mid));
            }
        }
        assert!(matches!(
            pad_middle(&Matrix01::zeros(4, 4), 1),
            Err(Error::EvenDimensions { rows: 4, cols: 4 })
        ));
    }

    #[test]
    fn verifier_rejects_a_containing_matrix() {
        let host: Matrix01 = "10\n01\n".parse().unwrap();
        let pat = PermutationMatrix::identity(2).to_matrix();
        match verify_saturating(&host, &pat) {
            Err(SaturationFailure::ContainsPattern { embedding }) => {
                assert!(embedding.validates(&host, &pat));
            }
            other => panic!("expected a containment failure, got {other:?}"),
        }
    }

    #[test]
    fn verifier_pinpoints_a_missed_flip_off_the_middle() {
        let t = build_tp(&q());
        match verify_saturating(&t, &q().to_matrix()) {
            Err(SaturationFailure::MissedFlip { cell }) => {
                assert!(cell.0 != 16 && cell.1 != 16, "middle flips always work");
            }
            other => panic!("bare frame should not be maximal, got {other:?}"),
        }
    }

    #[test]
    fn certificate_for_a_tiny_case() {
        let pat = PermutationMatrix::identity(1).to_matrix();
        let cert = verify_saturating(&Matrix01::zeros(2, 2), &pat).unwrap();
        assert_eq!(cert.flips.len(), 4);
        assert!(cert.validates());
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["matrix"], "00\n00\n");
        assert_eq!(json["flips"][0]["cell"], serde_json::json!([1, 1]));
    }
}
