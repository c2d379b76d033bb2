//! Lifting a two-dimensional pattern into d dimensions.
//!
//! The lift of an r x s pattern is the r x s x 1 x ... x 1 tensor with the
//! same ones; the lift of an n x n matrix A is the d-dimensional tensor B
//! over side n with B(x1, ..., xd) = A(x1, x2). Saturation transfers: the
//! lift of a minimum saturating matrix saturates the lifted pattern, and the
//! d-dimensional saturation value is n^(d-2) times the two-dimensional one.
//! `verify_lift_lemma` checks both halves of that claim on small instances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix01;
use crate::oracle::sat_exact;

/// The constructive lift check refuses hosts with more cells than this.
pub const LIFT_CELL_LIMIT: usize = 4096;

/// The exhaustive minimum search refuses tensors with more cells than this.
pub const TENSOR_EXHAUSTIVE_CELL_LIMIT: usize = 16;

/// Dense d-dimensional 0-1 tensor, indexed 1-based along every axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorD {
    shape: Vec<usize>,
    strides: Vec<usize>,
    words: Vec<u64>,
}

impl TensorD {
    pub fn zeros(shape: &[usize]) -> Self {
        assert!(!shape.is_empty(), "tensor needs at least one axis");
        assert!(shape.iter().all(|&s| s >= 1), "axes must be nonempty");
        let mut strides = vec![1; shape.len()];
        for i in (0..shape.len() - 1).rev() {
            strides[i] = strides[i + 1] * shape[i + 1];
        }
        let cells = strides[0] * shape[0];
        TensorD {
            shape: shape.to_vec(),
            strides,
            words: vec![0; cells.div_ceil(64)],
        }
    }

    pub fn d(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn cells(&self) -> usize {
        self.strides[0] * self.shape[0]
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.d(), "index rank mismatch");
        idx.iter()
            .zip(&self.shape)
            .zip(&self.strides)
            .map(|((&x, &s), &stride)| {
                assert!((1..=s).contains(&x), "index {x} out of 1..={s}");
                (x - 1) * stride
            })
            .sum()
    }

    pub fn get(&self, idx: &[usize]) -> bool {
        self.get_linear(self.offset(idx))
    }

    pub fn set(&mut self, idx: &[usize], value: bool) {
        self.set_linear(self.offset(idx), value);
    }

    pub(crate) fn get_linear(&self, offset: usize) -> bool {
        self.words[offset / 64] >> (offset % 64) & 1 == 1
    }

    pub(crate) fn set_linear(&mut self, offset: usize, value: bool) {
        let mask = 1u64 << (offset % 64);
        if value {
            self.words[offset / 64] |= mask;
        } else {
            self.words[offset / 64] &= !mask;
        }
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Multi-indices of all ones, in linear order.
    pub fn iter_ones(&self) -> Vec<Vec<usize>> {
        (0..self.cells())
            .filter(|&o| self.get_linear(o))
            .map(|o| self.unravel(o))
            .collect()
    }

    fn unravel(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = Vec::with_capacity(self.d());
        for &stride in &self.strides {
            idx.push(offset / stride + 1);
            offset %= stride;
        }
        idx
    }
}

/// The r x s x 1 x ... x 1 tensor with the pattern's ones.
pub fn lift_pattern(pattern: &Matrix01, d: usize) -> TensorD {
    assert!(d >= 2, "lift needs at least two dimensions");
    let mut shape = vec![1; d];
    shape[0] = pattern.rows();
    shape[1] = pattern.cols();
    let mut t = TensorD::zeros(&shape);
    let mut idx = vec![1; d];
    for (r, c) in pattern.iter_ones() {
        idx[0] = r;
        idx[1] = c;
        t.set(&idx, true);
    }
    t
}

/// The d-dimensional tensor over side n with B(x1, ..., xd) = A(x1, x2).
/// The matrix must be square.
pub fn lift_matrix(a: &Matrix01, d: usize) -> TensorD {
    assert!(d >= 2, "lift needs at least two dimensions");
    assert_eq!(a.rows(), a.cols(), "only square matrices lift");
    let n = a.rows();
    let mut t = TensorD::zeros(&vec![n; d]);
    let tail: usize = n.pow((d - 2) as u32);
    for (r, c) in a.iter_ones() {
        // all cells whose first two coordinates are (r, c)
        let base = (r - 1) * t.strides[0] + (c - 1) * t.strides[1];
        for rest in 0..tail {
            t.set_linear(base + rest, true);
        }
    }
    t
}

fn increasing_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    // all strictly increasing maps 1..=k -> 1..=n as index vectors
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n - (k - cur.len()) + 1 {
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(n, k, 1, &mut cur, &mut out);
    }
    out
}

/// Containment in d dimensions: one strictly increasing index map per axis
/// carrying every one of the pattern onto a one of the host. Ranks must
/// match.
pub fn contains_d(host: &TensorD, pattern: &TensorD) -> bool {
    assert_eq!(host.d(), pattern.d(), "rank mismatch");
    if pattern.shape.iter().zip(&host.shape).any(|(&p, &h)| p > h) {
        return false;
    }
    let ones = pattern.iter_ones();
    if ones.is_empty() {
        return true;
    }
    let axis_maps: Vec<Vec<Vec<usize>>> = pattern
        .shape
        .iter()
        .zip(&host.shape)
        .map(|(&p, &h)| increasing_maps(h, p))
        .collect();
    let mut chosen: Vec<&Vec<usize>> = Vec::with_capacity(host.d());
    embed(host, &ones, &axis_maps, &mut chosen)
}

fn embed<'a>(
    host: &TensorD,
    ones: &[Vec<usize>],
    axis_maps: &'a [Vec<Vec<usize>>],
    chosen: &mut Vec<&'a Vec<usize>>,
) -> bool {
    let axis = chosen.len();
    if axis == axis_maps.len() {
        let mut mapped = vec![0; axis];
        return ones.iter().all(|one| {
            for (a, &x) in one.iter().enumerate() {
                mapped[a] = chosen[a][x - 1];
            }
            host.get(&mapped)
        });
    }
    axis_maps[axis].iter().any(|map| {
        chosen.push(map);
        let ok = embed(host, ones, axis_maps, chosen);
        chosen.pop();
        ok
    })
}

fn flip_creates_d(host: &mut TensorD, pattern: &TensorD, offset: usize) -> bool {
    host.set_linear(offset, true);
    let created = contains_d(host, pattern);
    host.set_linear(offset, false);
    created
}

fn is_maximal_d(t: &mut TensorD, pattern: &TensorD) -> bool {
    for o in 0..t.cells() {
        if !t.get_linear(o) && !flip_creates_d(t, pattern, o) {
            return false;
        }
    }
    true
}

/// Smallest ones count over all saturating tensors of the given shape, by
/// trying every tensor. None when no tensor saturates.
fn exhaustive_min_saturating(shape: &[usize], pattern: &TensorD) -> Option<usize> {
    let cells = shape.iter().product::<usize>();
    debug_assert!(cells <= TENSOR_EXHAUSTIVE_CELL_LIMIT);
    let mut best = None;
    for mask in 0u32..1 << cells {
        let mut t = TensorD::zeros(shape);
        for o in 0..cells {
            if mask >> o & 1 == 1 {
                t.set_linear(o, true);
            }
        }
        let ones = t.ones();
        if best.is_some_and(|b| ones >= b) || contains_d(&t, pattern) {
            continue;
        }
        if is_maximal_d(&mut t, pattern) {
            best = Some(ones);
        }
    }
    best
}

/// What `verify_lift_lemma` found. The lemma holds on the instance when the
/// lifted witness has exactly n^(d-2) times the base value many ones, it
/// saturates the lifted pattern, and (when the host was small enough to
/// search outright) no saturating tensor is sparser.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LiftLemmaReport {
    pub n: usize,
    pub d: usize,
    pub base_value: usize,
    pub expected_lift_value: usize,
    pub lift_ones: usize,
    pub lift_saturates: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive_value: Option<usize>,
    pub holds: bool,
}

/// Checks the lift identity sat(n, lift(P), d) = n^(d-2) * sat(n, P) on one
/// instance, constructively always and exhaustively when the lifted host has
/// at most [`TENSOR_EXHAUSTIVE_CELL_LIMIT`] cells.
pub fn verify_lift_lemma(n: usize, pattern: &Matrix01, d: usize) -> Result<LiftLemmaReport> {
    if d < 2 {
        return Err(Error::Invalid("lift dimension must be at least 2".into()));
    }
    let cells = match n.checked_pow(d as u32) {
        Some(c) if c <= LIFT_CELL_LIMIT => c,
        too_big => {
            return Err(Error::BudgetExceeded {
                op: "lift",
                limit: LIFT_CELL_LIMIT,
                given: too_big.unwrap_or(usize::MAX),
            })
        }
    };
    let base = sat_exact(n, pattern)?;
    let expected = n.pow((d - 2) as u32) * base.value;
    let witness: Matrix01 = base.witness.parse().expect("oracle emits valid text");
    let mut lifted = lift_matrix(&witness, d);
    let lifted_pattern = lift_pattern(pattern, d);
    let lift_ones = lifted.ones();
    let lift_saturates =
        !contains_d(&lifted, &lifted_pattern) && is_maximal_d(&mut lifted, &lifted_pattern);
    let exhaustive_value = if cells <= TENSOR_EXHAUSTIVE_CELL_LIMIT {
        exhaustive_min_saturating(&vec![n; d], &lifted_pattern)
    } else {
        None
    };
    let holds =
        lift_ones == expected && lift_saturates && exhaustive_value.map_or(true, |v| v == expected);
    Ok(LiftLemmaReport {
        n,
        d,
        base_value: base.value,
        expected_lift_value: expected,
        lift_ones,
        lift_saturates,
        exhaustive_value,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::contains;
    use crate::perm::PermutationMatrix;
    use crate::rng::SplitMix64;

    fn i2() -> Matrix01 {
        PermutationMatrix::identity(2).to_matrix()
    }

    #[test]
    fn tensor_roundtrip_and_counts() {
        let mut t = TensorD::zeros(&[2, 3, 2]);
        assert_eq!(t.cells(), 12);
        assert_eq!(t.d(), 3);
        t.set(&[1, 3, 2], true);
        t.set(&[2, 1, 1], true);
        assert!(t.get(&[1, 3, 2]));
        assert!(!t.get(&[1, 3, 1]));
        assert_eq!(t.ones(), 2);
        assert_eq!(t.iter_ones(), vec![vec![1, 3, 2], vec![2, 1, 1]]);
        t.set(&[1, 3, 2], false);
        assert_eq!(t.ones(), 1);
    }

    #[test]
    fn lifted_pattern_keeps_its_ones_on_the_first_two_axes() {
        let t = lift_pattern(&i2(), 4);
        assert_eq!(t.shape(), &[2, 2, 1, 1]);
        assert_eq!(t.ones(), 2);
        assert!(t.get(&[1, 1, 1, 1]) && t.get(&[2, 2, 1, 1]));
    }

    #[test]
    fn lifted_matrix_repeats_along_every_extra_axis() {
        let a: Matrix01 = "11\n10\n".parse().unwrap();
        let t = lift_matrix(&a, 3);
        assert_eq!(t.shape(), &[2, 2, 2]);
        assert_eq!(t.ones(), 3 * 2);
        for x3 in 1..=2 {
            assert!(t.get(&[1, 1, x3]));
            assert!(t.get(&[1, 2, x3]));
            assert!(t.get(&[2, 1, x3]));
            assert!(!t.get(&[2, 2, x3]));
        }
    }

    #[test]
    fn rank_two_containment_matches_the_matrix_engine() {
        let mut rng = SplitMix64::new(5);
        let pats = [i2(), "11\n11\n".parse().unwrap()];
        for _ in 0..50 {
            let mut host = Matrix01::zeros(3, 3);
            for r in 1..=3 {
                for c in 1..=3 {
                    if rng.next_below(3) == 0 {
                        host.set(r, c, true);
                    }
                }
            }
            for pat in &pats {
                assert_eq!(
                    contains_d(&lift_matrix(&host, 2), &lift_pattern(pat, 2)),
                    contains(&host, pat)
                );
            }
        }
    }

    #[test]
    fn extra_axes_must_line_up() {
        let pat = lift_pattern(&i2(), 3);
        let mut host = TensorD::zeros(&[2, 2, 2]);
        host.set(&[1, 1, 1], true);
        host.set(&[2, 2, 2], true);
        // the two pattern ones share their third coordinate, the host ones
        // do not
        assert!(!contains_d(&host, &pat));
        host.set(&[2, 2, 1], true);
        assert!(contains_d(&host, &pat));
    }

    #[test]
    fn lemma_holds_exhaustively_on_the_smallest_cube() {
        let report = verify_lift_lemma(2, &i2(), 3).unwrap();
        assert_eq!(report.base_value, 3);
        assert_eq!(report.expected_lift_value, 6);
        assert_eq!(report.lift_ones, 6);
        assert!(report.lift_saturates);
        assert_eq!(report.exhaustive_value, Some(6));
        assert!(report.holds);
    }

    #[test]
    fn lemma_in_two_dimensions_is_the_plain_value() {
        let report = verify_lift_lemma(3, &i2(), 2).unwrap();
        assert_eq!(report.base_value, 5);
        assert_eq!(report.expected_lift_value, 5);
        assert_eq!(report.exhaustive_value, Some(5));
        assert!(report.holds);
    }

    #[test]
    fn lemma_constructive_only_when_the_cube_is_big() {
        let report = verify_lift_lemma(3, &i2(), 3).unwrap();
        assert_eq!(report.expected_lift_value, 3 * 5);
        assert!(report.lift_saturates);
        assert_eq!(report.exhaustive_value, None);
        assert!(report.holds);
    }

    #[test]
    fn lemma_with_the_all_ones_base() {
        let j2: Matrix01 = "11\n11\n".parse().unwrap();
        let report = verify_lift_lemma(2, &j2, 3).unwrap();
        assert_eq!(report.expected_lift_value, 2 * 3);
        assert_eq!(report.exhaustive_value, Some(6));
        assert!(report.holds);
    }

    #[test]
    fn lemma_budget_and_domain_errors() {
        assert!(matches!(
            verify_lift_lemma(2, &i2(), 1),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            verify_lift_lemma(2, &i2(), 13),
            Err(Error::BudgetExceeded { op: "lift", .. })
        ));
        assert!(matches!(
            verify_lift_lemma(6, &i2(), 2),
            Err(Error::BudgetExceeded { op: "sat", .. })
        ));
    }

    #[test]
    fn report_serializes_camel_case() {
        let report = verify_lift_lemma(2, &i2(), 3).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["baseValue"], 3);
        assert_eq!(json["expectedLiftValue"], 6);
        assert_eq!(json["exhaustiveValue"], 6);
        assert_eq!(json["holds"], true);
    }
}
