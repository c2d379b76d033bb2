//! Exact values of the saturation and extremal functions on small square
//! hosts, by exhaustive search over avoiding matrices.
//!
//! The search decides cells row-major. Placing a one is legal only when no
//! copy of the pattern appears through it; since any copy in the finished
//! matrix passes through its last-placed one, the leaves are exactly the
//! avoiding matrices. Saturation additionally demands maximality, checked at
//! the leaf.

use serde::Serialize;

use crate::construct::greedy_saturate;
use crate::error::{Error, Result};
use crate::matrix::Matrix01;
use crate::pattern::{contains, find_embedding_through};
use crate::rng::SplitMix64;

/// Exhaustive search refuses hosts with more cells than this.
pub const EXACT_CELL_LIMIT: usize = 25;

/// Outcome of an oracle query. `witness` is a matrix attaining `value`, in
/// text form.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SatResult {
    pub n: usize,
    pub pattern: String,
    pub value: usize,
    pub exhaustive: bool,
    pub witness: String,
}

fn check_budget(op: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("host size must be at least 1".into()));
    }
    if n * n > EXACT_CELL_LIMIT {
        return Err(Error::BudgetExceeded {
            op,
            limit: EXACT_CELL_LIMIT,
            given: n * n,
        });
    }
    Ok(())
}

fn cells_of(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect()
}

fn is_maximal(m: &mut Matrix01, pattern: &Matrix01) -> bool {
    for r in 1..=m.rows() {
        for c in 1..=m.cols() {
            if m.get(r, c) {
                continue;
            }
            m.set(r, c, true);
            let creates = find_embedding_through(m, pattern, (r, c)).is_some();
            m.set(r, c, false);
            if !creates {
                return false;
            }
        }
    }
    true
}

/// Fewest ones over all n x n matrices that saturate the pattern.
pub fn sat_exact(n: usize, pattern: &Matrix01) -> Result<SatResult> {
    check_budget("sat", n)?;
    let empty = Matrix01::zeros(n, n);
    if contains(&empty, pattern) {
        return Err(Error::NoAvoidingMatrix);
    }
    // greedy gives a valid saturating matrix, so the search only has to look
    // for strictly smaller ones
    let seed = greedy_saturate(&empty, pattern).expect("empty host avoids");
    let mut best = (seed.ones(), seed);
    let cells = cells_of(n);
    let mut m = Matrix01::zeros(n, n);
    min_search(&mut m, &cells, 0, 0, pattern, &mut best);
    Ok(SatResult {
        n,
        pattern: pattern.to_string(),
        value: best.0,
        exhaustive: true,
        witness: best.1.to_string(),
    })
}

fn min_search(
    m: &mut Matrix01,
    cells: &[(usize, usize)],
    idx: usize,
    ones: usize,
    pattern: &Matrix01,
    best: &mut (usize, Matrix01),
) {
    if ones >= best.0 {
        return;
    }
    if idx == cells.len() {
        if is_maximal(m, pattern) {
            *best = (ones, m.clone());
        }
        return;
    }
    let cell = cells[idx];
    min_search(m, cells, idx + 1, ones, pattern, best);
    m.set(cell.0, cell.1, true);
    if find_embedding_through(m, pattern, cell).is_none() {
        min_search(m, cells, idx + 1, ones + 1, pattern, best);
    }
    m.set(cell.0, cell.1, false);
}

/// Most ones over all n x n matrices that avoid the pattern.
pub fn ex_exact(n: usize, pattern: &Matrix01) -> Result<SatResult> {
    check_budget("ex", n)?;
    let empty = Matrix01::zeros(n, n);
    if contains(&empty, pattern) {
        return Err(Error::NoAvoidingMatrix);
    }
    let mut best = (0, empty.clone());
    let cells = cells_of(n);
    let mut m = empty;
    max_search(&mut m, &cells, 0, 0, pattern, &mut best);
    Ok(SatResult {
        n,
        pattern: pattern.to_string(),
        value: best.0,
        exhaustive: true,
        witness: best.1.to_string(),
    })
}

fn max_search(
    m: &mut Matrix01,
    cells: &[(usize, usize)],
    idx: usize,
    ones: usize,
    pattern: &Matrix01,
    best: &mut (usize, Matrix01),
) {
    if ones + (cells.len() - idx) <= best.0 {
        return;
    }
    if idx == cells.len() {
        // the guard above already ensured ones > best.0
        *best = (ones, m.clone());
        return;
    }
    let cell = cells[idx];
    m.set(cell.0, cell.1, true);
    if find_embedding_through(m, pattern, cell).is_none() {
        max_search(m, cells, idx + 1, ones + 1, pattern, best);
    }
    m.set(cell.0, cell.1, false);
    max_search(m, cells, idx + 1, ones, pattern, best);
}

/// Every n x n matrix that saturates the pattern, in row-major bit order.
pub fn enumerate_maximal_avoiding(n: usize, pattern: &Matrix01) -> Result<Vec<Matrix01>> {
    check_budget("enumerate", n)?;
    let mut out = Vec::new();
    let cells = cells_of(n);
    let mut m = Matrix01::zeros(n, n);
    if contains(&m, pattern) {
        return Ok(out);
    }
    enumerate_search(&mut m, &cells, 0, pattern, &mut out);
    Ok(out)
}

fn enumerate_search(
    m: &mut Matrix01,
    cells: &[(usize, usize)],
    idx: usize,
    pattern: &Matrix01,
    out: &mut Vec<Matrix01>,
) {
    if idx == cells.len() {
        if is_maximal(m, pattern) {
            out.push(m.clone());
        }
        return;
    }
    let cell = cells[idx];
    enumerate_search(m, cells, idx + 1, pattern, out);
    m.set(cell.0, cell.1, true);
    if find_embedding_through(m, pattern, cell).is_none() {
        enumerate_search(m, cells, idx + 1, pattern, out);
    }
    m.set(cell.0, cell.1, false);
}

/// Heuristic upper bound on the saturation value: greedily saturate the
/// empty host in `trials` random cell orders and keep the sparsest result.
/// Works at any size; the answer is exact only by luck.
pub fn sat_upper_random(
    n: usize,
    pattern: &Matrix01,
    trials: usize,
    seed: u64,
) -> Result<SatResult> {
    if n == 0 {
        return Err(Error::Invalid("host size must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::Invalid("need at least one trial".into()));
    }
    let empty = Matrix01::zeros(n, n);
    if contains(&empty, pattern) {
        return Err(Error::NoAvoidingMatrix);
    }
    let mut rng = SplitMix64::new(seed);
    let mut cells = cells_of(n);
    let mut best: Option<(usize, Matrix01)> = None;
    for _ in 0..trials {
        rng.shuffle(&mut cells);
        let mut m = empty.clone();
        for &(r, c) in &cells {
            m.set(r, c, true);
            if find_embedding_through(&m, pattern, (r, c)).is_some() {
                m.set(r, c, false);
            }
        }
        if best.as_ref().map_or(true, |(ones, _)| m.ones() < *ones) {
            best = Some((m.ones(), m));
        }
    }
    let (value, witness) = best.expect("at least one trial ran");
    Ok(SatResult {
        n,
        pattern: pattern.to_string(),
        value,
        exhaustive: false,
        witness: witness.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::verify_saturating;
    use crate::perm::PermutationMatrix;

    fn i2() -> Matrix01 {
        PermutationMatrix::identity(2).to_matrix()
    }

    fn j2() -> Matrix01 {
        "11\n11\n".parse().unwrap()
    }

    // every 2x2 host, checked against the pruned search
    fn brute_2x2(pattern: &Matrix01, want_maximal: bool) -> Vec<Matrix01> {
        let mut found = Vec::new();
        for bits in 0u32..16 {
            let mut m = Matrix01::zeros(2, 2);
            for (i, (r, c)) in cells_of(2).into_iter().enumerate() {
                if bits >> i & 1 == 1 {
                    m.set(r, c, true);
                }
            }
            let mut probe = m.clone();
            if !contains(&m, pattern) && (!want_maximal || is_maximal(&mut probe, pattern)) {
                found.push(m);
            }
        }
        found
    }

    #[test]
    fn identity_pattern_values_on_tiny_hosts() {
        for (n, expected) in [(2, 3), (3, 5), (4, 7)] {
            let sat = sat_exact(n, &i2()).unwrap();
            let ex = ex_exact(n, &i2()).unwrap();
            assert_eq!(sat.value, expected, "sat at n={n}");
            assert_eq!(ex.value, expected, "ex at n={n}");
            assert!(sat.exhaustive && ex.exhaustive);
            let w: Matrix01 = sat.witness.parse().unwrap();
            assert_eq!(w.ones(), expected);
            assert!(verify_saturating(&w, &i2()).is_ok());
        }
    }

    #[test]
    fn search_agrees_with_full_enumeration_on_2x2() {
        let saturating = brute_2x2(&i2(), true);
        let best = saturating.iter().map(Matrix01::ones).min().unwrap();
        assert_eq!(sat_exact(2, &i2()).unwrap().value, best);
        let avoiding = brute_2x2(&i2(), false);
        let most = avoiding.iter().map(Matrix01::ones).max().unwrap();
        assert_eq!(ex_exact(2, &i2()).unwrap().value, most);
        let mut listed = enumerate_maximal_avoiding(2, &i2()).unwrap();
        let mut expected = saturating;
        listed.sort_by_key(Matrix01::to_string);
        expected.sort_by_key(Matrix01::to_string);
        assert_eq!(listed, expected);
    }

    #[test]
    fn the_two_saturating_matrices_for_the_identity_on_2x2() {
        let listed = enumerate_maximal_avoiding(2, &i2()).unwrap();
        let texts: Vec<String> = listed.iter().map(Matrix01::to_string).collect();
        assert_eq!(texts, ["01\n11\n", "11\n10\n"]);
    }

    #[test]
    fn all_ones_pattern_values() {
        assert_eq!(sat_exact(2, &j2()).unwrap().value, 3);
        assert_eq!(ex_exact(2, &j2()).unwrap().value, 3);
        let s3 = sat_exact(3, &j2()).unwrap();
        let w: Matrix01 = s3.witness.parse().unwrap();
        assert!(verify_saturating(&w, &j2()).is_ok());
        assert!(s3.value > sat_exact(2, &j2()).unwrap().value);
    }

    #[test]
    fn oversized_pattern_forces_the_full_host() {
        let i3 = PermutationMatrix::identity(3).to_matrix();
        assert_eq!(sat_exact(2, &i3).unwrap().value, 4);
        assert_eq!(ex_exact(2, &i3).unwrap().value, 4);
    }

    #[test]
    fn budget_and_domain_errors() {
        assert!(matches!(
            sat_exact(6, &i2()),
            Err(Error::BudgetExceeded {
                op: "sat",
                limit: 25,
                given: 36
            })
        ));
        assert!(matches!(sat_exact(0, &i2()), Err(Error::Invalid(_))));
        let hollow = Matrix01::zeros(1, 1);
        assert!(matches!(
            sat_exact(2, &hollow),
            Err(Error::NoAvoidingMatrix)
        ));
        assert!(matches!(ex_exact(2, &hollow), Err(Error::NoAvoidingMatrix)));
        assert!(enumerate_maximal_avoiding(2, &hollow).unwrap().is_empty());
    }

    #[test]
    fn random_upper_bound_is_sound_and_deterministic() {
        let exact = sat_exact(3, &i2()).unwrap().value;
        let est = sat_upper_random(3, &i2(), 8, 7).unwrap();
        assert!(est.value >= exact);
        assert!(!est.exhaustive);
        let w: Matrix01 = est.witness.parse().unwrap();
        assert!(verify_saturating(&w, &i2()).is_ok());
        let again = sat_upper_random(3, &i2(), 8, 7).unwrap();
        assert_eq!(est.witness, again.witness);
        assert_eq!(est.value, again.value);
    }

    #[test]
    fn result_serializes_with_expected_keys() {
        let res = sat_exact(2, &i2()).unwrap();
        let json = serde_json::to_value(&res).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["value"], 3);
        assert_eq!(json["exhaustive"], true);
        assert_eq!(json["pattern"], "10\n01\n");
        assert!(json["witness"].is_string());
    }
}
