//! Structural classes of permutation matrices and the census over them.
//!
//! A permutation matrix belongs to one of four classes when its rows and
//! columns split into contiguous blocks whose intersections carry ones in a
//! constrained arrangement (see the per-class checkers). A matrix *reduces*
//! to a class when any of its eight symmetry images belongs to it, and it is
//! *ordinary* when it reduces to none. Classes may overlap.

use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{factorial, PermutationMatrix};
use crate::rng::SplitMix64;
use crate::transform::{Transform, ALL_TRANSFORMS};

/// Largest k for which the census enumerates all k! permutations.
pub const CENSUS_EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassId {
    Class1,
    Class2,
    Class3,
    Class4,
}

pub const ALL_CLASSES: [ClassId; 4] = [
    ClassId::Class1,
    ClassId::Class2,
    ClassId::Class3,
    ClassId::Class4,
];

impl ClassId {
    pub fn index(self) -> u8 {
        match self {
            ClassId::Class1 => 1,
            ClassId::Class2 => 2,
            ClassId::Class3 => 3,
            ClassId::Class4 => 4,
        }
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

/// Proof that a permutation reduces to a class.
///
/// `row_splits` / `col_splits` hold the block boundaries of the witnessing
/// split: boundary b means one block ends after row (column) b. Two-block
/// splits carry one boundary, three-block splits two. `extra_ones_rows` lists
/// the rows of the up-to-two tolerated ones in the slack block. For Class 3
/// the splits describe the Class-2 matrix obtained by reinserting row 1 at
/// position `reinserted_from`, and all row numbers refer to that matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassWitness {
    pub class: ClassId,
    pub transform: Transform,
    pub row_splits: Vec<usize>,
    pub col_splits: Vec<usize>,
    pub extra_ones_rows: Vec<usize>,
    pub reinserted_from: Option<usize>,
}

impl ClassWitness {
    /// Re-checks the block conditions this witness claims. True exactly when
    /// the witness is honest for `p`.
    pub fn replays(&self, p: &PermutationMatrix) -> bool {
        let img = self.transform.apply_to_perm(p);
        let k = img.k();
        match self.class {
            ClassId::Class1 => {
                let (&[a], &[q]) = (&self.row_splits[..], &self.col_splits[..]) else {
                    return false;
                };
                if !(1..k).contains(&a) || !(1..k).contains(&q) {
                    return false;
                }
                let c = Counts::new(img.sigma());
                class1_conditions(&c, img.sigma(), a, q)
                    .map(|extra| extra == self.extra_ones_rows)
                    .unwrap_or(false)
            }
            ClassId::Class2 => {
                let (&[a, b], &[q]) = (&self.row_splits[..], &self.col_splits[..]) else {
                    return false;
                };
                if !(a >= 1 && a < b && b < k && (1..k).contains(&q)) {
                    return false;
                }
                let c = Counts::new(img.sigma());
                class2_conditions(&c, img.sigma(), a, b, q)
                    .map(|extra| extra == self.extra_ones_rows)
                    .unwrap_or(false)
            }
            ClassId::Class3 => {
                let Some(pos) = self.reinserted_from else {
                    return false;
                };
                let (&[a, b], &[q]) = (&self.row_splits[..], &self.col_splits[..]) else {
                    return false;
                };
                if !(2..=k).contains(&pos) || !(a >= 1 && a < b && b < k && (1..k).contains(&q)) {
                    return false;
                }
                let x = reinsert_front_row(img.sigma(), pos);
                let c = Counts::new(&x);
                match class2_conditions(&c, &x, a, b, q) {
                    Some(extra) if extra == self.extra_ones_rows => {
                        rightmost_row_in_block(&x, a, b, q) == Some(pos)
                    }
                    _ => false,
                }
            }
            ClassId::Class4 => {
                let (&[a, b], &[c1, c2]) = (&self.row_splits[..], &self.col_splits[..]) else {
                    return false;
                };
                if !(a >= 1 && a < b && b < k && c1 >= 1 && c1 < c2 && c2 < k) {
                    return false;
                }
                let c = Counts::new(img.sigma());
                class4_conditions(&c, a, b, c1, c2) && self.extra_ones_rows.is_empty()
            }
        }
    }
}

/// Prefix counts of ones for O(1) block queries on a permutation.
struct Counts {
    k: usize,
    // cum[i * (k+1) + j] = ones in rows 1..=i, cols 1..=j
    cum: Vec<u32>,
}

impl Counts {
    fn new(sigma: &[usize]) -> Self {
        let k = sigma.len();
        let w = k + 1;
        let mut cum = vec![0u32; w * w];
        for i in 1..=k {
            let c = sigma[i - 1];
            for j in 1..=k {
                cum[i * w + j] = cum[(i - 1) * w + j] + u32::from(c <= j);
            }
        }
        Counts { k, cum }
    }

    /// Ones in rows r1..=r2, cols c1..=c2 (1-based, empty ranges give 0).
    fn block(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> u32 {
        if r1 > r2 || c1 > c2 {
            return 0;
        }
        let w = self.k + 1;
        self.cum[r2 * w + c2] + self.cum[(r1 - 1) * w + (c1 - 1)]
            - self.cum[(r1 - 1) * w + c2]
            - self.cum[r2 * w + (c1 - 1)]
    }
}

fn rows_of_ones_in_block(
    sigma: &[usize],
    r1: usize,
    r2: usize,
    c1: usize,
    c2: usize,
) -> Vec<usize> {
    (r1..=r2.min(sigma.len()))
        .filter(|&i| (c1..=c2).contains(&sigma[i - 1]))
        .collect()
}

fn adjacent_if_two(rows: &[usize]) -> bool {
    rows.len() < 2 || (rows.len() == 2 && rows[1] == rows[0] + 1)
}

/// Row split after `a`, column split after `q`. Ones sit in the two diagonal
/// blocks, the lower-left block is empty, and the upper-right block holds at
/// most two ones, in adjacent rows if two. Returns those rows on success.
fn class1_conditions(c: &Counts, sigma: &[usize], a: usize, q: usize) -> Option<Vec<usize>> {
    let k = c.k;
    if c.block(a + 1, k, 1, q) != 0 {
        return None;
    }
    if c.block(1, a, 1, q) == 0 || c.block(a + 1, k, q + 1, k) == 0 {
        return None;
    }
    if c.block(1, a, q + 1, k) > 2 {
        return None;
    }
    let extra = rows_of_ones_in_block(sigma, 1, a, q + 1, k);
    adjacent_if_two(&extra).then_some(extra)
}

/// Row splits after `a` and `b`, column split after `q`. The middle row band
/// holds at least two ones on the left; the outer bands sit entirely on the
/// right; the middle-right block tolerates at most two ones, adjacent rows
/// if two. Returns those rows on success.
fn class2_conditions(
    c: &Counts,
    sigma: &[usize],
    a: usize,
    b: usize,
    q: usize,
) -> Option<Vec<usize>> {
    let k = c.k;
    if c.block(1, a, 1, q) != 0 || c.block(b + 1, k, 1, q) != 0 {
        return None;
    }
    if c.block(1, a, q + 1, k) == 0 || c.block(b + 1, k, q + 1, k) == 0 {
        return None;
    }
    if c.block(a + 1, b, 1, q) < 2 {
        return None;
    }
    if c.block(a + 1, b, q + 1, k) > 2 {
        return None;
    }
    let extra = rows_of_ones_in_block(sigma, a + 1, b, q + 1, k);
    adjacent_if_two(&extra).then_some(extra)
}

fn class4_conditions(c: &Counts, a: usize, b: usize, c1: usize, c2: usize) -> bool {
    let k = c.k;
    let n12 = c.block(1, a, c1 + 1, c2);
    let n21 = c.block(a + 1, b, 1, c1);
    let n23 = c.block(a + 1, b, c2 + 1, k);
    let n32 = c.block(b + 1, k, c1 + 1, c2);
    n12 >= 1 && n21 >= 1 && n23 >= 1 && n32 >= 1 && n12 + n21 + n23 + n32 == k as u32
}

/// The permutation obtained by putting row 1 back at row `pos`, undoing a
/// move-to-front.
fn reinsert_front_row(sigma: &[usize], pos: usize) -> Vec<usize> {
    let mut x = Vec::with_capacity(sigma.len());
    x.extend_from_slice(&sigma[1..pos]);
    x.push(sigma[0]);
    x.extend_from_slice(&sigma[pos..]);
    x
}

/// Row of the rightmost one among rows r in a+1..=b with column <= q.
fn rightmost_row_in_block(sigma: &[usize], a: usize, b: usize, q: usize) -> Option<usize> {
    (a + 1..=b.min(sigma.len()))
        .filter(|&i| sigma[i - 1] <= q)
        .max_by_key(|&i| sigma[i - 1])
}

pub fn class1_witness(p: &PermutationMatrix) -> Option<ClassWitness> {
    let k = p.k();
    if k < 2 {
        return None;
    }
    let c = Counts::new(p.sigma());
    for a in 1..k {
        for q in 1..k {
            if let Some(extra) = class1_conditions(&c, p.sigma(), a, q) {
                return Some(ClassWitness {
                    class: ClassId::Class1,
                    transform: Transform::Identity,
                    row_splits: vec![a],
                    col_splits: vec![q],
                    extra_ones_rows: extra,
                    reinserted_from: None,
                });
            }
        }
    }
    None
}

pub fn class2_witness(p: &PermutationMatrix) -> Option<ClassWitness> {
    class2_all_witnesses(p).into_iter().next()
}

fn class2_all_witnesses(p: &PermutationMatrix) -> Vec<ClassWitness> {
    let k = p.k();
    if k < 4 {
        return Vec::new();
    }
    let c = Counts::new(p.sigma());
    let mut out = Vec::new();
    for a in 1..=k - 2 {
        for b in a + 1..=k - 1 {
            for q in 1..k {
                if let Some(extra) = class2_conditions(&c, p.sigma(), a, b, q) {
                    out.push(ClassWitness {
                        class: ClassId::Class2,
                        transform: Transform::Identity,
                        row_splits: vec![a, b],
                        col_splits: vec![q],
                        extra_ones_rows: extra,
                        reinserted_from: None,
                    });
                }
            }
        }
    }
    out
}

pub fn class3_witness(p: &PermutationMatrix) -> Option<ClassWitness> {
    let k = p.k();
    if k < 4 {
        return None;
    }
    // any reinsertion position paired with any Class-2 split of the result
    // counts, as long as that split's rightmost lower-left one sits exactly
    // where row 1 was put back
    for pos in 2..=k {
        let x = reinsert_front_row(p.sigma(), pos);
        let c = Counts::new(&x);
        for a in 1..=k - 2 {
            for b in a + 1..=k - 1 {
                for q in 1..k {
                    let Some(extra) = class2_conditions(&c, &x, a, b, q) else {
                        continue;
                    };
                    if rightmost_row_in_block(&x, a, b, q) == Some(pos) {
                        return Some(ClassWitness {
                            class: ClassId::Class3,
                            transform: Transform::Identity,
                            row_splits: vec![a, b],
                            col_splits: vec![q],
                            extra_ones_rows: extra,
                            reinserted_from: Some(pos),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn class4_witness(p: &PermutationMatrix) -> Option<ClassWitness> {
    let k = p.k();
    if k < 4 {
        return None;
    }
    let c = Counts::new(p.sigma());
    for a in 1..=k - 2 {
        for b in a + 1..=k - 1 {
            for c1 in 1..=k - 2 {
                for c2 in c1 + 1..=k - 1 {
                    if class4_conditions(&c, a, b, c1, c2) {
                        return Some(ClassWitness {
                            class: ClassId::Class4,
                            transform: Transform::Identity,
                            row_splits: vec![a, b],
                            col_splits: vec![c1, c2],
                            extra_ones_rows: Vec::new(),
                            reinserted_from: None,
                        });
                    }
                }
            }
        }
    }
    None
}

fn witness_in_class(p: &PermutationMatrix, class: ClassId) -> Option<ClassWitness> {
    match class {
        ClassId::Class1 => class1_witness(p),
        ClassId::Class2 => class2_witness(p),
        ClassId::Class3 => class3_witness(p),
        ClassId::Class4 => class4_witness(p),
    }
}

/// Does any symmetry image of `p` belong to `class`? The returned witness
/// names the transform that got there.
pub fn reduces_to_class(p: &PermutationMatrix, class: ClassId) -> Option<ClassWitness> {
    for &t in &ALL_TRANSFORMS {
        if let Some(mut w) = witness_in_class(&t.apply_to_perm(p), class) {
            w.transform = t;
            return Some(w);
        }
    }
    None
}

/// Reduces to no class under any of the eight symmetries.
pub fn is_ordinary(p: &PermutationMatrix) -> bool {
    ALL_CLASSES
        .iter()
        .all(|&c| reduces_to_class(p, c).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Sampled,
}

/// Counts over permutations of one size: how many reduce to each class, how
/// many to any, how many to none. Per-class counts overlap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusReport {
    pub k: usize,
    pub total: u64,
    pub class1: u64,
    pub class2: u64,
    pub class3: u64,
    pub class4: u64,
    pub non_ordinary: u64,
    pub ordinary: u64,
    pub fraction: f64,
    pub mode: CensusMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    class: [u64; 4],
    non_ordinary: u64,
    seen: u64,
}

impl Tally {
    fn add(&mut self, p: &PermutationMatrix) {
        let flags = class_flags(p);
        for (slot, hit) in self.class.iter_mut().zip(flags) {
            *slot += u64::from(hit);
        }
        self.non_ordinary += u64::from(flags.iter().any(|&f| f));
        self.seen += 1;
    }

    fn merge(&mut self, other: Tally) {
        for (a, b) in self.class.iter_mut().zip(other.class) {
            *a += b;
        }
        self.non_ordinary += other.non_ordinary;
        self.seen += other.seen;
    }
}

/// Class membership flags of `p` after symmetry reduction, sharing the eight
/// images across the four class checks.
fn class_flags(p: &PermutationMatrix) -> [bool; 4] {
    let mut flags = [false; 4];
    for &t in &ALL_TRANSFORMS {
        let img = t.apply_to_perm(p);
        for (i, &class) in ALL_CLASSES.iter().enumerate() {
            if !flags[i] && witness_in_class(&img, class).is_some() {
                flags[i] = true;
            }
        }
        if flags.iter().all(|&f| f) {
            break;
        }
    }
    flags
}

/// Exhaustive census over all k! permutations. Refuses k above
/// [`CENSUS_EXHAUSTIVE_LIMIT`].
pub fn census(k: usize) -> Result<CensusReport> {
    census_with_threads(k, 1)
}

/// Census with the rank range split across `threads` workers. The merge is a
/// plain sum, so the report does not depend on the thread count.
pub fn census_with_threads(k: usize, threads: usize) -> Result<CensusReport> {
    if k == 0 {
        return Err(Error::Invalid("census needs k >= 1".into()));
    }
    if k > CENSUS_EXHAUSTIVE_LIMIT {
        return Err(Error::CensusTooLarge {
            limit: CENSUS_EXHAUSTIVE_LIMIT,
            given: k,
        });
    }
    let total = factorial(k);
    let threads = threads.max(1).min(total as usize);
    let mut tally = Tally::default();
    if threads == 1 {
        for p in PermutationMatrix::all(k) {
            tally.add(&p);
        }
    } else {
        let chunk = total.div_ceil(threads as u64);
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    scope.spawn(move || {
                        let mut part = Tally::default();
                        let lo = t * chunk;
                        let hi = ((t + 1) * chunk).min(total);
                        for rank in lo..hi {
                            part.add(&PermutationMatrix::nth(k, rank));
                        }
                        part
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .collect::<Vec<_>>()
        });
        for part in partials {
            tally.merge(part);
        }
    }
    debug_assert_eq!(tally.seen, total);
    let ordinary = total - tally.non_ordinary;
    Ok(CensusReport {
        k,
        total,
        class1: tally.class[0],
        class2: tally.class[1],
        class3: tally.class[2],
        class4: tally.class[3],
        non_ordinary: tally.non_ordinary,
        ordinary,
        fraction: ordinary as f64 / total as f64,
        mode: CensusMode::Exhaustive,
        samples: None,
        seed: None,
    })
}

/// A sampled census plus the half-width of the 95% normal-approximation
/// interval around the ordinary fraction.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleEstimate {
    #[serde(flatten)]
    pub report: CensusReport,
    pub half_width: f64,
}

/// Estimates the ordinary fraction at size k from `samples` uniform draws.
/// Any k is accepted; the draws come from a SplitMix64 stream on `seed`.
pub fn sample_fraction(k: usize, samples: u64, seed: u64) -> Result<SampleEstimate> {
    if k == 0 || samples == 0 {
        return Err(Error::Invalid(
            "sampling needs k >= 1 and samples >= 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut tally = Tally::default();
    for _ in 0..samples {
        tally.add(&rng.permutation(k));
    }
    let ordinary = samples - tally.non_ordinary;
    let fraction = ordinary as f64 / samples as f64;
    let half_width = 1.96 * (fraction * (1.0 - fraction) / samples as f64).sqrt();
    Ok(SampleEstimate {
        report: CensusReport {
            k,
            total: if k <= 20 { factorial(k) } else { u64::MAX },
            class1: tally.class[0],
            class2: tally.class[1],
            class3: tally.class[2],
            class4: tally.class[3],
            non_ordinary: tally.non_ordinary,
            ordinary,
            fraction,
            mode: CensusMode::Sampled,
            samples: Some(samples),
            seed: Some(seed),
        },
        half_width,
    })
}
