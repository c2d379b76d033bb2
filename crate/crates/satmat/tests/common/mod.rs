//! Straightforward second implementation of the permutation classes, kept
//! deliberately naive: plain vectors, cell-by-cell block scans, orbit closure
//! by repeated reflection. The census acceptance check compares the library
//! against this module, so nothing here may call into the classify code.

/// One-based images: sigma[i-1] is the column of the one in row i.
pub type Sigma = Vec<usize>;

fn flip_rows(s: &Sigma) -> Sigma {
    s.iter().rev().copied().collect()
}

fn flip_cols(s: &Sigma) -> Sigma {
    let k = s.len();
    s.iter().map(|&c| k + 1 - c).collect()
}

fn transpose(s: &Sigma) -> Sigma {
    let mut inv = vec![0; s.len()];
    for (i, &c) in s.iter().enumerate() {
        inv[c - 1] = i + 1;
    }
    inv
}

/// Closure of `s` under the two reflections and the transpose, which
/// together generate all eight symmetries of the square.
pub fn symmetry_images(s: &Sigma) -> Vec<Sigma> {
    let mut seen = vec![s.clone()];
    loop {
        let mut grew = false;
        for i in 0..seen.len() {
            for img in [
                flip_rows(&seen[i]),
                flip_cols(&seen[i]),
                transpose(&seen[i]),
            ] {
                if !seen.contains(&img) {
                    seen.push(img);
                    grew = true;
                }
            }
        }
        if !grew {
            return seen;
        }
    }
}

fn ones_in_block(
    s: &Sigma,
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
) -> Vec<usize> {
    let mut found = Vec::new();
    for i in rows {
        if cols.contains(&s[i - 1]) {
            found.push(i);
        }
    }
    found
}

fn extras_allowed(extras: &[usize]) -> bool {
    match extras {
        [] | [_] => true,
        [first, second] => *second == *first + 1,
        _ => false,
    }
}

pub fn in_class1(s: &Sigma) -> bool {
    let k = s.len();
    for a in 1..k {
        for q in 1..k {
            let top_left = ones_in_block(s, 1..=a, 1..=q);
            let bottom_right = ones_in_block(s, a + 1..=k, q + 1..=k);
            let bottom_left = ones_in_block(s, a + 1..=k, 1..=q);
            let corner = ones_in_block(s, 1..=a, q + 1..=k);
            if !top_left.is_empty()
                && !bottom_right.is_empty()
                && bottom_left.is_empty()
                && extras_allowed(&corner)
            {
                return true;
            }
        }
    }
    false
}

fn class2_split(s: &Sigma, a: usize, b: usize, q: usize) -> bool {
    let k = s.len();
    let top_left = ones_in_block(s, 1..=a, 1..=q);
    let bottom_left = ones_in_block(s, b + 1..=k, 1..=q);
    let middle_left = ones_in_block(s, a + 1..=b, 1..=q);
    let middle_right = ones_in_block(s, a + 1..=b, q + 1..=k);
    top_left.is_empty()
        && bottom_left.is_empty()
        && middle_left.len() >= 2
        && extras_allowed(&middle_right)
}

pub fn in_class2(s: &Sigma) -> bool {
    let k = s.len();
    for a in 1..k {
        for b in a + 1..k {
            for q in 1..k {
                if class2_split(s, a, b, q) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn in_class3(s: &Sigma) -> bool {
    let k = s.len();
    // undo "move row r to the front": reinsert the first row at each position
    for pos in 2..=k {
        let mut x: Sigma = s[1..pos].to_vec();
        x.push(s[0]);
        x.extend_from_slice(&s[pos..]);
        for a in 1..k {
            for b in a + 1..k {
                for q in 1..k {
                    if !class2_split(&x, a, b, q) {
                        continue;
                    }
                    let rightmost = ones_in_block(&x, a + 1..=b, 1..=q)
                        .into_iter()
                        .max_by_key(|&i| x[i - 1]);
                    if rightmost == Some(pos) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn in_class4(s: &Sigma) -> bool {
    let k = s.len();
    for a in 1..k {
        for b in a + 1..k {
            for c1 in 1..k {
                for c2 in c1 + 1..k {
                    let north = ones_in_block(s, 1..=a, c1 + 1..=c2);
                    let west = ones_in_block(s, a + 1..=b, 1..=c1);
                    let east = ones_in_block(s, a + 1..=b, c2 + 1..=k);
                    let south = ones_in_block(s, b + 1..=k, c1 + 1..=c2);
                    if !north.is_empty()
                        && !west.is_empty()
                        && !east.is_empty()
                        && !south.is_empty()
                        && north.len() + west.len() + east.len() + south.len() == k
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[derive(Debug, PartialEq, Eq)]
pub struct NaiveCensus {
    pub total: u64,
    pub class: [u64; 4],
    pub non_ordinary: u64,
    pub ordinary: u64,
}

fn all_sigmas(k: usize) -> Vec<Sigma> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; k + 1];
    fn rec(k: usize, current: &mut Sigma, used: &mut Vec<bool>, out: &mut Vec<Sigma>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for c in 1..=k {
            if !used[c] {
                used[c] = true;
                current.push(c);
                rec(k, current, used, out);
                current.pop();
                used[c] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, &mut out);
    out
}

pub fn naive_census(k: usize) -> NaiveCensus {
    let checks: [fn(&Sigma) -> bool; 4] = [in_class1, in_class2, in_class3, in_class4];
    let mut report = NaiveCensus {
        total: 0,
        class: [0; 4],
        non_ordinary: 0,
        ordinary: 0,
    };
    for s in all_sigmas(k) {
        report.total += 1;
        let images = symmetry_images(&s);
        let mut any = false;
        for (slot, check) in report.class.iter_mut().zip(checks) {
            if images.iter().any(|img| check(img)) {
                *slot += 1;
                any = true;
            }
        }
        if any {
            report.non_ordinary += 1;
        } else {
            report.ordinary += 1;
        }
    }
    report
}
