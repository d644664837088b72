//! Lexicographic ranking of arrangements of a multiset.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// n! / ∏ counts[i]! for n = Σ counts.
pub fn multinomial(counts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut n = 0u64;
    for &c in counts {
        // multiply by C(n + c, c) incrementally; each partial quotient is exact
        for j in 1..=c {
            n += 1;
            acc *= n;
            acc /= j;
        }
    }
    acc
}

/// Rank of `seq` (symbols < counts.len()) among all arrangements of its
/// multiset, in lexicographic order. `counts` must be the symbol counts.
pub fn rank(seq: &[usize], counts: &[u64]) -> BigUint {
    let mut c = counts.to_vec();
    let mut total = multinomial(&c);
    let mut r = seq.len() as u64;
    let mut out = BigUint::zero();
    for &a in seq {
        let below: u64 = c[..a].iter().sum();
        if below > 0 {
            out += &total * below / r;
        }
        total = total * c[a] / r;
        c[a] -= 1;
        r -= 1;
    }
    out
}

/// Inverse of [`rank`]; None when `idx` is out of range.
pub fn unrank(idx: &BigUint, counts: &[u64]) -> Option<Vec<usize>> {
    let mut c = counts.to_vec();
    let mut total = multinomial(&c);
    if idx >= &total {
        return None;
    }
    let mut idx = idx.clone();
    let mut r: u64 = c.iter().sum();
    let mut out = Vec::with_capacity(r as usize);
    while r > 0 {
        let mut a = 0;
        loop {
            if c[a] > 0 {
                let block = &total * c[a] / r;
                if idx < block {
                    total = block;
                    break;
                }
                idx -= block;
            }
            a += 1;
        }
        out.push(a);
        c[a] -= 1;
        r -= 1;
    }
    Some(out)
}
