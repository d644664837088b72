//! Toy decompressors and the counting bound on words with short programs.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decompressor {
    Identity,
    /// First bit is the starting symbol, then Elias-gamma run lengths of
    /// alternating symbols.
    RunLength,
}

impl Decompressor {
    pub const ALL: [Decompressor; 2] = [Decompressor::Identity, Decompressor::RunLength];

    /// Output for `program`, or None if the program is malformed or its
    /// output would exceed `cap` bits.
    pub fn run(&self, program: &[bool], cap: usize) -> Option<Vec<bool>> {
        match self {
            Decompressor::Identity => (program.len() <= cap).then(|| program.to_vec()),
            Decompressor::RunLength => {
                let (&first, mut rest) = program.split_first()?;
                let mut out = Vec::new();
                let mut sym = first;
                while !rest.is_empty() {
                    let zeros = rest.iter().take_while(|&&b| !b).count();
                    if rest.len() < 2 * zeros + 1 || zeros > 20 {
                        return None;
                    }
                    let run = rest[zeros..=2 * zeros].iter().fold(0usize, |v, &b| (v << 1) | b as usize);
                    rest = &rest[2 * zeros + 1..];
                    if out.len() + run > cap {
                        return None;
                    }
                    out.extend(std::iter::repeat_n(sym, run));
                    sym = !sym;
                }
                Some(out)
            }
        }
    }

    /// Shortest program for `word`.
    pub fn compress(&self, word: &[bool]) -> Vec<bool> {
        match self {
            Decompressor::Identity => word.to_vec(),
            Decompressor::RunLength => {
                let Some(&first) = word.first() else {
                    return vec![false];
                };
                let mut out = vec![first];
                let mut i = 0;
                while i < word.len() {
                    let j = i + word[i..].iter().take_while(|&&b| b == word[i]).count();
                    let run = j - i;
                    let k = usize::BITS as usize - 1 - run.leading_zeros() as usize;
                    out.extend(std::iter::repeat_n(false, k));
                    out.extend((0..=k).rev().map(|b| (run >> b) & 1 == 1));
                    i = j;
                }
                out
            }
        }
    }
}

/// Length in bits of the shortest run-length program for a binary word.
pub fn run_length_bits(word: &[bool]) -> u64 {
    let mut bits = 1u64;
    let mut i = 0;
    while i < word.len() {
        let run = word[i..].iter().take_while(|&&b| b == word[i]).count();
        bits += 2 * (usize::BITS - 1 - run.leading_zeros()) as u64 + 1;
        i += run;
    }
    bits
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountingError {
    #[error("n − c = {0} is negative")]
    Negative(i64),
    #[error("n = {0} exceeds 20")]
    TooLong(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub decompressor: Decompressor,
    pub n: usize,
    pub c: usize,
    pub programs: u64,
    /// Words of length n with a program of length at most n − c.
    pub count: u64,
    pub fraction: f64,
    /// 2^{−c+1}.
    pub bound: f64,
    pub holds: bool,
}

/// Exhaustive enumeration of all programs of length ≤ n − c.
pub fn counting_bound(dec: Decompressor, n: usize, c: usize) -> Result<CountingReport, CountingError> {
    if c > n {
        return Err(CountingError::Negative(n as i64 - c as i64));
    }
    if n > 20 {
        return Err(CountingError::TooLong(n));
    }
    let maxlen = n - c;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut programs = 0u64;
    for len in 0..=maxlen {
        for code in 0u64..(1u64 << len) {
            programs += 1;
            let p: Vec<bool> = (0..len).rev().map(|b| (code >> b) & 1 == 1).collect();
            if let Some(out) = dec.run(&p, n) {
                if out.len() == n {
                    seen.insert(out);
                }
            }
        }
    }
    let count = seen.len() as u64;
    let fraction = count as f64 / (1u64 << n) as f64;
    let bound = 2f64.powi(1 - c as i32);
    Ok(CountingReport { decompressor: dec, n, c, programs, count, fraction, bound, holds: fraction < bound })
}
