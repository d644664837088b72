//! Block code for words on [0, m): length header, raw uncovered cells, a
//! frequency table per tile size, and a multiset-arrangement index per tile
//! size.
//!
//! Bit layout, all integers big-endian:
//! c0  ⌈log₂ m⌉ ones then a zero
//! c1  m − 1 in ⌈log₂ m⌉ bits
//! c2  symbols of the uncovered cells in position order, s bits each
//! c3  for each tile size i and each block word u in numeric order, the count
//!     η_{i,u} in ⌈log₂(|C_i| + 1)⌉ bits
//! c4  for each tile size i, the rank of the sequence of its block words
//!     (tiles by increasing center) in ⌈log₂ multinomial(η_i)⌉ bits

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bits::{ceil_log2, ceil_log2_big, BitReader, BitWriter};
use super::folner::Interval;
use super::multiset::{multinomial, rank, unrank};
use super::tiling::{greedy_plan, TilingPlan};

pub const DEFAULT_FREQUENCY_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error("empty word")]
    Empty,
    #[error("symbol width s = {0} outside 1..=16")]
    SymbolWidth(u32),
    #[error("symbol {value} at position {pos} needs more than {s} bits")]
    Symbol { pos: usize, value: u32, s: u32 },
    #[error("frequency table needs {need} entries, budget is {budget}; choose a smaller s or shorter tiles")]
    Budget { need: u64, budget: u64 },
    #[error("malformed code: {0}")]
    Malformed(String),
}

/// Deterministic map m ↦ tiling of [0, m) shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanRule {
    pub tile_lengths: Vec<usize>,
    pub epsilon: f64,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_budget() -> u64 {
    DEFAULT_FREQUENCY_BUDGET
}

impl PlanRule {
    pub fn new(tile_lengths: Vec<usize>, epsilon: f64) -> Self {
        let mut tile_lengths = tile_lengths;
        tile_lengths.sort_unstable();
        tile_lengths.dedup();
        PlanRule { tile_lengths, epsilon, budget: DEFAULT_FREQUENCY_BUDGET }
    }

    pub fn plan(&self, m: usize) -> TilingPlan {
        let tiles: Vec<Interval> = self.tile_lengths.iter().map(|&l| Interval::prefix(l)).collect();
        greedy_plan(Interval::prefix(m), &tiles, self.epsilon)
    }

    fn table_sizes(&self, s: u32) -> Result<Vec<u64>, CodeError> {
        let mut need = 0u64;
        let mut sizes = Vec::new();
        for &l in &self.tile_lengths {
            let bits = s as u64 * l as u64;
            if bits >= 63 {
                return Err(CodeError::Budget { need: u64::MAX, budget: self.budget });
            }
            sizes.push(1u64 << bits);
            need = need.saturating_add(1u64 << bits);
        }
        if need > self.budget {
            return Err(CodeError::Budget { need, budget: self.budget });
        }
        Ok(sizes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Layout {
    pub c0: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub c4: usize,
}

impl Layout {
    pub fn total(&self) -> usize {
        self.c0 + self.c1 + self.c2 + self.c3 + self.c4
    }
}

/// Terms of the length bound, each in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeBound {
    /// ε·s·m, which dominates c2.
    pub uncovered: f64,
    /// Σ_i |C_i|·H(η_i/|C_i|), which dominates log₂ of each multinomial.
    pub enumerative: f64,
    /// 2⌈log₂ m⌉ + 1.
    pub header: usize,
    /// Frequency table plus one rounding bit per tile size.
    pub overhead: usize,
    pub total: f64,
    /// (total − enumerative)/m: bits per symbol above the empirical block entropy.
    pub slack_per_symbol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeBlob {
    pub m: usize,
    pub s: u32,
    #[serde(with = "hex_bits")]
    pub bits: Vec<bool>,
    pub layout: Layout,
    pub bound: CodeBound,
}

impl CodeBlob {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

mod hex_bits {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Packed {
        len: usize,
        hex: String,
    }

    pub fn serialize<S: Serializer>(bits: &[bool], ser: S) -> Result<S::Ok, S::Error> {
        let mut hex = String::with_capacity(bits.len().div_ceil(4));
        for chunk in bits.chunks(4) {
            let mut v = 0u32;
            for (i, &b) in chunk.iter().enumerate() {
                v |= (b as u32) << (3 - i);
            }
            hex.push(char::from_digit(v, 16).unwrap());
        }
        Packed { len: bits.len(), hex }.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<bool>, D::Error> {
        let p = Packed::deserialize(de)?;
        let mut bits = Vec::with_capacity(p.len);
        for ch in p.hex.chars() {
            let v = ch.to_digit(16).ok_or_else(|| serde::de::Error::custom(format!("bad hex digit {ch:?}")))?;
            for i in (0..4).rev() {
                bits.push((v >> i) & 1 == 1);
            }
        }
        if bits.len() < p.len || bits.len() >= p.len + 4 {
            return Err(serde::de::Error::custom("hex length does not match bit length"));
        }
        bits.truncate(p.len);
        Ok(bits)
    }
}

fn block_word(w: &[u32], s: u32, lo: i64, len: usize) -> usize {
    let mut u = 0usize;
    for j in 0..len {
        u = (u << s) | w[lo as usize + j] as usize;
    }
    u
}

/// η_{i,u}: how many tiles of size i carry block word u.
pub fn block_frequencies(w: &[u32], s: u32, plan: &TilingPlan) -> Vec<Vec<u64>> {
    plan.tiles
        .iter()
        .map(|t| {
            let mut f = vec![0u64; 1usize << (s as usize * t.shape.len())];
            for &c in &t.centers {
                f[block_word(w, s, t.shape.lo + c, t.shape.len())] += 1;
            }
            f
        })
        .collect()
}

fn entropy_term(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts.iter().filter(|&&c| c > 0).map(|&c| -(c as f64) * (c as f64 / n).log2()).sum()
}

pub fn encode(w: &[u32], s: u32, rule: &PlanRule) -> Result<CodeBlob, CodeError> {
    let m = w.len();
    if m == 0 {
        return Err(CodeError::Empty);
    }
    if !(1..=16).contains(&s) {
        return Err(CodeError::SymbolWidth(s));
    }
    if let Some(pos) = w.iter().position(|&v| v >> s != 0) {
        return Err(CodeError::Symbol { pos, value: w[pos], s });
    }
    rule.table_sizes(s)?;
    let plan = rule.plan(m);
    let mut out = BitWriter::new();
    let mut layout = Layout::default();

    let lm = ceil_log2(m as u64);
    for _ in 0..lm {
        out.push(true);
    }
    out.push(false);
    layout.c0 = out.len();
    out.push_uint(m as u64 - 1, lm);
    layout.c1 = lm;

    let mark = out.len();
    for x in plan.uncovered() {
        out.push_uint(w[x as usize] as u64, s as usize);
    }
    layout.c2 = out.len() - mark;

    let freqs = block_frequencies(w, s, &plan);
    let mark = out.len();
    for (t, f) in plan.tiles.iter().zip(&freqs) {
        let width = ceil_log2(t.centers.len() as u64 + 1);
        for &eta in f {
            out.push_uint(eta, width);
        }
    }
    layout.c3 = out.len() - mark;

    let mark = out.len();
    let mut enumerative = 0.0;
    for (t, f) in plan.tiles.iter().zip(&freqs) {
        let seq: Vec<usize> = t.centers.iter().map(|&c| block_word(w, s, t.shape.lo + c, t.shape.len())).collect();
        let width = ceil_log2_big(&multinomial(f));
        out.push_big(&rank(&seq, f), width);
        enumerative += entropy_term(f);
    }
    layout.c4 = out.len() - mark;

    let header = 2 * lm + 1;
    let overhead = layout.c3 + plan.tiles.len();
    let uncovered = rule.epsilon * s as f64 * m as f64;
    let total = uncovered + enumerative + (header + overhead) as f64;
    let slack_per_symbol = (total - enumerative) / m as f64;
    let bound = CodeBound { uncovered, enumerative, header, overhead, total, slack_per_symbol };
    let bits = out.into_bits();
    debug_assert_eq!(bits.len(), layout.total());
    Ok(CodeBlob { m, s, bits, layout, bound })
}

/// Recover (m, w) from the bits alone.
pub fn decode(bits: &[bool], s: u32, rule: &PlanRule) -> Result<(usize, Vec<u32>), CodeError> {
    let bad = |what: &str| CodeError::Malformed(what.to_string());
    if !(1..=16).contains(&s) {
        return Err(CodeError::SymbolWidth(s));
    }
    rule.table_sizes(s)?;
    let mut r = BitReader::new(bits);
    let mut lm = 0usize;
    loop {
        match r.bit() {
            Some(true) => lm += 1,
            Some(false) => break,
            None => return Err(bad("unterminated length header")),
        }
        if lm > 48 {
            return Err(bad("length header too long"));
        }
    }
    let m = r.uint(lm).ok_or_else(|| bad("truncated length"))? as usize + 1;
    if ceil_log2(m as u64) != lm {
        return Err(bad("length field inconsistent with header"));
    }
    let plan = rule.plan(m);
    let mut w = vec![0u32; m];
    for x in plan.uncovered() {
        w[x as usize] = r.uint(s as usize).ok_or_else(|| bad("truncated uncovered cells"))? as u32;
    }
    let mut freqs = Vec::with_capacity(plan.tiles.len());
    for t in &plan.tiles {
        let width = ceil_log2(t.centers.len() as u64 + 1);
        let size = 1usize << (s as usize * t.shape.len());
        let f = (0..size).map(|_| r.uint(width).ok_or_else(|| bad("truncated frequency table"))).collect::<Result<Vec<u64>, _>>()?;
        if f.iter().sum::<u64>() != t.centers.len() as u64 {
            return Err(bad("frequencies do not sum to the tile count"));
        }
        freqs.push(f);
    }
    for (t, f) in plan.tiles.iter().zip(&freqs) {
        let width = ceil_log2_big(&multinomial(f));
        let idx: BigUint = r.big(width).ok_or_else(|| bad("truncated arrangement index"))?;
        let seq = unrank(&idx, f).ok_or_else(|| bad("arrangement index out of range"))?;
        let len = t.shape.len();
        for (&c, &u) in t.centers.iter().zip(&seq) {
            let lo = (t.shape.lo + c) as usize;
            for j in 0..len {
                w[lo + j] = ((u >> (s as usize * (len - 1 - j))) & ((1usize << s) - 1)) as u32;
            }
        }
    }
    if r.remaining() != 0 {
        return Err(bad("trailing bits"));
    }
    Ok((m, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_word_has_empty_index() {
        let rule = PlanRule::new(vec![4], 0.1);
        let w = vec![0u32; 64];
        let b = encode(&w, 1, &rule).unwrap();
        assert_eq!(b.layout.c4, 0);
        assert_eq!(b.layout.c0 + b.layout.c1, 2 * 6 + 1);
        assert_eq!(b.layout.c2, 0);
        // 16 counts of ⌈log₂ 17⌉ = 5 bits
        assert_eq!(b.layout.c3, 80);
        assert_eq!(decode(&b.bits, 1, &rule).unwrap(), (64, w));
    }

    #[test]
    fn header_for_powers_of_two() {
        let rule = PlanRule::new(vec![2], 0.5);
        for m in [1usize, 2, 3, 4, 5, 8, 9] {
            let w: Vec<u32> = (0..m as u32).map(|i| i % 2).collect();
            let b = encode(&w, 1, &rule).unwrap();
            assert_eq!(b.layout.c0 + b.layout.c1, 2 * ceil_log2(m as u64) + 1);
            assert_eq!(decode(&b.bits, 1, &rule).unwrap().1, w);
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rule = PlanRule::new(vec![2, 3], 0.1);
        for _ in 0..50 {
            let m = rng.gen_range(1..80);
            let w: Vec<u32> = (0..m).map(|_| rng.gen_range(0..4)).collect();
            let b = encode(&w, 2, &rule).unwrap();
            assert_eq!(b.bits.len(), b.layout.total());
            assert_eq!(decode(&b.bits, 2, &rule).unwrap(), (m, w));
        }
    }

    #[test]
    fn budget_enforced() {
        let rule = PlanRule::new(vec![20], 0.1);
        assert!(matches!(encode(&[0; 64], 1, &rule), Err(CodeError::Budget { .. })));
    }

    #[test]
    fn symbols_checked() {
        let rule = PlanRule::new(vec![2], 0.1);
        assert!(matches!(encode(&[0, 2], 1, &rule), Err(CodeError::Symbol { pos: 1, .. })));
    }

    #[test]
    fn truncated_input_rejected() {
        let rule = PlanRule::new(vec![4], 0.1);
        let w: Vec<u32> = (0..32).map(|i| (i * 7 % 3 == 0) as u32).collect();
        let b = encode(&w, 1, &rule).unwrap();
        assert!(decode(&b.bits[..b.bits.len() - 1], 1, &rule).is_err());
    }

    #[test]
    fn blob_serde_round_trip() {
        let rule = PlanRule::new(vec![3], 0.2);
        let b = encode(&[1, 0, 1, 1, 0, 0, 1], 1, &rule).unwrap();
        let back: CodeBlob = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
    }
}
