use num_bigint::BigUint;
use num_traits::Zero;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// `width` low bits of `v`, most significant first.
    pub fn push_uint(&mut self, v: u64, width: usize) {
        for i in (0..width).rev() {
            self.bits.push(i < 64 && (v >> i) & 1 == 1);
        }
    }

    pub fn push_big(&mut self, v: &BigUint, width: usize) {
        for i in (0..width as u64).rev() {
            self.bits.push(v.bit(i));
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }
}

pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a [bool]) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn uint(&mut self, width: usize) -> Option<u64> {
        if width > 64 || self.remaining() < width {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit()? as u64;
        }
        Some(v)
    }

    pub fn big(&mut self, width: usize) -> Option<BigUint> {
        if self.remaining() < width {
            return None;
        }
        let mut v = BigUint::zero();
        for _ in 0..width {
            v <<= 1u32;
            if self.bit()? {
                v += 1u32;
            }
        }
        Some(v)
    }
}

/// ⌈log₂ n⌉ for n ≥ 1.
pub fn ceil_log2(n: u64) -> usize {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as usize
    }
}

/// ⌈log₂ v⌉ for a big integer v ≥ 1.
pub fn ceil_log2_big(v: &BigUint) -> usize {
    if v <= &BigUint::from(1u32) {
        0
    } else {
        (v - 1u32).bits() as usize
    }
}
