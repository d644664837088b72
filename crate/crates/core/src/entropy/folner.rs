use serde::{Deserialize, Serialize};

/// Half-open integer interval [lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}) is reversed");
        Interval { lo, hi }
    }

    /// [0, len).
    pub fn prefix(len: usize) -> Self {
        Interval { lo: 0, hi: len as i64 }
    }

    /// [−a, a].
    pub fn symmetric(a: u64) -> Self {
        Interval { lo: -(a as i64), hi: a as i64 + 1 }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x < self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        o.is_empty() || (self.lo <= o.lo && o.hi <= self.hi)
    }

    pub fn shift(&self, c: i64) -> Interval {
        Interval { lo: self.lo + c, hi: self.hi + c }
    }
}

/// Nested intervals Φ_n = [−a_n, a_n] around 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolnerSeq {
    pub radii: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FolnerReport {
    pub contains_zero: bool,
    pub nested: bool,
    /// Intervals are always connected in the Cayley graph of ℤ with S = {1}.
    pub connected: bool,
    /// |Φ_n| / log₂ n for n ≥ 2.
    pub growth: Vec<f64>,
    /// The growth ratio is nondecreasing over the second half of the prefix
    /// and ends above where it started.
    pub growth_increasing: bool,
    /// |Φ_n Δ (Φ_n + 1)| / |Φ_n|.
    pub boundary_ratio: Vec<f64>,
}

impl FolnerSeq {
    pub fn new(radii: Vec<u64>) -> Self {
        FolnerSeq { radii }
    }

    /// a_n = n.
    pub fn linear(count: usize) -> Self {
        FolnerSeq { radii: (0..count as u64).collect() }
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn set(&self, n: usize) -> Interval {
        Interval::symmetric(self.radii[n])
    }

    pub fn sets(&self) -> Vec<Interval> {
        self.radii.iter().map(|&a| Interval::symmetric(a)).collect()
    }

    pub fn check(&self) -> FolnerReport {
        let sets = self.sets();
        let growth: Vec<f64> = sets.iter().enumerate().skip(2).map(|(n, s)| s.len() as f64 / (n as f64).log2()).collect();
        FolnerReport {
            contains_zero: sets.first().is_some_and(|s| s.contains(0)),
            nested: sets.windows(2).all(|w| w[1].contains_interval(&w[0]) && w[1].len() > w[0].len()),
            connected: true,
            growth_increasing: {
                let tail = &growth[growth.len() / 2..];
                tail.windows(2).all(|w| w[1] >= w[0]) && growth.last() > growth.first()
            },
            growth,
            boundary_ratio: sets.iter().map(|s| 2.0 / s.len() as f64).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_sequence_is_folner() {
        let r = FolnerSeq::linear(40).check();
        assert!(r.contains_zero && r.nested && r.connected && r.growth_increasing);
        assert!(r.boundary_ratio.last().unwrap() < &0.03);
    }

    #[test]
    fn constant_radii_not_nested() {
        assert!(!FolnerSeq::new(vec![1, 1, 2]).check().nested);
    }

    #[test]
    fn interval_basics() {
        let i = Interval::symmetric(2);
        assert_eq!((i.lo, i.hi, i.len()), (-2, 3, 5));
        assert!(i.contains_interval(&Interval::new(0, 3)));
        assert!(!i.contains_interval(&Interval::new(0, 4)));
    }
}
