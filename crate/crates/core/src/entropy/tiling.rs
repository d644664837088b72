use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::folner::Interval;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TilingError {
    #[error("epsilon {0} outside (0,1)")]
    Epsilon(f64),
    #[error("tile lengths must be strictly increasing, nonempty and shorter than the target")]
    TileOrder,
    #[error("infeasible: greedy cover {cover:.4} below {need:.4}")]
    Infeasible { cover: f64, need: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileClass {
    pub shape: Interval,
    pub centers: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingPlan {
    pub target: Interval,
    pub tiles: Vec<TileClass>,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TilingCheck {
    pub contained: bool,
    pub eps_disjoint: bool,
    pub unions_disjoint: bool,
    pub cover: f64,
    pub cover_ok: bool,
}

impl TilingCheck {
    pub fn valid(&self) -> bool {
        self.contained && self.eps_disjoint && self.unions_disjoint && self.cover_ok
    }
}

impl TilingPlan {
    /// Cells of the target, in order, outside every tile translate.
    pub fn uncovered(&self) -> Vec<i64> {
        let mut mark = vec![false; self.target.len()];
        for t in &self.tiles {
            for &c in &t.centers {
                let s = t.shape.shift(c);
                for x in s.lo.max(self.target.lo)..s.hi.min(self.target.hi) {
                    mark[(x - self.target.lo) as usize] = true;
                }
            }
        }
        (self.target.lo..self.target.hi).filter(|&x| !mark[(x - self.target.lo) as usize]).collect()
    }

    /// Checks every quasi-tiling condition from scratch. ε-disjointness uses
    /// the witness B = A minus cells already claimed by earlier translates.
    pub fn verify(&self) -> TilingCheck {
        let n = self.target.len();
        let mut contained = true;
        let mut eps_disjoint = true;
        let mut unions_disjoint = true;
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (i, t) in self.tiles.iter().enumerate() {
            let mut claimed = vec![false; n];
            for &c in &t.centers {
                let s = t.shape.shift(c);
                if !self.target.contains_interval(&s) {
                    contained = false;
                    continue;
                }
                let mut fresh = 0usize;
                for x in s.lo..s.hi {
                    let k = (x - self.target.lo) as usize;
                    match owner[k] {
                        Some(j) if j != i => unions_disjoint = false,
                        _ => {}
                    }
                    owner[k] = Some(i);
                    if !claimed[k] {
                        claimed[k] = true;
                        fresh += 1;
                    }
                }
                if (fresh as f64) < (1.0 - self.epsilon) * s.len() as f64 - 1e-12 {
                    eps_disjoint = false;
                }
            }
        }
        let covered = owner.iter().filter(|o| o.is_some()).count();
        let cover = if n == 0 { 1.0 } else { covered as f64 / n as f64 };
        TilingCheck { contained, eps_disjoint, unions_disjoint, cover, cover_ok: cover >= 1.0 - self.epsilon - 1e-12 }
    }

    pub fn cover(&self) -> f64 {
        let n = self.target.len();
        if n == 0 {
            1.0
        } else {
            (n - self.uncovered().len()) as f64 / n as f64
        }
    }
}

/// Left to right, placing the largest tile that still fits; stops when even
/// the smallest tile does not fit. Never fails.
pub fn greedy_plan(target: Interval, tiles: &[Interval], epsilon: f64) -> TilingPlan {
    let mut order: Vec<usize> = (0..tiles.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(tiles[i].len()));
    let mut classes: Vec<TileClass> = tiles.iter().map(|&shape| TileClass { shape, centers: Vec::new() }).collect();
    let mut pos = target.lo;
    'outer: while pos < target.hi {
        for &i in &order {
            let len = tiles[i].len() as i64;
            if len > 0 && pos + len <= target.hi {
                classes[i].centers.push(pos - tiles[i].lo);
                pos += len;
                continue 'outer;
            }
        }
        break;
    }
    TilingPlan { target, tiles: classes, epsilon }
}

/// Greedy ε-quasi-tiling of `target` by strictly increasing interval tiles.
pub fn quasi_tile(target: Interval, tiles: &[Interval], epsilon: f64) -> Result<TilingPlan, TilingError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(TilingError::Epsilon(epsilon));
    }
    let increasing = tiles.windows(2).all(|w| w[0].len() < w[1].len());
    if tiles.is_empty() || !increasing || tiles[0].is_empty() || tiles.last().unwrap().len() >= target.len() {
        return Err(TilingError::TileOrder);
    }
    let plan = greedy_plan(target, tiles, epsilon);
    let check = plan.verify();
    if !check.cover_ok {
        return Err(TilingError::Infeasible { cover: check.cover, need: 1.0 - epsilon });
    }
    assert!(check.valid(), "greedy plan broke a quasi-tiling condition: {check:?}");
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_partition() {
        let p = quasi_tile(Interval::new(0, 100), &[Interval::new(0, 10)], 0.01).unwrap();
        assert_eq!(p.tiles[0].centers, (0..10).map(|i| 10 * i).collect::<Vec<_>>());
        assert_eq!(p.verify().cover, 1.0);
    }

    #[test]
    fn ten_by_three() {
        let tiles = [Interval::new(0, 3)];
        let p = greedy_plan(Interval::new(0, 10), &tiles, 0.1);
        assert_eq!(p.tiles[0].centers, vec![0, 3, 6]);
        assert_eq!(p.uncovered(), vec![9]);
        assert!(quasi_tile(Interval::new(0, 10), &tiles, 0.1).is_ok());
        match quasi_tile(Interval::new(0, 10), &tiles, 0.05) {
            Err(TilingError::Infeasible { cover, .. }) => assert!((cover - 0.9).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixed_sizes_fill_gap() {
        let p = quasi_tile(Interval::new(0, 11), &[Interval::new(0, 2), Interval::new(0, 3)], 0.01).unwrap();
        assert_eq!(p.tiles[1].centers, vec![0, 3, 6]);
        assert_eq!(p.tiles[0].centers, vec![9]);
    }

    #[test]
    fn overlapping_translates_detected() {
        let p = TilingPlan {
            target: Interval::new(0, 10),
            tiles: vec![TileClass { shape: Interval::new(0, 4), centers: vec![0, 2] }],
            epsilon: 0.4,
        };
        let c = p.verify();
        assert!(!c.eps_disjoint);
        let p2 = TilingPlan { epsilon: 0.5, ..p };
        assert!(p2.verify().eps_disjoint);
    }

    #[test]
    fn symmetric_tiles_use_centers() {
        let p = quasi_tile(Interval::symmetric(10), &[Interval::symmetric(1)], 0.2).unwrap();
        assert_eq!(p.tiles[0].centers[0], -9);
        assert!(p.verify().valid());
    }
}
