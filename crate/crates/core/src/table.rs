//! Tables θ : X × ℕ → values, materialized lazily.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::Instance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableError {
    #[error("explicit table has no entry for variable {var} at index {n}")]
    Missing { var: usize, n: u64 },
    #[error("explicit table value {value} for variable {var} exceeds its domain")]
    OutOfDomain { var: usize, value: u32 },
    #[error("lifted table coloring has {got} entries for {expected} variables")]
    ColoringSize { expected: usize, got: usize },
}

/// Where table values come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TableSource {
    /// Counter-based ChaCha streams, one per key.
    Seeded { seed: u64 },
    /// `columns[x][n]` is the value of variable `x` after `n` resamples.
    Explicit { columns: Vec<Vec<u32>> },
    /// θ_c(x, n) = θ(c(x), n) for a base table keyed by colors.
    Lifted { base: Box<TableSource>, coloring: Vec<usize> },
}

/// A lazily materialized table.
///
/// Seeded values are read from a ChaCha stream positioned at the requested
/// index, so the value at `(key, n)` does not depend on query order.
#[derive(Debug, Clone)]
pub struct Table {
    source: TableSource,
    cache: Vec<Vec<u64>>,
}

impl Table {
    pub fn seeded(seed: u64) -> Self {
        Table { source: TableSource::Seeded { seed }, cache: Vec::new() }
    }

    pub fn explicit(columns: Vec<Vec<u32>>) -> Self {
        Table { source: TableSource::Explicit { columns }, cache: Vec::new() }
    }

    pub fn lifted(base: TableSource, coloring: Vec<usize>) -> Self {
        Self::from_source(TableSource::Lifted { base: Box::new(base), coloring })
    }

    pub fn from_source(source: TableSource) -> Self {
        Table { source: flatten(source), cache: Vec::new() }
    }

    pub fn source(&self) -> &TableSource {
        &self.source
    }

    /// Check that the table can serve every variable of `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<(), TableError> {
        match &self.source {
            TableSource::Explicit { columns } => {
                for (var, col) in columns.iter().enumerate().take(inst.num_vars()) {
                    if let Some(&value) = col.iter().find(|&&v| v >= inst.variables()[var].domain_size) {
                        return Err(TableError::OutOfDomain { var, value });
                    }
                }
                Ok(())
            }
            TableSource::Lifted { coloring, .. } if coloring.len() < inst.num_vars() => {
                Err(TableError::ColoringSize { expected: inst.num_vars(), got: coloring.len() })
            }
            _ => Ok(()),
        }
    }

    /// Raw 64-bit draw at (key, n) of a seeded source.
    fn raw(&mut self, seed: u64, key: usize, n: u64) -> u64 {
        if self.cache.len() <= key {
            self.cache.resize(key + 1, Vec::new());
        }
        let col = &mut self.cache[key];
        let n = n as usize;
        if col.len() <= n {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(key as u64);
            rng.set_word_pos(col.len() as u128 * 2);
            while col.len() <= n {
                col.push(rng.next_u64());
            }
        }
        col[n]
    }

    /// θ(x, n) as a value of variable `x` of `inst`.
    pub fn value(&mut self, inst: &Instance, x: usize, n: u64) -> Result<u32, TableError> {
        match &self.source {
            TableSource::Seeded { seed } => {
                let seed = *seed;
                let r = self.raw(seed, x, n);
                Ok(inst.inverse_cdf(x, r))
            }
            TableSource::Explicit { columns } => {
                columns.get(x).and_then(|c| c.get(n as usize)).copied().ok_or(TableError::Missing { var: x, n })
            }
            TableSource::Lifted { base, coloring } => match base.as_ref() {
                TableSource::Seeded { seed } => {
                    let (seed, key) = (*seed, coloring[x]);
                    let r = self.raw(seed, key, n);
                    Ok(inst.inverse_cdf(x, r))
                }
                TableSource::Explicit { columns } => {
                    let key = coloring[x];
                    columns.get(key).and_then(|c| c.get(n as usize)).copied().ok_or(TableError::Missing { var: x, n })
                }
                TableSource::Lifted { .. } => unreachable!("lifted sources are flattened on construction"),
            },
        }
    }

    /// Raw seeded draw at a key, exposed for the lifted-table identity check.
    pub fn raw_at(&mut self, key: usize, n: u64) -> Option<u64> {
        match &self.source {
            TableSource::Seeded { seed } => {
                let seed = *seed;
                Some(self.raw(seed, key, n))
            }
            TableSource::Lifted { base, coloring } => match base.as_ref() {
                TableSource::Seeded { seed } => {
                    let (seed, key) = (*seed, coloring[key]);
                    Some(self.raw(seed, key, n))
                }
                _ => None,
            },
            _ => None,
        }
    }
}

/// Compose nested lifts into a single coloring.
fn flatten(source: TableSource) -> TableSource {
    match source {
        TableSource::Lifted { base, coloring } => match flatten(*base) {
            TableSource::Lifted { base, coloring: inner } => {
                TableSource::Lifted { base, coloring: coloring.iter().map(|&c| inner[c]).collect() }
            }
            other => TableSource::Lifted { base: Box::new(other), coloring },
        },
        other => other,
    }
}
