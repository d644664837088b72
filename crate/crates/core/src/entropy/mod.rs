//! Følner intervals over ℤ, quasi-tilings, the block code, entropy
//! estimates, a counting bound for toy decompressors and complexity instances.

mod bits;
pub mod code;
pub mod complexity;
pub mod estimate;
pub mod folner;
pub mod kolmogorov;
pub mod multiset;
pub mod params;
pub mod tiling;

pub use bits::{BitReader, BitWriter};
pub use code::{decode, encode, CodeBlob, CodeError, Layout, PlanRule};
pub use estimate::{empirical_entropy, EntropyEstimate};
pub use folner::{FolnerSeq, Interval};
pub use kolmogorov::{counting_bound, CountingReport, Decompressor};
pub use params::{entropy_instance_params, EntropyParams};
pub use tiling::{greedy_plan, quasi_tile, TilingError, TilingPlan};
