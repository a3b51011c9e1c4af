//! Endograph metrics on fuzzy sets over concrete metric spaces.
//!
//! Fuzzy sets are stored through their level cuts ([`fuzzy::StepFuzzySet`]);
//! endographs and related subsets of `X × [0,1]` are slab stacks
//! ([`endograph::SlabSet`]). On top of exact Hausdorff and endograph
//! distances the crate provides tolerance checks for Kuratowski and Γ
//! convergence and ε-net audits of total boundedness, including a staged
//! diagonal subsequence extraction.

pub mod compactness;
pub mod convergence;
pub mod endograph;
pub mod error;
pub mod fuzzy;
pub mod harness;
mod line;
pub mod metric;
pub mod sets;

pub use error::{Error, Result};
pub use metric::{product_dist, GroundSpace, LiftedPoint, Point, PointCloud, ProductMetric};
pub use sets::{hausdorff, semi_hausdorff, ExtDist, GroundSet, Interval};
pub use fuzzy::{ClassReport, StepFuzzySet};
pub use endograph::{endograph_dist, endograph_semi, point_to_endograph, SlabSet, Slice};
pub use convergence::{gamma_limit_check, FuzzySeqWindow};
pub use compactness::{diagonal_extract, tb_audit, DiagonalSchedule, FuzzyFamily};
