//! Cohomology of the cyclic linear cycle sets `(Z/v, i.j = (1 - u i) j)` and
//! their central extensions, computed exactly.

pub mod abelian;
pub mod cli;
pub mod cycleset;
pub mod cyclic_resolution;
pub mod error;
pub mod extensions;
pub mod homology_engine;
pub mod lcs_cohomology;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
