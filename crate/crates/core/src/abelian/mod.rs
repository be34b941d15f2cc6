//! Exact integer linear algebra and finitely generated abelian groups.

pub mod fin_ab;
pub mod hom;
pub mod local;
pub mod matrix;
pub mod scalar;
pub mod snf;

pub use fin_ab::{is_prime, prime_power_parts, FinAbGroup, GroupElement};
pub use hom::{hom_cohomology_at, Cochain, HomCohomology, PresentedModule};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use snf::{cokernel_invariants, elementary_divisors, integral_homology, smith_normal_form, SmithDecomposition};

/// The working matrix type. Entries of every differential in this crate are
/// bounded by a few thousand in absolute value and products stay far below
/// the 128-bit range; all arithmetic is checked regardless.
pub type IntMatrix = Matrix<i128>;

/// Arbitrary precision matrices, used to cross-check the fixed-width path.
pub type BigMatrix = Matrix<num_bigint::BigInt>;
