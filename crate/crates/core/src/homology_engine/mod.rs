//! Chain complexes, double complexes, special deformation retracts and the
//! perturbation lemma.

mod complex;
mod sdr;

pub use complex::{block_diagonal, total_complex, ChainComplex, DoubleComplex};
pub use sdr::{perturb_double_complex, perturb_sdr, Perturbation, PerturbedDoubleComplex, PerturbedSdr, Sdr};

/// Checks every identity of a retract; see [`Sdr::verify`].
pub fn verify_sdr(s: &Sdr) -> crate::verdict::Verdict {
    s.verify()
}
