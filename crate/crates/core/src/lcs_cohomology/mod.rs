//! Normalized cohomology of the cyclic linear cycle sets with coefficients
//! in a finitely generated abelian group.

pub mod closed;
pub mod cocycles;
pub mod cohomology;
pub mod full;
pub mod reduced;
pub mod shuffle;

pub use closed::{closed_cohomology, H2Case};
pub use cocycles::{
    cocycle_family, cohomologous, family_criterion, family_parameters, kernel_basis_f, reduced_family_cocycle, theta,
    verify_cocycle, CocyclePair, FamilyParams,
};
pub use cohomology::{cohomology, full_cohomology, reduced_cohomology, CohomologyResult, Method};
pub use full::{full_double_complex, FullComplexSlice, FULL_CAP};
pub use reduced::{perturbation_delta, phi_hat, reduced_complex, PerturbationRows, PhiHat, ReducedComplexT};
pub use shuffle::{shuffle_quotient, ShuffleQuotient, SHUFFLE_CAP};
