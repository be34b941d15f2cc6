//! A small free resolution of `Z` over `Z[C_v]` built from the crossed
//! product `C_u x_zeta C_t`, its comparison with the normalized bar
//! resolution, and the induced complexes with trivial coefficients.

pub mod bar;
pub mod cells;
pub mod coefficient;
pub mod comparison;
pub mod crossed;
pub mod dl;
pub mod resolution;

pub use bar::{bar_retract, Bar, BarElt};
pub use cells::{circulant, contracting_homotopies, structural_differentials, RingElt, Shape};
pub use coefficient::{cell_differentials, coefficient_complex, coefficient_complex_from, tensored_differentials, CoefficientComplex};
pub use comparison::{comparison_for_shape, comparison_maps, Comparison, COMPARISON_CAP};
pub use crossed::{crossed_product, CrossedProduct, CrossedProductElement};
pub use dl::{dl_closed, dl_maps, ring_mul, DlMap, DlSource, DlTable};
pub use resolution::{resolution, resolution_for_shape, Resolution, SigmaTable, RESOLUTION_CAP};
