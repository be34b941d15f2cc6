//! `H^1` and `H^2` of the cyclic family from the closed formulas, valid for
//! every finitely generated `Gamma` (free summands included).

use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};

/// Which of the three closed descriptions of `H^2` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum H2Case {
    /// `u = v`.
    TEqualsOne,
    /// `2 < u < v <= u^2`.
    Generic,
    /// `u = 2`, `v = 4`.
    FourByTwo,
}

impl H2Case {
    pub fn of(params: &CyclicFamilyParams) -> H2Case {
        let (u, v) = (params.u(), params.v());
        if u == v {
            H2Case::TEqualsOne
        } else if u > 2 {
            debug_assert!(v <= u * u);
            H2Case::Generic
        } else {
            // u = 2 and eta <= 2 nu leave only v = 4.
            debug_assert_eq!(v, 4);
            H2Case::FourByTwo
        }
    }
}

/// `H^n_N` for `n in {1, 2}`.
pub fn closed_cohomology(params: &CyclicFamilyParams, gamma: &FinAbGroup, n: usize) -> Result<FinAbGroup> {
    let (u, v) = (params.u(), params.v());
    match n {
        1 => Ok(gamma.torsion(u)),
        2 => Ok(match H2Case::of(params) {
            H2Case::TEqualsOne => gamma.torsion(v).direct_sum(&gamma.quotient(v)),
            H2Case::Generic => gamma.quotient(u).direct_sum(&gamma.torsion(u)),
            H2Case::FourByTwo => gamma.quotient(2).direct_sum(&gamma.torsion(2)).direct_sum(&gamma.torsion(2)),
        }),
        _ => Err(Error::OutOfScope(format!("cohomology is computed in degrees 1 and 2, asked for {n}"))),
    }
}
