//! `H^n_N(A, Gamma)` for `n in {1, 2}` by the full complex, the reduced
//! complex, or the closed formulas.

use serde::{Deserialize, Serialize};

use super::closed::closed_cohomology;
use super::full::full_double_complex;
use super::reduced::{reduced_complex, ReducedComplexT};
use crate::abelian::{Cochain, FinAbGroup, GroupElement};
use crate::cycleset::{make_cyclic_lcs, CyclicFamilyParams, LinearCycleSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Full,
    Reduced,
    Closed,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Full, Method::Reduced, Method::Closed];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Full => "full",
            Method::Reduced => "reduced",
            Method::Closed => "closed",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Method::Full),
            "reduced" => Ok(Method::Reduced),
            "closed" => Ok(Method::Closed),
            _ => Err(Error::Domain(format!("unknown method '{s}'"))),
        }
    }
}

/// The cohomology group, and for the full and reduced routes one
/// representative cocycle per cyclic summand.
///
/// Representatives are cochains on the degree `n` part of the full total
/// complex: for `n = 1` one value per `g^i`, for `n = 2` the values on
/// `Mbar(2)` followed by the values on `Dbar (x) Mbar(1)`. The reduced route
/// pulls its cocycles back along the comparison map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub group: FinAbGroup,
    pub representatives: Vec<(u64, Cochain)>,
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > 2 {
        return Err(Error::OutOfScope(format!("cohomology is computed in degrees 1 and 2, asked for {n}")));
    }
    Ok(())
}

fn require_finite(gamma: &FinAbGroup) -> Result<()> {
    if !gamma.is_finite() {
        return Err(Error::Unsupported("the full and reduced routes need a finite coefficient group".into()));
    }
    Ok(())
}

/// The full route for an arbitrary finite linear cycle set.
pub fn full_cohomology(lcs: &LinearCycleSet, gamma: &FinAbGroup, n: usize) -> Result<CohomologyResult> {
    check_degree(n)?;
    require_finite(gamma)?;
    let slice = full_double_complex(lcs, n + 1)?;
    let h = slice.total()?.hom_cohomology(n, gamma)?;
    Ok(CohomologyResult { group: h.group, representatives: h.representatives })
}

/// The reduced route: cohomology of the small complex, with representatives
/// transported to the full complex.
pub fn reduced_cohomology(params: &CyclicFamilyParams, gamma: &FinAbGroup, n: usize) -> Result<CohomologyResult> {
    check_degree(n)?;
    require_finite(gamma)?;
    reduced_complex(params)?.cohomology(gamma, n)
}

impl ReducedComplexT {
    /// [`reduced_cohomology`] on an already built reduced complex, for
    /// sweeps over many coefficient groups.
    pub fn cohomology(&self, gamma: &FinAbGroup, n: usize) -> Result<CohomologyResult> {
        check_degree(n)?;
        require_finite(gamma)?;
        let h = self.total(n + 1)?.hom_cohomology(n, gamma)?;
        let phi = self.comparison_total(n);
        let representatives = h
            .representatives
            .into_iter()
            .map(|(o, z)| (o, pull_back(gamma, &z, &phi)))
            .collect();
        Ok(CohomologyResult { group: h.group, representatives })
    }
}

/// `z o phi` for a cochain `z` on the target of the integer matrix `phi`.
pub fn pull_back(gamma: &FinAbGroup, z: &[GroupElement], phi: &crate::abelian::IntMatrix) -> Cochain {
    assert_eq!(z.len(), phi.rows());
    (0..phi.cols())
        .map(|col| {
            let mut acc = gamma.zero();
            for (row, zr) in z.iter().enumerate() {
                let c = *phi.get(row, col);
                if c != 0 {
                    acc = gamma.add(&acc, &gamma.mul(c as i64, zr));
                }
            }
            acc
        })
        .collect()
}

/// `H^n_N(A, Gamma)` of the cyclic linear cycle set with parameters `params`.
pub fn cohomology(params: &CyclicFamilyParams, gamma: &FinAbGroup, n: usize, method: Method) -> Result<CohomologyResult> {
    check_degree(n)?;
    match method {
        Method::Full => full_cohomology(&make_cyclic_lcs(params), gamma, n),
        Method::Reduced => reduced_cohomology(params, gamma, n),
        Method::Closed => Ok(CohomologyResult { group: closed_cohomology(params, gamma, n)?, representatives: vec![] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(f)
    }

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    #[test]
    fn documented_values() {
        for m in Method::ALL {
            assert_eq!(cohomology(&params(2, 1, 1), &g(&[4]), 2, m).unwrap().group, g(&[2, 2]), "{m:?}");
            assert_eq!(cohomology(&params(3, 1, 2), &g(&[3]), 2, m).unwrap().group, g(&[3, 3]), "{m:?}");
            assert_eq!(cohomology(&params(2, 1, 2), &g(&[2]), 2, m).unwrap().group, g(&[2, 2, 2]), "{m:?}");
        }
    }

    #[test]
    fn first_cohomology_is_u_torsion() {
        for pr in CyclicFamilyParams::all_up_to(9) {
            for m in [2u64, 3, 4, 6, 9] {
                let want = g(&[num_integer::gcd(m, pr.u())]);
                for method in Method::ALL {
                    assert_eq!(cohomology(&pr, &g(&[m]), 1, method).unwrap().group, want, "{pr} m={m} {method:?}");
                }
            }
        }
    }

    #[test]
    fn routes_agree_in_degree_two_small() {
        for pr in CyclicFamilyParams::all_up_to(5) {
            for gamma in [g(&[2]), g(&[3]), g(&[4]), g(&[2, 2])] {
                let want = cohomology(&pr, &gamma, 2, Method::Closed).unwrap().group;
                for method in [Method::Full, Method::Reduced] {
                    assert_eq!(cohomology(&pr, &gamma, 2, method).unwrap().group, want, "{pr} {gamma} {method:?}");
                }
            }
        }
    }

    #[test]
    fn representatives_are_cocycles() {
        for pr in CyclicFamilyParams::all_up_to(4) {
            let gamma = g(&[2, 4]);
            for method in [Method::Full, Method::Reduced] {
                let res = cohomology(&pr, &gamma, 2, method).unwrap();
                assert_eq!(res.representatives.is_empty(), res.group.is_trivial(), "{pr} {method:?}");
                for (_, z) in &res.representatives {
                    let pair = super::super::cocycles::CocyclePair::from_cochain(pr.v() as usize, z);
                    let ver = super::super::cocycles::verify_cocycle(&pair, &pr, &gamma).unwrap();
                    assert!(ver.is_pass(), "{pr} {method:?}: {ver}");
                }
            }
        }
    }

    #[test]
    fn errors() {
        let pr = params(2, 1, 1);
        assert!(matches!(cohomology(&pr, &g(&[2]), 3, Method::Full), Err(Error::OutOfScope(_))));
        let z = FinAbGroup::new(vec![0]).unwrap();
        assert!(matches!(cohomology(&pr, &z, 2, Method::Full), Err(Error::Unsupported(_))));
        assert!(matches!(cohomology(&pr, &z, 2, Method::Reduced), Err(Error::Unsupported(_))));
        assert!(cohomology(&pr, &z, 2, Method::Closed).is_ok());
    }

    #[test]
    fn full_route_accepts_the_trivial_cycle_set() {
        // H^1 of the trivial cycle set on Z/2 with Z/2 coefficients.
        let h = full_cohomology(&LinearCycleSet::trivial(2), &g(&[2]), 1).unwrap();
        assert_eq!(h.group, g(&[2]));
    }
}
