//! The complex `Xbar_*(M) = X_* (x)_E M` for an abelian group `M` with
//! trivial `C_v`-action, and the maps it inherits from the comparison data.
//!
//! `Xbar_n(M)` is `n + 1` copies `M_{a,n-a}` of `M`, laid out cell-major:
//! coordinate `a * m + k` is generator `k` of `M` in the cell `a`. The bar
//! side `Dbar^{(x) n} (x) M` uses `g * m + k`.

use super::cells::Shape;
use super::comparison::{comparison_for_shape, Comparison};
use super::resolution::Resolution;
use crate::abelian::{IntMatrix, PresentedModule};
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::homology_engine::{ChainComplex, Sdr};
use crate::verdict::Verdict;

/// The integer matrices of `dbar_n: Xbar_n(Z) -> Xbar_{n-1}(Z)` given
/// directly by the cell formulas: `dbar^0` is `0` on odd and `u` on even
/// columns, `dbar^1` is `0` on odd and `(-1)^{a+1} t` on even rows,
/// `dbar^2` is `-1` on even and `0` on odd columns.
pub fn cell_differentials(shape: &Shape, n_max: usize) -> Vec<IntMatrix> {
    let (u, t) = (shape.u as i128, shape.t as i128);
    (1..=n_max)
        .map(|n| {
            let mut m = IntMatrix::zeros(n, n + 1);
            for a in 0..=n {
                let b = n - a;
                if a > 0 && a % 2 == 0 {
                    m.set(a - 1, a, u);
                }
                if b >= 1 && b % 2 == 0 {
                    m.set(a, a, if a % 2 == 0 { -t } else { t });
                }
                if b >= 2 && a % 2 == 0 {
                    m.set(a + 1, a, -1);
                }
            }
            m
        })
        .collect()
}

/// `dbar_n` obtained by applying `- (x)_E Z` to the resolution: each block
/// of `d_n` is right multiplication by some `z`, which becomes `eps(z)`.
pub fn tensored_differentials(res: &Resolution) -> Vec<IntMatrix> {
    let v = res.shape.v;
    (1..=res.n_max())
        .map(|n| {
            let d = res.d(n);
            let mut m = IntMatrix::zeros(n, n + 1);
            for a in 0..=n {
                let col = d.column(a * v);
                for target in 0..n {
                    let s: i128 = col[target * v..(target + 1) * v].iter().sum();
                    m.set(target, a, s);
                }
            }
            m
        })
        .collect()
}

/// `Xbar_*(M)` with the induced comparison maps, all tensored with `M`.
#[derive(Clone, Debug)]
pub struct CoefficientComplex {
    pub shape: Shape,
    pub module: PresentedModule,
    /// `Xbar_*(M)`.
    pub complex: ChainComplex,
    /// The normalized complex `Dbar^{(x) *} (x) M`.
    pub bar_complex: ChainComplex,
    /// `phi_bar[n]: Xbar_n(M) -> Dbar^{(x) n} (x) M`.
    pub phi_bar: Vec<IntMatrix>,
    /// `varphi_bar[n]: Dbar^{(x) n} (x) M -> Xbar_n(M)`.
    pub varphi_bar: Vec<IntMatrix>,
    /// `omega_bar[n]: Dbar^{(x) n-1} (x) M -> Dbar^{(x) n} (x) M` for
    /// `1 <= n <= n_max`; `omega_bar[0]` is an empty placeholder.
    pub omega_bar: Vec<IntMatrix>,
}

impl CoefficientComplex {
    pub fn n_max(&self) -> usize {
        self.complex.n_max()
    }

    /// The retract `Xbar_*(M) <-> Dbar^{(x) *} (x) M` with `i = phi_bar`,
    /// `p = varphi_bar` and `h = omega_bar`. It is a genuine retract only
    /// when `t >= 2`.
    pub fn sdr(&self) -> Sdr {
        Sdr {
            x: self.complex.clone(),
            c: self.bar_complex.clone(),
            i: self.phi_bar.clone(),
            p: self.varphi_bar.clone(),
            h: self.omega_bar[1..].to_vec(),
        }
    }

    /// `varphi phi = id` and the side conditions `omega_1 = 0`,
    /// `varphi omega = 0`, `omega phi = 0`, `omega omega = 0`, plus the
    /// remaining retract identities.
    pub fn verify(&self) -> Verdict {
        if !self.omega_bar[1].is_zero() {
            return Verdict::fail("omega_1", vec![1], "omega_1 is nonzero");
        }
        self.sdr().verify()
    }
}

fn with_module(a: &IntMatrix, m: usize) -> IntMatrix {
    a.kron(&IntMatrix::identity(m))
}

fn repeated_relations(rel: &IntMatrix, copies: usize) -> IntMatrix {
    let m = rel.cols();
    let mut out = IntMatrix::zeros(rel.rows() * copies, m * copies);
    for c in 0..copies {
        out.put_block(c * rel.rows(), c * m, rel);
    }
    out
}

/// Builds `Xbar_*(M)` through `n_max`, where the action matrix (the map
/// `m -> g m`) must be the identity.
///
/// The differentials from the cell formulas and from tensoring the
/// resolution are compared entrywise, and a mismatch is reported as
/// `RouteDisagreement`.
pub fn coefficient_complex(
    params: &CyclicFamilyParams,
    module: &PresentedModule,
    action: Option<&IntMatrix>,
    n_max: usize,
) -> Result<CoefficientComplex> {
    if let Some(a) = action {
        if a.rows() != module.ngens || a.cols() != module.ngens {
            return Err(Error::Domain("the action matrix must be square on the generators of M".into()));
        }
        if !a.is_identity() {
            return Err(Error::Unsupported("coefficients with a nontrivial action".into()));
        }
    }
    let shape = Shape::of(params)?;
    let cmp = comparison_for_shape(shape, n_max)?;
    coefficient_complex_from(&cmp, module)
}

/// Same as [`coefficient_complex`] for already computed comparison data.
pub fn coefficient_complex_from(cmp: &Comparison, module: &PresentedModule) -> Result<CoefficientComplex> {
    let shape = cmp.shape;
    let n_max = cmp.n_max();
    let direct = cell_differentials(&shape, n_max);
    let tensored = tensored_differentials(&cmp.resolution);
    if direct != tensored {
        return Err(Error::RouteDisagreement("cell formulas and the tensored resolution give different complexes".into()));
    }
    let m = module.ngens;
    let rel = &module.relations;
    let complex = ChainComplex::presented(
        (0..=n_max).map(|n| (n + 1) * m).collect(),
        direct.iter().map(|d| with_module(d, m)).collect(),
        (0..=n_max).map(|n| repeated_relations(rel, n + 1)).collect(),
    )?;
    let bar = cmp.bar;
    let bar_complex = ChainComplex::presented(
        (0..=n_max).map(|n| bar.ngens(n) * m).collect(),
        (1..=n_max).map(|n| with_module(&bar.trivial_boundary(n), m)).collect(),
        (0..=n_max).map(|n| repeated_relations(rel, bar.ngens(n))).collect(),
    )?;
    let mut omega_bar = vec![IntMatrix::zeros(0, 0)];
    omega_bar.extend((1..=n_max).map(|n| with_module(&cmp.omega_bar(n), m)));
    Ok(CoefficientComplex {
        shape,
        module: module.clone(),
        complex,
        bar_complex,
        phi_bar: (0..=n_max).map(|n| with_module(&cmp.phi_bar(n), m)).collect(),
        varphi_bar: (0..=n_max).map(|n| with_module(&cmp.varphi_bar(n), m)).collect(),
        omega_bar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    fn integers() -> PresentedModule {
        PresentedModule::free(vec![vec![]])
    }

    #[test]
    fn cell_formulas_on_small_example() {
        let s = Shape::of(&params(2, 1, 2)).unwrap();
        let d = cell_differentials(&s, 3);
        // X_1 -> X_0: from M_01 by dbar^1 = 0, from M_10 by dbar^0 = 0.
        assert!(d[0].is_zero());
        // X_2 -> X_1: M_02 -> M_01 by -t, M_02 -> M_10 by -1, M_20 -> M_10 by u.
        assert_eq!(d[1], IntMatrix::from_rows(&[[-2, 0, 0], [-1, 0, 2]]));
        for n in 1..3 {
            assert!(d[n - 1].mul(&d[n]).is_zero());
        }
    }

    #[test]
    fn both_constructions_agree() {
        for pr in CyclicFamilyParams::all_up_to(9) {
            let n = if pr.v() <= 4 { 3 } else { 2 };
            assert!(coefficient_complex(&pr, &integers(), None, n).is_ok(), "{pr}");
        }
    }

    #[test]
    fn first_homology_of_c4() {
        let c = coefficient_complex(&params(2, 1, 2), &integers(), None, 3).unwrap();
        assert_eq!(c.complex.homology(1).unwrap(), FinAbGroup::cyclic(4));
        assert!(c.complex.homology(2).unwrap().is_trivial());
    }

    #[test]
    fn homology_matches_the_bar_complex() {
        for pr in CyclicFamilyParams::all_up_to(9) {
            let c = coefficient_complex(&pr, &integers(), None, 3).unwrap();
            for n in 0..=2 {
                assert_eq!(c.complex.homology(n).unwrap(), c.bar_complex.homology(n).unwrap(), "{pr} n={n}");
            }
        }
    }

    #[test]
    fn induced_retract_holds_for_t_at_least_two() {
        let m = PresentedModule::new(2, IntMatrix::from_rows(&[[3, 0]]), vec![vec![1], vec![2]]);
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            for module in [integers(), m.clone()] {
                let c = coefficient_complex(&pr, &module, None, 2).unwrap();
                let v = c.verify();
                assert!(v.is_pass(), "{pr}: {v}");
            }
        }
    }

    #[test]
    fn induced_closed_forms() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let c = coefficient_complex(&pr, &integers(), None, 2).unwrap();
            let s = c.shape;
            let bar = super::super::bar::Bar::new(s.v);
            let mut phi1 = IntMatrix::zeros(s.v - 1, 2);
            phi1.set(bar.encode(&[1]), 0, 1);
            phi1.set(bar.encode(&[s.t]), 1, -1);
            assert_eq!(c.phi_bar[1], phi1);
            for i in 0..s.u {
                for j in 0..s.t {
                    let e = s.t * i + j;
                    if e == 0 {
                        continue;
                    }
                    let g = bar.encode(&[e]);
                    assert_eq!(c.varphi_bar[1].column(g), vec![j as i128, -(i as i128)], "{pr}");
                    let mut want = vec![0; bar.ngens(2)];
                    for l in 0..i {
                        if s.t * l + j != 0 {
                            want[bar.encode(&[s.t, s.t * l + j])] += 1;
                        }
                    }
                    for l in 1..j {
                        want[bar.encode(&[1, l])] += 1;
                    }
                    assert_eq!(c.omega_bar[2].column(g), want, "{pr} e={e}");
                }
            }
        }
    }

    #[test]
    fn nontrivial_action_rejected() {
        let m = PresentedModule::free(vec![vec![1], vec![2]]);
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let r = coefficient_complex(&params(2, 1, 1), &m, Some(&swap), 2);
        assert!(matches!(r, Err(Error::Unsupported(_))));
        assert!(coefficient_complex(&params(2, 1, 1), &m, Some(&IntMatrix::identity(2)), 2).is_ok());
    }
}
