//! Comparison maps between the small resolution `X_*` and the normalized
//! bar resolution.
//!
//! `phi: X -> bar`, `varphi: bar -> X` and the homotopy `omega` on the bar
//! side are built by the usual induction against the two contracting
//! homotopies, on generators, and extended `E`-linearly:
//!
//! * `phi_{n+1}(w_1) = xi phi_n d_{n+1}(w_1)`,
//! * `varphi_{n+1}(x (x) 1) = sigma_bar_{n+1} varphi_n b'(x (x) 1)`,
//! * `omega_{n+1}(y) = xi (phi varphi - id - omega_n b')(y)`.
//!
//! With these signs `phi varphi - id = b' omega + omega b'`.

use super::bar::{Bar, BarElt};
use super::cells::Shape;
use super::dl::DlSource;
use super::resolution::{resolution_for_shape, Resolution};
use crate::abelian::IntMatrix;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Largest degree for which the comparison maps are built.
pub const COMPARISON_CAP: usize = 3;

#[derive(Clone, Debug)]
pub struct Comparison {
    pub shape: Shape,
    pub bar: Bar,
    pub resolution: Resolution,
    /// `phi[n][a]` is the image of `w_1` in the cell `X_{a,n-a}`.
    pub phi: Vec<Vec<BarElt>>,
    /// `varphi[n][g]` is the image of the `g`-th generator of degree `n`,
    /// as a dense vector of `X_n`.
    pub varphi: Vec<Vec<Vec<i128>>>,
    /// `omega[n][g]` is the image in degree `n` of the `g`-th generator of
    /// degree `n - 1`; `omega[0]` is empty.
    pub omega: Vec<Vec<BarElt>>,
}

impl Comparison {
    pub fn n_max(&self) -> usize {
        self.phi.len() - 1
    }

    fn rotate(&self, x: &[i128], e: usize) -> Vec<i128> {
        let v = self.shape.v;
        let mut out = vec![0; x.len()];
        for (k, &c) in x.iter().enumerate() {
            out[k - k % v + (k % v + e) % v] = c;
        }
        out
    }

    /// `varphi_n` on an element of bar degree `n`.
    pub fn apply_varphi(&self, n: usize, x: &BarElt) -> Vec<i128> {
        let mut out = vec![0; (n + 1) * self.shape.v];
        for (&(g, e), &c) in x {
            for (o, y) in out.iter_mut().zip(self.rotate(&self.varphi[n][g], e)) {
                *o += c * y;
            }
        }
        out
    }

    /// `phi_n` on a dense element of `X_n`.
    pub fn apply_phi(&self, n: usize, x: &[i128]) -> BarElt {
        let v = self.shape.v;
        let shifted: Vec<(i128, BarElt)> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (c, self.bar.shift(&self.phi[n][k / v], k % v)))
            .collect();
        self.bar.combine(shifted.iter().map(|(c, y)| (*c, y)))
    }

    /// `omega_n` on an element of bar degree `n - 1`.
    pub fn apply_omega(&self, n: usize, x: &BarElt) -> BarElt {
        let shifted: Vec<(i128, BarElt)> =
            x.iter().map(|(&(g, e), &c)| (c, self.bar.shift(&self.omega[n][g], e))).collect();
        self.bar.combine(shifted.iter().map(|(c, y)| (*c, y)))
    }

    fn generator(&self, g: usize) -> BarElt {
        [((g, 0), 1)].into_iter().collect()
    }

    /// Chain-map conditions, `varphi phi = id`, `phi varphi - id = b' omega
    /// + omega b'` and the side conditions, on generators.
    pub fn verify(&self) -> Verdict {
        let v = self.shape.v;
        let bar = &self.bar;
        let top = self.n_max();
        for n in 1..=top {
            for a in 0..=n {
                let col = self.resolution.d(n).column(a * v);
                if bar.b_prime(n, &self.phi[n][a]) != self.apply_phi(n - 1, &col) {
                    return Verdict::fail("b'∘phi", vec![n as i64, a as i64], "phi is not a chain map");
                }
            }
            for g in 0..bar.ngens(n) {
                let lhs = self.resolution.d(n).apply(&self.varphi[n][g]);
                if lhs != self.apply_varphi(n - 1, &bar.b_prime(n, &self.generator(g))) {
                    return Verdict::fail("d∘varphi", vec![n as i64, g as i64], "varphi is not a chain map");
                }
            }
        }
        for n in 0..=top {
            for a in 0..=n {
                let back = self.apply_varphi(n, &self.phi[n][a]);
                let want: Vec<i128> = (0..(n + 1) * v).map(|k| (k == a * v) as i128).collect();
                if back != want {
                    return Verdict::fail("varphi∘phi", vec![n as i64, a as i64], "varphi phi is not the identity");
                }
                if !self.apply_omega(n + 1, &self.phi[n][a]).is_empty() {
                    return Verdict::fail("omega∘phi", vec![n as i64, a as i64], "omega phi is nonzero");
                }
            }
            for g in 0..bar.ngens(n) {
                let y = self.generator(g);
                let mut lhs = self.apply_phi(n, &self.varphi[n][g]);
                lhs = bar.combine([(1, &lhs), (-1, &y)]);
                let mut rhs = bar.b_prime(n + 1, &self.omega[n + 1][g]);
                if n >= 1 {
                    let tail = self.apply_omega(n, &bar.b_prime(n, &y));
                    rhs = bar.combine([(1, &rhs), (1, &tail)]);
                }
                if lhs != rhs {
                    return Verdict::fail("phi∘varphi-id=b'omega+omega b'", vec![n as i64, g as i64], "homotopy identity fails");
                }
                if n < top && self.apply_varphi(n + 1, &self.omega[n + 1][g]).iter().any(|&c| c != 0) {
                    return Verdict::fail("varphi∘omega", vec![n as i64, g as i64], "varphi omega is nonzero");
                }
                if n + 2 < self.omega.len() && !self.apply_omega(n + 2, &self.omega[n + 1][g]).is_empty() {
                    return Verdict::fail("omega∘omega", vec![n as i64, g as i64], "omega omega is nonzero");
                }
            }
        }
        Verdict::pass()
    }

    /// `phi_n (x) Z`: columns indexed by the cells of `X_n`.
    pub fn phi_bar(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.bar.ngens(n), n + 1);
        for a in 0..=n {
            for (&(g, _), &c) in &self.phi[n][a] {
                m.add_to(g, a, &c);
            }
        }
        m
    }

    /// `varphi_n (x) Z`.
    pub fn varphi_bar(&self, n: usize) -> IntMatrix {
        let v = self.shape.v;
        let mut m = IntMatrix::zeros(n + 1, self.bar.ngens(n));
        for (g, img) in self.varphi[n].iter().enumerate() {
            for (k, &c) in img.iter().enumerate() {
                if c != 0 {
                    m.add_to(k / v, g, &c);
                }
            }
        }
        m
    }

    /// `omega_n (x) Z`, from degree `n - 1` to degree `n`.
    pub fn omega_bar(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.bar.ngens(n), self.bar.ngens(n - 1));
        for (g, img) in self.omega[n].iter().enumerate() {
            for (&(h, _), &c) in img {
                m.add_to(h, g, &c);
            }
        }
        m
    }
}

/// Builds `phi`, `varphi` through `n_max` and `omega` through `n_max + 1`
/// on the resolution with closed-form differentials.
pub fn comparison_maps(params: &CyclicFamilyParams, n_max: usize) -> Result<Comparison> {
    comparison_for_shape(Shape::of(params)?, n_max)
}

pub fn comparison_for_shape(shape: Shape, n_max: usize) -> Result<Comparison> {
    if n_max > COMPARISON_CAP {
        return Err(Error::OutOfScope(format!("comparison maps are built through degree {COMPARISON_CAP}, asked for {n_max}")));
    }
    let v = shape.v;
    let bar = Bar::new(v);
    let resolution = resolution_for_shape(shape, n_max, DlSource::Closed)?;
    let mut cmp = Comparison {
        shape,
        bar,
        resolution,
        phi: vec![vec![[((0, 0), 1)].into_iter().collect()]],
        varphi: vec![vec![shape.basis(0)]],
        omega: vec![Vec::new(), vec![BarElt::new()]],
    };
    for n in 0..n_max {
        let phi_next: Vec<BarElt> = (0..=n + 1)
            .map(|a| {
                let col = cmp.resolution.d(n + 1).column(a * v);
                bar.xi(n, &cmp.apply_phi(n, &col))
            })
            .collect();
        let varphi_next: Vec<Vec<i128>> = (0..bar.ngens(n + 1))
            .map(|g| {
                let b = bar.b_prime(n + 1, &cmp.generator(g));
                cmp.resolution.sigma_bar[n + 1].apply(&cmp.apply_varphi(n, &b))
            })
            .collect();
        cmp.phi.push(phi_next);
        cmp.varphi.push(varphi_next);
    }
    for n in 1..=n_max {
        let omega_next: Vec<BarElt> = (0..bar.ngens(n))
            .map(|g| {
                let y = cmp.generator(g);
                let pv = cmp.apply_phi(n, &cmp.varphi[n][g]);
                let ob = cmp.apply_omega(n, &bar.b_prime(n, &y));
                bar.xi(n, &bar.combine([(1, &pv), (-1, &y), (-1, &ob)]))
            })
            .collect();
        cmp.omega.push(omega_next);
    }
    Ok(cmp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    fn sum(bar: &Bar, terms: &[(i128, Vec<usize>)]) -> BarElt {
        let gens: Vec<(i128, BarElt)> = terms.iter().map(|(c, t)| (*c, bar.gen(t))).collect();
        bar.combine(gens.iter().map(|(c, x)| (*c, x)))
    }

    #[test]
    fn comparison_identities_hold_for_t_at_least_two() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let n = if pr.v() <= 4 { 3 } else { 2 };
            let cmp = comparison_maps(&pr, n).unwrap();
            let v = cmp.verify();
            assert!(v.is_pass(), "{pr}: {v}");
        }
    }

    #[test]
    fn comparison_in_degree_three_v9() {
        let cmp = comparison_maps(&params(3, 1, 2), 3).unwrap();
        assert!(cmp.verify().is_pass());
    }

    #[test]
    fn varphi_phi_fails_when_t_is_one() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() == 1) {
            let cmp = comparison_maps(&pr, 2).unwrap();
            let v = cmp.verify();
            let f = v.failure.expect("t = 1 is not a retract");
            assert_eq!(f.check, "varphi∘phi", "{pr}");
            // phi_1 sends X_{01} and X_{10} to [g] and -[g].
            assert_eq!(cmp.phi_bar(1).column(0), cmp.phi_bar(1).column(1).iter().map(|x| -x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn phi_closed_forms() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let cmp = comparison_maps(&pr, 2).unwrap();
            let (u, t) = (cmp.shape.u, cmp.shape.t);
            let bar = cmp.bar;
            assert_eq!(cmp.phi[1][0], bar.gen(&[1]), "{pr}");
            assert_eq!(cmp.phi[1][1], sum(&bar, &[(-1, vec![t])]), "{pr}");
            let x02: Vec<_> = (1..t).map(|h| (-1, vec![1, h])).collect();
            assert_eq!(cmp.phi[2][0], sum(&bar, &x02), "{pr}");
            assert_eq!(cmp.phi[2][1], sum(&bar, &[(1, vec![1, t]), (-1, vec![t, 1])]), "{pr}");
            let x20: Vec<_> = (1..u).map(|h| (-1, vec![t, t * h])).collect();
            assert_eq!(cmp.phi[2][2], sum(&bar, &x20), "{pr}");
        }
    }

    #[test]
    fn varphi_and_omega_closed_forms() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let cmp = comparison_maps(&pr, 2).unwrap();
            let s = cmp.shape;
            let bar = cmp.bar;
            for i in 0..s.u {
                for j in 0..s.t {
                    let e = s.t * i + j;
                    if e == 0 {
                        continue;
                    }
                    let g = bar.encode(&[e]);
                    let mut want = vec![0; 2 * s.v];
                    for h in 0..j {
                        want[h] += 1;
                    }
                    for h in 0..i {
                        want[s.v + s.t * h + j] -= 1;
                    }
                    assert_eq!(cmp.varphi[1][g], want, "{pr} e={e}");
                    let mut terms: Vec<(i128, Vec<usize>)> = (0..i).map(|h| (1, vec![s.t, s.t * h + j])).collect();
                    terms.extend((1..j).map(|h| (1, vec![1, h])));
                    assert_eq!(cmp.omega[2][g], sum(&bar, &terms), "{pr} e={e}");
                }
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(comparison_maps(&params(2, 1, 2), 4), Err(Error::OutOfScope(_))));
    }
}
