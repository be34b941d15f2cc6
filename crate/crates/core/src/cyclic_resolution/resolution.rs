//! The total resolution `X_n = (+)_{a+b=n} X_{ab}` of `Z` over `E`, and its
//! additive contracting homotopy.

use std::collections::HashMap;

use super::cells::Shape;
use super::dl::{DlSource, DlTable};
use crate::abelian::IntMatrix;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::homology_engine::ChainComplex;
use crate::verdict::Verdict;

/// Largest degree the resolution is built to.
pub const RESOLUTION_CAP: usize = 5;

/// The additive maps `sigma^l_{a+l+1,b-l}` out of `X_{ab}`, where `a = -1`
/// stands for the column `Y_b`.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    pub dl: DlTable,
    memo: HashMap<(i64, usize, usize), IntMatrix>,
}

impl SigmaTable {
    pub fn new(shape: Shape) -> Self {
        Self::with_source(shape, DlSource::Recursive)
    }

    pub fn with_source(shape: Shape, source: DlSource) -> Self {
        SigmaTable { dl: DlTable::with_source(shape, source), memo: HashMap::new() }
    }

    pub fn shape(&self) -> Shape {
        self.dl.shape
    }

    /// `sigma^l` with source `X_{alpha,beta}` (or `Y_beta` when
    /// `alpha = -1`) and target `X_{alpha+l+1,beta-l}`.
    pub fn sigma(&mut self, alpha: i64, beta: usize, l: usize) -> IntMatrix {
        assert!(alpha >= -1 && l <= beta);
        let s = self.shape();
        if l == 0 {
            return if alpha < 0 { s.sigma0_from_y() } else { s.sigma0(alpha as usize + 1) };
        }
        if let Some(m) = self.memo.get(&(alpha, beta, l)) {
            return m.clone();
        }
        let cols = if alpha < 0 { s.t } else { s.v };
        let mut acc = IntMatrix::zeros(s.v, cols);
        let top = (alpha + l as i64 + 1) as usize;
        for i in 0..l {
            let inner = self.sigma(alpha, beta, i);
            let a_mid = (alpha + i as i64 + 1) as usize;
            let d = self.dl.matrix(a_mid, beta - i, l - i);
            acc = acc.add(&s.sigma0(top).mul(&d).mul(&inner));
        }
        let out = acc.neg();
        self.memo.insert((alpha, beta, l), out.clone());
        out
    }
}

/// The resolution through degree `n_max` with its contracting homotopy.
///
/// Cells of `X_n` are ordered by `a`, each a block of `v` coordinates.
/// `sigma_bar[0]: Z -> X_0` and `sigma_bar[n]: X_{n-1} -> X_n`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub shape: Shape,
    pub source: DlSource,
    pub complex: ChainComplex,
    pub augmentation: IntMatrix,
    pub sigma_bar: Vec<IntMatrix>,
}

impl Resolution {
    pub fn n_max(&self) -> usize {
        self.complex.n_max()
    }

    pub fn d(&self, n: usize) -> &IntMatrix {
        &self.complex.d[n]
    }

    /// Offset of the cell `X_{a,n-a}` inside `X_n`.
    pub fn offset(&self, alpha: usize) -> usize {
        alpha * self.shape.v
    }

    /// `d^2 = 0`, augmentation compatibility, and the contraction identities
    /// `pi sigma_0 = id`, `d sigma + sigma d = id` (with `sigma_0 pi` in
    /// degree 0).
    pub fn verify(&self) -> Verdict {
        let c = &self.complex;
        let v = c.verify();
        if !v.is_pass() {
            return v;
        }
        if !self.augmentation.mul(c.d.get(1).unwrap_or(&IntMatrix::zeros(self.shape.v, 0))).is_zero() {
            return Verdict::fail("pi∘d", vec![1], "augmentation does not kill boundaries");
        }
        if !self.augmentation.mul(&self.sigma_bar[0]).is_identity() {
            return Verdict::fail("pi∘sigma", vec![0], "augmentation is not split by sigma_0");
        }
        for n in 0..self.n_max() {
            let mut lhs = c.d[n + 1].mul(&self.sigma_bar[n + 1]);
            lhs = if n == 0 {
                lhs.add(&self.sigma_bar[0].mul(&self.augmentation))
            } else {
                lhs.add(&self.sigma_bar[n].mul(&c.d[n]))
            };
            if !lhs.is_identity() {
                return Verdict::fail("d∘sigma+sigma∘d", vec![n as i64], format!("contraction fails at degree {n}"));
            }
        }
        Verdict::pass()
    }
}

/// Builds `X_*` through `n_max` from the recursive `d^l` and the homotopy
/// `sigma_bar` from the recursive `sigma^l`.
pub fn resolution(params: &CyclicFamilyParams, n_max: usize) -> Result<Resolution> {
    resolution_for_shape(Shape::of(params)?, n_max, DlSource::Recursive)
}

pub fn resolution_for_shape(shape: Shape, n_max: usize, source: DlSource) -> Result<Resolution> {
    if n_max > RESOLUTION_CAP {
        return Err(Error::OutOfScope(format!("the resolution is built through degree {RESOLUTION_CAP}, asked for {n_max}")));
    }
    let v = shape.v;
    let mut tab = SigmaTable::with_source(shape, source);
    let mut d = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut m = IntMatrix::zeros(n * v, (n + 1) * v);
        for alpha in 0..=n {
            let beta = n - alpha;
            let first = if alpha == 0 { 1 } else { 0 };
            for l in first..=beta {
                let target = alpha + l - 1;
                m.put_block(target * v, alpha * v, &tab.dl.matrix(alpha, beta, l));
            }
        }
        d.push(m);
    }
    let dims = (0..=n_max).map(|n| (n + 1) * v).collect();
    let complex = ChainComplex::free(dims, d)?;

    let mut sigma_bar = vec![shape.sigma0_from_y().mul(&shape.sigma_m1_zero())];
    for n in 0..n_max {
        let mut m = IntMatrix::zeros((n + 2) * v, (n + 1) * v);
        // Source cell X_{0n}.
        let through_y = shape.sigma_m1(n + 1).mul(&shape.upsilon());
        for l in 0..=n + 1 {
            let block = tab.sigma(-1, n + 1, l).mul(&through_y).neg();
            add_block(&mut m, l * v, 0, &block);
        }
        for l in 0..=n {
            add_block(&mut m, (l + 1) * v, 0, &tab.sigma(0, n, l));
        }
        for alpha in 1..=n {
            for l in 0..=n - alpha {
                add_block(&mut m, (alpha + l + 1) * v, alpha * v, &tab.sigma(alpha as i64, n - alpha, l));
            }
        }
        sigma_bar.push(m);
    }
    Ok(Resolution { shape, source, complex, augmentation: shape.augmentation(), sigma_bar })
}

fn add_block(m: &mut IntMatrix, r0: usize, c0: usize, b: &IntMatrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let x = b.get(i, j);
            if *x != 0 {
                m.add_to(r0 + i, c0 + j, x);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    #[test]
    fn resolution_is_contractible() {
        for pr in CyclicFamilyParams::all_up_to(9) {
            for source in [DlSource::Recursive, DlSource::Closed] {
                let res = resolution_for_shape(Shape::of(&pr).unwrap(), 5, source).unwrap();
                let v = res.verify();
                assert!(v.is_pass(), "{pr} {source:?}: {v}");
            }
        }
    }

    #[test]
    fn square_zero_v8() {
        for pr in [params(2, 2, 3), params(2, 3, 3)] {
            let res = resolution(&pr, 4).unwrap();
            for n in 2..=4 {
                assert!(res.d(n - 1).mul(res.d(n)).is_zero());
            }
        }
    }

    #[test]
    fn sigma_bar_kills_w1() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let res = resolution(&pr, 5).unwrap();
            let v = res.shape.v;
            for n in 1..=5 {
                for alpha in 0..n {
                    let col = res.sigma_bar[n].column(alpha * v);
                    assert!(col.iter().all(|&x| x == 0), "{pr} n={n} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn sigma_one_closed_form() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            let s = Shape::of(&pr).unwrap();
            let mut tab = SigmaTable::new(s);
            for alpha in 0..3usize {
                let sign: i128 = if alpha % 2 == 0 { -1 } else { 1 };
                for beta in 1..3usize {
                    // Sources X_{a,2b+1} and X_{a,2b}.
                    let even = tab.sigma(alpha as i64, 2 * beta + 1, 1);
                    let odd = tab.sigma(alpha as i64, 2 * beta, 1);
                    for i in 0..s.u {
                        for j in 0..s.t {
                            let e = s.t * i + j;
                            let mut want_even = vec![0; s.v];
                            let mut want_odd = vec![0; s.v];
                            if i == s.u - 1 {
                                if j == s.t - 1 {
                                    want_even[0] = sign;
                                }
                                for l in 0..j {
                                    want_odd[l] = sign;
                                }
                            }
                            assert_eq!(even.column(e), want_even, "{pr}");
                            assert_eq!(odd.column(e), want_odd, "{pr}");
                        }
                    }
                    for l in 2..=beta {
                        assert!(tab.sigma(alpha as i64, beta + 1, l).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn first_homotopy_term_from_y_vanishes() {
        // sigma^l from Y vanishes on the relevant basis vectors for l >= 1.
        for pr in CyclicFamilyParams::all_up_to(9) {
            let s = Shape::of(&pr).unwrap();
            let mut tab = SigmaTable::new(s);
            for beta in 1..4usize {
                for l in 1..=2 * beta {
                    assert!(tab.sigma(-1, 2 * beta, l).column(0).iter().all(|&x| x == 0));
                }
                for l in 1..=2 * beta + 1 {
                    let m = tab.sigma(-1, 2 * beta + 1, l);
                    for k in 0..s.t.saturating_sub(1) {
                        assert!(m.column(k).iter().all(|&x| x == 0));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_bar_of_w1_survives_when_t_is_one() {
        // sigma^{-1}_{2b}(1) = 1 when t = 1, so the vanishing fails on X_{0,odd}.
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() == 1) {
            for source in [DlSource::Recursive, DlSource::Closed] {
                let res = resolution_for_shape(Shape::of(&pr).unwrap(), 4, source).unwrap();
                let col = res.sigma_bar[2].column(0);
                assert_eq!(col[0], -1, "{pr}");
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(resolution(&params(2, 1, 1), 6), Err(Error::OutOfScope(_))));
    }
}
