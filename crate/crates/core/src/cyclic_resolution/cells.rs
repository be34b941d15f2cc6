//! The cells `X_{ab} = E`, `Y_b = Z[C_t]` of the double resolution and the
//! structural maps between them.
//!
//! `E` is identified with `Z[C_v]` through `x^i w_{y^j} -> g^{t i + j}`, so
//! the basis of a cell `X_{ab}` is `g^0, .., g^{v-1}` and right
//! multiplication by an element of `E` is a circulant matrix.

use serde::{Deserialize, Serialize};

use crate::abelian::IntMatrix;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// An element of `Z[C_n]` as its coefficient vector.
pub type RingElt = Vec<i128>;

/// The numbers `u, t, v = u t` fixing the crossed-product model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub u: usize,
    pub t: usize,
    pub v: usize,
}

impl Shape {
    pub fn new(u: usize, t: usize) -> Result<Self> {
        if u <= 1 || t == 0 {
            return Err(Error::Domain(format!("need u > 1 and t >= 1, got u = {u}, t = {t}")));
        }
        Ok(Shape { u, t, v: u * t })
    }

    pub fn of(params: &CyclicFamilyParams) -> Result<Self> {
        Shape::new(params.u() as usize, params.t() as usize)
    }

    /// `g^e` in `E`.
    pub fn basis(&self, e: usize) -> RingElt {
        let mut z = vec![0; self.v];
        z[e % self.v] = 1;
        z
    }

    /// `x^i w_{y^j}` in `E`.
    pub fn xw(&self, i: usize, j: usize) -> RingElt {
        self.basis(self.t * (i % self.u) + j)
    }

    /// The matrix of `a -> a z` on `E`.
    pub fn mult(&self, z: &[i128]) -> IntMatrix {
        circulant(z)
    }

    pub fn augmentation(&self) -> IntMatrix {
        IntMatrix::from_row_vecs(self.v, vec![vec![1; self.v]])
    }

    /// `d0_{ab}: X_{ab} -> X_{a-1,b}`, right multiplication by `x - 1` for
    /// odd `a` and by `1 + x + .. + x^{u-1}` for even `a`.
    pub fn d0(&self, alpha: usize) -> IntMatrix {
        assert!(alpha >= 1);
        self.mult(&self.d0_value(alpha))
    }

    pub fn d0_value(&self, alpha: usize) -> RingElt {
        let mut z = vec![0; self.v];
        if alpha % 2 == 1 {
            z[self.t] += 1;
            z[0] -= 1;
        } else {
            for l in 0..self.u {
                z[self.t * l] += 1;
            }
        }
        z
    }

    /// `upsilon_b: X_{0b} -> Y_b`, `w_1 -> 1`.
    pub fn upsilon(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.t, self.v);
        for e in 0..self.v {
            m.set(e % self.t, e, 1);
        }
        m
    }

    /// `boundary_b: Y_b -> Y_{b-1}`, multiplication by `y - 1` for odd `b`
    /// and by the norm of `C_t` for even `b`.
    pub fn boundary_y(&self, beta: usize) -> IntMatrix {
        assert!(beta >= 1);
        let mut z = vec![0; self.t];
        if beta % 2 == 1 {
            z[1 % self.t] += 1;
            z[0] -= 1;
        } else {
            z.iter_mut().for_each(|c| *c = 1);
        }
        circulant(&z)
    }

    /// `pi: Y_0 -> Z`.
    pub fn pi_y(&self) -> IntMatrix {
        IntMatrix::from_row_vecs(self.t, vec![vec![1; self.t]])
    }

    /// `sigma0_{0b}: Y_b -> X_{0b}`, `y^j -> w_{y^j}`.
    pub fn sigma0_from_y(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.v, self.t);
        for j in 0..self.t {
            m.set(j, j, 1);
        }
        m
    }

    /// `sigma0_{a,b}: X_{a-1,b} -> X_{ab}` for `a >= 1`.
    pub fn sigma0(&self, target_alpha: usize) -> IntMatrix {
        assert!(target_alpha >= 1);
        let mut m = IntMatrix::zeros(self.v, self.v);
        for i in 0..self.u {
            for j in 0..self.t {
                let src = self.t * i + j;
                if target_alpha % 2 == 1 {
                    for l in 0..i {
                        m.add_to(self.t * l + j, src, &1);
                    }
                } else if i == self.u - 1 {
                    m.set(j, src, 1);
                }
            }
        }
        m
    }

    /// `sigma^{-1}_0: Z -> Y_0`.
    pub fn sigma_m1_zero(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.t, 1);
        m.set(0, 0, 1);
        m
    }

    /// `sigma^{-1}_b: Y_{b-1} -> Y_b` for `b >= 1`.
    pub fn sigma_m1(&self, beta: usize) -> IntMatrix {
        assert!(beta >= 1);
        let mut m = IntMatrix::zeros(self.t, self.t);
        for j in 0..self.t {
            if beta.is_multiple_of(2) {
                if j == self.t - 1 {
                    m.set(0, j, 1);
                }
            } else {
                for l in 0..j {
                    m.set(l, j, 1);
                }
            }
        }
        m
    }

    /// The identities making each row `Y_b <- X_{0b} <- X_{1b} <- ..` and
    /// the column `Z <- Y_0 <- Y_1 <- ..` complexes, up to the given caps.
    pub fn verify_complexes(&self, alpha_max: usize, beta_max: usize) -> Verdict {
        if !self.upsilon().mul(&self.d0(1)).is_zero() {
            return Verdict::fail("upsilon∘d0", vec![1], "row does not compose to zero at X_1");
        }
        for a in 2..=alpha_max {
            if !self.d0(a - 1).mul(&self.d0(a)).is_zero() {
                return Verdict::fail("d0∘d0", vec![a as i64], "row does not compose to zero");
            }
        }
        if !self.pi_y().mul(&self.boundary_y(1)).is_zero() {
            return Verdict::fail("pi∘boundary", vec![1], "column does not compose to zero at Y_1");
        }
        for b in 2..=beta_max {
            if !self.boundary_y(b - 1).mul(&self.boundary_y(b)).is_zero() {
                return Verdict::fail("boundary∘boundary", vec![b as i64], "column does not compose to zero");
            }
        }
        Verdict::pass()
    }

    /// Contraction identities of the rows and of the `Y` column.
    pub fn verify_homotopies(&self, alpha_max: usize, beta_max: usize) -> Verdict {
        if !self.upsilon().mul(&self.sigma0_from_y()).is_identity() {
            return Verdict::fail("upsilon∘sigma0", vec![0], "not the identity of Y");
        }
        let at0 = self.sigma0_from_y().mul(&self.upsilon()).add(&self.d0(1).mul(&self.sigma0(1)));
        if !at0.is_identity() {
            return Verdict::fail("row contraction", vec![0], "fails on X_0");
        }
        for a in 1..alpha_max {
            let s = self.sigma0(a).mul(&self.d0(a)).add(&self.d0(a + 1).mul(&self.sigma0(a + 1)));
            if !s.is_identity() {
                return Verdict::fail("row contraction", vec![a as i64], "fails");
            }
        }
        if !self.pi_y().mul(&self.sigma_m1_zero()).is_identity() {
            return Verdict::fail("pi∘sigma-1", vec![0], "not the identity of Z");
        }
        let y0 = self.sigma_m1_zero().mul(&self.pi_y()).add(&self.boundary_y(1).mul(&self.sigma_m1(1)));
        if !y0.is_identity() {
            return Verdict::fail("column contraction", vec![0], "fails on Y_0");
        }
        for b in 1..beta_max {
            let s = self.sigma_m1(b).mul(&self.boundary_y(b)).add(&self.boundary_y(b + 1).mul(&self.sigma_m1(b + 1)));
            if !s.is_identity() {
                return Verdict::fail("column contraction", vec![b as i64], "fails");
            }
        }
        Verdict::pass()
    }

    /// Checks that a map `E -> E` commutes with right multiplication by
    /// every group element.
    pub fn is_e_linear(&self, m: &IntMatrix) -> bool {
        let g = self.mult(&self.basis(1));
        m.mul(&g) == g.mul(m)
    }
}

/// The circulant matrix of multiplication by `z` on `Z[C_n]`.
pub fn circulant(z: &[i128]) -> IntMatrix {
    let n = z.len();
    let mut m = IntMatrix::zeros(n, n);
    for e in 0..n {
        for (k, &c) in z.iter().enumerate() {
            if c != 0 {
                m.set((k + e) % n, e, c);
            }
        }
    }
    m
}

/// Matrices of the structural maps, after checking that rows and column
/// compose to zero through `cap`.
pub fn structural_differentials(params: &CyclicFamilyParams, cap: usize) -> Result<Shape> {
    let shape = Shape::of(params)?;
    let v = shape.verify_complexes(cap, cap);
    if !v.is_pass() {
        return Err(Error::InconsistentComplex(v.to_string()));
    }
    Ok(shape)
}

/// Verifies the contracting homotopies of the rows and the column.
pub fn contracting_homotopies(params: &CyclicFamilyParams, cap: usize) -> Result<Verdict> {
    let shape = Shape::of(params)?;
    Ok(shape.verify_homotopies(cap, cap))
}
