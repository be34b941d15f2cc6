//! The crossed product `C_u x_zeta C_t` and its identification with `C_v`.

use serde::{Deserialize, Serialize};

use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};

/// The element `x^i w_{y^j}` with `0 <= i < u` and `0 <= j < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossedProductElement {
    pub i: u64,
    pub j: u64,
}

/// The group `C_u x_zeta C_t`, where `C_t = <y>` acts trivially on
/// `C_u = <x>` and `zeta(y^j, y^j') = x` exactly when `j + j' >= t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedProduct {
    pub u: u64,
    pub t: u64,
}

impl CrossedProduct {
    pub fn new(u: u64, t: u64) -> Result<Self> {
        if u <= 1 {
            return Err(Error::Domain(format!("the crossed product model needs u > 1, got u = {u}")));
        }
        if t == 0 {
            return Err(Error::Domain("t must be positive".into()));
        }
        Ok(CrossedProduct { u, t })
    }

    pub fn order(&self) -> u64 {
        self.u * self.t
    }

    pub fn one(&self) -> CrossedProductElement {
        CrossedProductElement { i: 0, j: 0 }
    }

    pub fn element(&self, i: u64, j: u64) -> CrossedProductElement {
        CrossedProductElement { i: i % self.u, j: j % self.t }
    }

    /// The 2-cocycle, returned as an exponent of `x`.
    pub fn zeta(&self, j: u64, j2: u64) -> u64 {
        u64::from(j + j2 >= self.t)
    }

    pub fn mul(&self, a: CrossedProductElement, b: CrossedProductElement) -> CrossedProductElement {
        let i = (a.i + b.i + self.zeta(a.j, b.j)) % self.u;
        CrossedProductElement { i, j: (a.j + b.j) % self.t }
    }

    pub fn elements(&self) -> Vec<CrossedProductElement> {
        (0..self.u).flat_map(|i| (0..self.t).map(move |j| CrossedProductElement { i, j })).collect()
    }

    /// `f(x^i w_{y^j}) = g^{t i + j}`, as an exponent of `g`.
    pub fn to_cyclic(&self, a: CrossedProductElement) -> u64 {
        self.t * a.i + a.j
    }

    pub fn from_cyclic(&self, e: u64) -> CrossedProductElement {
        let e = e % self.order();
        CrossedProductElement { i: e / self.t, j: e % self.t }
    }

    /// Checks that `f` is a bijective homomorphism onto `C_v`, exhaustively.
    pub fn verify_isomorphism(&self) -> Result<()> {
        let v = self.order();
        let els = self.elements();
        let mut seen = vec![false; v as usize];
        for &a in &els {
            let e = self.to_cyclic(a);
            if e >= v || seen[e as usize] {
                return Err(Error::Verification(format!("f is not injective at x^{} w_y^{}", a.i, a.j)));
            }
            seen[e as usize] = true;
        }
        for &a in &els {
            for &b in &els {
                let lhs = self.to_cyclic(self.mul(a, b));
                let rhs = (self.to_cyclic(a) + self.to_cyclic(b)) % v;
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "f(ab) != f(a) f(b) for a = x^{} w_y^{}, b = x^{} w_y^{}",
                        a.i, a.j, b.i, b.j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The crossed-product model of `C_v` attached to a family member, with the
/// isomorphism `f` checked on construction.
pub fn crossed_product(params: &CyclicFamilyParams) -> Result<CrossedProduct> {
    let g = CrossedProduct::new(params.u(), params.t())?;
    g.verify_isomorphism()?;
    Ok(g)
}
