//! The components `d^l_{ab}: X_{ab} -> X_{a+l-1,b-l}` of the resolution
//! differential.
//!
//! Each `d^l` is right `E`-linear, so it is stored as its value on `w_1`.
//! The recursive definition and the closed form are computed independently.

use std::collections::HashMap;

use super::cells::{RingElt, Shape};
use crate::abelian::IntMatrix;
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};

/// Product in `Z[C_v]`.
pub fn ring_mul(a: &[i128], b: &[i128]) -> RingElt {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % n] += x * y;
            }
        }
    }
    out
}

/// Which description of `d^l` to use.
///
/// The two agree whenever `t >= 2`. For `t = 1` the recursion gives
/// `d^1_{a,odd} = 0` and `d^2 = 0`, while the closed form reads `w_y` as
/// `g`, giving `d^1_{a,odd} = (-1)^a (1 - g)` and `d^2_{even,b} = -1`. Both
/// are resolutions; the coefficient complexes are built from the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DlSource {
    Recursive,
    Closed,
}

/// Memoized values `d^l_{ab}(w_1)`.
#[derive(Clone, Debug)]
pub struct DlTable {
    pub shape: Shape,
    pub source: DlSource,
    memo: HashMap<(usize, usize, usize), RingElt>,
}

impl DlTable {
    /// A table evaluating the recursion.
    pub fn new(shape: Shape) -> Self {
        Self::with_source(shape, DlSource::Recursive)
    }

    pub fn with_source(shape: Shape, source: DlSource) -> Self {
        DlTable { shape, source, memo: HashMap::new() }
    }

    /// `d^l_{ab}(w_1)`; `l = 0` gives the row differential `d0`.
    pub fn value(&mut self, alpha: usize, beta: usize, l: usize) -> RingElt {
        assert!(l <= beta && (l > 0 || alpha > 0), "d^{l}_{alpha},{beta} is undefined");
        if l == 0 {
            return self.shape.d0_value(alpha);
        }
        if self.source == DlSource::Closed {
            return dl_closed(&self.shape, alpha, beta, l);
        }
        if let Some(z) = self.memo.get(&(alpha, beta, l)) {
            return z.clone();
        }
        let s = self.shape;
        let mut acc = vec![0; s.v];
        if l == 1 && alpha == 0 {
            let mut one_y = vec![0; s.t];
            one_y[0] = 1;
            let y = s.boundary_y(beta).apply(&one_y);
            acc = s.sigma0_from_y().apply(&y);
        } else {
            let first = if alpha == 0 { 1 } else { 0 };
            for j in first..l {
                let inner = self.value(alpha, beta, j);
                let outer = self.value(alpha + j - 1, beta - j, l - j);
                let z = ring_mul(&outer, &inner);
                for (a, b) in acc.iter_mut().zip(s.sigma0(alpha + l - 1).apply(&z)) {
                    *a += b;
                }
            }
        }
        let out: RingElt = acc.into_iter().map(|x| -x).collect();
        self.memo.insert((alpha, beta, l), out.clone());
        out
    }

    pub fn matrix(&mut self, alpha: usize, beta: usize, l: usize) -> IntMatrix {
        let z = self.value(alpha, beta, l);
        self.shape.mult(&z)
    }
}

/// The closed form of `d^l_{ab}(w_1)`.
pub fn dl_closed(shape: &Shape, alpha: usize, beta: usize, l: usize) -> RingElt {
    let mut z = vec![0; shape.v];
    let sign = if alpha.is_multiple_of(2) { 1 } else { -1 };
    match l {
        0 => return shape.d0_value(alpha),
        1 if beta % 2 == 1 => {
            // w_y is w_1 when t = 1.
            z[0] += sign;
            z[1] -= sign;
        }
        1 => {
            for h in 0..shape.t {
                z[h] -= sign;
            }
        }
        2 if alpha.is_multiple_of(2) => z[0] = -1,
        _ => {}
    }
    z
}

/// `d^l_{ab}` by recursion and in closed form, as matrices on `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlMap {
    pub recursive: IntMatrix,
    pub closed: IntMatrix,
}

/// Computes `d^l_{ab}` both ways and insists that they agree.
pub fn dl_maps(params: &CyclicFamilyParams, alpha: usize, beta: usize, l: usize) -> Result<DlMap> {
    if l == 0 || l > beta {
        return Err(Error::Domain(format!("d^{l}_({alpha},{beta}) needs 1 <= l <= beta")));
    }
    let shape = Shape::of(params)?;
    let mut table = DlTable::new(shape);
    let recursive = table.matrix(alpha, beta, l);
    let closed = shape.mult(&dl_closed(&shape, alpha, beta, l));
    if recursive != closed {
        return Err(Error::RouteDisagreement(format!("d^{l}_({alpha},{beta}) recursion differs from the closed form")));
    }
    Ok(DlMap { recursive, closed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    #[test]
    fn d2_on_even_columns_is_minus_one() {
        for pr in [params(2, 1, 2), params(3, 1, 2), params(2, 2, 3)] {
            let s = Shape::of(&pr).unwrap();
            let mut tab = DlTable::new(s);
            for a in [0, 2, 4] {
                for b in 2..5 {
                    assert_eq!(tab.value(a, b, 2), {
                        let mut z = vec![0; s.v];
                        z[0] = -1;
                        z
                    });
                }
            }
        }
    }

    #[test]
    fn d3_vanishes() {
        let s = Shape::of(&params(3, 1, 2)).unwrap();
        let mut tab = DlTable::new(s);
        for a in 0..4 {
            for b in 3..6 {
                assert!(tab.value(a, b, 3).iter().all(|&x| x == 0));
                if b >= 4 {
                    assert!(tab.value(a, b, 4).iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn recursion_matches_closed_form() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() > 1) {
            for n in 1..=4 {
                for a in 0..=n {
                    let b = n - a;
                    for l in 1..=b {
                        assert!(dl_maps(&pr, a, b, l).is_ok(), "{pr} ({a},{b}) l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_and_closed_form_split_when_t_is_one() {
        for pr in CyclicFamilyParams::all_up_to(9).into_iter().filter(|p| p.t() == 1) {
            let s = Shape::of(&pr).unwrap();
            let mut tab = DlTable::new(s);
            for n in 1..=4 {
                for a in 0..=n {
                    let b = n - a;
                    for l in 1..=b {
                        let differs = (l == 1 && b % 2 == 1) || (l == 2 && a % 2 == 0);
                        assert_eq!(tab.value(a, b, l) != dl_closed(&s, a, b, l), differs, "{pr} ({a},{b}) l={l}");
                        if l == 1 && b % 2 == 1 || l == 2 {
                            assert!(tab.value(a, b, l).iter().all(|&x| x == 0));
                        }
                    }
                }
            }
            assert!(matches!(dl_maps(&pr, 0, 1, 1), Err(Error::RouteDisagreement(_))));
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(dl_maps(&params(2, 1, 2), 0, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(dl_maps(&params(2, 1, 2), 1, 1, 0), Err(Error::Domain(_))));
    }
}
