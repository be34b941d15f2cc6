//! The normalized double complex `C_{rs} = Dbar^{(x) r} (x) Mbar(s)` of a
//! finite linear cycle set on `Z/v` with integer coefficients.
//!
//! A generator of `C_{rs}` is a tuple `(g_1, .., g_r, g_{r+1}, .., g_{r+s})`
//! of nonzero exponents: `r` group slots followed by the `s` slots of the
//! bracket. Its index is the base `v - 1` encoding of the whole tuple, that
//! is, `(r-part index) * (v-1)^s + (s-part index)`.

use std::collections::BTreeMap;

use super::shuffle::{shuffle_quotient, ShuffleQuotient};
use crate::abelian::IntMatrix;
use crate::cyclic_resolution::Bar;
use crate::cycleset::LinearCycleSet;
use crate::error::{Error, Result};
use crate::homology_engine::{total_complex, ChainComplex, DoubleComplex};
use crate::verdict::Verdict;

/// Largest total degree of the double complex.
pub const FULL_CAP: usize = 3;

#[derive(Clone, Debug)]
pub struct FullComplexSlice {
    pub lcs: LinearCycleSet,
    /// Top total degree `r + s`.
    pub cap: usize,
    /// `quotients[s - 1] = Mbar(s)`.
    pub quotients: Vec<ShuffleQuotient>,
    /// Positions `(r, s)` with `s >= 1` and `r + s <= cap`. Relations are
    /// stored below the top degree only; they are never needed there to
    /// compute cohomology below `cap`, and [`FullComplexSlice::relations_at`]
    /// builds them on demand.
    pub dc: DoubleComplex,
}

impl FullComplexSlice {
    pub fn v(&self) -> usize {
        self.lcs.v
    }

    /// Relations of `C_{rs}`: the shuffle relations of `Mbar(s)` repeated
    /// for every group tuple.
    pub fn relations_at(&self, r: usize, s: usize) -> IntMatrix {
        let n = Bar::new(self.v()).ngens(r);
        IntMatrix::identity(n).kron(&self.quotients[s - 1].module.relations)
    }

    /// The total complex through degree `cap`.
    pub fn total(&self) -> Result<ChainComplex> {
        total_complex(&self.dc, self.cap)
    }

    /// Anticommuting squares and `d^2 = 0` on the total complex.
    pub fn verify(&self) -> Verdict {
        let v = self.dc.verify();
        if !v.is_pass() {
            return v;
        }
        match self.total() {
            Ok(t) => t.verify(),
            Err(e) => Verdict::fail("total", vec![], e.to_string()),
        }
    }
}

fn sign(k: usize) -> i128 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Adds `c` at the generator `tuple` of the target column, unless some slot
/// is the identity.
fn put(m: &mut IntMatrix, bar: &Bar, tuple: &[usize], col: usize, c: i128) {
    if tuple.iter().all(|&e| e != 0) {
        m.add_to(bar.encode(tuple), col, &c);
    }
}

/// `dh_{rs}: C_{rs} -> C_{r-1,s}` for `r >= 1`: the leading term lets `g_1`
/// act on every later slot, then come the merges of adjacent group slots
/// and finally the deletion of `g_r`.
pub fn horizontal(lcs: &LinearCycleSet, r: usize, s: usize) -> IntMatrix {
    assert!(r >= 1);
    let v = lcs.v;
    let bar = Bar::new(v);
    let n = r + s;
    let mut m = IntMatrix::zeros(bar.ngens(n - 1), bar.ngens(n));
    for col in 0..bar.ngens(n) {
        let g = bar.decode(col, n);
        let acted: Vec<usize> = g[1..].iter().map(|&x| lcs.op(g[0], x)).collect();
        put(&mut m, &bar, &acted, col, 1);
        for j in 1..r {
            let mut t = g[..j - 1].to_vec();
            t.push((g[j - 1] + g[j]) % v);
            t.extend_from_slice(&g[j + 1..]);
            put(&mut m, &bar, &t, col, sign(j));
        }
        let mut t = g[..r - 1].to_vec();
        t.extend_from_slice(&g[r..]);
        put(&mut m, &bar, &t, col, sign(r));
    }
    m
}

/// `dv_{rs}: C_{rs} -> C_{r,s-1}` for `s >= 2`, the bar differential of the
/// bracket with trivial action on both sides, signed by `(-1)^r`.
pub fn vertical(v: usize, r: usize, s: usize) -> IntMatrix {
    assert!(s >= 2);
    let bar = Bar::new(v);
    let n = r + s;
    let mut m = IntMatrix::zeros(bar.ngens(n - 1), bar.ngens(n));
    for col in 0..bar.ngens(n) {
        let g = bar.decode(col, n);
        let mut t = g[..r].to_vec();
        t.extend_from_slice(&g[r + 1..]);
        put(&mut m, &bar, &t, col, sign(r + 1));
        for j in r + 1..n {
            let mut t = g[..j - 1].to_vec();
            t.push((g[j - 1] + g[j]) % v);
            t.extend_from_slice(&g[j + 1..]);
            put(&mut m, &bar, &t, col, sign(j + 1));
        }
        put(&mut m, &bar, &g[..n - 1], col, sign(n + 1));
    }
    m
}

/// The double complex through total degree `cap <= 3`.
pub fn full_double_complex(lcs: &LinearCycleSet, cap: usize) -> Result<FullComplexSlice> {
    if cap > FULL_CAP {
        return Err(Error::OutOfScope(format!("the full complex is built through degree {FULL_CAP}, asked for {cap}")));
    }
    let v = lcs.v;
    if v < 2 {
        return Err(Error::Domain("the cycle set must have at least two elements".into()));
    }
    let bar = Bar::new(v);
    let quotients = (1..=cap.max(1)).map(|s| shuffle_quotient(s, v)).collect::<Result<Vec<_>>>()?;
    let mut dc = DoubleComplex::default();
    for n in 1..=cap {
        for s in 1..=n {
            let r = n - s;
            dc.dims.insert((r, s), bar.ngens(n));
            if r >= 1 {
                dc.dh.insert((r, s), horizontal(lcs, r, s));
            }
            if s >= 2 {
                dc.dv.insert((r, s), vertical(v, r, s));
            }
        }
    }
    let mut slice = FullComplexSlice { lcs: lcs.clone(), cap, quotients, dc: DoubleComplex::default() };
    let mut relations = BTreeMap::new();
    for n in 1..cap {
        for s in 2..=n {
            relations.insert((n - s, s), slice.relations_at(n - s, s));
        }
    }
    dc.relations = relations;
    slice.dc = dc;
    Ok(slice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::smith_normal_form;
    use crate::cycleset::{make_cyclic_lcs, CyclicFamilyParams};

    fn lcs(p: u64, nu: u32, eta: u32) -> LinearCycleSet {
        make_cyclic_lcs(&CyclicFamilyParams::new(p, nu, eta).unwrap())
    }

    /// Whether `y` is an integer combination of the rows of `rel`.
    fn in_row_space(rel: &IntMatrix, y: &[i128]) -> bool {
        if rel.rows() == 0 {
            return y.iter().all(|&x| x == 0);
        }
        let snf = smith_normal_form(rel);
        let yv = IntMatrix::from_row_vecs(y.len(), vec![y.to_vec()]).mul(&snf.v);
        (0..y.len()).all(|i| {
            let w = *yv.get(0, i);
            if i < snf.rank {
                w % snf.s.get(i, i) == 0
            } else {
                w == 0
            }
        })
    }

    #[test]
    fn square_zero_small_example() {
        let s = full_double_complex(&lcs(2, 1, 2), 3).unwrap();
        let ver = s.verify();
        assert!(ver.is_pass(), "{ver}");
    }

    #[test]
    fn square_zero_family_and_trivial() {
        for pr in CyclicFamilyParams::all_up_to(9) {
            let c = make_cyclic_lcs(&pr);
            assert!(full_double_complex(&c, 3).unwrap().verify().is_pass(), "{pr}");
        }
        for v in 2..6 {
            assert!(full_double_complex(&LinearCycleSet::trivial(v), 3).unwrap().verify().is_pass());
        }
    }

    #[test]
    fn degree_one_column_is_zero() {
        let s = full_double_complex(&lcs(3, 1, 1), 2).unwrap();
        assert!(s.dc.v(0, 1).is_zero());
        assert!(s.dc.v(1, 1).is_zero());
    }

    #[test]
    fn trivial_leading_term() {
        // For the trivial cycle set the leading term of dh_11 on g^a (x) [g^b] is [g^b],
        // which cancels the deletion of g^a.
        let s = full_double_complex(&LinearCycleSet::trivial(4), 2).unwrap();
        assert!(s.dc.h(1, 1).is_zero());
        let c = full_double_complex(&lcs(2, 1, 2), 2).unwrap();
        let bar = Bar::new(4);
        // g^1 (x) [g^1] -> [g^{(1-2)1}] - [g^1] = [g^3] - [g^1].
        let col = c.dc.h(1, 1).column(bar.encode(&[1, 1]));
        assert_eq!(col, vec![-1, 0, 1]);
    }

    #[test]
    fn differentials_respect_shuffle_relations() {
        for pr in [CyclicFamilyParams::new(2, 1, 2).unwrap(), CyclicFamilyParams::new(3, 1, 1).unwrap()] {
            let s = full_double_complex(&make_cyclic_lcs(&pr), 3).unwrap();
            for &(r, q) in s.dc.dims.keys() {
                if q < 2 {
                    continue;
                }
                let src = s.relations_at(r, q);
                let maps: Vec<(IntMatrix, IntMatrix)> = {
                    let mut out = vec![(s.dc.v(r, q), s.relations_at(r, q - 1))];
                    if r >= 1 {
                        out.push((s.dc.h(r, q), s.relations_at(r - 1, q)));
                    }
                    out
                };
                for (d, target_rel) in maps {
                    let image = src.mul(&d.transpose());
                    for k in 0..image.rows() {
                        assert!(in_row_space(&target_rel, image.row(k)), "{pr} at ({r},{q}) relation {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(full_double_complex(&lcs(2, 1, 1), 4), Err(Error::OutOfScope(_))));
    }
}
