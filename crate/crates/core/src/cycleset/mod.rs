//! Finite linear cycle sets on `Z/v`, the cyclic family
//! `i.j = (1 - u i) j`, and the associated set-theoretic Yang-Baxter map.

mod ybe;

use serde::{Deserialize, Serialize};

use crate::abelian::is_prime;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

pub use ybe::{derived_ybe_solution, YbeMap};

/// Parameters `(p, nu, eta)` with `p` prime and `0 < nu <= eta <= 2 nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicFamilyParams {
    pub p: u64,
    pub nu: u32,
    pub eta: u32,
}

impl CyclicFamilyParams {
    pub fn new(p: u64, nu: u32, eta: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("p = {p} is not prime")));
        }
        if nu == 0 || eta < nu || eta > 2 * nu {
            return Err(Error::Domain(format!("need 0 < nu <= eta <= 2 nu, got nu = {nu}, eta = {eta}")));
        }
        let v = p.checked_pow(eta).filter(|&v| v <= 1 << 20);
        if v.is_none() {
            return Err(Error::Domain(format!("v = {p}^{eta} is too large")));
        }
        Ok(CyclicFamilyParams { p, nu, eta })
    }

    pub fn u(&self) -> u64 {
        self.p.pow(self.nu)
    }

    pub fn v(&self) -> u64 {
        self.p.pow(self.eta)
    }

    pub fn t(&self) -> u64 {
        self.p.pow(self.eta - self.nu)
    }

    /// `u' = p^{2 nu - eta}`, so that `u' t = u`.
    pub fn u_prime(&self) -> u64 {
        self.p.pow(2 * self.nu - self.eta)
    }

    /// Every admissible parameter triple with `v <= max_v`.
    pub fn all_up_to(max_v: u64) -> Vec<CyclicFamilyParams> {
        let mut out = Vec::new();
        for p in (2..=max_v).filter(|&p| is_prime(p)) {
            for eta in 1.. {
                if p.pow(eta) > max_v {
                    break;
                }
                for nu in eta.div_ceil(2)..=eta {
                    out.push(CyclicFamilyParams { p, nu, eta });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for CyclicFamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, nu={}, eta={})", self.p, self.nu, self.eta)
    }
}

/// A binary operation on `Z/v` stored as a dense table, `dot[i][j] = i.j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCycleSet {
    pub v: usize,
    pub dot: Vec<Vec<usize>>,
}

impl LinearCycleSet {
    pub fn from_table(dot: Vec<Vec<usize>>) -> Result<Self> {
        let v = dot.len();
        if v == 0 || dot.iter().any(|r| r.len() != v || r.iter().any(|&x| x >= v)) {
            return Err(Error::Domain("operation table must be square with entries below its size".into()));
        }
        Ok(LinearCycleSet { v, dot })
    }

    pub fn from_fn(v: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        LinearCycleSet { v, dot: (0..v).map(|i| (0..v).map(|j| f(i, j) % v).collect()).collect() }
    }

    /// The trivial cycle set `i.j = j`.
    pub fn trivial(v: usize) -> Self {
        Self::from_fn(v, |_, j| j)
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.dot[a][b]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.v
    }
}

/// `i.j = (1 - u i) j mod v`.
pub fn make_cyclic_lcs(params: &CyclicFamilyParams) -> LinearCycleSet {
    let (u, v) = (params.u() as i64, params.v() as i64);
    LinearCycleSet::from_fn(v as usize, |i, j| ((1 - u * i as i64) * j as i64).rem_euclid(v) as usize)
}

/// Checks bijectivity of left translations and
/// `(a.b).(a.c) = (b.a).(b.c)`, reporting the first violation.
pub fn verify_cycle_set(cs: &LinearCycleSet) -> Verdict {
    let v = cs.v;
    for a in 0..v {
        let mut seen = vec![false; v];
        for b in 0..v {
            let x = cs.op(a, b);
            if seen[x] {
                return Verdict::fail("left translation bijective", vec![a as i64], format!("translation by {a} repeats {x}"));
            }
            seen[x] = true;
        }
    }
    for a in 0..v {
        for b in 0..v {
            for c in 0..v {
                let l = cs.op(cs.op(a, b), cs.op(a, c));
                let r = cs.op(cs.op(b, a), cs.op(b, c));
                if l != r {
                    return Verdict::fail(
                        "cycle set identity",
                        vec![a as i64, b as i64, c as i64],
                        format!("(a.b).(a.c) = {l} but (b.a).(b.c) = {r}"),
                    );
                }
            }
        }
    }
    Verdict::pass()
}

/// Checks `a.(b+c) = a.b + a.c` and `(a+b).c = (a.b).(a.c)` exhaustively.
pub fn verify_linear(cs: &LinearCycleSet) -> Verdict {
    let v = cs.v;
    for a in 0..v {
        for b in 0..v {
            for c in 0..v {
                let l = cs.op(a, cs.add(b, c));
                let r = cs.add(cs.op(a, b), cs.op(a, c));
                if l != r {
                    return Verdict::fail(
                        "left distributivity",
                        vec![a as i64, b as i64, c as i64],
                        format!("a.(b+c) = {l} but a.b + a.c = {r}"),
                    );
                }
            }
        }
    }
    for a in 0..v {
        for b in 0..v {
            for c in 0..v {
                let l = cs.op(cs.add(a, b), c);
                let r = cs.op(cs.op(a, b), cs.op(a, c));
                if l != r {
                    return Verdict::fail(
                        "sum compatibility",
                        vec![a as i64, b as i64, c as i64],
                        format!("(a+b).c = {l} but (a.b).(a.c) = {r}"),
                    );
                }
            }
        }
    }
    Verdict::pass()
}

/// `{ j : i.j = j for every i }`, in increasing order.
pub fn invariant_elements(cs: &LinearCycleSet) -> Vec<usize> {
    (0..cs.v).filter(|&j| (0..cs.v).all(|i| cs.op(i, j) == j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, nu: u32, eta: u32) -> CyclicFamilyParams {
        CyclicFamilyParams::new(p, nu, eta).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let q = params(3, 2, 3);
        assert_eq!((q.u(), q.v(), q.t(), q.u_prime()), (9, 27, 3, 3));
        assert_eq!(q.u_prime() * q.t(), q.u());
        assert!(CyclicFamilyParams::new(4, 1, 1).is_err());
        assert!(CyclicFamilyParams::new(2, 1, 3).is_err());
        assert!(CyclicFamilyParams::new(2, 0, 0).is_err());
        assert!(CyclicFamilyParams::new(2, 2, 1).is_err());
    }

    #[test]
    fn table_entries() {
        assert_eq!(make_cyclic_lcs(&params(2, 1, 2)).op(1, 1), 3);
        assert_eq!(make_cyclic_lcs(&params(3, 1, 2)).op(1, 1), 7);
        let triv = make_cyclic_lcs(&params(2, 1, 1));
        assert_eq!(triv, LinearCycleSet::trivial(2));
    }

    #[test]
    fn family_members_are_linear_cycle_sets() {
        for q in CyclicFamilyParams::all_up_to(27) {
            let cs = make_cyclic_lcs(&q);
            assert!(verify_cycle_set(&cs).is_pass(), "{q}");
            assert!(verify_linear(&cs).is_pass(), "{q}");
            let inv = invariant_elements(&cs);
            let expected: Vec<usize> = (0..q.u()).map(|k| (k * q.t()) as usize).collect();
            assert_eq!(inv, expected, "{q}");
        }
    }

    #[test]
    fn enumerated_parameters() {
        let all = CyclicFamilyParams::all_up_to(9);
        let v: Vec<(u64, u32, u32)> = all.iter().map(|q| (q.p, q.nu, q.eta)).collect();
        for x in [(2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 1), (3, 1, 2), (3, 2, 2), (5, 1, 1), (7, 1, 1)] {
            assert!(v.contains(&x), "{x:?}");
        }
        assert!(!v.contains(&(2, 1, 3)));
    }

    #[test]
    fn bad_tables_are_reported() {
        let bad = LinearCycleSet::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let verdict = verify_cycle_set(&bad);
        assert_eq!(verdict.check(), Some("cycle set identity"));
        assert_eq!(verdict.failure.unwrap().witness.len(), 3);

        let shift = LinearCycleSet::from_fn(4, |i, j| i + j);
        let verdict = verify_linear(&shift);
        assert_eq!(verdict.check(), Some("left distributivity"));

        let repeat = LinearCycleSet::from_table(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(verify_cycle_set(&repeat).check(), Some("left translation bijective"));
    }

    #[test]
    fn trivial_cycle_set_passes() {
        for v in 1..8 {
            let t = LinearCycleSet::trivial(v);
            assert!(verify_cycle_set(&t).is_pass());
            assert!(verify_linear(&t).is_pass());
            assert_eq!(invariant_elements(&t).len(), v);
        }
    }
}
