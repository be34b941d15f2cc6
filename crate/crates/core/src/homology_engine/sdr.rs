use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, DoubleComplex};
use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// A special deformation retract between a small complex `x` and a big
/// complex `c`.
///
/// `i[n] : X_n -> C_n`, `p[n] : C_n -> X_n` and `h[n] : C_n -> C_{n+1}`.
/// The vectors may be shorter than the complexes when a truncation leaves a
/// top-degree map undetermined; identities are checked wherever all the
/// maps they involve are present. The homotopy convention is
/// `i p - id = d h + h d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sdr {
    pub x: ChainComplex,
    pub c: ChainComplex,
    pub i: Vec<IntMatrix>,
    pub p: Vec<IntMatrix>,
    pub h: Vec<IntMatrix>,
}

/// A degree `-1` map on the big complex of an [`Sdr`], together with a
/// nilpotency bound `n0` for `delta h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    /// `delta[n] : C_n -> C_{n-1}` for `n >= 1`; `delta[0]` is ignored.
    pub delta: Vec<IntMatrix>,
    pub n0: usize,
}

impl Perturbation {
    pub fn new(delta: Vec<IntMatrix>, n0: usize) -> Self {
        Perturbation { delta, n0 }
    }

    pub fn zero(c: &ChainComplex) -> Self {
        let delta = (0..=c.n_max()).map(|n| c.d[n].scale(&0)).collect();
        Perturbation { delta, n0: 1 }
    }
}

impl Sdr {
    /// The identity retract of a complex onto itself.
    pub fn identity(c: &ChainComplex) -> Self {
        let eye: Vec<IntMatrix> = c.dims.iter().map(|&n| IntMatrix::identity(n)).collect();
        let h = (0..c.n_max()).map(|n| IntMatrix::zeros(c.dims[n + 1], c.dims[n])).collect();
        Sdr { x: c.clone(), c: c.clone(), i: eye.clone(), p: eye, h }
    }

    fn dx(&self, n: usize) -> &IntMatrix {
        &self.x.d[n]
    }

    fn dc(&self, n: usize) -> &IntMatrix {
        &self.c.d[n]
    }

    /// Checks the seven identities degreewise, reporting the first failure.
    pub fn verify(&self) -> Verdict {
        let (i, p, h) = (&self.i, &self.p, &self.h);
        let top = self.x.n_max().min(self.c.n_max());
        for n in 0..=top {
            let w = vec![n as i64];
            if n < p.len() && n < i.len() && !p[n].mul(&i[n]).is_identity() {
                return Verdict::fail("p∘i", w, format!("p_{n} i_{n} is not the identity"));
            }
            if n >= 1 && n < p.len() && !self.dx(n).mul(&p[n]).eq(&p[n - 1].mul(self.dc(n))) {
                return Verdict::fail("d∘p", w, format!("p is not a chain map at degree {n}"));
            }
            if n >= 1 && n < i.len() && !self.dc(n).mul(&i[n]).eq(&i[n - 1].mul(self.dx(n))) {
                return Verdict::fail("d∘i", w, format!("i is not a chain map at degree {n}"));
            }
            if n < h.len() && n < i.len() && n < p.len() {
                let lhs = i[n].mul(&p[n]).sub(&IntMatrix::identity(self.c.dims[n]));
                let mut rhs = self.dc(n + 1).mul(&h[n]);
                if n >= 1 {
                    rhs = rhs.add(&h[n - 1].mul(self.dc(n)));
                }
                if lhs != rhs {
                    return Verdict::fail("i∘p-id=dh+hd", w, format!("homotopy identity fails at degree {n}"));
                }
            }
            if n < h.len() && n < i.len() && !h[n].mul(&i[n]).is_zero() {
                return Verdict::fail("h∘i", w, format!("h_{n} i_{n} is nonzero"));
            }
            if n < h.len() && n + 1 < p.len() && !p[n + 1].mul(&h[n]).is_zero() {
                return Verdict::fail("p∘h", w, format!("p_{} h_{n} is nonzero", n + 1));
            }
            if n + 1 < h.len() && !h[n + 1].mul(&h[n]).is_zero() {
                return Verdict::fail("h∘h", w, format!("h_{} h_{n} is nonzero", n + 1));
            }
        }
        Verdict::pass()
    }
}

/// Checks `(d + delta)^2 = 0` on the big complex.
fn check_perturbed_square(c: &ChainComplex, delta: &Perturbation) -> Result<()> {
    for n in 2..=c.n_max() {
        let a = c.d[n - 1].add(&delta.delta[n - 1]);
        let b = c.d[n].add(&delta.delta[n]);
        if !a.mul(&b).is_zero() {
            return Err(Error::InconsistentComplex(format!("(d + delta)^2 is nonzero at degree {n}")));
        }
    }
    Ok(())
}

/// `A_n = sum_{k < n0} (delta_n h_{n-1})^k delta_n : C_n -> C_{n-1}` after
/// certifying `(delta_n h_{n-1})^{n0} = 0`.
fn transfer_series(c: &ChainComplex, h: &[IntMatrix], delta: &Perturbation, n: usize) -> Result<IntMatrix> {
    let dn = &delta.delta[n];
    let Some(hn) = h.get(n - 1) else {
        return Ok(dn.clone());
    };
    let dh = dn.mul(hn);
    let mut power = IntMatrix::identity(c.dims[n - 1]);
    let mut sum = IntMatrix::zeros(c.dims[n - 1], c.dims[n - 1]);
    for _ in 0..delta.n0 {
        sum = sum.add(&power);
        power = dh.mul(&power);
    }
    if !power.is_zero() {
        return Err(Error::NotSmall(format!("(delta h)^{} is nonzero at degree {}", delta.n0, n - 1)));
    }
    Ok(sum.mul(dn))
}

/// Output of [`perturb_sdr`].
#[derive(Clone, Debug)]
pub struct PerturbedSdr {
    pub sdr: Sdr,
    /// The maps `A_n` used in the transfer, indexed by degree (`a[0]` empty).
    pub a: Vec<IntMatrix>,
}

/// The basic perturbation lemma.
///
/// Produces `d^1 = d + p A i`, `i^1 = i + h A i`, `p^1 = p + p A h`,
/// `h^1 = h + h A h` on the perturbed big complex `(C, d + delta)`. The map
/// `p^1_n` needs `A_{n+1}`, so it is omitted at the top degree of `C`.
pub fn perturb_sdr(s: &Sdr, delta: &Perturbation) -> Result<PerturbedSdr> {
    let c = &s.c;
    if delta.delta.len() != c.dims.len() {
        return Err(Error::InconsistentComplex("one perturbation matrix per degree is required".into()));
    }
    check_perturbed_square(c, delta)?;
    let top = c.n_max();
    let mut a = vec![IntMatrix::zeros(0, c.dims[0])];
    for n in 1..=top {
        a.push(transfer_series(c, &s.h, delta, n)?);
    }
    let xd: Vec<IntMatrix> = (1..=top).map(|n| s.x.d[n].add(&s.p[n - 1].mul(&a[n]).mul(&s.i[n]))).collect();
    let cd: Vec<IntMatrix> = (1..=top).map(|n| c.d[n].add(&delta.delta[n])).collect();
    let i1: Vec<IntMatrix> = (0..=top)
        .map(|n| if n == 0 { s.i[0].clone() } else { s.i[n].add(&s.h[n - 1].mul(&a[n]).mul(&s.i[n])) })
        .collect();
    let p1: Vec<IntMatrix> = (0..top.min(s.h.len())).map(|n| s.p[n].add(&s.p[n].mul(&a[n + 1]).mul(&s.h[n]))).collect();
    let h1: Vec<IntMatrix> = (0..s.h.len().min(top)).map(|n| s.h[n].add(&s.h[n].mul(&a[n + 1]).mul(&s.h[n]))).collect();
    let x = ChainComplex::presented(s.x.dims.clone(), xd, s.x.relations.clone())?;
    let c1 = ChainComplex::presented(c.dims.clone(), cd, c.relations.clone())?;
    Ok(PerturbedSdr { sdr: Sdr { x, c: c1, i: i1, p: p1, h: h1 }, a })
}

/// Output of [`perturb_double_complex`].
#[derive(Clone, Debug)]
pub struct PerturbedDoubleComplex {
    /// The small double complex with transferred horizontal differential and
    /// the original vertical one.
    pub x: DoubleComplex,
    /// Transferred row data, keyed by the row index `s`.
    pub rows: BTreeMap<usize, PerturbedSdr>,
}

/// Row-wise transfer for double complexes.
///
/// `rows[s]` is an SDR between row `s` of `x` and row `s` of `c`, with the
/// horizontal perturbation `deltas[s]`. The vertical differentials of `x`
/// and `c` are kept. Verifies that `i^1`, `p^1` commute with both
/// differentials, `p^1 i^1 = id`, and the row homotopy identity, on every
/// degree where the involved maps are present.
pub fn perturb_double_complex(
    x: &DoubleComplex,
    c: &DoubleComplex,
    rows: &BTreeMap<usize, Sdr>,
    deltas: &BTreeMap<usize, Perturbation>,
) -> Result<PerturbedDoubleComplex> {
    let mut out = x.clone();
    let mut transferred = BTreeMap::new();
    for (&s, sdr) in rows {
        let delta = deltas.get(&s).cloned().unwrap_or_else(|| Perturbation::zero(&sdr.c));
        let res = perturb_sdr(sdr, &delta)?;
        let v = res.sdr.verify();
        if !v.is_pass() {
            return Err(Error::Verification(format!("row {s}: {v}")));
        }
        for r in 1..=res.sdr.x.n_max() {
            out.dh.insert((r, s), res.sdr.x.d[r].clone());
        }
        transferred.insert(s, res);
    }
    // Compatibility with the vertical differentials.
    for (&s, res) in &transferred {
        let Some(below) = s.checked_sub(1).and_then(|b| transferred.get(&b)) else { continue };
        for r in 0..res.sdr.i.len().min(below.sdr.i.len()) {
            if c.v(r, s).mul(&res.sdr.i[r]) != below.sdr.i[r].mul(&x.v(r, s)) {
                return Err(Error::Verification(format!("i^1 does not commute with dv at ({r},{s})")));
            }
        }
        for r in 0..res.sdr.p.len().min(below.sdr.p.len()) {
            if x.v(r, s).mul(&res.sdr.p[r]) != below.sdr.p[r].mul(&c.v(r, s)) {
                return Err(Error::Verification(format!("p^1 does not commute with dv at ({r},{s})")));
            }
        }
    }
    Ok(PerturbedDoubleComplex { x: out, rows: transferred })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn free(dims: Vec<usize>, d: Vec<IntMatrix>) -> ChainComplex {
        ChainComplex::free(dims, d).unwrap()
    }

    #[test]
    fn identity_sdr_passes() {
        let c = free(vec![1, 2, 1], vec![IntMatrix::from_rows(&[[1, -1]]), IntMatrix::from_rows(&[[1], [1]])]);
        assert!(c.verify().is_pass());
        assert!(Sdr::identity(&c).verify().is_pass());
    }

    /// `X = 0` retract of `b0 <- {a1, b1} <- {a2, z}` with `d a1 = b0`,
    /// `d a2 = b1`, `d z = 0`.
    fn contractible(h1_to_z: bool) -> Sdr {
        let x = free(vec![0, 0, 0], vec![IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)]);
        let c = free(vec![1, 2, 2], vec![IntMatrix::from_rows(&[[1, 0]]), IntMatrix::from_rows(&[[0, 0], [1, 0]])]);
        let h0 = IntMatrix::from_rows(&[[-1], [0]]);
        let h1 = if h1_to_z { IntMatrix::from_rows(&[[0, -1], [1, 0]]) } else { IntMatrix::from_rows(&[[0, -1], [0, 0]]) };
        Sdr {
            x,
            c,
            i: vec![IntMatrix::zeros(1, 0), IntMatrix::zeros(2, 0), IntMatrix::zeros(2, 0)],
            p: vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 2), IntMatrix::zeros(0, 2)],
            h: vec![h0, h1],
        }
    }

    #[test]
    fn injected_hh_failure() {
        assert!(contractible(false).verify().is_pass());
        assert_eq!(contractible(true).verify().check(), Some("h∘h"));
    }

    #[test]
    fn zero_perturbation_is_identity_on_data() {
        let c = free(vec![1, 2, 1], vec![IntMatrix::from_rows(&[[1, -1]]), IntMatrix::from_rows(&[[1], [1]])]);
        let s = Sdr::identity(&c);
        let out = perturb_sdr(&s, &Perturbation::zero(&c)).unwrap();
        assert_eq!(out.sdr.x, s.x);
        assert_eq!(out.sdr.i, s.i);
        assert_eq!(out.sdr.h, s.h);
        assert_eq!(out.sdr.p[..], s.p[..2]);
    }

    #[test]
    fn geometric_series_truncates_when_delta_h_vanishes() {
        let s = contractible(false);
        // delta_2 sends z to b1; delta_2 h_1 = 0 on C_1 since h_1 never hits z.
        let delta = Perturbation::new(
            vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 2), IntMatrix::from_rows(&[[0, 0], [0, 1]])],
            1,
        );
        let out = perturb_sdr(&s, &delta).unwrap();
        assert_eq!(out.a[2], delta.delta[2]);
    }

    #[test]
    fn non_square_zero_perturbation_rejected() {
        let c = free(vec![1, 1, 1], vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(1, 1)]);
        let s = Sdr::identity(&c);
        let one = IntMatrix::identity(1);
        let bad = Perturbation::new(vec![IntMatrix::zeros(0, 1), one.clone(), one], 1);
        assert!(matches!(perturb_sdr(&s, &bad), Err(Error::InconsistentComplex(_))));
    }

    #[test]
    fn non_nilpotent_rejected() {
        let x = free(vec![0, 0], vec![IntMatrix::zeros(0, 0)]);
        let c = free(vec![1, 1], vec![IntMatrix::identity(1)]);
        let s = Sdr {
            x,
            c,
            i: vec![IntMatrix::zeros(1, 0), IntMatrix::zeros(1, 0)],
            p: vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(0, 1)],
            h: vec![IntMatrix::from_rows(&[[-1]])],
        };
        assert!(s.verify().is_pass());
        // delta h = 2 on C_0.
        let delta = Perturbation::new(vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[[-2]])], 3);
        assert!(matches!(perturb_sdr(&s, &delta), Err(Error::NotSmall(_))));
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Gen {
        X(usize),
        A(usize),
        B(usize),
    }

    /// A retract of `C = X + K` onto `X` (zero differential), where `K` is a
    /// sum of elementary contractible pieces `a_n -> b_{n-1}`, graded by a
    /// weight. The perturbation conjugates `d` by a unipotent automorphism
    /// lowering the weight, so `delta h` is nilpotent.
    fn model(weights: usize, top: usize, seed: u64) -> (Sdr, Perturbation) {
        let mut state = seed | 1;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 5) as i128 - 2
        };
        let basis = |n: usize| -> Vec<Gen> {
            let mut b = Vec::new();
            for w in 0..weights {
                b.push(Gen::X(w));
                if n >= 1 {
                    b.push(Gen::A(w));
                }
                if n < top {
                    b.push(Gen::B(w));
                }
            }
            b
        };
        let weight = |g: Gen| match g {
            Gen::X(w) | Gen::A(w) | Gen::B(w) => w,
        };
        let bases: Vec<Vec<Gen>> = (0..=top).map(basis).collect();
        let idx = |n: usize, g: Gen| bases[n].iter().position(|&x| x == g).unwrap();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut d = Vec::new();
        for n in 1..=top {
            let mut m = IntMatrix::zeros(dims[n - 1], dims[n]);
            for w in 0..weights {
                m.set(idx(n - 1, Gen::B(w)), idx(n, Gen::A(w)), 1);
            }
            d.push(m);
        }
        let c = free(dims.clone(), d);
        let x = free(vec![weights; top + 1], vec![IntMatrix::zeros(weights, weights); top]);
        let mut i = Vec::new();
        let mut p = Vec::new();
        let mut h = Vec::new();
        for n in 0..=top {
            let mut im = IntMatrix::zeros(dims[n], weights);
            for w in 0..weights {
                im.set(idx(n, Gen::X(w)), w, 1);
            }
            p.push(im.transpose());
            i.push(im);
            if n < top {
                let mut hm = IntMatrix::zeros(dims[n + 1], dims[n]);
                for w in 0..weights {
                    hm.set(idx(n + 1, Gen::A(w)), idx(n, Gen::B(w)), -1);
                }
                h.push(hm);
            }
        }
        let sdr = Sdr { x, c: c.clone(), i, p, h };
        let mut g = Vec::new();
        let mut ginv = Vec::new();
        for n in 0..=top {
            let mut nil = IntMatrix::zeros(dims[n], dims[n]);
            for (r, &gr) in bases[n].iter().enumerate() {
                for (col, &gc) in bases[n].iter().enumerate() {
                    if weight(gr) < weight(gc) {
                        nil.set(r, col, rnd());
                    }
                }
            }
            // (id + N)^{-1} = sum (-N)^k, finite since N is nilpotent.
            let mut inv = IntMatrix::identity(dims[n]);
            let mut pow = IntMatrix::identity(dims[n]);
            for _ in 0..weights {
                pow = pow.mul(&nil.neg());
                inv = inv.add(&pow);
            }
            g.push(IntMatrix::identity(dims[n]).add(&nil));
            ginv.push(inv);
        }
        let mut delta = vec![IntMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            delta.push(g[n - 1].mul(&c.d[n]).mul(&ginv[n]).sub(&c.d[n]));
        }
        (sdr, Perturbation::new(delta, weights))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn transferred_retract_verifies(seed in any::<u64>(), weights in 1usize..4, top in 1usize..5) {
            let (s, delta) = model(weights, top, seed);
            prop_assert!(s.verify().is_pass(), "{}", s.verify());
            let out = perturb_sdr(&s, &delta).unwrap();
            let v = out.sdr.verify();
            prop_assert!(v.is_pass(), "{}", v);
            prop_assert!(out.sdr.x.verify().is_pass());
            prop_assert!(out.sdr.c.verify().is_pass());
        }
    }
}
