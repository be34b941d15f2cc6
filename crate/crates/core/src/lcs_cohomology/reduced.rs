//! The reduced double complex of the cyclic family, obtained by
//! transferring the perturbation `dh(A) - dh(A_tr)` along the row retracts
//! `Xbar_*(Mbar(s)) <-> Dbar^{(x) *} (x) Mbar(s)`.
//!
//! Position `(r, s)` of the reduced complex is `Xbar_r(Mbar(s))`, the sum of
//! the cells `Mbar(s)_{a, r-a}` laid out by increasing `a`. Everything is
//! kept through total degree 3.

use std::collections::BTreeMap;

use num_integer::binomial;

use super::full::{vertical, FULL_CAP};
use super::shuffle::{shuffle_quotient, ShuffleQuotient};
use crate::abelian::IntMatrix;
use crate::cyclic_resolution::{coefficient_complex_from, comparison_for_shape, ring_mul, Bar, RingElt, Shape};
use crate::cycleset::CyclicFamilyParams;
use crate::error::{Error, Result};
use crate::homology_engine::{
    block_diagonal, perturb_double_complex, perturb_sdr, total_complex, ChainComplex, DoubleComplex, Perturbation,
    PerturbedSdr, Sdr,
};
use crate::verdict::Verdict;

/// The rows of the perturbation, keyed by `s`. `rows[s].delta[r]` is the
/// map `C_{rs} -> C_{r-1,s}`.
#[derive(Clone, Debug)]
pub struct PerturbationRows {
    pub rows: BTreeMap<usize, Perturbation>,
    /// `(delta h)^{n0} = 0` on every row, with `n0 = t`.
    pub n0: usize,
}

fn dot(shape: &Shape, a: usize, b: usize) -> usize {
    let v = shape.v as i64;
    ((1 - shape.u as i64 * a as i64) * b as i64).rem_euclid(v) as usize
}

/// The perturbation for the cyclic family: the leading term of `dh` with
/// the cycle-set action, minus the same term for the trivial action.
pub fn perturbation_delta(params: &CyclicFamilyParams) -> Result<PerturbationRows> {
    let shape = Shape::of(params)?;
    let bar = Bar::new(shape.v);
    let mut rows = BTreeMap::new();
    for s in 1..=FULL_CAP {
        let top = FULL_CAP - s;
        let mut delta = vec![IntMatrix::zeros(0, bar.ngens(s))];
        for r in 1..=top {
            let mut m = IntMatrix::zeros(bar.ngens(r + s - 1), bar.ngens(r + s));
            for col in 0..bar.ngens(r + s) {
                let g = bar.decode(col, r + s);
                let acted: Vec<usize> = g[1..].iter().map(|&x| dot(&shape, g[0], x)).collect();
                m.add_to(bar.encode(&acted), col, &1);
                m.add_to(bar.encode(&g[1..]), col, &-1);
            }
            delta.push(m);
        }
        rows.insert(s, Perturbation::new(delta, shape.t));
    }
    Ok(PerturbationRows { rows, n0: shape.t })
}

/// `g^e` in `Z[C_v]`.
fn g(shape: &Shape, e: i64) -> RingElt {
    shape.basis(e.rem_euclid(shape.v as i64) as usize)
}

fn ring_add(a: &mut RingElt, b: &[i128], c: i128) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += c * y;
    }
}

/// The image of a ring element in `Dbar = I(C_v)` modulo nothing: drop the
/// coefficient of `g^0`.
fn project(z: &[i128]) -> Vec<i128> {
    z[1..].to_vec()
}

/// Closed formulas for the horizontal arrows of the reduced complex,
/// keyed by the position `(r, s)` they leave.
pub fn closed_arrows(shape: &Shape) -> BTreeMap<(usize, usize), IntMatrix> {
    let (u, t, v) = (shape.u as i64, shape.t as i64, shape.v);
    let up = u / t;
    let m = v - 1;
    let mut out = BTreeMap::new();

    // (1,1): Mbar(1)_{01} -> Mbar(1)_{00}, g^i -> g^{(1-u) i} - g^i.
    let mut d11 = IntMatrix::zeros(m, 2 * m);
    for i in 1..v as i64 {
        let mut z = g(shape, (1 - u) * i);
        ring_add(&mut z, &g(shape, i), -1);
        put_column(&mut d11, 0, (i - 1) as usize, &project(&z));
    }
    out.insert((1, 1), d11);

    let mut d21 = IntMatrix::zeros(2 * m, 3 * m);
    for i in 1..v as i64 {
        let col = (i - 1) as usize;
        // From Mbar(1)_{02}.
        let mut to01 = vec![0; v];
        for s in 0..t {
            ring_add(&mut to01, &g(shape, i * (1 - s * u)), -1);
        }
        put_column(&mut d21, 0, col, &project(&to01));
        let mut to10 = g(shape, i);
        to10.iter_mut().for_each(|x| *x = -*x);
        for s in 1..t {
            ring_add(&mut to10, &g(shape, i * (1 - u * s)), (up * s) as i128);
        }
        put_column(&mut d21, m, col, &project(&to10));
        // From Mbar(1)_{11}.
        let mut z = g(shape, i);
        ring_add(&mut z, &g(shape, (1 - u) * i), -1);
        put_column(&mut d21, m, m + col, &project(&z));
        // From Mbar(1)_{20}.
        let mut z = vec![0; v];
        ring_add(&mut z, &g(shape, i), u as i128);
        put_column(&mut d21, m, 2 * m + col, &project(&z));
    }
    out.insert((2, 1), d21);

    // (1,2): Mbar(2)_{01} -> Mbar(2)_{00}.
    let bar = Bar::new(v);
    let m2 = m * m;
    let mut d12 = IntMatrix::zeros(m2, 2 * m2);
    for col in 0..m2 {
        let tup = bar.decode(col, 2);
        let acted: Vec<usize> = tup.iter().map(|&x| ((1 - u) * x as i64).rem_euclid(v as i64) as usize).collect();
        d12.add_to(bar.encode(&acted), col, &1);
        d12.add_to(col, col, &-1);
    }
    out.insert((1, 2), d12);
    out
}

fn put_column(m: &mut IntMatrix, row0: usize, col: usize, x: &[i128]) {
    for (k, &c) in x.iter().enumerate() {
        if c != 0 {
            m.add_to(row0 + k, col, &c);
        }
    }
}

/// The components of the comparison map `phi_hat_11` from
/// `Dbar (x) Mbar(1)` to the cells `Mbar(1)_{01}` and `Mbar(1)_{10}`.
/// Column `(e - 1)(v - 1) + (i_1 - 1)` is the generator `g^e (x) g^{i_1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiHat {
    pub to01: IntMatrix,
    pub to10: IntMatrix,
}

impl PhiHat {
    /// The full matrix `Dbar (x) Mbar(1) -> Xbar_1(Mbar(1))`.
    pub fn matrix(&self) -> IntMatrix {
        self.to01.vstack(&self.to10)
    }
}

fn phi_hat_with(shape: &Shape, f01: impl Fn(i64, i64, i64) -> RingElt, f10: impl Fn(i64, i64, i64) -> RingElt) -> PhiHat {
    let v = shape.v;
    let t = shape.t as i64;
    let m = v - 1;
    let mut to01 = IntMatrix::zeros(m, m * m);
    let mut to10 = IntMatrix::zeros(m, m * m);
    for e in 1..v as i64 {
        let (i, j) = (e / t, e % t);
        for i1 in 1..v as i64 {
            let col = ((e - 1) * m as i64 + i1 - 1) as usize;
            put_column(&mut to01, 0, col, &project(&f01(i, j, i1)));
            put_column(&mut to10, 0, col, &project(&f10(i, j, i1)));
        }
    }
    PhiHat { to01, to10 }
}

/// `phi_hat_11` by the sums over `l`.
pub fn phi_hat_closed(shape: &Shape) -> PhiHat {
    let (u, t) = (shape.u as i64, shape.t as i64);
    let up = u / t;
    let v = shape.v;
    phi_hat_with(
        shape,
        |_, j, i1| {
            let mut z = vec![0; v];
            for l in 0..j {
                ring_add(&mut z, &g(shape, i1 - u * l * i1), 1);
            }
            z
        },
        |i, j, i1| {
            let mut z = vec![0; v];
            ring_add(&mut z, &g(shape, i1), -(i as i128));
            for l in 1..j {
                ring_add(&mut z, &g(shape, i1 - u * l * i1), (up * (j - l - t)) as i128);
            }
            z
        },
    )
}

/// `phi_hat_11` by the expansions in powers of `g^{-u i_1} - 1`.
pub fn phi_hat_binomial(shape: &Shape) -> PhiHat {
    let (u, t) = (shape.u as i64, shape.t as i64);
    let up = u / t;
    let v = shape.v;
    let powers = |i1: i64, n: i64| -> Vec<RingElt> {
        let mut base = g(shape, -u * i1);
        base[0] -= 1;
        let mut out = vec![g(shape, 0)];
        for k in 1..=n.max(0) as usize {
            out.push(ring_mul(&out[k - 1], &base));
        }
        out
    };
    phi_hat_with(
        shape,
        |_, j, i1| {
            let pw = powers(i1, j);
            let mut z = vec![0; v];
            for s in 0..j {
                let term = ring_mul(&g(shape, i1), &pw[s as usize]);
                ring_add(&mut z, &term, binomial(j, s + 1) as i128);
            }
            z
        },
        |i, j, i1| {
            let pw = powers(i1, j);
            let mut z = vec![0; v];
            ring_add(&mut z, &g(shape, i1), -(i as i128));
            for s in 1..j {
                let c = up * (binomial(j, s + 1) - binomial(j - 1, s) * t);
                let term = ring_mul(&g(shape, i1 - u * i1), &pw[(s - 1) as usize]);
                ring_add(&mut z, &term, c as i128);
            }
            z
        },
    )
}

/// Both descriptions of `phi_hat_11`, after checking that they agree.
pub fn phi_hat(params: &CyclicFamilyParams) -> Result<PhiHat> {
    let shape = Shape::of(params)?;
    let closed = phi_hat_closed(&shape);
    if closed != phi_hat_binomial(&shape) {
        return Err(Error::RouteDisagreement("the two formulas for phi_hat_11 differ".into()));
    }
    Ok(closed)
}

/// The reduced complex with its transfer data.
#[derive(Clone, Debug)]
pub struct ReducedComplexT {
    pub params: CyclicFamilyParams,
    pub shape: Shape,
    /// `quotients[s - 1] = Mbar(s)`.
    pub quotients: Vec<ShuffleQuotient>,
    /// The small double complex with the transferred horizontal arrows.
    pub x: DoubleComplex,
    /// Row retracts before perturbation.
    pub row_sdrs: BTreeMap<usize, Sdr>,
    /// Row data after perturbation; `rows[s].sdr.p` is `phi_hat` on row `s`.
    pub rows: BTreeMap<usize, PerturbedSdr>,
    pub delta: PerturbationRows,
    /// The closed formulas, equal entrywise to the transferred arrows.
    pub closed: BTreeMap<(usize, usize), IntMatrix>,
}

impl ReducedComplexT {
    /// The total complex through degree `n_max <= 3`.
    pub fn total(&self, n_max: usize) -> Result<ChainComplex> {
        if n_max > FULL_CAP {
            return Err(Error::OutOfScope(format!("the reduced complex is kept through degree {FULL_CAP}")));
        }
        total_complex(&self.x, n_max)
    }

    /// `phi_hat` on total degree `n`: the block-diagonal sum of the
    /// perturbed projections of the rows, from the full total complex to the
    /// reduced one. Available for `n <= 2`.
    pub fn comparison_total(&self, n: usize) -> IntMatrix {
        assert!((1..FULL_CAP).contains(&n));
        let blocks: Vec<IntMatrix> = (0..n).map(|r| self.rows[&(n - r)].sdr.p[r].clone()).collect();
        block_diagonal(&blocks)
    }

    /// The transferred arrows square to zero and anticommute with the
    /// vertical ones.
    pub fn verify(&self) -> Verdict {
        self.x.verify().and_then(|| match self.total(FULL_CAP) {
            Ok(t) => t.verify(),
            Err(e) => Verdict::fail("total", vec![], e.to_string()),
        })
    }
}

fn sign(k: usize) -> i128 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Builds the reduced complex by the transfer and compares it entrywise
/// with [`closed_arrows`]; a mismatch is a `RouteDisagreement`.
///
/// For `t >= 2` the rows are genuine retracts and the transfer goes
/// through [`perturb_double_complex`], which verifies them. For `t = 1` the
/// row data is not a retract (the comparison `phi_1` is not injective), but
/// the perturbation vanishes, so the rows are transferred one by one and
/// the result is the unperturbed complex `Xbar`.
pub fn reduced_complex(params: &CyclicFamilyParams) -> Result<ReducedComplexT> {
    let shape = Shape::of(params)?;
    let v = shape.v;
    let bar = Bar::new(v);
    let quotients = (1..=FULL_CAP).map(|s| shuffle_quotient(s, v)).collect::<Result<Vec<_>>>()?;
    let delta = perturbation_delta(params)?;

    let mut x = DoubleComplex::default();
    let mut c = DoubleComplex::default();
    let mut row_sdrs = BTreeMap::new();
    for s in 1..=FULL_CAP {
        let top = FULL_CAP - s;
        let q = &quotients[s - 1];
        let cmp = comparison_for_shape(shape, top)?;
        let coeff = coefficient_complex_from(&cmp, &q.module)?;
        let sdr = coeff.sdr();
        let ms = q.ngens();
        for r in 0..=top {
            x.dims.insert((r, s), (r + 1) * ms);
            c.dims.insert((r, s), bar.ngens(r) * ms);
            x.relations.insert((r, s), sdr.x.relations[r].clone());
            c.relations.insert((r, s), sdr.c.relations[r].clone());
            if r >= 1 {
                x.dh.insert((r, s), sdr.x.d[r].clone());
                c.dh.insert((r, s), sdr.c.d[r].clone());
            }
            if s >= 2 {
                let cell = vertical(v, 0, s).scale(&sign(r));
                x.dv.insert((r, s), IntMatrix::identity(r + 1).kron(&cell));
                c.dv.insert((r, s), vertical(v, r, s));
            }
        }
        row_sdrs.insert(s, sdr);
    }

    let (x, rows) = if shape.t >= 2 {
        let out = perturb_double_complex(&x, &c, &row_sdrs, &delta.rows)?;
        (out.x, out.rows)
    } else {
        let mut rows = BTreeMap::new();
        for (&s, sdr) in &row_sdrs {
            let res = perturb_sdr(sdr, &delta.rows[&s])?;
            for r in 1..=res.sdr.x.n_max() {
                x.dh.insert((r, s), res.sdr.x.d[r].clone());
            }
            rows.insert(s, res);
        }
        (x, rows)
    };

    let closed = closed_arrows(&shape);
    for (&(r, s), m) in &closed {
        if x.h(r, s) != *m {
            return Err(Error::RouteDisagreement(format!(
                "transferred arrow at ({r},{s}) differs from its closed formula for {params}"
            )));
        }
    }
    for &(r, s) in x.dims.keys() {
        if r >= 1 && !closed.contains_key(&(r, s)) {
            return Err(Error::RouteDisagreement(format!("unexpected arrow at ({r},{s})")));
        }
    }
    let ph = phi_hat(params)?;
    if rows[&1].sdr.p[1] != ph.matrix() {
        return Err(Error::RouteDisagreement(format!("transferred phi_hat_11 differs from its closed formula for {params}")));
    }
    Ok(ReducedComplexT { params: *params, shape, quotients, x, row_sdrs, rows, delta, closed })
}
