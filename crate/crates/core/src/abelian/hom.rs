//! Cohomology of `Hom(C_*, Gamma)` for complexes of finitely presented
//! abelian groups.
//!
//! A cochain on a presented module `M = Z^g / R` with values in `Gamma` is a
//! vector of `g` group elements killed by every relation row of `R`. The
//! group `Gamma` is split into cyclic primary parts (and free parts); each
//! part is handled separately and the answers are recombined.

use serde::{Deserialize, Serialize};

use super::fin_ab::{prime_power_parts, FinAbGroup, GroupElement};
use super::local::{local_kernel, local_smith, LocalRing, ModMatrix};
use super::snf::smith_normal_form;
use super::IntMatrix;
use crate::error::{Error, Result};

/// A finitely presented abelian group `Z^ngens / (row space of relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedModule {
    pub ngens: usize,
    pub relations: IntMatrix,
    /// Exponent tuple naming each generator.
    pub labels: Vec<Vec<u32>>,
}

impl PresentedModule {
    pub fn new(ngens: usize, relations: IntMatrix, labels: Vec<Vec<u32>>) -> Self {
        assert_eq!(relations.cols(), ngens, "relations must have one column per generator");
        assert_eq!(labels.len(), ngens, "one label per generator");
        PresentedModule { ngens, relations, labels }
    }

    pub fn free(labels: Vec<Vec<u32>>) -> Self {
        let n = labels.len();
        PresentedModule { ngens: n, relations: IntMatrix::zeros(0, n), labels }
    }

    pub fn structure(&self) -> FinAbGroup {
        super::snf::cokernel_invariants(&self.relations)
    }

    pub fn index_of(&self, label: &[u32]) -> Option<usize> {
        self.labels.iter().position(|l| l.as_slice() == label)
    }

    /// Direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        let n = self.ngens + other.ngens;
        let mut rel = IntMatrix::zeros(self.relations.rows() + other.relations.rows(), n);
        rel.put_block(0, 0, &self.relations);
        rel.put_block(self.relations.rows(), self.ngens, &other.relations);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        PresentedModule { ngens: n, relations: rel, labels }
    }
}

/// A `Gamma`-valued cochain: one group element per generator.
pub type Cochain = Vec<GroupElement>;

/// Result of [`hom_cohomology_at`].
#[derive(Clone, Debug)]
pub struct HomCohomology {
    pub group: FinAbGroup,
    /// One representative cocycle per cyclic primary (or free) summand,
    /// together with that summand's order (`0` for infinite order).
    pub representatives: Vec<(u64, Cochain)>,
}

/// Cohomology at the middle term of `C_{n+1} --d_in--> C_n --d_out--> C_{n-1}`
/// after applying `Hom(-, Gamma)`.
///
/// `d_in` has shape `g_n x g_{n+1}` and `d_out` shape `g_{n-1} x g_n`
/// (column `j` is the image of generator `j`). `rel_mid` and `rel_prev` are
/// the relation matrices of `C_n` and `C_{n-1}`; lower cochains must kill
/// their own relations, so both are required.
///
/// Fails with [`Error::InconsistentComplex`] if some coboundary is not a
/// cocycle, which happens exactly when `d_out * d_in` is nonzero modulo the
/// relations as seen by `Gamma`.
pub fn hom_cohomology_at(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    rel_mid: &IntMatrix,
    rel_prev: &IntMatrix,
    gamma: &FinAbGroup,
) -> Result<HomCohomology> {
    let g = d_in.rows();
    if d_out.cols() != g || rel_mid.cols() != g || rel_prev.cols() != d_out.rows() {
        return Err(Error::InconsistentComplex(format!(
            "shape mismatch: d_in {}x{}, d_out {}x{}, rel_mid {}x{}, rel_prev {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols(),
            rel_mid.rows(),
            rel_mid.cols(),
            rel_prev.rows(),
            rel_prev.cols()
        )));
    }
    let cocycle_eqs = rel_mid.vstack(&d_in.transpose());
    let cobound = d_out.transpose();
    let nf = gamma.ngens();
    let mut orders = Vec::new();
    let mut reps = Vec::new();
    for (coord, &m) in gamma.factors().iter().enumerate() {
        let parts: Vec<(u64, Vec<i64>)> = if m == 0 {
            integer_part(&cocycle_eqs, &cobound, rel_prev)?
        } else {
            let mut out = Vec::new();
            for (p, pk) in prime_power_parts(m) {
                let ring = LocalRing::new(p, pk.ilog(p));
                let crt = crt_factor(m, pk);
                for (o, vec) in local_part(&ring, &cocycle_eqs, &cobound, rel_prev)? {
                    let lifted = vec.iter().map(|&x| ((x as u128 * crt as u128) % m as u128) as i64).collect();
                    out.push((o, lifted));
                }
            }
            out
        };
        for (o, vec) in parts {
            orders.push(o);
            let cochain = vec
                .iter()
                .map(|&x| {
                    let mut c = vec![0i64; nf];
                    c[coord] = x;
                    gamma.reduce(&GroupElement { coords: c })
                })
                .collect();
            reps.push((o, cochain));
        }
    }
    Ok(HomCohomology { group: FinAbGroup::from_cyclic_orders(&orders), representatives: reps })
}

/// Idempotent of `Z/m` projecting onto the `Z/pk` factor: `1 mod pk`, `0 mod m/pk`.
fn crt_factor(m: u64, pk: u64) -> u64 {
    let rest = m / pk;
    if rest == 1 {
        return 1;
    }
    let ring = LocalRing::new(pk, 1);
    let inv = ring.inv_unit(rest % pk);
    ((rest as u128 * inv as u128) % m as u128) as u64
}

fn to_mod(ring: &LocalRing, a: &IntMatrix) -> ModMatrix {
    let mut m = ModMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for (j, x) in a.row(i).iter().enumerate() {
            if *x != 0 {
                m.set(i, j, ring.reduce(*x));
            }
        }
    }
    m
}

/// Cohomology with coefficients in `Z/p^k`, returned as cyclic orders and
/// representative cocycles with entries in `Z/p^k`.
fn local_part(
    ring: &LocalRing,
    cocycle_eqs: &IntMatrix,
    cobound: &IntMatrix,
    rel_prev: &IntMatrix,
) -> Result<Vec<(u64, Vec<u64>)>> {
    let a = to_mod(ring, cocycle_eqs);
    let g = a.cols;
    let z = local_kernel(ring, &a);
    let lower = local_kernel(ring, &to_mod(ring, rel_prev));
    let image = to_mod(ring, cobound).mul(&lower.gens, ring);
    if !a.mul(&image, ring).is_zero() {
        return Err(Error::InconsistentComplex(format!(
            "a coboundary with values in Z/{} is not a cocycle",
            ring.modulus
        )));
    }
    // Relations among the kernel generators: their own orders, and the
    // coordinates of every coboundary generator.
    let nz = z.exps.len();
    let nimg = image.cols;
    let mut rel = ModMatrix::zeros(nz + nimg, nz);
    for (t, &e) in z.exps.iter().enumerate() {
        rel.set(t, t, ring.pow_p(e) % ring.modulus);
    }
    for c in 0..nimg {
        let col: Vec<u64> = (0..g).map(|i| image.get(i, c)).collect();
        for (t, y) in z.coordinates(ring, &col).into_iter().enumerate() {
            rel.set(nz + c, t, y);
        }
    }
    let sm = local_smith(ring, &rel, true, false);
    let v = sm.v.expect("tracked");
    let mut out = Vec::new();
    for (i, &e) in sm.vals.iter().enumerate() {
        if e == 0 {
            continue;
        }
        // Generator i of the quotient is V e_i in kernel coordinates.
        let mut vec = vec![0u64; g];
        for t in 0..nz {
            let coef = v.get(t, i);
            if coef == 0 {
                continue;
            }
            for (r, slot) in vec.iter_mut().enumerate() {
                let x = z.gens.get(r, t);
                if x != 0 {
                    *slot = ring.add(*slot, ring.mul(coef, x));
                }
            }
        }
        out.push((ring.pow_p(e), vec));
    }
    Ok(out)
}

/// Cohomology with coefficients in `Z`.
fn integer_part(
    cocycle_eqs: &IntMatrix,
    cobound: &IntMatrix,
    rel_prev: &IntMatrix,
) -> Result<Vec<(u64, Vec<i64>)>> {
    let g = cocycle_eqs.cols();
    let sa = smith_normal_form(cocycle_eqs);
    let basis: Vec<usize> = (sa.rank..g).collect();
    let sl = smith_normal_form(rel_prev);
    let lower_gens = sl.v.block(0, sl.rank, rel_prev.cols(), rel_prev.cols() - sl.rank);
    let image = cobound.mul(&lower_gens);
    if !cocycle_eqs.mul(&image).is_zero() {
        return Err(Error::InconsistentComplex("an integral coboundary is not a cocycle".into()));
    }
    // Coordinates of the image in the kernel basis (rows of V^{-1} beyond the rank).
    let coords = sa.v_inv.block(sa.rank, 0, basis.len(), g).mul(&image).transpose();
    let sq = smith_normal_form(&coords);
    let mut out = Vec::new();
    for i in 0..basis.len() {
        let d = if i < sq.rank { *sq.s.get(i, i) } else { 0 };
        if d == 1 {
            continue;
        }
        let kcoords = sq.v.column(i);
        let mut vec = vec![0i128; g];
        for (t, c) in kcoords.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (r, slot) in vec.iter_mut().enumerate() {
                *slot += c * sa.v.get(r, basis[t]);
            }
        }
        let vec = vec.into_iter().map(|x| i64::try_from(x).expect("representative entry exceeds i64")).collect();
        out.push((d as u64, vec));
    }
    Ok(out)
}
