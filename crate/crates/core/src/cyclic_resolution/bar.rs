//! The normalized bar resolution `(Dbar^{(x) n} (x) D, b')` of `Z` over
//! `D = Z[C_v]`, stored sparsely.
//!
//! A basis element `[g^{e_1} | .. | g^{e_n}] g^{e}` has every `e_k` in
//! `1..v` and is keyed by `(tuple index, e)`. Tuples are indexed in base
//! `v - 1` with the first slot most significant.

use std::collections::BTreeMap;

use crate::abelian::IntMatrix;

/// A sparse element of `Dbar^{(x) n} (x) D`.
pub type BarElt = BTreeMap<(usize, usize), i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bar {
    pub v: usize,
}

impl Bar {
    pub fn new(v: usize) -> Self {
        assert!(v >= 2);
        Bar { v }
    }

    /// Number of tuples in degree `n`.
    pub fn ngens(&self, n: usize) -> usize {
        (self.v - 1).pow(n as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &e| {
            debug_assert!(e >= 1 && e < self.v);
            acc * (self.v - 1) + (e - 1)
        })
    }

    pub fn decode(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = idx % (self.v - 1) + 1;
            idx /= self.v - 1;
        }
        out
    }

    /// The generator `[tuple] 1`, or zero if some slot is the identity.
    pub fn gen(&self, tuple: &[usize]) -> BarElt {
        let mut out = BarElt::new();
        if tuple.iter().all(|&e| e % self.v != 0) {
            let t: Vec<usize> = tuple.iter().map(|&e| e % self.v).collect();
            out.insert((self.encode(&t), 0), 1);
        }
        out
    }

    /// `b'_n: Dbar^{(x) n} (x) D -> Dbar^{(x) n-1} (x) D`.
    pub fn b_prime(&self, n: usize, x: &BarElt) -> BarElt {
        assert!(n >= 1);
        let v = self.v;
        let mut out = BarElt::new();
        for (&(g, e), &c) in x {
            let tup = self.decode(g, n);
            // mu_0 drops the first slot.
            add_term(&mut out, self.encode(&tup[1..]), e, c);
            for i in 1..n {
                let merged = (tup[i - 1] + tup[i]) % v;
                if merged == 0 {
                    continue;
                }
                let mut t = Vec::with_capacity(n - 1);
                t.extend_from_slice(&tup[..i - 1]);
                t.push(merged);
                t.extend_from_slice(&tup[i + 1..]);
                add_term(&mut out, self.encode(&t), e, sign(i) * c);
            }
            add_term(&mut out, self.encode(&tup[..n - 1]), (e + tup[n - 1]) % v, sign(n) * c);
        }
        out
    }

    /// The contracting homotopy `xi_{n+1}(x g) = (-1)^{n+1} [x | g] 1` out
    /// of degree `n`.
    pub fn xi(&self, n: usize, x: &BarElt) -> BarElt {
        let mut out = BarElt::new();
        for (&(g, e), &c) in x {
            if e == 0 {
                continue;
            }
            let idx = g * (self.v - 1) + (e - 1);
            add_term(&mut out, idx, 0, sign(n + 1) * c);
        }
        out
    }

    /// Right action of `g^k`.
    pub fn shift(&self, x: &BarElt, k: usize) -> BarElt {
        x.iter().map(|(&(g, e), &c)| ((g, (e + k) % self.v), c)).collect()
    }

    /// `sum_k c_k x_k`.
    pub fn combine<'a>(&self, terms: impl IntoIterator<Item = (i128, &'a BarElt)>) -> BarElt {
        let mut out = BarElt::new();
        for (c, x) in terms {
            for (&key, &y) in x {
                add_term(&mut out, key.0, key.1, c * y);
            }
        }
        out
    }

    /// The normalized complex `Dbar^{(x) n}` with trivial coefficients
    /// `Z`: the matrix of `b_n` obtained by sending the `D` slot to `1`.
    pub fn trivial_boundary(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ngens(n - 1), self.ngens(n));
        for g in 0..self.ngens(n) {
            let mut x = BarElt::new();
            x.insert((g, 0), 1);
            for (&(h, _), &c) in &self.b_prime(n, &x) {
                m.add_to(h, g, &c);
            }
        }
        m
    }

    /// Sends the `D` slot to `1` (the functor `- (x)_D Z`).
    pub fn collapse(&self, n: usize, x: &BarElt) -> Vec<i128> {
        let mut out = vec![0; self.ngens(n)];
        for (&(g, _), &c) in x {
            out[g] += c;
        }
        out
    }

    /// Dense coordinates over `Z`, index `g * v + e`.
    pub fn dense(&self, n: usize, x: &BarElt) -> Vec<i128> {
        let mut out = vec![0; self.ngens(n) * self.v];
        for (&(g, e), &c) in x {
            out[g * self.v + e] += c;
        }
        out
    }
}

fn sign(i: usize) -> i128 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn add_term(out: &mut BarElt, g: usize, e: usize, c: i128) {
    if c == 0 {
        return;
    }
    let slot = out.entry((g, e)).or_insert(0);
    *slot += c;
    if *slot == 0 {
        out.remove(&(g, e));
    }
}

/// The bar resolution through degree `n_max` as a retract of `Z`
/// (concentrated in degree 0), with `i(1) = 1`, `p` the augmentation and `h = -xi`.
pub fn bar_retract(v: usize, n_max: usize) -> crate::homology_engine::Sdr {
    use crate::homology_engine::{ChainComplex, Sdr};
    let bar = Bar::new(v);
    let dim = |n: usize| bar.ngens(n) * v;
    let basis = |k: usize| -> BarElt { [((k / v, k % v), 1)].into_iter().collect() };
    let d: Vec<IntMatrix> = (1..=n_max)
        .map(|n| {
            let mut m = IntMatrix::zeros(dim(n - 1), dim(n));
            for k in 0..dim(n) {
                for (idx, c) in bar.dense(n - 1, &bar.b_prime(n, &basis(k))).into_iter().enumerate() {
                    if c != 0 {
                        m.set(idx, k, c);
                    }
                }
            }
            m
        })
        .collect();
    let h: Vec<IntMatrix> = (0..n_max)
        .map(|n| {
            let mut m = IntMatrix::zeros(dim(n + 1), dim(n));
            for k in 0..dim(n) {
                for (idx, c) in bar.dense(n + 1, &bar.xi(n, &basis(k))).into_iter().enumerate() {
                    if c != 0 {
                        m.set(idx, k, -c);
                    }
                }
            }
            m
        })
        .collect();
    let dims: Vec<usize> = (0..=n_max).map(dim).collect();
    let c = ChainComplex::free(dims, d).expect("shapes are consistent");
    let mut xdims = vec![1];
    xdims.extend(std::iter::repeat_n(0, n_max));
    let xd = (1..=n_max).map(|n| IntMatrix::zeros(xdims[n - 1], xdims[n])).collect();
    let x = ChainComplex::free(xdims.clone(), xd).expect("shapes are consistent");
    let mut i = vec![IntMatrix::zeros(dim(0), 1)];
    i[0].set(0, 0, 1);
    let mut p = vec![IntMatrix::from_row_vecs(v, vec![vec![1; v]])];
    for n in 1..=n_max {
        i.push(IntMatrix::zeros(dim(n), 0));
        p.push(IntMatrix::zeros(0, dim(n)));
    }
    Sdr { x, c, i, p, h }
}
