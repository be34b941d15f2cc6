//! The quotients `Mbar(s) = Dbar^{(x) s} / sh(Dbar^{(x) s})` of tensor
//! powers of the augmentation ideal by the signed shuffle sums.
//!
//! Generators are the tuples `[g^{a_1} (x) .. (x) g^{a_s}]` with every
//! `a_k` in `1..v`, indexed in base `v - 1` with the first slot most
//! significant (the same indexing as the bar resolution).

use crate::abelian::{IntMatrix, PresentedModule};
use crate::cyclic_resolution::Bar;
use crate::error::{Error, Result};

/// Largest tensor degree handled.
pub const SHUFFLE_CAP: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleQuotient {
    pub s: usize,
    pub v: usize,
    pub module: PresentedModule,
}

impl ShuffleQuotient {
    pub fn ngens(&self) -> usize {
        self.module.ngens
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        Bar::new(self.v).encode(tuple)
    }

    pub fn tuple(&self, idx: usize) -> Vec<usize> {
        Bar::new(self.v).decode(idx, self.s)
    }
}

/// Positions taken by the first block in every `(l, s - l)` shuffle, with
/// the sign of the shuffle permutation.
pub fn shuffles(l: usize, s: usize) -> Vec<(Vec<usize>, i128)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << s) {
        if mask.count_ones() as usize != l {
            continue;
        }
        let pos: Vec<usize> = (0..s).filter(|k| mask & (1 << k) != 0).collect();
        let inversions: usize = pos.iter().enumerate().map(|(k, &p)| p - k).sum();
        out.push((pos, if inversions.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// Applies the shuffle with first-block positions `pos` to `d`: the first
/// `l` entries of `d` go to `pos` in order, the rest fill the other slots.
pub fn apply_shuffle(pos: &[usize], d: &[usize]) -> Vec<usize> {
    let l = pos.len();
    let mut out = vec![0; d.len()];
    let (mut a, mut b) = (0, l);
    for (slot, o) in out.iter_mut().enumerate() {
        if a < l && pos[a] == slot {
            *o = d[a];
            a += 1;
        } else {
            *o = d[b];
            b += 1;
        }
    }
    out
}

/// Builds `Mbar(s)` for `1 <= s <= 3`. Relation row `(l - 1) (v-1)^s + k`
/// is the signed shuffle sum of type `(l, s - l)` applied to tuple `k`.
pub fn shuffle_quotient(s: usize, v: usize) -> Result<ShuffleQuotient> {
    if s == 0 || s > SHUFFLE_CAP {
        return Err(Error::OutOfScope(format!("shuffle quotients are built for 1 <= s <= {SHUFFLE_CAP}, asked for {s}")));
    }
    if v < 2 {
        return Err(Error::Domain(format!("v = {v} must be at least 2")));
    }
    let bar = Bar::new(v);
    let n = bar.ngens(s);
    let labels: Vec<Vec<u32>> = (0..n).map(|k| bar.decode(k, s).into_iter().map(|e| e as u32).collect()).collect();
    let mut rel = IntMatrix::zeros((s - 1) * n, n);
    for l in 1..s {
        let sh = shuffles(l, s);
        for k in 0..n {
            let d = bar.decode(k, s);
            for (pos, sign) in &sh {
                rel.add_to((l - 1) * n + k, bar.encode(&apply_shuffle(pos, &d)), sign);
            }
        }
    }
    Ok(ShuffleQuotient { s, v, module: PresentedModule::new(n, rel, labels) })
}
