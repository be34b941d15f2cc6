use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{hom_cohomology_at, integral_homology, FinAbGroup, HomCohomology, IntMatrix};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// A chain complex `X_0 <- X_1 <- ... <- X_{n_max}` of finitely presented
/// abelian groups.
///
/// `d[n]` is the matrix of `X_n -> X_{n-1}` (`d[0]` has zero rows), and
/// `relations[n]` presents `X_n` (zero rows for free modules).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<IntMatrix>,
    pub relations: Vec<IntMatrix>,
}

impl ChainComplex {
    /// A complex of free modules. `d` lists `d_1, .., d_{n_max}`.
    pub fn free(dims: Vec<usize>, d: Vec<IntMatrix>) -> Result<Self> {
        let relations = dims.iter().map(|&n| IntMatrix::zeros(0, n)).collect();
        Self::presented(dims, d, relations)
    }

    pub fn presented(dims: Vec<usize>, d: Vec<IntMatrix>, relations: Vec<IntMatrix>) -> Result<Self> {
        if dims.is_empty() || d.len() + 1 != dims.len() || relations.len() != dims.len() {
            return Err(Error::InconsistentComplex("need one differential per positive degree".into()));
        }
        let mut all = vec![IntMatrix::zeros(0, dims[0])];
        all.extend(d);
        for n in 1..dims.len() {
            if all[n].rows() != dims[n - 1] || all[n].cols() != dims[n] {
                return Err(Error::InconsistentComplex(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    all[n].rows(),
                    all[n].cols(),
                    dims[n - 1],
                    dims[n]
                )));
            }
        }
        for (n, r) in relations.iter().enumerate() {
            if r.cols() != dims[n] {
                return Err(Error::InconsistentComplex(format!("relations of degree {n} have the wrong width")));
            }
        }
        Ok(ChainComplex { dims, d: all, relations })
    }

    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_free(&self) -> bool {
        self.relations.iter().all(|r| r.rows() == 0)
    }

    /// `d_{n-1} d_n = 0` for every degree.
    pub fn verify(&self) -> Verdict {
        for n in 2..=self.n_max() {
            if !self.d[n - 1].mul(&self.d[n]).is_zero() {
                return Verdict::fail("d∘d", vec![n as i64], format!("d_{} d_{} is nonzero", n - 1, n));
            }
        }
        Verdict::pass()
    }

    /// Integral homology of a free complex at degree `n < n_max`.
    pub fn homology(&self, n: usize) -> Result<FinAbGroup> {
        if !self.is_free() {
            return Err(Error::Unsupported("homology of a complex with relations".into()));
        }
        if n >= self.n_max() {
            return Err(Error::OutOfScope(format!("homology at degree {n} needs d_{}", n + 1)));
        }
        Ok(integral_homology(self.dims[n], &self.d[n + 1], &self.d[n]))
    }

    /// Cohomology of `Hom(X_*, Gamma)` at degree `n < n_max`.
    pub fn hom_cohomology(&self, n: usize, gamma: &FinAbGroup) -> Result<HomCohomology> {
        if n >= self.n_max() {
            return Err(Error::OutOfScope(format!("cohomology at degree {n} needs d_{}", n + 1)));
        }
        let rel_prev = if n == 0 { IntMatrix::zeros(0, 0) } else { self.relations[n - 1].clone() };
        hom_cohomology_at(&self.d[n + 1], &self.d[n], &self.relations[n], &rel_prev, gamma)
    }
}

/// A bigraded complex with horizontal `dh: C_{rs} -> C_{r-1,s}` and vertical
/// `dv: C_{rs} -> C_{r,s-1}`. Positions absent from `dims` are zero.
/// Squares anticommute.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleComplex {
    pub dims: BTreeMap<(usize, usize), usize>,
    pub dh: BTreeMap<(usize, usize), IntMatrix>,
    pub dv: BTreeMap<(usize, usize), IntMatrix>,
    pub relations: BTreeMap<(usize, usize), IntMatrix>,
}

impl DoubleComplex {
    pub fn dim(&self, r: usize, s: usize) -> usize {
        self.dims.get(&(r, s)).copied().unwrap_or(0)
    }

    /// Horizontal differential out of `(r, s)`, zero if not stored.
    pub fn h(&self, r: usize, s: usize) -> IntMatrix {
        if r == 0 {
            return IntMatrix::zeros(0, self.dim(r, s));
        }
        self.dh.get(&(r, s)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.dim(r - 1, s), self.dim(r, s)))
    }

    /// Vertical differential out of `(r, s)`, zero if not stored.
    pub fn v(&self, r: usize, s: usize) -> IntMatrix {
        if s == 0 {
            return IntMatrix::zeros(0, self.dim(r, s));
        }
        self.dv.get(&(r, s)).cloned().unwrap_or_else(|| IntMatrix::zeros(self.dim(r, s - 1), self.dim(r, s)))
    }

    pub fn rel(&self, r: usize, s: usize) -> IntMatrix {
        self.relations.get(&(r, s)).cloned().unwrap_or_else(|| IntMatrix::zeros(0, self.dim(r, s)))
    }

    /// Positions `(r, s)` with `r + s = n`, ordered by increasing `r`.
    pub fn positions(&self, n: usize) -> Vec<(usize, usize)> {
        (0..=n).map(|r| (r, n - r)).filter(|k| self.dims.contains_key(k)).collect()
    }

    /// Checks stored matrix shapes against `dims`.
    pub fn check_shapes(&self) -> Result<()> {
        for (&(r, s), m) in &self.dh {
            if r == 0 || m.rows() != self.dim(r - 1, s) || m.cols() != self.dim(r, s) {
                return Err(Error::InconsistentComplex(format!("horizontal map at ({r},{s}) has the wrong shape")));
            }
        }
        for (&(r, s), m) in &self.dv {
            if s == 0 || m.rows() != self.dim(r, s - 1) || m.cols() != self.dim(r, s) {
                return Err(Error::InconsistentComplex(format!("vertical map at ({r},{s}) has the wrong shape")));
            }
        }
        for (&(r, s), m) in &self.relations {
            if m.cols() != self.dim(r, s) {
                return Err(Error::InconsistentComplex(format!("relations at ({r},{s}) have the wrong width")));
            }
        }
        Ok(())
    }

    /// `dh dh = 0`, `dv dv = 0` and `dh dv + dv dh = 0` at every position.
    pub fn verify(&self) -> Verdict {
        for &(r, s) in self.dims.keys() {
            let w = vec![r as i64, s as i64];
            if r >= 2 && !self.h(r - 1, s).mul(&self.h(r, s)).is_zero() {
                return Verdict::fail("dh∘dh", w, "horizontal square is nonzero");
            }
            if s >= 2 && !self.v(r, s - 1).mul(&self.v(r, s)).is_zero() {
                return Verdict::fail("dv∘dv", w, "vertical square is nonzero");
            }
            if r >= 1 && s >= 1 {
                let a = self.v(r - 1, s).mul(&self.h(r, s));
                let b = self.h(r, s - 1).mul(&self.v(r, s));
                if !a.add(&b).is_zero() {
                    return Verdict::fail("dh∘dv+dv∘dh", w, "squares do not anticommute");
                }
            }
        }
        Verdict::pass()
    }

    /// Offsets of each position inside the total module of degree `n`.
    pub fn total_offsets(&self, n: usize) -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        self.positions(n)
            .into_iter()
            .map(|k| {
                let o = off;
                off += self.dims[&k];
                (k, o)
            })
            .collect()
    }
}

/// `Tot_n = sum_{r+s=n} C_{rs}` with differential `dh + dv`, for
/// `0 <= n <= n_max`.
pub fn total_complex(dc: &DoubleComplex, n_max: usize) -> Result<ChainComplex> {
    dc.check_shapes()?;
    let dims: Vec<usize> = (0..=n_max).map(|n| dc.positions(n).iter().map(|k| dc.dims[k]).sum()).collect();
    let mut d = Vec::new();
    for n in 1..=n_max {
        let mut m = IntMatrix::zeros(dims[n - 1], dims[n]);
        let targets: BTreeMap<(usize, usize), usize> = dc.total_offsets(n - 1).into_iter().collect();
        for ((r, s), c0) in dc.total_offsets(n) {
            if r >= 1 {
                if let Some(&r0) = targets.get(&(r - 1, s)) {
                    m.put_block(r0, c0, &dc.h(r, s));
                }
            }
            if s >= 1 {
                if let Some(&r0) = targets.get(&(r, s - 1)) {
                    m.put_block(r0, c0, &dc.v(r, s));
                }
            }
        }
        d.push(m);
    }
    let relations = (0..=n_max)
        .map(|n| {
            let blocks: Vec<IntMatrix> = dc.positions(n).iter().map(|&(r, s)| dc.rel(r, s)).collect();
            block_diagonal(&blocks)
        })
        .collect();
    ChainComplex::presented(dims, d, relations)
}

/// Block-diagonal matrix with the given blocks in order.
pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        m.put_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_position_grid() {
        let mut dc = DoubleComplex::default();
        dc.dims.insert((0, 1), 3);
        let tot = total_complex(&dc, 2).unwrap();
        assert_eq!(tot.dims, vec![0, 3, 0]);
        assert!(tot.d.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn zero_grid_has_zero_total_differentials() {
        let mut dc = DoubleComplex::default();
        for r in 0..2 {
            for s in 1..3 {
                dc.dims.insert((r, s), r + s);
            }
        }
        let tot = total_complex(&dc, 3).unwrap();
        assert_eq!(tot.dims, vec![0, 1, 4, 3]);
        assert!(tot.d.iter().all(|m| m.is_zero()));
        assert!(tot.verify().is_pass());
    }

    #[test]
    fn anticommuting_square_gives_complex() {
        // Z at each corner of a square, dh = 1 on both rows, dv = 1 and -1.
        let one = IntMatrix::identity(1);
        let mut dc = DoubleComplex::default();
        for k in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            dc.dims.insert(k, 1);
        }
        dc.dh.insert((1, 0), one.clone());
        dc.dh.insert((1, 1), one.clone());
        dc.dv.insert((0, 1), one.clone());
        dc.dv.insert((1, 1), one.neg());
        assert!(dc.verify().is_pass());
        let tot = total_complex(&dc, 2).unwrap();
        assert!(tot.verify().is_pass());
        assert!(tot.homology(1).unwrap().is_trivial());

        dc.dv.insert((1, 1), one);
        assert_eq!(dc.verify().check(), Some("dh∘dv+dv∘dh"));
    }

    #[test]
    fn shape_errors() {
        assert!(ChainComplex::free(vec![1, 2], vec![IntMatrix::zeros(2, 1)]).is_err());
        let mut dc = DoubleComplex::default();
        dc.dims.insert((1, 1), 2);
        dc.dims.insert((0, 1), 2);
        dc.dh.insert((1, 1), IntMatrix::zeros(1, 2));
        assert!(total_complex(&dc, 2).is_err());
    }

    #[test]
    fn periodic_resolution_homology() {
        // Z <-0- Z <-4- Z <-0- Z: homology Z, Z/4, 0 at degrees 0, 1, 2.
        let c = ChainComplex::free(
            vec![1, 1, 1, 1],
            vec![IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[[4]]), IntMatrix::zeros(1, 1)],
        )
        .unwrap();
        assert_eq!(c.homology(0).unwrap(), FinAbGroup::new(vec![0]).unwrap());
        assert_eq!(c.homology(1).unwrap(), FinAbGroup::cyclic(4));
        assert!(c.homology(2).unwrap().is_trivial());
        assert!(c.homology(3).is_err());
        let h = c.hom_cohomology(1, &FinAbGroup::cyclic(2)).unwrap();
        assert_eq!(h.group, FinAbGroup::cyclic(2));
    }
}
