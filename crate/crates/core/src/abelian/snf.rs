
use super::fin_ab::FinAbGroup;
use super::matrix::Matrix;
use super::scalar::Scalar;

/// Smith normal form `U * M * V = S` with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T: std::fmt::Display> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Scalar> SmithDecomposition<T> {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Tracker<T> {
    u: Option<(Matrix<T>, Matrix<T>)>,
    v: Option<(Matrix<T>, Matrix<T>)>,
}

impl<T: Scalar> Tracker<T> {
    fn row_add(&mut self, target: usize, source: usize, c: &T) {
        if let Some((u, ui)) = self.u.as_mut() {
            u.add_row_multiple(target, source, c);
            ui.add_col_multiple(source, target, &-c.clone());
        }
    }
    fn col_add(&mut self, target: usize, source: usize, c: &T) {
        if let Some((v, vi)) = self.v.as_mut() {
            v.add_col_multiple(target, source, c);
            vi.add_row_multiple(source, target, &-c.clone());
        }
    }
    fn row_swap(&mut self, a: usize, b: usize) {
        if let Some((u, ui)) = self.u.as_mut() {
            u.swap_rows(a, b);
            ui.swap_cols(a, b);
        }
    }
    fn col_swap(&mut self, a: usize, b: usize) {
        if let Some((v, vi)) = self.v.as_mut() {
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        }
    }
    fn row_negate(&mut self, i: usize) {
        if let Some((u, ui)) = self.u.as_mut() {
            u.negate_row(i);
            ui.negate_col(i);
        }
    }
}

/// Diagonalizes `a` in place; returns the rank. Pivots are chosen with minimal
/// absolute value, then the pivot row and column are cleared by Euclidean steps.
fn diagonalize<T: Scalar>(a: &mut Matrix<T>, tr: &mut Tracker<T>) -> usize {
    let (r, c) = (a.rows(), a.cols());
    let mut t = 0;
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < a.get(bi, bj).abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a.get(bi, bj).abs().is_one()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        tr.row_swap(t, pi);
        a.swap_cols(t, pj);
        tr.col_swap(t, pj);

        let pivot = a.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..r {
            let x = a.get(i, t).clone();
            if x.is_zero() {
                continue;
            }
            let q = -x.div_floor(&pivot);
            a.add_row_multiple(i, t, &q);
            tr.row_add(i, t, &q);
            if !a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..c {
            let x = a.get(t, j).clone();
            if x.is_zero() {
                continue;
            }
            let q = -x.div_floor(&pivot);
            a.add_col_multiple(j, t, &q);
            tr.col_add(j, t, &q);
            if !a.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce the divisibility chain: fold a row with a non-multiple into the pivot row.
        let mut offender = None;
        'search: for i in t + 1..r {
            for j in t + 1..c {
                if !a.get(i, j).is_multiple_of(&pivot) {
                    offender = Some(i);
                    break 'search;
                }
            }
        }
        if let Some(i) = offender {
            a.add_row_multiple(t, i, &T::one());
            tr.row_add(t, i, &T::one());
            continue;
        }
        if pivot.is_negative() {
            a.negate_row(t);
            tr.row_negate(t);
        }
        t += 1;
    }
    t
}

/// Smith normal form with unimodular transforms, checked on construction.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut tr = Tracker {
        u: Some((Matrix::identity(r), Matrix::identity(r))),
        v: Some((Matrix::identity(c), Matrix::identity(c))),
    };
    let rank = diagonalize(&mut s, &mut tr);
    let (u, u_inv) = tr.u.expect("row transform tracked");
    let (v, v_inv) = tr.v.expect("column transform tracked");
    assert!(u.mul(m).mul(&v) == s, "Smith decomposition failed its own check");
    SmithDecomposition { s, u, u_inv, v, v_inv, rank }
}

/// Nonzero elementary divisors of `m` (the diagonal of its Smith form) without
/// tracking transforms.
pub fn elementary_divisors<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let mut s = m.clone();
    let mut tr = Tracker { u: None, v: None };
    let rank = diagonalize(&mut s, &mut tr);
    (0..rank).map(|i| s.get(i, i).clone()).collect()
}

/// Invariant factors of `Z^cols / (row space of relations)`.
pub fn cokernel_invariants<T: Scalar>(relations: &Matrix<T>) -> FinAbGroup {
    let d = elementary_divisors(relations);
    let mut factors: Vec<u64> = d
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().expect("invariant factor exceeds u64"))
        .collect();
    factors.extend(std::iter::repeat_n(0, relations.cols() - d.len()));
    FinAbGroup::new(factors).expect("cokernel factors form a divisibility chain")
}

/// Integral homology `ker(d_out) / im(d_in)` at a free module with `n` generators.
pub fn integral_homology<T: Scalar>(n: usize, d_in: &Matrix<T>, d_out: &Matrix<T>) -> FinAbGroup {
    assert_eq!(d_in.rows(), n);
    assert_eq!(d_out.cols(), n);
    let rank_out = elementary_divisors(d_out).len();
    let divisors = elementary_divisors(d_in);
    let mut factors: Vec<u64> = divisors
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().expect("invariant factor exceeds u64"))
        .collect();
    factors.extend(std::iter::repeat_n(0, n - rank_out - divisors.len()));
    FinAbGroup::new(factors).expect("homology factors form a divisibility chain")
}
