use serde::{Deserialize, Serialize};

use super::LinearCycleSet;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// A map `r : X x X -> X x X` on `X = {0, .., v-1}` stored as a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeMap {
    pub v: usize,
    /// `table[x][y] = r(x, y)`.
    pub table: Vec<Vec<(usize, usize)>>,
}

impl YbeMap {
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.table[x][y]
    }

    pub fn is_involutive(&self) -> Verdict {
        for x in 0..self.v {
            for y in 0..self.v {
                let (a, b) = self.apply(x, y);
                if self.apply(a, b) != (x, y) {
                    return Verdict::fail("involutive", vec![x as i64, y as i64], "r(r(x, y)) differs from (x, y)");
                }
            }
        }
        Verdict::pass()
    }

    /// Both `y -> r_1(x, y)` and `x -> r_2(x, y)` must be bijective.
    pub fn is_non_degenerate(&self) -> Verdict {
        let v = self.v;
        for x in 0..v {
            let mut seen = vec![false; v];
            for y in 0..v {
                let a = self.apply(x, y).0;
                if std::mem::replace(&mut seen[a], true) {
                    return Verdict::fail("left non-degenerate", vec![x as i64], "first component repeats");
                }
            }
        }
        for y in 0..v {
            let mut seen = vec![false; v];
            for x in 0..v {
                let b = self.apply(x, y).1;
                if std::mem::replace(&mut seen[b], true) {
                    return Verdict::fail("right non-degenerate", vec![y as i64], "second component repeats");
                }
            }
        }
        Verdict::pass()
    }

    /// `(r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)` on every triple.
    pub fn satisfies_braid_relation(&self) -> Verdict {
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.apply(a, b);
            (x, y, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (y, z) = self.apply(b, c);
            (a, y, z)
        };
        for a in 0..self.v {
            for b in 0..self.v {
                for c in 0..self.v {
                    let t = (a, b, c);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Verdict::fail("braid relation", vec![a as i64, b as i64, c as i64], "the two sides differ");
                    }
                }
            }
        }
        Verdict::pass()
    }

    pub fn verify(&self) -> Verdict {
        self.is_involutive().and_then(|| self.is_non_degenerate()).and_then(|| self.satisfies_braid_relation())
    }
}

/// The solution `r(x, y) = (s_x^{-1}(y), s_x^{-1}(y).x)` where `s_x(y) = x.y`.
///
/// Requires the squaring map `a -> a.a` to be bijective.
pub fn derived_ybe_solution(cs: &LinearCycleSet) -> Result<YbeMap> {
    let v = cs.v;
    let mut squares: Vec<usize> = (0..v).map(|a| cs.op(a, a)).collect();
    squares.sort_unstable();
    squares.dedup();
    if squares.len() != v {
        return Err(Error::Domain("squaring map is not bijective".into()));
    }
    let mut inv = vec![vec![usize::MAX; v]; v];
    for x in 0..v {
        for y in 0..v {
            let z = cs.op(x, y);
            if inv[x][z] != usize::MAX {
                return Err(Error::Domain(format!("left translation by {x} is not bijective")));
            }
            inv[x][z] = y;
        }
    }
    let table = (0..v)
        .map(|x| {
            (0..v)
                .map(|y| {
                    let a = inv[x][y];
                    (a, cs.op(a, x))
                })
                .collect()
        })
        .collect();
    Ok(YbeMap { v, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycleset::{make_cyclic_lcs, CyclicFamilyParams};

    #[test]
    fn trivial_gives_flip() {
        let r = derived_ybe_solution(&LinearCycleSet::trivial(5)).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(r.apply(x, y), (y, x));
            }
        }
        assert!(r.verify().is_pass());
    }

    #[test]
    fn small_member_entry() {
        let r = derived_ybe_solution(&make_cyclic_lcs(&CyclicFamilyParams::new(2, 1, 2).unwrap())).unwrap();
        assert_eq!(r.apply(1, 2), (2, 1));
        assert!(r.verify().is_pass());
    }

    #[test]
    fn family_solutions_verify() {
        for q in CyclicFamilyParams::all_up_to(27) {
            let r = derived_ybe_solution(&make_cyclic_lcs(&q)).unwrap();
            assert!(r.verify().is_pass(), "{q}");
        }
    }

    #[test]
    fn degenerate_square_rejected() {
        // 0.0 = 1.1 = 0
        let cs = LinearCycleSet::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(derived_ybe_solution(&cs).is_err());
    }

    #[test]
    fn broken_map_fails_involutivity() {
        let mut r = derived_ybe_solution(&LinearCycleSet::trivial(3)).unwrap();
        r.table[0][1] = (0, 1);
        assert_eq!(r.verify().check(), Some("involutive"));
    }
}
