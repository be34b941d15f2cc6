use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Finitely generated abelian group `Z/d_1 + ... + Z/d_k`, stored by invariant
/// factors. Positive factors form a divisibility chain and come first; a `0`
/// factor is an infinite cyclic summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = Error;
    fn try_from(factors: Vec<u64>) -> Result<Self, Error> {
        FinAbGroup::new(factors)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Vec<u64> {
        g.factors
    }
}

/// Element of a `FinAbGroup`, one coordinate per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl FinAbGroup {
    /// Validates an invariant-factor list.
    pub fn new(factors: Vec<u64>) -> Result<Self, Error> {
        if factors.contains(&1) {
            return Err(Error::Domain("invariant factor 1 must be dropped".into()));
        }
        let first_zero = factors.iter().position(|&f| f == 0).unwrap_or(factors.len());
        if factors[first_zero..].iter().any(|&f| f != 0) {
            return Err(Error::Domain("infinite factors must come last".into()));
        }
        for w in factors[..first_zero].windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Domain(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn cyclic(m: u64) -> Self {
        Self::from_cyclic_orders(&[m])
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `Z/m_i` (`0` = `Z`)
    /// to invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        // Split into prime powers, then recombine the largest powers of each prime.
        let free = orders.iter().filter(|&&m| m == 0).count();
        let mut by_prime: Vec<(u64, Vec<u64>)> = vec![];
        for &m in orders.iter().filter(|&&m| m > 1) {
            for (p, pk) in prime_power_parts(m) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(pk),
                    None => by_prime.push((p, vec![pk])),
                }
            }
        }
        let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        for (_, v) in by_prime.iter_mut() {
            v.sort_unstable();
            while v.len() < len {
                v.insert(0, 1);
            }
        }
        let mut factors: Vec<u64> = (0..len).map(|i| by_prime.iter().map(|(_, v)| v[i]).product()).collect();
        factors.retain(|&f| f != 1);
        factors.extend(std::iter::repeat_n(0, free));
        FinAbGroup { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_finite(&self) -> bool {
        !self.factors.contains(&0)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.factors.iter().product())
        } else {
            None
        }
    }

    /// Primary decomposition as a list of prime powers (finite part only).
    pub fn primary_orders(&self) -> Vec<u64> {
        let mut out = vec![];
        for &m in self.factors.iter().filter(|&&m| m > 0) {
            out.extend(prime_power_parts(m).into_iter().map(|(_, pk)| pk));
        }
        out.sort_unstable();
        out
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        Self::from_cyclic_orders(&all)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.factors.len()] }
    }

    pub fn reduce(&self, e: &GroupElement) -> GroupElement {
        assert_eq!(e.coords.len(), self.factors.len(), "element has wrong length");
        let coords = e
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| if m == 0 { x } else { x.mod_floor(&(m as i64)) })
            .collect();
        GroupElement { coords }
    }

    pub fn element(&self, coords: &[i64]) -> GroupElement {
        self.reduce(&GroupElement { coords: coords.to_vec() })
    }

    /// The element `c` placed in the single factor of a cyclic group.
    pub fn scalar(&self, c: i64) -> GroupElement {
        assert_eq!(self.factors.len(), 1, "scalar() needs a cyclic group");
        self.element(&[c])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.reduce(&GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        self.reduce(&GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(&GroupElement { coords: a.coords.iter().map(|x| -x).collect() })
    }

    pub fn mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.reduce(&GroupElement { coords: a.coords.iter().map(|x| k * x).collect() })
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        self.reduce(a).coords.iter().all(|&x| x == 0)
    }

    /// All elements in lexicographic coordinate order (finite groups only).
    pub fn elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![self.zero()];
        for (k, &m) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for x in 0..m as i64 {
                    let mut c = e.clone();
                    c.coords[k] = x;
                    next.push(c);
                }
            }
            out = next;
        }
        out
    }

    /// The `r`-torsion subgroup `{g : r g = 0}` and the quotient `G / rG`.
    pub fn torsion_and_quotient(&self, r: u64) -> Result<(FinAbGroup, FinAbGroup), Error> {
        if r == 0 {
            return Err(Error::Domain("r must be positive".into()));
        }
        let mut tors = vec![];
        let mut quot = vec![];
        for &m in &self.factors {
            if m == 0 {
                quot.push(r);
            } else {
                let g = m.gcd(&r);
                tors.push(g);
                quot.push(g);
            }
        }
        Ok((Self::from_cyclic_orders(&tors), Self::from_cyclic_orders(&quot)))
    }

    /// `r`-torsion subgroup.
    pub fn torsion(&self, r: u64) -> FinAbGroup {
        self.torsion_and_quotient(r).expect("positive r").0
    }

    /// Quotient `G / rG`.
    pub fn quotient(&self, r: u64) -> FinAbGroup {
        self.torsion_and_quotient(r).expect("positive r").1
    }

    /// Parses a comma-separated list of cyclic orders (`0` for `Z`).
    pub fn parse(spec: &str) -> Result<Self, Error> {
        let mut orders = vec![];
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let m: u64 =
                part.parse().map_err(|_| Error::Domain(format!("bad coefficient factor '{part}'")))?;
            orders.push(m);
        }
        Ok(Self::from_cyclic_orders(&orders))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Prime factorization of `m > 1` as `(p, p^k)` pairs.
pub fn prime_power_parts(mut m: u64) -> Vec<(u64, u64)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut pk = 1;
            while m.is_multiple_of(p) {
                m /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, m));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_power_parts(n) == vec![(n, n)]
}
