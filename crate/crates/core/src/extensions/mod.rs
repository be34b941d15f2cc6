//! Central extensions `0 -> Gamma -> E -> Z/v -> 0` of the cyclic linear
//! cycle sets: construction from a cocycle pair, verification, equivalence
//! and classification.

mod enumerate;

pub use enumerate::{enumerate_extension_classes, EnumerationMethod, ExtensionClass, BRUTE_CAP};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElement};
use crate::cycleset::{make_cyclic_lcs, CyclicFamilyParams, LinearCycleSet};
use crate::error::{Error, Result};
use crate::lcs_cohomology::cocycles::{family_criterion, verify_cocycle_lcs, CocyclePair, FamilyParams};
use crate::verdict::Verdict;

/// Associativity of the twisted sum is re-checked by brute force when
/// `|Gamma| v` is at most this.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// The set `Gamma x Z/v` with
/// `(c,i) + (c',i') = (c + c' + xi1(i,i'), i + i')` and
/// `(c,i) . (c',i') = (c' + xi2(i,i'), i . i')`.
///
/// `family` records the explicit parameters when the pair came from
/// [`crate::lcs_cohomology::cocycle_family`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralExtension {
    pub gamma: FinAbGroup,
    pub params: CyclicFamilyParams,
    pub pair: CocyclePair,
    pub family: Option<FamilyParams>,
}

/// A carrier element `(c, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtElement {
    pub c: GroupElement,
    pub i: usize,
}

impl CentralExtension {
    pub fn v(&self) -> usize {
        self.pair.v
    }

    pub fn base(&self) -> LinearCycleSet {
        make_cyclic_lcs(&self.params)
    }

    pub fn add(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let g = &self.gamma;
        let c = g.add(&g.add(&x.c, &y.c), &self.pair.xi1[x.i][y.i]);
        ExtElement { c, i: (x.i + y.i) % self.v() }
    }

    pub fn dot(&self, lcs: &LinearCycleSet, x: &ExtElement, y: &ExtElement) -> ExtElement {
        ExtElement { c: self.gamma.add(&y.c, &self.pair.xi2[x.i][y.i]), i: lcs.op(x.i, y.i) }
    }

    pub fn iota(&self, c: &GroupElement) -> ExtElement {
        ExtElement { c: c.clone(), i: 0 }
    }

    pub fn pi(&self, x: &ExtElement) -> usize {
        x.i
    }

    /// All elements, ordered by `i` and then by `gamma.elements()`.
    pub fn elements(&self) -> Vec<ExtElement> {
        let els = self.gamma.elements();
        (0..self.v()).flat_map(|i| els.iter().map(move |c| ExtElement { c: c.clone(), i })).collect()
    }

    /// The carrier as explicit operation tables on `0..|E|`, indexed like
    /// [`CentralExtension::elements`].
    pub fn tables(&self) -> Tables {
        let els = self.elements();
        let index: HashMap<&ExtElement, usize> = els.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let lcs = self.base();
        let n = els.len();
        let mut add = vec![vec![0; n]; n];
        let mut dot = vec![vec![0; n]; n];
        for (a, x) in els.iter().enumerate() {
            for (b, y) in els.iter().enumerate() {
                add[a][b] = index[&self.add(x, y)];
                dot[a][b] = index[&self.dot(&lcs, x, y)];
            }
        }
        let zero = index[&self.iota(&self.gamma.zero())];
        Tables { add, dot, zero }
    }
}

/// Operation tables of a finite linear cycle set on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub add: Vec<Vec<usize>>,
    pub dot: Vec<Vec<usize>>,
    pub zero: usize,
}

impl Tables {
    pub fn len(&self) -> usize {
        self.add.len()
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty()
    }

    /// Abelian group axioms for `add`.
    pub fn verify_group(&self) -> Verdict {
        let n = self.len();
        let (s, z) = (&self.add, self.zero);
        for a in 0..n {
            if s[z][a] != a {
                return Verdict::fail("additive identity", vec![a as i64], "0 + a != a");
            }
            if !(0..n).any(|b| s[a][b] == z) {
                return Verdict::fail("additive inverse", vec![a as i64], "a has no inverse");
            }
            for b in 0..n {
                if s[a][b] != s[b][a] {
                    return Verdict::fail("commutativity", vec![a as i64, b as i64], "a + b != b + a");
                }
                for c in 0..n {
                    if s[s[a][b]][c] != s[a][s[b][c]] {
                        return Verdict::fail("associativity", vec![a as i64, b as i64, c as i64], "(a+b)+c != a+(b+c)");
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Bijective left translations, `(a.b).(a.c) = (b.a).(b.c)`,
    /// `a.(b+c) = a.b + a.c` and `(a+b).c = (a.b).(a.c)`.
    pub fn verify_linear_cycle_set(&self) -> Verdict {
        let n = self.len();
        let (s, d) = (&self.add, &self.dot);
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut seen[d[a][b]], true) {
                    return Verdict::fail("left translation bijective", vec![a as i64], "translation repeats a value");
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = || vec![a as i64, b as i64, c as i64];
                    if d[d[a][b]][d[a][c]] != d[d[b][a]][d[b][c]] {
                        return Verdict::fail("cycle set identity", w(), "(a.b).(a.c) != (b.a).(b.c)");
                    }
                    if d[a][s[b][c]] != s[d[a][b]][d[a][c]] {
                        return Verdict::fail("left distributivity", w(), "a.(b+c) != a.b + a.c");
                    }
                    if d[s[a][b]][c] != d[d[a][b]][d[a][c]] {
                        return Verdict::fail("sum compatibility", w(), "(a+b).c != (a.b).(a.c)");
                    }
                }
            }
        }
        Verdict::pass()
    }
}

/// Builds the extension of `params` by `gamma` twisted by `pair`, refusing
/// pairs that fail [`verify_cocycle_lcs`].
pub fn build_extension(gamma: &FinAbGroup, params: &CyclicFamilyParams, pair: CocyclePair) -> Result<CentralExtension> {
    build(gamma, params, pair, None)
}

/// [`build_extension`] for an explicit family member, remembering its
/// parameters for the criterion cross-check in [`extensions_equivalent`].
pub fn build_family_extension(
    gamma: &FinAbGroup,
    params: &CyclicFamilyParams,
    fam: &FamilyParams,
) -> Result<CentralExtension> {
    let pair = crate::lcs_cohomology::cocycle_family(params, gamma, fam)?;
    build(gamma, params, pair, Some(fam.clone()))
}

fn build(
    gamma: &FinAbGroup,
    params: &CyclicFamilyParams,
    pair: CocyclePair,
    family: Option<FamilyParams>,
) -> Result<CentralExtension> {
    if !gamma.is_finite() {
        return Err(Error::Unsupported("extensions are built for finite coefficient groups".into()));
    }
    if pair.v != params.v() as usize {
        return Err(Error::Domain(format!("pair has order {}, parameters have v = {}", pair.v, params.v())));
    }
    let ver = verify_cocycle_lcs(&pair, &make_cyclic_lcs(params), gamma);
    if let Some(f) = &ver.failure {
        return Err(Error::Domain(format!("not a normalized 2-cocycle: {} fails at {:?}", f.check, f.witness)));
    }
    let ext = CentralExtension { gamma: gamma.clone(), params: *params, pair, family };
    if gamma.order().unwrap_or(u64::MAX) as usize * ext.v() <= ASSOCIATIVITY_CHECK_LIMIT {
        let ver = ext.tables().verify_group();
        if !ver.is_pass() {
            return Err(Error::Verification(format!("twisted sum: {ver}")));
        }
    }
    Ok(ext)
}

/// Checks, in this order: that `Gamma` acts trivially
/// (`iota(c).e = e` and `e.iota(c) = iota(c)`), exactness of
/// `0 -> Gamma -> E -> Z/v -> 0`, that `iota` and `pi` are morphisms, and
/// the linear cycle set axioms of `E`.
pub fn verify_central_extension(ext: &CentralExtension) -> Verdict {
    let g = &ext.gamma;
    let lcs = ext.base();
    let els = ext.elements();
    let gels = g.elements();
    let w = |x: &ExtElement| {
        let mut out = x.c.coords.clone();
        out.push(x.i as i64);
        out
    };
    for c in &gels {
        let ic = ext.iota(c);
        for e in &els {
            if ext.dot(&lcs, &ic, e) != *e {
                return Verdict::fail("kernel acts trivially", w(e), "iota(c).e != e");
            }
            if ext.dot(&lcs, e, &ic) != ic {
                return Verdict::fail("kernel invariance", w(e), "e.iota(c) != iota(c)");
            }
        }
    }
    // Exactness: iota is injective by construction; check ker pi = im iota
    // and surjectivity of pi through the zero section.
    for c in &gels {
        if ext.pi(&ext.iota(c)) != 0 {
            return Verdict::fail("exactness", c.coords.clone(), "pi(iota(c)) != 0");
        }
    }
    let zero = ext.iota(&g.zero());
    if ext.add(&zero, &zero) != zero {
        return Verdict::fail("exactness", vec![], "iota(0) is not the neutral element");
    }
    for c in &gels {
        for d in &gels {
            let (ic, id) = (ext.iota(c), ext.iota(d));
            if ext.add(&ic, &id) != ext.iota(&g.add(c, d)) {
                return Verdict::fail("iota additive", [c.coords.clone(), d.coords.clone()].concat(), "iota(c+d) != iota(c)+iota(d)");
            }
            if ext.dot(&lcs, &ic, &id) != id {
                return Verdict::fail("iota dot", [c.coords.clone(), d.coords.clone()].concat(), "iota(c).iota(d) != iota(d)");
            }
        }
    }
    for x in &els {
        for y in &els {
            if ext.pi(&ext.add(x, y)) != lcs.add(x.i, y.i) {
                return Verdict::fail("pi additive", [w(x), w(y)].concat(), "pi(x+y) != pi(x)+pi(y)");
            }
            if ext.pi(&ext.dot(&lcs, x, y)) != lcs.op(x.i, y.i) {
                return Verdict::fail("pi dot", [w(x), w(y)].concat(), "pi(x.y) != pi(x).pi(y)");
            }
        }
    }
    let t = ext.tables();
    t.verify_group().and_then(|| t.verify_linear_cycle_set())
}

/// Outcome of [`extensions_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    /// `eta(i)` for `0 <= i < v` with `(c, i) -> (c + eta(i), i)` an
    /// isomorphism from the first extension to the second, if one exists.
    pub witness: Option<Vec<GroupElement>>,
    /// Values of `eta(1)` examined. The additive equations determine `eta`
    /// from `eta(1)`, so this exhausts all `|Gamma|^(v-1)` normalized maps.
    pub candidates_examined: usize,
    /// The closed criterion, when both extensions carry family parameters.
    pub criterion: Option<bool>,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        self.witness.is_some()
    }
}

/// Searches for `eta` with `(c, i) -> (c + eta(i), i)` an isomorphism
/// `E1 -> E2`. Such a map commutes with `iota` and `pi`, and every
/// equivalence has this form.
///
/// The map is additive iff `xi1_1 - xi1_2 = eta(i) + eta(i') - eta(i+i')`,
/// so `eta(i+1) = eta(i) + eta(1) - (xi1_1 - xi1_2)(i, 1)` fixes `eta` from
/// `eta(1)`. Each of the `|Gamma|` choices is completed this way and then
/// tested against every equation. When both extensions came from the
/// explicit families the closed criterion is evaluated too, and a
/// disagreement is an error.
pub fn extensions_equivalent(e1: &CentralExtension, e2: &CentralExtension) -> Result<Equivalence> {
    if e1.gamma != e2.gamma || e1.params != e2.params {
        return Err(Error::Domain("extensions over different groups or parameters".into()));
    }
    let g = &e1.gamma;
    let v = e1.v();
    let lcs = e1.base();
    let d1 = e1.pair.sub(&e2.pair, g);
    let gels = g.elements();
    let mut witness = None;
    let mut examined = 0;
    for eta1 in &gels {
        examined += 1;
        let mut eta = vec![g.zero(); v];
        if v > 1 {
            eta[1] = eta1.clone();
        }
        for i in 1..v.saturating_sub(1) {
            eta[i + 1] = g.sub(&g.add(&eta[i], eta1), &d1.xi1[i][1]);
        }
        let additive = (0..v).all(|a| {
            (0..v).all(|b| d1.xi1[a][b] == g.sub(&g.add(&eta[a], &eta[b]), &eta[(a + b) % v]))
        });
        let dot = additive && (0..v).all(|a| (0..v).all(|b| d1.xi2[a][b] == g.sub(&eta[b], &eta[lcs.op(a, b)])));
        if dot {
            witness = Some(eta);
            break;
        }
    }
    let criterion = match (&e1.family, &e2.family) {
        (Some(a), Some(b)) => Some(family_criterion(&e1.params, g, a, b)),
        _ => None,
    };
    if let Some(c) = criterion {
        if c != witness.is_some() {
            return Err(Error::RouteDisagreement(format!(
                "closed criterion says {c}, witness search says {} for {} by {}",
                witness.is_some(),
                e1.params,
                g
            )));
        }
    }
    Ok(Equivalence { witness, candidates_examined: examined, criterion })
}

/// Applies `(c, i) -> (c + eta(i), i)` and checks that it is an
/// isomorphism `E1 -> E2` commuting with `iota` and `pi`.
pub fn verify_equivalence(e1: &CentralExtension, e2: &CentralExtension, eta: &[GroupElement]) -> Verdict {
    let g = &e1.gamma;
    let lcs = e1.base();
    if eta.len() != e1.v() || !g.is_zero(&eta[0]) {
        return Verdict::fail("witness shape", vec![eta.len() as i64], "eta must have v entries and eta(0) = 0");
    }
    let phi = |x: &ExtElement| ExtElement { c: g.add(&x.c, &eta[x.i]), i: x.i };
    let els = e1.elements();
    for x in &els {
        for y in &els {
            let w = || [x.c.coords.clone(), vec![x.i as i64], y.c.coords.clone(), vec![y.i as i64]].concat();
            if phi(&e1.add(x, y)) != e2.add(&phi(x), &phi(y)) {
                return Verdict::fail("phi additive", w(), "phi(x+y) != phi(x)+phi(y)");
            }
            if phi(&e1.dot(&lcs, x, y)) != e2.dot(&lcs, &phi(x), &phi(y)) {
                return Verdict::fail("phi dot", w(), "phi(x.y) != phi(x).phi(y)");
            }
        }
    }
    Verdict::pass()
}
