//! Listing the equivalence classes of central extensions, either from the
//! explicit families and their closed criteria or by brute force over all
//! normalized cocycle pairs.

use serde::{Deserialize, Serialize};

use super::{build_extension, extensions_equivalent, CentralExtension};
use crate::abelian::{FinAbGroup, GroupElement};
use crate::cycleset::{make_cyclic_lcs, CyclicFamilyParams};
use crate::error::{Error, Result};
use crate::lcs_cohomology::cocycles::{
    cocycle_family, family_criterion, family_parameters, theta, vertical_defect, verify_cocycle_lcs, CocyclePair,
    FamilyParams,
};

/// Largest number of candidate pairs the brute-force enumeration accepts.
pub const BRUTE_CAP: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationMethod {
    Theorem,
    Brute,
}

impl std::str::FromStr for EnumerationMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(EnumerationMethod::Theorem),
            "brute" => Ok(EnumerationMethod::Brute),
            _ => Err(Error::Domain(format!("unknown enumeration method '{s}'"))),
        }
    }
}

/// One class with its canonical representative: the first member met in
/// the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionClass {
    pub representative: CocyclePair,
    /// Family parameters of the representative (theorem method only).
    pub family: Option<FamilyParams>,
    /// Their image under the classifying map (theorem method only).
    pub theta: Option<Vec<GroupElement>>,
    /// Number of enumerated parameter tuples or cocycle pairs in the class.
    pub members: usize,
}

pub fn enumerate_extension_classes(
    gamma: &FinAbGroup,
    params: &CyclicFamilyParams,
    method: EnumerationMethod,
) -> Result<Vec<ExtensionClass>> {
    if !gamma.is_finite() {
        return Err(Error::Unsupported("enumeration needs a finite coefficient group".into()));
    }
    match method {
        EnumerationMethod::Theorem => by_theorem(gamma, params),
        EnumerationMethod::Brute => by_brute_force(gamma, params),
    }
}

fn by_theorem(gamma: &FinAbGroup, params: &CyclicFamilyParams) -> Result<Vec<ExtensionClass>> {
    let mut reps: Vec<(FamilyParams, usize)> = Vec::new();
    for f in family_parameters(params, gamma)? {
        match reps.iter_mut().find(|(r, _)| family_criterion(params, gamma, r, &f)) {
            Some((_, n)) => *n += 1,
            None => reps.push((f, 1)),
        }
    }
    reps.into_iter()
        .map(|(f, members)| {
            Ok(ExtensionClass {
                representative: cocycle_family(params, gamma, &f)?,
                theta: Some(theta(params, gamma, &f)),
                family: Some(f),
                members,
            })
        })
        .collect()
}

/// Number of normalized pairs: symmetric `xi1` on `v(v-1)/2` entries and
/// `xi2` on `(v-1)^2` entries.
pub fn brute_force_size(gamma: &FinAbGroup, v: usize) -> Option<u128> {
    let order = gamma.order()? as u128;
    let exp = (v * (v - 1) / 2 + (v - 1) * (v - 1)) as u32;
    order.checked_pow(exp)
}

/// Every assignment of group elements to `n` slots, in lexicographic
/// order of element indices.
fn assignments<'a>(els: &'a [GroupElement], n: usize) -> impl Iterator<Item = Vec<&'a GroupElement>> + 'a {
    let total = (els.len() as u128).pow(n as u32);
    (0..total).map(move |mut k| {
        let mut out = vec![&els[0]; n];
        for slot in (0..n).rev() {
            out[slot] = &els[(k % els.len() as u128) as usize];
            k /= els.len() as u128;
        }
        out
    })
}

fn by_brute_force(gamma: &FinAbGroup, params: &CyclicFamilyParams) -> Result<Vec<ExtensionClass>> {
    let v = params.v() as usize;
    let size = brute_force_size(gamma, v).unwrap_or(u128::MAX);
    if size > BRUTE_CAP {
        return Err(Error::OutOfScope(format!("brute force would examine {size} candidate pairs, cap is {BRUTE_CAP}")));
    }
    let els = gamma.elements();
    let lcs = make_cyclic_lcs(params);
    let upper: Vec<(usize, usize)> = (1..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
    let square: Vec<(usize, usize)> = (1..v).flat_map(|a| (1..v).map(move |b| (a, b))).collect();

    let mut classes: Vec<(CentralExtension, usize)> = Vec::new();
    for x1 in assignments(&els, upper.len()) {
        let mut pair = CocyclePair::zero(v, gamma);
        for (&(a, b), x) in upper.iter().zip(&x1) {
            pair.xi1[a][b] = (*x).clone();
            pair.xi1[b][a] = (*x).clone();
        }
        // The (0,3) component only involves xi1.
        if vertical_defect(&pair.xi1, gamma).is_some() {
            continue;
        }
        for x2 in assignments(&els, square.len()) {
            for (&(a, b), x) in square.iter().zip(&x2) {
                pair.xi2[a][b] = (*x).clone();
            }
            if !verify_cocycle_lcs(&pair, &lcs, gamma).is_pass() {
                continue;
            }
            let ext = build_extension(gamma, params, pair.clone())?;
            let mut found = false;
            for (rep, n) in classes.iter_mut() {
                if extensions_equivalent(rep, &ext)?.is_equivalent() {
                    *n += 1;
                    found = true;
                    break;
                }
            }
            if !found {
                classes.push((ext, 1));
            }
        }
    }
    Ok(classes
        .into_iter()
        .map(|(e, members)| ExtensionClass { representative: e.pair, family: None, theta: None, members })
        .collect())
}
