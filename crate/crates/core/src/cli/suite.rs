//! The `verify` command: structural checks for one family member and a
//! seeded sample of cohomology-class comparisons.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{CheckOutcome, Member, VerifyRow};
use crate::abelian::{FinAbGroup, GroupElement};
use crate::cycleset::{derived_ybe_solution, make_cyclic_lcs, verify_cycle_set, verify_linear, CyclicFamilyParams};
use crate::cyclic_resolution::{comparison_maps, contracting_homotopies, dl_maps, structural_differentials};
use crate::error::{Error, Result};
use crate::extensions::{build_family_extension, extensions_equivalent, verify_central_extension};
use crate::lcs_cohomology::{
    cocycle_family, cohomologous, cohomology, family_criterion, family_parameters, full_double_complex, phi_hat,
    reduced_complex, verify_cocycle, CocyclePair, Method,
};
use crate::verdict::Verdict;

/// Random class comparisons drawn per run.
const SAMPLES: usize = 24;

/// Errors that signal a failed identity become failed checks; parameter
/// errors abort the suite.
fn outcome(name: &str, r: Result<Verdict>) -> Result<CheckOutcome> {
    let (pass, detail) = match r {
        Ok(v) => (v.is_pass(), v.to_string()),
        Err(e @ (Error::RouteDisagreement(_) | Error::Verification(_) | Error::InconsistentComplex(_) | Error::NotSmall(_))) => {
            (false, e.to_string())
        }
        Err(e) => return Err(e),
    };
    Ok(CheckOutcome { name: name.to_string(), pass, detail })
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, a: T, b: T) -> Verdict {
    if a == b {
        Verdict::pass()
    } else {
        Verdict::fail(what, vec![], format!("{a:?} != {b:?}"))
    }
}

fn random_element(rng: &mut ChaCha8Rng, gamma: &FinAbGroup) -> GroupElement {
    let coords: Vec<i64> = gamma.factors().iter().map(|&m| rng.gen_range(0..m as i64)).collect();
    gamma.element(&coords)
}

/// The coboundary of a degree one cochain `c` with `c(0) = 0`.
fn coboundary(params: &CyclicFamilyParams, gamma: &FinAbGroup, c: &[GroupElement]) -> CocyclePair {
    let lcs = make_cyclic_lcs(params);
    let v = lcs.v;
    let mut pair = CocyclePair::zero(v, gamma);
    for a in 0..v {
        for b in 0..v {
            pair.xi1[a][b] = gamma.sub(&gamma.sub(&c[lcs.add(a, b)], &c[a]), &c[b]);
            pair.xi2[a][b] = gamma.sub(&c[lcs.op(a, b)], &c[b]);
        }
    }
    pair
}

pub fn verify_suite(params: &CyclicFamilyParams, gamma: &FinAbGroup, seed: u64) -> Result<VerifyRow> {
    if !gamma.is_finite() {
        return Err(Error::Unsupported("the verification suite needs a finite coefficient group".into()));
    }
    let lcs = make_cyclic_lcs(params);
    let mut checks = Vec::new();

    checks.push(outcome("cycle set axioms", Ok(verify_cycle_set(&lcs).and_then(|| verify_linear(&lcs))))?);
    checks.push(outcome("Yang-Baxter solution", derived_ybe_solution(&lcs).map(|y| y.verify()))?);
    checks.push(outcome(
        "resolution complexes",
        structural_differentials(params, 4).map(|_| Verdict::pass()),
    )?);
    checks.push(outcome("contracting homotopies", contracting_homotopies(params, 4))?);
    checks.push(outcome(
        "d^l closed form",
        (|| {
            for total in 1..=4usize {
                for beta in 1..=total {
                    for l in 1..=beta {
                        dl_maps(params, total - beta, beta, l)?;
                    }
                }
            }
            Ok(Verdict::pass())
        })(),
    )?);
    checks.push(outcome("comparison maps", comparison_maps(params, 3).map(|c| c.verify()))?);
    checks.push(outcome("full double complex", full_double_complex(&lcs, 3).map(|s| s.verify()))?);
    checks.push(outcome("reduced complex", reduced_complex(params).map(|r| r.verify()))?);
    checks.push(outcome("phi-hat forms", phi_hat(params).map(|_| Verdict::pass()))?);
    for n in [1, 2] {
        checks.push(outcome(
            &format!("H^{n} routes agree"),
            (|| {
                let closed = cohomology(params, gamma, n, Method::Closed)?.group;
                let full = cohomology(params, gamma, n, Method::Full)?.group;
                let reduced = cohomology(params, gamma, n, Method::Reduced)?.group;
                Ok(same("full = closed", &full, &closed).and_then(|| same("reduced = closed", &reduced, &closed)))
            })(),
        )?);
    }

    let fams = family_parameters(params, gamma)?;
    checks.push(outcome(
        "family cocycles and extensions",
        (|| {
            for f in &fams {
                let pair = cocycle_family(params, gamma, f)?;
                let ver = verify_cocycle(&pair, params, gamma)?;
                if !ver.is_pass() {
                    return Ok(ver);
                }
                let ver = verify_central_extension(&build_family_extension(gamma, params, f)?);
                if !ver.is_pass() {
                    return Ok(ver);
                }
            }
            Ok(Verdict::pass())
        })(),
    )?);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    checks.push(outcome(
        "sampled criterion = witness search",
        (|| {
            for _ in 0..SAMPLES {
                let (Some(a), Some(b)) = (fams.choose(&mut rng), fams.choose(&mut rng)) else { break };
                let ea = build_family_extension(gamma, params, a)?;
                let eb = build_family_extension(gamma, params, b)?;
                // Raises a disagreement error itself if the two differ.
                let eq = extensions_equivalent(&ea, &eb)?;
                let cob = cohomologous(&ea.pair, &eb.pair, params, gamma)?.is_some();
                let ver = same("criterion = cohomologous", family_criterion(params, gamma, a, b), cob)
                    .and_then(|| same("search = cohomologous", eq.is_equivalent(), cob));
                if !ver.is_pass() {
                    return Ok(ver);
                }
            }
            Ok(Verdict::pass())
        })(),
    )?);
    checks.push(outcome(
        "sampled coboundary shifts",
        (|| {
            let v = params.v() as usize;
            for _ in 0..SAMPLES {
                let Some(f) = fams.choose(&mut rng) else { break };
                let mut c = vec![gamma.zero()];
                c.extend((1..v).map(|_| random_element(&mut rng, gamma)));
                let base = cocycle_family(params, gamma, f)?;
                let shift = coboundary(params, gamma, &c);
                let neg = CocyclePair::zero(v, gamma).sub(&shift, gamma);
                let shifted = base.sub(&neg, gamma);
                let ver = verify_cocycle(&shifted, params, gamma)?;
                if !ver.is_pass() {
                    return Ok(ver);
                }
                if cohomologous(&shifted, &base, params, gamma)?.is_none() {
                    return Ok(Verdict::fail("shift stays in its class", c.iter().flat_map(|x| x.coords.clone()).collect(), ""));
                }
            }
            Ok(Verdict::pass())
        })(),
    )?);

    Ok(VerifyRow {
        member: Member { p: params.p, nu: params.nu, eta: params.eta },
        coeff: gamma.factors().to_vec(),
        seed,
        checks,
    })
}
