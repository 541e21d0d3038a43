//! The nine acceptance criteria, one report line each. Exits nonzero when
//! any criterion fails.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crext_core::algebra::{Bimodule, BimoduleTables, FiniteAbelianGroup, FiniteRing};
use crext_core::catgroup::check_sym_coherence;
use crext_core::catring::{check_2hom, check_ring_coherence, obstruction};
use crext_core::cochain::cohomology::CocycleSpace;
use crext_core::cochain::{
    coboundary, cocycle_defect, compute_h3, equation_defects, is_cocycle, Cochain2, Cochain3,
    Component, Convention, Method,
};
use crext_core::correspondence::{
    canonical_choices, equiv_from_coboundary, extract, realize, RepresentativeChoices,
};
use crext_core::props::{self, Instance};
use crext_core::Result;

const SEED: u64 = 20240601;

/// Frozen from the enumeration oracle: over Z/2 with the standard actions
/// there are 512 normalized 3-cochains, 256 pairs of 2-cochains, and
/// Z^3 = B^3 = H^3 = 0.
const Z2_NORMALIZED_COCHAINS: u64 = 512;
const Z2_GAMMA_PAIRS: u64 = 256;
const Z2_ORDERS: (u128, u128, u128) = (1, 1, 1);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn z2() -> (FiniteRing, Bimodule) {
    (
        FiniteRing::zmod(2),
        Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap(),
    )
}

/// Every normalized 3-cochain over `space`, when there are at most `2^20`.
fn all_normalized(space: &CocycleSpace, orders: &[u64]) -> Vec<Cochain3> {
    let coords: Vec<u64> = space
        .layout()
        .free
        .iter()
        .flat_map(|_| orders.iter().copied())
        .collect();
    let total: u64 = coords.iter().product();
    assert!(total <= 1 << 20);
    (0..total)
        .map(|mut i| {
            let x: Vec<i64> = coords
                .iter()
                .map(|&d| {
                    let v = (i % d) as i64;
                    i /= d;
                    v
                })
                .collect();
            space.to_cochain(&x)
        })
        .collect()
}

fn coherent(phi: &Cochain3, r: &FiniteRing, b: &Bimodule) -> Result<bool> {
    let k = realize(phi, r, b)?;
    Ok(check_ring_coherence(&k).is_empty() && check_sym_coherence(&k.additive).is_empty())
}

fn criterion1() -> Result<Outcome> {
    let (r, b) = z2();
    let snf = compute_h3(&r, &b, Method::Snf)?;
    let en = compute_h3(&r, &b, Method::Enumeration)?;
    let space = CocycleSpace::new(&r, &b)?;
    let cochains = 2u64.pow(space.layout().free.len() as u32);
    let gammas = 2u64.pow(2 * 4);
    let same = (&snf.z3, &snf.b3, &snf.h3) == (&en.z3, &en.b3, &en.h3);
    let orders = (snf.z3_order, snf.b3_order, snf.h3_order);
    let frozen = orders == Z2_ORDERS && (en.z3_order, en.b3_order, en.h3_order) == Z2_ORDERS;
    outcome(
        same && frozen && cochains == Z2_NORMALIZED_COCHAINS && gammas == Z2_GAMMA_PAIRS,
        format!(
            "|Z3|, |B3|, |H3| = {:?} by both methods; {cochains} normalized cochains, {gammas} gamma pairs",
            orders
        ),
    )
}

fn criterion2() -> Result<Outcome> {
    let (r, b) = z2();
    let space = CocycleSpace::new(&r, &b)?;
    let t = BimoduleTables::new(&b)?;
    let mut cocycles = 0;
    let mut incoherent_cocycles = 0;
    let mut noncocycles = 0;
    let mut undetected = Vec::new();
    let mut coma_detects = 0;
    for psi in all_normalized(&space, &[2]) {
        let ok = coherent(&psi, &r, &b)?;
        if is_cocycle(&psi, &r, &t, Convention::Coherent) {
            cocycles += 1;
            incoherent_cocycles += usize::from(!ok);
            continue;
        }
        noncocycles += 1;
        if ok {
            let k = realize(&psi, &r, &b)?;
            let coma_differs = (0..16).any(|i| {
                let m = [i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1];
                k.additive.coma(m[0], m[1], m[2], m[3]) != psi.get(Component::Plus, &m)
            });
            coma_detects += usize::from(coma_differs);
            undetected.push(psi);
        }
    }
    let first = undetected
        .first()
        .map(|c| format!("{:?}", c.nonzero_entries()))
        .unwrap_or_default();
    outcome(
        incoherent_cocycles == 0 && undetected.is_empty(),
        format!(
            "{cocycles} cocycles, {incoherent_cocycles} incoherent; {} of {noncocycles} non-cocycles realize coherently{}; coma differs from phi_+ on {coma_detects} of those",
            undetected.len(),
            if first.is_empty() { String::new() } else { format!(" (first: {first})") },
        ),
    )
}

fn criterion3(instances: &[Instance]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (r, b) = z2();
    let mut samples: Vec<(String, Cochain3, &FiniteRing, &Bimodule)> = Vec::new();
    for phi in CocycleSpace::new(&r, &b)?.all_cocycles(1 << 16)? {
        samples.push(("z2/z2-std exhaustive".into(), phi, &r, &b));
    }
    for inst in instances {
        for _ in 0..100 {
            samples.push((
                inst.name.clone(),
                inst.space.random_cocycle(&mut rng),
                &inst.ring,
                &inst.bimod,
            ));
        }
    }
    let mut canonical_misses = 0;
    let mut identity_misses = 0;
    let mut failing_pairs: Vec<String> = Vec::new();
    for (name, phi, r, b) in &samples {
        let k = realize(phi, r, b)?;
        if extract(&k, &canonical_choices(&k)?)? != *phi {
            canonical_misses += 1;
            if !failing_pairs.contains(name) {
                failing_pairs.push(name.clone());
            }
        }
        if extract(&k, &RepresentativeChoices::identity(k.size()))? != *phi {
            identity_misses += 1;
        }
    }
    outcome(
        canonical_misses == 0,
        format!(
            "canonical choices reproduce phi on {} of {} cocycles (misses on {}); identity choices on {} of {}",
            samples.len() - canonical_misses,
            samples.len(),
            if failing_pairs.is_empty() { "none".to_string() } else { failing_pairs.join(", ") },
            samples.len() - identity_misses,
            samples.len()
        ),
    )
}

fn suite(name: &str, instances: &[Instance], cases: usize) -> Result<(bool, String)> {
    let r = props::run_suite_on(name, instances, SEED, cases)?;
    let mut s = format!("{name} {}/{}", r.cases - r.failures.len(), r.cases);
    if let Some(f) = r.failures.first() {
        s.push_str(&format!(" (first failure: {f})"));
    }
    Ok((r.passed(), s))
}

fn criterion4(instances: &[Instance]) -> Result<Outcome> {
    let (pass, s) = suite("choices", instances, 50)?;
    outcome(pass, s)
}

fn criterion5(instances: &[Instance]) -> Result<Outcome> {
    let selected: Vec<&Instance> = instances
        .iter()
        .filter(|i| i.name.starts_with("z2/") || i.name.starts_with("z4/"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let cases = 100;
    for case in 0..cases {
        let inst = selected[case % selected.len()];
        let phi = inst.space.random_cocycle(&mut rng);
        let gamma = Cochain2::random_normalized(
            inst.ring.size(),
            inst.ring.zero(),
            inst.tables.size(),
            &mut rng,
        );
        let phi2 = phi.add(
            &coboundary(&gamma, &inst.ring, &inst.tables),
            &inst.tables.group,
        );
        let report = check_2hom(&equiv_from_coboundary(
            &phi,
            &phi2,
            &gamma,
            &inst.ring,
            &inst.bimod,
        )?)?;
        if !(report.is_ok() && report.pi0_identity && report.pi1_identity) {
            failures.push(format!("case {case} on {}", inst.name));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} of {cases} pass over {} pairs{}",
            cases - failures.len(),
            selected.len(),
            first_of(&failures)
        ),
    )
}

fn first_of(v: &[String]) -> String {
    v.first()
        .map(|f| format!(" (first failure: {f})"))
        .unwrap_or_default()
}

fn criterion6(instances: &[Instance]) -> Result<Outcome> {
    let mut all = true;
    let mut parts = Vec::new();
    for name in ["holef", "holep", "holem"] {
        let (pass, s) = suite(name, instances, 500)?;
        all &= pass;
        parts.push(s);
    }
    outcome(all, parts.join(", "))
}

fn criterion7(instances: &[Instance]) -> Result<Outcome> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for inst in instances.iter().filter(|i| i.name.starts_with("z2/")) {
        for phi in inst.space.all_cocycles(1 << 16)? {
            let k = realize(&phi, &inst.ring, &inst.bimod)?;
            for i in 0..16 {
                let m = [i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1];
                checked += 1;
                if k.additive.coma(m[0], m[1], m[2], m[3]) != phi.get(Component::Plus, &m) {
                    failures.push(format!("{} at {m:?}", inst.name));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} matrices checked{}", first_of(&failures)),
    )
}

fn criterion8(instances: &[Instance]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let cases = 1000;
    for case in 0..cases {
        let inst = &instances[case % instances.len()];
        let (n, size) = (inst.ring.size(), inst.tables.size());
        // cocycle_defect takes normalized input, so unnormalized gamma is
        // checked against the raw equations.
        let defects = if rng.gen_bool(0.5) {
            let gamma = Cochain2::random_normalized(n, inst.ring.zero(), size, &mut rng);
            cocycle_defect(
                &coboundary(&gamma, &inst.ring, &inst.tables),
                &inst.ring,
                &inst.tables,
            )?
        } else {
            let gamma = Cochain2::random(n, size, &mut rng);
            equation_defects(
                &coboundary(&gamma, &inst.ring, &inst.tables),
                &inst.ring,
                &inst.tables,
                Convention::Coherent,
            )
        };
        if let Some(d) = defects.first() {
            failures.push(format!(
                "case {case} on {}: {} at {:?}",
                inst.name, d.equation, d.args
            ));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} of {cases} coboundaries are cocycles{}",
            cases - failures.len(),
            first_of(&failures)
        ),
    )
}

fn criterion9(instances: &[Instance]) -> Result<Outcome> {
    let (r, b) = z2();
    let mut nonzero = 0;
    let all = CocycleSpace::new(&r, &b)?.all_cocycles(1 << 16)?;
    for phi in &all {
        nonzero += usize::from(obstruction(&realize(phi, &r, &b)?, false)? != 0);
    }
    let (pass, s) = suite("obstruction", instances, 100)?;
    outcome(
        nonzero == 0 && pass,
        format!(
            "obstruction zero on {} of {} Z/2 cocycles; torsion and centrality {s}",
            all.len() - nonzero,
            all.len()
        ),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Result<Outcome> + 'a>;

fn main() {
    let start = Instant::now();
    let instances = props::catalog_instances().expect("catalog instances build");
    println!(
        "catalog: {} pairs prepared in {:.1}s",
        instances.len(),
        start.elapsed().as_secs_f64()
    );
    let criteria: [(&str, Criterion<'_>); 9] = [
        ("oracle equivalence for H3", Box::new(criterion1)),
        ("realization coherence", Box::new(criterion2)),
        ("exact round-trip", Box::new(|| criterion3(&instances))),
        ("choice independence", Box::new(|| criterion4(&instances))),
        (
            "coboundary to 2-homomorphism",
            Box::new(|| criterion5(&instances)),
        ),
        ("deviation calculus", Box::new(|| criterion6(&instances))),
        ("coma consistency", Box::new(|| criterion7(&instances))),
        ("d o d = 0", Box::new(|| criterion8(&instances))),
        ("obstruction sanity", Box::new(|| criterion9(&instances))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match run() {
            Ok(o) => (if o.pass { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{name}]: {status} in {:.1}s; {detail}",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
