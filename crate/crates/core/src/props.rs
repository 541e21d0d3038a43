//! Randomized property suites over catalog rings and the models realized
//! from their cocycles. Each suite is a pure function of its seed and case
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Bimodule, BimoduleTables, FiniteRing};
use crate::catalog::{self, Pair};
use crate::catgroup::{check_sym_coherence, induced_pi1_map, MonoidalFunctorData};
use crate::catring::{
    check_2hom, check_ring_coherence, multiplication_functor, obstruction, pi1_bimodule,
    SkeletalCatRing,
};
use crate::cochain::cohomology::CocycleSpace;
use crate::cochain::{
    coboundary, cocycle_defect, cohomologous, equation_defects, is_cocycle, Cochain2, Cochain3,
    Component, Convention,
};
use crate::correspondence::{
    canonical_choices, equiv_from_coboundary, extract, realize, roundtrip_2hom,
    RepresentativeChoices,
};
use crate::error::{Error, Result};

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 13] = [
    "dd",
    "realize",
    "noncocycle",
    "roundtrip",
    "roundtrip-identity",
    "roundtrip-2hom",
    "choices",
    "coboundary-2hom",
    "holef",
    "holep",
    "holem",
    "coma",
    "obstruction",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    /// Cases where the property had nothing to check, e.g. a random
    /// cochain that happened to be a cocycle in `noncocycle`.
    pub vacuous: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A catalog pair with its cocycle lattice.
pub struct Instance {
    pub name: String,
    pub ring: FiniteRing,
    pub bimod: Bimodule,
    pub tables: BimoduleTables,
    pub space: CocycleSpace,
}

impl Instance {
    pub fn new(p: Pair) -> Result<Self> {
        Ok(Self {
            name: format!("{}/{}", p.ring_name, p.bimod_name),
            tables: BimoduleTables::new(&p.bimod)?,
            space: CocycleSpace::new(&p.ring, &p.bimod)?,
            ring: p.ring,
            bimod: p.bimod,
        })
    }

    fn b(&self) -> u32 {
        self.tables.size() as u32
    }

    fn n(&self) -> usize {
        self.ring.size()
    }

    fn normalized_gamma(&self, rng: &mut impl Rng) -> Cochain2 {
        Cochain2::random_normalized(self.n(), self.ring.zero(), self.tables.size(), rng)
    }

    fn model(&self, rng: &mut impl Rng) -> Result<(Cochain3, SkeletalCatRing)> {
        let phi = self.space.random_cocycle(rng);
        let k = realize(&phi, &self.ring, &self.bimod)?;
        Ok((phi, k))
    }
}

/// Instances for every catalog pair with `|R| <= 4` and `|B| <= 4`.
pub fn catalog_instances() -> Result<Vec<Instance>> {
    catalog::pairs(4, 4)
        .into_iter()
        .map(Instance::new)
        .collect()
}

/// Runs `suite` over the small catalog, visiting the instances in turn.
pub fn run_suite(suite: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    run_suite_on(suite, &catalog_instances()?, seed, cases)
}

pub fn run_suite_on(
    suite: &str,
    instances: &[Instance],
    seed: u64,
    cases: usize,
) -> Result<SuiteReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Precondition(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    if instances.is_empty() {
        return Err(Error::Precondition("no instances to test".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        suite: suite.into(),
        cases,
        vacuous: 0,
        failures: Vec::new(),
    };
    for case in 0..cases {
        let inst = &instances[case % instances.len()];
        match run_case(suite, inst, &mut rng)? {
            Outcome::Pass => {}
            Outcome::Vacuous => report.vacuous += 1,
            Outcome::Fail(msg) => report
                .failures
                .push(format!("case {case} ({}): {msg}", inst.name)),
        }
    }
    Ok(report)
}

pub enum Outcome {
    Pass,
    Vacuous,
    Fail(String),
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}

/// One randomized case of `suite` on `inst`.
pub fn run_case(suite: &str, inst: &Instance, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &inst.tables.group;
    Ok(match suite {
        "dd" => {
            // Alternate normalized and unnormalized 2-cochains.
            if rng.gen_bool(0.5) {
                let gamma = inst.normalized_gamma(rng);
                let d = cocycle_defect(
                    &coboundary(&gamma, &inst.ring, &inst.tables),
                    &inst.ring,
                    &inst.tables,
                )?;
                check(d.is_empty(), || {
                    format!(
                        "normalized gamma: {} fails at {:?}",
                        d[0].equation, d[0].args
                    )
                })
            } else {
                let gamma = Cochain2::random(inst.n(), inst.tables.size(), rng);
                let c = coboundary(&gamma, &inst.ring, &inst.tables);
                let d = equation_defects(&c, &inst.ring, &inst.tables, Convention::Coherent);
                check(d.is_empty(), || {
                    format!(
                        "unnormalized gamma: {} fails at {:?}",
                        d[0].equation, d[0].args
                    )
                })
            }
        }
        "realize" => {
            let (_, k) = inst.model(rng)?;
            let ring = check_ring_coherence(&k);
            let sym = check_sym_coherence(&k.additive);
            check(ring.is_empty() && sym.is_empty(), || {
                format!("{}", ring.first().or(sym.first()).expect("some failure"))
            })
        }
        "noncocycle" => {
            let psi = inst.space.random_cochain(rng);
            if is_cocycle(&psi, &inst.ring, &inst.tables, Convention::Coherent) {
                Outcome::Vacuous
            } else {
                let k = realize(&psi, &inst.ring, &inst.bimod)?;
                let fails = check_ring_coherence(&k).len() + check_sym_coherence(&k.additive).len();
                check(fails > 0, || {
                    "a non-cocycle realizes to a coherent model".into()
                })
            }
        }
        "roundtrip" => {
            let (phi, k) = inst.model(rng)?;
            let back = extract(&k, &canonical_choices(&k)?)?;
            check(back == phi, || {
                first_difference("canonical choices", &phi, &back)
            })
        }
        "roundtrip-identity" => {
            let (phi, k) = inst.model(rng)?;
            let back = extract(&k, &RepresentativeChoices::identity(k.size()))?;
            check(back == phi, || {
                first_difference("identity choices", &phi, &back)
            })
        }
        "roundtrip-2hom" => {
            let (_, k) = inst.model(rng)?;
            let report = check_2hom(&roundtrip_2hom(&k)?)?;
            check(
                report.is_ok() && report.pi0_identity && report.pi1_identity,
                || match report.failures.first() {
                    Some(f) => f.to_string(),
                    None => "induced maps are not identities".into(),
                },
            )
        }
        "choices" => {
            let (_, k) = inst.model(rng)?;
            let c1 = extract(&k, &RepresentativeChoices::random(&k, rng)?)?;
            let c2 = extract(&k, &RepresentativeChoices::random(&k, rng)?)?;
            match cohomologous(&c1, &c2, &inst.ring, &inst.bimod)? {
                None => Outcome::Fail("extracted cocycles are not cohomologous".into()),
                Some(gamma) => {
                    let d = coboundary(&gamma, &inst.ring, &inst.tables);
                    check(d == c2.sub(&c1, g), || {
                        "coboundary of the witness misses the difference".into()
                    })
                }
            }
        }
        "coboundary-2hom" => {
            let (phi, _) = inst.model(rng)?;
            let gamma = inst.normalized_gamma(rng);
            let phi2 = phi.add(&coboundary(&gamma, &inst.ring, &inst.tables), g);
            let h = equiv_from_coboundary(&phi, &phi2, &gamma, &inst.ring, &inst.bimod)?;
            let report = check_2hom(&h)?;
            check(
                report.is_ok() && report.pi0_identity && report.pi1_identity,
                || match report.failures.first() {
                    Some(f) => f.to_string(),
                    None => "induced maps are not identities".into(),
                },
            )
        }
        "holef" => holef(inst, rng)?,
        "holep" => {
            let (_, k) = inst.model(rng)?;
            let a = &k.additive;
            let (x, y) = (rng.gen_range(0..inst.n()), rng.gen_range(0..inst.n()));
            let [a1, a1p, a2, a2p] = [(); 4].map(|_| rng.gen_range(0..inst.b()));
            let lhs = a.deviation(k.add(x, y), a.p(x, y, a1, a2), a.p(x, y, a1p, a2p))?;
            let rhs = g.add(a.deviation(x, a1, a1p)?, a.deviation(y, a2, a2p)?);
            check(lhs == rhs, || format!("objects ({x}, {y}): {lhs} != {rhs}"))
        }
        "holem" => {
            let (_, k) = inst.model(rng)?;
            let acts = BimoduleTables::new(&pi1_bimodule(&k)?)?;
            let a = &k.additive;
            let (r, x) = (rng.gen_range(0..inst.n()), rng.gen_range(0..inst.n()));
            let (al, alp) = (rng.gen_range(0..inst.b()), rng.gen_range(0..inst.b()));
            let dev = a.deviation(x, al, alp)?;
            let left = a.deviation(k.mul(r, x), k.mm(r, x, 0, al), k.mm(r, x, 0, alp))?;
            let right = a.deviation(k.mul(x, r), k.mm(x, r, al, 0), k.mm(x, r, alp, 0))?;
            check(
                left == acts.lact(r, dev) && right == acts.ract(dev, r),
                || {
                    format!(
                        "r = {r}, x = {x}: left {left} vs {}, right {right} vs {}",
                        acts.lact(r, dev),
                        acts.ract(dev, r)
                    )
                },
            )
        }
        "coma" => {
            let (phi, k) = inst.model(rng)?;
            let n = inst.n();
            let mut bad = None;
            for i in 0..n.pow(4) {
                let m = crate::cochain::unidx(n, 4, i);
                if k.additive.coma(m[0], m[1], m[2], m[3]) != phi.get(Component::Plus, &m) {
                    bad = Some(m);
                    break;
                }
            }
            check(bad.is_none(), || {
                format!("coma differs from phi_+ at {:?}", bad.unwrap())
            })
        }
        "obstruction" => {
            let (_, k) = inst.model(rng)?;
            let v = obstruction(&k, true)?;
            check(v == 0, || format!("obstruction {v} is nonzero"))
        }
        _ => unreachable!("suite names are checked by run_suite_on"),
    })
}

/// `f_#(deviation(a, a')) = deviation(f a, f a')` for a random monoidal
/// functor out of a realized model: multiplication by an object on either
/// side, the equivalence from a coboundary, or the round-trip comparison.
fn holef(inst: &Instance, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (phi, k) = inst.model(rng)?;
    let f: MonoidalFunctorData = match rng.gen_range(0..3) {
        0 => multiplication_functor(&k, rng.gen_range(0..inst.n()), rng.gen_bool(0.5)),
        1 => {
            let gamma = inst.normalized_gamma(rng);
            let phi2 = phi.add(
                &coboundary(&gamma, &inst.ring, &inst.tables),
                &inst.tables.group,
            );
            equiv_from_coboundary(&phi, &phi2, &gamma, &inst.ring, &inst.bimod)?.additive()
        }
        _ => roundtrip_2hom(&k)?.additive(),
    };
    let fsharp = induced_pi1_map(&f)?;
    let x = rng.gen_range(0..inst.n());
    let (al, alp) = (rng.gen_range(0..inst.b()), rng.gen_range(0..inst.b()));
    let lhs = fsharp[f.source.deviation(x, al, alp)? as usize];
    let rhs = f
        .target
        .deviation(f.obj_map[x], f.fmor(x, al), f.fmor(x, alp))?;
    Ok(check(lhs == rhs, || {
        format!("object {x}, morphisms ({al}, {alp}): {lhs} != {rhs}")
    }))
}

fn first_difference(what: &str, phi: &Cochain3, back: &Cochain3) -> String {
    match phi.first_difference(back) {
        Some((c, args)) => format!(
            "{what}: extracted {} {:?} is {}, expected {}",
            c.name(),
            args,
            back.get(c, &args),
            phi.get(c, &args)
        ),
        None => unreachable!("cochains differ"),
    }
}
