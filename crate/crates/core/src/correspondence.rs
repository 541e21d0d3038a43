//! Cocycles to categorical rings and back.
//!
//! `realize` builds the skeletal model of a normalized 3-cochain; `extract`
//! reads a 3-cochain off a model and a set of representative choices as the
//! deviations between the two paths of each characteristic diagram.

use rand::Rng;

use crate::algebra::bimodule::{Bimodule, BimoduleTables};
use crate::algebra::ring::FiniteRing;
use crate::catring::{pi0_ring, pi1_bimodule, SkeletalCatRing, TwoHomomorphism};
use crate::cochain::equations::coboundary;
use crate::cochain::{check_normalized, cochain_error, idx3, idx4, Cochain2, Cochain3, Component};
use crate::error::{Error, Result};

/// The model of a normalized 3-cochain: objects `R`, automorphisms `B`,
/// componentwise addition of morphisms, `(b, x)(b', y) = (b y + x b', x y)`,
/// `a(r, s, t) = phi_+[[r, s], [0, t]]`, `c(r, s) = phi_+[[0, r], [s, 0]]`,
/// `m = phi_.`, `lambda.(r) = -phi_.(1, 1, r)`, `rho.(r) = phi_.(r, 1, 1)`,
/// `l = phi_.+`, `r = phi_+.`. Cocycles are not required.
pub fn realize(phi: &Cochain3, ring: &FiniteRing, bimod: &Bimodule) -> Result<SkeletalCatRing> {
    let n = ring.size();
    if phi.ring_size() != n {
        return Err(Error::Structural(
            "cochain and ring have different sizes".into(),
        ));
    }
    let v = check_normalized(phi, ring);
    if !v.is_empty() {
        return Err(Error::Precondition(cochain_error(v).to_string()));
    }
    let mut k = SkeletalCatRing::strict(ring, bimod)?;
    let (z, one) = (ring.zero(), ring.one());
    let neg = |v: u32| k.additive.pi1.neg(v);
    let lunit: Vec<u32> = (0..n).map(|r| neg(phi.dot[idx3(n, one, one, r)])).collect();
    let runit = (0..n).map(|r| phi.dot[idx3(n, r, one, one)]).collect();
    for r in 0..n {
        for s in 0..n {
            k.additive.c[r * n + s] = phi.plus[idx4(n, [z, r, s, z])];
            for t in 0..n {
                k.additive.a[idx3(n, r, s, t)] = phi.plus[idx4(n, [r, s, z, t])];
            }
        }
    }
    k.m = phi.dot.clone();
    k.l = phi.dotplus.clone();
    k.r = phi.plusdot.clone();
    k.lunit = lunit;
    k.runit = runit;
    Ok(k)
}

/// Representative morphisms `sigma_.(r, s): r s -> rs` and
/// `sigma_+(r, s): r + s -> r+s`. In a skeletal model these are
/// automorphisms, stored as `pi1` values indexed `r n + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeChoices {
    pub sigma_dot: Vec<u32>,
    pub sigma_plus: Vec<u32>,
    /// Set when `sigma_+` agrees with `lambda`, `rho` at `0` and `sigma_.`
    /// with `lambda.`, `rho.` at `1`.
    pub canonical: bool,
}

impl RepresentativeChoices {
    /// Every choice the identity.
    pub fn identity(n: usize) -> Self {
        Self {
            sigma_dot: vec![0; n * n],
            sigma_plus: vec![0; n * n],
            canonical: false,
        }
    }

    pub fn satisfies_canonical(&self, k: &SkeletalCatRing) -> bool {
        let n = k.size();
        let z = k.additive.objects.zero();
        let g = &k.additive;
        (0..n).all(|r| {
            self.sigma_plus[z * n + r] == g.lambda[r]
                && self.sigma_plus[r * n + z] == g.rho[r]
                && self.sigma_dot[k.one * n + r] == k.lunit[r]
                && self.sigma_dot[r * n + k.one] == k.runit[r]
        })
    }

    /// Random choices that vanish on `sigma_.(0, -)`, `sigma_.(-, 0)` and
    /// agree with the unit constraints where the canonical flag asks.
    pub fn random(k: &SkeletalCatRing, rng: &mut impl Rng) -> Result<Self> {
        let n = k.size();
        let b = k.pi1().size() as u32;
        let z = k.additive.objects.zero();
        let mut ch = Self {
            sigma_dot: (0..n * n).map(|_| rng.gen_range(0..b)).collect(),
            sigma_plus: (0..n * n).map(|_| rng.gen_range(0..b)).collect(),
            canonical: false,
        };
        for r in 0..n {
            ch.sigma_dot[z * n + r] = 0;
            ch.sigma_dot[r * n + z] = 0;
        }
        pin_canonical(k, &mut ch)?;
        Ok(ch)
    }

    /// Fully random choices with no normalization.
    pub fn random_unrestricted(k: &SkeletalCatRing, rng: &mut impl Rng) -> Self {
        let n = k.size();
        let b = k.pi1().size() as u32;
        Self {
            sigma_dot: (0..n * n).map(|_| rng.gen_range(0..b)).collect(),
            sigma_plus: (0..n * n).map(|_| rng.gen_range(0..b)).collect(),
            canonical: false,
        }
    }
}

fn pin_canonical(k: &SkeletalCatRing, ch: &mut RepresentativeChoices) -> Result<()> {
    let n = k.size();
    let z = k.additive.objects.zero();
    let g = &k.additive;
    if g.lambda[z] != g.rho[z] {
        return Err(Error::ModelInconsistency(
            "lambda(0) and rho(0) differ".into(),
        ));
    }
    if k.lunit[k.one] != k.runit[k.one] {
        return Err(Error::ModelInconsistency(
            "lambda.(1) and rho.(1) differ".into(),
        ));
    }
    for r in 0..n {
        ch.sigma_plus[z * n + r] = g.lambda[r];
        ch.sigma_plus[r * n + z] = g.rho[r];
        ch.sigma_dot[k.one * n + r] = k.lunit[r];
        ch.sigma_dot[r * n + k.one] = k.runit[r];
    }
    ch.canonical = true;
    Ok(())
}

/// `sigma_+(0, r) = lambda(r)`, `sigma_+(r, 0) = rho(r)`,
/// `sigma_.(1, r) = lambda.(r)`, `sigma_.(r, 1) = rho.(r)`, otherwise identities.
pub fn canonical_choices(k: &SkeletalCatRing) -> Result<RepresentativeChoices> {
    let mut ch = RepresentativeChoices::identity(k.size());
    pin_canonical(k, &mut ch)?;
    debug_assert!(ch.satisfies_canonical(k));
    Ok(ch)
}

/// The object carrying the characteristic diagram of `comp` at `args`, and
/// the values of its two paths `(first, second)`; the extracted component
/// is the deviation of `second` from `first`.
fn diagram_paths(
    k: &SkeletalCatRing,
    ch: &RepresentativeChoices,
    comp: Component,
    args: &[usize],
) -> (usize, u32, u32) {
    let n = k.size();
    let g = k.pi1();
    let sd = |r: usize, s: usize| ch.sigma_dot[r * n + s];
    let sp = |r: usize, s: usize| ch.sigma_plus[r * n + s];
    let (add, mul) = (|x, y| k.add(x, y), |x, y| k.mul(x, y));
    match comp {
        Component::Dot => {
            let [r, s, t] = args[..] else { unreachable!() };
            let st = mul(s, t);
            let rs = mul(r, s);
            let top = g.sum([k.m_at(r, s, t), k.mm(r, st, 0, sd(s, t)), sd(r, st)]);
            let bottom = g.add(k.mm(rs, t, sd(r, s), 0), sd(rs, t));
            (mul(rs, t), bottom, top)
        }
        Component::DotPlus => {
            let [r, s0, s1] = args[..] else {
                unreachable!()
            };
            let (rs0, rs1) = (mul(r, s0), mul(r, s1));
            let s = add(s0, s1);
            let top = g.sum([
                k.l_at(r, s0, s1),
                k.p(rs0, rs1, sd(r, s0), sd(r, s1)),
                sp(rs0, rs1),
            ]);
            let bottom = g.add(k.mm(r, s, 0, sp(s0, s1)), sd(r, s));
            (mul(r, s), bottom, top)
        }
        Component::PlusDot => {
            let [r0, r1, s] = args[..] else {
                unreachable!()
            };
            let (r0s, r1s) = (mul(r0, s), mul(r1, s));
            let r = add(r0, r1);
            let top = g.sum([
                k.r_at(r0, r1, s),
                k.p(r0s, r1s, sd(r0, s), sd(r1, s)),
                sp(r0s, r1s),
            ]);
            let bottom = g.add(k.mm(r, s, sp(r0, r1), 0), sd(r, s));
            (mul(r, s), bottom, top)
        }
        Component::Plus => {
            let [a, b, c, d] = args[..] else {
                unreachable!()
            };
            let (ac, bd) = (add(a, c), add(b, d));
            let (ab, cd) = (add(a, b), add(c, d));
            let top = g.sum([
                k.additive.coma(a, b, c, d),
                k.p(ac, bd, sp(a, c), sp(b, d)),
                sp(ac, bd),
            ]);
            let bottom = g.add(k.p(ab, cd, sp(a, b), sp(c, d)), sp(ab, cd));
            (add(ab, cd), bottom, top)
        }
    }
}

fn check_choices(k: &SkeletalCatRing, ch: &RepresentativeChoices) -> Result<()> {
    let n = k.size();
    let b = k.pi1().size();
    if ch.sigma_dot.len() != n * n || ch.sigma_plus.len() != n * n {
        return Err(Error::Structural(
            "representative choices have the wrong shape".into(),
        ));
    }
    if ch
        .sigma_dot
        .iter()
        .chain(&ch.sigma_plus)
        .any(|&v| v as usize >= b)
    {
        return Err(Error::Structural(
            "representative choice outside pi1".into(),
        ));
    }
    Ok(())
}

/// The characteristic 3-cochain of `k` under the choices `ch`, each value
/// found by [`SkeletalSymCatGroup::deviation`](crate::catgroup::SkeletalSymCatGroup::deviation).
pub fn extract(k: &SkeletalCatRing, ch: &RepresentativeChoices) -> Result<Cochain3> {
    check_choices(k, ch)?;
    let n = k.size();
    let mut out = Cochain3::zero(n);
    for comp in Component::ALL {
        let arity = comp.arity();
        let table = out.table_mut(comp);
        for (i, slot) in table.iter_mut().enumerate() {
            let args = crate::cochain::unidx(n, arity, i);
            let (x, first, second) = diagram_paths(k, ch, comp, &args);
            *slot = k.additive.deviation(x, first, second)?;
        }
    }
    Ok(out)
}

/// The same cochain as the difference `second - first` of path values,
/// valid when morphism addition at `(x, 0)` is addition in `pi1`.
pub fn extract_explicit(k: &SkeletalCatRing, ch: &RepresentativeChoices) -> Result<Cochain3> {
    check_choices(k, ch)?;
    let n = k.size();
    let g = k.pi1();
    let mut out = Cochain3::zero(n);
    for comp in Component::ALL {
        let arity = comp.arity();
        let table = out.table_mut(comp);
        for (i, slot) in table.iter_mut().enumerate() {
            let (_, first, second) =
                diagram_paths(k, ch, comp, &crate::cochain::unidx(n, arity, i));
            *slot = g.sub(second, first);
        }
    }
    Ok(out)
}

/// The identity on objects and morphisms from `realize(phi)` to
/// `realize(phi_prime)` with `f_+ = gamma_+`, `f_. = -gamma_.` and
/// `f_1 = -gamma_.(1, 1)`. Requires `gamma` normalized with
/// `coboundary(gamma) = phi_prime - phi`.
pub fn equiv_from_coboundary(
    phi: &Cochain3,
    phi_prime: &Cochain3,
    gamma: &Cochain2,
    ring: &FiniteRing,
    bimod: &Bimodule,
) -> Result<TwoHomomorphism> {
    let n = ring.size();
    if gamma.ring_size() != n {
        return Err(Error::Structural(
            "2-cochain and ring have different sizes".into(),
        ));
    }
    if !gamma.is_normalized(ring.zero()) {
        return Err(Error::Precondition("gamma is not normalized".into()));
    }
    let tables = BimoduleTables::new(bimod)?;
    let g = &tables.group;
    let d = coboundary(gamma, ring, &tables);
    let diff = phi_prime.sub(phi, g);
    if let Some((comp, args)) = d.first_difference(&diff) {
        return Err(Error::Precondition(format!(
            "coboundary(gamma) differs from phi' - phi at {} {:?}",
            comp.name(),
            args
        )));
    }
    let source = realize(phi, ring, bimod)?;
    let target = realize(phi_prime, ring, bimod)?;
    let b = g.size() as u32;
    Ok(TwoHomomorphism {
        source,
        target,
        obj_map: (0..n).collect(),
        mor_map: vec![(0..b).collect(); n],
        fplus: gamma.gplus.clone(),
        fdot: gamma.gdot.iter().map(|&v| g.neg(v)).collect(),
        f1: g.neg(gamma.gdot_at(ring.one(), ring.one())),
    })
}

/// `f: realize(extract(k, canonical)) -> k`, the identity on objects,
/// `(b, r) -> lambda(r)^-1 o (b + r) o lambda(r)` on morphisms, with
/// `f_+ = sigma_+`, `f_. = sigma_.` and `f_1` the identity.
pub fn roundtrip_2hom(k: &SkeletalCatRing) -> Result<TwoHomomorphism> {
    let ch = canonical_choices(k)?;
    let phi = extract(k, &ch)?;
    let ring = pi0_ring(k)?;
    let bimod = pi1_bimodule(k)?;
    let source = realize(&phi, &ring, &bimod)?;
    let n = k.size();
    let b = k.pi1().size() as u32;
    let z = k.additive.objects.zero();
    let g = k.pi1();
    let mor_map = (0..n)
        .map(|r| {
            let lr = k.additive.lambda[r];
            (0..b)
                .map(|beta| g.sum([g.neg(lr), k.p(z, r, beta, 0), lr]))
                .collect()
        })
        .collect();
    Ok(TwoHomomorphism {
        source,
        target: k.clone(),
        obj_map: (0..n).collect(),
        mor_map,
        fplus: ch.sigma_plus,
        fdot: ch.sigma_dot,
        f1: 0,
    })
}

/// The object ring and bimodule of a model, for callers that need both.
pub fn pi0_pi1(k: &SkeletalCatRing) -> Result<(FiniteRing, Bimodule)> {
    Ok((pi0_ring(k)?, pi1_bimodule(k)?))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::FiniteAbelianGroup;
    use crate::catgroup::check_sym_coherence;
    use crate::catring::{check_2hom, check_ring_coherence};
    use crate::cochain::cohomology::CocycleSpace;
    use crate::cochain::{cohomologous, equations::cocycle_defect};

    fn pairs() -> Vec<(FiniteRing, Bimodule)> {
        vec![
            (
                FiniteRing::zmod(2),
                Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap(),
            ),
            (
                FiniteRing::zmod(3),
                Bimodule::scalar(FiniteAbelianGroup::cyclic(3), &[0, 1, 2]).unwrap(),
            ),
            (
                FiniteRing::zmod(4),
                Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1, 2, 3]).unwrap(),
            ),
        ]
    }

    fn coherent(k: &SkeletalCatRing) -> bool {
        check_sym_coherence(&k.additive).is_empty() && check_ring_coherence(k).is_empty()
    }

    #[test]
    fn zero_cochain_realizes_strict_model() {
        for (r, b) in pairs() {
            let k = realize(&Cochain3::zero(r.size()), &r, &b).unwrap();
            assert_eq!(k, SkeletalCatRing::strict(&r, &b).unwrap());
            assert!(coherent(&k));
        }
    }

    #[test]
    fn non_normalized_is_rejected() {
        let r = FiniteRing::zmod(2);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap();
        let mut phi = Cochain3::zero(2);
        phi.dot[idx3(2, 0, 1, 1)] = 1;
        assert!(matches!(realize(&phi, &r, &b), Err(Error::Precondition(_))));
    }

    #[test]
    fn roundtrips_on_random_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, b) in pairs() {
            let space = CocycleSpace::new(&r, &b).unwrap();
            let t = BimoduleTables::new(&b).unwrap();
            for _ in 0..4 {
                let phi = space.random_cocycle(&mut rng);
                let k = realize(&phi, &r, &b).unwrap();
                assert!(coherent(&k));
                assert_eq!(pi0_ring(&k).unwrap(), r);
                let id = RepresentativeChoices::identity(r.size());
                assert_eq!(extract(&k, &id).unwrap(), phi);
                assert_eq!(extract_explicit(&k, &id).unwrap(), phi);

                let canon = canonical_choices(&k).unwrap();
                let psi = extract(&k, &canon).unwrap();
                assert!(cocycle_defect(&psi, &r, &t).unwrap().is_empty());
                assert!(cohomologous(&phi, &psi, &r, &b).unwrap().is_some());

                let ch = RepresentativeChoices::random(&k, &mut rng).unwrap();
                let chi = extract(&k, &ch).unwrap();
                assert_eq!(chi, extract_explicit(&k, &ch).unwrap());
                assert!(cohomologous(&psi, &chi, &r, &b).unwrap().is_some());

                let rep = check_2hom(&roundtrip_2hom(&k).unwrap()).unwrap();
                assert!(rep.is_ok(), "{:?}", rep.failures.first());
                assert!(rep.pi0_identity && rep.pi1_identity);
            }
        }
    }

    #[test]
    fn coma_is_phi_plus_on_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, b) in pairs() {
            let space = CocycleSpace::new(&r, &b).unwrap();
            let phi = space.random_cocycle(&mut rng);
            let k = realize(&phi, &r, &b).unwrap();
            let n = r.size();
            for i in 0..n.pow(4) {
                let m = crate::cochain::unidx(n, 4, i);
                assert_eq!(k.additive.coma(m[0], m[1], m[2], m[3]), phi.plus[i]);
                assert_eq!(k.additive.coma_right(m[0], m[1], m[2], m[3]), phi.plus[i]);
            }
        }
    }

    #[test]
    fn coboundary_gives_two_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (r, b) in pairs() {
            let space = CocycleSpace::new(&r, &b).unwrap();
            let t = BimoduleTables::new(&b).unwrap();
            for _ in 0..4 {
                let phi = space.random_cocycle(&mut rng);
                let gamma = Cochain2::random_normalized(r.size(), r.zero(), t.size(), &mut rng);
                let phi2 = phi.add(&coboundary(&gamma, &r, &t), &t.group);
                let f = equiv_from_coboundary(&phi, &phi2, &gamma, &r, &b).unwrap();
                let rep = check_2hom(&f).unwrap();
                assert!(rep.is_ok(), "{:?}", rep.failures.first());
                assert!(rep.pi0_identity && rep.pi1_identity);
                if t.size() > 1 {
                    let mut bad = f.clone();
                    bad.f1 = t.group.add(bad.f1, 1);
                    let rep = check_2hom(&bad).unwrap();
                    assert!(rep
                        .failures
                        .iter()
                        .any(|x| x.check.starts_with("multiplicative functor")));
                }
            }
            let wrong = Cochain3::zero(r.size());
            let gamma = Cochain2::random_normalized(r.size(), r.zero(), t.size(), &mut rng);
            if !coboundary(&gamma, &r, &t).is_zero() {
                assert!(equiv_from_coboundary(&wrong, &wrong, &gamma, &r, &b).is_err());
            }
        }
    }

    #[test]
    fn pi1_bimodule_of_realization() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (r, b) in pairs() {
            let phi = CocycleSpace::new(&r, &b).unwrap().random_cocycle(&mut rng);
            let k = realize(&phi, &r, &b).unwrap();
            let got = BimoduleTables::new(&pi1_bimodule(&k).unwrap()).unwrap();
            let want = BimoduleTables::new(&b).unwrap();
            for x in 0..r.size() {
                for v in 0..want.size() as u32 {
                    assert_eq!(got.lact(x, v), want.lact(x, v));
                    assert_eq!(got.ract(v, x), want.ract(v, x));
                }
            }
        }
    }
}
