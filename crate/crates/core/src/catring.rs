//! Skeletal categorical rings: a skeletal symmetric categorical group with a
//! second monoidal structure `(., 1, m, lambda., rho.)` and distributivity
//! constraints `l: x(y + z) -> xy + xz`, `r: (x + y)z -> xz + yz`.

use crate::algebra::bimodule::{Bimodule, BimoduleTables};
use crate::algebra::group::GroupTables;
use crate::algebra::ring::{validate_ring, FiniteRing};
use crate::catgroup::{
    derived_zero_iso, failure, induced_pi1_map, monoidal_failures, monoidal_functor_failures,
    signed, CoherenceFailure, MonoidalFunctorData, MonoidalTables, ObjectGroup,
    SkeletalSymCatGroup,
};
use crate::cochain::equations::for_each_tuple;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalCatRing {
    pub additive: SkeletalSymCatGroup,
    /// `obj_mul[x n + y]`.
    pub obj_mul: Vec<usize>,
    pub one: usize,
    /// `mor_mul[((x n + y) b + alpha) b + beta]`.
    pub mor_mul: Vec<u32>,
    /// Indexed `(x n + y) n + z` like the distributivity tables.
    pub m: Vec<u32>,
    pub lunit: Vec<u32>,
    pub runit: Vec<u32>,
    pub l: Vec<u32>,
    pub r: Vec<u32>,
}

/// The multiplicative monoidal structure of a [`SkeletalCatRing`].
pub struct Multiplicative<'a>(pub &'a SkeletalCatRing);

impl MonoidalTables for Multiplicative<'_> {
    fn pi1(&self) -> &GroupTables {
        &self.0.additive.pi1
    }
    fn objects(&self) -> usize {
        self.0.size()
    }
    fn unit(&self) -> usize {
        self.0.one
    }
    fn tensor(&self, x: usize, y: usize) -> usize {
        self.0.mul(x, y)
    }
    fn mor(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32 {
        self.0.mm(x, y, alpha, beta)
    }
    fn assoc(&self, x: usize, y: usize, z: usize) -> u32 {
        self.0.m_at(x, y, z)
    }
    fn lunit(&self, x: usize) -> u32 {
        self.0.lunit[x]
    }
    fn runit(&self, x: usize) -> u32 {
        self.0.runit[x]
    }
}

impl SkeletalCatRing {
    /// All constraints identities, `alpha + beta` for morphism addition and
    /// `alpha y + x beta` for morphism multiplication.
    pub fn strict(ring: &FiniteRing, bimod: &Bimodule) -> Result<Self> {
        let additive = SkeletalSymCatGroup::strict(ObjectGroup::from_ring(ring), bimod.group())?;
        let t = BimoduleTables::new(bimod)?;
        let n = ring.size();
        let b = t.size() as u32;
        let mut mor_mul = Vec::with_capacity(n * n * (b * b) as usize);
        for x in 0..n {
            for y in 0..n {
                for alpha in 0..b {
                    for beta in 0..b {
                        mor_mul.push(t.group.add(t.ract(alpha, y), t.lact(x, beta)));
                    }
                }
            }
        }
        Ok(Self {
            additive,
            obj_mul: ring.mul_table().iter().flatten().copied().collect(),
            one: ring.one(),
            mor_mul,
            m: vec![0; n * n * n],
            lunit: vec![0; n],
            runit: vec![0; n],
            l: vec![0; n * n * n],
            r: vec![0; n * n * n],
        })
    }

    pub fn check_shape(&self) -> Result<()> {
        self.additive.check_shape()?;
        let n = self.size();
        let b = self.additive.pi1.size();
        let shapes = [
            ("obj_mul", self.obj_mul.len(), n * n),
            ("mor_mul", self.mor_mul.len(), n * n * b * b),
            ("m", self.m.len(), n * n * n),
            ("lunit", self.lunit.len(), n),
            ("runit", self.runit.len(), n),
            ("l", self.l.len(), n * n * n),
            ("r", self.r.len(), n * n * n),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(Error::Structural(format!(
                    "table {name} has {got} entries, expected {want}"
                )));
            }
        }
        if self.one >= n || self.obj_mul.iter().any(|&x| x >= n) {
            return Err(Error::Structural(
                "object multiplication out of range".into(),
            ));
        }
        let tables = [
            &self.mor_mul,
            &self.m,
            &self.lunit,
            &self.runit,
            &self.l,
            &self.r,
        ];
        if tables.iter().any(|t| t.iter().any(|&v| v as usize >= b)) {
            return Err(Error::Structural("table entry outside pi1".into()));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.additive.size()
    }

    pub fn pi1(&self) -> &GroupTables {
        &self.additive.pi1
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.additive.objects.add(x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.obj_mul[x * self.size() + y]
    }

    /// Morphism addition.
    #[inline]
    pub fn p(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32 {
        self.additive.p(x, y, alpha, beta)
    }

    /// Morphism multiplication.
    #[inline]
    pub fn mm(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32 {
        let n = self.size();
        let b = self.additive.pi1.size();
        self.mor_mul[((x * n + y) * b + alpha as usize) * b + beta as usize]
    }

    fn idx3(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.size();
        (x * n + y) * n + z
    }

    #[inline]
    pub fn m_at(&self, x: usize, y: usize, z: usize) -> u32 {
        self.m[self.idx3(x, y, z)]
    }

    #[inline]
    pub fn l_at(&self, x: usize, y: usize, z: usize) -> u32 {
        self.l[self.idx3(x, y, z)]
    }

    #[inline]
    pub fn r_at(&self, x: usize, y: usize, z: usize) -> u32 {
        self.r[self.idx3(x, y, z)]
    }

    fn coma(&self, a: usize, b: usize, c: usize, d: usize) -> u32 {
        self.additive.coma(a, b, c, d)
    }
}

/// Names of the eight distributivity diagrams, in order.
pub const DIAGRAMS: [&str; 8] = ["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8"];

/// Arity (number of objects) of diagram `D{i+1}`.
pub const DIAGRAM_ARITY: [usize; 8] = [4, 4, 4, 2, 2, 5, 4, 5];

/// Defect of one distributivity diagram (first path minus second) at `args`.
pub fn diagram_defect(k: &SkeletalCatRing, diagram: usize, args: &[usize]) -> u32 {
    let g = k.pi1();
    let (add, mul) = (|x, y| k.add(x, y), |x, y| k.mul(x, y));
    let terms: Vec<(i8, u32)> = match diagram {
        0 => {
            let [r, s, t0, t1] = args[..] else {
                unreachable!()
            };
            let t = add(t0, t1);
            let (rs, st0, st1) = (mul(r, s), mul(s, t0), mul(s, t1));
            vec![
                (1, k.m_at(r, s, t)),
                (1, k.mm(r, mul(s, t), 0, k.l_at(s, t0, t1))),
                (1, k.l_at(r, st0, st1)),
                (-1, k.l_at(rs, t0, t1)),
                (
                    -1,
                    k.p(mul(rs, t0), mul(rs, t1), k.m_at(r, s, t0), k.m_at(r, s, t1)),
                ),
            ]
        }
        1 => {
            let [r, s0, s1, t] = args[..] else {
                unreachable!()
            };
            let s = add(s0, s1);
            let (rs0, rs1) = (mul(r, s0), mul(r, s1));
            vec![
                (1, k.mm(mul(r, s), t, k.l_at(r, s0, s1), 0)),
                (1, k.r_at(rs0, rs1, t)),
                (
                    1,
                    k.p(mul(rs0, t), mul(rs1, t), k.m_at(r, s0, t), k.m_at(r, s1, t)),
                ),
                (-1, k.m_at(r, s, t)),
                (-1, k.mm(r, mul(s, t), 0, k.r_at(s0, s1, t))),
                (-1, k.l_at(r, mul(s0, t), mul(s1, t))),
            ]
        }
        2 => {
            let [r0, r1, s, t] = args[..] else {
                unreachable!()
            };
            let r = add(r0, r1);
            let (r0s, r1s) = (mul(r0, s), mul(r1, s));
            vec![
                (1, k.mm(mul(r, s), t, k.r_at(r0, r1, s), 0)),
                (1, k.r_at(r0s, r1s, t)),
                (
                    1,
                    k.p(mul(r0s, t), mul(r1s, t), k.m_at(r0, s, t), k.m_at(r1, s, t)),
                ),
                (-1, k.m_at(r, s, t)),
                (-1, k.r_at(r0, r1, mul(s, t))),
            ]
        }
        3 => {
            let [r0, r1] = args[..] else { unreachable!() };
            vec![
                (1, k.l_at(k.one, r0, r1)),
                (1, k.p(r0, r1, k.lunit[r0], k.lunit[r1])),
                (-1, k.lunit[add(r0, r1)]),
            ]
        }
        4 => {
            let [r0, r1] = args[..] else { unreachable!() };
            vec![
                (1, k.r_at(r0, r1, k.one)),
                (1, k.p(r0, r1, k.runit[r0], k.runit[r1])),
                (-1, k.runit[add(r0, r1)]),
            ]
        }
        5 => {
            let [r, s00, s01, s10, s11] = args[..] else {
                unreachable!()
            };
            let (a, b) = (add(s00, s01), add(s10, s11));
            let (c, d) = (add(s00, s10), add(s01, s11));
            vec![
                (1, k.l_at(r, a, b)),
                (
                    1,
                    k.p(
                        mul(r, a),
                        mul(r, b),
                        k.l_at(r, s00, s01),
                        k.l_at(r, s10, s11),
                    ),
                ),
                (
                    1,
                    k.coma(mul(r, s00), mul(r, s01), mul(r, s10), mul(r, s11)),
                ),
                (-1, k.mm(r, add(a, b), 0, k.coma(s00, s01, s10, s11))),
                (-1, k.l_at(r, c, d)),
                (
                    -1,
                    k.p(
                        mul(r, c),
                        mul(r, d),
                        k.l_at(r, s00, s10),
                        k.l_at(r, s01, s11),
                    ),
                ),
            ]
        }
        6 => {
            let [r0, r1, s0, s1] = args[..] else {
                unreachable!()
            };
            let (r, s) = (add(r0, r1), add(s0, s1));
            vec![
                (1, k.r_at(r0, r1, s)),
                (
                    1,
                    k.p(
                        mul(r0, s),
                        mul(r1, s),
                        k.l_at(r0, s0, s1),
                        k.l_at(r1, s0, s1),
                    ),
                ),
                (
                    1,
                    k.coma(mul(r0, s0), mul(r0, s1), mul(r1, s0), mul(r1, s1)),
                ),
                (-1, k.l_at(r, s0, s1)),
                (
                    -1,
                    k.p(
                        mul(r, s0),
                        mul(r, s1),
                        k.r_at(r0, r1, s0),
                        k.r_at(r0, r1, s1),
                    ),
                ),
            ]
        }
        7 => {
            let [r00, r01, r10, r11, s] = args[..] else {
                unreachable!()
            };
            let (a, b) = (add(r00, r01), add(r10, r11));
            let (c, d) = (add(r00, r10), add(r01, r11));
            vec![
                (1, k.r_at(a, b, s)),
                (
                    1,
                    k.p(
                        mul(a, s),
                        mul(b, s),
                        k.r_at(r00, r01, s),
                        k.r_at(r10, r11, s),
                    ),
                ),
                (
                    1,
                    k.coma(mul(r00, s), mul(r01, s), mul(r10, s), mul(r11, s)),
                ),
                (-1, k.mm(add(a, b), s, k.coma(r00, r01, r10, r11), 0)),
                (-1, k.r_at(c, d, s)),
                (
                    -1,
                    k.p(
                        mul(c, s),
                        mul(d, s),
                        k.r_at(r00, r10, s),
                        k.r_at(r01, r11, s),
                    ),
                ),
            ]
        }
        _ => panic!("no diagram D{}", diagram + 1),
    };
    signed(g, &terms)
}

/// The eight distributivity diagrams, the multiplicative monoidal axioms
/// (prefixed `multiplicative`) and naturality of `l` and `r`.
pub fn check_ring_coherence(k: &SkeletalCatRing) -> Vec<CoherenceFailure> {
    let mut out = Vec::new();
    let n = k.size();
    for (d, (&name, &arity)) in DIAGRAMS.iter().zip(&DIAGRAM_ARITY).enumerate() {
        for_each_tuple(n, arity, |args| {
            let v = diagram_defect(k, d, args);
            if v != 0 {
                out.push(failure(name, args, &[], v));
            }
        });
    }
    out.extend(monoidal_failures(&Multiplicative(k), "multiplicative "));
    out.extend(distributivity_naturality(k));
    out
}

fn distributivity_naturality(k: &SkeletalCatRing) -> Vec<CoherenceFailure> {
    let g = k.pi1();
    let b = g.size() as u32;
    let mut out = Vec::new();
    for_each_tuple(k.size(), 3, |args| {
        let [x, y, z] = args[..] else { unreachable!() };
        for a in 0..b {
            for (slot, (p, q, r)) in [(a, 0, 0), (0, a, 0), (0, 0, a)].into_iter().enumerate() {
                let mut m = [0u32; 3];
                m[slot] = a;
                let lhs = k.mm(x, k.add(y, z), p, k.p(y, z, q, r));
                let rhs = k.p(k.mul(x, y), k.mul(x, z), k.mm(x, y, p, q), k.mm(x, z, p, r));
                if lhs != rhs {
                    out.push(failure(
                        "left distributivity naturality",
                        args,
                        &m,
                        g.sub(lhs, rhs),
                    ));
                }
                let lhs = k.mm(k.add(x, y), z, k.p(x, y, p, q), r);
                let rhs = k.p(k.mul(x, z), k.mul(y, z), k.mm(x, z, p, r), k.mm(y, z, q, r));
                if lhs != rhs {
                    out.push(failure(
                        "right distributivity naturality",
                        args,
                        &m,
                        g.sub(lhs, rhs),
                    ));
                }
            }
        }
    });
    out
}

/// The object ring, checked against the ring axioms.
pub fn pi0_ring(k: &SkeletalCatRing) -> Result<FiniteRing> {
    let o = &k.additive.objects;
    let n = k.size();
    let rows = |t: &[usize]| t.chunks(n).map(<[usize]>::to_vec).collect::<Vec<_>>();
    let ring = FiniteRing::new(
        o.labels().to_vec(),
        o.zero(),
        k.one,
        rows(o.add_table()),
        rows(&k.obj_mul),
        o.neg_table().to_vec(),
    )?;
    let report = validate_ring(&ring);
    if let Some(v) = report.first() {
        return Err(Error::ModelInconsistency(format!(
            "objects do not form a ring: {v}"
        )));
    }
    Ok(ring)
}

/// `r (-)` with `f_+ = -l(r, x, y)`, or `(-) r` with `f_+ = -r(x, y, r)`,
/// as a monoidal endofunctor of the additive part.
pub fn multiplication_functor(k: &SkeletalCatRing, r: usize, left: bool) -> MonoidalFunctorData {
    let g = &k.additive;
    let n = k.size();
    let b = g.pi1.size() as u32;
    let obj_map = (0..n)
        .map(|x| if left { k.mul(r, x) } else { k.mul(x, r) })
        .collect();
    let mor_map = (0..n)
        .map(|x| {
            (0..b)
                .map(|a| {
                    if left {
                        k.mm(r, x, 0, a)
                    } else {
                        k.mm(x, r, a, 0)
                    }
                })
                .collect()
        })
        .collect();
    let mut fplus = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            fplus.push(g.pi1.neg(if left {
                k.l_at(r, x, y)
            } else {
                k.r_at(x, y, r)
            }));
        }
    }
    MonoidalFunctorData {
        source: g.clone(),
        target: g.clone(),
        obj_map,
        mor_map,
        fplus,
        f0: None,
    }
}

fn table_to_matrix(g: &GroupTables, table: &[u32]) -> Vec<Vec<i64>> {
    let grp = g.group();
    let k = grp.rank();
    let images: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            let mut e = vec![0i64; k];
            e[j] = 1;
            grp.element(table[grp.index_of(&e) as usize])
        })
        .collect();
    (0..k)
        .map(|i| images.iter().map(|img| img[i]).collect())
        .collect()
}

/// `pi1` with the actions induced by `r (-)` and `(-) r`.
pub fn pi1_bimodule(k: &SkeletalCatRing) -> Result<Bimodule> {
    let ring = pi0_ring(k)?;
    let g = k.pi1();
    let mut left = Vec::with_capacity(k.size());
    let mut right = Vec::with_capacity(k.size());
    let mut tables = Vec::with_capacity(2 * k.size());
    for r in 0..k.size() {
        let lt = induced_pi1_map(&multiplication_functor(k, r, true))?;
        let rt = induced_pi1_map(&multiplication_functor(k, r, false))?;
        left.push(table_to_matrix(g, &lt));
        right.push(table_to_matrix(g, &rt));
        tables.push((lt, rt));
    }
    let bimod = Bimodule::new(g.group().clone(), left, right)
        .map_err(|e| Error::ModelInconsistency(format!("pi1 actions: {e}")))?;
    let bt = BimoduleTables::new(&bimod)?;
    for (r, (lt, rt)) in tables.iter().enumerate() {
        for beta in 0..g.size() as u32 {
            if bt.lact(r, beta) != lt[beta as usize] || bt.ract(beta, r) != rt[beta as usize] {
                return Err(Error::ModelInconsistency(
                    "pi1 action is not additive".into(),
                ));
            }
        }
    }
    let report = crate::algebra::validate_bimodule(&ring, &bimod)?;
    if let Some(v) = report.first() {
        return Err(Error::ModelInconsistency(format!(
            "pi1 is not a bimodule: {v}"
        )));
    }
    Ok(bimod)
}

/// `lambda(0) o c(0, 0) o lambda(0)^-1` in `Aut(0)`. With `check` set, also
/// requires the value to be 2-torsion and central.
pub fn obstruction(k: &SkeletalCatRing, check: bool) -> Result<u32> {
    let g = k.pi1();
    let z = k.additive.objects.zero();
    let lz = k.additive.lambda[z];
    let v = signed(g, &[(1, lz), (1, k.additive.sym_at(z, z)), (-1, lz)]);
    if check {
        if g.add(v, v) != 0 {
            return Err(Error::ModelInconsistency(
                "obstruction is not 2-torsion".into(),
            ));
        }
        if let Some(r) = (0..k.size()).find(|&r| k.mm(r, z, 0, v) != k.mm(z, r, v, 0)) {
            return Err(Error::ModelInconsistency(format!(
                "obstruction is not central: differs under element {}",
                k.additive.objects.label(r)
            )));
        }
    }
    Ok(v)
}

/// A 2-homomorphism `(f, f_+, f_., f_1)`; `f_0` is always derived.
#[derive(Clone, Debug)]
pub struct TwoHomomorphism {
    pub source: SkeletalCatRing,
    pub target: SkeletalCatRing,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<Vec<u32>>,
    /// `fplus[x n + y]: f(x) + f(y) -> f(x + y)`.
    pub fplus: Vec<u32>,
    /// `fdot[x n + y]: f(x) f(y) -> f(x y)`.
    pub fdot: Vec<u32>,
    /// `f1: f(1) -> 1`.
    pub f1: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHomReport {
    pub failures: Vec<CoherenceFailure>,
    pub f0: u32,
    pub pi0_map: Vec<usize>,
    pub pi1_map: Vec<u32>,
    pub pi0_identity: bool,
    pub pi1_identity: bool,
}

impl TwoHomReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl TwoHomomorphism {
    pub fn identity(k: &SkeletalCatRing) -> Self {
        let n = k.size();
        let b = k.pi1().size() as u32;
        Self {
            source: k.clone(),
            target: k.clone(),
            obj_map: (0..n).collect(),
            mor_map: vec![(0..b).collect(); n],
            fplus: vec![0; n * n],
            fdot: vec![0; n * n],
            f1: 0,
        }
    }

    /// The additive part as a monoidal functor with `f0` left to be derived.
    pub fn additive(&self) -> MonoidalFunctorData {
        MonoidalFunctorData {
            source: self.source.additive.clone(),
            target: self.target.additive.clone(),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
            fplus: self.fplus.clone(),
            f0: None,
        }
    }

    /// Table shapes, and that `obj_map` is a ring homomorphism of the
    /// object rings (forced by skeletality).
    pub fn check_shape(&self) -> Result<()> {
        self.additive().check_shape()?;
        let (s, t) = (&self.source, &self.target);
        let n = s.size();
        if self.fdot.len() != n * n || self.fdot.iter().any(|&v| v as usize >= t.pi1().size()) {
            return Err(Error::Structural("fdot has the wrong shape".into()));
        }
        if self.f1 as usize >= t.pi1().size() {
            return Err(Error::Structural("f1 outside pi1".into()));
        }
        let f = &self.obj_map;
        if f[s.one] != t.one {
            return Err(Error::Precondition("f(1) is not the unit object".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if f[s.add(x, y)] != t.add(f[x], f[y]) || f[s.mul(x, y)] != t.mul(f[x], f[y]) {
                    return Err(Error::Precondition(
                        "object map is not a ring homomorphism".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Additive and multiplicative functor coherence and the two
/// distributivity compatibilities, plus the induced maps on `pi0`, `pi1`.
pub fn check_2hom(h: &TwoHomomorphism) -> Result<TwoHomReport> {
    h.check_shape()?;
    let (s, t) = (&h.source, &h.target);
    let n = s.size();
    let add_f = h.additive();
    let f0 = derived_zero_iso(&add_f)?;
    let fmor = |x: usize, a: u32| h.mor_map[x][a as usize];
    let fplus = |x: usize, y: usize| h.fplus[x * n + y];
    let fdot = |x: usize, y: usize| h.fdot[x * n + y];
    let f = |x: usize| h.obj_map[x];
    let mut failures = monoidal_functor_failures(
        &s.additive,
        &t.additive,
        &h.obj_map,
        &fmor,
        &fplus,
        f0,
        "additive ",
    );
    failures.extend(monoidal_functor_failures(
        &Multiplicative(s),
        &Multiplicative(t),
        &h.obj_map,
        &fmor,
        &fdot,
        h.f1,
        "multiplicative ",
    ));
    let g = t.pi1();
    for_each_tuple(n, 3, |args| {
        let [r, s0, s1] = args[..] else {
            unreachable!()
        };
        let d = signed(
            g,
            &[
                (1, t.l_at(f(r), f(s0), f(s1))),
                (
                    1,
                    t.p(f(s.mul(r, s0)), f(s.mul(r, s1)), fdot(r, s0), fdot(r, s1)),
                ),
                (1, fplus(s.mul(r, s0), s.mul(r, s1))),
                (-1, t.mm(f(r), f(s.add(s0, s1)), 0, fplus(s0, s1))),
                (-1, fdot(r, s.add(s0, s1))),
                (-1, fmor(s.mul(r, s.add(s0, s1)), s.l_at(r, s0, s1))),
            ],
        );
        if d != 0 {
            failures.push(failure("left distributivity compatibility", args, &[], d));
        }
        let [r0, r1, x] = args[..] else {
            unreachable!()
        };
        let d = signed(
            g,
            &[
                (1, t.r_at(f(r0), f(r1), f(x))),
                (
                    1,
                    t.p(f(s.mul(r0, x)), f(s.mul(r1, x)), fdot(r0, x), fdot(r1, x)),
                ),
                (1, fplus(s.mul(r0, x), s.mul(r1, x))),
                (-1, t.mm(f(s.add(r0, r1)), f(x), fplus(r0, r1), 0)),
                (-1, fdot(s.add(r0, r1), x)),
                (-1, fmor(s.mul(s.add(r0, r1), x), s.r_at(r0, r1, x))),
            ],
        );
        if d != 0 {
            failures.push(failure("right distributivity compatibility", args, &[], d));
        }
    });
    let pi1_map = induced_pi1_map(&MonoidalFunctorData {
        f0: Some(f0),
        ..add_f
    })?;
    let same_pi0 =
        s.additive.objects == t.additive.objects && s.obj_mul == t.obj_mul && s.one == t.one;
    let same_pi1 = s.pi1().group() == t.pi1().group();
    Ok(TwoHomReport {
        failures,
        f0,
        pi0_identity: same_pi0 && h.obj_map.iter().enumerate().all(|(i, &x)| i == x),
        pi1_identity: same_pi1 && pi1_map.iter().enumerate().all(|(i, &x)| i as u32 == x),
        pi0_map: h.obj_map.clone(),
        pi1_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAbelianGroup;

    fn strict_z(n: usize, b: u64) -> SkeletalCatRing {
        let scalars: Vec<i64> = (0..n as i64).collect();
        let bimod = Bimodule::scalar(FiniteAbelianGroup::cyclic(b), &scalars).unwrap();
        SkeletalCatRing::strict(&FiniteRing::zmod(n), &bimod).unwrap()
    }

    #[test]
    fn strict_rings_are_coherent() {
        for (n, b) in [(2, 2), (3, 3), (4, 2), (4, 4)] {
            let k = strict_z(n, b);
            k.check_shape().unwrap();
            assert!(check_ring_coherence(&k).is_empty(), "Z/{n} over Z/{b}");
            assert_eq!(pi0_ring(&k).unwrap(), FiniteRing::zmod(n));
            assert_eq!(obstruction(&k, true).unwrap(), 0);
        }
    }

    #[test]
    fn pi1_bimodule_recovers_actions() {
        let k = strict_z(4, 2);
        let bimod = pi1_bimodule(&k).unwrap();
        let want = Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1, 2, 3]).unwrap();
        let (a, b) = (
            BimoduleTables::new(&bimod).unwrap(),
            BimoduleTables::new(&want).unwrap(),
        );
        for r in 0..4 {
            for x in 0..2 {
                assert_eq!(a.lact(r, x), b.lact(r, x));
                assert_eq!(a.ract(x, r), b.ract(x, r));
            }
        }
    }

    #[test]
    fn perturbed_l_is_reported() {
        let mut k = strict_z(2, 2);
        let i = k.idx3(1, 1, 1);
        k.l[i] = 1;
        let fails = check_ring_coherence(&k);
        assert!(fails.iter().any(|f| f.check.starts_with('D')));
    }

    #[test]
    fn obstruction_reads_c00() {
        let mut k = strict_z(2, 2);
        k.additive.c[0] = 1;
        assert_eq!(obstruction(&k, false).unwrap(), 1);
        assert_eq!(obstruction(&k, true).unwrap(), 1);
        let mut k = strict_z(3, 3);
        k.additive.c[0] = 1;
        assert!(obstruction(&k, true).is_err());
    }

    #[test]
    fn identity_two_hom() {
        let k = strict_z(3, 3);
        let rep = check_2hom(&TwoHomomorphism::identity(&k)).unwrap();
        assert!(rep.is_ok());
        assert!(rep.pi0_identity && rep.pi1_identity);
        assert_eq!(rep.f0, 0);
    }

    #[test]
    fn perturbed_fdot_is_reported() {
        let k = strict_z(2, 2);
        let mut h = TwoHomomorphism::identity(&k);
        h.fdot[2 + 1] = 1;
        let rep = check_2hom(&h).unwrap();
        assert!(!rep.is_ok());
    }
}
