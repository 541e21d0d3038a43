//! Skeletal symmetric categorical groups.
//!
//! Objects form a strict finite abelian group; every morphism is an
//! automorphism and `Hom(x, x)` is identified with `pi1`, composition being
//! addition in `pi1`. Constraints are `pi1`-valued tables and `mor_add` is the
//! morphism part of `+`. Inverse arrows are negatives.

use std::fmt;

use crate::algebra::group::{FiniteAbelianGroup, GroupTables};
use crate::algebra::ring::FiniteRing;
use crate::error::{Error, Result, Violation};

/// Strict group structure on the object set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectGroup {
    labels: Vec<String>,
    zero: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl ObjectGroup {
    pub fn new(labels: Vec<String>, zero: usize, add: Vec<usize>, neg: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || zero >= n || add.len() != n * n || neg.len() != n {
            return Err(Error::Structural(
                "object group tables have the wrong shape".into(),
            ));
        }
        if add.iter().chain(&neg).any(|&x| x >= n) {
            return Err(Error::Structural(
                "object group table entry out of range".into(),
            ));
        }
        Ok(Self {
            labels,
            zero,
            add,
            neg,
        })
    }

    pub fn from_ring(r: &FiniteRing) -> Self {
        Self {
            labels: r.labels().to_vec(),
            zero: r.zero(),
            add: r.add_table().iter().flatten().copied().collect(),
            neg: r.neg_table().to_vec(),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_ring(&FiniteRing::zmod(n))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size() + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// Abelian group axioms, with witnesses.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.size();
        let mut out = Vec::new();
        let w = |xs: &[usize]| {
            xs.iter()
                .map(|&x| self.labels[x].clone())
                .collect::<Vec<_>>()
        };
        for x in 0..n {
            if self.add(self.zero, x) != x {
                out.push(Violation::new("additive identity", w(&[x]), "0 + x != x"));
            }
            if self.add(self.neg(x), x) != self.zero {
                out.push(Violation::new("additive inverse", w(&[x]), "-x + x != 0"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    out.push(Violation::new(
                        "additive commutativity",
                        w(&[x, y]),
                        "x + y != y + x",
                    ));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        out.push(Violation::new(
                            "additive associativity",
                            w(&[x, y, z]),
                            "(x + y) + z != x + (y + z)",
                        ));
                    }
                }
            }
        }
        out
    }
}

/// A failed coherence condition: `defect` is the first path minus the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceFailure {
    pub check: String,
    pub objects: Vec<usize>,
    /// Morphism arguments (elements of `pi1`), for naturality conditions.
    pub morphisms: Vec<u32>,
    pub defect: u32,
}

impl fmt::Display for CoherenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at objects {:?}", self.check, self.objects)?;
        if !self.morphisms.is_empty() {
            write!(f, " morphisms {:?}", self.morphisms)?;
        }
        write!(f, ": defect {}", self.defect)
    }
}

pub(crate) fn failure(
    check: &str,
    objects: &[usize],
    morphisms: &[u32],
    defect: u32,
) -> CoherenceFailure {
    CoherenceFailure {
        check: check.into(),
        objects: objects.to_vec(),
        morphisms: morphisms.to_vec(),
        defect,
    }
}

/// A monoidal structure on a skeletal groupoid with automorphism groups `pi1`.
pub trait MonoidalTables {
    fn pi1(&self) -> &GroupTables;
    fn objects(&self) -> usize;
    fn unit(&self) -> usize;
    fn tensor(&self, x: usize, y: usize) -> usize;
    /// `alpha (x) beta` for `alpha: x -> x`, `beta: y -> y`.
    fn mor(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32;
    fn assoc(&self, x: usize, y: usize, z: usize) -> u32;
    fn lunit(&self, x: usize) -> u32;
    fn runit(&self, x: usize) -> u32;
}

/// Sum of pi1 elements with signs.
pub(crate) fn signed(g: &GroupTables, terms: &[(i8, u32)]) -> u32 {
    terms.iter().fold(
        0,
        |acc, &(s, v)| if s >= 0 { g.add(acc, v) } else { g.sub(acc, v) },
    )
}

/// Pentagon, triangle, bifunctoriality of `mor` and naturality of the
/// constraints; check names get `prefix`.
pub fn monoidal_failures<T: MonoidalTables + ?Sized>(t: &T, prefix: &str) -> Vec<CoherenceFailure> {
    let g = t.pi1();
    let n = t.objects();
    let b = g.size() as u32;
    let name = |s: &str| format!("{prefix}{s}");
    let mut out = Vec::new();
    let tn = |x, y| t.tensor(x, y);
    for x in 0..n {
        for y in 0..n {
            // Bifunctoriality: each slot additive and the two slots independent.
            for a in 0..b {
                for c in 0..b {
                    let l = t.mor(x, y, g.add(a, c), 0);
                    let r = g.add(t.mor(x, y, a, 0), t.mor(x, y, c, 0));
                    if l != r {
                        out.push(failure(
                            &name("bifunctoriality"),
                            &[x, y],
                            &[a, c],
                            g.sub(l, r),
                        ));
                    }
                    let l = t.mor(x, y, 0, g.add(a, c));
                    let r = g.add(t.mor(x, y, 0, a), t.mor(x, y, 0, c));
                    if l != r {
                        out.push(failure(
                            &name("bifunctoriality"),
                            &[x, y],
                            &[a, c],
                            g.sub(l, r),
                        ));
                    }
                    let l = t.mor(x, y, a, c);
                    let r = g.add(t.mor(x, y, a, 0), t.mor(x, y, 0, c));
                    if l != r {
                        out.push(failure(
                            &name("bifunctoriality"),
                            &[x, y],
                            &[a, c],
                            g.sub(l, r),
                        ));
                    }
                }
            }
            // Triangle: (x I) y -> x (I y) -> x y equals rho(x) y.
            let u = t.unit();
            let d = signed(
                g,
                &[
                    (1, t.assoc(x, u, y)),
                    (1, t.mor(x, y, 0, t.lunit(y))),
                    (-1, t.mor(x, y, t.runit(x), 0)),
                ],
            );
            if d != 0 {
                out.push(failure(&name("triangle"), &[x, y], &[], d));
            }
            for z in 0..n {
                for a in 0..b {
                    // Naturality of assoc, one slot at a time (mor is additive).
                    for (slot, (p, q, r)) in
                        [(a, 0, 0), (0, a, 0), (0, 0, a)].into_iter().enumerate()
                    {
                        let l = t.mor(tn(x, y), z, t.mor(x, y, p, q), r);
                        let rr = t.mor(x, tn(y, z), p, t.mor(y, z, q, r));
                        if l != rr {
                            let mut m = [0u32; 3];
                            m[slot] = a;
                            out.push(failure(
                                &name("associativity naturality"),
                                &[x, y, z],
                                &m,
                                g.sub(l, rr),
                            ));
                        }
                    }
                }
                for w in 0..n {
                    let d = signed(
                        g,
                        &[
                            (1, t.assoc(tn(x, y), z, w)),
                            (1, t.assoc(x, y, tn(z, w))),
                            (-1, t.mor(tn(tn(x, y), z), w, t.assoc(x, y, z), 0)),
                            (-1, t.assoc(x, tn(y, z), w)),
                            (-1, t.mor(x, tn(tn(y, z), w), 0, t.assoc(y, z, w))),
                        ],
                    );
                    if d != 0 {
                        out.push(failure(&name("pentagon"), &[x, y, z, w], &[], d));
                    }
                }
            }
        }
        for a in 0..b {
            let u = t.unit();
            let l = t.mor(u, x, 0, a);
            if l != a {
                out.push(failure(
                    &name("left unit naturality"),
                    &[x],
                    &[a],
                    g.sub(l, a),
                ));
            }
            let r = t.mor(x, u, a, 0);
            if r != a {
                out.push(failure(
                    &name("right unit naturality"),
                    &[x],
                    &[a],
                    g.sub(r, a),
                ));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalSymCatGroup {
    pub objects: ObjectGroup,
    pub pi1: GroupTables,
    /// `mor_add[((x n + y) b + alpha) b + beta]`.
    pub mor_add: Vec<u32>,
    /// Associativity `(x + y) + z -> x + (y + z)`, indexed `(x n + y) n + z`.
    pub a: Vec<u32>,
    /// Symmetry `x + y -> y + x`, indexed `x n + y`.
    pub c: Vec<u32>,
    pub lambda: Vec<u32>,
    pub rho: Vec<u32>,
    /// `iota(x): -x + x -> 0`, an automorphism of `0`.
    pub iota: Vec<u32>,
}

impl SkeletalSymCatGroup {
    /// All constraints identities and `alpha + beta` computed in `pi1`.
    pub fn strict(objects: ObjectGroup, pi1: &FiniteAbelianGroup) -> Result<Self> {
        let pi1 = GroupTables::new(pi1)?;
        let n = objects.size();
        let b = pi1.size();
        let mut mor_add = Vec::with_capacity(n * n * b * b);
        for _ in 0..n * n {
            for x in 0..b as u32 {
                for y in 0..b as u32 {
                    mor_add.push(pi1.add(x, y));
                }
            }
        }
        Ok(Self {
            objects,
            pi1,
            mor_add,
            a: vec![0; n * n * n],
            c: vec![0; n * n],
            lambda: vec![0; n],
            rho: vec![0; n],
            iota: vec![0; n],
        })
    }

    /// Checks table shapes and ranges.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.objects.size();
        let b = self.pi1.size();
        let shapes = [
            ("mor_add", self.mor_add.len(), n * n * b * b),
            ("a", self.a.len(), n * n * n),
            ("c", self.c.len(), n * n),
            ("lambda", self.lambda.len(), n),
            ("rho", self.rho.len(), n),
            ("iota", self.iota.len(), n),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(Error::Structural(format!(
                    "table {name} has {got} entries, expected {want}"
                )));
            }
        }
        let tables = [
            &self.mor_add,
            &self.a,
            &self.c,
            &self.lambda,
            &self.rho,
            &self.iota,
        ];
        if tables.iter().any(|t| t.iter().any(|&v| v as usize >= b)) {
            return Err(Error::Structural("table entry outside pi1".into()));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.objects.size()
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32 {
        let n = self.size();
        let b = self.pi1.size();
        self.mor_add[((x * n + y) * b + alpha as usize) * b + beta as usize]
    }

    #[inline]
    pub fn assoc_at(&self, x: usize, y: usize, z: usize) -> u32 {
        let n = self.size();
        self.a[(x * n + y) * n + z]
    }

    #[inline]
    pub fn sym_at(&self, x: usize, y: usize) -> u32 {
        self.c[x * self.size() + y]
    }

    /// `coma(a, b, c, d): (a + b) + (c + d) -> (a + c) + (b + d)` along the
    /// left branch: through `((a + b) + c) + d`.
    pub fn coma(&self, a: usize, b: usize, c: usize, d: usize) -> u32 {
        let o = &self.objects;
        let abc = o.add(o.add(a, b), c);
        signed(
            &self.pi1,
            &[
                (-1, self.assoc_at(o.add(a, b), c, d)),
                (1, self.p(abc, d, self.assoc_at(a, b, c), 0)),
                (
                    1,
                    self.p(abc, d, self.p(a, o.add(b, c), 0, self.sym_at(b, c)), 0),
                ),
                (-1, self.p(abc, d, self.assoc_at(a, c, b), 0)),
                (1, self.assoc_at(o.add(a, c), b, d)),
            ],
        )
    }

    /// The same composite along the right branch: through `a + (b + (c + d))`.
    pub fn coma_right(&self, a: usize, b: usize, c: usize, d: usize) -> u32 {
        let o = &self.objects;
        let bcd = o.add(o.add(b, c), d);
        signed(
            &self.pi1,
            &[
                (1, self.assoc_at(a, b, o.add(c, d))),
                (-1, self.p(a, bcd, 0, self.assoc_at(b, c, d))),
                (
                    1,
                    self.p(a, bcd, 0, self.p(o.add(b, c), d, self.sym_at(b, c), 0)),
                ),
                (1, self.p(a, bcd, 0, self.assoc_at(c, b, d))),
                (-1, self.assoc_at(a, c, o.add(b, d))),
            ],
        )
    }

    /// The unique `beta` with `rho(x) o (alpha + beta) = alpha' o rho(x)`.
    pub fn deviation(&self, x: usize, alpha: u32, alpha_prime: u32) -> Result<u32> {
        let zero = self.objects.zero();
        let mut found = None;
        for beta in 0..self.pi1.size() as u32 {
            if self.p(x, zero, alpha, beta) == alpha_prime {
                if found.is_some() {
                    return Err(Error::ModelInconsistency(format!(
                        "deviation at object {x} is not unique"
                    )));
                }
                found = Some(beta);
            }
        }
        found.ok_or_else(|| Error::ModelInconsistency(format!("no deviation exists at object {x}")))
    }

    pub fn pi0_pi1(&self) -> (ObjectGroup, FiniteAbelianGroup) {
        (self.objects.clone(), self.pi1.group().clone())
    }
}

impl MonoidalTables for SkeletalSymCatGroup {
    fn pi1(&self) -> &GroupTables {
        &self.pi1
    }
    fn objects(&self) -> usize {
        self.size()
    }
    fn unit(&self) -> usize {
        self.objects.zero()
    }
    fn tensor(&self, x: usize, y: usize) -> usize {
        self.objects.add(x, y)
    }
    fn mor(&self, x: usize, y: usize, alpha: u32, beta: u32) -> u32 {
        self.p(x, y, alpha, beta)
    }
    fn assoc(&self, x: usize, y: usize, z: usize) -> u32 {
        self.assoc_at(x, y, z)
    }
    fn lunit(&self, x: usize) -> u32 {
        self.lambda[x]
    }
    fn runit(&self, x: usize) -> u32 {
        self.rho[x]
    }
}

/// Monoidal coherence, hexagon, involution and naturality of the symmetry.
pub fn check_sym_coherence(g: &SkeletalSymCatGroup) -> Vec<CoherenceFailure> {
    let mut out = monoidal_failures(g, "");
    let t = &g.pi1;
    let o = &g.objects;
    let n = g.size();
    let b = t.size() as u32;
    for x in 0..n {
        for y in 0..n {
            let d = t.add(g.sym_at(x, y), g.sym_at(y, x));
            if d != 0 {
                out.push(failure("symmetry involution", &[x, y], &[], d));
            }
            for a in 0..b {
                for (p, q) in [(a, 0), (0, a)] {
                    let l = g.p(y, x, q, p);
                    let r = g.p(x, y, p, q);
                    if l != r {
                        out.push(failure(
                            "symmetry naturality",
                            &[x, y],
                            &[p, q],
                            t.sub(l, r),
                        ));
                    }
                }
            }
            for z in 0..n {
                let d = signed(
                    t,
                    &[
                        (1, g.assoc_at(x, y, z)),
                        (1, g.sym_at(x, o.add(y, z))),
                        (1, g.assoc_at(y, z, x)),
                        (-1, g.p(o.add(x, y), z, g.sym_at(x, y), 0)),
                        (-1, g.assoc_at(y, x, z)),
                        (-1, g.p(y, o.add(x, z), 0, g.sym_at(x, z))),
                    ],
                );
                if d != 0 {
                    out.push(failure("hexagon", &[x, y, z], &[], d));
                }
            }
        }
    }
    out
}

/// A monoidal functor between skeletal categorical groups.
///
/// `fplus[x n + y]: f(x) + f(y) -> f(x + y)` and `f0: f(0) -> 0`.
#[derive(Clone, Debug)]
pub struct MonoidalFunctorData {
    pub source: SkeletalSymCatGroup,
    pub target: SkeletalSymCatGroup,
    pub obj_map: Vec<usize>,
    /// `mor_map[x][alpha]`: the image of `alpha: x -> x`, an automorphism of `f(x)`.
    pub mor_map: Vec<Vec<u32>>,
    pub fplus: Vec<u32>,
    pub f0: Option<u32>,
}

impl MonoidalFunctorData {
    pub fn identity(g: &SkeletalSymCatGroup) -> Self {
        let n = g.size();
        let b = g.pi1.size() as u32;
        Self {
            source: g.clone(),
            target: g.clone(),
            obj_map: (0..n).collect(),
            mor_map: vec![(0..b).collect(); n],
            fplus: vec![0; n * n],
            f0: Some(0),
        }
    }

    pub fn check_shape(&self) -> Result<()> {
        let n = self.source.size();
        let m = self.target.size();
        let b = self.source.pi1.size();
        let b2 = self.target.pi1.size();
        if self.obj_map.len() != n || self.obj_map.iter().any(|&y| y >= m) {
            return Err(Error::Structural("obj_map has the wrong shape".into()));
        }
        if self.mor_map.len() != n
            || self
                .mor_map
                .iter()
                .any(|t| t.len() != b || t.iter().any(|&v| v as usize >= b2))
        {
            return Err(Error::Structural("mor_map has the wrong shape".into()));
        }
        if self.fplus.len() != n * n || self.fplus.iter().any(|&v| v as usize >= b2) {
            return Err(Error::Structural("fplus has the wrong shape".into()));
        }
        if self.f0.is_some_and(|v| v as usize >= b2) {
            return Err(Error::Structural("f0 outside pi1".into()));
        }
        if self.obj_map[self.source.objects.zero()] != self.target.objects.zero() {
            return Err(Error::Precondition("f(0) is not the zero object".into()));
        }
        Ok(())
    }

    #[inline]
    pub fn fmor(&self, x: usize, alpha: u32) -> u32 {
        self.mor_map[x][alpha as usize]
    }

    #[inline]
    pub fn fplus_at(&self, x: usize, y: usize) -> u32 {
        self.fplus[x * self.source.size() + y]
    }

    /// The supplied `f0`, or the derived one.
    pub fn zero_iso(&self) -> Result<u32> {
        match self.f0 {
            Some(v) => Ok(v),
            None => derived_zero_iso(self),
        }
    }

    /// Coherence with the associativity and unit constraints, naturality of
    /// `fplus` and additivity of each `mor_map[x]`.
    pub fn failures(&self) -> Result<Vec<CoherenceFailure>> {
        self.check_shape()?;
        let f0 = self.zero_iso()?;
        Ok(monoidal_functor_failures(
            &self.source,
            &self.target,
            &self.obj_map,
            &|x, a| self.fmor(x, a),
            &|x, y| self.fplus_at(x, y),
            f0,
            "",
        ))
    }
}

/// Functor coherence for a monoidal functor between any two [`MonoidalTables`]
/// with strict object maps. `fmor(x, alpha)` maps automorphisms of `x`,
/// `ften(x, y): F x (x) F y -> F (x (x) y)` and `funit: F I -> I`.
pub fn monoidal_functor_failures<S, T>(
    s: &S,
    t: &T,
    obj_map: &[usize],
    fmor: &dyn Fn(usize, u32) -> u32,
    ften: &dyn Fn(usize, usize) -> u32,
    funit: u32,
    prefix: &str,
) -> Vec<CoherenceFailure>
where
    S: MonoidalTables + ?Sized,
    T: MonoidalTables + ?Sized,
{
    let g = t.pi1();
    let n = s.objects();
    let b = s.pi1().size() as u32;
    let f = |x: usize| obj_map[x];
    let name = |c: &str| format!("{prefix}{c}");
    let mut out = Vec::new();
    let (u, u2) = (s.unit(), t.unit());
    for x in 0..n {
        for a in 0..b {
            for c in 0..b {
                let l = fmor(x, s.pi1().add(a, c));
                let r = g.add(fmor(x, a), fmor(x, c));
                if l != r {
                    out.push(failure(
                        &name("functor additivity"),
                        &[x],
                        &[a, c],
                        g.sub(l, r),
                    ));
                }
            }
        }
        let l = signed(
            g,
            &[
                (1, fmor(x, s.lunit(x))),
                (1, ften(u, x)),
                (-1, t.mor(u2, f(x), funit, 0)),
            ],
        );
        let d = g.sub(l, t.lunit(f(x)));
        if d != 0 {
            out.push(failure(&name("functor left unit"), &[x], &[], d));
        }
        let r = signed(
            g,
            &[
                (1, fmor(x, s.runit(x))),
                (1, ften(x, u)),
                (-1, t.mor(f(x), u2, 0, funit)),
            ],
        );
        let d = g.sub(r, t.runit(f(x)));
        if d != 0 {
            out.push(failure(&name("functor right unit"), &[x], &[], d));
        }
        for y in 0..n {
            let xy = s.tensor(x, y);
            for a in 0..b {
                for (p, q) in [(a, 0), (0, a)] {
                    let l = t.mor(f(x), f(y), fmor(x, p), fmor(y, q));
                    let r = fmor(xy, s.mor(x, y, p, q));
                    if l != r {
                        out.push(failure(
                            &name("functor naturality"),
                            &[x, y],
                            &[p, q],
                            g.sub(l, r),
                        ));
                    }
                }
            }
            for z in 0..n {
                let yz = s.tensor(y, z);
                let d = signed(
                    g,
                    &[
                        (1, t.mor(f(xy), f(z), ften(x, y), 0)),
                        (1, ften(xy, z)),
                        (1, fmor(s.tensor(xy, z), s.assoc(x, y, z))),
                        (-1, t.assoc(f(x), f(y), f(z))),
                        (-1, t.mor(f(x), f(yz), 0, ften(y, z))),
                        (-1, ften(x, yz)),
                    ],
                );
                if d != 0 {
                    out.push(failure(&name("functor associativity"), &[x, y, z], &[], d));
                }
            }
        }
    }
    out
}

/// The zero isomorphism `f(0) -> 0` determined by `f_+` and the constraints:
/// `0 -> -0 + 0 -> (-0 + 0) + 0 -> -0 + (0 + 0) -> -0 + f(0 + 0) -> -0 + f(0) -> 0`
/// read with `f(0) = 0`, starting from `lambda'(0)^-1`.
pub fn derived_zero_iso(f: &MonoidalFunctorData) -> Result<u32> {
    let z = f.source.objects.zero();
    let z2 = f.target.objects.zero();
    if f.obj_map[z] != z2 {
        return Err(Error::Precondition("f(0) is not the zero object".into()));
    }
    let t = &f.target;
    Ok(signed(
        &t.pi1,
        &[
            (-1, t.lambda[z2]),
            (1, t.p(z2, z2, t.pi1.neg(t.iota[z2]), 0)),
            (1, t.assoc_at(z2, z2, z2)),
            (1, t.p(z2, z2, 0, f.fplus_at(z, z))),
            (1, t.p(z2, z2, 0, f.fmor(z, f.source.lambda[z]))),
            (1, t.iota[z2]),
        ],
    ))
}

/// `beta -> f0 o f(beta) o f0^-1` on automorphisms of `0`; checked additive.
pub fn induced_pi1_map(f: &MonoidalFunctorData) -> Result<Vec<u32>> {
    let z = f.source.objects.zero();
    let f0 = f.zero_iso()?;
    let g = &f.target.pi1;
    let map: Vec<u32> = (0..f.source.pi1.size() as u32)
        .map(|beta| signed(g, &[(1, f0), (1, f.fmor(z, beta)), (-1, f0)]))
        .collect();
    let s = &f.source.pi1;
    for a in 0..s.size() as u32 {
        for b in 0..s.size() as u32 {
            if map[s.add(a, b) as usize] != g.add(map[a as usize], map[b as usize]) {
                return Err(Error::ModelInconsistency(
                    "induced pi1 map is not additive".into(),
                ));
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strict(n: usize, b: u64) -> SkeletalSymCatGroup {
        SkeletalSymCatGroup::strict(ObjectGroup::cyclic(n), &FiniteAbelianGroup::cyclic(b)).unwrap()
    }

    #[test]
    fn strict_models_are_coherent() {
        for (n, b) in [(1, 1), (2, 2), (3, 2), (4, 3)] {
            let g = strict(n, b);
            g.check_shape().unwrap();
            assert!(check_sym_coherence(&g).is_empty());
            assert!(g.objects.validate().is_empty());
        }
    }

    #[test]
    fn perturbed_assoc_fails_pentagon() {
        let mut g = strict(3, 2);
        g.a[(3 + 2) * 3 + 1] = 1;
        let fails = check_sym_coherence(&g);
        assert!(fails
            .iter()
            .any(|f| f.check == "pentagon" && f.objects.windows(3).any(|w| w == [1, 2, 1])));
    }

    #[test]
    fn deviation_rules() {
        let g = strict(3, 4);
        for x in 0..3 {
            for a in 0..4 {
                assert_eq!(g.deviation(x, a, a).unwrap(), 0);
                for a2 in 0..4 {
                    let d = g.deviation(x, a, a2).unwrap();
                    assert_eq!(g.deviation(x, a2, a).unwrap(), g.pi1.neg(d));
                }
                for beta in 0..4 {
                    let a2 = g.p(x, 0, a, beta);
                    assert_eq!(g.deviation(x, a, a2).unwrap(), beta);
                }
            }
        }
    }

    #[test]
    fn degenerate_mor_add_has_no_deviation() {
        let mut g = strict(2, 2);
        g.mor_add.iter_mut().for_each(|v| *v = 0);
        assert!(matches!(
            g.deviation(1, 0, 1),
            Err(Error::ModelInconsistency(_))
        ));
        assert!(matches!(
            g.deviation(1, 0, 0),
            Err(Error::ModelInconsistency(_))
        ));
    }

    #[test]
    fn coma_on_strict_model() {
        let g = strict(3, 2);
        for a in 0..3 {
            for d in 0..3 {
                assert_eq!(g.coma(a, 0, 0, d), 0);
                assert_eq!(g.coma(a, 1, 2, d), g.coma_right(a, 1, 2, d));
            }
        }
    }

    #[test]
    fn zero_iso_and_pi1_map() {
        let g = strict(2, 3);
        let id = MonoidalFunctorData::identity(&g);
        assert_eq!(derived_zero_iso(&id).unwrap(), 0);
        assert_eq!(induced_pi1_map(&id).unwrap(), vec![0, 1, 2]);
        assert!(id.failures().unwrap().is_empty());

        let mut f = id.clone();
        f.fplus[0] = 1;
        f.f0 = None;
        assert_eq!(derived_zero_iso(&f).unwrap(), 1);
        let mut bad = f.clone();
        bad.f0 = Some(0);
        assert!(!bad.failures().unwrap().is_empty());
    }

    #[test]
    fn functor_shape_errors() {
        let g = strict(2, 2);
        let mut f = MonoidalFunctorData::identity(&g);
        f.obj_map = vec![1, 0];
        assert!(matches!(f.check_shape(), Err(Error::Precondition(_))));
        f.obj_map = vec![0];
        assert!(matches!(f.check_shape(), Err(Error::Structural(_))));
    }

    #[test]
    fn pi0_pi1_of_strict() {
        let (o, p) = strict(3, 2).pi0_pi1();
        assert_eq!(o.size(), 3);
        assert_eq!(p.orders(), &[2]);
    }
}
