//! The eight cocycle equations and the coboundary, written once over an
//! abstract coefficient type so the same transcription drives table
//! evaluation and the assembly of linear systems.

use std::fmt;

use crate::algebra::bimodule::BimoduleTables;
use crate::algebra::ring::FiniteRing;
use crate::error::Result;

use super::{check_normalized, cochain_error, idx3, idx4, unidx, Cochain2, Cochain3, Component};

/// Sign conventions for E3, E6 and the `phi_+.` part of the coboundary.
///
/// `Coherent` is the default: it is the convention under which the equations
/// hold for every coboundary and match the coherence diagrams of the realized
/// categorical ring. `Printed` keeps the literal signs for diagnostics: E3
/// without the cross-effect of `phi_.(r, -, t)`, E6 with both cross-effects on
/// the right-hand side, and `phi_+.` of a coboundary with the opposite sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Coherent,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
}

impl EquationId {
    pub const ALL: [EquationId; 8] = [
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
        Self::E5,
        Self::E6,
        Self::E7,
        Self::E8,
    ];

    /// Number of ring arguments: `(r,s,t,u)`, `(r,s,t0,t1)`, `(r,s0,s1,t)`,
    /// `(r0,r1,s,t)`, `(r,s00,s01,s10,s11)`, `(r0,r1,s0,s1)`,
    /// `(r00,r01,r10,r11,s)`, `(r000,...,r111)`.
    pub fn arity(self) -> usize {
        match self {
            Self::E1 | Self::E2 | Self::E3 | Self::E4 | Self::E6 => 4,
            Self::E5 | Self::E7 => 5,
            Self::E8 => 8,
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A nonzero value of one equation at one argument tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquationDefect {
    pub equation: EquationId,
    pub args: Vec<usize>,
    /// Index of the defect in the coefficient group.
    pub value: u32,
}

/// Coefficient arithmetic: an abelian group with ring actions on both sides.
pub trait Coeffs {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn lact(&self, r: usize, a: &Self::V) -> Self::V;
    fn ract(&self, a: &Self::V, r: usize) -> Self::V;

    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.add(a, &self.neg(b))
    }

    /// `sum sign_i v_i` with signs `+1` or `-1`.
    fn signed(&self, terms: &[(i8, Self::V)]) -> Self::V {
        terms.iter().fold(self.zero(), |acc, (s, v)| {
            if *s >= 0 {
                self.add(&acc, v)
            } else {
                self.sub(&acc, v)
            }
        })
    }
}

pub trait ThreeCochain: Coeffs {
    fn dot(&self, r: usize, s: usize, t: usize) -> Self::V;
    fn dotplus(&self, r: usize, s: usize, t: usize) -> Self::V;
    fn plusdot(&self, r: usize, s: usize, t: usize) -> Self::V;
    fn plus(&self, m: [usize; 4]) -> Self::V;
}

pub trait TwoCochain: Coeffs {
    fn gdot(&self, r: usize, s: usize) -> Self::V;
    fn gplus(&self, r: usize, s: usize) -> Self::V;
}

/// `f(x) + f(y) - f(x + y)`.
pub fn cross_effect<C: Coeffs + ?Sized, A>(
    c: &C,
    f: impl Fn(&A) -> C::V,
    add: impl Fn(&A, &A) -> A,
    x: &A,
    y: &A,
) -> C::V {
    let s = add(x, y);
    c.sub(&c.add(&f(x), &f(y)), &f(&s))
}

fn cref1<C: Coeffs + ?Sized>(
    c: &C,
    r: &FiniteRing,
    f: impl Fn(usize) -> C::V,
    x: usize,
    y: usize,
) -> C::V {
    cross_effect(c, |&a: &usize| f(a), |&a, &b| r.add(a, b), &x, &y)
}

fn cref2<C: Coeffs + ?Sized>(
    c: &C,
    r: &FiniteRing,
    f: impl Fn(usize, usize) -> C::V,
    x: (usize, usize),
    y: (usize, usize),
) -> C::V {
    cross_effect(
        c,
        |&(a, b): &(usize, usize)| f(a, b),
        |&(a, b), &(p, q)| (r.add(a, p), r.add(b, q)),
        &x,
        &y,
    )
}

fn cref_plus<C: ThreeCochain + ?Sized>(
    c: &C,
    r: &FiniteRing,
    x: [usize; 4],
    y: [usize; 4],
) -> C::V {
    cross_effect(
        c,
        |m: &[usize; 4]| c.plus(*m),
        |a, b| super::matrix_sum(r, *a, *b),
        &x,
        &y,
    )
}

/// Value of equation `eq` at `args`; zero means the equation holds there.
pub fn evaluate<C: ThreeCochain + ?Sized>(
    eq: EquationId,
    c: &C,
    ring: &FiniteRing,
    conv: Convention,
    a: &[usize],
) -> C::V {
    let mu = |x: usize, y: usize| ring.mul(x, y);
    match eq {
        EquationId::E1 => {
            let (r, s, t, u) = (a[0], a[1], a[2], a[3]);
            c.signed(&[
                (1, c.lact(r, &c.dot(s, t, u))),
                (-1, c.dot(mu(r, s), t, u)),
                (1, c.dot(r, mu(s, t), u)),
                (-1, c.dot(r, s, mu(t, u))),
                (1, c.ract(&c.dot(r, s, t), u)),
            ])
        }
        EquationId::E2 => {
            let (r, s, t0, t1) = (a[0], a[1], a[2], a[3]);
            c.signed(&[
                (1, c.lact(r, &c.dotplus(s, t0, t1))),
                (-1, c.dotplus(mu(r, s), t0, t1)),
                (1, c.dotplus(r, mu(s, t0), mu(s, t1))),
                (-1, cref1(c, ring, |x| c.dot(r, s, x), t0, t1)),
            ])
        }
        EquationId::E3 => {
            let (r, s0, s1, t) = (a[0], a[1], a[2], a[3]);
            let mut terms = vec![
                (1, c.dotplus(r, mu(s0, t), mu(s1, t))),
                (-1, c.ract(&c.dotplus(r, s0, s1), t)),
                (-1, c.plusdot(mu(r, s0), mu(r, s1), t)),
                (1, c.lact(r, &c.plusdot(s0, s1, t))),
            ];
            if conv == Convention::Coherent {
                terms.push((-1, cref1(c, ring, |x| c.dot(r, x, t), s0, s1)));
            }
            c.signed(&terms)
        }
        EquationId::E4 => {
            let (r0, r1, s, t) = (a[0], a[1], a[2], a[3]);
            c.signed(&[
                (1, c.plusdot(mu(r0, s), mu(r1, s), t)),
                (-1, c.plusdot(r0, r1, mu(s, t))),
                (1, c.ract(&c.plusdot(r0, r1, s), t)),
                (1, cref1(c, ring, |x| c.dot(x, s, t), r0, r1)),
            ])
        }
        EquationId::E5 => {
            let (r, s00, s01, s10, s11) = (a[0], a[1], a[2], a[3], a[4]);
            let f = |x: usize, y: usize| c.dotplus(r, x, y);
            c.signed(&[
                (1, c.plus([mu(r, s00), mu(r, s01), mu(r, s10), mu(r, s11)])),
                (-1, c.lact(r, &c.plus([s00, s01, s10, s11]))),
                (-1, cref2(c, ring, f, (s00, s10), (s01, s11))),
                (1, cref2(c, ring, f, (s00, s01), (s10, s11))),
            ])
        }
        EquationId::E6 => {
            let (r0, r1, s0, s1) = (a[0], a[1], a[2], a[3]);
            let sign: i8 = if conv == Convention::Coherent { 1 } else { -1 };
            c.signed(&[
                (1, c.plus([mu(r0, s0), mu(r0, s1), mu(r1, s0), mu(r1, s1)])),
                (sign, cref1(c, ring, |x| c.dotplus(x, s0, s1), r0, r1)),
                (-sign, cref1(c, ring, |x| c.plusdot(r0, r1, x), s0, s1)),
            ])
        }
        EquationId::E7 => {
            let (r00, r01, r10, r11, s) = (a[0], a[1], a[2], a[3], a[4]);
            let f = |x: usize, y: usize| c.plusdot(x, y, s);
            c.signed(&[
                (1, c.plus([mu(r00, s), mu(r01, s), mu(r10, s), mu(r11, s)])),
                (-1, c.ract(&c.plus([r00, r01, r10, r11]), s)),
                (-1, cref2(c, ring, f, (r00, r10), (r01, r11))),
                (1, cref2(c, ring, f, (r00, r01), (r10, r11))),
            ])
        }
        EquationId::E8 => {
            let m = |i: usize, j: usize, k: usize, l: usize| [a[i], a[j], a[k], a[l]];
            c.signed(&[
                (1, cref_plus(c, ring, m(0, 1, 2, 3), m(4, 5, 6, 7))),
                (-1, cref_plus(c, ring, m(0, 1, 4, 5), m(2, 3, 6, 7))),
                (1, cref_plus(c, ring, m(0, 2, 4, 6), m(1, 3, 5, 7))),
            ])
        }
    }
}

/// Value of the coboundary of `g` at one position.
pub fn coboundary_at<C: TwoCochain + ?Sized>(
    g: &C,
    ring: &FiniteRing,
    conv: Convention,
    comp: Component,
    a: &[usize],
) -> C::V {
    let mu = |x: usize, y: usize| ring.mul(x, y);
    match comp {
        Component::Dot => {
            let (r, s, t) = (a[0], a[1], a[2]);
            g.signed(&[
                (1, g.lact(r, &g.gdot(s, t))),
                (-1, g.gdot(mu(r, s), t)),
                (1, g.gdot(r, mu(s, t))),
                (-1, g.ract(&g.gdot(r, s), t)),
            ])
        }
        Component::DotPlus => {
            let (r, s0, s1) = (a[0], a[1], a[2]);
            g.signed(&[
                (1, g.lact(r, &g.gplus(s0, s1))),
                (-1, g.gplus(mu(r, s0), mu(r, s1))),
                (1, cref1(g, ring, |x| g.gdot(r, x), s0, s1)),
            ])
        }
        Component::PlusDot => {
            let (r0, r1, s) = (a[0], a[1], a[2]);
            let sign: i8 = if conv == Convention::Coherent { -1 } else { 1 };
            g.signed(&[
                (sign, g.gplus(mu(r0, s), mu(r1, s))),
                (-sign, g.ract(&g.gplus(r0, r1), s)),
                (-sign, cref1(g, ring, |x| g.gdot(x, s), r0, r1)),
            ])
        }
        Component::Plus => {
            let f = |x: usize, y: usize| g.gplus(x, y);
            g.signed(&[
                (1, cref2(g, ring, f, (a[0], a[1]), (a[2], a[3]))),
                (-1, cref2(g, ring, f, (a[0], a[2]), (a[1], a[3]))),
            ])
        }
    }
}

/// Table-backed coefficients in a tabulated bimodule.
pub struct TableCoeffs<'a> {
    pub b: &'a BimoduleTables,
}

impl Coeffs for TableCoeffs<'_> {
    type V = u32;
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.b.group.add(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.b.group.neg(*a)
    }
    #[inline]
    fn lact(&self, r: usize, a: &u32) -> u32 {
        self.b.lact(r, *a)
    }
    #[inline]
    fn ract(&self, a: &u32, r: usize) -> u32 {
        self.b.ract(*a, r)
    }
}

/// A concrete 3-cochain read from its tables.
pub struct Concrete3<'a> {
    pub coeffs: TableCoeffs<'a>,
    pub c: &'a Cochain3,
}

impl<'a> Concrete3<'a> {
    pub fn new(b: &'a BimoduleTables, c: &'a Cochain3) -> Self {
        Self {
            coeffs: TableCoeffs { b },
            c,
        }
    }
}

macro_rules! forward_coeffs {
    ($t:ty) => {
        impl Coeffs for $t {
            type V = u32;
            #[inline]
            fn zero(&self) -> u32 {
                0
            }
            #[inline]
            fn add(&self, a: &u32, b: &u32) -> u32 {
                self.coeffs.add(a, b)
            }
            #[inline]
            fn neg(&self, a: &u32) -> u32 {
                self.coeffs.neg(a)
            }
            #[inline]
            fn lact(&self, r: usize, a: &u32) -> u32 {
                self.coeffs.lact(r, a)
            }
            #[inline]
            fn ract(&self, a: &u32, r: usize) -> u32 {
                self.coeffs.ract(a, r)
            }
        }
    };
}

forward_coeffs!(Concrete3<'_>);
forward_coeffs!(Concrete2<'_>);

impl ThreeCochain for Concrete3<'_> {
    #[inline]
    fn dot(&self, r: usize, s: usize, t: usize) -> u32 {
        self.c.dot[idx3(self.c.ring_size(), r, s, t)]
    }
    #[inline]
    fn dotplus(&self, r: usize, s: usize, t: usize) -> u32 {
        self.c.dotplus[idx3(self.c.ring_size(), r, s, t)]
    }
    #[inline]
    fn plusdot(&self, r: usize, s: usize, t: usize) -> u32 {
        self.c.plusdot[idx3(self.c.ring_size(), r, s, t)]
    }
    #[inline]
    fn plus(&self, m: [usize; 4]) -> u32 {
        self.c.plus[idx4(self.c.ring_size(), m)]
    }
}

pub struct Concrete2<'a> {
    pub coeffs: TableCoeffs<'a>,
    pub g: &'a Cochain2,
}

impl<'a> Concrete2<'a> {
    pub fn new(b: &'a BimoduleTables, g: &'a Cochain2) -> Self {
        Self {
            coeffs: TableCoeffs { b },
            g,
        }
    }
}

impl TwoCochain for Concrete2<'_> {
    #[inline]
    fn gdot(&self, r: usize, s: usize) -> u32 {
        self.g.gdot_at(r, s)
    }
    #[inline]
    fn gplus(&self, r: usize, s: usize) -> u32 {
        self.g.gplus_at(r, s)
    }
}

/// Calls `f` on every tuple in `0..n` of the given length, in lexicographic order.
pub fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let total = n.pow(len as u32);
    let mut t = vec![0usize; len];
    for _ in 0..total {
        f(&t);
        for slot in t.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
}

/// Every nonzero equation value, without any normalization precondition.
pub fn equation_defects(
    c: &Cochain3,
    ring: &FiniteRing,
    b: &BimoduleTables,
    conv: Convention,
) -> Vec<EquationDefect> {
    let src = Concrete3::new(b, c);
    let mut out = Vec::new();
    for eq in EquationId::ALL {
        for_each_tuple(ring.size(), eq.arity(), |args| {
            let v = evaluate(eq, &src, ring, conv, args);
            if v != 0 {
                out.push(EquationDefect {
                    equation: eq,
                    args: args.to_vec(),
                    value: v,
                });
            }
        });
    }
    out
}

/// Whether all eight equations hold, stopping at the first failure.
pub fn is_cocycle(c: &Cochain3, ring: &FiniteRing, b: &BimoduleTables, conv: Convention) -> bool {
    let src = Concrete3::new(b, c);
    EquationId::ALL.iter().all(|&eq| {
        let mut ok = true;
        for_each_tuple(ring.size(), eq.arity(), |args| {
            if ok && evaluate(eq, &src, ring, conv, args) != 0 {
                ok = false;
            }
        });
        ok
    })
}

/// Cocycle defects of a normalized cochain under the default convention.
pub fn cocycle_defect(
    c: &Cochain3,
    ring: &FiniteRing,
    b: &BimoduleTables,
) -> Result<Vec<EquationDefect>> {
    cocycle_defect_with(c, ring, b, Convention::Coherent)
}

pub fn cocycle_defect_with(
    c: &Cochain3,
    ring: &FiniteRing,
    b: &BimoduleTables,
    conv: Convention,
) -> Result<Vec<EquationDefect>> {
    let v = check_normalized(c, ring);
    if !v.is_empty() {
        return Err(cochain_error(v));
    }
    Ok(equation_defects(c, ring, b, conv))
}

pub fn coboundary(g: &Cochain2, ring: &FiniteRing, b: &BimoduleTables) -> Cochain3 {
    coboundary_with(g, ring, b, Convention::Coherent)
}

pub fn coboundary_with(
    g: &Cochain2,
    ring: &FiniteRing,
    b: &BimoduleTables,
    conv: Convention,
) -> Cochain3 {
    let n = ring.size();
    let src = Concrete2::new(b, g);
    let mut out = Cochain3::zero(n);
    for comp in Component::ALL {
        let table = out.table_mut(comp);
        for (i, slot) in table.iter_mut().enumerate() {
            *slot = coboundary_at(&src, ring, conv, comp, &unidx(n, comp.arity(), i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Bimodule, FiniteAbelianGroup};

    fn z_mod(n: usize, m: u64) -> (FiniteRing, BimoduleTables) {
        let r = FiniteRing::zmod(n);
        let b = Bimodule::scalar(
            FiniteAbelianGroup::cyclic(m),
            &(0..n as i64).collect::<Vec<_>>(),
        )
        .unwrap();
        (r, BimoduleTables::new(&b).unwrap())
    }

    #[test]
    fn cross_effect_examples() {
        let (_, b) = z_mod(4, 4);
        let c = TableCoeffs { b: &b };
        let sq = |x: &u32| (x * x) % 4;
        let add = |x: &u32, y: &u32| (x + y) % 4;
        assert_eq!(cross_effect(&c, sq, add, &1, &1), 2);
        let (_, b3) = z_mod(3, 3);
        let c3 = TableCoeffs { b: &b3 };
        let sq3 = |x: &u32| (x * x) % 3;
        let add3 = |x: &u32, y: &u32| (x + y) % 3;
        assert_eq!(cross_effect(&c3, sq3, add3, &1, &1), 1);
        assert_eq!(cross_effect(&c3, |x: &u32| *x, add3, &2, &2), 0);
    }

    #[test]
    fn single_dot_entry_fails_e1() {
        let (r, b) = z_mod(2, 2);
        let mut c = Cochain3::zero(2);
        c.set(Component::Dot, &[1, 1, 1], 1);
        let d = cocycle_defect(&c, &r, &b).unwrap();
        assert!(d
            .iter()
            .any(|x| x.equation == EquationId::E1 && x.args == [1, 1, 1, 1] && x.value == 1));
    }

    #[test]
    fn telescoping_coboundary_vanishes() {
        let (r, b) = z_mod(2, 2);
        let mut g = Cochain2::zero(2);
        g.gdot = vec![0, 0, 0, 1];
        assert!(coboundary(&g, &r, &b).is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_small_rings() {
        for (n, m) in [(3, 3), (4, 4), (4, 2)] {
            let (r, b) = z_mod(n, m);
            let mut seed = 7u64;
            let mut next = || {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ((seed >> 33) % m) as u32
            };
            let mut g = Cochain2::zero(n);
            g.gdot.iter_mut().for_each(|x| *x = next());
            g.gplus.iter_mut().for_each(|x| *x = next());
            let c = coboundary(&g, &r, &b);
            assert!(equation_defects(&c, &r, &b, Convention::Coherent).is_empty());
        }
    }

    #[test]
    fn printed_convention_breaks_d_squared() {
        let (r, b) = z_mod(3, 3);
        let mut g = Cochain2::zero(3);
        g.gdot[idx_2(3, 1, 2)] = 1;
        g.gplus[idx_2(3, 2, 2)] = 1;
        let c = coboundary_with(&g, &r, &b, Convention::Printed);
        assert!(!equation_defects(&c, &r, &b, Convention::Printed).is_empty());
    }

    fn idx_2(n: usize, r: usize, s: usize) -> usize {
        r * n + s
    }
}
