//! Mac Lane 3-cochains and 2-cochains of a finite ring with bimodule
//! coefficients, stored as dense tables of coefficient indices.

pub mod cohomology;
pub mod equations;
pub mod symbolic;

use std::fmt;

use crate::algebra::group::GroupTables;
use crate::algebra::ring::FiniteRing;
use crate::error::{Error, Violation};

pub use cohomology::{cohomologous, compute_h3, CohomologyResult, Method};
pub use equations::{
    coboundary, cocycle_defect, cross_effect, equation_defects, is_cocycle, Convention,
    EquationDefect, EquationId,
};

/// The four components of a 3-cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// `phi_.`, on `R^3`.
    Dot,
    /// `phi_.+`, on `R^3`.
    DotPlus,
    /// `phi_+.`, on `R^3`.
    PlusDot,
    /// `phi_+`, on 2x2 matrices (row-major `R^4`).
    Plus,
}

impl Component {
    pub const ALL: [Component; 4] = [Self::Dot, Self::DotPlus, Self::PlusDot, Self::Plus];

    pub fn arity(self) -> usize {
        if self == Self::Plus {
            4
        } else {
            3
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Dot => "dot",
            Self::DotPlus => "dotplus",
            Self::PlusDot => "plusdot",
            Self::Plus => "plus",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Components of a 2-cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component2 {
    GDot,
    GPlus,
}

impl Component2 {
    pub const ALL: [Component2; 2] = [Self::GDot, Self::GPlus];

    pub fn name(self) -> &'static str {
        match self {
            Self::GDot => "gdot",
            Self::GPlus => "gplus",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[inline]
pub fn idx3(n: usize, r: usize, s: usize, t: usize) -> usize {
    (r * n + s) * n + t
}

#[inline]
pub fn idx4(n: usize, m: [usize; 4]) -> usize {
    ((m[0] * n + m[1]) * n + m[2]) * n + m[3]
}

pub fn unidx(n: usize, arity: usize, mut i: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
    out
}

/// A 3-cochain. Values are indices of coefficient-group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain3 {
    n: usize,
    pub dot: Vec<u32>,
    pub dotplus: Vec<u32>,
    pub plusdot: Vec<u32>,
    pub plus: Vec<u32>,
}

impl Cochain3 {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            dot: vec![0; n * n * n],
            dotplus: vec![0; n * n * n],
            plusdot: vec![0; n * n * n],
            plus: vec![0; n * n * n * n],
        }
    }

    pub fn ring_size(&self) -> usize {
        self.n
    }

    pub fn table(&self, c: Component) -> &[u32] {
        match c {
            Component::Dot => &self.dot,
            Component::DotPlus => &self.dotplus,
            Component::PlusDot => &self.plusdot,
            Component::Plus => &self.plus,
        }
    }

    pub fn table_mut(&mut self, c: Component) -> &mut Vec<u32> {
        match c {
            Component::Dot => &mut self.dot,
            Component::DotPlus => &mut self.dotplus,
            Component::PlusDot => &mut self.plusdot,
            Component::Plus => &mut self.plus,
        }
    }

    pub fn get(&self, c: Component, args: &[usize]) -> u32 {
        self.table(c)[flat(self.n, args)]
    }

    pub fn set(&mut self, c: Component, args: &[usize], v: u32) {
        let i = flat(self.n, args);
        self.table_mut(c)[i] = v;
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let z = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect();
        Self {
            n: self.n,
            dot: z(&self.dot, &other.dot),
            dotplus: z(&self.dotplus, &other.dotplus),
            plusdot: z(&self.plusdot, &other.plusdot),
            plus: z(&self.plus, &other.plus),
        }
    }

    pub fn add(&self, other: &Self, b: &GroupTables) -> Self {
        self.zip_with(other, |x, y| b.add(x, y))
    }

    pub fn sub(&self, other: &Self, b: &GroupTables) -> Self {
        self.zip_with(other, |x, y| b.sub(x, y))
    }

    pub fn is_zero(&self) -> bool {
        Component::ALL
            .iter()
            .all(|&c| self.table(c).iter().all(|&v| v == 0))
    }

    /// Nonzero entries in canonical order (component, then row-major arguments).
    pub fn nonzero_entries(&self) -> Vec<(Component, Vec<usize>, u32)> {
        let mut out = Vec::new();
        for c in Component::ALL {
            for (i, &v) in self.table(c).iter().enumerate() {
                if v != 0 {
                    out.push((c, unidx(self.n, c.arity(), i), v));
                }
            }
        }
        out
    }

    /// First position where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Component, Vec<usize>)> {
        for c in Component::ALL {
            let (a, b) = (self.table(c), other.table(c));
            if let Some(i) = (0..a.len()).find(|&i| a[i] != b[i]) {
                return Some((c, unidx(self.n, c.arity(), i)));
            }
        }
        None
    }
}

fn flat(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// A 2-cochain `(gamma_., gamma_+)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    n: usize,
    pub gdot: Vec<u32>,
    pub gplus: Vec<u32>,
}

impl Cochain2 {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            gdot: vec![0; n * n],
            gplus: vec![0; n * n],
        }
    }

    pub fn ring_size(&self) -> usize {
        self.n
    }

    pub fn table(&self, c: Component2) -> &[u32] {
        match c {
            Component2::GDot => &self.gdot,
            Component2::GPlus => &self.gplus,
        }
    }

    pub fn table_mut(&mut self, c: Component2) -> &mut Vec<u32> {
        match c {
            Component2::GDot => &mut self.gdot,
            Component2::GPlus => &mut self.gplus,
        }
    }

    #[inline]
    pub fn gdot_at(&self, r: usize, s: usize) -> u32 {
        self.gdot[r * self.n + s]
    }

    #[inline]
    pub fn gplus_at(&self, r: usize, s: usize) -> u32 {
        self.gplus[r * self.n + s]
    }

    /// Vanishes whenever an argument is the zero of the ring.
    pub fn is_normalized(&self, zero: usize) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            self.gdot_at(zero, x) == 0
                && self.gdot_at(x, zero) == 0
                && self.gplus_at(zero, x) == 0
                && self.gplus_at(x, zero) == 0
        })
    }

    /// Uniform among all 2-cochains with values in a group of `size` elements.
    pub fn random(n: usize, size: usize, rng: &mut impl rand::Rng) -> Self {
        let mut g = Self::zero(n);
        for v in g.gdot.iter_mut().chain(g.gplus.iter_mut()) {
            *v = rng.gen_range(0..size as u32);
        }
        g
    }

    /// Uniform among normalized 2-cochains with values in a group of `size` elements.
    pub fn random_normalized(n: usize, zero: usize, size: usize, rng: &mut impl rand::Rng) -> Self {
        let mut g = Self::zero(n);
        for r in (0..n).filter(|&r| r != zero) {
            for s in (0..n).filter(|&s| s != zero) {
                g.gdot[r * n + s] = rng.gen_range(0..size as u32);
                g.gplus[r * n + s] = rng.gen_range(0..size as u32);
            }
        }
        g
    }

    pub fn neg(&self, b: &GroupTables) -> Self {
        Self {
            n: self.n,
            gdot: self.gdot.iter().map(|&x| b.neg(x)).collect(),
            gplus: self.gplus.iter().map(|&x| b.neg(x)).collect(),
        }
    }

    pub fn add(&self, other: &Self, b: &GroupTables) -> Self {
        Self {
            n: self.n,
            gdot: self
                .gdot
                .iter()
                .zip(&other.gdot)
                .map(|(&x, &y)| b.add(x, y))
                .collect(),
            gplus: self
                .gplus
                .iter()
                .zip(&other.gplus)
                .map(|(&x, &y)| b.add(x, y))
                .collect(),
        }
    }

    pub fn nonzero_entries(&self) -> Vec<(Component2, Vec<usize>, u32)> {
        let mut out = Vec::new();
        for c in Component2::ALL {
            for (i, &v) in self.table(c).iter().enumerate() {
                if v != 0 {
                    out.push((c, unidx(self.n, 2, i), v));
                }
            }
        }
        out
    }
}

/// Whether normalization forces the value at a position to vanish.
pub fn is_forced(c: Component, args: &[usize], zero: usize) -> bool {
    match c {
        Component::Plus => plus_pattern(args, zero).is_some(),
        _ => args.contains(&zero),
    }
}

/// The first of the five vanishing patterns matched by `[[a, b], [c, d]]`.
pub fn plus_pattern(m: &[usize], zero: usize) -> Option<&'static str> {
    let z = |i: usize| m[i] == zero;
    if z(2) && z(3) {
        Some("zero bottom row")
    } else if z(0) && z(1) {
        Some("zero top row")
    } else if z(1) && z(3) {
        Some("zero right column")
    } else if z(0) && z(2) {
        Some("zero left column")
    } else if z(1) && z(2) {
        Some("diagonal matrix")
    } else {
        None
    }
}

/// Every normalization constraint violated by `c`, with witnesses.
pub fn check_normalized(c: &Cochain3, r: &FiniteRing) -> Vec<Violation> {
    let n = c.ring_size();
    let zero = r.zero();
    let mut out = Vec::new();
    for comp in Component::ALL {
        for (i, &v) in c.table(comp).iter().enumerate() {
            if v == 0 {
                continue;
            }
            let args = unidx(n, comp.arity(), i);
            let rule = match comp {
                Component::Plus => {
                    plus_pattern(&args, zero).map(|p| format!("plus vanishes on {p}"))
                }
                _ => args
                    .contains(&zero)
                    .then(|| format!("{comp} vanishes when an argument is zero")),
            };
            if let Some(rule) = rule {
                out.push(Violation {
                    rule,
                    witness: args.iter().map(|&a| r.label(a).to_string()).collect(),
                    detail: format!("value index {v}"),
                });
            }
        }
    }
    out
}

/// Free and forced positions of `C^3`, each expanded into coefficient coordinates.
#[derive(Clone, Debug)]
pub struct Layout {
    pub n: usize,
    pub zero: usize,
    /// `(component, flat index)` of each position not forced by normalization.
    pub free: Vec<(Component, usize)>,
    pub forced: Vec<(Component, usize)>,
    /// Position id in `free` or `forced` for every `(component, flat index)`.
    slot: [Vec<Slot>; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Free(usize),
    Forced(usize),
}

impl Layout {
    pub fn new(n: usize, zero: usize) -> Self {
        let mut free = Vec::new();
        let mut forced = Vec::new();
        let mut slot: [Vec<Slot>; 4] = Default::default();
        for (ci, c) in Component::ALL.into_iter().enumerate() {
            let size = n.pow(c.arity() as u32);
            for i in 0..size {
                let args = unidx(n, c.arity(), i);
                if is_forced(c, &args, zero) {
                    slot[ci].push(Slot::Forced(forced.len()));
                    forced.push((c, i));
                } else {
                    slot[ci].push(Slot::Free(free.len()));
                    free.push((c, i));
                }
            }
        }
        Self {
            n,
            zero,
            free,
            forced,
            slot,
        }
    }

    #[inline]
    pub fn slot(&self, c: Component, flat_index: usize) -> Slot {
        self.slot[c as usize][flat_index]
    }
}

/// Entrywise sum of two 2x2 matrices over the ring.
pub(crate) fn matrix_sum(r: &FiniteRing, a: [usize; 4], b: [usize; 4]) -> [usize; 4] {
    [
        r.add(a[0], b[0]),
        r.add(a[1], b[1]),
        r.add(a[2], b[2]),
        r.add(a[3], b[3]),
    ]
}

pub(crate) fn cochain_error(violations: Vec<Violation>) -> Error {
    Error::Precondition(format!(
        "cochain is not normalized ({} violation(s); first: {})",
        violations.len(),
        violations[0]
    ))
}
