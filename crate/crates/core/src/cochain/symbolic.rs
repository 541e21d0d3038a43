//! Linear forms in cochain coordinates, used to assemble the cocycle system
//! and the coboundary map as sparse integer rows.
//!
//! A coefficient `b` in `B = Z/d_1 x ... x Z/d_k` is a column of `k` integers.
//! A form is `sum_v M_v x_v` over variables `x_v` in `B`, with `M_v` a `k x k`
//! integer matrix whose row `i` is reduced modulo `d_i`.

use std::collections::HashSet;

use crate::algebra::bimodule::Bimodule;
use crate::algebra::ring::FiniteRing;

use super::equations::{
    coboundary_at, evaluate, for_each_tuple, Coeffs, Convention, EquationId, ThreeCochain,
    TwoCochain,
};
use super::{idx3, idx4, unidx, Component, Layout, Slot};

/// Sparse integer row and the order of the coordinate it constrains.
pub type Row = (Vec<(usize, i64)>, u64);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinForm {
    /// Sorted by variable; matrices are row-major `k x k`.
    terms: Vec<(usize, Vec<i64>)>,
}

impl LinForm {
    pub fn terms(&self) -> &[(usize, Vec<i64>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The coefficient bimodule as matrices acting on forms.
#[derive(Clone, Debug)]
pub struct SymCoeffs {
    k: usize,
    orders: Vec<i64>,
    left: Vec<Vec<i64>>,
    right: Vec<Vec<i64>>,
}

impl SymCoeffs {
    pub fn new(b: &Bimodule) -> Self {
        let flat = |m: &[Vec<i64>]| m.iter().flatten().copied().collect::<Vec<_>>();
        Self {
            k: b.group().rank(),
            orders: b.group().orders().iter().map(|&d| d as i64).collect(),
            left: (0..b.ring_size())
                .map(|r| flat(b.left(r).matrix()))
                .collect(),
            right: (0..b.ring_size())
                .map(|r| flat(b.right(r).matrix()))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn var(&self, v: usize) -> LinForm {
        if self.k == 0 {
            return LinForm::default();
        }
        let mut m = vec![0i64; self.k * self.k];
        for i in 0..self.k {
            m[i * self.k + i] = 1 % self.orders[i];
        }
        LinForm {
            terms: vec![(v, m)],
        }
    }

    fn reduce(&self, m: &mut [i64]) -> bool {
        let k = self.k;
        let mut nonzero = false;
        for i in 0..k {
            for x in &mut m[i * k..(i + 1) * k] {
                *x = x.rem_euclid(self.orders[i]);
                nonzero |= *x != 0;
            }
        }
        nonzero
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let k = self.k;
        let mut out = vec![0i64; k * k];
        for i in 0..k {
            for l in 0..k {
                let x = a[i * k + l];
                if x == 0 {
                    continue;
                }
                for j in 0..k {
                    out[i * k + j] += x * b[l * k + j];
                }
            }
        }
        out
    }

    fn map_terms(&self, f: &LinForm, g: impl Fn(&[i64]) -> Vec<i64>) -> LinForm {
        let terms = f
            .terms
            .iter()
            .filter_map(|(v, m)| {
                let mut n = g(m);
                self.reduce(&mut n).then_some((*v, n))
            })
            .collect();
        LinForm { terms }
    }

    /// `sum_v (M_v)_i . x_v` as a sparse row over the flattened variables.
    pub fn row(&self, f: &LinForm, i: usize) -> Vec<(usize, i64)> {
        let k = self.k;
        f.terms
            .iter()
            .flat_map(|(v, m)| (0..k).map(move |j| (v * k + j, m[i * k + j])))
            .filter(|&(_, a)| a != 0)
            .collect()
    }

    /// Nonempty rows `(row i, d_i)` over the output coordinates `i`.
    pub fn rows<'a>(&'a self, f: &'a LinForm) -> impl Iterator<Item = Row> + 'a {
        (0..self.k).filter_map(move |i| {
            let row = self.row(f, i);
            (!row.is_empty() && self.orders[i] > 1).then(|| (row, self.orders[i] as u64))
        })
    }

    /// Evaluates `f` at integer coordinates `x` (variable `v`, component `j`
    /// at `x[v k + j]`), giving a coefficient vector.
    pub fn apply(&self, f: &LinForm, x: &[i64]) -> Vec<i64> {
        let k = self.k;
        let mut out = vec![0i64; k];
        for (v, m) in &f.terms {
            for i in 0..k {
                for j in 0..k {
                    out[i] += m[i * k + j] * x[v * k + j];
                }
                out[i] = out[i].rem_euclid(self.orders[i]);
            }
        }
        out
    }
}

impl Coeffs for SymCoeffs {
    type V = LinForm;

    fn zero(&self) -> LinForm {
        LinForm::default()
    }

    fn add(&self, a: &LinForm, b: &LinForm) -> LinForm {
        let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let take_a = j == b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
            let take_b = i == a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
            if take_a {
                terms.push(a.terms[i].clone());
                i += 1;
            } else if take_b {
                terms.push(b.terms[j].clone());
                j += 1;
            } else {
                let mut m: Vec<i64> = a.terms[i]
                    .1
                    .iter()
                    .zip(&b.terms[j].1)
                    .map(|(x, y)| x + y)
                    .collect();
                if self.reduce(&mut m) {
                    terms.push((a.terms[i].0, m));
                }
                i += 1;
                j += 1;
            }
        }
        LinForm { terms }
    }

    fn neg(&self, a: &LinForm) -> LinForm {
        self.map_terms(a, |m| m.iter().map(|x| -x).collect())
    }

    fn lact(&self, r: usize, a: &LinForm) -> LinForm {
        self.map_terms(a, |m| self.mul(&self.left[r], m))
    }

    fn ract(&self, a: &LinForm, r: usize) -> LinForm {
        self.map_terms(a, |m| self.mul(&self.right[r], m))
    }
}

macro_rules! forward_sym {
    ($t:ty) => {
        impl Coeffs for $t {
            type V = LinForm;
            fn zero(&self) -> LinForm {
                LinForm::default()
            }
            fn add(&self, a: &LinForm, b: &LinForm) -> LinForm {
                self.coeffs.add(a, b)
            }
            fn neg(&self, a: &LinForm) -> LinForm {
                self.coeffs.neg(a)
            }
            fn lact(&self, r: usize, a: &LinForm) -> LinForm {
                self.coeffs.lact(r, a)
            }
            fn ract(&self, a: &LinForm, r: usize) -> LinForm {
                self.coeffs.ract(a, r)
            }
        }
    };
}

/// A normalized 3-cochain whose free positions are variables.
pub struct Sym3<'a> {
    pub coeffs: &'a SymCoeffs,
    pub layout: &'a Layout,
}

impl Sym3<'_> {
    fn at(&self, c: Component, flat: usize) -> LinForm {
        match self.layout.slot(c, flat) {
            Slot::Free(v) => self.coeffs.var(v),
            Slot::Forced(_) => LinForm::default(),
        }
    }
}

forward_sym!(Sym3<'_>);

impl ThreeCochain for Sym3<'_> {
    fn dot(&self, r: usize, s: usize, t: usize) -> LinForm {
        self.at(Component::Dot, idx3(self.layout.n, r, s, t))
    }
    fn dotplus(&self, r: usize, s: usize, t: usize) -> LinForm {
        self.at(Component::DotPlus, idx3(self.layout.n, r, s, t))
    }
    fn plusdot(&self, r: usize, s: usize, t: usize) -> LinForm {
        self.at(Component::PlusDot, idx3(self.layout.n, r, s, t))
    }
    fn plus(&self, m: [usize; 4]) -> LinForm {
        self.at(Component::Plus, idx4(self.layout.n, m))
    }
}

/// A 2-cochain with every position a variable: `gdot(r,s)` is `r n + s`,
/// `gplus(r,s)` is `n^2 + r n + s`.
pub struct Sym2<'a> {
    pub coeffs: &'a SymCoeffs,
    pub n: usize,
}

forward_sym!(Sym2<'_>);

impl TwoCochain for Sym2<'_> {
    fn gdot(&self, r: usize, s: usize) -> LinForm {
        self.coeffs.var(r * self.n + s)
    }
    fn gplus(&self, r: usize, s: usize) -> LinForm {
        self.coeffs.var(self.n * self.n + r * self.n + s)
    }
}

/// Deduplicated rows of the cocycle equations in the free coordinates of `layout`.
pub fn cocycle_rows(
    ring: &FiniteRing,
    coeffs: &SymCoeffs,
    layout: &Layout,
    conv: Convention,
) -> Vec<Row> {
    let src = Sym3 { coeffs, layout };
    let mut seen: HashSet<Row> = HashSet::new();
    let mut out = Vec::new();
    for eq in EquationId::ALL {
        for_each_tuple(ring.size(), eq.arity(), |args| {
            let f = evaluate(eq, &src, ring, conv, args);
            for row in coeffs.rows(&f) {
                if seen.insert(row.clone()) {
                    out.push(row);
                }
            }
        });
    }
    out
}

/// The coboundary as a form in the `2 n^2` variables of [`Sym2`], one per
/// position of `C^3`, indexed by component and flat index.
pub fn coboundary_forms(
    ring: &FiniteRing,
    coeffs: &SymCoeffs,
    conv: Convention,
) -> [Vec<LinForm>; 4] {
    let n = ring.size();
    let src = Sym2 { coeffs, n };
    Component::ALL.map(|c| {
        (0..n.pow(c.arity() as u32))
            .map(|i| coboundary_at(&src, ring, conv, c, &unidx(n, c.arity(), i)))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAbelianGroup;

    #[test]
    fn forms_follow_actions() {
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(4), &[0, 1, 2, 3]).unwrap();
        let c = SymCoeffs::new(&b);
        let x = c.var(0);
        let y = c.var(3);
        let f = c.add(&c.lact(2, &x), &c.ract(&y, 3));
        assert_eq!(f.terms(), &[(0, vec![2]), (3, vec![3])]);
        assert!(c.add(&f, &c.neg(&f)).is_zero());
        assert!(c.lact(2, &c.lact(2, &x)).is_zero());
        assert_eq!(c.apply(&f, &[1, 0, 0, 1]), vec![1]);
        assert_eq!(
            c.rows(&f).collect::<Vec<_>>(),
            vec![(vec![(0, 2), (3, 3)], 4)]
        );
    }

    #[test]
    fn z2_system_is_nontrivial() {
        let r = FiniteRing::zmod(2);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap();
        let c = SymCoeffs::new(&b);
        let layout = Layout::new(2, r.zero());
        let rows = cocycle_rows(&r, &c, &layout, Convention::Coherent);
        assert!(!rows.is_empty());
        assert!(rows
            .iter()
            .all(|(row, d)| *d == 2 && row.iter().all(|&(j, _)| j < layout.free.len())));
    }
}
