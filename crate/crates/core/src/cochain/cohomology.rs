//! `H^3(R; B)` of normalized cochains, by lattice computations or by brute
//! enumeration, and the search for a 2-cochain connecting two cocycles.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::algebra::bimodule::{Bimodule, BimoduleTables};
use crate::algebra::group::gcd;
use crate::algebra::lattice::ModLattice;
use crate::algebra::linear::{common_modulus, kernel_lattice, solve_sparse, subquotient_lattices};
use crate::algebra::ring::FiniteRing;
use crate::error::{Error, Result};

use super::equations::{coboundary, equation_defects, is_cocycle, Convention};
use super::symbolic::{coboundary_forms, cocycle_rows, LinForm, Row, SymCoeffs};
use super::{check_normalized, Cochain2, Cochain3, Component, Component2, Layout};

/// Largest number of cochains the enumeration method will visit.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Snf,
    Enumeration,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Snf => "snf",
            Self::Enumeration => "enumeration",
            Self::Both => "both",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::Snf, Self::Enumeration, Self::Both]
            .into_iter()
            .find(|m| m.name() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub z3: Vec<u64>,
    pub b3: Vec<u64>,
    pub h3: Vec<u64>,
    pub z3_order: u128,
    pub b3_order: u128,
    pub h3_order: u128,
    /// One cocycle per invariant factor of `h3`; empty for pure enumeration.
    pub representatives: Vec<Cochain3>,
    pub method: Method,
    /// Whether coboundaries of normalized 2-cochains already give all of `B^3`.
    /// Only computed by the lattice method.
    pub normalized_gamma_agrees: Option<bool>,
}

fn order_of(factors: &[u64]) -> Result<u128> {
    factors
        .iter()
        .try_fold(1u128, |a, &d| a.checked_mul(d as u128))
        .ok_or(Error::Overflow("group order"))
}

/// Coordinates of normalized cochains: free position `p`, component `j` at `p k + j`.
pub struct CocycleSpace {
    ring: FiniteRing,
    bimod: Bimodule,
    tables: BimoduleTables,
    coeffs: SymCoeffs,
    layout: Layout,
    modulus: i64,
    coord_orders: Vec<u64>,
    z3: ModLattice,
}

impl CocycleSpace {
    pub fn new(ring: &FiniteRing, bimod: &Bimodule) -> Result<Self> {
        if bimod.ring_size() != ring.size() {
            return Err(Error::Structural(
                "bimodule and ring have different sizes".into(),
            ));
        }
        let coeffs = SymCoeffs::new(bimod);
        let layout = Layout::new(ring.size(), ring.zero());
        let modulus = common_modulus(bimod.group().orders())?;
        let coord_orders: Vec<u64> = layout
            .free
            .iter()
            .flat_map(|_| bimod.group().orders().iter().copied())
            .collect();
        let rows = cocycle_rows(ring, &coeffs, &layout, Convention::Coherent);
        let z3 = kernel_lattice(coord_orders.len(), modulus, rows)?;
        Ok(Self {
            ring: ring.clone(),
            bimod: bimod.clone(),
            tables: BimoduleTables::new(bimod)?,
            coeffs,
            layout,
            modulus,
            coord_orders,
            z3,
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn tables(&self) -> &BimoduleTables {
        &self.tables
    }

    pub fn to_cochain(&self, x: &[i64]) -> Cochain3 {
        let k = self.coeffs.rank();
        let g = self.bimod.group();
        let mut c = Cochain3::zero(self.ring.size());
        for (p, &(comp, flat)) in self.layout.free.iter().enumerate() {
            let mut v = x[p * k..(p + 1) * k].to_vec();
            g.reduce(&mut v);
            c.table_mut(comp)[flat] = g.index_of(&v);
        }
        c
    }

    pub fn coordinates(&self, c: &Cochain3) -> Vec<i64> {
        let g = self.bimod.group();
        self.layout
            .free
            .iter()
            .flat_map(|&(comp, flat)| g.element(c.table(comp)[flat]))
            .collect()
    }

    /// A uniformly random normalized cochain.
    pub fn random_cochain(&self, rng: &mut impl Rng) -> Cochain3 {
        let x: Vec<i64> = self
            .coord_orders
            .iter()
            .map(|&d| rng.gen_range(0..d as i64))
            .collect();
        self.to_cochain(&x)
    }

    /// A uniformly random combination of the lattice basis of `Z^3`.
    pub fn random_cocycle(&self, rng: &mut impl Rng) -> Cochain3 {
        let mut x = vec![0i64; self.coord_orders.len()];
        for row in self.z3.rows() {
            let a = rng.gen_range(0..self.modulus);
            if a == 0 {
                continue;
            }
            for (xi, &ri) in x.iter_mut().zip(row) {
                *xi = (*xi + a * ri).rem_euclid(self.modulus);
            }
        }
        self.to_cochain(&x)
    }

    /// Every element of `Z^3`, or a capacity error past `limit` elements.
    pub fn all_cocycles(&self, limit: usize) -> Result<Vec<Cochain3>> {
        let reduce = |x: &mut Vec<i64>| {
            for (xi, &d) in x.iter_mut().zip(&self.coord_orders) {
                *xi = xi.rem_euclid(d as i64);
            }
        };
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for row in self.z3.rows() {
            let mut g = row.clone();
            reduce(&mut g);
            if g.iter().any(|&v| v != 0) {
                gens.push(g);
            }
        }
        let zero = vec![0i64; self.coord_orders.len()];
        let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
        let mut order = vec![zero];
        let mut i = 0;
        while i < order.len() {
            for g in &gens {
                let mut y: Vec<i64> = order[i].iter().zip(g).map(|(a, b)| a + b).collect();
                reduce(&mut y);
                if seen.insert(y.clone()) {
                    if order.len() == limit {
                        return Err(Error::Capacity {
                            what: "cocycle enumeration".into(),
                            bound: limit as u64,
                        });
                    }
                    order.push(y);
                }
            }
            i += 1;
        }
        Ok(order.iter().map(|x| self.to_cochain(x)).collect())
    }

    /// `D Z^M`, the zero cochain as a lattice.
    fn base(&self) -> Result<ModLattice> {
        ModLattice::diagonal(&self.coord_orders, self.modulus)
    }

    /// Image under the coboundary of the 2-cochains whose coboundary is
    /// normalized; with `normalized_only`, of the normalized 2-cochains only.
    fn boundaries(&self, forms: &[Vec<LinForm>; 4], normalized_only: bool) -> Result<ModLattice> {
        let n = self.ring.size();
        let k = self.coeffs.rank();
        let zero = self.ring.zero();
        let orders = self.bimod.group().orders();
        let mut rows: Vec<Row> = Vec::new();
        for &(comp, flat) in &self.layout.forced {
            rows.extend(self.coeffs.rows(&forms[comp as usize][flat]));
        }
        if normalized_only {
            for v in 0..2 * n * n {
                let (r, s) = ((v % (n * n)) / n, v % n);
                if r == zero || s == zero {
                    for (j, &d) in orders.iter().enumerate() {
                        rows.push((vec![(v * k + j, 1)], d));
                    }
                }
            }
        }
        let kernel = kernel_lattice(2 * n * n * k, self.modulus, rows)?;
        let mut b3 = self.base()?;
        let mut image = vec![0i64; self.coord_orders.len()];
        for x in kernel.rows() {
            for (p, &(comp, flat)) in self.layout.free.iter().enumerate() {
                let v = self.coeffs.apply(&forms[comp as usize][flat], x);
                image[p * k..(p + 1) * k].copy_from_slice(&v);
            }
            b3.insert(&image);
        }
        Ok(b3)
    }

    fn compute_snf(&self) -> Result<CohomologyResult> {
        let forms = coboundary_forms(&self.ring, &self.coeffs, Convention::Coherent);
        let b3 = self.boundaries(&forms, false)?;
        let b3_norm = self.boundaries(&forms, true)?;
        let agrees = b3.rows().iter().all(|r| b3_norm.contains(r));
        let base = self.base()?;
        let z = subquotient_lattices(&self.z3, &base)?;
        let b = subquotient_lattices(&b3, &base)?;
        let h = subquotient_lattices(&self.z3, &b3)?;
        Ok(CohomologyResult {
            z3_order: order_of(&z.factors)?,
            b3_order: order_of(&b.factors)?,
            h3_order: order_of(&h.factors)?,
            z3: z.factors,
            b3: b.factors,
            representatives: h.generators.iter().map(|g| self.to_cochain(g)).collect(),
            h3: h.factors,
            method: Method::Snf,
            normalized_gamma_agrees: Some(agrees),
        })
    }
}

/// Calls `f` with every vector in `0..base` of the given length.
fn for_each_word(base: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let mut w = vec![0u32; len];
    loop {
        f(&w);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            w[i] += 1;
            if w[i] < base {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn checked_count(base: usize, len: usize, what: &str) -> Result<u64> {
    (base as u64)
        .checked_pow(len as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::Capacity {
            what: what.into(),
            bound: ENUMERATION_LIMIT,
        })
}

/// Brute force: lists every normalized cocycle and every coboundary, then
/// reads the invariant factors of the quotient from the sizes of its
/// `m`-torsion subgroups.
fn compute_enumeration(ring: &FiniteRing, bimod: &Bimodule) -> Result<CohomologyResult> {
    let tables = BimoduleTables::new(bimod)?;
    let n = ring.size();
    let layout = Layout::new(n, ring.zero());
    let size = tables.size();
    let grp = &tables.group;
    checked_count(size, layout.free.len(), "normalized 3-cochains")?;
    checked_count(size, 2 * n * n, "2-cochains")?;

    let mut cocycles: Vec<Vec<u32>> = Vec::new();
    for_each_word(size as u32, layout.free.len(), |w| {
        let mut c = Cochain3::zero(n);
        for (&(comp, flat), &v) in layout.free.iter().zip(w) {
            c.table_mut(comp)[flat] = v;
        }
        if is_cocycle(&c, ring, &tables, Convention::Coherent) {
            cocycles.push(w.to_vec());
        }
    });

    let mut boundaries: HashSet<Vec<u32>> = HashSet::new();
    for_each_word(size as u32, 2 * n * n, |w| {
        let g = Cochain2 {
            n,
            gdot: w[..n * n].to_vec(),
            gplus: w[n * n..].to_vec(),
        };
        let c = coboundary(&g, ring, &tables);
        if check_normalized(&c, ring).is_empty() {
            boundaries.insert(
                layout
                    .free
                    .iter()
                    .map(|&(comp, flat)| c.table(comp)[flat])
                    .collect(),
            );
        }
    });

    let z_order = cocycles.len() as u128;
    let b_order = boundaries.len() as u128;
    if !z_order.is_multiple_of(b_order) || boundaries.iter().any(|b| !cocycles.contains(b)) {
        return Err(Error::ModelInconsistency(
            "coboundaries are not all cocycles".into(),
        ));
    }
    let times =
        |m: u64, w: &[u32]| -> Vec<u32> { w.iter().map(|&x| grp.times(m as i64, x)).collect() };
    let exponent = bimod.group().exponent();

    // |X[m]| for a subgroup X given as the predicate "m x lies in Y".
    let invariants =
        |elems: &[Vec<u32>], inside: &dyn Fn(&[u32]) -> bool, index: u128| -> Vec<u64> {
            let torsion =
                |m: u64| elems.iter().filter(|w| inside(&times(m, w))).count() as u128 / index;
            invariant_factors(exponent, torsion)
        };
    let zero_word = vec![0u32; layout.free.len()];
    let all_z: Vec<Vec<u32>> = cocycles.clone();
    let all_b: Vec<Vec<u32>> = boundaries.iter().cloned().collect();
    let is_zero = |w: &[u32]| *w == zero_word[..];
    let in_b = |w: &[u32]| boundaries.contains(w);
    let z3 = invariants(&all_z, &is_zero, 1);
    let b3 = invariants(&all_b, &is_zero, 1);
    let h3 = invariants(&all_z, &in_b, b_order);
    Ok(CohomologyResult {
        z3,
        b3,
        h3,
        z3_order: z_order,
        b3_order: b_order,
        h3_order: z_order / b_order,
        representatives: Vec::new(),
        method: Method::Enumeration,
        normalized_gamma_agrees: None,
    })
}

/// Invariant factors of a finite abelian group of exponent dividing
/// `exponent`, from `torsion(m) = |X[m]|`.
fn invariant_factors(exponent: u64, torsion: impl Fn(u64) -> u128) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut e = exponent;
    let mut p = 2;
    while e > 1 {
        if e.is_multiple_of(p) {
            primes.push(p);
            while e.is_multiple_of(p) {
                e /= p;
            }
        }
        p += 1;
    }
    // For each prime, the number of cyclic factors of order >= p^j.
    let mut parts: Vec<(u64, Vec<usize>)> = Vec::new();
    for &p in &primes {
        let mut counts = Vec::new();
        let mut prev = 0u32;
        let mut q = p;
        while exponent.is_multiple_of(q) {
            let size = torsion(q);
            let log = (size as f64).log(p as f64).round() as u32;
            counts.push((log - prev) as usize);
            prev = log;
            q *= p;
        }
        parts.push((p, counts));
    }
    // Factor i (largest first) collects p^j for every j with more than i factors.
    let width = parts
        .iter()
        .flat_map(|(_, c)| c.first().copied())
        .max()
        .unwrap_or(0);
    let mut factors: Vec<u64> = (0..width)
        .map(|i| {
            parts
                .iter()
                .map(|(p, c)| p.pow(c.iter().filter(|&&x| x > i).count() as u32))
                .product()
        })
        .collect();
    factors.reverse();
    debug_assert!(factors
        .windows(2)
        .all(|w| w[1] % w[0] == 0 && gcd(w[0], w[1]) == w[0]));
    factors
}

pub fn compute_h3(ring: &FiniteRing, bimod: &Bimodule, method: Method) -> Result<CohomologyResult> {
    match method {
        Method::Snf => CocycleSpace::new(ring, bimod)?.compute_snf(),
        Method::Enumeration => compute_enumeration(ring, bimod),
        Method::Both => {
            let a = CocycleSpace::new(ring, bimod)?.compute_snf()?;
            let b = compute_enumeration(ring, bimod)?;
            if (&a.z3, &a.b3, &a.h3) != (&b.z3, &b.b3, &b.h3) {
                return Err(Error::ModelInconsistency(format!(
                    "lattice method gives Z3 {:?}, B3 {:?}, H3 {:?}; enumeration gives {:?}, {:?}, {:?}",
                    a.z3, a.b3, a.h3, b.z3, b.b3, b.h3
                )));
            }
            Ok(CohomologyResult {
                method: Method::Both,
                ..a
            })
        }
    }
}

/// A 2-cochain `gamma` with `coboundary(gamma) = c2 - c1`, over all (not
/// necessarily normalized) cochains, or `None` when the classes differ.
pub fn cohomologous(
    c1: &Cochain3,
    c2: &Cochain3,
    ring: &FiniteRing,
    bimod: &Bimodule,
) -> Result<Option<Cochain2>> {
    let tables = BimoduleTables::new(bimod)?;
    for (name, c) in [("first", c1), ("second", c2)] {
        if c.ring_size() != ring.size() {
            return Err(Error::Structural(format!(
                "{name} cochain has the wrong ring size"
            )));
        }
        if let Some(d) = equation_defects(c, ring, &tables, Convention::Coherent).first() {
            return Err(Error::Precondition(format!(
                "{name} cochain is not a cocycle: {} fails at {:?}",
                d.equation, d.args
            )));
        }
    }
    let n = ring.size();
    let g = bimod.group();
    let k = g.rank();
    let coeffs = SymCoeffs::new(bimod);
    let forms = coboundary_forms(ring, &coeffs, Convention::Coherent);
    let diff = c2.sub(c1, &tables.group);
    let mut rows = Vec::new();
    for comp in Component::ALL {
        for (flat, f) in forms[comp as usize].iter().enumerate() {
            let target = g.element(diff.table(comp)[flat]);
            for (i, &d) in g.orders().iter().enumerate() {
                rows.push((coeffs.row(f, i), d, target[i]));
            }
        }
    }
    let src_orders: Vec<u64> = (0..2 * n * n)
        .flat_map(|_| g.orders().iter().copied())
        .collect();
    let modulus = common_modulus(g.orders())?;
    let Some(x) = solve_sparse(&src_orders, modulus, rows)? else {
        return Ok(None);
    };
    let mut gamma = Cochain2::zero(n);
    for v in 0..2 * n * n {
        let comp = if v < n * n {
            Component2::GDot
        } else {
            Component2::GPlus
        };
        gamma.table_mut(comp)[v % (n * n)] = g.index_of(&x[v * k..(v + 1) * k]);
    }
    if coboundary(&gamma, ring, &tables) != diff {
        return Err(Error::ModelInconsistency(
            "connecting 2-cochain does not reproduce the difference".into(),
        ));
    }
    Ok(Some(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAbelianGroup;

    fn z2() -> (FiniteRing, Bimodule) {
        (
            FiniteRing::zmod(2),
            Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap(),
        )
    }

    #[test]
    fn all_cocycles_matches_group_order() {
        let r = FiniteRing::zmod(3);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(3), &[0, 1, 2]).unwrap();
        let space = CocycleSpace::new(&r, &b).unwrap();
        let res = space.compute_snf().unwrap();
        let all = space.all_cocycles(1000).unwrap();
        assert_eq!(all.len() as u128, res.z3_order);
        assert!(all
            .iter()
            .all(|c| is_cocycle(c, &r, space.tables(), Convention::Coherent)));
        assert!(matches!(
            space.all_cocycles(10),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn invariant_factors_from_torsion() {
        // Z/2 x Z/4 x Z/3: |X[2]| = 4, |X[4]| = 8, |X[3]| = 3.
        let t = |m: u64| match m {
            2 => 4,
            4 => 8,
            3 => 3,
            _ => unreachable!(),
        };
        assert_eq!(invariant_factors(12, t), vec![2, 12]);
        assert_eq!(invariant_factors(1, |_| 1), Vec::<u64>::new());
    }

    #[test]
    fn z2_methods_agree() {
        let (r, b) = z2();
        let res = compute_h3(&r, &b, Method::Both).unwrap();
        assert_eq!(res.z3_order, res.b3_order * res.h3_order);
        assert_eq!(res.normalized_gamma_agrees, Some(true));
        assert_eq!(res.representatives.len(), res.h3.len());
    }

    #[test]
    fn cohomologous_finds_gamma() {
        let (r, b) = z2();
        let tables = BimoduleTables::new(&b).unwrap();
        let mut g = Cochain2::zero(2);
        g.gdot = vec![1, 0, 1, 1];
        g.gplus = vec![0, 1, 1, 0];
        let c = coboundary(&g, &r, &tables);
        let found = cohomologous(&Cochain3::zero(2), &c, &r, &b)
            .unwrap()
            .unwrap();
        assert_eq!(coboundary(&found, &r, &tables), c);
    }

    #[test]
    fn enumeration_refuses_large_inputs() {
        let r = FiniteRing::zmod(4);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(4), &[0, 1, 2, 3]).unwrap();
        assert!(matches!(
            compute_h3(&r, &b, Method::Enumeration),
            Err(Error::Capacity { .. })
        ));
    }
}
