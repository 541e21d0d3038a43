//! Kernels, preimages and subquotients of finite abelian groups.
//!
//! Everything happens inside `(Z/E)^m` for a common exponent `E`, so only
//! kernels and cokernels are ever formed: a kernel is the dual of a row
//! lattice, a cokernel is read off a Smith form over `Z/E`, and a subquotient
//! `S/T` is the cokernel of `Z^r -> S/T` after computing the preimage of `T`
//! as a kernel.

use crate::algebra::group::{lcm, FiniteAbelianGroup, GroupHomomorphism};
use crate::algebra::lattice::ModLattice;
use crate::algebra::snf::{modular_smith, xgcd};
use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ...` (all `> 1`) with one generator each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub factors: Vec<u64>,
    pub generators: Vec<Vec<i64>>,
}

impl Subquotient {
    /// Group order, if it fits in `u128`.
    pub fn order(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// Every coset representative `sum c_i g_i` with `0 <= c_i < d_i`, reduced
    /// modulo `orders`. Refuses to list more than `limit` elements.
    pub fn coset_representatives(&self, orders: &[u64], limit: u128) -> Result<Vec<Vec<i64>>> {
        let n = self
            .order()
            .filter(|&n| n <= limit)
            .ok_or(Error::Capacity {
                what: "number of coset representatives".into(),
                bound: limit as u64,
            })?;
        let mut out = Vec::with_capacity(n as usize);
        let mut coeff = vec![0u64; self.factors.len()];
        loop {
            let mut v = vec![0i64; orders.len()];
            for (c, g) in coeff.iter().zip(&self.generators) {
                for (x, (&y, &d)) in v.iter_mut().zip(g.iter().zip(orders)) {
                    *x = (*x + *c as i64 * y).rem_euclid(d as i64);
                }
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == coeff.len() {
                    return Ok(out);
                }
                coeff[i] += 1;
                if coeff[i] < self.factors[i] {
                    break;
                }
                coeff[i] = 0;
                i += 1;
            }
        }
    }
}

pub(crate) fn common_modulus<'a>(orders: impl IntoIterator<Item = &'a u64>) -> Result<i64> {
    let e = orders.into_iter().fold(1u64, |a, &d| lcm(a, d));
    if e > crate::algebra::lattice::MAX_MODULUS as u64 {
        return Err(Error::Capacity {
            what: "group exponent".into(),
            bound: crate::algebra::lattice::MAX_MODULUS as u64,
        });
    }
    Ok(e as i64)
}

/// Lattice of `x in Z^m` with `row . x = 0 mod d` for every `(row, d)`.
///
/// Rows are sparse `(column, coefficient)` lists; `modulus` must be a multiple
/// of every `d` and of every source order.
pub fn kernel_lattice<I>(dim: usize, modulus: i64, rows: I) -> Result<ModLattice>
where
    I: IntoIterator<Item = (Vec<(usize, i64)>, u64)>,
{
    let mut w = ModLattice::multiples(dim, modulus)?;
    for (row, d) in rows {
        if d == 1 {
            continue;
        }
        let scale = modulus / d as i64;
        let scaled: Vec<(usize, i64)> = row.into_iter().map(|(j, a)| (j, a * scale)).collect();
        w.insert_sparse(&scaled);
    }
    w.dual()
}

/// `S/T` for lattices `E Z^m <= T <= S` sharing the same modulus.
pub fn subquotient_lattices(s: &ModLattice, t: &ModLattice) -> Result<Subquotient> {
    let e = s.modulus();
    if t.modulus() != e || t.dim() != s.dim() {
        return Err(Error::Structural(
            "lattices live in different ambient spaces".into(),
        ));
    }
    let m = s.dim();
    for row in t.rows() {
        if !s.contains(row) {
            return Err(Error::Precondition(format!(
                "modulo subgroup is not contained in the subgroup; witness {row:?}"
            )));
        }
    }
    // Coordinates on Z^m / T.
    let ht: Vec<Vec<i128>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ft = modular_smith(ht, e as i128, true, false)?;
    let v = ft.v.expect("requested");
    let t_orders: Vec<i128> = ft.diag.iter().map(|&d| xgcd(d, e as i128).0).collect();

    // N = G V with G the basis rows of S; P = {c : c N_j = 0 mod t_j}.
    let g = s.rows();
    let mut cols: Vec<(Vec<(usize, i64)>, u64)> = Vec::new();
    for (j, &tj) in t_orders.iter().enumerate() {
        if tj == 1 {
            continue;
        }
        let mut col = Vec::new();
        for (i, gi) in g.iter().enumerate() {
            let mut acc: i128 = 0;
            for k in i..m {
                acc += gi[k] as i128 * v[k][j];
            }
            let x = acc.rem_euclid(e as i128) as i64;
            if x != 0 {
                col.push((i, x));
            }
        }
        cols.push((col, tj as u64));
    }
    let p = kernel_lattice(m, e, cols)?;

    let hp: Vec<Vec<i128>> = p
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let fp = modular_smith(hp, e as i128, false, true)?;
    let vinv = fp.v_inv.expect("requested");
    let mut pairs: Vec<(u64, Vec<i64>)> = Vec::new();
    for (i, &d) in fp.diag.iter().enumerate() {
        let ord = xgcd(d, e as i128).0 as u64;
        if ord == 1 {
            continue;
        }
        let mut elem = vec![0i64; m];
        for (k, gk) in g.iter().enumerate() {
            let c = vinv[i][k].rem_euclid(e as i128) as i64;
            if c == 0 {
                continue;
            }
            for (x, &y) in elem.iter_mut().zip(gk) {
                *x = (*x + c * y).rem_euclid(e);
            }
        }
        pairs.push((ord, elem));
    }
    pairs.sort_by_key(|(d, _)| *d);
    Ok(Subquotient {
        factors: pairs.iter().map(|(d, _)| *d).collect(),
        generators: pairs.into_iter().map(|(_, g)| g).collect(),
    })
}

fn group_lattice(
    ambient: &FiniteAbelianGroup,
    gens: &[Vec<i64>],
    modulus: i64,
) -> Result<ModLattice> {
    let mut l = ModLattice::diagonal(ambient.orders(), modulus)?;
    for g in gens {
        if g.len() != ambient.rank() {
            return Err(Error::Structural(format!(
                "generator {g:?} has {} coordinates, expected {}",
                g.len(),
                ambient.rank()
            )));
        }
        l.insert(g);
    }
    Ok(l)
}

/// Invariant factors and generators of `<sub> / <modulo>` inside `ambient`.
pub fn subquotient_invariants(
    sub_generators: &[Vec<i64>],
    ambient: &FiniteAbelianGroup,
    modulo_generators: &[Vec<i64>],
) -> Result<Subquotient> {
    let e = common_modulus(ambient.orders())?;
    let s = group_lattice(ambient, sub_generators, e)?;
    for g in modulo_generators {
        if g.len() == ambient.rank() && !s.contains(g) {
            let mut w = g.clone();
            ambient.reduce(&mut w);
            return Err(Error::Precondition(format!(
                "modulo generator {w:?} is not in the subgroup"
            )));
        }
    }
    let t = group_lattice(ambient, modulo_generators, e)?;
    let mut q = subquotient_lattices(&s, &t)?;
    for g in q.generators.iter_mut() {
        ambient.reduce(g);
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub solution: Vec<i64>,
    pub kernel_generators: Vec<Vec<i64>>,
}

/// One `x` with `f(x) = b` plus generators of `ker f`, or `None` when `b` is
/// not in the image.
pub fn solve_linear(f: &GroupHomomorphism, b: &[i64]) -> Result<Option<LinearSolution>> {
    let src = f.source();
    let tgt = f.target();
    if !tgt.contains(b) {
        let mut w = b.to_vec();
        if w.len() != tgt.rank() {
            return Err(Error::Precondition(
                "right-hand side has wrong length".into(),
            ));
        }
        tgt.reduce(&mut w);
        return solve_linear(f, &w);
    }
    let e = common_modulus(src.orders().iter().chain(tgt.orders()))?;
    let m = src.rank();
    // Coordinate 0 is an extra scalar t; rows encode f(x) - t b = 0.
    let rows = f
        .matrix()
        .iter()
        .zip(tgt.orders())
        .zip(b)
        .map(|((row, &d), &bi)| {
            let mut r: Vec<(usize, i64)> = vec![(0, -bi)];
            r.extend(
                row.iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(j, &a)| (j + 1, a)),
            );
            (r, d)
        });
    let mut k = kernel_lattice(m + 1, e, rows)?;
    k.canonicalize();
    let reduce = |v: &[i64]| -> Vec<i64> {
        let mut w = v.to_vec();
        src.reduce(&mut w);
        w
    };
    let kernel_generators: Vec<Vec<i64>> = k.rows()[1..]
        .iter()
        .map(|r| reduce(&r[1..]))
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let top = &k.rows()[0];
    if top[0] != 1 {
        return Ok(None);
    }
    let solution = reduce(&top[1..]);
    debug_assert_eq!(f.apply(&solution), b);
    Ok(Some(LinearSolution {
        solution,
        kernel_generators,
    }))
}

/// One `x` in `Z/o_1 x ... x Z/o_m` with `row . x = rhs mod d` for every
/// `(row, d, rhs)`, or `None`. `modulus` must be a multiple of every order.
pub fn solve_sparse<I>(src_orders: &[u64], modulus: i64, rows: I) -> Result<Option<Vec<i64>>>
where
    I: IntoIterator<Item = (Vec<(usize, i64)>, u64, i64)>,
{
    let m = src_orders.len();
    let rows = rows.into_iter().map(|(row, d, rhs)| {
        let mut r: Vec<(usize, i64)> = vec![(0, -rhs)];
        r.extend(row.into_iter().map(|(j, a)| (j + 1, a)));
        (r, d)
    });
    let mut k = kernel_lattice(m + 1, modulus, rows)?;
    k.canonicalize();
    let top = &k.rows()[0];
    if top[0] != 1 {
        return Ok(None);
    }
    Ok(Some(
        top[1..]
            .iter()
            .zip(src_orders)
            .map(|(&x, &d)| x.rem_euclid(d as i64))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(g: &FiniteAbelianGroup, gens: &[Vec<i64>]) -> std::collections::BTreeSet<Vec<i64>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(g.zero());
        loop {
            let cur: Vec<_> = set.iter().cloned().collect();
            let mut grew = false;
            for x in &cur {
                for y in gens {
                    grew |= set.insert(g.add(x, y));
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn zero_map() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let f = GroupHomomorphism::zero(&g, &g);
        let s = solve_linear(&f, &[0, 0]).unwrap().unwrap();
        assert_eq!(s.solution, vec![0, 0]);
        assert_eq!(span(&g, &s.kernel_generators).len(), 6);
        assert!(solve_linear(&f, &[1, 0]).unwrap().is_none());
    }

    #[test]
    fn times_two_on_z4() {
        let z4 = FiniteAbelianGroup::cyclic(4);
        let f = GroupHomomorphism::new(z4.clone(), z4.clone(), vec![vec![2]]).unwrap();
        let s = solve_linear(&f, &[2]).unwrap().unwrap();
        assert!(s.solution == vec![1] || s.solution == vec![3]);
        let k = span(&z4, &s.kernel_generators);
        assert_eq!(k.into_iter().collect::<Vec<_>>(), vec![vec![0], vec![2]]);
        assert!(solve_linear(&f, &[1]).unwrap().is_none());
    }

    #[test]
    fn subquotient_basic() {
        let z4 = FiniteAbelianGroup::cyclic(4);
        let q = subquotient_invariants(&[vec![1]], &z4, &[vec![2]]).unwrap();
        assert_eq!(q.factors, vec![2]);
        let q = subquotient_invariants(&[vec![2]], &z4, &[vec![2]]).unwrap();
        assert!(q.factors.is_empty());
        let err = subquotient_invariants(&[vec![2]], &z4, &[vec![1]]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn subquotient_generators_have_claimed_orders() {
        let g = FiniteAbelianGroup::new(vec![4, 6, 2]).unwrap();
        let sub = vec![vec![1, 2, 0], vec![0, 3, 1], vec![2, 0, 1]];
        let modulo = vec![vec![2, 0, 0]];
        let q = subquotient_invariants(&sub, &g, &modulo).unwrap();
        let s = span(&g, &sub);
        let t = span(&g, &modulo);
        assert_eq!(q.order().unwrap() as usize, s.len() / t.len());
        for (gen, &d) in q.generators.iter().zip(&q.factors) {
            assert!(s.contains(gen));
            let mut x = g.zero();
            for k in 1..=d {
                x = g.add(&x, gen);
                assert_eq!(
                    t.contains(&x),
                    k == d,
                    "generator {gen:?} of claimed order {d}"
                );
            }
        }
        let reps = q.coset_representatives(g.orders(), 1000).unwrap();
        let classes: std::collections::BTreeSet<_> = reps
            .iter()
            .map(|r| t.iter().map(|y| g.add(r, y)).min().unwrap())
            .collect();
        assert_eq!(classes.len(), reps.len());
    }
}
