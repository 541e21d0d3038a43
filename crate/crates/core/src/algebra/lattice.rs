//! Lattices `L` with `E Z^m <= L <= Z^m`, kept as upper-triangular row bases.
//!
//! Subgroups of a finite abelian group `Z/d_1 x ... x Z/d_m` correspond to such
//! lattices containing `diag(d) Z^m`, with `E` any common multiple of the `d_i`.
//! Every row `i` of the basis has a positive pivot `h_ii | E` at column `i`.
//! Entries right of a pivot may be reduced modulo `E`: the rows below row `i`
//! span `L` intersected with the vectors supported on columns `> i`, which
//! contains every `E e_j` there.

use crate::error::{Error, Result};

use super::snf::xgcd;

/// Upper bound on `E` keeping every intermediate product inside `i64`.
pub const MAX_MODULUS: i64 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModLattice {
    modulus: i64,
    rows: Vec<Vec<i64>>,
}

fn gcd_pos(a: i64, b: i64) -> (i64, i64, i64) {
    let (g, x, y) = xgcd(a as i128, b as i128);
    (g as i64, x as i64, y as i64)
}

impl ModLattice {
    /// `E Z^m`.
    pub fn multiples(dim: usize, modulus: i64) -> Result<Self> {
        if !(1..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::Capacity {
                what: "lattice modulus".into(),
                bound: MAX_MODULUS as u64,
            });
        }
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { modulus } else { 0 }).collect())
            .collect();
        Ok(Self { modulus, rows })
    }

    /// `diag(orders) Z^m`; every order must divide `modulus`.
    pub fn diagonal(orders: &[u64], modulus: i64) -> Result<Self> {
        let mut l = Self::multiples(orders.len(), modulus)?;
        for (i, &d) in orders.iter().enumerate() {
            if modulus % d as i64 != 0 {
                return Err(Error::Structural(format!(
                    "order {d} does not divide {modulus}"
                )));
            }
            l.rows[i][i] = d as i64;
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().enumerate().map(|(i, r)| r[i])
    }

    /// Adds a generator.
    pub fn insert(&mut self, v: &[i64]) {
        let e = self.modulus;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        self.insert_reduced(&mut v, 0);
    }

    /// Adds a generator given as `(column, value)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, i64)]) {
        let e = self.modulus;
        let mut v = vec![0i64; self.dim()];
        let mut first = usize::MAX;
        for &(j, x) in entries {
            v[j] = (v[j] + x).rem_euclid(e);
        }
        for &(j, _) in entries {
            if v[j] != 0 {
                first = first.min(j);
            }
        }
        if first != usize::MAX {
            self.insert_reduced(&mut v, first);
        }
    }

    fn insert_reduced(&mut self, v: &mut [i64], start: usize) {
        let e = self.modulus;
        let m = self.dim();
        for i in start..m {
            let b = v[i];
            if b == 0 {
                continue;
            }
            let h = &mut self.rows[i];
            let p = h[i];
            if b % p == 0 {
                let q = b / p;
                for j in i..m {
                    v[j] = (v[j] - q * h[j]).rem_euclid(e);
                }
            } else {
                let (g, x, y) = gcd_pos(p, b);
                let (c, d) = (-(b / g), p / g);
                for j in i..m {
                    let (hp, vq) = (h[j], v[j]);
                    h[j] = (x * hp + y * vq).rem_euclid(e);
                    v[j] = (c * hp + d * vq).rem_euclid(e);
                }
                // The pivot itself must stay the exact gcd, not its residue.
                h[i] = g;
            }
        }
    }

    /// Residue of `v` modulo `L`: zero iff `v` lies in `L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let e = self.modulus;
        let m = self.dim();
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        for i in 0..m {
            let p = self.rows[i][i];
            let q = v[i].div_euclid(p);
            if q != 0 {
                for (x, &r) in v[i..].iter_mut().zip(&self.rows[i][i..]) {
                    *x = (*x - q * r).rem_euclid(e);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Brings entries above each pivot into `[0, pivot)`.
    pub fn canonicalize(&mut self) {
        let e = self.modulus;
        let m = self.dim();
        for j in (0..m).rev() {
            let p = self.rows[j][j];
            for i in 0..j {
                let q = self.rows[i][j].div_euclid(p);
                if q != 0 {
                    let (top, bottom) = self.rows.split_at_mut(j);
                    let (ri, rj) = (&mut top[i], &bottom[0]);
                    for k in j..m {
                        ri[k] = (ri[k] - q * rj[k]).rem_euclid(e);
                    }
                }
            }
        }
    }

    /// `{x : h . x = 0 mod E for every row h}`.
    ///
    /// Column `k` of `E H^-1` is found by back substitution; entries are reduced
    /// modulo `E` as they are produced. The results stay inside the dual and,
    /// together with `E Z^m`, have pivots `E / h_kk` at row `k`, so they span it.
    pub fn dual(&self) -> Result<Self> {
        let e = self.modulus;
        let m = self.dim();
        let mut out = Self::multiples(m, e)?;
        let mut c = vec![0i64; m];
        for k in 0..m {
            c.iter_mut().for_each(|x| *x = 0);
            c[k] = e / self.rows[k][k];
            for i in (0..k).rev() {
                let s: i128 = (i + 1..=k)
                    .map(|j| self.rows[i][j] as i128 * c[j] as i128)
                    .sum();
                let p = self.rows[i][i] as i128;
                if s % p != 0 {
                    return Err(Error::ModelInconsistency(
                        "dual lattice back substitution is not integral".into(),
                    ));
                }
                c[i] = (-(s / p)).rem_euclid(e as i128) as i64;
            }
            out.insert(&c);
        }
        Ok(out)
    }

    /// `log |L / E Z^m|` expressed as the multiset of factors `E / h_ii`.
    pub fn index_over_multiples(&self) -> Vec<i64> {
        self.pivots()
            .map(|p| self.modulus / p)
            .filter(|&x| x != 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_members(
        dim: usize,
        e: i64,
        gens: &[Vec<i64>],
    ) -> std::collections::BTreeSet<Vec<i64>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; dim]);
        loop {
            let mut grew = false;
            let cur: Vec<_> = set.iter().cloned().collect();
            for x in &cur {
                for g in gens {
                    let y: Vec<i64> = x
                        .iter()
                        .zip(g)
                        .map(|(a, b)| (a + b).rem_euclid(e))
                        .collect();
                    grew |= set.insert(y);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn all_vectors(dim: usize, e: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v| (0..e).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    #[test]
    fn membership_matches_closure() {
        let e = 4;
        let gens = [vec![2, 1, 0], vec![0, 2, 2], vec![1, 3, 2]];
        for k in 0..=gens.len() {
            let mut l = ModLattice::multiples(3, e).unwrap();
            for g in &gens[..k] {
                l.insert(g);
            }
            let members = brute_members(3, e, &gens[..k]);
            for v in all_vectors(3, e) {
                assert_eq!(
                    l.contains(&v),
                    members.contains(&v),
                    "{v:?} with {k} generators"
                );
            }
            let size: i64 = l.pivots().map(|p| e / p).product();
            assert_eq!(size as usize, members.len());
        }
    }

    #[test]
    fn dual_is_annihilator() {
        let e = 6;
        let mut l = ModLattice::multiples(3, e).unwrap();
        l.insert(&[2, 3, 0]);
        l.insert(&[0, 4, 1]);
        let d = l.dual().unwrap();
        for x in all_vectors(3, e) {
            let ann = l
                .rows()
                .iter()
                .all(|h| h.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() % e == 0);
            assert_eq!(d.contains(&x), ann, "{x:?}");
        }
    }
}
