//! Finite abelian groups in product-of-cyclic form and integer-matrix
//! homomorphisms between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group whose operations are tabulated for table-presented models.
pub const MAX_TABULATED_ORDER: u64 = 4096;

/// `Z/d_1 x ... x Z/d_k`. Elements are coordinate vectors with the i-th
/// coordinate reduced modulo `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(pos) = orders.iter().position(|&d| d == 0) {
            return Err(Error::Structural(format!(
                "cyclic order at position {pos} is 0; orders must be >= 1"
            )));
        }
        let g = Self { orders };
        g.order_checked()
            .ok_or_else(|| Error::Structural("group order overflows u64".into()))?;
        Ok(g)
    }

    pub fn cyclic(d: u64) -> Self {
        Self::new(vec![d]).expect("cyclic order must be positive")
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    fn order_checked(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    pub fn order(&self) -> u64 {
        self.order_checked().expect("validated at construction")
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (v, &d) in x.iter_mut().zip(&self.orders) {
            *v = v.rem_euclid(d as i64);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), &d)| (a + b).rem_euclid(d as i64))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &d)| (-a).rem_euclid(d as i64))
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank()
            && x.iter()
                .zip(&self.orders)
                .all(|(&v, &d)| v >= 0 && (v as u64) < d)
    }

    /// Mixed-radix index of a reduced element (first coordinate most significant).
    pub fn index_of(&self, x: &[i64]) -> u32 {
        let mut idx: u64 = 0;
        for (&v, &d) in x.iter().zip(&self.orders) {
            idx = idx * d + v.rem_euclid(d as i64) as u64;
        }
        idx as u32
    }

    pub fn element(&self, mut idx: u32) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (slot, &d) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx as u64 % d) as i64;
            idx = (idx as u64 / d) as u32;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order() as u32).map(|i| self.element(i))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A homomorphism between finite abelian groups given by an integer matrix
/// acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl GroupHomomorphism {
    /// Builds the map and checks that `matrix[i][j] * d_source[j] = 0 mod d_target[i]`.
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::Structural(format!(
                "homomorphism matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            let dt = target.orders()[i] as i128;
            for (j, &a) in row.iter().enumerate() {
                let ds = source.orders()[j] as i128;
                if (a as i128 * ds).rem_euclid(dt) != 0 {
                    return Err(Error::Structural(format!(
                        "matrix entry ({i},{j}) = {a} is not well defined: {a}*{ds} != 0 mod {dt}"
                    )));
                }
            }
        }
        let mut matrix = matrix;
        for (row, &d) in matrix.iter_mut().zip(target.orders()) {
            for a in row.iter_mut() {
                *a = a.rem_euclid(d as i64);
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        let k = g.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(g.clone(), g.clone(), matrix).expect("identity is well defined")
    }

    pub fn zero(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        Self::new(source.clone(), target.clone(), matrix).expect("zero map is well defined")
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(self.target.orders())
            .map(|(row, &d)| {
                let s: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GroupHomomorphism) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::Structural(
                "composition of non-composable maps".into(),
            ));
        }
        let rows = self.target.rank();
        let cols = other.source.rank();
        let mut m = vec![vec![0i64; cols]; rows];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let s: i128 = (0..self.source.rank())
                    .map(|l| self.matrix[i][l] as i128 * other.matrix[l][j] as i128)
                    .sum();
                *entry = s.rem_euclid(self.target.orders()[i] as i128) as i64;
            }
        }
        Self::new(other.source.clone(), self.target.clone(), m)
    }

    /// Builds the matrix of a map from its values on the standard generators.
    pub fn from_generator_images(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        images: &[Vec<i64>],
    ) -> Result<Self> {
        let matrix = (0..target.rank())
            .map(|i| images.iter().map(|img| img[i]).collect())
            .collect();
        Self::new(source, target, matrix)
    }
}

/// Operation tables of a small group, with elements encoded as mixed-radix indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTables {
    group: FiniteAbelianGroup,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl GroupTables {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self> {
        let order = group.order();
        if order > MAX_TABULATED_ORDER {
            return Err(Error::Capacity {
                what: "tabulated group order".into(),
                bound: MAX_TABULATED_ORDER,
            });
        }
        let size = order as usize;
        let elems: Vec<Vec<i64>> = group.elements().collect();
        let mut add = vec![0; size * size];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                add[i * size + j] = group.index_of(&group.add(x, y));
            }
        }
        let neg = elems
            .iter()
            .map(|x| group.index_of(&group.neg(x)))
            .collect();
        Ok(Self {
            group: group.clone(),
            size,
            add,
            neg,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn sum<I: IntoIterator<Item = u32>>(&self, items: I) -> u32 {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `n * a` for an integer `n`.
    pub fn times(&self, n: i64, a: u32) -> u32 {
        let x = self.group.element(a);
        let y: Vec<i64> = x.iter().map(|&v| v * n).collect();
        self.group.index_of(&y)
    }

    pub fn tabulate(&self, f: &GroupHomomorphism) -> Vec<u32> {
        (0..self.size as u32)
            .map(|i| self.group.index_of(&f.apply(&self.group.element(i))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip_and_order() {
        let g = FiniteAbelianGroup::new(vec![2, 3, 4]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.exponent(), 12);
        for i in 0..24 {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
    }

    #[test]
    fn group_axioms_by_table_scan() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let t = GroupTables::new(&g).unwrap();
        let n = t.size() as u32;
        for a in 0..n {
            assert_eq!(t.add(a, 0), a);
            assert_eq!(t.add(a, t.neg(a)), 0);
            for b in 0..n {
                assert_eq!(t.add(a, b), t.add(b, a));
                for c in 0..n {
                    assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(FiniteAbelianGroup::new(vec![2, 0]).is_err());
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let z4 = FiniteAbelianGroup::cyclic(4);
        // Z/2 -> Z/4, 1 |-> 1 is not well defined; 1 |-> 2 is.
        assert!(GroupHomomorphism::new(z2.clone(), z4.clone(), vec![vec![1]]).is_err());
        assert!(GroupHomomorphism::new(z2, z4, vec![vec![2]]).is_ok());
    }

    #[test]
    fn homomorphism_is_additive() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let h = FiniteAbelianGroup::new(vec![4]).unwrap();
        let f = GroupHomomorphism::new(g.clone(), h.clone(), vec![vec![2, 3]]).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(f.apply(&g.add(&x, &y)), h.add(&f.apply(&x), &f.apply(&y)));
            }
        }
    }
}
