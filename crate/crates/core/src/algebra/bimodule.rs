//! Finite bimodules over table-presented rings.

use crate::algebra::group::{FiniteAbelianGroup, GroupHomomorphism, GroupTables};
use crate::algebra::ring::FiniteRing;
use crate::error::{Error, Result, Violation};

/// An abelian group with a left and right action of a finite ring, one
/// endomorphism per ring element on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    group: FiniteAbelianGroup,
    left: Vec<GroupHomomorphism>,
    right: Vec<GroupHomomorphism>,
}

impl Bimodule {
    /// Matrices are indexed by ring element. Ill-defined matrices are a
    /// structural error.
    pub fn new(
        group: FiniteAbelianGroup,
        left: Vec<Vec<Vec<i64>>>,
        right: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::Structural(
                "left and right actions cover different numbers of ring elements".into(),
            ));
        }
        let mk = |side: &str, ms: Vec<Vec<Vec<i64>>>| -> Result<Vec<GroupHomomorphism>> {
            ms.into_iter()
                .enumerate()
                .map(|(i, m)| {
                    GroupHomomorphism::new(group.clone(), group.clone(), m).map_err(|e| {
                        Error::Structural(format!("{side} action of element {i}: {e}"))
                    })
                })
                .collect()
        };
        let left = mk("left", left)?;
        let right = mk("right", right)?;
        Ok(Self { group, left, right })
    }

    /// Both actions multiply every coordinate by `scalars[r]`.
    pub fn scalar(group: FiniteAbelianGroup, scalars: &[i64]) -> Result<Self> {
        let k = group.rank();
        let m = |s: i64| -> Vec<Vec<i64>> {
            (0..k)
                .map(|i| (0..k).map(|j| if i == j { s } else { 0 }).collect())
                .collect()
        };
        let ms: Vec<_> = scalars.iter().map(|&s| m(s)).collect();
        Self::new(group, ms.clone(), ms)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ring_size(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, r: usize) -> &GroupHomomorphism {
        &self.left[r]
    }

    pub fn right(&self, r: usize) -> &GroupHomomorphism {
        &self.right[r]
    }

    pub fn act_left(&self, r: usize, b: &[i64]) -> Vec<i64> {
        self.left[r].apply(b)
    }

    pub fn act_right(&self, b: &[i64], r: usize) -> Vec<i64> {
        self.right[r].apply(b)
    }

    /// Reindexes the actions after the ring was permuted by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.ring_size();
        let mut left = self.left.clone();
        let mut right = self.right.clone();
        for i in 0..n {
            left[perm[i]] = self.left[i].clone();
            right[perm[i]] = self.right[i].clone();
        }
        Self {
            group: self.group.clone(),
            left,
            right,
        }
    }
}

/// Exhaustive check of the bimodule axioms. Each action is a homomorphism,
/// so comparing images of the standard generators is a complete test.
pub fn validate_bimodule(r: &FiniteRing, b: &Bimodule) -> Result<Vec<Violation>> {
    let n = r.size();
    if b.ring_size() != n {
        return Err(Error::Structural(format!(
            "bimodule has actions for {} ring elements, ring has {n}",
            b.ring_size()
        )));
    }
    let g = &b.group;
    let gens: Vec<Vec<i64>> = (0..g.rank())
        .map(|j| (0..g.rank()).map(|i| i64::from(i == j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut check = |rule: &str,
                     ring_args: &[usize],
                     lhs: &dyn Fn(&[i64]) -> Vec<i64>,
                     rhs: &dyn Fn(&[i64]) -> Vec<i64>| {
        for (j, e) in gens.iter().enumerate() {
            let (x, y) = (lhs(e), rhs(e));
            if x != y {
                let mut w: Vec<String> =
                    ring_args.iter().map(|&a| r.label(a).to_string()).collect();
                w.push(format!("e{j}"));
                out.push(Violation {
                    rule: rule.into(),
                    witness: w,
                    detail: format!("{x:?} != {y:?}"),
                });
                break;
            }
        }
    };
    let zero = g.zero();
    let (z, one) = (r.zero(), r.one());
    check("left unit", &[one], &|e| b.act_left(one, e), &|e| {
        e.to_vec()
    });
    check("right unit", &[one], &|e| b.act_right(e, one), &|e| {
        e.to_vec()
    });
    check("left zero", &[z], &|e| b.act_left(z, e), &|_| zero.clone());
    check("right zero", &[z], &|e| b.act_right(e, z), &|_| {
        zero.clone()
    });
    for x in 0..n {
        for y in 0..n {
            let (s, p) = (r.add(x, y), r.mul(x, y));
            check(
                "left additivity in ring argument",
                &[x, y],
                &|e| b.act_left(s, e),
                &|e| g.add(&b.act_left(x, e), &b.act_left(y, e)),
            );
            check(
                "right additivity in ring argument",
                &[x, y],
                &|e| b.act_right(e, s),
                &|e| g.add(&b.act_right(e, x), &b.act_right(e, y)),
            );
            check(
                "left multiplicativity",
                &[x, y],
                &|e| b.act_left(p, e),
                &|e| b.act_left(x, &b.act_left(y, e)),
            );
            check(
                "right multiplicativity",
                &[x, y],
                &|e| b.act_right(e, p),
                &|e| b.act_right(&b.act_right(e, x), y),
            );
            check(
                "actions commute",
                &[x, y],
                &|e| b.act_right(&b.act_left(x, e), y),
                &|e| b.act_left(x, &b.act_right(e, y)),
            );
        }
    }
    Ok(out)
}

/// Index tables for fast evaluation: elements of B are mixed-radix indices.
#[derive(Clone, Debug)]
pub struct BimoduleTables {
    pub group: GroupTables,
    n: usize,
    size: usize,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl BimoduleTables {
    pub fn new(b: &Bimodule) -> Result<Self> {
        let group = GroupTables::new(&b.group)?;
        let n = b.ring_size();
        let size = group.size();
        let mut left = Vec::with_capacity(n * size);
        let mut right = Vec::with_capacity(n * size);
        for r in 0..n {
            left.extend(group.tabulate(&b.left[r]));
        }
        for r in 0..n {
            right.extend(group.tabulate(&b.right[r]));
        }
        Ok(Self {
            group,
            n,
            size,
            left,
            right,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ring_size(&self) -> usize {
        self.n
    }

    /// `r b`.
    #[inline]
    pub fn lact(&self, r: usize, b: u32) -> u32 {
        self.left[r * self.size + b as usize]
    }

    /// `b r`.
    #[inline]
    pub fn ract(&self, b: u32, r: usize) -> u32 {
        self.right[r * self.size + b as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_z2_is_valid() {
        let r = FiniteRing::zmod(2);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1]).unwrap();
        assert!(validate_bimodule(&r, &b).unwrap().is_empty());
    }

    #[test]
    fn z4_with_one_acting_as_three_fails_unit() {
        let r = FiniteRing::zmod(2);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(4), &[0, 3]).unwrap();
        let rep = validate_bimodule(&r, &b).unwrap();
        assert!(rep.iter().any(|v| v.rule == "left unit"));
    }

    #[test]
    fn z4_acting_on_z2_by_reduction() {
        let r = FiniteRing::zmod(4);
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(2), &[0, 1, 2, 3]).unwrap();
        assert!(validate_bimodule(&r, &b).unwrap().is_empty());
    }

    #[test]
    fn ill_defined_action_is_structural() {
        let err = Bimodule::scalar(FiniteAbelianGroup::new(vec![2, 4]).unwrap(), &[0, 1])
            .map(|_| ())
            .and_then(|_| {
                Bimodule::new(
                    FiniteAbelianGroup::new(vec![2, 4]).unwrap(),
                    vec![vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![1, 1]]],
                    vec![vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]],
                )
                .map(|_| ())
            })
            .unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn tables_match_matrices() {
        let b = Bimodule::scalar(FiniteAbelianGroup::cyclic(4), &[0, 1, 2, 3]).unwrap();
        let t = BimoduleTables::new(&b).unwrap();
        for r in 0..4 {
            for x in 0..4u32 {
                assert_eq!(t.lact(r, x), (r as u32 * x) % 4);
                assert_eq!(t.ract(x, r), (r as u32 * x) % 4);
            }
        }
    }
}
