//! Small rings and bimodules used by the tests, the bundled data files and
//! the property commands.

use crate::algebra::bimodule::Bimodule;
use crate::algebra::group::FiniteAbelianGroup;
use crate::algebra::ring::FiniteRing;

type Mat = Vec<Vec<i64>>;

/// Builds a ring from an enumeration of its elements and the operations on them.
fn ring_from<T: PartialEq + Clone>(
    elements: &[(String, T)],
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    zero: &T,
    one: &T,
) -> FiniteRing {
    let index = |x: &T| {
        elements
            .iter()
            .position(|(_, e)| e == x)
            .expect("closed under the operations")
    };
    let table = |f: &dyn Fn(&T, &T) -> T| {
        elements
            .iter()
            .map(|(_, a)| elements.iter().map(|(_, b)| index(&f(a, b))).collect())
            .collect()
    };
    let add_t: Vec<Vec<usize>> = table(&add);
    let mul_t = table(&mul);
    let z = index(zero);
    let neg = (0..elements.len())
        .map(|a| add_t[a].iter().position(|&s| s == z).unwrap())
        .collect();
    let labels = elements.iter().map(|(l, _)| l.clone()).collect();
    FiniteRing::validated(labels, z, index(one), add_t, mul_t, neg)
        .expect("catalog ring satisfies the axioms")
}

/// `Z/2[x]/(x^2)`: elements `a + b x` as `(a, b)`.
pub fn dual_numbers() -> FiniteRing {
    let els: Vec<(String, (u8, u8))> = vec![
        ("0".into(), (0, 0)),
        ("1".into(), (1, 0)),
        ("x".into(), (0, 1)),
        ("1+x".into(), (1, 1)),
    ];
    ring_from(
        &els,
        |a, b| ((a.0 + b.0) % 2, (a.1 + b.1) % 2),
        |a, b| ((a.0 * b.0) % 2, (a.0 * b.1 + a.1 * b.0) % 2),
        &(0, 0),
        &(1, 0),
    )
}

/// `Z/2 x Z/2` with componentwise operations.
pub fn z2_squared() -> FiniteRing {
    let els: Vec<(String, (u8, u8))> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(a, b)| (format!("({a},{b})"), (a, b)))
        .collect();
    ring_from(
        &els,
        |a, b| ((a.0 + b.0) % 2, (a.1 + b.1) % 2),
        |a, b| (a.0 * b.0, a.1 * b.1),
        &(0, 0),
        &(1, 1),
    )
}

/// Upper triangular 2x2 matrices over `Z/2`, `[a b; 0 c]` as `(a, b, c)`.
pub fn upper_triangular() -> FiniteRing {
    let mut els = Vec::new();
    for a in 0..2u8 {
        for b in 0..2u8 {
            for c in 0..2u8 {
                els.push((format!("[{a} {b}; 0 {c}]"), (a, b, c)));
            }
        }
    }
    ring_from(
        &els,
        |x, y| ((x.0 + y.0) % 2, (x.1 + y.1) % 2, (x.2 + y.2) % 2),
        |x, y| (x.0 * y.0, (x.0 * y.1 + x.1 * y.2) % 2, x.2 * y.2),
        &(0, 0, 0),
        &(1, 0, 1),
    )
}

fn scalar(s: i64, k: usize) -> Mat {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { s } else { 0 }).collect())
        .collect()
}

fn bimod(orders: &[u64], left: Vec<Mat>, right: Vec<Mat>) -> Bimodule {
    Bimodule::new(
        FiniteAbelianGroup::new(orders.to_vec()).unwrap(),
        left,
        right,
    )
    .expect("catalog bimodule is well formed")
}

/// A coefficient group with both actions through a ring map to `Z/d`,
/// given as the scalar image of each element.
fn through(orders: &[u64], left: &[i64], right: &[i64]) -> Bimodule {
    let k = orders.len();
    bimod(
        orders,
        left.iter().map(|&s| scalar(s, k)).collect(),
        right.iter().map(|&s| scalar(s, k)).collect(),
    )
}

pub fn ring(name: &str) -> Option<FiniteRing> {
    Some(match name {
        "z2" => FiniteRing::zmod(2),
        "z3" => FiniteRing::zmod(3),
        "z4" => FiniteRing::zmod(4),
        "dual" => dual_numbers(),
        "z2xz2" => z2_squared(),
        "ut2" => upper_triangular(),
        _ => return None,
    })
}

pub const RING_NAMES: [&str; 6] = ["z2", "z3", "z4", "dual", "z2xz2", "ut2"];

/// Bimodules over the named ring, each with its own name.
pub fn bimodules(ring: &str) -> Vec<(&'static str, Bimodule)> {
    match ring {
        "z2" => vec![
            ("z2-std", through(&[2], &[0, 1], &[0, 1])),
            ("z2sq-std", through(&[2, 2], &[0, 1], &[0, 1])),
        ],
        "z3" => vec![("z3-std", through(&[3], &[0, 1, 2], &[0, 1, 2]))],
        "z4" => vec![
            ("z4-std", through(&[4], &[0, 1, 2, 3], &[0, 1, 2, 3])),
            ("z4-z2", through(&[2], &[0, 1, 0, 1], &[0, 1, 0, 1])),
            ("z4-z2sq", through(&[2, 2], &[0, 1, 0, 1], &[0, 1, 0, 1])),
        ],
        "dual" => {
            // Coordinates (a, b) of a + b x; multiplication by c + d x.
            let regular: Vec<Mat> = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .map(|&(c, d)| vec![vec![c, 0], vec![d, c]])
                .collect();
            vec![
                (
                    "dual-regular",
                    bimod(&[2, 2], regular.clone(), regular.clone()),
                ),
                ("dual-z2", through(&[2], &[0, 1, 0, 1], &[0, 1, 0, 1])),
                (
                    "dual-twist",
                    bimod(
                        &[2, 2],
                        regular,
                        [0, 1, 0, 1].iter().map(|&c| scalar(c, 2)).collect(),
                    ),
                ),
            ]
        }
        "z2xz2" => {
            let regular: Vec<Mat> = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .map(|&(a, b)| vec![vec![a, 0], vec![0, b]])
                .collect();
            vec![
                ("z2xz2-regular", bimod(&[2, 2], regular.clone(), regular)),
                ("z2xz2-first", through(&[2], &[0, 1, 0, 1], &[0, 1, 0, 1])),
                ("z2xz2-mixed", through(&[2], &[0, 1, 0, 1], &[0, 0, 1, 1])),
            ]
        }
        "ut2" => {
            // Elements in the order (a, b, c) = 000, 001, ..., 111.
            let a: Vec<i64> = (0..8).map(|i| (i >> 2) & 1).collect();
            let c: Vec<i64> = (0..8).map(|i| i & 1).collect();
            vec![
                ("ut2-a", through(&[2], &a, &a)),
                ("ut2-ac", through(&[2], &a, &c)),
            ]
        }
        _ => Vec::new(),
    }
}

/// One entry per (ring, bimodule) pair with `|R| <= max_ring` and `|B| <= max_bimod`.
pub struct Pair {
    pub ring_name: &'static str,
    pub bimod_name: &'static str,
    pub ring: FiniteRing,
    pub bimod: Bimodule,
}

pub fn pairs(max_ring: usize, max_bimod: u64) -> Vec<Pair> {
    let mut out = Vec::new();
    for name in RING_NAMES {
        let r = ring(name).unwrap();
        if r.size() > max_ring {
            continue;
        }
        for (bname, b) in bimodules(name) {
            if b.group().order() <= max_bimod {
                out.push(Pair {
                    ring_name: name,
                    bimod_name: bname,
                    ring: r.clone(),
                    bimod: b,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_bimodule, validate_ring};

    #[test]
    fn catalog_is_valid() {
        for name in RING_NAMES {
            let r = ring(name).unwrap();
            assert!(validate_ring(&r).is_empty(), "{name}");
            for (b, m) in bimodules(name) {
                assert!(validate_bimodule(&r, &m).unwrap().is_empty(), "{b}");
            }
        }
        assert_eq!(upper_triangular().size(), 8);
        assert_eq!(pairs(4, 4).len(), 12);
    }

    #[test]
    fn upper_triangular_is_noncommutative() {
        let r = upper_triangular();
        assert!((0..8).any(|a| (0..8).any(|b| r.mul(a, b) != r.mul(b, a))));
    }
}
