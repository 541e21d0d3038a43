//! Table-presented finite rings.

use crate::error::{Error, Result, Violation};

/// A finite ring given by labels and operation tables over element indices.
///
/// Construction checks only the table shapes; use [`validate_ring`] or
/// [`FiniteRing::validated`] for the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    labels: Vec<String>,
    zero: usize,
    one: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
}

impl FiniteRing {
    pub fn new(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structural("ring has no elements".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Structural(format!("duplicate element label {l:?}")));
            }
        }
        if zero >= n || one >= n {
            return Err(Error::Structural("zero/one index out of range".into()));
        }
        check_square("add", &add, n)?;
        check_square("mul", &mul, n)?;
        if neg.len() != n {
            return Err(Error::Structural(format!(
                "neg table has length {}, expected {n}",
                neg.len()
            )));
        }
        if let Some(i) = neg.iter().position(|&v| v >= n) {
            return Err(Error::Structural(format!(
                "neg[{i}] = {} out of range",
                neg[i]
            )));
        }
        Ok(Self {
            labels,
            zero,
            one,
            add,
            mul,
            neg,
        })
    }

    /// Builds the ring and rejects it unless every axiom holds.
    pub fn validated(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
    ) -> Result<Self> {
        let r = Self::new(labels, zero, one, add, mul, neg)?;
        let report = validate_ring(&r);
        if report.is_empty() {
            Ok(r)
        } else {
            Err(Error::Validation(report))
        }
    }

    /// `Z/n` with labels `"0"`, ..., `"n-1"`.
    pub fn zmod(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a * b) % n).collect())
            .collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        Self::new(labels, 0, 1 % n, add, mul, neg).expect("Z/n tables are well formed")
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

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// Renames element `i` to position `perm[i]`, keeping labels attached to
    /// their elements.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Structural("not a permutation".into()));
        }
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let labels = (0..n).map(|j| self.labels[inv[j]].clone()).collect();
        let add = (0..n)
            .map(|a| (0..n).map(|b| perm[self.add[inv[a]][inv[b]]]).collect())
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| perm[self.mul[inv[a]][inv[b]]]).collect())
            .collect();
        let neg = (0..n).map(|a| perm[self.neg[inv[a]]]).collect();
        Self::new(labels, perm[self.zero], perm[self.one], add, mul, neg)
    }
}

fn check_square(name: &str, t: &[Vec<usize>], n: usize) -> Result<()> {
    if t.len() != n {
        return Err(Error::Structural(format!(
            "{name} table has {} rows, expected {n}",
            t.len()
        )));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Structural(format!(
                "{name} table row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(Error::Structural(format!(
                "{name}[{i}][{j}] = {} out of range",
                row[j]
            )));
        }
    }
    Ok(())
}

/// Exhaustively checks the ring axioms. The report is empty iff all hold.
pub fn validate_ring(r: &FiniteRing) -> Vec<Violation> {
    let n = r.size();
    let mut out = Vec::new();
    let lab = |xs: &[usize]| {
        xs.iter()
            .map(|&x| r.label(x).to_string())
            .collect::<Vec<_>>()
    };
    let mut push = |rule: &str, xs: &[usize], detail: String| {
        out.push(Violation {
            rule: rule.into(),
            witness: lab(xs),
            detail,
        });
    };
    for a in 0..n {
        if r.add(a, r.zero) != a {
            push("additive identity", &[a], String::new());
        }
        if r.add(a, r.neg(a)) != r.zero {
            push("additive inverse", &[a], String::new());
        }
        if r.mul(r.one, a) != a || r.mul(a, r.one) != a {
            push("multiplicative identity", &[a], String::new());
        }
        for b in 0..n {
            if r.add(a, b) != r.add(b, a) {
                push("additive commutativity", &[a, b], String::new());
            }
            for c in 0..n {
                if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
                    push("additive associativity", &[a, b, c], String::new());
                }
                if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
                    let d = format!(
                        "({a}{b}){c} = {} but {a}({b}{c}) = {}",
                        r.label(r.mul(r.mul(a, b), c)),
                        r.label(r.mul(a, r.mul(b, c))),
                        a = r.label(a),
                        b = r.label(b),
                        c = r.label(c)
                    );
                    push("multiplicative associativity", &[a, b, c], d);
                }
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
                    push("left distributivity", &[a, b, c], String::new());
                }
                if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)) {
                    push("right distributivity", &[a, b, c], String::new());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_z2_x2() -> FiniteRing {
        // Elements a + b x encoded as 2b + a.
        let enc = |a: usize, b: usize| 2 * b + a;
        let labels = vec!["0".into(), "1".into(), "x".into(), "1+x".into()];
        let add = (0..4).map(|p| (0..4).map(|q| p ^ q).collect()).collect();
        let mul = (0..4)
            .map(|p| {
                (0..4)
                    .map(|q| {
                        let (a, b) = (p & 1, p >> 1);
                        let (c, d) = (q & 1, q >> 1);
                        enc((a * c) % 2, (a * d + b * c) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteRing::new(labels, 0, 1, add, mul, vec![0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn z2_is_valid() {
        assert!(validate_ring(&FiniteRing::zmod(2)).is_empty());
    }

    #[test]
    fn dual_numbers_are_valid() {
        assert!(validate_ring(&poly_z2_x2()).is_empty());
    }

    #[test]
    fn trivial_ring_allowed() {
        let r = FiniteRing::zmod(1);
        assert_eq!(r.zero(), r.one());
        assert!(validate_ring(&r).is_empty());
    }

    #[test]
    fn corrupted_z4_reports_witness() {
        let z4 = FiniteRing::zmod(4);
        let mut mul = z4.mul_table().to_vec();
        mul[3][3] = 2;
        let bad = FiniteRing::new(
            z4.labels().to_vec(),
            0,
            1,
            z4.add_table().to_vec(),
            mul,
            z4.neg_table().to_vec(),
        )
        .unwrap();
        let rep = validate_ring(&bad);
        assert!(rep.iter().any(|v| v.rule.contains("distributivity")
            || v.rule.contains("multiplicative associativity")));
        // Witness: 3*(1+2) = 3*3 = 2 but 3*1 + 3*2 = 3 + 2 = 1.
        assert!(rep
            .iter()
            .any(|v| v.rule == "left distributivity" && v.witness == ["3", "1", "2"]));
    }

    #[test]
    fn structural_errors_are_distinct() {
        let err = FiniteRing::new(
            vec!["0".into(), "1".into()],
            0,
            1,
            vec![vec![0, 1], vec![1]],
            vec![vec![0, 0], vec![0, 1]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        let err = FiniteRing::new(
            vec!["0".into(), "1".into()],
            0,
            1,
            vec![vec![0, 1], vec![1, 5]],
            vec![vec![0, 0], vec![0, 1]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn permutation_preserves_validity() {
        let r = FiniteRing::zmod(4).permuted(&[2, 0, 3, 1]).unwrap();
        assert!(validate_ring(&r).is_empty());
        assert_eq!(r.label(r.zero()), "0");
        assert_eq!(r.label(r.one()), "1");
    }
}
