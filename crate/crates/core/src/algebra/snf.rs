//! Smith normal form.
//!
//! The same elimination engine runs in two modes. Exact mode uses checked
//! `i128` arithmetic and records `U`, `V`, `V^-1`. Modular mode reduces every
//! entry modulo `E`; it is used for quotients `Z^m / (L + E Z^m)`, which are
//! modules over `Z/E`, and records only `V^-1`.

use crate::error::{Error, Result};

/// `U * A * V = S` with `S` diagonal, `S[i][i] | S[i+1][i+1]`, `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: Vec<Vec<i128>>,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i])
            .collect()
    }
}

pub fn smith_normal_form(a: &[Vec<i128>]) -> Result<SmithForm> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Structural("ragged matrix".into()));
    }
    let mut e = Engine {
        a: a.to_vec(),
        rows,
        cols,
        modulus: None,
        u: Some(identity(rows)),
        v: Some(identity(cols)),
        v_inv: Some(identity(cols)),
    };
    e.run()?;
    Ok(SmithForm {
        s: e.a,
        u: e.u.unwrap(),
        v: e.v.unwrap(),
        v_inv: e.v_inv.unwrap(),
    })
}

/// Result of diagonalizing over `Z/E`: `P A Q = diag` modulo `E`.
pub(crate) struct ModularSmith {
    /// Entries in `[0, E)`; the cyclic order of factor `i` is `gcd(diag[i], E)`.
    pub diag: Vec<i128>,
    pub v: Option<Vec<Vec<i128>>>,
    pub v_inv: Option<Vec<Vec<i128>>>,
}

/// Diagonalizes `a` over `Z/modulus`. For the quotient `(Z/E)^m / rowspan(a)`,
/// `x -> x V` gives coordinates and row `i` of `V^-1` generates factor `i`.
pub(crate) fn modular_smith(
    a: Vec<Vec<i128>>,
    modulus: i128,
    want_v: bool,
    want_v_inv: bool,
) -> Result<ModularSmith> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut e = Engine {
        a,
        rows,
        cols,
        modulus: Some(modulus),
        u: None,
        v: want_v.then(|| identity(cols)),
        v_inv: want_v_inv.then(|| identity(cols)),
    };
    for r in e.a.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(modulus);
        }
    }
    e.run()?;
    let diag = (0..cols)
        .map(|i| if i < rows { e.a[i][i] } else { 0 })
        .collect();
    Ok(ModularSmith {
        diag,
        v: e.v,
        v_inv: e.v_inv,
    })
}

pub(crate) fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Extended gcd: returns `(g, x, y)` with `x a + y b = g >= 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

struct Engine {
    a: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
    modulus: Option<i128>,
    u: Option<Vec<Vec<i128>>>,
    v: Option<Vec<Vec<i128>>>,
    v_inv: Option<Vec<Vec<i128>>>,
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("smith normal form"))
}

fn lin(a: i128, x: i128, b: i128, y: i128) -> Result<i128> {
    mul(a, x)?
        .checked_add(mul(b, y)?)
        .ok_or(Error::Overflow("smith normal form"))
}

/// `(p, q) <- (a p + b q, c p + d q)` on two rows of `m`.
fn combine_rows(
    m: &mut [Vec<i128>],
    i: usize,
    j: usize,
    k: [i128; 4],
    modulus: Option<i128>,
) -> Result<()> {
    let [a, b, c, d] = k;
    for col in 0..m[i].len() {
        let (p, q) = (m[i][col], m[j][col]);
        let mut np = lin(a, p, b, q)?;
        let mut nq = lin(c, p, d, q)?;
        if let Some(e) = modulus {
            np = np.rem_euclid(e);
            nq = nq.rem_euclid(e);
        }
        m[i][col] = np;
        m[j][col] = nq;
    }
    Ok(())
}

fn combine_cols(
    m: &mut [Vec<i128>],
    i: usize,
    j: usize,
    k: [i128; 4],
    modulus: Option<i128>,
) -> Result<()> {
    let [a, b, c, d] = k;
    for row in m.iter_mut() {
        let (p, q) = (row[i], row[j]);
        let mut np = lin(a, p, b, q)?;
        let mut nq = lin(c, p, d, q)?;
        if let Some(e) = modulus {
            np = np.rem_euclid(e);
            nq = nq.rem_euclid(e);
        }
        row[i] = np;
        row[j] = nq;
    }
    Ok(())
}

impl Engine {
    fn row_op(&mut self, i: usize, j: usize, k: [i128; 4]) -> Result<()> {
        combine_rows(&mut self.a, i, j, k, self.modulus)?;
        if let Some(u) = self.u.as_mut() {
            combine_rows(u, i, j, k, self.modulus)?;
        }
        Ok(())
    }

    fn col_op(&mut self, i: usize, j: usize, k: [i128; 4]) -> Result<()> {
        combine_cols(&mut self.a, i, j, k, self.modulus)?;
        if let Some(v) = self.v.as_mut() {
            combine_cols(v, i, j, k, self.modulus)?;
        }
        if let Some(vi) = self.v_inv.as_mut() {
            let [a, b, c, d] = k;
            combine_rows(vi, i, j, [d, -c, -b, a], self.modulus)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = self.u.as_mut() {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in self.a.iter_mut() {
                r.swap(i, j);
            }
            if let Some(v) = self.v.as_mut() {
                for r in v.iter_mut() {
                    r.swap(i, j);
                }
            }
            if let Some(vi) = self.v_inv.as_mut() {
                vi.swap(i, j);
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_column(t)?;
                self.clear_row(t)?;
                if (t + 1..self.rows).any(|i| self.a[i][t] != 0) {
                    continue;
                }
                let p = self.a[t][t];
                let bad =
                    (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| self.a[i][j] % p != 0));
                match bad {
                    // Pull the offending row into row t; the next round lowers the pivot.
                    Some(i) => self.row_op(t, i, [1, 1, 0, 1])?,
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                self.negate_row(t);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.a[i][j].abs();
                if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                    if x == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn clear_column(&mut self, t: usize) -> Result<()> {
        for i in t + 1..self.rows {
            let b = self.a[i][t];
            if b == 0 {
                continue;
            }
            let p = self.a[t][t];
            if b % p == 0 {
                self.row_op(t, i, [1, 0, -(b / p), 1])?;
            } else {
                let (g, x, y) = xgcd(p, b);
                self.row_op(t, i, [x, y, -(b / g), p / g])?;
            }
        }
        Ok(())
    }

    fn clear_row(&mut self, t: usize) -> Result<()> {
        for j in t + 1..self.cols {
            let b = self.a[t][j];
            if b == 0 {
                continue;
            }
            let p = self.a[t][t];
            if b % p == 0 {
                self.col_op(t, j, [1, 0, -(b / p), 1])?;
            } else {
                let (g, x, y) = xgcd(p, b);
                self.col_op(t, j, [x, y, -(b / g), p / g])?;
            }
        }
        Ok(())
    }
}

/// Determinant by fraction-free elimination; used to certify unimodularity.
pub fn determinant(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = lin(a[i][j], a[k][k], -a[i][k], a[k][j])?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * if n == 0 { 1 } else { a[n - 1][n - 1] })
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i128, |acc, l| {
                        acc.checked_add(mul(row[l], b[l][j])?)
                            .ok_or(Error::Overflow("matrix product"))
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: Vec<Vec<i128>>) -> SmithForm {
        let f = smith_normal_form(&a).unwrap();
        let uav = mat_mul(&mat_mul(&f.u, &a).unwrap(), &f.v).unwrap();
        assert_eq!(uav, f.s);
        assert_eq!(determinant(&f.u).unwrap().abs(), 1);
        assert_eq!(determinant(&f.v).unwrap().abs(), 1);
        assert_eq!(mat_mul(&f.v, &f.v_inv).unwrap(), identity(f.v.len()));
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{d:?}");
        }
        for (i, row) in f.s.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert!(i == j || x == 0);
            }
        }
        f
    }

    #[test]
    fn diag_123() {
        let f = check(vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        assert_eq!(f.diagonal(), vec![1, 1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let f = check(vec![vec![0; 3]; 2]);
        assert_eq!(f.diagonal(), vec![0, 0]);
    }

    #[test]
    fn two_by_two() {
        let f = check(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(f.diagonal(), vec![2, 4]);
    }

    #[test]
    fn rectangular() {
        check(vec![vec![3, 5, 7, 11], vec![2, 0, 4, 6], vec![9, 9, 9, 3]]);
        check(vec![vec![6, 10], vec![15, 4], vec![0, 2]]);
    }

    #[test]
    fn xgcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, x, y) = xgcd(a, b);
                assert_eq!(x * a + y * b, g);
                assert!(g >= 0);
            }
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![2, 1], vec![7, 4]]).unwrap(), 1);
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(),
            -3
        );
    }

    #[test]
    fn modular_cyclic_quotient() {
        // (Z/4)^2 / <(2, 0), (0, 1)> = Z/2.
        let f = modular_smith(vec![vec![2, 0], vec![0, 1]], 4, true, true).unwrap();
        let orders: Vec<i128> = f.diag.iter().map(|&x| xgcd(x, 4).0).collect();
        assert_eq!(orders.iter().product::<i128>(), 2);
        let vv = mat_mul(&f.v.unwrap(), &f.v_inv.unwrap()).unwrap();
        for (i, row) in vv.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x.rem_euclid(4), i128::from(i == j));
            }
        }
    }
}
