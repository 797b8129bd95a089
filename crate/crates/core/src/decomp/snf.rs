use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigInt>>;

/// Smith normal form `U·M·V = S` with unimodular `U`, `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_dst -= q * row_src`
fn row_sub(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(&src_row) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// `col_dst -= q * col_src`
fn col_sub(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let v = q * &row[src];
            row[dst] -= v;
        }
    }
}

/// Smith normal form of an `rows × cols` integer matrix, audited on return.
pub fn smith_normal_form(m: &Matrix, rows: usize, cols: usize) -> Result<SnfResult> {
    let mut s = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                row_sub(&mut s, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !s[i][t].is_zero() {
                    s.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                col_sub(&mut s, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !s[t][j].is_zero() {
                    swap_cols(&mut s, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut s, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| s[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    let out = SnfResult { s, u, v, diagonal };
    audit(m, &out, rows, cols)?;
    Ok(out)
}

fn audit(m: &Matrix, r: &SnfResult, rows: usize, cols: usize) -> Result<()> {
    let umv = mat_mul(&mat_mul(&r.u, m, rows, cols), &r.v, cols, cols);
    if umv != r.s {
        return Err(Error::Inconsistent("Smith form audit: U M V != S".into()));
    }
    for i in 0..rows {
        for j in 0..cols {
            let on_diag = i == j && i < r.diagonal.len();
            if !on_diag && !r.s[i][j].is_zero() {
                return Err(Error::Inconsistent("Smith form audit: S is not diagonal".into()));
            }
        }
    }
    for w in r.diagonal.windows(2) {
        if !w[1].is_multiple_of(&w[0]) {
            return Err(Error::Inconsistent("Smith form audit: divisibility chain broken".into()));
        }
    }
    if r.diagonal.iter().any(|d| !d.is_positive()) {
        return Err(Error::Inconsistent("Smith form audit: nonpositive invariant factor".into()));
    }
    Ok(())
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_forms() {
        let r = smith_normal_form(&m(&[&[2, 0], &[0, 3]]), 2, 2).unwrap();
        assert_eq!(r.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let r = smith_normal_form(&m(&[&[1, 0], &[0, 1]]), 2, 2).unwrap();
        assert_eq!(r.s, m(&[&[1, 0], &[0, 1]]));
        let r = smith_normal_form(&m(&[&[2]]), 1, 1).unwrap();
        assert_eq!(r.s, m(&[&[2]]));
        let r = smith_normal_form(&Vec::new(), 0, 0).unwrap();
        assert_eq!(r.rank(), 0);
        let r = smith_normal_form(&m(&[&[0, 0, 0]]), 1, 3).unwrap();
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&m(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), BigInt::from(-2));
    }
}
