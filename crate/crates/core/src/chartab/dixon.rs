//! Dixon–Schneider: irreducible characters as common eigenvectors of the
//! class-sum matrices over a prime field, lifted to exact cyclotomic values.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::{Cyclotomic, IntField};
use super::modp;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{ClassData, Permutation};

/// Class multiplication coefficients `c[i][j][l] = #{x ∈ C_i : x^{-1} g_l ∈ C_j}`.
pub(crate) struct ClassAlgebra {
    k: usize,
    coeffs: Vec<u32>,
}

impl ClassAlgebra {
    pub(crate) fn new(cd: &ClassData) -> Self {
        let k = cd.len();
        let elems = &cd.elements;
        let mut coeffs = vec![0u32; k * k * k];
        for (xi, x) in elems.elements.iter().enumerate() {
            let i = cd.element_class[xi];
            let xinv = x.inverse();
            for (l, g) in cd.representatives.iter().enumerate() {
                let y = xinv.mul(g);
                let j = cd.element_class[elems.index[&y]];
                coeffs[(i * k + j) * k + l] += 1;
            }
        }
        ClassAlgebra { k, coeffs }
    }

    /// `M_i v` modulo `p`, where `(M_i)_{jl} = c[i][j][l]`.
    fn apply(&self, i: usize, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.k)
            .map(|j| {
                let row = &self.coeffs[(i * self.k + j) * self.k..(i * self.k + j + 1) * self.k];
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&c, &x)| (acc + (c as u64 % p) * x) % p)
            })
            .collect()
    }

    /// True if `w` is a common eigenvector with eigenvalue `w_i` for `M_i`.
    fn is_central_character(&self, w: &[u64], p: u64) -> bool {
        (0..self.k).all(|i| {
            let mw = self.apply(i, w, p);
            (0..self.k).all(|j| mw[j] == w[i] * w[j] % p)
        })
    }
}

struct Space {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    next: usize,
}

/// Splits `F_p^k` into the one-dimensional common eigenspaces of the class matrices.
fn central_characters(alg: &ClassAlgebra, p: u64) -> Result<Vec<Vec<u64>>> {
    let k = alg.k;
    let (rows, pivots) = modp::row_reduce(
        (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect(),
        p,
    );
    let mut work = vec![Space { rows, pivots, next: 1 }];
    let mut done = Vec::new();
    while let Some(space) = work.pop() {
        let d = space.rows.len();
        if d == 1 {
            done.push(space.rows.into_iter().next().unwrap());
            continue;
        }
        let mut split = false;
        for i in space.next..k {
            let images: Vec<Vec<u64>> = space.rows.iter().map(|v| alg.apply(i, v, p)).collect();
            // restricted matrix: column s holds the coordinates of M_i v_s
            let a: Vec<Vec<u64>> = (0..d)
                .map(|t| (0..d).map(|s| images[s][space.pivots[t]]).collect())
                .collect();
            let cp = modp::charpoly(a.clone(), p);
            let roots: Vec<u64> = (0..p).filter(|&x| modp::eval_poly(&cp, x, p) == 0).collect();
            if roots.len() <= 1 {
                continue;
            }
            let mut total = 0;
            for r in roots {
                let shifted: Vec<Vec<u64>> = a
                    .iter()
                    .enumerate()
                    .map(|(t, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(s, &x)| if s == t { (x + p - r) % p } else { x })
                            .collect()
                    })
                    .collect();
                let ns = modp::nullspace(shifted, d, p);
                total += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; k];
                        for (s, &c) in coef.iter().enumerate() {
                            if c != 0 {
                                for (x, &b) in v.iter_mut().zip(&space.rows[s]) {
                                    *x = (*x + c * b) % p;
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let (rows, pivots) = modp::row_reduce(vecs, p);
                work.push(Space { rows, pivots, next: i + 1 });
            }
            if total != d {
                return Err(Error::Inconsistent(format!(
                    "class matrix {i} is not diagonalizable modulo {p}"
                )));
            }
            split = true;
            break;
        }
        if !split {
            return Err(Error::Inconsistent(format!(
                "common eigenspace of dimension {d} did not split modulo {p}"
            )));
        }
    }
    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::Inconsistent("eigenvector vanishes at the identity".into()));
            }
            let inv = modp::inv_mod(v[0], p);
            Ok(v.iter().map(|x| x * inv % p).collect())
        })
        .collect()
}

/// Irreducible characters of an enumerated group, unsorted, with the prime used.
pub(crate) fn irreducible_characters(
    cd: &ClassData,
    limits: &Limits,
) -> Result<(u64, Vec<Vec<Cyclotomic>>)> {
    let k = cd.len();
    if k > limits.class_cap {
        return Err(Error::ClassCountExceeded { count: k, cap: limits.class_cap });
    }
    let n = cd.group_order;
    let e = cd.exponent();
    let p = modp::dixon_prime(e, n, limits.prime_bound).ok_or(Error::NoSuitablePrime {
        exponent: e,
        order: n,
        bound: limits.prime_bound,
    })?;
    let alg = ClassAlgebra::new(cd);
    let omegas = central_characters(&alg, p)?;
    if omegas.len() != k {
        return Err(Error::Inconsistent(format!(
            "found {} central characters for {k} classes",
            omegas.len()
        )));
    }
    let z = modp::pow_mod(modp::primitive_root(p), (p - 1) / e, p);
    // classes of g_j^t for 0 <= t < o(g_j)
    let powers: Vec<Vec<usize>> = cd
        .representatives
        .iter()
        .map(|g| {
            let mut out = Vec::new();
            let mut x = Permutation::identity(g.degree());
            for _ in 0..g.order() {
                out.push(cd.class_of(&x).expect("power stays in group"));
                x = x.mul(g);
            }
            out
        })
        .collect();
    let mut chars = Vec::with_capacity(k);
    for w in &omegas {
        let s = (0..k).fold(0u64, |acc, j| {
            let t = w[j] * w[cd.inverse_class[j]] % p * modp::inv_mod(cd.sizes[j] % p, p) % p;
            (acc + t) % p
        });
        if s == 0 {
            return Err(Error::Inconsistent("degree sum vanishes modulo the prime".into()));
        }
        let target = n % p * modp::inv_mod(s, p) % p;
        let d = (1..)
            .take_while(|d| d * d <= n)
            .find(|d| n.is_multiple_of(*d) && d * d % p == target)
            .ok_or_else(|| Error::Inconsistent("no admissible degree".into()))?;
        let modvals: Vec<u64> = (0..k)
            .map(|j| d % p * w[j] % p * modp::inv_mod(cd.sizes[j] % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(k);
        for pw in &powers {
            let o = pw.len() as u64;
            let zo = modp::pow_mod(z, e / o, p);
            let zo_inv = modp::inv_mod(zo, p);
            let o_inv = modp::inv_mod(o % p, p);
            let mut terms = Vec::new();
            for a in 0..o {
                let step = modp::pow_mod(zo_inv, a, p);
                let mut f = 1u64;
                let mut m = 0u64;
                for &c in pw {
                    m = (m + modvals[c] * f) % p;
                    f = f * step % p;
                }
                let m = m * o_inv % p;
                if m > d {
                    return Err(Error::Inconsistent(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                if m > 0 {
                    terms.push((a as usize, BigRational::from_integer(BigInt::from(m))));
                }
            }
            values.push(Cyclotomic::from_exponents(o as usize, terms));
        }
        // the lift must reduce back to the eigenvector it came from
        let back: Option<Vec<u64>> = values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                v.reduce_mod(p, e as usize, z)
                    .map(|x| cd.sizes[j] % p * x % p * modp::inv_mod(d % p, p) % p)
            })
            .collect();
        if back.as_deref() != Some(w.as_slice()) || !alg.is_central_character(w, p) {
            return Err(Error::Inconsistent("lifted character fails the modular re-check".into()));
        }
        chars.push(values);
    }
    Ok((p, chars))
}

/// Exact row and column orthogonality over `Z[ζ_e]`.
pub(crate) fn verify_orthogonality(cd: &ClassData, chars: &[Vec<Cyclotomic>]) -> Result<()> {
    let k = cd.len();
    let e = cd.exponent() as usize;
    let f = IntField::new(e);
    let coords: Vec<Vec<Vec<i128>>> = chars
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| f.coords_of(v).ok_or_else(|| Error::Inconsistent(format!("value {v} is not integral"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let n = cd.group_order as i128;
    let is_const = |v: &[i128], c: i128| v[0] == c && v[1..].iter().all(|&x| x == 0);
    for a in 0..k {
        for b in a..k {
            let mut acc = vec![0i128; e];
            for c in 0..k {
                f.mul_acc(&mut acc, &coords[a][c], &coords[b][cd.inverse_class[c]], cd.sizes[c] as i128);
            }
            let want = if a == b { n } else { 0 };
            if !is_const(&f.reduce(&acc), want) {
                return Err(Error::Inconsistent(format!("row orthogonality fails for characters {a}, {b}")));
            }
        }
    }
    for c in 0..k {
        for d in c..k {
            let mut acc = vec![0i128; e];
            for row in &coords {
                f.mul_acc(&mut acc, &row[c], &row[cd.inverse_class[d]], 1);
            }
            let want = if c == d { (cd.group_order / cd.sizes[c]) as i128 } else { 0 };
            if !is_const(&f.reduce(&acc), want) {
                return Err(Error::Inconsistent(format!("column orthogonality fails for classes {c}, {d}")));
            }
        }
    }
    Ok(())
}
