use crate::error::{Error, Result};

/// A small finite field `F_q`, elements numbered `0..q` by their coefficient
/// vectors in base `p` over a fixed irreducible polynomial.
#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: u8,
}

impl Field {
    /// `F_q` for prime `q < 256` or `q ∈ {4, 8, 9}` (polynomials `x²+x+1`,
    /// `x³+x+1`, `x²+1`).
    pub fn new(q: u64) -> Result<Self> {
        let (p, modulus): (usize, Vec<usize>) = match q {
            4 => (2, vec![1, 1, 1]),
            8 => (2, vec![1, 1, 0, 1]),
            9 => (3, vec![1, 0, 1]),
            _ if (2..256).contains(&q) && (2..q).all(|d| !q.is_multiple_of(d)) => (q as usize, vec![0, 1]),
            _ => return Err(Error::UnsupportedParameter(format!("no field of order {q}"))),
        };
        let q = q as usize;
        let k = modulus.len() - 1;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let number = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = number(&sum) as u8;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (k..2 * k).rev() {
                    let c = prod[d];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate() {
                            let t = &mut prod[d - k + i];
                            *t = (*t + p * p - c * m % p) % p;
                        }
                    }
                }
                mul[a * q + b] = number(&prod[..k]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 })
            .collect();
        let mut f = Field { q, add, mul, neg, inv, primitive: 0 };
        f.primitive = (1..q as u8)
            .find(|&g| f.multiplicative_order(g) == q - 1)
            .ok_or_else(|| Error::Inconsistent(format!("F_{q} has no primitive element; modulus reducible")))?;
        Ok(f)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: usize) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: u8) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` stored row by row.
pub type Mat2 = [u8; 4];

impl Field {
    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| self.add(self.mul(x[2 * i], y[j]), self.mul(x[2 * i + 1], y[2 + j]));
        [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
    }

    pub fn det(&self, m: &Mat2) -> u8 {
        self.add(self.mul(m[0], m[3]), self.neg(self.mul(m[1], m[2])))
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: (u8, u8), m: &Mat2) -> (u8, u8) {
        (
            self.add(self.mul(v.0, m[0]), self.mul(v.1, m[2])),
            self.add(self.mul(v.0, m[1]), self.mul(v.1, m[3])),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            let f = Field::new(q).unwrap();
            let n = q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive()), q as usize - 1);
        }
        assert!(Field::new(6).is_err());
        assert!(Field::new(16).is_err());
    }
}
