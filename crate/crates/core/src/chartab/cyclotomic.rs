//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored at its smallest conductor `n`, as rational coordinates
//! in the power basis `1, ζ_n, .., ζ_n^{φ(n)-1}` of `Q(ζ_n)` reduced modulo
//! the cyclotomic polynomial `Φ_n`. Since the conductor is minimal and the
//! basis reduced, two values are equal exactly when their representations are.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp;

/// Reduction data for `Q(ζ_n)`.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    /// `pow[t]` is `x^t mod Φ_n` for `0 <= t < n`, as sparse `(index, coefficient)` pairs.
    pow: Vec<Vec<(usize, i64)>>,
}

fn field_cache() -> &'static RwLock<HashMap<usize, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<usize, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let out = Arc::new(num);
    poly_cache().write().unwrap().insert(n, out.clone());
    out
}

fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &d) in div.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn field(n: usize) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut pow = Vec::with_capacity(n);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        pow.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
        // multiply by x and reduce the overflow term with Φ_n
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let out = Arc::new(FieldData { phi, pow });
    field_cache().write().unwrap().insert(n, out.clone());
    out
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    field(n).phi
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    coords: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coords: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coords: vec![v],
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        Self::from_exponents(n, [(e, BigRational::one())])
    }

    /// `Σ c_k ζ_n^k` for arbitrary exponents.
    pub fn from_exponents<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let f = field(n);
        let mut coords = vec![BigRational::zero(); f.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            for &(i, m) in &f.pow[k % n] {
                coords[i] += &c * BigInt::from(m);
            }
        }
        Self::normalized(n, coords)
    }

    /// Builds from coordinates already reduced modulo `Φ_n`.
    pub fn from_coords(n: usize, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), totient(n), "coordinate count must be φ(n)");
        Self::normalized(n, coords)
    }

    fn normalized(n: usize, coords: Vec<BigRational>) -> Self {
        let mut v = Cyclotomic { conductor: n, coords };
        v.reduce_conductor();
        v
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coords[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// True when all coordinates are integers, i.e. an algebraic integer.
    pub fn has_integral_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Coordinates at a conductor `n` that is a multiple of the value's conductor.
    pub fn coords_at(&self, n: usize) -> Vec<BigRational> {
        assert!(n.is_multiple_of(self.conductor), "conductor {n} does not contain {}", self.conductor);
        if n == self.conductor {
            return self.coords.clone();
        }
        let f = field(n);
        let step = n / self.conductor;
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(k, m) in &f.pow[i * step] {
                out[k] += c * BigInt::from(m);
            }
        }
        out
    }

    /// Sparse `(exponent, numerator, denominator)` terms over `ζ_n`.
    pub fn terms_at(&self, n: usize) -> Vec<(usize, BigInt, BigInt)> {
        self.coords_at(n)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    /// Lowers the conductor to the smallest field containing the value.
    fn reduce_conductor(&mut self) {
        loop {
            if self.conductor == 1 {
                return;
            }
            if self.coords.iter().skip(1).all(|c| c.is_zero()) {
                let c = std::mem::take(&mut self.coords[0]);
                self.conductor = 1;
                self.coords = vec![c];
                return;
            }
            let n = self.conductor;
            let mut lowered = false;
            for p in prime_factors(n) {
                if let Some(c) = self.try_lower(p) {
                    self.conductor = n / p;
                    self.coords = c;
                    lowered = true;
                    break;
                }
            }
            if !lowered {
                return;
            }
        }
    }

    /// Coordinates in `Q(ζ_{n/p})` when the value lies there.
    fn try_lower(&self, p: usize) -> Option<Vec<BigRational>> {
        let n = self.conductor;
        let m = n / p;
        if m.is_multiple_of(p) {
            // Q(ζ_n) has basis ζ_n^r (r < p) over Q(ζ_m), and ζ_n^{pj} = ζ_m^j
            if self
                .coords
                .iter()
                .enumerate()
                .any(|(i, c)| i % p != 0 && !c.is_zero())
            {
                return None;
            }
            return Some(self.coords.iter().step_by(p).cloned().collect());
        }
        let fm = field(m);
        if p == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let half = m.div_ceil(2);
            let mut out = vec![BigRational::zero(); fm.phi];
            for (i, c) in self.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for &(k, v) in &fm.pow[(i * half) % m] {
                    out[k] += c * BigInt::from(sign * v);
                }
            }
            return Some(out);
        }
        // p exactly divides n: write ζ_n = ζ_m^u ζ_p^w with up + wm = 1 and
        // read off coordinates in the tensor basis ζ_m^j ζ_p^r
        let (u, w) = bezout(p as i64, m as i64);
        let u = u.rem_euclid(m as i64) as usize;
        let w = w.rem_euclid(p as i64) as usize;
        let mut tensor = vec![vec![BigRational::zero(); p - 1]; fm.phi];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let em = (u * i) % m;
            let ep = (w * i) % p;
            for &(j, v) in &fm.pow[em] {
                let cv = c * BigInt::from(v);
                if ep < p - 1 {
                    tensor[j][ep] += &cv;
                } else {
                    for r in 0..p - 1 {
                        tensor[j][r] -= &cv;
                    }
                }
            }
        }
        if tensor.iter().any(|row| row.iter().skip(1).any(|c| !c.is_zero())) {
            return None;
        }
        Some(tensor.into_iter().map(|mut row| row.swap_remove(0)).collect())
    }

    fn add_impl(&self, other: &Cyclotomic, sign: i64) -> Cyclotomic {
        if self.conductor == other.conductor {
            let coords = self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                .collect();
            return Self::normalized(self.conductor, coords);
        }
        let n = self.conductor.lcm(&other.conductor);
        let a = self.coords_at(n);
        let b = other.coords_at(n);
        let coords = a
            .into_iter()
            .zip(b)
            .map(|(a, b)| if sign > 0 { a + b } else { a - b })
            .collect();
        Self::normalized(n, coords)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    fn mul_impl(&self, other: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        let n = self.conductor.lcm(&other.conductor);
        let a = self.coords_at(n);
        let b = other.coords_at(n);
        let mut acc = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += x * y;
            }
        }
        Self::from_exponents(n, acc.into_iter().enumerate())
    }

    /// Image under `ζ ↦ ζ^k`; a field automorphism when `k` is coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor;
        let kk = k.rem_euclid(n as i64) as usize;
        Self::from_exponents(
            n,
            self.coords
                .iter()
                .enumerate()
                .map(|(i, c)| ((i * kk) % n, c.clone())),
        )
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Image in `F_l` under `ζ_e ↦ z` where `z` has order `e` modulo `l`;
    /// `None` when a denominator is divisible by `l`.
    pub fn reduce_mod(&self, l: u64, e: usize, z: u64) -> Option<u64> {
        if !e.is_multiple_of(self.conductor) {
            return None;
        }
        let zn = modp::pow_mod(z, (e / self.conductor) as u64, l);
        let mut acc = 0u64;
        let mut zi = 1u64;
        for c in &self.coords {
            if !c.is_zero() {
                let num = bigint_mod(c.numer(), l);
                let den = bigint_mod(c.denom(), l);
                if den == 0 {
                    return None;
                }
                let v = num * modp::inv_mod(den, l) % l;
                acc = (acc + v * zi) % l;
            }
            zi = zi * zn % l;
        }
        Some(acc)
    }

    /// Total order used to sort characters: conductor ascending, then
    /// coordinates descending (so larger rational values come first).
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| other.coords.cmp(&self.coords))
    }
}

/// Integer arithmetic in `Z[ζ_n]` on dense coordinate vectors, used for
/// fast exact checks on character values.
pub(crate) struct IntField {
    n: usize,
    data: Arc<FieldData>,
}

impl IntField {
    pub(crate) fn new(n: usize) -> Self {
        IntField { n, data: field(n) }
    }

    /// Coordinates of `v` at this conductor, if they are all integers.
    pub(crate) fn coords_of(&self, v: &Cyclotomic) -> Option<Vec<i128>> {
        v.coords_at(self.n)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i128()).flatten())
            .collect()
    }

    /// Adds `a * b` to an unreduced accumulator of length `n`.
    pub(crate) fn mul_acc(&self, acc: &mut [i128], a: &[i128], b: &[i128], scale: i128) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xs = x * scale;
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc[(i + j) % self.n] += xs * y;
                }
            }
        }
    }

    /// Reduces an accumulator of length `n` to coordinates modulo `Φ_n`.
    pub(crate) fn reduce(&self, acc: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.data.phi];
        for (t, &c) in acc.iter().enumerate() {
            if c != 0 {
                for &(k, m) in &self.data.pow[t] {
                    out[k] += c * m as i128;
                }
            }
        }
        out
    }
}

fn bigint_mod(x: &BigInt, l: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(l));
    r.to_u64().unwrap()
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    debug_assert_eq!(e.gcd, 1);
    (e.x, e.y)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, 1)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, -1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

/// Running sum that widens its conductor as terms arrive, normalizing once at the end.
#[derive(Debug, Clone)]
pub struct CycloSum {
    conductor: usize,
    coords: Vec<BigRational>,
}

impl Default for CycloSum {
    fn default() -> Self {
        CycloSum {
            conductor: 1,
            coords: vec![BigRational::zero()],
        }
    }
}

impl CycloSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_scaled(&mut self, v: &Cyclotomic, r: &BigRational) {
        if v.is_zero() || r.is_zero() {
            return;
        }
        if !self.conductor.is_multiple_of(v.conductor) {
            let n = self.conductor.lcm(&v.conductor);
            let widened = Cyclotomic {
                conductor: self.conductor,
                coords: std::mem::take(&mut self.coords),
            }
            .coords_at(n);
            self.conductor = n;
            self.coords = widened;
        }
        for (acc, c) in self.coords.iter_mut().zip(v.coords_at(self.conductor)) {
            if !c.is_zero() {
                *acc += c * r;
            }
        }
    }

    pub fn add(&mut self, v: &Cyclotomic) {
        self.add_scaled(v, &BigRational::one());
    }

    pub fn finish(self) -> Cyclotomic {
        Cyclotomic::normalized(self.conductor, self.coords)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "E({})", self.conductor)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(105), 48);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity_reduce() {
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(z(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(6, 1).conductor(), 3);
        // sum of all n-th roots of unity vanishes
        for n in [3usize, 4, 5, 8, 12, 15, 30] {
            let mut s = CycloSum::new();
            for k in 0..n {
                s.add(&z(n, k as i64));
            }
            assert!(s.finish().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn odd_prime_lowering() {
        // ζ_15^5 = ζ_3, ζ_15^3 = ζ_5
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(15, 3), z(5, 1));
        assert_eq!(z(21, 7).conductor(), 3);
        // ζ_3 + ζ_3^2 = -1
        assert_eq!(&z(15, 5) + &z(15, 10), Cyclotomic::from_int(-1));
        // a sum of a 3rd and a 5th root keeps conductor 15
        assert_eq!((&z(3, 1) + &z(5, 1)).conductor(), 15);
    }

    #[test]
    fn field_arithmetic() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        let s2 = &z(8, 1) + &z(8, -1); // sqrt 2
        assert_eq!(&s2 * &s2, Cyclotomic::from_int(2));
        assert_eq!(s2.conj(), s2);
        assert_eq!(i.conj(), &Cyclotomic::zero() - &i);
        let a = &z(7, 1) + &z(7, 3).scale(&rat(2, 3));
        let b = &z(7, 2) - &z(3, 1);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(a.conj().conj(), a);
        let d = &(&a * &b) - &(&b * &a);
        assert!(d.is_zero());
    }

    #[test]
    fn modular_reduction_is_a_homomorphism() {
        // l = 61, e = 60; z of order 60
        let l = 61u64;
        let g = modp::primitive_root(l);
        let zz = modp::pow_mod(g, 1, l);
        let a = &z(12, 5) + &z(5, 2).scale(&rat(3, 1));
        let b = &z(20, 7) - &Cyclotomic::from_int(4);
        let ra = a.reduce_mod(l, 60, zz).unwrap();
        let rb = b.reduce_mod(l, 60, zz).unwrap();
        let rab = (&a * &b).reduce_mod(l, 60, zz).unwrap();
        assert_eq!(ra * rb % l, rab);
    }
}
