use std::fmt;

use super::field::{Field, Mat2};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{PermGroup, Permutation};

/// The supported families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Dihedral,
    Quaternion,
    Semidihedral,
    Wreath,
    Sl2,
    Gl2,
    Psl2,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "dihedral" => FamilyKind::Dihedral,
            "quaternion" => FamilyKind::Quaternion,
            "semidihedral" => FamilyKind::Semidihedral,
            "wreath" => FamilyKind::Wreath,
            "sl2" => FamilyKind::Sl2,
            "gl2" => FamilyKind::Gl2,
            "psl2" => FamilyKind::Psl2,
            _ => return Err(Error::UnsupportedParameter(format!("unknown family {s}"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::Quaternion => "quaternion",
            FamilyKind::Semidihedral => "semidihedral",
            FamilyKind::Wreath => "wreath",
            FamilyKind::Sl2 => "sl2",
            FamilyKind::Gl2 => "gl2",
            FamilyKind::Psl2 => "psl2",
        }
    }

    /// True for the matrix families, whose parameter is the field order `q`.
    pub fn takes_field(self) -> bool {
        matches!(self, FamilyKind::Sl2 | FamilyKind::Gl2 | FamilyKind::Psl2)
    }
}

/// A family member. For the 2-group families `param` is `n` with group
/// order `2^{n+1}` (`C_{2^n} ≀ C_2` has order `2^{2n+1}`); for the matrix
/// families it is `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub param: u64,
    pub prime: u64,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, param: u64) -> Self {
        FamilySpec { kind, param, prime: 2 }
    }

    /// `|G|` from the parameter.
    pub fn order(&self) -> u64 {
        let (n, q) = (self.param, self.param);
        match self.kind {
            FamilyKind::Dihedral | FamilyKind::Quaternion | FamilyKind::Semidihedral => 1 << (n + 1),
            FamilyKind::Wreath => 1 << (2 * n + 1),
            FamilyKind::Sl2 => q * (q * q - 1),
            FamilyKind::Gl2 => q * (q - 1) * (q * q - 1),
            FamilyKind::Psl2 => q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 },
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            FamilyKind::Dihedral => (1..=7).contains(&self.param),
            FamilyKind::Quaternion => (2..=7).contains(&self.param),
            FamilyKind::Semidihedral => (3..=7).contains(&self.param),
            FamilyKind::Wreath => (1..=4).contains(&self.param),
            FamilyKind::Sl2 | FamilyKind::Psl2 => [3, 4, 5, 7, 8, 9, 11, 13].contains(&self.param),
            FamilyKind::Gl2 => [3, 5, 7, 9].contains(&self.param),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedParameter(format!("{self}")))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let key = if self.kind.takes_field() { "q" } else { "n" };
        write!(f, "{}({key}={})", self.kind.as_str(), self.param)
    }
}

/// Builds the family member as a permutation group and checks its
/// fingerprints (order, center, exponent, defining relations).
pub fn make_family(spec: &FamilySpec, limits: &Limits) -> Result<PermGroup> {
    spec.validate()?;
    let g = match spec.kind {
        FamilyKind::Dihedral if spec.param == 1 => klein()?,
        FamilyKind::Dihedral => affine_2group(spec.param, |m| m - 1)?,
        FamilyKind::Semidihedral => affine_2group(spec.param, |m| m / 2 - 1)?,
        FamilyKind::Quaternion => quaternion(spec.param)?,
        FamilyKind::Wreath => wreath(spec.param)?,
        FamilyKind::Sl2 => LinearGroup::special(spec.param)?.group,
        FamilyKind::Gl2 => LinearGroup::general(spec.param)?.group,
        FamilyKind::Psl2 => projective(spec.param)?,
    };
    fingerprint(spec, &g, limits)?;
    Ok(g)
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("constructed images form a permutation")
}

/// `⟨x, y⟩` acting on `Z/2^n` by `x: i ↦ i+1`, `y: i ↦ u·i`, so `x^y = x^u`.
fn affine_2group(n: u64, unit: impl Fn(usize) -> usize) -> Result<PermGroup> {
    let m = 1usize << n;
    let u = unit(m) % m;
    let x = perm((0..m).map(|i| (i + 1) % m).collect());
    let y = perm((0..m).map(|i| (u * i) % m).collect());
    PermGroup::from_generators(m, vec![x, y])
}

/// The Klein four-group as the regular `⟨(1,2)(3,4), (1,3)(2,4)⟩`.
fn klein() -> Result<PermGroup> {
    PermGroup::from_generators(4, vec![perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])])
}

/// Generalized quaternion group of order `2^{n+1}` in its regular action;
/// element `x^a y^b` is point `a + 2^n b`.
fn quaternion(n: u64) -> Result<PermGroup> {
    let m = 1usize << n;
    let point = |a: usize, b: usize| a % m + m * b;
    // (x^a y^b)(x^c y^d) = x^{a + (-1)^b c + bd·2^{n-1}} y^{b xor d}
    let times = |a: usize, b: usize, c: usize, d: usize| {
        let c = if b == 1 { m - c % m } else { c };
        point(a + c + b * d * (m / 2), b ^ d)
    };
    let right = |c: usize, d: usize| perm((0..2 * m).map(|p| times(p % m, p / m, c, d)).collect());
    PermGroup::from_generators(2 * m, vec![right(1, 0), right(0, 1)])
}

/// `C_{2^n} ≀ C_2` on two blocks of `2^n` points.
fn wreath(n: u64) -> Result<PermGroup> {
    let m = 1usize << n;
    let x = perm((0..2 * m).map(|i| if i < m { (i + 1) % m } else { i }).collect());
    let z = perm((0..2 * m).map(|i| (i + m) % (2 * m)).collect());
    PermGroup::from_generators(2 * m, vec![x, z])
}

/// A subgroup of `GL(2, q)` acting on the `q² − 1` nonzero row vectors.
#[derive(Debug, Clone)]
pub struct LinearGroup {
    pub field: Field,
    pub group: PermGroup,
    vectors: Vec<(u8, u8)>,
}

impl LinearGroup {
    /// `SL(2, q)`, generated by the root subgroups over an additive basis.
    pub fn special(q: u64) -> Result<Self> {
        let field = Field::new(q)?;
        let gens = Self::transvections(&field);
        Self::build(field, gens)
    }

    /// `GL(2, q)`: `SL(2, q)` and `diag(ω, 1)` for a primitive `ω`.
    pub fn general(q: u64) -> Result<Self> {
        let field = Field::new(q)?;
        let mut gens = Self::transvections(&field);
        gens.push([field.primitive(), 0, 0, 1]);
        Self::build(field, gens)
    }

    fn transvections(f: &Field) -> Vec<Mat2> {
        let mut gens = Vec::new();
        let mut a = 1u8;
        // powers of the primitive element span F_q over F_p
        for _ in 0..field_degree(f.order()) {
            gens.push([1, a, 0, 1]);
            gens.push([1, 0, a, 1]);
            a = f.mul(a, f.primitive());
        }
        gens
    }

    fn build(field: Field, gens: Vec<Mat2>) -> Result<Self> {
        let q = field.order() as u8;
        let vectors: Vec<(u8, u8)> = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .filter(|&v| v != (0, 0))
            .collect();
        let mut lg = LinearGroup {
            field,
            group: PermGroup::trivial(vectors.len()),
            vectors,
        };
        let perms = gens.iter().map(|m| lg.permutation(m)).collect::<Result<Vec<_>>>()?;
        lg.group = PermGroup::from_generators(lg.vectors.len(), perms)?;
        Ok(lg)
    }

    fn index(&self, v: (u8, u8)) -> usize {
        let q = self.field.order();
        v.0 as usize * q + v.1 as usize - 1
    }

    /// The permutation `v ↦ v·m` of the nonzero vectors.
    pub fn permutation(&self, m: &Mat2) -> Result<Permutation> {
        if self.field.det(m) == 0 {
            return Err(Error::UnsupportedParameter("singular matrix".into()));
        }
        Permutation::from_images(self.vectors.iter().map(|&v| self.index(self.field.apply(v, m))).collect())
    }
}

/// `k` with `q = p^k`.
fn field_degree(mut q: usize) -> usize {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut k = 0;
    while q > 1 {
        q /= p;
        k += 1;
    }
    k
}

/// `PSL(2, q)` on the `q + 1` points of the projective line.
fn projective(q: u64) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let n = f.order() as u8;
    // normalized representatives: (1, b) and (0, 1)
    let points: Vec<(u8, u8)> = (0..n).map(|b| (1, b)).chain([(0, 1)]).collect();
    let index = |v: (u8, u8)| -> usize {
        if v.0 == 0 {
            n as usize
        } else {
            f.mul(v.1, f.inv(v.0)) as usize
        }
    };
    let gens = LinearGroup::transvections(&f)
        .iter()
        .map(|m| perm(points.iter().map(|&v| index(f.apply(v, m))).collect()))
        .collect();
    PermGroup::from_generators(points.len(), gens)
}

fn fingerprint(spec: &FamilySpec, g: &PermGroup, limits: &Limits) -> Result<()> {
    let fail = |what: &str| Err(Error::Inconsistent(format!("{spec}: {what}")));
    if g.order() != spec.order() {
        return fail(&format!("order {} instead of {}", g.order(), spec.order()));
    }
    let center = g.center(limits.element_cap)?.order();
    let exponent = g.exponent(limits.element_cap)?;
    let m = 1u64 << spec.param;
    let q = spec.param;
    let (want_center, want_exponent) = match spec.kind {
        FamilyKind::Dihedral if spec.param == 1 => (4, 2),
        FamilyKind::Dihedral | FamilyKind::Quaternion | FamilyKind::Semidihedral => (2, m),
        FamilyKind::Wreath => (m, 2 * m),
        FamilyKind::Sl2 => (if q % 2 == 1 { 2 } else { 1 }, exponent),
        FamilyKind::Gl2 => (q - 1, exponent),
        FamilyKind::Psl2 => (1, exponent),
    };
    if center != want_center {
        return fail(&format!("center of order {center}, expected {want_center}"));
    }
    if exponent != want_exponent {
        return fail(&format!("exponent {exponent}, expected {want_exponent}"));
    }
    match spec.kind {
        FamilyKind::Quaternion => {
            let involutions = g.class_data(limits.element_cap)?.elements.elements.iter().filter(|e| e.order() == 2).count();
            if involutions != 1 {
                return fail(&format!("{involutions} involutions"));
            }
        }
        FamilyKind::Semidihedral => {
            let (x, y) = (&g.generators()[0], &g.generators()[1]);
            if x.conjugate_by(y) != x.pow(m as i64 / 2 - 1) {
                return fail("x^y != x^(2^(n-1)-1)");
            }
        }
        FamilyKind::Wreath => {
            let (x, z) = (&g.generators()[0], &g.generators()[1]);
            let xy = x.mul(&x.conjugate_by(z));
            if !g.center(limits.element_cap)?.contains(&xy) {
                return fail("xy is not central");
            }
        }
        _ => {}
    }
    Ok(())
}
