use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use super::cyclotomic::{CycloSum, Cyclotomic};
use super::dixon;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::{ClassData, PermGroup, Permutation};

/// Values of a class function, one per conjugacy class of the owning table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    tag: u64,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer, when it is one.
    pub fn degree_u64(&self) -> Option<u64> {
        self.values[0].to_integer().and_then(|d| d.to_u64())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn zip_with(&self, other: &ClassFunction, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<ClassFunction> {
        if self.tag != other.tag || self.values.len() != other.values.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            tag: self.tag,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, r: &BigRational) -> ClassFunction {
        ClassFunction {
            tag: self.tag,
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            tag: self.tag,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    fn canonical_cmp(&self, other: &ClassFunction) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.canonical_cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Map from classes of `H` to classes of `G` for `H ≤ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
    sub_tag: u64,
    parent_tag: u64,
}

/// Character table: classes, exponent and the irreducible characters,
/// sorted by degree and then by value sequence (trivial character first).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: PermGroup,
    classes: Arc<ClassData>,
    tag: u64,
    exponent: u64,
    prime: u64,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

/// Computes the full character table by Dixon–Schneider, verifying both
/// orthogonality relations exactly before returning.
pub fn character_table(group: &PermGroup, limits: &Limits) -> Result<CharacterTable> {
    let classes = group.class_data(limits.element_cap)?;
    let tag = group.structure_tag(limits.element_cap)?;
    let (prime, chars) = dixon::irreducible_characters(&classes, limits)?;
    let mut chars: Vec<ClassFunction> = chars.into_iter().map(|values| ClassFunction { tag, values }).collect();
    chars.sort_by(|a, b| {
        a.values[0]
            .to_integer()
            .cmp(&b.values[0].to_integer())
            .then_with(|| a.canonical_cmp(b))
    });
    let rows: Vec<Vec<Cyclotomic>> = chars.iter().map(|c| c.values.clone()).collect();
    dixon::verify_orthogonality(&classes, &rows)?;
    let degrees: Vec<u64> = chars
        .iter()
        .map(|c| c.values[0].to_integer().and_then(|d| d.to_u64()).expect("degree is a positive integer"))
        .collect();
    let n = classes.group_order;
    if degrees.iter().map(|d| d * d).sum::<u64>() != n || degrees.iter().any(|d| n % d != 0) {
        return Err(Error::Inconsistent("degrees do not match the group order".into()));
    }
    Ok(CharacterTable {
        group: group.clone(),
        exponent: classes.exponent(),
        classes,
        tag,
        prime,
        irreducibles: chars,
        degrees,
    })
}

impl CharacterTable {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn order(&self) -> u64 {
        self.classes.group_order
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Prime used for the modular stage.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.classes.class_of(g)
    }

    pub fn power_map(&self, m: i64) -> Vec<usize> {
        self.classes.power_map(m)
    }

    /// Wraps values as a class function of this table's group.
    pub fn class_function(&self, values: Vec<Cyclotomic>) -> Result<ClassFunction> {
        if values.len() != self.class_count() {
            return Err(Error::DimensionMismatch {
                expected: self.class_count(),
                got: values.len(),
            });
        }
        Ok(ClassFunction { tag: self.tag, values })
    }

    pub fn trivial(&self) -> ClassFunction {
        self.irreducibles[0].clone()
    }

    pub fn zero(&self) -> ClassFunction {
        ClassFunction {
            tag: self.tag,
            values: vec![Cyclotomic::zero(); self.class_count()],
        }
    }

    /// Regular character: `|G|` at the identity, zero elsewhere.
    pub fn regular(&self) -> ClassFunction {
        let mut values = vec![Cyclotomic::zero(); self.class_count()];
        values[0] = Cyclotomic::from_int(self.order() as i64);
        ClassFunction { tag: self.tag, values }
    }

    /// Indices of the degree-one irreducibles.
    pub fn linear_characters(&self) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == 1).collect()
    }

    fn check(&self, f: &ClassFunction) -> Result<()> {
        if f.tag != self.tag || f.values.len() != self.class_count() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// `(1/|G|) Σ_k |C_k| a(g_k) conj(b(g_k))`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
        self.check(a)?;
        self.check(b)?;
        let mut sum = CycloSum::new();
        for (k, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let size = BigRational::from_integer(BigInt::from(self.classes.sizes[k]));
            sum.add_scaled(&(x * &y.conj()), &size);
        }
        let total = sum.finish();
        let r = total.to_rational().ok_or_else(|| {
            Error::Inconsistent(format!("inner product {total} is not rational"))
        })?;
        Ok(r / BigRational::from_integer(BigInt::from(self.order())))
    }

    /// Multiplicities of the irreducibles in a character, verified by reconstruction.
    pub fn decompose(&self, theta: &ClassFunction) -> Result<Vec<u64>> {
        self.check(theta)?;
        let mut mult = Vec::with_capacity(self.irreducibles.len());
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let m = self.inner_product(theta, chi)?;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::NotACharacter(format!(
                    "multiplicity {m} of irreducible {i}"
                )));
            }
            mult.push(m.to_integer().to_u64().ok_or_else(|| Error::NotACharacter("huge multiplicity".into()))?);
        }
        if self.compose(&mult) != *theta {
            return Err(Error::NotACharacter("not in the span of the irreducibles".into()));
        }
        Ok(mult)
    }

    /// `Σ m_i χ_i`.
    pub fn compose(&self, mult: &[u64]) -> ClassFunction {
        let values = (0..self.class_count())
            .map(|c| {
                let mut s = CycloSum::new();
                for (chi, &m) in self.irreducibles.iter().zip(mult) {
                    if m > 0 {
                        s.add_scaled(&chi.values[c], &BigRational::from_integer(BigInt::from(m)));
                    }
                }
                s.finish()
            })
            .collect();
        ClassFunction { tag: self.tag, values }
    }

    /// Irreducible equal to `f`, if any.
    pub fn position(&self, f: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == f)
    }

    /// Export with class representatives, sizes and values as
    /// `[exponent, numerator, denominator]` triples over `ζ_e`.
    pub fn to_json(&self) -> Value {
        let e = self.exponent as usize;
        let num = |x: &BigInt| match x.to_i64() {
            Some(v) => json!(v),
            None => json!(x.to_string()),
        };
        let chars: Vec<Value> = self
            .irreducibles
            .iter()
            .map(|chi| {
                Value::Array(
                    chi.values
                        .iter()
                        .map(|v| {
                            Value::Array(
                                v.terms_at(e)
                                    .iter()
                                    .map(|(i, a, b)| json!([i, num(a), num(b)]))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        json!({
            "order": self.order(),
            "conductor": self.exponent,
            "classes": self.classes.representatives.iter().map(|r| r.to_cycle_string()).collect::<Vec<_>>(),
            "class_sizes": self.classes.sizes,
            "element_orders": self.classes.element_orders,
            "degrees": self.degrees,
            "characters": chars,
        })
    }
}

/// Fusion of the classes of `sub` into those of `parent`.
pub fn class_fusion(sub: &CharacterTable, parent: &CharacterTable) -> Result<ClassFusion> {
    if !sub.group.is_subgroup_of(&parent.group) {
        return Err(Error::NotASubgroup("fusion needs H to lie in G".into()));
    }
    let map = sub
        .classes
        .representatives
        .iter()
        .map(|h| parent.class_of(h).ok_or(Error::NotAMember))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFusion {
        map,
        sub_tag: sub.tag,
        parent_tag: parent.tag,
    })
}

/// Restriction of a class function of `parent` to the subgroup of `sub`.
pub fn restrict(
    chi: &ClassFunction,
    parent: &CharacterTable,
    sub: &CharacterTable,
    fusion: &ClassFusion,
) -> Result<ClassFunction> {
    parent.check(chi)?;
    if fusion.parent_tag != parent.tag || fusion.sub_tag != sub.tag {
        return Err(Error::GroupMismatch);
    }
    Ok(ClassFunction {
        tag: sub.tag,
        values: fusion.map.iter().map(|&c| chi.values[c].clone()).collect(),
    })
}

/// Induction `λ^P(x) = |C_P(x)| Σ λ(d) / |C_Q(d)|` over the `Q`-classes `d` fusing to the class of `x`.
pub fn induce(
    lambda: &ClassFunction,
    sub: &CharacterTable,
    parent: &CharacterTable,
    fusion: &ClassFusion,
) -> Result<ClassFunction> {
    sub.check(lambda)?;
    if fusion.parent_tag != parent.tag || fusion.sub_tag != sub.tag {
        return Err(Error::GroupMismatch);
    }
    let mut sums: Vec<CycloSum> = vec![CycloSum::new(); parent.class_count()];
    for (d, &c) in fusion.map.iter().enumerate() {
        let w = BigRational::new(
            BigInt::from(parent.classes.centralizer_order(c)),
            BigInt::from(sub.classes.centralizer_order(d)),
        );
        sums[c].add_scaled(&lambda.values[d], &w);
    }
    Ok(ClassFunction {
        tag: parent.tag,
        values: sums.into_iter().map(CycloSum::finish).collect(),
    })
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    assert!(n >= 1 && p >= 2);
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

impl ClassFusion {
    pub fn sub_tag(&self) -> u64 {
        self.sub_tag
    }

    pub fn parent_tag(&self) -> u64 {
        self.parent_tag
    }
}
