//! Built-in consistency suites run by `indres selftest`.

use indres::chartab::{character_table, class_fusion, induce, restrict, CharacterTable, Cyclotomic};
use indres::checker::{brauer_nesbitt_check, cyclic_sylow_check, wilde_vanishing_check};
use indres::decomp::{strong_solve, verify_witness, weak_solve, DecompositionInstance};
use indres::families::{gl2_closed_form, make_family, sl2_closed_form, FamilyKind, FamilySpec};
use indres::permgrp::{PermGroup, Permutation};
use indres::psub::sylow_subgroup;
use indres::{Error, Limits, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn grp(n: usize, gens: &[&str]) -> Result<PermGroup> {
    let perms = gens.iter().map(|g| Permutation::parse_cycles(n, g)).collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(n, perms)
}

/// Named small groups shared by the suites.
pub fn sample_groups(limits: &Limits) -> Result<Vec<(&'static str, PermGroup)>> {
    let fam = |k, n| make_family(&FamilySpec::new(k, n), limits);
    Ok(vec![
        ("S3", grp(3, &["(1,2,3)", "(1,2)"])?),
        ("S4", grp(4, &["(1,2,3,4)", "(1,2)"])?),
        ("A4", grp(4, &["(1,2,3)", "(2,3,4)"])?),
        ("A5", grp(5, &["(1,2,3,4,5)", "(1,2,3)"])?),
        ("D8", fam(FamilyKind::Dihedral, 2)?),
        ("Q8", fam(FamilyKind::Quaternion, 2)?),
        ("SL(2,3)", fam(FamilyKind::Sl2, 3)?),
        ("SL(2,5)", fam(FamilyKind::Sl2, 5)?),
        ("F21", grp(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"])?),
        ("S5", grp(5, &["(1,2,3,4,5)", "(1,2)"])?),
    ])
}

fn suite(name: &'static str, body: impl FnOnce(&mut SuiteResult) -> Result<()>) -> SuiteResult {
    let mut r = SuiteResult { name, checks: 0, failures: Vec::new() };
    if let Err(e) = body(&mut r) {
        r.failures.push(format!("error: {e}"));
    }
    r
}

fn check(r: &mut SuiteResult, ok: bool, what: impl FnOnce() -> String) {
    r.checks += 1;
    if !ok {
        r.failures.push(what());
    }
}

/// Row and column orthogonality, exactly.
pub fn orthogonality(tables: &[(&str, CharacterTable)]) -> SuiteResult {
    suite("orthogonality", |r| {
        for (name, t) in tables {
            let irr = t.irreducibles();
            for (i, a) in irr.iter().enumerate() {
                for (j, b) in irr.iter().enumerate() {
                    let ip = t.inner_product(a, b)?;
                    let want = if i == j { 1 } else { 0 };
                    check(r, ip == BigInt::from(want).into(), || format!("{name}: <chi{i},chi{j}> = {ip}"));
                }
            }
            let sizes = &t.classes().sizes;
            for g in 0..t.class_count() {
                for h in 0..t.class_count() {
                    let mut sum = Cyclotomic::zero();
                    for chi in irr {
                        sum = &sum + &(chi.value(g) * &chi.value(h).conj());
                    }
                    let want = if g == h { (t.order() / sizes[g]) as i64 } else { 0 };
                    check(r, sum == Cyclotomic::from_int(want), || format!("{name}: columns {g},{h} give {sum}"));
                }
            }
        }
        Ok(())
    })
}

/// `⟨λ^G, θ⟩_G = ⟨λ, θ_Q⟩_Q` for every `λ` of every Sylow subgroup.
pub fn reciprocity(tables: &[(&str, CharacterTable)], limits: &Limits) -> SuiteResult {
    suite("frobenius-reciprocity", |r| {
        for (name, t) in tables {
            for p in crate::census::prime_divisors(t.order()) {
                let q = sylow_subgroup(t.group(), p, limits)?;
                let qt = character_table(&q, limits)?;
                let fusion = class_fusion(&qt, t)?;
                for lambda in qt.irreducibles() {
                    let up = induce(lambda, &qt, t, &fusion)?;
                    for theta in t.irreducibles() {
                        let down = restrict(theta, t, &qt, &fusion)?;
                        let (a, b) = (t.inner_product(&up, theta)?, qt.inner_product(lambda, &down)?);
                        check(r, a == b, || format!("{name}, p = {p}: {a} != {b}"));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Every feasible instance with nonnegative coefficients below the box bound.
fn box_feasible(inst: &DecompositionInstance) -> bool {
    let bounds: Vec<u64> = inst
        .columns
        .iter()
        .map(|c| {
            c.iter()
                .zip(&inst.target)
                .filter(|(a, _)| **a > 0)
                .map(|(a, t)| t / a)
                .min()
                .unwrap_or(0)
        })
        .collect();
    fn rec(inst: &DecompositionInstance, bounds: &[u64], c: usize, rest: &mut Vec<i64>) -> bool {
        if c == bounds.len() {
            return rest.iter().all(|&x| x == 0);
        }
        for k in 0..=bounds[c] as i64 {
            let col = &inst.columns[c];
            if rest.iter().zip(col).any(|(r, &a)| *r < k * a as i64) {
                break;
            }
            for (r, &a) in rest.iter_mut().zip(col) {
                *r -= k * a as i64;
            }
            let found = rec(inst, bounds, c + 1, rest);
            for (r, &a) in rest.iter_mut().zip(col) {
                *r += k * a as i64;
            }
            if found {
                return true;
            }
        }
        false
    }
    let mut rest: Vec<i64> = inst.target.iter().map(|&t| t as i64).collect();
    rec(inst, &bounds, 0, &mut rest)
}

/// Random instance with at most `cols` columns and `rows` rows.
pub fn random_instance(rng: &mut ChaCha8Rng, max_cols: usize, max_rows: usize, max_entry: u64, max_target: u64) -> DecompositionInstance {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|_| (0..rows).map(|_| rng.gen_range(0..=max_entry)).collect())
        .collect();
    let target = (0..rows).map(|_| rng.gen_range(0..=max_target)).collect();
    DecompositionInstance::new(columns, target, vec![1; rows]).expect("dimensions agree")
}

/// Strong solver against box enumeration, weak witnesses re-verified.
pub fn solver_oracle(seed: u64, count: usize, limits: &Limits) -> SuiteResult {
    suite("solver-oracle", |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..count {
            let inst = random_instance(&mut rng, 8, 6, 5, 20);
            let strong = strong_solve(&inst, limits.node_budget)?;
            let expected = box_feasible(&inst);
            check(r, strong.is_feasible() == expected, || format!("instance {i}: strong {} box {expected}", strong.is_feasible()));
            if let Some(w) = &strong.witness {
                check(r, verify_witness(&inst, w, true)?, || format!("instance {i}: strong witness rejected"));
            }
            let weak = weak_solve(&inst)?;
            if let Some(w) = &weak.witness {
                check(r, verify_witness(&inst, w, false)?, || format!("instance {i}: weak witness rejected"));
            }
            if strong.is_feasible() {
                check(r, weak.is_feasible(), || format!("instance {i}: strong feasible but weak infeasible"));
            }
        }
        Ok(())
    })
}

pub fn vanishing(tables: &[(&str, CharacterTable)], limits: &Limits) -> SuiteResult {
    suite("vanishing", |r| {
        for (name, t) in tables {
            for p in crate::census::prime_divisors(t.order()) {
                for (chi, ok) in brauer_nesbitt_check(t, p) {
                    check(r, ok, || format!("{name}, p = {p}: defect-zero chi{chi} does not vanish"));
                }
                if indres::psub::is_p_solvable(t.group(), p, limits)? {
                    for v in wilde_vanishing_check(t, p) {
                        check(r, false, || format!("{name}, p = {p}: chi{} on class {}", v.character, v.class));
                    }
                }
                match cyclic_sylow_check(t, p, limits) {
                    Ok(rows) => {
                        for row in rows {
                            check(r, row.passed(), || format!("{name}, p = {p}: cyclic Sylow chi{}", row.character));
                        }
                    }
                    Err(Error::PreconditionViolated(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    })
}

pub fn closed_forms(limits: &Limits) -> SuiteResult {
    suite("closed-forms", |r| {
        let sl = sl2_closed_form(5, limits)?;
        check(r, sl.passed(), || "SL(2,5) closed form".into());
        let gl = gl2_closed_form(5, limits)?;
        check(r, gl.passed(), || "GL(2,5) closed form".into());
        Ok(())
    })
}

/// All suites in a fixed order.
pub fn run_all(limits: &Limits) -> Vec<SuiteResult> {
    let tables = match sample_groups(limits).and_then(|gs| {
        gs.into_iter()
            .map(|(n, g)| Ok((n, character_table(&g, limits)?)))
            .collect::<Result<Vec<_>>>()
    }) {
        Ok(t) => t,
        Err(e) => {
            return vec![SuiteResult { name: "tables", checks: 1, failures: vec![e.to_string()] }];
        }
    };
    vec![
        orthogonality(&tables),
        reciprocity(&tables, limits),
        solver_oracle(0x5eed, 200, limits),
        vanishing(&tables, limits),
        closed_forms(limits),
    ]
}
