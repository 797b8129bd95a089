use indres::decomp::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn big(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn random_instance(rng: &mut ChaCha8Rng) -> DecompositionInstance {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=8);
    let columns: Vec<Vec<u64>> = (0..cols).map(|_| (0..rows).map(|_| rng.gen_range(0..=5)).collect()).collect();
    let target: Vec<u64> = if rng.gen_bool(0.5) {
        // a reachable target half of the time
        let mut t = vec![0u64; rows];
        for col in &columns {
            let k = rng.gen_range(0..=2);
            for (x, &a) in t.iter_mut().zip(col) {
                *x += k * a;
            }
        }
        t.iter().map(|&x| x.min(20)).collect()
    } else {
        (0..rows).map(|_| rng.gen_range(0..=20)).collect()
    };
    let degrees = (0..rows).map(|_| rng.gen_range(1..=4)).collect();
    DecompositionInstance::new(columns, target, degrees).unwrap()
}

/// Exhaustive enumeration of the full box `0 <= a_c <= min_j t_j / A_jc`.
fn box_oracle(inst: &DecompositionInstance) -> bool {
    let bounds: Vec<u64> = inst
        .columns
        .iter()
        .map(|col| {
            col.iter()
                .zip(&inst.target)
                .filter(|(&a, _)| a > 0)
                .map(|(&a, &t)| t / a)
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut a = vec![0u64; bounds.len()];
    loop {
        let hit = (0..inst.target.len()).all(|j| {
            inst.columns.iter().zip(&a).map(|(col, &x)| col[j] * x).sum::<u64>() == inst.target[j]
        });
        if hit {
            return true;
        }
        let mut k = 0;
        loop {
            if k == a.len() {
                return false;
            }
            if a[k] < bounds[k] {
                a[k] += 1;
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}

/// Independent lattice membership test: echelonize the columns row by row
/// with extended-gcd column operations, then reduce the target.
fn lattice_oracle(inst: &DecompositionInstance) -> bool {
    let rows = inst.target.len();
    let mut cols: Vec<Vec<BigInt>> = inst
        .columns
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; rows];
    for (j, slot) in pivots.iter_mut().enumerate() {
        loop {
            let nz: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c][j].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&c) = nz.first() {
                    *slot = Some(cols.remove(c));
                }
                break;
            }
            let (a, b) = (nz[0], nz[1]);
            let e = cols[a][j].extended_gcd(&cols[b][j]);
            let (ua, ub) = (&cols[a][j] / &e.gcd, &cols[b][j] / &e.gcd);
            let new_a: Vec<BigInt> = (0..rows).map(|r| &e.x * &cols[a][r] + &e.y * &cols[b][r]).collect();
            let new_b: Vec<BigInt> = (0..rows).map(|r| &ub * &cols[a][r] - &ua * &cols[b][r]).collect();
            cols[a] = new_a;
            cols[b] = new_b;
        }
    }
    let mut res: Vec<BigInt> = inst.target.iter().map(|&x| BigInt::from(x)).collect();
    for j in 0..rows {
        match &pivots[j] {
            Some(v) => {
                let (q, r) = res[j].div_rem(&v[j]);
                if !r.is_zero() {
                    return false;
                }
                for (x, y) in res.iter_mut().zip(v) {
                    *x -= &q * y;
                }
            }
            None => {
                if !res[j].is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn strong_solver_matches_box_enumeration_on_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut feasible = 0;
    for _ in 0..250 {
        let inst = random_instance(&mut rng);
        let v = strong_solve(&inst, 10_000_000).unwrap();
        assert_eq!(v.is_feasible(), box_oracle(&inst), "{inst:?}");
        let w = weak_solve(&inst).unwrap();
        assert_eq!(w.is_feasible(), lattice_oracle(&inst), "{inst:?}");
        if v.is_feasible() {
            feasible += 1;
            assert!(verify_witness(&inst, v.witness.as_ref().unwrap(), true).unwrap());
            assert!(w.is_feasible());
        }
        if w.is_feasible() {
            assert!(verify_witness(&inst, w.witness.as_ref().unwrap(), false).unwrap());
        }
    }
    assert!(feasible > 50, "too few feasible instances: {feasible}");
}

#[test]
fn solvers_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let inst = random_instance(&mut rng);
        assert_eq!(strong_solve(&inst, 1 << 24).unwrap(), strong_solve(&inst, 1 << 24).unwrap());
        assert_eq!(weak_solve(&inst).unwrap(), weak_solve(&inst).unwrap());
    }
}

#[test]
fn zero_target_is_feasible() {
    let inst = DecompositionInstance::new(vec![vec![1, 2], vec![3, 0]], vec![0, 0], vec![1, 1]).unwrap();
    let v = strong_solve(&inst, 100).unwrap();
    assert_eq!(v.witness, Some(vec![BigInt::zero(), BigInt::zero()]));
}

#[test]
fn dump_is_byte_stable() {
    let inst = DecompositionInstance::new(vec![vec![1, 1, 0], vec![0, 1, 1]], vec![1, 2, 1], vec![1, 1, 2]).unwrap();
    let w = weak_solve(&inst).unwrap();
    let s = strong_solve(&inst, 100).unwrap();
    let a = serde_json::to_string(&inst.to_json(Some(&w), Some(&s))).unwrap();
    let b = serde_json::to_string(&inst.to_json(Some(&w), Some(&s))).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"rows\":[[1,0],[1,1],[0,1]]"));
}

proptest! {
    #[test]
    fn smith_form_invariants(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = big(&m);
        let r = smith_normal_form(&m, rows, cols).unwrap();
        prop_assert_eq!(determinant(&r.u).abs(), BigInt::one());
        prop_assert_eq!(determinant(&r.v).abs(), BigInt::one());
        prop_assert_eq!(mat_mul(&mat_mul(&r.u, &m, rows, cols), &r.v, cols, cols), r.s.clone());
        for w in r.diagonal.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        // for square matrices |det M| is the product of the invariant factors
        if rows == cols {
            let prod: BigInt = if r.rank() == rows { r.diagonal.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(determinant(&m).abs(), prod);
        }
    }
}

#[test]
fn smith_examples() {
    let r = smith_normal_form(&big(&[vec![2, 0], vec![0, 3]]), 2, 2).unwrap();
    assert_eq!(r.s, big(&[vec![1, 0], vec![0, 6]]));
    let r = smith_normal_form(&big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), 3, 3).unwrap();
    assert_eq!(r.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
}
