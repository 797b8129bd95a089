use indres::chartab::{character_table, p_part};
use indres::checker::{check_group, quotient_metamorphic_check, Mode, VerdictStatus};
use indres::families::*;
use indres::psub::sylow_subgroup;
use indres::{Error, Limits};
use num_traits::{One, Zero};

fn spec(kind: &str, param: u64) -> FamilySpec {
    FamilySpec::new(FamilyKind::parse(kind).unwrap(), param)
}

#[test]
fn orders_and_fingerprints() {
    let l = Limits::default();
    let cases: &[(&str, &[u64])] = &[
        ("dihedral", &[1, 2, 3, 4, 5, 6, 7]),
        ("quaternion", &[2, 3, 4, 5, 6, 7]),
        ("semidihedral", &[3, 4, 5, 6, 7]),
        ("wreath", &[1, 2, 3, 4]),
        ("sl2", &[3, 4, 5, 7, 8, 9, 11, 13]),
        ("psl2", &[3, 4, 5, 7, 8, 9, 11, 13]),
        ("gl2", &[3, 5, 7, 9]),
    ];
    for (kind, params) in cases {
        for &n in *params {
            let s = spec(kind, n);
            let g = make_family(&s, &l).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(g.order(), s.order(), "{s}");
        }
    }
    assert_eq!(spec("sl2", 5).order(), 120);
    assert_eq!(spec("gl2", 5).order(), 480);
    assert_eq!(spec("psl2", 7).order(), 168);
    assert_eq!(spec("semidihedral", 3).order(), 16);
    assert_eq!(spec("wreath", 2).order(), 32);
}

#[test]
fn unsupported_parameters() {
    let l = Limits::default();
    for (kind, n) in [("dihedral", 0), ("quaternion", 1), ("semidihedral", 2), ("sl2", 6), ("gl2", 11), ("wreath", 5)] {
        assert!(matches!(make_family(&spec(kind, n), &l), Err(Error::UnsupportedParameter(_))), "{kind} {n}");
    }
    assert!(FamilyKind::parse("cyclic").is_err());
    assert!(matches!(sl2_closed_form(3, &l), Err(Error::UnsupportedParameter(_))));
    assert!(matches!(gl2_closed_form(11, &l), Err(Error::UnsupportedParameter(_))));
}

#[test]
fn small_members() {
    let l = Limits::default();
    let q8 = make_family(&spec("quaternion", 2), &l).unwrap();
    let involutions = q8.elements(1000).unwrap().iter().filter(|e| e.order() == 2).count();
    assert_eq!(involutions, 1);
    let sl = make_family(&spec("sl2", 5), &l).unwrap();
    assert_eq!(sl.center(1000).unwrap().order(), 2);
    let gl = make_family(&spec("gl2", 5), &l).unwrap();
    assert_eq!(sylow_subgroup(&gl, 2, &l).unwrap().order(), 32);
    // SL(2,3) has quaternion Sylow 2-subgroup, GL(2,3) semidihedral of order 16
    let sl3 = make_family(&spec("sl2", 3), &l).unwrap();
    let p = sylow_subgroup(&sl3, 2, &l).unwrap();
    assert_eq!(p.elements(100).unwrap().iter().filter(|e| e.order() == 2).count(), 1);
    let gl3 = make_family(&spec("gl2", 3), &l).unwrap();
    let p = sylow_subgroup(&gl3, 2, &l).unwrap();
    assert_eq!((p.order(), p.center(100).unwrap().order(), p.exponent(100).unwrap()), (16, 2, 8));
    assert_eq!(p.elements(100).unwrap().iter().filter(|e| e.order() == 2).count(), 5);
}

#[test]
fn two_groups_are_strong() {
    let l = Limits::default();
    for s in [spec("dihedral", 3), spec("quaternion", 3), spec("semidihedral", 3), spec("wreath", 2)] {
        let g = make_family(&s, &l).unwrap();
        let t = character_table(&g, &l).unwrap();
        for v in check_group(&t, 2, Mode::Both, &l).unwrap() {
            let ok = matches!(v.status(), VerdictStatus::Strong | VerdictStatus::Trivial);
            assert!(ok, "{s} chi{}", v.character);
        }
    }
}

#[test]
fn sl2_closed_forms() {
    let l = Limits::default();
    for q in [5, 7, 9, 11, 13] {
        let r = sl2_closed_form(q, &l).unwrap();
        let eps: i64 = if q % 4 == 1 { 1 } else { -1 };
        assert_eq!(r.two_power, p_part((q as i64 - eps) as u64, 2), "q = {q}");
        assert_eq!(r.sylow_order, 2 * r.two_power);
        for row in &r.rows {
            assert!(row.passed(), "SL(2,{q}) chi{} {}", row.expectation.character, row.expectation.label);
        }
        assert!(r.uncovered.iter().all(|&(_, ok)| ok));
        assert!(r.rows.iter().any(|row| row.expectation.label.starts_with("psi_1")));
        assert!(r.rows.iter().any(|row| row.expectation.label.starts_with("psi_2")));
    }
    // q = 5: psi_1 has degree 4 and restricts to exactly one (λ_Z)^{Q_8}
    let r = sl2_closed_form(5, &l).unwrap();
    let psi1 = r.rows.iter().find(|row| row.expectation.label.starts_with("psi_1")).unwrap();
    assert_eq!(psi1.expectation.degree, 4);
    let Claim::Identity(terms) = &psi1.expectation.claim else { panic!() };
    assert!(terms[0].coefficient.is_one());
    assert_eq!(psi1.witness_accepted, Some(true));
    // q = 7: the Q_16 case, coefficient (q+1)/2^n = 1; the even-k identity is exercised
    let r = sl2_closed_form(7, &l).unwrap();
    assert_eq!(r.sylow_order, 16);
    let psi1 = r.rows.iter().find(|row| row.expectation.label.starts_with("psi_1")).unwrap();
    let Claim::Identity(terms) = &psi1.expectation.claim else { panic!() };
    assert!(terms[0].coefficient.is_one());
    assert!(r.rows.iter().any(|row| row.expectation.parameter.is_some_and(|k| k % 2 == 0) && row.holds));
}

#[test]
fn gl2_split_case_closed_forms() {
    let l = Limits::default();
    for q in [5, 9] {
        let r = gl2_closed_form(q, &l).unwrap();
        assert_eq!(r.sylow_order, 2 * r.two_power * r.two_power);
        assert!(!r.rows.is_empty());
        for row in &r.rows {
            assert!(row.passed(), "GL(2,{q}) chi{} {}", row.expectation.character, row.expectation.label);
        }
        assert!(r.passed());
    }
    // q = 5, l even: (q−1−2^n)/2^{n+1} = 0 leaves the single column (λ^{l+4})^P
    let r = gl2_closed_form(5, &l).unwrap();
    let even: Vec<_> = r.rows.iter().filter(|row| row.expectation.parameter.unwrap() % 2 == 0).collect();
    assert!(!even.is_empty());
    for row in even {
        let Claim::Identity(terms) = &row.expectation.claim else { panic!() };
        assert!(terms[0].coefficient.is_zero());
        assert!(terms[1].coefficient.is_one());
        assert!(row.holds && row.witness_accepted == Some(true));
    }
    // both parities of l occur for q = 9
    let r = gl2_closed_form(9, &l).unwrap();
    assert!(r.rows.iter().any(|row| row.expectation.parameter.unwrap() % 2 == 0));
    assert!(r.rows.iter().any(|row| row.expectation.parameter.unwrap() % 2 == 1));
}

#[test]
fn gl2_semidihedral_case() {
    let l = Limits::default();
    for q in [3, 7] {
        let r = gl2_closed_form(q, &l).unwrap();
        assert_eq!(r.sylow_order, 2 * r.two_power);
        for row in &r.rows {
            // the generic solver decides every character regardless of the closed form
            assert!(row.generic_strong, "GL(2,{q}) chi{}", row.expectation.character);
            if row.expectation.parameter.unwrap() % 2 == 1 {
                assert!(row.holds, "GL(2,{q}) chi{} odd k", row.expectation.character);
            } else {
                // the stated even-k identity disagrees with χ_P at z: the sum is −(q−1) there
                assert!(!row.holds, "GL(2,{q}) chi{} even k", row.expectation.character);
            }
        }
        assert!(r.uncovered.iter().all(|&(_, ok)| ok));
    }
}

#[test]
fn psl2_agrees_with_sl2_mod_center() {
    let l = Limits::default();
    for q in [5, 7] {
        let sl = make_family(&spec("sl2", q), &l).unwrap();
        let t = character_table(&sl, &l).unwrap();
        let z = sl.center(l.element_cap).unwrap();
        let report = quotient_metamorphic_check(&t, &z, 2, &l).unwrap();
        assert_eq!(report.quotient_order, spec("psl2", q).order());
        assert!(report.holds());
        let psl = make_family(&spec("psl2", q), &l).unwrap();
        let pt = character_table(&psl, &l).unwrap();
        let mut direct: Vec<(u64, VerdictStatus)> = check_group(&pt, 2, Mode::Both, &l)
            .unwrap()
            .iter()
            .map(|v| (v.degree, v.status()))
            .collect();
        let mut via: Vec<(u64, VerdictStatus)> = report
            .pairs
            .iter()
            .map(|p| p.quotient_verdict.as_ref().unwrap())
            .map(|v| (v.degree, v.status()))
            .collect();
        direct.sort_by_key(|x| (x.0, x.1.as_str()));
        via.sort_by_key(|x| (x.0, x.1.as_str()));
        assert_eq!(direct, via, "PSL(2,{q})");
    }
}
