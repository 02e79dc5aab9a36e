use std::collections::BTreeMap;
use std::sync::Arc;

use semirel::algebra::{
    check_axioms, check_morphism, check_rota_baxter, AlgebraJson, AxiomSuite, Domain, FiniteRelativeAlgebra,
    MorphismFamily, RotaBaxterFamily, Role,
};
use semirel::constructions::examples::{harmonic_rota_baxter, line, sign_twisted_line};
use semirel::constructions::fam_dend_from_zinbiel;
use semirel::index::SemigroupTable;
use semirel::report::Side;
use semirel::{json, Error, Scalar};

const ROLES: [Role; 6] = [Role::Mul, Role::Prec, Role::Succ, Role::Ast, Role::Circ, Role::Bracket];

fn zero_algebra(index: SemigroupTable) -> FiniteRelativeAlgebra {
    let mut alg = FiniteRelativeAlgebra::new(vec!["u".into(), "v".into()], Arc::new(index));
    for role in ROLES {
        alg.pair_op_mut(role);
        alg.family_op_mut(role);
    }
    alg
}

fn check(alg: &FiniteRelativeAlgebra, suite: AxiomSuite) -> semirel::Result<semirel::Report> {
    let a = alg.to_algebra();
    check_axioms(&a, suite, &Domain::exhaustive(&a)?)
}

#[test]
fn zero_algebra_passes_every_applicable_suite() {
    let alg = zero_algebra(SemigroupTable::cyclic(2));
    for suite in AxiomSuite::ALL {
        if suite == AxiomSuite::RelUnital {
            continue;
        }
        let r = check(&alg, suite).unwrap();
        assert!(r.passed, "{}", r.summary());
        let tuples = if suite.is_family() { 4 } else { 8 };
        assert_eq!(r.instances, tuples * 8, "{suite}");
    }
}

fn non_commutative() -> SemigroupTable {
    // left-zero band: a·b = a
    SemigroupTable::new(vec!["p".into(), "q".into()], vec![vec![0, 0], vec![1, 1]], None, false).unwrap()
}

#[test]
fn symmetric_suites_need_a_commutative_index() {
    let alg = zero_algebra(non_commutative());
    for suite in AxiomSuite::ALL {
        let r = check(&alg, suite);
        if suite.requires_commutative() {
            assert!(matches!(r, Err(Error::NonCommutativeIndex(_))), "{suite}");
        } else if suite != AxiomSuite::RelUnital {
            assert!(r.unwrap().passed, "{suite}");
        }
    }
}

#[test]
fn missing_roles_are_reported() {
    let alg = FiniteRelativeAlgebra::new(vec!["u".into()], Arc::new(SemigroupTable::cyclic(2)));
    assert!(matches!(check(&alg, AxiomSuite::RelDendriform), Err(Error::MissingRole(_))));
    let alg = line(Arc::new(SemigroupTable::trivial()));
    assert!(matches!(check(&alg, AxiomSuite::RelUnital), Err(Error::MissingRole(_))));
}

#[test]
fn unital_line() {
    let mut alg = line(Arc::new(SemigroupTable::trivial()));
    alg.set_unit(Some(vec![Scalar::one()])).unwrap();
    assert!(check(&alg, AxiomSuite::RelUnital).unwrap().passed);
    alg.set_unit(Some(vec![Scalar::new(1, 2)])).unwrap();
    let cx = check(&alg, AxiomSuite::RelUnital).unwrap().counterexample.unwrap();
    assert_eq!(cx.lhs, Side::Combination(vec![("1/2".into(), "x".into())]));
}

#[test]
fn infinite_index_needs_a_window() {
    let alg = harmonic_rota_baxter().carrier().clone();
    assert!(matches!(Domain::exhaustive(&alg), Err(Error::NoWindow)));
}

/// `t^m ∗_α t^n = t^{m+n+1}/(m+1)` for both α in ℤ/2, truncated at degree d.
fn integration_family(d: usize) -> FiniteRelativeAlgebra {
    let names = (0..=d).map(|m| format!("t{m}")).collect();
    let mut alg = FiniteRelativeAlgebra::new(names, Arc::new(SemigroupTable::cyclic(2)));
    let t = alg.family_op_mut(Role::Ast);
    for slot in 0..2 {
        for m in 0..=d {
            for n in 0..d - m {
                t.set(slot, m, n, m + n + 1, Scalar::new(1, m as i64 + 1));
            }
        }
    }
    alg
}

#[test]
fn family_structures_lift_to_pair_indexed_ones() {
    let d = 6;
    let fam = integration_family(d);
    let carrier = fam.to_algebra();
    let domain = Domain::exhaustive(&carrier).unwrap().retain_basis(|t| t[0] + t[1] + t[2] + 2 <= d);
    assert!(check_axioms(&carrier, AxiomSuite::FamZinbiel, &domain).unwrap().passed);
    let lifted = carrier.clone().lift_family().unwrap();
    assert!(check_axioms(&lifted, AxiomSuite::RelZinbiel, &domain).unwrap().passed);

    let (prec, succ) = fam_dend_from_zinbiel(carrier.family(Role::Ast).unwrap()).unwrap();
    let dend = carrier
        .empty_like()
        .with_family(Role::Prec, prec)
        .and_then(|a| a.with_family(Role::Succ, succ))
        .unwrap();
    assert!(check_axioms(&dend, AxiomSuite::FamDendriform, &domain).unwrap().passed);
    let lifted = dend.lift_family().unwrap();
    assert!(check_axioms(&lifted, AxiomSuite::RelDendriform, &domain).unwrap().passed);
}

#[test]
fn truncated_family_is_zinbiel_on_every_triple() {
    let d = 4;
    let carrier = integration_family(d).to_algebra();
    let r = check_axioms(&carrier, AxiomSuite::FamZinbiel, &Domain::exhaustive(&carrier).unwrap()).unwrap();
    // every term of both sides has degree i+j+k+2, so truncation drops them together
    assert!(r.passed);
}

fn identity_rb() -> RotaBaxterFamily<usize> {
    let alg = line(Arc::new(SemigroupTable::trivial())).to_algebra();
    RotaBaxterFamily::from_matrices(alg, BTreeMap::from([(0, vec![vec![Scalar::one()]])])).unwrap()
}

#[test]
fn rota_baxter_identity_fails_for_the_identity_map() {
    let cx = check_rota_baxter(&identity_rb(), &[0]).unwrap().counterexample.unwrap();
    assert_eq!(cx.lhs, Side::Combination(vec![("1/1".into(), "x".into())]));
    assert_eq!(cx.rhs, Side::Combination(vec![("2/1".into(), "x".into())]));
}

#[test]
fn harmonic_family_on_windows() {
    let rb = harmonic_rota_baxter();
    for w in [1usize, 5, 20] {
        let window: Vec<usize> = (1..=w).collect();
        let r = check_rota_baxter(&rb, &window).unwrap();
        assert!(r.passed);
        assert_eq!(r.instances, (w * w) as u64);
    }
    assert!(matches!(check_rota_baxter(&rb, &[0, 1]), Err(Error::WindowClosure(_))));
}

#[test]
fn scalar_morphisms_of_the_sign_twist() {
    let alg = sign_twisted_line();
    let f = |k: i64| {
        let fam = MorphismFamily::scalar_family(alg.clone(), &[Scalar::one(), Scalar::from_integer(k)]).unwrap();
        check_morphism(&fam, AxiomSuite::RelAssoc).unwrap().passed
    };
    assert!(f(1) && f(-1));
    assert!(!f(2) && !f(0));
}

#[test]
fn no_scalar_morphism_untwists_the_sign_cocycle() {
    // λ(α+β) = c(α,β)λ(α)λ(β) would need λ(1)² = −1
    let plain = line(Arc::new(SemigroupTable::cyclic(2)));
    let twisted = sign_twisted_line();
    for k in [-2, -1, 1, 2] {
        let maps = [1, k].map(|k| vec![vec![Scalar::from_integer(k)]]).to_vec();
        let fam = MorphismFamily::new(plain.clone(), twisted.clone(), maps).unwrap();
        assert!(!check_morphism(&fam, AxiomSuite::RelAssoc).unwrap().passed);
    }
}

#[test]
fn morphism_shape_errors() {
    let alg = sign_twisted_line();
    let one = vec![vec![Scalar::one()]];
    assert!(matches!(
        MorphismFamily::new(alg.clone(), alg.clone(), vec![one.clone()]),
        Err(Error::DimensionMismatch(_))
    ));
    let wide = vec![vec![Scalar::one(), Scalar::one()]];
    assert!(matches!(
        MorphismFamily::new(alg.clone(), alg.clone(), vec![one, wide]),
        Err(Error::DimensionMismatch(_))
    ));
    let other = line(Arc::new(SemigroupTable::trivial()));
    assert!(matches!(
        MorphismFamily::new(alg, other, vec![]),
        Err(Error::IndexMismatch(_))
    ));
}

#[test]
fn algebra_json_round_trip() {
    let alg = sign_twisted_line();
    let text = serde_json::to_string_pretty(&alg.to_json()).unwrap();
    let back = json::from_str::<AlgebraJson>(&text).unwrap().into_algebra(None).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back.to_json()).unwrap(), text);
    assert_eq!(back.pair_product(Role::Mul, 1, 1, 0, 0).unwrap().coeff(&0), Scalar::from_integer(-1));
}

#[test]
fn algebra_json_schema_errors_name_the_field() {
    let mut v = serde_json::to_value(sign_twisted_line().to_json()).unwrap();
    v["ops"]["mul"]["(0,1)"] = serde_json::json!([[["1/1", "0/1"]]]);
    let err = json::from_str::<AlgebraJson>(&v.to_string()).unwrap().into_algebra(None).unwrap_err();
    match err {
        Error::Schema { path, .. } => assert!(path.starts_with("ops.mul.(0,1)"), "{path}"),
        other => panic!("{other}"),
    }
    let err = json::from_str::<AlgebraJson>(r#"{"dim": "one"}"#).unwrap_err();
    assert!(matches!(err, Error::Schema { ref path, .. } if path == "dim"), "{err}");
    assert_eq!(err.exit_code(), 2);
}
