use std::sync::Arc;

use semirel::algebra::{
    check_axioms, check_hypothesis, Algebra, AxiomSuite, Domain, FiniteRelativeAlgebra, Hypothesis, Role,
};
use semirel::constructions::examples::{
    line, monomial_names, sign_cocycle, truncated_integration, truncated_polynomial_rb, within_degree,
};
use semirel::constructions::{
    assoc_from_dend, cocycle_twist, collapse, comm_from_zinbiel, dend_from_rb, dend_from_zinbiel,
    lie_from_prelie, poisson_from_prepoisson, prelie_from_dend, zinbiel_from_symmetric_dend, Construction,
};
use semirel::index::{Cocycle, SemigroupTable};
use semirel::{Error, LinComb, Scalar};

const D: usize = 4;

fn z2() -> Arc<SemigroupTable> {
    Arc::new(SemigroupTable::cyclic(2))
}

fn passes(alg: &Algebra<usize>, suite: AxiomSuite) -> bool {
    let r = check_axioms(alg, suite, &Domain::exhaustive(alg).unwrap()).unwrap();
    assert_eq!(r.counterexample, None, "{}", r.summary());
    r.passed
}

/// `K[t]/(t^{D+1})` over ℤ/2 with `x≺y = x·R(y)`, `x≻y = R(x)·y`, R integration.
fn rb_dendriform() -> Algebra<usize> {
    let rb = truncated_polynomial_rb(D, z2()).unwrap();
    let (prec, succ) = dend_from_rb(&rb, &[0, 1]).unwrap();
    rb.carrier()
        .empty_like()
        .with_pair(Role::Prec, prec)
        .and_then(|a| a.with_pair(Role::Succ, succ))
        .unwrap()
}

fn with(alg: &Algebra<usize>, role: Role, op: semirel::algebra::PairIndexedOp<usize>) -> Algebra<usize> {
    alg.clone().with_pair(role, op).unwrap()
}

fn monomial(k: Scalar, n: usize) -> LinComb<usize> {
    if n <= D {
        LinComb::term(k, n)
    } else {
        LinComb::zero()
    }
}

#[test]
fn rota_baxter_gives_dendriform_and_its_derived_structures() {
    let dend = rb_dendriform();
    assert!(passes(&dend, AxiomSuite::RelDendriform));
    let (prec, succ) = (dend.pair(Role::Prec).unwrap(), dend.pair(Role::Succ).unwrap());
    let mul = assoc_from_dend(prec, succ).unwrap();
    assert!(passes(&with(&dend, Role::Mul, mul), AxiomSuite::RelAssoc));
    let circ = prelie_from_dend(prec, succ).unwrap();
    assert!(passes(&with(&dend, Role::Circ, circ.clone()), AxiomSuite::RelPreLie));
    let bracket = lie_from_prelie(&circ).unwrap();
    assert!(passes(&with(&dend, Role::Bracket, bracket), AxiomSuite::RelLie));
}

#[test]
fn rota_baxter_dendriform_constants() {
    let dend = rb_dendriform();
    let (prec, succ) = (dend.pair(Role::Prec).unwrap(), dend.pair(Role::Succ).unwrap());
    let mul = assoc_from_dend(prec, succ).unwrap();
    for m in 0..=D {
        for n in 0..=D {
            let k = |j: usize| Scalar::new(1, j as i64 + 1);
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                // t^m · R(t^n) and R(t^m) · t^n; independent of the indices
                assert_eq!(prec.apply_basis(a, b, &m, &n).unwrap(), monomial(k(n), m + n + 1));
                assert_eq!(succ.apply_basis(a, b, &m, &n).unwrap(), monomial(k(m), m + n + 1));
                assert_eq!(mul.apply_basis(a, b, &m, &n).unwrap(), monomial(&k(m) + &k(n), m + n + 1));
            }
        }
    }
}

#[test]
fn rota_baxter_failure_is_refused() {
    let mut rb = truncated_polynomial_rb(2, z2()).unwrap();
    let id: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| Scalar::from_integer((i == j) as i64)).collect()).collect();
    rb = semirel::algebra::RotaBaxterFamily::from_matrices(rb.carrier().clone(), [(0, id.clone()), (1, id)].into()).unwrap();
    assert!(matches!(dend_from_rb(&rb, &[0, 1]), Err(Error::PreconditionFailed { .. })));
}

/// `(∫₀ᵗ t^m)·t^n`, truncated.
fn integral_times(m: usize, n: usize) -> LinComb<usize> {
    monomial(Scalar::new(1, m as i64 + 1), m + n + 1)
}

fn zinbiel_domain(alg: &Algebra<usize>, d: usize) -> Domain<usize> {
    Domain::exhaustive(alg).unwrap().retain_basis(within_degree(d))
}

#[test]
fn zinbiel_chain_on_truncated_integration() {
    let alg = truncated_integration(D).to_algebra();
    let domain = zinbiel_domain(&alg, D);
    let ast = alg.pair(Role::Ast).unwrap();
    for m in 0..=D {
        for n in 0..=D {
            assert_eq!(ast.apply_basis(0, 0, &m, &n).unwrap(), integral_times(m, n));
        }
    }
    assert!(check_axioms(&alg, AxiomSuite::RelZinbiel, &domain).unwrap().passed);

    let (prec, succ) = dend_from_zinbiel(ast).unwrap();
    let dend = alg.empty_like().with_pair(Role::Prec, prec).unwrap().with_pair(Role::Succ, succ).unwrap();
    assert!(check_axioms(&dend, AxiomSuite::RelDendriform, &domain).unwrap().passed);
    assert!(check_hypothesis(&dend, Hypothesis::RelSymmetric, &domain).unwrap().passed);
    let back = zinbiel_from_symmetric_dend(&dend, &domain).unwrap();
    for m in 0..=D {
        for n in 0..=D {
            assert_eq!(back.apply_basis(0, 0, &m, &n).unwrap(), ast.apply_basis(0, 0, &m, &n).unwrap());
        }
    }

    let mul = comm_from_zinbiel(ast).unwrap();
    for m in 0..=D {
        for n in 0..=D {
            let want = integral_times(m, n).add(&integral_times(n, m));
            assert_eq!(mul.apply_basis(0, 0, &m, &n).unwrap(), want);
        }
    }
    let comm = alg.empty_like().with_pair(Role::Mul, mul).unwrap();
    assert!(check_axioms(&comm, AxiomSuite::RelComm, &domain).unwrap().passed);
}

#[test]
fn degenerate_pre_poisson_structures() {
    let mut fin = truncated_integration(D);
    fin.pair_op_mut(Role::Circ);
    let alg = fin.to_algebra();
    let domain = zinbiel_domain(&alg, D);
    let (mul, bracket) = poisson_from_prepoisson(&alg, &domain).unwrap();
    for m in 0..=D {
        for n in 0..=D {
            assert!(bracket.apply_basis(0, 0, &m, &n).unwrap().is_zero());
        }
    }
    let poisson = alg.empty_like().with_pair(Role::Mul, mul).unwrap().with_pair(Role::Bracket, bracket).unwrap();
    assert!(check_axioms(&poisson, AxiomSuite::RelPoisson, &domain).unwrap().passed);

    // zero zinbiel with the pre-Lie product of the Rota–Baxter example
    let dend = rb_dendriform();
    let circ = prelie_from_dend(dend.pair(Role::Prec).unwrap(), dend.pair(Role::Succ).unwrap()).unwrap();
    let zero = semirel::algebra::PairIndexedOp::zero(dend.index().clone());
    let pre = dend.empty_like().with_pair(Role::Circ, circ).unwrap().with_pair(Role::Ast, zero).unwrap();
    let domain = Domain::exhaustive(&pre).unwrap();
    let (mul, bracket) = poisson_from_prepoisson(&pre, &domain).unwrap();
    let poisson = pre.empty_like().with_pair(Role::Mul, mul.clone()).unwrap().with_pair(Role::Bracket, bracket).unwrap();
    assert!(check_axioms(&poisson, AxiomSuite::RelPoisson, &domain).unwrap().passed);
    assert!(mul.apply_basis(1, 0, &1, &2).unwrap().is_zero());
}

#[test]
fn pre_poisson_precondition_is_checked() {
    let mut fin = truncated_integration(2);
    fin.pair_op_mut(Role::Circ).set(0, 0, 0, 0, Scalar::one());
    fin.pair_op_mut(Role::Circ).set(0, 1, 0, 2, Scalar::one());
    let alg = fin.to_algebra();
    let err = poisson_from_prepoisson(&alg, &Domain::exhaustive(&alg).unwrap()).unwrap_err();
    assert!(matches!(err, Error::PreconditionFailed { .. }), "{err}");
    assert_eq!(err.exit_code(), 3);
}

fn polynomial_base(index: Arc<SemigroupTable>) -> FiniteRelativeAlgebra {
    let n = index.size();
    let mut alg = FiniteRelativeAlgebra::new(monomial_names(2), index);
    for slot in 0..n * n {
        for i in 0..3 {
            for j in 0..3 - i {
                alg.pair_op_mut(Role::Mul).set(slot, i, j, i + j, Scalar::one());
            }
        }
    }
    alg
}

#[test]
fn cocycle_twists() {
    let base = polynomial_base(Arc::new(SemigroupTable::trivial()));
    let twisted = cocycle_twist(&base, &sign_cocycle()).unwrap();
    assert!(passes(&twisted.to_algebra(), AxiomSuite::RelAssoc));
    for (a, b, k) in [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)] {
        assert_eq!(twisted.pair_product(Role::Mul, a, b, 1, 1).unwrap(), LinComb::term(Scalar::from_integer(k), 2));
    }
    let one = Cocycle::constant_one(z2());
    let plain = cocycle_twist(&base, &one).unwrap();
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(plain.pair_product(Role::Mul, a, b, i, j), base.pair_product(Role::Mul, 0, 0, i, j));
            }
        }
    }
    let bad = Cocycle::new(z2(), vec![vec![Scalar::one(), Scalar::from_integer(2)], vec![Scalar::one(), Scalar::one()]]).unwrap();
    assert!(cocycle_twist(&base, &bad).is_err());
}

fn materialized_rb_dendriform() -> FiniteRelativeAlgebra {
    FiniteRelativeAlgebra::materialize(&rb_dendriform(), monomial_names(D)).unwrap()
}

#[test]
fn collapse_of_a_dendriform_algebra() {
    let dend = materialized_rb_dendriform();
    let flat = collapse(&dend).unwrap();
    assert_eq!(flat.dim(), 2 * (D + 1));
    assert_eq!(flat.index().size(), 1);
    assert!(passes(&flat.to_algebra(), AxiomSuite::RelDendriform));
}

#[test]
fn collapse_commutes_with_the_associative_sum() {
    let dend = materialized_rb_dendriform();
    let derive_then_collapse = collapse(&Construction::AssocFromDend.apply(&dend).unwrap()).unwrap();
    let collapse_then_derive = Construction::AssocFromDend.apply(&collapse(&dend).unwrap()).unwrap();
    let (a, b) = (
        derive_then_collapse.pair_op(Role::Mul).unwrap(),
        collapse_then_derive.pair_op(Role::Mul).unwrap(),
    );
    assert_eq!(a, b);
    assert_eq!(derive_then_collapse.basis(), collapse_then_derive.basis());
}

#[test]
fn collapse_of_the_trivial_monoid_keeps_the_product() {
    let base = polynomial_base(Arc::new(SemigroupTable::trivial()));
    let flat = collapse(&base).unwrap();
    assert_eq!(flat.dim(), 3);
    assert_eq!(flat.pair_op(Role::Mul), base.pair_op(Role::Mul));
}

#[test]
fn constructions_check_their_index() {
    let left_zero = Arc::new(
        SemigroupTable::new(vec!["p".into(), "q".into()], vec![vec![0, 0], vec![1, 1]], None, false).unwrap(),
    );
    let mut alg = line(left_zero);
    alg.pair_op_mut(Role::Prec);
    alg.pair_op_mut(Role::Succ);
    alg.pair_op_mut(Role::Ast);
    alg.pair_op_mut(Role::Circ);
    assert!(Construction::AssocFromDend.apply(&alg).is_ok());
    for c in [
        Construction::PrelieFromDend,
        Construction::DendFromZinbiel,
        Construction::CommFromZinbiel,
        Construction::LieFromPrelie,
        Construction::PoissonFromPrepoisson,
    ] {
        assert!(matches!(c.apply(&alg), Err(Error::NonCommutativeIndex(_))), "{c}");
    }
    let other = line(z2()).to_algebra();
    let mine = alg.to_algebra();
    assert!(matches!(
        assoc_from_dend(mine.pair(Role::Prec).unwrap(), other.pair(Role::Mul).unwrap()),
        Err(Error::IndexMismatch(_))
    ));
}
