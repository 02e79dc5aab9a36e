use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use semirel::algebra::{check_axioms, AxiomSuite, Domain, FiniteRelativeAlgebra, Role};
use semirel::free::{random_tree_seeded, FreeDendCarrier, Tree};
use semirel::index::{matching_dimonoid, SemigroupTable};
use semirel::linear::bilinear_extend;
use semirel::{LinComb, Scalar};

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `p/q` in lowest terms with a positive denominator.
fn reduced(p: i128, q: i128) -> String {
    let g = gcd(p, q);
    let s = if q < 0 { -1 } else { 1 };
    format!("{}/{}", s * p / g, s * q / g)
}

fn scalar() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..=50, 1i64..=12)
}

fn lincomb() -> impl Strategy<Value = LinComb<u8>> {
    prop::collection::vec((0u8..6, scalar()), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(b, (p, q))| (b, Scalar::new(p, q))).collect())
}

fn op(u: &u8, v: &u8, shift: u8) -> Result<LinComb<u8>, ()> {
    let mut out = LinComb::term(Scalar::new(*u as i64 - *v as i64, 2), (u + v + shift) % 5);
    out.add_term(Scalar::one(), u * v % 5);
    Ok(out)
}

proptest! {
    #[test]
    fn scalar_arithmetic_is_exact((a, b) in scalar(), (c, d) in scalar()) {
        let (x, y) = (Scalar::new(a, b), Scalar::new(c, d));
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        prop_assert_eq!((&x + &y).to_string(), reduced(a * d + b * c, b * d));
        prop_assert_eq!((&x - &y).to_string(), reduced(a * d - b * c, b * d));
        prop_assert_eq!((&x * &y).to_string(), reduced(a * c, b * d));
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn addition_is_commutative_and_associative(a in lincomb(), b in lincomb(), c in lincomb()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn scaling_distributes((p, q) in scalar(), a in lincomb(), b in lincomb()) {
        let k = Scalar::new(p, q);
        prop_assert_eq!(a.add(&b).scale(&k), a.scale(&k).add(&b.scale(&k)));
        prop_assert!(a.scale(&Scalar::zero()).is_zero());
        prop_assert_eq!(a.scale(&Scalar::one()), a.clone());
    }

    #[test]
    fn no_zero_coefficients_are_stored(a in lincomb(), b in lincomb()) {
        for v in [a.add(&b), a.sub(&b), a.add(&a.neg())] {
            prop_assert!(v.iter().all(|(_, k)| !k.is_zero()));
        }
    }

    #[test]
    fn bilinear_extension_is_linear(a1 in lincomb(), a2 in lincomb(), b in lincomb(), shift in 0u8..3) {
        let ext = |x: &LinComb<u8>, y: &LinComb<u8>| bilinear_extend(op, x, y, shift).unwrap();
        prop_assert_eq!(ext(&a1.add(&a2), &b), ext(&a1, &b).add(&ext(&a2, &b)));
        prop_assert_eq!(ext(&b, &a1.add(&a2)), ext(&b, &a1).add(&ext(&b, &a2)));
    }

    #[test]
    fn lincomb_json_round_trip(a in lincomb()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: LinComb<u8> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

fn edge(e: Option<usize>) -> u32 {
    e.map_or(0, |e| e as u32 + 1)
}

fn shape_cmp(s: &Tree, t: &Tree) -> Ordering {
    match (s.root(), t.root()) {
        (Some(a), Some(b)) => a
            .left_tree()
            .size()
            .cmp(&b.left_tree().size())
            .then_with(|| shape_cmp(a.left_tree(), b.left_tree()))
            .then_with(|| shape_cmp(a.right_tree(), b.right_tree())),
        _ => Ordering::Equal,
    }
}

fn label_cmp(s: &Tree, t: &Tree) -> Ordering {
    match (s.root(), t.root()) {
        (Some(a), Some(b)) => a
            .label()
            .cmp(&b.label())
            .then(edge(a.left_edge()).cmp(&edge(b.left_edge())))
            .then(edge(a.right_edge()).cmp(&edge(b.right_edge())))
            .then_with(|| label_cmp(a.left_tree(), b.left_tree()))
            .then_with(|| label_cmp(a.right_tree(), b.right_tree())),
        _ => Ordering::Equal,
    }
}

fn reference_cmp(s: &Tree, t: &Tree) -> Ordering {
    s.size().cmp(&t.size()).then_with(|| shape_cmp(s, t)).then_with(|| label_cmp(s, t))
}

fn carrier() -> FreeDendCarrier {
    FreeDendCarrier::over_dimonoid(vec!["x".into(), "y".into()], matching_dimonoid(2).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn tree_order_matches_reference(s in any::<u64>(), t in any::<u64>(), m in 1usize..7) {
        let (a, b) = (random_tree_seeded(2, 2, m, s), random_tree_seeded(2, 2, 6, t));
        prop_assert_eq!(a.cmp(&b), reference_cmp(&a, &b));
        prop_assert_eq!(a == b, reference_cmp(&a, &b) == Ordering::Equal);
    }

    #[test]
    fn tree_text_round_trip(s in any::<u64>(), m in 1usize..9) {
        let c = carrier();
        let t = random_tree_seeded(2, 2, m, s);
        prop_assert!(t.size() >= 1 && t.size() <= m);
        let text = c.print(&t);
        prop_assert_eq!(c.parse(&text).unwrap(), t);
    }

    #[test]
    fn products_are_graded(s in any::<u64>(), t in any::<u64>(), a in 0usize..2) {
        let c = carrier();
        let (x, y) = (random_tree_seeded(2, 2, 5, s), random_tree_seeded(2, 2, 5, t));
        for v in [c.prec_basis(&x, &y, a).unwrap(), c.succ_basis(&x, &y, a).unwrap()] {
            prop_assert!(!v.is_zero());
            prop_assert!(v.support().all(|u| u.size() == x.size() + y.size()));
            prop_assert!(v.iter().all(|(_, k)| k.is_one()));
        }
    }
}

/// `K[t]/(t³)` over the trivial monoid.
fn truncated_polynomials() -> [[[i64; 3]; 3]; 3] {
    let mut c = [[[0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 - i {
            c[i][j][i + j] = 1;
        }
    }
    c
}

fn algebra(c: &[[[i64; 3]; 3]; 3], perm: &[usize]) -> FiniteRelativeAlgebra {
    let names = (0..3).map(|i| format!("b{i}")).collect();
    let mut alg = FiniteRelativeAlgebra::new(names, Arc::new(SemigroupTable::trivial()));
    let t = alg.pair_op_mut(Role::Mul);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                t.set(0, perm[i], perm[j], perm[k], Scalar::from_integer(c[i][j][k]));
            }
        }
    }
    alg
}

fn passes(alg: &FiniteRelativeAlgebra, suite: AxiomSuite) -> bool {
    let a = alg.to_algebra();
    check_axioms(&a, suite, &Domain::exhaustive(&a).unwrap()).unwrap().passed
}

proptest! {
    #[test]
    fn pass_fail_is_invariant_under_basis_relabelling(
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        mutate in prop::option::of((0usize..3, 0usize..3, 0usize..3, -1i64..=1)),
    ) {
        let mut c = truncated_polynomials();
        if let Some((i, j, k, v)) = mutate {
            c[i][j][k] = v;
        }
        for suite in [AxiomSuite::RelAssoc, AxiomSuite::RelComm] {
            prop_assert_eq!(passes(&algebra(&c, &[0, 1, 2]), suite), passes(&algebra(&c, &perm), suite));
        }
    }
}
