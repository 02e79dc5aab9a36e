//! Derived structures: every operation here is a lazy wrapper over its
//! inputs, so the constructions apply to finite and free carriers alike.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{
    check_axioms, check_hypothesis, check_rota_baxter, Algebra, AxiomSuite, Domain,
    FamilyIndexedOp, FiniteRelativeAlgebra, Hypothesis, PairIndexedOp, RotaBaxterFamily, Role,
};
use crate::error::{Error, Result};
use crate::index::{check_cocycle, Cocycle, Elem, IndexStructure, SemigroupTable, VirtualSemigroup};
use crate::linear::{Basis, LinComb, Scalar};

fn same_index<B: Basis>(a: &PairIndexedOp<B>, b: &PairIndexedOp<B>, what: &str) -> Result<()> {
    if a.index().same_as(b.index()) {
        Ok(())
    } else {
        Err(Error::IndexMismatch(format!(
            "{what}: operations indexed by a {} and a {}",
            a.index().describe(),
            b.index().describe()
        )))
    }
}

fn commutative(index: &IndexStructure, what: &str) -> Result<()> {
    if index.is_commutative() {
        Ok(())
    } else {
        Err(Error::NonCommutativeIndex(what.to_string()))
    }
}

/// `x·_{α,β}y = x≻_{α,β}y + x≺_{α,β}y`.
pub fn assoc_from_dend<B: Basis>(
    prec: &PairIndexedOp<B>,
    succ: &PairIndexedOp<B>,
) -> Result<PairIndexedOp<B>> {
    same_index(prec, succ, "assoc-from-dend")?;
    let (p, s) = (prec.clone(), succ.clone());
    Ok(PairIndexedOp::new(prec.index().clone(), move |a, b, x, y| {
        Ok(s.apply_basis(a, b, x, y)?.add(&p.apply_basis(a, b, x, y)?))
    }))
}

/// `x∘_{α,β}y = x≻_{α,β}y − y≺_{β,α}x`.
pub fn prelie_from_dend<B: Basis>(
    prec: &PairIndexedOp<B>,
    succ: &PairIndexedOp<B>,
) -> Result<PairIndexedOp<B>> {
    same_index(prec, succ, "prelie-from-dend")?;
    commutative(prec.index(), "prelie-from-dend")?;
    let (p, s) = (prec.clone(), succ.clone());
    Ok(PairIndexedOp::new(prec.index().clone(), move |a, b, x, y| {
        Ok(s.apply_basis(a, b, x, y)?.sub(&p.apply_basis(b, a, y, x)?))
    }))
}

/// `∗ := ≻`, after checking `x≻_{α,β}y = y≺_{β,α}x` on `domain`.
pub fn zinbiel_from_symmetric_dend<B: Basis>(
    alg: &Algebra<B>,
    domain: &Domain<B>,
) -> Result<PairIndexedOp<B>> {
    let report = check_hypothesis(alg, Hypothesis::RelSymmetric, domain)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::HypothesisViolated {
            hypothesis: Hypothesis::RelSymmetric.name().into(),
            counterexample: Box::new(cx),
        });
    }
    Ok(alg.pair(Role::Succ)?.clone())
}

/// Single-index form: `∗_α := ≻_α`, after checking `x≻_α y = x≺_α y`.
pub fn zinbiel_family_from_symmetric_dend<B: Basis>(
    alg: &Algebra<B>,
    domain: &Domain<B>,
) -> Result<FamilyIndexedOp<B>> {
    let report = check_hypothesis(alg, Hypothesis::FamSymmetric, domain)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::HypothesisViolated {
            hypothesis: Hypothesis::FamSymmetric.name().into(),
            counterexample: Box::new(cx),
        });
    }
    Ok(alg.family(Role::Succ)?.clone())
}

/// `x≺_{α,β}y = y∗_{β,α}x` and `x≻_{α,β}y = x∗_{α,β}y`.
pub fn dend_from_zinbiel<B: Basis>(
    ast: &PairIndexedOp<B>,
) -> Result<(PairIndexedOp<B>, PairIndexedOp<B>)> {
    commutative(ast.index(), "dend-from-zinbiel")?;
    let z = ast.clone();
    let prec = PairIndexedOp::new(ast.index().clone(), move |a, b, x, y| z.apply_basis(b, a, y, x));
    Ok((prec, ast.clone()))
}

/// `x≺_α y = y∗_α x` and `x≻_α y = x∗_α y`.
pub fn fam_dend_from_zinbiel<B: Basis>(
    ast: &FamilyIndexedOp<B>,
) -> Result<(FamilyIndexedOp<B>, FamilyIndexedOp<B>)> {
    commutative(ast.index(), "dend-from-zinbiel")?;
    let z = ast.clone();
    let prec = FamilyIndexedOp::new(ast.index().clone(), move |a, x, y| z.apply_basis(a, y, x));
    Ok((prec, ast.clone()))
}

/// `x·_{α,β}y = x∗_{α,β}y + y∗_{β,α}x`.
pub fn comm_from_zinbiel<B: Basis>(ast: &PairIndexedOp<B>) -> Result<PairIndexedOp<B>> {
    let (prec, succ) = dend_from_zinbiel(ast)?;
    assoc_from_dend(&prec, &succ)
}

/// `[x,y]_{α,β} = x∘_{α,β}y − y∘_{β,α}x`.
pub fn lie_from_prelie<B: Basis>(circ: &PairIndexedOp<B>) -> Result<PairIndexedOp<B>> {
    commutative(circ.index(), "lie-from-prelie")?;
    let c = circ.clone();
    Ok(PairIndexedOp::new(circ.index().clone(), move |a, b, x, y| {
        Ok(c.apply_basis(a, b, x, y)?.sub(&c.apply_basis(b, a, y, x)?))
    }))
}

/// The commutative product and bracket of a pre-Poisson structure, after
/// checking the pre-Poisson axioms on `domain`.
pub fn poisson_from_prepoisson<B: Basis>(
    alg: &Algebra<B>,
    domain: &Domain<B>,
) -> Result<(PairIndexedOp<B>, PairIndexedOp<B>)> {
    commutative(alg.index(), "poisson-from-prepoisson")?;
    let report = check_axioms(alg, AxiomSuite::RelPrePoisson, domain)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::PreconditionFailed {
            what: AxiomSuite::RelPrePoisson.name().into(),
            counterexample: Box::new(cx),
        });
    }
    let mul = comm_from_zinbiel(alg.pair(Role::Ast)?)?;
    let bracket = lie_from_prelie(alg.pair(Role::Circ)?)?;
    Ok((mul, bracket))
}

/// `x≺_{α,β}y = x·_{α,β}R_β(y)` and `x≻_{α,β}y = R_α(x)·_{α,β}y`, after
/// checking the Rota–Baxter identity on `window`.
pub fn dend_from_rb<B: Basis>(
    rb: &RotaBaxterFamily<B>,
    window: &[Elem],
) -> Result<(PairIndexedOp<B>, PairIndexedOp<B>)> {
    let report = check_rota_baxter(rb, window)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::PreconditionFailed {
            what: "rota-baxter".into(),
            counterexample: Box::new(cx),
        });
    }
    let mul = rb.carrier().pair(Role::Mul)?.clone();
    let index = mul.index().clone();
    let (m, r) = (mul.clone(), rb.clone());
    let prec = PairIndexedOp::new(index.clone(), move |a, b, x: &B, y: &B| {
        m.apply(a, b, &LinComb::basis(x.clone()), &r.apply_basis(b, y)?)
    });
    let (m, r) = (mul, rb.clone());
    let succ = PairIndexedOp::new(index, move |a, b, x: &B, y: &B| {
        m.apply(a, b, &r.apply_basis(a, x)?, &LinComb::basis(y.clone()))
    });
    Ok((prec, succ))
}

/// `x·_{α,β}y = c(α,β)·xy` for an index-independent associative `base`
/// product and a 2-cocycle `c`.
pub fn cocycle_twist(base: &FiniteRelativeAlgebra, c: &Cocycle) -> Result<FiniteRelativeAlgebra> {
    let report = check_cocycle(c)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::PreconditionFailed {
            what: "cocycle identity".into(),
            counterexample: Box::new(cx),
        });
    }
    let table = base
        .pair_op(Role::Mul)
        .ok_or_else(|| Error::MissingRole("mul".into()))?;
    let d = base.dim();
    let m = base.index().size();
    let product = |i, j| table.product(0, i, j);
    for slot in 1..m * m {
        for i in 0..d {
            for j in 0..d {
                if table.product(slot, i, j) != product(i, j) {
                    return Err(Error::NotApplicable(
                        "the base product depends on its indices".into(),
                    ));
                }
            }
        }
    }
    let carrier = base.to_algebra();
    let report = check_axioms(&carrier, AxiomSuite::RelAssoc, &Domain::exhaustive(&carrier)?)?;
    if let Some(cx) = report.counterexample {
        return Err(Error::PreconditionFailed {
            what: "associativity of the base product".into(),
            counterexample: Box::new(cx),
        });
    }
    let n = c.base().size();
    let mut out = FiniteRelativeAlgebra::new(base.basis().to_vec(), Arc::clone(c.base()));
    let op = out.pair_op_mut(Role::Mul);
    for a in 0..n {
        for b in 0..n {
            let k = c.value(a, b);
            for i in 0..d {
                for j in 0..d {
                    for (&l, v) in product(i, j).iter() {
                        op.set(a * n + b, i, j, l, k * v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The ordinary algebra on `V⊗KS` over the trivial monoid, with basis
/// `b_i⊗α` at position `i·|S| + α` and
/// `(x⊗α) op (y⊗β) = (x op_{α,β} y)⊗αβ` for every role. A single-indexed
/// role collapses through its pair lift and stays single-indexed (over the
/// trivial monoid the two notions agree).
pub fn collapse(alg: &FiniteRelativeAlgebra) -> Result<FiniteRelativeAlgebra> {
    let s = alg.index();
    let n = s.size();
    let d = alg.dim();
    let names = (0..d)
        .flat_map(|i| (0..n).map(move |a| (i, a)))
        .map(|(i, a)| format!("{}⊗{}", alg.basis()[i], s.name(a)))
        .collect();
    let carrier = alg.to_algebra();
    let mut out = FiniteRelativeAlgebra::new(names, Arc::new(SemigroupTable::trivial()));
    let mut jobs: Vec<(Role, bool, PairIndexedOp<usize>)> = Vec::new();
    for role in alg.pair_roles() {
        jobs.push((role, false, carrier.pair(role)?.clone()));
    }
    for role in alg.family_roles() {
        jobs.push((role, true, crate::algebra::family_to_pair(role, carrier.family(role)?)?));
    }
    for (role, family, op) in jobs {
        let table = if family {
            out.family_op_mut(role)
        } else {
            out.pair_op_mut(role)
        };
        for a in 0..n {
            for b in 0..n {
                let ab = s.mul(a, b);
                for i in 0..d {
                    for j in 0..d {
                        for (&k, v) in op.apply_basis(a, b, &i, &j)?.iter() {
                            table.set(0, i * n + a, j * n + b, k * n + ab, v.clone());
                        }
                    }
                }
            }
        }
    }
    if let (Some(u), Some(w)) = (alg.unit(), s.unit()) {
        let mut unit = vec![Scalar::zero(); d * n];
        for (i, k) in u.iter().enumerate() {
            unit[i * n + w] = k.clone();
        }
        out.set_unit(Some(unit))?;
    }
    Ok(out)
}

/// Named constructions on finite algebras, as offered on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    AssocFromDend,
    PrelieFromDend,
    ZinbielFromSymmetricDend,
    DendFromZinbiel,
    CommFromZinbiel,
    LieFromPrelie,
    PoissonFromPrepoisson,
    CocycleTwist,
    DendFromRb,
}

impl Construction {
    pub const ALL: [Construction; 9] = [
        Construction::AssocFromDend,
        Construction::PrelieFromDend,
        Construction::ZinbielFromSymmetricDend,
        Construction::DendFromZinbiel,
        Construction::CommFromZinbiel,
        Construction::LieFromPrelie,
        Construction::PoissonFromPrepoisson,
        Construction::CocycleTwist,
        Construction::DendFromRb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::AssocFromDend => "assoc-from-dend",
            Construction::PrelieFromDend => "prelie-from-dend",
            Construction::ZinbielFromSymmetricDend => "zinbiel-from-symmetric-dend",
            Construction::DendFromZinbiel => "dend-from-zinbiel",
            Construction::CommFromZinbiel => "comm-from-zinbiel",
            Construction::LieFromPrelie => "lie-from-prelie",
            Construction::PoissonFromPrepoisson => "poisson-from-prepoisson",
            Construction::CocycleTwist => "cocycle-twist",
            Construction::DendFromRb => "dend-from-rb",
        }
    }

    /// Derives new roles from the existing ones of a finite algebra (over
    /// the exhaustive domain) and returns the algebra with them added.
    /// Single-indexed input roles are read through their pair lift.
    /// The cocycle twist and the Rota–Baxter construction take extra
    /// inputs and are not handled here.
    pub fn apply(self, alg: &FiniteRelativeAlgebra) -> Result<FiniteRelativeAlgebra> {
        let carrier = alg.to_algebra().lift_family()?;
        let domain = Domain::exhaustive(&carrier)?;
        let derived: Vec<(Role, PairIndexedOp<usize>)> = match self {
            Construction::AssocFromDend => vec![(
                Role::Mul,
                assoc_from_dend(carrier.pair(Role::Prec)?, carrier.pair(Role::Succ)?)?,
            )],
            Construction::PrelieFromDend => vec![(
                Role::Circ,
                prelie_from_dend(carrier.pair(Role::Prec)?, carrier.pair(Role::Succ)?)?,
            )],
            Construction::ZinbielFromSymmetricDend => {
                vec![(Role::Ast, zinbiel_from_symmetric_dend(&carrier, &domain)?)]
            }
            Construction::DendFromZinbiel => {
                let (p, s) = dend_from_zinbiel(carrier.pair(Role::Ast)?)?;
                vec![(Role::Prec, p), (Role::Succ, s)]
            }
            Construction::CommFromZinbiel => {
                vec![(Role::Mul, comm_from_zinbiel(carrier.pair(Role::Ast)?)?)]
            }
            Construction::LieFromPrelie => {
                vec![(Role::Bracket, lie_from_prelie(carrier.pair(Role::Circ)?)?)]
            }
            Construction::PoissonFromPrepoisson => {
                let (m, b) = poisson_from_prepoisson(&carrier, &domain)?;
                vec![(Role::Mul, m), (Role::Bracket, b)]
            }
            Construction::CocycleTwist | Construction::DendFromRb => {
                return Err(Error::NotApplicable(format!(
                    "{} needs an additional input",
                    self.name()
                )))
            }
        };
        let mut out = carrier;
        for (role, op) in derived {
            out = out.with_pair(role, op)?;
        }
        FiniteRelativeAlgebra::materialize(&out, alg.basis().to_vec())
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "construction",
                name: s.to_string(),
            })
    }
}

/// Standard example carriers.
pub mod examples {
    use super::*;

    /// `c(a,b) = (−1)^{ab}` on ℤ/2.
    pub fn sign_cocycle() -> Cocycle {
        let s = Arc::new(SemigroupTable::cyclic(2));
        let v = |k| Scalar::from_integer(k);
        Cocycle::new(s, vec![vec![v(1), v(1)], vec![v(1), v(-1)]]).expect("nonzero values")
    }

    /// The one-dimensional algebra `x·x = x` over `index`, every product
    /// index-independent.
    pub fn line(index: Arc<SemigroupTable>) -> FiniteRelativeAlgebra {
        let n = index.size();
        let mut alg = FiniteRelativeAlgebra::new(vec!["x".into()], index);
        let op = alg.pair_op_mut(Role::Mul);
        for slot in 0..n * n {
            op.set(slot, 0, 0, 0, Scalar::one());
        }
        alg
    }

    /// The line algebra twisted by the sign cocycle on ℤ/2.
    pub fn sign_twisted_line() -> FiniteRelativeAlgebra {
        cocycle_twist(&line(Arc::new(SemigroupTable::trivial())), &sign_cocycle())
            .expect("the sign function is a cocycle")
    }

    pub fn monomial_names(d: usize) -> Vec<String> {
        (0..=d).map(|m| format!("t{m}")).collect()
    }

    /// `K[t]/(t^{d+1})` with `t^m ∗ t^n = t^{m+n+1}/(m+1)`, i.e.
    /// `a∗b = (∫₀ᵗa)·b`, over the trivial monoid. The operation is stored
    /// both single- and pair-indexed.
    pub fn truncated_integration(d: usize) -> FiniteRelativeAlgebra {
        let mut alg = FiniteRelativeAlgebra::new(monomial_names(d), Arc::new(SemigroupTable::trivial()));
        for m in 0..=d {
            for n in 0..=d {
                if m + n < d {
                    let k = Scalar::new(1, m as i64 + 1);
                    alg.pair_op_mut(Role::Ast).set(0, m, n, m + n + 1, k.clone());
                    alg.family_op_mut(Role::Ast).set(0, m, n, m + n + 1, k);
                }
            }
        }
        alg
    }

    /// Basis triples `(t^i, t^j, t^k)` whose products stay within degree `d`
    /// before truncation: `i + j + k + 2 ≤ d`.
    pub fn within_degree(d: usize) -> impl Fn(&[usize; 3]) -> bool {
        move |t| t[0] + t[1] + t[2] + 2 <= d
    }

    /// `K[t]/(t^{d+1})` with the index-independent product over `index` and
    /// every `R_α` the integration map `t^m ↦ t^{m+1}/(m+1)`.
    pub fn truncated_polynomial_rb(
        d: usize,
        index: Arc<SemigroupTable>,
    ) -> Result<RotaBaxterFamily<usize>> {
        let n = index.size();
        let mut alg = FiniteRelativeAlgebra::new(monomial_names(d), index);
        let op = alg.pair_op_mut(Role::Mul);
        for slot in 0..n * n {
            for i in 0..=d {
                for j in 0..=d - i {
                    op.set(slot, i, j, i + j, Scalar::one());
                }
            }
        }
        let mut r = vec![vec![Scalar::zero(); d + 1]; d + 1];
        for m in 0..d {
            r[m + 1][m] = Scalar::new(1, m as i64 + 1);
        }
        let maps = (0..n).map(|a| (a, r.clone())).collect();
        RotaBaxterFamily::from_matrices(alg.to_algebra(), maps)
    }

    /// The one-dimensional carrier `x·_{m,n}x = x` over `(ℤ_{>0}, +)` with
    /// `R_n(x) = x/n`.
    pub fn harmonic_rota_baxter() -> RotaBaxterFamily<usize> {
        let index = IndexStructure::Virtual(Arc::new(VirtualSemigroup::positive_integers()));
        let mul = PairIndexedOp::new(index.clone(), |_, _, _: &usize, _: &usize| {
            Ok(LinComb::basis(0))
        });
        let alg = Algebra::new(index, |_: &usize| "x".to_string())
            .with_basis(vec![0])
            .with_pair(Role::Mul, mul)
            .expect("same index");
        RotaBaxterFamily::computed(alg, |n, _| {
            if n == 0 {
                return Err(Error::WindowClosure("0".into()));
            }
            Ok(LinComb::term(Scalar::new(1, n as i64), 0))
        })
    }
}
