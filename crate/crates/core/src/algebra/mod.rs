//! Relative algebras: bilinear operations indexed by pairs (or single
//! elements) of an index structure, the carriers that bundle them, and the
//! axiom engine.

mod axioms;
mod finite;
mod morphism;
mod rota_baxter;

pub use axioms::{
    check_axioms, check_equations, check_hypothesis, AxiomSuite, Domain, Equation, Hypothesis, Ix,
    Term,
};
pub use finite::{AlgebraJson, FiniteRelativeAlgebra, OpTable, SemigroupRef};
pub use morphism::{check_morphism, MorphismFamily, MorphismJson};
pub use rota_baxter::{check_rota_baxter, RotaBaxterFamily, RotaBaxterJson, RotaBaxterMaps};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Elem, IndexStructure};
use crate::linear::{bilinear_extend, Basis, LinComb};

/// The name under which an operation is stored in an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// associative / commutative product `·`
    Mul,
    /// dendriform left half `≺`
    Prec,
    /// dendriform right half `≻`
    Succ,
    /// zinbiel product `∗`
    Ast,
    /// pre-Lie product `∘`
    Circ,
    /// Lie bracket `[-,-]`
    Bracket,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Mul,
        Role::Prec,
        Role::Succ,
        Role::Ast,
        Role::Circ,
        Role::Bracket,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Mul => "mul",
            Role::Prec => "prec",
            Role::Succ => "succ",
            Role::Ast => "ast",
            Role::Circ => "circ",
            Role::Bracket => "bracket",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "operation role",
                name: s.to_string(),
            })
    }
}

type PairFn<B> = dyn Fn(Elem, Elem, &B, &B) -> Result<LinComb<B>> + Send + Sync;
type FamilyFn<B> = dyn Fn(Elem, &B, &B) -> Result<LinComb<B>> + Send + Sync;

/// A family of bilinear operations `x op_{α,β} y`, one for each pair of
/// index elements, given on basis elements.
pub struct PairIndexedOp<B: Basis> {
    index: IndexStructure,
    f: Arc<PairFn<B>>,
}

impl<B: Basis> Clone for PairIndexedOp<B> {
    fn clone(&self) -> Self {
        PairIndexedOp {
            index: self.index.clone(),
            f: Arc::clone(&self.f),
        }
    }
}

impl<B: Basis> fmt::Debug for PairIndexedOp<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairIndexedOp over {}", self.index.describe())
    }
}

impl<B: Basis> PairIndexedOp<B> {
    pub fn new(
        index: IndexStructure,
        f: impl Fn(Elem, Elem, &B, &B) -> Result<LinComb<B>> + Send + Sync + 'static,
    ) -> Self {
        PairIndexedOp {
            index,
            f: Arc::new(f),
        }
    }

    /// The operation that is identically zero.
    pub fn zero(index: IndexStructure) -> Self {
        Self::new(index, |_, _, _, _| Ok(LinComb::zero()))
    }

    pub fn index(&self) -> &IndexStructure {
        &self.index
    }

    pub fn apply_basis(&self, a: Elem, b: Elem, x: &B, y: &B) -> Result<LinComb<B>> {
        (self.f)(a, b, x, y)
    }

    pub fn apply(&self, a: Elem, b: Elem, x: &LinComb<B>, y: &LinComb<B>) -> Result<LinComb<B>> {
        bilinear_extend(|u, v, (a, b)| (self.f)(a, b, u, v), x, y, (a, b))
    }
}

/// A family of bilinear operations `x op_α y` indexed by single elements.
pub struct FamilyIndexedOp<B: Basis> {
    index: IndexStructure,
    f: Arc<FamilyFn<B>>,
}

impl<B: Basis> Clone for FamilyIndexedOp<B> {
    fn clone(&self) -> Self {
        FamilyIndexedOp {
            index: self.index.clone(),
            f: Arc::clone(&self.f),
        }
    }
}

impl<B: Basis> fmt::Debug for FamilyIndexedOp<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilyIndexedOp over {}", self.index.describe())
    }
}

impl<B: Basis> FamilyIndexedOp<B> {
    pub fn new(
        index: IndexStructure,
        f: impl Fn(Elem, &B, &B) -> Result<LinComb<B>> + Send + Sync + 'static,
    ) -> Self {
        FamilyIndexedOp {
            index,
            f: Arc::new(f),
        }
    }

    pub fn zero(index: IndexStructure) -> Self {
        Self::new(index, |_, _, _| Ok(LinComb::zero()))
    }

    pub fn index(&self) -> &IndexStructure {
        &self.index
    }

    pub fn apply_basis(&self, a: Elem, x: &B, y: &B) -> Result<LinComb<B>> {
        (self.f)(a, x, y)
    }

    pub fn apply(&self, a: Elem, x: &LinComb<B>, y: &LinComb<B>) -> Result<LinComb<B>> {
        bilinear_extend(|u, v, a| (self.f)(a, u, v), x, y, a)
    }
}

/// Lifts a single-index operation to a pair-indexed one by the independence
/// pattern of its role: `≺_{α,β} = ≺_β`, `≻_{α,β} = ≻_α`, and
/// `∗_{α,β} = ∗_α`, `∘_{α,β} = ∘_α`.
pub fn family_to_pair<B: Basis>(role: Role, op: &FamilyIndexedOp<B>) -> Result<PairIndexedOp<B>> {
    let f = Arc::clone(&op.f);
    let index = op.index.clone();
    match role {
        Role::Prec => Ok(PairIndexedOp::new(index, move |_, b, x, y| f(b, x, y))),
        Role::Succ | Role::Ast | Role::Circ => {
            Ok(PairIndexedOp::new(index, move |a, _, x, y| f(a, x, y)))
        }
        Role::Mul | Role::Bracket => Err(Error::UnknownName {
            kind: "family role",
            name: role.to_string(),
        }),
    }
}

type Namer<B> = dyn Fn(&B) -> String + Send + Sync;

/// A carrier together with a named set of operations over one index
/// structure. Pair-indexed and single-indexed operations live side by side;
/// the axiom suites say which kind they read.
pub struct Algebra<B: Basis> {
    index: IndexStructure,
    pair: BTreeMap<Role, PairIndexedOp<B>>,
    family: BTreeMap<Role, FamilyIndexedOp<B>>,
    unit: Option<LinComb<B>>,
    basis: Option<Vec<B>>,
    namer: Arc<Namer<B>>,
}

impl<B: Basis> Clone for Algebra<B> {
    fn clone(&self) -> Self {
        Algebra {
            index: self.index.clone(),
            pair: self.pair.clone(),
            family: self.family.clone(),
            unit: self.unit.clone(),
            basis: self.basis.clone(),
            namer: Arc::clone(&self.namer),
        }
    }
}

impl<B: Basis> Algebra<B> {
    pub fn new(index: IndexStructure, namer: impl Fn(&B) -> String + Send + Sync + 'static) -> Self {
        Algebra {
            index,
            pair: BTreeMap::new(),
            family: BTreeMap::new(),
            unit: None,
            basis: None,
            namer: Arc::new(namer),
        }
    }

    /// Same index, basis, unit, and naming, but no operations.
    pub fn empty_like(&self) -> Self {
        Algebra {
            pair: BTreeMap::new(),
            family: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn with_pair(mut self, role: Role, op: PairIndexedOp<B>) -> Result<Self> {
        if !op.index.same_as(&self.index) {
            return Err(Error::IndexMismatch(format!(
                "{role} is indexed by a {}, the algebra by a {}",
                op.index.describe(),
                self.index.describe()
            )));
        }
        self.pair.insert(role, op);
        Ok(self)
    }

    pub fn with_family(mut self, role: Role, op: FamilyIndexedOp<B>) -> Result<Self> {
        if !op.index.same_as(&self.index) {
            return Err(Error::IndexMismatch(format!(
                "{role} is indexed by a {}, the algebra by a {}",
                op.index.describe(),
                self.index.describe()
            )));
        }
        self.family.insert(role, op);
        Ok(self)
    }

    pub fn with_unit(mut self, unit: LinComb<B>) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn with_basis(mut self, basis: Vec<B>) -> Self {
        self.basis = Some(basis);
        self
    }

    /// Adds the pair-indexed lift (see [`family_to_pair`]) of every
    /// single-indexed operation that has no pair-indexed counterpart.
    pub fn lift_family(mut self) -> Result<Self> {
        let lifted: Vec<_> = self
            .family
            .iter()
            .filter(|(role, _)| !self.pair.contains_key(role))
            .map(|(&role, op)| family_to_pair(role, op).map(|p| (role, p)))
            .collect::<Result<_>>()?;
        self.pair.extend(lifted);
        Ok(self)
    }

    pub fn index(&self) -> &IndexStructure {
        &self.index
    }

    pub fn pair(&self, role: Role) -> Result<&PairIndexedOp<B>> {
        self.pair
            .get(&role)
            .ok_or_else(|| Error::MissingRole(format!("{role} (pair-indexed)")))
    }

    pub fn family(&self, role: Role) -> Result<&FamilyIndexedOp<B>> {
        self.family
            .get(&role)
            .ok_or_else(|| Error::MissingRole(format!("{role} (single-indexed)")))
    }

    pub fn pair_roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.pair.keys().copied()
    }

    pub fn family_roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.family.keys().copied()
    }

    pub fn unit(&self) -> Option<&LinComb<B>> {
        self.unit.as_ref()
    }

    pub fn basis(&self) -> Option<&[B]> {
        self.basis.as_deref()
    }

    pub fn basis_name(&self, b: &B) -> String {
        (self.namer)(b)
    }

    pub fn namer(&self) -> Arc<dyn Fn(&B) -> String + Send + Sync> {
        Arc::clone(&self.namer)
    }

    pub fn render(&self, v: &LinComb<B>) -> String {
        v.render(|b| (self.namer)(b))
    }

    pub fn pairs(&self, v: &LinComb<B>) -> Vec<(String, String)> {
        v.to_pairs(|b| (self.namer)(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::SemigroupTable;
    use crate::linear::Scalar;

    fn z2() -> IndexStructure {
        IndexStructure::finite(SemigroupTable::cyclic(2))
    }

    #[test]
    fn role_names_round_trip() {
        for r in Role::ALL {
            assert_eq!(r.as_str().parse::<Role>().unwrap(), r);
        }
        assert!("star".parse::<Role>().is_err());
    }

    #[test]
    fn lift_uses_the_right_index() {
        // op_α(x, y) = α as a coefficient on basis 0
        let fam = FamilyIndexedOp::new(z2(), |a, _: &u8, _: &u8| {
            Ok(LinComb::term(Scalar::from_integer(a as i64 + 1), 0))
        });
        let prec = family_to_pair(Role::Prec, &fam).unwrap();
        let succ = family_to_pair(Role::Succ, &fam).unwrap();
        assert_eq!(prec.apply_basis(0, 1, &0, &0).unwrap(), LinComb::term(Scalar::from_integer(2), 0));
        assert_eq!(succ.apply_basis(0, 1, &0, &0).unwrap(), LinComb::term(Scalar::from_integer(1), 0));
        assert!(family_to_pair(Role::Mul, &fam).is_err());
    }

    #[test]
    fn trivial_monoid_lift_is_the_family_op() {
        let idx = IndexStructure::finite(SemigroupTable::trivial());
        let fam = FamilyIndexedOp::new(idx, |_, x: &u8, y: &u8| Ok(LinComb::basis(x * 3 + y)));
        for role in [Role::Prec, Role::Succ, Role::Ast, Role::Circ] {
            let p = family_to_pair(role, &fam).unwrap();
            for (x, y) in [(0u8, 1u8), (2, 2)] {
                assert_eq!(p.apply_basis(0, 0, &x, &y).unwrap(), fam.apply_basis(0, &x, &y).unwrap());
            }
        }
    }

    #[test]
    fn index_mismatch_rejected() {
        let alg = Algebra::<u8>::new(z2(), |b| b.to_string());
        let other = IndexStructure::finite(SemigroupTable::cyclic(3));
        assert!(matches!(
            alg.with_pair(Role::Mul, PairIndexedOp::zero(other)),
            Err(Error::IndexMismatch(_))
        ));
    }
}
