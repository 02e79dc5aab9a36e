//! The axiom engine.
//!
//! Every identity is a pair of small term trees over operation roles and
//! index expressions. A check instantiates the terms at each point of a
//! [`Domain`] (a basis triple and an index tuple) and compares both sides
//! as exact linear combinations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Algebra, Role};
use crate::error::{Error, Result};
use crate::index::{Elem, IndexStructure};
use crate::linear::{Basis, LinComb, Scalar};
use crate::report::{Counterexample, Report, Side};

/// Index expressions over the variables α, β, γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ix {
    /// α
    A,
    /// β
    B,
    /// γ
    C,
    /// the unit element ω of a monoid
    Unit,
    /// semigroup product
    Mul(Box<Ix>, Box<Ix>),
    /// dimonoid ⊣
    Left(Box<Ix>, Box<Ix>),
    /// dimonoid ⊢
    Right(Box<Ix>, Box<Ix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// x, y, z for 0, 1, 2
    Var(usize),
    /// the algebra's unit vector
    One,
    Pair(Role, Ix, Ix, Box<Term>, Box<Term>),
    Family(Role, Ix, Box<Term>, Box<Term>),
    /// integer combination of terms
    Lin(Vec<(i64, Term)>),
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub id: &'static str,
    pub lhs: Term,
    pub rhs: Term,
}

mod dsl {
    use super::{Ix, Role, Term};

    pub fn x() -> Term {
        Term::Var(0)
    }
    pub fn y() -> Term {
        Term::Var(1)
    }
    pub fn z() -> Term {
        Term::Var(2)
    }
    pub fn m(a: Ix, b: Ix) -> Ix {
        Ix::Mul(Box::new(a), Box::new(b))
    }
    pub fn l(a: Ix, b: Ix) -> Ix {
        Ix::Left(Box::new(a), Box::new(b))
    }
    pub fn r(a: Ix, b: Ix) -> Ix {
        Ix::Right(Box::new(a), Box::new(b))
    }
    pub fn p(role: Role, a: Ix, b: Ix, u: Term, v: Term) -> Term {
        Term::Pair(role, a, b, Box::new(u), Box::new(v))
    }
    pub fn f(role: Role, a: Ix, u: Term, v: Term) -> Term {
        Term::Family(role, a, Box::new(u), Box::new(v))
    }
    pub fn add(u: Term, v: Term) -> Term {
        Term::Lin(vec![(1, u), (1, v)])
    }
    pub fn sub(u: Term, v: Term) -> Term {
        Term::Lin(vec![(1, u), (-1, v)])
    }
    pub fn sum(ts: Vec<Term>) -> Term {
        Term::Lin(ts.into_iter().map(|t| (1, t)).collect())
    }
    pub fn zero() -> Term {
        Term::Lin(vec![])
    }
}

use dsl::*;
use Ix::{A, B, C};
use Role::{Ast, Bracket, Circ, Mul, Prec, Succ};

fn eq(id: &'static str, lhs: Term, rhs: Term) -> Equation {
    Equation { id, lhs, rhs }
}

fn rel_assoc() -> Vec<Equation> {
    vec![eq(
        "assoc",
        p(Mul, m(A, B), C, p(Mul, A, B, x(), y()), z()),
        p(Mul, A, m(B, C), x(), p(Mul, B, C, y(), z())),
    )]
}

fn rel_unit() -> Vec<Equation> {
    vec![
        eq("unit.right", p(Mul, A, Ix::Unit, x(), Term::One), x()),
        eq("unit.left", p(Mul, Ix::Unit, A, Term::One, x()), x()),
    ]
}

fn rel_comm() -> Vec<Equation> {
    vec![eq("comm", p(Mul, A, B, x(), y()), p(Mul, B, A, y(), x()))]
}

fn rel_lie() -> Vec<Equation> {
    let br = |a, b, u, v| p(Bracket, a, b, u, v);
    vec![
        eq(
            "lie.skew",
            add(br(A, B, x(), y()), br(B, A, y(), x())),
            zero(),
        ),
        eq(
            "lie.jacobi",
            sum(vec![
                br(m(A, B), C, br(A, B, x(), y()), z()),
                br(m(C, A), B, br(C, A, z(), x()), y()),
                br(m(B, C), A, br(B, C, y(), z()), x()),
            ]),
            zero(),
        ),
    ]
}

fn rel_leibniz() -> Vec<Equation> {
    vec![eq(
        "poisson.leibniz",
        p(Bracket, A, m(B, C), x(), p(Mul, B, C, y(), z())),
        add(
            p(Mul, m(A, B), C, p(Bracket, A, B, x(), y()), z()),
            p(Mul, B, m(A, C), y(), p(Bracket, A, C, x(), z())),
        ),
    )]
}

fn rel_dend() -> Vec<Equation> {
    vec![
        eq(
            "dend.1",
            p(Prec, m(A, B), C, p(Prec, A, B, x(), y()), z()),
            p(
                Prec,
                A,
                m(B, C),
                x(),
                add(p(Prec, B, C, y(), z()), p(Succ, B, C, y(), z())),
            ),
        ),
        eq(
            "dend.2",
            p(Prec, m(A, B), C, p(Succ, A, B, x(), y()), z()),
            p(Succ, A, m(B, C), x(), p(Prec, B, C, y(), z())),
        ),
        eq(
            "dend.3",
            p(
                Succ,
                m(A, B),
                C,
                add(p(Prec, A, B, x(), y()), p(Succ, A, B, x(), y())),
                z(),
            ),
            p(Succ, A, m(B, C), x(), p(Succ, B, C, y(), z())),
        ),
    ]
}

fn rel_zinb() -> Vec<Equation> {
    vec![eq(
        "zinb",
        p(Ast, A, m(B, C), x(), p(Ast, B, C, y(), z())),
        add(
            p(Ast, m(A, B), C, p(Ast, A, B, x(), y()), z()),
            p(Ast, m(B, A), C, p(Ast, B, A, y(), x()), z()),
        ),
    )]
}

fn rel_prelie() -> Vec<Equation> {
    vec![eq(
        "prelie",
        sub(
            p(Circ, A, m(B, C), x(), p(Circ, B, C, y(), z())),
            p(Circ, m(A, B), C, p(Circ, A, B, x(), y()), z()),
        ),
        sub(
            p(Circ, B, m(A, C), y(), p(Circ, A, C, x(), z())),
            p(Circ, m(B, A), C, p(Circ, B, A, y(), x()), z()),
        ),
    )]
}

fn rel_prepoisson() -> Vec<Equation> {
    vec![
        eq(
            "prepoisson.1",
            p(
                Ast,
                m(A, B),
                C,
                sub(p(Circ, A, B, x(), y()), p(Circ, B, A, y(), x())),
                z(),
            ),
            sub(
                p(Circ, A, m(B, C), x(), p(Ast, B, C, y(), z())),
                p(Ast, B, m(A, C), y(), p(Circ, A, C, x(), z())),
            ),
        ),
        eq(
            "prepoisson.2",
            p(
                Circ,
                m(A, B),
                C,
                add(p(Ast, A, B, x(), y()), p(Ast, B, A, y(), x())),
                z(),
            ),
            add(
                p(Ast, A, m(B, C), x(), p(Circ, B, C, y(), z())),
                p(Ast, B, m(A, C), y(), p(Circ, A, C, x(), z())),
            ),
        ),
    ]
}

fn fam_dend() -> Vec<Equation> {
    vec![
        eq(
            "fdend.1",
            f(Prec, B, f(Prec, A, x(), y()), z()),
            f(
                Prec,
                m(A, B),
                x(),
                add(f(Prec, B, y(), z()), f(Succ, A, y(), z())),
            ),
        ),
        eq(
            "fdend.2",
            f(Prec, B, f(Succ, A, x(), y()), z()),
            f(Succ, A, x(), f(Prec, B, y(), z())),
        ),
        eq(
            "fdend.3",
            f(
                Succ,
                m(A, B),
                add(f(Prec, B, x(), y()), f(Succ, A, x(), y())),
                z(),
            ),
            f(Succ, A, x(), f(Succ, B, y(), z())),
        ),
    ]
}

fn fam_zinb() -> Vec<Equation> {
    vec![
        eq(
            "fzinb",
            f(Ast, A, x(), f(Ast, B, y(), z())),
            add(
                f(Ast, m(A, B), f(Ast, A, x(), y()), z()),
                f(Ast, m(A, B), f(Ast, B, y(), x()), z()),
            ),
        ),
        eq(
            "fzinb.swap",
            f(Ast, A, x(), f(Ast, B, y(), z())),
            f(Ast, B, y(), f(Ast, A, x(), z())),
        ),
    ]
}

fn fam_prelie() -> Vec<Equation> {
    vec![eq(
        "fprelie",
        sub(
            f(Circ, A, x(), f(Circ, B, y(), z())),
            f(Circ, m(A, B), f(Circ, A, x(), y()), z()),
        ),
        sub(
            f(Circ, B, y(), f(Circ, A, x(), z())),
            f(Circ, m(B, A), f(Circ, B, y(), x()), z()),
        ),
    )]
}

fn fam_prepoisson() -> Vec<Equation> {
    vec![
        eq(
            "fprepoisson.1",
            f(
                Ast,
                m(A, B),
                sub(f(Circ, A, x(), y()), f(Circ, B, y(), x())),
                z(),
            ),
            sub(
                f(Circ, A, x(), f(Ast, B, y(), z())),
                f(Ast, B, y(), f(Circ, A, x(), z())),
            ),
        ),
        eq(
            "fprepoisson.2",
            f(
                Circ,
                m(A, B),
                add(f(Ast, A, x(), y()), f(Ast, B, y(), x())),
                z(),
            ),
            add(
                f(Ast, A, x(), f(Circ, B, y(), z())),
                f(Ast, B, y(), f(Circ, A, x(), z())),
            ),
        ),
    ]
}

fn dimonoid_dend() -> Vec<Equation> {
    vec![
        eq(
            "ddend.1",
            f(Prec, B, f(Prec, A, x(), y()), z()),
            add(
                f(Prec, l(A, B), x(), f(Prec, B, y(), z())),
                f(Prec, r(A, B), x(), f(Succ, A, y(), z())),
            ),
        ),
        eq(
            "ddend.2",
            f(Prec, B, f(Succ, A, x(), y()), z()),
            f(Succ, A, x(), f(Prec, B, y(), z())),
        ),
        eq(
            "ddend.3",
            add(
                f(Succ, l(A, B), f(Prec, B, x(), y()), z()),
                f(Succ, r(A, B), f(Succ, A, x(), y()), z()),
            ),
            f(Succ, A, x(), f(Succ, B, y(), z())),
        ),
    ]
}

/// The closed list of equational systems the engine knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomSuite {
    RelAssoc,
    RelUnital,
    RelComm,
    RelLie,
    RelPoisson,
    RelDendriform,
    RelZinbiel,
    RelPreLie,
    RelPrePoisson,
    FamDendriform,
    FamZinbiel,
    FamPreLie,
    FamPrePoisson,
    DimonoidDendriform,
}

impl AxiomSuite {
    pub const ALL: [AxiomSuite; 14] = [
        AxiomSuite::RelAssoc,
        AxiomSuite::RelUnital,
        AxiomSuite::RelComm,
        AxiomSuite::RelLie,
        AxiomSuite::RelPoisson,
        AxiomSuite::RelDendriform,
        AxiomSuite::RelZinbiel,
        AxiomSuite::RelPreLie,
        AxiomSuite::RelPrePoisson,
        AxiomSuite::FamDendriform,
        AxiomSuite::FamZinbiel,
        AxiomSuite::FamPreLie,
        AxiomSuite::FamPrePoisson,
        AxiomSuite::DimonoidDendriform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSuite::RelAssoc => "RelAssoc",
            AxiomSuite::RelUnital => "RelUnital",
            AxiomSuite::RelComm => "RelComm",
            AxiomSuite::RelLie => "RelLie",
            AxiomSuite::RelPoisson => "RelPoisson",
            AxiomSuite::RelDendriform => "RelDendriform",
            AxiomSuite::RelZinbiel => "RelZinbiel",
            AxiomSuite::RelPreLie => "RelPreLie",
            AxiomSuite::RelPrePoisson => "RelPrePoisson",
            AxiomSuite::FamDendriform => "FamDendriform",
            AxiomSuite::FamZinbiel => "FamZinbiel",
            AxiomSuite::FamPreLie => "FamPreLie",
            AxiomSuite::FamPrePoisson => "FamPrePoisson",
            AxiomSuite::DimonoidDendriform => "DimonoidDendriform",
        }
    }

    pub fn equations(self) -> Vec<Equation> {
        use AxiomSuite::*;
        match self {
            RelAssoc => rel_assoc(),
            RelUnital => [rel_assoc(), rel_unit()].concat(),
            RelComm => [rel_assoc(), rel_comm()].concat(),
            RelLie => rel_lie(),
            RelPoisson => [rel_assoc(), rel_comm(), rel_lie(), rel_leibniz()].concat(),
            RelDendriform => rel_dend(),
            RelZinbiel => rel_zinb(),
            RelPreLie => rel_prelie(),
            RelPrePoisson => [rel_prelie(), rel_zinb(), rel_prepoisson()].concat(),
            FamDendriform => fam_dend(),
            FamZinbiel => fam_zinb(),
            FamPreLie => fam_prelie(),
            FamPrePoisson => [fam_prelie(), fam_zinb(), fam_prepoisson()].concat(),
            DimonoidDendriform => dimonoid_dend(),
        }
    }

    /// Suites built from a symmetric operad need a commutative index.
    pub fn requires_commutative(self) -> bool {
        use AxiomSuite::*;
        matches!(
            self,
            RelComm
                | RelLie
                | RelPoisson
                | RelZinbiel
                | RelPreLie
                | RelPrePoisson
                | FamZinbiel
                | FamPreLie
                | FamPrePoisson
        )
    }

    /// Number of index variables the suite quantifies over.
    pub fn index_arity(self) -> usize {
        if self.is_family() {
            2
        } else {
            3
        }
    }

    pub fn is_family(self) -> bool {
        use AxiomSuite::*;
        matches!(
            self,
            FamDendriform | FamZinbiel | FamPreLie | FamPrePoisson | DimonoidDendriform
        )
    }

    /// Operation roles the suite reads, split into (pair-indexed, single-indexed).
    pub fn roles(self) -> (BTreeSet<Role>, BTreeSet<Role>) {
        let mut pair = BTreeSet::new();
        let mut fam = BTreeSet::new();
        for e in self.equations() {
            collect_roles(&e.lhs, &mut pair, &mut fam);
            collect_roles(&e.rhs, &mut pair, &mut fam);
        }
        (pair, fam)
    }
}

impl fmt::Display for AxiomSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomSuite::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName {
                kind: "axiom suite",
                name: s.to_string(),
            })
    }
}

/// Side conditions used as hypotheses by constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// `x ≻_{α,β} y = y ≺_{β,α} x`: the swap-symmetry of a pair-indexed
    /// dendriform structure.
    RelSymmetric,
    /// `x ≻_α y = x ≺_α y`, as stated for single-index dendriform algebras
    /// (no argument swap).
    FamSymmetric,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::RelSymmetric => "RelSymmetric",
            Hypothesis::FamSymmetric => "FamSymmetric",
        }
    }

    pub fn equations(self) -> Vec<Equation> {
        match self {
            Hypothesis::RelSymmetric => vec![eq(
                "rel.symmetric",
                p(Succ, A, B, x(), y()),
                p(Prec, B, A, y(), x()),
            )],
            Hypothesis::FamSymmetric => vec![eq(
                "fam.symmetric",
                f(Succ, A, x(), y()),
                f(Prec, A, x(), y()),
            )],
        }
    }
}

fn collect_roles(t: &Term, pair: &mut BTreeSet<Role>, fam: &mut BTreeSet<Role>) {
    match t {
        Term::Var(_) | Term::One => {}
        Term::Pair(role, _, _, u, v) => {
            pair.insert(*role);
            collect_roles(u, pair, fam);
            collect_roles(v, pair, fam);
        }
        Term::Family(role, _, u, v) => {
            fam.insert(*role);
            collect_roles(u, pair, fam);
            collect_roles(v, pair, fam);
        }
        Term::Lin(ts) => ts.iter().for_each(|(_, t)| collect_roles(t, pair, fam)),
    }
}

fn uses_unit(t: &Term) -> bool {
    match t {
        Term::One => true,
        Term::Var(_) => false,
        Term::Pair(_, a, b, u, v) => {
            ix_uses_unit(a) || ix_uses_unit(b) || uses_unit(u) || uses_unit(v)
        }
        Term::Family(_, a, u, v) => ix_uses_unit(a) || uses_unit(u) || uses_unit(v),
        Term::Lin(ts) => ts.iter().any(|(_, t)| uses_unit(t)),
    }
}

fn ix_uses_unit(i: &Ix) -> bool {
    match i {
        Ix::Unit => true,
        Ix::A | Ix::B | Ix::C => false,
        Ix::Mul(a, b) | Ix::Left(a, b) | Ix::Right(a, b) => ix_uses_unit(a) || ix_uses_unit(b),
    }
}

type IndexFilter = dyn Fn(&[Elem]) -> bool + Send + Sync;

/// The finite set of points a check runs over: basis triples crossed with
/// index tuples drawn from `index_values` (optionally filtered).
///
/// Points are ordered index-tuple-major, both factors lexicographically in
/// the order given; the reported counterexample is the first failing point.
pub struct Domain<B> {
    basis: Vec<[B; 3]>,
    index_values: Vec<Elem>,
    index_filter: Option<Arc<IndexFilter>>,
}

impl<B: Clone> Clone for Domain<B> {
    fn clone(&self) -> Self {
        Domain {
            basis: self.basis.clone(),
            index_values: self.index_values.clone(),
            index_filter: self.index_filter.clone(),
        }
    }
}

impl<B: Basis> Domain<B> {
    pub fn new(basis: Vec<[B; 3]>, index_values: Vec<Elem>) -> Self {
        Domain {
            basis,
            index_values,
            index_filter: None,
        }
    }

    /// All triples over `basis` and every tuple over `index_values`.
    pub fn cube(basis: &[B], index_values: Vec<Elem>) -> Self {
        let mut triples = Vec::with_capacity(basis.len().pow(3));
        for u in basis {
            for v in basis {
                for w in basis {
                    triples.push([u.clone(), v.clone(), w.clone()]);
                }
            }
        }
        Self::new(triples, index_values)
    }

    /// Exhaustive domain of a finite-dimensional algebra over a finite index.
    pub fn exhaustive(alg: &Algebra<B>) -> Result<Self> {
        let n = alg.index().size().ok_or(Error::NoWindow)?;
        let basis = alg.basis().ok_or_else(|| {
            Error::NotApplicable("exhaustive checks need a finite basis".into())
        })?;
        Ok(Self::cube(basis, (0..n).collect()))
    }

    /// Every index element of a finite index structure, with the given basis
    /// triples (e.g. sampled).
    pub fn sampled(basis: Vec<[B; 3]>, index: &IndexStructure) -> Result<Self> {
        let n = index.size().ok_or(Error::NoWindow)?;
        Ok(Self::new(basis, (0..n).collect()))
    }

    pub fn with_index_filter(
        mut self,
        f: impl Fn(&[Elem]) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.index_filter = Some(Arc::new(f));
        self
    }

    pub fn retain_basis(mut self, f: impl Fn(&[B; 3]) -> bool) -> Self {
        self.basis.retain(|t| f(t));
        self
    }

    pub fn basis_triples(&self) -> &[[B; 3]] {
        &self.basis
    }

    pub fn index_values(&self) -> &[Elem] {
        &self.index_values
    }

    pub fn index_tuples(&self, arity: usize) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = vec![vec![]];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|t| {
                    self.index_values.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        if let Some(f) = &self.index_filter {
            out.retain(|t| f(t));
        }
        out
    }
}

struct Env<'a, B: Basis> {
    alg: &'a Algebra<B>,
    vars: [LinComb<B>; 3],
    idx: [Elem; 3],
}

impl<B: Basis> Env<'_, B> {
    fn ix(&self, i: &Ix) -> Result<Elem> {
        let index = self.alg.index();
        match i {
            Ix::A => Ok(self.idx[0]),
            Ix::B => Ok(self.idx[1]),
            Ix::C => Ok(self.idx[2]),
            Ix::Unit => index
                .unit()
                .ok_or_else(|| Error::NotApplicable("the index semigroup has no unit".into())),
            Ix::Mul(a, b) => index.mul(self.ix(a)?, self.ix(b)?),
            Ix::Left(a, b) => index.left(self.ix(a)?, self.ix(b)?),
            Ix::Right(a, b) => index.right(self.ix(a)?, self.ix(b)?),
        }
    }

    fn eval(&self, t: &Term) -> Result<LinComb<B>> {
        match t {
            Term::Var(i) => Ok(self.vars[*i].clone()),
            Term::One => self
                .alg
                .unit()
                .cloned()
                .ok_or_else(|| Error::MissingRole("unit".into())),
            Term::Pair(role, a, b, u, v) => {
                let (u, v) = (self.eval(u)?, self.eval(v)?);
                self.alg.pair(*role)?.apply(self.ix(a)?, self.ix(b)?, &u, &v)
            }
            Term::Family(role, a, u, v) => {
                let (u, v) = (self.eval(u)?, self.eval(v)?);
                self.alg.family(*role)?.apply(self.ix(a)?, &u, &v)
            }
            Term::Lin(ts) => {
                let mut out = LinComb::zero();
                for (k, t) in ts {
                    out.add_scaled(&Scalar::from_integer(*k), &self.eval(t)?);
                }
                Ok(out)
            }
        }
    }
}

/// Runs a list of identities over a domain.
///
/// `arity` is the number of index variables instantiated (2 or 3).
pub fn check_equations<B: Basis>(
    alg: &Algebra<B>,
    name: &str,
    equations: &[Equation],
    arity: usize,
    require_commutative: bool,
    domain: &Domain<B>,
) -> Result<Report> {
    if require_commutative && !alg.index().is_commutative() {
        return Err(Error::NonCommutativeIndex(name.to_string()));
    }
    let mut pair = BTreeSet::new();
    let mut fam = BTreeSet::new();
    for e in equations {
        collect_roles(&e.lhs, &mut pair, &mut fam);
        collect_roles(&e.rhs, &mut pair, &mut fam);
    }
    for role in pair {
        alg.pair(role)?;
    }
    for role in fam {
        alg.family(role)?;
    }
    if equations.iter().any(|e| uses_unit(&e.lhs) || uses_unit(&e.rhs)) {
        if alg.unit().is_none() {
            return Err(Error::MissingRole("unit".into()));
        }
        if alg.index().unit().is_none() {
            return Err(Error::NotApplicable(format!(
                "{name} needs an index monoid with a unit element"
            )));
        }
    }

    let tuples = domain.index_tuples(arity);
    let triples = domain.basis_triples();
    let per_tuple = triples.len();
    let total = tuples.len() * per_tuple;

    let outcome = (0..total).into_par_iter().find_map_first(|i| {
        let tuple = &tuples[i / per_tuple];
        let triple = &triples[i % per_tuple];
        let mut idx = [0; 3];
        idx[..tuple.len()].copy_from_slice(tuple);
        let env = Env {
            alg,
            vars: [
                LinComb::basis(triple[0].clone()),
                LinComb::basis(triple[1].clone()),
                LinComb::basis(triple[2].clone()),
            ],
            idx,
        };
        for e in equations {
            let sides = env.eval(&e.lhs).and_then(|l| Ok((l, env.eval(&e.rhs)?)));
            match sides {
                Err(err) => return Some(Err(err)),
                Ok((l, r)) if l != r => {
                    return Some(Ok(Counterexample {
                        equation: e.id.to_string(),
                        indices: tuple.iter().map(|&a| alg.index().name(a)).collect(),
                        basis: triple.iter().map(|b| alg.basis_name(b)).collect(),
                        lhs: Side::Combination(alg.pairs(&l)),
                        rhs: Side::Combination(alg.pairs(&r)),
                    }))
                }
                Ok(_) => {}
            }
        }
        None
    });
    let cx = outcome.transpose()?;
    Ok(Report::from_outcome(name, total as u64, cx))
}

/// Verifies every identity of `suite` at every point of `domain`.
pub fn check_axioms<B: Basis>(
    alg: &Algebra<B>,
    suite: AxiomSuite,
    domain: &Domain<B>,
) -> Result<Report> {
    check_equations(
        alg,
        suite.name(),
        &suite.equations(),
        suite.index_arity(),
        suite.requires_commutative(),
        domain,
    )
}

pub fn check_hypothesis<B: Basis>(
    alg: &Algebra<B>,
    hypothesis: Hypothesis,
    domain: &Domain<B>,
) -> Result<Report> {
    check_equations(
        alg,
        hypothesis.name(),
        &hypothesis.equations(),
        2,
        false,
        domain,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FamilyIndexedOp, PairIndexedOp};
    use crate::index::SemigroupTable;

    fn z2() -> IndexStructure {
        IndexStructure::finite(SemigroupTable::cyclic(2))
    }

    fn zero_algebra(index: IndexStructure) -> Algebra<usize> {
        let mut alg = Algebra::new(index.clone(), |b: &usize| format!("b{b}")).with_basis(vec![0, 1]);
        for role in Role::ALL {
            alg = alg
                .with_pair(role, PairIndexedOp::zero(index.clone()))
                .unwrap()
                .with_family(role, FamilyIndexedOp::zero(index.clone()))
                .unwrap();
        }
        alg
    }

    #[test]
    fn zero_algebra_passes_everything_applicable() {
        let alg = zero_algebra(z2());
        let dom = Domain::exhaustive(&alg).unwrap();
        for suite in AxiomSuite::ALL {
            if suite == AxiomSuite::RelUnital {
                // the zero algebra has no unit vector
                assert!(matches!(check_axioms(&alg, suite, &dom), Err(Error::MissingRole(_))));
                continue;
            }
            let r = check_axioms(&alg, suite, &dom).unwrap();
            assert!(r.passed, "{suite}");
            // |S|^arity index tuples × d³ basis triples
            assert_eq!(r.instances, 2u64.pow(suite.index_arity() as u32) * 8);
        }
    }

    #[test]
    fn commutative_suites_reject_noncommutative_index() {
        let lz = SemigroupTable::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 1]],
            None,
            false,
        )
        .unwrap();
        let alg = zero_algebra(IndexStructure::finite(lz));
        let dom = Domain::exhaustive(&alg).unwrap();
        for suite in AxiomSuite::ALL.into_iter().filter(|s| s.requires_commutative()) {
            assert!(matches!(
                check_axioms(&alg, suite, &dom),
                Err(Error::NonCommutativeIndex(_))
            ));
        }
        assert!(check_axioms(&alg, AxiomSuite::RelDendriform, &dom).unwrap().passed);
    }

    #[test]
    fn missing_role_is_an_error() {
        let alg = Algebra::<usize>::new(z2(), |b| b.to_string()).with_basis(vec![0]);
        let dom = Domain::exhaustive(&alg).unwrap();
        assert!(matches!(
            check_axioms(&alg, AxiomSuite::RelAssoc, &dom),
            Err(Error::MissingRole(_))
        ));
    }

    #[test]
    fn index_filter_and_tuples() {
        let dom = Domain::<usize>::new(vec![[0, 0, 0]], vec![1, 2, 3])
            .with_index_filter(|t| t.iter().sum::<usize>() <= 5);
        let t = dom.index_tuples(3);
        assert_eq!(t.first().unwrap(), &vec![1, 1, 1]);
        assert!(t.iter().all(|t| t.iter().sum::<usize>() <= 5));
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn suite_names_parse() {
        for s in AxiomSuite::ALL {
            assert_eq!(s.name().parse::<AxiomSuite>().unwrap(), s);
        }
        assert!("RelNothing".parse::<AxiomSuite>().is_err());
    }

    #[test]
    fn suites_read_expected_roles() {
        let (pair, fam) = AxiomSuite::RelPoisson.roles();
        assert_eq!(pair, [Role::Mul, Role::Bracket].into_iter().collect());
        assert!(fam.is_empty());
        let (pair, fam) = AxiomSuite::DimonoidDendriform.roles();
        assert!(pair.is_empty());
        assert_eq!(fam, [Role::Prec, Role::Succ].into_iter().collect());
    }
}
