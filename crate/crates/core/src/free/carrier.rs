//! The free dendriform algebra over a dimonoid, on decorated trees.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::{parse_tree, random_tree, Tree};
use crate::algebra::{Algebra, Domain, FamilyIndexedOp, Role};
use crate::error::{Error, Result};
use crate::index::{dimonoid_from_semigroup, matching_dimonoid, DimonoidTable, Elem, IndexStructure, SemigroupTable};
use crate::linear::{bilinear_extend, LinComb, Scalar};

/// Trees decorated by a finite label set `X` with edges labelled by a
/// dimonoid `S`, carrying the operations `≺_α` and `≻_α`.
#[derive(Clone, Debug)]
pub struct FreeDendCarrier {
    decorations: Arc<Vec<String>>,
    dimonoid: Arc<DimonoidTable>,
}

fn grafted(label: usize, left: Option<(Elem, Tree)>, right: Option<(Elem, Tree)>) -> Tree {
    Tree::node(label, left, right)
}

impl FreeDendCarrier {
    pub fn over_dimonoid(decorations: Vec<String>, dimonoid: DimonoidTable) -> Result<Self> {
        if decorations.is_empty() {
            return Err(Error::schema("decorations", "at least one decoration is needed"));
        }
        for (i, d) in decorations.iter().enumerate() {
            if d.is_empty() || !d.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::schema("decorations", format!("{d:?} is not an identifier")));
            }
            if decorations[..i].contains(d) {
                return Err(Error::schema("decorations", format!("{d:?} is declared twice")));
            }
        }
        Ok(FreeDendCarrier {
            decorations: Arc::new(decorations),
            dimonoid: Arc::new(dimonoid),
        })
    }

    /// Over the dimonoid `α⊣β = α⊢β = αβ` of a semigroup.
    pub fn over_semigroup(decorations: Vec<String>, s: &SemigroupTable) -> Result<Self> {
        Self::over_dimonoid(decorations, dimonoid_from_semigroup(s)?)
    }

    /// Over the projection dimonoid on `n` elements.
    pub fn matching(decorations: Vec<String>, n: usize) -> Result<Self> {
        Self::over_dimonoid(decorations, matching_dimonoid(n)?)
    }

    pub fn decorations(&self) -> &[String] {
        &self.decorations
    }

    pub fn dimonoid(&self) -> &DimonoidTable {
        &self.dimonoid
    }

    pub fn index(&self) -> IndexStructure {
        IndexStructure::Dimonoid(Arc::clone(&self.dimonoid))
    }

    pub fn edge_names(&self) -> &[String] {
        self.dimonoid.names()
    }

    pub fn parse(&self, text: &str) -> Result<Tree> {
        parse_tree(text, &self.decorations, self.edge_names())
    }

    pub fn print(&self, t: &Tree) -> String {
        t.display(&self.decorations, self.edge_names()).to_string()
    }

    pub fn render(&self, v: &LinComb<Tree>) -> String {
        v.render(|t| self.print(t))
    }

    /// Rejects trees using labels outside `X` or `S`.
    pub fn validate(&self, t: &Tree) -> Result<()> {
        let (v, e) = t.max_labels();
        if let Some(v) = v.filter(|&v| v >= self.decorations.len()) {
            return Err(Error::UndeclaredLabel(format!("vertex label #{v}")));
        }
        if let Some(e) = e.filter(|&e| e >= self.dimonoid.size()) {
            return Err(Error::UndeclaredLabel(format!("edge label #{e}")));
        }
        Ok(())
    }

    fn check_index(&self, a: Elem) -> Result<()> {
        if a < self.dimonoid.size() {
            Ok(())
        } else {
            Err(Error::UndeclaredLabel(format!("index #{a}")))
        }
    }

    /// `s ≺_α t` on trees.
    ///
    /// For `s = x(s₁|σ₁, s₂|σ₂)`:
    /// `s≺_α t = x(s₁|σ₁, (s₂≺_α t)|σ₂⊣α) + x(s₁|σ₁, (s₂≻_{σ₂} t)|σ₂⊢α)`,
    /// with `s≺_α e = s` and `e≺_α t = 0`. When `s₂ = e` the edge label
    /// `σ₂` is absent and the sum reduces to `x(s₁|σ₁, t|α)`.
    pub fn prec_basis(&self, s: &Tree, t: &Tree, a: Elem) -> Result<LinComb<Tree>> {
        self.check_index(a)?;
        self.validate(s)?;
        self.validate(t)?;
        self.prec(s, t, a)
    }

    /// `s ≻_α t` on trees.
    ///
    /// For `t = y(t₁|τ₁, t₂|τ₂)`:
    /// `s≻_α t = y((s≺_{τ₁} t₁)|α⊣τ₁, t₂|τ₂) + y((s≻_α t₁)|α⊢τ₁, t₂|τ₂)`,
    /// with `s≻_α e = 0` and `e≻_α t = t`. When `t₁ = e` the sum reduces to
    /// `y(s|α, t₂|τ₂)`.
    pub fn succ_basis(&self, s: &Tree, t: &Tree, a: Elem) -> Result<LinComb<Tree>> {
        self.check_index(a)?;
        self.validate(s)?;
        self.validate(t)?;
        self.succ(s, t, a)
    }

    fn prec(&self, s: &Tree, t: &Tree, a: Elem) -> Result<LinComb<Tree>> {
        let Some(n) = s.root() else {
            return if t.is_empty() {
                Err(Error::EmptyProduct)
            } else {
                Ok(LinComb::zero())
            };
        };
        if t.is_empty() {
            return Ok(LinComb::basis(s.clone()));
        }
        let left = n.left().cloned();
        let Some((s2e, s2)) = n.right() else {
            return Ok(LinComb::basis(grafted(n.label(), left, Some((a, t.clone())))));
        };
        let mut out = LinComb::zero();
        let l = self.dimonoid.left(*s2e, a);
        for (u, k) in self.prec(s2, t, a)?.iter() {
            out.add_term(k.clone(), grafted(n.label(), left.clone(), Some((l, u.clone()))));
        }
        let r = self.dimonoid.right(*s2e, a);
        for (u, k) in self.succ(s2, t, *s2e)?.iter() {
            out.add_term(k.clone(), grafted(n.label(), left.clone(), Some((r, u.clone()))));
        }
        Ok(out)
    }

    fn succ(&self, s: &Tree, t: &Tree, a: Elem) -> Result<LinComb<Tree>> {
        let Some(n) = t.root() else {
            return if s.is_empty() {
                Err(Error::EmptyProduct)
            } else {
                Ok(LinComb::zero())
            };
        };
        if s.is_empty() {
            return Ok(LinComb::basis(t.clone()));
        }
        let right = n.right().cloned();
        let Some((t1e, t1)) = n.left() else {
            return Ok(LinComb::basis(grafted(n.label(), Some((a, s.clone())), right)));
        };
        let mut out = LinComb::zero();
        let l = self.dimonoid.left(a, *t1e);
        for (u, k) in self.prec(s, t1, *t1e)?.iter() {
            out.add_term(k.clone(), grafted(n.label(), Some((l, u.clone())), right.clone()));
        }
        let r = self.dimonoid.right(a, *t1e);
        for (u, k) in self.succ(s, t1, a)?.iter() {
            out.add_term(k.clone(), grafted(n.label(), Some((r, u.clone())), right.clone()));
        }
        Ok(out)
    }

    /// Bilinear `≺_α`.
    pub fn free_prec(&self, s: &LinComb<Tree>, t: &LinComb<Tree>, a: Elem) -> Result<LinComb<Tree>> {
        bilinear_extend(|x, y, _| self.prec_basis(x, y, a), s, t, ())
    }

    /// Bilinear `≻_α`.
    pub fn free_succ(&self, s: &LinComb<Tree>, t: &LinComb<Tree>, a: Elem) -> Result<LinComb<Tree>> {
        bilinear_extend(|x, y, _| self.succ_basis(x, y, a), s, t, ())
    }

    /// `≺_α` and `≻_α` as single-indexed operations over the dimonoid.
    pub fn ops(&self) -> (FamilyIndexedOp<Tree>, FamilyIndexedOp<Tree>) {
        let (c1, c2) = (self.clone(), self.clone());
        (
            FamilyIndexedOp::new(self.index(), move |a, x, y| c1.prec_basis(x, y, a)),
            FamilyIndexedOp::new(self.index(), move |a, x, y| c2.succ_basis(x, y, a)),
        )
    }

    /// The operations of a carrier whose dimonoid comes from a semigroup.
    pub fn free_family_ops(&self) -> Result<(FamilyIndexedOp<Tree>, FamilyIndexedOp<Tree>)> {
        if !self.dimonoid.is_semigroup_form() {
            return Err(Error::NotApplicable(
                "family operations need a dimonoid with ⊣ = ⊢".into(),
            ));
        }
        Ok(self.ops())
    }

    /// The operations of a carrier over a projection dimonoid.
    pub fn free_matching_ops(&self) -> Result<(FamilyIndexedOp<Tree>, FamilyIndexedOp<Tree>)> {
        if !self.dimonoid.is_matching_form() {
            return Err(Error::NotApplicable(
                "matching operations need the projection dimonoid".into(),
            ));
        }
        Ok(self.ops())
    }

    /// The carrier as an algebra with single-indexed `prec` and `succ`.
    pub fn algebra(&self) -> Algebra<Tree> {
        let (prec, succ) = self.ops();
        let me = self.clone();
        Algebra::new(self.index(), move |t: &Tree| me.print(t))
            .with_family(Role::Prec, prec)
            .and_then(|a| a.with_family(Role::Succ, succ))
            .expect("same index")
    }

    /// `samples` triples of random trees with at most `max_vertices`
    /// vertices each, from a generator seeded with `seed`.
    pub fn sample_triples(&self, samples: usize, max_vertices: usize, seed: u64) -> Vec<[Tree; 3]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, s) = (self.decorations.len(), self.dimonoid.size());
        (0..samples)
            .map(|_| {
                [
                    random_tree(&mut rng, x, s, max_vertices),
                    random_tree(&mut rng, x, s, max_vertices),
                    random_tree(&mut rng, x, s, max_vertices),
                ]
            })
            .collect()
    }

    /// Sampled triples crossed with every index tuple.
    pub fn sampled_domain(&self, samples: usize, max_vertices: usize, seed: u64) -> Domain<Tree> {
        Domain::new(
            self.sample_triples(samples, max_vertices, seed),
            (0..self.dimonoid.size()).collect(),
        )
    }
}

/// A single tree as a combination with coefficient one.
pub fn tree_vector(t: Tree) -> LinComb<Tree> {
    LinComb::term(Scalar::one(), t)
}
