//! Rota–Baxter families of operators.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_axioms, Algebra, AxiomSuite, Domain, Role};
use crate::error::{Error, Result};
use crate::index::{Elem, IndexStructure};
use crate::linear::{Basis, LinComb, Scalar};
use crate::report::{Counterexample, Report, Side};

/// Column `j` of a matrix as a combination: `M(b_j) = Σ_i M[i][j] b_i`.
pub(crate) fn matrix_column(m: &[Vec<Scalar>], j: usize) -> LinComb<usize> {
    m.iter()
        .enumerate()
        .filter(|(_, row)| !row[j].is_zero())
        .map(|(i, row)| (i, row[j].clone()))
        .collect()
}

pub(crate) fn check_matrix_shape(m: &[Vec<Scalar>], rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be {rows}x{cols}"
        )));
    }
    Ok(())
}

type MapFn<B> = dyn Fn(Elem, &B) -> Result<LinComb<B>> + Send + Sync;

/// How the operators `R_α` are given.
#[derive(Clone)]
pub enum RotaBaxterMaps<B: Basis> {
    /// One `d×d` matrix per index element, acting on column vectors.
    Matrices(BTreeMap<Elem, Vec<Vec<Scalar>>>),
    /// A linear map given on basis elements.
    Computed(Arc<MapFn<B>>),
}

/// A carrier with a product `mul` and linear operators `R_α`, one per index.
#[derive(Clone)]
pub struct RotaBaxterFamily<B: Basis> {
    carrier: Algebra<B>,
    maps: RotaBaxterMaps<B>,
}

impl<B: Basis> RotaBaxterFamily<B> {
    pub fn computed(
        carrier: Algebra<B>,
        f: impl Fn(Elem, &B) -> Result<LinComb<B>> + Send + Sync + 'static,
    ) -> Self {
        RotaBaxterFamily {
            carrier,
            maps: RotaBaxterMaps::Computed(Arc::new(f)),
        }
    }

    pub fn carrier(&self) -> &Algebra<B> {
        &self.carrier
    }

    pub fn maps(&self) -> &RotaBaxterMaps<B> {
        &self.maps
    }

    pub fn apply_basis(&self, a: Elem, x: &B) -> Result<LinComb<B>> {
        match &self.maps {
            RotaBaxterMaps::Computed(f) => f(a, x),
            RotaBaxterMaps::Matrices(ms) => {
                let m = ms
                    .get(&a)
                    .ok_or_else(|| Error::WindowClosure(self.carrier.index().name(a)))?;
                let j = self.position(x)?;
                let basis = self.carrier.basis().expect("matrix families have a basis");
                Ok(matrix_column(m, j)
                    .iter()
                    .map(|(i, v)| (basis[*i].clone(), v.clone()))
                    .collect())
            }
        }
    }

    pub fn apply(&self, a: Elem, x: &LinComb<B>) -> Result<LinComb<B>> {
        x.try_map_linear(|b| self.apply_basis(a, b))
    }

    fn position(&self, x: &B) -> Result<usize> {
        self.carrier
            .basis()
            .and_then(|bs| bs.iter().position(|b| b == x))
            .ok_or_else(|| Error::UnknownName {
                kind: "basis element",
                name: self.carrier.basis_name(x),
            })
    }
}

impl<B: Basis> RotaBaxterFamily<B> {
    /// Operators from matrices keyed by index element; the carrier needs a
    /// finite basis of the matching size.
    pub fn from_matrices(
        carrier: Algebra<B>,
        matrices: BTreeMap<Elem, Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let d = carrier
            .basis()
            .ok_or_else(|| Error::NotApplicable("matrix operators need a finite basis".into()))?
            .len();
        for (a, m) in &matrices {
            check_matrix_shape(m, d, d, &format!("R_{}", carrier.index().name(*a)))?;
        }
        Ok(RotaBaxterFamily {
            carrier,
            maps: RotaBaxterMaps::Matrices(matrices),
        })
    }
}

/// Checks `R_α(x)·_{α,β}R_β(y) = R_{αβ}(R_α(x)·_{α,β}y + x·_{α,β}R_β(y))` for
/// every pair of basis elements and every pair of indices from `window`.
///
/// The carrier's product must first pass the associativity suite on the
/// window. With matrix operators an index product outside the keys of the
/// matrix map is a window-closure error.
pub fn check_rota_baxter<B: Basis>(rb: &RotaBaxterFamily<B>, window: &[Elem]) -> Result<Report> {
    let alg = rb.carrier();
    let basis = alg
        .basis()
        .ok_or_else(|| Error::NotApplicable("Rota-Baxter checks need a finite basis".into()))?;
    if let IndexStructure::Virtual(v) = alg.index() {
        if let Some(&a) = window.iter().find(|&&a| !v.contains(a)) {
            return Err(Error::WindowClosure(format!("{a} is not an element of {}", v.name())));
        }
    }
    let assoc = check_axioms(alg, AxiomSuite::RelAssoc, &Domain::cube(basis, window.to_vec()))?;
    if let Some(cx) = assoc.counterexample {
        return Err(Error::PreconditionFailed {
            what: "associativity of the carrier".into(),
            counterexample: Box::new(cx),
        });
    }
    let mul = alg.pair(Role::Mul)?;
    let d = basis.len();
    let w = window.len();
    let total = w * w * d * d;
    let outcome = (0..total).into_par_iter().find_map_first(|i| {
        let (a, b) = (window[i / (w * d * d)], window[(i / (d * d)) % w]);
        let (x, y) = (&basis[(i / d) % d], &basis[i % d]);
        let sides = (|| {
            let ab = alg.index().mul(a, b)?;
            let rx = rb.apply_basis(a, x)?;
            let ry = rb.apply_basis(b, y)?;
            let lhs = mul.apply(a, b, &rx, &ry)?;
            let inner = mul
                .apply(a, b, &rx, &LinComb::basis(y.clone()))?
                .add(&mul.apply(a, b, &LinComb::basis(x.clone()), &ry)?);
            let rhs = rb.apply(ab, &inner)?;
            Ok((lhs, rhs))
        })();
        match sides {
            Err(e) => Some(Err(e)),
            Ok((l, r)) if l != r => Some(Ok(Counterexample {
                equation: "rota-baxter".into(),
                indices: vec![alg.index().name(a), alg.index().name(b)],
                basis: vec![alg.basis_name(x), alg.basis_name(y)],
                lhs: Side::Combination(alg.pairs(&l)),
                rhs: Side::Combination(alg.pairs(&r)),
            })),
            Ok(_) => None,
        }
    });
    let cx = outcome.transpose()?;
    Ok(Report::from_outcome("rota-baxter", total as u64, cx))
}

/// On-disk form of a family of operators given by matrices keyed by index
/// element name, or of a built-in family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RotaBaxterJson {
    Matrices {
        maps: BTreeMap<String, Vec<Vec<Scalar>>>,
    },
    Builtin {
        builtin: String,
    },
}

impl RotaBaxterJson {
    /// Matrices keyed by element, resolved against the carrier's index.
    pub fn matrices(
        maps: &BTreeMap<String, Vec<Vec<Scalar>>>,
        index: &IndexStructure,
    ) -> Result<BTreeMap<Elem, Vec<Vec<Scalar>>>> {
        maps.iter()
            .map(|(k, m)| {
                let a = index
                    .element(k.trim())
                    .map_err(|e| Error::schema(format!("maps.{k}"), e.to_string()))?;
                Ok((a, m.clone()))
            })
            .collect()
    }
}
