//! Morphism families between finite relative algebras.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rota_baxter::{check_matrix_shape, matrix_column};
use super::{check_axioms, AxiomSuite, Domain, FiniteRelativeAlgebra};
use crate::error::{Error, Result};
use crate::index::Elem;
use crate::linear::{LinComb, Scalar};
use crate::report::{Counterexample, Report, Side};

/// Linear maps `f_α : source → target`, one per index element, each given
/// as a `target-dim × source-dim` matrix acting on column vectors.
#[derive(Clone, Debug)]
pub struct MorphismFamily {
    source: FiniteRelativeAlgebra,
    target: FiniteRelativeAlgebra,
    maps: Vec<Vec<Vec<Scalar>>>,
}

impl MorphismFamily {
    pub fn new(
        source: FiniteRelativeAlgebra,
        target: FiniteRelativeAlgebra,
        maps: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        if source.index() != target.index() {
            return Err(Error::IndexMismatch(
                "source and target are indexed by different semigroups".into(),
            ));
        }
        let n = source.index().size();
        if maps.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} maps given for {n} index elements",
                maps.len()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            check_matrix_shape(
                m,
                target.dim(),
                source.dim(),
                &format!("f_{}", source.index().name(a)),
            )?;
        }
        Ok(MorphismFamily { source, target, maps })
    }

    /// Every component equal to `k` times the identity.
    pub fn scalar_family(alg: FiniteRelativeAlgebra, ks: &[Scalar]) -> Result<Self> {
        let d = alg.dim();
        let maps = ks
            .iter()
            .map(|k| {
                (0..d)
                    .map(|i| (0..d).map(|j| if i == j { k.clone() } else { Scalar::zero() }).collect())
                    .collect()
            })
            .collect();
        Self::new(alg.clone(), alg, maps)
    }

    pub fn source(&self) -> &FiniteRelativeAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteRelativeAlgebra {
        &self.target
    }

    pub fn apply(&self, a: Elem, x: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (&j, k) in x.iter() {
            out.add_scaled(k, &matrix_column(&self.maps[a], j));
        }
        out
    }
}

/// Checks `f_{αβ}(x op_{α,β} y) = f_α(x) op_{α,β} f_β(y)` for every operation
/// the suite reads (single-indexed operations through their pair lift), every
/// basis pair, and every index pair. Both algebras must pass the suite.
pub fn check_morphism(f: &MorphismFamily, suite: AxiomSuite) -> Result<Report> {
    let src = f.source.to_algebra().lift_family()?;
    let tgt = f.target.to_algebra().lift_family()?;
    for (alg, which) in [(&src, "source"), (&tgt, "target")] {
        let r = check_axioms(alg, suite, &Domain::exhaustive(alg)?)?;
        if let Some(cx) = r.counterexample {
            return Err(Error::PreconditionFailed {
                what: format!("{which} algebra passes {suite}"),
                counterexample: Box::new(cx),
            });
        }
    }
    let (pair_roles, fam_roles) = suite.roles();
    let roles: Vec<_> = pair_roles.union(&fam_roles).copied().collect();
    let ops = roles
        .iter()
        .map(|&r| Ok((r, src.pair(r)?, tgt.pair(r)?)))
        .collect::<Result<Vec<_>>>()?;
    let n = f.source.index().size();
    let d = f.source.dim();
    let per_role = n * n * d * d;
    let total = ops.len() * per_role;
    let index = src.index();
    let outcome = (0..total).into_par_iter().find_map_first(|i| {
        let (role, sop, top) = &ops[i / per_role];
        let i = i % per_role;
        let (a, b) = (i / (n * d * d), (i / (d * d)) % n);
        let (x, y) = ((i / d) % d, i % d);
        let sides = (|| {
            let ab = index.mul(a, b)?;
            let lhs = f.apply(ab, &sop.apply_basis(a, b, &x, &y)?);
            let fx = f.apply(a, &LinComb::basis(x));
            let fy = f.apply(b, &LinComb::basis(y));
            Ok((lhs, top.apply(a, b, &fx, &fy)?))
        })();
        match sides {
            Err(e) => Some(Err(e)),
            Ok((l, r)) if l != r => Some(Ok(Counterexample {
                equation: format!("morphism.{role}"),
                indices: vec![index.name(a), index.name(b)],
                basis: vec![src.basis_name(&x), src.basis_name(&y)],
                lhs: Side::Combination(tgt.pairs(&l)),
                rhs: Side::Combination(tgt.pairs(&r)),
            })),
            Ok(_) => None,
        }
    });
    let cx = outcome.transpose()?;
    Ok(Report::from_outcome("morphism", total as u64, cx))
}

/// On-disk form: matrices keyed by index element name. Source and target are
/// paths to algebra files; when absent the command line supplies them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    #[serde(default)]
    pub source: Option<String>,
    #[serde(default)]
    pub target: Option<String>,
    pub maps: BTreeMap<String, Vec<Vec<Scalar>>>,
}

impl MorphismJson {
    pub fn into_family(
        self,
        source: FiniteRelativeAlgebra,
        target: FiniteRelativeAlgebra,
    ) -> Result<MorphismFamily> {
        let index = source.index().clone();
        let mut maps = vec![None; index.size()];
        for (k, m) in self.maps {
            let a = index
                .element(k.trim())
                .map_err(|e| Error::schema(format!("maps.{k}"), e.to_string()))?;
            maps[a] = Some(m);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.ok_or_else(|| {
                    Error::schema("maps", format!("no map for index {}", index.name(a)))
                })
            })
            .collect::<Result<_>>()?;
        MorphismFamily::new(source, target, maps)
    }
}
