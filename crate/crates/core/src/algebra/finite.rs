//! Finite-dimensional relative algebras given by structure constants.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Algebra, FamilyIndexedOp, PairIndexedOp, Role};
use crate::error::{Error, Result};
use crate::index::{Elem, IndexStructure, SemigroupJson, SemigroupTable};
use crate::linear::{LinComb, Scalar};

/// Structure constants of one operation: for each slot (an index pair for
/// pair-indexed operations, an index element for single-indexed ones) a
/// `d×d×d` array whose entry `[i][j][k]` is the coefficient of `b_k` in
/// `b_i op b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    slots: usize,
    dim: usize,
    data: Vec<Scalar>,
}

impl OpTable {
    pub fn zeros(slots: usize, dim: usize) -> Self {
        OpTable {
            slots,
            dim,
            data: vec![Scalar::zero(); slots * dim * dim * dim],
        }
    }

    fn at(&self, slot: usize, i: usize, j: usize, k: usize) -> usize {
        ((slot * self.dim + i) * self.dim + j) * self.dim + k
    }

    pub fn get(&self, slot: usize, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.at(slot, i, j, k)]
    }

    pub fn set(&mut self, slot: usize, i: usize, j: usize, k: usize, v: Scalar) {
        let at = self.at(slot, i, j, k);
        self.data[at] = v;
    }

    pub fn product(&self, slot: usize, i: usize, j: usize) -> LinComb<usize> {
        let start = self.at(slot, i, j, 0);
        self.data[start..start + self.dim]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slice(&self, slot: usize) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.get(slot, i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    fn fill_slot(&mut self, slot: usize, cube: &[Vec<Vec<Scalar>>], path: &str) -> Result<()> {
        let d = self.dim;
        if cube.len() != d || cube.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::schema(path, format!("structure constants must be {d}x{d}x{d}")));
        }
        for (i, m) in cube.iter().enumerate() {
            for (j, r) in m.iter().enumerate() {
                for (k, v) in r.iter().enumerate() {
                    self.set(slot, i, j, k, v.clone());
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional S-relative algebra over a finite index semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRelativeAlgebra {
    basis: Vec<String>,
    index: Arc<SemigroupTable>,
    pair_ops: BTreeMap<Role, OpTable>,
    family_ops: BTreeMap<Role, OpTable>,
    unit: Option<Vec<Scalar>>,
}

impl FiniteRelativeAlgebra {
    pub fn new(basis: Vec<String>, index: Arc<SemigroupTable>) -> Self {
        FiniteRelativeAlgebra {
            basis,
            index,
            pair_ops: BTreeMap::new(),
            family_ops: BTreeMap::new(),
            unit: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index(&self) -> &Arc<SemigroupTable> {
        &self.index
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn set_unit(&mut self, unit: Option<Vec<Scalar>>) -> Result<()> {
        if let Some(u) = &unit {
            if u.len() != self.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "unit has {} coordinates, dimension is {}",
                    u.len(),
                    self.dim()
                )));
            }
        }
        self.unit = unit;
        Ok(())
    }

    /// Structure constants of a pair-indexed role, allocating zeros on first use.
    pub fn pair_op_mut(&mut self, role: Role) -> &mut OpTable {
        let n = self.index.size();
        let d = self.dim();
        self.pair_ops
            .entry(role)
            .or_insert_with(|| OpTable::zeros(n * n, d))
    }

    pub fn family_op_mut(&mut self, role: Role) -> &mut OpTable {
        let n = self.index.size();
        let d = self.dim();
        self.family_ops
            .entry(role)
            .or_insert_with(|| OpTable::zeros(n, d))
    }

    pub fn pair_op(&self, role: Role) -> Option<&OpTable> {
        self.pair_ops.get(&role)
    }

    pub fn family_op(&self, role: Role) -> Option<&OpTable> {
        self.family_ops.get(&role)
    }

    pub fn pair_roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.pair_ops.keys().copied()
    }

    pub fn family_roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.family_ops.keys().copied()
    }

    /// `b_i op_{α,β} b_j` for a pair-indexed role.
    pub fn pair_product(&self, role: Role, a: Elem, b: Elem, i: usize, j: usize) -> Option<LinComb<usize>> {
        let n = self.index.size();
        self.pair_ops.get(&role).map(|t| t.product(a * n + b, i, j))
    }

    pub fn index_structure(&self) -> IndexStructure {
        IndexStructure::Finite(Arc::clone(&self.index))
    }

    /// The algebra as a carrier for the axiom engine, with basis `0..d`.
    pub fn to_algebra(&self) -> Algebra<usize> {
        let index = self.index_structure();
        let names = Arc::new(self.basis.clone());
        let n = self.index.size();
        let mut alg = Algebra::new(index.clone(), move |b: &usize| names[*b].clone())
            .with_basis((0..self.dim()).collect());
        for (&role, table) in &self.pair_ops {
            let table = Arc::new(table.clone());
            let op = PairIndexedOp::new(index.clone(), move |a, b, i: &usize, j: &usize| {
                Ok(table.product(a * n + b, *i, *j))
            });
            alg = alg.with_pair(role, op).expect("same index");
        }
        for (&role, table) in &self.family_ops {
            let table = Arc::new(table.clone());
            let op = FamilyIndexedOp::new(index.clone(), move |a, i: &usize, j: &usize| {
                Ok(table.product(a, *i, *j))
            });
            alg = alg.with_family(role, op).expect("same index");
        }
        if let Some(u) = &self.unit {
            alg = alg.with_unit(
                u.iter()
                    .enumerate()
                    .map(|(k, v)| (k, v.clone()))
                    .collect(),
            );
        }
        alg
    }

    /// Tabulates every operation of `alg` into structure constants. The
    /// algebra's basis must be `0..basis.len()` over a finite semigroup.
    pub fn materialize(alg: &Algebra<usize>, basis: Vec<String>) -> Result<Self> {
        let index = match alg.index() {
            IndexStructure::Finite(s) => Arc::clone(s),
            other => {
                return Err(Error::NotApplicable(format!(
                    "cannot tabulate operations over a {}",
                    other.describe()
                )))
            }
        };
        let d = basis.len();
        let n = index.size();
        let mut out = FiniteRelativeAlgebra::new(basis, Arc::clone(&index));
        let roles: Vec<Role> = alg.pair_roles().collect();
        for role in roles {
            let op = alg.pair(role)?;
            let mut table = OpTable::zeros(n * n, d);
            for a in 0..n {
                for b in 0..n {
                    for i in 0..d {
                        for j in 0..d {
                            for (&k, v) in op.apply_basis(a, b, &i, &j)?.iter() {
                                if k >= d {
                                    return Err(Error::DimensionMismatch(format!(
                                        "{role} produced basis element {k} outside 0..{d}"
                                    )));
                                }
                                table.set(a * n + b, i, j, k, v.clone());
                            }
                        }
                    }
                }
            }
            out.pair_ops.insert(role, table);
        }
        let roles: Vec<Role> = alg.family_roles().collect();
        for role in roles {
            let op = alg.family(role)?;
            let mut table = OpTable::zeros(n, d);
            for a in 0..n {
                for i in 0..d {
                    for j in 0..d {
                        for (&k, v) in op.apply_basis(a, &i, &j)?.iter() {
                            if k >= d {
                                return Err(Error::DimensionMismatch(format!(
                                    "{role} produced basis element {k} outside 0..{d}"
                                )));
                            }
                            table.set(a, i, j, k, v.clone());
                        }
                    }
                }
            }
            out.family_ops.insert(role, table);
        }
        if let Some(u) = alg.unit() {
            out.unit = Some((0..d).map(|k| u.coeff(&k)).collect());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.index.size();
        let name = |a: Elem| self.index.name(a).to_string();
        let ops = self
            .pair_ops
            .iter()
            .map(|(role, t)| {
                let slots = (0..n * n)
                    .map(|s| (format!("({},{})", name(s / n), name(s % n)), t.slice(s)))
                    .collect();
                (role.to_string(), slots)
            })
            .collect();
        let family_ops = self
            .family_ops
            .iter()
            .map(|(role, t)| {
                let slots = (0..n).map(|s| (name(s), t.slice(s))).collect();
                (role.to_string(), slots)
            })
            .collect();
        AlgebraJson {
            dim: self.dim(),
            basis: self.basis.clone(),
            semigroup: SemigroupRef::Inline(SemigroupJson::from(self.index.as_ref())),
            ops,
            family_ops,
            unit: self.unit.clone(),
        }
    }
}

/// A semigroup given inline or as a path (relative to the referencing file).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupRef {
    Path(String),
    Inline(SemigroupJson),
}

impl SemigroupRef {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<SemigroupTable> {
        match self {
            SemigroupRef::Inline(js) => js.clone().into_table(),
            SemigroupRef::Path(p) => {
                let path = match base_dir {
                    Some(dir) => dir.join(p),
                    None => Path::new(p).to_path_buf(),
                };
                let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                crate::json::from_str::<SemigroupJson>(&text)?.into_table()
            }
        }
    }
}

type Cubes = BTreeMap<String, Vec<Vec<Vec<Scalar>>>>;

/// On-disk form of a [`FiniteRelativeAlgebra`].
///
/// `ops` maps a role name to slots keyed `"(α,β)"`; `family_ops` maps a role
/// name to slots keyed by a single element name. Missing slots are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub semigroup: SemigroupRef,
    #[serde(default)]
    pub ops: BTreeMap<String, Cubes>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub family_ops: BTreeMap<String, Cubes>,
    #[serde(default)]
    pub unit: Option<Vec<Scalar>>,
}

fn parse_pair_key(key: &str, index: &SemigroupTable, path: &str) -> Result<(Elem, Elem)> {
    let bad = || Error::schema(path, format!("expected a key of the form \"(α,β)\", found {key:?}"));
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let a = index.element(a.trim()).map_err(|e| Error::schema(path, e.to_string()))?;
    let b = index.element(b.trim()).map_err(|e| Error::schema(path, e.to_string()))?;
    Ok((a, b))
}

impl AlgebraJson {
    /// Builds the algebra, resolving a semigroup path against `base_dir`.
    pub fn into_algebra(self, base_dir: Option<&Path>) -> Result<FiniteRelativeAlgebra> {
        let index = Arc::new(self.semigroup.resolve(base_dir)?);
        self.into_algebra_over(index)
    }

    pub fn into_algebra_over(self, index: Arc<SemigroupTable>) -> Result<FiniteRelativeAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::schema(
                "basis",
                format!("{} names given for dimension {}", self.basis.len(), self.dim),
            ));
        }
        let n = index.size();
        let mut alg = FiniteRelativeAlgebra::new(self.basis, Arc::clone(&index));
        for (role_name, slots) in &self.ops {
            let role: Role = role_name
                .parse()
                .map_err(|e: Error| Error::schema(format!("ops.{role_name}"), e.to_string()))?;
            let table = alg.pair_op_mut(role);
            for (key, cube) in slots {
                let path = format!("ops.{role_name}.{key}");
                let (a, b) = parse_pair_key(key, &index, &path)?;
                table.fill_slot(a * n + b, cube, &path)?;
            }
        }
        for (role_name, slots) in &self.family_ops {
            let role: Role = role_name.parse().map_err(|e: Error| {
                Error::schema(format!("family_ops.{role_name}"), e.to_string())
            })?;
            let table = alg.family_op_mut(role);
            for (key, cube) in slots {
                let path = format!("family_ops.{role_name}.{key}");
                let a = index
                    .element(key.trim())
                    .map_err(|e| Error::schema(&path, e.to_string()))?;
                table.fill_slot(a, cube, &path)?;
            }
        }
        alg.set_unit(self.unit)
            .map_err(|e| Error::schema("unit", e.to_string()))?;
        Ok(alg)
    }
}
