//! Index structures: finite semigroups and monoids, dimonoids, 2-cocycles,
//! and computed ("virtual") semigroups for infinite index sets.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::Scalar;
use crate::report::{Counterexample, Report, Side};

/// Index elements are positions in a table, or the value itself for virtual
/// semigroups.
pub type Elem = usize;

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::MalformedTable("no elements".into()));
    }
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::MalformedTable(format!(
                "element name {n:?} must be a non-empty identifier"
            )));
        }
        if names[..i].contains(n) {
            return Err(Error::MalformedTable(format!("duplicate element name {n:?}")));
        }
    }
    Ok(())
}

fn check_square(name: &str, table: &[Vec<Elem>], n: usize) -> Result<()> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedTable(format!("{name} table must be {n}x{n}")));
    }
    for (a, row) in table.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedTable(format!(
                    "{name}[{a}][{b}] = {v} is out of range for {n} elements"
                )));
            }
        }
    }
    Ok(())
}

fn lookup(names: &[String], name: &str) -> Result<Elem> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "index element",
            name: name.to_string(),
        })
}

/// Position of the first element of `0..n³` (in lexicographic triple order)
/// for which `bad` returns a value.
fn first_triple<T: Send>(n: usize, bad: impl Fn(Elem, Elem, Elem) -> Option<T> + Sync) -> Option<T> {
    (0..n * n * n)
        .into_par_iter()
        .find_map_first(|i| bad(i / (n * n), (i / n) % n, i % n))
}

/// A finite semigroup given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    names: Vec<String>,
    product: Vec<Vec<Elem>>,
    unit: Option<Elem>,
    commutative: bool,
}

impl SemigroupTable {
    /// Validates shape and entry ranges; the algebraic laws are checked by
    /// [`check_semigroup`].
    pub fn new(
        names: Vec<String>,
        product: Vec<Vec<Elem>>,
        unit: Option<Elem>,
        commutative: bool,
    ) -> Result<Self> {
        check_names(&names)?;
        check_square("product", &product, names.len())?;
        if let Some(u) = unit {
            if u >= names.len() {
                return Err(Error::MalformedTable(format!("unit {u} is out of range")));
            }
        }
        Ok(SemigroupTable {
            names,
            product,
            unit,
            commutative,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n under addition, elements named `0`, …, `n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let product = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        SemigroupTable {
            names,
            product,
            unit: Some(0),
            commutative: true,
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.product[a][b]
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn claims_commutative(&self) -> bool {
        self.commutative
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Result<Elem> {
        lookup(&self.names, name)
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.product
    }
}

impl fmt::Debug for SemigroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemigroupTable")
            .field("elements", &self.names)
            .field("product", &self.product)
            .field("unit", &self.unit)
            .field("commutative", &self.commutative)
            .finish()
    }
}

/// Associativity over all triples, then the declared unit, then the
/// commutativity claim. The first violation in that order is reported.
pub fn check_semigroup(t: &SemigroupTable) -> Report {
    let n = t.size();
    let el = |a: Elem| Side::Element(t.name(a).to_string());
    let names = |xs: &[Elem]| xs.iter().map(|&a| t.name(a).to_string()).collect();
    let assoc = first_triple(n, |a, b, c| {
        let lhs = t.mul(t.mul(a, b), c);
        let rhs = t.mul(a, t.mul(b, c));
        (lhs != rhs).then(|| Counterexample {
            equation: "assoc".into(),
            indices: names(&[a, b, c]),
            basis: vec![],
            lhs: el(lhs),
            rhs: el(rhs),
        })
    });
    let cx = assoc
        .or_else(|| {
            let u = t.unit()?;
            (0..n).find_map(|a| {
                if t.mul(u, a) != a {
                    Some(Counterexample {
                        equation: "unit.left".into(),
                        indices: names(&[u, a]),
                        basis: vec![],
                        lhs: el(t.mul(u, a)),
                        rhs: el(a),
                    })
                } else if t.mul(a, u) != a {
                    Some(Counterexample {
                        equation: "unit.right".into(),
                        indices: names(&[a, u]),
                        basis: vec![],
                        lhs: el(t.mul(a, u)),
                        rhs: el(a),
                    })
                } else {
                    None
                }
            })
        })
        .or_else(|| {
            if !t.claims_commutative() {
                return None;
            }
            (0..n * n).find_map(|i| {
                let (a, b) = (i / n, i % n);
                (t.mul(a, b) != t.mul(b, a)).then(|| Counterexample {
                    equation: "comm".into(),
                    indices: names(&[a, b]),
                    basis: vec![],
                    lhs: el(t.mul(a, b)),
                    rhs: el(t.mul(b, a)),
                })
            })
        });
    Report::from_outcome("semigroup", (n * n * n) as u64, cx)
}

/// A finite dimonoid: two operations ⊣ (`left`) and ⊢ (`right`).
#[derive(Clone, PartialEq, Eq)]
pub struct DimonoidTable {
    names: Vec<String>,
    left: Vec<Vec<Elem>>,
    right: Vec<Vec<Elem>>,
}

impl DimonoidTable {
    pub fn new(names: Vec<String>, left: Vec<Vec<Elem>>, right: Vec<Vec<Elem>>) -> Result<Self> {
        check_names(&names)?;
        check_square("left", &left, names.len())?;
        check_square("right", &right, names.len())?;
        Ok(DimonoidTable { names, left, right })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// α ⊣ β
    pub fn left(&self, a: Elem, b: Elem) -> Elem {
        self.left[a][b]
    }

    /// α ⊢ β
    pub fn right(&self, a: Elem, b: Elem) -> Elem {
        self.right[a][b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Result<Elem> {
        lookup(&self.names, name)
    }

    pub fn left_table(&self) -> &[Vec<Elem>] {
        &self.left
    }

    pub fn right_table(&self) -> &[Vec<Elem>] {
        &self.right
    }

    /// True when ⊣ and ⊢ coincide, i.e. the dimonoid is a semigroup.
    pub fn is_semigroup_form(&self) -> bool {
        self.left == self.right
    }

    /// True when α⊣β = α and α⊢β = β.
    pub fn is_matching_form(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.left(a, b) == a && self.right(a, b) == b))
    }
}

impl fmt::Debug for DimonoidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DimonoidTable")
            .field("elements", &self.names)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// The five dimonoid identities, in the order they are checked at each triple.
pub const DIMONOID_IDENTITIES: [&str; 5] = [
    "(a⊣b)⊣c = a⊣(b⊣c)",
    "a⊣(b⊣c) = a⊣(b⊢c)",
    "(a⊢b)⊣c = a⊢(b⊣c)",
    "(a⊣b)⊢c = a⊢(b⊢c)",
    "a⊢(b⊢c) = (a⊢b)⊢c",
];

pub fn check_dimonoid(t: &DimonoidTable) -> Report {
    let n = t.size();
    let (l, r) = (|a, b| t.left(a, b), |a, b| t.right(a, b));
    let cx = first_triple(n, |a, b, c| {
        let sides = [
            (l(l(a, b), c), l(a, l(b, c))),
            (l(a, l(b, c)), l(a, r(b, c))),
            (l(r(a, b), c), r(a, l(b, c))),
            (r(l(a, b), c), r(a, r(b, c))),
            (r(a, r(b, c)), r(r(a, b), c)),
        ];
        sides
            .iter()
            .zip(DIMONOID_IDENTITIES)
            .find(|((x, y), _)| x != y)
            .map(|(&(x, y), id)| Counterexample {
                equation: id.to_string(),
                indices: [a, b, c].iter().map(|&e| t.name(e).to_string()).collect(),
                basis: vec![],
                lhs: Side::Element(t.name(x).to_string()),
                rhs: Side::Element(t.name(y).to_string()),
            })
    });
    Report::from_outcome("dimonoid", (n * n * n) as u64, cx)
}

/// ⊣ = ⊢ = the semigroup product. Refuses semigroups that fail
/// [`check_semigroup`].
pub fn dimonoid_from_semigroup(s: &SemigroupTable) -> Result<DimonoidTable> {
    let report = check_semigroup(s);
    if let Some(cx) = report.counterexample {
        return Err(Error::PreconditionFailed {
            what: "semigroup axioms".into(),
            counterexample: Box::new(cx),
        });
    }
    Ok(DimonoidTable {
        names: s.names.clone(),
        left: s.product.clone(),
        right: s.product.clone(),
    })
}

/// Default element names for generated dimonoids: `a`, `b`, … (or `s0`, `s1`,
/// … beyond 26 elements).
pub fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    }
}

/// The projection dimonoid α⊣β = α, α⊢β = β on `n` elements.
pub fn matching_dimonoid(n: usize) -> Result<DimonoidTable> {
    if n == 0 {
        return Err(Error::MalformedTable("a dimonoid needs at least one element".into()));
    }
    let left = (0..n).map(|a| vec![a; n]).collect();
    let right = (0..n).map(|_| (0..n).collect()).collect();
    Ok(DimonoidTable {
        names: letter_names(n),
        left,
        right,
    })
}

/// A nowhere-zero scalar function on S × S, meant to satisfy the 2-cocycle
/// identity c(α,β)c(αβ,γ) = c(α,βγ)c(β,γ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    base: Arc<SemigroupTable>,
    values: Vec<Vec<Scalar>>,
}

impl Cocycle {
    pub fn new(base: Arc<SemigroupTable>, values: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = base.size();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedCocycle(format!("values must be {n}x{n}")));
        }
        for (a, row) in values.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::MalformedCocycle(format!(
                        "c({}, {}) is zero",
                        base.name(a),
                        base.name(b)
                    )));
                }
            }
        }
        Ok(Cocycle { base, values })
    }

    pub fn constant_one(base: Arc<SemigroupTable>) -> Self {
        let n = base.size();
        Cocycle {
            base,
            values: vec![vec![Scalar::one(); n]; n],
        }
    }

    pub fn base(&self) -> &Arc<SemigroupTable> {
        &self.base
    }

    pub fn value(&self, a: Elem, b: Elem) -> &Scalar {
        &self.values[a][b]
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }
}

/// Refuses cocycles over a base that is not a semigroup.
pub fn check_cocycle(c: &Cocycle) -> Result<Report> {
    let base = &c.base;
    if let Some(cx) = check_semigroup(base).counterexample {
        return Err(Error::PreconditionFailed {
            what: "semigroup axioms".into(),
            counterexample: Box::new(cx),
        });
    }
    let n = base.size();
    let cx = first_triple(n, |a, b, g| {
        let lhs = c.value(a, b) * c.value(base.mul(a, b), g);
        let rhs = c.value(a, base.mul(b, g)) * c.value(b, g);
        (lhs != rhs).then(|| Counterexample {
            equation: "cocycle".into(),
            indices: [a, b, g].iter().map(|&e| base.name(e).to_string()).collect(),
            basis: vec![],
            lhs: Side::Element(lhs.to_string()),
            rhs: Side::Element(rhs.to_string()),
        })
    });
    Ok(Report::from_outcome("cocycle", (n * n * n) as u64, cx))
}

type ProductFn = dyn Fn(Elem, Elem) -> Elem + Send + Sync;

/// A semigroup whose elements are natural numbers and whose product is
/// computed. Checks over it run on a caller-supplied finite window.
pub struct VirtualSemigroup {
    name: String,
    product: Box<ProductFn>,
    unit: Option<Elem>,
    commutative: bool,
    min_element: Elem,
}

impl VirtualSemigroup {
    pub fn new(
        name: impl Into<String>,
        product: impl Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
        unit: Option<Elem>,
        commutative: bool,
        min_element: Elem,
    ) -> Self {
        VirtualSemigroup {
            name: name.into(),
            product: Box::new(product),
            unit,
            commutative,
            min_element,
        }
    }

    /// (ℤ_{>0}, +)
    pub fn positive_integers() -> Self {
        Self::new("positive-integers", |a, b| a + b, None, true, 1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        (self.product)(a, b)
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn contains(&self, a: Elem) -> bool {
        a >= self.min_element
    }
}

impl fmt::Debug for VirtualSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VirtualSemigroup")
            .field("name", &self.name)
            .field("unit", &self.unit)
            .field("commutative", &self.commutative)
            .finish()
    }
}

/// The index structure an algebra's operations are labelled by.
#[derive(Clone, Debug)]
pub enum IndexStructure {
    Finite(Arc<SemigroupTable>),
    Virtual(Arc<VirtualSemigroup>),
    Dimonoid(Arc<DimonoidTable>),
}

impl IndexStructure {
    pub fn finite(s: SemigroupTable) -> Self {
        IndexStructure::Finite(Arc::new(s))
    }

    /// Semigroup product. Dimonoids have one only when ⊣ = ⊢.
    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        match self {
            IndexStructure::Finite(s) => Ok(s.mul(a, b)),
            IndexStructure::Virtual(v) => Ok(v.mul(a, b)),
            IndexStructure::Dimonoid(d) if d.is_semigroup_form() => Ok(d.left(a, b)),
            IndexStructure::Dimonoid(_) => Err(Error::NotApplicable(
                "the dimonoid has no single semigroup product (⊣ ≠ ⊢)".into(),
            )),
        }
    }

    /// α ⊣ β; the semigroup product for semigroups.
    pub fn left(&self, a: Elem, b: Elem) -> Result<Elem> {
        match self {
            IndexStructure::Dimonoid(d) => Ok(d.left(a, b)),
            _ => self.mul(a, b),
        }
    }

    /// α ⊢ β; the semigroup product for semigroups.
    pub fn right(&self, a: Elem, b: Elem) -> Result<Elem> {
        match self {
            IndexStructure::Dimonoid(d) => Ok(d.right(a, b)),
            _ => self.mul(a, b),
        }
    }

    pub fn unit(&self) -> Option<Elem> {
        match self {
            IndexStructure::Finite(s) => s.unit(),
            IndexStructure::Virtual(v) => v.unit(),
            IndexStructure::Dimonoid(_) => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            IndexStructure::Finite(s) => s.claims_commutative(),
            IndexStructure::Virtual(v) => v.is_commutative(),
            IndexStructure::Dimonoid(d) => {
                let n = d.size();
                d.is_semigroup_form()
                    && (0..n).all(|a| (0..n).all(|b| d.left(a, b) == d.left(b, a)))
            }
        }
    }

    /// Number of elements, `None` for virtual semigroups.
    pub fn size(&self) -> Option<usize> {
        match self {
            IndexStructure::Finite(s) => Some(s.size()),
            IndexStructure::Virtual(_) => None,
            IndexStructure::Dimonoid(d) => Some(d.size()),
        }
    }

    pub fn name(&self, a: Elem) -> String {
        match self {
            IndexStructure::Finite(s) => s.name(a).to_string(),
            IndexStructure::Virtual(_) => a.to_string(),
            IndexStructure::Dimonoid(d) => d.name(a).to_string(),
        }
    }

    pub fn element(&self, name: &str) -> Result<Elem> {
        match self {
            IndexStructure::Finite(s) => s.element(name),
            IndexStructure::Dimonoid(d) => d.element(name),
            IndexStructure::Virtual(v) => name
                .parse::<Elem>()
                .ok()
                .filter(|&a| v.contains(a))
                .ok_or_else(|| Error::UnknownName {
                    kind: "index element",
                    name: name.to_string(),
                }),
        }
    }

    /// Structural identity: equal tables, or the same virtual semigroup.
    pub fn same_as(&self, other: &IndexStructure) -> bool {
        match (self, other) {
            (IndexStructure::Finite(a), IndexStructure::Finite(b)) => a == b,
            (IndexStructure::Dimonoid(a), IndexStructure::Dimonoid(b)) => a == b,
            (IndexStructure::Virtual(a), IndexStructure::Virtual(b)) => {
                Arc::ptr_eq(a, b) || a.name() == b.name()
            }
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            IndexStructure::Finite(s) => format!("finite semigroup of order {}", s.size()),
            IndexStructure::Virtual(v) => format!("virtual semigroup {}", v.name()),
            IndexStructure::Dimonoid(d) => format!("dimonoid of order {}", d.size()),
        }
    }
}

/// JSON form of a semigroup; table entries are positions in `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub elements: Vec<String>,
    pub product: Vec<Vec<Elem>>,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub commutative: bool,
}

impl SemigroupJson {
    pub fn into_table(self) -> Result<SemigroupTable> {
        let unit = match &self.unit {
            Some(u) => Some(lookup(&self.elements, u).map_err(|_| {
                Error::schema("unit", format!("unit {u:?} is not one of the elements"))
            })?),
            None => None,
        };
        SemigroupTable::new(self.elements, self.product, unit, self.commutative)
    }
}

impl From<&SemigroupTable> for SemigroupJson {
    fn from(t: &SemigroupTable) -> Self {
        SemigroupJson {
            elements: t.names.clone(),
            product: t.product.clone(),
            unit: t.unit.map(|u| t.names[u].clone()),
            commutative: t.commutative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimonoidJson {
    pub elements: Vec<String>,
    pub left: Vec<Vec<Elem>>,
    pub right: Vec<Vec<Elem>>,
}

impl DimonoidJson {
    pub fn into_table(self) -> Result<DimonoidTable> {
        DimonoidTable::new(self.elements, self.left, self.right)
    }
}

impl From<&DimonoidTable> for DimonoidJson {
    fn from(t: &DimonoidTable) -> Self {
        DimonoidJson {
            elements: t.names.clone(),
            left: t.left.clone(),
            right: t.right.clone(),
        }
    }
}

/// A semigroup object with an extra `values` table of `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    #[serde(flatten)]
    pub semigroup: SemigroupJson,
    pub values: Vec<Vec<Scalar>>,
}

impl CocycleJson {
    pub fn into_cocycle(self) -> Result<Cocycle> {
        let base = Arc::new(self.semigroup.into_table()?);
        Cocycle::new(base, self.values)
    }
}

impl From<&Cocycle> for CocycleJson {
    fn from(c: &Cocycle) -> Self {
        CocycleJson {
            semigroup: SemigroupJson::from(c.base.as_ref()),
            values: c.values.clone(),
        }
    }
}
