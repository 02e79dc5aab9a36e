//! Exact scalars and normalized formal linear combinations.
//!
//! Every computation in the crate happens over the rationals, so axiom checks
//! reduce to literal equality of [`LinComb`] values.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::hash::Hash;
use std::iter::FromIterator;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

/// Always renders as `p/q`, including integers (`3/1`) and zero (`0/1`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`, with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse {
            what: "scalar",
            position: 0,
            message: format!("expected `p/q` or an integer, found {s:?}"),
        };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 + &rhs.0)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 - &rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 * &rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Requirements on a basis element type.
pub trait Basis: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static> Basis for T {}

/// A finite formal linear combination `Σ kᵢ·bᵢ`.
///
/// Zero coefficients are never stored and terms iterate in basis order, so
/// structural equality is equality of vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Basis> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(Scalar::one(), b)
    }

    pub fn term(k: Scalar, b: B) -> Self {
        let mut out = Self::zero();
        out.add_term(k, b);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Adds `k·b` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, k: Scalar, b: B) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `k·other` in place.
    pub fn add_scaled(&mut self, k: &Scalar, other: &LinComb<B>) {
        if k.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(k * c, b.clone());
        }
    }

    pub fn add(&self, other: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_integer(-1), other);
        out
    }

    pub fn scale(&self, k: &Scalar) -> LinComb<B> {
        if k.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), k * c)).collect(),
        }
    }

    pub fn neg(&self) -> LinComb<B> {
        self.scale(&Scalar::from_integer(-1))
    }

    /// Linear extension of a basis-level map.
    pub fn try_map_linear<C, E, F>(&self, mut f: F) -> Result<LinComb<C>, E>
    where
        C: Basis,
        F: FnMut(&B) -> Result<LinComb<C>, E>,
    {
        let mut out = LinComb::zero();
        for (b, k) in &self.terms {
            out.add_scaled(k, &f(b)?);
        }
        Ok(out)
    }

    /// Serializes each basis element with `name`, keeping basis order.
    pub fn to_pairs(&self, mut name: impl FnMut(&B) -> String) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(b, k)| (k.to_string(), name(b)))
            .collect()
    }

    /// Renders as `p/q * b + p/q * b - ...`; the zero combination renders as `0`.
    pub fn render(&self, mut name: impl FnMut(&B) -> String) -> String {
        let mut out = String::new();
        for (i, (b, k)) in self.terms.iter().enumerate() {
            let k = if i == 0 {
                if k.is_negative() {
                    out.push_str("- ");
                }
                k.abs()
            } else if k.is_negative() {
                out.push_str(" - ");
                k.abs()
            } else {
                out.push_str(" + ");
                k.clone()
            };
            out.push_str(&format!("{} * {}", k, name(b)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<B: Basis> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (b, k) in iter {
            out.add_term(k, b);
        }
        out
    }
}

impl<B: Basis + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|b| format!("{b:?}")))
    }
}

/// Bilinear extension of a basis-level operation:
/// `Σᵢⱼ aᵢ·bⱼ·f(uᵢ, vⱼ, aux)`.
pub fn bilinear_extend<B, C, A, E, F>(
    mut f: F,
    a: &LinComb<B>,
    b: &LinComb<B>,
    aux: A,
) -> Result<LinComb<C>, E>
where
    B: Basis,
    C: Basis,
    A: Copy,
    F: FnMut(&B, &B, A) -> Result<LinComb<C>, E>,
{
    let mut out = LinComb::zero();
    for (u, ku) in a.iter() {
        for (v, kv) in b.iter() {
            let k = ku * kv;
            out.add_scaled(&k, &f(u, v, aux)?);
        }
    }
    Ok(out)
}

impl<B: Basis + Serialize> Serialize for LinComb<B> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (b, k) in &self.terms {
            seq.serialize_element(&(k, b))?;
        }
        seq.end()
    }
}

impl<'de, B: Basis + Deserialize<'de>> Deserialize<'de> for LinComb<B> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PairsVisitor<B>(std::marker::PhantomData<B>);

        impl<'de, B: Basis + Deserialize<'de>> Visitor<'de> for PairsVisitor<B> {
            type Value = LinComb<B>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a list of [coefficient, basis element] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = LinComb::zero();
                while let Some((k, b)) = seq.next_element::<(Scalar, B)>()? {
                    out.add_term(k, b);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_seq(PairsVisitor(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn scalar_normal_form() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
        assert_eq!(Scalar::zero().to_string(), "0/1");
        assert_eq!(q(0, -5), Scalar::zero());
        assert_eq!("6/-4".parse::<Scalar>().unwrap(), q(-3, 2));
        assert_eq!("7".parse::<Scalar>().unwrap(), q(7, 1));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x/2".parse::<Scalar>().is_err());
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = LinComb::term(q(2, 1), 1u32);
        let b = LinComb::term(q(-2, 1), 1u32);
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn add_disjoint_supports() {
        let s = LinComb::basis(1u32).add(&LinComb::basis(2u32));
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&1), Scalar::one());
        assert_eq!(s.coeff(&2), Scalar::one());
    }

    #[test]
    fn add_rationals() {
        // 1/2 + 1/3 = (3 + 2)/6
        let s = LinComb::term(q(1, 2), 1u32).add(&LinComb::term(q(1, 3), 1u32));
        assert_eq!(s, LinComb::term(q(5, 6), 1u32));
    }

    #[test]
    fn scale_cases() {
        let a = LinComb::term(q(5, 1), 1u32);
        assert!(a.scale(&Scalar::zero()).is_zero());
        assert_eq!(a.scale(&Scalar::one()), a);
        // (2/3)(3/4) = 6/12
        assert_eq!(
            LinComb::term(q(3, 4), 1u32).scale(&q(2, 3)),
            LinComb::term(q(1, 2), 1u32)
        );
    }

    #[test]
    fn bilinear_cases() {
        let f = |_: &u32, _: &u32, _: ()| Ok::<_, ()>(LinComb::basis(9u32));
        let zero = LinComb::<u32>::zero();
        let a = LinComb::term(q(2, 1), 1u32);
        let b = LinComb::term(q(3, 1), 2u32);
        assert!(bilinear_extend(f, &zero, &b, ()).unwrap().is_zero());
        let g = |x: &u32, y: &u32, _: ()| Ok::<_, ()>(LinComb::basis(10 * x + y));
        assert_eq!(
            bilinear_extend(g, &LinComb::basis(1), &LinComb::basis(2), ()).unwrap(),
            LinComb::basis(12)
        );
        // 2·3·{c:1}
        assert_eq!(
            bilinear_extend(f, &a, &b, ()).unwrap(),
            LinComb::term(q(6, 1), 9u32)
        );
    }

    #[test]
    fn render_forms() {
        let mut a = LinComb::term(q(-1, 2), 1u32);
        a.add_term(q(3, 1), 2);
        assert_eq!(a.render(|b| format!("b{b}")), "- 1/2 * b1 + 3/1 * b2");
        assert_eq!(LinComb::<u32>::zero().render(|_| String::new()), "0");
    }

    #[test]
    fn json_pairs() {
        let mut a = LinComb::term(q(1, 2), 7u32);
        a.add_term(q(-1, 1), 3);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[["-1/1",3],["1/2",7]]"#);
        let back: LinComb<u32> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }
}
