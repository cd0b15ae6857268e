//! Exact arithmetic in the Weil algebra of a simplicial object.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::object::{Monomial, SimplicialObject};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element of `W_{D^n{p}} = Q[X_1..X_n] / (X_i^2, forbidden products)`.
///
/// Coefficients are kept in basis order with zeros removed, so structural
/// equality is algebraic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct WeilElement {
    parent: SimplicialObject,
    coeffs: BTreeMap<Monomial, Rational>,
}

impl WeilElement {
    pub fn zero(parent: &SimplicialObject) -> Self {
        WeilElement {
            parent: parent.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(parent: &SimplicialObject) -> Self {
        Self::constant(parent, Rational::one())
    }

    pub fn constant(parent: &SimplicialObject, c: Rational) -> Self {
        let mut e = Self::zero(parent);
        e.add_term(Monomial::UNIT, c);
        e
    }

    /// The generator `X_i`.
    pub fn var(parent: &SimplicialObject, i: usize) -> Result<Self> {
        Self::term(parent, Rational::one(), Monomial::var(i)?)
    }

    /// `c * m`, reduced: a monomial containing a forbidden set is zero.
    pub fn term(parent: &SimplicialObject, c: Rational, m: Monomial) -> Result<Self> {
        if m.max_index() > parent.arity() {
            return Err(Error::IndexOutOfRange {
                index: m.max_index(),
                arity: parent.arity(),
            });
        }
        let mut e = Self::zero(parent);
        if parent.allows(m) {
            e.add_term(m, c);
        }
        Ok(e)
    }

    /// Builds an element from `(coefficient, indices)` pairs.
    pub fn from_terms<'a, I>(parent: &SimplicialObject, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, &'a [usize])>,
    {
        let mut e = Self::zero(parent);
        for (c, ix) in terms {
            let t = Self::term(parent, int(c), Monomial::new(ix)?)?;
            e = e.add(&t)?;
        }
        Ok(e)
    }

    /// Reads a coefficient vector in basis order.
    pub fn from_vector(parent: &SimplicialObject, v: &[Rational]) -> Result<Self> {
        if v.len() != parent.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} of dimension {}",
                v.len(),
                parent,
                parent.dim()
            )));
        }
        let mut e = Self::zero(parent);
        for (&m, c) in parent.basis().iter().zip(v) {
            e.add_term(m, c.clone());
        }
        Ok(e)
    }

    /// Coefficient vector in basis order.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.parent.basis().iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn parent(&self) -> &SimplicialObject {
        &self.parent
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `X_{i1}...X_{ik}`; the empty slice reads the constant term.
    pub fn coeff_of(&self, indices: &[usize]) -> Rational {
        Monomial::new(indices)
            .map(|m| self.coeff(m))
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::UNIT)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    fn check_same(&self, other: &WeilElement) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::MixedAlgebra {
                left: self.parent.to_string(),
                right: other.parent.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &WeilElement) -> Result<WeilElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeilElement) -> Result<WeilElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeilElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> WeilElement {
        if q.is_zero() {
            return Self::zero(&self.parent);
        }
        WeilElement {
            parent: self.parent.clone(),
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Product reduced modulo squares and forbidden products.
    pub fn mul(&self, other: &WeilElement) -> Result<WeilElement> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.parent);
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                if !s.is_disjoint(*t) {
                    continue;
                }
                let u = s.union(*t);
                if self.parent.contains_forbidden(u) {
                    continue;
                }
                out.add_term(u, a * b);
            }
        }
        Ok(out)
    }

    /// Product of a nonempty list, or the unit for an empty one.
    pub fn product<'a, I>(parent: &SimplicialObject, factors: I) -> Result<WeilElement>
    where
        I: IntoIterator<Item = &'a WeilElement>,
    {
        let mut acc = Self::one(parent);
        for f in factors {
            acc = acc.mul(f)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Re-homes this element into `target`, adding `offset` to every index.
    /// Monomials that become forbidden in `target` are dropped.
    pub fn shifted_into(&self, target: &SimplicialObject, offset: usize) -> Result<WeilElement> {
        let mut out = Self::zero(target);
        for (m, c) in &self.coeffs {
            out = out.add(&Self::term(target, c.clone(), m.shift(offset))?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in W[{}]", self, self.parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(obj: &SimplicialObject, i: usize) -> WeilElement {
        WeilElement::var(obj, i).unwrap()
    }

    #[test]
    fn addition_and_scaling() {
        let d = SimplicialObject::d();
        let sum = x(&d, 1).add(&x(&d, 1)).unwrap();
        assert_eq!(sum, x(&d, 1).scale(&int(2)));
        let g = WeilElement::from_terms(&d, [(3, &[][..]), (5, &[1][..])]).unwrap();
        assert!(g.scale(&int(0)).is_zero());

        let sq = SimplicialObject::cube(2).unwrap();
        let a = x(&sq, 1).add(&x(&sq, 2)).unwrap();
        let b = x(&sq, 1).sub(&x(&sq, 2)).unwrap();
        assert_eq!(a.add(&b).unwrap(), x(&sq, 1).scale(&int(2)));
    }

    #[test]
    fn squares_vanish() {
        let d = SimplicialObject::d();
        assert!(x(&d, 1).mul(&x(&d, 1)).unwrap().is_zero());
    }

    #[test]
    fn forbidden_products_vanish() {
        let sq = SimplicialObject::cube(2).unwrap();
        let p = x(&sq, 1).mul(&x(&sq, 2)).unwrap();
        assert_eq!(p.coeff_of(&[1, 2]), int(1));
        let d2 = SimplicialObject::first_order(2).unwrap();
        assert!(x(&d2, 1).mul(&x(&d2, 2)).unwrap().is_zero());
    }

    #[test]
    fn sum_witness_relation_in_d3() {
        let d3 = SimplicialObject::first_order(3).unwrap();
        let a = x(&d3, 1).sub(&x(&d3, 2)).unwrap();
        let b = x(&d3, 2).sub(&x(&d3, 3)).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn mixed_algebra_is_an_error() {
        let d = SimplicialObject::d();
        let sq = SimplicialObject::cube(2).unwrap();
        assert!(matches!(
            x(&d, 1).add(&x(&sq, 1)),
            Err(Error::MixedAlgebra { .. })
        ));
        assert!(matches!(
            x(&d, 1).mul(&x(&sq, 1)),
            Err(Error::MixedAlgebra { .. })
        ));
    }

    #[test]
    fn forbidden_term_reduces_to_zero() {
        let d2 = SimplicialObject::first_order(2).unwrap();
        let t = WeilElement::term(&d2, int(4), Monomial::new(&[1, 2]).unwrap()).unwrap();
        assert!(t.is_zero());
        assert!(WeilElement::var(&d2, 3).is_err());
    }

    #[test]
    fn vector_round_trip_and_display() {
        let sq = SimplicialObject::cube(2).unwrap();
        let g = WeilElement::from_terms(&sq, [(1, &[][..]), (-2, &[2][..]), (3, &[1, 2][..])]).unwrap();
        assert_eq!(g.to_vector(), vec![int(1), int(0), int(-2), int(3)]);
        assert_eq!(WeilElement::from_vector(&sq, &g.to_vector()).unwrap(), g);
        assert_eq!(g.to_string(), "1 - 2*X2 + 3*X1*X2");
    }
}
