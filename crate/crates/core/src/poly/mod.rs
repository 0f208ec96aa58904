//! Sparse commutative polynomials over a [`Scalar`] field, and derivations
//! stored by their generator images.

mod derivation;
mod ring;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use derivation::Derivation;
pub use ring::{Monomial, MonomialDisplay, PolyRing, PARAMETER};
pub(crate) use ring::same_ring;

use crate::error::Result;
use crate::scalar::{Rational, Scalar};

/// A polynomial in the generators of `ring`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<K> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> Poly<K> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: K) -> Self {
        Self::term(ring, Monomial::one(ring.len()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, K::one())
    }

    /// The `i`-th generator.
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.len(), i), K::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: K) -> Self {
        assert_eq!(m.exponents().len(), ring.len(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    /// The scalar value when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.ring, &rhs.ring)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.ring, &rhs.ring)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.ring, &rhs.ring)?;
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &K) -> Poly<K> {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly<K> {
        (0..n).fold(Poly::one(&self.ring), |acc, _| &acc * self)
    }

    /// Partial derivative with respect to generator `i`.
    pub fn partial(&self, i: usize) -> Poly<K> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[i] -= 1;
            out.add_term(d, c.clone() * K::from_i64(e as i64));
        }
        out
    }

    /// Applies `f` to every coefficient, keeping the ring.
    pub fn try_map_coeffs<L: Scalar>(&self, mut f: impl FnMut(&K) -> Result<L>) -> Result<Poly<L>> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending generator `i` to
    /// generator `index_map[i]`.
    pub fn embed(&self, target: &Arc<PolyRing>, index_map: &[usize]) -> Poly<K> {
        assert_eq!(index_map.len(), self.ring.len(), "index map arity");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[index_map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Embeds into a ring whose first generators are those of `self`.
    pub fn embed_prefix(&self, target: &Arc<PolyRing>) -> Poly<K> {
        let map: Vec<usize> = (0..self.ring.len()).collect();
        self.embed(target, &map)
    }

    /// Splits into coefficients with respect to the trailing generators:
    /// the first `base.len()` generators form the coefficient ring `base`,
    /// the rest index the returned map by their exponents.
    pub fn split_trailing(&self, base: &Arc<PolyRing>) -> BTreeMap<Vec<u32>, Poly<K>> {
        let n = base.len();
        let mut out: BTreeMap<Vec<u32>, Poly<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (head, tail) = m.exponents().split_at(n);
            out.entry(tail.to_vec())
                .or_insert_with(|| Poly::zero(base))
                .add_term(Monomial::from_exponents(head.to_vec()), c.clone());
        }
        out
    }
}

impl Poly<Rational> {
    /// Promotes rational coefficients into another scalar field.
    pub fn lift<L: Scalar>(&self) -> Poly<L> {
        self.try_map_coeffs(|c| Ok(L::from_rational(c.clone())))
            .expect("infallible")
    }
}

impl<K: Scalar> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let r = c.repr();
            if i == 0 {
                if r.negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if r.negative { '-' } else { '+' })?;
            }
            let unit = !r.negative && c.is_one() || r.negative && (-c.clone()).is_one();
            if m.is_one() {
                write!(f, "{}", r.text)?;
            } else if unit {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{}*{}", r.text, m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on a ring mismatch; the `checked_*` methods report it instead.
        impl<K: Scalar> $trait<&Poly<K>> for &Poly<K> {
            type Output = Poly<K>;

            fn $method(self, rhs: &Poly<K>) -> Poly<K> {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }

        impl<K: Scalar> $trait<Poly<K>> for Poly<K> {
            type Output = Poly<K>;

            fn $method(self, rhs: Poly<K>) -> Poly<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<K: Scalar> Neg for &Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<K: Scalar> Neg for Poly<K> {
    type Output = Poly<K>;

    fn neg(self) -> Poly<K> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::{int, RatFunc};
    use num_traits::One;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(&["x"]);
        let x = Poly::<Rational>::var(&r, 0);
        let one = Poly::one(&r);
        let sq = &(&x + &one) * &(&x - &one);
        assert_eq!(sq, &x.pow(2) - &one);
        assert_eq!(sq.to_string(), "x^2 - 1");

        let r2 = ring(&["y1", "y2"]);
        let m = &Poly::<Rational>::var(&r2, 0) * &Poly::var(&r2, 1);
        assert_eq!((&m + &m).to_string(), "2*y1*y2");
    }

    #[test]
    fn difference_of_squares_matches_distribution() {
        let r = ring(&["a", "b"]);
        let a = Poly::<Rational>::var(&r, 0);
        let b = Poly::<Rational>::var(&r, 1);
        let lhs = &(&a - &b) * &(&a + &b);
        // distribute by hand: a*a + a*b - b*a - b*b
        let hand = &(&(&(&a * &a) + &(&a * &b)) - &(&b * &a)) - &(&b * &b);
        assert_eq!(lhs, hand);
        assert_eq!(lhs.to_string(), "a^2 - b^2");
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let x = Poly::<Rational>::var(&ring(&["x"]), 0);
        let y = Poly::<Rational>::var(&ring(&["y"]), 0);
        assert!(matches!(x.checked_add(&y), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn ratfunc_coefficients_display() {
        let r = ring(&["x", "z"]);
        let c = RatFunc::t() - RatFunc::one();
        let p = &Poly::var(&r, 0).scale(&c) + &Poly::constant(&r, RatFunc::one().checked_div(&RatFunc::t()).unwrap());
        assert_eq!(p.to_string(), "(t - 1)*x + 1/t");
        let q = Poly::var(&r, 1).scale(&RatFunc::constant(int(-2)));
        assert_eq!(q.to_string(), "-2*z");
    }

    #[test]
    fn split_trailing_generators() {
        let r = ring(&["x", "y1", "y2"]);
        let base = ring(&["x"]);
        let x = Poly::<Rational>::var(&r, 0);
        let y1 = Poly::var(&r, 1);
        let p = &(&x * &y1) + &x.pow(2);
        let parts = p.split_trailing(&base);
        assert_eq!(parts[&vec![1, 0]], Poly::var(&base, 0));
        assert_eq!(parts[&vec![0, 0]], Poly::var(&base, 0).pow(2));
    }
}
