use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{CoeffRepr, Rational, Scalar, UniPoly};
use crate::error::{Error, Result};

/// Element of ℚ(t), kept reduced with a monic denominator so that equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = den.leading().expect("nonzero").recip();
        Ok(RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    /// From a numerator and denominator already known to be coprime.
    fn coprime(num: UniPoly, den: UniPoly) -> Self {
        let lead = den.leading().expect("nonzero denominator");
        if lead.is_one() {
            return RatFunc { num, den };
        }
        let inv = lead.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The deformation parameter `t`.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::t())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    /// True when the denominator does not vanish at `c`.
    pub fn is_regular_at(&self, c: &Rational) -> bool {
        !self.den.eval(c).is_zero()
    }

    /// Value at `t = c`.
    pub fn eval(&self, c: &Rational) -> Result<Rational> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return Err(Error::Pole { at: c.to_string() });
        }
        Ok(self.num.eval(c) / d)
    }

    /// The exact quotient `self / (t - 1)`; fails unless `self(1) = 0`.
    pub fn div_t_minus_1(&self) -> Result<RatFunc> {
        let one = Rational::one();
        let at_one = self.eval(&one)?;
        if !at_one.is_zero() {
            return Err(Error::NotDivisibleByTMinusOne {
                value: self.to_string(),
                at_one: at_one.to_string(),
            });
        }
        let num = self
            .num
            .exact_div(&UniPoly::linear_root(&one))
            .expect("numerator vanishes at 1");
        // den(1) != 0, so the quotient stays reduced
        Ok(RatFunc { num, den: self.den.clone() })
    }

    /// Formal derivative by the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            if p.term_count() > 1 || (p.degree() > Some(0) && !p.leading().is_some_and(One::is_one)) {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    // a/b + c/d with g = gcd(b, d): only the common factor g can cancel.
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::coprime(num, &self.den * &rhs.den);
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = num.gcd(&g);
        let num = num.exact_div(&g2).expect("gcd divides");
        let den = &b * &rhs.den.exact_div(&g2).expect("gcd divides");
        RatFunc::coprime(num, den)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = self.as_rational() {
            return RatFunc { num: rhs.num.scale(&c), den: rhs.den };
        }
        if let Some(c) = rhs.as_rational() {
            return RatFunc { num: self.num.scale(&c), den: self.den };
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1).expect("gcd divides") * &rhs.num.exact_div(&g2).expect("gcd divides");
        let den = &self.den.exact_div(&g2).expect("gcd divides") * &rhs.den.exact_div(&g1).expect("gcd divides");
        RatFunc::coprime(num, den)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for a fallible version.
impl Div for RatFunc {
    type Output = RatFunc;

    fn div(self, rhs: RatFunc) -> RatFunc {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Scalar for RatFunc {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()).expect("nonzero numerator"))
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    fn repr(&self) -> CoeffRepr {
        if self.num.term_count() == 1 {
            let lead = self.num.leading().expect("nonzero");
            if lead.is_negative() {
                let abs = -self.clone();
                return CoeffRepr {
                    negative: true,
                    text: abs.to_string(),
                    atomic: true,
                };
            }
            return CoeffRepr {
                negative: false,
                text: self.to_string(),
                atomic: true,
            };
        }
        if self.den.is_one() {
            CoeffRepr {
                negative: false,
                text: format!("({self})"),
                atomic: true,
            }
        } else {
            CoeffRepr {
                negative: false,
                text: self.to_string(),
                atomic: true,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn poly(cs: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::new(cs.iter().map(|&c| int(c)).collect()))
    }

    fn t() -> RatFunc {
        RatFunc::t()
    }

    #[test]
    fn arithmetic_examples() {
        let one = RatFunc::one();
        assert_eq!(poly(&[-1, 1]) + one.clone(), t());
        let q = poly(&[-1, 1]).checked_div(&poly(&[1, 1])).unwrap();
        assert_eq!(q * poly(&[1, 1]), poly(&[-1, 1]));
        // (-2t + 3) - 1 = -2t + 2, checked against coefficientwise subtraction
        let lhs = poly(&[3, -2]) - one;
        let expected = UniPoly::new(vec![int(3) - int(1), int(-2)]);
        assert_eq!(lhs, RatFunc::from_poly(expected));
        assert_eq!(poly(&[1]).checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_reduced_and_monic() {
        // (2t^2 - 2) / (4t - 4) = (t + 1)/2
        let f = RatFunc::new(
            UniPoly::new(vec![int(-2), int(0), int(2)]),
            UniPoly::new(vec![int(-4), int(4)]),
        )
        .unwrap();
        assert_eq!(f, RatFunc::from_poly(UniPoly::new(vec![rat(1, 2), rat(1, 2)])));
        let g = one_over_t();
        assert!(g.denominator().is_monic());
    }

    fn one_over_t() -> RatFunc {
        RatFunc::one().checked_div(&t()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = poly(&[-1, 1]).checked_div(&poly(&[1, 1])).unwrap();
        assert_eq!(f.eval(&int(3)).unwrap(), rat(1, 2));
        assert_eq!(poly(&[3, -2]).eval(&int(2)).unwrap(), int(-1));
        assert_eq!(poly(&[3, -2]).eval(&int(1)).unwrap(), int(1));
        assert_eq!(f.eval(&int(-1)), Err(Error::Pole { at: "-1".into() }));
    }

    #[test]
    fn division_by_t_minus_one() {
        assert_eq!(poly(&[-1, 1]).div_t_minus_1().unwrap(), RatFunc::one());
        let g = poly(&[2, -2]).div_t_minus_1().unwrap();
        // multiply back
        assert_eq!(g.clone() * poly(&[-1, 1]), poly(&[2, -2]));
        assert_eq!(g, poly(&[-2]));
        assert!(matches!(t().div_t_minus_1(), Err(Error::NotDivisibleByTMinusOne { .. })));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly(&[3, -2]).derivative(), poly(&[-2]));
        assert_eq!(poly(&[7]).derivative(), RatFunc::zero());
        // d/dt (1/t) = -1/t^2, which is -1 at t = 1
        let d = one_over_t().derivative();
        assert_eq!(d.eval(&int(1)).unwrap(), int(-1));
        assert_eq!(d, -(one_over_t() * one_over_t()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(one_over_t().to_string(), "1/t");
        let f = poly(&[-1, 1]).checked_div(&poly(&[1, 1])).unwrap();
        assert_eq!(f.to_string(), "(t - 1)/(t + 1)");
        assert_eq!(poly(&[0, 0, -2]).to_string(), "-2*t^2");
    }
}
