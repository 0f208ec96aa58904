use dpx_core::scalar::{lagrange_interpolate, RatFunc, Rational, UniPoly};
use dpx_core::Scalar;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(UniPoly::new)
}

/// Denominators that mix powers of `t` with other factors.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (unipoly(), unipoly(), 0usize..3).prop_filter_map("zero denominator", |(n, d, k)| {
        let d = &d * &t_pow(k);
        (!d.is_zero()).then(|| RatFunc::new(n, d).unwrap())
    })
}

fn t_pow(k: usize) -> UniPoly {
    let mut c = vec![Rational::zero(); k];
    c.push(Rational::one());
    UniPoly::new(c)
}

proptest! {
    #[test]
    fn field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if let Some(inv) = a.try_inv() {
            prop_assert!((a.clone() * inv).is_one());
        }
    }

    #[test]
    fn canonical_form(a in ratfunc(), b in ratfunc()) {
        let s = a + b;
        prop_assert!(s.denominator().is_monic());
        prop_assert!(s.numerator().gcd(s.denominator()).is_one());
    }

    #[test]
    fn gcd_divides(a in unipoly(), b in unipoly()) {
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(a.exact_div(&g).is_some());
            prop_assert!(b.exact_div(&g).is_some());
        }
    }

    #[test]
    fn interpolant_hits_nodes(values in prop::collection::vec(rational(), 1..5)) {
        let pts: Vec<(Rational, Rational)> = values
            .iter()
            .enumerate()
            .map(|(i, v)| (Rational::from_integer((i as i64 * 2 - 3).into()), v.clone()))
            .collect();
        let f = lagrange_interpolate(&pts).unwrap();
        prop_assert!(f.is_polynomial());
        for (a, v) in &pts {
            prop_assert_eq!(&f.eval(a).unwrap(), v);
        }
        let deg = f.numerator().degree().unwrap_or(0);
        prop_assert!(deg < pts.len());
    }
}
