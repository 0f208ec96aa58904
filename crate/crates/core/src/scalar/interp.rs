use num_traits::{One, Zero};

use super::{RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};

/// Lagrange interpolation: the unique polynomial of degree `< points.len()`
/// through the given `(node, value)` pairs.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<RatFunc> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateNode(a.to_string()));
        }
    }
    let mut acc = UniPoly::zero();
    for (k, (node, value)) in points.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Rational::one();
        for (j, (other, _)) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            basis = &basis * &UniPoly::linear_root(other);
            denom *= node - other;
        }
        acc = &acc + &basis.scale(&(value / denom));
    }
    Ok(RatFunc::from_poly(acc))
}
