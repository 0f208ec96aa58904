use super::DEData;
use crate::error::Result;
use crate::poly::{Derivation, Poly};
use crate::scalar::Scalar;

/// The change of variables `z = M y`, i.e. `z_i = M[i][0] y1 + M[i][1] y2`.
pub type BasisChange<K> = [[K; 2]; 2];

/// Brings `q` to one of the shapes `{0, q12}`, `{1, 0}` or `{0, 0}` by a
/// linear change of the extension variables.
///
/// * `q12 ≠ 0`: `z1 = y1`, `z2 = p y1 + y2` with `p = q11 / q12`;
/// * `q12 = 0, q11 ≠ 0`: `z1 = q11 y1`, `z2 = y2`;
/// * `q = 0`: unchanged.
pub fn normalize_dedata<K: Scalar>(d: &DEData<K>) -> Result<(DEData<K>, BasisChange<K>)> {
    d.validate()?;
    let (zero, one) = (K::zero(), K::one());
    let mut out = d.clone();
    let [[a11, a12], [a21, a22]] = &d.alpha;
    let [n1, n2] = &d.nu;

    if let Some(inv12) = d.q12.try_inv() {
        let p = d.q11.clone() * inv12;
        out.q11 = K::zero();
        out.alpha = [
            [a11.checked_sub(&a12.scale(&p))?, a12.clone()],
            [
                a21.checked_add(&a11.checked_sub(a22)?.scale(&p))?
                    .checked_sub(&a12.scale(&(p.clone() * p.clone())))?,
                a12.scale(&p).checked_add(a22)?,
            ],
        ];
        out.nu = [n1.clone(), n2.checked_add(&n1.scale(&p))?];
        out.w[0] = &d.w[0] - &d.w[1].scale(&p);
        return Ok((out, [[one.clone(), zero], [p, one]]));
    }

    if let Some(inv11) = d.q11.try_inv() {
        let c = d.q11.clone();
        out.q11 = K::one();
        out.alpha = [
            [a11.clone(), a12.scale(&c)],
            [a21.scale(&inv11), a22.clone()],
        ];
        out.nu = [n1.scale(&c), n2.clone()];
        out.w = [d.w[0].clone(), d.w[1].scale(&c), d.w[2].scale(&c)];
        return Ok((out, [[c, zero.clone()], [zero, one]]));
    }

    Ok((out, [[one.clone(), zero.clone()], [zero, one]]))
}

/// A bracket of the new variables that disagrees between the two sides of
/// [`verify_basis_change`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMismatch<K> {
    pub pair: String,
    pub computed: Poly<K>,
    pub expected: Poly<K>,
}

/// Computes `{z2, z1}` and `{z_i, g}` with the bracket defined by
/// `original` (Jacobi is not required) and compares them with the defining formulas of `normalized`
/// read in the variables `z = M y`. Returns the disagreements.
pub fn verify_basis_change<K: Scalar>(
    original: &DEData<K>,
    normalized: &DEData<K>,
    m: &BasisChange<K>,
) -> Result<Vec<BasisMismatch<K>>> {
    let ext = original.extension_structure()?;
    let r = ext.ring().clone();
    let n = original.ring().len();
    let base = original.ring().clone();
    let (y1, y2) = (Poly::var(&r, n), Poly::var(&r, n + 1));
    let z = [
        &y1.scale(&m[0][0]) + &y2.scale(&m[0][1]),
        &y1.scale(&m[1][0]) + &y2.scale(&m[1][1]),
    ];
    let up = |p: &Poly<K>| p.embed_prefix(&r);
    let apply = |d: &Derivation<K>, g: &Poly<K>| d.apply(g).map(|p| up(&p));
    let mut out = Vec::new();

    let computed = ext.bracket(&z[1], &z[0])?;
    let expected = &(&(&(&z[0].pow(2).scale(&normalized.q11) + &(&z[0] * &z[1]).scale(&normalized.q12))
        + &(&up(normalized.w1()) * &z[0]))
        + &(&up(normalized.w2()) * &z[1]))
        + &up(normalized.w0());
    if computed != expected {
        out.push(BasisMismatch {
            pair: format!("{{{}', {}'}}", original.vars[1], original.vars[0]),
            computed,
            expected,
        });
    }

    for g in 0..base.len() {
        let gb = Poly::var(&base, g);
        let ge = up(&gb);
        for i in 0..2 {
            let computed = ext.bracket(&z[i], &ge)?;
            let a = &normalized.alpha[i];
            let expected = &(&(&apply(&a[0], &gb)? * &z[0]) + &(&apply(&a[1], &gb)? * &z[1]))
                + &apply(&normalized.nu[i], &gb)?;
            if computed != expected {
                out.push(BasisMismatch {
                    pair: format!("{{{}', {}}}", original.vars[i], base.name(g)),
                    computed,
                    expected,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::check_dedata;
    use super::*;
    use crate::pbracket::PoissonStructure;
    use crate::poly::PolyRing;
    use crate::scalar::{int, Rational};

    fn graded_over_x(q11: i64, q12: i64) -> DEData<Rational> {
        let r = PolyRing::new(&["x"]).unwrap();
        let x = P::var(&r, 0);
        let mut d = DEData::zero(PoissonStructure::trivial(&r), ["y1", "y2"]);
        d.q11 = int(q11);
        d.q12 = int(q12);
        d.w = [x.scale(&int(3)), x.scale(&int(-1)), x.pow(2).scale(&int(5))];
        d
    }

    #[test]
    fn t1_is_already_normal() {
        let (n, m) = normalize_dedata(&t1()).unwrap();
        assert_eq!(n, t1());
        assert_eq!(m, [[int(1), int(0)], [int(0), int(1)]]);
    }

    #[test]
    fn case_one_moves_q11_into_w1() {
        let d = graded_over_x(3, 1);
        let (n, m) = normalize_dedata(&d).unwrap();
        assert_eq!((n.q11.clone(), n.q12.clone()), (int(0), int(1)));
        // w' = {w1 - 3 w2, w2, w0}
        assert_eq!(n.w[0], &d.w[0] - &d.w[1].scale(&int(3)));
        assert_eq!(n.w[1], d.w[1]);
        assert_eq!(n.w[2], d.w[2]);
        assert!(check_dedata(&n).unwrap().passed());
        assert!(verify_basis_change(&d, &n, &m).unwrap().is_empty());
    }

    #[test]
    fn case_two_rescales_y1() {
        let d = graded_over_x(2, 0);
        let (n, m) = normalize_dedata(&d).unwrap();
        assert_eq!((n.q11.clone(), n.q12.clone()), (int(1), int(0)));
        assert_eq!(n.w, [d.w[0].clone(), d.w[1].scale(&int(2)), d.w[2].scale(&int(2))]);
        assert!(verify_basis_change(&d, &n, &m).unwrap().is_empty());
    }

    #[test]
    fn nonit_normalization_is_sound() {
        let d = nonit();
        let (n, m) = normalize_dedata(&d).unwrap();
        assert_eq!((n.q11.clone(), n.q12.clone()), (int(0), int(-2)));
        assert!(!check_dedata(&n).unwrap().passed());
        assert!(verify_basis_change(&d, &n, &m).unwrap().is_empty());
    }
}
