use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::DEData;
use crate::error::Result;
use crate::pbracket::JacobiReport;
use crate::poly::{Derivation, Poly, PolyRing};
use crate::scalar::Scalar;

pub const CONDITION_COUNT: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure<K> {
    /// Condition number, 2..=13.
    pub condition: u8,
    /// Generator indices the identity was evaluated on.
    pub generators: Vec<usize>,
    /// Left side minus right side.
    pub residual: Poly<K>,
}

/// Outcome of [`check_dedata`]. Failures are sorted by condition number,
/// then by generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport<K> {
    ring: Arc<PolyRing>,
    pub failures: Vec<ConditionFailure<K>>,
    /// The base bracket must itself be Poisson.
    pub base_jacobi: JacobiReport<K>,
}

impl<K: Scalar> ConditionReport<K> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.base_jacobi.passed()
    }

    pub fn failed_conditions(&self) -> BTreeSet<u8> {
        self.failures.iter().map(|f| f.condition).collect()
    }

    pub fn holding(&self) -> usize {
        CONDITION_COUNT - self.failed_conditions().len()
    }
}

impl<K: Scalar> fmt::Display for ConditionReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.base_jacobi.passed() {
            writeln!(f, "base bracket violates the Jacobi identity:")?;
            write!(f, "{}", self.base_jacobi)?;
        }
        writeln!(f, "{}/{} conditions hold", self.holding(), CONDITION_COUNT)?;
        for fail in &self.failures {
            let names: Vec<&str> = fail.generators.iter().map(|&g| self.ring.name(g)).collect();
            writeln!(
                f,
                "condition ({}) fails at ({}): residual {}",
                fail.condition,
                names.join(", "),
                fail.residual
            )?;
        }
        Ok(())
    }
}

/// Evaluates the thirteen conditions characterizing double Poisson
/// extension data.
///
/// Condition (1) (the six maps are derivations) holds by representation.
/// Conditions (2)–(7) compare two biderivations in `(a, b)` and are decided
/// on ordered generator pairs; (8)–(13) compare two derivations and are
/// decided on generators.
pub fn check_dedata<K: Scalar>(d: &DEData<K>) -> Result<ConditionReport<K>> {
    d.validate()?;
    let ps = &d.base;
    let r = d.ring().clone();
    let n = r.len();
    let var = |i| Poly::var(&r, i);
    let [[a11, a12], [a21, a22]] = &d.alpha;
    let [n1, n2] = &d.nu;
    let (q11, q12) = (&d.q11, &d.q12);
    let [w1, w2, w0] = &d.w;

    let mut failures = Vec::new();

    // (2)-(7): D({a,b}) - {D(a),b} - {a,D(b)} = rhs(a, b)
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (var(i), var(j));
            let ab = ps.bracket(&a, &b)?;
            let ap = |m: &Derivation<K>| m.apply(&a).expect("same ring");
            let bp = |m: &Derivation<K>| m.apply(&b).expect("same ring");
            let lhs = |m: &Derivation<K>| -> Result<Poly<K>> {
                Ok(&(&m.apply(&ab)? - &ps.bracket(&ap(m), &b)?) - &ps.bracket(&a, &bp(m))?)
            };
            let cross = |x: &Derivation<K>, y: &Derivation<K>| &(&ap(x) * &bp(y)) - &(&ap(y) * &bp(x));

            let rows: [(u8, &Derivation<K>, Poly<K>); 6] = [
                (2, a11, cross(a12, a21)),
                (3, a22, cross(a21, a12)),
                (4, a12, &cross(a11, a12) + &cross(a12, a22)),
                (5, a21, &cross(a21, a11) + &cross(a22, a21)),
                (6, n1, &cross(a11, n1) + &cross(a12, n2)),
                (7, n2, &cross(a21, n1) + &cross(a22, n2)),
            ];
            for (num, m, rhs) in rows {
                let res = &lhs(m)? - &rhs;
                if !res.is_zero() {
                    failures.push(ConditionFailure {
                        condition: num,
                        generators: vec![i, j],
                        residual: res,
                    });
                }
            }
        }
    }

    // (8)-(13): identities between derivations, on each generator
    let com = |x: &Derivation<K>, y: &Derivation<K>| x.commutator(y);
    let lhs8 = com(a21, a11)?;
    let lhs9 = com(a22, a11)?.checked_add(&com(a21, a12)?)?;
    let lhs10 = com(a22, a12)?;
    let lhs11 = com(n2, a11)?.checked_add(&com(a21, n1)?)?;
    let lhs12 = com(n2, a12)?.checked_add(&com(a22, n1)?)?;
    let lhs13 = com(n2, n1)?;

    let two = K::from_i64(2);
    let rhs8 = a11
        .scale(q11)
        .checked_add(&a21.scale(q12))?
        .checked_sub(&a22.scale(q11))?;
    let rhs9 = a12.scale(&(two.clone() * q11.clone()));
    let rhs10 = a12.scale(q12);
    let rhs11 = n1
        .scale(&(two * q11.clone()))
        .checked_add(&n2.scale(q12))?
        .checked_add(&a21.left_mul(w2)?)?
        .checked_sub(&a22.left_mul(w1)?)?
        .checked_add(&ps.hamiltonian(w1)?)?;
    let rhs12 = n1
        .scale(q12)
        .checked_add(&a12.left_mul(w1)?)?
        .checked_sub(&a11.left_mul(w2)?)?
        .checked_add(&ps.hamiltonian(w2)?)?;
    let rhs13 = n1
        .left_mul(w1)?
        .checked_add(&n2.left_mul(w2)?)?
        .checked_sub(&a11.left_mul(w0)?)?
        .checked_sub(&a22.left_mul(w0)?)?
        .checked_add(&ps.hamiltonian(w0)?)?;

    let pairs = [
        (8u8, lhs8, rhs8),
        (9, lhs9, rhs9),
        (10, lhs10, rhs10),
        (11, lhs11, rhs11),
        (12, lhs12, rhs12),
        (13, lhs13, rhs13),
    ];
    for (num, lhs, rhs) in pairs {
        let diff = lhs.checked_sub(&rhs)?;
        for g in 0..n {
            let res = diff.image(g);
            if !res.is_zero() {
                failures.push(ConditionFailure {
                    condition: num,
                    generators: vec![g],
                    residual: res.clone(),
                });
            }
        }
    }

    failures.sort_by(|a, b| (a.condition, &a.generators).cmp(&(b.condition, &b.generators)));
    Ok(ConditionReport {
        ring: r,
        failures,
        base_jacobi: ps.jacobi_check(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::pbracket::PoissonStructure;
    use crate::scalar::{int, Rational};

    #[test]
    fn t1_passes_all_conditions() {
        let rep = check_dedata(&t1()).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.to_string(), "13/13 conditions hold\n");
    }

    #[test]
    fn zero_data_passes() {
        let r = PolyRing::new(&["a", "b", "c"]).unwrap();
        let d = DEData::<Rational>::zero(PoissonStructure::trivial(&r), ["y1", "y2"]);
        assert!(check_dedata(&d).unwrap().passed());
    }

    #[test]
    fn mutated_t1_fails_exactly_ten_and_thirteen() {
        let mut d = t1();
        let r = d.ring().clone();
        let z = P::var(&r, 0);
        d.alpha[1][1] = Derivation::from_images(&r, vec![z.scale(&int(2))]).unwrap();
        let rep = check_dedata(&d).unwrap();
        assert_eq!(rep.failed_conditions(), BTreeSet::from([10, 13]));
        // (10): [α22, α12](z) = α22(2) - α12(2z) = -4 against q12 α12(z) = -2
        let f10 = rep.failures.iter().find(|f| f.condition == 10).unwrap();
        assert_eq!(f10.residual, P::constant(&r, int(-4) - int(-2)));
        // (13): 0 against -w0 α11(z) - w0 α22(z) = 2z·z - 2z·2z = -2z²
        let f13 = rep.failures.iter().find(|f| f.condition == 13).unwrap();
        assert_eq!(f13.residual, z.pow(2).scale(&int(2)));
    }

    #[test]
    fn nonit_limit_fails_eight_ten_thirteen() {
        let d = nonit();
        let x = P::var(d.ring(), 0);
        let rep = check_dedata(&d).unwrap();
        assert_eq!(rep.failed_conditions(), BTreeSet::from([8, 10, 13]));
        // (10): [α22, α12](x) = α22(x) - α12(-x) = 0 against q12 α12(x) = -2x
        let f10 = rep.failures.iter().find(|f| f.condition == 10).unwrap();
        assert_eq!(f10.residual, x.scale(&int(2)));
    }
}
