//! Double Poisson extensions `R[y1, y2]` of a Poisson polynomial ring `R`.
//!
//! A [`DEData`] `{q, α, ν, w}` prescribes
//!
//! ```text
//! {y2, y1} = q11 y1² + q12 y1 y2 + w1 y1 + w2 y2 + w0
//! {y1, a}  = α11(a) y1 + α12(a) y2 + ν1(a)
//! {y2, a}  = α21(a) y1 + α22(a) y2 + ν2(a)
//! ```
//!
//! and [`check_dedata`] decides whether these formulas define a Poisson
//! bracket by evaluating thirteen generator-level identities.

mod conditions;
mod iterated;
mod normalize;

use std::fmt;
use std::sync::Arc;

pub use conditions::{check_dedata, ConditionFailure, ConditionReport, CONDITION_COUNT};
pub use iterated::{detect_iterated, from_iterated, shift_variable, CriterionWitness, IteratedForm, PoissonPolyExtData, SkewPoissonFailure};
pub use normalize::{normalize_dedata, verify_basis_change, BasisChange, BasisMismatch};

use crate::error::{Error, Result};
use crate::pbracket::PoissonStructure;
use crate::poly::{same_ring, Derivation, Poly, PolyRing};
use crate::scalar::Scalar;

/// The datum `{q, α, ν, w}` of a double Poisson extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DEData<K> {
    /// The Poisson ring `R`.
    pub base: PoissonStructure<K>,
    /// Names of `y1` and `y2`.
    pub vars: [String; 2],
    pub q11: K,
    pub q12: K,
    /// `alpha[i][j]` is `α_{i+1, j+1}`.
    pub alpha: [[Derivation<K>; 2]; 2],
    pub nu: [Derivation<K>; 2],
    /// `[w1, w2, w0]`.
    pub w: [Poly<K>; 3],
}

impl<K: Scalar> DEData<K> {
    /// All-zero data over `base`.
    pub fn zero(base: PoissonStructure<K>, vars: [&str; 2]) -> Self {
        let r = base.ring().clone();
        let d = Derivation::zero(&r);
        let p = Poly::zero(&r);
        DEData {
            base,
            vars: vars.map(str::to_string),
            q11: K::zero(),
            q12: K::zero(),
            alpha: [[d.clone(), d.clone()], [d.clone(), d.clone()]],
            nu: [d.clone(), d],
            w: [p.clone(), p.clone(), p],
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.base.ring()
    }

    pub fn w1(&self) -> &Poly<K> {
        &self.w[0]
    }

    pub fn w2(&self) -> &Poly<K> {
        &self.w[1]
    }

    pub fn w0(&self) -> &Poly<K> {
        &self.w[2]
    }

    /// Checks that every map and polynomial lives in the base ring.
    pub fn validate(&self) -> Result<()> {
        let r = self.ring();
        for d in self.alpha.iter().flatten().chain(&self.nu) {
            same_ring(r, d.ring())?;
        }
        for p in &self.w {
            same_ring(r, p.ring())?;
        }
        if self.vars[0] == self.vars[1] || r.index_of(&self.vars[0]).is_some() || r.index_of(&self.vars[1]).is_some() {
            return Err(Error::ConstraintViolation(format!(
                "extension variables {:?} must be distinct new names",
                self.vars
            )));
        }
        Ok(())
    }

    /// The ring `R[y1, y2]`.
    pub fn extension_ring(&self) -> Result<Arc<PolyRing>> {
        self.ring().extended(&self.vars)
    }

    /// The bracket on `R[y1, y2]` given by the defining formulas, without
    /// checking that it satisfies the Jacobi identity.
    pub fn extension_structure(&self) -> Result<PoissonStructure<K>> {
        self.validate()?;
        let base = self.ring();
        let n = base.len();
        let ext = self.extension_ring()?;
        let up = |p: &Poly<K>| p.embed_prefix(&ext);
        let y1 = Poly::var(&ext, n);
        let y2 = Poly::var(&ext, n + 1);

        let mut ps = PoissonStructure::trivial(&ext);
        for (i, j, v) in self.base.entries() {
            ps.set(i, j, up(v))?;
        }
        let y21 = &(&(&(&y1.pow(2).scale(&self.q11) + &(&y1 * &y2).scale(&self.q12)) + &(&up(self.w1()) * &y1))
            + &(&up(self.w2()) * &y2))
            + &up(self.w0());
        ps.set(n + 1, n, y21)?;
        for g in 0..n {
            for (i, yi) in [n, n + 1].into_iter().enumerate() {
                let v = &(&(&up(self.alpha[i][0].image(g)) * &y1) + &(&up(self.alpha[i][1].image(g)) * &y2))
                    + &up(self.nu[i].image(g));
                ps.set(yi, g, v)?;
            }
        }
        Ok(ps)
    }
}

impl<K: Scalar> fmt::Display for DEData<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ring();
        writeln!(f, "q = {{{}, {}}}", self.q11, self.q12)?;
        writeln!(f, "w = {{{}, {}, {}}}", self.w[0], self.w[1], self.w[2])?;
        for g in 0..r.len() {
            let a = &self.alpha;
            writeln!(
                f,
                "alpha({0}) = [[{1}, {2}], [{3}, {4}]], nu({0}) = [{5}, {6}]",
                r.name(g),
                a[0][0].image(g),
                a[0][1].image(g),
                a[1][0].image(g),
                a[1][1].image(g),
                self.nu[0].image(g),
                self.nu[1].image(g)
            )?;
        }
        Ok(())
    }
}

/// `R[y1, y2]` with a verified double Poisson extension bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRing<K> {
    base: Arc<PolyRing>,
    structure: PoissonStructure<K>,
}

impl<K: Scalar> ExtensionRing<K> {
    pub fn structure(&self) -> &PoissonStructure<K> {
        &self.structure
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.structure.ring()
    }

    pub fn base_ring(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn y1(&self) -> Poly<K> {
        Poly::var(self.ring(), self.base.len())
    }

    pub fn y2(&self) -> Poly<K> {
        Poly::var(self.ring(), self.base.len() + 1)
    }

    /// Includes an element of `R`.
    pub fn embed(&self, a: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.base, a.ring())?;
        Ok(a.embed_prefix(self.ring()))
    }

    pub fn bracket(&self, f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>> {
        self.structure.bracket(f, g)
    }
}

/// Builds the Poisson algebra `R[y1, y2]`; rejects data failing
/// [`check_dedata`].
pub fn build_extension<K: Scalar>(d: &DEData<K>) -> Result<ExtensionRing<K>> {
    let report = check_dedata(d)?;
    if !report.passed() {
        return Err(Error::DedataRejected(report.to_string().trim_end().to_string()));
    }
    Ok(ExtensionRing {
        base: d.ring().clone(),
        structure: d.extension_structure()?,
    })
}

pub(crate) fn nonzero<K: Scalar>(k: &K) -> bool {
    !num_traits::Zero::is_zero(k)
}
