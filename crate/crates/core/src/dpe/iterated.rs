use std::fmt;
use std::sync::Arc;

use super::{nonzero, DEData};
use crate::error::{Error, Result};
use crate::pbracket::PoissonStructure;
use crate::poly::{same_ring, Derivation, Poly, PolyRing};
use crate::scalar::Scalar;

/// A Poisson polynomial extension `R[x; β, ν]_p`, i.e. `{x, a} = β(a) x + ν(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonPolyExtData<K> {
    pub base: PoissonStructure<K>,
    pub var: String,
    pub beta: Derivation<K>,
    pub nu: Derivation<K>,
}

/// A generator pair on which `β` fails to be a Poisson derivation (`which
/// == "beta"`) or `(β, ν)` fails the skew condition (`which == "nu"`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoissonFailure<K> {
    pub which: &'static str,
    pub generators: (usize, usize),
    pub residual: Poly<K>,
}

impl<K: Scalar> PoissonPolyExtData<K> {
    pub fn new(base: PoissonStructure<K>, var: &str, beta: Derivation<K>, nu: Derivation<K>) -> Result<Self> {
        same_ring(base.ring(), beta.ring())?;
        same_ring(base.ring(), nu.ring())?;
        if base.ring().index_of(var).is_some() {
            return Err(Error::ConstraintViolation(format!("`{var}` already names a base generator")));
        }
        Ok(PoissonPolyExtData {
            base,
            var: var.to_string(),
            beta,
            nu,
        })
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        self.base.ring().extended(&[&self.var])
    }

    /// The bracket on `R[x]`.
    pub fn structure(&self) -> Result<PoissonStructure<K>> {
        let ext = self.ring()?;
        let n = self.base.ring().len();
        let x = Poly::var(&ext, n);
        let mut ps = PoissonStructure::trivial(&ext);
        for (i, j, v) in self.base.entries() {
            ps.set(i, j, v.embed_prefix(&ext))?;
        }
        for g in 0..n {
            let v = &(&self.beta.image(g).embed_prefix(&ext) * &x) + &self.nu.image(g).embed_prefix(&ext);
            ps.set(n, g, v)?;
        }
        Ok(ps)
    }

    /// Checks on generator pairs that `β` is a Poisson derivation and that
    /// `ν({a,b}) = {ν(a),b} + {a,ν(b)} + β(a)ν(b) − ν(a)β(b)`.
    pub fn skew_failures(&self) -> Result<Vec<SkewPoissonFailure<K>>> {
        let ps = &self.base;
        let r = ps.ring();
        let mut out = Vec::new();
        for i in 0..r.len() {
            for j in 0..r.len() {
                let (a, b) = (Poly::var(r, i), Poly::var(r, j));
                let ab = ps.bracket(&a, &b)?;
                let (ba, bb) = (self.beta.apply(&a)?, self.beta.apply(&b)?);
                let (na, nb) = (self.nu.apply(&a)?, self.nu.apply(&b)?);
                let beta_res = &(&self.beta.apply(&ab)? - &ps.bracket(&ba, &b)?) - &ps.bracket(&a, &bb)?;
                let nu_res = &(&(&(&self.nu.apply(&ab)? - &ps.bracket(&na, &b)?) - &ps.bracket(&a, &nb)?)
                    - &(&ba * &nb))
                    + &(&na * &bb);
                for (which, res) in [("beta", beta_res), ("nu", nu_res)] {
                    if !res.is_zero() {
                        out.push(SkewPoissonFailure {
                            which,
                            generators: (i, j),
                            residual: res,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.skew_failures()?.is_empty() && self.base.jacobi_check().passed())
    }
}

/// Why [`detect_iterated`] found no iterated presentation in the given
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionWitness<K> {
    /// A generator `g` with `α12(g) ≠ 0`, and that image.
    pub alpha12: (usize, Poly<K>),
    /// A generator with `α21(g) ≠ 0`, if any.
    pub alpha21: Option<(usize, Poly<K>)>,
    /// `q11` when nonzero.
    pub q11: Option<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IteratedForm<K> {
    /// `R[y1; α11, ν1]_p[y2; β, μ]_p`.
    Form1 {
        first: PoissonPolyExtData<K>,
        second: PoissonPolyExtData<K>,
    },
    /// `R[y2; α22, ν2]_p[y1; β, μ]_p`.
    Form2 {
        first: PoissonPolyExtData<K>,
        second: PoissonPolyExtData<K>,
    },
    CriterionFails(CriterionWitness<K>),
}

fn first_nonzero<K: Scalar>(d: &Derivation<K>) -> Option<(usize, Poly<K>)> {
    d.images()
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(i, p)| (i, p.clone()))
}

/// Decides whether the double extension is an iterated Poisson polynomial
/// extension in the given variables: possible exactly when `α12 = 0`
/// (adjoin `y1` first) or `α21 = 0` and `q11 = 0` (adjoin `y2` first).
pub fn detect_iterated<K: Scalar>(d: &DEData<K>) -> Result<IteratedForm<K>> {
    d.validate()?;
    let [[a11, a12], [a21, a22]] = &d.alpha;
    let [n1, n2] = &d.nu;
    let [w1, w2, w0] = &d.w;

    if a12.is_zero() {
        let (first, second) = chain(d, 0, a11, n1, |mid, y, up| {
            let beta_y = &y.scale(&d.q12) + &up(w2);
            let mu_y = &(&y.pow(2).scale(&d.q11) + &(&up(w1) * y)) + &up(w0);
            let beta_g = |g| up(a22.image(g));
            let mu_g = |g| &(&up(a21.image(g)) * y) + &up(n2.image(g));
            build_second(mid, beta_g, mu_g, beta_y, mu_y)
        })?;
        return Ok(IteratedForm::Form1 { first, second });
    }
    if a21.is_zero() && !nonzero(&d.q11) {
        let (first, second) = chain(d, 1, a22, n2, |mid, y, up| {
            let beta_y = &(-&y.scale(&d.q12)) - &up(w1);
            let mu_y = &(-&(&up(w2) * y)) - &up(w0);
            let beta_g = |g| up(a11.image(g));
            let mu_g = |g| &(&up(a12.image(g)) * y) + &up(n1.image(g));
            build_second(mid, beta_g, mu_g, beta_y, mu_y)
        })?;
        return Ok(IteratedForm::Form2 { first, second });
    }
    Ok(IteratedForm::CriterionFails(CriterionWitness {
        alpha12: first_nonzero(a12).expect("alpha12 nonzero"),
        alpha21: first_nonzero(a21),
        q11: nonzero(&d.q11).then(|| d.q11.clone()),
    }))
}

type Maps<K> = (Derivation<K>, Derivation<K>);

/// Builds `R[y_k; β1, ν1]_p` and then the second extension over it, with
/// `make_second` producing the images of `β` and `μ`.
fn chain<K: Scalar>(
    d: &DEData<K>,
    k: usize,
    beta1: &Derivation<K>,
    nu1: &Derivation<K>,
    make_second: impl Fn(&Arc<PolyRing>, &Poly<K>, &dyn Fn(&Poly<K>) -> Poly<K>) -> Result<Maps<K>>,
) -> Result<(PoissonPolyExtData<K>, PoissonPolyExtData<K>)> {
    let first = PoissonPolyExtData::new(d.base.clone(), &d.vars[k], beta1.clone(), nu1.clone())?;
    let mid_structure = first.structure()?;
    let mid = mid_structure.ring().clone();
    let y = Poly::var(&mid, d.ring().len());
    let up = |p: &Poly<K>| p.embed_prefix(&mid);
    let (beta, mu) = make_second(&mid, &y, &up)?;
    let second = PoissonPolyExtData::new(mid_structure, &d.vars[1 - k], beta, mu)?;
    Ok((first, second))
}

fn build_second<K: Scalar>(
    mid: &Arc<PolyRing>,
    beta_g: impl Fn(usize) -> Poly<K>,
    mu_g: impl Fn(usize) -> Poly<K>,
    beta_y: Poly<K>,
    mu_y: Poly<K>,
) -> Result<Maps<K>> {
    let n = mid.len() - 1;
    let mut beta: Vec<_> = (0..n).map(&beta_g).collect();
    let mut mu: Vec<_> = (0..n).map(&mu_g).collect();
    beta.push(beta_y);
    mu.push(mu_y);
    Ok((Derivation::from_images(mid, beta)?, Derivation::from_images(mid, mu)?))
}

/// Reads double extension data off an iterated extension
/// `R[y1; α1, ν1]_p[y2; α2, ν2]_p` with `α2(R) ⊆ R`, `ν2(R) ⊆ R y1 + R`,
/// `α2(y1) = μ12 y1 + w2` and `ν2(y1) = μ11 y1² + w1 y1 + w0`.
pub fn from_iterated<K: Scalar>(
    first: &PoissonPolyExtData<K>,
    second: &PoissonPolyExtData<K>,
) -> Result<DEData<K>> {
    let base = first.base.ring().clone();
    let n = base.len();
    let mid = first.structure()?;
    if &mid != &second.base {
        return Err(Error::ConstraintViolation(
            "second extension must be taken over the first one".into(),
        ));
    }
    let violation = |msg: String| Err(Error::ConstraintViolation(msg));
    let mid_ring = mid.ring().clone();
    let y1 = first.var.clone();

    // coefficients of a polynomial in R[y1] with respect to y1
    let coeffs = |p: &Poly<K>| -> Vec<Poly<K>> {
        let parts = p.split_trailing(&base);
        let deg = parts.keys().map(|e| e[0] as usize).max().map_or(0, |d| d + 1);
        (0..deg)
            .map(|k| parts.get(&vec![k as u32]).cloned().unwrap_or_else(|| Poly::zero(&base)))
            .collect()
    };
    let scalar = |p: &Poly<K>, what: &str| -> Result<K> {
        p.as_constant()
            .ok_or_else(|| Error::ConstraintViolation(format!("{what} must be a scalar, got {p}")))
    };
    let at = |v: &[Poly<K>], k: usize| v.get(k).cloned().unwrap_or_else(|| Poly::zero(&base));

    let mut alpha2 = Vec::with_capacity(n);
    let mut nu21 = Vec::with_capacity(n);
    let mut nu20 = Vec::with_capacity(n);
    for g in 0..n {
        let a = coeffs(second.beta.image(g));
        if a.len() > 1 {
            return violation(format!("α2({}) must lie in R", base.name(g)));
        }
        alpha2.push(at(&a, 0));
        let v = coeffs(second.nu.image(g));
        if v.len() > 2 {
            return violation(format!("ν2({}) must lie in R{y1} + R", base.name(g)));
        }
        nu20.push(at(&v, 0));
        nu21.push(at(&v, 1));
    }
    let a_y = coeffs(second.beta.image(n));
    if a_y.len() > 2 {
        return violation(format!("α2({y1}) must be linear in {y1}"));
    }
    let mu12 = scalar(&at(&a_y, 1), &format!("coefficient of {y1} in α2({y1})"))?;
    let w2 = at(&a_y, 0);
    let v_y = coeffs(second.nu.image(n));
    if v_y.len() > 3 {
        return violation(format!("ν2({y1}) must be quadratic in {y1}"));
    }
    let mu11 = scalar(&at(&v_y, 2), &format!("coefficient of {y1}² in ν2({y1})"))?;
    let (w1, w0) = (at(&v_y, 1), at(&v_y, 0));
    debug_assert_eq!(mid_ring.len(), n + 1);

    let der = |images: Vec<Poly<K>>| Derivation::from_images(&base, images);
    let zero = Derivation::zero(&base);
    let mut d = DEData::zero(first.base.clone(), [y1.as_str(), second.var.as_str()]);
    d.q11 = mu11;
    d.q12 = mu12;
    d.alpha = [[first.beta.clone(), zero], [der(nu21)?, der(alpha2)?]];
    d.nu = [first.nu.clone(), der(nu20)?];
    d.w = [w1, w2, w0];
    d.validate()?;
    Ok(d)
}

/// Rewrites `R[z; β, ν]_p` in the variable `z' = z − s`:
/// `ν'(r) = β(r) s + ν(r) + {r, s}`.
pub fn shift_variable<K: Scalar>(e: &PoissonPolyExtData<K>, s: &Poly<K>) -> Result<PoissonPolyExtData<K>> {
    same_ring(e.base.ring(), s.ring())?;
    let r = e.base.ring();
    let images = (0..r.len())
        .map(|g| {
            let gp = Poly::var(r, g);
            Ok(&(&(e.beta.image(g) * s) + e.nu.image(g)) + &e.base.bracket(&gp, s)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoissonPolyExtData {
        base: e.base.clone(),
        var: e.var.clone(),
        beta: e.beta.clone(),
        nu: Derivation::from_images(r, images)?,
    })
}

impl<K: Scalar> fmt::Display for PoissonPolyExtData<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.base.ring();
        let names: Vec<_> = r.names().iter().map(String::as_str).collect();
        write!(f, "k[{}][{}; β, ν]_p with", names.join(", "), self.var)?;
        for g in 0..r.len() {
            write!(
                f,
                " β({0}) = {1}, ν({0}) = {2};",
                r.name(g),
                self.beta.image(g),
                self.nu.image(g)
            )?;
        }
        Ok(())
    }
}
