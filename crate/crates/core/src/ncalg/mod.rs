//! Left double extensions `R_P[y1, y2; σ, δ, τ]` given by generators and
//! relations, with rewriting to the basis `{y1^i y2^j}` of the free left
//! `R`-module.
//!
//! ```text
//! y2 y1 = p11 y1² + p12 y1 y2 + τ1 y1 + τ2 y2 + τ0
//! y1 a  = σ11(a) y1 + σ12(a) y2 + δ1(a)
//! y2 a  = σ21(a) y1 + σ22(a) y2 + δ2(a)
//! ```
//!
//! Elements of `R` are written as polynomials whose monomials stand for the
//! ordered words `x1^e1 x2^e2 ...`; a base relation `x_j x_i = f` (`i < j`)
//! may replace the default commutation `x_j x_i = x_i x_j`.

mod confluence;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use confluence::{confluence_check, ConfluenceReport, UnresolvedOverlap};
pub use rewrite::{commutator_limit_bracket, nc_multiply, normal_form, NCElement};

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Poly, PolyRing};
use crate::scalar::Scalar;

/// Images of the base generators under a map `R → R`.
pub type GenMap<K> = Vec<Poly<K>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPresentation<K> {
    base: Arc<PolyRing>,
    ext: Arc<PolyRing>,
    pub p11: K,
    pub p12: K,
    /// `[τ1, τ2, τ0]`.
    pub tau: [Poly<K>; 3],
    /// `sigma[i][j][g]` is `σ_{i+1, j+1}(x_g)`.
    pub sigma: [[GenMap<K>; 2]; 2],
    pub delta: [GenMap<K>; 2],
    /// `(j, i) ↦ f` for the relation `x_j x_i = f`, `i < j`. Absent pairs
    /// commute.
    baserel: BTreeMap<(usize, usize), Poly<K>>,
}

/// A scalar coefficient of a presentation. Monomials are taken in the base
/// ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoeffSlot {
    P11,
    P12,
    /// `Tau(k, m)`: `k = 0, 1, 2` for `τ1, τ2, τ0`.
    Tau(usize, Monomial),
    /// `Sigma(i, j, g, m)`: coefficient of `m` in `σ_{i+1, j+1}(x_g)`.
    Sigma(usize, usize, usize, Monomial),
    /// `Delta(i, g, m)`: coefficient of `m` in `δ_{i+1}(x_g)`.
    Delta(usize, usize, Monomial),
    /// `BaseRel(j, i, m)`: coefficient of `m` in the relation for `x_j x_i`.
    BaseRel(usize, usize, Monomial),
}

impl CoeffSlot {
    /// The value this coefficient takes in the commutative presentation
    /// (`p12 = 1`, `σ = I`, commuting base).
    pub fn identity_value(&self) -> i64 {
        match self {
            CoeffSlot::P12 => 1,
            CoeffSlot::Sigma(i, j, g, m) if i == j && *m == Monomial::var(m.exponents().len(), *g) => 1,
            CoeffSlot::BaseRel(j, i, m) if *m == Monomial::var(m.exponents().len(), *i).mul(&Monomial::var(m.exponents().len(), *j)) => 1,
            _ => 0,
        }
    }

    /// Renders the slot with generator names, e.g. `sigma12(x)[x^2]`.
    pub fn display(&self, ring: &PolyRing) -> String {
        let m = |m: &Monomial| m.display(ring).to_string();
        match self {
            CoeffSlot::P11 => "p11".into(),
            CoeffSlot::P12 => "p12".into(),
            CoeffSlot::Tau(k, mo) => format!("tau{}[{}]", [1, 2, 0][*k], m(mo)),
            CoeffSlot::Sigma(i, j, g, mo) => format!("sigma{}{}({})[{}]", i + 1, j + 1, ring.name(*g), m(mo)),
            CoeffSlot::Delta(i, g, mo) => format!("delta{}({})[{}]", i + 1, ring.name(*g), m(mo)),
            CoeffSlot::BaseRel(j, i, mo) => format!("baserel({} {})[{}]", ring.name(*j), ring.name(*i), m(mo)),
        }
    }
}

impl<K: Scalar> NCPresentation<K> {
    /// The commutative presentation `R[y1, y2]`: `p12 = 1`, `σ = I`, all
    /// other data zero.
    pub fn commutative(base: &Arc<PolyRing>, vars: [&str; 2]) -> Result<Self> {
        let ext = base.extended(&vars)?;
        let n = base.len();
        let zero = || vec![Poly::zero(base); n];
        let id: GenMap<K> = (0..n).map(|g| Poly::var(base, g)).collect();
        Ok(NCPresentation {
            base: base.clone(),
            ext,
            p11: K::zero(),
            p12: K::one(),
            tau: [Poly::zero(base), Poly::zero(base), Poly::zero(base)],
            sigma: [[id.clone(), zero()], [zero(), id]],
            delta: [zero(), zero()],
            baserel: BTreeMap::new(),
        })
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    /// `R[y1, y2]` as a commutative ring, used for printing normal forms.
    pub fn ext_ring(&self) -> &Arc<PolyRing> {
        &self.ext
    }

    pub fn vars(&self) -> [&str; 2] {
        let n = self.base.len();
        [self.ext.name(n), self.ext.name(n + 1)]
    }

    /// Sets the relation `x_j x_i = value`. Setting `x_i x_j` restores
    /// commutation.
    pub fn set_baserel(&mut self, j: usize, i: usize, value: Poly<K>) -> Result<()> {
        same_ring(&self.base, value.ring())?;
        if j <= i || j >= self.base.len() {
            return Err(Error::ConstraintViolation(format!(
                "base relation must rewrite x_j x_i with i < j, got ({j}, {i})"
            )));
        }
        if value == &Poly::var(&self.base, i) * &Poly::var(&self.base, j) {
            self.baserel.remove(&(j, i));
        } else {
            self.baserel.insert((j, i), value);
        }
        Ok(())
    }

    pub fn baserel(&self, j: usize, i: usize) -> Option<&Poly<K>> {
        self.baserel.get(&(j, i))
    }

    pub fn baserels(&self) -> impl Iterator<Item = (usize, usize, &Poly<K>)> {
        self.baserel.iter().map(|(&(j, i), v)| (j, i, v))
    }

    pub fn has_commutative_base(&self) -> bool {
        self.baserel.is_empty()
    }

    /// Checks that all data lives in the base ring and has the right shape.
    pub fn validate(&self) -> Result<()> {
        let n = self.base.len();
        for p in &self.tau {
            same_ring(&self.base, p.ring())?;
        }
        for m in self.sigma.iter().flatten().chain(&self.delta) {
            if m.len() != n {
                return Err(Error::ConstraintViolation(format!(
                    "expected {n} generator images, got {}",
                    m.len()
                )));
            }
            for p in m {
                same_ring(&self.base, p.ring())?;
            }
        }
        for p in self.baserel.values() {
            same_ring(&self.base, p.ring())?;
        }
        Ok(())
    }

    /// Symbol index: base generators first, then `y1`, `y2`.
    pub fn symbol(&self, name: &str) -> Result<usize> {
        self.ext.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn symbol_count(&self) -> usize {
        self.ext.len()
    }

    /// Parses a `*`-separated word such as `y2*y1*x`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Vec::new());
        }
        text.split('*').map(|s| self.symbol(s.trim())).collect()
    }

    pub fn word_to_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter().map(|&s| self.ext.name(s)).collect::<Vec<_>>().join("*")
    }

    /// Every scalar coefficient with its value. Identity slots (`p12`, the
    /// diagonal `x_g` term of `σ_ii(x_g)` and the `x_i x_j` term of a base
    /// relation) are listed even when their coefficient is zero.
    pub fn slots(&self) -> Vec<(CoeffSlot, K)> {
        let n = self.base.len();
        let mut out = BTreeMap::new();
        out.insert(CoeffSlot::P11, self.p11.clone());
        out.insert(CoeffSlot::P12, self.p12.clone());
        for (k, p) in self.tau.iter().enumerate() {
            for (m, c) in p.terms() {
                out.insert(CoeffSlot::Tau(k, m.clone()), c.clone());
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                for g in 0..n {
                    if i == j {
                        out.insert(CoeffSlot::Sigma(i, i, g, Monomial::var(n, g)), K::zero());
                    }
                    for (m, c) in self.sigma[i][j][g].terms() {
                        out.insert(CoeffSlot::Sigma(i, j, g, m.clone()), c.clone());
                    }
                }
            }
            for g in 0..n {
                for (m, c) in self.delta[i][g].terms() {
                    out.insert(CoeffSlot::Delta(i, g, m.clone()), c.clone());
                }
            }
        }
        for (&(j, i), p) in &self.baserel {
            out.insert(CoeffSlot::BaseRel(j, i, Monomial::var(n, i).mul(&Monomial::var(n, j))), K::zero());
            for (m, c) in p.terms() {
                out.insert(CoeffSlot::BaseRel(j, i, m.clone()), c.clone());
            }
        }
        out.into_iter().collect()
    }

    /// Rebuilds the presentation with every coefficient transformed by `f`.
    /// Base pairs without an explicit relation keep commuting.
    pub fn map_slots<L: Scalar>(&self, mut f: impl FnMut(&CoeffSlot, &K) -> Result<L>) -> Result<NCPresentation<L>> {
        let base = &self.base;
        let n = base.len();
        let zero = || vec![Poly::<L>::zero(base); n];
        let mut out = NCPresentation {
            base: base.clone(),
            ext: self.ext.clone(),
            p11: L::zero(),
            p12: L::zero(),
            tau: [Poly::zero(base), Poly::zero(base), Poly::zero(base)],
            sigma: [[zero(), zero()], [zero(), zero()]],
            delta: [zero(), zero()],
            baserel: BTreeMap::new(),
        };
        let mut rels: BTreeMap<(usize, usize), Poly<L>> = BTreeMap::new();
        for (slot, c) in self.slots() {
            let v = f(&slot, &c)?;
            let add = |p: &mut Poly<L>, m: Monomial| p.add_term(m, v.clone());
            match slot {
                CoeffSlot::P11 => out.p11 = v.clone(),
                CoeffSlot::P12 => out.p12 = v.clone(),
                CoeffSlot::Tau(k, m) => add(&mut out.tau[k], m),
                CoeffSlot::Sigma(i, j, g, m) => add(&mut out.sigma[i][j][g], m),
                CoeffSlot::Delta(i, g, m) => add(&mut out.delta[i][g], m),
                CoeffSlot::BaseRel(j, i, m) => add(rels.entry((j, i)).or_insert_with(|| Poly::zero(base)), m),
            }
        }
        for ((j, i), p) in rels {
            out.set_baserel(j, i, p)?;
        }
        Ok(out)
    }

    /// Overwrites one coefficient.
    pub fn set_slot(&mut self, slot: &CoeffSlot, value: K) -> Result<()> {
        let set = |p: &mut Poly<K>, m: &Monomial| {
            let old = p.coeff(m);
            p.add_term(m.clone(), value.clone() - old);
        };
        match slot {
            CoeffSlot::P11 => self.p11 = value.clone(),
            CoeffSlot::P12 => self.p12 = value.clone(),
            CoeffSlot::Tau(k, m) => set(&mut self.tau[*k], m),
            CoeffSlot::Sigma(i, j, g, m) => set(&mut self.sigma[*i][*j][*g], m),
            CoeffSlot::Delta(i, g, m) => set(&mut self.delta[*i][*g], m),
            CoeffSlot::BaseRel(j, i, m) => {
                let mut p = self
                    .baserel
                    .get(&(*j, *i))
                    .cloned()
                    .unwrap_or_else(|| &Poly::var(&self.base, *i) * &Poly::var(&self.base, *j));
                set(&mut p, m);
                self.set_baserel(*j, *i, p)?;
            }
        }
        Ok(())
    }

    /// The rewrite rules `b a → Σ c·word` for every inversion `b > a`.
    pub(crate) fn rules(&self) -> BTreeMap<(usize, usize), Vec<(Vec<usize>, K)>> {
        let n = self.base.len();
        let (y1, y2) = (n, n + 1);
        let words = |p: &Poly<K>, tail: &[usize]| -> Vec<(Vec<usize>, K)> {
            p.terms()
                .map(|(m, c)| {
                    let mut w = monomial_word(m);
                    w.extend_from_slice(tail);
                    (w, c.clone())
                })
                .collect()
        };
        let mut rules = BTreeMap::new();

        let mut rel1 = Vec::new();
        if !self.p11.is_zero() {
            rel1.push((vec![y1, y1], self.p11.clone()));
        }
        if !self.p12.is_zero() {
            rel1.push((vec![y1, y2], self.p12.clone()));
        }
        rel1.extend(words(&self.tau[0], &[y1]));
        rel1.extend(words(&self.tau[1], &[y2]));
        rel1.extend(words(&self.tau[2], &[]));
        rules.insert((y2, y1), rel1);

        for (i, y) in [y1, y2].into_iter().enumerate() {
            for g in 0..n {
                let mut r = words(&self.sigma[i][0][g], &[y1]);
                r.extend(words(&self.sigma[i][1][g], &[y2]));
                r.extend(words(&self.delta[i][g], &[]));
                rules.insert((y, g), r);
            }
        }
        for j in 0..n {
            for i in 0..j {
                let r = match self.baserel.get(&(j, i)) {
                    Some(p) => words(p, &[]),
                    None => vec![(vec![i, j], K::one())],
                };
                rules.insert((j, i), r);
            }
        }
        rules
    }
}

/// The ordered word `x1^e1 x2^e2 ...` of a base monomial.
pub(crate) fn monomial_word(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
        .collect()
}

impl<K: Scalar> fmt::Display for NCPresentation<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules = self.rules();
        let mut keys: Vec<_> = rules.keys().copied().collect();
        keys.sort_by(|a, b| b.cmp(a));
        for (b, a) in keys {
            let n = self.base.len();
            if a < n && b < n && !self.baserel.contains_key(&(b, a)) {
                continue;
            }
            let mut rhs = Poly::zero(&self.ext);
            for (w, c) in &rules[&(b, a)] {
                let mut e = vec![0u32; self.ext.len()];
                for &s in w {
                    e[s] += 1;
                }
                rhs.add_term(Monomial::from_exponents(e), c.clone());
            }
            writeln!(f, "{}*{} = {}", self.ext.name(b), self.ext.name(a), rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::scalar::{int, RatFunc, Rational};
    use num_traits::One;

    /// T_t over ℚ(t)[z] with variables x, y.
    pub fn t_family() -> NCPresentation<RatFunc> {
        let r = PolyRing::new(&["z"]).unwrap();
        let z = Poly::<RatFunc>::var(&r, 0);
        let t = RatFunc::t();
        let ti = t.try_inv().unwrap();
        let c = |k: RatFunc| Poly::constant(&r, k);
        let one = RatFunc::one();
        let mut p = NCPresentation::commutative(&r, ["x", "y"]).unwrap();
        p.p12 = ti.clone();
        p.tau[2] = z.scale(&(t.clone() - ti.clone()));
        p.sigma = [
            [vec![z.scale(&ti)], vec![c(one.clone() - ti.clone() * ti.clone())]],
            [vec![c(ti.clone() - t.clone())], vec![z.scale(&t)]],
        ];
        p
    }

    /// y2 y1 = -y1 y2 + x², y1 x = x y2, y2 x = x y1 over ℚ[x].
    pub fn nonit_lambda2() -> NCPresentation<Rational> {
        let r = PolyRing::new(&["x"]).unwrap();
        let x = Poly::<Rational>::var(&r, 0);
        let mut p = NCPresentation::commutative(&r, ["y1", "y2"]).unwrap();
        p.p12 = int(-1);
        p.tau[2] = x.pow(2);
        p.sigma = [[vec![Poly::zero(&r)], vec![x.clone()]], [vec![x.clone()], vec![Poly::zero(&r)]]];
        p
    }
}
