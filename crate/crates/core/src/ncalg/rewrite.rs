use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::{monomial_word, NCPresentation};
use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Poly, PolyRing};
use crate::scalar::{RatFunc, Rational, Scalar};

/// Rewriting steps allowed for a single reduction.
pub const STEP_LIMIT: usize = 200_000;

pub(crate) type Word = Vec<usize>;
pub(crate) type Rules<K> = BTreeMap<(usize, usize), Vec<(Word, K)>>;

/// An element in normal form: `Σ r_ij y1^i y2^j` with coefficients `r_ij`
/// of `R` written on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCElement<K> {
    ext: Arc<PolyRing>,
    terms: BTreeMap<(u32, u32), Poly<K>>,
}

impl<K: Scalar> NCElement<K> {
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Poly<K>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `y1^i y2^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Option<&Poly<K>> {
        self.terms.get(&(i, j))
    }

    /// The same element read in the commutative ring `R[y1, y2]`.
    pub fn to_commutative(&self) -> Poly<K> {
        let mut out = Poly::zero(&self.ext);
        let n = self.ext.len() - 2;
        for (&(i, j), p) in &self.terms {
            for (m, c) in p.terms() {
                let mut e = m.exponents().to_vec();
                e.extend([i, j]);
                out.add_term(Monomial::from_exponents(e), c.clone());
            }
        }
        debug_assert!(out.ring().len() == n + 2);
        out
    }

    pub(crate) fn from_normal_words(ext: &Arc<PolyRing>, words: BTreeMap<Word, K>) -> Self {
        let n = ext.len() - 2;
        let base = PolyRing::new(&ext.names()[..n]).expect("prefix of a valid ring");
        let mut terms: BTreeMap<(u32, u32), Poly<K>> = BTreeMap::new();
        for (w, c) in words {
            let mut e = vec![0u32; n + 2];
            for s in w {
                e[s] += 1;
            }
            let key = (e[n], e[n + 1]);
            e.truncate(n);
            terms
                .entry(key)
                .or_insert_with(|| Poly::zero(&base))
                .add_term(Monomial::from_exponents(e), c);
        }
        terms.retain(|_, p| !p.is_zero());
        NCElement { ext: ext.clone(), terms }
    }

    pub(crate) fn to_words(&self) -> Vec<(Word, K)> {
        let n = self.ext.len() - 2;
        let mut out = Vec::new();
        for (&(i, j), p) in &self.terms {
            for (m, c) in p.terms() {
                let mut w = monomial_word(m);
                w.extend(std::iter::repeat(n).take(i as usize));
                w.extend(std::iter::repeat(n + 1).take(j as usize));
                out.push((w, c.clone()));
            }
        }
        out
    }

    fn check_presentation(&self, p: &NCPresentation<K>) -> Result<()> {
        same_ring(p.ext_ring(), &self.ext)
    }
}

impl<K: Scalar> fmt::Display for NCElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_commutative())
    }
}

fn is_normal(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

fn add_to<K: Scalar>(map: &mut BTreeMap<Word, K>, w: Word, c: K) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().clone() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Applies the rule at position `k` (which must be an inversion).
pub(crate) fn rewrite_at<K: Scalar>(rules: &Rules<K>, w: &[usize], k: usize, c: &K) -> Vec<(Word, K)> {
    let rhs = &rules[&(w[k], w[k + 1])];
    rhs.iter()
        .map(|(r, rc)| {
            let mut out = Vec::with_capacity(w.len() + r.len());
            out.extend_from_slice(&w[..k]);
            out.extend_from_slice(r);
            out.extend_from_slice(&w[k + 2..]);
            (out, c.clone() * rc.clone())
        })
        .collect()
}

/// Reduces a linear combination of words, always rewriting the leftmost
/// inversion of the largest pending word.
pub(crate) fn reduce<K: Scalar>(rules: &Rules<K>, input: impl IntoIterator<Item = (Word, K)>) -> Result<BTreeMap<Word, K>> {
    let mut done = BTreeMap::new();
    let mut pending: BTreeMap<(usize, Word), K> = BTreeMap::new();
    let push = |done: &mut BTreeMap<Word, K>, pending: &mut BTreeMap<(usize, Word), K>, w: Word, c: K| {
        if is_normal(&w) {
            add_to(done, w, c);
        } else {
            use std::collections::btree_map::Entry;
            match pending.entry((w.len(), w)) {
                Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
                Entry::Occupied(mut e) => {
                    let s = e.get().clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
    };
    for (w, c) in input {
        push(&mut done, &mut pending, w, c);
    }
    let mut steps = 0;
    while let Some(((_, w), c)) = pending.pop_last() {
        steps += 1;
        if steps > STEP_LIMIT {
            return Err(Error::ReductionLimit(STEP_LIMIT));
        }
        let k = w.windows(2).position(|p| p[0] > p[1]).expect("pending words are reducible");
        for (nw, nc) in rewrite_at(rules, &w, k, &c) {
            push(&mut done, &mut pending, nw, nc);
        }
    }
    Ok(done)
}

/// Rewrites a word to the basis `{r y1^i y2^j}`.
pub fn normal_form<K: Scalar>(p: &NCPresentation<K>, word: &[usize]) -> Result<NCElement<K>> {
    if let Some(&s) = word.iter().find(|&&s| s >= p.symbol_count()) {
        return Err(Error::UnknownSymbol(format!("#{s}")));
    }
    let done = reduce(&p.rules(), [(word.to_vec(), K::one())])?;
    Ok(NCElement::from_normal_words(p.ext_ring(), done))
}

/// The product `a b` in the algebra.
pub fn nc_multiply<K: Scalar>(p: &NCPresentation<K>, a: &NCElement<K>, b: &NCElement<K>) -> Result<NCElement<K>> {
    a.check_presentation(p)?;
    b.check_presentation(p)?;
    let (wa, wb) = (a.to_words(), b.to_words());
    let mut input = Vec::with_capacity(wa.len() * wb.len());
    for (u, cu) in &wa {
        for (v, cv) in &wb {
            let mut w = u.clone();
            w.extend_from_slice(v);
            input.push((w, cu.clone() * cv.clone()));
        }
    }
    let done = reduce(&p.rules(), input)?;
    Ok(NCElement::from_normal_words(p.ext_ring(), done))
}

/// `{ū, v̄} = ((uv − vu) / (t − 1))|_{t=1}`, read in the commutative ring
/// `k[x, y1, y2]`.
pub fn commutator_limit_bracket(p: &NCPresentation<RatFunc>, u: &[usize], v: &[usize]) -> Result<Poly<Rational>> {
    let rules = p.rules();
    let mut input = Vec::new();
    let mut uv = u.to_vec();
    uv.extend_from_slice(v);
    let mut vu = v.to_vec();
    vu.extend_from_slice(u);
    input.push((uv, RatFunc::one()));
    input.push((vu, -RatFunc::one()));
    let done = reduce(&rules, input)?;
    let diff = NCElement::from_normal_words(p.ext_ring(), done).to_commutative();
    let ring = p.ext_ring();
    let mut out = Poly::zero(ring);
    for (m, c) in diff.terms() {
        let q = c.div_t_minus_1().map_err(|_| {
            Error::NonCommutativeLimit(format!(
                "[{}, {}] has coefficient {} at {}",
                p.word_to_string(u),
                p.word_to_string(v),
                c,
                m.display(ring)
            ))
        })?;
        out.add_term(m.clone(), q.eval(&Rational::one())?);
    }
    Ok(out)
}
