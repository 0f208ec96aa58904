//! Poisson structures on polynomial rings.
//!
//! A structure is stored as its values on generator pairs `i < j`; the
//! bracket of arbitrary polynomials is the unique biderivation extension
//! `{f, g} = Σ_{i<j} (∂_i f ∂_j g − ∂_j f ∂_i g) {x_i, x_j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::poly::{same_ring, Derivation, Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure<K> {
    ring: Arc<PolyRing>,
    table: BTreeMap<(usize, usize), Poly<K>>,
}

impl<K: Scalar> PoissonStructure<K> {
    /// The zero bracket.
    pub fn trivial(ring: &Arc<PolyRing>) -> Self {
        PoissonStructure {
            ring: ring.clone(),
            table: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Sets `{g_i, g_j} = value` (and hence `{g_j, g_i} = -value`).
    pub fn set(&mut self, i: usize, j: usize, value: Poly<K>) -> Result<()> {
        same_ring(&self.ring, value.ring())?;
        if i == j {
            if value.is_zero() {
                return Ok(());
            }
            return Err(crate::error::Error::ConstraintViolation(format!(
                "{{{0}, {0}}} must be zero",
                self.ring.name(i)
            )));
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    /// `{g_i, g_j}`.
    pub fn get(&self, i: usize, j: usize) -> Poly<K> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Poly::zero(&self.ring),
            Less => self.table.get(&(i, j)).cloned().unwrap_or_else(|| Poly::zero(&self.ring)),
            Greater => self.table.get(&(j, i)).map(|p| -p).unwrap_or_else(|| Poly::zero(&self.ring)),
        }
    }

    /// Nonzero table entries `(i, j, {g_i, g_j})` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly<K>)> {
        self.table.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.is_empty()
    }

    pub fn bracket(&self, f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.ring, f.ring())?;
        same_ring(&self.ring, g.ring())?;
        let n = self.ring.len();
        let df: Vec<_> = (0..n).map(|i| f.partial(i)).collect();
        let dg: Vec<_> = (0..n).map(|i| g.partial(i)).collect();
        let mut out = Poly::zero(&self.ring);
        for (&(i, j), v) in &self.table {
            let w = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !w.is_zero() {
                out = &out + &(&w * v);
            }
        }
        Ok(out)
    }

    /// The hamiltonian derivation `{a, -}`.
    pub fn hamiltonian(&self, a: &Poly<K>) -> Result<Derivation<K>> {
        let images = (0..self.ring.len())
            .map(|j| self.bracket(a, &Poly::var(&self.ring, j)))
            .collect::<Result<Vec<_>>>()?;
        Derivation::from_images(&self.ring, images)
    }

    /// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
    pub fn jacobiator(&self, f: &Poly<K>, g: &Poly<K>, h: &Poly<K>) -> Result<Poly<K>> {
        let a = self.bracket(&self.bracket(f, g)?, h)?;
        let b = self.bracket(&self.bracket(g, h)?, f)?;
        let c = self.bracket(&self.bracket(h, f)?, g)?;
        Ok(&(&a + &b) + &c)
    }

    /// Decides the Jacobi identity on generator triples `i < j < k`. The
    /// jacobiator of a skew biderivation is a derivation in each slot, so the
    /// generator triples decide it on the whole ring.
    pub fn jacobi_check(&self) -> JacobiReport<K> {
        let n = self.ring.len();
        let var = |i| Poly::var(&self.ring, i);
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r = self
                        .jacobiator(&var(i), &var(j), &var(k))
                        .expect("same ring");
                    if !r.is_zero() {
                        failures.push(JacobiFailure {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        JacobiReport {
            ring: self.ring.clone(),
            failures,
        }
    }

    /// Restricts to a sub-ring spanned by the first generators.
    pub fn restrict_prefix(&self, sub: &Arc<PolyRing>) -> Option<PoissonStructure<K>> {
        let n = sub.len();
        let mut out = PoissonStructure::trivial(sub);
        for (&(i, j), v) in &self.table {
            if j >= n {
                continue;
            }
            let parts = v.split_trailing(sub);
            if parts.len() > 1 || parts.keys().any(|k| k.iter().any(|&e| e > 0)) {
                return None;
            }
            let p = parts.into_values().next().unwrap_or_else(|| Poly::zero(sub));
            out.set(i, j, p).ok()?;
        }
        Some(out)
    }
}

impl<K: Scalar> fmt::Display for PoissonStructure<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(i, j), v) in &self.table {
            writeln!(f, "{{{}, {}}} = {}", self.ring.name(i), self.ring.name(j), v)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure<K> {
    pub triple: (usize, usize, usize),
    pub residual: Poly<K>,
}

/// Result of [`PoissonStructure::jacobi_check`], failures sorted by triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport<K> {
    ring: Arc<PolyRing>,
    pub failures: Vec<JacobiFailure<K>>,
}

impl<K: Scalar> JacobiReport<K> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<K: Scalar> fmt::Display for JacobiReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "Jacobi identity holds on all generator triples");
        }
        for fail in &self.failures {
            let (i, j, k) = fail.triple;
            writeln!(
                f,
                "J({}, {}, {}) = {}",
                self.ring.name(i),
                self.ring.name(j),
                self.ring.name(k),
                fail.residual
            )?;
        }
        Ok(())
    }
}
