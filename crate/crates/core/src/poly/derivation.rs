use std::sync::Arc;

use super::{same_ring, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A derivation of a polynomial ring, determined by the images of the
/// generators and extended to all polynomials by linearity and the Leibniz
/// rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<K> {
    ring: Arc<PolyRing>,
    images: Vec<Poly<K>>,
}

impl<K: Scalar> Derivation<K> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Poly::zero(ring); ring.len()],
        }
    }

    pub fn from_images(ring: &Arc<PolyRing>, images: Vec<Poly<K>>) -> Result<Self> {
        if images.len() != ring.len() {
            return Err(Error::ConstraintViolation(format!(
                "derivation needs {} generator images, got {}",
                ring.len(),
                images.len()
            )));
        }
        for img in &images {
            same_ring(ring, img.ring())?;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    /// The partial derivative with respect to generator `i`.
    pub fn partial(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut d = Self::zero(ring);
        d.images[i] = Poly::one(ring);
        d
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn image(&self, i: usize) -> &Poly<K> {
        &self.images[i]
    }

    pub fn images(&self) -> &[Poly<K>] {
        &self.images
    }

    pub fn set_image(&mut self, i: usize, img: Poly<K>) -> Result<()> {
        same_ring(&self.ring, img.ring())?;
        self.images[i] = img;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// `d(f) = Σ_i ∂f/∂x_i · d(x_i)`.
    pub fn apply(&self, f: &Poly<K>) -> Result<Poly<K>> {
        same_ring(&self.ring, f.ring())?;
        let mut out = Poly::zero(&self.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let p = f.partial(i);
            if !p.is_zero() {
                out = &out + &(&p * img);
            }
        }
        Ok(out)
    }

    /// The commutator `[self, other] = self∘other − other∘self`, again a
    /// derivation.
    pub fn commutator(&self, other: &Derivation<K>) -> Result<Derivation<K>> {
        same_ring(&self.ring, &other.ring)?;
        let images = (0..self.ring.len())
            .map(|i| Ok(&self.apply(&other.images[i])? - &other.apply(&self.images[i])?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            ring: self.ring.clone(),
            images,
        })
    }

    pub fn checked_add(&self, other: &Derivation<K>) -> Result<Derivation<K>> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Derivation<K>) -> Result<Derivation<K>> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn scale(&self, c: &K) -> Derivation<K> {
        self.map(|p| p.scale(c))
    }

    /// The derivation `g ↦ f·self(g)`.
    pub fn left_mul(&self, f: &Poly<K>) -> Result<Derivation<K>> {
        same_ring(&self.ring, f.ring())?;
        Ok(self.map(|p| f * p))
    }

    /// Extends to a larger ring whose first generators are those of
    /// `self.ring()`, sending the new generators to zero.
    pub fn extend_by_zero(&self, target: &Arc<PolyRing>) -> Derivation<K> {
        let mut images: Vec<Poly<K>> = self.images.iter().map(|p| p.embed_prefix(target)).collect();
        images.resize(target.len(), Poly::zero(target));
        Derivation {
            ring: target.clone(),
            images,
        }
    }

    fn map(&self, f: impl Fn(&Poly<K>) -> Poly<K>) -> Derivation<K> {
        Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Derivation<K>, f: impl Fn(&Poly<K>, &Poly<K>) -> Poly<K>) -> Derivation<K> {
        Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().zip(&other.images).map(|(a, b)| f(a, b)).collect(),
        }
    }
}
