#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use dpx_core::poly::{Derivation, Monomial, Poly, PolyRing};
use dpx_core::scalar::int;
use dpx_core::{DEData, Document, PoissonStructure, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS: [&str; 9] = [
    "tensor", "skewsym", "om2", "dim3_family", "nonit_family", "nonit_lambda2", "t_family", "t1", "bh_family",
];

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/examples").join(format!("{name}.dpx"))
}

pub fn load(name: &str) -> Document {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    Document::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    int(rng.gen_range(-3..=3))
}

/// A random polynomial of total degree at most `max_deg` with up to four terms.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, max_deg: u32) -> Poly<Rational> {
    let n = ring.len();
    let terms = (0..rng.gen_range(1..=4)).map(|_| {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..n)] += 1;
        }
        (Monomial::from_exponents(e), small(rng))
    });
    Poly::from_terms(ring, terms.collect::<Vec<_>>())
}

/// Zero with probability one half, otherwise a value in -2..=2.
fn sparse(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.5) {
        int(0)
    } else {
        int(rng.gen_range(-2..=2))
    }
}

/// Graded DE-data over `k[x]`: every bracket of `x, y1, y2` is homogeneous
/// quadratic, as for a degree-one double extension.
pub fn random_graded_dedata(rng: &mut ChaCha8Rng) -> DEData<Rational> {
    let r = PolyRing::new(&["x"]).unwrap();
    let x = Poly::var(&r, 0);
    let mut d = DEData::zero(PoissonStructure::trivial(&r), ["y1", "y2"]);
    d.q11 = sparse(rng);
    d.q12 = sparse(rng);
    d.w = [x.scale(&sparse(rng)), x.scale(&sparse(rng)), x.pow(2).scale(&sparse(rng))];
    let mut der = |deg: u32| Derivation::from_images(&r, vec![x.pow(deg).scale(&sparse(rng))]).unwrap();
    d.alpha = [[der(1), der(1)], [der(1), der(1)]];
    d.nu = [der(2), der(2)];
    d
}

pub fn random_word(rng: &mut ChaCha8Rng, symbols: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..symbols)).collect()
}
