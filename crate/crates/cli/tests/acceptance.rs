//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_RED` cannot hold for the corpus data (the
//! reasons are printed with the FAIL line). The process fails when any other
//! criterion fails, or when an expected-red criterion starts passing.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpx_core::dpe::{from_iterated, verify_basis_change, PoissonPolyExtData};
use dpx_core::format::{parse_rational_poly, Span};
use dpx_core::ncalg::nc_multiply;
use dpx_core::poly::Monomial;
use dpx_core::scalar::int;
use dpx_core::scl::{build_family_from_target, derivative_bridge, Profile};
use dpx_core::{
    build_extension, check_dedata, confluence_check, crosscheck_limit, deform, detect_iterated, normal_form,
    normalize_dedata, semiclassical_limit, DEData, Derivation, Document, IteratedForm, NCPresentation, ParamFamily,
    PoissonStructure, Poly, PolyRing, RatFunc, Rational, Scalar,
};

const EXPECTED_RED: [u8; 2] = [3, 9];

fn load(name: &str) -> Result<Document> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.dpx"));
    Ok(Document::parse(&std::fs::read_to_string(&path)?)?)
}

fn family(name: &str) -> Result<ParamFamily> {
    Ok(load(name)?.require_family()?.clone())
}

fn expr(ring: &Arc<PolyRing>, text: &str) -> Result<Poly<Rational>> {
    Ok(parse_rational_poly(text, ring, Span { line: 1, column: 1 })?)
}

fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Poly<Rational>> {
    let i = ring.index_of(name).ok_or_else(|| anyhow!("no generator {name}"))?;
    Ok(Poly::var(ring, i))
}

fn q(n: i64) -> Rational {
    int(n)
}

/// Checks each `{u, v}` against its expected expression.
fn expect_brackets(ps: &PoissonStructure<Rational>, table: &[(&str, &str, &str)]) -> Result<()> {
    let r = ps.ring().clone();
    for (u, v, want) in table {
        let got = ps.bracket(&var(&r, u)?, &var(&r, v)?)?;
        ensure!(got == expr(&r, want)?, "{{{u}, {v}}} = {got}, expected {want}");
    }
    Ok(())
}

fn c1() -> Result<String> {
    let d = load("t1")?.require_dedata()?.clone();
    let report = check_dedata(&d)?;
    ensure!(report.passed() && report.holding() == 13, "{report}");
    let ext = build_extension(&d)?;
    ensure!(ext.structure().jacobi_check().passed(), "Jacobi fails");
    expect_brackets(
        ext.structure(),
        &[("y", "x", "-x*y + 2*z"), ("x", "z", "-z*x + 2*y"), ("y", "z", "z*y - 2*x")],
    )?;
    Ok("13/13, Jacobi holds, three brackets reproduced".into())
}

fn c2() -> Result<String> {
    let r = crosscheck_limit(&family("t_family")?, 4)?;
    ensure!(r.passed(), "{r}");
    let yx = r.pair("y", "x").ok_or_else(|| anyhow!("pair y, x missing"))?;
    let ring = yx.commutator.ring().clone();
    ensure!(yx.commutator == expr(&ring, "-x*y + 2*z")?, "{{y, x}} = {}", yx.commutator);
    Ok(format!("{} pairs agree, {{y, x}} = -x*y + 2*z on both routes", r.pairs.len()))
}

fn c3() -> Result<String> {
    let r = crosscheck_limit(&family("nonit_family")?, 4)?;
    let ring = r.pairs[0].commutator.ring().clone();
    let mut notes = Vec::new();
    for (u, v, want) in [("y2", "y1", "-2*y1*y2 + x^2"), ("y1", "x", "-x*y1 + x*y2"), ("y2", "x", "x*y1 - x*y2")] {
        let p = r.pair(u, v).ok_or_else(|| anyhow!("pair {u}, {v} missing"))?;
        let w = expr(&ring, want)?;
        if p.commutator != w || p.dedata != w {
            notes.push(format!("{{{u}, {v}}} differs from the printed value"));
        }
    }
    if notes.is_empty() {
        notes.push("both routes reproduce the printed limit brackets".into());
    }
    if !r.confluence.resolved() {
        notes.push(format!(
            "family not confluent ({} of {} overlap words unresolved, first {})",
            r.confluence.unresolved.len(),
            r.confluence.words_checked,
            family("nonit_family")?.presentation.word_to_string(&r.confluence.unresolved[0].word)
        ));
    }
    if !r.limit.passed() {
        let failed: Vec<String> = r.limit.failed_conditions().iter().map(u8::to_string).collect();
        notes.push(format!("limit data is not Poisson (conditions {} fail)", failed.join(", ")));
    }
    ensure!(r.passed(), "{}", notes.join("; "));
    Ok(notes.join("; "))
}

fn dim3_target(mu: &[i64; 11]) -> Result<NCPresentation<Rational>> {
    let r = PolyRing::new(&["x"])?;
    let x = Poly::<Rational>::var(&r, 0);
    let lin = |m: i64| x.scale(&q(m));
    let quad = |m: i64| x.pow(2).scale(&q(m));
    let mut p = NCPresentation::commutative(&r, ["y1", "y2"])?;
    p.p11 = q(mu[0]);
    p.p12 = q(mu[1]);
    p.tau = [lin(mu[2]), lin(mu[3]), quad(mu[4])];
    p.sigma = [[vec![lin(mu[5])], vec![lin(mu[6])]], [vec![lin(mu[8])], vec![lin(mu[9])]]];
    p.delta = [vec![quad(mu[7])], vec![quad(mu[10])]];
    Ok(p)
}

fn c4() -> Result<String> {
    let prof = Profile::canonical();
    let nonit = Document::parse(
        "[ring]\ngenerators = x\nvariables = y1, y2\n[presentation]\np12 = -1\ntau = 0, 0, x^2\n\
         sigma11: x -> 0\nsigma12: x -> x\nsigma21: x -> x\nsigma22: x -> 0\n",
    )?;
    let tq = Document::parse(
        "[ring]\ngenerators = z\nvariables = x, y\n[presentation]\np12 = 1/3\ntau = 0, 0, (3 - 1/3)*z\n\
         sigma11: z -> z/3\nsigma12: z -> 1 - 1/3^2\nsigma21: z -> 1/3 - 3\nsigma22: z -> 3*z\n",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mu = [0i64; 11];
    for m in &mut mu {
        *m = rng.gen_range(-2..=2);
    }
    let cases = [
        ("NONIT", nonit.require_presentation()?.clone(), q(2)),
        ("T_3", tq.require_presentation()?.clone(), q(3)),
        ("DIM3", dim3_target(&mu)?, q(2)),
    ];
    for (name, target, lambda) in &cases {
        let fam = build_family_from_target(target, lambda, &prof)?;
        ensure!(&deform(&fam, lambda)? == target, "{name}: round trip differs");
        if *name == "NONIT" {
            // line through (1, 1) and (2, -1)
            let want = RatFunc::t() * RatFunc::from_rational(q(-2)) + RatFunc::from_rational(q(3));
            ensure!(fam.presentation.p12 == want, "NONIT p12 = {}", fam.presentation.p12);
        }
    }
    Ok(format!("NONIT at 2, T_3 at 3, DIM3 mu = {mu:?} at 2"))
}

fn c5() -> Result<String> {
    let mut count = 0;
    for name in ["t_family", "dim3_family", "nonit_family", "bh_family"] {
        for e in derivative_bridge(&family(name)?)? {
            ensure!(e.divided == e.derivative, "{name} {}: {} vs {}", e.slot, e.divided, e.derivative);
            count += 1;
        }
    }
    // the limit DE-data of DIM3 reads off f'(1) directly
    let fam = family("dim3_family")?;
    let lim = semiclassical_limit(&fam)?;
    let one = q(1);
    let der = |f: &RatFunc| f.derivative().eval(&one);
    ensure!(lim.dedata.q12 == der(&fam.presentation.p12)?, "q12");
    let x = Poly::<Rational>::var(lim.dedata.ring(), 0);
    let coeff = |f: &Poly<RatFunc>, m: &Monomial| -> Result<Rational> { Ok(der(&f.coeff(m))?) };
    let mx = Monomial::var(1, 0);
    let s11 = coeff(&fam.presentation.sigma[0][0][0], &mx)?;
    ensure!(lim.dedata.alpha[0][0].image(0) == &x.scale(&s11), "alpha11");
    Ok(format!("{count} coefficients across four families"))
}

fn c6() -> Result<String> {
    let d = load("tensor")?.require_dedata()?.clone();
    let IteratedForm::Form1 { first, second } = detect_iterated(&d)? else {
        return Err(anyhow!("tensor: expected the first iterated form"));
    };
    ensure!(first.beta.is_zero() && first.nu.is_zero(), "first extension should be trivial");
    let mid = second.beta.ring().clone();
    let n = mid.len() - 1;
    let y1 = Poly::var(&mid, n);
    let up = |p: &Poly<Rational>| p.embed_prefix(&mid);
    let beta = &y1.scale(&d.q12) + &up(d.w2());
    let mu = &(&y1.pow(2).scale(&d.q11) + &(&up(d.w1()) * &y1)) + &up(d.w0());
    ensure!(second.beta.image(n) == &beta, "beta(y1) = {}", second.beta.image(n));
    ensure!(second.nu.image(n) == &mu, "mu(y1) = {}", second.nu.image(n));

    let nonit = load("nonit_lambda2")?.require_dedata()?.clone();
    let IteratedForm::CriterionFails(w) = detect_iterated(&nonit)? else {
        return Err(anyhow!("NONIT: criterion should fail"));
    };
    let x = Poly::var(nonit.ring(), 0);
    ensure!(w.alpha12 == (0, x.clone()), "alpha12 witness {:?}", w.alpha12);
    ensure!(w.alpha21 == Some((0, x)), "alpha21 witness {:?}", w.alpha21);
    Ok(format!("beta(y1) = {beta}, mu(y1) = {mu}; NONIT witnesses a12(x) = x, a21(x) = x"))
}

fn c7() -> Result<String> {
    let base = PolyRing::new(&["b", "c"])?;
    let (b, c) = (Poly::<Rational>::var(&base, 0), Poly::<Rational>::var(&base, 1));
    let first = PoissonPolyExtData::new(
        PoissonStructure::trivial(&base),
        "a",
        Derivation::from_images(&base, vec![b.scale(&q(2)), c.scale(&q(2))])?,
        Derivation::zero(&base),
    )?;
    let mid = first.structure()?;
    let m = mid.ring().clone();
    let (mb, mc) = (Poly::var(&m, 0), Poly::var(&m, 1));
    let second = PoissonPolyExtData::new(
        mid,
        "d",
        Derivation::from_images(&m, vec![mb.scale(&q(-2)), mc.scale(&q(-2)), Poly::zero(&m)])?,
        Derivation::from_images(&m, vec![Poly::zero(&m), Poly::zero(&m), (&mb * &mc).scale(&q(-4))])?,
    )?;
    ensure!(first.is_valid()? && second.is_valid()?, "decomposition data is not skew-Poisson");
    let d = from_iterated(&first, &second)?;
    let report = check_dedata(&d)?;
    ensure!(report.passed(), "{report}");
    let ext = build_extension(&d)?;
    expect_brackets(
        ext.structure(),
        &[
            ("b", "c", "0"),
            ("b", "a", "-2*b*a"),
            ("c", "a", "-2*c*a"),
            ("b", "d", "2*b*d"),
            ("c", "d", "2*c*d"),
            ("a", "d", "4*b*c"),
        ],
    )?;
    Ok("13/13, six brackets reproduced".into())
}

fn sparse(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.5) {
        q(0)
    } else {
        q(rng.gen_range(-2..=2))
    }
}

fn random_graded_dedata(rng: &mut ChaCha8Rng) -> Result<DEData<Rational>> {
    let r = PolyRing::new(&["x"])?;
    let x = Poly::var(&r, 0);
    let mut d = DEData::zero(PoissonStructure::trivial(&r), ["y1", "y2"]);
    d.q11 = sparse(rng);
    d.q12 = sparse(rng);
    d.w = [x.scale(&sparse(rng)), x.scale(&sparse(rng)), x.pow(2).scale(&sparse(rng))];
    let mut der = |deg: u32| Derivation::from_images(&r, vec![x.pow(deg).scale(&sparse(rng))]);
    d.alpha = [[der(1)?, der(1)?], [der(1)?, der(1)?]];
    d.nu = [der(2)?, der(2)?];
    Ok(d)
}

fn c8() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut accepted, mut tried) = (0, 0);
    while accepted < 20 {
        tried += 1;
        ensure!(tried < 10_000, "too few passing samples");
        let d = random_graded_dedata(&mut rng)?;
        if !check_dedata(&d)?.passed() {
            continue;
        }
        accepted += 1;
        let (n, m) = normalize_dedata(&d)?;
        ensure!(check_dedata(&n)?.passed(), "normalized data fails:\n{n}");
        let bad = verify_basis_change(&d, &n, &m)?;
        ensure!(bad.is_empty(), "basis change fails on {}", bad[0].pair);
    }

    let r = PolyRing::new(&["x"])?;
    let mut d = DEData::zero(PoissonStructure::trivial(&r), ["y1", "y2"]);
    d.q11 = q(2);
    d.w = [expr(&r, "x")?, expr(&r, "3*x")?, expr(&r, "x^2 - 1")?];
    let (n, _) = normalize_dedata(&d)?;
    ensure!(n.q11 == q(1) && n.q12 == q(0), "q' = {{{}, {}}}", n.q11, n.q12);
    ensure!(
        n.w == [d.w[0].clone(), d.w[1].scale(&q(2)), d.w[2].scale(&q(2))],
        "w' = {{{}, {}, {}}}",
        n.w[0],
        n.w[1],
        n.w[2]
    );
    Ok(format!("20 passing samples of {tried}; q = {{2, 0}} gives q' = {{1, 0}}, w' = {{w1, 2w2, 2w0}}"))
}

/// Fraction of random word triples on which multiplication associates.
fn associative_triples<K: Scalar>(p: &NCPresentation<K>, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.symbol_count();
    let mut ok = 0;
    for _ in 0..100 {
        let mut word = || -> Vec<usize> { (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..n)).collect() };
        let (a, b, c) = (word(), word(), word());
        let (a, b, c) = (normal_form(p, &a)?, normal_form(p, &b)?, normal_form(p, &c)?);
        let left = nc_multiply(p, &nc_multiply(p, &a, &b)?, &c)?;
        let right = nc_multiply(p, &a, &nc_multiply(p, &b, &c)?)?;
        ok += usize::from(left == right);
    }
    Ok(ok)
}

fn confluence_line<K: Scalar>(name: &str, p: &NCPresentation<K>, seed: u64, red: &mut Vec<String>) -> Result<String> {
    let r = confluence_check(p, 4)?;
    let assoc = associative_triples(p, seed)?;
    let line = format!(
        "{name}: {}/{} overlaps resolve, {assoc}/100 triples associate",
        r.words_checked - r.unresolved.len(),
        r.words_checked
    );
    if !r.resolved() || assoc != 100 {
        red.push(line.clone());
    }
    Ok(line)
}

fn c9() -> Result<String> {
    let mut red = Vec::new();
    let mut lines = Vec::new();
    let nonit = family("nonit_family")?;
    lines.push(confluence_line("t_family", &family("t_family")?.presentation, 91, &mut red)?);
    lines.push(confluence_line("nonit_family", &nonit.presentation, 92, &mut red)?);
    lines.push(confluence_line("nonit at 2", &deform(&nonit, &q(2))?, 93, &mut red)?);
    lines.push(confluence_line("dim3_family", &family("dim3_family")?.presentation, 94, &mut red)?);
    lines.push(confluence_line("bh_family", &family("bh_family")?.presentation, 95, &mut red)?);
    ensure!(red.is_empty(), "{}", red.join("; "));
    Ok(lines.join("; "))
}

fn c10() -> Result<String> {
    let mut structures = Vec::new();
    for name in ["t1", "tensor", "skewsym", "om2"] {
        structures.push((name, build_extension(load(name)?.require_dedata()?)?.structure().clone()));
    }
    for name in ["t_family", "dim3_family"] {
        let lim = semiclassical_limit(&family(name)?)?;
        structures.push((name, build_extension(&lim.dedata)?.structure().clone()));
    }
    for (k, (name, ps)) in structures.iter().enumerate() {
        let ring = ps.ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let mut poly = || random_poly(&mut rng, &ring);
        for _ in 0..100 {
            let (f, g, h) = (poly(), poly(), poly());
            let fg = ps.bracket(&f, &g)?;
            ensure!(fg == -ps.bracket(&g, &f)?, "{name}: antisymmetry at {f}, {g}");
            let lhs = ps.bracket(&f, &(&g * &h))?;
            ensure!(lhs == &(&fg * &h) + &(&g * &ps.bracket(&f, &h)?), "{name}: Leibniz at {f}, {g}, {h}");
        }
        ensure!(ps.jacobi_check().passed(), "{name}: generator Jacobi fails");
        for _ in 0..50 {
            let (f, g, h) = (poly(), poly(), poly());
            let j = ps.jacobiator(&f, &g, &h)?;
            ensure!(j.is_zero(), "{name}: J({f}, {g}, {h}) = {j}");
        }
    }

    let mut d = load("t1")?.require_dedata()?.clone();
    let z = Poly::var(d.ring(), 0);
    d.alpha[1][1] = Derivation::from_images(d.ring(), vec![z.scale(&q(2))])?;
    let failed: Vec<u8> = check_dedata(&d)?.failed_conditions().into_iter().collect();
    ensure!(failed == [10, 13], "mutated T_1 fails {failed:?}");
    Ok(format!("{} structures; mutated T_1 fails exactly {{10, 13}}", structures.len()))
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>) -> Poly<Rational> {
    let n = ring.len();
    let terms: Vec<_> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=3) {
                e[rng.gen_range(0..n)] += 1;
            }
            (Monomial::from_exponents(e), q(rng.gen_range(-3..=3)))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

fn main() {
    let criteria: [(u8, &str, fn() -> Result<String>); 10] = [
        (1, "T_1 verification", c1),
        (2, "commuting square, T_t", c2),
        (3, "commuting square, NONIT", c3),
        (4, "deformation round trip", c4),
        (5, "derivative bridge", c5),
        (6, "iterated-extension criteria", c6),
        (7, "O(M2) round trip", c7),
        (8, "normalization soundness", c8),
        (9, "confluence at desk scale", c9),
        (10, "property suites", c10),
    ];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let red = EXPECTED_RED.contains(&n);
        match run() {
            Ok(detail) => {
                println!("PASS {n:>2} {title}: {detail}");
                if red {
                    unexpected.push(format!("criterion {n} passes but is listed as expected red"));
                }
            }
            Err(e) => {
                let tag = if red { " (expected)" } else { "" };
                println!("FAIL {n:>2} {title}{tag}: {e:#}");
                if !red {
                    unexpected.push(format!("criterion {n} fails"));
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
