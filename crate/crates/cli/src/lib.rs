//! The `dpx` command set. Each command reads one `.dpx` document, runs the
//! matching library operation and writes either a human-readable report or,
//! with `--report`, `key: value` lines.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use dpx_core::dpe::{verify_basis_change, CriterionWitness, PoissonPolyExtData};
use dpx_core::format::{parse_scalar, Span};
use dpx_core::ncalg::{confluence_check, normal_form};
use dpx_core::poly::PolyRing;
use dpx_core::scalar::lagrange_interpolate;
use dpx_core::{
    build_extension, check_dedata, crosscheck_limit, deform, detect_iterated, normalize_dedata, semiclassical_limit,
    validate_family, Document, IteratedForm, NCPresentation, RatFunc, Rational, Scalar,
};

pub const MAX_LEN_ENV: &str = "DPX_MAX_OVERLAP_LEN";

/// Printed whenever the iterated-extension criterion fails.
pub const CAVEAT: &str = "note: only the given variables were tested; \
other choices of variables may still present the algebra as an iterated extension";

#[derive(Parser, Debug)]
#[command(name = "dpx", version, about = "Double Poisson extensions and double Ore extensions, computed exactly")]
pub struct Cli {
    /// Emit `key: value` lines instead of the human-readable report.
    #[arg(long, global = true)]
    pub report: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the thirteen DE-data conditions and the Jacobi identity of the extension.
    Check { file: PathBuf },
    /// Validate a family and print its semiclassical limit as a [dedata] document.
    Limit { file: PathBuf },
    /// Evaluate a family at t = lambda.
    Deform {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Compare commutator brackets with the limit DE-data brackets.
    Crosscheck {
        file: PathBuf,
        #[arg(long, env = MAX_LEN_ENV, default_value_t = 4)]
        max_len: usize,
    },
    /// Decide whether the extension is iterated in the given variables.
    Detect { file: PathBuf },
    /// Normalize q by a linear change of the extension variables.
    Normalize { file: PathBuf },
    /// Normal form of a word such as `y2*y1*x`.
    Nf {
        file: PathBuf,
        #[arg(long)]
        word: String,
        /// Specialize a family first.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Check that all overlaps up to the given word length resolve.
    Confluence {
        file: PathBuf,
        #[arg(long, env = MAX_LEN_ENV, default_value_t = 4)]
        max_len: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Interpolate through points given as `n1:v1,n2:v2,...`.
    Interp {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Exit code for errors: unreadable input, parse failures, invalid arguments.
pub const EXIT_ERROR: u8 = 2;

struct Out<'a> {
    report: bool,
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn kv(&mut self, key: &str, value: impl Display) -> anyhow::Result<()> {
        if self.report {
            writeln!(self.w, "{key}: {value}")?;
        }
        Ok(())
    }

    fn text(&mut self, s: impl Display) -> anyhow::Result<()> {
        if !self.report {
            write!(self.w, "{s}")?;
        }
        Ok(())
    }

    fn line(&mut self, s: impl Display) -> anyhow::Result<()> {
        self.text(format_args!("{s}\n"))
    }

    fn status(&mut self, s: Status) -> anyhow::Result<Status> {
        self.kv("status", s.word())?;
        Ok(s)
    }
}

pub fn load(path: &Path) -> anyhow::Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Document::parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_rational(text: &str, what: &str) -> anyhow::Result<Rational> {
    let v = parse_scalar(text, false, Span { line: 1, column: 1 }).with_context(|| format!("invalid {what} `{text}`"))?;
    Ok(v.as_rational().expect("t is rejected"))
}

pub fn run(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<Status> {
    let mut out = Out { report: cli.report, w };
    match &cli.command {
        Command::Check { file } => check(&load(file)?, &mut out),
        Command::Limit { file } => limit(&load(file)?, &mut out),
        Command::Deform { file, lambda } => {
            let doc = load(file)?;
            let lambda = parse_rational(lambda, "lambda")?;
            let p = deform(doc.require_family()?, &lambda)?;
            out.kv("lambda", &lambda)?;
            out.kv("relations", p.to_string().trim_end().replace('\n', "; "))?;
            out.text(Document::from_presentation(&p))?;
            out.status(Status::Pass)
        }
        Command::Crosscheck { file, max_len } => {
            let doc = load(file)?;
            let r = crosscheck_limit(doc.require_family()?, *max_len)?;
            out.text(&r)?;
            out.kv("confluence", if r.confluence.resolved() { "resolved" } else { "unresolved" })?;
            out.kv("limit", format_args!("{}/13", r.limit.holding()))?;
            for p in &r.pairs {
                let key = format!("bracket.{}.{}", p.pair.0, p.pair.1);
                if p.agrees() {
                    out.kv(&key, &p.commutator)?;
                } else {
                    out.kv(&key, format_args!("mismatch {} vs {}", p.commutator, p.dedata))?;
                }
            }
            out.status(Status::of(r.passed()))
        }
        Command::Detect { file } => detect(&load(file)?, &mut out),
        Command::Normalize { file } => normalize(&load(file)?, &mut out),
        Command::Nf { file, word, lambda } => {
            let doc = load(file)?;
            match pick_presentation(&doc, lambda.as_deref())? {
                Pres::Rational(p) => nf(&p, word, &mut out),
                Pres::Family(p) => nf(&p, word, &mut out),
            }
        }
        Command::Confluence { file, max_len, lambda } => {
            let doc = load(file)?;
            match pick_presentation(&doc, lambda.as_deref())? {
                Pres::Rational(p) => confluence(&p, *max_len, &mut out),
                Pres::Family(p) => confluence(&p, *max_len, &mut out),
            }
        }
        Command::Interp { points } => {
            let mut pts = Vec::new();
            for part in points.split(',') {
                let Some((a, v)) = part.split_once(':') else {
                    bail!("expected `node:value`, found `{}`", part.trim());
                };
                pts.push((parse_rational(a.trim(), "node")?, parse_rational(v.trim(), "value")?));
            }
            let f = lagrange_interpolate(&pts)?;
            out.kv("interpolant", &f)?;
            out.line(&f)?;
            out.status(Status::Pass)
        }
    }
}

enum Pres {
    Rational(NCPresentation<Rational>),
    Family(NCPresentation<RatFunc>),
}

/// The document's presentation, or its family over `ℚ(t)`, or the family
/// specialized at `lambda`.
fn pick_presentation(doc: &Document, lambda: Option<&str>) -> anyhow::Result<Pres> {
    Ok(match (&doc.presentation, &doc.family, lambda) {
        (Some(p), _, None) => Pres::Rational(p.clone()),
        (_, Some(fam), Some(l)) => Pres::Rational(deform(fam, &parse_rational(l, "lambda")?)?),
        (_, Some(fam), None) => Pres::Family(fam.presentation.clone()),
        (Some(_), None, Some(_)) => bail!("--lambda needs a [family] section"),
        (None, None, _) => bail!("missing [presentation] or [family] section"),
    })
}

fn nf<K: Scalar>(p: &NCPresentation<K>, word: &str, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let nf = normal_form(p, &p.parse_word(word)?)?;
    out.kv("word", word)?;
    out.kv("normal_form", &nf)?;
    out.line(&nf)?;
    out.status(Status::Pass)
}

fn confluence<K: Scalar>(p: &NCPresentation<K>, max_len: usize, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let r = confluence_check(p, max_len)?;
    out.text(&r)?;
    out.kv("max_len", r.max_len)?;
    out.kv("words_checked", r.words_checked)?;
    out.kv("unresolved", r.unresolved.len())?;
    for u in &r.unresolved {
        out.kv("overlap", p.word_to_string(&u.word))?;
    }
    out.status(Status::of(r.resolved()))
}

fn check(doc: &Document, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let d = doc.require_dedata()?;
    let report = check_dedata(d)?;
    out.text(&report)?;
    out.kv("conditions_hold", format_args!("{}/13", report.holding()))?;
    let failed: Vec<String> = report.failed_conditions().iter().map(u8::to_string).collect();
    out.kv("failed_conditions", if failed.is_empty() { "none".into() } else { failed.join(",") })?;
    out.kv("base_jacobi", Status::of(report.base_jacobi.passed()).word())?;

    // The extension bracket is printed either way; for rejected data its
    // Jacobi failures show what goes wrong.
    let ps = match build_extension(d) {
        Ok(ext) => ext.structure().clone(),
        Err(_) => d.extension_structure()?,
    };
    let jacobi = ps.jacobi_check();
    out.line("extension bracket:")?;
    out.text(indent(&ps.to_string()))?;
    for (i, j, v) in ps.entries() {
        out.kv(&format!("bracket.{}.{}", ps.ring().name(i), ps.ring().name(j)), v)?;
    }
    if jacobi.passed() {
        out.line("Jacobi identity holds on all generator triples")?;
    } else {
        out.line("Jacobi identity fails:")?;
        out.text(indent(&jacobi.to_string()))?;
    }
    out.kv("extension_jacobi", Status::of(jacobi.passed()).word())?;
    out.status(Status::of(report.passed() && jacobi.passed()))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn limit(doc: &Document, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let fam = doc.require_family()?;
    let v = validate_family(fam);
    if !v.passed() {
        out.text(&v)?;
        for issue in &v.issues {
            out.kv("issue", issue)?;
        }
        return out.status(Status::Fail);
    }
    let lim = semiclassical_limit(fam)?;
    for l in lim.report.to_string().lines() {
        out.line(format_args!("# {l}"))?;
    }
    out.text(Document::from_dedata(&lim.dedata))?;
    let d = &lim.dedata;
    out.kv("q", format_args!("{}, {}", d.q11, d.q12))?;
    out.kv("w", format_args!("{}, {}, {}", d.w[0], d.w[1], d.w[2]))?;
    out.kv("conditions_hold", format_args!("{}/13", lim.report.holding()))?;
    out.status(Status::of(lim.report.passed()))
}

fn witness(ring: &PolyRing, w: &CriterionWitness<Rational>) -> String {
    let mut parts = vec![format!("α12({})={}", ring.name(w.alpha12.0), w.alpha12.1)];
    if let Some((g, v)) = &w.alpha21 {
        parts.push(format!("α21({})={}", ring.name(*g), v));
    }
    if let Some(q) = &w.q11 {
        parts.push(format!("q11={q}"));
    }
    parts.join(", ")
}

fn show_ext(out: &mut Out<'_>, label: &str, e: &PoissonPolyExtData<Rational>) -> anyhow::Result<()> {
    out.line(format_args!("{label}:"))?;
    out.text(indent(&e.to_string()))
}

fn detect(doc: &Document, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let d = doc.require_dedata()?;
    let [v1, v2] = &d.vars;
    match detect_iterated(d)? {
        IteratedForm::Form1 { first, second } => {
            out.line(format_args!("iterated: R[{v1}; α11, ν1]_p[{v2}; β, μ]_p"))?;
            out.kv("form", 1)?;
            show_ext(out, "first", &first)?;
            show_ext(out, "second", &second)?;
            let y = second.beta.ring().len() - 1;
            out.kv("beta", second.beta.image(y))?;
            out.kv("mu", second.nu.image(y))?;
        }
        IteratedForm::Form2 { first, second } => {
            out.line(format_args!("iterated: R[{v2}; α22, ν2]_p[{v1}; β, μ]_p"))?;
            out.kv("form", 2)?;
            show_ext(out, "first", &first)?;
            show_ext(out, "second", &second)?;
            let y = second.beta.ring().len() - 1;
            out.kv("beta", second.beta.image(y))?;
            out.kv("mu", second.nu.image(y))?;
        }
        IteratedForm::CriterionFails(w) => {
            let text = witness(d.ring(), &w);
            out.line(format_args!("criterion fails: {text}"))?;
            out.line(CAVEAT)?;
            out.kv("form", "none")?;
            out.kv("witness", text)?;
        }
    }
    out.status(Status::Pass)
}

fn normalize(doc: &Document, out: &mut Out<'_>) -> anyhow::Result<Status> {
    let d = doc.require_dedata()?;
    let (n, m) = normalize_dedata(d)?;
    let mismatches = verify_basis_change(d, &n, &m)?;
    let [v1, v2] = &d.vars;
    let combo = |row: &[Rational; 2]| {
        let ring = PolyRing::new(&[v1.as_str(), v2.as_str()]).expect("distinct variables");
        let p = &dpx_core::Poly::var(&ring, 0).scale(&row[0]) + &dpx_core::Poly::var(&ring, 1).scale(&row[1]);
        p.to_string()
    };
    let (z1, z2) = (combo(&m[0]), combo(&m[1]));
    out.line(format_args!("basis change: {v1}' = {z1}, {v2}' = {z2}"))?;
    out.kv("z1", &z1)?;
    out.kv("z2", &z2)?;
    out.kv("q", format_args!("{}, {}", n.q11, n.q12))?;
    out.kv("w", format_args!("{}, {}, {}", n.w[0], n.w[1], n.w[2]))?;
    for mm in &mismatches {
        out.line(format_args!("{} mismatch: {} vs {}", mm.pair, mm.computed, mm.expected))?;
        out.kv("mismatch", &mm.pair)?;
    }
    out.text(Document::from_dedata(&n))?;
    out.status(Status::of(mismatches.is_empty()))
}

#[cfg(test)]
mod tests {
    use clap::Parser;

    use super::*;

    fn exec(args: &[&str]) -> (anyhow::Result<Status>, String) {
        let cli = Cli::try_parse_from(std::iter::once("dpx").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn interp_plain_and_report() {
        let (r, out) = exec(&["interp", "--points", "1:0, 2:5"]);
        assert_eq!(r.unwrap(), Status::Pass);
        assert_eq!(out.trim(), "5*t - 5");
        let (_, out) = exec(&["--report", "interp", "--points", "0:1,1:2,2:5"]);
        assert!(out.contains("interpolant: t^2 + 1"), "{out}");
        assert!(out.contains("status: pass"), "{out}");
    }

    #[test]
    fn interp_rejects_malformed_points() {
        assert!(exec(&["interp", "--points", "1:0,2"]).0.is_err());
        assert!(exec(&["interp", "--points", "1:0,t:1"]).0.is_err());
    }

    #[test]
    fn missing_file_is_an_error() {
        let err = exec(&["check", "/nonexistent.dpx"]).0.unwrap_err();
        assert!(format!("{err:#}").contains("cannot read"));
    }
}
