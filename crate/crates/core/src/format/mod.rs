//! The `.dpx` document format.
//!
//! ```text
//! # comment
//! [ring]
//! generators = z
//! variables = x, y
//!
//! [bracket]            # base Poisson bracket, "g, h -> {g, h}"
//! [dedata]             # q = .., ..; w = .., .., ..; alpha11: z -> ..; nu1: z -> ..
//! [presentation]       # p11 = ..; p12 = ..; tau = .., .., ..; sigma11: z -> ..;
//!                      # delta1: z -> ..; baserel: x2 x1 -> ..
//! [family]             # as [presentation] over Q(t), plus lambdas = .. and
//!                      # profile: slot -> value
//! ```
//!
//! Missing `[dedata]` lines are zero. Missing `[presentation]` and `[family]`
//! lines take their value in the commutative presentation (`p12 = 1`,
//! `σ = I`).

mod expr;

use std::fmt;
use std::sync::Arc;

pub use expr::{parse_expr, parse_rational_poly, parse_scalar, Span};

use crate::dpe::DEData;
use crate::error::{Error, Result};
use crate::ncalg::{CoeffSlot, NCPresentation};
use crate::pbracket::PoissonStructure;
use crate::poly::{Derivation, Monomial, Poly, PolyRing};
use crate::scalar::{RatFunc, Rational, Scalar};
use crate::scl::{ParamFamily, Profile};

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub base: Arc<PolyRing>,
    pub vars: Option<[String; 2]>,
    pub bracket: PoissonStructure<Rational>,
    pub dedata: Option<DEData<Rational>>,
    pub presentation: Option<NCPresentation<Rational>>,
    pub family: Option<ParamFamily>,
    pub profile: Profile,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Ring,
    Bracket,
    Dedata,
    Presentation,
    Family,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Column of `text[0]`.
    col: usize,
}

impl<'a> Line<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.no,
            column: self.col + offset,
            message: message.into(),
        })
    }

    fn span(&self, offset: usize) -> Span {
        Span {
            line: self.no,
            column: self.col + offset,
        }
    }

    /// Splits at the first occurrence of `sep`, returning trimmed parts with
    /// their offsets.
    fn split(&self, sep: &str) -> Option<((usize, &'a str), (usize, &'a str))> {
        let i = self.text.find(sep)?;
        Some((trimmed(self.text, 0, i), trimmed(self.text, i + sep.len(), self.text.len())))
    }
}

fn trimmed(s: &str, from: usize, to: usize) -> (usize, &str) {
    let part = &s[from..to];
    let lead = part.len() - part.trim_start().len();
    (from + lead, part.trim())
}

/// Comma-separated parts with their offsets relative to `base`.
fn comma_parts(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ','))) {
        if c == ',' {
            let (off, p) = trimmed(s, start, i);
            out.push((base + off, p));
            start = i + 1;
        }
    }
    out
}

#[derive(Default)]
struct PresLines<'a> {
    lines: Vec<(Line<'a>, String, usize, &'a str)>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut section = None;
        let mut base: Option<Arc<PolyRing>> = None;
        let mut vars: Option<[String; 2]> = None;
        let mut bracket_lines = Vec::new();
        let mut dedata_lines = Vec::new();
        let mut pres = PresLines::default();
        let mut fam = PresLines::default();
        let mut seen = Vec::new();

        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let content = raw.split('#').next().unwrap_or("");
            let (off, body) = trimmed(content, 0, content.len());
            if body.is_empty() {
                continue;
            }
            let line = Line {
                no,
                text: body,
                col: off + 1,
            };
            if body.starts_with('[') {
                let name = body.trim_start_matches('[').trim_end_matches(']').trim();
                let s = match name {
                    "ring" => Section::Ring,
                    "bracket" => Section::Bracket,
                    "dedata" => Section::Dedata,
                    "presentation" => Section::Presentation,
                    "family" => Section::Family,
                    _ => return line.err(0, format!("unknown section [{name}]")),
                };
                if !body.ends_with(']') {
                    return line.err(body.len(), "expected `]`");
                }
                if seen.contains(&s) {
                    return line.err(0, format!("duplicate [{name}] section"));
                }
                if s != Section::Ring && base.is_none() {
                    return line.err(0, "the [ring] section must come first");
                }
                seen.push(s);
                section = Some(s);
                continue;
            }
            match section {
                None => return line.err(0, "expected a section header"),
                Some(Section::Ring) => {
                    let Some(((_, key), (voff, value))) = line.split("=") else {
                        return line.err(0, "expected `key = value`");
                    };
                    let names: Vec<&str> = comma_parts(value, voff)
                        .into_iter()
                        .map(|(_, s)| s)
                        .filter(|s| !s.is_empty())
                        .collect();
                    match key {
                        "generators" => {
                            base = Some(PolyRing::new(&names).or_else(|e| line.err(voff, e.to_string()))?);
                        }
                        "variables" => {
                            if names.len() != 2 {
                                return line.err(voff, "expected two variables");
                            }
                            vars = Some([names[0].to_string(), names[1].to_string()]);
                        }
                        _ => return line.err(0, format!("unknown key `{key}`")),
                    }
                }
                Some(Section::Bracket) => bracket_lines.push(line),
                Some(Section::Dedata) => dedata_lines.push(line),
                Some(Section::Presentation) => pres.lines.push(classify(line)?),
                Some(Section::Family) => fam.lines.push(classify(line)?),
            }
        }

        let base = base.ok_or_else(|| Error::MissingSection("ring".into()))?;
        if let Some(v) = &vars {
            base.extended(v)
                .map_err(|e| Error::Parse { line: 0, column: 0, message: e.to_string() })?;
        }
        let needs_vars = seen.iter().any(|s| matches!(s, Section::Dedata | Section::Presentation | Section::Family));
        if needs_vars && vars.is_none() {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: "[ring] must declare `variables = y1, y2`".into(),
            });
        }

        let mut bracket = PoissonStructure::trivial(&base);
        for line in &bracket_lines {
            let Some(((loff, lhs), (roff, rhs))) = line.split("->") else {
                return line.err(0, "expected `g, h -> expr`");
            };
            let gens = comma_parts(lhs, loff);
            if gens.len() != 2 {
                return line.err(loff, "expected two generators");
            }
            let idx = |(off, name): (usize, &str)| base.index_of(name).map_or_else(|| line.err(off, format!("undeclared generator `{name}`")), Ok);
            let (i, j) = (idx(gens[0])?, idx(gens[1])?);
            let v = parse_rational_poly(rhs, &base, line.span(roff))?;
            bracket.set(i, j, v).or_else(|e| line.err(0, e.to_string()))?;
        }

        let vars_ref = vars.as_ref().map(|v| [v[0].as_str(), v[1].as_str()]);
        let dedata = if seen.contains(&Section::Dedata) {
            Some(parse_dedata(&dedata_lines, &bracket, vars_ref.expect("checked"))?)
        } else {
            None
        };
        let presentation = if seen.contains(&Section::Presentation) {
            let (p, extra) = build_presentation(&base, vars_ref.expect("checked"), &pres, false)?;
            if let Some((line, _)) = extra.first() {
                return line.err(0, "`lambdas` and `profile` belong in a [family] section");
            }
            Some(p.map_slots(|_, c| c.as_rational().ok_or_else(|| Error::NotConstant(c.to_string())))?)
        } else {
            None
        };
        let mut profile = Profile::canonical();
        let family = if seen.contains(&Section::Family) {
            let (p, extra) = build_presentation(&base, vars_ref.expect("checked"), &fam, true)?;
            let mut lambdas = Vec::new();
            for (line, kind) in extra {
                match kind {
                    Extra::Lambdas(off, s) => {
                        for (o, part) in comma_parts(s, off) {
                            let v = parse_scalar(part, false, line.span(o))?;
                            lambdas.push(v.as_rational().expect("t is rejected"));
                        }
                    }
                    Extra::Profile(soff, slot, voff, value) => {
                        let s = parse_slot(slot, &base, &line, soff)?;
                        let v = parse_scalar(value, false, line.span(voff))?;
                        profile.set(s, v.as_rational().expect("t is rejected"));
                    }
                }
            }
            Some(ParamFamily::new(p, lambdas))
        } else {
            None
        };

        Ok(Document {
            base,
            vars,
            bracket,
            dedata,
            presentation,
            family,
            profile,
        })
    }

    pub fn require_dedata(&self) -> Result<&DEData<Rational>> {
        self.dedata.as_ref().ok_or_else(|| Error::MissingSection("dedata".into()))
    }

    pub fn require_presentation(&self) -> Result<&NCPresentation<Rational>> {
        self.presentation.as_ref().ok_or_else(|| Error::MissingSection("presentation".into()))
    }

    pub fn require_family(&self) -> Result<&ParamFamily> {
        self.family.as_ref().ok_or_else(|| Error::MissingSection("family".into()))
    }

    /// A document holding only a DE-data (and its ring and bracket).
    pub fn from_dedata(d: &DEData<Rational>) -> Document {
        Document {
            base: d.ring().clone(),
            vars: Some(d.vars.clone()),
            bracket: d.base.clone(),
            dedata: Some(d.clone()),
            presentation: None,
            family: None,
            profile: Profile::canonical(),
        }
    }

    pub fn from_presentation(p: &NCPresentation<Rational>) -> Document {
        let [a, b] = p.vars();
        Document {
            base: p.base().clone(),
            vars: Some([a.to_string(), b.to_string()]),
            bracket: PoissonStructure::trivial(p.base()),
            dedata: None,
            presentation: Some(p.clone()),
            family: None,
            profile: Profile::canonical(),
        }
    }
}

enum Extra<'a> {
    Lambdas(usize, &'a str),
    Profile(usize, &'a str, usize, &'a str),
}

/// Splits a presentation line into (line, key, rhs offset, rhs).
fn classify(line: Line<'_>) -> Result<(Line<'_>, String, usize, &str)> {
    if let Some(((_, k), (voff, v))) = line.split("=") {
        if !k.contains(':') {
            let key = k.to_string();
            return Ok((line, key, voff, v));
        }
    }
    match line.split(":") {
        Some(((_, k), (voff, v))) => {
            let key = k.to_string();
            Ok((line, key, voff, v))
        }
        None => line.err(0, "expected `key = value` or `key: args -> value`"),
    }
}

fn parse_dedata(lines: &[Line<'_>], bracket: &PoissonStructure<Rational>, vars: [&str; 2]) -> Result<DEData<Rational>> {
    let base = bracket.ring().clone();
    let n = base.len();
    let mut d = DEData::zero(bracket.clone(), vars);
    let mut alpha = vec![vec![Poly::zero(&base); n]; 4];
    let mut nu = vec![vec![Poly::zero(&base); n]; 2];
    for line in lines {
        if let Some(((_, key), (voff, value))) = line.split("=").filter(|((_, k), _)| !k.contains(':')) {
            let parts = comma_parts(value, voff);
            let polys = parts
                .iter()
                .map(|&(o, s)| parse_rational_poly(s, &base, line.span(o)))
                .collect::<Result<Vec<_>>>()?;
            match (key, polys.len()) {
                ("q", 2) => {
                    let c = |p: &Poly<Rational>, o| p.as_constant().map_or_else(|| line.err(o, "q entries must be scalars"), Ok);
                    d.q11 = c(&polys[0], parts[0].0)?;
                    d.q12 = c(&polys[1], parts[1].0)?;
                }
                ("w", 3) => d.w = [polys[0].clone(), polys[1].clone(), polys[2].clone()],
                ("q", _) => return line.err(voff, "expected `q = q11, q12`"),
                ("w", _) => return line.err(voff, "expected `w = w1, w2, w0`"),
                _ => return line.err(0, format!("unknown key `{key}`")),
            }
            continue;
        }
        let Some(((_, key), (aoff, rest))) = line.split(":") else {
            return line.err(0, "expected `key = value` or `map: g -> expr`");
        };
        let Some((g, voff, value)) = split_arrow(rest, aoff) else {
            return line.err(aoff, "expected `g -> expr`");
        };
        let gi = base.index_of(g.1).map_or_else(|| line.err(g.0, format!("undeclared generator `{}`", g.1)), Ok)?;
        let v = parse_rational_poly(value, &base, line.span(voff))?;
        let slot = match key {
            "alpha11" => &mut alpha[0][gi],
            "alpha12" => &mut alpha[1][gi],
            "alpha21" => &mut alpha[2][gi],
            "alpha22" => &mut alpha[3][gi],
            "nu1" => &mut nu[0][gi],
            "nu2" => &mut nu[1][gi],
            _ => return line.err(0, format!("unknown map `{key}`")),
        };
        *slot = v;
    }
    let der = |v: Vec<Poly<Rational>>| Derivation::from_images(&base, v);
    let mut a = alpha.into_iter();
    let mut nx = nu.into_iter();
    let mut next = || der(a.next().expect("four maps"));
    d.alpha = [[next()?, next()?], [next()?, next()?]];
    d.nu = [der(nx.next().expect("two"))?, der(nx.next().expect("two"))?];
    Ok(d)
}

/// `"g -> expr"` (offsets relative to the line) into `((off, g), off, expr)`.
fn split_arrow(s: &str, base: usize) -> Option<((usize, &str), usize, &str)> {
    let i = s.find("->")?;
    let (goff, g) = trimmed(s, 0, i);
    let (voff, v) = trimmed(s, i + 2, s.len());
    Some(((base + goff, g), base + voff, v))
}

fn build_presentation<'a>(
    base: &Arc<PolyRing>,
    vars: [&str; 2],
    lines: &'a PresLines<'a>,
    allow_t: bool,
) -> Result<(NCPresentation<RatFunc>, Vec<(&'a Line<'a>, Extra<'a>)>)> {
    let mut p = NCPresentation::<RatFunc>::commutative(base, vars)?;
    let mut extra = Vec::new();
    let gen = |line: &Line<'_>, (off, name): (usize, &str)| {
        base.index_of(name)
            .map_or_else(|| line.err(off, format!("undeclared generator `{name}`")), Ok)
    };
    for (line, key, voff, value) in &lines.lines {
        let poly = |o: usize, s: &str| parse_expr(s, base, allow_t, line.span(o));
        let scalar = |o: usize, s: &str| -> Result<RatFunc> {
            let v = poly(o, s)?;
            v.as_constant()
                .or_else(|| v.is_zero().then(<RatFunc as num_traits::Zero>::zero))
                .map_or_else(|| line.err(o, "expected a scalar"), Ok)
        };
        match key.as_str() {
            "p11" => p.p11 = scalar(*voff, value)?,
            "p12" => p.p12 = scalar(*voff, value)?,
            "tau" => {
                let parts = comma_parts(value, *voff);
                if parts.len() != 3 {
                    return line.err(*voff, "expected `tau = tau1, tau2, tau0`");
                }
                for (k, (o, s)) in parts.into_iter().enumerate() {
                    p.tau[k] = poly(o, s)?;
                }
            }
            "lambdas" if allow_t => extra.push((line, Extra::Lambdas(*voff, *value))),
            "profile" if allow_t => {
                let Some((slot, o, v)) = split_arrow(value, *voff) else {
                    return line.err(*voff, "expected `profile: slot -> value`");
                };
                extra.push((line, Extra::Profile(slot.0, slot.1, o, v)));
            }
            "baserel" => {
                let Some(((goff, gs), o, v)) = split_arrow(value, *voff) else {
                    return line.err(*voff, "expected `baserel: g' g -> expr`");
                };
                let names: Vec<(usize, &str)> = gs
                    .split_whitespace()
                    .map(|s| (goff + s.as_ptr() as usize - gs.as_ptr() as usize, s))
                    .collect();
                if names.len() != 2 {
                    return line.err(goff, "expected two generators");
                }
                let (j, i) = (gen(line, names[0])?, gen(line, names[1])?);
                let rhs = poly(o, v)?;
                p.set_baserel(j, i, rhs).or_else(|e| line.err(goff, e.to_string()))?;
            }
            k => {
                let Some(((goff, g), o, v)) = split_arrow(value, *voff) else {
                    return line.err(0, format!("unknown key `{k}`"));
                };
                let gi = gen(line, (goff, g))?;
                let rhs = poly(o, v)?;
                let target = match k {
                    "sigma11" => &mut p.sigma[0][0][gi],
                    "sigma12" => &mut p.sigma[0][1][gi],
                    "sigma21" => &mut p.sigma[1][0][gi],
                    "sigma22" => &mut p.sigma[1][1][gi],
                    "delta1" => &mut p.delta[0][gi],
                    "delta2" => &mut p.delta[1][gi],
                    _ => return line.err(0, format!("unknown key `{k}`")),
                };
                *target = rhs;
            }
        }
    }
    Ok((p, extra))
}

/// Reads a slot name as printed by [`CoeffSlot::display`]; the `[monomial]`
/// suffix may be omitted for `p11` and `p12`.
fn parse_slot(s: &str, base: &Arc<PolyRing>, line: &Line<'_>, off: usize) -> Result<CoeffSlot> {
    let bad = || line.err(off, format!("unknown coefficient slot `{s}`"));
    if s == "p11" {
        return Ok(CoeffSlot::P11);
    }
    if s == "p12" {
        return Ok(CoeffSlot::P12);
    }
    let (head, mono) = match (s.find('['), s.ends_with(']')) {
        (Some(i), true) => (&s[..i], &s[i + 1..s.len() - 1]),
        _ => return bad(),
    };
    let m = parse_rational_poly(mono, base, line.span(off))?;
    let Some((m, c)) = m.terms().next().filter(|_| m.num_terms() == 1) else {
        return bad();
    };
    if !num_traits::One::is_one(c) {
        return bad();
    }
    let m: Monomial = m.clone();
    let arg = |h: &str| -> Option<(String, String)> {
        let i = h.find('(')?;
        h.ends_with(')').then(|| (h[..i].to_string(), h[i + 1..h.len() - 1].trim().to_string()))
    };
    let g = |name: &str| base.index_of(name);
    if let Some(k) = head.strip_prefix("tau") {
        return match k {
            "1" => Ok(CoeffSlot::Tau(0, m)),
            "2" => Ok(CoeffSlot::Tau(1, m)),
            "0" => Ok(CoeffSlot::Tau(2, m)),
            _ => bad(),
        };
    }
    let Some((name, a)) = arg(head) else { return bad() };
    let digit = |c: u8| (c as char).to_digit(10).filter(|d| (1..=2).contains(d)).map(|d| d as usize - 1);
    match name.as_str() {
        "baserel" => {
            let gs: Vec<&str> = a.split_whitespace().collect();
            match gs.as_slice() {
                [j, i] => match (g(j), g(i)) {
                    (Some(j), Some(i)) if j > i => Ok(CoeffSlot::BaseRel(j, i, m)),
                    _ => bad(),
                },
                _ => bad(),
            }
        }
        n if n.starts_with("sigma") && n.len() == 7 => {
            let b = n.as_bytes();
            match (digit(b[5]), digit(b[6]), g(&a)) {
                (Some(i), Some(j), Some(gi)) => Ok(CoeffSlot::Sigma(i, j, gi, m)),
                _ => bad(),
            }
        }
        n if n.starts_with("delta") && n.len() == 6 => match (digit(n.as_bytes()[5]), g(&a)) {
            (Some(i), Some(gi)) => Ok(CoeffSlot::Delta(i, gi, m)),
            _ => bad(),
        },
        _ => bad(),
    }
}

fn write_presentation<K: Scalar>(f: &mut fmt::Formatter<'_>, p: &NCPresentation<K>) -> fmt::Result {
    let r = p.base();
    writeln!(f, "p11 = {}", p.p11)?;
    writeln!(f, "p12 = {}", p.p12)?;
    writeln!(f, "tau = {}, {}, {}", p.tau[0], p.tau[1], p.tau[2])?;
    for i in 0..2 {
        for j in 0..2 {
            for g in 0..r.len() {
                writeln!(f, "sigma{}{}: {} -> {}", i + 1, j + 1, r.name(g), p.sigma[i][j][g])?;
            }
        }
    }
    for i in 0..2 {
        for g in 0..r.len() {
            if !p.delta[i][g].is_zero() {
                writeln!(f, "delta{}: {} -> {}", i + 1, r.name(g), p.delta[i][g])?;
            }
        }
    }
    for (j, i, v) in p.baserels() {
        writeln!(f, "baserel: {} {} -> {}", r.name(j), r.name(i), v)?;
    }
    Ok(())
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ring]")?;
        writeln!(f, "generators = {}", self.base.names().join(", "))?;
        if let Some([a, b]) = &self.vars {
            writeln!(f, "variables = {a}, {b}")?;
        }
        if !self.bracket.is_trivial() {
            writeln!(f, "\n[bracket]")?;
            for (i, j, v) in self.bracket.entries() {
                writeln!(f, "{}, {} -> {}", self.base.name(i), self.base.name(j), v)?;
            }
        }
        if let Some(d) = &self.dedata {
            writeln!(f, "\n[dedata]")?;
            writeln!(f, "q = {}, {}", d.q11, d.q12)?;
            writeln!(f, "w = {}, {}, {}", d.w[0], d.w[1], d.w[2])?;
            for (k, m) in [(11, &d.alpha[0][0]), (12, &d.alpha[0][1]), (21, &d.alpha[1][0]), (22, &d.alpha[1][1])] {
                for g in 0..self.base.len() {
                    if !m.image(g).is_zero() {
                        writeln!(f, "alpha{k}: {} -> {}", self.base.name(g), m.image(g))?;
                    }
                }
            }
            for (k, m) in d.nu.iter().enumerate() {
                for g in 0..self.base.len() {
                    if !m.image(g).is_zero() {
                        writeln!(f, "nu{}: {} -> {}", k + 1, self.base.name(g), m.image(g))?;
                    }
                }
            }
        }
        if let Some(p) = &self.presentation {
            writeln!(f, "\n[presentation]")?;
            write_presentation(f, p)?;
        }
        if let Some(fam) = &self.family {
            writeln!(f, "\n[family]")?;
            if !fam.lambdas.is_empty() {
                let l: Vec<String> = fam.lambdas.iter().map(|l| l.to_string()).collect();
                writeln!(f, "lambdas = {}", l.join(", "))?;
            }
            write_presentation(f, &fam.presentation)?;
            for (slot, v) in self.profile.overrides() {
                writeln!(f, "profile: {} -> {}", slot.display(&self.base), v)?;
            }
        }
        Ok(())
    }
}
