//! Semiclassical limits and deformations of one-parameter families of left
//! double extensions over `ℚ(t)`, with `h = t − 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::dpe::{check_dedata, ConditionReport, DEData};
use crate::error::{Error, Result};
use crate::ncalg::{commutator_limit_bracket, confluence_check, CoeffSlot, ConfluenceReport, NCPresentation};
use crate::pbracket::PoissonStructure;
use crate::poly::{Derivation, Poly};
use crate::scalar::{lagrange_interpolate, RatFunc, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFamily {
    pub presentation: NCPresentation<RatFunc>,
    /// Registered deformation points.
    pub lambdas: Vec<Rational>,
}

impl ParamFamily {
    pub fn new(presentation: NCPresentation<RatFunc>, lambdas: Vec<Rational>) -> Self {
        ParamFamily { presentation, lambdas }
    }
}

/// Congruence and admissibility problems found by [`validate_family`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub issues: Vec<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "family congruences hold");
        }
        for i in &self.issues {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Checks that every coefficient reduces to the commutative presentation at
/// `t = 1` and is defined at every registered `λ`.
pub fn validate_family(f: &ParamFamily) -> FamilyReport {
    let p = &f.presentation;
    let ring = p.base();
    let one = Rational::one();
    let mut issues = Vec::new();
    for l in &f.lambdas {
        if l.is_zero() || l.is_one() {
            issues.push(format!("lambda {l} must differ from 0 and 1"));
        }
    }
    for (slot, c) in p.slots() {
        let name = slot.display(ring);
        let expect = Rational::from_integer(slot.identity_value().into());
        match c.eval(&one) {
            Ok(v) if v == expect => {}
            Ok(v) => issues.push(format!("{name}: value {v} at t = 1, expected {expect}")),
            Err(_) => issues.push(format!("{name}: {c} has a pole at t = 1")),
        }
        for l in &f.lambdas {
            if !c.is_regular_at(l) {
                issues.push(format!("{name}: {c} has a pole at t = {l}"));
            }
        }
    }
    FamilyReport { issues }
}

/// The limit coefficient `((c − e) / (t − 1))(1)` of a slot with identity
/// value `e`.
fn limit_value(slot: &CoeffSlot, c: &RatFunc) -> Result<Rational> {
    let e = RatFunc::from_i64(slot.identity_value());
    (c.clone() - e).div_t_minus_1()?.eval(&Rational::one())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub dedata: DEData<Rational>,
    pub report: ConditionReport<Rational>,
}

/// Reads off `{q, α, ν, w}` and the bracket of `R_1` from the family.
pub fn semiclassical_limit(f: &ParamFamily) -> Result<LimitResult> {
    let rep = validate_family(f);
    if !rep.passed() {
        return Err(Error::ConstraintViolation(rep.to_string().trim_end().to_string()));
    }
    let p = &f.presentation;
    let r = p.base().clone();
    let n = r.len();
    let mut q = [Rational::zero(), Rational::zero()];
    let mut w: [Poly<Rational>; 3] = std::array::from_fn(|_| Poly::zero(&r));
    let mut alpha: [[Vec<Poly<Rational>>; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| vec![Poly::zero(&r); n]));
    let mut nu: [Vec<Poly<Rational>>; 2] = std::array::from_fn(|_| vec![Poly::zero(&r); n]);
    let mut rels: BTreeMap<(usize, usize), Poly<Rational>> = BTreeMap::new();
    for (slot, c) in p.slots() {
        let v = limit_value(&slot, &c)?;
        let term = |m| Poly::term(&r, m, v.clone());
        match slot {
            CoeffSlot::P11 => q[0] = v.clone(),
            CoeffSlot::P12 => q[1] = v.clone(),
            // τ = (τ1, τ2, τ0) maps to w = (w1, w2, w0) in the same order
            CoeffSlot::Tau(k, m) => w[k] = &w[k] + &term(m),
            CoeffSlot::Sigma(i, j, g, m) => alpha[i][j][g] = &alpha[i][j][g] + &term(m),
            CoeffSlot::Delta(i, g, m) => nu[i][g] = &nu[i][g] + &term(m),
            CoeffSlot::BaseRel(j, i, m) => {
                let e = rels.entry((j, i)).or_insert_with(|| Poly::zero(&r));
                *e = &*e + &term(m);
            }
        }
    }
    let mut base = PoissonStructure::trivial(&r);
    for ((j, i), v) in rels {
        base.set(j, i, v)?;
    }
    let der = |imgs: Vec<Poly<Rational>>| Derivation::from_images(&r, imgs);
    let [[a11, a12], [a21, a22]] = alpha;
    let [n1, n2] = nu;
    let mut d = DEData::zero(base, p.vars());
    d.q11 = q[0].clone();
    d.q12 = q[1].clone();
    d.alpha = [[der(a11)?, der(a12)?], [der(a21)?, der(a22)?]];
    d.nu = [der(n1)?, der(n2)?];
    d.w = w;
    let report = check_dedata(&d)?;
    Ok(LimitResult { dedata: d, report })
}

/// Specializes the family at `t = λ`.
pub fn deform(f: &ParamFamily, lambda: &Rational) -> Result<NCPresentation<Rational>> {
    if lambda.is_zero() || lambda.is_one() || !f.lambdas.contains(lambda) {
        return Err(Error::InvalidLambda(lambda.to_string()));
    }
    f.presentation.map_slots(|_, c| c.eval(lambda))
}

/// Commutator and DE-data brackets of one generator pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub pair: (String, String),
    pub commutator: Poly<Rational>,
    pub dedata: Poly<Rational>,
}

impl PairCheck {
    pub fn agrees(&self) -> bool {
        self.commutator == self.dedata
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub confluence: ConfluenceReport<RatFunc>,
    pub limit: ConditionReport<Rational>,
    pub pairs: Vec<PairCheck>,
}

impl CrosscheckReport {
    pub fn brackets_agree(&self) -> bool {
        self.pairs.iter().all(PairCheck::agrees)
    }

    /// Both routes agree on a family that is confluent at the checked
    /// length and whose limit is Poisson.
    pub fn passed(&self) -> bool {
        self.brackets_agree() && self.confluence.resolved() && self.limit.passed()
    }

    pub fn pair(&self, a: &str, b: &str) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| p.pair.0 == a && p.pair.1 == b)
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "confluence: {}", self.confluence)?;
        write!(f, "limit: {}", self.limit)?;
        for p in &self.pairs {
            if p.agrees() {
                writeln!(f, "{{{}, {}}} = {}", p.pair.0, p.pair.1, p.commutator)?;
            } else {
                writeln!(
                    f,
                    "{{{}, {}}} mismatch: commutator {} vs DE-data {}",
                    p.pair.0, p.pair.1, p.commutator, p.dedata
                )?;
            }
        }
        writeln!(f, "crosscheck {}", if self.passed() { "passed" } else { "failed" })
    }
}

/// Compares `((uv − vu)/(t − 1))|_{t=1}` with the bracket defined by the
/// limit DE-data on every pair of generators `u > v`.
pub fn crosscheck_limit(f: &ParamFamily, max_len: usize) -> Result<CrosscheckReport> {
    let limit = semiclassical_limit(f)?;
    let confluence = confluence_check(&f.presentation, max_len)?;
    let ps = limit.dedata.extension_structure()?;
    let ring = ps.ring().clone();
    let m = ring.len();
    let mut pairs = Vec::new();
    for u in (0..m).rev() {
        for v in (0..u).rev() {
            let commutator = commutator_limit_bracket(&f.presentation, &[u], &[v])?;
            let dedata = ps.bracket(&Poly::var(&ring, u), &Poly::var(&ring, v))?;
            pairs.push(PairCheck {
                pair: (ring.name(u).to_string(), ring.name(v).to_string()),
                commutator,
                dedata,
            });
        }
    }
    Ok(CrosscheckReport {
        confluence,
        limit: limit.report,
        pairs,
    })
}

/// Values the coefficients take at `t = 1`: the identity value of each slot
/// unless overridden.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Profile {
    overrides: BTreeMap<CoeffSlot, Rational>,
}

impl Profile {
    /// `p12`, the diagonal `σ_ii(x_g)` terms and base commutation go to 1,
    /// everything else to 0.
    pub fn canonical() -> Self {
        Profile::default()
    }

    pub fn set(&mut self, slot: CoeffSlot, value: Rational) {
        self.overrides.insert(slot, value);
    }

    pub fn value(&self, slot: &CoeffSlot) -> Rational {
        self.overrides
            .get(slot)
            .cloned()
            .unwrap_or_else(|| Rational::from_integer(slot.identity_value().into()))
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&CoeffSlot, &Rational)> {
        self.overrides.iter()
    }
}

/// Replaces every coefficient `μ` of `target` by the interpolant through
/// `(1, profile value)` and `(λ, μ)`.
pub fn build_family_from_target(
    target: &NCPresentation<Rational>,
    lambda: &Rational,
    profile: &Profile,
) -> Result<ParamFamily> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::InvalidLambda(lambda.to_string()));
    }
    let one = Rational::one();
    let interp = |slot: &CoeffSlot, mu: &Rational| lagrange_interpolate(&[(one.clone(), profile.value(slot)), (lambda.clone(), mu.clone())]);
    let mut pres = target.map_slots(interp)?;
    let present: Vec<CoeffSlot> = target.slots().into_iter().map(|(s, _)| s).collect();
    for (slot, _) in profile.overrides() {
        if !present.contains(slot) {
            pres.set_slot(slot, interp(slot, &Rational::zero())?)?;
        }
    }
    Ok(ParamFamily::new(pres, vec![lambda.clone()]))
}

/// One coefficient of the derivative bridge: the limit coefficient computed
/// by dividing by `t − 1` and the formal derivative at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeEntry {
    pub slot: String,
    pub divided: Rational,
    pub derivative: Rational,
}

/// For every coefficient `f` of the family, `((f − f(1))/(t − 1))(1)`
/// against `f'(1)`.
pub fn derivative_bridge(f: &ParamFamily) -> Result<Vec<BridgeEntry>> {
    let one = Rational::one();
    f.presentation
        .slots()
        .into_iter()
        .map(|(slot, c)| {
            let at_one = RatFunc::constant(c.eval(&one)?);
            Ok(BridgeEntry {
                slot: slot.display(f.presentation.base()),
                divided: (c.clone() - at_one).div_t_minus_1()?.eval(&one)?,
                derivative: c.derivative().eval(&one)?,
            })
        })
        .collect()
}
