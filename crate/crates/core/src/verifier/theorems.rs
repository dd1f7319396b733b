use std::time::Instant;

use super::report::{ConstantCheck, Status, TheoremReport};
use super::swap::gamma_swap_check;
use super::symbolic::{symbolic_route, Symbolic};
use super::VerifyError;
use crate::charforms::{
    a_hat, anomaly_class, ch_line, ch_tangent, e8_character, extract_w, l_hat_hirzebruch, line_factor, AnomalyClass, ChernCharacterData,
    LineConvention, ManifoldContext, Structure,
};
use crate::modforms::named_series;
use crate::qseries::QExp;
use crate::ring::{int, parse_rational, rat, GradedPoly, Rational};

/// Registered checks, in report order.
pub const THEOREM_IDS: [&str; 16] =
    ["T2.3", "C2.4", "T2.6", "C2.7", "T2.9", "C2.10", "T2.11", "T2.12", "T2.13", "L3.2", "T3.3", "C3.4", "T3.6", "C3.7", "T3.8", "C3.9"];

/// Replaces one printed constant of one check, for fault injection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantOverride {
    pub theorem: String,
    pub name: String,
    pub value: Rational,
}

impl ConstantOverride {
    /// `THEOREM:NAME=VALUE`, e.g. `T2.3:k=9`.
    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::BadOverride(text.to_string());
        let (theorem, rest) = text.split_once(':').ok_or_else(bad)?;
        let (name, value) = rest.split_once('=').ok_or_else(bad)?;
        let value = parse_rational(value.trim()).map_err(|_| bad())?;
        Ok(ConstantOverride { theorem: theorem.trim().to_string(), name: name.trim().to_string(), value })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// q-order for checks that expand series.
    pub order: QExp,
    /// Convention the status of spin^c checks refers to.
    pub convention: LineConvention,
    pub degree_cap: Option<u32>,
    pub overrides: Vec<ConstantOverride>,
    /// Adds a constant to one fitted coefficient in the swap check.
    pub perturb_h: Option<(usize, Rational)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: QExp::int(6),
            convention: LineConvention::RESOLVED,
            degree_cap: None,
            overrides: Vec::new(),
            perturb_h: None,
        }
    }
}

impl VerifyOptions {
    fn constant(&self, id: &str, name: &str, printed: Rational) -> Rational {
        self.overrides.iter().rev().find(|o| o.theorem == id && o.name == name).map(|o| o.value.clone()).unwrap_or(printed)
    }
}

/// Forms shared by the checks in one context.
struct Kit {
    ctx: ManifoldContext,
    ahat: GradedPoly,
    t: ChernCharacterData,
    w: Vec<ChernCharacterData>,
    wbar: Vec<ChernCharacterData>,
}

impl Kit {
    fn new(dim: u32, structure: Structure, bundles: usize, opts: &VerifyOptions) -> Result<Self, VerifyError> {
        let ctx = match opts.degree_cap {
            Some(cap) if cap < dim => return Err(VerifyError::BadOption(format!("degree cap {cap} is below the dimension {dim}"))),
            Some(cap) => ManifoldContext::with_degree_cap(dim, structure, bundles, cap)?,
            None => ManifoldContext::new(dim, structure, bundles)?,
        };
        let mut w = Vec::new();
        let mut wbar = Vec::new();
        for b in 0..bundles {
            let v = e8_character(&ctx, b, QExp::int(2))?;
            w.push(extract_w(&v, 1)?);
            wbar.push(extract_w(&v, 2)?);
        }
        Ok(Kit { ahat: a_hat(&ctx), t: ch_tangent(&ctx), w, wbar, ctx })
    }

    fn rank(&self, r: &Rational) -> ChernCharacterData {
        ChernCharacterData::trivial(&self.ctx, r.clone())
    }

    fn w_sum(&self) -> ChernCharacterData {
        self.w.iter().fold(self.rank(&int(0)), |acc, w| &acc + w)
    }

    fn top(&self) -> u32 {
        self.ctx.dimension()
    }

    fn eps(&self, class: AnomalyClass) -> Result<GradedPoly, VerifyError> {
        Ok(anomaly_class(&self.ctx, class)?.scale(&rat(1, 24)).exp()?)
    }

    /// Bindings that impose the vanishing of an anomaly class.
    fn vanishing(&self, class: AnomalyClass) -> Result<Vec<(&'static str, GradedPoly)>, VerifyError> {
        let ctx = &self.ctx;
        Ok(match class {
            AnomalyClass::A => vec![("s1", &(&ctx.c()?.pow(2) + &ctx.g(0, 1)?) + &ctx.g(1, 1)?)],
            AnomalyClass::A1 => vec![("s1", &ctx.c()?.pow(2) + &ctx.g(0, 1)?)],
            AnomalyClass::A2 => vec![("gi1", -&ctx.g(1, 1)?)],
            AnomalyClass::A3 => vec![("gi1", ctx.zero())],
        })
    }

    fn impose(&self, class: AnomalyClass, p: &GradedPoly) -> Result<GradedPoly, VerifyError> {
        let bindings = self.vanishing(class)?;
        let refs: Vec<(&str, GradedPoly)> = bindings.iter().map(|(n, p)| (*n, p.clone())).collect();
        Ok(p.substitute(&refs)?)
    }
}

/// `(e^{A/24} - 1)/A = Σ_{k≥1} A^{k-1}/(24^k k!)`, finite since `A` is nilpotent.
pub fn expm1_over(a: &GradedPoly) -> GradedPoly {
    let mut acc = GradedPoly::zero(a.ring());
    let mut power = GradedPoly::one(a.ring());
    let mut coeff = rat(1, 24);
    let mut k = 1i64;
    while !power.is_zero() {
        acc.add_scaled(&power, &coeff);
        power = &power * a;
        k += 1;
        coeff *= rat(1, 24 * k);
    }
    acc
}

fn q_coeff(name: &str, n: i64) -> Result<Rational, VerifyError> {
    Ok(named_series(name, QExp::int(2))?.coefficient(QExp::int(n))?)
}

pub fn verify_theorem(id: &str, opts: &VerifyOptions) -> Result<TheoremReport, VerifyError> {
    let start = Instant::now();
    let mut report = match id {
        "T2.3" => anomaly_theorem(id, opts, 14, 2, AnomalyClass::A, 8, "phi16", "E4^2*E6")?,
        "T2.6" => anomaly_theorem(id, opts, 14, 1, AnomalyClass::A1, 256, "phi8", "E4*E6")?,
        "T2.9" => anomaly_theorem(id, opts, 10, 1, AnomalyClass::A1, -488, "phi8", "E4^2")?,
        "C2.4" => corollary(id, opts, 14, 2, AnomalyClass::A, Some(-16), -24, "phi16", "E4^2*E6")?,
        "C2.7" => corollary(id, opts, 14, 1, AnomalyClass::A1, Some(-8), -264, "phi8", "E4*E6")?,
        "C2.10" => corollary(id, opts, 10, 1, AnomalyClass::A1, None, 488, "phi8", "E4^2")?,
        "T2.11" => second_order(id, opts, 14, 2, AnomalyClass::A, -196632, "phi16", "E4^2*E6")?,
        "T2.12" => second_order(id, opts, 14, 1, AnomalyClass::A1, -135432, "phi8", "E4*E6")?,
        "T2.13" => second_order(id, opts, 10, 1, AnomalyClass::A1, 61920, "phi8", "E4^2")?,
        "L3.2" => gamma_swap_check(opts)?,
        "T3.3" | "C3.4" => two_bundle_signature(id, opts)?,
        "T3.6" | "C3.7" => one_bundle_signature(id, opts)?,
        "T3.8" | "C3.9" => one_bundle_mixed(id, opts)?,
        _ => return Err(VerifyError::UnknownTheorem(id.to_string())),
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

type Sides = (GradedPoly, GradedPoly);

/// Evaluates a spin^c identity under every registered convention and applies
/// the status rule: PASS if it holds under the selected convention,
/// CONVENTION_DEPENDENT if only under another one, FAIL otherwise.
fn across_conventions<F>(id: &str, opts: &VerifyOptions, constants: Vec<ConstantCheck>, mut sides: F) -> Result<TheoremReport, VerifyError>
where
    F: FnMut(LineConvention) -> Result<Sides, VerifyError>,
{
    let mut conventions = vec![opts.convention];
    conventions.extend(LineConvention::CANDIDATES.iter().copied().filter(|c| *c != opts.convention));
    let mut evaluated = Vec::new();
    for conv in conventions {
        let (lhs, rhs) = sides(conv)?;
        let difference = &lhs - &rhs;
        evaluated.push((conv, lhs, rhs, difference));
    }
    let constants_ok = constants.iter().all(ConstantCheck::matches);
    let outcomes: Vec<(LineConvention, bool)> = evaluated.iter().map(|(c, _, _, d)| (*c, d.is_zero())).collect();
    let holding: Vec<String> = outcomes.iter().filter(|(_, ok)| *ok).map(|(c, _)| c.to_string()).collect();
    let pick = if evaluated[0].3.is_zero() || !constants_ok { 0 } else { evaluated.iter().position(|e| e.3.is_zero()).unwrap_or(0) };
    let status = match (constants_ok, pick, evaluated[pick].3.is_zero()) {
        (true, 0, true) => Status::Pass,
        (true, _, true) => Status::ConventionDependent,
        _ => Status::Fail,
    };
    let (conv, lhs, rhs, difference) = evaluated.swap_remove(pick);
    let note = if holding.is_empty() { "holds under no convention".to_string() } else { format!("holds under {}", holding.join(", ")) };
    Ok(TheoremReport {
        theorem: id.to_string(),
        status,
        convention: Some(conv),
        lhs,
        rhs,
        difference,
        constants,
        outcomes,
        q_order: QExp::int(2),
        note,
        elapsed_ms: 0,
    })
}

fn single(id: &str, q_order: QExp, constants: Vec<ConstantCheck>, (lhs, rhs): Sides, note: String) -> TheoremReport {
    let difference = &lhs - &rhs;
    let status = if difference.is_zero() && constants.iter().all(ConstantCheck::matches) { Status::Pass } else { Status::Fail };
    TheoremReport {
        theorem: id.to_string(),
        status,
        convention: None,
        lhs,
        rhs,
        difference,
        constants,
        outcomes: Vec::new(),
        q_order,
        note,
        elapsed_ms: 0,
    }
}

/// `{Â F ch(T̃ - L̃ + k + ΣW)}^{(d)} = A{e^{A/24}Â F - ((e^{A/24}-1)/A) Â F ch(…)}^{(d-4)}`
#[allow(clippy::too_many_arguments)]
fn anomaly_theorem(
    id: &str,
    opts: &VerifyOptions,
    dim: u32,
    bundles: usize,
    class: AnomalyClass,
    k: i64,
    phi: &str,
    form: &str,
) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(dim, Structure::SpinC, bundles, opts)?;
    let k = opts.constant(id, "k", int(k));
    let derived = q_coeff(phi, 1)? - q_coeff(form, 1)?;
    let constants = vec![ConstantCheck::new("k", k.clone(), derived)];
    let a = anomaly_class(&kit.ctx, class)?;
    let eps = kit.eps(class)?;
    let g = expm1_over(&a);
    across_conventions(id, opts, constants, |conv| {
        let af = &kit.ahat * &line_factor(&kit.ctx, conv.factor)?;
        let bundle = &(&(&kit.t - &ch_line(&kit.ctx, conv.ch)?) + &kit.rank(&k)) + &kit.w_sum();
        let x = &af * bundle.value();
        let inner = &(&eps * &af) - &(&g * &x);
        Ok((x.component(kit.top()), &a * &inner.component(kit.top() - 4)))
    })
}

/// `{Â F ch(T̃ - L̃ + c + ΣW)}^{(d)} = λ{Â F}^{(d)}` once the anomaly class vanishes.
#[allow(clippy::too_many_arguments)]
fn corollary(
    id: &str,
    opts: &VerifyOptions,
    dim: u32,
    bundles: usize,
    class: AnomalyClass,
    c: Option<i64>,
    lambda: i64,
    phi: &str,
    form: &str,
) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(dim, Structure::SpinC, bundles, opts)?;
    let phi1 = q_coeff(phi, 1)?;
    let mut constants = Vec::new();
    let c = match c {
        Some(c) => {
            let c = opts.constant(id, "c", int(c));
            constants.push(ConstantCheck::new("c", c.clone(), phi1.clone()));
            c
        }
        None => int(0),
    };
    let lambda = opts.constant(id, "lambda", int(lambda));
    constants.push(ConstantCheck::new("lambda", lambda.clone(), q_coeff(form, 1)? - phi1 + c.clone()));
    across_conventions(id, opts, constants, |conv| {
        let af = &kit.ahat * &line_factor(&kit.ctx, conv.factor)?;
        let bundle = &(&(&kit.t - &ch_line(&kit.ctx, conv.ch)?) + &kit.rank(&c)) + &kit.w_sum();
        let lhs = (&af * bundle.value()).component(kit.top());
        let rhs = af.component(kit.top()).scale(&lambda);
        Ok((kit.impose(class, &lhs)?, kit.impose(class, &rhs)?))
    })
}

/// The `q^2` identities. With `B1 = T̃ - L̃` and
/// `B2 = Λ²L̃ - L̃ - T̃⊗L̃ + S²T̃ + T̃`, the two-bundle bracket is
/// `W̄_j + W̄_i + W_i W_j - 16(W_i + W_j) + 104 + B1(W_i + W_j - 16) + B2`
/// and the one-bundle bracket is `20 + W̄_i - 8 W_i + B1(W_i - 8) + B2`.
#[allow(clippy::too_many_arguments)]
fn second_order(
    id: &str,
    opts: &VerifyOptions,
    dim: u32,
    bundles: usize,
    class: AnomalyClass,
    lambda: i64,
    phi: &str,
    form: &str,
) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(dim, Structure::SpinC, bundles, opts)?;
    let (linear_name, const_name, linear, constant) = if bundles == 2 { ("16", "104", 16, 104) } else { ("8", "20", 8, 20) };
    let linear = opts.constant(id, linear_name, int(linear));
    let constant = opts.constant(id, const_name, int(constant));
    let lambda = opts.constant(id, "lambda", int(lambda));
    let constants = vec![
        ConstantCheck::new(const_name, constant.clone(), q_coeff(phi, 2)?),
        ConstantCheck::new(linear_name, linear.clone(), -q_coeff(phi, 1)?),
        ConstantCheck::new("lambda", lambda.clone(), q_coeff(form, 2)?),
    ];
    across_conventions(id, opts, constants, |conv| {
        let t = &kit.t;
        let l = ch_line(&kit.ctx, conv.ch)?;
        let b1 = t - &l;
        let b2 = &(&(&(&l.lambda2() - &l) - &t.tensor(&l)) + &t.sym2()) + t;
        let ws = kit.w_sum();
        let shifted = &ws - &kit.rank(&linear);
        let mut bracket = &(&(&kit.rank(&constant) - &ws.scale(&linear)) + &b1.tensor(&shifted)) + &b2;
        bracket = kit.wbar.iter().fold(bracket, |acc, wb| &acc + wb);
        if bundles == 2 {
            bracket = &bracket + &kit.w[0].tensor(&kit.w[1]);
        }
        let af = &kit.ahat * &line_factor(&kit.ctx, conv.factor)?;
        let lhs = (&af * bracket.value()).component(kit.top());
        let rhs = af.component(kit.top()).scale(&lambda);
        Ok((kit.impose(class, &lhs)?, kit.impose(class, &rhs)?))
    })
}

/// Printed constant vs. symbolic coefficient; `scale` converts the symbolic
/// coefficient to the printed normalization.
fn sym_check(name: &str, expected: Rational, s: &Symbolic, p: &GradedPoly, monomial: &[&str], scale: Rational) -> ConstantCheck {
    ConstantCheck::new(name, expected, s.coeff(p, monomial) * scale)
}

/// Flags any symbolic term not accounted for by the printed constants.
fn remainder_check(p: &GradedPoly, printed: &GradedPoly) -> ConstantCheck {
    let extra = (p - printed).terms().count();
    ConstantCheck::new("unlisted terms", int(0), int(extra as i64))
}

/// `32{e^{A2/24}L̂}^{(12)} = {e^{A2/24}Â ch[c0 + c1 T̃ + c2(Λ²T̃ + W_i + W_j)
/// + T̃⊗T̃ + T̃⊗(W_i + W_j) + Λ³T̃] - (1/24) e^{A2/24} A2 Â ch(a0 + a1 T̃)}^{(12)}`
fn two_bundle_signature(id: &str, opts: &VerifyOptions) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(12, Structure::Spin, 2, opts)?;
    let theorem = "T3.3";
    let c0 = opts.constant(id, "1", int(2240));
    let c1 = opts.constant(id, "T", int(309));
    let c2 = opts.constant(id, "Λ²T,W", int(24));
    let a0 = opts.constant(id, "A", int(576));
    let a1 = opts.constant(id, "A·T", int(24));

    let s = symbolic_route(2)?;
    let derived = s.q1[0].scale(&int(32));
    let (t, l2, l3, wi, wj, a) = (s.sym("T"), s.sym("L2"), s.sym("L3"), s.sym("Wi"), s.sym("Wj"), s.sym("A"));
    let w = &wi + &wj;
    let printed = &(&(&(&(&(&s.constant(c0.clone()) + &t.scale(&c1)) + &(&l2 + &w).scale(&c2)) + &(&t * &t)) + &(&t * &w)) + &l3)
        - &(&a * &(&s.constant(a0.clone()) + &t.scale(&a1))).scale(&rat(1, 24));
    let m24 = int(-24);
    let constants = vec![
        sym_check("1", c0.clone(), &s, &derived, &[], int(1)),
        sym_check("T", c1.clone(), &s, &derived, &["T"], int(1)),
        sym_check("Λ²T,W", c2.clone(), &s, &derived, &["L2"], int(1)),
        sym_check("A", a0.clone(), &s, &derived, &["A"], m24.clone()),
        sym_check("A·T", a1.clone(), &s, &derived, &["A", "T"], m24),
        remainder_check(&derived, &printed),
    ];

    let t = &kit.t;
    let ws = kit.w_sum();
    let lhat = l_hat_hirzebruch(&kit.ctx);
    let bracket =
        &(&(&(&(&kit.rank(&c0) + &t.scale(&c1)) + &(&t.lambda2() + &ws).scale(&c2)) + &t.tensor(t)) + &t.tensor(&ws)) + &t.lambda3();
    let a_part = &kit.rank(&a0) + &t.scale(&a1);
    let sides = if id == theorem {
        let eps = kit.eps(AnomalyClass::A2)?;
        let a2 = anomaly_class(&kit.ctx, AnomalyClass::A2)?;
        let g = &eps * &kit.ahat;
        let lhs = (&eps * &lhat).scale(&int(32)).component(12);
        let rhs = &(&g * bracket.value()) - &(&(&g * &a2) * a_part.value()).scale(&rat(1, 24));
        (lhs, rhs.component(12))
    } else {
        let lhs = lhat.scale(&int(32)).component(12);
        let rhs = (&kit.ahat * bracket.value()).component(12);
        (kit.impose(AnomalyClass::A2, &lhs)?, kit.impose(AnomalyClass::A2, &rhs)?)
    };
    Ok(single(id, QExp::new(3, 2)?, constants, sides, "constants re-derived from the level-2 fit".into()))
}

/// `{e^{A3/24}L̂}^{(12)} = -½{e^{A3/24}Â ch[c1 T̃ + Λ²T̃ + W_i + c0]}^{(12)} + k{c2(W_i) e^{A3/24}Â}^{(12)}`
fn one_bundle_signature(id: &str, opts: &VerifyOptions) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(12, Structure::Spin, 1, opts)?;
    let c1 = opts.constant(id, "T", int(17));
    let c0 = opts.constant(id, "1", int(128));
    let k = opts.constant(id, "c2", rat(1, 60));

    let s = symbolic_route(1)?;
    let derived = &s.q1[0];
    let (t, l2, wi, a) = (s.sym("T"), s.sym("L2"), s.sym("Wi"), s.sym("A"));
    // c2(W_i) = 30 A3
    let printed = &(&(&(&t.scale(&c1) + &l2) + &wi) + &s.constant(c0.clone())).scale(&rat(-1, 2)) + &a.scale(&(k.clone() * int(30)));
    let constants = vec![
        sym_check("T", c1.clone(), &s, derived, &["T"], int(-2)),
        sym_check("1", c0.clone(), &s, derived, &[], int(-2)),
        sym_check("c2", k.clone(), &s, derived, &["A"], rat(1, 30)),
        remainder_check(derived, &printed),
    ];

    let t = &kit.t;
    let lhat = l_hat_hirzebruch(&kit.ctx);
    let bracket = &(&(&t.scale(&c1) + &t.lambda2()) + &kit.w[0]) + &kit.rank(&c0);
    let sides = if id == "T3.6" {
        let eps = kit.eps(AnomalyClass::A3)?;
        let g = &eps * &kit.ahat;
        let lhs = (&eps * &lhat).component(12);
        let rhs = &(&g * bracket.value()).scale(&rat(-1, 2)) + &(&kit.ctx.c2_w(0)? * &g).scale(&k);
        (lhs, rhs.component(12))
    } else {
        let lhs = lhat.scale(&int(-2)).component(12);
        let rhs = (&kit.ahat * bracket.value()).component(12);
        (kit.impose(AnomalyClass::A3, &lhs)?, kit.impose(AnomalyClass::A3, &rhs)?)
    };
    Ok(single(id, QExp::ONE, constants, sides, "constants re-derived from the level-2 fit".into()))
}

/// `{e^{A3/24}L̂[-A3 + 2ch T̃ - 8 + ch W_i]}^{(12)}
///  = {e^{A3/24}Â ch[c1 T̃ + c2 Λ²T̃ + c3 W_i + c0]}^{(12)} - k{c2(W_i) e^{A3/24}Â}^{(12)}`
fn one_bundle_mixed(id: &str, opts: &VerifyOptions) -> Result<TheoremReport, VerifyError> {
    let kit = Kit::new(12, Structure::Spin, 1, opts)?;
    let c1 = opts.constant(id, "T", int(2116));
    let c2 = opts.constant(id, "Λ²T", int(4));
    let c3 = opts.constant(id, "W", int(4));
    let c0 = opts.constant(id, "1", int(-15872));
    let k = opts.constant(id, "c2", rat(2, 15));
    let eight = opts.constant(id, "8", int(8));

    let s = symbolic_route(1)?;
    let derived = &s.q1[1];
    let (t, l2, wi, a) = (s.sym("T"), s.sym("L2"), s.sym("Wi"), s.sym("A"));
    let printed = &(&(&(&t.scale(&c1) + &l2.scale(&c2)) + &wi.scale(&c3)) + &s.constant(c0.clone())) - &a.scale(&(k.clone() * int(30)));
    let constants = vec![
        sym_check("T", c1.clone(), &s, derived, &["T"], int(1)),
        sym_check("Λ²T", c2.clone(), &s, derived, &["L2"], int(1)),
        sym_check("W", c3.clone(), &s, derived, &["Wi"], int(1)),
        sym_check("1", c0.clone(), &s, derived, &[], int(1)),
        sym_check("c2", k.clone(), &s, derived, &["A"], rat(-1, 30)),
        ConstantCheck::new("8", eight.clone(), -q_coeff("phi8", 1)?),
        remainder_check(derived, &printed),
    ];

    let t = &kit.t;
    let lhat = l_hat_hirzebruch(&kit.ctx);
    let rhs_bracket = &(&(&t.scale(&c1) + &t.lambda2().scale(&c2)) + &kit.w[0].scale(&c3)) + &kit.rank(&c0);
    let lhs_bracket = &(&t.scale(&int(2)) - &kit.rank(&eight)) + &kit.w[0];
    let sides = if id == "T3.8" {
        let eps = kit.eps(AnomalyClass::A3)?;
        let a3 = anomaly_class(&kit.ctx, AnomalyClass::A3)?;
        let g = &eps * &kit.ahat;
        let lhs = (&(&eps * &lhat) * &(lhs_bracket.value() - &a3)).component(12);
        let rhs = &(&g * rhs_bracket.value()) - &(&kit.ctx.c2_w(0)? * &g).scale(&k);
        (lhs, rhs.component(12))
    } else {
        let lhs = (&lhat * lhs_bracket.value()).component(12);
        let rhs = (&kit.ahat * rhs_bracket.value()).component(12);
        (kit.impose(AnomalyClass::A3, &lhs)?, kit.impose(AnomalyClass::A3, &rhs)?)
    };
    Ok(single(id, QExp::ONE, constants, sides, "constants re-derived from the level-2 fit".into()))
}
