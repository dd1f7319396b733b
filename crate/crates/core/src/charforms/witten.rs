use std::fmt;

use super::{a_hat, ch_line, ch_tangent, l_hat_hirzebruch, CharError, ChernCharacterData, LineCh, ManifoldContext, Structure};
use crate::modforms::{theta_line_quotient, theta_ratio, z_theta_prime_over_theta, ThetaKind};
use crate::qseries::{QExp, QSeries};
use crate::ring::{int, rat, GeneratorTable, GradedPoly, Rational};

/// Witten-type twisting bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    /// `⊗ S_{q^n}(T̃) ⊗ Λ_{-q^m}(L̃)`
    SpincQ,
    /// `⊗ S_{q^n}(T̃) ⊗ Λ_{q^m}(T̃)`
    SpinQ1,
    /// `⊗ S_{q^n}(T̃) ⊗ Λ_{-q^{m-1/2}}(T̃)`
    SpinQ2,
}

/// Degree-0-in-q line factor: `e^{c/2}` or `sinh(c/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineFactor {
    Exp,
    Sinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineConvention {
    pub ch: LineCh,
    pub factor: LineFactor,
}

impl LineConvention {
    /// The reading under which the bundle and theta presentations coincide.
    pub const RESOLVED: LineConvention = LineConvention { ch: LineCh::Real2, factor: LineFactor::Sinh };

    pub const CANDIDATES: [LineConvention; 4] = [
        LineConvention::RESOLVED,
        LineConvention { ch: LineCh::Real2, factor: LineFactor::Exp },
        LineConvention { ch: LineCh::Line1, factor: LineFactor::Exp },
        LineConvention { ch: LineCh::Line1, factor: LineFactor::Sinh },
    ];

    pub fn parse(name: &str) -> Option<Self> {
        let (ch, factor) = name.split_once('+')?;
        let ch = match ch.to_ascii_uppercase().as_str() {
            "REAL2" => LineCh::Real2,
            "LINE1" => LineCh::Line1,
            "TRIVIAL" => LineCh::Trivial,
            _ => return None,
        };
        let factor = match factor.to_ascii_lowercase().as_str() {
            "exp" => LineFactor::Exp,
            "sinh" => LineFactor::Sinh,
            _ => return None,
        };
        Some(LineConvention { ch, factor })
    }
}

impl fmt::Display for LineConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = match self.factor {
            LineFactor::Exp => "exp",
            LineFactor::Sinh => "sinh",
        };
        write!(f, "{}+{factor}", self.ch.name())
    }
}

/// `e^{c/2}` or `(e^{c/2} - e^{-c/2})/2`.
pub fn line_factor(ctx: &ManifoldContext, factor: LineFactor) -> Result<GradedPoly, CharError> {
    let half = ctx.c()?.scale(&rat(1, 2));
    Ok(match factor {
        LineFactor::Exp => half.exp()?,
        LineFactor::Sinh => (&half.exp()? - &(-&half).exp()?).scale(&rat(1, 2)),
    })
}

fn check_twist(ctx: &ManifoldContext, twist: Twist) -> Result<(), CharError> {
    let ok = match twist {
        Twist::SpincQ => ctx.structure() == Structure::SpinC,
        Twist::SpinQ1 | Twist::SpinQ2 => ctx.structure() == Structure::Spin,
    };
    if ok {
        Ok(())
    } else {
        Err(CharError::UnsupportedTwist(twist))
    }
}

/// `Σ_{n,m} sign(m) q^{m e_n} ψ^m(x)/m` for `e_n = n - shift`, up to `order`.
fn adams_log(x: &ChernCharacterData, shift: QExp, alternate: bool, negate: bool, order: QExp, into: &mut Vec<(QExp, GradedPoly)>) {
    for n in 1.. {
        let base = QExp::int(n) - shift;
        if base > order {
            break;
        }
        for m in 1.. {
            let e = base * m;
            if e > order {
                break;
            }
            let mut coeff = int(m).recip();
            if alternate && m % 2 == 0 {
                coeff = -coeff;
            }
            if negate {
                coeff = -coeff;
            }
            into.push((e, x.adams(m).value().scale(&coeff)));
        }
    }
}

/// Chern character of the twisting bundle via Adams-operation generating
/// functions: `log ch S_t(x) = Σ t^m ψ^m x/m`, `log ch Λ_t(x) = Σ (-1)^{m-1} t^m ψ^m x/m`.
pub fn witten_direct(ctx: &ManifoldContext, twist: Twist, line: LineCh, order: QExp) -> Result<QSeries<GradedPoly>, CharError> {
    check_twist(ctx, twist)?;
    let t = ch_tangent(ctx);
    let mut terms = Vec::new();
    adams_log(&t, QExp::ZERO, false, false, order, &mut terms);
    match twist {
        // t = -q^m: (-1)^{m'-1} (-1)^{m'} = -1
        Twist::SpincQ => adams_log(&ch_line(ctx, line)?, QExp::ZERO, false, true, order, &mut terms),
        Twist::SpinQ1 => adams_log(&t, QExp::ZERO, true, false, order, &mut terms),
        Twist::SpinQ2 => adams_log(&t, QExp::HALF, false, true, order, &mut terms),
    }
    Ok(QSeries::from_terms(ctx.ring(), order, terms).exp()?)
}

/// Genus factor relating the two routes: `Â`, or `2^{root_pairs} L̂` for Q1.
pub fn genus_factor(ctx: &ManifoldContext, twist: Twist) -> GradedPoly {
    match twist {
        Twist::SpincQ | Twist::SpinQ2 => a_hat(ctx),
        Twist::SpinQ1 => l_hat_hirzebruch(ctx),
    }
}

/// The same object through theta quotients: `∏_roots ratio(z)` computed as
/// `exp(Σ_k (log ratio)_{2k}(q) s_k)`, times the line quotient for spin^c.
pub fn witten_theta(ctx: &ManifoldContext, twist: Twist, order: QExp) -> Result<QSeries<GradedPoly>, CharError> {
    check_twist(ctx, twist)?;
    let ring = ctx.ring();
    let zring = GeneratorTable::new(&[("z", 2)], ctx.degree_cap())?;
    let z = GradedPoly::generator(&zring, "z")?;
    let base = z_theta_prime_over_theta(&z, order)?;
    let ratio = match twist {
        Twist::SpincQ => base,
        Twist::SpinQ1 => base.try_mul(&theta_ratio(ThetaKind::Theta1, &z, order)?)?,
        Twist::SpinQ2 => base.try_mul(&theta_ratio(ThetaKind::Theta2, &z, order)?)?,
    };
    let powers: Vec<GradedPoly> = (1..=ctx.max_power_sum()).map(|k| ctx.s(k)).collect::<Result<_, _>>()?;
    let exponent = ratio.log()?.map_coeffs(ring, |p| {
        let mut acc = GradedPoly::zero(ring);
        for (k, s) in powers.iter().enumerate() {
            acc.add_scaled(s, &p.coefficient(&[2 * (k as u8 + 1)]));
        }
        acc
    });
    let mut out = exponent.exp()?;
    match twist {
        Twist::SpinQ1 => out = out.scale(&Rational::from_integer((1i64 << ctx.root_pairs()).into())),
        Twist::SpincQ => out = out.try_mul(&theta_line_quotient(&ctx.c()?, order)?)?,
        Twist::SpinQ2 => {}
    }
    Ok(out)
}

/// Bundle-route integrand `genus · [line factor] · ch(twist)`, comparable
/// with [`witten_theta`].
pub fn direct_integrand(
    ctx: &ManifoldContext,
    twist: Twist,
    convention: LineConvention,
    order: QExp,
) -> Result<QSeries<GradedPoly>, CharError> {
    let mut pre = genus_factor(ctx, twist);
    if twist == Twist::SpincQ {
        pre = &pre * &line_factor(ctx, convention.factor)?;
    }
    Ok(witten_direct(ctx, twist, convention.ch, order)?.mul_coeff(&pre))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionOutcome {
    pub convention: LineConvention,
    /// Nonzero `direct - theta` coefficients, by exponent.
    pub residuals: Vec<(QExp, GradedPoly)>,
}

impl ConventionOutcome {
    pub fn matches(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<QExp> {
        self.residuals.first().map(|(e, _)| *e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionReport {
    pub order: QExp,
    pub outcomes: Vec<ConventionOutcome>,
}

impl ConventionReport {
    /// The unique matching candidate, if exactly one matches.
    pub fn resolved(&self) -> Option<LineConvention> {
        let mut hits = self.outcomes.iter().filter(|o| o.matches());
        match (hits.next(), hits.next()) {
            (Some(o), None) => Some(o.convention),
            _ => None,
        }
    }
}

/// Compares the bundle route under each candidate reading of `L̃_C` and the
/// line factor against the theta route, coefficient by coefficient.
pub fn resolve_l_convention(ctx: &ManifoldContext, candidates: &[LineConvention], order: QExp) -> Result<ConventionReport, CharError> {
    let theta = witten_theta(ctx, Twist::SpincQ, order)?;
    let mut outcomes = Vec::new();
    for &convention in candidates {
        let direct = direct_integrand(ctx, Twist::SpincQ, convention, order)?;
        let diff = direct.try_sub(&theta)?;
        outcomes.push(ConventionOutcome { convention, residuals: diff.terms().map(|(e, c)| (e, c.clone())).collect() });
    }
    Ok(ConventionReport { order, outcomes })
}
