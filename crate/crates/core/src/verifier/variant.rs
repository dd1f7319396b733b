use std::fmt;

use super::{Group, VerifyError};
use crate::charforms::{anomaly_class, direct_integrand, e8_character, witten_theta, AnomalyClass, LineConvention, ManifoldContext, Twist};
use crate::modforms::{eisenstein, phi_pow};
use crate::qseries::{QExp, QSeries};
use crate::ring::{rat, GradedPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantId {
    /// 14-dim spin^c, two E8 bundles.
    Q14TwoBundles,
    /// 14-dim spin^c, one E8 bundle.
    Q14OneBundle,
    /// 10-dim spin^c, one E8 bundle.
    R10OneBundle,
    /// 12-dim spin, `Λ_{q^m}(T̃)` twist.
    Q1_12,
    /// 12-dim spin, `Λ_{-q^{m-1/2}}(T̃)` twist.
    Q2_12,
}

impl VariantId {
    pub const ALL: [VariantId; 5] =
        [VariantId::Q14TwoBundles, VariantId::Q14OneBundle, VariantId::R10OneBundle, VariantId::Q1_12, VariantId::Q2_12];

    pub fn name(self) -> &'static str {
        match self {
            VariantId::Q14TwoBundles => "Q14_TWO_BUNDLES",
            VariantId::Q14OneBundle => "Q14_ONE_BUNDLE",
            VariantId::R10OneBundle => "R10_ONE_BUNDLE",
            VariantId::Q1_12 => "Q1_12",
            VariantId::Q2_12 => "Q2_12",
        }
    }
}

/// One of the anomaly q-series together with its manifold context.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesVariant {
    pub id: VariantId,
    pub context: ManifoldContext,
}

impl SeriesVariant {
    /// The variant with its standard bundle count; the 12-dim series
    /// default to two bundles.
    pub fn new(id: VariantId) -> Self {
        match id {
            VariantId::Q14TwoBundles => Self { id, context: ManifoldContext::d14c(2) },
            VariantId::Q14OneBundle => Self { id, context: ManifoldContext::d14c(1) },
            VariantId::R10OneBundle => Self { id, context: ManifoldContext::d10c(1) },
            VariantId::Q1_12 | VariantId::Q2_12 => Self { id, context: ManifoldContext::d12(2) },
        }
    }

    /// 12-dim series with `bundles` E8 bundles (1 or 2).
    pub fn twelve(id: VariantId, bundles: usize) -> Result<Self, VerifyError> {
        if !matches!(id, VariantId::Q1_12 | VariantId::Q2_12) || !(1..=2).contains(&bundles) {
            return Err(VerifyError::BadVariant(format!("{} with {bundles} bundle(s)", id.name())));
        }
        Ok(Self { id, context: ManifoldContext::d12(bundles) })
    }

    /// Accepts `Q1_12`, `Q2_12` (two bundles) and `Q1_12_ONE`, `Q2_12_ONE`.
    pub fn parse(name: &str) -> Result<Self, VerifyError> {
        let upper = name.to_ascii_uppercase();
        let (base, one) = match upper.strip_suffix("_ONE") {
            Some(b) => (b.to_string(), true),
            None => (upper.clone(), false),
        };
        let id = VariantId::ALL.into_iter().find(|v| v.name() == base).ok_or_else(|| VerifyError::BadVariant(name.to_string()))?;
        if one {
            Self::twelve(id, 1)
        } else {
            Ok(Self::new(id))
        }
    }

    pub fn weight(&self) -> u32 {
        match self.id {
            VariantId::Q14TwoBundles => 14,
            VariantId::Q14OneBundle => 10,
            VariantId::R10OneBundle => 8,
            VariantId::Q1_12 | VariantId::Q2_12 => 6 + 4 * self.context.e8_bundles() as u32,
        }
    }

    pub fn group(&self) -> Group {
        match self.id {
            VariantId::Q1_12 => Group::Gamma0_2,
            VariantId::Q2_12 => Group::GammaUp0_2,
            _ => Group::Sl2z,
        }
    }

    pub fn twist(&self) -> Twist {
        match self.id {
            VariantId::Q1_12 => Twist::SpinQ1,
            VariantId::Q2_12 => Twist::SpinQ2,
            _ => Twist::SpincQ,
        }
    }

    pub fn anomaly(&self) -> AnomalyClass {
        match (self.id, self.context.e8_bundles()) {
            (VariantId::Q14TwoBundles, _) => AnomalyClass::A,
            (VariantId::Q14OneBundle | VariantId::R10OneBundle, _) => AnomalyClass::A1,
            (_, 2) => AnomalyClass::A2,
            _ => AnomalyClass::A3,
        }
    }

    pub fn top_degree(&self) -> u32 {
        self.context.dimension()
    }
}

impl fmt::Display for SeriesVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.id.name(), self.context)
    }
}

/// How the twisting bundle is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Adams-operation generating functions under a line-bundle convention.
    Direct(LineConvention),
    /// Theta quotients.
    Theta,
}

/// `exp(E2 A/24) · genus · ch(twist) · φ^{8k} · ∏ ch(V_b)`, full forms (no
/// component extraction), truncated at `order`. For `Q1_12` the genus is
/// `2^6 L̂`.
pub fn build_q(variant: &SeriesVariant, order: QExp, convention: LineConvention) -> Result<QSeries<GradedPoly>, VerifyError> {
    build_q_via(variant, order, Route::Direct(convention))
}

pub fn build_q_via(variant: &SeriesVariant, order: QExp, route: Route) -> Result<QSeries<GradedPoly>, VerifyError> {
    if order < QExp::int(2) {
        return Err(VerifyError::InsufficientOrder { have: order, need: QExp::int(2) });
    }
    let ctx = &variant.context;
    let ring = ctx.ring();
    let a = anomaly_class(ctx, variant.anomaly())?;
    let e2 = eisenstein(2, order)?.promote(ring).mul_coeff(&a.scale(&rat(1, 24))).exp()?;
    let integrand = match route {
        Route::Direct(conv) => direct_integrand(ctx, variant.twist(), conv, order)?,
        Route::Theta => witten_theta(ctx, variant.twist(), order)?,
    };
    let mut out = e2.try_mul(&integrand)?;
    let bundles = ctx.e8_bundles();
    out = out.try_mul(&phi_pow(8 * bundles as i64, order).promote(ring))?;
    for b in 0..bundles {
        out = out.try_mul(&e8_character(ctx, b, order)?)?;
    }
    Ok(out.truncate(order))
}

/// Top-degree component of [`build_q`].
pub fn build_q_top(variant: &SeriesVariant, order: QExp, convention: LineConvention) -> Result<QSeries<GradedPoly>, VerifyError> {
    Ok(build_q(variant, order, convention)?.component(variant.top_degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charforms::{a_hat, ch_tangent, l_hat_hirzebruch};

    #[test]
    fn q2_leading_terms() {
        let v = SeriesVariant::new(VariantId::Q2_12);
        let q = build_q(&v, QExp::int(2), LineConvention::RESOLVED).unwrap();
        let ctx = &v.context;
        let ea = anomaly_class(ctx, AnomalyClass::A2).unwrap().scale(&rat(1, 24)).exp().unwrap();
        let g = &ea * &a_hat(ctx);
        assert_eq!(q.coefficient(QExp::ZERO).unwrap(), g);
        assert_eq!(q.coefficient(QExp::HALF).unwrap(), -&(&g * ch_tangent(ctx).value()));
    }

    #[test]
    fn q1_prefactor() {
        let v = SeriesVariant::new(VariantId::Q1_12);
        let q = build_q(&v, QExp::int(2), LineConvention::RESOLVED).unwrap();
        let ctx = &v.context;
        let ea = anomaly_class(ctx, AnomalyClass::A2).unwrap().scale(&rat(1, 24)).exp().unwrap();
        let lead = q.coefficient(QExp::ZERO).unwrap();
        assert_eq!(lead, &ea * &l_hat_hirzebruch(ctx));
        assert_eq!(lead.constant_term(), rat(64, 1));
    }

    #[test]
    fn metadata() {
        let v = SeriesVariant::parse("q2_12_one").unwrap();
        assert_eq!((v.weight(), v.group(), v.anomaly()), (10, Group::GammaUp0_2, AnomalyClass::A3));
        assert_eq!(SeriesVariant::new(VariantId::R10OneBundle).weight(), 8);
        assert!(SeriesVariant::parse("Q3").is_err());
    }
}
