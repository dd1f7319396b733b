use super::{CharError, ManifoldContext};
use crate::ring::taylor::Taylor;
use crate::ring::{rat, GradedPoly};

/// `exp(Σ_k a_k s_k)` where `a_k` is the `z^{2k}` coefficient of `log f(z)`.
fn multiplicative(ctx: &ManifoldContext, f: &Taylor) -> GradedPoly {
    let log = f.log().expect("genus series has constant term 1");
    let mut exponent = ctx.zero();
    for k in 1..=ctx.max_power_sum() {
        exponent.add_scaled(&ctx.s(k).expect("power sums up to the cap"), &log.coeff(2 * k as usize));
    }
    exponent.exp().expect("nilpotent exponent")
}

fn max_power(ctx: &ManifoldContext) -> usize {
    2 * ctx.max_power_sum() as usize
}

/// `Â`: one factor `(z/2)/sinh(z/2)` per root pair.
pub fn a_hat(ctx: &ManifoldContext) -> GradedPoly {
    let n = max_power(ctx);
    let f = Taylor::sinh_over_x(n).rescale(&rat(1, 2)).recip().expect("unit constant");
    multiplicative(ctx, &f)
}

/// `L̂` normalized to degree-0 part 1: one factor `(z/2)/tanh(z/2)` per root
/// pair. The Hirzebruch form with its `2^{root_pairs}` prefactor is
/// [`l_hat_hirzebruch`].
pub fn l_hat(ctx: &ManifoldContext) -> GradedPoly {
    let n = max_power(ctx);
    let half = rat(1, 2);
    let f = Taylor::sinh_over_x(n).rescale(&half).recip().expect("unit constant").mul(&Taylor::cosh(n).rescale(&half));
    multiplicative(ctx, &f)
}

/// `2^{root_pairs} L̂`.
pub fn l_hat_hirzebruch(ctx: &ManifoldContext) -> GradedPoly {
    l_hat(ctx).scale(&rat(1i64 << ctx.root_pairs(), 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnomalyClass {
    A,
    A1,
    A2,
    A3,
}

impl AnomalyClass {
    pub fn name(self) -> &'static str {
        match self {
            AnomalyClass::A => "A",
            AnomalyClass::A1 => "A1",
            AnomalyClass::A2 => "A2",
            AnomalyClass::A3 => "A3",
        }
    }
}

/// Degree-4 anomaly classes with `p1(M) = s1`, `p1(L_R) = c^2`,
/// `c2(W)/30 = -g1`.
pub fn anomaly_class(ctx: &ManifoldContext, which: AnomalyClass) -> Result<GradedPoly, CharError> {
    let gi = || ctx.g(0, 1);
    let gj = || ctx.g(1, 1);
    Ok(match which {
        AnomalyClass::A => &(&(&ctx.s(1)? - &ctx.c()?.pow(2)) - &gi()?) - &gj()?,
        AnomalyClass::A1 => &(&ctx.s(1)? - &ctx.c()?.pow(2)) - &gi()?,
        AnomalyClass::A2 => -&(&gi()? + &gj()?),
        AnomalyClass::A3 => -&gi()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_hat_low_degrees() {
        let ctx = ManifoldContext::d12(0);
        let a = a_hat(&ctx);
        assert_eq!(a.component(0), ctx.one());
        assert_eq!(a.component(4).to_string(), "-1/24 s1");
        assert_eq!(a.component(8).to_string(), "1/1152 s1^2 + 1/2880 s2");
    }

    #[test]
    fn l_hat_low_degrees() {
        let ctx = ManifoldContext::d12(0);
        assert_eq!(l_hat(&ctx).component(4).to_string(), "1/12 s1");
        assert_eq!(l_hat_hirzebruch(&ctx).constant_term(), rat(64, 1));
    }

    #[test]
    fn anomaly_classes() {
        let ctx = ManifoldContext::d14c(2);
        assert_eq!(anomaly_class(&ctx, AnomalyClass::A).unwrap().to_string(), "-c^2 + s1 - gi1 - gj1");
        let diff = &anomaly_class(&ctx, AnomalyClass::A).unwrap() - &anomaly_class(&ctx, AnomalyClass::A1).unwrap();
        assert_eq!(diff.to_string(), "-gj1");
        assert!(anomaly_class(&ManifoldContext::d12(2), AnomalyClass::A).is_err());
        let a2 = anomaly_class(&ctx, AnomalyClass::A2).unwrap();
        let killed = a2.substitute(&[("gi1", ctx.zero()), ("gj1", ctx.zero())]).unwrap();
        assert!(killed.is_zero());
    }
}
