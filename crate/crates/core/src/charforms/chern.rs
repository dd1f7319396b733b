use std::ops::{Add, Mul, Neg, Sub};

use super::{CharError, ManifoldContext, Structure};
use crate::ring::{inv_factorial, rat, GradedPoly, Rational};

/// Chern character of a (possibly virtual) bundle, all degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernCharacterData {
    value: GradedPoly,
}

impl ChernCharacterData {
    pub fn new(value: GradedPoly) -> Self {
        ChernCharacterData { value }
    }

    /// Trivial bundle of (virtual) rank `r`.
    pub fn trivial(ctx: &ManifoldContext, r: Rational) -> Self {
        ChernCharacterData { value: GradedPoly::constant(ctx.ring(), r) }
    }

    pub fn value(&self) -> &GradedPoly {
        &self.value
    }

    pub fn into_value(self) -> GradedPoly {
        self.value
    }

    pub fn rank(&self) -> Rational {
        self.value.constant_term()
    }

    /// `ψ^k`: the degree-`2d` part is scaled by `k^d`.
    pub fn adams(&self, k: i64) -> Self {
        ChernCharacterData { value: self.value.scale_by_degree(k) }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        ChernCharacterData { value: &self.value * &other.value }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ChernCharacterData { value: self.value.scale(r) }
    }

    /// `Λ²x = (x² - ψ²x)/2`
    pub fn lambda2(&self) -> Self {
        let sq = &self.value * &self.value;
        ChernCharacterData { value: (&sq - &self.adams(2).value).scale(&rat(1, 2)) }
    }

    /// `S²x = (x² + ψ²x)/2`
    pub fn sym2(&self) -> Self {
        let sq = &self.value * &self.value;
        ChernCharacterData { value: (&sq + &self.adams(2).value).scale(&rat(1, 2)) }
    }

    /// `Λ³x = (x³ - 3 x ψ²x + 2 ψ³x)/6`
    pub fn lambda3(&self) -> Self {
        let x = &self.value;
        let cube = &(x * x) * x;
        let mixed = (x * &self.adams(2).value).scale(&rat(3, 1));
        let psi3 = self.adams(3).value.scale(&rat(2, 1));
        ChernCharacterData { value: (&(&cube - &mixed) + &psi3).scale(&rat(1, 6)) }
    }
}

impl Add for &ChernCharacterData {
    type Output = ChernCharacterData;
    fn add(self, rhs: &ChernCharacterData) -> ChernCharacterData {
        ChernCharacterData { value: &self.value + &rhs.value }
    }
}

impl Sub for &ChernCharacterData {
    type Output = ChernCharacterData;
    fn sub(self, rhs: &ChernCharacterData) -> ChernCharacterData {
        ChernCharacterData { value: &self.value - &rhs.value }
    }
}

impl Mul for &ChernCharacterData {
    type Output = ChernCharacterData;
    fn mul(self, rhs: &ChernCharacterData) -> ChernCharacterData {
        self.tensor(rhs)
    }
}

impl Neg for &ChernCharacterData {
    type Output = ChernCharacterData;
    fn neg(self) -> ChernCharacterData {
        ChernCharacterData { value: -&self.value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaOp {
    Lambda2,
    Lambda3,
    Sym2,
    Tensor,
}

/// λ-ring operations on Chern characters. `Tensor` multiplies all arguments;
/// the others take exactly one.
pub fn lambda_sym(op: LambdaOp, args: &[&ChernCharacterData]) -> Result<ChernCharacterData, CharError> {
    match (op, args) {
        (LambdaOp::Lambda2, [x]) => Ok(x.lambda2()),
        (LambdaOp::Lambda3, [x]) => Ok(x.lambda3()),
        (LambdaOp::Sym2, [x]) => Ok(x.sym2()),
        (LambdaOp::Tensor, [first, rest @ ..]) => Ok(rest.iter().fold((*first).clone(), |acc, y| acc.tensor(y))),
        _ => Err(CharError::Arity(args.len())),
    }
}

/// `ch(T̃_C M) = Σ_k 2 s_k/(2k)!`, rank 0.
pub fn ch_tangent(ctx: &ManifoldContext) -> ChernCharacterData {
    let mut value = ctx.zero();
    for k in 1..=ctx.max_power_sum() {
        value.add_scaled(&ctx.s(k).expect("power sums up to the cap"), &(inv_factorial(2 * k) * rat(2, 1)));
    }
    ChernCharacterData { value }
}

/// Reading of the reduced line bundle `L̃_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineCh {
    /// `e^c + e^{-c} - 2`: complexified `L_R` minus rank 2.
    Real2,
    /// `e^c - 1`: the complex line bundle minus rank 1.
    Line1,
    /// `0`; a deliberately wrong candidate.
    Trivial,
}

impl LineCh {
    pub fn name(self) -> &'static str {
        match self {
            LineCh::Real2 => "REAL2",
            LineCh::Line1 => "LINE1",
            LineCh::Trivial => "TRIVIAL",
        }
    }
}

pub fn ch_line(ctx: &ManifoldContext, convention: LineCh) -> Result<ChernCharacterData, CharError> {
    if ctx.structure() != Structure::SpinC {
        return Err(CharError::NotSpinC);
    }
    let c = ctx.c()?;
    let ec = c.exp()?;
    let two = GradedPoly::constant(ctx.ring(), rat(2, 1));
    let value = match convention {
        LineCh::Real2 => &(&ec + &(-&c).exp()?) - &two,
        LineCh::Line1 => &ec - &ctx.one(),
        LineCh::Trivial => ctx.zero(),
    };
    Ok(ChernCharacterData { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_and_line() {
        let ctx = ManifoldContext::d12(0);
        let t = ch_tangent(&ctx);
        assert_eq!(t.rank(), rat(0, 1));
        assert_eq!(t.value().to_string(), "s1 + 1/12 s2 + 1/360 s3");
        assert_eq!(t.adams(2).value().component(4).to_string(), "4 s1");
        assert!(matches!(ch_line(&ctx, LineCh::Real2), Err(CharError::NotSpinC)));
        let c = ManifoldContext::d10c(0);
        let l = ch_line(&c, LineCh::Real2).unwrap();
        assert!(l.value().component(2).is_zero());
        assert_eq!(l.value().component(4).to_string(), "c^2");
    }

    #[test]
    fn line_bundle_lambda() {
        let ctx = ManifoldContext::d10c(0);
        let e = ChernCharacterData::new(ctx.c().unwrap().exp().unwrap());
        assert!(e.lambda2().value().is_zero());
        assert_eq!(e.sym2(), e.adams(2));
        assert_eq!(lambda_sym(LambdaOp::Tensor, &[&e, &e]).unwrap(), e.adams(2));
        assert!(lambda_sym(LambdaOp::Lambda2, &[&e, &e]).is_err());
    }
}
