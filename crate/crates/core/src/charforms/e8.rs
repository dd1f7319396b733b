use super::{CharError, ChernCharacterData, ManifoldContext};
use crate::modforms::{phi_pow, theta_const, theta_ratio, ThetaKind};
use crate::qseries::{QExp, QSeries};
use crate::ring::{rat, GeneratorTable, GradedPoly};

/// `ch(V_b)` from the half-sum of theta products over the eight formal roots.
/// Each product is `NΘ_k(0)^8 exp(Σ_m a_{k,m}(q) g_{b,m})`, with `a_{k,m}` the
/// `w^{2m}` coefficient of `log(NΘ_k(w)/NΘ_k(0))`.
pub fn e8_character(ctx: &ManifoldContext, b: usize, order: QExp) -> Result<QSeries<GradedPoly>, CharError> {
    if b >= ctx.e8_bundles() {
        return Err(CharError::TooManyBundles(b + 1));
    }
    let ring = ctx.ring();
    let wring = GeneratorTable::new(&[("w", 2)], ctx.degree_cap())?;
    let w = GradedPoly::generator(&wring, "w")?;
    let gens: Vec<GradedPoly> = (1..=ctx.max_power_sum()).map(|m| ctx.g(b, m)).collect::<Result<_, _>>()?;
    let mut total = QSeries::zero(ring, order);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let log = theta_ratio(kind, &w, order)?.log()?;
        let exponent = log.map_coeffs(ring, |p| {
            let mut acc = GradedPoly::zero(ring);
            for (m, g) in gens.iter().enumerate() {
                acc.add_scaled(g, &p.coefficient(&[2 * (m as u8 + 1)]));
            }
            acc
        });
        let constant = theta_const(kind, order).pow(8)?.promote(ring);
        total = total.try_add(&exponent.exp()?.try_mul(&constant)?)?;
    }
    let out = total.scale(&rat(1, 2)).try_mul(&phi_pow(-8, order).promote(ring))?;
    Ok(out.truncate(order))
}

/// `q^n` coefficient of `ch(V_b)`: `n = 1` gives `ch(W_b)`, `n = 2` gives
/// `ch(W̄_b)`.
pub fn extract_w(character: &QSeries<GradedPoly>, n: i64) -> Result<ChernCharacterData, CharError> {
    Ok(ChernCharacterData::new(character.coefficient(QExp::int(n))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein;

    #[test]
    fn ranks() {
        let ctx = ManifoldContext::d12(1);
        let v = e8_character(&ctx, 0, QExp::int(3)).unwrap();
        let w = extract_w(&v, 1).unwrap();
        assert_eq!(w.rank(), rat(248, 1));
        assert_eq!(w.value().component(4), ctx.g(0, 1).unwrap().scale(&rat(30, 1)));
        assert_eq!(extract_w(&v, 2).unwrap().rank(), rat(4124, 1));
        let zero = ctx.zero();
        let ranks = v.substitute(&[("gi1", zero.clone()), ("gi2", zero.clone()), ("gi3", zero)]).unwrap().to_scalar().unwrap();
        let oracle = eisenstein(4, QExp::int(3)).unwrap() * phi_pow(-8, QExp::int(3));
        assert_eq!(ranks, oracle);
    }
}
