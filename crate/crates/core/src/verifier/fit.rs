use std::fmt;

use super::VerifyError;
use crate::modforms::{delta_eps, named_series, DeltaEps};
use crate::qseries::{QExp, QSeries};
use crate::ring::{int, GradedPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Sl2z,
    /// `Γ_0(2)`, basis in `δ_1, ε_1`.
    Gamma0_2,
    /// `Γ^0(2)`, basis in `δ_2, ε_2`.
    GammaUp0_2,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Sl2z => "SL2Z",
            Group::Gamma0_2 => "GAMMA0_2",
            Group::GammaUp0_2 => "GAMMA_UP0_2",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.to_ascii_uppercase().replace(['(', ')', '_', '-'], "").as_str() {
            "SL2Z" => Some(Group::Sl2z),
            "GAMMA02" | "Γ02" | "Γ₀2" => Some(Group::Gamma0_2),
            "GAMMAUP02" | "GAMMA^02" | "Γ^02" | "Γ⁰2" => Some(Group::GammaUp0_2),
            _ => None,
        }
    }

    /// Spacing of the exponents on which the fit is solved and checked.
    fn step(self) -> QExp {
        match self {
            Group::GammaUp0_2 => QExp::HALF,
            _ => QExp::ONE,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named basis series of a weight space, expanded to `order`.
pub fn basis(group: Group, weight: u32, order: QExp) -> Result<Vec<(String, QSeries<Rational>)>, VerifyError> {
    match group {
        Group::Sl2z => {
            let name = match weight {
                8 => "E4^2",
                10 => "E4*E6",
                14 => "E4^2*E6",
                _ => return Err(VerifyError::UnsupportedWeight { group, weight }),
            };
            Ok(vec![(name.to_string(), named_series(name, order)?)])
        }
        Group::Gamma0_2 | Group::GammaUp0_2 => {
            if weight % 4 != 2 || !(6..=14).contains(&weight) {
                return Err(VerifyError::UnsupportedWeight { group, weight });
            }
            let (d, e, label) = match group {
                Group::Gamma0_2 => (DeltaEps::Delta1, DeltaEps::Eps1, "1"),
                _ => (DeltaEps::Delta2, DeltaEps::Eps2, "2"),
            };
            let eight_delta = delta_eps(d, order).scale(&int(8));
            let eps = delta_eps(e, order);
            let half = weight as i64 / 2;
            let mut out = Vec::new();
            for r in 0..=(half - 1) / 2 {
                let series = eight_delta.pow(half - 2 * r)?.try_mul(&eps.pow(r)?)?;
                let mut name = format!("(8δ{label})^{}", half - 2 * r);
                if r > 0 {
                    name.push_str(&format!("*ε{label}"));
                    if r > 1 {
                        name.push_str(&format!("^{r}"));
                    }
                }
                out.push((name, series));
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularFitResult {
    pub group: Group,
    pub weight: u32,
    pub basis: Vec<String>,
    pub coefficients: Vec<GradedPoly>,
    pub fit_orders: Vec<QExp>,
    /// `series - fit` at every checked exponent past the fit orders, zeros included.
    pub residuals: Vec<(QExp, GradedPoly)>,
}

impl ModularFitResult {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    /// Highest exponent at which the residual was checked.
    pub fn certified_through(&self) -> Option<QExp> {
        self.residuals.last().map(|(e, _)| *e)
    }

    pub fn first_nonzero_residual(&self) -> Option<&(QExp, GradedPoly)> {
        self.residuals.iter().find(|(_, r)| !r.is_zero())
    }
}

/// Fit over `SL_2(Z)`: one basis form, coefficient read off at `q^0`.
pub fn fit_sl2z(series: &QSeries<GradedPoly>, weight: u32) -> Result<ModularFitResult, VerifyError> {
    fit(series, Group::Sl2z, weight)
}

/// Fit over a level-2 group with the `δ, ε` monomial basis.
pub fn fit_gamma(series: &QSeries<GradedPoly>, group: Group, weight: u32) -> Result<ModularFitResult, VerifyError> {
    fit(series, group, weight)
}

/// Solves the fit on the lowest `dim` exponents and checks every further
/// exponent on the group's grid up to the series' cap. Exponents off the grid
/// that carry a coefficient are reported as residuals too.
pub fn fit(series: &QSeries<GradedPoly>, group: Group, weight: u32) -> Result<ModularFitResult, VerifyError> {
    let order = series.order_cap();
    let step = group.step();
    let named = basis(group, weight, order)?;
    let fit_orders: Vec<QExp> = (0..named.len() as i64).map(|i| step * i).collect();
    let last = *fit_orders.last().expect("nonempty basis");
    let needed = last + step * 2;
    if order < needed {
        return Err(VerifyError::InsufficientOrder { have: order, need: needed });
    }
    let ring = series.ctx().clone();
    let columns: Vec<&QSeries<Rational>> = named.iter().map(|(_, s)| s).collect();
    let targets: Vec<GradedPoly> = fit_orders.iter().map(|&e| series.coefficient(e)).collect::<Result<_, _>>()?;
    let coefficients = match group {
        Group::Gamma0_2 => solve_dense(&columns, &fit_orders, &targets)?,
        _ => solve_triangular(&columns, &fit_orders, &targets)?,
    };

    let mut fitted = QSeries::zero(&ring, order);
    for (c, s) in coefficients.iter().zip(&columns) {
        fitted = fitted.try_add(&s.promote(&ring).mul_coeff(c))?;
    }
    let diff = series.try_sub(&fitted)?;
    let mut checked: Vec<QExp> = Vec::new();
    let mut e = last + step;
    while e <= order {
        checked.push(e);
        e = e + step;
    }
    for (e, _) in diff.terms() {
        if e > last && !checked.contains(&e) {
            checked.push(e);
        }
    }
    checked.sort();
    let residuals = checked.into_iter().map(|e| Ok((e, diff.coefficient(e)?))).collect::<Result<_, VerifyError>>()?;
    Ok(ModularFitResult { group, weight, basis: named.into_iter().map(|(n, _)| n).collect(), coefficients, fit_orders, residuals })
}

/// Forward substitution on `M[i][r] = [q^{e_i}] basis_r`. The bases are chosen
/// so that `M` is lower triangular with nonzero diagonal; anything else is an
/// internal error.
pub(crate) fn solve_triangular(
    columns: &[&QSeries<Rational>],
    rows: &[QExp],
    targets: &[GradedPoly],
) -> Result<Vec<GradedPoly>, VerifyError> {
    let m: Vec<Vec<Rational>> =
        rows.iter().map(|&e| columns.iter().map(|s| s.coefficient(e)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    for (i, row) in m.iter().enumerate() {
        if row[i] == int(0) || row[i + 1..].iter().any(|x| *x != int(0)) {
            return Err(VerifyError::SingularFit);
        }
    }
    let mut out: Vec<GradedPoly> = Vec::with_capacity(rows.len());
    for (i, row) in m.iter().enumerate() {
        let mut rhs = targets[i].clone();
        for (r, h) in out.iter().enumerate() {
            rhs = &rhs - &h.scale(&row[r]);
        }
        out.push(rhs.scale(&row[i].recip()));
    }
    Ok(out)
}

/// Gauss-Jordan inverse of the rational fit matrix applied to the targets.
/// Used for `Γ_0(2)`, whose basis forms all start at `q^0`.
fn solve_dense(columns: &[&QSeries<Rational>], rows: &[QExp], targets: &[GradedPoly]) -> Result<Vec<GradedPoly>, VerifyError> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|&e| columns.iter().map(|s| s.coefficient(e)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let mut inv: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != int(0)).ok_or(VerifyError::SingularFit)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && m[r][col] != int(0) {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &m[col][j] * &f;
                    m[r][j] = &m[r][j] - &a;
                    let b = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &b;
                }
            }
        }
    }
    Ok(inv
        .iter()
        .map(|row| {
            let mut acc = GradedPoly::zero(targets[0].ring());
            for (x, t) in row.iter().zip(targets) {
                acc.add_scaled(t, x);
            }
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{GeneratorTable, Ring};

    fn scalar_ring() -> Ring {
        GeneratorTable::new::<&str>(&[], 0).unwrap()
    }

    #[test]
    fn sl2z_trivial_fits() {
        let ring = scalar_ring();
        let order = QExp::int(5);
        let s = named_series("E4^2*E6", order).unwrap().promote(&ring);
        let fit = fit_sl2z(&s, 14).unwrap();
        assert_eq!(fit.coefficients[0].constant_term(), int(1));
        assert!(fit.passed());
        assert_eq!(fit.certified_through(), Some(order));
        let wrong = named_series("E6", order).unwrap().promote(&ring);
        let fit = fit_sl2z(&wrong, 14).unwrap();
        assert!(!fit.passed());
        assert!(matches!(fit_sl2z(&s, 12), Err(VerifyError::UnsupportedWeight { .. })));
    }

    #[test]
    fn gamma_basis_element() {
        let ring = scalar_ring();
        let order = QExp::int(3);
        let d = delta_eps(DeltaEps::Delta2, order).scale(&int(8));
        let e = delta_eps(DeltaEps::Eps2, order);
        let s = d.pow(3).unwrap().try_mul(&e).unwrap().promote(&ring);
        let fit = fit_gamma(&s, Group::GammaUp0_2, 10).unwrap();
        let c: Vec<Rational> = fit.coefficients.iter().map(|p| p.constant_term()).collect();
        assert_eq!(c, vec![int(0), int(1), int(0)]);
        assert!(fit.passed());
        assert_eq!(fit.basis, ["(8δ2)^5", "(8δ2)^3*ε2", "(8δ2)^1*ε2^2"]);
    }

    #[test]
    fn gamma0_dense_solve() {
        let ring = scalar_ring();
        let order = QExp::int(6);
        let d = delta_eps(DeltaEps::Delta1, order).scale(&int(8));
        let e = delta_eps(DeltaEps::Eps1, order);
        let s = d
            .pow(5)
            .unwrap()
            .try_mul(&e)
            .unwrap()
            .scale(&int(3))
            .try_sub(&d.try_mul(&e.pow(3).unwrap()).unwrap().scale(&int(2)))
            .unwrap()
            .promote(&ring);
        let fit = fit_gamma(&s, Group::Gamma0_2, 14).unwrap();
        let c: Vec<Rational> = fit.coefficients.iter().map(|p| p.constant_term()).collect();
        assert_eq!(c, vec![int(0), int(3), int(0), int(-2)]);
        assert!(fit.passed());
    }

    #[test]
    fn needs_extra_orders() {
        let ring = scalar_ring();
        let s = named_series("E4^2", QExp::ONE).unwrap().promote(&ring);
        assert!(matches!(fit_gamma(&s, Group::GammaUp0_2, 14), Err(VerifyError::InsufficientOrder { .. })));
    }
}
