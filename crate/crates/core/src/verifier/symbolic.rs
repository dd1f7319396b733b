//! The 12-dimensional fits redone over formal bundle symbols.
//!
//! Every coefficient of `Q2` through `q^{3/2}` is `e^{A/24}Â · ch(V)` for a
//! virtual bundle `V` built from `T̃`, `Λ²T̃`, `Λ³T̃`, `W_b` and the anomaly
//! class `A`. Writing `V` as a polynomial in those symbols and solving the
//! level-2 fit over that polynomial ring recovers the integer constants of
//! each fitted coefficient and each derived identity.

use super::fit::{basis, solve_triangular, Group};
use super::VerifyError;
use crate::modforms::{eisenstein, phi_pow};
use crate::qseries::{QExp, QSeries};
use crate::ring::{int, rat, GeneratorTable, GradedPoly, Rational, Ring};

pub(crate) struct Symbolic {
    pub ring: Ring,
    /// Fitted coefficients of `Q2` over the symbol ring.
    pub h: Vec<GradedPoly>,
    /// `q^0` and `q^1` coefficients of `Q1` predicted from `h`.
    pub q1: [GradedPoly; 2],
}

impl Symbolic {
    pub fn sym(&self, name: &str) -> GradedPoly {
        GradedPoly::generator(&self.ring, name).expect("registered symbol")
    }

    /// Coefficient of a product of symbols in `p`.
    pub fn coeff(&self, p: &GradedPoly, monomial: &[&str]) -> Rational {
        let mut exps = vec![0u8; self.ring.len()];
        for name in monomial {
            exps[self.ring.index_of(name).expect("registered symbol")] += 1;
        }
        p.coefficient(&exps)
    }

    pub fn constant(&self, r: Rational) -> GradedPoly {
        GradedPoly::constant(&self.ring, r)
    }
}

pub(crate) fn symbolic_route(bundles: usize) -> Result<Symbolic, VerifyError> {
    let labels = ["Wi", "Wj"];
    let mut names = vec!["T", "L2", "L3"];
    names.extend(&labels[..bundles]);
    names.push("A");
    let gens: Vec<(&str, u32)> = names.iter().map(|n| (*n, 2)).collect();
    let ring = GeneratorTable::new(&gens, 6)?;
    let g = |n: &str| GradedPoly::generator(&ring, n).expect("symbol");
    let order = QExp::new(3, 2)?;
    let one = GradedPoly::one(&ring);

    let drift = eisenstein(2, order)?.try_sub(&QSeries::one(&(), order))?.scale(&rat(1, 24));
    let e2 = drift.promote(&ring).mul_coeff(&g("A")).exp()?;
    let t = g("T");
    let sym_t = QSeries::from_terms(&ring, order, [(QExp::ZERO, one.clone()), (QExp::ONE, t.clone())]);
    let lam_half =
        QSeries::from_terms(&ring, order, [(QExp::ZERO, one.clone()), (QExp::HALF, -&t), (QExp::ONE, g("L2")), (order, -&g("L3"))]);
    let lam_three_halves = QSeries::from_terms(&ring, order, [(QExp::ZERO, one.clone()), (order, -&t)]);
    let mut q2 = e2.try_mul(&sym_t)?.try_mul(&lam_half)?.try_mul(&lam_three_halves)?;
    q2 = q2.try_mul(&phi_pow(8 * bundles as i64, order).promote(&ring))?;
    for label in &labels[..bundles] {
        q2 = q2.try_mul(&QSeries::from_terms(&ring, order, [(QExp::ZERO, one.clone()), (QExp::ONE, g(label))]))?;
    }

    let weight = 6 + 4 * bundles as u32;
    let up = basis(Group::GammaUp0_2, weight, order)?;
    let rows: Vec<QExp> = (0..up.len() as i64).map(|i| QExp::HALF * i).collect();
    let targets: Vec<GradedPoly> = rows.iter().map(|&e| q2.coefficient(e)).collect::<Result<_, _>>()?;
    let columns: Vec<&QSeries<Rational>> = up.iter().map(|(_, s)| s).collect();
    let h = solve_triangular(&columns, &rows, &targets)?;

    let down = basis(Group::Gamma0_2, weight, QExp::ONE)?;
    let predict = |e: QExp| -> Result<GradedPoly, VerifyError> {
        let mut acc = GradedPoly::zero(&ring);
        for (hr, (_, s)) in h.iter().zip(&down) {
            acc.add_scaled(hr, &(s.coefficient(e)? * int(64)));
        }
        Ok(acc)
    };
    let q1 = [predict(QExp::ZERO)?, predict(QExp::ONE)?];
    Ok(Symbolic { ring, h, q1 })
}
