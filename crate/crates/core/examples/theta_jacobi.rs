//! Checks Jacobi's identities for the theta constants exactly, order by order.

use anomaly_forms::modforms::{eisenstein, phi_pow, theta_const, ThetaKind};
use anomaly_forms::qseries::QExp;
use anomaly_forms::ring::{int, rat};

fn main() {
    for n in [2, 4, 8, 12] {
        let order = QExp::int(n);
        let th = |k| theta_const(k, order);
        let product = th(ThetaKind::Theta1) * th(ThetaKind::Theta2) * th(ThetaKind::Theta3);
        let eta_cubed = phi_pow(3, order).scale(&int(2)).shift(QExp::EIGHTH).truncate(order);
        let eighth = |k| th(k).pow(8).expect("positive power");
        let e4 = (eighth(ThetaKind::Theta1) + eighth(ThetaKind::Theta2) + eighth(ThetaKind::Theta3)).scale(&rat(1, 2));
        println!(
            "through q^{n:<2}  θ1θ2θ3 = 2q^(1/8)φ³: {}   ½Σθ⁸ = E4: {}",
            product == eta_cubed,
            e4 == eisenstein(4, order).expect("weight 4")
        );
    }
}
