//! Prints the scalar q-series the checks are built from, then the first
//! coefficients of a characteristic-form series.

use anomaly_forms::charforms::{a_hat, witten_theta, ManifoldContext, Twist};
use anomaly_forms::modforms::{named_series, SERIES_NAMES};
use anomaly_forms::qseries::QExp;

fn main() {
    let order = QExp::int(3);
    for name in SERIES_NAMES {
        println!("{name:<14} {}", named_series(name, order).expect("registered series"));
    }

    let ctx = ManifoldContext::d12(0);
    println!("\nÂ in {ctx}:\n  {}", a_hat(&ctx));
    let q2 = witten_theta(&ctx, Twist::SpinQ2, QExp::ONE).expect("series builds");
    for (e, c) in q2.terms() {
        println!("Q2 at q^{e}: {}", c.component(4));
    }
}
