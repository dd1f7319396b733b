//! Evaluates every registered transformation law in floating point at the
//! default sample points.

use anomaly_forms::modforms::{check_transformation_numeric, DEFAULT_TAUS, LAW_IDS};
use anomaly_forms::qseries::QExp;

fn main() {
    let order = QExp::int(40);
    for law in LAW_IDS {
        let line: Vec<String> = DEFAULT_TAUS
            .iter()
            .map(|&tau| {
                let c = check_transformation_numeric(law, tau, order, 1e-9).expect("law evaluates");
                format!("{:>9.1e}{}", c.residual, if c.passed { "" } else { "!" })
            })
            .collect();
        println!("{law:<14} {}", line.join(" "));
    }
}
