//! Compares the bundle and theta presentations of the spin^c series under
//! each reading of the reduced line bundle and its degree-zero factor.

use anomaly_forms::charforms::{resolve_l_convention, LineCh, LineConvention, LineFactor, ManifoldContext};
use anomaly_forms::qseries::QExp;

fn main() {
    let mut candidates = LineConvention::CANDIDATES.to_vec();
    candidates.push(LineConvention { ch: LineCh::Trivial, factor: LineFactor::Sinh });
    for ctx in [ManifoldContext::d10c(0), ManifoldContext::d14c(0)] {
        for n in [2, 3] {
            let report = resolve_l_convention(&ctx, &candidates, QExp::int(n)).expect("routes expand");
            println!("{ctx}, through q^{n}:");
            for o in &report.outcomes {
                match o.first_mismatch() {
                    None => println!("  {:<14} matches", o.convention.to_string()),
                    Some(e) => println!("  {:<14} differs from q^{e}", o.convention.to_string()),
                }
            }
            match report.resolved() {
                Some(c) => println!("  resolved: {c}"),
                None => println!("  unresolved"),
            }
        }
    }
}
