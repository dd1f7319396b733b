//! Fits the 12-dimensional `Q2` series over the level-2 basis, compares the
//! coefficients with their closed forms, then checks the `Q1`/`Q2` relation.

use anomaly_forms::qseries::QExp;
use anomaly_forms::verifier::{check_h_displays, swap_pair, DisplayConstants};

fn main() {
    let order = QExp::int(3);
    for bundles in [2, 1] {
        let check = check_h_displays(bundles, order, &DisplayConstants::printed(bundles)).expect("fit solves");
        println!("{bundles} bundle(s), weight {}:", check.fit.weight);
        for (name, h) in check.fit.basis.iter().zip(&check.fit.coefficients) {
            println!("  {name:<16} {} terms", h.len());
        }
        for c in &check.constants {
            println!("  {:<8} printed {:>8} derived {:>8}", c.name, c.expected, c.computed);
        }
        println!("  displays match: {}", check.passed());

        let pair = swap_pair(bundles, order, None).expect("pair expands");
        let prefactor = pair.prefactor().map(|p| p.to_string()).unwrap_or_else(|| "none".into());
        println!("  Q1 vs fitted Q2: passed {}, prefactor {prefactor}", pair.passed());
    }
}
