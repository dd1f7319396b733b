//! Expands the E8 basic-representation character and reads off the bundles
//! `W` and `W̄` from its first two coefficients.

use anomaly_forms::charforms::{e8_character, extract_w, ManifoldContext};
use anomaly_forms::qseries::QExp;

fn main() {
    let ctx = ManifoldContext::d12(1);
    let v = e8_character(&ctx, 0, QExp::int(2)).expect("character expands");
    for n in [1, 2] {
        let w = extract_w(&v, n).expect("coefficient present");
        println!("q^{n}: rank {}", w.rank());
        for d in [4, 8, 12] {
            println!("  degree {d:>2}: {}", w.value().component(d));
        }
    }
    println!("c2(W) = {}", ctx.c2_w(0).expect("bundle present"));
}
