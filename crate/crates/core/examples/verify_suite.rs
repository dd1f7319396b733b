//! Runs every registered identity check and prints one line per check,
//! followed by the outcome under each line-bundle convention.

use anomaly_forms::verifier::{run_suite, VerifyOptions};

fn main() {
    let (reports, summary) = run_suite("*", &VerifyOptions::default()).expect("suite runs");
    for r in &reports {
        println!("{}", r.summary_line());
        for c in r.constants.iter().filter(|c| !c.matches()) {
            println!("    constant {}: printed {} derived {}", c.name, c.expected, c.computed);
        }
    }
    println!("{summary}");
}
