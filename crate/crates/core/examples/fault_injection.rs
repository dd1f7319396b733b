//! Shows that the checks notice wrong inputs: a misprinted constant, a
//! perturbed fit coefficient and a wrong line-bundle convention.

use anomaly_forms::charforms::{LineCh, LineConvention, LineFactor};
use anomaly_forms::ring::int;
use anomaly_forms::verifier::{verify_theorem, ConstantOverride, VerifyOptions};

fn main() {
    let misprint = VerifyOptions { overrides: vec![ConstantOverride::parse("T3.3:1=2241").unwrap()], ..Default::default() };
    println!("{}", verify_theorem("T3.3", &misprint).unwrap().summary_line());

    let perturbed = VerifyOptions { order: anomaly_forms::qseries::QExp::int(3), perturb_h: Some((1, int(1))), ..Default::default() };
    println!("{}", verify_theorem("L3.2", &perturbed).unwrap().summary_line());

    let line1 = LineConvention { ch: LineCh::Line1, factor: LineFactor::Sinh };
    let wrong = VerifyOptions { convention: line1, ..Default::default() };
    println!("{}", verify_theorem("C2.4", &wrong).unwrap().summary_line());
}
