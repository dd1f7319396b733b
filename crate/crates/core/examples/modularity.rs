//! Fits the top-degree component of each anomaly series against its
//! modular-form basis and reports how far the residuals vanish.

use std::time::Instant;

use anomaly_forms::charforms::LineConvention;
use anomaly_forms::qseries::QExp;
use anomaly_forms::verifier::{build_q_top, fit, SeriesVariant, VariantId};

fn main() {
    let order = QExp::int(6);
    let mut variants: Vec<SeriesVariant> = VariantId::ALL.into_iter().map(SeriesVariant::new).collect();
    variants.push(SeriesVariant::twelve(VariantId::Q1_12, 1).unwrap());
    variants.push(SeriesVariant::twelve(VariantId::Q2_12, 1).unwrap());
    for v in variants {
        let start = Instant::now();
        let series = build_q_top(&v, order, LineConvention::RESOLVED).expect("series builds");
        let result = fit(&series, v.group(), v.weight()).expect("fit solves");
        let status = match result.first_nonzero_residual() {
            None => format!("residuals vanish through q^{}", result.certified_through().unwrap()),
            Some((e, _)) => format!("residual at q^{e}"),
        };
        println!(
            "{:<16} weight {:>2} over {:<11} {status}  ({} ms)",
            v.id.name(),
            v.weight(),
            v.group().name(),
            start.elapsed().as_millis()
        );
    }
}
