use rayon::prelude::*;
use wildmatch::WildMatch;

use super::report::{Summary, TheoremReport};
use super::theorems::{verify_theorem, VerifyOptions, THEOREM_IDS};
use super::VerifyError;

/// Registered ids matching `filter`. A filter starting with a letter is
/// matched against the full id; otherwise against the number of theorems and
/// corollaries (`3.*` selects T3.x and C3.x). `*` selects everything.
pub fn select(filter: &str) -> Vec<&'static str> {
    let filter = filter.trim();
    if filter == "*" {
        return THEOREM_IDS.to_vec();
    }
    let by_id = filter.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
    let pattern = WildMatch::new(filter);
    THEOREM_IDS
        .iter()
        .copied()
        .filter(|id| if by_id { pattern.matches(id) } else { (id.starts_with('T') || id.starts_with('C')) && pattern.matches(&id[1..]) })
        .collect()
}

/// Runs the matching checks in parallel; reports keep registry order.
pub fn run_suite(filter: &str, opts: &VerifyOptions) -> Result<(Vec<TheoremReport>, Summary), VerifyError> {
    let ids = select(filter);
    let reports: Vec<TheoremReport> = ids.par_iter().map(|id| verify_theorem(id, opts)).collect::<Result<_, _>>()?;
    let summary = Summary::of(&reports);
    Ok((reports, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert_eq!(select("3.*"), ["T3.3", "C3.4", "T3.6", "C3.7", "T3.8", "C3.9"]);
        assert_eq!(select("*").len(), 16);
        assert_eq!(select("L3.*"), ["L3.2"]);
        assert_eq!(select("T2.1?"), ["T2.11", "T2.12", "T2.13"]);
        assert!(select("9.*").is_empty());
        let (r, s) = run_suite("9.*", &VerifyOptions::default()).unwrap();
        assert!(r.is_empty());
        assert_eq!(s, Summary::default());
    }
}
