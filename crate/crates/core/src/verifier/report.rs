use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charforms::LineConvention;
use crate::qseries::QExp;
use crate::ring::{format_rational, GradedPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "CONVENTION_DEPENDENT")]
    ConventionDependent,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ConventionDependent => "CONVENTION_DEPENDENT",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A printed constant against the value the engine derives for it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantCheck {
    pub name: String,
    pub expected: Rational,
    pub computed: Rational,
}

impl ConstantCheck {
    pub fn new(name: impl Into<String>, expected: Rational, computed: Rational) -> Self {
        ConstantCheck { name: name.into(), expected, computed }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: String,
    pub status: Status,
    /// Convention the status refers to; `None` where no line bundle enters.
    pub convention: Option<LineConvention>,
    pub lhs: GradedPoly,
    pub rhs: GradedPoly,
    pub difference: GradedPoly,
    pub constants: Vec<ConstantCheck>,
    /// Whether the identity holds under each registered convention.
    pub outcomes: Vec<(LineConvention, bool)>,
    pub q_order: QExp,
    pub note: String,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    pub fn constants_match(&self) -> bool {
        self.constants.iter().all(ConstantCheck::matches)
    }

    /// One line: id, status, convention and note.
    pub fn summary_line(&self) -> String {
        let mut line = format!("{:<6} {}", self.theorem, self.status);
        if let Some(c) = self.convention {
            line.push_str(&format!(" [{c}]"));
        }
        if !self.note.is_empty() {
            line.push_str(&format!("  {}", self.note));
        }
        line
    }

    pub fn to_json(&self, with_timing: bool) -> JsonReport {
        JsonReport {
            theorem: self.theorem.clone(),
            status: self.status,
            convention: self.convention.map(|c| c.to_string()),
            difference: self.difference.to_string(),
            constants: self
                .constants
                .iter()
                .map(|c| JsonConstant {
                    name: c.name.clone(),
                    expected: format_rational(&c.expected),
                    computed: format_rational(&c.computed),
                })
                .collect(),
            q_order: self.q_order.to_string(),
            ms: if with_timing { self.elapsed_ms } else { 0 },
        }
    }
}

/// Wire form of a report. Rationals travel as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub theorem: String,
    pub status: Status,
    pub convention: Option<String>,
    pub difference: String,
    pub constants: Vec<JsonConstant>,
    pub q_order: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonConstant {
    pub name: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub convention_dependent: usize,
}

impl Summary {
    pub fn of(reports: &[TheoremReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::ConventionDependent => s.convention_dependent += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} PASS, {} FAIL, {} CONVENTION_DEPENDENT", self.pass, self.fail, self.convention_dependent)
    }
}
