use std::collections::HashSet;
use std::sync::Arc;

use super::RingError;

/// Named even-degree generators plus the cohomological degree cap shared by
/// every polynomial built over them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<u32>,
    degree_cap: u32,
}

/// Shared handle to a frozen generator table.
pub type Ring = Arc<GeneratorTable>;

impl GeneratorTable {
    /// Builds and freezes a table.
    ///
    /// Rejects duplicate names, odd or zero degrees, and generators whose
    /// degree exceeds the cap.
    pub fn new<S: AsRef<str>>(generators: &[(S, u32)], degree_cap: u32) -> Result<Ring, RingError> {
        if !degree_cap.is_multiple_of(2) {
            return Err(RingError::OddDegree { name: "<cap>".into(), degree: degree_cap });
        }
        let mut seen = HashSet::new();
        let mut names = Vec::with_capacity(generators.len());
        let mut degrees = Vec::with_capacity(generators.len());
        for (name, degree) in generators {
            let name = name.as_ref();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(RingError::Parse(format!("invalid generator name {name:?}")));
            }
            if !seen.insert(name.to_string()) {
                return Err(RingError::DuplicateName(name.to_string()));
            }
            if *degree == 0 || degree % 2 != 0 {
                return Err(RingError::OddDegree { name: name.to_string(), degree: *degree });
            }
            if *degree > degree_cap {
                return Err(RingError::DegreeExceedsCap { name: name.to_string(), degree: *degree, cap: degree_cap });
            }
            names.push(name.to_string());
            degrees.push(*degree);
        }
        if names.len() > u8::MAX as usize {
            return Err(RingError::Parse("too many generators".into()));
        }
        Ok(Arc::new(GeneratorTable { names, degrees, degree_cap }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.degrees[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same generators, different cap.
    pub fn with_degree_cap(&self, degree_cap: u32) -> Result<Ring, RingError> {
        let gens: Vec<(&str, u32)> = self.names.iter().map(String::as_str).zip(self.degrees.iter().copied()).collect();
        GeneratorTable::new(&gens, degree_cap)
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
