use std::fmt;

use super::CharError;
use crate::ring::{GeneratorTable, GradedPoly, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Spin,
    SpinC,
}

/// Bundle labels, in generator order.
pub const BUNDLE_LABELS: [&str; 2] = ["i", "j"];

/// Generator table for a manifold of given dimension, structure and E8
/// bundle count. Generators: `c` (spin^c only), `s1, s2, ...` (degree 4k),
/// then `gi1, gi2, ...` and `gj1, ...` for the E8 bundles.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldContext {
    dimension: u32,
    structure: Structure,
    e8_bundles: usize,
    ring: Ring,
}

impl ManifoldContext {
    pub fn new(dimension: u32, structure: Structure, e8_bundles: usize) -> Result<Self, CharError> {
        Self::with_degree_cap(dimension, structure, e8_bundles, dimension)
    }

    /// Context whose ring is truncated at `degree_cap` instead of the dimension.
    pub fn with_degree_cap(dimension: u32, structure: Structure, e8_bundles: usize, degree_cap: u32) -> Result<Self, CharError> {
        if ![10, 12, 14].contains(&dimension) {
            return Err(CharError::UnsupportedDimension(dimension));
        }
        if e8_bundles > 2 {
            return Err(CharError::TooManyBundles(e8_bundles));
        }
        let mut gens: Vec<(String, u32)> = Vec::new();
        if structure == Structure::SpinC {
            gens.push(("c".into(), 2));
        }
        let top = degree_cap / 4;
        gens.extend((1..=top).map(|k| (format!("s{k}"), 4 * k)));
        for label in &BUNDLE_LABELS[..e8_bundles] {
            gens.extend((1..=top).map(|k| (format!("g{label}{k}"), 4 * k)));
        }
        let ring = GeneratorTable::new(&gens, degree_cap)?;
        Ok(ManifoldContext { dimension, structure, e8_bundles, ring })
    }

    pub fn d14c(e8_bundles: usize) -> Self {
        Self::new(14, Structure::SpinC, e8_bundles).expect("valid preset")
    }

    pub fn d10c(e8_bundles: usize) -> Self {
        Self::new(10, Structure::SpinC, e8_bundles).expect("valid preset")
    }

    pub fn d12(e8_bundles: usize) -> Self {
        Self::new(12, Structure::Spin, e8_bundles).expect("valid preset")
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn e8_bundles(&self) -> usize {
        self.e8_bundles
    }

    /// Complex rank of `T_C M / 2`.
    pub fn root_pairs(&self) -> u32 {
        self.dimension / 2
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree_cap(&self) -> u32 {
        self.ring.degree_cap()
    }

    /// Largest `k` with `s_k` present.
    pub fn max_power_sum(&self) -> u32 {
        self.degree_cap() / 4
    }

    pub fn zero(&self) -> GradedPoly {
        GradedPoly::zero(&self.ring)
    }

    pub fn one(&self) -> GradedPoly {
        GradedPoly::one(&self.ring)
    }

    fn named(&self, name: &str) -> Result<GradedPoly, CharError> {
        GradedPoly::generator(&self.ring, name).map_err(|_| CharError::MissingGenerator(name.to_string()))
    }

    /// First Chern class of the spin^c line bundle.
    pub fn c(&self) -> Result<GradedPoly, CharError> {
        self.named("c")
    }

    /// Tangent power sum `s_k`.
    pub fn s(&self, k: u32) -> Result<GradedPoly, CharError> {
        self.named(&format!("s{k}"))
    }

    /// E8 power sum `g_{b,k}`, bundle `b` in `0..e8_bundles`.
    pub fn g(&self, b: usize, k: u32) -> Result<GradedPoly, CharError> {
        let label = BUNDLE_LABELS.get(b).ok_or(CharError::TooManyBundles(b + 1))?;
        self.named(&format!("g{label}{k}"))
    }

    /// `c_2(W_b) = -30 g_{b,1}`.
    pub fn c2_w(&self, b: usize) -> Result<GradedPoly, CharError> {
        Ok(self.g(b, 1)?.scale(&crate::ring::int(-30)))
    }
}

impl fmt::Display for ManifoldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.structure {
            Structure::Spin => "spin",
            Structure::SpinC => "spin^c",
        };
        write!(f, "{}-dim {kind}, {} E8 bundle(s), degree cap {}", self.dimension, self.e8_bundles, self.degree_cap())
    }
}
