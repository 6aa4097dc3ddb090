use serde::{Deserialize, Serialize};

use crate::spacetime::C64;

/// Riemann–Silberstein vector `F = E + iB`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct RSVector(pub [C64; 3]);

impl RSVector {
    pub fn new(fx: C64, fy: C64, fz: C64) -> Self {
        RSVector([fx, fy, fz])
    }

    pub fn electric(&self) -> [f64; 3] {
        self.0.map(|v| v.re)
    }

    pub fn magnetic(&self) -> [f64; 3] {
        self.0.map(|v| v.im)
    }

    /// `F·F = E² − B² + 2i E·B`; zero for null fields.
    pub fn self_dot(&self) -> C64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        RSVector(self.0.map(|v| v * k))
    }

    pub fn sub(&self, o: &RSVector) -> Self {
        RSVector([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

/// Dirac bispinor `Ψ = (φ_A, χ^Ȧ)` in the Weyl representation.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Bispinor {
    pub phi: [C64; 2],
    pub chi: [C64; 2],
}

impl Bispinor {
    pub fn new(phi: [C64; 2], chi: [C64; 2]) -> Self {
        Self { phi, chi }
    }

    pub fn from_components(v: [C64; 4]) -> Self {
        Self { phi: [v[0], v[1]], chi: [v[2], v[3]] }
    }

    pub fn components(&self) -> [C64; 4] {
        [self.phi[0], self.phi[1], self.chi[0], self.chi[1]]
    }

    pub fn scale(&self, k: C64) -> Self {
        Self { phi: self.phi.map(|v| v * k), chi: self.chi.map(|v| v * k) }
    }

    pub fn norm_density(&self) -> f64 {
        self.components().iter().map(|v| v.norm_sqr()).sum()
    }

    /// Flips the sign of the lower pair (`γ⁵`-type map in this representation).
    pub fn chirality_flipped(&self) -> Self {
        Self { phi: self.phi, chi: self.chi.map(|v| -v) }
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|v| v.is_finite())
    }
}

/// A field value of any of the supported kinds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FieldValue {
    Scalar(C64),
    Spinor([C64; 2]),
    RS(RSVector),
    Bispinor(Bispinor),
}

impl FieldValue {
    pub fn components(&self) -> Vec<C64> {
        match self {
            FieldValue::Scalar(v) => vec![*v],
            FieldValue::Spinor(v) => v.to_vec(),
            FieldValue::RS(f) => f.0.to_vec(),
            FieldValue::Bispinor(b) => b.components().to_vec(),
        }
    }

    pub fn component_names(&self) -> &'static [&'static str] {
        match self {
            FieldValue::Scalar(_) => &["f"],
            FieldValue::Spinor(_) => &["phi0", "phi1"],
            FieldValue::RS(_) => &["Fx", "Fy", "Fz"],
            FieldValue::Bispinor(_) => &["phi0", "phi1", "chi0", "chi1"],
        }
    }

    pub fn len(&self) -> usize {
        self.component_names().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
