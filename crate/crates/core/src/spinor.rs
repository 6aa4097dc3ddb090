//! Two-component spinor algebra.
//!
//! Index conventions: components are labelled 0 and 1, the spinorial metric is
//! `ε = [[0, 1], [−1, 0]]` for both index positions, and raising/lowering
//! follow `φ^A = ε^{AB} φ_B`, `φ_A = φ^B ε_{BA}`. Dotted indices mark complex
//! conjugation. The Minkowski signature is `(+, −, −, −)`.
//!
//! The spin-tensors are stored as 2×2 matrices whose row carries the first
//! spinor index: `g^{μȦB}[Ȧ][B]` and `g^μ_{AḂ}[A][Ḃ]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{re, C64, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flipped(self) -> Self {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// A two-component spinor together with its index position and dottedness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub c0: C64,
    pub c1: C64,
    pub variance: Variance,
    pub dotted: bool,
}

impl Spinor {
    pub fn new(c0: C64, c1: C64, variance: Variance, dotted: bool) -> Self {
        Self { c0, c1, variance, dotted }
    }

    pub fn lower(c0: C64, c1: C64) -> Self {
        Self::new(c0, c1, Variance::Lower, false)
    }

    pub fn upper(c0: C64, c1: C64) -> Self {
        Self::new(c0, c1, Variance::Upper, false)
    }

    pub fn upper_dotted(c0: C64, c1: C64) -> Self {
        Self::new(c0, c1, Variance::Upper, true)
    }

    pub fn lower_dotted(c0: C64, c1: C64) -> Self {
        Self::new(c0, c1, Variance::Lower, true)
    }

    pub fn zero(variance: Variance, dotted: bool) -> Self {
        Self::new(C64::default(), C64::default(), variance, dotted)
    }

    pub fn components(&self) -> [C64; 2] {
        [self.c0, self.c1]
    }

    pub fn component(&self, i: usize) -> C64 {
        match i {
            0 => self.c0,
            1 => self.c1,
            _ => panic!("spinor index {i} out of range"),
        }
    }

    pub fn with_components(&self, v: [C64; 2]) -> Self {
        Self { c0: v[0], c1: v[1], ..*self }
    }

    /// Complex conjugation: flips dottedness and conjugates both components.
    pub fn conjugate(&self) -> Self {
        Self { c0: self.c0.conj(), c1: self.c1.conj(), dotted: !self.dotted, ..*self }
    }

    pub fn scale(&self, k: C64) -> Self {
        Self { c0: self.c0 * k, c1: self.c1 * k, ..*self }
    }

    /// Moves the index to the other position with the spinorial metric.
    pub fn raise_lower(&self) -> Self {
        let (c0, c1) = match self.variance {
            // φ^0 = ε^{01} φ_1, φ^1 = ε^{10} φ_0
            Variance::Lower => (self.c1, -self.c0),
            // φ_0 = φ^1 ε_{10}, φ_1 = φ^0 ε_{01}
            Variance::Upper => (-self.c1, self.c0),
        };
        Self { c0, c1, variance: self.variance.flipped(), dotted: self.dotted }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        self.c0.is_finite() && self.c1.is_finite()
    }
}

/// `a_A b^A` for a lower-index `a` and an upper-index `b` of equal dottedness.
pub fn scalar_product(a: &Spinor, b: &Spinor) -> Result<C64> {
    if a.variance != Variance::Lower || b.variance != Variance::Upper {
        return Err(Error::Contract(format!(
            "scalar product needs (lower, upper), got ({:?}, {:?})",
            a.variance, b.variance
        )));
    }
    if a.dotted != b.dotted {
        return Err(Error::Contract("cannot contract a dotted with an undotted index".into()));
    }
    Ok(a.c0 * b.c0 + a.c1 * b.c1)
}

/// The spinorial metric `ε_{AB} = ε^{AB}`.
pub const EPSILON: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

/// Dense 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let o = re(1.0);
        let z = C64::default();
        Mat2([[o, z], [z, o]])
    }

    pub fn zero() -> Self {
        Mat2::default()
    }

    pub fn pauli(i: usize) -> Self {
        let o = re(1.0);
        let z = C64::default();
        match i {
            1 => Mat2([[z, o], [o, z]]),
            2 => Mat2([[z, -I], [I, z]]),
            3 => Mat2([[o, z], [z, -o]]),
            _ => panic!("Pauli index {i} out of range 1..=3"),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    pub fn add(&self, o: &Mat2) -> Self {
        let (a, b) = (&self.0, &o.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }

    pub fn mul(&self, o: &Mat2) -> Self {
        let (a, b) = (&self.0, &o.0);
        let mut r = [[C64::default(); 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(r)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// `u^T M v`, summing the row index against `u` and the column against `v`.
    pub fn bilinear(&self, u: [C64; 2], v: [C64; 2]) -> C64 {
        let w = self.apply(v);
        u[0] * w[0] + u[1] * w[1]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }
}

/// Which of the two mixed vector-spinor objects is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinTensorKind {
    /// `g^{μȦB}`: identity for μ = 0, Pauli matrix σ_i for μ = i.
    DottedUndotted,
    /// `g^μ_{AḂ}`: identity for μ = 0, minus the Pauli matrix for μ = i.
    UndottedDotted,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinTensor {
    pub kind: SpinTensorKind,
    pub mu: usize,
    pub matrix: Mat2,
}

impl SpinTensor {
    /// The spin-tensor with a contravariant vector index `mu`.
    pub fn new(kind: SpinTensorKind, mu: usize) -> Self {
        assert!(mu < 4, "vector index {mu} out of range");
        let matrix = match (kind, mu) {
            (_, 0) => Mat2::identity(),
            (SpinTensorKind::DottedUndotted, i) => Mat2::pauli(i),
            (SpinTensorKind::UndottedDotted, i) => Mat2::pauli(i).scale(re(-1.0)),
        };
        Self { kind, mu, matrix }
    }

    /// The same object with its vector index lowered by the metric.
    pub fn lowered(kind: SpinTensorKind, mu: usize) -> Mat2 {
        let m = Self::new(kind, mu).matrix;
        if mu == 0 {
            m
        } else {
            m.scale(re(-1.0))
        }
    }

    pub fn all(kind: SpinTensorKind) -> [SpinTensor; 4] {
        [0, 1, 2, 3].map(|mu| SpinTensor::new(kind, mu))
    }
}

/// `g_μ^{ȦB} v^μ = v⁰ I − v·σ`.
pub fn contract_dotted_undotted(v: &[C64; 4]) -> Mat2 {
    (0..4).fold(Mat2::zero(), |acc, mu| {
        acc.add(&SpinTensor::lowered(SpinTensorKind::DottedUndotted, mu).scale(v[mu]))
    })
}

/// `g_{μAḂ} v^μ = v⁰ I + v·σ`.
pub fn contract_undotted_dotted(v: &[C64; 4]) -> Mat2 {
    (0..4).fold(Mat2::zero(), |acc, mu| {
        acc.add(&SpinTensor::lowered(SpinTensorKind::UndottedDotted, mu).scale(v[mu]))
    })
}

/// Contravariant four-vector with (+, −, −, −) signature.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub fn real(v: [f64; 4]) -> Self {
        FourVector(v.map(re))
    }

    pub fn minkowski_dot(&self, o: &FourVector) -> C64 {
        let (a, b) = (&self.0, &o.0);
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn minkowski_square(&self) -> C64 {
        self.minkowski_dot(self)
    }

    pub fn time(&self) -> C64 {
        self.0[0]
    }

    /// Real parts; callers use this after checking the vector is real.
    pub fn re(&self) -> [f64; 4] {
        self.0.map(|v| v.re)
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.im.abs()))
    }

    pub fn spatial_re(&self) -> [f64; 3] {
        [self.0[1].re, self.0[2].re, self.0[3].re]
    }
}

/// `k^μ = κ_Ȧ g^{μȦB} κ_B`, the null vector of a spinor (`κ_Ȧ = κ_A*`).
pub fn lightlike_vector(kappa: &Spinor) -> FourVector {
    let k = kappa.components();
    let kbar = [k[0].conj(), k[1].conj()];
    FourVector(
        SpinTensor::all(SpinTensorKind::DottedUndotted).map(|g| g.matrix.bilinear(kbar, k)),
    )
}
