//! Hopf fibration `S³ → S²` between spinor components and wave vectors.
//!
//! A point `ξ ∈ ℝ⁴` is read as `κ₀ = ξ₁ + iξ₂`, `κ₁ = ξ₃ + iξ₄`. The fiber
//! phase is the phase of `κ₀`, `φ = atan2(ξ₂, ξ₁)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spacetime::C64;
use crate::spinor::{lightlike_vector, Spinor};

/// Relative size of `k + kz` below which the inverse chart is refused.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct HopfPoint {
    pub xi: [f64; 4],
}

impl HopfPoint {
    pub fn new(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self { xi: [xi1, xi2, xi3, xi4] }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.xi.iter().map(|v| v * v).sum()
    }

    pub fn kappa(&self) -> [C64; 2] {
        [C64::new(self.xi[0], self.xi[1]), C64::new(self.xi[2], self.xi[3])]
    }

    pub fn from_kappa(k: [C64; 2]) -> Self {
        Self::new(k[0].re, k[0].im, k[1].re, k[1].im)
    }

    /// Fiber phase in `[0, 2π)`.
    pub fn phase(&self) -> f64 {
        self.xi[1].atan2(self.xi[0]).rem_euclid(std::f64::consts::TAU)
    }

    pub fn is_finite(&self) -> bool {
        self.xi.iter().all(|v| v.is_finite())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct WaveVector {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl WaveVector {
    pub fn new(kx: f64, ky: f64, kz: f64) -> Self {
        Self { kx, ky, kz }
    }

    pub fn k(&self) -> f64 {
        (self.kx * self.kx + self.ky * self.ky + self.kz * self.kz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.kx, self.ky, self.kz]
    }
}

pub fn hopf_forward(p: &HopfPoint) -> WaveVector {
    let [x1, x2, x3, x4] = p.xi;
    WaveVector {
        kx: 2.0 * (x1 * x3 + x2 * x4),
        ky: 2.0 * (x2 * x3 - x1 * x4),
        kz: x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4,
    }
}

/// Inverse of [`hopf_forward`] on the chart `k + kz > 0`, with `κ₀` of phase `phi`:
/// `κ₀ = √((k+kz)/2) e^{iφ}`, `κ₁ = (kx − i ky) e^{iφ} / √(2(k+kz))`.
pub fn hopf_inverse(k: &WaveVector, phi: f64) -> Result<HopfPoint> {
    let kk = k.k();
    let kpz = kk + k.kz;
    if !(kpz > DEGENERATE_TOLERANCE * kk) || !kpz.is_finite() {
        return Err(Error::DegenerateFiber(kpz));
    }
    let (s, c) = phi.sin_cos();
    let r = (kpz / 2.0).sqrt();
    let d = (2.0 * kpz).sqrt();
    Ok(HopfPoint::new(
        r * c,
        r * s,
        (k.kx * c + k.ky * s) / d,
        (k.kx * s - k.ky * c) / d,
    ))
}

/// `(kx, ky, kz, φ)` as a function of `ξ`.
fn chart(xi: [f64; 4]) -> [f64; 4] {
    let p = HopfPoint { xi };
    let w = hopf_forward(&p);
    [w.kx, w.ky, w.kz, xi[1].atan2(xi[0])]
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for c in col..4 {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}

fn fd_jacobian(f: impl Fn([f64; 4]) -> [f64; 4], at: [f64; 4], h: f64) -> [[f64; 4]; 4] {
    let mut j = [[0.0; 4]; 4];
    for c in 0..4 {
        let mut p = at;
        let mut m = at;
        p[c] += h;
        m[c] -= h;
        let (fp, fm) = (f(p), f(m));
        for r in 0..4 {
            let mut d = fp[r] - fm[r];
            if r == 3 {
                // phase differences across the branch cut
                d = (d + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
            }
            j[r][c] = d / (2.0 * h);
        }
    }
    j
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobianReport {
    pub k: f64,
    /// `|det ∂(kx, ky, kz, φ)/∂ξ|`, analytically `8k`.
    pub forward_det: f64,
    /// `|det ∂ξ/∂(kx, ky, kz, φ)|`, analytically `1/(8k)`.
    pub inverse_det: f64,
    pub expected_measure: f64,
    pub forward_rel_error: f64,
    pub inverse_rel_error: f64,
}

/// Finite-difference Jacobians of the chart and of its inverse at `p`.
pub fn jacobian_check(p: &HopfPoint) -> Result<JacobianReport> {
    let w = hopf_forward(p);
    let k = w.k();
    if !(k + w.kz > DEGENERATE_TOLERANCE * k) || !(p.xi[0] != 0.0 || p.xi[1] != 0.0) {
        return Err(Error::DegenerateFiber(k + w.kz));
    }
    let scale = p.norm_sqr().sqrt();
    let forward_det = det4(fd_jacobian(chart, p.xi, 1e-5 * scale)).abs();
    let phi = p.xi[1].atan2(p.xi[0]);
    let inv = |v: [f64; 4]| {
        hopf_inverse(&WaveVector::new(v[0], v[1], v[2]), v[3]).map(|q| q.xi).unwrap_or([f64::NAN; 4])
    };
    let inverse_det = det4(fd_jacobian(inv, [w.kx, w.ky, w.kz, phi], 1e-5 * k)).abs();
    let expected = 1.0 / (8.0 * k);
    Ok(JacobianReport {
        k,
        forward_det,
        inverse_det,
        expected_measure: expected,
        forward_rel_error: (forward_det * expected - 1.0).abs(),
        inverse_rel_error: (inverse_det / expected - 1.0).abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub spatial_mismatch: f64,
    pub time_mismatch: f64,
}

impl ConsistencyReport {
    pub fn consistent(&self, tol: f64) -> bool {
        self.spatial_mismatch <= tol && self.time_mismatch <= tol
    }
}

/// Compares the Hopf map with the null vector `κ̄ g^μ κ`.
///
/// The forward map reproduces `κ̄ g^μ κ` when `ξ` is read off the conjugate
/// components `κ_Ȧ`; with `κ_A` itself the y-component changes sign.
/// Mismatches are relative to `k⁰`.
pub fn spinor_consistency(kappa: &Spinor) -> ConsistencyReport {
    let k = lightlike_vector(kappa).re();
    let xi = HopfPoint::from_kappa(kappa.components().map(|c| c.conj()));
    let w = hopf_forward(&xi);
    let scale = k[0].max(f64::MIN_POSITIVE);
    let spatial = [w.kx - k[1], w.ky - k[2], w.kz - k[3]];
    ConsistencyReport {
        spatial_mismatch: spatial.iter().fold(0.0f64, |m, v| m.max(v.abs())) / scale,
        time_mismatch: (xi.norm_sqr() - k[0]).abs() / scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{c, re};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close3(w: WaveVector, e: [f64; 3]) -> bool {
        w.as_array().iter().zip(e).all(|(a, b)| (a - b).abs() < 1e-15)
    }

    #[test]
    fn forward_examples() {
        assert!(close3(hopf_forward(&HopfPoint::new(1.0, 0.0, 0.0, 0.0)), [0.0, 0.0, 1.0]));
        assert!(close3(hopf_forward(&HopfPoint::new(0.0, 0.0, 1.0, 0.0)), [0.0, 0.0, -1.0]));
        let p = HopfPoint::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0);
        assert!(close3(hopf_forward(&p), [1.0, 0.0, 0.0]));
    }

    #[test]
    fn inverse_examples() {
        let p = hopf_inverse(&WaveVector::new(0.0, 0.0, 1.0), 0.0).unwrap();
        assert_eq!(p.xi, [1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            hopf_inverse(&WaveVector::new(0.0, 0.0, -1.0), 0.3),
            Err(Error::DegenerateFiber(_))
        ));
        let w = WaveVector::new(0.0, 1.0, 0.0);
        let back = hopf_forward(&hopf_inverse(&w, 0.0).unwrap());
        assert!(close3(back, [0.0, 1.0, 0.0]));
    }

    #[test]
    fn measure_at_north_pole() {
        let r = jacobian_check(&HopfPoint::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!((r.expected_measure - 0.125).abs() < 1e-15);
        assert!(r.inverse_rel_error < 1e-6, "{r:?}");
        assert!(r.forward_rel_error < 1e-6, "{r:?}");
        assert!((r.forward_det - 8.0).abs() < 1e-5);
    }

    #[test]
    fn measure_scales_with_k() {
        let p = HopfPoint::new(0.3, -0.5, 0.2, 0.4);
        let r1 = jacobian_check(&p).unwrap();
        let q = HopfPoint { xi: p.xi.map(|v| 1.7 * v) };
        let r2 = jacobian_check(&q).unwrap();
        assert!((r2.k / r1.k - 1.7f64.powi(2)).abs() < 1e-12);
        assert!((r2.inverse_det / r1.inverse_det - 1.7f64.powi(-2)).abs() < 1e-6);
    }

    #[test]
    fn spinor_examples() {
        for k in [[re(1.0), re(0.0)], [re(0.0), re(1.0)]] {
            assert!(spinor_consistency(&Spinor::lower(k[0], k[1])).consistent(1e-15));
        }
    }

    #[test]
    fn undotted_reading_flips_y() {
        let kappa = Spinor::lower(c(0.4, 0.3), c(-0.2, 0.8));
        let k = lightlike_vector(&kappa).re();
        let w = hopf_forward(&HopfPoint::from_kappa(kappa.components()));
        assert!((w.kx - k[1]).abs() < 1e-15);
        assert!((w.ky + k[2]).abs() < 1e-15);
        assert!((w.kz - k[3]).abs() < 1e-15);
    }

    #[test]
    fn phase_convention() {
        let p = hopf_inverse(&WaveVector::new(0.3, -0.2, 0.5), 2.5).unwrap();
        assert!((p.phase() - 2.5).abs() < 1e-14);
        let p = hopf_inverse(&WaveVector::new(0.3, -0.2, 0.5), -0.5).unwrap();
        assert!((p.phase() - (2.0 * PI - 0.5)).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn norm_preserved(xi in proptest::array::uniform4(-3.0f64..3.0)) {
            let p = HopfPoint { xi };
            let w = hopf_forward(&p);
            let n = p.norm_sqr();
            prop_assert!((w.k() * w.k() - n * n).abs() <= 1e-14 * n * n.max(1.0));
        }

        #[test]
        fn fiber_invariance(xi in proptest::array::uniform4(-3.0f64..3.0), phi in 0.0..6.3f64) {
            let p = HopfPoint { xi };
            let rot = C64::from_polar(1.0, phi);
            let q = HopfPoint::from_kappa(p.kappa().map(|v| v * rot));
            let (a, b) = (hopf_forward(&p), hopf_forward(&q));
            let n = p.norm_sqr().max(1e-300);
            prop_assert!((a.kx - b.kx).abs() <= 1e-13 * n);
            prop_assert!((a.ky - b.ky).abs() <= 1e-13 * n);
            prop_assert!((a.kz - b.kz).abs() <= 1e-13 * n);
        }

        #[test]
        fn roundtrip(theta in 0.0..2.6f64, az in 0.0..6.3f64, k in 0.1..5.0f64, phi in 0.0..6.3f64) {
            let w = WaveVector::new(k * theta.sin() * az.cos(), k * theta.sin() * az.sin(), k * theta.cos());
            let p = hopf_inverse(&w, phi).unwrap();
            let back = hopf_forward(&p);
            prop_assert!((back.kx - w.kx).abs() <= 1e-12 * k);
            prop_assert!((back.ky - w.ky).abs() <= 1e-12 * k);
            prop_assert!((back.kz - w.kz).abs() <= 1e-12 * k);
            let dphi = (p.phase() - phi).rem_euclid(std::f64::consts::TAU);
            prop_assert!(!(1e-12..=std::f64::consts::TAU - 1e-12).contains(&dphi));
        }

        #[test]
        fn consistency(v in proptest::array::uniform4(-2.0f64..2.0)) {
            let s = Spinor::lower(c(v[0], v[1]), c(v[2], v[3]));
            prop_assert!(spinor_consistency(&s).consistent(1e-12));
        }
    }
}
