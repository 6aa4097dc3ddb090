//! Mean square radius `⟨r²⟩_t = ∫ r² ρ / ∫ ρ` of a density and its fit to `A + B t²`.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_infinity, QuadOptions};
use crate::spacetime::SpacetimePoint;

pub type Density<'a> = dyn Fn(&SpacetimePoint) -> f64 + Sync + 'a;

/// `(⟨r²⟩_t, error estimate)` by nested adaptive quadrature in spherical coordinates.
pub fn mean_square_radius(density: &Density<'_>, t: f64) -> Result<(f64, f64)> {
    let inner = QuadOptions::with_tolerances(1e-300, 1e-11);
    let shell = |r: f64| -> [f64; 2] {
        let theta = integrate(
            |th: f64| {
                let (s, c) = th.sin_cos();
                let ring = integrate(
                    |ph: f64| {
                        let (sp, cp) = ph.sin_cos();
                        density(&SpacetimePoint::new(t, r * s * cp, r * s * sp, r * c))
                    },
                    0.0,
                    2.0 * PI,
                    &inner,
                );
                ring.value * s
            },
            0.0,
            PI,
            &inner,
        );
        let w = theta.value * r * r;
        [w, w * r * r]
    };
    let res = integrate_to_infinity(shell, 0.0, &QuadOptions::with_tolerances(1e-300, 1e-10));
    let [norm, moment] = res.value;
    if !res.converged || !(norm > 0.0) {
        return Err(Error::Convergence { value: format!("{:?}", res.value), error: res.error });
    }
    let value = moment / norm;
    // error propagated from the vector estimate (max-norm)
    Ok((value, res.error / norm * (1.0 + value)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DispersionFit {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub a: f64,
    pub b: f64,
    /// `max |⟨r²⟩ − (A + Bt²)| / max ⟨r²⟩`.
    pub fit_residual: f64,
    /// `max |⟨r²⟩_t − ⟨r²⟩_{−t}| / ⟨r²⟩_t` over the symmetric pairs present.
    pub asymmetry: f64,
}

/// Least-squares fit of `A + B t²` to `⟨r²⟩` at the given times.
pub fn dispersion_check(density: &Density<'_>, times: &[f64]) -> Result<DispersionFit> {
    if times.len() < 2 {
        return Err(Error::InvalidParameter("need at least two times".into()));
    }
    let mut values = Vec::with_capacity(times.len());
    let mut errors = Vec::with_capacity(times.len());
    for &t in times {
        let (v, e) = mean_square_radius(density, t)?;
        values.push(v);
        errors.push(e);
    }
    let n = times.len() as f64;
    let (mut s1, mut s2, mut sy, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for (t, y) in times.iter().zip(&values) {
        let u = t * t;
        s1 += u;
        s2 += u * u;
        sy += y;
        sty += u * y;
    }
    let det = n * s2 - s1 * s1;
    if det.abs() < 1e-300 {
        return Err(Error::InvalidParameter("times do not determine a quadratic".into()));
    }
    let b = (n * sty - s1 * sy) / det;
    let a = (sy - b * s1) / n;
    let ymax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let fit_residual =
        times.iter().zip(&values).map(|(t, y)| (y - a - b * t * t).abs()).fold(0.0, f64::max) / ymax;
    let mut asymmetry: f64 = 0.0;
    for (i, t) in times.iter().enumerate() {
        if let Some(j) = times.iter().position(|s| *s == -t) {
            asymmetry = asymmetry.max((values[i] - values[j]).abs() / values[i]);
        }
    }
    Ok(DispersionFit { times: times.to_vec(), values, errors, a, b, fit_residual, asymmetry })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moment() {
        // ρ = exp(−r²/(1+t²)): ⟨r²⟩ = 3(1+t²)/2.
        let rho = |x: &SpacetimePoint| (-x.r2() / (1.0 + x.t * x.t)).exp();
        let fit = dispersion_check(&rho, &[-1.0, 0.0, 0.5, 1.0]).unwrap();
        assert!((fit.a - 1.5).abs() < 1e-8, "{fit:?}");
        assert!((fit.b - 1.5).abs() < 1e-8);
        assert!(fit.fit_residual < 1e-9);
        assert!(fit.asymmetry < 1e-10);
    }

    #[test]
    fn hopfion_energy_spreads_as_one_plus_t_squared() {
        let rho = |x: &SpacetimePoint| crate::solutions::maxwell_hopfion(1, x, 1.0).unwrap().norm_sqr() * 0.5;
        let fit = dispersion_check(&rho, &[-2.0, -1.0, 0.0, 1.0, 2.0]).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-8 && (fit.b - 1.0).abs() < 1e-8, "{fit:?}");
        assert!(fit.fit_residual < 1e-8 && fit.asymmetry < 1e-8);
    }

    #[test]
    fn rejects_degenerate_times() {
        let rho = |x: &SpacetimePoint| (-x.r2()).exp();
        assert!(dispersion_check(&rho, &[1.0]).is_err());
        assert!(dispersion_check(&rho, &[1.0, -1.0]).is_err());
    }
}

