//! Quadrature oracles that reproduce the closed forms from their defining
//! integrals, without going through the closed-form code paths.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{gauss_hermite, integrate_panels, integrate_to_infinity, QuadOptions, QuadResult};
use crate::spacetime::{SpacetimePoint, C64, I};
use crate::spinor::{lightlike_vector, scalar_product, Mat2, Spinor, Variance};

/// `K_n(z) = ∫₀^∞ e^{−z cosh t} cosh(nt) dt`, truncated where the integrand
/// envelope drops below `e^{−60}` of its peak.
pub fn macdonald_by_quadrature(n: u32, z: C64) -> Result<QuadResult<C64>> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("need Re z > 0, got {z}")));
    }
    let nf = n as f64;
    // log envelope −Re z cosh t + n t, relative to its value at t = 0
    let env = |t: f64| -z.re * (t.cosh() - 1.0) + nf * t;
    let peak = {
        // maximum at sinh t = n / Re z
        let tp = (nf / z.re).asinh();
        env(tp)
    };
    let mut upper = 1.0;
    while env(upper) > peak - 60.0 {
        upper *= 1.25;
    }
    let panels = ((z.im.abs() * upper.sinh()) / PI).ceil().clamp(1.0, 4000.0) as usize;
    let breaks: Vec<f64> = (0..=panels).map(|i| upper * i as f64 / panels as f64).collect();
    let f = |t: f64| (-z * t.cosh()).exp() * (nf * t).cosh();
    let opts = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 20_000 };
    Ok(integrate_panels(&f, &breaks, &opts))
}

/// Value of a quadrature oracle with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: C64,
    pub error: f64,
    pub evaluations: usize,
}

fn check_spinor_args(eta: &Spinor, eta_bar: &Spinor, a: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("scale a must be positive, got {a}")));
    }
    if eta.variance != Variance::Upper || eta.dotted {
        return Err(Error::Contract("eta must be upper undotted".into()));
    }
    if eta_bar.variance != Variance::Upper || !eta_bar.dotted {
        return Err(Error::Contract("eta_bar must be upper dotted".into()));
    }
    Ok(())
}

/// Quadratic form `N` with `κ̄ g_μ κ (a^μ + i x^μ) = κ†Nκ`.
fn quadratic_form(x: &SpacetimePoint, a: f64) -> Mat2 {
    let at = C64::new(a, x.t);
    Mat2([
        [at - I * x.z, -I * x.x - x.y],
        [-I * x.x + x.y, at + I * x.z],
    ])
}

/// `∫ d⁴κ exp(−κ†Nκ − iη^Aκ_A − iκ̄_Ȧη^Ȧ)` over `ℂ²`.
///
/// The `κ₁` plane is done in closed form as a complex Gaussian; the
/// remaining `κ₀` plane by nested adaptive Gauss–Kronrod.
pub fn upsilon_by_quadrature(eta: &Spinor, eta_bar: &Spinor, x: &SpacetimePoint, a: f64) -> Result<OracleValue> {
    check_spinor_args(eta, eta_bar, a)?;
    let n = quadratic_form(x, a).0;
    let [e0, e1] = eta.components();
    let [b0, b1] = eta_bar.components();
    let a11 = n[1][1];
    let inner = move |k0: C64| {
        let k0c = k0.conj();
        let b = -n[0][1] * k0c - I * e1;
        let c = -n[1][0] * k0 - I * b1;
        let expo = -n[0][0] * k0c * k0 - I * e0 * k0 - I * b0 * k0c + b * c / a11;
        expo.exp() * (PI / a11)
    };
    // decay rate of the reduced Gaussian is Re(det N / N₁₁)
    let det = n[0][0] * n[1][1] - n[0][1] * n[1][0];
    let gamma = (det / a11).re;
    if !(gamma > 0.0) {
        return Err(Error::Domain("reduced Gaussian does not decay".into()));
    }
    let lin = e0.norm() + b0.norm() + (n[0][1].norm() * b1.norm() + n[1][0].norm() * e1.norm()) / a11.norm();
    let radius = (lin + (lin * lin + 4.0 * gamma * 48.0).sqrt()) / (2.0 * gamma);
    let panels = 8;
    let breaks: Vec<f64> = (0..=panels).map(|i| -radius + 2.0 * radius * i as f64 / panels as f64).collect();
    let opts_in = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 4000 };
    let opts_out = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-11, max_intervals: 4000 };
    let evals = std::sync::atomic::AtomicUsize::new(0);
    let row = |u: f64| {
        let r = integrate_panels(&|v: f64| inner(C64::new(u, v)), &breaks, &opts_in);
        evals.fetch_add(r.evaluations, std::sync::atomic::Ordering::Relaxed);
        r.value
    };
    let res = integrate_panels(&row, &breaks, &opts_out);
    if !res.converged {
        return Err(Error::Convergence { value: res.value.to_string(), error: res.error });
    }
    Ok(OracleValue { value: res.value, error: res.error, evaluations: evals.into_inner() })
}

/// Same integral as [`upsilon_by_quadrature`] by a product Gauss–Hermite
/// rule in all four real variables, with weight `exp(−a|κ|²)`.
///
/// The error estimate is the difference between `n` and `3n/4` nodes per axis.
pub fn upsilon_by_gauss_hermite(
    eta: &Spinor,
    eta_bar: &Spinor,
    x: &SpacetimePoint,
    a: f64,
    n: usize,
) -> Result<OracleValue> {
    check_spinor_args(eta, eta_bar, a)?;
    let nm = quadratic_form(x, a).0;
    // oscillatory remainder: N − aI
    let osc = [[nm[0][0] - a, nm[0][1]], [nm[1][0], nm[1][1] - a]];
    let [e0, e1] = eta.components();
    let [b0, b1] = eta_bar.components();
    let rule = |n: usize| {
        let (xs, ws) = gauss_hermite(n);
        let s = 1.0 / a.sqrt();
        let mut total = C64::default();
        for (i, (x1, w1)) in xs.iter().zip(&ws).enumerate() {
            let _ = i;
            for (x2, w2) in xs.iter().zip(&ws) {
                let k0 = C64::new(x1 * s, x2 * s);
                for (x3, w3) in xs.iter().zip(&ws) {
                    for (x4, w4) in xs.iter().zip(&ws) {
                        let k1 = C64::new(x3 * s, x4 * s);
                        let (c0, c1) = (k0.conj(), k1.conj());
                        let q = c0 * (osc[0][0] * k0 + osc[0][1] * k1) + c1 * (osc[1][0] * k0 + osc[1][1] * k1);
                        let lin = e0 * k0 + e1 * k1 + c0 * b0 + c1 * b1;
                        total += (-q - I * lin).exp() * (w1 * w2 * w3 * w4);
                    }
                }
            }
        }
        total / (a * a)
    };
    let fine = rule(n);
    let coarse = rule((3 * n / 4).max(1));
    Ok(OracleValue { value: fine, error: (fine - coarse).norm(), evaluations: n.pow(4) + (3 * n / 4).pow(4) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UvWeight {
    /// `w = 1`
    One,
    /// `w = −(v + iu)`
    VPlusIu,
    /// `w = v`; the integral vanishes by symmetry.
    V,
}

/// `∫∫ du dv e^{imu} w(u,v) / (u² + v² + s²)³` by nested quadrature.
///
/// The inner `v` integral is non-oscillatory and runs over the whole line.
/// The outer `u` integral uses panels of width `π/m` out to a cutoff where
/// the envelope tail is below `1e-10` relative; the tail bound is added to
/// the error estimate.
pub fn uv_integral(weight: UvWeight, m: f64, s: C64) -> Result<OracleValue> {
    uv_integral_with_cutoff(weight, m, s, None)
}

pub fn uv_integral_with_cutoff(weight: UvWeight, m: f64, s: C64, cutoff: Option<f64>) -> Result<OracleValue> {
    if !(m > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("need Re s > 0, got {s}")));
    }
    let s2 = s * s;
    let deg = if weight == UvWeight::One { 0 } else { 1 };
    // after the v integral the envelope is ~ |u|^{deg−5}
    let p = (4 - deg) as f64;
    let scale = s.norm().powi(deg - 4);
    let radius = cutoff.unwrap_or_else(|| (2.0 / (p * 1e-10 * scale)).powf(1.0 / p).max(10.0 * s.norm()));
    let tail = 2.0 * radius.powf(-p) / p;
    let inner_opts = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 200 };
    let evals = std::sync::atomic::AtomicUsize::new(0);
    let line = |u: f64| {
        let c2 = s2 + u * u;
        let g = |v: f64| {
            let w = match weight {
                UvWeight::One => C64::from(1.0),
                UvWeight::VPlusIu => -C64::new(v, u),
                UvWeight::V => C64::from(v),
            };
            w / (c2 + v * v).powi(3)
        };
        let pos = integrate_to_infinity(g, 0.0, &inner_opts);
        let neg = integrate_to_infinity(|v: f64| g(-v), 0.0, &inner_opts);
        evals.fetch_add(pos.evaluations + neg.evaluations, std::sync::atomic::Ordering::Relaxed);
        (pos.value + neg.value) * C64::from_polar(1.0, m * u)
    };
    let width = PI / m;
    let panels = ((radius / width).ceil() as usize).max(4);
    let breaks: Vec<f64> = (0..=2 * panels).map(|i| -radius + radius * i as f64 / panels as f64).collect();
    let outer = QuadOptions { abs_tol: 1e-14 * scale, rel_tol: 1e-12, max_intervals: 4 * panels + 2000 };
    let res = integrate_panels(&line, &breaks, &outer);
    if !res.converged {
        return Err(Error::Convergence { value: res.value.to_string(), error: res.error });
    }
    Ok(OracleValue { value: res.value, error: res.error + tail, evaluations: evals.into_inner() })
}

/// Result of the algebraic support identity for the Klein–Gordon property.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KgSupport {
    /// `(k + l)²` for the null vectors `k = κ̄gκ` and `l = λ̄gλ`.
    pub total_square: f64,
    /// `k·l`, half of `total_square` since both vectors are null.
    pub single_contraction: f64,
    /// `4 (κ_Aλ^A)(κ_Ȧλ^Ȧ)`.
    pub spinor_side: f64,
    /// `|κ_Bκ_C ε^{BC}|`.
    pub self_contraction: f64,
}

/// `κ` and `λ` are lower undotted spinors.
pub fn kg_support(kappa: &Spinor, lambda: &Spinor) -> Result<KgSupport> {
    let k = lightlike_vector(kappa);
    let l = lightlike_vector(lambda);
    let sum = crate::spinor::FourVector([0, 1, 2, 3].map(|i| k.0[i] + l.0[i]));
    let kl = scalar_product(kappa, &lambda.raise_lower())?;
    let kk = scalar_product(kappa, &kappa.raise_lower())?;
    Ok(KgSupport {
        total_square: sum.minkowski_square().re,
        single_contraction: k.minkowski_dot(&l).re,
        spinor_side: 4.0 * kl.norm_sqr(),
        self_contraction: kk.norm(),
    })
}
