//! Weyl and Maxwell solutions generated by the Gaussian spinorial transform.
//!
//! Everything is built from `D(x) = ((a+it)² + r²)^{−1}` and the spinor
//! `ψ_A(x) = D(x) g_{μAḂ} η^Ḃ (x^μ − i a^μ)` with `a^μ = (a, 0, 0, 0)`.

use crate::error::{Error, Result};
use crate::solutions::fields::RSVector;
use crate::spacetime::{re, SpacetimePoint, C64, I};
use crate::spinor::{contract_undotted_dotted, Mat2, Spinor, Variance};

fn check_scale(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("scale a must be positive, got {a}")));
    }
    Ok(())
}

/// Light-cone combinations `t_± = t ± z − ia`, `x_± = x ± iy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LightCone {
    pub t_plus: C64,
    pub t_minus: C64,
    pub x_plus: C64,
    pub x_minus: C64,
}

impl LightCone {
    pub fn new(x: &SpacetimePoint, a: f64) -> Self {
        Self {
            t_plus: C64::new(x.t + x.z, -a),
            t_minus: C64::new(x.t - x.z, -a),
            x_plus: C64::new(x.x, x.y),
            x_minus: C64::new(x.x, -x.y),
        }
    }

    /// `(a+it)² − x² − y² + z²`.
    pub fn q(&self) -> C64 {
        -(self.t_plus * self.t_minus + self.x_plus * self.x_minus)
    }
}

/// `D(x) = ((a+it)² + x² + y² + z²)^{−1}`; never singular for real `x` and `a > 0`.
pub fn d_factor(x: &SpacetimePoint, a: f64) -> Result<C64> {
    check_scale(a)?;
    let at = C64::new(a, x.t);
    Ok((at * at + x.r2()).inv())
}

/// `g_{μAḂ}(x^μ − i a^μ)` as a matrix with rows `A` and columns `Ḃ`.
pub fn shifted_position_matrix(x: &SpacetimePoint, a: f64) -> Mat2 {
    contract_undotted_dotted(&[C64::new(x.t, -a), re(x.x), re(x.y), re(x.z)])
}

fn require(s: &Spinor, variance: Variance, dotted: bool, what: &str) -> Result<()> {
    if s.variance != variance || s.dotted != dotted {
        return Err(Error::Contract(format!(
            "{what} must be {variance:?}{} (got {:?}{})",
            if dotted { " dotted" } else { "" },
            s.variance,
            if s.dotted { " dotted" } else { "" }
        )));
    }
    Ok(())
}

/// `ψ_A(x) = D(x) g_{μAḂ} η^Ḃ (x^μ − i a^μ)`.
pub fn psi_spinor(x: &SpacetimePoint, eta_bar: &Spinor, a: f64) -> Result<Spinor> {
    require(eta_bar, Variance::Upper, true, "eta_bar")?;
    let d = d_factor(x, a)?;
    let v = shifted_position_matrix(x, a).apply(eta_bar.components());
    Ok(Spinor::lower(d * v[0], d * v[1]))
}

/// Space-time gradient `∂_μ ψ_A` of [`psi_spinor`], evaluated analytically.
pub fn psi_gradient(x: &SpacetimePoint, eta_bar: &Spinor, a: f64) -> Result<[[C64; 2]; 4]> {
    require(eta_bar, Variance::Upper, true, "eta_bar")?;
    let d = d_factor(x, a)?;
    let eb = eta_bar.components();
    let m_eta = shifted_position_matrix(x, a).apply(eb);
    // ∂_μ(1/D)
    let dinv = [I * C64::new(a, x.t) * 2.0, re(2.0 * x.x), re(2.0 * x.y), re(2.0 * x.z)];
    let mut out = [[C64::default(); 2]; 4];
    for mu in 0..4 {
        let dd = -d * d * dinv[mu];
        let dm = if mu == 0 { Mat2::identity() } else { Mat2::pauli(mu) };
        let dm_eta = dm.apply(eb);
        for k in 0..2 {
            out[mu][k] = dd * m_eta[k] + d * dm_eta[k];
        }
    }
    Ok(out)
}

/// Closed-form generating function `D(x) exp(−i D η^A g_{μAḂ}(x^μ − i a^μ) η^Ḃ)`.
///
/// The `π²` produced by the Gaussian integral is dropped.
pub fn upsilon_massless(eta: &Spinor, eta_bar: &Spinor, x: &SpacetimePoint, a: f64) -> Result<C64> {
    require(eta, Variance::Upper, false, "eta")?;
    let psi = psi_spinor(x, eta_bar, a)?;
    let d = d_factor(x, a)?;
    let contraction = eta.c0 * psi.c0 + eta.c1 * psi.c1;
    Ok(d * (-I * contraction).exp())
}

/// Weyl solution `φ_C = D h₁(ψ) ψ_C` for any function `h₁(ψ_0, ψ_1)`.
pub fn weyl_field(
    h1: &dyn Fn(C64, C64) -> C64,
    eta_bar: &Spinor,
    x: &SpacetimePoint,
    a: f64,
) -> Result<Spinor> {
    let psi = psi_spinor(x, eta_bar, a)?;
    let d = d_factor(x, a)?;
    Ok(psi.scale(d * h1(psi.c0, psi.c1)))
}

/// Symmetric Maxwell spinor `φ_CD = D h₂(ψ) ψ_C ψ_D`.
pub fn maxwell_spinor(
    h2: &dyn Fn(C64, C64) -> C64,
    eta_bar: &Spinor,
    x: &SpacetimePoint,
    a: f64,
) -> Result<[[C64; 2]; 2]> {
    let psi = psi_spinor(x, eta_bar, a)?.components();
    let d = d_factor(x, a)?;
    let k = d * h2(psi[0], psi[1]);
    Ok([[k * psi[0] * psi[0], k * psi[0] * psi[1]], [k * psi[1] * psi[0], k * psi[1] * psi[1]]])
}

/// `F_x = φ₁₁ − φ₀₀`, `F_y = −i(φ₁₁ + φ₀₀)`, `F_z = 2φ₀₁`.
pub fn rs_from_spinor(phi: &[[C64; 2]; 2]) -> RSVector {
    RSVector::new(phi[1][1] - phi[0][0], -I * (phi[1][1] + phi[0][0]), phi[0][1] * 2.0)
}

/// Inverse of [`rs_from_spinor`] onto symmetric spinors.
pub fn spinor_from_rs(f: &RSVector) -> [[C64; 2]; 2] {
    let [fx, fy, fz] = f.0;
    let p11 = (fx + I * fy) * 0.5;
    let p00 = (I * fy - fx) * 0.5;
    let p01 = fz * 0.5;
    [[p00, p01], [p01, p11]]
}

pub fn maxwell_field(
    h2: &dyn Fn(C64, C64) -> C64,
    eta_bar: &Spinor,
    x: &SpacetimePoint,
    a: f64,
) -> Result<RSVector> {
    Ok(rs_from_spinor(&maxwell_spinor(h2, eta_bar, x, a)?))
}

/// `η^Ȧ = (1, 0)` for `which == 1`, `(0, 1)` for `which == 2`.
pub fn basis_eta_bar(which: u8) -> Result<Spinor> {
    match which {
        1 => Ok(Spinor::upper_dotted(re(1.0), re(0.0))),
        2 => Ok(Spinor::upper_dotted(re(0.0), re(1.0))),
        _ => Err(Error::InvalidParameter(format!("hopfion index must be 1 or 2, got {which}"))),
    }
}

/// Weyl hopfions `D²(t₊, x₊)` and `D²(x₋, t₋)`.
pub fn weyl_hopfion(which: u8, x: &SpacetimePoint, a: f64) -> Result<Spinor> {
    let d = d_factor(x, a)?;
    let lc = LightCone::new(x, a);
    let d2 = d * d;
    match which {
        1 => Ok(Spinor::lower(d2 * lc.t_plus, d2 * lc.x_plus)),
        2 => Ok(Spinor::lower(d2 * lc.x_minus, d2 * lc.t_minus)),
        _ => Err(Error::InvalidParameter(format!("hopfion index must be 1 or 2, got {which}"))),
    }
}

/// Maxwell hopfions in Riemann–Silberstein form.
pub fn maxwell_hopfion(which: u8, x: &SpacetimePoint, a: f64) -> Result<RSVector> {
    let d = d_factor(x, a)?;
    let d3 = d * d * d;
    let lc = LightCone::new(x, a);
    let f = match which {
        1 => {
            let (t2, x2) = (lc.t_plus * lc.t_plus, lc.x_plus * lc.x_plus);
            RSVector::new(t2 - x2, I * (t2 + x2), -(lc.t_plus * lc.x_plus) * 2.0)
        }
        2 => {
            let (t2, x2) = (lc.t_minus * lc.t_minus, lc.x_minus * lc.x_minus);
            RSVector::new(x2 - t2, I * (t2 + x2), -(lc.x_minus * lc.t_minus) * 2.0)
        }
        _ => return Err(Error::InvalidParameter(format!("hopfion index must be 1 or 2, got {which}"))),
    };
    Ok(f.scale(d3))
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn check_knot_indices(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 || gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// Null field with `h₂ = ψ₀^p ψ₁^q`, `η^Ȧ = (1, 0)`.
pub fn knot_field(p: u32, q: u32, x: &SpacetimePoint, a: f64) -> Result<RSVector> {
    check_knot_indices(p, q)?;
    let h = move |u: C64, v: C64| u.powu(p) * v.powu(q);
    maxwell_field(&h, &basis_eta_bar(1)?, x, a)
}

fn cross(u: [C64; 3], v: [C64; 3]) -> [C64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// Bateman field `∇α × ∇β` with `α = ψ₁`, `β = ψ₀` and analytic gradients.
///
/// This ordering gives `F_B = −i F_H`; the opposite one flips the sign.
pub fn bateman_field(x: &SpacetimePoint, a: f64, eta_bar: &Spinor) -> Result<RSVector> {
    let g = psi_gradient(x, eta_bar, a)?;
    let grad_alpha = [g[1][1], g[2][1], g[3][1]];
    let grad_beta = [g[1][0], g[2][0], g[3][0]];
    Ok(RSVector(cross(grad_alpha, grad_beta)))
}

/// `|∇α×∇β − i(∂_tα ∇β − ∂_tβ ∇α)|` relative to `|∇α×∇β|`, where
/// `grad[μ] = [∂_μα, ∂_μβ]`.
pub fn bateman_condition_residual(grad: &[[C64; 2]; 4]) -> f64 {
    let ga = [grad[1][0], grad[2][0], grad[3][0]];
    let gb = [grad[1][1], grad[2][1], grad[3][1]];
    let lhs = cross(ga, gb);
    let (ta, tb) = (grad[0][0], grad[0][1]);
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for k in 0..3 {
        let rhs = I * (ta * gb[k] - tb * ga[k]);
        num = num.max((lhs[k] - rhs).norm());
        den = den.max(lhs[k].norm());
    }
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::c;

    fn pt(t: f64, x: f64, y: f64, z: f64) -> SpacetimePoint {
        SpacetimePoint::new(t, x, y, z)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn d_factor_examples() {
        assert_eq!(d_factor(&SpacetimePoint::ORIGIN, 1.0).unwrap(), re(1.0));
        assert!(close(d_factor(&pt(1.0, 0.0, 0.0, 0.0), 1.0).unwrap(), c(0.0, -0.5), 1e-16));
        assert!(close(d_factor(&pt(0.0, 1.0, 0.0, 0.0), 1.0).unwrap(), re(0.5), 1e-16));
        assert!(matches!(d_factor(&SpacetimePoint::ORIGIN, 0.0), Err(Error::Domain(_))));
        assert!(d_factor(&SpacetimePoint::ORIGIN, -1.0).is_err());
    }

    #[test]
    fn psi_examples() {
        let e1 = basis_eta_bar(1).unwrap();
        let e2 = basis_eta_bar(2).unwrap();
        let p = psi_spinor(&SpacetimePoint::ORIGIN, &e1, 1.0).unwrap();
        assert_eq!(p.components(), [c(0.0, -1.0), re(0.0)]);
        let p = psi_spinor(&SpacetimePoint::ORIGIN, &e2, 1.0).unwrap();
        assert_eq!(p.components(), [re(0.0), c(0.0, -1.0)]);
        // (t, z) = (0, 1): D = 1/2, t₊ = 1 − i, x₊ = 0.
        let p = psi_spinor(&pt(0.0, 0.0, 0.0, 1.0), &e1, 1.0).unwrap();
        assert!(close(p.c0, c(0.5, -0.5), 1e-15));
        assert!(close(p.c1, re(0.0), 1e-15));
    }

    #[test]
    fn psi_matches_light_cone_form() {
        let x = pt(0.4, -0.3, 1.1, 0.7);
        let lc = LightCone::new(&x, 1.3);
        let m = shifted_position_matrix(&x, 1.3);
        assert!(close(m.0[0][0], lc.t_plus, 1e-15));
        assert!(close(m.0[0][1], lc.x_minus, 1e-15));
        assert!(close(m.0[1][0], lc.x_plus, 1e-15));
        assert!(close(m.0[1][1], lc.t_minus, 1e-15));
        let at = C64::new(1.3, 0.4);
        assert!(close(lc.q(), at * at - 0.09 - 1.21 + 0.49, 1e-14));
    }

    #[test]
    fn psi_requires_dotted_upper() {
        let bad = Spinor::lower(re(1.0), re(0.0));
        assert!(matches!(psi_spinor(&SpacetimePoint::ORIGIN, &bad, 1.0), Err(Error::Contract(_))));
    }

    #[test]
    fn upsilon_examples() {
        let zero = Spinor::upper(re(0.0), re(0.0));
        let e1 = basis_eta_bar(1).unwrap();
        let x = pt(0.3, 0.2, -0.5, 0.9);
        let u = upsilon_massless(&zero, &e1, &x, 1.0).unwrap();
        assert!(close(u, d_factor(&x, 1.0).unwrap(), 1e-16));
        let eta = Spinor::upper(re(1.0), re(0.0));
        let u = upsilon_massless(&eta, &e1, &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert!(close(u, re((-1.0f64).exp()), 1e-15));
    }

    #[test]
    fn weyl_hopfions_from_generic_formula() {
        let e1 = basis_eta_bar(1).unwrap();
        let e2 = basis_eta_bar(2).unwrap();
        let one = |_: C64, _: C64| re(1.0);
        let w = weyl_field(&one, &e1, &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert_eq!(w.components(), [c(0.0, -1.0), re(0.0)]);
        let w = weyl_field(&one, &e2, &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert_eq!(w.components(), [re(0.0), c(0.0, -1.0)]);
        for x in [pt(0.3, -1.0, 0.5, 0.2), pt(-1.5, 0.1, 0.9, -0.4)] {
            for which in [1, 2] {
                let g = weyl_field(&one, &basis_eta_bar(which).unwrap(), &x, 1.0).unwrap();
                let h = weyl_hopfion(which, &x, 1.0).unwrap();
                assert!(close(g.c0, h.c0, 1e-14) && close(g.c1, h.c1, 1e-14));
            }
        }
        // h₁ ≡ −i only rescales the field.
        let minus_i = |_: C64, _: C64| -I;
        let w = weyl_field(&minus_i, &e1, &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert_eq!(w.components(), [re(-1.0), re(0.0)]);
    }

    #[test]
    fn maxwell_hopfion_examples() {
        let f = maxwell_hopfion(1, &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert_eq!(f.0, [re(-1.0), c(0.0, -1.0), re(0.0)]);
        assert!(f.self_dot().norm() < 1e-15);
        let minus_one = |_: C64, _: C64| re(-1.0);
        let x = pt(0.7, 0.2, -0.3, 1.1);
        for which in [1, 2] {
            let g = maxwell_field(&minus_one, &basis_eta_bar(which).unwrap(), &x, 1.0).unwrap();
            let h = maxwell_hopfion(which, &x, 1.0).unwrap();
            assert!(g.sub(&h).norm_sqr().sqrt() <= 1e-14 * h.norm_sqr().sqrt());
        }
        let g = maxwell_field(&minus_one, &basis_eta_bar(2).unwrap(), &SpacetimePoint::ORIGIN, 1.0).unwrap();
        assert!(g.sub(&maxwell_hopfion(2, &SpacetimePoint::ORIGIN, 1.0).unwrap()).norm_sqr() < 1e-30);
    }

    #[test]
    fn rs_spinor_roundtrip() {
        let f = RSVector::new(c(0.3, 1.0), c(-2.0, 0.5), c(0.25, -0.75));
        let back = rs_from_spinor(&spinor_from_rs(&f));
        assert!(back.sub(&f).norm_sqr() < 1e-30);
    }

    #[test]
    fn knot_indices() {
        assert!(knot_field(1, 1, &SpacetimePoint::ORIGIN, 1.0).is_ok());
        assert!(knot_field(2, 3, &SpacetimePoint::ORIGIN, 1.0).is_ok());
        assert_eq!(knot_field(2, 4, &SpacetimePoint::ORIGIN, 1.0), Err(Error::NotCoprime { p: 2, q: 4 }));
        assert!(knot_field(0, 1, &SpacetimePoint::ORIGIN, 1.0).is_err());
    }

    #[test]
    fn bateman_at_origin() {
        let fb = bateman_field(&SpacetimePoint::ORIGIN, 1.0, &basis_eta_bar(1).unwrap()).unwrap();
        for (u, v) in fb.0.iter().zip([c(0.0, 1.0), re(-1.0), re(0.0)]) {
            assert!(close(*u, v, 1e-15), "{fb:?}");
        }
    }

    #[test]
    fn bateman_is_minus_i_hopfion() {
        for x in [pt(0.3, -0.4, 1.2, 0.5), pt(-1.1, 0.9, 0.2, -1.7)] {
            let fb = bateman_field(&x, 1.0, &basis_eta_bar(1).unwrap()).unwrap();
            let fh = maxwell_hopfion(1, &x, 1.0).unwrap();
            assert!(fb.sub(&fh.scale(-I)).norm_sqr().sqrt() <= 1e-13 * fh.norm_sqr().sqrt());
        }
    }

    #[test]
    fn bateman_condition_holds_for_psi_components() {
        let g = psi_gradient(&pt(0.7, 0.1, -0.6, 0.4), &basis_eta_bar(2).unwrap(), 1.0).unwrap();
        assert!(bateman_condition_residual(&g) < 1e-13);
        let mut bad = g;
        bad[0][0] += 0.1;
        assert!(bateman_condition_residual(&bad) > 1e-3);
    }

    #[test]
    fn analytic_gradient_matches_difference_quotient() {
        let e = Spinor::upper_dotted(c(0.3, 0.4), c(-0.7, 0.1));
        let x = pt(0.2, 0.5, -0.8, 0.3);
        let g = psi_gradient(&x, &e, 1.0).unwrap();
        let h = 1e-6;
        for mu in 0..4 {
            let p = psi_spinor(&x.shifted(mu, h), &e, 1.0).unwrap();
            let m = psi_spinor(&x.shifted(mu, -h), &e, 1.0).unwrap();
            for k in 0..2 {
                let fd = (p.component(k) - m.component(k)) / (2.0 * h);
                assert!(close(fd, g[mu][k], 1e-8), "mu={mu} k={k}");
            }
        }
    }
}
