//! Massive solutions in the Weyl representation, `Ψ = (φ_A, χ^Ȧ)`.
//!
//! All of them are polynomials in `t_±`, `x_±` times `𝔎_n = K_n(ms)/s^n`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::solutions::fields::Bispinor;
use crate::solutions::massless::LightCone;
use crate::spacetime::{SpacetimePoint, C64, I};
use crate::special::{complex_distance, frak_k_orders};

fn check_params(a: f64, m: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("scale a must be positive, got {a}")));
    }
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(())
}

struct Frame {
    lc: LightCone,
    k: Vec<C64>,
    q: C64,
}

impl Frame {
    fn new(x: &SpacetimePoint, a: f64, m: f64, nmax: usize) -> Result<Self> {
        check_params(a, m)?;
        let s = complex_distance(x, a)?;
        let lc = LightCone::new(x, a);
        Ok(Self { lc, k: frak_k_orders(nmax, m, s)?, q: lc.q() })
    }
}

/// One of the four base solutions built from `𝔎₁` and `𝔎₂`.
///
/// With `dotted == false` the free index is undotted and sits on `φ`
/// (`φ_A = δ_A^B 𝔎₁`); with `dotted == true` it is dotted and sits on `χ`.
pub fn dirac_base(index: u8, dotted: bool, x: &SpacetimePoint, a: f64, m: f64) -> Result<Bispinor> {
    if index > 1 {
        return Err(Error::InvalidParameter(format!("base index must be 0 or 1, got {index}")));
    }
    let f = Frame::new(x, a, m, 2)?;
    let LightCone { t_plus, t_minus, x_plus, x_minus } = f.lc;
    let (k1, k2) = (f.k[1], f.k[2]);
    let norm = PI * m * m / 4.0;
    let b = index as usize;
    let zero = C64::default();
    let mut delta = [zero; 2];
    delta[b] = k1;
    let psi = if dotted {
        // i g_{μAḂ}(x^μ − ia^μ), column Ḃ
        let g = [[t_plus, x_minus], [x_plus, t_minus]];
        Bispinor::new([I * g[0][b] * k2, I * g[1][b] * k2], delta)
    } else {
        // i g_μ^{ȦB}(x^μ − ia^μ), column B
        let g = [[t_minus, -x_minus], [-x_plus, t_plus]];
        Bispinor::new(delta, [I * g[0][b] * k2, I * g[1][b] * k2])
    };
    Ok(psi.scale(C64::from(norm)))
}

fn check_k(k: u8) -> Result<()> {
    if ![2, 4, 6, 8].contains(&k) {
        return Err(Error::InvalidParameter(format!("k must be one of 2, 4, 6, 8, got {k}")));
    }
    Ok(())
}

/// The higher solutions `Ψ₂, Ψ₄, Ψ₆, Ψ₈` obtained by differentiating the
/// massive generating function.
///
/// `Ψ₆` and `Ψ₈` differ from [`psi_k_printed`] in three terms; these are
/// the forms that actually solve the Dirac equation.
pub fn psi_k(k: u8, x: &SpacetimePoint, a: f64, m: f64) -> Result<Bispinor> {
    check_k(k)?;
    let f = Frame::new(x, a, m, 5)?;
    let LightCone { t_plus: tp, t_minus: tm, x_plus: xp, x_minus: xm } = f.lc;
    let (q, kk) = (f.q, &f.k);
    let rho2 = C64::from(x.x * x.x + x.y * x.y);
    Ok(match k {
        2 => psi2(&f, m),
        4 => psi4(&f, m),
        6 => Bispinor::new(
            [xm * tp * kk[3], -q * kk[3]],
            [
                I * xm * kk[3] * (4.0 / m) - I * xm * rho2 * kk[4],
                I * tp * kk[3] * (4.0 / m) + I * tm * tp * tp * kk[4],
            ],
        )
        .scale(C64::from(m.powi(4) * PI / 96.0)),
        _ => Bispinor::new(
            [xp * tm * q * kk[5], -(xp * xp * tm * tm) * kk[5] * 2.0],
            [I * xp * tm * tm * kk[4], I * xp * xp * tm * kk[4]],
        )
        .scale(C64::from(m.powi(5) * PI / 960.0)),
    })
}

fn psi2(f: &Frame, m: f64) -> Bispinor {
    let lc = &f.lc;
    Bispinor::new([f.k[1], C64::default()], [I * lc.t_minus * f.k[2], -I * lc.x_plus * f.k[2]])
        .scale(C64::from(m * m * PI / 4.0))
}

fn psi4(f: &Frame, m: f64) -> Bispinor {
    let lc = &f.lc;
    Bispinor::new(
        [-I * lc.x_minus * f.k[2], I * lc.t_minus * f.k[2]],
        [lc.x_minus * lc.t_minus * f.k[3] * 2.0, f.q * f.k[3]],
    )
    .scale(C64::from(m.powi(3) * PI / 24.0))
}

/// Verbatim tabulated forms of `Ψ₂ … Ψ₈`.
///
/// `Ψ₆` and `Ψ₈` in this form do not solve the Dirac equation; they are
/// kept so the residual engine can report how far off they are.
pub fn psi_k_printed(k: u8, x: &SpacetimePoint, a: f64, m: f64) -> Result<Bispinor> {
    check_k(k)?;
    let f = Frame::new(x, a, m, 5)?;
    let LightCone { t_plus: tp, t_minus: tm, x_plus: xp, x_minus: xm } = f.lc;
    let (q, kk) = (f.q, &f.k);
    let rho2 = C64::from(x.x * x.x + x.y * x.y);
    Ok(match k {
        2 => psi2(&f, m),
        4 => psi4(&f, m),
        6 => Bispinor::new(
            [xm * tm * kk[3], -q * kk[3]],
            [
                I * xm * kk[3] * (4.0 / m) - I * xm * rho2 * kk[4],
                I * tp * kk[3] * (4.0 / m) + tm * tp * tp * kk[4],
            ],
        )
        .scale(C64::from(m.powi(4) * PI / 96.0)),
        _ => Bispinor::new(
            [xp * tm * q * kk[5], -(xp * xp * tm * tm) * kk[5] * 2.0],
            [I * xp * tm * tm * kk[4], I * xm * xm * tm * kk[4]],
        )
        .scale(C64::from(m.powi(5) * PI / 960.0)),
    })
}

/// Negative-energy partner: `Ψ⁻(x) = (φ(−x), −χ(−x))`.
///
/// Plain `Ψ(−x)` flips the sign of the derivative terms but not of the
/// mass terms, so the lower spinor has to change sign as well.
pub fn negative_energy(psi_at_reflected: Bispinor) -> Bispinor {
    psi_at_reflected.chirality_flipped()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{c, re};
    use crate::special::macdonald_k;

    const K1_1: f64 = 0.6019072301972346;
    const K2_1: f64 = 1.6248388986351774;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn psi2_at_origin() {
        let p = psi_k(2, &SpacetimePoint::ORIGIN, 1.0, 1.0).unwrap().components();
        let expect = [K1_1, 0.0, K2_1, 0.0].map(|v| re(PI / 4.0 * v));
        for (u, v) in p.iter().zip(expect) {
            assert!(close(*u, v, 1e-14), "{p:?}");
        }
    }

    #[test]
    fn psi4_at_origin() {
        let k3 = macdonald_k(3, re(1.0)).unwrap();
        let p = psi_k(4, &SpacetimePoint::ORIGIN, 1.0, 1.0).unwrap().components();
        let expect = [re(0.0), re(K2_1), re(0.0), k3].map(|v| v * (PI / 24.0));
        for (u, v) in p.iter().zip(expect) {
            assert!(close(*u, v, 1e-14), "{p:?}");
        }
    }

    #[test]
    fn base_with_undotted_zero_is_psi2() {
        let x = SpacetimePoint::new(0.3, -0.7, 0.4, 1.1);
        let a = dirac_base(0, false, &x, 1.0, 1.3).unwrap().components();
        let b = psi_k(2, &x, 1.0, 1.3).unwrap().components();
        for (u, v) in a.iter().zip(b) {
            assert!(close(*u, v, 1e-14));
        }
    }

    #[test]
    fn base_at_origin() {
        // At the origin t_± = −i and x_± = 0.
        let n = PI / 4.0;
        let p = dirac_base(1, false, &SpacetimePoint::ORIGIN, 1.0, 1.0).unwrap().components();
        let e = [re(0.0), re(n * K1_1), re(0.0), re(n * K2_1)];
        for (u, v) in p.iter().zip(e) {
            assert!(close(*u, v, 1e-14), "{p:?}");
        }
        let p = dirac_base(0, true, &SpacetimePoint::ORIGIN, 1.0, 1.0).unwrap().components();
        let e = [re(n * K2_1), re(0.0), re(n * K1_1), re(0.0)];
        for (u, v) in p.iter().zip(e) {
            assert!(close(*u, v, 1e-14), "{p:?}");
        }
    }

    #[test]
    fn printed_and_derived_agree_where_they_should() {
        let x = SpacetimePoint::new(0.2, 0.5, -0.3, 0.8);
        for k in [2, 4] {
            assert_eq!(psi_k(k, &x, 1.0, 1.0).unwrap(), psi_k_printed(k, &x, 1.0, 1.0).unwrap());
        }
        let d = psi_k(6, &x, 1.0, 1.0).unwrap().components();
        let p = psi_k_printed(6, &x, 1.0, 1.0).unwrap().components();
        assert_eq!(d[1], p[1]);
        assert_eq!(d[2], p[2]);
        assert_ne!(d[0], p[0]);
        let d = psi_k(8, &x, 1.0, 1.0).unwrap().components();
        let p = psi_k_printed(8, &x, 1.0, 1.0).unwrap().components();
        assert_eq!(d[..3], p[..3]);
    }

    #[test]
    fn decays_with_mass() {
        // K_n(z) ~ √(π/2z) e^{−z}: the ratio at two masses tracks e^{−Δm Re s}.
        let x = SpacetimePoint::new(0.0, 0.5, 0.0, 0.0);
        let s = complex_distance(&x, 1.0).unwrap();
        let v = |m: f64| dirac_base(0, false, &x, 1.0, m).unwrap().phi[0] / (PI * m * m / 4.0);
        let ratio = v(41.0) / v(40.0);
        let expect = (-s).exp() * (40.0f64 / 41.0).sqrt();
        assert!((ratio - expect).norm() < 2e-2 * expect.norm(), "{ratio} vs {expect}");
    }

    #[test]
    fn rejects_bad_parameters() {
        let o = SpacetimePoint::ORIGIN;
        assert!(matches!(psi_k(3, &o, 1.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(psi_k(2, &o, 0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(psi_k(2, &o, 1.0, -1.0), Err(Error::Domain(_))));
        assert!(dirac_base(2, false, &o, 1.0, 1.0).is_err());
    }

    #[test]
    fn negative_energy_flips_lower_spinor() {
        let b = Bispinor::new([c(1.0, 2.0), re(3.0)], [re(4.0), c(0.0, 5.0)]);
        let n = negative_energy(b);
        assert_eq!(n.phi, b.phi);
        assert_eq!(n.chi, [re(-4.0), c(0.0, -5.0)]);
    }
}
