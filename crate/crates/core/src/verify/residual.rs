//! Finite-difference residuals of the field equations.
//!
//! Every residual is reported twice: absolute, and relative to the sum of
//! the magnitudes of the individual operator terms, so that the relative
//! figure is independent of the field amplitude and is 1 for a gross
//! violation.

use rayon::prelude::*;

use crate::solutions::{spinor_from_rs, RSVector};
use crate::spacetime::{SpacetimePoint, C64, I};
use crate::spinor::Mat2;
use crate::verify::fd::{gradient, second_derivative, Field, ResidualConfig};
use crate::verify::report::ResidualStats;

/// Sign `s` in `∇×F = s·i ∂_t F` for `F = E + iB`.
pub const RS_CURL_SIGN: f64 = 1.0;

fn over_points(
    pts: &[SpacetimePoint],
    per_point: impl Fn(&SpacetimePoint) -> Option<(f64, f64)> + Sync,
) -> ResidualStats {
    let v: Vec<_> = pts.par_iter().map(|x| (*x, per_point(x))).collect();
    ResidualStats::from_samples(v)
}

/// `(relative, absolute)` from the operator terms of each equation.
pub(crate) fn normalized(rows: &[Vec<C64>]) -> (f64, f64) {
    let mut abs: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for terms in rows {
        abs = abs.max(terms.iter().sum::<C64>().norm());
        scale = scale.max(terms.iter().map(|t| t.norm()).sum());
    }
    if scale > 0.0 {
        (abs / scale, abs)
    } else {
        (abs, abs)
    }
}

fn sigma_terms(d: &[Vec<C64>; 4], offset: usize, sign: f64, factor: C64) -> [Vec<C64>; 2] {
    let v = |mu: usize| [d[mu][offset], d[mu][offset + 1]];
    let s: Vec<[C64; 2]> = (1..4).map(|i| Mat2::pauli(i).apply(v(i))).collect();
    [0, 1].map(|a| {
        let mut t = vec![factor * v(0)[a]];
        t.extend(s.iter().map(|w| factor * w[a] * sign));
        t
    })
}

fn wave_rows(f: &Field<'_>, x: &SpacetimePoint, m: f64, cfg: &ResidualConfig) -> Option<Vec<Vec<C64>>> {
    let center = f(x).ok()?;
    let d2: Vec<Vec<C64>> = (0..4).map(|mu| second_derivative(f, x, mu, cfg)).collect::<Option<_>>()?;
    Some(
        (0..center.len())
            .map(|i| {
                let mut t = vec![d2[0][i], -d2[1][i], -d2[2][i], -d2[3][i]];
                if m != 0.0 {
                    t.push(center[i] * (m * m));
                }
                t
            })
            .collect(),
    )
}

/// `(∂_t² − Δ) f` for every component of `f`.
pub fn residual_dalembert(f: &Field<'_>, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| wave_rows(f, x, 0.0, cfg).map(|r| normalized(&r)))
}

/// `(∂_t² − Δ + m²) f` for every component of `f`.
pub fn residual_kleingordon(f: &Field<'_>, m: f64, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| wave_rows(f, x, m, cfg).map(|r| normalized(&r)))
}

/// `g^{μȦB} ∂_μ φ_B = (∂_t + σ·∇) φ` for a two-component field.
pub fn residual_weyl(f: &Field<'_>, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| {
        let d = gradient(f, x, cfg)?;
        Some(normalized(&sigma_terms(&d, 0, 1.0, C64::from(1.0))))
    })
}

/// Both Maxwell residuals of an RS field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellResidual {
    /// Weyl operator on each column of the symmetric spinor `φ_CD`.
    pub spinor: ResidualStats,
    /// `∇·F = 0` and `∇×F = s·i ∂_t F`.
    pub vector: ResidualStats,
}

pub fn residual_maxwell(f: &Field<'_>, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> MaxwellResidual {
    let spinor = over_points(pts, |x| {
        let d = gradient(f, x, cfg)?;
        // φ_CD flattened as [φ_00, φ_10, φ_01, φ_11]: columns D = 0, 1.
        let flat: [Vec<C64>; 4] = d.map(|g| {
            let p = spinor_from_rs(&RSVector::new(g[0], g[1], g[2]));
            vec![p[0][0], p[1][0], p[0][1], p[1][1]]
        });
        let mut rows = sigma_terms(&flat, 0, 1.0, C64::from(1.0)).to_vec();
        rows.extend(sigma_terms(&flat, 2, 1.0, C64::from(1.0)));
        Some(normalized(&rows))
    });
    let vector = over_points(pts, |x| {
        let d = gradient(f, x, cfg)?;
        let dt = |k: usize| -I * d[0][k] * RS_CURL_SIGN;
        let rows = vec![
            vec![d[1][0], d[2][1], d[3][2]],
            vec![d[2][2], -d[3][1], dt(0)],
            vec![d[3][0], -d[1][2], dt(1)],
            vec![d[1][1], -d[2][0], dt(2)],
        ];
        Some(normalized(&rows))
    });
    MaxwellResidual { spinor, vector }
}

/// `i(∂_t + σ·∇)φ − mχ` and `i(∂_t − σ·∇)χ − mφ` for `Ψ = (φ_0, φ_1, χ^0̇, χ^1̇)`.
pub fn residual_dirac(f: &Field<'_>, m: f64, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| {
        let v = f(x).ok()?;
        let d = gradient(f, x, cfg)?;
        let mut rows = sigma_terms(&d, 0, 1.0, I).to_vec();
        rows.extend(sigma_terms(&d, 2, -1.0, I));
        for (a, row) in rows.iter_mut().enumerate() {
            // row a < 2 pairs with χ_a, rows 2, 3 with φ
            let partner = if a < 2 { v[2 + a] } else { v[a - 2] };
            row.push(-partner * m);
        }
        Some(normalized(&rows))
    })
}

/// `∂_μ j^μ` for a field returning `[j⁰, j¹, j², j³]`.
pub fn current_conservation(j: &Field<'_>, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| {
        let d = gradient(j, x, cfg)?;
        Some(normalized(&[vec![d[0][0], d[1][1], d[2][2], d[3][3]]]))
    })
}

/// `|∇α×∇β − i(∂_tα∇β − ∂_tβ∇α)| / |∇α×∇β|` for a field returning `[α, β]`.
pub fn residual_bateman(ab: &Field<'_>, pts: &[SpacetimePoint], cfg: &ResidualConfig) -> ResidualStats {
    over_points(pts, |x| {
        let d = gradient(ab, x, cfg)?;
        let grad: [[C64; 2]; 4] = d.map(|g| [g[0], g[1]]);
        let rel = crate::solutions::bateman_condition_residual(&grad);
        Some((rel, rel))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::re;
    use crate::verify::fd::Scheme;

    fn pts() -> Vec<SpacetimePoint> {
        vec![
            SpacetimePoint::new(0.3, -0.2, 0.5, 0.1),
            SpacetimePoint::new(-1.0, 0.8, 0.0, -0.6),
            SpacetimePoint::new(1.4, 0.1, -0.9, 0.7),
        ]
    }

    #[test]
    fn dalembert_detects_t_squared() {
        let f = |x: &SpacetimePoint| Ok(vec![re(x.t * x.t)]);
        let s = residual_dalembert(&f, &pts(), &ResidualConfig::default());
        assert!((s.max_absolute - 2.0).abs() < 1e-6);
        assert!((s.max_relative - 1.0).abs() < 1e-9);
        let g = |x: &SpacetimePoint| Ok(vec![re(x.t * x.t + x.x * x.x)]);
        assert!(residual_dalembert(&g, &pts(), &ResidualConfig::default()).max_relative < 1e-6);
    }

    #[test]
    fn plane_waves() {
        let w = |x: &SpacetimePoint| Ok(vec![C64::from_polar(1.0, 2.0 * (x.z - x.t))]);
        assert!(residual_dalembert(&w, &pts(), &ResidualConfig::default()).max_relative < 1e-6);
        let e = |x: &SpacetimePoint| Ok(vec![C64::from_polar(1.0, -1.3 * x.t)]);
        // Second differences at h = 1e-3 carry ~1e-10 rounding; a wider step resolves 1e-10.
        let wide = ResidualConfig::new(1e-2, Scheme::Richardson).unwrap();
        assert!(residual_kleingordon(&e, 1.3, &pts(), &wide).max_relative < 1e-10);
        let rest = |x: &SpacetimePoint| {
            let p = C64::from_polar(1.0, -x.t);
            Ok(vec![p, re(0.0), p, re(0.0)])
        };
        assert!(residual_dirac(&rest, 1.0, &pts(), &ResidualConfig::default()).max_relative < 1e-10);
        assert!(residual_dirac(&rest, 2.0, &pts(), &ResidualConfig::default()).max_relative > 0.1);
    }

    #[test]
    fn constants_solve_first_order_equations() {
        let c = |_: &SpacetimePoint| Ok(vec![C64::new(0.3, 1.0), re(-2.0)]);
        assert_eq!(residual_weyl(&c, &pts(), &ResidualConfig::default()).max_relative, 0.0);
        let f = |_: &SpacetimePoint| Ok(vec![re(1.0), C64::new(0.0, 2.0), re(-0.5)]);
        let r = residual_maxwell(&f, &pts(), &ResidualConfig::default());
        assert_eq!(r.spinor.max_relative, 0.0);
        assert_eq!(r.vector.max_relative, 0.0);
        let j = |_: &SpacetimePoint| Ok(vec![re(1.0), re(0.2), re(0.0), re(0.4)]);
        assert_eq!(current_conservation(&j, &pts(), &ResidualConfig::default()).max_relative, 0.0);
    }

    #[test]
    fn circularly_polarised_wave_fixes_curl_sign() {
        // E = (cos(z−t), sin(z−t), 0), B = ẑ × E: F = (1, i, 0) e^{i(t−z)}.
        let f = |x: &SpacetimePoint| {
            let p = C64::from_polar(1.0, x.t - x.z);
            Ok(vec![p, I * p, re(0.0)])
        };
        let r = residual_maxwell(&f, &pts(), &ResidualConfig::default());
        assert!(r.vector.max_relative < 1e-9, "{r:?}");
        assert!(r.spinor.max_relative < 1e-9, "{r:?}");
    }
}
