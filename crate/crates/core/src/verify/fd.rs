use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spacetime::{SpacetimePoint, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Central2,
    Central4,
    /// `(4 D(h/2) − D(h))/3` on the second-order central difference.
    #[default]
    Richardson,
}

impl Scheme {
    pub fn order(self) -> u32 {
        match self {
            Scheme::Central2 => 2,
            Scheme::Central4 | Scheme::Richardson => 4,
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "central-2" | "central2" => Ok(Scheme::Central2),
            "central-4" | "central4" => Ok(Scheme::Central4),
            "richardson" => Ok(Scheme::Richardson),
            _ => Err(Error::UnknownName {
                name: s.into(),
                valid: "central-2, central-4, richardson".into(),
            }),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Central2 => "central-2",
            Scheme::Central4 => "central-4",
            Scheme::Richardson => "richardson",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualConfig {
    pub h: f64,
    pub scheme: Scheme,
}

impl Default for ResidualConfig {
    fn default() -> Self {
        Self { h: 1e-3, scheme: Scheme::Richardson }
    }
}

impl ResidualConfig {
    pub fn new(h: f64, scheme: Scheme) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
        }
        Ok(Self { h, scheme })
    }
}

/// Field sampled componentwise. Errors and non-finite values are treated
/// as unusable stencil points.
pub type Field<'a> = dyn Fn(&SpacetimePoint) -> Result<Vec<C64>> + Sync + 'a;

fn sample(f: &Field<'_>, x: &SpacetimePoint) -> Option<Vec<C64>> {
    let v = f(x).ok()?;
    v.iter().all(|c| c.is_finite()).then_some(v)
}

fn combine(terms: &[(f64, &Vec<C64>)], scale: f64) -> Vec<C64> {
    let n = terms[0].1.len();
    (0..n).map(|i| terms.iter().map(|(w, v)| v[i] * *w).sum::<C64>() * scale).collect()
}

fn d1_c2(f: &Field<'_>, x: &SpacetimePoint, mu: usize, h: f64) -> Option<Vec<C64>> {
    let p = sample(f, &x.shifted(mu, h))?;
    let m = sample(f, &x.shifted(mu, -h))?;
    Some(combine(&[(1.0, &p), (-1.0, &m)], 0.5 / h))
}

fn d2_c2(f: &Field<'_>, x: &SpacetimePoint, mu: usize, h: f64, center: &Vec<C64>) -> Option<Vec<C64>> {
    let p = sample(f, &x.shifted(mu, h))?;
    let m = sample(f, &x.shifted(mu, -h))?;
    Some(combine(&[(1.0, &p), (-2.0, center), (1.0, &m)], 1.0 / (h * h)))
}

fn richardson(fine: Vec<C64>, coarse: Vec<C64>) -> Vec<C64> {
    fine.iter().zip(coarse).map(|(f, c)| (f * 4.0 - c) / 3.0).collect()
}

/// `∂_μ f` by the configured scheme.
pub fn first_derivative(f: &Field<'_>, x: &SpacetimePoint, mu: usize, cfg: &ResidualConfig) -> Option<Vec<C64>> {
    let h = cfg.h;
    match cfg.scheme {
        Scheme::Central2 => d1_c2(f, x, mu, h),
        Scheme::Central4 => {
            let p1 = sample(f, &x.shifted(mu, h))?;
            let m1 = sample(f, &x.shifted(mu, -h))?;
            let p2 = sample(f, &x.shifted(mu, 2.0 * h))?;
            let m2 = sample(f, &x.shifted(mu, -2.0 * h))?;
            Some(combine(&[(-1.0, &p2), (8.0, &p1), (-8.0, &m1), (1.0, &m2)], 1.0 / (12.0 * h)))
        }
        Scheme::Richardson => Some(richardson(d1_c2(f, x, mu, h / 2.0)?, d1_c2(f, x, mu, h)?)),
    }
}

/// `∂_μ² f` by the configured scheme.
pub fn second_derivative(f: &Field<'_>, x: &SpacetimePoint, mu: usize, cfg: &ResidualConfig) -> Option<Vec<C64>> {
    let h = cfg.h;
    let c = sample(f, x)?;
    match cfg.scheme {
        Scheme::Central2 => d2_c2(f, x, mu, h, &c),
        Scheme::Central4 => {
            let p1 = sample(f, &x.shifted(mu, h))?;
            let m1 = sample(f, &x.shifted(mu, -h))?;
            let p2 = sample(f, &x.shifted(mu, 2.0 * h))?;
            let m2 = sample(f, &x.shifted(mu, -2.0 * h))?;
            Some(combine(
                &[(-1.0, &p2), (16.0, &p1), (-30.0, &c), (16.0, &m1), (-1.0, &m2)],
                1.0 / (12.0 * h * h),
            ))
        }
        Scheme::Richardson => {
            Some(richardson(d2_c2(f, x, mu, h / 2.0, &c)?, d2_c2(f, x, mu, h, &c)?))
        }
    }
}

/// `[∂_t f, ∂_x f, ∂_y f, ∂_z f]`.
pub fn gradient(f: &Field<'_>, x: &SpacetimePoint, cfg: &ResidualConfig) -> Option<[Vec<C64>; 4]> {
    Some([
        first_derivative(f, x, 0, cfg)?,
        first_derivative(f, x, 1, cfg)?,
        first_derivative(f, x, 2, cfg)?,
        first_derivative(f, x, 3, cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::re;

    #[test]
    fn schemes_differentiate_a_smooth_function() {
        let f = |x: &SpacetimePoint| Ok(vec![C64::new(x.t.sin() * x.y.exp(), x.z * x.z * x.x)]);
        let x = SpacetimePoint::new(0.3, 0.7, -0.4, 1.2);
        for scheme in [Scheme::Central2, Scheme::Central4, Scheme::Richardson] {
            let cfg = ResidualConfig::new(1e-3, scheme).unwrap();
            let tol = if scheme == Scheme::Central2 { 1e-6 } else { 1e-10 };
            let d = first_derivative(&f, &x, 0, &cfg).unwrap()[0];
            assert!((d - C64::new(0.3f64.cos() * (-0.4f64).exp(), 0.0)).norm() < tol);
            let d = first_derivative(&f, &x, 3, &cfg).unwrap()[0];
            assert!((d - C64::new(0.0, 2.0 * 1.2 * 0.7)).norm() < tol);
            let d2 = second_derivative(&f, &x, 2, &cfg).unwrap()[0];
            assert!((d2 - re(0.3f64.sin() * (-0.4f64).exp())).norm() < 1e3 * tol);
        }
    }

    #[test]
    fn nan_in_stencil_is_reported() {
        let f = |x: &SpacetimePoint| Ok(vec![if x.x > 0.0 { re(f64::NAN) } else { re(1.0) }]);
        let cfg = ResidualConfig::default();
        assert!(first_derivative(&f, &SpacetimePoint::ORIGIN, 1, &cfg).is_none());
        assert!(first_derivative(&f, &SpacetimePoint::ORIGIN, 0, &cfg).is_some());
    }

    #[test]
    fn rejects_bad_step() {
        assert!(ResidualConfig::new(0.0, Scheme::Central2).is_err());
        assert_eq!("central-4".parse::<Scheme>().unwrap(), Scheme::Central4);
        assert!("simpson".parse::<Scheme>().is_err());
    }
}
