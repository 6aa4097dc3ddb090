//! Macdonald functions `K_n(z)` of complex argument and the composite
//! `𝔎_n = K_n(m s)/s^n` of the complexified spacetime distance `s`.
//!
//! `K_0` and `K_1` come from the ascending series for `|z| ≤ 2`, Steed's
//! continued fraction (Temme's CF2 form) for `2 < |z| < 30`, and the
//! Hankel asymptotic expansion for `|z| ≥ 30`. Higher orders follow by
//! upward recurrence, which is stable because `K_n` is the dominant solution.

use crate::error::{Error, Result};
use crate::spacetime::{re, SpacetimePoint, C64, I};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_RADIUS: f64 = 30.0;

fn check_argument(z: C64) -> Result<()> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("K_n(z) needs Re z > 0, got z = {z}")));
    }
    Ok(())
}

/// `(K_0(z), K_1(z))` from the ascending series.
fn k01_series(z: C64) -> (C64, C64) {
    let half = z * 0.5;
    let q = half * half;
    let ln_half = half.ln();
    // term_k = q^k / (k!)^2 for K_0; term1_k = q^k / (k! (k+1)!) for K_1
    let mut term = re(1.0);
    let mut term1 = re(1.0);
    let mut harmonic = 0.0;
    let mut i0 = C64::default();
    let mut i1 = C64::default();
    let mut s0 = C64::default();
    let mut s1 = C64::default();
    for k in 0..60 {
        let kf = k as f64;
        let psi_k1 = -EULER_GAMMA + harmonic;
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);
        i0 += term;
        i1 += term1;
        s0 += term * harmonic;
        s1 += term1 * (psi_k1 + psi_k2);
        if term.norm() < 1e-18 * i0.norm() && k > 2 {
            break;
        }
        harmonic += 1.0 / (kf + 1.0);
        term = term * q / ((kf + 1.0) * (kf + 1.0));
        term1 = term1 * q / ((kf + 1.0) * (kf + 2.0));
    }
    let i1 = i1 * half;
    let k0 = -(ln_half + EULER_GAMMA) * i0 + s0;
    let k1 = z.inv() + ln_half * i1 - half * 0.5 * s1;
    (k0, k1)
}

/// `(K_0(z), K_1(z))` by Steed's algorithm for the continued fraction CF2.
fn k01_continued_fraction(z: C64) -> (C64, C64) {
    let a1 = 0.25;
    let mut b = (z + 1.0) * 2.0;
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = C64::default();
    let mut q2 = re(1.0);
    let mut q = re(a1);
    let mut c = re(a1);
    let mut a = -a1;
    let mut s = q * delh + 1.0;
    for i in 1..20_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -c * a / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (b + d * a).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-17 * s.norm() {
            break;
        }
    }
    let h = h * a1;
    let k0 = (re(std::f64::consts::FRAC_PI_2) / z).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// `K_ν(z)` for ν ∈ {0, 1} from the large-argument expansion.
fn k_asymptotic(nu: u32, z: C64) -> C64 {
    let mu = 4.0 * (nu * nu) as f64;
    let prefactor = (re(std::f64::consts::FRAC_PI_2) / z).sqrt() * (-z).exp();
    let mut term = re(1.0);
    let mut sum = re(1.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term = term * (mu - odd * odd) / (k as f64 * 8.0 * z);
        let size = term.norm();
        if size > last {
            break;
        }
        sum += term;
        last = size;
        if size < 1e-18 * sum.norm() {
            break;
        }
    }
    prefactor * sum
}

fn k01(z: C64) -> (C64, C64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        k01_series(z)
    } else if r < ASYMPTOTIC_RADIUS {
        k01_continued_fraction(z)
    } else {
        (k_asymptotic(0, z), k_asymptotic(1, z))
    }
}

/// `K_0(z), …, K_nmax(z)` for `Re z > 0`.
pub fn macdonald_k_orders(nmax: usize, z: C64) -> Result<Vec<C64>> {
    check_argument(z)?;
    let (k0, k1) = k01(z);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(k0);
    if nmax >= 1 {
        out.push(k1);
    }
    let zinv = z.inv();
    for n in 1..nmax {
        let next = out[n - 1] + out[n] * zinv * (2.0 * n as f64);
        out.push(next);
    }
    Ok(out)
}

/// The Macdonald function `K_n(z)` (modified Bessel function of the second kind).
///
/// Negative orders are rejected: `K_{−n} = K_n`, but no caller needs them.
pub fn macdonald_k(n: i32, z: C64) -> Result<C64> {
    if n < 0 {
        return Err(Error::Domain(format!("negative order n = {n}")));
    }
    Ok(macdonald_k_orders(n as usize, z)?[n as usize])
}

/// `𝔎_n = K_n(m s)/s^n`.
pub fn frak_k(n: i32, m: f64, s: C64) -> Result<C64> {
    if n < 0 {
        return Err(Error::Domain(format!("negative order n = {n}")));
    }
    Ok(frak_k_orders(n as usize, m, s)?[n as usize])
}

/// `𝔎_0, …, 𝔎_nmax` at one argument, sharing the Bessel evaluation.
pub fn frak_k_orders(nmax: usize, m: f64, s: C64) -> Result<Vec<C64>> {
    if !(m > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("need Re s > 0, got s = {s}")));
    }
    let k = macdonald_k_orders(nmax, s * m)?;
    let sinv = s.inv();
    let mut pow = re(1.0);
    Ok(k
        .into_iter()
        .map(|kn| {
            let v = kn * pow;
            pow *= sinv;
            v
        })
        .collect())
}

/// `s = √((a+it)² + x² + y² + z²)` on the principal branch.
pub fn complex_distance(x: &SpacetimePoint, a: f64) -> Result<C64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("scale a must be positive, got {a}")));
    }
    let at = re(a) + I * x.t;
    Ok((at * at + x.r2()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::c;

    // Values of K_0(1), K_1(1) frozen from quadrature of ∫ e^{−z cosh t} cosh(nt) dt.
    const K0_1: f64 = 0.42102443824070834;
    const K1_1: f64 = 0.6019072301972346;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn unit_argument_values() {
        assert!(rel(macdonald_k(0, re(1.0)).unwrap(), re(K0_1)) < 1e-14);
        assert!(rel(macdonald_k(1, re(1.0)).unwrap(), re(K1_1)) < 1e-14);
        let k2 = macdonald_k(2, re(1.0)).unwrap();
        assert!(rel(k2, re(K0_1 + 2.0 * K1_1)) < 1e-14);
    }

    #[test]
    fn frak_examples() {
        assert!(rel(frak_k(1, 1.0, re(1.0)).unwrap(), re(K1_1)) < 1e-14);
        assert!(rel(frak_k(2, 1.0, re(1.0)).unwrap(), re(1.6248388986351774)) < 1e-14);
        let s = c(1.3, 0.4);
        let k0 = macdonald_k(0, s * 2.5).unwrap();
        assert!(rel(frak_k(0, 2.5, s).unwrap(), k0) < 1e-15);
    }

    #[test]
    fn branches_agree_at_their_borders() {
        for arg in [-1.2, -0.5, 0.0, 0.7, 1.3] {
            for r in [SERIES_RADIUS, ASYMPTOTIC_RADIUS] {
                let z = C64::from_polar(r, arg);
                let (a0, a1) = if r == SERIES_RADIUS { k01_series(z) } else { k01_continued_fraction(z) };
                let (b0, b1) = if r == SERIES_RADIUS {
                    k01_continued_fraction(z)
                } else {
                    (k_asymptotic(0, z), k_asymptotic(1, z))
                };
                assert!(rel(a0, b0) < 1e-12, "K0 at {z}: {a0} vs {b0}");
                assert!(rel(a1, b1) < 1e-12, "K1 at {z}: {a1} vs {b1}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(macdonald_k(0, c(-1.0, 0.5)), Err(Error::Domain(_))));
        assert!(matches!(macdonald_k(1, c(0.0, 2.0)), Err(Error::Domain(_))));
        assert!(matches!(macdonald_k(-1, re(1.0)), Err(Error::Domain(_))));
        assert!(matches!(frak_k(1, 0.0, re(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn conjugate_symmetry() {
        let z = c(0.8, 1.7);
        for n in 0..5 {
            let a = macdonald_k(n, z).unwrap();
            let b = macdonald_k(n, z.conj()).unwrap();
            assert!(rel(a.conj(), b) < 1e-14);
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(complex_distance(&SpacetimePoint::ORIGIN, 1.0).unwrap(), re(1.0));
        let s = complex_distance(&SpacetimePoint::new(0.0, 1.0, 0.0, 0.0), 1.0).unwrap();
        assert!((s - re(2f64.sqrt())).norm() < 1e-15);
        let s = complex_distance(&SpacetimePoint::new(1.0, 0.0, 0.0, 0.0), 1.0).unwrap();
        assert!((s - c(1.0, 1.0)).norm() < 1e-15);
        assert!(complex_distance(&SpacetimePoint::ORIGIN, 0.0).is_err());
    }

    #[test]
    fn distance_has_positive_real_part_and_no_jumps() {
        // Dense walk along lines through spacetime.
        let dirs = [[1.0, 0.0, 0.0, 0.0], [0.6, 0.8, 0.0, 0.0], [1.0, 0.3, -0.7, 0.2]];
        for d in dirs {
            let mut prev: Option<C64> = None;
            for i in -4000..=4000 {
                let l = i as f64 * 1e-3;
                let p = SpacetimePoint::new(d[0] * l, d[1] * l + 0.1, d[2] * l, d[3] * l - 0.2);
                let s = complex_distance(&p, 1.0).unwrap();
                assert!(s.re > 0.0);
                if let Some(q) = prev {
                    assert!((s - q).norm() < 1e-2, "jump at {p:?}");
                }
                prev = Some(s);
            }
        }
    }
}
