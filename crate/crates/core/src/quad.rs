//! Adaptive Gauss–Kronrod quadrature and Gauss–Hermite rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::spacetime::C64;

/// Values that can be accumulated by the integrators.
pub trait QuadValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn add(self, o: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    fn norm(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl QuadValue for C64 {
    fn zero() -> Self {
        C64::default()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn norm(&self) -> f64 {
        C64::norm(*self)
    }
    fn is_finite(&self) -> bool {
        C64::is_finite(*self)
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    fn zero() -> Self {
        [0.0; N]
    }
    fn add(self, o: Self) -> Self {
        let mut r = self;
        for (a, b) in r.iter_mut().zip(o) {
            *a += b;
        }
        r
    }
    fn scale(self, k: f64) -> Self {
        self.map(|v| v * k)
    }
    fn norm(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
    fn is_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

// Gauss–Kronrod 10/21 nodes and weights (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208745777670,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
// Gauss weights belong to the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals kept by the adaptive driver.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-11, max_intervals: 2000 }
    }
}

impl QuadOptions {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn gk21<T: QuadValue>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc.scale(WGK[10]);
    let mut gauss = T::zero();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let s = f1.add(f2);
        kronrod = kronrod.add(s.scale(WGK[j]));
        if j % 2 == 1 {
            gauss = gauss.add(s.scale(WG[j / 2]));
        }
    }
    let k = kronrod.scale(half);
    let g = gauss.scale(half);
    let err = k.add(g.scale(-1.0)).norm();
    (k, err)
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Globally adaptive 21-point Gauss–Kronrod integration over `[a, b]`.
pub fn integrate<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> QuadResult<T> {
    integrate_panels(&f, &[a, b], opts)
}

/// As [`integrate`], starting from the given breakpoints.
pub fn integrate_panels<T: QuadValue>(
    f: &impl Fn(f64) -> T,
    breaks: &[f64],
    opts: &QuadOptions,
) -> QuadResult<T> {
    let mut heap = BinaryHeap::new();
    let mut total = T::zero();
    let mut err_total = 0.0;
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        let (v, e) = gk21(f, w[0], w[1]);
        evaluations += 21;
        total = total.add(v);
        err_total += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }
    let tol = |total: &T| opts.abs_tol.max(opts.rel_tol * total.norm());
    while err_total > tol(&total) && heap.len() < opts.max_intervals {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(f, worst.a, mid);
        let (v2, e2) = gk21(f, mid, worst.b);
        evaluations += 42;
        total = total.add(worst.value.scale(-1.0)).add(v1).add(v2);
        err_total += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    let (mut value, mut error) = (T::zero(), 0.0);
    for s in heap.iter() {
        value = value.add(s.value);
        error += s.error;
    }
    let converged = error <= tol(&value) && value.is_finite();
    QuadResult { value, error, evaluations, converged }
}

/// Integral over `[a, ∞)` through the substitution `x = a + u/(1 − u)`.
pub fn integrate_to_infinity<T: QuadValue>(
    f: impl Fn(f64) -> T,
    a: f64,
    opts: &QuadOptions,
) -> QuadResult<T> {
    let g = |u: f64| {
        if u >= 1.0 {
            return T::zero();
        }
        let v = 1.0 - u;
        f(a + u / v).scale(1.0 / (v * v))
    };
    integrate(g, 0.0, 1.0, opts)
}

/// Gauss–Hermite nodes and weights for the weight `exp(−x²)`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        // Initial guesses for the largest roots, then from previous roots.
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x: f64| x.powi(5) - 2.0 * x * x, -1.0, 2.0, &QuadOptions::default());
        assert!((r.value - (63.0 / 6.0 - 6.0)).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn oscillatory_complex_integrand() {
        // ∫_0^{2π} e^{i 7 x} cos x dx = 0 ; ∫_0^π e^{ix} dx = 2i
        let r = integrate(|x: f64| C64::from_polar(1.0, x), 0.0, PI, &QuadOptions::default());
        assert!((r.value - C64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn semi_infinite_gaussian() {
        let r = integrate_to_infinity(|x: f64| (-x * x).exp(), 0.0, &QuadOptions::default());
        assert!((r.value - PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hermite_rule_moments() {
        let (x, w) = gauss_hermite(20);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m0 - PI.sqrt()).abs() < 1e-13);
        assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-13);
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-12);
    }
}
