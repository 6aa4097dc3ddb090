use proptest::prelude::*;

use hopfion::fieldlines::{linking_number, Vec3};
use hopfion::solutions::{maxwell_stress, EnergySign, FieldValue, SolutionFamily, SolutionId};
use hopfion::special::{complex_distance, macdonald_k_orders};
use hopfion::verify::{residual_dirac, ResidualConfig};
use hopfion::{SpacetimePoint, C64};

fn point() -> impl Strategy<Value = SpacetimePoint> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(t, x, y, z)| SpacetimePoint::new(t, x, y, z))
}

fn maxwell_family() -> impl Strategy<Value = SolutionId> {
    prop_oneof![
        Just(SolutionId::new(SolutionFamily::MaxwellHopfion1)),
        Just(SolutionId::new(SolutionFamily::MaxwellHopfion2)),
        Just(SolutionId::knot(1, 1)),
        Just(SolutionId::knot(2, 3)),
        Just(SolutionId::knot(3, 2)),
        Just(SolutionId::knot(1, 4)),
    ]
}

fn massive_family() -> impl Strategy<Value = SolutionId> {
    prop_oneof![
        Just(SolutionId::new(SolutionFamily::Psi2)),
        Just(SolutionId::new(SolutionFamily::Psi4)),
        Just(SolutionId::new(SolutionFamily::Psi6)),
        Just(SolutionId::new(SolutionFamily::Psi8)),
        Just(SolutionId::dirac_base(0, true)),
        Just(SolutionId::dirac_base(1, false)),
    ]
}

fn ring(center: Vec3, radius: f64, normal_axis: usize, n: usize) -> Vec<Vec3> {
    (0..n)
        .map(|i| {
            let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let (a, b) = (radius * th.cos(), radius * th.sin());
            let mut p = center;
            let (i1, i2) = ((normal_axis + 1) % 3, (normal_axis + 2) % 3);
            p[i1] += a;
            p[i2] += b;
            p
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maxwell_fields_are_null(id in maxwell_family(), x in point()) {
        let FieldValue::RS(f) = id.evaluate(&x).unwrap() else { panic!("not a Maxwell field") };
        prop_assert!(f.self_dot().norm() <= 1e-12 * f.norm_sqr());
        let (u, s) = maxwell_stress(&f);
        let smag = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        prop_assert!((smag - u).abs() <= 1e-12 * u);
    }

    #[test]
    fn scale_a_is_a_dilation(x in point(), a in 0.3..3.0f64) {
        // F_a(x) = F_1(x/a) / a⁴ for the Maxwell hopfion
        let id = SolutionId { a, ..SolutionId::new(SolutionFamily::MaxwellHopfion1) };
        let y = SpacetimePoint::new(x.t / a, x.x / a, x.y / a, x.z / a);
        let fa = id.evaluate(&x).unwrap().components();
        let f1 = SolutionId::new(SolutionFamily::MaxwellHopfion1).evaluate(&y).unwrap().components();
        for (p, q) in fa.iter().zip(&f1) {
            prop_assert!((p * a.powi(4) - q).norm() <= 1e-12 * (1.0 + q.norm()));
        }
    }

    #[test]
    fn dirac_currents_are_causal(id in massive_family(), x in point(), neg in any::<bool>()) {
        let id = if neg { id.with_energy_sign(EnergySign::Negative) } else { id };
        let j = id.current(&x).unwrap().re();
        let spatial = (j[1] * j[1] + j[2] * j[2] + j[3] * j[3]).sqrt();
        prop_assert!(j[0] >= 0.0);
        prop_assert!(spatial <= j[0] * (1.0 + 1e-12));
    }

    #[test]
    fn mass_sets_the_length_scale(x in point(), m in 0.5..2.0f64) {
        // with a scaled along, Ψ(m, a; x) = Ψ(1, m a; m x) up to a constant factor
        let id = SolutionId { m, a: 1.0 / m, ..SolutionId::new(SolutionFamily::Psi2) };
        let base = SolutionId::new(SolutionFamily::Psi2);
        let y = SpacetimePoint::new(m * x.t, m * x.x, m * x.y, m * x.z);
        let p = id.evaluate(&x).unwrap().components();
        let q = base.evaluate(&y).unwrap().components();
        let (i, _) = q.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap();
        let k = p[i] / q[i];
        for (u, v) in p.iter().zip(&q) {
            prop_assert!((u - k * v).norm() <= 1e-10 * p[i].norm());
        }
    }

    #[test]
    fn macdonald_recurrence(r in 0.1..30.0f64, arg in -1.4..1.4f64) {
        let z = C64::from_polar(r, arg);
        let k = macdonald_k_orders(7, z).unwrap();
        for n in 1..7usize {
            let res = k[n + 1] - k[n - 1] - k[n] * (2.0 * n as f64) / z;
            prop_assert!(res.norm() <= 1e-9 * k[n + 1].norm());
        }
        // conjugate symmetry K_n(z̄) = conj K_n(z)
        let kc = macdonald_k_orders(7, z.conj()).unwrap();
        for n in 0..=7 {
            prop_assert!((kc[n] - k[n].conj()).norm() <= 1e-13 * k[n].norm());
        }
    }

    #[test]
    fn complex_distance_has_positive_real_part(x in point(), a in 0.1..3.0f64) {
        let s = complex_distance(&x, a).unwrap();
        prop_assert!(s.re > 0.0);
        let d = C64::new(a, x.t);
        let s2 = d * d + x.x * x.x + x.y * x.y + x.z * x.z;
        prop_assert!((s * s - s2).norm() <= 1e-12 * (1.0 + s2.norm()));
    }

    #[test]
    fn linking_is_invariant_under_rigid_motion(shift in prop::array::uniform3(-3.0..3.0f64), flip in any::<bool>()) {
        let a = ring([0.0, 0.0, 0.0], 1.0, 2, 96);
        let mut b = ring([1.0, 0.0, 0.0], 1.0, 1, 96);
        if flip {
            b.reverse();
        }
        let moved = |l: &[Vec3]| l.iter().map(|p| [p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]]).collect::<Vec<_>>();
        let lk0 = linking_number(&a, &b).unwrap();
        let lk1 = linking_number(&moved(&a), &moved(&b)).unwrap();
        prop_assert_eq!(lk0.rounded.abs(), 1);
        prop_assert_eq!(lk0.rounded, lk1.rounded);
        prop_assert!((lk0.value - lk1.value).abs() < 1e-9);
    }
}

#[test]
fn negative_energy_residual_matches_positive() {
    let pts = hopfion::verify::sample_points(30, 2.0, 11);
    let cfg = ResidualConfig::default();
    for f in [SolutionFamily::Psi2, SolutionFamily::Psi8] {
        for sign in [EnergySign::Positive, EnergySign::Negative] {
            let id = SolutionId::new(f).with_energy_sign(sign);
            let field = move |x: &SpacetimePoint| Ok(id.evaluate(x)?.components());
            let r = residual_dirac(&field, id.m, &pts, &cfg);
            assert!(r.max_relative <= 1e-6, "{} {:?}", id.label(), r);
        }
    }
}
