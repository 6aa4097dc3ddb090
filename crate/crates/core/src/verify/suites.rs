//! Named groups of checks making up a verification run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fieldlines::{hausdorff_distance, linking_number, trace, trace_many, FieldLine, TraceOptions, Vec3};
use crate::hopf::{hopf_forward, hopf_inverse, jacobian_check, spinor_consistency, HopfPoint, WaveVector};
use crate::oracle::{kg_support, macdonald_by_quadrature, upsilon_by_gauss_hermite, upsilon_by_quadrature, uv_integral, uv_integral_with_cutoff, UvWeight};
use crate::solutions::{
    basis_eta_bar, bateman_field, current_of, d_factor, hopfion_velocity, maxwell_field, maxwell_hopfion, maxwell_spinor,
    maxwell_stress, psi_spinor, upsilon_massless, weyl_current, weyl_field, weyl_hopfion, EnergySign, FieldKind,
    SolutionFamily, SolutionId,
};
use crate::spacetime::{SpacetimePoint, C64};
use crate::special::{complex_distance, frak_k, frak_k_orders, macdonald_k_orders};
use crate::spinor::{lightlike_vector, Spinor};
use crate::verify::dispersion::dispersion_check;
use crate::verify::fd::{ResidualConfig, Scheme};
use crate::verify::report::{CheckRecord, ResidualStats, VerificationReport};
use crate::verify::residual::{
    current_conservation, residual_bateman, residual_dalembert, residual_dirac, residual_kleingordon, residual_maxwell,
    residual_weyl,
};
use crate::verify::sample::{sample_points, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Sample points per finite-difference check.
    pub points: usize,
    pub seed: u64,
    /// Samples lie in `|t| ≤ radius`, `|r| ≤ radius`.
    pub radius: f64,
    pub cfg: ResidualConfig,
    /// Tolerance of the finite-difference residual checks.
    pub tol: f64,
    /// Adds `eps·(1 + t²)` to every component before differentiating.
    pub perturb: Option<f64>,
    /// Restricts the per-solution checks to one solution.
    pub solution: Option<SolutionId>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            points: 100,
            seed: DEFAULT_SEED,
            radius: 2.0,
            cfg: ResidualConfig::default(),
            tol: 1e-6,
            perturb: None,
            solution: None,
        }
    }
}

impl SuiteOptions {
    fn points(&self, n: usize, salt: u64) -> Vec<SpacetimePoint> {
        sample_points(n, self.radius, self.seed.wrapping_add(salt))
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }

    fn selected(&self, all: Vec<SolutionId>) -> Vec<SolutionId> {
        match self.solution {
            Some(s) => all.into_iter().filter(|a| a.family == s.family).map(|_| s).take(1).collect(),
            None => all,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Residuals,
    Nullness,
    Bateman,
    Structural,
    Conservation,
    Dispersion,
    NegativeEnergy,
    Convergence,
    Special,
    Hopf,
    Oracle,
    Topology,
    /// Verbatim tabulated `Ψ₆`, `Ψ₈`; expected to fail, excluded from `all`.
    Printed,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Residuals,
        Suite::Nullness,
        Suite::Bateman,
        Suite::Structural,
        Suite::Conservation,
        Suite::Dispersion,
        Suite::NegativeEnergy,
        Suite::Convergence,
        Suite::Special,
        Suite::Hopf,
        Suite::Oracle,
        Suite::Topology,
        Suite::Printed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Residuals => "residuals",
            Suite::Nullness => "nullness",
            Suite::Bateman => "bateman",
            Suite::Structural => "structural",
            Suite::Conservation => "conservation",
            Suite::Dispersion => "dispersion",
            Suite::NegativeEnergy => "negative-energy",
            Suite::Convergence => "convergence",
            Suite::Special => "special",
            Suite::Hopf => "hopf",
            Suite::Oracle => "oracle",
            Suite::Topology => "topology",
            Suite::Printed => "printed",
        }
    }

    /// Everything `all` expands to.
    pub fn default_set() -> Vec<Suite> {
        Suite::ALL.into_iter().filter(|s| *s != Suite::Printed).collect()
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::default_set());
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("no suite selected".into()));
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|s| seen.insert(*s));
        Ok(out)
    }

    pub fn run(self, opts: &SuiteOptions) -> Result<VerificationReport> {
        match self {
            Suite::Residuals => residuals(opts),
            Suite::Nullness => nullness(opts),
            Suite::Bateman => bateman(opts),
            Suite::Structural => structural(opts),
            Suite::Conservation => conservation(opts),
            Suite::Dispersion => dispersion(opts),
            Suite::NegativeEnergy => negative_energy(opts),
            Suite::Convergence => convergence(opts),
            Suite::Special => special(opts),
            Suite::Hopf => run_hopf_checks(&HopfCheck::ALL, opts),
            Suite::Oracle => run_oracle_checks(&OracleCheck::ALL, opts),
            Suite::Topology => topology(opts),
            Suite::Printed => printed(opts),
        }
    }
}

fn valid_list(names: impl IntoIterator<Item = &'static str>) -> String {
    names.into_iter().collect::<Vec<_>>().join(", ")
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownName {
            name: s.to_string(),
            valid: valid_list(std::iter::once("all").chain(Suite::ALL.map(Suite::name))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn run_suites(suites: &[Suite], opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for s in suites {
        report.extend(s.run(opts)?);
    }
    Ok(report)
}

fn flag(check: &str, solution: &str, value: f64, pass: bool) -> CheckRecord {
    CheckRecord { pass, ..CheckRecord::value(check, solution, value, f64::NAN) }
}

fn stats_of(samples: Vec<(SpacetimePoint, Option<f64>)>) -> ResidualStats {
    ResidualStats::from_samples(samples.into_iter().map(|(x, v)| (x, v.map(|r| (r, r)))))
}

/// Solutions covered by the governing-equation residual suite.
pub fn residual_solutions() -> Vec<SolutionId> {
    let mut v = vec![
        SolutionId::new(SolutionFamily::WeylHopfion1),
        SolutionId::new(SolutionFamily::WeylHopfion2),
        SolutionId::new(SolutionFamily::MaxwellHopfion1),
        SolutionId::new(SolutionFamily::MaxwellHopfion2),
        SolutionId::knot(1, 1),
        SolutionId::knot(2, 3),
        SolutionId::knot(3, 2),
    ];
    for (i, d) in [(0, false), (1, false), (0, true), (1, true)] {
        v.push(SolutionId::dirac_base(i, d));
    }
    for f in [SolutionFamily::Psi2, SolutionFamily::Psi4, SolutionFamily::Psi6, SolutionFamily::Psi8] {
        v.push(SolutionId::new(f));
    }
    v
}

fn maxwell_solutions() -> Vec<SolutionId> {
    residual_solutions().into_iter().filter(|s| s.kind() == FieldKind::Maxwell).collect()
}

/// Field components of a solution, optionally with the planted perturbation.
pub fn component_field(
    id: SolutionId,
    printed: bool,
    perturb: Option<f64>,
) -> impl Fn(&SpacetimePoint) -> Result<Vec<C64>> + Sync {
    move |x: &SpacetimePoint| {
        let v = if printed { id.evaluate_printed(x)? } else { id.evaluate(x)? };
        let mut c = v.components();
        if let Some(eps) = perturb {
            let bump = eps * (1.0 + x.t * x.t);
            c.iter_mut().for_each(|z| *z += bump);
        }
        Ok(c)
    }
}

/// Governing-equation residuals of one solution as `(check, stats)` pairs.
pub fn governing_residual(
    id: SolutionId,
    printed: bool,
    pts: &[SpacetimePoint],
    opts: &SuiteOptions,
) -> Vec<(&'static str, ResidualStats)> {
    let f = component_field(id, printed, opts.perturb);
    match id.kind() {
        FieldKind::Weyl => vec![("weyl", residual_weyl(&f, pts, &opts.cfg))],
        FieldKind::Maxwell => {
            let r = residual_maxwell(&f, pts, &opts.cfg);
            vec![("maxwell-spinor", r.spinor), ("maxwell-vector", r.vector)]
        }
        FieldKind::Dirac => vec![("dirac", residual_dirac(&f, id.m, pts, &opts.cfg))],
    }
}

fn residuals(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 0);
    let mut report = VerificationReport::new();
    for id in opts.selected(residual_solutions()) {
        for (check, stats) in governing_residual(id, false, &pts, opts) {
            report.push(stats.into_record(check, &id.label(), opts.tol));
        }
    }
    if opts.solution.is_none() {
        let eta = Spinor::upper(C64::new(0.3, -0.2), C64::new(0.5, 0.1));
        let eb = Spinor::upper_dotted(C64::new(-0.4, 0.2), C64::new(0.1, 0.6));
        let zero = Spinor::upper(C64::default(), C64::default());
        for (label, e) in [("upsilon(eta=0)", zero), ("upsilon(eta)", eta)] {
            let bump = opts.perturb;
            let f = move |x: &SpacetimePoint| {
                let v = upsilon_massless(&e, &eb, x, 1.0)?;
                Ok(vec![v + bump.map_or(0.0, |eps| eps * (1.0 + x.t * x.t))])
            };
            report.push(residual_dalembert(&f, &pts, &opts.cfg).into_record("dalembert", label, opts.tol));
        }
        let psi4 = component_field(SolutionId::new(SolutionFamily::Psi4), false, opts.perturb);
        report.push(residual_kleingordon(&psi4, 1.0, &pts, &opts.cfg).into_record("klein-gordon", "psi4", opts.tol));
        let bump = opts.perturb;
        let k1 = move |x: &SpacetimePoint| {
            let s = complex_distance(x, 1.0)?;
            Ok(vec![frak_k(1, 1.0, s)? + bump.map_or(0.0, |eps| eps * (1.0 + x.t * x.t))])
        };
        report.push(residual_kleingordon(&k1, 1.0, &pts, &opts.cfg).into_record("klein-gordon", "frak-k1(s)", opts.tol));
    }
    Ok(report)
}

fn nullness(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(1000, 1);
    let mut report = VerificationReport::new();
    for id in opts.selected(maxwell_solutions()) {
        let samples = pts
            .par_iter()
            .map(|x| {
                let v = match id.evaluate(x) {
                    Ok(crate::solutions::FieldValue::RS(f)) => {
                        let n = f.norm_sqr();
                        (n > 0.0).then(|| f.self_dot().norm() / n)
                    }
                    _ => None,
                };
                (*x, v)
            })
            .collect();
        report.push(stats_of(samples).into_record("nullness", &id.label(), 1e-12));
    }
    Ok(report)
}

fn bateman(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 2);
    let mut report = VerificationReport::new();
    for which in [1u8, 2] {
        let eb = basis_eta_bar(which)?;
        let samples = pts
            .par_iter()
            .map(|x| {
                let v = (|| -> Result<f64> {
                    let fb = bateman_field(x, 1.0, &eb)?;
                    let fh = maxwell_hopfion(which, x, 1.0)?;
                    Ok(fb.sub(&fh.scale(-C64::i())).norm_sqr().sqrt() / fh.norm_sqr().sqrt())
                })();
                (*x, v.ok())
            })
            .collect();
        let label = format!("maxwell-hopfion-{which}");
        report.push(stats_of(samples).into_record("bateman-analytic", &label, 1e-10));
        let bump = opts.perturb;
        let ab = move |x: &SpacetimePoint| {
            let p = psi_spinor(x, &eb, 1.0)?;
            let d = bump.map_or(0.0, |eps| eps * (1.0 + x.t * x.t));
            Ok(vec![p.c1 + d, p.c0 + d])
        };
        report.push(residual_bateman(&ab, &pts, &opts.cfg).into_record("bateman-condition", &label, opts.tol));
    }
    Ok(report)
}

fn rel_diff(a: &[C64], b: &[C64]) -> f64 {
    let num = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let den = b.iter().map(|y| y.norm()).fold(0.0, f64::max);
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

fn structural(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 3);
    let mut report = VerificationReport::new();
    let h1 = |u: C64, v: C64| u + v * 0.5 + 1.0;
    let h2 = move |u: C64, v: C64| h1(u, v) * h1(u, v);
    let per_point = |f: &(dyn Fn(&SpacetimePoint) -> Result<f64> + Sync)| {
        stats_of(pts.par_iter().map(|x| (*x, f(x).ok())).collect())
    };
    for which in [1u8, 2] {
        let eb = basis_eta_bar(which)?;
        let label = format!("eta-bar-{which}");
        let fusion = per_point(&|x| {
            let phi = weyl_field(&h1, &eb, x, 1.0)?.components();
            let pcd = maxwell_spinor(&h2, &eb, x, 1.0)?;
            let d = d_factor(x, 1.0)?;
            let lhs: Vec<C64> = pcd.iter().flatten().map(|v| v * d).collect();
            let rhs: Vec<C64> = (0..4).map(|i| phi[i / 2] * phi[i % 2]).collect();
            Ok(rel_diff(&lhs, &rhs))
        });
        report.push(fusion.into_record("fusion", &label, 1e-12));
        let factor = per_point(&|x| {
            let phi = weyl_field(&h1, &eb, x, 1.0)?;
            let psi = psi_spinor(x, &eb, 1.0)?;
            let k = (d_factor(x, 1.0)? * h1(psi.c0, psi.c1)).norm_sqr();
            let l = lightlike_vector(&psi);
            let j = weyl_current(&phi);
            let scaled: Vec<C64> = l.0.iter().map(|v| v * k).collect();
            Ok(rel_diff(&j.0, &scaled))
        });
        report.push(factor.into_record("weyl-current-factor", &label, 1e-12));
        let tabulated_weyl = per_point(&|x| {
            let a = weyl_field(&|_, _| C64::new(1.0, 0.0), &eb, x, 1.0)?.components();
            Ok(rel_diff(&a, &weyl_hopfion(which, x, 1.0)?.components()))
        });
        report.push(tabulated_weyl.into_record("weyl-tabulated", &format!("weyl-hopfion-{which}"), 1e-12));
        let tabulated = per_point(&|x| {
            let a = maxwell_field(&|_, _| C64::new(-1.0, 0.0), &eb, x, 1.0)?;
            Ok(rel_diff(&a.0, &maxwell_hopfion(which, x, 1.0)?.0))
        });
        report.push(tabulated.into_record("maxwell-tabulated", &format!("maxwell-hopfion-{which}"), 1e-12));
    }
    for id in opts.selected(maxwell_solutions()) {
        let s = per_point(&|x| match id.evaluate(x)? {
            crate::solutions::FieldValue::RS(f) => {
                let (u, s) = maxwell_stress(&f);
                Ok((s.iter().map(|v| v * v).sum::<f64>().sqrt() - u).abs() / u)
            }
            _ => Err(Error::Contract("not a Maxwell field".into())),
        });
        report.push(s.into_record("null-stress", &id.label(), 1e-12));
    }
    let weyl: Vec<SolutionId> = opts.selected(
        [SolutionFamily::WeylHopfion1, SolutionFamily::WeylHopfion2].map(SolutionId::new).to_vec(),
    );
    for id in weyl {
        let s = per_point(&|x| {
            let j = id.current(x)?;
            Ok(j.minkowski_square().norm() / j.time().re.powi(2))
        });
        report.push(s.into_record("lightlike-current", &id.label(), 1e-12));
    }
    let dirac: Vec<SolutionId> =
        opts.selected(residual_solutions().into_iter().filter(|s| s.kind() == FieldKind::Dirac).collect());
    for id in dirac {
        let s = per_point(&|x| {
            let j = id.current(x)?;
            let j0 = j.time().re;
            if !(j0 > 0.0) {
                return Ok(1.0);
            }
            Ok((-j.minkowski_square().re).max(0.0) / (j0 * j0) + j.max_imag() / j0)
        });
        report.push(s.into_record("causal-current", &id.label(), 1e-12));
    }
    Ok(report)
}

fn current_field(id: SolutionId, perturb: Option<f64>) -> impl Fn(&SpacetimePoint) -> Result<Vec<C64>> + Sync {
    move |x: &SpacetimePoint| {
        let mut j = current_of(&id.evaluate(x)?).0.to_vec();
        if let Some(eps) = perturb {
            j.iter_mut().for_each(|z| *z += eps * (1.0 + x.t * x.t));
        }
        Ok(j)
    }
}

fn conservation(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 4);
    let mut report = VerificationReport::new();
    for id in opts.selected(residual_solutions()) {
        let j = current_field(id, opts.perturb);
        let check = if id.kind() == FieldKind::Maxwell { "energy-conservation" } else { "current-conservation" };
        report.push(current_conservation(&j, &pts, &opts.cfg).into_record(check, &id.label(), opts.tol));
    }
    Ok(report)
}

/// Times at which the hopfion's mean square radius is fitted, in units of `a`.
pub const DISPERSION_TIMES: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

fn dispersion(_opts: &SuiteOptions) -> Result<VerificationReport> {
    let rho = |x: &SpacetimePoint| maxwell_hopfion(1, x, 1.0).map_or(f64::NAN, |f| 0.5 * f.norm_sqr());
    let fit = dispersion_check(&rho, &DISPERSION_TIMES)?;
    let note = format!("A = {:.12}, B = {:.12}, <r^2> = {:?}", fit.a, fit.b, fit.values);
    let mut report = VerificationReport::new();
    let n = fit.times.len();
    report.push(CheckRecord::value("dispersion-fit", "maxwell-hopfion-1", fit.fit_residual, 1e-3).with_points(n).with_note(note));
    report.push(flag("dispersion-growth", "maxwell-hopfion-1", fit.b, fit.b > 0.0 && fit.a > 0.0).with_points(n));
    let quad_err = fit.errors.iter().fold(0.0f64, |m, e| m.max(*e)) / fit.values.iter().fold(f64::MAX, |m, v| m.min(*v));
    let sym_tol = (10.0 * quad_err).max(1e-9);
    report.push(CheckRecord::value("dispersion-symmetry", "maxwell-hopfion-1", fit.asymmetry, sym_tol).with_points(n));
    Ok(report)
}

fn negative_energy(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 5);
    let mut report = VerificationReport::new();
    for id in opts.selected(residual_solutions()) {
        let neg = id.with_energy_sign(EnergySign::Negative);
        for (check, stats) in governing_residual(neg, false, &pts, opts) {
            report.push(stats.into_record(check, &neg.label(), opts.tol));
        }
    }
    Ok(report)
}

/// Observed order of a scheme from residuals at `h` and `h/2`.
pub fn observed_order(id: SolutionId, scheme: Scheme, h: f64, pts: &[SpacetimePoint]) -> Result<f64> {
    let opts = |h| SuiteOptions { cfg: ResidualConfig::new(h, scheme).unwrap_or_default(), ..SuiteOptions::default() };
    let coarse: f64 = governing_residual(id, false, pts, &opts(h)).iter().map(|(_, s)| s.max_absolute).fold(0.0, f64::max);
    let fine: f64 = governing_residual(id, false, pts, &opts(h / 2.0)).iter().map(|(_, s)| s.max_absolute).fold(0.0, f64::max);
    if !(fine > 0.0 && coarse > 0.0) {
        return Err(Error::Domain("residual vanished; order undefined".into()));
    }
    Ok((coarse / fine).log2())
}

fn convergence(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(20, 6);
    let mut report = VerificationReport::new();
    let ids = opts.selected(vec![
        SolutionId::new(SolutionFamily::WeylHopfion1),
        SolutionId::new(SolutionFamily::MaxwellHopfion1),
        SolutionId::new(SolutionFamily::Psi4),
    ]);
    for id in ids {
        for (scheme, h) in [(Scheme::Central2, 0.02), (Scheme::Central4, 0.08)] {
            let p = observed_order(id, scheme, h, &pts)?;
            let expected = scheme.order() as f64;
            report.push(
                CheckRecord::value(&format!("fd-order-{scheme}"), &id.label(), (p - expected).abs(), 0.5)
                    .with_points(pts.len())
                    .with_note(format!("observed order {p:.3}, expected {expected}")),
            );
        }
    }
    Ok(report)
}

/// Sample arguments for the Macdonald checks: `|z| ∈ [0.1, 40]` log-uniform, `|arg z| ≤ 1.3`.
pub fn macdonald_sample(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = (rng.gen_range(0.1f64.ln()..40f64.ln())).exp();
            C64::from_polar(r, rng.gen_range(-1.3..1.3))
        })
        .collect()
}

fn special(opts: &SuiteOptions) -> Result<VerificationReport> {
    let zs = macdonald_sample(40, opts.seed.wrapping_add(7));
    let mut report = VerificationReport::new();
    let errors: Vec<Option<f64>> = zs
        .par_iter()
        .map(|z| {
            let k = macdonald_k_orders(6, *z).ok()?;
            let mut worst: f64 = 0.0;
            for n in 0..=6u32 {
                let q = macdonald_by_quadrature(n, *z).ok()?;
                // usable as an oracle while its own error is well below the tolerance
                if !(q.error <= 1e-11 * q.value.norm()) {
                    return None;
                }
                worst = worst.max((q.value - k[n as usize]).norm() / k[n as usize].norm());
            }
            Some(worst)
        })
        .collect();
    let pts: Vec<SpacetimePoint> = zs.iter().map(|z| SpacetimePoint::new(0.0, z.re, z.im, 0.0)).collect();
    let stats = stats_of(pts.iter().copied().zip(errors).collect());
    report.push(stats.into_record("macdonald-oracle", "K_0..K_6", 1e-10).with_note("points hold (Re z, Im z) in (x, y)"));
    let rec: Vec<Option<f64>> = zs
        .iter()
        .map(|z| {
            let k = macdonald_k_orders(7, *z).ok()?;
            let mut worst: f64 = 0.0;
            for n in 1..=6usize {
                let r = k[n + 1] - k[n - 1] - k[n] * (2.0 * n as f64) / z;
                worst = worst.max(r.norm() / k[n + 1].norm());
            }
            Some(worst)
        })
        .collect();
    report.push(stats_of(pts.iter().copied().zip(rec).collect()).into_record("macdonald-recurrence", "K_0..K_7", 1e-9));
    // frak-K as K_n(ms)/s^n at random spacetime points
    let sp = opts.points(opts.points, 8);
    let frak: Vec<(SpacetimePoint, Option<f64>)> = sp
        .iter()
        .map(|x| {
            let v = (|| -> Result<f64> {
                let s = complex_distance(x, 1.0)?;
                let m = 1.3;
                let f = frak_k_orders(4, m, s)?;
                let k = macdonald_k_orders(4, s * m)?;
                Ok((0..=4).map(|n| (f[n] * s.powi(n as i32) - k[n]).norm() / k[n].norm()).fold(0.0, f64::max))
            })();
            (*x, v.ok())
        })
        .collect();
    report.push(stats_of(frak).into_record("frak-k-definition", "n=0..4", 1e-13));
    let branch: Vec<(SpacetimePoint, Option<f64>)> = sp
        .iter()
        .map(|x| (*x, complex_distance(x, 1.0).ok().map(|s| if s.re > 0.0 { 0.0 } else { 1.0 })))
        .collect();
    report.push(stats_of(branch).into_record("distance-branch", "Re s > 0", 0.0));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfCheck {
    Roundtrip,
    Norm,
    Jacobian,
    Consistency,
    Degenerate,
}

impl HopfCheck {
    pub const ALL: [HopfCheck; 5] =
        [HopfCheck::Roundtrip, HopfCheck::Norm, HopfCheck::Jacobian, HopfCheck::Consistency, HopfCheck::Degenerate];

    pub fn name(self) -> &'static str {
        match self {
            HopfCheck::Roundtrip => "roundtrip",
            HopfCheck::Norm => "norm",
            HopfCheck::Jacobian => "jacobian",
            HopfCheck::Consistency => "consistency",
            HopfCheck::Degenerate => "degenerate",
        }
    }
}

impl FromStr for HopfCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HopfCheck::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownName {
            name: s.to_string(),
            valid: valid_list(HopfCheck::ALL.map(HopfCheck::name)),
        })
    }
}

fn random_xi(rng: &mut ChaCha8Rng) -> HopfPoint {
    let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
    HopfPoint::new(v[0], v[1], v[2], v[3])
}

fn max_record(check: &str, solution: &str, values: &[f64], tol: f64) -> CheckRecord {
    let worst = values.iter().fold(0.0f64, |m, v| if v.is_nan() { f64::NAN } else { m.max(*v) });
    let mut r = CheckRecord::value(check, solution, worst, tol).with_points(values.len());
    r.pass = worst <= tol;
    r
}

pub fn run_hopf_checks(checks: &[HopfCheck], opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for check in checks {
        let mut rng = opts.rng(100 + *check as u64);
        match check {
            HopfCheck::Roundtrip => {
                let (mut pos, mut phase) = (Vec::new(), Vec::new());
                while pos.len() < 1000 {
                    let k = rng.gen_range(0.1..3.0);
                    let cz: f64 = rng.gen_range(-0.9..1.0);
                    let az = rng.gen_range(0.0..2.0 * PI);
                    let sz = (1.0 - cz * cz).sqrt();
                    let w = WaveVector::new(k * sz * az.cos(), k * sz * az.sin(), k * cz);
                    let phi = rng.gen_range(0.0..2.0 * PI);
                    let p = hopf_inverse(&w, phi)?;
                    let back = hopf_forward(&p);
                    let d = (0..3).map(|i| (back.as_array()[i] - w.as_array()[i]).abs()).fold(0.0, f64::max);
                    pos.push(d / k);
                    let dp = (p.phase() - phi).rem_euclid(2.0 * PI);
                    phase.push(dp.min(2.0 * PI - dp));
                }
                report.push(max_record("hopf-roundtrip", "kz > -0.9k", &pos, 1e-12));
                report.push(max_record("hopf-phase", "atan2(xi2, xi1)", &phase, 1e-12));
            }
            HopfCheck::Norm => {
                let v: Vec<f64> = (0..1000)
                    .map(|_| {
                        let p = random_xi(&mut rng);
                        let n2 = p.norm_sqr();
                        let w = hopf_forward(&p);
                        let k2 = w.kx * w.kx + w.ky * w.ky + w.kz * w.kz;
                        (k2 - n2 * n2).abs() / (n2 * n2)
                    })
                    .collect();
                report.push(max_record("hopf-norm", "|k| = |xi|^2", &v, 8.0 * f64::EPSILON));
            }
            HopfCheck::Jacobian => {
                let (mut fwd, mut inv) = (Vec::new(), Vec::new());
                while fwd.len() < 50 {
                    let p = random_xi(&mut rng);
                    if let Ok(j) = jacobian_check(&p) {
                        if p.norm_sqr() > 0.05 {
                            fwd.push(j.forward_rel_error);
                            inv.push(j.inverse_rel_error);
                        }
                    }
                }
                report.push(max_record("hopf-jacobian-forward", "det = 8k", &fwd, 1e-6));
                report.push(max_record("hopf-jacobian-inverse", "det = 1/(8k)", &inv, 1e-6));
            }
            HopfCheck::Consistency => {
                let v: Vec<f64> = (0..1000)
                    .map(|_| {
                        let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                        let r = spinor_consistency(&Spinor::lower(C64::new(c[0], c[1]), C64::new(c[2], c[3])));
                        r.spatial_mismatch.max(r.time_mismatch)
                    })
                    .collect();
                report.push(max_record("hopf-spinor-consistency", "random kappa", &v, 1e-12));
            }
            HopfCheck::Degenerate => {
                let rejected = hopf_inverse(&WaveVector::new(0.0, 0.0, -1.0), 0.3).is_err();
                report.push(flag("hopf-degenerate-fiber", "k = (0,0,-1)", 0.0, rejected));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleCheck {
    Gaussian,
    UvIntegrals,
    KgSupport,
}

impl OracleCheck {
    pub const ALL: [OracleCheck; 3] = [OracleCheck::Gaussian, OracleCheck::UvIntegrals, OracleCheck::KgSupport];

    pub fn name(self) -> &'static str {
        match self {
            OracleCheck::Gaussian => "gaussian",
            OracleCheck::UvIntegrals => "uv-integrals",
            OracleCheck::KgSupport => "kg-support",
        }
    }
}

impl FromStr for OracleCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OracleCheck::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownName {
            name: s.to_string(),
            valid: valid_list(OracleCheck::ALL.map(OracleCheck::name)),
        })
    }
}

fn rand_c(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn run_oracle_checks(checks: &[OracleCheck], opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for check in checks {
        let mut rng = opts.rng(200 + *check as u64);
        match check {
            OracleCheck::Gaussian => {
                let cases: Vec<(Spinor, Spinor, SpacetimePoint)> = (0..12)
                    .map(|_| {
                        let eta = Spinor::upper(rand_c(&mut rng, 0.6), rand_c(&mut rng, 0.6));
                        let eb = Spinor::upper_dotted(rand_c(&mut rng, 0.6), rand_c(&mut rng, 0.6));
                        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-0.6..0.6));
                        (eta, eb, SpacetimePoint::new(v[0], v[1], v[2], v[3]))
                    })
                    .collect();
                let res: Vec<(f64, f64)> = cases
                    .par_iter()
                    .map(|(eta, eb, x)| {
                        let closed = upsilon_massless(eta, eb, x, 1.0).map(|v| v * PI * PI);
                        let q = upsilon_by_quadrature(eta, eb, x, 1.0);
                        let g = upsilon_by_gauss_hermite(eta, eb, x, 1.0, 16);
                        match (closed, q, g) {
                            (Ok(c), Ok(q), Ok(g)) => ((q.value - c).norm() / c.norm(), (g.value - c).norm() / c.norm()),
                            _ => (f64::NAN, f64::NAN),
                        }
                    })
                    .collect();
                let adaptive: Vec<f64> = res.iter().map(|r| r.0).collect();
                let hermite: Vec<f64> = res.iter().map(|r| r.1).collect();
                report.push(max_record("gaussian-oracle", "adaptive", &adaptive, 1e-4));
                report.push(max_record("gaussian-oracle", "gauss-hermite-16", &hermite, 1e-4));
            }
            OracleCheck::UvIntegrals => {
                let cases: Vec<(f64, C64)> = (0..10)
                    .map(|_| {
                        let m = rng.gen_range(0.5..2.0);
                        let x = SpacetimePoint::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0);
                        (m, complex_distance(&x, 1.0).unwrap_or(C64::new(1.0, 0.0)))
                    })
                    .collect();
                let res: Vec<[f64; 3]> = cases
                    .par_iter()
                    .map(|(m, s)| {
                        let pre = PI * m * m / 4.0;
                        let run = || -> Result<[f64; 3]> {
                            let two = pre * frak_k(2, *m, *s)?;
                            let one = pre * frak_k(1, *m, *s)?;
                            let a = uv_integral(UvWeight::One, *m, *s)?;
                            let b = uv_integral(UvWeight::VPlusIu, *m, *s)?;
                            let c = uv_integral(UvWeight::V, *m, *s)?;
                            Ok([(a.value - two).norm() / two.norm(), (b.value - one).norm() / one.norm(), c.value.norm() / two.norm()])
                        };
                        run().unwrap_or([f64::NAN; 3])
                    })
                    .collect();
                report.push(max_record("uv-integral", "w=1 vs frak-K2", &res.iter().map(|r| r[0]).collect::<Vec<_>>(), 1e-6));
                report.push(max_record("uv-integral", "w=-(v+iu) vs frak-K1", &res.iter().map(|r| r[1]).collect::<Vec<_>>(), 1e-6));
                report.push(max_record("uv-integral", "w=v vanishes", &res.iter().map(|r| r[2]).collect::<Vec<_>>(), 1e-9));
                // doubling the cutoff must move the result by less than the error estimate
                let (m, s) = cases[0];
                let base = uv_integral(UvWeight::One, m, s)?;
                let r0 = (2.0 / (4.0e-10 * s.norm().powi(-4))).powf(0.25).max(10.0 * s.norm());
                let doubled = uv_integral_with_cutoff(UvWeight::One, m, s, Some(2.0 * r0))?;
                let shift = (doubled.value - base.value).norm();
                report.push(
                    flag("uv-cutoff-stability", "w=1", shift, shift <= base.error + doubled.error)
                        .with_note(format!("error estimate {:.3e}", base.error)),
                );
            }
            OracleCheck::KgSupport => {
                let (mut ident, mut single, mut self_c) = (Vec::new(), Vec::new(), Vec::new());
                for _ in 0..200 {
                    let k = Spinor::lower(rand_c(&mut rng, 1.0), rand_c(&mut rng, 1.0));
                    let l = Spinor::lower(rand_c(&mut rng, 1.0), rand_c(&mut rng, 1.0));
                    let r = kg_support(&k, &l)?;
                    // k₀l₀ bounds every term of both contractions
                    let scale = 4.0 * k.norm_sqr() * l.norm_sqr();
                    ident.push((r.total_square - r.spinor_side).abs() / scale);
                    single.push((2.0 * r.single_contraction - r.total_square).abs() / scale);
                    self_c.push(r.self_contraction);
                }
                report.push(max_record("kg-support", "(k+l)^2 = 4|kappa.lambda|^2", &ident, 1e-12));
                report.push(max_record("kg-support", "k.l = 2|kappa.lambda|^2", &single, 1e-12));
                report.push(max_record("kg-support", "kappa_B kappa_C eps^BC = 0", &self_c, 1e-15));
                // on the constraint surface kappa.lambda = m/2 the square is m^2
                let m = 1.7;
                let k = Spinor::lower(C64::new(0.6, 0.2), C64::new(-0.3, 0.9));
                let l0 = Spinor::lower(C64::new(0.1, -0.5), C64::new(0.8, 0.4));
                let kl = crate::spinor::scalar_product(&k, &l0.raise_lower())?;
                let l = l0.scale(C64::new(m / 2.0, 0.0) / kl);
                let r = kg_support(&k, &l)?;
                report.push(CheckRecord::value("kg-support", "on shell: (k+l)^2 = m^2", (r.total_square - m * m).abs() / (m * m), 1e-12));
                let r = kg_support(&k, &k.scale(C64::new(0.0, 2.0)))?;
                report.push(CheckRecord::value("kg-support", "kappa ~ lambda gives 0", r.total_square.abs(), 1e-12));
            }
        }
    }
    Ok(report)
}

/// Seeds for the hopfion velocity lines.
pub const HOPFION_SEEDS: [Vec3; 3] = [[0.3, 0.2, 0.1], [-0.5, 0.4, 0.2], [1.0, 0.0, 0.0]];
/// Seed shared by the four current-line traces of the massive solutions.
pub const CURRENT_SEED: Vec3 = [1.0, 0.3, 0.0];
/// Alternative `x₀` values at `y₀ = 0.3`, `z₀ = 0` for `Ψ₄`.
pub const PSI4_SEED_X: [f64; 4] = [0.25, 0.6, 0.1, 1.25];
/// Half edge of the cube the current lines from [`CURRENT_SEED`] stay in.
pub const CURRENT_BOX_HALF_EDGE: f64 = 1.5;
/// Arc length traced for each current line.
pub const CURRENT_LINE_LENGTH: f64 = 50.0;

pub fn hopfion_velocity_lines(seeds: &[Vec3], opts: &TraceOptions) -> Result<Vec<FieldLine>> {
    let v = |r: Vec3| hopfion_velocity(&SpacetimePoint::at_time(0.0, r), 1.0);
    trace_many(&v, seeds, opts)
}

/// Spatial current of a solution at `t`.
pub fn current_line_field(id: SolutionId, t: f64) -> impl Fn(Vec3) -> Result<Vec3> + Sync {
    move |r: Vec3| Ok(id.current(&SpacetimePoint::at_time(t, r))?.spatial_re())
}

fn topology(_opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let lines = hopfion_velocity_lines(&HOPFION_SEEDS, &TraceOptions::default())?;
    for (i, l) in lines.iter().enumerate() {
        let gap = l.closure.map_or(f64::INFINITY, |c| c.gap);
        let mut r = CheckRecord::value("velocity-line-closure", &format!("seed {:?}", HOPFION_SEEDS[i]), gap, 1e-4);
        r.pass = l.is_closed() && gap <= 1e-4;
        report.push(r.with_points(l.len()));
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let lk = linking_number(&lines[i].points, &lines[j].points)?;
            let dev = (lk.value - 1.0).abs();
            report.push(
                flag("velocity-line-linking", &format!("lines {i},{j}"), dev, lk.rounded == 1 && dev <= 0.01)
                    .with_note(format!("Gauss integral {:.12}", lk.value)),
            );
        }
    }
    let opts = TraceOptions { max_length: CURRENT_LINE_LENGTH, ..TraceOptions::default() };
    for f in [SolutionFamily::Psi2, SolutionFamily::Psi4, SolutionFamily::Psi6, SolutionFamily::Psi8] {
        let id = SolutionId::new(f);
        let l = trace(&current_line_field(id, 0.0), CURRENT_SEED, &opts)?;
        let ext = l.max_extent();
        let mut r = CheckRecord::value("current-line-box", &id.label(), ext, CURRENT_BOX_HALF_EDGE);
        r.pass = ext <= CURRENT_BOX_HALF_EDGE && l.length() >= CURRENT_LINE_LENGTH * (1.0 - 1e-9);
        report.push(r.with_points(l.len()).with_note(format!("stop {}, length {:.3}", l.stop, l.length())));
    }
    let id = SolutionId::new(SolutionFamily::Psi4);
    let seeds: Vec<Vec3> = PSI4_SEED_X.iter().map(|x| [*x, 0.3, 0.0]).collect();
    let ls = trace_many(&current_line_field(id, 0.0), &seeds, &opts)?;
    let resolution = 10.0 * opts.max_step.min(opts.closure_eps.max(1e-3));
    let mut min_h = f64::INFINITY;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            min_h = min_h.min(hausdorff_distance(&ls[i].points, &ls[j].points));
        }
    }
    report.push(
        flag("current-lines-distinct", "psi4", min_h, min_h > resolution)
            .with_points(ls.len())
            .with_note(format!("min pairwise Hausdorff distance {min_h:.4}, resolution {resolution:.4}")),
    );
    Ok(report)
}

fn printed(opts: &SuiteOptions) -> Result<VerificationReport> {
    let pts = opts.points(opts.points, 0);
    let mut report = VerificationReport::new();
    for f in [SolutionFamily::Psi6, SolutionFamily::Psi8] {
        let id = SolutionId::new(f);
        for (check, stats) in governing_residual(id, true, &pts, opts) {
            report.push(
                stats
                    .into_record(check, &format!("{}-printed", id.label()), opts.tol)
                    .with_note("verbatim tabulated form"),
            );
        }
    }
    Ok(report)
}
