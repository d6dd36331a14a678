//! Acceptance checks. Prints one PASS/FAIL line per check and exits
//! non-zero if any fail.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use bandharvest_core::deltaswitch::{
    f_gaussian_profile, f_pointlike, lambda_max_sweep, negativity_delta, omega_gaussian_profile, pa_delta, rho_delta,
    theta_gaussian_profile, theta_pointlike, DeltaPairConfig,
};
use bandharvest_core::design::{coverage_on, design_array, envelope_imx};
use bandharvest_core::perturbative::{
    im_x_profile, imx_si_approx, negativity_perturbative, negativity_profile, omega_crit, pd_decomposed, pd_gaussian,
    x_gaussian, OMEGA_CRIT_HALFWIDTH,
};
use bandharvest_core::quadrature::{integrate, IntegralSpec};
use bandharvest_core::specfun::spherical_bessel_j1;
use bandharvest_core::{Bandlimit, DetectorParams, GaussianProfile, PairGeometry, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> Result<Outcome>;

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn det(gap: f64, coupling: f64) -> DetectorParams {
    DetectorParams::new(gap, coupling).unwrap()
}

fn sep(s: f64) -> PairGeometry {
    PairGeometry::separated(s).unwrap()
}

fn fin(l: f64) -> Bandlimit {
    Bandlimit::Finite(l)
}

fn zero_cutoff() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let d = det(rng.random_range(-5.0..5.0), 1.0);
        worst = worst.max(pd_gaussian(&d, fin(0.0)).abs());
        worst = worst.max(x_gaussian(&d, &sep(1.0), fin(0.0))?.norm());
    }
    outcome(worst <= 1e-15, format!("max |P|, |X| at zero cutoff = {worst:e}"))
}

fn decomposition() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let d = det(rng.random_range(-2.0..3.0), 1.0);
        let l = fin(rng.random_range(0.5..10.0));
        let a = pd_gaussian(&d, l);
        let b = pd_decomposed(&d, l)?;
        worst = worst.max((a - b).abs() / a.abs());
    }
    outcome(worst <= 1e-12, format!("max relative difference = {worst:e}"))
}

fn si_regime() -> Result<Outcome> {
    let d = det(0.01, 1.0);
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0, 2.0] {
        for l in [5.5, 10.0, 20.0, 50.0] {
            let exact = x_gaussian(&d, &sep(s), fin(l))?.im;
            let approx = imx_si_approx(&d, &sep(s), fin(l))?;
            worst = worst.max((approx - exact).abs() / exact.abs());
        }
    }
    outcome(worst <= 1e-2, format!("max relative error = {worst:.3e}"))
}

fn envelope() -> Result<Outcome> {
    let d = det(0.01, 1.0);
    let g = sep(1.0);
    let grid: Vec<f64> = (0..=190).map(|i| 5.0 + 0.5 * i as f64).collect();
    let im = im_x_profile(&d, &g, &grid)?;
    let mut margin = f64::NEG_INFINITY;
    for (&l, v) in grid.iter().zip(im) {
        margin = margin.max(v - envelope_imx(&d, &g, fin(l))?);
    }
    outcome(margin <= 1e-10, format!("max(Im X - envelope) = {margin:.3e}"))
}

fn critical_gap() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (l, want) in [(20.0, 18.0), (40.0, 38.0)] {
        let t = Instant::now();
        let w = omega_crit(fin(l), OMEGA_CRIT_HALFWIDTH)?;
        let secs = t.elapsed().as_secs_f64();
        pass &= (w - want).abs() <= 0.5 && secs < 10.0;
        parts.push(format!("cutoff {l}: {w:.4} in {secs:.2}s"));
    }
    outcome(pass, parts.join(", "))
}

fn enhancement() -> Result<Outcome> {
    let d = det(0.01, 1.0);
    let g = sep(1.5);
    let n_inf = negativity_perturbative(&d, &g, Bandlimit::Infinite)?;
    let grid: Vec<f64> = (1..=400).map(|i| 0.05 * i as f64).collect();
    let n = negativity_profile(&d, &g, &grid)?;
    let (i, peak) = n.iter().enumerate().fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    outcome(n_inf == 0.0 && peak > 0.0, format!("N(inf) = {n_inf:e}, max N = {peak:.4e} at cutoff {:.2}", grid[i]))
}

/// Linear-interpolated sign changes of `y` on `x`.
fn crossings(x: &[f64], y: &[f64]) -> Vec<f64> {
    (1..x.len())
        .filter(|&i| y[i - 1] * y[i] < 0.0)
        .map(|i| x[i - 1] + (x[i] - x[i - 1]) * y[i - 1] / (y[i - 1] - y[i]))
        .collect()
}

fn node_alignment() -> Result<Outcome> {
    let d = det(0.01, 1.0);
    let lam = 50.0;
    let s: Vec<f64> = (0..=1800).map(|i| 0.2 + 0.001 * i as f64).collect();
    let mut diff = Vec::with_capacity(s.len());
    for &si in &s {
        let g = sep(si);
        diff.push(negativity_perturbative(&d, &g, fin(lam))? - negativity_perturbative(&d, &g, Bandlimit::Infinite)?);
    }
    let found = crossings(&s, &diff);
    let fine: Vec<f64> = (0..=40000).map(|i| 0.1 + 5e-5 * i as f64).collect();
    let j1: Vec<f64> = fine.iter().map(|&x| spherical_bessel_j1(lam * x)).collect();
    let nodes = crossings(&fine, &j1);
    let worst =
        found.iter().map(|c| nodes.iter().map(|z| (c - z).abs()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    outcome(
        !found.is_empty() && worst <= 0.05,
        format!("{} crossings, max distance to a j1 node = {worst:.4}", found.len()),
    )
}

fn delta_checkpoints() -> Result<Outcome> {
    let l0 = (2.0 * PI).sqrt();
    let pa = 0.5 * (1.0 - f_pointlike(1.0, fin(l0)));
    let e1 = (pa - 0.5 * (1.0 - (-1.0f64).exp())).abs();
    let e2 = (0.5 * (1.0 - f_pointlike(1.0, fin(1e3))) - 0.5).abs();
    let narrow = GaussianProfile::new(1e-5)?;
    let e3 = (pa_delta(1.0, &narrow, fin(l0)) - pa).abs();
    let e4 = (pa_delta(1.0, &narrow, Bandlimit::Infinite) - 0.5 * (1.0 - f_pointlike(1.0, fin(1e3)))).abs();
    outcome(
        e1 <= 1e-9 && e2 <= 1e-6 && e3 <= 1e-9 && e4 <= 1e-6,
        format!("P_A error {e1:.1e}, large-cutoff error {e2:.1e}, limit-order gaps {e3:.1e} / {e4:.1e}"),
    )
}

fn random_delta_configs(seed: u64, n: usize) -> Vec<DeltaPairConfig> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            DeltaPairConfig::new(
                det(rng.random_range(0.0..3.0), rng.random_range(0.1..10.0)),
                PairGeometry::new(rng.random_range(0.1..5.0), rng.random_range(0.0..3.0)).unwrap(),
                GaussianProfile::new(rng.random_range(0.01..1.0)).unwrap(),
                fin(rng.random_range(0.0..50.0)),
            )
        })
        .collect()
}

fn no_go() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for cfg in random_delta_configs(9, 1000) {
        worst = worst.max(negativity_delta(&cfg)?);
    }
    outcome(worst <= 1e-12, format!("max negativity over 1000 configs = {worst:e}"))
}

fn sensitivity_peak() -> Result<Outcome> {
    let n = 60;
    let widths: Vec<f64> = (0..n).map(|i| 1e-3 * (2e3f64).powf(i as f64 / (n - 1) as f64)).collect();
    let sweep = lambda_max_sweep(&widths, 0.01, 1.0)?;
    let (a_star, l_star) = sweep.iter().copied().fold((0.0, f64::NEG_INFINITY), |b, p| if p.1 > b.1 { p } else { b });
    let tail: Vec<f64> = sweep.iter().filter(|p| p.0 >= 0.5).map(|p| p.1).collect();
    let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    outcome(
        (0.1..=0.35).contains(&a_star) && decreasing,
        format!("argmax width {a_star:.4} (cutoff {l_star:.3}), decreasing tail: {decreasing}"),
    )
}

fn theta_spectrum() -> Result<Outcome> {
    let g = PairGeometry::new(0.8, 1.0)?;
    let step = 0.05;
    let mut theta = Vec::new();
    for i in 0..=1200 {
        theta.push(theta_pointlike(1.0, &g, fin(step * i as f64))?);
    }
    let mean = theta.iter().sum::<f64>() / theta.len() as f64;
    let mut buf: Vec<Complex64> = theta.iter().map(|&v| Complex64::new(v - mean, 0.0)).collect();
    let n = buf.len();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf[..n / 2].iter().map(|c| c.norm()).collect();
    let bin = 2.0 * PI / (n as f64 * step);
    let mut peaks: Vec<usize> = (1..mag.len() - 1).filter(|&k| mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]).collect();
    peaks.sort_by(|&a, &b| mag[b].total_cmp(&mag[a]));
    let mut top: Vec<f64> = peaks.iter().take(2).map(|&k| k as f64 * bin).collect();
    top.sort_by(f64::total_cmp);
    let pass = top.len() == 2 && (top[0] - 0.2).abs() <= bin && (top[1] - 1.8).abs() <= bin;
    outcome(pass, format!("dominant angular frequencies {top:.3?}, bin {bin:.4}"))
}

fn radial<F: Fn(f64) -> f64>(f: F, lam: f64, half_period: Option<f64>) -> Result<f64> {
    let mut spec = IntegralSpec::new(f, 0.0, lam).rel_tol(1e-13).abs_tol(1e-16);
    if let Some(h) = half_period {
        spec = spec.half_period(h);
    }
    integrate(&spec)
}

fn oracle_equivalence() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let c = rng.random_range(0.1..3.0);
        let a = rng.random_range(0.05..1.0);
        let s = rng.random_range(0.1..5.0);
        let t = rng.random_range(0.05..3.0);
        let lam = rng.random_range(0.5..50.0);
        let cfg = DeltaPairConfig::new(det(0.5, c), PairGeometry::new(s, t)?, GaussianProfile::new(a)?, fin(lam));
        let damp = move |k: f64| (-a * a * k * k).exp();
        let hp = Some(PI / (s + t));
        let f = (-(c * c / PI) * radial(|k| k * damp(k), lam, None)?).exp();
        let th = -(c * c) / (PI * s) * radial(|k| damp(k) * (k * t).sin() * (k * s).sin(), lam, hp)?;
        let om = 2.0 * c * c / (PI * s) * radial(|k| damp(k) * (k * t).cos() * (k * s).sin(), lam, hp)?;
        for (got, want) in
            [(f_gaussian_profile(&cfg), f), (theta_gaussian_profile(&cfg)?, th), (omega_gaussian_profile(&cfg)?, om)]
        {
            worst = worst.max((got - want).abs() / want.abs());
        }
    }
    outcome(worst <= 1e-6, format!("max relative difference = {worst:.3e}"))
}

fn physicality() -> Result<Outcome> {
    let (mut tr, mut ev): (f64, f64) = (0.0, 0.0);
    for cfg in random_delta_configs(9, 1000) {
        let rho = rho_delta(&cfg)?;
        tr = tr.max((rho.trace() - 1.0).abs());
        ev = ev.min(rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min));
    }
    outcome(tr <= 1e-14 && ev >= -1e-12, format!("max |tr - 1| = {tr:e}, min eigenvalue = {ev:e}"))
}

fn array_soundness() -> Result<Outcome> {
    let arr = design_array(20.0, 4, 0.01, 1.0)?;
    let above: Vec<f64> = (20..=100).map(f64::from).collect();
    let mut loud = 0.0f64;
    for &(w, s) in &arr.pairs {
        let n = negativity_profile(&det(w, 1.0), &sep(s), &above)?;
        loud = loud.max(n.into_iter().fold(0.0, f64::max));
    }
    let cov = coverage_on(&arr, 0.5, 20.0, 0.1)?;
    let pairs: Vec<String> = arr.pairs.iter().map(|(w, s)| format!("({w:.4},{s:.2})")).collect();
    outcome(
        loud == 0.0 && cov.fraction >= 0.9,
        format!("pairs {}, max N above threshold {loud:e}, coverage {:.4}", pairs.join(" "), cov.fraction),
    )
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 14] = [
        ("zero-cutoff vanishing", zero_cutoff),
        ("decomposition identity", decomposition),
        ("Si-approximation regime", si_regime),
        ("envelope bound", envelope),
        ("critical-gap asymptote", critical_gap),
        ("harvesting enhancement", enhancement),
        ("oscillation-node alignment", node_alignment),
        ("delta-switching checkpoints", delta_checkpoints),
        ("delta-switching no-go", no_go),
        ("sensitivity maximum", sensitivity_peak),
        ("theta spectrum", theta_spectrum),
        ("closed forms vs radial quadrature", oracle_equivalence),
        ("state physicality", physicality),
        ("array soundness", array_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check() {
            Ok(o) if o.pass => ("PASS", o.detail),
            Ok(o) => ("FAIL", o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name}: {detail} [{:.2}s]", i + 1, t.elapsed().as_secs_f64());
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
