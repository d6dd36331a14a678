//! Subcommand arguments and the tables they produce.

use std::fmt::Display;

use bandharvest_core::deltaswitch::{
    f_pointlike, lambda_max, pa_delta, pd_delta, theta_gaussian_profile, theta_pointlike, DeltaPairConfig,
};
use bandharvest_core::design::{array_coverage_check, cutoff_grid, design_array};
use bandharvest_core::perturbative::{
    effective_profile_pointlike, negativity_perturbative, negativity_profile, omega_crit, pd_gaussian,
    OMEGA_CRIT_HALFWIDTH,
};
use bandharvest_core::quadrature::{DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use bandharvest_core::{
    Bandlimit, DetectorParams, Error, GaussianProfile, PairGeometry, Result, SweepGrid, SweepResult,
};
use clap::{Args, ValueEnum};
use rayon::prelude::*;

fn grid(s: &str) -> std::result::Result<SweepGrid, String> {
    SweepGrid::parse("grid", s).map_err(|e| e.to_string())
}

fn list<T: Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn detector(gap: f64, coupling: f64) -> Result<DetectorParams> {
    DetectorParams::new(gap, coupling)
}

/// Metadata shared by every table.
fn table<S: Into<String>>(command: &str, columns: impl IntoIterator<Item = S>) -> SweepResult {
    let mut r = SweepResult::new(columns);
    r.set_meta("tool", "bandharvest");
    r.set_meta("version", env!("CARGO_PKG_VERSION"));
    r.set_meta("command", command);
    r.set_meta("quad-rel-tol", format!("{DEFAULT_REL_TOL:e}"));
    r.set_meta("quad-abs-tol", format!("{DEFAULT_ABS_TOL:e}"));
    r
}

fn fill(r: &mut SweepResult, rows: Vec<Vec<f64>>) -> Result<()> {
    rows.into_iter().try_for_each(|row| r.push_row(row))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Probability divided by the squared coupling.
    PerLambdaSq,
    /// Probability at the given coupling.
    Raw,
    Both,
}

impl Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Normalization::PerLambdaSq => "per-lambda-sq",
            Normalization::Raw => "raw",
            Normalization::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct PdSweepArgs {
    /// Gap grid START:STOP:POINTS[:log].
    #[arg(long, value_parser = grid, default_value = "-10:5:301", allow_hyphen_values = true)]
    pub omega_grid: SweepGrid,
    /// Bandlimits, `inf` for none.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,inf")]
    pub lambda_sigma: Vec<Bandlimit>,
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long, value_enum, default_value_t = Normalization::PerLambdaSq)]
    pub normalization: Normalization,
}

/// Single-detector excitation probability against gap, one column per bandlimit.
pub fn cmd_pd_sweep(a: &PdSweepArgs) -> Result<SweepResult> {
    detector(0.0, a.coupling)?;
    let mut cols = vec!["omega".to_string()];
    let per = matches!(a.normalization, Normalization::PerLambdaSq | Normalization::Both);
    let raw = matches!(a.normalization, Normalization::Raw | Normalization::Both);
    for l in &a.lambda_sigma {
        if per {
            cols.push(format!("pd_per_lambda_sq[cutoff={l}]"));
        }
        if raw {
            cols.push(format!("pd[cutoff={l}]"));
        }
    }
    let mut r = table("pd-sweep", cols);
    r.set_meta("omega-grid", &a.omega_grid);
    r.set_meta("lambda-sigma", list(&a.lambda_sigma));
    r.set_meta("coupling", a.coupling);
    r.set_meta("normalization", a.normalization);
    let rows = a
        .omega_grid
        .values()
        .into_par_iter()
        .map(|w| {
            let unit = detector(w, 1.0)?;
            let scaled = detector(w, a.coupling)?;
            let mut row = vec![w];
            for &l in &a.lambda_sigma {
                if per {
                    row.push(pd_gaussian(&unit, l));
                }
                if raw {
                    row.push(pd_gaussian(&scaled, l));
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct NegativityMapArgs {
    #[arg(long, value_parser = grid, default_value = "0.05:2:40")]
    pub s_grid: SweepGrid,
    #[arg(long, value_parser = grid, default_value = "0.1:20:200")]
    pub lambda_grid: SweepGrid,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    pub omega_sigma: f64,
}

/// Negativity per squared coupling on an (S, bandlimit) grid, in long format.
pub fn cmd_negativity_map(a: &NegativityMapArgs) -> Result<SweepResult> {
    let d = detector(a.omega_sigma, 1.0)?;
    let mut r = table("negativity-map", ["s", "lambda", "negativity_per_lambda_sq"]);
    r.set_meta("s-grid", &a.s_grid);
    r.set_meta("lambda-grid", &a.lambda_grid);
    r.set_meta("omega-sigma", a.omega_sigma);
    let lambdas = a.lambda_grid.values();
    let slices = a
        .s_grid
        .values()
        .into_par_iter()
        .map(|s| Ok((s, negativity_profile(&d, &PairGeometry::separated(s)?, &lambdas)?)))
        .collect::<Result<Vec<_>>>()?;
    for (s, n) in slices {
        for (&l, v) in lambdas.iter().zip(n) {
            r.push_row(vec![s, l, v])?;
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct NegativityVsLambdaArgs {
    #[arg(long, value_parser = grid, default_value = "0.05:20:400")]
    pub lambda_grid: SweepGrid,
    /// Separations, one column each.
    #[arg(long, value_delimiter = ',', default_value = "0.1,1,1.5")]
    pub s_over_sigma: Vec<f64>,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    pub omega_sigma: f64,
}

/// Negativity per squared coupling against bandlimit at fixed separations.
pub fn cmd_negativity_vs_lambda(a: &NegativityVsLambdaArgs) -> Result<SweepResult> {
    let d = detector(a.omega_sigma, 1.0)?;
    let mut cols = vec!["lambda".to_string()];
    cols.extend(a.s_over_sigma.iter().map(|s| format!("negativity_per_lambda_sq[s={s}]")));
    let mut r = table("negativity-vs-lambda", cols);
    r.set_meta("lambda-grid", &a.lambda_grid);
    r.set_meta("s-over-sigma", list(&a.s_over_sigma));
    r.set_meta("omega-sigma", a.omega_sigma);
    let lambdas = a.lambda_grid.values();
    let cols = a
        .s_over_sigma
        .par_iter()
        .map(|&s| {
            let g = PairGeometry::separated(s)?;
            Ok((negativity_profile(&d, &g, &lambdas)?, negativity_perturbative(&d, &g, Bandlimit::Infinite)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for (s, (_, inf)) in a.s_over_sigma.iter().zip(&cols) {
        r.set_meta(&format!("negativity-inf[s:{s}]"), format!("{inf:e}"));
    }
    let rows =
        (0..lambdas.len()).map(|i| std::iter::once(lambdas[i]).chain(cols.iter().map(|c| c.0[i])).collect()).collect();
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct NegativityVsSArgs {
    #[arg(long, value_parser = grid, default_value = "0.2:2:1801")]
    pub s_grid: SweepGrid,
    #[arg(long, default_value = "50")]
    pub lambda_sigma: Bandlimit,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    pub omega_sigma: f64,
    /// Factor applied to the effective spatial profile overlay.
    #[arg(long, default_value_t = 1.0 / 300.0)]
    pub overlay_scale: f64,
}

/// Negativity per squared coupling against separation, bandlimited and not,
/// with the scaled effective point-like profile for comparison.
pub fn cmd_negativity_vs_s(a: &NegativityVsSArgs) -> Result<SweepResult> {
    let d = detector(a.omega_sigma, 1.0)?;
    let mut r = table(
        "negativity-vs-s",
        ["s", "negativity_per_lambda_sq", "negativity_inf_per_lambda_sq", "difference", "profile_overlay"],
    );
    r.set_meta("s-grid", &a.s_grid);
    r.set_meta("lambda-sigma", a.lambda_sigma);
    r.set_meta("omega-sigma", a.omega_sigma);
    r.set_meta("overlay-scale", format!("{:e}", a.overlay_scale));
    let rows = a
        .s_grid
        .values()
        .into_par_iter()
        .map(|s| {
            let g = PairGeometry::separated(s)?;
            let n = negativity_perturbative(&d, &g, a.lambda_sigma)?;
            let n_inf = negativity_perturbative(&d, &g, Bandlimit::Infinite)?;
            let overlay = a.overlay_scale * effective_profile_pointlike(s, a.lambda_sigma)?;
            Ok(vec![s, n, n_inf, n - n_inf, overlay])
        })
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct OmegaCritArgs {
    #[arg(long, value_parser = grid, default_value = "0.5:40:80")]
    pub lambda_grid: SweepGrid,
    /// Half-width of the gap search window beyond the bandlimit.
    #[arg(long, default_value_t = OMEGA_CRIT_HALFWIDTH)]
    pub search_halfwidth: f64,
}

/// Gap magnitude maximising the excitation probability, with the line
/// `cutoff - 2` for comparison.
pub fn cmd_omega_crit(a: &OmegaCritArgs) -> Result<SweepResult> {
    let mut r = table("omega-crit", ["lambda", "omega_crit", "asymptote"]);
    r.set_meta("lambda-grid", &a.lambda_grid);
    r.set_meta("search-halfwidth", a.search_halfwidth);
    let rows = a
        .lambda_grid
        .values()
        .into_par_iter()
        .map(|l| Ok(vec![l, omega_crit(Bandlimit::finite(l)?, a.search_halfwidth)?, l - 2.0]))
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct ArrayDesignArgs {
    /// Bandlimit above which no pair may harvest.
    #[arg(long, default_value_t = 20.0)]
    pub threshold_lambda_sigma: f64,
    #[arg(long, default_value_t = 4)]
    pub pairs: usize,
    /// Gap of the first pair.
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    pub omega_sigma: f64,
    #[arg(long, default_value_t = 0.1)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
}

/// Threshold detector array and the negativity of each pair below the threshold.
pub fn cmd_array_design(a: &ArrayDesignArgs) -> Result<SweepResult> {
    let arr = design_array(a.threshold_lambda_sigma, a.pairs, a.omega_sigma, a.coupling)?;
    let mut cols = vec!["lambda".to_string()];
    cols.extend((1..=arr.pairs.len()).map(|k| format!("negativity_per_lambda_sq[pair={k}]")));
    cols.push("covered".into());
    let mut r = table("array-design", cols);
    r.set_meta("threshold-lambda-sigma", a.threshold_lambda_sigma);
    r.set_meta("pairs", a.pairs);
    r.set_meta("omega-sigma", a.omega_sigma);
    r.set_meta("grid-step", a.grid_step);
    r.set_meta("coupling", a.coupling);
    for (k, (w, s)) in arr.pairs.iter().enumerate() {
        r.set_meta(&format!("pair-{}", k + 1), format!("omega-sigma={w:e};s-over-sigma={s:e}"));
    }
    let report = array_coverage_check(&arr, a.grid_step)?;
    r.set_meta("coverage-fraction", format!("{:e}", report.fraction));
    r.set_meta("uncovered", list(&report.uncovered));

    let grid = cutoff_grid(0.0, a.threshold_lambda_sigma, a.grid_step);
    let unit = arr
        .pairs
        .par_iter()
        .map(|&(w, s)| negativity_profile(&detector(w, 1.0)?, &PairGeometry::separated(s)?, &grid))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..grid.len())
        .map(|i| {
            let mut row = vec![grid[i]];
            row.extend(unit.iter().map(|n| n[i]));
            row.push(if report.covered[i] { 1.0 } else { 0.0 });
            row
        })
        .collect();
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct DeltaPaArgs {
    #[arg(long, value_parser = grid, default_value = "0:20:401")]
    pub lambda_grid: SweepGrid,
    /// Smearing widths, one column each.
    #[arg(long, value_delimiter = ',', default_value = "0.001,0.2,0.5,1")]
    pub a_over_sigma: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
}

/// Excitation probability of a delta-switched smeared detector against bandlimit.
pub fn cmd_delta_pa(a: &DeltaPaArgs) -> Result<SweepResult> {
    let profiles = a.a_over_sigma.iter().map(|&w| GaussianProfile::new(w)).collect::<Result<Vec<_>>>()?;
    detector(0.0, a.coupling)?;
    let mut cols = vec!["lambda".to_string()];
    cols.extend(a.a_over_sigma.iter().map(|w| format!("pa[a={w}]")));
    cols.push("pa_pointlike".into());
    let mut r = table("delta-pa", cols);
    r.set_meta("lambda-grid", &a.lambda_grid);
    r.set_meta("a-over-sigma", list(&a.a_over_sigma));
    r.set_meta("coupling", a.coupling);
    for (w, p) in a.a_over_sigma.iter().zip(&profiles) {
        r.set_meta(&format!("pa-inf[a:{w}]"), format!("{:e}", pa_delta(a.coupling, p, Bandlimit::Infinite)));
    }
    let rows = a
        .lambda_grid
        .values()
        .into_par_iter()
        .map(|l| {
            let bl = Bandlimit::finite(l)?;
            let mut row = vec![l];
            row.extend(profiles.iter().map(|p| pa_delta(a.coupling, p, bl)));
            row.push(0.5 * (1.0 - f_pointlike(a.coupling, bl)));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct LambdaMaxArgs {
    #[arg(long, value_parser = grid, default_value = "0.001:2:60:log")]
    pub a_grid: SweepGrid,
    /// Tolerances, one column each.
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.01,0.005")]
    pub tolerance: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
}

/// Bandlimit at which the excitation probability comes within each tolerance
/// of its unbandlimited value. `NaN` marks widths where that never happens.
pub fn cmd_lambda_max(a: &LambdaMaxArgs) -> Result<SweepResult> {
    detector(0.0, a.coupling)?;
    if let Some(t) = a.tolerance.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {t}")));
    }
    let mut cols = vec!["width".to_string()];
    cols.extend(a.tolerance.iter().map(|t| format!("lambda_max[tol={t}]")));
    let mut r = table("lambda-max", cols);
    r.set_meta("a-grid", &a.a_grid);
    r.set_meta("tolerance", list(&a.tolerance));
    r.set_meta("coupling", a.coupling);
    let rows = a
        .a_grid
        .values()
        .into_par_iter()
        .map(|w| {
            let p = GaussianProfile::new(w)?;
            let mut row = vec![w];
            for &t in &a.tolerance {
                row.push(match lambda_max(a.coupling, &p, t) {
                    Ok(v) => v,
                    Err(Error::BracketFailure(_)) => f64::NAN,
                    Err(e) => return Err(e),
                });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}

#[derive(Debug, Clone, Args)]
pub struct DeltaThetaPbArgs {
    #[arg(long, value_parser = grid, default_value = "0:60:1201")]
    pub lambda_grid: SweepGrid,
    #[arg(long, default_value_t = 0.01)]
    pub a_over_sigma: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t_over_sigma: f64,
    #[arg(long, default_value_t = 0.8)]
    pub s_over_sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
}

/// Commutator phase and both excitation probabilities for a delta-switched pair.
pub fn cmd_delta_theta_pb(a: &DeltaThetaPbArgs) -> Result<SweepResult> {
    let d = detector(0.0, a.coupling)?;
    let g = PairGeometry::new(a.s_over_sigma, a.t_over_sigma)?;
    let p = GaussianProfile::new(a.a_over_sigma)?;
    let mut r = table("delta-theta-pb", ["lambda", "theta", "theta_pointlike", "pa", "pb"]);
    r.set_meta("lambda-grid", &a.lambda_grid);
    r.set_meta("a-over-sigma", a.a_over_sigma);
    r.set_meta("t-over-sigma", a.t_over_sigma);
    r.set_meta("s-over-sigma", a.s_over_sigma);
    r.set_meta("coupling", a.coupling);
    let rows = a
        .lambda_grid
        .values()
        .into_par_iter()
        .map(|l| {
            let bl = Bandlimit::finite(l)?;
            let cfg = DeltaPairConfig::new(d, g, p, bl);
            let (pa, pb) = pd_delta(&cfg)?;
            Ok(vec![l, theta_gaussian_profile(&cfg)?, theta_pointlike(a.coupling, &g, bl)?, pa, pb])
        })
        .collect::<Result<Vec<_>>>()?;
    fill(&mut r, rows)?;
    Ok(r)
}
