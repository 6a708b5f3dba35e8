use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use qwalk2c_core::{
    density_at, evolve, limit_cdf, limit_density, pinned_simulation_checks, stationary_law,
    theorem_consistency_suite, CoinParameters, InitialCoinState, LocalizationOptions, QuadSpec,
    SuiteOptions, SuiteReport,
};
use rayon::prelude::*;

use crate::args::{Common, StateArgs};
use crate::error::CliError;
use crate::parse::{initial_state, parse_alpha, parse_beta, preset};
use crate::table::{fmt_sig, Table, Value};

/// Validated walk parameters.
pub struct Setup {
    pub coin: CoinParameters,
    pub initial: InitialCoinState,
    pub quad: QuadSpec,
}

pub fn quad_spec(common: &Common) -> Result<QuadSpec, CliError> {
    Ok(QuadSpec::with_tolerance(common.tol)?)
}

fn coin(text: &str) -> Result<CoinParameters, CliError> {
    let beta = parse_beta(text)?;
    CoinParameters::new(beta).map_err(|_| {
        CliError::Config(format!(
            "beta = {beta} is outside the open interval (0, pi/2)"
        ))
    })
}

pub fn setup(common: &Common, state: &StateArgs) -> Result<Setup, CliError> {
    let quad = quad_spec(common)?;
    let coin = coin(&state.beta)?;
    let initial = match (&state.alpha, &state.preset) {
        (Some(a), _) => initial_state(parse_alpha(a)?, state.renormalize)?,
        (None, Some(p)) => preset(p)?,
        (None, None) => InitialCoinState::bell(),
    };
    Ok(Setup {
        coin,
        initial,
        quad,
    })
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_sig(z.re);
    }
    let im = fmt_sig(z.im.abs());
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_sig(z.re))
}

fn fmt_alpha(initial: &InitialCoinState) -> String {
    initial
        .alpha()
        .iter()
        .map(|z| fmt_complex(*z))
        .collect::<Vec<_>>()
        .join(",")
}

fn head(table: &mut Table, command: &str, s: &Setup) {
    table
        .meta("command", command)
        .meta("beta", s.coin.beta())
        .meta("alpha", fmt_alpha(&s.initial));
}

pub fn simulate(s: &Setup, t: usize) -> Table {
    let state = evolve(&s.initial, &s.coin, t);
    let dist = state.distribution();
    let mut table = Table::new(&["x", "p", "abs_00", "abs_01", "abs_10", "abs_11"]);
    head(&mut table, "simulate", s);
    table
        .meta("t", t)
        .meta("norm_residual", (dist.total() - 1.0).abs());
    for (x, p) in dist.iter() {
        let psi = state.amplitude(x);
        let mut row = vec![Value::Int(x), Value::Num(p)];
        row.extend(psi.iter().map(|z| Value::Num(z.norm())));
        table.push(row);
    }
    table
}

pub fn density(s: &Setup, points: usize) -> Result<Table, CliError> {
    if points < 2 {
        return Err(CliError::Config(
            "density needs at least 2 grid points".into(),
        ));
    }
    let d = limit_density(&s.coin, &s.initial);
    let mut table = Table::new(&["y", "f_ac", "cdf"]);
    head(&mut table, "density", s);
    table
        .meta("c00", d.c00)
        .meta("c0", d.c0)
        .meta("c1", d.c1)
        .meta("c2", d.c2)
        .meta("cos_beta", d.support_bound)
        .meta("points", points);
    for i in 0..points {
        let y = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        if y.abs() == d.support_bound {
            continue;
        }
        table.push(vec![
            Value::Num(y),
            Value::Num(density_at(&d, y)),
            Value::Num(limit_cdf(&d, y, &s.quad)?),
        ]);
    }
    Ok(table)
}

pub fn stationary(s: &Setup, x_from: i64, x_to: i64) -> Result<Table, CliError> {
    if x_from > x_to {
        return Err(CliError::Config(format!("empty window [{x_from}, {x_to}]")));
    }
    let law = stationary_law(&s.coin, &s.initial);
    let mut table = Table::new(&["x", "p"]);
    head(&mut table, "stationary", s);
    table
        .meta("p0", law.p0)
        .meta("j_plus", law.j_plus)
        .meta("j_minus", law.j_minus)
        .meta("r", law.ratio)
        .meta("total_mass", law.total_mass());
    for x in x_from..=x_to {
        table.push(vec![Value::Int(x), Value::Num(law.probability(x))]);
    }
    Ok(table)
}

/// Runs the checks; the report is returned even when some check fails.
pub fn verify(
    quad: QuadSpec,
    samples: usize,
    seed: u64,
    t: usize,
) -> Result<(Table, SuiteReport), CliError> {
    if t != 0 && t < 100 {
        return Err(CliError::Config(format!(
            "simulation checkpoints need --t >= 100 (or 0 to skip), got {t}"
        )));
    }
    let opts = SuiteOptions {
        quad,
        ..SuiteOptions::default()
    };
    let mut report = theorem_consistency_suite(samples, seed, &opts);
    if t > 0 {
        let lopts = LocalizationOptions {
            quad,
            ..LocalizationOptions::default()
        };
        report.extend(pinned_simulation_checks(t, &lopts)?);
    }

    let mut table = Table::new(&[
        "family", "case", "beta", "alpha", "measured", "bound", "passed", "gating", "note",
    ]);
    let families = report.families();
    table
        .meta("command", "verify")
        .meta("samples", samples)
        .meta("seed", seed as i64)
        .meta("t", t)
        .meta("checks", report.checks.len())
        .meta("failures", report.failures().count())
        .meta("families", families.len())
        .meta("passed", report.passed());
    for c in &report.checks {
        let alpha = c
            .alpha
            .iter()
            .map(|[re, im]| fmt_complex(Complex64::new(*re, *im)))
            .collect::<Vec<_>>()
            .join(",");
        table.push(vec![
            c.family.as_str().into(),
            c.case.as_str().into(),
            Value::Num(c.beta),
            alpha.into(),
            Value::Num(c.measured),
            Value::Num(c.bound),
            c.passed.into(),
            c.gating.into(),
            c.note.clone().unwrap_or_default().into(),
        ]);
    }
    Ok((table, report))
}

pub struct SweepGrid {
    pub beta_min: f64,
    pub beta_max: f64,
    pub steps: usize,
    pub presets: Vec<String>,
}

impl SweepGrid {
    pub fn parse(
        min: &str,
        max: &str,
        steps: usize,
        presets: Vec<String>,
    ) -> Result<Self, CliError> {
        let (beta_min, beta_max) = (parse_beta(min)?, parse_beta(max)?);
        if !(beta_min > 0.0 && beta_max < FRAC_PI_2 && beta_min <= beta_max) {
            return Err(CliError::Config(format!(
                "beta grid [{beta_min}, {beta_max}] must satisfy 0 < min <= max < pi/2"
            )));
        }
        if steps == 0 || (steps == 1 && beta_min != beta_max) {
            return Err(CliError::Config(
                "beta grid needs at least two steps for a range".into(),
            ));
        }
        if presets.is_empty() {
            return Err(CliError::Config("sweep needs at least one preset".into()));
        }
        for p in &presets {
            preset(p)?;
        }
        Ok(Self {
            beta_min,
            beta_max,
            steps,
            presets,
        })
    }

    pub fn beta(&self, i: usize) -> f64 {
        if self.steps == 1 {
            return self.beta_min;
        }
        self.beta_min + (self.beta_max - self.beta_min) * i as f64 / (self.steps - 1) as f64
    }
}

pub fn sweep(grid: &SweepGrid) -> Result<Table, CliError> {
    let jobs: Vec<(usize, &str)> = (0..grid.steps)
        .flat_map(|i| grid.presets.iter().map(move |p| (i, p.as_str())))
        .collect();
    let rows: Vec<Vec<Value>> = jobs
        .par_iter()
        .map(|&(i, name)| -> Result<Vec<Value>, CliError> {
            let beta = grid.beta(i);
            let coin = CoinParameters::new(beta)?;
            let initial = preset(name)?;
            let d = limit_density(&coin, &initial);
            let law = stationary_law(&coin, &initial);
            Ok(vec![
                Value::Int(i as i64),
                Value::Num(beta),
                name.into(),
                Value::Num(d.c00),
                Value::Num(law.p0),
                Value::Num(law.ratio),
                Value::Num(law.j_plus),
                Value::Num(law.j_minus),
            ])
        })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&[
        "index", "beta", "preset", "c00", "p0", "r", "j_plus", "j_minus",
    ]);
    table
        .meta("command", "sweep")
        .meta("beta_min", grid.beta_min)
        .meta("beta_max", grid.beta_max)
        .meta("beta_steps", grid.steps)
        .meta("presets", grid.presets.join(","));
    for row in rows {
        table.push(row);
    }
    Ok(table)
}
