//! Cross-validation of the simulation, the momentum-space integrals and the
//! closed-form limit laws.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit::{
    density_at, limit_cdf, limit_cdf_left, limit_density, stationary_amplitudes, stationary_law,
    LimitDensity,
};
use crate::linalg::{max_abs_diff, norm_sqr, Spinor, C64};
use crate::quadrature::QuadSpec;
use crate::spectral::{
    eigen_system, flat_band_profile, inverse_fourier_profile, localized_mass, spectral_moments,
    unwrapped_phase_difference, MomentumOperator,
};
use crate::walk::{
    build_coin_operator, evolve, CoinParameters, InitialCoinState, PositionDistribution, WalkState,
};

/// Kolmogorov–Smirnov distance between the empirical law of `X_t / t` and the
/// limit law.
///
/// The empirical CDF is a step function with jumps at `y = x / t` and the
/// limit CDF is continuous apart from its atom at `0`, so the supremum is
/// attained at one of the one-sided limits around a breakpoint.
pub fn ks_distance(dist: &PositionDistribution, d: &LimitDensity, quad: &QuadSpec) -> Result<f64> {
    if dist.t() == 0 {
        return Err(Error::InvalidArgument(
            "KS distance needs t >= 1 to rescale positions".into(),
        ));
    }
    let t = dist.t() as f64;
    let mut below = 0.0;
    let mut worst = 0.0_f64;
    for (x, p) in dist.iter() {
        let y = x as f64 / t;
        let at = below + p;
        let lim_left = limit_cdf_left(d, y, quad)?;
        let lim_right = if x == 0 {
            limit_cdf(d, y, quad)?
        } else {
            lim_left
        };
        worst = worst
            .max((below - lim_left).abs())
            .max((at - lim_right).abs());
        below = at;
    }
    Ok(worst)
}

/// Least-squares slope of `ln p(x)` against `x`.
pub fn log_slope(points: &[(i64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|&(x, p)| (x as f64, p.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationOptions {
    /// Tail fit uses `x in [1, x_cut]`.
    pub x_cut: i64,
    /// Parity gap is taken over `|x| <= parity_window`.
    pub parity_window: i64,
    /// Smallest step count kept in the halving schedule.
    pub min_schedule_t: usize,
    pub quad: QuadSpec,
}

impl Default for LocalizationOptions {
    fn default() -> Self {
        Self {
            x_cut: 8,
            parity_window: 5,
            min_schedule_t: 100,
            quad: QuadSpec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub t_values: Vec<usize>,
    pub ks_distances: Vec<f64>,
    pub p0_trace: Vec<f64>,
    pub p0_limit: f64,
    /// Fitted slope of `ln p_t(x)` over `x in [1, x_cut]` at the largest `t`.
    pub decay_fit: Option<f64>,
    /// `ln r`.
    pub decay_theory: f64,
    pub x_cut: i64,
    /// `max_{|x| <= window} |p_t(x) - p_{t+1}(x)|` at the largest `t`.
    pub parity_gap: f64,
}

impl ConvergenceReport {
    pub fn final_p0_error(&self) -> f64 {
        (self.p0_trace.last().copied().unwrap_or(f64::NAN) - self.p0_limit).abs()
    }

    pub fn decay_relative_error(&self) -> Option<f64> {
        self.decay_fit
            .map(|s| ((s - self.decay_theory) / self.decay_theory).abs())
    }

    /// Largest ratio `ks[i + 1] / ks[i]` along the schedule.
    pub fn ks_growth(&self) -> f64 {
        self.ks_distances
            .windows(2)
            .map(|w| w[1] / w[0])
            .fold(0.0, f64::max)
    }

    /// Whether KS distances never grow by more than `slack` (relative).
    pub fn ks_nonincreasing_within(&self, slack: f64) -> bool {
        self.ks_growth() <= 1.0 + slack
    }
}

/// Evolves to `t_max + 1` and records convergence diagnostics on the
/// halving schedule `.., t_max / 4, t_max / 2, t_max`.
pub fn localization_check(
    coin: &CoinParameters,
    initial: &InitialCoinState,
    t_max: usize,
    opts: &LocalizationOptions,
) -> Result<ConvergenceReport> {
    if t_max < 100 {
        return Err(Error::InvalidArgument(format!(
            "localization check needs t_max >= 100, got {t_max}"
        )));
    }
    let mut schedule = vec![t_max];
    while schedule.last().unwrap() / 2 >= opts.min_schedule_t.max(1) {
        let next = schedule.last().unwrap() / 2;
        schedule.push(next);
    }
    schedule.reverse();

    let density = limit_density(coin, initial);
    let law = stationary_law(coin, initial);
    let op = build_coin_operator(coin);

    let mut state = WalkState::at_origin(*initial.alpha());
    let mut snapshots = Vec::with_capacity(schedule.len());
    let mut next_idx = 0;
    while state.t() < t_max {
        state = state.step(&op);
        if next_idx < schedule.len() && state.t() == schedule[next_idx] {
            snapshots.push(state.distribution());
            next_idx += 1;
        }
    }
    let after = state.step(&op).distribution();
    let last = snapshots.last().expect("schedule ends at t_max");

    let ks_distances = snapshots
        .iter()
        .map(|d| ks_distance(d, &density, &opts.quad))
        .collect::<Result<Vec<_>>>()?;
    let p0_trace = snapshots.iter().map(|d| d.probability(0)).collect();

    let tail: Vec<(i64, f64)> = (1..=opts.x_cut)
        .map(|x| (x, last.probability(x)))
        .filter(|(_, p)| *p > 1e-12)
        .collect();
    let parity_gap = (-opts.parity_window..=opts.parity_window)
        .map(|x| (last.probability(x) - after.probability(x)).abs())
        .fold(0.0, f64::max);

    Ok(ConvergenceReport {
        t_values: schedule,
        ks_distances,
        p0_trace,
        p0_limit: law.p0,
        decay_fit: log_slope(&tail),
        decay_theory: law.ratio.ln(),
        x_cut: opts.x_cut,
        parity_gap,
    })
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub family: String,
    pub case: String,
    pub beta: f64,
    /// `(re, im)` of `alpha_1 .. alpha_4`.
    pub alpha: [[f64; 2]; 4],
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
    /// Non-gating checks are reported but do not fail the suite.
    pub gating: bool,
    pub note: Option<String>,
}

impl CheckRecord {
    fn new(family: &str, case: &Case, measured: f64, bound: f64) -> Self {
        Self {
            family: family.to_string(),
            case: case.label.clone(),
            beta: case.coin.beta(),
            alpha: case.initial.alpha().map(|z| [z.re, z.im]),
            measured,
            bound,
            passed: measured <= bound,
            gating: true,
            note: None,
        }
    }

    fn failed(family: &str, case: &Case, err: &Error) -> Self {
        let mut r = Self::new(family, case, f64::NAN, 0.0);
        r.note = Some(err.to_string());
        r
    }

    fn informational(mut self, note: &str) -> Self {
        self.gating = false;
        self.note = Some(note.to_string());
        self
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "INFO",
        };
        write!(
            f,
            "{status} {} [{}] beta={:.15} alpha=[",
            self.family, self.case, self.beta
        )?;
        for (i, [re, im]) in self.alpha.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{re:.15}{im:+.15}i")?;
        }
        write!(
            f,
            "] measured={:.3e} bound={:.3e}",
            self.measured, self.bound
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    /// True when every gating check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.gating)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed && c.gating)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.failures().next()
    }

    /// `(passed, total)` per family.
    pub fn families(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out = BTreeMap::new();
        for c in &self.checks {
            let e = out.entry(c.family.clone()).or_insert((0, 0));
            e.1 += 1;
            if c.passed {
                e.0 += 1;
            }
        }
        out
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    pub quad: QuadSpec,
    /// Wavenumbers sampled per case for the pointwise eigen identities.
    pub k_samples: usize,
    /// Compare exact evolution with inverse Fourier reconstruction at this
    /// many steps; zero skips the check.
    pub oracle_steps: u32,
    pub max_moment: u32,
    /// Dual-path stationary comparison over `|x| <= stationary_window`.
    pub stationary_window: i64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            quad: QuadSpec::default(),
            k_samples: 8,
            oracle_steps: 10,
            max_moment: 4,
            stationary_window: 10,
        }
    }
}

#[derive(Clone, Debug)]
struct Case {
    label: String,
    coin: CoinParameters,
    initial: InitialCoinState,
}

impl Case {
    fn pinned(label: &str, beta: f64, initial: InitialCoinState) -> Self {
        Self {
            label: label.to_string(),
            coin: CoinParameters::new(beta).expect("pinned beta is valid"),
            initial,
        }
    }
}

/// Margin kept away from the ends of `(0, pi/2)` when drawing `beta`.
pub const BETA_MARGIN: f64 = 0.1;

/// Random `(beta, alpha)`: `beta` uniform on `[0.1, pi/2 - 0.1]` and `alpha`
/// uniform on the unit sphere of `C^4`.
pub fn random_parameters(rng: &mut impl Rng) -> (CoinParameters, InitialCoinState) {
    let beta = rng.random_range(BETA_MARGIN..=FRAC_PI_2 - BETA_MARGIN);
    let mut alpha = [C64::new(0.0, 0.0); 4];
    for a in &mut alpha {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *a = C64::new(re, im);
    }
    (
        CoinParameters::new(beta).expect("beta drawn inside the open interval"),
        InitialCoinState::normalized(alpha).expect("gaussian draw is nonzero"),
    )
}

/// Per-item generator: item `i` of a run seeded with `seed` always sees the
/// same stream regardless of scheduling.
pub fn item_rng(seed: u64, item: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(item);
    rng
}

fn pinned_cases() -> Vec<Case> {
    vec![
        Case::pinned("bell", FRAC_PI_4, InitialCoinState::bell()),
        Case::pinned("nonloc", FRAC_PI_4, InitialCoinState::nonlocalizing()),
        Case::pinned("basis00", FRAC_PI_3, InitialCoinState::basis(0)),
    ]
}

/// Algebraic and quadrature identities tying the two limit theorems, the
/// momentum-space integrals and the walk together, over the pinned cases plus
/// `samples` random draws.
pub fn theorem_consistency_suite(samples: usize, seed: u64, opts: &SuiteOptions) -> SuiteReport {
    let mut cases = pinned_cases();
    for i in 0..samples {
        let mut rng = item_rng(seed, i as u64 + 1);
        let (coin, initial) = random_parameters(&mut rng);
        cases.push(Case {
            label: format!("draw{i}"),
            coin,
            initial,
        });
    }
    let per_case: Vec<Vec<CheckRecord>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            let mut rng = item_rng(seed ^ 0x5eed_0000_0000_0000, i as u64);
            case_checks(case, &mut rng, opts)
        })
        .collect();

    let mut report = SuiteReport {
        checks: pinned_value_checks(&cases[0], &cases[1]),
    };
    report.checks.extend(per_case.into_iter().flatten());
    report
}

fn pinned_value_checks(bell: &Case, nonloc: &Case) -> Vec<CheckRecord> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let bd = limit_density(&bell.coin, &bell.initial);
    let bl = stationary_law(&bell.coin, &bell.initial);
    let nd = limit_density(&nonloc.coin, &nonloc.initial);
    let nl = stationary_law(&nonloc.coin, &nonloc.initial);
    vec![
        CheckRecord::new("pinned_atom", bell, (bd.c00 - (sqrt2 - 1.0)).abs(), 1e-12),
        CheckRecord::new(
            "pinned_stationary",
            bell,
            (bl.p0 - (3.0 - 2.0 * sqrt2))
                .abs()
                .max((bl.j_plus - 4.0).abs())
                .max((bl.j_minus - 4.0).abs()),
            1e-12,
        ),
        CheckRecord::new("pinned_atom", nonloc, nd.c00.abs(), 1e-12),
        CheckRecord::new(
            "pinned_stationary",
            nonloc,
            nl.p0.abs().max(nl.j_plus.abs()).max(nl.j_minus.abs()),
            1e-12,
        ),
    ]
}

fn case_checks(case: &Case, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Vec<CheckRecord> {
    let coin = &case.coin;
    let initial = &case.initial;
    let quad = &opts.quad;
    let density = limit_density(coin, initial);
    let law = stationary_law(coin, initial);
    let amps = stationary_amplitudes(coin, initial);
    let mut out = Vec::new();

    out.push(CheckRecord::new(
        "mass_identity",
        case,
        (density.c00 - law.total_mass()).abs(),
        1e-10,
    ));
    out.push(match localized_mass(coin, initial, quad) {
        Ok(m) => CheckRecord::new("atom_spectral", case, (density.c00 - m).abs(), 1e-8),
        Err(e) => CheckRecord::failed("atom_spectral", case, &e),
    });
    out.push(match density.ac_mass(quad) {
        Ok(m) => CheckRecord::new(
            "density_total_mass",
            case,
            (density.c00 + m - 1.0).abs(),
            1e-8,
        ),
        Err(e) => CheckRecord::failed("density_total_mass", case, &e),
    });
    let cb = density.support_bound;
    let most_negative = (1..400)
        .map(|i| density_at(&density, cb * (-1.0 + i as f64 / 200.0)))
        .fold(0.0, f64::min);
    out.push(CheckRecord::new(
        "density_nonnegative",
        case,
        -most_negative,
        1e-10,
    ));

    let moments = spectral_moments(opts.max_moment, coin, initial, quad).and_then(|spec| {
        let mut worst = 0.0_f64;
        for (r, s) in spec.iter().enumerate() {
            worst = worst.max((s - density.moment(r as u32, quad)?).abs());
        }
        Ok(worst)
    });
    out.push(match moments {
        Ok(w) => CheckRecord::new("moment_consistency", case, w, 1e-6),
        Err(e) => CheckRecord::failed("moment_consistency", case, &e),
    });

    let window = opts.stationary_window;
    let dual = (-window..=window)
        .map(|x| (law.probability(x) - amps.probability(x)).abs())
        .fold(0.0, f64::max);
    out.push(CheckRecord::new("stationary_dual_path", case, dual, 1e-10));
    out.push(match flat_band_profile(5, coin, initial, quad) {
        Ok(profile) => {
            let worst = profile
                .iter()
                .enumerate()
                .map(|(i, psi)| (law.probability(i as i64 - 5) - norm_sqr(psi)).abs())
                .fold(0.0, f64::max);
            CheckRecord::new("stationary_spectral", case, worst, 1e-8)
        }
        Err(e) => CheckRecord::failed("stationary_spectral", case, &e),
    });
    out.push(CheckRecord::new(
        "stationary_nonnegative",
        case,
        -law.p0.min(law.j_plus).min(law.j_minus).min(0.0),
        1e-12,
    ));

    let mut eig = 0.0_f64;
    let mut sym = 0.0_f64;
    let mut fd = 0.0_f64;
    let mut vec_id = 0.0_f64;
    let mut completeness = 0.0_f64;
    for _ in 0..opts.k_samples {
        let k = rng.random_range(1e-3..TAU - 1e-3);
        let p = pointwise_identities(k, coin, initial.alpha());
        eig = eig.max(p.eigenvalues);
        sym = sym.max(p.velocity_symmetry);
        fd = fd.max(p.finite_difference);
        vec_id = vec_id.max(p.eigenvectors);
        completeness = completeness.max(p.completeness);
    }
    out.push(CheckRecord::new("eigenvalue_closed_form", case, eig, 1e-10));
    out.push(CheckRecord::new(
        "group_velocity_symmetry",
        case,
        sym,
        1e-10,
    ));
    out.push(CheckRecord::new(
        "group_velocity_finite_difference",
        case,
        fd,
        1e-6,
    ));
    out.push(CheckRecord::new(
        "eigenvector_identities",
        case,
        vec_id,
        1e-8,
    ));
    out.push(CheckRecord::new(
        "overlap_completeness",
        case,
        completeness,
        1e-10,
    ));

    if opts.oracle_steps > 0 {
        out.push(match oracle_gap(coin, initial, opts.oracle_steps, quad) {
            Ok(g) => CheckRecord::new("oracle_equivalence", case, g, 1e-8),
            Err(e) => CheckRecord::failed("oracle_equivalence", case, &e),
        });
    }
    out
}

/// Largest per-amplitude gap between exact evolution and the inverse Fourier
/// reconstruction after `t` steps.
pub fn oracle_gap(
    coin: &CoinParameters,
    initial: &InitialCoinState,
    t: u32,
    quad: &QuadSpec,
) -> Result<f64> {
    let state = evolve(initial, coin, t as usize);
    let profile = inverse_fourier_profile(t, coin, initial, quad)?;
    Ok(profile
        .iter()
        .enumerate()
        .map(|(i, psi)| max_abs_diff(psi, &state.amplitude(i as i64 - t as i64)))
        .fold(0.0, f64::max))
}

/// Worst residuals of the pointwise momentum-space identities at one `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PointwiseResiduals {
    /// Numeric vs closed-form eigenvalues, `Lambda_j` products, factorization
    /// and unitarity.
    pub eigenvalues: f64,
    /// `h2 = h3 = 0`, `h1 + h4 = 0`.
    pub velocity_symmetry: f64,
    /// Closed-form group velocity vs centered difference of `arg Lambda`.
    pub finite_difference: f64,
    /// Eigenvector magnitude and cross-term identities.
    pub eigenvectors: f64,
    /// `sum_j |<V_j, alpha>|^2 = |alpha|^2`.
    pub completeness: f64,
}

pub const FD_STEP: f64 = 1e-5;

pub fn pointwise_identities(k: f64, coin: &CoinParameters, alpha: &Spinor) -> PointwiseResiduals {
    let es = eigen_system(k, coin).expect("k sampled inside [0, 2pi)");
    let op = MomentumOperator::new(k, coin);

    let numeric = op.u_half.eigenvalues();
    let [l1, l2] = es.lambdas;
    let mut eigenvalues = (numeric[0] - l1).norm().max((numeric[1] - l2).norm());
    let theta = C64::from_polar(1.0, coin.theta());
    eigenvalues = eigenvalues
        .max((es.big_lambdas[0] - l1 * l1).norm())
        .max((es.big_lambdas[1] - theta).norm())
        .max((es.big_lambdas[2] - theta).norm())
        .max((es.big_lambdas[3] - l2 * l2).norm())
        .max(op.u_ec.max_abs_diff(&op.u_half.kron(&op.u_half)))
        .max(op.u_ec.unitarity_defect())
        .max(op.u_half.unitarity_defect());
    for j in 0..4 {
        let uv = op.u_ec.apply(&es.big_vs[j]);
        let lv = es.big_vs[j].map(|z| z * es.big_lambdas[j]);
        eigenvalues = eigenvalues.max(max_abs_diff(&uv, &lv));
    }

    let h = es.group_velocities;
    let velocity_symmetry = h[1].abs().max(h[2].abs()).max((h[0] + h[3]).abs());

    // Finite differences use the numerically computed eigenvalues.
    let lam_at = |kk: f64| MomentumOperator::new(kk, coin).u_half.eigenvalues();
    let [p1, p2] = lam_at(k + FD_STEP);
    let [m1, m2] = lam_at(k - FD_STEP);
    let fd1 = unwrapped_phase_difference(m1 * m1, p1 * p1) / (2.0 * FD_STEP);
    let fd4 = unwrapped_phase_difference(m2 * m2, p2 * p2) / (2.0 * FD_STEP);
    let finite_difference = (fd1 - h[0]).abs().max((fd4 - h[3]).abs());

    let a = coin.matrix();
    let (ca, cb, cc, cd) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let tan_b = coin.beta().tan();
    let mut eigenvectors = 0.0_f64;
    let mut cross = [C64::new(0.0, 0.0); 2];
    for (i, slot) in cross.iter_mut().enumerate() {
        let v = es.vs[i];
        let lam = es.lambdas[i];
        let g = es.lambda_velocity(i);
        let m1 = v[0].norm_sqr();
        let m2 = v[1].norm_sqr();
        let x = v[0] * v[1].conj();
        *slot = x;
        let general =
            (cc.conj() * lam * m1 - cb * lam.conj() * m2) / (ca * lam.conj() - cd.conj() * lam);
        let special = tan_b * ((lam - lam.conj()) / (2.0 * (lam + lam.conj())) + g);
        eigenvectors = eigenvectors
            .max((m1 - (1.0 + 2.0 * g) / 2.0).abs())
            .max((m2 - (1.0 - 2.0 * g) / 2.0).abs())
            .max((x - general).norm())
            .max((x - special).norm());
    }
    let [v1, v2] = es.vs;
    eigenvectors = eigenvectors
        .max((v2[0].norm_sqr() - v1[1].norm_sqr()).abs())
        .max((v2[1].norm_sqr() - v1[0].norm_sqr()).abs())
        .max((cross[1] + cross[0]).norm())
        .max((es.lambda_velocity(0) + es.lambda_velocity(1)).abs());

    let w = es.overlaps(alpha);
    let completeness = (w.iter().sum::<f64>() - norm_sqr(alpha)).abs();

    PointwiseResiduals {
        eigenvalues,
        velocity_symmetry,
        finite_difference,
        eigenvectors,
        completeness,
    }
}

/// Simulation checkpoints for the two worked examples at `t_max` steps.
///
/// The KS distance for the localizing case and the `[1, x_cut]` tail fit are
/// reported as non-gating: at finite `t` the localized tails occupy `y = ±1/t,
/// ±2/t, ..` rather than the atom at `0`, and for `x >= 5` the ballistic
/// background exceeds the geometric tail at `t = 1000`.
pub fn pinned_simulation_checks(t_max: usize, opts: &LocalizationOptions) -> Result<SuiteReport> {
    let cases = pinned_cases();
    let (bell, nonloc) = (&cases[0], &cases[1]);
    let b = localization_check(&bell.coin, &bell.initial, t_max, opts)?;
    let n = localization_check(&nonloc.coin, &nonloc.initial, t_max, opts)?;
    let ks = |r: &ConvergenceReport| r.ks_distances.last().copied().unwrap_or(f64::NAN);
    let checks = vec![
        CheckRecord::new("simulated_p0", bell, b.final_p0_error(), 2e-3),
        CheckRecord::new("ks_monotone", bell, b.ks_growth(), 1.1),
        CheckRecord::new("parity_gap", bell, b.parity_gap, 5e-3),
        CheckRecord::new("ks_distance", bell, ks(&b), 0.05)
            .informational("localized tails sit at y = ±1/t, ±2/t rather than in the atom at 0"),
        CheckRecord::new(
            "tail_decay_fit",
            bell,
            b.decay_relative_error().unwrap_or(f64::NAN),
            0.02,
        )
        .informational("ballistic background dominates p_t(x) for x >= 5 at this t"),
        CheckRecord::new(
            "simulated_p0",
            nonloc,
            n.p0_trace.last().copied().unwrap_or(f64::NAN),
            1e-2,
        ),
        CheckRecord::new("parity_gap", nonloc, n.parity_gap, 5e-3),
        CheckRecord::new("ks_monotone", nonloc, n.ks_growth(), 1.1),
        CheckRecord::new("ks_distance", nonloc, ks(&n), 0.05),
    ];
    Ok(SuiteReport { checks })
}
