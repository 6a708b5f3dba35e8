//! Momentum-space picture of the walk.
//!
//! With `psi_hat(k) = sum_x psi(x) e^{ikx}` one step becomes multiplication by
//! `U_ec(k) = diag(e^{ik}, 1, 1, e^{-ik}) (A ⊗ A)`, which factors as
//! `U(k/2) ⊗ U(k/2)` with `U(k/2) = diag(e^{ik/2}, e^{-ik/2}) A`. Everything
//! here is a pure function of `(k, coin, initial state)`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{inner, kron2, Matrix2, Matrix4, Spinor, C64, ZERO};
use crate::quadrature::{integrate, QuadSpec};
use crate::walk::{build_coin_operator, CoinParameters, InitialCoinState};

/// Spectral branch of `U_ec(k)`: `V_1 = v1⊗v1`, `V_2 = v1⊗v2`,
/// `V_3 = v2⊗v1`, `V_4 = v2⊗v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    One,
    Two,
    Three,
    Four,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::One, Branch::Two, Branch::Three, Branch::Four];

    pub fn index(self) -> usize {
        match self {
            Branch::One => 0,
            Branch::Two => 1,
            Branch::Three => 2,
            Branch::Four => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumOperator {
    pub k: f64,
    pub u_half: Matrix2,
    pub u_ec: Matrix4,
}

impl MomentumOperator {
    /// Builds both operators directly from their definitions (no factorization
    /// is used, so `u_ec == u_half ⊗ u_half` is a checkable identity).
    pub fn new(k: f64, coin: &CoinParameters) -> Self {
        let half = C64::from_polar(1.0, 0.5 * k);
        let u_half = Matrix2::diagonal([half, half.conj()]) * *coin.matrix();
        let full = C64::from_polar(1.0, k);
        let one = C64::new(1.0, 0.0);
        let u_ec = Matrix4::diagonal([full, one, one, full.conj()]) * build_coin_operator(coin);
        Self { k, u_half, u_ec }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub k: f64,
    /// `lambda_1` (positive real part) and `lambda_2` of `U(k/2)`.
    pub lambdas: [C64; 2],
    /// `Lambda_1 .. Lambda_4` of `U_ec(k)`.
    pub big_lambdas: [C64; 4],
    /// Unit eigenvectors `v1, v2` of `U(k/2)`, arbitrary phase.
    pub vs: [[C64; 2]; 2],
    /// `V_1 .. V_4`.
    pub big_vs: [Spinor; 4],
    /// `h(k, j) = conj(Lambda_j) D Lambda_j`, with `D = -i d/dk`.
    pub group_velocities: [f64; 4],
}

impl EigenSystem {
    /// Phase `eta(k)` of `lambda_1`; `Lambda_1 = e^{2 i eta}`.
    pub fn eta(&self) -> f64 {
        self.lambdas[0].arg()
    }

    /// `conj(lambda_i) D lambda_i` for the single-qubit eigenvalue `i in {0, 1}`.
    pub fn lambda_velocity(&self, i: usize) -> f64 {
        if i == 0 {
            0.5 * self.group_velocities[0]
        } else {
            0.5 * self.group_velocities[3]
        }
    }

    /// Expansion coefficients `<V_j, alpha>`.
    pub fn coefficients(&self, alpha: &Spinor) -> [C64; 4] {
        self.big_vs.map(|v| inner(&v, alpha))
    }

    /// `|<V_j, alpha>|^2` for every branch.
    pub fn overlaps(&self, alpha: &Spinor) -> [f64; 4] {
        self.coefficients(alpha).map(|c| c.norm_sqr())
    }

    /// `U_ec(k)^t alpha`, assembled from the eigen-expansion.
    pub fn propagate(&self, alpha: &Spinor, t: u32) -> Spinor {
        let coeffs = self.coefficients(alpha);
        let mut out = [ZERO; 4];
        for ((lam, c), vec) in self.big_lambdas.iter().zip(coeffs).zip(&self.big_vs) {
            let a = lam.powu(t) * c;
            for (o, v) in out.iter_mut().zip(vec) {
                *o += a * v;
            }
        }
        out
    }

    /// Component of `alpha` in the `Lambda = e^{i theta}` eigenspace (branches 2 and 3).
    pub fn flat_band_part(&self, alpha: &Spinor) -> Spinor {
        let coeffs = self.coefficients(alpha);
        let mut out = [ZERO; 4];
        for j in [1, 2] {
            for (o, v) in out.iter_mut().zip(&self.big_vs[j]) {
                *o += coeffs[j] * v;
            }
        }
        out
    }
}

/// Group velocity of branch 1,
/// `cos b cos(k/2) / sqrt(sin^2 b + cos^2 b cos^2(k/2))`.
pub fn group_velocity(k: f64, beta: f64) -> f64 {
    let (sb, cb) = beta.sin_cos();
    let ck = (0.5 * k).cos();
    cb * ck / (sb * sb + cb * cb * ck * ck).sqrt()
}

/// Closed-form eigenvalues `±sqrt(1 - cos^2 b sin^2(k/2)) + i cos b sin(k/2)`.
pub fn closed_form_lambdas(k: f64, beta: f64) -> [C64; 2] {
    let cb = beta.cos();
    let sk = (0.5 * k).sin();
    let root = (1.0 - cb * cb * sk * sk).sqrt();
    [C64::new(root, cb * sk), C64::new(-root, cb * sk)]
}

pub fn eigen_system(k: f64, coin: &CoinParameters) -> Result<EigenSystem> {
    if !(k.is_finite() && (0.0..TAU).contains(&k)) {
        return Err(Error::WavenumberOutOfRange(k));
    }
    let op = MomentumOperator::new(k, coin);
    let lambdas = closed_form_lambdas(k, coin.beta());
    let v1 = op.u_half.eigenvector(lambdas[0]);
    let v2 = op.u_half.eigenvector(lambdas[1]);
    let [l1, l2] = lambdas;
    let h = group_velocity(k, coin.beta());
    Ok(EigenSystem {
        k,
        lambdas,
        big_lambdas: [l1 * l1, l1 * l2, l2 * l1, l2 * l2],
        vs: [v1, v2],
        big_vs: [
            kron2(&v1, &v1),
            kron2(&v1, &v2),
            kron2(&v2, &v1),
            kron2(&v2, &v2),
        ],
        group_velocities: [h, 0.0, 0.0, -h],
    })
}

/// `|<V_j(k), alpha>|^2`; the initial spinor is `k`-independent.
pub fn initial_overlap(
    k: f64,
    branch: Branch,
    coin: &CoinParameters,
    initial: &InitialCoinState,
) -> Result<f64> {
    Ok(eigen_system(k, coin)?.overlaps(initial.alpha())[branch.index()])
}

/// Limit moments `E[(X_t/t)^r]` for `r = 0 ..= max_order`:
/// `∫ sum_j h(k,j)^r |<V_j, alpha>|^2 dk/2pi`.
pub fn spectral_moments(
    max_order: u32,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<Vec<f64>> {
    let alpha = *initial.alpha();
    let coin = *coin;
    let n = max_order as usize + 1;
    integrate(
        move |k: f64| {
            let es = eigen_system(k, &coin).expect("quadrature node inside [0, 2pi)");
            let w = es.overlaps(&alpha);
            (0..n)
                .map(|r| {
                    let s: f64 = es
                        .group_velocities
                        .iter()
                        .zip(w)
                        .map(|(h, w)| if r == 0 { w } else { h.powi(r as i32) * w })
                        .sum();
                    s / TAU
                })
                .collect::<Vec<f64>>()
        },
        0.0,
        TAU,
        quad,
    )
}

pub fn spectral_moment(
    r: u32,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<f64> {
    Ok(spectral_moments(r, coin, initial, quad)?[r as usize])
}

/// `psi_t(x, .)` for every `x in [-t, t]` by inverse Fourier transform of the
/// eigen-expansion. Index `i` holds position `i - t`.
pub fn inverse_fourier_profile(
    t: u32,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<Vec<Spinor>> {
    positions_integral(-(t as i64), t as i64, coin, quad, |es| {
        es.propagate(initial.alpha(), t)
    })
}

/// Single-site version of [`inverse_fourier_profile`]; any `x` is accepted and
/// sites outside `[-t, t]` come back as zero up to quadrature error.
pub fn inverse_fourier_amplitude(
    x: i64,
    t: u32,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<Spinor> {
    Ok(positions_integral(x, x, coin, quad, |es| es.propagate(initial.alpha(), t))?[0])
}

/// Stationary amplitudes from the flat bands:
/// `∫ e^{-ixk} sum_{j=2,3} <V_j, alpha> V_j dk/2pi` for `x in [-x_max, x_max]`.
/// Up to the global sign `(-1)^t` this is the `t -> ∞` limit of `psi_t(x)`.
pub fn flat_band_profile(
    x_max: i64,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<Vec<Spinor>> {
    positions_integral(-x_max, x_max, coin, quad, |es| {
        es.flat_band_part(initial.alpha())
    })
}

/// `∫ (|<V_2, alpha>|^2 + |<V_3, alpha>|^2) dk/2pi`, the localized mass.
pub fn localized_mass(
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<f64> {
    let alpha = *initial.alpha();
    let coin = *coin;
    integrate(
        move |k: f64| {
            let w = eigen_system(k, &coin)
                .expect("quadrature node inside [0, 2pi)")
                .overlaps(&alpha);
            (w[1] + w[2]) / TAU
        },
        0.0,
        TAU,
        quad,
    )
}

/// `∫_a^b |<V_j, alpha>|^2 dk/2pi` for one branch.
pub fn branch_weight(
    branch: Branch,
    k_from: f64,
    k_to: f64,
    coin: &CoinParameters,
    initial: &InitialCoinState,
    quad: &QuadSpec,
) -> Result<f64> {
    if k_to <= k_from {
        return Ok(0.0);
    }
    let alpha = *initial.alpha();
    let coin = *coin;
    let j = branch.index();
    integrate(
        move |k: f64| {
            eigen_system(k, &coin)
                .expect("quadrature node inside [0, 2pi)")
                .overlaps(&alpha)[j]
                / TAU
        },
        k_from,
        k_to,
        quad,
    )
}

fn positions_integral<F>(
    x_from: i64,
    x_to: i64,
    coin: &CoinParameters,
    quad: &QuadSpec,
    spinor_at: F,
) -> Result<Vec<Spinor>>
where
    F: Fn(&EigenSystem) -> Spinor,
{
    let coin = *coin;
    integrate(
        |k: f64| {
            let es = eigen_system(k, &coin).expect("quadrature node inside [0, 2pi)");
            let psi_hat = spinor_at(&es);
            (x_from..=x_to)
                .map(|x| {
                    let phase = C64::from_polar(1.0 / TAU, -(x as f64) * k);
                    psi_hat.map(|z| z * phase)
                })
                .collect::<Vec<Spinor>>()
        },
        0.0,
        TAU,
        quad,
    )
}

/// `arg b - arg a` wrapped into `(-pi, pi]`.
pub fn unwrapped_phase_difference(a: C64, b: C64) -> f64 {
    let mut d = b.arg() - a.arg();
    while d > PI {
        d -= TAU;
    }
    while d < -PI {
        d += TAU;
    }
    d
}
