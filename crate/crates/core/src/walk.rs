//! Direct-space evolution of the two-coin walk.
//!
//! One step is `U = S (I ⊗ A ⊗ A)`: the coin acts on the 4-spinor at every
//! site, then the shift moves component `00` one site right, `11` one site
//! left, and leaves `01` and `10` in place.

use std::f64::consts::FRAC_PI_2;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, Matrix2, Matrix4, Spinor, C64, ZERO};

/// Coin angle `beta` and the single-qubit coin
/// `A(beta) = [[cos b, sin b], [sin b, -cos b]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinParameters {
    beta: f64,
    matrix: Matrix2,
    theta: f64,
}

impl CoinParameters {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0 && beta < FRAC_PI_2) {
            return Err(Error::BetaOutOfRange(beta));
        }
        let (s, c) = beta.sin_cos();
        let matrix = Matrix2::from_rows([
            [C64::new(c, 0.0), C64::new(s, 0.0)],
            [C64::new(s, 0.0), C64::new(-c, 0.0)],
        ]);
        Ok(Self {
            beta,
            matrix,
            // det A(beta) = -1
            theta: std::f64::consts::PI,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    /// Phase of `det A = e^{i theta}`.
    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Normalized coin state `(alpha_1, .., alpha_4)` placed at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialCoinState {
    alpha: Spinor,
}

impl InitialCoinState {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(alpha: Spinor) -> Result<Self> {
        let n = norm_sqr(&alpha);
        if !n.is_finite() || (n - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { alpha })
    }

    /// Rescales `alpha` to unit norm. Fails only for the zero vector.
    pub fn normalized(alpha: Spinor) -> Result<Self> {
        let n = norm_sqr(&alpha).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self {
            alpha: alpha.map(|a| a / n),
        })
    }

    pub fn from_real(alpha: [f64; 4]) -> Result<Self> {
        Self::new(alpha.map(|a| C64::new(a, 0.0)))
    }

    /// `(|00> + |11>) / sqrt 2`, the localizing example.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: [C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)],
        }
    }

    /// `(-1, -1, -1, 1) / 2`, which has no localized part at `beta = pi/4`.
    pub fn nonlocalizing() -> Self {
        Self {
            alpha: [-0.5, -0.5, -0.5, 0.5].map(|a| C64::new(a, 0.0)),
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut alpha = [ZERO; 4];
        alpha[index] = C64::new(1.0, 0.0);
        Self { alpha }
    }

    pub fn alpha(&self) -> &Spinor {
        &self.alpha
    }

    /// The state whose distribution is the spatial mirror image of this one's.
    ///
    /// Reflecting space swaps `0 <-> 1` on both qubits, and `X A X = -Z A Z`
    /// for `A(beta)`, so the mirrored walk starts from `(a4, -a3, -a2, a1)`.
    pub fn mirrored(&self) -> Self {
        let [a1, a2, a3, a4] = self.alpha;
        Self {
            alpha: [a4, -a3, -a2, a1],
        }
    }
}

/// `A ⊗ A`, acting on the coin basis `00, 01, 10, 11`.
pub fn build_coin_operator(params: &CoinParameters) -> Matrix4 {
    params.matrix().kron(params.matrix())
}

/// Wave function `psi_t(x, j)` stored densely over `offset .. offset + len`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    t: usize,
    offset: i64,
    amplitudes: Vec<Spinor>,
}

impl WalkState {
    /// A walker at the origin at `t = 0` with arbitrary (not necessarily
    /// normalized) coin amplitudes.
    pub fn at_origin(spinor: Spinor) -> Self {
        Self {
            t: 0,
            offset: 0,
            amplitudes: vec![spinor],
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Position of the first stored site.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amplitudes
    }

    pub fn positions(&self) -> RangeInclusive<i64> {
        self.offset..=self.offset + self.amplitudes.len() as i64 - 1
    }

    /// `psi_t(x, .)`, zero outside the stored window.
    pub fn amplitude(&self, x: i64) -> Spinor {
        let i = x - self.offset;
        if i < 0 || i >= self.amplitudes.len() as i64 {
            [ZERO; 4]
        } else {
            self.amplitudes[i as usize]
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(norm_sqr).sum()
    }

    /// One application of `S (I ⊗ coin)`; the window grows by a site on each side.
    pub fn step(&self, coin: &Matrix4) -> WalkState {
        let n = self.amplitudes.len();
        let mut next = vec![[ZERO; 4]; n + 2];
        // old index i is position offset + i; new index is position - (offset - 1)
        for (i, psi) in self.amplitudes.iter().enumerate() {
            let phi = coin.apply(psi);
            next[i + 2][0] = phi[0];
            next[i + 1][1] = phi[1];
            next[i + 1][2] = phi[2];
            next[i][3] = phi[3];
        }
        WalkState {
            t: self.t + 1,
            offset: self.offset - 1,
            amplitudes: next,
        }
    }

    pub fn distribution(&self) -> PositionDistribution {
        position_distribution(self)
    }
}

/// Applies `step` `steps` times.
pub fn evolve_state(state: &WalkState, coin: &Matrix4, steps: usize) -> WalkState {
    let mut current = state.clone();
    for _ in 0..steps {
        current = current.step(coin);
    }
    current
}

/// `U^t` applied to the walker launched from the origin in `initial`.
pub fn evolve(initial: &InitialCoinState, coin: &CoinParameters, t: usize) -> WalkState {
    evolve_state(
        &WalkState::at_origin(*initial.alpha()),
        &build_coin_operator(coin),
        t,
    )
}

/// `p_t(x)` over the stored window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionDistribution {
    t: usize,
    offset: i64,
    probabilities: Vec<f64>,
}

impl PositionDistribution {
    pub fn from_parts(t: usize, offset: i64, probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidArgument("empty distribution".into()));
        }
        if let Some(p) = probabilities
            .iter()
            .find(|p| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::InvalidArgument(format!("invalid probability {p}")));
        }
        Ok(Self {
            t,
            offset,
            probabilities,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn support(&self) -> RangeInclusive<i64> {
        self.offset..=self.offset + self.probabilities.len() as i64 - 1
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, x: i64) -> f64 {
        let i = x - self.offset;
        if i < 0 || i >= self.probabilities.len() as i64 {
            0.0
        } else {
            self.probabilities[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

pub fn position_distribution(state: &WalkState) -> PositionDistribution {
    PositionDistribution {
        t: state.t,
        offset: state.offset,
        probabilities: state.amplitudes.iter().map(norm_sqr).collect(),
    }
}

/// `sum_x x^r p_t(x)`.
pub fn empirical_moment(dist: &PositionDistribution, r: u32) -> f64 {
    dist.iter()
        .map(|(x, p)| {
            if r == 0 {
                p
            } else {
                (x as f64).powi(r as i32) * p
            }
        })
        .sum()
}
