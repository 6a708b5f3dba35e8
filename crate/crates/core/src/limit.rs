//! Closed-form limit laws.
//!
//! * [`limit_density`]: weak limit of `X_t / t`, an atom `c00` at the origin
//!   plus an absolutely continuous part on `(-cos b, cos b)`.
//! * [`stationary_law`]: `p(x) = lim p_t(x)`, geometric in `|x|`.
//! * [`stationary_amplitudes`]: the same stationary law from the contour
//!   integral constants `z1, z2, b_i, c_i`, kept as an independent route.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{norm_sqr, Spinor, C64, ZERO};
use crate::quadrature::{integrate, QuadSpec};
use crate::spectral::{branch_weight, localized_mass, Branch};
use crate::walk::{CoinParameters, InitialCoinState};

/// `Re(a conj(b))`.
fn re_cross(a: C64, b: C64) -> f64 {
    (a * b.conj()).re
}

/// Weak-limit law of `X_t / t`:
/// `f(y) = c00 δ0(y) + tan b 1{|y| < cos b} (c0 + c1 y + c2 y^2) / (pi (1 - y^2) sqrt(1 - y^2 sec^2 b))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDensity {
    pub c00: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub beta: f64,
    pub support_bound: f64,
}

impl LimitDensity {
    fn polynomial(&self, y: f64) -> f64 {
        self.c0 + y * (self.c1 + y * self.c2)
    }

    /// Absolutely continuous density in the angle `y = cos b sin(theta)`; smooth
    /// on `[-pi/2, pi/2]`.
    fn angular_density(&self, theta: f64) -> f64 {
        let (sb, cb) = self.beta.sin_cos();
        let st = theta.sin();
        let y = cb * st;
        sb * self.polynomial(y) / (PI * (1.0 - cb * cb * st * st))
    }

    /// `∫ y^r` of the continuous part.
    fn ac_moment(&self, r: u32, quad: &QuadSpec) -> Result<f64> {
        let cb = self.support_bound;
        integrate(
            |theta: f64| {
                let y = cb * theta.sin();
                let yr = if r == 0 { 1.0 } else { y.powi(r as i32) };
                yr * self.angular_density(theta)
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            quad,
        )
    }

    pub fn ac_mass(&self, quad: &QuadSpec) -> Result<f64> {
        self.ac_moment(0, quad)
    }

    /// `∫ y^r dF(y)`, atom included.
    pub fn moment(&self, r: u32, quad: &QuadSpec) -> Result<f64> {
        let atom = if r == 0 { self.c00 } else { 0.0 };
        Ok(atom + self.ac_moment(r, quad)?)
    }

    fn ac_cdf(&self, y: f64, quad: &QuadSpec) -> Result<f64> {
        let cb = self.support_bound;
        if y <= -cb {
            return Ok(0.0);
        }
        let upper = if y >= cb { FRAC_PI_2 } else { (y / cb).asin() };
        integrate(
            |theta: f64| self.angular_density(theta),
            -FRAC_PI_2,
            upper,
            quad,
        )
    }
}

/// Coefficients `c00, c0, c1, c2` of the weak-limit law.
pub fn limit_density(coin: &CoinParameters, initial: &InitialCoinState) -> LimitDensity {
    let beta = coin.beta();
    let (s, c) = beta.sin_cos();
    let t = s / c;
    let [a1, a2, a3, a4] = *initial.alpha();
    let mid = a2.norm_sqr() + a3.norm_sqr();
    let r14 = re_cross(a1, a4);
    let r23 = re_cross(a2, a3);
    let mixed_minus = re_cross(a1, a2) + re_cross(a1, a3) - re_cross(a2, a4) - re_cross(a3, a4);
    let mixed_plus = re_cross(a1, a2) + re_cross(a1, a3) + re_cross(a2, a4) + re_cross(a3, a4);
    let root_gap = 1.0 / s.sqrt() - s.sqrt();

    let c00 =
        s / 2.0 - (s - 1.0) * mid + t * t * root_gap * root_gap * r14 + (s - 1.0) * t * mixed_minus
            - s * r23;
    let c2 = 0.5 - mid - r23 + (2.0 * t * t + 1.0) * r14 + t * mixed_minus;
    let c1 = a1.norm_sqr() - a4.norm_sqr() + t * mixed_plus;
    let c0 = 0.5 + r23 - r14;

    LimitDensity {
        c00,
        c0,
        c1,
        c2,
        beta,
        support_bound: c,
    }
}

/// Continuous part of the limit density at `y`. Zero outside the support and
/// `+inf` exactly at `y = ±cos b`, where the density has an integrable
/// singularity.
pub fn density_at(d: &LimitDensity, y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    let cb = d.support_bound;
    if y.abs() == cb {
        return f64::INFINITY;
    }
    if y.abs() > cb {
        return 0.0;
    }
    let (sb, _) = d.beta.sin_cos();
    let tb = sb / cb;
    let inside = 1.0 - y * y / (cb * cb);
    tb * d.polynomial(y) / (PI * (1.0 - y * y) * inside.sqrt())
}

/// Right-continuous CDF `F(y) = c00 H(y) + ∫_{-cos b}^y f_ac`.
pub fn limit_cdf(d: &LimitDensity, y: f64, quad: &QuadSpec) -> Result<f64> {
    let atom = if y >= 0.0 { d.c00 } else { 0.0 };
    Ok(atom + d.ac_cdf(y, quad)?)
}

/// Left limit `F(y^-)`; differs from [`limit_cdf`] only at `y = 0`.
pub fn limit_cdf_left(d: &LimitDensity, y: f64, quad: &QuadSpec) -> Result<f64> {
    let atom = if y > 0.0 { d.c00 } else { 0.0 };
    Ok(atom + d.ac_cdf(y, quad)?)
}

/// `P(Y <= y)` evaluated in momentum space, without the closed-form coefficients:
/// branch 1 contributes where `h(k,1) <= y`, branch 4 where `-h(k,1) <= y`, and
/// branches 2, 3 sit at `y = 0`.
pub fn spectral_cdf(
    coin: &CoinParameters,
    initial: &InitialCoinState,
    y: f64,
    quad: &QuadSpec,
) -> Result<f64> {
    let beta = coin.beta();
    let cb = beta.cos();
    let u = if y.abs() >= cb {
        y.signum()
    } else {
        beta.tan() * y / (1.0 - y * y).sqrt()
    }
    .clamp(-1.0, 1.0);
    let k1 = 2.0 * u.acos();
    let k4 = 2.0 * (-u).acos();
    let mut total = branch_weight(Branch::One, k1, TAU, coin, initial, quad)?;
    total += branch_weight(Branch::Four, 0.0, k4, coin, initial, quad)?;
    if y >= 0.0 {
        total += localized_mass(coin, initial, quad)?;
    }
    Ok(total)
}

/// `p(0)`, tail prefactors and ratio `r = (1 - sin b)^4 sec^4 b`;
/// `p(x) = J+ r^x` for `x >= 1` and `J- r^{-x}` for `x <= -1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryLaw {
    pub p0: f64,
    pub j_plus: f64,
    pub j_minus: f64,
    pub ratio: f64,
}

impl StationaryLaw {
    pub fn probability(&self, x: i64) -> f64 {
        match x {
            0 => self.p0,
            x if x > 0 => self.j_plus * self.ratio.powi(x as i32),
            x => self.j_minus * self.ratio.powi((-x) as i32),
        }
    }

    /// `sum_x p(x) = p0 + (J+ + J-) r / (1 - r)`.
    pub fn total_mass(&self) -> f64 {
        self.p0 + (self.j_plus + self.j_minus) * self.ratio / (1.0 - self.ratio)
    }
}

pub fn stationary_law(coin: &CoinParameters, initial: &InitialCoinState) -> StationaryLaw {
    let (s, c) = coin.beta().sin_cos();
    let t = s / c;
    let sec = 1.0 / c;
    let [a1, a2, a3, a4] = *initial.alpha();
    let n1 = a1.norm_sqr();
    let n4 = a4.norm_sqr();
    let mid = a2.norm_sqr() + a3.norm_sqr();
    let r12_13 = re_cross(a1, a2) + re_cross(a1, a3);
    let r24_34 = re_cross(a2, a4) + re_cross(a3, a4);
    let r14_23 = re_cross(a1, a4) + re_cross(a2, a3);
    let (down, up) = (1.0 - s, 1.0 + s);

    let p0 = t * t * sec * sec * down * down * (n1 + n4)
        + sec * sec * down * mid
        + t * sec * sec * down * down * (r24_34 - r12_13)
        - 2.0 * t * sec * down * re_cross(a2, a3);

    // The walk moves 00 to the right, so the prefactor built around
    // (1 - sin b)^2 |alpha_1|^2 governs x >= 1 and the one around
    // (1 + sin b)^2 |alpha_1|^2 governs x <= -1.
    let j_plus = t
        * t
        * (sec * sec * down * down * n1
            + mid
            + sec * sec * up * up * n4
            + 2.0 * sec * down * r12_13
            + 2.0 * r14_23
            + 2.0 * sec * up * r24_34);
    let j_minus = t
        * t
        * (sec * sec * up * up * n1 + mid + sec * sec * down * down * n4 - 2.0 * sec * up * r12_13
            + 2.0 * r14_23
            - 2.0 * sec * down * r24_34);

    StationaryLaw {
        p0,
        j_plus,
        j_minus,
        ratio: down.powi(4) * sec.powi(4),
    }
}

/// Residue constants of the stationary-phase integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryAmplitudes {
    pub b: Spinor,
    pub c: Spinor,
    pub z1: f64,
    pub z2: f64,
    /// Extra term in the `x = 0` amplitude.
    pub origin_shift: Spinor,
}

impl StationaryAmplitudes {
    /// Limiting amplitude `(-1)^t psi_t(x)` as `t -> ∞`.
    pub fn amplitude(&self, x: i64) -> Spinor {
        let (z1, z2) = (self.z1, self.z2);
        let gap = z1 - z2;
        std::array::from_fn(|i| match x {
            0 => self.origin_shift[i] + (self.c[i] * z1 + self.b[i]) / gap,
            x if x > 0 => (self.b[i] * z1 + self.c[i]) / gap * z1.powi((x - 1) as i32),
            x => (self.b[i] * z2 + self.c[i]) / gap * z2.powi((x - 1) as i32),
        })
    }

    pub fn probability(&self, x: i64) -> f64 {
        norm_sqr(&self.amplitude(x))
    }
}

pub fn stationary_amplitudes(
    coin: &CoinParameters,
    initial: &InitialCoinState,
) -> StationaryAmplitudes {
    let (s, c) = coin.beta().sin_cos();
    let t = s / c;
    let (t2, t3, t4) = (t * t, t * t * t, t * t * t * t);
    let sec2 = 1.0 / (c * c);
    let [a1, a2, a3, a4] = *initial.alpha();
    let mid = a2 + a3;
    let outer = a1 + a4;

    let b_mid = outer * t - mid * (2.0 * t2) + a1 * (4.0 * t3);
    let b = [
        -mid * t + a1 * (2.0 * t2),
        b_mid,
        b_mid,
        -mid * t + (a1 * 4.0 + a4 * 2.0) * t2 - mid * (4.0 * t3) + a1 * (8.0 * t4),
    ];
    let c_vec = [
        -mid * t - a4 * (2.0 * t2),
        outer * t,
        outer * t,
        -mid * t + a1 * (2.0 * t2),
    ];
    let origin_shift = [ZERO, a2 - a1 * t, a3 - a1 * t, mid * t - a1 * (2.0 * t2)];
    StationaryAmplitudes {
        b,
        c: c_vec,
        z1: -(1.0 - s) * (1.0 - s) * sec2,
        z2: -(1.0 + s) * (1.0 + s) * sec2,
        origin_shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, SQRT_2};

    fn pi4() -> CoinParameters {
        CoinParameters::new(FRAC_PI_4).unwrap()
    }

    /// Antiderivative of the continuous part in the angle variable
    /// `y = cos b sin(theta)`.
    fn closed_cdf(d: &LimitDensity, y: f64) -> f64 {
        let (sb, cb) = d.beta.sin_cos();
        let th = (y / cb).clamp(-1.0, 1.0).asin();
        let base = (sb * th.tan()).atan() / PI + 0.5;
        let base = if th >= FRAC_PI_2 { 1.0 } else { base };
        let odd = -(cb * th.cos() / sb).atan() / PI;
        d.c0 * base + d.c1 * odd + d.c2 * (base - sb * (th + FRAC_PI_2) / PI)
    }

    #[test]
    fn bell_coefficients() {
        let d = limit_density(&pi4(), &InitialCoinState::bell());
        assert!((d.c00 - (SQRT_2 - 1.0)).abs() < 1e-12);
        assert!(d.c0.abs() < 1e-15);
        assert!(d.c1.abs() < 1e-15);
        assert!((d.c2 - 2.0).abs() < 1e-12);
        let expected = 2.0 * 0.25 / (PI * 0.75 * 0.5_f64.sqrt());
        assert!((density_at(&d, 0.5) - expected).abs() < 1e-12);
        assert!((expected - 0.30010543871903).abs() < 1e-12);
    }

    #[test]
    fn nonlocalizing_has_no_atom() {
        let d = limit_density(&pi4(), &InitialCoinState::nonlocalizing());
        assert!(d.c00.abs() < 1e-12);
        let law = stationary_law(&pi4(), &InitialCoinState::nonlocalizing());
        assert!(law.p0.abs() < 1e-12 && law.j_plus.abs() < 1e-12 && law.j_minus.abs() < 1e-12);
    }

    #[test]
    fn density_edges() {
        let d = limit_density(&pi4(), &InitialCoinState::bell());
        let cb = FRAC_PI_4.cos();
        assert_eq!(density_at(&d, cb), f64::INFINITY);
        assert_eq!(density_at(&d, -cb), f64::INFINITY);
        assert_eq!(density_at(&d, 0.9), 0.0);
        assert!(density_at(&d, f64::NAN).is_nan());
    }

    #[test]
    fn cdf_matches_antiderivative() {
        let q = QuadSpec::default();
        let coin = CoinParameters::new(0.55).unwrap();
        let init = InitialCoinState::normalized([
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.5),
            C64::new(0.7, 0.0),
            C64::new(0.1, -0.4),
        ])
        .unwrap();
        let d = limit_density(&coin, &init);
        let total = d.c00 + d.c0 + d.c2 * (1.0 - coin.beta().sin());
        assert!((total - 1.0).abs() < 1e-12);
        for i in 0..=20 {
            let y = -0.95 + 0.095 * i as f64;
            let atom = if y >= 0.0 { d.c00 } else { 0.0 };
            let f = limit_cdf(&d, y, &q).unwrap();
            assert!((f - atom - closed_cdf(&d, y)).abs() < 1e-10, "y={y}");
        }
    }

    #[test]
    fn bell_cdf_jump_at_origin() {
        let q = QuadSpec::default();
        let d = limit_density(&pi4(), &InitialCoinState::bell());
        let left = limit_cdf_left(&d, 0.0, &q).unwrap();
        let right = limit_cdf(&d, 0.0, &q).unwrap();
        assert!((right - left - (SQRT_2 - 1.0)).abs() < 1e-12);
        assert!((left - (1.0 - d.c00) / 2.0).abs() < 1e-10);
        assert!((limit_cdf(&d, 1.0, &q).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(limit_cdf(&d, -1.0, &q).unwrap(), 0.0);
    }

    #[test]
    fn spectral_cdf_agrees() {
        let q = QuadSpec::default();
        let coin = CoinParameters::new(FRAC_PI_3).unwrap();
        for init in [InitialCoinState::bell(), InitialCoinState::basis(0)] {
            let d = limit_density(&coin, &init);
            for y in [-0.45, -0.2, 0.0, 0.13, 0.4, 0.6] {
                let a = limit_cdf(&d, y, &q).unwrap();
                let b = spectral_cdf(&coin, &init, y, &q).unwrap();
                assert!((a - b).abs() < 1e-8, "y={y}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bell_stationary_law() {
        let law = stationary_law(&pi4(), &InitialCoinState::bell());
        assert!((law.p0 - (3.0 - 2.0 * SQRT_2)).abs() < 1e-12);
        assert!((law.j_plus - 4.0).abs() < 1e-12);
        assert!((law.j_minus - 4.0).abs() < 1e-12);
        assert!((law.ratio - 0.0294372515228594).abs() < 1e-14);
        assert!((law.probability(1) - 0.117749006091438).abs() < 1e-12);
        assert!((law.total_mass() - (SQRT_2 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn residue_roots() {
        let a = stationary_amplitudes(&pi4(), &InitialCoinState::bell());
        assert!((a.z1 + 0.171572875253810).abs() < 1e-12);
        assert!((a.z2 + 5.82842712474619).abs() < 1e-12);
        assert!((a.z1 * a.z2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_route_matches_closed_law() {
        let coin = CoinParameters::new(FRAC_PI_3).unwrap();
        let init = InitialCoinState::basis(0);
        let law = stationary_law(&coin, &init);
        let amps = stationary_amplitudes(&coin, &init);
        for x in -6..=6 {
            assert!(
                (law.probability(x) - amps.probability(x)).abs() < 1e-12,
                "x={x}"
            );
        }
        // Localization is lopsided: the 00 component is pushed right.
        assert!(law.j_plus != law.j_minus);
    }
}
