//! Parsers for the numeric literals accepted on the command line.

use std::f64::consts::PI;

use num_complex::Complex64;
use qwalk2c_core::{InitialCoinState, Spinor};

use crate::error::CliError;

/// Inputs whose norm is this close to one are renormalized without asking;
/// it covers four-decimal literals such as `0.7071`.
pub const AUTO_RENORMALIZE: f64 = 1e-3;

/// Parses an angle: a plain number (`0.5`, `1e-1`) or a multiple of pi
/// (`pi/4`, `3pi/8`, `3*pi/8`, `0.25pi`, `π/3`).
pub fn parse_beta(text: &str) -> Result<f64, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Config(format!("cannot parse angle {text:?}; try 0.785 or pi/4"));
    let lower = s.to_ascii_lowercase();
    let pi_at = lower
        .find("pi")
        .map(|i| (i, 2))
        .or_else(|| s.find('π').map(|i| (i, 'π'.len_utf8())));
    let value = match pi_at {
        None => s.parse::<f64>().map_err(|_| bad())?,
        Some((i, len)) => {
            let coef = s[..i].trim_end_matches('*');
            let coef = match coef {
                "" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = &s[i + len..];
            let denom = match rest.strip_prefix('/') {
                None if rest.is_empty() => 1.0,
                None => return Err(bad()),
                Some(d) => d.parse::<f64>().map_err(|_| bad())?,
            };
            coef * PI / denom
        }
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// Parses `re`, `re+imi`, `re-imi`, `imi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || {
        CliError::Config(format!(
            "cannot parse complex number {text:?}; expected re[+im i]"
        ))
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("0", body),
    };
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse().map_err(|_| bad())?,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Parses four comma-separated complex literals.
pub fn parse_alpha(text: &str) -> Result<Spinor, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Config(format!(
            "alpha needs four comma-separated components, got {}",
            parts.len()
        )));
    }
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_complex(p)?;
    }
    Ok(out)
}

pub fn preset(name: &str) -> Result<InitialCoinState, CliError> {
    match name {
        "bell" => Ok(InitialCoinState::bell()),
        "nonloc" => Ok(InitialCoinState::nonlocalizing()),
        _ => Err(CliError::Config(format!(
            "unknown preset {name:?}; choose bell or nonloc"
        ))),
    }
}

/// Builds the initial state, renormalizing inputs within
/// [`AUTO_RENORMALIZE`] of unit norm, or any nonzero input when `force` is set.
pub fn initial_state(alpha: Spinor, force: bool) -> Result<InitialCoinState, CliError> {
    let norm = alpha.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if let Ok(state) = InitialCoinState::new(alpha) {
        return Ok(state);
    }
    if norm > 0.0 && (force || (norm - 1.0).abs() <= AUTO_RENORMALIZE) {
        return InitialCoinState::normalized(alpha).map_err(|e| CliError::Config(e.to_string()));
    }
    Err(CliError::Config(format!(
        "alpha has norm {norm:.6}, expected 1; pass --renormalize to rescale it"
    )))
}
