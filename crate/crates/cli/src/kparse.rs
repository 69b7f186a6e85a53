//! Parsing of quasimomenta given as comma-separated multiples of π.

use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use boundstate_core::Momentum;

/// Parses one angle: a plain float, or `[±][c][*]pi[/d]` such as `pi`,
/// `-pi/2`, `3pi/4`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.to_ascii_lowercase();
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().with_context(|| format!("invalid angle `{s}`"));
    };
    let (head, tail) = (&t[..at], &t[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().with_context(|| format!("invalid coefficient in `{s}`"))?,
    };
    let denom = match tail {
        "" => 1.0,
        d => {
            let Some(d) = d.strip_prefix('/') else { bail!("invalid angle `{s}`") };
            d.parse::<f64>().with_context(|| format!("invalid denominator in `{s}`"))?
        }
    };
    if denom == 0.0 {
        bail!("zero denominator in `{s}`");
    }
    if coef == 1.0 && denom == 1.0 {
        return Ok(PI);
    }
    if coef == -1.0 && denom == 1.0 {
        return Ok(-PI);
    }
    Ok(coef * PI / denom)
}

/// Parses `k1,k2` into a reduced quasimomentum.
pub fn parse_momentum(s: &str) -> Result<Momentum> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        bail!("quasimomentum must be `k1,k2`, got `{s}`");
    }
    let k1 = parse_angle(parts[0])?;
    let k2 = parse_angle(parts[1])?;
    if !(k1.is_finite() && k2.is_finite()) {
        bail!("non-finite quasimomentum `{s}`");
    }
    Ok(Momentum::new(k1, k2))
}

/// Value parser for clap.
pub fn momentum_arg(s: &str) -> Result<Momentum, String> {
    parse_momentum(s).map_err(|e| format!("{e:#}"))
}
