//! Parsers for the textual operation, state and basis arguments.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64 as C64;
use qos3_core::channels::{BasisParams, PresetCase};
use qos3_core::classify::{sample_family, sample_member, FamilyId, FamilyParams};
use qos3_core::protocol::BasisChoice;
use qos3_core::qutrit::{Operator, Unitary};
use qos3_core::random::{random_qutrit_coeffs, random_unitary};
use rand::Rng;

/// Parses `re`, `imi`, `re+imi` or `re-imi` (`i` alone means `1i`).
pub fn parse_complex(token: &str) -> Result<C64> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        bail!("empty complex number");
    }
    let bad = || anyhow!("cannot parse `{token}` as a complex number (expected re+imi)");
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

fn parse_list(s: &str) -> Result<Vec<C64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_complex)
        .collect()
}

/// Operation spec:
/// `random`, `identity`, `family:<id>[:μ1,μ2,…]`, `matrix:<9 entries>` or
/// the 9 row-major entries alone. A family without angles draws a random
/// member from `rng`.
pub fn parse_operation<R: Rng + ?Sized>(spec: &str, rng: &mut R) -> Result<Unitary> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("random") {
        return Ok(random_unitary(rng));
    }
    if spec.eq_ignore_ascii_case("identity") {
        return Ok(Unitary::identity(3));
    }
    if let Some(rest) = spec.strip_prefix("family:") {
        let (name, angles) = match rest.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (rest, None),
        };
        let family: FamilyId = name.parse()?;
        return match angles {
            None => Ok(sample_member(family, rng)),
            Some(a) => {
                let mu = a
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<f64>()
                            .with_context(|| format!("bad angle `{x}`"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(sample_family(family, &FamilyParams::new(mu))?)
            }
        };
    }
    let body = spec.strip_prefix("matrix:").unwrap_or(spec);
    Ok(Unitary::new(parse_matrix(body)?)?)
}

/// Nine row-major complex entries separated by commas or whitespace.
pub fn parse_matrix(body: &str) -> Result<Operator> {
    let entries = parse_list(body)?;
    if entries.len() != 9 {
        bail!("a 3x3 matrix needs 9 entries, got {}", entries.len());
    }
    Ok(Operator::from_rows(3, &entries)?)
}

/// Input state spec: `random` or three amplitudes `α,β,γ`. Amplitudes are
/// rescaled to unit norm.
pub fn parse_state<R: Rng + ?Sized>(spec: &str, rng: &mut R) -> Result<[C64; 3]> {
    if spec.trim().eq_ignore_ascii_case("random") {
        return Ok(random_qutrit_coeffs(rng));
    }
    let v = parse_list(spec)?;
    let [a, b, c]: [C64; 3] = v
        .try_into()
        .map_err(|v: Vec<C64>| anyhow!("a qutrit state needs 3 amplitudes, got {}", v.len()))?;
    let norm = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr()).sqrt();
    if !norm.is_finite() || norm < 1e-12 {
        bail!("state amplitudes must be finite and not all zero");
    }
    Ok([a / norm, b / norm, c / norm])
}

/// Basis spec: a preset name (`c1` … `c4b`) or `x1,y1[,τ1,τ2]` with complex
/// `x1`, `y1` and real phases defaulting to zero.
pub fn parse_basis(spec: &str) -> Result<BasisChoice> {
    if let Ok(case) = spec.trim().parse::<PresetCase>() {
        return Ok(BasisChoice::Preset(case));
    }
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 && parts.len() != 4 {
        bail!("basis must be a preset (c1, c2, c3, c4a, c4b) or x1,y1[,tau1,tau2]");
    }
    let x1 = parse_complex(parts[0])?;
    let y1 = parse_complex(parts[1])?;
    let (t1, t2) = if parts.len() == 4 {
        (parts[2].parse::<f64>()?, parts[3].parse::<f64>()?)
    } else {
        (0.0, 0.0)
    };
    Ok(BasisChoice::Params(BasisParams::new(x1, y1, t1, t2)?))
}
