//! Graph sources for the command line: generator specs and time expressions.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use qwalk_core::graph::{self, Graph, GRAPH6_MAX_ORDER};

/// Named graph families that `--gen` and `generate` can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Hypercube,
    /// Cartesian powers of `P3`.
    P3Power,
    /// Cartesian powers of `P2`, i.e. hypercubes.
    P2Power,
}

impl FromStr for Family {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "path" | "p" => Family::Path,
            "cycle" | "c" => Family::Cycle,
            "complete" | "k" => Family::Complete,
            "star" | "s" => Family::Star,
            "hypercube" | "q" => Family::Hypercube,
            "p3power" => Family::P3Power,
            "p2power" => Family::P2Power,
            other => bail!("unknown graph family {other:?}"),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Hypercube => "hypercube",
            Family::P3Power => "p3power",
            Family::P2Power => "p2power",
        })
    }
}

impl Family {
    pub fn build(self, k: usize) -> Result<Graph> {
        const MAX_ORDER: usize = 1 << 12;
        let g = match self {
            Family::Path => graph::path(k)?,
            Family::Cycle => graph::cycle(k)?,
            Family::Complete if k <= MAX_ORDER => graph::complete(k)?,
            Family::Star => graph::star(k)?,
            Family::Hypercube | Family::P2Power if k <= 12 => graph::hypercube(k)?,
            Family::P3Power if k <= 7 => graph::cartesian_power(&graph::path(3)?, k)?,
            _ => bail!("parameter {k} out of range for {self}"),
        };
        Ok(g)
    }
}

/// Parses a generator spec: `name:k` (e.g. `p3power:2`, `star:3`) or a
/// short form `p3`, `c4`, `k5`, `s3` (the star K_{1,3}), `q3` (3-cube).
pub fn parse_generator(spec: &str) -> Result<Graph> {
    let (name, param) = match spec.split_once(':') {
        Some((name, param)) => (name, param),
        None => {
            let split = spec
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(|| anyhow!("generator {spec:?} has no size parameter"))?;
            spec.split_at(split)
        }
    };
    let family: Family = name.parse()?;
    let k: usize = param
        .parse()
        .with_context(|| format!("bad size parameter in generator {spec:?}"))?;
    family.build(k)
}

/// Evaluates a time such as `3.5`, `pi`, `pi/2`, `2*pi`, `pi*sqrt(2)`.
/// Factors are numbers, `pi` or `sqrt(x)`, joined left to right by `*`
/// and `/`.
pub fn parse_time(expr: &str) -> Result<f64> {
    let expr: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if expr.is_empty() {
        bail!("empty time expression");
    }
    let mut value = 1.0;
    let mut op = '*';
    let mut rest = expr.as_str();
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = parse_factor(&rest[..end])
            .with_context(|| format!("in time expression {expr:?}"))?;
        value = if op == '*' { value * factor } else { value / factor };
        if end == rest.len() {
            break;
        }
        op = rest.as_bytes()[end] as char;
        rest = &rest[end + 1..];
    }
    if !value.is_finite() {
        bail!("time expression {expr:?} is not finite");
    }
    Ok(value)
}

fn parse_factor(s: &str) -> Result<f64> {
    let lower = s.to_ascii_lowercase();
    if lower == "pi" || lower == "π" {
        return Ok(std::f64::consts::PI);
    }
    if let Some(inner) = lower.strip_prefix("sqrt(").and_then(|x| x.strip_suffix(')')) {
        return Ok(inner.parse::<f64>()?.sqrt());
    }
    s.parse::<f64>()
        .map_err(|_| anyhow!("cannot parse factor {s:?}"))
}

pub fn fits_graph6(g: &Graph) -> bool {
    !g.is_weighted() && g.order() <= GRAPH6_MAX_ORDER
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn generators() {
        assert_eq!(parse_generator("p3").unwrap(), graph::path(3).unwrap());
        assert_eq!(parse_generator("path:4").unwrap(), graph::path(4).unwrap());
        assert_eq!(parse_generator("s3").unwrap().order(), 4);
        assert_eq!(parse_generator("q3").unwrap().size(), 12);
        assert_eq!(parse_generator("p3power:2").unwrap().size(), 12);
        assert_eq!(parse_generator("c4").unwrap().size(), 4);
        assert_eq!(parse_generator("k4").unwrap().size(), 6);
        assert!(parse_generator("p").is_err());
        assert!(parse_generator("x3").is_err());
        assert!(parse_generator("c2").is_err());
        assert!(parse_generator("p3power:0").is_err());
        assert!(parse_generator("p3power:9").is_err());
    }

    #[test]
    fn times() {
        assert_eq!(parse_time("1.5").unwrap(), 1.5);
        assert_eq!(parse_time("pi").unwrap(), PI);
        assert_eq!(parse_time("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_time("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_time("pi * sqrt(2)").unwrap(), PI * 2f64.sqrt());
        assert_eq!(parse_time("pi/sqrt(3)").unwrap(), PI / 3f64.sqrt());
        assert!(parse_time("").is_err());
        assert!(parse_time("pie").is_err());
        assert!(parse_time("1/0").is_err());
    }
}
