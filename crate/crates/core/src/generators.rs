//! Inline generator syntax for reproducible experiments.
//!
//! Sequences: `poly:c` (`a_j = (j+1)^c`), `geom:r` (`a_j = r^j`),
//! `subadd:c,d` (`a_j = exp(c j + d sqrt(j))`). Shift weights:
//! `harmonic:a,b` (`alpha_j = a + b/j`), `const:c`, `geom:r`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fekete::PrefixSequence;
use crate::shift::WeightedShift;

fn split_spec<'a>(spec: &'a str, expect: &[&str]) -> Result<(&'a str, Vec<f64>)> {
    let (name, args) = spec
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("generator {spec:?} must look like name:args")))?;
    let args = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidInput(format!("bad generator argument {a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !expect.contains(&name) {
        return Err(Error::InvalidInput(format!(
            "unknown generator {name:?}; expected one of {}",
            expect.join(", ")
        )));
    }
    Ok((name, args))
}

fn arity(name: &str, args: &[f64], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidInput(format!(
            "{name} takes {n} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

/// Closed-form submultiplicative sequences, all with `a_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceGen {
    /// `(j+1)^c`, `c >= 0`; limit 1.
    Poly(f64),
    /// `r^j`, `r >= 0`; limit `r`.
    Geom(f64),
    /// `exp(c j + d sqrt(j))`, `d >= 0`; limit `e^c`.
    Subadd { c: f64, d: f64 },
}

impl SequenceGen {
    /// `a_1..a_n`, flagged with `a_0 = 1`. Fails if a term overflows.
    pub fn materialize(&self, n: usize) -> Result<PrefixSequence> {
        let values = (1..=n)
            .map(|j| {
                let j = j as f64;
                match *self {
                    SequenceGen::Poly(c) => (j + 1.0).powf(c),
                    SequenceGen::Geom(r) => r.powf(j),
                    SequenceGen::Subadd { c, d } => (c * j + d * j.sqrt()).exp(),
                }
            })
            .collect::<Vec<f64>>();
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("{self} overflows at j = {}", j + 1)));
        }
        PrefixSequence::with_unit_head(values)
    }

    /// `lim a_j^{1/j}`.
    pub fn limit(&self) -> f64 {
        match *self {
            SequenceGen::Poly(_) => 1.0,
            SequenceGen::Geom(r) => r,
            SequenceGen::Subadd { c, .. } => c.exp(),
        }
    }
}

impl FromStr for SequenceGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_spec(s, &["poly", "geom", "subadd"])?;
        let g = match name {
            "poly" => {
                arity(name, &args, 1)?;
                SequenceGen::Poly(args[0])
            }
            "geom" => {
                arity(name, &args, 1)?;
                SequenceGen::Geom(args[0])
            }
            _ => {
                arity(name, &args, 2)?;
                SequenceGen::Subadd { c: args[0], d: args[1] }
            }
        };
        match g {
            SequenceGen::Poly(c) if c < 0.0 => Err(Error::InvalidInput("poly exponent must be >= 0".into())),
            SequenceGen::Geom(r) if r < 0.0 => Err(Error::InvalidInput("geom ratio must be >= 0".into())),
            SequenceGen::Subadd { d, .. } if d < 0.0 => Err(Error::InvalidInput("subadd d must be >= 0".into())),
            g => Ok(g),
        }
    }
}

impl fmt::Display for SequenceGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceGen::Poly(c) => write!(f, "poly:{c}"),
            SequenceGen::Geom(r) => write!(f, "geom:{r}"),
            SequenceGen::Subadd { c, d } => write!(f, "subadd:{c},{d}"),
        }
    }
}

/// Closed-form nonincreasing weight families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightGen {
    Harmonic { a: f64, b: f64 },
    Const(f64),
    Geom(f64),
}

impl WeightGen {
    pub fn materialize(&self, m: usize) -> Result<WeightedShift> {
        match *self {
            WeightGen::Harmonic { a, b } => WeightedShift::harmonic(a, b, m),
            WeightGen::Const(c) => WeightedShift::constant(c, m),
            WeightGen::Geom(r) => WeightedShift::geometric(r, m),
        }
    }
}

impl FromStr for WeightGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_spec(s, &["harmonic", "const", "geom"])?;
        match name {
            "harmonic" => {
                arity(name, &args, 2)?;
                Ok(WeightGen::Harmonic { a: args[0], b: args[1] })
            }
            "const" => {
                arity(name, &args, 1)?;
                Ok(WeightGen::Const(args[0]))
            }
            _ => {
                arity(name, &args, 1)?;
                Ok(WeightGen::Geom(args[0]))
            }
        }
    }
}
