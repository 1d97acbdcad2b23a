//! Text formats: CSV and JSON readers and writers for sequences, weights,
//! matrices and Wiener elements.
//!
//! Every float is written with 17 significant digits, trailing zeros
//! trimmed, so output round-trips exactly.

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fekete::PrefixSequence;
use crate::matrix::{DenseMatrix, NormKind};
use crate::wiener::WienerElement;

/// JSON has no infinities; they are written as `null`.
pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        fmt_f64(x)
    } else {
        "null".to_string()
    }
}

/// `%.17g`-style formatting. Zero of either sign prints as `0`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mant = trim_fraction(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `re+imj` / `re-imj`, always with both parts.
pub fn fmt_complex(z: Complex64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 || (im == 0.0 && im.is_sign_negative()) {
        format!("{}-{}j", fmt_f64(z.re), fmt_f64(-im))
    } else {
        format!("{}+{}j", fmt_f64(z.re), fmt_f64(im))
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    // Rust accepts "inf" and "nan"; only finite decimal literals are data.
    if s.is_empty() || s.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses `1.5`, `-2j`, `j`, `1+2j`, `3e-2-4.5e1i` and similar.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return parse_real(t).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let re = parse_real(re_part).ok_or_else(bad)?;
    let im = match im_part.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads `index,value` rows under an exact header, indices `1, 2, ...`.
fn parse_indexed_csv(text: &str, header: &str) -> Result<Vec<f64>> {
    let mut lines = data_lines(text);
    match lines.next() {
        Some((_, h)) if h.replace(' ', "") == header => {}
        Some((n, h)) => return Err(Error::parse(n, format!("expected header {header:?}, found {h:?}"))),
        None => return Err(Error::parse(1, format!("missing header {header:?}"))),
    }
    let mut out = Vec::new();
    for (n, line) in lines {
        let (idx, val) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(n, "expected two comma-separated fields"))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(n, format!("bad index {idx:?}")))?;
        if idx != out.len() + 1 {
            return Err(Error::parse(
                n,
                format!("index {idx} out of order, expected {}", out.len() + 1),
            ));
        }
        let v = parse_real(val).ok_or_else(|| Error::parse(n, format!("bad value {val:?}")))?;
        out.push(v);
    }
    Ok(out)
}

/// Sequence CSV with header `k,value`.
pub fn parse_sequence_csv(text: &str) -> Result<PrefixSequence> {
    PrefixSequence::new(parse_indexed_csv(text, "k,value")?)
}

pub fn sequence_to_csv(seq: &PrefixSequence) -> String {
    let mut out = String::from("k,value\n");
    for (i, v) in seq.values().iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, fmt_f64(*v)));
    }
    out
}

pub fn sequence_to_json(seq: &PrefixSequence) -> String {
    let rows: Vec<String> = seq
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{{\"k\":{},\"value\":{}}}", i + 1, json_num(*v)))
        .collect();
    format!("[{}]\n", rows.join(","))
}

/// Shift weights CSV with header `j,alpha`.
pub fn parse_weights_csv(text: &str) -> Result<Vec<f64>> {
    parse_indexed_csv(text, "j,alpha")
}

pub fn weights_to_csv(weights: &[f64]) -> String {
    let mut out = String::from("j,alpha\n");
    for (i, v) in weights.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, fmt_f64(*v)));
    }
    out
}

/// One matrix row per line, complex entries separated by commas.
pub fn parse_matrix_csv(text: &str, kind: NormKind) -> Result<DenseMatrix> {
    let mut rows = Vec::new();
    for (n, line) in data_lines(text) {
        let row = line
            .split(',')
            .map(|cell| parse_complex(cell).map_err(|_| Error::parse(n, format!("bad entry {:?}", cell.trim()))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "empty matrix"));
    }
    DenseMatrix::from_rows(&rows, kind)
}

pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

fn json_complex(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(x) => x.as_f64().map(|re| Complex64::new(re, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Some(Complex64::new(pair[0].as_f64()?, pair[1].as_f64()?)),
        Value::String(s) => parse_complex(s).ok(),
        _ => None,
    }
}

/// Nested arrays; entries are numbers, `[re, im]` pairs or `"re+imj"` strings.
pub fn parse_matrix_json(text: &str, kind: NormKind) -> Result<DenseMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse(1, "matrix JSON must be an array of rows"))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::InvalidInput(format!("row {i} is not an array")))?
                .iter()
                .map(|e| json_complex(e).ok_or_else(|| Error::InvalidInput(format!("bad entry in row {i}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_rows(&rows, kind)
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .map(|z| format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im)))
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]\n", rows.join(","))
}

/// Picks the matrix format from the first non-blank character.
pub fn parse_matrix_auto(text: &str, kind: NormKind) -> Result<DenseMatrix> {
    if text.trim_start().starts_with('[') {
        parse_matrix_json(text, kind)
    } else {
        parse_matrix_csv(text, kind)
    }
}

fn parse_degree(s: &str) -> Option<i64> {
    s.trim().parse().ok()
}

/// Wiener CSV with header `degree,re,im`.
pub fn parse_wiener_csv(text: &str) -> Result<WienerElement> {
    let mut lines = data_lines(text);
    match lines.next() {
        Some((_, h)) if h.replace(' ', "") == "degree,re,im" => {}
        Some((n, h)) => {
            return Err(Error::parse(
                n,
                format!("expected header \"degree,re,im\", found {h:?}"),
            ))
        }
        None => return Err(Error::parse(1, "missing header \"degree,re,im\"")),
    }
    let mut pairs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let [d, re, im] = fields[..] else {
            return Err(Error::parse(n, "expected degree,re,im"));
        };
        let d = parse_degree(d).ok_or_else(|| Error::parse(n, format!("bad degree {d:?}")))?;
        if !seen.insert(d) {
            return Err(Error::parse(n, format!("duplicate degree {d}")));
        }
        let re = parse_real(re).ok_or_else(|| Error::parse(n, format!("bad real part {re:?}")))?;
        let im = parse_real(im).ok_or_else(|| Error::parse(n, format!("bad imaginary part {im:?}")))?;
        pairs.push((d, Complex64::new(re, im)));
    }
    WienerElement::from_pairs(pairs)
}

pub fn wiener_to_csv(f: &WienerElement) -> String {
    let mut out = String::from("degree,re,im\n");
    for (d, c) in f.coeffs() {
        out.push_str(&format!("{d},{},{}\n", fmt_f64(c.re), fmt_f64(c.im)));
    }
    out
}

/// JSON object mapping degree strings to `[re, im]` (or a bare number).
pub fn parse_wiener_json(text: &str) -> Result<WienerElement> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(1, "Wiener JSON must be an object of degree -> [re, im]"))?;
    let pairs = obj
        .iter()
        .map(|(k, val)| {
            let d = parse_degree(k).ok_or_else(|| Error::InvalidInput(format!("bad degree key {k:?}")))?;
            let c = json_complex(val).ok_or_else(|| Error::InvalidInput(format!("bad coefficient for degree {d}")))?;
            Ok((d, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut degrees: Vec<i64> = pairs.iter().map(|p| p.0).collect();
    degrees.sort_unstable();
    if degrees.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("duplicate degree key".into()));
    }
    WienerElement::from_pairs(pairs)
}

pub fn wiener_to_json(f: &WienerElement) -> String {
    let items: Vec<String> = f
        .coeffs()
        .iter()
        .map(|(d, c)| format!("\"{d}\":[{},{}]", fmt_f64(c.re), fmt_f64(c.im)))
        .collect();
    format!("{{{}}}\n", items.join(","))
}

/// Inline `degree:coeff` pairs, e.g. `1:0.5,-1:0.5` or `0:1+2j`.
pub fn parse_wiener_inline(spec: &str) -> Result<WienerElement> {
    let mut pairs = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (d, c) = item
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("expected degree:coeff, found {item:?}")))?;
        let d = parse_degree(d).ok_or_else(|| Error::InvalidInput(format!("bad degree {d:?}")))?;
        pairs.push((d, parse_complex(c)?));
    }
    WienerElement::from_pairs(pairs)
}
