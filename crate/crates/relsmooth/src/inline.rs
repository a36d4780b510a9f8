//! Compact command-line syntax for tangency data and profiles.
//!
//! Tangency data is a whitespace-separated list of fibers `(d1,d2,...)@point`,
//! optionally preceded by the number of free marks: `2 (1,1)@inf (3)@0`.
//! Profiles are written `point:3,1`.

use relsmooth_core::conditions::{FiberTangency, TangencyData};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse {input:?}: {reason}")]
pub struct InlineError {
    pub input: String,
    pub reason: String,
}

fn err(input: &str, reason: impl Into<String>) -> InlineError {
    InlineError { input: input.to_string(), reason: reason.into() }
}

fn parts(input: &str, list: &str) -> Result<Vec<u32>, InlineError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|e| err(input, format!("bad integer {s:?}: {e}"))))
        .collect()
}

pub fn parse_gamma(input: &str) -> Result<TangencyData, InlineError> {
    let mut gamma = TangencyData::default();
    let mut rest = input.trim();
    if let Some(end) = rest.find(|c: char| !c.is_ascii_digit()).or(Some(rest.len())).filter(|&e| e > 0) {
        gamma.free_marks = rest[..end].parse().map_err(|e| err(input, format!("bad free mark count: {e}")))?;
        rest = rest[end..].trim_start();
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err(input, "expected `(`"))?;
        let close = body.find(')').ok_or_else(|| err(input, "missing `)`"))?;
        let tangencies = parts(input, &body[..close])?;
        let after = body[close + 1..].strip_prefix('@').ok_or_else(|| err(input, "expected `@point` after `)`"))?;
        let end = after.find(char::is_whitespace).unwrap_or(after.len());
        let point = &after[..end];
        if point.is_empty() {
            return Err(err(input, "empty point label"));
        }
        gamma.fibers.push(FiberTangency::new(point, &tangencies));
        rest = after[end..].trim_start();
    }
    Ok(gamma)
}

pub fn format_gamma(gamma: &TangencyData) -> String {
    let mut out = Vec::new();
    if gamma.free_marks > 0 {
        out.push(gamma.free_marks.to_string());
    }
    for f in &gamma.fibers {
        let t: Vec<String> = f.tangencies.iter().map(u32::to_string).collect();
        out.push(format!("({})@{}", t.join(","), f.point));
    }
    out.join(" ")
}

/// `point:3,1` into a label and parts.
pub fn parse_profile(input: &str) -> Result<(String, Vec<u32>), InlineError> {
    let (point, list) = input.rsplit_once(':').ok_or_else(|| err(input, "expected `point:parts`"))?;
    let p = parts(input, list)?;
    if p.is_empty() {
        return Err(err(input, "empty profile"));
    }
    Ok((point.to_string(), p))
}

/// `a,b` weights of a weighted projective line.
pub fn parse_weights(input: &str) -> Result<(u32, u32), InlineError> {
    match parts(input, input)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(err(input, "expected two weights `a,b`")),
    }
}

/// `edge:value` pairs separated by commas or spaces.
pub fn parse_edge_map(input: &str) -> Result<Vec<(u32, u32)>, InlineError> {
    input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (e, v) = item.split_once(':').ok_or_else(|| err(input, format!("expected `edge:value`, got {item:?}")))?;
            let e = e.trim().trim_start_matches(['n', 'e']);
            let e = e.parse().map_err(|x| err(input, format!("bad edge {e:?}: {x}")))?;
            let v = v.trim().parse().map_err(|x| err(input, format!("bad value {v:?}: {x}")))?;
            Ok((e, v))
        })
        .collect()
}
