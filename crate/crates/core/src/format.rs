//! Catalogue records: `name <string>; degree <n>; gens <cycles>; <cycles>; …`
//! with 1-based points. `#` starts a comment; blank lines are skipped.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Permutation;

/// Parses generators in cycle notation on `degree` points.
pub fn parse_generator_list(
    degree: usize,
    parts: &[&str],
) -> std::result::Result<Vec<Permutation>, String> {
    parts
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(degree, s).map_err(|e| e.to_string()))
        .collect()
}

/// Splits one record into name, degree and generators.
pub fn parse_group_record(
    record: &str,
) -> std::result::Result<(String, usize, Vec<Permutation>), String> {
    let fields: Vec<&str> = record.split(';').map(str::trim).collect();
    let mut name = None;
    let mut degree = None;
    let mut gens_at = None;
    for (i, f) in fields.iter().enumerate() {
        let (key, value) = f.split_once(char::is_whitespace).unwrap_or((f, ""));
        match key {
            "name" if name.is_none() && !value.trim().is_empty() => {
                name = Some(value.trim().to_string())
            }
            "degree" if degree.is_none() => {
                degree = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&d| d > 0)
                        .ok_or_else(|| {
                            format!("degree must be a positive integer, got {value:?}")
                        })?,
                )
            }
            "gens" => {
                gens_at = Some(i);
                break;
            }
            "" => {}
            _ => return Err(format!("unexpected field {f:?}")),
        }
    }
    let name = name.ok_or("record lacks a name")?;
    let degree = degree.ok_or("record lacks a degree")?;
    let at = gens_at.ok_or("record lacks gens")?;
    let first = fields[at].strip_prefix("gens").unwrap_or("").trim();
    let mut parts = vec![first];
    parts.extend(fields[at + 1..].iter().copied());
    let gens = parse_generator_list(degree, &parts)?;
    Ok((name, degree, gens))
}

/// Parses a catalogue, generating each group. Errors carry line numbers;
/// duplicate names are rejected.
pub fn parse_catalogue(text: &str, limits: &Limits) -> Result<Vec<Arc<FiniteGroup>>> {
    let mut out: Vec<Arc<FiniteGroup>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let record = raw.split('#').next().unwrap_or("").trim();
        if record.is_empty() {
            continue;
        }
        let (name, degree, gens) =
            parse_group_record(record).map_err(|msg| Error::Parse { line, msg })?;
        if out.iter().any(|g| g.name() == name) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate group name {name:?}"),
            });
        }
        let g = FiniteGroup::generate(name, degree, gens, limits).map_err(|e| match e {
            Error::Resource { .. } => e,
            other => Error::Parse {
                line,
                msg: other.to_string(),
            },
        })?;
        out.push(g);
    }
    Ok(out)
}
