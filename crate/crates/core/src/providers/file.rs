//! Line-oriented text format for simple-element tables.
//!
//! ```text
//! # comments run to the end of the line
//! name: B3
//! simples: 1 a b ab ba aba
//! delta: aba
//! a b = ab
//! a ba = aba
//! ```
//!
//! The unit `1` may be omitted from `simples:`; it is always index 0 and its
//! products are implied. `D` may be used in product lines to mean Delta, and
//! may not name any other simple.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

const RESERVED_CHARS: &[char] = &['.', '^', '=', ':', '#', ','];

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses and validates a table from its text form.
pub fn parse_table(text: &str) -> Result<GarsideTable> {
    let mut name: Option<String> = None;
    let mut simples: Option<(usize, Vec<String>)> = None;
    let mut delta: Option<(usize, String)> = None;
    let mut products: Vec<(usize, [String; 3])> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            let slot_taken = match key.trim() {
                "name" => name.replace(value.to_string()).is_some(),
                "simples" => simples
                    .replace((line_no, value.split_whitespace().map(str::to_string).collect()))
                    .is_some(),
                "delta" => delta.replace((line_no, value.to_string())).is_some(),
                other => return Err(parse_err(line_no, format!("unknown header `{other}`"))),
            };
            if slot_taken {
                return Err(parse_err(line_no, format!("duplicate header `{}`", key.trim())));
            }
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(parse_err(line_no, "expected `u v = w` or a header"));
        };
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let rhs: Vec<&str> = rhs.split_whitespace().collect();
        if lhs.len() != 2 || rhs.len() != 1 {
            return Err(parse_err(line_no, "a product line has the shape `u v = w`"));
        }
        products.push((line_no, [lhs[0].to_string(), lhs[1].to_string(), rhs[0].to_string()]));
    }

    let name = name.unwrap_or_else(|| "custom".to_string());
    let (simples_line, listed) = simples.ok_or_else(|| parse_err(0, "missing `simples:` header"))?;
    let (delta_line, delta_name) = delta.ok_or_else(|| parse_err(0, "missing `delta:` header"))?;

    let mut names = vec!["1".to_string()];
    for s in listed {
        if s == "1" {
            continue;
        }
        if s.contains(RESERVED_CHARS) {
            return Err(parse_err(simples_line, format!("simple name `{s}` uses a reserved character")));
        }
        if s == "D" && s != delta_name {
            return Err(parse_err(simples_line, "`D` is reserved for Delta"));
        }
        names.push(s);
    }
    let index: HashMap<&str, SimpleId> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), SimpleId::from_index(i)))
        .collect();
    if index.len() != names.len() {
        return Err(parse_err(simples_line, "simple names must be distinct"));
    }
    let delta = *index
        .get(delta_name.as_str())
        .ok_or_else(|| parse_err(delta_line, format!("delta `{delta_name}` is not among the simples")))?;
    let resolve = |line: usize, s: &str| -> Result<SimpleId> {
        match index.get(s) {
            Some(&id) => Ok(id),
            None if s == "D" => Ok(delta),
            None => Err(parse_err(line, format!("unknown simple `{s}`"))),
        }
    };
    let triples = products
        .iter()
        .map(|(line, [u, v, w])| Ok((resolve(*line, u)?, resolve(*line, v)?, resolve(*line, w)?)))
        .collect::<Result<Vec<_>>>()?;
    GarsideTable::from_products(&name, names.clone(), delta, &triples)
}

pub fn load_table(path: &Path) -> Result<GarsideTable> {
    parse_table(&fs::read_to_string(path)?)
}

/// Text form listing every product of two non-unit simples.
pub fn format_table(t: &GarsideTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", t.name());
    let _ = writeln!(out, "simples: {}", t.names().join(" "));
    let _ = writeln!(out, "delta: {}", t.simple_name(t.delta()));
    for u in t.generators() {
        for v in t.generators() {
            if let Some(w) = t.product(u, v) {
                let _ = writeln!(out, "{} {} = {}", t.simple_name(u), t.simple_name(v), t.simple_name(w));
            }
        }
    }
    out
}

pub fn save_table(t: &GarsideTable, path: &Path) -> Result<()> {
    fs::write(path, format_table(t))?;
    Ok(())
}
