//! The declarative problem file: flat `key = value` lines grouped under
//! `[section]` headers, `#` starts a comment.
//!
//! ```text
//! [field]
//! p = 3
//! modulus = 2 2 1        # optional, coefficients from degree 0 up
//!
//! [chart]
//! dim = 3
//! boundary = 1 2
//! log_set = auto         # or a list, or none
//! tame =                 # optional
//!
//! [datum]
//! length = 2
//! a1 = t2/t1
//! a0 = t3/t1^3
//!
//! [output]
//! modes = analyze cc     # optional
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::expr::parse_expr;
use crate::algebra::{Field, RationalSection};
use crate::error::{Error, Result};
use crate::witt::WittVector;

/// Default cap on the Witt length s.
pub const DEFAULT_WITT_CAP: usize = 4;

/// The pipeline stage to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analyze,
    Resolve,
    Cc,
    Ss,
    Surface,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Analyze => "analyze",
            Mode::Resolve => "resolve",
            Mode::Cc => "cc",
            Mode::Ss => "ss",
            Mode::Surface => "surface",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "analyze" => Mode::Analyze,
            "resolve" => Mode::Resolve,
            "cc" => Mode::Cc,
            "ss" => Mode::Ss,
            "surface" => Mode::Surface,
            _ => return None,
        })
    }
}

/// How the log set D' is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogSetSpec {
    /// I_I union I_T, decided after the conductors are known.
    Auto,
    /// 1-based coordinate indices.
    Explicit(Vec<usize>),
}

impl LogSetSpec {
    /// Parse "auto", "none" or a list separated by spaces or commas.
    pub fn parse(s: &str) -> std::result::Result<LogSetSpec, String> {
        match s.trim() {
            "auto" => Ok(LogSetSpec::Auto),
            "none" | "" => Ok(LogSetSpec::Explicit(vec![])),
            other => parse_list(other).map(LogSetSpec::Explicit),
        }
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| format!("'{x}' is not a coordinate index")))
        .collect()
}

/// A fully numeric problem description. Indices are 1-based as in the file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub p: u32,
    pub modulus: Option<Vec<u32>>,
    pub dim: usize,
    /// Components in listing order (a_{s-1}, ..., a_0).
    pub components: Vec<String>,
    pub boundary: Vec<usize>,
    pub log_set: LogSetSpec,
    pub tame: Vec<usize>,
    pub outputs: Vec<Mode>,
}

impl ProblemSpec {
    pub fn witt_length(&self) -> usize {
        self.components.len()
    }

    pub fn field(&self) -> Result<Field> {
        match &self.modulus {
            Some(m) => Field::extension(self.p, m),
            None => Field::prime(self.p),
        }
    }

    /// The datum as a Witt vector on A^dim.
    pub fn datum(&self) -> Result<WittVector> {
        let f = self.field()?;
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(k, c)| parse_expr(c, &f, self.dim, k + 1, 1))
            .collect::<Result<Vec<RationalSection>>>()?;
        Ok(WittVector::new(&f, self.dim, comps))
    }

    fn zero_based(xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|x| x - 1).collect()
    }

    pub fn boundary0(&self) -> Vec<usize> {
        Self::zero_based(&self.boundary)
    }

    pub fn tame0(&self) -> Vec<usize> {
        Self::zero_based(&self.tame)
    }

    /// Serialize in canonical form.
    pub fn serialize(&self) -> String {
        let list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        out.push_str("[field]\n");
        out.push_str(&format!("p = {}\n", self.p));
        if let Some(m) = &self.modulus {
            let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("modulus = {}\n", m.join(" ")));
        }
        out.push_str("\n[chart]\n");
        out.push_str(&format!("dim = {}\n", self.dim));
        out.push_str(&format!("boundary = {}\n", list(&self.boundary)).replace(" \n", "\n"));
        let ls = match &self.log_set {
            LogSetSpec::Auto => "auto".to_string(),
            LogSetSpec::Explicit(v) if v.is_empty() => "none".to_string(),
            LogSetSpec::Explicit(v) => list(v),
        };
        out.push_str(&format!("log_set = {ls}\n"));
        if !self.tame.is_empty() {
            out.push_str(&format!("tame = {}\n", list(&self.tame)));
        }
        out.push_str("\n[datum]\n");
        let s = self.witt_length();
        out.push_str(&format!("length = {s}\n"));
        for (k, c) in self.components.iter().enumerate() {
            out.push_str(&format!("a{} = {}\n", s - 1 - k, c));
        }
        if !self.outputs.is_empty() {
            let m: Vec<&str> = self.outputs.iter().map(|m| m.name()).collect();
            out.push_str(&format!("\n[output]\nmodes = {}\n", m.join(" ")));
        }
        out
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

struct Entry {
    value: String,
    line: usize,
    key_col: usize,
    value_col: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

const KEYS: &[(&str, &[&str])] = &[
    ("field", &["p", "modulus"]),
    ("chart", &["dim", "boundary", "log_set", "tame"]),
    ("datum", &["length"]),
    ("output", &["modes"]),
];

fn known(section: &str, key: &str) -> bool {
    if section == "datum" && key.len() > 1 && key.starts_with('a') && key[1..].chars().all(|c| c.is_ascii_digit()) {
        return true;
    }
    KEYS.iter().any(|(s, ks)| *s == section && ks.contains(&key))
}

/// Parse with the default Witt length cap.
pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    parse_spec_with_cap(text, DEFAULT_WITT_CAP)
}

/// Parse and validate a problem file.
pub fn parse_spec_with_cap(text: &str, witt_cap: usize) -> Result<ProblemSpec> {
    let mut section: Option<String> = None;
    let mut entries: BTreeMap<(String, String), Entry> = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| perr(line, lead, "section header is missing ']'"))?
                .trim();
            if !KEYS.iter().any(|(s, _)| *s == name) {
                return Err(perr(line, lead + 1, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(perr(line, lead, "expected 'key = value'"));
        };
        let key = body[..eq].trim();
        let value_raw = &body[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        let Some(sec) = &section else {
            return Err(perr(line, lead, "key outside of any section"));
        };
        if !known(sec, key) {
            return Err(perr(line, lead, format!("unknown key '{key}' in [{sec}]")));
        }
        let slot = (sec.clone(), key.to_string());
        if entries.contains_key(&slot) {
            return Err(perr(line, lead, format!("duplicate key '{key}'")));
        }
        entries.insert(
            slot,
            Entry {
                value: value.to_string(),
                line,
                key_col: lead,
                value_col,
            },
        );
    }
    let get = |s: &str, k: &str| entries.get(&(s.to_string(), k.to_string()));
    let need = |s: &str, k: &str| {
        get(s, k).ok_or_else(|| perr(text.lines().count().max(1), 1, format!("missing key '{k}' in [{s}]")))
    };
    let number = |e: &Entry| -> Result<u64> {
        e.value
            .parse::<u64>()
            .map_err(|_| perr(e.line, e.value_col, format!("'{}' is not a nonnegative integer", e.value)))
    };
    let list = |e: &Entry| parse_list(&e.value).map_err(|m| perr(e.line, e.value_col, m));

    let p_entry = need("field", "p")?;
    let p = number(p_entry)? as u32;
    let modulus = match get("field", "modulus") {
        Some(e) => Some(
            e.value
                .split_whitespace()
                .map(|x| x.parse::<u32>().map_err(|_| perr(e.line, e.value_col, "modulus coefficients must be integers")))
                .collect::<Result<Vec<u32>>>()?,
        ),
        None => None,
    };
    let dim_entry = need("chart", "dim")?;
    let dim = number(dim_entry)? as usize;
    if dim == 0 {
        return Err(perr(dim_entry.line, dim_entry.value_col, "dim must be positive"));
    }
    let check_range = |xs: &[usize], e: &Entry| -> Result<()> {
        if let Some(x) = xs.iter().find(|&&x| x == 0 || x > dim) {
            return Err(perr(e.line, e.value_col, format!("index {x} is outside 1..{dim}")));
        }
        Ok(())
    };
    let b_entry = need("chart", "boundary")?;
    let boundary = list(b_entry)?;
    check_range(&boundary, b_entry)?;
    let log_set = match get("chart", "log_set") {
        None => LogSetSpec::Auto,
        Some(e) => {
            let v = LogSetSpec::parse(&e.value).map_err(|m| perr(e.line, e.value_col, m))?;
            if let LogSetSpec::Explicit(xs) = &v {
                check_range(xs, e)?;
            }
            v
        }
    };
    let tame = match get("chart", "tame") {
        None => vec![],
        Some(e) => {
            let v = list(e)?;
            check_range(&v, e)?;
            v
        }
    };
    let l_entry = need("datum", "length")?;
    let s = number(l_entry)? as usize;
    if s == 0 {
        return Err(perr(l_entry.line, l_entry.value_col, "length must be positive"));
    }
    if s > witt_cap {
        return Err(Error::invalid(format!("Witt length {s} exceeds the cap {witt_cap}")));
    }
    for ((sec, key), e) in &entries {
        if sec == "datum" && key != "length" {
            let i: usize = key[1..].parse().unwrap_or(usize::MAX);
            if i >= s {
                return Err(perr(e.line, e.key_col, format!("component {key} is beyond length {s}")));
            }
        }
    }
    let field = match &modulus {
        Some(m) => Field::extension(p, m),
        None => Field::prime(p),
    }?;
    let mut components = Vec::with_capacity(s);
    for i in (0..s).rev() {
        let e = need("datum", &format!("a{i}"))?;
        parse_expr(&e.value, &field, dim, e.line, e.value_col)?;
        components.push(e.value.clone());
    }
    let outputs = match get("output", "modes") {
        None => vec![],
        Some(e) => e
            .value
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|m| !m.is_empty())
            .map(|m| Mode::parse(m).ok_or_else(|| perr(e.line, e.value_col, format!("unknown mode '{m}'"))))
            .collect::<Result<Vec<Mode>>>()?,
    };
    Ok(ProblemSpec {
        p,
        modulus,
        dim,
        components,
        boundary,
        log_set,
        tame,
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAIN: &str = "[field]\np = 3\n\n[chart]\ndim = 3\nboundary = 1\nlog_set = auto\n\n[datum]\nlength = 2\na1 = t2/t1^2\na0 = t3/t1^(3*2)\n";

    #[test]
    fn round_trip() {
        let s = parse_spec(MAIN).unwrap();
        assert_eq!(s.witt_length(), 2);
        let text = s.serialize();
        assert_eq!(parse_spec(&text).unwrap().serialize(), text);
        assert_eq!(text, MAIN);
    }

    #[test]
    fn located_errors() {
        let bad = MAIN.replace("dim = 3", "dimension = 3");
        match parse_spec(&bad) {
            Err(Error::Parse { line: 5, column: 1, message }) => assert!(message.contains("unknown key")),
            other => panic!("{other:?}"),
        }
        let bad = MAIN.replace("p = 3", "p = 4");
        match parse_spec(&bad) {
            Err(Error::Invalid(m)) => assert!(m.contains("p must be prime")),
            other => panic!("{other:?}"),
        }
        let bad = MAIN.replace("t2/t1^2", "t2/(t1+t2)");
        match parse_spec(&bad) {
            Err(Error::Parse { line: 11, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
