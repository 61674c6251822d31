//! Quotient rings `R = P/N` together with their reduced ring `P/rad`.
//!
//! Text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! ring: Q[x,y] / (x^2)
//! radical: (x)
//! minimal-primes: [(x)]
//! ```

use super::ideal::IdealHandle;
use crate::error::{Error, Result};
use crate::poly::{format_polynomial, parse_polynomial, shift_position, Polynomial};

#[derive(Clone, Debug)]
pub struct RingSpec {
    vars: Vec<String>,
    defining: IdealHandle,
    radical: IdealHandle,
    minimal_primes: Vec<IdealHandle>,
}

impl RingSpec {
    /// Builds a ring after checking `N ⊆ rad`, and `rad = ∩ primes` when
    /// primes are given.
    pub fn new(
        vars: Vec<String>,
        defining: IdealHandle,
        radical: IdealHandle,
        minimal_primes: Vec<IdealHandle>,
    ) -> Result<Self> {
        let n = vars.len();
        for (what, i) in std::iter::once(("defining ideal", &defining))
            .chain(std::iter::once(("radical", &radical)))
            .chain(minimal_primes.iter().map(|p| ("minimal prime", p)))
        {
            if i.nvars() != n {
                return Err(Error::InconsistentRing(format!(
                    "{what} has {} variables, ring has {n}",
                    i.nvars()
                )));
            }
        }
        let ring = RingSpec {
            vars,
            defining,
            radical,
            minimal_primes,
        };
        if let Some(g) = ring.radical.missing_generator(&ring.defining) {
            return Err(Error::InconsistentRing(format!(
                "generator {} of the defining ideal is not in the radical",
                ring.format(g)
            )));
        }
        if !ring.minimal_primes.is_empty() {
            let mut inter = ring.minimal_primes[0].clone();
            for p in &ring.minimal_primes[1..] {
                inter = inter.intersect(p)?;
            }
            if !inter.equals(&ring.radical) {
                return Err(Error::InconsistentRing(
                    "radical differs from the intersection of the minimal primes".into(),
                ));
            }
        }
        Ok(ring)
    }

    /// The polynomial ring itself (`N = rad = 0`).
    pub fn polynomial_ring(vars: Vec<String>) -> Self {
        let n = vars.len();
        RingSpec {
            vars,
            defining: IdealHandle::zero(n),
            radical: IdealHandle::zero(n),
            minimal_primes: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(Vec<String>, String)> = None;
        let mut radical: Option<String> = None;
        let mut primes: Option<String> = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Syntax {
                    position: 0,
                    message: format!("expected `key: value`, got `{line}`"),
                });
            };
            let value = value.trim();
            match key.trim() {
                "ring" => header = Some(parse_header(value)?),
                "radical" => radical = Some(value.to_string()),
                "minimal-primes" => primes = Some(value.to_string()),
                other => {
                    return Err(Error::Syntax {
                        position: 0,
                        message: format!("unknown directive `{other}`"),
                    });
                }
            }
        }
        let Some((vars, defining_text)) = header else {
            return Err(Error::Syntax {
                position: 0,
                message: "missing `ring:` line".into(),
            });
        };
        let n = vars.len();
        let defining = IdealHandle::new(n, parse_ideal_text(&defining_text, &vars)?);
        let radical = match radical {
            Some(t) => IdealHandle::new(n, parse_ideal_text(&t, &vars)?),
            None if defining.is_zero_ideal() => IdealHandle::zero(n),
            None => {
                return Err(Error::InconsistentRing(
                    "a `radical:` line is required when N is nonzero".into(),
                ))
            }
        };
        let minimal_primes = match primes {
            Some(t) => parse_ideal_family(&t, &vars)?
                .into_iter()
                .map(|g| IdealHandle::new(n, g))
                .collect(),
            None => Vec::new(),
        };
        RingSpec::new(vars, defining, radical, minimal_primes)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The defining ideal `N` of `R` in `P`.
    pub fn defining_ideal(&self) -> &IdealHandle {
        &self.defining
    }

    /// The ideal `rad ⊇ N` with `R_red = P/rad`.
    pub fn radical(&self) -> &IdealHandle {
        &self.radical
    }

    pub fn minimal_primes(&self) -> &[IdealHandle] {
        &self.minimal_primes
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.vars)
    }

    pub fn parse_ideal(&self, text: &str) -> Result<IdealHandle> {
        Ok(IdealHandle::new(
            self.nvars(),
            parse_ideal_text(text, &self.vars)?,
        ))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.vars)
    }

    pub fn format_ideal(&self, i: &IdealHandle) -> String {
        let gens: Vec<String> = i.generators().iter().map(|g| self.format(g)).collect();
        format!("({})", gens.join("; "))
    }

    /// `J + N`, the ideal of `P` representing `J` in `R`.
    pub fn lift(&self, j: &IdealHandle) -> IdealHandle {
        j.extend(self.defining.generators())
    }

    /// Image of `J` in `R_red`: generators reduced mod `rad`.
    pub fn image_in_reduced(&self, j: &IdealHandle) -> IdealHandle {
        j.reduce_generators_mod(&self.radical)
    }

    pub fn is_minimal_prime(&self, p: &IdealHandle) -> bool {
        self.minimal_primes.iter().any(|q| q.equals(p))
    }
}

/// `Q[x,y,...] / (g1; ...)`, the quotient part optional.
fn parse_header(value: &str) -> Result<(Vec<String>, String)> {
    let syntax = |message: &str| Error::Syntax {
        position: 0,
        message: message.into(),
    };
    let rest = value
        .strip_prefix('Q')
        .ok_or_else(|| syntax("ring must start with `Q[`"))?
        .trim_start();
    let rest = rest
        .strip_prefix('[')
        .ok_or_else(|| syntax("ring must start with `Q[`"))?;
    let close = rest
        .find(']')
        .ok_or_else(|| syntax("missing `]` after the variable list"))?;
    let vars: Vec<String> = rest[..close]
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if !ok {
            return Err(syntax(&format!("invalid variable name `{v}`")));
        }
        if vars[..i].contains(v) {
            return Err(syntax(&format!("variable `{v}` declared twice")));
        }
    }
    let tail = rest[close + 1..].trim();
    let quotient = if tail.is_empty() {
        "0".to_string()
    } else {
        tail.strip_prefix('/')
            .ok_or_else(|| syntax("expected `/` before the defining ideal"))?
            .trim()
            .to_string()
    };
    Ok((vars, quotient))
}

/// Strips one pair of parentheses when they enclose the whole text.
fn strip_outer(text: &str, open: char, close: char) -> (&str, usize) {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let t = trimmed.trim_end();
    if !(t.starts_with(open) && t.ends_with(close)) {
        return (text, 0);
    }
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 && i != t.len() - 1 {
                return (text, 0);
            }
        }
    }
    (&t[1..t.len() - 1], lead + 1)
}

/// Splits at `;` outside any brackets, returning pieces with their offsets.
fn split_top(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ';' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses `(g1; g2; ...)` or `g1; g2; ...`; `0` and `()` denote the zero ideal.
pub fn parse_ideal_text<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Vec<Polynomial>> {
    let (inner, offset) = strip_outer(text, '(', ')');
    let mut out = Vec::new();
    for (start, piece) in split_top(inner) {
        if piece.trim().is_empty() {
            continue;
        }
        let p = parse_polynomial(piece, vars).map_err(|e| shift_position(e, offset + start))?;
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Parses `[(...); (...)]` into generator lists.
pub fn parse_ideal_family<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Vec<Vec<Polynomial>>> {
    let (inner, offset) = strip_outer(text, '[', ']');
    let mut out = Vec::new();
    for (start, piece) in split_top(inner) {
        if piece.trim().is_empty() {
            continue;
        }
        out.push(parse_ideal_text(piece, vars).map_err(|e| shift_position(e, offset + start))?);
    }
    Ok(out)
}
