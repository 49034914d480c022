//! Text format for monomial ideals.
//!
//! ```text
//! ring: x, y, z
//! ideal: x^2*y, y*z^2, x*z
//! ```
//!
//! Whitespace is ignored. A `;` may stand in for a line break so the whole
//! spec fits on a command line. Variables must be declared on the ring line;
//! declaration order fixes the coordinate order. `1` denotes the unit
//! monomial and an empty generator list (or `0`) the zero ideal.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub variables: Vec<String>,
    pub ideal: MonomialIdeal,
}

impl IdealSpec {
    pub fn format_monomial(&self, m: &ExponentVector) -> String {
        format_monomial(&self.variables, m)
    }

    /// Round-trippable text form of the spec.
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self
            .ideal
            .generators()
            .iter()
            .map(|g| self.format_monomial(g))
            .collect();
        format!("ring: {}\nideal: {}\n", self.variables.join(", "), gens.join(", "))
    }
}

pub fn format_monomial(variables: &[String], m: &ExponentVector) -> String {
    let mut out = String::new();
    for (v, &e) in variables.iter().zip(m.as_slice()) {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(v);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn parse_err(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn strip_whitespace(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn parse_ideal(text: &str) -> Result<IdealSpec> {
    let mut variables: Option<Vec<String>> = None;
    let mut ideal_line: Option<(usize, String)> = None;

    let lines = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split(';').map(move |part| (i + 1, part)));

    for (lineno, raw) in lines {
        let line = strip_whitespace(raw);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(parse_err(lineno, &line, "expected `ring:` or `ideal:`"));
        };
        match key {
            "ring" => {
                if variables.is_some() {
                    return Err(parse_err(lineno, key, "duplicate ring line"));
                }
                let mut vars: Vec<String> = Vec::new();
                for v in value.split(',') {
                    if !is_identifier(v) {
                        return Err(parse_err(lineno, v, "invalid variable name"));
                    }
                    if vars.iter().any(|w| w == v) {
                        return Err(parse_err(lineno, v, "variable declared twice"));
                    }
                    vars.push(v.to_string());
                }
                variables = Some(vars);
            }
            "ideal" => {
                if ideal_line.is_some() {
                    return Err(parse_err(lineno, key, "duplicate ideal line"));
                }
                ideal_line = Some((lineno, value.to_string()));
            }
            other => return Err(parse_err(lineno, other, "unknown key")),
        }
    }

    let variables = variables.ok_or_else(|| parse_err(0, "", "missing `ring:` line"))?;
    let (lineno, body) = ideal_line.ok_or_else(|| parse_err(0, "", "missing `ideal:` line"))?;
    let n = variables.len();

    let mut gens = Vec::new();
    if !(body.is_empty() || body == "0") {
        for term in body.split(',') {
            gens.push(parse_monomial(&variables, term, lineno)?);
        }
    }
    let ideal = MonomialIdeal::minimalize(n, gens)?;
    Ok(IdealSpec { variables, ideal })
}

fn parse_monomial(variables: &[String], term: &str, lineno: usize) -> Result<ExponentVector> {
    let mut exps = vec![0u32; variables.len()];
    if term == "1" {
        return Ok(ExponentVector::new(exps));
    }
    if term.is_empty() {
        return Err(parse_err(lineno, term, "empty generator"));
    }
    for factor in term.split('*') {
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let exp: u32 = e
                    .parse()
                    .map_err(|_| parse_err(lineno, factor, "exponent must be a positive integer"))?;
                if exp == 0 {
                    return Err(parse_err(lineno, factor, "exponent must be at least 1"));
                }
                (name, exp)
            }
            None => (factor, 1),
        };
        let idx = variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| parse_err(lineno, name, "undeclared variable"))?;
        exps[idx] += exp;
    }
    Ok(ExponentVector::new(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_line_form() {
        let spec = parse_ideal("ring: x,y,z\nideal: x^2*y, y*z^2, x*z\n").unwrap();
        assert_eq!(spec.variables, vec!["x", "y", "z"]);
        assert_eq!(spec.ideal.num_generators(), 3);
        assert!(spec.ideal.contains(&ExponentVector::new(vec![1, 0, 1])).unwrap());
    }

    #[test]
    fn inline_form_and_whitespace() {
        let spec = parse_ideal(" ring : x , y ;  ideal: x ^ 2 , x * y ").unwrap();
        assert_eq!(spec.ideal.generators().len(), 2);
        assert_eq!(spec.to_text(), "ring: x, y\nideal: x*y, x^2\n");
    }

    #[test]
    fn unit_and_zero() {
        assert!(parse_ideal("ring: x; ideal: 1").unwrap().ideal.is_unit());
        assert!(parse_ideal("ring: x; ideal: 0").unwrap().ideal.is_zero());
        assert!(parse_ideal("ring: x; ideal:").unwrap().ideal.is_zero());
    }

    #[test]
    fn errors_carry_the_token() {
        match parse_ideal("ring: x,y\nideal: x*w").unwrap_err() {
            Error::Parse { line, token, .. } => {
                assert_eq!(line, 2);
                assert_eq!(token, "w");
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_ideal("ring: x; ideal: x^0").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(parse_ideal("ideal: x").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(
            parse_ideal("ring: x,x; ideal: x").unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn repeated_variable_in_term_accumulates() {
        let spec = parse_ideal("ring: x,y; ideal: x*x*y").unwrap();
        assert_eq!(spec.ideal.generators()[0].as_slice(), &[2, 1]);
    }
}
