//! Text notation for monomial ideals: `<x^2*y, x*y^2>`.
//!
//! Variables print as `x, y, z` for up to three variables, `a`-`f` for up to
//! six, and `x1`, `x2`, ... otherwise. The parser accepts all three naming
//! schemes. `<1>` is the unit ideal and `<0>` the zero ideal.

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;

const XYZ: [char; 3] = ['x', 'y', 'z'];
const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

fn var_name(n_vars: usize, i: usize) -> String {
    match n_vars {
        0..=3 => XYZ[i].to_string(),
        4..=6 => LETTERS[i].to_string(),
        _ => format!("x{}", i + 1),
    }
}

pub fn format_monomial(m: &ExponentVector) -> String {
    let parts: Vec<String> = m
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = var_name(m.len(), i);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    if ideal.is_zero() {
        return "<0>".to_string();
    }
    let gens: Vec<String> = ideal.generators().iter().map(format_monomial).collect();
    format!("<{}>", gens.join(", "))
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Zero-based index of a variable name.
fn var_index(name: &str) -> Result<usize> {
    let mut chars = name.chars();
    match (chars.next(), chars.as_str()) {
        (Some(c), "") => {
            if let Some(i) = XYZ.iter().position(|&v| v == c) {
                Ok(i)
            } else if let Some(i) = LETTERS.iter().position(|&v| v == c) {
                Ok(i)
            } else {
                parse_err(format!("unknown variable `{name}`"))
            }
        }
        (Some('x'), digits) => match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => parse_err(format!("bad variable index in `{name}`")),
        },
        _ => parse_err(format!("unknown variable `{name}`")),
    }
}

/// (variable index, exponent) pairs of one monomial term.
fn parse_term(term: &str) -> Result<Vec<(usize, u32)>> {
    let term = term.trim();
    if term == "1" {
        return Ok(Vec::new());
    }
    term.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => {
                    let exp = exp
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (name.trim(), exp)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return parse_err(format!("empty factor in `{term}`"));
            }
            Ok((var_index(name)?, exp))
        })
        .collect()
}

fn split_body(text: &str) -> Result<Vec<&str>> {
    let body = text
        .trim()
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .ok_or_else(|| Error::Parse(format!("`{text}` is not of the form <...>")))?
        .trim();
    match body {
        "" | "0" => Ok(Vec::new()),
        _ => Ok(body.split(',').collect()),
    }
}

/// Parses an ideal over exactly `n_vars` variables.
pub fn parse_ideal(text: &str, n_vars: usize) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    for term in split_body(text)? {
        let mut coords = vec![0u32; n_vars];
        for (i, e) in parse_term(term)? {
            if i >= n_vars {
                return parse_err(format!("`{term}` uses variable {} of {n_vars}", i + 1));
            }
            coords[i] += e;
        }
        gens.push(ExponentVector::new(coords));
    }
    MonomialIdeal::new(n_vars, gens)
}

/// Smallest variable count covering every name used in `texts`.
pub fn infer_n_vars<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<usize> {
    let mut n = 1;
    for text in texts {
        for term in split_body(text)? {
            for (i, _) in parse_term(term)? {
                n = n.max(i + 1);
            }
        }
    }
    Ok(n)
}
