//! Polynomial grammar, printer and JSON point/matrix readers.
//!
//! ```text
//! poly     := term (('+' | '-') term)*            (optional leading sign)
//! term     := coeff ('*'? monomial)? | monomial
//! monomial := var ('^' nat)? ('*'? var ('^' nat)?)*
//! var      := x0..x9 | s | t | u | v | w | z0..z9 | z
//! coeff    := int ('/' posint)?
//! ```
//!
//! Whitespace between tokens is ignored.

use fibered_core::algebra::{Matrix, MultiPoly, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// Variable names in index order; every parsed polynomial lives in this ring.
pub const VARIABLES: [&str; 26] = [
    "x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "s", "t", "u", "v", "w", "z0", "z1", "z2", "z3",
    "z4", "z5", "z6", "z7", "z8", "z9", "z",
];

pub const NVARS: usize = VARIABLES.len();

pub fn var_index(name: &str) -> Option<usize> {
    VARIABLES.iter().position(|v| *v == name)
}

pub const S: usize = 10;
pub const T: usize = 11;
pub const Z: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits().expect("caller checked for a digit");
        let num: num_bigint::BigInt = num.parse().expect("digits");
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            match self.digits() {
                Some(d) => {
                    let den: num_bigint::BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    Ok(Rational::new(num, den))
                }
                None => self.err("expected a positive integer denominator"),
            }
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn var(&mut self) -> Result<Option<usize>, ParseError> {
        self.skip_ws();
        let Some(&c) = self.src.get(self.pos) else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        let start = self.pos;
        let next = self.src.get(self.pos + 1).copied();
        let name_len = match c {
            b'x' => {
                if next.is_some_and(|d| d.is_ascii_digit()) {
                    2
                } else {
                    return self.err("unknown variable 'x' (use x0..x9)");
                }
            }
            b'z' => {
                if next.is_some_and(|d| d.is_ascii_digit()) {
                    2
                } else {
                    1
                }
            }
            b's' | b't' | b'u' | b'v' | b'w' => 1,
            _ => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..end]);
                return self.err(format!("unknown variable '{name}'"));
            }
        };
        let name = std::str::from_utf8(&self.src[start..start + name_len]).expect("ascii");
        self.pos += name_len;
        Ok(Some(var_index(name).expect("name from the table")))
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            match self.digits() {
                Some(d) => d.parse().or_else(|_| self.err("exponent too large")),
                None => self.err("expected an exponent"),
            }
        } else {
            Ok(1)
        }
    }

    /// Zero or more factors var^k, with optional '*' between them. Returns
    /// None when no variable follows.
    fn monomial(&mut self, required: bool) -> Result<Option<Vec<u32>>, ParseError> {
        let mut exps = vec![0u32; NVARS];
        let mut any = false;
        loop {
            let save = self.pos;
            let star = any && self.peek() == Some(b'*');
            if star {
                self.pos += 1;
            }
            match self.var()? {
                Some(i) => {
                    exps[i] += self.power()?;
                    any = true;
                }
                None if star => return self.err("expected a variable after '*'"),
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        if !any && required {
            return self.err("expected a variable");
        }
        Ok(any.then_some(exps))
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(d) if d.is_ascii_digit() => {
                let c = self.coeff()?;
                let star = self.peek() == Some(b'*');
                if star {
                    self.pos += 1;
                }
                match self.monomial(star)? {
                    Some(e) => Ok(MultiPoly::monomial(NVARS, e, c)),
                    None => Ok(MultiPoly::constant(NVARS, c)),
                }
            }
            Some(_) => match self.monomial(true)? {
                Some(e) => Ok(MultiPoly::monomial(NVARS, e, Rational::one())),
                None => self.err("expected a term"),
            },
            None => self.err("unexpected end of input"),
        }
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let mut neg = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            neg = c == b'-';
            self.pos += 1;
        }
        let mut acc = MultiPoly::zero(NVARS);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                None => return Ok(acc),
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
    }
}

/// Parse a polynomial over the fixed variable table.
pub fn parse_poly(text: &str) -> Result<MultiPoly, ParseError> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map(|(i, _)| i).unwrap_or(0);
        return Err(ParseError {
            position: pos,
            message: "non-ASCII character".into(),
        });
    }
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .poly()
}

/// Inverse of `parse_poly` on the variable table.
pub fn print_poly(p: &MultiPoly) -> String {
    p.display_with(&VARIABLES)
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let p = parse_poly(text)?;
    if !p.is_constant() {
        return Err(ParseError {
            position: 0,
            message: format!("expected a number, got '{text}'"),
        });
    }
    Ok(p.constant_term())
}

/// Points as comma-separated numbers ("1,0,-1/2") or a JSON array of
/// numbers or strings.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, ParseError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| ParseError {
            position: e.column().saturating_sub(1),
            message: e.to_string(),
        })?;
        return json_rationals(&v);
    }
    trimmed.split(',').map(|s| parse_rational(s.trim())).collect()
}

fn json_rationals(v: &serde_json::Value) -> Result<Vec<Rational>, ParseError> {
    let arr = v.as_array().ok_or(ParseError {
        position: 0,
        message: "expected a JSON array".into(),
    })?;
    arr.iter().map(json_rational).collect()
}

fn json_rational(v: &serde_json::Value) -> Result<Rational, ParseError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(ParseError {
            position: 0,
            message: format!("expected a number, got {v}"),
        }),
    }
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError {
        position: e.column().saturating_sub(1),
        message: e.to_string(),
    }
}

/// A JSON array of arrays of polynomial strings.
pub fn parse_matrix(text: &str) -> Result<Matrix<MultiPoly>, ParseError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    matrix_from_json(&v)
}

fn matrix_from_json(v: &serde_json::Value) -> Result<Matrix<MultiPoly>, ParseError> {
    let bad = |m: &str| ParseError {
        position: 0,
        message: m.to_string(),
    };
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if rows.is_empty() {
        return Err(bad("matrix must have at least one row"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("each row must be an array"))?;
        let parsed = r
            .iter()
            .map(|e| match e {
                serde_json::Value::String(s) => parse_poly(s),
                serde_json::Value::Number(n) => parse_poly(&n.to_string()),
                _ => Err(bad("entries must be strings")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    let cols = out[0].len();
    if cols == 0 || out.iter().any(|r| r.len() != cols) {
        return Err(bad("rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(out))
}

/// A JSON array of matrices.
pub fn parse_matrix_list(text: &str) -> Result<Vec<Matrix<MultiPoly>>, ParseError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let arr = v.as_array().ok_or(ParseError {
        position: 0,
        message: "expected an array of matrices".into(),
    })?;
    arr.iter().map(matrix_from_json).collect()
}

/// A JSON array of points.
pub fn parse_point_list(text: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let arr = v.as_array().ok_or(ParseError {
        position: 0,
        message: "expected an array of points".into(),
    })?;
    arr.iter().map(json_rationals).collect()
}

/// Variables that occur in p.
pub fn used_vars(p: &MultiPoly) -> Vec<usize> {
    let mut used = vec![false; p.nvars()];
    for (e, _) in p.terms() {
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                used[i] = true;
            }
        }
    }
    (0..p.nvars()).filter(|&i| used[i]).collect()
}

/// Reindex p into the variables `keep` (in that order); other variables
/// must not occur.
pub fn restrict_vars(p: &MultiPoly, keep: &[usize]) -> Result<MultiPoly, String> {
    for i in used_vars(p) {
        if !keep.contains(&i) {
            let allowed: Vec<&str> = keep.iter().map(|&k| VARIABLES[k]).collect();
            return Err(format!(
                "variable {} is not allowed here (expected {})",
                VARIABLES[i],
                allowed.join(", ")
            ));
        }
    }
    Ok(MultiPoly::from_terms(
        keep.len(),
        p.terms()
            .map(|(e, c)| (keep.iter().map(|&k| e[k]).collect(), c.clone())),
    ))
}

/// Print a polynomial over a reindexed ring using the original names.
pub fn print_in(p: &MultiPoly, vars: &[usize]) -> String {
    let names: Vec<&str> = vars.iter().map(|&i| VARIABLES[i]).collect();
    p.display_with(&names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fibered_core::algebra::int;

    #[test]
    fn parses_examples() {
        let p = parse_poly("x0^3 - 4*x0*x1^2").unwrap();
        assert_eq!(p.coeff(&{
            let mut e = vec![0; NVARS];
            e[0] = 1;
            e[1] = 2;
            e
        }), int(-4));
        assert!(parse_poly("0").unwrap().is_zero());
        let edge = parse_poly("25*x0^4+25*x1^4+25*x2^4-34*x0^2*x1^2-34*x0^2*x2^2-34*x1^2*x2^2").unwrap();
        assert_eq!(edge.num_terms(), 6);
        assert_eq!(parse_poly("-t^2 + 1/2 z").unwrap(), parse_poly("1/2*z - t^2").unwrap());
        assert_eq!(parse_poly("2x0x1").unwrap(), parse_poly("2*x0*x1").unwrap());
        assert_eq!(parse_poly("z3 z").unwrap(), parse_poly("z3*z").unwrap());
    }

    #[test]
    fn reports_positions() {
        let e = parse_poly("x0 + y").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(e.message.contains("unknown variable 'y'"));
        let e = parse_poly("x0 + ").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_poly("3/0").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_poly("x0 ^").unwrap_err();
        assert!(e.message.contains("exponent"));
        assert!(parse_poly("x0*").is_err());
        assert!(parse_poly("x + 1").is_err());
        assert!(parse_poly("x0 2").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for s in ["x0^3 - 4*x0*x1^2", "-1/2*s*t + 3", "z^2 - z3*z + 7/3", "0", "-t"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&print_poly(&p)).unwrap(), p);
        }
    }

    #[test]
    fn points_and_matrices() {
        assert_eq!(parse_point("1, -1/2,0").unwrap(), vec![int(1), Rational::new((-1).into(), 2.into()), int(0)]);
        assert_eq!(parse_point("[\"1\", 2]").unwrap(), vec![int(1), int(2)]);
        let m = parse_matrix(r#"[["x0+x1","x2"],["x2","x0-x1"]]"#).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(parse_matrix(r#"[["x0"],["x1","x2"]]"#).is_err());
        let r = restrict_vars(&parse_poly("s^2 - 2*s*t").unwrap(), &[S, T]).unwrap();
        assert_eq!(r.nvars(), 2);
        assert!(restrict_vars(&parse_poly("s + z").unwrap(), &[S, T]).is_err());
    }
}
