//! Text format for parametric pc presentations.
//!
//! ```text
//! prime p
//! gen a p^2
//! gen b p
//! gen c p
//! pow a = c^(p-1)
//! comm b a = c
//! ```
//!
//! Exponents and relative orders are integer expressions over `p`, `nu`
//! (least quadratic non-residue mod `p`), `binom(x, y)`, `+ - * ^` and
//! parentheses. A word is `1` or `*`-separated atoms `name` / `name^expr`.
//! `#` starts a comment.

use thiserror::Error;

use super::presentation::{PcBuilder, PcPresentation};
use super::PcError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Pc(#[from] PcError),
}

fn perr(line: usize, msg: impl Into<String>) -> DslError {
    DslError::Parse { line, msg: msg.into() }
}

/// A non-blank, comment-stripped line split into keyword and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Directive<'a> {
    pub line: usize,
    pub keyword: &'a str,
    pub rest: &'a str,
}

pub fn directives(text: &str) -> Vec<Directive<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let body = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if body.is_empty() {
                return None;
            }
            let (keyword, rest) = match body.find(char::is_whitespace) {
                Some(pos) => (&body[..pos], body[pos..].trim()),
                None => (body, ""),
            };
            Some(Directive { line: k + 1, keyword, rest })
        })
        .collect()
}

/// Least quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> Option<u64> {
    if p < 3 {
        return None;
    }
    (2..p).find(|&a| {
        let mut r = 1u64;
        let mut b = a;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r == p - 1
    })
}

struct Expr<'a> {
    s: &'a [u8],
    pos: usize,
    p: u64,
    line: usize,
}

impl<'a> Expr<'a> {
    fn new(s: &'a str, p: u64, line: usize) -> Self {
        Expr { s: s.as_bytes(), pos: 0, p, line }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> DslError {
        perr(self.line, msg)
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn overflow(&self) -> DslError {
        self.err("integer overflow in expression")
    }

    fn expr(&mut self) -> Result<i128, DslError> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v = v.checked_add(self.term()?).ok_or_else(|| self.overflow())?;
            } else if self.eat(b'-') {
                v = v.checked_sub(self.term()?).ok_or_else(|| self.overflow())?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<i128, DslError> {
        let mut v = self.unary()?;
        while self.eat(b'*') {
            v = v.checked_mul(self.unary()?).ok_or_else(|| self.overflow())?;
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<i128, DslError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    /// `atom (^ unary)?`, right associative.
    fn power(&mut self) -> Result<i128, DslError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.unary()?;
            let e = u32::try_from(e).map_err(|_| self.err("negative or huge exponent in expression"))?;
            return base.checked_pow(e).ok_or_else(|| self.overflow());
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<i128, DslError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let id = self.ident().unwrap();
                id.parse::<i128>().map_err(|_| self.err(format!("bad integer `{id}`")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let id = self.ident().unwrap();
                match id {
                    "p" => Ok(self.p as i128),
                    "nu" => least_nonresidue(self.p)
                        .map(|v| v as i128)
                        .ok_or_else(|| self.err("`nu` needs an odd prime")),
                    "binom" => {
                        if !self.eat(b'(') {
                            return Err(self.err("expected `(` after binom"));
                        }
                        let n = self.expr()?;
                        if !self.eat(b',') {
                            return Err(self.err("expected `,` in binom"));
                        }
                        let k = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.err("expected `)`"));
                        }
                        binom(n, k).ok_or_else(|| self.overflow())
                    }
                    other => Err(self.err(format!("unknown symbol `{other}`"))),
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn finish(&mut self) -> Result<(), DslError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("trailing `{}`", c as char))),
        }
    }
}

fn binom(n: i128, k: i128) -> Option<i128> {
    if k < 0 || n < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Evaluates an integer expression at prime `p`.
pub fn eval_expr(text: &str, p: u64, line: usize) -> Result<i128, DslError> {
    let mut e = Expr::new(text, p, line);
    let v = e.expr()?;
    e.finish()?;
    Ok(v)
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}

/// Parses `1` or `name^expr * name * ...` into named letters.
pub fn parse_word(text: &str, p: u64, line: usize) -> Result<Vec<(String, i64)>, DslError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for atom in split_top(text, '*') {
        let atom = atom.trim();
        if atom.is_empty() {
            return Err(perr(line, "empty factor in word"));
        }
        if atom == "1" {
            continue;
        }
        let (name, exp) = match atom.find('^') {
            Some(pos) => {
                let v = eval_expr(&atom[pos + 1..], p, line)?;
                let v = i64::try_from(v).map_err(|_| perr(line, "exponent out of range"))?;
                (atom[..pos].trim(), v)
            }
            None => (atom, 1),
        };
        if !is_name(name) {
            return Err(perr(line, format!("bad generator name `{name}`")));
        }
        out.push((name.to_string(), exp));
    }
    Ok(out)
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn relative_exponent(value: i128, p: u64, line: usize) -> Result<u32, DslError> {
    let mut v = value;
    let mut e = 0u32;
    let p = p as i128;
    while v > 1 && v % p == 0 {
        v /= p;
        e += 1;
    }
    if v != 1 || e == 0 {
        return Err(perr(line, format!("relative order {value} is not a positive power of {p}")));
    }
    Ok(e)
}

/// Builds a presentation from directives, instantiating `p`. Directives with
/// keywords outside `prime gen pow comm` are rejected.
pub fn build_from_directives(dirs: &[Directive<'_>], p: u64) -> Result<PcPresentation, DslError> {
    let mut b = PcBuilder::new(p);
    for d in dirs {
        let line = d.line;
        match d.keyword {
            "prime" => {
                let v = eval_expr(d.rest, p, line)?;
                if v != p as i128 {
                    return Err(perr(line, format!("prime {v} does not match p = {p}")));
                }
            }
            "gen" => {
                let mut it = d.rest.splitn(2, char::is_whitespace);
                let name = it.next().unwrap_or("");
                let ord = it.next().map(str::trim).unwrap_or("");
                if !is_name(name) || ord.is_empty() {
                    return Err(perr(line, "expected `gen <name> <relative-order>`"));
                }
                let e = relative_exponent(eval_expr(ord, p, line)?, p, line)?;
                b = b.gen(name, e);
            }
            "pow" | "comm" => {
                let (lhs, rhs) = d
                    .rest
                    .split_once('=')
                    .ok_or_else(|| perr(line, format!("expected `=` in {} relation", d.keyword)))?;
                let names: Vec<&str> = lhs.split_whitespace().collect();
                let want = if d.keyword == "pow" { 1 } else { 2 };
                if names.len() != want || !names.iter().all(|n| is_name(n)) {
                    return Err(perr(
                        line,
                        if want == 1 {
                            "expected `pow <name> = <word>`"
                        } else {
                            "expected `comm <name> <name> = <word>`"
                        },
                    ));
                }
                for n in &names {
                    if b.generator_index(n).is_none() {
                        return Err(perr(line, format!("unknown generator `{n}`")));
                    }
                }
                let word = parse_word(rhs, p, line)?;
                for (n, _) in &word {
                    if b.generator_index(n).is_none() {
                        return Err(perr(line, format!("unknown generator `{n}`")));
                    }
                }
                let word: Vec<(&str, i64)> = word.iter().map(|(n, e)| (n.as_str(), *e)).collect();
                b = if want == 1 {
                    b.pow(names[0], &word)
                } else {
                    b.comm(names[0], names[1], &word)
                };
            }
            other => return Err(perr(line, format!("unknown statement `{other}`"))),
        }
    }
    Ok(b.build()?)
}

/// Parses a presentation without checking consistency.
pub fn parse_unchecked(text: &str, p: u64) -> Result<PcPresentation, DslError> {
    build_from_directives(&directives(text), p)
}

/// Parses a presentation and runs the consistency check.
pub fn parse(text: &str, p: u64) -> Result<PcPresentation, DslError> {
    let pres = parse_unchecked(text, p)?;
    pres.ensure_consistent()?;
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(eval_expr("p^2 - 1", 3, 1).unwrap(), 8);
        assert_eq!(eval_expr("-binom(p, 2)", 5, 1).unwrap(), -10);
        assert_eq!(eval_expr("2*(p+1)", 3, 1).unwrap(), 8);
        assert_eq!(eval_expr("nu", 7, 1).unwrap(), 3);
        assert_eq!(eval_expr("p^2^1", 3, 1).unwrap(), 9);
        assert!(eval_expr("nu", 2, 4).is_err());
        assert!(eval_expr("q", 3, 1).is_err());
    }

    #[test]
    fn words() {
        let w = parse_word("a^2 * b^(p-1) * c", 3, 1).unwrap();
        assert_eq!(w, vec![("a".into(), 2), ("b".into(), 2), ("c".into(), 1)]);
        assert!(parse_word("1", 3, 1).unwrap().is_empty());
        assert!(parse_word("a * * b", 3, 1).is_err());
    }

    #[test]
    fn malformed_comm_reports_line() {
        let text = "prime p\ngen a p\ngen b p\ncomm a = b\n";
        match parse(text, 3) {
            Err(DslError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn relative_order_must_be_power_of_p() {
        assert!(parse("gen a 6", 3).is_err());
        assert!(parse("gen a 1", 3).is_err());
        assert_eq!(parse("gen a p^2", 3).unwrap().order_exponent(), 2);
    }

    #[test]
    fn round_trip_through_display() {
        let text = "prime p\ngen a p\ngen b p\ngen c p\ncomm b a = c\npow a = c^2\n";
        let g = parse(text, 5).unwrap();
        let again = parse(&g.to_string(), 5).unwrap();
        assert_eq!(g, again);
    }
}
