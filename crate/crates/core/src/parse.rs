//! Recursive-descent parser and canonical printer for polynomial text and
//! operator-word element expressions.
//!
//! Polynomials:
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational ('*' varpow)* | varpow ('*' varpow)*
//! varpow   := ident ('^' uint)?
//! rational := uint ('/' uint)?
//! ```
//!
//! Elements (letters of a word apply right to left, so `x*dt^2 @ fs` is
//! `x(dt(dt(f^s)))`):
//!
//! ```text
//! element := ['+'|'-'] eterm (('+'|'-') eterm)*
//! eterm   := factor ('*' factor)* '@' 'fs' | [factor ('*' factor)* '*'] 'fs'
//! factor  := rational | letter ('^' uint)?
//! letter  := x | y | dx | dy | t | tinv | dt | s
//! ```
//!
//! Leading rationals and powers of `s` form the coefficient; parenthesized
//! products are not part of the grammar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Poly, Rat, Var};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'@' => out.push((start, Tok::At)),
            b'(' | b')' => return err(start, "parentheses are not supported; expand products"),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return err(start, format!("unexpected character '{ch}'"));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Result<Cursor, ParseError> {
        let toks = lex(text)?;
        if toks.is_empty() {
            return err(0, "empty input");
        }
        Ok(Cursor { toks, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => err(at, "expected an unsigned integer"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let at = self.offset();
        let n = self.uint()?;
        match u32::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => err(at, format!("exponent {n} exceeds {MAX_EXPONENT}")),
        }
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let num = self.uint()?;
        if self.eat(&Tok::Slash) {
            let at = self.offset();
            let den = self.uint()?;
            if den.is_zero() {
                return err(at, "zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    /// Optional leading sign, or a mandatory separating sign.
    fn sign(&mut self, required: bool) -> Result<Option<bool>, ParseError> {
        if self.eat(&Tok::Plus) {
            return Ok(Some(false));
        }
        if self.eat(&Tok::Minus) {
            return Ok(Some(true));
        }
        if required && !self.done() {
            let at = self.offset();
            return err(at, "expected '+' or '-'");
        }
        Ok(None)
    }
}

/// One term `coeff * v1^e1 * v2^e2 ...` of a polynomial expression.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTerm {
    pub coeff: Rat,
    pub powers: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyAst {
    pub terms: Vec<PolyTerm>,
}

/// Parse a polynomial over the declared variable names.
pub fn parse_poly(text: &str, declared: &[&str]) -> Result<PolyAst, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut terms = Vec::new();
    let mut first = true;
    while !cur.done() {
        let negative = cur.sign(!first)?.unwrap_or(false);
        first = false;
        let mut term = poly_term(&mut cur, declared)?;
        if negative {
            term.coeff = -term.coeff;
        }
        terms.push(term);
    }
    Ok(PolyAst { terms })
}

fn poly_term(cur: &mut Cursor, declared: &[&str]) -> Result<PolyTerm, ParseError> {
    let mut coeff = Rat::one();
    let mut powers = Vec::new();
    match cur.peek() {
        Some(Tok::Int(_)) => coeff = cur.rational()?,
        Some(Tok::Ident(_)) => powers.push(varpow(cur, declared)?),
        _ => {
            let at = cur.offset();
            return err(at, "expected a number or a variable");
        }
    }
    while cur.eat(&Tok::Star) {
        powers.push(varpow(cur, declared)?);
    }
    Ok(PolyTerm { coeff, powers })
}

fn varpow(cur: &mut Cursor, declared: &[&str]) -> Result<(String, u32), ParseError> {
    let at = cur.offset();
    let name = match cur.next() {
        Some(Tok::Ident(name)) => name,
        _ => return err(at, "expected a variable"),
    };
    if !declared.contains(&name.as_str()) {
        return err(at, format!("unknown variable '{name}'"));
    }
    Ok((name, cur.exponent()?))
}

impl PolyAst {
    /// Evaluate as a polynomial in `var`; every variable must be `var`.
    pub fn to_poly(&self, var: Var) -> Result<Poly, ParseError> {
        let name = var.to_string();
        let mut acc = Poly::zero().with_var(var);
        for term in &self.terms {
            let mut deg = 0u32;
            for (v, e) in &term.powers {
                if *v != name {
                    return err(0, format!("variable '{v}' in a polynomial over {name}"));
                }
                deg += e;
            }
            let mut coeffs = vec![Rat::zero(); deg as usize + 1];
            coeffs[deg as usize] = term.coeff.clone();
            acc = &acc + &Poly::from_coeffs(var, coeffs);
        }
        Ok(acc.with_var(var))
    }
}

/// Parse text as a polynomial in a single variable.
pub fn parse_poly_in(text: &str, var: Var) -> Result<Poly, ParseError> {
    let name = var.to_string();
    parse_poly(text, &[name.as_str()])?.to_poly(var)
}

/// Parse a polynomial in whichever single variable `s`, `s1`, ... it uses.
pub fn parse_poly_any(text: &str) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut var: Option<(usize, Var)> = None;
    for (at, t) in &toks {
        if let Tok::Ident(name) = t {
            let v: Var = name.parse().map_err(|m: String| ParseError { position: *at, message: m })?;
            match var {
                Some((_, prev)) if prev != v => return err(*at, format!("mixed variables {prev} and {v}")),
                _ => var = Some((*at, v)),
            }
        }
    }
    parse_poly_in(text, var.map_or(Var::S, |(_, v)| v))
}

fn rat_text(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical descending-degree text, e.g. `s^2 + 3/2*s + 1`.
pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let var = p.var().to_string();
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        match k {
            0 => out.push_str(&rat_text(&mag)),
            _ => {
                if !mag.is_one() {
                    out.push_str(&rat_text(&mag));
                    out.push('*');
                }
                out.push_str(&var);
                if k > 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
    }
    out
}

pub fn print_rat(c: &Rat) -> String {
    if c.is_negative() {
        format!("-{}", rat_text(&c.abs()))
    } else {
        rat_text(c)
    }
}

pub const LETTERS: [&str; 8] = ["x", "y", "dx", "dy", "t", "tinv", "dt", "s"];

#[derive(Clone, Debug, PartialEq)]
pub enum LetterAst {
    Named(String),
    Scalar(Rat),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementTerm {
    /// Coefficient polynomial in `s`, applied after the word.
    pub coeff: Poly,
    /// Letters as written, leftmost first; application is right to left.
    pub word: Vec<LetterAst>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementAst {
    pub terms: Vec<ElementTerm>,
}

pub fn parse_element(text: &str) -> Result<ElementAst, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut terms = Vec::new();
    let mut first = true;
    while !cur.done() {
        let negative = cur.sign(!first)?.unwrap_or(false);
        first = false;
        let mut term = element_term(&mut cur)?;
        if negative {
            term.coeff = -&term.coeff;
        }
        terms.push(term);
    }
    Ok(ElementAst { terms })
}

fn element_term(cur: &mut Cursor) -> Result<ElementTerm, ParseError> {
    let mut coeff = Poly::one();
    let mut word = Vec::new();
    let mut in_coeff = true;
    loop {
        let at = cur.offset();
        match cur.peek().cloned() {
            Some(Tok::Int(_)) => {
                let c = cur.rational()?;
                if in_coeff {
                    coeff = coeff.scale(&c);
                } else {
                    word.push(LetterAst::Scalar(c));
                }
            }
            Some(Tok::Ident(name)) if name == "fs" => {
                cur.next();
                return Ok(ElementTerm { coeff, word });
            }
            Some(Tok::Ident(name)) => {
                cur.next();
                if !LETTERS.contains(&name.as_str()) {
                    return err(at, format!("unknown operator letter '{name}'"));
                }
                let e = cur.exponent()?;
                if name == "s" && in_coeff {
                    coeff = &coeff * &Poly::var_poly(Var::S).pow(e);
                } else {
                    in_coeff = false;
                    word.extend((0..e).map(|_| LetterAst::Named(name.clone())));
                }
            }
            _ => return err(at, "expected a number, an operator letter or 'fs'"),
        }
        if cur.eat(&Tok::At) {
            let at = cur.offset();
            return match cur.next() {
                Some(Tok::Ident(name)) if name == "fs" => Ok(ElementTerm { coeff, word }),
                _ => err(at, "expected 'fs' after '@'"),
            };
        }
        if !cur.eat(&Tok::Star) {
            let at = cur.offset();
            return err(at, "expected '*' or '@ fs'");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn parse_poly_examples() {
        let p = parse_poly_in("3/2*s^2 - s + 1", Var::S).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(-1), rat(3, 2)]);

        let e = parse_poly_in("s*(s-1)", Var::S).unwrap_err();
        assert_eq!(e.position, 2);

        let e = parse_poly_in("", Var::S).unwrap_err();
        assert_eq!(e.message, "empty input");
        assert_eq!(parse_poly_in("   ", Var::S).unwrap_err().message, "empty input");
    }

    #[test]
    fn rejects_undeclared_and_malformed() {
        let e = parse_poly_in("s + t", Var::S).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("unknown variable"));
        assert!(parse_poly_in("s +", Var::S).is_err());
        assert!(parse_poly_in("1/0", Var::S).is_err());
        assert!(parse_poly_in("s s", Var::S).is_err());
        assert!(parse_poly_in("s^99999999999999", Var::S).is_err());
        assert!(parse_poly_in("2*3", Var::S).is_err());
    }

    #[test]
    fn parses_leading_sign_and_other_vars() {
        assert_eq!(parse_poly_in("-s + 1", Var::S).unwrap(), Poly::from_ints(Var::S, &[1, -1]));
        let p = parse_poly_any("s2^2 + 2*s2").unwrap();
        assert_eq!(p.var(), Var(2));
        assert!(parse_poly_any("s1 + s2").is_err());
    }

    #[test]
    fn print_examples() {
        let p = Poly::from_coeffs(Var::S, vec![int(1), rat(3, 2), int(1)]);
        assert_eq!(print_poly(&p), "s^2 + 3/2*s + 1");
        assert_eq!(print_poly(&Poly::zero()), "0");
        // (2s+1)(2s+2)/4
        let q = (&Poly::from_ints(Var::S, &[1, 2]) * &Poly::from_ints(Var::S, &[2, 2])).monic();
        assert_eq!(print_poly(&q), "s^2 + 3/2*s + 1/2");
        assert_eq!(print_poly(&Poly::from_ints(Var::S, &[0, -1])), "-s");
        assert_eq!(print_poly(&Poly::from_coeffs(Var(3), vec![rat(-1, 2), int(0), int(-2)])), "-2*s3^2 - 1/2");
    }

    #[test]
    fn element_examples() {
        let e = parse_element("x*dt^2 @ fs").unwrap();
        let names: Vec<_> = e.terms[0].word.to_vec();
        assert_eq!(
            names,
            vec![
                LetterAst::Named("x".into()),
                LetterAst::Named("dt".into()),
                LetterAst::Named("dt".into())
            ]
        );
        assert!(e.terms[0].coeff.is_one());

        let e = parse_element("tinv^2 @ fs").unwrap();
        assert_eq!(e.terms[0].word, vec![LetterAst::Named("tinv".into()); 2]);

        let e = parse_element("fs").unwrap();
        assert!(e.terms[0].word.is_empty());

        let e = parse_element("3/2*s^2*x @ fs - 2*fs").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].coeff, Poly::from_coeffs(Var::S, vec![int(0), int(0), rat(3, 2)]));
        assert_eq!(e.terms[1].coeff, Poly::constant(int(-2)));
    }

    #[test]
    fn element_errors() {
        assert!(parse_element("x*dz @ fs").is_err());
        assert!(parse_element("x*dt").is_err());
        assert!(parse_element("x @ gs").is_err());
        assert!(parse_element("x dt @ fs").is_err());
        assert!(parse_element("").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-30i64..=30, 1i64..=9), 0..7)
            .prop_map(|c| Poly::from_coeffs(Var::S, c.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            prop_assert_eq!(parse_poly_in(&print_poly(&p), Var::S).unwrap(), p);
        }
    }

    proptest! {
        #[test]
        fn parser_is_total(bytes in prop::collection::vec(any::<u8>(), 0..40)) {
            let text = String::from_utf8_lossy(&bytes);
            let _ = parse_poly_in(&text, Var::S);
            let _ = parse_element(&text);
            let _ = parse_poly_any(&text);
        }

        #[test]
        fn parser_is_total_on_grammar_soup(
            parts in prop::collection::vec(
                prop_oneof![Just("s"), Just("x"), Just("dt"), Just("^"), Just("*"), Just("+"),
                            Just("-"), Just("/"), Just("@"), Just("fs"), Just("2"), Just("0"), Just(" ")],
                0..16)
        ) {
            let text: String = parts.concat();
            let _ = parse_poly_in(&text, Var::S);
            let _ = parse_element(&text);
        }
    }
}
