//! Parser for structure equations such as `(0,0,-e^{12},e^{13},(a-1)e^{14}+e^{23})`.
//!
//! Entry `t` of the tuple is `de^t`. Indices are single digits; the form
//! `e^{i,j}` is reserved for wider indices and currently rejected.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::AlgebraError;
use crate::exactnum::rational::Rational;

/// One term `coeff · e^{ij}` of `de^k`, with indices 1-based as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialTerm {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Slash,
    Star,
    Num(u64),
    Ident(String),
    Basis(usize, usize),
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn syntax(&self, at: usize, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            pos: at,
            msg: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, AlgebraError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let at = self.offset();
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let simple = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                '+' => Some(Tok::Plus),
                '-' | '−' => Some(Tok::Minus),
                '/' => Some(Tok::Slash),
                '*' => Some(Tok::Star),
                _ => None,
            };
            if let Some(t) = simple {
                self.pos += 1;
                out.push((at, t));
                continue;
            }
            if c.is_ascii_digit() {
                let start = self.pos;
                while self.peek().is_some_and(|d| d.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                let n = text.parse().map_err(|_| self.syntax(at, "number too large"))?;
                out.push((at, Tok::Num(n)));
                continue;
            }
            if c == 'e' && self.chars.get(self.pos + 1).map(|&(_, c)| c) == Some('^') {
                out.push((at, self.basis(at)?));
                continue;
            }
            if c.is_alphabetic() {
                let start = self.pos;
                self.pos += 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                    if !self.peek().is_some_and(|d| d.is_ascii_digit()) {
                        return Err(self.syntax(at, "expected digits after '_'"));
                    }
                    while self.peek().is_some_and(|d| d.is_ascii_digit()) {
                        self.pos += 1;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                out.push((at, Tok::Ident(name)));
                continue;
            }
            return Err(self.syntax(at, format!("unexpected character {c:?}")));
        }
        Ok(out)
    }

    fn basis(&mut self, at: usize) -> Result<Tok, AlgebraError> {
        self.pos += 2;
        if self.peek() != Some('{') {
            return Err(self.syntax(self.offset(), "expected '{' after 'e^'"));
        }
        self.pos += 1;
        let mut digits = Vec::new();
        loop {
            match self.peek() {
                Some('}') => {
                    self.pos += 1;
                    break;
                }
                Some(',') => return Err(AlgebraError::ReservedSyntax { pos: self.offset() }),
                Some(d) if d.is_ascii_digit() => {
                    digits.push(d.to_digit(10).unwrap() as usize);
                    self.pos += 1;
                }
                Some(c) if c.is_whitespace() => self.pos += 1,
                _ => return Err(self.syntax(self.offset(), "expected two digits in e^{..}")),
            }
        }
        if digits.len() != 2 {
            return Err(self.syntax(at, "expected exactly two digits in e^{..}"));
        }
        if digits[0] == digits[1] {
            return Err(AlgebraError::RepeatedIndex { pos: at, index: digits[0] });
        }
        Ok(Tok::Basis(digits[0], digits[1]))
    }
}

struct Parser<'p> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    params: &'p BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), AlgebraError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn lookup(&self, name: &str) -> Result<Rational, AlgebraError> {
        self.params
            .get(name)
            .cloned()
            .ok_or_else(|| AlgebraError::UnboundParameter(name.to_string()))
    }

    fn number(&mut self) -> Result<Rational, AlgebraError> {
        let Some(Tok::Num(n)) = self.bump() else {
            return Err(self.syntax("expected number"));
        };
        let mut value = Rational::from_integer(n.into());
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Num(d)) = self.bump() else {
                return Err(self.syntax("expected denominator"));
            };
            if d == 0 {
                return Err(self.syntax("zero denominator"));
            }
            value /= Rational::from_integer(d.into());
        }
        Ok(value)
    }

    /// `[number] ['*'] [ident]`, at least one of the two.
    fn atom(&mut self) -> Result<Rational, AlgebraError> {
        let mut value = Rational::one();
        let mut seen = false;
        if matches!(self.peek(), Some(Tok::Num(_))) {
            value = self.number()?;
            seen = true;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !matches!(self.peek(), Some(Tok::Ident(_))) {
                    return Err(self.syntax("expected parameter after '*'"));
                }
            }
        }
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            self.pos += 1;
            value *= self.lookup(&name)?;
            seen = true;
        }
        if !seen {
            return Err(self.syntax("expected number or parameter"));
        }
        Ok(value)
    }

    /// Linear expression inside parentheses.
    fn linear(&mut self) -> Result<Rational, AlgebraError> {
        let mut total = Rational::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) if !first => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let v = self.atom()?;
            total += if neg { -v } else { v };
            first = false;
        }
        Ok(total)
    }

    /// Coefficient in front of a basis element; one when absent.
    fn coefficient(&mut self) -> Result<Rational, AlgebraError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.linear()?;
                self.expect(Tok::RParen, "')'")?;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                }
                Ok(v)
            }
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) => {
                let v = self.atom()?;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                }
                Ok(v)
            }
            _ => Ok(Rational::one()),
        }
    }

    fn entry(&mut self, k: usize, out: &mut Vec<DifferentialTerm>) -> Result<(), AlgebraError> {
        if self.peek() == Some(&Tok::Num(0)) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(Tok::Comma) | Some(Tok::RParen) | None) {
                return Ok(());
            }
            self.pos = save;
        }
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) if !first => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let at = self.offset();
            let coeff = self.coefficient()?;
            let Some(Tok::Basis(a, b)) = self.bump() else {
                self.pos -= 1;
                return Err(self.syntax("expected e^{ij}"));
            };
            let coeff = if neg { -coeff } else { coeff };
            let (i, j, coeff) = if a < b { (a, b, coeff) } else { (b, a, -coeff) };
            if coeff.is_zero() {
                return Err(AlgebraError::ZeroCoefficient { k, i, j });
            }
            if out.iter().any(|t| t.k == k && t.i == i && t.j == j) {
                return Err(AlgebraError::DuplicateTerm { pos: at, k, i, j });
            }
            out.push(DifferentialTerm { k, i, j, coeff });
            first = false;
        }
        Ok(())
    }
}

/// Parses the tuple of differentials. Outer parentheses are optional.
pub fn parse_differential(text: &str, params: &BTreeMap<String, Rational>) -> Result<(usize, Vec<DifferentialTerm>), AlgebraError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        params,
    };
    let wrapped = p.peek() == Some(&Tok::LParen) && outer_parens(&p.toks);
    if wrapped {
        p.pos += 1;
    }
    let mut terms = Vec::new();
    let mut k = 1;
    loop {
        if k > 9 {
            return Err(p.syntax("at most nine entries are supported"));
        }
        p.entry(k, &mut terms)?;
        match p.peek() {
            Some(Tok::Comma) => {
                p.pos += 1;
                k += 1;
            }
            Some(Tok::RParen) if wrapped => {
                p.pos += 1;
                break;
            }
            None if !wrapped => break,
            _ => return Err(p.syntax("expected ',' or end of tuple")),
        }
    }
    if p.peek().is_some() {
        return Err(p.syntax("trailing input"));
    }
    for t in &terms {
        for idx in [t.i, t.j] {
            if idx == 0 || idx > k {
                return Err(AlgebraError::IndexOutOfRange { index: idx, dim: k });
            }
        }
    }
    Ok((k, terms))
}

/// True when the first '(' is matched by the final token.
fn outer_parens(toks: &[(usize, Tok)]) -> bool {
    let mut depth = 0usize;
    for (n, (_, t)) in toks.iter().enumerate() {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return n == toks.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn no_params() -> BTreeMap<String, Rational> {
        BTreeMap::new()
    }

    #[test]
    fn heisenberg() {
        let (n, terms) = parse_differential("(0,0,e^{12})", &no_params()).unwrap();
        assert_eq!(n, 3);
        assert_eq!(terms, vec![DifferentialTerm { k: 3, i: 1, j: 2, coeff: int(1) }]);
    }

    #[test]
    fn unwrapped_with_signs_and_spaces() {
        let (n, terms) = parse_differential("0,0,0,- e^{12},e^{23}-e^{14}", &no_params()).unwrap();
        assert_eq!(n, 5);
        assert_eq!(terms[0].coeff, int(-1));
        assert_eq!((terms[2].i, terms[2].j, terms[2].coeff.clone()), (1, 4, int(-1)));
    }

    #[test]
    fn parameters_and_fractions() {
        let params = BTreeMap::from([("a".to_string(), int(2))]);
        let (_, terms) = parse_differential("(0,0,0,(a-1)e^{12},ae^{13},-1/2e^{23},(1-a)*e^{16}+3/2a e^{25})", &params).unwrap();
        let coeffs: Vec<Rational> = terms.iter().map(|t| t.coeff.clone()).collect();
        assert_eq!(coeffs, vec![int(1), int(2), rat(-1, 2), int(-1), int(3)]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_differential("(0,e^{11})", &no_params()), Err(AlgebraError::RepeatedIndex { .. })));
        assert!(matches!(parse_differential("(0,e^{13})", &no_params()), Err(AlgebraError::IndexOutOfRange { .. })));
        assert!(matches!(parse_differential("(0,0,e^{12}+e^{12})", &no_params()), Err(AlgebraError::DuplicateTerm { .. })));
        assert!(matches!(parse_differential("(0,0,be^{12})", &no_params()), Err(AlgebraError::UnboundParameter(_))));
        assert!(matches!(parse_differential("(0,0,e^{1,2})", &no_params()), Err(AlgebraError::ReservedSyntax { .. })));
        assert!(matches!(parse_differential("(0,0,e^{12}", &no_params()), Err(AlgebraError::Syntax { .. })));
        let params = BTreeMap::from([("a".to_string(), int(1))]);
        assert!(matches!(parse_differential("(0,0,(a-1)e^{12})", &params), Err(AlgebraError::ZeroCoefficient { .. })));
    }
}
