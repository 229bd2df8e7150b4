//! Text syntax for terms and identities.
//!
//! ```text
//! identity := term ('=' | '≈') (term | '0')
//! term     := factor (('*')? factor)*
//! factor   := atom ('^' exponent)*
//! atom     := ident | '(' term ')'
//! exponent := 'w' | '(' 'w' ('+' int)? ')' | int | '(' int ')'
//! ```
//!
//! Identifiers start with a letter and continue with letters, digits, `_`
//! or `'`, so juxtaposed variables must be separated (`x y`, not `xy`).
//! `ω` may be written for `w`. A positive integer exponent is repetition:
//! `x^2` is the word `x x`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::term::{Identity, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct ParseError {
    /// 1-based line (always 1 for single identities).
    pub line: usize,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(alloc::format!("expected '{c}', found '{found}'")),
                None => self.error(alloc::format!("expected '{c}', found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c.is_alphabetic())
    }

    fn term(&mut self) -> PResult<Term> {
        let mut factors = Vec::new();
        loop {
            if !self.starts_factor() {
                if factors.is_empty() {
                    return match self.peek() {
                        Some(c) => {
                            self.error(alloc::format!("expected a variable or '(', found '{c}'"))
                        }
                        None => self.error("expected a variable or '(', found end of input"),
                    };
                }
                break;
            }
            factors.push(self.factor()?);
            if self.eat('*') && !self.starts_factor() {
                return self.error("expected a factor after '*'");
            }
        }
        Ok(Term::concat(factors))
    }

    fn factor(&mut self) -> PResult<Term> {
        let mut t = self.atom()?;
        while self.eat('^') {
            t = self.exponent(t)?;
        }
        Ok(t)
    }

    fn atom(&mut self) -> PResult<Term> {
        if self.eat('(') {
            let t = self.term()?;
            self.expect(')')?;
            return Ok(t);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let ok = if self.pos == start {
                c.is_alphabetic()
            } else {
                c.is_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a variable");
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        Ok(Term::Var(Var(name)))
    }

    fn is_omega(c: Option<char>) -> bool {
        matches!(c, Some('w') | Some('ω'))
    }

    fn integer(&mut self) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error("integer too large")
        })
    }

    fn repetition(&mut self, base: Term, n: u32) -> PResult<Term> {
        if n == 0 {
            return self.error("exponent must be positive");
        }
        if n > 64 {
            return self.error("finite exponent too large (max 64)");
        }
        Ok(Term::concat(crate::term::repeat(&base, n as usize)))
    }

    fn exponent(&mut self, base: Term) -> PResult<Term> {
        if Self::is_omega(self.peek()) {
            self.pos += 1;
            return Ok(Term::power(base, 0));
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.integer()?;
            return self.repetition(base, n);
        }
        self.expect('(')?;
        if Self::is_omega(self.peek()) {
            self.pos += 1;
            let k = if self.eat('+') { self.integer()? } else { 0 };
            self.expect(')')?;
            Ok(Term::power(base, k))
        } else {
            let n = self.integer()?;
            self.expect(')')?;
            self.repetition(base, n)
        }
    }

    fn identity(&mut self) -> PResult<Identity> {
        let lhs = self.term()?;
        if !(self.eat('=') || self.eat('≈')) {
            return match self.peek() {
                Some(c) => self.error(alloc::format!("expected '=', found '{c}'")),
                None => self.error("expected '=', found end of input"),
            };
        }
        if self.eat('0') {
            if !self.at_end() {
                return self.error("unexpected input after '0'");
            }
            return Ok(Identity::zero_form(lhs));
        }
        let rhs = self.term()?;
        if !self.at_end() {
            let c = self.peek().unwrap();
            return self.error(alloc::format!("unexpected '{c}'"));
        }
        Ok(Identity::new(lhs, rhs))
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if !p.at_end() {
        let c = p.peek().unwrap();
        return p.error(alloc::format!("unexpected '{c}'"));
    }
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    Parser::new(text).identity()
}

/// One identity per line; `#` starts a comment, blank lines are skipped.
/// Zero-forms are returned unexpanded.
pub fn parse_identity_set(text: &str) -> Result<Vec<Identity>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let id = parse_identity(content).map_err(|e| ParseError { line: n + 1, ..e })?;
        out.push(id);
    }
    Ok(out)
}
