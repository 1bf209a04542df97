// Copyright 2026 The stored-light Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Minimal arithmetic for angle inputs: numbers, `pi`, `+ - * /`, unary
//! minus and parentheses.

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Num(f64),
    Pi,
    Op(u8),
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'+' | b'-' | b'*' | b'/' => {
                out.push(Token::Op(c));
                i += 1;
            }
            b'(' => {
                out.push(Token::Open);
                i += 1;
            }
            b')' => {
                out.push(Token::Close);
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent, only when followed by digits
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v = text
                    .parse::<f64>()
                    .map_err(|_| CliError::Parse(format!("bad number '{text}' in '{src}'")))?;
                out.push(Token::Num(v));
            }
            _ if src[i..].starts_with("pi") => {
                out.push(Token::Pi);
                i += 2;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(CliError::Parse(format!("unexpected '{ch}' in '{src}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn fail(&self, what: &str) -> CliError {
        CliError::Parse(format!("{what} in '{}'", self.src))
    }

    fn expr(&mut self) -> Result<f64, CliError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ (b'+' | b'-'))) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64, CliError> {
        let mut acc = self.unary()?;
        while let Some(Token::Op(op @ (b'*' | b'/'))) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<f64, CliError> {
        match self.peek() {
            Some(Token::Op(b'-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op(b'+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64, CliError> {
        let tok = self.peek().ok_or_else(|| self.fail("unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(v),
            Token::Pi => Ok(std::f64::consts::PI),
            Token::Open => {
                let v = self.expr()?;
                if self.peek() != Some(Token::Close) {
                    return Err(self.fail("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.fail("expected a number, 'pi' or '('")),
        }
    }
}

/// Evaluates an expression such as `3*pi/8` or `-(pi - 0.5)/2`.
///
/// Non-finite results (`1/0`) are rejected.
pub fn eval_expr(src: &str) -> Result<f64, CliError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(CliError::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.fail("trailing input"));
    }
    if !v.is_finite() {
        return Err(CliError::Parse(format!("'{src}' is not finite")));
    }
    Ok(v)
}
