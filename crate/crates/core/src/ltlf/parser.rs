//! Recursive-descent parser for formulas and `.mpl` files.
//!
//! Precedence, tightest first: unary (`!`, `X`, `WX`, `F`, `G`), then `U`/`R`
//! (right-associative), `&`, `|`, `->` (right-associative), `<->`.

use std::collections::HashSet;

use super::formula::Formula;
use super::spec::{Goal, Spec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    WeakNext,
    Eventually,
    Globally,
    Until,
    Release,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            '!' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Tok::Iff, 3)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "WX" => Tok::WeakNext,
                    "F" => Tok::Eventually,
                    "G" => Tok::Globally,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    _ => Tok::Ident(word),
                };
                (tok, j - i)
            }
            other => return Err(syntax(line, column, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, line, column });
        i += len;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    alphabet: Option<&'a HashSet<String>>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        syntax(t.line, t.column, message)
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.advance();
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.advance();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut ops = vec![self.and()?];
        while *self.peek() == Tok::Or {
            self.advance();
            ops.push(self.and()?);
        }
        Ok(Formula::or_all(ops))
    }

    fn and(&mut self) -> Result<Formula> {
        let mut ops = vec![self.binary_temporal()?];
        while *self.peek() == Tok::And {
            self.advance();
            ops.push(self.binary_temporal()?);
        }
        Ok(Formula::and_all(ops))
    }

    fn binary_temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.advance();
                let rhs = self.binary_temporal()?;
                Ok(Formula::until(lhs, rhs))
            }
            Tok::Release => {
                self.advance();
                let rhs = self.binary_temporal()?;
                Ok(Formula::release(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let ctor: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Next => Formula::next,
            Tok::WeakNext => Formula::weak_next,
            Tok::Eventually => Formula::eventually,
            Tok::Globally => Formula::globally,
            _ => return self.primary(),
        };
        self.advance();
        Ok(ctor(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula> {
        let t = self.advance();
        match t.tok {
            Tok::True => Ok(Formula::tt()),
            Tok::False => Ok(Formula::ff()),
            Tok::Ident(name) => {
                if let Some(alphabet) = self.alphabet {
                    if !alphabet.contains(&name) {
                        return Err(Error::UndeclaredAtom(name));
                    }
                }
                Ok(Formula::atom(&name))
            }
            Tok::LParen => {
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error_here("expected `)`"));
                }
                self.advance();
                Ok(inner)
            }
            Tok::End => Err(syntax(t.line, t.column, "unexpected end of formula")),
            other => Err(syntax(t.line, t.column, format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_at(
    text: &str,
    alphabet: Option<&HashSet<String>>,
    line: usize,
    col0: usize,
) -> Result<Formula> {
    if text.trim().is_empty() {
        return Err(syntax(line, col0, "empty formula"));
    }
    let mut p = Parser {
        tokens: lex(text, line, col0)?,
        pos: 0,
        alphabet,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here("trailing input"));
    }
    Ok(f)
}

/// Parses a single formula. When `alphabet` is given, every atom must be
/// declared in it.
pub fn parse_formula(text: &str, alphabet: Option<&HashSet<String>>) -> Result<Formula> {
    parse_at(text, alphabet, 1, 1)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "true" | "false" | "X" | "WX" | "F" | "G" | "U" | "R")
}

/// Parses an `.mpl` file. Declared atoms are separated by commas
/// or whitespace:
///
/// ```text
/// INPUTS: x1, x2
/// OUTPUTS: y1 y2
/// GOAL g1: F y1   # comment
/// ```
pub fn parse_spec(text: &str) -> Result<Spec> {
    let mut inputs: Vec<String> = Vec::new();
    let mut outputs: Vec<String> = Vec::new();
    let mut raw_goals: Vec<(String, usize, usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        if let Some(rest) = body.strip_prefix("INPUTS:") {
            declare(&mut inputs, rest, line_no)?;
        } else if let Some(rest) = body.strip_prefix("OUTPUTS:") {
            declare(&mut outputs, rest, line_no)?;
        } else if let Some(rest) = body.strip_prefix("GOAL") {
            let colon = rest
                .find(':')
                .ok_or_else(|| syntax(line_no, indent + 5, "expected `GOAL <label>: <formula>`"))?;
            let label = rest[..colon].trim();
            if !is_identifier(label) {
                return Err(syntax(line_no, indent + 5, format!("invalid goal label `{label}`")));
            }
            let formula_col = indent + 4 + colon + 2;
            raw_goals.push((
                label.to_string(),
                line_no,
                formula_col,
                rest[colon + 1..].to_string(),
            ));
        } else {
            return Err(syntax(line_no, indent + 1, "expected INPUTS:, OUTPUTS: or GOAL"));
        }
    }

    for x in &inputs {
        if outputs.contains(x) {
            return Err(Error::Partition(x.clone()));
        }
    }
    let alphabet: HashSet<String> = inputs.iter().chain(&outputs).cloned().collect();
    let mut goals: Vec<Goal> = Vec::new();
    for (label, line_no, col, text) in raw_goals {
        if goals.iter().any(|g| g.label == label) {
            return Err(Error::DuplicateLabel(label));
        }
        let formula = parse_at(&text, Some(&alphabet), line_no, col)?;
        goals.push(Goal { label, formula });
    }
    Spec::new(inputs, outputs, goals)
}

fn declare(into: &mut Vec<String>, rest: &str, line: usize) -> Result<()> {
    let names = rest
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|n| !n.is_empty());
    for name in names {
        if !is_identifier(name) {
            return Err(syntax(line, 1, format!("invalid atom name `{name}`")));
        }
        if into.iter().any(|n| n == name) {
            return Err(Error::DuplicateAtom(name.to_string()));
        }
        into.push(name.to_string());
    }
    Ok(())
}
