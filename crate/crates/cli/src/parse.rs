//! Lexer and recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := factor ('^' '-'? int)?
//! factor := int | ident | 'u_' int | word | call | '(' expr ')'
//! word   := '[' expr ('|' expr)* ']'
//! call   := ident '(' expr (',' expr)* ')'
//! ```

use std::fmt;

use mrb_core::Rational;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: ", self.pos)?;
        if let Some(m) = &self.message {
            return write!(f, "{m}");
        }
        let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        let expected = match list.as_slice() {
            [] => String::from("nothing"),
            [one] => one.to_string(),
            [init @ .., last] => format!("{} or {last}", init.join(", ")),
        };
        write!(f, "expected {expected}, found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    U(usize),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::U(n) => write!(f, "`u_{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: &str = "+-*/^()[]|,";

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = src.chars().peekable();
    let advance = |pos: &mut Pos, c: char| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
        } else if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                text.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            let n = text.parse().map_err(|_| ParseError {
                pos: start,
                found: format!("`{text}`"),
                expected: Vec::new(),
                message: Some(format!("integer literal `{text}` is too large")),
            })?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let mut text = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                text.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            let tok = match text.strip_prefix("u_") {
                Some(k) if !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) => {
                    Tok::U(k.parse().map_err(|_| ParseError {
                        pos: start,
                        found: format!("`{text}`"),
                        expected: Vec::new(),
                        message: Some(format!("index in `{text}` is too large")),
                    })?)
                }
                _ => Tok::Ident(text),
            };
            out.push((tok, start));
        } else if SYMBOLS.contains(c) {
            chars.next();
            advance(&mut pos, c);
            out.push((Tok::Sym(c), start));
        } else {
            return Err(ParseError {
                pos: start,
                found: format!("`{c}`"),
                expected: Vec::new(),
                message: Some(format!("unexpected character `{c}`")),
            });
        }
    }
    out.push((Tok::End, pos));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub pos: Pos,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(Rational),
    Atom(String),
    U(usize),
    Word(Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(String, Vec<Expr>),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn expected(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const EXPR_START: &[&str] = &["expression"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, want: Vec<String>) -> ParseError {
        ParseError {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected: want,
            message: None,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, also: &[&str]) -> Result<(), ParseError> {
        if self.eat(c) {
            return Ok(());
        }
        let mut want = vec![format!("`{c}`")];
        want.extend(expected(also));
        Err(self.error(want))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind = if self.eat('+') {
                ExprKind::Add
            } else if self.eat('-') {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr {
                pos,
                kind: kind(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = Expr {
                    pos,
                    kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = match (&lhs.kind, &rhs.kind) {
                    (ExprKind::Num(p), ExprKind::Num(q)) if !q.is_zero() => Expr {
                        pos: lhs.pos,
                        kind: ExprKind::Num(p / q),
                    },
                    _ => Expr {
                        pos,
                        kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)),
                    },
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Expr {
                pos,
                kind: ExprKind::Neg(Box::new(inner)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.factor()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n = i32::try_from(n).map_err(|_| ParseError {
                    pos,
                    found: format!("`{n}`"),
                    expected: Vec::new(),
                    message: Some(format!("exponent {n} is too large")),
                })?;
                Ok(Expr {
                    pos,
                    kind: ExprKind::Pow(Box::new(base), if negative { -n } else { n }),
                })
            }
            _ if negative => Err(self.error(expected(&["integer exponent"]))),
            _ => Err(self.error(expected(&["integer exponent", "`-`"]))),
        }
    }

    fn starts_expr(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Int(_) | Tok::Ident(_) | Tok::U(_) | Tok::Sym('[' | '(' | '-')
        )
    }

    /// A word slot; a missing slot may also be a missing `]`.
    fn slot(&mut self) -> Result<Expr, ParseError> {
        if !self.starts_expr() {
            return Err(self.error(expected(&["expression", "`]`"])));
        }
        self.expr()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = (self.peek().clone(), self.pos());
        let kind = match tok {
            Tok::Int(n) => {
                self.bump();
                ExprKind::Num(Rational::from_bigint(n.into()))
            }
            Tok::U(k) => {
                self.bump();
                ExprKind::U(k)
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')', &["`,`", "operator"])?;
                    ExprKind::Call(name, args)
                } else {
                    ExprKind::Atom(name)
                }
            }
            Tok::Sym('[') => {
                self.bump();
                let mut slots = vec![self.slot()?];
                while self.eat('|') {
                    slots.push(self.slot()?);
                }
                self.expect(']', &["`|`", "operator"])?;
                ExprKind::Word(slots)
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')', &["operator"])?;
                return Ok(Expr { pos, ..inner });
            }
            _ => return Err(self.error(expected(EXPR_START))),
        };
        Ok(Expr { pos, kind })
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::End {
        return Err(p.error(expected(EXPR_START)));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(expected(&["operator", "end of input"])));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> ExprKind {
        parse(src).unwrap().kind
    }

    #[test]
    fn diamond_of_u_words() {
        let ExprKind::Mul(a, b) = kind("u_1 * u_1") else {
            panic!("not a product")
        };
        assert_eq!((a.kind, b.kind), (ExprKind::U(1), ExprKind::U(1)));
    }

    #[test]
    fn sum_of_call_and_scaled_word() {
        let ExprKind::Add(a, b) = kind("P([x|y]) + 3/2*u_0") else {
            panic!("not a sum")
        };
        assert!(matches!(a.kind, ExprKind::Call(ref n, ref args) if n == "P" && args.len() == 1));
        let ExprKind::Mul(c, u) = b.kind else {
            panic!("not a product")
        };
        assert_eq!(c.kind, ExprKind::Num(Rational::new(3, 2)));
        assert_eq!(u.kind, ExprKind::U(0));
    }

    #[test]
    fn unterminated_word_reports_column_four() {
        let err = parse("[x|").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 4 });
        assert_eq!(err.found, "end of input");
        assert_eq!(err.expected, vec!["expression", "`]`"]);
        assert_eq!(
            err.to_string(),
            "syntax error at line 1, column 4: expected expression or `]`, found end of input"
        );
        let err = parse("[x").unwrap_err();
        assert!(err.expected.contains(&"`]`".to_string()));
    }

    #[test]
    fn precedence() {
        // 1 + 2*x^2 parses as 1 + (2*(x^2))
        let ExprKind::Add(_, rhs) = kind("1 + 2*x^2") else {
            panic!()
        };
        let ExprKind::Mul(_, p) = rhs.kind else {
            panic!()
        };
        assert!(matches!(p.kind, ExprKind::Pow(_, 2)));
        assert!(matches!(kind("e^-1"), ExprKind::Pow(_, -1)));
        assert!(matches!(kind("-u_1 - 2*u_0"), ExprKind::Sub(_, _)));
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse("u_1 +\n  * u_2").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, column: 3 });
        assert!(parse("").is_err());
        assert!(parse("u_1 u_2").is_err());
        assert!(parse("x $ y")
            .unwrap_err()
            .to_string()
            .contains("unexpected character"));
        assert!(parse("f(x")
            .unwrap_err()
            .expected
            .contains(&"`)`".to_string()));
    }
}
