//! Concrete syntax.
//!
//! ```text
//! formula  ::= until ( "<->" formula )?
//! until    ::= implies ( ("U" | "AU" | "R") interval? until )?
//! implies  ::= or ( "->" implies )?
//! or       ::= and ( "|" and )*
//! and      ::= unary ( "&" unary )*
//! unary    ::= "!" unary | ("F" | "G" | "X") interval? unary
//!            | "C" "{" n "}" interval? unary | primary
//! primary  ::= "true" | "false" | "alpha" | ident | "(" formula ")"
//! interval ::= ("[" | "(") a "," (b | "inf") ("]" | ")")
//!            | ">=" a | ">" a | "<=" a | "<" a | "=" a
//! ```
//!
//! Binary operators bind, loosest first: `<->`, the until family, `->`, `|`,
//! `&`. Prefix operators bind tightest. An absent interval means `[0,inf)`.
//! `alpha` expands to the disjunction of the declared alphabet.

use thiserror::Error;

use super::formula::{Alphabet, Atom, Formula};
use super::interval::{Interval, IntervalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    InvalidCharacter(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("malformed interval: {0}")]
    BadInterval(#[from] IntervalError),
    #[error("counting index must be at least 1")]
    ZeroCount,
    #[error("constant {0} is out of range")]
    ConstantOverflow(String),
    #[error("`alpha` needs a declared alphabet")]
    AlphaWithoutAlphabet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("{s:?}"),
            other => format!("{:?}", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Ident(_) | Tok::Num(_) => "",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Eq => "=",
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let starts = |s: &str| chars[i..].iter().copied().take(s.len()).eq(s.chars());
        let (tok, len) = if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        } else if c.is_whitespace() {
            (None, 1)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let end = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            (Some(Tok::Ident(chars[i..end].iter().collect())), end - i)
        } else if c.is_ascii_digit() {
            let end = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
            (Some(Tok::Num(chars[i..end].iter().collect())), end - i)
        } else if starts("<->") {
            (Some(Tok::DArrow), 3)
        } else if starts("->") {
            (Some(Tok::Arrow), 2)
        } else if starts(">=") {
            (Some(Tok::Ge), 2)
        } else if starts("<=") {
            (Some(Tok::Le), 2)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '>' => Tok::Gt,
                '<' => Tok::Lt,
                '=' => Tok::Eq,
                other => {
                    return Err(ParseError {
                        line,
                        column: col,
                        kind: ParseErrorKind::InvalidCharacter(other),
                    })
                }
            };
            (Some(t), 1)
        };
        if let Some(tok) = tok {
            out.push(Spanned { tok, line: start_line, column: start_col });
        }
        i += len;
        col += len;
    }
    Ok(out)
}

const KEYWORDS: &[&str] = &["true", "false", "alpha", "inf", "F", "G", "X", "U", "AU", "R", "C"];

/// Whether `name` can be used as an atom in the concrete syntax.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&name)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn is_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == word)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end);
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error_here(ParseErrorKind::Unexpected { expected, found: t.describe() }),
            None => self.error_here(ParseErrorKind::UnexpectedEnd(expected)),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let s = s.clone();
                let v = s
                    .parse::<u64>()
                    .map_err(|_| self.error_here(ParseErrorKind::ConstantOverflow(s)))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.unexpected("a nonnegative integer")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.until()?;
        if self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        let op = match self.peek() {
            Some(Tok::Ident(s)) if s == "U" || s == "AU" || s == "R" => s.clone(),
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let j = self.optional_interval()?;
        let rhs = self.until()?;
        Ok(match op.as_str() {
            "U" => Formula::until(j, lhs, rhs),
            "AU" => Formula::action_until(j, lhs, rhs),
            _ => Formula::release(j, lhs, rhs),
        })
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(s)) if s == "F" || s == "G" || s == "X" => {
                let op = s.clone();
                self.pos += 1;
                let j = self.optional_interval()?;
                let arg = self.unary()?;
                Ok(match op.as_str() {
                    "F" => Formula::eventually(j, arg),
                    "G" => Formula::globally(j, arg),
                    _ => Formula::next(j, arg),
                })
            }
            Some(Tok::Ident(s)) if s == "C" => {
                self.pos += 1;
                self.expect(Tok::LBrace, "'{' after C")?;
                let n = self.number()?;
                if n == 0 {
                    self.pos -= 1;
                    return Err(self.error_here(ParseErrorKind::ZeroCount));
                }
                let n = u32::try_from(n)
                    .map_err(|_| self.error_here(ParseErrorKind::ConstantOverflow(n.to_string())))?;
                self.expect(Tok::RBrace, "'}'")?;
                let j = self.optional_interval()?;
                let arg = self.unary()?;
                Ok(Formula::count(n, j, arg))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                let f = match name.as_str() {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    "alpha" => match self.alphabet {
                        Some(a) => Formula::some_prop(a),
                        None => return Err(self.error_here(ParseErrorKind::AlphaWithoutAlphabet)),
                    },
                    kw if KEYWORDS.contains(&kw) => return Err(self.unexpected("a formula")),
                    _ => {
                        if let Some(a) = self.alphabet {
                            if !a.contains(name.as_str()) {
                                return Err(self.error_here(ParseErrorKind::UnknownAtom(name)));
                            }
                        }
                        Formula::Atom(Atom::from(name))
                    }
                };
                self.pos += 1;
                Ok(f)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// `( a , b )` and `( a , inf )` are intervals; any other parenthesis
    /// opens a subformula.
    fn paren_is_interval(&self) -> bool {
        matches!(
            (self.peek_at(1), self.peek_at(2), self.peek_at(3), self.peek_at(4)),
            (Some(Tok::Num(_)), Some(Tok::Comma), Some(Tok::Num(_) | Tok::Ident(_)), Some(Tok::RParen | Tok::RBrack))
        )
    }

    fn optional_interval(&mut self) -> Result<Interval, ParseError> {
        let start = self.pos;
        let wrap = |p: &Parser, e: IntervalError| ParseError {
            line: p.toks[start].line,
            column: p.toks[start].column,
            kind: ParseErrorKind::BadInterval(e),
        };
        match self.peek() {
            Some(Tok::LBrack) => {}
            Some(Tok::LParen) if self.paren_is_interval() => {}
            Some(Tok::Ge | Tok::Gt | Tok::Le | Tok::Lt | Tok::Eq) => {
                let op = self.peek().cloned().unwrap();
                self.pos += 1;
                let c = self.number()?;
                let j = match op {
                    Tok::Ge => Ok(Interval::at_least(c)),
                    Tok::Gt => Ok(Interval::greater_than(c)),
                    Tok::Le => Interval::closed(0, c),
                    Tok::Lt => Interval::new(0, Some(c), false, true),
                    _ => Ok(Interval::singular(c)),
                };
                return j.map_err(|e| wrap(self, e));
            }
            _ => return Ok(Interval::UNBOUNDED),
        }
        let lo_open = self.peek() == Some(&Tok::LParen);
        self.pos += 1;
        let lo = self.number()?;
        self.expect(Tok::Comma, "','")?;
        let hi = if self.is_ident("inf") {
            self.pos += 1;
            None
        } else {
            Some(self.number()?)
        };
        let hi_open = match self.peek() {
            Some(Tok::RParen) => true,
            Some(Tok::RBrack) if hi.is_none() => return Err(self.unexpected("')' after inf")),
            Some(Tok::RBrack) => false,
            _ => return Err(self.unexpected("']' or ')'")),
        };
        self.pos += 1;
        Interval::new(lo, hi, lo_open, hi_open).map_err(|e| wrap(self, e))
    }
}

fn run(text: &str, alphabet: Option<&Alphabet>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map(|l| l.chars().count()).unwrap_or(0) + 1)
    };
    let mut p = Parser { toks, pos: 0, alphabet, end };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parse a formula whose atoms must belong to `alphabet`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    run(text, Some(alphabet))
}

/// Parse a formula over whatever atoms it mentions. `alpha` is rejected.
pub fn parse_formula_any(text: &str) -> Result<Formula, ParseError> {
    run(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula::alphabet;

    fn pq() -> Alphabet {
        alphabet(["p", "q"])
    }

    #[test]
    fn globally_implies_eventually() {
        let f = parse_formula("G (p -> F[1,3] q)", &pq()).unwrap();
        let expected = Formula::globally(
            Interval::UNBOUNDED,
            Formula::implies(
                Formula::atom("p"),
                Formula::eventually(Interval::closed(1, 3).unwrap(), Formula::atom("q")),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn until_with_open_interval() {
        let f = parse_formula("p U(0,inf) q", &pq()).unwrap();
        assert_eq!(f, Formula::until(Interval::greater_than(0), Formula::atom("p"), Formula::atom("q")));
    }

    #[test]
    fn empty_interval_is_rejected() {
        let err = parse_formula("F[2,1] p", &pq()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadInterval(IntervalError::Inverted { lo: 2, hi: 1 }));
        assert_eq!((err.line, err.column), (1, 2));
    }

    #[test]
    fn unknown_atom_reports_position() {
        let err = parse_formula("p &\n  r", &pq()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownAtom("r".into()));
        assert_eq!((err.line, err.column), (2, 3));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_formula("p & & q", &pq()).unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        assert!(parse_formula("(p", &pq()).is_err());
        assert!(parse_formula("p q", &pq()).is_err());
        assert!(matches!(parse_formula("p # q", &pq()).unwrap_err().kind, ParseErrorKind::InvalidCharacter('#')));
    }

    #[test]
    fn shorthand_intervals() {
        let f = parse_formula("X>=2 p & X>2 p & X<=2 p & X<2 p & X=2 p", &pq()).unwrap();
        let js: Vec<String> = f.intervals().iter().map(|j| j.to_string()).collect();
        assert_eq!(js, ["[2,inf)", "(2,inf)", "[0,2]", "[0,2)", "[2,2]"]);
        assert!(parse_formula("X<0 p", &pq()).is_err());
    }

    #[test]
    fn parenthesised_operand_after_until_is_not_an_interval() {
        let f = parse_formula("p U (q)", &pq()).unwrap();
        assert_eq!(f, Formula::until(Interval::UNBOUNDED, Formula::atom("p"), Formula::atom("q")));
    }

    #[test]
    fn precedence_prefix_tightest() {
        let f = parse_formula("F[1,1] p & G !p", &pq()).unwrap();
        assert!(matches!(f, Formula::And(..)));
        // & binds tighter than ->, which binds tighter than U, then <->
        let g = parse_formula("p & q -> p U q <-> q", &pq()).unwrap();
        let expect = Formula::iff(
            Formula::until(
                Interval::UNBOUNDED,
                Formula::implies(Formula::and(Formula::atom("p"), Formula::atom("q")), Formula::atom("p")),
                Formula::atom("q"),
            ),
            Formula::atom("q"),
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn counting_and_alpha() {
        let f = parse_formula("C{2}(5,inf) alpha", &pq()).unwrap();
        assert_eq!(
            f,
            Formula::count(
                2,
                Interval::greater_than(5),
                Formula::or(Formula::atom("p"), Formula::atom("q"))
            )
        );
        assert_eq!(parse_formula("C{0} p", &pq()).unwrap_err().kind, ParseErrorKind::ZeroCount);
        assert_eq!(parse_formula_any("alpha").unwrap_err().kind, ParseErrorKind::AlphaWithoutAlphabet);
    }
}
