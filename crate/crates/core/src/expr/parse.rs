//! Hand-rolled lexer and recursive-descent parser for the expression
//! language. Keywords (`and or not implies min max`) are case-sensitive;
//! whitespace is insignificant.

use std::fmt;

use super::FuzzyExpr;

/// Syntax error with a 1-based source position and the token classes that
/// would have been accepted there.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(String),
    Number(f64),
    KwAnd,
    KwOr,
    KwNot,
    KwImplies,
    KwMin,
    KwMax,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Number(v) => format!("number `{v}`"),
            TokenKind::KwAnd => "`and`".to_string(),
            TokenKind::KwOr => "`or`".to_string(),
            TokenKind::KwNot => "`not`".to_string(),
            TokenKind::KwImplies => "`implies`".to_string(),
            TokenKind::KwMin => "`min`".to_string(),
            TokenKind::KwMax => "`max`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    bump(c, &mut line, &mut col);
                } else {
                    break;
                }
            }
            let kind = match word.as_str() {
                "and" => TokenKind::KwAnd,
                "or" => TokenKind::KwOr,
                "not" => TokenKind::KwNot,
                "implies" => TokenKind::KwImplies,
                "min" => TokenKind::KwMin,
                "max" => TokenKind::KwMax,
                _ => TokenKind::Ident(word),
            };
            tokens.push(Token {
                kind,
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut num = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    num.push(c);
                    chars.next();
                    bump(c, &mut line, &mut col);
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'.') {
                num.push('.');
                chars.next();
                bump('.', &mut line, &mut col);
                let mut saw_digit = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        saw_digit = true;
                        num.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                if !saw_digit {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        message: format!("malformed number `{num}`"),
                        expected: vec!["digit after `.`"],
                    });
                }
            }
            let value: f64 = num.parse().map_err(|_| ParseError {
                line: tline,
                col: tcol,
                message: format!("malformed number `{num}`"),
                expected: vec![],
            })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("constant {value} outside [0, 1]"),
                    expected: vec![],
                });
            }
            tokens.push(Token {
                kind: TokenKind::Number(value),
                line: tline,
                col: tcol,
            });
            continue;
        }
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                    expected: vec![],
                })
            }
        };
        chars.next();
        bump(c, &mut line, &mut col);
        tokens.push(Token {
            kind,
            line: tline,
            col: tcol,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

const EXPR_START: [&str; 6] = ["identifier", "number", "`(`", "`min`", "`max`", "`not`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let tok = self.peek();
        ParseError {
            line: tok.line,
            col: tok.col,
            message: format!("unexpected {}", tok.kind.describe()),
            expected,
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &'static str) -> Result<(), ParseError> {
        if self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.error(vec![expected]))
        }
    }

    // implies: right-associative, lowest precedence
    fn expr(&mut self) -> Result<FuzzyExpr, ParseError> {
        let lhs = self.or_expr()?;
        if self.peek().kind == TokenKind::KwImplies {
            self.advance();
            let rhs = self.expr()?;
            Ok(FuzzyExpr::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn or_expr(&mut self) -> Result<FuzzyExpr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.peek().kind == TokenKind::KwOr {
            self.advance();
            let rhs = self.and_expr()?;
            lhs = FuzzyExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<FuzzyExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().kind == TokenKind::KwAnd {
            self.advance();
            let rhs = self.unary()?;
            lhs = FuzzyExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<FuzzyExpr, ParseError> {
        if self.peek().kind == TokenKind::KwNot {
            self.advance();
            Ok(FuzzyExpr::Not(Box::new(self.unary()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<FuzzyExpr, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                self.advance();
                Ok(FuzzyExpr::Var(name))
            }
            TokenKind::Number(value) => {
                self.advance();
                Ok(FuzzyExpr::Const(value))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::KwMin | TokenKind::KwMax => {
                let is_min = self.peek().kind == TokenKind::KwMin;
                self.advance();
                self.expect(TokenKind::LParen, "`(`")?;
                let mut args = vec![self.expr()?];
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    args.push(self.expr()?);
                }
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(if is_min {
                    FuzzyExpr::MinN(args)
                } else {
                    FuzzyExpr::MaxN(args)
                })
            }
            _ => Err(self.error(EXPR_START.to_vec())),
        }
    }
}

/// Parses one expression from UTF-8 text.
pub fn parse(text: &str) -> Result<FuzzyExpr, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.peek().kind != TokenKind::Eof {
        return Err(parser.error(vec!["end of input", "`and`", "`or`", "`implies`"]));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use FuzzyExpr::*;

    fn var(name: &str) -> FuzzyExpr {
        Var(name.to_string())
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(
            parse("x and not y").unwrap(),
            And(Box::new(var("x")), Box::new(Not(Box::new(var("y")))))
        );
        assert_eq!(
            parse("min(x, 0.3, y)").unwrap(),
            MinN(vec![var("x"), Const(0.3), var("y")])
        );
    }

    #[test]
    fn implies_is_right_associative() {
        assert_eq!(
            parse("a implies b implies c").unwrap(),
            Implies(
                Box::new(var("a")),
                Box::new(Implies(Box::new(var("b")), Box::new(var("c"))))
            )
        );
    }

    #[test]
    fn and_binds_tighter_than_or() {
        assert_eq!(
            parse("a or b and c").unwrap(),
            Or(
                Box::new(var("a")),
                Box::new(And(Box::new(var("b")), Box::new(var("c"))))
            )
        );
    }

    #[test]
    fn keywords_are_case_sensitive() {
        // `AND` is just an identifier, so this is two expressions in a row
        assert!(parse("x AND y").is_err());
        assert_eq!(parse("AND").unwrap(), var("AND"));
    }

    #[test]
    fn error_carries_position_and_expected_set() {
        let err = parse("x and )").unwrap_err();
        assert_eq!((err.line, err.col), (1, 7));
        assert!(err.expected.contains(&"identifier"));

        let err = parse("x or\nand y").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn constant_range_is_enforced() {
        let err = parse("x and 1.5").unwrap_err();
        assert!(err.message.contains("outside [0, 1]"));
        assert!(parse("0.0 or 1.0").is_ok());
    }

    #[test]
    fn malformed_number_is_rejected() {
        assert!(parse("0.").is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse("  min ( x ,\n\ty )  ").unwrap(),
            MinN(vec![var("x"), var("y")])
        );
    }
}
