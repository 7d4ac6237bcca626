//! A small fuzzy expression language.
//!
//! Grammar, lowest precedence first: `implies` (right-associative), `or`,
//! `and`, `not`, then atoms — variables, decimal constants in [0, 1],
//! parenthesized expressions, and n-ary `min(...)`/`max(...)`.
//!
//! [`FuzzyExpr::eval`] carries the closed-form semantics (and = min,
//! or = max, not a = 1-a, implies = Lukasiewicz `min(1, 1-a+b)`).
//! [`compile`] emits a netlist whose negations sit directly on inputs; it
//! lowers `implies` to the circuit-expressible `max(1-a, b)`, which differs
//! from the Lukasiewicz form (e.g. at a = b = 0.5).

mod compile;
mod parse;

pub use compile::compile;
pub use parse::{parse, ParseError};

use std::fmt;

use thiserror::Error;

use crate::netlist::Bindings;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("variable `{name}` = {value} is outside [0, 1]")]
    ValueOutOfRange { name: String, value: f64 },
}

/// Expression AST. `Const` values lie in [0, 1]; variable names match
/// `[a-zA-Z_][a-zA-Z0-9_]*` when produced by the parser.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyExpr {
    Var(String),
    Const(f64),
    Not(Box<FuzzyExpr>),
    And(Box<FuzzyExpr>, Box<FuzzyExpr>),
    Or(Box<FuzzyExpr>, Box<FuzzyExpr>),
    Implies(Box<FuzzyExpr>, Box<FuzzyExpr>),
    MinN(Vec<FuzzyExpr>),
    MaxN(Vec<FuzzyExpr>),
}

impl FuzzyExpr {
    /// Direct recursive evaluation; the semantic oracle for the compiler's
    /// min/max/not fragment.
    pub fn eval(&self, env: &Bindings) -> Result<f64, EvalError> {
        Ok(match self {
            FuzzyExpr::Var(name) => {
                let v = *env
                    .get(name)
                    .ok_or_else(|| EvalError::UnboundVariable(name.clone()))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(EvalError::ValueOutOfRange {
                        name: name.clone(),
                        value: v,
                    });
                }
                v
            }
            FuzzyExpr::Const(c) => *c,
            FuzzyExpr::Not(e) => 1.0 - e.eval(env)?,
            FuzzyExpr::And(a, b) => a.eval(env)?.min(b.eval(env)?),
            FuzzyExpr::Or(a, b) => a.eval(env)?.max(b.eval(env)?),
            FuzzyExpr::Implies(a, b) => (1.0 - a.eval(env)? + b.eval(env)?).min(1.0),
            FuzzyExpr::MinN(list) => {
                let mut acc = f64::INFINITY;
                for e in list {
                    acc = acc.min(e.eval(env)?);
                }
                acc
            }
            FuzzyExpr::MaxN(list) => {
                let mut acc = f64::NEG_INFINITY;
                for e in list {
                    acc = acc.max(e.eval(env)?);
                }
                acc
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            FuzzyExpr::Implies(..) => 1,
            FuzzyExpr::Or(..) => 2,
            FuzzyExpr::And(..) => 3,
            FuzzyExpr::Not(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min_prec;
        if parens {
            write!(f, "(")?;
        }
        match self {
            FuzzyExpr::Var(name) => write!(f, "{name}")?,
            FuzzyExpr::Const(c) => write!(f, "{c}")?,
            FuzzyExpr::Not(e) => {
                write!(f, "not ")?;
                e.fmt_prec(f, 4)?;
            }
            FuzzyExpr::And(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " and ")?;
                b.fmt_prec(f, 4)?;
            }
            FuzzyExpr::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " or ")?;
                b.fmt_prec(f, 3)?;
            }
            FuzzyExpr::Implies(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " implies ")?;
                b.fmt_prec(f, 1)?;
            }
            FuzzyExpr::MinN(list) | FuzzyExpr::MaxN(list) => {
                let name = if matches!(self, FuzzyExpr::MinN(..)) {
                    "min"
                } else {
                    "max"
                };
                write!(f, "{name}(")?;
                for (i, e) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    e.fmt_prec(f, 0)?;
                }
                write!(f, ")")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Minimally parenthesized text form; reparsing it yields the same AST.
impl fmt::Display for FuzzyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|&(n, v)| (n.to_string(), v)).collect()
    }

    #[test]
    fn eval_examples() {
        let e = parse("not 0.2").unwrap();
        assert!((e.eval(&env(&[])).unwrap() - 0.8).abs() < 1e-15);

        let e = parse("0.6 implies 0.9").unwrap();
        assert_eq!(e.eval(&env(&[])).unwrap(), 1.0);

        let e = parse("min(0.7, max(0.1, 0.5))").unwrap();
        assert_eq!(e.eval(&env(&[])).unwrap(), 0.5);

        let e = parse("x and not y").unwrap();
        assert!((e.eval(&env(&[("x", 0.7), ("y", 0.2)])).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn implies_is_reflexive() {
        let e = parse("x implies x").unwrap();
        for v in [0.0, 0.3, 1.0] {
            assert_eq!(e.eval(&env(&[("x", v)])).unwrap(), 1.0);
        }
    }

    #[test]
    fn unbound_variable_errors() {
        let e = parse("x or y").unwrap();
        assert!(matches!(
            e.eval(&env(&[("x", 0.5)])),
            Err(EvalError::UnboundVariable(name)) if name == "y"
        ));
    }

    #[test]
    fn display_keeps_structure() {
        // right child of an `or` that is itself an `or` needs parentheses,
        // otherwise reparsing re-associates to the left
        let e = FuzzyExpr::Or(
            Box::new(FuzzyExpr::Var("a".into())),
            Box::new(FuzzyExpr::Or(
                Box::new(FuzzyExpr::Var("b".into())),
                Box::new(FuzzyExpr::Var("c".into())),
            )),
        );
        let text = e.to_string();
        assert_eq!(text, "a or (b or c)");
        assert_eq!(parse(&text).unwrap(), e);

        let e = parse("a implies b implies c").unwrap();
        assert_eq!(e.to_string(), "a implies b implies c");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}
