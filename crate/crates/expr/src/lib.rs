//! Attribute expression mini-language.
//!
//! Used for row filtering (`population > 1000`) and computed fields
//! (`population / (ALAND / 1000000)`). The grammar, smallest to largest
//! binding: `or < and < not < comparison < additive < multiplicative <
//! unary minus`. Identifiers are `[A-Za-z_][A-Za-z0-9_]*`; arbitrary field
//! names go through the back-quoted form `` `any name` ``.

mod eval;
mod lexer;
mod parser;
mod print;

pub use eval::evaluate;
pub use parser::parse_expression;
pub use print::print_expression;

use thiserror::Error;

/// Literal values appearing in expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Number(f64),
    String(String),
    Bool(bool),
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::And => "and",
            BinaryOp::Or => "or",
        }
    }

    pub fn is_comparison(&self) -> bool {
        matches!(
            self,
            BinaryOp::Eq | BinaryOp::Ne | BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge
        )
    }
}

/// Parsed expression tree. Parentheses group structurally during parsing but
/// are not materialized as nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Literal),
    Field(String),
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

/// Syntax error with the byte offset it was detected at and the token kinds
/// that would have been accepted there.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

/// Evaluation failure. Everything else (missing fields, null comparisons)
/// folds into a value per the language rules.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("type error: {0}")]
    Type(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite arithmetic result")]
    NonFinite,
}
