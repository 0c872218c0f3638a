use crate::lexer::{lex, Spanned, Tok};
use crate::{BinaryOp, Expr, Literal, ParseError, UnaryOp};

/// Parse an expression source string.
///
/// Grammar (EBNF):
/// ```text
/// expr  := or
/// or    := and ("or" and)*
/// and   := not ("and" not)*
/// not   := "not" not | cmp
/// cmp   := add (cmpop add)?
/// cmpop := "==" | "!=" | "<" | "<=" | ">" | ">="
/// add   := mul (("+" | "-") mul)*
/// mul   := unary (("*" | "/") unary)*
/// unary := "-" unary | primary
/// primary := NUMBER | STRING | "true" | "false" | "null"
///          | IDENT | BQ_IDENT | "(" expr ")"
/// ```
pub fn parse_expression(src: &str) -> Result<Expr, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.or_expr()?;
    p.expect_eof()?;
    Ok(expr)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let cur = self.peek();
        ParseError {
            offset: cur.offset,
            found: cur.tok.describe(),
            expected,
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(vec!["end of input", "operator"]))
        }
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and_expr()?;
            lhs = binary(BinaryOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.not_expr()?;
        while self.eat(&Tok::And) {
            let rhs = self.not_expr()?;
            lhs = binary(BinaryOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Not) {
            let operand = self.not_expr()?;
            Ok(Expr::Unary {
                op: UnaryOp::Not,
                operand: Box::new(operand),
            })
        } else {
            self.cmp_expr()
        }
    }

    fn cmp_expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.add_expr()?;
        let op = match self.peek().tok {
            Tok::EqEq => BinaryOp::Eq,
            Tok::NotEq => BinaryOp::Ne,
            Tok::Lt => BinaryOp::Lt,
            Tok::Le => BinaryOp::Le,
            Tok::Gt => BinaryOp::Gt,
            Tok::Ge => BinaryOp::Ge,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.add_expr()?;
        Ok(binary(op, lhs, rhs))
    }

    fn add_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.mul_expr()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.mul_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn mul_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary_expr()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary_expr(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            let operand = self.unary_expr()?;
            Ok(Expr::Unary {
                op: UnaryOp::Neg,
                operand: Box::new(operand),
            })
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let spanned = self.peek().clone();
        match spanned.tok {
            Tok::Number(n) => {
                self.bump();
                Ok(Expr::Literal(Literal::Number(n)))
            }
            Tok::Str(ref s) => {
                let s = s.clone();
                self.bump();
                Ok(Expr::Literal(Literal::String(s)))
            }
            Tok::True => {
                self.bump();
                Ok(Expr::Literal(Literal::Bool(true)))
            }
            Tok::False => {
                self.bump();
                Ok(Expr::Literal(Literal::Bool(false)))
            }
            Tok::Null => {
                self.bump();
                Ok(Expr::Literal(Literal::Null))
            }
            Tok::Ident(ref name) | Tok::BqIdent(ref name) => {
                let name = name.clone();
                self.bump();
                Ok(Expr::Field(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.or_expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(vec![")"]));
                }
                Ok(inner)
            }
            _ => Err(self.error(vec!["number", "string", "identifier", "(", "-", "not"])),
        }
    }
}

fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
    Expr::Binary {
        op,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}
