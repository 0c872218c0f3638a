use geoagent_model::{AttributeValue, Properties};

use crate::{BinaryOp, EvalError, Expr, Literal, UnaryOp};

/// Evaluate an expression against one row of properties.
///
/// Semantics:
/// * a reference to a missing field yields null;
/// * any comparison with a null operand yields `false`;
/// * `==` / `!=` require same-type operands, ordering works on numbers and
///   on strings (lexicographic by Unicode scalar) but never across types;
/// * arithmetic is numeric only, `/` is always floating division;
/// * `and` / `or` short-circuit and only accept booleans;
/// * division by zero and non-finite results are errors.
pub fn evaluate(expr: &Expr, row: &Properties) -> Result<AttributeValue, EvalError> {
    Ok(match expr {
        Expr::Literal(lit) => match lit {
            Literal::Number(n) => AttributeValue::Number(*n),
            Literal::String(s) => AttributeValue::String(s.clone()),
            Literal::Bool(b) => AttributeValue::Bool(*b),
            Literal::Null => AttributeValue::Null,
        },
        Expr::Field(name) => row.get(name).cloned().unwrap_or(AttributeValue::Null),
        Expr::Unary { op, operand } => {
            let v = evaluate(operand, row)?;
            match op {
                UnaryOp::Neg => match v {
                    AttributeValue::Number(n) => AttributeValue::Number(-n),
                    other => {
                        return Err(EvalError::Type(format!(
                            "unary minus needs a number, got {}",
                            other.type_name()
                        )))
                    }
                },
                UnaryOp::Not => match v {
                    AttributeValue::Bool(b) => AttributeValue::Bool(!b),
                    other => {
                        return Err(EvalError::Type(format!(
                            "`not` needs a boolean, got {}",
                            other.type_name()
                        )))
                    }
                },
            }
        }
        Expr::Binary { op, lhs, rhs } => match op {
            BinaryOp::And => {
                let l = bool_operand(evaluate(lhs, row)?, "and")?;
                if !l {
                    AttributeValue::Bool(false)
                } else {
                    AttributeValue::Bool(bool_operand(evaluate(rhs, row)?, "and")?)
                }
            }
            BinaryOp::Or => {
                let l = bool_operand(evaluate(lhs, row)?, "or")?;
                if l {
                    AttributeValue::Bool(true)
                } else {
                    AttributeValue::Bool(bool_operand(evaluate(rhs, row)?, "or")?)
                }
            }
            BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div => {
                let l = evaluate(lhs, row)?;
                let r = evaluate(rhs, row)?;
                arithmetic(*op, l, r)?
            }
            _ => {
                let l = evaluate(lhs, row)?;
                let r = evaluate(rhs, row)?;
                AttributeValue::Bool(compare(*op, l, r)?)
            }
        },
    })
}

fn bool_operand(v: AttributeValue, op: &str) -> Result<bool, EvalError> {
    match v {
        AttributeValue::Bool(b) => Ok(b),
        other => Err(EvalError::Type(format!(
            "`{op}` needs boolean operands, got {}",
            other.type_name()
        ))),
    }
}

fn arithmetic(
    op: BinaryOp,
    l: AttributeValue,
    r: AttributeValue,
) -> Result<AttributeValue, EvalError> {
    let (a, b) = match (&l, &r) {
        (AttributeValue::Number(a), AttributeValue::Number(b)) => (*a, *b),
        _ => {
            return Err(EvalError::Type(format!(
                "`{}` needs numbers, got {} and {}",
                op.symbol(),
                l.type_name(),
                r.type_name()
            )))
        }
    };
    let out = match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => {
            if b == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            a / b
        }
        _ => unreachable!("arithmetic called with non-arithmetic op"),
    };
    if !out.is_finite() {
        return Err(EvalError::NonFinite);
    }
    Ok(AttributeValue::Number(out))
}

fn compare(op: BinaryOp, l: AttributeValue, r: AttributeValue) -> Result<bool, EvalError> {
    use AttributeValue as V;
    // null poisons every comparison to false, including equality with null
    if l.is_null() || r.is_null() {
        return Ok(false);
    }
    match op {
        BinaryOp::Eq | BinaryOp::Ne => {
            let eq = match (&l, &r) {
                (V::Number(a), V::Number(b)) => a == b,
                (V::String(a), V::String(b)) => a == b,
                (V::Bool(a), V::Bool(b)) => a == b,
                _ => {
                    return Err(EvalError::Type(format!(
                        "`{}` needs same-type operands, got {} and {}",
                        op.symbol(),
                        l.type_name(),
                        r.type_name()
                    )))
                }
            };
            Ok(if op == BinaryOp::Eq { eq } else { !eq })
        }
        _ => {
            let ord = match (&l, &r) {
                (V::Number(a), V::Number(b)) => a.partial_cmp(b),
                (V::String(a), V::String(b)) => Some(a.as_str().cmp(b.as_str())),
                _ => {
                    return Err(EvalError::Type(format!(
                        "`{}` cannot order {} against {}",
                        op.symbol(),
                        l.type_name(),
                        r.type_name()
                    )))
                }
            };
            let ord = ord.ok_or(EvalError::NonFinite)?;
            Ok(match op {
                BinaryOp::Lt => ord.is_lt(),
                BinaryOp::Le => ord.is_le(),
                BinaryOp::Gt => ord.is_gt(),
                BinaryOp::Ge => ord.is_ge(),
                _ => unreachable!(),
            })
        }
    }
}
