use crate::{Expr, Literal, UnaryOp};

/// Print an expression back to parseable source.
///
/// Binary and unary nodes are fully parenthesized, so
/// `parse(print(parse(s))) == parse(s)` holds for every valid `s`.
pub fn print_expression(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(expr, &mut out);
    out
}

fn write_expr(expr: &Expr, out: &mut String) {
    match expr {
        Expr::Literal(lit) => match lit {
            Literal::Number(n) => out.push_str(&format_number(*n)),
            Literal::String(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '\\' => out.push_str("\\\\"),
                        '"' => out.push_str("\\\""),
                        '\n' => out.push_str("\\n"),
                        '\t' => out.push_str("\\t"),
                        _ => out.push(c),
                    }
                }
                out.push('"');
            }
            Literal::Bool(true) => out.push_str("true"),
            Literal::Bool(false) => out.push_str("false"),
            Literal::Null => out.push_str("null"),
        },
        Expr::Field(name) => {
            if is_plain_identifier(name) {
                out.push_str(name);
            } else {
                out.push('`');
                out.push_str(name);
                out.push('`');
            }
        }
        Expr::Unary { op, operand } => {
            match op {
                UnaryOp::Neg => out.push_str("(-"),
                UnaryOp::Not => out.push_str("(not "),
            }
            write_expr(operand, out);
            out.push(')');
        }
        Expr::Binary { op, lhs, rhs } => {
            out.push('(');
            write_expr(lhs, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_expr(rhs, out);
            out.push(')');
        }
    }
}

fn format_number(n: f64) -> String {
    // negative literals print as unary minus over a positive number
    if n < 0.0 {
        format!("(-{})", fmt_positive(-n))
    } else {
        fmt_positive(n)
    }
}

fn fmt_positive(n: f64) -> String {
    let s = format!("{n}");
    // `{}` on f64 is the shortest round-trip form; it never emits a leading
    // sign for positive values
    s
}

fn is_plain_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    // keywords must be back-quoted to stay field references
    !matches!(name, "and" | "or" | "not" | "true" | "false" | "null")
}
