use crate::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Number(f64),
    Str(String),
    Ident(String),
    BqIdent(String),
    True,
    False,
    Null,
    And,
    Or,
    Not,
    Plus,
    Minus,
    Star,
    Slash,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Number(n) => format!("number {n}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::BqIdent(s) => format!("identifier `{s}`"),
            Tok::True => "true".into(),
            Tok::False => "false".into(),
            Tok::Null => "null".into(),
            Tok::And => "and".into(),
            Tok::Or => "or".into(),
            Tok::Not => "not".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::EqEq => "==".into(),
            Tok::NotEq => "!=".into(),
            Tok::Lt => "<".into(),
            Tok::Le => "<=".into(),
            Tok::Gt => ">".into(),
            Tok::Ge => ">=".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                out.push(Spanned { tok: Tok::LParen, offset: i });
                i += 1;
            }
            b')' => {
                out.push(Spanned { tok: Tok::RParen, offset: i });
                i += 1;
            }
            b'+' => {
                out.push(Spanned { tok: Tok::Plus, offset: i });
                i += 1;
            }
            b'-' => {
                out.push(Spanned { tok: Tok::Minus, offset: i });
                i += 1;
            }
            b'*' => {
                out.push(Spanned { tok: Tok::Star, offset: i });
                i += 1;
            }
            b'/' => {
                out.push(Spanned { tok: Tok::Slash, offset: i });
                i += 1;
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Spanned { tok: Tok::EqEq, offset: i });
                    i += 2;
                } else {
                    return Err(unexpected(src, i, &["=="]));
                }
            }
            b'!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Spanned { tok: Tok::NotEq, offset: i });
                    i += 2;
                } else {
                    return Err(unexpected(src, i, &["!="]));
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Spanned { tok: Tok::Le, offset: i });
                    i += 2;
                } else {
                    out.push(Spanned { tok: Tok::Lt, offset: i });
                    i += 1;
                }
            }
            b'>' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push(Spanned { tok: Tok::Ge, offset: i });
                    i += 2;
                } else {
                    out.push(Spanned { tok: Tok::Gt, offset: i });
                    i += 1;
                }
            }
            b'\'' | b'"' => {
                let (s, next) = lex_string(src, i)?;
                out.push(Spanned { tok: Tok::Str(s), offset: i });
                i = next;
            }
            b'`' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j] != b'`' {
                    j += 1;
                }
                if j >= bytes.len() {
                    return Err(unexpected(src, bytes.len(), &["closing back-quote"]));
                }
                out.push(Spanned {
                    tok: Tok::BqIdent(src[start..j].to_string()),
                    offset: i,
                });
                i = j + 1;
            }
            b'0'..=b'9' | b'.' => {
                let (n, next) = lex_number(src, i)?;
                out.push(Spanned { tok: Tok::Number(n), offset: i });
                i = next;
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &src[start..j];
                // keywords are case-sensitive lowercase
                let tok = match word {
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "null" => Tok::Null,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push(Spanned { tok, offset: start });
                i = j;
            }
            _ => return Err(unexpected(src, i, &["token"])),
        }
    }
    out.push(Spanned { tok: Tok::Eof, offset: bytes.len() });
    Ok(out)
}

fn lex_string(src: &str, start: usize) -> Result<(String, usize), ParseError> {
    let bytes = src.as_bytes();
    let quote = bytes[start];
    let mut out = String::new();
    let mut i = start + 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => {
                let esc = bytes.get(i + 1).copied();
                let ch = match esc {
                    Some(b'\\') => '\\',
                    Some(b'\'') => '\'',
                    Some(b'"') => '"',
                    Some(b'n') => '\n',
                    Some(b't') => '\t',
                    _ => return Err(unexpected(src, i, &["escape sequence"])),
                };
                out.push(ch);
                i += 2;
            }
            c if c == quote => return Ok((out, i + 1)),
            _ => {
                // take the full UTF-8 scalar, not just one byte
                let ch = src[i..].chars().next().unwrap();
                out.push(ch);
                i += ch.len_utf8();
            }
        }
    }
    Err(unexpected(src, bytes.len(), &["closing quote"]))
}

fn lex_number(src: &str, start: usize) -> Result<(f64, usize), ParseError> {
    let bytes = src.as_bytes();
    let mut j = start;
    let mut seen_dot = false;
    let mut seen_exp = false;
    while j < bytes.len() {
        match bytes[j] {
            b'0'..=b'9' => j += 1,
            b'.' if !seen_dot && !seen_exp => {
                seen_dot = true;
                j += 1;
            }
            b'e' | b'E' if !seen_exp && j > start => {
                seen_exp = true;
                j += 1;
                if matches!(bytes.get(j), Some(b'+') | Some(b'-')) {
                    j += 1;
                }
            }
            _ => break,
        }
    }
    src[start..j]
        .parse::<f64>()
        .map(|n| (n, j))
        .map_err(|_| unexpected(src, start, &["number"]))
}

fn unexpected(src: &str, offset: usize, expected: &[&'static str]) -> ParseError {
    let found = src[offset.min(src.len())..]
        .chars()
        .next()
        .map(|c| format!("{c:?}"))
        .unwrap_or_else(|| "end of input".to_string());
    ParseError {
        offset,
        found,
        expected: expected.to_vec(),
    }
}
