use crate::ast::Pos;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: [&str; 14] = ["..", ";", "=", "[", "]", "(", ")", ",", "+", "-", "*", "/", "^", ":"];

/// Splits a script into tokens. `#` and `//` start comments that run to the
/// end of the line.
pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, col };
        let rest: String = chars[k..chars.len().min(k + 2)].iter().collect();
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
        } else if c.is_whitespace() {
            col += 1;
            k += 1;
        } else if c == '#' || rest == "//" {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            col += k - start;
            out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let n = digits
                .parse()
                .map_err(|_| ParseError::syntax(pos, format!("integer literal {digits} is too large")))?;
            col += k - start;
            out.push((Tok::Int(n), pos));
        } else if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            k += sym.len();
            col += sym.len();
            out.push((Tok::Sym(sym), pos));
        } else {
            return Err(ParseError::syntax(pos, format!("unexpected character {c:?}")));
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
