use crate::error::{HyperError, Result, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Arrow,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token { tok, span: start..i });
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'-' {
            if bytes.get(i + 1) == Some(&b'>') {
                i += 2;
                out.push(Token { tok: Tok::Arrow, span: start..i });
            } else {
                i += 1;
                out.push(Token { tok: Tok::Minus, span: start..i });
            }
        } else if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token {
                tok: Tok::Number(src[start..i].to_string()),
                span: start..i,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                span: start..i,
            });
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(HyperError::syntax(
                start..start + ch.len_utf8(),
                format!("unexpected character `{ch}`"),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic() {
        assert_eq!(
            toks("1 - eps"),
            vec![Tok::Number("1".into()), Tok::Minus, Tok::Ident("eps".into())]
        );
        assert_eq!(
            toks("lim(n->inf, .5)"),
            vec![
                Tok::Ident("lim".into()),
                Tok::LParen,
                Tok::Ident("n".into()),
                Tok::Arrow,
                Tok::Ident("inf".into()),
                Tok::Comma,
                Tok::Number(".5".into()),
                Tok::RParen
            ]
        );
    }

    #[test]
    fn spans_and_errors() {
        let t = tokenize("x^12").unwrap();
        assert_eq!(t[2].span, 2..4);
        let e = tokenize("x # 1").unwrap_err();
        assert!(matches!(e, HyperError::SyntaxError { span, .. } if span == (2..3)));
    }
}
