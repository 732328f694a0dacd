use super::{ParseError, ParseErrorKind, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Integer,
    Symbol,
    Keyword,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

impl Token {
    pub fn is_symbol(&self, s: &str) -> bool {
        self.kind == TokenKind::Symbol && self.text == s
    }

    pub fn is_keyword(&self, s: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == s
    }
}

pub const KEYWORDS: &[&str] = &["ring", "poly", "ideal", "matrix", "local", "global"];

const SYMBOLS: &str = "+-*/^(),;=[]";

/// Split `src` into tokens. `#` starts a comment running to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, column: col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
        } else if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                text.push(d);
                chars.next();
                col += 1;
            }
            if let Some(&d) = chars.peek() {
                if d.is_alphabetic() || d == '_' {
                    return Err(ParseError::new(
                        ParseErrorKind::UnexpectedCharacter,
                        format!("'{text}{d}': implicit multiplication is not allowed, write '{text}*{d}'"),
                        Some(Span { line, column: col }),
                    ));
                }
            }
            out.push(Token { kind: TokenKind::Integer, text, span });
        } else if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                text.push(d);
                chars.next();
                col += 1;
            }
            let kind = if KEYWORDS.contains(&text.as_str()) { TokenKind::Keyword } else { TokenKind::Ident };
            out.push(Token { kind, text, span });
        } else if SYMBOLS.contains(c) {
            chars.next();
            col += 1;
            out.push(Token { kind: TokenKind::Symbol, text: c.to_string(), span });
        } else {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedCharacter,
                format!("unexpected character {c:?}"),
                Some(span),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_kinds() {
        let t = tokenize("ring (x, y) local;\n# note\npoly f = x^2;").unwrap();
        assert_eq!(t[0].kind, TokenKind::Keyword);
        assert_eq!(t[2].text, "x");
        assert_eq!(t[2].span, Span { line: 1, column: 7 });
        let f = t.iter().find(|t| t.text == "f").unwrap();
        assert_eq!(f.span, Span { line: 3, column: 6 });
        assert!(t.windows(2).all(|w| w[0].span <= w[1].span));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let e = tokenize("3x").unwrap_err();
        assert_eq!(e.span, Some(Span { line: 1, column: 2 }));
    }

    #[test]
    fn stray_character() {
        assert!(tokenize("x $ y").is_err());
    }
}
