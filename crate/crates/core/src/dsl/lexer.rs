use super::error::ParseError;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// `d/dX`
    Vector(String),
    /// `dx[X]`
    Form(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(|&c| is_ident_char(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }
}

/// Splits source text into tokens. `#` starts a line comment.
pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek(0) {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek(0).is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let (line, col) = (cur.line, cur.col);
        let tok = if c == 'd'
            && cur.peek(1) == Some('/')
            && cur.peek(2) == Some('d')
            && cur.peek(3).is_some_and(is_ident_start)
        {
            for _ in 0..3 {
                cur.bump();
            }
            Tok::Vector(cur.ident())
        } else if is_ident_start(c) {
            let name = cur.ident();
            if name == "dx" && cur.peek(0) == Some('[') {
                cur.bump();
                while cur.peek(0).is_some_and(char::is_whitespace) {
                    cur.bump();
                }
                if !cur.peek(0).is_some_and(is_ident_start) {
                    return Err(cur.error("expected a coordinate name after 'dx['"));
                }
                let coord = cur.ident();
                while cur.peek(0).is_some_and(char::is_whitespace) {
                    cur.bump();
                }
                if cur.bump() != Some(']') {
                    return Err(cur.error("expected ']'"));
                }
                Tok::Form(coord)
            } else {
                Tok::Ident(name)
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(d) = cur.peek(0).filter(char::is_ascii_digit) {
                digits.push(d);
                cur.bump();
            }
            if cur.peek(0) == Some('.') {
                return Err(cur.error("decimal literals are not supported; write n/m"));
            }
            Tok::Int(digits.parse().expect("digits"))
        } else if "{}[]();:,+-*/^&=".contains(c) {
            cur.bump();
            Tok::Sym(c)
        } else {
            return Err(cur.error(format!("unexpected character '{c}'")));
        };
        out.push(Token { tok, line, col });
    }
    out.push(Token {
        tok: Tok::Eof,
        line: cur.line,
        col: cur.col,
    });
    Ok(out)
}
