//! Tokens with positions. `#` starts a comment; whitespace and newlines separate tokens.

use crate::ast::Pos;
use crate::error::{ErrorKind, SpecError, SpecResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    /// `--json` and similar flags, without the dashes.
    Flag(String),
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

pub fn lex(text: &str) -> SpecResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
        } else if ident_start(c) {
            let mut s = String::new();
            while i < chars.len() && ident_char(chars[i]) {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push(Token { tok: Tok::Ident(s), pos });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            if i < chars.len() && ident_start(chars[i]) {
                return Err(SpecError::new(ErrorKind::Lexical, Pos { line, col }, "identifier glued to a number"));
            }
            out.push(Token { tok: Tok::Int(s), pos });
        } else if c == '"' {
            advance(&mut i, &mut line, &mut col, c);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(SpecError::new(ErrorKind::Lexical, pos, "unterminated string"));
                    }
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col, '"');
                        break;
                    }
                    Some('\\') if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                        s.push(chars[i + 1]);
                        advance(&mut i, &mut line, &mut col, '\\');
                        let ch = chars[i];
                        advance(&mut i, &mut line, &mut col, ch);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut col, ch);
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), pos });
        } else if c == '-' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2).is_some_and(|&d| ident_start(d)) {
            advance(&mut i, &mut line, &mut col, '-');
            advance(&mut i, &mut line, &mut col, '-');
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-' || chars[i] == '_') {
                s.push(chars[i]);
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push(Token { tok: Tok::Flag(s), pos });
        } else if "{}()[],;:=*+-/^".contains(c) {
            advance(&mut i, &mut line, &mut col, c);
            out.push(Token { tok: Tok::Sym(c), pos });
        } else {
            return Err(SpecError::new(ErrorKind::Lexical, pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let t = lex("field K = Fp(3) # comment\nrun f(A, \"x\") --json").unwrap();
        assert_eq!(t[0], Token { tok: Tok::Ident("field".into()), pos: Pos { line: 1, col: 1 } });
        assert_eq!(t[5].tok, Tok::Int("3".into()));
        assert_eq!(t[7].pos, Pos { line: 2, col: 1 });
        assert!(t.iter().any(|x| x.tok == Tok::Str("x".into())));
        assert_eq!(t.last().unwrap().tok, Tok::Flag("json".into()));
    }

    #[test]
    fn errors_are_located() {
        let e = lex("field K = Q\n  @").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Lexical);
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        assert!(lex("run f(\"abc").is_err());
    }
}
