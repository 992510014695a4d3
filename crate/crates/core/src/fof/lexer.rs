use std::path::Path;

use crate::error::{FofError, Position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Quoted(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Bang,
    Amp,
    Tilde,
    Implies,
    Dot,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("'{s}'"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Implies => "`=>`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str, origin: &Path) -> Result<Vec<Spanned>, FofError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let pos = |line, column| Position {
        path: origin.to_path_buf(),
        line,
        column,
    };

    while i < bytes.len() {
        let b = bytes[i];
        if !b.is_ascii() {
            return Err(FofError::NonAscii {
                pos: pos(line, col),
                byte: b,
            });
        }
        let (start_line, start_col) = (line, col);
        let single = match b {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            b' ' | b'\t' | b'\r' => {
                i += 1;
                col += 1;
                continue;
            }
            b'%' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    if !bytes[i].is_ascii() {
                        return Err(FofError::NonAscii {
                            pos: pos(line, col),
                            byte: bytes[i],
                        });
                    }
                    i += 1;
                    col += 1;
                }
                continue;
            }
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b'!' => Some(Tok::Bang),
            b'&' => Some(Tok::Amp),
            b'~' => Some(Tok::Tilde),
            b'.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            i += 1;
            col += 1;
            continue;
        }
        if b == b'=' && bytes.get(i + 1) == Some(&b'>') {
            out.push(Spanned {
                tok: Tok::Implies,
                line,
                column: col,
            });
            i += 2;
            col += 2;
            continue;
        }
        if b == b'\'' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j] != b'\'' && bytes[j] != b'\n' {
                if !bytes[j].is_ascii() {
                    return Err(FofError::NonAscii {
                        pos: pos(line, col + (j - i)),
                        byte: bytes[j],
                    });
                }
                j += 1;
            }
            if j >= bytes.len() || bytes[j] != b'\'' {
                return Err(FofError::Syntax {
                    pos: pos(line, col),
                    message: "unterminated quoted name".into(),
                });
            }
            out.push(Spanned {
                tok: Tok::Quoted(text[i + 1..j].to_string()),
                line,
                column: col,
            });
            col += j + 1 - i;
            i = j + 1;
            continue;
        }
        if b.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(text[i..j].to_string()),
                line,
                column: col,
            });
            col += j - i;
            i = j;
            continue;
        }
        let message = match b {
            b'|' | b'<' | b'?' | b'=' => {
                format!("unsupported connective starting with `{}`", b as char)
            }
            _ => format!("unexpected character `{}`", b as char),
        };
        return Err(FofError::Syntax {
            pos: pos(line, col),
            message,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("% c\n  fof(a)", Path::new("x")).unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("fof".into()));
        assert_eq!((toks[0].line, toks[0].column), (2, 3));
        assert_eq!(toks.len(), 4);
    }

    #[test]
    fn rejects_non_ascii_with_position() {
        let err = tokenize("fof(\u{e9}", Path::new("x")).unwrap_err();
        match err {
            FofError::NonAscii { pos, .. } => assert_eq!((pos.line, pos.column), (1, 5)),
            e => panic!("{e}"),
        }
    }
}
