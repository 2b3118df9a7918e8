use crate::error::{Error, Result};

use super::{Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meet,
    Join,
    Open,
    Close,
    End,
}

/// Tokens paired with their character offsets.
fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match c {
            _ if c.is_whitespace() => i += 1,
            '&' | '∧' => {
                out.push((i, Tok::Meet));
                i += 1;
            }
            '|' | '∨' => {
                out.push((i, Tok::Join));
                i += 1;
            }
            '/' if next == Some('\\') => {
                out.push((i, Tok::Meet));
                i += 2;
            }
            '\\' if next == Some('/') => {
                out.push((i, Tok::Join));
                i += 2;
            }
            '(' => match pair_name(&chars, i) {
                Some(end) => {
                    out.push((i, Tok::Ident(chars[i..end].iter().collect())));
                    i = end;
                }
                None => {
                    out.push((i, Tok::Open));
                    i += 1;
                }
            },
            ')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            '/' | '\\' => {
                return Err(Error::SyntaxError {
                    position: i,
                    message: format!("unexpected `{c}`"),
                })
            }
            _ => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                if i == start {
                    return Err(Error::SyntaxError {
                        position: i,
                        message: format!("unexpected `{c}`"),
                    });
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            }
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"()&|∧∨/\\,".contains(c)
}

/// End offset of a product element name such as `(0,a)` or `((0,a),1)`
/// starting at `start`: a balanced group containing a comma and nothing but
/// identifier characters.
fn pair_name(chars: &[char], start: usize) -> Option<usize> {
    let mut depth = 0usize;
    let mut comma = false;
    for (i, &c) in chars.iter().enumerate().skip(start) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return comma.then_some(i + 1);
                }
            }
            ',' => comma = true,
            _ if is_ident_char(c) => {}
            _ => return None,
        }
    }
    None
}

struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

pub(super) fn parse(sig: &Signature, text: &str) -> Result<Term> {
    let mut p = Parser { sig, toks: lex(text)?, pos: 0 };
    let t = p.expr()?;
    match p.peek() {
        (_, Tok::End) => Ok(t),
        (at, tok) => Err(Error::SyntaxError {
            position: at,
            message: format!("unexpected {}", describe(&tok)),
        }),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Meet => "meet operator".into(),
        Tok::Join => "join operator".into(),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

impl Parser<'_> {
    fn peek(&self) -> (usize, Tok) {
        self.toks[self.pos].clone()
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.peek();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Term> {
        let mut parts = vec![self.conj()?];
        while self.peek().1 == Tok::Join {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Term::join(parts))
    }

    fn conj(&mut self) -> Result<Term> {
        let mut parts = vec![self.atom()?];
        while self.peek().1 == Tok::Meet {
            self.bump();
            parts.push(self.atom()?);
        }
        Ok(Term::meet(parts))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.bump() {
            (_, Tok::Ident(name)) => {
                if let Some(v) = self.sig.var(&name) {
                    Ok(Term::Var(v))
                } else if let Some(e) = self.sig.lattice().element(&name) {
                    Ok(Term::Const(e))
                } else {
                    Err(Error::UnknownIdentifier(name))
                }
            }
            (_, Tok::Open) => {
                let t = self.expr()?;
                match self.bump() {
                    (_, Tok::Close) => Ok(t),
                    (at, tok) => Err(Error::SyntaxError {
                        position: at,
                        message: format!("expected `)`, found {}", describe(&tok)),
                    }),
                }
            }
            (at, tok) => Err(Error::SyntaxError {
                position: at,
                message: format!("expected a variable, constant or `(`, found {}", describe(&tok)),
            }),
        }
    }
}
