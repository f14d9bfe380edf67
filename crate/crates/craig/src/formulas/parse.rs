use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Tilde,
    Boxop,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(char::is_whitespace) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.bump() else {
                out.push((Tok::End, line, col));
                return Ok(out);
            };
            let tok = match c {
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => match self.bump() {
                    Some(']') => Tok::Boxop,
                    _ => return Err(self.err(line, col, "expected `[]`")),
                },
                '-' => match self.bump() {
                    Some('>') => Tok::Arrow,
                    _ => return Err(self.err(line, col, "expected `->`")),
                },
                c if c.is_ascii_lowercase() => {
                    let mut s = c.to_string();
                    while let Some(d) = self.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                c => return Err(self.err(line, col, format!("unexpected character `{c}`"))),
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> ParseError {
        let (_, line, col) = self.toks[self.pos];
        ParseError { line, col, msg: msg.to_string() }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.next();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.next();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.next();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Boxop => {
                self.next();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(match s.as_str() {
                    "true" => Formula::top(),
                    "false" => Formula::Bottom,
                    _ => Formula::Atom(s),
                })
            }
            Tok::LParen => {
                self.next();
                let f = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.next();
                Ok(f)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Parse a formula. `A -> B` becomes `~A | B`, `true` becomes `~false`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let lexer = Lexer { chars: text.chars().collect(), pos: 0, line: 1, col: 1 };
    let mut p = Parser { toks: lexer.tokens()?, pos: 0 };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}
