use std::fmt;
use std::str::FromStr;

use super::{Proof, Rule, SequentError, SplitSequent};

impl Proof {
    /// One node per line, children indented by two spaces.
    pub fn to_sexpr(&self) -> String {
        fn go(p: &Proof, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            let main = p.main.map_or(-1, |m| m as i64);
            out.push_str(&format!("({} \"{}\" {}", p.rule.name(), p.seq, main));
            for q in &p.premises {
                out.push('\n');
                go(q, depth + 1, out);
            }
            out.push(')');
        }
        let mut s = String::new();
        go(self, 0, &mut s);
        s
    }

    /// Parse the S-expression form. The result is not checked.
    pub fn parse(text: &str) -> Result<Proof, SequentError> {
        let toks = tokenize(text)?;
        let mut pos = 0;
        let p = parse_node(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(SequentError::Syntax("trailing input after proof".into()));
        }
        Ok(p)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

impl FromStr for Proof {
    type Err = SequentError;

    fn from_str(s: &str) -> Result<Proof, SequentError> {
        Proof::parse(s)
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, SequentError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(x) => s.push(x),
                        None => return Err(SequentError::Syntax("unterminated string".into())),
                    }
                }
                out.push(Tok::Str(s));
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut s = String::new();
                while let Some(&x) = chars.peek() {
                    if x.is_whitespace() || x == '(' || x == ')' || x == '"' {
                        break;
                    }
                    s.push(x);
                    chars.next();
                }
                out.push(Tok::Word(s));
            }
        }
    }
    Ok(out)
}

fn parse_node(toks: &[Tok], pos: &mut usize) -> Result<Proof, SequentError> {
    let err = |m: &str| SequentError::Syntax(m.to_string());
    let mut next = || {
        let t = toks.get(*pos);
        *pos += 1;
        t
    };
    if next() != Some(&Tok::Open) {
        return Err(err("expected `(`"));
    }
    let rule = match next() {
        Some(Tok::Word(w)) => Rule::from_name(w).ok_or_else(|| err(&format!("unknown rule `{w}`")))?,
        _ => return Err(err("expected a rule name")),
    };
    let seq = match next() {
        Some(Tok::Str(s)) => SplitSequent::parse(s)?,
        _ => return Err(err("expected a quoted sequent")),
    };
    let main = match next() {
        Some(Tok::Word(w)) => match w.parse::<i64>() {
            Ok(-1) => None,
            Ok(n) if n >= 0 => Some(n as usize),
            _ => return Err(err(&format!("bad main index `{w}`"))),
        },
        _ => return Err(err("expected a main index")),
    };
    let mut premises = Vec::new();
    loop {
        match toks.get(*pos) {
            Some(Tok::Close) => {
                *pos += 1;
                break;
            }
            Some(Tok::Open) => premises.push(parse_node(toks, pos)?),
            _ => return Err(err("expected `(` or `)`")),
        }
    }
    Ok(Proof { rule, seq, main, premises })
}

#[cfg(test)]
mod tests {
    use super::super::{Part, Side};
    use super::*;
    use crate::formulas::parse_formula;

    #[test]
    fn round_trip() {
        let f = |s: &str| parse_formula(s).unwrap();
        let l = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, f("p"));
        let r = Proof::ax(f("p"), Part::G2, Part::D2).weaken(Part::G1, f("p"));
        let c = Proof::cut(l, r, Side::Two, f("p")).unwrap();
        let text = c.to_sexpr();
        assert!(text.starts_with("(Cut \"p ; => ; p\" -1\n  (Rw "));
        let back = Proof::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_sexpr(), text);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Proof::parse("(Ax \"p ; => p ;\" 0").is_err());
        assert!(Proof::parse("(Zz \"p ; => p ;\" 0)").is_err());
        assert!(Proof::parse("(Ax \"p ; => p ;\" 0) x").is_err());
    }
}
