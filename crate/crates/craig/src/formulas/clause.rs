use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::{parse_formula, Formula, ParseError};

/// A literal: polarity plus an atom, ⊥ or boxed body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    neg: bool,
    body: Formula,
    key: String,
}

fn body_text(body: &Formula) -> String {
    match body {
        Formula::Box(inner) if matches!(**inner, Formula::Atom(_)) => format!("[]{inner}"),
        Formula::Box(inner) => format!("[]({inner})"),
        other => other.to_string(),
    }
}

impl Literal {
    fn new(neg: bool, body: Formula) -> Literal {
        assert!(
            matches!(body, Formula::Atom(_) | Formula::Bottom | Formula::Box(_)),
            "literal body must be an atom, ⊥ or a boxed formula"
        );
        let key = body_text(&body);
        Literal { neg, body, key }
    }

    pub fn pos(body: Formula) -> Literal {
        Literal::new(false, body)
    }

    pub fn neg(body: Formula) -> Literal {
        Literal::new(true, body)
    }

    pub fn atom(name: &str) -> Literal {
        Literal::pos(Formula::atom(name))
    }

    pub fn top() -> Literal {
        Literal::neg(Formula::Bottom)
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    /// Printed body, used as the atom key in clause algebra.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn dual(&self) -> Literal {
        Literal { neg: !self.neg, body: self.body.clone(), key: self.key.clone() }
    }

    pub fn is_top(&self) -> bool {
        self.neg && self.body == Formula::Bottom
    }

    pub fn is_bottom(&self) -> bool {
        !self.neg && self.body == Formula::Bottom
    }

    pub fn is_modal(&self) -> bool {
        matches!(self.body, Formula::Box(_))
    }

    pub fn to_formula(&self) -> Formula {
        if self.neg {
            Formula::neg(self.body.clone())
        } else {
            self.body.clone()
        }
    }

    pub fn from_formula(f: &Formula) -> Option<Literal> {
        match f {
            Formula::Atom(_) | Formula::Bottom | Formula::Box(_) => Some(Literal::pos(f.clone())),
            Formula::Neg(x) if matches!(**x, Formula::Atom(_) | Formula::Bottom | Formula::Box(_)) => {
                Some(Literal::neg((**x).clone()))
            }
            _ => None,
        }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.neg, &self.key).cmp(&(other.neg, &other.key)).then_with(|| self.body.cmp(&other.body))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            f.write_str("~")?;
        }
        f.write_str(&self.key)
    }
}

pub type Clause = BTreeSet<Literal>;
pub type ClauseSet = BTreeSet<Clause>;

pub fn clause_to_string(c: &Clause) -> String {
    c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// One clause per line; an empty line is the empty clause.
pub fn clause_set_to_text(cs: &ClauseSet) -> String {
    cs.iter().map(|c| clause_to_string(c) + "\n").collect()
}

fn split_tokens(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    out.push(&line[s..i]);
                }
                continue;
            }
            _ => {}
        }
        if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&line[s..]);
    }
    out
}

/// Inverse of [`clause_set_to_text`]. Lines starting with `#` are comments.
pub fn parse_clause_set(text: &str) -> Result<ClauseSet, ParseError> {
    let mut cs = ClauseSet::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut clause = Clause::new();
        for tok in split_tokens(line) {
            let f = parse_formula(tok).map_err(|mut e| {
                e.line = n + 1;
                e
            })?;
            let lit = Literal::from_formula(&f).ok_or_else(|| ParseError {
                line: n + 1,
                col: line.find(tok).map_or(1, |c| c + 1),
                msg: format!("`{tok}` is not a literal"),
            })?;
            clause.insert(lit);
        }
        cs.insert(clause);
    }
    Ok(cs)
}

/// `{C ∪ D | C ∈ a, D ∈ b}`.
pub fn product(a: &ClauseSet, b: &ClauseSet) -> ClauseSet {
    let mut out = ClauseSet::new();
    for c in a {
        for d in b {
            out.insert(c.union(d).cloned().collect());
        }
    }
    out
}

fn cnf_nnf(f: &Formula) -> ClauseSet {
    if f.is_top() {
        return ClauseSet::new();
    }
    match f {
        Formula::Bottom => [Clause::new()].into_iter().collect(),
        Formula::And(a, b) => {
            let mut s = cnf_nnf(a);
            s.extend(cnf_nnf(b));
            s
        }
        Formula::Or(a, b) => product(&cnf_nnf(a), &cnf_nnf(b)),
        other => {
            let lit = Literal::from_formula(other).expect("nnf leaves are literals");
            [[lit].into_iter().collect()].into_iter().collect()
        }
    }
}

/// Distributive clause form of `nnf(f)`. Boxed subformulas are literals.
pub fn cnf(f: &Formula) -> ClauseSet {
    cnf_nnf(&f.nnf())
}

/// Clause form over modal literals; the same recursion as [`cnf`].
pub fn mcnf(f: &Formula) -> ClauseSet {
    cnf(f)
}

/// Right-nested conjunction of right-nested disjunctions, canonical order.
pub fn clause_set_formula(cs: &ClauseSet) -> Formula {
    Formula::conj(
        cs.iter()
            .map(|c| Formula::disj(c.iter().map(Literal::to_formula).collect()))
            .collect(),
    )
}

/// `a ⊑ b`: every clause of `b` contains a clause of `a`.
pub fn subsumes(a: &ClauseSet, b: &ClauseSet) -> bool {
    b.iter().all(|bc| a.iter().any(|ac| ac.is_subset(bc)))
}

fn is_tautology(c: &Clause) -> bool {
    c.iter().any(|l| l.is_top() || (!l.neg && c.contains(&l.dual())))
}

/// No body in both polarities and no ⊤ literal.
pub fn is_pruned_clause_set(cs: &ClauseSet) -> bool {
    let lits: BTreeSet<&Literal> = cs.iter().flatten().collect();
    lits.iter().all(|l| !l.is_top() && !lits.contains(&l.dual()))
}

/// Remove every body occurring in both polarities by exhaustive resolution.
pub fn prune(cs: &ClauseSet) -> ClauseSet {
    let mut cur: ClauseSet = cs.iter().filter(|c| !is_tautology(c)).cloned().collect();
    loop {
        let lits: BTreeSet<&Literal> = cur.iter().flatten().collect();
        let mixed: Vec<Literal> = lits
            .iter()
            .filter(|l| !l.neg && lits.contains(&l.dual()))
            .map(|l| (*l).clone())
            .collect();
        if mixed.is_empty() {
            return cur;
        }
        for p in mixed {
            let np = p.dual();
            let (with_p, rest): (Vec<Clause>, Vec<Clause>) =
                cur.into_iter().partition(|c| c.contains(&p) || c.contains(&np));
            let mut next: ClauseSet = rest.into_iter().collect();
            for d1 in with_p.iter().filter(|c| c.contains(&p)) {
                for d2 in with_p.iter().filter(|c| c.contains(&np)) {
                    let r: Clause =
                        d1.iter().chain(d2.iter()).filter(|l| **l != p && **l != np).cloned().collect();
                    if !is_tautology(&r) {
                        next.insert(r);
                    }
                }
            }
            cur = next;
        }
    }
}
