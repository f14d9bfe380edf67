//! Formulas, clause sets and their semantics.

mod clause;
mod parse;
mod truth;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use clause::{
    clause_set_formula, clause_set_to_text, clause_to_string, cnf, is_pruned_clause_set, mcnf,
    parse_clause_set, product, prune, subsumes, Clause, ClauseSet, Literal,
};
pub use parse::{parse_formula, ParseError};
pub use truth::{
    canonical_cnf, entails, enumerate_interpolant_sets, enumerate_interpolants, equiv,
    is_pruned_interpolant, satisfiable, valid, InterpolantError, TruthTable,
};

/// Propositional and modal formulas. `→` and `⊤` only exist as sugar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Atom(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

pub type Assignment = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("assignment does not cover atom `{0}`")]
    IncompleteAssignment(String),
    #[error("modal formulas need a Kripke model")]
    ModalNeedsModel,
    #[error("modal formulas are not supported here")]
    ModalNotSupported,
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn top() -> Formula {
        Formula::Neg(Box::new(Formula::Bottom))
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::neg(a), b)
    }

    /// Right-associated conjunction; the empty conjunction is ⊤.
    pub fn conj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::top(),
            Some(last) => it.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-associated disjunction; the empty disjunction is ⊥.
    pub fn disj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::Bottom,
            Some(last) => it.fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Neg(x) if **x == Formula::Bottom)
    }

    /// Atom, ⊥ or ⊤.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Bottom) || self.is_top()
    }

    /// Atomic, or the negation of an atom or ⊥.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Neg(x) => matches!(**x, Formula::Atom(_) | Formula::Bottom),
            f => f.is_atomic(),
        }
    }

    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Atom(_) => false,
            Formula::Box(_) => true,
            Formula::Neg(a) => a.is_modal(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_modal() || b.is_modal(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Neg(a) | Formula::Box(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Symbol count. ⊤ is a single symbol.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 1,
            f if f.is_top() => 1,
            Formula::Neg(a) | Formula::Box(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Number of connectives; ⊤ counts as a constant.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 0,
            f if f.is_top() => 0,
            Formula::Neg(a) | Formula::Box(a) => 1 + a.degree(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.degree() + b.degree(),
        }
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                match f {
                    Formula::Bottom | Formula::Atom(_) => {}
                    Formula::Neg(a) | Formula::Box(a) => stack.push(a),
                    Formula::And(a, b) | Formula::Or(a, b) => {
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
        out
    }

    /// Replace every occurrence of atom `from` by `to`.
    pub fn rename(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Atom(p) if p == from => Formula::atom(to),
            Formula::Bottom | Formula::Atom(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.rename(from, to)),
            Formula::Box(a) => Formula::boxed(a.rename(from, to)),
            Formula::And(a, b) => Formula::and(a.rename(from, to), b.rename(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename(from, to), b.rename(from, to)),
        }
    }

    /// Negation normal form. Box bodies are left alone, `¬□F` stays a modal literal.
    pub fn nnf(&self) -> Formula {
        match self {
            Formula::Bottom | Formula::Atom(_) | Formula::Box(_) => self.clone(),
            Formula::And(a, b) => Formula::and(a.nnf(), b.nnf()),
            Formula::Or(a, b) => Formula::or(a.nnf(), b.nnf()),
            Formula::Neg(a) => match &**a {
                Formula::Bottom | Formula::Atom(_) | Formula::Box(_) => self.clone(),
                Formula::Neg(x) => x.nnf(),
                Formula::And(x, y) => {
                    Formula::or(Formula::neg((**x).clone()).nnf(), Formula::neg((**y).clone()).nnf())
                }
                Formula::Or(x, y) => {
                    Formula::and(Formula::neg((**x).clone()).nnf(), Formula::neg((**y).clone()).nnf())
                }
            },
        }
    }

    /// Negation applied only to atoms, ⊥ and boxed subformulas.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Atom(_) | Formula::Box(_) => true,
            Formula::Neg(a) => matches!(**a, Formula::Bottom | Formula::Atom(_) | Formula::Box(_)),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_nnf() && b.is_nnf(),
        }
    }

    /// Classical evaluation.
    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        Ok(match self {
            Formula::Bottom => false,
            Formula::Atom(p) => *a
                .get(p)
                .ok_or_else(|| FormulaError::IncompleteAssignment(p.clone()))?,
            Formula::Neg(x) => !x.eval(a)?,
            Formula::And(x, y) => x.eval(a)? && y.eval(a)?,
            Formula::Or(x, y) => x.eval(a)? || y.eval(a)?,
            Formula::Box(_) => return Err(FormulaError::ModalNeedsModel),
        })
    }

    /// Satisfaction at `world`; atoms absent from the valuation are false.
    pub fn eval_kripke(&self, m: &KripkeModel, world: usize) -> bool {
        match self {
            Formula::Bottom => false,
            Formula::Atom(p) => m.val[world].contains(p),
            Formula::Neg(x) => !x.eval_kripke(m, world),
            Formula::And(x, y) => x.eval_kripke(m, world) && y.eval_kripke(m, world),
            Formula::Or(x, y) => x.eval_kripke(m, world) || y.eval_kripke(m, world),
            Formula::Box(x) => m.succ[world].iter().all(|&v| x.eval_kripke(m, v)),
        }
    }
}

/// `(c ∨ x) ∧ (¬c ∨ y)`, kept unexpanded.
pub fn sel(c: Formula, x: Formula, y: Formula) -> Formula {
    Formula::and(Formula::or(c.clone(), x), Formula::or(Formula::neg(c), y))
}

/// Finite Kripke model; world 0 is the root by convention.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KripkeModel {
    pub succ: Vec<Vec<usize>>,
    pub val: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    pub fn add_world(&mut self, atoms: BTreeSet<String>) -> usize {
        self.succ.push(Vec::new());
        self.val.push(atoms);
        self.val.len() - 1
    }

    /// Copy `other` into `self`, returning the index its root got.
    pub fn graft(&mut self, other: &KripkeModel) -> usize {
        let off = self.val.len();
        for (s, v) in other.succ.iter().zip(&other.val) {
            self.succ.push(s.iter().map(|w| w + off).collect());
            self.val.push(v.clone());
        }
        off
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, (s, v)) in self.succ.iter().zip(&self.val).enumerate() {
            let atoms: Vec<&str> = v.iter().map(|x| x.as_str()).collect();
            let succ: Vec<String> = s.iter().map(|x| format!("w{x}")).collect();
            writeln!(f, "w{w}: {{{}}} -> [{}]", atoms.join(", "), succ.join(", "))?;
        }
        Ok(())
    }
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

fn write_prec(f: &Formula, ctx: u8, out: &mut String) {
    match f {
        Formula::Bottom => out.push_str("false"),
        Formula::Atom(p) => out.push_str(p),
        x if x.is_top() => out.push_str("true"),
        Formula::Neg(a) => {
            out.push('~');
            write_prec(a, PREC_UNARY, out);
        }
        Formula::Box(a) => {
            out.push_str("[]");
            write_prec(a, PREC_UNARY, out);
        }
        Formula::And(a, b) => {
            let wrap = ctx > PREC_AND;
            if wrap {
                out.push('(');
            }
            write_prec(a, PREC_AND, out);
            out.push_str(" & ");
            write_prec(b, PREC_UNARY, out);
            if wrap {
                out.push(')');
            }
        }
        Formula::Or(a, b) => {
            let wrap = ctx > PREC_OR;
            if wrap {
                out.push('(');
            }
            write_prec(a, PREC_OR, out);
            out.push_str(" | ");
            write_prec(b, PREC_AND, out);
            if wrap {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}
