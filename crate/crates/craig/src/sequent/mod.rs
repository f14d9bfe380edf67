//! Split sequents, proof trees, rule builders and the proof checker.
//!
//! Occurrences are identified by position. When a rule's auxiliary formula
//! occurs several times in a premise component, the last occurrence is the
//! auxiliary one; the remaining copies correspond to the conclusion context
//! in order. Logical rules append their main formula to its component,
//! weakening prepends it.

mod check;
mod index;
mod mono;
mod sexpr;

use std::fmt;

use crate::formulas::{parse_formula, Formula};

pub use check::{check_proof, CutPolicy, ProofViolation, System};
pub use index::{
    axiom_type, classify_cut, is_tame, occurrence_metrics, AxiomInfo, AxiomType, CutInfo, Occ,
    OccurrenceMetrics, ProofIndex, Tameness,
};
pub use mono::{monochromatize, MonoError};
pub(crate) use index::links;

/// Component of a split sequent `Γ1 ; Γ2 ⇒ Δ1 ; Δ2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    G1 = 0,
    G2 = 1,
    D1 = 2,
    D2 = 3,
}

/// Side of the Maehara partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

impl Part {
    pub const ALL: [Part; 4] = [Part::G1, Part::G2, Part::D1, Part::D2];

    pub fn ante(side: Side) -> Part {
        match side {
            Side::One => Part::G1,
            Side::Two => Part::G2,
        }
    }

    pub fn succ(side: Side) -> Part {
        match side {
            Side::One => Part::D1,
            Side::Two => Part::D2,
        }
    }

    pub fn side(self) -> Side {
        match self {
            Part::G1 | Part::D1 => Side::One,
            Part::G2 | Part::D2 => Side::Two,
        }
    }

    pub fn is_ante(self) -> bool {
        matches!(self, Part::G1 | Part::G2)
    }

    /// Same side, other half of the sequent.
    pub fn flip(self) -> Part {
        match self {
            Part::G1 => Part::D1,
            Part::G2 => Part::D2,
            Part::D1 => Part::G1,
            Part::D2 => Part::G2,
        }
    }

    /// Same half of the sequent, other side.
    pub fn cross(self) -> Part {
        match self {
            Part::G1 => Part::G2,
            Part::G2 => Part::G1,
            Part::D1 => Part::D2,
            Part::D2 => Part::D1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Part::G1 => "G1",
            Part::G2 => "G2",
            Part::D1 => "D1",
            Part::D2 => "D2",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSequent {
    pub parts: [Vec<Formula>; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequentError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("rule {rule}: {msg}")]
    Rule { rule: &'static str, msg: String },
}

fn rule_err(rule: Rule, msg: impl Into<String>) -> SequentError {
    SequentError::Rule { rule: rule.name(), msg: msg.into() }
}

fn sorted(v: &[Formula]) -> Vec<&Formula> {
    let mut s: Vec<&Formula> = v.iter().collect();
    s.sort();
    s
}

impl SplitSequent {
    pub fn new(g1: Vec<Formula>, g2: Vec<Formula>, d1: Vec<Formula>, d2: Vec<Formula>) -> Self {
        SplitSequent { parts: [g1, g2, d1, d2] }
    }

    pub fn get(&self, p: Part) -> &Vec<Formula> {
        &self.parts[p as usize]
    }

    pub fn get_mut(&mut self, p: Part) -> &mut Vec<Formula> {
        &mut self.parts[p as usize]
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn offset(&self, p: Part) -> usize {
        self.parts[..p as usize].iter().map(Vec::len).sum()
    }

    pub fn locate(&self, flat: usize) -> Option<(Part, usize)> {
        let mut i = flat;
        for p in Part::ALL {
            let n = self.get(p).len();
            if i < n {
                return Some((p, i));
            }
            i -= n;
        }
        None
    }

    pub fn at(&self, flat: usize) -> Option<&Formula> {
        self.locate(flat).map(|(p, i)| &self.get(p)[i])
    }

    /// Every occurrence with its component, in flat order.
    pub fn occurrences(&self) -> impl Iterator<Item = (Part, &Formula)> {
        Part::ALL.into_iter().flat_map(move |p| self.get(p).iter().map(move |f| (p, f)))
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flatten().map(Formula::size).sum()
    }

    /// Equal as four multisets.
    pub fn same_multisets(&self, other: &SplitSequent) -> bool {
        Part::ALL.iter().all(|&p| sorted(self.get(p)) == sorted(other.get(p)))
    }

    /// `self ⊆ other` componentwise as multisets.
    pub fn sub_multiset(&self, other: &SplitSequent) -> bool {
        self.missing_from(other).is_some()
    }

    /// What must be added to `self` to obtain `other`, if `self ⊆ other`.
    pub fn missing_from(&self, other: &SplitSequent) -> Option<SplitSequent> {
        let mut out = SplitSequent::default();
        for p in Part::ALL {
            let mut rest: Vec<Formula> = other.get(p).clone();
            for f in self.get(p) {
                let i = rest.iter().position(|g| g == f)?;
                rest.remove(i);
            }
            *out.get_mut(p) = rest;
        }
        Some(out)
    }

    pub fn without_last(&self, p: Part, f: &Formula) -> Option<SplitSequent> {
        let mut s = self.clone();
        let i = s.get(p).iter().rposition(|g| g == f)?;
        s.get_mut(p).remove(i);
        Some(s)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for f in self.parts.iter().flatten() {
            f.collect_vars(&mut out);
        }
        out
    }

    /// Variables of one side of the partition.
    pub fn side_vars(&self, side: Side) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for f in self.get(Part::ante(side)).iter().chain(self.get(Part::succ(side))) {
            f.collect_vars(&mut out);
        }
        out
    }

    /// Formula with `Γ1 ⇒ Δ1` on the left of the implication.
    pub fn side_formula(&self, side: Side) -> Formula {
        let ante = Formula::conj(self.get(Part::ante(side)).clone());
        let succ = Formula::disj(self.get(Part::succ(side)).clone());
        Formula::implies(ante, succ)
    }

    /// The unsplit sequent as a formula.
    pub fn formula(&self) -> Formula {
        let ante: Vec<Formula> =
            self.get(Part::G1).iter().chain(self.get(Part::G2)).cloned().collect();
        let succ: Vec<Formula> =
            self.get(Part::D1).iter().chain(self.get(Part::D2)).cloned().collect();
        Formula::implies(Formula::conj(ante), Formula::disj(succ))
    }

    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> SplitSequent {
        SplitSequent { parts: self.parts.clone().map(|v| v.iter().map(&f).collect()) }
    }

    pub fn parse(text: &str) -> Result<SplitSequent, SequentError> {
        let bad = |m: &str| SequentError::Syntax(format!("{m} in `{text}`"));
        let (lhs, rhs) = text.split_once("=>").ok_or_else(|| bad("missing `=>`"))?;
        let (g1, g2) = lhs.split_once(';').ok_or_else(|| bad("missing `;` before `=>`"))?;
        let (d1, d2) = rhs.split_once(';').ok_or_else(|| bad("missing `;` after `=>`"))?;
        let comp = |s: &str| -> Result<Vec<Formula>, SequentError> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|x| parse_formula(x.trim()).map_err(|e| SequentError::Syntax(format!("{e}: `{x}`"))))
                .collect()
        };
        Ok(SplitSequent::new(comp(g1)?, comp(g2)?, comp(d1)?, comp(d2)?))
    }
}

impl fmt::Display for SplitSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comp = |p: Part| {
            self.get(p).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        };
        let toks = [comp(Part::G1), ";".into(), comp(Part::G2), "=>".into(), comp(Part::D1), ";".into(), comp(Part::D2)];
        let toks: Vec<&str> = toks.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
        f.write_str(&toks.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ax,
    Bot,
    Lw,
    Rw,
    Lc,
    Rc,
    LAnd1,
    LAnd2,
    RAnd,
    LOr,
    ROr1,
    ROr2,
    LNeg,
    RNeg,
    Cut,
    K,
    D,
    Four,
    T,
}

impl Rule {
    pub const ALL: [Rule; 19] = [
        Rule::Ax,
        Rule::Bot,
        Rule::Lw,
        Rule::Rw,
        Rule::Lc,
        Rule::Rc,
        Rule::LAnd1,
        Rule::LAnd2,
        Rule::RAnd,
        Rule::LOr,
        Rule::ROr1,
        Rule::ROr2,
        Rule::LNeg,
        Rule::RNeg,
        Rule::Cut,
        Rule::K,
        Rule::D,
        Rule::Four,
        Rule::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "Ax",
            Rule::Bot => "Bot",
            Rule::Lw => "Lw",
            Rule::Rw => "Rw",
            Rule::Lc => "Lc",
            Rule::Rc => "Rc",
            Rule::LAnd1 => "L&1",
            Rule::LAnd2 => "L&2",
            Rule::RAnd => "R&",
            Rule::LOr => "L|",
            Rule::ROr1 => "R|1",
            Rule::ROr2 => "R|2",
            Rule::LNeg => "L~",
            Rule::RNeg => "R~",
            Rule::Cut => "Cut",
            Rule::K => "K",
            Rule::D => "D",
            Rule::Four => "4",
            Rule::T => "T",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_weakening(self) -> bool {
        matches!(self, Rule::Lw | Rule::Rw)
    }

    pub fn is_contraction(self) -> bool {
        matches!(self, Rule::Lc | Rule::Rc)
    }

    pub fn is_structural(self) -> bool {
        self.is_weakening() || self.is_contraction()
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, Rule::Ax | Rule::Bot)
    }

    pub fn is_modal(self) -> bool {
        matches!(self, Rule::K | Rule::D | Rule::Four | Rule::T)
    }

    pub fn is_binary(self) -> bool {
        matches!(self, Rule::RAnd | Rule::LOr | Rule::Cut)
    }

    /// Whether the main formula sits in the antecedent.
    fn left(self) -> Option<bool> {
        match self {
            Rule::Lw | Rule::Lc | Rule::LAnd1 | Rule::LAnd2 | Rule::LOr | Rule::LNeg | Rule::T => Some(true),
            Rule::Rw | Rule::Rc | Rule::ROr1 | Rule::ROr2 | Rule::RAnd | Rule::RNeg | Rule::K | Rule::Four => {
                Some(false)
            }
            _ => None,
        }
    }
}

/// A proof tree. `main` is the flat index of the main formula in `seq`;
/// axioms use the index of their antecedent occurrence, cuts and (D) have none.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub rule: Rule,
    pub seq: SplitSequent,
    pub main: Option<usize>,
    pub premises: Vec<Proof>,
}

/// Auxiliary formulas per premise for a rule with main formula `f` in `part`.
pub(crate) fn aux_of(rule: Rule, part: Part, f: &Formula) -> Result<Vec<Vec<(Part, Formula)>>, SequentError> {
    if let Some(left) = rule.left() {
        if left != part.is_ante() {
            return Err(rule_err(rule, format!("main formula cannot sit in {}", part.name())));
        }
    }
    let shape = || rule_err(rule, format!("main formula `{f}` has the wrong shape"));
    Ok(match (rule, f) {
        (Rule::Lw | Rule::Rw, _) => vec![vec![]],
        (Rule::Lc | Rule::Rc, _) => vec![vec![(part, f.clone()), (part, f.clone())]],
        (Rule::LAnd1, Formula::And(a, _)) | (Rule::ROr1, Formula::Or(a, _)) => {
            vec![vec![(part, (**a).clone())]]
        }
        (Rule::LAnd2, Formula::And(_, b)) | (Rule::ROr2, Formula::Or(_, b)) => {
            vec![vec![(part, (**b).clone())]]
        }
        (Rule::RAnd, Formula::And(a, b)) | (Rule::LOr, Formula::Or(a, b)) => {
            vec![vec![(part, (**a).clone())], vec![(part, (**b).clone())]]
        }
        (Rule::LNeg | Rule::RNeg, Formula::Neg(a)) => vec![vec![(part.flip(), (**a).clone())]],
        (Rule::T, Formula::Box(a)) => vec![vec![(part, (**a).clone())]],
        (Rule::Cut, _) => {
            let s = part.side();
            vec![vec![(Part::succ(s), f.clone())], vec![(Part::ante(s), f.clone())]]
        }
        _ => return Err(shape()),
    })
}

fn remove_aux(seq: &SplitSequent, aux: &[(Part, Formula)], rule: Rule) -> Result<SplitSequent, SequentError> {
    let mut s = seq.clone();
    for (p, f) in aux {
        s = s
            .without_last(*p, f)
            .ok_or_else(|| rule_err(rule, format!("premise lacks `{f}` in {}", p.name())))?;
    }
    Ok(s)
}

/// Split a (4)-premise component `U, □U` into the boxed copies, in order.
fn split_four(v: &[Formula]) -> Option<Vec<Formula>> {
    let mut rest: Vec<(usize, &Formula)> = v.iter().enumerate().collect();
    let mut boxed = Vec::new();
    while !rest.is_empty() {
        let (k, _) = rest.iter().enumerate().max_by_key(|(_, (_, f))| f.size())?;
        let (pos, big) = rest.remove(k);
        let Formula::Box(inner) = big else { return None };
        let j = rest.iter().position(|(_, f)| **f == **inner)?;
        rest.remove(j);
        boxed.push((pos, big.clone()));
    }
    boxed.sort_by_key(|x| x.0);
    Some(boxed.into_iter().map(|x| x.1).collect())
}

fn modal_conclusion(rule: Rule, premise: &SplitSequent) -> Result<(SplitSequent, Option<usize>), SequentError> {
    let succ: Vec<(Part, &Formula)> = [Part::D1, Part::D2]
        .into_iter()
        .flat_map(|p| premise.get(p).iter().map(move |f| (p, f)))
        .collect();
    let mut out = SplitSequent::default();
    for p in [Part::G1, Part::G2] {
        *out.get_mut(p) = match rule {
            Rule::Four => split_four(premise.get(p))
                .ok_or_else(|| rule_err(rule, "premise antecedent is not of the form Γ, □Γ"))?,
            _ => premise.get(p).iter().map(|f| Formula::boxed(f.clone())).collect(),
        };
    }
    match rule {
        Rule::D => {
            if !succ.is_empty() {
                return Err(rule_err(rule, "premise succedent must be empty"));
            }
            Ok((out, None))
        }
        _ => {
            if succ.len() != 1 {
                return Err(rule_err(rule, "premise succedent must hold exactly one formula"));
            }
            let (p, a) = succ[0];
            out.get_mut(p).push(Formula::boxed(a.clone()));
            let main = out.offset(p) + out.get(p).len() - 1;
            Ok((out, Some(main)))
        }
    }
}

/// How a rule instance is pinned down besides its premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    /// Main formula and its component.
    Main(Part, Formula),
    /// Cut formula and the side its occurrences live on.
    Cut(Side, Formula),
    /// (K), (D), (4): determined by the premise.
    Modal,
}

/// Conclusion and main index of `rule` applied to `premises`.
pub(crate) fn conclude(rule: Rule, spec: &Spec, premises: &[&SplitSequent]) -> Result<(SplitSequent, Option<usize>), SequentError> {
    let arity = if rule.is_axiom() { 0 } else if rule.is_binary() { 2 } else { 1 };
    if premises.len() != arity {
        return Err(rule_err(rule, format!("expected {arity} premises, got {}", premises.len())));
    }
    match (rule, spec) {
        (Rule::K | Rule::D | Rule::Four, Spec::Modal) => modal_conclusion(rule, premises[0]),
        (Rule::Cut, Spec::Cut(side, f)) => {
            let aux = aux_of(rule, Part::ante(*side), f)?;
            let l = remove_aux(premises[0], &aux[0], rule)?;
            let r = remove_aux(premises[1], &aux[1], rule)?;
            if !l.same_multisets(&r) {
                return Err(rule_err(rule, "premise contexts differ"));
            }
            Ok((l, None))
        }
        (r, Spec::Main(part, f)) if !r.is_axiom() && !matches!(r, Rule::Cut | Rule::K | Rule::D | Rule::Four) => {
            let aux = aux_of(rule, *part, f)?;
            let mut ctx = remove_aux(premises[0], &aux[0], rule)?;
            if let Some(aux2) = aux.get(1) {
                let ctx2 = remove_aux(premises[1], aux2, rule)?;
                if !ctx.same_multisets(&ctx2) {
                    return Err(rule_err(rule, "premise contexts differ"));
                }
            }
            if rule.is_weakening() {
                ctx.get_mut(*part).insert(0, f.clone());
                let m = ctx.offset(*part);
                return Ok((ctx, Some(m)));
            }
            ctx.get_mut(*part).push(f.clone());
            let m = ctx.offset(*part) + ctx.get(*part).len() - 1;
            Ok((ctx, Some(m)))
        }
        _ => Err(rule_err(rule, "rule does not match its specification")),
    }
}

impl Proof {
    pub fn conclusion(&self) -> &SplitSequent {
        &self.seq
    }

    /// Apply `rule` to `premises`.
    pub fn infer(rule: Rule, spec: Spec, premises: Vec<Proof>) -> Result<Proof, SequentError> {
        let seqs: Vec<&SplitSequent> = premises.iter().map(|p| &p.seq).collect();
        let (seq, main) = conclude(rule, &spec, &seqs)?;
        Ok(Proof { rule, seq, main, premises })
    }

    /// `A ⇒ A` with the antecedent in `ante` and the succedent in `succ`.
    pub fn ax(f: Formula, ante: Part, succ: Part) -> Proof {
        assert!(ante.is_ante() && !succ.is_ante(), "axiom components must be an antecedent and a succedent");
        let mut seq = SplitSequent::default();
        seq.get_mut(ante).push(f.clone());
        seq.get_mut(succ).push(f);
        Proof { rule: Rule::Ax, seq, main: Some(0), premises: vec![] }
    }

    /// `⊥ ⇒` with ⊥ in `ante`.
    pub fn bot(ante: Part) -> Proof {
        assert!(ante.is_ante(), "⊥ must sit in an antecedent");
        let mut seq = SplitSequent::default();
        seq.get_mut(ante).push(Formula::Bottom);
        Proof { rule: Rule::Bot, seq, main: Some(0), premises: vec![] }
    }

    /// `⇒ ⊤` with ⊤ in `succ`, as (⊥) followed by (R¬).
    pub fn top(succ: Part) -> Proof {
        let b = Proof::bot(succ.flip());
        Proof::infer(Rule::RNeg, Spec::Main(succ, Formula::top()), vec![b]).expect("⊤ macro")
    }

    pub fn unary(rule: Rule, part: Part, f: Formula, premise: Proof) -> Result<Proof, SequentError> {
        Proof::infer(rule, Spec::Main(part, f), vec![premise])
    }

    pub fn binary(rule: Rule, part: Part, f: Formula, p1: Proof, p2: Proof) -> Result<Proof, SequentError> {
        Proof::infer(rule, Spec::Main(part, f), vec![p1, p2])
    }

    pub fn weaken(self, part: Part, f: Formula) -> Proof {
        let rule = if part.is_ante() { Rule::Lw } else { Rule::Rw };
        Proof::infer(rule, Spec::Main(part, f), vec![self]).expect("weakening always applies")
    }

    pub fn contract(self, part: Part, f: Formula) -> Result<Proof, SequentError> {
        let rule = if part.is_ante() { Rule::Lc } else { Rule::Rc };
        Proof::infer(rule, Spec::Main(part, f), vec![self])
    }

    pub fn cut(left: Proof, right: Proof, side: Side, f: Formula) -> Result<Proof, SequentError> {
        Proof::infer(Rule::Cut, Spec::Cut(side, f), vec![left, right])
    }

    pub fn modal(rule: Rule, premise: Proof) -> Result<Proof, SequentError> {
        Proof::infer(rule, Spec::Modal, vec![premise])
    }

    /// Weaken until the conclusion is `target` as multisets.
    pub fn weaken_to(self, target: &SplitSequent) -> Result<Proof, SequentError> {
        let missing = self.seq.missing_from(target).ok_or_else(|| {
            SequentError::Rule { rule: "weakening", msg: format!("`{}` is not contained in `{target}`", self.seq) }
        })?;
        let mut p = self;
        for part in Part::ALL {
            for f in missing.get(part).iter().rev() {
                p = p.weaken(part, f.clone());
            }
        }
        Ok(p)
    }

    /// Axiom followed by weakenings up to `target`.
    pub fn wax(f: Formula, ante: Part, succ: Part, target: &SplitSequent) -> Result<Proof, SequentError> {
        Proof::ax(f, ante, succ).weaken_to(target)
    }

    /// Same proof with the root conclusion reordered to `target`, which must
    /// be equal as multisets. Equal formulas keep their relative order.
    pub fn with_conclusion(mut self, target: &SplitSequent) -> Proof {
        assert!(self.seq.same_multisets(target), "conclusions differ");
        if let Some((part, f)) = self.main_formula() {
            let i = self.main.expect("main") - self.seq.offset(part);
            let rank = self.seq.get(part)[..i].iter().filter(|g| *g == f).count();
            let (j, _) = target.get(part).iter().enumerate().filter(|(_, g)| *g == f).nth(rank).expect("main formula present");
            self.main = Some(target.offset(part) + j);
        }
        self.seq = target.clone();
        self
    }

    /// The main formula and its component.
    pub fn main_formula(&self) -> Option<(Part, &Formula)> {
        let (p, i) = self.seq.locate(self.main?)?;
        Some((p, &self.seq.get(p)[i]))
    }

    /// Specification that rebuilds this node from its premises.
    pub fn spec(&self) -> Option<Spec> {
        match self.rule {
            Rule::Ax | Rule::Bot => None,
            Rule::K | Rule::D | Rule::Four => Some(Spec::Modal),
            Rule::Cut => {
                let (side, f) = self.cut_formula()?;
                Some(Spec::Cut(side, f))
            }
            _ => self.main_formula().map(|(p, f)| Spec::Main(p, f.clone())),
        }
    }

    /// Cut formula and side, read off the left premise.
    pub fn cut_formula(&self) -> Option<(Side, Formula)> {
        if self.rule != Rule::Cut || self.premises.len() != 2 {
            return None;
        }
        let extra = self.seq.missing_from(&self.premises[0].seq)?;
        if extra.len() != 1 {
            return None;
        }
        let (p, _) = extra.locate(0)?;
        if p.is_ante() {
            return None;
        }
        Some((p.side(), extra.get(p)[0].clone()))
    }

    /// Sum of sequent sizes over all nodes.
    pub fn size(&self) -> usize {
        self.seq.size() + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Proof::node_count).sum::<usize>()
    }

    /// Edges on the longest branch.
    pub fn depth(&self) -> usize {
        self.premises.iter().map(|p| p.depth() + 1).max().unwrap_or(0)
    }

    /// Nodes in preorder; indices are the node ids used in reports.
    pub fn preorder(&self) -> Vec<&Proof> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            out.push(p);
            stack.extend(p.premises.iter().rev());
        }
        out
    }

    pub fn count_cuts(&self) -> usize {
        self.preorder().iter().filter(|p| p.rule == Rule::Cut).count()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count_cuts() == 0
    }

    /// The node with preorder id `id`.
    pub fn node(&self, id: usize) -> Option<&Proof> {
        self.preorder().get(id).copied()
    }

    /// Replace the subproof with preorder id `id`.
    pub fn replace(&self, id: usize, new: Proof) -> Proof {
        fn go(p: &Proof, id: usize, counter: &mut usize, new: &mut Option<Proof>) -> Proof {
            let me = *counter;
            *counter += 1;
            if me == id {
                return new.take().expect("replaced once");
            }
            if id < me || new.is_none() {
                *counter += p.node_count() - 1;
                return p.clone();
            }
            let premises = p.premises.iter().map(|q| go(q, id, counter, new)).collect();
            Proof { rule: p.rule, seq: p.seq.clone(), main: p.main, premises }
        }
        go(self, id, &mut 0, &mut Some(new))
    }

    /// Indented one-node-per-line rendering.
    pub fn to_text(&self) -> String {
        fn go(p: &Proof, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&format!("{}  [{}]\n", p.seq, p.rule.name()));
            for q in &p.premises {
                go(q, depth + 1, out);
            }
        }
        let mut s = String::new();
        go(self, 0, &mut s);
        s
    }
}
