//! Interpolant-aware proof transformations.

use std::collections::BTreeSet;
use std::fmt;

use crate::formulas::{clause_to_string, cnf, subsumes, ClauseSet, Formula};
use crate::maehara::{interpolant, MaeharaError};
use crate::sequent::{
    check_proof, is_tame, links, Occ, Part, Proof, ProofIndex, ProofViolation, Rule, SequentError, Side, Spec,
    System, Tameness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("position {0} does not hold a negation")]
    TargetNotNegation(usize),
    #[error("the proof is not tame")]
    NotTame(Tameness),
    #[error("node {0}: cut is not of type R")]
    NotTypeR(usize),
    #[error("node {0}: cut is not monochromatic")]
    NonMonochromatic(usize),
    #[error("no cut-free proof after {0} steps")]
    StepLimit(usize),
    #[error("cut at node {0}: {1}")]
    Stuck(usize, String),
    #[error(transparent)]
    Invalid(#[from] ProofViolation),
    #[error(transparent)]
    Sequent(#[from] SequentError),
    #[error(transparent)]
    Maehara(#[from] MaeharaError),
}

/// Rebuild `p` over new premises, recomputing its conclusion.
fn rebuild(p: &Proof, premises: Vec<Proof>) -> Result<Proof, SequentError> {
    match p.spec() {
        None => Ok(p.clone()),
        Some(spec) => Proof::infer(p.rule, spec, premises),
    }
}

/// Premise positions of premise `k` whose descendants lie in `s`.
fn lift(p: &Proof, k: usize, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    let l = links(p, k).expect("checked proof");
    (0..l.len()).filter(|i| l[*i].is_some_and(|j| s.contains(&j))).collect()
}

/// Replace the occurrences `s` of `¬a` in `part` by `a` in `part.flip()`.
fn inv(p: &Proof, s: &BTreeSet<usize>, part: Part, a: &Formula) -> Proof {
    if s.is_empty() {
        return p.clone();
    }
    match p.rule {
        Rule::Ax => {
            let occ: Vec<Part> = p.seq.occurrences().map(|(q, _)| q).collect();
            let (x, y) = (occ[0], occ[1]);
            let base = Proof::ax(a.clone(), y.flip(), x.flip());
            let neg = Formula::neg(a.clone());
            if s.contains(&0) {
                Proof::unary(Rule::RNeg, y, neg, base).expect("(R¬)")
            } else {
                Proof::unary(Rule::LNeg, x, neg, base).expect("(L¬)")
            }
        }
        _ => {
            let main = p.main.filter(|m| s.contains(m));
            let rest: BTreeSet<usize> = s.iter().copied().filter(|i| Some(*i) != main).collect();
            match (main, p.rule) {
                (Some(_), r) if r.is_weakening() => {
                    inv(&p.premises[0], &lift(p, 0, &rest), part, a).weaken(part.flip(), a.clone())
                }
                (Some(_), r) if r.is_contraction() => {
                    let q = inv(&p.premises[0], &lift(p, 0, s), part, a);
                    q.contract(part.flip(), a.clone()).expect("contraction")
                }
                (Some(_), Rule::LNeg | Rule::RNeg) => inv(&p.premises[0], &lift(p, 0, &rest), part, a),
                _ => {
                    let premises =
                        (0..p.premises.len()).map(|k| inv(&p.premises[k], &lift(p, k, s), part, a)).collect();
                    rebuild(p, premises).expect("inversion keeps rules applicable")
                }
            }
        }
    }
}

/// Remove the negation at flat position `pos` of the end-sequent and add
/// its body to the dual component.
pub fn neg_invert(p: &Proof, pos: usize) -> Result<Proof, TransformError> {
    let (part, i) = p.seq.locate(pos).ok_or(TransformError::TargetNotNegation(pos))?;
    let Formula::Neg(a) = &p.seq.get(part)[i] else {
        return Err(TransformError::TargetNotNegation(pos));
    };
    ProofIndex::new(p)?;
    Ok(inv(p, &BTreeSet::from([pos]), part, a))
}

/// Replace every cut on a negated atom or box by a cut on its body.
pub fn literal_cuts_to_atomic(p: &Proof) -> Result<Proof, TransformError> {
    let mut cur = p.clone();
    loop {
        let nodes = cur.preorder();
        let found = (0..nodes.len()).rev().find_map(|i| match nodes[i].cut_formula() {
            Some((side, Formula::Neg(a))) if matches!(*a, Formula::Atom(_) | Formula::Box(_)) => Some((i, side, *a)),
            _ => None,
        });
        let Some((id, side, atom)) = found else {
            return Ok(cur);
        };
        let chi = nodes[id];
        let ix = ProofIndex::new(chi)?;
        let (l, r) = ix.cut_occurrences(0).expect("cut");
        let left = neg_invert(&chi.premises[0], l.pos)?;
        let right = neg_invert(&chi.premises[1], r.pos)?;
        let new = Proof::cut(right, left, side, atom)?;
        cur = cur.replace(id, new);
    }
}

fn blocks_weakening(r: Rule) -> bool {
    r.is_axiom() || r.is_weakening() || matches!(r, Rule::K | Rule::D | Rule::Four)
}

/// Whether every weakening sits directly below an axiom, a weakening or a
/// modal jump.
pub fn is_w_reduced(p: &Proof) -> bool {
    p.preorder().iter().all(|n| !n.rule.is_weakening() || blocks_weakening(n.premises[0].rule))
}

/// Weaken `q` by `f` in `part` with the new occurrence at rank `r` among
/// the copies of `f` there, pushing the weakening as far up as possible.
/// Ranks among equal formulas identify occurrences, so keeping them fixed
/// keeps every rule below acting on the same occurrences.
fn push_weak(q: Proof, part: Part, f: Formula, r: usize) -> Proof {
    let main_is_f = q.main_formula().is_some_and(|(p, g)| p == part && *g == f);
    let c = q.seq.get(part).iter().filter(|g| **g == f).count() - usize::from(main_is_f);
    if blocks_weakening(q.rule) || r > c + usize::from(main_is_f) {
        let mut w = q.weaken(part, f.clone());
        let mut v = w.seq.get(part).clone();
        let i = w.main.expect("main") - w.seq.offset(part);
        v.remove(i);
        let at = v.iter().enumerate().filter(|(_, g)| **g == f).nth(r).map_or(v.len(), |(j, _)| j);
        v.insert(at, f);
        *w.seq.get_mut(part) = v;
        w.main = Some(w.seq.offset(part) + at);
        return w;
    }
    let spec = q.spec().expect("inference");
    let premises = q.premises.into_iter().map(|x| push_weak(x, part, f.clone(), r.min(c))).collect();
    let mut n = Proof::infer(q.rule, spec, premises).expect("weakening permutes");
    if r > c {
        // The main copy precedes the weakened one.
        let at = n.seq.get(part).iter().enumerate().filter(|(_, g)| **g == f).nth(c).expect("copy").0;
        n.main = Some(n.seq.offset(part) + at);
    }
    n
}

/// Move weakenings up until each sits below an axiom, a weakening or a
/// modal rule. Interpolants are unchanged.
pub fn w_reduce(p: &Proof) -> Proof {
    if is_w_reduced(p) {
        return p.clone();
    }
    fn go(p: &Proof) -> Proof {
        let premises: Vec<Proof> = p.premises.iter().map(go).collect();
        if p.rule.is_weakening() {
            let (part, f) = p.main_formula().expect("main");
            let i = p.main.expect("main") - p.seq.offset(part);
            let r = p.seq.get(part)[..i].iter().filter(|g| *g == f).count();
            let q = premises.into_iter().next().expect("premise");
            return push_weak(q, part, f.clone(), r);
        }
        rebuild(p, premises).expect("same rule applies")
    }
    go(p).with_conclusion(&p.seq)
}

/// Identity proof of `f(ante) ⇒ f(succ)` from atomic axioms.
pub fn expand_axiom(f: &Formula, ante: Part, succ: Part) -> Proof {
    let app = |rule, part, p| Proof::unary(rule, part, f.clone(), p).expect("expansion");
    match f {
        Formula::Neg(a) => {
            let base = expand_axiom(a, succ.flip(), ante.flip());
            app(Rule::LNeg, ante, app(Rule::RNeg, succ, base))
        }
        Formula::And(a, b) => {
            let l = app(Rule::LAnd1, ante, expand_axiom(a, ante, succ));
            let r = app(Rule::LAnd2, ante, expand_axiom(b, ante, succ));
            Proof::binary(Rule::RAnd, succ, f.clone(), l, r).expect("expansion")
        }
        Formula::Or(a, b) => {
            let l = app(Rule::ROr1, succ, expand_axiom(a, ante, succ));
            let r = app(Rule::ROr2, succ, expand_axiom(b, ante, succ));
            Proof::binary(Rule::LOr, ante, f.clone(), l, r).expect("expansion")
        }
        _ => Proof::ax(f.clone(), ante, succ),
    }
}

/// Replace non-atomic propositional axioms by their expansions.
pub fn expand_axioms(p: &Proof) -> Proof {
    if p.rule == Rule::Ax {
        let occ: Vec<(Part, &Formula)> = p.seq.occurrences().collect();
        return expand_axiom(occ[0].1, occ[0].0, occ[1].0);
    }
    if p.premises.is_empty() {
        return p.clone();
    }
    let premises = p.premises.iter().map(expand_axioms).collect();
    rebuild(p, premises).expect("same rule applies")
}

/// Drop the flagged occurrences together with the weakenings and
/// contractions introducing them.
fn remove_occs(p: &Proof, set: &BTreeSet<Occ>) -> Proof {
    fn go(p: &Proof, id: &mut usize, set: &BTreeSet<Occ>) -> Proof {
        let me = *id;
        *id += 1;
        if p.rule.is_structural() && p.main.is_some_and(|m| set.contains(&Occ { node: me, pos: m })) {
            return go(&p.premises[0], id, set);
        }
        let premises = p.premises.iter().map(|q| go(q, id, set)).collect();
        rebuild(p, premises).expect("removal keeps rules applicable")
    }
    go(p, &mut 0, set)
}

fn shift(occs: Vec<Occ>, by: usize) -> BTreeSet<Occ> {
    occs.into_iter().map(|o| Occ { node: o.node - by, pos: o.pos }).collect()
}

fn is_wax(p: &Proof) -> bool {
    let mut q = p;
    while q.rule.is_weakening() {
        q = &q.premises[0];
    }
    q.rule.is_axiom()
}

fn wax_axiom(p: &Proof) -> &Proof {
    let mut q = p;
    while q.rule.is_weakening() {
        q = &q.premises[0];
    }
    q
}

/// Kind of a single reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    WeakLeft,
    WeakRight,
    PermuteLeft(Rule),
    PermuteRight(Rule),
    ContractLeftWeak,
    ContractRightWeak,
    ContractLeft,
    ContractRight,
    Degree(Rule, Rule),
    /// Axiom types of the left and right premise.
    Axiom(&'static str, &'static str),
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::WeakLeft => write!(f, "weak-left"),
            StepKind::WeakRight => write!(f, "weak-right"),
            StepKind::PermuteLeft(r) => write!(f, "permute-left {}", r.name()),
            StepKind::PermuteRight(r) => write!(f, "permute-right {}", r.name()),
            StepKind::ContractLeftWeak => write!(f, "contract-left-weak"),
            StepKind::ContractRightWeak => write!(f, "contract-right-weak"),
            StepKind::ContractLeft => write!(f, "contract-left"),
            StepKind::ContractRight => write!(f, "contract-right"),
            StepKind::Degree(l, r) => write!(f, "degree {}/{}", l.name(), r.name()),
            StepKind::Axiom(l, r) => write!(f, "axiom {l}-{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    /// Preorder id of the reduced cut.
    pub cut: usize,
    pub degree: usize,
    pub weight: usize,
    /// Measures of the cuts created by the step.
    pub created: Vec<(usize, usize)>,
    /// CNF of the root interpolant after the step.
    pub cnf: ClauseSet,
}

impl TraceStep {
    /// Every created cut is smaller in (degree, weight).
    pub fn decreases(&self) -> bool {
        self.created.iter().all(|m| *m < (self.degree, self.weight))
    }
}

pub fn cnf_to_string(cs: &ClauseSet) -> String {
    let items: Vec<String> = cs.iter().map(|c| format!("{{{}}}", clause_to_string(c))).collect();
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cut={} (d={}, w={}) cnf={}", self.kind, self.cut, self.degree, self.weight, cnf_to_string(&self.cnf))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub proof: Proof,
    /// CNF of the input's interpolant.
    pub initial: ClauseSet,
    pub trace: Vec<TraceStep>,
}

impl Elimination {
    /// Each CNF in the trace is subsumed by the previous one.
    pub fn subsumption_chain(&self) -> bool {
        let mut prev = &self.initial;
        for s in &self.trace {
            if !subsumes(prev, &s.cnf) {
                return false;
            }
            prev = &s.cnf;
        }
        true
    }

    pub fn measure_decreases(&self) -> bool {
        self.trace.iter().all(TraceStep::decreases)
    }
}

const STEP_LIMIT: usize = 100_000;

fn cut_measures(p: &Proof) -> Result<Vec<(usize, usize)>, TransformError> {
    let ix = ProofIndex::new(p)?;
    let mut out = Vec::new();
    for (id, n) in ix.nodes.iter().enumerate() {
        if let Some((_, f)) = n.cut_formula() {
            out.push((f.degree(), ix.cut_weight(id).unwrap_or(0)));
        }
    }
    Ok(out)
}

fn cut2(l: Proof, r: Proof, c: &Formula) -> Result<Proof, TransformError> {
    Ok(Proof::cut(l, r, Side::Two, c.clone())?)
}

/// Move the cut above the last inference of `rho`, the premise on the
/// `left` side when `left` holds.
fn permute(rho: &Proof, other: &Proof, left: bool, c: &Formula) -> Result<Proof, TransformError> {
    let (part, m) = rho.main_formula().expect("main");
    let m = m.clone();
    let aux = crate::sequent::aux_of(rho.rule, part, &m)?;
    let mut cuts = Vec::new();
    for (k, prem) in rho.premises.iter().enumerate() {
        let r = w_reduce(&prem.clone().weaken(part, m.clone()));
        let mut o = other.clone();
        for (q, g) in &aux[k] {
            o = o.weaken(*q, g.clone());
        }
        let o = w_reduce(&o);
        cuts.push(if left { cut2(r, o, c)? } else { cut2(o, r, c)? });
    }
    let p = Proof::infer(rho.rule, Spec::Main(part, m.clone()), cuts)?;
    Ok(p.contract(part, m)?)
}

fn degree(x1: &Proof, x2: &Proof, id: usize) -> Result<Proof, TransformError> {
    let stuck = || TransformError::Stuck(id, format!("no degree reduction for {} against {}", x1.rule.name(), x2.rule.name()));
    let (_, c) = x1.main_formula().expect("main");
    match (c, x1.rule, x2.rule) {
        (Formula::And(a, _), Rule::RAnd, Rule::LAnd1) => cut2(x1.premises[0].clone(), x2.premises[0].clone(), a),
        (Formula::And(_, b), Rule::RAnd, Rule::LAnd2) => cut2(x1.premises[1].clone(), x2.premises[0].clone(), b),
        (Formula::Or(a, _), Rule::ROr1, Rule::LOr) => cut2(x1.premises[0].clone(), x2.premises[0].clone(), a),
        (Formula::Or(_, b), Rule::ROr2, Rule::LOr) => cut2(x1.premises[0].clone(), x2.premises[1].clone(), b),
        (Formula::Neg(a), Rule::RNeg, Rule::LNeg) => cut2(x2.premises[0].clone(), x1.premises[0].clone(), a),
        _ => Err(stuck()),
    }
}

fn axiom_name(p: &Proof) -> (Part, Part) {
    let occ: Vec<Part> = p.seq.occurrences().map(|(q, _)| q).collect();
    (occ[0], occ.get(1).copied().unwrap_or(Part::D2))
}

fn type_name(ante: Part, succ: Part) -> &'static str {
    match (ante.side(), succ.side()) {
        (Side::One, Side::One) => "L/L",
        (Side::One, Side::Two) => "L/R",
        (Side::Two, Side::One) => "R/L",
        (Side::Two, Side::Two) => "R/R",
    }
}

/// One reduction of the cut at the root of `chi`, an uppermost cut.
fn reduce(chi: &Proof, id: usize) -> Result<(StepKind, Proof), TransformError> {
    let ix = ProofIndex::new(chi)?;
    let (m1, m2) = ix.cut_occurrences(0).expect("cut");
    let (_, c) = chi.cut_formula().expect("cut");
    let (x1, x2) = (&chi.premises[0], &chi.premises[1]);
    let n1 = x1.node_count();
    if ix.is_weak(m1) {
        return Ok((StepKind::WeakLeft, remove_occs(x1, &shift(ix.ancestors(m1), 1))));
    }
    if ix.is_weak(m2) {
        return Ok((StepKind::WeakRight, remove_occs(x2, &shift(ix.ancestors(m2), 1 + n1))));
    }
    let modal = |p: &Proof| matches!(p.rule, Rule::K | Rule::D | Rule::Four);
    if modal(x1) || modal(x2) {
        return Err(TransformError::Stuck(id, "modal inference above the cut".into()));
    }
    if !is_wax(x1) && x1.main != Some(m1.pos) {
        return Ok((StepKind::PermuteLeft(x1.rule), permute(x1, x2, true, &c)?));
    }
    if !is_wax(x2) && x2.main != Some(m2.pos) {
        return Ok((StepKind::PermuteRight(x2.rule), permute(x2, x1, false, &c)?));
    }
    if x1.rule == Rule::Rc {
        let x11 = &x1.premises[0];
        let aux = lift(x1, 0, &BTreeSet::from([m1.pos]));
        if let Some(a) = aux.iter().find(|&&a| ix.is_weak(Occ { node: 2, pos: a })) {
            let anc = shift(ix.ancestors(Occ { node: 2, pos: *a }), 2);
            return Ok((StepKind::ContractLeftWeak, cut2(remove_occs(x11, &anc), x2.clone(), &c)?));
        }
        let x2w = w_reduce(&x2.clone().weaken(Part::D2, c.clone()));
        let inner = cut2(x11.clone(), x2w, &c)?;
        return Ok((StepKind::ContractLeft, cut2(inner, x2.clone(), &c)?));
    }
    if x2.rule == Rule::Lc {
        let x21 = &x2.premises[0];
        let node = 2 + n1;
        let aux = lift(x2, 0, &BTreeSet::from([m2.pos]));
        if let Some(a) = aux.iter().find(|&&a| ix.is_weak(Occ { node, pos: a })) {
            let anc = shift(ix.ancestors(Occ { node, pos: *a }), node);
            return Ok((StepKind::ContractRightWeak, cut2(x1.clone(), remove_occs(x21, &anc), &c)?));
        }
        let x1w = w_reduce(&x1.clone().weaken(Part::G2, c.clone()));
        let inner = cut2(x1w, x21.clone(), &c)?;
        return Ok((StepKind::ContractRight, cut2(x1.clone(), inner, &c)?));
    }
    match (is_wax(x1), is_wax(x2)) {
        (false, false) => Ok((StepKind::Degree(x1.rule, x2.rule), degree(x1, x2, id)?)),
        (true, true) => {
            let a1 = wax_axiom(x1);
            let a2 = wax_axiom(x2);
            if a1.rule != Rule::Ax {
                return Err(TransformError::Stuck(id, "left axiom does not hold the cut formula".into()));
            }
            let (x, _) = axiom_name(a1);
            let left = type_name(x, Part::D2);
            let target = &chi.seq;
            if a2.rule == Rule::Bot {
                return Ok((StepKind::Axiom(left, "R/R"), Proof::bot(x).weaken_to(target)?));
            }
            let (_, y) = axiom_name(a2);
            let right = type_name(Part::G2, y);
            if x.side() == Side::One && y.side() == Side::One {
                return Err(TransformError::NotTame(is_tame(chi)?));
            }
            Ok((StepKind::Axiom(left, right), Proof::wax(c, x, y, target)?))
        }
        _ => Err(TransformError::Stuck(id, "axiom against a logical inference".into())),
    }
}

/// The leftmost cut whose subproof contains no other cut.
fn uppermost_cut(p: &Proof) -> Option<usize> {
    let nodes = p.preorder();
    (0..nodes.len()).find(|&i| nodes[i].rule == Rule::Cut && nodes[i].count_cuts() == 1)
}

/// Cut elimination for tame proofs whose cuts are all of type R. Each
/// step's interpolant CNF is subsumed by the one before.
pub fn eliminate_cuts(p: &Proof) -> Result<Elimination, TransformError> {
    check_proof(p, System::LKmono)?;
    let initial = cnf(&interpolant(p)?);
    if p.is_cut_free() {
        return Ok(Elimination { proof: p.clone(), initial, trace: Vec::new() });
    }
    for (id, n) in p.preorder().iter().enumerate() {
        if let Some((side, f)) = n.cut_formula() {
            if side != Side::Two {
                return Err(TransformError::NotTypeR(id));
            }
            if !f.vars().is_subset(&n.seq.side_vars(side)) {
                return Err(TransformError::NonMonochromatic(id));
            }
        }
    }
    let t = is_tame(p)?;
    if !t.tame {
        return Err(TransformError::NotTame(t));
    }
    let mut cur = w_reduce(&expand_axioms(p));
    let mut trace = Vec::new();
    while let Some(id) = uppermost_cut(&cur) {
        if trace.len() >= STEP_LIMIT {
            return Err(TransformError::StepLimit(STEP_LIMIT));
        }
        let chi = cur.node(id).expect("node");
        let ix = ProofIndex::new(chi)?;
        let degree = chi.cut_formula().expect("cut").1.degree();
        let weight = ix.cut_weight(0).unwrap_or(0);
        let (kind, new) = reduce(chi, id)?;
        let new = w_reduce(&new);
        let created = cut_measures(&new)?;
        cur = w_reduce(&cur.replace(id, new));
        let cs = cnf(&interpolant(&cur)?);
        trace.push(TraceStep { kind, cut: id, degree, weight, created, cnf: cs });
    }
    check_proof(&cur, System::LKminus)?;
    Ok(Elimination { proof: cur, initial, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::prove_cutfree;
    use crate::formulas::parse_formula;
    use crate::maehara::maehara;
    use crate::sequent::SplitSequent;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(s: &str) -> SplitSequent {
        SplitSequent::parse(s).unwrap()
    }

    #[test]
    fn inverting_an_axiom() {
        let p = Proof::ax(f("~p"), Part::G1, Part::D2);
        let q = neg_invert(&p, 1).unwrap();
        check_proof(&q, System::LKminus).unwrap();
        assert_eq!(q.seq, seq("~p ; p => ;"));
        assert_eq!(q.node_count(), 2);
        assert_eq!(interpolant(&q).unwrap(), f("~p"));
    }

    #[test]
    fn inverting_below_r_neg_returns_the_premise() {
        let p = prove_cutfree(&seq("p ; => ; ~~p"), System::LKminus).unwrap();
        let q = neg_invert(&p, 1).unwrap();
        check_proof(&q, System::LKminus).unwrap();
        assert!(q.seq.same_multisets(&seq("p ; ~p => ;")));
        assert_eq!(interpolant(&q).unwrap(), interpolant(&p).unwrap());
        assert!(q.size() <= 2 * p.size());
    }

    #[test]
    fn inverting_through_branches() {
        let s = seq("p | q ; => ; ~~(p | q)");
        let p = prove_cutfree(&s, System::LKminus).unwrap();
        let q = neg_invert(&p, 1).unwrap();
        check_proof(&q, System::LKminus).unwrap();
        assert_eq!(interpolant(&q).unwrap(), interpolant(&p).unwrap());
    }

    #[test]
    fn not_a_negation() {
        let p = Proof::ax(f("p"), Part::G1, Part::D2);
        assert_eq!(neg_invert(&p, 1), Err(TransformError::TargetNotNegation(1)));
    }

    #[test]
    fn literal_cut_becomes_atomic() {
        let left = Proof::ax(f("q"), Part::G1, Part::D2).weaken(Part::D2, f("~q"));
        let right = Proof::ax(f("q"), Part::G1, Part::D2).weaken(Part::G2, f("~q"));
        let p = Proof::cut(left, right, Side::Two, f("~q")).unwrap();
        check_proof(&p, System::LKlit).unwrap();
        let q = literal_cuts_to_atomic(&p).unwrap();
        check_proof(&q, System::LKat).unwrap();
        assert_eq!(q.cut_formula(), Some((Side::Two, f("q"))));
        assert_eq!(cnf(&interpolant(&q).unwrap()), cnf(&interpolant(&p).unwrap()));
        assert!(q.size() <= 2 * p.size());
    }

    #[test]
    fn weakening_moves_up() {
        let w = Proof::unary(Rule::RNeg, Part::D2, f("~r"), Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G2, f("r")))
            .unwrap();
        assert!(is_w_reduced(&w));
        let bad = Proof::unary(Rule::RNeg, Part::D2, f("~r"), Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G2, f("r")))
            .unwrap()
            .weaken(Part::G2, f("s"));
        assert!(!is_w_reduced(&bad));
        let r = w_reduce(&bad);
        assert!(is_w_reduced(&r));
        assert!(r.seq.same_multisets(&bad.seq));
        assert_eq!(interpolant(&r).unwrap(), interpolant(&bad).unwrap());
        assert_eq!(w_reduce(&r), r);
    }

    #[test]
    fn weakening_duplicates_into_branches() {
        let s = seq("p, q ; => ; p & q");
        let p = prove_cutfree(&s, System::LKminus).unwrap();
        let bad = p.weaken(Part::D1, f("r"));
        let r = w_reduce(&bad);
        assert!(is_w_reduced(&r));
        check_proof(&r, System::LKminus).unwrap();
        assert_eq!(interpolant(&r).unwrap(), interpolant(&bad).unwrap());
    }

    #[test]
    fn axiom_expansion_keeps_cnf() {
        for (a, x, y) in [("p & ~q", Part::G1, Part::D2), ("~(p | q)", Part::G2, Part::D1), ("p | q", Part::G1, Part::D1)] {
            let e = expand_axiom(&f(a), x, y);
            check_proof(&e, System::LKminus).unwrap();
            let orig = Proof::ax(f(a), x, y);
            assert_eq!(e.seq, orig.seq);
            assert_eq!(cnf(&interpolant(&e).unwrap()), cnf(&interpolant(&orig).unwrap()), "{a}");
        }
    }

    #[test]
    fn cut_free_input_is_unchanged() {
        let p = prove_cutfree(&seq("p & q ; => ; p | q"), System::LKminus).unwrap();
        let e = eliminate_cuts(&p).unwrap();
        assert_eq!(e.proof, p);
        assert!(e.trace.is_empty());
    }

    #[test]
    fn weak_cut_formula_is_dropped() {
        let left = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, f("p"));
        let right = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G2, f("p"));
        let p = Proof::cut(left, right, Side::Two, f("p")).unwrap();
        let e = eliminate_cuts(&p).unwrap();
        assert_eq!(e.trace[0].kind, StepKind::WeakRight);
        assert!(e.proof.is_cut_free());
        assert!(e.subsumption_chain());
        assert!(e.measure_decreases());
    }

    #[test]
    fn permutation_and_axioms() {
        // p ; ⇒ ; p ∧ p through a cut on p whose left premise is an axiom
        // and whose right premise ends with (R∧).
        let left = Proof::ax(f("p"), Part::G1, Part::D2);
        let ax = || Proof::ax(f("p"), Part::G2, Part::D2).weaken(Part::G1, f("p"));
        let right = Proof::binary(Rule::RAnd, Part::D2, f("p & p"), ax(), ax()).unwrap();
        let left = left.weaken(Part::D2, f("p & p"));
        let p = Proof::cut(left, right, Side::Two, f("p")).unwrap();
        check_proof(&p, System::LKat).unwrap();
        let e = eliminate_cuts(&p).unwrap();
        check_proof(&e.proof, System::LKminus).unwrap();
        assert!(e.subsumption_chain());
        assert!(e.measure_decreases());
        assert!(e.proof.seq.same_multisets(&p.seq));
        let m = maehara(&e.proof, System::LKminus).unwrap();
        assert!(subsumes(&e.initial, &cnf(m.root())));
    }

    #[test]
    fn type_l_cut_is_rejected() {
        let left = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D1, f("p"));
        let right = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G1, f("p"));
        let p = Proof::cut(left, right, Side::One, f("p")).unwrap();
        assert_eq!(eliminate_cuts(&p).unwrap_err(), TransformError::NotTypeR(0));
    }
}
