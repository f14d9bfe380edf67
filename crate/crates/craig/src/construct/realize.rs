use std::collections::BTreeMap;

use super::prover::{prove_cutfree, ProveError};
use crate::formulas::{
    cnf, entails, equiv, is_pruned_interpolant, mcnf, Clause, ClauseSet, Formula, Literal,
};
use crate::maehara::{interpolant, verify_interpolant, MaeharaError};
use crate::resolution::{refute, RefuteOutcome, ResError, ResNode};
use crate::sequent::{check_proof, Part, Proof, ProofViolation, SequentError, Side, SplitSequent, System};
use crate::transform::{eliminate_cuts, literal_cuts_to_atomic, neg_invert, TransformError};

/// Default bound on the number of dual clauses built by [`conjoin`].
pub const CMINUS_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("the formula does not entail the clause")]
    NotEntailed,
    #[error("literal `{0}` uses variables outside the formula")]
    ForeignLiteral(String),
    #[error("not an interpolant: {0}")]
    NotAnInterpolant(String),
    #[error("not a pruned interpolant")]
    NotPrunedInterpolant,
    #[error("subproof {0} does not prove its clause sequent")]
    SubproofMismatch(usize),
    #[error("literal `{0}` is not supported here")]
    UnsupportedLiteral(String),
    #[error("{0} dual clauses exceed the cap of {1}")]
    TooManyClauses(usize, usize),
    #[error("system {0} is not supported here")]
    UnsupportedSystem(System),
    #[error(transparent)]
    Prove(#[from] ProveError),
    #[error(transparent)]
    Resolution(#[from] ResError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Sequent(#[from] SequentError),
    #[error(transparent)]
    Invalid(#[from] ProofViolation),
    #[error(transparent)]
    Maehara(#[from] MaeharaError),
}

fn split(g1: Vec<Formula>, g2: Vec<Formula>, d1: Vec<Formula>, d2: Vec<Formula>) -> SplitSequent {
    SplitSequent::new(g1, g2, d1, d2)
}

fn literals(c: &Clause) -> Vec<Formula> {
    c.iter().map(Literal::to_formula).collect()
}

fn cut_system(sys: System) -> System {
    if sys.is_modal() {
        sys
    } else {
        System::LKat
    }
}

/// `a ; ⇒ ; ℓ1, …, ℓk` whose interpolant is `⊥ ∨ ℓ1 ∨ … ∨ ℓk`: a cut-free
/// proof of `a ; ⇒ ℓ1, …, ℓk ;` followed by one literal cut per `ℓj`.
pub fn realize_clause(a: &Formula, c: &Clause) -> Result<Proof, ConstructError> {
    realize_clause_in(a, c, System::LKminus)
}

/// [`realize_clause`] on top of a cut-free proof in `sys`.
pub fn realize_clause_in(a: &Formula, c: &Clause, sys: System) -> Result<Proof, ConstructError> {
    let lits = literals(c);
    if let Some(l) = lits.iter().find(|l| !l.vars().is_subset(&a.vars())) {
        return Err(ConstructError::ForeignLiteral(l.to_string()));
    }
    if !sys.is_modal() && !entails(a, &Formula::disj(lits.clone())).unwrap_or(false) {
        return Err(ConstructError::NotEntailed);
    }
    let start = split(vec![a.clone()], vec![], lits.clone(), vec![]);
    let mut p = match prove_cutfree(&start, sys) {
        Ok(p) => p,
        Err(ProveError::NotProvable(_)) => return Err(ConstructError::NotEntailed),
        Err(e) => return Err(e.into()),
    };
    for (j, l) in lits.iter().enumerate() {
        let left = p.weaken(Part::D2, l.clone());
        let target = split(vec![a.clone(), l.clone()], vec![], lits[j + 1..].to_vec(), lits[..=j].to_vec());
        let right = Proof::ax(l.clone(), Part::G1, Part::D2).weaken_to(&target)?;
        p = Proof::cut(left, right, Side::One, l.clone())?;
    }
    let end = split(vec![a.clone()], vec![], vec![], lits);
    Ok(p.with_conclusion(&end))
}

/// Side-two occurrence standing for literal `l`: `p` in the succedent for
/// `p`, `p` in the antecedent for `¬p`.
fn rep(l: &Literal) -> (Part, Formula) {
    if l.is_negative() {
        (Part::G2, l.body().clone())
    } else {
        (Part::D2, l.body().clone())
    }
}

fn max_union(x: &SplitSequent, y: &SplitSequent) -> SplitSequent {
    let mut out = x.clone();
    for part in Part::ALL {
        let mut have = x.get(part).clone();
        for f in y.get(part) {
            if let Some(i) = have.iter().position(|g| g == f) {
                have.remove(i);
            } else {
                out.get_mut(part).push(f.clone());
            }
        }
    }
    out
}

/// Move every negative literal of `p`'s side-two succedent to the
/// side-two antecedent as its atom.
fn canonical(mut p: Proof, c: &Clause) -> Result<Proof, ConstructError> {
    for l in c.iter().filter(|l| l.is_negative()) {
        let f = l.to_formula();
        let i = p.seq.get(Part::D2).iter().position(|g| *g == f).expect("literal present");
        let pos = p.seq.offset(Part::D2) + i;
        p = neg_invert(&p, pos)?;
    }
    Ok(p)
}

/// Combine proofs of `a ; ⇒ ; C_i` into a proof of `a ; ⇒ ; b` whose
/// interpolant is the conjunction of theirs up to `⊤` conjuncts.
pub fn conjoin(a: &Formula, b: &Formula, cs: &ClauseSet, pis: &[Proof]) -> Result<Proof, ConstructError> {
    conjoin_with(a, b, cs, pis, System::LKminus, CMINUS_CAP)
}

/// [`conjoin`] with the system for the dual leaves and the cap on dual
/// clauses.
pub fn conjoin_with(
    a: &Formula,
    b: &Formula,
    cs: &ClauseSet,
    pis: &[Proof],
    sys: System,
    cap: usize,
) -> Result<Proof, ConstructError> {
    let clauses: Vec<&Clause> = cs.iter().collect();
    if clauses.len() != pis.len() {
        return Err(ConstructError::SubproofMismatch(pis.len().min(clauses.len())));
    }
    for l in clauses.iter().copied().flatten() {
        if matches!(l.body(), Formula::Bottom) {
            return Err(ConstructError::UnsupportedLiteral(l.to_string()));
        }
    }
    let mut plus: BTreeMap<Clause, Proof> = BTreeMap::new();
    for (i, (c, p)) in clauses.iter().zip(pis).enumerate() {
        let want = split(vec![a.clone()], vec![], vec![], literals(c));
        if !p.seq.same_multisets(&want) {
            return Err(ConstructError::SubproofMismatch(i));
        }
        // `b` on side two keeps every cut on a shared atom monochromatic.
        plus.entry((*c).clone()).or_insert(canonical(p.clone(), c)?.weaken(Part::D2, b.clone()));
    }
    let mut minus: Vec<Clause> = vec![Clause::new()];
    for c in &clauses {
        let mut next = Vec::new();
        for d in &minus {
            for l in c.iter() {
                let mut e = d.clone();
                e.insert(l.dual());
                next.push(e);
            }
        }
        if next.len() > cap {
            return Err(ConstructError::TooManyClauses(next.len(), cap));
        }
        minus = next;
    }
    // Resolution runs on stand-in atoms so boxed bodies resolve like atoms.
    let mut names: BTreeMap<Formula, String> = BTreeMap::new();
    for l in plus.keys().chain(minus.iter()).flatten() {
        let n = names.len();
        names.entry(l.body().clone()).or_insert_with(|| format!("v{n}"));
    }
    let bodies: BTreeMap<String, Formula> = names.iter().map(|(f, n)| (n.clone(), f.clone())).collect();
    let relabel = |c: &Clause| -> Clause {
        c.iter()
            .map(|l| {
                let x = Literal::atom(&names[l.body()]);
                if l.is_negative() {
                    x.dual()
                } else {
                    x
                }
            })
            .collect()
    };
    let back = |c: &Clause| -> Clause {
        c.iter()
            .map(|l| {
                let x = Literal::pos(bodies[l.key()].clone());
                if l.is_negative() {
                    x.dual()
                } else {
                    x
                }
            })
            .collect()
    };
    let all: ClauseSet = plus.keys().map(relabel).chain(minus.iter().map(relabel)).collect();
    let refutation = match refute(&all)? {
        RefuteOutcome::Refuted(r) => r,
        RefuteOutcome::Satisfiable(_) => {
            return Err(ConstructError::NotAnInterpolant("the clause set is not entailed by the formula".into()))
        }
    };
    let mut sigma: BTreeMap<Clause, Proof> = BTreeMap::new();
    let mut built: Vec<Proof> = Vec::with_capacity(refutation.nodes.len());
    for node in &refutation.nodes {
        let p = match node {
            ResNode::Input { clause, .. } => {
                let c = back(clause);
                if let Some(p) = plus.get(&c) {
                    p.clone()
                } else if let Some(p) = sigma.get(&c) {
                    p.clone()
                } else {
                    let mut s = split(vec![], vec![], vec![], vec![]);
                    for l in &c {
                        let (part, f) = rep(l);
                        s.get_mut(part).push(f);
                    }
                    s.get_mut(Part::D2).push(b.clone());
                    let p = prove_cutfree(&s, sys)?;
                    sigma.insert(c, p.clone());
                    p
                }
            }
            ResNode::Resolve { left, right, pivot } => {
                let f = bodies[pivot].clone();
                let (l, r) = (built[*left].clone(), built[*right].clone());
                let cl = l.seq.without_last(Part::D2, &f).ok_or(ConstructError::SubproofMismatch(*left))?;
                let cr = r.seq.without_last(Part::G2, &f).ok_or(ConstructError::SubproofMismatch(*right))?;
                let ctx = max_union(&cl, &cr);
                let mut tl = ctx.clone();
                tl.get_mut(Part::D2).push(f.clone());
                let mut tr = ctx;
                tr.get_mut(Part::G2).push(f.clone());
                Proof::cut(l.weaken_to(&tl)?, r.weaken_to(&tr)?, Side::Two, f)?
            }
            ResNode::Weaken { premise, added } => {
                let mut p = built[*premise].clone();
                for l in back(added) {
                    let (part, f) = rep(&l);
                    p = p.weaken(part, f);
                }
                p
            }
        };
        built.push(p);
    }
    let root = built.pop().expect("refutation has a root");
    let end = split(vec![a.clone()], vec![], vec![], vec![b.clone()]);
    let root = root.weaken_to(&end).map_err(|_| ConstructError::SubproofMismatch(refutation.nodes.len() - 1))?;
    let psi = literal_cuts_to_atomic(&root.with_conclusion(&end))?;
    check_proof(&psi, cut_system(sys))?;
    Ok(psi)
}

/// A proof of `a ; ⇒ ; b` in `sys` whose interpolant is equivalent to `c`:
/// one clause proof per clause of the clause form of `c`, then [`conjoin`].
pub fn realize_interpolant(a: &Formula, b: &Formula, c: &Formula, sys: System) -> Result<Proof, ConstructError> {
    realize_interpolant_with(a, b, c, sys, CMINUS_CAP)
}

pub fn realize_interpolant_with(
    a: &Formula,
    b: &Formula,
    c: &Formula,
    sys: System,
    cap: usize,
) -> Result<Proof, ConstructError> {
    let base = match sys {
        System::LKat | System::LKlit | System::LKmono | System::LK | System::LKminus => System::LKminus,
        s if s.is_modal() => s.cut_free(),
        s => return Err(ConstructError::UnsupportedSystem(s)),
    };
    verify_interpolant(a, b, c, base).map_err(ConstructError::NotAnInterpolant)?;
    let cs = if base.is_modal() { mcnf(c) } else { cnf(c) };
    let pis = cs.iter().map(|ci| realize_clause_in(a, ci, base)).collect::<Result<Vec<_>, _>>()?;
    let psi = conjoin_with(a, b, &cs, &pis, base, cap)?;
    let m = interpolant(&psi)?;
    let same = if base.is_modal() {
        let one = |x: &Formula, y: &Formula| {
            prove_cutfree(&split(vec![x.clone()], vec![], vec![], vec![y.clone()]), base).is_ok()
        };
        one(&m, c) && one(c, &m)
    } else {
        equiv(&m, c).unwrap_or(false)
    };
    if !same {
        return Err(ConstructError::NotAnInterpolant(format!("realized `{m}` is not equivalent to `{c}`")));
    }
    Ok(psi)
}

/// A tame atomic-cut proof of `a ; ⇒ ; b` with every cut of type R and
/// interpolant CNF exactly `cs`.
pub fn realize_pruned(a: &Formula, b: &Formula, cs: &ClauseSet) -> Result<Proof, ConstructError> {
    if !is_pruned_interpolant(cs, a, b) {
        return Err(ConstructError::NotPrunedInterpolant);
    }
    let mut pis = Vec::new();
    for c in cs {
        let s = split(vec![a.clone()], vec![], vec![], literals(c));
        pis.push(prove_cutfree(&s, System::LKminus)?);
    }
    conjoin(a, b, cs, &pis)
}

/// Cut-free proof of `a ; ⇒ ; b` whose interpolant CNF is subsumed by the
/// pruned interpolant `cs`.
pub fn pruned_subsumption_pipeline(a: &Formula, b: &Formula, cs: &ClauseSet) -> Result<Proof, ConstructError> {
    Ok(eliminate_cuts(&realize_pruned(a, b, cs)?)?.proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_clause_set, parse_formula, subsumes};
    use crate::sequent::is_tame;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn cls(s: &str) -> ClauseSet {
        parse_clause_set(s).unwrap()
    }

    #[test]
    fn clause_proofs() {
        for (a, c, want) in [("p & q", "p", "p"), ("p & q", "q", "q"), ("p & r", "p r", "p | r"), ("p & ~q", "~q", "~q")] {
            let c = cls(c).into_iter().next().unwrap();
            let p = realize_clause(&f(a), &c).unwrap();
            check_proof(&p, System::LKlit).unwrap();
            let m = interpolant(&p).unwrap();
            assert!(equiv(&m, &f(want)).unwrap(), "{m}");
            assert_eq!(cnf(&m), [c].into_iter().collect::<ClauseSet>());
        }
        let c = cls("~p").into_iter().next().unwrap();
        assert_eq!(realize_clause(&f("p & q"), &c), Err(ConstructError::NotEntailed));
        let c = cls("p r").into_iter().next().unwrap();
        assert!(matches!(realize_clause(&f("p"), &c), Err(ConstructError::ForeignLiteral(_))));
    }

    #[test]
    fn conjunction_of_clause_proofs() {
        let (a, b) = (f("p & q"), f("p | q"));
        let cs = cls("p\nq");
        let pis: Vec<Proof> = cs.iter().map(|c| realize_clause(&a, c).unwrap()).collect();
        let psi = conjoin(&a, &b, &cs, &pis).unwrap();
        check_proof(&psi, System::LKat).unwrap();
        assert_eq!(cnf(&interpolant(&psi).unwrap()), cs);
    }

    #[test]
    fn realizing_conjunction_and_double_negation() {
        let p = realize_interpolant(&f("p & q"), &f("p | q"), &f("p & q"), System::LKat).unwrap();
        check_proof(&p, System::LKat).unwrap();
        assert!(equiv(&interpolant(&p).unwrap(), &f("p & q")).unwrap());
        let p = realize_interpolant(&f("p"), &f("p"), &f("~~p"), System::LKat).unwrap();
        assert!(equiv(&interpolant(&p).unwrap(), &f("p")).unwrap());
        assert!(matches!(
            realize_interpolant(&f("p & q"), &f("p | q"), &f("r"), System::LKat),
            Err(ConstructError::NotAnInterpolant(_))
        ));
    }

    #[test]
    fn non_pruned_targets() {
        let (a, b) = (f("p & q"), f("p | q"));
        for c in ["(p | q) & (~q | p)", "p & (q | p)", "q & (p | q)", "p & q & (p | q)", "p | (p & q)"] {
            let pr = realize_interpolant(&a, &b, &f(c), System::LKat).expect(c);
            assert!(equiv(&interpolant(&pr).unwrap(), &f(c)).unwrap(), "{c}");
        }
    }

    #[test]
    fn modal_targets() {
        let (a, b) = (f("[](p & q)"), f("[](p | q)"));
        for c in ["[](p & q)", "[](p | q)", "[]p & []q"] {
            let p = realize_interpolant(&a, &b, &f(c), System::K).unwrap();
            check_proof(&p, System::K).unwrap();
        }
    }

    #[test]
    fn pruned_pipeline() {
        let (a, b) = (f("p & q"), f("p | q"));
        let cs = cls("p\nq");
        let p = realize_pruned(&a, &b, &cs).unwrap();
        check_proof(&p, System::LKat).unwrap();
        assert!(is_tame(&p).unwrap().tame);
        assert_eq!(cnf(&interpolant(&p).unwrap()), cs);
        let e = eliminate_cuts(&p).unwrap();
        assert!(e.subsumption_chain());
        assert!(e.measure_decreases());
        let m = cnf(&interpolant(&e.proof).unwrap());
        assert!(m == cls("p") || m == cls("q"), "{m:?}");
        assert!(subsumes(&cs, &m));
        assert_eq!(realize_pruned(&a, &b, &cls("p q")), Err(ConstructError::NotPrunedInterpolant));
    }
}
