//! Interpolant extraction from split-sequent proofs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::construct::prove_cutfree;
use crate::formulas::{entails, valid, Formula};
use crate::sequent::{check_proof, Part, Proof, ProofViolation, Rule, Side, SplitSequent, System};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaeharaError {
    #[error(transparent)]
    Invalid(#[from] ProofViolation),
    #[error("node {0}: cut variables do not lie on the cut's side")]
    NonMonochromaticCut(usize),
    #[error("node {0}: rule {1} is not supported")]
    UnsupportedRule(usize, &'static str),
}

/// A proof with the interpolant of every node, in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedProof {
    pub proof: Proof,
    pub interpolants: Vec<Formula>,
}

impl AnnotatedProof {
    pub fn root(&self) -> &Formula {
        &self.interpolants[0]
    }

    /// One node per line suffixed with `@ C`, the root interpolant last.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut id = 0;
        fn go(p: &Proof, depth: usize, id: &mut usize, cs: &[Formula], out: &mut String) {
            let _ = writeln!(out, "{}{}  [{}] @ {}", "  ".repeat(depth), p.seq, p.rule.name(), cs[*id]);
            *id += 1;
            for q in &p.premises {
                go(q, depth + 1, id, cs, out);
            }
        }
        go(&self.proof, 0, &mut id, &self.interpolants, &mut out);
        let _ = writeln!(out, "{}", self.root());
        out
    }
}

pub(crate) fn axiom(a: Part, s: Part, f: &Formula) -> Formula {
    match (a.side(), s.side()) {
        (Side::One, Side::One) => Formula::Bottom,
        (Side::Two, Side::Two) => Formula::top(),
        (Side::One, Side::Two) => f.clone(),
        (Side::Two, Side::One) => Formula::neg(f.clone()),
    }
}

/// The interpolant of a single node given its premises' interpolants.
pub(crate) fn step(p: &Proof, node: usize, cs: Vec<Formula>) -> Result<Formula, MaeharaError> {
    let mut cs = cs.into_iter();
    let mut next = || cs.next().expect("premise interpolant");
    Ok(match p.rule {
        Rule::Ax => {
            let occ: Vec<(Part, &Formula)> = p.seq.occurrences().collect();
            axiom(occ[0].0, occ[1].0, occ[0].1)
        }
        Rule::Bot => match p.seq.occurrences().next().expect("⊥").0.side() {
            Side::One => Formula::Bottom,
            Side::Two => Formula::top(),
        },
        Rule::RAnd | Rule::LOr => {
            let (part, _) = p.main_formula().expect("main");
            let (c, d) = (next(), next());
            match part.side() {
                Side::One => Formula::or(c, d),
                Side::Two => Formula::and(c, d),
            }
        }
        Rule::Cut => {
            let (side, f) = p.cut_formula().expect("cut");
            if !f.vars().is_subset(&p.seq.side_vars(side)) {
                return Err(MaeharaError::NonMonochromaticCut(node));
            }
            let (c, d) = (next(), next());
            match side {
                Side::One => Formula::or(c, d),
                Side::Two => Formula::and(c, d),
            }
        }
        Rule::K | Rule::Four => {
            let (part, _) = p.main_formula().expect("main");
            let c = next();
            match part.side() {
                Side::Two => Formula::boxed(c),
                Side::One => Formula::neg(Formula::boxed(Formula::neg(c))),
            }
        }
        Rule::D => Formula::boxed(next()),
        _ => next(),
    })
}

/// Interpolants for a checked proof; nodes are not re-checked.
pub(crate) fn annotate(p: &Proof) -> Result<Vec<Formula>, MaeharaError> {
    fn go(p: &Proof, id: &mut usize, out: &mut Vec<Option<Formula>>) -> Result<Formula, MaeharaError> {
        let me = *id;
        *id += 1;
        out.push(None);
        let mut cs = Vec::new();
        for q in &p.premises {
            cs.push(go(q, id, out)?);
        }
        let c = step(p, me, cs)?;
        out[me] = Some(c.clone());
        Ok(c)
    }
    let mut out = Vec::new();
    go(p, &mut 0, &mut out)?;
    Ok(out.into_iter().map(|c| c.expect("filled")).collect())
}

/// Check `p` in `sys` and compute every node's interpolant.
pub fn maehara(p: &Proof, sys: System) -> Result<AnnotatedProof, MaeharaError> {
    check_proof(p, sys)?;
    let interpolants = annotate(p)?;
    Ok(AnnotatedProof { proof: p.clone(), interpolants })
}

/// Root interpolant of an already checked proof.
pub fn interpolant(p: &Proof) -> Result<Formula, MaeharaError> {
    Ok(annotate(p)?.swap_remove(0))
}

/// `Γ1 ⇒ Δ1, C` and `C, Γ2 ⇒ Δ2` for a split sequent and candidate `C`.
pub fn flank_sequents(seq: &SplitSequent, c: &Formula) -> (SplitSequent, SplitSequent) {
    let mut left = SplitSequent::default();
    left.get_mut(Part::G1).extend(seq.get(Part::G1).iter().cloned());
    left.get_mut(Part::D1).extend(seq.get(Part::D1).iter().cloned());
    left.get_mut(Part::D2).push(c.clone());
    let mut right = SplitSequent::default();
    right.get_mut(Part::G1).push(c.clone());
    right.get_mut(Part::G2).extend(seq.get(Part::G2).iter().cloned());
    right.get_mut(Part::D2).extend(seq.get(Part::D2).iter().cloned());
    (left, right)
}

/// Whether `c` interpolates the split sequent in `sys`: the variable
/// condition plus both flank sequents provable.
pub fn check_sequent_interpolant(seq: &SplitSequent, c: &Formula, sys: System) -> Result<(), String> {
    let shared: BTreeSet<String> =
        seq.side_vars(Side::One).intersection(&seq.side_vars(Side::Two)).cloned().collect();
    if !c.vars().is_subset(&shared) {
        return Err(format!("`{c}` uses variables outside {shared:?}"));
    }
    let (l, r) = flank_sequents(seq, c);
    for s in [l, r] {
        let ok = if sys.is_modal() {
            prove_cutfree(&s, sys).is_ok()
        } else {
            valid(&s.formula()).unwrap_or(false)
        };
        if !ok {
            return Err(format!("`{s}` is not provable in {sys}"));
        }
    }
    Ok(())
}

/// Whether `c` is an interpolant of `a → b` in `sys`.
pub fn verify_interpolant(a: &Formula, b: &Formula, c: &Formula, sys: System) -> Result<(), String> {
    let mut seq = SplitSequent::default();
    seq.get_mut(Part::G1).push(a.clone());
    seq.get_mut(Part::D2).push(b.clone());
    let shared: BTreeSet<String> = a.vars().intersection(&b.vars()).cloned().collect();
    if !c.vars().is_subset(&shared) {
        return Err(format!("`{c}` uses variables outside {shared:?}"));
    }
    if !sys.is_modal() {
        return match (entails(a, c), entails(c, b)) {
            (Ok(true), Ok(true)) => Ok(()),
            (Ok(false), _) => Err(format!("`{a}` does not entail `{c}`")),
            (_, Ok(false)) => Err(format!("`{c}` does not entail `{b}`")),
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        };
    }
    check_sequent_interpolant(&seq, c, sys)
}
