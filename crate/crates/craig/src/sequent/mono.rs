use std::collections::BTreeSet;

use super::check::ProofViolation;
use super::index::{Occ, ProofIndex};
use super::{Proof, Rule, SplitSequent};
use crate::formulas::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoError {
    #[error("the conclusion contains no atom to rename to")]
    NoAtomAvailable,
    #[error("node {0}: only literal cuts can be made monochromatic")]
    NotLiteral(usize),
    #[error("no fixpoint reached")]
    Diverged,
    #[error(transparent)]
    Invalid(#[from] ProofViolation),
}

/// Rename atoms everywhere in a proof.
pub(crate) fn map_proof(p: &Proof, f: &impl Fn(&Formula) -> Formula) -> Proof {
    Proof {
        rule: p.rule,
        seq: p.seq.map(f),
        main: p.main,
        premises: p.premises.iter().map(|q| map_proof(q, f)).collect(),
    }
}

/// Move the flagged occurrences to the other side of the partition.
pub(crate) fn cross_occurrences(p: &Proof, flagged: &BTreeSet<Occ>) -> Proof {
    fn go(p: &Proof, id: &mut usize, flagged: &BTreeSet<Occ>) -> Proof {
        let me = *id;
        *id += 1;
        let premises = p.premises.iter().map(|q| go(q, id, flagged)).collect();
        let mut seq = SplitSequent::default();
        let mut placed = Vec::new();
        for (pos, (part, f)) in p.seq.occurrences().enumerate() {
            let t = if flagged.contains(&Occ { node: me, pos }) { part.cross() } else { part };
            seq.get_mut(t).push(f.clone());
            placed.push((t, seq.get(t).len() - 1));
        }
        let main = p.main.map(|m| seq.offset(placed[m].0) + placed[m].1);
        Proof { rule: p.rule, seq, main, premises }
    }
    go(p, &mut 0, flagged)
}

fn placed(p: &Proof) -> bool {
    match p.cut_formula() {
        Some((side, f)) => f.vars().is_subset(&p.seq.side_vars(side)),
        None => true,
    }
}

/// Flip the cut at the root of `p` to the other side.
fn flip_cut(p: &Proof) -> Result<Proof, ProofViolation> {
    let ix = ProofIndex::new(p)?;
    let (l, r) = ix.cut_occurrences(0).expect("root is a cut");
    let flagged: BTreeSet<Occ> = ix.ancestors(l).into_iter().chain(ix.ancestors(r)).collect();
    Ok(cross_occurrences(p, &flagged))
}

fn fix_cut(p: &Proof, node: usize) -> Result<Proof, MonoError> {
    let (side, f) = p.cut_formula().expect("cut");
    let atom = match &f {
        Formula::Atom(a) => a.clone(),
        Formula::Neg(x) => match &**x {
            Formula::Atom(a) => a.clone(),
            _ => return Err(MonoError::NotLiteral(node)),
        },
        _ => return Err(MonoError::NotLiteral(node)),
    };
    if p.seq.side_vars(side.other()).contains(&atom) {
        return Ok(flip_cut(p)?);
    }
    debug_assert!(!p.seq.vars().contains(&atom));
    let own = p.seq.side_vars(side);
    let other = p.seq.side_vars(side.other());
    let (q, flip) = match (own.first(), other.first()) {
        (Some(q), _) => (q.clone(), false),
        (None, Some(q)) => (q.clone(), true),
        (None, None) => return Err(MonoError::NoAtomAvailable),
    };
    let renamed = map_proof(p, &|g| g.rename(&atom, &q));
    if flip {
        Ok(flip_cut(&renamed)?)
    } else {
        Ok(renamed)
    }
}

/// Make every cut of an atomic or literal-cut proof monochromatic, with the
/// cut occurrences on the side holding the cut formula's atom.
pub fn monochromatize(p: &Proof) -> Result<Proof, MonoError> {
    let mut cur = p.clone();
    let limit = 4 * p.node_count() + 16;
    for _ in 0..limit {
        let nodes = cur.preorder();
        let Some(id) = (0..nodes.len()).rev().find(|&i| nodes[i].rule == Rule::Cut && !placed(nodes[i])) else {
            return Ok(cur);
        };
        let fixed = fix_cut(nodes[id], id)?;
        cur = cur.replace(id, fixed);
    }
    Err(MonoError::Diverged)
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, Part, Side, System};
    use super::*;
    use crate::formulas::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// `p ; => ; p` with a detour through a cut on `z` on side two.
    fn detour(z: &str) -> Proof {
        let zf = f(z);
        let l = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, zf.clone());
        let r = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G2, zf.clone());
        Proof::cut(l, r, Side::Two, zf).unwrap()
    }

    #[test]
    fn fresh_atom_is_renamed() {
        let p = detour("z");
        check_proof(&p, System::LKat).unwrap();
        let m = monochromatize(&p).unwrap();
        check_proof(&m, System::LKat).unwrap();
        assert_eq!(m.seq, p.seq);
        assert!(m.preorder().iter().all(|n| !n.seq.vars().contains("z")));
        assert_eq!(m.cut_formula(), Some((Side::Two, f("p"))));
    }

    #[test]
    fn atom_on_the_other_side_flips() {
        let l = Proof::ax(f("q"), Part::G1, Part::D1).weaken(Part::D2, f("q"));
        let r = Proof::ax(f("q"), Part::G1, Part::D1).weaken(Part::G2, f("q"));
        let c = Proof::cut(l, r, Side::Two, f("q")).unwrap();
        assert!(!placed(&c));
        let m = monochromatize(&c).unwrap();
        check_proof(&m, System::LKat).unwrap();
        assert_eq!(m.cut_formula(), Some((Side::One, f("q"))));
    }

    #[test]
    fn fixpoint_and_literal_cuts() {
        let p = Proof::ax(f("p"), Part::G1, Part::D2);
        assert_eq!(monochromatize(&p).unwrap(), p);
        let m = monochromatize(&detour("~z")).unwrap();
        check_proof(&m, System::LKlit).unwrap();
        assert_eq!(m.cut_formula(), Some((Side::Two, f("~p"))));
    }

    #[test]
    fn atomless_conclusion() {
        let l = Proof::bot(Part::G1).weaken(Part::D2, f("z"));
        let r = Proof::bot(Part::G1).weaken(Part::G2, f("z"));
        let c = Proof::cut(l, r, Side::Two, f("z")).unwrap();
        assert_eq!(monochromatize(&c), Err(MonoError::NoAtomAvailable));
    }
}
