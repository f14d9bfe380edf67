use std::collections::BTreeSet;

use crate::formulas::{Assignment, Formula, KripkeModel};
use crate::sequent::{Part, Proof, Rule, SplitSequent, System};

const BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Countermodel {
    Assignment(Assignment),
    /// Root world 0 falsifies the sequent.
    Kripke(KripkeModel),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProveError {
    #[error("not provable")]
    NotProvable(Option<Countermodel>),
    #[error("search budget exhausted")]
    Budget,
}

type Key = Vec<(Part, Formula)>;

fn key(seq: &SplitSequent) -> Key {
    let set: BTreeSet<(Part, Formula)> = seq.occurrences().map(|(p, f)| (p, f.clone())).collect();
    set.into_iter().collect()
}

fn opaque(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_) | Formula::Box(_))
}

struct Search {
    sys: System,
    steps: usize,
    /// Premises of (4) jumps on the current branch.
    branch: Vec<Key>,
}

enum Fail {
    Model(Option<KripkeModel>),
    Budget,
}

impl Search {
    fn world(seq: &SplitSequent) -> KripkeModel {
        let mut m = KripkeModel::default();
        let atoms = [Part::G1, Part::G2]
            .into_iter()
            .flat_map(|p| seq.get(p).iter())
            .filter_map(|f| match f {
                Formula::Atom(a) => Some(a.clone()),
                _ => None,
            })
            .collect();
        m.add_world(atoms);
        m
    }

    fn prove(&mut self, seq: &SplitSequent, tused: &BTreeSet<(Part, Formula)>) -> Result<Proof, Fail> {
        self.steps += 1;
        if self.steps > BUDGET {
            return Err(Fail::Budget);
        }
        // Duplicates in one component.
        for part in Part::ALL {
            let v = seq.get(part);
            if let Some(i) = (0..v.len()).find(|&i| v[..i].contains(&v[i])) {
                let mut s = seq.clone();
                s.get_mut(part).remove(i);
                let p = self.prove(&s, tused)?;
                return Ok(p.weaken_to(seq).expect("weakening back"));
            }
        }
        for a in [Part::G1, Part::G2] {
            if seq.get(a).contains(&Formula::Bottom) {
                return Ok(Proof::bot(a).weaken_to(seq).expect("weakening"));
            }
            for f in seq.get(a).iter().filter(|f| opaque(f)) {
                for s in [Part::D1, Part::D2] {
                    if seq.get(s).contains(f) {
                        return Ok(Proof::ax(f.clone(), a, s).weaken_to(seq).expect("weakening"));
                    }
                }
            }
        }
        let occs: Vec<(Part, Formula)> = seq.occurrences().map(|(p, f)| (p, f.clone())).collect();
        let without = |part: Part, f: &Formula| seq.without_last(part, f).expect("occurrence");
        // Rules with one premise.
        for (part, f) in &occs {
            match (part.is_ante(), f) {
                (_, Formula::Neg(a)) => {
                    let mut s = without(*part, f);
                    s.get_mut(part.flip()).push((**a).clone());
                    let p = self.prove(&s, tused)?;
                    let rule = if part.is_ante() { Rule::LNeg } else { Rule::RNeg };
                    return Ok(Proof::unary(rule, *part, f.clone(), p).expect("negation rule"));
                }
                (true, Formula::And(a, b)) | (false, Formula::Or(a, b)) => {
                    let mut s = without(*part, f);
                    s.get_mut(*part).push((**b).clone());
                    s.get_mut(*part).push((**a).clone());
                    let p = self.prove(&s, tused)?;
                    let (r1, r2) = if part.is_ante() { (Rule::LAnd1, Rule::LAnd2) } else { (Rule::ROr1, Rule::ROr2) };
                    let p = Proof::unary(r1, *part, f.clone(), p).expect("first component");
                    let p = Proof::unary(r2, *part, f.clone(), p).expect("second component");
                    return Ok(p.contract(*part, f.clone()).expect("contraction"));
                }
                _ => {}
            }
        }
        for (part, f) in &occs {
            match (part.is_ante(), f) {
                (false, Formula::And(a, b)) | (true, Formula::Or(a, b)) => {
                    let ctx = without(*part, f);
                    let mut s1 = ctx.clone();
                    s1.get_mut(*part).push((**a).clone());
                    let mut s2 = ctx;
                    s2.get_mut(*part).push((**b).clone());
                    let p1 = self.prove(&s1, tused)?;
                    let p2 = self.prove(&s2, tused)?;
                    let rule = if part.is_ante() { Rule::LOr } else { Rule::RAnd };
                    return Ok(Proof::binary(rule, *part, f.clone(), p1, p2).expect("branching rule"));
                }
                _ => {}
            }
        }
        if self.sys.allows(Rule::T) {
            for (part, f) in &occs {
                if let (true, Formula::Box(a)) = (part.is_ante(), f) {
                    if tused.contains(&(*part, f.clone())) {
                        continue;
                    }
                    let mut s = seq.clone();
                    s.get_mut(*part).push((**a).clone());
                    let mut t2 = tused.clone();
                    t2.insert((*part, f.clone()));
                    let p = self.prove(&s, &t2)?;
                    let p = Proof::unary(Rule::T, *part, f.clone(), p).expect("(T)");
                    return Ok(p.contract(*part, f.clone()).expect("contraction").weaken_to(seq).expect("same"));
                }
            }
        }
        self.jump(seq)
    }

    /// Modal rules on a saturated sequent.
    fn jump(&mut self, seq: &SplitSequent) -> Result<Proof, Fail> {
        let mut here = Self::world(seq);
        if !self.sys.is_modal() {
            return Err(Fail::Model(Some(here)));
        }
        let four = self.sys.allows(Rule::Four);
        let mut base = SplitSequent::default();
        for a in [Part::G1, Part::G2] {
            for f in seq.get(a) {
                if let Formula::Box(x) = f {
                    base.get_mut(a).push((**x).clone());
                }
            }
            if four {
                let boxed: Vec<Formula> = base.get(a).iter().map(|x| Formula::boxed(x.clone())).collect();
                base.get_mut(a).extend(boxed);
            }
        }
        let mut complete = true;
        let mut targets: Vec<(Part, Formula)> = Vec::new();
        for s in [Part::D1, Part::D2] {
            for f in seq.get(s) {
                if let Formula::Box(x) = f {
                    targets.push((s, (**x).clone()));
                }
            }
        }
        let rule = if four { Rule::Four } else { Rule::K };
        if self.sys.allows(rule) {
            for (s, b) in &targets {
                let mut prem = base.clone();
                prem.get_mut(*s).push(b.clone());
                match self.premise(&prem) {
                    Ok(p) => {
                        let m = Proof::modal(rule, p).expect("modal rule");
                        return Ok(m.weaken_to(seq).expect("weakening"));
                    }
                    Err(Fail::Budget) => return Err(Fail::Budget),
                    Err(Fail::Model(Some(child))) => {
                        let w = here.graft(&child);
                        here.succ[0].push(w);
                    }
                    Err(Fail::Model(None)) => complete = false,
                }
            }
        }
        if self.sys.allows(Rule::D) {
            let mut prem = SplitSequent::default();
            for a in [Part::G1, Part::G2] {
                for f in seq.get(a) {
                    if let Formula::Box(x) = f {
                        prem.get_mut(a).push((**x).clone());
                    }
                }
            }
            match self.premise(&prem) {
                Ok(p) => {
                    let m = Proof::modal(Rule::D, p).expect("(D)");
                    return Ok(m.weaken_to(seq).expect("weakening"));
                }
                Err(Fail::Budget) => return Err(Fail::Budget),
                Err(Fail::Model(_)) => complete = false,
            }
        }
        let countermodel = self.sys == System::K && complete;
        Err(Fail::Model(countermodel.then_some(here)))
    }

    fn premise(&mut self, prem: &SplitSequent) -> Result<Proof, Fail> {
        let k = key(prem);
        if self.branch.contains(&k) {
            return Err(Fail::Model(None));
        }
        self.branch.push(k);
        let r = self.prove(prem, &BTreeSet::new());
        self.branch.pop();
        r
    }
}

/// Backward proof search without cuts. The proof's conclusion is `seq`
/// itself; axioms are atomic or boxed.
pub fn prove_cutfree(seq: &SplitSequent, sys: System) -> Result<Proof, ProveError> {
    let mut s = Search { sys: sys.cut_free(), steps: 0, branch: Vec::new() };
    match s.prove(seq, &BTreeSet::new()) {
        Ok(p) => Ok(p.with_conclusion(seq)),
        Err(Fail::Budget) => Err(ProveError::Budget),
        Err(Fail::Model(m)) => {
            let m = m.map(|m| {
                if sys.is_modal() {
                    Countermodel::Kripke(m)
                } else {
                    Countermodel::Assignment(seq.vars().into_iter().map(|v| (v.clone(), m.val[0].contains(&v))).collect())
                }
            });
            Err(ProveError::NotProvable(m))
        }
    }
}

/// Whether `seq` is provable without cuts.
pub fn provable(seq: &SplitSequent, sys: System) -> bool {
    prove_cutfree(seq, sys).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_formula, valid};
    use crate::sequent::check_proof;

    fn seq(s: &str) -> SplitSequent {
        SplitSequent::parse(s).unwrap()
    }

    #[test]
    fn propositional() {
        let s = seq("p & q ; => p, q ;");
        let p = prove_cutfree(&s, System::LKminus).unwrap();
        check_proof(&p, System::LKminus).unwrap();
        assert_eq!(p.seq, s);
        match prove_cutfree(&seq("; => ; p"), System::LKminus) {
            Err(ProveError::NotProvable(Some(Countermodel::Assignment(a)))) => {
                assert_eq!(a.get("p"), Some(&false))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k_proof_and_countermodel() {
        let s = seq("[]p, [](~p | q) ; => ; []q");
        let p = prove_cutfree(&s, System::K).unwrap();
        check_proof(&p, System::K).unwrap();
        assert!(p.preorder().iter().any(|n| n.rule == Rule::K));
        let s = seq("[](p | q) ; => ; []p, []q");
        match prove_cutfree(&s, System::K) {
            Err(ProveError::NotProvable(Some(Countermodel::Kripke(m)))) => {
                assert!(parse_formula("[](p | q)").unwrap().eval_kripke(&m, 0));
                assert!(!parse_formula("[]p | []q").unwrap().eval_kripke(&m, 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn modal_systems() {
        let cases = [
            ("[]p ; => p ;", System::KT, true),
            ("[]p ; => p ;", System::K, false),
            ("[]p ; => [][]p ;", System::K4, true),
            ("[]p ; => [][]p ;", System::S4, true),
            ("[]p ; => ~[]~p ;", System::KD, true),
            ("[]p ; => ~[]~p ;", System::K, false),
            ("[]p ; => ~[]~p ;", System::KD4, true),
            ("; => [](~[]p | p) ;", System::S4, true),
            ("; => [](~[]p | p) ;", System::K4, false),
        ];
        for (s, sys, want) in cases {
            let r = prove_cutfree(&seq(s), sys);
            assert_eq!(r.is_ok(), want, "{s} in {sys}");
            if let Ok(p) = r {
                check_proof(&p, sys).unwrap();
            }
        }
    }

    #[test]
    fn agrees_with_truth_tables() {
        let fs = ["p | ~p", "p & ~p", "(p -> q) -> (~q -> ~p)", "p -> q", "~(p & q) -> ~p | ~q", "false -> p"];
        for f in fs {
            let g = parse_formula(f).unwrap();
            let mut s = SplitSequent::default();
            s.get_mut(Part::D2).push(g.clone());
            assert_eq!(provable(&s, System::LKminus), valid(&g).unwrap(), "{f}");
        }
    }
}
