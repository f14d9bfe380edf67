use std::fmt;

use super::{conclude, Proof, Rule, Spec};
use crate::formulas::Formula;

/// Calculus selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    LKminus,
    LKat,
    LKlit,
    LKmono,
    LK,
    K,
    KD,
    KT,
    K4,
    KD4,
    S4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutPolicy {
    NoCuts,
    Atomic,
    Literal,
    /// Variables of the cut formula lie on the side its occurrences sit on.
    Monochromatic,
    Unrestricted,
    AtomicOrBoxed,
}

impl System {
    pub const ALL: [System; 11] = [
        System::LKminus,
        System::LKat,
        System::LKlit,
        System::LKmono,
        System::LK,
        System::K,
        System::KD,
        System::KT,
        System::K4,
        System::KD4,
        System::S4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            System::LKminus => "lk-minus",
            System::LKat => "lk-at",
            System::LKlit => "lk-lit",
            System::LKmono => "lk-mono",
            System::LK => "lk",
            System::K => "k",
            System::KD => "kd",
            System::KT => "kt",
            System::K4 => "k4",
            System::KD4 => "kd4",
            System::S4 => "s4",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        System::ALL.into_iter().find(|x| x.name() == s.to_ascii_lowercase())
    }

    pub fn is_modal(self) -> bool {
        self >= System::K
    }

    pub fn cut_policy(self) -> CutPolicy {
        match self {
            System::LKminus => CutPolicy::NoCuts,
            System::LKat => CutPolicy::Atomic,
            System::LKlit => CutPolicy::Literal,
            System::LKmono => CutPolicy::Monochromatic,
            System::LK => CutPolicy::Unrestricted,
            _ => CutPolicy::AtomicOrBoxed,
        }
    }

    pub fn allows(self, rule: Rule) -> bool {
        use System::*;
        match rule {
            Rule::Cut => self.cut_policy() != CutPolicy::NoCuts,
            Rule::K => matches!(self, K | KD | KT),
            Rule::D => matches!(self, KD | KD4),
            Rule::Four => matches!(self, K4 | KD4 | S4),
            Rule::T => matches!(self, KT | S4),
            _ => true,
        }
    }

    /// Same rules without cuts.
    pub fn cut_free(self) -> System {
        if self.is_modal() {
            self
        } else {
            System::LKminus
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("node {node}: {reason}")]
pub struct ProofViolation {
    pub node: usize,
    pub reason: String,
}

pub(crate) fn cut_allowed(policy: CutPolicy, f: &Formula, placed: bool) -> bool {
    match policy {
        CutPolicy::NoCuts => false,
        CutPolicy::Atomic => f.is_atomic(),
        CutPolicy::Literal => f.is_literal(),
        CutPolicy::Monochromatic => placed,
        CutPolicy::Unrestricted => true,
        CutPolicy::AtomicOrBoxed => f.is_atomic() || matches!(f, Formula::Box(_)),
    }
}

fn check_node(p: &Proof, sys: System) -> Result<(), String> {
    if !sys.allows(p.rule) {
        return Err(format!("rule {} is not available in {sys}", p.rule.name()));
    }
    match p.rule {
        Rule::Ax => {
            let occ: Vec<_> = p.seq.occurrences().collect();
            let ok = occ.len() == 2 && occ[0].0.is_ante() && !occ[1].0.is_ante() && occ[0].1 == occ[1].1;
            if !ok || p.main != Some(0) || !p.premises.is_empty() {
                return Err(format!("`{}` is not an axiom", p.seq));
            }
            Ok(())
        }
        Rule::Bot => {
            let occ: Vec<_> = p.seq.occurrences().collect();
            let ok = occ.len() == 1 && occ[0].0.is_ante() && *occ[0].1 == Formula::Bottom;
            if !ok || p.main != Some(0) || !p.premises.is_empty() {
                return Err(format!("`{}` is not a ⊥ axiom", p.seq));
            }
            Ok(())
        }
        _ => {
            let spec = p.spec().ok_or_else(|| match p.rule {
                Rule::Cut => "cannot identify the cut formula".to_string(),
                _ => "main index is missing or out of range".to_string(),
            })?;
            let seqs: Vec<_> = p.premises.iter().map(|q| &q.seq).collect();
            let (want, main) = conclude(p.rule, &spec, &seqs).map_err(|e| e.to_string())?;
            if !want.same_multisets(&p.seq) {
                return Err(format!("conclusion should be `{want}`"));
            }
            if matches!(p.rule, Rule::K | Rule::Four | Rule::D) {
                let stored = p.main.and_then(|m| p.seq.at(m));
                let expected = main.and_then(|m| want.at(m));
                if stored != expected || p.main.is_some() != main.is_some() {
                    return Err("main index does not point at the boxed succedent".into());
                }
            }
            if let Spec::Cut(side, f) = &spec {
                let placed = f.vars().is_subset(&p.seq.side_vars(*side));
                if !cut_allowed(sys.cut_policy(), f, placed) {
                    return Err(format!("cut on `{f}` violates the cut policy of {sys}"));
                }
            }
            Ok(())
        }
    }
}

/// Validate every node; nodes are numbered in preorder.
pub fn check_proof(p: &Proof, sys: System) -> Result<(), ProofViolation> {
    for (node, q) in p.preorder().into_iter().enumerate() {
        check_node(q, sys).map_err(|reason| ProofViolation { node, reason })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{Part, Side};
    use super::*;
    use crate::formulas::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn nonatomic_cut_rejected_in_lkat() {
        let l = Proof::ax(f("p & q"), Part::G1, Part::D2);
        let r = Proof::ax(f("p & q"), Part::G2, Part::D2).weaken(Part::G1, f("p & q"));
        let c = Proof::cut(l.weaken(Part::D2, f("p & q")), r, Side::Two, f("p & q")).unwrap();
        assert!(check_proof(&c, System::LK).is_ok());
        let e = check_proof(&c, System::LKat).unwrap_err();
        assert_eq!(e.node, 0);
        assert!(check_proof(&c, System::LKmono).is_ok());
    }

    #[test]
    fn tampered_conclusion_is_caught() {
        let a = Proof::ax(f("p"), Part::G1, Part::D2);
        let mut p = Proof::unary(Rule::LAnd1, Part::G1, f("p & q"), a).unwrap();
        assert!(check_proof(&p, System::LKminus).is_ok());
        p.seq.get_mut(Part::D2).push(f("r"));
        assert!(check_proof(&p, System::LKminus).is_err());
    }

    #[test]
    fn k_with_unboxed_context_rejected() {
        let a = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::G1, f("q"));
        let mut k = Proof::modal(Rule::K, a).unwrap();
        assert!(check_proof(&k, System::K).is_ok());
        assert!(check_proof(&k, System::LK).is_err());
        k.seq.get_mut(Part::G1)[0] = f("q");
        assert!(check_proof(&k, System::K).is_err());
    }

    #[test]
    fn system_names() {
        for s in System::ALL {
            assert_eq!(System::from_name(s.name()), Some(s));
        }
    }
}
