use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::formulas::Formula;
use crate::maehara::axiom;
use crate::sequent::{Part, Rule, Side, SplitSequent, System};

/// Interpolants of all cut-free proofs of a sequent up to a depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct interpolants after unit and idempotence simplification.
    pub interpolants: BTreeSet<Formula>,
    /// Number of proofs, saturating.
    pub proofs: u128,
}

fn or(x: &Formula, y: &Formula) -> Formula {
    match (x, y) {
        (Formula::Bottom, _) => y.clone(),
        (_, Formula::Bottom) => x.clone(),
        _ if x.is_top() || y.is_top() => Formula::top(),
        _ if x == y => x.clone(),
        _ => Formula::or(x.clone().min(y.clone()), x.clone().max(y.clone())),
    }
}

fn and(x: &Formula, y: &Formula) -> Formula {
    match (x, y) {
        (Formula::Bottom, _) | (_, Formula::Bottom) => Formula::Bottom,
        _ if x.is_top() => y.clone(),
        _ if y.is_top() => x.clone(),
        _ if x == y => x.clone(),
        _ => Formula::and(x.clone().min(y.clone()), x.clone().max(y.clone())),
    }
}

type Node = Rc<(BTreeSet<Formula>, u128)>;

struct Enumerator {
    sys: System,
    memo: HashMap<(SplitSequent, usize), Node>,
}

fn norm(mut s: SplitSequent) -> SplitSequent {
    for v in s.parts.iter_mut() {
        v.sort();
    }
    s
}

fn without(s: &SplitSequent, part: Part, f: &Formula) -> SplitSequent {
    s.without_last(part, f).expect("occurrence")
}

fn with(mut s: SplitSequent, part: Part, f: &Formula) -> SplitSequent {
    s.get_mut(part).push(f.clone());
    s
}

impl Enumerator {
    fn add(
        &mut self,
        prem: SplitSequent,
        d: usize,
        map: &dyn Fn(&Formula) -> Formula,
        out: &mut BTreeSet<Formula>,
        count: &mut u128,
    ) {
        let n = self.run(prem, d - 1);
        out.extend(n.0.iter().map(map));
        *count = count.saturating_add(n.1);
    }

    fn run(&mut self, s: SplitSequent, d: usize) -> Node {
        let s = norm(s);
        if let Some(n) = self.memo.get(&(s.clone(), d)) {
            return n.clone();
        }
        let mut out = BTreeSet::new();
        let mut count: u128 = 0;
        let occ: Vec<(Part, Formula)> = s.occurrences().map(|(p, f)| (p, f.clone())).collect();
        if occ.len() == 2 && occ[0].1 == occ[1].1 && occ[0].0.is_ante() && !occ[1].0.is_ante() {
            out.insert(axiom(occ[0].0, occ[1].0, &occ[0].1));
            count += 1;
        }
        if occ.len() == 1 && occ[0].1 == Formula::Bottom && occ[0].0.is_ante() {
            out.insert(match occ[0].0.side() {
                Side::One => Formula::Bottom,
                Side::Two => Formula::top(),
            });
            count += 1;
        }
        if d > 0 {
            let distinct: BTreeSet<(Part, Formula)> = occ.iter().cloned().collect();
            let id = |c: &Formula| c.clone();
            for (part, f) in &distinct {
                self.add(without(&s, *part, f), d, &id, &mut out, &mut count);
                self.add(with(s.clone(), *part, f), d, &id, &mut out, &mut count);
                let rest = without(&s, *part, f);
                match (part.is_ante(), f) {
                    (_, Formula::Neg(a)) => self.add(with(rest, part.flip(), a), d, &id, &mut out, &mut count),
                    (true, Formula::And(a, b)) | (false, Formula::Or(a, b)) => {
                        self.add(with(rest.clone(), *part, a), d, &id, &mut out, &mut count);
                        self.add(with(rest, *part, b), d, &id, &mut out, &mut count);
                    }
                    (false, Formula::And(a, b)) | (true, Formula::Or(a, b)) => {
                        let l = self.run(with(rest.clone(), *part, a), d - 1);
                        let r = self.run(with(rest, *part, b), d - 1);
                        for x in &l.0 {
                            for y in &r.0 {
                                out.insert(match part.side() {
                                    Side::One => or(x, y),
                                    Side::Two => and(x, y),
                                });
                            }
                        }
                        count = count.saturating_add(l.1.saturating_mul(r.1));
                    }
                    (true, Formula::Box(a)) if self.sys.allows(Rule::T) => self.add(with(rest, *part, a), d, &id, &mut out, &mut count),
                    _ => {}
                }
            }
            self.jumps(&s, d, &mut out, &mut count);
        }
        let n = Rc::new((out, count));
        self.memo.insert((s, d), n.clone());
        n
    }

    fn jumps(&mut self, s: &SplitSequent, d: usize, out: &mut BTreeSet<Formula>, count: &mut u128) {
        let mut base = SplitSequent::default();
        for a in [Part::G1, Part::G2] {
            for f in s.get(a) {
                let Formula::Box(x) = f else { return };
                base.get_mut(a).push((**x).clone());
            }
        }
        let succ: Vec<(Part, &Formula)> = [Part::D1, Part::D2]
            .into_iter()
            .flat_map(|p| s.get(p).iter().map(move |f| (p, f)))
            .collect();
        match succ.as_slice() {
            [] if self.sys.allows(Rule::D) => self.add(base, d, &|c| Formula::boxed(c.clone()), out, count),
            [(p, Formula::Box(b))] => {
                let modal = |side: Side| {
                    move |c: &Formula| match side {
                        Side::Two => Formula::boxed(c.clone()),
                        Side::One => Formula::neg(Formula::boxed(Formula::neg(c.clone()))),
                    }
                };
                if self.sys.allows(Rule::K) {
                    self.add(with(base.clone(), *p, b), d, &modal(p.side()), out, count);
                }
                if self.sys.allows(Rule::Four) {
                    let mut prem = base.clone();
                    for a in [Part::G1, Part::G2] {
                        let boxed: Vec<Formula> = base.get(a).iter().map(|x| Formula::boxed(x.clone())).collect();
                        prem.get_mut(a).extend(boxed);
                    }
                    self.add(with(prem, *p, b), d, &modal(p.side()), out, count);
                }
            }
            _ => {}
        }
    }
}

/// Interpolants of every cut-free proof of `s` in `sys` of depth at most
/// `depth`, with interpolants simplified by units, idempotence and the
/// order of `∧`/`∨` arguments.
pub fn enumerate_cutfree(s: &SplitSequent, sys: System, depth: usize) -> Enumeration {
    let mut e = Enumerator { sys: sys.cut_free(), memo: HashMap::new() };
    let n = e.run(s.clone(), depth);
    Enumeration { interpolants: n.0.clone(), proofs: n.1 }
}
