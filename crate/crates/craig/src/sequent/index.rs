use std::collections::BTreeSet;

use super::check::ProofViolation;
use super::{aux_of, Part, Proof, Rule, Side, Spec};
use crate::formulas::Formula;

/// An occurrence: preorder node id and flat position in that node's sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occ {
    pub node: usize,
    pub pos: usize,
}

/// Ancestry tables of a checked proof.
pub struct ProofIndex<'a> {
    pub nodes: Vec<&'a Proof>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Conclusion position in the parent of each occurrence; `None` for cut
    /// formulas and for the end-sequent.
    down: Vec<Vec<Option<usize>>>,
    up: Vec<Vec<Vec<Occ>>>,
    weak: Vec<Vec<bool>>,
    cut_anc: Vec<Vec<bool>>,
}

/// Match premise occurrences of `items` (component, formula) against the
/// conclusion, i-th equal copy to i-th equal copy.
fn stable_match(
    prem: &[(Part, &Formula, usize)],
    concl: &[(Part, &Formula, usize)],
) -> Result<Vec<(usize, usize)>, String> {
    let mut used = vec![false; concl.len()];
    let mut out = Vec::new();
    for (p, f, i) in prem {
        let j = concl
            .iter()
            .enumerate()
            .position(|(k, (q, g, _))| !used[k] && q == p && g == f)
            .ok_or_else(|| format!("context formula `{f}` has no copy in the conclusion"))?;
        used[j] = true;
        out.push((*i, concl[j].2));
    }
    Ok(out)
}

fn flat(seq: &super::SplitSequent) -> Vec<(Part, &Formula, usize)> {
    seq.occurrences().enumerate().map(|(i, (p, f))| (p, f, i)).collect()
}

/// Premise occurrence → conclusion occurrence, for premise `k` of `node`.
pub(crate) fn links(node: &Proof, k: usize) -> Result<Vec<Option<usize>>, String> {
    let prem = &node.premises[k].seq;
    let pf = flat(prem);
    let cf = flat(&node.seq);
    let mut out = vec![None; pf.len()];
    match node.rule {
        Rule::K | Rule::D => {
            let main = node.main;
            for (i, (p, f, _)) in pf.iter().enumerate() {
                if !p.is_ante() {
                    out[i] = main;
                    continue;
                }
                let boxed = Formula::boxed((*f).clone());
                let rank = pf[..i].iter().filter(|(q, g, _)| q == p && **g == **f).count();
                let j = cf
                    .iter()
                    .filter(|(q, g, _)| q == p && **g == boxed)
                    .nth(rank)
                    .ok_or("boxed copy missing")?;
                out[i] = Some(j.2);
            }
        }
        Rule::Four => {
            let mut used = vec![false; pf.len()];
            let mut concl: Vec<&(Part, &Formula, usize)> = cf.iter().filter(|x| x.0.is_ante()).collect();
            concl.sort_by_key(|x| std::cmp::Reverse(x.1.size()));
            for (p, g, j) in concl {
                let Formula::Box(inner) = g else { return Err("(4) conclusion not boxed".into()) };
                for want in [*g, &**inner] {
                    let i = (0..pf.len())
                        .find(|&i| !used[i] && pf[i].0 == *p && pf[i].1 == want)
                        .ok_or("(4) premise does not match")?;
                    used[i] = true;
                    out[i] = Some(*j);
                }
            }
            for (i, (p, _, _)) in pf.iter().enumerate() {
                if !p.is_ante() {
                    out[i] = node.main;
                }
            }
        }
        _ => {
            let spec = node.spec().ok_or("rule instance has no specification")?;
            let (aux, main) = match &spec {
                Spec::Main(part, f) => (aux_of(node.rule, *part, f).map_err(|e| e.to_string())?, node.main),
                Spec::Cut(side, f) => {
                    (aux_of(Rule::Cut, Part::ante(*side), f).map_err(|e| e.to_string())?, None)
                }
                Spec::Modal => unreachable!(),
            };
            let mut is_aux = vec![false; pf.len()];
            for (p, f) in &aux[k] {
                let i = (0..pf.len())
                    .rev()
                    .find(|&i| !is_aux[i] && pf[i].0 == *p && pf[i].1 == f)
                    .ok_or("auxiliary formula missing")?;
                is_aux[i] = true;
            }
            let prem_ctx: Vec<_> = pf.iter().enumerate().filter(|(i, _)| !is_aux[*i]).map(|(_, x)| *x).collect();
            let concl_ctx: Vec<_> = cf.iter().filter(|x| Some(x.2) != main).copied().collect();
            for (i, j) in stable_match(&prem_ctx, &concl_ctx)? {
                out[i] = Some(j);
            }
            for (i, a) in is_aux.iter().enumerate() {
                if *a {
                    out[i] = main;
                }
            }
        }
    }
    Ok(out)
}

impl<'a> ProofIndex<'a> {
    pub fn new(p: &'a Proof) -> Result<ProofIndex<'a>, ProofViolation> {
        let nodes = p.preorder();
        let n = nodes.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        // Preorder: the first child of node i is i + 1, each next child
        // follows the previous child's subtree.
        for i in 0..n {
            let mut c = i + 1;
            for q in &nodes[i].premises {
                children[i].push(c);
                parent[c] = Some(i);
                c += q.node_count();
            }
        }
        let mut down: Vec<Vec<Option<usize>>> = nodes.iter().map(|q| vec![None; q.seq.len()]).collect();
        let mut up: Vec<Vec<Vec<Occ>>> = nodes.iter().map(|q| vec![Vec::new(); q.seq.len()]).collect();
        for i in 0..n {
            for (k, &c) in children[i].iter().enumerate() {
                let l = links(nodes[i], k).map_err(|reason| ProofViolation { node: i, reason })?;
                for (pos, target) in l.into_iter().enumerate() {
                    down[c][pos] = target;
                    if let Some(t) = target {
                        up[i][t].push(Occ { node: c, pos });
                    }
                }
            }
        }
        let mut weak: Vec<Vec<bool>> = nodes.iter().map(|q| vec![false; q.seq.len()]).collect();
        for i in (0..n).rev() {
            for pos in 0..nodes[i].seq.len() {
                let intro = nodes[i].rule.is_axiom()
                    || (nodes[i].main == Some(pos) && !nodes[i].rule.is_structural());
                weak[i][pos] = !intro && up[i][pos].iter().all(|o| weak[o.node][o.pos]);
            }
        }
        let mut cut_anc: Vec<Vec<bool>> = nodes.iter().map(|q| vec![false; q.seq.len()]).collect();
        for i in 1..n {
            let par = parent[i].unwrap();
            for pos in 0..nodes[i].seq.len() {
                cut_anc[i][pos] = match down[i][pos] {
                    None => true,
                    Some(t) => cut_anc[par][t],
                };
            }
        }
        Ok(ProofIndex { nodes, parent, children, down, up, weak, cut_anc })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn formula(&self, o: Occ) -> &Formula {
        self.nodes[o.node].seq.at(o.pos).expect("occurrence in range")
    }

    pub fn part(&self, o: Occ) -> Part {
        self.nodes[o.node].seq.locate(o.pos).expect("occurrence in range").0
    }

    pub fn direct_ancestors(&self, o: Occ) -> &[Occ] {
        &self.up[o.node][o.pos]
    }

    /// Occurrence in the parent this one descends to.
    pub fn descendant(&self, o: Occ) -> Option<Occ> {
        Some(Occ { node: self.parent[o.node]?, pos: self.down[o.node][o.pos]? })
    }

    /// All ancestors including `o` itself.
    pub fn ancestors(&self, o: Occ) -> Vec<Occ> {
        let mut out = vec![o];
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            out.extend_from_slice(&self.up[a.node][a.pos]);
            i += 1;
        }
        out
    }

    pub fn is_weak(&self, o: Occ) -> bool {
        self.weak[o.node][o.pos]
    }

    /// Whether `o` descends into a cut formula.
    pub fn is_cut_ancestor(&self, o: Occ) -> bool {
        self.cut_anc[o.node][o.pos]
    }

    pub fn relevant(&self, o: Occ) -> BTreeSet<Occ> {
        self.ancestors(o)
            .into_iter()
            .filter(|a| !self.is_weak(*a) && !self.nodes[a.node].rule.is_weakening())
            .collect()
    }

    pub fn weight(&self, o: Occ) -> usize {
        self.relevant(o).len()
    }

    /// Left and right cut-formula occurrences of a cut node.
    pub fn cut_occurrences(&self, node: usize) -> Option<(Occ, Occ)> {
        if self.nodes[node].rule != Rule::Cut {
            return None;
        }
        let find = |c: usize| {
            (0..self.nodes[c].seq.len()).find(|&pos| self.down[c][pos].is_none()).map(|pos| Occ { node: c, pos })
        };
        Some((find(self.children[node][0])?, find(self.children[node][1])?))
    }

    pub fn cut_weight(&self, node: usize) -> Option<usize> {
        let (l, r) = self.cut_occurrences(node)?;
        Some(self.weight(l) + self.weight(r))
    }

    /// Occurrences of the end-sequent.
    pub fn root_occurrences(&self) -> impl Iterator<Item = Occ> + '_ {
        (0..self.nodes[0].seq.len()).map(|pos| Occ { node: 0, pos })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceMetrics {
    pub weak: bool,
    pub weight: usize,
    pub relevant: BTreeSet<Occ>,
}

pub fn occurrence_metrics(p: &Proof, occ: Occ) -> Result<OccurrenceMetrics, ProofViolation> {
    let ix = ProofIndex::new(p)?;
    if occ.node >= ix.len() || occ.pos >= ix.nodes[occ.node].seq.len() {
        return Err(ProofViolation { node: occ.node, reason: "no such occurrence".into() });
    }
    let relevant = ix.relevant(occ);
    Ok(OccurrenceMetrics { weak: ix.is_weak(occ), weight: relevant.len(), relevant })
}

/// Sides of the antecedent and succedent occurrence of an axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomType {
    LL,
    LR,
    RL,
    RR,
    /// `⊥ ⇒` with ⊥ on side 1.
    BotL,
    /// `⊥ ⇒` with ⊥ on side 2.
    BotR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomInfo {
    pub ty: AxiomType,
    /// Both occurrences descend into cut formulas.
    pub omega: bool,
}

fn axiom_info(ix: &ProofIndex, node: usize) -> Option<AxiomInfo> {
    let p = ix.nodes[node];
    let parts: Vec<Part> = p.seq.occurrences().map(|x| x.0).collect();
    let ty = match (p.rule, parts.as_slice()) {
        (Rule::Ax, [a, s]) => match (a.side(), s.side()) {
            (Side::One, Side::One) => AxiomType::LL,
            (Side::One, Side::Two) => AxiomType::LR,
            (Side::Two, Side::One) => AxiomType::RL,
            (Side::Two, Side::Two) => AxiomType::RR,
        },
        (Rule::Bot, [a]) if a.side() == Side::One => AxiomType::BotL,
        (Rule::Bot, [_]) => AxiomType::BotR,
        _ => return None,
    };
    let omega = p.rule == Rule::Ax
        && (0..2).all(|pos| ix.is_cut_ancestor(Occ { node, pos }));
    Some(AxiomInfo { ty, omega })
}

pub fn axiom_type(p: &Proof, node: usize) -> Result<AxiomInfo, ProofViolation> {
    let ix = ProofIndex::new(p)?;
    if node >= ix.len() {
        return Err(ProofViolation { node, reason: "no such node".into() });
    }
    axiom_info(&ix, node).ok_or(ProofViolation { node, reason: "not an axiom".into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutInfo {
    pub formula: Formula,
    pub side: Side,
    pub type_r: bool,
    pub atomic: bool,
    pub literal: bool,
    /// Variables on one side of the conclusion.
    pub monochromatic: bool,
    /// Variables on the side the cut occurrences sit on.
    pub placed: bool,
    pub analytic: bool,
    pub degree: usize,
    pub weight: usize,
}

pub(crate) fn cut_info(ix: &ProofIndex, node: usize) -> Option<CutInfo> {
    let p = ix.nodes[node];
    let (side, formula) = p.cut_formula()?;
    let v = formula.vars();
    let v1 = p.seq.side_vars(Side::One);
    let v2 = p.seq.side_vars(Side::Two);
    let placed = v.is_subset(if side == Side::One { &v1 } else { &v2 });
    let analytic = p.seq.occurrences().any(|(_, f)| f.subformulas().contains(&formula));
    Some(CutInfo {
        side,
        type_r: side == Side::Two,
        atomic: formula.is_atomic(),
        literal: formula.is_literal(),
        monochromatic: v.is_subset(&v1) || v.is_subset(&v2),
        placed,
        analytic,
        degree: formula.degree(),
        weight: ix.cut_weight(node)?,
        formula,
    })
}

pub fn classify_cut(p: &Proof, node: usize) -> Result<CutInfo, ProofViolation> {
    let ix = ProofIndex::new(p)?;
    if node >= ix.len() {
        return Err(ProofViolation { node, reason: "no such node".into() });
    }
    cut_info(&ix, node).ok_or(ProofViolation { node, reason: "not a cut".into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tameness {
    pub tame: bool,
    pub omega_axioms: Vec<usize>,
    pub bad_cuts: Vec<usize>,
}

/// Axiom nodes holding an ancestor of `o`.
fn active_axioms(ix: &ProofIndex, o: Occ) -> BTreeSet<usize> {
    ix.ancestors(o).into_iter().filter(|a| ix.nodes[a.node].rule.is_axiom()).map(|a| a.node).collect()
}

pub(crate) fn tameness(ix: &ProofIndex) -> Tameness {
    let mut t = Tameness::default();
    for node in 0..ix.len() {
        match ix.nodes[node].rule {
            Rule::Ax | Rule::Bot => {
                if axiom_info(ix, node).is_some_and(|a| a.omega) {
                    t.omega_axioms.push(node);
                }
            }
            Rule::Cut => {
                let (l, r) = ix.cut_occurrences(node).expect("cut occurrences");
                let ok = [l, r].into_iter().any(|o| {
                    active_axioms(ix, o).into_iter().all(|a| {
                        matches!(axiom_info(ix, a).map(|x| x.ty), Some(AxiomType::RR | AxiomType::BotR))
                    })
                });
                if !ok {
                    t.bad_cuts.push(node);
                }
            }
            _ => {}
        }
    }
    t.tame = t.omega_axioms.is_empty() && t.bad_cuts.is_empty();
    t
}

pub fn is_tame(p: &Proof) -> Result<Tameness, ProofViolation> {
    Ok(tameness(&ProofIndex::new(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn weakening_main_is_weak() {
        let p = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, f("q"));
        let m = occurrence_metrics(&p, Occ { node: 0, pos: 1 }).unwrap();
        assert!(m.weak);
        assert_eq!(m.weight, 0);
        let m = occurrence_metrics(&p, Occ { node: 0, pos: 2 }).unwrap();
        assert!(!m.weak);
        assert_eq!(m.weight, 1);
    }

    #[test]
    fn bare_axiom_weight_is_one() {
        let p = Proof::ax(f("p"), Part::G1, Part::D2);
        assert_eq!(occurrence_metrics(&p, Occ { node: 0, pos: 0 }).unwrap().weight, 1);
    }

    #[test]
    fn disjunction_main_weight() {
        // p ∨ q ; ⇒ ; p, q  from two weakened axioms.
        let l = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, f("q"));
        let r = Proof::ax(f("q"), Part::G1, Part::D2).weaken(Part::D2, f("p"));
        let p = Proof::binary(Rule::LOr, Part::G1, f("p | q"), l, r).unwrap();
        let pos = p.main.unwrap();
        let m = occurrence_metrics(&p, Occ { node: 0, pos }).unwrap();
        assert!(m.weight >= 3);
        assert_eq!(m.weight, 3);
    }

    #[test]
    fn axiom_types() {
        let p = Proof::ax(f("p"), Part::G1, Part::D1);
        assert_eq!(axiom_type(&p, 0).unwrap().ty, AxiomType::LL);
        let p = Proof::ax(f("p"), Part::G2, Part::D2);
        assert_eq!(axiom_type(&p, 0).unwrap().ty, AxiomType::RR);
        assert!(axiom_type(&p.clone().weaken(Part::G1, f("q")), 0).is_err());
    }

    #[test]
    fn omega_axiom_through_two_cuts() {
        // p ; ⇒ ; p by cutting p twice through the axiom ; p ⇒ ; p.
        let mid = Proof::ax(f("p"), Part::G2, Part::D2).weaken(Part::G1, f("p"));
        let left = Proof::ax(f("p"), Part::G1, Part::D2).weaken(Part::D2, f("p"));
        let c1 = Proof::cut(left, mid, Side::Two, f("p")).unwrap();
        assert_eq!(c1.seq.to_string(), "p ; => ; p");
        let right = Proof::ax(f("p"), Part::G2, Part::D2).weaken(Part::G1, f("p"));
        let c2 = Proof::cut(c1.weaken(Part::D2, f("p")), right, Side::Two, f("p")).unwrap();
        let ix = ProofIndex::new(&c2).unwrap();
        let omegas: Vec<usize> =
            (0..ix.len()).filter(|&n| axiom_info(&ix, n).is_some_and(|a| a.omega)).collect();
        assert_eq!(omegas.len(), 1);
        assert!(!tameness(&ix).tame);
    }

    #[test]
    fn cut_free_proofs_are_tame() {
        let p = Proof::ax(f("p"), Part::G1, Part::D2);
        assert!(is_tame(&p).unwrap().tame);
    }
}
