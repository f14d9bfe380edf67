//! Resolution refutations, a DPLL refuter that logs its implicit tree
//! resolution, and interpolant extraction with `sel`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formulas::{
    clause_to_string, parse_clause_set, sel, Assignment, Clause, ClauseSet, Formula, Literal,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResNode {
    Input { clause: Clause, side: Side },
    Resolve { left: usize, right: usize, pivot: String },
    Weaken { premise: usize, added: Clause },
}

/// Nodes in topological order; the last node is the root.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResolutionProof {
    pub nodes: Vec<ResNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("node {node}: {reason}")]
pub struct Violation {
    pub node: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResError {
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),
    #[error("literal `{0}` cannot be resolved upon")]
    UnsupportedLiteral(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

fn v(node: usize, reason: impl Into<String>) -> Violation {
    Violation { node, reason: reason.into() }
}

impl ResolutionProof {
    pub fn root(&self) -> Option<usize> {
        self.nodes.len().checked_sub(1)
    }

    /// Clause at every node, checking each rule instance.
    pub fn derive(&self) -> Result<Vec<Clause>, Violation> {
        let mut out: Vec<Clause> = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let c = match n {
                ResNode::Input { clause, .. } => clause.clone(),
                ResNode::Resolve { left, right, pivot } => {
                    if *left >= i || *right >= i {
                        return Err(v(i, "premise does not precede the node"));
                    }
                    let p = Literal::atom(pivot);
                    let np = p.dual();
                    if !out[*left].contains(&p) {
                        return Err(v(i, format!("left premise lacks `{p}`")));
                    }
                    if !out[*right].contains(&np) {
                        return Err(v(i, format!("right premise lacks `{np}`")));
                    }
                    out[*left]
                        .iter()
                        .filter(|l| **l != p)
                        .chain(out[*right].iter().filter(|l| **l != np))
                        .cloned()
                        .collect()
                }
                ResNode::Weaken { premise, added } => {
                    if *premise >= i {
                        return Err(v(i, "premise does not precede the node"));
                    }
                    out[*premise].union(added).cloned().collect()
                }
            };
            out.push(c);
        }
        Ok(out)
    }

    /// Clauses of every node if the proof is a refutation.
    pub fn check_refutation(&self) -> Result<Vec<Clause>, Violation> {
        let clauses = self.derive()?;
        match clauses.last() {
            None => Err(v(0, "empty proof")),
            Some(c) if !c.is_empty() => {
                Err(v(clauses.len() - 1, format!("root is {{{}}}, not empty", clause_to_string(c))))
            }
            Some(_) => Ok(clauses),
        }
    }

    pub fn inputs(&self) -> impl Iterator<Item = (&Clause, Side)> {
        self.nodes.iter().filter_map(|n| match n {
            ResNode::Input { clause, side } => Some((clause, *side)),
            _ => None,
        })
    }

    pub fn uses_weakening(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, ResNode::Weaken { .. }))
    }

    pub fn parse(text: &str) -> Result<ResolutionProof, ResError> {
        let mut nodes = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| ResError::Syntax { line: ln + 1, msg: msg.to_string() };
            let (id, rest) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let id: usize = id.trim().parse().map_err(|_| bad("bad node id"))?;
            if id != nodes.len() {
                return Err(bad("node ids must be consecutive from 0"));
            }
            let rest = rest.trim();
            let braces = |s: &str| -> Result<Clause, ResError> {
                let inner = s
                    .trim()
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| bad("expected `{...}`"))?;
                if inner.trim().is_empty() {
                    return Ok(Clause::new());
                }
                let cs = parse_clause_set(inner).map_err(|e| bad(&e.msg))?;
                Ok(cs.into_iter().next().unwrap_or_default())
            };
            let mut words = rest.splitn(2, ' ');
            let kind = words.next().unwrap_or("");
            let args = words.next().unwrap_or("").trim();
            let node = match kind {
                "INPUT" => {
                    let (side, cl) = args.split_once(' ').ok_or_else(|| bad("expected side"))?;
                    let side = match side {
                        "A" => Side::A,
                        "B" => Side::B,
                        _ => return Err(bad("side must be A or B")),
                    };
                    ResNode::Input { clause: braces(cl)?, side }
                }
                "RES" => {
                    let w: Vec<&str> = args.split_whitespace().collect();
                    if w.len() != 3 {
                        return Err(bad("RES takes two premises and a pivot"));
                    }
                    let left = w[0].parse().map_err(|_| bad("bad premise id"))?;
                    let right = w[1].parse().map_err(|_| bad("bad premise id"))?;
                    ResNode::Resolve { left, right, pivot: w[2].to_string() }
                }
                "WEAK" => {
                    let (p, cl) = args.split_once(' ').ok_or_else(|| bad("expected clause"))?;
                    let premise = p.parse().map_err(|_| bad("bad premise id"))?;
                    ResNode::Weaken { premise, added: braces(cl)? }
                }
                _ => return Err(bad("unknown node kind")),
            };
            nodes.push(node);
        }
        Ok(ResolutionProof { nodes })
    }
}

impl fmt::Display for ResolutionProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.nodes.iter().enumerate() {
            match n {
                ResNode::Input { clause, side } => {
                    writeln!(f, "{i}: INPUT {side:?} {{{}}}", clause_to_string(clause))?
                }
                ResNode::Resolve { left, right, pivot } => {
                    writeln!(f, "{i}: RES {left} {right} {pivot}")?
                }
                ResNode::Weaken { premise, added } => {
                    writeln!(f, "{i}: WEAK {premise} {{{}}}", clause_to_string(added))?
                }
            }
        }
        Ok(())
    }
}

/// Shared, A-local and B-local atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Partition {
    pub shared: BTreeSet<String>,
    pub a_local: BTreeSet<String>,
    pub b_local: BTreeSet<String>,
}

fn clause_atoms<'a>(cs: impl Iterator<Item = &'a Clause>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for c in cs {
        for l in c {
            l.body().collect_vars(&mut out);
        }
    }
    out
}

impl Partition {
    pub fn from_clause_sets(a: &ClauseSet, b: &ClauseSet) -> Partition {
        Partition::split(clause_atoms(a.iter()), clause_atoms(b.iter()))
    }

    pub fn from_proof(rp: &ResolutionProof) -> Partition {
        let a = clause_atoms(rp.inputs().filter(|x| x.1 == Side::A).map(|x| x.0));
        let b = clause_atoms(rp.inputs().filter(|x| x.1 == Side::B).map(|x| x.0));
        Partition::split(a, b)
    }

    fn split(a: BTreeSet<String>, b: BTreeSet<String>) -> Partition {
        Partition {
            shared: a.intersection(&b).cloned().collect(),
            a_local: a.difference(&b).cloned().collect(),
            b_local: b.difference(&a).cloned().collect(),
        }
    }
}

/// Interpolant of a refutation: `⋀A ⊨ C` and `C ⊨ ¬⋀B`, over shared atoms.
pub fn interpolant_from_refutation(
    rp: &ResolutionProof,
    part: &Partition,
) -> Result<Formula, ResError> {
    rp.check_refutation()?;
    let disjoint = part.shared.is_disjoint(&part.a_local)
        && part.shared.is_disjoint(&part.b_local)
        && part.a_local.is_disjoint(&part.b_local);
    if !disjoint {
        return Err(ResError::PartitionMismatch("atom sets overlap".into()));
    }
    let mut val: Vec<Formula> = Vec::with_capacity(rp.nodes.len());
    for (i, n) in rp.nodes.iter().enumerate() {
        let f = match n {
            ResNode::Input { clause, side } => {
                let (local, f) = match side {
                    Side::A => (&part.a_local, Formula::Bottom),
                    Side::B => (&part.b_local, Formula::top()),
                };
                if let Some(x) =
                    clause_atoms(std::iter::once(clause)).into_iter().find(|x| !part.shared.contains(x) && !local.contains(x))
                {
                    return Err(ResError::PartitionMismatch(format!(
                        "node {i}: atom `{x}` not available on side {side:?}"
                    )));
                }
                f
            }
            ResNode::Resolve { left, right, pivot } => {
                let (x, y) = (val[*left].clone(), val[*right].clone());
                if part.shared.contains(pivot) {
                    sel(Formula::atom(pivot), x, y)
                } else if part.a_local.contains(pivot) {
                    Formula::or(x, y)
                } else if part.b_local.contains(pivot) {
                    Formula::and(x, y)
                } else {
                    return Err(ResError::PartitionMismatch(format!(
                        "node {i}: pivot `{pivot}` is in no partition class"
                    )));
                }
            }
            ResNode::Weaken { premise, .. } => val[*premise].clone(),
        };
        val.push(f);
    }
    Ok(val.pop().expect("checked refutations are non-empty"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefuteOutcome {
    Refuted(ResolutionProof),
    Satisfiable(Assignment),
}

type Lit = (usize, bool);

#[derive(Clone, Debug)]
pub(crate) enum CoreStep {
    Input(usize),
    Res { left: usize, right: usize, var: usize },
}

/// Tree resolution read off a DPLL search without learning.
pub(crate) struct Dpll<'a> {
    clauses: &'a [Vec<Lit>],
    order: Vec<usize>,
    assign: Vec<Option<bool>>,
    pub(crate) steps: Vec<CoreStep>,
    derived: Vec<BTreeSet<Lit>>,
    input_node: Vec<Option<usize>>,
}

impl<'a> Dpll<'a> {
    /// `order` lists variables by branching preference.
    pub(crate) fn new(clauses: &'a [Vec<Lit>], nvars: usize, order: Vec<usize>) -> Self {
        Dpll {
            clauses,
            order,
            assign: vec![None; nvars],
            steps: Vec::new(),
            derived: Vec::new(),
            input_node: vec![None; clauses.len()],
        }
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.assign[l.0].map(|b| b == l.1)
    }

    fn input(&mut self, c: usize) -> usize {
        if let Some(n) = self.input_node[c] {
            return n;
        }
        self.steps.push(CoreStep::Input(c));
        self.derived.push(self.clauses[c].iter().copied().collect());
        self.input_node[c] = Some(self.steps.len() - 1);
        self.steps.len() - 1
    }

    fn resolve(&mut self, left: usize, right: usize, var: usize) -> usize {
        let c: BTreeSet<Lit> = self.derived[left]
            .iter()
            .filter(|l| **l != (var, true))
            .chain(self.derived[right].iter().filter(|l| **l != (var, false)))
            .copied()
            .collect();
        self.steps.push(CoreStep::Res { left, right, var });
        self.derived.push(c);
        self.steps.len() - 1
    }

    /// Branch on `var := value`, returning the refuting node or `None` on a model.
    fn branch(&mut self, var: usize, value: bool) -> Option<usize> {
        self.assign[var] = Some(value);
        let r = self.search();
        if r.is_some() {
            self.assign[var] = None;
        }
        r
    }

    /// Node whose clause is falsified by the current assignment, or `None`
    /// when a model is found.
    pub(crate) fn search(&mut self) -> Option<usize> {
        let mut unit = None;
        let mut all_sat = true;
        for (ci, c) in self.clauses.iter().enumerate() {
            let mut open = None;
            let mut n_open = 0;
            let mut sat = false;
            for &l in c {
                match self.lit_value(l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        n_open += 1;
                        open = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            all_sat = false;
            if n_open == 0 {
                return Some(self.input(ci));
            }
            if n_open == 1 && unit.is_none() {
                unit = Some((ci, open.unwrap()));
            }
        }
        if all_sat {
            return None;
        }
        if let Some((ci, (var, value))) = unit {
            let r = self.branch(var, value)?;
            if !self.derived[r].contains(&(var, !value)) {
                return Some(r);
            }
            let u = self.input(ci);
            return Some(if value { self.resolve(u, r, var) } else { self.resolve(r, u, var) });
        }
        let var = *self.order.iter().find(|&&x| self.assign[x].is_none())?;
        let r0 = self.branch(var, false)?;
        if !self.derived[r0].contains(&(var, true)) {
            return Some(r0);
        }
        let r1 = self.branch(var, true)?;
        if !self.derived[r1].contains(&(var, false)) {
            return Some(r1);
        }
        Some(self.resolve(r0, r1, var))
    }

    pub(crate) fn model(&self) -> Vec<bool> {
        self.assign.iter().map(|x| x.unwrap_or(false)).collect()
    }

    /// Steps reachable from `root`, inputs first, renumbered.
    pub(crate) fn compact(&self, root: usize) -> Vec<CoreStep> {
        let mut live = vec![false; self.steps.len()];
        live[root] = true;
        for i in (0..=root).rev() {
            if live[i] {
                if let CoreStep::Res { left, right, .. } = self.steps[i] {
                    live[left] = true;
                    live[right] = true;
                }
            }
        }
        let mut order: Vec<usize> =
            (0..self.steps.len()).filter(|&i| live[i] && matches!(self.steps[i], CoreStep::Input(_))).collect();
        order.sort_by_key(|&i| match self.steps[i] {
            CoreStep::Input(c) => c,
            _ => unreachable!(),
        });
        order.extend((0..self.steps.len()).filter(|&i| live[i] && matches!(self.steps[i], CoreStep::Res { .. })));
        let mut new_id = vec![usize::MAX; self.steps.len()];
        for (k, &i) in order.iter().enumerate() {
            new_id[i] = k;
        }
        order
            .iter()
            .map(|&i| match self.steps[i] {
                CoreStep::Input(c) => CoreStep::Input(c),
                CoreStep::Res { left, right, var } => {
                    CoreStep::Res { left: new_id[left], right: new_id[right], var }
                }
            })
            .collect()
    }
}

fn refute_labelled(inputs: &[(Clause, Side)], shared: &BTreeSet<String>) -> Result<RefuteOutcome, ResError> {
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut kept: Vec<usize> = Vec::new();
    for (k, (c, _)) in inputs.iter().enumerate() {
        if c.iter().any(Literal::is_top) {
            continue;
        }
        let mut lits = Vec::new();
        for l in c {
            let Formula::Atom(a) = l.body() else {
                return Err(ResError::UnsupportedLiteral(l.to_string()));
            };
            let n = names.len();
            let id = *names.entry(a.clone()).or_insert(n);
            lits.push((id, !l.is_negative()));
        }
        clauses.push(lits);
        kept.push(k);
    }
    let mut vars: Vec<(&String, &usize)> = names.iter().collect();
    vars.sort_by_key(|(name, _)| (shared.contains(*name), (*name).clone()));
    let order = vars.iter().map(|(_, id)| **id).collect();
    let mut d = Dpll::new(&clauses, names.len(), order);
    let Some(root) = d.search() else {
        let model = d.model();
        return Ok(RefuteOutcome::Satisfiable(
            names.iter().map(|(n, id)| (n.clone(), model[*id])).collect(),
        ));
    };
    let var_name: BTreeMap<usize, &String> = names.iter().map(|(n, id)| (*id, n)).collect();
    let nodes = d
        .compact(root)
        .into_iter()
        .map(|s| match s {
            CoreStep::Input(c) => {
                let (clause, side) = &inputs[kept[c]];
                ResNode::Input { clause: clause.clone(), side: *side }
            }
            CoreStep::Res { left, right, var } => {
                ResNode::Resolve { left, right, pivot: var_name[&var].clone() }
            }
        })
        .collect();
    Ok(RefuteOutcome::Refuted(ResolutionProof { nodes }))
}

/// Refute a clause set, or return a model. Inputs are labelled `A`.
pub fn refute(cs: &ClauseSet) -> Result<RefuteOutcome, ResError> {
    let inputs: Vec<(Clause, Side)> = cs.iter().map(|c| (c.clone(), Side::A)).collect();
    refute_labelled(&inputs, &BTreeSet::new())
}

/// Refute `a ∪ b`, branching on shared atoms last.
pub fn refute_partitioned(a: &ClauseSet, b: &ClauseSet) -> Result<RefuteOutcome, ResError> {
    let part = Partition::from_clause_sets(a, b);
    let inputs: Vec<(Clause, Side)> = a
        .iter()
        .map(|c| (c.clone(), Side::A))
        .chain(b.iter().map(|c| (c.clone(), Side::B)))
        .collect();
    refute_labelled(&inputs, &part.shared)
}

/// All weakening-free refutations with at most `max_nodes` nodes whose
/// nodes all feed the root. Inputs appear first, in the given order.
pub fn enumerate_refutations(inputs: &[(Clause, Side)], max_nodes: usize) -> Vec<ResolutionProof> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for mask in 1u32..(1 << inputs.len()) {
        let chosen: Vec<usize> = (0..inputs.len()).filter(|i| mask >> i & 1 == 1).collect();
        if chosen.len() > max_nodes {
            continue;
        }
        let mut nodes: Vec<ResNode> = chosen
            .iter()
            .map(|&i| ResNode::Input { clause: inputs[i].0.clone(), side: inputs[i].1 })
            .collect();
        let mut clauses: Vec<Clause> = chosen.iter().map(|&i| inputs[i].0.clone()).collect();
        extend_refutations(&mut nodes, &mut clauses, max_nodes, &mut out, &mut seen);
    }
    out
}

fn all_used(nodes: &[ResNode]) -> bool {
    let mut used = vec![false; nodes.len()];
    used[nodes.len() - 1] = true;
    for n in nodes {
        if let ResNode::Resolve { left, right, .. } = n {
            used[*left] = true;
            used[*right] = true;
        }
    }
    used.into_iter().all(|x| x)
}

fn extend_refutations(
    nodes: &mut Vec<ResNode>,
    clauses: &mut Vec<Clause>,
    max_nodes: usize,
    out: &mut Vec<ResolutionProof>,
    seen: &mut BTreeSet<Vec<ResNode>>,
) {
    if clauses.last().is_some_and(|c| c.is_empty()) {
        if all_used(nodes) && seen.insert(nodes.clone()) {
            out.push(ResolutionProof { nodes: nodes.clone() });
        }
        return;
    }
    if nodes.len() >= max_nodes {
        return;
    }
    let n = nodes.len();
    for l in 0..n {
        for r in 0..n {
            let pivots: Vec<String> = clauses[l]
                .iter()
                .filter(|x| !x.is_negative() && clauses[r].contains(&x.dual()))
                .filter_map(|x| match x.body() {
                    Formula::Atom(a) => Some(a.clone()),
                    _ => None,
                })
                .collect();
            for p in pivots {
                let node = ResNode::Resolve { left: l, right: r, pivot: p.clone() };
                if nodes.contains(&node) {
                    continue;
                }
                let lit = Literal::atom(&p);
                let c: Clause = clauses[l]
                    .iter()
                    .filter(|x| **x != lit)
                    .chain(clauses[r].iter().filter(|x| **x != lit.dual()))
                    .cloned()
                    .collect();
                nodes.push(node);
                clauses.push(c);
                extend_refutations(nodes, clauses, max_nodes, out, seen);
                nodes.pop();
                clauses.pop();
            }
        }
    }
}
