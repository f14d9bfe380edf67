//! Seeded random instances for property suites and the command line.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::prove_cutfree;
use crate::formulas::{
    entails, enumerate_interpolant_sets, is_pruned_interpolant, satisfiable, valid, Clause, ClauseSet,
    Formula, Literal,
};
use crate::resolution::{refute_partitioned, RefuteOutcome, ResolutionProof};
use crate::sequent::{Part, Proof, Side, SplitSequent, System};

/// Default seed of every randomized suite.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` atom names: `p`, `q`, `r`, `s`, `t`, then `x5`, `x6`, ...
pub fn atoms(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0..=4 => ["p", "q", "r", "s", "t"][i].to_string(),
            _ => format!("x{i}"),
        })
        .collect()
}

/// Random formula of depth at most `depth` over `atoms`.
pub fn formula(rng: &mut GenRng, atoms: &[String], depth: usize, modal: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..12) {
            0 => Formula::Bottom,
            1 => Formula::top(),
            _ => Formula::atom(atoms.choose(rng).expect("atoms")),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..if modal { 5 } else { 4 }) {
        0 => Formula::neg(formula(rng, atoms, d, modal)),
        1 => Formula::and(formula(rng, atoms, d, modal), formula(rng, atoms, d, modal)),
        2 => Formula::or(formula(rng, atoms, d, modal), formula(rng, atoms, d, modal)),
        3 => Formula::implies(formula(rng, atoms, d, modal), formula(rng, atoms, d, modal)),
        _ => Formula::boxed(formula(rng, atoms, d, modal)),
    }
}

pub fn literal(rng: &mut GenRng, atoms: &[String]) -> Literal {
    let l = Literal::atom(atoms.choose(rng).expect("atoms"));
    if rng.gen_bool(0.5) {
        l.dual()
    } else {
        l
    }
}

pub fn clause(rng: &mut GenRng, atoms: &[String], max_len: usize) -> Clause {
    let n = rng.gen_range(1..=max_len.max(1));
    (0..n).map(|_| literal(rng, atoms)).collect()
}

/// Up to `max_clauses` clauses of up to `max_len` literals each.
pub fn clause_set(rng: &mut GenRng, atoms: &[String], max_clauses: usize, max_len: usize) -> ClauseSet {
    let n = rng.gen_range(0..=max_clauses);
    (0..n).map(|_| clause(rng, atoms, max_len)).collect()
}

/// Clause sets `a`, `b` over at most `max_atoms` atoms and `max_clauses`
/// clauses in total with `a ∪ b` unsatisfiable, and a refutation of it.
pub fn partitioned_unsat(
    rng: &mut GenRng,
    max_atoms: usize,
    max_clauses: usize,
) -> (ClauseSet, ClauseSet, ResolutionProof) {
    let all = atoms(max_atoms.max(2));
    loop {
        let k = rng.gen_range(2..=all.len());
        let pool = &all[..k];
        let split = rng.gen_range(1..k);
        let shared_from = rng.gen_range(0..split);
        let shared_to = rng.gen_range(split..=k);
        let (va, vb) = (&pool[..shared_to], &pool[shared_from..]);
        let na = rng.gen_range(1..max_clauses);
        let nb = rng.gen_range(1..=max_clauses - na);
        let a: ClauseSet = (0..na).map(|_| clause(rng, va, 3)).collect();
        let b: ClauseSet = (0..nb).map(|_| clause(rng, vb, 3)).collect();
        if let Ok(RefuteOutcome::Refuted(r)) = refute_partitioned(&a, &b) {
            return (a, b, r);
        }
    }
}

/// Valid, non-trivial `a → b` with between one and `max_shared` shared
/// atoms and at most one private atom per side.
pub fn valid_implication(rng: &mut GenRng, max_shared: usize, depth: usize) -> (Formula, Formula) {
    let shared = atoms(max_shared.clamp(1, 3));
    loop {
        let k = rng.gen_range(1..=shared.len());
        let mut va: Vec<String> = shared[..k].to_vec();
        let mut vb = va.clone();
        if rng.gen_bool(0.5) {
            va.push("a".into());
        }
        if rng.gen_bool(0.5) {
            vb.push("b".into());
        }
        let a = formula(rng, &va, depth, false);
        let b = formula(rng, &vb, depth, false);
        let n = a.vars().intersection(&b.vars()).count();
        if n == 0 || n > max_shared {
            continue;
        }
        let nontrivial = satisfiable(&a).unwrap_or(false) && !valid(&b).unwrap_or(true);
        if nontrivial && entails(&a, &b).unwrap_or(false) {
            return (a, b);
        }
    }
}

/// Shrink every clause of `cs` while `a` still entails it.
fn shrink(cs: &ClauseSet, a: &Formula) -> ClauseSet {
    cs.iter()
        .map(|c| {
            let mut c = c.clone();
            loop {
                let next = c.iter().find_map(|l| {
                    let smaller: Clause = c.iter().filter(|x| *x != l).cloned().collect();
                    let g = Formula::disj(smaller.iter().map(Literal::to_formula).collect());
                    entails(a, &g).unwrap_or(false).then_some(smaller)
                });
                match next {
                    Some(s) => c = s,
                    None => return c,
                }
            }
        })
        .collect()
}

/// `(a, b, cs)` with `cs` a pruned interpolant of `a → b`.
pub fn pruned_instance(rng: &mut GenRng, max_shared: usize, depth: usize) -> (Formula, Formula, ClauseSet) {
    loop {
        let (a, b) = valid_implication(rng, max_shared, depth);
        let Ok(sets) = enumerate_interpolant_sets(&a, &b, max_shared) else { continue };
        let mut sets: Vec<ClauseSet> = sets.iter().map(|cs| shrink(cs, &a)).collect();
        sets.retain(|cs| !cs.is_empty() && is_pruned_interpolant(cs, &a, &b));
        if let Some(cs) = sets.choose(rng) {
            return (a, b, cs.clone());
        }
    }
}

/// Random valid split sequent whose formulas have depth at most `depth`.
pub fn valid_sequent(rng: &mut GenRng, n_atoms: usize, depth: usize) -> SplitSequent {
    let vars = atoms(n_atoms);
    loop {
        let mut s = SplitSequent::default();
        for _ in 0..rng.gen_range(1..=3) {
            let part = *Part::ALL.choose(rng).expect("parts");
            s.get_mut(part).push(formula(rng, &vars, depth, false));
        }
        if valid(&s.formula()).unwrap_or(false) {
            return s;
        }
    }
}

/// Checked proof in `sys`, one of `LKminus`, `LKat` or `LKmono`: a
/// cut-free proof, or a cut on a formula over the given side's variables
/// between two cut-free proofs of the weakened end sequent.
pub fn checked_proof(rng: &mut GenRng, sys: System) -> Proof {
    loop {
        let s = valid_sequent(rng, 3, 2);
        let Ok(p) = prove_cutfree(&s, System::LKminus) else { continue };
        let cut = match sys {
            System::LKat => 0,
            System::LKmono => rng.gen_range(1..=2),
            _ => return p,
        };
        let side = if rng.gen_bool(0.5) { Side::One } else { Side::Two };
        let mut vars: Vec<String> = s.side_vars(side).into_iter().collect();
        if vars.is_empty() {
            vars = s.vars().into_iter().collect();
        }
        if vars.is_empty() {
            continue;
        }
        let f = formula(rng, &vars, cut, false);
        if !f.vars().is_subset(&s.side_vars(side)) {
            continue;
        }
        let mut l = s.clone();
        l.get_mut(Part::succ(side)).push(f.clone());
        let mut r = s.clone();
        r.get_mut(Part::ante(side)).push(f.clone());
        let (Ok(pl), Ok(pr)) = (prove_cutfree(&l, System::LKminus), prove_cutfree(&r, System::LKminus)) else {
            continue;
        };
        if let Ok(p) = Proof::cut(pl, pr, side, f) {
            return p;
        }
    }
}

/// Checked `LKlit` proof ending in a cut on a negated atom of the cut's
/// side, between cut-free proofs.
pub fn literal_cut_proof(rng: &mut GenRng) -> Proof {
    loop {
        let s = valid_sequent(rng, 3, 2);
        let side = if rng.gen_bool(0.5) { Side::One } else { Side::Two };
        let vars: Vec<String> = s.side_vars(side).into_iter().collect();
        let Some(x) = vars.choose(rng) else { continue };
        let f = Formula::neg(Formula::atom(x));
        let mut l = s.clone();
        l.get_mut(Part::succ(side)).push(f.clone());
        let mut r = s.clone();
        r.get_mut(Part::ante(side)).push(f.clone());
        let (Ok(pl), Ok(pr)) = (prove_cutfree(&l, System::LKminus), prove_cutfree(&r, System::LKminus)) else {
            continue;
        };
        if let Ok(p) = Proof::cut(pl, pr, side, f) {
            return p;
        }
    }
}

/// Cut-free proof and the flat position of a negation in its end sequent.
pub fn negation_target(rng: &mut GenRng) -> (Proof, usize) {
    loop {
        let s = valid_sequent(rng, 3, 3);
        let negs: Vec<usize> =
            s.occurrences().enumerate().filter(|(_, (_, f))| matches!(f, Formula::Neg(_))).map(|(i, _)| i).collect();
        let Some(&pos) = negs.choose(rng) else { continue };
        if let Ok(p) = prove_cutfree(&s, System::LKminus) {
            return (p, pos);
        }
    }
}
