use std::collections::BTreeSet;

use super::clause::{clause_set_formula, is_pruned_clause_set, Clause, ClauseSet, Literal};
use super::{Formula, FormulaError};

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Bitset truth table. Row `k` assigns bit `i` of `k` to `vars[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub vars: Vec<String>,
    pub bits: Vec<u64>,
}

impl TruthTable {
    fn words(n: usize) -> usize {
        if n <= 6 {
            1
        } else {
            1 << (n - 6)
        }
    }

    fn mask(n: usize) -> u64 {
        if n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << n)) - 1
        }
    }

    fn constant(n: usize, v: bool) -> Vec<u64> {
        vec![if v { Self::mask(n) } else { 0 }; Self::words(n)]
    }

    fn var(n: usize, i: usize) -> Vec<u64> {
        (0..Self::words(n))
            .map(|w| {
                let x = if i < 6 {
                    PATTERNS[i]
                } else if (w >> (i - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
                x & Self::mask(n)
            })
            .collect()
    }

    /// Table of `f` over `vars`, which must cover `vars(f)`.
    pub fn new(f: &Formula, vars: &[String]) -> Result<TruthTable, FormulaError> {
        let n = vars.len();
        fn go(f: &Formula, vars: &[String], n: usize) -> Result<Vec<u64>, FormulaError> {
            Ok(match f {
                Formula::Bottom => TruthTable::constant(n, false),
                Formula::Atom(p) => {
                    let i = vars
                        .iter()
                        .position(|v| v == p)
                        .ok_or_else(|| FormulaError::IncompleteAssignment(p.clone()))?;
                    TruthTable::var(n, i)
                }
                Formula::Neg(a) => {
                    let m = TruthTable::mask(n);
                    go(a, vars, n)?.into_iter().map(|x| !x & m).collect()
                }
                Formula::And(a, b) => {
                    go(a, vars, n)?.into_iter().zip(go(b, vars, n)?).map(|(x, y)| x & y).collect()
                }
                Formula::Or(a, b) => {
                    go(a, vars, n)?.into_iter().zip(go(b, vars, n)?).map(|(x, y)| x | y).collect()
                }
                Formula::Box(_) => return Err(FormulaError::ModalNotSupported),
            })
        }
        Ok(TruthTable { vars: vars.to_vec(), bits: go(f, vars, n)? })
    }

    pub fn get(&self, row: usize) -> bool {
        (self.bits[row / 64] >> (row % 64)) & 1 == 1
    }

    pub fn rows(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn is_all(&self) -> bool {
        let m = Self::mask(self.vars.len());
        self.bits.iter().all(|&x| x == m)
    }

    pub fn is_none(&self) -> bool {
        self.bits.iter().all(|&x| x == 0)
    }

    /// `self ⊆ other` as sets of satisfying rows.
    pub fn implies(&self, other: &TruthTable) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

fn joint_vars(fs: &[&Formula]) -> Vec<String> {
    let mut v = BTreeSet::new();
    for f in fs {
        f.collect_vars(&mut v);
    }
    v.into_iter().collect()
}

pub fn equiv(f: &Formula, g: &Formula) -> Result<bool, FormulaError> {
    let vars = joint_vars(&[f, g]);
    Ok(TruthTable::new(f, &vars)? == TruthTable::new(g, &vars)?)
}

/// `f ⊨ g`.
pub fn entails(f: &Formula, g: &Formula) -> Result<bool, FormulaError> {
    let vars = joint_vars(&[f, g]);
    Ok(TruthTable::new(f, &vars)?.implies(&TruthTable::new(g, &vars)?))
}

pub fn valid(f: &Formula) -> Result<bool, FormulaError> {
    Ok(TruthTable::new(f, &joint_vars(&[f]))?.is_all())
}

pub fn satisfiable(f: &Formula) -> Result<bool, FormulaError> {
    Ok(!TruthTable::new(f, &joint_vars(&[f]))?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpolantError {
    #[error("the implication is not valid")]
    NotValid,
    #[error("{0} shared variables exceed the cap of {1}")]
    TooManySharedVars(usize, usize),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Prime implicates of a function given by its rows over `vars`.
fn prime_implicates(vars: &[String], rows: &[bool]) -> ClauseSet {
    let n = vars.len();
    let mut implied: Vec<(u32, u32)> = Vec::new();
    // A clause is (positive mask, negative mask); it is falsified exactly on
    // rows agreeing with the negation of each literal.
    for pos in 0u32..(1 << n) {
        let mut neg = 0u32;
        loop {
            if pos & neg == 0 {
                let ok = (0..rows.len()).all(|r| {
                    let r = r as u32;
                    let falsified = (r & pos) == 0 && (r & neg) == neg;
                    !(falsified && rows[r as usize])
                });
                if ok {
                    implied.push((pos, neg));
                }
            }
            if neg == (1 << n) - 1 {
                break;
            }
            neg += 1;
        }
    }
    let sub = |a: &(u32, u32), b: &(u32, u32)| a.0 & !b.0 == 0 && a.1 & !b.1 == 0;
    let mut out = ClauseSet::new();
    for c in &implied {
        if implied.iter().any(|d| d != c && sub(d, c)) {
            continue;
        }
        let mut clause = Clause::new();
        for (i, v) in vars.iter().enumerate() {
            if c.0 >> i & 1 == 1 {
                clause.insert(Literal::atom(v));
            }
            if c.1 >> i & 1 == 1 {
                clause.insert(Literal::atom(v).dual());
            }
        }
        out.insert(clause);
    }
    out
}

/// Canonical clause form: the prime implicates of `f` over `vars(f)`.
pub fn canonical_cnf(f: &Formula) -> Result<ClauseSet, FormulaError> {
    let vars = joint_vars(&[f]);
    let t = TruthTable::new(f, &vars)?;
    let rows: Vec<bool> = (0..t.rows()).map(|r| t.get(r)).collect();
    Ok(prime_implicates(&vars, &rows))
}

/// Every boolean function over the shared variables lying between `a` and
/// `b`, as canonical clause sets in clause-set order.
pub fn enumerate_interpolant_sets(
    a: &Formula,
    b: &Formula,
    cap: usize,
) -> Result<Vec<ClauseSet>, InterpolantError> {
    let va = a.vars();
    let vb = b.vars();
    let shared: Vec<String> = va.intersection(&vb).cloned().collect();
    if shared.len() > cap {
        return Err(InterpolantError::TooManySharedVars(shared.len(), cap));
    }
    let mut all: Vec<String> = shared.clone();
    all.extend(va.symmetric_difference(&vb).cloned());
    let ta = TruthTable::new(a, &all)?;
    let tb = TruthTable::new(b, &all)?;
    let k = shared.len();
    let mut lower = vec![false; 1 << k];
    let mut upper = vec![true; 1 << k];
    for r in 0..ta.rows() {
        let s = r & ((1 << k) - 1);
        lower[s] |= ta.get(r);
        upper[s] &= tb.get(r);
    }
    if lower.iter().zip(&upper).any(|(l, u)| *l && !*u) {
        return Err(InterpolantError::NotValid);
    }
    let free: Vec<usize> = (0..1 << k).filter(|&s| !lower[s] && upper[s]).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for m in 0u64..(1u64 << free.len()) {
        let mut rows = lower.clone();
        for (j, &s) in free.iter().enumerate() {
            if m >> j & 1 == 1 {
                rows[s] = true;
            }
        }
        out.push(prime_implicates(&shared, &rows));
    }
    out.sort();
    Ok(out)
}

/// One canonical formula per equivalence class of interpolants.
pub fn enumerate_interpolants(
    a: &Formula,
    b: &Formula,
    cap: usize,
) -> Result<Vec<Formula>, InterpolantError> {
    Ok(enumerate_interpolant_sets(a, b, cap)?.iter().map(clause_set_formula).collect())
}

/// Pruned, an interpolant, and no clause has a proper subclause entailed by `a`.
pub fn is_pruned_interpolant(cs: &ClauseSet, a: &Formula, b: &Formula) -> bool {
    if !is_pruned_clause_set(cs) || cs.iter().flatten().any(Literal::is_modal) {
        return false;
    }
    let f = clause_set_formula(cs);
    let shared: BTreeSet<String> = a.vars().intersection(&b.vars()).cloned().collect();
    if !f.vars().is_subset(&shared) {
        return false;
    }
    if !matches!((entails(a, &f), entails(&f, b)), (Ok(true), Ok(true))) {
        return false;
    }
    cs.iter().all(|c| {
        c.iter().all(|l| {
            let smaller: Clause = c.iter().filter(|x| *x != l).cloned().collect();
            let g = Formula::disj(smaller.iter().map(Literal::to_formula).collect());
            !entails(a, &g).unwrap_or(true)
        })
    })
}
