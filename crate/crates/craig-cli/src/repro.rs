//! Reruns of the worked examples. Output depends only on the seed.

use clap::ValueEnum;
use craig::construct::{enumerate_cutfree, prove_cutfree, realize_interpolant, realize_pruned};
use craig::formulas::{cnf, enumerate_interpolants, equiv, parse_clause_set, parse_formula, subsumes, Clause, Formula};
use craig::gen;
use craig::maehara::interpolant;
use craig::resolution::{enumerate_refutations, interpolant_from_refutation, Partition, Side as ResSide};
use craig::sequent::{check_proof, is_tame, SplitSequent, System};
use craig::transform::{cnf_to_string, eliminate_cuts};

use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Name {
    #[value(name = "prop3.2")]
    LkMinus,
    #[value(name = "prop3.3")]
    Resolution,
    #[value(name = "thm6.1")]
    LkAt,
    #[value(name = "prop7.1")]
    ModalCutFree,
    #[value(name = "thm7.2")]
    ModalRealize,
    #[value(name = "thm5.4")]
    Pipeline,
}

/// Random instances checked after the fixed example.
const SEEDED: usize = 5;

struct Report(String);

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.0.push_str(s.as_ref());
        self.0.push('\n');
    }

    fn check(&mut self, ok: bool, what: impl AsRef<str>) -> Result<(), Failure> {
        if ok {
            self.line(format!("ok: {}", what.as_ref()));
            Ok(())
        } else {
            Err(Failure::Logic(format!("{}failed: {}", self.0, what.as_ref())))
        }
    }
}

fn f(s: &str) -> Formula {
    parse_formula(s).expect("fixed formula")
}

fn eq(x: &Formula, y: &Formula) -> bool {
    equiv(x, y).unwrap_or(false)
}

fn k_equiv(x: &Formula, y: &Formula) -> bool {
    let one = |a: &Formula, b: &Formula| {
        prove_cutfree(&SplitSequent::new(vec![a.clone()], vec![], vec![], vec![b.clone()]), System::K).is_ok()
    };
    one(x, y) && one(y, x)
}

fn logic(e: impl std::fmt::Display) -> Failure {
    Failure::Logic(e.to_string())
}

pub fn run(name: Name, seed: u64) -> Outcome {
    let mut r = Report(String::new());
    match name {
        Name::LkMinus => lk_minus(&mut r)?,
        Name::Resolution => resolution(&mut r)?,
        Name::LkAt => lk_at(&mut r, seed)?,
        Name::ModalCutFree => modal_cut_free(&mut r)?,
        Name::ModalRealize => modal_realize(&mut r)?,
        Name::Pipeline => pipeline(&mut r, seed)?,
    }
    Ok(r.0)
}

fn lk_minus(r: &mut Report) -> Result<(), Failure> {
    let s = SplitSequent::parse("p & q ; => ; p | q").expect("fixed sequent");
    let e = enumerate_cutfree(&s, System::LKminus, 6);
    r.line(format!("sequent: {s}"));
    r.line(format!("cut-free proofs of depth <= 6: {}", e.proofs));
    for c in &e.interpolants {
        r.line(format!("interpolant: {c}"));
    }
    let (p, q) = (f("p"), f("q"));
    r.check(e.interpolants.iter().all(|c| eq(c, &p) || eq(c, &q)), "every interpolant is equivalent to p or q")?;
    for bad in ["p & q", "p | q"] {
        r.check(!e.interpolants.iter().any(|c| eq(c, &f(bad))), format!("no interpolant equivalent to {bad}"))?;
    }
    Ok(())
}

fn resolution(r: &mut Report) -> Result<(), Failure> {
    let cl = |s: &str| -> Clause { parse_clause_set(s).expect("fixed clause").into_iter().next().expect("one clause") };
    let inputs = [(cl("p"), ResSide::A), (cl("q"), ResSide::A), (cl("~p"), ResSide::B), (cl("~q"), ResSide::B)];
    let refs = enumerate_refutations(&inputs, 6);
    r.line(format!("weakening-free refutations with at most 6 nodes: {}", refs.len()));
    let mut found = Vec::new();
    for rp in &refs {
        let c = interpolant_from_refutation(rp, &Partition::from_proof(rp)).map_err(logic)?;
        r.line(format!("{}interpolant: {c}", rp));
        found.push(c);
    }
    let (p, q) = (f("p"), f("q"));
    r.check(found.iter().all(|c| eq(c, &p) || eq(c, &q)), "every interpolant is equivalent to p or q")?;
    for bad in ["p & q", "p | q"] {
        r.check(!found.iter().any(|c| eq(c, &f(bad))), format!("no interpolant equivalent to {bad}"))?;
    }
    Ok(())
}

fn realize_all(r: &mut Report, a: &Formula, b: &Formula, sys: System) -> Result<(), Failure> {
    for c in enumerate_interpolants(a, b, 4).map_err(logic)? {
        let p = realize_interpolant(a, b, &c, sys).map_err(logic)?;
        let m = interpolant(&p).map_err(logic)?;
        r.line(format!("target {c}: {} nodes, {} cuts, interpolant {m}", p.node_count(), p.count_cuts()));
        r.check(check_proof(&p, sys).is_ok() && eq(&m, &c), format!("checked, interpolant equivalent to {c}"))?;
    }
    Ok(())
}

fn lk_at(r: &mut Report, seed: u64) -> Result<(), Failure> {
    let (a, b) = (f("p & q"), f("p | q"));
    r.line(format!("{a} => {b}"));
    realize_all(r, &a, &b, System::LKat)?;
    let mut rng = gen::rng(seed);
    for i in 0..SEEDED {
        let (a, b) = gen::valid_implication(&mut rng, 3, 3);
        r.line(format!("instance {i}: {a} => {b}"));
        realize_all(r, &a, &b, System::LKat)?;
    }
    Ok(())
}

const MODAL_TARGETS: [&str; 3] = ["[](p & q)", "[](p | q)", "[]p & []q"];

fn modal_cut_free(r: &mut Report) -> Result<(), Failure> {
    let s = SplitSequent::parse("[](p & q) ; => ; [](p | q)").expect("fixed sequent");
    let e = enumerate_cutfree(&s, System::K, 6);
    r.line(format!("sequent: {s}"));
    r.line(format!("cut-free K proofs of depth <= 6: {}", e.proofs));
    for c in &e.interpolants {
        r.line(format!("interpolant: {c}"));
    }
    for t in MODAL_TARGETS {
        let t = f(t);
        r.check(!e.interpolants.iter().any(|c| k_equiv(c, &t)), format!("no interpolant K-equivalent to {t}"))?;
    }
    Ok(())
}

fn modal_realize(r: &mut Report) -> Result<(), Failure> {
    let (a, b) = (f("[](p & q)"), f("[](p | q)"));
    for t in MODAL_TARGETS {
        let t = f(t);
        let p = realize_interpolant(&a, &b, &t, System::K).map_err(logic)?;
        let m = interpolant(&p).map_err(logic)?;
        r.line(format!("target {t}: {} nodes, {} cuts, interpolant {m}", p.node_count(), p.count_cuts()));
        r.check(check_proof(&p, System::K).is_ok(), "checked in K")?;
        r.check(k_equiv(&m, &t), format!("{m} and {t} prove each other in K"))?;
    }
    Ok(())
}

fn pipeline_instance(r: &mut Report, a: &Formula, b: &Formula, cs: &craig::formulas::ClauseSet) -> Result<(), Failure> {
    let p = realize_pruned(a, b, cs).map_err(logic)?;
    let tame = is_tame(&p).map_err(logic)?.tame;
    r.line(format!("target {}: {} cuts", cnf_to_string(cs), p.count_cuts()));
    r.check(tame, "realization is tame")?;
    r.check(cnf(&interpolant(&p).map_err(logic)?) == *cs, "realized cnf equals the target")?;
    let e = eliminate_cuts(&p).map_err(logic)?;
    let m = cnf(&interpolant(&e.proof).map_err(logic)?);
    r.line(format!("{} reduction steps, result {}", e.trace.len(), cnf_to_string(&m)));
    r.check(e.proof.is_cut_free() && check_proof(&e.proof, System::LKminus).is_ok(), "cut-free result checks")?;
    r.check(e.subsumption_chain() && subsumes(cs, &m), "each step is subsumed by the previous one")?;
    Ok(())
}

fn pipeline(r: &mut Report, seed: u64) -> Result<(), Failure> {
    let (a, b) = (f("p & q"), f("p | q"));
    r.line(format!("{a} => {b}"));
    pipeline_instance(r, &a, &b, &parse_clause_set("p\nq").expect("fixed clauses"))?;
    let mut rng = gen::rng(seed);
    for i in 0..SEEDED {
        let (a, b, cs) = gen::pruned_instance(&mut rng, 3, 3);
        r.line(format!("instance {i}: {a} => {b}"));
        pipeline_instance(r, &a, &b, &cs)?;
    }
    Ok(())
}
