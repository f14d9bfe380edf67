//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use craig::construct::{enumerate_cutfree, prove_cutfree, realize_interpolant, realize_pruned};
use craig::formulas::{
    clause_set_formula, clause_set_to_text, cnf, entails, enumerate_interpolants, equiv, parse_clause_set,
    parse_formula, product, prune, satisfiable, subsumes, Clause, ClauseSet, Formula,
};
use craig::gen;
use craig::maehara::{check_sequent_interpolant, interpolant};
use craig::resolution::{
    enumerate_refutations, interpolant_from_refutation, Partition, ResolutionProof, Side as ResSide,
};
use craig::sequent::{check_proof, classify_cut, is_tame, Part, Proof, ProofIndex, SplitSequent, System};
use craig::transform::{eliminate_cuts, is_w_reduced, literal_cuts_to_atomic, neg_invert, w_reduce};
use rand::Rng;

type Outcome = Result<String, String>;

fn f(s: &str) -> Formula {
    parse_formula(s).expect("formula")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn resolution_soundness() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    for i in 0..500 {
        let (a, b, rp) = gen::partitioned_unsat(&mut rng, 5, 8);
        let part = Partition::from_clause_sets(&a, &b);
        let c = interpolant_from_refutation(&rp, &part).map_err(|e| format!("instance {i}: {e}"))?;
        let (fa, fb) = (clause_set_formula(&a), clause_set_formula(&b));
        ensure(c.vars().is_subset(&part.shared), || format!("instance {i}: `{c}` not over shared atoms"))?;
        ensure(entails(&fa, &c).unwrap(), || format!("instance {i}: A does not entail `{c}`"))?;
        ensure(!satisfiable(&Formula::and(fb, c.clone())).unwrap(), || format!("instance {i}: B and `{c}` satisfiable"))?;
    }
    Ok("500/500 interpolants pass".into())
}

fn lk_minus_incompleteness() -> Outcome {
    let s = SplitSequent::parse("p & q ; => ; p | q").unwrap();
    let e = enumerate_cutfree(&s, System::LKminus, 6);
    let (p, q) = (f("p"), f("q"));
    for c in &e.interpolants {
        ensure(equiv(c, &p).unwrap() || equiv(c, &q).unwrap(), || format!("interpolant `{c}`"))?;
        for bad in [f("p & q"), f("p | q")] {
            ensure(!equiv(c, &bad).unwrap(), || format!("`{c}` is equivalent to `{bad}`"))?;
        }
    }
    Ok(format!("{} proofs, {} distinct interpolants, all equivalent to p or q", e.proofs, e.interpolants.len()))
}

fn resolution_incompleteness() -> Outcome {
    let cl = |s: &str| -> Clause { parse_clause_set(s).unwrap().into_iter().next().unwrap() };
    let inputs = [(cl("p"), ResSide::A), (cl("q"), ResSide::A), (cl("~p"), ResSide::B), (cl("~q"), ResSide::B)];
    let refs = enumerate_refutations(&inputs, 6);
    let (p, q) = (f("p"), f("q"));
    let mut seen = BTreeSet::new();
    for rp in &refs {
        ensure(!rp.uses_weakening(), || "weakening in an enumerated refutation".into())?;
        let c = interpolant_from_refutation(rp, &Partition::from_proof(rp)).map_err(|e| e.to_string())?;
        if equiv(&c, &p).unwrap() {
            seen.insert("p");
        } else if equiv(&c, &q).unwrap() {
            seen.insert("q");
        } else {
            return Err(format!("interpolant `{c}`"));
        }
    }
    ensure(seen.len() == 2, || format!("only {seen:?} reached"))?;
    Ok(format!("{} refutations, interpolants equivalent to p or q", refs.len()))
}

fn lkat_completeness() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    let mut targets = 0;
    for i in 0..50 {
        let (a, b) = gen::valid_implication(&mut rng, 3, 3);
        for c in enumerate_interpolants(&a, &b, 3).map_err(|e| e.to_string())? {
            let p = realize_interpolant(&a, &b, &c, System::LKat)
                .map_err(|e| format!("instance {i} ({a} => {b}, target {c}): {e}"))?;
            check_proof(&p, System::LKat).map_err(|e| format!("instance {i}: {e}"))?;
            let m = interpolant(&p).map_err(|e| e.to_string())?;
            ensure(equiv(&m, &c).unwrap(), || format!("instance {i}: `{m}` vs `{c}`"))?;
            targets += 1;
        }
    }
    Ok(format!("50 implications, {targets} interpolant classes realized"))
}

fn pruned_pipeline() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    let mut steps = 0;
    for i in 0..100 {
        let (a, b, cs) = gen::pruned_instance(&mut rng, 3, 3);
        let ctx = || format!("instance {i} ({a} => {b}, {})", clause_set_to_text(&cs).trim_end().replace('\n', " / "));
        let p = realize_pruned(&a, &b, &cs).map_err(|e| format!("{}: {e}", ctx()))?;
        check_proof(&p, System::LKat).map_err(|e| format!("{}: {e}", ctx()))?;
        ensure(is_tame(&p).unwrap().tame, || format!("{}: not tame", ctx()))?;
        for (id, n) in p.preorder().iter().enumerate() {
            if n.cut_formula().is_some() {
                ensure(classify_cut(&p, id).unwrap().type_r, || format!("{}: cut {id} is type L", ctx()))?;
            }
        }
        ensure(cnf(&interpolant(&p).unwrap()) == cs, || format!("{}: cnf differs", ctx()))?;
        let e = eliminate_cuts(&p).map_err(|e| format!("{}: {e}", ctx()))?;
        check_proof(&e.proof, System::LKminus).map_err(|e| format!("{}: {e}", ctx()))?;
        ensure(e.proof.is_cut_free(), || format!("{}: cuts remain", ctx()))?;
        let m = cnf(&interpolant(&e.proof).unwrap());
        ensure(subsumes(&cs, &m), || format!("{}: target does not subsume the result", ctx()))?;
        ensure(e.subsumption_chain(), || format!("{}: trace breaks subsumption", ctx()))?;
        steps += e.trace.len();
    }
    Ok(format!("100 instances, {steps} reduction steps"))
}

fn root_weights(p: &Proof) -> Vec<usize> {
    let ix = ProofIndex::new(p).unwrap();
    let v: Vec<usize> = ix.root_occurrences().map(|o| ix.weight(o)).collect();
    v
}

fn lemma_suite() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    for i in 0..100 {
        let (p, pos) = gen::negation_target(&mut rng);
        let q = neg_invert(&p, pos).map_err(|e| format!("neg_invert {i}: {e}"))?;
        check_proof(&q, System::LKminus).map_err(|e| format!("neg_invert {i}: {e}"))?;
        let (mp, mq) = (interpolant(&p).unwrap(), interpolant(&q).unwrap());
        ensure(mp == mq, || format!("neg_invert {i}: `{mp}` became `{mq}`"))?;
        ensure(q.size() <= 2 * p.size(), || format!("neg_invert {i}: size {} > 2 * {}", q.size(), p.size()))?;
    }
    for i in 0..100 {
        let p = gen::literal_cut_proof(&mut rng);
        let q = literal_cuts_to_atomic(&p).map_err(|e| format!("literal cut {i}: {e}"))?;
        check_proof(&q, System::LKat).map_err(|e| format!("literal cut {i}: {e}"))?;
        ensure(cnf(&interpolant(&p).unwrap()) == cnf(&interpolant(&q).unwrap()), || format!("literal cut {i}: cnf"))?;
    }
    for i in 0..100 {
        let mut p = gen::checked_proof(&mut rng, System::LKmono);
        let extra = gen::formula(&mut rng, &gen::atoms(3), 2, false);
        let part = Part::ALL[rng.gen_range(0..4)];
        p = p.weaken(part, extra);
        let q = w_reduce(&p);
        check_proof(&q, System::LKmono).map_err(|e| format!("w_reduce {i}: {e}"))?;
        ensure(is_w_reduced(&q), || format!("w_reduce {i}: not w-reduced"))?;
        ensure(q.seq == p.seq, || format!("w_reduce {i}: end sequent changed"))?;
        ensure(interpolant(&p).unwrap() == interpolant(&q).unwrap(), || format!("w_reduce {i}: interpolant"))?;
        ensure(root_weights(&p) == root_weights(&q), || format!("w_reduce {i}: weights"))?;
    }
    Ok("100 instances each for neg_invert, literal_cuts_to_atomic and w_reduce".into())
}

fn models(vars: &[String]) -> impl Iterator<Item = craig::formulas::Assignment> + '_ {
    (0..1u32 << vars.len()).map(move |m| vars.iter().enumerate().map(|(i, v)| (v.clone(), m >> i & 1 == 1)).collect())
}

fn holds(cs: &ClauseSet, m: &craig::formulas::Assignment) -> bool {
    clause_set_formula(cs).eval(m).unwrap()
}

/// A superset of every clause of `a`, plus extra clauses.
fn weaker(rng: &mut gen::GenRng, a: &ClauseSet, vars: &[String]) -> ClauseSet {
    let mut out: ClauseSet = a
        .iter()
        .map(|c| {
            let mut c = c.clone();
            for _ in 0..rng.gen_range(0..2) {
                c.insert(gen::literal(rng, vars));
            }
            c
        })
        .collect();
    out.extend(gen::clause_set(rng, vars, 2, 3).into_iter().filter(|c| a.iter().any(|x| x.is_subset(c))));
    out
}

fn algebra() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    let vars = gen::atoms(4);
    for i in 0..1000 {
        let a = gen::formula(&mut rng, &vars, 4, false);
        let b = gen::formula(&mut rng, &vars, 3, false);
        let c = gen::formula(&mut rng, &vars, 3, false);
        let l = gen::literal(&mut rng, &vars).to_formula();
        let e = |x: Formula| cnf(&x);
        let checks = [
            equiv(&clause_set_formula(&cnf(&a)), &a).unwrap(),
            e(Formula::and(a.clone(), b.clone())) == e(Formula::and(b.clone(), a.clone())),
            e(Formula::or(a.clone(), b.clone())) == e(Formula::or(b.clone(), a.clone())),
            e(Formula::and(Formula::and(a.clone(), b.clone()), c.clone()))
                == e(Formula::and(a.clone(), Formula::and(b.clone(), c.clone()))),
            e(Formula::or(Formula::or(a.clone(), b.clone()), c.clone()))
                == e(Formula::or(a.clone(), Formula::or(b.clone(), c.clone()))),
            e(Formula::and(a.clone(), a.clone())) == e(a.clone()),
            e(Formula::or(l.clone(), l.clone())) == e(l.clone()),
            e(Formula::and(a.clone(), Formula::top())) == e(a.clone()),
            e(Formula::or(a.clone(), Formula::Bottom)) == e(a.clone()),
        ];
        if let Some(k) = checks.iter().position(|x| !x) {
            return Err(format!("cnf instance {i}, identity {k}: {a} / {b} / {c}"));
        }
    }
    for i in 0..1000 {
        let a = gen::clause_set(&mut rng, &vars, 4, 3);
        let mut sub = a.clone();
        sub.extend(gen::clause_set(&mut rng, &vars, 2, 3));
        let b = weaker(&mut rng, &a, &vars);
        let b2 = weaker(&mut rng, &b, &vars);
        let c = gen::clause_set(&mut rng, &vars, 4, 3);
        let union = |x: &ClauseSet, y: &ClauseSet| -> ClauseSet { x.union(y).cloned().collect() };
        let checks = [
            subsumes(&sub, &a),
            subsumes(&a, &b) && subsumes(&b, &b2) && subsumes(&a, &b2),
            subsumes(&union(&a, &c), &union(&b, &c)),
            subsumes(&product(&a, &c), &product(&b, &c)),
            subsumes(&union(&product(&a, &b), &c), &product(&union(&a, &c), &union(&b, &c))),
        ];
        if let Some(k) = checks.iter().position(|x| !x) {
            return Err(format!("subsumption instance {i}, relation {k}"));
        }
    }
    for i in 0..1000 {
        let cs = gen::clause_set(&mut rng, &vars, 5, 3);
        let pr = prune(&cs);
        let all: Vec<String> = vars.clone();
        let kept: Vec<String> = {
            let mut s = BTreeSet::new();
            for cl in &pr {
                for l in cl {
                    s.extend(l.body().vars());
                }
            }
            s.into_iter().collect()
        };
        let rest: Vec<String> = all.iter().filter(|v| !kept.contains(v)).cloned().collect();
        for m in models(&all) {
            ensure(!holds(&cs, &m) || holds(&pr, &m), || format!("prune instance {i}: model lost"))?;
        }
        for m in models(&kept) {
            if !holds(&pr, &m) {
                continue;
            }
            let extends = models(&rest).any(|r| {
                let mut full = m.clone();
                full.extend(r);
                holds(&cs, &full)
            });
            ensure(extends, || format!("prune instance {i}: model does not extend"))?;
        }
    }
    Ok("1000 instances each for cnf identities, subsumption relations and prune".into())
}

fn maehara_soundness() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    for sys in [System::LKminus, System::LKat, System::LKmono] {
        for i in 0..100 {
            let p = gen::checked_proof(&mut rng, sys);
            check_proof(&p, sys).map_err(|e| format!("{sys} {i}: {e}"))?;
            let m = interpolant(&p).map_err(|e| format!("{sys} {i}: {e}"))?;
            check_sequent_interpolant(&p.seq, &m, sys).map_err(|e| format!("{sys} {i}: {e}"))?;
            ensure(m.size() <= p.size(), || format!("{sys} {i}: |M| = {} > |π| = {}", m.size(), p.size()))?;
        }
    }
    Ok("300 proofs across LKminus, LKat and LKmono".into())
}

fn k_equiv(x: &Formula, y: &Formula) -> bool {
    let one = |x: &Formula, y: &Formula| {
        prove_cutfree(&SplitSequent::new(vec![x.clone()], vec![], vec![], vec![y.clone()]), System::K).is_ok()
    };
    one(x, y) && one(y, x)
}

fn modal() -> Outcome {
    let s = SplitSequent::parse("[](p & q) ; => ; [](p | q)").unwrap();
    let e = enumerate_cutfree(&s, System::K, 6);
    let targets = [f("[](p & q)"), f("[](p | q)"), f("[]p & []q")];
    for c in &e.interpolants {
        for t in &targets {
            ensure(!k_equiv(c, t), || format!("cut-free interpolant `{c}` is K-equivalent to `{t}`"))?;
        }
    }
    let (a, b) = (f("[](p & q)"), f("[](p | q)"));
    for t in &targets {
        let p = realize_interpolant(&a, &b, t, System::K).map_err(|e| format!("target {t}: {e}"))?;
        check_proof(&p, System::K).map_err(|e| format!("target {t}: {e}"))?;
        let m = interpolant(&p).unwrap();
        ensure(k_equiv(&m, t), || format!("`{m}` not K-equivalent to `{t}`"))?;
    }
    Ok(format!("{} cut-free interpolants avoid all three targets; all three realized with cuts", e.interpolants.len()))
}

fn round_trip() -> Outcome {
    let mut rng = gen::rng(gen::DEFAULT_SEED);
    let vars = gen::atoms(4);
    for i in 0..1000 {
        let x = gen::formula(&mut rng, &vars, 5, true);
        let text = x.to_string();
        let y = parse_formula(&text).map_err(|e| format!("formula {i} `{text}`: {e}"))?;
        ensure(y == x && y.to_string() == text, || format!("formula {i}: `{text}`"))?;
    }
    for i in 0..1000 {
        let sys = [System::LKminus, System::LKat, System::LKmono][i % 3];
        let p = gen::checked_proof(&mut rng, sys);
        let text = p.to_sexpr();
        let q = Proof::parse(&text).map_err(|e| format!("proof {i}: {e}"))?;
        ensure(q == p && q.to_sexpr() == text, || format!("proof {i}"))?;
    }
    for i in 0..1000 {
        let (_, _, rp) = gen::partitioned_unsat(&mut rng, 5, 8);
        let text = rp.to_string();
        let q = ResolutionProof::parse(&text).map_err(|e| format!("refutation {i}: {e}"))?;
        ensure(q == rp && q.to_string() == text, || format!("refutation {i}"))?;
        let cs = gen::clause_set(&mut rng, &vars, 4, 3);
        let text = clause_set_to_text(&cs);
        let back = parse_clause_set(&text).map_err(|e| format!("clause set {i}: {e}"))?;
        ensure(back == cs && clause_set_to_text(&back) == text, || format!("clause set {i}"))?;
    }
    Ok("1000 formulas, proofs, refutations and clause sets".into())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let s = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("resolution interpolation soundness", s(10), resolution_soundness),
        ("cut-free LK interpolants of p & q => p | q", s(30), lk_minus_incompleteness),
        ("resolution interpolants of {p},{q} | {~p},{~q}", s(5), resolution_incompleteness),
        ("LKat completeness", s(60), lkat_completeness),
        ("pruned interpolant pipeline", s(120), pruned_pipeline),
        ("lemma suite", s(120), lemma_suite),
        ("cnf, subsumption and prune algebra", s(20), algebra),
        ("Maehara soundness", s(120), maehara_soundness),
        ("modal interpolants", s(120), modal),
        ("round-trip I/O", s(120), round_trip),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let out = match out {
            Ok(msg) if took > *limit => Err(format!("{msg}, but took {took:.1?} > {limit:?}")),
            other => other,
        };
        match out {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
