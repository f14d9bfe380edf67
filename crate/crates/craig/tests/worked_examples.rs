use craig::construct::{enumerate_cutfree, pruned_subsumption_pipeline, realize_clause, realize_interpolant, realize_pruned};
use craig::formulas::{cnf, enumerate_interpolants, equiv, parse_clause_set, parse_formula, subsumes, ClauseSet, Formula};
use craig::maehara::{interpolant, verify_interpolant};
use craig::resolution::{interpolant_from_refutation, Partition, ResolutionProof};
use craig::sequent::{check_proof, is_tame, Part, Proof, Rule, Side, SplitSequent, System};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn seq(s: &str) -> SplitSequent {
    SplitSequent::parse(s).unwrap()
}

fn cls(s: &str) -> ClauseSet {
    parse_clause_set(s).unwrap()
}

/// `p ∧ q ; ⇒ ; x` from the axiom on `x`.
fn projection(rule: Rule, x: &str) -> Proof {
    let ax = Proof::ax(f(x), Part::G1, Part::D2);
    Proof::unary(rule, Part::G1, f("p & q"), ax).unwrap()
}

#[test]
fn context_sharing_cuts_realize_the_conjunction() {
    let pi1 = projection(Rule::LAnd1, "p");
    let pi2 = projection(Rule::LAnd2, "q");
    assert_eq!(interpolant(&pi1).unwrap(), f("p"));
    assert_eq!(interpolant(&pi2).unwrap(), f("q"));

    let right = Proof::ax(f("p"), Part::G2, Part::D2).weaken(Part::G2, f("q"));
    let right = Proof::unary(Rule::ROr1, Part::D2, f("p | q"), right).unwrap();
    assert_eq!(interpolant(&right).unwrap(), Formula::top());

    let inner = Proof::cut(
        pi1.weaken_to(&seq("p & q ; q => ; p | q, p")).unwrap(),
        right.weaken_to(&seq("p & q ; q, p => ; p | q")).unwrap(),
        Side::Two,
        f("p"),
    )
    .unwrap();
    assert_eq!(interpolant(&inner).unwrap(), Formula::and(f("p"), Formula::top()));

    let outer = Proof::cut(
        pi2.weaken_to(&seq("p & q, p & q ; => ; p | q, q")).unwrap(),
        inner.weaken_to(&seq("p & q, p & q ; q => ; p | q")).unwrap(),
        Side::Two,
        f("q"),
    )
    .unwrap();
    let sigma = outer.contract(Part::G1, f("p & q")).unwrap();
    check_proof(&sigma, System::LKat).unwrap();
    assert!(sigma.seq.same_multisets(&seq("p & q ; => ; p | q")));
    let m = interpolant(&sigma).unwrap();
    assert_eq!(m, Formula::and(f("q"), Formula::and(f("p"), Formula::top())));
    assert!(equiv(&m, &f("p & q")).unwrap());
}

#[test]
fn four_interpolants_two_reachable_without_cuts() {
    let (a, b) = (f("p & q"), f("p | q"));
    let all = enumerate_interpolants(&a, &b, 3).unwrap();
    assert_eq!(all.len(), 4);
    let e = enumerate_cutfree(&seq("p & q ; => ; p | q"), System::LKminus, 5);
    let reached: Vec<&Formula> = all.iter().filter(|c| e.interpolants.iter().any(|m| equiv(m, c).unwrap())).collect();
    assert_eq!(reached.len(), 2);
    for c in &all {
        let p = realize_interpolant(&a, &b, c, System::LKat).unwrap();
        check_proof(&p, System::LKat).unwrap();
        assert!(equiv(&interpolant(&p).unwrap(), c).unwrap());
    }
}

#[test]
fn clause_proofs_of_the_conjunction() {
    for (c, want) in [("p", "p"), ("q", "q")] {
        let clause = cls(c).into_iter().next().unwrap();
        let p = realize_clause(&f("p & q"), &clause).unwrap();
        check_proof(&p, System::LKlit).unwrap();
        assert!(equiv(&interpolant(&p).unwrap(), &f(want)).unwrap());
    }
}

#[test]
fn double_negation_is_reached_up_to_equivalence() {
    let p = realize_interpolant(&f("p"), &f("p"), &f("~~p"), System::LKat).unwrap();
    let m = interpolant(&p).unwrap();
    assert!(equiv(&m, &f("p")).unwrap());
}

#[test]
fn resolution_refutations_of_the_unit_clauses() {
    let left = ResolutionProof::parse("0: INPUT A {p}\n1: INPUT B {~p}\n2: RES 0 1 p\n").unwrap();
    let right = ResolutionProof::parse("0: INPUT A {q}\n1: INPUT B {~q}\n2: RES 0 1 q\n").unwrap();
    for (rp, want) in [(left, "p"), (right, "q")] {
        let c = interpolant_from_refutation(&rp, &Partition::from_proof(&rp)).unwrap();
        assert!(equiv(&c, &f(want)).unwrap());
    }
    let text = "0: INPUT A {p}\n1: WEAK 0 {q}\n2: INPUT B {~p}\n3: RES 1 2 p\n4: INPUT B {~q}\n5: RES 3 4 q\n";
    let rp = ResolutionProof::parse(text).unwrap();
    let part = Partition::from_clause_sets(&cls("p\nq"), &cls("~p\n~q"));
    let c = interpolant_from_refutation(&rp, &part).unwrap();
    assert!(equiv(&c, &f("p | q")).unwrap());
}

#[test]
fn pruned_interpolant_and_its_cut_free_shadow() {
    let (a, b) = (f("p & q"), f("p | q"));
    let cs = cls("p\nq");
    let p = realize_pruned(&a, &b, &cs).unwrap();
    assert!(is_tame(&p).unwrap().tame);
    assert_eq!(cnf(&interpolant(&p).unwrap()), cs);
    let free = pruned_subsumption_pipeline(&a, &b, &cs).unwrap();
    check_proof(&free, System::LKminus).unwrap();
    let m = cnf(&interpolant(&free).unwrap());
    assert!(m == cls("p") || m == cls("q"));
    assert!(subsumes(&cs, &m));
    assert!(realize_pruned(&a, &b, &cls("p q")).is_err());
}

#[test]
fn three_modal_interpolants() {
    let (a, b) = (f("[](p & q)"), f("[](p | q)"));
    for c in ["[](p & q)", "[](p | q)", "[]p & []q"] {
        verify_interpolant(&a, &b, &f(c), System::K).unwrap();
        let p = realize_interpolant(&a, &b, &f(c), System::K).unwrap();
        check_proof(&p, System::K).unwrap();
    }
}
