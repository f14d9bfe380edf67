use craig::construct::{prove_cutfree, realize_interpolant};
use craig::formulas::{
    clause_set_formula, cnf, entails, enumerate_interpolants, equiv, parse_formula, satisfiable, subsumes, valid,
    Formula,
};
use craig::gen;
use craig::maehara::{check_sequent_interpolant, interpolant};
use craig::resolution::{interpolant_from_refutation, Partition};
use craig::sequent::{check_proof, Proof, System};
use craig::transform::{eliminate_cuts, is_w_reduced, w_reduce};
use proptest::prelude::*;

fn formula(modal: bool) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |s| gen::formula(&mut gen::rng(s), &gen::atoms(3), 4, modal))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_parses_back(f in formula(true)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nnf_and_cnf_are_equivalent(f in formula(false)) {
        prop_assert!(f.nnf().is_nnf());
        prop_assert!(equiv(&f.nnf(), &f).unwrap());
        prop_assert!(equiv(&clause_set_formula(&cnf(&f)), &f).unwrap());
    }

    #[test]
    fn prover_agrees_with_truth_tables(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::formula(&mut rng, &gen::atoms(3), 3, false);
        let s = craig::sequent::SplitSequent::new(vec![], vec![], vec![a.clone()], vec![]);
        match prove_cutfree(&s, System::LKminus) {
            Ok(p) => {
                prop_assert!(valid(&a).unwrap());
                check_proof(&p, System::LKminus).unwrap();
            }
            Err(_) => prop_assert!(!valid(&a).unwrap()),
        }
    }

    #[test]
    fn resolution_interpolants_separate(seed in any::<u64>()) {
        let (a, b, rp) = gen::partitioned_unsat(&mut gen::rng(seed), 5, 8);
        let part = Partition::from_clause_sets(&a, &b);
        let c = interpolant_from_refutation(&rp, &part).unwrap();
        prop_assert!(c.vars().is_subset(&part.shared));
        prop_assert!(entails(&clause_set_formula(&a), &c).unwrap());
        prop_assert!(!satisfiable(&Formula::and(clause_set_formula(&b), c)).unwrap());
    }

    #[test]
    fn maehara_interpolants_interpolate(seed in any::<u64>(), k in 0usize..3) {
        let sys = [System::LKminus, System::LKat, System::LKmono][k];
        let p = gen::checked_proof(&mut gen::rng(seed), sys);
        let m = interpolant(&p).unwrap();
        prop_assert!(check_sequent_interpolant(&p.seq, &m, sys).is_ok());
        prop_assert!(m.size() <= p.size());
    }

    #[test]
    fn proofs_print_and_parse(seed in any::<u64>()) {
        let p = gen::checked_proof(&mut gen::rng(seed), System::LKmono);
        prop_assert_eq!(Proof::parse(&p.to_sexpr()).unwrap(), p);
    }

    #[test]
    fn weakenings_move_up(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let p = gen::checked_proof(&mut rng, System::LKmono);
        let p = p.weaken(craig::sequent::Part::G2, gen::formula(&mut rng, &gen::atoms(3), 2, false));
        let q = w_reduce(&p);
        prop_assert!(is_w_reduced(&q));
        prop_assert_eq!(&q.seq, &p.seq);
        prop_assert_eq!(interpolant(&q).unwrap(), interpolant(&p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn every_interpolant_is_realized(seed in any::<u64>()) {
        let (a, b) = gen::valid_implication(&mut gen::rng(seed), 3, 3);
        for c in enumerate_interpolants(&a, &b, 3).unwrap() {
            let p = realize_interpolant(&a, &b, &c, System::LKat).unwrap();
            check_proof(&p, System::LKat).unwrap();
            prop_assert!(equiv(&interpolant(&p).unwrap(), &c).unwrap());
        }
    }

    #[test]
    fn cut_elimination_only_strengthens(seed in any::<u64>()) {
        let (a, b, cs) = gen::pruned_instance(&mut gen::rng(seed), 3, 3);
        let p = craig::construct::realize_pruned(&a, &b, &cs).unwrap();
        let e = eliminate_cuts(&p).unwrap();
        prop_assert!(e.proof.is_cut_free());
        prop_assert!(e.subsumption_chain());
        prop_assert!(subsumes(&cs, &cnf(&interpolant(&e.proof).unwrap())));
    }
}
