//! Cut-free proof search and the constructions realizing prescribed
//! interpolants.

mod enumerate;
mod prover;
mod realize;

pub use enumerate::{enumerate_cutfree, Enumeration};
pub use prover::{prove_cutfree, provable, Countermodel, ProveError};
pub use realize::{
    conjoin, conjoin_with, pruned_subsumption_pipeline, realize_clause, realize_clause_in, realize_interpolant,
    realize_interpolant_with, realize_pruned, ConstructError, CMINUS_CAP,
};
