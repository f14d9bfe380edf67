//! Craig interpolation for resolution refutations and split-sequent proofs.

pub mod formulas;
pub mod resolution;
pub mod sequent;
pub mod construct;
pub mod maehara;
pub mod transform;
pub mod gen;

#[cfg(doctest)]
mod book {
    use doc_comment::doc_comment;

    doc_comment!(include_str!("../../../book/src/intro.md"));
    doc_comment!(include_str!("../../../book/src/formulas.md"));
    doc_comment!(include_str!("../../../book/src/resolution.md"));
    doc_comment!(include_str!("../../../book/src/sequents.md"));
    doc_comment!(include_str!("../../../book/src/maehara.md"));
    doc_comment!(include_str!("../../../book/src/transform.md"));
    doc_comment!(include_str!("../../../book/src/construct.md"));
    doc_comment!(include_str!("../../../book/src/cli.md"));
}
