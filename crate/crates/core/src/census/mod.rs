//! Exhaustive desk-scale census: enumeration, shape detection and the lemma
//! and theorem checks.

pub mod enumerate;
pub mod shapes;
pub mod verify;

pub use enumerate::{
    crossing_count, enumerate_polytopes, fold_polytopes, window_components, AnyPair, Classes, Coverage, CrossingCounts, EnumSpec,
    PairRule, SpecError,
};
pub use shapes::{bigon_label_sequence, chain_witness, detect_shapes, dot_existence_sequence, letters, Bigon, DotLetter, ShapeKind, ShapeWitness};
pub use verify::{
    audit_corners, census_records, check_diagram_lemmas, verify_lemmas, verify_theorem, Counterexample, InstanceRecord, LemmaVerdict,
    Theorem, VerificationReport,
};
