//! Hilbert-style proofs for the explicit jstit logic.
//!
//! * [`match_axiom`] recognises instances of the axiom schemes.
//! * [`check_proof`] checks proofs with the S4 rule ([`Mode::Pi`]) or with
//!   the rule replaced by its axiom form ([`Mode::PiPrime`]).
//! * [`eliminate_s4`] turns the first kind of proof into the second.
//! * [`corpus`] holds checked derivations of the basic theorems.

mod builder;
mod check;
mod corpus;
mod cs;
mod eliminate;
mod proof;
mod schemes;

pub use builder::ProofBuilder;
pub use check::{check_proof, Rejection};
pub use corpus::{corpus, corpus_agents, corpus_entry, CorpusEntry};
pub use cs::{ConstantSpecification, CsError};
pub use eliminate::{eliminate_s4, LINES_PER_S4_STEP};
pub use proof::{Justification, Line, Proof, ProofFormatError};
pub use schemes::{
    instance, instance_with, instantiate, is_instance, match_axiom, match_bindings, nobody_proves,
    nobody_proves_instance, s4_axiom_instance, unproved_disjunction, unproven_disjunction,
    unproven_pairs, Bindings, Mode, SchemeId,
};
