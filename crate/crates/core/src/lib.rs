//! Executable explicit justification stit logic.
//!
//! * [`syntax`]: proof polynomials and formulas, parser and printer.
//! * [`model`]: finite jstit models, their file format and the constraint validator.
//! * [`semantics`]: the satisfaction relation and model-wide validity.
//! * [`proofkit`]: axiom schemes, Hilbert proof checking, constant specifications,
//!   elimination of the S4 rule, and a corpus of checked derivations.
//! * [`harness`]: random model generation, soundness fuzzing and the two
//!   built-in demonstrations (the dense-time countermodel and the failure of
//!   the finite model property).
//! * [`cli`]: the `jstit` command line.

pub mod cli;
pub mod harness;
pub mod model;
pub mod proofkit;
pub mod semantics;
pub mod syntax;
