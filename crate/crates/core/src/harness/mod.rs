//! Random model generation, soundness fuzzing, the validator mutation suite
//! and the two built-in demonstrations.

mod demos;
mod fuzz;
mod gen;
mod mutate;
mod random;

pub use demos::{
    fmp_demo, prop1_agents, prop1_history_label, prop1_quotient, sample_params, FmpReport, FMP_FORMULA,
    PROP1_ANTECEDENT, PROP1_FORMULA, PROP1_QUOTIENT, PROP1_WITNESS,
};
pub use fuzz::{fuzz, soundness_fuzz, Finding, FuzzOptions, FuzzReport};
pub use gen::{
    evidence_base, evidence_universe, gen_cs_normal_model, gen_description, gen_model, is_cs_normal, EvidenceMode,
    GenError, GenParams,
};
pub use mutate::{mutate, mutation_suite, mutation_summary, scripted_mutation, MutationOutcome, MUTATION_TARGETS};
pub use random::{random_formula, random_instance, Pools};
