//! The containment experiments: symbolic membership by vanishing orders,
//! the non-containment report, structural checks on the generators, and
//! the coefficient trace behind the non-membership argument.

mod containment;
mod structure;
mod trace;
mod vanishing;

pub use containment::{
    check_noncontainment, els_hh_bound, primes_congruent_one, Budgets, ContainmentOptions, ContainmentQuery,
    GroebnerCheck, NoncontainmentReport, OrdinaryAttempt, OrdinaryPart, OrdinaryVerdict, SymbolicPart, Timings,
    Verdict,
};
pub use vanishing::{symbolic_membership, vanishing_order, vanishing_order_with, Completion, FlatOrder, SymbolicMembership};
pub use structure::{
    run_structure_check, verify_cone_intersection, verify_generator_completeness, StructureCheck, StructureReport,
};
pub use trace::{proof_trace, LiteralPattern, Parity, ProofTrace, TraceStep, UniquenessScan};
