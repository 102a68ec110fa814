//! Decide whether a graph has a matching cut.
//!
//! A matching cut is a partition of the vertices into two non-empty sides
//! such that the crossing edges form a matching: no vertex has two neighbors
//! on the other side. Deciding existence is NP-complete in general, but this
//! crate ships polynomial deciders for two structured classes, an exact
//! fallback for everything else, and generators that produce hard instances
//! of prescribed diameter from arbitrary source graphs.
//!
//! Entry points:
//! - [`dispatch`] picks the right decider for a graph and returns a
//!   [`Verdict`] with a verified witness on yes-instances.
//! - [`solve_diameter2`] handles connected graphs of diameter at most 2.
//! - [`solve_bipartite_diam3_phase1`] / [`solve_bipartite_diam3_phase2`]
//!   handle connected bipartite graphs of diameter at most 3.
//! - [`solve_exact`] is a branch-and-propagate search, correct on every
//!   graph, with a configurable resource budget.
//! - [`brute_force_oracle`] enumerates bipartitions outright; it is the
//!   ground truth the fast paths are tested against.
//! - [`gadget_diam3`], [`gadget_diam_d`], [`bipartite_gadget_diam4`] and
//!   [`bipartite_gadget_diam_d`] build matching-cut-equivalent instances of
//!   fixed diameter; [`lift_cut`] and [`project_cut`] transport witnesses
//!   across the constructions.

pub mod engine;
pub mod format;
pub mod graph;
pub mod random;
pub mod reductions;
pub mod solvers;
pub mod twosat;

pub use engine::{
    ab_matching_cut_via_2sat, brute_force_oracle, brute_force_oracle_capped,
    build_component_formula, count_matching_cuts, count_matching_cuts_capped, first_bad_p3,
    propagate, verify_matching_cut, ComponentFormula, Cut, EngineError, ForcingState,
    PropagationOutcome, Rule, RuleFiring, DEFAULT_ORACLE_CAP,
};
pub use format::{
    parse_cut, parse_graph, write_cut, write_graph, write_recipe, write_verdict, FormatError,
    FormatErrorKind,
};
pub use graph::{Bipartition, Diameter, Graph, GraphError};
pub use random::{bipartite_gnp, gnp, sample, GraphClass, RandomError, DEFAULT_SAMPLE_ATTEMPTS};
pub use reductions::{
    bipartite_gadget_diam4, bipartite_gadget_diam_d, build_chain, gadget_diam3, gadget_diam_d,
    lift_cut, project_cut, GadgetRecipe, ReductionError, Role,
};
pub use solvers::{
    dispatch, dispatch_with_config, solve_bipartite_diam3_phase1, solve_bipartite_diam3_phase2,
    solve_diameter2, solve_exact, solve_exact_with, ExactConfig, Method, Phase1Exhausted,
    Phase1Outcome, SolverError, Verdict,
};
pub use twosat::{Assignment, Lit, TwoSatError, TwoSatFormula};
