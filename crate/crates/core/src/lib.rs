//! Equational reasoning about algebras of binary relations with domain,
//! range and composition, read either angelically (ordinary relational
//! composition, with union) or demonically.
//!
//! - [`term`]: syntax, join normal form, out-signatures.
//! - [`relation`]: concrete relations and term evaluation.
//! - [`term_graph`] and [`decision`]: the homomorphism-based decision
//!   procedure for the angelic signature, with counterexample models.
//! - [`axioms`]: both axiom catalogs, soundness scans, cycle-freeness checks.
//! - [`saturation`]: finite stages of the labelled-graph completeness construction.
//! - [`algebra`] and [`demonic_repr`]: finite `(∗, D, R)` algebras, their
//!   enumeration, and the partial-map representation with range-defect repair.
//! - [`cli`]: the command-line front end.

pub mod error;
pub mod term;
pub mod relation;
pub mod term_graph;
pub mod decision;
pub mod algebra;
pub mod axioms;
pub mod saturation;
pub mod demonic_repr;
pub mod cli;
mod union_find;
#[cfg(test)]
mod strategies;

pub use error::{Error, Result};
pub use term::{format_term, join_normal_form, out_signature, parse_term, OutSignature, Term};
pub use relation::{check_equation, eval, random_model, relational_ops, EquationReport, Mode, RelOp, Relation, RelationalModel};
pub use term_graph::{build_term_graph, graph_compose, graph_to_model, hom_exists, TermGraph, VertexMap};
pub use decision::{certify, decide_eq, decide_leq, Decider, Verdict};
pub use union_find::UnionFind;
pub use algebra::{enumerate_algebras, enumerate_algebras_with, EnumerationConfig, EnumerationOutcome, FiniteAlgebra, Law};
pub use axioms::{
    angelic_counterexample_to_demonic_axiom, check_cycle_free, completeness_smoke, soundness_scan, AxiomCatalog, CatalogName,
    ScanConfig, ScanReport,
};
pub use saturation::{coherence_check, init_graph, run_saturation, step_comp, step_dom, step_ran, LabelledGraph, Scheduler};
pub use demonic_repr::{
    forward_closure, range_defects, repair_round, verify_partial_repr, wagner_preston, PartialMapRepr, RangeDefect, RepairMode,
};
