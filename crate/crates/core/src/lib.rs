//! Projective dimension, regularity and depth of edge ideals of
//! vertex-weighted oriented graphs.
//!
//! Two independent routes are provided: closed forms for stars, rooted
//! forests and oriented cycles ([`formula`]), and a brute-force graded Betti
//! table computed from the Taylor complex ([`betti`]). The [`splitting`]
//! module replays the recursive Betti-splitting evaluation that connects the
//! two and records it as a certificate.

pub mod betti;
pub mod error;
pub mod families;
pub mod formula;
pub mod graph;
pub mod linalg;
pub mod monomial;
pub mod polarization;
pub mod splitting;

pub use betti::{
    betti_table, has_linear_resolution, invariants_from_table, BettiTable, Field, Invariants,
    OracleConfig,
};
pub use error::{Error, Result};
pub use formula::{
    coprime_scale, cycle_formula, disjoint_combine, evaluate_formula, forest_formula,
    oracle_report, star_formula, InvariantReport,
};
pub use graph::{
    classify, edge_ideal, normalize_source_weights, parse_graph, Classification, FamilyTag,
    GraphWarning, WeightedOrientedGraph,
};
pub use monomial::{minimalize, Monomial, MonomialIdeal, VarSet};
pub use polarization::{polarize, PolarizedIdeal};
pub use splitting::{
    family_certificate, find_split, split_eval, verify_splitting, CertNode, SplitOptions,
    SplittingCertificate,
};
