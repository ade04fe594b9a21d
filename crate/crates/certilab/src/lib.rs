//! certilab: build, run, and attack one-bit local certifications of graph
//! colorability.
//!
//! The library provides the concrete graph families the arguments run on
//! (complete graphs, paths, cycles, and the `k`-regular necklace graphs),
//! brute-force coloring oracles used as ground truth, the certification
//! model (per-vertex bit-string certificates, identifier assignments,
//! radius-1 views, verifier execution), the positive schemes (`k`-coloring,
//! 2-coloring, distance-2 3-coloring), score-matrix analysis with collision
//! columns, and the constructive adversary that relabels the complete graph
//! so that no one-bit verifier can tell it apart from accepted instances.
//!
//! Everything is exact integer combinatorics at desk scale; exhaustive
//! sweeps back every claim the crate makes.

pub mod adversary;
pub mod certification;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod schemes;
pub mod score;
mod util;

pub use adversary::{
    anon_attack_sweep, anon_no_instance, check_view_coverage, id_attack_sweep, id_no_instance,
    id_yes_instances, verifier_census, AnonAttackReport, CensusReport, CoverageReport,
    IdAttackReport, IdBlockPlan, Instance, VertexCoverage,
};
pub use certification::{
    compute_view, enumerate_binary_labelings, enumerate_binary_table_verifiers,
    enumerate_degree_exact_verifiers, run_verifier, table_accepts_binary, verifier_accepts,
    BinaryLabeling, CertificateAssignment, Decision, IdAssignment, Label, LocalVerifier,
    TableVerifier, VerifierRun, View, MAX_SWEEP_VERTICES, MAX_TABLE_ENTRIES,
};
pub use coloring::{
    distance2_oracle, find_k_coloring, find_k_coloring_budgeted, is_distance2_3colorable,
    ColoringWitness, DEFAULT_NODE_BUDGET,
};
pub use error::{Error, Result};
pub use graph::{
    build_complete, build_cycle, build_necklace, build_path, random_connected_graph, Graph,
    NecklaceStructure,
};
pub use schemes::{
    dist2_3color_scheme, kcolor_scheme, kcolor_scheme_budgeted, scheme_by_name, two_color_scheme,
    Scheme,
};
pub use score::{
    collision_column_sweep, find_collision_column, score, score_matrix, CollisionColumn,
    CollisionSweepReport, ScoreMatrix,
};

/// Default seed for all randomized corpora; every randomized check is
/// reproducible from it.
pub const DEFAULT_SEED: u64 = 271828;
