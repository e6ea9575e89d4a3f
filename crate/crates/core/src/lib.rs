//! Adaptive learning-program engine: catalog model, XML formats,
//! prerequisite graphs, the exact program solver, skill queries, agent
//! sessions and the experiment harness.

pub mod harness;
pub mod model;
pub mod ontology;
pub mod sdg;
pub mod session;
pub mod skills;
pub mod solver;

pub use model::{
    effective_bandwidth, validate_catalog, Catalog, DeviceProfile, LearningObject, MediaSet,
    ObjectId, SessionEnvironment, Skill, Subject, SubjectId, UserProfile, ValidationReport,
    Violation,
};
pub use sdg::{build_sdg, topological_order, SdgError, SubjectDependencyGraph};
pub use solver::{
    brute_force_blp, check_program, filter_feasible, plan_program, solve_blp, FeasibleChoiceTable,
    InfeasibilityDiagnosis, LearningProgram, PlanError,
};
