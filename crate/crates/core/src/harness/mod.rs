//! Synthetic corpora and the selection-fraction experiments.

mod corpus;
mod experiment;

pub use corpus::{generate_corpus, subject_id, CorpusSpec, CorpusSpecError, DEFAULT_SEED};
pub use experiment::{
    generate_population, run_bandwidth_sweep, run_bandwidth_sweep_with, run_device_matrix,
    run_device_matrix_with, solve_population, sweep_points, PopulationSpec, Regime,
    SelectionFractionReport, SelectionFractionRow, SyntheticUser, Typology, CSV_HEADER,
};
