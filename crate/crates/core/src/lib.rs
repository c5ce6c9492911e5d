//! Space-filling scan trajectories over 2D parameter grids, and what they
//! buy you.
//!
//! The crate revolves around one comparison: when a probe walks a square
//! grid, the order of the walk decides how correlated consecutive readings
//! are. A raster scan tears across the window once per row; a Hilbert-curve
//! scan stays local, so slowly varying signals produce slowly varying
//! series. The modules cover the pieces of that story:
//!
//! - [`sfc`]: curve codec, trajectory generation, path lengths;
//! - [`dipole`]: a dipole-array field to scan, plus a resonance readout
//!   driven along a trajectory;
//! - [`analysis`]: series extraction, autocorrelation estimators, and the
//!   bundled reference comparison;
//! - [`tour`]: curve-ordered tours through scattered points against exact
//!   and statistical baselines;
//! - [`pulse`]: two-level pulse propagators and a scan-driven search over
//!   drive amplitudes;
//! - [`export`]: CSV/PGM emitters;
//! - [`rng`], [`par`]: seeded randomness and the parallel map that backs
//!   the per-cell loops.
//!
//! Everything randomized takes an explicit seed and reruns bit-identically,
//! with or without the `parallel` feature (enabled by default).

pub mod analysis;
pub mod dipole;
pub mod error;
pub mod export;
pub mod par;
pub mod pulse;
pub mod rng;
pub mod sfc;
pub mod tour;

pub use analysis::{
    autocorrelation, read_along, smoothness_summary, table1_experiment, table1_reference,
    AutocorrMode, AutocorrSeries, ScanSeries, SmoothnessSummary, Table1Report, REFERENCE_HILBERT,
    REFERENCE_LINEAR,
};
pub use dipole::{
    corner_dipoles, dipole_field_at, reference_config, reference_config_at, sample_field_map,
    simulate_resonance_scan, Dipole, FieldComponent, FieldConfig, FieldMap, ResonanceModel,
    ResonanceScan, SINGULARITY_LIMIT,
};
pub use error::{Error, Result};
pub use export::FloatFormat;
pub use pulse::{
    compose_sequence, control_scan_search, coupling_integral, pulse_unitary, FieldSegment,
    Matrix2, PulseSpec, PulseTrain, ScanSearchParams, SearchTrace,
};
pub use rng::SplitMix64;
pub use sfc::{
    generate_trajectory, hilbert_cell_to_index, hilbert_index_to_cell, polyline_length, CurveOrder,
    GridCell, ScanKind, Trajectory,
};
pub use tour::{
    bohr_jump_points, brute_force_tsp, etsp_estimate, hilbert_order_tour, tour_length, JumpPoints,
    JumpSpec, LevelPair, PointSet, Region, Tour, TOUR_LENGTH_COEFFICIENT,
};
