//! Configuration, persistence and pinned constants.

mod config;
mod constants;
mod csv;
mod plot;
mod snapshot;

pub use config::{
    parse_config, parse_config_str, CalibrateBlock, CommutatorBlock, DataSection, DecayBlock, GridSection,
    GronwallBlock, LifespanBlock, ModelSection, RefinedBlock, RunConfig, ScalingBlock, StrichartzBlock,
};
pub use constants::PinnedConstants;
pub use csv::{
    fmt_f64, read_csv, write_csv, write_decay_csv, write_sweep_csv, write_trajectory_csv, CsvTable, DECAY_COLUMNS,
    SCHEMA_VERSION, SWEEP_COLUMNS, TRAJECTORY_COLUMNS,
};
pub use plot::{emit_plot_data, PlotSidecar};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, SnapshotHeader, SNAPSHOT_VERSION};
