//! Phase-transition grids over `(n, d)` and their CSV / raster output.

pub mod grid;
pub mod output;

pub use grid::{run_phase_grid, run_trial, CellResult, Construction, PhaseGridConfig, Shortcut};
pub use output::{
    emit_csv, emit_heatmap, palette, parse_csv, read_csv, render_heatmap, write_csv, write_ppm, HeatmapOptions,
    Raster, CSV_HEADER,
};
