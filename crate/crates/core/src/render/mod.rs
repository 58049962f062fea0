//! Job files, figure export and the command-line interface.

pub mod cli;
pub mod config;
pub mod export;

pub use cli::{cli_main, cli_main_with};
pub use config::{emit_config, parse_config, ChaosParams, JobSpec, OutputPaths, Viewport};
pub use export::{
    parse_polyline, pixel_of, point_cloud_csv, rasterize, vector_polyline, write_point_cloud_csv,
    write_raster, write_vector_polyline, ArtifactKind, FigureArtifact, Raster,
};
