//! Real projective fractal interpolation.
//!
//! Arithmetic and metrics on the projective plane minus the hyperplane
//! `z = 0` ([`projective`]), projective intervals and sampled functions
//! ([`geometry`]), construction of the projective IFS from interpolation
//! data ([`rpifs`]), fixed points and attractors ([`engine`]), and file
//! export plus the command line ([`render`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod engine;
pub mod error;
pub mod geometry;
pub mod projective;
pub mod render;
pub mod rpifs;

pub use error::{Error, ErrorKind, Result};
pub use geometry::{ProjectiveInterval, ProjectiveRectangle, SampledGraph};
pub use projective::{AxisPoint01, AxisPoint10, ProjectivePoint};
pub use rpifs::{BuildOptions, ContractionCertificate, InterpolationData, ProjectiveMap, Rpifs};
