//! Rate-region computation for two-user cognitive interference channels.
//!
//! The crate has three computational layers:
//!
//! - [`geometry`]: 2-D rate-region set algebra. Regions are stored as
//!   downward-closed envelopes (max `R2` as a function of `R1`) or as
//!   half-plane systems, with union, convex hull, containment and
//!   distance operations.
//! - [`fm`]: numeric Fourier-Motzkin elimination and projection of
//!   half-plane systems, with LP-certified redundancy removal and an
//!   exact-rational mode used as a test oracle.
//! - [`gaussian`], [`discrete`], [`search`]: the channel evaluators.
//!   `gaussian` holds closed-form evaluators for the Gaussian cognitive
//!   Z interference channel (inner regions, outer bounds, corner points,
//!   regime thresholds); `discrete` holds a finite-alphabet probability
//!   engine and the inequality systems of the discrete memoryless
//!   interference channel with degraded message sets; `search` traces
//!   region frontiers by optimizing over input distributions.

pub mod discrete;
pub mod fm;
pub mod gaussian;
pub mod geometry;
pub mod search;

mod simplex;

pub use geometry::{Envelope, HalfPlaneSystem, RatePair};
