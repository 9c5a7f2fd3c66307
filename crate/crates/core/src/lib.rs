//! Einstein gyrovector geometry in the Beltrami-Klein ball.
//!
//! Circumgyrocircles, gyrobarycentric coordinates, tangents and the power
//! of a point, with Euclidean counterparts for the s → ∞ limit.

pub mod cevian;
pub mod circle;
pub mod einstein;
mod error;
pub mod euclid;
pub mod gyrobary;
pub mod triangle;

pub use einstein::{BallPoint, Gamma, ModelParams};
pub use error::{GeomError, Result};
pub use gyrobary::{GyroBaryRep, Weights3};
