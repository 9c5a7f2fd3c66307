//! Batch front end for `gyrogeom`: a JSON scene goes in, JSON results
//! and an optional SVG drawing of the Klein disk come out.

pub mod exec;
pub mod render;
pub mod scene;

pub use exec::{emit, execute, QueryResult, ResultsDocument};
pub use render::{render_svg, RenderError};
pub use scene::{parse_scene, validate, Overrides, Query, Scene, SceneValidationError};
