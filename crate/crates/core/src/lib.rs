//! Multi-robot path planning on graphs through time-expanded network flows
//! and integer programming.

pub mod cli;
pub mod error;
pub mod graph;
pub mod ilp;
pub mod instance;
pub mod oracle;
pub mod plan;
pub mod planner;
pub mod render;
pub mod rng;
pub mod solver;
pub mod timex;
pub mod validate;

pub use error::{Error, Result};
