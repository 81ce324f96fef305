//! Sweep maps, resonance tables, and level curves over the theory engine in
//! `nvmix-core`, plus the file formats they are written to.
//!
//! Everything here is driven by a TOML configuration with explicit units on
//! every physical entry; see the repository README for the schema.

pub mod antenna;
pub mod config;
pub mod emit;
pub mod error;
pub mod render;
pub mod sweep;
pub mod units;

pub use error::{AppError, AppResult};
