pub mod autgroup;
pub mod geometry;
pub mod extension;
pub mod cli;
