//! Library side of the command-line front end: sweep configuration, grid
//! evaluation, preset datasets, CSV emission, and the self-check suite.

pub mod config;
pub mod csvout;
pub mod figures;
pub mod selfcheck;
pub mod sweep;
