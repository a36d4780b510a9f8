//! File formats, rendering, random instances and the command-line front end
//! for [`relsmooth_core`].

pub use relsmooth_core as core;

pub mod cli;
pub mod dot;
pub mod generate;
pub mod inline;
pub mod io;
pub mod parallel;
