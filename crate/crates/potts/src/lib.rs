//! File formats, the experiment harness and the command-line front end for
//! the hidden Potts model pipeline in [`potts_core`].

pub mod cli;
pub mod experiments;
pub mod formats;
