//! Command-line front end for `fusionloc-core`: group input, corpus
//! registry, reports and exports.

pub mod classify;
pub mod commands;
pub mod export;
pub mod input;
pub mod render;
pub mod report;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 2;
pub const EXIT_INPUT_ERROR: u8 = 3;
