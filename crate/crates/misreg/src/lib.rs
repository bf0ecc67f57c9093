//! File formats, certificate IO and the `misreg` command line on top of
//! [`misreg_core`].

pub mod cli;
pub mod format;
pub mod io;

pub use misreg_core as core;
