//! Library side of the `hloc` command-line tool: spec-file parsing, report
//! rendering, the named scenario checks and the oracle corpus.

pub mod oracle_run;
pub mod report;
pub mod spec_file;
pub mod verify;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
}
