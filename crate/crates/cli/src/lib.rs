//! Library side of the `pg-cubic` command-line tool: configuration,
//! output formatting, subcommand implementations and verification suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use pg_cubic::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Exit code for a library error: configuration problems are usage errors,
/// everything else means the input lies outside the supported domain.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}
