//! Command implementations behind the `slicekit` binary. Each command
//! returns a plain report struct; [`render`] turns reports into text and
//! [`records`] defines the line-oriented machine format.

pub mod commands;
pub mod input;
pub mod records;
pub mod render;

use std::fmt;

use clap::ValueEnum;

/// Output style.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Records,
}

/// Process exit status for each kind of outcome.
pub mod exit {
    pub const OK: u8 = 0;
    /// The question has a negative answer: not A-valued, no counterexample,
    /// junta bound violated.
    pub const NEGATIVE: u8 = 1;
    /// Malformed flags, files or parameters.
    pub const INPUT: u8 = 2;
    /// A size guard refused the computation.
    pub const GUARD: u8 = 3;
}

/// An error that already knows its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: exit::INPUT,
            message: message.into(),
        }
    }

    pub fn negative(message: impl Into<String>) -> Self {
        Self {
            code: exit::NEGATIVE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Exit status for an error bubbling out of a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use slicekit::Error;
    if let Some(f) = err.downcast_ref::<Failure>() {
        return f.code;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::DomainTooLarge { .. }) => exit::GUARD,
        Some(Error::NotAValued { .. } | Error::NoCounterexample { .. }) => exit::NEGATIVE,
        _ => exit::INPUT,
    }
}
