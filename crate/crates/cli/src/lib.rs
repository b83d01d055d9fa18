//! Command implementations behind the `g31x` binary.

pub mod args;
mod bounds;
mod info;
mod output;
mod peel;
mod verify;

use std::fmt;

pub use args::Cli;
use args::Command;
pub use output::format_g;

/// How a run can fail, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or arguments (exit 2).
    Config(String),
    /// Reading or writing files (exit 3).
    Io(String),
    /// A verification suite failed (exit 1).
    Verify(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Config(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<g31x_core::Error> for Failure {
    fn from(e: g31x_core::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info(a) => info::run(&a),
        Command::Bounds(a) => bounds::run(&a),
        Command::Peel(a) => peel::run(&a),
        Command::Verify(a) => verify::run(&a),
    }
}

/// Inclusive range `A:B` or `A:B:step`.
pub fn parse_range(s: &str, allow_step: bool) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Config(format!("bad range `{s}`"));
    let parts: Vec<usize> = s
        .split(':')
        .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (a, b, step) = match parts[..] {
        [a, b] => (a, b, 1),
        [a, b, step] if allow_step => (a, b, step),
        _ => return Err(bad()),
    };
    if a > b || step == 0 {
        return Err(Failure::Config(format!("empty range `{s}`")));
    }
    Ok((a..=b).step_by(step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:6", false).unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_range("0:10:5", true).unwrap(), vec![0, 5, 10]);
        assert!(parse_range("0:10:5", false).is_err());
        assert!(parse_range("5:4", false).is_err());
        assert!(parse_range("1:4:0", true).is_err());
        assert!(parse_range("x:4", false).is_err());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            Failure::Verify(String::new()).exit_code(),
            Failure::Config(String::new()).exit_code(),
            Failure::Io(String::new()).exit_code(),
        ];
        assert_eq!(codes, [1, 2, 3]);
    }
}
