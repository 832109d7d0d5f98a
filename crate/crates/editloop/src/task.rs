//! The three editing tasks and the method/mode axes shared across the crate.

use std::fmt;
use std::str::FromStr;

/// One of the three arithmetic editing tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    /// Operator restoration: numbers in, valid equation out (short-to-long).
    Aor,
    /// Equation simplification: bracketed form in, paren-free form out
    /// (long-to-short).
    Aes,
    /// Equation correction: up to three token errors repaired (mixed).
    Aec,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::Aor, Task::Aes, Task::Aec];

    /// Fixed token length of an encoded editing action for this task.
    pub fn action_len(self) -> usize {
        match self {
            Task::Aor => 2,
            Task::Aes | Task::Aec => 3,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Aor => "aor",
            Task::Aes => "aes",
            Task::Aec => "aec",
        })
    }
}

impl FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aor" => Ok(Task::Aor),
            "aes" => Ok(Task::Aes),
            "aec" => Ok(Task::Aec),
            other => Err(format!("unknown task {other:?} (expected aor|aes|aec)")),
        }
    }
}

/// Inference method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    End2end,
    Tagging,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::End2end, Method::Tagging, Method::Recurrence];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::End2end => "end2end",
            Method::Tagging => "tagging",
            Method::Recurrence => "recurrence",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "end2end" => Ok(Method::End2end),
            "tagging" => Ok(Method::Tagging),
            "recurrence" => Ok(Method::Recurrence),
            other => Err(format!(
                "unknown method {other:?} (expected end2end|tagging|recurrence)"
            )),
        }
    }
}

/// Training mode: offline uses each method's static targets, online
/// resamples a partially edited state from the gold trace every epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Offline,
    Online,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Offline => "offline",
            Mode::Online => "online",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "offline" => Ok(Mode::Offline),
            "online" => Ok(Mode::Online),
            other => Err(format!("unknown mode {other:?} (expected offline|online)")),
        }
    }
}
