//! Planning library for energy-efficient IP-over-WDM core networks that use
//! XOR network coding at intermediate nodes of bidirectional traffic flows.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`net_model`] — topologies (NSFNET, USNET, regular shapes), hop metrics,
//!   amplifier counting, JSON import/export.
//! * [`traffic`] — time-of-day zone profiles and reproducible random demand
//!   matrices.
//! * [`routing`] — minimum-hop routing with distance tie-breaks, bidirectional
//!   route plans, coding-opportunity extraction, and a discrete-time XOR relay
//!   simulator.
//! * [`power`] — port/transponder accounting and total network power for the
//!   conventional and network-coded schemes, non-bypass and bypass layers,
//!   zero-padding and partitioning modes, plus port-ratio sweeps.
//! * [`analytics`] — closed-form power expressions, savings formulas,
//!   asymptotic limits, and upper/lower bounds.
//! * [`milp`] — solver-agnostic construction of the optimization model,
//!   LP-format export, solution verification, and a brute-force oracle for
//!   tiny instances.
//! * [`cli`] — batch commands wiring the pipeline into CSV/JSON artifacts;
//!   the `ncwdm` binary is a thin wrapper over this module.
//!
//! See the crate examples for one runnable program per capability.

pub mod analytics;
pub mod cli;
pub mod milp;
pub mod net_model;
pub mod power;
pub mod routing;
pub mod traffic;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// Invalid argument or configuration value.
    Parameter(String),
    /// Topology invariant violation (self loop, duplicate link, bad ids, ...).
    Topology(String),
    /// Graph is disconnected or a node is unreachable.
    Connectivity(String),
    /// Internal consistency failure (e.g. link load exceeds sized capacity).
    Capacity(String),
    /// Instance exceeds the brute-force enumeration guard.
    InstanceTooLarge(String),
    /// File/parse problem, with the offending path or line.
    Io(String),
    /// Solution file fails verification against the model.
    Solution(String),
    /// A validation check failed.
    Validation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::Topology(m) => write!(f, "topology error: {m}"),
            Error::Connectivity(m) => write!(f, "connectivity error: {m}"),
            Error::Capacity(m) => write!(f, "capacity error: {m}"),
            Error::InstanceTooLarge(m) => write!(f, "instance too large: {m}"),
            Error::Io(m) => write!(f, "io error: {m}"),
            Error::Solution(m) => write!(f, "solution error: {m}"),
            Error::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
