use alloc::string::String;

/// Errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A chain profile was empty or contained a zero.
    #[error("invalid chain profile: {0}")]
    InvalidProfile(String),
    /// An argument violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A search would exceed its configured budget.
    #[error("budget exceeded: needs {needed}, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    /// An internal cross-check failed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! contract {
    ($($arg:tt)*) => {
        $crate::Error::Contract(alloc::format!($($arg)*))
    };
}

macro_rules! inconsistency {
    ($($arg:tt)*) => {
        $crate::Error::Inconsistency(alloc::format!($($arg)*))
    };
}

pub(crate) use {contract, inconsistency};
