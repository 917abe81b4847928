use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Carrier sizes must lie in `1..=256`.
    InvalidCarrier(String),
    ArityMismatch { expected: usize, found: usize },
    ElementOutOfRange { value: usize, carrier: usize },
    CarrierMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, arity: usize },
    TableLength { expected: usize, found: usize },
    /// A dense table of `carrier^arity` entries would not fit in memory.
    TableTooLarge { carrier: usize, arity: usize },
    /// Materializing a slice would exceed the configured enumeration cap.
    EnumerationTooLarge { arity: usize, cap: u128 },
    /// Neither backtracking (within its node budget) nor enumeration (within
    /// the cap) could produce the commutant slice.
    Intractable { arity: usize },
    AboveBound { arity: usize, bound: usize },
    EmptySubstitution,
    InvalidRig(String),
    InvalidGroup(String),
    InvalidAction(String),
    ShapeMismatch(String),
    /// A computed structure failed one of its own invariants.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCarrier(msg) => write!(f, "invalid carrier: {msg}"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::ElementOutOfRange { value, carrier } => {
                write!(f, "element {value} out of range for carrier of size {carrier}")
            }
            Error::CarrierMismatch { left, right } => {
                write!(f, "carrier mismatch: {left} vs {right}")
            }
            Error::IndexOutOfRange { index, arity } => {
                write!(f, "projection index {index} out of range for arity {arity}")
            }
            Error::TableLength { expected, found } => {
                write!(f, "table has {found} entries, expected {expected}")
            }
            Error::TableTooLarge { carrier, arity } => {
                write!(f, "table of {carrier}^{arity} entries is too large")
            }
            Error::EnumerationTooLarge { arity, cap } => {
                write!(f, "enumeration too large at arity {arity} (cap {cap})")
            }
            Error::Intractable { arity } => write!(f, "commutant slice intractable at arity {arity}"),
            Error::AboveBound { arity, bound } => {
                write!(f, "arity {arity} is above the bound {bound}")
            }
            Error::EmptySubstitution => {
                write!(f, "cannot infer the arity of an empty substitution")
            }
            Error::InvalidRig(msg) => write!(f, "invalid rig: {msg}"),
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::InvalidAction(msg) => write!(f, "invalid module action: {msg}"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
