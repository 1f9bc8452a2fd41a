use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors shared by every module of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    ModulusMismatch { left: u32, right: u32 },
    InvalidModulus(u32),
    NotPrime(u32),
    /// A graph6 / edge-list / permutation string could not be decoded.
    Parse { offset: usize, message: String },
    InvalidGraph(String),
    Disconnected { unreachable: usize },
    NotDistanceRegular(String),
    NotHadamard,
    InvalidScheme(String),
    IndexOutOfRange { index: usize, bound: usize },
    InvalidPartition(String),
    NonUniformPartition { sizes: (usize, usize) },
    NotEquitable(String),
    /// A divisibility hypothesis failed: `modulus` does not divide `p[x][y][k] = value`.
    Divisibility { x: usize, y: usize, k: usize, value: u64, modulus: u32 },
    NotSelfOrthogonal,
    DegreeMismatch { expected: usize, found: usize },
    InvalidPermutation(String),
    EmptyCode,
    TooLarge { what: &'static str, required: u128, cap: u128 },
    NoCodewords { weight: usize },
    TooFewCodewords,
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "{op}: dimension mismatch {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::ModulusMismatch { left, right } => write!(f, "modulus mismatch: {left} vs {right}"),
            Error::InvalidModulus(m) => write!(f, "modulus must be at least 2, got {m}"),
            Error::NotPrime(m) => write!(f, "{m} is not prime"),
            Error::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::Disconnected { unreachable } => {
                write!(f, "graph is disconnected (vertex {unreachable} unreachable from 0)")
            }
            Error::NotDistanceRegular(msg) => write!(f, "not distance-regular: {msg}"),
            Error::NotHadamard => write!(f, "matrix is not a Hadamard matrix"),
            Error::InvalidScheme(msg) => write!(f, "invalid association scheme: {msg}"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (must be below {bound})")
            }
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::NonUniformPartition { sizes } => write!(
                f,
                "partition cells must have the same length (found sizes {} and {})",
                sizes.0, sizes.1
            ),
            Error::NotEquitable(msg) => write!(f, "partition is not equitable: {msg}"),
            Error::Divisibility { x, y, k, value, modulus } => write!(
                f,
                "divisibility hypothesis fails: {modulus} does not divide p_{{{x},{y}}}^{k} = {value}"
            ),
            Error::NotSelfOrthogonal => write!(f, "generator matrix is not self-orthogonal"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::EmptyCode => write!(f, "code has no nonzero codewords"),
            Error::TooLarge { what, required, cap } => {
                write!(f, "{what} too large: requires {required}, cap is {cap}")
            }
            Error::NoCodewords { weight } => write!(f, "no codewords of weight {weight}"),
            Error::TooFewCodewords => write!(f, "subspace code needs at least two codewords"),
            Error::Inconsistent(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
