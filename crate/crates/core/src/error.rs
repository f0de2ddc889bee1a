use thiserror::Error;

/// Reason a channel error pattern was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternViolation {
    #[error("pattern length {got} does not match run count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("pattern touches {got} runs, channel allows at most {limit}")]
    SupportTooLarge { got: usize, limit: usize },
    #[error("entry {index} deletes {magnitude} bits, channel allows at most {limit} per run")]
    MagnitudeTooLarge {
        index: usize,
        magnitude: u64,
        limit: u64,
    },
    #[error("entry {index} deletes {magnitude} bits from a run holding only {available} deletable bits")]
    WholeRunDeleted {
        index: usize,
        magnitude: u64,
        available: u64,
    },
}

/// Stage at which a decoder gave up. Decode failure is a first-class
/// outcome: within the channel promise decoding is guaranteed, so any
/// failure means the promise was violated (or the word is not ours).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    #[error("no codeword within the decoding radius")]
    BchUncorrectable,
    #[error("corrected symbols fall outside the data region")]
    PaddingCorrupted,
    #[error("recovered magnitudes exceed the channel budget")]
    BudgetExceeded,
    #[error("reconstructed word is not a codeword")]
    NotACodeword,
    #[error("received word is too short for the declared code")]
    TooManyDeletions,
    #[error("redundancy markers not found while scanning for section boundaries")]
    MarkerNotFound,
    #[error("repetition segment is not consistent with any in-budget deletion")]
    RepetitionMalformed,
    #[error("balanced block is malformed: {0}")]
    BalanceMalformed(&'static str),
    #[error("zero-deletion label matched {candidates} reinsertion candidates")]
    LabelMismatch { candidates: usize },
    #[error("the {section} section has an impossible length")]
    SectionLength { section: &'static str },
    #[error("no run index satisfies the checksum congruence")]
    NoChecksumIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("word must end with bit 1")]
    NoTrailingOne,
    #[error("character {found:?} at position {position} is not '0' or '1'")]
    BadBit { position: usize, found: char },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {value} is not below the modulus {modulus}")]
    SymbolOutOfRange { value: u64, modulus: u64 },
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("designed distance {d} exceeds the code length {n}")]
    DistanceTooLarge { d: u64, n: u64 },
    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },
    #[error("invalid error pattern: {0}")]
    InvalidPattern(#[from] PatternViolation),
    #[error("decode failure: {0}")]
    Decode(#[from] DecodeFailure),
}

pub type Result<T> = std::result::Result<T, Error>;
