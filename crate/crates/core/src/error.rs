//! Error types for the library, grouped by subsystem.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("operator dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("gate qubit index {index} out of range for {qubits} qubits")]
    GateIndexOutOfRange { index: usize, qubits: usize },
    #[error("empty Pauli literal")]
    EmptyLiteral,
    #[error("invalid Pauli letter `{letter}`")]
    BadLetter { letter: char },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("generators {first} and {second} anticommute")]
    NonCommuting { first: usize, second: usize },
    #[error("generator {index} is dependent on the previous ones")]
    Dependent { index: usize },
    #[error("generator {index} carries an imaginary sign")]
    ImaginarySign { index: usize },
    #[error("membership operand carries an imaginary sign")]
    ImaginaryOperand,
    #[error("expected {expected} generators of width {expected}, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("edges `{first}` and `{second}` overlap on vertex {vertex}")]
    OverlappingEdges {
        first: String,
        second: String,
        vertex: usize,
    },
    #[error("vertex {vertex} is not covered by any edge")]
    UncoveredVertex { vertex: usize },
    #[error("vertex {vertex} is not owned by any party")]
    UnownedVertex { vertex: usize },
    #[error("vertex {vertex} is owned by both `{first}` and `{second}`")]
    DoublyOwnedVertex {
        first: String,
        second: String,
        vertex: usize,
    },
    #[error("edge `{edge}` names vertex {vertex} outside 0..{qubits}")]
    VertexOutOfRange {
        edge: String,
        vertex: usize,
        qubits: usize,
    },
    #[error("circuit of party `{party}` touches qubit {qubit} outside its scope")]
    CircuitOutOfScope { party: String, qubit: usize },
    #[error("weights of edge `{edge}` sum to {sum}, not 1")]
    BadWeights { edge: String, sum: String },
    #[error("source of edge `{edge}` has width {got}, expected {expected}")]
    SourceWidthMismatch {
        edge: String,
        got: usize,
        expected: usize,
    },
    #[error("label on edge `{edge}` names unknown party `{party}`")]
    UnknownLabelParty { edge: String, party: String },
    #[error("duplicate edge name `{name}`")]
    DuplicateEdgeName { name: String },
    #[error("duplicate party name `{name}`")]
    DuplicatePartyName { name: String },
    #[error("edge `{edge}` has no vertices")]
    EmptyEdge { edge: String },
    #[error("conditioning event has probability zero")]
    ZeroProbabilityEvent,
    #[error("outcome shape mismatch: {left} vs {right} bits")]
    ShapeMismatch { left: usize, right: usize },
    #[error("post map of party `{party}` has no entry for outcome `{key}`")]
    PostMapMiss { party: String, key: String },
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LhvError {
    #[error("spec is not canonical: {reason}")]
    NotCanonical { reason: String },
    #[error("spec contains a mixed source on edge `{edge}`")]
    MixedSourcePresent { edge: String },
    #[error("spec is not a 2-network (k = {k})")]
    NotTwoNetwork { k: usize },
    #[error("enumeration of {assignments} assignments exceeds the bound {bound}")]
    EnumerationTooLarge { assignments: u128, bound: u128 },
    #[error("outcome length {len} exceeds the spectrum bound {bound}")]
    TooLong { len: usize, bound: usize },
    #[error("no sign-fixing operator exists; this indicates an internal bug")]
    Infeasible,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("left/right sets do not partition the source qubits")]
    BadPartition,
    #[error(transparent)]
    Lhv(#[from] LhvError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{qubits} qubits exceed the dense-simulation bound {bound}")]
    TooManyQubits { qubits: usize, bound: usize },
    #[error("channel is not trace preserving (deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },
    #[error("channel is not completely positive (min Choi eigenvalue {eigenvalue:e})")]
    NotCompletelyPositive { eigenvalue: f64 },
    #[error("channel file: {0}")]
    BadChannelFile(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// A parse failure with a 1-based line number when one is known.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error{}: {message}", line.map(|l| format!(" at line {}", l)).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn other(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }

    pub fn with_line(self, line: usize) -> Self {
        ParseError {
            line: Some(self.line.unwrap_or(line)),
            message: self.message,
        }
    }
}
