use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    Token(String),
    #[error("invalid edge label {0}")]
    EdgeLabel(u32),
    #[error("edge {edge} appears {count} times (expected 2)")]
    EdgeMultiplicity { edge: u32, count: usize },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("inconsistent orientation at crossing {crossing}")]
    Orientation { crossing: usize },
    #[error("diagram has more than one component")]
    MultipleComponents,
    #[error("face count {faces} does not match {expected}; rotation data is not planar")]
    NonPlanar { faces: usize, expected: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("state sum is not symmetric: {0}")]
    Asymmetric(String),
    #[error("state sum evaluates to {0} at T = 1")]
    Normalization(i64),
    #[error("zero polynomial has no degree")]
    Zero,
    #[error("diagram has {0} crossings, above the skein budget of {1}")]
    Budget(usize, usize),
    #[error("{0} and {1} are not coprime integers >= 2")]
    TorusParameters(i64, i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("differential {from} -> {to} does not lower the Maslov grading by one")]
    Grading { from: String, to: String },
    #[error("differential {from} -> {to} raises the Alexander filtration")]
    Filtration { from: String, to: String },
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error("homology is not that of the unknot: {0}")]
    NotUnknotType(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TauError {
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("diagram is not reduced")]
    NotReduced,
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Tau(#[from] TauError),
    #[error("invalid corpus: {0}")]
    Corpus(String),
}
