//! Kauffman states, Alexander polynomials, signatures and certified values of
//! the concordance invariant τ for knot diagrams.

pub mod alexander;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod filtered;
pub mod laurent;
pub mod linalg;
pub mod report;
pub mod seifert;
pub mod signature;
pub mod states;
pub mod tau;

pub use diagram::{parse_pd, DecoratedDiagram, EdgeId, PlanarDiagram};
pub use error::Error;
pub use filtered::FilteredComplex;
pub use laurent::LaurentPoly;
pub use states::KauffmanState;
pub use tau::{certify, Hints, TauCertificate};
