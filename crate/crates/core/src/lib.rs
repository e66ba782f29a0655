//! Exceptional objects, strong pairs and noncommutative curve counts for
//! hereditary path algebras of acyclic quivers.

pub mod error;
pub mod exc;
pub mod linalg;
pub mod nc;
pub mod quiver;
pub mod rep;
pub mod weight;

pub use error::{NcError, Result};
pub use exc::{enumerate_exceptional, DerivedObject, Enumeration, ExcCollection};
pub use nc::{
    count_Cl, decide_embedding, find_strong_pairs, gram_witness_search, CountResult, Embedding, NcCurve,
    StrongPair,
};
pub use quiver::{DimVector, Quiver};
pub use rep::{RepMorphism, Representation};
pub use weight::WeightSequence;
