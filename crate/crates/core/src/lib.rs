//! Decoupling generator sets for stabilizer codes, the pulse sequences built
//! from them, and a dense-matrix verifier.

mod bigint_serde;
pub mod codes;
pub mod ddgs;
pub mod error;
pub mod pauli;
pub mod sequences;
pub mod verifier;

pub use codes::{lookup, CodeSpec};
pub use ddgs::{DdgsResult, Family};
pub use error::{Error, Result};
pub use pauli::{GeneratorSet, PauliOperator};
pub use sequences::PulseSequence;
