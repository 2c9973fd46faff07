//! Catalytic embeddings of quantum circuits over exact cyclotomic arithmetic.

pub mod circuit;
pub mod companion;
pub mod compilers;
pub mod embed;
pub mod error;
pub mod exactmat;
pub mod numring;
pub mod sim;

pub use circuit::{Circuit, Gate, GateSet, PlacedOp, Program};
pub use compilers::{Catalyst, CompiledProgram, CostKind, CostReport};
pub use embed::{GateSetEmbedding, PreEmbedding};
pub use error::{Error, Result};
pub use exactmat::ExactMatrix;
pub use numring::{CycElement, GaloisAutomorphism, Polynomial, RingSpec, RingTower};
pub use sim::ExactState;
