pub mod algebra;
pub mod characters;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod pipeline;
pub mod quaternion;
pub mod rng;
pub mod seminorm;
pub mod spectral;

pub use algebra::{AlgebraElement, FiniteDimRealAlgebra, Quotient, StructureConstant};
pub use error::{Error, Result};
pub use quaternion::Quaternion;
