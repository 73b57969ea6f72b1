//! Krull-Schmidt decompositions, the fusion table and tensor powers.

mod decomposition;
pub mod fusion;
pub mod krull_schmidt;
pub mod power;

pub use decomposition::Decomposition;
pub use fusion::FusionTable;
pub use krull_schmidt::{krull_schmidt, Decomposer};
pub use power::{
    b_n, b_sequence, beta_estimate, tensor_power_decomposition, tensor_power_decomposition_with,
    PowerStrategy,
};
