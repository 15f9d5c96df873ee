//! Exact dense and sparse linear algebra over big integers and rationals.

mod intertwiner;
mod matrix;
mod sparse;

pub use intertwiner::{
    find_invertible_intertwiner, intertwiner_space, intertwines, to_integer_matrix, IntertwinerProblem,
    InvertibleIntertwiner, SearchOptions, DEFAULT_SEED,
};
pub use matrix::Matrix;
pub use sparse::SparseEchelon;
