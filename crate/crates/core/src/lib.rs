pub mod blade;
pub mod dfs;
pub mod error;
pub mod linalg;
pub mod multivector;
pub mod parse;
pub mod reptheory;
pub mod scalar;
pub mod structure;
