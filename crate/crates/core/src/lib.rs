pub mod calculus;
pub mod dual;
pub mod frt;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod rmatrix;
pub mod scalar;
