pub mod bessel;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod incident;
pub mod kernels;
pub mod linalg;
pub mod oracle;
pub mod representation;
pub mod scenario;
pub mod solver;
pub mod verify;
