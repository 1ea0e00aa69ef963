pub mod base;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod division;
pub mod error;
pub mod etale;
pub mod hermitian;
pub mod involution;
pub mod matrix;
pub mod morita;
pub mod numeric;
pub mod quadratic;
pub mod relative;
pub mod report;
pub mod scenario;
pub mod signature;
pub mod transfer;

pub use error::{Error, Result};
