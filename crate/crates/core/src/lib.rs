pub mod error;
pub mod cli;
pub mod corpus;
pub mod exactnum;
pub mod groupkit;
pub mod plane;
pub mod polyring;
pub mod qgal;

pub use error::{Error, Result};
