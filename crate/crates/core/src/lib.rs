pub mod constants;
pub mod error;
pub mod radii;
pub mod specfun;
pub mod tables;
