pub mod arith;
pub mod cone;
pub mod error;
pub mod process;
pub mod reach;
pub mod decomp;
pub mod spectral;
pub mod analysis;
pub mod sysio;
