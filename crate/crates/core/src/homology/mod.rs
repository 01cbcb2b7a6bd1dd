pub mod dvr;
pub mod gf2;

pub use dvr::{dvr_reduce, ModuleDecomposition};
pub use gf2::{gf2_homology, FiniteComplex};
