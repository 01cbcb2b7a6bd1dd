//! Grid chain complexes: CF⁻, its hat quotient, the symmetrized Alexander
//! grading and the t-modified complexes.

pub mod cf;
pub mod monomial;
pub mod symmetrize;
pub mod tcomplex;

pub use cf::{build_cf_minus, build_hat, collapse_u, CollapsedComplex, FilteredComplex};
pub use monomial::{Poly, UMonomial};
pub use tcomplex::{build_t_complex, formal_t_modify, GradedDvrComplex, TParameter};
