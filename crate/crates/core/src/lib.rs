//! Upsilon of links and balanced spatial graphs, computed from grid diagrams
//! through the t-modified grid complex.

pub mod combinatorics;
pub mod complex;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod maps;
pub mod upsilon;
pub mod verify;

/// Exact rationals used for every grading.
pub type Q = num_rational::Rational64;

pub use complex::tcomplex::TParameter;
pub use diagram::{Axis, Cell, GridDiagram, Mode, MoveDescriptor};
pub use error::{GridError, Result};
pub use homology::dvr::ModuleDecomposition;

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_q(x: Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or an integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (b != 0).then(|| Q::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}
