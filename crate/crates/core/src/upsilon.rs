//! Υ(t), Υ′(t), sampled profiles and the slope at zero.

use crate::combinatorics::PreparedDiagram;
use crate::complex::cf::{cf_minus_prepared, FilteredComplex};
use crate::complex::symmetrize::{alexander_prime, symmetrize_prepared, Symmetrization};
use crate::complex::tcomplex::{build_t_complex_with, GradedDvrComplex, TParameter};
use crate::diagram::GridDiagram;
use crate::error::{GridError, Result};
use crate::homology::dvr::{dvr_reduce, ModuleDecomposition};
use crate::Q;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Largest accepted profile denominator.
pub const MAX_PROFILE_Q: i64 = 12;

/// Everything about one diagram that does not depend on `t`.
pub struct UpsilonEngine {
    pub diagram: GridDiagram,
    pub prepared: PreparedDiagram,
    pub cf: FilteredComplex,
    sym: OnceLock<Symmetrization>,
}

impl UpsilonEngine {
    pub fn new(g: &GridDiagram) -> Result<Self> {
        if let Some(why) = g.balance_violation() {
            return Err(GridError::Unbalanced(why));
        }
        if !g.every_component_starred() {
            return Err(GridError::Unsupported("every component needs an O*".into()));
        }
        let prepared = PreparedDiagram::new(g);
        let cf = cf_minus_prepared(&prepared);
        Ok(UpsilonEngine { diagram: g.clone(), prepared, cf, sym: OnceLock::new() })
    }

    pub fn symmetrization(&self) -> Result<&Symmetrization> {
        if let Some(s) = self.sym.get() {
            return Ok(s);
        }
        let s = symmetrize_prepared(&self.prepared, &self.cf)?;
        Ok(self.sym.get_or_init(|| s))
    }

    pub fn t_complex(&self, t: TParameter) -> Result<GradedDvrComplex> {
        build_t_complex_with(&self.prepared, t, &self.symmetrization()?.values)
    }

    /// Homology of the t-complex at exactly this `t` (no reflection).
    pub fn decomposition(&self, t: TParameter) -> Result<ModuleDecomposition> {
        dvr_reduce(&self.t_complex(t)?)
    }

    /// Υ(t); values above 1 are read off at `2 − t`.
    pub fn upsilon(&self, t: TParameter) -> Result<Q> {
        t.check_admissible(self.diagram.max_weight())?;
        let d = self.decomposition(t.reflect())?;
        d.max_free().ok_or_else(|| GridError::Invariant("homology has no free part".into()))
    }

    /// Υ′(t) of a tight link diagram, computed with the primed grading.
    pub fn upsilon_prime(&self, t: TParameter) -> Result<Q> {
        let a = alexander_prime(&self.diagram)?;
        let c = build_t_complex_with(&self.prepared, t.reflect(), &a)?;
        dvr_reduce(&c)?.max_free().ok_or_else(|| GridError::Invariant("homology has no free part".into()))
    }

    pub fn profile(&self, q: i64) -> Result<UpsilonProfile> {
        if !(1..=MAX_PROFILE_Q).contains(&q) {
            return Err(GridError::Inadmissible(format!("profile denominator must lie in 1..={MAX_PROFILE_Q}")));
        }
        let ts = TParameter::samples(q);
        let values: Vec<Q> = ts.par_iter().map(|&t| self.upsilon(t)).collect::<Result<_>>()?;
        Ok(UpsilonProfile::from_samples(ts.into_iter().zip(values).collect()))
    }
}

pub fn upsilon_at(g: &GridDiagram, t: TParameter) -> Result<Q> {
    t.check_admissible(g.max_weight())?;
    UpsilonEngine::new(g)?.upsilon(t)
}

pub fn upsilon_prime_at(g: &GridDiagram, t: TParameter) -> Result<Q> {
    if !g.is_tight_link() {
        return Err(GridError::Unsupported("Υ′ needs a tight link diagram".into()));
    }
    UpsilonEngine::new(g)?.upsilon_prime(t)
}

pub fn upsilon_profile(g: &GridDiagram, q: i64) -> Result<UpsilonProfile> {
    UpsilonEngine::new(g)?.profile(q)
}

/// Samples of Υ on `[0, 1]`; values on `(1, 2]` come from `Υ(t) = Υ(2 − t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UpsilonProfile {
    pub samples: Vec<(TParameter, Q)>,
    /// interior samples where the slope changes
    pub breakpoints: Vec<TParameter>,
}

impl UpsilonProfile {
    pub fn from_samples(samples: Vec<(TParameter, Q)>) -> Self {
        let mut breakpoints = Vec::new();
        for w in samples.windows(3) {
            let s1 = (w[1].1 - w[0].1) / (w[1].0.value() - w[0].0.value());
            let s2 = (w[2].1 - w[1].1) / (w[2].0.value() - w[1].0.value());
            if s1 != s2 {
                breakpoints.push(w[1].0);
            }
        }
        UpsilonProfile { samples, breakpoints }
    }

    /// The sampled value at `t`, reflecting `t > 1`.
    pub fn value_at(&self, t: TParameter) -> Option<Q> {
        let r = t.reflect();
        self.samples.iter().find(|(s, _)| *s == r).map(|&(_, v)| v)
    }

    pub fn is_linear(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Slope of the first segment, `q·Υ(1/q)`.
    pub fn tau_slope_estimate(&self) -> Result<Q> {
        match self.samples.as_slice() {
            [(t0, v0), (t1, v1), ..] => Ok((*v1 - *v0) / (t1.value() - t0.value())),
            _ => Err(GridError::Inadmissible("need at least two samples near 0".into())),
        }
    }
}

pub fn tau_slope_estimate(p: &UpsilonProfile) -> Result<Q> {
    p.tau_slope_estimate()
}

/// Whether `d1 ≅ d2 ⊗ W_t^{⊗(n1 − n2)}`.
pub fn compare_mod_wt(
    d1: &ModuleDecomposition,
    n1: usize,
    d2: &ModuleDecomposition,
    n2: usize,
    t: TParameter,
) -> bool {
    if n1 < n2 {
        return false;
    }
    let mut d = d2.clone();
    for _ in n2..n1 {
        d = d.tensor_wt(t);
    }
    let q = num_integer_lcm(d1.q, d.q);
    match (d1.with_q(q), d.with_q(q)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_values() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let e = UpsilonEngine::new(&g).unwrap();
        for t in TParameter::samples(4) {
            assert_eq!(e.upsilon(t).unwrap(), Q::from_integer(0));
        }
        let t = TParameter::new(1, 2).unwrap();
        assert_eq!(e.decomposition(t).unwrap().free, vec![Q::new(-1, 2), Q::from_integer(0)]);
    }

    #[test]
    fn wt_comparison() {
        let t = TParameter::new(1, 3).unwrap();
        let a = ModuleDecomposition::new(3, vec![Q::from_integer(0), Q::new(-2, 3)], vec![]);
        let b = ModuleDecomposition::new(3, vec![Q::from_integer(0)], vec![]);
        assert!(compare_mod_wt(&a, 2, &b, 1, t));
        assert!(compare_mod_wt(&b, 1, &b, 1, t));
        let c = ModuleDecomposition::new(3, vec![Q::from_integer(1)], vec![]);
        assert!(!compare_mod_wt(&b, 1, &c, 1, t));
    }
}
