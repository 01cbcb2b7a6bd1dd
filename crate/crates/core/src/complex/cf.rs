//! The multi-variable complex CF⁻, its hat quotient and the U-collapse.

use super::monomial::{Poly, UMonomial};
use crate::combinatorics::PreparedDiagram;
use crate::diagram::GridDiagram;
use crate::error::{GridError, Result};
use crate::Q;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Generators with (Maslov, Alexander) gradings and a differential whose
/// entries are GF(2) polynomials in `U_0 … U_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex {
    pub nvars: usize,
    /// `m_i` of each variable
    pub weights: Vec<u32>,
    /// lexicographic state index of each generator
    pub labels: Vec<usize>,
    pub maslov: Vec<i64>,
    pub alexander: Vec<Q>,
    /// per source: sorted `(target, coefficient)`
    pub diff: Vec<Vec<(usize, Poly)>>,
}

/// Column-oriented sparse matrix over the polynomial ring.
pub type PolyMatrix = Vec<BTreeMap<usize, Poly>>;

pub fn compose(after: &[Vec<(usize, Poly)>], before: &[Vec<(usize, Poly)>]) -> PolyMatrix {
    before
        .iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (mid, c1) in col {
                for (z, c2) in &after[*mid] {
                    let e = acc.entry(*z).or_default();
                    e.add_assign(&c1.mul(c2));
                }
            }
            acc.retain(|_, p| !p.is_zero());
            acc
        })
        .collect()
}

impl FilteredComplex {
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Grading of `U^a · x`.
    pub fn grading_of(&self, x: usize, m: UMonomial) -> (i64, Q) {
        let deg = m.degree() as i64;
        let w = m.weighted_degree(&self.weights) as i64;
        (self.maslov[x] - 2 * deg, self.alexander[x] - Q::from_integer(w))
    }

    /// First `(source, target)` at which `∂∘∂` is non-zero.
    pub fn d_squared_violation(&self) -> Option<(usize, usize)> {
        let sq = compose(&self.diff, &self.diff);
        sq.iter().enumerate().find_map(|(x, col)| col.keys().next().map(|&z| (x, z)))
    }

    /// First term that fails to drop Maslov by one or raises Alexander.
    pub fn grading_violation(&self) -> Option<(usize, usize, UMonomial)> {
        for (x, col) in self.diff.iter().enumerate() {
            for (y, p) in col {
                for &m in p.terms() {
                    let (my, ay) = self.grading_of(*y, m);
                    if my != self.maslov[x] - 1 || ay > self.alexander[x] {
                        return Some((x, *y, m));
                    }
                }
            }
        }
        None
    }

    pub fn with_alexander(&self, alexander: Vec<Q>) -> FilteredComplex {
        FilteredComplex { alexander, ..self.clone() }
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn relabel_vars(&self, map: &[usize], nvars: usize, weights: Vec<u32>) -> FilteredComplex {
        let diff = self
            .diff
            .iter()
            .map(|col| col.iter().map(|(y, p)| (*y, p.relabel(map))).collect())
            .collect();
        FilteredComplex { nvars, weights, diff, ..self.clone() }
    }

    /// Sparse-matrix text export with state indices as ids.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            let _ = writeln!(s, "gen {} {} {}", self.labels[i], self.maslov[i], crate::fmt_q(self.alexander[i]));
        }
        for (x, col) in self.diff.iter().enumerate() {
            for (y, p) in col {
                for m in p.terms() {
                    let _ = writeln!(s, "d {} {} {}", self.labels[x], self.labels[*y], m);
                }
            }
        }
        s
    }
}

/// CF⁻ with the raw Alexander grading.
pub fn build_cf_minus(g: &GridDiagram) -> Result<FilteredComplex> {
    if let Some(why) = g.balance_violation() {
        return Err(GridError::Unbalanced(why));
    }
    Ok(cf_minus_prepared(&PreparedDiagram::new(g)))
}

pub fn cf_minus_prepared(prep: &PreparedDiagram) -> FilteredComplex {
    let diff = (0..prep.len())
        .into_par_iter()
        .map(|x| {
            let mut terms: Vec<(usize, UMonomial)> = Vec::new();
            prep.for_each_rect(x, |y, r| terms.push((y, UMonomial::from_mask(r.contents.omask))));
            gather(terms)
        })
        .collect();
    FilteredComplex {
        nvars: prep.n,
        weights: prep.weights.clone(),
        labels: (0..prep.len()).collect(),
        maslov: prep.maslov.clone(),
        alexander: prep.alex2.iter().map(|&a| Q::new(a, 2)).collect(),
        diff,
    }
}

pub(crate) fn gather(mut terms: Vec<(usize, UMonomial)>) -> Vec<(usize, Poly)> {
    terms.sort_unstable();
    let mut out: Vec<(usize, Poly)> = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let y = terms[i].0;
        let mut v = Vec::new();
        while i < terms.len() && terms[i].0 == y {
            v.push(terms[i].1);
            i += 1;
        }
        let p = Poly::from_terms(v);
        if !p.is_zero() {
            out.push((y, p));
        }
    }
    out
}

/// Quotient by the starred variables (bit `i` of `star_mask` kills `U_i`).
pub fn build_hat(c: &FilteredComplex, star_mask: u32) -> FilteredComplex {
    let diff = c
        .diff
        .iter()
        .map(|col| {
            col.iter()
                .map(|(y, p)| (*y, p.kill(star_mask)))
                .filter(|(_, p)| !p.is_zero())
                .collect()
        })
        .collect();
    FilteredComplex { diff, ..c.clone() }
}

/// All variables identified with one `U`; only the Maslov grading survives as a
/// grading, the Alexander values ride along for the t-modification.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapsedComplex {
    pub labels: Vec<usize>,
    pub maslov: Vec<i64>,
    pub alexander: Vec<Q>,
    /// per source: sorted `(target, U-exponent)`
    pub diff: Vec<Vec<(usize, u32)>>,
}

pub fn collapse_u(c: &FilteredComplex) -> CollapsedComplex {
    let diff = c
        .diff
        .iter()
        .map(|col| {
            let mut v: Vec<(usize, u32)> = Vec::new();
            for (y, p) in col {
                for e in p.collapse() {
                    v.push((*y, e));
                }
            }
            v
        })
        .collect();
    CollapsedComplex { labels: c.labels.clone(), maslov: c.maslov.clone(), alexander: c.alexander.clone(), diff }
}

impl CollapsedComplex {
    /// Every exponent equals `(M(y) − M(x) + 1)/2`.
    pub fn exponents_consistent(&self) -> bool {
        self.diff.iter().enumerate().all(|(x, col)| {
            col.iter().all(|&(y, e)| 2 * e as i64 == self.maslov[y] - self.maslov[x] + 1)
        })
    }
}
