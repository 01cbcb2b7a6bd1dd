//! The t-modified complex over the valuation ring `F[[w]]`, `w = v^{1/q}`.

use super::cf::CollapsedComplex;
use super::symmetrize::symmetrize_prepared;
use crate::combinatorics::PreparedDiagram;
use crate::diagram::GridDiagram;
use crate::error::{GridError, Result};
use crate::Q;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// A rational parameter `t = p/q` in `[0, 2]`, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TParameter {
    pub p: i64,
    pub q: i64,
}

impl TParameter {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q <= 0 || p < 0 || p > 2 * q {
            return Err(GridError::Inadmissible(format!("t = {p}/{q} is outside [0, 2]")));
        }
        let r = Q::new(p, q);
        Ok(TParameter { p: *r.numer(), q: *r.denom() })
    }

    pub fn from_q(t: Q) -> Result<Self> {
        TParameter::new(*t.numer(), *t.denom())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = crate::parse_q(s).ok_or_else(|| GridError::Inadmissible(format!("cannot read t from {s:?}")))?;
        TParameter::from_q(t)
    }

    pub fn value(self) -> Q {
        Q::new(self.p, self.q)
    }

    /// `2 − t` when `t > 1`, otherwise `t`.
    pub fn reflect(self) -> TParameter {
        if self.p > self.q {
            TParameter { p: 2 * self.q - self.p, q: self.q }
        } else {
            self
        }
    }

    /// No rectangle exponent can go negative when `t·max_m ≤ 2`.
    pub fn strictly_admissible(self, max_m: u32) -> bool {
        self.p * max_m as i64 <= 2 * self.q
    }

    pub fn check_admissible(self, max_m: u32) -> Result<()> {
        if self.strictly_admissible(max_m) {
            Ok(())
        } else {
            Err(GridError::Inadmissible(format!(
                "t = {self} with max m_i = {max_m}: t ≤ {} required",
                crate::fmt_q(Q::new(2, max_m as i64))
            )))
        }
    }

    /// `0, 1/q, …, 1`.
    pub fn samples(q: i64) -> Vec<TParameter> {
        (0..=q).map(|k| TParameter::new(k, q).expect("sample in range")).collect()
    }
}

impl fmt::Display for TParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::fmt_q(self.value()))
    }
}

/// Sparse matrix over `F[[w]]` with monomial entries: per source, the list of
/// `(target, k)` meaning a summand `w^k · target`.
#[derive(Clone, Debug)]
pub struct DvrMatrix {
    pub q: i64,
    pub rows: usize,
    pub cols: Vec<Vec<(usize, u32)>>,
}

/// Sorts and cancels repeated `(target, k)` pairs mod 2.
pub(crate) fn normalize(mut v: Vec<(usize, u32)>) -> Vec<(usize, u32)> {
    v.sort_unstable();
    let mut out: Vec<(usize, u32)> = Vec::with_capacity(v.len());
    for e in v {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

impl DvrMatrix {
    pub fn identity(n: usize, q: i64) -> Self {
        DvrMatrix::scalar(n, q, 0)
    }

    /// `w^k · id`.
    pub fn scalar(n: usize, q: i64, k: u32) -> Self {
        DvrMatrix { q, rows: n, cols: (0..n).map(|i| vec![(i, k)]).collect() }
    }

    pub fn zero(rows: usize, cols: usize, q: i64) -> Self {
        DvrMatrix { q, rows, cols: vec![Vec::new(); cols] }
    }

    /// `self ∘ before`.
    pub fn compose(&self, before: &DvrMatrix) -> DvrMatrix {
        assert_eq!(self.q, before.q);
        assert_eq!(self.cols.len(), before.rows);
        let cols = before
            .cols
            .iter()
            .map(|col| {
                let v = col
                    .iter()
                    .flat_map(|&(mid, k1)| self.cols[mid].iter().map(move |&(z, k2)| (z, k1 + k2)))
                    .collect();
                normalize(v)
            })
            .collect();
        DvrMatrix { q: self.q, rows: self.rows, cols }
    }

    pub fn add(&self, other: &DvrMatrix) -> DvrMatrix {
        assert_eq!(self.cols.len(), other.cols.len());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| normalize(a.iter().chain(b).copied().collect()))
            .collect();
        DvrMatrix { q: self.q, rows: self.rows, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| normalize(c.clone()).is_empty())
    }
}

impl PartialEq for DvrMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.rows == other.rows
            && self.cols.len() == other.cols.len()
            && self.cols.iter().zip(&other.cols).all(|(a, b)| normalize(a.clone()) == normalize(b.clone()))
    }
}

/// Generators with exact t-gradings and a `w`-monomial differential.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDvrComplex {
    pub q: i64,
    pub labels: Vec<usize>,
    pub gradings: Vec<Q>,
    /// per source: sorted `(target, k)`
    pub diff: Vec<Vec<(usize, u32)>>,
}

impl GradedDvrComplex {
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn matrix(&self) -> DvrMatrix {
        DvrMatrix { q: self.q, rows: self.len(), cols: self.diff.clone() }
    }

    pub fn check_d_squared(&self) -> Result<()> {
        let d = self.matrix();
        let sq = d.compose(&d);
        match sq.cols.iter().position(|c| !c.is_empty()) {
            None => Ok(()),
            Some(x) => Err(GridError::Invariant(format!("∂∘∂ ≠ 0 at generator {}", self.labels[x]))),
        }
    }

    /// Every term `w^k y` of `∂x` sits in grading `gr(x) − 1`.
    pub fn check_grading_drop(&self) -> Result<()> {
        for (x, col) in self.diff.iter().enumerate() {
            for &(y, k) in col {
                if self.gradings[y] - Q::new(k as i64, self.q) != self.gradings[x] - 1 {
                    return Err(GridError::Invariant(format!(
                        "term {} → w^{k} {} does not drop the grading by one",
                        self.labels[x], self.labels[y]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reorders generators: new position `i` holds old generator `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> GradedDvrComplex {
        let mut inv = vec![0; order.len()];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        GradedDvrComplex {
            q: self.q,
            labels: order.iter().map(|&o| self.labels[o]).collect(),
            gradings: order.iter().map(|&o| self.gradings[o]).collect(),
            diff: order
                .iter()
                .map(|&o| normalize(self.diff[o].iter().map(|&(y, k)| (inv[y], k)).collect()))
                .collect(),
        }
    }

    /// Text export: `gen <id> <gr_t>` then `d <src> <dst> w^<k>`.
    pub fn export(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        for i in 0..self.len() {
            let _ = writeln!(s, "gen {} {}", self.labels[i], crate::fmt_q(self.gradings[i]));
        }
        for (x, col) in self.diff.iter().enumerate() {
            for &(y, k) in col {
                let _ = writeln!(s, "d {} {} w^{}", self.labels[x], self.labels[y], k);
            }
        }
        s
    }
}

/// The t-modified complex of a balanced diagram, using the symmetrized grading.
pub fn build_t_complex(g: &GridDiagram, t: TParameter) -> Result<GradedDvrComplex> {
    if let Some(why) = g.balance_violation() {
        return Err(GridError::Unbalanced(why));
    }
    if !g.every_component_starred() {
        return Err(GridError::Unsupported("every component needs an O*".into()));
    }
    let prep = PreparedDiagram::new(g);
    let cf = super::cf::cf_minus_prepared(&prep);
    let sym = symmetrize_prepared(&prep, &cf)?;
    build_t_complex_with(&prep, t, &sym.values)
}

/// Same, with the Alexander grading supplied (one value per state).
pub fn build_t_complex_with(prep: &PreparedDiagram, t: TParameter, alexander: &[Q]) -> Result<GradedDvrComplex> {
    let (p, q) = (t.p, t.q);
    let n = prep.n;
    let diff: Vec<Vec<(usize, u32)>> = (0..prep.len())
        .into_par_iter()
        .map(|x| {
            let mut terms = Vec::new();
            let mut bad = None;
            prep.for_each_rect(x, |y, r| {
                let c = r.contents;
                let k = p * c.xcount as i64 + 2 * q * c.ocount as i64 - p * c.sum_m as i64;
                if k < 0 {
                    bad.get_or_insert(GridError::NegativeExponent {
                        exponent: k,
                        rows: (r.row0, (r.row0 + r.height) % n),
                        cols: (r.col0, (r.col0 + r.width) % n),
                        hint: format!("t = {t} is too large for this diagram's weights"),
                    });
                } else {
                    terms.push((y, k as u32));
                }
            });
            match bad {
                Some(e) => Err(e),
                None => Ok(normalize(terms)),
            }
        })
        .collect::<Result<_>>()?;
    let tv = t.value();
    Ok(GradedDvrComplex {
        q,
        labels: (0..prep.len()).collect(),
        gradings: (0..prep.len()).map(|x| Q::from_integer(prep.maslov[x]) - tv * alexander[x]).collect(),
        diff,
    })
}

fn to_w_exponent(alpha: Q, q: i64) -> Option<u32> {
    let k = alpha * q;
    (k.is_integer() && k >= Q::from_integer(0)).then(|| k.to_integer() as u32)
}

/// Tensors a U-collapsed complex with the valuation ring via `U = v²` and
/// rescales each term to drop the t-grading by one.
pub fn formal_t_modify(cu: &CollapsedComplex, t: TParameter) -> Result<GradedDvrComplex> {
    let tv = t.value();
    let gradings: Vec<Q> =
        cu.maslov.iter().zip(&cu.alexander).map(|(&m, &a)| Q::from_integer(m) - tv * a).collect();
    let mut diff = Vec::with_capacity(cu.diff.len());
    for (x, col) in cu.diff.iter().enumerate() {
        let mut v = Vec::with_capacity(col.len());
        for &(y, _) in col {
            let alpha = gradings[y] - gradings[x] + 1;
            let k = to_w_exponent(alpha, t.q).ok_or_else(|| {
                GridError::Invariant(format!("exponent {} is not in (1/{})ℤ≥0", crate::fmt_q(alpha), t.q))
            })?;
            v.push((y, k));
        }
        diff.push(normalize(v));
    }
    Ok(GradedDvrComplex { q: t.q, labels: cu.labels.clone(), gradings, diff })
}

/// A Maslov-graded map between U-collapsed complexes: per source,
/// `(target, U-exponent)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapsedMap {
    pub cols: Vec<Vec<(usize, u32)>>,
    /// Maslov degree of the map
    pub degree: i64,
}

impl CollapsedMap {
    pub fn compose(&self, before: &CollapsedMap) -> CollapsedMap {
        let cols = before
            .cols
            .iter()
            .map(|col| {
                normalize(
                    col.iter().flat_map(|&(mid, e1)| self.cols[mid].iter().map(move |&(z, e2)| (z, e1 + e2))).collect(),
                )
            })
            .collect();
        CollapsedMap { cols, degree: self.degree + before.degree }
    }
}

/// Lifts a collapsed map to the t-modified complexes: each entry becomes
/// `v^{gr(y) − gr(x) − shift}` where `shift` is the t-grading shift of the map.
pub fn lift_chain_map_t(
    f: &CollapsedMap,
    src: &CollapsedComplex,
    dst: &CollapsedComplex,
    t: TParameter,
    shift: Q,
) -> Result<DvrMatrix> {
    let tv = t.value();
    let gr = |c: &CollapsedComplex, i: usize| Q::from_integer(c.maslov[i]) - tv * c.alexander[i];
    let mut cols = Vec::with_capacity(f.cols.len());
    for (x, col) in f.cols.iter().enumerate() {
        let mut v = Vec::with_capacity(col.len());
        for &(y, e) in col {
            if dst.maslov[y] - 2 * e as i64 != src.maslov[x] + f.degree {
                return Err(GridError::Invariant(format!("map entry {x} → U^{e}·{y} is not homogeneous")));
            }
            let alpha = gr(dst, y) - gr(src, x) - shift;
            let k = to_w_exponent(alpha, t.q)
                .ok_or_else(|| GridError::Invariant(format!("lifted exponent {} is not admissible", crate::fmt_q(alpha))))?;
            v.push((y, k));
        }
        cols.push(normalize(v));
    }
    Ok(DvrMatrix { q: t.q, rows: dst.maslov.len(), cols })
}

/// Counts of differential terms by w-exponent (diagnostics).
pub fn exponent_histogram(c: &GradedDvrComplex) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for col in &c.diff {
        for &(_, k) in col {
            *h.entry(k).or_insert(0) += 1;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cf::{build_cf_minus, collapse_u};

    #[test]
    fn parameter_basics() {
        let t = TParameter::parse("4/6").unwrap();
        assert_eq!((t.p, t.q), (2, 3));
        assert_eq!(TParameter::parse("3/2").unwrap().reflect(), TParameter::new(1, 2).unwrap());
        assert!(TParameter::parse("5/2").is_err());
        assert!(!TParameter::parse("3/2").unwrap().strictly_admissible(2));
        assert_eq!(TParameter::samples(6).len(), 7);
    }

    #[test]
    fn unknot_t_complex() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let t = TParameter::new(1, 2).unwrap();
        let c = build_t_complex(&g, t).unwrap();
        assert!(c.diff.iter().all(|d| d.is_empty()));
        assert_eq!(c.gradings, vec![Q::new(-1, 2), Q::from_integer(0)]);
        let mut cf = build_cf_minus(&g).unwrap();
        cf.alexander = crate::complex::symmetrize::symmetrized_alexander(&g).unwrap().values;
        assert_eq!(formal_t_modify(&collapse_u(&cf), t).unwrap(), c);
    }

    #[test]
    fn lift_identity_and_u() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let cu = collapse_u(&build_cf_minus(&g).unwrap());
        let t = TParameter::new(1, 3).unwrap();
        let id = CollapsedMap { cols: vec![vec![(0, 0)], vec![(1, 0)]], degree: 0 };
        assert_eq!(lift_chain_map_t(&id, &cu, &cu, t, Q::from_integer(0)).unwrap(), DvrMatrix::identity(2, 3));
        let u = CollapsedMap { cols: vec![vec![(0, 1)], vec![(1, 1)]], degree: -2 };
        assert_eq!(lift_chain_map_t(&u, &cu, &cu, t, Q::from_integer(-2)).unwrap(), DvrMatrix::scalar(2, 3, 6));
    }
}
