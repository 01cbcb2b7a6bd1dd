//! The symmetrized Alexander grading.
//!
//! The associated graded object of the hat complex is reduced by cancelling
//! unit entries, then each Alexander piece is expanded into a finite GF(2)
//! complex over monomials in the unstarred variables.

use super::cf::{build_hat, cf_minus_prepared, FilteredComplex};
use super::monomial::{Poly, UMonomial};
use crate::combinatorics::{j2, planar_state, PreparedDiagram};
use crate::diagram::GridDiagram;
use crate::error::{GridError, Result};
use crate::homology::gf2::{gf2_homology, FiniteComplex};
use crate::Q;
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Clone, Debug, PartialEq)]
pub struct Symmetrization {
    pub m_max: Q,
    pub m_min: Q,
    /// `(m_max + m_min)/2`, subtracted from the raw grading
    pub shift: Q,
    /// symmetrized grading of every state, lexicographic order
    pub values: Vec<Q>,
    /// total homology dimension of every piece that was examined
    pub piece_dims: BTreeMap<Q, usize>,
}

pub fn symmetrized_alexander(g: &GridDiagram) -> Result<Symmetrization> {
    if let Some(why) = g.balance_violation() {
        return Err(GridError::Unbalanced(why));
    }
    if !g.every_component_starred() {
        return Err(GridError::Unsupported("every component needs an O*".into()));
    }
    let prep = PreparedDiagram::new(g);
    let cf = cf_minus_prepared(&prep);
    symmetrize_prepared(&prep, &cf)
}

pub fn symmetrize_prepared(prep: &PreparedDiagram, cf: &FilteredComplex) -> Result<Symmetrization> {
    let graded = graded_hat(cf, prep.star_mask);
    let reduced = cancel_units(&graded);
    let lo = *cf.alexander.iter().min().expect("at least one state");
    let hi = *cf.alexander.iter().max().expect("at least one state");
    let mut piece_dims = BTreeMap::new();
    let mut dim_at = |m: Q| -> Result<usize> {
        let piece = associated_graded_piece(&reduced, prep.star_mask, m);
        let d: usize = gf2_homology(&piece, |g| g - 1)?.values().sum();
        piece_dims.insert(m, d);
        Ok(d)
    };
    let mut m_max = None;
    let mut m = hi;
    while m >= lo {
        if dim_at(m)? > 0 {
            m_max = Some(m);
            break;
        }
        m -= 1;
    }
    let m_max = m_max.ok_or_else(|| GridError::Invariant("every associated graded piece is acyclic".into()))?;
    let mut m = lo;
    let mut m_min = m_max;
    while m < m_max {
        if dim_at(m)? > 0 {
            m_min = m;
            break;
        }
        m += 1;
    }
    let shift = (m_max + m_min) / 2;
    Ok(Symmetrization {
        m_max,
        m_min,
        shift,
        values: cf.alexander.iter().map(|&a| a - shift).collect(),
        piece_dims,
    })
}

/// The hat complex keeping only the terms that preserve the Alexander grading.
pub fn graded_hat(cf: &FilteredComplex, star_mask: u32) -> FilteredComplex {
    let hat = build_hat(cf, star_mask);
    let diff = hat
        .diff
        .iter()
        .enumerate()
        .map(|(x, col)| {
            col.iter()
                .filter_map(|(y, p)| {
                    let keep: Vec<UMonomial> =
                        p.terms().iter().copied().filter(|&m| hat.grading_of(*y, m).1 == hat.alexander[x]).collect();
                    (!keep.is_empty()).then(|| (*y, Poly::from_terms(keep)))
                })
                .collect()
        })
        .collect();
    FilteredComplex { diff, ..hat }
}

/// Cancels every entry equal to `1` until none is left. Such entries preserve
/// both gradings, so the result is homotopy equivalent as a bigraded complex.
pub fn cancel_units(c: &FilteredComplex) -> FilteredComplex {
    let n = c.len();
    let mut cols: Vec<HashMap<usize, Poly>> = c.diff.iter().map(|col| col.iter().cloned().collect()).collect();
    let mut rows: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for (x, col) in c.diff.iter().enumerate() {
        for (y, _) in col {
            rows[*y].insert(x);
        }
    }
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).rev().collect();
    while let Some(x0) = queue.pop() {
        if !alive[x0] {
            continue;
        }
        let Some(y0) = cols[x0].iter().filter(|(_, p)| p.is_one()).map(|(&y, _)| y).min() else { continue };
        let sources: Vec<usize> = rows[y0].iter().copied().filter(|&a| a != x0).collect();
        let targets: Vec<(usize, Poly)> =
            cols[x0].iter().filter(|(&b, _)| b != y0).map(|(&b, p)| (b, p.clone())).collect();
        for &a in &sources {
            let coeff = cols[a][&y0].clone();
            for (b, p) in &targets {
                let add = coeff.mul(p);
                let e = cols[a].entry(*b).or_default();
                e.add_assign(&add);
                if e.is_zero() {
                    cols[a].remove(b);
                    rows[*b].remove(&a);
                } else {
                    rows[*b].insert(a);
                }
            }
            queue.push(a);
        }
        for z in [x0, y0] {
            alive[z] = false;
            for (b, _) in std::mem::take(&mut cols[z]) {
                rows[b].remove(&z);
            }
            for a in std::mem::take(&mut rows[z]) {
                cols[a].remove(&z);
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut index = vec![usize::MAX; n];
    for (k, &i) in keep.iter().enumerate() {
        index[i] = k;
    }
    let diff = keep
        .iter()
        .map(|&x| {
            let mut v: Vec<(usize, Poly)> = cols[x].iter().map(|(&y, p)| (index[y], p.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    FilteredComplex {
        nvars: c.nvars,
        weights: c.weights.clone(),
        labels: keep.iter().map(|&i| c.labels[i]).collect(),
        maslov: keep.iter().map(|&i| c.maslov[i]).collect(),
        alexander: keep.iter().map(|&i| c.alexander[i]).collect(),
        diff,
    }
}

/// Monomials in the variables outside `star_mask` of weighted degree `d`.
fn monomials_of_weight(weights: &[u32], star_mask: u32, d: u32) -> Vec<UMonomial> {
    fn go(vars: &[(usize, u32)], d: u32, e: &mut Vec<u32>, n: usize, out: &mut Vec<UMonomial>) {
        match vars.split_first() {
            None => {
                if d == 0 {
                    out.push(UMonomial::from_exponents(&e[..n]));
                }
            }
            Some((&(i, w), rest)) => {
                let mut k = 0;
                while k * w <= d {
                    e[i] = k;
                    go(rest, d - k * w, e, n, out);
                    k += 1;
                }
                e[i] = 0;
            }
        }
    }
    let vars: Vec<(usize, u32)> =
        weights.iter().enumerate().filter(|(i, _)| star_mask >> i & 1 == 0).map(|(i, &w)| (i, w)).collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; weights.len()];
    go(&vars, d, &mut e, weights.len(), &mut out);
    out
}

/// The Alexander-grading-`m` part of the associated graded hat complex, as a
/// Maslov-graded GF(2) complex. Only Alexander-preserving terms of `hat` are used.
pub fn associated_graded_piece(hat: &FilteredComplex, star_mask: u32, m: Q) -> FiniteComplex<i64> {
    let mut index: HashMap<(usize, UMonomial), usize> = HashMap::new();
    let mut basis: Vec<(usize, UMonomial)> = Vec::new();
    for x in 0..hat.len() {
        let d = hat.alexander[x] - m;
        if d < Q::from_integer(0) || !d.is_integer() {
            continue;
        }
        for mono in monomials_of_weight(&hat.weights, star_mask, d.to_integer() as u32) {
            index.insert((x, mono), basis.len());
            basis.push((x, mono));
        }
    }
    let gradings = basis.iter().map(|&(x, a)| hat.maslov[x] - 2 * a.degree() as i64).collect();
    let diff = basis
        .iter()
        .map(|&(x, a)| {
            let mut out = Vec::new();
            for (y, p) in &hat.diff[x] {
                for &c in p.terms() {
                    if c.touches(star_mask) || hat.grading_of(*y, c).1 != hat.alexander[x] {
                        continue;
                    }
                    if let Some(&k) = index.get(&(*y, a.mul(c))) {
                        out.push(k);
                    }
                }
            }
            out
        })
        .collect();
    FiniteComplex { gradings, diff }
}

/// `4·J(x, X − O) − 2·J(X, X) + 2·J(O, O)` pieces shared by the closed forms.
fn tight_link_base4(g: &GridDiagram) -> Vec<i64> {
    let prep_pd = g.planar_realization((0, 0));
    let os: Vec<(i64, i64)> = prep_pd.o.iter().map(|&(p, _)| p).collect();
    let const4 = -j2(&prep_pd.x, &prep_pd.x) + j2(&os, &os);
    crate::combinatorics::enumerate_states(g.n())
        .map(|x| {
            let xs = planar_state(&prep_pd, &x);
            2 * (j2(&xs, &prep_pd.x) - j2(&xs, &os)) + const4
        })
        .collect()
}

/// The explicit symmetrized grading of a tight link diagram.
pub fn closed_form_alexander(g: &GridDiagram) -> Result<Vec<Q>> {
    if !g.is_tight_link() {
        return Err(GridError::Unsupported("closed form needs a tight link diagram".into()));
    }
    let nl = (g.n() - g.components()) as i64;
    Ok(tight_link_base4(g).into_iter().map(|b| Q::new(b - 2 * nl, 4)).collect())
}

/// The primed grading `A′`; on tight diagrams it differs from the
/// symmetrized one by `−(l−1)/2`. Stars play no role, so any link diagram
/// qualifies.
pub fn alexander_prime(g: &GridDiagram) -> Result<Vec<Q>> {
    if !g.is_link_diagram() {
        return Err(GridError::Unsupported("A′ needs one X per row and column".into()));
    }
    let n1 = g.n() as i64 - 1;
    Ok(tight_link_base4(g).into_iter().map(|b| Q::new(b - 2 * n1, 4)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot2() -> GridDiagram {
        GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap()
    }

    #[test]
    fn unknot_pieces() {
        let g = unknot2();
        let cf = crate::complex::build_cf_minus(&g).unwrap();
        let hat = build_hat(&cf, 1);
        let p0 = associated_graded_piece(&hat, 1, Q::from_integer(0));
        assert_eq!(p0.gradings, vec![0]);
        let p1 = associated_graded_piece(&hat, 1, Q::from_integer(-1));
        assert_eq!(p1.gradings.len(), 2);
        assert!(gf2_homology(&p1, |g| g - 1).unwrap().is_empty());
        let s = symmetrized_alexander(&g).unwrap();
        assert_eq!((s.m_max, s.m_min, s.shift), (Q::from_integer(0), Q::from_integer(0), Q::from_integer(0)));
        assert_eq!(s.values, closed_form_alexander(&g).unwrap());
    }

    #[test]
    fn weight_enumeration() {
        // variables 1 and 2 with weights 1 and 2, degree 2: U1^2, U2
        let v = monomials_of_weight(&[1, 1, 2], 0b001, 2);
        assert_eq!(v.len(), 2);
    }
}
