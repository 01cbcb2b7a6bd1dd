//! The destabilization map `D`, stabilization map `S` and homotopy `K`
//! between CF⁻ of a stabilized diagram and the cone of `U_1 − U_2`.
//!
//! Everything is written over the variables of the bigger diagram: the O in
//! row `r` of the small diagram becomes the O in row `r` (or `r + 1` above the
//! stabilized row) of the big one, and `U_1` is the new O.

use super::domain::{enumerate_domains, DomainKind, KReading, StabilizedGrid};
use super::{add, first_difference, from_diff, identity, mul, PolyMatrix};
use crate::combinatorics::{rank_perm, PreparedDiagram, State};
use crate::complex::cf::{cf_minus_prepared, FilteredComplex};
use crate::complex::monomial::{Poly, UMonomial};
use crate::diagram::GridDiagram;
use crate::error::{GridError, Result};
use crate::Q;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest stabilized grid for which the maps are built.
pub const MAX_MAP_N: usize = 5;

pub struct StabilizationMaps {
    pub small: GridDiagram,
    pub big: StabilizedGrid,
    pub cap: u32,
    /// CF⁻ of the small diagram, variables renamed into the big ring
    pub cf_small: FilteredComplex,
    pub cf_big: FilteredComplex,
    /// generators `L s` at `s`, `R s` at `N + s`
    pub cone: FilteredComplex,
    pub d: PolyMatrix,
    pub s: PolyMatrix,
    /// one homotopy per requested reading of the K-type conditions
    pub k: Vec<(KReading, PolyMatrix)>,
}

/// `e⁻¹`: insert the point `c = (cc, cr)` into a state of the small diagram.
fn insert_c(s: &[usize], (cc, cr): (usize, usize)) -> Vec<usize> {
    let mut out: Vec<usize> = s.iter().map(|&c| if c >= cc { c + 1 } else { c }).collect();
    out.insert(cr, cc);
    out
}

/// `e`: drop the point `c` from a state containing it.
fn remove_c(s: &[usize], (cc, cr): (usize, usize)) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(r, _)| r != cr)
        .map(|(_, &c)| if c > cc { c - 1 } else { c })
        .collect()
}

impl StabilizationMaps {
    /// Builds `D`, `S` and `K` for the stabilization′ of `g` at the X in
    /// `(row, col)`.
    pub fn build(g: &GridDiagram, row: usize, col: usize, cap: u32, readings: &[KReading]) -> Result<Self> {
        if g.n() + 1 > MAX_MAP_N {
            return Err(GridError::Unsupported(format!("stabilization maps are limited to {MAX_MAP_N}×{MAX_MAP_N} grids")));
        }
        let (gp, data) = g.stabilize(row, col)?;
        let big = StabilizedGrid { g: gp.clone(), data };
        let n = g.n();
        let np = n + 1;
        let prep = PreparedDiagram::new(g);
        let prep_big = PreparedDiagram::new(&gp);
        let var_map: Vec<usize> = (0..n).map(|r| if r > row { r + 1 } else { r }).collect();
        let cf_small = cf_minus_prepared(&prep).relabel_vars(&var_map, np, gp.weights());
        let cf_big = cf_minus_prepared(&prep_big);
        let cone = build_cone(&cf_small, data.o1.0, data.o2.0);
        let c = data.c;
        let ns = cf_small.len();
        let skip = Some(data.o1.0);

        let states_big: Vec<Vec<u8>> = (0..prep_big.len()).map(|i| prep_big.perm(i).to_vec()).collect();
        let small_index = |y: &[u8]| -> usize {
            let v: Vec<usize> = y.iter().map(|&c| c as usize).collect();
            rank_perm(&remove_c(&v, c))
        };

        // D: every x of the big diagram, targets y ∋ c
        let d: PolyMatrix = states_big
            .par_iter()
            .map(|x| {
                let mut acc: BTreeMap<usize, Vec<UMonomial>> = BTreeMap::new();
                for y in states_big.iter().filter(|y| big.contains_c(y)) {
                    let e = small_index(y);
                    for p in enumerate_domains(x, y, cap) {
                        if big.is_type(&p, DomainKind::IL, KReading::default()) {
                            acc.entry(e).or_default().push(p.weight(&gp, skip));
                        }
                        if big.is_type(&p, DomainKind::IR, KReading::default()) {
                            acc.entry(ns + e).or_default().push(p.weight(&gp, skip));
                        }
                    }
                }
                collect_poly(acc)
            })
            .collect();

        // S: sources L s, R s with x = e⁻¹(s)
        let s_cols: Vec<(BTreeMap<usize, Poly>, BTreeMap<usize, Poly>)> = (0..ns)
            .into_par_iter()
            .map(|si| {
                let x: Vec<u8> = insert_c(&prep.state(si).perm, c).into_iter().map(|v| v as u8).collect();
                let mut l: BTreeMap<usize, Vec<UMonomial>> = BTreeMap::new();
                let mut r: BTreeMap<usize, Vec<UMonomial>> = BTreeMap::new();
                for (yi, y) in states_big.iter().enumerate() {
                    for p in enumerate_domains(&x, y, cap) {
                        if big.is_type(&p, DomainKind::OL, KReading::default()) {
                            l.entry(yi).or_default().push(p.weight(&gp, skip));
                        }
                        if big.is_type(&p, DomainKind::OR, KReading::default()) {
                            r.entry(yi).or_default().push(p.weight(&gp, skip));
                        }
                    }
                }
                (collect_poly(l), collect_poly(r))
            })
            .collect();
        let mut s: PolyMatrix = vec![BTreeMap::new(); 2 * ns];
        for (i, (l, r)) in s_cols.into_iter().enumerate() {
            s[i] = l;
            s[ns + i] = r;
        }

        // K: x, y ∌ c
        let nstates: Vec<usize> = (0..states_big.len()).filter(|&i| !big.contains_c(&states_big[i])).collect();
        let per_x: Vec<Vec<BTreeMap<usize, Poly>>> = states_big
            .par_iter()
            .enumerate()
            .map(|(xi, x)| {
                let mut accs: Vec<BTreeMap<usize, Vec<UMonomial>>> = vec![BTreeMap::new(); readings.len()];
                if !big.contains_c(x) {
                    for &yi in &nstates {
                        for p in enumerate_domains(x, &states_big[yi], cap) {
                            let w = p.weight(&gp, skip);
                            let degree = prep_big.maslov[yi] - 2 * w.degree() as i64 - prep_big.maslov[xi];
                            for (ri, rd) in readings.iter().enumerate() {
                                if rd.graded && degree != 1 {
                                    continue;
                                }
                                let hits = DomainKind::K.iter().filter(|&&k| big.is_type(&p, k, *rd)).count();
                                let count = if rd.union { hits.min(1) } else { hits };
                                for _ in 0..count {
                                    accs[ri].entry(yi).or_default().push(w);
                                }
                            }
                        }
                    }
                }
                accs.into_iter().map(collect_poly).collect()
            })
            .collect();
        let k = readings
            .iter()
            .enumerate()
            .map(|(ri, rd)| (*rd, per_x.iter().map(|v| v[ri].clone()).collect()))
            .collect();

        Ok(StabilizationMaps { small: g.clone(), big, cap, cf_small, cf_big, cone, d, s, k })
    }

    pub fn d_is_chain_map(&self) -> std::result::Result<(), String> {
        let lhs = mul(&self.d, &from_diff(&self.cf_big.diff));
        let rhs = mul(&from_diff(&self.cone.diff), &self.d);
        describe(first_difference(&lhs, &rhs), "D∂′ ≠ ∂D")
    }

    pub fn s_is_chain_map(&self) -> std::result::Result<(), String> {
        let lhs = mul(&self.s, &from_diff(&self.cone.diff));
        let rhs = mul(&from_diff(&self.cf_big.diff), &self.s);
        describe(first_difference(&lhs, &rhs), "S∂ ≠ ∂′S")
    }

    /// `D ∘ S = id` on the cone.
    pub fn ds_identity(&self) -> std::result::Result<(), String> {
        let lhs = mul(&self.d, &self.s);
        describe(first_difference(&lhs, &identity(self.cone.len())), "D∘S ≠ id")
    }

    /// `S ∘ D + ∂′K + K∂′ = id` for the homotopy built under `reading`.
    pub fn homotopy_identity(&self, reading: KReading) -> std::result::Result<(), String> {
        let k = &self
            .k
            .iter()
            .find(|(r, _)| *r == reading)
            .ok_or_else(|| format!("no homotopy built for {reading:?}"))?
            .1;
        let dp = from_diff(&self.cf_big.diff);
        let lhs = add(&add(&mul(&self.s, &self.d), &mul(&dp, k)), &mul(k, &dp));
        describe(first_difference(&lhs, &identity(self.cf_big.len())), "S∘D + ∂′K + K∂′ ≠ id")
    }

    /// The rotation of the horizontal circle through `c` exchanges iL with oL
    /// and iR with oR domains (with source and target swapped).
    pub fn theta_symmetry(&self) -> std::result::Result<(), String> {
        let n = self.big.g.n();
        let i = self.big.c().1;
        let states: Vec<Vec<u8>> =
            crate::combinatorics::enumerate_states(n).map(|s| s.perm.iter().map(|&c| c as u8).collect()).collect();
        for x in &states {
            for y in states.iter().filter(|y| self.big.contains_c(y)) {
                for p in enumerate_domains(x, y, self.cap) {
                    let r = super::domain::reflect_domain(&p, i);
                    for (a, b) in [(DomainKind::IL, DomainKind::OL), (DomainKind::IR, DomainKind::OR)] {
                        let rd = KReading::default();
                        if self.big.is_type(&p, a, rd) != self.big.is_type(&r, b, rd) {
                            return Err(format!("{a:?}/{b:?} mismatch for {x:?} → {y:?}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Maslov degrees occurring in a map, from the source and target gradings.
    pub fn maslov_degrees(m: &PolyMatrix, src: &FilteredComplex, dst: &FilteredComplex) -> Vec<i64> {
        let mut v: Vec<i64> = m
            .iter()
            .enumerate()
            .flat_map(|(x, col)| {
                col.iter().flat_map(move |(y, p)| p.terms().iter().map(move |&w| dst.grading_of(*y, w).0 - src.maslov[x]))
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn describe(d: Option<(usize, usize, Poly, Poly)>, what: &str) -> std::result::Result<(), String> {
    match d {
        None => Ok(()),
        Some((x, y, a, b)) => Err(format!("{what}: entry {x} → {y} is {a} vs {b}")),
    }
}

fn collect_poly(acc: BTreeMap<usize, Vec<UMonomial>>) -> BTreeMap<usize, Poly> {
    acc.into_iter()
        .map(|(k, v)| (k, Poly::from_terms(v)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// `Cone(U_1 − U_2)`: `∂(L s) = L ∂s + (U_1 + U_2) R s`, `∂(R s) = R ∂s`; the
/// `L` copy sits one lower in both gradings.
pub fn build_cone(c: &FilteredComplex, u1: usize, u2: usize) -> FilteredComplex {
    let n = c.len();
    let link = Poly::from_terms(vec![UMonomial::var(u1), UMonomial::var(u2)]);
    let mut diff = Vec::with_capacity(2 * n);
    for col in &c.diff {
        diff.push(col.clone());
    }
    for col in &c.diff {
        diff.push(col.iter().map(|(y, p)| (y + n, p.clone())).collect::<Vec<_>>());
    }
    for (i, col) in diff.iter_mut().enumerate().take(n) {
        col.push((n + i, link.clone()));
        col.sort_by_key(|e| e.0);
    }
    let mut maslov: Vec<i64> = c.maslov.iter().map(|m| m - 1).collect();
    maslov.extend_from_slice(&c.maslov);
    let mut alexander: Vec<Q> = c.alexander.iter().map(|a| a - 1).collect();
    alexander.extend_from_slice(&c.alexander);
    let mut labels = c.labels.clone();
    labels.extend_from_slice(&c.labels);
    FilteredComplex { nvars: c.nvars, weights: c.weights.clone(), labels, maslov, alexander, diff }
}

/// `e⁻¹` on states, exposed for tests.
pub fn lift_state(s: &State, c: (usize, usize)) -> State {
    State::new(insert_c(&s.perm, c))
}
