//! Executable forms of the invariance theorems and the Υ bounds.
//!
//! Every check is an exact rational comparison per sampled `t`; reports are
//! ordered by `t` whatever the thread count.

use crate::complex::tcomplex::TParameter;
use crate::corpus::replay;
use crate::diagram::{GridDiagram, MoveDescriptor};
use crate::error::{GridError, Result};
use crate::homology::dvr::ModuleDecomposition;
use crate::upsilon::{compare_mod_wt, UpsilonEngine};
use crate::{fmt_q, Q};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    /// `p/q`
    pub t: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub kind: String,
    pub pass: bool,
    /// derived quantities worth printing next to the records
    pub info: Vec<(String, String)>,
    pub records: Vec<CheckRecord>,
}

impl Report {
    fn new(kind: &str, info: Vec<(String, String)>, records: Vec<CheckRecord>) -> Report {
        let pass = records.iter().all(|r| r.pass);
        Report { kind: kind.into(), pass, info, records }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

fn t_string(t: TParameter) -> String {
    let v = t.value();
    format!("{}/{}", v.numer(), v.denom())
}

fn record(check: &str, t: TParameter, lhs: String, rhs: String, pass: bool) -> CheckRecord {
    CheckRecord { check: check.into(), t: t_string(t), lhs, rhs, pass }
}

/// Samples `k/q` in `[0, 1]` at which both diagrams are admissible.
fn common_samples(q: i64, gs: &[&GridDiagram]) -> Result<Vec<TParameter>> {
    if q < 1 {
        return Err(GridError::Inadmissible("sample denominator must be positive".into()));
    }
    let max_m = gs.iter().map(|g| g.max_weight()).max().unwrap_or(1);
    Ok(TParameter::samples(q).into_iter().filter(|t| t.strictly_admissible(max_m)).collect())
}

fn summary(d: &ModuleDecomposition) -> String {
    let free: Vec<String> = d.free.iter().map(|g| fmt_q(*g)).collect();
    let tors: Vec<String> = d.torsion.iter().map(|(g, k)| format!("{}^{}", fmt_q(*g), k)).collect();
    format!("free[{}] tors[{}] (w=v^1/{})", free.join(","), tors.join(","), d.q)
}

/// Homology of the bigger grid is that of the smaller one tensored with
/// `W_t` once per extra row, and Υ agrees, at every sampled `t`.
///
/// With `moves`, the sequence is replayed from `g1` first and must land on
/// `g2` exactly.
pub fn verify_invariance(g1: &GridDiagram, g2: &GridDiagram, moves: Option<&[MoveDescriptor]>, q: i64) -> Result<Report> {
    let mut info = Vec::new();
    if let Some(ms) = moves {
        let got = replay(g1, ms)?;
        if &got != g2 {
            return Err(GridError::IllegalMove("replaying the moves does not produce the second diagram".into()));
        }
        info.push(("moves".into(), ms.len().to_string()));
    }
    let ts = common_samples(q, &[g1, g2])?;
    let (e1, e2) = (UpsilonEngine::new(g1)?, UpsilonEngine::new(g2)?);
    let (big, small) = if g1.n() >= g2.n() { (&e1, &e2) } else { (&e2, &e1) };
    let (nb, ns) = (big.diagram.n(), small.diagram.n());
    info.push(("sizes".into(), format!("{} {}", g1.n(), g2.n())));
    let per_t: Vec<Vec<CheckRecord>> = ts
        .par_iter()
        .map(|&t| -> Result<Vec<CheckRecord>> {
            let db = big.decomposition(t)?;
            let ds = small.decomposition(t)?;
            let mut tensored = ds.clone();
            for _ in ns..nb {
                tensored = tensored.tensor_wt(t);
            }
            let iso = compare_mod_wt(&db, nb, &ds, ns, t);
            let (u1, u2) = (e1.upsilon(t)?, e2.upsilon(t)?);
            Ok(vec![
                record("homology ≅ ⊗W_t", t, summary(&db), summary(&tensored), iso),
                record("Υ equal", t, fmt_q(u1), fmt_q(u2), u1 == u2),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Report::new("invariance", info, per_t.into_iter().flatten().collect()))
}

/// Births, saddles (X and O together) and deaths of a cobordism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveCounts {
    pub births: usize,
    pub saddles: usize,
    pub deaths: usize,
}

impl MoveCounts {
    pub fn from_moves(moves: &[MoveDescriptor]) -> MoveCounts {
        let mut c = MoveCounts::default();
        for m in moves {
            match m {
                MoveDescriptor::Birth { .. } => c.births += 1,
                MoveDescriptor::XSaddle { .. } | MoveDescriptor::OSaddle { .. } => c.saddles += 1,
                MoveDescriptor::Death { .. } => c.deaths += 1,
                _ => {}
            }
        }
        c
    }
}

/// The two genus formulas for a cobordism with these counts:
/// `(s − b − d)/2 + 1 − (l1 + l2)/2` (Euler characteristic) and the variant
/// with `l1 − l2` in place of `l1 + l2`.
pub fn genus_candidates(c: MoveCounts, l1: usize, l2: usize) -> (Q, Q) {
    let base = Q::new(c.saddles as i64 - c.births as i64 - c.deaths as i64, 2) + 1;
    (base - Q::new((l1 + l2) as i64, 2), base - Q::new(l1 as i64 - l2 as i64, 2))
}

/// `Υ1 − tg − t(l1−1) − (l1−l2) ≤ Υ2 ≤ Υ1 + tg + t(l2−1) + (l2−l1)` at every
/// sampled `t`. An explicit `genus` overrides the one derived from `counts`.
pub fn cobordism_bound_check(
    g1: &GridDiagram,
    g2: &GridDiagram,
    counts: MoveCounts,
    genus: Option<Q>,
    q: i64,
) -> Result<Report> {
    for g in [g1, g2] {
        if !g.is_link_diagram() {
            return Err(GridError::Unsupported("cobordism bounds need link diagrams".into()));
        }
    }
    let (l1, l2) = (g1.components(), g2.components());
    let (euler, printed) = genus_candidates(counts, l1, l2);
    let gen = match genus {
        Some(g) => g,
        None => euler,
    };
    if !gen.is_integer() || gen < Q::from_integer(0) {
        return Err(GridError::Inadmissible(format!(
            "genus {} is not a non-negative integer; the move counts are inconsistent",
            fmt_q(gen)
        )));
    }
    let info = vec![
        ("l1".into(), l1.to_string()),
        ("l2".into(), l2.to_string()),
        ("genus".into(), fmt_q(gen)),
        ("genus_euler".into(), fmt_q(euler)),
        ("genus_printed".into(), fmt_q(printed)),
    ];
    let ts = common_samples(q, &[g1, g2])?;
    let (e1, e2) = (UpsilonEngine::new(g1)?, UpsilonEngine::new(g2)?);
    let (l1q, l2q) = (Q::from_integer(l1 as i64), Q::from_integer(l2 as i64));
    let per_t: Vec<Vec<CheckRecord>> = ts
        .par_iter()
        .map(|&t| -> Result<Vec<CheckRecord>> {
            let (u1, u2) = (e1.upsilon(t)?, e2.upsilon(t)?);
            let tv = t.value();
            let lower = u1 - tv * gen - tv * (l1q - 1) - (l1q - l2q);
            let upper = u1 + tv * gen + tv * (l2q - 1) + (l2q - l1q);
            Ok(vec![
                record("lower", t, fmt_q(lower), fmt_q(u2), lower <= u2),
                record("upper", t, fmt_q(u2), fmt_q(upper), u2 <= upper),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Report::new("cobordism", info, per_t.into_iter().flatten().collect()))
}

/// `Υ+ ≤ Υ− ≤ Υ+ + (2 − t)` for diagrams the caller asserts differ in one
/// crossing, `plus` carrying the positive crossing.
pub fn crossing_change_check(plus: &GridDiagram, minus: &GridDiagram, q: i64) -> Result<Report> {
    let ts = common_samples(q, &[plus, minus])?;
    let (ep, em) = (UpsilonEngine::new(plus)?, UpsilonEngine::new(minus)?);
    let per_t: Vec<Vec<CheckRecord>> = ts
        .par_iter()
        .map(|&t| -> Result<Vec<CheckRecord>> {
            let (up, um) = (ep.upsilon(t)?, em.upsilon(t)?);
            let bound = up + 2 - t.value();
            Ok(vec![
                record("lower", t, fmt_q(up), fmt_q(um), up <= um),
                record("upper", t, fmt_q(um), fmt_q(bound), um <= bound),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Report::new("crossing", Vec::new(), per_t.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;

    #[test]
    fn stabilized_unknots() {
        let (a, b) = (load("unknot1").unwrap(), load("unknot2").unwrap());
        let moves = MoveDescriptor::parse_sequence("stab 0 0").unwrap();
        let r = verify_invariance(&a, &b, Some(&moves), 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.records.len(), 10);
        assert_eq!(r.records[0].t, "0/1");
    }

    #[test]
    fn replay_mismatch() {
        let (a, b) = (load("unknot1").unwrap(), load("unknot3").unwrap());
        let moves = MoveDescriptor::parse_sequence("stab 0 0").unwrap();
        assert!(matches!(verify_invariance(&a, &b, Some(&moves), 2), Err(GridError::IllegalMove(_))));
    }

    #[test]
    fn genus_variants() {
        let c = MoveCounts { births: 0, saddles: 2, deaths: 0 };
        assert_eq!(genus_candidates(c, 1, 1), (Q::from_integer(1), Q::from_integer(2)));
        let c = MoveCounts { births: 0, saddles: 1, deaths: 0 };
        assert_eq!(genus_candidates(c, 2, 1).0, Q::from_integer(0));
    }

    #[test]
    fn identity_cobordism() {
        let u = load("unknot2").unwrap();
        let r = cobordism_bound_check(&u, &u, MoveCounts::default(), None, 3).unwrap();
        assert!(r.pass);
        assert!(r.records.iter().all(|x| x.lhs == "0" && x.rhs == "0"));
    }

    #[test]
    fn inconsistent_counts() {
        let u = load("unknot2").unwrap();
        let c = MoveCounts { births: 0, saddles: 1, deaths: 0 };
        assert!(matches!(cobordism_bound_check(&u, &u, c, None, 2), Err(GridError::Inadmissible(_))));
    }
}
