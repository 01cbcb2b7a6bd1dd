mod common;

use common::{oracle, random_link};
use gridups::combinatorics::PreparedDiagram;
use gridups::complex::build_cf_minus;
use gridups::complex::symmetrize::{associated_graded_piece, cancel_units, closed_form_alexander, graded_hat, symmetrized_alexander};
use gridups::homology::dvr_reduce;
use gridups::homology::gf2::{gf2_homology, FiniteComplex};
use gridups::upsilon::UpsilonEngine;
use gridups::{corpus, TParameter};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::collections::BTreeMap;

fn ts() -> Vec<TParameter> {
    [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)].iter().map(|&(p, q)| TParameter::new(p, q).unwrap()).collect()
}

fn check_against_oracle(name: &str, g: &gridups::GridDiagram) {
    let e = UpsilonEngine::new(g).unwrap();
    for t in ts() {
        if !t.strictly_admissible(g.max_weight()) {
            continue;
        }
        let c = e.t_complex(t).unwrap();
        let d = dvr_reduce(&c).unwrap();
        assert_eq!(oracle::decomposition_mismatch(&c, &d), None, "{name} at t={t}");
        assert_eq!(d.free_rank(), oracle::free_rank(&c), "{name} at t={t}");
        assert_eq!(d.max_free(), oracle::upsilon(&c), "{name} at t={t}");
    }
}

#[test]
fn corpus_decompositions_match_dense_homology() {
    for (name, g) in corpus::all() {
        if g.n() <= 5 {
            check_against_oracle(name, &g);
        }
    }
}

/// Dense per-grading GF(2) homology.
fn dense_gf2(c: &FiniteComplex<i64>) -> BTreeMap<i64, usize> {
    let n = c.gradings.len();
    let row = |x: usize| {
        let mut v = vec![0u64; n.div_ceil(64).max(1)];
        for &y in &c.diff[x] {
            v[y / 64] ^= 1 << (y % 64);
        }
        v
    };
    let rank_from = |g: i64| oracle::rank((0..n).filter(|&x| c.gradings[x] == g).map(row).collect());
    let mut out = BTreeMap::new();
    let gs: std::collections::BTreeSet<i64> = c.gradings.iter().copied().collect();
    for &g in &gs {
        let dim = c.gradings.iter().filter(|&&h| h == g).count();
        let h = dim - rank_from(g) - rank_from(g + 1);
        if h > 0 {
            out.insert(g, h);
        }
    }
    out
}

#[test]
fn associated_graded_pieces_match_dense() {
    for (name, g) in corpus::all() {
        if g.n() > 5 {
            continue;
        }
        let cf = build_cf_minus(&g).unwrap();
        let mask = PreparedDiagram::new(&g).star_mask;
        let reduced = cancel_units(&graded_hat(&cf, mask));
        let lo = *cf.alexander.iter().min().unwrap();
        let hi = *cf.alexander.iter().max().unwrap();
        let mut m = lo;
        while m <= hi {
            let piece = associated_graded_piece(&reduced, mask, m);
            let sparse = gf2_homology(&piece, |g| g - 1).unwrap();
            let sparse: BTreeMap<i64, usize> = sparse.into_iter().filter(|e| e.1 > 0).collect();
            assert_eq!(sparse, dense_gf2(&piece), "{name} at A = {m}");
            m += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_links_match_dense_homology(n in 2usize..=5, seed in any::<u64>()) {
        let g = random_link(n, seed);
        check_against_oracle("random", &g);
    }

    #[test]
    fn reduction_is_order_independent(n in 3usize..=5, seed in any::<u64>()) {
        let g = random_link(n, seed);
        let e = UpsilonEngine::new(&g).unwrap();
        let t = TParameter::new(1, 2).unwrap();
        let c = e.t_complex(t).unwrap();
        let base = dvr_reduce(&c).unwrap();
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..10 {
            let mut order: Vec<usize> = (0..c.len()).collect();
            order.shuffle(&mut rng);
            prop_assert_eq!(&dvr_reduce(&c.permuted(&order)).unwrap(), &base);
        }
    }

    #[test]
    fn symmetrization_matches_closed_form(n in 2usize..=5, seed in any::<u64>()) {
        let g = random_link(n, seed);
        let s = symmetrized_alexander(&g).unwrap();
        prop_assert_eq!(s.values, closed_form_alexander(&g).unwrap());
        prop_assert_eq!(s.m_max + s.m_min, s.shift * 2);
    }
}
