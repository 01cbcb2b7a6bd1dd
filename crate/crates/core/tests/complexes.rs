mod common;

use common::{random_graph, random_link};
use gridups::complex::{collapse_u, formal_t_modify};
use gridups::upsilon::UpsilonEngine;
use gridups::{corpus, GridDiagram, MoveDescriptor, TParameter};
use proptest::prelude::*;

fn ts() -> Vec<TParameter> {
    [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)].iter().map(|&(p, q)| TParameter::new(p, q).unwrap()).collect()
}

fn sample() -> Vec<(String, GridDiagram)> {
    let mut out: Vec<(String, GridDiagram)> =
        corpus::all().into_iter().filter(|(_, g)| g.n() <= 5).map(|(n, g)| (n.to_string(), g)).collect();
    for seed in 0..35u64 {
        out.push((format!("link#{seed}"), random_link(2 + seed as usize % 4, seed)));
    }
    for seed in 0..15u64 {
        out.push((format!("graph#{seed}"), random_graph(seed, 6, 5)));
    }
    out
}

#[test]
fn minus_complex_is_a_filtered_chain_complex() {
    for (name, g) in sample() {
        let e = UpsilonEngine::new(&g).unwrap();
        assert_eq!(e.cf.d_squared_violation(), None, "{name}");
        assert_eq!(e.cf.grading_violation(), None, "{name}");
        assert!(collapse_u(&e.cf).exponents_consistent(), "{name}");
    }
}

#[test]
fn t_complexes_square_to_zero_and_drop_grading() {
    for (name, g) in sample() {
        let e = UpsilonEngine::new(&g).unwrap();
        for t in ts() {
            if !t.strictly_admissible(g.max_weight()) {
                continue;
            }
            let c = e.t_complex(t).unwrap();
            c.check_d_squared().unwrap_or_else(|err| panic!("{name} t={t}: {err}"));
            c.check_grading_drop().unwrap_or_else(|err| panic!("{name} t={t}: {err}"));
        }
    }
}

/// The combinatorial construction agrees with tensoring the collapsed complex.
#[test]
fn combinatorial_equals_formal() {
    for (name, g) in sample() {
        let e = UpsilonEngine::new(&g).unwrap();
        let sym = e.symmetrization().unwrap();
        let cu = collapse_u(&e.cf.with_alexander(sym.values.clone()));
        for t in ts() {
            if !t.strictly_admissible(g.max_weight()) {
                continue;
            }
            let a = e.t_complex(t).unwrap();
            let b = formal_t_modify(&cu, t).unwrap();
            assert_eq!(a.gradings, b.gradings, "{name} t={t}");
            assert_eq!(a.diff, b.diff, "{name} t={t}");
        }
    }
}

#[test]
fn symmetrized_grading_is_symmetric_on_graphs() {
    for seed in 0..10u64 {
        let g = random_graph(seed, 5, 5);
        let s = UpsilonEngine::new(&g).unwrap().symmetrization().unwrap().clone();
        assert_eq!(s.m_max - s.shift, s.shift - s.m_min);
        assert!(s.piece_dims[&s.m_max] > 0 && s.piece_dims[&s.m_min] > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_round_trip(n in 1usize..=6, seed in any::<u64>()) {
        let g = random_link(n, seed);
        let text = g.serialize();
        let back = GridDiagram::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn graph_round_trip(seed in any::<u64>(), steps in 0usize..8) {
        let g = random_graph(seed, steps, 6);
        prop_assert_eq!(GridDiagram::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn destabilization_undoes_stabilization(n in 2usize..=5, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = random_link(n, seed);
        let xs = g.x_positions();
        let (r, c) = xs[pick.index(xs.len())];
        let (big, data) = g.stabilize(r, c).unwrap();
        prop_assert_eq!(big.n(), n + 1);
        prop_assert!(big.is_balanced());
        let back = big.apply_move(&MoveDescriptor::DestabilizationPrime { row: data.o1.0, col: data.o1.1 }).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn cyclic_permutations_compose(n in 2usize..=6, seed in any::<u64>(), a in 1usize..6, b in 1usize..6) {
        let g = random_link(n, seed);
        let (a, b) = (a % n, b % n);
        prop_assume!(a > 0 && b > 0);
        let col = gridups::Axis::Col;
        let step = |h: &GridDiagram, s| h.apply_move(&MoveDescriptor::CyclicPermutation { axis: col, shift: s });
        let twice = step(&step(&g, a).unwrap(), b).unwrap();
        let total = (a + b) % n;
        let once = if total == 0 { g.clone() } else { step(&g, total).unwrap() };
        prop_assert_eq!(twice, once);
    }
}
