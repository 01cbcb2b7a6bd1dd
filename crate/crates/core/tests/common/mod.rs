#![allow(dead_code)]

pub mod oracle;

use gridups::diagram::{Axis, GridDiagram, MoveDescriptor};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// A random link diagram on `n` rows with one O* per component.
pub fn random_link(n: usize, seed: u64) -> GridDiagram {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let mut o: Vec<usize> = (0..n).collect();
        let mut x: Vec<usize> = (0..n).collect();
        o.shuffle(&mut rng);
        x.shuffle(&mut rng);
        if n > 1 && (0..n).any(|r| o[r] == x[r]) {
            continue;
        }
        let plain = GridDiagram::from_perms(&o, &x, &[]).expect("valid link grid");
        let comp = plain.component_of();
        let mut stars = Vec::new();
        for c in 0..plain.components() {
            stars.push((0..n).find(|&r| comp[r] == c).unwrap());
        }
        return plain.with_stars(&stars).expect("stars");
    }
}

/// A random balanced graph diagram: a short random walk of moves from θ.
pub fn random_graph(seed: u64, steps: usize, max_n: usize) -> GridDiagram {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut g = gridups::corpus::load("theta3").unwrap();
    for _ in 0..steps {
        let n = g.n();
        let m = match rng.gen_range(0..3) {
            0 => MoveDescriptor::CyclicPermutation { axis: if rng.gen() { Axis::Row } else { Axis::Col }, shift: rng.gen_range(1..n) },
            1 => MoveDescriptor::CommutationPrime { axis: Axis::Col, index: rng.gen_range(0..n) },
            _ if n < max_n => {
                let xs = g.x_positions();
                let (r, c) = xs[rng.gen_range(0..xs.len())];
                MoveDescriptor::StabilizationPrime { row: r, col: c }
            }
            _ => continue,
        };
        if let Ok(h) = g.apply_move(&m) {
            g = h;
        }
    }
    g
}
