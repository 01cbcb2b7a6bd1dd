mod common;

use common::oracle;
use gridups::complex::tcomplex::GradedDvrComplex;
use gridups::homology::dvr::ModuleDecomposition;
use gridups::Q;

fn cx(gr: &[Q], diff: Vec<Vec<(usize, u32)>>, q: i64) -> GradedDvrComplex {
    GradedDvrComplex { q, labels: (0..gr.len()).collect(), gradings: gr.to_vec(), diff }
}

#[test]
fn hand_computed_modules() {
    // x → w² y at q = 1: F[w]/w² at gr(y) = 1
    let c = cx(&[Q::from_integer(0), Q::from_integer(1)], vec![vec![(1, 2)], vec![]], 1);
    c.check_grading_drop().unwrap();
    assert_eq!(oracle::homology_dim(&c, Q::from_integer(1)), 1);
    assert_eq!(oracle::homology_dim(&c, Q::from_integer(0)), 1);
    assert_eq!(oracle::homology_dim(&c, Q::from_integer(-1)), 0);
    assert_eq!(oracle::upsilon(&c), None);
    assert_eq!(oracle::free_rank(&c), 0);
    let d = ModuleDecomposition::new(1, vec![], vec![(Q::from_integer(1), 2)]);
    assert_eq!(oracle::decomposition_mismatch(&c, &d), None);
    let wrong = ModuleDecomposition::new(1, vec![], vec![(Q::from_integer(1), 1)]);
    assert!(oracle::decomposition_mismatch(&c, &wrong).is_some());

    // a lone generator is free
    let c = cx(&[Q::new(-1, 2)], vec![vec![]], 2);
    assert_eq!(oracle::upsilon(&c), Some(Q::new(-1, 2)));
    assert_eq!(oracle::free_rank(&c), 1);
}

#[test]
fn rank_basics() {
    assert_eq!(oracle::rank(vec![vec![0b011], vec![0b110], vec![0b101]]), 2);
    assert_eq!(oracle::rank(vec![vec![0], vec![0]]), 0);
}
