use gkn_core::classical::ClassicalFunction as F;
use gkn_core::gkn::{b_block, build_matrix, c_block, glazman_symmetry_check, is_li_mod_dmin};
use gkn_core::sweep::{enumerate_selections, evaluate_all, ExecMode, SweepBounds};
use gkn_core::IndexSelection;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(s: &IndexSelection) {
    let m = build_matrix(s);
    let r = s.p_indices().len();
    assert!(m.is_antisymmetric(), "{s}");
    for i in 0..r {
        for j in 0..r {
            assert!(m.get(i, j).is_zero(), "{s}: P block");
        }
    }
    assert!(c_block(s).is_antisymmetric());
    if r == s.q_indices().len() {
        let db = b_block(s).det().unwrap();
        assert_eq!(m.det().unwrap(), &db * &db, "{s}");
    }
}

#[test]
fn canonical_selections() {
    for n in 1..=8 {
        check(&IndexSelection::canonical(n).unwrap());
    }
}

#[test]
fn random_selections_up_to_index_12() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let n = rng.gen_range(1..=5usize);
        let mut p = sample(&mut rng, 13, n).into_vec();
        let mut q = sample(&mut rng, 13, n).into_vec();
        p.sort_unstable();
        q.sort_unstable();
        check(&IndexSelection::new(p, q, n as u32).unwrap());
    }
}

#[test]
fn parity_necessity_n_up_to_4() {
    for n in 1..=4 {
        let mut b = SweepBounds::new(n, 8);
        b.parity_balanced_only = false;
        let unbalanced: Vec<_> = enumerate_selections(&b)
            .unwrap()
            .into_iter()
            .filter(|s| !s.is_parity_balanced())
            .collect();
        for o in evaluate_all(&unbalanced, ExecMode::Parallel) {
            assert!(!o.full_rank, "{}", o.selection);
        }
    }
}

#[test]
fn independence_examples() {
    let s = |p: &[usize], q: &[usize], n| IndexSelection::new(p.to_vec(), q.to_vec(), n).unwrap();
    assert!(is_li_mod_dmin(&IndexSelection::canonical(3).unwrap()).unwrap());
    assert!(is_li_mod_dmin(&s(&[0], &[1], 1)).unwrap());
    assert!(!is_li_mod_dmin(&s(&[0, 2], &[0, 2], 2)).unwrap());
    assert!(is_li_mod_dmin(&s(&[0, 1, 2], &[0, 1], 2)).is_err());
    // all-P sets are mutually bracket-free
    let ps: Vec<F> = (0..6).map(F::p).collect();
    assert!(glazman_symmetry_check(&ps, 4));
    assert!(!glazman_symmetry_check(&[F::p(0), F::q(1)], 1));
}
