use proptest::prelude::*;
use wpyramid_core::linalg::IntMatrix;
use wpyramid_core::pyramid::{units_matrix, CentralizerBasis, LieDatum, Partition, Pyramid, Weights};

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

/// Offsets counted straight from the stacking rule.
fn brute_pyramid_count(parts: &[usize]) -> usize {
    fn rec(parts: &[usize], row: usize, below: usize, acc: &mut usize) {
        if row == 0 {
            *acc += 1;
            return;
        }
        let i = row - 1;
        let (lo, hi) = (below, below + parts[i + 1] - parts[i]);
        for o in lo..=hi {
            rec(parts, i, o, acc);
        }
    }
    let n = parts.len();
    let mut acc = 0;
    rec(parts, n - 1, 0, &mut acc);
    acc
}

#[test]
fn two_five_fixture() {
    let pys = Pyramid::enumerate(&part(&[2, 5]));
    let offsets: Vec<Vec<usize>> = pys.iter().map(|p| p.offsets().to_vec()).collect();
    assert_eq!(offsets, vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 0]]);
    let shifts: Vec<Vec<Vec<usize>>> = pys.iter().map(|p| p.shift_matrix().rows().to_vec()).collect();
    assert_eq!(
        shifts,
        vec![
            vec![vec![0, 3], vec![0, 0]],
            vec![vec![0, 2], vec![1, 0]],
            vec![vec![0, 1], vec![2, 0]],
            vec![vec![0, 0], vec![3, 0]],
        ]
    );
    // boxes 1, 2 sit above boxes 3 + o, 4 + o
    for (o, py) in pys.iter().enumerate() {
        assert_eq!(py.vertical_pairs(), vec![(1, 3 + o), (2, 4 + o)]);
    }
}

#[test]
fn pyramid_counts_up_to_eight() {
    for n in 1..=8 {
        for p in Partition::all_of(n) {
            let want = brute_pyramid_count(p.parts());
            assert_eq!(p.pyramid_count(), want, "{:?}", p.parts());
            assert_eq!(Pyramid::enumerate(&p).len(), want);
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=8).map(|n| Partition::all_of(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
}

fn ad_rank(e: &IntMatrix, n: usize) -> usize {
    let mut ad = IntMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let mut x = IntMatrix::zeros(n, n);
            x.set(a, b, 1);
            let y = e.commutator(&x);
            for r in 0..n {
                for c in 0..n {
                    ad.set(r * n + c, a * n + b, y.get(r, c));
                }
            }
        }
    }
    ad.rank_rational()
}

#[test]
fn centralizer_basis_up_to_six() {
    for n in 1..=6 {
        for p in Partition::all_of(n) {
            for py in Pyramid::enumerate(&p) {
                let lie = LieDatum::new(&py);
                let basis = CentralizerBasis::new(&py);
                assert_eq!(basis.len(), lie.dim_g0());
                let e = lie.e_matrix();
                assert_eq!(basis.len(), n * n - ad_rank(&e, n));
                let mats: Vec<IntMatrix> = basis.elements.iter().map(|c| units_matrix(n, &c.units)).collect();
                for m in &mats {
                    assert!(e.commutator(m).is_zero());
                }
                let mut stacked = IntMatrix::zeros(mats.len(), n * n);
                for (k, m) in mats.iter().enumerate() {
                    for r in 0..n {
                        for c in 0..n {
                            stacked.set(k, r * n + c, m.get(r, c));
                        }
                    }
                }
                assert_eq!(stacked.rank_rational(), mats.len());
                let c = |i: usize, j: usize, r: usize| units_matrix(n, &wpyramid_core::pyramid::centralizer_units(&py, i, j, r));
                for (x, a) in basis.elements.iter().zip(&mats) {
                    for (y, b) in basis.elements.iter().zip(&mats) {
                        let lhs = a.commutator(b);
                        let mut rhs = if x.j == y.i { c(x.i, y.j, x.r + y.r - 1) } else { IntMatrix::zeros(n, n) };
                        if x.i == y.j {
                            rhs = rhs.sub(&c(y.i, x.j, x.r + y.r - 1));
                        }
                        assert_eq!(lhs, rhs, "{:?} {:?} {:?}", py.offsets(), (x.i, x.j, x.r), (y.i, y.j, y.r));
                    }
                }
            }
        }
    }
}

#[test]
fn jordan_type_is_partition() {
    for n in 1..=7 {
        for p in Partition::all_of(n) {
            for py in Pyramid::enumerate(&p) {
                let lie = LieDatum::new(&py);
                assert_eq!(lie.jordan_type(), p.parts().to_vec());
                // 𝔤 = 𝔤(0) ⊕ 𝔪 ⊕ (its transpose)
                assert_eq!(lie.dim_g0() + 2 * lie.d_chi(), n * n);
            }
        }
    }
}

fn arb_pyramid() -> impl Strategy<Value = Pyramid> {
    (1usize..=7)
        .prop_flat_map(|n| {
            let parts = Partition::all_of(n);
            (Just(parts.clone()), 0..parts.len())
        })
        .prop_flat_map(|(parts, k)| {
            let pys = Pyramid::enumerate(&parts[k]);
            (Just(pys.clone()), 0..pys.len())
        })
        .prop_map(|(pys, k)| pys[k].clone())
}

proptest! {
    #[test]
    fn weight_identities(py in arb_pyramid()) {
        let w = Weights::new(&py);
        prop_assert_eq!(w.rho_bar.add(&w.gamma), w.rho.clone());
        prop_assert_eq!(w.rho_bar.add(&w.beta), w.rho_tilde.clone());
        prop_assert_eq!(w.eta.add(&w.rho_h), w.rho_tilde.clone());
    }

    #[test]
    fn boxes_are_numbered_along_rows(py in arb_pyramid()) {
        let mut b = 1;
        for r in 1..=py.n_rows() {
            for &x in py.row_boxes(r) {
                prop_assert_eq!(x, b);
                prop_assert_eq!(py.row(x), r);
                prop_assert_eq!(py.box_at(r, py.col(x)), Some(x));
                b += 1;
            }
        }
        prop_assert_eq!(b - 1, py.n_boxes());
    }

    #[test]
    fn shift_matrix_from_offsets(py in arb_pyramid()) {
        let s = py.shift_matrix();
        let o = py.offsets();
        let p = py.partition().parts();
        for i in 1..=py.n_rows() {
            prop_assert_eq!(s.get(i, i), 0);
            for j in i + 1..=py.n_rows() {
                prop_assert_eq!(s.get(j, i), o[i - 1] - o[j - 1]);
                prop_assert_eq!(s.get(i, j), o[j - 1] + p[j - 1] - o[i - 1] - p[i - 1]);
            }
        }
    }

    #[test]
    fn pyramid_spec_round_trips(py in arb_pyramid()) {
        let back = Pyramid::try_from(py.spec()).unwrap();
        prop_assert_eq!(back, py);
    }
}
