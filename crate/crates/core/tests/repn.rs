use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wpyramid_core::linalg::{FpMatrix, Subspace};
use wpyramid_core::pyramid::{LieDatum, Partition, Pyramid};
use wpyramid_core::repn::{
    are_isomorphic, build_baby_verma, build_induced, check_minimal_modules, check_one_dim, entrywise_fp_test,
    fp_factoring_test, highest_weight_check, hom_space, one_dim_action, verify_main_theorem, whittaker_d_eigenvalues,
    EntryDomain, Ext, IsoVerdict, MatrixModule, OneDimCharacter, QuadraticExtension, Shift, DEFAULT_MAX_DIM,
};
use wpyramid_core::repn::character::random_column_connected;
use wpyramid_core::tableaux::{enumerate_cc_classes, enumerate_row_classes, Tableau};
use wpyramid_core::walgebra::{default_bound, GenKey, WGeneratorTable};
use wpyramid_core::Ring;

fn py(parts: &[usize], offsets: &[usize]) -> Pyramid {
    Pyramid::new(Partition::new(parts.to_vec()).unwrap(), offsets.to_vec()).unwrap()
}

fn all_pyramids(parts: &[usize]) -> Vec<Pyramid> {
    Pyramid::enumerate(&Partition::new(parts.to_vec()).unwrap())
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

/// Brackets and p-th powers checked directly against the matrices.
fn satisfies_relations(m: &MatrixModule) -> bool {
    let (n, p, d) = (m.n(), m.prime(), m.dim());
    let lie = LieDatum::new(m.pyramid());
    let zero = FpMatrix::zeros(p, d, d);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let x = m.action(i, j);
                    let y = m.action(k, l);
                    let lhs = x.mul(y).sub(&y.mul(x));
                    let a = if j == k { m.action(i, l).clone() } else { zero.clone() };
                    let b = if l == i { m.action(k, j).clone() } else { zero.clone() };
                    if lhs != a.sub(&b) {
                        return false;
                    }
                }
            }
            let x = m.action(i, j);
            let mut pw = FpMatrix::identity(p, d);
            for _ in 0..p {
                pw = pw.mul(x);
            }
            let lhs = if i == j { pw.sub(x) } else { pw };
            if lhs != FpMatrix::identity(p, d).scale(lie.chi(i, j) as u32) {
                return false;
            }
        }
    }
    true
}

/// Submodule generated by one vector, closing under every matrix.
fn cyclic(m: &MatrixModule, v: Vec<u32>) -> Subspace {
    let mut s = Subspace::new(m.prime(), m.dim());
    let mut queue = vec![v];
    while let Some(w) = queue.pop() {
        if s.insert(w.clone()).is_some() {
            for i in 1..=m.n() {
                for j in 1..=m.n() {
                    queue.push(m.action(i, j).mul_vec(&w));
                }
            }
        }
    }
    s
}

fn all_vectors(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..(p as usize).pow(d as u32)).map(move |mut idx| {
        (0..d)
            .map(|_| {
                let x = (idx % p as usize) as u32;
                idx /= p as usize;
                x
            })
            .collect()
    })
}

/// Sum of every proper submodule, by enumerating all vectors.
fn brute_radical(m: &MatrixModule) -> Subspace {
    let mut rad = Subspace::new(m.prime(), m.dim());
    for v in all_vectors(m.prime(), m.dim()) {
        let s = cyclic(m, v.clone());
        if s.dim() < m.dim() {
            for b in s.basis() {
                rad.insert(b.clone());
            }
        }
    }
    rad
}

#[test]
fn induced_module_dimension_and_relations() {
    for (parts, p) in [(&[1, 1][..], 2u64), (&[1, 2], 2), (&[1, 2], 3), (&[2, 2], 2), (&[1, 1, 2], 2), (&[3], 3)] {
        for py in all_pyramids(parts) {
            let d = LieDatum::new(&py).d_chi();
            for class in enumerate_cc_classes(&py, p).unwrap() {
                let a = class.column_connected_member(Some(p)).unwrap();
                let m = build_induced(&py, p, &a, DEFAULT_MAX_DIM).unwrap();
                assert_eq!(m.dim(), (p as usize).pow(d as u32));
                assert!(satisfies_relations(&m), "{:?} {:?}", py.spec(), a.entries());
                assert!(m.axiom_violations().is_empty());
            }
        }
    }
}

#[test]
fn induced_needs_column_connected() {
    let p = py(&[1, 2], &[0, 0]);
    let a = Tableau::new(&p, vec![0, 0, 0]).unwrap();
    assert!(!a.is_column_connected_mod(3));
    assert!(build_induced(&p, 3, &a, DEFAULT_MAX_DIM).is_err());
}

#[test]
fn small_induced_modules_are_simple_by_enumeration() {
    for (parts, p) in [(&[1, 1][..], 2u64), (&[1, 1], 3), (&[1, 2], 2), (&[1, 2], 3)] {
        for py in all_pyramids(parts) {
            for class in enumerate_cc_classes(&py, p).unwrap() {
                let a = class.column_connected_member(Some(p)).unwrap();
                let m = build_induced(&py, p, &a, DEFAULT_MAX_DIM).unwrap();
                assert!(all_vectors(m.prime(), m.dim()).all(|v| cyclic(&m, v).dim() == m.dim()));
                assert!(m.is_simple().unwrap());
            }
        }
    }
}

#[test]
fn baby_verma_heads_match_enumeration() {
    for (parts, p) in [(&[1, 1][..], 2u64), (&[1, 1], 3), (&[1, 2], 2)] {
        for py in all_pyramids(parts) {
            for class in enumerate_row_classes(&py, p).unwrap() {
                let z = build_baby_verma(&py, p, class.representative(), DEFAULT_MAX_DIM).unwrap();
                assert!(satisfies_relations(&z));
                let rad = brute_radical(&z);
                assert!(rad.dim() < z.dim());
                let head = z.simple_head().unwrap();
                assert!(head.unique);
                assert_eq!(head.module.dim(), z.dim() - rad.dim(), "{:?} {:?}", py.spec(), class.representative().entries());
                assert!(head.module.is_simple().unwrap());
            }
        }
    }
}

#[test]
fn whittaker_space_of_baby_verma_has_the_predicted_dimension() {
    for (parts, p) in [(&[1, 2][..], 2u64), (&[1, 2], 3), (&[2, 2], 2)] {
        for py in all_pyramids(parts) {
            let n = py.n_boxes();
            let d = LieDatum::new(&py).d_chi();
            let a = enumerate_row_classes(&py, p).unwrap()[0].representative().clone();
            let z = build_baby_verma(&py, p, &a, DEFAULT_MAX_DIM).unwrap();
            let want = (p as usize).pow((n * (n - 1) / 2 - d) as u32);
            assert_eq!(z.whittaker_vectors().len(), want, "{:?}", py.spec());
        }
    }
}

#[test]
fn highest_weight_vector() {
    for (parts, p) in [(&[1, 2][..], 3u64), (&[1, 1, 2], 2), (&[2, 2], 2)] {
        for py in all_pyramids(parts) {
            for class in enumerate_cc_classes(&py, p).unwrap() {
                let a = class.column_connected_member(Some(p)).unwrap();
                let m = build_induced(&py, p, &a, DEFAULT_MAX_DIM).unwrap();
                let v = highest_weight_check(&m).unwrap();
                assert!(v.iter().any(|&x| x != 0));
            }
        }
    }
    let p = py(&[1, 2], &[0, 0]);
    let a = enumerate_row_classes(&p, 2).unwrap()[0].representative().clone();
    let z = build_baby_verma(&p, 2, &a, DEFAULT_MAX_DIM).unwrap();
    assert!(highest_weight_check(&z).is_err());
}

#[test]
fn isomorphism_follows_row_equivalence() {
    let p = py(&[1, 2], &[0, 0]);
    let q = 3;
    let cc: Vec<Tableau> = enumerate_cc_classes(&p, q)
        .unwrap()
        .iter()
        .flat_map(|c| c.column_connected_members(Some(q)))
        .collect();
    let mods: Vec<MatrixModule> = cc.iter().map(|a| build_induced(&p, q, a, DEFAULT_MAX_DIM).unwrap()).collect();
    let mut r = rng();
    for (x, a) in cc.iter().enumerate() {
        assert_eq!(hom_space(&mods[x], &mods[x]).unwrap().len(), 1);
        for (y, b) in cc.iter().enumerate().skip(x + 1) {
            let want = if a.is_row_equivalent(b) { IsoVerdict::Isomorphic } else { IsoVerdict::NotIsomorphic };
            assert_eq!(are_isomorphic(&mods[x], &mods[y], &mut r).unwrap(), want);
        }
    }
}

#[test]
fn dual_of_dual() {
    let p = py(&[1, 2], &[1, 0]);
    let a = enumerate_cc_classes(&p, 2).unwrap()[0].column_connected_member(Some(2)).unwrap();
    let m = build_induced(&p, 2, &a, DEFAULT_MAX_DIM).unwrap();
    let dd = m.dual().dual();
    for ((_, x), (_, y)) in m.generators().zip(dd.generators()) {
        assert_eq!(x, y);
    }
    assert!(m.dual().axiom_violations().is_empty());
}

#[test]
fn whittaker_eigenvalues_on_minimal_modules() {
    let p = py(&[2, 2], &[0, 0]);
    let q = 2;
    let table = WGeneratorTable::build(&p, Ring::new(q).unwrap(), default_bound(&p)).unwrap();
    for class in enumerate_cc_classes(&p, q).unwrap() {
        let a = class.column_connected_member(Some(q)).unwrap();
        let m = build_induced(&p, q, &a, DEFAULT_MAX_DIM).unwrap();
        let vals = whittaker_d_eigenvalues(&m, &table).unwrap();
        for (k, v) in vals {
            let GenKey::D { i, r } = k else { unreachable!() };
            // e_r of the shifted row entries, computed by brute force over subsets
            let xs: Vec<i64> = a.row_entries(i).iter().map(|&x| x + i as i64).collect();
            let mut e = 0i64;
            for mask in 0u32..1 << xs.len() {
                if mask.count_ones() as usize == r {
                    e += (0..xs.len()).filter(|b| mask >> b & 1 == 1).map(|b| xs[b]).product::<i64>();
                }
            }
            assert_eq!(v as i64, e.rem_euclid(q as i64), "{:?} {k}", a.entries());
        }
    }
}

#[test]
fn minimal_module_suite_small() {
    let mut r = rng();
    for (parts, p) in [(&[1, 1][..], 2u64), (&[1, 2], 2), (&[1, 1], 3)] {
        for py in all_pyramids(parts) {
            let rep = check_minimal_modules(&py, p, DEFAULT_MAX_DIM, &mut r).unwrap();
            assert!(rep.checked > 0);
            assert!(rep.passed(), "{:?} p = {p}: {:?}", py.spec(), rep.records.first());
        }
    }
}

#[test]
fn single_box_characters() {
    // gl_1: D_1^{(1)} = e[1,1] acts on the character through a + 1
    let p = py(&[1], &[0]);
    let table = WGeneratorTable::build(&p, Ring::INTEGERS, 2).unwrap();
    for a in -3..=3 {
        let t = Tableau::new(&p, vec![a]).unwrap();
        let c = OneDimCharacter::new(&t, Shift::RhoTilde, Ring::INTEGERS).unwrap();
        assert_eq!(one_dim_action(&table.get(GenKey::D { i: 1, r: 1 }).unwrap(), &c).unwrap(), (a + 1) as i128);
    }
}

#[test]
fn one_dim_suite_up_to_four_boxes() {
    for n in 1..=4 {
        for part in Partition::all_of(n) {
            for py in Pyramid::enumerate(&part) {
                for domain in [EntryDomain::Prime(2), EntryDomain::Prime(3), EntryDomain::Window { lo: -1, width: 3 }] {
                    let rep = check_one_dim(&py, domain).unwrap();
                    assert!(rep.passed(), "{:?} {domain:?}: {:?}", py.spec(), rep.records.first());
                }
            }
        }
    }
}

#[test]
fn column_connected_requirement() {
    let p = py(&[1, 1], &[0, 0]);
    let t = Tableau::new(&p, vec![0, 0]).unwrap();
    assert!(OneDimCharacter::new(&t, Shift::RhoTilde, Ring::INTEGERS).is_err());
    let t = Tableau::new(&p, vec![1, 0]).unwrap();
    assert!(OneDimCharacter::new(&t, Shift::RhoTilde, Ring::INTEGERS).is_ok());
}

#[test]
fn fp_criterion_agrees_with_entrywise_test() {
    let mut r = rng();
    for p in [2u64, 3, 5] {
        let field = QuadraticExtension::new(p).unwrap();
        for n in 1..=4 {
            for part in Partition::all_of(n) {
                let py = Pyramid::left_justified(part);
                for _ in 0..100 {
                    let a = random_column_connected(&field, &py, 0.3, &mut r);
                    assert_eq!(fp_factoring_test(&field, &py, &a).unwrap(), entrywise_fp_test(&a));
                }
            }
        }
    }
}

#[test]
fn fp_criterion_single_box() {
    for p in [2u64, 3, 7] {
        let field = QuadraticExtension::new(p).unwrap();
        let py = py(&[1], &[0]);
        assert!(fp_factoring_test(&field, &py, &[Ext(1, 0)]).unwrap());
        assert!(!fp_factoring_test(&field, &py, &[Ext(0, 1)]).unwrap());
    }
}

#[test]
fn main_theorem_one_two_mod_two() {
    let mut r = rng();
    for py in all_pyramids(&[1, 2]) {
        let rep = verify_main_theorem(&py, 2, DEFAULT_MAX_DIM, &mut r).unwrap();
        assert!(rep.exhaustive);
        assert_eq!(rep.classes.len(), enumerate_row_classes(&py, 2).unwrap().len());
        assert_eq!(rep.minimal_dim, 4);
        assert_eq!(rep.minimal_heads, rep.c_pi);
        assert!(rep.passed(), "{:?}", rep.checks.records);
    }
}
