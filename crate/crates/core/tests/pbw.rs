use std::sync::Arc;

use proptest::prelude::*;
use wpyramid_core::linalg::IntMatrix;
use wpyramid_core::pbw::{AlgebraContext, Element, Parabolic, Straightener};
use wpyramid_core::pyramid::{LieDatum, Partition, Pyramid};
use wpyramid_core::Ring;

fn lie(parts: &[usize], offsets: &[usize]) -> LieDatum {
    LieDatum::new(&Pyramid::new(Partition::new(parts.to_vec()).unwrap(), offsets.to_vec()).unwrap())
}

/// Matrix of `e[i,j]` in the natural (`adjoint = false`) or adjoint representation.
fn rep_matrix(n: usize, (i, j): (usize, usize), adjoint: bool) -> IntMatrix {
    let mut e = IntMatrix::zeros(n, n);
    e.set(i - 1, j - 1, 1);
    if !adjoint {
        return e;
    }
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
    ad
}

/// Evaluate a PBW element by multiplying out each monomial.
fn evaluate(x: &Element, adjoint: bool) -> IntMatrix {
    let ctx = x.context();
    let n = ctx.lie().n();
    let size = if adjoint { n * n } else { n };
    let mut total = IntMatrix::zeros(size, size);
    for (m, &c) in x.terms() {
        let mut prod = IntMatrix::identity(size);
        for g in m.factors() {
            prod = prod.mul(&rep_matrix(n, ctx.unit(g), adjoint));
        }
        for r in 0..size {
            for s in 0..size {
                total.add_at(r, s, c * prod.get(r, s));
            }
        }
    }
    total
}

fn word_matrix(n: usize, word: &[(usize, usize)], adjoint: bool) -> IntMatrix {
    let size = if adjoint { n * n } else { n };
    word.iter().fold(IntMatrix::identity(size), |acc, &u| acc.mul(&rep_matrix(n, u, adjoint)))
}

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((1..=n, 1..=n), 0..=max_len)
}

fn elem(st: &mut Straightener, words: &[(i128, Vec<(usize, usize)>)]) -> Element {
    let ctx = st.context().clone();
    let mut out = Element::zero(&ctx);
    for (c, w) in words {
        out = out.add(&st.word(w).unwrap().scale(*c)).unwrap();
    }
    out
}

fn gl3() -> Arc<AlgebraContext> {
    AlgebraContext::enveloping_gl(&lie(&[1, 2], &[0, 0]), Ring::INTEGERS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straightening_agrees_with_matrix_products(word in arb_word(3, 6)) {
        let ctx = gl3();
        let mut st = Straightener::new(&ctx);
        let x = st.word(&word).unwrap();
        for adjoint in [false, true] {
            prop_assert_eq!(evaluate(&x, adjoint), word_matrix(3, &word, adjoint));
        }
    }

    #[test]
    fn multiplication_is_associative(
        a in arb_word(3, 3), b in arb_word(3, 3), c in arb_word(3, 3),
        ca in -3i128..3, cb in -3i128..3,
    ) {
        let ctx = gl3();
        let mut st = Straightener::new(&ctx);
        let x = elem(&mut st, &[(1, a.clone()), (ca, b.clone())]);
        let y = elem(&mut st, &[(cb, c.clone()), (1, a)]);
        let z = elem(&mut st, &[(1, b), (2, c)]);
        let xy = st.mul(&x, &y).unwrap();
        let yz = st.mul(&y, &z).unwrap();
        prop_assert_eq!(st.mul(&xy, &z).unwrap(), st.mul(&x, &yz).unwrap());
    }

    #[test]
    fn jacobi_identity(a in arb_word(3, 2), b in arb_word(3, 2), c in arb_word(3, 2)) {
        let ctx = gl3();
        let mut st = Straightener::new(&ctx);
        let (x, y, z) = (st.word(&a).unwrap(), st.word(&b).unwrap(), st.word(&c).unwrap());
        let yz = st.commutator(&y, &z).unwrap();
        let zx = st.commutator(&z, &x).unwrap();
        let xy = st.commutator(&x, &y).unwrap();
        let total = st.commutator(&x, &yz).unwrap()
            .add(&st.commutator(&y, &zx).unwrap()).unwrap()
            .add(&st.commutator(&z, &xy).unwrap()).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn reduced_words_agree_mod_p(word in arb_word(3, 5)) {
        // with χ = 0 on every unit used the reduced product only differs by p-th powers,
        // so on words with exponents below p it matches the integral product mod p
        let l = lie(&[1, 2], &[0, 0]);
        let p = 5u64;
        let zc = AlgebraContext::enveloping_gl(&l, Ring::INTEGERS);
        let fc = AlgebraContext::enveloping_gl(&l, Ring::new(p).unwrap());
        let x = Straightener::new(&zc).word(&word).unwrap();
        let y = Straightener::new(&fc).word(&word).unwrap();
        let reduced: Vec<_> = x.terms().iter()
            .filter(|(_, &c)| c.rem_euclid(p as i128) != 0)
            .map(|(m, &c)| (m.clone(), c.rem_euclid(p as i128))).collect();
        let got: Vec<_> = y.terms().iter().map(|(m, &c)| (m.clone(), c)).collect();
        prop_assert_eq!(reduced, got);
    }

    #[test]
    fn twisted_action_is_a_group_action(
        word in proptest::collection::vec(0usize..8, 1..=3), s in -3i128..=3, t in -3i128..=3, root in 0usize..2,
    ) {
        let l = lie(&[1, 2], &[0, 0]);
        let mut par = Parabolic::new(&l, Ring::INTEGERS);
        let units = AlgebraContext::p_units(&l);
        let w: Vec<(usize, usize)> = word.iter().map(|&k| units[k % units.len()]).collect();
        let x = par.straightener().word(&w).unwrap();
        let (i, j) = AlgebraContext::m_units(&l)[root];
        let ts = par.twisted_adjoint(i, j, t, &x).unwrap();
        let both = par.twisted_adjoint(i, j, s, &ts).unwrap();
        prop_assert_eq!(both, par.twisted_adjoint(i, j, s + t, &x).unwrap());
        prop_assert_eq!(par.twisted_adjoint(i, j, 0, &x).unwrap(), x);
    }
}

#[test]
fn reduced_power_of_chi_root() {
    // left-justified (1,2): e = e[2,3], χ(e[3,2]) = 1
    let l = lie(&[1, 2], &[0, 0]);
    for p in [2u64, 3, 5] {
        let ctx = AlgebraContext::reduced_gl(&l, p).unwrap();
        let mut st = Straightener::new(&ctx);
        assert_eq!(st.reduce_power(3, 2).unwrap(), Element::one(&ctx));
        assert!(st.reduce_power(3, 1).unwrap().is_zero());
        assert_eq!(st.reduce_power(2, 2).unwrap(), Element::unit(&ctx, 2, 2).unwrap());
    }
}

#[test]
fn parabolic_prefix_embeds() {
    let l = lie(&[2, 3], &[1, 0]);
    let par = Parabolic::new(&l, Ring::INTEGERS);
    let x = Element::unit(par.parabolic(), 1, 2).unwrap();
    let y = x.embed_into(par.gl()).unwrap();
    assert_eq!(par.project(&y).unwrap(), x);
}
