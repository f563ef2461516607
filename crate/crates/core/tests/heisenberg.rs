use linepack::frames::{coherence, is_etf, vectors_from_gram, welch_bound};
use linepack::heisenberg::*;
use linepack::scheme::{is_commutative, scheme_from_action};
use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

const SPECS: &[&[u32]] = &[
    &[3],
    &[5],
    &[7],
    &[9],
    &[3, 3],
    &[11],
    &[13],
    &[15],
    &[3, 5],
    &[5, 3],
];

fn spec(m: &[u32]) -> AbelianGroupSpec {
    AbelianGroupSpec::new(m.to_vec()).unwrap()
}

fn all_elements(s: &AbelianGroupSpec) -> Vec<HeisenbergElement> {
    k_elements(s)
        .into_iter()
        .flat_map(|u| {
            (0..s.exponent()).map(move |z| HeisenbergElement {
                a: u.0.clone(),
                alpha: u.1.clone(),
                z: RootOfUnity::new(z, s.exponent()),
            })
        })
        .collect()
}

fn element_strategy(m: &'static [u32]) -> impl Strategy<Value = HeisenbergElement> {
    let s = spec(m);
    let n = s.exponent();
    let tuple = m.iter().map(|&k| 0..k).collect::<Vec<_>>();
    (tuple.clone(), tuple, 0..n).prop_map(move |(a, alpha, z)| HeisenbergElement {
        a,
        alpha,
        z: RootOfUnity::new(z, n),
    })
}

#[test]
fn representation_property_exhaustive_z3() {
    let s = spec(&[3]);
    for g in [1, 2] {
        let gamma = GammaTwist::new(&s, g).unwrap();
        let elems = all_elements(&s);
        for x in &elems {
            for y in &elems {
                let lhs = &schrodinger_matrix(&s, gamma, x) * &schrodinger_matrix(&s, gamma, y);
                assert_eq!(
                    lhs,
                    schrodinger_matrix(&s, gamma, &heisenberg_multiply(&s, x, y))
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn representation_property_z9(x in element_strategy(&[9]), y in element_strategy(&[9])) {
        let s = spec(&[9]);
        let gamma = GammaTwist::new(&s, 2).unwrap();
        let lhs = &schrodinger_matrix(&s, gamma, &x) * &schrodinger_matrix(&s, gamma, &y);
        prop_assert_eq!(lhs, schrodinger_matrix(&s, gamma, &heisenberg_multiply(&s, &x, &y)));
    }

    #[test]
    fn representation_property_z3_z5(x in element_strategy(&[3, 5]), y in element_strategy(&[3, 5])) {
        let s = spec(&[3, 5]);
        let gamma = GammaTwist::new(&s, 7).unwrap();
        let lhs = &schrodinger_matrix(&s, gamma, &x) * &schrodinger_matrix(&s, gamma, &y);
        prop_assert_eq!(lhs, schrodinger_matrix(&s, gamma, &heisenberg_multiply(&s, &x, &y)));
    }

    #[test]
    fn group_law_is_associative(x in element_strategy(&[3, 9]), y in element_strategy(&[3, 9]), z in element_strategy(&[3, 9])) {
        let s = spec(&[3, 9]);
        let l = heisenberg_multiply(&s, &heisenberg_multiply(&s, &x, &y), &z);
        let r = heisenberg_multiply(&s, &x, &heisenberg_multiply(&s, &y, &z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn form_is_antisymmetric_and_bilinear(x in element_strategy(&[3, 9]), y in element_strategy(&[3, 9]), z in element_strategy(&[3, 9])) {
        let s = spec(&[3, 9]);
        let f = |p: &HeisenbergElement, q: &HeisenbergElement| symplectic_form(&s, (&p.a, &p.alpha), (&q.a, &q.alpha));
        prop_assert_eq!((f(&x, &y) * f(&y, &x)).k, 0);
        let sum = heisenberg_multiply(&s, &x, &y);
        prop_assert_eq!(f(&sum, &z), f(&x, &z) * f(&y, &z));
    }
}

#[test]
fn form_factors_over_components() {
    let s = spec(&[3, 9]);
    let (s1, s2) = (spec(&[3]), spec(&[9]));
    for u in k_elements(&s) {
        for v in k_elements(&s).into_iter().step_by(7) {
            let whole = symplectic_form(&s, (&u.0, &u.1), (&v.0, &v.1));
            let p1 = symplectic_form(&s1, (&u.0[..1], &u.1[..1]), (&v.0[..1], &v.1[..1]));
            let p2 = symplectic_form(&s2, (&u.0[1..], &u.1[1..]), (&v.0[1..], &v.1[1..]));
            // lift both factors to exponent 9
            assert_eq!(whole.k, (p1.k * 3 + p2.k) % 9);
        }
    }
}

#[test]
fn trace_character() {
    for m in SPECS.iter().filter(|m| m.iter().product::<u32>() <= 15) {
        let s = spec(m);
        let gamma = GammaTwist::new(&s, 2).unwrap();
        for x in all_elements(&s) {
            let mut t = schrodinger_matrix(&s, gamma, &x).trace();
            if x.a.iter().chain(&x.alpha).all(|&c| c == 0) {
                t.add_term(
                    -Rational64::from_integer(s.order() as i64),
                    gamma.apply(x.z).k,
                );
            }
            assert!(t.is_zero(), "trace mismatch at {x} over {m:?}");
        }
    }
}

#[test]
fn translates_form_orthogonal_basis() {
    for m in SPECS.iter().filter(|m| m.iter().product::<u32>() <= 9) {
        let s = spec(m);
        let gamma = GammaTwist::identity();
        let mats: Vec<MonomialMatrix> = k_elements(&s)
            .iter()
            .map(|u| schrodinger_matrix(&s, gamma, &HeisenbergElement::from_k(&s, u)))
            .collect();
        for (i, a) in mats.iter().enumerate() {
            for (j, b) in mats.iter().enumerate() {
                // tr(a b*) for monomial matrices
                let mut t = Cyclotomic::zero(s.exponent());
                for r in 0..a.size() {
                    if a.cols[r] == b.cols[r] {
                        t.add_term(
                            Rational64::from_integer(1),
                            (a.phases[r] * b.phases[r].inv()).k,
                        );
                    }
                }
                if i == j {
                    t.add_term(-Rational64::from_integer(s.order() as i64), 0);
                }
                assert!(t.is_zero());
            }
        }
    }
}

#[test]
fn closed_form_equals_direct() {
    for m in SPECS {
        let s = spec(m);
        let twists: Vec<u32> = (1..s.exponent())
            .filter(|g| num_integer::gcd(*g, s.exponent()) == 1)
            .take(2)
            .collect();
        for g in twists {
            let gamma = GammaTwist::new(&s, g).unwrap();
            for parity in [Parity::Even, Parity::Odd] {
                let closed = heis_etf_gram(&s, gamma, parity);
                let direct = heis_etf_gram_direct(&s, gamma, parity).unwrap();
                assert!(
                    closed_form_matches_direct(&closed, &direct),
                    "{m:?} g={g} {parity:?}"
                );
            }
        }
    }
}

#[test]
fn direct_gram_is_size_capped() {
    assert!(
        heis_etf_gram_direct(&spec(&[3, 3, 3, 3]), GammaTwist::identity(), Parity::Odd).is_err()
    );
}

#[test]
fn generated_grams_are_etfs() {
    for m in SPECS.iter().filter(|m| m.iter().product::<u32>() <= 9) {
        let s = spec(m);
        let a = s.order();
        for (parity, d, mu) in [
            (Parity::Odd, a * (a - 1) / 2, 1.0 / (a as f64 - 1.0)),
            (Parity::Even, a * (a + 1) / 2, 1.0 / (a as f64 + 1.0)),
        ] {
            let g = heis_etf_gram(&s, GammaTwist::identity(), parity).to_gram();
            assert!(is_etf(&g, 1e-9));
            assert_eq!(vectors_from_gram(&g, 1e-9).unwrap().d, d);
            let c = coherence(&g).unwrap();
            assert!((c - mu).abs() < 1e-12);
            assert!((c - welch_bound(a * a, d).unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn z3_examples() {
    let s = spec(&[3]);
    let odd = heis_etf_gram(&s, GammaTwist::identity(), Parity::Odd).to_gram();
    assert_eq!(odd.n(), 9);
    assert!((odd.entries()[(0, 0)].re - 1.0).abs() < 1e-15);
    assert!((coherence(&odd).unwrap() - 0.5).abs() < 1e-12);
    let even = heis_etf_gram(&s, GammaTwist::identity(), Parity::Even).to_gram();
    assert!((even.entries()[(0, 0)].re - 2.0).abs() < 1e-15);
    assert!((coherence(&even).unwrap() - 0.25).abs() < 1e-12);
    let odd5 = heis_etf_gram(&spec(&[5]), GammaTwist::identity(), Parity::Odd).to_gram();
    assert_eq!(vectors_from_gram(&odd5, 1e-9).unwrap().d, 10);
    assert!((coherence(&odd5).unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn frame_operator_on_even_space() {
    let s = spec(&[5]);
    let n = s.order();
    let (pe, _) = parity_projectors(&s);
    let pe = pe.map(|q| Complex64::new(*q.numer() as f64 / *q.denom() as f64, 0.0));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let r = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let t = &r * &pe;
    let hs = |x: &DMatrix<Complex64>, y: &DMatrix<Complex64>| (x * y.adjoint()).trace();
    let total: f64 = k_elements(&s)
        .iter()
        .map(|u| {
            let p = schrodinger_matrix(
                &s,
                GammaTwist::identity(),
                &HeisenbergElement::from_k(&s, u),
            )
            .to_dense()
                * &pe;
            hs(&t, &p).norm_sqr()
        })
        .sum();
    assert!((total - n as f64 * hs(&t, &t).re).abs() < 1e-8 * total);
}

#[test]
fn positive_type_is_symplectic_invariant() {
    let s = spec(&[3]);
    for parity in [Parity::Even, Parity::Odd] {
        let g = heis_etf_gram(&s, GammaTwist::identity(), parity);
        let ks = k_elements(&s);
        for m in [[1u32, 1, 0, 1], [1, 0, 1, 1], [0, 2, 1, 0], [2, 0, 0, 2]] {
            assert!(sp_membership(3, [[m[0], m[1]], [m[2], m[3]]]).unwrap());
            for (k, u) in ks.iter().enumerate() {
                let image = (
                    vec![(m[0] * u.0[0] + m[1] * u.1[0]) % 3],
                    vec![(m[2] * u.0[0] + m[3] * u.1[0]) % 3],
                );
                let k2 = ks.iter().position(|v| *v == image).unwrap();
                assert_eq!(g.get(0, k), g.get(0, k2));
            }
        }
    }
}

#[test]
fn sp_membership_matches_determinant() {
    for p in [3u32, 5, 7] {
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let det = (a * d + p * p - b * c) % p;
                        match sp_membership(p, [[a, b], [c, d]]) {
                            Ok(v) => assert_eq!(v, det == 1),
                            Err(_) => assert_eq!(det, 0),
                        }
                    }
                }
            }
        }
    }
}

fn brute_force_sl2_order(p: u32) -> u64 {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn gelfand_pair_for_small_primes() {
    for p in [3u32, 5] {
        let action = heisenberg_permutation_action(p).unwrap();
        assert_eq!(action.point_count, (p * p * p) as usize);
        let expected = (p as u64).pow(3) * brute_force_sl2_order(p);
        assert_eq!(action.group.order(), BigUint::from(expected));
        let scheme = scheme_from_action(&action).unwrap();
        assert!(is_commutative(&scheme));
    }
    assert_eq!(brute_force_sl2_order(3), 24);
    assert!(heisenberg_permutation_action(11).is_err());
}
