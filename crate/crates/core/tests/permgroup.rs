use linepack::permgroup::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn group_strategy() -> impl Strategy<Value = PermutationGroup> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(perm_strategy(n), 1..=3)
            .prop_map(move |g| PermutationGroup::new(n, g).unwrap())
    })
}

fn brute_force_elements(g: &PermutationGroup) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let id = Permutation::identity(g.degree());
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y = s.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_matches_enumeration(g in group_strategy()) {
        let elems = brute_force_elements(&g);
        prop_assert_eq!(g.order(), BigUint::from(elems.len()));
        for e in &elems {
            prop_assert!(g.contains(e));
        }
    }

    #[test]
    fn orbit_stabilizer(g in group_strategy(), point in 0usize..8) {
        let point = point % g.degree();
        let orb = orbit(&g, point).unwrap();
        let stab = point_stabilizer(&g, point).unwrap();
        prop_assert_eq!(stab.order() * BigUint::from(orb.len()), g.order());
        for s in stab.generators() {
            prop_assert_eq!(s.apply(point), point);
        }
    }

    #[test]
    fn pair_action_transitivity_is_two_transitivity(g in group_strategy()) {
        let n = g.degree();
        let elems = brute_force_elements(&g);
        let mut hit = std::collections::BTreeSet::new();
        for e in &elems {
            hit.insert((e.apply(0), e.apply(1)));
        }
        let two_transitive = hit.len() == n * (n - 1);
        let pairs = induced_pair_action(&GroupAction::natural(g)).unwrap();
        prop_assert_eq!(pairs.point_count, n * (n - 1));
        prop_assert_eq!(is_transitive(&pairs), two_transitive);
    }

    #[test]
    fn inverse_and_composition(p in perm_strategy(7), q in perm_strategy(7)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let pq = p.compose(&q);
        for x in 0..7 {
            prop_assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
        let round = Permutation::from_cycles(&p.to_string(), 7).unwrap();
        prop_assert_eq!(round, p);
    }
}

#[test]
fn group_json_round_trip() {
    let g = PermutationGroup::from_cycle_strings(5, &["(0 1 2 3 4)", "(0 1)"]).unwrap();
    let back = PermutationGroup::from_json(&serde_json::to_string(&g.to_spec()).unwrap()).unwrap();
    assert_eq!(back.order(), BigUint::from(120u32));
}
