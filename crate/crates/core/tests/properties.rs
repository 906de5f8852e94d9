//! Property tests over randomly generated small event structures.

use proptest::prelude::*;

use esgames::es::{
    enumerate_automorphisms, enumerate_configurations, parallel_es, Config, EsMap, EventDecl,
    EventStructure, Polarity,
};
use esgames::symmetry::group_from_generators;
use esgames::tcg::{family_from_action, validate_iso_family};
use esgames::Limits;

fn limits() -> Limits {
    Limits::default()
}

/// A random event structure with up to six events: random polarities, a
/// random sub-diagonal causal relation (acyclic by construction), and
/// random conflict pairs.
fn small_es() -> impl Strategy<Value = EventStructure> {
    (0usize..=6)
        .prop_flat_map(|n| {
            let pairs = n.saturating_sub(1) * n / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(0u8..10, pairs),
            )
        })
        .prop_map(|(n, polarities, edges)| {
            let events: Vec<EventDecl> = (0..n)
                .map(|i| {
                    EventDecl::new(
                        format!("e{i}"),
                        if polarities[i] {
                            Polarity::Positive
                        } else {
                            Polarity::Negative
                        },
                    )
                })
                .collect();
            let mut causes = Vec::new();
            let mut conflicts = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    match edges[k] {
                        0 | 1 => causes.push((format!("e{a}"), format!("e{b}"))),
                        2 => conflicts.push((format!("e{a}"), format!("e{b}"))),
                        _ => {}
                    }
                    k += 1;
                }
            }
            EventStructure::new(events, &causes, &conflicts).expect("acyclic by construction")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_the_subset_filter(es in small_es()) {
        let enumerated = enumerate_configurations(&es, &limits()).unwrap();
        let mut brute = Vec::new();
        for mask in 0..(1u128 << es.n_events()) {
            if es.down_closed(mask) && es.conflict_free(mask) {
                brute.push(Config(mask));
            }
        }
        brute.sort_by_key(|c| (c.len(), c.0));
        prop_assert_eq!(enumerated.list, brute);
    }

    #[test]
    fn parallel_configuration_count_is_the_product(a in small_es(), b in small_es()) {
        let p = parallel_es(&a, &b).unwrap();
        let ca = enumerate_configurations(&a, &limits()).unwrap().len();
        let cb = enumerate_configurations(&b, &limits()).unwrap().len();
        let cp = enumerate_configurations(&p, &limits()).unwrap().len();
        prop_assert_eq!(cp, ca * cb);
    }

    #[test]
    fn generator_closure_is_a_group_with_a_valid_family(
        es in small_es(),
        picks in proptest::collection::vec(any::<bool>(), 24),
    ) {
        let autos = enumerate_automorphisms(&es, &limits()).unwrap();
        let gens: Vec<(String, EsMap)> = autos
            .iter()
            .enumerate()
            .filter(|(i, _)| picks.get(*i).copied().unwrap_or(false))
            .map(|(i, m)| (format!("g{i}"), m.clone()))
            .collect();
        let (group, action) = group_from_generators(&gens, &es, &limits()).unwrap();
        prop_assert!(group.validate().is_clean());
        prop_assert!(action.validate().is_clean());
        prop_assert!(action.is_faithful());
        let family = family_from_action(&action, &limits()).unwrap();
        let report = validate_iso_family(&family, &limits());
        prop_assert!(report.is_clean(), "{}", report.summary());
    }

    #[test]
    fn automorphism_tables_are_closed_under_composition(es in small_es()) {
        let autos = enumerate_automorphisms(&es, &limits()).unwrap();
        let tables: Vec<Vec<usize>> = autos.iter().map(|m| m.table().to_vec()).collect();
        for f in &autos {
            prop_assert!(tables.contains(&f.inverse().unwrap().table().to_vec()));
            for g in &autos {
                prop_assert!(tables.contains(&f.compose(g).unwrap().table().to_vec()));
            }
        }
    }
}
