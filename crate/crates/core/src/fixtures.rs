//! Concrete games and strategies used across the test suites and shipped
//! as documents: the token game and its five standard behaviours, the
//! two-column game with a column swap, and the four-event game carrying a
//! non-local uniform structure.

use std::collections::BTreeMap;

use crate::doc;
use crate::es::{Config, EsMap, EventDecl, EventStructure, Polarity};
use crate::game::{trivial_game, Game};
use crate::limits::Limits;
use crate::strategy::Strategy;
use crate::symmetry::{derive_law_from_factorization, group_from_generators, GroupAction};
use crate::uniform::UniformStrategy;
use crate::{Error, Result};

/// Single causal pair: one negative event enabling one positive event,
/// with trivial symmetry.
pub fn single_column_game() -> Game {
    let es = EventStructure::new(
        vec![
            EventDecl::new("a", Polarity::Negative),
            EventDecl::new("b", Polarity::Positive),
        ],
        &[("a".into(), "b".into())],
        &[],
    )
    .expect("single column is well-formed");
    trivial_game(&es)
}

/// Two independent columns `neg -> pos` with the column swap generating
/// the negative group; the positive group is trivial.
pub fn column_swap_game() -> Game {
    let es = EventStructure::new(
        vec![
            EventDecl::new("a", Polarity::Negative),
            EventDecl::new("b", Polarity::Positive),
            EventDecl::new("a'", Polarity::Negative),
            EventDecl::new("b'", Polarity::Positive),
        ],
        &[("a".into(), "b".into()), ("a'".into(), "b'".into())],
        &[],
    )
    .expect("two columns are well-formed");
    let swap = EsMap::new(es.clone(), es.clone(), vec![2, 3, 0, 1]).expect("swap is total");
    let limits = Limits::default();
    let (_, n_action) =
        group_from_generators(&[("s".to_string(), swap)], &es, &limits).expect("swap closes");
    let p_action = GroupAction::trivial(es.clone());
    let law = derive_law_from_factorization(&n_action, &p_action).expect("trivial P permutes");
    Game {
        es,
        n_action,
        p_action,
        law,
    }
}

fn adjacent_transposition_maps(
    es: &EventStructure,
    ids: &[String],
    prefix: &str,
) -> Vec<(String, EsMap)> {
    let mut gens = Vec::new();
    for k in 0..ids.len().saturating_sub(1) {
        let mut table: Vec<usize> = (0..es.n_events()).collect();
        let i = es.idx(&ids[k]).unwrap();
        let j = es.idx(&ids[k + 1]).unwrap();
        table.swap(i, j);
        gens.push((
            format!("{prefix}{k}"),
            EsMap::new(es.clone(), es.clone(), table).unwrap(),
        ));
    }
    gens
}

/// The token game truncated to `n` tokens per player: `n` negative and
/// `n` positive concurrent events, with the full symmetric group on each
/// polarity class and the direct-product law.
pub fn token_game(n: usize) -> Result<Game> {
    if n == 0 {
        return Err(Error::Precondition("need at least one token".into()));
    }
    let mut events = Vec::new();
    let neg_ids: Vec<String> = (0..n).map(|i| format!("neg{i}")).collect();
    let pos_ids: Vec<String> = (0..n).map(|i| format!("pos{i}")).collect();
    for id in &neg_ids {
        events.push(EventDecl::new(id.clone(), Polarity::Negative));
    }
    for id in &pos_ids {
        events.push(EventDecl::new(id.clone(), Polarity::Positive));
    }
    let es = EventStructure::new(events, &[], &[])?;
    let limits = Limits::default();
    let n_gens = adjacent_transposition_maps(&es, &neg_ids, "s");
    let p_gens = adjacent_transposition_maps(&es, &pos_ids, "t");
    let (_, n_action) = group_from_generators(&n_gens, &es, &limits)?;
    let (_, p_action) = group_from_generators(&p_gens, &es, &limits)?;
    // Disjoint supports commute, so the derived law is the direct swap.
    let law = derive_law_from_factorization(&n_action, &p_action)?;
    Ok(Game {
        es,
        n_action,
        p_action,
        law,
    })
}

/// The five token-game behaviours, named by what the strategy does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenStrategy {
    /// Answer every token with one token of its own.
    Echo,
    /// Never play.
    Silent,
    /// One unprompted token, then two per observed token (capped by the
    /// truncated supply).
    Eager,
    /// Answer only token number 2.
    SingleTrigger,
    /// Answer token number `k` with `k` tokens (capped by the supply).
    Counting,
}

impl TokenStrategy {
    pub fn all() -> [TokenStrategy; 5] {
        [
            TokenStrategy::Echo,
            TokenStrategy::Silent,
            TokenStrategy::Eager,
            TokenStrategy::SingleTrigger,
            TokenStrategy::Counting,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            TokenStrategy::Echo => "echo",
            TokenStrategy::Silent => "silent",
            TokenStrategy::Eager => "eager",
            TokenStrategy::SingleTrigger => "single-trigger",
            TokenStrategy::Counting => "counting",
        }
    }
}

/// Build one of the token-game behaviours over `token_game(n)`.
///
/// Internal events are `o{i}` for the observed tokens and `p{k}` for the
/// played ones; each played token projects to a distinct game token, in
/// order of appearance.
pub fn token_strategy(kind: TokenStrategy, n: usize) -> Result<Strategy> {
    let game = token_game(n)?;
    // (dependency on observed index or None, )
    let mut plays: Vec<Option<usize>> = Vec::new();
    match kind {
        TokenStrategy::Echo => {
            for i in 0..n {
                plays.push(Some(i));
            }
        }
        TokenStrategy::Silent => {}
        TokenStrategy::Eager => {
            plays.push(None);
            'outer: for i in 0..n {
                for _ in 0..2 {
                    if plays.len() == n {
                        break 'outer;
                    }
                    plays.push(Some(i));
                }
            }
        }
        TokenStrategy::SingleTrigger => {
            if n < 3 {
                return Err(Error::Precondition(
                    "the single-trigger behaviour needs token number 2".into(),
                ));
            }
            plays.push(Some(2));
        }
        TokenStrategy::Counting => {
            if n < 3 {
                return Err(Error::Precondition(
                    "the counting behaviour needs token number 2".into(),
                ));
            }
            'outer2: for i in 0..n {
                for _ in 0..i {
                    if plays.len() == n {
                        break 'outer2;
                    }
                    plays.push(Some(i));
                }
            }
        }
    }
    let mut events = Vec::new();
    let mut causes = Vec::new();
    let mut proj_pairs: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        events.push(EventDecl::new(format!("o{i}"), Polarity::Negative));
        proj_pairs.push((format!("o{i}"), format!("neg{i}")));
    }
    for (k, dep) in plays.iter().enumerate() {
        events.push(EventDecl::new(format!("p{k}"), Polarity::Positive));
        proj_pairs.push((format!("p{k}"), format!("pos{k}")));
        if let Some(i) = dep {
            causes.push((format!("o{i}"), format!("p{k}")));
        }
    }
    let internal = EventStructure::new(events, &causes, &[])?;
    let proj = EsMap::from_pairs(internal.clone(), game.es.clone(), &proj_pairs)?;
    Strategy::new(internal, game, proj)
}

/// One negative event enabling two concurrent positive events, with the
/// positive swap generating the positive group. A negative game with
/// nontrivial positive symmetry.
pub fn fork_game() -> Game {
    let es = EventStructure::new(
        vec![
            EventDecl::new("a", Polarity::Negative),
            EventDecl::new("b0", Polarity::Positive),
            EventDecl::new("b1", Polarity::Positive),
        ],
        &[("a".into(), "b0".into()), ("a".into(), "b1".into())],
        &[],
    )
    .expect("fork is well-formed");
    let swap = EsMap::new(es.clone(), es.clone(), vec![0, 2, 1]).unwrap();
    let limits = Limits::default();
    let (_, p_action) =
        group_from_generators(&[("t".to_string(), swap)], &es, &limits).expect("swap closes");
    let n_action = GroupAction::trivial(es.clone());
    let law = derive_law_from_factorization(&n_action, &p_action).expect("trivial N permutes");
    Game {
        es,
        n_action,
        p_action,
        law,
    }
}

/// Two negative and two positive concurrent events with a swap on each
/// class and the direct law.
pub fn swap_pair_game() -> Game {
    let es = EventStructure::new(
        vec![
            EventDecl::new("n0", Polarity::Negative),
            EventDecl::new("n1", Polarity::Negative),
            EventDecl::new("q0", Polarity::Positive),
            EventDecl::new("q1", Polarity::Positive),
        ],
        &[],
        &[],
    )
    .expect("four concurrent events are well-formed");
    let limits = Limits::default();
    let nswap = EsMap::new(es.clone(), es.clone(), vec![1, 0, 2, 3]).unwrap();
    let pswap = EsMap::new(es.clone(), es.clone(), vec![0, 1, 3, 2]).unwrap();
    let (_, n_action) =
        group_from_generators(&[("a".to_string(), nswap)], &es, &limits).unwrap();
    let (_, p_action) =
        group_from_generators(&[("b".to_string(), pswap)], &es, &limits).unwrap();
    let law = derive_law_from_factorization(&n_action, &p_action).unwrap();
    Game {
        es,
        n_action,
        p_action,
        law,
    }
}

/// The identity strategy on [`swap_pair_game`] with the uniform structure
/// whose response swaps the positive events whenever the negative ones
/// are swapped: valid as an algebra, but the uniformity is not local.
pub fn nonlocal_uniform() -> Result<(Game, UniformStrategy)> {
    let game = swap_pair_game();
    let strategy = Strategy::identity(&game);
    let limits = Limits::default();
    let configs = crate::es::enumerate_configurations(&strategy.internal, &limits)?;
    let alpha = game.n_group().elem("a").expect("negative swap exists");
    let beta = game.p_group().elem("b").expect("positive swap exists");
    let e_n = game.n_group().unit();
    let e_p = game.p_group().unit();
    // phi_id = id with unit responses; phi_alpha = beta . alpha with a
    // global response beta.
    let both: Vec<usize> = {
        let a_tab = game.n_action.table(alpha);
        let b_tab = game.p_action.table(beta);
        (0..game.es.n_events()).map(|ev| b_tab[a_tab[ev]]).collect()
    };
    let mut phi = BTreeMap::new();
    for x in configs.iter() {
        phi.insert((e_n, x), (e_p, x));
        let mut image = 0u128;
        for ev in x.iter() {
            image |= 1u128 << both[ev];
        }
        phi.insert((alpha, x), (beta, Config(image)));
    }
    Ok((game, UniformStrategy { strategy, phi }))
}

/// The shippable catalog: every named bundle the repository's data
/// directory carries, including the negative fixtures tagged with the
/// validator they are expected to fail.
pub fn catalog() -> Result<BTreeMap<String, doc::Bundle>> {
    use doc::{add_game_docs, strategy_to_doc, uniform_to_doc, Bundle, DocBody};

    let mut bundles = BTreeMap::new();

    let mut single = Bundle::new();
    add_game_docs(&mut single, "single-column", &single_column_game());
    bundles.insert("single_column".to_string(), single);

    let mut column = Bundle::new();
    add_game_docs(&mut column, "column-swap", &column_swap_game());
    bundles.insert("column_swap".to_string(), column);

    let mut fork = Bundle::new();
    add_game_docs(&mut fork, "fork", &fork_game());
    bundles.insert("fork".to_string(), fork);

    let mut token2 = Bundle::new();
    let game2 = token_game(2)?;
    let game2_ref = add_game_docs(&mut token2, "token2", &game2);
    for kind in [TokenStrategy::Echo, TokenStrategy::Silent, TokenStrategy::Eager] {
        let s = token_strategy(kind, 2)?;
        token2.insert(kind.name(), DocBody::Strategy(strategy_to_doc(&s, &game2_ref)));
    }
    bundles.insert("token2".to_string(), token2);

    let mut token3 = Bundle::new();
    let game3 = token_game(3)?;
    let game3_ref = add_game_docs(&mut token3, "token3", &game3);
    for kind in [TokenStrategy::SingleTrigger, TokenStrategy::Counting] {
        let s = token_strategy(kind, 3)?;
        token3.insert(kind.name(), DocBody::Strategy(strategy_to_doc(&s, &game3_ref)));
    }
    bundles.insert("token3".to_string(), token3);

    let mut swap_pair = Bundle::new();
    let (game, u) = nonlocal_uniform()?;
    let game_ref = add_game_docs(&mut swap_pair, "swap-pair", &game);
    swap_pair.insert(
        "identity-strategy",
        DocBody::Strategy(strategy_to_doc(&u.strategy, &game_ref)),
    );
    swap_pair.insert_expect_fail(
        "nonlocal-uniform",
        DocBody::UniformStrategy(uniform_to_doc(&u, "identity-strategy")),
        "locality",
    );
    bundles.insert("swap_pair".to_string(), swap_pair);

    let mut negative = Bundle::new();
    negative.insert_expect_fail(
        "broken-heredity",
        DocBody::EventStructure(doc::EsDoc {
            events: vec![
                doc::EventField {
                    id: "a".into(),
                    polarity: Polarity::Negative,
                    label: None,
                },
                doc::EventField {
                    id: "a'".into(),
                    polarity: Polarity::Positive,
                    label: None,
                },
                doc::EventField {
                    id: "b".into(),
                    polarity: Polarity::Negative,
                    label: None,
                },
            ],
            covers: vec![("a".into(), "a'".into())],
            conflict: vec![("a".into(), "b".into())],
        }),
        "event-structure",
    );
    let swap_game = swap_pair_game();
    let neg_game_ref = add_game_docs(&mut negative, "swap-pair", &swap_game);
    let mut corrupt_law = doc::law_to_doc(&swap_game.law, "swap-pair.n-group", "swap-pair.p-group");
    for entry in &mut corrupt_law.table {
        if entry.n == "e" && entry.p == "b" {
            entry.to_p = "e".into();
        }
    }
    negative.insert_expect_fail("corrupt-law", DocBody::Law(corrupt_law), "law");
    // A strategy missing a reachable negative event.
    let deaf = EventStructure::new(
        vec![
            EventDecl::new("x", Polarity::Negative),
            EventDecl::new("y", Polarity::Positive),
        ],
        &[],
        &[],
    )?;
    let proj = EsMap::from_pairs(
        deaf.clone(),
        swap_game.es.clone(),
        &[("x".into(), "n0".into()), ("y".into(), "q0".into())],
    )?;
    let deaf_strategy = Strategy::new(deaf, swap_game, proj)?;
    negative.insert_expect_fail(
        "deaf-strategy",
        DocBody::Strategy(strategy_to_doc(&deaf_strategy, &neg_game_ref)),
        "strategy",
    );
    bundles.insert("negative".to_string(), negative);

    Ok(bundles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::enumerate_configurations;
    use crate::game::{polarity_of_game, validate_game, GamePolarity};
    use crate::strategy::validate_strategy;
    use crate::symmetry::validate_distributive_law;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn base_games_validate() {
        assert!(validate_game(&single_column_game(), &limits()).is_clean());
        assert!(validate_game(&column_swap_game(), &limits()).is_clean());
        assert!(validate_game(&swap_pair_game(), &limits()).is_clean());
        assert!(validate_game(&fork_game(), &limits()).is_clean());
        assert_eq!(polarity_of_game(&fork_game()), GamePolarity::Negative);
    }

    #[test]
    fn token_game_counts() {
        let g1 = token_game(1).unwrap();
        assert_eq!(g1.n_group().order(), 1);
        assert!(validate_game(&g1, &limits()).is_clean());

        let g2 = token_game(2).unwrap();
        assert_eq!(g2.n_group().order(), 2);
        assert_eq!(g2.p_group().order(), 2);
        assert_eq!(enumerate_configurations(&g2.es, &limits()).unwrap().len(), 16);
        assert!(validate_game(&g2, &limits()).is_clean());
        assert_eq!(polarity_of_game(&g2), GamePolarity::Mixed);

        // Derived law is the swap of components.
        for a in g2.n_group().elems() {
            for b in g2.p_group().elems() {
                assert_eq!(g2.law.apply(a, b), (b, a));
            }
        }
        assert!(validate_distributive_law(&g2.law).is_clean());
    }

    #[test]
    fn token_strategies_validate() {
        for kind in TokenStrategy::all() {
            let n = match kind {
                TokenStrategy::SingleTrigger | TokenStrategy::Counting => 3,
                _ => 2,
            };
            let s = token_strategy(kind, n).unwrap();
            let report = validate_strategy(&s, &limits());
            assert!(report.is_clean(), "{}: {}", kind.name(), report.summary());
        }
    }

    #[test]
    fn echo_has_one_causal_pair_per_token() {
        let s = token_strategy(TokenStrategy::Echo, 2).unwrap();
        assert_eq!(s.internal.n_events(), 4);
        assert_eq!(s.internal.covers().len(), 2);
    }

    #[test]
    fn single_trigger_depends_on_token_two_only() {
        let s = token_strategy(TokenStrategy::SingleTrigger, 3).unwrap();
        assert_eq!(s.internal.n_events(), 4);
        let covers = s.internal.covers();
        assert_eq!(covers.len(), 1);
        let (src, dst) = covers[0];
        assert_eq!(s.internal.id(src), "o2");
        assert_eq!(s.internal.id(dst), "p0");
    }

    #[test]
    fn counting_caps_at_the_available_supply() {
        let s = token_strategy(TokenStrategy::Counting, 3).unwrap();
        // One token after o1, two after o2 (3 played in total).
        assert_eq!(s.internal.n_events(), 6);
        assert_eq!(s.internal.covers().len(), 3);
    }

    #[test]
    fn eager_plays_one_unprompted_token() {
        let s = token_strategy(TokenStrategy::Eager, 2).unwrap();
        assert_eq!(s.internal.n_events(), 4);
        // p0 unprompted, p1 after o0; supply exhausted.
        assert_eq!(s.internal.covers().len(), 1);
    }

    #[test]
    fn catalog_round_trips_with_identical_verdicts() {
        let catalog = catalog().unwrap();
        assert!(catalog.len() >= 6);
        for (name, bundle) in catalog {
            let first = doc::check_bundle(&bundle, &limits()).unwrap();
            assert!(first.ok, "{name}: {}", doc::report_to_text(&first));
            let reloaded = doc::Bundle::from_json(&bundle.to_json()).unwrap();
            let second = doc::check_bundle(&reloaded, &limits()).unwrap();
            assert_eq!(
                serde_json::to_string(&first).unwrap(),
                serde_json::to_string(&second).unwrap(),
                "{name}: verdicts changed across the round trip"
            );
        }
    }
}
