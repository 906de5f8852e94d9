//! Games: an event structure together with a negative group action, a
//! positive group action, and a distributive law permuting them. Includes
//! the trivial, dual, parallel and (truncated) replication constructions.

use crate::es::{parallel_many, EventIdx, EventStructure};
use crate::limits::Limits;
use crate::report::Report;
use crate::symmetry::{
    validate_action_polarity, validate_distributive_law, DistributiveLaw, FiniteGroup, GElem,
    GroupAction, ProductGroup, RequiredPolarity,
};
use crate::{Error, Result};

/// A game: structure, symmetry groups, and the law tying them together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub es: EventStructure,
    pub n_action: GroupAction,
    pub p_action: GroupAction,
    pub law: DistributiveLaw,
}

impl Game {
    pub fn n_group(&self) -> &FiniteGroup {
        &self.n_action.group
    }

    pub fn p_group(&self) -> &FiniteGroup {
        &self.p_action.group
    }
}

/// Polarity of a game, read off its minimal events. An empty game is
/// vacuously both negative and positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamePolarity {
    Vacuous,
    Negative,
    Positive,
    Mixed,
}

impl GamePolarity {
    pub fn is_negative(self) -> bool {
        matches!(self, GamePolarity::Vacuous | GamePolarity::Negative)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, GamePolarity::Vacuous | GamePolarity::Positive)
    }
}

pub fn polarity_of_game(game: &Game) -> GamePolarity {
    let minimal = game.es.minimal_mask();
    if minimal == 0 {
        return GamePolarity::Vacuous;
    }
    let has_neg = minimal & game.es.neg_mask() != 0;
    let has_pos = minimal & game.es.pos_mask() != 0;
    match (has_neg, has_pos) {
        (true, false) => GamePolarity::Negative,
        (false, true) => GamePolarity::Positive,
        _ => GamePolarity::Mixed,
    }
}

/// All the game axioms: structure well-formed, actions of the required
/// polarity, law axioms, and the permutation square tying the law to the
/// actions.
pub fn validate_game(game: &Game, limits: &Limits) -> Report {
    let mut report = Report::new();
    report.merge(crate::es::validate_event_structure(&game.es));
    if game.n_action.target != game.es || game.p_action.target != game.es {
        report.push("game.components", "actions are not on the game's structure");
        return report;
    }
    if game.law.n_group != *game.n_group() || game.law.p_group != *game.p_group() {
        report.push("game.components", "law groups differ from the action groups");
        return report;
    }
    report.merge(game.n_action.validate());
    report.merge(game.p_action.validate());
    report.merge(validate_action_polarity(
        &game.n_action,
        RequiredPolarity::Negative,
        limits,
    ));
    report.merge(validate_action_polarity(
        &game.p_action,
        RequiredPolarity::Positive,
        limits,
    ));
    report.merge(validate_distributive_law(&game.law));
    // Permutation square: act(a) . act(b) = act(b') . act(a').
    let n_events = game.es.n_events();
    for a in game.n_group().elems() {
        for b in game.p_group().elems() {
            let (bp, ap) = game.law.apply(a, b);
            let ok = (0..n_events).all(|e| {
                game.n_action.act_idx(a, game.p_action.act_idx(b, e))
                    == game.p_action.act_idx(bp, game.n_action.act_idx(ap, e))
            });
            if !ok {
                report.push(
                    "game.permutation-square",
                    format!(
                        "act(`{}`) . act(`{}`) != act(`{}`) . act(`{}`)",
                        game.n_group().name(a),
                        game.p_group().name(b),
                        game.p_group().name(bp),
                        game.n_group().name(ap)
                    ),
                );
            }
        }
    }
    report
}

/// Any structure as a game with trivial symmetry.
pub fn trivial_game(es: &EventStructure) -> Game {
    Game {
        es: es.clone(),
        n_action: GroupAction::trivial(es.clone()),
        p_action: GroupAction::trivial(es.clone()),
        law: DistributiveLaw::direct(FiniteGroup::trivial(), FiniteGroup::trivial()),
    }
}

/// The dual game: polarity reversed, groups swapped, and the law
/// conjugated by invert-and-swap on both sides.
pub fn dual_game(game: &Game) -> Game {
    let es = game.es.dual();
    let n_action = GroupAction::new(
        game.p_group().clone(),
        es.clone(),
        game.p_group()
            .elems()
            .map(|g| game.p_action.table(g).to_vec())
            .collect(),
    )
    .expect("dual action tables carry over");
    let p_action = GroupAction::new(
        game.n_group().clone(),
        es.clone(),
        game.n_group()
            .elems()
            .map(|g| game.n_action.table(g).to_vec())
            .collect(),
    )
    .expect("dual action tables carry over");
    // lambda_dual(b, a) = isw(lambda(isw(b, a))).
    let table = game
        .p_group()
        .elems()
        .map(|b| {
            game.n_group()
                .elems()
                .map(|a| {
                    let (a1, b1) = game.law.isw(b, a);
                    let (b2, a2) = game.law.apply(a1, b1);
                    (game.n_group().inv(a2), game.p_group().inv(b2))
                })
                .collect()
        })
        .collect();
    let law = DistributiveLaw::new(game.p_group().clone(), game.n_group().clone(), table)
        .expect("dual law table is well-formed");
    Game {
        es,
        n_action,
        p_action,
        law,
    }
}

fn product_action(
    prod: &ProductGroup,
    target: EventStructure,
    left: &GroupAction,
    right: &GroupAction,
) -> GroupAction {
    let offset = left.target.n_events();
    let tables = prod
        .group
        .elems()
        .map(|g| {
            let (ga, gb) = prod.pair_of(g);
            let mut table: Vec<EventIdx> = Vec::with_capacity(target.n_events());
            for e in 0..offset {
                table.push(left.act_idx(ga, e));
            }
            for e in 0..right.target.n_events() {
                table.push(offset + right.act_idx(gb, e));
            }
            table
        })
        .collect();
    GroupAction::new(prod.group.clone(), target, tables).expect("product action is well-formed")
}

/// Parallel composition: tagged union of structures, product groups with
/// the componentwise action, and the componentwise law.
pub fn parallel_game(a: &Game, b: &Game) -> Result<Game> {
    let es = parallel_many(&[&a.es, &b.es])?;
    let prod_n = ProductGroup::new(a.n_group(), b.n_group());
    let prod_p = ProductGroup::new(a.p_group(), b.p_group());
    let n_action = product_action(&prod_n, es.clone(), &a.n_action, &b.n_action);
    let p_action = product_action(&prod_p, es.clone(), &a.p_action, &b.p_action);
    let table = prod_n
        .group
        .elems()
        .map(|n| {
            let (na, nb) = prod_n.pair_of(n);
            prod_p
                .group
                .elems()
                .map(|p| {
                    let (pa, pb) = prod_p.pair_of(p);
                    let (pa2, na2) = a.law.apply(na, pa);
                    let (pb2, nb2) = b.law.apply(nb, pb);
                    (prod_p.elem_of(pa2, pb2), prod_n.elem_of(na2, nb2))
                })
                .collect()
        })
        .collect();
    let law = DistributiveLaw::new(prod_n.group.clone(), prod_p.group.clone(), table)?;
    Ok(Game {
        es,
        n_action,
        p_action,
        law,
    })
}

/// Lexicographic permutations of `0..n`.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

fn perm_name(pi: &[usize]) -> String {
    pi.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("")
}

/// Indexing bookkeeping for the replicated game's symmetry group: the
/// permutation-plus-tuple elements of `bang_game`'s negative group.
struct WreathIndex {
    elems: Vec<(usize, Vec<GElem>)>,
    index: std::collections::HashMap<(usize, Vec<GElem>), GElem>,
}

impl WreathIndex {
    fn new(n_perms: usize, copies: usize, base_order: usize) -> Self {
        let mut elems = Vec::new();
        let mut index = std::collections::HashMap::new();
        for pi in 0..n_perms {
            let mut tuple = vec![0usize; copies];
            loop {
                index.insert((pi, tuple.clone()), elems.len());
                elems.push((pi, tuple.clone()));
                // Odometer over base elements, last coordinate fastest.
                let mut k = copies;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    tuple[k] += 1;
                    if tuple[k] < base_order {
                        break;
                    }
                    tuple[k] = 0;
                }
                if tuple.iter().all(|&t| t == 0) {
                    break;
                }
            }
        }
        WreathIndex { elems, index }
    }
}

/// Truncated replication `!A` at `copies` copies of a negative game: the
/// negative group couples a copy permutation with per-copy elements of
/// `N_A`; the positive group is a per-copy tuple of `P_A`.
pub fn bang_game(a: &Game, copies: usize, limits: &Limits) -> Result<Game> {
    if copies == 0 {
        return Err(Error::Precondition("need at least one copy".into()));
    }
    if !polarity_of_game(a).is_negative() {
        return Err(Error::Precondition(
            "replication requires a negative game: some initial move is positive".into(),
        ));
    }
    let parts: Vec<&EventStructure> = vec![&a.es; copies];
    let es = parallel_many(&parts)?;

    let perms = permutations(copies);
    let n_base = a.n_group().order();
    let p_base = a.p_group().order();
    let n_order = perms.len() * n_base.checked_pow(copies as u32).unwrap_or(usize::MAX);
    let p_order = p_base.checked_pow(copies as u32).unwrap_or(usize::MAX);
    if n_order > limits.max_group || p_order > limits.max_group {
        return Err(Error::GroupBound {
            bound: limits.max_group,
        });
    }

    let block = a.es.n_events();
    let nw = WreathIndex::new(perms.len(), copies, n_base);
    let n_names: Vec<String> = nw
        .elems
        .iter()
        .map(|(pi, tuple)| {
            format!(
                "[{};{}]",
                perm_name(&perms[*pi]),
                tuple
                    .iter()
                    .map(|&g| a.n_group().name(g).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    // (pi1,(x_i)) . (pi2,(y_i)) = (pi1 pi2, (x_{pi2(i)} . y_i)_i).
    let mut n_mul = vec![vec![0; nw.elems.len()]; nw.elems.len()];
    let mut n_inv = vec![0; nw.elems.len()];
    let perm_index: std::collections::HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    for (i, (pi1, xs)) in nw.elems.iter().enumerate() {
        let p1 = &perms[*pi1];
        let mut p1_inv = vec![0; copies];
        for (k, &v) in p1.iter().enumerate() {
            p1_inv[v] = k;
        }
        let inv_tuple: Vec<GElem> = (0..copies)
            .map(|k| a.n_group().inv(xs[p1_inv[k]]))
            .collect();
        n_inv[i] = nw.index[&(perm_index[&p1_inv], inv_tuple)];
        for (j, (pi2, ys)) in nw.elems.iter().enumerate() {
            let p2 = &perms[*pi2];
            let prod_perm: Vec<usize> = (0..copies).map(|k| p1[p2[k]]).collect();
            let prod_tuple: Vec<GElem> = (0..copies)
                .map(|k| a.n_group().mul(xs[p2[k]], ys[k]))
                .collect();
            n_mul[i][j] = nw.index[&(perm_index[&prod_perm], prod_tuple)];
        }
    }
    let n_unit = nw.index[&(perm_index[&(0..copies).collect::<Vec<_>>()], vec![a.n_group().unit(); copies])];
    let n_group = FiniteGroup::new(n_names, n_unit, n_mul, n_inv)?;
    let n_tables: Vec<Vec<EventIdx>> = nw
        .elems
        .iter()
        .map(|(pi, tuple)| {
            let p = &perms[*pi];
            let mut table = vec![0; es.n_events()];
            for i in 0..copies {
                for e in 0..block {
                    table[i * block + e] = p[i] * block + a.n_action.act_idx(tuple[i], e);
                }
            }
            table
        })
        .collect();
    let n_action = GroupAction::new(n_group.clone(), es.clone(), n_tables)?;

    let pw = WreathIndex::new(1, copies, p_base);
    let p_names: Vec<String> = pw
        .elems
        .iter()
        .map(|(_, tuple)| {
            format!(
                "[{}]",
                tuple
                    .iter()
                    .map(|&g| a.p_group().name(g).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    let mut p_mul = vec![vec![0; pw.elems.len()]; pw.elems.len()];
    let mut p_inv = vec![0; pw.elems.len()];
    for (i, (_, xs)) in pw.elems.iter().enumerate() {
        p_inv[i] = pw.index[&(0, xs.iter().map(|&g| a.p_group().inv(g)).collect::<Vec<_>>())];
        for (j, (_, ys)) in pw.elems.iter().enumerate() {
            let prod: Vec<GElem> = (0..copies)
                .map(|k| a.p_group().mul(xs[k], ys[k]))
                .collect();
            p_mul[i][j] = pw.index[&(0, prod)];
        }
    }
    let p_unit = pw.index[&(0, vec![a.p_group().unit(); copies])];
    let p_group = FiniteGroup::new(p_names, p_unit, p_mul, p_inv)?;
    let p_tables: Vec<Vec<EventIdx>> = pw
        .elems
        .iter()
        .map(|(_, tuple)| {
            let mut table = vec![0; es.n_events()];
            for i in 0..copies {
                for e in 0..block {
                    table[i * block + e] = i * block + a.p_action.act_idx(tuple[i], e);
                }
            }
            table
        })
        .collect();
    let p_action = GroupAction::new(p_group.clone(), es.clone(), p_tables)?;

    // lambda((pi,(x_i)),(b_i)) = ((b'_{pi^-1(i)})_i, (pi,(x'_i))) with
    // (b'_i, x'_i) = lambda_A(x_i, b_i).
    let mut table = vec![vec![(0usize, 0usize); p_group.order()]; n_group.order()];
    for (ni, (pi, xs)) in nw.elems.iter().enumerate() {
        let p = &perms[*pi];
        let mut p_inv_perm = vec![0; copies];
        for (k, &v) in p.iter().enumerate() {
            p_inv_perm[v] = k;
        }
        for (pj, (_, bs)) in pw.elems.iter().enumerate() {
            let mut bprime = vec![0; copies];
            let mut xprime = vec![0; copies];
            for i in 0..copies {
                let (bp, xp) = a.law.apply(xs[i], bs[i]);
                bprime[i] = bp;
                xprime[i] = xp;
            }
            let shifted: Vec<GElem> = (0..copies).map(|i| bprime[p_inv_perm[i]]).collect();
            table[ni][pj] = (pw.index[&(0, shifted)], nw.index[&(*pi, xprime)]);
        }
    }
    let law = DistributiveLaw::new(n_group.clone(), p_group.clone(), table)?;
    Ok(Game {
        es,
        n_action,
        p_action,
        law,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::testutil::{es, two_columns};
    use crate::es::{enumerate_configurations, EsMap, Polarity};
    use crate::symmetry::{classify_automorphism, derive_law_from_factorization, group_from_generators};

    fn limits() -> Limits {
        Limits::default()
    }

    pub(crate) fn column_swap_game() -> Game {
        let e = two_columns();
        let swap = EsMap::new(e.clone(), e.clone(), vec![2, 3, 0, 1]).unwrap();
        let (_, n_action) =
            group_from_generators(&[("s".to_string(), swap)], &e, &limits()).unwrap();
        let p_action = GroupAction::trivial(e.clone());
        let law = derive_law_from_factorization(&n_action, &p_action).unwrap();
        Game {
            es: e,
            n_action,
            p_action,
            law,
        }
    }

    fn single_neg_game() -> Game {
        trivial_game(&es(&[("a", Polarity::Negative)], &[], &[]))
    }

    #[test]
    fn trivial_game_validates_on_any_valid_structure() {
        assert!(validate_game(&trivial_game(&two_columns()), &limits()).is_clean());
        assert!(validate_game(&trivial_game(&EventStructure::empty()), &limits()).is_clean());
    }

    #[test]
    fn column_swap_game_validates() {
        assert!(validate_game(&column_swap_game(), &limits()).is_clean());
    }

    #[test]
    fn swap_in_the_positive_group_is_rejected() {
        let g = column_swap_game();
        let bad = Game {
            es: g.es.clone(),
            n_action: GroupAction::trivial(g.es.clone()),
            p_action: g.n_action.clone(),
            law: DistributiveLaw::direct(FiniteGroup::trivial(), g.n_group().clone()),
        };
        let report = validate_game(&bad, &limits());
        assert!(report.violates("action.polarity"));
        assert!(report
            .summary()
            .contains("positive action contains non-positive automorphism"));
    }

    #[test]
    fn dual_of_trivial_is_trivial_of_dual() {
        let e = two_columns();
        assert_eq!(dual_game(&trivial_game(&e)), trivial_game(&e.dual()));
    }

    #[test]
    fn dual_is_an_involution_bit_exact() {
        for game in [column_swap_game(), single_neg_game()] {
            assert_eq!(dual_game(&dual_game(&game)), game);
        }
    }

    #[test]
    fn dual_swaps_groups_and_flips_the_swap_polarity() {
        let g = column_swap_game();
        let d = dual_game(&g);
        assert!(validate_game(&d, &limits()).is_clean());
        assert_eq!(d.n_group().order(), 1);
        assert_eq!(d.p_group().order(), 2);
        let s = d.p_group().elem("s").unwrap();
        let theta = d.p_action.as_map(s);
        assert_eq!(
            classify_automorphism(&d.es, &theta, &limits()).unwrap(),
            (false, true)
        );
    }

    #[test]
    fn parallel_game_validates_and_multiplies_group_orders() {
        let g = column_swap_game();
        let d = dual_game(&g);
        let h = parallel_game(&g, &d).unwrap();
        assert_eq!(h.n_group().order(), g.n_group().order() * d.n_group().order());
        assert_eq!(h.p_group().order(), g.p_group().order() * d.p_group().order());
        assert!(validate_game(&h, &limits()).is_clean());
    }

    #[test]
    fn parallel_with_empty_trivial_game_preserves_configurations() {
        let g = column_swap_game();
        let unit = trivial_game(&EventStructure::empty());
        let h = parallel_game(&g, &unit).unwrap();
        assert_eq!(h.n_group().order(), g.n_group().order());
        let cg = enumerate_configurations(&g.es, &limits()).unwrap().len();
        let ch = enumerate_configurations(&h.es, &limits()).unwrap().len();
        assert_eq!(cg, ch);
        assert!(validate_game(&h, &limits()).is_clean());
    }

    #[test]
    fn parallel_law_restricts_to_the_components() {
        let g = column_swap_game();
        let d = dual_game(&g);
        let h = parallel_game(&g, &d).unwrap();
        let prod_n = ProductGroup::new(g.n_group(), d.n_group());
        let prod_p = ProductGroup::new(g.p_group(), d.p_group());
        for na in g.n_group().elems() {
            for pa in g.p_group().elems() {
                let n = prod_n.elem_of(na, d.n_group().unit());
                let p = prod_p.elem_of(pa, d.p_group().unit());
                let (pp, nn) = h.law.apply(n, p);
                let (pa2, na2) = g.law.apply(na, pa);
                assert_eq!(prod_p.pair_of(pp).0, pa2);
                assert_eq!(prod_n.pair_of(nn).0, na2);
            }
        }
    }

    #[test]
    fn bang_of_one_copy_keeps_the_symmetry() {
        let g = column_swap_game();
        let b = bang_game(&g, 1, &limits()).unwrap();
        assert!(validate_game(&b, &limits()).is_clean());
        assert_eq!(b.n_group().order(), g.n_group().order());
        assert_eq!(b.p_group().order(), 1);
        let cg = enumerate_configurations(&g.es, &limits()).unwrap().len();
        let cb = enumerate_configurations(&b.es, &limits()).unwrap().len();
        assert_eq!(cg, cb);
    }

    #[test]
    fn bang_two_of_a_single_negative_event_swaps_copies() {
        let b = bang_game(&single_neg_game(), 2, &limits()).unwrap();
        // Group closure oracle: S_2 on two bare copies.
        assert_eq!(b.n_group().order(), 2);
        assert_eq!(b.p_group().order(), 1);
        assert!(validate_game(&b, &limits()).is_clean());
    }

    #[test]
    fn bang_two_of_column_swap_validates_and_matches_derived_law() {
        let b = bang_game(&column_swap_game(), 2, &limits()).unwrap();
        assert_eq!(b.n_group().order(), 8);
        assert!(validate_game(&b, &limits()).is_clean());
        let derived = derive_law_from_factorization(&b.n_action, &b.p_action).unwrap();
        assert_eq!(derived.table(), b.law.table());
    }

    #[test]
    fn bang_rejects_games_with_positive_initial_moves() {
        let mixed = trivial_game(&es(
            &[("a", Polarity::Negative), ("b", Polarity::Positive)],
            &[],
            &[],
        ));
        let r = bang_game(&mixed, 2, &limits());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn game_polarity_classification() {
        assert_eq!(
            polarity_of_game(&trivial_game(&EventStructure::empty())),
            GamePolarity::Vacuous
        );
        assert!(polarity_of_game(&trivial_game(&EventStructure::empty())).is_negative());
        assert!(polarity_of_game(&trivial_game(&EventStructure::empty())).is_positive());
        assert_eq!(polarity_of_game(&column_swap_game()), GamePolarity::Negative);
        let mixed = trivial_game(&es(
            &[("a", Polarity::Negative), ("b", Polarity::Positive)],
            &[],
            &[],
        ));
        assert_eq!(polarity_of_game(&mixed), GamePolarity::Mixed);
    }
}
