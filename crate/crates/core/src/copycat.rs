//! The copycat strategy and its uniform structure, the functorial action
//! of copycat on maps, and the lifting / co-lifting of well-behaved maps
//! into uniform strategies.

use std::collections::BTreeMap;

use crate::es::{
    bits, enumerate_configurations, parallel_es, Config, EsMap, EventIdx, EventStructure,
};
use crate::game::{dual_game, parallel_game, Game};
use crate::limits::Limits;
use crate::report::Report;
use crate::strategy::{validate_strategy, Strategy};
use crate::symmetry::{GElem, ProductGroup};
use crate::uniform::UniformStrategy;
use crate::{Error, Result};

/// The copycat structure over `A`: the events of `A-dual || A`, with each
/// positive event made to wait for its counterpart on the other side, and
/// conflict re-closed hereditarily under the strengthened order.
pub fn copycat_es(a: &EventStructure) -> Result<EventStructure> {
    copycat_es_with_report(a).map(|(es, _)| es)
}

/// As [`copycat_es`], also reporting how many conflict pairs the
/// hereditary closure added on top of the inherited relation.
pub fn copycat_es_with_report(a: &EventStructure) -> Result<(EventStructure, Report)> {
    let mut report = Report::new();
    let base = parallel_es(&a.dual(), a)?;
    let n = base.n_events();
    let na = a.n_events();
    let mut causes: Vec<(String, String)> = Vec::new();
    for b in 0..n {
        for p in bits(base.pred_mask(b)) {
            causes.push((base.id(p).to_string(), base.id(b).to_string()));
        }
    }
    for e in 0..na {
        let left = format!("0:{}", a.id(e));
        let right = format!("1:{}", a.id(e));
        match a.polarity(e) {
            crate::es::Polarity::Positive => causes.push((left, right)),
            crate::es::Polarity::Negative => causes.push((right, left)),
        }
    }
    let closed = EventStructure::new(base.events().to_vec(), &causes, &[]).map_err(|e| {
        Error::Invalid(format!("copycat order is cyclic over an ill-formed input: {e}"))
    })?;
    let mut conflict: Vec<u128> = (0..n).map(|i| base.conflict_mask(i)).collect();
    let mut added = 0usize;
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in bits(conflict[x]) {
                for x2 in 0..n {
                    if closed.lt(x, x2) && conflict[x2] & (1u128 << y) == 0 {
                        conflict[x2] |= 1u128 << y;
                        conflict[y] |= 1u128 << x2;
                        added += 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if added > 0 {
        report.note(format!(
            "hereditary closure added {added} conflict pair(s) across the copycat links"
        ));
    }
    let pred = (0..n).map(|i| closed.pred_mask(i)).collect();
    let es = EventStructure::from_masks(base.events().to_vec(), pred, conflict);
    let check = crate::es::validate_event_structure(&es);
    if !check.is_clean() {
        return Err(Error::Invalid(format!(
            "copycat structure fails validation: {}",
            check.summary()
        )));
    }
    Ok((es, report))
}

/// Copycat as a strategy on `A-dual || A`, projecting identically.
pub fn copycat_strategy(a: &Game) -> Result<Strategy> {
    let game = parallel_game(&dual_game(a), a)?;
    let internal = copycat_es(&a.es)?;
    let proj = EsMap::new(
        internal.clone(),
        game.es.clone(),
        (0..internal.n_events()).collect(),
    )?;
    Strategy::new(internal, game, proj)
}

/// Apply a map on both tags: `cc_f : cc_A -> cc_B`.
pub fn copycat_functor(f: &EsMap) -> Result<EsMap> {
    let cc_source = copycat_es(&f.source)?;
    let cc_target = copycat_es(&f.target)?;
    let na = f.source.n_events();
    let nb = f.target.n_events();
    let table: Vec<EventIdx> = (0..2 * na)
        .map(|i| {
            if i < na {
                f.apply(i)
            } else {
                nb + f.apply(i - na)
            }
        })
        .collect();
    EsMap::new(cc_source, cc_target, table)
}

/// Copycat's bi-invariance: for `(beta, alpha)` in the negative group of
/// `A-dual || A`, the distributive law supplies an element `eps` with
/// `eps = delta . beta = gamma . alpha`, and the slice is `cc_eps` with
/// the global response `(inv delta, inv gamma)`.
pub fn uniform_copycat(a: &Game, limits: &Limits) -> Result<UniformStrategy> {
    let strategy = copycat_strategy(a)?;
    let prod_n = ProductGroup::new(a.p_group(), a.n_group());
    let prod_p = ProductGroup::new(a.n_group(), a.p_group());
    debug_assert_eq!(&prod_n.group, strategy.game.n_group());
    debug_assert_eq!(&prod_p.group, strategy.game.p_group());
    let configs = enumerate_configurations(&strategy.internal, limits)?;
    let na = a.es.n_events();
    let mut phi = BTreeMap::new();
    for g in strategy.game.n_group().elems() {
        let (beta, alpha) = prod_n.pair_of(g);
        let (gamma_inv, delta) = a.law.apply(alpha, a.p_group().inv(beta));
        let gamma = a.p_group().inv(gamma_inv);
        let eps: Vec<EventIdx> = (0..na)
            .map(|e| a.n_action.act_idx(delta, a.p_action.act_idx(beta, e)))
            .collect();
        let eps_other: Vec<EventIdx> = (0..na)
            .map(|e| a.p_action.act_idx(gamma, a.n_action.act_idx(alpha, e)))
            .collect();
        if eps != eps_other {
            return Err(Error::Invalid(format!(
                "distributive law is broken: `{}`.`{}` differs from `{}`.`{}`",
                a.n_group().name(delta),
                a.p_group().name(beta),
                a.p_group().name(gamma),
                a.n_group().name(alpha)
            )));
        }
        let resp = prod_p.elem_of(a.n_group().inv(delta), a.p_group().inv(gamma));
        let table: Vec<EventIdx> = (0..2 * na)
            .map(|i| if i < na { eps[i] } else { na + eps[i - na] })
            .collect();
        for x in configs.iter() {
            let mut image = 0u128;
            for ev in x.iter() {
                image |= 1u128 << table[ev];
            }
            phi.insert((g, x), (resp, Config(image)));
        }
    }
    Ok(UniformStrategy { strategy, phi })
}

/// Witness that a map lifts to a uniform strategy: group homomorphisms
/// reflecting the negative action (`l`) and preserving the positive
/// action (`m`), coherent with both distributive laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitness {
    /// The underlying map of event structures.
    pub map: EsMap,
    /// Table of a homomorphism from the target's negative group to the
    /// source's.
    pub l: Vec<GElem>,
    /// Table of a homomorphism from the source's positive group to the
    /// target's.
    pub m: Vec<GElem>,
}

/// The lifting hypotheses: both tables are homomorphisms, the two
/// naturality squares hold, and the two laws commute over the hexagon.
pub fn validate_lift_witness(w: &LiftWitness, a: &Game, b: &Game) -> Report {
    let mut report = Report::new();
    if w.map.source != a.es || w.map.target != b.es {
        report.push("witness.shape", "map endpoints differ from the games");
        return report;
    }
    if w.l.len() != b.n_group().order() || w.l.iter().any(|&g| g >= a.n_group().order()) {
        report.push("witness.shape", "l table does not map N_target to N_source");
        return report;
    }
    if w.m.len() != a.p_group().order() || w.m.iter().any(|&g| g >= b.p_group().order()) {
        report.push("witness.shape", "m table does not map P_source to P_target");
        return report;
    }
    if w.l[b.n_group().unit()] != a.n_group().unit() {
        report.push("witness.l-homomorphism", "l does not preserve the unit");
    }
    for x in b.n_group().elems() {
        for y in b.n_group().elems() {
            if w.l[b.n_group().mul(x, y)] != a.n_group().mul(w.l[x], w.l[y]) {
                report.push(
                    "witness.l-homomorphism",
                    format!(
                        "l is not a homomorphism at (`{}`,`{}`)",
                        b.n_group().name(x),
                        b.n_group().name(y)
                    ),
                );
            }
        }
    }
    if w.m[a.p_group().unit()] != b.p_group().unit() {
        report.push("witness.m-homomorphism", "m does not preserve the unit");
    }
    for x in a.p_group().elems() {
        for y in a.p_group().elems() {
            if w.m[a.p_group().mul(x, y)] != b.p_group().mul(w.m[x], w.m[y]) {
                report.push(
                    "witness.m-homomorphism",
                    format!(
                        "m is not a homomorphism at (`{}`,`{}`)",
                        a.p_group().name(x),
                        a.p_group().name(y)
                    ),
                );
            }
        }
    }
    let n_events = a.es.n_events();
    for alpha in b.n_group().elems() {
        let ok = (0..n_events).all(|e| {
            w.map.apply(a.n_action.act_idx(w.l[alpha], e))
                == b.n_action.act_idx(alpha, w.map.apply(e))
        });
        if !ok {
            report.push(
                "witness.l-square",
                format!(
                    "f . act(l(`{}`)) differs from act(`{}`) . f",
                    b.n_group().name(alpha),
                    b.n_group().name(alpha)
                ),
            );
        }
    }
    for beta in a.p_group().elems() {
        let ok = (0..n_events).all(|e| {
            w.map.apply(a.p_action.act_idx(beta, e))
                == b.p_action.act_idx(w.m[beta], w.map.apply(e))
        });
        if !ok {
            report.push(
                "witness.m-square",
                format!(
                    "f . act(`{}`) differs from act(m(`{}`)) . f",
                    a.p_group().name(beta),
                    a.p_group().name(beta)
                ),
            );
        }
    }
    for alpha in b.n_group().elems() {
        for beta in a.p_group().elems() {
            let (b1, a1) = b.law.apply(alpha, w.m[beta]);
            let path1 = (b1, w.l[a1]);
            let (b2, a2) = a.law.apply(w.l[alpha], beta);
            let path2 = (w.m[b2], a2);
            if path1 != path2 {
                report.push(
                    "witness.hexagon",
                    format!(
                        "coherence hexagon fails at (`{}`, `{}`)",
                        b.n_group().name(alpha),
                        a.p_group().name(beta)
                    ),
                );
            }
        }
    }
    report
}

/// Lift a map into a strategy: copycat on the source post-composed with
/// the map on the right-hand tag.
pub fn lift_strategy(w: &LiftWitness, a: &Game, b: &Game, limits: &Limits) -> Result<Strategy> {
    let probe = Strategy::new(a.es.clone(), b.clone(), w.map.clone())?;
    let pre = validate_strategy(&probe, limits);
    if !pre.is_clean() {
        return Err(Error::Precondition(format!(
            "map does not project a strategy onto the target game: {}",
            pre.summary()
        )));
    }
    let game = parallel_game(&dual_game(a), b)?;
    let internal = copycat_es(&a.es)?;
    let na = a.es.n_events();
    let table: Vec<EventIdx> = (0..internal.n_events())
        .map(|i| if i < na { i } else { na + w.map.apply(i - na) })
        .collect();
    let proj = EsMap::new(internal.clone(), game.es.clone(), table)?;
    Strategy::new(internal, game, proj)
}

/// Make a lifted strategy uniform by translating copycat's bi-invariance
/// through `l` on the way in and `m` on the way out.
pub fn uniform_lift(w: &LiftWitness, a: &Game, b: &Game, limits: &Limits) -> Result<UniformStrategy> {
    let wr = validate_lift_witness(w, a, b);
    if !wr.is_clean() {
        return Err(Error::Precondition(format!(
            "lift witness is invalid: {}",
            wr.summary()
        )));
    }
    let strategy = lift_strategy(w, a, b, limits)?;
    let uc = uniform_copycat(a, limits)?;
    let prod_n_lift = ProductGroup::new(a.p_group(), b.n_group());
    let prod_n_cc = ProductGroup::new(a.p_group(), a.n_group());
    let prod_p_cc = ProductGroup::new(a.n_group(), a.p_group());
    let prod_p_lift = ProductGroup::new(a.n_group(), b.p_group());
    debug_assert_eq!(&prod_n_lift.group, strategy.game.n_group());
    let mut phi = BTreeMap::new();
    for g in strategy.game.n_group().elems() {
        let (nu, alpha_b) = prod_n_lift.pair_of(g);
        let g_cc = prod_n_cc.elem_of(nu, w.l[alpha_b]);
        for (&(gc, x), &(r_cc, y)) in uc.phi.range((g_cc, Config(0))..=(g_cc, Config(u128::MAX))) {
            debug_assert_eq!(gc, g_cc);
            let (n_a, p_a) = prod_p_cc.pair_of(r_cc);
            let resp = prod_p_lift.elem_of(n_a, w.m[p_a]);
            phi.insert((g, x), (resp, y));
        }
    }
    Ok(UniformStrategy { strategy, phi })
}

fn swap_blocks_table(first: usize, second: usize) -> Vec<EventIdx> {
    // Block layout [first][second] -> [second][first].
    (0..first + second)
        .map(|i| if i < first { second + i } else { i - first })
        .collect()
}

/// Co-lift a map `f : A -> B` into a strategy from `B` to `A`, built by
/// running the lift machinery in the dual games and swapping the tags
/// back. The witness here carries `l : P_B -> P_A` and `m : N_A -> N_B`.
pub fn colift_strategy(w: &LiftWitness, a: &Game, b: &Game, limits: &Limits) -> Result<Strategy> {
    let (strategy, _) = colift_parts(w, a, b, limits, false)?;
    Ok(strategy)
}

/// As [`colift_strategy`], with the transported bi-invariance table.
pub fn uniform_colift(w: &LiftWitness, a: &Game, b: &Game, limits: &Limits) -> Result<UniformStrategy> {
    let (strategy, phi) = colift_parts(w, a, b, limits, true)?;
    Ok(UniformStrategy {
        strategy,
        phi: phi.expect("uniform parts requested"),
    })
}

type PhiTable = BTreeMap<(GElem, Config), (GElem, Config)>;

fn colift_parts(
    w: &LiftWitness,
    a: &Game,
    b: &Game,
    limits: &Limits,
    want_phi: bool,
) -> Result<(Strategy, Option<PhiTable>)> {
    let da = dual_game(a);
    let db = dual_game(b);
    if w.map.source != a.es || w.map.target != b.es {
        return Err(Error::Precondition(
            "witness map endpoints differ from the games".into(),
        ));
    }
    let dual_map = EsMap::new(da.es.clone(), db.es.clone(), w.map.table().to_vec())?;
    let w_dual = LiftWitness {
        map: dual_map,
        l: w.l.clone(),
        m: w.m.clone(),
    };
    let lifted: Strategy;
    let lifted_phi: Option<PhiTable>;
    if want_phi {
        let u = uniform_lift(&w_dual, &da, &db, limits)?;
        lifted_phi = Some(u.phi);
        lifted = u.strategy;
    } else {
        lifted = lift_strategy(&w_dual, &da, &db, limits)?;
        lifted_phi = None;
    }
    // The lifted strategy lives on (da-dual || db) = (A || B-dual);
    // the co-lift lives on (B-dual || A). Swap the sides everywhere.
    let na = a.es.n_events();
    let nb = b.es.n_events();
    let game = parallel_game(&db, a)?;
    let internal = copycat_es(&a.es)?;
    // Internal tag swap: cc over A-dual <-> cc over A, both na+na events.
    let tau_int = swap_blocks_table(na, na);
    // Game event swap: [A][B-dual] -> [B-dual][A].
    let tau_game = swap_blocks_table(na, nb);
    let proj_table: Vec<EventIdx> = (0..internal.n_events())
        .map(|j| {
            // tau_int is an involution on equal blocks.
            let e_lifted = tau_int[j];
            tau_game[lifted.proj.apply(e_lifted)]
        })
        .collect();
    let proj = EsMap::new(internal.clone(), game.es.clone(), proj_table)?;
    let strategy = Strategy::new(internal, game.clone(), proj)?;
    if !want_phi {
        return Ok((strategy, None));
    }
    let lifted_phi = lifted_phi.expect("built above");
    let prod_n_lifted = ProductGroup::new(a.n_group(), db.n_group());
    let prod_n_co = ProductGroup::new(db.n_group(), a.n_group());
    let prod_p_lifted = ProductGroup::new(a.p_group(), db.p_group());
    let prod_p_co = ProductGroup::new(db.p_group(), a.p_group());
    debug_assert_eq!(&prod_n_co.group, game.n_group());
    let swap_mask = |m: Config| -> Config {
        let mut out = 0u128;
        for ev in m.iter() {
            out |= 1u128 << tau_int[ev];
        }
        Config(out)
    };
    let mut phi = BTreeMap::new();
    for (&(g_l, x_l), &(r_l, y_l)) in &lifted_phi {
        let (na_elem, pb_elem) = prod_n_lifted.pair_of(g_l);
        let g_co = prod_n_co.elem_of(pb_elem, na_elem);
        let (pa_elem, nb_elem) = prod_p_lifted.pair_of(r_l);
        let r_co = prod_p_co.elem_of(nb_elem, pa_elem);
        phi.insert((g_co, swap_mask(x_l)), (r_co, swap_mask(y_l)));
    }
    Ok((strategy, Some(phi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::testutil::brute_force_configs;
    use crate::es::{validate_event_structure, Polarity};
    use crate::fixtures::{column_swap_game, fork_game, single_column_game, swap_pair_game, token_game};
    use crate::game::bang_game;
    use crate::uniform::{is_local, validate_uniform};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn copycat_of_empty_is_empty() {
        let cc = copycat_es(&EventStructure::empty()).unwrap();
        assert_eq!(cc.n_events(), 0);
    }

    #[test]
    fn copycat_of_single_negative_event_is_a_chain() {
        let a = crate::es::testutil::es(&[("x", Polarity::Negative)], &[], &[]);
        let cc = copycat_es(&a).unwrap();
        assert!(validate_event_structure(&cc).is_clean());
        let configs = enumerate_configurations(&cc, &limits()).unwrap();
        // Frozen from direct enumeration: {}, {1:x}, {1:x, 0:x}.
        assert_eq!(configs.len(), 3);
        let one = Config(cc.mask_of_ids(["1:x"]).unwrap());
        let both = Config(cc.mask_of_ids(["0:x", "1:x"]).unwrap());
        assert!(configs.contains(one));
        assert!(configs.contains(both));
        assert!(!configs.contains(Config(cc.mask_of_ids(["0:x"]).unwrap())));
    }

    #[test]
    fn copycat_configuration_count_matches_brute_force() {
        let a = crate::es::testutil::two_columns();
        let cc = copycat_es(&a).unwrap();
        let configs = enumerate_configurations(&cc, &limits()).unwrap();
        assert_eq!(configs.list, brute_force_configs(&cc));
        // Each column contributes a 4-chain: 5 configurations each.
        assert_eq!(configs.len(), 25);
    }

    #[test]
    fn copycat_strategy_is_valid_on_the_fixture_games() {
        for game in [
            single_column_game(),
            column_swap_game(),
            swap_pair_game(),
            fork_game(),
            token_game(2).unwrap(),
        ] {
            let s = copycat_strategy(&game).unwrap();
            let report = validate_strategy(&s, &limits());
            assert!(report.is_clean(), "{}", report.summary());
        }
    }

    #[test]
    fn copycat_receptivity_at_the_empty_configuration() {
        let a = crate::es::testutil::es(&[("x", Polarity::Negative)], &[], &[]);
        let game = crate::game::trivial_game(&a);
        let s = copycat_strategy(&game).unwrap();
        assert!(validate_strategy(&s, &limits()).is_clean());
        // The unique lift of {1:x} from the empty configuration exists by
        // construction; receptivity would fail if it were missing.
        let one = s.internal.mask_of_ids(["1:x"]).unwrap();
        assert!(s.internal.is_config(one));
    }

    #[test]
    fn copycat_functor_preserves_identity_and_composition() {
        let a = crate::es::testutil::two_columns();
        let cc_a = copycat_es(&a).unwrap();
        let id = copycat_functor(&EsMap::identity(&a)).unwrap();
        assert_eq!(id, EsMap::identity(&cc_a));
        let swap = EsMap::new(a.clone(), a.clone(), vec![2, 3, 0, 1]).unwrap();
        let cc_swap = copycat_functor(&swap).unwrap();
        assert!(crate::es::validate_map(&cc_swap, &limits()).is_clean());
        let composed = copycat_functor(&swap.compose(&swap).unwrap()).unwrap();
        assert_eq!(composed, cc_swap.compose(&cc_swap).unwrap());
        // cc of an automorphism is an automorphism.
        assert!(crate::symmetry::automorphism_defect(&cc_a, cc_swap.table()).is_none());
    }

    #[test]
    fn uniform_copycat_validates_and_is_local_on_fixtures() {
        for game in [
            single_column_game(),
            column_swap_game(),
            swap_pair_game(),
            fork_game(),
            token_game(2).unwrap(),
        ] {
            let u = uniform_copycat(&game, &limits()).unwrap();
            let report = validate_uniform(&u, &limits());
            assert!(report.is_clean(), "{}", report.summary());
            let (local, witness) = is_local(&u, &limits()).unwrap();
            assert!(local, "witness: {witness:?}");
        }
    }

    #[test]
    fn uniform_copycat_with_trivial_symmetry_is_the_identity_family() {
        let game = single_column_game();
        let u = uniform_copycat(&game, &limits()).unwrap();
        let maps = crate::uniform::phi_event_maps(&u, &limits()).unwrap();
        for table in maps {
            assert_eq!(table, (0..u.strategy.internal.n_events()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn uniform_copycat_slice_for_the_column_swap() {
        let game = column_swap_game();
        let u = uniform_copycat(&game, &limits()).unwrap();
        let prod_n = ProductGroup::new(game.p_group(), game.n_group());
        let swap = game.n_group().elem("s").unwrap();
        let g = prod_n.elem_of(game.p_group().unit(), swap);
        let maps = crate::uniform::phi_event_maps(&u, &limits()).unwrap();
        // The slice is cc of the matching automorphism: swap on both tags.
        let na = game.es.n_events();
        let expected: Vec<usize> = (0..2 * na)
            .map(|i| {
                let s_tab = game.n_action.table(swap);
                if i < na {
                    s_tab[i]
                } else {
                    na + s_tab[i - na]
                }
            })
            .collect();
        assert_eq!(maps[g], expected);
    }

    fn identity_witness(a: &Game) -> LiftWitness {
        LiftWitness {
            map: EsMap::identity(&a.es),
            l: a.n_group().elems().collect(),
            m: a.p_group().elems().collect(),
        }
    }

    #[test]
    fn lift_of_identity_is_copycat() {
        for game in [column_swap_game(), fork_game()] {
            let w = identity_witness(&game);
            let lifted = lift_strategy(&w, &game, &game, &limits()).unwrap();
            let cc = copycat_strategy(&game).unwrap();
            assert_eq!(lifted, cc);
            let ul = uniform_lift(&w, &game, &game, &limits()).unwrap();
            let uc = uniform_copycat(&game, &limits()).unwrap();
            assert_eq!(ul, uc);
        }
    }

    #[test]
    fn lift_of_a_non_receptive_map_is_rejected() {
        // The copy-0 injection into the replicated game is not receptive
        // on the target side: the second copy's moves have no preimage.
        let a = column_swap_game();
        let b = bang_game(&a, 2, &limits()).unwrap();
        let w = LiftWitness {
            map: EsMap::new(a.es.clone(), b.es.clone(), (0..a.es.n_events()).collect()).unwrap(),
            l: vec![0; b.n_group().order()],
            m: vec![0; a.p_group().order()],
        };
        let r = lift_strategy(&w, &a, &b, &limits());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn non_homomorphic_l_is_named() {
        let game = column_swap_game();
        let mut w = identity_witness(&game);
        let swap = game.n_group().elem("s").unwrap();
        w.l[swap] = game.n_group().unit();
        let report = validate_lift_witness(&w, &game, &game);
        assert!(report.violates("witness.l-homomorphism") || report.violates("witness.l-square"));
        let r = uniform_lift(&w, &game, &game, &limits());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn colift_of_identity_is_copycat() {
        for game in [column_swap_game(), fork_game()] {
            let w = LiftWitness {
                map: EsMap::identity(&game.es),
                l: game.p_group().elems().collect(),
                m: game.n_group().elems().collect(),
            };
            let co = colift_strategy(&w, &game, &game, &limits()).unwrap();
            let cc = copycat_strategy(&game).unwrap();
            assert_eq!(co, cc);
            let uco = uniform_colift(&w, &game, &game, &limits()).unwrap();
            let ucc = uniform_copycat(&game, &limits()).unwrap();
            assert_eq!(uco, ucc);
        }
    }

    /// The co-lift witness for the copy-0 injection `A -> !A`: project the
    /// positive tuple to copy 0, include `N_A` at copy 0.
    fn counit_witness(a: &Game, b: &Game) -> LiftWitness {
        let na = a.es.n_events();
        let map = EsMap::new(a.es.clone(), b.es.clone(), (0..na).collect()).unwrap();
        // l : P_B -> P_A by restricting the copy-0 block.
        let l: Vec<GElem> = b
            .p_group()
            .elems()
            .map(|pb| {
                let restricted: Vec<EventIdx> =
                    (0..na).map(|e| b.p_action.act_idx(pb, e)).collect();
                a.p_action
                    .find_by_table(&restricted)
                    .expect("copy-0 restriction lies in P_A")
            })
            .collect();
        // m : N_A -> N_B by acting on copy 0 alone.
        let m: Vec<GElem> = a
            .n_group()
            .elems()
            .map(|alpha| {
                let mut table: Vec<EventIdx> = (0..b.es.n_events()).collect();
                for (e, entry) in table.iter_mut().enumerate().take(na) {
                    *entry = a.n_action.act_idx(alpha, e);
                }
                b.n_action
                    .find_by_table(&table)
                    .expect("copy-0 inclusion lies in N_B")
            })
            .collect();
        LiftWitness { map, l, m }
    }

    #[test]
    fn counit_colift_is_a_valid_uniform_strategy() {
        for a in [column_swap_game(), fork_game()] {
            let b = bang_game(&a, 2, &limits()).unwrap();
            let w = counit_witness(&a, &b);
            let s = colift_strategy(&w, &a, &b, &limits()).unwrap();
            let sr = validate_strategy(&s, &limits());
            assert!(sr.is_clean(), "{}", sr.summary());
            let u = uniform_colift(&w, &a, &b, &limits()).unwrap();
            let ur = validate_uniform(&u, &limits());
            assert!(ur.is_clean(), "{}", ur.summary());
        }
    }

    #[test]
    fn corrupting_the_counit_witness_names_a_square_or_hexagon() {
        let a = fork_game();
        let b = bang_game(&a, 2, &limits()).unwrap();
        let mut w = counit_witness(&a, &b);
        // Point one l entry at the wrong element.
        let target = w.l.iter().position(|&g| g != a.p_group().unit()).unwrap();
        w.l[target] = a.p_group().unit();
        let da = dual_game(&a);
        let db = dual_game(&b);
        let dual_w = LiftWitness {
            map: EsMap::new(da.es.clone(), db.es.clone(), w.map.table().to_vec()).unwrap(),
            l: w.l.clone(),
            m: w.m.clone(),
        };
        let report = validate_lift_witness(&dual_w, &da, &db);
        assert!(
            report.violates("witness.l-square")
                || report.violates("witness.hexagon")
                || report.violates("witness.l-homomorphism"),
            "{}",
            report.summary()
        );
        let r = uniform_colift(&w, &a, &b, &limits());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
