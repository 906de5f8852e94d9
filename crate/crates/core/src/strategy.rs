//! Strategies over a fixed game, strict and weak maps between them, the
//! negative-group action on strategies, and the Kleisli reading of weak
//! maps.

use std::collections::{BTreeMap, HashMap};

use crate::es::{
    bits, enumerate_configurations, Config, ConfigSet, EsMap, EventIdx, EventMask,
    EventStructure,
};
use crate::game::Game;
use crate::limits::Limits;
use crate::report::Report;
use crate::symmetry::GElem;
use crate::{Error, Result};

/// A strategy: an internal event structure projecting onto the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub internal: EventStructure,
    pub game: Game,
    pub proj: EsMap,
}

impl Strategy {
    pub fn new(internal: EventStructure, game: Game, proj: EsMap) -> Result<Self> {
        if proj.source != internal || proj.target != game.es {
            return Err(Error::Invalid(
                "projection endpoints do not match the strategy".into(),
            ));
        }
        Ok(Strategy {
            internal,
            game,
            proj,
        })
    }

    /// The identity-shaped strategy: internal structure is the game itself.
    pub fn identity(game: &Game) -> Self {
        Strategy {
            internal: game.es.clone(),
            game: game.clone(),
            proj: EsMap::identity(&game.es),
        }
    }

    pub fn display_mask(&self, x: Config) -> EventMask {
        self.proj.apply_mask(x.0)
    }
}

/// All negative one-step-or-more extensions of `x` inside the structure,
/// including `x` itself.
pub fn negative_extensions(es: &EventStructure, x: EventMask) -> Vec<EventMask> {
    let mut out = vec![x];
    let mut seen = HashMap::new();
    seen.insert(x, ());
    let mut stack = vec![x];
    let neg = es.neg_mask();
    while let Some(m) = stack.pop() {
        for e in bits(neg & !m) {
            if es.pred_mask(e) & !m != 0 || es.conflict_mask(e) & m != 0 {
                continue;
            }
            let m2 = m | crate::es::bit(e);
            if seen.insert(m2, ()).is_none() {
                out.push(m2);
                stack.push(m2);
            }
        }
    }
    out.sort();
    out
}

/// All configurations reachable from `x` by removing positive events,
/// including `x` itself.
pub fn positive_restrictions(es: &EventStructure, x: EventMask) -> Vec<EventMask> {
    let removable: Vec<EventIdx> = bits(x & es.pos_mask()).collect();
    let mut out = Vec::new();
    for choice in 0..(1usize << removable.len()) {
        let mut removed = 0u128;
        for (k, &e) in removable.iter().enumerate() {
            if choice & (1 << k) != 0 {
                removed |= crate::es::bit(e);
            }
        }
        let z = x & !removed;
        if es.is_config(z) {
            out.push(z);
        }
    }
    out.sort();
    out
}

/// The two strategy axioms, checked by exhaustive enumeration: unique
/// lifting of negative extensions of the display, and restriction along
/// positive parts of the display.
pub fn validate_strategy(s: &Strategy, limits: &Limits) -> Report {
    let mut report = Report::new();
    if s.proj.source != s.internal || s.proj.target != s.game.es {
        report.push("strategy.shape", "projection endpoints are off");
        return report;
    }
    report.merge(crate::es::validate_map(&s.proj, limits));
    if !report.is_clean() {
        return report;
    }
    let configs = match enumerate_configurations(&s.internal, limits) {
        Ok(c) => c,
        Err(e) => {
            report.push("strategy.receptivity", format!("cannot enumerate: {e}"));
            return report;
        }
    };
    // Index internal configurations by their display.
    let mut by_display: HashMap<EventMask, Vec<Config>> = HashMap::new();
    for x in configs.iter() {
        by_display.entry(s.display_mask(x)).or_default().push(x);
    }
    let game_es = &s.game.es;
    for x in configs.iter() {
        let dx = s.display_mask(x);
        for z in negative_extensions(game_es, dx) {
            let lifts = by_display
                .get(&z)
                .map(|ys| {
                    ys.iter()
                        .filter(|y| Config(x.0).subset_of(**y))
                        .count()
                })
                .unwrap_or(0);
            if lifts == 0 {
                report.push(
                    "strategy.receptivity",
                    format!(
                        "no lift of {{{}}} over configuration {{{}}}",
                        game_es.ids_of(z).join(","),
                        s.internal.ids_of(x.0).join(",")
                    ),
                );
            } else if lifts > 1 {
                report.push(
                    "strategy.receptivity",
                    format!(
                        "lift of {{{}}} over {{{}}} is not unique",
                        game_es.ids_of(z).join(","),
                        s.internal.ids_of(x.0).join(",")
                    ),
                );
            }
        }
        for z in positive_restrictions(game_es, dx) {
            let matches = by_display
                .get(&z)
                .map(|ys| {
                    ys.iter()
                        .filter(|y| y.subset_of(x))
                        .count()
                })
                .unwrap_or(0);
            if matches == 0 {
                report.push(
                    "strategy.positive-restriction",
                    format!(
                        "no sub-configuration of {{{}}} displays {{{}}}",
                        s.internal.ids_of(x.0).join(","),
                        game_es.ids_of(z).join(",")
                    ),
                );
            } else if matches > 1 {
                // The definition asserts uniqueness here; a failure is an
                // internal inconsistency, not a mere axiom violation.
                report.push(
                    "strategy.internal-consistency",
                    format!(
                        "sub-configuration displaying {{{}}} under {{{}}} is not unique",
                        game_es.ids_of(z).join(","),
                        s.internal.ids_of(x.0).join(",")
                    ),
                );
            }
        }
    }
    report
}

/// Relabel a strategy along a negative group element: same internal
/// structure, projection post-composed with the action.
pub fn act_on_strategy(alpha: GElem, s: &Strategy) -> Strategy {
    let map = s.game.n_action.as_map(alpha);
    let proj = map.compose(&s.proj).expect("action composes with display");
    Strategy {
        internal: s.internal.clone(),
        game: s.game.clone(),
        proj,
    }
}

/// A weak map of strategies: an event map together with one positive
/// response per source configuration, closing the square
/// `p_source = act(response[x]) . p_target . f` on each `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakMap {
    pub source: Strategy,
    pub target: Strategy,
    pub f: EsMap,
    pub responses: BTreeMap<Config, GElem>,
}

impl WeakMap {
    pub fn identity(s: &Strategy, limits: &Limits) -> Result<WeakMap> {
        let configs = enumerate_configurations(&s.internal, limits)?;
        let unit = s.game.p_group().unit();
        let responses = configs.iter().map(|x| (x, unit)).collect();
        Ok(WeakMap {
            source: s.clone(),
            target: s.clone(),
            f: EsMap::identity(&s.internal),
            responses,
        })
    }

    /// A weak map whose response is the same element at every configuration.
    pub fn global(
        source: &Strategy,
        target: &Strategy,
        f: EsMap,
        beta: GElem,
        limits: &Limits,
    ) -> Result<WeakMap> {
        let configs = enumerate_configurations(&source.internal, limits)?;
        let responses = configs.iter().map(|x| (x, beta)).collect();
        Ok(WeakMap {
            source: source.clone(),
            target: target.clone(),
            f,
            responses,
        })
    }
}

/// A strict map commutes with the projections on the nose.
pub fn validate_strict_map(f: &EsMap, s: &Strategy, t: &Strategy, limits: &Limits) -> Report {
    let mut report = Report::new();
    if s.game != t.game {
        report.push("strict-map.compatibility", "strategies are on different games");
        return report;
    }
    if f.source != s.internal || f.target != t.internal {
        report.push("strict-map.compatibility", "map endpoints are off");
        return report;
    }
    report.merge(crate::es::validate_map(f, limits));
    for e in 0..s.internal.n_events() {
        if t.proj.apply(f.apply(e)) != s.proj.apply(e) {
            report.push(
                "strict-map.commutes",
                format!(
                    "projections differ at `{}`: `{}` vs `{}`",
                    s.internal.id(e),
                    s.game.es.id(t.proj.apply(f.apply(e))),
                    s.game.es.id(s.proj.apply(e))
                ),
            );
        }
    }
    report
}

/// Check the weak-map axioms: totality of the response table over the
/// source configurations and the per-configuration square.
pub fn validate_weak_map(w: &WeakMap, limits: &Limits) -> Report {
    let mut report = Report::new();
    if w.source.game != w.target.game {
        report.push("weak-map.compatibility", "strategies are on different games");
        return report;
    }
    if w.f.source != w.source.internal || w.f.target != w.target.internal {
        report.push("weak-map.compatibility", "map endpoints are off");
        return report;
    }
    report.merge(crate::es::validate_map(&w.f, limits));
    let configs = match enumerate_configurations(&w.source.internal, limits) {
        Ok(c) => c,
        Err(e) => {
            report.push("weak-map.totality", format!("cannot enumerate: {e}"));
            return report;
        }
    };
    let p_group = w.source.game.p_group();
    for x in configs.iter() {
        let Some(&r) = w.responses.get(&x) else {
            report.push(
                "weak-map.totality",
                format!(
                    "no response for configuration {{{}}}",
                    w.source.internal.ids_of(x.0).join(",")
                ),
            );
            continue;
        };
        if r >= p_group.order() {
            report.push("weak-map.totality", "response element out of range");
            continue;
        }
        for e in x.iter() {
            let lhs = w.source.proj.apply(e);
            let rhs = w
                .source
                .game
                .p_action
                .act_idx(r, w.target.proj.apply(w.f.apply(e)));
            if lhs != rhs {
                report.push(
                    "weak-map.square",
                    format!(
                        "square fails at `{}` in configuration {{{}}} with response `{}`",
                        w.source.internal.id(e),
                        w.source.internal.ids_of(x.0).join(","),
                        p_group.name(r)
                    ),
                );
                break;
            }
        }
    }
    for x in w.responses.keys() {
        if !configs.contains(*x) {
            report.push(
                "weak-map.totality",
                format!(
                    "response recorded for non-configuration {{{}}}",
                    w.source.internal.ids_of(x.0).join(",")
                ),
            );
        }
    }
    report
}

/// The Kleisli table of a weak map: `x -> (response[x], f x)`.
pub fn weak_map_to_kleisli(w: &WeakMap) -> Vec<(Config, (GElem, Config))> {
    w.responses
        .iter()
        .map(|(&x, &r)| (x, (r, w.f.apply_config(x))))
        .collect()
}

/// Compose weak maps; the earlier map's response multiplies on the left.
pub fn compose_weak_maps(w2: &WeakMap, w1: &WeakMap) -> Result<WeakMap> {
    if w1.target != w2.source {
        return Err(Error::Invalid(
            "weak maps do not share the middle strategy".into(),
        ));
    }
    let f = w2.f.compose(&w1.f)?;
    let p_group = w1.source.game.p_group();
    let mut responses = BTreeMap::new();
    for (&x, &r1) in &w1.responses {
        let y = w1.f.apply_config(x);
        let Some(&r2) = w2.responses.get(&y) else {
            return Err(Error::Invalid(format!(
                "second map lacks a response at the image configuration {{{}}}",
                w2.source.internal.ids_of(y.0).join(",")
            )));
        };
        responses.insert(x, p_group.mul(r1, r2));
    }
    Ok(WeakMap {
        source: w1.source.clone(),
        target: w2.target.clone(),
        f,
        responses,
    })
}

/// An event bijection together with, per configuration, the responses
/// solving the weak-map square for it.
pub type WeakMapCandidate = (Vec<EventIdx>, Vec<Vec<GElem>>);

/// Enumerate the candidate weak-map data from `source` to `target` with a
/// fixed underlying event bijection shape: every polarity-preserving
/// bijection whose configuration images are configurations and whose
/// square admits at least one response at every configuration. Returns
/// each surviving event map with the per-configuration response solution
/// sets (ascending). This is the building block of the uniformity search.
pub fn weak_map_candidates(
    source: &Strategy,
    target: &Strategy,
    configs: &ConfigSet,
) -> Vec<WeakMapCandidate> {
    let es = &source.internal;
    let n = es.n_events();
    debug_assert_eq!(target.internal, *es);
    let p_group = source.game.p_group();
    let p_action = &source.game.p_action;
    let mut out = Vec::new();

    // Polarity classes must map within themselves.
    let neg: Vec<EventIdx> = bits(es.neg_mask()).collect();
    let pos: Vec<EventIdx> = bits(es.pos_mask()).collect();
    let neg_perms = crate::game::permutations(neg.len());
    let pos_perms = crate::game::permutations(pos.len());
    for np in &neg_perms {
        for pp in &pos_perms {
            let mut table = vec![0usize; n];
            for (k, &e) in neg.iter().enumerate() {
                table[e] = neg[np[k]];
            }
            for (k, &e) in pos.iter().enumerate() {
                table[e] = pos[pp[k]];
            }
            let mut sets: Vec<Vec<GElem>> = Vec::with_capacity(configs.len());
            let mut ok = true;
            for x in configs.iter() {
                let mut image = 0u128;
                for e in x.iter() {
                    image |= crate::es::bit(table[e]);
                }
                if !es.is_config(image) {
                    ok = false;
                    break;
                }
                let set: Vec<GElem> = p_group
                    .elems()
                    .filter(|&r| {
                        x.iter().all(|e| {
                            source.proj.apply(e)
                                == p_action.act_idx(r, target.proj.apply(table[e]))
                        })
                    })
                    .collect();
                if set.is_empty() {
                    ok = false;
                    break;
                }
                sets.push(set);
            }
            if ok {
                out.push((table, sets));
            }
        }
    }
    out
}
