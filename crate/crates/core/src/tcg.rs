//! Isomorphism families, thin concurrent games, strategies carrying a
//! symmetry family, and the translations from group-action games and
//! uniform strategies into that setting.

use std::collections::{BTreeSet, HashMap};

use crate::es::{
    enumerate_configurations, Config, ConfigSet, EsMap, EventIdx, EventMask, EventStructure,
};
use crate::game::Game;
use crate::limits::Limits;
use crate::report::Report;
use crate::strategy::{negative_extensions, Strategy};
use crate::symmetry::GroupAction;
use crate::uniform::{is_local, phi_event_maps, UniformStrategy};
use crate::{Error, Result};

/// A polarity-preserving bijection between two configurations, stored as
/// its graph sorted by source event. Membership in families is by graph
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConfigBijection {
    graph: Vec<(EventIdx, EventIdx)>,
}

impl ConfigBijection {
    pub fn from_graph(mut graph: Vec<(EventIdx, EventIdx)>) -> Result<Self> {
        graph.sort();
        let mut src = 0u128;
        let mut dst = 0u128;
        for &(s, t) in &graph {
            if src & (1u128 << s) != 0 || dst & (1u128 << t) != 0 {
                return Err(Error::Invalid("graph is not a bijection".into()));
            }
            src |= 1u128 << s;
            dst |= 1u128 << t;
        }
        Ok(ConfigBijection { graph })
    }

    pub fn identity(x: Config) -> Self {
        ConfigBijection {
            graph: x.iter().map(|e| (e, e)).collect(),
        }
    }

    pub fn graph(&self) -> &[(EventIdx, EventIdx)] {
        &self.graph
    }

    pub fn source(&self) -> Config {
        Config(self.graph.iter().fold(0, |m, &(s, _)| m | (1u128 << s)))
    }

    pub fn target(&self) -> Config {
        Config(self.graph.iter().fold(0, |m, &(_, t)| m | (1u128 << t)))
    }

    pub fn apply(&self, e: EventIdx) -> Option<EventIdx> {
        self.graph
            .binary_search_by_key(&e, |&(s, _)| s)
            .ok()
            .map(|i| self.graph[i].1)
    }

    pub fn is_identity(&self) -> bool {
        self.graph.iter().all(|&(s, t)| s == t)
    }

    /// `other . self` when the middle configurations agree.
    pub fn then(&self, other: &ConfigBijection) -> Option<ConfigBijection> {
        if self.target() != other.source() {
            return None;
        }
        let graph = self
            .graph
            .iter()
            .map(|&(s, t)| (s, other.apply(t).expect("target matches source")))
            .collect();
        Some(ConfigBijection { graph })
    }

    pub fn inverse(&self) -> ConfigBijection {
        let mut graph: Vec<(EventIdx, EventIdx)> =
            self.graph.iter().map(|&(s, t)| (t, s)).collect();
        graph.sort();
        ConfigBijection { graph }
    }

    pub fn restrict(&self, mask: EventMask) -> ConfigBijection {
        ConfigBijection {
            graph: self
                .graph
                .iter()
                .copied()
                .filter(|&(s, _)| mask & (1u128 << s) != 0)
                .collect(),
        }
    }

    /// Does `self` extend `other` (graph containment)?
    pub fn extends(&self, other: &ConfigBijection) -> bool {
        other
            .graph
            .iter()
            .all(|&(s, t)| self.apply(s) == Some(t))
    }

    /// Push the bijection forward along an event map.
    pub fn map_forward(&self, f: &EsMap) -> ConfigBijection {
        let mut graph: Vec<(EventIdx, EventIdx)> = self
            .graph
            .iter()
            .map(|&(s, t)| (f.apply(s), f.apply(t)))
            .collect();
        graph.sort();
        ConfigBijection { graph }
    }

    fn describe(&self, es: &EventStructure) -> String {
        let pairs: Vec<String> = self
            .graph
            .iter()
            .map(|&(s, t)| format!("{}~{}", es.id(s), es.id(t)))
            .collect();
        format!("[{}]", pairs.join(","))
    }
}

/// A set of configuration bijections closed under the groupoid
/// operations, restriction, and extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismFamily {
    pub structure: EventStructure,
    pub members: BTreeSet<ConfigBijection>,
}

impl IsomorphismFamily {
    pub fn identities_only(structure: &EventStructure, limits: &Limits) -> Result<Self> {
        let configs = enumerate_configurations(structure, limits)?;
        let members = configs.iter().map(ConfigBijection::identity).collect();
        Ok(IsomorphismFamily {
            structure: structure.clone(),
            members,
        })
    }

    pub fn contains(&self, b: &ConfigBijection) -> bool {
        self.members.contains(b)
    }

    fn by_source(&self) -> HashMap<EventMask, Vec<&ConfigBijection>> {
        let mut map: HashMap<EventMask, Vec<&ConfigBijection>> = HashMap::new();
        for m in &self.members {
            map.entry(m.source().0).or_default().push(m);
        }
        map
    }
}

/// The isomorphism-family axioms, checked by enumeration.
pub fn validate_iso_family(family: &IsomorphismFamily, limits: &Limits) -> Report {
    let mut report = Report::new();
    let es = &family.structure;
    let configs = match enumerate_configurations(es, limits) {
        Ok(c) => c,
        Err(e) => {
            report.push("family.members", format!("cannot enumerate: {e}"));
            return report;
        }
    };
    for m in &family.members {
        let (src, dst) = (m.source(), m.target());
        if !configs.contains(src) || !configs.contains(dst) {
            report.push(
                "family.members",
                format!("{} has a non-configuration endpoint", m.describe(es)),
            );
        }
        for &(s, t) in m.graph() {
            if es.polarity(s) != es.polarity(t) {
                report.push(
                    "family.polarity",
                    format!("{} is not polarity-preserving", m.describe(es)),
                );
                break;
            }
        }
    }
    for x in configs.iter() {
        if !family.contains(&ConfigBijection::identity(x)) {
            report.push(
                "family.identities",
                format!("missing the identity on {{{}}}", es.ids_of(x.0).join(",")),
            );
        }
    }
    let by_source = family.by_source();
    for m in &family.members {
        if !family.contains(&m.inverse()) {
            report.push(
                "family.inverse",
                format!("inverse of {} is missing", m.describe(es)),
            );
        }
        if let Some(nexts) = by_source.get(&m.target().0) {
            for n in nexts {
                let comp = m.then(n).expect("sources match");
                if !family.contains(&comp) {
                    report.push(
                        "family.composition",
                        format!(
                            "composite of {} and {} is missing",
                            m.describe(es),
                            n.describe(es)
                        ),
                    );
                }
            }
        }
        let src = m.source();
        for x in configs.iter() {
            if x != src && x.subset_of(src) && !family.contains(&m.restrict(x.0)) {
                report.push(
                    "family.restriction",
                    format!(
                        "restriction violated: {} restricted to {{{}}} is missing",
                        m.describe(es),
                        es.ids_of(x.0).join(",")
                    ),
                );
            }
        }
        for x in configs.iter() {
            if src.subset_of(x) && x != src {
                let extended = by_source
                    .get(&x.0)
                    .map(|cands| cands.iter().any(|c| c.extends(m)))
                    .unwrap_or(false);
                if !extended {
                    report.push(
                        "family.extension",
                        format!(
                            "{} does not extend to the configuration {{{}}}",
                            m.describe(es),
                            es.ids_of(x.0).join(",")
                        ),
                    );
                }
            }
        }
    }
    report
}

/// All restrictions of all action automorphisms to configurations.
pub fn family_from_action(action: &GroupAction, limits: &Limits) -> Result<IsomorphismFamily> {
    let configs = enumerate_configurations(&action.target, limits)?;
    let mut members = BTreeSet::new();
    for g in action.group.elems() {
        let table = action.table(g);
        for x in configs.iter() {
            let graph: Vec<(EventIdx, EventIdx)> = x.iter().map(|e| (e, table[e])).collect();
            members.insert(ConfigBijection { graph });
        }
    }
    Ok(IsomorphismFamily {
        structure: action.target.clone(),
        members,
    })
}

/// A structure with full, positive, and negative isomorphism families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinConcurrentGame {
    pub es: EventStructure,
    pub full: IsomorphismFamily,
    pub pos: IsomorphismFamily,
    pub neg: IsomorphismFamily,
}

/// `theta extends-positively theta2`: graph containment where every added
/// event on either side is positive.
fn extends_positively(big: &ConfigBijection, small: &ConfigBijection, es: &EventStructure) -> bool {
    if !big.extends(small) {
        return false;
    }
    let added_src = big.source().0 & !small.source().0;
    let added_dst = big.target().0 & !small.target().0;
    (added_src | added_dst) & es.neg_mask() == 0
}

fn extends_negatively(big: &ConfigBijection, small: &ConfigBijection, es: &EventStructure) -> bool {
    if !big.extends(small) {
        return false;
    }
    let added_src = big.source().0 & !small.source().0;
    let added_dst = big.target().0 & !small.target().0;
    (added_src | added_dst) & es.pos_mask() == 0
}

/// Close a family under composition and restriction (worklist fixpoint).
fn groupoid_restriction_closure(
    structure: &EventStructure,
    seed: BTreeSet<ConfigBijection>,
    configs: &ConfigSet,
) -> IsomorphismFamily {
    let mut members = seed.clone();
    let mut frontier: Vec<ConfigBijection> = seed.into_iter().collect();
    while let Some(m) = frontier.pop() {
        let mut derived: Vec<ConfigBijection> = Vec::new();
        derived.push(m.inverse());
        for x in configs.iter() {
            if x.subset_of(m.source()) {
                derived.push(m.restrict(x.0));
            }
        }
        let snapshot: Vec<ConfigBijection> = members.iter().cloned().collect();
        for other in &snapshot {
            if let Some(c) = m.then(other) {
                derived.push(c);
            }
            if let Some(c) = other.then(&m) {
                derived.push(c);
            }
        }
        for d in derived {
            if !members.contains(&d) {
                members.insert(d.clone());
                frontier.push(d);
            }
        }
    }
    IsomorphismFamily {
        structure: structure.clone(),
        members,
    }
}

/// The thin concurrent game induced by a game's two actions: negatives and
/// positives give the signed families, and the full family is their
/// closure under composition (and restriction). The axioms are verified,
/// not forced; violations surface as pathology witnesses in
/// [`validate_thin_concurrent_game`].
pub fn tcg_from_game(game: &Game, limits: &Limits) -> Result<ThinConcurrentGame> {
    let configs = enumerate_configurations(&game.es, limits)?;
    let neg = family_from_action(&game.n_action, limits)?;
    let pos = family_from_action(&game.p_action, limits)?;
    let mut seed = neg.members.clone();
    seed.extend(pos.members.iter().cloned());
    let full = groupoid_restriction_closure(&game.es, seed, &configs);
    Ok(ThinConcurrentGame {
        es: game.es.clone(),
        full,
        pos,
        neg,
    })
}

/// The thin-game axioms over the three families.
pub fn validate_thin_concurrent_game(tcg: &ThinConcurrentGame, limits: &Limits) -> Report {
    let mut report = Report::new();
    report.merge(validate_iso_family(&tcg.full, limits));
    report.merge(validate_iso_family(&tcg.pos, limits));
    report.merge(validate_iso_family(&tcg.neg, limits));
    for m in tcg.pos.members.iter().chain(tcg.neg.members.iter()) {
        if !tcg.full.contains(m) {
            report.push(
                "tcg.signed-subset",
                format!("{} is outside the full family", m.describe(&tcg.es)),
            );
        }
    }
    for m in tcg.pos.members.intersection(&tcg.neg.members) {
        if !m.is_identity() {
            report.push(
                "tcg.thin-intersection",
                format!(
                    "{} is both positive and negative but not an identity",
                    m.describe(&tcg.es)
                ),
            );
        }
    }
    for small in &tcg.pos.members {
        for big in &tcg.full.members {
            if extends_positively(big, small, &tcg.es) && !tcg.pos.contains(big) {
                report.push(
                    "tcg.pos-extension",
                    format!(
                        "positive extension {} escapes the positive family",
                        big.describe(&tcg.es)
                    ),
                );
            }
        }
    }
    for small in &tcg.neg.members {
        for big in &tcg.full.members {
            if extends_negatively(big, small, &tcg.es) && !tcg.neg.contains(big) {
                report.push(
                    "tcg.neg-extension",
                    format!(
                        "negative extension {} escapes the negative family",
                        big.describe(&tcg.es)
                    ),
                );
            }
        }
    }
    report
}

/// Restrictions of every slice's event map to every configuration.
pub fn family_from_uniform(u: &UniformStrategy, limits: &Limits) -> Result<IsomorphismFamily> {
    let configs = enumerate_configurations(&u.strategy.internal, limits)?;
    let maps = phi_event_maps(u, limits)?;
    let mut members = BTreeSet::new();
    for table in &maps {
        for x in configs.iter() {
            let graph: Vec<(EventIdx, EventIdx)> = x.iter().map(|e| (e, table[e])).collect();
            members.insert(ConfigBijection { graph });
        }
    }
    Ok(IsomorphismFamily {
        structure: u.strategy.internal.clone(),
        members,
    })
}

/// A strategy carrying an isomorphism family on its internal structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimStrategy {
    pub strategy: Strategy,
    pub family: IsomorphismFamily,
}

/// Thinness: a member extending an identity by positive events on both
/// sides must itself be an identity. Returns a witness otherwise.
pub fn check_thin(
    s: &SimStrategy,
    limits: &Limits,
) -> Result<(bool, Option<ConfigBijection>)> {
    let es = &s.strategy.internal;
    let configs = enumerate_configurations(es, limits)?;
    for m in &s.family.members {
        if m.is_identity() {
            continue;
        }
        let fixed = m
            .graph()
            .iter()
            .filter(|&&(a, b)| a == b)
            .fold(0u128, |acc, &(a, _)| acc | (1u128 << a));
        for x in configs.iter() {
            if x.0 & !fixed != 0 {
                continue;
            }
            let added_src = m.source().0 & !x.0;
            let added_dst = m.target().0 & !x.0;
            if (added_src | added_dst) & es.neg_mask() == 0 {
                return Ok((false, Some(m.clone())));
            }
        }
    }
    Ok((true, None))
}

/// Receptivity up to symmetry: a game-level symmetry between two negative
/// extensions of a reached display must lift to a strategy-level symmetry
/// fixing the shared part.
pub fn check_sim_receptivity(
    s: &SimStrategy,
    tcg: &ThinConcurrentGame,
    limits: &Limits,
) -> Result<(bool, Option<String>)> {
    let es = &s.strategy.internal;
    let configs = enumerate_configurations(es, limits)?;
    let by_source = s.family.by_source();
    let game_by_source = tcg.full.by_source();
    for x in configs.iter() {
        let exts: Vec<EventMask> = negative_extensions(es, x.0);
        let px = Config(s.strategy.display_mask(x));
        for &ym in &exts {
            let y = Config(ym);
            let py = s.strategy.display_mask(y);
            let Some(thetas) = game_by_source.get(&py) else {
                continue;
            };
            for &zm in &exts {
                let z = Config(zm);
                let pz = s.strategy.display_mask(z);
                for theta in thetas {
                    if theta.target().0 != pz {
                        continue;
                    }
                    if !theta.extends(&ConfigBijection::identity(px)) {
                        continue;
                    }
                    // Look for chi above theta fixing x pointwise.
                    let found = by_source
                        .get(&ym)
                        .map(|cands| {
                            cands.iter().any(|chi| {
                                chi.extends(&ConfigBijection::identity(x))
                                    && chi.map_forward(&s.strategy.proj) == **theta
                            })
                        })
                        .unwrap_or(false);
                    if !found {
                        return Ok((
                            false,
                            Some(format!(
                                "no lift of {} above {{{}}}",
                                theta.describe(&tcg.es),
                                es.ids_of(x.0).join(",")
                            )),
                        ));
                    }
                }
            }
        }
    }
    Ok((true, None))
}

/// Pair a local uniform strategy with its derived family. Rejects
/// non-local uniformity with the locality witness.
pub fn to_sim_strategy(u: &UniformStrategy, limits: &Limits) -> Result<SimStrategy> {
    let (local, witness) = is_local(u, limits)?;
    if !local {
        let (alpha, x) = witness.expect("non-local result carries a witness");
        return Err(Error::Precondition(format!(
            "uniformity not local: element `{}` fixes the display of {{{}}} but moves it",
            u.strategy.game.n_group().name(alpha),
            u.strategy.internal.ids_of(x.0).join(",")
        )));
    }
    let family = family_from_uniform(u, limits)?;
    Ok(SimStrategy {
        strategy: u.strategy.clone(),
        family,
    })
}

/// Run the full strategy-with-symmetry validator suite: family axioms,
/// projection preserving symmetry into the game's full family, thinness,
/// and receptivity up to symmetry.
pub fn validate_sim_strategy(
    s: &SimStrategy,
    tcg: &ThinConcurrentGame,
    limits: &Limits,
) -> Report {
    let mut report = Report::new();
    if s.family.structure != s.strategy.internal || tcg.es != s.strategy.game.es {
        report.push("sim.shape", "family or game structure mismatch");
        return report;
    }
    report.merge(validate_iso_family(&s.family, limits));
    for m in &s.family.members {
        let image = m.map_forward(&s.strategy.proj);
        if !tcg.full.contains(&image) {
            report.push(
                "sim.symmetry",
                format!(
                    "projection of {} is outside the game symmetry",
                    m.describe(&s.strategy.internal)
                ),
            );
        }
    }
    match check_thin(s, limits) {
        Ok((true, _)) => {}
        Ok((false, witness)) => {
            report.push(
                "sim.thinness",
                format!(
                    "non-identity positive extension {}",
                    witness.expect("witness present").describe(&s.strategy.internal)
                ),
            );
        }
        Err(e) => report.push("sim.thinness", format!("cannot check: {e}")),
    }
    match check_sim_receptivity(s, tcg, limits) {
        Ok((true, _)) => {}
        Ok((false, witness)) => {
            report.push("sim.receptivity", witness.expect("witness present"));
        }
        Err(e) => report.push("sim.receptivity", format!("cannot check: {e}")),
    }
    report
}

/// The weak-map condition between strategies-with-symmetry: members map
/// to members, and each configuration's display square closes through a
/// member of the game's positive family (necessarily unique, being
/// determined by the map).
pub fn check_weak_map_sim(
    f: &EsMap,
    s: &SimStrategy,
    t: &SimStrategy,
    tcg: &ThinConcurrentGame,
    limits: &Limits,
) -> Report {
    let mut report = Report::new();
    if s.strategy.game != t.strategy.game {
        report.push("sim-map.compatibility", "strategies are on different games");
        return report;
    }
    if f.source != s.strategy.internal || f.target != t.strategy.internal {
        report.push("sim-map.compatibility", "map endpoints are off");
        return report;
    }
    report.merge(crate::es::validate_map(f, limits));
    if !report.is_clean() {
        return report;
    }
    for m in &s.family.members {
        let image = m.map_forward(f);
        if !t.family.contains(&image) {
            report.push(
                "sim-map.symmetry",
                format!(
                    "symmetry not preserved: image of {} is outside the target family",
                    m.describe(&s.strategy.internal)
                ),
            );
        }
    }
    let configs = enumerate_configurations(&s.strategy.internal, limits)
        .expect("map validation enumerated already");
    for x in configs.iter() {
        let mut graph: Vec<(EventIdx, EventIdx)> = x
            .iter()
            .map(|e| (s.strategy.proj.apply(e), t.strategy.proj.apply(f.apply(e))))
            .collect();
        graph.sort();
        let theta = ConfigBijection { graph };
        if !tcg.pos.contains(&theta) {
            report.push(
                "sim-map.positive-witness",
                format!(
                    "display comparison {} at {{{}}} is not a positive symmetry",
                    theta.describe(&tcg.es),
                    s.strategy.internal.ids_of(x.0).join(",")
                ),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copycat::uniform_copycat;
    use crate::fixtures::{column_swap_game, nonlocal_uniform, single_column_game, swap_pair_game};
    use crate::game::trivial_game;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn identities_only_family_is_valid() {
        let es = crate::es::testutil::two_columns();
        let fam = IsomorphismFamily::identities_only(&es, &limits()).unwrap();
        assert!(validate_iso_family(&fam, &limits()).is_clean());
    }

    #[test]
    fn missing_restriction_is_witnessed() {
        let game = swap_pair_game();
        let es = game.es.clone();
        let mut fam = IsomorphismFamily::identities_only(&es, &limits()).unwrap();
        // Add the full negative swap on {n0,n1} without its restrictions.
        let swap = ConfigBijection::from_graph(vec![(0, 1), (1, 0)]).unwrap();
        fam.members.insert(swap);
        let report = validate_iso_family(&fam, &limits());
        assert!(report.violates("family.restriction"));
    }

    #[test]
    fn families_from_fixture_actions_are_valid() {
        for game in [column_swap_game(), swap_pair_game()] {
            for action in [&game.n_action, &game.p_action] {
                let fam = family_from_action(action, &limits()).unwrap();
                let report = validate_iso_family(&fam, &limits());
                assert!(report.is_clean(), "{}", report.summary());
            }
        }
    }

    #[test]
    fn family_member_count_matches_the_distinct_restriction_oracle() {
        let game = column_swap_game();
        let fam = family_from_action(&game.n_action, &limits()).unwrap();
        // Oracle: distinct restriction graphs over (element, configuration).
        let configs = enumerate_configurations(&game.es, &limits()).unwrap();
        let mut distinct = BTreeSet::new();
        for g in game.n_group().elems() {
            for x in configs.iter() {
                let graph: Vec<(EventIdx, EventIdx)> =
                    x.iter().map(|e| (e, game.n_action.act_idx(g, e))).collect();
                distinct.insert(graph);
            }
        }
        assert_eq!(fam.members.len(), distinct.len());
        // 9 identities plus 9 swap restrictions sharing the empty graph.
        assert_eq!(fam.members.len(), 17);
    }

    #[test]
    fn tcg_of_trivial_game_is_identities_only() {
        let es = crate::es::testutil::two_columns();
        let game = trivial_game(&es);
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        let ids = IsomorphismFamily::identities_only(&es, &limits()).unwrap();
        assert_eq!(tcg.full, ids);
        assert_eq!(tcg.pos, ids);
        assert_eq!(tcg.neg, ids);
        assert!(validate_thin_concurrent_game(&tcg, &limits()).is_clean());
    }

    #[test]
    fn tcg_of_column_swap_has_full_equal_to_negative() {
        let game = column_swap_game();
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        assert_eq!(tcg.full, tcg.neg);
        let ids = IsomorphismFamily::identities_only(&game.es, &limits()).unwrap();
        assert_eq!(tcg.pos, ids);
        assert!(validate_thin_concurrent_game(&tcg, &limits()).is_clean());
    }

    #[test]
    fn tcg_of_swap_pair_game_passes_the_axioms() {
        let game = swap_pair_game();
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        let report = validate_thin_concurrent_game(&tcg, &limits());
        assert!(report.is_clean(), "{}", report.summary());
    }

    #[test]
    fn family_from_nonlocal_uniform_contains_the_positive_swap() {
        let (game, u) = nonlocal_uniform().unwrap();
        let fam = family_from_uniform(&u, &limits()).unwrap();
        let q0 = game.es.idx("q0").unwrap();
        let q1 = game.es.idx("q1").unwrap();
        let swap = ConfigBijection::from_graph(vec![(q0, q1)]).unwrap();
        assert!(fam.contains(&swap));
        assert!(validate_iso_family(&fam, &limits()).is_clean());
    }

    #[test]
    fn nonlocal_family_breaks_thinness_and_receptivity() {
        let (game, u) = nonlocal_uniform().unwrap();
        let fam = family_from_uniform(&u, &limits()).unwrap();
        let sim = SimStrategy {
            strategy: u.strategy.clone(),
            family: fam,
        };
        let (thin, witness) = check_thin(&sim, &limits()).unwrap();
        assert!(!thin);
        let w = witness.unwrap();
        assert_eq!(w.source().0 & game.es.neg_mask(), 0);
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        let (receptive, _) = check_sim_receptivity(&sim, &tcg, &limits()).unwrap();
        assert!(!receptive);
    }

    #[test]
    fn to_sim_rejects_nonlocal_uniformity_with_the_witness() {
        let (_, u) = nonlocal_uniform().unwrap();
        match to_sim_strategy(&u, &limits()) {
            Err(Error::Precondition(msg)) => {
                assert!(msg.contains("uniformity not local"));
                assert!(msg.contains('a'));
            }
            other => panic!("expected a locality rejection, got {other:?}"),
        }
    }

    #[test]
    fn uniform_copycat_gives_a_valid_sim_strategy() {
        for game in [single_column_game(), column_swap_game(), swap_pair_game()] {
            let u = uniform_copycat(&game, &limits()).unwrap();
            let sim = to_sim_strategy(&u, &limits()).unwrap();
            let tcg = tcg_from_game(&u.strategy.game, &limits()).unwrap();
            let report = validate_sim_strategy(&sim, &tcg, &limits());
            assert!(report.is_clean(), "{}", report.summary());
        }
    }

    #[test]
    fn trivially_symmetric_strategies_are_sim_strategies() {
        let game = single_column_game();
        let s = Strategy::identity(&game);
        let u = UniformStrategy::trivial(&s, &limits()).unwrap();
        let sim = to_sim_strategy(&u, &limits()).unwrap();
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        assert!(validate_sim_strategy(&sim, &tcg, &limits()).is_clean());
    }

    #[test]
    fn identity_weak_map_of_sim_strategies_is_valid() {
        let game = column_swap_game();
        let u = uniform_copycat(&game, &limits()).unwrap();
        let sim = to_sim_strategy(&u, &limits()).unwrap();
        let tcg = tcg_from_game(&u.strategy.game, &limits()).unwrap();
        let f = EsMap::identity(&sim.strategy.internal);
        let report = check_weak_map_sim(&f, &sim, &sim, &tcg, &limits());
        assert!(report.is_clean(), "{}", report.summary());
    }

    #[test]
    fn homomorphisms_between_local_structures_induce_sim_maps() {
        // The corollary on fixtures: a validated weak map of local uniform
        // strategies passes the strategies-with-symmetry check.
        let game = column_swap_game();
        let u = uniform_copycat(&game, &limits()).unwrap();
        let w = crate::strategy::WeakMap::identity(&u.strategy, &limits()).unwrap();
        let report = crate::uniform::validate_uniform_map(&w, &u, &u, &limits());
        assert!(report.is_clean(), "{}", report.summary());
        let sim = to_sim_strategy(&u, &limits()).unwrap();
        let tcg = tcg_from_game(&u.strategy.game, &limits()).unwrap();
        let report = check_weak_map_sim(&w.f, &sim, &sim, &tcg, &limits());
        assert!(report.is_clean(), "{}", report.summary());
    }

    #[test]
    fn symmetry_escaping_map_is_reported() {
        // The identity map from the richer family into the identities-only
        // family drops members.
        let (game, u) = nonlocal_uniform().unwrap();
        let s = SimStrategy {
            strategy: u.strategy.clone(),
            family: family_from_uniform(&u, &limits()).unwrap(),
        };
        let t = SimStrategy {
            strategy: u.strategy.clone(),
            family: IsomorphismFamily::identities_only(&u.strategy.internal, &limits()).unwrap(),
        };
        let tcg = tcg_from_game(&game, &limits()).unwrap();
        let f = EsMap::identity(&s.strategy.internal);
        let report = check_weak_map_sim(&f, &s, &t, &tcg, &limits());
        assert!(report.violates("sim-map.symmetry"));
        assert!(report.summary().contains("symmetry not preserved"));
    }
}
