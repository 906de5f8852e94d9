//! Uniform strategies: a strategy equipped with one weak map per negative
//! group element, forming an algebra for the negative-group monad lifted
//! to the Kleisli category of the positive-group monad. Includes the
//! algebra validator, algebra homomorphisms, the locality test, and an
//! exhaustive search for uniform structures.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::es::{enumerate_configurations, Config, ConfigSet, EsMap, EventIdx, EventMask};
use crate::limits::Limits;
use crate::report::{Report, Violation};
use crate::strategy::{
    act_on_strategy, validate_weak_map, weak_map_candidates, Strategy, WeakMap,
    WeakMapCandidate,
};
use crate::symmetry::GElem;
use crate::{Error, Result};

/// A strategy with a bi-invariance table `phi : N x C(sigma) -> P x C(sigma)`.
///
/// Stored configuration-wise; each slice `phi_alpha` must additionally be
/// realized by a single event map on the internal structure, which the
/// validator reconstructs from the table and the weak-map squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformStrategy {
    pub strategy: Strategy,
    pub phi: BTreeMap<(GElem, Config), (GElem, Config)>,
}

impl UniformStrategy {
    /// The unit table on a game with trivial negative symmetry, or more
    /// generally `phi(e, x) = (e, x)` filled in for the unit only.
    pub fn trivial(strategy: &Strategy, limits: &Limits) -> Result<UniformStrategy> {
        let configs = enumerate_configurations(&strategy.internal, limits)?;
        let e_n = strategy.game.n_group().unit();
        let e_p = strategy.game.p_group().unit();
        let mut phi = BTreeMap::new();
        for x in configs.iter() {
            phi.insert((e_n, x), (e_p, x));
        }
        Ok(UniformStrategy {
            strategy: strategy.clone(),
            phi,
        })
    }

    pub fn response(&self, alpha: GElem, x: Config) -> Option<GElem> {
        self.phi.get(&(alpha, x)).map(|&(r, _)| r)
    }

    pub fn image(&self, alpha: GElem, x: Config) -> Option<Config> {
        self.phi.get(&(alpha, x)).map(|&(_, y)| y)
    }
}

/// Reconstruct the event map of one slice from the table and the squares.
///
/// For each configuration the weak-map square forces the local bijection;
/// the slices must patch to one total event map, and the recorded image
/// must be exactly the event-map image.
fn reconstruct_event_map(
    u: &UniformStrategy,
    alpha: GElem,
    configs: &ConfigSet,
) -> std::result::Result<Vec<EventIdx>, Violation> {
    let s = &u.strategy;
    let game = &s.game;
    let name = game.n_group().name(alpha);
    let n = s.internal.n_events();
    let mut global = vec![usize::MAX; n];
    for x in configs.iter() {
        let Some(&(r, y)) = u.phi.get(&(alpha, x)) else {
            return Err(Violation {
                axiom: "uniform.totality".into(),
                message: format!(
                    "phi is missing the entry at (`{name}`, {{{}}})",
                    s.internal.ids_of(x.0).join(",")
                ),
            });
        };
        if !configs.contains(y) {
            return Err(Violation {
                axiom: "uniform.image".into(),
                message: format!(
                    "image of (`{name}`, {{{}}}) is not a configuration",
                    s.internal.ids_of(x.0).join(",")
                ),
            });
        }
        let display: HashMap<EventIdx, EventIdx> =
            y.iter().map(|t| (s.proj.apply(t), t)).collect();
        let r_inv = game.p_group().inv(r);
        let mut image: EventMask = 0;
        for ev in x.iter() {
            let d = game
                .p_action
                .act_idx(r_inv, game.n_action.act_idx(alpha, s.proj.apply(ev)));
            let Some(&t) = display.get(&d) else {
                return Err(Violation {
                    axiom: "uniform.weak-map".into(),
                    message: format!(
                        "square fails at `{}` in (`{name}`, {{{}}}): display `{}` missing from the image",
                        s.internal.id(ev),
                        s.internal.ids_of(x.0).join(","),
                        game.es.id(d)
                    ),
                });
            };
            if global[ev] != usize::MAX && global[ev] != t {
                return Err(Violation {
                    axiom: "uniform.event-map".into(),
                    message: format!(
                        "slice `{name}` is ambiguous at `{}`: `{}` vs `{}`",
                        s.internal.id(ev),
                        s.internal.id(global[ev]),
                        s.internal.id(t)
                    ),
                });
            }
            global[ev] = t;
            image |= 1u128 << t;
        }
        if image != y.0 {
            return Err(Violation {
                axiom: "uniform.image".into(),
                message: format!(
                    "recorded image of (`{name}`, {{{}}}) differs from the event-map image",
                    s.internal.ids_of(x.0).join(",")
                ),
            });
        }
    }
    if let Some(ev) = (0..n).find(|&ev| global[ev] == usize::MAX) {
        return Err(Violation {
            axiom: "uniform.event-map".into(),
            message: format!(
                "no configuration determines the image of `{}` under slice `{name}`",
                s.internal.id(ev)
            ),
        });
    }
    let mut seen = 0u128;
    for &t in &global {
        if seen & (1u128 << t) != 0 {
            return Err(Violation {
                axiom: "uniform.event-map".into(),
                message: format!("slice `{name}` is not a bijection on events"),
            });
        }
        seen |= 1u128 << t;
    }
    Ok(global)
}

/// The reconstructed event maps of every slice, indexed by group element.
pub fn phi_event_maps(u: &UniformStrategy, limits: &Limits) -> Result<Vec<Vec<EventIdx>>> {
    let configs = enumerate_configurations(&u.strategy.internal, limits)?;
    u.strategy
        .game
        .n_group()
        .elems()
        .map(|alpha| {
            reconstruct_event_map(u, alpha, &configs)
                .map_err(|v| Error::Precondition(format!("{}: {}", v.axiom, v.message)))
        })
        .collect()
}

/// Check the three algebra invariants: slices are weak maps realized by
/// event bijections, the unit law, and the multiplication law.
pub fn validate_uniform(u: &UniformStrategy, limits: &Limits) -> Report {
    let mut report = Report::new();
    let s = &u.strategy;
    let game = &s.game;
    let n_group = game.n_group();
    let p_group = game.p_group();
    let configs = match enumerate_configurations(&s.internal, limits) {
        Ok(c) => c,
        Err(e) => {
            report.push("uniform.totality", format!("cannot enumerate: {e}"));
            return report;
        }
    };
    let mut total = true;
    for alpha in n_group.elems() {
        for x in configs.iter() {
            match u.phi.get(&(alpha, x)) {
                None => {
                    total = false;
                    report.push(
                        "uniform.totality",
                        format!(
                            "phi is not total: missing (`{}`, {{{}}})",
                            n_group.name(alpha),
                            s.internal.ids_of(x.0).join(",")
                        ),
                    );
                }
                Some(&(r, y)) => {
                    if r >= p_group.order() || !configs.contains(y) {
                        total = false;
                        report.push(
                            "uniform.totality",
                            format!(
                                "entry at (`{}`, {{{}}}) is out of range",
                                n_group.name(alpha),
                                s.internal.ids_of(x.0).join(",")
                            ),
                        );
                    }
                }
            }
        }
    }
    for &(alpha, x) in u.phi.keys() {
        if alpha >= n_group.order() || !configs.contains(x) {
            report.push(
                "uniform.totality",
                "phi has an entry outside N x C(sigma)".to_string(),
            );
        }
    }
    if !total {
        return report;
    }
    // Unit law.
    let e_n = n_group.unit();
    let e_p = p_group.unit();
    for x in configs.iter() {
        if u.phi[&(e_n, x)] != (e_p, x) {
            report.push(
                "uniform.unit",
                format!(
                    "phi(e, {{{}}}) is not (e, same configuration)",
                    s.internal.ids_of(x.0).join(",")
                ),
            );
        }
    }
    // Slices as weak maps alpha . sigma -> sigma.
    for alpha in n_group.elems() {
        match reconstruct_event_map(u, alpha, &configs) {
            Err(v) => report.violations.push(v),
            Ok(table) => {
                let f = EsMap::new(s.internal.clone(), s.internal.clone(), table)
                    .expect("reconstructed table is in range");
                let responses: BTreeMap<Config, GElem> = configs
                    .iter()
                    .map(|x| (x, u.phi[&(alpha, x)].0))
                    .collect();
                let w = WeakMap {
                    source: act_on_strategy(alpha, s),
                    target: s.clone(),
                    f,
                    responses,
                };
                let wr = validate_weak_map(&w, limits);
                if !wr.is_clean() {
                    report.push(
                        "uniform.weak-map",
                        format!("slice `{}`: {}", n_group.name(alpha), wr.summary()),
                    );
                }
            }
        }
    }
    // Multiplication law over N x N x C(sigma), on an indexed grid.
    let grid: Vec<Vec<(GElem, Config)>> = n_group
        .elems()
        .map(|alpha| configs.iter().map(|x| u.phi[&(alpha, x)]).collect())
        .collect();
    let law = &game.law;
    for a2 in n_group.elems() {
        for a1 in n_group.elems() {
            let m = n_group.mul(a2, a1);
            for (ci, x) in configs.iter().enumerate() {
                let (p1, y) = grid[a1][ci];
                let (gamma, beta) = law.apply(a2, p1);
                let yi = configs.id_of(y).expect("image is a configuration");
                let (p2, z) = grid[beta][yi];
                let expect = (p_group.mul(gamma, p2), z);
                if grid[m][ci] != expect {
                    report.push(
                        "uniform.multiplication",
                        format!(
                            "law fails at (`{}`, `{}`, {{{}}})",
                            n_group.name(a2),
                            n_group.name(a1),
                            s.internal.ids_of(x.0).join(",")
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Uniformity is local when every negative element fixing a display fixes
/// the configuration itself, pointwise. Returns the first witness
/// otherwise.
pub fn is_local(u: &UniformStrategy, limits: &Limits) -> Result<(bool, Option<(GElem, Config)>)> {
    let s = &u.strategy;
    let configs = enumerate_configurations(&s.internal, limits)?;
    let maps = phi_event_maps(u, limits)?;
    for alpha in s.game.n_group().elems() {
        for x in configs.iter() {
            let fixes_display = x
                .iter()
                .all(|ev| s.game.n_action.act_idx(alpha, s.proj.apply(ev)) == s.proj.apply(ev));
            if !fixes_display {
                continue;
            }
            let y = u
                .image(alpha, x)
                .ok_or_else(|| Error::Precondition("phi is not total".into()))?;
            if y != x || x.iter().any(|ev| maps[alpha][ev] != ev) {
                return Ok((false, Some((alpha, x))));
            }
        }
    }
    Ok((true, None))
}

/// Check that a weak map between the underlying strategies is an algebra
/// homomorphism for the two uniform structures.
pub fn validate_uniform_map(
    w: &WeakMap,
    u: &UniformStrategy,
    v: &UniformStrategy,
    limits: &Limits,
) -> Report {
    let mut report = Report::new();
    if w.source != u.strategy || w.target != v.strategy {
        report.push(
            "uniform-map.compatibility",
            "weak map endpoints are not the uniform strategies' underlying strategies",
        );
        return report;
    }
    report.merge(validate_weak_map(w, limits));
    if !report.is_clean() {
        return report;
    }
    let configs = enumerate_configurations(&u.strategy.internal, limits)
        .expect("validated weak map enumerated already");
    let game = &u.strategy.game;
    let n_group = game.n_group();
    let p_group = game.p_group();
    for alpha in n_group.elems() {
        for x in configs.iter() {
            let Some(&(r, xp)) = u.phi.get(&(alpha, x)) else {
                report.push("uniform-map.homomorphism", "source phi is not total");
                return report;
            };
            let s_resp = w.responses[&xp];
            let path_a = (p_group.mul(r, s_resp), w.f.apply_config(xp));
            let p = w.responses[&x];
            let y = w.f.apply_config(x);
            let (pp, alpha_p) = game.law.apply(alpha, p);
            let Some(&(q, z)) = v.phi.get(&(alpha_p, y)) else {
                report.push("uniform-map.homomorphism", "target phi is not total");
                return report;
            };
            let path_b = (p_group.mul(pp, q), z);
            if path_a != path_b {
                report.push(
                    "uniform-map.homomorphism",
                    format!(
                        "homomorphism square fails at (`{}`, {{{}}})",
                        n_group.name(alpha),
                        u.strategy.internal.ids_of(x.0).join(",")
                    ),
                );
            }
        }
    }
    report
}

/// Search-space summary for one group element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementSpace {
    pub element: String,
    pub event_maps: usize,
    pub response_tables: String,
}

/// Certificate that an exhaustive search found no uniform structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub elements: Vec<ElementSpace>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<UniformStrategy>),
    Exhausted(SearchCertificate),
}

struct SearchCtx<'a> {
    s: &'a Strategy,
    configs: &'a ConfigSet,
    order: Vec<GElem>,
    candidates: Vec<Vec<WeakMapCandidate>>,
    max_nodes: u64,
    nodes: u64,
}

struct Assignment {
    chosen: Vec<usize>,
    img: Vec<Vec<usize>>,
    resp: Vec<Vec<Option<GElem>>>,
}

enum Propagation {
    Ok,
    Conflict,
}

impl<'a> SearchCtx<'a> {
    fn solution_allows(&self, elem: GElem, chosen: &[usize], ci: usize, value: GElem) -> bool {
        let cand = &self.candidates[elem][chosen[elem]];
        cand.1[ci].contains(&value)
    }

    /// Fixpoint propagation of the multiplication law over the partial
    /// response table. Forced entries are recorded on the trail.
    fn propagate(
        &self,
        a: &mut Assignment,
        trail: &mut Vec<(GElem, usize)>,
    ) -> Propagation {
        let game = &self.s.game;
        let n_group = game.n_group();
        let p_group = game.p_group();
        loop {
            let mut changed = false;
            for a1 in n_group.elems() {
                for ci in 0..self.configs.len() {
                    let Some(r1) = a.resp[a1][ci] else { continue };
                    let yi = a.img[a1][ci];
                    for a2 in n_group.elems() {
                        let (gamma, beta) = game.law.apply(a2, r1);
                        let m = n_group.mul(a2, a1);
                        // Event-map images must already be consistent.
                        if a.img[m][ci] != a.img[beta][yi] {
                            return Propagation::Conflict;
                        }
                        match (a.resp[beta][yi], a.resp[m][ci]) {
                            (Some(r2), Some(rm)) => {
                                if rm != p_group.mul(gamma, r2) {
                                    return Propagation::Conflict;
                                }
                            }
                            (Some(r2), None) => {
                                let forced = p_group.mul(gamma, r2);
                                if !self.solution_allows(m, &a.chosen, ci, forced) {
                                    return Propagation::Conflict;
                                }
                                a.resp[m][ci] = Some(forced);
                                trail.push((m, ci));
                                changed = true;
                            }
                            (None, Some(rm)) => {
                                let forced = p_group.mul(p_group.inv(gamma), rm);
                                if !self.solution_allows(beta, &a.chosen, yi, forced) {
                                    return Propagation::Conflict;
                                }
                                a.resp[beta][yi] = Some(forced);
                                trail.push((beta, yi));
                                changed = true;
                            }
                            (None, None) => {}
                        }
                    }
                }
            }
            if !changed {
                return Propagation::Ok;
            }
        }
    }

    fn assign_maps(&mut self, pos: usize, a: &mut Assignment) -> Result<Option<UniformStrategy>> {
        if pos == self.order.len() {
            return self.assign_responses(a);
        }
        let elem = self.order[pos];
        for k in 0..self.candidates[elem].len() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::SearchBound(format!(
                    "more than {} candidates explored",
                    self.max_nodes
                )));
            }
            a.chosen[elem] = k;
            a.img[elem] = vec![0; self.configs.len()];
            for (ci, x) in self.configs.iter().enumerate() {
                let table = &self.candidates[elem][k].0;
                let mut image = 0u128;
                for ev in x.iter() {
                    image |= 1u128 << table[ev];
                }
                a.img[elem][ci] = self
                    .configs
                    .id_of(Config(image))
                    .expect("candidate image is a configuration");
            }
            if let Some(found) = self.assign_maps(pos + 1, a)? {
                return Ok(Some(found));
            }
        }
        a.chosen[elem] = usize::MAX;
        Ok(None)
    }

    fn assign_responses(&mut self, a: &mut Assignment) -> Result<Option<UniformStrategy>> {
        // Image table must be sized per config for every element.
        let mut trail = Vec::new();
        match self.propagate(a, &mut trail) {
            Propagation::Conflict => {
                for (g, ci) in trail.drain(..) {
                    a.resp[g][ci] = None;
                }
                return Ok(None);
            }
            Propagation::Ok => {}
        }
        let out = self.branch_response(a);
        for (g, ci) in trail.drain(..) {
            a.resp[g][ci] = None;
        }
        out
    }

    fn next_unassigned(&self, a: &Assignment) -> Option<(GElem, usize)> {
        for &elem in &self.order {
            for ci in 0..self.configs.len() {
                if a.resp[elem][ci].is_none() {
                    return Some((elem, ci));
                }
            }
        }
        None
    }

    fn branch_response(&mut self, a: &mut Assignment) -> Result<Option<UniformStrategy>> {
        let Some((elem, ci)) = self.next_unassigned(a) else {
            return Ok(Some(self.build(a)));
        };
        let values = self.candidates[elem][a.chosen[elem]].1[ci].clone();
        for value in values {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::SearchBound(format!(
                    "more than {} candidates explored",
                    self.max_nodes
                )));
            }
            let mut trail = vec![(elem, ci)];
            a.resp[elem][ci] = Some(value);
            let ok = matches!(self.propagate(a, &mut trail), Propagation::Ok);
            if ok {
                if let Some(found) = self.branch_response(a)? {
                    return Ok(Some(found));
                }
            }
            for (g, c) in trail.drain(..) {
                a.resp[g][c] = None;
            }
        }
        Ok(None)
    }

    fn build(&self, a: &Assignment) -> UniformStrategy {
        let mut phi = BTreeMap::new();
        for g in self.s.game.n_group().elems() {
            for (ci, x) in self.configs.iter().enumerate() {
                let y = self.configs.list[a.img[g][ci]];
                phi.insert((g, x), (a.resp[g][ci].expect("assignment is total"), y));
            }
        }
        UniformStrategy {
            strategy: self.s.clone(),
            phi,
        }
    }
}

/// Exhaustively search for a uniform structure on a valid strategy.
///
/// Candidate event maps are enumerated per group element (generators
/// first) and per-configuration responses are filled in by depth-first
/// search with fixpoint propagation of the multiplication law, so the
/// result is the deterministic least candidate. Returns either the first
/// structure passing the full validator or an exhaustiveness certificate.
pub fn search_uniform_structure(s: &Strategy, limits: &Limits) -> Result<SearchOutcome> {
    let configs = enumerate_configurations(&s.internal, limits)?;
    let n_group = s.game.n_group().clone();
    let unit = n_group.unit();

    let mut candidates: Vec<Vec<WeakMapCandidate>> = Vec::new();
    for alpha in n_group.elems() {
        if alpha == unit {
            let identity: Vec<EventIdx> = (0..s.internal.n_events()).collect();
            let sets = vec![vec![s.game.p_group().unit()]; configs.len()];
            candidates.push(vec![(identity, sets)]);
        } else {
            let source = act_on_strategy(alpha, s);
            candidates.push(weak_map_candidates(&source, s, &configs));
        }
    }

    let elements: Vec<ElementSpace> = n_group
        .elems()
        .map(|g| {
            let mut tables: u128 = 0;
            for (_, sets) in &candidates[g] {
                let mut prod: u128 = 1;
                for set in sets {
                    prod = prod.saturating_mul(set.len() as u128);
                }
                tables = tables.saturating_add(prod);
            }
            ElementSpace {
                element: n_group.name(g).to_string(),
                event_maps: candidates[g].len(),
                response_tables: tables.to_string(),
            }
        })
        .collect();

    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(SearchOutcome::Exhausted(SearchCertificate {
            elements,
            nodes_explored: 0,
        }));
    }

    let gens = n_group.generating_set();
    let mut order: Vec<GElem> = Vec::new();
    for &g in &gens {
        if g != unit {
            order.push(g);
        }
    }
    for g in n_group.elems() {
        if g != unit && !order.contains(&g) {
            order.push(g);
        }
    }

    let mut ctx = SearchCtx {
        s,
        configs: &configs,
        order,
        candidates,
        max_nodes: limits.max_search,
        nodes: 0,
    };
    let mut assignment = Assignment {
        chosen: vec![usize::MAX; n_group.order()],
        img: vec![vec![0; configs.len()]; n_group.order()],
        resp: vec![vec![None; configs.len()]; n_group.order()],
    };
    // The unit row is forced.
    assignment.chosen[unit] = 0;
    for ci in 0..configs.len() {
        assignment.img[unit][ci] = ci;
        assignment.resp[unit][ci] = Some(s.game.p_group().unit());
    }
    let found = ctx.assign_maps(0, &mut assignment)?;
    match found {
        Some(u) => {
            let check = validate_uniform(&u, limits);
            if check.is_clean() {
                Ok(SearchOutcome::Found(Box::new(u)))
            } else {
                Err(Error::Invalid(format!(
                    "search produced a table failing validation: {}",
                    check.summary()
                )))
            }
        }
        None => Ok(SearchOutcome::Exhausted(SearchCertificate {
            elements,
            nodes_explored: ctx.nodes,
        })),
    }
}
