//! Finite event structures with polarity: causality as a strict partial
//! order, hereditary binary conflict, configurations, and maps.
//!
//! Events are interned as indices into a fixed table; sets of events are
//! `u128` bitmasks, which caps a structure at 128 events. Identity of an
//! event is its string id, never its position in an input file.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::limits::Limits;
use crate::report::Report;
use crate::{Error, Result};

pub type EventIdx = usize;
pub type EventMask = u128;

pub const MAX_EVENTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Negative => Polarity::Positive,
            Polarity::Positive => Polarity::Negative,
        }
    }

    pub fn sign(self) -> &'static str {
        match self {
            Polarity::Negative => "-",
            Polarity::Positive => "+",
        }
    }
}

/// One event: stable string id, polarity, optional display label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventDecl {
    pub id: String,
    pub polarity: Polarity,
    pub label: Option<String>,
}

impl EventDecl {
    pub fn new(id: impl Into<String>, polarity: Polarity) -> Self {
        EventDecl {
            id: id.into(),
            polarity,
            label: None,
        }
    }
}

/// A finite event structure with polarity.
///
/// Causality is stored as the full strict order (`pred[i]` is the mask of
/// strict predecessors of `i`); the constructor closes the given relation
/// transitively and rejects cycles. Conflict is stored symmetrically.
/// Conflict heredity is *not* repaired here; [`validate_event_structure`]
/// reports it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventStructure {
    events: Vec<EventDecl>,
    index: BTreeMap<String, EventIdx>,
    pred: Vec<EventMask>,
    conflict: Vec<EventMask>,
}

impl EventStructure {
    /// Build from event declarations, causal pairs (covers or any relation
    /// whose transitive closure is intended) and conflict pairs.
    pub fn new(
        events: Vec<EventDecl>,
        causes: &[(String, String)],
        conflicts: &[(String, String)],
    ) -> Result<Self> {
        if events.len() > MAX_EVENTS {
            return Err(Error::TooManyEvents(events.len()));
        }
        let mut index = BTreeMap::new();
        for (i, e) in events.iter().enumerate() {
            if index.insert(e.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate event id `{}`", e.id)));
            }
        }
        let n = events.len();
        let look = |id: &String| -> Result<EventIdx> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("unknown event id `{id}`")))
        };
        let mut pred = vec![0u128; n];
        for (a, b) in causes {
            let (a, b) = (look(a)?, look(b)?);
            pred[b] |= 1u128 << a;
        }
        // Transitive closure as a mask fixpoint.
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = pred[i];
                for j in bits(pred[i]) {
                    acc |= pred[j];
                }
                if acc != pred[i] {
                    pred[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            if pred[i] & bit(i) != 0 {
                return Err(Error::CausalityCycle(events[i].id.clone()));
            }
        }
        let mut conflict = vec![0u128; n];
        for (a, b) in conflicts {
            let (a, b) = (look(a)?, look(b)?);
            conflict[a] |= bit(b);
            conflict[b] |= bit(a);
        }
        Ok(EventStructure {
            events,
            index,
            pred,
            conflict,
        })
    }

    /// Internal builder from already-closed relation masks.
    pub(crate) fn from_masks(
        events: Vec<EventDecl>,
        pred: Vec<EventMask>,
        conflict: Vec<EventMask>,
    ) -> Self {
        let index = events
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        EventStructure {
            events,
            index,
            pred,
            conflict,
        }
    }

    pub fn empty() -> Self {
        EventStructure::from_masks(vec![], vec![], vec![])
    }

    pub fn n_events(&self) -> usize {
        self.events.len()
    }

    pub fn events(&self) -> &[EventDecl] {
        &self.events
    }

    pub fn id(&self, i: EventIdx) -> &str {
        &self.events[i].id
    }

    pub fn polarity(&self, i: EventIdx) -> Polarity {
        self.events[i].polarity
    }

    pub fn idx(&self, id: &str) -> Option<EventIdx> {
        self.index.get(id).copied()
    }

    pub fn all_mask(&self) -> EventMask {
        if self.events.is_empty() {
            0
        } else {
            (!0u128) >> (128 - self.events.len())
        }
    }

    pub fn pos_mask(&self) -> EventMask {
        let mut m = 0;
        for (i, e) in self.events.iter().enumerate() {
            if e.polarity == Polarity::Positive {
                m |= bit(i);
            }
        }
        m
    }

    pub fn neg_mask(&self) -> EventMask {
        self.all_mask() & !self.pos_mask()
    }

    /// Strict predecessors of `i`.
    pub fn pred_mask(&self, i: EventIdx) -> EventMask {
        self.pred[i]
    }

    pub fn conflict_mask(&self, i: EventIdx) -> EventMask {
        self.conflict[i]
    }

    /// Strict causal order `a < b`.
    pub fn lt(&self, a: EventIdx, b: EventIdx) -> bool {
        self.pred[b] & bit(a) != 0
    }

    pub fn in_conflict(&self, a: EventIdx, b: EventIdx) -> bool {
        self.conflict[a] & bit(b) != 0
    }

    /// Covers of the stored order: `a -< b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(EventIdx, EventIdx)> {
        let mut out = Vec::new();
        for b in 0..self.n_events() {
            for a in bits(self.pred[b]) {
                let between = self.pred[b] & !self.pred[a] & !bit(a);
                let strictly_between = bits(between).any(|c| self.pred[c] & bit(a) != 0);
                if !strictly_between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal_mask(&self) -> EventMask {
        let mut m = 0;
        for i in 0..self.n_events() {
            if self.pred[i] == 0 {
                m |= bit(i);
            }
        }
        m
    }

    pub fn down_closed(&self, mask: EventMask) -> bool {
        bits(mask).all(|i| self.pred[i] & !mask == 0)
    }

    pub fn conflict_free(&self, mask: EventMask) -> bool {
        bits(mask).all(|i| self.conflict[i] & mask == 0)
    }

    pub fn is_config(&self, mask: EventMask) -> bool {
        self.down_closed(mask) && self.conflict_free(mask)
    }

    /// Down-closure of a set under the stored order.
    pub fn down_closure(&self, mask: EventMask) -> EventMask {
        let mut m = mask;
        for i in bits(mask) {
            m |= self.pred[i];
        }
        m
    }

    /// The same events with every polarity flipped.
    pub fn dual(&self) -> EventStructure {
        let events = self
            .events
            .iter()
            .map(|e| EventDecl {
                id: e.id.clone(),
                polarity: e.polarity.flip(),
                label: e.label.clone(),
            })
            .collect();
        EventStructure::from_masks(events, self.pred.clone(), self.conflict.clone())
    }

    pub fn ids_of(&self, mask: EventMask) -> Vec<String> {
        bits(mask).map(|i| self.events[i].id.clone()).collect()
    }

    pub fn mask_of_ids<'a, I: IntoIterator<Item = &'a str>>(&self, ids: I) -> Result<EventMask> {
        let mut m = 0;
        for id in ids {
            let i = self
                .idx(id)
                .ok_or_else(|| Error::Invalid(format!("unknown event id `{id}`")))?;
            m |= bit(i);
        }
        Ok(m)
    }
}

pub fn bit(i: EventIdx) -> EventMask {
    1u128 << i
}

/// Iterate the set bits of a mask, ascending.
pub fn bits(mask: EventMask) -> impl Iterator<Item = EventIdx> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A configuration: a down-closed, conflict-free set of events, stored as
/// a bitmask relative to its event structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Config(pub EventMask);

impl Config {
    pub const EMPTY: Config = Config(0);

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: EventIdx) -> bool {
        self.0 & bit(i) != 0
    }

    pub fn subset_of(&self, other: Config) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = EventIdx> {
        bits(self.0)
    }
}

/// All configurations of one event structure, in a canonical order
/// (by size, then by mask value).
#[derive(Debug, Clone)]
pub struct ConfigSet {
    pub list: Vec<Config>,
    index: HashMap<EventMask, usize>,
}

impl ConfigSet {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn id_of(&self, c: Config) -> Option<usize> {
        self.index.get(&c.0).copied()
    }

    pub fn contains(&self, c: Config) -> bool {
        self.index.contains_key(&c.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Config> + '_ {
        self.list.iter().copied()
    }
}

/// How `y` extends `x`, if it does. An equal pair is reported as `Empty`,
/// which counts as both a positive and a negative extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionKind {
    NotAnExtension,
    Empty,
    Positive,
    Negative,
    Mixed,
}

impl ExtensionKind {
    /// `x ⊆+ y`: an extension adding only positive events.
    pub fn is_positive(self) -> bool {
        matches!(self, ExtensionKind::Empty | ExtensionKind::Positive)
    }

    /// `x ⊆- y`: an extension adding only negative events.
    pub fn is_negative(self) -> bool {
        matches!(self, ExtensionKind::Empty | ExtensionKind::Negative)
    }
}

/// Classify the inclusion `x ⊆ y` by the polarities of `y \ x`.
pub fn extension_kind(es: &EventStructure, x: Config, y: Config) -> ExtensionKind {
    if !x.subset_of(y) {
        return ExtensionKind::NotAnExtension;
    }
    let delta = y.0 & !x.0;
    if delta == 0 {
        ExtensionKind::Empty
    } else if delta & es.neg_mask() == 0 {
        ExtensionKind::Positive
    } else if delta & es.pos_mask() == 0 {
        ExtensionKind::Negative
    } else {
        ExtensionKind::Mixed
    }
}

/// Diagnostics for the event-structure axioms.
pub fn validate_event_structure(es: &EventStructure) -> Report {
    let mut report = Report::new();
    let n = es.n_events();
    for i in 0..n {
        if es.pred[i] & bit(i) != 0 {
            report.push(
                "order.irreflexive",
                format!("event `{}` precedes itself", es.id(i)),
            );
        }
    }
    for b in 0..n {
        for a in bits(es.pred[b]) {
            if es.pred[a] & !es.pred[b] != 0 {
                let c = bits(es.pred[a] & !es.pred[b]).next().unwrap();
                report.push(
                    "order.transitive",
                    format!(
                        "`{}` < `{}` < `{}` but not `{}` < `{}`",
                        es.id(c),
                        es.id(a),
                        es.id(b),
                        es.id(c),
                        es.id(b)
                    ),
                );
            }
        }
    }
    for i in 0..n {
        if es.conflict[i] & bit(i) != 0 {
            report.push(
                "conflict.irreflexive",
                format!("event `{}` conflicts with itself", es.id(i)),
            );
        }
        for j in bits(es.conflict[i]) {
            if es.conflict[j] & bit(i) == 0 {
                report.push(
                    "conflict.symmetric",
                    format!("`{}` # `{}` but not conversely", es.id(i), es.id(j)),
                );
            }
        }
    }
    // Heredity: a <= a' and a # b imply a' # b.
    for a in 0..n {
        for b in bits(es.conflict[a]) {
            for a2 in 0..n {
                if es.lt(a, a2) && !es.in_conflict(a2, b) {
                    report.push(
                        "conflict.hereditary",
                        format!(
                            "heredity violated at (`{}`,`{}`): `{}` <= `{}` and `{}` # `{}`",
                            es.id(a2),
                            es.id(b),
                            es.id(a),
                            es.id(a2),
                            es.id(a),
                            es.id(b)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Enumerate all configurations by growing from the empty set, guarded by
/// `limits.max_configs`.
pub fn enumerate_configurations(es: &EventStructure, limits: &Limits) -> Result<ConfigSet> {
    let n = es.n_events();
    let mut seen: HashMap<EventMask, ()> = HashMap::new();
    let mut stack = vec![0u128];
    seen.insert(0, ());
    while let Some(m) = stack.pop() {
        for e in 0..n {
            if m & bit(e) != 0 {
                continue;
            }
            if es.pred[e] & !m != 0 {
                continue;
            }
            if es.conflict[e] & m != 0 {
                continue;
            }
            let m2 = m | bit(e);
            if seen.insert(m2, ()).is_none() {
                if seen.len() > limits.max_configs {
                    return Err(Error::ConfigBound {
                        bound: limits.max_configs,
                    });
                }
                stack.push(m2);
            }
        }
    }
    let mut list: Vec<Config> = seen.keys().map(|&m| Config(m)).collect();
    list.sort_by_key(|c| (c.len(), c.0));
    let index = list.iter().enumerate().map(|(i, c)| (c.0, i)).collect();
    Ok(ConfigSet { list, index })
}

/// A total function between the events of two structures. Validity (it
/// maps configurations to configurations, injectively, preserving
/// polarity) is checked by [`validate_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsMap {
    pub source: EventStructure,
    pub target: EventStructure,
    map: Vec<EventIdx>,
}

impl EsMap {
    pub fn new(source: EventStructure, target: EventStructure, map: Vec<EventIdx>) -> Result<Self> {
        if map.len() != source.n_events() {
            return Err(Error::Invalid(format!(
                "map table has {} entries for {} events",
                map.len(),
                source.n_events()
            )));
        }
        if let Some(&t) = map.iter().find(|&&t| t >= target.n_events()) {
            return Err(Error::Invalid(format!("map image {t} out of range")));
        }
        Ok(EsMap {
            source,
            target,
            map,
        })
    }

    pub fn from_pairs(
        source: EventStructure,
        target: EventStructure,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.n_events()];
        for (s, t) in pairs {
            let si = source
                .idx(s)
                .ok_or_else(|| Error::Invalid(format!("unknown source event `{s}`")))?;
            let ti = target
                .idx(t)
                .ok_or_else(|| Error::Invalid(format!("unknown target event `{t}`")))?;
            map[si] = ti;
        }
        if let Some(i) = map.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Invalid(format!(
                "map is not total: no image for `{}`",
                source.id(i)
            )));
        }
        EsMap::new(source, target, map)
    }

    pub fn identity(es: &EventStructure) -> Self {
        EsMap {
            source: es.clone(),
            target: es.clone(),
            map: (0..es.n_events()).collect(),
        }
    }

    pub fn apply(&self, i: EventIdx) -> EventIdx {
        self.map[i]
    }

    pub fn table(&self) -> &[EventIdx] {
        &self.map
    }

    /// Image of a set of events (may collapse if the map is not injective).
    pub fn apply_mask(&self, mask: EventMask) -> EventMask {
        let mut out = 0;
        for i in bits(mask) {
            out |= bit(self.map[i]);
        }
        out
    }

    pub fn apply_config(&self, x: Config) -> Config {
        Config(self.apply_mask(x.0))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &EsMap) -> Result<EsMap> {
        if other.target != self.source {
            return Err(Error::Invalid(
                "composition endpoint mismatch between maps".to_string(),
            ));
        }
        let map = other.map.iter().map(|&i| self.map[i]).collect();
        EsMap::new(other.source.clone(), self.target.clone(), map)
    }

    pub fn is_bijection(&self) -> bool {
        if self.source.n_events() != self.target.n_events() {
            return false;
        }
        let mut seen = 0u128;
        for &t in &self.map {
            if seen & bit(t) != 0 {
                return false;
            }
            seen |= bit(t);
        }
        true
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Result<EsMap> {
        if !self.is_bijection() {
            return Err(Error::Invalid("map is not a bijection".to_string()));
        }
        let mut inv = vec![0; self.map.len()];
        for (s, &t) in self.map.iter().enumerate() {
            inv[t] = s;
        }
        EsMap::new(self.target.clone(), self.source.clone(), inv)
    }
}

/// Check the map axioms by enumerating every source configuration.
pub fn validate_map(f: &EsMap, limits: &Limits) -> Report {
    let mut report = Report::new();
    for (i, &t) in f.map.iter().enumerate() {
        if f.source.polarity(i) != f.target.polarity(t) {
            report.push(
                "map.polarity",
                format!(
                    "polarity violated: `{}` ({}) maps to `{}` ({})",
                    f.source.id(i),
                    f.source.polarity(i).sign(),
                    f.target.id(t),
                    f.target.polarity(t).sign()
                ),
            );
        }
    }
    let configs = match enumerate_configurations(&f.source, limits) {
        Ok(c) => c,
        Err(e) => {
            report.push("map.configurations", format!("cannot enumerate source: {e}"));
            return report;
        }
    };
    for x in configs.iter() {
        let image = f.apply_mask(x.0);
        if image.count_ones() != x.0.count_ones() {
            report.push(
                "map.local-injectivity",
                format!(
                    "local injectivity violated on configuration {{{}}}",
                    f.source.ids_of(x.0).join(",")
                ),
            );
            continue;
        }
        if !f.target.is_config(image) {
            report.push(
                "map.configurations",
                format!(
                    "image of configuration {{{}}} is not a configuration",
                    f.source.ids_of(x.0).join(",")
                ),
            );
        }
    }
    report
}

/// The graph of `f` restricted to a configuration: guaranteed a bijection
/// onto the image when `f` is valid.
pub fn restrict_map(f: &EsMap, x: Config) -> Result<Vec<(EventIdx, EventIdx)>> {
    if !f.source.is_config(x.0) {
        return Err(Error::Invalid(format!(
            "{{{}}} is not a configuration of the source",
            f.source.ids_of(x.0).join(",")
        )));
    }
    Ok(x.iter().map(|i| (i, f.apply(i))).collect())
}

fn tag_id(tag: usize, id: &str) -> String {
    format!("{tag}:{id}")
}

/// Parallel composition of several structures: tagged disjoint union of
/// events, relations inherited componentwise.
pub fn parallel_many(parts: &[&EventStructure]) -> Result<EventStructure> {
    let total: usize = parts.iter().map(|p| p.n_events()).sum();
    if total > MAX_EVENTS {
        return Err(Error::TooManyEvents(total));
    }
    let mut events = Vec::with_capacity(total);
    let mut pred = Vec::with_capacity(total);
    let mut conflict = Vec::with_capacity(total);
    let mut offset = 0usize;
    for (tag, part) in parts.iter().enumerate() {
        for (i, e) in part.events().iter().enumerate() {
            events.push(EventDecl {
                id: tag_id(tag, &e.id),
                polarity: e.polarity,
                label: e.label.clone(),
            });
            pred.push(part.pred_mask(i) << offset);
            conflict.push(part.conflict_mask(i) << offset);
        }
        offset += part.n_events();
    }
    Ok(EventStructure::from_masks(events, pred, conflict))
}

/// Parallel composition of two structures (tags `0:` and `1:`).
pub fn parallel_es(a: &EventStructure, b: &EventStructure) -> Result<EventStructure> {
    parallel_many(&[a, b])
}

/// All polarity-preserving order-and-conflict isomorphisms `E -> E`.
pub fn enumerate_automorphisms(es: &EventStructure, limits: &Limits) -> Result<Vec<EsMap>> {
    let n = es.n_events();
    let mut result = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = 0u128;

    fn consistent(es: &EventStructure, assign: &[usize], i: EventIdx, t: EventIdx) -> bool {
        if es.polarity(i) != es.polarity(t) {
            return false;
        }
        if es.pred_mask(i).count_ones() != es.pred_mask(t).count_ones()
            || es.conflict_mask(i).count_ones() != es.conflict_mask(t).count_ones()
        {
            return false;
        }
        for (j, &tj) in assign.iter().enumerate() {
            if tj == usize::MAX {
                continue;
            }
            if es.lt(j, i) != es.lt(tj, t) || es.lt(i, j) != es.lt(t, tj) {
                return false;
            }
            if es.in_conflict(i, j) != es.in_conflict(t, tj) {
                return false;
            }
        }
        true
    }

    fn go(
        es: &EventStructure,
        i: usize,
        assign: &mut Vec<usize>,
        used: &mut u128,
        result: &mut Vec<EsMap>,
        bound: usize,
    ) -> Result<()> {
        let n = es.n_events();
        if i == n {
            result.push(EsMap::new(es.clone(), es.clone(), assign.clone())?);
            if result.len() > bound {
                return Err(Error::GroupBound { bound });
            }
            return Ok(());
        }
        for t in 0..n {
            if *used & bit(t) != 0 {
                continue;
            }
            if consistent(es, assign, i, t) {
                assign[i] = t;
                *used |= bit(t);
                go(es, i + 1, assign, used, result, bound)?;
                assign[i] = usize::MAX;
                *used &= !bit(t);
            }
        }
        Ok(())
    }

    go(es, 0, &mut assign, &mut used, &mut result, limits.max_group)?;
    Ok(result)
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// Independent oracle: filter all subsets for down-closure and
    /// conflict-freedom. Only usable for small structures.
    pub fn brute_force_configs(es: &EventStructure) -> Vec<Config> {
        assert!(es.n_events() <= 20, "oracle only for small structures");
        let n = es.n_events();
        let mut out = Vec::new();
        for m in 0..(1u128 << n) {
            if es.down_closed(m) && es.conflict_free(m) {
                out.push(Config(m));
            }
        }
        out.sort_by_key(|c| (c.len(), c.0));
        out
    }

    pub fn es(
        events: &[(&str, Polarity)],
        causes: &[(&str, &str)],
        conflicts: &[(&str, &str)],
    ) -> EventStructure {
        EventStructure::new(
            events
                .iter()
                .map(|(id, p)| EventDecl::new(*id, *p))
                .collect(),
            &causes
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
            &conflicts
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    /// The two-column structure: two causal pairs neg -> pos, no conflict.
    pub fn two_columns() -> EventStructure {
        es(
            &[
                ("a", Polarity::Negative),
                ("b", Polarity::Positive),
                ("a'", Polarity::Negative),
                ("b'", Polarity::Positive),
            ],
            &[("a", "b"), ("a'", "b'")],
            &[],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn empty_structure_is_valid_with_one_configuration() {
        let e = EventStructure::empty();
        assert!(validate_event_structure(&e).is_clean());
        let configs = enumerate_configurations(&e, &limits()).unwrap();
        assert_eq!(configs.len(), 1);
        assert!(configs.contains(Config::EMPTY));
    }

    #[test]
    fn heredity_violation_is_reported_with_witness() {
        // a <= a', a # b, but not a' # b.
        let e = es(
            &[
                ("a", Polarity::Negative),
                ("a'", Polarity::Positive),
                ("b", Polarity::Negative),
            ],
            &[("a", "a'")],
            &[("a", "b")],
        );
        let report = validate_event_structure(&e);
        assert!(report.violates("conflict.hereditary"));
        assert!(report.summary().contains("(`a'`,`b`)"));
    }

    #[test]
    fn two_column_structure_is_valid_with_nine_configurations() {
        let e = two_columns();
        assert!(validate_event_structure(&e).is_clean());
        let configs = enumerate_configurations(&e, &limits()).unwrap();
        // Frozen from the subset-filter oracle: each column contributes
        // {}, {neg}, {neg,pos} independently, so 3 * 3 = 9.
        assert_eq!(configs.len(), 9);
        let oracle = brute_force_configs(&e);
        assert_eq!(configs.list, oracle);
    }

    #[test]
    fn mutual_conflict_yields_three_configurations() {
        let e = es(
            &[("a", Polarity::Negative), ("b", Polarity::Negative)],
            &[],
            &[("a", "b")],
        );
        let configs = enumerate_configurations(&e, &limits()).unwrap();
        assert_eq!(configs.len(), 3);
    }

    #[test]
    fn enumeration_matches_brute_force_on_mixed_structure() {
        let e = es(
            &[
                ("a", Polarity::Negative),
                ("b", Polarity::Positive),
                ("c", Polarity::Negative),
                ("d", Polarity::Positive),
            ],
            &[("a", "b"), ("a", "d"), ("c", "d")],
            &[("b", "c")],
        );
        let configs = enumerate_configurations(&e, &limits()).unwrap();
        assert_eq!(configs.list, brute_force_configs(&e));
    }

    #[test]
    fn configuration_set_is_downward_closed() {
        let e = two_columns();
        let configs = enumerate_configurations(&e, &limits()).unwrap();
        for y in configs.iter() {
            for sub in 0..=y.0 {
                let x = sub & y.0;
                if e.is_config(x) {
                    assert!(configs.contains(Config(x)));
                }
            }
        }
    }

    #[test]
    fn config_bound_is_enforced() {
        let e = es(
            &[
                ("a", Polarity::Negative),
                ("b", Polarity::Negative),
                ("c", Polarity::Negative),
            ],
            &[],
            &[],
        );
        let err = enumerate_configurations(&e, &Limits::default().with_max_configs(4)).unwrap_err();
        assert!(matches!(err, Error::ConfigBound { .. }));
    }

    #[test]
    fn cycle_is_rejected_at_construction() {
        let r = EventStructure::new(
            vec![
                EventDecl::new("a", Polarity::Negative),
                EventDecl::new("b", Polarity::Positive),
            ],
            &[
                ("a".to_string(), "b".to_string()),
                ("b".to_string(), "a".to_string()),
            ],
            &[],
        );
        assert!(matches!(r, Err(Error::CausalityCycle(_))));
    }

    #[test]
    fn identity_map_is_valid() {
        let e = two_columns();
        assert!(validate_map(&EsMap::identity(&e), &limits()).is_clean());
    }

    #[test]
    fn collapsing_map_violates_local_injectivity() {
        let e = es(
            &[("a", Polarity::Negative), ("b", Polarity::Negative)],
            &[],
            &[],
        );
        let single = es(&[("z", Polarity::Negative)], &[], &[]);
        let f = EsMap::new(e, single, vec![0, 0]).unwrap();
        let report = validate_map(&f, &limits());
        assert!(report.violates("map.local-injectivity"));
    }

    #[test]
    fn polarity_flipping_map_is_reported() {
        let e = es(&[("a", Polarity::Negative)], &[], &[]);
        let f = EsMap::new(e.clone(), e.dual(), vec![0]).unwrap();
        assert!(validate_map(&f, &limits()).violates("map.polarity"));
    }

    #[test]
    fn restriction_of_swap_maps_one_column_to_the_other() {
        let e = two_columns();
        let swap = EsMap::new(e.clone(), e.clone(), vec![2, 3, 0, 1]).unwrap();
        assert!(validate_map(&swap, &limits()).is_clean());
        let x = Config(e.mask_of_ids(["a", "b"]).unwrap());
        let graph = restrict_map(&swap, x).unwrap();
        let expect = vec![
            (e.idx("a").unwrap(), e.idx("a'").unwrap()),
            (e.idx("b").unwrap(), e.idx("b'").unwrap()),
        ];
        assert_eq!(graph, expect);
        assert!(restrict_map(&swap, Config::EMPTY).unwrap().is_empty());
    }

    #[test]
    fn parallel_with_empty_is_tagged_copy() {
        let e = two_columns();
        let p = parallel_es(&e, &EventStructure::empty()).unwrap();
        assert_eq!(p.n_events(), 4);
        assert_eq!(p.id(0), "0:a");
        let ce = enumerate_configurations(&e, &limits()).unwrap().len();
        let cp = enumerate_configurations(&p, &limits()).unwrap().len();
        assert_eq!(ce, cp);
    }

    #[test]
    fn parallel_configuration_count_is_the_product() {
        let a = es(&[("a", Polarity::Negative)], &[], &[]);
        let b = es(&[("b", Polarity::Positive)], &[], &[]);
        let p = parallel_es(&a, &b).unwrap();
        let configs = enumerate_configurations(&p, &limits()).unwrap();
        // 2 x 2 by the product decomposition of configurations.
        assert_eq!(configs.len(), 4);

        let e = two_columns();
        let q = parallel_es(&e, &e).unwrap();
        let ce = enumerate_configurations(&e, &limits()).unwrap().len();
        let cq = enumerate_configurations(&q, &limits()).unwrap().len();
        assert_eq!(cq, ce * ce);
    }

    #[test]
    fn two_column_structure_has_exactly_two_automorphisms() {
        let e = two_columns();
        let autos = enumerate_automorphisms(&e, &limits()).unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos.iter().any(|m| m.table() == [0, 1, 2, 3]));
        assert!(autos.iter().any(|m| m.table() == [2, 3, 0, 1]));
    }

    #[test]
    fn concurrent_equal_polarity_pair_has_two_automorphisms() {
        let e = es(
            &[("a", Polarity::Negative), ("b", Polarity::Negative)],
            &[],
            &[],
        );
        assert_eq!(enumerate_automorphisms(&e, &limits()).unwrap().len(), 2);
    }

    #[test]
    fn empty_structure_has_identity_automorphism_only() {
        let autos = enumerate_automorphisms(&EventStructure::empty(), &limits()).unwrap();
        assert_eq!(autos.len(), 1);
    }

    #[test]
    fn automorphisms_form_a_group_under_composition() {
        let e = two_columns();
        let autos = enumerate_automorphisms(&e, &limits()).unwrap();
        let tables: Vec<_> = autos.iter().map(|m| m.table().to_vec()).collect();
        assert!(tables.contains(&(0..e.n_events()).collect::<Vec<_>>()));
        for f in &autos {
            assert!(tables.contains(&f.inverse().unwrap().table().to_vec()));
            for g in &autos {
                let h = f.compose(g).unwrap();
                assert!(tables.contains(&h.table().to_vec()));
            }
        }
    }

    #[test]
    fn extension_kinds_follow_the_delta_polarities() {
        let e = two_columns();
        let empty = Config::EMPTY;
        let neg = Config(e.mask_of_ids(["a"]).unwrap());
        let col = Config(e.mask_of_ids(["a", "b"]).unwrap());
        assert_eq!(extension_kind(&e, neg, neg), ExtensionKind::Empty);
        assert!(extension_kind(&e, neg, neg).is_positive());
        assert!(extension_kind(&e, neg, neg).is_negative());
        assert_eq!(extension_kind(&e, empty, neg), ExtensionKind::Negative);
        assert_eq!(extension_kind(&e, empty, col), ExtensionKind::Mixed);
        assert_eq!(extension_kind(&e, neg, col), ExtensionKind::Positive);
        assert_eq!(extension_kind(&e, col, neg), ExtensionKind::NotAnExtension);
    }
}
