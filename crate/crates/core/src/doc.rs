//! The document model: JSON bundles of named, cross-referencing documents
//! for every value the library works with, plus the per-kind validator
//! suites and the structured report consumed by the CLI and the C API.
//!
//! Output field order is fixed by struct declaration order and `BTreeMap`
//! keys, so serialized documents diff reproducibly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::copycat::{validate_lift_witness, LiftWitness};
use crate::es::{Config, EsMap, EventDecl, EventStructure, Polarity};
use crate::game::{validate_game, Game};
use crate::limits::Limits;
use crate::report::Report;
use crate::strategy::{validate_strategy, validate_weak_map, Strategy, WeakMap};
use crate::symmetry::{
    validate_action_polarity, validate_distributive_law, DistributiveLaw, FiniteGroup,
    GroupAction, RequiredPolarity,
};
use crate::tcg::{validate_iso_family, ConfigBijection, IsomorphismFamily};
use crate::uniform::{is_local, validate_uniform, UniformStrategy};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub documents: BTreeMap<String, Document>,
}

impl Bundle {
    pub fn new() -> Self {
        Bundle {
            schema_version: SCHEMA_VERSION,
            documents: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, body: DocBody) {
        self.documents.insert(
            name.into(),
            Document {
                body,
                expect_fail: None,
            },
        );
    }

    pub fn insert_expect_fail(&mut self, name: impl Into<String>, body: DocBody, validator: &str) {
        self.documents.insert(
            name.into(),
            Document {
                body,
                expect_fail: Some(validator.to_string()),
            },
        );
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }

    pub fn from_json(text: &str) -> Result<Bundle> {
        let bundle: Bundle =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("parse error: {e}")))?;
        if bundle.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {}",
                bundle.schema_version
            )));
        }
        Ok(bundle)
    }
}

impl Default for Bundle {
    fn default() -> Self {
        Bundle::new()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    #[serde(flatten)]
    pub body: DocBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_fail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EventField {
    pub id: String,
    pub polarity: Polarity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EsDoc {
    pub events: Vec<EventField>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub conflict: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub unit: String,
    /// `mul[i][j]` names the product of elements `i` and `j`.
    pub mul: Vec<Vec<String>>,
    pub inv: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionPolarity {
    Negative,
    Positive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionDoc {
    pub group: String,
    pub target: String,
    /// element name -> (event id -> event id)
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<ActionPolarity>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawEntry {
    pub n: String,
    pub p: String,
    pub to_p: String,
    pub to_n: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawDoc {
    pub n_group: String,
    pub p_group: String,
    pub table: Vec<LawEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameDoc {
    pub es: String,
    pub n_action: String,
    pub p_action: String,
    pub law: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyDoc {
    pub game: String,
    pub events: Vec<EventField>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub conflict: Vec<(String, String)>,
    /// internal event id -> game event id
    pub projection: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResponseEntry {
    pub config: Vec<String>,
    pub response: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakMapDoc {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
    pub responses: Vec<ResponseEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiEntry {
    pub element: String,
    pub config: Vec<String>,
    pub response: String,
    pub image: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformStrategyDoc {
    pub strategy: String,
    pub phi: Vec<PhiEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftWitnessDoc {
    pub source_game: String,
    pub target_game: String,
    /// When set, the witness is for co-lifting: `l : P_target -> P_source`
    /// and `m : N_source -> N_target`.
    #[serde(default)]
    pub colift: bool,
    pub map: BTreeMap<String, String>,
    pub l: BTreeMap<String, String>,
    pub m: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemberEntry {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub graph: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub structure: String,
    pub members: Vec<MemberEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DocBody {
    EventStructure(EsDoc),
    Group(GroupDoc),
    Action(ActionDoc),
    Law(LawDoc),
    Game(GameDoc),
    Strategy(StrategyDoc),
    WeakMap(WeakMapDoc),
    UniformStrategy(UniformStrategyDoc),
    LiftWitness(LiftWitnessDoc),
    Family(FamilyDoc),
}

impl DocBody {
    pub fn kind(&self) -> &'static str {
        match self {
            DocBody::EventStructure(_) => "event-structure",
            DocBody::Group(_) => "group",
            DocBody::Action(_) => "action",
            DocBody::Law(_) => "law",
            DocBody::Game(_) => "game",
            DocBody::Strategy(_) => "strategy",
            DocBody::WeakMap(_) => "weak-map",
            DocBody::UniformStrategy(_) => "uniform-strategy",
            DocBody::LiftWitness(_) => "lift-witness",
            DocBody::Family(_) => "family",
        }
    }

    fn refs(&self) -> Vec<&String> {
        match self {
            DocBody::EventStructure(_) | DocBody::Group(_) => vec![],
            DocBody::Action(d) => vec![&d.group, &d.target],
            DocBody::Law(d) => vec![&d.n_group, &d.p_group],
            DocBody::Game(d) => vec![&d.es, &d.n_action, &d.p_action, &d.law],
            DocBody::Strategy(d) => vec![&d.game],
            DocBody::WeakMap(d) => vec![&d.source, &d.target],
            DocBody::UniformStrategy(d) => vec![&d.strategy],
            DocBody::LiftWitness(d) => vec![&d.source_game, &d.target_game],
            DocBody::Family(d) => vec![&d.structure],
        }
    }
}

/// A resolved document: the typed value a document denotes.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Resolved {
    EventStructure(EventStructure),
    Group(FiniteGroup),
    Action(GroupAction, Option<ActionPolarity>),
    Law(DistributiveLaw),
    Game(Game),
    Strategy(Strategy),
    WeakMap(WeakMap),
    UniformStrategy(UniformStrategy),
    LiftWitness {
        witness: LiftWitness,
        source_game: Game,
        target_game: Game,
        colift: bool,
    },
    Family(IsomorphismFamily),
}

/// Check that every reference names an existing document and the graph of
/// references is acyclic. Reference defects are input errors, not
/// validation failures.
pub fn check_references(bundle: &Bundle) -> Result<()> {
    for (name, doc) in &bundle.documents {
        for r in doc.body.refs() {
            if !bundle.documents.contains_key(r) {
                return Err(Error::Invalid(format!(
                    "document `{name}` references unknown document `{r}`"
                )));
            }
        }
    }
    fn visit<'a>(
        bundle: &'a Bundle,
        name: &'a str,
        state: &mut HashMap<&'a str, u8>,
    ) -> Result<()> {
        match state.get(name) {
            Some(1) => {
                return Err(Error::Invalid(format!(
                    "reference cycle through document `{name}`"
                )))
            }
            Some(2) => return Ok(()),
            _ => {}
        }
        state.insert(name, 1);
        for r in bundle.documents[name].body.refs() {
            visit(bundle, r, state)?;
        }
        state.insert(name, 2);
        Ok(())
    }
    let mut state: HashMap<&str, u8> = HashMap::new();
    for name in bundle.documents.keys() {
        visit(bundle, name, &mut state)?;
    }
    Ok(())
}

struct Resolver<'a> {
    bundle: &'a Bundle,
    cache: BTreeMap<String, Resolved>,
}

impl<'a> Resolver<'a> {
    fn resolve(&mut self, name: &str) -> Result<Resolved> {
        if let Some(hit) = self.cache.get(name) {
            return Ok(hit.clone());
        }
        let doc = self
            .bundle
            .documents
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("unknown document `{name}`")))?;
        let value = self.resolve_body(name, &doc.body)?;
        self.cache.insert(name.to_string(), value.clone());
        Ok(value)
    }

    fn es(&mut self, name: &str) -> Result<EventStructure> {
        match self.resolve(name)? {
            Resolved::EventStructure(es) => Ok(es),
            other => Err(wrong_kind(name, &other, "event-structure")),
        }
    }

    fn group(&mut self, name: &str) -> Result<FiniteGroup> {
        match self.resolve(name)? {
            Resolved::Group(g) => Ok(g),
            other => Err(wrong_kind(name, &other, "group")),
        }
    }

    fn action(&mut self, name: &str) -> Result<GroupAction> {
        match self.resolve(name)? {
            Resolved::Action(a, _) => Ok(a),
            other => Err(wrong_kind(name, &other, "action")),
        }
    }

    fn law(&mut self, name: &str) -> Result<DistributiveLaw> {
        match self.resolve(name)? {
            Resolved::Law(l) => Ok(l),
            other => Err(wrong_kind(name, &other, "law")),
        }
    }

    fn game(&mut self, name: &str) -> Result<Game> {
        match self.resolve(name)? {
            Resolved::Game(g) => Ok(g),
            other => Err(wrong_kind(name, &other, "game")),
        }
    }

    fn strategy(&mut self, name: &str) -> Result<Strategy> {
        match self.resolve(name)? {
            Resolved::Strategy(s) => Ok(s),
            other => Err(wrong_kind(name, &other, "strategy")),
        }
    }

    fn resolve_body(&mut self, name: &str, body: &DocBody) -> Result<Resolved> {
        match body {
            DocBody::EventStructure(d) => Ok(Resolved::EventStructure(es_from_doc(d)?)),
            DocBody::Group(d) => Ok(Resolved::Group(group_from_doc(d)?)),
            DocBody::Action(d) => {
                let group = self.group(&d.group)?;
                let target = self.es(&d.target)?;
                let mut tables = Vec::with_capacity(group.order());
                for g in group.elems() {
                    let elem_name = group.name(g);
                    let map = d.maps.get(elem_name).ok_or_else(|| {
                        Error::Invalid(format!(
                            "action `{name}` has no table for element `{elem_name}`"
                        ))
                    })?;
                    let mut table = Vec::with_capacity(target.n_events());
                    for e in 0..target.n_events() {
                        let id = target.id(e);
                        let to = map.get(id).ok_or_else(|| {
                            Error::Invalid(format!(
                                "action `{name}` element `{elem_name}` misses event `{id}`"
                            ))
                        })?;
                        table.push(target.idx(to).ok_or_else(|| {
                            Error::Invalid(format!("unknown event `{to}` in action `{name}`"))
                        })?);
                    }
                    tables.push(table);
                }
                Ok(Resolved::Action(
                    GroupAction::new(group, target, tables)?,
                    d.polarity,
                ))
            }
            DocBody::Law(d) => {
                let n_group = self.group(&d.n_group)?;
                let p_group = self.group(&d.p_group)?;
                let mut table = vec![vec![None; p_group.order()]; n_group.order()];
                for entry in &d.table {
                    let n = n_group.elem(&entry.n).ok_or_else(|| {
                        Error::Invalid(format!("unknown N element `{}` in `{name}`", entry.n))
                    })?;
                    let p = p_group.elem(&entry.p).ok_or_else(|| {
                        Error::Invalid(format!("unknown P element `{}` in `{name}`", entry.p))
                    })?;
                    let to_p = p_group.elem(&entry.to_p).ok_or_else(|| {
                        Error::Invalid(format!("unknown P element `{}` in `{name}`", entry.to_p))
                    })?;
                    let to_n = n_group.elem(&entry.to_n).ok_or_else(|| {
                        Error::Invalid(format!("unknown N element `{}` in `{name}`", entry.to_n))
                    })?;
                    table[n][p] = Some((to_p, to_n));
                }
                let table: Vec<Vec<(usize, usize)>> = table
                    .into_iter()
                    .enumerate()
                    .map(|(n, row)| {
                        row.into_iter()
                            .enumerate()
                            .map(|(p, cell)| {
                                cell.ok_or_else(|| {
                                    Error::Invalid(format!(
                                        "law `{name}` misses the entry at (`{}`, `{}`)",
                                        n_group.name(n),
                                        p_group.name(p)
                                    ))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Resolved::Law(DistributiveLaw::new(n_group, p_group, table)?))
            }
            DocBody::Game(d) => {
                let es = self.es(&d.es)?;
                let n_action = self.action(&d.n_action)?;
                let p_action = self.action(&d.p_action)?;
                let law = self.law(&d.law)?;
                Ok(Resolved::Game(Game {
                    es,
                    n_action,
                    p_action,
                    law,
                }))
            }
            DocBody::Strategy(d) => {
                let game = self.game(&d.game)?;
                let internal = es_from_doc(&EsDoc {
                    events: d.events.clone(),
                    covers: d.covers.clone(),
                    conflict: d.conflict.clone(),
                })?;
                let pairs: Vec<(String, String)> = d
                    .projection
                    .iter()
                    .map(|(s, t)| (s.clone(), t.clone()))
                    .collect();
                let proj = EsMap::from_pairs(internal.clone(), game.es.clone(), &pairs)?;
                Ok(Resolved::Strategy(Strategy::new(internal, game, proj)?))
            }
            DocBody::WeakMap(d) => {
                let source = self.strategy(&d.source)?;
                let target = self.strategy(&d.target)?;
                let pairs: Vec<(String, String)> =
                    d.map.iter().map(|(s, t)| (s.clone(), t.clone())).collect();
                let f =
                    EsMap::from_pairs(source.internal.clone(), target.internal.clone(), &pairs)?;
                let p_group = source.game.p_group();
                let mut responses = BTreeMap::new();
                for entry in &d.responses {
                    let mask = source
                        .internal
                        .mask_of_ids(entry.config.iter().map(|s| s.as_str()))?;
                    let r = p_group.elem(&entry.response).ok_or_else(|| {
                        Error::Invalid(format!(
                            "unknown response element `{}` in `{name}`",
                            entry.response
                        ))
                    })?;
                    responses.insert(Config(mask), r);
                }
                Ok(Resolved::WeakMap(WeakMap {
                    source,
                    target,
                    f,
                    responses,
                }))
            }
            DocBody::UniformStrategy(d) => {
                let strategy = self.strategy(&d.strategy)?;
                let n_group = strategy.game.n_group();
                let p_group = strategy.game.p_group();
                let mut phi = BTreeMap::new();
                for entry in &d.phi {
                    let alpha = n_group.elem(&entry.element).ok_or_else(|| {
                        Error::Invalid(format!(
                            "unknown N element `{}` in `{name}`",
                            entry.element
                        ))
                    })?;
                    let x = strategy
                        .internal
                        .mask_of_ids(entry.config.iter().map(|s| s.as_str()))?;
                    let r = p_group.elem(&entry.response).ok_or_else(|| {
                        Error::Invalid(format!(
                            "unknown P element `{}` in `{name}`",
                            entry.response
                        ))
                    })?;
                    let y = strategy
                        .internal
                        .mask_of_ids(entry.image.iter().map(|s| s.as_str()))?;
                    phi.insert((alpha, Config(x)), (r, Config(y)));
                }
                Ok(Resolved::UniformStrategy(UniformStrategy { strategy, phi }))
            }
            DocBody::LiftWitness(d) => {
                let source_game = self.game(&d.source_game)?;
                let target_game = self.game(&d.target_game)?;
                let pairs: Vec<(String, String)> =
                    d.map.iter().map(|(s, t)| (s.clone(), t.clone())).collect();
                let map =
                    EsMap::from_pairs(source_game.es.clone(), target_game.es.clone(), &pairs)?;
                let (l_from, l_to, m_from, m_to) = if d.colift {
                    (
                        target_game.p_group(),
                        source_game.p_group(),
                        source_game.n_group(),
                        target_game.n_group(),
                    )
                } else {
                    (
                        target_game.n_group(),
                        source_game.n_group(),
                        source_game.p_group(),
                        target_game.p_group(),
                    )
                };
                let l = hom_table(&d.l, l_from, l_to, name)?;
                let m = hom_table(&d.m, m_from, m_to, name)?;
                Ok(Resolved::LiftWitness {
                    witness: LiftWitness { map, l, m },
                    source_game,
                    target_game,
                    colift: d.colift,
                })
            }
            DocBody::Family(d) => {
                let structure = self.es(&d.structure)?;
                let mut members = BTreeSet::new();
                for entry in &d.members {
                    let mut graph = Vec::with_capacity(entry.graph.len());
                    for (s, t) in &entry.graph {
                        let si = structure.idx(s).ok_or_else(|| {
                            Error::Invalid(format!("unknown event `{s}` in `{name}`"))
                        })?;
                        let ti = structure.idx(t).ok_or_else(|| {
                            Error::Invalid(format!("unknown event `{t}` in `{name}`"))
                        })?;
                        graph.push((si, ti));
                    }
                    members.insert(ConfigBijection::from_graph(graph)?);
                }
                Ok(Resolved::Family(IsomorphismFamily { structure, members }))
            }
        }
    }
}

fn wrong_kind(name: &str, got: &Resolved, want: &str) -> Error {
    Error::Invalid(format!("`{name}` is a {}, expected a {want}", kind_of(got)))
}

fn kind_of(r: &Resolved) -> &'static str {
    match r {
        Resolved::EventStructure(_) => "event-structure",
        Resolved::Group(_) => "group",
        Resolved::Action(..) => "action",
        Resolved::Law(_) => "law",
        Resolved::Game(_) => "game",
        Resolved::Strategy(_) => "strategy",
        Resolved::WeakMap(_) => "weak-map",
        Resolved::UniformStrategy(_) => "uniform-strategy",
        Resolved::LiftWitness { .. } => "lift-witness",
        Resolved::Family(_) => "family",
    }
}

fn hom_table(
    table: &BTreeMap<String, String>,
    from: &FiniteGroup,
    to: &FiniteGroup,
    name: &str,
) -> Result<Vec<usize>> {
    from.elems()
        .map(|g| {
            let key = from.name(g);
            let image = table.get(key).ok_or_else(|| {
                Error::Invalid(format!(
                    "witness `{name}` misses the table entry for `{key}`"
                ))
            })?;
            to.elem(image).ok_or_else(|| {
                Error::Invalid(format!("unknown element `{image}` in witness `{name}`"))
            })
        })
        .collect()
}

fn es_from_doc(d: &EsDoc) -> Result<EventStructure> {
    let events = d
        .events
        .iter()
        .map(|e| EventDecl {
            id: e.id.clone(),
            polarity: e.polarity,
            label: e.label.clone(),
        })
        .collect();
    EventStructure::new(events, &d.covers, &d.conflict)
}

fn group_from_doc(d: &GroupDoc) -> Result<FiniteGroup> {
    let index: BTreeMap<&str, usize> = d
        .elements
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let look = |n: &str| -> Result<usize> {
        index
            .get(n)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown group element `{n}`")))
    };
    let unit = look(&d.unit)?;
    if d.mul.len() != d.elements.len() || d.inv.len() != d.elements.len() {
        return Err(Error::Invalid("group table dimensions are off".into()));
    }
    let mul = d
        .mul
        .iter()
        .map(|row| row.iter().map(|n| look(n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let inv = d.inv.iter().map(|n| look(n)).collect::<Result<Vec<_>>>()?;
    FiniteGroup::new(d.elements.clone(), unit, mul, inv)
}

/// Resolve one document of a bundle by name.
pub fn resolve_document(bundle: &Bundle, name: &str) -> Result<Resolved> {
    check_references(bundle)?;
    Resolver {
        bundle,
        cache: BTreeMap::new(),
    }
    .resolve(name)
}

// ---------------------------------------------------------------------
// Emission: typed values back into documents.

pub fn es_to_doc(es: &EventStructure) -> EsDoc {
    EsDoc {
        events: es
            .events()
            .iter()
            .map(|e| EventField {
                id: e.id.clone(),
                polarity: e.polarity,
                label: e.label.clone(),
            })
            .collect(),
        covers: es
            .covers()
            .into_iter()
            .map(|(a, b)| (es.id(a).to_string(), es.id(b).to_string()))
            .collect(),
        conflict: {
            let mut pairs = Vec::new();
            for a in 0..es.n_events() {
                for b in (a + 1)..es.n_events() {
                    if es.in_conflict(a, b) {
                        pairs.push((es.id(a).to_string(), es.id(b).to_string()));
                    }
                }
            }
            pairs
        },
    }
}

pub fn group_to_doc(g: &FiniteGroup) -> GroupDoc {
    GroupDoc {
        elements: g.names().to_vec(),
        unit: g.name(g.unit()).to_string(),
        mul: g
            .elems()
            .map(|a| g.elems().map(|b| g.name(g.mul(a, b)).to_string()).collect())
            .collect(),
        inv: g.elems().map(|a| g.name(g.inv(a)).to_string()).collect(),
    }
}

pub fn action_to_doc(
    action: &GroupAction,
    group_ref: &str,
    target_ref: &str,
    polarity: Option<ActionPolarity>,
) -> ActionDoc {
    ActionDoc {
        group: group_ref.to_string(),
        target: target_ref.to_string(),
        maps: action
            .group
            .elems()
            .map(|g| {
                (
                    action.group.name(g).to_string(),
                    (0..action.target.n_events())
                        .map(|e| {
                            (
                                action.target.id(e).to_string(),
                                action.target.id(action.act_idx(g, e)).to_string(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
        polarity,
    }
}

pub fn law_to_doc(law: &DistributiveLaw, n_ref: &str, p_ref: &str) -> LawDoc {
    let mut table = Vec::new();
    for n in law.n_group.elems() {
        for p in law.p_group.elems() {
            let (to_p, to_n) = law.apply(n, p);
            table.push(LawEntry {
                n: law.n_group.name(n).to_string(),
                p: law.p_group.name(p).to_string(),
                to_p: law.p_group.name(to_p).to_string(),
                to_n: law.n_group.name(to_n).to_string(),
            });
        }
    }
    LawDoc {
        n_group: n_ref.to_string(),
        p_group: p_ref.to_string(),
        table,
    }
}

/// Emit a game and its four components under `prefix`; the game document
/// itself is named `prefix`.
pub fn add_game_docs(bundle: &mut Bundle, prefix: &str, game: &Game) -> String {
    let es_name = format!("{prefix}.es");
    let ng_name = format!("{prefix}.n-group");
    let pg_name = format!("{prefix}.p-group");
    let na_name = format!("{prefix}.n-action");
    let pa_name = format!("{prefix}.p-action");
    let law_name = format!("{prefix}.law");
    let game_name = prefix.to_string();
    bundle.insert(&es_name, DocBody::EventStructure(es_to_doc(&game.es)));
    bundle.insert(&ng_name, DocBody::Group(group_to_doc(game.n_group())));
    bundle.insert(&pg_name, DocBody::Group(group_to_doc(game.p_group())));
    bundle.insert(
        &na_name,
        DocBody::Action(action_to_doc(
            &game.n_action,
            &ng_name,
            &es_name,
            Some(ActionPolarity::Negative),
        )),
    );
    bundle.insert(
        &pa_name,
        DocBody::Action(action_to_doc(
            &game.p_action,
            &pg_name,
            &es_name,
            Some(ActionPolarity::Positive),
        )),
    );
    bundle.insert(
        &law_name,
        DocBody::Law(law_to_doc(&game.law, &ng_name, &pg_name)),
    );
    bundle.insert(
        &game_name,
        DocBody::Game(GameDoc {
            es: es_name,
            n_action: na_name,
            p_action: pa_name,
            law: law_name,
        }),
    );
    game_name
}

pub fn strategy_to_doc(s: &Strategy, game_ref: &str) -> StrategyDoc {
    let internal = es_to_doc(&s.internal);
    StrategyDoc {
        game: game_ref.to_string(),
        events: internal.events,
        covers: internal.covers,
        conflict: internal.conflict,
        projection: (0..s.internal.n_events())
            .map(|e| {
                (
                    s.internal.id(e).to_string(),
                    s.game.es.id(s.proj.apply(e)).to_string(),
                )
            })
            .collect(),
    }
}

pub fn weak_map_to_doc(w: &WeakMap, source_ref: &str, target_ref: &str) -> WeakMapDoc {
    WeakMapDoc {
        source: source_ref.to_string(),
        target: target_ref.to_string(),
        map: (0..w.source.internal.n_events())
            .map(|e| {
                (
                    w.source.internal.id(e).to_string(),
                    w.target.internal.id(w.f.apply(e)).to_string(),
                )
            })
            .collect(),
        responses: w
            .responses
            .iter()
            .map(|(&x, &r)| ResponseEntry {
                config: w.source.internal.ids_of(x.0),
                response: w.source.game.p_group().name(r).to_string(),
            })
            .collect(),
    }
}

pub fn uniform_to_doc(u: &UniformStrategy, strategy_ref: &str) -> UniformStrategyDoc {
    let game = &u.strategy.game;
    UniformStrategyDoc {
        strategy: strategy_ref.to_string(),
        phi: u
            .phi
            .iter()
            .map(|(&(alpha, x), &(r, y))| PhiEntry {
                element: game.n_group().name(alpha).to_string(),
                config: u.strategy.internal.ids_of(x.0),
                response: game.p_group().name(r).to_string(),
                image: u.strategy.internal.ids_of(y.0),
            })
            .collect(),
    }
}

pub fn witness_to_doc(
    w: &LiftWitness,
    source_game: &Game,
    target_game: &Game,
    source_ref: &str,
    target_ref: &str,
    colift: bool,
) -> LiftWitnessDoc {
    let (l_from, l_to, m_from, m_to) = if colift {
        (
            target_game.p_group(),
            source_game.p_group(),
            source_game.n_group(),
            target_game.n_group(),
        )
    } else {
        (
            target_game.n_group(),
            source_game.n_group(),
            source_game.p_group(),
            target_game.p_group(),
        )
    };
    LiftWitnessDoc {
        source_game: source_ref.to_string(),
        target_game: target_ref.to_string(),
        colift,
        map: (0..source_game.es.n_events())
            .map(|e| {
                (
                    source_game.es.id(e).to_string(),
                    target_game.es.id(w.map.apply(e)).to_string(),
                )
            })
            .collect(),
        l: l_from
            .elems()
            .map(|g| (l_from.name(g).to_string(), l_to.name(w.l[g]).to_string()))
            .collect(),
        m: m_from
            .elems()
            .map(|g| (m_from.name(g).to_string(), m_to.name(w.m[g]).to_string()))
            .collect(),
    }
}

pub fn family_to_doc(f: &IsomorphismFamily, structure_ref: &str) -> FamilyDoc {
    FamilyDoc {
        structure: structure_ref.to_string(),
        members: f
            .members
            .iter()
            .map(|m| MemberEntry {
                source: f.structure.ids_of(m.source().0),
                target: f.structure.ids_of(m.target().0),
                graph: m
                    .graph()
                    .iter()
                    .map(|&(s, t)| (f.structure.id(s).to_string(), f.structure.id(t).to_string()))
                    .collect(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------
// Validator suites and the structured report.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub validator: String,
    pub passed: bool,
    pub axioms: Vec<AxiomResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocVerdict {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_fail: Option<String>,
    pub ok: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleReport {
    pub schema_version: u32,
    pub ok: bool,
    pub documents: Vec<DocVerdict>,
}

fn check_from_report(validator: &str, axioms: &[&str], report: &Report) -> CheckResult {
    let mut grouped: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for v in &report.violations {
        grouped
            .entry(v.axiom.clone())
            .or_default()
            .push(v.message.clone());
    }
    let mut listed: BTreeSet<String> = axioms.iter().map(|s| s.to_string()).collect();
    for axiom in grouped.keys() {
        listed.insert(axiom.clone());
    }
    let results: Vec<AxiomResult> = listed
        .into_iter()
        .map(|axiom| {
            let witnesses = grouped.get(&axiom).cloned().unwrap_or_default();
            AxiomResult {
                status: if witnesses.is_empty() { "pass" } else { "fail" }.to_string(),
                axiom,
                witnesses,
            }
        })
        .collect();
    CheckResult {
        validator: validator.to_string(),
        passed: report.is_clean(),
        axioms: results,
        notes: report.notes.clone(),
    }
}

fn failed_check(validator: &str, message: String) -> CheckResult {
    CheckResult {
        validator: validator.to_string(),
        passed: false,
        axioms: vec![AxiomResult {
            axiom: format!("{validator}.resolve"),
            status: "fail".to_string(),
            witnesses: vec![message],
        }],
        notes: vec![],
    }
}

const ES_AXIOMS: &[&str] = &[
    "order.irreflexive",
    "order.transitive",
    "conflict.irreflexive",
    "conflict.symmetric",
    "conflict.hereditary",
];
const GROUP_AXIOMS: &[&str] = &["group.unit", "group.inverse", "group.associativity"];
const ACTION_AXIOMS: &[&str] = &["action.unit", "action.homomorphism", "action.automorphism"];
const LAW_AXIOMS: &[&str] = &["law.unit-n", "law.unit-p", "law.mult-n", "law.mult-p"];
const GAME_AXIOMS: &[&str] = &["game.components", "action.polarity", "game.permutation-square"];
const STRATEGY_AXIOMS: &[&str] = &[
    "strategy.receptivity",
    "strategy.positive-restriction",
    "map.configurations",
    "map.local-injectivity",
    "map.polarity",
];
const WEAK_MAP_AXIOMS: &[&str] = &["weak-map.totality", "weak-map.square"];
const UNIFORM_AXIOMS: &[&str] = &[
    "uniform.totality",
    "uniform.unit",
    "uniform.weak-map",
    "uniform.event-map",
    "uniform.multiplication",
];
const WITNESS_AXIOMS: &[&str] = &[
    "witness.l-homomorphism",
    "witness.m-homomorphism",
    "witness.l-square",
    "witness.m-square",
    "witness.hexagon",
];
const FAMILY_AXIOMS: &[&str] = &[
    "family.members",
    "family.polarity",
    "family.identities",
    "family.inverse",
    "family.composition",
    "family.restriction",
    "family.extension",
];

/// Run the validator suite for one document. Resolution failures of the
/// document itself surface as a failed check, not an error.
pub fn validate_document(bundle: &Bundle, name: &str, limits: &Limits) -> Result<Vec<CheckResult>> {
    let doc = bundle
        .documents
        .get(name)
        .ok_or_else(|| Error::Invalid(format!("unknown document `{name}`")))?;
    let kind = doc.body.kind();
    let resolved = Resolver {
        bundle,
        cache: BTreeMap::new(),
    }
    .resolve(name);
    let resolved = match resolved {
        Ok(r) => r,
        Err(e) => return Ok(vec![failed_check(kind, e.to_string())]),
    };
    let mut checks = Vec::new();
    match resolved {
        Resolved::EventStructure(es) => {
            let report = crate::es::validate_event_structure(&es);
            checks.push(check_from_report("event-structure", ES_AXIOMS, &report));
        }
        Resolved::Group(g) => {
            checks.push(check_from_report("group", GROUP_AXIOMS, &g.validate()));
        }
        Resolved::Action(a, polarity) => {
            checks.push(check_from_report("action", ACTION_AXIOMS, &a.validate()));
            if let Some(polarity) = polarity {
                let required = match polarity {
                    ActionPolarity::Negative => RequiredPolarity::Negative,
                    ActionPolarity::Positive => RequiredPolarity::Positive,
                };
                let report = validate_action_polarity(&a, required, limits);
                checks.push(check_from_report(
                    "action-polarity",
                    &["action.polarity"],
                    &report,
                ));
            }
        }
        Resolved::Law(law) => {
            checks.push(check_from_report(
                "law",
                LAW_AXIOMS,
                &validate_distributive_law(&law),
            ));
        }
        Resolved::Game(game) => {
            checks.push(check_from_report(
                "game",
                GAME_AXIOMS,
                &validate_game(&game, limits),
            ));
        }
        Resolved::Strategy(s) => {
            checks.push(check_from_report(
                "strategy",
                STRATEGY_AXIOMS,
                &validate_strategy(&s, limits),
            ));
        }
        Resolved::WeakMap(w) => {
            checks.push(check_from_report(
                "weak-map",
                WEAK_MAP_AXIOMS,
                &validate_weak_map(&w, limits),
            ));
        }
        Resolved::UniformStrategy(u) => {
            checks.push(check_from_report(
                "uniform",
                UNIFORM_AXIOMS,
                &validate_uniform(&u, limits),
            ));
            let mut locality = Report::new();
            match is_local(&u, limits) {
                Ok((true, _)) => {}
                Ok((false, witness)) => {
                    let (alpha, x) = witness.expect("witness present");
                    locality.push(
                        "locality",
                        format!(
                            "element `{}` fixes the display of {{{}}} but moves it",
                            u.strategy.game.n_group().name(alpha),
                            u.strategy.internal.ids_of(x.0).join(",")
                        ),
                    );
                }
                Err(e) => locality.push("locality", format!("cannot check: {e}")),
            }
            checks.push(check_from_report("locality", &["locality"], &locality));
        }
        Resolved::LiftWitness {
            witness,
            source_game,
            target_game,
            colift,
        } => {
            let report = if colift {
                let da = crate::game::dual_game(&source_game);
                let db = crate::game::dual_game(&target_game);
                match EsMap::new(da.es.clone(), db.es.clone(), witness.map.table().to_vec()) {
                    Ok(dual_map) => validate_lift_witness(
                        &LiftWitness {
                            map: dual_map,
                            l: witness.l.clone(),
                            m: witness.m.clone(),
                        },
                        &da,
                        &db,
                    ),
                    Err(e) => {
                        let mut r = Report::new();
                        r.push("witness.shape", e.to_string());
                        r
                    }
                }
            } else {
                validate_lift_witness(&witness, &source_game, &target_game)
            };
            checks.push(check_from_report("lift-witness", WITNESS_AXIOMS, &report));
        }
        Resolved::Family(f) => {
            checks.push(check_from_report(
                "family",
                FAMILY_AXIOMS,
                &validate_iso_family(&f, limits),
            ));
        }
    }
    Ok(checks)
}

/// Validate every document of a bundle, honoring `expect_fail` tags: a
/// tagged document passes exactly when its tagged validator fails and all
/// its other validators pass.
pub fn check_bundle(bundle: &Bundle, limits: &Limits) -> Result<BundleReport> {
    check_references(bundle)?;
    let mut documents = Vec::new();
    let mut all_ok = true;
    for (name, doc) in &bundle.documents {
        let checks = validate_document(bundle, name, limits)?;
        let ok = match &doc.expect_fail {
            None => checks.iter().all(|c| c.passed),
            Some(tag) => {
                let tagged_failed = checks.iter().any(|c| &c.validator == tag && !c.passed);
                let others_pass = checks
                    .iter()
                    .filter(|c| &c.validator != tag)
                    .all(|c| c.passed);
                tagged_failed && others_pass
            }
        };
        all_ok &= ok;
        documents.push(DocVerdict {
            name: name.clone(),
            kind: doc.body.kind().to_string(),
            expect_fail: doc.expect_fail.clone(),
            ok,
            checks,
        });
    }
    Ok(BundleReport {
        schema_version: SCHEMA_VERSION,
        ok: all_ok,
        documents,
    })
}

pub fn report_to_text(report: &BundleReport) -> String {
    let mut out = String::new();
    for doc in &report.documents {
        let verdict = if doc.ok { "ok" } else { "FAIL" };
        let expect = doc
            .expect_fail
            .as_deref()
            .map(|t| format!(" (expect-fail:{t})"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{verdict:4} {} [{}]{expect}\n",
            doc.name, doc.kind
        ));
        for check in &doc.checks {
            for axiom in &check.axioms {
                if axiom.status == "fail" {
                    out.push_str(&format!(
                        "       {}: {}\n",
                        axiom.axiom,
                        axiom.witnesses.join("; ")
                    ));
                }
            }
        }
    }
    out.push_str(if report.ok { "PASS\n" } else { "FAIL\n" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{column_swap_game, nonlocal_uniform, token_strategy, TokenStrategy};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn game_bundle_round_trips_and_validates() {
        let mut bundle = Bundle::new();
        add_game_docs(&mut bundle, "column-swap", &column_swap_game());
        let text = bundle.to_json();
        let reloaded = Bundle::from_json(&text).unwrap();
        let report = check_bundle(&reloaded, &limits()).unwrap();
        assert!(report.ok, "{}", report_to_text(&report));
        match resolve_document(&reloaded, "column-swap").unwrap() {
            Resolved::Game(g) => assert_eq!(g, column_swap_game()),
            _ => panic!("expected a game"),
        }
    }

    #[test]
    fn strategy_bundle_round_trips() {
        let s = token_strategy(TokenStrategy::Echo, 2).unwrap();
        let mut bundle = Bundle::new();
        let game_ref = add_game_docs(&mut bundle, "token2", &s.game);
        bundle.insert("echo", DocBody::Strategy(strategy_to_doc(&s, &game_ref)));
        let reloaded = Bundle::from_json(&bundle.to_json()).unwrap();
        match resolve_document(&reloaded, "echo").unwrap() {
            Resolved::Strategy(t) => assert_eq!(t, s),
            _ => panic!("expected a strategy"),
        }
        let report = check_bundle(&reloaded, &limits()).unwrap();
        assert!(report.ok, "{}", report_to_text(&report));
    }

    #[test]
    fn expect_fail_locality_passes_the_bundle() {
        let (game, u) = nonlocal_uniform().unwrap();
        let mut bundle = Bundle::new();
        let game_ref = add_game_docs(&mut bundle, "swap-pair", &game);
        bundle.insert(
            "identity-strategy",
            DocBody::Strategy(strategy_to_doc(&u.strategy, &game_ref)),
        );
        bundle.insert_expect_fail(
            "nonlocal-uniform",
            DocBody::UniformStrategy(uniform_to_doc(&u, "identity-strategy")),
            "locality",
        );
        let report = check_bundle(&bundle, &limits()).unwrap();
        assert!(report.ok, "{}", report_to_text(&report));
        // Without the tag the bundle fails.
        let mut untagged = bundle.clone();
        untagged
            .documents
            .get_mut("nonlocal-uniform")
            .unwrap()
            .expect_fail = None;
        let report = check_bundle(&untagged, &limits()).unwrap();
        assert!(!report.ok);
    }

    #[test]
    fn unresolved_reference_is_an_input_error() {
        let mut bundle = Bundle::new();
        bundle.insert(
            "orphan",
            DocBody::Game(GameDoc {
                es: "missing".into(),
                n_action: "missing".into(),
                p_action: "missing".into(),
                law: "missing".into(),
            }),
        );
        assert!(matches!(
            check_bundle(&bundle, &limits()),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn corrupted_law_table_fails_with_the_axiom_named() {
        let mut bundle = Bundle::new();
        add_game_docs(&mut bundle, "g", &crate::fixtures::swap_pair_game());
        // Corrupt one law entry: lambda(e, b) should be (b, e).
        let doc = bundle.documents.get_mut("g.law").expect("law doc present");
        if let DocBody::Law(law) = &mut doc.body {
            let entry = law
                .table
                .iter_mut()
                .find(|e| e.n == "e" && e.p == "b")
                .unwrap();
            entry.to_p = "e".into();
        }
        let report = check_bundle(&bundle, &limits()).unwrap();
        assert!(!report.ok);
        let law_doc = report.documents.iter().find(|d| d.name == "g.law").unwrap();
        let failing: Vec<&AxiomResult> = law_doc
            .checks
            .iter()
            .flat_map(|c| c.axioms.iter())
            .filter(|a| a.status == "fail")
            .collect();
        assert!(failing.iter().any(|a| a.axiom == "law.unit-n"));
    }

    #[test]
    fn cyclic_internal_structure_is_a_validation_failure() {
        let mut bundle = Bundle::new();
        bundle.insert(
            "cyclic",
            DocBody::EventStructure(EsDoc {
                events: vec![
                    EventField {
                        id: "a".into(),
                        polarity: Polarity::Negative,
                        label: None,
                    },
                    EventField {
                        id: "b".into(),
                        polarity: Polarity::Positive,
                        label: None,
                    },
                ],
                covers: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
                conflict: vec![],
            }),
        );
        let report = check_bundle(&bundle, &limits()).unwrap();
        assert!(!report.ok);
    }

    #[test]
    fn weak_map_and_witness_docs_round_trip() {
        let game = crate::fixtures::swap_pair_game();
        let s = Strategy::identity(&game);
        let w = WeakMap::identity(&s, &limits()).unwrap();
        let mut bundle = Bundle::new();
        let game_ref = add_game_docs(&mut bundle, "g", &game);
        bundle.insert("s", DocBody::Strategy(strategy_to_doc(&s, &game_ref)));
        bundle.insert(
            "idmap",
            DocBody::WeakMap(weak_map_to_doc(&w, "s", "s")),
        );
        let witness = LiftWitness {
            map: EsMap::identity(&game.es),
            l: game.n_group().elems().collect(),
            m: game.p_group().elems().collect(),
        };
        bundle.insert(
            "idwitness",
            DocBody::LiftWitness(witness_to_doc(&witness, &game, &game, "g", "g", false)),
        );
        let reloaded = Bundle::from_json(&bundle.to_json()).unwrap();
        let report = check_bundle(&reloaded, &limits()).unwrap();
        assert!(report.ok, "{}", report_to_text(&report));
        match resolve_document(&reloaded, "idmap").unwrap() {
            Resolved::WeakMap(w2) => assert_eq!(w2, w),
            _ => panic!("expected a weak map"),
        }
    }
}
