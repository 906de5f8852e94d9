//! Finite groups as explicit tables, group actions on event structures,
//! polarity classification of automorphisms, and distributive laws
//! `N x P -> P x N` (Zappa-Szep products).
//!
//! Groups are materialized as full multiplication/inverse tables: every
//! axiom is a finite scan. The multiplication convention throughout is
//! `act(mul(g, h)) = act(g) . act(h)` (apply `h` first).

use std::collections::{BTreeMap, HashMap};

use crate::es::{
    bits, enumerate_configurations, extension_kind, Config, ConfigSet, EsMap, EventIdx,
    EventMask, EventStructure,
};
use crate::limits::Limits;
use crate::report::Report;
use crate::{Error, Result};

pub type GElem = usize;

/// A finite group: named elements plus full `mul`/`inv` tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    index: BTreeMap<String, GElem>,
    unit: GElem,
    mul: Vec<Vec<GElem>>,
    inv: Vec<GElem>,
}

impl FiniteGroup {
    pub fn new(
        names: Vec<String>,
        unit: GElem,
        mul: Vec<Vec<GElem>>,
        inv: Vec<GElem>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("a group needs at least a unit".into()));
        }
        if unit >= n || mul.len() != n || inv.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("group table dimensions are off".into()));
        }
        if mul.iter().flatten().any(|&g| g >= n) || inv.iter().any(|&g| g >= n) {
            return Err(Error::Invalid("group table entry out of range".into()));
        }
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate element name `{name}`")));
            }
        }
        Ok(FiniteGroup {
            names,
            index,
            unit,
            mul,
            inv,
        })
    }

    /// The one-element group, unit named `e`.
    pub fn trivial() -> Self {
        FiniteGroup {
            names: vec!["e".to_string()],
            index: BTreeMap::from([("e".to_string(), 0)]),
            unit: 0,
            mul: vec![vec![0]],
            inv: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn unit(&self) -> GElem {
        self.unit
    }

    pub fn mul(&self, g: GElem, h: GElem) -> GElem {
        self.mul[g][h]
    }

    pub fn inv(&self, g: GElem) -> GElem {
        self.inv[g]
    }

    pub fn name(&self, g: GElem) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<GElem> {
        self.index.get(name).copied()
    }

    pub fn elems(&self) -> impl Iterator<Item = GElem> {
        0..self.order()
    }

    /// Table-scan the group axioms.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n = self.order();
        let e = self.unit;
        for g in 0..n {
            if self.mul[e][g] != g || self.mul[g][e] != g {
                report.push("group.unit", format!("unit law fails at `{}`", self.names[g]));
            }
            if self.mul[self.inv[g]][g] != e || self.mul[g][self.inv[g]] != e {
                report.push(
                    "group.inverse",
                    format!("inverse law fails at `{}`", self.names[g]),
                );
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        report.push(
                            "group.associativity",
                            format!(
                                "associativity fails at (`{}`,`{}`,`{}`)",
                                self.names[a], self.names[b], self.names[c]
                            ),
                        );
                        break 'assoc;
                    }
                }
            }
        }
        report
    }

    /// Greedy small generating set, deterministic in element order.
    pub fn generating_set(&self) -> Vec<GElem> {
        let mut gens = Vec::new();
        let mut closed = self.closure_of(&gens);
        for g in 0..self.order() {
            if !closed.contains(&g) {
                gens.push(g);
                closed = self.closure_of(&gens);
            }
        }
        gens
    }

    fn closure_of(&self, gens: &[GElem]) -> Vec<GElem> {
        let mut seen = vec![false; self.order()];
        seen[self.unit] = true;
        let mut queue = vec![self.unit];
        while let Some(g) = queue.pop() {
            for &h in gens {
                let k = self.mul[g][h];
                if !seen[k] {
                    seen[k] = true;
                    queue.push(k);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }
}

/// A direct product group with its pairing bookkeeping.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    pub group: FiniteGroup,
    pairs: Vec<(GElem, GElem)>,
    index: HashMap<(GElem, GElem), GElem>,
}

impl ProductGroup {
    pub fn new(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let mut names = Vec::new();
        let mut pairs = Vec::new();
        let mut index = HashMap::new();
        for ga in 0..a.order() {
            for gb in 0..b.order() {
                index.insert((ga, gb), names.len());
                pairs.push((ga, gb));
                names.push(format!("({},{})", a.name(ga), b.name(gb)));
            }
        }
        let n = names.len();
        let mut mul = vec![vec![0; n]; n];
        let mut inv = vec![0; n];
        for (i, &(xa, xb)) in pairs.iter().enumerate() {
            inv[i] = index[&(a.inv(xa), b.inv(xb))];
            for (j, &(ya, yb)) in pairs.iter().enumerate() {
                mul[i][j] = index[&(a.mul(xa, ya), b.mul(xb, yb))];
            }
        }
        let unit = index[&(a.unit(), b.unit())];
        let group = FiniteGroup::new(names, unit, mul, inv).expect("product tables are well-formed");
        ProductGroup {
            group,
            pairs,
            index,
        }
    }

    pub fn pair_of(&self, g: GElem) -> (GElem, GElem) {
        self.pairs[g]
    }

    pub fn elem_of(&self, a: GElem, b: GElem) -> GElem {
        self.index[&(a, b)]
    }
}

/// A left action of a finite group on an event structure, stored as one
/// event-permutation table per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub target: EventStructure,
    tables: Vec<Vec<EventIdx>>,
}

impl GroupAction {
    pub fn new(
        group: FiniteGroup,
        target: EventStructure,
        tables: Vec<Vec<EventIdx>>,
    ) -> Result<Self> {
        if tables.len() != group.order() {
            return Err(Error::Invalid(format!(
                "action has {} tables for a group of order {}",
                tables.len(),
                group.order()
            )));
        }
        for t in &tables {
            if t.len() != target.n_events() {
                return Err(Error::Invalid("action table length mismatch".into()));
            }
            if t.iter().any(|&e| e >= target.n_events()) {
                return Err(Error::Invalid("action table entry out of range".into()));
            }
        }
        Ok(GroupAction {
            group,
            target,
            tables,
        })
    }

    pub fn trivial(target: EventStructure) -> Self {
        let id = (0..target.n_events()).collect();
        GroupAction {
            group: FiniteGroup::trivial(),
            target,
            tables: vec![id],
        }
    }

    pub fn act_idx(&self, g: GElem, e: EventIdx) -> EventIdx {
        self.tables[g][e]
    }

    pub fn table(&self, g: GElem) -> &[EventIdx] {
        &self.tables[g]
    }

    pub fn act_mask(&self, g: GElem, mask: EventMask) -> EventMask {
        let mut out = 0;
        for i in bits(mask) {
            out |= 1u128 << self.tables[g][i];
        }
        out
    }

    pub fn act_config(&self, g: GElem, x: Config) -> Config {
        Config(self.act_mask(g, x.0))
    }

    pub fn as_map(&self, g: GElem) -> EsMap {
        EsMap::new(self.target.clone(), self.target.clone(), self.tables[g].clone())
            .expect("action tables are in range")
    }

    /// Does `g` fix every event of `mask`?
    pub fn fixes_pointwise(&self, g: GElem, mask: EventMask) -> bool {
        bits(mask).all(|i| self.tables[g][i] == i)
    }

    pub fn is_faithful(&self) -> bool {
        let mut seen: HashMap<&[EventIdx], GElem> = HashMap::new();
        for g in self.group.elems() {
            if seen.insert(&self.tables[g], g).is_some() {
                return false;
            }
        }
        true
    }

    /// The element acting by exactly this event table, if any.
    pub fn find_by_table(&self, table: &[EventIdx]) -> Option<GElem> {
        self.group.elems().find(|&g| self.tables[g] == table)
    }

    /// Action axioms: unit acts as the identity, multiplication matches
    /// composition, every element acts by an automorphism.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        report.merge(self.group.validate());
        let n = self.target.n_events();
        let e = self.group.unit();
        if self.tables[e] != (0..n).collect::<Vec<_>>() {
            report.push("action.unit", "unit element does not act as the identity");
        }
        for g in self.group.elems() {
            for h in self.group.elems() {
                let gh = self.group.mul(g, h);
                let ok = (0..n).all(|x| self.tables[gh][x] == self.tables[g][self.tables[h][x]]);
                if !ok {
                    report.push(
                        "action.homomorphism",
                        format!(
                            "act(mul({},{})) differs from act({}) . act({})",
                            self.group.name(g),
                            self.group.name(h),
                            self.group.name(g),
                            self.group.name(h)
                        ),
                    );
                }
            }
        }
        for g in self.group.elems() {
            if let Some(msg) = automorphism_defect(&self.target, &self.tables[g]) {
                report.push(
                    "action.automorphism",
                    format!("element `{}`: {msg}", self.group.name(g)),
                );
            }
        }
        report
    }
}

/// None when `table` is a polarity-preserving order-and-conflict
/// isomorphism; otherwise a description of the first defect.
pub fn automorphism_defect(es: &EventStructure, table: &[EventIdx]) -> Option<String> {
    let n = es.n_events();
    let mut seen = 0u128;
    for &t in table {
        if seen & (1u128 << t) != 0 {
            return Some("not a bijection".to_string());
        }
        seen |= 1u128 << t;
    }
    for a in 0..n {
        if es.polarity(a) != es.polarity(table[a]) {
            return Some(format!("polarity of `{}` not preserved", es.id(a)));
        }
        for b in 0..n {
            if es.lt(a, b) != es.lt(table[a], table[b]) {
                return Some(format!(
                    "order not preserved on (`{}`,`{}`)",
                    es.id(a),
                    es.id(b)
                ));
            }
            if es.in_conflict(a, b) != es.in_conflict(table[a], table[b]) {
                return Some(format!(
                    "conflict not preserved on (`{}`,`{}`)",
                    es.id(a),
                    es.id(b)
                ));
            }
        }
    }
    None
}

/// Precomputed positive/negative extension lists over a configuration set,
/// shared by the polarity classifiers.
pub struct ExtensionTables {
    pub configs: ConfigSet,
    pub pos: Vec<Vec<usize>>,
    pub neg: Vec<Vec<usize>>,
}

impl ExtensionTables {
    pub fn build(es: &EventStructure, limits: &Limits) -> Result<Self> {
        let configs = enumerate_configurations(es, limits)?;
        let m = configs.len();
        let mut pos = vec![Vec::new(); m];
        let mut neg = vec![Vec::new(); m];
        for (i, x) in configs.iter().enumerate() {
            for (j, y) in configs.iter().enumerate() {
                if i == j {
                    continue;
                }
                let kind = extension_kind(es, x, y);
                if kind.is_positive() {
                    pos[i].push(j);
                }
                if kind.is_negative() {
                    neg[i].push(j);
                }
            }
        }
        Ok(ExtensionTables { configs, pos, neg })
    }
}

fn fixes_config_pointwise(table: &[EventIdx], x: Config) -> bool {
    x.iter().all(|i| table[i] == i)
}

/// Classify an automorphism: negative when fixing a configuration forces
/// fixing all its positive extensions; positive dually. The identity is
/// both. Quantification includes the empty configuration.
pub fn classify_automorphism(
    es: &EventStructure,
    theta: &EsMap,
    limits: &Limits,
) -> Result<(bool, bool)> {
    if theta.source != *es || theta.target != *es {
        return Err(Error::Precondition("map is not an endo-map of E".into()));
    }
    if let Some(msg) = automorphism_defect(es, theta.table()) {
        return Err(Error::Precondition(format!("not an automorphism: {msg}")));
    }
    let ext = ExtensionTables::build(es, limits)?;
    Ok(classify_with_tables(theta.table(), &ext))
}

pub(crate) fn classify_with_tables(table: &[EventIdx], ext: &ExtensionTables) -> (bool, bool) {
    let mut negative = true;
    let mut positive = true;
    for (i, x) in ext.configs.iter().enumerate() {
        if !fixes_config_pointwise(table, x) {
            continue;
        }
        if negative {
            negative = ext.pos[i]
                .iter()
                .all(|&j| fixes_config_pointwise(table, ext.configs.list[j]));
        }
        if positive {
            positive = ext.neg[i]
                .iter()
                .all(|&j| fixes_config_pointwise(table, ext.configs.list[j]));
        }
        if !negative && !positive {
            break;
        }
    }
    (negative, positive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequiredPolarity {
    Negative,
    Positive,
}

/// Check that every element of the action induces an automorphism of the
/// required polarity class.
pub fn validate_action_polarity(
    action: &GroupAction,
    required: RequiredPolarity,
    limits: &Limits,
) -> Report {
    let mut report = Report::new();
    let ext = match ExtensionTables::build(&action.target, limits) {
        Ok(t) => t,
        Err(e) => {
            report.push("action.polarity", format!("cannot enumerate: {e}"));
            return report;
        }
    };
    for g in action.group.elems() {
        let (neg, pos) = classify_with_tables(action.table(g), &ext);
        let ok = match required {
            RequiredPolarity::Negative => neg,
            RequiredPolarity::Positive => pos,
        };
        if !ok {
            let want = match required {
                RequiredPolarity::Negative => "negative",
                RequiredPolarity::Positive => "positive",
            };
            report.push(
                "action.polarity",
                format!(
                    "{} action contains non-{} automorphism `{}`",
                    want,
                    want,
                    action.group.name(g)
                ),
            );
        }
    }
    report
}

/// A distributive law `N x P -> P x N` between the induced monads,
/// stored as a full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributiveLaw {
    pub n_group: FiniteGroup,
    pub p_group: FiniteGroup,
    table: Vec<Vec<(GElem, GElem)>>,
}

impl DistributiveLaw {
    pub fn new(
        n_group: FiniteGroup,
        p_group: FiniteGroup,
        table: Vec<Vec<(GElem, GElem)>>,
    ) -> Result<Self> {
        if table.len() != n_group.order() || table.iter().any(|r| r.len() != p_group.order()) {
            return Err(Error::Invalid("law table dimensions are off".into()));
        }
        if table
            .iter()
            .flatten()
            .any(|&(p, n)| p >= p_group.order() || n >= n_group.order())
        {
            return Err(Error::Invalid("law table entry out of range".into()));
        }
        Ok(DistributiveLaw {
            n_group,
            p_group,
            table,
        })
    }

    /// The direct-product law `(a, b) -> (b, a)`.
    pub fn direct(n_group: FiniteGroup, p_group: FiniteGroup) -> Self {
        let table = (0..n_group.order())
            .map(|n| (0..p_group.order()).map(|p| (p, n)).collect())
            .collect();
        DistributiveLaw {
            n_group,
            p_group,
            table,
        }
    }

    /// `lambda(alpha, beta) = (beta', alpha')`.
    pub fn apply(&self, alpha: GElem, beta: GElem) -> (GElem, GElem) {
        self.table[alpha][beta]
    }

    /// Invert-and-swap `P x N -> N x P`: `(beta, alpha) -> (inv alpha, inv beta)`.
    pub fn isw(&self, beta: GElem, alpha: GElem) -> (GElem, GElem) {
        (self.n_group.inv(alpha), self.p_group.inv(beta))
    }

    pub fn table(&self) -> &[Vec<(GElem, GElem)>] {
        &self.table
    }
}

/// The four combinator axioms: two unit squares, two multiplication laws.
pub fn validate_distributive_law(law: &DistributiveLaw) -> Report {
    let mut report = Report::new();
    report.merge(law.n_group.validate());
    report.merge(law.p_group.validate());
    let ng = &law.n_group;
    let pg = &law.p_group;
    for b in pg.elems() {
        if law.apply(ng.unit(), b) != (b, ng.unit()) {
            report.push(
                "law.unit-n",
                format!("lambda(e, `{}`) != (`{}`, e)", pg.name(b), pg.name(b)),
            );
        }
    }
    for a in ng.elems() {
        if law.apply(a, pg.unit()) != (pg.unit(), a) {
            report.push(
                "law.unit-p",
                format!("lambda(`{}`, e) != (e, `{}`)", ng.name(a), ng.name(a)),
            );
        }
    }
    // lambda(mul(a2, a1), b): push b through a1 first, then a2.
    for a2 in ng.elems() {
        for a1 in ng.elems() {
            for b in pg.elems() {
                let (b1, a1p) = law.apply(a1, b);
                let (b2, a2p) = law.apply(a2, b1);
                let expect = (b2, ng.mul(a2p, a1p));
                if law.apply(ng.mul(a2, a1), b) != expect {
                    report.push(
                        "law.mult-n",
                        format!(
                            "multiplication law fails at lambda(mul(`{}`,`{}`), `{}`)",
                            ng.name(a2),
                            ng.name(a1),
                            pg.name(b)
                        ),
                    );
                }
            }
        }
    }
    // lambda(a, mul(b1, b2)): push a through b1 first, then b2.
    for a in ng.elems() {
        for b1 in pg.elems() {
            for b2 in pg.elems() {
                let (b1p, ap) = law.apply(a, b1);
                let (b2p, app) = law.apply(ap, b2);
                let expect = (pg.mul(b1p, b2p), app);
                if law.apply(a, pg.mul(b1, b2)) != expect {
                    report.push(
                        "law.mult-p",
                        format!(
                            "multiplication law fails at lambda(`{}`, mul(`{}`,`{}`))",
                            ng.name(a),
                            pg.name(b1),
                            pg.name(b2)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Close a set of named automorphisms under composition; the result acts
/// faithfully by construction. Elements are canonically named by the
/// first word reaching them in shortest-then-lexicographic order.
pub fn group_from_generators(
    gens: &[(String, EsMap)],
    es: &EventStructure,
    limits: &Limits,
) -> Result<(FiniteGroup, GroupAction)> {
    for (name, g) in gens {
        if g.source != *es || g.target != *es {
            return Err(Error::Precondition(format!(
                "generator `{name}` is not an endo-map of the structure"
            )));
        }
        if let Some(msg) = automorphism_defect(es, g.table()) {
            return Err(Error::Precondition(format!(
                "generator `{name}` is not an automorphism: {msg}"
            )));
        }
    }
    let mut gens_sorted: Vec<(&String, &EsMap)> = gens.iter().map(|(n, g)| (n, g)).collect();
    gens_sorted.sort_by_key(|(n, _)| (*n).clone());

    let identity: Vec<EventIdx> = (0..es.n_events()).collect();
    let mut tables: Vec<Vec<EventIdx>> = vec![identity.clone()];
    let mut names: Vec<String> = vec!["e".to_string()];
    let mut seen: HashMap<Vec<EventIdx>, GElem> = HashMap::from([(identity, 0)]);
    let mut queue: Vec<GElem> = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let g = queue[head];
        head += 1;
        let g_table = tables[g].clone();
        for (gen_name, gen) in &gens_sorted {
            // Word w.g: apply the generator first.
            let composed: Vec<EventIdx> =
                (0..es.n_events()).map(|e| g_table[gen.apply(e)]).collect();
            if !seen.contains_key(&composed) {
                if tables.len() >= limits.max_group {
                    return Err(Error::GroupBound {
                        bound: limits.max_group,
                    });
                }
                let name = if g == 0 {
                    (*gen_name).clone()
                } else {
                    format!("{}*{}", names[g], gen_name)
                };
                seen.insert(composed.clone(), tables.len());
                queue.push(tables.len());
                tables.push(composed);
                names.push(name);
            }
        }
    }
    let order = tables.len();
    let mut mul = vec![vec![0; order]; order];
    for g in 0..order {
        for h in 0..order {
            let composed: Vec<EventIdx> = (0..es.n_events())
                .map(|e| tables[g][tables[h][e]])
                .collect();
            mul[g][h] = *seen
                .get(&composed)
                .ok_or_else(|| Error::Invalid("closure is not closed".into()))?;
        }
    }
    let mut inv = vec![0; order];
    for g in 0..order {
        inv[g] = (0..order)
            .find(|&h| mul[g][h] == 0 && mul[h][g] == 0)
            .ok_or_else(|| Error::Invalid("closure misses an inverse".into()))?;
    }
    let group = FiniteGroup::new(names, 0, mul, inv)?;
    let action = GroupAction::new(group.clone(), es.clone(), tables)?;
    Ok((group, action))
}

/// Derive the law from `act(alpha) . act(beta) = act(beta') . act(alpha')`,
/// which is unique for faithful actions with trivial intersection.
pub fn derive_law_from_factorization(
    nact: &GroupAction,
    pact: &GroupAction,
) -> Result<DistributiveLaw> {
    if nact.target != pact.target {
        return Err(Error::Precondition(
            "actions are on different structures".into(),
        ));
    }
    if !nact.is_faithful() || !pact.is_faithful() {
        return Err(Error::Precondition("actions must be faithful".into()));
    }
    for a in nact.group.elems() {
        for b in pact.group.elems() {
            if (a != nact.group.unit() || b != pact.group.unit())
                && nact.table(a) == pact.table(b)
            {
                return Err(Error::NontrivialIntersection(format!(
                    "`{}` and `{}` induce the same automorphism",
                    nact.group.name(a),
                    pact.group.name(b)
                )));
            }
        }
    }
    let n_events = nact.target.n_events();
    let mut table = Vec::with_capacity(nact.group.order());
    for a in nact.group.elems() {
        let mut row = Vec::with_capacity(pact.group.order());
        for b in pact.group.elems() {
            let composed: Vec<EventIdx> = (0..n_events)
                .map(|e| nact.act_idx(a, pact.act_idx(b, e)))
                .collect();
            let mut found = Vec::new();
            for bp in pact.group.elems() {
                for ap in nact.group.elems() {
                    let ok = (0..n_events).all(|e| pact.act_idx(bp, nact.act_idx(ap, e)) == composed[e]);
                    if ok {
                        found.push((bp, ap));
                    }
                }
            }
            match found.len() {
                0 => {
                    return Err(Error::NotPermuting(format!(
                        "no factorization of act(`{}`) . act(`{}`)",
                        nact.group.name(a),
                        pact.group.name(b)
                    )))
                }
                1 => row.push(found[0]),
                _ => {
                    return Err(Error::NontrivialIntersection(format!(
                        "factorization of act(`{}`) . act(`{}`) is not unique",
                        nact.group.name(a),
                        pact.group.name(b)
                    )))
                }
            }
        }
        table.push(row);
    }
    DistributiveLaw::new(nact.group.clone(), pact.group.clone(), table)
}
