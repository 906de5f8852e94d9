//! Deterministic DOT rendering: events as nodes labeled with their
//! polarity sign, cover edges as arrows, conflict as dashed undirected
//! edges, and isomorphism-family members as bipartite clusters.

use crate::es::EventStructure;
use crate::tcg::IsomorphismFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotView {
    Causality,
    Conflict,
    Family,
}

impl std::str::FromStr for DotView {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "causality" => Ok(DotView::Causality),
            "conflict" => Ok(DotView::Conflict),
            "family" => Ok(DotView::Family),
            other => Err(format!(
                "unknown view `{other}` (expected causality, conflict, or family)"
            )),
        }
    }
}

fn node_label(es: &EventStructure, i: usize) -> String {
    let decl = &es.events()[i];
    let name = decl.label.as_deref().unwrap_or(&decl.id);
    format!("{} {}", decl.polarity.sign(), name)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Render the causality (cover arrows) or conflict (dashed edges) view.
pub fn es_dot(es: &EventStructure, view: DotView) -> String {
    let mut out = String::from("digraph es {\n  rankdir=LR;\n  node [shape=ellipse];\n");
    for i in 0..es.n_events() {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\"];\n",
            escape(es.id(i)),
            escape(&node_label(es, i))
        ));
    }
    match view {
        DotView::Causality => {
            for (a, b) in es.covers() {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\";\n",
                    escape(es.id(a)),
                    escape(es.id(b))
                ));
            }
        }
        DotView::Conflict | DotView::Family => {
            for a in 0..es.n_events() {
                for b in (a + 1)..es.n_events() {
                    if es.in_conflict(a, b) {
                        out.push_str(&format!(
                            "  \"{}\" -> \"{}\" [style=dashed, dir=none];\n",
                            escape(es.id(a)),
                            escape(es.id(b))
                        ));
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Render a family as one bipartite cluster per member.
pub fn family_dot(f: &IsomorphismFamily) -> String {
    let es = &f.structure;
    let mut out = String::from("digraph family {\n  rankdir=LR;\n  node [shape=ellipse];\n");
    for (k, m) in f.members.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{k} {{\n    label=\"member {k}\";\n"));
        for &(s, t) in m.graph() {
            out.push_str(&format!(
                "    \"m{k}s_{}\" [label=\"{}\"];\n",
                escape(es.id(s)),
                escape(&node_label(es, s))
            ));
            out.push_str(&format!(
                "    \"m{k}t_{}\" [label=\"{}\"];\n",
                escape(es.id(t)),
                escape(&node_label(es, t))
            ));
        }
        for &(s, t) in m.graph() {
            out.push_str(&format!(
                "    \"m{k}s_{}\" -> \"m{k}t_{}\";\n",
                escape(es.id(s)),
                escape(es.id(t))
            ));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::testutil::two_columns;
    use crate::limits::Limits;

    #[test]
    fn empty_structure_renders_an_empty_graph() {
        let dot = es_dot(&EventStructure::empty(), DotView::Causality);
        assert!(dot.starts_with("digraph es {"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn echo_strategy_renders_one_arrow_per_column() {
        let s = crate::fixtures::token_strategy(crate::fixtures::TokenStrategy::Echo, 2).unwrap();
        let dot = es_dot(&s.internal, DotView::Causality);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("- o0"));
        assert!(dot.contains("+ p0"));
    }

    #[test]
    fn output_is_byte_identical_across_runs() {
        let es = two_columns();
        assert_eq!(es_dot(&es, DotView::Causality), es_dot(&es, DotView::Causality));
        let fam = IsomorphismFamily::identities_only(&es, &Limits::default()).unwrap();
        assert_eq!(family_dot(&fam), family_dot(&fam));
    }
}
