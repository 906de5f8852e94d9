//! Shared front-door operations behind the CLI and the C API: run a
//! construction over a loaded bundle, search a strategy document for a
//! uniform structure, and render documents as DOT.

use std::collections::BTreeMap;

use crate::copycat::{
    colift_strategy, copycat_strategy, lift_strategy, uniform_colift, uniform_copycat,
    uniform_lift,
};
use crate::doc::{
    self, add_game_docs, check_bundle, family_to_doc, report_to_text, resolve_document,
    strategy_to_doc, uniform_to_doc, Bundle, DocBody, Resolved,
};
use crate::dot::{es_dot, family_dot, DotView};
use crate::game::{bang_game, dual_game, parallel_game, Game};
use crate::limits::Limits;
use crate::tcg::tcg_from_game;
use crate::uniform::{search_uniform_structure, SearchOutcome};
use crate::{Error, Result};

/// Arguments for [`build_construction`], mirroring the CLI flags.
#[derive(Debug, Clone, Default, serde::Deserialize)]
pub struct BuildParams {
    pub game: Option<String>,
    pub with: Option<String>,
    pub copies: Option<usize>,
    pub witness: Option<String>,
}

fn need<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::Invalid(format!("missing required argument `{flag}`")))
}

fn resolve_game(bundle: &Bundle, name: &str) -> Result<Game> {
    match resolve_document(bundle, name)? {
        Resolved::Game(g) => Ok(g),
        _ => Err(Error::Invalid(format!("`{name}` is not a game document"))),
    }
}

/// Run one of the constructions over documents of `bundle` and return the
/// constructed bundle, which is revalidated before being handed back.
pub fn build_construction(
    bundle: &Bundle,
    construction: &str,
    params: &BuildParams,
    limits: &Limits,
) -> Result<Bundle> {
    let mut output = Bundle::new();
    match construction {
        "dual" => {
            let g = resolve_game(bundle, need(&params.game, "game")?)?;
            add_game_docs(&mut output, "dual", &dual_game(&g));
        }
        "par" => {
            let a = resolve_game(bundle, need(&params.game, "game")?)?;
            let b = resolve_game(bundle, need(&params.with, "with")?)?;
            add_game_docs(&mut output, "par", &parallel_game(&a, &b)?);
        }
        "bang" => {
            let a = resolve_game(bundle, need(&params.game, "game")?)?;
            let n = params
                .copies
                .ok_or_else(|| Error::Invalid("missing required argument `copies`".into()))?;
            add_game_docs(&mut output, "bang", &bang_game(&a, n, limits)?);
        }
        "copycat" => {
            let a = resolve_game(bundle, need(&params.game, "game")?)?;
            let s = copycat_strategy(&a)?;
            let game_ref = add_game_docs(&mut output, "copycat-game", &s.game);
            output.insert("copycat", DocBody::Strategy(strategy_to_doc(&s, &game_ref)));
        }
        "uniform-copycat" => {
            let a = resolve_game(bundle, need(&params.game, "game")?)?;
            let u = uniform_copycat(&a, limits)?;
            let game_ref = add_game_docs(&mut output, "copycat-game", &u.strategy.game);
            output.insert(
                "copycat",
                DocBody::Strategy(strategy_to_doc(&u.strategy, &game_ref)),
            );
            output.insert(
                "uniform-copycat",
                DocBody::UniformStrategy(uniform_to_doc(&u, "copycat")),
            );
        }
        "lift" | "colift" => {
            let name = need(&params.witness, "witness")?;
            let Resolved::LiftWitness {
                witness: w,
                source_game,
                target_game,
                colift,
            } = resolve_document(bundle, name)?
            else {
                return Err(Error::Invalid(format!("`{name}` is not a lift witness")));
            };
            if (construction == "colift") != colift {
                return Err(Error::Invalid(format!(
                    "witness `{name}` has colift={colift}, which does not fit `{construction}`"
                )));
            }
            let (strategy, uniform) = if colift {
                let u = uniform_colift(&w, &source_game, &target_game, limits)?;
                let s = colift_strategy(&w, &source_game, &target_game, limits)?;
                (s, u)
            } else {
                let u = uniform_lift(&w, &source_game, &target_game, limits)?;
                let s = lift_strategy(&w, &source_game, &target_game, limits)?;
                (s, u)
            };
            let game_ref = add_game_docs(&mut output, "lift-game", &strategy.game);
            output.insert(
                "lifted",
                DocBody::Strategy(strategy_to_doc(&strategy, &game_ref)),
            );
            output.insert(
                "lifted-uniform",
                DocBody::UniformStrategy(uniform_to_doc(&uniform, "lifted")),
            );
        }
        "tcg" => {
            let a = resolve_game(bundle, need(&params.game, "game")?)?;
            let tcg = tcg_from_game(&a, limits)?;
            output.insert("tcg.es", DocBody::EventStructure(doc::es_to_doc(&tcg.es)));
            output.insert(
                "tcg.full",
                DocBody::Family(family_to_doc(&tcg.full, "tcg.es")),
            );
            output.insert(
                "tcg.pos",
                DocBody::Family(family_to_doc(&tcg.pos, "tcg.es")),
            );
            output.insert(
                "tcg.neg",
                DocBody::Family(family_to_doc(&tcg.neg, "tcg.es")),
            );
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown construction `{other}` (expected dual, par, bang, copycat, \
                 uniform-copycat, lift, colift, or tcg)"
            )))
        }
    }
    let report = check_bundle(&output, limits)?;
    if !report.ok {
        return Err(Error::Invalid(format!(
            "constructed bundle fails validation (internal error):\n{}",
            report_to_text(&report)
        )));
    }
    Ok(output)
}

/// Find the strategy document to search: an explicit name, or the unique
/// strategy in the bundle.
pub fn pick_strategy_doc(bundle: &Bundle, name: Option<&str>) -> Result<String> {
    if let Some(n) = name {
        return Ok(n.to_string());
    }
    let strategies: Vec<&String> = bundle
        .documents
        .iter()
        .filter(|(_, d)| matches!(d.body, DocBody::Strategy(_)))
        .map(|(n, _)| n)
        .collect();
    match strategies.as_slice() {
        [single] => Ok((*single).clone()),
        [] => Err(Error::Invalid("bundle has no strategy document".into())),
        _ => Err(Error::Invalid(
            "bundle has several strategies; pick one by name".into(),
        )),
    }
}

/// Search a strategy document for a uniform structure; the result is the
/// final output text (a bundle with the structure, or a negative result
/// with an optional exhaustiveness certificate).
pub fn search_strategy_doc(
    bundle: &Bundle,
    name: Option<&str>,
    bound: Option<u64>,
    certificate: bool,
    limits: &Limits,
) -> Result<String> {
    let name = pick_strategy_doc(bundle, name)?;
    let Resolved::Strategy(strategy) = resolve_document(bundle, &name)? else {
        return Err(Error::Invalid(format!(
            "`{name}` is not a strategy document"
        )));
    };
    let mut limits = *limits;
    if let Some(bound) = bound {
        limits.max_search = bound;
    }
    match search_uniform_structure(&strategy, &limits)? {
        SearchOutcome::Found(u) => {
            let mut output = Bundle::new();
            let game_ref = add_game_docs(&mut output, "game", &strategy.game);
            output.insert(
                &name,
                DocBody::Strategy(strategy_to_doc(&strategy, &game_ref)),
            );
            output.insert(
                format!("{name}.uniform"),
                DocBody::UniformStrategy(uniform_to_doc(&u, &name)),
            );
            Ok(output.to_json() + "\n")
        }
        SearchOutcome::Exhausted(cert) => {
            let mut body = BTreeMap::new();
            body.insert(
                "schema_version".to_string(),
                serde_json::json!(doc::SCHEMA_VERSION),
            );
            body.insert("strategy".to_string(), serde_json::json!(name));
            body.insert("result".to_string(), serde_json::json!("none"));
            if certificate {
                body.insert(
                    "certificate".to_string(),
                    serde_json::to_value(&cert).expect("certificate serializes"),
                );
            }
            Ok(serde_json::to_string_pretty(&body).expect("result serializes") + "\n")
        }
    }
}

/// Find the document to render: an explicit name, or the unique
/// renderable one.
pub fn pick_renderable_doc(bundle: &Bundle, name: Option<&str>) -> Result<String> {
    if let Some(n) = name {
        return Ok(n.to_string());
    }
    let renderable: Vec<&String> = bundle
        .documents
        .iter()
        .filter(|(_, d)| {
            matches!(
                d.body,
                DocBody::EventStructure(_)
                    | DocBody::Strategy(_)
                    | DocBody::Game(_)
                    | DocBody::Family(_)
            )
        })
        .map(|(n, _)| n)
        .collect();
    match renderable.as_slice() {
        [single] => Ok((*single).clone()),
        [] => Err(Error::Invalid("nothing renderable in the bundle".into())),
        _ => Err(Error::Invalid(
            "several renderable documents; pick one by name".into(),
        )),
    }
}

/// Render one document of a bundle as deterministic DOT text.
pub fn export_dot_doc(bundle: &Bundle, name: Option<&str>, view: DotView) -> Result<String> {
    let name = pick_renderable_doc(bundle, name)?;
    match (resolve_document(bundle, &name)?, view) {
        (Resolved::Family(f), DotView::Family) => Ok(family_dot(&f)),
        (Resolved::Family(f), v) => Ok(es_dot(&f.structure, v)),
        (Resolved::EventStructure(es), v) => Ok(es_dot(&es, v)),
        (Resolved::Game(g), v) => Ok(es_dot(&g.es, v)),
        (Resolved::Strategy(s), v) => Ok(es_dot(&s.internal, v)),
        (_, DotView::Family) => Err(Error::Invalid(format!(
            "`{name}` carries no family to render"
        ))),
        _ => Err(Error::Invalid(format!("`{name}` is not renderable"))),
    }
}
