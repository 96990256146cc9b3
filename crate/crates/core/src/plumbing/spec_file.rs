//! JSON plumbing specifications.
//!
//! ```json
//! {"q1": <triangulation or path>, "q2": <triangulation or path>,
//!  "delta1": ["a","b"], "delta2": ["x","y"]}
//! ```
//! or, for a clean intersection,
//! ```json
//! {"q1": …, "q2": …,
//!  "components": [{"n1": [[…],…], "n2": [[…],…], "shift": 0}, …]}
//! ```
//! Triangulations are `{"vertices": [...], "simplices": [[...], ...]}`
//! objects, or strings naming such files relative to the spec file.

use super::build::{build_simp, build_simp_clean, CleanPlumbingSpec, ComponentSpec, PlumbingSpec};
use super::category::DGCategory;
use crate::error::{Error, Result};
use crate::simplicial::{id_string, OrderedComplex, TriangulationFile};
use serde_json::Value;
use std::path::Path;
use std::sync::Arc;

/// A parsed plumbing specification of either kind.
#[derive(Clone, Debug)]
pub enum PlumbingInput {
    /// Transverse plumbing along one simplex.
    Transverse(PlumbingSpec),
    /// Clean plumbing along components.
    Clean(CleanPlumbingSpec),
}

impl PlumbingInput {
    /// Build the corresponding DG category.
    pub fn build(&self) -> Result<DGCategory> {
        match self {
            PlumbingInput::Transverse(s) => build_simp(s),
            PlumbingInput::Clean(s) => build_simp_clean(s),
        }
    }

    /// Common dimension of the two triangulations.
    pub fn dimension(&self) -> usize {
        match self {
            PlumbingInput::Transverse(s) => s.n,
            PlumbingInput::Clean(s) => s.q1.dim().unwrap_or(0),
        }
    }

    /// Parse a spec; `base` resolves relative triangulation paths.
    pub fn from_json(v: &Value, base: Option<&Path>) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("plumbing spec must be a JSON object".into()))?;
        let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing field \"{k}\"")));
        let q1 = Arc::new(load_triangulation(field("q1")?, base)?);
        let q2 = Arc::new(load_triangulation(field("q2")?, base)?);
        if let Some(comps) = obj.get("components") {
            let list = comps
                .as_array()
                .ok_or_else(|| Error::Parse("\"components\" must be a list".into()))?;
            let components = list.iter().map(parse_component).collect::<Result<Vec<_>>>()?;
            return Ok(PlumbingInput::Clean(CleanPlumbingSpec { q1, q2, components }));
        }
        let d1 = q1.find_by_ids(&id_list(field("delta1")?)?)?;
        let d2 = q2.find_by_ids(&id_list(field("delta2")?)?)?;
        Ok(PlumbingInput::Transverse(PlumbingSpec::new(q1, q2, d1, d2)?))
    }
}

fn id_list(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of vertex ids, got {v}")))?
        .iter()
        .map(id_string)
        .collect()
}

fn parse_component(v: &Value) -> Result<ComponentSpec> {
    let simplices = |k: &str| -> Result<Vec<Vec<String>>> {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("component needs a list \"{k}\"")))?
            .iter()
            .map(id_list)
            .collect()
    };
    let shift = match v.get("shift") {
        None => 0,
        Some(s) => s
            .as_i64()
            .ok_or_else(|| Error::Parse("\"shift\" must be an integer".into()))?,
    };
    Ok(ComponentSpec {
        n1: simplices("n1")?,
        n2: simplices("n2")?,
        shift,
    })
}

/// Load a triangulation given inline or as a path.
pub fn load_triangulation(v: &Value, base: Option<&Path>) -> Result<OrderedComplex> {
    match v {
        Value::String(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => p.into(),
            };
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let f: TriangulationFile =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            OrderedComplex::from_file(&f)
        }
        other => {
            let f: TriangulationFile =
                serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            OrderedComplex::from_file(&f)
        }
    }
}
