//! JSON encodings of complexes, hypergraphs and flat building sets.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::building::{AtomSet, Hypergraph};
use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::flat::FlatBuildingSet;
use crate::ground::GroundSet;

/// A number when it fits `u64`, else a decimal string.
pub fn uint_to_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(n) => Value::from(n),
        None => Value::String(v.to_string()),
    }
}

pub fn face_to_json(g: &GroundSet, f: &Face) -> Value {
    f.iter().map(|v| g.sum_to_json(v)).collect()
}

/// `{"atoms": [...], "bases": [[sum, ...], ...]}`.
pub fn complex_to_json(c: &Complex) -> Value {
    let g = c.ground();
    json!({
        "atoms": g.atoms(),
        "bases": c.bases().iter().map(|b| face_to_json(g, b)).collect::<Vec<_>>(),
    })
}

pub fn atoms_from_json(v: &Value) -> Result<GroundSet> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Input("`atoms` must be an array of labels".into()))?;
    let labels = arr
        .iter()
        .map(|a| {
            a.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Input(format!("bad atom label {a}")))
        })
        .collect::<Result<Vec<_>>>()?;
    GroundSet::new(labels)
}

pub fn bases_from_json(g: &GroundSet, v: &Value) -> Result<Complex> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Input("`bases` must be an array".into()))?;
    let mut faces = Vec::with_capacity(arr.len());
    for b in arr {
        let items = b
            .as_array()
            .ok_or_else(|| Error::Input(format!("basis {b} is not an array")))?;
        faces.push(Face::new(
            items
                .iter()
                .map(|s| g.sum_from_json(s))
                .collect::<Result<Vec<_>>>()?,
        ));
    }
    Complex::from_bases(g, faces)
}

pub fn complex_from_json(v: &Value) -> Result<Complex> {
    let g = atoms_from_json(
        v.get("atoms")
            .ok_or_else(|| Error::Input("missing `atoms`".into()))?,
    )?;
    bases_from_json(
        &g,
        v.get("bases")
            .ok_or_else(|| Error::Input("missing `bases`".into()))?,
    )
}

pub fn atom_set_to_json(g: &GroundSet, s: AtomSet) -> Value {
    s.labels(g).into()
}

pub fn atom_set_from_json(g: &GroundSet, v: &Value) -> Result<AtomSet> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Input(format!("{v} is not an array of labels")))?;
    let mut s = AtomSet::EMPTY;
    for a in arr {
        let label = a
            .as_str()
            .ok_or_else(|| Error::Input(format!("bad atom label {a}")))?;
        let i = g.index_of(label)?;
        if i >= 64 {
            return Err(Error::CapExceeded(
                "atom sets are limited to 64 atoms".into(),
            ));
        }
        s = s.union(AtomSet::singleton(i));
    }
    if s.is_empty() {
        return Err(Error::Input("empty member".into()));
    }
    Ok(s)
}

/// Accepts a bare array or `{"members": [...]}`.
fn members_of(v: &Value) -> Result<&Vec<Value>> {
    let inner = v.get("members").unwrap_or(v);
    inner
        .as_array()
        .ok_or_else(|| Error::Input("expected an array of members".into()))
}

pub fn hypergraph_to_json(g: &GroundSet, h: &Hypergraph) -> Value {
    json!({ "members": h.iter().map(|s| atom_set_to_json(g, s)).collect::<Vec<_>>() })
}

pub fn hypergraph_from_json(g: &GroundSet, v: &Value) -> Result<Hypergraph> {
    members_of(v)?
        .iter()
        .map(|m| atom_set_from_json(g, m))
        .collect()
}

pub fn flat_to_json(g: &GroundSet, d: &FlatBuildingSet) -> Value {
    json!({ "members": d.iter().map(|v| g.sum_to_json(v)).collect::<Vec<_>>() })
}

pub fn flat_from_json(g: &GroundSet, v: &Value) -> Result<FlatBuildingSet> {
    Ok(FlatBuildingSet::new(
        members_of(v)?
            .iter()
            .map(|m| g.sum_from_json(m))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
