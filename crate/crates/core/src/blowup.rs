//! Combinatorial blowups of simplicial complexes, and nested complexes
//! obtained as sequences of blowups.

use std::collections::HashSet;

use crate::building::{building_violation, AtomSet, AtomicBuildingSet, Hypergraph};
use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::flat::{check_flat, FlatBuildingSet};
use crate::ground::vec_sum;

/// `Bl_f c = {γ : f ⊄ γ} ∪ {γ ∪ {f⁺} : f ⊄ γ, f ∪ γ ∈ c}`, by bases.
pub fn blowup(c: &Complex, f: &Face) -> Result<Complex> {
    if f.is_empty() || !c.has_face(f) {
        return Err(Error::NotAFace(c.render_face(f)));
    }
    if f.len() == 1 {
        return Ok(c.clone());
    }
    let plus = vec_sum(f.iter())?;
    if c.bases().iter().any(|b| b.contains(&plus)) {
        return Err(Error::VertexCollision {
            face: c.render_face(f),
            vertex: c.ground().format_sum(&plus),
        });
    }
    let mut faces = Vec::new();
    for basis in c.bases() {
        if f.is_subset(basis) {
            for a in f {
                faces.push(basis.without(a).with(plus.clone()));
            }
        } else {
            faces.push(basis.clone());
        }
    }
    Ok(Complex::from_maximal(c.ground().clone(), faces))
}

/// Non-singleton members of `b` in removal order: cardinality ascending,
/// then lexicographic. Blowups are applied in the reverse order.
pub fn blowup_order(b: &AtomicBuildingSet, c: &Complex) -> Result<Vec<AtomSet>> {
    if let Some(reason) = building_violation(b.hypergraph(), c)? {
        return Err(Error::InvalidBuildingSet(reason));
    }
    let mut order: Vec<AtomSet> = b.iter().filter(|m| m.len() >= 2).collect();
    order.sort_by(|p, q| p.len().cmp(&q.len()).then(p.cmp(q)));
    Ok(order)
}

/// The nested complex of `(c, b)` as a sequence of blowups in the
/// canonical order.
pub fn sb_via_blowups(c: &Complex, b: &AtomicBuildingSet) -> Result<Complex> {
    let mut order = blowup_order(b, c)?;
    order.reverse();
    sb_via_blowup_sequence(c, b, &order)
}

/// Like [`sb_via_blowups`] with an explicit application order, which must
/// list every non-singleton member of `b` once such that each prefix
/// together with the singletons is a building set.
pub fn sb_via_blowup_sequence(
    c: &Complex,
    b: &AtomicBuildingSet,
    application: &[AtomSet],
) -> Result<Complex> {
    let g = c.ground();
    let mut expected: Vec<AtomSet> = b.iter().filter(|m| m.len() >= 2).collect();
    let mut given = application.to_vec();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(Error::Input(
            "application order must list each non-singleton member once".into(),
        ));
    }
    let mut prefix: Hypergraph = b.iter().filter(|m| m.len() == 1).collect();
    for &beta in application {
        prefix.insert(beta);
        if let Some(reason) = building_violation(&prefix, c)? {
            return Err(Error::InvalidBuildingSet(format!(
                "after adding {}: {reason}",
                beta.format(g)
            )));
        }
    }
    let n = g.len();
    let faces: Vec<Face> = application.iter().map(|m| m.to_face(n)).collect();
    apply_blowups(c, &faces)
}

/// Blows up `c` along the faces in `application` (each a face of the
/// original `c`), at each step at `{γ⁺ : γ ∈ max B'_β}` where `B'` is the
/// singletons plus the faces applied so far.
pub fn apply_blowups(c: &Complex, application: &[Face]) -> Result<Complex> {
    let mut cur = c.clone();
    for (t, beta) in application.iter().enumerate() {
        let below: Vec<&Face> = application[..t]
            .iter()
            .filter(|g| g.is_subset(beta))
            .collect();
        let maximal: Vec<&Face> = below
            .iter()
            .copied()
            .filter(|g| !below.iter().any(|h| h != g && g.is_subset(h)))
            .collect();
        let covered: HashSet<_> = maximal.iter().flat_map(|g| g.iter()).collect();
        let mut vertices = maximal
            .iter()
            .map(|g| vec_sum(g.iter()))
            .collect::<Result<Vec<_>>>()?;
        vertices.extend(beta.iter().filter(|v| !covered.contains(v)).cloned());
        cur = blowup(&cur, &Face::new(vertices))?;
    }
    Ok(cur)
}

/// Faces of `c` whose sums form `d`, in removal order.
pub fn flat_blowup_faces(c: &Complex, d: &FlatBuildingSet) -> Result<Vec<Face>> {
    check_flat(d, c)?;
    let mut faces = Vec::new();
    for v in d.iter() {
        let mut found = None;
        for alpha in c.bases() {
            if let Some(f) = crate::flat::preimage(c.ground(), v, alpha)? {
                found = Some(f);
                break;
            }
        }
        faces.push(found.expect("checked flat building set"));
    }
    faces.sort_by(|p, q| p.len().cmp(&q.len()).then(p.cmp(q)));
    Ok(faces)
}

/// `Et(c, d)` computed as a sequence of blowups.
pub fn et_via_blowups(c: &Complex, d: &FlatBuildingSet) -> Result<Complex> {
    let mut faces = flat_blowup_faces(c, d)?;
    faces.reverse();
    apply_blowups(c, &faces)
}
