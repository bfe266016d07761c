//! Generators for standard complexes and building sets.

use std::collections::{BTreeSet, VecDeque};

use crate::building::{
    atomic_bases, is_building_set, saturate, AtomSet, AtomicBuildingSet, Hypergraph,
};
use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::flat::FlatBuildingSet;
use crate::ground::{GroundSet, SumVec};

/// Largest ground set accepted by [`all_building_sets`].
pub const ENUMERATION_MAX_ATOMS: usize = 5;

/// `P(X) − {X}` over the atoms of `g`.
pub fn simplex_boundary(g: &GroundSet) -> Result<Complex> {
    if g.is_empty() {
        return Err(Error::Input(
            "simplex boundary needs at least one atom".into(),
        ));
    }
    let n = g.len();
    let full = AtomSet::from_indices(0..n);
    Complex::from_bases(
        g,
        (0..n).map(|i| full.minus(AtomSet::singleton(i)).to_face(n)),
    )
}

/// All singletons of the vertices.
pub fn b_bot(c: &Complex) -> Result<AtomicBuildingSet> {
    let mut h = Hypergraph::default();
    for b in atomic_bases(c)? {
        for i in b.indices() {
            h.insert(AtomSet::singleton(i));
        }
    }
    Ok(AtomicBuildingSet::new_unchecked(h))
}

/// All nonempty faces.
pub fn b_top(c: &Complex) -> Result<AtomicBuildingSet> {
    let mut h = Hypergraph::default();
    for b in atomic_bases(c)? {
        let idx: Vec<usize> = b.indices().collect();
        for mask in 1u64..(1 << idx.len()) {
            h.insert(AtomSet::from_indices(
                (0..idx.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| idx[k]),
            ));
        }
    }
    Ok(AtomicBuildingSet::new_unchecked(h))
}

/// Saturated closure of the singletons and `edges`, cut down to the faces
/// of `c`. Every edge must itself be a face.
pub fn graph_building_set(c: &Complex, edges: &[(usize, usize)]) -> Result<AtomicBuildingSet> {
    let bases = atomic_bases(c)?;
    let is_face = |s: AtomSet| bases.iter().any(|&b| s.is_subset(b));
    let mut h: Hypergraph = b_bot(c)?.into_hypergraph();
    for &(a, b) in edges {
        let e = AtomSet::from_indices([a, b]);
        if a == b || !is_face(e) {
            return Err(Error::EdgeNotFace(e.format(c.ground())));
        }
        h.insert(e);
    }
    let closed: Hypergraph = saturate(&h).iter().filter(|&s| is_face(s)).collect();
    Ok(AtomicBuildingSet::new_unchecked(closed))
}

pub fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = path_edges(n);
    if n >= 3 {
        e.push((n - 1, 0));
    }
    e
}

/// Labels `x, y, z, u` for up to four atoms, `a1, a2, ...` beyond.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "u"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("a{i}")).collect()
    }
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Facet complex of a named simple polytope: `simplex-n`, `cube-d` or
/// `prism-n`.
pub fn facet_complex_preset(name: &str) -> Result<Complex> {
    if let Some(n) = parse_suffix(name, "simplex-") {
        let g = GroundSet::new(default_labels(n + 1))?;
        return simplex_boundary(&g);
    }
    if let Some(d) = parse_suffix(name, "cube-") {
        if d == 0 || d > 16 {
            return Err(Error::UnknownPreset(name.to_owned()));
        }
        let labels: Vec<String> = (1..=d)
            .flat_map(|i| [format!("a{i}"), format!("b{i}")])
            .collect();
        let g = GroundSet::new(labels)?;
        let faces = (0u64..1 << d).map(|choice| {
            AtomSet::from_indices((0..d).map(|i| 2 * i + (choice >> i & 1) as usize)).to_face(2 * d)
        });
        return Complex::from_bases(&g, faces);
    }
    if let Some(n) = parse_suffix(name, "prism-") {
        if !(3..=60).contains(&n) {
            return Err(Error::UnknownPreset(name.to_owned()));
        }
        let mut labels: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
        labels.push("t".into());
        labels.push("b".into());
        let g = GroundSet::new(labels)?;
        let m = n + 2;
        let faces = (0..n).flat_map(|i| {
            let side = [i, (i + 1) % n];
            [n, n + 1].map(|cap| AtomSet::from_indices(side.into_iter().chain([cap])).to_face(m))
        });
        return Complex::from_bases(&g, faces);
    }
    Err(Error::UnknownPreset(name.to_owned()))
}

/// Level data of the permutohedron-based associahedron over
/// `simplex_boundary(g)`: the full building set, and the sums
/// `b_k + ... + b_l` (`k < l`) of consecutive initial-segment sums
/// `b_j = a_1 + ... + a_j` over all sequences of distinct atoms.
pub fn pa_levels(g: &GroundSet) -> Result<(AtomicBuildingSet, FlatBuildingSet)> {
    if g.len() < 2 {
        return Err(Error::Input("needs at least two atoms".into()));
    }
    let c = simplex_boundary(g)?;
    let top = b_top(&c)?;
    let n = g.len() - 1;
    let mut d = BTreeSet::new();
    let mut seq = Vec::new();
    sequences(g.len(), n, &mut seq, &mut |s: &[usize]| {
        let prefix: Vec<Vec<u64>> = (1..=n)
            .map(|j| {
                (0..g.len())
                    .map(|a| u64::from(s[..j].contains(&a)))
                    .collect()
            })
            .collect();
        for k in 0..n {
            for l in k + 1..n {
                let mut acc = vec![0u64; g.len()];
                for p in &prefix[k..=l] {
                    for (a, v) in acc.iter_mut().zip(p) {
                        *a += v;
                    }
                }
                d.insert(acc);
            }
        }
    });
    let members = d
        .into_iter()
        .map(|v| SumVec::from_u64s(&v))
        .collect::<Result<Vec<_>>>()?;
    Ok((top, FlatBuildingSet::new(members)))
}

fn sequences(n: usize, len: usize, seq: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if seq.len() == len {
        visit(seq);
        return;
    }
    for a in 0..n {
        if !seq.contains(&a) {
            seq.push(a);
            sequences(n, len, seq, visit);
            seq.pop();
        }
    }
}

/// Every building set of `c`, reached from the singletons by adding one
/// face at a time; sorted by size, then by members.
pub fn all_building_sets(c: &Complex) -> Result<Vec<AtomicBuildingSet>> {
    let vertices = atomic_bases(c)?
        .into_iter()
        .fold(AtomSet::EMPTY, AtomSet::union);
    if vertices.len() > ENUMERATION_MAX_ATOMS {
        return Err(Error::CapExceeded(format!(
            "building set enumeration takes at most {ENUMERATION_MAX_ATOMS} atoms, got {}",
            vertices.len()
        )));
    }
    let faces: Vec<AtomSet> = b_top(c)?.iter().filter(|f| f.len() >= 2).collect();
    let start = b_bot(c)?.into_hypergraph();
    let mut seen: BTreeSet<Vec<AtomSet>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.iter().collect());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(b) = queue.pop_front() {
        for &f in &faces {
            if b.contains(f) {
                continue;
            }
            let mut next = b.clone();
            next.insert(f);
            let key: Vec<AtomSet> = next.iter().collect();
            if seen.contains(&key) || !is_building_set(&next, c)? {
                continue;
            }
            seen.insert(key);
            queue.push_back(next);
        }
        out.push(b);
    }
    out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.iter().cmp(q.iter())));
    Ok(out
        .into_iter()
        .map(AtomicBuildingSet::new_unchecked)
        .collect())
}

/// The face of unit vectors named by `labels`.
pub fn face_from_labels(g: &GroundSet, labels: &[&str]) -> Result<Face> {
    Ok(Face::new(
        labels
            .iter()
            .map(|l| g.atom_vec(l))
            .collect::<Result<Vec<_>>>()?,
    ))
}
