//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nestohedra::building::{AtomSet, Hypergraph};
use nestohedra::catalog::default_labels;
use nestohedra::complexes::{Complex, Face, Vertex};
use nestohedra::flat::{is_flat_building_set, FlatBuildingSet};
use nestohedra::ground::{vec_sum, GroundSet, SumVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ground(n: usize) -> GroundSet {
    GroundSet::new(default_labels(n)).unwrap()
}

pub fn atom_face(n: usize, s: AtomSet) -> Face {
    s.to_face(n)
}

/// `P(X)`: the full simplex on all atoms.
pub fn full_simplex(g: &GroundSet) -> Complex {
    let all = AtomSet::from_indices(0..g.len());
    Complex::from_bases(g, [all.to_face(g.len())]).unwrap()
}

/// Random complex whose vertices are atoms and which covers every atom.
pub fn random_atom_complex(rng: &mut ChaCha8Rng, g: &GroundSet) -> Complex {
    let n = g.len();
    let full = (1u64 << n) - 1;
    let mut faces: Vec<Face> = Vec::new();
    let k = rng.gen_range(1..=4);
    for _ in 0..k {
        let bits = rng.gen_range(1..=full);
        faces.push(AtomSet::from_bits(bits).to_face(n));
    }
    for i in 0..n {
        if !faces.iter().any(|f| f.contains(&SumVec::unit(n, i))) {
            faces.push(AtomSet::singleton(i).to_face(n));
        }
    }
    Complex::from_maximal(g.clone(), faces)
}

/// Least family containing `seeds` and all vertex singletons, closed under
/// unions of intersecting members that are faces of `c`.
pub fn close_faces<V: Vertex>(seeds: Vec<Face<V>>, c: &Complex<V>) -> Vec<Face<V>> {
    let mut set: BTreeSet<Face<V>> = seeds
        .into_iter()
        .filter(|f| !f.is_empty() && c.has_face(f))
        .collect();
    for v in c.vertices() {
        set.insert(Face::new([v]));
    }
    loop {
        let items: Vec<Face<V>> = set.iter().cloned().collect();
        let mut added = false;
        for (i, p) in items.iter().enumerate() {
            for q in &items[i + 1..] {
                if p.is_disjoint(q) {
                    continue;
                }
                let u = p.union(q);
                if c.has_face(&u) && set.insert(u) {
                    added = true;
                }
            }
        }
        if !added {
            return set.into_iter().collect();
        }
    }
}

/// Random faces of `c` with at least two vertices.
pub fn random_faces<V: Vertex>(rng: &mut ChaCha8Rng, c: &Complex<V>, max: usize) -> Vec<Face<V>> {
    let candidates: Vec<Face<V>> = c
        .all_faces()
        .into_iter()
        .flatten()
        .filter(|f| f.len() >= 2)
        .collect();
    if candidates.is_empty() {
        return Vec::new();
    }
    let k = rng.gen_range(0..=max.min(candidates.len()));
    candidates.choose_multiple(rng, k).cloned().collect()
}

/// Random atomic building set of an atom complex.
pub fn random_building_set(rng: &mut ChaCha8Rng, c: &Complex) -> Hypergraph {
    let g = c.ground();
    let seeds = random_faces(rng, c, 3);
    close_faces(seeds, c)
        .iter()
        .map(|f| AtomSet::from_face(g, f).unwrap())
        .collect()
}

/// Random flat building set of `c`, built from closed random faces.
pub fn random_flat_level(rng: &mut ChaCha8Rng, c: &Complex) -> FlatBuildingSet {
    for _ in 0..50 {
        let seeds = random_faces(rng, c, 3);
        let closed = close_faces(seeds, c);
        let d = FlatBuildingSet::new(
            closed
                .iter()
                .filter(|f| f.len() >= 2)
                .map(|f| vec_sum(f.iter()).unwrap()),
        );
        if is_flat_building_set(&d, c).unwrap() {
            return d;
        }
    }
    FlatBuildingSet::default()
}

/// Independent building-set test: members are nonempty faces, every vertex
/// singleton is present, and intersecting members with a face union have
/// that union present.
pub fn brute_is_building_set<V: Vertex>(members: &[Face<V>], c: &Complex<V>) -> bool {
    let set: BTreeSet<&Face<V>> = members.iter().collect();
    if members.iter().any(|m| m.is_empty() || !c.has_face(m)) {
        return false;
    }
    if c.vertices()
        .into_iter()
        .any(|v| !set.contains(&Face::new([v])))
    {
        return false;
    }
    members.iter().all(|p| {
        members
            .iter()
            .all(|q| p.is_disjoint(q) || !c.has_face(&p.union(q)) || set.contains(&p.union(q)))
    })
}

/// Every atomic building set of an atom complex, by subset enumeration.
pub fn brute_building_sets(c: &Complex) -> BTreeSet<Hypergraph> {
    let g = c.ground();
    let faces: Vec<Face> = c
        .all_faces()
        .into_iter()
        .flatten()
        .filter(|f| f.len() >= 2)
        .collect();
    let singletons: Vec<Face> = c.vertices().into_iter().map(|v| Face::new([v])).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << faces.len()) {
        let mut members = singletons.clone();
        members.extend(
            (0..faces.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| faces[i].clone()),
        );
        if brute_is_building_set(&members, c) {
            out.insert(
                members
                    .iter()
                    .map(|f| AtomSet::from_face(g, f).unwrap())
                    .collect(),
            );
        }
    }
    out
}

/// Bounded search for two distinct positive combinations over faces with
/// coefficients in `1..=max_coeff` and equal sums. `true` when none exists.
pub fn brute_faithful(c: &Complex, max_coeff: u64) -> bool {
    let mut seen: HashMap<Vec<BigUint>, (Face, Vec<u64>)> = HashMap::new();
    for face in c
        .all_faces()
        .into_iter()
        .flatten()
        .filter(|f| !f.is_empty())
    {
        let k = face.len();
        let mut coeffs = vec![1u64; k];
        loop {
            let mut sum = vec![BigUint::from(0u32); c.ground().len()];
            for (v, &m) in face.iter().zip(&coeffs) {
                for (s, a) in sum.iter_mut().zip(v.coeffs()) {
                    *s += a * m;
                }
            }
            match seen.get(&sum) {
                Some((f, k)) if *f != face || *k != coeffs => return false,
                Some(_) => {}
                None => {
                    seen.insert(sum, (face.clone(), coeffs.clone()));
                }
            }
            let Some(i) = coeffs.iter().position(|&m| m < max_coeff) else {
                break;
            };
            coeffs[i] += 1;
            coeffs[..i].iter_mut().for_each(|m| *m = 1);
        }
    }
    true
}

/// Random complex on random small vectors; often not faithful.
pub fn random_vector_complex(rng: &mut ChaCha8Rng, g: &GroundSet) -> Complex {
    let n = g.len();
    let mut pool: Vec<SumVec> = Vec::new();
    while pool.len() < 6 {
        let c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if let Ok(v) = SumVec::from_u64s(&c) {
            if !pool.contains(&v) {
                pool.push(v);
            }
        }
    }
    let k = rng.gen_range(1..=3);
    let faces: Vec<Face> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            Face::new(pool.choose_multiple(rng, size).cloned())
        })
        .collect();
    Complex::from_maximal(g.clone(), faces)
}

/// A random application order of the non-singleton members of `b` such
/// that the singletons plus every prefix form a building set.
pub fn random_application_order(
    rng: &mut ChaCha8Rng,
    b: &Hypergraph,
    c: &Complex,
) -> Option<Vec<AtomSet>> {
    let g = c.ground();
    let n = g.len();
    let rest: Vec<AtomSet> = b.iter().filter(|m| m.len() >= 2).collect();
    'attempt: for _ in 0..100 {
        let mut prefix: Vec<Face> = b
            .iter()
            .filter(|m| m.len() == 1)
            .map(|m| m.to_face(n))
            .collect();
        let mut order = Vec::new();
        let mut left = rest.clone();
        while !left.is_empty() {
            left.shuffle(rng);
            let pick = left.iter().position(|m| {
                let mut next = prefix.clone();
                next.push(m.to_face(n));
                brute_is_building_set(&next, c)
            });
            match pick {
                Some(i) => {
                    let m = left.remove(i);
                    prefix.push(m.to_face(n));
                    order.push(m);
                }
                None => continue 'attempt,
            }
        }
        return Some(order);
    }
    None
}
