//! Building sets over atoms: hypergraphs, saturation, constructions,
//! nestedness and the one-step nested complex in flat vertex form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SumVec};

/// A subset of the first 64 atoms of a ground set, as a bitmask.
///
/// Ordered lexicographically on the sorted index sequence, so
/// `{0} < {0,1} < {0,2} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn from_bits(bits: u64) -> Self {
        AtomSet(bits)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < 64, "atom index {i} out of range");
        AtomSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(AtomSet::EMPTY, |s, i| s.union(AtomSet::singleton(i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn minus(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Reads a face whose vertices are all unit vectors.
    pub fn from_face(ground: &GroundSet, face: &Face<SumVec>) -> Result<Self> {
        let mut set = AtomSet::EMPTY;
        for v in face {
            match v.as_atom() {
                Some(i) if i < 64 => set = set.union(AtomSet::singleton(i)),
                _ => return Err(Error::NonAtomicVertex(ground.format_sum(v))),
            }
        }
        Ok(set)
    }

    /// The 0/1 vector of the set, i.e. the sum of its unit vectors.
    pub fn to_sumvec(self, n: usize) -> Result<SumVec> {
        SumVec::from_u64s(
            &(0..n)
                .map(|i| u64::from(self.contains(i)))
                .collect::<Vec<_>>(),
        )
    }

    /// The face of unit vectors `{{a} : a ∈ self}`.
    pub fn to_face(self, n: usize) -> Face<SumVec> {
        Face::new(self.indices().map(|i| SumVec::unit(n, i)))
    }

    pub fn labels(self, ground: &GroundSet) -> Vec<String> {
        self.indices().map(|i| ground.label(i).to_owned()).collect()
    }

    pub fn format(self, ground: &GroundSet) -> String {
        format!("{{{}}}", self.labels(ground).join(","))
    }
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The sequences agree below the lowest differing index `i`; the set
        // holding `i` is smaller unless the other one has run out.
        let i = diff.trailing_zeros();
        let above = u64::MAX.checked_shl(i + 1).unwrap_or(0);
        let (rest, sign) = if self.0 >> i & 1 == 1 {
            (other.0, Ordering::Less)
        } else {
            (self.0, Ordering::Greater)
        };
        if rest & above != 0 {
            sign
        } else {
            sign.reverse()
        }
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// A finite set of nonempty atom subsets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    members: BTreeSet<AtomSet>,
}

impl Hypergraph {
    /// Collects members; `∅` is silently not a member.
    pub fn new<I: IntoIterator<Item = AtomSet>>(members: I) -> Self {
        Hypergraph {
            members: members.into_iter().filter(|m| !m.is_empty()).collect(),
        }
    }

    pub fn members(&self) -> &BTreeSet<AtomSet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: AtomSet) -> bool {
        self.members.contains(&set)
    }

    pub fn insert(&mut self, set: AtomSet) -> bool {
        !set.is_empty() && self.members.insert(set)
    }

    pub fn remove(&mut self, set: AtomSet) -> bool {
        self.members.remove(&set)
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomSet> + '_ {
        self.members.iter().copied()
    }

    /// `⋃H`.
    pub fn vertex_union(&self) -> AtomSet {
        self.iter().fold(AtomSet::EMPTY, AtomSet::union)
    }

    /// True when every vertex of `⋃H` has its singleton in `H`.
    pub fn is_atomic(&self) -> bool {
        self.vertex_union()
            .indices()
            .all(|i| self.contains(AtomSet::singleton(i)))
    }

    pub fn format(&self, ground: &GroundSet) -> String {
        let parts: Vec<String> = self.iter().map(|m| m.format(ground)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FromIterator<AtomSet> for Hypergraph {
    fn from_iter<I: IntoIterator<Item = AtomSet>>(iter: I) -> Self {
        Hypergraph::new(iter)
    }
}

/// A hypergraph known to be a building set of some complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicBuildingSet {
    sets: Hypergraph,
}

impl AtomicBuildingSet {
    pub fn new(sets: Hypergraph, c: &Complex) -> Result<Self> {
        if let Some(reason) = building_violation(&sets, c)? {
            return Err(Error::InvalidBuildingSet(reason));
        }
        Ok(AtomicBuildingSet { sets })
    }

    pub(crate) fn new_unchecked(sets: Hypergraph) -> Self {
        AtomicBuildingSet { sets }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.sets
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.sets
    }

    pub fn contains(&self, set: AtomSet) -> bool {
        self.sets.contains(set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomSet> + '_ {
        self.sets.iter()
    }
}

/// The bases of a complex whose vertices are all atoms.
pub fn atomic_bases(c: &Complex) -> Result<Vec<AtomSet>> {
    c.bases()
        .iter()
        .map(|b| AtomSet::from_face(c.ground(), b))
        .collect()
}

fn is_face(bases: &[AtomSet], set: AtomSet) -> bool {
    bases.iter().any(|&b| set.is_subset(b))
}

/// Least superset closed under unions of intersecting members.
pub fn saturate(h: &Hypergraph) -> Hypergraph {
    let mut members: Vec<AtomSet> = h.iter().collect();
    let mut seen: BTreeSet<AtomSet> = members.iter().copied().collect();
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        for j in 0..i {
            let b = members[j];
            if a.intersects(b) {
                let u = a.union(b);
                if seen.insert(u) {
                    members.push(u);
                }
            }
        }
        i += 1;
    }
    Hypergraph::new(members)
}

/// `H_γ = {β ∈ H : β ⊆ γ}`.
pub fn restrict(h: &Hypergraph, gamma: AtomSet) -> Hypergraph {
    Hypergraph {
        members: h.iter().filter(|m| m.is_subset(gamma)).collect(),
    }
}

/// Splits `h` into connected parts; parts are ordered by their vertex
/// unions.
pub fn finest_partition(h: &Hypergraph) -> Vec<Hypergraph> {
    let mut components: Vec<(AtomSet, Vec<AtomSet>)> = Vec::new();
    for m in h.iter() {
        let mut merged = (m, vec![m]);
        let mut k = 0;
        while k < components.len() {
            if components[k].0.intersects(merged.0) {
                let (vs, ms) = components.swap_remove(k);
                merged.0 = merged.0.union(vs);
                merged.1.extend(ms);
            } else {
                k += 1;
            }
        }
        components.push(merged);
    }
    components.sort_by_key(|c| c.0);
    components
        .into_iter()
        .map(|(_, ms)| Hypergraph::new(ms))
        .collect()
}

/// Checks (B1), (B2) and `B ⊆ C` against every basis of `c`. Returns a
/// description of the first violation found.
pub fn building_violation(b: &Hypergraph, c: &Complex) -> Result<Option<String>> {
    let bases = atomic_bases(c)?;
    let g = c.ground();
    for m in b.iter() {
        if !is_face(&bases, m) {
            return Ok(Some(format!("{} is not a face", m.format(g))));
        }
    }
    for &alpha in &bases {
        for i in alpha.indices() {
            if !b.contains(AtomSet::singleton(i)) {
                return Ok(Some(format!("singleton {{{}}} is missing", g.label(i))));
            }
        }
    }
    let members: Vec<AtomSet> = b.iter().collect();
    for (i, &p) in members.iter().enumerate() {
        for &q in &members[i + 1..] {
            if !p.intersects(q) {
                continue;
            }
            let u = p.union(q);
            if is_face(&bases, u) && !b.contains(u) {
                return Ok(Some(format!(
                    "{} and {} intersect but their union {} is missing",
                    p.format(g),
                    q.format(g),
                    u.format(g)
                )));
            }
        }
    }
    Ok(None)
}

pub fn is_building_set(b: &Hypergraph, c: &Complex) -> Result<bool> {
    Ok(building_violation(b, c)?.is_none())
}

/// All constructions of an atomic hypergraph, each a canonically sorted
/// list of members, in canonical order.
pub fn constructions(h: &Hypergraph) -> Result<Vec<Vec<AtomSet>>> {
    if let Some(i) = h
        .vertex_union()
        .indices()
        .find(|&i| !h.contains(AtomSet::singleton(i)))
    {
        return Err(Error::NotAtomic(format!("#{i}")));
    }
    let mut memo = HashMap::new();
    Ok(construct(h, h.vertex_union(), &mut memo)
        .into_iter()
        .collect())
}

type Constructions = BTreeSet<Vec<AtomSet>>;

fn construct(
    h: &Hypergraph,
    vertices: AtomSet,
    memo: &mut HashMap<AtomSet, Constructions>,
) -> Constructions {
    if let Some(done) = memo.get(&vertices) {
        return done.clone();
    }
    let sub = restrict(h, vertices);
    let mut out = Constructions::new();
    if sub.is_empty() {
        out.insert(Vec::new());
    } else {
        let parts = finest_partition(&sub);
        if parts.len() == 1 {
            for x in vertices.indices() {
                for k in construct(h, vertices.minus(AtomSet::singleton(x)), memo) {
                    let mut k = k;
                    k.push(vertices);
                    k.sort();
                    k.dedup();
                    out.insert(k);
                }
            }
        } else {
            let mut acc: Vec<Vec<AtomSet>> = vec![Vec::new()];
            for part in &parts {
                let choices = construct(h, part.vertex_union(), memo);
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for a in &acc {
                    for k in &choices {
                        let mut joined = a.clone();
                        joined.extend_from_slice(k);
                        next.push(joined);
                    }
                }
                acc = next;
            }
            for mut k in acc {
                k.sort();
                out.insert(k);
            }
        }
    }
    memo.insert(vertices, out.clone());
    out
}

/// Literal nestedness: every antichain of two or more members has its
/// union outside `b`, and `⋃N` is a face of `c`.
pub fn is_nested(n: &[AtomSet], b: &AtomicBuildingSet, c: &Complex) -> Result<bool> {
    if let Some(&m) = n.iter().find(|&&m| !b.contains(m)) {
        return Err(Error::Input(format!(
            "{} is not a member of the building set",
            m.format(c.ground())
        )));
    }
    let n: Vec<AtomSet> = n
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let bases = atomic_bases(c)?;
    let top = n.iter().fold(AtomSet::EMPTY, |a, &m| a.union(m));
    if !is_face(&bases, top) && !(top.is_empty() && !c.is_empty()) {
        return Ok(false);
    }
    Ok(!antichain_hits(
        &n,
        0,
        AtomSet::EMPTY,
        0,
        &mut Vec::new(),
        b,
    ))
}

fn antichain_hits(
    n: &[AtomSet],
    start: usize,
    union: AtomSet,
    size: usize,
    chosen: &mut Vec<AtomSet>,
    b: &AtomicBuildingSet,
) -> bool {
    if size >= 2 && b.contains(union) {
        return true;
    }
    for i in start..n.len() {
        let m = n[i];
        if chosen.iter().any(|&c| c.is_subset(m) || m.is_subset(c)) {
            continue;
        }
        chosen.push(m);
        let hit = antichain_hits(n, i + 1, union.union(m), size + 1, chosen, b);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// The nested complex of `(c, b)` with each nested set `N` written as
/// `{β⁺ : β ∈ N}`.
pub fn nested_complex(c: &Complex, b: &AtomicBuildingSet) -> Result<Complex> {
    if let Some(reason) = building_violation(b.hypergraph(), c)? {
        return Err(Error::InvalidBuildingSet(reason));
    }
    let n = c.ground().len();
    let bases = atomic_bases(c)?;
    let faces: Vec<Vec<Face>> = bases
        .par_iter()
        .map(|&alpha| -> Result<Vec<Face>> {
            constructions(&restrict(b.hypergraph(), alpha))?
                .into_iter()
                .map(|k| {
                    k.into_iter()
                        .map(|m| m.to_sumvec(n))
                        .collect::<Result<Vec<_>>>()
                        .map(Face::new)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(Complex::from_maximal(
        c.ground().clone(),
        faces.into_iter().flatten(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> GroundSet {
        GroundSet::new(["x", "y", "z", "u"]).unwrap()
    }

    fn s(g: &GroundSet, labels: &str) -> AtomSet {
        AtomSet::from_indices(labels.chars().map(|c| g.index_of(&c.to_string()).unwrap()))
    }

    fn h(g: &GroundSet, sets: &[&str]) -> Hypergraph {
        sets.iter().map(|t| s(g, t)).collect()
    }

    fn simplex_boundary(g: &GroundSet) -> Complex {
        let n = g.len();
        let full = AtomSet::from_indices(0..n);
        Complex::from_bases(
            g,
            (0..n).map(|i| full.minus(AtomSet::singleton(i)).to_face(n)),
        )
        .unwrap()
    }

    fn b0(g: &GroundSet) -> Hypergraph {
        h(g, &["x", "y", "z", "u", "xy"])
    }

    #[test]
    fn atom_set_order_is_lexicographic() {
        let a = AtomSet::from_indices([0]);
        let ab = AtomSet::from_indices([0, 1]);
        let ac = AtomSet::from_indices([0, 2]);
        let b = AtomSet::from_indices([1]);
        let mut v = vec![b, ac, a, ab, AtomSet::EMPTY];
        v.sort();
        assert_eq!(v, vec![AtomSet::EMPTY, a, ab, ac, b]);
        let hi = AtomSet::from_indices([63]);
        let lo_hi = AtomSet::from_indices([0, 63]);
        assert!(lo_hi < hi);
        assert!(AtomSet::from_indices([0]) < lo_hi);
    }

    #[test]
    fn saturation() {
        let g = g();
        let path = h(&g, &["x", "y", "z", "xy", "yz"]);
        assert_eq!(saturate(&path), h(&g, &["x", "y", "z", "xy", "yz", "xyz"]));
        let sat = saturate(&path);
        assert_eq!(saturate(&sat), sat);
        let disjoint = h(&g, &["x", "y", "z", "u", "xy", "zu"]);
        assert_eq!(saturate(&disjoint), disjoint);
    }

    #[test]
    fn building_set_checks() {
        let g = g();
        let c = simplex_boundary(&g);
        assert!(is_building_set(&b0(&g), &c).unwrap());
        assert!(is_building_set(&h(&g, &["x", "y", "z", "u"]), &c).unwrap());
        assert!(!is_building_set(&h(&g, &["y", "z", "u", "xy"]), &c).unwrap());
        // the top is not a face
        assert!(!is_building_set(&h(&g, &["x", "y", "z", "u", "xyzu"]), &c).unwrap());
        // {x,y} and {y,z} inside {x,y,z} need their union
        assert!(!is_building_set(&h(&g, &["x", "y", "z", "u", "xy", "yz"]), &c).unwrap());
        assert!(is_building_set(&h(&g, &["x", "y", "z", "u", "xy", "yz", "xyz"]), &c).unwrap());
        // {x,y}∪{y,z,u} is not a face, so nothing is required
        assert!(is_building_set(&h(&g, &["x", "y", "z", "u", "xy", "yzu"]), &c).unwrap());
        assert!(AtomicBuildingSet::new(h(&g, &["x"]), &c).is_err());
    }

    #[test]
    fn restriction() {
        let g = g();
        assert_eq!(
            restrict(&b0(&g), s(&g, "xyz")),
            h(&g, &["x", "y", "z", "xy"])
        );
        assert!(restrict(&b0(&g), AtomSet::EMPTY).is_empty());
        assert_eq!(restrict(&b0(&g), s(&g, "zu")), h(&g, &["z", "u"]));
    }

    #[test]
    fn partitions() {
        let g = g();
        assert_eq!(finest_partition(&h(&g, &["x", "y", "z", "xyz"])).len(), 1);
        let parts = finest_partition(&h(&g, &["x", "y"]));
        assert_eq!(parts, vec![h(&g, &["x"]), h(&g, &["y"])]);
        assert!(finest_partition(&Hypergraph::default()).is_empty());
        let parts = finest_partition(&h(&g, &["x", "z", "u", "xz", "y"]));
        assert_eq!(
            parts
                .iter()
                .map(Hypergraph::vertex_union)
                .collect::<Vec<_>>(),
            vec![s(&g, "xz"), s(&g, "y"), s(&g, "u")]
        );
    }

    #[test]
    fn constructions_of_small_hypergraphs() {
        let g = g();
        let k = constructions(&restrict(&b0(&g), s(&g, "xyz"))).unwrap();
        assert_eq!(
            k,
            vec![
                vec![s(&g, "x"), s(&g, "xy"), s(&g, "z")],
                vec![s(&g, "xy"), s(&g, "y"), s(&g, "z")]
            ]
        );
        let k = constructions(&restrict(&b0(&g), s(&g, "xzu"))).unwrap();
        assert_eq!(k, vec![vec![s(&g, "x"), s(&g, "z"), s(&g, "u")]]);
        let path = h(&g, &["x", "y", "z", "xy", "yz", "xyz"]);
        let k = constructions(&path).unwrap();
        assert_eq!(k.len(), 5);
        assert!(k.iter().all(|c| c.len() == 3 && c.contains(&s(&g, "xyz"))));
        assert_eq!(
            constructions(&Hypergraph::default()).unwrap(),
            vec![Vec::<AtomSet>::new()]
        );
        assert!(matches!(
            constructions(&h(&g, &["xy"])),
            Err(Error::NotAtomic(_))
        ));
    }

    #[test]
    fn nestedness() {
        let g = g();
        let c = simplex_boundary(&g);
        let b = AtomicBuildingSet::new(b0(&g), &c).unwrap();
        assert!(is_nested(&[s(&g, "x"), s(&g, "xy"), s(&g, "z")], &b, &c).unwrap());
        assert!(!is_nested(&[s(&g, "x"), s(&g, "y")], &b, &c).unwrap());
        assert!(is_nested(&[], &b, &c).unwrap());
        // union is the missing top
        assert!(!is_nested(&[s(&g, "x"), s(&g, "y"), s(&g, "z"), s(&g, "u")], &b, &c).unwrap());
        assert!(is_nested(&[s(&g, "xy"), s(&g, "z")], &b, &c).unwrap());
        assert!(is_nested(&[s(&g, "x"), s(&g, "xyz")], &b, &c).is_err());
    }

    #[test]
    fn nested_complex_of_the_tetrahedron_edge() {
        let g = g();
        let c = simplex_boundary(&g);
        let b = AtomicBuildingSet::new(b0(&g), &c).unwrap();
        let nt = nested_complex(&c, &b).unwrap();
        let expected = ["x,x+y,z", "y,x+y,z", "x,x+y,u", "y,x+y,u", "x,z,u", "y,z,u"];
        let expected: Vec<Face> = expected
            .iter()
            .map(|t| Face::new(t.split(',').map(|v| g.parse_sum(v).unwrap())))
            .collect();
        assert_eq!(nt, Complex::from_bases(&g, expected).unwrap());

        let bot = AtomicBuildingSet::new(h(&g, &["x", "y", "z", "u"]), &c).unwrap();
        assert_eq!(nested_complex(&c, &bot).unwrap(), c);
    }

    #[test]
    fn path_on_triangle_boundary_is_a_pentagon() {
        let g = GroundSet::new(["x", "y", "z"]).unwrap();
        let c = simplex_boundary(&g);
        let b = AtomicBuildingSet::new(h(&g, &["x", "y", "z", "xy", "yz"]), &c).unwrap();
        let nt = nested_complex(&c, &b).unwrap();
        assert_eq!(nt.num_bases(), 5);
        assert_eq!(nt.f_vector(), vec![5, 5]);
    }
}
