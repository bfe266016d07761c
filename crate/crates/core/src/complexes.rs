//! Finite abstract simplicial complexes stored by their bases.
//!
//! A complex is the downward closure of a set of pairwise incomparable
//! faces. Only the bases are stored; closures are computed on demand.
//! The vertex type is generic so that the same machinery serves the flat
//! (`SumVec`) complexes and the literal nested-brace complexes of the
//! oracle.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, SumVec};

/// Anything usable as a vertex of a [`Complex`].
pub trait Vertex: Clone + Ord + Hash + Debug + Send + Sync {
    fn render(&self, _ground: &GroundSet) -> String {
        format!("{self:?}")
    }
}

impl Vertex for SumVec {
    fn render(&self, ground: &GroundSet) -> String {
        ground.format_sum(self)
    }
}

/// A finite set of vertices kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face<V = SumVec>(Vec<V>);

impl<V: Ord> Face<V> {
    pub fn new<I: IntoIterator<Item = V>>(items: I) -> Self {
        let mut items: Vec<V> = items.into_iter().collect();
        items.sort();
        items.dedup();
        Face(items)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn elements(&self) -> &[V] {
        &self.0
    }

    pub fn into_elements(self) -> Vec<V> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face<V>) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for a in &self.0 {
            for b in it.by_ref() {
                match a.cmp(b) {
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Less => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face<V>) -> bool {
        self.0.iter().all(|v| !other.contains(v))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, V> {
        self.0.iter()
    }
}

impl<V: Ord + Clone> Face<V> {
    pub fn union(&self, other: &Face<V>) -> Face<V> {
        Face::new(self.0.iter().chain(&other.0).cloned())
    }

    pub fn difference(&self, other: &Face<V>) -> Face<V> {
        Face(
            self.0
                .iter()
                .filter(|v| !other.contains(v))
                .cloned()
                .collect(),
        )
    }

    pub fn with(&self, v: V) -> Face<V> {
        Face::new(self.0.iter().cloned().chain(std::iter::once(v)))
    }

    pub fn without(&self, v: &V) -> Face<V> {
        Face(self.0.iter().filter(|w| *w != v).cloned().collect())
    }

    /// Subfaces selected by the bits of `mask` (bit `i` picks element `i`).
    pub fn select(&self, mask: u64) -> Face<V> {
        Face(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect(),
        )
    }
}

impl<V> IntoIterator for Face<V> {
    type Item = V;
    type IntoIter = std::vec::IntoIter<V>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, V> IntoIterator for &'a Face<V> {
    type Item = &'a V;
    type IntoIter = std::slice::Iter<'a, V>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A simplicial complex given by its bases (maximal faces).
///
/// Bases are pairwise incomparable and kept in canonical order. A complex
/// with no bases is empty; a complex whose only basis is `∅` contains
/// just the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<V = SumVec> {
    ground: GroundSet,
    bases: Vec<Face<V>>,
}

impl Complex<SumVec> {
    /// Builds a complex from arbitrary faces, keeping only the maximal ones.
    pub fn from_bases<I>(ground: &GroundSet, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face<SumVec>>,
    {
        let faces: Vec<Face<SumVec>> = faces.into_iter().collect();
        for face in &faces {
            for v in face {
                ground.check(v)?;
            }
        }
        Ok(Complex::from_maximal(ground.clone(), faces))
    }
}

impl<V: Vertex> Complex<V> {
    /// Like [`Complex::from_bases`] without vertex validation.
    pub fn from_maximal<I>(ground: GroundSet, faces: I) -> Self
    where
        I: IntoIterator<Item = Face<V>>,
    {
        let mut faces: Vec<Face<V>> = faces
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Face<V>> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|k| f.is_subset(k)) {
                kept.push(f);
            }
        }
        kept.sort();
        Complex {
            ground,
            bases: kept,
        }
    }

    pub fn empty(ground: GroundSet) -> Self {
        Complex {
            ground,
            bases: Vec::new(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn bases(&self) -> &[Face<V>] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// The vertex set `⋃C`, sorted.
    pub fn vertices(&self) -> Vec<V> {
        self.bases
            .iter()
            .flat_map(|b| b.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// All faces grouped by cardinality; index `k` holds the `k`-element
    /// faces. The empty face is included for every nonempty complex.
    pub fn all_faces(&self) -> Vec<Vec<Face<V>>> {
        let mut by_size: Vec<BTreeSet<Face<V>>> = Vec::new();
        for basis in &self.bases {
            let n = basis.len();
            assert!(n < 64, "basis too large to enumerate");
            for mask in 0u64..(1u64 << n) {
                let k = mask.count_ones() as usize;
                if by_size.len() <= k {
                    by_size.resize_with(k + 1, BTreeSet::new);
                }
                by_size[k].insert(basis.select(mask));
            }
        }
        by_size
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    /// Number of faces with `k` vertices for `k = 1, 2, ...`; `∅` excluded.
    pub fn f_vector(&self) -> Vec<usize> {
        self.all_faces().iter().skip(1).map(Vec::len).collect()
    }

    pub fn has_face(&self, face: &Face<V>) -> bool {
        face.is_empty() || self.bases.iter().any(|b| face.is_subset(b))
    }

    pub fn render_face(&self, face: &Face<V>) -> String {
        let parts: Vec<String> = face.iter().map(|v| v.render(&self.ground)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// `{g : g ∩ f = ∅, g ∪ f ∈ C}` returned by its maximal members.
    pub fn link(&self, face: &Face<V>) -> Result<Complex<V>> {
        if !self.has_face(face) {
            return Err(Error::NotAFace(self.render_face(face)));
        }
        let faces = self
            .bases
            .iter()
            .filter(|b| face.is_subset(b))
            .map(|b| b.difference(face));
        Ok(Complex::from_maximal(self.ground.clone(), faces))
    }

    /// Number of bases containing each vertex.
    pub fn degrees(&self) -> HashMap<V, usize> {
        let mut deg = HashMap::new();
        for b in &self.bases {
            for v in b {
                *deg.entry(v.clone()).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Applies a vertex map to every basis.
    pub fn map_vertices<W: Vertex, F: FnMut(&V) -> W>(
        &self,
        ground: GroundSet,
        mut f: F,
    ) -> Complex<W> {
        let faces: Vec<Face<W>> = self
            .bases
            .iter()
            .map(|b| Face::new(b.iter().map(&mut f)))
            .collect();
        Complex::from_maximal(ground, faces)
    }
}

/// Searches for a vertex bijection `φ` with `α` a basis of `c` iff `φ[α]`
/// is a basis of `d`. Backtracks over vertices partitioned by their
/// incidence signature; intended for desk-scale complexes.
pub fn is_isomorphic<V: Vertex, W: Vertex>(c: &Complex<V>, d: &Complex<W>) -> Option<Vec<(V, W)>> {
    if c.num_bases() != d.num_bases() {
        return None;
    }
    let cv = c.vertices();
    let dv = d.vertices();
    if cv.len() != dv.len() {
        return None;
    }
    let c_sig = signatures(c, &cv);
    let d_sig = signatures(d, &dv);
    let mut a: Vec<_> = c_sig.clone();
    let mut b: Vec<_> = d_sig.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }

    let c_idx: HashMap<&V, usize> = cv.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let d_idx: HashMap<&W, usize> = dv.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let c_bases: Vec<Vec<usize>> = c
        .bases()
        .iter()
        .map(|f| f.iter().map(|v| c_idx[v]).collect())
        .collect();
    let d_bases: HashSet<Vec<usize>> = d
        .bases()
        .iter()
        .map(|f| {
            let mut idx: Vec<usize> = f.iter().map(|v| d_idx[v]).collect();
            idx.sort_unstable();
            idx
        })
        .collect();

    // Assign the most incident vertices first; each basis is checked once
    // its last vertex is assigned.
    let mut order: Vec<usize> = (0..cv.len()).collect();
    order.sort_by(|&i, &j| c_sig[j].cmp(&c_sig[i]).then(i.cmp(&j)));
    let mut position = vec![0; cv.len()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); cv.len()];
    for (bi, basis) in c_bases.iter().enumerate() {
        if let Some(&last) = basis.iter().max_by_key(|&&v| position[v]) {
            closing[position[last]].push(bi);
        }
    }

    struct Search<'a> {
        order: &'a [usize],
        c_sig: &'a [Signature],
        d_sig: &'a [Signature],
        c_bases: &'a [Vec<usize>],
        d_bases: &'a HashSet<Vec<usize>>,
        closing: &'a [Vec<usize>],
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, p: usize) -> bool {
            if p == self.order.len() {
                return true;
            }
            let v = self.order[p];
            for w in 0..self.d_sig.len() {
                if self.used[w] || self.d_sig[w] != self.c_sig[v] {
                    continue;
                }
                self.map[v] = Some(w);
                self.used[w] = true;
                let ok = self.closing[p].iter().all(|&bi| {
                    let mut image: Vec<usize> = self.c_bases[bi]
                        .iter()
                        .map(|&u| self.map[u].unwrap())
                        .collect();
                    image.sort_unstable();
                    self.d_bases.contains(&image)
                });
                if ok && self.go(p + 1) {
                    return true;
                }
                self.used[w] = false;
                self.map[v] = None;
            }
            false
        }
    }

    let mut search = Search {
        order: &order,
        c_sig: &c_sig,
        d_sig: &d_sig,
        c_bases: &c_bases,
        d_bases: &d_bases,
        closing: &closing,
        map: vec![None; cv.len()],
        used: vec![false; dv.len()],
    };
    if !search.go(0) {
        return None;
    }
    Some(
        cv.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), dv[search.map[i].unwrap()].clone()))
            .collect(),
    )
}

type Signature = (usize, Vec<usize>);

fn signatures<V: Vertex>(c: &Complex<V>, vertices: &[V]) -> Vec<Signature> {
    let mut sizes: HashMap<&V, Vec<usize>> = HashMap::new();
    for b in c.bases() {
        for v in b {
            sizes.entry(v).or_default().push(b.len());
        }
    }
    vertices
        .iter()
        .map(|v| {
            let mut s = sizes.remove(v).unwrap_or_default();
            s.sort_unstable();
            (s.len(), s)
        })
        .collect()
}
