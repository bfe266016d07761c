//! Literal nested-set complexes over genuinely nested brace elements.
//!
//! This is the slow reference implementation: nested sets are found by
//! brute-force antichain checks, never through constructions, and the
//! result is compared against the flat engine by [`Oracle::flatten`].
//! Elements are hash-consed in an arena owned by one [`Oracle`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::complexes::{Complex, Face, Vertex};
use crate::error::{Error, Result};
use crate::flat::FlatBuildingSet;
use crate::ground::{GroundSet, SumVec};

/// Handle of an element in an [`Oracle`] arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(u32);

impl Vertex for ElemId {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Atom(usize),
    Collection { level: usize, members: Vec<ElemId> },
}

/// Size limits of the brute-force search.
#[derive(Clone, Copy, Debug)]
pub struct OracleCaps {
    pub max_atoms: usize,
    pub max_levels: usize,
    pub max_candidates: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_atoms: 5,
            max_levels: 3,
            max_candidates: 10_000,
        }
    }
}

/// A building set of a literal complex: each member is a collection
/// whose elements are vertices of that complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelSpec {
    pub members: BTreeSet<ElemId>,
}

pub struct Oracle {
    ground: GroundSet,
    caps: OracleCaps,
    nodes: Vec<Node>,
    index: HashMap<Node, ElemId>,
}

impl Oracle {
    pub fn new(ground: GroundSet) -> Result<Self> {
        Oracle::with_caps(ground, OracleCaps::default())
    }

    pub fn with_caps(ground: GroundSet, caps: OracleCaps) -> Result<Self> {
        if ground.len() > caps.max_atoms {
            return Err(Error::CapExceeded(format!(
                "literal oracle takes at most {} atoms, got {}",
                caps.max_atoms,
                ground.len()
            )));
        }
        Ok(Oracle {
            ground,
            caps,
            nodes: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn intern(&mut self, node: Node) -> ElemId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = ElemId(u32::try_from(self.nodes.len()).expect("arena overflow"));
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn atom(&mut self, index: usize) -> ElemId {
        assert!(index < self.ground.len(), "atom index out of range");
        self.intern(Node::Atom(index))
    }

    /// The collection of `members`, which must be nonempty and of one level.
    pub fn collection<I: IntoIterator<Item = ElemId>>(&mut self, members: I) -> Result<ElemId> {
        let members: Vec<ElemId> = members
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let Some(&first) = members.first() else {
            return Err(Error::Literal("empty collection".into()));
        };
        let level = self.level(first);
        if members.iter().any(|&m| self.level(m) != level) {
            return Err(Error::Literal("collection mixes levels".into()));
        }
        Ok(self.intern(Node::Collection {
            level: level + 1,
            members,
        }))
    }

    fn lookup_collection(&self, level: usize, members: &[ElemId]) -> Option<ElemId> {
        self.index
            .get(&Node::Collection {
                level: level + 1,
                members: members.to_vec(),
            })
            .copied()
    }

    pub fn level(&self, id: ElemId) -> usize {
        match &self.nodes[id.0 as usize] {
            Node::Atom(_) => 0,
            Node::Collection { level, .. } => *level,
        }
    }

    /// Members of a collection in identity order; empty for atoms.
    pub fn members(&self, id: ElemId) -> &[ElemId] {
        match &self.nodes[id.0 as usize] {
            Node::Atom(_) => &[],
            Node::Collection { members, .. } => members,
        }
    }

    /// Structural order: by level, atoms by index, collections
    /// lexicographically on their structurally sorted members.
    pub fn cmp_structural(&self, a: ElemId, b: ElemId) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match (&self.nodes[a.0 as usize], &self.nodes[b.0 as usize]) {
            (Node::Atom(i), Node::Atom(j)) => i.cmp(j),
            (Node::Atom(_), Node::Collection { .. }) => Ordering::Less,
            (Node::Collection { .. }, Node::Atom(_)) => Ordering::Greater,
            (Node::Collection { level: la, .. }, Node::Collection { level: lb, .. }) => {
                la.cmp(lb).then_with(|| {
                    let ma = self.sorted(self.members(a));
                    let mb = self.sorted(self.members(b));
                    for (x, y) in ma.iter().zip(&mb) {
                        let o = self.cmp_structural(*x, *y);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    ma.len().cmp(&mb.len())
                })
            }
        }
    }

    fn sorted(&self, items: &[ElemId]) -> Vec<ElemId> {
        let mut v = items.to_vec();
        v.sort_by(|x, y| self.cmp_structural(*x, *y));
        v
    }

    /// Brace text such as `{{x},{x,y}}`.
    pub fn render(&self, id: ElemId) -> String {
        match &self.nodes[id.0 as usize] {
            Node::Atom(i) => self.ground.label(*i).to_owned(),
            Node::Collection { members, .. } => self.render_set(members),
        }
    }

    pub fn render_set(&self, items: &[ElemId]) -> String {
        let parts: Vec<String> = self
            .sorted(items)
            .into_iter()
            .map(|m| self.render(m))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Rendered bases, sorted as strings.
    pub fn render_complex(&self, c: &Complex<ElemId>) -> Vec<String> {
        let mut out: Vec<String> = c
            .bases()
            .iter()
            .map(|b| self.render_set(b.elements()))
            .collect();
        out.sort();
        out
    }

    /// Parses brace text back into an element.
    pub fn parse(&mut self, text: &str) -> Result<ElemId> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let id = self.parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Literal(format!("trailing input in `{text}`")));
        }
        Ok(id)
    }

    fn parse_at(&mut self, s: &[char], pos: &mut usize) -> Result<ElemId> {
        if s.get(*pos) == Some(&'{') {
            *pos += 1;
            let mut members = Vec::new();
            loop {
                members.push(self.parse_at(s, pos)?);
                match s.get(*pos) {
                    Some(',') => *pos += 1,
                    Some('}') => {
                        *pos += 1;
                        return self.collection(members);
                    }
                    _ => return Err(Error::Literal(format!("expected `,` or `}}` at {}", *pos))),
                }
            }
        }
        let start = *pos;
        while *pos < s.len() && (s[*pos].is_ascii_alphanumeric() || s[*pos] == '_') {
            *pos += 1;
        }
        if start == *pos {
            return Err(Error::Literal(format!("expected an element at {start}")));
        }
        let label: String = s[start..*pos].iter().collect();
        let i = self.ground.index_of(&label)?;
        Ok(self.atom(i))
    }

    /// `flatten(atom) = unit vector`, `flatten(S) = Σ flatten(s)`.
    pub fn flatten(&self, id: ElemId) -> SumVec {
        match &self.nodes[id.0 as usize] {
            Node::Atom(i) => SumVec::unit(self.ground.len(), *i),
            Node::Collection { members, .. } => {
                let mut acc = self.flatten(members[0]);
                for &m in &members[1..] {
                    acc.add_assign(&self.flatten(m)).expect("same ground set");
                }
                acc
            }
        }
    }

    /// Applies [`Oracle::flatten`] to every vertex.
    pub fn flatten_complex(&self, c: &Complex<ElemId>) -> Complex {
        c.map_vertices(self.ground.clone(), |&v| self.flatten(v))
    }

    /// The host complex with atom vertices.
    pub fn host(&mut self, c: &Complex) -> Result<Complex<ElemId>> {
        let mut faces = Vec::new();
        for b in c.bases() {
            let mut f = Vec::new();
            for v in b {
                let i = v
                    .as_atom()
                    .ok_or_else(|| Error::NonAtomicVertex(self.ground.format_sum(v)))?;
                f.push(self.atom(i));
            }
            faces.push(Face::new(f));
        }
        Ok(Complex::from_maximal(self.ground.clone(), faces))
    }

    /// A level made of the given vertex sets.
    pub fn level_from_faces(&mut self, faces: &[Face<ElemId>]) -> Result<LevelSpec> {
        let mut members = BTreeSet::new();
        for f in faces {
            members.insert(self.collection(f.iter().copied())?);
        }
        Ok(LevelSpec { members })
    }

    /// Level zero from an atomic hypergraph.
    pub fn level_from_atoms(&mut self, b: &crate::building::Hypergraph) -> Result<LevelSpec> {
        let faces: Vec<Face<ElemId>> = b
            .iter()
            .map(|m| Face::new(m.indices().map(|i| self.atom(i))))
            .collect();
        self.level_from_faces(&faces)
    }

    /// The singletons of `c` plus every face whose flattened sum lies in `d`.
    pub fn level_from_flat(
        &mut self,
        c: &Complex<ElemId>,
        d: &FlatBuildingSet,
    ) -> Result<LevelSpec> {
        let mut faces: Vec<Face<ElemId>> =
            c.vertices().into_iter().map(|v| Face::new([v])).collect();
        let mut hit = BTreeSet::new();
        for f in c.all_faces().into_iter().skip(2).flatten() {
            let sum = self.flatten_face(&f);
            if d.contains(&sum) {
                hit.insert(sum);
                faces.push(f);
            }
        }
        if let Some(missing) = d.iter().find(|v| !hit.contains(v)) {
            return Err(Error::Literal(format!(
                "no face flattens to {}",
                self.ground.format_sum(missing)
            )));
        }
        self.level_from_faces(&faces)
    }

    fn flatten_face(&self, f: &Face<ElemId>) -> SumVec {
        let mut it = f.iter();
        let mut acc = self.flatten(*it.next().expect("nonempty face"));
        for &v in it {
            acc.add_assign(&self.flatten(v)).expect("same ground set");
        }
        acc
    }

    /// Checks the literal (B1), (B2) and membership conditions.
    pub fn literal_violation(&self, c: &Complex<ElemId>, b: &LevelSpec) -> Option<String> {
        let vertices: BTreeSet<ElemId> = c.vertices().into_iter().collect();
        let vertex_level = vertices.first().map(|&v| self.level(v));
        for &m in &b.members {
            let inner = self.members(m);
            if inner.is_empty() || Some(self.level(inner[0])) != vertex_level {
                return Some(format!("{} is not a set of vertices", self.render(m)));
            }
            if !c.has_face(&Face::new(inner.iter().copied())) {
                return Some(format!("{} is not a face", self.render(m)));
            }
        }
        for &v in &vertices {
            match self.lookup_collection(self.level(v), &[v]) {
                Some(s) if b.members.contains(&s) => {}
                _ => return Some(format!("singleton {{{}}} is missing", self.render(v))),
            }
        }
        let members: Vec<ElemId> = b.members.iter().copied().collect();
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                let (mp, mq) = (self.members(p), self.members(q));
                if !mp.iter().any(|e| mq.contains(e)) {
                    continue;
                }
                let union: BTreeSet<ElemId> = mp.iter().chain(mq).copied().collect();
                let union: Vec<ElemId> = union.into_iter().collect();
                if !c.has_face(&Face::new(union.iter().copied())) {
                    continue;
                }
                let present = self
                    .lookup_collection(self.level(mp[0]), &union)
                    .is_some_and(|u| b.members.contains(&u));
                if !present {
                    return Some(format!(
                        "{} and {} intersect but their union {} is missing",
                        self.render(p),
                        self.render(q),
                        self.render_set(&union)
                    ));
                }
            }
        }
        None
    }

    /// The complex of maximal nested subsets of `b`, found by exhaustive
    /// search with the antichain definition.
    pub fn literal_nt(&mut self, c: &Complex<ElemId>, b: &LevelSpec) -> Result<Complex<ElemId>> {
        if let Some(reason) = self.literal_violation(c, b) {
            return Err(Error::InvalidBuildingSet(reason));
        }
        if c.is_empty() {
            return Ok(Complex::empty(self.ground.clone()));
        }
        let members: Vec<ElemId> = b.members.iter().copied().collect();
        let sets: Vec<Vec<ElemId>> = members.iter().map(|&m| self.members(m).to_vec()).collect();
        let lookup: HashMap<Vec<ElemId>, usize> = sets
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let search = NestedSearch {
            c,
            sets: &sets,
            lookup: &lookup,
            cap: self.caps.max_candidates,
        };
        let mut found = Vec::new();
        search.extend(&mut Vec::new(), 0, &mut found)?;
        let faces = found
            .into_iter()
            .map(|n| Face::new(n.into_iter().map(|i| members[i])));
        Ok(Complex::from_maximal(self.ground.clone(), faces))
    }

    /// Left fold of [`Oracle::literal_nt`]; errors carry the level index.
    pub fn literal_nt_iter(
        &mut self,
        c: &Complex<ElemId>,
        levels: &[LevelSpec],
    ) -> Result<Complex<ElemId>> {
        if levels.len() > self.caps.max_levels {
            return Err(Error::CapExceeded(format!(
                "literal oracle takes at most {} levels, got {}",
                self.caps.max_levels,
                levels.len()
            )));
        }
        let mut cur = c.clone();
        for (i, b) in levels.iter().enumerate() {
            cur = self.literal_nt(&cur, b).map_err(|e| e.at_level(i))?;
        }
        Ok(cur)
    }

    /// `D₀ = [G₀]⁺ − ⋃C` and `Dᵢ = [Gᵢ]⁺ − [Gᵢ₋₁]⁺`.
    pub fn derive_flat_levels(
        &self,
        c: &Complex<ElemId>,
        levels: &[LevelSpec],
    ) -> Vec<FlatBuildingSet> {
        let mut previous: BTreeSet<SumVec> =
            c.vertices().into_iter().map(|v| self.flatten(v)).collect();
        let mut out = Vec::new();
        for b in levels {
            let current: BTreeSet<SumVec> = b.members.iter().map(|&m| self.flatten(m)).collect();
            out.push(FlatBuildingSet::new(current.difference(&previous).cloned()));
            previous = current;
        }
        out
    }

    /// True when distinct vertices of `c` flatten to distinct sums.
    pub fn flatten_is_injective(&self, c: &Complex<ElemId>) -> bool {
        let vs = c.vertices();
        let sums: BTreeSet<SumVec> = vs.iter().map(|&v| self.flatten(v)).collect();
        sums.len() == vs.len()
    }
}

struct NestedSearch<'a> {
    c: &'a Complex<ElemId>,
    sets: &'a [Vec<ElemId>],
    lookup: &'a HashMap<Vec<ElemId>, usize>,
    cap: usize,
}

impl NestedSearch<'_> {
    /// Visits every nested set once (members in increasing index) and
    /// records those admitting no nested extension.
    fn extend(&self, n: &mut Vec<usize>, start: usize, found: &mut Vec<Vec<usize>>) -> Result<()> {
        let mut maximal = true;
        for m in 0..self.sets.len() {
            if n.contains(&m) || !self.nested_with(n, m)? {
                continue;
            }
            maximal = false;
            if m >= start {
                n.push(m);
                self.extend(n, m + 1, found)?;
                n.pop();
            }
        }
        if maximal {
            found.push(n.clone());
        }
        Ok(())
    }

    /// Assuming `n` is nested, decides whether `n ∪ {m}` is.
    fn nested_with(&self, n: &[usize], m: usize) -> Result<bool> {
        let candidates = 1usize.checked_shl(n.len() as u32 + 1).unwrap_or(usize::MAX);
        if candidates > self.cap {
            return Err(Error::CapExceeded(format!(
                "nestedness scan over {} members needs {candidates} candidate subsets",
                n.len() + 1
            )));
        }
        let mut union: BTreeSet<ElemId> = self.sets[m].iter().copied().collect();
        for &i in n {
            union.extend(self.sets[i].iter().copied());
        }
        if !self.c.has_face(&Face::new(union)) {
            return Ok(false);
        }
        let subset = |a: &[ElemId], b: &[ElemId]| a.iter().all(|e| b.contains(e));
        let comparable = |i: usize, j: usize| {
            subset(&self.sets[i], &self.sets[j]) || subset(&self.sets[j], &self.sets[i])
        };
        let free: Vec<usize> = n.iter().copied().filter(|&i| !comparable(i, m)).collect();
        // Antichains through `m`: `m` plus a nonempty antichain of `free`.
        for mask in 1u64..(1u64 << free.len()) {
            let chosen: Vec<usize> = (0..free.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| free[b])
                .collect();
            let anti = chosen
                .iter()
                .enumerate()
                .all(|(x, &i)| chosen[x + 1..].iter().all(|&j| !comparable(i, j)));
            if !anti {
                continue;
            }
            let mut u: BTreeSet<ElemId> = self.sets[m].iter().copied().collect();
            for &i in &chosen {
                u.extend(self.sets[i].iter().copied());
            }
            let u: Vec<ElemId> = u.into_iter().collect();
            if self.lookup.contains_key(&u) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
