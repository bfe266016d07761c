//! Flat building sets and flat constructions: nested complexes computed
//! directly on formal sums, without nested braces.
//!
//! Inside one basis `α` (linearly independent), every subset `β ⊆ α` is
//! determined by `β⁺`, so the work is done on bitmasks over the positions
//! of `α` and translated back to sums at the end.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::building::AtomicBuildingSet;
use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::fan::faithfully_realizes;
use crate::ground::{vec_sum, GroundSet, SumVec};
use crate::linalg;

/// A set of sums, each meant to be `β⁺` for a face `β` of a host complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlatBuildingSet {
    members: BTreeSet<SumVec>,
}

impl FlatBuildingSet {
    pub fn new<I: IntoIterator<Item = SumVec>>(members: I) -> Self {
        FlatBuildingSet {
            members: members.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &BTreeSet<SumVec> {
        &self.members
    }

    pub fn contains(&self, v: &SumVec) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SumVec> {
        self.members.iter()
    }

    pub fn format(&self, ground: &GroundSet) -> String {
        ground.format_set(self.iter())
    }
}

/// Why a set of sums fails to be a flat building set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatViolation {
    /// No face of the host sums to this member.
    NoPreimage { member: String },
    /// A member equals a vertex of the basis.
    VertexMember { basis: String, member: String },
    /// Two intersecting preimages whose union's sum is missing.
    MissingUnion {
        basis: String,
        gamma: String,
        delta: String,
        union: String,
    },
    /// The basis is linearly dependent.
    DependentBasis { basis: String },
}

impl fmt::Display for FlatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatViolation::NoPreimage { member } => write!(f, "no face sums to {member}"),
            FlatViolation::VertexMember { basis, member } => {
                write!(f, "{member} is a vertex of basis {basis}")
            }
            FlatViolation::MissingUnion {
                basis,
                gamma,
                delta,
                union,
            } => {
                write!(
                    f,
                    "in basis {basis}, {gamma} and {delta} intersect but {union} is missing"
                )
            }
            FlatViolation::DependentBasis { basis } => {
                write!(f, "basis {basis} is linearly dependent")
            }
        }
    }
}

/// The unique nonempty `S ⊆ α` with `S⁺ = d`, if any.
pub fn preimage(ground: &GroundSet, d: &SumVec, alpha: &Face) -> Result<Option<Face>> {
    ground.check(d)?;
    let vs: Vec<&SumVec> = alpha.iter().collect();
    let sol = linalg::solve_unique(&vs, d)
        .map_err(|()| Error::DependentBasis(ground.format_set(alpha.iter())))?;
    let Some(sol) = sol else { return Ok(None) };
    let one = linalg::Q::from_integer(1.into());
    let mut picked = Vec::new();
    for (v, c) in vs.into_iter().zip(sol) {
        if c == one {
            picked.push(v.clone());
        } else if !num_traits::Zero::is_zero(&c) {
            return Ok(None);
        }
    }
    Ok(Some(Face::new(picked)))
}

/// `D_α`: the members of `d` with a preimage inside `α`.
pub fn restrict_flat(
    ground: &GroundSet,
    d: &FlatBuildingSet,
    alpha: &Face,
) -> Result<FlatBuildingSet> {
    let local = LocalBasis::new(ground, alpha)?;
    Ok(FlatBuildingSet::new(
        d.iter().filter(|v| local.mask_of(v).is_some()).cloned(),
    ))
}

/// One independent basis with every subset sum indexed.
struct LocalBasis<'a> {
    alpha: &'a Face,
    sums: HashMap<SumVec, u64>,
}

impl<'a> LocalBasis<'a> {
    fn new(ground: &GroundSet, alpha: &'a Face) -> Result<Self> {
        let vs: Vec<&SumVec> = alpha.iter().collect();
        if !linalg::is_independent(&vs) {
            return Err(Error::DependentBasis(ground.format_set(alpha.iter())));
        }
        assert!(vs.len() < 64, "basis too large");
        // Subset sums of an independent family are pairwise distinct.
        let mut sums = HashMap::new();
        let mut partial: Vec<Option<SumVec>> = vec![None; 1 << vs.len()];
        for mask in 1u64..(1 << vs.len()) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut s = vs[low].clone();
            if let Some(r) = &partial[rest as usize] {
                s.add_assign(r)?;
            }
            sums.insert(s.clone(), mask);
            partial[mask as usize] = Some(s);
        }
        Ok(LocalBasis { alpha, sums })
    }

    fn mask_of(&self, d: &SumVec) -> Option<u64> {
        self.sums.get(d).copied()
    }

    fn sum_of(&self, mask: u64) -> SumVec {
        let picked: Vec<&SumVec> = self
            .alpha
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v)
            .collect();
        vec_sum(picked).expect("nonempty mask")
    }

    fn describe(&self, ground: &GroundSet, mask: u64) -> String {
        ground.format_set(self.alpha.select(mask).iter())
    }
}

/// Checks (D1) and (D2) on `D_α` for every basis `α`, and that every
/// member has a preimage somewhere.
pub fn flat_violation(d: &FlatBuildingSet, c: &Complex) -> Result<Option<FlatViolation>> {
    let ground = c.ground();
    for v in d.iter() {
        ground.check(v)?;
    }
    let mut covered: BTreeSet<&SumVec> = BTreeSet::new();
    for alpha in c.bases() {
        let local = match LocalBasis::new(ground, alpha) {
            Ok(l) => l,
            Err(Error::DependentBasis(basis)) => {
                return Ok(Some(FlatViolation::DependentBasis { basis }))
            }
            Err(e) => return Err(e),
        };
        let mut masks = Vec::new();
        for v in d.iter() {
            if let Some(m) = local.mask_of(v) {
                covered.insert(v);
                if m.count_ones() == 1 {
                    return Ok(Some(FlatViolation::VertexMember {
                        basis: ground.format_set(alpha.iter()),
                        member: ground.format_sum(v),
                    }));
                }
                masks.push(m);
            }
        }
        let present: BTreeSet<u64> = masks.iter().copied().collect();
        for (i, &p) in masks.iter().enumerate() {
            for &q in &masks[i + 1..] {
                if p & q != 0 && !present.contains(&(p | q)) {
                    return Ok(Some(FlatViolation::MissingUnion {
                        basis: ground.format_set(alpha.iter()),
                        gamma: local.describe(ground, p),
                        delta: local.describe(ground, q),
                        union: ground.format_sum(&local.sum_of(p | q)),
                    }));
                }
            }
        }
    }
    if let Some(v) = d.iter().find(|v| !covered.contains(v)) {
        return Ok(Some(FlatViolation::NoPreimage {
            member: ground.format_sum(v),
        }));
    }
    Ok(None)
}

pub fn is_flat_building_set(d: &FlatBuildingSet, c: &Complex) -> Result<bool> {
    Ok(flat_violation(d, c)?.is_none())
}

pub(crate) fn check_flat(d: &FlatBuildingSet, c: &Complex) -> Result<()> {
    match flat_violation(d, c)? {
        None => Ok(()),
        Some(FlatViolation::DependentBasis { basis }) => Err(Error::DependentBasis(basis)),
        Some(v) => Err(Error::InvalidFlatBuildingSet(v)),
    }
}

/// Flat constructions of `D` on the face `α`, in canonical order.
pub fn flat_constructions(
    ground: &GroundSet,
    alpha: &Face,
    d: &FlatBuildingSet,
) -> Result<Vec<Face>> {
    let host = Complex::from_bases(ground, [alpha.clone()])?;
    check_flat(d, &host)?;
    let local = LocalBasis::new(ground, alpha)?;
    Ok(local_constructions(&local, d))
}

fn local_constructions(local: &LocalBasis<'_>, d: &FlatBuildingSet) -> Vec<Face> {
    let masks: Vec<u64> = d.iter().filter_map(|v| local.mask_of(v)).collect();
    let full = (1u64 << local.alpha.len()) - 1;
    let mut memo = HashMap::new();
    let found = mask_constructions(full, &masks, &mut memo);
    let faces: BTreeSet<Face> = found
        .into_iter()
        .map(|k| Face::new(k.into_iter().map(|m| local.sum_of(m))))
        .collect();
    faces.into_iter().collect()
}

type MaskSets = BTreeSet<Vec<u64>>;

fn singletons(mask: u64) -> impl Iterator<Item = u64> {
    (0..64)
        .filter(move |i| mask >> i & 1 == 1)
        .map(|i| 1u64 << i)
}

/// Clauses (0)–(2) on the subset `beta` of the basis positions.
fn mask_constructions(beta: u64, all: &[u64], memo: &mut HashMap<u64, MaskSets>) -> MaskSets {
    if let Some(done) = memo.get(&beta) {
        return done.clone();
    }
    let d_beta: Vec<u64> = all.iter().copied().filter(|&m| m & !beta == 0).collect();
    let mut out = MaskSets::new();
    if d_beta.is_empty() {
        let mut k: Vec<u64> = singletons(beta).collect();
        k.sort_unstable();
        out.insert(k);
    } else if d_beta.contains(&beta) {
        for x in singletons(beta) {
            for mut k in mask_constructions(beta & !x, all, memo) {
                k.push(beta);
                k.sort_unstable();
                out.insert(k);
            }
        }
    } else {
        let candidates: Vec<u64> = d_beta.iter().copied().chain(singletons(beta)).collect();
        let maximal: BTreeSet<u64> = candidates
            .iter()
            .copied()
            .filter(|&m| !candidates.iter().any(|&o| o != m && m & !o == 0))
            .collect();
        let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
        for &m in &maximal {
            let choices = mask_constructions(m, all, memo);
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
            k.sort_unstable();
            out.insert(k);
        }
    }
    memo.insert(beta, out.clone());
    out
}

/// Controls the precondition checks of [`et_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EtOptions {
    /// Run the full pairwise-cone faithfulness check on the host.
    pub check_faithful: bool,
}

/// `Et(c, d)` with the default checks.
pub fn et(c: &Complex, d: &FlatBuildingSet) -> Result<Complex> {
    et_with(c, d, EtOptions::default())
}

/// The complex based on the flat constructions of `D_α` over all bases.
pub fn et_with(c: &Complex, d: &FlatBuildingSet, opts: EtOptions) -> Result<Complex> {
    if opts.check_faithful {
        let report = faithfully_realizes(c);
        if !report.verdict {
            return Err(Error::NotFaithful(Box::new(report)));
        }
    }
    check_flat(d, c)?;
    let ground = c.ground();
    let faces: Vec<Vec<Face>> = c
        .bases()
        .par_iter()
        .map(|alpha| LocalBasis::new(ground, alpha).map(|local| local_constructions(&local, d)))
        .collect::<Result<_>>()?;
    Ok(Complex::from_maximal(
        ground.clone(),
        faces.into_iter().flatten(),
    ))
}

/// Left fold of [`et_with`] over `levels`; errors carry the level index.
pub fn et_iter_with(c: &Complex, levels: &[FlatBuildingSet], opts: EtOptions) -> Result<Complex> {
    let mut cur = c.clone();
    for (i, d) in levels.iter().enumerate() {
        cur = et_with(&cur, d, opts).map_err(|e| e.at_level(i))?;
    }
    Ok(cur)
}

pub fn et_iter(c: &Complex, levels: &[FlatBuildingSet]) -> Result<Complex> {
    et_iter_with(c, levels, EtOptions::default())
}

/// `[B]⁺ − ⋃C` for an atomic building set.
pub fn to_flat(b: &AtomicBuildingSet, c: &Complex) -> Result<FlatBuildingSet> {
    let n = c.ground().len();
    let members = b
        .iter()
        .filter(|m| m.len() >= 2)
        .map(|m| m.to_sumvec(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlatBuildingSet::new(members))
}
