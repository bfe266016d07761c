//! Exact check that the coefficient vectors of a complex's vertices span
//! a simplicial fan, and export of that fan.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SumVec};
use crate::linalg::{self, q_from_uint, Q};
use crate::lp::rational_feasible;

/// Two faces with positive weights whose weighted sums coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub left: Vec<(SumVec, Q)>,
    pub right: Vec<(SumVec, Q)>,
}

impl Witness {
    pub fn left_face(&self) -> Face {
        Face::new(self.left.iter().map(|(v, _)| v.clone()))
    }

    pub fn right_face(&self) -> Face {
        Face::new(self.right.iter().map(|(v, _)| v.clone()))
    }

    /// Recomputes both weighted sums and compares them exactly.
    pub fn is_valid(&self) -> bool {
        let positive = |side: &[(SumVec, Q)]| side.iter().all(|(_, k)| k.is_positive());
        if self.left.is_empty() || !positive(&self.left) || !positive(&self.right) {
            return false;
        }
        if self.left_face() == self.right_face() {
            return false;
        }
        weighted_sum(&self.left) == weighted_sum(&self.right)
    }
}

fn weighted_sum(side: &[(SumVec, Q)]) -> Vec<Q> {
    let n = side.first().map_or(0, |(v, _)| v.len());
    let mut acc = vec![Q::zero(); n];
    for (v, k) in side {
        for (a, c) in acc.iter_mut().zip(v.coeffs()) {
            *a += q_from_uint(c) * k.clone();
        }
    }
    acc
}

/// Outcome of [`faithfully_realizes`].
#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessReport {
    pub ground: GroundSet,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl FaithfulnessReport {
    pub fn describe(&self) -> String {
        match &self.witness {
            None => "faithful".to_owned(),
            Some(w) => {
                let side = |s: &[(SumVec, Q)]| {
                    s.iter()
                        .map(|(v, k)| format!("{k}·({})", self.ground.format_sum(v)))
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                format!("{} = {}", side(&w.left), side(&w.right))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let side = |s: &[(SumVec, Q)]| -> Value {
            s.iter()
                .map(|(v, k)| json!({ "vertex": self.ground.sum_to_json(v), "coefficient": k.to_string() }))
                .collect()
        };
        match &self.witness {
            None => json!({ "verdict": self.verdict, "witness": null }),
            Some(w) => json!({
                "verdict": self.verdict,
                "witness": { "left": side(&w.left), "right": side(&w.right) },
            }),
        }
    }
}

/// Decides whether `κ` faithfully realizes `c`: every basis is linearly
/// independent, and no two bases admit a non-negative collision that puts
/// weight outside their common face.
pub fn faithfully_realizes(c: &Complex) -> FaithfulnessReport {
    let ground = c.ground().clone();
    let fail = |w: Witness| FaithfulnessReport {
        ground: ground.clone(),
        verdict: false,
        witness: Some(w),
    };

    let dependent = c.bases().par_iter().find_map_first(|b| {
        let vs: Vec<&SumVec> = b.iter().collect();
        let k = linalg::kernel_vector(&vs)?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (v, coeff) in vs.into_iter().zip(k) {
            if coeff.is_positive() {
                left.push((v.clone(), coeff));
            } else if coeff.is_negative() {
                right.push((v.clone(), -coeff));
            }
        }
        // A kernel vector of nonnegative vectors has both signs.
        Some(Witness { left, right })
    });
    if let Some(w) = dependent {
        return fail(w);
    }

    let bases = c.bases();
    let pairs: Vec<(usize, usize)> = (0..bases.len())
        .flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j)))
        .collect();
    let collision = pairs
        .par_iter()
        .find_map_first(|&(i, j)| cone_collision(&bases[i], &bases[j]));
    match collision {
        Some(w) => fail(w),
        None => FaithfulnessReport {
            ground,
            verdict: true,
            witness: None,
        },
    }
}

/// Looks for `Σ k_a a = Σ l_b b`, `k, l ≥ 0`, with total weight one outside
/// `A ∩ B`.
fn cone_collision(a: &Face, b: &Face) -> Option<Witness> {
    let vars: Vec<(&SumVec, bool)> = a
        .iter()
        .map(|v| (v, true))
        .chain(b.iter().map(|v| (v, false)))
        .collect();
    let n = vars.first()?.0.len();
    let mut rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            vars.iter()
                .map(|(v, left)| {
                    let c = q_from_uint(&v.coeffs()[i]);
                    if *left {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs = vec![Q::zero(); n];
    let norm: Vec<Q> = vars
        .iter()
        .map(|(v, left)| {
            let shared = if *left { b.contains(v) } else { a.contains(v) };
            Q::from_integer(i64::from(!shared).into())
        })
        .collect();
    if norm.iter().all(Zero::is_zero) {
        return None;
    }
    rows.push(norm);
    rhs.push(Q::from_integer(1.into()));
    let x = rational_feasible(&rows, &rhs).expect("dimensions agree")?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for ((v, is_left), k) in vars.into_iter().zip(x) {
        if k.is_positive() {
            if is_left {
                left.push((v.clone(), k));
            } else {
                right.push((v.clone(), k));
            }
        }
    }
    // Shared vertices may carry weight on both sides; cancel it.
    let mut merged_left = Vec::new();
    let mut merged_right: Vec<(SumVec, Q)> = Vec::new();
    for (v, k) in left {
        match right.iter().position(|(w, _)| *w == v) {
            Some(p) => {
                let (_, l) = right.remove(p);
                if k > l {
                    merged_left.push((v, k - l));
                } else if l > k {
                    merged_right.push((v, l - k));
                }
            }
            None => merged_left.push((v, k)),
        }
    }
    merged_right.extend(right);
    merged_right.sort_by(|x, y| x.0.cmp(&y.0));
    Some(Witness {
        left: merged_left,
        right: merged_right,
    })
}

/// Rays and cones of the fan spanned by a faithfully realized complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    pub rays: Vec<Vec<BigUint>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanData {
    pub fn to_json(&self) -> Value {
        let rays: Vec<Value> = self
            .rays
            .iter()
            .map(|r| r.iter().map(crate::json::uint_to_json).collect::<Value>())
            .collect();
        json!({ "rays": rays, "cones": self.cones })
    }

    /// Plain listing: one `ray i: ...` line per ray, then one line per cone.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rays.iter().enumerate() {
            let coords: Vec<String> = r.iter().map(ToString::to_string).collect();
            out.push_str(&format!("ray {i}: {}\n", coords.join(" ")));
        }
        for c in &self.cones {
            let idx: Vec<String> = c.iter().map(ToString::to_string).collect();
            out.push_str(&format!("cone: {}\n", idx.join(" ")));
        }
        out
    }
}

pub fn fan_export(c: &Complex) -> Result<FanData> {
    let report = faithfully_realizes(c);
    if !report.verdict {
        return Err(Error::NotFaithful(Box::new(report)));
    }
    Ok(fan_data(c))
}

pub(crate) fn fan_data(c: &Complex) -> FanData {
    let vertices = c.vertices();
    let rays = vertices.iter().map(|v| v.coeffs().to_vec()).collect();
    let cones = c
        .bases()
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| vertices.binary_search(v).expect("vertex of the complex"))
                .collect()
        })
        .collect();
    FanData { rays, cones }
}
