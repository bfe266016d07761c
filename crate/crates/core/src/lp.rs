//! Exact feasibility of `A x = b, x ≥ 0` by phase-one simplex over the
//! rationals, with Bland's rule against cycling.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;

/// Returns a feasible point of `{x ≥ 0 : A x = b}` or `None`.
///
/// Normalization constraints such as `Σ xᵢ = 1` are ordinary rows.
pub fn rational_feasible(a: &[Vec<Q>], b: &[Q]) -> Result<Option<Vec<Q>>> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "{} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    let n = a.first().map_or(0, Vec::len);
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::Dimension(format!(
            "row of length {} in a system with {n} variables",
            row.len()
        )));
    }
    let m = a.len();
    let width = n + m;

    // Tableau rows: [original | artificial | rhs], rhs made non-negative.
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|j| {
            if i == j {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }));
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..width).collect();

    // Reduced costs of the phase-one objective: minimize Σ artificials.
    let mut cost = vec![Q::zero(); width + 1];
    for r in &t {
        for j in 0..n {
            cost[j] -= r[j].clone();
        }
        cost[width] -= r[width].clone();
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for (i, r) in t.iter().enumerate() {
            if !r[enter].is_positive() {
                continue;
            }
            let ratio = r[width].clone() / r[enter].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }

    if !cost[width].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width].clone();
        }
    }
    Ok(Some(x))
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], p: usize, enter: usize) {
    let inv = t[p][enter].recip();
    for v in t[p].iter_mut() {
        *v *= inv.clone();
    }
    let pivot_row = t[p].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == p || r[enter].is_zero() {
            continue;
        }
        let f = r[enter].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            *v -= pv.clone() * f.clone();
        }
    }
    if !cost[enter].is_zero() {
        let f = cost[enter].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= pv.clone() * f.clone();
        }
    }
}
