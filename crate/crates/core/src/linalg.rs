//! Exact rational linear algebra on small dense systems.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ground::SumVec;

pub type Q = BigRational;

pub fn q_from_uint(v: &BigUint) -> Q {
    Q::from_integer(BigInt::from(v.clone()))
}

/// Matrix with one column per vector and one row per coordinate.
fn columns_to_rows(columns: &[&SumVec]) -> Vec<Vec<Q>> {
    let n = columns.first().map_or(0, |c| c.len());
    (0..n)
        .map(|i| {
            columns
                .iter()
                .map(|c| q_from_uint(&c.coeffs()[i]))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
fn rref(rows: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = rows[r][j].clone() * f.clone();
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(vectors: &[&SumVec]) -> usize {
    let mut rows = columns_to_rows(vectors);
    rref(&mut rows, vectors.len()).len()
}

pub fn is_independent(vectors: &[&SumVec]) -> bool {
    rank(vectors) == vectors.len()
}

/// A nonzero `c` with `Σ cᵢ vᵢ = 0`, or `None` when independent.
pub fn kernel_vector(vectors: &[&SumVec]) -> Option<Vec<Q>> {
    let k = vectors.len();
    let mut rows = columns_to_rows(vectors);
    let pivots = rref(&mut rows, k);
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut x = vec![Q::zero(); k];
    x[free] = Q::one();
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = -rows[r][free].clone();
    }
    // Sign convention: the first nonzero entry is positive.
    if x.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        x.iter_mut().for_each(|c| *c = -c.clone());
    }
    Some(x)
}

/// Solves `Σ cᵢ vᵢ = target` for independent `vectors`.
///
/// Returns `Ok(None)` when there is no solution and `Err(())` when the
/// vectors are dependent.
#[allow(clippy::result_unit_err)]
pub fn solve_unique(vectors: &[&SumVec], target: &SumVec) -> Result<Option<Vec<Q>>, ()> {
    let k = vectors.len();
    let mut rows = columns_to_rows(vectors);
    if rows.is_empty() {
        rows = (0..target.len()).map(|_| Vec::new()).collect();
    }
    for (row, t) in rows.iter_mut().zip(target.coeffs()) {
        row.push(q_from_uint(t));
    }
    let pivots = rref(&mut rows, k + 1);
    if pivots.iter().filter(|&&p| p < k).count() < k {
        return Err(());
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|r| rows[r][k].clone()).collect()))
}
