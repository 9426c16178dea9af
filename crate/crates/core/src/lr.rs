//! Littlewood-Richardson coefficients `c^λ_{μν}`.
//!
//! [`lr_coefficient`] counts semistandard fillings of `λ/μ` with content `ν`
//! whose reverse reading word is a ballot sequence. The other routes go
//! through Kronecker coefficients, using
//! `c^λ_{μν} = g((n-|λ|, λ), (n-|μ|, μ), (n-|ν|, ν))` for large `n`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kron::{compute, Method};
use crate::partitions::Partition;

/// `outer / inner` with `inner ⊆ outer`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidInput(format!(
                "({inner}) is not contained in ({outer})"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells `(row, column)` in row-major order, zero-based.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.length())
            .flat_map(|r| (self.inner.part(r)..self.outer.part(r)).map(move |c| (r, c)))
            .collect()
    }

    /// No two cells in the same column.
    pub fn is_horizontal_strip(&self) -> bool {
        (1..self.outer.length()).all(|r| self.outer.part(r) <= self.inner.part(r - 1))
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.outer, self.inner)
    }
}

/// `c^λ_{μν}` by direct enumeration; 0 unless `μ ⊆ λ` and sizes add up.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return BigUint::zero();
    }
    let shape = SkewShape::new(lambda.clone(), mu.clone()).expect("containment checked");
    // Fill in reverse reading order: rows top to bottom, each right to left.
    let mut order = shape.cells();
    order.sort_by_key(|&(r, c)| (r, std::cmp::Reverse(c)));
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&len| vec![0; len]).collect();
    let mut counts = vec![0usize; nu.length()];
    let mut total = 0u64;
    fill_lr(&order, 0, mu, nu, &mut grid, &mut counts, &mut total);
    BigUint::from(total)
}

fn fill_lr(
    order: &[(usize, usize)],
    idx: usize,
    mu: &Partition,
    nu: &Partition,
    grid: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    total: &mut u64,
) {
    let Some(&(r, c)) = order.get(idx) else {
        *total += 1;
        return;
    };
    let right = grid[r].get(c + 1).copied().unwrap_or(usize::MAX);
    let above = if r > 0 && c >= mu.part(r - 1) {
        grid[r - 1][c]
    } else {
        0
    };
    for v in (above + 1)..=right.min(nu.length()) {
        if counts[v - 1] == nu.part(v - 1) || (v > 1 && counts[v - 1] == counts[v - 2]) {
            continue;
        }
        counts[v - 1] += 1;
        grid[r][c] = v;
        fill_lr(order, idx + 1, mu, nu, grid, counts, total);
        grid[r][c] = 0;
        counts[v - 1] -= 1;
    }
}

/// Every partition obtained from `π` by adding `strip` cells, no two in the
/// same column, in decreasing lexicographic order.
pub fn pieri_expand(strip: usize, pi: &Partition) -> Vec<Partition> {
    let rows = pi.length() + 1;
    let mut out = Vec::new();
    let mut parts = vec![0usize; rows];
    fn rec(
        i: usize,
        left: usize,
        pi: &Partition,
        parts: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == parts.len() {
            if left == 0 {
                out.push(Partition::new(parts.clone()).expect("strip keeps parts decreasing"));
            }
            return;
        }
        let room = if i == 0 {
            left
        } else {
            (pi.part(i - 1) - pi.part(i)).min(left)
        };
        for add in (0..=room).rev() {
            parts[i] = pi.part(i) + add;
            rec(i + 1, left - add, pi, parts, out);
        }
    }
    rec(0, strip, pi, &mut parts, &mut out);
    out
}

/// The smallest `n` at which the embedding is known to give `c^λ_{μν}`.
pub fn embedding_size(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    lambda.part(0).max(mu.part(0)) + nu.size() + lambda.size()
}

/// `g((n-|λ|, λ), (n-|μ|, μ), (n-|ν|, ν))` through the character oracle.
pub fn murnaghan_embedding(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
) -> Result<BigUint> {
    murnaghan_embedding_with(lambda, mu, nu, n, Method::Oracle)
}

pub fn murnaghan_embedding_with(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
    method: Method,
) -> Result<BigUint> {
    if lambda.size() != mu.size() + nu.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ| = {} but |μ| + |ν| = {}",
            lambda.size(),
            mu.size() + nu.size()
        )));
    }
    let pad = |p: &Partition| {
        p.with_first_row(n).ok_or_else(|| {
            Error::InvalidInput(format!("n = {n} is too small to prepend a row to ({p})"))
        })
    };
    compute(&pad(lambda)?, &pad(mu)?, &pad(nu)?, method)
}

/// `c^λ_{μν}` through the Kronecker reduction pipeline, after the early
/// zero test `|λ_i - μ_i| > |ν|`.
pub fn lr_via_reduction(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    if lambda.size() != mu.size() + nu.size() {
        return Ok(BigUint::zero());
    }
    let rows = lambda.length().max(mu.length());
    if (0..rows).any(|i| lambda.part(i).abs_diff(mu.part(i)) > nu.size()) {
        return Ok(BigUint::zero());
    }
    let n = embedding_size(lambda, mu, nu);
    let value = murnaghan_embedding_with(lambda, mu, nu, n, Method::Auto)?;
    debug_assert_eq!(
        murnaghan_embedding_with(lambda, mu, nu, n + 1, Method::Auto)?,
        value,
        "embedding not yet stable at n = {n}"
    );
    Ok(value)
}
