//! Counting three-way contingency arrays: nonnegative integer arrays
//! `x[i][j][k]` whose plane sums are prescribed,
//!
//! ```text
//! Σ_{j,k} x[i][j][k] = a[i],   Σ_{i,k} x[i][j][k] = b[j],   Σ_{i,j} x[i][j][k] = c[k].
//! ```
//!
//! The count `C(a, b, c)` only depends on the multisets of nonzero entries
//! of each vector and is symmetric in the three roles, so every subproblem
//! is reduced to a canonical key before it hits the memo table.
//!
//! The recursion peels one plane `i` at a time. A plane with total `a[i]`
//! contributes a two-way table with row sums `u ≤ b` and column sums
//! `v ≤ c`; the number of such tables is itself a memoized two-way count.
//! The vector that gets sliced is the one whose mass outside its largest
//! entry is smallest, and its largest entry is the last plane, which is
//! forced (a single remaining plane is just a two-way table).

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cache::MemoCache;
use crate::error::{Error, Result};

/// Default number of memoized counts per table (three-way and two-way).
pub const DEFAULT_TABLE_CACHE_CAPACITY: usize = 1 << 22;

/// Largest array total [`count_tables_naive`] accepts.
pub const NAIVE_TOTAL_CAP: usize = 12;

/// Largest side length [`count_tables_naive`] accepts.
pub const NAIVE_LENGTH_CAP: usize = 4;

type Key3 = (Vec<usize>, Vec<usize>, Vec<usize>);
type Key2 = (Vec<usize>, Vec<usize>);

fn cache3() -> &'static MemoCache<Key3, BigUint> {
    static CACHE: OnceLock<MemoCache<Key3, BigUint>> = OnceLock::new();
    CACHE.get_or_init(|| MemoCache::new(DEFAULT_TABLE_CACHE_CAPACITY))
}

fn cache2() -> &'static MemoCache<Key2, BigUint> {
    static CACHE: OnceLock<MemoCache<Key2, BigUint>> = OnceLock::new();
    CACHE.get_or_init(|| MemoCache::new(DEFAULT_TABLE_CACHE_CAPACITY))
}

pub fn set_cache_capacity(capacity: usize) {
    cache3().set_capacity(capacity);
    cache2().set_capacity(capacity);
}

/// Plane sums `(a, b, c)` of a three-way array. Entries may be negative;
/// such marginals simply admit no arrays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Marginals {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl Marginals {
    pub fn new(a: Vec<i64>, b: Vec<i64>, c: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() || a.len() != c.len() {
            return Err(Error::LengthMismatch(format!(
                "marginals must share a length, got {}, {}, {}",
                a.len(),
                b.len(),
                c.len()
            )));
        }
        Ok(Marginals { a, b, c })
    }

    pub fn from_unsigned(a: &[usize], b: &[usize], c: &[usize]) -> Result<Self> {
        let conv = |v: &[usize]| v.iter().map(|&x| x as i64).collect();
        Marginals::new(conv(a), conv(b), conv(c))
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// The common total, if all entries are nonnegative and the three
    /// totals agree.
    pub fn feasible_total(&self) -> Option<usize> {
        if self.a.iter().chain(&self.b).chain(&self.c).any(|&x| x < 0) {
            return None;
        }
        let (sa, sb, sc): (i64, i64, i64) = (
            self.a.iter().sum(),
            self.b.iter().sum(),
            self.c.iter().sum(),
        );
        (sa == sb && sb == sc).then_some(sa as usize)
    }
}

/// Number of three-way contingency arrays with the given plane sums.
/// Returns 0 when an entry is negative or the totals disagree.
pub fn count_tables(m: &Marginals) -> BigUint {
    if m.feasible_total().is_none() {
        return BigUint::zero();
    }
    let unsigned = |v: &[i64]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
    count3(canonical3(unsigned(&m.a), unsigned(&m.b), unsigned(&m.c)))
}

/// Counts three-way arrays with nonnegative plane sums given directly as
/// unsigned vectors of possibly different lengths. The count does not
/// depend on the order of the entries.
pub fn count_tables_unsigned(a: &[usize], b: &[usize], c: &[usize]) -> BigUint {
    let (sa, sb, sc): (usize, usize, usize) = (a.iter().sum(), b.iter().sum(), c.iter().sum());
    if sa != sb || sb != sc {
        return BigUint::zero();
    }
    count3(canonical3(a.to_vec(), b.to_vec(), c.to_vec()))
}

/// Number of two-way contingency tables (nonnegative integer matrices) with
/// row sums `rows` and column sums `cols`.
pub fn count_two_way(rows: &[usize], cols: &[usize]) -> BigUint {
    if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
        return BigUint::zero();
    }
    count2(canonical2(rows.to_vec(), cols.to_vec()))
}

/// Drops zeros and sorts in decreasing order.
pub(crate) fn normalize(mut v: Vec<usize>) -> Vec<usize> {
    v.retain(|&x| x > 0);
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn canonical3(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>) -> Key3 {
    let mut vs = [normalize(a), normalize(b), normalize(c)];
    vs.sort();
    let [a, b, c] = vs;
    (a, b, c)
}

fn canonical2(u: Vec<usize>, v: Vec<usize>) -> Key2 {
    let (u, v) = (normalize(u), normalize(v));
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Mass outside the largest entry; the cost driver of slicing along `v`.
fn slicing_cost(v: &[usize]) -> usize {
    v.iter().sum::<usize>() - v.first().copied().unwrap_or(0)
}

fn count3(key: Key3) -> BigUint {
    let (a, b, c) = &key;
    if a.is_empty() {
        // All three totals agree, so every vector is empty.
        return BigUint::one();
    }
    if a.len() == 1 {
        return count2(canonical2(b.clone(), c.clone()));
    }
    if let Some(v) = cache3().get(&key) {
        return v;
    }

    let vs = [a, b, c];
    let s = (0..3)
        .min_by_key(|&r| (slicing_cost(vs[r]), vs[r].len()))
        .unwrap();
    let sliced = vs[s];
    let (x, y) = match s {
        0 => (b, c),
        1 => (a, c),
        _ => (a, b),
    };
    // Peel the smallest plane; the largest is forced at the end.
    let (&first, rest) = sliced.split_last().unwrap();
    let rest = rest.to_vec();

    let mut total = BigUint::zero();
    for_each_bounded_composition(first, x, |u| {
        let x_rest: Vec<usize> = x.iter().zip(u).map(|(p, q)| p - q).collect();
        for_each_bounded_composition(first, y, |v| {
            let ways = count2(canonical2(u.to_vec(), v.to_vec()));
            if ways.is_zero() {
                return;
            }
            let y_rest: Vec<usize> = y.iter().zip(v).map(|(p, q)| p - q).collect();
            let sub = count3(canonical3(rest.clone(), x_rest.clone(), y_rest));
            if !sub.is_zero() {
                total += ways * sub;
            }
        });
    });
    cache3().insert(key, total.clone());
    total
}

fn count2(key: Key2) -> BigUint {
    let (u, v) = &key;
    if u.len() <= 1 || v.len() <= 1 {
        return BigUint::one();
    }
    if u.len() == 2 {
        return two_row_count(u, v);
    }
    if let Some(w) = cache2().get(&key) {
        return w;
    }
    // Peel the smallest row; the last row is forced.
    let (&row, rest) = u.split_last().unwrap();
    let mut total = BigUint::zero();
    for_each_bounded_composition(row, v, |r| {
        let v_rest: Vec<usize> = v.iter().zip(r).map(|(p, q)| p - q).collect();
        total += count2(canonical2(rest.to_vec(), v_rest));
    });
    cache2().insert(key, total.clone());
    total
}

/// Two rows: count vectors `r ≤ v` with `Σr = u[1]`; the other row is forced.
fn two_row_count(u: &[usize], v: &[usize]) -> BigUint {
    let target = u[1];
    // ways[s] = number of prefixes r with sum s.
    let mut ways = vec![BigUint::zero(); target + 1];
    ways[0] = BigUint::one();
    for &cap in v {
        let mut next = vec![BigUint::zero(); target + 1];
        for s in 0..=target {
            if ways[s].is_zero() {
                continue;
            }
            for x in 0..=cap.min(target - s) {
                next[s + x] += &ways[s];
            }
        }
        ways = next;
    }
    ways.swap_remove(target)
}

/// Calls `f` on every vector `w` with `0 ≤ w[i] ≤ bound[i]` and `Σw = total`.
pub(crate) fn for_each_bounded_composition(
    total: usize,
    bound: &[usize],
    mut f: impl FnMut(&[usize]),
) {
    let mut suffix_cap = vec![0usize; bound.len() + 1];
    for i in (0..bound.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + bound[i];
    }
    if suffix_cap[0] < total {
        return;
    }
    let mut w = vec![0usize; bound.len()];
    fn rec(
        i: usize,
        left: usize,
        bound: &[usize],
        suffix_cap: &[usize],
        w: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if i == bound.len() {
            if left == 0 {
                f(w);
            }
            return;
        }
        let lo = left.saturating_sub(suffix_cap[i + 1]);
        let hi = bound[i].min(left);
        for x in lo..=hi {
            w[i] = x;
            rec(i + 1, left - x, bound, suffix_cap, w, f);
        }
        w[i] = 0;
    }
    rec(0, total, bound, &suffix_cap, &mut w, &mut f);
}

/// Counts arrays by listing them one at a time. Only meant as a reference
/// for [`count_tables`]; refuses totals above [`NAIVE_TOTAL_CAP`] and sides
/// longer than [`NAIVE_LENGTH_CAP`].
pub fn count_tables_naive(m: &Marginals) -> Result<BigUint> {
    let Some(total) = m.feasible_total() else {
        return Ok(BigUint::zero());
    };
    if total > NAIVE_TOTAL_CAP || m.len() > NAIVE_LENGTH_CAP {
        return Err(Error::LimitExceeded(format!(
            "naive enumeration is limited to total <= {NAIVE_TOTAL_CAP} and length <= {NAIVE_LENGTH_CAP}"
        )));
    }
    let l = m.len();
    let mut ra: Vec<usize> = m.a.iter().map(|&x| x as usize).collect();
    let mut rb: Vec<usize> = m.b.iter().map(|&x| x as usize).collect();
    let mut rc: Vec<usize> = m.c.iter().map(|&x| x as usize).collect();
    let mut count = 0u64;
    naive_rec(0, l, &mut ra, &mut rb, &mut rc, &mut count);
    Ok(BigUint::from(count))
}

fn naive_rec(
    cell: usize,
    l: usize,
    ra: &mut [usize],
    rb: &mut [usize],
    rc: &mut [usize],
    count: &mut u64,
) {
    if cell == l * l * l {
        if ra.iter().chain(rb.iter()).chain(rc.iter()).all(|&x| x == 0) {
            *count += 1;
        }
        return;
    }
    let (i, j, k) = (cell / (l * l), (cell / l) % l, cell % l);
    let hi = ra[i].min(rb[j]).min(rc[k]);
    // The last cell of a slice must absorb whatever that slice still owes.
    let mut lo = 0;
    for (last, owed) in [
        (j + 1 == l && k + 1 == l, ra[i]),
        (i + 1 == l && k + 1 == l, rb[j]),
        (i + 1 == l && j + 1 == l, rc[k]),
    ] {
        if last {
            if owed > hi {
                return;
            }
            lo = lo.max(owed);
        }
    }
    for x in lo..=hi {
        ra[i] -= x;
        rb[j] -= x;
        rc[k] -= x;
        naive_rec(cell + 1, l, ra, rb, rc, count);
        ra[i] += x;
        rb[j] += x;
        rc[k] += x;
    }
}
