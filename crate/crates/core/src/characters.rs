//! Irreducible characters of the symmetric group.
//!
//! [`chi`] evaluates `χ^λ[μ]` by the Murnaghan–Nakayama rule: strip a border
//! strip of length `μ₁` from `λ` in every possible way, weight each removal
//! by `(-1)^(rows - 1)`, and recurse on the rest of `μ`. Strips are found on
//! the beta-set (abacus) of `λ`: removing a strip of length `k` moves one
//! bead from position `b` to an empty position `b - k`, and the number of
//! beads jumped over is the number of rows minus one.
//!
//! Every intermediate `(shape, remaining cycle type)` pair is itself a
//! character value, so the memo table doubles as a character table that can
//! be written to and read back from disk (see [`save_cache_file`]).

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cache::MemoCache;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Environment variable naming the character-cache file.
pub const CHAR_CACHE_ENV: &str = "KRONCOEFF_CHAR_CACHE";

/// Default number of memoized character values.
pub const DEFAULT_CHAR_CACHE_CAPACITY: usize = 1 << 22;

type CharKey = (Vec<usize>, Vec<usize>);

fn cache() -> &'static MemoCache<CharKey, BigInt> {
    static CACHE: OnceLock<MemoCache<CharKey, BigInt>> = OnceLock::new();
    CACHE.get_or_init(|| MemoCache::new(DEFAULT_CHAR_CACHE_CAPACITY))
}

pub fn set_cache_capacity(capacity: usize) {
    cache().set_capacity(capacity);
}

pub fn cache_len() -> usize {
    cache().len()
}

/// The character value `χ^λ[μ]`: the trace of a permutation of cycle type
/// `μ` in the irreducible representation indexed by `λ`.
pub fn chi(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "chi needs |λ| = |μ|, got |{lambda}| = {} and |{mu}| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(murnaghan_nakayama(lambda.parts(), mu.parts()))
}

/// `χ^λ[1^n]`, the dimension of the irreducible representation.
pub fn dimension(lambda: &Partition) -> BigInt {
    murnaghan_nakayama(lambda.parts(), &vec![1; lambda.size()])
}

fn murnaghan_nakayama(shape: &[usize], cycles: &[usize]) -> BigInt {
    let Some((&k, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    if rest.is_empty() {
        // A single strip of length k = |shape| exists iff the shape is a hook.
        return hook_value(shape);
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = cache().get(&key) {
        return v;
    }

    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next: Vec<usize> = beta
            .iter()
            .enumerate()
            .map(|(j, &x)| if j == i { target } else { x })
            .collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let v = murnaghan_nakayama(&smaller, rest);
        if jumped % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    cache().insert(key, total.clone());
    total
}

fn hook_value(shape: &[usize]) -> BigInt {
    // Hook (a, 1^b): one strip with b+1 rows.
    let legs = shape.len().saturating_sub(1);
    if shape.len() > 1 && shape[1] > 1 {
        return BigInt::zero();
    }
    if legs.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Number of index subsets of `values` whose entries sum to `target`.
/// The empty subset counts for `target == 0`; negative targets give 0.
pub fn subset_count(values: &[usize], target: i64) -> BigUint {
    if target < 0 {
        return BigUint::zero();
    }
    let m = target as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for &r in values {
        if r == 0 {
            // A zero entry may be taken or not.
            for w in ways.iter_mut() {
                *w *= 2u32;
            }
            continue;
        }
        for s in (r..=m).rev() {
            let add = ways[s - r].clone();
            ways[s] += add;
        }
    }
    ways.swap_remove(m)
}

/// `χ^{(n-k,k)}[ν]` by the two-row formula `P_X(k) - P_X(k-1)`, where `X` is
/// the multiset of parts of `ν` and `P_X(m)` counts sub-multisets summing
/// to `m`.
pub fn chi_two_row(n: usize, k: usize, nu: &Partition) -> Result<BigInt> {
    if nu.size() != n {
        return Err(Error::SizeMismatch(format!(
            "|ν| = {} but n = {n}",
            nu.size()
        )));
    }
    if 2 * k > n {
        return Err(Error::InvalidInput(format!(
            "two-row shape (n-k,k) needs k <= n/2, got n={n}, k={k}"
        )));
    }
    let k = k as i64;
    Ok(BigInt::from(subset_count(nu.parts(), k)) - BigInt::from(subset_count(nu.parts(), k - 1)))
}

/// Maps the subset-sum instance "is there a subset of `a` summing to `k`"
/// to a character evaluation: returns `(λ, ν)` with `λ = (n-2k', 2k')`,
/// `ν = (2a_1, 2a_2, …)` sorted and `k' = min(k, Σa - k)`. The instance has
/// a solution iff `χ^λ[ν] != 0`.
pub fn knapsack_to_charp(k: usize, a: &[usize]) -> Result<(Partition, Partition)> {
    if a.contains(&0) {
        return Err(Error::InvalidInput(
            "knapsack weights must be positive".into(),
        ));
    }
    let total: usize = a.iter().sum();
    if k > total {
        return Err(Error::InvalidInput(format!(
            "target {k} exceeds total weight {total}"
        )));
    }
    let k = k.min(total - k);
    let n = 2 * total;
    let lambda = Partition::new(vec![n - 2 * k, 2 * k])?;
    let nu = Partition::from_unsorted(a.iter().map(|&x| 2 * x).collect());
    Ok((lambda, nu))
}

/// Loads `λ|μ|value` records into the character memo table.
pub fn load_cache_file(path: &Path) -> Result<usize> {
    let file = fs::File::open(path)?;
    let mut loaded = 0;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (lambda, mu, value) = parse_cache_record(line)
            .map_err(|e| Error::InvalidInput(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        cache().insert((lambda.into_parts(), mu.into_parts()), value);
        loaded += 1;
    }
    Ok(loaded)
}

fn parse_cache_record(line: &str) -> Result<(Partition, Partition, BigInt)> {
    let fields: Vec<&str> = line.split('|').collect();
    if fields.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected 3 '|'-separated fields, got {}",
            fields.len()
        )));
    }
    let lambda: Partition = fields[0].parse()?;
    let mu: Partition = fields[1].parse()?;
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "record {line:?} has |λ| != |μ|"
        )));
    }
    let value: BigInt = fields[2]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad character value {:?}", fields[2])))?;
    Ok((lambda, mu, value))
}

/// Writes every memoized character value as `λ|μ|value`, sorted so the file
/// is reproducible.
pub fn save_cache_file(path: &Path) -> Result<usize> {
    let mut records = Vec::new();
    cache().for_each(|(shape, cycles), v| {
        records.push(format!("{}|{}|{}", join(shape), join(cycles), v));
    });
    records.sort();
    let mut out = BufWriter::new(fs::File::create(path)?);
    for r in &records {
        writeln!(out, "{r}")?;
    }
    out.flush()?;
    Ok(records.len())
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
