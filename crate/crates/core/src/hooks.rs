//! Kronecker coefficients with a hook `ν = (n-k, 1^k)` counted by barred
//! tableaux.
//!
//! A barred tableau fills a Young diagram with letters `v` and `v̄`. Two
//! total orders are used:
//!
//! * natural: `1̄ < 1 < 2̄ < 2 < …`
//! * small-barred: `1̄ ≺ 2̄ ≺ … ≺ 1 ≺ 2 ≺ …`
//!
//! A tableau is semistandard in a given order when rows and columns weakly
//! increase, no row repeats a barred letter and no column repeats an
//! unbarred one. `g(λ, μ, (n-k, 1^k))` equals the number of small-barred
//! semistandard tableaux of shape `λ` and content `μ` with `k` barred
//! letters whose reading word is a ballot sequence and whose switched
//! tableau has an unbarred letter in the first cell of its last row.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default refusal threshold for [`count_hook_kron`].
pub const DEFAULT_HOOK_MAX_N: usize = 20;

static HOOK_MAX_N: AtomicUsize = AtomicUsize::new(DEFAULT_HOOK_MAX_N);

pub fn set_max_n(n: usize) {
    HOOK_MAX_N.store(n, Ordering::Relaxed);
}

pub fn max_n() -> usize {
    HOOK_MAX_N.load(Ordering::Relaxed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub value: usize,
    pub barred: bool,
}

impl Entry {
    pub fn new(value: usize, barred: bool) -> Self {
        Entry { value, barred }
    }

    pub fn plain(value: usize) -> Self {
        Entry {
            value,
            barred: false,
        }
    }

    pub fn bar(value: usize) -> Self {
        Entry {
            value,
            barred: true,
        }
    }

    fn key(self, mode: OrderMode) -> usize {
        match mode {
            OrderMode::Natural => 2 * self.value - usize::from(self.barred),
            // Barred letters sort below every unbarred one.
            OrderMode::SmallBarred => {
                if self.barred {
                    self.value
                } else {
                    usize::MAX / 2 + self.value
                }
            }
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.barred { "b" } else { "" })
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, barred) = match s.strip_suffix('b') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value: usize = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad tableau entry {s:?}")))?;
        if value == 0 {
            return Err(Error::InvalidInput(
                "tableau entries must be positive".into(),
            ));
        }
        Ok(Entry { value, barred })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderMode {
    Natural,
    SmallBarred,
}

/// A filled Young diagram in English notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarredTableau {
    rows: Vec<Vec<Entry>>,
    mode: OrderMode,
}

impl BarredTableau {
    /// Rows must be nonempty with weakly decreasing lengths.
    pub fn new(rows: Vec<Vec<Entry>>, mode: OrderMode) -> Result<Self> {
        if rows.iter().any(|r| r.is_empty()) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidInput(
                "tableau rows must be nonempty with weakly decreasing lengths".into(),
            ));
        }
        if rows.iter().flatten().any(|e| e.value == 0) {
            return Err(Error::InvalidInput(
                "tableau entries must be positive".into(),
            ));
        }
        Ok(BarredTableau { rows, mode })
    }

    /// Parses the `"1b 1 2 / 2"` format.
    pub fn parse(s: &str, mode: OrderMode) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return BarredTableau::new(Vec::new(), mode);
        }
        let rows = s
            .split('/')
            .map(|row| {
                row.split_whitespace()
                    .map(Entry::from_str)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BarredTableau::new(rows, mode)
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn mode(&self) -> OrderMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: OrderMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("row lengths decrease")
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Entry> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    /// `m_v` = number of cells holding `v` or `v̄`; trailing zeros dropped.
    pub fn content(&self) -> Vec<usize> {
        let mut m = Vec::new();
        for e in self.rows.iter().flatten() {
            if m.len() < e.value {
                m.resize(e.value, 0);
            }
            m[e.value - 1] += 1;
        }
        m
    }

    pub fn barred_count(&self) -> usize {
        self.rows.iter().flatten().filter(|e| e.barred).count()
    }

    pub fn is_valid(&self) -> bool {
        grid_is_valid(&self.rows, self.mode)
    }

    /// The unbarred letters read column by column from right to left, each
    /// column top to bottom, followed by the barred letters read column by
    /// column from left to right, each column bottom to top.
    pub fn reading_word(&self) -> Result<Vec<usize>> {
        if self.mode != OrderMode::SmallBarred || !self.is_valid() {
            return Err(Error::InvalidInput(
                "reading words are defined for valid small-barred tableaux".into(),
            ));
        }
        Ok(reading_word_of(&self.rows))
    }

    /// Natural-order tableau obtained by sliding unbarred letters past the
    /// barred ones, with whole strips of equal unbarred letters moved at
    /// once.
    pub fn switch(&self) -> Result<BarredTableau> {
        self.switch_with(switch_grid)
    }

    /// Same result as [`BarredTableau::switch`], one cell exchange at a time.
    pub fn switch_naive(&self) -> Result<BarredTableau> {
        self.switch_with(switch_grid_naive)
    }

    fn switch_with(&self, f: fn(&mut [Vec<Entry>])) -> Result<BarredTableau> {
        if self.mode != OrderMode::SmallBarred || !self.is_valid() {
            return Err(Error::InvalidInput(
                "switching needs a valid small-barred tableau".into(),
            ));
        }
        let mut rows = self.rows.clone();
        f(&mut rows);
        if !grid_is_valid(&rows, OrderMode::Natural) {
            return Err(Error::InvariantViolation(format!(
                "switching {self} produced a tableau that is not semistandard"
            )));
        }
        Ok(BarredTableau {
            rows,
            mode: OrderMode::Natural,
        })
    }
}

impl fmt::Display for BarredTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

fn grid_is_valid(rows: &[Vec<Entry>], mode: OrderMode) -> bool {
    for (r, row) in rows.iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            if c > 0 && !fits_right_of(row[c - 1], e, mode) {
                return false;
            }
            if r > 0 && !fits_below(rows[r - 1][c], e, mode) {
                return false;
            }
        }
    }
    true
}

fn fits_right_of(left: Entry, e: Entry, mode: OrderMode) -> bool {
    left.key(mode) <= e.key(mode) && !(left == e && e.barred)
}

fn fits_below(above: Entry, e: Entry, mode: OrderMode) -> bool {
    above.key(mode) <= e.key(mode) && !(above == e && !e.barred)
}

fn reading_word_of(rows: &[Vec<Entry>]) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let column = |c: usize| {
        rows.iter()
            .take_while(move |row| row.len() > c)
            .map(move |row| row[c])
    };
    let mut word = Vec::new();
    for c in (0..width).rev() {
        word.extend(column(c).filter(|e| !e.barred).map(|e| e.value));
    }
    for c in 0..width {
        let barred: Vec<usize> = column(c).filter(|e| e.barred).map(|e| e.value).collect();
        word.extend(barred.into_iter().rev());
    }
    word
}

/// True iff every prefix has at least as many `i` as `i+1`, for all `i`.
pub fn is_ballot(word: &[usize]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &x in word {
        if x == 0 {
            return false;
        }
        if counts.len() < x {
            counts.resize(x, 0);
        }
        counts[x - 1] += 1;
        if x > 1 && counts[x - 1] > counts[x - 2] {
            return false;
        }
    }
    true
}

fn cell(rows: &[Vec<Entry>], r: isize, c: isize) -> Option<Entry> {
    if r < 0 || c < 0 {
        return None;
    }
    rows.get(r as usize)
        .and_then(|row| row.get(c as usize))
        .copied()
}

fn larger(x: Option<Entry>, e: Entry) -> bool {
    x.is_some_and(|x| x.key(OrderMode::Natural) > e.key(OrderMode::Natural))
}

fn out_of_order(rows: &[Vec<Entry>], r: isize, c: isize) -> bool {
    let e = rows[r as usize][c as usize];
    larger(cell(rows, r, c - 1), e) || larger(cell(rows, r - 1, c), e)
}

/// Whether the out-of-order letter at `(r, c)` trades places with the cell
/// above (rather than the one to its left).
fn moves_up(rows: &[Vec<Entry>], r: isize, c: isize) -> bool {
    let left = cell(rows, r, c - 1);
    let Some(above) = cell(rows, r - 1, c) else {
        return false;
    };
    match left {
        None => true,
        Some(left) => {
            above.key(OrderMode::Natural) > left.key(OrderMode::Natural)
                || (above == left && !above.barred)
        }
    }
}

/// Smallest out-of-order unbarred letter, leftmost among equals.
fn next_out_of_order(rows: &[Vec<Entry>]) -> Option<(isize, isize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (r, row) in rows.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !e.barred && out_of_order(rows, r as isize, c as isize) {
                let cand = (e.value, c, r);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.map(|(_, c, r)| (r as isize, c as isize))
}

fn swap(rows: &mut [Vec<Entry>], (r1, c1): (isize, isize), (r2, c2): (isize, isize)) {
    let a = rows[r1 as usize][c1 as usize];
    rows[r1 as usize][c1 as usize] = rows[r2 as usize][c2 as usize];
    rows[r2 as usize][c2 as usize] = a;
}

fn switch_grid_naive(rows: &mut [Vec<Entry>]) {
    while let Some((mut r, mut c)) = next_out_of_order(rows) {
        while out_of_order(rows, r, c) {
            if moves_up(rows, r, c) {
                swap(rows, (r, c), (r - 1, c));
                r -= 1;
            } else {
                swap(rows, (r, c), (r, c - 1));
                c -= 1;
            }
        }
    }
}

fn switch_grid(rows: &mut [Vec<Entry>]) {
    let nat = |e: Entry| e.key(OrderMode::Natural);
    while let Some((r, c)) = next_out_of_order(rows) {
        if moves_up(rows, r, c) {
            swap(rows, (r, c), (r - 1, c));
            continue;
        }
        // The barred letter on the left passes a strip of copies of `e` in
        // one move, stopping where a single slide would turn upward or where
        // the letter above would block.
        let e = rows[r as usize][c as usize];
        let bar = rows[r as usize][(c - 1) as usize];
        let mut end = c;
        loop {
            let x = end + 1;
            if cell(rows, r, x) != Some(e) {
                break;
            }
            if let Some(b) = cell(rows, r - 1, x) {
                if nat(b) > nat(bar) || (b == bar && !b.barred) {
                    break;
                }
            }
            if larger(cell(rows, r - 1, x - 1), e) {
                break;
            }
            end = x;
        }
        let row = &mut rows[r as usize];
        for x in (c - 1)..end {
            row[x as usize] = e;
        }
        row[end as usize] = bar;
    }
}

/// Every small-barred semistandard tableau of the given shape and content
/// with exactly `k` barred letters, in a fixed deterministic order.
pub fn small_barred_tableaux(shape: &Partition, content: &[usize], k: usize) -> Vec<BarredTableau> {
    let mut out = Vec::new();
    enumerate(shape, content, k, |rows| {
        out.push(BarredTableau {
            rows: rows.to_vec(),
            mode: OrderMode::SmallBarred,
        });
    });
    out
}

fn enumerate(shape: &Partition, content: &[usize], k: usize, mut visit: impl FnMut(&[Vec<Entry>])) {
    if content.iter().sum::<usize>() != shape.size() {
        return;
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<Entry>> = shape
        .parts()
        .iter()
        .map(|&len| vec![Entry::plain(1); len])
        .collect();
    let mut left = content.to_vec();
    fill(&cells, 0, k, &mut rows, &mut left, &mut visit);
}

fn fill(
    cells: &[(usize, usize)],
    idx: usize,
    bars_left: usize,
    rows: &mut Vec<Vec<Entry>>,
    left: &mut Vec<usize>,
    visit: &mut impl FnMut(&[Vec<Entry>]),
) {
    let remaining = cells.len() - idx;
    if bars_left > remaining {
        return;
    }
    if idx == cells.len() {
        visit(rows);
        return;
    }
    let (r, c) = cells[idx];
    let mode = OrderMode::SmallBarred;
    for barred in [true, false] {
        if barred && bars_left == 0 {
            continue;
        }
        for v in 1..=left.len() {
            if left[v - 1] == 0 {
                continue;
            }
            let e = Entry::new(v, barred);
            if c > 0 && !fits_right_of(rows[r][c - 1], e, mode) {
                continue;
            }
            if r > 0 && !fits_below(rows[r - 1][c], e, mode) {
                continue;
            }
            rows[r][c] = e;
            left[v - 1] -= 1;
            fill(
                cells,
                idx + 1,
                bars_left - usize::from(barred),
                rows,
                left,
                visit,
            );
            left[v - 1] += 1;
        }
    }
}

/// A tableau counted by [`hook_kron_traced`] together with its switch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptedTableau {
    pub tableau: BarredTableau,
    pub switched: BarredTableau,
}

fn check_hook_input(lambda: &Partition, mu: &Partition, k: usize) -> Result<usize> {
    let n = lambda.size();
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!(
            "|λ| = {n} but |μ| = {}",
            mu.size()
        )));
    }
    if n > 0 && k >= n {
        return Err(Error::InvalidInput(format!(
            "k = {k} must be below n = {n}"
        )));
    }
    if n == 0 && k > 0 {
        return Err(Error::InvalidInput("k must be 0 when n = 0".into()));
    }
    if n > max_n() {
        return Err(Error::LimitExceeded(format!(
            "hook enumeration is capped at n = {}, got {n}",
            max_n()
        )));
    }
    Ok(n)
}

fn accepts(rows: &[Vec<Entry>]) -> Result<Option<Vec<Vec<Entry>>>> {
    if !is_ballot(&reading_word_of(rows)) {
        return Ok(None);
    }
    let mut switched = rows.to_vec();
    switch_grid(&mut switched);
    if !grid_is_valid(&switched, OrderMode::Natural) {
        return Err(Error::InvariantViolation(format!(
            "switching {} produced a tableau that is not semistandard",
            BarredTableau {
                rows: rows.to_vec(),
                mode: OrderMode::SmallBarred
            }
        )));
    }
    let corner = switched.last().map(|row| row[0]);
    Ok(corner.filter(|e| !e.barred).map(|_| switched))
}

/// `g(λ, μ, (n-k, 1^k))` by counting barred tableaux.
pub fn count_hook_kron(lambda: &Partition, mu: &Partition, k: usize) -> Result<BigUint> {
    let n = check_hook_input(lambda, mu, k)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    if lambda.length() * mu.length() < k + 1 {
        return Ok(BigUint::zero());
    }
    // Split the search on the letter in the first cell, which is fixed per
    // branch, and sum the branches.
    let firsts: Vec<Entry> = (1..=mu.length())
        .flat_map(|v| [Entry::bar(v), Entry::plain(v)])
        .collect();
    let counts = firsts
        .par_iter()
        .map(|&first| -> Result<u64> {
            let mut count = 0u64;
            let mut err = None;
            enumerate_from(lambda, mu, k, first, |rows| {
                if err.is_some() {
                    return;
                }
                match accepts(rows) {
                    Ok(Some(_)) => count += 1,
                    Ok(None) => {}
                    Err(e) => err = Some(e),
                }
            });
            err.map_or(Ok(count), Err)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(counts.into_iter().map(BigUint::from).sum())
}

fn enumerate_from(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    first: Entry,
    mut visit: impl FnMut(&[Vec<Entry>]),
) {
    let content = mu.parts();
    if content[first.value - 1] == 0 || (first.barred && k == 0) {
        return;
    }
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<Entry>> = lambda
        .parts()
        .iter()
        .map(|&len| vec![Entry::plain(1); len])
        .collect();
    let mut left = content.to_vec();
    rows[0][0] = first;
    left[first.value - 1] -= 1;
    fill(
        &cells,
        1,
        k - usize::from(first.barred),
        &mut rows,
        &mut left,
        &mut visit,
    );
}

/// Like [`count_hook_kron`], also returning every counted tableau.
pub fn hook_kron_traced(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<(BigUint, Vec<AcceptedTableau>)> {
    let n = check_hook_input(lambda, mu, k)?;
    if n == 0 {
        return Ok((BigUint::one(), Vec::new()));
    }
    if lambda.length() * mu.length() < k + 1 {
        return Ok((BigUint::zero(), Vec::new()));
    }
    let mut accepted = Vec::new();
    let mut err = None;
    enumerate(lambda, mu.parts(), k, |rows| {
        if err.is_some() {
            return;
        }
        match accepts(rows) {
            Ok(Some(switched)) => accepted.push(AcceptedTableau {
                tableau: BarredTableau {
                    rows: rows.to_vec(),
                    mode: OrderMode::SmallBarred,
                },
                switched: BarredTableau {
                    rows: switched,
                    mode: OrderMode::Natural,
                },
            }),
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok((BigUint::from(accepted.len()), accepted))
}

/// Checks that switching is injective on one enumeration class; returns the
/// number of tableaux examined.
pub fn switching_is_injective(
    shape: &Partition,
    content: &[usize],
    k: usize,
) -> Result<Option<usize>> {
    let all = small_barred_tableaux(shape, content, k);
    let mut seen = HashSet::with_capacity(all.len());
    for t in &all {
        if !seen.insert(t.switch()?) {
            return Ok(None);
        }
    }
    Ok(Some(all.len()))
}
