//! Cross-method consistency suites.
//!
//! Each suite walks its cases in increasing size and stops at the first
//! disagreement, so a reported counterexample is one of the smallest.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::characters::{chi, chi_two_row};
use crate::contingency::{count_tables, count_tables_naive, Marginals};
use crate::error::{Error, Result};
use crate::hooks::{count_hook_kron, small_barred_tableaux};
use crate::kron::{
    compute, gapp_decomposition, kron_via_characters, kron_via_tables, padded_kron, reduce,
    stable_size, Method, ReductionOutcome,
};
use crate::lr::{embedding_size, lr_coefficient, lr_via_reduction, murnaghan_embedding};
use crate::partitions::{partitions_of, Partition};

/// Largest `max_n` accepted by [`run`].
pub const VERIFY_HARD_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Check = std::result::Result<u64, String>;

fn fail(what: String) -> Check {
    Err(what)
}

fn triples(n: usize) -> Vec<(Partition, Partition, Partition)> {
    let ps: Vec<Partition> = partitions_of(n, None, None).collect();
    let mut out = Vec::with_capacity(ps.len().pow(3));
    for a in &ps {
        for b in &ps {
            for c in &ps {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn show(l: &Partition, m: &Partition, v: &Partition) -> String {
    format!("lambda=({l}) mu=({m}) nu=({v})")
}

fn methods(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n.min(7) {
        for (l, m, v) in triples(n) {
            let oracle = kron_via_characters(&l, &m, &v)?;
            let tables = kron_via_tables(&l, &m, &v)?;
            let auto = compute(&l, &m, &v, Method::Auto)?;
            if tables != oracle || auto != oracle {
                return Ok(fail(format!(
                    "{}: oracle {oracle}, tables {tables}, auto {auto}",
                    show(&l, &m, &v)
                )));
            }
            cases += 2;
        }
    }
    Ok(Ok(cases))
}

fn symmetries(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n {
        let mut values: HashMap<(Partition, Partition, Partition), BigUint> = HashMap::new();
        for (l, m, v) in triples(n) {
            let g = kron_via_characters(&l, &m, &v)?;
            values.insert((l, m, v), g);
        }
        for ((l, m, v), g) in &values {
            let images = [(m, l, v), (l, v, m), (v, m, l), (m, v, l), (v, l, m)];
            for (a, b, c) in images {
                if &values[&(a.clone(), b.clone(), c.clone())] != g {
                    return Ok(fail(format!("{} changes under permutation", show(l, m, v))));
                }
                cases += 1;
            }
            if &values[&(l.conjugate(), m.conjugate(), v.clone())] != g {
                return Ok(fail(format!(
                    "{} changes under conjugating lambda and mu",
                    show(l, m, v)
                )));
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

fn gapp(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n.min(6) {
        for (l, m, v) in triples(n) {
            let pair = gapp_decomposition(&l, &m, &v)?;
            let g = kron_via_characters(&l, &m, &v)?;
            if pair.neg > pair.pos || &pair.pos - &pair.neg != g {
                return Ok(fail(format!(
                    "{}: pos {} - neg {} differs from {g}",
                    show(&l, &m, &v),
                    pair.pos,
                    pair.neg
                )));
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

fn reduction(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n {
        for (l, m, v) in triples(n) {
            if 2 * v.part(0) < n {
                continue;
            }
            let g = kron_via_characters(&l, &m, &v)?;
            let ell = l.length().max(m.length()).max(v.length());
            let t = n - v.part(0);
            match reduce(&l, &m, &v)? {
                ReductionOutcome::ProvablyZero { .. } => {
                    if !g.is_zero() {
                        return Ok(fail(format!(
                            "{}: certified zero but g = {g}",
                            show(&l, &m, &v)
                        )));
                    }
                }
                ReductionOutcome::Reduced(r) => {
                    if r.size() > 2 * t * ell * ell {
                        return Ok(fail(format!(
                            "{}: reduced size {} too large",
                            show(&l, &m, &v),
                            r.size()
                        )));
                    }
                    let reduced = kron_via_characters(&r.lambda, &r.mu, &r.nu)?;
                    if reduced != g {
                        return Ok(fail(format!(
                            "{}: g = {g} but reduced triple ({}; {}; {}) gives {reduced}",
                            show(&l, &m, &v),
                            r.lambda,
                            r.mu,
                            r.nu
                        )));
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(Ok(cases))
}

fn hooks(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n {
        let ps: Vec<Partition> = partitions_of(n, None, None).collect();
        for l in &ps {
            for m in &ps {
                for k in 0..n {
                    let nu = Partition::hook(n, k)?;
                    let g = kron_via_characters(l, m, &nu)?;
                    let h = count_hook_kron(l, m, k)?;
                    if g != h {
                        return Ok(fail(format!(
                            "{}: hook rule {h}, oracle {g}",
                            show(l, m, &nu)
                        )));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(Ok(cases))
}

fn switching(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n.min(6) {
        for shape in partitions_of(n, None, None) {
            for content in partitions_of(n, None, None) {
                for k in 0..=n {
                    let mut seen = std::collections::HashSet::new();
                    for t in small_barred_tableaux(&shape, content.parts(), k) {
                        let fast = t.switch()?;
                        let slow = t.switch_naive()?;
                        if fast != slow
                            || fast.shape() != shape
                            || fast.content() != content.parts()
                        {
                            return Ok(fail(format!(
                                "tableau {t}: accelerated {fast}, naive {slow}"
                            )));
                        }
                        if !seen.insert(fast) {
                            return Ok(fail(format!(
                                "tableau {t} collides with another under switching"
                            )));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(Ok(cases))
}

fn two_row(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for n in 1..=max_n {
        for k in 0..=n / 2 {
            let lam = Partition::new(vec![n - k, k])?;
            for nu in partitions_of(n, None, None) {
                let direct: BigInt = chi(&lam, &nu)?;
                let formula = chi_two_row(n, k, &nu)?;
                if direct != formula {
                    return Ok(fail(format!(
                        "chi(({lam}), ({nu})) = {direct}, two-row formula {formula}"
                    )));
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(cases))
}

fn vectors(len: usize, max_entry: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_entry).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every marginal triple of a common length `ℓ ≤ 3` with entries at most
/// `max_entry`, grouped by total.
pub fn marginal_triples(max_entry: usize, mut f: impl FnMut(&[usize], &[usize], &[usize]) -> bool) {
    for len in 1..=3 {
        let mut by_sum: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        for v in vectors(len, max_entry) {
            by_sum.entry(v.iter().sum()).or_default().push(v);
        }
        let mut sums: Vec<usize> = by_sum.keys().copied().collect();
        sums.sort();
        for s in sums {
            let group = &by_sum[&s];
            for a in group {
                for b in group {
                    for c in group {
                        if !f(a, b, c) {
                            return;
                        }
                    }
                }
            }
        }
    }
}

fn contingency(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    let mut failure = None;
    let mut err = None;
    marginal_triples(max_n.min(3), |a, b, c| {
        let m = Marginals::from_unsigned(a, b, c).expect("equal lengths");
        let dp = count_tables(&m);
        match count_tables_naive(&m) {
            Ok(naive) if naive == dp => {
                cases += 1;
                true
            }
            Ok(naive) => {
                failure = Some(format!(
                    "marginals {a:?} {b:?} {c:?}: dp {dp}, naive {naive}"
                ));
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(failure.map_or(Ok(cases), Err))
}

fn littlewood_richardson(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    for size in 0..=max_n.min(5) {
        for lam in partitions_of(size, None, None) {
            for m in 0..=size {
                for mu in partitions_of(m, None, None) {
                    for nu in partitions_of(size - m, None, None) {
                        let direct = lr_coefficient(&lam, &mu, &nu);
                        let reduced = lr_via_reduction(&lam, &mu, &nu)?;
                        let embedded =
                            murnaghan_embedding(&lam, &mu, &nu, embedding_size(&lam, &mu, &nu))?;
                        if reduced != direct || embedded != direct {
                            return Ok(fail(format!(
                                "c for {}: direct {direct}, reduction {reduced}, embedding {embedded}",
                                show(&lam, &mu, &nu)
                            )));
                        }
                        cases += 2;
                    }
                }
            }
        }
    }
    Ok(Ok(cases))
}

fn stability(max_n: usize) -> Result<Check> {
    let mut cases = 0;
    let small: Vec<Partition> = (0..=max_n.min(3))
        .flat_map(|s| partitions_of(s, None, None))
        .collect();
    for l in &small {
        for m in &small {
            for v in &small {
                let n0 = stable_size(l, m, v);
                let Some(base) = padded_kron(l, m, v, n0, Method::Auto)? else {
                    return Err(Error::InvariantViolation(format!(
                        "stable size fails for {}",
                        show(l, m, v)
                    )));
                };
                for n in n0 + 1..=n0 + 2 {
                    let g = padded_kron(l, m, v, n, Method::Auto)?;
                    if g.as_ref() != Some(&base) {
                        return Ok(fail(format!(
                            "reduced coefficient for {} is {base} at n = {n0} but {g:?} at n = {n}",
                            show(l, m, v)
                        )));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(Ok(cases))
}

type Suite = (&'static str, fn(usize) -> Result<Check>);

const SUITES: [Suite; 10] = [
    ("kron-methods", methods),
    ("symmetries", symmetries),
    ("gapp", gapp),
    ("reduction", reduction),
    ("hook-rule", hooks),
    ("switching", switching),
    ("two-row-characters", two_row),
    ("contingency", contingency),
    ("littlewood-richardson", littlewood_richardson),
    ("stability", stability),
];

/// Runs every suite with sizes up to `max_n`, calling `progress` after each.
/// Suites keep running after a failure so the report is complete.
pub fn run(max_n: usize, mut progress: impl FnMut(&SuiteReport)) -> Result<Vec<SuiteReport>> {
    if max_n > VERIFY_HARD_CAP {
        return Err(Error::LimitExceeded(format!(
            "verify accepts max-n up to {VERIFY_HARD_CAP}, got {max_n}"
        )));
    }
    let mut reports = Vec::new();
    for (name, suite) in SUITES {
        let report = match suite(max_n)? {
            Ok(cases) => SuiteReport {
                name,
                cases,
                failure: None,
            },
            Err(failure) => SuiteReport {
                name,
                cases: 0,
                failure: Some(failure),
            },
        };
        progress(&report);
        reports.push(report);
    }
    Ok(reports)
}
