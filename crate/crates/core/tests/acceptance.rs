//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use kroncoeff::characters::{chi, chi_two_row};
use kroncoeff::contingency::{count_tables, count_tables_naive, Marginals};
use kroncoeff::hooks::{count_hook_kron, is_ballot, small_barred_tableaux};
use kroncoeff::kron::{
    compute, gapp_decomposition, kron_via_characters, kron_via_tables, padded_kron, reduce,
    stable_size, Method, ReductionMap, ReductionOutcome,
};
use kroncoeff::lr::{
    embedding_size, lr_coefficient, lr_via_reduction, murnaghan_embedding, pieri_expand,
};
use kroncoeff::verify::marginal_triples;
use kroncoeff::{partitions_of, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn all(n: usize) -> Vec<Partition> {
    partitions_of(n, None, None).collect()
}

fn triples(n: usize) -> Vec<(Partition, Partition, Partition)> {
    let ps = all(n);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Positive compositions of `n`.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn oracle(l: &Partition, m: &Partition, v: &Partition) -> BigUint {
    kron_via_characters(l, m, v).unwrap()
}

/// Runs `check` over every item in parallel and reports the first failure
/// in input order.
fn check_all<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<(), String> + Sync,
) -> Result<usize, String> {
    let failures: Vec<(usize, String)> = items
        .par_iter()
        .enumerate()
        .filter_map(|(i, item)| check(item).err().map(|e| (i, e)))
        .collect();
    match failures.into_iter().min_by_key(|(i, _)| *i) {
        Some((_, e)) => Err(e),
        None => Ok(items.len()),
    }
}

fn cross_method() -> Outcome {
    let cases: Vec<_> = (1..=7).flat_map(triples).collect();
    let n = check_all(&cases, |(l, m, v)| {
        let g = oracle(l, m, v);
        let t = kron_via_tables(l, m, v).map_err(|e| e.to_string())?;
        let a = compute(l, m, v, Method::Auto).map_err(|e| e.to_string())?;
        if t == g && a == g {
            Ok(())
        } else {
            Err(format!("({l}; {m}; {v}): oracle {g}, tables {t}, auto {a}"))
        }
    })?;
    Ok(format!(
        "{n} triples with n <= 7 agree across oracle, tables and auto"
    ))
}

fn reduction_fidelity() -> Outcome {
    let cases: Vec<_> = (1..=10)
        .flat_map(triples)
        .filter(|(_, _, v)| 2 * v.part(0) >= v.size())
        .collect();
    let n = check_all(&cases, |(l, m, v)| {
        let g = oracle(l, m, v);
        let size = v.size();
        let ell = l.length().max(m.length()).max(v.length());
        let t = size - v.part(0);
        match reduce(l, m, v).map_err(|e| e.to_string())? {
            ReductionOutcome::ProvablyZero { .. } if g.is_zero() => Ok(()),
            ReductionOutcome::ProvablyZero { row, .. } => Err(format!(
                "({l}; {m}; {v}): zero certified at row {row} but g = {g}"
            )),
            ReductionOutcome::Reduced(r) => {
                if r.size() > 2 * t * ell * ell {
                    return Err(format!(
                        "({l}; {m}; {v}): |phi(lambda)| = {} exceeds bound",
                        r.size()
                    ));
                }
                let h = oracle(&r.lambda, &r.mu, &r.nu);
                if h != g {
                    return Err(format!("({l}; {m}; {v}): g = {g}, reduced gives {h}"));
                }
                Ok(())
            }
        }
    })?;
    Ok(format!(
        "{n} triples with n <= 10 and nu_1 >= n/2 preserved or certified zero"
    ))
}

fn worked_example() -> Outcome {
    let map = ReductionMap::new(&p(&[19, 15, 12, 5, 1]), &p(&[16, 16, 14, 3, 3]), 3, 5)
        .map_err(|e| e.to_string())?;
    let checks = [
        (
            map.index_set() == [3, 6],
            format!("I = {:?}", map.index_set()),
        ),
        (
            map.apply(map.omega()).ok() == Some(p(&[16, 13, 11, 5, 3])),
            "phi(omega)".to_string(),
        ),
        (
            map.apply(map.rho()).ok() == Some(p(&[13, 12, 9, 3, 1])),
            "phi(rho)".to_string(),
        ),
        (
            map.apply(&p(&[14, 14, 10, 2])).ok() == Some(p(&[11, 11, 7, 2])),
            "phi((14,14,10,2))".to_string(),
        ),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(format!("mismatch in {what}"));
        }
    }
    Ok("I = {3,6}, phi(omega), phi(rho), phi((14,14,10,2)) match".into())
}

fn hook_rule() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=8 {
        for l in all(n) {
            for m in all(n) {
                for k in 0..n {
                    cases.push((l.clone(), m.clone(), k));
                }
            }
        }
    }
    let n = check_all(&cases, |(l, m, k)| {
        let nu = Partition::hook(l.size(), *k).unwrap();
        let g = oracle(l, m, &nu);
        let h = count_hook_kron(l, m, *k).map_err(|e| e.to_string())?;
        if g == h {
            Ok(())
        } else {
            Err(format!("({l}; {m}; k = {k}): hook rule {h}, oracle {g}"))
        }
    })?;
    let word = [
        1, 1, 2, 1, 3, 3, 1, 1, 4, 2, 2, 2, 3, 3, 2, 1, 3, 4, 1, 2, 4, 5,
    ];
    let first_bad = (1..=word.len()).find(|&i| !is_ballot(&word[..i]));
    if first_bad != Some(6) {
        return Err(format!(
            "figure word first fails ballot at prefix length {first_bad:?}, expected 6"
        ));
    }
    Ok(format!(
        "{n} (lambda, mu, k) with n <= 8 match; figure word rejected at prefix 112133"
    ))
}

fn switching() -> Outcome {
    let mut classes = Vec::new();
    for n in 1..=6 {
        for shape in all(n) {
            for content in compositions(n) {
                for k in 0..=n {
                    classes.push((shape.clone(), content.clone(), k));
                }
            }
        }
    }
    let counts: Vec<Result<usize, String>> = classes
        .par_iter()
        .map(|(shape, content, k)| {
            let mut seen = HashSet::new();
            let tableaux = small_barred_tableaux(shape, content, *k);
            for t in &tableaux {
                let fast = t.switch().map_err(|e| e.to_string())?;
                let slow = t.switch_naive().map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!("{t}: accelerated {fast}, naive {slow}"));
                }
                if !fast.is_valid() || &fast.shape() != shape || &fast.content() != content {
                    return Err(format!(
                        "{t}: switched tableau {fast} changes shape or content"
                    ));
                }
                if !seen.insert(fast) {
                    return Err(format!("{t}: switching is not injective"));
                }
            }
            Ok(tableaux.len())
        })
        .collect();
    let mut total = 0;
    for c in counts {
        total += c?;
    }
    Ok(format!(
        "{total} tableaux with |shape| <= 6: accelerated = naive, shape/content kept, injective"
    ))
}

fn symmetries() -> Outcome {
    let mut total = 0;
    for n in 1..=7 {
        let ps = all(n);
        let idx = |q: &Partition| ps.iter().position(|x| x == q).unwrap();
        let k = ps.len();
        let values: Vec<BigUint> = triples(n)
            .par_iter()
            .map(|(l, m, v)| oracle(l, m, v))
            .collect();
        let at = |a: usize, b: usize, c: usize| &values[(a * k + b) * k + c];
        let conj: Vec<usize> = ps.iter().map(|q| idx(&q.conjugate())).collect();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let g = at(a, b, c);
                    let images = [
                        at(b, a, c),
                        at(a, c, b),
                        at(c, b, a),
                        at(b, c, a),
                        at(c, a, b),
                    ];
                    if images.iter().any(|x| *x != g) {
                        return Err(format!("({}; {}; {}) not symmetric", ps[a], ps[b], ps[c]));
                    }
                    if at(conj[a], conj[b], c) != g || at(conj[a], b, conj[c]) != g {
                        return Err(format!(
                            "({}; {}; {}) not conjugation invariant",
                            ps[a], ps[b], ps[c]
                        ));
                    }
                    total += 1;
                }
            }
        }
    }
    Ok(format!(
        "{total} triples with n <= 7 invariant under S3 and paired conjugation"
    ))
}

fn gapp() -> Outcome {
    let cases: Vec<_> = (1..=6).flat_map(triples).collect();
    let n = check_all(&cases, |(l, m, v)| {
        let pair = gapp_decomposition(l, m, v).map_err(|e| e.to_string())?;
        let g = oracle(l, m, v);
        if pair.pos >= pair.neg && &pair.pos - &pair.neg == g {
            Ok(())
        } else {
            Err(format!(
                "({l}; {m}; {v}): pos {} neg {} g {g}",
                pair.pos, pair.neg
            ))
        }
    })?;
    Ok(format!("{n} triples with n <= 6 satisfy pos - neg = g"))
}

fn two_row() -> Outcome {
    let mut total = 0;
    for n in 1..=10 {
        for k in 0..=n / 2 {
            let lam = p(&[n - k, k]);
            for nu in all(n) {
                let a = chi(&lam, &nu).map_err(|e| e.to_string())?;
                let b = chi_two_row(n, k, &nu).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("chi(({lam}), ({nu})): {a} vs {b}"));
                }
                total += 1;
            }
        }
    }
    Ok(format!(
        "{total} two-row character values with n <= 10 agree"
    ))
}

fn contingency() -> Outcome {
    let mut cases = Vec::new();
    marginal_triples(4, |a, b, c| {
        cases.push((a.to_vec(), b.to_vec(), c.to_vec()));
        true
    });
    let n = check_all(&cases, |(a, b, c)| {
        let count = |x: &[usize], y: &[usize], z: &[usize]| {
            count_tables(&Marginals::from_unsigned(x, y, z).unwrap())
        };
        let m = Marginals::from_unsigned(a, b, c).unwrap();
        let dp = count_tables(&m);
        let naive = count_tables_naive(&m).map_err(|e| e.to_string())?;
        if dp != naive {
            return Err(format!("{a:?} {b:?} {c:?}: dp {dp}, naive {naive}"));
        }
        let perms = [
            count(b, a, c),
            count(a, c, b),
            count(c, b, a),
            count(b, c, a),
            count(c, a, b),
        ];
        if perms.iter().any(|x| *x != dp) {
            return Err(format!("{a:?} {b:?} {c:?}: count depends on role order"));
        }
        Ok(())
    })?;
    Ok(format!(
        "{n} marginal triples with l <= 3, entries <= 4: dp = naive, role symmetric"
    ))
}

fn littlewood_richardson() -> Outcome {
    let mut cases = Vec::new();
    for size in 0..=6 {
        for lam in all(size) {
            for m in 0..=size {
                for mu in all(m) {
                    for nu in all(size - m) {
                        cases.push((lam.clone(), mu.clone(), nu.clone()));
                    }
                }
            }
        }
    }
    let lr = check_all(&cases, |(l, m, v)| {
        let c = lr_coefficient(l, m, v);
        let r = lr_via_reduction(l, m, v).map_err(|e| e.to_string())?;
        let e = murnaghan_embedding(l, m, v, embedding_size(l, m, v)).map_err(|e| e.to_string())?;
        if c == r && c == e {
            Ok(())
        } else {
            Err(format!(
                "c for ({l}; {m}; {v}): direct {c}, reduction {r}, embedding {e}"
            ))
        }
    })?;

    let small: Vec<Partition> = (0..=4).flat_map(all).collect();
    let mut stab = Vec::new();
    for a in &small {
        for b in &small {
            for c in &small {
                stab.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let st = check_all(&stab, |(a, b, c)| {
        let n0 = stable_size(a, b, c);
        let values: Vec<Option<BigUint>> = (n0..=n0 + 3)
            .map(|n| padded_kron(a, b, c, n, Method::Auto).unwrap())
            .collect();
        if values[0].is_some() && values.iter().all(|v| *v == values[0]) {
            Ok(())
        } else {
            Err(format!(
                "reduced coefficient of ({a}; {b}; {c}) varies from n = {n0}: {values:?}"
            ))
        }
    })?;
    Ok(format!(
        "{lr} LR triples with |lambda| <= 6 agree; {st} reduced coefficients stable over 4 sizes"
    ))
}

fn semigroup() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_positive = |rng: &mut ChaCha8Rng| loop {
        let n = rng.gen_range(1..=6);
        let ps = all(n);
        let mut pick = || ps[rng.gen_range(0..ps.len())].clone();
        let t = (pick(), pick(), pick());
        if !oracle(&t.0, &t.1, &t.2).is_zero() {
            return t;
        }
    };
    let mut pairs = Vec::new();
    for _ in 0..200 {
        let x = random_positive(&mut rng);
        let y = random_positive(&mut rng);
        pairs.push((x, y));
    }
    let n = check_all(&pairs, |(x, y)| {
        let s = (&x.0 + &y.0, &x.1 + &y.1, &x.2 + &y.2);
        let g = compute(&s.0, &s.1, &s.2, Method::Auto).map_err(|e| e.to_string())?;
        if g.is_zero() {
            Err(format!("sum ({}; {}; {}) has g = 0", s.0, s.1, s.2))
        } else {
            Ok(())
        }
    })?;
    Ok(format!("{n} sums of positive triples are positive"))
}

fn littlewood_identity() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=6 {
        for r in 0..=2.min(n) {
            for pi in all(r) {
                for l in all(n) {
                    for m in all(n) {
                        cases.push((l.clone(), m.clone(), pi.clone(), r));
                    }
                }
            }
        }
    }
    let n = check_all(&cases, |(l, m, pi, r)| {
        let n = l.size();
        let mut lhs = BigUint::zero();
        for alpha in all(n - r) {
            for beta in all(*r) {
                let cb = lr_coefficient(l, &alpha, &beta);
                if cb.is_zero() {
                    continue;
                }
                for gamma in all(*r) {
                    let cg = lr_coefficient(m, &alpha, &gamma);
                    if !cg.is_zero() {
                        lhs += &cb * cg * oracle(&beta, pi, &gamma);
                    }
                }
            }
        }
        let rhs: BigUint = pieri_expand(n - r, pi)
            .iter()
            .map(|eta| oracle(l, m, eta))
            .sum();
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!(
                "({l}; {m}; pi = ({pi})): LR side {lhs}, Pieri side {rhs}"
            ))
        }
    })?;
    Ok(format!(
        "{n} (lambda, mu, pi) with n <= 6, r <= 2 satisfy the identity"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("cross-method equivalence, n <= 7", cross_method),
        ("reduction preserves g, n <= 10", reduction_fidelity),
        ("worked reduction example", worked_example),
        ("hook rule vs oracle, n <= 8", hook_rule),
        ("tableau switching, |shape| <= 6", switching),
        ("S3 and conjugation symmetry, n <= 7", symmetries),
        ("GapP decomposition, n <= 6", gapp),
        ("two-row characters, n <= 10", two_row),
        ("contingency dp vs naive", contingency),
        ("LR routes and reduced stability", littlewood_richardson),
        ("semigroup property", semigroup),
        ("Littlewood vs Pieri identity", littlewood_identity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} [{name}] {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} [{name}] {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
