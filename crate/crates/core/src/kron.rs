//! Kronecker coefficients `g(λ, μ, ν)`, the multiplicity of `χ^ν` in
//! `χ^λ ⊗ χ^μ`.
//!
//! Three routes are available and must agree:
//!
//! * [`kron_via_characters`]: the class-sum `Σ_ρ χ^λ[ρ] χ^μ[ρ] χ^ν[ρ] / z_ρ`.
//! * [`kron_via_tables`]: an alternating sum of three-way contingency
//!   counts. Multiplying `Π 1/(1 - x_i y_j z_k)` by the three Vandermonde
//!   determinants and extracting `[x^{α+δ} y^{β+δ} z^{γ+δ}]` gives
//!
//!   ```text
//!   g(α, β, γ) = Σ_{σ¹,σ²,σ³ ∈ S_ℓ} sgn(σ¹σ²σ³) C(α ⊕ σ¹, β ⊕ σ², γ ⊕ σ³),
//!   (α ⊕ σ)_i = α_i + σ(i) - i.
//!   ```
//!
//!   Only the multiset of entries of each shifted vector matters to `C`,
//!   so the permutation sum is first collapsed to signed multiplicities of
//!   distinct vectors.
//! * [`compute`] with [`Method::Auto`]: pick the member with the smallest
//!   second part as `ν`, try the vanishing tests, shrink the triple with the
//!   [`ReductionMap`], then count tables.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::characters::chi;
use crate::contingency::{count_tables_unsigned, normalize};
use crate::error::{Error, Result};
use crate::partitions::{factorial, partitions_of, Partition};

fn check_sizes(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    let n = lambda.size();
    if mu.size() != n || nu.size() != n {
        return Err(Error::SizeMismatch(format!(
            "Kronecker coefficients need |λ| = |μ| = |ν|, got {}, {}, {}",
            n,
            mu.size(),
            nu.size()
        )));
    }
    Ok(n)
}

/// `g(λ, μ, ν)` from the character table.
pub fn kron_via_characters(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let n = check_sizes(lambda, mu, nu)?;
    let nf = BigInt::from(factorial(n));
    let classes: Vec<Partition> = partitions_of(n, None, None).collect();
    let sum = classes
        .par_iter()
        .map(|rho| -> Result<BigInt> {
            let prod = chi(lambda, rho)? * chi(mu, rho)? * chi(nu, rho)?;
            if prod.is_zero() {
                return Ok(prod);
            }
            Ok(prod * (&nf / BigInt::from(rho.centralizer_order())))
        })
        .try_reduce(BigInt::zero, |a, b| Ok(a + b))?;
    let (g, rem) = sum.div_rem(&nf);
    if !rem.is_zero() || g.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "character sum for ({lambda}; {mu}; {nu}) is {sum}, not a nonnegative multiple of {n}!"
        )));
    }
    Ok(g.to_biguint().unwrap())
}

/// Signed multiplicities of the shifted vectors `α ⊕ σ` over `σ ∈ S_ℓ`,
/// keyed by the sorted nonzero entries. Vectors with a negative entry are
/// skipped since they admit no arrays.
#[derive(Clone, Debug, Default)]
struct ShiftedTerms {
    terms: Vec<(Vec<usize>, u64, u64)>,
}

impl ShiftedTerms {
    fn new(parts: &[usize]) -> Self {
        let l = parts.len();
        let mut acc: HashMap<Vec<usize>, (u64, u64)> = HashMap::new();
        let mut sigma = vec![0usize; l];
        let mut used = vec![false; l];
        // Fill from the last row: σ(i) ≥ i - α_i is tightest there.
        fn rec(
            i: usize,
            parts: &[usize],
            sigma: &mut Vec<usize>,
            used: &mut Vec<bool>,
            acc: &mut HashMap<Vec<usize>, (u64, u64)>,
        ) {
            if i == 0 {
                let shifted: Vec<usize> =
                    (0..parts.len()).map(|r| parts[r] + sigma[r] - r).collect();
                let entry = acc.entry(normalize(shifted)).or_default();
                if permutation_is_even(sigma) {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
                return;
            }
            let row = i - 1;
            for s in 0..parts.len() {
                if used[s] || parts[row] + s < row {
                    continue;
                }
                used[s] = true;
                sigma[row] = s;
                rec(row, parts, sigma, used, acc);
                used[s] = false;
            }
        }
        rec(l, parts, &mut sigma, &mut used, &mut acc);
        let mut terms: Vec<_> = acc.into_iter().map(|(k, (p, m))| (k, p, m)).collect();
        terms.sort();
        ShiftedTerms { terms }
    }
}

fn permutation_is_even(sigma: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

fn padded_triple(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let l = alpha.length().max(beta.length()).max(gamma.length());
    (alpha.padded(l), beta.padded(l), gamma.padded(l))
}

/// `g(α, β, γ)` as the alternating sum of contingency counts over
/// `S_ℓ × S_ℓ × S_ℓ`, `ℓ` the largest of the three lengths.
pub fn kron_via_tables(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Result<BigUint> {
    check_sizes(alpha, beta, gamma)?;
    let (a, b, c) = padded_triple(alpha, beta, gamma);
    let (ta, tb, tc) = (
        ShiftedTerms::new(&a),
        ShiftedTerms::new(&b),
        ShiftedTerms::new(&c),
    );
    let signed = |t: &ShiftedTerms| -> Vec<(Vec<usize>, i64)> {
        t.terms
            .iter()
            .map(|(k, p, m)| (k.clone(), *p as i64 - *m as i64))
            .filter(|(_, w)| *w != 0)
            .collect()
    };
    let (sa, sb, sc) = (signed(&ta), signed(&tb), signed(&tc));
    let total: BigInt = sa
        .par_iter()
        .map(|(ka, wa)| {
            let mut acc = BigInt::zero();
            for (kb, wb) in &sb {
                for (kc, wc) in &sc {
                    let count = count_tables_unsigned(ka, kb, kc);
                    if !count.is_zero() {
                        acc += BigInt::from(count) * (wa * wb * wc);
                    }
                }
            }
            acc
        })
        .sum();
    match total.sign() {
        Sign::Minus => Err(Error::InvariantViolation(format!(
            "alternating table sum for ({alpha}; {beta}; {gamma}) is negative: {total}"
        ))),
        _ => Ok(total.to_biguint().unwrap()),
    }
}

/// `g = pos - neg` with both parts counting contingency arrays: `pos` over
/// permutation triples with `sgn(σ¹σ²σ³) = +1`, `neg` over the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GappPair {
    pub pos: BigUint,
    pub neg: BigUint,
}

impl GappPair {
    pub fn value(&self) -> Result<BigUint> {
        if self.neg > self.pos {
            return Err(Error::InvariantViolation(format!(
                "GapP pair has neg {} > pos {}",
                self.neg, self.pos
            )));
        }
        Ok(&self.pos - &self.neg)
    }
}

pub fn gapp_decomposition(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
) -> Result<GappPair> {
    check_sizes(alpha, beta, gamma)?;
    let (a, b, c) = padded_triple(alpha, beta, gamma);
    let (ta, tb, tc) = (
        ShiftedTerms::new(&a),
        ShiftedTerms::new(&b),
        ShiftedTerms::new(&c),
    );
    let (pos, neg) = ta
        .terms
        .par_iter()
        .map(|(ka, pa, ma)| {
            let (mut pos, mut neg) = (BigUint::zero(), BigUint::zero());
            for (kb, pb, mb) in &tb.terms {
                for (kc, pc, mc) in &tc.terms {
                    let count = count_tables_unsigned(ka, kb, kc);
                    if count.is_zero() {
                        continue;
                    }
                    let even = pa * pb * pc + pa * mb * mc + ma * pb * mc + ma * mb * pc;
                    let odd = pa * pb * mc + pa * mb * pc + ma * pb * pc + ma * mb * mc;
                    pos += &count * BigUint::from(even);
                    neg += count * BigUint::from(odd);
                }
            }
            (pos, neg)
        })
        .reduce(
            || (BigUint::zero(), BigUint::zero()),
            |(p1, n1), (p2, n2)| (p1 + p2, n1 + n2),
        );
    Ok(GappPair { pos, neg })
}

/// True when `ℓ(x)ℓ(y) < ℓ(z)` for some assignment of the three partitions
/// to `(x, y, z)`; then `g(λ, μ, ν) = 0`.
pub fn dvir_vanishing(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    let (a, b, c) = (lambda.length(), mu.length(), nu.length());
    a * b < c || a * c < b || b * c < a
}

/// The partition-shrinking map determined by a pair `(λ, μ)`, a slack `t`
/// and a working length `ℓ`.
///
/// With `ω = λ ∪ μ`, `ρ = λ ∩ μ` and
/// `I = {i ≤ ℓ : ρ_i ≥ ω_{i+1} + t} ∪ {ℓ+1}`, row `j` is moved by
/// `-ρ_{i_j} + t(ℓ - i_j + ind_I(i_j))`, where `i_j` is the least element
/// of `I` that is at least `j` and `ind_I(i)` counts elements of `I` in
/// `[i, ℓ]` (with `ind_I(ℓ+1) = 1`). All indices here are one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    ell: usize,
    t: usize,
    omega: Partition,
    rho: Partition,
    index_set: Vec<usize>,
    offsets: Vec<i64>,
}

impl ReductionMap {
    pub fn new(lambda: &Partition, mu: &Partition, t: usize, ell: usize) -> Result<Self> {
        if lambda.length() > ell || mu.length() > ell {
            return Err(Error::InvalidInput(format!(
                "working length {ell} is shorter than ({lambda}) or ({mu})"
            )));
        }
        if let Some(i) = (0..ell).find(|&i| lambda.part(i).abs_diff(mu.part(i)) > t) {
            return Err(Error::InvalidInput(format!(
                "row {} differs by more than t = {t}; the map is undefined",
                i + 1
            )));
        }
        let omega = lambda.union(mu);
        let rho = lambda.intersect(mu);
        let mut index_set: Vec<usize> = (1..=ell)
            .filter(|&i| rho.part(i - 1) >= omega.part(i) + t)
            .collect();
        index_set.push(ell + 1);

        let ind = |i: usize| -> usize {
            if i == ell + 1 {
                1
            } else {
                index_set.iter().filter(|&&x| x >= i && x <= ell).count()
            }
        };
        let offsets = (1..=ell)
            .map(|j| {
                let ij = *index_set.iter().find(|&&x| x >= j).unwrap();
                let rho_ij = rho.part(ij - 1) as i64;
                -rho_ij + (t * (ell + ind(ij) - ij)) as i64
            })
            .collect();
        Ok(ReductionMap {
            ell,
            t,
            omega,
            rho,
            index_set,
            offsets,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn omega(&self) -> &Partition {
        &self.omega
    }

    pub fn rho(&self) -> &Partition {
        &self.rho
    }

    /// `I`, one-based and increasing; always ends with `ℓ + 1`.
    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    /// Shift applied to row `j` (one-based).
    pub fn offset(&self, j: usize) -> i64 {
        self.offsets[j - 1]
    }

    /// `φ(θ)`; defined for `θ` with at most `ℓ` parts and `ρ ⊆ θ + (t^ℓ)`.
    pub fn apply(&self, theta: &Partition) -> Result<Partition> {
        if theta.length() > self.ell {
            return Err(Error::InvalidInput(format!(
                "({theta}) has more than ℓ = {} parts",
                self.ell
            )));
        }
        if (0..self.ell).any(|i| theta.part(i) + self.t < self.rho.part(i)) {
            return Err(Error::InvalidInput(format!(
                "ρ = ({}) is not contained in ({theta}) + ({}^{})",
                self.rho, self.t, self.ell
            )));
        }
        let parts: Vec<i64> = (0..self.ell)
            .map(|i| theta.part(i) as i64 + self.offsets[i])
            .collect();
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvariantViolation(format!(
                "φ({theta}) = {parts:?} is not a partition"
            )));
        }
        Partition::new(parts.into_iter().map(|p| p as usize).collect())
    }
}

/// A reduced triple together with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub map: ReductionMap,
}

impl Reduction {
    pub fn size(&self) -> usize {
        self.lambda.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// Some row (one-based) has `|λ_row - μ_row| > t`, so `g = 0`.
    ProvablyZero {
        row: usize,
        lambda_part: usize,
        mu_part: usize,
        t: usize,
    },
    Reduced(Reduction),
}

impl fmt::Display for ReductionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionOutcome::ProvablyZero {
                row,
                lambda_part,
                mu_part,
                t,
            } => write!(
                f,
                "zero: |λ_{row} - μ_{row}| = |{lambda_part} - {mu_part}| > t = {t}"
            ),
            ReductionOutcome::Reduced(r) => {
                let set: Vec<String> = r.map.index_set().iter().map(|i| i.to_string()).collect();
                writeln!(f, "t = {}", r.map.t())?;
                writeln!(f, "ell = {}", r.map.ell())?;
                writeln!(f, "omega = {}", r.map.omega())?;
                writeln!(f, "rho = {}", r.map.rho())?;
                writeln!(f, "I = {{{}}}", set.join(","))?;
                writeln!(f, "phi(lambda) = {}", r.lambda)?;
                writeln!(f, "phi(mu) = {}", r.mu)?;
                write!(f, "phi(nu) = {}", r.nu)
            }
        }
    }
}

/// Either certifies `g(λ, μ, ν) = 0` or maps the triple to a smaller-slack
/// triple with the same coefficient. `t = n - ν₁` and `ℓ` is the largest of
/// the three lengths.
pub fn reduce(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<ReductionOutcome> {
    let n = check_sizes(lambda, mu, nu)?;
    let ell = lambda.length().max(mu.length()).max(nu.length());
    let t = n - nu.part(0);
    if let Some(i) = (0..ell).find(|&i| lambda.part(i).abs_diff(mu.part(i)) > t) {
        return Ok(ReductionOutcome::ProvablyZero {
            row: i + 1,
            lambda_part: lambda.part(i),
            mu_part: mu.part(i),
            t,
        });
    }
    let map = ReductionMap::new(lambda, mu, t, ell)?;
    let phi_lambda = map.apply(lambda)?;
    let phi_mu = map.apply(mu)?;
    let r = phi_lambda.size();
    if phi_mu.size() != r {
        return Err(Error::InvariantViolation(format!(
            "|φ(λ)| = {r} but |φ(μ)| = {}; certificate: {map:?}",
            phi_mu.size()
        )));
    }
    if r < t + nu.part(1) {
        return Err(Error::InvariantViolation(format!(
            "φ(ν) = ({} - {t}, {}) is not a partition; certificate: {map:?}",
            r,
            nu.tail()
        )));
    }
    let mut nu_parts = vec![r - t];
    nu_parts.extend_from_slice(nu.tail().parts());
    let phi_nu = Partition::new(nu_parts)?;
    Ok(ReductionOutcome::Reduced(Reduction {
        lambda: phi_lambda,
        mu: phi_mu,
        nu: phi_nu,
        map,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Tables,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Tables => "tables",
            Method::Auto => "auto",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "tables" => Ok(Method::Tables),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

/// When the auto pipeline hands the final triple to the character oracle
/// instead of the table sum: size at most `oracle_max_n` and length at
/// least `oracle_min_length`, where the `(ℓ!)³` permutation sum dominates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutoConfig {
    pub oracle_max_n: usize,
    pub oracle_min_length: usize,
}

impl Default for AutoConfig {
    fn default() -> Self {
        AutoConfig {
            oracle_max_n: 12,
            oracle_min_length: 5,
        }
    }
}

/// A computed coefficient plus a short description of the route taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigUint,
    pub route: String,
}

pub fn compute(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    method: Method,
) -> Result<BigUint> {
    Ok(compute_traced(lambda, mu, nu, method, &AutoConfig::default())?.value)
}

pub fn compute_traced(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    method: Method,
    config: &AutoConfig,
) -> Result<Evaluation> {
    check_sizes(lambda, mu, nu)?;
    let done = |value: BigUint, route: &str| {
        Ok(Evaluation {
            value,
            route: route.to_string(),
        })
    };
    match method {
        Method::Oracle => return done(kron_via_characters(lambda, mu, nu)?, "oracle"),
        Method::Tables => return done(kron_via_tables(lambda, mu, nu)?, "tables"),
        Method::Auto => {}
    }

    let (l, m, v) = assign_roles(lambda, mu, nu);
    if dvir_vanishing(l, m, v) {
        return done(BigUint::zero(), "auto: length vanishing");
    }
    let mut route = String::from("auto");
    let n = l.size();
    let (l, m, v) = match reduce(l, m, v)? {
        ReductionOutcome::ProvablyZero { .. } => {
            return done(BigUint::zero(), "auto: reduction zero")
        }
        ReductionOutcome::Reduced(r) if r.size() <= n => {
            route.push_str(&format!(
                ": reduced {n} -> {} (t = {})",
                r.size(),
                r.map.t()
            ));
            (r.lambda, r.mu, r.nu)
        }
        ReductionOutcome::Reduced(_) => {
            route.push_str(": reduction not smaller");
            (l.clone(), m.clone(), v.clone())
        }
    };
    let ell = l.length().max(m.length()).max(v.length());
    if l.size() <= config.oracle_max_n && ell >= config.oracle_min_length {
        route.push_str(" -> oracle");
        done(kron_via_characters(&l, &m, &v)?, &route)
    } else {
        route.push_str(" -> tables");
        done(kron_via_tables(&l, &m, &v)?, &route)
    }
}

/// Reorders the triple so that the member with the smallest second part
/// (ties: largest first part, then input order) comes last.
fn assign_roles<'a>(
    lambda: &'a Partition,
    mu: &'a Partition,
    nu: &'a Partition,
) -> (&'a Partition, &'a Partition, &'a Partition) {
    let all = [lambda, mu, nu];
    let pick = (0..3)
        .min_by_key(|&i| (all[i].part(1), std::cmp::Reverse(all[i].part(0)), i))
        .unwrap();
    let rest: Vec<&Partition> = (0..3).filter(|&i| i != pick).map(|i| all[i]).collect();
    (rest[0], rest[1], all[pick])
}

/// The size from which `g((n-|λ̄|, λ̄), (n-|μ̄|, μ̄), (n-|ν̄|, ν̄))` is
/// constant in `n`: with the roles sorted so that `|ν̄| ≤ |μ̄| ≤ |λ̄|`,
/// `max(λ̄₁, μ̄₁) + |ν̄| + |λ̄|`, raised if needed so that all three
/// prepended rows are valid.
pub fn stable_size(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    let mut sorted = [lambda, mu, nu];
    sorted.sort_by_key(|p| std::cmp::Reverse(p.size()));
    let [big, mid, small] = sorted;
    let n = big.part(0).max(mid.part(0)) + small.size() + big.size();
    [big, mid, small]
        .iter()
        .map(|p| p.size() + p.part(0))
        .fold(n, usize::max)
}

/// `g((n-|λ̄|, λ̄), (n-|μ̄|, μ̄), (n-|ν̄|, ν̄))` at a given `n`, or `None` if
/// a prepended row would be shorter than the row below it.
pub fn padded_kron(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
    method: Method,
) -> Result<Option<BigUint>> {
    let (Some(l), Some(m), Some(v)) = (
        lambda.with_first_row(n),
        mu.with_first_row(n),
        nu.with_first_row(n),
    ) else {
        return Ok(None);
    };
    compute(&l, &m, &v, method).map(Some)
}

/// The reduced Kronecker coefficient `ḡ(λ̄, μ̄, ν̄)`, evaluated at
/// [`stable_size`].
pub fn reduced_kron(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let n = stable_size(lambda, mu, nu);
    padded_kron(lambda, mu, nu, n, Method::Auto)?.ok_or_else(|| {
        Error::InvariantViolation(format!("stable size {n} does not admit the padded triple"))
    })
}
