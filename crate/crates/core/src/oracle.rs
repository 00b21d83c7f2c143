//! Brute-force ground truth by exhaustive enumeration.
//!
//! Everything here is deliberately independent of the linear-algebra engine:
//! the coboundary, the transposition action and the quotient bookkeeping are
//! reimplemented from their definitions on raw value tables, and invariant
//! factors are read off by counting element orders in explicitly enumerated
//! cocycle/coboundary sets. Agreement between this module and the engine is
//! therefore a genuine cross-check, not a tautology.

use crate::cochain::{Cochain, Flavor};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::linalg::AbGroupInvariants;
use std::collections::HashSet;

/// Cap on the number of enumerated cochains (`|M|^(|G|^n)` states).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_enumeration: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_enumeration: 10_000_000 }
    }
}

/// Coordinate exponents of the full value table of a degree-n cochain.
fn table_caps(m: &GModule, n: usize) -> Vec<i64> {
    let tuples = (m.group().order() as usize).pow(n as u32);
    let mut caps = Vec::with_capacity(tuples * m.rank());
    for _ in 0..tuples {
        caps.extend_from_slice(m.exponents());
    }
    caps
}

fn state_count(caps: &[i64], budget: &OracleBudget) -> Result<u64> {
    let mut total: u128 = 1;
    for &c in caps {
        total = total.saturating_mul(c as u128);
        if total > budget.max_enumeration as u128 {
            return Err(Error::BudgetExceeded { needed: total, budget: budget.max_enumeration });
        }
    }
    Ok(total as u64)
}

/// Odometer over a mixed-radix value table.
struct TableIter {
    caps: Vec<i64>,
    current: Vec<i64>,
    started: bool,
}

impl TableIter {
    fn new(caps: Vec<i64>) -> Self {
        let len = caps.len();
        TableIter { caps, current: vec![0; len], started: false }
    }
}

impl Iterator for TableIter {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let mut pos = self.caps.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.caps[pos] {
                return Some(self.current.clone());
            }
            self.current[pos] = 0;
        }
    }
}

fn radix_index(order: usize, tuple: &[usize]) -> usize {
    let mut idx = 0;
    for &g in tuple {
        idx = idx * order + g;
    }
    idx
}

fn radix_decode(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0usize; n];
    for pos in (0..n).rev() {
        t[pos] = idx % order;
        idx /= order;
    }
    t
}

/// Pointwise coboundary straight from the definition.
fn apply_d(m: &GModule, n: usize, values: &[i64]) -> Vec<i64> {
    let g = m.group();
    let order = g.order();
    let k = m.rank();
    let out_tuples = (order as usize).pow((n + 1) as u32);
    let mut out = vec![0i64; out_tuples * k];
    for w in 0..out_tuples {
        let args = radix_decode(order, n + 1, w);
        let mut acc = vec![0i64; k];
        // g_0 . phi(g_1..g_n)
        let first = radix_index(order, &args[1..]);
        let mat = m.action_matrix(args[0]);
        for i in 0..k {
            for j in 0..k {
                acc[i] += mat[i * k + j] * values[first * k + j];
            }
        }
        // alternating merged terms
        for i in 1..=n {
            let mut merged: Vec<usize> = Vec::with_capacity(n);
            merged.extend_from_slice(&args[..i - 1]);
            merged.push(g.mul(args[i - 1], args[i]));
            merged.extend_from_slice(&args[i + 1..]);
            let idx = radix_index(order, &merged);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for c in 0..k {
                acc[c] += sign * values[idx * k + c];
            }
        }
        // trailing term
        let last = radix_index(order, &args[..n]);
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for c in 0..k {
            acc[c] += sign * values[last * k + c];
        }
        for c in 0..k {
            out[w * k + c] = acc[c].rem_euclid(m.exponents()[c]);
        }
    }
    out
}

/// The transposition action straight from its case formula.
fn apply_tau(m: &GModule, i: usize, n: usize, values: &[i64]) -> Vec<i64> {
    let g = m.group();
    let order = g.order();
    let k = m.rank();
    let tuples = (order as usize).pow(n as u32);
    let mut out = vec![0i64; tuples * k];
    for t in 0..tuples {
        let args = radix_decode(order, n, t);
        let mut src = args.clone();
        if i == 1 {
            src[0] = g.inv(args[0]);
            if n >= 2 {
                src[1] = g.mul(args[0], args[1]);
            }
        } else if i < n {
            src[i - 2] = g.mul(args[i - 2], args[i - 1]);
            src[i - 1] = g.inv(args[i - 1]);
            src[i] = g.mul(args[i - 1], args[i]);
        } else {
            src[n - 2] = g.mul(args[n - 2], args[n - 1]);
            src[n - 1] = g.inv(args[n - 1]);
        }
        let s = radix_index(order, &src);
        if i == 1 {
            let mat = m.action_matrix(args[0]);
            for c in 0..k {
                let mut v = 0i64;
                for j in 0..k {
                    v += mat[c * k + j] * values[s * k + j];
                }
                out[t * k + c] = (-v).rem_euclid(m.exponents()[c]);
            }
        } else {
            for c in 0..k {
                out[t * k + c] = (-values[s * k + c]).rem_euclid(m.exponents()[c]);
            }
        }
    }
    out
}

fn in_flavor(m: &GModule, n: usize, flavor: Flavor, values: &[i64]) -> bool {
    if n == 0 {
        return true;
    }
    let order = m.group().order();
    let k = m.rank();
    let normalized = || {
        let tuples = (order as usize).pow(n as u32);
        (0..tuples).all(|t| {
            let args = radix_decode(order, n, t);
            !args.contains(&0) || values[t * k..t * k + k].iter().all(|&v| v == 0)
        })
    };
    let symmetric = || (1..=n).all(|i| apply_tau(m, i, n, values) == values);
    match flavor {
        Flavor::Classical => true,
        Flavor::Normalized => normalized(),
        Flavor::Symmetric => symmetric(),
        Flavor::Exterior => normalized() && symmetric(),
    }
}

/// Cohomology by full enumeration: all flavor n-cochains are filtered down
/// to cocycles, all flavor (n-1)-cochains are pushed through `d` to get the
/// coboundary set, and the quotient's invariant factors are reconstructed
/// from element-order counts.
pub fn enumerate_cohomology(
    m: &GModule,
    n: usize,
    flavor: Flavor,
    budget: &OracleBudget,
) -> Result<AbGroupInvariants> {
    let caps = table_caps(m, n);
    state_count(&caps, budget)?;

    let mut cocycles: Vec<Vec<i64>> = Vec::new();
    for v in TableIter::new(caps.clone()) {
        if in_flavor(m, n, flavor, &v) && apply_d(m, n, &v).iter().all(|&x| x == 0) {
            cocycles.push(v);
        }
    }

    let mut boundaries: HashSet<Vec<i64>> = HashSet::new();
    if n == 0 {
        boundaries.insert(vec![0i64; caps.len()]);
    } else {
        let src_caps = table_caps(m, n - 1);
        state_count(&src_caps, budget)?;
        for v in TableIter::new(src_caps) {
            if in_flavor(m, n - 1, flavor, &v) {
                boundaries.insert(apply_d(m, n - 1, &v));
            }
        }
    }

    debug_assert!(boundaries.iter().all(|b| cocycles.contains(b)));
    let factors = invariants_by_counting(m, &cocycles, &boundaries)?;
    AbGroupInvariants::from_factors(factors)
}

/// Invariant factors of `cocycles / boundaries` from torsion counts: for
/// each prime p, the number of classes killed by p^j determines how many
/// factors have p-valuation >= j.
fn invariants_by_counting(
    m: &GModule,
    cocycles: &[Vec<i64>],
    boundaries: &HashSet<Vec<i64>>,
) -> Result<Vec<i64>> {
    if cocycles.len() % boundaries.len() != 0 {
        return Err(Error::InternalInconsistency(
            "boundary count does not divide cocycle count".into(),
        ));
    }
    let group_order = cocycles.len() / boundaries.len();
    let k = m.rank();
    let scale = |v: &[i64], t: i64| -> Vec<i64> {
        v.iter().enumerate().map(|(c, &x)| (x * t).rem_euclid(m.exponents()[c % k])).collect()
    };

    let mut primes: Vec<i64> = Vec::new();
    let mut rest = group_order as i64;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }

    let mut exponents_by_prime: Vec<(i64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        // counts[j] = #cocycles z with p^j z a boundary.
        let mut counts: Vec<u64> = vec![boundaries.len() as u64];
        let mut pj: i64 = 1;
        loop {
            pj *= p;
            let c = cocycles.iter().filter(|z| boundaries.contains(&scale(z, pj))).count() as u64;
            counts.push(c);
            if c == cocycles.len() as u64 {
                break;
            }
        }
        // lambda_j = #factors with p-valuation >= j.
        let mut lambdas: Vec<u32> = Vec::new();
        for j in 1..counts.len() {
            debug_assert_eq!(counts[j] % counts[j - 1], 0);
            let ratio = counts[j] / counts[j - 1];
            let mut lam = 0u32;
            let mut r = ratio;
            while r > 1 {
                debug_assert_eq!(r % p as u64, 0);
                r /= p as u64;
                lam += 1;
            }
            lambdas.push(lam);
        }
        // Conjugate partition: p-exponent of the i-th largest factor.
        let max_factors = lambdas.first().copied().unwrap_or(0);
        let mut exps = Vec::new();
        for i in 0..max_factors {
            let e = lambdas.iter().take_while(|&&lam| lam > i).count() as u32;
            exps.push(e);
        }
        exponents_by_prime.push((p, exps));
    }

    let rank = exponents_by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut f: i64 = 1;
        for (p, exps) in &exponents_by_prime {
            if let Some(&e) = exps.get(i) {
                f *= p.pow(e);
            }
        }
        factors.push(f);
    }
    factors.reverse();
    Ok(factors)
}

/// Tries every flavor (n-1)-cochain as a coboundary witness for `phi`.
pub fn exhaustive_coboundary(
    m: &GModule,
    phi: &Cochain,
    flavor: Flavor,
    budget: &OracleBudget,
) -> Result<Option<Cochain>> {
    let n = phi.degree();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "degree-0 cochains have no coboundary witnesses".into(),
        ));
    }
    let src_caps = table_caps(m, n - 1);
    state_count(&src_caps, budget)?;
    for v in TableIter::new(src_caps) {
        if in_flavor(m, n - 1, flavor, &v) && apply_d(m, n - 1, &v) == phi.values() {
            return Ok(Some(Cochain::from_values(m, n - 1, v)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteGroup;
    use std::sync::Arc;

    fn trivial(n: usize, d: i64) -> GModule {
        GModule::trivial(Arc::new(FiniteGroup::cyclic(n).unwrap()), vec![d]).unwrap()
    }

    #[test]
    fn classical_z2_z2_low_degrees() {
        // Golden values, frozen from this very enumeration.
        let m = trivial(2, 2);
        let budget = OracleBudget::default();
        for n in 1..=3 {
            let h = enumerate_cohomology(&m, n, Flavor::Classical, &budget).unwrap();
            assert_eq!(h.factors, vec![2], "H^{n}(Z/2, Z/2)");
        }
    }

    #[test]
    fn coprime_coefficients_vanish() {
        let m = trivial(2, 3);
        let h = enumerate_cohomology(&m, 1, Flavor::Classical, &OracleBudget::default()).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn trivial_group_everything_vanishes() {
        let m = trivial(1, 4);
        for n in 1..=3 {
            for flavor in Flavor::ALL {
                let h = enumerate_cohomology(&m, n, flavor, &OracleBudget::default()).unwrap();
                assert!(h.is_trivial());
            }
        }
    }

    #[test]
    fn degree_zero_is_invariants() {
        let m = trivial(3, 4);
        let h = enumerate_cohomology(&m, 0, Flavor::Classical, &OracleBudget::default()).unwrap();
        assert_eq!(h.factors, vec![4]);
    }

    #[test]
    fn budget_is_enforced() {
        let m = trivial(3, 3);
        let tiny = OracleBudget { max_enumeration: 10 };
        assert!(matches!(
            enumerate_cohomology(&m, 2, Flavor::Classical, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn z4_classifying_cocycle_is_not_a_coboundary() {
        let m = trivial(2, 2);
        let mut f = Cochain::zero(&m, 2);
        f.set_entry(&m, &[1, 1], &m.reduce(&[1]));
        let w =
            exhaustive_coboundary(&m, &f, Flavor::Classical, &OracleBudget::default()).unwrap();
        assert!(w.is_none());
        // Zero always has the zero witness.
        let z = Cochain::zero(&m, 2);
        let w = exhaustive_coboundary(&m, &z, Flavor::Classical, &OracleBudget::default())
            .unwrap()
            .unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn multi_factor_counting() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let m = GModule::trivial(g, vec![2, 2]).unwrap();
        let h = enumerate_cohomology(&m, 0, Flavor::Classical, &OracleBudget::default()).unwrap();
        assert_eq!(h.factors, vec![2, 2]);
    }
}
