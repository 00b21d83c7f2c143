//! Cochain spaces, the coboundary, the transposition action and the four
//! cochain flavors.
//!
//! A degree-n cochain is a function `G^n -> M` stored as a flat table over
//! mixed-radix tuple indices (leftmost argument most significant), with the
//! module's coordinates innermost: linear coordinate `tuple * k + i`. This
//! layout is frozen; fixtures and representative bases depend on it.

use crate::error::{Error, Result};
use crate::gmodule::{GModule, ModuleElement};
use crate::linalg::{Hnf, IntMatrix, KernelBuilder};
use crate::{SizeGuard, SplitMix64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Highest degree a cochain may have as *input* to the coboundary; `d` on a
/// degree-5 cochain is what a degree-4 cohomology computation needs.
pub const MAX_COBOUNDARY_DEGREE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Classical,
    Normalized,
    Symmetric,
    Exterior,
}

impl Flavor {
    pub const ALL: [Flavor; 4] =
        [Flavor::Classical, Flavor::Normalized, Flavor::Symmetric, Flavor::Exterior];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Classical => "classical",
            Flavor::Normalized => "normalized",
            Flavor::Symmetric => "symmetric",
            Flavor::Exterior => "exterior",
        }
    }

    /// Whether every cochain of `self` is a cochain of `target`.
    pub fn embeds_in(self, target: Flavor) -> bool {
        match (self, target) {
            (a, b) if a == b => true,
            (_, Flavor::Classical) => true,
            (Flavor::Exterior, Flavor::Symmetric) => true,
            (Flavor::Exterior, Flavor::Normalized) => true,
            _ => false,
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Flavor::Classical),
            "normalized" => Ok(Flavor::Normalized),
            "symmetric" => Ok(Flavor::Symmetric),
            "exterior" => Ok(Flavor::Exterior),
            other => Err(Error::InvalidParameter(format!("unknown flavor `{other}`"))),
        }
    }
}

/// A degree-n map `G^n -> M` as a flat value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    /// Length `|G|^degree * rank(M)`, entries reduced mod the exponents.
    values: Vec<i64>,
}

pub fn tuple_count(order: usize, n: usize) -> u64 {
    (order as u64).pow(n as u32)
}

pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub fn tuple_from_index(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0usize; n];
    for slot in t.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    t
}

/// Per-coordinate exponents of the cochain space `C^n(G, M)`.
pub fn space_caps(m: &GModule, n: usize) -> Vec<i64> {
    let tuples = tuple_count(m.group().order(), n) as usize;
    let mut caps = Vec::with_capacity(tuples * m.rank());
    for _ in 0..tuples {
        caps.extend_from_slice(m.exponents());
    }
    caps
}

pub fn space_dim(m: &GModule, n: usize) -> u64 {
    tuple_count(m.group().order(), n) * m.rank() as u64
}

pub(crate) fn exponent_lcm(m: &GModule) -> Result<i64> {
    let mut l = 1i64;
    for &d in m.exponents() {
        l = crate::linalg::lcm_checked(l, d)?;
    }
    Ok(l)
}

impl Cochain {
    pub fn zero(m: &GModule, degree: usize) -> Self {
        Cochain { degree, values: vec![0; space_dim(m, degree) as usize] }
    }

    pub fn from_values(m: &GModule, degree: usize, values: Vec<i64>) -> Result<Self> {
        if values.len() as u64 != space_dim(m, degree) {
            return Err(Error::DimensionMismatch(format!(
                "cochain of degree {degree} needs {} values, got {}",
                space_dim(m, degree),
                values.len()
            )));
        }
        let k = m.rank();
        let values =
            values.iter().enumerate().map(|(c, &v)| v.rem_euclid(m.exponents()[c % k])).collect();
        Ok(Cochain { degree, values })
    }

    pub fn from_fn(
        m: &GModule,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> ModuleElement,
    ) -> Self {
        let order = m.group().order();
        let tuples = tuple_count(order, degree) as usize;
        let k = m.rank();
        let mut values = vec![0i64; tuples * k];
        for t in 0..tuples {
            let tuple = tuple_from_index(order, degree, t);
            let e = f(&tuple);
            values[t * k..(t + 1) * k].copy_from_slice(&e.residues);
        }
        Cochain { degree, values }
    }

    pub fn random(m: &GModule, degree: usize, rng: &mut SplitMix64) -> Self {
        let caps = space_caps(m, degree);
        let values = caps.iter().map(|&d| rng.below(d as u64) as i64).collect();
        Cochain { degree, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn entry(&self, m: &GModule, tuple: &[usize]) -> ModuleElement {
        debug_assert_eq!(tuple.len(), self.degree);
        let k = m.rank();
        let t = tuple_index(m.group().order(), tuple);
        ModuleElement { residues: self.values[t * k..(t + 1) * k].to_vec() }
    }

    pub fn set_entry(&mut self, m: &GModule, tuple: &[usize], e: &ModuleElement) {
        let k = m.rank();
        let t = tuple_index(m.group().order(), tuple);
        self.values[t * k..(t + 1) * k].copy_from_slice(&e.residues);
    }

    pub fn add(&self, m: &GModule, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.degree, other.degree);
        let k = m.rank();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(c, (&a, &b))| (a + b).rem_euclid(m.exponents()[c % k]))
            .collect();
        Cochain { degree: self.degree, values }
    }

    pub fn sub(&self, m: &GModule, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.degree, other.degree);
        let k = m.rank();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(c, (&a, &b))| (a - b).rem_euclid(m.exponents()[c % k]))
            .collect();
        Cochain { degree: self.degree, values }
    }

    pub fn scale(&self, m: &GModule, c: i64) -> Cochain {
        let k = m.rank();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(t, &a)| (a * c).rem_euclid(m.exponents()[t % k]))
            .collect();
        Cochain { degree: self.degree, values }
    }

    pub(crate) fn from_raw(degree: usize, values: Vec<i64>) -> Self {
        Cochain { degree, values }
    }
}

/// The coboundary `d^n : C^n -> C^{n+1}` evaluated pointwise:
///
/// `(d phi)(g_0,...,g_n) = g_0.phi(g_1,...,g_n)
///   + sum_{i=1}^{n} (-1)^i phi(g_0,...,g_{i-1} g_i,...,g_n)
///   + (-1)^{n+1} phi(g_0,...,g_{n-1})`
pub fn coboundary(m: &GModule, phi: &Cochain, guard: &SizeGuard) -> Result<Cochain> {
    let n = phi.degree();
    if n > MAX_COBOUNDARY_DEGREE {
        return Err(Error::DegreeUnsupported { degree: n, max: MAX_COBOUNDARY_DEGREE });
    }
    guard.check(space_dim(m, n + 1))?;
    let values = coboundary_vec(m, n, phi.values());
    Ok(Cochain { degree: n + 1, values })
}

/// Dense coboundary on a raw value vector (no guard).
pub fn coboundary_vec(m: &GModule, n: usize, values: &[i64]) -> Vec<i64> {
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let out_tuples = tuple_count(order, n + 1) as usize;
    let mut out = vec![0i64; out_tuples * k];
    let mut tuple = vec![0usize; n + 1];
    let mut merged = vec![0usize; n];
    for w in 0..out_tuples {
        {
            let mut idx = w;
            for slot in tuple.iter_mut().rev() {
                *slot = idx % order;
                idx /= order;
            }
        }
        let acc = &mut out[w * k..(w + 1) * k];

        // g_0 . phi(g_1, ..., g_n)
        let tail_idx = tuple_index(order, &tuple[1..]);
        let tail = &values[tail_idx * k..tail_idx * k + k];
        let g0 = tuple[0];
        if m.is_trivial_action() {
            for i in 0..k {
                acc[i] += tail[i];
            }
        } else {
            let mat = m.action_matrix(g0);
            for i in 0..k {
                let mut s = 0i64;
                for j in 0..k {
                    s += mat[i * k + j] * tail[j];
                }
                acc[i] += s;
            }
        }

        // (-1)^i phi(..., g_{i-1} g_i, ...)
        for i in 1..=n {
            merged[..i - 1].copy_from_slice(&tuple[..i - 1]);
            merged[i - 1] = g.mul(tuple[i - 1], tuple[i]);
            merged[i..].copy_from_slice(&tuple[i + 1..]);
            let idx = tuple_index(order, &merged);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let src = &values[idx * k..idx * k + k];
            for c in 0..k {
                acc[c] += sign * src[c];
            }
        }

        // (-1)^{n+1} phi(g_0, ..., g_{n-1})
        let head_idx = tuple_index(order, &tuple[..n]);
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        let src = &values[head_idx * k..head_idx * k + k];
        for c in 0..k {
            acc[c] += sign * src[c];
        }

        for c in 0..k {
            acc[c] = acc[c].rem_euclid(m.exponents()[c]);
        }
    }
    out
}

/// Coboundary of a sparse cochain, by scattering each support point into the
/// finitely many target tuples that reference it. Exact on a basis, so it
/// decides `d(d phi) = 0` for *all* phi by linearity without materializing
/// any matrix.
pub fn coboundary_sparse(
    m: &GModule,
    n: usize,
    sparse: &BTreeMap<usize, Vec<i64>>,
) -> BTreeMap<usize, Vec<i64>> {
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let mut out: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    let mut w = vec![0usize; n + 1];
    let mut contrib = vec![0i64; k];
    for (&u_idx, v) in sparse {
        let u = tuple_from_index(order, n, u_idx);
        // w = (g, u): contributes g . v.
        for g0 in 0..order {
            w[0] = g0;
            w[1..].copy_from_slice(&u);
            if m.is_trivial_action() {
                contrib.copy_from_slice(v);
            } else {
                let mat = m.action_matrix(g0);
                for i in 0..k {
                    let mut s = 0i64;
                    for j in 0..k {
                        s += mat[i * k + j] * v[j];
                    }
                    contrib[i] = s;
                }
            }
            scatter(m, &mut out, tuple_index(order, &w), &contrib);
        }
        // Splits: merged_i(w) = u fixes all of w except the adjacent pair
        // multiplying to u[i-1].
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for a in 0..order {
                w[..i - 1].copy_from_slice(&u[..i - 1]);
                w[i - 1] = a;
                w[i] = g.mul(g.inv(a), u[i - 1]);
                w[i + 1..].copy_from_slice(&u[i..]);
                for c in 0..k {
                    contrib[c] = sign * v[c];
                }
                scatter(m, &mut out, tuple_index(order, &w), &contrib);
            }
        }
        // w = (u, g): contributes (-1)^{n+1} v.
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for gl in 0..order {
            w[..n].copy_from_slice(&u);
            w[n] = gl;
            for c in 0..k {
                contrib[c] = sign * v[c];
            }
            scatter(m, &mut out, tuple_index(order, &w), &contrib);
        }
    }
    out.retain(|_, v| v.iter().any(|&x| x != 0));
    out
}

fn scatter(m: &GModule, out: &mut BTreeMap<usize, Vec<i64>>, idx: usize, contrib: &[i64]) {
    let k = m.rank();
    let slot = out.entry(idx).or_insert_with(|| vec![0i64; k]);
    for c in 0..k {
        slot[c] = (slot[c] + contrib[c]).rem_euclid(m.exponents()[c]);
    }
}

/// Decides `d(d phi) = 0` for *every* degree-n cochain, exactly, by pushing
/// each basis cochain through `d` twice. Linearity makes the basis check
/// universal; flat accumulators with dirty lists keep it fast enough for
/// `|G| = 9` at degree 4. Returns the first failing basis coordinate.
pub fn coboundary_composite_witness(m: &GModule, n: usize, guard: &SizeGuard) -> Result<Option<usize>> {
    if n + 1 > MAX_COBOUNDARY_DEGREE {
        return Err(Error::DegreeUnsupported { degree: n, max: MAX_COBOUNDARY_DEGREE - 1 });
    }
    guard.check(space_dim(m, n + 2))?;
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let dim0 = space_dim(m, n) as usize;
    let dim1 = space_dim(m, n + 1) as usize;
    let dim2 = space_dim(m, n + 2) as usize;
    let mut acc1 = vec![0i64; dim1];
    let mut acc2 = vec![0i64; dim2];
    let mut dirty1: Vec<usize> = Vec::new();
    let mut dirty2: Vec<usize> = Vec::new();

    // Scatters value vec `v` at source tuple `u` (degree deg) into `acc`,
    // recording touched tuple indices.
    fn scatter_point(
        m: &GModule,
        g: &crate::FiniteGroup,
        deg: usize,
        u: &[usize],
        v: &[i64],
        acc: &mut [i64],
        dirty: &mut Vec<usize>,
    ) {
        let order = g.order();
        let k = m.rank();
        let mut w = vec![0usize; deg + 1];
        let touch = |acc: &mut [i64], dirty: &mut Vec<usize>, idx: usize, contrib: &[i64]| {
            let base = idx * k;
            if acc[base..base + k].iter().all(|&x| x == 0) {
                dirty.push(idx);
            }
            for c in 0..k {
                acc[base + c] += contrib[c];
            }
        };
        let mut contrib = vec![0i64; k];
        for g0 in 0..order {
            w[0] = g0;
            w[1..].copy_from_slice(u);
            if m.is_trivial_action() {
                contrib.copy_from_slice(v);
            } else {
                let mat = m.action_matrix(g0);
                for i in 0..k {
                    let mut s = 0i64;
                    for j in 0..k {
                        s += mat[i * k + j] * v[j];
                    }
                    contrib[i] = s;
                }
            }
            touch(acc, dirty, tuple_index(order, &w), &contrib);
        }
        for i in 1..=deg {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for c in 0..k {
                contrib[c] = sign * v[c];
            }
            for a in 0..order {
                w[..i - 1].copy_from_slice(&u[..i - 1]);
                w[i - 1] = a;
                w[i] = g.mul(g.inv(a), u[i - 1]);
                w[i + 1..].copy_from_slice(&u[i..]);
                touch(acc, dirty, tuple_index(order, &w), &contrib);
            }
        }
        let sign = if (deg + 1) % 2 == 0 { 1 } else { -1 };
        for c in 0..k {
            contrib[c] = sign * v[c];
        }
        for gl in 0..order {
            w[..deg].copy_from_slice(u);
            w[deg] = gl;
            touch(acc, dirty, tuple_index(order, &w), &contrib);
        }
    }

    let mut unit = vec![0i64; k];
    let mut v1 = vec![0i64; k];
    for basis in 0..dim0 {
        let (t, c) = (basis / k, basis % k);
        let u = tuple_from_index(order, n, t);
        unit.iter_mut().for_each(|x| *x = 0);
        unit[c] = 1;
        scatter_point(m, &g, n, &u, &unit, &mut acc1, &mut dirty1);
        // A slot that cancels to zero and is touched again gets pushed
        // twice; processing it twice would double its contribution.
        dirty1.sort_unstable();
        dirty1.dedup();
        for &t1 in dirty1.iter() {
            for cc in 0..k {
                v1[cc] = acc1[t1 * k + cc].rem_euclid(m.exponents()[cc]);
            }
            if v1.iter().any(|&x| x != 0) {
                let u1 = tuple_from_index(order, n + 1, t1);
                scatter_point(m, &g, n + 1, &u1, &v1, &mut acc2, &mut dirty2);
            }
        }
        dirty2.sort_unstable();
        dirty2.dedup();
        let mut ok = true;
        for &t2 in &dirty2 {
            for cc in 0..k {
                if acc2[t2 * k + cc].rem_euclid(m.exponents()[cc]) != 0 {
                    ok = false;
                }
                acc2[t2 * k + cc] = 0;
            }
        }
        for &t1 in &dirty1 {
            for cc in 0..k {
                acc1[t1 * k + cc] = 0;
            }
        }
        dirty1.clear();
        dirty2.clear();
        if !ok {
            return Ok(Some(basis));
        }
    }
    Ok(None)
}

/// The transposition action on degree-n cochains:
///
/// - `i = 1`: `(tau_1 phi)(g_1,...) = -g_1 . phi(g_1^{-1}, g_1 g_2, g_3,...)`
///   (for `n = 1` the clause applies with no trailing arguments),
/// - `1 < i < n`: `-phi(..., g_{i-1} g_i, g_i^{-1}, g_i g_{i+1}, ...)`,
/// - `i = n`: `-phi(g_1, ..., g_{n-1} g_n, g_n^{-1})`.
pub fn tau(m: &GModule, i: usize, phi: &Cochain) -> Result<Cochain> {
    let n = phi.degree();
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidParameter(format!("tau index {i} out of range for degree {n}")));
    }
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let tuples = tuple_count(order, n) as usize;
    let mut out = vec![0i64; tuples * k];
    let mut src_tuple = vec![0usize; n];
    for t in 0..tuples {
        let tuple = tuple_from_index(order, n, t);
        tau_source_tuple(&g, i, &tuple, &mut src_tuple);
        let s = tuple_index(order, &src_tuple);
        let src = &phi.values[s * k..s * k + k];
        let acc = &mut out[t * k..t * k + k];
        if i == 1 && !m.is_trivial_action() {
            let mat = m.action_matrix(tuple[0]);
            for c in 0..k {
                let mut v = 0i64;
                for j in 0..k {
                    v += mat[c * k + j] * src[j];
                }
                acc[c] = (-v).rem_euclid(m.exponents()[c]);
            }
        } else {
            for c in 0..k {
                acc[c] = (-src[c]).rem_euclid(m.exponents()[c]);
            }
        }
    }
    Ok(Cochain { degree: n, values: out })
}

/// Writes the argument tuple that `tau_i` reads from.
fn tau_source_tuple(g: &crate::FiniteGroup, i: usize, tuple: &[usize], out: &mut [usize]) {
    let n = tuple.len();
    out.copy_from_slice(tuple);
    if i == 1 {
        out[0] = g.inv(tuple[0]);
        if n >= 2 {
            out[1] = g.mul(tuple[0], tuple[1]);
        }
    } else if i < n {
        out[i - 2] = g.mul(tuple[i - 2], tuple[i - 1]);
        out[i - 1] = g.inv(tuple[i - 1]);
        out[i] = g.mul(tuple[i - 1], tuple[i]);
    } else {
        out[n - 2] = g.mul(tuple[n - 2], tuple[n - 1]);
        out[n - 1] = g.inv(tuple[n - 1]);
    }
}

/// Flavor membership. Degree 0 is symmetric and normalized by convention.
pub fn is_member(m: &GModule, phi: &Cochain, flavor: Flavor) -> bool {
    match flavor {
        Flavor::Classical => true,
        Flavor::Normalized => is_normalized(m, phi),
        Flavor::Symmetric => is_symmetric(m, phi),
        Flavor::Exterior => is_normalized(m, phi) && is_symmetric(m, phi),
    }
}

fn is_normalized(m: &GModule, phi: &Cochain) -> bool {
    let order = m.group().order();
    let n = phi.degree();
    let k = m.rank();
    let tuples = tuple_count(order, n) as usize;
    for t in 0..tuples {
        let tuple = tuple_from_index(order, n, t);
        if tuple.contains(&crate::group::FiniteGroup::IDENTITY)
            && phi.values[t * k..t * k + k].iter().any(|&v| v != 0)
        {
            return false;
        }
    }
    true
}

fn is_symmetric(m: &GModule, phi: &Cochain) -> bool {
    let n = phi.degree();
    (1..=n).all(|i| tau(m, i, phi).expect("index in range") == *phi)
}

/// True when `phi(g_1,...,g_n) = 0` whenever `g_{i+1} = g_i^{-1}` for some
/// adjacent pair. For exterior cochains of degree >= 2 this always holds;
/// for normalized cocycles it is an exact symmetry criterion.
pub fn vanishes_on_adjacent_inverses(m: &GModule, phi: &Cochain) -> bool {
    let g = m.group();
    let order = g.order();
    let n = phi.degree();
    let k = m.rank();
    if n < 2 {
        return true;
    }
    let tuples = tuple_count(order, n) as usize;
    for t in 0..tuples {
        let tuple = tuple_from_index(order, n, t);
        let adjacent = (0..n - 1).any(|i| tuple[i + 1] == g.inv(tuple[i]));
        if adjacent && phi.values[t * k..t * k + k].iter().any(|&v| v != 0) {
            return false;
        }
    }
    true
}

/// Adds the linear conditions that cut the flavor subgroup out of `C^n`,
/// with column indices shifted by `offset`.
pub(crate) fn add_flavor_conditions(
    m: &GModule,
    n: usize,
    flavor: Flavor,
    kb: &mut KernelBuilder,
    offset: usize,
) {
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let tuples = tuple_count(order, n) as usize;
    if n == 0 {
        return;
    }
    let normalized = matches!(flavor, Flavor::Normalized | Flavor::Exterior);
    let symmetric = matches!(flavor, Flavor::Symmetric | Flavor::Exterior);
    if normalized {
        for t in 0..tuples {
            let tuple = tuple_from_index(order, n, t);
            if tuple.contains(&crate::group::FiniteGroup::IDENTITY) {
                for c in 0..k {
                    kb.add_sparse(&[(offset + t * k + c, 1)], m.exponents()[c]);
                }
            }
        }
    }
    if symmetric {
        let mut src_tuple = vec![0usize; n];
        let mut row: Vec<(usize, i64)> = Vec::with_capacity(k + 1);
        for i in 1..=n {
            for t in 0..tuples {
                let tuple = tuple_from_index(order, n, t);
                tau_source_tuple(&g, i, &tuple, &mut src_tuple);
                let s = tuple_index(order, &src_tuple);
                for c in 0..k {
                    row.clear();
                    // (tau_i phi - phi)(tuple) = 0
                    if i == 1 && !m.is_trivial_action() {
                        let mat = m.action_matrix(tuple[0]);
                        for j in 0..k {
                            if mat[c * k + j] != 0 {
                                row.push((offset + s * k + j, -mat[c * k + j]));
                            }
                        }
                    } else {
                        row.push((offset + s * k + c, -1));
                    }
                    row.push((offset + t * k + c, -1));
                    kb.add_sparse(&row, m.exponents()[c]);
                }
            }
        }
    }
}

/// Canonical lattice of the flavor subgroup inside `C^n`, over the space
/// caps.
pub fn subgroup_lattice(
    m: &GModule,
    n: usize,
    flavor: Flavor,
    guard: &SizeGuard,
) -> Result<Hnf> {
    guard.check(space_dim(m, n))?;
    let dim = space_dim(m, n) as usize;
    let caps = space_caps(m, n);
    let l = exponent_lcm(m)?;
    if matches!(flavor, Flavor::Classical) || n == 0 {
        let mut h = Hnf::with_caps(caps);
        let mut unit = vec![0i64; dim];
        for i in 0..dim {
            unit[i] = 1;
            h.insert(&mut unit);
            unit[i] = 0;
        }
        h.canonicalize();
        return Ok(h);
    }
    let mut kb = KernelBuilder::new(dim, l);
    add_flavor_conditions(m, n, flavor, &mut kb, 0);
    kb.kernel(&caps)
}

/// Generators of the flavor subgroup as columns of an integer matrix.
pub fn subgroup_embedding(
    m: &GModule,
    n: usize,
    flavor: Flavor,
    guard: &SizeGuard,
) -> Result<IntMatrix> {
    let lattice = subgroup_lattice(m, n, flavor, guard)?;
    let dim = lattice.dim();
    Ok(IntMatrix::from_fn(dim, dim, |i, j| lattice.rows()[j][i]))
}

/// The matrix of `d^n` in the tuple-index basis tensor module coordinates.
pub fn coboundary_matrix(m: &GModule, n: usize, guard: &SizeGuard) -> Result<IntMatrix> {
    if n > MAX_COBOUNDARY_DEGREE {
        return Err(Error::DegreeUnsupported { degree: n, max: MAX_COBOUNDARY_DEGREE });
    }
    let rows = space_dim(m, n + 1);
    let cols = space_dim(m, n);
    guard.check(rows)?;
    guard.check(rows.saturating_mul(cols))?;
    let mut out = IntMatrix::zero(rows as usize, cols as usize);
    for_each_coboundary_row(m, n, |r, row| {
        for &(c, coeff) in row {
            let v = out.get(r, c) + coeff;
            out.set(r, c, v);
        }
    });
    Ok(out)
}

/// Streams the rows of the `d^n` matrix as sparse (column, coefficient)
/// lists; row `r` lives modulo `exponents[r % k]`. Column entries may repeat
/// and must be accumulated by the consumer.
pub(crate) fn for_each_coboundary_row(
    m: &GModule,
    n: usize,
    mut f: impl FnMut(usize, &[(usize, i64)]),
) {
    let g = m.group().clone();
    let order = g.order();
    let k = m.rank();
    let out_tuples = tuple_count(order, n + 1) as usize;
    let mut tuple = vec![0usize; n + 1];
    let mut merged = vec![0usize; n];
    let mut row: Vec<(usize, i64)> = Vec::with_capacity((n + 2) * k);
    for w in 0..out_tuples {
        {
            let mut idx = w;
            for slot in tuple.iter_mut().rev() {
                *slot = idx % order;
                idx /= order;
            }
        }
        let tail_idx = tuple_index(order, &tuple[1..]);
        let head_idx = tuple_index(order, &tuple[..n]);
        let g0 = tuple[0];
        let last_sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for c in 0..k {
            row.clear();
            if m.is_trivial_action() {
                row.push((tail_idx * k + c, 1));
            } else {
                let mat = m.action_matrix(g0);
                for j in 0..k {
                    if mat[c * k + j] != 0 {
                        row.push((tail_idx * k + j, mat[c * k + j]));
                    }
                }
            }
            for i in 1..=n {
                merged[..i - 1].copy_from_slice(&tuple[..i - 1]);
                merged[i - 1] = g.mul(tuple[i - 1], tuple[i]);
                merged[i..].copy_from_slice(&tuple[i + 1..]);
                let idx = tuple_index(order, &merged);
                row.push((idx * k + c, if i % 2 == 0 { 1 } else { -1 }));
            }
            row.push((head_idx * k + c, last_sign));
            f(w * k + c, &row);
        }
    }
}
