//! Bounded-entry lattice arithmetic for subgroups of finite abelian groups.
//!
//! Every lattice handled here contains a known "cap" sublattice
//! `cap[0]*e_0, ..., cap[m-1]*e_{m-1}`, which keeps all entries reduced and
//! the whole pipeline in fixed-width integers. Bases are kept in upper
//! triangular Hermite form: `rows[i]` has its leading positive entry at
//! coordinate `i` and that entry divides `cap[i]`.
//!
//! Three operations are built on this form:
//! - [`Hnf::insert`] folds a vector into the basis (incremental HNF),
//! - [`KernelBuilder`] computes the full solution lattice of a system of
//!   simultaneous congruences by triangular inversion of the condition
//!   lattice: if the condition rows span `R` with `R ⊇ l*Z^m`, then
//!   `l*R^{-1}` is integral and its columns generate the kernel,
//! - [`quotient_invariants`] presents a finite quotient of two such lattices
//!   and reduces the presentation to invariant factors, tracking generators
//!   so cohomology representatives come out alongside the factors.

use crate::error::{Error, Result};
use num_bigint::BigUint;

/// Extended gcd: returns `(g, a, b)` with `a*x + b*y = g`, `g >= 0`.
pub(crate) fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        if x < 0 {
            (-x, -1, 0)
        } else {
            (x, 1, 0)
        }
    } else {
        let (g, a, b) = ext_gcd(y, x.rem_euclid(y));
        (g, b, a - x.div_euclid(y) * b)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

pub(crate) fn lcm_checked(a: i64, b: i64) -> Result<i64> {
    if a <= 0 || b <= 0 {
        return Err(Error::InvalidParameter("moduli must be positive".into()));
    }
    let g = gcd(a, b);
    (a / g)
        .checked_mul(b)
        .filter(|&l| l <= (1 << 31))
        .ok_or_else(|| Error::InvalidParameter("modulus lcm exceeds 2^31".into()))
}

/// Upper-triangular basis of a lattice in `Z^dim` that contains
/// `diag(cap) * Z^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    dim: usize,
    cap: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl Hnf {
    pub fn with_caps(cap: Vec<i64>) -> Self {
        let dim = cap.len();
        debug_assert!(cap.iter().all(|&c| c >= 1));
        let mut rows = vec![vec![0i64; dim]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = cap[i];
        }
        Hnf { dim, cap, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn caps(&self) -> &[i64] {
        &self.cap
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn diagonal(&self, i: usize) -> i64 {
        self.rows[i][i]
    }

    /// Folds `v` into the basis. `v` is consumed as scratch space.
    pub fn insert(&mut self, v: &mut [i64]) {
        debug_assert_eq!(v.len(), self.dim);
        for j in 0..self.dim {
            v[j] = v[j].rem_euclid(self.cap[j]);
        }
        for j in 0..self.dim {
            if v[j] == 0 {
                continue;
            }
            let hjj = self.rows[j][j];
            if v[j] % hjj == 0 {
                let q = (v[j] / hjj) as i128;
                for t in j..self.dim {
                    let val = v[t] as i128 - q * self.rows[j][t] as i128;
                    v[t] = val.rem_euclid(self.cap[t] as i128) as i64;
                }
            } else {
                let (g, a, b) = ext_gcd(hjj, v[j]);
                let (qh, qv) = ((hjj / g) as i128, (v[j] / g) as i128);
                let (a, b) = (a as i128, b as i128);
                for t in (j..self.dim).rev() {
                    let (ro, vo) = (self.rows[j][t] as i128, v[t] as i128);
                    let nr = a * ro + b * vo;
                    let nv = qh * vo - qv * ro;
                    self.rows[j][t] =
                        if t == j { g } else { nr.rem_euclid(self.cap[t] as i128) as i64 };
                    v[t] = if t == j { 0 } else { nv.rem_euclid(self.cap[t] as i128) as i64 };
                }
            }
            debug_assert_eq!(v[j], 0);
        }
    }

    /// Hermite canonicalization: entry `(i, j)` reduced into `[0, rows[j][j])`.
    pub fn canonicalize(&mut self) {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let d = self.rows[j][j];
                let q = self.rows[i][j].div_euclid(d) as i128;
                if q != 0 {
                    for t in (j..self.dim).rev() {
                        let val = self.rows[i][t] as i128 - q * self.rows[j][t] as i128;
                        self.rows[i][t] = val.rem_euclid(self.cap[t] as i128) as i64;
                    }
                }
            }
        }
    }

    /// Whether `v` lies in the lattice (equivalently: represents a subgroup
    /// member modulo the caps).
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w: Vec<i64> =
            v.iter().zip(&self.cap).map(|(&x, &c)| x.rem_euclid(c)).collect();
        for j in 0..self.dim {
            if w[j] == 0 {
                continue;
            }
            if w[j] % self.rows[j][j] != 0 {
                return false;
            }
            let q = (w[j] / self.rows[j][j]) as i128;
            for t in j..self.dim {
                let val = w[t] as i128 - q * self.rows[j][t] as i128;
                w[t] = val.rem_euclid(self.cap[t] as i128) as i64;
            }
        }
        true
    }

    /// Order of the subgroup of `prod Z/cap_i` described by this lattice.
    pub fn subgroup_order(&self) -> BigUint {
        let mut ord = BigUint::from(1u8);
        for i in 0..self.dim {
            debug_assert_eq!(self.cap[i] % self.rows[i][i], 0);
            ord *= BigUint::from((self.cap[i] / self.rows[i][i]) as u64);
        }
        ord
    }

    /// All subgroup elements reduced mod caps, or `None` past `limit`.
    pub fn enumerate_elements(&self, limit: usize) -> Option<Vec<Vec<i64>>> {
        let counts: Vec<i64> = (0..self.dim).map(|i| self.cap[i] / self.rows[i][i]).collect();
        let mut total: usize = 1;
        for &c in &counts {
            total = total.checked_mul(c as usize)?;
            if total > limit {
                return None;
            }
        }
        let mut out = Vec::with_capacity(total);
        let mut odometer = vec![0i64; self.dim];
        loop {
            let mut v = vec![0i64; self.dim];
            for i in 0..self.dim {
                if odometer[i] != 0 {
                    for t in i..self.dim {
                        v[t] = (v[t] as i128 + odometer[i] as i128 * self.rows[i][t] as i128)
                            .rem_euclid(self.cap[t] as i128) as i64;
                    }
                }
            }
            out.push(v);
            let mut pos = self.dim;
            loop {
                if pos == 0 {
                    return Some(out);
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < counts[pos] {
                    break;
                }
                odometer[pos] = 0;
            }
        }
    }
}

/// Accumulates congruence conditions `row . x ≡ 0 (mod q)` over unknowns
/// `x ∈ Z^n` and produces the full solution lattice.
pub struct KernelBuilder {
    n: usize,
    l: i64,
    cond: Hnf,
    scratch: Vec<i64>,
}

impl KernelBuilder {
    /// `l` must be a common multiple of every condition modulus.
    pub fn new(n: usize, l: i64) -> Self {
        KernelBuilder { n, l, cond: Hnf::with_caps(vec![l; n]), scratch: vec![0i64; n] }
    }

    /// Adds the condition `sum coeff * x_col ≡ 0 (mod q)`. Repeated column
    /// indices accumulate.
    pub fn add_sparse(&mut self, row: &[(usize, i64)], q: i64) {
        debug_assert!(self.l % q == 0);
        let scale = (self.l / q) as i128;
        self.scratch.iter_mut().for_each(|x| *x = 0);
        for &(col, coeff) in row {
            self.scratch[col] = (self.scratch[col] as i128 + scale * coeff as i128)
                .rem_euclid(self.l as i128) as i64;
        }
        let mut row = std::mem::take(&mut self.scratch);
        self.cond.insert(&mut row);
        self.scratch = row;
    }

    pub fn add_dense(&mut self, row: &[i64], q: i64) {
        debug_assert!(self.l % q == 0);
        let scale = (self.l / q) as i128;
        self.scratch.iter_mut().for_each(|x| *x = 0);
        for (col, &coeff) in row.iter().enumerate() {
            if coeff != 0 {
                self.scratch[col] = (scale * coeff as i128).rem_euclid(self.l as i128) as i64;
            }
        }
        let mut row = std::mem::take(&mut self.scratch);
        self.cond.insert(&mut row);
        self.scratch = row;
    }

    /// Solves the accumulated system. `solution_caps[j] * e_j` must itself
    /// satisfy every condition; that always holds for `caps = [l; n]`, and
    /// holds for tighter caps exactly when the conditions are well-defined
    /// maps on `prod Z/caps_j`.
    pub fn kernel(self, solution_caps: &[i64]) -> Result<Hnf> {
        debug_assert_eq!(solution_caps.len(), self.n);
        let mut cond = self.cond;
        cond.canonicalize();
        let l = self.l as i128;
        let mut acc = Hnf::with_caps(solution_caps.to_vec());
        let mut c = vec![0i128; self.n];
        let mut out = vec![0i64; self.n];
        for j in (0..self.n).rev() {
            c.iter_mut().for_each(|x| *x = 0);
            for i in (0..=j).rev() {
                let mut num: i128 = if i == j { l } else { 0 };
                for t in (i + 1)..=j {
                    if cond.rows[i][t] != 0 && c[t] != 0 {
                        num -= cond.rows[i][t] as i128 * c[t];
                    }
                }
                let d = cond.rows[i][i] as i128;
                if num % d != 0 {
                    return Err(Error::InternalInconsistency(
                        "kernel back-substitution hit a non-exact division".into(),
                    ));
                }
                // Reducing mod the solution cap keeps the vector a solution
                // because cap * e_i is itself one.
                c[i] = (num / d).rem_euclid(solution_caps[i] as i128);
            }
            for t in 0..self.n {
                out[t] = c[t] as i64;
            }
            acc.insert(&mut out);
        }
        acc.canonicalize();
        Ok(acc)
    }
}

/// Decides `A x ≡ b (mod q_r)` row-wise; returns a witness or `None`.
///
/// Conditions arrive through the closure as `(sparse row, rhs, modulus)`.
/// The system is homogenized with an extra leading unknown `t` (each
/// condition becomes `row . x - rhs * t ≡ 0`); a solution with
/// `t ≡ 1 (mod l)` exists iff the canonical kernel basis has leading entry 1
/// at the `t` coordinate, and its row is then a witness.
pub fn solve_congruences(
    n: usize,
    l: i64,
    feed: impl FnOnce(&mut dyn FnMut(&[(usize, i64)], i64, i64)),
) -> Result<Option<Vec<i64>>> {
    let mut kb = KernelBuilder::new(n + 1, l);
    let mut row_buf: Vec<(usize, i64)> = Vec::new();
    feed(&mut |row: &[(usize, i64)], rhs: i64, q: i64| {
        row_buf.clear();
        row_buf.push((0, -rhs));
        row_buf.extend(row.iter().map(|&(c, v)| (c + 1, v)));
        kb.add_sparse(&row_buf, q);
    });
    let kernel = kb.kernel(&vec![l; n + 1])?;
    if kernel.diagonal(0) != 1 {
        return Ok(None);
    }
    Ok(Some(kernel.rows()[0][1..].to_vec()))
}

/// Invariant factors and tracked generators of `numerator / denominator`,
/// where both lattices live in `prod Z/caps` and the denominator (given by
/// generating vectors; `diag(caps)` is included automatically) is contained
/// in the numerator. `l` must be a common multiple of the caps.
///
/// Returns the factors `> 1` in ascending divisibility order and one
/// generator vector per factor, reduced mod caps.
pub fn quotient_invariants(
    numerator: &Hnf,
    denominator_gens: impl Iterator<Item = Vec<i64>>,
    l: i64,
) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let m = numerator.dim();
    let caps = numerator.caps().to_vec();

    let mut den = Hnf::with_caps(caps.clone());
    for mut g in denominator_gens {
        den.insert(&mut g);
    }
    den.canonicalize();

    // Express each denominator basis row in numerator coordinates. Exact
    // forward substitution; coefficient reductions mod l are sound because
    // l times any numerator row lies in the denominator (caps divide l).
    let mut relations: Vec<Vec<i64>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut residual: Vec<i128> = den.rows()[i].iter().map(|&x| x as i128).collect();
        let mut w = vec![0i64; m];
        for t in 0..m {
            let d = numerator.rows()[t][t] as i128;
            if residual[t] % d != 0 {
                return Err(Error::InternalInconsistency(
                    "denominator is not contained in the numerator lattice".into(),
                ));
            }
            let coeff = (residual[t] / d).rem_euclid(l as i128);
            w[t] = coeff as i64;
            if coeff != 0 {
                for s in t..m {
                    residual[s] -= coeff * numerator.rows()[t][s] as i128;
                }
            }
        }
        // Coefficients were reduced mod l, so the residual is a multiple of
        // l times numerator rows rather than exactly zero.
        debug_assert!(residual.iter().all(|&r| r % l as i128 == 0));
        relations.push(w);
    }

    let mut rel = Hnf::with_caps(vec![l; m]);
    for mut r in relations {
        rel.insert(&mut r);
    }
    rel.canonicalize();

    let mut r: Vec<Vec<i64>> = rel.rows().to_vec();
    let mut gens: Vec<Vec<i64>> = numerator.rows().to_vec();
    smith_reduce_presentation(&mut r, &mut gens, l, &caps);

    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for p in 0..m {
        let d = r[p][p];
        debug_assert!(d >= 1 && l % d == 0);
        if d > 1 {
            factors.push(d);
            let rep: Vec<i64> =
                gens[p].iter().zip(&caps).map(|(&x, &c)| x.rem_euclid(c)).collect();
            reps.push(rep);
        }
    }
    Ok((factors, reps))
}

/// In-place Smith reduction of a square relation matrix whose row span
/// contains `l * I`, tracking generators through column operations. Matrix
/// entries are kept as signed representatives in `(-l/2, l/2]`; generators
/// stay reduced mod the ambient caps.
fn smith_reduce_presentation(r: &mut [Vec<i64>], gens: &mut [Vec<i64>], l: i64, caps: &[i64]) {
    let m = r.len();
    let red = |x: i128| -> i64 {
        let v = x.rem_euclid(l as i128) as i64;
        if v > l / 2 {
            v - l
        } else {
            v
        }
    };
    for row in r.iter_mut() {
        for x in row.iter_mut() {
            *x = red(*x as i128);
        }
    }
    let gen_add = |gp: &mut [i64], gj: &[i64], q: i64| {
        for (t, x) in gp.iter_mut().enumerate() {
            *x = (*x as i128 + q as i128 * gj[t] as i128).rem_euclid(caps[t] as i128) as i64;
        }
    };

    for p in 0..m {
        loop {
            let mut best: Option<(usize, usize, i64)> = None;
            'scan: for i in p..m {
                for j in p..m {
                    if r[i][j] != 0 {
                        let s = r[i][j].abs();
                        if best.map_or(true, |(.., bs)| s < bs) {
                            best = Some((i, j, s));
                            if s == 1 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                // Zero block: only the implicit cap relations remain.
                for q in p..m {
                    r[q][q] = l;
                }
                return;
            };
            r.swap(p, bi);
            if bj != p {
                for row in r.iter_mut() {
                    row.swap(p, bj);
                }
                gens.swap(p, bj);
            }

            let d = r[p][p];
            let mut clean = true;
            for i in (p + 1)..m {
                if r[i][p] != 0 {
                    // Nearest-integer quotient keeps remainders at most |d|/2.
                    let q = nearest_div(r[i][p], d);
                    if q != 0 {
                        for t in p..m {
                            r[i][t] = red(r[i][t] as i128 - q as i128 * r[p][t] as i128);
                        }
                    }
                    if r[i][p] != 0 {
                        clean = false;
                    }
                }
            }
            for j in (p + 1)..m {
                if r[p][j] != 0 {
                    let q = nearest_div(r[p][j], d);
                    if q != 0 {
                        // col_j -= q * col_p, so gen_p += q * gen_j.
                        for row in r.iter_mut() {
                            row[j] = red(row[j] as i128 - q as i128 * row[p] as i128);
                        }
                        let gj = gens[j].clone();
                        gen_add(&mut gens[p], &gj, q);
                    }
                    if r[p][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }

            // The isolated pivot only matters up to gcd with the cap.
            r[p][p] = gcd(d, l);
            let d = r[p][p];
            let mut fixed = true;
            'fix: for i in (p + 1)..m {
                for j in (p + 1)..m {
                    if r[i][j].rem_euclid(d) != 0 {
                        for t in p..m {
                            r[p][t] = red(r[p][t] as i128 + r[i][t] as i128);
                        }
                        fixed = false;
                        break 'fix;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
}

/// Quotient minimizing `|a - q*d|`; ties toward the smaller quotient.
fn nearest_div(a: i64, d: i64) -> i64 {
    let q = a.div_euclid(d.abs());
    let r = a - q * d.abs();
    let q = if 2 * r > d.abs() { q + 1 } else { q };
    if d < 0 {
        -q
    } else {
        q
    }
}
