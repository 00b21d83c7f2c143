//! Exact integer and modular linear algebra.
//!
//! Two layers: a public arbitrary-precision layer ([`IntMatrix`], Smith
//! normal form, [`solve_mod`], [`homology_invariants`]) and a bounded-entry
//! lattice engine (`lattice`) that the cohomology pipeline runs on. Inputs
//! to the public layer are reduced modulo the relevant moduli and handed to
//! the engine, so both layers decide the same questions exactly.

mod lattice;
mod snf;

pub(crate) use lattice::{lcm_checked, quotient_invariants, solve_congruences};
pub use lattice::{Hnf, KernelBuilder};
pub use snf::{smith_normal_form, smith_normal_form_full, SnfFull, SnfResult};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Dense arbitrary-precision integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(t, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i -= q * row_k`
    pub(crate) fn row_sub_scaled(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j) - q * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// `row_k += q * row_j`
    pub(crate) fn row_add_scaled(&mut self, k: usize, j: usize, q: &BigInt) {
        for t in 0..self.cols {
            let v = self.get(k, t) + q * self.get(j, t);
            self.set(k, t, v);
        }
    }

    /// `col_j -= q * col_k`
    pub(crate) fn col_sub_scaled(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) - q * self.get(i, k);
            self.set(i, j, v);
        }
    }

    /// `col_k += q * col_i`
    pub(crate) fn col_add_scaled(&mut self, k: usize, i: usize, q: &BigInt) {
        for t in 0..self.rows {
            let v = self.get(t, k) + q * self.get(t, i);
            self.set(t, k, v);
        }
    }

    /// `row_k += row_i`
    pub(crate) fn row_add(&mut self, k: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.get(k, j) + self.get(i, j);
            self.set(k, j, v);
        }
    }

    /// `col_i -= col_k`
    pub(crate) fn col_sub(&mut self, i: usize, k: usize) {
        for t in 0..self.rows {
            let v = self.get(t, i) - self.get(t, k);
            self.set(t, i, v);
        }
    }

    pub(crate) fn negate_row(&mut self, k: usize) {
        for j in 0..self.cols {
            let v = -self.get(k, j);
            self.set(k, j, v);
        }
    }

    pub(crate) fn negate_col(&mut self, k: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }
}

/// Invariant-factor decomposition of a finite abelian group: factors `>= 2`,
/// each dividing the next; `order` is their product (1 for the trivial
/// group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroupInvariants {
    pub factors: Vec<i64>,
    pub order: u128,
}

impl AbGroupInvariants {
    pub fn trivial() -> Self {
        AbGroupInvariants { factors: Vec::new(), order: 1 }
    }

    pub fn from_factors(factors: Vec<i64>) -> Result<Self> {
        let mut order: u128 = 1;
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "invariant factors must form a divisibility chain, got {factors:?}"
                )));
            }
        }
        for &f in &factors {
            if f < 2 {
                return Err(Error::InvalidParameter(format!(
                    "invariant factors must be >= 2, got {factors:?}"
                )));
            }
            order = order.checked_mul(f as u128).ok_or_else(|| {
                Error::InvalidParameter("group order overflows u128".into())
            })?;
        }
        Ok(AbGroupInvariants { factors, order })
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl std::fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            write!(f, "0")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Decides `A x ≡ b (mod moduli_r)` row-wise. Rows with modulus 1 are
/// vacuous. Returns a witness reduced modulo the lcm of the moduli, or
/// `None` when no solution exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], moduli: &[i64]) -> Result<Option<Vec<i64>>> {
    if a.rows() != b.len() || a.rows() != moduli.len() {
        return Err(Error::DimensionMismatch(format!(
            "solve_mod: {} rows, {} rhs entries, {} moduli",
            a.rows(),
            b.len(),
            moduli.len()
        )));
    }
    if moduli.iter().any(|&q| q < 1) {
        return Err(Error::InvalidParameter("moduli must be >= 1".into()));
    }
    let mut l: i64 = 1;
    for &q in moduli {
        if q > 1 {
            l = lcm_checked(l, q)?;
        }
    }
    let n = a.cols();
    if l == 1 {
        return Ok(Some(vec![0; n]));
    }
    let reduced_row = |i: usize| -> Vec<(usize, i64)> {
        let q = BigInt::from(moduli[i]);
        (0..n)
            .filter_map(|j| {
                let e = a.get(i, j).mod_floor_i64(&q);
                (e != 0).then_some((j, e))
            })
            .collect()
    };
    solve_congruences(n, l, |add| {
        for i in 0..a.rows() {
            if moduli[i] == 1 {
                continue;
            }
            let rhs = b[i].mod_floor_i64(&BigInt::from(moduli[i]));
            add(&reduced_row(i), rhs, moduli[i]);
        }
    })
}

trait ModFloorI64 {
    fn mod_floor_i64(&self, q: &BigInt) -> i64;
}

impl ModFloorI64 for BigInt {
    fn mod_floor_i64(&self, q: &BigInt) -> i64 {
        use num_integer::Integer;
        i64::try_from(self.mod_floor(q)).expect("reduced residue fits i64")
    }
}

/// Invariant factors of `ker(d_out) / im(d_in)` for one slot of a complex of
/// finite abelian groups.
///
/// The middle group is `prod Z/moduli`; `d_out` maps it to
/// `prod Z/target_moduli` and `d_in` maps into it. Preconditions checked
/// with witnesses: `d_out` must be well-defined (each column times its
/// source modulus vanishes in the target) and `d_out * d_in ≡ 0`.
pub fn homology_invariants(
    d_out: &IntMatrix,
    d_in: &IntMatrix,
    moduli: &[i64],
    target_moduli: &[i64],
) -> Result<AbGroupInvariants> {
    let m = moduli.len();
    if d_out.cols() != m || d_in.rows() != m || d_out.rows() != target_moduli.len() {
        return Err(Error::DimensionMismatch(format!(
            "homology_invariants: d_out is {}x{}, d_in is {}x{}, {} middle moduli, {} target moduli",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols(),
            m,
            target_moduli.len()
        )));
    }
    if moduli.iter().chain(target_moduli).any(|&q| q < 1) {
        return Err(Error::InvalidParameter("moduli must be >= 1".into()));
    }
    let mut l: i64 = 1;
    for &q in moduli.iter().chain(target_moduli) {
        if q > 1 {
            l = lcm_checked(l, q)?;
        }
    }

    // Well-definedness of d_out on the middle group.
    for j in 0..m {
        for r in 0..d_out.rows() {
            let v = d_out.get(r, j) * moduli[j];
            if !(v % target_moduli[r]).is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "d_out is not well-defined modulo the middle moduli at entry ({r},{j})"
                )));
            }
        }
    }
    // Complex axiom, with witness column.
    for c in 0..d_in.cols() {
        for r in 0..d_out.rows() {
            let mut acc = BigInt::zero();
            for t in 0..m {
                acc += d_out.get(r, t) * d_in.get(t, c);
            }
            if !(acc % target_moduli[r]).is_zero() {
                return Err(Error::NotAComplex { column: c });
            }
        }
    }

    let mut kb = KernelBuilder::new(m, l);
    for r in 0..d_out.rows() {
        if target_moduli[r] == 1 {
            continue;
        }
        let q = BigInt::from(target_moduli[r]);
        let row: Vec<(usize, i64)> = (0..m)
            .filter_map(|j| {
                let e = d_out.get(r, j).mod_floor_i64(&q);
                (e != 0).then_some((j, e))
            })
            .collect();
        kb.add_sparse(&row, target_moduli[r]);
    }
    let kernel = kb.kernel(moduli)?;

    let image_gens = (0..d_in.cols()).map(|c| {
        (0..m)
            .map(|t| d_in.get(t, c).mod_floor_i64(&BigInt::from(moduli[t])))
            .collect::<Vec<i64>>()
    });
    let (factors, _) = quotient_invariants(&kernel, image_gens, l)?;
    AbGroupInvariants::from_factors(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_mod_spec_examples() {
        let a = IntMatrix::from_rows_i64(&[&[3]]);
        let x = solve_mod(&a, &[BigInt::from(1)], &[4]).unwrap().unwrap();
        assert_eq!(x, vec![3]);

        let a = IntMatrix::from_rows_i64(&[&[2]]);
        assert_eq!(solve_mod(&a, &[BigInt::from(1)], &[4]).unwrap(), None);

        let a = IntMatrix::from_rows_i64(&[&[2, 5], &[1, 1]]);
        let x = solve_mod(&a, &[BigInt::zero(), BigInt::zero()], &[4, 6]).unwrap().unwrap();
        assert_eq!(x, vec![0, 0]);
    }

    #[test]
    fn solve_mod_modulus_one_is_vacuous() {
        let a = IntMatrix::from_rows_i64(&[&[7]]);
        let x = solve_mod(&a, &[BigInt::from(3)], &[1]).unwrap();
        assert_eq!(x, Some(vec![0]));
    }

    #[test]
    fn solve_mod_dimension_mismatch() {
        let a = IntMatrix::from_rows_i64(&[&[1, 2]]);
        assert!(matches!(
            solve_mod(&a, &[BigInt::zero(), BigInt::zero()], &[2, 2]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn homology_trivial_middle() {
        // 0 -> Z/2 -> 0: homology is Z/2.
        let d_out = IntMatrix::zero(1, 1);
        let d_in = IntMatrix::zero(1, 0);
        let h = homology_invariants(&d_out, &d_in, &[2], &[1]).unwrap();
        assert_eq!(h.factors, vec![2]);
        assert_eq!(h.order, 2);
    }

    #[test]
    fn homology_multiplication_by_two_on_z4() {
        // Z/4 --(*2)--> Z/4 with zero incoming map: kernel {0,2} = Z/2.
        let d_out = IntMatrix::from_rows_i64(&[&[2]]);
        let d_in = IntMatrix::zero(1, 0);
        let h = homology_invariants(&d_out, &d_in, &[4], &[4]).unwrap();
        assert_eq!(h.factors, vec![2]);
    }

    #[test]
    fn homology_rejects_non_complex() {
        let d_out = IntMatrix::from_rows_i64(&[&[1]]);
        let d_in = IntMatrix::from_rows_i64(&[&[1]]);
        assert!(matches!(
            homology_invariants(&d_out, &d_in, &[4], &[4]),
            Err(Error::NotAComplex { column: 0 })
        ));
    }

    #[test]
    fn invariants_reject_broken_chain() {
        assert!(AbGroupInvariants::from_factors(vec![2, 3]).is_err());
        assert!(AbGroupInvariants::from_factors(vec![2, 4]).is_ok());
        assert!(AbGroupInvariants::from_factors(vec![1, 2]).is_err());
    }
}
