//! Smith normal form over the integers with tracked transforms.
//!
//! Arbitrary-precision throughout: intermediate entries can outgrow any
//! fixed width even on small inputs. Pivots are chosen by minimal absolute
//! value and eliminations use nearest-integer quotients, which keeps growth
//! in check on the matrices this crate produces.

use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v = s` with `u`, `v` unimodular and `s` in Smith form
/// (nonnegative diagonal, each entry dividing the next).
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Like [`SnfResult`] but with the inverse transforms, for callers that need
/// to move vectors both ways.
#[derive(Debug, Clone)]
pub struct SnfFull {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let full = smith_normal_form_full(a);
    SnfResult { u: full.u, s: full.s, v: full.v }
}

pub fn smith_normal_form_full(a: &IntMatrix) -> SnfFull {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for k in 0..m.min(n) {
        'pivot: loop {
            // Minimal-absolute-value pivot in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if !s.get(i, j).is_zero()
                        && best.map_or(true, |(bi, bj)| {
                            s.get(i, j).abs() < s.get(bi, bj).abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            if bi != k {
                s.swap_rows(k, bi);
                u.swap_rows(k, bi);
                u_inv.swap_cols(k, bi);
            }
            if bj != k {
                s.swap_cols(k, bj);
                v.swap_cols(k, bj);
                v_inv.swap_rows(k, bj);
            }

            let mut clean = true;
            for i in (k + 1)..m {
                if !s.get(i, k).is_zero() {
                    let q = nearest_quotient(s.get(i, k), s.get(k, k));
                    if !q.is_zero() {
                        s.row_sub_scaled(i, k, &q);
                        u.row_sub_scaled(i, k, &q);
                        u_inv.col_add_scaled(k, i, &q);
                    }
                    if !s.get(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in (k + 1)..n {
                if !s.get(k, j).is_zero() {
                    let q = nearest_quotient(s.get(k, j), s.get(k, k));
                    if !q.is_zero() {
                        s.col_sub_scaled(j, k, &q);
                        v.col_sub_scaled(j, k, &q);
                        v_inv.row_add_scaled(k, j, &q);
                    }
                    if !s.get(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }

            // The pivot must divide everything that remains.
            for i in (k + 1)..m {
                for j in (k + 1)..n {
                    if !(s.get(i, j) % s.get(k, k)).is_zero() {
                        s.row_add(k, i);
                        u.row_add(k, i);
                        u_inv.col_sub(i, k);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if s.get(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
    }

    SnfFull { u, u_inv, s, v, v_inv }
}

/// Quotient minimizing the remainder's absolute value.
fn nearest_quotient(a: &BigInt, d: &BigInt) -> BigInt {
    let da = d.abs();
    let (mut q, r) = a.div_mod_floor(&da);
    if &r * 2 > da {
        q += BigInt::one();
    }
    if d.is_negative() {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: &[&[i64]]) -> Vec<i64> {
        let a = IntMatrix::from_rows_i64(rows);
        let r = smith_normal_form(&a);
        r.diagonal().iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        assert_eq!(snf_diag(&[&[2, 0], &[0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(snf_diag(&[&[0]]), vec![0]);
    }

    #[test]
    fn known_2x2() {
        assert_eq!(snf_diag(&[&[2, 4], &[6, 8]]), vec![2, 4]);
    }

    #[test]
    fn reconstruction_and_unimodularity() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24], vec![
                -7, 255, -81, -10,
            ]],
        ];
        for rows in cases {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = IntMatrix::from_rows_i64(&refs);
            let f = smith_normal_form_full(&a);
            assert_eq!(f.u.mul(&a).mul(&f.v), f.s, "UAV != S for {rows:?}");
            assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
            assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
            let d = f.s.clone();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    if i != j {
                        assert!(d.get(i, j).is_zero());
                    }
                }
            }
            let diag: Vec<BigInt> = (0..a.rows().min(a.cols())).map(|i| d.get(i, i).clone()).collect();
            for w in diag.windows(2) {
                if !w[0].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
                } else {
                    assert!(w[1].is_zero());
                }
            }
            for di in &diag {
                assert!(!di.is_negative());
            }
        }
    }
}
