//! Finite groups as validated multiplication tables.
//!
//! A group is an `order x order` table of element indices with the identity
//! pinned at index 0. Ingestion validates the Latin-square property, the
//! identity row/column, two-sided inverses and full associativity, reporting
//! a witness for every violation. All values are immutable after validation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major: `table[g * order + h]` is the index of `g * h`.
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a raw square table and computes the inverse table.
    ///
    /// Index 0 must act as the identity; tables with the identity elsewhere
    /// are rejected rather than re-indexed, so serialized fixtures stay
    /// canonical.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let name = name.into();
        let n = rows.len();
        let reject = |reason: String| Error::InvalidGroup { context: name.clone(), reason };
        if n == 0 {
            return Err(reject("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(reject(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &e) in row.iter().enumerate() {
                if e >= n {
                    return Err(reject(format!("entry at ({i},{j}) is {e}, out of range 0..{n}")));
                }
                table.push(e);
            }
        }

        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                if seen_row[r] {
                    return Err(reject(format!("Latin-square violation: row {i} repeats {r}")));
                }
                seen_row[r] = true;
                let c = table[j * n + i];
                if seen_col[c] {
                    return Err(reject(format!("Latin-square violation: column {i} repeats {c}")));
                }
                seen_col[c] = true;
            }
        }

        // Index 0 is the two-sided identity.
        for g in 0..n {
            if table[g] != g {
                return Err(reject(format!("identity violation: 0 * {g} = {}", table[g])));
            }
            if table[g * n] != g {
                return Err(reject(format!("identity violation: {g} * 0 = {}", table[g * n])));
            }
        }

        // Two-sided inverses.
        let mut inv = vec![0usize; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g * n + h] == 0)
                .expect("Latin square rows contain 0");
            if table[h * n + g] != 0 {
                return Err(reject(format!(
                    "inverse violation: {g} * {h} = 0 but {h} * {g} = {}",
                    table[h * n + g]
                )));
            }
            inv[g] = h;
        }

        // Associativity, with a witness triple.
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(reject(format!("associativity violation at ({a},{b},{c})")));
                    }
                }
            }
        }

        Ok(FiniteGroup { name, order: n, table, inv })
    }

    /// The cyclic group Z/n with `table[a][b] = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group order must be positive".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Ok(FiniteGroup { name: format!("Z/{n}"), order: n, table, inv })
    }

    /// Componentwise product on pair indices `i * |H| + j`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = g.order * h.order;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a1, a2) = (a / h.order, a % h.order);
            for b in 0..n {
                let (b1, b2) = (b / h.order, b % h.order);
                table.push(g.mul(a1, b1) * h.order + h.mul(a2, b2));
            }
        }
        let inv = (0..n).map(|a| g.inv(a / h.order) * h.order + h.inv(a % h.order)).collect();
        FiniteGroup {
            name: format!("{} x {}", g.name, h.name),
            order: n,
            table,
            inv,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub const IDENTITY: usize = 0;

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    /// Order of an element (least t >= 1 with g^t = 1).
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut t = 1;
        while x != 0 {
            x = self.mul(x, g);
            t += 1;
        }
        t
    }

    /// Partitions the nonidentity elements into `{x, x^-1}` pairs, or reports
    /// the first element of order two.
    pub fn order_two_census(&self) -> OrderTwoCensus {
        for g in 1..self.order {
            if self.inv[g] == g {
                return OrderTwoCensus::TwoTorsion { witness: g };
            }
        }
        let mut pairing = Vec::with_capacity((self.order - 1) / 2);
        for g in 1..self.order {
            if g < self.inv[g] {
                pairing.push((g, self.inv[g]));
            }
        }
        OrderTwoCensus::Pairing(pairing)
    }

    pub fn has_two_torsion(&self) -> bool {
        matches!(self.order_two_census(), OrderTwoCensus::TwoTorsion { .. })
    }
}

impl std::fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// Result of scanning for order-two elements. When none exist, the pairing
/// covers every nonidentity element exactly once, representative first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderTwoCensus {
    TwoTorsion { witness: usize },
    Pairing(Vec<(usize, usize)>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_small() {
        let g1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g1.order(), 1);
        assert_eq!(g1.inv(0), 0);

        let g2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(g2.table_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g2.inv(1), 1);

        let g3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!((0..3).map(|a| g3.inv(a)).collect::<Vec<_>>(), vec![0, 2, 1]);
    }

    #[test]
    fn cyclic_zero_rejected() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn product_unit_and_klein() {
        let g1 = FiniteGroup::cyclic(1).unwrap();
        let g5 = FiniteGroup::cyclic(5).unwrap();
        let p = FiniteGroup::direct_product(&g1, &g5);
        assert_eq!(p.table_rows(), g5.table_rows());

        let g2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&g2, &g2);
        for g in klein.elements() {
            assert_eq!(klein.inv(g), g);
        }
    }

    #[test]
    fn product_z2_z3_has_order_six_element() {
        let g2 = FiniteGroup::cyclic(2).unwrap();
        let g3 = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::direct_product(&g2, &g3);
        assert_eq!(p.order(), 6);
        // (1,1) sits at index 1*3+1 = 4.
        assert_eq!(p.element_order(4), 6);
    }

    #[test]
    fn builders_validate() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(7).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(3).unwrap(),
                &FiniteGroup::cyclic(4).unwrap(),
            ),
        ] {
            let revalidated = FiniteGroup::from_table(g.name(), &g.table_rows()).unwrap();
            assert_eq!(revalidated.table_rows(), g.table_rows());
        }
    }

    #[test]
    fn from_table_rejections() {
        assert!(FiniteGroup::from_table("t", &[vec![0, 1], vec![1, 1]])
            .unwrap_err()
            .to_string()
            .contains("Latin-square"));
        // Valid Z/2 table with rows swapped: identity not at index 0.
        assert!(FiniteGroup::from_table("t", &[vec![1, 0], vec![0, 1]])
            .unwrap_err()
            .to_string()
            .contains("identity"));
        assert!(FiniteGroup::from_table("t", &[vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table("t", &[vec![0, 2], vec![2, 0]]).is_err());
    }

    #[test]
    fn census() {
        let g2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(g2.order_two_census(), OrderTwoCensus::TwoTorsion { witness: 1 });

        let g3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(g3.order_two_census(), OrderTwoCensus::Pairing(vec![(1, 2)]));

        let g9 = FiniteGroup::cyclic(9).unwrap();
        assert_eq!(
            g9.order_two_census(),
            OrderTwoCensus::Pairing(vec![(1, 8), (2, 7), (3, 6), (4, 5)])
        );
    }

    #[test]
    fn census_pairing_covers_and_multiplies_to_identity() {
        for n in [3usize, 5, 7, 9] {
            let g = FiniteGroup::cyclic(n).unwrap();
            match g.order_two_census() {
                OrderTwoCensus::Pairing(pairs) => {
                    let mut seen = vec![false; n];
                    seen[0] = true;
                    for (x, y) in pairs {
                        assert_eq!(g.mul(x, y), 0);
                        assert_eq!(g.mul(y, x), 0);
                        assert!(!seen[x] && !seen[y]);
                        seen[x] = true;
                        seen[y] = true;
                    }
                    assert!(seen.into_iter().all(|b| b));
                }
                OrderTwoCensus::TwoTorsion { .. } => panic!("odd order has no 2-torsion"),
            }
        }
    }
}
