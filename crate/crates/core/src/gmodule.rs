//! Finite G-modules in invariant-factor form.
//!
//! A module is a finite abelian group `Z/d_1 x ... x Z/d_k` (each `d_i >= 2`)
//! together with one `k x k` integer action matrix per group element. Matrix
//! entry `(i, j)` is the coefficient of generator `i` in the image of
//! generator `j` and is only meaningful modulo `d_i`; well-definedness of the
//! action is validated by checking that each matrix maps every generator
//! relation to zero.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use std::collections::BTreeMap;
use std::sync::Arc;

/// An element of the module, componentwise reduced: `0 <= residues[i] < d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub residues: Vec<i64>,
}

impl ModuleElement {
    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    exponents: Vec<i64>,
    /// Per group element, a row-major `k x k` matrix, entries reduced mod the
    /// row exponent.
    action: Vec<Vec<i64>>,
    trivial: bool,
}

impl GModule {
    /// Validates exponents and a full per-element action table.
    pub fn new(
        group: Arc<FiniteGroup>,
        exponents: Vec<i64>,
        action: Vec<Vec<i64>>,
    ) -> Result<Self> {
        Self::with_context(group, exponents, action, "module")
    }

    pub fn with_context(
        group: Arc<FiniteGroup>,
        exponents: Vec<i64>,
        action: Vec<Vec<i64>>,
        context: &str,
    ) -> Result<Self> {
        let reject = |reason: String| Error::InvalidModule { context: context.into(), reason };
        for (i, &d) in exponents.iter().enumerate() {
            if d < 2 {
                return Err(reject(format!("exponent d_{i} = {d}; every factor must be >= 2")));
            }
        }
        let k = exponents.len();
        let n = group.order();
        if action.len() != n {
            return Err(reject(format!(
                "action table has {} matrices, group has order {n}",
                action.len()
            )));
        }
        let mut reduced = Vec::with_capacity(n);
        for (g, mat) in action.iter().enumerate() {
            if mat.len() != k * k {
                return Err(reject(format!(
                    "action matrix for element {g} has {} entries, expected {}",
                    mat.len(),
                    k * k
                )));
            }
            let mut m = mat.clone();
            for i in 0..k {
                for j in 0..k {
                    m[i * k + j] = m[i * k + j].rem_euclid(exponents[i]);
                }
            }
            reduced.push(m);
        }

        let module = GModule {
            trivial: reduced.iter().all(|m| is_identity(m, &exponents)),
            group,
            exponents,
            action: reduced,
        };

        if !is_identity(&module.action[0], &module.exponents) {
            return Err(reject("action of the identity is not the identity matrix".into()));
        }
        // Well-definedness: d_j * column j must vanish.
        for g in 0..n {
            for j in 0..k {
                for i in 0..k {
                    let v = module.action[g][i * k + j] * module.exponents[j];
                    if v % module.exponents[i] != 0 {
                        return Err(reject(format!(
                            "matrix for element {g} is not well-defined: entry ({i},{j})"
                        )));
                    }
                }
            }
        }
        // Homomorphism property, with witness pair.
        for g in 0..n {
            for h in 0..n {
                let gh = module.group.mul(g, h);
                let prod = module.mat_mul(&module.action[g], &module.action[h]);
                if prod != module.action[gh] {
                    return Err(reject(format!(
                        "homomorphism violation at pair ({g},{h})"
                    )));
                }
            }
        }
        // Invertibility, with witness element.
        for g in 0..n {
            let prod = module.mat_mul(&module.action[g], &module.action[module.group.inv(g)]);
            if !is_identity(&prod, &module.exponents) {
                return Err(reject(format!("action matrix for element {g} is not invertible")));
            }
        }
        Ok(module)
    }

    /// The trivial action: every element acts as the identity.
    pub fn trivial(group: Arc<FiniteGroup>, exponents: Vec<i64>) -> Result<Self> {
        let k = exponents.len();
        let n = group.order();
        let id = identity_matrix(k);
        Self::new(group, exponents, vec![id; n])
    }

    /// Expands matrices given for a generating set into a full action table
    /// by closing under multiplication, then validates.
    pub fn from_generator_matrices(
        group: Arc<FiniteGroup>,
        exponents: Vec<i64>,
        generators: &BTreeMap<usize, Vec<i64>>,
        context: &str,
    ) -> Result<Self> {
        let reject = |reason: String| Error::InvalidModule { context: context.into(), reason };
        let k = exponents.len();
        let n = group.order();
        for (&g, mat) in generators {
            if g >= n {
                return Err(reject(format!("generator index {g} out of range")));
            }
            if mat.len() != k * k {
                return Err(reject(format!("generator matrix for {g} has wrong shape")));
            }
        }
        let reduce = |mat: &[i64]| -> Vec<i64> {
            let mut m = mat.to_vec();
            for i in 0..k {
                for j in 0..k {
                    m[i * k + j] = m[i * k + j].rem_euclid(exponents[i]);
                }
            }
            m
        };
        let mut known: Vec<Option<Vec<i64>>> = vec![None; n];
        known[0] = Some(identity_matrix(k));
        for (&g, mat) in generators {
            let m = reduce(mat);
            if let Some(prev) = &known[g] {
                if *prev != m {
                    return Err(reject(format!("conflicting matrices for element {g}")));
                }
            }
            known[g] = Some(m);
        }
        loop {
            let mut progressed = false;
            for g in 0..n {
                let Some(mg) = known[g].clone() else { continue };
                for (&h, _) in generators {
                    let mh = known[h].clone().expect("generators are seeded");
                    let gh = group.mul(g, h);
                    let prod = mat_mul_mod(&mg, &mh, &exponents);
                    match &known[gh] {
                        None => {
                            known[gh] = Some(prod);
                            progressed = true;
                        }
                        Some(prev) => {
                            if *prev != prod {
                                return Err(reject(format!(
                                    "generator matrices are inconsistent at element {gh}"
                                )));
                            }
                        }
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let action: Vec<Vec<i64>> = known
            .into_iter()
            .enumerate()
            .map(|(g, m)| {
                m.ok_or_else(|| {
                    reject(format!("given generators do not reach element {g}"))
                })
            })
            .collect::<Result<_>>()?;
        Self::with_context(group, exponents, action, context)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.trivial
    }

    /// Number of elements of the underlying abelian group.
    pub fn size(&self) -> u128 {
        self.exponents.iter().map(|&d| d as u128).product()
    }

    pub fn action_matrix(&self, g: usize) -> &[i64] {
        &self.action[g]
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement { residues: vec![0; self.rank()] }
    }

    pub fn reduce(&self, residues: &[i64]) -> ModuleElement {
        ModuleElement {
            residues: residues
                .iter()
                .zip(&self.exponents)
                .map(|(&r, &d)| r.rem_euclid(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        ModuleElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.exponents)
                .map(|((&x, &y), &d)| (x + y).rem_euclid(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ModuleElement) -> ModuleElement {
        ModuleElement {
            residues: a
                .residues
                .iter()
                .zip(&self.exponents)
                .map(|(&x, &d)| (-x).rem_euclid(d))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        self.add(a, &self.neg(b))
    }

    /// Matrix-times-vector modulo the exponents: the action of `g` on `m`.
    pub fn act(&self, g: usize, m: &ModuleElement) -> ModuleElement {
        if self.trivial {
            return m.clone();
        }
        let k = self.rank();
        let mat = &self.action[g];
        let mut out = vec![0i64; k];
        for i in 0..k {
            let mut acc: i64 = 0;
            for j in 0..k {
                acc += mat[i * k + j] * m.residues[j];
            }
            out[i] = acc.rem_euclid(self.exponents[i]);
        }
        ModuleElement { residues: out }
    }

    /// Mixed-radix element index, first coordinate most significant.
    pub fn element_index(&self, m: &ModuleElement) -> usize {
        let mut idx = 0usize;
        for (r, &d) in m.residues.iter().zip(&self.exponents) {
            idx = idx * d as usize + *r as usize;
        }
        idx
    }

    pub fn element_from_index(&self, mut idx: usize) -> ModuleElement {
        let k = self.rank();
        let mut residues = vec![0i64; k];
        for i in (0..k).rev() {
            let d = self.exponents[i] as usize;
            residues[i] = (idx % d) as i64;
            idx /= d;
        }
        ModuleElement { residues }
    }

    pub fn elements(&self) -> impl Iterator<Item = ModuleElement> + '_ {
        (0..self.size() as usize).map(|i| self.element_from_index(i))
    }
}

fn identity_matrix(k: usize) -> Vec<i64> {
    let mut m = vec![0i64; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

fn is_identity(mat: &[i64], exponents: &[i64]) -> bool {
    let k = exponents.len();
    for i in 0..k {
        for j in 0..k {
            let want = if i == j { 1 % exponents[i] } else { 0 };
            if mat[i * k + j].rem_euclid(exponents[i]) != want {
                return false;
            }
        }
    }
    true
}

fn mat_mul_mod(a: &[i64], b: &[i64], exponents: &[i64]) -> Vec<i64> {
    let k = exponents.len();
    let mut out = vec![0i64; k * k];
    for i in 0..k {
        for j in 0..k {
            let mut acc: i64 = 0;
            for t in 0..k {
                acc += a[i * k + t] * b[t * k + j];
            }
            out[i * k + j] = acc.rem_euclid(exponents[i]);
        }
    }
    out
}

impl GModule {
    fn mat_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        mat_mul_mod(a, b, &self.exponents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    /// The sign module: Z/d with the nonidentity element of Z/2 negating.
    pub(crate) fn sign_module(d: i64) -> GModule {
        let g = z(2);
        GModule::new(g, vec![d], vec![vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn sign_module_over_z2_is_valid() {
        let m = sign_module(3);
        assert_eq!(m.action_matrix(1), &[2]);
        let one = m.reduce(&[1]);
        assert_eq!(m.act(1, &one).residues, vec![2]);
        assert_eq!(m.act(1, &m.act(1, &one)), one);
    }

    #[test]
    fn zero_action_rejected() {
        let err = GModule::new(z(2), vec![3], vec![vec![1], vec![0]]).unwrap_err();
        assert!(err.to_string().contains("not invertible") || err.to_string().contains("homomorphism"));
    }

    #[test]
    fn trivial_always_valid() {
        for n in 1..=6 {
            let m = GModule::trivial(z(n), vec![2]).unwrap();
            assert!(m.is_trivial_action());
            let e = m.reduce(&[1]);
            for g in 0..n {
                assert_eq!(m.act(g, &e), e);
            }
        }
    }

    #[test]
    fn unit_exponent_rejected() {
        assert!(GModule::trivial(z(3), vec![1]).is_err());
    }

    #[test]
    fn generator_expansion_matches_powers() {
        let g = z(4);
        let mut gens = BTreeMap::new();
        gens.insert(1usize, vec![-1i64]);
        let m = GModule::from_generator_matrices(g, vec![5], &gens, "sign").unwrap();
        assert_eq!(m.action_matrix(0), &[1]);
        assert_eq!(m.action_matrix(1), &[4]);
        assert_eq!(m.action_matrix(2), &[1]);
        assert_eq!(m.action_matrix(3), &[4]);
    }

    #[test]
    fn generator_expansion_rejects_non_homomorphism() {
        // (-1)^3 != 1, so there is no sign action of Z/3 on Z/5.
        let mut gens = BTreeMap::new();
        gens.insert(1usize, vec![-1i64]);
        assert!(GModule::from_generator_matrices(z(3), vec![5], &gens, "bad").is_err());
    }

    #[test]
    fn swap_action_of_z2_on_z3_squared() {
        let m = GModule::new(
            z(2),
            vec![3, 3],
            vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]],
        )
        .unwrap();
        let e = m.reduce(&[1, 2]);
        assert_eq!(m.act(1, &e).residues, vec![2, 1]);
    }

    #[test]
    fn element_indexing_roundtrip() {
        let m = GModule::trivial(z(2), vec![2, 3]).unwrap();
        assert_eq!(m.size(), 6);
        for i in 0..6 {
            assert_eq!(m.element_index(&m.element_from_index(i)), i);
        }
        // First coordinate most significant: index 3 is (1, 0).
        assert_eq!(m.element_from_index(3).residues, vec![1, 0]);
    }

    #[test]
    fn act_is_additive() {
        let m = sign_module(9);
        for g in 0..2 {
            for a in 0..9 {
                for b in 0..9 {
                    let x = m.reduce(&[a]);
                    let y = m.reduce(&[b]);
                    assert_eq!(m.act(g, &m.add(&x, &y)), m.add(&m.act(g, &x), &m.act(g, &y)));
                }
            }
        }
    }
}
