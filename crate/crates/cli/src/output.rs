//! Rendering of results as human tables or stable machine-readable JSON.
//!
//! The JSON forms are plain serde structs with fixed field order, so
//! parse-and-re-render is byte-identical; nothing volatile (timings, host
//! info) appears in them.

use serde::{Deserialize, Serialize};
use symcoh::cohomology::{CohomologyResult, ComparisonReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyOut {
    pub group: String,
    pub module: String,
    pub degree: usize,
    pub flavor: String,
    pub invariant_factors: Vec<i64>,
    pub order: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<i64>>>,
}

impl CohomologyOut {
    pub fn new(
        group: &str,
        module: &str,
        r: &CohomologyResult,
        with_representatives: bool,
    ) -> Self {
        CohomologyOut {
            group: group.to_string(),
            module: module.to_string(),
            degree: r.degree,
            flavor: r.flavor.name().to_string(),
            invariant_factors: r.invariants.factors.clone(),
            order: r.invariants.order,
            representatives: with_representatives
                .then(|| r.representatives.iter().map(|c| c.values().to_vec()).collect()),
        }
    }

    pub fn human(&self) -> String {
        let desc = if self.invariant_factors.is_empty() {
            "0 (trivial)".to_string()
        } else {
            self.invariant_factors
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let mut out = format!(
            "H^{}_{}({}, {}) = {}  (order {})\n",
            self.degree, self.flavor, self.group, self.module, desc, self.order
        );
        if let Some(reps) = &self.representatives {
            for (i, rep) in reps.iter().enumerate() {
                out.push_str(&format!("  generator {}: {:?}\n", i + 1, rep));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOut {
    pub group: String,
    pub module: String,
    pub degree: usize,
    pub source: String,
    pub target: String,
    pub source_factors: Vec<i64>,
    pub target_factors: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
    pub injective: bool,
    pub surjective: bool,
    pub verdict: String,
}

impl CompareOut {
    pub fn new(group: &str, module: &str, r: &ComparisonReport) -> Self {
        let verdict = match (r.injective, r.surjective) {
            (true, true) => "bijective",
            (true, false) => "injective",
            (false, true) => "surjective",
            (false, false) => "neither",
        };
        CompareOut {
            group: group.to_string(),
            module: module.to_string(),
            degree: r.degree,
            source: r.source.name().to_string(),
            target: r.target.name().to_string(),
            source_factors: r.source_invariants.factors.clone(),
            target_factors: r.target_invariants.factors.clone(),
            matrix: r.matrix.clone(),
            injective: r.injective,
            surjective: r.surjective,
            verdict: verdict.to_string(),
        }
    }

    pub fn human(&self) -> String {
        format!(
            "{} -> {} at degree {} on ({}, {}): {}\n  source: {:?}, target: {:?}, matrix: {:?}\n",
            self.source,
            self.target,
            self.degree,
            self.group,
            self.module,
            self.verdict,
            self.source_factors,
            self.target_factors,
            self.matrix
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XmodOut {
    pub file: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle_is_symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_is_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric_section_found: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_of_theorem_scope: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_s: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_sigma: Option<Vec<usize>>,
}

/// Serializes any of the output documents; stable field order makes the
/// round trip byte-identical.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output structs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let doc = CohomologyOut {
            group: "cyclic:3".into(),
            module: "trivial:3".into(),
            degree: 3,
            flavor: "classical".into(),
            invariant_factors: vec![3],
            order: 3,
            representatives: Some(vec![vec![0, 1, 2]]),
        };
        let first = to_json(&doc);
        let parsed: CohomologyOut = serde_json::from_str(&first).unwrap();
        assert_eq!(to_json(&parsed), first);
    }
}
