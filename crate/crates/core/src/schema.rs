//! JSON description formats for groups, modules and crossed extensions.
//!
//! Groups: `{"cyclic": n}`, `{"product": [spec, spec]}`,
//! `{"table": [[...]]}` or `{"file": "relative/path.json"}`; an optional
//! `"name"` labels the result. Modules: `{"exponents": [...], "action":
//! "trivial" | {"generator_matrices": {"g": [[...]]}} |
//! {"element_matrices": [[[...]], ...]}}` with matrices in row-major `k x k`
//! form. Crossed extensions bundle four groups, a module, `boundary` and
//! `pi` as index lists, `raction` as nested index lists (or `"trivial"`),
//! and `iota` as the list of T-indices of the module generators. All
//! indices are 0-based; index 0 is always the identity. Validation errors
//! cite paths into the document.

use crate::crossed::{CrossedExtension, CrossedModule};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::FiniteGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Cyclic {
        cyclic: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Product {
        product: Vec<GroupDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    File {
        file: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    /// The literal string "trivial".
    Shorthand(String),
    Generators {
        generator_matrices: BTreeMap<String, Vec<Vec<i64>>>,
    },
    Elements {
        element_matrices: Vec<Vec<Vec<i64>>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub exponents: Vec<i64>,
    pub action: ActionDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RactionDoc {
    /// The literal string "trivial": every element of R acts as the identity.
    Shorthand(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XExtDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub t: GroupDoc,
    pub r: GroupDoc,
    pub g: GroupDoc,
    pub m: ModuleDoc,
    pub boundary: Vec<usize>,
    pub pi: Vec<usize>,
    pub raction: RactionDoc,
    pub iota: Vec<usize>,
}

fn doc_err(path: &str, reason: impl Into<String>) -> Error {
    Error::Document { path: path.into(), reason: reason.into() }
}

pub fn resolve_group(doc: &GroupDoc, base: &Path, path: &str) -> Result<Arc<FiniteGroup>> {
    match doc {
        GroupDoc::Cyclic { cyclic, name } => {
            let mut g = FiniteGroup::cyclic(*cyclic)
                .map_err(|e| doc_err(path, e.to_string()))?;
            if let Some(n) = name {
                g = FiniteGroup::from_table(n.clone(), &g.table_rows())
                    .expect("renaming a valid table");
            }
            Ok(Arc::new(g))
        }
        GroupDoc::Product { product, name } => {
            if product.is_empty() {
                return Err(doc_err(path, "product needs at least one factor"));
            }
            let mut acc =
                resolve_group(&product[0], base, &format!("{path}.product[0]"))?.as_ref().clone();
            for (i, factor) in product.iter().enumerate().skip(1) {
                let f = resolve_group(factor, base, &format!("{path}.product[{i}]"))?;
                acc = FiniteGroup::direct_product(&acc, &f);
            }
            if let Some(n) = name {
                acc = FiniteGroup::from_table(n.clone(), &acc.table_rows())
                    .expect("renaming a valid table");
            }
            Ok(Arc::new(acc))
        }
        GroupDoc::Table { table, name } => {
            let label = name.clone().unwrap_or_else(|| format!("table[{}]", table.len()));
            FiniteGroup::from_table(label, table)
                .map(Arc::new)
                .map_err(|e| doc_err(&format!("{path}.table"), e.to_string()))
        }
        GroupDoc::File { file } => {
            let full = base.join(file);
            let text = std::fs::read_to_string(&full).map_err(|e| {
                doc_err(path, format!("cannot read {}: {e}", full.display()))
            })?;
            let inner: GroupDoc = serde_json::from_str(&text)
                .map_err(|e| doc_err(path, format!("{}: {e}", full.display())))?;
            let parent = full.parent().map(Path::to_path_buf).unwrap_or_default();
            resolve_group(&inner, &parent, path)
        }
    }
}

pub fn resolve_module(
    doc: &ModuleDoc,
    group: Arc<FiniteGroup>,
    path: &str,
) -> Result<GModule> {
    let k = doc.exponents.len();
    let flatten = |mat: &Vec<Vec<i64>>, where_: &str| -> Result<Vec<i64>> {
        if mat.len() != k || mat.iter().any(|row| row.len() != k) {
            return Err(doc_err(where_, format!("expected a {k}x{k} matrix")));
        }
        Ok(mat.iter().flatten().copied().collect())
    };
    match &doc.action {
        ActionDoc::Shorthand(s) if s == "trivial" => {
            let action = trivial_action(group.order(), k);
            GModule::with_context(group, doc.exponents.clone(), action, path)
                .map_err(|e| doc_err(path, e.to_string()))
        }
        ActionDoc::Shorthand(other) => {
            Err(doc_err(&format!("{path}.action"), format!("unknown shorthand `{other}`")))
        }
        ActionDoc::Generators { generator_matrices } => {
            let mut gens = BTreeMap::new();
            for (key, mat) in generator_matrices {
                let idx: usize = key.parse().map_err(|_| {
                    doc_err(
                        &format!("{path}.action.generator_matrices"),
                        format!("key `{key}` is not an element index"),
                    )
                })?;
                gens.insert(idx, flatten(mat, &format!("{path}.action.generator_matrices.{key}"))?);
            }
            GModule::from_generator_matrices(group, doc.exponents.clone(), &gens, path)
                .map_err(|e| doc_err(path, e.to_string()))
        }
        ActionDoc::Elements { element_matrices } => {
            let mats: Vec<Vec<i64>> = element_matrices
                .iter()
                .enumerate()
                .map(|(i, mat)| flatten(mat, &format!("{path}.action.element_matrices[{i}]")))
                .collect::<Result<_>>()?;
            GModule::with_context(group, doc.exponents.clone(), mats, path)
                .map_err(|e| doc_err(path, e.to_string()))
        }
    }
}

fn trivial_action(order: usize, k: usize) -> Vec<Vec<i64>> {
    let mut id = vec![0i64; k * k];
    for i in 0..k {
        id[i * k + i] = 1;
    }
    vec![id; order]
}

pub fn resolve_crossed_extension(doc: &XExtDoc, base: &Path) -> Result<CrossedExtension> {
    let name = doc.name.clone().unwrap_or_else(|| "xext".into());
    let t = resolve_group(&doc.t, base, "t")?;
    let r = resolve_group(&doc.r, base, "r")?;
    let g = resolve_group(&doc.g, base, "g")?;
    let m = resolve_module(&doc.m, g.clone(), "m")?;
    let raction = match &doc.raction {
        RactionDoc::Shorthand(s) if s == "trivial" => {
            (0..r.order()).map(|_| (0..t.order()).collect()).collect()
        }
        RactionDoc::Shorthand(other) => {
            return Err(doc_err("raction", format!("unknown shorthand `{other}`")));
        }
        RactionDoc::Table(table) => table.clone(),
    };
    let xm = CrossedModule::new(t, r, doc.boundary.clone(), raction, &name)?;
    CrossedExtension::new(xm, g, m, &doc.iota, doc.pi.clone(), &name)
}

/// Inline CLI shorthand or file path: `cyclic:N` builds a cyclic group; any
/// other string is read as a JSON group document.
pub fn group_from_spec(spec: &str, base: &Path) -> Result<Arc<FiniteGroup>> {
    if let Some(n) = spec.strip_prefix("cyclic:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad cyclic order `{n}`")))?;
        return Ok(Arc::new(FiniteGroup::cyclic(n)?));
    }
    let doc_path = base.join(spec);
    let text = std::fs::read_to_string(&doc_path).map_err(|e| {
        Error::InvalidParameter(format!("cannot read group spec {}: {e}", doc_path.display()))
    })?;
    let doc: GroupDoc = serde_json::from_str(&text)
        .map_err(|e| doc_err(spec, format!("invalid group document: {e}")))?;
    let parent = doc_path.parent().map(Path::to_path_buf).unwrap_or_default();
    resolve_group(&doc, &parent, spec)
}

/// Inline CLI shorthand or file path: `trivial:D` and `sign:D` expand to
/// one-factor modules (the sign shorthand puts `-1` on group element 1 and
/// closes multiplicatively, so it is valid exactly when that defines a
/// homomorphism); other strings are read as JSON module documents.
pub fn module_from_spec(spec: &str, group: Arc<FiniteGroup>, base: &Path) -> Result<GModule> {
    if let Some(d) = spec.strip_prefix("trivial:") {
        let d: i64 = d
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad exponent `{d}`")))?;
        return GModule::trivial(group, vec![d]);
    }
    if let Some(d) = spec.strip_prefix("sign:") {
        let d: i64 = d
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad exponent `{d}`")))?;
        let mut gens = BTreeMap::new();
        gens.insert(1usize, vec![-1i64]);
        return GModule::from_generator_matrices(group, vec![d], &gens, spec);
    }
    let doc_path = base.join(spec);
    let text = std::fs::read_to_string(&doc_path).map_err(|e| {
        Error::InvalidParameter(format!("cannot read module spec {}: {e}", doc_path.display()))
    })?;
    let doc: ModuleDoc = serde_json::from_str(&text)
        .map_err(|e| doc_err(spec, format!("invalid module document: {e}")))?;
    resolve_module(&doc, group, spec)
}

pub fn crossed_extension_from_file(path: &Path) -> Result<CrossedExtension> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
    })?;
    let doc: XExtDoc = serde_json::from_str(&text).map_err(|e| {
        doc_err(&path.display().to_string(), format!("invalid crossed-extension document: {e}"))
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    resolve_crossed_extension(&doc, &base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cyclic_and_product() {
        let doc: GroupDoc = serde_json::from_str(r#"{"cyclic": 3}"#).unwrap();
        let g = resolve_group(&doc, Path::new("."), "g").unwrap();
        assert_eq!(g.order(), 3);

        let doc: GroupDoc =
            serde_json::from_str(r#"{"product": [{"cyclic": 2}, {"cyclic": 2}]}"#).unwrap();
        let g = resolve_group(&doc, Path::new("."), "g").unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements().all(|x| g.inv(x) == x));
    }

    #[test]
    fn parse_table_rejects_with_path() {
        let doc: GroupDoc = serde_json::from_str(r#"{"table": [[0,1],[1,1]]}"#).unwrap();
        let err = resolve_group(&doc, Path::new("."), "g").unwrap_err();
        assert!(err.to_string().contains("g.table"), "{err}");
    }

    #[test]
    fn parse_module_trivial_and_generators() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let doc: ModuleDoc =
            serde_json::from_str(r#"{"exponents": [3], "action": "trivial"}"#).unwrap();
        let m = resolve_module(&doc, g.clone(), "m").unwrap();
        assert!(m.is_trivial_action());

        let doc: ModuleDoc = serde_json::from_str(
            r#"{"exponents": [3], "action": {"generator_matrices": {"1": [[-1]]}}}"#,
        )
        .unwrap();
        let m = resolve_module(&doc, g, "m").unwrap();
        assert_eq!(m.action_matrix(1), &[2]);
    }

    #[test]
    fn inline_specs() {
        let g = group_from_spec("cyclic:4", Path::new(".")).unwrap();
        assert_eq!(g.order(), 4);
        let m = module_from_spec("trivial:3", g.clone(), Path::new(".")).unwrap();
        assert!(m.is_trivial_action());
        let m = module_from_spec("sign:3", g, Path::new(".")).unwrap();
        assert_eq!(m.action_matrix(1), &[2]);
        // sign over an odd-order group is not a homomorphism.
        let g3 = group_from_spec("cyclic:3", Path::new(".")).unwrap();
        assert!(module_from_spec("sign:3", g3, Path::new(".")).is_err());
    }

    #[test]
    fn xext_doc_roundtrip() {
        let json = r#"{
            "name": "X9",
            "t": {"cyclic": 9},
            "r": {"cyclic": 9},
            "g": {"cyclic": 3},
            "m": {"exponents": [3], "action": "trivial"},
            "boundary": [0, 3, 6, 0, 3, 6, 0, 3, 6],
            "pi": [0, 1, 2, 0, 1, 2, 0, 1, 2],
            "raction": "trivial",
            "iota": [3]
        }"#;
        let doc: XExtDoc = serde_json::from_str(json).unwrap();
        let xe = resolve_crossed_extension(&doc, Path::new(".")).unwrap();
        assert_eq!(xe.group().order(), 3);
        assert_eq!(xe.xm().t().order(), 9);
    }

    #[test]
    fn corrupt_xext_reports_reason() {
        let json = r#"{
            "t": {"cyclic": 9},
            "r": {"cyclic": 9},
            "g": {"cyclic": 3},
            "m": {"exponents": [3], "action": "trivial"},
            "boundary": [0, 3, 6, 0, 3, 6, 0, 3, 5],
            "pi": [0, 1, 2, 0, 1, 2, 0, 1, 2],
            "raction": "trivial",
            "iota": [3]
        }"#;
        let doc: XExtDoc = serde_json::from_str(json).unwrap();
        let err = resolve_crossed_extension(&doc, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("homomorphism"), "{err}");
    }
}
