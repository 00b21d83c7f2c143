//! The named fixture corpus the suite runs against.
//!
//! Fixtures are embedded at build time so the suite is self-contained; a
//! `--fixtures DIR` override reads the same filenames from disk instead
//! (which is also how fixture-corruption behavior is exercised).

use anyhow::{Context, Result};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use symcoh::crossed::CrossedExtension;
use symcoh::gmodule::GModule;
use symcoh::schema;
use symcoh::FiniteGroup;

const GROUP_FILES: &[(&str, &str)] = &[
    ("z2", include_str!("../../../fixtures/v1/z2.json")),
    ("z3", include_str!("../../../fixtures/v1/z3.json")),
    ("z4", include_str!("../../../fixtures/v1/z4.json")),
    ("z5", include_str!("../../../fixtures/v1/z5.json")),
    ("z9", include_str!("../../../fixtures/v1/z9.json")),
    ("z2xz2", include_str!("../../../fixtures/v1/z2xz2.json")),
    ("z3xz3", include_str!("../../../fixtures/v1/z3xz3.json")),
    ("s3", include_str!("../../../fixtures/v1/s3.json")),
];

const SIGN_MODULE_FILES: &[(&str, &str)] = &[
    ("z2xz2", include_str!("../../../fixtures/v1/z2xz2_sign3.json")),
    ("s3", include_str!("../../../fixtures/v1/s3_sign3.json")),
];

const XEXT_FILES: &[(&str, &str)] = &[
    ("x9", include_str!("../../../fixtures/v1/x9.json")),
    ("x9_twisted", include_str!("../../../fixtures/v1/x9_twisted.json")),
    ("x25", include_str!("../../../fixtures/v1/x25.json")),
    ("x4", include_str!("../../../fixtures/v1/x4.json")),
    ("xtrivial_z3", include_str!("../../../fixtures/v1/xtrivial_z3.json")),
    ("xtrivial_z5", include_str!("../../../fixtures/v1/xtrivial_z5.json")),
    ("x_sign3_z2", include_str!("../../../fixtures/v1/x_sign3_z2.json")),
];

pub struct FixtureSet {
    pub groups: Vec<(String, Arc<FiniteGroup>)>,
    /// Per group key, the coefficient modules the suite runs: trivial Z/2,
    /// Z/3, Z/4 everywhere, plus the order-3 sign module where the group
    /// admits one.
    pub modules: BTreeMap<String, Vec<(String, GModule)>>,
    /// Crossed-extension fixtures validate lazily: a corrupted document
    /// surfaces as a claim failure with a witness, not a load abort.
    pub xexts: Vec<(String, Result<CrossedExtension, String>)>,
}

impl FixtureSet {
    pub fn load(dir: Option<&Path>) -> Result<FixtureSet> {
        let read = |name: &str, embedded: &str| -> Result<String> {
            match dir {
                Some(d) => {
                    let p = d.join(format!("{name}.json"));
                    std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))
                }
                None => Ok(embedded.to_string()),
            }
        };

        let mut groups = Vec::new();
        for (key, embedded) in GROUP_FILES {
            let text = read(key, embedded)?;
            let doc: schema::GroupDoc =
                serde_json::from_str(&text).with_context(|| format!("fixture {key}"))?;
            let base = dir.unwrap_or(Path::new("."));
            let g = schema::resolve_group(&doc, base, key)?;
            groups.push((key.to_string(), g));
        }

        let mut modules: BTreeMap<String, Vec<(String, GModule)>> = BTreeMap::new();
        for (key, g) in &groups {
            let mut list = Vec::new();
            for d in [2i64, 3, 4] {
                list.push((format!("trivial:{d}"), GModule::trivial(g.clone(), vec![d])?));
            }
            // Sign modules: cyclic groups of even order get the generator
            // shorthand; the Klein group and S3 carry explicit tables.
            if matches!(key.as_str(), "z2" | "z4") {
                let mut gens = BTreeMap::new();
                gens.insert(1usize, vec![-1i64]);
                list.push((
                    "sign:3".to_string(),
                    GModule::from_generator_matrices(g.clone(), vec![3], &gens, key)?,
                ));
            }
            if let Some((_, embedded)) =
                SIGN_MODULE_FILES.iter().find(|(k, _)| k == key)
            {
                let text = read(&format!("{key}_sign3"), embedded)?;
                let doc: schema::ModuleDoc = serde_json::from_str(&text)
                    .with_context(|| format!("fixture {key}_sign3"))?;
                list.push(("sign:3".to_string(), schema::resolve_module(&doc, g.clone(), key)?));
            }
            modules.insert(key.clone(), list);
        }

        let mut xexts = Vec::new();
        for (key, embedded) in XEXT_FILES {
            let text = read(key, embedded)?;
            let base = dir.unwrap_or(Path::new("."));
            let xe = serde_json::from_str::<schema::XExtDoc>(&text)
                .map_err(|e| format!("{key}: {e}"))
                .and_then(|doc| {
                    schema::resolve_crossed_extension(&doc, base).map_err(|e| e.to_string())
                });
            xexts.push((key.to_string(), xe));
        }

        Ok(FixtureSet { groups, modules, xexts })
    }

    pub fn group(&self, key: &str) -> &Arc<FiniteGroup> {
        &self.groups.iter().find(|(k, _)| k == key).expect("known fixture key").1
    }

    pub fn xext(&self, key: &str) -> Result<&CrossedExtension, String> {
        self.xexts
            .iter()
            .find(|(k, _)| k == key)
            .expect("known fixture key")
            .1
            .as_ref()
            .map_err(|e| format!("{key}: {e}"))
    }

    /// The validated crossed extensions, with any corrupted ones reported.
    pub fn valid_xexts(&self) -> Result<Vec<(&str, &CrossedExtension)>, String> {
        let mut out = Vec::new();
        for (k, r) in &self.xexts {
            out.push((k.as_str(), r.as_ref().map_err(|e| format!("{k}: {e}"))?));
        }
        Ok(out)
    }

    /// All (group key, module name, module) triples in registry order.
    pub fn pairs(&self) -> Vec<(String, String, GModule)> {
        let mut out = Vec::new();
        for (key, _) in &self.groups {
            for (mname, m) in &self.modules[key] {
                out.push((key.clone(), mname.clone(), m.clone()));
            }
        }
        out
    }

    /// Group keys without elements of order two.
    pub fn torsion_free_keys(&self) -> Vec<String> {
        self.groups
            .iter()
            .filter(|(_, g)| !g.has_two_torsion())
            .map(|(k, _)| k.clone())
            .collect()
    }
}
