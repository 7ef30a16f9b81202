//! The model catalog: built-in JSON files, an optional directory override,
//! and the sphere templates `s<n>`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use thg_core::model::{Pi1Action, Whitehead};
use thg_core::{Error, ErrorKind, FgAbelian, Pi1, SpaceModel, SubgroupData, TransformationModel};

use crate::error::ThgError;
use crate::schema::{load_document, Document};

const BUILTIN: &[(&str, &str)] = &[
    ("rp3", include_str!("../catalog/rp3.json")),
    ("rp3-z2z2", include_str!("../catalog/rp3-z2z2.json")),
    ("s1", include_str!("../catalog/s1.json")),
    ("s1-z2", include_str!("../catalog/s1-z2.json")),
    ("s2", include_str!("../catalog/s2.json")),
    ("s2-z2", include_str!("../catalog/s2-z2.json")),
    ("s3", include_str!("../catalog/s3.json")),
    ("s3-mod-q8", include_str!("../catalog/s3-mod-q8.json")),
    ("s3-mod-z4", include_str!("../catalog/s3-mod-z4.json")),
    ("s3-q8", include_str!("../catalog/s3-q8.json")),
    ("s3-z4", include_str!("../catalog/s3-z4.json")),
    ("s3xs3xs3", include_str!("../catalog/s3xs3xs3.json")),
    ("s3xs3xs3-z2", include_str!("../catalog/s3xs3xs3-z2.json")),
    ("t3", include_str!("../catalog/t3.json")),
    ("t3-z2", include_str!("../catalog/t3-z2.json")),
];

/// Sphere templates included in full verification runs.
pub const TEMPLATE_SAMPLES: &[u32] = &[4, 5, 7];

/// One loaded catalog file.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub text: String,
    pub document: Document,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, Entry>,
    /// Files that parsed but broke a model invariant, by file name.
    rejected: BTreeMap<String, Error>,
}

impl Catalog {
    pub fn builtin() -> Result<Self, ThgError> {
        Self::from_texts(BUILTIN.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect())
    }

    /// Every `*.json` file of a directory; the file stem is the model name.
    pub fn from_dir(dir: &Path) -> Result<Self, ThgError> {
        let read = fs::read_dir(dir).map_err(|e| ThgError::Io(format!("{}: {e}", dir.display())))?;
        let mut texts = Vec::new();
        for item in read {
            let path = item.map_err(|e| ThgError::Io(e.to_string()))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
                continue;
            };
            let text = fs::read_to_string(&path).map_err(|e| ThgError::Io(format!("{}: {e}", path.display())))?;
            texts.push((stem.to_string(), text));
        }
        texts.sort();
        Self::from_texts(texts)
    }

    /// `dir`, else `THG_CATALOG_DIR`, else the built-in catalog.
    pub fn locate(dir: Option<&Path>) -> Result<Self, ThgError> {
        if let Some(d) = dir {
            return Self::from_dir(d);
        }
        match std::env::var_os("THG_CATALOG_DIR") {
            Some(d) if !d.is_empty() => Self::from_dir(Path::new(&d)),
            _ => Self::builtin(),
        }
    }

    /// Spaces load first so transformation files can refer to them by name.
    fn from_texts(texts: Vec<(String, String)>) -> Result<Self, ThgError> {
        let mut spaces: BTreeMap<String, SpaceModel> = BTreeMap::new();
        let mut entries = BTreeMap::new();
        let mut deferred = Vec::new();
        let mut rejected = BTreeMap::new();
        for (stem, text) in texts {
            if is_transformation(&text) {
                deferred.push((stem, text));
                continue;
            }
            let Some((document, warnings)) = admit(load_document(&text, &|_| None), &stem, &mut rejected)? else {
                continue;
            };
            if let Document::Space(s) = &document {
                spaces.insert(key(&stem), s.clone());
            }
            entries.insert(key(&stem), check_name(stem, text, document, warnings)?);
        }
        for (stem, text) in deferred {
            let resolve = |n: &str| spaces.get(&key(n)).cloned().or_else(|| sphere_template_named(n));
            let Some((document, warnings)) = admit(load_document(&text, &resolve), &stem, &mut rejected)? else {
                continue;
            };
            entries.insert(key(&stem), check_name(stem, text, document, warnings)?);
        }
        Ok(Catalog { entries, rejected })
    }

    /// Files set aside because they break a model invariant.
    pub fn rejected(&self) -> impl Iterator<Item = (&str, &Error)> {
        self.rejected.iter().map(|(f, e)| (f.as_str(), e))
    }

    /// The load error of a rejected model, looked up by name.
    pub fn rejection(&self, name: &str) -> Option<(&str, &Error)> {
        let file = format!("{}.json", key(name));
        self.rejected.get_key_value(&file).map(|(f, e)| (f.as_str(), e))
    }

    /// Fails on the first rejected file.
    pub fn require_valid(&self) -> Result<(), ThgError> {
        match self.rejected.iter().next() {
            Some((f, e)) => Err(ThgError::Model(f.clone(), e.clone())),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(&key(name))
    }

    /// A catalog entry or a sphere template, as a document.
    pub fn document(&self, name: &str) -> Option<Document> {
        match self.get(name) {
            Some(e) => Some(e.document.clone()),
            None => sphere_template_named(name).map(Document::Space),
        }
    }

    pub fn space(&self, name: &str) -> Option<SpaceModel> {
        match self.document(name)? {
            Document::Space(s) => Some(s),
            Document::Transformation { .. } => None,
        }
    }

    pub fn spaces(&self) -> Vec<&SpaceModel> {
        self.entries
            .values()
            .filter_map(|e| match &e.document {
                Document::Space(s) => Some(s),
                _ => None,
            })
            .collect()
    }

    pub fn transformations(&self) -> Vec<&TransformationModel> {
        self.entries
            .values()
            .filter_map(|e| match &e.document {
                Document::Transformation { model, .. } => Some(model),
                _ => None,
            })
            .collect()
    }

    /// Space lookup used when loading standalone transformation files.
    pub fn resolver(&self) -> impl Fn(&str) -> Option<SpaceModel> + '_ {
        move |n| self.space(n)
    }
}

/// Invariant violations are recorded; every other load error is fatal.
fn admit<T>(r: thg_core::Result<T>, stem: &str, rejected: &mut BTreeMap<String, Error>) -> Result<Option<T>, ThgError> {
    let file = format!("{stem}.json");
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.kind == ErrorKind::InvariantViolation => {
            rejected.insert(key(&file), e);
            Ok(None)
        }
        Err(e) => Err(ThgError::Model(file, e)),
    }
}

fn key(name: &str) -> String {
    name.to_ascii_lowercase()
}

fn is_transformation(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(|k| k == "transformation"))
        .unwrap_or(false)
}

fn check_name(stem: String, text: String, document: Document, warnings: Vec<String>) -> Result<Entry, ThgError> {
    if key(document.name()) != key(&stem) {
        return Err(ThgError::Parse(format!(
            "{stem}.json: model name {:?} does not match the file name",
            document.name()
        )));
    }
    Ok(Entry {
        name: document.name().to_string(),
        text,
        document,
        warnings,
    })
}

/// `s<n>`: `pi_n = Z` and nothing below, truncated at `n`.
///
/// Gottlieb data follows the known cases: trivial in even dimensions, full
/// for the H-spaces `S^1`, `S^3`, `S^7`, and absent otherwise.
pub fn sphere_template(n: u32) -> Option<SpaceModel> {
    if n == 0 {
        return None;
    }
    let pi1 = if n == 1 { FgAbelian::free(1) } else { FgAbelian::trivial() };
    let pi = (2..=n)
        .map(|i| (i, if i == n { FgAbelian::free(1) } else { FgAbelian::trivial() }))
        .collect();
    let mut gottlieb = BTreeMap::new();
    if n.is_multiple_of(2) {
        gottlieb.insert(n, SubgroupData::Trivial);
    } else if matches!(n, 1 | 3 | 7) {
        gottlieb.insert(n, SubgroupData::Full);
    }
    Some(SpaceModel {
        name: format!("s{n}"),
        truncation: n,
        aspherical: n == 1,
        pi1: Pi1::Abelian(pi1),
        pi,
        gottlieb,
        whitehead: Whitehead::Trivial,
        pi1_action: Pi1Action::Trivial,
        note: Some("sphere template: homotopy recorded only through the top degree".to_string()),
    })
}

fn sphere_template_named(name: &str) -> Option<SpaceModel> {
    let digits = key(name).strip_prefix('s')?.to_string();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    sphere_template(digits.parse().ok()?)
}

/// All built-in models, templates excluded.
pub fn builtin_catalog() -> Vec<Document> {
    Catalog::builtin()
        .expect("built-in catalog loads")
        .entries()
        .map(|e| e.document.clone())
        .collect()
}
