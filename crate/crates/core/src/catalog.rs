//! Method-specific item catalogs, negative placeholder ids and coverage.
//!
//! Catalog files start with a `catalog_id=<name>` header line followed by
//! either `mention_id,canonical_id` rows or bare `mention_id` rows (which map
//! to themselves). Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::instances::EvaluationInstance;
use crate::item::ItemId;

pub const FIRST_NEGATIVE_ID: i64 = -101;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemCatalog {
    pub catalog_id: String,
    entries: BTreeMap<String, u64>,
}

impl ItemCatalog {
    pub fn from_pairs(
        catalog_id: impl Into<String>,
        pairs: impl IntoIterator<Item = (String, u64)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, (k, v)) in pairs.into_iter().enumerate() {
            if entries.insert(k.clone(), v).is_some() {
                return Err(BenchError::DuplicateCatalogKey {
                    path: "<memory>".into(),
                    mention_id: k,
                    line: i + 1,
                });
            }
        }
        Ok(ItemCatalog {
            catalog_id: catalog_id.into(),
            entries,
        })
    }

    /// Catalog mapping every numeric mention id to itself.
    pub fn identity<'a>(
        catalog_id: &str,
        items: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut pairs = Vec::new();
        for id in items.into_iter().collect::<BTreeSet<_>>() {
            let n = id.parse::<u64>().map_err(|_| {
                BenchError::Config(format!("identity catalog needs numeric ids, got {id:?}"))
            })?;
            pairs.push((id.to_owned(), n));
        }
        Self::from_pairs(catalog_id, pairs)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct canonical ids.
    pub fn size(&self) -> usize {
        self.entries.values().collect::<BTreeSet<_>>().len()
    }

    pub fn contains(&self, mention_id: &str) -> bool {
        self.entries.contains_key(mention_id)
    }

    pub fn resolve(&self, mention_id: &str) -> Option<ItemId> {
        self.entries.get(mention_id).map(|&c| ItemId::from(c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Render in the catalog file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("catalog_id={}\n", self.catalog_id);
        for (k, v) in &self.entries {
            if k.parse::<u64>().ok() == Some(*v) && k == &v.to_string() {
                let _ = writeln!(out, "{k}");
            } else {
                let _ = writeln!(out, "{k},{v}");
            }
        }
        out
    }
}

pub fn parse_catalog_str(content: &str, path: &Path) -> Result<ItemCatalog> {
    let err = |line: usize, message: String| BenchError::Catalog {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut lines = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing catalog_id header".into()))?;
    let catalog_id = header
        .strip_prefix("catalog_id=")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| {
            err(
                hline,
                format!("expected `catalog_id=<name>`, got {header:?}"),
            )
        })?;

    let mut entries = BTreeMap::new();
    for (n, line) in lines {
        let (mention, canonical) = match line.split_once(',') {
            Some((m, c)) => (m.trim(), c.trim()),
            None => (line, line),
        };
        if mention.is_empty() {
            return Err(err(n, "empty mention id".into()));
        }
        let canonical: u64 = canonical.parse().map_err(|_| {
            err(
                n,
                format!("canonical id {canonical:?} is not a non-negative integer"),
            )
        })?;
        if entries.insert(mention.to_owned(), canonical).is_some() {
            return Err(BenchError::DuplicateCatalogKey {
                path: path.to_path_buf(),
                mention_id: mention.to_owned(),
                line: n,
            });
        }
    }

    Ok(ItemCatalog {
        catalog_id: catalog_id.to_owned(),
        entries,
    })
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<ItemCatalog> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_catalog_str(&content, path)
}

/// Hands out -101, -102, ... in call order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeIdAllocator {
    next: i64,
}

impl Default for NegativeIdAllocator {
    fn default() -> Self {
        Self::new()
    }
}

impl NegativeIdAllocator {
    pub fn new() -> Self {
        NegativeIdAllocator {
            next: FIRST_NEGATIVE_ID,
        }
    }

    /// Continue after ids already present in earlier artifacts.
    pub fn starting_below(lowest_used: i64) -> Self {
        NegativeIdAllocator {
            next: (lowest_used - 1).min(FIRST_NEGATIVE_ID),
        }
    }

    pub fn allocate(&mut self) -> ItemId {
        let id = self.next;
        self.next -= 1;
        ItemId::from(id)
    }

    /// The id the next call to `allocate` returns.
    pub fn peek(&self) -> i64 {
        self.next
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub catalog_id: String,
    /// Share of instances with at least one covered ground-truth item.
    pub test_data_pct: f64,
    /// Share of corpus items present in the catalog.
    pub items_pct: f64,
    pub evaluable_instances: usize,
    pub total_instances: usize,
    pub covered_items: usize,
    pub total_items: usize,
}

fn fraction(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Coverage of a catalog over unmasked standard instances.
///
/// An instance counts as evaluable when at least one of its ground-truth
/// items resolves in the catalog; otherwise every target would be a
/// placeholder miss. Empty denominators yield 0.
pub fn compute_coverage<'a>(
    instances: &[EvaluationInstance],
    corpus_items: impl IntoIterator<Item = &'a str>,
    cat: &ItemCatalog,
) -> CoverageReport {
    let items: BTreeSet<&str> = corpus_items.into_iter().collect();
    let covered_items = items.iter().filter(|i| cat.contains(i)).count();
    let evaluable = instances
        .iter()
        .filter(|inst| {
            inst.ground_truth
                .iter()
                .any(|g| !g.is_masked() && cat.contains(g.as_str()))
        })
        .count();

    CoverageReport {
        catalog_id: cat.catalog_id.clone(),
        test_data_pct: fraction(evaluable, instances.len()),
        items_pct: fraction(covered_items, items.len()),
        evaluable_instances: evaluable,
        total_instances: instances.len(),
        covered_items,
        total_items: items.len(),
    }
}
