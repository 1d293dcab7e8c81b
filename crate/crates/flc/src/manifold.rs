//! The manifold input format and its conversion to [`ManifoldData`].

use std::collections::BTreeMap;

use flc_core::groups::{table_violations, FgAbelianGroup, FiniteTableGroup, GroupError, SelfCentralizingZ};
use flc_core::IntMatrix;
use flc_core::pi2mod::{ActionKey, ModuleError};
use flc_core::{GroupModel, ManifoldData, Pi2Module, W2Data};
use serde::{Deserialize, Serialize};

use crate::number::{big_rows, bit_vec, Big, Bit};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub pi1: Pi1Json,
    pub pi2: Pi2Json,
    pub w2: W2Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi1Json {
    Trivial,
    FiniteTable {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    FgAbelian {
        rank: usize,
        #[serde(default)]
        torsion: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    SelfCentralizingZ {
        #[serde(default = "default_scz_label")]
        label: String,
    },
}

fn default_scz_label() -> String {
    "G".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pi2Json {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Big>>,
    /// Keys `index:K`, `gen:K` or `c`; matrices act on column vectors.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Big>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum W2Json {
    Spin,
    AlmostSpinCocycle { omega: Vec<Vec<Bit>> },
    AlmostSpinAbelian { ext_bits: Vec<Bit>, pairing: Vec<Vec<Bit>> },
    TotallyNonspin { w2s: Vec<Bit> },
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("pi1: {0}")]
    Group(#[from] GroupError),
    #[error("pi1.table: {}", .0.join("; "))]
    Table(Vec<String>),
    #[error("pi2: {0}")]
    Module(#[from] ModuleError),
    #[error("pi2.action: unknown key `{0}` (expected index:K, gen:K or c)")]
    ActionKey(String),
    #[error("pi2.{field}: row {row} has {found} entries, expected {expected}")]
    RowLength { field: String, row: usize, found: usize, expected: usize },
    #[error("pi2.action.{key}: {found} rows, expected {expected}")]
    RowCount { key: String, found: usize, expected: usize },
}

/// Parses JSON text, reporting the path of the offending field.
pub fn parse_manifold(text: &str) -> Result<ManifoldFile, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        LoadError::Parse { path: if path == "." { "<root>".into() } else { path }, message: e.into_inner().to_string() }
    })
}

fn matrix(field: &str, cols: usize, rows: &[Vec<Big>]) -> Result<IntMatrix, LoadError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(LoadError::RowLength { field: field.into(), row: i, found: r.len(), expected: cols });
        }
    }
    let big: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|b| b.0.clone()).collect()).collect();
    Ok(IntMatrix::from_big_rows(cols, &big).expect("row lengths checked"))
}

pub fn parse_action_key(key: &str) -> Option<ActionKey> {
    if key == "c" {
        return Some(ActionKey::C);
    }
    if let Some(k) = key.strip_prefix("index:") {
        return k.parse().ok().map(ActionKey::Element);
    }
    key.strip_prefix("gen:").and_then(|k| k.parse().ok()).map(ActionKey::Generator)
}

fn bits(v: &[Bit]) -> Vec<bool> {
    v.iter().map(|b| b.0).collect()
}

impl ManifoldFile {
    /// Builds the π₁ model; Cayley tables larger than `max_order` are refused.
    pub fn group(&self, max_order: usize) -> Result<GroupModel, LoadError> {
        Ok(match &self.pi1 {
            Pi1Json::Trivial => GroupModel::FiniteTable(FiniteTableGroup::cyclic(1)),
            Pi1Json::FiniteTable { table, labels } => {
                if table.len() > max_order {
                    return Err(GroupError::TooLarge { order: table.len(), max: max_order }.into());
                }
                let v = table_violations(table);
                if !v.is_empty() {
                    return Err(LoadError::Table(v.iter().map(|x| x.to_string()).collect()));
                }
                let g = FiniteTableGroup::from_table(table, max_order)?;
                GroupModel::FiniteTable(match labels {
                    Some(l) => g.with_labels(l.clone())?,
                    None => g,
                })
            }
            Pi1Json::FgAbelian { rank, torsion, names } => {
                let a = FgAbelianGroup::new(*rank, torsion.clone())?;
                GroupModel::FgAbelian(match names {
                    Some(n) => a.with_names(n.clone())?,
                    None => a,
                })
            }
            Pi1Json::SelfCentralizingZ { label } => GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: label.clone() }),
        })
    }

    /// Converts to [`ManifoldData`] without running the semantic validators.
    pub fn to_data(&self, max_order: usize) -> Result<ManifoldData, LoadError> {
        let pi1 = self.group(max_order)?;
        let n = self.pi2.generators;
        let relations = matrix("relations", n, &self.pi2.relations)?;
        let mut action = BTreeMap::new();
        for (key, rows) in &self.pi2.action {
            let k = parse_action_key(key).ok_or_else(|| LoadError::ActionKey(key.clone()))?;
            if rows.len() != n {
                return Err(LoadError::RowCount { key: key.clone(), found: rows.len(), expected: n });
            }
            action.insert(k, matrix(&format!("action.{key}"), n, rows)?);
        }
        let pi2 = Pi2Module::new(n, relations, action)?;
        let w2 = match &self.w2 {
            W2Json::Spin => W2Data::Spin,
            W2Json::AlmostSpinCocycle { omega } => W2Data::AlmostSpinCocycle { omega: omega.iter().map(|r| bits(r)).collect() },
            W2Json::AlmostSpinAbelian { ext_bits, pairing } => W2Data::AlmostSpinAbelian {
                ext_bits: bits(ext_bits),
                pairing: pairing.iter().map(|r| bits(r)).collect(),
            },
            W2Json::TotallyNonspin { w2s } => W2Data::TotallyNonspin { w2s: bits(w2s) },
        };
        Ok(ManifoldData { name: self.name.clone(), pi1, pi2, w2, notes: self.notes.clone() })
    }
}

impl From<&ManifoldData> for ManifoldFile {
    fn from(x: &ManifoldData) -> Self {
        let pi1 = match &x.pi1 {
            GroupModel::FiniteTable(g) if g.order() == 1 && g.labels().is_none() => Pi1Json::Trivial,
            GroupModel::FiniteTable(g) => {
                Pi1Json::FiniteTable { table: g.rows(), labels: g.labels().map(|l| l.to_vec()) }
            }
            GroupModel::FgAbelian(a) => Pi1Json::FgAbelian {
                rank: a.rank(),
                torsion: a.torsion().to_vec(),
                names: a.names().map(|n| n.to_vec()),
            },
            GroupModel::SelfCentralizingZ(s) => Pi1Json::SelfCentralizingZ { label: s.label.clone() },
        };
        let pi2 = Pi2Json {
            generators: x.pi2.ngens(),
            relations: big_rows(x.pi2.relations()),
            action: x.pi2.action().iter().map(|(k, m)| (k.to_string(), big_rows(m))).collect(),
        };
        let w2 = match &x.w2 {
            W2Data::Spin => W2Json::Spin,
            W2Data::AlmostSpinCocycle { omega } => W2Json::AlmostSpinCocycle { omega: omega.iter().map(|r| bit_vec(r)).collect() },
            W2Data::AlmostSpinAbelian { ext_bits, pairing } => W2Json::AlmostSpinAbelian {
                ext_bits: bit_vec(ext_bits),
                pairing: pairing.iter().map(|r| bit_vec(r)).collect(),
            },
            W2Data::TotallyNonspin { w2s } => W2Json::TotallyNonspin { w2s: bit_vec(w2s) },
        };
        ManifoldFile { name: x.name.clone(), notes: x.notes.clone(), pi1, pi2, w2 }
    }
}
