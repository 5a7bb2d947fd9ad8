//! JSON report schema. Field order is fixed by the struct definitions and
//! maps are `BTreeMap`s, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use superbider_core::engine::KeyedSpace;
use superbider_core::render::{self, FamilyForm, RenderedVector};
use superbider_core::{HalfInt, ModuleSpec, Scalar, Window};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct WindowJson {
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "N_int")]
    pub n_int: String,
}

impl From<&Window> for WindowJson {
    fn from(w: &Window) -> Self {
        WindowJson { n: w.n.to_string(), k: w.k.to_string(), n_int: w.n_int.to_string() }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ComponentJson {
    pub parity: String,
    pub pair: String,
    pub output_family: String,
    pub k: String,
    pub rule: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct BasisJson {
    pub components: Vec<ComponentJson>,
    pub normalized: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct FamilyJson {
    pub parity: String,
    pub pair: String,
    pub output_family: String,
    pub rule: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckJson {
    pub kind: String,
    pub subject: String,
    pub bound: String,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct ObstructionJson {
    pub parameters: usize,
    pub equations: usize,
    pub triples_used: usize,
    pub triples_skipped: usize,
    pub quadratic_vanishes: bool,
    pub asserted: bool,
}

/// Report of `check`, `centroid`, `bider` and `postlie`.
#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub algebra: String,
    pub module: Option<String>,
    pub params: BTreeMap<String, String>,
    pub window: WindowJson,
    pub parity: Option<String>,
    pub symmetry: Option<String>,
    pub interior_dimension: Option<usize>,
    pub raw_dimension: Option<usize>,
    pub basis: Vec<BasisJson>,
    pub families: Vec<FamilyJson>,
    pub status: String,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionJson>,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, algebra: &str, window: WindowJson) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            algebra: algebra.to_string(),
            module: None,
            params: BTreeMap::new(),
            window,
            parity: None,
            symmetry: None,
            interior_dimension: None,
            raw_dimension: None,
            basis: Vec::new(),
            families: Vec::new(),
            status: String::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            checks: Vec::new(),
            obstruction: None,
            elapsed_ms: None,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SampleJson {
    pub label: String,
    pub query: String,
    pub algebra: String,
    pub module: Option<String>,
    pub parity: String,
    pub symmetry: Option<String>,
    pub window: Option<WindowJson>,
    pub interior_dimension: usize,
    pub expected_dimension: usize,
    pub expected_family: String,
    pub expected_shifts: Vec<String>,
    pub dimensions_by_parity: BTreeMap<String, usize>,
    pub expected_in_computed: bool,
    pub computed_in_expected: bool,
    pub sound: bool,
    pub asserted: bool,
    pub status: String,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub families: Vec<FamilyJson>,
    pub basis: Vec<BasisJson>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CaseJson {
    pub case: String,
    pub title: String,
    pub status: String,
    pub samples: Vec<SampleJson>,
}

#[derive(Serialize, Debug, Clone)]
pub struct WindowOverrideJson {
    #[serde(rename = "N")]
    pub n: Option<String>,
    #[serde(rename = "K")]
    pub k: Option<String>,
    #[serde(rename = "N_int")]
    pub n_int: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyJson {
    pub schema_version: u32,
    pub command: String,
    pub window: WindowOverrideJson,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub passed: usize,
    pub total: usize,
    pub cases: Vec<CaseJson>,
    pub elapsed_ms: Option<u64>,
}

pub fn params_json(params: &BTreeMap<String, Scalar>) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn opt_half(x: Option<HalfInt>) -> Option<String> {
    x.map(|v| v.to_string())
}

/// Rendered basis and cross-shift family forms of `space`.
pub fn render_space(space: &KeyedSpace, module: &ModuleSpec) -> (Vec<BasisJson>, Vec<FamilyJson>) {
    let vectors = render::render_for(space, module);
    let families = render::family_forms(&vectors).unwrap_or_default();
    (vectors.iter().map(basis_json).collect(), families.iter().map(family_json).collect())
}

fn basis_json(v: &RenderedVector) -> BasisJson {
    BasisJson {
        components: v
            .components
            .iter()
            .map(|c| ComponentJson {
                parity: c.parity.to_string(),
                pair: c.pair.clone(),
                output_family: c.output_family.clone(),
                k: c.k.to_string(),
                rule: c.rule.clone(),
            })
            .collect(),
        normalized: true,
    }
}

fn family_json(f: &FamilyForm) -> FamilyJson {
    FamilyJson { parity: f.parity.to_string(), pair: f.pair.clone(), output_family: f.output_family.clone(), rule: f.rule.clone() }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
