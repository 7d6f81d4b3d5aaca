//! Report formats. Elements are named by id and rationals are written as
//! strings, so every report reads back through its schema.

use std::collections::BTreeMap;

use devlat::deviation::SearchConstraints;
use devlat::io::{DeviationJson, SetJson, WitnessJson};
use devlat::lattice::LatticeReport;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

pub type Pair = [String; 2];
pub type Triple = [String; 3];
/// Coordinates as rationals, e.g. `["1/2", "1"]`.
pub type Point = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Properties {
    pub monotone: bool,
    /// `(x, x', y)` with `x ≤ x'` and `d(x, y) ≰ d(x', y)`.
    pub left_isotone_counterexample: Option<Triple>,
    /// `(x, y, y')` with `y ≤ y'` and `d(x, y') ≰ d(x, y)`.
    pub right_antitone_counterexample: Option<Triple>,
    pub cevian: bool,
    /// `(x, y, z)` with `d(x, z) ≰ d(x, y) ∨ d(y, z)`.
    pub cevian_counterexample: Option<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AxiomViolation {
    /// `cover` (`x ≤ y ∨ d(x, y)`) or `disjoint` (`d(x, y) ∧ d(y, x) = 0`).
    pub axiom: String,
    pub pair: Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeviationCheck {
    pub deviation: bool,
    pub violation: Option<AxiomViolation>,
    pub properties: Properties,
    pub required: SearchConstraints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeviationSearch {
    pub found: bool,
    pub required: SearchConstraints,
    pub random: bool,
    pub table: Option<DeviationJson>,
    pub properties: Option<Properties>,
    /// Set when no deviation exists at all: a pair with no normality witness.
    pub completely_normal_counterexample: Option<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeviationList {
    pub limit: usize,
    pub required: SearchConstraints,
    pub count: usize,
    pub tables: Vec<DeviationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct TraceStep {
    pub pair: Pair,
    pub meetands: Vec<Pair>,
    pub joinands: Vec<Pair>,
    pub meet_part: String,
    pub join_part: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Adjustment {
    pub order: Vec<String>,
    pub strategy: String,
    pub d_prime: DeviationJson,
    /// `x ≤ x'` and `y' ≤ y` imply `d'(x, y) ≤ d'(x', y')`.
    pub monotone: bool,
    /// Axiom check of `d'`, when the domain is the lattice itself.
    pub deviation: Option<bool>,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct WitnessViolation {
    /// `not_upper_bound`, `not_lower_bound` or `empty_intersection`.
    pub kind: String,
    pub elements: Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct WitnessReport {
    /// The enumeration used, absent when checking a given witness.
    pub order: Option<Vec<String>>,
    pub witness: WitnessJson,
    pub valid: bool,
    pub violation: Option<WitnessViolation>,
    /// `x ∈ A(y) ∪ B(y)` implies `x` is listed no later than `y`.
    pub order_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct BlockOrderReport {
    pub enumeration: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    /// Minimal upper shadow of each element on its strict prefix.
    pub upper_shadows: BTreeMap<String, Vec<String>>,
    pub lower_shadows: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AmalgamFailure {
    /// `union`, `not_nested`, `shadowing` or `interpolation`.
    pub clause: String,
    pub indices: Vec<String>,
    pub elements: Vec<String>,
    pub direction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AmalgamReport {
    pub strong: bool,
    pub violation: Option<AmalgamFailure>,
    pub nu: BTreeMap<String, String>,
    pub block_orders: BTreeMap<String, Vec<String>>,
    pub witness: Option<WitnessJson>,
    pub witness_valid: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct IncludesReport {
    /// `T ⊆ S`.
    pub holds: bool,
    /// A point of `T ∖ S`.
    pub witness: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ShadowReport {
    pub kind: String,
    pub vars: Vec<String>,
    pub set: SetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LeqReport {
    pub n: usize,
    pub relative_to_omega: bool,
    pub lhs: String,
    pub rhs: String,
    /// `⟨lhs⟩ ≤ ⟨rhs⟩`.
    pub holds: bool,
    /// A point where `rhs` vanishes and `lhs` does not.
    pub witness: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CevianReport {
    pub g: String,
    pub h: String,
    pub k: String,
    pub check: LeqReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Outcome {
    /// `holds`, `vacuous` or `counterexample`.
    pub status: String,
    pub witness: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ProbeEntry {
    pub probe: String,
    pub against_lower: Outcome,
    pub against_upper: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct PscomReport {
    pub n: usize,
    pub alpha: usize,
    pub c: String,
    pub lower: String,
    pub upper: String,
    pub disjoint: bool,
    pub entries: Vec<ProbeEntry>,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LadderReport {
    pub lhs: String,
    pub rhs: String,
    /// `⟨lhs⟩ ≤ ⟨rhs⟩` relative to `Ω₂`, as decided.
    pub holds: bool,
    pub decision_witness: Option<Point>,
    /// The point named in the argument.
    pub witness: Point,
    pub lhs_at_witness: String,
    pub rhs_at_witness: String,
    pub witness_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct NoisoReport {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub antitone: LadderReport,
    pub isotone: LadderReport,
    pub reproduced: bool,
}

/// Name and schema of every report format.
pub fn report_schemas() -> Vec<(&'static str, schemars::schema::RootSchema)> {
    use schemars::schema_for;
    vec![
        ("lattice_check", schema_for!(LatticeReport)),
        ("deviation_check", schema_for!(DeviationCheck)),
        ("deviation_search", schema_for!(DeviationSearch)),
        ("deviation_enumerate", schema_for!(DeviationList)),
        ("adjust", schema_for!(Adjustment)),
        ("poset_witness", schema_for!(WitnessReport)),
        ("poset_order", schema_for!(BlockOrderReport)),
        ("poset_amalgam", schema_for!(AmalgamReport)),
        ("semilinear_includes", schema_for!(IncludesReport)),
        ("semilinear_shadow", schema_for!(ShadowReport)),
        ("vlat_leq", schema_for!(LeqReport)),
        ("vlat_cevian", schema_for!(CevianReport)),
        ("vlat_pscom_probe", schema_for!(PscomReport)),
        ("vlat_noiso_probe", schema_for!(NoisoReport)),
    ]
}
