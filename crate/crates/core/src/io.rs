//! JSON file formats. Elements are always referred to by id.

use std::collections::BTreeMap;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::deviation::DeviationTable;
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_downsets, FiniteDistributiveLattice};
use crate::poset::{ElemSet, FinitePoset, SeparabilityWitness, StrongAmalgamSpec};
use crate::semilinear::{parse_atom, Cell, SemilinearSet};

/// `{"elements": [ids], "leq": [[a, b], ...]}`; the reflexive-transitive
/// closure of `leq` is taken on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::generated_by_ids(self.elements.clone(), &self.leq)
    }

    /// Writes the cover relation only.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let leq = p.covers().into_iter().map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string())).collect();
        PosetJson { elements: p.ids().to_vec(), leq }
    }
}

/// `{"A": {id: [ids]}, "B": {id: [ids]}}`; absent ids map to `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct WitnessJson {
    #[serde(rename = "A")]
    pub upper: BTreeMap<String, Vec<String>>,
    #[serde(rename = "B")]
    pub lower: BTreeMap<String, Vec<String>>,
}

fn id_map_to_sets(p: &FinitePoset, m: &BTreeMap<String, Vec<String>>) -> Result<Vec<ElemSet>> {
    let mut out = vec![ElemSet::new(); p.len()];
    for (k, v) in m {
        out[p.index_of(k)?] = p.indices_of(v)?;
    }
    Ok(out)
}

fn sets_to_id_map(p: &FinitePoset, sets: impl Fn(usize) -> ElemSet) -> BTreeMap<String, Vec<String>> {
    (0..p.len()).map(|x| (p.id(x).to_string(), p.ids_of(&sets(x)))).collect()
}

impl WitnessJson {
    pub fn to_witness(&self, p: &FinitePoset) -> Result<SeparabilityWitness> {
        SeparabilityWitness::new(p, id_map_to_sets(p, &self.upper)?, id_map_to_sets(p, &self.lower)?)
    }

    pub fn from_witness(p: &FinitePoset, w: &SeparabilityWitness) -> Self {
        WitnessJson {
            upper: sets_to_id_map(p, |x| w.upper(x).clone()),
            lower: sets_to_id_map(p, |x| w.lower(x).clone()),
        }
    }
}

/// Either the down-set lattice of a poset or an explicit order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum LatticeJson {
    Downsets {
        downsets_of: PosetJson,
    },
    Explicit {
        elements: Vec<String>,
        #[serde(default)]
        leq: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bottom: Option<String>,
    },
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<FiniteDistributiveLattice> {
        match self {
            LatticeJson::Downsets { downsets_of } => Ok(lattice_from_downsets(&downsets_of.to_poset()?)),
            LatticeJson::Explicit { elements, leq, bottom } => {
                let p = FinitePoset::generated_by_ids(elements.clone(), leq)?;
                match bottom {
                    Some(b) => FiniteDistributiveLattice::with_bottom(p, b),
                    None => FiniteDistributiveLattice::from_order(p),
                }
            }
        }
    }

    pub fn from_lattice(l: &FiniteDistributiveLattice) -> Self {
        let p = PosetJson::from_poset(l.carrier());
        LatticeJson::Explicit { elements: p.elements, leq: p.leq, bottom: Some(l.id(l.bottom()).to_string()) }
    }
}

/// `{"d": {"x,y": "z", ...}}`: a total map `M × M → D` by ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DeviationJson {
    pub d: BTreeMap<String, String>,
}

impl DeviationJson {
    /// A map whose domain is the host itself.
    pub fn to_table(&self, l: &FiniteDistributiveLattice) -> Result<DeviationTable> {
        self.to_map(l.carrier(), l)
    }

    /// A map `M × M → D`; every pair must be present.
    pub fn to_map(&self, m: &FinitePoset, host: &FiniteDistributiveLattice) -> Result<DeviationTable> {
        let n = m.len();
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for (k, v) in &self.d {
            let (x, y) = k.split_once(',').ok_or_else(|| Error::input(format!("key `{k}` is not of the form `x,y`")))?;
            let (x, y) = (m.index_of(x.trim())?, m.index_of(y.trim())?);
            table[x * n + y] = Some(host.index_of(v)?);
        }
        let d = table
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| Error::input(format!("missing entry `{},{}`", m.id(k / n), m.id(k % n)))))
            .collect::<Result<Vec<_>>>()?;
        DeviationTable::map(n, host, d)
    }

    pub fn from_map(m: &FinitePoset, host: &FiniteDistributiveLattice, t: &DeviationTable) -> Self {
        let n = m.len();
        let d = (0..n * n)
            .map(|k| (format!("{},{}", m.id(k / n), m.id(k % n)), host.id(t.get(k / n, k % n)).to_string()))
            .collect();
        DeviationJson { d }
    }
}

/// `{"dim": n, "cells": [[atom, ...], ...]}`, atoms in the textual format
/// over `x1 … xn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SetJson {
    pub dim: usize,
    pub cells: Vec<Vec<String>>,
}

impl SetJson {
    pub fn to_set(&self) -> Result<SemilinearSet> {
        let cells = self
            .cells
            .iter()
            .map(|c| Cell::new(self.dim, c.iter().map(|a| parse_atom(a, self.dim)).collect::<Result<_>>()?))
            .collect::<Result<Vec<_>>>()?;
        SemilinearSet::new(self.dim, cells)
    }

    pub fn from_set(s: &SemilinearSet) -> Self {
        SetJson { dim: s.dim(), cells: s.to_strings() }
    }
}

/// A covering family indexed by a poset, plus an optional choice `ν` of a
/// block for every carrier element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AmalgamJson {
    pub carrier: PosetJson,
    pub index: PosetJson,
    pub family: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<BTreeMap<String, String>>,
}

impl AmalgamJson {
    pub fn to_spec(&self) -> Result<StrongAmalgamSpec> {
        let carrier = self.carrier.to_poset()?;
        let index = self.index.to_poset()?;
        let mut family = vec![ElemSet::new(); index.len()];
        for (k, v) in &self.family {
            family[index.index_of(k)?] = carrier.indices_of(v)?;
        }
        StrongAmalgamSpec::new(carrier, index, family)
    }

    /// `ν` as given, or else the first index (in index order) whose member
    /// contains the element.
    pub fn nu(&self, spec: &StrongAmalgamSpec) -> Result<Vec<usize>> {
        let m = &spec.carrier;
        let ix = &spec.index;
        (0..m.len())
            .map(|x| match self.nu.as_ref().and_then(|nu| nu.get(m.id(x))) {
                Some(p) => ix.index_of(p),
                None => (0..ix.len())
                    .find(|&p| spec.member(p).contains(&x))
                    .ok_or_else(|| Error::input(format!("`{}` lies in no block", m.id(x)))),
            })
            .collect()
    }
}

/// Reads a JSON document, mapping syntax errors to input errors.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("JSON: {e}")))
}

/// Name and schema of every input format.
pub fn input_schemas() -> Vec<(&'static str, schemars::schema::RootSchema)> {
    vec![
        ("poset", schemars::schema_for!(PosetJson)),
        ("witness", schemars::schema_for!(WitnessJson)),
        ("lattice", schemars::schema_for!(LatticeJson)),
        ("deviation", schemars::schema_for!(DeviationJson)),
        ("semilinear_set", schemars::schema_for!(SetJson)),
        ("amalgam", schemars::schema_for!(AmalgamJson)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures;

    #[test]
    fn poset_round_trip() {
        let j: PosetJson = from_json(r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#).unwrap();
        let p = j.to_poset().unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(PosetJson::from_poset(&p), j);
    }

    #[test]
    fn lattice_formats() {
        let j: LatticeJson = from_json(r#"{"downsets_of":{"elements":["a","b"]}}"#).unwrap();
        assert_eq!(j.to_lattice().unwrap().len(), 4);
        let j: LatticeJson =
            from_json(r#"{"elements":["0","a","b","1"],"leq":[["0","a"],["a","b"],["b","1"]],"bottom":"0"}"#).unwrap();
        let l = j.to_lattice().unwrap();
        assert_eq!(l, fixtures::chain4());
        assert_eq!(LatticeJson::from_lattice(&l), j);
        let bad: LatticeJson = from_json(r#"{"elements":["0","a"],"leq":[["0","a"]],"bottom":"a"}"#).unwrap();
        assert!(bad.to_lattice().is_err());
    }

    #[test]
    fn deviation_round_trip_and_missing_keys() {
        let l = fixtures::chain4();
        let t = DeviationTable::from_fn(&l, |x, y| if l.leq(x, y) { 0 } else { x }).unwrap();
        let j = DeviationJson::from_map(l.carrier(), &l, &t);
        assert_eq!(j.d["b,a"], "b");
        assert_eq!(j.to_table(&l).unwrap(), t);
        let mut short = j.clone();
        short.d.remove("0,0");
        assert!(short.to_table(&l).unwrap_err().to_string().contains("missing entry `0,0`"));
    }

    #[test]
    fn witness_round_trip() {
        let p = PosetJson { elements: vec!["x".into(), "y".into()], leq: vec![("x".into(), "y".into())] }.to_poset().unwrap();
        let w = SeparabilityWitness::principal(&p);
        let j = WitnessJson::from_witness(&p, &w);
        assert_eq!(j.upper["x"], vec!["x", "y"]);
        assert_eq!(j.to_witness(&p).unwrap(), w);
    }

    #[test]
    fn set_round_trip() {
        let j: SetJson = from_json(r#"{"dim":2,"cells":[["x1 > 0","x2 - x1 >= 0"],["x2 = 1/2"]]}"#).unwrap();
        let s = j.to_set().unwrap();
        assert_eq!(SetJson::from_set(&s).to_set().unwrap(), s);
        assert!(from_json::<SetJson>("{").unwrap_err().is_input_error());
    }

    #[test]
    fn every_schema_is_an_object_schema() {
        for (name, s) in input_schemas() {
            let v = serde_json::to_value(&s).unwrap();
            assert!(v.get("$schema").is_some(), "{name}");
        }
    }
}
