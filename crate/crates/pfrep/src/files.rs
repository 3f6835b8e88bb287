//! JSON file formats: algebras as named carriers with operation tables,
//! representations as point-name pair lists, networks as labelled edge
//! lists, plus construction traces, profiles, and decisions. Rendering is
//! deterministic, so equal values produce identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, OpSymbol, Signature, Tables};
use crate::construction::{ConstructionTrace, RealisabilityProfile};
use crate::decide::{Decision, Outcome, SearchStats};
use crate::network::Network;
use crate::pfun::{Base, ConcreteAlgebra, PartialFunction, Representation};
use crate::{Error, Result};

fn from_json<T: DeserializeOwned>(json: &str, what: &str) -> Result<T> {
    serde_json::from_str(json).map_err(|e| Error::MalformedInput(format!("{what}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut rendered = serde_json::to_string_pretty(value).expect("serializable");
    rendered.push('\n');
    rendered
}

fn parse_signature(symbols: &[String]) -> Result<Signature> {
    let parsed: Vec<OpSymbol> = symbols
        .iter()
        .map(|s| {
            OpSymbol::from_str(s)
                .map_err(|_| Error::MalformedInput(format!("unknown operation `{s}`")))
        })
        .collect::<Result<_>>()?;
    if parsed.contains(&OpSymbol::Unipoint) {
        Signature::allowing_unipoint(parsed)
    } else {
        Signature::new(parsed)
    }
}

fn signature_names(sig: &Signature) -> Vec<String> {
    sig.symbols().map(|s| s.name().to_string()).collect()
}

/// An algebra file: signature, carrier names, and one table per operation,
/// all element references as carrier indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub signature: Vec<String>,
    pub carrier: Vec<String>,
    pub tables: Tables,
}

impl AlgebraFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "algebra file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        AlgebraFile {
            signature: signature_names(alg.sig()),
            carrier: alg.names().to_vec(),
            tables: alg.tables().clone(),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let sig = parse_signature(&self.signature)?;
        FiniteAlgebra::new(sig, self.carrier.clone(), self.tables.clone())
    }
}

/// A representation file: base point names and, per element name, the list
/// of (input point, output point) pairs. The signature defaults to
/// {compose, meet, dom, ran} when omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<String>>,
    pub base: Vec<String>,
    pub functions: IndexMap<String, Vec<(String, String)>>,
}

impl RepresentationFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "representation file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_representation(alg: &FiniteAlgebra, rep: &Representation) -> Self {
        let name_of = |p: usize| rep.base.name(p).to_string();
        let functions = alg
            .names()
            .iter()
            .zip(&rep.functions)
            .map(|(name, f)| {
                let pairs = f
                    .pairs()
                    .iter()
                    .map(|&(x, y)| (name_of(x), name_of(y)))
                    .collect();
                (name.clone(), pairs)
            })
            .collect();
        RepresentationFile {
            signature: Some(signature_names(alg.sig())),
            base: rep.base.names().to_vec(),
            functions,
        }
    }

    pub fn signature(&self) -> Result<Signature> {
        match &self.signature {
            Some(symbols) => parse_signature(symbols),
            None => Signature::new([
                OpSymbol::Compose,
                OpSymbol::Meet,
                OpSymbol::Dom,
                OpSymbol::Ran,
            ]),
        }
    }

    /// Element names and their functions, with point names resolved
    /// against the declared base.
    pub fn to_parts(&self) -> Result<(Signature, Base, Vec<String>, Vec<PartialFunction>)> {
        let sig = self.signature()?;
        let base = Base::new(self.base.clone())?;
        let mut names = Vec::new();
        let mut functions = Vec::new();
        for (name, pairs) in &self.functions {
            let indexed: Vec<(usize, usize)> = pairs
                .iter()
                .map(|(x, y)| {
                    let resolve = |p: &String| {
                        base.index_of(p).ok_or_else(|| {
                            Error::MalformedInput(format!(
                                "function `{name}` mentions unknown point `{p}`"
                            ))
                        })
                    };
                    Ok((resolve(x)?, resolve(y)?))
                })
                .collect::<Result<_>>()?;
            let f = PartialFunction::from_pairs(indexed).map_err(|e| {
                Error::MalformedInput(format!("function `{name}`: {e}"))
            })?;
            names.push(name.clone());
            functions.push(f);
        }
        Ok((sig, base, names, functions))
    }

    /// Interprets the file as a closed concrete algebra.
    pub fn to_concrete(&self) -> Result<ConcreteAlgebra> {
        let (sig, base, names, functions) = self.to_parts()?;
        ConcreteAlgebra::new(sig, base, names, functions, true)
    }
}

/// A network file: vertex names and labelled directed edges; labels are
/// carrier indices of the algebra the network belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

impl NetworkFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "network file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_network(net: &Network) -> Self {
        NetworkFile {
            vertices: net.vertex_names().to_vec(),
            edges: net
                .edges()
                .map(|((from, to), label)| EdgeFile { from, to, label })
                .collect(),
        }
    }

    pub fn to_network(&self, n_labels: usize) -> Result<Network> {
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            if edges.insert((e.from, e.to), e.label).is_some() {
                return Err(Error::MalformedInput(format!(
                    "duplicate edge ({}, {})",
                    e.from, e.to
                )));
            }
        }
        Network::new(self.vertices.clone(), edges, n_labels)
    }
}

/// A construction trace file: one stage per class built, plus the final
/// network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub stages: Vec<StageFile>,
    #[serde(rename = "final")]
    pub final_network: NetworkFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StageFile {
    pub depth: usize,
    pub class: Vec<String>,
    pub choices: usize,
    pub vertices_added: usize,
}

impl TraceFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "trace file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_trace(
        alg: &FiniteAlgebra,
        profile: &RealisabilityProfile,
        trace: &ConstructionTrace,
    ) -> Self {
        let stages = trace
            .stages
            .iter()
            .map(|s| StageFile {
                depth: s.depth,
                class: profile.classes()[s.class]
                    .iter()
                    .map(|&a| alg.name(a).to_string())
                    .collect(),
                choices: s.choices,
                vertices_added: s.vertices_added,
            })
            .collect();
        TraceFile {
            stages,
            final_network: NetworkFile::from_network(&trace.network),
        }
    }
}

/// A profile file: the realisable elements by name, with the derived
/// classes, depths, and reaches pairs included when written by this crate.
/// Only `realisables` is consulted on input; the rest is recomputed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub realisables: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub depths: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reaches: Vec<(String, String)>,
}

impl ProfileFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "profile file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_profile(alg: &FiniteAlgebra, profile: &RealisabilityProfile) -> Self {
        let name = |&a: &usize| alg.name(a).to_string();
        ProfileFile {
            realisables: profile.realisables().iter().map(name).collect(),
            classes: profile
                .classes()
                .iter()
                .map(|c| c.iter().map(name).collect())
                .collect(),
            depths: profile.depths().to_vec(),
            reaches: profile
                .realisables()
                .iter()
                .flat_map(|&a| {
                    profile
                        .realisables()
                        .iter()
                        .filter(move |&&b| profile.reaches(a, b))
                        .map(move |&b| (a, b))
                })
                .map(|(a, b)| (name(&a), name(&b)))
                .collect(),
        }
    }

    pub fn to_profile(&self, alg: &FiniteAlgebra) -> Result<RealisabilityProfile> {
        let elems: Vec<usize> = self
            .realisables
            .iter()
            .map(|n| {
                alg.index_of(n).ok_or_else(|| {
                    Error::MalformedInput(format!("unknown carrier element `{n}`"))
                })
            })
            .collect::<Result<_>>()?;
        RealisabilityProfile::from_realisables(alg, elems)
    }
}

/// A decision file: the outcome, the relevant base size, the witness when
/// one exists, and the search statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DecisionFile {
    pub outcome: Outcome,
    pub k: Option<u64>,
    pub witness: Option<RepresentationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub stats: SearchStats,
}

impl DecisionFile {
    pub fn parse(json: &str) -> Result<Self> {
        from_json(json, "decision file")
    }

    pub fn render(&self) -> String {
        to_json(self)
    }

    pub fn from_decision(alg: &FiniteAlgebra, decision: &Decision) -> Self {
        DecisionFile {
            outcome: decision.outcome,
            k: decision.k.map(|k| k as u64),
            witness: decision
                .witness
                .as_ref()
                .map(|rep| RepresentationFile::from_representation(alg, rep)),
            reason: decision.reason.clone(),
            stats: decision.stats,
        }
    }
}
