//! JSON instance files consumed by the CLI, and the builders turning them
//! into domain objects. All schemas carry a top-level "schema": 1 field.

use crate::amalgam::{Amalgam, AmalgamType};
use crate::classifiers::GoldschmidtInstance;
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::group::{FiniteGroup, DEFAULT_CAP};
use crate::homo::GroupMap;
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;

/// A permutation group: degree and generator image arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Arc<FiniteGroup>> {
        let gens = self
            .generators
            .iter()
            .map(|g| Perm::from_images(g.clone()))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::generate(gens, self.degree, cap)
    }

    pub fn of(group: &FiniteGroup) -> GroupSpec {
        GroupSpec {
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn build(&self) -> Result<OrientedGraph> {
        OrientedGraph::new(self.vertices, &self.edges)
    }
}

/// One inclusion map: the images of the tail vertex group's generators as
/// permutations (image arrays) inside the edge group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InclusionSpec {
    pub dart: usize,
    pub gen_images: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmalgamSpec {
    pub graph: GraphSpec,
    pub vertex_groups: Vec<GroupSpec>,
    pub edge_groups: Vec<GroupSpec>,
    pub inclusions: Vec<InclusionSpec>,
    /// Loop edges whose two darts share one inclusion map; classification
    /// respects the sharing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shared_edges: Vec<usize>,
}

impl AmalgamSpec {
    pub fn build(&self, cap: usize) -> Result<AmalgamType> {
        let graph = Arc::new(self.graph.build()?);
        let vertex_groups = self
            .vertex_groups
            .iter()
            .map(|g| g.build(cap))
            .collect::<Result<Vec<_>>>()?;
        let edge_groups = self
            .edge_groups
            .iter()
            .map(|g| g.build(cap))
            .collect::<Result<Vec<_>>>()?;
        if self.inclusions.len() != graph.dart_count() {
            return Err(Error::SchemaError(format!(
                "expected {} inclusions, got {}",
                graph.dart_count(),
                self.inclusions.len()
            )));
        }
        let mut maps: Vec<Option<GroupMap>> = vec![None; graph.dart_count()];
        for inc in &self.inclusions {
            if inc.dart >= graph.dart_count() {
                return Err(Error::SchemaError(format!("no dart {}", inc.dart)));
            }
            if maps[inc.dart].is_some() {
                return Err(Error::SchemaError(format!(
                    "duplicate inclusion for dart {}",
                    inc.dart
                )));
            }
            let domain = &vertex_groups[graph.tail(inc.dart)];
            let codomain = &edge_groups[graph.edge_of(inc.dart)];
            let images = inc
                .gen_images
                .iter()
                .map(|arr| {
                    let p = Perm::from_images(arr.clone())?;
                    codomain.index_of(&p).ok_or_else(|| {
                        Error::SchemaError(format!(
                            "generator image on dart {} is not an element of the edge group",
                            inc.dart
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            maps[inc.dart] = Some(GroupMap::from_gen_images(domain, codomain, &images)?);
        }
        let inclusions: Vec<GroupMap> = maps
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::SchemaError("missing inclusion".into())))
            .collect::<Result<_>>()?;
        let amalgam = Amalgam::new(graph, vertex_groups, edge_groups, inclusions)?;
        AmalgamType::new(amalgam).with_shared_edges(&self.shared_edges)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldschmidtSpec {
    pub b: GroupSpec,
    pub p1: GroupSpec,
    pub p2: GroupSpec,
    /// Images of b's generators in p1 / p2, as permutation image arrays.
    pub psi1: Vec<Vec<usize>>,
    pub psi2: Vec<Vec<usize>>,
}

impl GoldschmidtSpec {
    pub fn build(&self, cap: usize) -> Result<GoldschmidtInstance> {
        let b = self.b.build(cap)?;
        let p1 = self.p1.build(cap)?;
        let p2 = self.p2.build(cap)?;
        let to_map = |p: &Arc<FiniteGroup>, arrs: &[Vec<usize>]| -> Result<GroupMap> {
            let images = arrs
                .iter()
                .map(|arr| {
                    let perm = Perm::from_images(arr.clone())?;
                    p.index_of(&perm).ok_or_else(|| {
                        Error::SchemaError("psi image is not an element of the target group".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            GroupMap::from_gen_images(&b, p, &images)
        };
        let psi1 = to_map(&p1, &self.psi1)?;
        let psi2 = to_map(&p2, &self.psi2)?;
        GoldschmidtInstance::new(psi1, psi2, cap)
    }
}

/// Search budgets and caps, all optional in the file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Budgets {
    pub cap: usize,
    pub decider_budget: u64,
    pub oracle_budget: u64,
    pub enumeration_budget: u64,
    pub search_budget: u64,
    pub ball_budget: u64,
    pub word_bound: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            cap: DEFAULT_CAP,
            decider_budget: 10_000_000,
            oracle_budget: 10_000_000,
            enumeration_budget: 1_000_000,
            search_budget: 1_000_000,
            ball_budget: 1_000_000,
            word_bound: 6,
        }
    }
}

/// The expected class count recorded with a corpus instance.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum InstancePayload {
    AmalgamType(AmalgamSpec),
    Goldschmidt(GoldschmidtSpec),
    Triangle(AmalgamSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: u32,
    #[serde(flatten)]
    pub payload: InstancePayload,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub expected: Expected,
}

/// A fully built instance ready for the classifiers.
pub enum LoadedInstance {
    /// A general amalgam type (kind "amalgam-type" or "triangle").
    Type(AmalgamType),
    Goldschmidt(GoldschmidtInstance),
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
        if file.schema != SCHEMA_VERSION {
            return Err(Error::SchemaError(format!(
                "unsupported schema version {}",
                file.schema
            )));
        }
        Ok(file)
    }

    pub fn is_triangle_kind(&self) -> bool {
        matches!(self.payload, InstancePayload::Triangle(_))
    }

    pub fn load(&self) -> Result<LoadedInstance> {
        let cap = self.budgets.cap;
        match &self.payload {
            InstancePayload::AmalgamType(spec) => Ok(LoadedInstance::Type(spec.build(cap)?)),
            InstancePayload::Triangle(spec) => {
                let t = spec.build(cap)?;
                if *t.graph().as_ref() != crate::classifiers::triangle_graph() {
                    return Err(Error::SchemaError(
                        "triangle instances must use the triangle graph: 3 vertices, edges [0,1],[1,2],[2,0]"
                            .into(),
                    ));
                }
                Ok(LoadedInstance::Type(t))
            }
            InstancePayload::Goldschmidt(spec) => {
                Ok(LoadedInstance::Goldschmidt(spec.build(cap)?))
            }
        }
    }
}

/// The inclusion maps of an amalgam in the external format (per dart,
/// generator images as permutation arrays).
pub fn amalgam_inclusions_json(a: &Amalgam) -> Vec<InclusionSpec> {
    (0..a.graph().dart_count())
        .map(|dart| {
            let phi = a.inclusion(dart);
            let codomain = phi.codomain();
            InclusionSpec {
                dart,
                gen_images: phi
                    .gen_images()
                    .iter()
                    .map(|&i| codomain.element(i).images().to_vec())
                    .collect(),
            }
        })
        .collect()
}
