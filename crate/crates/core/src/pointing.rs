//! Pointings of the reference graph of groups and the classification of
//! amalgams through them.
//!
//! For a fixed amalgam type, the reference graph of groups carries
//! Aut(G_i) at each vertex, the image-preserving automorphisms of G_e at
//! each edge, and the restriction maps alpha_e between them. An amalgam of
//! the type corresponds to a pointing (one vertex-group element per dart),
//! two amalgams are isomorphic exactly when their pointings are, and the
//! pointing side is decided by solving
//!
//!   delta1_e * alpha_e(a_e) = a_{tail(e)} * delta2_e      (one equation per dart)
//!
//! for vertex elements a_i and edge elements a_e (shared between the two
//! darts of an edge).

use crate::amalgam::{same_type, Amalgam, AmalgamType};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, SpanningTree};
use crate::group::FiniteGroup;
use crate::homo::{
    automorphism_group, relative_automorphism_group, restrict_aut, AutGroup, GroupMap,
};
use rayon::prelude::*;
use std::sync::Arc;

/// A graph of groups: one group per vertex, one per geometric edge, and a
/// homomorphism alpha_e from the edge group to the tail vertex group per
/// dart. The alpha_e are not required to be injective.
#[derive(Debug)]
pub struct GraphOfGroups {
    graph: Arc<OrientedGraph>,
    vertex_groups: Vec<Arc<FiniteGroup>>,
    edge_groups: Vec<Arc<FiniteGroup>>,
    edge_maps: Vec<GroupMap>,
}

impl PartialEq for GraphOfGroups {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.vertex_groups == other.vertex_groups
            && self.edge_groups == other.edge_groups
            && self.edge_maps == other.edge_maps
    }
}
impl Eq for GraphOfGroups {}

impl GraphOfGroups {
    pub fn new(
        graph: Arc<OrientedGraph>,
        vertex_groups: Vec<Arc<FiniteGroup>>,
        edge_groups: Vec<Arc<FiniteGroup>>,
        edge_maps: Vec<GroupMap>,
    ) -> Result<GraphOfGroups> {
        if vertex_groups.len() != graph.vertex_count()
            || edge_groups.len() != graph.edge_count()
            || edge_maps.len() != graph.dart_count()
        {
            return Err(Error::ShapeMismatch(
                "graph of groups shapes do not match the graph".into(),
            ));
        }
        for e in 0..graph.dart_count() {
            let m = &edge_maps[e];
            if **m.domain() != *edge_groups[graph.edge_of(e)]
                || **m.codomain() != *vertex_groups[graph.tail(e)]
            {
                return Err(Error::ShapeMismatch(format!(
                    "edge map on dart {e} has wrong endpoints"
                )));
            }
        }
        Ok(GraphOfGroups {
            graph,
            vertex_groups,
            edge_groups,
            edge_maps,
        })
    }

    pub fn graph(&self) -> &Arc<OrientedGraph> {
        &self.graph
    }

    pub fn vertex_group(&self, v: usize) -> &Arc<FiniteGroup> {
        &self.vertex_groups[v]
    }

    pub fn edge_group(&self, edge: usize) -> &Arc<FiniteGroup> {
        &self.edge_groups[edge]
    }

    /// alpha_e: A_{edge(e)} -> A_{tail(e)}.
    pub fn edge_map(&self, dart: usize) -> &GroupMap {
        &self.edge_maps[dart]
    }
}

/// The reference graph of groups of an amalgam type, with the automorphism
/// groups retained for index lookups in both directions.
#[derive(Debug)]
pub struct ReferenceGraph {
    amalgam_type: AmalgamType,
    gog: Arc<GraphOfGroups>,
    vertex_auts: Vec<AutGroup>,
    edge_auts: Vec<AutGroup>,
}

impl ReferenceGraph {
    pub fn amalgam_type(&self) -> &AmalgamType {
        &self.amalgam_type
    }

    pub fn graph_of_groups(&self) -> &Arc<GraphOfGroups> {
        &self.gog
    }

    pub fn graph(&self) -> &Arc<OrientedGraph> {
        self.gog.graph()
    }

    pub fn vertex_aut(&self, v: usize) -> &AutGroup {
        &self.vertex_auts[v]
    }

    pub fn edge_aut(&self, edge: usize) -> &AutGroup {
        &self.edge_auts[edge]
    }
}

/// Build the reference graph: A_i = Aut(G_i), A_e the automorphisms of G_e
/// preserving both dart images, alpha_e the restriction along the reference
/// inclusion of the dart.
pub fn reference_graph(t: &AmalgamType, cap: usize) -> Result<ReferenceGraph> {
    let reference = t.reference();
    let graph = Arc::clone(reference.graph());

    let vertex_auts: Vec<AutGroup> = reference
        .vertex_groups()
        .iter()
        .map(|g| automorphism_group(g, cap))
        .collect::<Result<_>>()?;

    let mut edge_auts = Vec::with_capacity(graph.edge_count());
    for k in 0..graph.edge_count() {
        let e = graph.forward_dart(k);
        let images = vec![t.image(e).clone(), t.image(graph.reverse(e)).clone()];
        edge_auts.push(relative_automorphism_group(
            reference.edge_group(k),
            &images,
            cap,
        )?);
    }

    let mut edge_maps = Vec::with_capacity(graph.dart_count());
    for e in 0..graph.dart_count() {
        let k = graph.edge_of(e);
        let u = graph.tail(e);
        let psi = reference.inclusion(e);
        let images: Vec<usize> = (0..edge_auts[k].order())
            .map(|j| {
                let a = edge_auts[k].automorphism(j);
                let restricted =
                    restrict_aut(&a, psi).expect("edge automorphisms preserve the image");
                vertex_auts[u]
                    .index_of(&restricted)
                    .expect("full automorphism group contains every restriction")
            })
            .collect();
        edge_maps.push(GroupMap::from_element_images(
            edge_auts[k].carrier(),
            vertex_auts[u].carrier(),
            images,
        )?);
    }

    let gog = Arc::new(GraphOfGroups::new(
        graph,
        vertex_auts.iter().map(|a| Arc::clone(a.carrier())).collect(),
        edge_auts.iter().map(|a| Arc::clone(a.carrier())).collect(),
        edge_maps,
    )?);

    Ok(ReferenceGraph {
        amalgam_type: t.clone(),
        gog,
        vertex_auts,
        edge_auts,
    })
}

/// A pointing: one element of the tail vertex group per dart.
#[derive(Debug, Clone)]
pub struct Pointing {
    base: Arc<GraphOfGroups>,
    delta: Vec<usize>,
}

impl PartialEq for Pointing {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.delta == other.delta
    }
}
impl Eq for Pointing {}

impl Pointing {
    pub fn new(base: &Arc<GraphOfGroups>, delta: Vec<usize>) -> Result<Pointing> {
        let graph = base.graph();
        if delta.len() != graph.dart_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} pointing entries, got {}",
                graph.dart_count(),
                delta.len()
            )));
        }
        for e in 0..graph.dart_count() {
            let order = base.vertex_group(graph.tail(e)).order();
            if delta[e] >= order {
                return Err(Error::IndexOutOfRange {
                    index: delta[e],
                    order,
                });
            }
        }
        Ok(Pointing {
            base: Arc::clone(base),
            delta,
        })
    }

    pub fn identity(base: &Arc<GraphOfGroups>) -> Pointing {
        Pointing {
            base: Arc::clone(base),
            delta: vec![0; base.graph().dart_count()],
        }
    }

    pub fn base(&self) -> &Arc<GraphOfGroups> {
        &self.base
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }
}

/// The pointing associated to an amalgam of the reference type:
/// delta_e = phi_e^{-1} ∘ psi_e.
pub fn pointing_from_amalgam(rg: &ReferenceGraph, a: &Amalgam) -> Result<Pointing> {
    if !same_type(a, rg.amalgam_type())? {
        return Err(Error::TypeMismatch(
            "pointing requires an amalgam of the reference type".into(),
        ));
    }
    let graph = rg.graph();
    let reference = rg.amalgam_type().reference();
    let mut delta = Vec::with_capacity(graph.dart_count());
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let phi = a.inclusion(e);
        let psi = reference.inclusion(e);
        let g = a.vertex_group(u);
        let images: Vec<usize> = (0..g.order())
            .map(|x| {
                phi.partial_inverse(psi.apply(x))
                    .expect("same image subgroup")
            })
            .collect();
        let map = GroupMap::from_element_images(g, g, images)?;
        let aut = crate::homo::Automorphism::from_map(map)?;
        let idx = rg
            .vertex_aut(u)
            .index_of(&aut)
            .expect("full automorphism group");
        delta.push(idx);
    }
    Pointing::new(rg.graph_of_groups(), delta)
}

/// The amalgam associated to a pointing: phi_e = psi_e ∘ delta_e^{-1}.
pub fn amalgam_from_pointing(rg: &ReferenceGraph, p: &Pointing) -> Result<Amalgam> {
    if !Arc::ptr_eq(p.base(), rg.graph_of_groups()) && p.base() != rg.graph_of_groups() {
        return Err(Error::ShapeMismatch(
            "pointing does not live over this reference graph".into(),
        ));
    }
    let graph = rg.graph();
    let reference = rg.amalgam_type().reference();
    let mut inclusions = Vec::with_capacity(graph.dart_count());
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let psi = reference.inclusion(e);
        let delta = rg.vertex_aut(u).automorphism(p.delta()[e]);
        let delta_inv = delta.inverse();
        let g = reference.vertex_group(u);
        let images: Vec<usize> = (0..g.order())
            .map(|x| psi.apply(delta_inv.apply(x)))
            .collect();
        inclusions.push(GroupMap::from_element_images(
            g,
            reference.edge_group(graph.edge_of(e)),
            images,
        )?);
    }
    Amalgam::new(
        Arc::clone(graph),
        reference.vertex_groups().to_vec(),
        reference.edge_groups().to_vec(),
        inclusions,
    )
}

/// A witness for an isomorphism of pointings: a_i per vertex, a_e per
/// geometric edge (the two darts share it), satisfying the displayed
/// equation for every dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointingWitness {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl PointingWitness {
    pub fn identity(c: &GraphOfGroups) -> PointingWitness {
        PointingWitness {
            vertex: vec![0; c.graph().vertex_count()],
            edge: vec![0; c.graph().edge_count()],
        }
    }
}

/// Re-check delta1_e * alpha_e(a_e) = a_{tail(e)} * delta2_e on every dart.
pub fn verify_pointing_witness(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    w: &PointingWitness,
) -> bool {
    let graph = c.graph();
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let a = c.vertex_group(u);
        let alpha = c.edge_map(e);
        let lhs = a.mul(p1.delta()[e], alpha.apply(w.edge[graph.edge_of(e)]));
        let rhs = a.mul(w.vertex[u], p2.delta()[e]);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Search strategy for the pointing-isomorphism decider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeciderMode {
    /// Iterate edge elements, solve for vertex elements (default).
    EdgeFirst,
    /// Iterate vertex elements, scan edges for a compatible element.
    VertexFirst,
}

/// Decide whether two pointings over one graph of groups are isomorphic,
/// returning the first witness in canonical order. `edge_domains`, when
/// given, restricts the edge element of each geometric edge to the listed
/// carrier indices (used by the rigid classifier).
pub fn pointings_isomorphic(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    mode: DeciderMode,
    edge_domains: Option<&[Vec<usize>]>,
    budget: u64,
) -> Result<Option<PointingWitness>> {
    if p1.base().as_ref() != c || p2.base().as_ref() != c {
        return Err(Error::ShapeMismatch(
            "pointings do not live over the given graph of groups".into(),
        ));
    }
    let graph = c.graph();
    let full_domains: Vec<Vec<usize>>;
    let domains: &[Vec<usize>] = match edge_domains {
        Some(d) => {
            if d.len() != graph.edge_count() {
                return Err(Error::ShapeMismatch(
                    "one edge domain per geometric edge required".into(),
                ));
            }
            d
        }
        None => {
            full_domains = (0..graph.edge_count())
                .map(|k| (0..c.edge_group(k).order()).collect())
                .collect();
            &full_domains
        }
    };
    match mode {
        DeciderMode::EdgeFirst => edge_first(c, p1, p2, domains, budget),
        DeciderMode::VertexFirst => vertex_first(c, p1, p2, domains, budget),
    }
}

fn edge_first(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    domains: &[Vec<usize>],
    budget: u64,
) -> Result<Option<PointingWitness>> {
    let graph = c.graph();
    let ne = graph.edge_count();
    let mut choice = vec![0usize; ne];
    let mut tuples = 0u64;
    loop {
        tuples += 1;
        if tuples > budget {
            return Err(Error::BudgetExceeded {
                budget,
                context: "pointing isomorphism decider".into(),
            });
        }
        let edge_elems: Vec<usize> = (0..ne).map(|k| domains[k][choice[k]]).collect();
        if let Some(vertex) = solve_vertices(c, p1, p2, &edge_elems) {
            return Ok(Some(PointingWitness {
                vertex,
                edge: edge_elems,
            }));
        }
        if ne == 0 {
            return Ok(None);
        }
        // odometer
        let mut pos = ne;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < domains[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Every dart forces the vertex element at its tail; collect and check
/// consistency. Vertices without incident darts stay at the identity.
fn solve_vertices(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    edge_elems: &[usize],
) -> Option<Vec<usize>> {
    let graph = c.graph();
    let mut vertex = vec![usize::MAX; graph.vertex_count()];
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let a = c.vertex_group(u);
        let alpha = c.edge_map(e);
        let forced = a.mul(
            a.mul(p1.delta()[e], alpha.apply(edge_elems[graph.edge_of(e)])),
            a.inv(p2.delta()[e]),
        );
        if vertex[u] == usize::MAX {
            vertex[u] = forced;
        } else if vertex[u] != forced {
            return None;
        }
    }
    for v in vertex.iter_mut() {
        if *v == usize::MAX {
            *v = 0;
        }
    }
    Some(vertex)
}

fn vertex_first(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    domains: &[Vec<usize>],
    budget: u64,
) -> Result<Option<PointingWitness>> {
    let graph = c.graph();
    let nv = graph.vertex_count();
    let mut choice = vec![0usize; nv];
    let mut tuples = 0u64;
    loop {
        tuples += 1;
        if tuples > budget {
            return Err(Error::BudgetExceeded {
                budget,
                context: "pointing isomorphism decider (vertex mode)".into(),
            });
        }
        if let Some(edge) = solve_edges(c, p1, p2, &choice, domains) {
            return Ok(Some(PointingWitness {
                vertex: choice,
                edge,
            }));
        }
        if nv == 0 {
            return Ok(None);
        }
        let mut pos = nv;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < c.vertex_group(pos).order() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// With all vertex elements fixed, each geometric edge needs one element
/// satisfying both dart equations; take the minimal one.
fn solve_edges(
    c: &GraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    vertex: &[usize],
    domains: &[Vec<usize>],
) -> Option<Vec<usize>> {
    let graph = c.graph();
    let mut edge = Vec::with_capacity(graph.edge_count());
    for k in 0..graph.edge_count() {
        let fwd = graph.forward_dart(k);
        let darts = [fwd, graph.reverse(fwd)];
        let found = domains[k].iter().copied().find(|&cand| {
            darts.iter().all(|&e| {
                let u = graph.tail(e);
                let a = c.vertex_group(u);
                let alpha = c.edge_map(e);
                a.mul(p1.delta()[e], alpha.apply(cand)) == a.mul(vertex[u], p2.delta()[e])
            })
        });
        match found {
            Some(x) => edge.push(x),
            None => return None,
        }
    }
    Some(edge)
}

/// Normalize a pointing on a spanning tree (or forest): the returned pointing
/// has delta = identity on every tree dart oriented toward the base, the
/// witness certifies the isomorphism from the input to the output, and the
/// operation is idempotent. Each non-base vertex element absorbs the delta of
/// its parent-ward dart; edge elements stay at the identity.
pub fn normalize_on_tree(
    c: &Arc<GraphOfGroups>,
    p: &Pointing,
    tree: &SpanningTree,
) -> (Pointing, PointingWitness) {
    let graph = c.graph();
    let mut vertex = vec![0usize; graph.vertex_count()];
    for v in 0..graph.vertex_count() {
        if let Some(away) = tree.parent_dart(v) {
            let toward = graph.reverse(away);
            debug_assert_eq!(graph.tail(toward), v);
            vertex[v] = p.delta()[toward];
        }
    }
    let edge = vec![0usize; graph.edge_count()];
    let mut delta = Vec::with_capacity(graph.dart_count());
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let a = c.vertex_group(u);
        // alpha_e(identity) = identity, so delta2_e = a_u^{-1} * delta1_e
        delta.push(a.mul(a.inv(vertex[u]), p.delta()[e]));
    }
    let normalized = Pointing {
        base: Arc::clone(c),
        delta,
    };
    let witness = PointingWitness { vertex, edge };
    debug_assert!(verify_pointing_witness(c, p, &normalized, &witness));
    (normalized, witness)
}

/// One isomorphism class of pointings: canonical representative (the first
/// member in enumeration order), all enumerated members, and a witness per
/// member certifying members[i] ≅ representative.
#[derive(Debug, Clone)]
pub struct PointingClass {
    pub representative: Pointing,
    pub members: Vec<Pointing>,
    pub witnesses: Vec<PointingWitness>,
}

impl PointingClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Result of classifying all tree-normalized pointings of a reference graph.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub classes: Vec<PointingClass>,
    pub enumerated: u64,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Options for `classify`.
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub decider_mode: DeciderMode,
    pub decider_budget: u64,
    pub enumeration_budget: u64,
    pub parallel: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            decider_mode: DeciderMode::EdgeFirst,
            decider_budget: 10_000_000,
            enumeration_budget: 1_000_000,
            parallel: false,
        }
    }
}

/// The residual enumeration slots after tree normalization: every dart except
/// the toward-base tree darts, with the two darts of a shared loop counted as
/// one slot.
fn residual_slots(rg: &ReferenceGraph, tree: &SpanningTree) -> Vec<(Vec<usize>, usize)> {
    let graph = rg.graph();
    let toward: Vec<usize> = tree
        .away_darts()
        .iter()
        .map(|&e| graph.reverse(e))
        .collect();
    let mut slots = Vec::new();
    let mut consumed = vec![false; graph.dart_count()];
    for e in 0..graph.dart_count() {
        if consumed[e] || toward.contains(&e) {
            continue;
        }
        let k = graph.edge_of(e);
        let order = rg
            .graph_of_groups()
            .vertex_group(graph.tail(e))
            .order();
        if rg.amalgam_type().is_shared(k) {
            let eb = graph.reverse(e);
            consumed[e] = true;
            consumed[eb] = true;
            slots.push((vec![e, eb], order));
        } else {
            consumed[e] = true;
            slots.push((vec![e], order));
        }
    }
    slots
}

/// Classify all pointings of the reference graph up to isomorphism.
///
/// Enumerates tree-normalized pointings (delta = identity on toward-base tree
/// darts, all values on the residual darts, shared loops varying jointly) and
/// partitions them with the pairwise decider against the canonical minimal
/// representative of each class. `edge_domains` restricts the decider's edge
/// elements (rigid mode); it does not change the enumeration domain.
pub fn classify(
    rg: &ReferenceGraph,
    opts: &ClassifyOptions,
    edge_domains: Option<&[Vec<usize>]>,
) -> Result<ClassificationReport> {
    let c = rg.graph_of_groups();
    let tree = SpanningTree::forest(rg.graph());
    let slots = residual_slots(rg, &tree);

    let mut classes: Vec<PointingClass> = Vec::new();
    let mut enumerated = 0u64;

    let mut choice = vec![0usize; slots.len()];
    'enumerate: loop {
        enumerated += 1;
        if enumerated > opts.enumeration_budget {
            return Err(Error::BudgetExceeded {
                budget: opts.enumeration_budget,
                context: "pointing enumeration".into(),
            });
        }
        let mut delta = vec![0usize; rg.graph().dart_count()];
        for (s, (darts, _)) in slots.iter().enumerate() {
            for &d in darts {
                delta[d] = choice[s];
            }
        }
        let p = Pointing::new(c, delta)?;

        let matched = match_class(c, &p, &classes, opts, edge_domains)?;
        match matched {
            Some((i, w)) => {
                classes[i].members.push(p);
                classes[i].witnesses.push(w);
            }
            None => {
                let identity_witness = PointingWitness::identity(c);
                classes.push(PointingClass {
                    representative: p.clone(),
                    members: vec![p],
                    witnesses: vec![identity_witness],
                });
            }
        }

        // odometer over slots
        if slots.is_empty() {
            break 'enumerate;
        }
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                break 'enumerate;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < slots[pos].1 {
                break;
            }
            choice[pos] = 0;
        }
    }

    Ok(ClassificationReport {
        classes,
        enumerated,
    })
}

/// Find the least-indexed class whose representative is isomorphic to `p`.
fn match_class(
    c: &Arc<GraphOfGroups>,
    p: &Pointing,
    classes: &[PointingClass],
    opts: &ClassifyOptions,
    edge_domains: Option<&[Vec<usize>]>,
) -> Result<Option<(usize, PointingWitness)>> {
    if opts.parallel {
        let hits: Vec<Result<Option<(usize, PointingWitness)>>> = classes
            .par_iter()
            .enumerate()
            .map(|(i, cl)| {
                Ok(pointings_isomorphic(
                    c,
                    p,
                    &cl.representative,
                    opts.decider_mode,
                    edge_domains,
                    opts.decider_budget,
                )?
                .map(|w| (i, w)))
            })
            .collect();
        let mut best: Option<(usize, PointingWitness)> = None;
        for h in hits {
            if let Some((i, w)) = h? {
                if best.as_ref().map_or(true, |(bi, _)| i < *bi) {
                    best = Some((i, w));
                }
            }
        }
        Ok(best)
    } else {
        for (i, cl) in classes.iter().enumerate() {
            if let Some(w) = pointings_isomorphic(
                c,
                p,
                &cl.representative,
                opts.decider_mode,
                edge_domains,
                opts.decider_budget,
            )? {
                return Ok(Some((i, w)));
            }
        }
        Ok(None)
    }
}
