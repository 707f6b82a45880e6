//! Amalgams over a fixed oriented graph: vertex groups, edge groups and
//! injective inclusion maps per dart. Includes the type-compatibility check,
//! the exhaustive isomorphism oracle (the ground truth every classifier is
//! measured against), completion checking, presentation emission, and the
//! normalizer-pullback predicates (D1)/(D2).

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::group::{FiniteGroup, Subgroup};
use crate::homo::{automorphism_group, AutGroup, GroupMap};
use std::fmt::Write as _;
use std::sync::Arc;

/// An amalgam over an oriented graph. Edge groups are attached per geometric
/// edge (shared by the two darts); inclusion maps are attached per dart and
/// map the tail vertex group injectively into the edge group.
#[derive(Debug, Clone)]
pub struct Amalgam {
    graph: Arc<OrientedGraph>,
    vertex_groups: Vec<Arc<FiniteGroup>>,
    edge_groups: Vec<Arc<FiniteGroup>>,
    inclusions: Vec<GroupMap>,
}

impl PartialEq for Amalgam {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.vertex_groups == other.vertex_groups
            && self.edge_groups == other.edge_groups
            && self.inclusions == other.inclusions
    }
}
impl Eq for Amalgam {}

impl Amalgam {
    pub fn new(
        graph: Arc<OrientedGraph>,
        vertex_groups: Vec<Arc<FiniteGroup>>,
        edge_groups: Vec<Arc<FiniteGroup>>,
        inclusions: Vec<GroupMap>,
    ) -> Result<Amalgam> {
        if vertex_groups.len() != graph.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} vertex groups, got {}",
                graph.vertex_count(),
                vertex_groups.len()
            )));
        }
        if edge_groups.len() != graph.edge_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} edge groups, got {}",
                graph.edge_count(),
                edge_groups.len()
            )));
        }
        if inclusions.len() != graph.dart_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} inclusion maps, got {}",
                graph.dart_count(),
                inclusions.len()
            )));
        }
        for e in 0..graph.dart_count() {
            let phi = &inclusions[e];
            if **phi.domain() != *vertex_groups[graph.tail(e)] {
                return Err(Error::ShapeMismatch(format!(
                    "inclusion on dart {e} does not start at the tail vertex group"
                )));
            }
            if **phi.codomain() != *edge_groups[graph.edge_of(e)] {
                return Err(Error::ShapeMismatch(format!(
                    "inclusion on dart {e} does not land in the edge group"
                )));
            }
            if !phi.is_injective() {
                return Err(Error::NotInjective);
            }
        }
        Ok(Amalgam {
            graph,
            vertex_groups,
            edge_groups,
            inclusions,
        })
    }

    pub fn graph(&self) -> &Arc<OrientedGraph> {
        &self.graph
    }

    pub fn vertex_group(&self, v: usize) -> &Arc<FiniteGroup> {
        &self.vertex_groups[v]
    }

    pub fn vertex_groups(&self) -> &[Arc<FiniteGroup>] {
        &self.vertex_groups
    }

    pub fn edge_group(&self, edge: usize) -> &Arc<FiniteGroup> {
        &self.edge_groups[edge]
    }

    pub fn edge_groups(&self) -> &[Arc<FiniteGroup>] {
        &self.edge_groups
    }

    /// Inclusion map of the dart: G_{tail(e)} -> G_{edge(e)}.
    pub fn inclusion(&self, dart: usize) -> &GroupMap {
        &self.inclusions[dart]
    }

    pub fn inclusions(&self) -> &[GroupMap] {
        &self.inclusions
    }

    /// Same graph and same groups in every slot (content equality).
    pub fn same_slots(&self, other: &Amalgam) -> bool {
        self.graph == other.graph
            && self.vertex_groups == other.vertex_groups
            && self.edge_groups == other.edge_groups
    }
}

/// A fixed reference amalgam together with its cached image subgroups, and
/// the per-edge flag marking loops whose two darts share one inclusion map
/// (the classical two-group encoding).
#[derive(Debug, Clone)]
pub struct AmalgamType {
    reference: Amalgam,
    images: Vec<Subgroup>,
    shared_edges: Vec<bool>,
}

impl AmalgamType {
    pub fn new(reference: Amalgam) -> AmalgamType {
        let images = (0..reference.graph().dart_count())
            .map(|e| reference.inclusion(e).image())
            .collect();
        let shared_edges = vec![false; reference.graph().edge_count()];
        AmalgamType {
            reference,
            images,
            shared_edges,
        }
    }

    /// Mark loop edges whose two darts carry one inclusion map. Classification
    /// then ranges over amalgams respecting the sharing.
    pub fn with_shared_edges(mut self, edges: &[usize]) -> Result<AmalgamType> {
        for &k in edges {
            if k >= self.reference.graph().edge_count() {
                return Err(Error::ShapeMismatch(format!("no edge {k}")));
            }
            if !self.reference.graph().is_loop(k) {
                return Err(Error::ShapeMismatch(format!(
                    "edge {k} is not a loop; its darts cannot share an inclusion map"
                )));
            }
            let e = self.reference.graph().forward_dart(k);
            let eb = self.reference.graph().reverse(e);
            if self.reference.inclusion(e) != self.reference.inclusion(eb) {
                return Err(Error::ShapeMismatch(format!(
                    "edge {k} marked shared but its reference inclusions differ"
                )));
            }
            self.shared_edges[k] = true;
        }
        Ok(self)
    }

    pub fn reference(&self) -> &Amalgam {
        &self.reference
    }

    pub fn graph(&self) -> &Arc<OrientedGraph> {
        self.reference.graph()
    }

    /// The image subgroup of the reference inclusion on this dart.
    pub fn image(&self, dart: usize) -> &Subgroup {
        &self.images[dart]
    }

    pub fn shared_edges(&self) -> &[bool] {
        &self.shared_edges
    }

    pub fn is_shared(&self, edge: usize) -> bool {
        self.shared_edges[edge]
    }
}

/// Does the amalgam have the given type: same slots and the same image
/// subgroup on every dart?
pub fn same_type(a: &Amalgam, t: &AmalgamType) -> Result<bool> {
    if !a.same_slots(t.reference()) {
        return Err(Error::GraphMismatch);
    }
    Ok((0..a.graph().dart_count()).all(|e| a.inclusion(e).image() == *t.image(e)))
}

/// The automorphism groups of every slot of an amalgam type, shared by the
/// oracle across many pairwise checks.
#[derive(Debug, Clone)]
pub struct SlotAutomorphisms {
    pub vertex_auts: Vec<AutGroup>,
    pub edge_auts: Vec<AutGroup>,
}

impl SlotAutomorphisms {
    pub fn compute(a: &Amalgam, cap: usize) -> Result<SlotAutomorphisms> {
        let vertex_auts = a
            .vertex_groups()
            .iter()
            .map(|g| automorphism_group(g, cap))
            .collect::<Result<Vec<_>>>()?;
        let edge_auts = a
            .edge_groups()
            .iter()
            .map(|g| automorphism_group(g, cap))
            .collect::<Result<Vec<_>>>()?;
        Ok(SlotAutomorphisms {
            vertex_auts,
            edge_auts,
        })
    }
}

/// A witness for an amalgam isomorphism chi: A1 -> A2: one automorphism per
/// vertex slot and one per geometric edge slot (indices into the carriers of
/// `SlotAutomorphisms`), satisfying chi_E ∘ phi1_e = phi2_e ∘ chi_{tail(e)}
/// for every dart e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamWitness {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

/// Re-check the defining square of an amalgam isomorphism witness.
pub fn verify_amalgam_witness(
    a1: &Amalgam,
    a2: &Amalgam,
    slots: &SlotAutomorphisms,
    w: &AmalgamWitness,
) -> bool {
    let graph = a1.graph();
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let k = graph.edge_of(e);
        let chi_u = slots.vertex_auts[u].automorphism(w.vertex[u]);
        let chi_e = slots.edge_auts[k].automorphism(w.edge[k]);
        let phi1 = a1.inclusion(e);
        let phi2 = a2.inclusion(e);
        for x in 0..a1.vertex_group(u).order() {
            if chi_e.apply(phi1.apply(x)) != phi2.apply(chi_u.apply(x)) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for an isomorphism between two amalgams with identical
/// slots: all tuples of vertex-group automorphisms, with the edge-group
/// automorphism chosen minimally per edge once the vertices are fixed. The
/// first witness in this canonical order is returned.
pub fn amalgams_isomorphic_oracle(
    a1: &Amalgam,
    a2: &Amalgam,
    slots: &SlotAutomorphisms,
    budget: u64,
) -> Result<Option<AmalgamWitness>> {
    if !a1.same_slots(a2) {
        return Err(Error::GraphMismatch);
    }
    let nv = a1.graph().vertex_count();
    let mut vertex_choice = vec![0usize; nv];
    let mut probes = 0u64;
    descend(a1, a2, slots, &mut vertex_choice, 0, &mut probes, budget)
}

fn descend(
    a1: &Amalgam,
    a2: &Amalgam,
    slots: &SlotAutomorphisms,
    vertex_choice: &mut Vec<usize>,
    v: usize,
    probes: &mut u64,
    budget: u64,
) -> Result<Option<AmalgamWitness>> {
    let graph = a1.graph();
    if v == graph.vertex_count() {
        // Vertices fixed; edges are independent, take the minimal choice each.
        let mut edge_choice = Vec::with_capacity(graph.edge_count());
        for k in 0..graph.edge_count() {
            match solve_edge(a1, a2, slots, vertex_choice, k, probes, budget)? {
                Some(c) => edge_choice.push(c),
                None => return Ok(None),
            }
        }
        return Ok(Some(AmalgamWitness {
            vertex: vertex_choice.clone(),
            edge: edge_choice,
        }));
    }
    for c in 0..slots.vertex_auts[v].order() {
        vertex_choice[v] = c;
        if let Some(w) = descend(a1, a2, slots, vertex_choice, v + 1, probes, budget)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn solve_edge(
    a1: &Amalgam,
    a2: &Amalgam,
    slots: &SlotAutomorphisms,
    vertex_choice: &[usize],
    edge: usize,
    probes: &mut u64,
    budget: u64,
) -> Result<Option<usize>> {
    let graph = a1.graph();
    let fwd = graph.forward_dart(edge);
    let darts = [fwd, graph.reverse(fwd)];
    'cand: for c in 0..slots.edge_auts[edge].order() {
        *probes += 1;
        if *probes > budget {
            return Err(Error::BudgetExceeded {
                budget,
                context: "amalgam isomorphism oracle".into(),
            });
        }
        let chi_e = slots.edge_auts[edge].automorphism(c);
        for &e in &darts {
            let u = graph.tail(e);
            let chi_u = slots.vertex_auts[u].automorphism(vertex_choice[u]);
            let phi1 = a1.inclusion(e);
            let phi2 = a2.inclusion(e);
            for x in 0..a1.vertex_group(u).order() {
                if chi_e.apply(phi1.apply(x)) != phi2.apply(chi_u.apply(x)) {
                    continue 'cand;
                }
            }
        }
        return Ok(Some(c));
    }
    Ok(None)
}

/// A candidate completion: a target group with one map per vertex and per
/// geometric edge (not necessarily injective).
#[derive(Debug, Clone)]
pub struct CompletionCandidate {
    pub target: Arc<FiniteGroup>,
    pub vertex_maps: Vec<GroupMap>,
    pub edge_maps: Vec<GroupMap>,
}

/// Outcome of checking a completion candidate against an amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionCheck {
    /// phi_E ∘ phi_e = phi_{tail(e)} held for every dart.
    pub commutes: bool,
    /// Some completion map has a non-trivial image.
    pub nontrivial: bool,
}

pub fn check_completion(a: &Amalgam, c: &CompletionCandidate) -> Result<CompletionCheck> {
    let graph = a.graph();
    if c.vertex_maps.len() != graph.vertex_count() || c.edge_maps.len() != graph.edge_count() {
        return Err(Error::ShapeMismatch(
            "completion maps do not match the graph".into(),
        ));
    }
    for v in 0..graph.vertex_count() {
        if **c.vertex_maps[v].domain() != **a.vertex_group(v)
            || **c.vertex_maps[v].codomain() != *c.target
        {
            return Err(Error::ShapeMismatch(format!(
                "vertex map {v} has wrong endpoints"
            )));
        }
    }
    for k in 0..graph.edge_count() {
        if **c.edge_maps[k].domain() != **a.edge_group(k)
            || **c.edge_maps[k].codomain() != *c.target
        {
            return Err(Error::ShapeMismatch(format!(
                "edge map {k} has wrong endpoints"
            )));
        }
    }
    let mut commutes = true;
    'outer: for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let k = graph.edge_of(e);
        for x in 0..a.vertex_group(u).order() {
            if c.edge_maps[k].apply(a.inclusion(e).apply(x)) != c.vertex_maps[u].apply(x) {
                commutes = false;
                break 'outer;
            }
        }
    }
    let nontrivial = c.vertex_maps.iter().any(|m| m.image().order() > 1)
        || c.edge_maps.iter().any(|m| m.image().order() > 1);
    Ok(CompletionCheck {
        commutes,
        nontrivial,
    })
}

/// Emit a finite presentation of the universal completion: one generator per
/// non-identity element of every vertex and edge group, the multiplication
/// tables as relations, and one identification per dart.
pub fn emit_presentation(a: &Amalgam) -> String {
    let graph = a.graph();
    let mut out = String::new();

    let gen_name = |slot: &str, idx: usize| format!("g[{slot}][{idx}]");
    let word = |slot: &str, idx: usize| {
        if idx == 0 {
            "1".to_string()
        } else {
            gen_name(slot, idx)
        }
    };

    let mut slots: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for v in 0..graph.vertex_count() {
        slots.push((format!("v{v}"), Arc::clone(a.vertex_group(v))));
    }
    for k in 0..graph.edge_count() {
        slots.push((format!("e{k}"), Arc::clone(a.edge_group(k))));
    }
    let mut generators = Vec::new();
    for (name, group) in &slots {
        for idx in 1..group.order() {
            generators.push(gen_name(name, idx));
        }
    }
    writeln!(out, "generators: {}", generators.join(" ")).unwrap();

    for (name, group) in &slots {
        for x in 1..group.order() {
            for y in 1..group.order() {
                writeln!(
                    out,
                    "{}*{} = {}",
                    gen_name(name, x),
                    gen_name(name, y),
                    word(name, group.mul(x, y))
                )
                .unwrap();
            }
        }
    }
    for e in 0..graph.dart_count() {
        let u = graph.tail(e);
        let k = graph.edge_of(e);
        let vslot = format!("v{u}");
        let eslot = format!("e{k}");
        for x in 1..a.vertex_group(u).order() {
            writeln!(
                out,
                "{} = {}",
                word(&eslot, a.inclusion(e).apply(x)),
                gen_name(&vslot, x)
            )
            .unwrap();
        }
    }
    out
}

/// The normalizer pullback of one dart: Dbar_e = N_{G_e}(im phi_ebar) ∩ im phi_e
/// inside the edge group, and D_e = phi_e^{-1}(Dbar_e) inside the tail vertex
/// group.
pub fn compute_d(a: &Amalgam, dart: usize) -> (Subgroup, Subgroup) {
    let graph = a.graph();
    let head_image = a.inclusion(graph.reverse(dart)).image();
    let tail_image = a.inclusion(dart).image();
    let dbar = head_image
        .normalizer()
        .intersect(&tail_image)
        .expect("same parent");
    let d = a.inclusion(dart).preimage(&dbar).expect("same codomain");
    (dbar, d)
}

/// (D1): darts with a common tail have equal pullbacks D_e.
pub fn check_d1(a: &Amalgam) -> bool {
    let graph = a.graph();
    for v in 0..graph.vertex_count() {
        let mut first: Option<Subgroup> = None;
        for e in graph.darts_from(v) {
            let (_, d) = compute_d(a, e);
            match &first {
                None => first = Some(d),
                Some(f) => {
                    if *f != d {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// (D2): every pullback equals the reference pullback computed from the type.
pub fn check_d2(a: &Amalgam, t: &AmalgamType) -> Result<bool> {
    if !same_type(a, t)? {
        return Err(Error::TypeMismatch(
            "amalgam is not of the given type".into(),
        ));
    }
    for e in 0..a.graph().dart_count() {
        let (_, d) = compute_d(a, e);
        let (_, d_ref) = compute_d(t.reference(), e);
        if d != d_ref {
            return Ok(false);
        }
    }
    Ok(true)
}
