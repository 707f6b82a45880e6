//! Rigidity of a graph of groups: a common complement of the two dart
//! kernels on every edge, the reduced graph of groups built from those
//! complements, and the classifier with its edge-element search restricted
//! to them.

use crate::error::{Error, Result};
use crate::group::{complement_avoiding, Subgroup};
use crate::pointing::{classify, ClassificationReport, ClassifyOptions, GraphOfGroups, ReferenceGraph};
use std::sync::Arc;

/// Per-dart rewriting tables of a reduced graph of groups.
#[derive(Debug, Clone)]
struct DartTables {
    /// Canonical (least) representative of a * im(alpha_e), per element of
    /// the tail vertex group.
    coset_rep: Vec<usize>,
    /// Position p in the tilde member list with
    /// alpha_e(tilde[p]) = coset_rep[a]^{-1} * a.
    tilde_factor: Vec<usize>,
    /// alpha_e of the p-th tilde member.
    alpha_tilde: Vec<usize>,
}

/// A rigid graph of groups: for every geometric edge one subgroup of the
/// edge group meeting both dart kernels trivially and mapping bijectively
/// onto both dart images. Carries the fixed coset transversals used for
/// canonical forms in the path group.
#[derive(Debug)]
pub struct ReducedGraphOfGroups {
    base: Arc<GraphOfGroups>,
    tilde: Vec<Subgroup>,
    tables: Vec<DartTables>,
}

impl ReducedGraphOfGroups {
    pub fn base(&self) -> &Arc<GraphOfGroups> {
        &self.base
    }

    /// The reduced edge group of a geometric edge, as a subgroup of the full
    /// edge group.
    pub fn tilde(&self, edge: usize) -> &Subgroup {
        &self.tilde[edge]
    }

    pub fn tilde_order(&self, edge: usize) -> usize {
        self.tilde[edge].order()
    }

    /// alpha_e applied to the p-th member of the edge's reduced group.
    pub fn alpha_tilde(&self, dart: usize, p: usize) -> usize {
        self.tables[dart].alpha_tilde[p]
    }

    /// Position of the unique reduced-group member mapping to `h` under
    /// alpha_e, if `h` lies in the image.
    pub fn image_position(&self, dart: usize, h: usize) -> Option<usize> {
        self.tables[dart].alpha_tilde.iter().position(|&x| x == h)
    }

    /// Canonical representative of a * im(alpha_e) in the tail vertex group.
    pub fn coset_rep(&self, dart: usize, a: usize) -> usize {
        self.tables[dart].coset_rep[a]
    }

    /// The tilde-member position factoring `a` as coset_rep(a) * alpha_e(x).
    pub fn tilde_factor(&self, dart: usize, a: usize) -> usize {
        self.tables[dart].tilde_factor[a]
    }

    /// Edge-element domains for the restricted pointing decider: the carrier
    /// indices of each edge's reduced group.
    pub fn edge_domains(&self) -> Vec<Vec<usize>> {
        self.tilde.iter().map(|t| t.members().to_vec()).collect()
    }
}

/// Outcome of the rigidity check.
#[derive(Debug)]
pub enum Rigidity {
    Rigid(ReducedGraphOfGroups),
    /// No complement exists for the kernel data on this dart.
    NotRigid { dart: usize },
}

impl Rigidity {
    pub fn is_rigid(&self) -> bool {
        matches!(self, Rigidity::Rigid(_))
    }

    pub fn reduced(self) -> Option<ReducedGraphOfGroups> {
        match self {
            Rigidity::Rigid(r) => Some(r),
            Rigidity::NotRigid { .. } => None,
        }
    }
}

/// Check rigidity: per geometric edge, search a subgroup of the edge group
/// complementing the forward kernel and the backward kernel simultaneously
/// (the first complement in canonical order is kept). Kernel orders must
/// match on the two darts, otherwise no common complement can exist and the
/// graph of groups is reported not rigid at that edge.
pub fn is_rigid(c: &Arc<GraphOfGroups>, budget: u64) -> Result<Rigidity> {
    let graph = c.graph();
    let mut tilde = Vec::with_capacity(graph.edge_count());
    for k in 0..graph.edge_count() {
        let e = graph.forward_dart(k);
        let eb = graph.reverse(e);
        let ker_fwd = c.edge_map(e).kernel();
        let ker_bwd = c.edge_map(eb).kernel();
        if ker_fwd.order() != ker_bwd.order() {
            let dart = if ker_fwd.order() > ker_bwd.order() { e } else { eb };
            return Ok(Rigidity::NotRigid { dart });
        }
        let found = complement_avoiding(c.edge_group(k), &[ker_fwd, ker_bwd], budget)?;
        match found {
            Some(t) => tilde.push(t),
            None => return Ok(Rigidity::NotRigid { dart: e }),
        }
    }

    let mut tables = Vec::with_capacity(graph.dart_count());
    for dart in 0..graph.dart_count() {
        let k = graph.edge_of(dart);
        let alpha = c.edge_map(dart);
        let tail_group = c.vertex_group(graph.tail(dart));
        let alpha_tilde: Vec<usize> = tilde[k]
            .members()
            .iter()
            .map(|&m| alpha.apply(m))
            .collect();
        let mut in_image = vec![usize::MAX; tail_group.order()];
        for (p, &h) in alpha_tilde.iter().enumerate() {
            // the complement maps bijectively onto the image
            debug_assert_eq!(in_image[h], usize::MAX);
            in_image[h] = p;
        }
        let mut coset_rep = vec![usize::MAX; tail_group.order()];
        let mut tilde_factor = vec![usize::MAX; tail_group.order()];
        for a in 0..tail_group.order() {
            let rep = alpha_tilde
                .iter()
                .map(|&h| tail_group.mul(a, h))
                .min()
                .expect("image contains the identity");
            coset_rep[a] = rep;
            let h = tail_group.mul(tail_group.inv(rep), a);
            tilde_factor[a] = in_image[h];
            debug_assert_ne!(tilde_factor[a], usize::MAX);
        }
        tables.push(DartTables {
            coset_rep,
            tilde_factor,
            alpha_tilde,
        });
    }

    Ok(Rigidity::Rigid(ReducedGraphOfGroups {
        base: Arc::clone(c),
        tilde,
        tables,
    }))
}

/// Classify the pointings of a rigid reference graph with the decider's
/// edge-element search restricted to the reduced edge groups. The report
/// must agree with the unrestricted classification.
pub fn classify_rigid(
    rg: &ReferenceGraph,
    opts: &ClassifyOptions,
    search_budget: u64,
) -> Result<ClassificationReport> {
    match is_rigid(rg.graph_of_groups(), search_budget)? {
        Rigidity::Rigid(reduced) => {
            let domains = reduced.edge_domains();
            classify(rg, opts, Some(&domains))
        }
        Rigidity::NotRigid { dart } => Err(Error::NotRigid { dart }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{Amalgam, AmalgamType};
    use crate::graph::OrientedGraph;
    use crate::group::{FiniteGroup, DEFAULT_CAP};
    use crate::homo::GroupMap;
    use crate::perm::Perm;
    use crate::pointing::reference_graph;

    fn z3() -> Arc<FiniteGroup> {
        FiniteGroup::generate(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()], 3, 100).unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        FiniteGroup::generate(
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            3,
            100,
        )
        .unwrap()
    }

    fn v4() -> Arc<FiniteGroup> {
        FiniteGroup::generate(
            vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
            4,
            100,
        )
        .unwrap()
    }

    fn d8() -> Arc<FiniteGroup> {
        FiniteGroup::generate(
            vec![
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[1, 3]]).unwrap(),
            ],
            4,
            100,
        )
        .unwrap()
    }

    /// Z3 -> S3 (image A3) on a single edge: alphas are onto Aut(Z3) with
    /// kernel of order 3 on both darts.
    fn a3_in_s3_reference() -> ReferenceGraph {
        let graph = Arc::new(OrientedGraph::new(2, &[(0, 1)]).unwrap());
        let v = z3();
        let e = s3();
        let rot = e
            .index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap())
            .unwrap();
        let phi = GroupMap::from_gen_images(&v, &e, &[rot]).unwrap();
        let a =
            Amalgam::new(graph, vec![v.clone(), v], vec![e], vec![phi.clone(), phi]).unwrap();
        reference_graph(&AmalgamType::new(a), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn injective_alphas_are_rigid_with_full_edge_groups() {
        // identity inclusions Z3 -> Z3: alphas bijective, kernels trivial
        let graph = Arc::new(OrientedGraph::new(2, &[(0, 1)]).unwrap());
        let g = z3();
        let a = Amalgam::new(
            graph,
            vec![g.clone(), g.clone()],
            vec![g.clone()],
            vec![GroupMap::identity(&g), GroupMap::identity(&g)],
        )
        .unwrap();
        let rg = reference_graph(&AmalgamType::new(a), DEFAULT_CAP).unwrap();
        let r = is_rigid(rg.graph_of_groups(), 1_000_000).unwrap();
        let reduced = r.reduced().expect("rigid");
        assert_eq!(
            reduced.tilde_order(0),
            rg.graph_of_groups().edge_group(0).order()
        );
    }

    #[test]
    fn s3_with_a3_kernels_is_rigid_with_order_two_complement() {
        let rg = a3_in_s3_reference();
        let c = rg.graph_of_groups();
        assert_eq!(c.edge_map(0).kernel().order(), 3);
        assert_eq!(c.edge_map(1).kernel().order(), 3);
        let r = is_rigid(c, 1_000_000).unwrap();
        let reduced = r.reduced().expect("rigid");
        assert_eq!(reduced.tilde_order(0), 2);
        // complement meets both kernels trivially
        let t = reduced.tilde(0);
        for e in [0usize, 1] {
            let ker = c.edge_map(e).kernel();
            assert_eq!(t.intersect(&ker).unwrap().order(), 1);
        }
    }

    #[test]
    fn z4_style_kernel_without_complement_is_not_rigid() {
        // Vertex groups Z2 embedded in Z4 as the square subgroup: the edge
        // automorphism group is Aut(Z4) = Z2 acting trivially on the image,
        // so both alphas are trivial maps to the trivial Aut(Z2): kernel is
        // the whole Z2, complement exists (trivial subgroup). To get a
        // genuine failure, use vertex group Z4 whose Aut is Z2 and an edge
        // group with kernel Z4 inside Aut-carrier Z4... simplest concrete
        // failure: a graph of groups with edge group Z4 and alpha the
        // reduction Z4 -> Z2.
        let z4 =
            FiniteGroup::generate(vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()], 4, 100)
                .unwrap();
        let z2 =
            FiniteGroup::generate(vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()], 2, 100).unwrap();
        let graph = Arc::new(OrientedGraph::new(2, &[(0, 1)]).unwrap());
        let gen = z2.generator_indices()[0];
        let red = GroupMap::from_gen_images(&z4, &z2, &[gen]).unwrap();
        let c = Arc::new(
            GraphOfGroups::new(
                graph,
                vec![z2.clone(), z2.clone()],
                vec![z4.clone()],
                vec![red.clone(), red],
            )
            .unwrap(),
        );
        let r = is_rigid(&c, 1_000_000).unwrap();
        assert!(matches!(r, Rigidity::NotRigid { dart: 0 }));
    }

    #[test]
    fn classify_rigid_agrees_with_classify_on_nontrivial_kernels() {
        let rg = a3_in_s3_reference();
        let opts = ClassifyOptions::default();
        let full = classify(&rg, &opts, None).unwrap();
        let restricted = classify_rigid(&rg, &opts, 1_000_000).unwrap();
        assert_eq!(full.class_count(), restricted.class_count());
        for (a, b) in full.classes.iter().zip(restricted.classes.iter()) {
            assert_eq!(a.representative, b.representative);
            assert_eq!(a.members, b.members);
        }
    }

    #[test]
    fn goldschmidt_v4_d8_reference_is_rigid() {
        // the classical V4-in-D8 double loop: kernels of order 2 on both
        // darts of each loop, equal on the two darts, complement exists
        let b = v4();
        let p = d8();
        let s = p.index_of(&Perm::from_cycles(4, &[&[1, 3]]).unwrap()).unwrap();
        let r = p
            .index_of(&Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap())
            .unwrap();
        let r2 = p.mul(r, r);
        let psi = GroupMap::from_gen_images(&b, &p, &[s, r2]).unwrap();
        let graph = Arc::new(OrientedGraph::new(1, &[(0, 0), (0, 0)]).unwrap());
        let a = Amalgam::new(
            graph,
            vec![b],
            vec![p.clone(), p],
            vec![psi.clone(), psi.clone(), psi.clone(), psi],
        )
        .unwrap();
        let t = AmalgamType::new(a).with_shared_edges(&[0, 1]).unwrap();
        let rg = reference_graph(&t, DEFAULT_CAP).unwrap();
        let c = rg.graph_of_groups();
        assert_eq!(c.edge_map(0).kernel().order(), 2);
        let rigidity = is_rigid(c, 1_000_000).unwrap();
        let reduced = rigidity.reduced().expect("rigid");
        assert_eq!(reduced.tilde_order(0), 2);
        assert_eq!(reduced.tilde_order(1), 2);

        // restricted classification agrees with the full one
        let opts = ClassifyOptions::default();
        let full = classify(&rg, &opts, None).unwrap();
        let restricted = classify_rigid(&rg, &opts, 1_000_000).unwrap();
        assert_eq!(full.class_count(), 2);
        assert_eq!(restricted.class_count(), 2);
    }
}
