//! The two closed-form classifiers: double cosets for amalgams of two groups
//! (encoded on the double loop), and the explicit equivalence relation on
//! A_1 x A_2 x A_3 for the triangle, with the bijection Xi to pointings.

use crate::amalgam::{Amalgam, AmalgamType};
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::group::{double_cosets, DoubleCoset, FiniteGroup, Subgroup};
use crate::homo::{automorphism_group, relative_automorphism_group, restrict_aut, AutGroup, GroupMap};
use crate::pointing::{GraphOfGroups, Pointing, ReferenceGraph};
use std::sync::Arc;

/// A classical amalgam of two groups: P1 <- B -> P2 with injective maps,
/// together with the derived data for the double-coset classification.
#[derive(Debug)]
pub struct GoldschmidtInstance {
    b: Arc<FiniteGroup>,
    p: [Arc<FiniteGroup>; 2],
    psi: [GroupMap; 2],
    aut_b: AutGroup,
    rel_auts: [AutGroup; 2],
    alphas: [GroupMap; 2],
    abar: [Subgroup; 2],
}

impl GoldschmidtInstance {
    pub fn new(psi1: GroupMap, psi2: GroupMap, cap: usize) -> Result<GoldschmidtInstance> {
        if psi1.domain() != psi2.domain() {
            return Err(Error::ShapeMismatch(
                "the two monomorphisms must share one source group".into(),
            ));
        }
        for psi in [&psi1, &psi2] {
            if !psi.is_injective() {
                return Err(Error::NotInjective);
            }
        }
        let b = Arc::clone(psi1.domain());
        let p = [Arc::clone(psi1.codomain()), Arc::clone(psi2.codomain())];
        let psi = [psi1, psi2];
        let aut_b = automorphism_group(&b, cap)?;

        let mut rel_auts = Vec::with_capacity(2);
        let mut alphas = Vec::with_capacity(2);
        let mut abar = Vec::with_capacity(2);
        for i in 0..2 {
            let image = psi[i].image();
            let rel = relative_automorphism_group(&p[i], &[image], cap)?;
            // alpha_i = ad(psi_i): restrict each image-preserving automorphism
            // of P_i to an automorphism of B.
            let images: Vec<usize> = (0..rel.order())
                .map(|j| {
                    let a = rel.automorphism(j);
                    let restricted = restrict_aut(&a, &psi[i]).expect("image is preserved");
                    aut_b.index_of(&restricted).expect("full Aut(B)")
                })
                .collect();
            let alpha = GroupMap::from_element_images(rel.carrier(), aut_b.carrier(), images)?;
            abar.push(alpha.image());
            rel_auts.push(rel);
            alphas.push(alpha);
        }
        let rel_auts: [AutGroup; 2] = rel_auts.try_into().expect("two entries");
        let alphas: [GroupMap; 2] = alphas.try_into().expect("two entries");
        let abar: [Subgroup; 2] = abar.try_into().expect("two entries");
        Ok(GoldschmidtInstance {
            b,
            p,
            psi,
            aut_b,
            rel_auts,
            alphas,
            abar,
        })
    }

    pub fn base_group(&self) -> &Arc<FiniteGroup> {
        &self.b
    }

    pub fn side_group(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.p[i]
    }

    pub fn psi(&self, i: usize) -> &GroupMap {
        &self.psi[i]
    }

    pub fn aut_b(&self) -> &AutGroup {
        &self.aut_b
    }

    /// The image-preserving automorphism group of P_i.
    pub fn side_aut(&self, i: usize) -> &AutGroup {
        &self.rel_auts[i]
    }

    /// alpha_i: side_aut(i) -> Aut(B) by restriction.
    pub fn alpha(&self, i: usize) -> &GroupMap {
        &self.alphas[i]
    }

    /// Abar_i = im alpha_i as a subgroup of the Aut(B) carrier.
    pub fn abar(&self, i: usize) -> &Subgroup {
        &self.abar[i]
    }

    /// The double-loop encoding of the instance as an amalgam type (both
    /// loops shared: one inclusion map per loop).
    pub fn as_amalgam_type(&self) -> Result<AmalgamType> {
        let graph = Arc::new(OrientedGraph::new(1, &[(0, 0), (0, 0)])?);
        let a = Amalgam::new(
            graph,
            vec![Arc::clone(&self.b)],
            vec![Arc::clone(&self.p[0]), Arc::clone(&self.p[1])],
            vec![
                self.psi[0].clone(),
                self.psi[0].clone(),
                self.psi[1].clone(),
                self.psi[1].clone(),
            ],
        )?;
        AmalgamType::new(a).with_shared_edges(&[0, 1])
    }

    /// The classical amalgam with phi_1 = psi_1 and phi_2 = psi_2 ∘ delta^{-1}
    /// for an automorphism delta of B (by carrier index), in the double-loop
    /// encoding.
    pub fn amalgam_for(&self, delta: usize) -> Result<Amalgam> {
        let d = self.aut_b.automorphism(delta);
        let d_inv = d.inverse();
        let images: Vec<usize> = (0..self.b.order())
            .map(|x| self.psi[1].apply(d_inv.apply(x)))
            .collect();
        let phi2 = GroupMap::from_element_images(&self.b, &self.p[1], images)?;
        let graph = Arc::new(OrientedGraph::new(1, &[(0, 0), (0, 0)])?);
        Amalgam::new(
            graph,
            vec![Arc::clone(&self.b)],
            vec![Arc::clone(&self.p[0]), Arc::clone(&self.p[1])],
            vec![
                self.psi[0].clone(),
                self.psi[0].clone(),
                phi2.clone(),
                phi2,
            ],
        )
    }
}

/// The double-coset classification: one class of amalgams of the instance's
/// type per double coset of Abar_1, Abar_2 in Aut(B).
#[derive(Debug)]
pub struct GoldschmidtReport {
    pub cosets: Vec<DoubleCoset>,
    pub representatives: Vec<Amalgam>,
}

pub fn goldschmidt_classes(g: &GoldschmidtInstance) -> Result<GoldschmidtReport> {
    let cosets = double_cosets(g.aut_b.carrier(), &g.abar[0], &g.abar[1])?;
    let representatives = cosets
        .iter()
        .map(|c| g.amalgam_for(c.representative))
        .collect::<Result<Vec<_>>>()?;
    Ok(GoldschmidtReport {
        cosets,
        representatives,
    })
}

/// The triangle data at the graph-of-groups level: three vertex groups,
/// three edge groups (edge k joins vertex k to vertex k+1 mod 3), and the
/// two maps of each edge group into its endpoints.
#[derive(Debug)]
pub struct TriangleInstance {
    vertex_groups: [Arc<FiniteGroup>; 3],
    edge_groups: [Arc<FiniteGroup>; 3],
    /// Per edge k: (alpha_{k,k+1} into vertex k, alpha_{k+1,k} into vertex k+1).
    maps: [(GroupMap, GroupMap); 3],
}

/// The triangle index graph: vertices 0,1,2 and edges (0,1), (1,2), (2,0).
pub fn triangle_graph() -> OrientedGraph {
    OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid triangle")
}

impl TriangleInstance {
    pub fn new(
        vertex_groups: [Arc<FiniteGroup>; 3],
        edge_groups: [Arc<FiniteGroup>; 3],
        maps: [(GroupMap, GroupMap); 3],
    ) -> Result<TriangleInstance> {
        for k in 0..3 {
            let (to_tail, to_head) = &maps[k];
            if **to_tail.domain() != *edge_groups[k]
                || **to_head.domain() != *edge_groups[k]
                || **to_tail.codomain() != *vertex_groups[k]
                || **to_head.codomain() != *vertex_groups[(k + 1) % 3]
            {
                return Err(Error::ShapeMismatch(format!(
                    "triangle maps on edge {k} have wrong endpoints"
                )));
            }
        }
        Ok(TriangleInstance {
            vertex_groups,
            edge_groups,
            maps,
        })
    }

    /// Extract the triangle data from a reference graph over the triangle.
    pub fn from_reference(rg: &ReferenceGraph) -> Result<TriangleInstance> {
        let c = rg.graph_of_groups();
        Self::from_graph_of_groups(c)
    }

    pub fn from_graph_of_groups(c: &GraphOfGroups) -> Result<TriangleInstance> {
        if *c.graph().as_ref() != triangle_graph() {
            return Err(Error::ShapeMismatch(
                "triangle classifier needs the triangle graph".into(),
            ));
        }
        let vertex_groups = [
            Arc::clone(c.vertex_group(0)),
            Arc::clone(c.vertex_group(1)),
            Arc::clone(c.vertex_group(2)),
        ];
        let edge_groups = [
            Arc::clone(c.edge_group(0)),
            Arc::clone(c.edge_group(1)),
            Arc::clone(c.edge_group(2)),
        ];
        let maps = [
            (c.edge_map(0).clone(), c.edge_map(1).clone()),
            (c.edge_map(2).clone(), c.edge_map(3).clone()),
            (c.edge_map(4).clone(), c.edge_map(5).clone()),
        ];
        TriangleInstance::new(vertex_groups, edge_groups, maps)
    }

    pub fn vertex_group(&self, k: usize) -> &Arc<FiniteGroup> {
        &self.vertex_groups[k]
    }

    pub fn edge_group(&self, k: usize) -> &Arc<FiniteGroup> {
        &self.edge_groups[k]
    }

    /// alpha_{k,k+1}: edge k into vertex k.
    pub fn to_tail(&self, k: usize) -> &GroupMap {
        &self.maps[k].0
    }

    /// alpha_{k+1,k}: edge k into vertex k+1.
    pub fn to_head(&self, k: usize) -> &GroupMap {
        &self.maps[k].1
    }

    /// Phi_k(x) as a tuple in A_1 x A_2 x A_3: the two nonzero components are
    /// alpha_{k,k+1}(x) in slot k and alpha_{k+1,k}(x) in slot k+1.
    pub fn phi_tuple(&self, k: usize, x: usize) -> [usize; 3] {
        let mut t = [0usize; 3];
        t[k] = self.maps[k].0.apply(x);
        t[(k + 1) % 3] = self.maps[k].1.apply(x);
        t
    }

    fn tuple_count(&self) -> u64 {
        self.vertex_groups
            .iter()
            .map(|g| g.order() as u64)
            .product()
    }

    fn encode(&self, t: [usize; 3]) -> usize {
        let n1 = self.vertex_groups[1].order();
        let n2 = self.vertex_groups[2].order();
        (t[0] * n1 + t[1]) * n2 + t[2]
    }

    fn decode(&self, mut i: usize) -> [usize; 3] {
        let n1 = self.vertex_groups[1].order();
        let n2 = self.vertex_groups[2].order();
        let a2 = i % n2;
        i /= n2;
        let a1 = i % n1;
        let a0 = i / n1;
        [a0, a1, a2]
    }

    /// The action of one edge-group element x at edge k on a tuple:
    /// a_k gets the left factor alpha_{k,k+1}(x)^{-1}, a_{k+1} the right
    /// factor alpha_{k+1,k}(x).
    fn act(&self, t: [usize; 3], k: usize, x: usize) -> [usize; 3] {
        let mut r = t;
        let gk = &self.vertex_groups[k];
        let gk1 = &self.vertex_groups[(k + 1) % 3];
        r[k] = gk.mul(gk.inv(self.maps[k].0.apply(x)), t[k]);
        r[(k + 1) % 3] = gk1.mul(t[(k + 1) % 3], self.maps[k].1.apply(x));
        r
    }
}

/// Orbits of the triangle equivalence relation on A_1 x A_2 x A_3.
#[derive(Debug)]
pub struct TriangleOrbits {
    pub representatives: Vec<[usize; 3]>,
    pub orbit_sizes: Vec<usize>,
    /// Orbit id per encoded tuple.
    pub orbit_of: Vec<usize>,
}

impl TriangleOrbits {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// BFS orbit enumeration of the relation: generator moves of each edge group
/// from the least unvisited tuple; representatives are the least members.
pub fn triangle_equivalence_classes(
    t: &TriangleInstance,
    budget: u64,
) -> Result<TriangleOrbits> {
    let total = t.tuple_count();
    if total > budget {
        return Err(Error::BudgetExceeded {
            budget,
            context: "triangle orbit enumeration".into(),
        });
    }
    let total = total as usize;

    // generator moves (edge, generator element index), inverses included so
    // plain BFS closes the orbit
    let mut moves: Vec<(usize, usize)> = Vec::new();
    for k in 0..3 {
        for &g in t.edge_groups[k].generator_indices() {
            moves.push((k, g));
            moves.push((k, t.edge_groups[k].inv(g)));
        }
    }

    let mut orbit_of = vec![usize::MAX; total];
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    for start in 0..total {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(t.decode(start));
        let mut size = 0usize;
        let mut queue = std::collections::VecDeque::new();
        orbit_of[start] = id;
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            size += 1;
            let tuple = t.decode(cur);
            for &(k, x) in &moves {
                let next = t.encode(t.act(tuple, k, x));
                if orbit_of[next] == usize::MAX {
                    orbit_of[next] = id;
                    queue.push_back(next);
                }
            }
        }
        orbit_sizes.push(size);
    }
    Ok(TriangleOrbits {
        representatives,
        orbit_sizes,
        orbit_of,
    })
}

/// Dart index of the triangle dart from vertex k to vertex k-1 (mod 3): the
/// reverse dart of edge k-1.
fn backward_dart(k: usize) -> usize {
    2 * ((k + 2) % 3) + 1
}

/// Xi: the tuple (delta_{k,k+1}^{-1} * delta_{k,k-1})_k of a triangle pointing.
pub fn xi_map(c: &GraphOfGroups, p: &Pointing) -> Result<[usize; 3]> {
    if *c.graph().as_ref() != triangle_graph() {
        return Err(Error::ShapeMismatch(
            "xi is defined on triangle pointings".into(),
        ));
    }
    let mut tuple = [0usize; 3];
    for k in 0..3 {
        let a = c.vertex_group(k);
        let fwd = 2 * k; // dart k -> k+1
        let bwd = backward_dart(k); // dart k -> k-1
        tuple[k] = a.mul(a.inv(p.delta()[fwd]), p.delta()[bwd]);
    }
    Ok(tuple)
}

/// Xi^{-1}: the positively normalized pointing with delta_{k,k+1} = 1 and
/// delta_{k+1,k} = a_{k+1}.
pub fn xi_inverse(c: &Arc<GraphOfGroups>, tuple: [usize; 3]) -> Result<Pointing> {
    if *c.graph().as_ref() != triangle_graph() {
        return Err(Error::ShapeMismatch(
            "xi is defined on triangle pointings".into(),
        ));
    }
    let mut delta = vec![0usize; 6];
    for k in 0..3 {
        // dart (k+1) -> k is the reverse dart of edge k
        delta[2 * k + 1] = tuple[(k + 1) % 3];
    }
    Pointing::new(c, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::perm::Perm;
    use crate::pointing::{
        pointings_isomorphic, reference_graph, ClassifyOptions, DeciderMode,
    };

    fn z2() -> Arc<FiniteGroup> {
        FiniteGroup::generate(vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()], 2, 100).unwrap()
    }

    fn z3() -> Arc<FiniteGroup> {
        FiniteGroup::generate(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()], 3, 100).unwrap()
    }

    fn z4() -> Arc<FiniteGroup> {
        FiniteGroup::generate(vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()], 4, 100)
            .unwrap()
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

    /// V4 -> D8 onto the Klein subgroup {1, r^2, s, r^2 s}.
    fn v4_into_d8() -> GroupMap {
        let b = v4();
        let p = d8();
        let s = p.index_of(&Perm::from_cycles(4, &[&[1, 3]]).unwrap()).unwrap();
        let r = p
            .index_of(&Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap())
            .unwrap();
        let r2 = p.mul(r, r);
        GroupMap::from_gen_images(&b, &p, &[s, r2]).unwrap()
    }

    #[test]
    fn aut_b_trivial_gives_one_class() {
        // B = Z2 into P_i = Z4: Aut(Z2) trivial, one double coset.
        let b = z2();
        let p = z4();
        let sq = (0..4).find(|&i| p.element_order(i) == 2).unwrap();
        let psi = GroupMap::from_gen_images(&b, &p, &[sq]).unwrap();
        let g = GoldschmidtInstance::new(psi.clone(), psi, DEFAULT_CAP).unwrap();
        assert_eq!(g.aut_b().order(), 1);
        let report = goldschmidt_classes(&g).unwrap();
        assert_eq!(report.cosets.len(), 1);
    }

    #[test]
    fn abar_whole_gives_one_class() {
        // B = Z3 into P_i = S3 (image A3): restriction is onto Aut(Z3).
        let b = z3();
        let p = s3();
        let rot = p
            .index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap())
            .unwrap();
        let psi = GroupMap::from_gen_images(&b, &p, &[rot]).unwrap();
        let g = GoldschmidtInstance::new(psi.clone(), psi, DEFAULT_CAP).unwrap();
        assert_eq!(g.aut_b().order(), 2);
        assert!(g.abar(0).is_whole());
        let report = goldschmidt_classes(&g).unwrap();
        assert_eq!(report.cosets.len(), 1);
    }

    #[test]
    fn v4_in_d8_gives_two_classes() {
        let psi = v4_into_d8();
        let g = GoldschmidtInstance::new(psi.clone(), psi, DEFAULT_CAP).unwrap();
        assert_eq!(g.aut_b().order(), 6);
        assert_eq!(g.side_aut(0).order(), 4);
        assert_eq!(g.abar(0).order(), 2);
        let report = goldschmidt_classes(&g).unwrap();
        assert_eq!(report.cosets.len(), 2);
        // representatives materialize as valid amalgams of the shared type
        let t = g.as_amalgam_type().unwrap();
        for rep in &report.representatives {
            assert!(crate::amalgam::same_type(rep, &t).unwrap());
        }
    }

    /// All vertex and edge groups Z3 with identity inclusions: the reference
    /// triangle has every A group of order 2 and identity alphas.
    fn z3_triangle_reference() -> ReferenceGraph {
        let g = z3();
        let graph = Arc::new(triangle_graph());
        let incl = GroupMap::identity(&g);
        let a = Amalgam::new(
            graph,
            vec![g.clone(), g.clone(), g.clone()],
            vec![g.clone(), g.clone(), g.clone()],
            vec![incl.clone(); 6],
        )
        .unwrap();
        reference_graph(&AmalgamType::new(a), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn trivial_triangle_single_class() {
        let t1 = FiniteGroup::generate(vec![], 1, 10).unwrap();
        let id = GroupMap::identity(&t1);
        let inst = TriangleInstance::new(
            [t1.clone(), t1.clone(), t1.clone()],
            [t1.clone(), t1.clone(), t1.clone()],
            [
                (id.clone(), id.clone()),
                (id.clone(), id.clone()),
                (id.clone(), id.clone()),
            ],
        )
        .unwrap();
        let orbits = triangle_equivalence_classes(&inst, 1_000_000).unwrap();
        assert_eq!(orbits.class_count(), 1);
    }

    #[test]
    fn trivial_alphas_give_singleton_classes() {
        // all alpha maps trivial: the relation degenerates to equality
        let a = z2();
        let e = z2();
        let triv = GroupMap::trivial(&e, &a);
        let inst = TriangleInstance::new(
            [a.clone(), a.clone(), a.clone()],
            [e.clone(), e.clone(), e.clone()],
            [
                (triv.clone(), triv.clone()),
                (triv.clone(), triv.clone()),
                (triv.clone(), triv.clone()),
            ],
        )
        .unwrap();
        let orbits = triangle_equivalence_classes(&inst, 1_000_000).unwrap();
        assert_eq!(orbits.class_count(), 8);
        assert!(orbits.orbit_sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn z3_triangle_orbits_match_classify() {
        let rg = z3_triangle_reference();
        let inst = TriangleInstance::from_reference(&rg).unwrap();
        // identity alphas on Z2 groups: orbit space is F2^3 modulo the
        // even-weight subspace, giving 2 classes
        let orbits = triangle_equivalence_classes(&inst, 1_000_000).unwrap();
        assert_eq!(orbits.class_count(), 2);

        let report =
            crate::pointing::classify(&rg, &ClassifyOptions::default(), None).unwrap();
        assert_eq!(report.class_count(), 2);
    }

    #[test]
    fn phi_is_multiplicative_componentwise() {
        let rg = z3_triangle_reference();
        let inst = TriangleInstance::from_reference(&rg).unwrap();
        for k in 0..3 {
            let eg = inst.edge_group(k);
            for x in 0..eg.order() {
                for y in 0..eg.order() {
                    let xy = eg.mul(x, y);
                    let tx = inst.phi_tuple(k, x);
                    let ty = inst.phi_tuple(k, y);
                    let txy = inst.phi_tuple(k, xy);
                    for slot in 0..3 {
                        let a = inst.vertex_group(slot);
                        assert_eq!(txy[slot], a.mul(tx[slot], ty[slot]));
                    }
                }
            }
        }
    }

    #[test]
    fn xi_roundtrip_and_class_preservation() {
        let rg = z3_triangle_reference();
        let c = rg.graph_of_groups();
        let inst = TriangleInstance::from_reference(&rg).unwrap();

        // xi_map ∘ xi_inverse = identity on tuples
        let n0 = c.vertex_group(0).order();
        let n1 = c.vertex_group(1).order();
        let n2 = c.vertex_group(2).order();
        for a0 in 0..n0 {
            for a1 in 0..n1 {
                for a2 in 0..n2 {
                    let tuple = [a0, a1, a2];
                    let p = xi_inverse(c, tuple).unwrap();
                    assert_eq!(xi_map(c, &p).unwrap(), tuple);
                }
            }
        }

        // all-identity pointing -> (1,1,1)
        let p = Pointing::identity(c);
        assert_eq!(xi_map(c, &p).unwrap(), [0, 0, 0]);

        // tuples in one orbit map to isomorphic pointings and conversely
        let orbits = triangle_equivalence_classes(&inst, 1_000_000).unwrap();
        for i in 0..orbits.orbit_of.len() {
            for j in 0..orbits.orbit_of.len() {
                let ti = inst.decode(i);
                let tj = inst.decode(j);
                let pi = xi_inverse(c, ti).unwrap();
                let pj = xi_inverse(c, tj).unwrap();
                let iso = pointings_isomorphic(
                    c,
                    &pi,
                    &pj,
                    DeciderMode::EdgeFirst,
                    None,
                    1_000_000,
                )
                .unwrap();
                assert_eq!(
                    orbits.orbit_of[i] == orbits.orbit_of[j],
                    iso.is_some(),
                    "tuples {ti:?} and {tj:?}"
                );
            }
        }
    }
}
