//! The path group of a reduced graph of groups: alternating words, the
//! transversal-based canonical form, word arithmetic, paths induced by
//! pointings, and the bounded fundamental-group comparison.
//!
//! Words are rewritten left to right. Before each dart the pending vertex
//! element a is factored as a = t * alpha_e(x) with t the canonical coset
//! representative and x in the reduced edge group; a * e becomes
//! t * e * alpha_ebar(x), and a surviving pattern ebar * 1 * e collapses.
//! The result is the Bass-Serre normal form: its shape
//! t_1 e_1 t_2 e_2 ... t_m e_m * a with coset representatives before every
//! dart and no identity-representative returns determines the group element
//! uniquely.

use crate::error::{Error, Result};
use crate::graph::{free_generators, SpanningTree};
use crate::pointing::Pointing;
use crate::rigid::ReducedGraphOfGroups;
use std::collections::HashSet;

/// An alternating path word a_0 e_1 a_1 ... e_n a_n: a start vertex, a
/// leading vertex element, and one (dart, following element) pair per step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub start: usize,
    pub first: usize,
    pub steps: Vec<(usize, usize)>,
}

impl PathWord {
    /// The identity element at a vertex.
    pub fn identity(vertex: usize) -> PathWord {
        PathWord {
            start: vertex,
            first: 0,
            steps: Vec::new(),
        }
    }

    pub fn end(&self, r: &ReducedGraphOfGroups) -> usize {
        match self.steps.last() {
            Some(&(dart, _)) => r.base().graph().head(dart),
            None => self.start,
        }
    }

    pub fn dart_count(&self) -> usize {
        self.steps.len()
    }

    /// Darts must chain tail-to-head and every letter must index into the
    /// vertex group where it sits.
    pub fn validate(&self, r: &ReducedGraphOfGroups) -> Result<()> {
        let c = r.base();
        let graph = c.graph();
        if self.start >= graph.vertex_count() {
            return Err(Error::InvalidVertex {
                vertex: self.start,
                count: graph.vertex_count(),
            });
        }
        let mut at = self.start;
        if self.first >= c.vertex_group(at).order() {
            return Err(Error::IndexOutOfRange {
                index: self.first,
                order: c.vertex_group(at).order(),
            });
        }
        for &(dart, letter) in &self.steps {
            if dart >= graph.dart_count() {
                return Err(Error::ShapeMismatch(format!("no dart {dart}")));
            }
            if graph.tail(dart) != at {
                return Err(Error::ShapeMismatch(format!(
                    "dart {dart} does not continue the walk"
                )));
            }
            at = graph.head(dart);
            if letter >= c.vertex_group(at).order() {
                return Err(Error::IndexOutOfRange {
                    index: letter,
                    order: c.vertex_group(at).order(),
                });
            }
        }
        Ok(())
    }

    /// No returns: e_{k+1} is never the reverse of e_k.
    pub fn is_reduced_edge_path(&self, r: &ReducedGraphOfGroups) -> bool {
        let graph = r.base().graph();
        self.steps
            .windows(2)
            .all(|w| w[1].0 != graph.reverse(w[0].0))
    }
}

/// A path word in canonical form. Two words of the path group are equal
/// exactly when their canonical forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    word: PathWord,
}

impl CanonicalForm {
    pub fn word(&self) -> &PathWord {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.steps.is_empty() && self.word.first == 0
    }

    pub fn dart_count(&self) -> usize {
        self.word.steps.len()
    }
}

/// Rewrite a word to its canonical form.
pub fn canonicalize(r: &ReducedGraphOfGroups, w: &PathWord) -> Result<CanonicalForm> {
    w.validate(r)?;
    let c = r.base();
    let graph = c.graph();

    // stack of (coset representative, dart) with the pending element after it
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut acc = w.first;
    for &(dart, letter) in &w.steps {
        let t = r.coset_rep(dart, acc);
        let p = r.tilde_factor(dart, acc);
        let pushed = r.alpha_tilde(graph.reverse(dart), p);
        let head_group = c.vertex_group(graph.head(dart));
        match stack.last() {
            Some(&(t_prev, f)) if f == graph.reverse(dart) && t == 0 => {
                // ... t_prev ebar [t=1] e alpha_ebar(x) letter ... collapses
                stack.pop();
                acc = head_group.mul(head_group.mul(t_prev, pushed), letter);
            }
            _ => {
                stack.push((t, dart));
                acc = head_group.mul(pushed, letter);
            }
        }
    }

    let word = match stack.first() {
        None => PathWord {
            start: w.start,
            first: acc,
            steps: Vec::new(),
        },
        Some(&(t1, _)) => {
            let mut steps = Vec::with_capacity(stack.len());
            for i in 0..stack.len() {
                let dart = stack[i].1;
                let next_letter = if i + 1 < stack.len() { stack[i + 1].0 } else { acc };
                steps.push((dart, next_letter));
            }
            PathWord {
                start: w.start,
                first: t1,
                steps,
            }
        }
    };
    Ok(CanonicalForm { word })
}

/// Concatenate two words (end of `u` at start of `v`) and canonicalize.
pub fn multiply(
    r: &ReducedGraphOfGroups,
    u: &CanonicalForm,
    v: &CanonicalForm,
) -> Result<CanonicalForm> {
    if u.word.end(r) != v.word.start {
        return Err(Error::EndpointMismatch);
    }
    let c = r.base();
    let mut w = u.word.clone();
    if w.steps.is_empty() {
        let g = c.vertex_group(w.start);
        w.first = g.mul(w.first, v.word.first);
    } else {
        let last = w.steps.len() - 1;
        let g = c.vertex_group(c.graph().head(w.steps[last].0));
        w.steps[last].1 = g.mul(w.steps[last].1, v.word.first);
    }
    w.steps.extend_from_slice(&v.word.steps);
    canonicalize(r, &w)
}

/// Invert a word: reverse the darts and invert the letters.
pub fn invert(r: &ReducedGraphOfGroups, u: &CanonicalForm) -> Result<CanonicalForm> {
    let c = r.base();
    let graph = c.graph();
    let end = u.word.end(r);
    let mut letters: Vec<usize> = Vec::with_capacity(u.word.steps.len() + 1);
    letters.push(u.word.first);
    for &(_, a) in &u.word.steps {
        letters.push(a);
    }
    // vertex of letter i: start for 0, head of dart i-1 after
    let mut vertices = Vec::with_capacity(letters.len());
    vertices.push(u.word.start);
    for &(d, _) in &u.word.steps {
        vertices.push(graph.head(d));
    }

    let n = u.word.steps.len();
    let first = c.vertex_group(end).inv(letters[n]);
    let mut steps = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let dart = graph.reverse(u.word.steps[i].0);
        let letter = c.vertex_group(vertices[i]).inv(letters[i]);
        steps.push((dart, letter));
    }
    canonicalize(
        r,
        &PathWord {
            start: end,
            first,
            steps,
        },
    )
}

/// The path a pointing assigns to an edge path:
/// delta_{e_1} e_1 delta_{ebar_1}^{-1} delta_{e_2} e_2 ... e_n delta_{ebar_n}^{-1}.
pub fn pointing_path(
    r: &ReducedGraphOfGroups,
    p: &Pointing,
    edge_path: &[usize],
) -> Result<PathWord> {
    let c = r.base();
    let graph = c.graph();
    if edge_path.is_empty() {
        return Err(Error::ShapeMismatch("empty edge path".into()));
    }
    for w in edge_path.windows(2) {
        if graph.head(w[0]) != graph.tail(w[1]) {
            return Err(Error::ShapeMismatch("edge path does not chain".into()));
        }
    }
    let start = graph.tail(edge_path[0]);
    let first = p.delta()[edge_path[0]];
    let mut steps = Vec::with_capacity(edge_path.len());
    for (i, &e) in edge_path.iter().enumerate() {
        let head = graph.head(e);
        let g = c.vertex_group(head);
        let back = g.inv(p.delta()[graph.reverse(e)]);
        let letter = match edge_path.get(i + 1) {
            Some(&next) => g.mul(back, p.delta()[next]),
            None => back,
        };
        steps.push((e, letter));
    }
    Ok(PathWord {
        start,
        first,
        steps,
    })
}

/// The canonical generators of the fundamental group of a pointing: one
/// canonicalized loop word per free generator of the graph's fundamental
/// group at the tree base.
pub fn fundamental_generators(
    r: &ReducedGraphOfGroups,
    p: &Pointing,
    tree: &SpanningTree,
) -> Result<Vec<CanonicalForm>> {
    let graph = r.base().graph();
    free_generators(graph, tree)
        .iter()
        .map(|l| canonicalize(r, &pointing_path(r, p, &l.walk)?))
        .collect()
}

/// Verdict of the bounded fundamental-group comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupVerdict {
    Equal,
    Distinct,
    Unknown,
}

impl GroupVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupVerdict::Equal => "equal",
            GroupVerdict::Distinct => "distinct",
            GroupVerdict::Unknown => "unknown",
        }
    }
}

/// The ball of radius `bound` in the subgroup generated by `gens`, by BFS
/// over right multiplication with generators and inverses. `saturated` means
/// the BFS closed before the radius ran out: the ball is the whole subgroup
/// and membership tests are exact.
pub struct SubgroupBall {
    pub elements: HashSet<CanonicalForm>,
    pub saturated: bool,
}

pub fn subgroup_ball(
    r: &ReducedGraphOfGroups,
    base: usize,
    gens: &[CanonicalForm],
    bound: usize,
    budget: u64,
) -> Result<SubgroupBall> {
    let mut moves: Vec<CanonicalForm> = Vec::with_capacity(gens.len() * 2);
    for g in gens {
        moves.push(g.clone());
        moves.push(invert(r, g)?);
    }
    let identity = canonicalize(r, &PathWord::identity(base))?;
    let mut elements = HashSet::new();
    elements.insert(identity.clone());
    let mut frontier = vec![identity];
    let mut saturated = false;
    for _ in 0..bound {
        let mut next = Vec::new();
        for u in &frontier {
            for m in &moves {
                let w = multiply(r, u, m)?;
                if elements.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        context: "fundamental-group ball".into(),
                    });
                }
                if elements.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            saturated = true;
            break;
        }
        frontier = next;
    }
    if !saturated && !frontier.is_empty() {
        // one probe step to detect saturation exactly at the bound
        let mut grew = false;
        'probe: for u in &frontier {
            for m in &moves {
                let w = multiply(r, u, m)?;
                if !elements.contains(&w) {
                    grew = true;
                    break 'probe;
                }
            }
        }
        saturated = !grew;
    }
    Ok(SubgroupBall {
        elements,
        saturated,
    })
}

/// Outcome details of the bounded comparison, for reports.
pub struct FundamentalComparison {
    pub verdict: GroupVerdict,
    pub ball_sizes: [usize; 2],
    pub saturated: [bool; 2],
}

/// Bounded subgroup-equality check between the fundamental groups of two
/// pointings: Equal when each generator set lies in the other's radius-L
/// ball; Distinct when some generator provably lies outside a saturated
/// ball; Unknown otherwise.
pub fn same_fundamental_group_bounded(
    r: &ReducedGraphOfGroups,
    p1: &Pointing,
    p2: &Pointing,
    tree: &SpanningTree,
    bound: usize,
    budget: u64,
) -> Result<FundamentalComparison> {
    let base = tree.base();
    let gens1 = fundamental_generators(r, p1, tree)?;
    let gens2 = fundamental_generators(r, p2, tree)?;
    let ball1 = subgroup_ball(r, base, &gens1, bound, budget)?;
    let ball2 = subgroup_ball(r, base, &gens2, bound, budget)?;

    let ones_in_two = gens1.iter().all(|g| ball2.elements.contains(g));
    let twos_in_one = gens2.iter().all(|g| ball1.elements.contains(g));

    let verdict = if ones_in_two && twos_in_one {
        GroupVerdict::Equal
    } else if (!ones_in_two && ball2.saturated) || (!twos_in_one && ball1.saturated) {
        GroupVerdict::Distinct
    } else {
        GroupVerdict::Unknown
    };
    Ok(FundamentalComparison {
        verdict,
        ball_sizes: [ball1.elements.len(), ball2.elements.len()],
        saturated: [ball1.saturated, ball2.saturated],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{Amalgam, AmalgamType};
    use crate::graph::OrientedGraph;
    use crate::group::{FiniteGroup, DEFAULT_CAP};
    use crate::homo::GroupMap;
    use crate::perm::Perm;
    use crate::pointing::{reference_graph, Pointing, ReferenceGraph};
    use crate::rigid::is_rigid;
    use std::sync::Arc;

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

    /// Single edge, Z3 -> S3 with image A3 on both darts.
    fn edge_reference() -> ReferenceGraph {
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

    fn edge_reduced() -> (ReferenceGraph, ReducedGraphOfGroups) {
        let rg = edge_reference();
        let r = is_rigid(rg.graph_of_groups(), 1_000_000)
            .unwrap()
            .reduced()
            .expect("rigid");
        (rg, r)
    }

    /// Double loop over Z3 in S3 (both loops), shared inclusions.
    fn double_loop_reduced() -> (ReferenceGraph, ReducedGraphOfGroups) {
        let graph = Arc::new(OrientedGraph::new(1, &[(0, 0), (0, 0)]).unwrap());
        let b = z3();
        let p = s3();
        let rot = p
            .index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap())
            .unwrap();
        let psi = GroupMap::from_gen_images(&b, &p, &[rot]).unwrap();
        let a = Amalgam::new(
            graph,
            vec![b],
            vec![p.clone(), p],
            vec![psi.clone(), psi.clone(), psi.clone(), psi],
        )
        .unwrap();
        let t = AmalgamType::new(a).with_shared_edges(&[0, 1]).unwrap();
        let rg = reference_graph(&t, DEFAULT_CAP).unwrap();
        let r = is_rigid(rg.graph_of_groups(), 1_000_000)
            .unwrap()
            .reduced()
            .expect("rigid");
        (rg, r)
    }

    #[test]
    fn defining_relations_canonicalize() {
        let (_, r) = edge_reduced();
        let graph = r.base().graph();

        // e * ebar = identity
        let w = PathWord {
            start: 0,
            first: 0,
            steps: vec![(0, 0), (1, 0)],
        };
        let c = canonicalize(&r, &w).unwrap();
        assert!(c.is_identity());

        // e * alpha_ebar(x) * ebar = alpha_e(x) for every reduced-group element
        for pos in 0..r.tilde_order(0) {
            let lhs = PathWord {
                start: 0,
                first: 0,
                steps: vec![(0, r.alpha_tilde(1, pos)), (1, 0)],
            };
            let rhs = PathWord {
                start: 0,
                first: r.alpha_tilde(0, pos),
                steps: vec![],
            };
            assert_eq!(
                canonicalize(&r, &lhs).unwrap(),
                canonicalize(&r, &rhs).unwrap()
            );
        }
        let _ = graph;
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let (_, r) = edge_reduced();
        let c = r.base();
        for first in 0..c.vertex_group(0).order() {
            for mid in 0..c.vertex_group(1).order() {
                for last in 0..c.vertex_group(0).order() {
                    let w = PathWord {
                        start: 0,
                        first,
                        steps: vec![(0, mid), (1, last)],
                    };
                    let c1 = canonicalize(&r, &w).unwrap();
                    let c2 = canonicalize(&r, c1.word()).unwrap();
                    assert_eq!(c1, c2);
                }
            }
        }
    }

    #[test]
    fn reduced_nonempty_words_stay_nonempty() {
        let (_, r) = double_loop_reduced();
        // loop darts never collapse without a return
        let w = PathWord {
            start: 0,
            first: 1,
            steps: vec![(0, 1), (2, 0)],
        };
        assert!(w.is_reduced_edge_path(&r));
        let c = canonicalize(&r, &w).unwrap();
        assert_eq!(c.dart_count(), 2);
    }

    #[test]
    fn multiply_and_invert_roundtrip() {
        let (_, r) = double_loop_reduced();
        let words = [
            PathWord {
                start: 0,
                first: 1,
                steps: vec![(0, 0)],
            },
            PathWord {
                start: 0,
                first: 0,
                steps: vec![(2, 1)],
            },
            PathWord {
                start: 0,
                first: 1,
                steps: vec![(0, 1), (2, 0)],
            },
        ];
        let identity = canonicalize(&r, &PathWord::identity(0)).unwrap();
        for w in &words {
            let c = canonicalize(&r, w).unwrap();
            let inv = invert(&r, &c).unwrap();
            assert_eq!(multiply(&r, &c, &inv).unwrap(), identity);
            assert_eq!(multiply(&r, &inv, &c).unwrap(), identity);
            assert_eq!(multiply(&r, &identity, &c).unwrap(), c);
        }
        // associativity spot-check
        let a = canonicalize(&r, &words[0]).unwrap();
        let b = canonicalize(&r, &words[1]).unwrap();
        let c = canonicalize(&r, &words[2]).unwrap();
        let left = multiply(&r, &multiply(&r, &a, &b).unwrap(), &c).unwrap();
        let right = multiply(&r, &a, &multiply(&r, &b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn pointing_path_formula() {
        let (rg, r) = double_loop_reduced();
        let c = rg.graph_of_groups();

        // identity pointing: bare edge word with identity letters
        let p = Pointing::identity(c);
        let w = pointing_path(&r, &p, &[0]).unwrap();
        assert_eq!(w.first, 0);
        assert_eq!(w.steps, vec![(0, 0)]);

        // single dart e: delta_e, e, delta_ebar^{-1}
        let delta = vec![1, 0, 1, 1];
        let p = Pointing::new(c, delta.clone()).unwrap();
        let w = pointing_path(&r, &p, &[0]).unwrap();
        assert_eq!(w.first, delta[0]);
        let g = c.vertex_group(0);
        assert_eq!(w.steps, vec![(0, g.inv(delta[1]))]);

        // two darts: middle letter is delta_ebar1^{-1} * delta_e2
        let w = pointing_path(&r, &p, &[0, 2]).unwrap();
        assert_eq!(w.first, delta[0]);
        assert_eq!(w.steps[0], (0, g.mul(g.inv(delta[1]), delta[2])));
        assert_eq!(w.steps[1], (2, g.inv(delta[3])));
    }

    #[test]
    fn fundamental_generators_shapes() {
        // tree graph: no generators
        let (rg_edge, r_edge) = edge_reduced();
        let tree = SpanningTree::build(rg_edge.graph(), 0).unwrap();
        let p = Pointing::identity(rg_edge.graph_of_groups());
        assert!(fundamental_generators(&r_edge, &p, &tree).unwrap().is_empty());

        // double loop: two generators, distinct canonical forms
        let (rg, r) = double_loop_reduced();
        let tree = SpanningTree::build(rg.graph(), 0).unwrap();
        let p = Pointing::identity(rg.graph_of_groups());
        let gens = fundamental_generators(&r, &p, &tree).unwrap();
        assert_eq!(gens.len(), 2);
        assert_ne!(gens[0], gens[1]);
        assert!(gens.iter().all(|g| !g.is_identity()));
    }

    #[test]
    fn bounded_comparison_on_tree_is_equal() {
        let (rg, r) = edge_reduced();
        let tree = SpanningTree::build(rg.graph(), 0).unwrap();
        let c = rg.graph_of_groups();
        let p1 = Pointing::identity(c);
        let p2 = Pointing::new(c, vec![1, 1]).unwrap();
        let out = same_fundamental_group_bounded(&r, &p1, &p2, &tree, 6, 1_000_000).unwrap();
        assert_eq!(out.verdict, GroupVerdict::Equal);
        assert!(out.saturated[0] && out.saturated[1]);
    }

    #[test]
    fn same_pointing_is_equal_at_bound_one() {
        let (rg, r) = double_loop_reduced();
        let tree = SpanningTree::build(rg.graph(), 0).unwrap();
        let p = Pointing::identity(rg.graph_of_groups());
        let out = same_fundamental_group_bounded(&r, &p, &p, &tree, 1, 1_000_000).unwrap();
        assert_eq!(out.verdict, GroupVerdict::Equal);
    }
}
