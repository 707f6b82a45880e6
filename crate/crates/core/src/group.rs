//! Finite permutation groups with a fully enumerated element table, and the
//! subgroup machinery built on element indices: generated subgroups,
//! normalizers, intersections, double cosets and complements of normal
//! subgroups.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::HashMap;
use std::sync::Arc;

/// Default cap on the number of elements enumerated for one group.
pub const DEFAULT_CAP: usize = 20_000;

/// Orders up to this bound get a precomputed multiplication table.
const MUL_TABLE_MAX: usize = 1024;

/// A finite permutation group with every element materialized.
///
/// Element 0 is always the identity. The element order is breadth-first from
/// the identity (right-multiplying by the generators in their given order),
/// with each BFS level sorted lexicographically by image array, so it is
/// fully determined by the generator list.
#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    /// For each non-identity element, (parent element, generator position)
    /// with element = parent * generator; identity has no entry.
    derivations: Vec<Option<(usize, usize)>>,
    gen_indices: Vec<usize>,
    mul_table: Option<Vec<u32>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closure of a generator list under products. BFS from the identity,
    /// fails with `CapExceeded` once more than `cap` elements appear.
    pub fn generate(generators: Vec<Perm>, degree: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
        if cap == 0 {
            return Err(Error::CapExceeded { cap });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut derivations: Vec<Option<(usize, usize)>> = vec![None];

        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            // Discover one BFS level, then sort it for a deterministic order.
            let mut discovered: Vec<(Perm, usize, usize)> = Vec::new();
            for &e in &frontier {
                let base = elements[e].clone();
                for (gi, g) in generators.iter().enumerate() {
                    let prod = base.mul(g);
                    if !index.contains_key(&prod) && !discovered.iter().any(|(p, _, _)| *p == prod)
                    {
                        discovered.push((prod, e, gi));
                    }
                }
            }
            discovered.sort_by(|a, b| a.0.cmp(&b.0));
            let mut next = Vec::with_capacity(discovered.len());
            for (p, parent, gi) in discovered {
                let id = elements.len();
                if id >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(p.clone(), id);
                elements.push(p);
                derivations.push(Some((parent, gi)));
                next.push(id);
            }
            frontier = next;
        }

        Ok(Arc::new(Self::finish(degree, generators, elements, index, derivations)))
    }

    /// Wrap an already-closed element set. Generators are re-derived greedily
    /// (smallest element not yet generated) and the group re-enumerated so the
    /// element order is the canonical BFS order for those generators.
    pub fn from_closed_elements(degree: usize, mut elements: Vec<Perm>, cap: usize) -> Result<Arc<FiniteGroup>> {
        elements.sort();
        elements.dedup();
        let target = elements.len();
        let mut gens: Vec<Perm> = Vec::new();
        let mut generated: Vec<Perm> = vec![Perm::identity(degree)];
        while generated.len() < target {
            let next = elements
                .iter()
                .find(|e| !generated.contains(e))
                .expect("closed set larger than generated subgroup must contain a new element")
                .clone();
            gens.push(next);
            generated = naive_closure(degree, &gens);
        }
        let group = Self::generate(gens, degree, cap.max(target))?;
        debug_assert_eq!(group.order(), target);
        Ok(group)
    }

    fn finish(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        index: HashMap<Perm, usize>,
        derivations: Vec<Option<(usize, usize)>>,
    ) -> FiniteGroup {
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        let orders = elements.iter().map(|e| e.order()).collect();
        let gen_indices = generators.iter().map(|g| index[g]).collect();
        let mul_table = if elements.len() <= MUL_TABLE_MAX {
            let n = elements.len();
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = index[&elements[i].mul(&elements[j])] as u32;
                }
            }
            Some(table)
        } else {
            None
        };
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            orders,
            derivations,
            gen_indices,
            mul_table,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Product of elements by index.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        if let Some(table) = &self.mul_table {
            table[i * self.elements.len() + j] as usize
        } else {
            self.index[&self.elements[i].mul(&self.elements[j])]
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Order of the element at index `i`.
    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i]
    }

    /// Conjugate `y` by `x`: x^{-1} y x.
    pub fn conj(&self, y: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), y), x)
    }

    /// BFS derivation of element `i` as (parent, generator position), None for identity.
    pub fn derivation(&self, i: usize) -> Option<(usize, usize)> {
        self.derivations[i]
    }

    /// Conjugacy class of each element, as a class id, plus class sizes.
    pub fn conjugacy_classes(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut stack = vec![start];
            class_of[start] = id;
            let mut size = 0usize;
            while let Some(y) = stack.pop() {
                size += 1;
                for &g in &self.gen_indices {
                    let c = self.conj(y, g);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        stack.push(c);
                    }
                }
            }
            sizes.push(size);
        }
        (class_of, sizes)
    }
}

/// Closure by repeated products, used only for small helper computations.
pub(crate) fn naive_closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut set: Vec<Perm> = vec![Perm::identity(degree)];
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = set.clone();
        for a in &snapshot {
            for g in gens {
                let p = a.mul(g);
                if !set.contains(&p) {
                    set.push(p);
                    changed = true;
                }
            }
        }
    }
    set.sort();
    set
}

/// A subgroup of a `FiniteGroup`, as a sorted set of element indices.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    member_set: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Smallest subgroup containing the seed elements.
    pub fn generated(parent: &Arc<FiniteGroup>, seeds: &[usize]) -> Result<Subgroup> {
        let n = parent.order();
        for &s in seeds {
            if s >= n {
                return Err(Error::IndexOutOfRange { index: s, order: n });
            }
        }
        let mut member_set = vec![false; n];
        member_set[parent.identity()] = true;
        let mut members = vec![parent.identity()];
        let mut frontier = vec![parent.identity()];
        // Seeds act as generators; inverses come along because the group is finite.
        while let Some(x) = frontier.pop() {
            for &s in seeds {
                let p = parent.mul(x, s);
                if !member_set[p] {
                    member_set[p] = true;
                    members.push(p);
                    frontier.push(p);
                }
            }
        }
        members.sort_unstable();
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
            member_set,
        })
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(parent, &[]).expect("trivial subgroup")
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        let n = parent.order();
        Subgroup {
            parent: Arc::clone(parent),
            members: (0..n).collect(),
            member_set: vec![true; n],
        }
    }

    /// Wrap a set of indices that is already closed under product and inverse.
    pub fn from_members(parent: &Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let n = parent.order();
        let mut member_set = vec![false; n];
        for &m in &members {
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, order: n });
            }
            member_set[m] = true;
        }
        if !member_set[parent.identity()] {
            return Err(Error::ShapeMismatch("subgroup must contain the identity".into()));
        }
        for &a in &members {
            if !member_set[parent.inv(a)] {
                return Err(Error::ShapeMismatch("member set not closed under inverse".into()));
            }
            for &b in &members {
                if !member_set[parent.mul(a, b)] {
                    return Err(Error::ShapeMismatch("member set not closed under product".into()));
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
            member_set,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member_set[i]
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::ShapeMismatch("intersection across different parents".into()));
        }
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        let mut member_set = vec![false; self.parent.order()];
        for &m in &members {
            member_set[m] = true;
        }
        Ok(Subgroup {
            parent: Arc::clone(&self.parent),
            members,
            member_set,
        })
    }

    /// N_G(H) = { g in G : g^{-1} H g = H }.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| self.members.iter().all(|&h| self.member_set[g.conj(h, x)]))
            .collect();
        let mut member_set = vec![false; g.order()];
        for &m in &members {
            member_set[m] = true;
        }
        Subgroup {
            parent: Arc::clone(g),
            members,
            member_set,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.normalizer().is_whole()
    }
}

/// One double coset H g K: its minimal representative and all members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partition of G into double cosets HgK. Classes appear in order of their
/// minimal representative; members are sorted.
pub fn double_cosets(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<Vec<DoubleCoset>> {
    if h.parent() != g || k.parent() != g {
        return Err(Error::ShapeMismatch("double cosets need subgroups of the same group".into()));
    }
    let n = g.order();
    let mut covered = vec![false; n];
    let mut classes = Vec::new();
    for rep in 0..n {
        if covered[rep] {
            continue;
        }
        let mut members = Vec::new();
        for &a in h.members() {
            let ag = g.mul(a, rep);
            for &b in k.members() {
                let x = g.mul(ag, b);
                if !covered[x] {
                    covered[x] = true;
                    members.push(x);
                }
            }
        }
        members.sort_unstable();
        classes.push(DoubleCoset {
            representative: rep,
            members,
        });
    }
    Ok(classes)
}

/// Complement of a normal subgroup: T with T ∩ N = 1 and |T|·|N| = |A|.
///
/// Backtracking over generated subgroups with strictly increasing seed
/// elements; the first complement in that canonical order is returned.
pub fn complement_of_normal(
    a: &Arc<FiniteGroup>,
    n: &Subgroup,
    budget: u64,
) -> Result<Option<Subgroup>> {
    if n.parent() != a {
        return Err(Error::ShapeMismatch("complement needs a subgroup of the given group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    complement_avoiding(a, &[n.clone()], budget)
}

/// Common complement: T with |T| = |A| / |kernels[0]| and T ∩ K = 1 for every
/// listed kernel (all kernels must have one order).
pub(crate) fn complement_avoiding(
    a: &Arc<FiniteGroup>,
    kernels: &[Subgroup],
    budget: u64,
) -> Result<Option<Subgroup>> {
    let k0 = kernels[0].order();
    if kernels.iter().any(|k| k.order() != k0) {
        return Ok(None);
    }
    let target = a.order() / k0;
    if a.order() % k0 != 0 {
        return Ok(None);
    }
    let start = Subgroup::trivial(a);
    if meets_nontrivially(&start, kernels) {
        return Ok(None);
    }
    let mut nodes = 0u64;
    let mut seeds = Vec::new();
    search_complement(a, kernels, target, &start, 0, &mut seeds, &mut nodes, budget)
}

fn meets_nontrivially(t: &Subgroup, kernels: &[Subgroup]) -> bool {
    t.members()
        .iter()
        .any(|&m| m != 0 && kernels.iter().any(|k| k.contains(m)))
}

#[allow(clippy::too_many_arguments)]
fn search_complement(
    a: &Arc<FiniteGroup>,
    kernels: &[Subgroup],
    target: usize,
    current: &Subgroup,
    min_seed: usize,
    seeds: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Subgroup>> {
    if current.order() == target {
        return Ok(Some(current.clone()));
    }
    for cand in min_seed..a.order() {
        if current.contains(cand) || kernels.iter().any(|k| k.contains(cand)) {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded {
                budget,
                context: "complement search".into(),
            });
        }
        seeds.push(cand);
        let extended = Subgroup::generated(a, seeds)?;
        let ok = target % extended.order() == 0
            && extended.order() <= target
            && !meets_nontrivially(&extended, kernels);
        if ok {
            if let Some(found) =
                search_complement(a, kernels, target, &extended, cand + 1, seeds, nodes, budget)?
            {
                return Ok(Some(found));
            }
        }
        seeds.pop();
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn s3() -> Arc<FiniteGroup> {
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

    pub fn z4() -> Arc<FiniteGroup> {
        FiniteGroup::generate(vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()], 4, 100).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::generate(vec![], 3, 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn s3_has_order_six() {
        let g = s3();
        assert_eq!(g.order(), 6);
        // identity first, then the sorted level of generator products
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn z4_is_cyclic_of_order_four() {
        let g = z4();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(g.index_of(&Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()).unwrap()), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::generate(
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            3,
            5,
        );
        assert!(matches!(err, Err(Error::CapExceeded { cap: 5 })));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = FiniteGroup::generate(
            vec![Perm::identity(3), Perm::identity(4)],
            3,
            10,
        );
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn bfs_order_is_deterministic() {
        let g1 = s3();
        let g2 = s3();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn mul_and_inverse_agree_with_perms() {
        let g = s3();
        for i in 0..g.order() {
            for j in 0..g.order() {
                let expect = g.element(i).mul(g.element(j));
                assert_eq!(g.element(g.mul(i, j)), &expect);
            }
            assert!(g.element(g.mul(i, g.inv(i))).is_identity());
        }
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = s3();
        let trivial = Subgroup::generated(&g, &[]).unwrap();
        assert_eq!(trivial.order(), 1);

        let rot = g.index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let a3 = Subgroup::generated(&g, &[rot]).unwrap();
        assert_eq!(a3.order(), 3);

        let whole = Subgroup::generated(&g, g.generator_indices()).unwrap();
        assert_eq!(whole.order(), 6);
    }

    #[test]
    fn lagrange_for_all_cyclic_subgroups() {
        let g = s3();
        for i in 0..g.order() {
            let h = Subgroup::generated(&g, &[i]).unwrap();
            assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn normalizer_examples() {
        let g = s3();
        let rot = g.index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let a3 = Subgroup::generated(&g, &[rot]).unwrap();
        assert!(a3.normalizer().is_whole());
        assert!(a3.is_normal());

        let flip = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = Subgroup::generated(&g, &[flip]).unwrap();
        let n = h.normalizer();
        assert_eq!(n.order(), 2);
        assert_eq!(n.members(), h.members());

        assert_eq!(h.intersect(&h).unwrap(), h);
    }

    #[test]
    fn double_coset_examples() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        let trivial = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &whole, &whole).unwrap().len(), 1);
        assert_eq!(double_cosets(&g, &trivial, &trivial).unwrap().len(), 6);

        let flip = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = Subgroup::generated(&g, &[flip]).unwrap();
        let classes = double_cosets(&g, &h, &h).unwrap();
        assert_eq!(classes.len(), 2);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        // classes partition the group
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn double_cosets_recheck_membership() {
        let g = s3();
        let flip = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = Subgroup::generated(&g, &[flip]).unwrap();
        let classes = double_cosets(&g, &h, &h).unwrap();
        for c in &classes {
            let mut expect: Vec<usize> = Vec::new();
            for &a in h.members() {
                for &b in h.members() {
                    expect.push(g.mul(g.mul(a, c.representative), b));
                }
            }
            expect.sort_unstable();
            expect.dedup();
            assert_eq!(expect, c.members);
        }
    }

    #[test]
    fn complement_examples() {
        let g = s3();
        // N = 1 -> T = whole group
        let trivial = Subgroup::trivial(&g);
        let t = complement_of_normal(&g, &trivial, 10_000).unwrap().unwrap();
        assert_eq!(t.order(), 6);

        // A3 in S3 has a transposition complement
        let rot = g.index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let a3 = Subgroup::generated(&g, &[rot]).unwrap();
        let t = complement_of_normal(&g, &a3, 10_000).unwrap().unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.intersect(&a3).unwrap().order(), 1);

        // Z4 has no complement to its order-2 subgroup
        let z = z4();
        let sq = Subgroup::generated(&z, &[z.mul(1, 1)]).unwrap();
        let sq = if sq.order() == 2 {
            sq
        } else {
            // element 1 might be the 4-cycle or its inverse; square any order-4 element
            let four = (0..4).find(|&i| z.element_order(i) == 4).unwrap();
            Subgroup::generated(&z, &[z.mul(four, four)]).unwrap()
        };
        assert_eq!(sq.order(), 2);
        assert!(complement_of_normal(&z, &sq, 10_000).unwrap().is_none());
    }

    #[test]
    fn complement_bijection_property() {
        let g = s3();
        let rot = g.index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let a3 = Subgroup::generated(&g, &[rot]).unwrap();
        let t = complement_of_normal(&g, &a3, 10_000).unwrap().unwrap();
        let mut products: Vec<usize> = Vec::new();
        for &x in t.members() {
            for &n in a3.members() {
                products.push(g.mul(x, n));
            }
        }
        products.sort_unstable();
        products.dedup();
        assert_eq!(products.len(), g.order());
    }

    #[test]
    fn not_normal_is_rejected() {
        let g = s3();
        let flip = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = Subgroup::generated(&g, &[flip]).unwrap();
        assert!(matches!(
            complement_of_normal(&g, &h, 10_000),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let g = s3();
        let (class_of, sizes) = g.conjugacy_classes();
        assert_eq!(sizes.len(), 3);
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(class_of[0], 0);
    }

    #[test]
    fn from_closed_elements_recovers_group() {
        let g = s3();
        let rebuilt =
            FiniteGroup::from_closed_elements(3, g.elements().to_vec(), 100).unwrap();
        assert_eq!(rebuilt.order(), 6);
        let mut a: Vec<Perm> = g.elements().to_vec();
        let mut b: Vec<Perm> = rebuilt.elements().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
