//! Group homomorphisms as full element-image tables, automorphisms, and
//! automorphism groups materialized as permutation groups acting on the
//! base group's element indices.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Perm;
use std::sync::Arc;

/// A verified homomorphism between two finite groups.
#[derive(Debug, Clone)]
pub struct GroupMap {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.images == other.images
    }
}
impl Eq for GroupMap {}

impl GroupMap {
    /// Extend generator images to the whole domain, or fail with
    /// `NotAHomomorphism` when the assignment is inconsistent.
    pub fn from_gen_images(
        domain: &Arc<FiniteGroup>,
        codomain: &Arc<FiniteGroup>,
        gen_images: &[usize],
    ) -> Result<GroupMap> {
        if gen_images.len() != domain.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} generator images, got {}",
                domain.generators().len(),
                gen_images.len()
            )));
        }
        for &gi in gen_images {
            if gi >= codomain.order() {
                return Err(Error::IndexOutOfRange {
                    index: gi,
                    order: codomain.order(),
                });
            }
        }
        // Elements are stored in BFS order, so every element's derivation
        // parent precedes it and one pass fills the table.
        let mut images = vec![0usize; domain.order()];
        for x in 1..domain.order() {
            let (parent, gen_pos) = domain.derivation(x).expect("non-identity has a derivation");
            images[x] = codomain.mul(images[parent], gen_images[gen_pos]);
        }
        let map = GroupMap {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images,
        };
        map.verify()?;
        Ok(map)
    }

    /// Wrap a full image table, verifying multiplicativity.
    pub fn from_element_images(
        domain: &Arc<FiniteGroup>,
        codomain: &Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<GroupMap> {
        if images.len() != domain.order() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} element images, got {}",
                domain.order(),
                images.len()
            )));
        }
        for &i in &images {
            if i >= codomain.order() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    order: codomain.order(),
                });
            }
        }
        let map = GroupMap {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images,
        };
        map.verify()?;
        Ok(map)
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> GroupMap {
        GroupMap {
            domain: Arc::clone(group),
            codomain: Arc::clone(group),
            images: (0..group.order()).collect(),
        }
    }

    /// Constant map to the identity.
    pub fn trivial(domain: &Arc<FiniteGroup>, codomain: &Arc<FiniteGroup>) -> GroupMap {
        GroupMap {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images: vec![codomain.identity(); domain.order()],
        }
    }

    /// f(x·g) = f(x)·f(g) for every element x and generator g, plus f(1) = 1.
    /// Sufficient for full multiplicativity; checked for all pairs on small
    /// domains as well.
    fn verify(&self) -> Result<()> {
        if self.images[self.domain.identity()] != self.codomain.identity() {
            return Err(Error::NotAHomomorphism);
        }
        for x in 0..self.domain.order() {
            for &g in self.domain.generator_indices() {
                let lhs = self.images[self.domain.mul(x, g)];
                let rhs = self.codomain.mul(self.images[x], self.images[g]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        if self.domain.order() <= 64 {
            for x in 0..self.domain.order() {
                for y in 0..self.domain.order() {
                    if self.images[self.domain.mul(x, y)]
                        != self.codomain.mul(self.images[x], self.images[y])
                    {
                        return Err(Error::NotAHomomorphism);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn gen_images(&self) -> Vec<usize> {
        self.domain
            .generator_indices()
            .iter()
            .map(|&g| self.images[g])
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &i in &self.images {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        let mut count = 0;
        for &i in &self.images {
            if !seen[i] {
                seen[i] = true;
                count += 1;
            }
        }
        count == self.codomain.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.domain.order())
            .filter(|&x| self.images[x] == self.codomain.identity())
            .collect();
        Subgroup::from_members(&self.domain, members).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        let mut members: Vec<usize> = self.images.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_members(&self.codomain, members).expect("image is a subgroup")
    }

    /// Preimage of a subgroup of the codomain.
    pub fn preimage(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.parent() != &self.codomain {
            return Err(Error::ShapeMismatch("preimage of a foreign subgroup".into()));
        }
        let members: Vec<usize> = (0..self.domain.order())
            .filter(|&x| h.contains(self.images[x]))
            .collect();
        Ok(Subgroup::from_members(&self.domain, members).expect("preimage is a subgroup"))
    }

    /// Composition `other ∘ self` (apply self first, then other).
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.codomain != other.domain {
            return Err(Error::ShapeMismatch("composition endpoint mismatch".into()));
        }
        Ok(GroupMap {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&other.codomain),
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_bijective() {
            return Err(Error::NotInjective);
        }
        let mut images = vec![0usize; self.codomain.order()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Ok(GroupMap {
            domain: Arc::clone(&self.codomain),
            codomain: Arc::clone(&self.domain),
            images,
        })
    }

    /// Partial inverse of an injective map, defined on its image.
    pub fn partial_inverse(&self, y: usize) -> Option<usize> {
        self.images.iter().position(|&i| i == y)
    }
}

/// An automorphism: a bijective `GroupMap` with domain = codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    map: GroupMap,
}

impl Automorphism {
    pub fn from_map(map: GroupMap) -> Result<Automorphism> {
        if map.domain() != map.codomain() {
            return Err(Error::ShapeMismatch("automorphism must be an endomap".into()));
        }
        if !map.is_bijective() {
            return Err(Error::NotInjective);
        }
        Ok(Automorphism { map })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Automorphism {
        Automorphism {
            map: GroupMap::identity(group),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.map.domain()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }

    pub fn as_map(&self) -> &GroupMap {
        &self.map
    }

    /// The image table read as a permutation of element indices.
    pub fn as_perm(&self) -> Perm {
        Perm::from_images(self.map.images().to_vec()).expect("bijective table")
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            map: self.map.inverse().expect("automorphisms invert"),
        }
    }

    /// Does this automorphism map the subgroup onto itself?
    pub fn preserves(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&m| h.contains(self.map.apply(m)))
    }
}

/// The inner automorphism ad(x): y -> x^{-1} y x.
pub fn conjugation(group: &Arc<FiniteGroup>, x: usize) -> Automorphism {
    let images: Vec<usize> = (0..group.order()).map(|y| group.conj(y, x)).collect();
    Automorphism {
        map: GroupMap::from_element_images(group, group, images).expect("conjugation is an automorphism"),
    }
}

/// Restrict an automorphism of G along an injective map iota: K -> G whose
/// image is invariant under `a`, giving the automorphism iota^{-1} ∘ a ∘ iota of K.
pub fn restrict_aut(a: &Automorphism, iota: &GroupMap) -> Result<Automorphism> {
    if iota.codomain() != a.group() {
        return Err(Error::ShapeMismatch("restriction along a map into a different group".into()));
    }
    if !iota.is_injective() {
        return Err(Error::NotInjective);
    }
    let image = iota.image();
    if !a.preserves(&image) {
        return Err(Error::NotInvariant);
    }
    let k = iota.domain();
    let mut lookup = vec![usize::MAX; a.group().order()];
    for x in 0..k.order() {
        lookup[iota.apply(x)] = x;
    }
    let images: Vec<usize> = (0..k.order())
        .map(|x| lookup[a.apply(iota.apply(x))])
        .collect();
    let map = GroupMap::from_element_images(k, k, images)?;
    Automorphism::from_map(map)
}

/// Aut(G) (or a subgroup of it) materialized as a permutation group of
/// degree |G| acting on G's element indices.
#[derive(Debug, Clone)]
pub struct AutGroup {
    base: Arc<FiniteGroup>,
    carrier: Arc<FiniteGroup>,
}

impl PartialEq for AutGroup {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.carrier == other.carrier
    }
}
impl Eq for AutGroup {}

impl AutGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    /// The carrier group: its elements, read as maps on base element indices,
    /// are exactly the automorphisms in this group.
    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// The automorphism behind carrier element `i`.
    pub fn automorphism(&self, i: usize) -> Automorphism {
        let images = self.carrier.element(i).images().to_vec();
        Automorphism {
            map: GroupMap::from_element_images(&self.base, &self.base, images)
                .expect("carrier elements are automorphism tables"),
        }
    }

    /// Carrier index of an automorphism of the base.
    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        if a.group() != &self.base {
            return None;
        }
        self.carrier.index_of(&a.as_perm())
    }
}

/// All automorphism tables of `base`, found by generator-image search with
/// (element order, conjugacy class size) fingerprints pruning the candidates.
fn automorphism_tables(base: &Arc<FiniteGroup>, filter: impl Fn(&Perm) -> bool) -> Vec<Perm> {
    let n = base.order();
    if n == 1 {
        return vec![Perm::identity(1)];
    }
    let (class_of, class_sizes) = base.conjugacy_classes();
    let fingerprint: Vec<(usize, usize)> = (0..n)
        .map(|i| (base.element_order(i), class_sizes[class_of[i]]))
        .collect();

    let gen_idx = base.generator_indices().to_vec();
    let candidates: Vec<Vec<usize>> = gen_idx
        .iter()
        .map(|&g| {
            (0..n)
                .filter(|&c| fingerprint[c] == fingerprint[g])
                .collect()
        })
        .collect();

    let mut tables = Vec::new();
    let mut choice = vec![0usize; gen_idx.len()];
    search_tuples(&candidates, &mut choice, 0, &mut |gen_images| {
        if let Ok(map) = GroupMap::from_gen_images(base, base, gen_images) {
            if map.is_bijective() {
                let perm = Perm::from_images(map.images().to_vec()).expect("bijective");
                if filter(&perm) {
                    tables.push(perm);
                }
            }
        }
    });
    tables.sort();
    tables.dedup();
    tables
}

fn search_tuples(
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    pos: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == candidates.len() {
        visit(choice);
        return;
    }
    for &c in &candidates[pos] {
        choice[pos] = c;
        search_tuples(candidates, choice, pos + 1, visit);
    }
}

/// The full automorphism group of `base`.
pub fn automorphism_group(base: &Arc<FiniteGroup>, cap: usize) -> Result<AutGroup> {
    let tables = automorphism_tables(base, |_| true);
    if tables.len() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let carrier = FiniteGroup::from_closed_elements(base.order().max(1), tables, cap)?;
    Ok(AutGroup {
        base: Arc::clone(base),
        carrier,
    })
}

/// Automorphisms of `base` mapping each listed subgroup onto itself
/// (each subgroup individually invariant).
pub fn relative_automorphism_group(
    base: &Arc<FiniteGroup>,
    preserved: &[Subgroup],
    cap: usize,
) -> Result<AutGroup> {
    for h in preserved {
        if h.parent() != base {
            return Err(Error::ShapeMismatch("preserved subgroup of a different group".into()));
        }
    }
    let keeps = |perm: &Perm| {
        preserved
            .iter()
            .all(|h| h.members().iter().all(|&m| h.contains(perm.apply(m))))
    };
    let tables = automorphism_tables(base, keeps);
    if tables.len() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let carrier = FiniteGroup::from_closed_elements(base.order().max(1), tables, cap)?;
    Ok(AutGroup {
        base: Arc::clone(base),
        carrier,
    })
}
