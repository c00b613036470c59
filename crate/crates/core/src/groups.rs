//! Finite groups presented by permutation generators.
//!
//! A `FiniteGroup` is the enumerated closure of its generators with a fixed
//! canonical element order (lexicographic by permutation image) and a total
//! multiplication table. It models the finite quotient through which a
//! profinite Galois action on a lattice factors, so subgroup-level queries
//! (conjugacy classes of subgroups, cyclic classes, Sylow subgroups) are the
//! currency of every cohomological computation downstream.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

/// Image array of a permutation of 0..degree-1.
pub type Perm = Vec<usize>;

pub const DEFAULT_GROUP_CAP: usize = 384;
pub const SUBGROUP_COUNT_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("generator {index} is not a bijection on 0..{degree}")]
    NonBijectiveGenerator { index: usize, degree: usize },
    #[error("group order exceeds the cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup count exceeds the cap {cap}")]
    SubgroupCapExceeded { cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn compose(p: &Perm, q: &Perm) -> Perm {
    // (p * q)(x) = p(q(x))
    q.iter().map(|&x| p[x]).collect()
}

fn identity_perm(degree: usize) -> Perm {
    (0..degree).collect()
}

/// A finite permutation group with enumerated elements and multiplication
/// table. Immutable after construction; all queries are read-only.
pub struct FiniteGroup {
    degree: usize,
    /// Indices of the defining generators in `elements`.
    generator_indices: Vec<usize>,
    /// All elements, sorted lexicographically by image; index 0 is the identity.
    elements: Vec<Perm>,
    /// mult[i * order + j] = index of elements[i] ∘ elements[j].
    mult: Vec<usize>,
    inverse: Vec<usize>,
    subgroup_classes: OnceLock<Vec<Vec<usize>>>,
    cyclic_classes: OnceLock<Vec<Vec<usize>>>,
}

pub type GroupRef = Arc<FiniteGroup>;

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(degree {}, order {})", self.degree, self.order())
    }
}

impl FiniteGroup {
    /// Enumerates the closure of the generators; the trivial group when the
    /// generator list is empty.
    pub fn from_generators(degree: usize, generators: &[Perm]) -> Result<GroupRef, GroupError> {
        Self::from_generators_capped(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        generators: &[Perm],
        cap: usize,
    ) -> Result<GroupRef, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| {
                    if x >= degree || seen[x] {
                        false
                    } else {
                        seen[x] = true;
                        true
                    }
                });
            if !ok {
                return Err(GroupError::NonBijectiveGenerator { index, degree });
            }
        }

        let mut elements: Vec<Perm> = vec![identity_perm(degree)];
        let mut seen: BTreeSet<Perm> = elements.iter().cloned().collect();
        let mut frontier = elements.clone();
        while let Some(p) = frontier.pop() {
            for g in generators {
                let next = compose(&p, g);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    elements.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        elements.sort();
        let order = elements.len();
        let index_of: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut mult = vec![0usize; order * order];
        for i in 0..order {
            for j in 0..order {
                mult[i * order + j] = index_of[&compose(&elements[i], &elements[j])];
            }
        }
        let mut inverse = vec![0usize; order];
        for i in 0..order {
            inverse[i] = (0..order)
                .find(|&j| mult[i * order + j] == 0)
                .expect("every element has an inverse in a closed table");
        }
        let generator_indices = generators.iter().map(|g| index_of[g]).collect();

        Ok(Arc::new(FiniteGroup {
            degree,
            generator_indices,
            elements,
            mult,
            inverse,
            subgroup_classes: OnceLock::new(),
            cyclic_classes: OnceLock::new(),
        }))
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

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.elements.len() + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(cur, i);
            k += 1;
        }
        k
    }

    /// Evaluates a word in the defining generators (indices into the
    /// generator list) to an element index.
    pub fn evaluate_word(&self, word: &[usize]) -> Option<usize> {
        let mut cur = 0usize;
        for &w in word {
            let g = *self.generator_indices.get(w)?;
            cur = self.mul(cur, g);
        }
        Some(cur)
    }

    fn close_subset(&self, seed: &BTreeSet<usize>) -> Vec<usize> {
        let mut members: BTreeSet<usize> = seed.clone();
        members.insert(0);
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = members.iter().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    if members.insert(self.mul(a, b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        members.into_iter().collect()
    }

    fn conjugate_members(&self, g: usize, members: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().map(|&m| self.conjugate(g, m)).collect();
        out.sort_unstable();
        out
    }

    /// Lexicographically least member set among all conjugates.
    fn conjugacy_canonical(&self, members: &[usize]) -> Vec<usize> {
        (0..self.order())
            .map(|g| self.conjugate_members(g, members))
            .min()
            .expect("group is nonempty")
    }

    fn subgroup_class_sets(&self) -> &Vec<Vec<usize>> {
        self.subgroup_classes.get_or_init(|| {
            self.enumerate_subgroup_classes()
                .expect("subgroup enumeration within caps")
        })
    }

    fn enumerate_subgroup_classes(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        // Bottom-up: cyclic subgroups first, then repeatedly extend by one
        // generator and close, deduplicating by conjugacy.
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut worklist: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.order() {
            let set = self.close_subset(&BTreeSet::from([i]));
            if all.insert(set.clone()) {
                worklist.push(set.clone());
                canon.insert(self.conjugacy_canonical(&set));
            }
        }
        while let Some(current) = worklist.pop() {
            for g in 0..self.order() {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed: BTreeSet<usize> = current.iter().copied().collect();
                seed.insert(g);
                let set = self.close_subset(&seed);
                if all.insert(set.clone()) {
                    if all.len() > SUBGROUP_COUNT_CAP {
                        return Err(GroupError::SubgroupCapExceeded {
                            cap: SUBGROUP_COUNT_CAP,
                        });
                    }
                    canon.insert(self.conjugacy_canonical(&set));
                    worklist.push(set);
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = canon.into_iter().collect();
        classes.sort_by_key(|m| (m.len(), m.clone()));
        Ok(classes)
    }
}

/// A subgroup given by its sorted member indices in the parent group.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    members: Vec<usize>,
    is_class_representative: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, members {:?})", self.members.len(), self.members)
    }
}

impl Subgroup {
    pub fn new(parent: GroupRef, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup {
            parent,
            members,
            is_class_representative: false,
        };
        debug_assert!(sub.is_closed(), "subgroup members must be closed");
        sub
    }

    pub fn trivial(parent: GroupRef) -> Self {
        let id = parent.identity();
        Subgroup::new(parent, vec![id])
    }

    pub fn full(parent: GroupRef) -> Self {
        let members = (0..parent.order()).collect();
        Subgroup::new(parent, members)
    }

    pub fn generated_by(parent: GroupRef, gens: &[usize]) -> Self {
        let set = parent.close_subset(&gens.iter().copied().collect());
        Subgroup::new(parent, set)
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_class_representative(&self) -> bool {
        self.is_class_representative
    }

    /// Closure under multiplication and inverse, identity present.
    pub fn is_closed(&self) -> bool {
        let g = &self.parent;
        self.contains(g.identity())
            && self
                .members
                .iter()
                .all(|&a| self.members.iter().all(|&b| self.contains(g.mul(a, b))))
            && self.members.iter().all(|&a| self.contains(g.inv(a)))
    }

    /// A short generating set, grown greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut gens: Vec<usize> = Vec::new();
        let mut closed: BTreeSet<usize> = BTreeSet::from([g.identity()]);
        for &m in &self.members {
            if !closed.contains(&m) {
                gens.push(m);
                closed = g
                    .close_subset(&closed.iter().copied().chain([m]).collect())
                    .into_iter()
                    .collect();
            }
        }
        gens
    }

    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| g.conjugate_members(x, &self.members) == self.members)
            .collect();
        Subgroup::new(self.parent.clone(), members)
    }

    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        Subgroup::new(
            self.parent.clone(),
            self.parent.conjugate_members(g, &self.members),
        )
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        self.parent == other.parent
            && self.parent.conjugacy_canonical(&self.members)
                == other.parent.conjugacy_canonical(&other.members)
    }

    /// Left cosets, each sorted, ordered by least member; the coset of the
    /// identity comes first. Representatives are the least members.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut assigned = vec![false; g.order()];
        let mut cosets = Vec::new();
        for i in 0..g.order() {
            if assigned[i] {
                continue;
            }
            let mut coset: Vec<usize> = self.members.iter().map(|&h| g.mul(i, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// The subgroup as a standalone group on the same points.
    pub fn as_group(&self) -> Result<GroupRef, GroupError> {
        let perms: Vec<Perm> = self
            .members
            .iter()
            .map(|&m| self.parent.element(m).clone())
            .collect();
        FiniteGroup::from_generators_capped(self.parent.degree(), &perms, self.parent.order())
    }
}

/// Exactly one representative per conjugacy class of subgroups, sorted by
/// (order, member set); includes the trivial and the full subgroup.
pub fn subgroups_up_to_conjugacy(group: &GroupRef) -> Vec<Subgroup> {
    group
        .subgroup_class_sets()
        .iter()
        .map(|members| Subgroup {
            parent: group.clone(),
            members: members.clone(),
            is_class_representative: true,
        })
        .collect()
}

/// One representative per conjugacy class of cyclic subgroups, including the
/// trivial one.
pub fn cyclic_subgroups_up_to_conjugacy(group: &GroupRef) -> Vec<Subgroup> {
    let sets = group.cyclic_classes.get_or_init(|| {
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..group.order() {
            let set = group.close_subset(&BTreeSet::from([i]));
            canon.insert(group.conjugacy_canonical(&set));
        }
        let mut classes: Vec<Vec<usize>> = canon.into_iter().collect();
        classes.sort_by_key(|m| (m.len(), m.clone()));
        classes
    });
    sets.iter()
        .map(|members| Subgroup {
            parent: group.clone(),
            members: members.clone(),
            is_class_representative: true,
        })
        .collect()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A Sylow p-subgroup: order equal to the full p-part of |G|. Returns the
/// trivial subgroup when p does not divide the order.
pub fn sylow_subgroup(group: &GroupRef, p: u64) -> Result<Subgroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p = p as usize;
    let mut target = 1usize;
    let mut n = group.order();
    while n % p == 0 {
        target *= p;
        n /= p;
    }
    let mut current = Subgroup::trivial(group.clone());
    while current.order() < target {
        // H is normal in its normalizer N and p divides [N : H], so some
        // coset gH has order p in N/H; adjoining a representative multiplies
        // the order by exactly p.
        let normalizer = current.normalizer();
        let mut extended = None;
        for &g in normalizer.members() {
            if current.contains(g) {
                continue;
            }
            let mut k = 1usize;
            let mut cur = g;
            while !current.contains(cur) {
                cur = group.mul(cur, g);
                k += 1;
            }
            if k % p == 0 {
                // g^(k/p) has coset order exactly p.
                let mut rep = g;
                for _ in 1..(k / p) {
                    rep = group.mul(rep, g);
                }
                let mut gens = current.members().to_vec();
                gens.push(rep);
                extended = Some(Subgroup::generated_by(group.clone(), &gens));
                break;
            }
        }
        current = extended.expect("a p-subgroup below the Sylow order always extends");
        debug_assert_eq!(current.order() % p, 0);
    }
    Ok(current)
}
