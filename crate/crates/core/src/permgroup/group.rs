use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// Hard cap on explicit multiplication tables. Everything in this crate works
/// with groups of order at most 24; the cap leaves room for S6 (order 720),
/// which some exhaustive checks use.
pub const MAX_GROUP_ORDER: usize = 1024;

/// Cap for exhaustive subgroup enumeration.
pub const MAX_LATTICE_ORDER: usize = 64;

/// A finite group given by a full multiplication table.
///
/// Elements are opaque ids `0..order`. Labels and a faithful permutation
/// realization (when the group was built from permutations) are metadata:
/// they never affect equality or multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>, // row-major: table[a * order + b] = a·b
    inverses: Vec<usize>,
    identity: usize,
    labels: Option<Vec<String>>,
    perms: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking all group axioms.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order,
                max: MAX_GROUP_ORDER,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(Error::InvalidGroupTable("table is not square".into()));
            }
            for &entry in row {
                if entry >= order {
                    return Err(Error::InvalidGroupTable(format!(
                        "entry {entry} out of range 0..{order}"
                    )));
                }
                flat.push(entry);
            }
        }
        if let Some(ref l) = labels {
            if l.len() != order {
                return Err(Error::InvalidGroupTable(
                    "label count differs from order".into(),
                ));
            }
        }
        // The cubic associativity scan only runs here, on untrusted tables;
        // tables built from permutation composition or modular arithmetic
        // inherit associativity.
        let mul = |a: usize, b: usize| flat[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Self::finish(order, flat, labels, None)
    }

    fn finish(
        order: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        perms: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidGroupTable("no two-sided identity".into()))?;
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| {
                        Error::InvalidGroupTable(format!("element {a} has no inverse"))
                    })
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(FiniteGroup {
            order,
            table,
            inverses,
            identity,
            labels,
            perms,
        })
    }

    /// Closure of a set of permutations, as a group whose element ids follow
    /// the lexicographic order of the closed element set.
    pub fn from_permutations(generators: &[Permutation]) -> Result<Self> {
        let degree = match generators.first() {
            Some(p) => p.degree(),
            None => {
                return Err(Error::InvalidArgument(
                    "at least one permutation is required".into(),
                ))
            }
        };
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let elements = permutation_closure(generators, degree)?;
        let order = elements.len();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                let ab = a.compose(b).expect("equal degrees by construction");
                table.push(index[&ab]);
            }
        }
        let labels = Some(elements.iter().map(|p| p.to_string()).collect());
        Self::finish(order, table, labels, Some(elements))
    }

    /// The symmetric group on `{0..d-1}`, elements in lexicographic order.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        let order: usize = (1..=degree).product();
        if order > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order,
                max: MAX_GROUP_ORDER,
            });
        }
        let elements: Vec<Permutation> = (0..degree)
            .permutations(degree)
            .map(|m| Permutation::from_mapping(m).expect("permutations are bijections"))
            .collect();
        Self::from_permutations(&elements)
    }

    /// The alternating group on `{0..d-1}`.
    pub fn alternating(degree: usize) -> Result<Self> {
        let sym = Self::symmetric(degree)?;
        let evens: Vec<Permutation> = sym
            .perms
            .as_ref()
            .expect("symmetric groups carry their permutations")
            .iter()
            .filter(|p| p.sign() == 1)
            .cloned()
            .collect();
        Self::from_permutations(&evens)
    }

    /// The cyclic group of order n, realized by the powers of an n-cycle.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order: n,
                max: MAX_GROUP_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let perms = (0..n)
            .map(|k| {
                Permutation::from_mapping((0..n).map(|i| (i + k) % n).collect())
                    .expect("rotations are bijections")
            })
            .collect();
        Self::finish(n, table, Some(labels), Some(perms))
    }

    /// The dihedral group of order 2n, presented as
    /// `⟨ψ, τ | ψ^n = τ^2 = 1, τψτ = ψ^{-1}⟩`.
    ///
    /// Element ids: `k` is ψ^k for `0 <= k < n`, and `n + k` is ψ^k τ.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let order = 2 * n;
        if order > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order,
                max: MAX_GROUP_ORDER,
            });
        }
        let split = |id: usize| (id % n, id / n); // (rotation exponent, reflection bit)
        let join = |k: usize, e: usize| e * n + k;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let (k1, e1) = split(a);
            for b in 0..order {
                let (k2, e2) = split(b);
                // ψ^{k1} τ^{e1} · ψ^{k2} τ^{e2} = ψ^{k1 + (-1)^{e1} k2} τ^{e1+e2}
                let k = if e1 == 0 {
                    (k1 + k2) % n
                } else {
                    (n + k1 - k2) % n
                };
                table.push(join(k, e1 ^ e2));
            }
        }
        let labels = (0..order)
            .map(|id| {
                let (k, e) = split(id);
                match (k, e) {
                    (0, 0) => "1".to_string(),
                    (1, 0) => "ψ".to_string(),
                    (_, 0) => format!("ψ^{k}"),
                    (0, _) => "τ".to_string(),
                    (1, _) => "ψτ".to_string(),
                    (_, _) => format!("ψ^{k}τ"),
                }
            })
            .collect();
        Self::finish(order, table, Some(labels), None)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Product of the ids, left to right; identity for an empty sequence.
    pub fn product(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn element_ids(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut power = a;
        let mut n = 1;
        while power != self.identity {
            power = self.mul(power, a);
            n += 1;
        }
        n
    }

    pub fn involutions(&self) -> Vec<usize> {
        self.element_ids()
            .filter(|&a| a != self.identity && self.mul(a, a) == self.identity)
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        self.element_ids()
            .filter(|&a| self.element_ids().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The faithful permutation realization, when the group was built from
    /// permutations (`symmetric`, `alternating`, `cyclic`, `from_permutations`).
    pub fn perm(&self, a: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|ps| &ps[a])
    }

    pub fn has_permutation_realization(&self) -> bool {
        self.perms.is_some()
    }

    pub fn element_id_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.perms
            .as_ref()
            .and_then(|ps| ps.iter().position(|q| q == p))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![self.identity],
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            members: self.element_ids().collect(),
        }
    }

    /// Smallest subgroup containing `gens`, by breadth-first multiplication.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            if g >= self.order {
                return Err(Error::NotInGroup {
                    element: g,
                    order: self.order,
                });
            }
        }
        let mut members: BTreeSet<usize> = [self.identity].into();
        let mut queue: VecDeque<usize> = [self.identity].into();
        for &g in gens {
            if members.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup {
            members: members.into_iter().collect(),
        })
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        if !h.contains(self.identity) || h.members.iter().any(|&m| m >= self.order) {
            return false;
        }
        h.members.iter().all(|&a| {
            h.contains(self.inv(a)) && h.members.iter().all(|&b| h.contains(self.mul(a, b)))
        })
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut members: Vec<usize> = h.members.iter().map(|&m| self.conjugate(g, m)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.element_ids()
            .all(|g| &self.conjugate_subgroup(h, g) == h)
    }

    /// Normal core of `h`: the intersection of all conjugates.
    pub fn normal_core(&self, h: &Subgroup) -> Subgroup {
        let mut members: BTreeSet<usize> = h.members.iter().copied().collect();
        for g in self.element_ids() {
            let conj = self.conjugate_subgroup(h, g);
            members.retain(|m| conj.contains(*m));
        }
        Subgroup {
            members: members.into_iter().collect(),
        }
    }

    /// Every subgroup, found by closing extensions of already-found subgroups
    /// one generator at a time. Exhaustive and only intended for small orders.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order > MAX_LATTICE_ORDER {
            return Err(Error::LatticeTooLarge {
                order: self.order,
                max: MAX_LATTICE_ORDER,
            });
        }
        let trivial = self.trivial_subgroup();
        let mut found: BTreeSet<Vec<usize>> = [trivial.members.clone()].into();
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            for g in self.element_ids() {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.members.clone();
                gens.push(g);
                let ext = self.generated_subgroup(&gens)?;
                if found.insert(ext.members.clone()) {
                    queue.push(ext);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|members| Subgroup { members })
            .collect();
        subs.sort_by_key(|s| (s.order(), s.members.clone()));
        Ok(subs)
    }

    /// All subgroups grouped into conjugacy classes, with class representatives
    /// chosen lexicographically minimal.
    pub fn subgroup_lattice(&self) -> Result<SubgroupLattice> {
        let subs = self.subgroups()?;
        let mut classified: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut classes = Vec::new();
        for sub in &subs {
            if classified.contains(&sub.members) {
                continue;
            }
            let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
            for g in self.element_ids() {
                orbit.insert(self.conjugate_subgroup(sub, g).members);
            }
            for members in &orbit {
                classified.insert(members.clone());
            }
            let members: Vec<Subgroup> = orbit
                .into_iter()
                .map(|members| Subgroup { members })
                .collect();
            classes.push(SubgroupClass {
                representative: members[0].clone(),
                members,
            });
        }
        classes.sort_by_key(|c| (c.representative.order(), c.representative.members.clone()));
        Ok(SubgroupLattice { classes })
    }

    /// Action of the group on the right cosets of `h`, as a homomorphism into
    /// the symmetric group of the cosets: `g` sends `Hx` to `Hxg^{-1}`.
    ///
    /// Acting through the inverse is what makes `g ↦ π(g)` a homomorphism
    /// under this crate's composition convention `(p ∘ q)(i) = p(q(i))`.
    pub fn coset_action(&self, h: &Subgroup) -> Result<CosetAction> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in self.element_ids() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = cosets.len();
            let mut coset: Vec<usize> = h.members.iter().map(|&m| self.mul(m, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                coset_of[y] = idx;
            }
            cosets.push(coset);
        }
        let degree = cosets.len();
        let perms = self
            .element_ids()
            .map(|g| {
                let g_inv = self.inv(g);
                let map = (0..degree)
                    .map(|i| coset_of[self.mul(cosets[i][0], g_inv)])
                    .collect();
                Permutation::from_mapping(map).expect("coset translation is a bijection")
            })
            .collect();
        Ok(CosetAction { cosets, perms })
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[usize]> = self.table.chunks(self.order).collect();
        let mut s = serializer.serialize_struct("FiniteGroup", 3)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("table", &rows)?;
        s.serialize_field("labels", &self.labels)?;
        s.end()
    }
}

/// Lexicographically sorted closure of a permutation set.
pub fn permutation_closure(generators: &[Permutation], degree: usize) -> Result<Vec<Permutation>> {
    let mut set: BTreeSet<Permutation> = [Permutation::identity(degree)].into();
    let mut queue: VecDeque<Permutation> = set.iter().cloned().collect();
    for g in generators {
        if set.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g)?;
            if set.len() >= MAX_GROUP_ORDER && !set.contains(&y) {
                return Err(Error::GroupTooLarge {
                    order: set.len() + 1,
                    max: MAX_GROUP_ORDER,
                });
            }
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// A subgroup, stored as its sorted member ids. All operations that need the
/// ambient group take it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps sorted member ids after validating closure in `group`.
    pub fn new(group: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup { members };
        if group.is_subgroup(&sub) {
            Ok(sub)
        } else {
            Err(Error::NotASubgroup)
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// All subgroups of a group, grouped by conjugacy, sorted by (order, members).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().flat_map(|c| c.members.iter())
    }

    pub fn class_of(&self, sub: &Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(sub))
    }

    /// Proper inclusions between classes, up to conjugacy: `(i, j)` is listed
    /// when the representative of class `i` is contained in some member of
    /// class `j`.
    pub fn class_inclusions(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (i, ci) in self.classes.iter().enumerate() {
            for (j, cj) in self.classes.iter().enumerate() {
                if ci.representative.order() >= cj.representative.order() {
                    continue;
                }
                let rep = &ci.representative;
                if cj
                    .members
                    .iter()
                    .any(|m| rep.members().iter().all(|&x| m.contains(x)))
                {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

/// Permutation action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    cosets: Vec<Vec<usize>>,
    perms: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn perm(&self, element: usize) -> &Permutation {
        &self.perms[element]
    }

    /// Elements acting trivially; equals the normal core of the subgroup.
    pub fn kernel(&self) -> Subgroup {
        let members = (0..self.perms.len())
            .filter(|&g| self.perms[g].is_identity())
            .collect();
        Subgroup { members }
    }

    pub fn is_transitive(&self) -> bool {
        orbit_of_zero(&self.perms).len() == self.degree()
    }
}

/// Orbit of the point 0 under a set of permutations (all of one degree).
pub fn orbit_of_zero(perms: &[Permutation]) -> Vec<usize> {
    let degree = match perms.first() {
        Some(p) => p.degree(),
        None => return Vec::new(),
    };
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut orbit = vec![0usize];
    while let Some(x) = queue.pop_front() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }
    orbit.sort_unstable();
    orbit
}

/// Exhaustive isomorphism search between two small groups. Returns the image
/// of each element of `a` under some isomorphism onto `b`, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut orders_a: Vec<usize> = a.element_ids().map(|x| a.element_order(x)).collect();
    let mut orders_b: Vec<usize> = b.element_ids().map(|x| b.element_order(x)).collect();
    orders_a.sort_unstable();
    orders_b.sort_unstable();
    if orders_a != orders_b {
        return None;
    }

    // Greedy generating sequence for `a`.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = a.trivial_subgroup();
    while span.order() < a.order() {
        let next = a
            .element_ids()
            .find(|&x| !span.contains(x))
            .expect("span is proper");
        gens.push(next);
        span = a
            .generated_subgroup(&gens)
            .expect("ids are valid by construction");
    }

    fn extend(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() < gens.len() {
            let g = gens[images.len()];
            let target_order = a.element_order(g);
            for candidate in b.element_ids() {
                if b.element_order(candidate) != target_order {
                    continue;
                }
                images.push(candidate);
                if let Some(iso) = extend(a, b, gens, images) {
                    return Some(iso);
                }
                images.pop();
            }
            return None;
        }
        // All generators assigned: propagate along words and verify.
        let mut map = vec![usize::MAX; a.order()];
        map[a.identity()] = b.identity();
        let mut queue = VecDeque::from([a.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&g, &im) in gens.iter().zip(images.iter()) {
                let xa = a.mul(x, g);
                let xb = b.mul(map[x], im);
                if map[xa] == usize::MAX {
                    map[xa] = xb;
                    queue.push_back(xa);
                } else if map[xa] != xb {
                    return None;
                }
            }
        }
        let mut hit = vec![false; b.order()];
        for &y in &map {
            if y == usize::MAX || hit[y] {
                return None;
            }
            hit[y] = true;
        }
        for x in a.element_ids() {
            for y in a.element_ids() {
                if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    extend(a, b, &gens, &mut Vec::new())
}
