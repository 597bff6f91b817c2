//! Coverings of curves presented by monodromy: image group, Galois test,
//! discriminant double cover, fiber products, and the Galois closure via the
//! regular action.
//!
//! A covering of a genus-g base, branched over an ordered list of points, is
//! the data of permutations (A1, B1, ..., Ag, Bg) for the handles and one
//! permutation per branch point, subject to the global relation
//! `Π [A_i, B_i] · Π branch_j = 1`. The covering is connected exactly when
//! these permutations act transitively on the fiber.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{orbit_of_zero, FiniteGroup, Permutation, Subgroup};

/// A covering given by its monodromy representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoveringRepData")]
pub struct CoveringRep {
    #[serde(rename = "genus")]
    base_genus: usize,
    degree: usize,
    handles: Vec<Permutation>,
    branches: Vec<Permutation>,
}

/// Wire form of [`CoveringRep`]; deserialization re-validates the relation.
#[derive(Deserialize)]
struct CoveringRepData {
    genus: usize,
    degree: usize,
    handles: Vec<Permutation>,
    branches: Vec<Permutation>,
}

impl TryFrom<CoveringRepData> for CoveringRep {
    type Error = Error;

    fn try_from(data: CoveringRepData) -> Result<Self> {
        CoveringRep::new(data.genus, data.degree, data.handles, data.branches)
    }
}

impl CoveringRep {
    pub fn new(
        base_genus: usize,
        degree: usize,
        handles: Vec<Permutation>,
        branches: Vec<Permutation>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if handles.len() != 2 * base_genus {
            return Err(Error::InvalidArgument(format!(
                "genus {base_genus} needs {} handle permutations, got {}",
                2 * base_genus,
                handles.len()
            )));
        }
        for p in handles.iter().chain(branches.iter()) {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: p.degree(),
                });
            }
        }
        let rep = CoveringRep {
            base_genus,
            degree,
            handles,
            branches,
        };
        if !rep.global_relation_holds() {
            return Err(Error::RelationViolated);
        }
        Ok(rep)
    }

    /// An unbranched degree-1 covering of a genus-g base.
    pub fn trivial(base_genus: usize) -> Self {
        CoveringRep {
            base_genus,
            degree: 1,
            handles: vec![Permutation::identity(1); 2 * base_genus],
            branches: Vec::new(),
        }
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn handles(&self) -> &[Permutation] {
        &self.handles
    }

    pub fn branches(&self) -> &[Permutation] {
        &self.branches
    }

    pub fn generators(&self) -> impl Iterator<Item = &Permutation> {
        self.handles.iter().chain(self.branches.iter())
    }

    fn global_relation_holds(&self) -> bool {
        let id = Permutation::identity(self.degree);
        let commutators = self.handles.chunks(2).fold(id.clone(), |acc, pair| {
            let comm = pair[0]
                .compose(&pair[1])
                .and_then(|ab| ab.compose(&pair[0].inverse()))
                .and_then(|ab_ai| ab_ai.compose(&pair[1].inverse()))
                .expect("equal degrees");
            acc.compose(&comm).expect("equal degrees")
        });
        let word = self
            .branches
            .iter()
            .fold(commutators, |acc, b| acc.compose(b).expect("equal degrees"));
        word == id
    }

    /// Connectedness of the total space: the generators act transitively.
    pub fn is_transitive(&self) -> bool {
        let gens: Vec<Permutation> = self.generators().cloned().collect();
        if gens.is_empty() {
            return self.degree == 1;
        }
        orbit_of_zero(&gens).len() == self.degree
    }

    /// Orbits of the monodromy on the fiber: the connected components of the
    /// total space, sorted by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if assigned[start] {
                continue;
            }
            let mut orbit = vec![start];
            assigned[start] = true;
            let mut cursor = 0;
            while cursor < orbit.len() {
                let x = orbit[cursor];
                for p in self.generators() {
                    let y = p.apply(x);
                    if !assigned[y] {
                        assigned[y] = true;
                        orbit.push(y);
                    }
                }
                cursor += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// The connected sub-covering supported on one orbit, with the orbit's
    /// points relabeled `0..orbit_size` in increasing order.
    pub fn restrict_to_orbit(&self, index: usize) -> Result<CoveringRep> {
        let orbits = self.orbits();
        let orbit = orbits.get(index).ok_or(Error::NoSuchOrbit {
            index,
            count: orbits.len(),
        })?;
        let position: BTreeMap<usize, usize> =
            orbit.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let restrict = |p: &Permutation| {
            let map = orbit.iter().map(|&x| position[&p.apply(x)]).collect();
            Permutation::from_mapping(map).expect("orbits are invariant")
        };
        CoveringRep::new(
            self.base_genus,
            orbit.len(),
            self.handles.iter().map(restrict).collect(),
            self.branches.iter().map(restrict).collect(),
        )
    }
}

/// The monodromy group: closure of all listed permutations, with its
/// permutation realization attached. Refused when the closure outgrows the
/// supported group-order range.
pub fn monodromy_group(rep: &CoveringRep) -> Result<FiniteGroup> {
    let mut gens: Vec<Permutation> = rep.generators().cloned().collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(rep.degree()));
    }
    FiniteGroup::from_permutations(&gens)
}

/// A connected covering is Galois exactly when its degree equals the order of
/// its monodromy group. Refuses reducible (intransitive) input.
pub fn is_galois(rep: &CoveringRep) -> Result<bool> {
    if !rep.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(monodromy_group(rep)?.order() == rep.degree())
}

/// For connected degree-3 coverings: cyclic exactly when the image lies in
/// the alternating group, i.e. every generator is even.
pub fn is_cyclic_triple_cover(rep: &CoveringRep) -> Result<bool> {
    if rep.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: rep.degree(),
        });
    }
    if !rep.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(rep.generators().all(|p| p.sign() == 1))
}

fn sign_perm(p: &Permutation) -> Permutation {
    if p.sign() == 1 {
        Permutation::identity(2)
    } else {
        Permutation::from_mapping(vec![1, 0]).expect("swap")
    }
}

/// The degree-2 covering attached to the sign of the monodromy: the
/// discriminant double cover. Connected exactly when some generator is odd.
pub fn discriminant_rep(rep: &CoveringRep) -> CoveringRep {
    CoveringRep::new(
        rep.base_genus(),
        2,
        rep.handles().iter().map(sign_perm).collect(),
        rep.branches().iter().map(sign_perm).collect(),
    )
    .expect("signs multiply, so the relation is preserved")
}

pub fn discriminant_connected(rep: &CoveringRep) -> bool {
    rep.generators().any(|p| p.sign() == -1)
}

/// Generator-wise product action on ordered pairs of fiber points; the pair
/// `(i, j)` is encoded as `i * deg(right) + j`.
///
/// Both coverings must live over the same base with the same ordered branch
/// list; only the genus and the branch count are checkable here.
pub fn fiber_product_rep(left: &CoveringRep, right: &CoveringRep) -> Result<CoveringRep> {
    if left.base_genus() != right.base_genus() || left.branches().len() != right.branches().len() {
        return Err(Error::BaseMismatch);
    }
    let pair = |p: &Permutation, q: &Permutation| {
        let d2 = q.degree();
        let map = (0..p.degree() * d2)
            .map(|idx| p.apply(idx / d2) * d2 + q.apply(idx % d2))
            .collect();
        Permutation::from_mapping(map).expect("product of bijections")
    };
    CoveringRep::new(
        left.base_genus(),
        left.degree() * right.degree(),
        left.handles()
            .iter()
            .zip(right.handles())
            .map(|(p, q)| pair(p, q))
            .collect(),
        left.branches()
            .iter()
            .zip(right.branches())
            .map(|(p, q)| pair(p, q))
            .collect(),
    )
}

/// The Galois closure of a connected covering: the abstract monodromy group
/// together with the loop data as element ids, realized by its regular action.
#[derive(Clone, Debug)]
pub struct GaloisClosureRep {
    group: FiniteGroup,
    base_genus: usize,
    handles: Vec<usize>,
    branches: Vec<usize>,
}

impl GaloisClosureRep {
    /// Validates the global relation in the group and that the listed
    /// elements generate it (so the closure covering is connected).
    pub fn new(
        group: FiniteGroup,
        base_genus: usize,
        handles: Vec<usize>,
        branches: Vec<usize>,
    ) -> Result<Self> {
        if handles.len() != 2 * base_genus {
            return Err(Error::InvalidArgument(format!(
                "genus {base_genus} needs {} handle elements, got {}",
                2 * base_genus,
                handles.len()
            )));
        }
        for &x in handles.iter().chain(branches.iter()) {
            if x >= group.order() {
                return Err(Error::NotInGroup {
                    element: x,
                    order: group.order(),
                });
            }
        }
        let commutators = handles
            .chunks(2)
            .fold(group.identity(), |acc, pair| {
                group.mul(acc, group.commutator(pair[0], pair[1]))
            });
        let word = branches
            .iter()
            .fold(commutators, |acc, &b| group.mul(acc, b));
        if word != group.identity() {
            return Err(Error::RelationViolated);
        }
        let gens: Vec<usize> = handles.iter().chain(branches.iter()).copied().collect();
        if group.generated_subgroup(&gens)?.order() != group.order() {
            return Err(Error::NotTransitive);
        }
        Ok(GaloisClosureRep {
            group,
            base_genus,
            handles,
            branches,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn handles(&self) -> &[usize] {
        &self.handles
    }

    pub fn branches(&self) -> &[usize] {
        &self.branches
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    /// The closure as a covering: the regular action of the group, i.e. the
    /// coset action on the trivial subgroup.
    pub fn regular_rep(&self) -> CoveringRep {
        self.coset_rep(&self.group.trivial_subgroup())
            .expect("the trivial subgroup is a subgroup")
    }

    /// The intermediate covering obtained by acting on the cosets of `h`.
    pub fn coset_rep(&self, h: &Subgroup) -> Result<CoveringRep> {
        let action = self.group.coset_action(h)?;
        CoveringRep::new(
            self.base_genus,
            action.degree(),
            self.handles.iter().map(|&x| action.perm(x).clone()).collect(),
            self.branches
                .iter()
                .map(|&x| action.perm(x).clone())
                .collect(),
        )
    }
}

/// Galois closure of a connected covering, via the regular action of its
/// monodromy group.
pub fn galois_closure(rep: &CoveringRep) -> Result<GaloisClosureRep> {
    if !rep.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let group = monodromy_group(rep)?;
    let id_of = |p: &Permutation| {
        group
            .element_id_of_perm(p)
            .expect("generators lie in their closure")
    };
    GaloisClosureRep::new(
        group.clone(),
        rep.base_genus(),
        rep.handles().iter().map(id_of).collect(),
        rep.branches().iter().map(id_of).collect(),
    )
}

/// Decides whether the second representation factors via the first, i.e.
/// whether `ρ_right = α ∘ ρ_left` for some map `α` of image groups.
///
/// Returns the witness `α` as a table indexed by the element ids of
/// `monodromy_group(left)`, with values in the element ids of
/// `monodromy_group(right)`; `None` when no factorization exists. The two
/// representations must share a base. Equivalently, the factorization exists
/// exactly when the joint image in the product has the same order as the left
/// image, which is the content of the closure-image comparison.
pub fn factorization_witness(
    left: &CoveringRep,
    right: &CoveringRep,
) -> Result<Option<Vec<usize>>> {
    if left.base_genus() != right.base_genus() || left.branches().len() != right.branches().len() {
        return Err(Error::BaseMismatch);
    }
    let gen_pairs: Vec<(Permutation, Permutation)> = left
        .generators()
        .cloned()
        .zip(right.generators().cloned())
        .collect();
    // Closure of the joint image inside the product of symmetric groups.
    let mut pairs: BTreeMap<Permutation, Permutation> = BTreeMap::new();
    pairs.insert(
        Permutation::identity(left.degree()),
        Permutation::identity(right.degree()),
    );
    let mut queue: Vec<Permutation> = vec![Permutation::identity(left.degree())];
    let mut consistent = true;
    'closure: while let Some(a) = queue.pop() {
        let b = pairs[&a].clone();
        for (ga, gb) in &gen_pairs {
            let na = a.compose(ga).expect("equal degrees");
            let nb = b.compose(gb).expect("equal degrees");
            match pairs.get(&na) {
                None => {
                    pairs.insert(na.clone(), nb);
                    queue.push(na);
                }
                Some(existing) => {
                    if *existing != nb {
                        consistent = false;
                        break 'closure;
                    }
                }
            }
        }
    }
    if !consistent {
        return Ok(None);
    }
    let image_left = monodromy_group(left)?;
    let image_right = monodromy_group(right)?;
    let witness = (0..image_left.order())
        .map(|a| {
            let pa = image_left.perm(a).expect("built from permutations");
            let pb = &pairs[pa];
            image_right
                .element_id_of_perm(pb)
                .expect("second components lie in the right image")
        })
        .collect();
    Ok(Some(witness))
}
