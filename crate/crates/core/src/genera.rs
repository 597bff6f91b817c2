//! Genus computations: closed-form Hurwitz formulas for triple covers,
//! Euler-characteristic Riemann-Hurwitz from monodromy, quotient-curve genera
//! via coset actions, Accola's partition identity, and the full dihedral
//! tower of quotients over the projective line.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::covers::{CoveringRep, GaloisClosureRep};
use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, Permutation, Subgroup};

/// Ramification data of a degree-3 covering: `simple` counts order-2
/// ramification points (transposition monodromy), `total` counts order-3 ones
/// (3-cycle monodromy). The simple count must be even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    simple: usize,
    total: usize,
}

impl RamificationProfile {
    pub fn new(simple: usize, total: usize) -> Result<Self> {
        if !simple.is_multiple_of(2) {
            return Err(Error::InconsistentProfile(format!(
                "odd number of simple ramification points: {simple}"
            )));
        }
        Ok(RamificationProfile { simple, total })
    }

    pub fn etale() -> Self {
        RamificationProfile { simple: 0, total: 0 }
    }

    pub fn simple(&self) -> usize {
        self.simple
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

fn nonnegative_genus(value: i64) -> Result<usize> {
    usize::try_from(value)
        .map_err(|_| Error::InconsistentProfile(format!("formula yields genus {value}")))
}

/// Genus of the total space of a degree-3 cover:
/// `g_Y = 3 g_X - 2 + s/2 + t`.
pub fn genus_triple_cover(base_genus: usize, profile: &RamificationProfile) -> Result<usize> {
    let g = base_genus as i64;
    let (s, t) = (profile.simple as i64, profile.total as i64);
    nonnegative_genus(3 * g - 2 + s / 2 + t)
}

/// Genus of the discriminant double cover of a non-cyclic triple cover:
/// `g_D = 2 g_X - 1 + s/2`.
pub fn genus_discriminant(base_genus: usize, profile: &RamificationProfile) -> Result<usize> {
    let g = base_genus as i64;
    let s = profile.simple as i64;
    nonnegative_genus(2 * g - 1 + s / 2)
}

/// Genus of the Galois closure of a non-cyclic triple cover:
/// `g_Z = 6 g_X - 5 + (3/2) s + 2 t`.
pub fn genus_closure(base_genus: usize, profile: &RamificationProfile) -> Result<usize> {
    let g = base_genus as i64;
    let (s, t) = (profile.simple as i64, profile.total as i64);
    nonnegative_genus(6 * g - 5 + 3 * s / 2 + 2 * t)
}

/// Riemann-Hurwitz from the monodromy of a connected covering:
/// `2 - 2 g_Y = d (2 - 2 g_X) - Σ_b (d - #cycles(σ_b))`.
pub fn genus_from_monodromy(rep: &CoveringRep) -> Result<usize> {
    if !rep.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let d = rep.degree() as i64;
    let base = rep.base_genus() as i64;
    let defect: i64 = rep
        .branches()
        .iter()
        .map(|p| d - p.cycle_count() as i64)
        .sum();
    let doubled = d * (2 * base - 2) + defect + 2;
    if doubled % 2 != 0 {
        return Err(Error::NonIntegralGenus);
    }
    nonnegative_genus(doubled / 2)
}

/// Reads the ramification profile off a degree-3 covering: transposition
/// branch entries are simple points, 3-cycles are total points, identity
/// entries are spurious and ignored.
pub fn ramification_profile(rep: &CoveringRep) -> Result<RamificationProfile> {
    if rep.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: rep.degree(),
        });
    }
    let mut simple = 0;
    let mut total = 0;
    for b in rep.branches() {
        match b.cycle_type().as_slice() {
            [1, 1, 1] => {}
            [2, 1] => simple += 1,
            [3] => total += 1,
            other => {
                return Err(Error::InconsistentProfile(format!(
                    "unexpected cycle type {other:?} in degree 3"
                )))
            }
        }
    }
    RamificationProfile::new(simple, total)
}

/// Genus of the quotient of a Galois covering by a subgroup of its group,
/// computed by pushing the monodromy through the coset action.
pub fn quotient_genus(closure: &GaloisClosureRep, subgroup: &Subgroup) -> Result<usize> {
    genus_from_monodromy(&closure.coset_rep(subgroup)?)
}

/// The nine curves of the dihedral tower: the Galois total space `Z`, its
/// labeled quotients, and the base line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TowerCurve {
    Z,
    Y,
    D,
    B,
    A,
    E,
    C,
    X,
    P1,
}

impl TowerCurve {
    pub const ALL: [TowerCurve; 9] = [
        TowerCurve::Z,
        TowerCurve::Y,
        TowerCurve::D,
        TowerCurve::B,
        TowerCurve::A,
        TowerCurve::E,
        TowerCurve::C,
        TowerCurve::X,
        TowerCurve::P1,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TowerCurve::Z => "Z",
            TowerCurve::Y => "Y",
            TowerCurve::D => "D",
            TowerCurve::B => "B",
            TowerCurve::A => "A",
            TowerCurve::E => "E",
            TowerCurve::C => "C",
            TowerCurve::X => "X",
            TowerCurve::P1 => "P1",
        }
    }

    /// Generators of the defining subgroup inside `dihedral(6)` element ids:
    /// `k` is ψ^k and `6 + k` is ψ^k τ.
    fn subgroup_generators(self) -> &'static [usize] {
        match self {
            TowerCurve::Z => &[],
            TowerCurve::Y => &[6],      // ⟨τ⟩
            TowerCurve::D => &[2],      // ⟨ψ^2⟩
            TowerCurve::B => &[9],      // ⟨ψ^3τ⟩
            TowerCurve::A => &[3],      // ⟨ψ^3⟩
            TowerCurve::E => &[1],      // ⟨ψ⟩
            TowerCurve::C => &[3, 6],   // ⟨ψ^3, τ⟩
            TowerCurve::X => &[2, 6],   // ⟨ψ^2, τ⟩
            TowerCurve::P1 => &[1, 6],  // the full group
        }
    }

    pub fn subgroup(self, d6: &FiniteGroup) -> Subgroup {
        d6.generated_subgroup(self.subgroup_generators())
            .expect("fixed generator ids are valid in D6")
    }
}

/// Genera of the tower curves, keyed by their labels in the serialized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TowerGenera {
    #[serde(rename = "Z")]
    pub z: usize,
    #[serde(rename = "Y")]
    pub y: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "C")]
    pub c: usize,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "P1")]
    pub p1: usize,
}

impl TowerGenera {
    pub fn get(&self, curve: TowerCurve) -> usize {
        match curve {
            TowerCurve::Z => self.z,
            TowerCurve::Y => self.y,
            TowerCurve::D => self.d,
            TowerCurve::B => self.b,
            TowerCurve::A => self.a,
            TowerCurve::E => self.e,
            TowerCurve::C => self.c,
            TowerCurve::X => self.x,
            TowerCurve::P1 => self.p1,
        }
    }
}

/// One valid branch tuple for the dihedral tower, with its census of central
/// involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerTuple {
    pub elements: [usize; 6],
    pub central_involutions: usize,
}

/// The tower data computed from one valid tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub tuple: Vec<usize>,
    pub tuple_labels: Vec<String>,
    pub genera: TowerGenera,
}

fn dihedral_six() -> FiniteGroup {
    FiniteGroup::dihedral(6).expect("order 12 is supported")
}

struct TowerSearchContext {
    d6: FiniteGroup,
    involutions: Vec<usize>,
    central: Vec<usize>,
    x_perms: Vec<Permutation>, // coset action of ⟨ψ^2, τ⟩, indexed by element id
    generates: Vec<bool>,      // indexed by bitmask over `involutions`
}

impl TowerSearchContext {
    fn new() -> Self {
        let d6 = dihedral_six();
        let involutions = d6.involutions();
        let center = d6.center();
        let central: Vec<usize> = involutions
            .iter()
            .copied()
            .filter(|i| center.contains(i))
            .collect();
        let x_subgroup = TowerCurve::X.subgroup(&d6);
        let x_action = d6.coset_action(&x_subgroup).expect("X subgroup is valid");
        let x_perms = d6
            .element_ids()
            .map(|g| x_action.perm(g).clone())
            .collect();
        let generates = (0u32..(1 << involutions.len()))
            .map(|mask| {
                let gens: Vec<usize> = involutions
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask & (1 << bit) != 0)
                    .map(|(_, &id)| id)
                    .collect();
                d6.generated_subgroup(&gens)
                    .expect("involutions are valid ids")
                    .order()
                    == d6.order()
            })
            .collect();
        TowerSearchContext {
            d6,
            involutions,
            central,
            x_perms,
            generates,
        }
    }

    fn check(&self, index: usize) -> Option<TowerTuple> {
        let k = self.involutions.len();
        let mut elements = [0usize; 6];
        let mut mask = 0u32;
        let mut rem = index;
        for slot in (0..6).rev() {
            let choice = rem % k;
            rem /= k;
            elements[slot] = self.involutions[choice];
            mask |= 1 << choice;
        }
        if self.d6.product(elements) != self.d6.identity() {
            return None;
        }
        if !self.generates[mask as usize] {
            return None;
        }
        // The would-be base curve: genus of the quotient by ⟨ψ^2, τ⟩ must be 2.
        let branches: Vec<Permutation> = elements
            .iter()
            .map(|&e| self.x_perms[e].clone())
            .collect();
        let x_rep = CoveringRep::new(0, 2, vec![], branches).expect("pushed relation holds");
        if genus_from_monodromy(&x_rep) != Ok(2) {
            return None;
        }
        let central_involutions = elements
            .iter()
            .filter(|e| self.central.contains(e))
            .count();
        Some(TowerTuple {
            elements,
            central_involutions,
        })
    }
}

/// Exhaustive search for branch tuples realizing the dihedral tower: all
/// 6-tuples of involutions of `dihedral(6)` with product one, generating the
/// whole group, whose quotient by ⟨ψ^2, τ⟩ has genus 2. Results come in
/// lexicographic order of the element-id tuples.
pub fn find_tower_monodromy() -> Vec<TowerTuple> {
    let ctx = TowerSearchContext::new();
    let total = ctx.involutions.len().pow(6);
    #[cfg(feature = "parallel")]
    {
        (0..total)
            .into_par_iter()
            .filter_map(|index| ctx.check(index))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).filter_map(|index| ctx.check(index)).collect()
    }
}

/// Sequential reference path for [`find_tower_monodromy`].
pub fn find_tower_monodromy_seq() -> Vec<TowerTuple> {
    let ctx = TowerSearchContext::new();
    let total = ctx.involutions.len().pow(6);
    (0..total).filter_map(|index| ctx.check(index)).collect()
}

/// Collapses tower tuples to representatives of their orbits under
/// simultaneous conjugation, keeping the lexicographically least member of
/// each orbit. Reorderings of the branch points are left alone.
pub fn distinct_tuples_up_to_conjugacy(tuples: &[TowerTuple]) -> Vec<TowerTuple> {
    let d6 = dihedral_six();
    let mut representatives: Vec<TowerTuple> = Vec::new();
    let mut seen: std::collections::BTreeSet<[usize; 6]> = std::collections::BTreeSet::new();
    for tuple in tuples {
        if seen.contains(&tuple.elements) {
            continue;
        }
        let mut orbit: Vec<[usize; 6]> = d6
            .element_ids()
            .map(|g| {
                let mut moved = [0usize; 6];
                for (slot, &e) in tuple.elements.iter().enumerate() {
                    moved[slot] = d6.conjugate(g, e);
                }
                moved
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        let representative = orbit[0];
        seen.extend(orbit);
        representatives.push(TowerTuple {
            elements: representative,
            central_involutions: tuple.central_involutions,
        });
    }
    representatives.sort_by_key(|t| t.elements);
    representatives
}

/// The Galois covering of the line determined by one tower tuple.
pub fn tower_closure(tuple: &TowerTuple) -> Result<GaloisClosureRep> {
    GaloisClosureRep::new(dihedral_six(), 0, Vec::new(), tuple.elements.to_vec())
}

/// Computes all nine quotient genera of the tower from one tuple.
pub fn tower_report(tuple: &TowerTuple) -> Result<TowerReport> {
    let d6 = dihedral_six();
    let closure = tower_closure(tuple)?;
    let genus_of = |curve: TowerCurve| quotient_genus(&closure, &curve.subgroup(&d6));
    let genera = TowerGenera {
        z: genus_of(TowerCurve::Z)?,
        y: genus_of(TowerCurve::Y)?,
        d: genus_of(TowerCurve::D)?,
        b: genus_of(TowerCurve::B)?,
        a: genus_of(TowerCurve::A)?,
        e: genus_of(TowerCurve::E)?,
        c: genus_of(TowerCurve::C)?,
        x: genus_of(TowerCurve::X)?,
        p1: genus_of(TowerCurve::P1)?,
    };
    Ok(TowerReport {
        tuple: tuple.elements.to_vec(),
        tuple_labels: tuple.elements.iter().map(|&e| d6.label(e)).collect(),
        genera,
    })
}

/// Report for the canonical (lexicographically first) tower tuple.
pub fn canonical_tower_report() -> Result<TowerReport> {
    let tuples = find_tower_monodromy();
    let first = tuples
        .first()
        .ok_or_else(|| Error::InvalidArgument("tower search found no tuple".into()))?;
    tower_report(first)
}

/// Residual of Accola's identity `(s-1) p + n_0 p_0 = Σ n_i p_i` for a group
/// of order `n_0` acting with quotient genus `p_0` on a curve of genus `p`,
/// partitioned into `s` subgroups of orders `n_i` with quotient genera `p_i`.
/// Zero means the identity holds.
pub fn accola_residual(
    genus: usize,
    group_order: usize,
    group_quotient_genus: usize,
    parts: &[(usize, usize)],
) -> Result<i64> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "a partition needs at least one part".into(),
        ));
    }
    let s = parts.len() as i64;
    let lhs = (s - 1) * genus as i64 + (group_order as i64) * (group_quotient_genus as i64);
    let rhs: i64 = parts.iter().map(|&(n, p)| n as i64 * p as i64).sum();
    Ok(lhs - rhs)
}

/// Solves Accola's identity for the quotient genus `p_0` of the whole group.
pub fn accola_solve_quotient_genus(
    genus: usize,
    group_order: usize,
    parts: &[(usize, usize)],
) -> Result<usize> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "a partition needs at least one part".into(),
        ));
    }
    let s = parts.len() as i64;
    let rhs: i64 = parts.iter().map(|&(n, p)| n as i64 * p as i64).sum();
    let numerator = rhs - (s - 1) * genus as i64;
    if numerator % group_order as i64 != 0 {
        return Err(Error::InvalidArgument(format!(
            "no integral solution: {numerator} is not divisible by {group_order}"
        )));
    }
    nonnegative_genus(numerator / group_order as i64)
}

/// Solves Accola's identity for the genus of the part at `solve_for`; the
/// genus recorded there is ignored.
pub fn accola_solve_part_genus(
    genus: usize,
    group_order: usize,
    group_quotient_genus: usize,
    parts: &[(usize, usize)],
    solve_for: usize,
) -> Result<usize> {
    if solve_for >= parts.len() {
        return Err(Error::InvalidArgument(format!(
            "solve index {solve_for} out of range for {} parts",
            parts.len()
        )));
    }
    let s = parts.len() as i64;
    let lhs = (s - 1) * genus as i64 + (group_order as i64) * (group_quotient_genus as i64);
    let known: i64 = parts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != solve_for)
        .map(|(_, &(n, p))| n as i64 * p as i64)
        .sum();
    let n = parts[solve_for].0 as i64;
    let numerator = lhs - known;
    if numerator % n != 0 {
        return Err(Error::InvalidArgument(format!(
            "no integral solution: {numerator} is not divisible by {n}"
        )));
    }
    nonnegative_genus(numerator / n)
}

/// A family of subgroups partitions the group when their union covers it and
/// all pairwise intersections are trivial.
pub fn verify_partition(group: &FiniteGroup, parts: &[Subgroup]) -> bool {
    verify_partition_within(group, &group.full_subgroup(), parts)
}

/// Partition check for a subgroup `whole` of `group`: the parts must cover
/// `whole`, stay inside it, and share only the identity.
pub fn verify_partition_within(
    group: &FiniteGroup,
    whole: &Subgroup,
    parts: &[Subgroup],
) -> bool {
    let mut covered = vec![false; group.order()];
    covered[group.identity()] = true;
    for part in parts {
        for &m in part.members() {
            if m == group.identity() {
                continue;
            }
            if covered[m] || !whole.contains(m) {
                return false; // shared with an earlier part, or outside
            }
            covered[m] = true;
        }
    }
    whole.members().iter().all(|&m| covered[m])
}

/// The quotient edges of the tower diagram: source curve, target curve, and
/// the degree of the map between them.
pub fn tower_edges() -> Vec<(TowerCurve, TowerCurve, usize)> {
    use TowerCurve::*;
    let d6 = dihedral_six();
    let degree =
        |from: TowerCurve, to: TowerCurve| to.subgroup(&d6).order() / from.subgroup(&d6).order();
    [
        (Z, Y),
        (Z, B),
        (Z, D),
        (Z, A),
        (Y, X),
        (Y, C),
        (B, C),
        (A, C),
        (A, E),
        (D, X),
        (D, E),
        (C, P1),
        (X, P1),
        (E, P1),
    ]
    .into_iter()
    .map(|(from, to)| (from, to, degree(from, to)))
    .collect()
}

/// Graphviz rendering of the tower: nine vertices labeled "name (genus g)",
/// edges labeled by covering degree.
pub fn tower_dot(report: &TowerReport) -> String {
    let mut out = String::from("digraph tower {\n");
    for curve in TowerCurve::ALL {
        out.push_str(&format!(
            "    {} [label=\"{} (genus {})\"];\n",
            curve.label(),
            curve.label(),
            report.genera.get(curve)
        ));
    }
    for (from, to, degree) in tower_edges() {
        out.push_str(&format!(
            "    {} -> {} [label=\"{}\"];\n",
            from.label(),
            to.label(),
            degree
        ));
    }
    out.push_str("}\n");
    out
}
