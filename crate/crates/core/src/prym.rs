//! Prym-variety numerics for triple covers: dimension and induced
//! polarization type, the principally-polarized classification, polarization
//! pullback under cyclic isogeny, the location of the defining torsion point,
//! Weierstrass-point combinatorics, and the degree of the Prym map fiber.
//!
//! Abelian varieties never appear as such; everything is integer bookkeeping
//! (elementary-divisor chains, torsion counts, label combinatorics).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genera::{genus_triple_cover, RamificationProfile};

/// The type of a polarization: a nondecreasing chain of positive integers
/// with each entry dividing the next. The length is the dimension of the
/// polarized abelian variety.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PolarizationType {
    ds: Vec<u64>,
}

impl PolarizationType {
    pub fn new(mut ds: Vec<u64>) -> Result<Self> {
        ds.sort_unstable();
        if ds.first() == Some(&0) {
            return Err(Error::InvalidPolarizationType(
                "entries must be positive".into(),
            ));
        }
        for pair in ds.windows(2) {
            if !pair[1].is_multiple_of(pair[0]) {
                return Err(Error::InvalidPolarizationType(format!(
                    "{} does not divide {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(PolarizationType { ds })
    }

    pub fn principal(dimension: usize) -> Self {
        PolarizationType {
            ds: vec![1; dimension],
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.ds
    }

    pub fn dimension(&self) -> usize {
        self.ds.len()
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.ds.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Dimension of the Prym variety of a degree-3 cover:
/// `dim P(f) = 2 g_X - 2 + s/2 + t`.
pub fn prym_dimension(base_genus: usize, profile: &RamificationProfile) -> Result<usize> {
    let value =
        2 * base_genus as i64 - 2 + profile.simple() as i64 / 2 + profile.total() as i64;
    usize::try_from(value)
        .map_err(|_| Error::InconsistentProfile(format!("negative Prym dimension {value}")))
}

/// Polarization induced on the Prym variety of a non-cyclic triple cover:
/// `1` with multiplicity `g_X - 2 + s/2 + t` followed by `3` with
/// multiplicity `g_X`. For a rational base the Prym variety is the whole
/// Jacobian of the cover, principally polarized.
pub fn prym_type(base_genus: usize, profile: &RamificationProfile) -> Result<PolarizationType> {
    if base_genus == 0 {
        return Ok(PolarizationType::principal(genus_triple_cover(
            0, profile,
        )?));
    }
    let ones = base_genus as i64 - 2 + profile.simple() as i64 / 2 + profile.total() as i64;
    let ones = usize::try_from(ones).map_err(|_| {
        Error::InconsistentProfile(format!("negative multiplicity {ones} for entry 1"))
    })?;
    let mut ds = vec![1u64; ones];
    ds.extend(std::iter::repeat_n(3, base_genus));
    PolarizationType::new(ds)
}

/// A polarization is a multiple of a principal one exactly when all entries
/// are equal.
pub fn is_principal_multiple(t: &PolarizationType) -> bool {
    t.entries().windows(2).all(|pair| pair[0] == pair[1])
}

/// Verdict of the principally-polarized classification for non-cyclic triple
/// covers over a base of positive genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrincipalVerdict {
    #[serde(rename = "genus-2-etale")]
    Genus2Etale,
    #[serde(rename = "genus-1-(2,0)")]
    Genus1TwoSimple,
    #[serde(rename = "genus-1-(0,1)")]
    Genus1OneTotal,
    #[serde(rename = "not-principal")]
    NotPrincipal,
}

impl fmt::Display for PrincipalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PrincipalVerdict::Genus2Etale => "genus-2-etale",
            PrincipalVerdict::Genus1TwoSimple => "genus-1-(2,0)",
            PrincipalVerdict::Genus1OneTotal => "genus-1-(0,1)",
            PrincipalVerdict::NotPrincipal => "not-principal",
        };
        write!(f, "{name}")
    }
}

/// Classifies when the Prym variety is a principally polarized Prym variety,
/// by testing whether the induced type is a multiple of a principal one. The
/// named verdicts are the only principal cases that survive the scan.
pub fn classify_ppp(base_genus: usize, profile: &RamificationProfile) -> Result<PrincipalVerdict> {
    if base_genus == 0 {
        return Err(Error::InvalidArgument(
            "classification applies to bases of positive genus".into(),
        ));
    }
    let induced = prym_type(base_genus, profile)?;
    if !is_principal_multiple(&induced) {
        return Ok(PrincipalVerdict::NotPrincipal);
    }
    Ok(
        match (base_genus, profile.simple(), profile.total()) {
            (2, 0, 0) => PrincipalVerdict::Genus2Etale,
            (1, 2, 0) => PrincipalVerdict::Genus1TwoSimple,
            (1, 0, 1) => PrincipalVerdict::Genus1OneTotal,
            other => unreachable!("principal multiple outside the classified cases: {other:?}"),
        },
    )
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Type of the pullback of a polarization along a cyclic étale isogeny of
/// prime degree `p` defined by a torsion point `eta`: every entry is scaled
/// by `p` when `eta` lies outside the subvariety, all but the first when it
/// lies inside.
pub fn pullback_type(
    t: &PolarizationType,
    p: u64,
    eta_in_subvariety: bool,
) -> Result<PolarizationType> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if t.dimension() == 0 {
        return Err(Error::InvalidPolarizationType("empty type".into()));
    }
    let ds = t
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &d)| if eta_in_subvariety && i == 0 { d } else { p * d })
        .collect();
    // Re-sorting and re-checking the chain through the constructor reports
    // any input outside the cyclic-isogeny hypotheses.
    PolarizationType::new(ds)
}

/// Where the 3-torsion point defining the cyclic triple cover of the
/// discriminant curve sits relative to the discriminant's Prym variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EtaLocation {
    #[serde(rename = "in-P(g)")]
    InPrymG,
    #[serde(rename = "outside-P(g)")]
    NotInPrymG,
}

impl fmt::Display for EtaLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaLocation::InPrymG => write!(f, "η ∈ P(g)"),
            EtaLocation::NotInPrymG => write!(f, "η ∉ P(g)"),
        }
    }
}

/// Complement of a one-dimensional abelian subvariety of type `(e)` inside a
/// principally polarized ambient of the given dimension: the restricted type
/// is `(1, ..., 1, e)`. This is the only complement shape the inference chain
/// needs; anything else is refused.
pub fn complement_type_in_principal(
    ambient_dim: usize,
    sub: &PolarizationType,
) -> Result<PolarizationType> {
    if sub.dimension() != 1 || ambient_dim < 2 {
        return Err(Error::UnrecognizedType(format!(
            "complement lookup covers elliptic subvarieties in dimension >= 2, \
             got sub {sub} in dimension {ambient_dim}"
        )));
    }
    let mut ds = vec![1u64; ambient_dim - 2];
    ds.push(sub.entries()[0]);
    PolarizationType::new(ds)
}

/// Infers the location of the defining 3-torsion point from the observed
/// restriction of the closure-side principal polarization to the complement
/// surface.
///
/// For each hypothetical location the chain predicts that restriction: pull
/// the type `(2)` of the discriminant Prym back along the degree-3 isogeny,
/// halve it (the ambient principal polarization restricts to twice the Prym
/// one), and complete to the complement inside the 3-dimensional Prym of the
/// closure-to-cover map. The observed type picks the hypothesis.
pub fn infer_eta_location(observed_complement_type: &PolarizationType) -> Result<EtaLocation> {
    let discriminant_prym = PolarizationType::new(vec![2])?;
    for location in [EtaLocation::NotInPrymG, EtaLocation::InPrymG] {
        let pulled = pullback_type(
            &discriminant_prym,
            3,
            location == EtaLocation::InPrymG,
        )?;
        let halved: Vec<u64> = pulled
            .entries()
            .iter()
            .map(|&d| {
                debug_assert_eq!(d % 2, 0);
                d / 2
            })
            .collect();
        let predicted = complement_type_in_principal(3, &PolarizationType::new(halved)?)?;
        if predicted == *observed_complement_type {
            return Ok(location);
        }
    }
    Err(Error::UnrecognizedType(format!(
        "{observed_complement_type} matches neither predicted complement type"
    )))
}

/// The (unordered) splittings of six Weierstrass labels into two triples:
/// the fiber of the Prym map. Each partition is returned with the half
/// containing the least label first, in lexicographic order.
pub fn prym_map_fiber<T: Ord + Clone>(labels: &[T]) -> Result<Vec<(Vec<T>, Vec<T>)>> {
    let sorted: BTreeSet<&T> = labels.iter().collect();
    if labels.len() != 6 || sorted.len() != 6 {
        return Err(Error::WrongLabelCount {
            expected: 6,
            found: sorted.len(),
        });
    }
    let sorted: Vec<&T> = sorted.into_iter().collect();
    let mut partitions = Vec::new();
    // fixing the least label in the first half enumerates each unordered
    // splitting exactly once
    for i in 1..5 {
        for j in (i + 1)..6 {
            let first: Vec<T> = vec![
                sorted[0].clone(),
                sorted[i].clone(),
                sorted[j].clone(),
            ];
            let second: Vec<T> = (1..6)
                .filter(|k| *k != i && *k != j)
                .map(|k| sorted[k].clone())
                .collect();
            partitions.push((first, second));
        }
    }
    partitions.sort();
    Ok(partitions)
}

/// How the ten Weierstrass labels of a hyperelliptic triple cover of a
/// genus-2 curve sit over the six Weierstrass labels of the base: two fibers
/// of three and four singleton fibers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeierstrassIncidence {
    assignment: BTreeMap<String, String>,
}

impl WeierstrassIncidence {
    pub fn new(assignment: BTreeMap<String, String>) -> Result<Self> {
        if assignment.len() != 10 {
            return Err(Error::InvalidIncidence(format!(
                "expected 10 upstairs labels, found {}",
                assignment.len()
            )));
        }
        let incidence = WeierstrassIncidence { assignment };
        let mut sizes: Vec<usize> = incidence.fibers().values().map(|f| f.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if sizes != [3, 3, 1, 1, 1, 1] {
            return Err(Error::InvalidIncidence(format!(
                "fiber sizes {sizes:?}, expected (3,3,1,1,1,1)"
            )));
        }
        Ok(incidence)
    }

    /// The reference labeling: q1,q2,q3 over p1; q4,q5,q6 over p2; q7..q10
    /// alone over p3..p6.
    pub fn canonical() -> Self {
        let mut assignment = BTreeMap::new();
        for i in 1..=10usize {
            let downstairs = match i {
                1..=3 => 1,
                4..=6 => 2,
                _ => i - 4,
            };
            assignment.insert(format!("q{i}"), format!("p{downstairs}"));
        }
        WeierstrassIncidence::new(assignment).expect("reference pattern is valid")
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    /// Downstairs label -> sorted upstairs labels.
    pub fn fibers(&self) -> BTreeMap<String, Vec<String>> {
        let mut fibers: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (up, down) in &self.assignment {
            fibers.entry(down.clone()).or_default().push(up.clone());
        }
        fibers
    }

    /// Relabels both sides through the given maps (used by equivariance
    /// checks). Missing keys keep their names.
    pub fn relabeled(
        &self,
        upstairs: &BTreeMap<String, String>,
        downstairs: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let rename = |table: &BTreeMap<String, String>, name: &String| {
            table.get(name).unwrap_or(name).clone()
        };
        WeierstrassIncidence::new(
            self.assignment
                .iter()
                .map(|(up, down)| (rename(upstairs, up), rename(downstairs, down)))
                .collect(),
        )
    }
}

/// The six Weierstrass points of the Prym curve: all unordered pairs inside
/// each of the two triple fibers.
pub fn xi_weierstrass_points(incidence: &WeierstrassIncidence) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for fiber in incidence.fibers().values() {
        if fiber.len() != 3 {
            continue;
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                pairs.push((fiber[i].clone(), fiber[j].clone()));
            }
        }
    }
    pairs.sort();
    pairs
}

/// The labels where the Abel-Prym map collides: the four Weierstrass points
/// alone in their fibers, which share one image.
pub fn abel_prym_collisions(incidence: &WeierstrassIncidence) -> Vec<String> {
    let mut labels: Vec<String> = incidence
        .fibers()
        .values()
        .filter(|fiber| fiber.len() == 1)
        .map(|fiber| fiber[0].clone())
        .collect();
    labels.sort();
    labels
}

/// The two independent factors counting Galois closures over a fixed genus-2
/// curve: connected étale double covers of the base, and order-3 subgroups of
/// the 3-torsion of an elliptic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCoverFactorization {
    pub double_covers: u64,
    pub triple_covers: u64,
}

impl GaloisCoverFactorization {
    pub fn total(&self) -> u64 {
        self.double_covers * self.triple_covers
    }
}

/// Counts the Galois coverings by factoring through the discriminant: the
/// nontrivial 2-torsion of a genus-2 Jacobian times the order-3 subgroups of
/// an elliptic curve's 3-torsion.
pub fn count_galois_covers_via_factorization() -> GaloisCoverFactorization {
    let base_genus = 2u32;
    // J X [2] is (Z/2)^{2g}; remove the origin.
    let double_covers = 2u64.pow(2 * base_genus) - 1;
    // E[3] is (Z/3)^2; each order-3 subgroup has two generators.
    let triple_covers = (3u64.pow(2) - 1) / 2;
    GaloisCoverFactorization {
        double_covers,
        triple_covers,
    }
}

/// Dimension of the Prym variety of the pair of maps out of the closure,
/// from the tower genera: `(g_Z - g_Y) - (g_D - g_X)`.
pub fn pair_prym_dimension(g_z: usize, g_y: usize, g_d: usize, g_x: usize) -> Result<usize> {
    let value = (g_z as i64 - g_y as i64) - (g_d as i64 - g_x as i64);
    usize::try_from(value)
        .map_err(|_| Error::InconsistentProfile(format!("negative dimension {value}")))
}
