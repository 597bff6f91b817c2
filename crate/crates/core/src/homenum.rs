//! Exhaustive enumeration of homomorphisms from the fundamental group of a
//! closed genus-g surface into a finite group.
//!
//! A homomorphism is a tuple of images (A1, B1, ..., Ag, Bg) of the standard
//! generators subject to the single relation `Π [A_i, B_i] = 1`. Enumeration
//! is plain exhaustion over all `|G|^(2g)` tuples with the relation checked
//! last; the scan is partitioned over disjoint index ranges under the
//! `parallel` feature and always returned in lexicographic order.

use std::collections::{BTreeMap, BTreeSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::FiniteGroup;

/// Refuse exhaustive scans beyond this many tuples.
pub const MAX_ENUMERATION_TUPLES: u128 = 100_000_000;

/// Images (A1, B1, ..., Ag, Bg) of the surface-group generators in a target
/// group, with the defining relation `Π [A_i, B_i] = 1` already verified.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SurfaceHom {
    images: Vec<usize>,
}

impl SurfaceHom {
    pub fn new(group: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(
                "images must come in (A_i, B_i) pairs".into(),
            ));
        }
        for &x in &images {
            if x >= group.order() {
                return Err(Error::NotInGroup {
                    element: x,
                    order: group.order(),
                });
            }
        }
        if !surface_relation_holds(group, &images) {
            return Err(Error::RelationViolated);
        }
        Ok(SurfaceHom { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }
}

/// The commutator word `[A_1, B_1] ··· [A_g, B_g]` evaluates to the identity.
pub fn surface_relation_holds(group: &FiniteGroup, images: &[usize]) -> bool {
    let product = images
        .chunks(2)
        .fold(group.identity(), |acc, pair| {
            group.mul(acc, group.commutator(pair[0], pair[1]))
        });
    product == group.identity()
}

/// Digits of `index` base `order`, most significant first, so ascending
/// indices enumerate tuples in lexicographic order.
fn decode_tuple(mut index: usize, order: usize, len: usize) -> Vec<usize> {
    let mut tuple = vec![0; len];
    for slot in (0..len).rev() {
        tuple[slot] = index % order;
        index /= order;
    }
    tuple
}

fn check_guard(group: &FiniteGroup, genus: usize) -> Result<usize> {
    let exponent = u32::try_from(2 * genus as u128).unwrap_or(u32::MAX);
    // saturating: anything that overflows u128 is far beyond the guard anyway
    let tuples = (group.order() as u128)
        .checked_pow(exponent)
        .unwrap_or(u128::MAX);
    if tuples > MAX_ENUMERATION_TUPLES {
        return Err(Error::EnumerationTooLarge {
            tuples,
            max: MAX_ENUMERATION_TUPLES,
        });
    }
    Ok(tuples as usize)
}

/// All homomorphisms of the genus-g surface group into `group`, in
/// lexicographic order of their image tuples.
pub fn enumerate_homs(group: &FiniteGroup, genus: usize) -> Result<Vec<SurfaceHom>> {
    let total = check_guard(group, genus)?;
    #[cfg(feature = "parallel")]
    {
        let homs = (0..total)
            .into_par_iter()
            .filter_map(|index| relation_checked(group, genus, index))
            .collect();
        Ok(homs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = total;
        enumerate_homs_seq(group, genus)
    }
}

/// Sequential reference scan. Identical output to [`enumerate_homs`]; kept
/// public as the comparison baseline for the parallel path.
pub fn enumerate_homs_seq(group: &FiniteGroup, genus: usize) -> Result<Vec<SurfaceHom>> {
    let total = check_guard(group, genus)?;
    Ok((0..total)
        .filter_map(|index| relation_checked(group, genus, index))
        .collect())
}

fn relation_checked(group: &FiniteGroup, genus: usize, index: usize) -> Option<SurfaceHom> {
    let images = decode_tuple(index, group.order(), 2 * genus);
    surface_relation_holds(group, &images).then_some(SurfaceHom { images })
}

/// True when the images generate the whole target group.
pub fn is_surjective(group: &FiniteGroup, hom: &SurfaceHom) -> bool {
    group
        .generated_subgroup(hom.images())
        .expect("images are valid ids")
        .order()
        == group.order()
}

pub fn conjugate_hom(group: &FiniteGroup, hom: &SurfaceHom, g: usize) -> SurfaceHom {
    SurfaceHom {
        images: hom.images.iter().map(|&x| group.conjugate(g, x)).collect(),
    }
}

/// One orbit of the simultaneous-conjugation action on homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomClass {
    pub representative: SurfaceHom,
    pub orbit_size: usize,
}

/// Orbits of `g · (A_1, ...) = (g A_1 g^{-1}, ...)` over the given
/// homomorphisms, represented by their lexicographically minimal members and
/// sorted by representative.
pub fn classes_up_to_conjugacy(group: &FiniteGroup, homs: &[SurfaceHom]) -> Vec<HomClass> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes = Vec::new();
    for hom in homs {
        if seen.contains(&hom.images) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = group
            .element_ids()
            .map(|g| conjugate_hom(group, hom, g).images)
            .collect();
        let representative = SurfaceHom {
            images: orbit.first().expect("orbit contains the hom itself").clone(),
        };
        let orbit_size = orbit.len();
        seen.extend(orbit);
        classes.push(HomClass {
            representative,
            orbit_size,
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

/// Number of image entries that are transpositions, for targets with a
/// permutation realization.
pub fn transposition_census(group: &FiniteGroup, hom: &SurfaceHom) -> Result<usize> {
    if !group.has_permutation_realization() {
        return Err(Error::NoPermutationRealization);
    }
    Ok(hom
        .images()
        .iter()
        .filter(|&&x| group.perm(x).expect("realization present").is_transposition())
        .count())
}

/// Histogram of the transposition census over a set of homomorphisms; every
/// possible count `0..=2g` appears as a key.
pub fn transposition_histogram(
    group: &FiniteGroup,
    homs: &[SurfaceHom],
) -> Result<BTreeMap<usize, usize>> {
    let slots = homs.first().map_or(0, |h| h.images.len());
    let mut histogram: BTreeMap<usize, usize> = (0..=slots).map(|k| (k, 0)).collect();
    for hom in homs {
        *histogram
            .entry(transposition_census(group, hom)?)
            .or_default() += 1;
    }
    Ok(histogram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn id_of(group: &FiniteGroup, degree: usize, cycles: &[Vec<usize>]) -> usize {
        let p = Permutation::from_cycles(degree, cycles).unwrap();
        group.element_id_of_perm(&p).unwrap()
    }

    /// Independent oracle: count genus-2 tuples over raw permutations (no
    /// multiplication table) satisfying `[A1, B1] = [B2, A2]`.
    fn genus_two_count_by_raw_permutations() -> usize {
        let elements: Vec<Permutation> = {
            let g = s3();
            (0..6).map(|i| g.perm(i).unwrap().clone()).collect()
        };
        let comm = |a: &Permutation, b: &Permutation| {
            a.compose(b)
                .unwrap()
                .compose(&a.inverse())
                .unwrap()
                .compose(&b.inverse())
                .unwrap()
        };
        let mut count = 0;
        for a1 in &elements {
            for b1 in &elements {
                for a2 in &elements {
                    for b2 in &elements {
                        if comm(a1, b1) == comm(b2, a2) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn genus_zero_has_exactly_one_hom() {
        let homs = enumerate_homs(&s3(), 0).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].images().is_empty());
        assert!(!is_surjective(&s3(), &homs[0]));
    }

    #[test]
    fn genus_two_total_count_matches_the_raw_oracle() {
        let homs = enumerate_homs(&s3(), 2).unwrap();
        assert_eq!(homs.len(), genus_two_count_by_raw_permutations());
        assert_eq!(homs.len(), 486);
    }

    #[test]
    fn relation_formulations_agree_for_genus_two() {
        // Π [A_i, B_i] = 1 is the same constraint as [A1, B1] = [B2, A2].
        let g = s3();
        for index in 0..6usize.pow(4) {
            let t = decode_tuple(index, 6, 4);
            let lhs = surface_relation_holds(&g, &t);
            let rhs = g.commutator(t[0], t[1]) == g.commutator(t[3], t[2]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn genus_two_surjective_count_and_classes() {
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        let surjective: Vec<SurfaceHom> = homs
            .into_iter()
            .filter(|h| is_surjective(&g, h))
            .collect();
        assert_eq!(surjective.len(), 360);
        let classes = classes_up_to_conjugacy(&g, &surjective);
        assert_eq!(classes.len(), 60);
        // the conjugation action is free on surjective homs
        assert!(classes.iter().all(|c| c.orbit_size == 6));
        let total: usize = classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, surjective.len());
    }

    #[test]
    fn conjugation_preserves_relation_and_surjectivity() {
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        for hom in homs.iter().filter(|h| is_surjective(&g, h)) {
            for conj in g.element_ids() {
                let moved = conjugate_hom(&g, hom, conj);
                assert!(surface_relation_holds(&g, moved.images()));
                assert!(is_surjective(&g, &moved));
            }
        }
    }

    #[test]
    fn transposition_histogram_of_the_surjective_homs() {
        // Values fixed by exhaustion and confirmed by an independent scan
        // over raw permutations: no surjective tuple avoids transpositions,
        // and the counts by 1, 2, 3, 4 transpositions are 96, 144, 96, 24.
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        let surjective: Vec<SurfaceHom> = homs
            .into_iter()
            .filter(|h| is_surjective(&g, h))
            .collect();
        let hist = transposition_histogram(&g, &surjective).unwrap();
        let expected: Vec<(usize, usize)> = vec![(0, 0), (1, 96), (2, 144), (3, 96), (4, 24)];
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), expected);
    }

    /// Independent recount of the four-transposition case: the relation for
    /// four transpositions (t_a t_b)^2 = (t_d t_c)^2 reduces to
    /// t_a t_b = t_d t_c, giving 3 ordered pairs per rotation value; the
    /// identity value loses its 3 non-generating tuples.
    #[test]
    fn four_transposition_case_recount() {
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        let all_transpositions = homs
            .iter()
            .filter(|h| is_surjective(&g, h))
            .filter(|h| {
                h.images()
                    .iter()
                    .all(|&x| g.perm(x).unwrap().is_transposition())
            })
            .count();
        assert_eq!(all_transpositions, 3 * 3 - 3 + 2 * (3 * 3));
        assert_eq!(all_transpositions, 24);
    }

    #[test]
    fn census_examples() {
        let g = s3();
        let all_id = SurfaceHom::new(&g, vec![g.identity(); 4]).unwrap();
        assert_eq!(transposition_census(&g, &all_id).unwrap(), 0);

        let swap = id_of(&g, 3, &[vec![0, 1]]);
        let four_swaps = SurfaceHom::new(&g, vec![swap; 4]).unwrap();
        assert_eq!(transposition_census(&g, &four_swaps).unwrap(), 4);

        let d6 = FiniteGroup::dihedral(6).unwrap();
        let hom = SurfaceHom::new(&d6, vec![d6.identity(); 4]).unwrap();
        assert!(matches!(
            transposition_census(&d6, &hom),
            Err(Error::NoPermutationRealization)
        ));
    }

    #[test]
    fn known_surjective_examples() {
        let g = s3();
        let swap01 = id_of(&g, 3, &[vec![0, 1]]);
        let rot = id_of(&g, 3, &[vec![0, 1, 2]]);
        let rot_inv = id_of(&g, 3, &[vec![0, 2, 1]]);
        let e = g.identity();

        let simple = SurfaceHom::new(&g, vec![swap01, e, rot, e]).unwrap();
        assert!(is_surjective(&g, &simple));

        // (A1, B1, A2, B2) = (σ1, τ1, σ2, τ2) with σ1 = (0 1 2), σ2 = (0 2 1),
        // τ1 = τ2 = (0 1)
        let classic = SurfaceHom::new(&g, vec![rot, swap01, rot_inv, swap01]).unwrap();
        assert!(is_surjective(&g, &classic));
    }

    #[test]
    fn central_image_has_orbit_size_one() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let hom = SurfaceHom::new(&z3, vec![1, 2, 0, 1]).unwrap();
        let classes = classes_up_to_conjugacy(&z3, &[hom]);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].orbit_size, 1);
    }

    #[test]
    fn homs_into_the_three_cycle_subgroup() {
        // 80 nontrivial homs land inside A3; conjugation by the full S3
        // gives 40 classes, cross-checked by Burnside's count.
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        let into_a3: Vec<SurfaceHom> = homs
            .into_iter()
            .filter(|h| {
                h.images()
                    .iter()
                    .all(|&x| g.perm(x).unwrap().sign() == 1)
                    && h.images().iter().any(|&x| x != g.identity())
            })
            .collect();
        assert_eq!(into_a3.len(), 80);
        let classes = classes_up_to_conjugacy(&g, &into_a3);

        let fixed_total: usize = g
            .element_ids()
            .map(|c| {
                into_a3
                    .iter()
                    .filter(|h| conjugate_hom(&g, h, c) == **h)
                    .count()
            })
            .sum();
        assert_eq!(fixed_total % g.order(), 0);
        assert_eq!(classes.len(), fixed_total / g.order());
        assert_eq!(classes.len(), 40);
    }

    #[test]
    fn genus_one_commuting_pairs() {
        let g = s3();
        let homs = enumerate_homs(&g, 1).unwrap();
        assert_eq!(homs.len(), 18);
        assert!(homs.iter().all(|h| !is_surjective(&g, h)));
    }

    #[test]
    fn enumeration_is_lexicographic_and_matches_the_sequential_path() {
        let g = s3();
        let homs = enumerate_homs(&g, 2).unwrap();
        assert!(homs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(homs, enumerate_homs_seq(&g, 2).unwrap());
    }

    #[test]
    fn guard_refuses_oversized_scans_with_the_tuple_count() {
        let s6 = FiniteGroup::symmetric(6).unwrap();
        match enumerate_homs(&s6, 2) {
            Err(Error::EnumerationTooLarge { tuples, .. }) => {
                assert_eq!(tuples, 720u128.pow(4));
            }
            other => panic!("expected guard refusal, got {other:?}"),
        }
    }

    #[test]
    fn orbit_sizes_divide_the_group_order() {
        let g = s3();
        let homs = enumerate_homs(&g, 1).unwrap();
        for class in classes_up_to_conjugacy(&g, &homs) {
            assert_eq!(g.order() % class.orbit_size, 0);
        }
    }

    #[test]
    fn hom_constructor_rejects_relation_violations() {
        let g = s3();
        let swap01 = id_of(&g, 3, &[vec![0, 1]]);
        let rot = id_of(&g, 3, &[vec![0, 1, 2]]);
        // [A1, B1] is a nontrivial rotation, [B2, A2] is trivial
        assert!(matches!(
            SurfaceHom::new(&g, vec![swap01, rot, 0, 0]),
            Err(Error::RelationViolated)
        ));
    }
}
