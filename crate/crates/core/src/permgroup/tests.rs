use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::error::Error;

fn psi(k: usize) -> usize {
    k % 6
}

fn refl(k: usize) -> usize {
    6 + k % 6
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points.to_vec()]).unwrap()
}

/// Independent subgroup count: scan every subset of the group.
fn subgroup_count_by_subset_scan(g: &FiniteGroup) -> usize {
    let n = g.order();
    assert!(n <= 12, "subset scan is exponential");
    let mut count = 0;
    'subsets: for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !members.contains(&g.identity()) {
            continue;
        }
        for &a in &members {
            if !members.contains(&g.inv(a)) {
                continue 'subsets;
            }
            for &b in &members {
                if !members.contains(&g.mul(a, b)) {
                    continue 'subsets;
                }
            }
        }
        count += 1;
    }
    count
}

#[test]
fn symmetric_three_has_order_six_with_identity_first() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.identity(), 0);
    assert!(s3.perm(0).unwrap().is_identity());
}

#[test]
fn symmetric_guard_rejects_large_degree() {
    assert!(matches!(
        FiniteGroup::symmetric(7),
        Err(Error::GroupTooLarge { .. })
    ));
}

#[test]
fn alternating_three_is_cyclic_of_order_three() {
    let a3 = FiniteGroup::alternating(3).unwrap();
    assert_eq!(a3.order(), 3);
    let z3 = FiniteGroup::cyclic(3).unwrap();
    assert!(find_isomorphism(&a3, &z3).is_some());
}

#[test]
fn dihedral_one_has_order_two() {
    let d1 = FiniteGroup::dihedral(1).unwrap();
    assert_eq!(d1.order(), 2);
    assert_eq!(d1.element_order(1), 2);
}

#[test]
fn dihedral_six_element_census() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    assert_eq!(d6.order(), 12);
    assert_eq!(d6.element_order(psi(1)), 6);
    // exactly 7 involutions: ψ^3 and the six reflections
    let invs = d6.involutions();
    assert_eq!(invs.len(), 7);
    assert!(invs.contains(&psi(3)));
    for k in 0..6 {
        assert!(invs.contains(&refl(k)));
    }
    // ψ^3 is the unique central involution
    assert_eq!(d6.center(), vec![0, psi(3)]);
    assert_eq!(d6.label(psi(3)), "ψ^3");
    assert_eq!(d6.label(refl(1)), "ψτ");
}

#[test]
fn dihedral_defining_relations() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let (p, t) = (psi(1), refl(0));
    assert_eq!(d6.product([p; 6]), d6.identity());
    assert_eq!(d6.mul(t, t), d6.identity());
    // τψτ = ψ^{-1}
    assert_eq!(d6.mul(d6.mul(t, p), t), d6.inv(p));
}

#[test]
fn dihedral_three_is_isomorphic_to_symmetric_three() {
    let d3 = FiniteGroup::dihedral(3).unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let iso = find_isomorphism(&d3, &s3).expect("D3 ≅ S3");
    for a in d3.element_ids() {
        for b in d3.element_ids() {
            assert_eq!(iso[d3.mul(a, b)], s3.mul(iso[a], iso[b]));
        }
    }
    // and neither is isomorphic to the cyclic group of order 6
    let z6 = FiniteGroup::cyclic(6).unwrap();
    assert!(find_isomorphism(&d3, &z6).is_none());
}

#[test]
fn automorphism_tower_generators_inside_dihedral_six() {
    // With ι = ψ^3 τ, σ = ψ^2, τ = τ: the commutation relations hold,
    // ιστ has order 6 and squares to σ, and the three elements generate
    // the whole group.
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let iota = refl(3);
    let sigma = psi(2);
    let tau = refl(0);
    assert_eq!(d6.mul(iota, sigma), d6.mul(d6.mul(sigma, sigma), iota));
    assert_eq!(d6.mul(tau, sigma), d6.mul(d6.mul(sigma, sigma), tau));
    assert_eq!(d6.mul(iota, tau), d6.mul(tau, iota));
    let w = d6.product([iota, sigma, tau]);
    assert_eq!(w, psi(1));
    assert_eq!(d6.element_order(w), 6);
    assert_eq!(d6.mul(w, w), sigma);
    let generated = d6.generated_subgroup(&[iota, sigma, tau]).unwrap();
    assert_eq!(generated.order(), 12);
}

#[test]
fn generated_subgroup_examples() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    assert_eq!(d6.generated_subgroup(&[]).unwrap(), d6.trivial_subgroup());
    // ψτ·ψ^3τ = ψ^{-2} and ⟨ψ^3, ψ^{-2}⟩ = ⟨ψ⟩, so these three generate D6
    let sub = d6
        .generated_subgroup(&[psi(3), refl(1), refl(3)])
        .unwrap();
    assert_eq!(sub.order(), 12);

    let s3 = FiniteGroup::symmetric(3).unwrap();
    let swap = s3.element_id_of_perm(&cycle(3, &[0, 1])).unwrap();
    let rot = s3.element_id_of_perm(&cycle(3, &[0, 1, 2])).unwrap();
    assert_eq!(s3.generated_subgroup(&[swap, rot]).unwrap().order(), 6);

    assert!(matches!(
        s3.generated_subgroup(&[9]),
        Err(Error::NotInGroup { element: 9, .. })
    ));
}

#[test]
fn lagrange_over_the_dihedral_six_lattice() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    for sub in d6.subgroups().unwrap() {
        assert_eq!(d6.order() % sub.order(), 0);
        assert!(d6.is_subgroup(&sub));
    }
}

#[test]
fn subgroup_lattice_of_symmetric_three() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let lattice = s3.subgroup_lattice().unwrap();
    assert_eq!(lattice.subgroup_count(), 6);
    assert_eq!(lattice.class_count(), 4);
    // exactly 3 conjugate subgroups of index 3
    let index3: Vec<&SubgroupClass> = lattice
        .classes
        .iter()
        .filter(|c| c.representative.index_in(&s3) == 3)
        .collect();
    assert_eq!(index3.len(), 1);
    assert_eq!(index3[0].members.len(), 3);
    assert_eq!(
        subgroup_count_by_subset_scan(&s3),
        lattice.subgroup_count()
    );
}

#[test]
fn subgroup_lattice_of_dihedral_six() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let lattice = d6.subgroup_lattice().unwrap();
    assert_eq!(lattice.subgroup_count(), 16);
    assert_eq!(lattice.class_count(), 10);
    assert_eq!(subgroup_count_by_subset_scan(&d6), 16);

    // one representative of every conjugacy class in the tower diagram,
    // with the expected indices
    let expected: [(&[usize], usize); 8] = [
        (&[refl(0)], 6),          // ⟨τ⟩
        (&[refl(3)], 6),          // ⟨ψ^3τ⟩
        (&[psi(3)], 6),           // ⟨ψ^3⟩
        (&[psi(2)], 4),           // ⟨ψ^2⟩
        (&[psi(3), refl(0)], 3),  // ⟨ψ^3, τ⟩
        (&[psi(2), refl(0)], 2),  // ⟨ψ^2, τ⟩
        (&[refl(3), psi(2)], 2),  // ⟨ψ^3τ, ψ^2⟩
        (&[psi(1)], 2),           // ⟨ψ⟩
    ];
    for (gens, index) in expected {
        let sub = d6.generated_subgroup(gens).unwrap();
        assert_eq!(sub.index_in(&d6), index);
        assert!(
            lattice.iter_all().any(|s| *s == sub),
            "missing subgroup generated by {gens:?}"
        );
    }
}

#[test]
fn subgroup_lattice_of_cyclic_two() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let lattice = z2.subgroup_lattice().unwrap();
    assert_eq!(lattice.subgroup_count(), 2);
}

#[test]
fn lattice_inclusions_are_proper_and_reflexive_free() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let lattice = d6.subgroup_lattice().unwrap();
    for (i, j) in lattice.class_inclusions() {
        assert!(
            lattice.classes[i].representative.order() < lattice.classes[j].representative.order()
        );
    }
    // trivial subgroup is included in every other class
    let from_trivial = lattice
        .class_inclusions()
        .iter()
        .filter(|&&(i, _)| lattice.classes[i].representative.order() == 1)
        .count();
    assert_eq!(from_trivial, lattice.class_count() - 1);
}

#[test]
fn coset_action_on_full_group_is_trivial() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let action = d6.coset_action(&d6.full_subgroup()).unwrap();
    assert_eq!(action.degree(), 1);
    assert!(action.is_transitive());
}

#[test]
fn coset_action_degree_two_swap() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let h = d6.generated_subgroup(&[psi(2), refl(0)]).unwrap();
    let action = d6.coset_action(&h).unwrap();
    assert_eq!(action.degree(), 2);
    // ψ^3 ∉ ⟨ψ^2, τ⟩, so it acts as the nontrivial swap
    assert!(!h.contains(psi(3)));
    assert_eq!(action.perm(psi(3)).mapping(), &[1, 0]);
    assert!(action.perm(psi(2)).is_identity());
}

#[test]
fn coset_action_of_symmetric_three_on_point_stabilizer() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let swap = s3.element_id_of_perm(&cycle(3, &[0, 1])).unwrap();
    let h = s3.generated_subgroup(&[swap]).unwrap();
    let action = s3.coset_action(&h).unwrap();
    assert_eq!(action.degree(), 3);
    assert!(action.is_transitive());
}

#[test]
fn coset_action_is_a_homomorphism() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    for sub in d6.subgroups().unwrap() {
        let action = d6.coset_action(&sub).unwrap();
        assert!(action.is_transitive());
        for a in d6.element_ids() {
            for b in d6.element_ids() {
                let lhs = action.perm(d6.mul(a, b)).clone();
                let rhs = action.perm(a).compose(action.perm(b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn coset_action_kernel_is_the_normal_core() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    for sub in d6.subgroups().unwrap() {
        let action = d6.coset_action(&sub).unwrap();
        assert_eq!(action.kernel(), d6.normal_core(&sub));
    }
}

#[test]
fn coset_action_rejects_non_subgroups() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let bogus = Subgroup::new(&d6, vec![0, psi(1)]);
    assert!(matches!(bogus, Err(Error::NotASubgroup)));
}

#[test]
fn sign_is_a_homomorphism_on_a_thousand_random_pairs_in_s6() {
    let s6 = FiniteGroup::symmetric(6).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5167);
    for _ in 0..1000 {
        let a = rng.random_range(0..s6.order());
        let b = rng.random_range(0..s6.order());
        let pa = s6.perm(a).unwrap();
        let pb = s6.perm(b).unwrap();
        let product = s6.perm(s6.mul(a, b)).unwrap();
        assert_eq!(product.sign(), pa.sign() * pb.sign());
        // the table agrees with permutation composition
        assert_eq!(product, &pa.compose(pb).unwrap());
    }
}

#[test]
fn from_table_rejects_broken_tables() {
    // no identity
    let t = vec![vec![1, 0], vec![1, 0]];
    assert!(FiniteGroup::from_table(t, None).is_err());
    // not square
    let t = vec![vec![0, 1], vec![1]];
    assert!(FiniteGroup::from_table(t, None).is_err());
    // entry out of range
    let t = vec![vec![0, 1], vec![1, 2]];
    assert!(FiniteGroup::from_table(t, None).is_err());
    // non-associative "subtraction mod 3"
    let t = vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]];
    assert!(FiniteGroup::from_table(t, None).is_err());
}

#[test]
fn group_serializes_as_order_table_labels() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let json = serde_json::to_value(&z2).unwrap();
    assert_eq!(json["order"], 2);
    assert_eq!(json["table"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(json["labels"], serde_json::json!(["1", "g"]));
}

#[test]
fn normal_subgroups_of_dihedral_six() {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    assert!(d6.is_normal(&d6.generated_subgroup(&[psi(3)]).unwrap()));
    assert!(d6.is_normal(&d6.generated_subgroup(&[psi(1)]).unwrap()));
    assert!(!d6.is_normal(&d6.generated_subgroup(&[refl(0)]).unwrap()));
}
