//! Orbit labels for the trivial action against the orbit engine and against
//! the central extension groups they describe.

use std::collections::BTreeMap;

use hopfext_core::cohomology::ClassSpace;
use hopfext_core::commutative::{central_extension_group, classify_pair, commutative_isoclass_count, OrbitLabel};
use hopfext_core::cp_module::CpModule;
use hopfext_core::group::brute_force_iso;
use hopfext_core::orbit::{orbit_partition, Slice, SymmetryGroup};

#[test]
fn labels_are_exactly_the_orbits() {
    for n in 1..=3 {
        let module = CpModule::trivial(3, n).unwrap();
        let space = ClassSpace::build(&module);
        let group = SymmetryGroup::build(&module).unwrap();
        let part = orbit_partition(&space, &group.aut_actions(&space).unwrap(), Slice::Full, 1 << 24).unwrap();
        assert_eq!(part.orbit_count(), commutative_isoclass_count(n), "n={n}");
        let mut by_orbit: BTreeMap<u32, OrbitLabel> = BTreeMap::new();
        for code in 0..space.size() as u64 {
            let pt = space.decode(code);
            let l = classify_pair(&space.character(&pt), &space.beta_form(&pt));
            let prev = by_orbit.entry(part.ids[code as usize]).or_insert(l);
            assert_eq!(*prev, l, "n={n} code={code}");
        }
        let distinct: std::collections::BTreeSet<_> = by_orbit.values().collect();
        assert_eq!(distinct.len(), part.orbit_count(), "n={n}");
    }
}

#[test]
fn extension_group_depends_only_on_the_label() {
    for n in 1..=2 {
        let module = CpModule::trivial(3, n).unwrap();
        let space = ClassSpace::build(&module);
        let mut reps: BTreeMap<OrbitLabel, _> = BTreeMap::new();
        for code in 0..space.size() as u64 {
            let pt = space.decode(code);
            let l = classify_pair(&space.character(&pt), &space.beta_form(&pt));
            let g = central_extension_group(&space, &pt).unwrap();
            match reps.get(&l) {
                Some(r) => assert!(brute_force_iso(r, &g, 1 << 20).unwrap(), "n={n} {l}"),
                None => {
                    reps.insert(l, g);
                }
            }
        }
        let groups: Vec<_> = reps.iter().collect();
        for (i, (l1, g1)) in groups.iter().enumerate() {
            for (l2, g2) in &groups[i + 1..] {
                assert!(!brute_force_iso(g1, g2, 1 << 20).unwrap(), "n={n} {l1} vs {l2}");
            }
        }
    }
}
