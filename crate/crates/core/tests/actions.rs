//! The linear point actions used by the orbit engine agree with the actions
//! on cocycles, and the generators produce the same orbits as the whole of A.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfext_core::cohomology::{act_cocycle_by_omega, assemble_cocycle, recover_point, ClassSpace};
use hopfext_core::cp_module::{BlockProfile, CpModule, ElementTables};
use hopfext_core::orbit::{
    aut_order, enumerate_automorphisms, orbit_partition, point_action_of_aut, point_action_of_omega, Slice,
    SymmetryGroup,
};

fn cases() -> Vec<(u32, Vec<usize>)> {
    vec![
        (3, vec![1, 1]),
        (3, vec![0, 0, 1]),
        (3, vec![0, 1]),
        (3, vec![2]),
        (3, vec![3]),
        (5, vec![1, 1]),
        (5, vec![0, 0, 1]),
        (5, vec![0, 1]),
        (7, vec![0, 0, 1]),
    ]
}

#[test]
fn point_actions_match_cocycle_actions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in cases() {
        let pr = BlockProfile::new(p, &m).unwrap();
        // Recovering a point checks the cocycle identity over |G|^3 triples.
        if (p as usize).pow(pr.n() as u32) > 125 {
            continue;
        }
        // A random basis keeps the check away from block-diagonal coincidences.
        let (module, _) = CpModule::from_blocks(&pr).random_conjugate(&mut rng);
        let space = ClassSpace::build(&module);
        let group = SymmetryGroup::build(&module).unwrap();
        let et = ElementTables::new(&module);
        let codes: Vec<u64> = if space.size() <= 243 {
            (0..space.size() as u64).collect()
        } else {
            (0..40).map(|_| rng.gen_range(0..space.size() as u64)).collect()
        };
        for code in codes {
            let pt = space.decode(code);
            let s = assemble_cocycle(&space, &pt, &et).unwrap();
            for f in group.aut_generators() {
                let moved = recover_point(&space, &s.act_by_matrix(&et, f).unwrap(), &et).unwrap();
                let linear = point_action_of_aut(&space, f).unwrap().apply(&pt);
                assert_eq!(moved, linear, "p={p} {m:?} {pt:?}");
            }
            for it in group.twists() {
                let moved = recover_point(&space, &act_cocycle_by_omega(&s, it, &et).unwrap(), &et).unwrap();
                let linear = point_action_of_omega(&space, it).unwrap().apply(&pt);
                assert_eq!(moved, linear, "p={p} {m:?} twist {} {pt:?}", it.k);
            }
        }
    }
}

#[test]
fn generators_give_the_orbits_of_all_of_a() {
    for (p, m) in cases() {
        let pr = BlockProfile::new(p, &m).unwrap();
        let module = CpModule::from_blocks(&pr);
        let all = match enumerate_automorphisms(&module, 1 << 16) {
            Ok(all) => all,
            Err(_) => continue,
        };
        assert_eq!(all.len() as u128, aut_order(&pr), "p={p} {m:?}");
        let space = ClassSpace::build(&module);
        let group = SymmetryGroup::build(&module).unwrap();
        let full: Vec<_> = all.iter().map(|f| point_action_of_aut(&space, f).unwrap()).collect();
        let a = orbit_partition(&space, &full, Slice::Full, 1 << 24).unwrap();
        let g = orbit_partition(&space, &group.aut_actions(&space).unwrap(), Slice::Full, 1 << 24).unwrap();
        assert_eq!(a.ids, g.ids, "p={p} {m:?}");
    }
}

#[test]
fn aut_order_closed_forms() {
    // |GL(n, p)| for the trivial action.
    assert_eq!(aut_order(&BlockProfile::trivial(3, 2).unwrap()), 48);
    assert_eq!(aut_order(&BlockProfile::trivial(5, 3).unwrap()), 1_488_000);
    // Centralizers of R2+R1 and R3 have p^3 (p-1)^2 and p^2 (p-1) elements.
    for p in [3u128, 5, 7] {
        let pu = p as u32;
        assert_eq!(
            aut_order(&BlockProfile::new(pu, &[1, 1]).unwrap()),
            p.pow(3) * (p - 1).pow(2)
        );
        assert_eq!(
            aut_order(&BlockProfile::new(pu, &[0, 0, 1]).unwrap()),
            p.pow(2) * (p - 1)
        );
    }
}

#[test]
fn twists_are_all_units() {
    for (p, m) in cases() {
        let group = SymmetryGroup::build(&CpModule::from_blocks(&BlockProfile::new(p, &m).unwrap())).unwrap();
        assert_eq!(group.c_group(), (1..p).collect::<Vec<_>>());
        for it in group.twists() {
            assert!(it.is_valid_for(group.module()));
        }
    }
}

#[test]
fn gamma_with_every_twist_matches_gamma_with_one() {
    for (p, m) in cases() {
        let module = CpModule::from_blocks(&BlockProfile::new(p, &m).unwrap());
        let space = ClassSpace::build(&module);
        let group = SymmetryGroup::build(&module).unwrap();
        let one = orbit_partition(&space, &group.gamma_actions(&space).unwrap(), Slice::Full, 1 << 24).unwrap();
        let all = orbit_partition(
            &space,
            &group.gamma_actions_all_twists(&space).unwrap(),
            Slice::Full,
            1 << 24,
        )
        .unwrap();
        assert_eq!(one.ids, all.ids, "p={p} {m:?}");
    }
}

#[test]
fn r2_r1_gamma_orbits_are_a_orbits_at_seven() {
    let module = CpModule::from_blocks(&BlockProfile::new(7, &[1, 1]).unwrap());
    let space = ClassSpace::build(&module);
    let group = SymmetryGroup::build(&module).unwrap();
    let a = orbit_partition(&space, &group.aut_actions(&space).unwrap(), Slice::Full, 1 << 24).unwrap();
    let g = orbit_partition(
        &space,
        &group.gamma_actions_all_twists(&space).unwrap(),
        Slice::Full,
        1 << 24,
    )
    .unwrap();
    assert_eq!(a.ids, g.ids);
    assert_eq!(a.orbit_count(), 25);
}
