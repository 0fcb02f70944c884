//! Hopf structures built from class points: both bialgebra modes, grouplike
//! lifts of `x`, and the JSON form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfext_core::cohomology::{lift_chi_to_function, ClassSpace};
use hopfext_core::cp_module::{BlockProfile, CpModule, ElementTables};
use hopfext_core::hopf::{build_hopf, check_axioms, is_grouplike, BialgebraMode, HopfJson, HopfStructure};

fn spaces(p: u32, n: usize) -> Vec<ClassSpace> {
    BlockProfile::all(p, n)
        .unwrap()
        .iter()
        .map(|pr| ClassSpace::build(&CpModule::from_blocks(pr)))
        .collect()
}

#[test]
fn both_bialgebra_modes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=2 {
        for space in spaces(3, n) {
            for code in 0..space.size() as u64 {
                let h = build_hopf(&space, &space.decode(code)).unwrap();
                assert!(check_axioms(&h, BialgebraMode::Exhaustive).all_passed());
                // One wrong phase in the coproduct.
                let mut j = h.to_json();
                let k = rng.gen_range(0..j.comult.len());
                j.comult[k][3] = (j.comult[k][3] + 3) % 9;
                let bad = HopfStructure::from_json(&j).unwrap();
                let gen = check_axioms(&bad, BialgebraMode::Generators);
                let all = check_axioms(&bad, BialgebraMode::Exhaustive);
                assert!(!gen.all_passed() && !all.all_passed(), "code {code}: {gen}");
            }
        }
    }
}

#[test]
fn x_lifts_to_a_grouplike_exactly_when_beta_vanishes() {
    for (p, n) in [(3u32, 1usize), (3, 2), (5, 2)] {
        for space in spaces(p, n) {
            let et = ElementTables::new(space.module());
            for code in 0..space.size() as u64 {
                let pt = space.decode(code);
                let h = build_hopf(&space, &pt).unwrap();
                let f = lift_chi_to_function(&space, &space.character(&pt), &et).unwrap();
                assert_eq!(is_grouplike(&h, &f, 1), pt.is_beta_zero(), "p={p} {pt:?}");
                assert!(is_grouplike(&h, &vec![0; et.size()], 0));
            }
        }
    }
}

#[test]
fn json_is_deterministic_and_round_trips() {
    for space in spaces(3, 2).into_iter().chain(spaces(5, 2)) {
        for code in (0..space.size() as u64).step_by(7) {
            let pt = space.decode(code);
            let a = serde_json::to_string(&build_hopf(&space, &pt).unwrap().to_json()).unwrap();
            let b = serde_json::to_string(&build_hopf(&space, &pt).unwrap().to_json()).unwrap();
            assert_eq!(a, b);
            let parsed: HopfJson = serde_json::from_str(&a).unwrap();
            let h = HopfStructure::from_json(&parsed).unwrap();
            assert_eq!(serde_json::to_string(&h.to_json()).unwrap(), a);
            assert_eq!(h.class_point(&space).unwrap(), pt);
        }
    }
}
