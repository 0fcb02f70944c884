//! Extension groups `E(a)` over representatives of `G^{C_p}/N(G)`.

use hopfext_core::cocommutative::{a_bar_representatives, brute_force_iso, build_ext_group, ext_groups_isomorphic};
use hopfext_core::cp_module::{BlockProfile, CpModule};
use hopfext_core::orbit::isoclass_count;

/// Greedy grouping by the isomorphism rule.
fn class_count(groups: &[hopfext_core::cocommutative::ExtGroup]) -> usize {
    let mut reps: Vec<usize> = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        if !reps
            .iter()
            .any(|&r| ext_groups_isomorphic(&groups[r], g).unwrap().verdict)
        {
            reps.push(i);
        }
    }
    reps.len()
}

#[test]
fn group_classes_match_beta_zero_orbits() {
    for (p, n) in [(3u32, 1usize), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 2)] {
        for pr in BlockProfile::all(p, n).unwrap() {
            let module = CpModule::from_blocks(&pr);
            let groups: Vec<_> = a_bar_representatives(&module)
                .iter()
                .map(|a| build_ext_group(&module, a).unwrap())
                .collect();
            let count = isoclass_count(&pr, 1 << 30).unwrap();
            assert_eq!(class_count(&groups), count.cocommutative, "p={p} {}", pr.describe());
        }
    }
}

#[test]
fn rule_agrees_with_search_at_five() {
    for n in 1..=2 {
        for pr in BlockProfile::all(5, n).unwrap() {
            let module = CpModule::from_blocks(&pr);
            let groups: Vec<_> = a_bar_representatives(&module)
                .iter()
                .map(|a| build_ext_group(&module, a).unwrap())
                .collect();
            for g in &groups {
                for h in &groups {
                    let rule = ext_groups_isomorphic(g, h).unwrap().verdict;
                    assert_eq!(
                        rule,
                        brute_force_iso(g, h, 1 << 22).unwrap(),
                        "{} {:?} {:?}",
                        pr.describe(),
                        g.a(),
                        h.a()
                    );
                }
            }
        }
    }
}
