//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfext_core::cocommutative::{brute_force_iso, build_ext_group, ext_groups_isomorphic, fixed_points};
use hopfext_core::cohomology::{act_cocycle_by_omega, assemble_cocycle, ClassPoint, ClassSpace};
use hopfext_core::commutative::{commutative_isoclass_count, enumerate_labels};
use hopfext_core::cp_module::{BlockProfile, CpModule, ElementTables};
use hopfext_core::hopf::{
    build_hopf, check_axioms, is_cocommutative, random_admissible, shift_by_coboundary, BialgebraMode,
};
use hopfext_core::linalg::{combine, FpMatrix};
use hopfext_core::orbit::{isoclass_count, isoclass_count_for, orbit_partition, Slice, SymmetryGroup};
use hopfext_core::verify::{gamma_equals_aut_partition, Caps};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CAP: u128 = 100_000_000;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: hopfext_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn module(p: u32, m: &[usize]) -> CpModule {
    CpModule::from_blocks(&BlockProfile::new(p, m).unwrap())
}

fn total(p: u32, m: &[usize]) -> Result<usize, String> {
    Ok(e2s(isoclass_count(&BlockProfile::new(p, m).unwrap(), CAP))?.total)
}

fn commutative_counts() -> Outcome {
    for p in [3, 5] {
        for n in 1..=4 {
            let want = commutative_isoclass_count(n);
            let labels = e2s(enumerate_labels(p, n, CAP))?.len();
            let orbits = e2s(isoclass_count(&BlockProfile::trivial(p, n).unwrap(), CAP))?.total;
            ensure(labels == want && orbits == want, || {
                format!("p={p} n={n}: labels {labels}, orbits {orbits}, want {want}")
            })?;
        }
    }
    Ok("labels and orbits give 2, 4, 5, 7 at p = 3, 5".into())
}

fn r2_r1() -> Outcome {
    for p in [3, 5] {
        let t = total(p, &[1, 1])?;
        ensure(t == (2 * p + 11) as usize, || format!("p={p}: {t} isoclasses"))?;
        let same = e2s(gamma_equals_aut_partition(&module(p, &[1, 1]), Caps::default()))?;
        ensure(same, || format!("p={p}: Gamma and A partitions differ"))?;
    }
    Ok("17 and 21; Gamma partition equals A partition".into())
}

fn r3() -> Outcome {
    let got: Vec<usize> = [3, 5, 7]
        .iter()
        .map(|&p| total(p, &[0, 0, 1]))
        .collect::<Result<_, _>>()?;
    ensure(got == [4, 14, 16], || format!("got {got:?}"))?;
    Ok("4, 14, 16 at p = 3, 5, 7".into())
}

fn c_p_squared() -> Outcome {
    for p in [3u32, 5] {
        let triv = total(p, &[2])?;
        let r2 = total(p, &[0, 1])?;
        ensure(triv + r2 == (p + 7) as usize && r2 == (p + 3) as usize, || {
            format!("p={p}: trivial {triv}, R2 {r2}")
        })?;
    }
    Ok("10 and 12 in total; R2 alone gives p+3".into())
}

fn order_p() -> Outcome {
    for p in [3, 5, 7] {
        let t = total(p, &[1])?;
        ensure(t == 2, || format!("p={p}: {t}"))?;
    }
    Ok("2 at p = 3, 5, 7".into())
}

fn dims() -> Outcome {
    for (p, m, want) in [
        (3, vec![1, 1], 5),
        (5, vec![1, 1], 5),
        (3, vec![0, 0, 1], 2),
        (5, vec![0, 0, 1], 4),
        (7, vec![0, 0, 1], 4),
    ] {
        let d = ClassSpace::build(&module(p, &m)).dim();
        ensure(d == want, || format!("p={p} {m:?}: dim {d}, want {want}"))?;
    }
    Ok("R2+R1 -> 5; R3 -> 2, 4, 4".into())
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: Vec<(u32, Vec<usize>)> = vec![
        (3, vec![1, 1]),
        (5, vec![1, 1]),
        (3, vec![0, 0, 1]),
        (5, vec![0, 0, 1]),
        (7, vec![0, 0, 1]),
        (3, vec![0, 1]),
        (5, vec![0, 1]),
        (3, vec![2]),
        (5, vec![2]),
        (3, vec![1]),
    ];
    // (a) counts survive a change of basis.
    for (p, m) in &cases {
        let base = module(*p, m);
        let want = e2s(isoclass_count_for(&base, CAP))?;
        for _ in 0..10 {
            let (conj, _) = base.random_conjugate(&mut rng);
            let got = e2s(isoclass_count_for(&conj, CAP))?;
            ensure(got == want, || {
                format!("p={p} {m:?}: {got:?} after conjugation, was {want:?}")
            })?;
        }
    }
    for (p, m) in &cases {
        let md = module(*p, m);
        let space = ClassSpace::build(&md);
        let group = e2s(SymmetryGroup::build(&md))?;
        // (b) |τA| ≤ |τΓ| ≤ |C|·|τA|.
        let a = e2s(orbit_partition(
            &space,
            &e2s(group.aut_actions(&space))?,
            Slice::Full,
            CAP,
        ))?;
        let all = e2s(group.gamma_actions_all_twists(&space))?;
        let g = e2s(orbit_partition(&space, &all, Slice::Full, CAP))?;
        let c = group.c_group().len() as u64;
        for x in 0..a.ids.len() {
            let sa = a.sizes[a.ids[x] as usize];
            let sg = g.sizes[g.ids[x] as usize];
            ensure(sa <= sg && sg <= c * sa, || {
                format!("p={p} {m:?} point {x}: |A x| {sa}, |Gx| {sg}")
            })?;
        }
        // (c) the β = 0 slice is stable, on points and on cocycles.
        let et = ElementTables::new(&md);
        let step = (*p as u64).pow(space.alt_dim() as u32);
        for code in (0..space.size() as u64).step_by(step as usize) {
            let pt = space.decode(code);
            for act in &all {
                ensure(act.apply(&pt).is_beta_zero(), || {
                    format!("p={p} {m:?}: {pt:?} leaves the slice")
                })?;
            }
            let s = e2s(assemble_cocycle(&space, &pt, &et))?;
            for f in group.aut_generators() {
                let moved = e2s(s.act_by_matrix(&et, f))?;
                ensure(moved.is_symmetric(), || {
                    format!("p={p} {m:?}: F moves {pt:?} off the slice")
                })?;
            }
            for it in group.twists() {
                let moved = e2s(act_cocycle_by_omega(&s, it, &et))?;
                ensure(moved.is_symmetric(), || {
                    format!("p={p} {m:?}: twist {} moves {pt:?} off the slice", it.k)
                })?;
            }
        }
    }
    // (d) an invertible intertwiner exists iff the block profiles agree.
    for p in [3u32, 5] {
        for n in 1..=4 {
            let profiles = e2s(BlockProfile::all(p, n))?;
            let mods: Vec<CpModule> = profiles
                .iter()
                .map(|pr| CpModule::from_blocks(pr).random_conjugate(&mut rng).0)
                .collect();
            for (i, m1) in mods.iter().enumerate() {
                ensure(m1.block_profile() == profiles[i], || {
                    format!("profile of conjugate of {}", profiles[i])
                })?;
                for (j, m2) in mods.iter().enumerate() {
                    let found = m1.find_invertible_intertwiner(m2);
                    if let Some(f) = &found {
                        ensure(m1.t().dot(f) == f.dot(m2.t()) && f.determinant().unwrap() != 0, || {
                            format!("bad intertwiner {} -> {}", profiles[i], profiles[j])
                        })?;
                    }
                    ensure(found.is_some() == (i == j), || {
                        format!("p={p}: {} vs {}: found {}", profiles[i], profiles[j], found.is_some())
                    })?;
                    if (p as u64).pow((n * n) as u32) <= 200_000 {
                        let brute = brute_intertwiner(m1, m2);
                        ensure(brute == (i == j), || {
                            format!("p={p}: brute force on {} vs {}", profiles[i], profiles[j])
                        })?;
                    }
                }
            }
        }
    }
    Ok("conjugation, orbit bound, slice stability, intertwiners".into())
}

/// Searches every `n×n` matrix for an invertible `F` with `T₁F = FT₂`.
fn brute_intertwiner(m1: &CpModule, m2: &CpModule) -> bool {
    let (p, n) = (m1.p(), m1.n());
    let total = (p as u64).pow((n * n) as u32);
    (0..total).any(|mut c| {
        let mut flat = vec![0u32; n * n];
        for x in flat.iter_mut() {
            *x = (c % p as u64) as u32;
            c /= p as u64;
        }
        let f = FpMatrix::from_flat(p, n, n, flat).unwrap();
        m1.t().dot(&f) == f.dot(m2.t()) && f.determinant().unwrap() != 0
    })
}

fn hopf_sweep() -> Outcome {
    let mut points = 0;
    for n in 1..=3 {
        for pr in e2s(BlockProfile::all(3, n))? {
            let space = ClassSpace::build(&CpModule::from_blocks(&pr));
            for code in 0..space.size() as u64 {
                let pt = space.decode(code);
                check_point(&space, &pt)?;
                points += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spaces: Vec<ClassSpace> = e2s(BlockProfile::all(5, 3))?
        .iter()
        .map(|pr| ClassSpace::build(&CpModule::from_blocks(pr)))
        .collect();
    for _ in 0..100 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let pt = space.decode(rng.gen_range(0..space.size() as u64));
        check_point(space, &pt)?;
    }
    Ok(format!("{points} points at p=3 and 100 random points at p=5, n=3"))
}

fn check_point(space: &ClassSpace, pt: &ClassPoint) -> Result<(), String> {
    let h = e2s(build_hopf(space, pt))?;
    let rep = check_axioms(&h, BialgebraMode::Generators);
    ensure(rep.all_passed(), || {
        format!("{pt:?} in {}: {rep}", space.module().block_profile())
    })?;
    ensure(is_cocommutative(&h) == pt.is_beta_zero(), || {
        format!("{pt:?}: cocommutativity does not match beta")
    })
}

fn cocommutative_oracle() -> Outcome {
    let mut pairs = 0;
    for n in 1..=3 {
        let mut groups = Vec::new();
        for pr in e2s(BlockProfile::all(3, n))? {
            let md = CpModule::from_blocks(&pr);
            let fixed = fixed_points(&md);
            let d = fixed.dim();
            for c in 0..3usize.pow(d as u32) {
                let coeffs: Vec<u32> = (0..d).map(|i| (c / 3usize.pow(i as u32) % 3) as u32).collect();
                let a = combine(&coeffs, fixed.basis(), n, 3);
                groups.push(e2s(build_ext_group(&md, &a))?);
            }
        }
        for (i, e1) in groups.iter().enumerate() {
            for e2 in &groups[i..] {
                let rule = e2s(ext_groups_isomorphic(e1, e2))?.verdict;
                let exact = e2s(brute_force_iso(e1, e2, 81))?;
                ensure(rule == exact, || {
                    format!("a = {:?} vs {:?}: rule {rule}, search {exact}", e1.a(), e2.a())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs agree"))
}

fn coboundary_shift() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let spaces: Vec<ClassSpace> = e2s(BlockProfile::all(3, 2))?
        .iter()
        .map(|pr| ClassSpace::build(&CpModule::from_blocks(pr)))
        .collect();
    for _ in 0..50 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let pt = space.decode(rng.gen_range(0..space.size() as u64));
        let h = e2s(build_hopf(space, &pt))?;
        let g = random_admissible(space.module(), &mut rng);
        let h2 = e2s(shift_by_coboundary(&h, &g))?;
        ensure(check_axioms(&h2, BialgebraMode::Generators).all_passed(), || {
            format!("{pt:?}: axioms fail after shift")
        })?;
        let back = e2s(h2.class_point(space))?;
        ensure(back == pt, || format!("{pt:?} recovered as {back:?}"))?;
    }
    Ok("50 shifts keep the axioms and the class".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("commutative counts", commutative_counts),
        ("R2+R1 isoclasses", r2_r1),
        ("R3 isoclasses", r3),
        ("C_p x C_p isoclasses", c_p_squared),
        ("order p", order_p),
        ("classifying space dimensions", dims),
        ("structural properties", structural),
        ("Hopf axiom sweep", hopf_sweep),
        ("cocommutative oracle", cocommutative_oracle),
        ("coboundary shift", coboundary_shift),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        let line = match &r {
            Ok(detail) => format!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                format!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1)
            }
        };
        let _ = writeln!(out, "{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        let _ = writeln!(out, "{failed} criteria failed");
        ExitCode::FAILURE
    }
}
