//! Closed-form counts checked against exhaustive computation, shared by the
//! command line `verify` command and the test suite.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::ClassSpace;
use crate::commutative::{commutative_isoclass_count, enumerate_labels};
use crate::cp_module::{BlockProfile, CpModule};
use crate::error::{Error, Result};
use crate::linalg::check_odd_prime;
use crate::orbit::{isoclass_count, isoclass_count_for, orbit_partition, Slice, SymmetryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRow {
    pub case: String,
    pub claim: String,
    pub expected: u64,
    pub computed: u64,
    pub matched: bool,
    pub runtime: Duration,
}

impl VerificationRow {
    fn new(case: String, claim: String, expected: u64, computed: u64, runtime: Duration) -> Self {
        VerificationRow {
            case,
            claim,
            expected,
            computed,
            matched: expected == computed,
            runtime,
        }
    }
}

impl fmt::Display for VerificationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<38} {:<28} expected {:<4} computed {:<4} {:.3}s",
            if self.matched { "PASS" } else { "FAIL" },
            self.case,
            self.claim,
            self.expected,
            self.computed,
            self.runtime.as_secs_f64()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    Commutative,
    R2R1,
    R3,
    CpSquared,
    OrderP,
    Dims,
    Conjugation,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::OrderP,
        Case::Commutative,
        Case::CpSquared,
        Case::R2R1,
        Case::R3,
        Case::Dims,
        Case::Conjugation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::Commutative => "commutative",
            Case::R2R1 => "r2_r1",
            Case::R3 => "r3",
            Case::CpSquared => "c_p_squared",
            Case::OrderP => "order_p",
            Case::Dims => "dims",
            Case::Conjugation => "conjugation",
        }
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown case {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub points: u128,
    /// Seed for the random basis changes of the conjugation case.
    pub seed: u64,
    pub trials: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            points: 100_000_000,
            seed: 0,
            trials: 10,
        }
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed()))
}

fn profile(p: u32, m: &[usize]) -> Result<BlockProfile> {
    BlockProfile::new(p, m)
}

/// Rows for one case at one prime. `n` restricts the commutative case to a
/// single rank; by default it covers `n = 1..=4`.
pub fn run_case(case: Case, p: u32, n: Option<usize>, caps: Caps) -> Result<Vec<VerificationRow>> {
    check_odd_prime(p)?;
    let mut rows = Vec::new();
    match case {
        Case::Commutative => {
            let ns: Vec<usize> = match n {
                Some(n) if n >= 1 => vec![n],
                Some(_) => return Err(Error::OutOfRange("n must be at least 1".into())),
                // Without an explicit n, stop where the space outgrows the cap.
                None => (1..=4usize)
                    .filter(|&n| (p as u128).pow((n + n * (n - 1) / 2) as u32) <= caps.points)
                    .collect(),
            };
            for n in ns {
                let want = commutative_isoclass_count(n) as u64;
                let claim = format!("floor((3n+2)/2) = {want}");
                let (labels, t) = timed(|| enumerate_labels(p, n, caps.points))?;
                rows.push(VerificationRow::new(
                    format!("commutative p={p} n={n} labels"),
                    claim.clone(),
                    want,
                    labels.len() as u64,
                    t,
                ));
                let (c, t) = timed(|| isoclass_count(&BlockProfile::trivial(p, n)?, caps.points))?;
                rows.push(VerificationRow::new(
                    format!("commutative p={p} n={n} orbits"),
                    claim,
                    want,
                    c.total as u64,
                    t,
                ));
            }
        }
        Case::R2R1 => {
            let pr = profile(p, &[1, 1])?;
            let (c, t) = timed(|| isoclass_count(&pr, caps.points))?;
            rows.push(VerificationRow::new(
                format!("R2+R1 p={p} isoclasses"),
                format!("2p+11 = {}", 2 * p + 11),
                (2 * p + 11) as u64,
                c.total as u64,
                t,
            ));
            let (same, t) = timed(|| gamma_equals_aut_partition(&CpModule::from_blocks(&pr), caps))?;
            rows.push(VerificationRow::new(
                format!("R2+R1 p={p} Gamma orbits = A orbits"),
                "partitions equal = 1".into(),
                1,
                u64::from(same),
                t,
            ));
        }
        Case::R3 => {
            let want = if p == 3 { 4 } else { (p + 9) as u64 };
            let claim = if p == 3 {
                "4 at p=3".to_string()
            } else {
                format!("p+9 = {want}")
            };
            let (c, t) = timed(|| isoclass_count(&profile(p, &[0, 0, 1])?, caps.points))?;
            rows.push(VerificationRow::new(
                format!("R3 p={p} isoclasses"),
                claim,
                want,
                c.total as u64,
                t,
            ));
        }
        Case::CpSquared => {
            let (triv, t1) = timed(|| isoclass_count(&profile(p, &[2])?, caps.points))?;
            let (r2, t2) = timed(|| isoclass_count(&profile(p, &[0, 1])?, caps.points))?;
            rows.push(VerificationRow::new(
                format!("C_p^2 p={p} isoclasses"),
                format!("p+7 = {}", p + 7),
                (p + 7) as u64,
                (triv.total + r2.total) as u64,
                t1 + t2,
            ));
            rows.push(VerificationRow::new(
                format!("C_p^2 p={p} R2 action"),
                format!("p+3 = {}", p + 3),
                (p + 3) as u64,
                r2.total as u64,
                t2,
            ));
        }
        Case::OrderP => {
            let (c, t) = timed(|| isoclass_count(&profile(p, &[1])?, caps.points))?;
            rows.push(VerificationRow::new(
                format!("order p p={p} isoclasses"),
                "2".into(),
                2,
                c.total as u64,
                t,
            ));
        }
        Case::Dims => {
            let (d, t) = timed(|| Ok(ClassSpace::build(&CpModule::from_blocks(&profile(p, &[1, 1])?)).dim()))?;
            rows.push(VerificationRow::new(
                format!("R2+R1 p={p} dim X"),
                "5".into(),
                5,
                d as u64,
                t,
            ));
            let want = if p == 3 { 2 } else { 4 };
            let (d, t) = timed(|| Ok(ClassSpace::build(&CpModule::from_blocks(&profile(p, &[0, 0, 1])?)).dim()))?;
            rows.push(VerificationRow::new(
                format!("R3 p={p} dim X"),
                format!("{want}"),
                want,
                d as u64,
                t,
            ));
        }
        Case::Conjugation => {
            let mut rng = ChaCha8Rng::seed_from_u64(caps.seed ^ u64::from(p));
            let want_r3 = if p == 3 { 4 } else { (p + 9) as u64 };
            for (name, m, want) in [
                ("R2+R1", vec![1, 1], (2 * p + 11) as u64),
                ("R3", vec![0, 0, 1], want_r3),
            ] {
                let base = CpModule::from_blocks(&profile(p, &m)?);
                let (bad, t) = timed(|| {
                    let mut bad = 0u64;
                    for _ in 0..caps.trials {
                        let (conj, _) = base.random_conjugate(&mut rng);
                        if isoclass_count_for(&conj, caps.points)?.total as u64 != want {
                            bad += 1;
                        }
                    }
                    Ok(bad)
                })?;
                rows.push(VerificationRow::new(
                    format!("{name} p={p} {} conjugates", caps.trials),
                    "count unchanged, 0 failures".into(),
                    0,
                    bad,
                    t,
                ));
            }
        }
    }
    Ok(rows)
}

/// Every case at every prime in `primes`.
pub fn run_suite(primes: &[u32], caps: Caps) -> Result<Vec<VerificationRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        for case in Case::ALL {
            rows.extend(run_case(case, p, None, caps)?);
        }
    }
    Ok(rows)
}

/// Whether the orbits of `Γ` (every twist intertwiner included) on the full
/// space coincide with those of `A`.
pub fn gamma_equals_aut_partition(module: &CpModule, caps: Caps) -> Result<bool> {
    let space = ClassSpace::build(module);
    let group = SymmetryGroup::build(module)?;
    let a = orbit_partition(&space, &group.aut_actions(&space)?, Slice::Full, caps.points)?;
    let g = orbit_partition(
        &space,
        &group.gamma_actions_all_twists(&space)?,
        Slice::Full,
        caps.points,
    )?;
    Ok(a.ids == g.ids)
}
