//! Structure constants of `H(τ,◁) = k^G # kC_p` with the coalgebra deformed by
//! a Hopf cocycle `τ`.
//!
//! Basis `p_a x̄^i` has index `i·|G| + code(a)`. Scalars are exponents of a
//! fixed primitive `p²`-th root of unity `ζ`:
//!
//! * `(p_a x̄^i)(p_b x̄^j) = [b = a◁t^i] p_a x̄^{i+j}`,
//! * `Δ(p_c x̄^i) = Σ_{a+b=c} ζ^{τ_i(a,b)} p_a x̄^i ⊗ p_b x̄^i`,
//! * `ε(p_a x̄^i) = [a = 0]`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    assemble_cocycle, coboundary, norm_function, recover_point, tau_components, ClassPoint, ClassSpace, Cochain2,
};
use crate::cp_module::{CpModule, ElementTables};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

pub const SCHEMA: &str = "hopfext-v1";

/// Either zero or `ζ^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootScalar {
    pub exponent: u32,
    pub zero: bool,
}

impl RootScalar {
    pub const ZERO: RootScalar = RootScalar {
        exponent: 0,
        zero: true,
    };

    pub fn root(exponent: u32) -> Self {
        RootScalar { exponent, zero: false }
    }
}

impl fmt::Display for RootScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            write!(f, "z^{}", self.exponent)
        }
    }
}

/// Element of `Q(ζ_{p²})` in the power basis `ζ^0, …, ζ^{p(p−1)−1}`, used to
/// compare sums of roots of unity exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclo {
    p: u32,
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn zero(p: u32) -> Self {
        Cyclo {
            p,
            coeffs: vec![0; (p * (p - 1)) as usize],
        }
    }

    pub fn root(p: u32, e: u32) -> Self {
        let mut c = Self::zero(p);
        c.add_root(e, 1);
        c
    }

    /// Adds `k·ζ^e`, rewriting `ζ^{(p−1)p + r} = −Σ_{j<p−1} ζ^{jp + r}`.
    pub fn add_root(&mut self, e: u32, k: i64) {
        let p = self.p;
        let e = e % (p * p);
        let top = p * (p - 1);
        if e < top {
            self.coeffs[e as usize] += k;
        } else {
            let r = e - top;
            for j in 0..p - 1 {
                self.coeffs[(j * p + r) as usize] -= k;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct HopfStructure {
    module: CpModule,
    et: ElementTables,
    dim: usize,
    /// `mult[u·dim + v] = Some((w, e))` means `u·v = ζ^e w`.
    mult: Vec<Option<(u32, u32)>>,
    /// `comult[w]` lists `(u, v, e)` with `Δ(w) = Σ ζ^e u ⊗ v`.
    comult: Vec<Vec<(u32, u32, u32)>>,
    counit: Vec<u32>,
}

impl HopfStructure {
    /// Builds the tables from the components `τ_i`, `i = 0..p`.
    pub fn from_tau(module: &CpModule, tau: &[Cochain2]) -> Result<Self> {
        let p = module.p() as usize;
        let et = ElementTables::new(module);
        let size = et.size();
        if tau.len() < p {
            return Err(Error::Malformed(format!("{} τ components, expected {p}", tau.len())));
        }
        for t in &tau[..p] {
            if t.size() != size || t.modulus() != (p * p) as u32 {
                return Err(Error::Malformed("τ component of wrong shape".into()));
            }
        }
        let dim = size * p;
        let mut mult = vec![None; dim * dim];
        for i in 0..p {
            for a in 0..size {
                let u = i * size + a;
                let b = et.act(i, a);
                for j in 0..p {
                    let v = j * size + b;
                    let w = ((i + j) % p) * size + a;
                    mult[u * dim + v] = Some((w as u32, 0));
                }
            }
        }
        let mut comult = Vec::with_capacity(dim);
        for i in 0..p {
            for c in 0..size {
                let terms = (0..size)
                    .map(|a| {
                        let b = et.sub(c, a);
                        ((i * size + a) as u32, (i * size + b) as u32, tau[i].get(a, b))
                    })
                    .collect();
                comult.push(terms);
            }
        }
        let counit = (0..dim).map(|u| u32::from(u % size == 0)).collect();
        Ok(HopfStructure {
            module: module.clone(),
            et,
            dim,
            mult,
            comult,
            counit,
        })
    }

    pub fn p(&self) -> u32 {
        self.module.p()
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module(&self) -> &CpModule {
        &self.module
    }

    pub fn group_size(&self) -> usize {
        self.et.size()
    }

    pub fn basis_index(&self, a: usize, i: usize) -> usize {
        i * self.group_size() + a
    }

    pub fn product(&self, u: usize, v: usize) -> Option<(usize, RootScalar)> {
        self.mult[u * self.dim + v].map(|(w, e)| (w as usize, RootScalar::root(e)))
    }

    pub fn coproduct(&self, w: usize) -> Vec<(usize, usize, RootScalar)> {
        self.comult[w]
            .iter()
            .map(|&(u, v, e)| (u as usize, v as usize, RootScalar::root(e)))
            .collect()
    }

    pub fn counit(&self, u: usize) -> u32 {
        self.counit[u]
    }

    /// Reads `τ_i(a,b)` back from the comultiplication, checking that every
    /// `Δ(p_c x̄^i)` has the shape `Σ_{a+b=c} p_a x̄^i ⊗ p_b x̄^i`.
    pub fn tau_from_tables(&self) -> Result<Vec<Cochain2>> {
        let p = self.p() as usize;
        let size = self.group_size();
        let mut tau = vec![Cochain2::zero((p * p) as u32, size); p];
        for (w, terms) in self.comult.iter().enumerate() {
            let (i, c) = (w / size, w % size);
            if terms.len() != size {
                return Err(Error::Malformed(format!("Δ of basis {w} has {} terms", terms.len())));
            }
            let mut seen = vec![false; size];
            for &(u, v, e) in terms {
                let (u, v) = (u as usize, v as usize);
                if u / size != i || v / size != i || self.et.add(u % size, v % size) != c {
                    return Err(Error::Malformed(format!("Δ of basis {w} has a stray term")));
                }
                if std::mem::replace(&mut seen[u % size], true) {
                    return Err(Error::Malformed(format!("Δ of basis {w} repeats a term")));
                }
                tau[i].set(u % size, v % size, e);
            }
        }
        Ok(tau)
    }

    /// Class point of the structure, read from `τ(t) = τ_1`.
    pub fn class_point(&self, space: &ClassSpace) -> Result<ClassPoint> {
        let tau = self.tau_from_tables()?;
        recover_point(space, &tau[1], &self.et)
    }

    fn partners(&self) -> Vec<Vec<(u32, u32, u32)>> {
        (0..self.dim)
            .map(|u| {
                (0..self.dim)
                    .filter_map(|v| self.mult[u * self.dim + v].map(|(w, e)| (v as u32, w, e)))
                    .collect()
            })
            .collect()
    }
}

pub fn build_hopf(space: &ClassSpace, pt: &ClassPoint) -> Result<HopfStructure> {
    let et = ElementTables::new(space.module());
    let s = assemble_cocycle(space, pt, &et)?;
    let tau = tau_components(&s, &et)?;
    HopfStructure::from_tau(space.module(), &tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BialgebraMode {
    /// `Δ(uv) = Δ(u)Δ(v)` for basis `u` and algebra generators
    /// `v ∈ {p_a x̄^0, p_a x̄^1}`; with associativity this gives all pairs.
    Generators,
    /// All pairs of basis elements.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{:<16} ok", c.name)?,
                Some(w) => writeln!(f, "{:<16} FAIL {}", c.name, w)?,
            }
        }
        Ok(())
    }
}

/// Coefficient map of a sum of scaled basis tensors, canonicalised so that
/// equal elements compare equal.
fn canonical<K: Ord + Copy>(p: u32, mut terms: Vec<(K, u32)>) -> BTreeMap<K, Vec<i64>> {
    let m = p * p;
    terms.sort_unstable_by_key(|x| x.0);
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < terms.len() {
        let mut j = i + 1;
        while j < terms.len() && terms[j].0 == terms[i].0 {
            j += 1;
        }
        let mut c = Cyclo::zero(p);
        for t in &terms[i..j] {
            c.add_root(t.1 % m, 1);
        }
        if !c.is_zero() {
            out.insert(terms[i].0, c.coeffs);
        }
        i = j;
    }
    out
}

/// Whether two sums of scaled basis tensors are equal. Without repeated keys
/// each coefficient is a single root and the sorted lists decide it.
fn same_element<K: Ord + Copy>(p: u32, mut a: Vec<(K, u32)>, mut b: Vec<(K, u32)>) -> bool {
    let m = p * p;
    for t in a.iter_mut().chain(b.iter_mut()) {
        t.1 %= m;
    }
    a.sort_unstable();
    b.sort_unstable();
    let distinct = |v: &[(K, u32)]| v.windows(2).all(|w| w[0].0 != w[1].0);
    if distinct(&a) && distinct(&b) {
        a == b
    } else {
        canonical(p, a) == canonical(p, b)
    }
}

/// Dense scratch table for comparing sums whose keys are small integers,
/// without sorting; repeated keys fall back to [`same_element`].
struct KeyScratch {
    stamp: Vec<u32>,
    seen: Vec<u32>,
    val: Vec<u32>,
    round: u32,
}

impl KeyScratch {
    fn new(capacity: usize) -> Self {
        KeyScratch {
            stamp: vec![0; capacity],
            seen: vec![0; capacity],
            val: vec![0; capacity],
            round: 0,
        }
    }

    fn same(&mut self, p: u32, a: &[(usize, u32)], b: &[(usize, u32)]) -> bool {
        let m = p * p;
        self.round += 1;
        let r = self.round;
        for &(k, e) in a {
            if self.stamp[k] == r {
                return same_element(p, a.to_vec(), b.to_vec());
            }
            self.stamp[k] = r;
            self.val[k] = e % m;
        }
        let mut equal = a.len() == b.len();
        for &(k, e) in b {
            if self.seen[k] == r {
                return same_element(p, a.to_vec(), b.to_vec());
            }
            self.seen[k] = r;
            if self.stamp[k] != r || self.val[k] != e % m {
                equal = false;
            }
        }
        equal
    }
}

fn check(name: &'static str, r: std::result::Result<(), String>) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: r.is_ok(),
        witness: r.err(),
    }
}

pub fn check_axioms(h: &HopfStructure, mode: BialgebraMode) -> AxiomReport {
    let partners = h.partners();
    let checks = vec![
        check("associativity", check_assoc(h, &partners)),
        check("unit", check_unit(h)),
        check("coassociativity", check_coassoc(h)),
        check("counit", check_counit(h)),
        check("bialgebra", check_bialgebra(h, &partners, mode)),
        check("hopf-cocycle", check_tau(h)),
    ];
    AxiomReport { checks }
}

fn check_assoc(h: &HopfStructure, partners: &[Vec<(u32, u32, u32)>]) -> std::result::Result<(), String> {
    let dim = h.dim;
    let m = h.p() * h.p();
    for u in 0..dim {
        for v in 0..dim {
            // ((uv)z) over z, as a map z -> (target, exponent).
            let mut lhs: Vec<(u32, u32, u32)> = match h.mult[u * dim + v] {
                None => Vec::new(),
                Some((w, e)) => partners[w as usize]
                    .iter()
                    .map(|&(z, q, e2)| (z, q, (e + e2) % m))
                    .collect(),
            };
            let mut rhs: Vec<(u32, u32, u32)> = partners[v]
                .iter()
                .filter_map(|&(z, y, e)| h.mult[u * dim + y as usize].map(|(q, e2)| (z, q, (e + e2) % m)))
                .collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(format!("(u v) z != u (v z) for u={u}, v={v}"));
            }
        }
    }
    Ok(())
}

fn check_unit(h: &HopfStructure) -> std::result::Result<(), String> {
    let size = h.group_size();
    let dim = h.dim;
    for u in 0..dim {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in 0..size {
            if let Some((w, e)) = h.mult[a * dim + u] {
                left.push((w, e));
            }
            if let Some((w, e)) = h.mult[u * dim + a] {
                right.push((w, e));
            }
        }
        let want = vec![(u as u32, 0)];
        if !same_element(h.p(), left, want.clone()) || !same_element(h.p(), right, want) {
            return Err(format!("1·u or u·1 differs from u for u={u}"));
        }
    }
    let mut delta_one = Vec::new();
    for a in 0..size {
        delta_one.extend(h.comult[a].iter().map(|&(x, y, e)| ((x, y), e)));
    }
    let mut one_one = Vec::new();
    for a in 0..size {
        for b in 0..size {
            one_one.push(((a as u32, b as u32), 0));
        }
    }
    if !same_element(h.p(), delta_one, one_one) {
        return Err("Δ(1) != 1⊗1".into());
    }
    let eps_one: u32 = (0..size).map(|a| h.counit[a]).sum();
    if eps_one != 1 {
        return Err("ε(1) != 1".into());
    }
    for u in 0..dim {
        for v in 0..dim {
            let e_uv = h.mult[u * dim + v].map_or(0, |(w, e)| {
                if e == 0 {
                    h.counit[w as usize]
                } else if h.counit[w as usize] == 0 {
                    0
                } else {
                    u32::MAX
                }
            });
            if e_uv != h.counit[u] * h.counit[v] {
                return Err(format!("ε(uv) != ε(u)ε(v) for u={u}, v={v}"));
            }
        }
    }
    Ok(())
}

fn check_coassoc(h: &HopfStructure) -> std::result::Result<(), String> {
    let m = h.p() * h.p();
    let size = h.group_size();
    // Terms of Δ(p_c x̄^i)-shaped sums are p_a x̄^i ⊗ p_b x̄^i ⊗ p_{c−a−b} x̄^i,
    // keyed by (a, b); anything else goes through the exact fallback.
    let mut scratch = KeyScratch::new(size * size);
    let key = |a: u32, b: u32| (a as usize % size) * size + b as usize % size;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for w in 0..h.dim {
        let (deg, c) = (w / size, w % size);
        let off = |x: u32, y: u32, z: u32| {
            [x, y, z].iter().any(|&t| t as usize / size != deg)
                || h.et
                    .add(h.et.add(x as usize % size, y as usize % size), z as usize % size)
                    != c
        };
        lhs.clear();
        rhs.clear();
        let mut mixed = false;
        for &(u, v, e) in &h.comult[w] {
            for &(u1, u2, e2) in &h.comult[u as usize] {
                mixed |= off(u1, u2, v);
                lhs.push(((u1, u2, v), (e + e2) % m));
            }
            for &(v1, v2, e2) in &h.comult[v as usize] {
                mixed |= off(u, v1, v2);
                rhs.push(((u, v1, v2), (e + e2) % m));
            }
        }
        let same = if mixed {
            same_element(h.p(), lhs.clone(), rhs.clone())
        } else {
            let a: Vec<(usize, u32)> = lhs.iter().map(|&((x, y, _), e)| (key(x, y), e)).collect();
            let b: Vec<(usize, u32)> = rhs.iter().map(|&((x, y, _), e)| (key(x, y), e)).collect();
            scratch.same(h.p(), &a, &b)
        };
        if !same {
            return Err(format!("(Δ⊗id)Δ != (id⊗Δ)Δ on basis {w}"));
        }
    }
    Ok(())
}

fn check_counit(h: &HopfStructure) -> std::result::Result<(), String> {
    for w in 0..h.dim {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &(u, v, e) in &h.comult[w] {
            if h.counit[u as usize] == 1 {
                left.push((v, e));
            }
            if h.counit[v as usize] == 1 {
                right.push((u, e));
            }
        }
        let want = vec![(w as u32, 0)];
        if !same_element(h.p(), left, want.clone()) || !same_element(h.p(), right, want) {
            return Err(format!("counit law fails on basis {w}"));
        }
    }
    Ok(())
}

fn check_bialgebra(
    h: &HopfStructure,
    partners: &[Vec<(u32, u32, u32)>],
    mode: BialgebraMode,
) -> std::result::Result<(), String> {
    let dim = h.dim;
    let size = h.group_size();
    let m = h.p() * h.p();
    let vs: Vec<usize> = match mode {
        BialgebraMode::Generators => (0..2 * size).collect(),
        BialgebraMode::Exhaustive => (0..dim).collect(),
    };
    let mut prod = Vec::new();
    let mut want = Vec::new();
    // Index of Δ(v) by first tensor factor.
    let mut by_first: Vec<Vec<(u32, u32)>> = vec![Vec::new(); dim];
    for &v in &vs {
        for list in by_first.iter_mut() {
            list.clear();
        }
        for &(v1, v2, e) in &h.comult[v] {
            by_first[v1 as usize].push((v2, e));
        }
        for u in 0..dim {
            prod.clear();
            want.clear();
            for &(u1, u2, e1) in &h.comult[u] {
                for &(v1, w1, f1) in &partners[u1 as usize] {
                    for &(v2, e2) in &by_first[v1 as usize] {
                        if let Some((w2, f2)) = h.mult[u2 as usize * dim + v2 as usize] {
                            prod.push(((w1, w2), (e1 + e2 + f1 + f2) % m));
                        }
                    }
                }
            }
            if let Some((w, e)) = h.mult[u * dim + v] {
                want.extend(h.comult[w as usize].iter().map(|&(x, y, e2)| ((x, y), (e + e2) % m)));
            }
            if !same_element(h.p(), std::mem::take(&mut prod), std::mem::take(&mut want)) {
                return Err(format!("Δ(uv) != Δ(u)Δ(v) for u={u}, v={v}"));
            }
        }
    }
    Ok(())
}

/// Each `τ_i` is a normalized 2-cocycle and `τ_{i+j} = τ_i + t^i∙τ_j`.
fn check_tau(h: &HopfStructure) -> std::result::Result<(), String> {
    let tau = h.tau_from_tables().map_err(|e| e.to_string())?;
    let p = h.p() as usize;
    for (i, t) in tau.iter().enumerate() {
        if !t.is_normalized() {
            return Err(format!("τ_{i} is not normalized"));
        }
        if let Some((a, b, c)) = t.cocycle_violation(&h.et) {
            return Err(format!("τ_{i} fails the cocycle identity at ({a},{b},{c})"));
        }
    }
    for i in 0..p {
        for j in 0..p {
            let rhs = tau[i].add(&tau[j].act(&h.et, i));
            if tau[(i + j) % p] != rhs {
                return Err(format!("τ_{} != τ_{i} + t^{i}∙τ_{j}", (i + j) % p));
            }
        }
    }
    Ok(())
}

pub fn is_cocommutative(h: &HopfStructure) -> bool {
    h.comult.iter().all(|terms| {
        let a: Vec<_> = terms.iter().map(|&(u, v, e)| ((u, v), e)).collect();
        let b: Vec<_> = terms.iter().map(|&(u, v, e)| ((v, u), e)).collect();
        same_element(h.p(), a, b)
    })
}

/// Whether `Σ_a ζ^{f(a)} p_a x̄^i` is grouplike.
pub fn is_grouplike(h: &HopfStructure, f: &[u32], i: usize) -> bool {
    let size = h.group_size();
    let m = h.p() * h.p();
    let mut delta = Vec::new();
    for a in 0..size {
        for &(u, v, e) in &h.comult[h.basis_index(a, i)] {
            delta.push(((u, v), (f[a] + e) % m));
        }
    }
    let mut square = Vec::new();
    for a in 0..size {
        for b in 0..size {
            let key = (h.basis_index(a, i) as u32, h.basis_index(b, i) as u32);
            square.push((key, (f[a] + f[b]) % m));
        }
    }
    let eps: u32 = (0..size).map(|a| h.counit[h.basis_index(a, i)]).sum();
    eps == 1 && f[0].is_multiple_of(m) && same_element(h.p(), delta, square)
}

/// `τ'_i = τ_i + δ(φ_i∙g)` for `g : G → Z_{p²}` with `φ_p∙g = 0` and `g(0) = 0`.
pub fn shift_by_coboundary(h: &HopfStructure, g: &[u32]) -> Result<HopfStructure> {
    let p = h.p() as usize;
    let m = (p * p) as u32;
    if g.len() != h.group_size() {
        return Err(Error::DimensionMismatch("shift function has wrong length".into()));
    }
    if !g[0].is_multiple_of(m) {
        return Err(Error::NotAdmissible("shift function is not normalized".into()));
    }
    if norm_function(g, m, &h.et, p).iter().any(|&x| x != 0) {
        return Err(Error::NotAdmissible("φ_p∙g is not trivial".into()));
    }
    let tau = h.tau_from_tables()?;
    let shifted: Vec<Cochain2> = (0..p)
        .map(|i| tau[i].add(&coboundary(&norm_function(g, m, &h.et, i), m, &h.et)))
        .collect();
    HopfStructure::from_tau(&h.module, &shifted)
}

/// Random `g` accepted by [`shift_by_coboundary`]: multiples of `p` on fixed
/// points, values summing to zero on each free `⟨t⟩`-orbit.
pub fn random_admissible<R: Rng + ?Sized>(module: &CpModule, rng: &mut R) -> Vec<u32> {
    let et = ElementTables::new(module);
    let p = module.p();
    let m = p * p;
    let mut g = vec![0u32; et.size()];
    let mut seen = vec![false; et.size()];
    seen[0] = true;
    for a in 1..et.size() {
        if seen[a] {
            continue;
        }
        if et.act(1, a) == a {
            seen[a] = true;
            g[a] = p * rng.gen_range(0..p);
            continue;
        }
        let mut sum = 0;
        for j in 0..p as usize {
            let b = et.act(j, a);
            seen[b] = true;
            g[b] = if j + 1 < p as usize {
                rng.gen_range(0..m)
            } else {
                (m - sum) % m
            };
            sum = (sum + g[b]) % m;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfJson {
    pub schema: String,
    pub p: u32,
    pub n: usize,
    pub dim: usize,
    /// Rows of the action matrix `T` of `t` on `G`.
    pub action: Vec<Vec<u32>>,
    /// `[u, v, w, e]`: `u·v = ζ^e w`; omitted pairs multiply to zero.
    pub mult: Vec<[u32; 4]>,
    /// `[w, u, v, e]`: `Δ(w)` contains `ζ^e u ⊗ v`.
    pub comult: Vec<[u32; 4]>,
    pub counit: Vec<u32>,
}

impl HopfStructure {
    pub fn to_json(&self) -> HopfJson {
        let dim = self.dim;
        let mut mult = Vec::new();
        for u in 0..dim {
            for v in 0..dim {
                if let Some((w, e)) = self.mult[u * dim + v] {
                    mult.push([u as u32, v as u32, w, e]);
                }
            }
        }
        let mut comult = Vec::new();
        for (w, terms) in self.comult.iter().enumerate() {
            let mut t = terms.clone();
            t.sort_unstable();
            comult.extend(t.into_iter().map(|(u, v, e)| [w as u32, u, v, e]));
        }
        HopfJson {
            schema: SCHEMA.to_string(),
            p: self.p(),
            n: self.n(),
            dim,
            action: self.module.t().row_vectors(),
            mult,
            comult,
            counit: self.counit.clone(),
        }
    }

    /// Validates and loads an exported structure. The tables are taken as
    /// given; run [`check_axioms`] to test them.
    pub fn from_json(j: &HopfJson) -> Result<Self> {
        if j.schema != SCHEMA {
            return Err(Error::Malformed(format!("unknown schema {:?}", j.schema)));
        }
        let rows: Vec<Vec<i64>> = j.action.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        if rows.len() != j.n || rows.iter().any(|r| r.len() != j.n) {
            return Err(Error::Malformed("action matrix has the wrong shape".into()));
        }
        let t = FpMatrix::from_rows(j.p, &rows)?;
        if j.action.iter().flatten().any(|&x| x >= j.p) {
            return Err(Error::Malformed("action entry not reduced".into()));
        }
        let module = CpModule::new(t)?;
        let et = ElementTables::new(&module);
        let dim = et.size() * j.p as usize;
        if j.dim != dim {
            return Err(Error::Malformed(format!("dim {} but p^(n+1) = {dim}", j.dim)));
        }
        let m = j.p * j.p;
        let mut mult = vec![None; dim * dim];
        for &[u, v, w, e] in &j.mult {
            if u as usize >= dim || v as usize >= dim || w as usize >= dim || e >= m {
                return Err(Error::Malformed(format!("mult entry {:?} out of range", [u, v, w, e])));
            }
            let slot = &mut mult[u as usize * dim + v as usize];
            if slot.is_some() {
                return Err(Error::Malformed(format!("duplicate product ({u}, {v})")));
            }
            *slot = Some((w, e));
        }
        let mut comult = vec![Vec::new(); dim];
        for &[w, u, v, e] in &j.comult {
            if u as usize >= dim || v as usize >= dim || w as usize >= dim || e >= m {
                return Err(Error::Malformed(format!(
                    "comult entry {:?} out of range",
                    [w, u, v, e]
                )));
            }
            comult[w as usize].push((u, v, e));
        }
        if j.counit.len() != dim || j.counit.iter().any(|&x| x > 1) {
            return Err(Error::Malformed("counit must be a 0/1 vector of length dim".into()));
        }
        let h = HopfStructure {
            module,
            et,
            dim,
            mult,
            comult,
            counit: j.counit.clone(),
        };
        h.tau_from_tables()?;
        Ok(h)
    }
}
