//! Symmetry groups `A(◁)` and `Γ(◁)` acting on the classifying space, and
//! orbit enumeration.
//!
//! `A(◁)` is the centralizer of `T`. In a Jordan basis it is the unit group of
//! `End(⊕ R_l^{m_l})`, a product of `GL(m_l, p)` factors with a unipotent
//! radical, and is generated by explicit Levi and radical generators.

use crate::cohomology::{norm_operator, ClassPoint, ClassSpace};
use crate::cp_module::{BlockProfile, CpModule, Intertwiner};
use crate::error::{Error, Result};
use crate::linalg::{inv_mod, primitive_root, FpMatrix, Subspace};

/// `|GL(m, p)|`.
pub fn gl_order(m: usize, p: u32) -> u128 {
    let q = p as u128;
    let qm = q.pow(m as u32);
    (0..m).map(|i| qm - q.pow(i as u32)).product()
}

/// `|A(◁)| = p^{dim E − Σ m_l²} · Π |GL(m_l, p)|` with `dim E = Σ min(l_i, l_j)`.
pub fn aut_order(profile: &BlockProfile) -> u128 {
    let sizes = profile.block_sizes();
    let dim_e: usize = sizes.iter().flat_map(|&a| sizes.iter().map(move |&b| a.min(b))).sum();
    let m = profile.multiplicities();
    let semisimple: usize = m.iter().map(|&c| c * c).sum();
    let p = profile.p();
    let gl: u128 = m.iter().map(|&c| gl_order(c, p)).product();
    gl * (p as u128).pow((dim_e - semisimple) as u32)
}

/// Map of the Jordan block `i` into block `j` sending chain element `s` to
/// chain element `t + s`.
fn block_hom(p: u32, n: usize, sizes: &[usize], offs: &[usize], i: usize, j: usize, t: usize) -> FpMatrix {
    let mut x = FpMatrix::zeros(p, n, n);
    for s in 0..sizes[i] {
        if t + s < sizes[j] {
            x.set(offs[i] + s, offs[j] + t + s, 1);
        }
    }
    x
}

/// Generators of `A(◁)`.
pub fn aut_generators(module: &CpModule) -> Vec<FpMatrix> {
    let (p, n) = (module.p(), module.n());
    let jb = module.jordan_basis();
    let sizes = jb.profile.block_sizes();
    let mut offs = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &l in &sizes {
        offs.push(acc);
        acc += l;
    }
    let id = FpMatrix::identity(p, n);
    let zeta = primitive_root(p);
    let mut gens = Vec::new();

    // Levi factor: GL(m_l) on the copies of R_l.
    for l in 1..=p as usize {
        let copies: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] == l).collect();
        if copies.is_empty() {
            continue;
        }
        if p > 2 && zeta != 1 {
            let e = block_hom(p, n, &sizes, &offs, copies[0], copies[0], 0);
            gens.push(id.add(&e.scale(zeta as i64 - 1)).unwrap());
        }
        for &a in &copies {
            for &b in &copies {
                if a != b {
                    gens.push(id.add(&block_hom(p, n, &sizes, &offs, a, b, 0)).unwrap());
                }
            }
        }
    }

    // Unipotent radical: 1 + b for a basis adapted to the powers of rad.
    let mut rad = Vec::new();
    for i in 0..sizes.len() {
        for j in 0..sizes.len() {
            let lo = sizes[j].saturating_sub(sizes[i]);
            for t in lo..sizes[j] {
                if sizes[i] != sizes[j] || t >= 1 {
                    rad.push(block_hom(p, n, &sizes, &offs, i, j, t));
                }
            }
        }
    }
    let flat = |ms: &[FpMatrix]| -> Subspace {
        let v: Vec<Vec<u32>> = ms.iter().map(|m| m.data().to_vec()).collect();
        Subspace::from_vectors(p, n * n, &v)
    };
    let unflat = |v: &[u32]| FpMatrix::from_flat(p, n, n, v.to_vec()).unwrap();
    let mut powers = vec![flat(&rad)];
    while powers.last().unwrap().dim() > 0 {
        let last = powers.last().unwrap();
        let mut prods = Vec::new();
        for x in last.basis() {
            let xm = unflat(x);
            for b in &rad {
                prods.push(xm.dot(b));
            }
        }
        powers.push(flat(&prods));
    }
    for k in (0..powers.len() - 1).rev() {
        for v in powers[k + 1].complement_in(&powers[k]) {
            gens.push(id.add(&unflat(&v)).unwrap());
        }
    }

    let pinv = jb.pmat.inverse().expect("Jordan basis is invertible");
    gens.into_iter().map(|x| pinv.dot(&x).dot(&jb.pmat)).collect()
}

/// Every invertible `F` with `F·T = T·F`, by enumerating the centralizer.
pub fn enumerate_automorphisms(module: &CpModule, cap: u128) -> Result<Vec<FpMatrix>> {
    let (p, n) = (module.p(), module.n());
    let space = module.intertwiner_space(module)?;
    let d = space.dim();
    let needed = (p as u128).pow(d as u32);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "automorphism enumeration".into(),
            needed,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; d];
    loop {
        let flat = crate::linalg::combine(&coeffs, space.basis(), n * n, p);
        let f = FpMatrix::from_flat(p, n, n, flat)?;
        if f.determinant()? != 0 {
            out.push(f);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Linear action on point coordinates, `chi ↦ chi·chi_map`, `beta ↦ beta·alt_map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAction {
    pub chi_map: FpMatrix,
    pub alt_map: FpMatrix,
}

impl PointAction {
    pub fn identity(space: &ClassSpace) -> Self {
        PointAction {
            chi_map: FpMatrix::identity(space.p(), space.chi_dim()),
            alt_map: FpMatrix::identity(space.p(), space.alt_dim()),
        }
    }

    /// Restricts linear maps on `Ĝ` and `Ĝ∧Ĝ` to the two factors of `X`.
    pub fn restrict(space: &ClassSpace, on_chars: &FpMatrix, on_wedge: &FpMatrix) -> Result<Self> {
        let p = space.p();
        let chi_rows = space
            .chi_basis()
            .iter()
            .map(|c| space.chi_coords(&on_chars.apply(c)))
            .collect::<Result<Vec<_>>>()?;
        let alt_rows = space
            .alt_part()
            .basis()
            .iter()
            .map(|b| space.beta_coords(&on_wedge.apply(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointAction {
            chi_map: FpMatrix::from_vectors(p, space.chi_dim(), &chi_rows),
            alt_map: FpMatrix::from_vectors(p, space.alt_dim(), &alt_rows),
        })
    }

    pub fn apply(&self, pt: &ClassPoint) -> ClassPoint {
        ClassPoint {
            chi: self.chi_map.apply(&pt.chi),
            beta: self.alt_map.apply(&pt.beta),
        }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &PointAction) -> PointAction {
        PointAction {
            chi_map: self.chi_map.dot(&other.chi_map),
            alt_map: self.alt_map.dot(&other.alt_map),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.chi_map.rank() == self.chi_map.rows() && self.alt_map.rank() == self.alt_map.rows()
    }
}

/// Action of `φ ∈ A(◁)`: characters by `(F⁻¹)ᵀ`, forms by its wedge square.
pub fn point_action_of_aut(space: &ClassSpace, f: &FpMatrix) -> Result<PointAction> {
    let t = space.module().t();
    if f.dot(t) != t.dot(f) {
        return Err(Error::InvalidAction("matrix does not commute with T".into()));
    }
    let m = f.inverse()?.transpose();
    PointAction::restrict(space, &m, &m.wedge_square()?)
}

/// Action of `ω_k`: `φ_l` (with `l = k⁻¹`) followed by the intertwiner `λ_k`.
pub fn point_action_of_omega(space: &ClassSpace, it: &Intertwiner) -> Result<PointAction> {
    let p = space.p();
    if !it.is_valid_for(space.module()) {
        return Err(Error::InvalidAction(format!("no valid intertwiner for k = {}", it.k)));
    }
    let l = inv_mod(it.k, p).ok_or(Error::NotAUnit(it.k, p))? as usize;
    let m = it.lambda.inverse()?.transpose();
    let on_chars = norm_operator(space.dual_action(), l)?.dot(&m);
    let on_wedge = norm_operator(space.wedge_action(), l)?.dot(&m.wedge_square()?);
    PointAction::restrict(space, &on_chars, &on_wedge)
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    module: CpModule,
    profile: BlockProfile,
    aut_order: u128,
    aut_gens: Vec<FpMatrix>,
    /// `twists[k-1]` is the chosen `λ_k`, `k = 1..p`.
    twists: Vec<Intertwiner>,
    primitive: u32,
}

impl SymmetryGroup {
    /// Generator description of `A(◁)` together with `λ_k` for every `k`.
    /// Fails if some twist has no intertwiner.
    pub fn build(module: &CpModule) -> Result<Self> {
        let p = module.p();
        let profile = module.block_profile();
        let mut twists = Vec::with_capacity(p as usize - 1);
        for k in 1..p {
            let it = module
                .twist_intertwiner(k)?
                .ok_or_else(|| Error::Internal(format!("twist by {k} has no intertwiner")))?;
            twists.push(it);
        }
        Ok(SymmetryGroup {
            module: module.clone(),
            aut_order: aut_order(&profile),
            profile,
            aut_gens: aut_generators(module),
            twists,
            primitive: primitive_root(p),
        })
    }

    pub fn module(&self) -> &CpModule {
        &self.module
    }

    pub fn profile(&self) -> &BlockProfile {
        &self.profile
    }

    pub fn aut_order(&self) -> u128 {
        self.aut_order
    }

    pub fn aut_generators(&self) -> &[FpMatrix] {
        &self.aut_gens
    }

    /// The twists `k` admitting an intertwiner.
    pub fn c_group(&self) -> Vec<u32> {
        self.twists.iter().map(|it| it.k).collect()
    }

    pub fn gamma_order(&self) -> u128 {
        self.aut_order * self.twists.len() as u128
    }

    pub fn intertwiner(&self, k: u32) -> Option<&Intertwiner> {
        let k = k % self.module.p();
        (k != 0).then(|| &self.twists[k as usize - 1])
    }

    pub fn twists(&self) -> &[Intertwiner] {
        &self.twists
    }

    pub fn primitive_root(&self) -> u32 {
        self.primitive
    }

    pub fn aut_actions(&self, space: &ClassSpace) -> Result<Vec<PointAction>> {
        self.aut_gens.iter().map(|f| point_action_of_aut(space, f)).collect()
    }

    /// Generators of `Γ(◁)`: those of `A(◁)` plus `ω_g` for a primitive root `g`.
    pub fn gamma_actions(&self, space: &ClassSpace) -> Result<Vec<PointAction>> {
        let mut v = self.aut_actions(space)?;
        v.push(point_action_of_omega(space, self.intertwiner(self.primitive).unwrap())?);
        Ok(v)
    }

    /// `A(◁)` generators plus every `ω_k`.
    pub fn gamma_actions_all_twists(&self, space: &ClassSpace) -> Result<Vec<PointAction>> {
        let mut v = self.aut_actions(space)?;
        for it in &self.twists {
            v.push(point_action_of_omega(space, it)?);
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    Full,
    BetaZero,
    BetaNonzero,
}

/// Orbit decomposition of one slice of `X`.
#[derive(Clone, Debug)]
pub struct Partition {
    pub slice: Slice,
    /// Orbit index of each point code, `u32::MAX` outside the slice.
    pub ids: Vec<u32>,
    /// Lexicographically least point code of each orbit.
    pub reps: Vec<u64>,
    pub sizes: Vec<u64>,
}

impl Partition {
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn points(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

/// Permutation of point codes induced by one generator.
struct CodePerm {
    chi: Vec<u32>,
    alt: Vec<u32>,
}

fn digit_table(m: &FpMatrix) -> Vec<u32> {
    let p = m.p() as usize;
    let d = m.rows();
    let size = p.pow(d as u32);
    let mut out = Vec::with_capacity(size);
    let mut digits = vec![0u32; d];
    for code in 0..size {
        let mut c = code;
        for x in digits.iter_mut().rev() {
            *x = (c % p) as u32;
            c /= p;
        }
        let img = m.apply(&digits);
        out.push(img.iter().fold(0u32, |acc, &x| acc * p as u32 + x));
    }
    out
}

/// Orbits of the group generated by `gens` on a slice of `X`, by breadth-first
/// search over a flat visited array. `cap` bounds the number of points.
pub fn orbit_partition(space: &ClassSpace, gens: &[PointAction], slice: Slice, cap: u128) -> Result<Partition> {
    let total = space.size();
    if total > cap || total > u32::MAX as u128 {
        return Err(Error::CapExceeded {
            what: "orbit enumeration points".into(),
            needed: total,
            cap: cap.min(u32::MAX as u128),
        });
    }
    let p = space.p() as u64;
    let alt_size = p.pow(space.alt_dim() as u32);
    let perms: Vec<CodePerm> = gens
        .iter()
        .map(|g| CodePerm {
            chi: digit_table(&g.chi_map),
            alt: digit_table(&g.alt_map),
        })
        .collect();
    let in_slice = |code: u64| -> bool {
        match slice {
            Slice::Full => true,
            Slice::BetaZero => code.is_multiple_of(alt_size),
            Slice::BetaNonzero => !code.is_multiple_of(alt_size),
        }
    };
    let total = total as usize;
    let mut ids = vec![u32::MAX; total];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue: Vec<u32> = Vec::new();
    let step = if slice == Slice::BetaZero { alt_size as usize } else { 1 };
    let mut start = 0usize;
    while start < total {
        let code = start;
        start += step;
        if ids[code] != u32::MAX || !in_slice(code as u64) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(code as u64);
        ids[code] = id;
        queue.clear();
        queue.push(code as u32);
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head] as u64;
            head += 1;
            let (hi, lo) = ((c / alt_size) as usize, (c % alt_size) as usize);
            for g in &perms {
                let img = g.chi[hi] as u64 * alt_size + g.alt[lo] as u64;
                let slot = &mut ids[img as usize];
                if *slot == u32::MAX {
                    if !in_slice(img) {
                        return Err(Error::Internal(format!(
                            "generator maps point {c} out of the slice to {img}"
                        )));
                    }
                    *slot = id;
                    queue.push(img as u32);
                }
            }
        }
        sizes.push(queue.len() as u64);
    }
    Ok(Partition {
        slice,
        ids,
        reps,
        sizes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub slice: Slice,
    pub total_points: u64,
    pub orbit_count_beta_zero: usize,
    pub orbit_count_beta_nonzero: usize,
    pub representatives: Vec<ClassPoint>,
    pub sizes: Vec<u64>,
}

/// Orbits on a slice: `A(◁)` on the β=0 slice, `Γ(◁)` otherwise.
pub fn enumerate_orbits(space: &ClassSpace, group: &SymmetryGroup, slice: Slice, cap: u128) -> Result<OrbitReport> {
    let gens = match slice {
        Slice::BetaZero => group.aut_actions(space)?,
        _ => group.gamma_actions(space)?,
    };
    let part = orbit_partition(space, &gens, slice, cap)?;
    let reps: Vec<ClassPoint> = part.reps.iter().map(|&c| space.decode(c)).collect();
    let zero = reps.iter().filter(|r| r.is_beta_zero()).count();
    Ok(OrbitReport {
        slice,
        total_points: part.points(),
        orbit_count_beta_zero: zero,
        orbit_count_beta_nonzero: reps.len() - zero,
        representatives: reps,
        sizes: part.sizes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoclassCount {
    pub cocommutative: usize,
    pub noncocommutative: usize,
    pub total: usize,
}

/// Cocommutative classes are `A`-orbits on the β=0 slice, the rest are
/// `Γ`-orbits on β≠0 points.
pub fn isoclass_count_for(module: &CpModule, cap: u128) -> Result<IsoclassCount> {
    let space = ClassSpace::build(module);
    let group = SymmetryGroup::build(module)?;
    let coc = enumerate_orbits(&space, &group, Slice::BetaZero, cap)?;
    let non = enumerate_orbits(&space, &group, Slice::BetaNonzero, cap)?;
    let cocommutative = coc.representatives.len();
    let noncocommutative = non.representatives.len();
    Ok(IsoclassCount {
        cocommutative,
        noncocommutative,
        total: cocommutative + noncocommutative,
    })
}

pub fn isoclass_count(profile: &BlockProfile, cap: u128) -> Result<IsoclassCount> {
    isoclass_count_for(&CpModule::from_blocks(profile), cap)
}
