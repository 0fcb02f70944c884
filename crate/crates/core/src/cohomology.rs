//! The classifying space `X = Ĝ^{C_p}/N(Ĝ) ⊕ Alt_N(G)` and the cochain
//! machinery linking its points to Hopf 2-cocycles.
//!
//! Scalars in `k•` are exponents of a fixed primitive `p²`-th root of unity,
//! so cochains take values in `Z_{p²}` (or in `Z_p` for plain forms). Characters
//! and alternating forms are written in the dual basis: a character is a row
//! `χ` with `χ(a) = a·χᵀ`; a form is a skew matrix `B` with `β(a,b) = a·B·bᵀ`,
//! or equivalently its coordinates on `e_i*∧e_j*`, `i < j`.

use crate::cp_module::{CpModule, ElementTables, Intertwiner};
use crate::error::{Error, Result};
use crate::linalg::{combine, dot, inv_mod, wedge_pairs, FpMatrix, Subspace};

/// `I + S + … + S^{l-1}` for `1 ≤ l ≤ p`.
pub fn norm_operator(s: &FpMatrix, l: usize) -> Result<FpMatrix> {
    let p = s.p() as usize;
    if !s.is_square() {
        return Err(Error::NotSquare(s.rows(), s.cols()));
    }
    if l == 0 || l > p {
        return Err(Error::OutOfRange(format!("norm length {l} not in 1..={p}")));
    }
    let n = s.rows();
    let mut acc = FpMatrix::zeros(s.p(), n, n);
    let mut pw = FpMatrix::identity(s.p(), n);
    for _ in 0..l {
        acc = acc.add(&pw)?;
        pw = pw.dot(s);
    }
    Ok(acc)
}

/// Alternating bilinear form `β(a,b) = a·B·bᵀ` with values in `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltForm {
    b: FpMatrix,
}

impl AltForm {
    pub fn from_matrix(b: FpMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::NotSquare(b.rows(), b.cols()));
        }
        let p = b.p();
        for i in 0..b.rows() {
            if b.get(i, i) != 0 {
                return Err(Error::Malformed("alternating form with nonzero diagonal".into()));
            }
            for j in 0..i {
                if !(b.get(i, j) + b.get(j, i)).is_multiple_of(p) {
                    return Err(Error::Malformed("form is not skew-symmetric".into()));
                }
            }
        }
        Ok(AltForm { b })
    }

    pub fn zero(p: u32, n: usize) -> Self {
        AltForm {
            b: FpMatrix::zeros(p, n, n),
        }
    }

    /// Form with the given coordinates on `e_i*∧e_j*`.
    pub fn from_wedge(p: u32, n: usize, coords: &[u32]) -> Self {
        let mut b = FpMatrix::zeros(p, n, n);
        for (&(i, j), &c) in wedge_pairs(n).iter().zip(coords) {
            b.set(i, j, c);
            b.set(j, i, (p - c % p) % p);
        }
        AltForm { b }
    }

    pub fn to_wedge(&self) -> Vec<u32> {
        wedge_pairs(self.n())
            .into_iter()
            .map(|(i, j)| self.b.get(i, j))
            .collect()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.b
    }

    pub fn p(&self) -> u32 {
        self.b.p()
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero()
    }

    pub fn eval(&self, a: &[u32], b: &[u32]) -> u32 {
        dot(&self.b.apply(a), b, self.p())
    }
}

/// Function `G × G → Z_m` (m = p or p²) on element codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    modulus: u32,
    size: usize,
    values: Vec<u32>,
}

impl Cochain2 {
    pub fn zero(modulus: u32, size: usize) -> Self {
        Cochain2 {
            modulus,
            size,
            values: vec![0; size * size],
        }
    }

    pub fn from_fn(modulus: u32, size: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut values = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                values.push(f(a, b) % modulus);
            }
        }
        Cochain2 { modulus, size, values }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.values[a * self.size + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: u32) {
        self.values[a * self.size + b] = v % self.modulus;
    }

    pub fn add(&self, o: &Cochain2) -> Cochain2 {
        assert_eq!(self.modulus, o.modulus);
        let m = self.modulus;
        Cochain2 {
            values: self.values.iter().zip(&o.values).map(|(&x, &y)| (x + y) % m).collect(),
            ..*self
        }
    }

    pub fn sub(&self, o: &Cochain2) -> Cochain2 {
        assert_eq!(self.modulus, o.modulus);
        let m = self.modulus;
        Cochain2 {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(&x, &y)| (x + m - y) % m)
                .collect(),
            ..*self
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|a| (0..a).all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.size).all(|a| self.get(0, a) == 0 && self.get(a, 0) == 0)
    }

    /// First triple violating `s(a,b) + s(a+b,c) = s(b,c) + s(a,b+c)`.
    pub fn cocycle_violation(&self, et: &ElementTables) -> Option<(usize, usize, usize)> {
        let m = self.modulus;
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = et.add(a, b);
                let sab = self.get(a, b);
                for c in 0..n {
                    let lhs = sab + self.get(ab, c);
                    let rhs = self.get(b, c) + self.get(a, et.add(b, c));
                    if lhs % m != rhs % m {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_cocycle(&self, et: &ElementTables) -> bool {
        self.cocycle_violation(et).is_none()
    }

    /// `(t^i∙s)(a,b) = s(a◁t^i, b◁t^i)`.
    pub fn act(&self, et: &ElementTables, i: usize) -> Cochain2 {
        let tab = &et.act[i % et.act.len()];
        Cochain2::from_fn(self.modulus, self.size, |a, b| {
            self.get(tab[a] as usize, tab[b] as usize)
        })
    }

    /// `(s.F)(a,b) = s(a·F⁻¹, b·F⁻¹)` for an automorphism `F` of `G`.
    pub fn act_by_matrix(&self, et: &ElementTables, f: &FpMatrix) -> Result<Cochain2> {
        let tab = et.index.action_table(&f.inverse()?);
        Ok(Cochain2::from_fn(self.modulus, self.size, |a, b| {
            self.get(tab[a] as usize, tab[b] as usize)
        }))
    }

    /// `φ_l∙s = Σ_{j<l} t^j∙s`.
    pub fn norm(&self, et: &ElementTables, l: usize) -> Cochain2 {
        let m = self.modulus as u64;
        let mut acc = vec![0u64; self.values.len()];
        for j in 0..l {
            let tab = &et.act[j % et.act.len()];
            for a in 0..self.size {
                let ta = tab[a] as usize;
                for b in 0..self.size {
                    let idx = a * self.size + b;
                    acc[idx] = (acc[idx] + self.get(ta, tab[b] as usize) as u64) % m;
                }
            }
        }
        Cochain2 {
            modulus: self.modulus,
            size: self.size,
            values: acc.into_iter().map(|x| x as u32).collect(),
        }
    }
}

/// `δf(a,b) = f(a) + f(b) − f(a+b)`.
pub fn coboundary(f: &[u32], modulus: u32, et: &ElementTables) -> Cochain2 {
    let m = modulus;
    Cochain2::from_fn(m, et.size(), |a, b| (f[a] % m + f[b] % m + m - f[et.add(a, b)] % m) % m)
}

/// `(φ_l∙f)(a) = Σ_{j<l} f(a◁t^j)`.
pub fn norm_function(f: &[u32], modulus: u32, et: &ElementTables, l: usize) -> Vec<u32> {
    (0..et.size())
        .map(|a| ((0..l).map(|j| f[et.act(j, a)] as u64).sum::<u64>() % modulus as u64) as u32)
        .collect()
}

/// Antisymmetrization `ā(z)(a,b) = z(a,b) − z(b,a)` of a 2-cocycle, returned as
/// a form over `Z_p`. For `Z_{p²}`-valued input the values are divided by `p`.
pub fn antisymmetrize(z: &Cochain2, et: &ElementTables) -> Result<AltForm> {
    let p = et.index.p();
    if let Some((a, b, c)) = z.cocycle_violation(et) {
        return Err(Error::NotCocycle(a, b, c));
    }
    let scale = match z.modulus() {
        m if m == p => 1,
        m if m == p * p => p,
        m => return Err(Error::Malformed(format!("cochain modulus {m} for p = {p}"))),
    };
    let m = z.modulus();
    let d = |a: usize, b: usize| -> Result<u32> {
        let v = (z.get(a, b) + m - z.get(b, a)) % m;
        if !v.is_multiple_of(scale) {
            return Err(Error::Internal("antisymmetrization not p-divisible".into()));
        }
        Ok(v / scale)
    };
    let n = et.index.n();
    let unit = |k: usize| {
        let mut v = vec![0u32; n];
        v[k] = 1;
        et.index.encode(&v)
    };
    let mut b = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, d(unit(i), unit(j))?);
        }
    }
    let form = AltForm::from_matrix(b)?;
    for a in 0..et.size() {
        let va = et.index.decode(a);
        let row = form.matrix().apply(&va);
        for c in 0..et.size() {
            if d(a, c)? != dot(&row, &et.index.decode(c), p) {
                return Err(Error::Internal("antisymmetrization is not bilinear".into()));
            }
        }
    }
    Ok(form)
}

/// `s(a,b) = Σ_{i<j} a_i b_j B_ij`, with values in `Z_p`; `ā(s) = β`.
pub fn upper_triangular_lift(beta: &AltForm, et: &ElementTables) -> Cochain2 {
    let p = beta.p();
    let n = beta.n();
    let mut upper = FpMatrix::zeros(p, n, n);
    for (i, j) in wedge_pairs(n) {
        upper.set(i, j, beta.matrix().get(i, j));
    }
    let decoded: Vec<Vec<u32>> = (0..et.size()).map(|c| et.index.decode(c)).collect();
    let rows: Vec<Vec<u32>> = decoded.iter().map(|a| upper.apply(a)).collect();
    Cochain2::from_fn(p, et.size(), |a, b| dot(&rows[a], &decoded[b], p))
}

/// Point `(χ̄, β)` of the classifying space, in the coordinates of its bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassPoint {
    pub chi: Vec<u32>,
    pub beta: Vec<u32>,
}

impl ClassPoint {
    pub fn is_beta_zero(&self) -> bool {
        self.beta.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ClassSpace {
    module: CpModule,
    dual: FpMatrix,
    wedge: FpMatrix,
    fixed: Subspace,
    norm_image: Subspace,
    chi_basis: Vec<Vec<u32>>,
    chi_frame: FpMatrix,
    alt_part: Subspace,
}

impl ClassSpace {
    pub fn build(module: &CpModule) -> Self {
        let p = module.p();
        let n = module.n();
        let dual = module.dual_action();
        let wedge = dual.wedge_square().expect("square");
        let fixed = dual.minus_identity().kernel();
        let norm_image = norm_operator(&dual, p as usize).expect("valid norm").image();
        let chi_basis = norm_image.complement_in(&fixed);
        let mut frame = chi_basis.clone();
        frame.extend(norm_image.basis().iter().cloned());
        let chi_frame = FpMatrix::from_vectors(p, n, &frame);
        let alt_part = norm_operator(&wedge, p as usize).expect("valid norm").kernel();
        ClassSpace {
            module: module.clone(),
            dual,
            wedge,
            fixed,
            norm_image,
            chi_basis,
            chi_frame,
            alt_part,
        }
    }

    pub fn module(&self) -> &CpModule {
        &self.module
    }

    pub fn p(&self) -> u32 {
        self.module.p()
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    /// `Tᵀ`, the action of `t` on `Ĝ`.
    pub fn dual_action(&self) -> &FpMatrix {
        &self.dual
    }

    /// `Tᵀ∧Tᵀ`, the action of `t` on `Ĝ∧Ĝ`.
    pub fn wedge_action(&self) -> &FpMatrix {
        &self.wedge
    }

    pub fn fixed_characters(&self) -> &Subspace {
        &self.fixed
    }

    pub fn norm_image(&self) -> &Subspace {
        &self.norm_image
    }

    pub fn chi_basis(&self) -> &[Vec<u32>] {
        &self.chi_basis
    }

    pub fn alt_part(&self) -> &Subspace {
        &self.alt_part
    }

    pub fn chi_dim(&self) -> usize {
        self.chi_basis.len()
    }

    pub fn alt_dim(&self) -> usize {
        self.alt_part.dim()
    }

    pub fn dim(&self) -> usize {
        self.chi_dim() + self.alt_dim()
    }

    pub fn size(&self) -> u128 {
        (self.p() as u128).pow(self.dim() as u32)
    }

    /// Full character `Σ chi_k·c_k` of a point.
    pub fn character(&self, pt: &ClassPoint) -> Vec<u32> {
        combine(&pt.chi, &self.chi_basis, self.n(), self.p())
    }

    /// Wedge coordinates of the point's form.
    pub fn beta_wedge(&self, pt: &ClassPoint) -> Vec<u32> {
        combine(&pt.beta, self.alt_part.basis(), self.alt_part.ambient(), self.p())
    }

    pub fn beta_form(&self, pt: &ClassPoint) -> AltForm {
        AltForm::from_wedge(self.p(), self.n(), &self.beta_wedge(pt))
    }

    /// Coordinates of a fixed character modulo `N(Ĝ)`.
    pub fn chi_coords(&self, chi: &[u32]) -> Result<Vec<u32>> {
        let x = self.chi_frame.solve_left(chi).ok_or(Error::NotFixed)?;
        Ok(x[..self.chi_dim()].to_vec())
    }

    pub fn beta_coords(&self, wedge: &[u32]) -> Result<Vec<u32>> {
        self.alt_part
            .coords(wedge)
            .ok_or_else(|| Error::NotInSubspace("form outside Alt_N".into()))
    }

    pub fn encode(&self, pt: &ClassPoint) -> u64 {
        let p = self.p() as u64;
        pt.chi
            .iter()
            .chain(&pt.beta)
            .fold(0, |acc, &x| acc * p + (x as u64 % p))
    }

    pub fn decode(&self, mut code: u64) -> ClassPoint {
        let p = self.p() as u64;
        let mut digits = vec![0u32; self.dim()];
        for d in digits.iter_mut().rev() {
            *d = (code % p) as u32;
            code /= p;
        }
        let beta = digits.split_off(self.chi_dim());
        ClassPoint { chi: digits, beta }
    }

    pub fn zero_point(&self) -> ClassPoint {
        ClassPoint {
            chi: vec![0; self.chi_dim()],
            beta: vec![0; self.alt_dim()],
        }
    }

    pub fn check_point(&self, pt: &ClassPoint) -> Result<()> {
        if pt.chi.len() != self.chi_dim() || pt.beta.len() != self.alt_dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has {}+{} coordinates, space has {}+{}",
                pt.chi.len(),
                pt.beta.len(),
                self.chi_dim(),
                self.alt_dim()
            )));
        }
        if pt.chi.iter().chain(&pt.beta).any(|&x| x >= self.p()) {
            return Err(Error::OutOfRange("point coordinate not reduced mod p".into()));
        }
        Ok(())
    }
}

/// Admissible lift of `β ∈ Alt_N` with values in `Z_{p²}`: `s = p·((p+1)/2)·β`.
pub fn lift_beta_to_cocycle(space: &ClassSpace, beta: &AltForm, et: &ElementTables) -> Result<Cochain2> {
    let p = space.p();
    if !space.alt_part().contains(&beta.to_wedge()) {
        return Err(Error::NotInSubspace("form outside Alt_N".into()));
    }
    let half = p.div_ceil(2);
    let decoded: Vec<Vec<u32>> = (0..et.size()).map(|c| et.index.decode(c)).collect();
    let rows: Vec<Vec<u32>> = decoded.iter().map(|a| beta.matrix().apply(a)).collect();
    Ok(Cochain2::from_fn(p * p, et.size(), |a, b| {
        let v = dot(&rows[a], &decoded[b], p) as u64 * half as u64 % p as u64;
        (v as u32) * p
    }))
}

/// A function `f : G → Z_{p²}` with `φ_p∙f = χ` (χ embedded as `p·χ`).
pub fn lift_chi_to_function(space: &ClassSpace, chi: &[u32], et: &ElementTables) -> Result<Vec<u32>> {
    let p = space.p();
    if !space.fixed_characters().contains(chi) {
        return Err(Error::NotFixed);
    }
    let size = et.size();
    let mut f = vec![0u32; size];
    let mut seen = vec![false; size];
    for a in 0..size {
        if seen[a] {
            continue;
        }
        let value = dot(&et.index.decode(a), chi, p);
        if et.act(1, a) == a {
            f[a] = value;
            seen[a] = true;
        } else {
            f[a] = value * p;
            for j in 0..p as usize {
                seen[et.act(j, a)] = true;
            }
        }
    }
    Ok(f)
}

/// `s = lift(β) + δf` with `φ_p∙f = χ`.
pub fn assemble_cocycle(space: &ClassSpace, pt: &ClassPoint, et: &ElementTables) -> Result<Cochain2> {
    space.check_point(pt)?;
    let p = space.p();
    let beta = space.beta_form(pt);
    let s_beta = lift_beta_to_cocycle(space, &beta, et)?;
    let f = lift_chi_to_function(space, &space.character(pt), et)?;
    Ok(s_beta.add(&coboundary(&f, p * p, et)))
}

/// Whether `φ_p∙s = 0`.
pub fn is_admissible(s: &Cochain2, et: &ElementTables) -> bool {
    s.norm(et, et.index.p() as usize).is_zero()
}

/// Components `τ(t^i) = φ_i∙s` for `i = 0..=p`.
pub fn tau_components(s: &Cochain2, et: &ElementTables) -> Result<Vec<Cochain2>> {
    let p = et.index.p() as usize;
    let mut out = Vec::with_capacity(p + 1);
    let mut acc = Cochain2::zero(s.modulus(), s.size());
    out.push(acc.clone());
    for i in 0..p {
        acc = acc.add(&s.act(et, i));
        out.push(acc.clone());
    }
    if !out[p].is_zero() {
        return Err(Error::NotAdmissible("φ_p∙s is not trivial".into()));
    }
    Ok(out)
}

/// Solves `δf = r`; `None` if `r` is not a coboundary. The value on a basis
/// vector `e` is pinned down by `f(p·e) = 0`, i.e. `p·f(e) = Σ_{i<p} r(i·e, e)`.
pub fn solve_coboundary(r: &Cochain2, et: &ElementTables) -> Option<Vec<u32>> {
    let m = r.modulus();
    let ix = &et.index;
    let p = ix.p() as usize;
    let size = et.size();
    let mut f = vec![0u32; size];
    for a in 1..size {
        // Peel off one unit of the least significant nonzero digit.
        let mut place = 1;
        while (a / place) % p == 0 {
            place *= p;
        }
        let prev = a - place;
        if prev == 0 {
            let c = (1..p).map(|i| r.get(i * place, place) as u64).sum::<u64>() % m as u64;
            let c = c as u32;
            f[a] = if m as usize == p * p {
                if !c.is_multiple_of(p as u32) {
                    return None;
                }
                c / p as u32
            } else {
                if c != 0 {
                    return None;
                }
                0
            };
            continue;
        }
        f[a] = (f[prev] + f[place] + m - r.get(prev, place)) % m;
    }
    (coboundary(&f, m, et) == *r).then_some(f)
}

/// Recovers the class point of an admissible `Z_{p²}`-valued cocycle.
pub fn recover_point(space: &ClassSpace, s: &Cochain2, et: &ElementTables) -> Result<ClassPoint> {
    let p = space.p();
    if s.modulus() != p * p {
        return Err(Error::Malformed("expected Z_{p²} values".into()));
    }
    if !s.is_normalized() {
        return Err(Error::Malformed("cocycle is not normalized".into()));
    }
    if !is_admissible(s, et) {
        return Err(Error::NotAdmissible("φ_p∙s is not trivial".into()));
    }
    let beta = antisymmetrize(s, et)?;
    let beta_coords = space.beta_coords(&beta.to_wedge())?;
    let r = s.sub(&lift_beta_to_cocycle(space, &beta, et)?);
    let f =
        solve_coboundary(&r, et).ok_or_else(|| Error::NotAdmissible("symmetric part is not a coboundary".into()))?;
    let g = norm_function(&f, p * p, et, p as usize);
    let n = space.n();
    let mut chi = vec![0u32; n];
    for (k, c) in chi.iter_mut().enumerate() {
        let mut e = vec![0u32; n];
        e[k] = 1;
        let v = g[et.index.encode(&e)];
        if !v.is_multiple_of(p) {
            return Err(Error::Internal("norm of f is not p-divisible".into()));
        }
        *c = v / p;
    }
    for a in 0..et.size() {
        if g[a] != dot(&et.index.decode(a), &chi, p) * p {
            return Err(Error::Internal("norm of f is not a character".into()));
        }
    }
    Ok(ClassPoint {
        chi: space.chi_coords(&chi)?,
        beta: beta_coords,
    })
}

/// `s.ω = (φ_l∙s).λ` with `l = k⁻¹ mod p`.
pub fn act_cocycle_by_omega(s: &Cochain2, it: &Intertwiner, et: &ElementTables) -> Result<Cochain2> {
    let p = et.index.p();
    let l = inv_mod(it.k, p).ok_or(Error::NotAUnit(it.k, p))?;
    s.norm(et, l as usize).act_by_matrix(et, &it.lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cp_module::BlockProfile;

    fn module(p: u32, m: &[usize]) -> CpModule {
        CpModule::from_blocks(&BlockProfile::new(p, m).unwrap())
    }

    #[test]
    fn norm_operator_basics() {
        let id = FpMatrix::identity(5, 3);
        assert!(norm_operator(&id, 5).unwrap().is_zero());
        assert_eq!(norm_operator(&id, 3).unwrap(), id.scale(3));
        assert!(norm_operator(&id, 0).is_err());
        assert!(norm_operator(&id, 6).is_err());
        let m = module(3, &[0, 0, 1]);
        let s = m.dual_action();
        let nrm = norm_operator(&s, 3).unwrap();
        let sq = s.minus_identity().pow(2);
        assert_eq!(nrm, sq);
        assert_eq!(nrm.rank(), 1);
    }

    #[test]
    fn class_space_dims() {
        for &p in &[3, 5, 7] {
            let sp = ClassSpace::build(&CpModule::trivial(p, 3).unwrap());
            assert_eq!((sp.chi_dim(), sp.alt_dim()), (3, 3));
            let sp = ClassSpace::build(&module(p, &[1, 1]));
            assert_eq!((sp.chi_dim(), sp.alt_dim()), (2, 3));
            let sp = ClassSpace::build(&module(p, &[0, 0, 1]));
            let want = if p == 3 { (0, 2) } else { (1, 3) };
            assert_eq!((sp.chi_dim(), sp.alt_dim()), want);
        }
    }

    #[test]
    fn point_codes_roundtrip() {
        let sp = ClassSpace::build(&module(5, &[1, 1]));
        for code in [0u64, 1, 17, 3124] {
            assert_eq!(sp.encode(&sp.decode(code)), code);
        }
    }

    #[test]
    fn antisymmetrize_examples() {
        let m = CpModule::trivial(3, 2).unwrap();
        let et = ElementTables::new(&m);
        let sym = Cochain2::from_fn(3, et.size(), |a, b| {
            let (x, y) = (et.index.decode(a), et.index.decode(b));
            (x[0] * y[0] + x[1] * y[1]) % 3
        });
        assert!(antisymmetrize(&sym, &et).unwrap().is_zero());
        let beta = AltForm::from_wedge(3, 2, &[1]);
        let s = upper_triangular_lift(&beta, &et);
        assert_eq!(antisymmetrize(&s, &et).unwrap(), beta);
        let mut bad = s.clone();
        bad.set(1, 1, 2);
        assert!(matches!(antisymmetrize(&bad, &et), Err(Error::NotCocycle(..))));
    }

    #[test]
    fn tau_components_ends() {
        let m = module(3, &[1, 1]);
        let sp = ClassSpace::build(&m);
        let et = ElementTables::new(&m);
        let pt = ClassPoint {
            chi: vec![1, 2],
            beta: vec![1, 0, 2],
        };
        let s = assemble_cocycle(&sp, &pt, &et).unwrap();
        let tau = tau_components(&s, &et).unwrap();
        assert_eq!(tau.len(), 4);
        assert!(tau[0].is_zero());
        assert_eq!(tau[1], s);
        assert!(tau[3].is_zero());
        assert_eq!(recover_point(&sp, &s, &et).unwrap(), pt);
    }

    #[test]
    fn chi_lift_rejects_unfixed() {
        let m = module(3, &[0, 1]);
        let sp = ClassSpace::build(&m);
        let et = ElementTables::new(&m);
        assert_eq!(lift_chi_to_function(&sp, &[0, 1], &et), Err(Error::NotFixed));
        assert!(lift_chi_to_function(&sp, &[1, 0], &et).is_ok());
    }
}
