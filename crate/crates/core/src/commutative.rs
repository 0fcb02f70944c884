//! Commutative extensions (trivial action): orbits of `GL(n, p)` on pairs
//! `(χ, β)` are labelled by the width of `β`, whether `χ` vanishes, and
//! whether `rad β ⊆ ker χ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cohomology::{assemble_cocycle, AltForm, ClassPoint, ClassSpace};
use crate::cp_module::ElementTables;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{dot, inv_mod, vec_add, vec_scale, wedge_pairs, Subspace};

/// Canonical orbit label `(width, χ = 0, rad β ⊆ K_χ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub width: usize,
    pub chi_zero: bool,
    pub rad_in_kernel: bool,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chi = if self.chi_zero { "chi=0" } else { "chi!=0" };
        let rad = if self.rad_in_kernel { "rad<=ker" } else { "rad!<=ker" };
        write!(f, "w={} {} {}", self.width, chi, rad)
    }
}

/// `{a : β(a, ·) = 0}`.
pub fn radical(beta: &AltForm) -> Subspace {
    beta.matrix().kernel()
}

pub fn width(beta: &AltForm) -> usize {
    beta.matrix().rank() / 2
}

fn label(n: usize, w: usize, chi: &[u32], rad: &Subspace) -> OrbitLabel {
    let p = rad.p();
    let chi_zero = chi.iter().all(|&x| x == 0);
    let rad_in_kernel = chi_zero || 2 * w == n || rad.basis().iter().all(|v| dot(v, chi, p) == 0);
    OrbitLabel {
        width: w,
        chi_zero,
        rad_in_kernel,
    }
}

pub fn classify_pair(chi: &[u32], beta: &AltForm) -> OrbitLabel {
    label(beta.n(), width(beta), chi, &radical(beta))
}

/// `⌊(3n+2)/2⌋`.
pub fn commutative_isoclass_count(n: usize) -> usize {
    (3 * n + 2) / 2
}

/// Labels of every pair in `Ĝ ⊕ Alt(G)` with multiplicities.
pub fn enumerate_labels(p: u32, n: usize, cap: u128) -> Result<BTreeMap<OrbitLabel, u64>> {
    let dw = n * n.saturating_sub(1) / 2;
    let total = (p as u128).pow((n + dw) as u32);
    if total > cap {
        return Err(Error::CapExceeded {
            what: "label enumeration".into(),
            needed: total,
            cap,
        });
    }
    let chis = all_vectors(p, n);
    let mut out = BTreeMap::new();
    for coords in all_vectors(p, dw) {
        let beta = AltForm::from_wedge(p, n, &coords);
        let w = width(&beta);
        let rad = radical(&beta);
        for chi in &chis {
            *out.entry(label(n, w, chi, &rad)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

fn all_vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let size = (p as usize).pow(d as u32);
    (0..size)
        .map(|mut c| {
            let mut v = vec![0u32; d];
            for x in v.iter_mut().rev() {
                *x = (c % p as usize) as u32;
                c /= p as usize;
            }
            v
        })
        .collect()
}

/// Hyperbolic pairs `(u_i, v_i)` with `β(u_i, v_i) = 1`, mutually orthogonal,
/// together with a basis of the radical.
#[derive(Clone, Debug)]
pub struct SymplecticBasis {
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
    pub radical: Vec<Vec<u32>>,
}

pub fn symplectic_decomposition(beta: &AltForm) -> SymplecticBasis {
    let p = beta.p();
    let n = beta.n();
    let mut rest: Vec<Vec<u32>> = Subspace::full(p, n).basis().to_vec();
    let mut pairs = Vec::new();
    loop {
        let found = rest.iter().enumerate().find_map(|(i, u)| {
            rest.iter()
                .enumerate()
                .find(|(_, v)| beta.eval(u, v) != 0)
                .map(|(j, _)| (i, j))
        });
        let Some((i, j)) = found else { break };
        let u = rest[i].clone();
        let c = inv_mod(beta.eval(&u, &rest[j]), p).unwrap();
        let v = vec_scale(&rest[j], c, p);
        let mut next = Vec::new();
        for (k, w) in rest.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            // w − β(w,v)·u + β(w,u)·v is orthogonal to u and v.
            let a = beta.eval(w, &v);
            let b = beta.eval(w, &u);
            let w2 = vec_add(&vec_add(w, &vec_scale(&u, (p - a) % p, p), p), &vec_scale(&v, b, p), p);
            next.push(w2);
        }
        rest = Subspace::from_vectors(p, n, &next).basis().to_vec();
        pairs.push((u, v));
    }
    SymplecticBasis { pairs, radical: rest }
}

/// Group on `G × Z_p` with `(a,i)(b,j) = (a+b, i+j+s(a,b)/p)`, `s` the
/// cocycle assembled from a point of `X(triv)`. Element `(a,i)` has index
/// `i·|G| + a`.
pub fn central_extension_group(space: &ClassSpace, pt: &ClassPoint) -> Result<FiniteGroup> {
    let module = space.module();
    if !module.is_trivial() {
        return Err(Error::InvalidAction(
            "central extensions need the trivial action".into(),
        ));
    }
    let p = space.p() as usize;
    let et = ElementTables::new(module);
    let s = assemble_cocycle(space, pt, &et)?;
    if s.values().iter().any(|&v| !(v as usize).is_multiple_of(p)) {
        return Err(Error::Internal("cocycle is not p-divisible".into()));
    }
    let size = et.size();
    let g = FiniteGroup::from_fn(size * p, |x, y| {
        let (a, i) = (x % size, x / size);
        let (b, j) = (y % size, y / size);
        let k = (i + j + s.get(a, b) as usize / p) % p;
        k * size + et.add(a, b)
    })?;
    if !g.is_associative() {
        return Err(Error::Internal("central extension table is not associative".into()));
    }
    Ok(g)
}

/// Alternating form with the given matrix entries above the diagonal.
pub fn form_from_upper(p: u32, n: usize, upper: &[(usize, usize, i64)]) -> Result<AltForm> {
    let mut coords = vec![0u32; n * n.saturating_sub(1) / 2];
    let pairs = wedge_pairs(n);
    for &(i, j, v) in upper {
        let (a, b, s) = if i < j { (i, j, v) } else { (j, i, -v) };
        let k = pairs
            .iter()
            .position(|&q| q == (a, b))
            .ok_or_else(|| Error::OutOfRange(format!("pair ({i},{j})")))?;
        coords[k] = crate::linalg::reduce(s, p);
    }
    Ok(AltForm::from_wedge(p, n, &coords))
}
