//! Groups of grouplikes of cocommutative extensions: `E(a) = G ⋊ ⟨x⟩` with
//! `x^p = a` for a fixed point `a`, and their isomorphism classification.
//!
//! Elements are pairs `(g, i)` meaning `g·x^i`, with index `i·|G| + code(g)`.
//! Conjugation by `x` is `g ↦ g◁t⁻¹`, so
//! `(g,i)(h,j) = (g + h◁t^{-i} + [i+j ≥ p]·a, i+j mod p)`.

use std::fmt;

use crate::cohomology::norm_operator;
use crate::cp_module::{BlockProfile, CpModule, ElementTables};
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup};
use crate::linalg::{combine, FpMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct ExtGroup {
    module: CpModule,
    a: Vec<u32>,
    group: FiniteGroup,
}

impl ExtGroup {
    pub fn module(&self) -> &CpModule {
        &self.module
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Flat multiplication table, row-major over element indices.
    pub fn table(&self) -> &[u32] {
        self.group.table()
    }
}

/// `G^{C_p}` for the action on `G` itself.
pub fn fixed_points(module: &CpModule) -> Subspace {
    module.nilpotent().kernel()
}

/// `N(G) = G·(T − I)^{p−1}`.
pub fn norm_subgroup(module: &CpModule) -> Subspace {
    norm_operator(module.t(), module.p() as usize)
        .expect("valid norm")
        .image()
}

/// Basis of a complement of `N(G)` in `G^{C_p}`.
pub fn a_bar_basis(module: &CpModule) -> Vec<Vec<u32>> {
    norm_subgroup(module).complement_in(&fixed_points(module))
}

/// One representative of every class in `G^{C_p}/N(G)`.
pub fn a_bar_representatives(module: &CpModule) -> Vec<Vec<u32>> {
    let basis = a_bar_basis(module);
    let p = module.p();
    let d = basis.len();
    let count = (p as usize).pow(d as u32);
    (0..count)
        .map(|mut c| {
            let mut coeffs = vec![0u32; d];
            for x in coeffs.iter_mut().rev() {
                *x = (c % p as usize) as u32;
                c /= p as usize;
            }
            combine(&coeffs, &basis, module.n(), p)
        })
        .collect()
}

pub fn build_ext_group(module: &CpModule, a: &[u32]) -> Result<ExtGroup> {
    let p = module.p() as usize;
    if a.len() != module.n() {
        return Err(Error::DimensionMismatch("fixed point has wrong length".into()));
    }
    if module.t().apply(a) != a.iter().map(|&x| x % module.p()).collect::<Vec<_>>() {
        return Err(Error::NotFixed);
    }
    let et = ElementTables::new(module);
    let size = et.size();
    let ac = et.index.encode(a);
    let group = FiniteGroup::from_fn(size * p, |x, y| {
        let (g, i) = (x % size, x / size);
        let (h, j) = (y % size, y / size);
        let mut c = et.add(g, et.act(p - i % p, h));
        if i + j >= p {
            c = et.add(c, ac);
        }
        ((i + j) % p) * size + c
    })?;
    Ok(ExtGroup {
        module: module.clone(),
        a: a.iter().map(|&x| x % module.p()).collect(),
        group,
    })
}

/// `log_p |γ_r|` for the lower central series of the table.
pub fn lower_central_dims(e: &ExtGroup) -> Vec<usize> {
    let p = e.module.p() as usize;
    e.group
        .lower_central_sizes()
        .into_iter()
        .map(|s| {
            let mut d = 0;
            let mut x = s;
            while x > 1 {
                x /= p;
                d += 1;
            }
            d
        })
        .collect()
}

/// Largest `j ≤ p − 2` with `a ∈ G·(T − I)^j`, or `None` when `a ∈ N(G)`.
pub fn depth(module: &CpModule, a: &[u32]) -> Option<usize> {
    if norm_subgroup(module).contains(a) {
        return None;
    }
    let nil = module.nilpotent();
    let mut pw = FpMatrix::identity(module.p(), module.n());
    let mut best = 0;
    for j in 0..=module.p() as usize - 2 {
        if pw.image().contains(a) {
            best = j;
        } else {
            break;
        }
        pw = pw.dot(&nil);
    }
    Some(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub profiles: (BlockProfile, BlockProfile),
    pub lower_central: (Vec<usize>, Vec<usize>),
    pub depths: (Option<usize>, Option<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub verdict: bool,
    pub reason: String,
    pub witness: IsoWitness,
}

impl fmt::Display for IsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}",
            if self.verdict { "isomorphic" } else { "not isomorphic" },
            self.reason
        )
    }
}

/// Decides `E(a) ≅ E(b)`: the trivial class is never isomorphic to a
/// nontrivial one; two trivial classes are isomorphic iff the block profiles
/// agree; two nontrivial ones iff the profiles and the depths agree.
pub fn ext_groups_isomorphic(e1: &ExtGroup, e2: &ExtGroup) -> Result<IsoCertificate> {
    if e1.order() != e2.order() || e1.module.p() != e2.module.p() {
        return Err(Error::DimensionMismatch(format!(
            "groups of order {} and {}",
            e1.order(),
            e2.order()
        )));
    }
    let witness = IsoWitness {
        profiles: (e1.module.block_profile(), e2.module.block_profile()),
        lower_central: (lower_central_dims(e1), lower_central_dims(e2)),
        depths: (depth(&e1.module, &e1.a), depth(&e2.module, &e2.a)),
    };
    let (verdict, reason) = match witness.depths {
        (None, Some(_)) | (Some(_), None) => (false, "one class is trivial, the other is not".to_string()),
        _ if witness.profiles.0 != witness.profiles.1 => (false, "block profiles differ".to_string()),
        (None, None) => (true, "both split with equal block profiles".to_string()),
        (Some(d1), Some(d2)) if d1 != d2 => (false, format!("depths {d1} and {d2} differ")),
        (Some(d), Some(_)) => (true, format!("equal profiles and depth {d}")),
    };
    Ok(IsoCertificate {
        verdict,
        reason,
        witness,
    })
}

/// Oracle: exact search for an isomorphism of the tables.
pub fn brute_force_iso(e1: &ExtGroup, e2: &ExtGroup, cap: usize) -> Result<bool> {
    group::brute_force_iso(&e1.group, &e2.group, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(p: u32, m: &[usize]) -> CpModule {
        CpModule::from_blocks(&BlockProfile::new(p, m).unwrap())
    }

    #[test]
    fn trivial_action_groups() {
        let m = CpModule::trivial(3, 2).unwrap();
        let e0 = build_ext_group(&m, &[0, 0]).unwrap();
        assert!(e0.group().is_abelian());
        assert_eq!(e0.group().exponent(), 3);
        let e1 = build_ext_group(&m, &[1, 0]).unwrap();
        assert!(e1.group().is_associative());
        assert_eq!(e1.group().exponent(), 9);
        let e2 = build_ext_group(&m, &[1, 2]).unwrap();
        assert!(ext_groups_isomorphic(&e1, &e2).unwrap().verdict);
        assert!(!ext_groups_isomorphic(&e0, &e1).unwrap().verdict);
        assert!(brute_force_iso(&e1, &e2, 243).unwrap());
    }

    #[test]
    fn semidirect_product_when_split() {
        let m = module(3, &[1, 1]);
        let e = build_ext_group(&m, &[0, 0, 0]).unwrap();
        assert!(e.group().is_associative());
        assert!(!e.group().is_abelian());
        assert_eq!(lower_central_dims(&e), vec![4, 1, 0]);
        let x = 27;
        assert_eq!(e.group().element_order(x), 3);
    }

    #[test]
    fn x_to_the_p_is_a() {
        let m = module(5, &[1, 1]);
        let a = vec![2, 0, 0];
        let e = build_ext_group(&m, &a).unwrap();
        let size = 125;
        let mut y = size; // x = (0, 1)
        for _ in 1..5 {
            y = e.group().mul(y, size);
        }
        let et = ElementTables::new(&m);
        assert_eq!(y, et.index.encode(&a));
        assert!(build_ext_group(&m, &[0, 1, 0]).is_err());
    }

    #[test]
    fn representatives_count() {
        assert_eq!(a_bar_representatives(&module(3, &[0, 0, 1])).len(), 1);
        assert_eq!(a_bar_representatives(&module(5, &[0, 0, 1])).len(), 5);
        assert_eq!(a_bar_representatives(&module(3, &[1, 1])).len(), 9);
    }
}
