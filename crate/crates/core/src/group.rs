//! Finite groups given by multiplication tables, with a brute-force
//! isomorphism test for small orders.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Validates closure, identity and inverses. Associativity is checked
    /// separately by [`FiniteGroup::is_associative`].
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Malformed(format!(
                "table of length {} for order {order}",
                table.len()
            )));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::Malformed("table entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::Malformed("no identity element".into()))?;
        let mut inverse = vec![0u32; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::Malformed(format!("element {x} has no inverse")))?;
            if table[y * order + x] as usize != identity {
                return Err(Error::Malformed(format!("element {x} has no two-sided inverse")));
            }
            *inv = y as u32;
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b) as u32);
            }
        }
        Self::from_table(order, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Histogram of element orders.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.order {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn exponent(&self) -> usize {
        self.order_profile().keys().copied().max().unwrap_or(1)
    }

    pub fn center_size(&self) -> usize {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    pub fn centralizer_size(&self, a: usize) -> usize {
        (0..self.order).filter(|&b| self.mul(a, b) == self.mul(b, a)).count()
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut mem = vec![false; self.order];
        mem[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mem[y] {
                    mem[y] = true;
                    queue.push(y);
                }
            }
        }
        mem
    }

    /// Orders of the lower central series `γ_1 = G ⊇ γ_2 ⊇ …`, stopping once
    /// it stabilises.
    pub fn lower_central_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.order];
        let mut cur: Vec<usize> = (0..self.order).collect();
        loop {
            let mut comms: Vec<usize> = Vec::new();
            let mut seen = vec![false; self.order];
            for &x in &cur {
                for g in 0..self.order {
                    let c = self.commutator(x, g);
                    if !seen[c] {
                        seen[c] = true;
                        comms.push(c);
                    }
                }
            }
            let mem = self.generated(&comms);
            let next: Vec<usize> = (0..self.order).filter(|&i| mem[i]).collect();
            if next.len() == cur.len() {
                break;
            }
            sizes.push(next.len());
            cur = next;
        }
        sizes
    }

    /// Greedy generating set, elements of large order first.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut cand: Vec<usize> = (0..self.order).collect();
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        cand.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut mem = self.generated(&gens);
        for a in cand {
            if !mem[a] {
                gens.push(a);
                mem = self.generated(&gens);
            }
        }
        gens
    }
}

/// Exact isomorphism test by backtracking over images of a generating set,
/// pruned by element orders and centralizer sizes.
pub fn brute_force_iso(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<bool> {
    if g.order() > cap || h.order() > cap {
        return Err(Error::CapExceeded {
            what: "brute-force isomorphism".into(),
            needed: g.order().max(h.order()) as u128,
            cap: cap as u128,
        });
    }
    if g.order() != h.order()
        || g.is_abelian() != h.is_abelian()
        || g.order_profile() != h.order_profile()
        || g.center_size() != h.center_size()
        || g.lower_central_sizes() != h.lower_central_sizes()
    {
        return Ok(false);
    }
    let gens = g.generating_set();
    let sig = |grp: &FiniteGroup, a: usize| (grp.element_order(a), grp.centralizer_size(a));
    let hsig: Vec<(usize, usize)> = (0..h.order()).map(|a| sig(h, a)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let s = sig(g, x);
            (0..h.order()).filter(|&y| hsig[y] == s).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut images))
}

fn search(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], cands: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
    let k = images.len();
    if k == gens.len() {
        return true;
    }
    for &y in &cands[k] {
        images.push(y);
        if let Some(size) = extend_hom(g, h, &gens[..=k], images) {
            if (k + 1 < gens.len() || size == g.order()) && search(g, h, gens, cands, images) {
                return true;
            }
        }
        images.pop();
    }
    false
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph of the generated
/// subgroup; returns its order if the map is a well-defined injective
/// homomorphism there.
fn extend_hom(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<usize> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                map[y] = img;
                used[img] = true;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(queue.len())
}

/// `Z_{m_1} × … × Z_{m_k}` as a table, for tests and comparisons.
pub fn abelian_group(moduli: &[usize]) -> Result<FiniteGroup> {
    let order: usize = moduli.iter().product();
    let decode = |mut c: usize| -> Vec<usize> {
        let mut v = vec![0; moduli.len()];
        for (x, &m) in v.iter_mut().zip(moduli).rev() {
            *x = c % m;
            c /= m;
        }
        v
    };
    FiniteGroup::from_fn(order, |a, b| {
        let (x, y) = (decode(a), decode(b));
        x.iter()
            .zip(&y)
            .zip(moduli)
            .fold(0, |acc, ((&u, &v), &m)| acc * m + (u + v) % m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_versus_elementary() {
        let z9 = abelian_group(&[9]).unwrap();
        let z33 = abelian_group(&[3, 3]).unwrap();
        assert!(z9.is_associative() && z9.is_abelian());
        assert_eq!(z9.exponent(), 9);
        assert!(!brute_force_iso(&z9, &z33, 243).unwrap());
        assert!(brute_force_iso(&z33, &z33, 243).unwrap());
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let g = abelian_group(&[3, 9]).unwrap();
        let n = g.order();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let mut inv = vec![0; n];
        for (i, &x) in perm.iter().enumerate() {
            inv[x] = i;
        }
        let h = FiniteGroup::from_fn(n, |a, b| perm[g.mul(inv[a], inv[b])]).unwrap();
        assert!(brute_force_iso(&g, &h, 243).unwrap());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 2]).is_err());
    }

    #[test]
    fn cap_enforced() {
        let g = abelian_group(&[3, 3, 3, 3, 3, 3]).unwrap();
        assert!(brute_force_iso(&g, &g, 243).is_err());
    }

    #[test]
    fn lower_central_of_abelian() {
        let g = abelian_group(&[3, 3]).unwrap();
        assert_eq!(g.lower_central_sizes(), vec![9, 1]);
    }
}
