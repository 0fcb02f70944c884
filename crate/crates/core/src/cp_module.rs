//! Actions of the cyclic group C_p on G = Z_p^n.
//!
//! An action is stored as the matrix `T` of the generator `t`, acting on row
//! vectors: `a◁t = a·T`. Its isomorphism type is the block profile
//! `(m_1, …, m_p)`, the number of unipotent Jordan blocks of each size.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{check_odd_prime, inv_mod, FpMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockProfile {
    p: u32,
    m: Vec<usize>,
}

impl BlockProfile {
    /// `m[l-1]` is the number of blocks of size `l`; trailing zeros optional.
    pub fn new(p: u32, m: &[usize]) -> Result<Self> {
        check_odd_prime(p)?;
        let last = m.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        if last > p as usize {
            return Err(Error::InvalidProfile(format!("block of size {last} exceeds p = {p}")));
        }
        let mut v = vec![0; p as usize];
        v[..last].copy_from_slice(&m[..last]);
        let prof = BlockProfile { p, m: v };
        if prof.n() == 0 {
            return Err(Error::InvalidProfile("profile has rank 0".into()));
        }
        Ok(prof)
    }

    pub fn trivial(p: u32, n: usize) -> Result<Self> {
        Self::new(p, &[n])
    }

    /// Parses the `m1,m2,…` syntax.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let m = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidProfile(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, &m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.m
    }

    pub fn multiplicity(&self, l: usize) -> usize {
        if l == 0 || l > self.m.len() {
            0
        } else {
            self.m[l - 1]
        }
    }

    pub fn n(&self) -> usize {
        self.m.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.m[1..].iter().all(|&c| c == 0)
    }

    /// Block sizes in ascending order, each size repeated by its multiplicity.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &c) in self.m.iter().enumerate() {
            v.extend(std::iter::repeat_n(i + 1, c));
        }
        v
    }

    /// Every profile of rank `n` with block sizes at most `p`.
    pub fn all(p: u32, n: usize) -> Result<Vec<BlockProfile>> {
        check_odd_prime(p)?;
        let mut out = Vec::new();
        let mut parts = Vec::new();
        partitions(n, n.min(p as usize), &mut parts, &mut out);
        let mut profiles: Vec<BlockProfile> = out
            .into_iter()
            .map(|parts: Vec<usize>| {
                let mut m = vec![0; p as usize];
                for l in parts {
                    m[l - 1] += 1;
                }
                BlockProfile { p, m }
            })
            .collect();
        profiles.sort_by(|a, b| b.m.cmp(&a.m));
        Ok(profiles)
    }

    /// Human-readable decomposition such as `R1^2+R3`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("R{}", i + 1)
                } else {
                    format!("R{}^{}", i + 1, c)
                }
            })
            .collect();
        parts.join("+")
    }
}

fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for l in (1..=max.min(n)).rev() {
        cur.push(l);
        partitions(n - l, l, cur, out);
        cur.pop();
    }
}

impl fmt::Display for BlockProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.m.iter().rposition(|&x| x > 0).map_or(1, |i| i + 1);
        let s: Vec<String> = self.m[..last].iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `C_p`-action on `Z_p^n` given by an order-dividing-p matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpModule {
    t: FpMatrix,
}

impl CpModule {
    pub fn new(t: FpMatrix) -> Result<Self> {
        let p = t.p();
        check_odd_prime(p)?;
        if !t.is_square() || t.rows() == 0 {
            return Err(Error::InvalidAction(format!(
                "expected a nonempty square matrix, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        if !t.pow(p as u64).is_identity() {
            return Err(Error::InvalidAction("T^p is not the identity".into()));
        }
        Ok(CpModule { t })
    }

    pub fn from_blocks(profile: &BlockProfile) -> Self {
        let p = profile.p();
        let blocks: Vec<FpMatrix> = profile.block_sizes().into_iter().map(|l| jordan_block(p, l)).collect();
        CpModule {
            t: FpMatrix::block_diag(p, &blocks),
        }
    }

    pub fn trivial(p: u32, n: usize) -> Result<Self> {
        Ok(Self::from_blocks(&BlockProfile::trivial(p, n)?))
    }

    pub fn p(&self) -> u32 {
        self.t.p()
    }

    pub fn n(&self) -> usize {
        self.t.rows()
    }

    pub fn t(&self) -> &FpMatrix {
        &self.t
    }

    pub fn is_trivial(&self) -> bool {
        self.t.is_identity()
    }

    /// `T − I`.
    pub fn nilpotent(&self) -> FpMatrix {
        self.t.minus_identity()
    }

    /// `r_j = rank((T − I)^j)` for `j = 0..=p+1`.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let nil = self.nilpotent();
        let mut acc = FpMatrix::identity(self.p(), self.n());
        let mut out = Vec::new();
        for _ in 0..=self.p() as usize + 1 {
            out.push(acc.rank());
            acc = acc.dot(&nil);
        }
        out
    }

    pub fn block_profile(&self) -> BlockProfile {
        let r = self.rank_sequence();
        let p = self.p() as usize;
        let m: Vec<usize> = (1..=p).map(|l| r[l - 1] + r[l + 1] - 2 * r[l]).collect();
        BlockProfile { p: self.p(), m }
    }

    /// The action `a ↦ a·T^k` of the twisted module.
    pub fn twist(&self, k: i64) -> Result<Self> {
        let p = self.p();
        let k = k.rem_euclid(p as i64) as u64;
        if k == 0 {
            return Err(Error::NotAUnit(0, p));
        }
        Ok(CpModule { t: self.t.pow(k) })
    }

    /// Module with action matrix `S·T·S⁻¹`.
    pub fn conjugate(&self, s: &FpMatrix) -> Result<Self> {
        let inv = s.inverse()?;
        Ok(CpModule {
            t: s.mul(&self.t)?.mul(&inv)?,
        })
    }

    pub fn random_conjugate<R: Rng + ?Sized>(&self, rng: &mut R) -> (Self, FpMatrix) {
        let s = FpMatrix::random_invertible(self.p(), self.n(), rng);
        (self.conjugate(&s).expect("invertible"), s)
    }

    /// Action of `t` on characters in the dual basis.
    pub fn dual_action(&self) -> FpMatrix {
        self.t.transpose()
    }

    /// Solutions of `T·Λ = Λ·T'`, as flattened row-major `n²`-vectors.
    pub fn intertwiner_space(&self, other: &CpModule) -> Result<Subspace> {
        if self.p() != other.p() {
            return Err(Error::ModulusMismatch(self.p(), other.p()));
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "ranks {} and {}",
                self.n(),
                other.n()
            )));
        }
        let (p, n) = (self.p(), self.n());
        let mut rows = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                let mut e = FpMatrix::zeros(p, n, n);
                e.set(r, s, 1);
                let img = self.t.dot(&e).sub(&e.dot(&other.t))?;
                rows.push(img.data().to_vec());
            }
        }
        Ok(FpMatrix::from_vectors(p, n * n, &rows).kernel())
    }

    /// Rows `w` of `P` form Jordan chains for `N = T − I`, so that `P·T = J·P`
    /// with `J` the action matrix of [`CpModule::from_blocks`] for this profile.
    pub fn jordan_basis(&self) -> JordanBasis {
        let (p, n) = (self.p(), self.n());
        let nil = self.nilpotent();
        let profile = self.block_profile();
        let maxl = profile.block_sizes().last().copied().unwrap_or(1);
        let mut kers = Vec::with_capacity(maxl + 2);
        let mut pw = FpMatrix::identity(p, n);
        for _ in 0..=maxl + 1 {
            kers.push(pw.kernel());
            pw = pw.dot(&nil);
        }
        let mut rows = Vec::with_capacity(n);
        for l in 1..=maxl {
            let below = kers[l - 1].sum(&kers[l + 1].map(&nil));
            for top in below.complement_in(&kers[l]) {
                let mut v = top;
                for _ in 0..l {
                    let next = nil.apply(&v);
                    rows.push(v);
                    v = next;
                }
            }
        }
        let pmat = FpMatrix::from_vectors(p, n, &rows);
        JordanBasis { profile, pmat }
    }

    /// An invertible `Λ` with `T·Λ = Λ·T'`, or `None` when the profiles differ.
    pub fn find_invertible_intertwiner(&self, other: &CpModule) -> Option<FpMatrix> {
        if self.p() != other.p() || self.n() != other.n() {
            return None;
        }
        let jb = self.jordan_basis();
        let jb2 = other.jordan_basis();
        if jb.profile != jb2.profile {
            return None;
        }
        let lambda = jb.pmat.inverse().ok()?.dot(&jb2.pmat);
        debug_assert_eq!(self.t.dot(&lambda), lambda.dot(&other.t));
        Some(lambda)
    }

    /// Intertwiner from `self` to its twist by `k`.
    pub fn twist_intertwiner(&self, k: u32) -> Result<Option<Intertwiner>> {
        let tw = self.twist(k as i64)?;
        Ok(self.find_invertible_intertwiner(&tw).map(|lambda| Intertwiner {
            k: k % self.p(),
            lambda,
        }))
    }
}

/// Unipotent Jordan block of size `l` with ones on the superdiagonal.
pub fn jordan_block(p: u32, l: usize) -> FpMatrix {
    let mut m = FpMatrix::identity(p, l);
    for i in 0..l.saturating_sub(1) {
        m.set(i, i + 1, 1);
    }
    m
}

#[derive(Clone, Debug)]
pub struct JordanBasis {
    pub profile: BlockProfile,
    /// Rows are the chains `v, vN, …, vN^{l-1}`, blocks in ascending size.
    pub pmat: FpMatrix,
}

/// Twist datum: `T·Λ = Λ·T^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub k: u32,
    pub lambda: FpMatrix,
}

impl Intertwiner {
    pub fn is_valid_for(&self, m: &CpModule) -> bool {
        inv_mod(self.k, m.p()).is_some()
            && self.lambda.rank() == m.n()
            && m.t().dot(&self.lambda) == self.lambda.dot(&m.t().pow(self.k as u64))
    }
}

/// Mixed-radix encoding of `Z_p^n`, first coordinate most significant.
#[derive(Clone, Debug)]
pub struct ElemIndex {
    p: u32,
    n: usize,
    size: usize,
}

impl ElemIndex {
    pub fn new(p: u32, n: usize) -> Self {
        ElemIndex {
            p,
            n,
            size: (p as usize).pow(n as u32),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, v: &[u32]) -> usize {
        v.iter()
            .fold(0, |acc, &x| acc * self.p as usize + (x % self.p) as usize)
    }

    pub fn decode(&self, mut code: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        for x in v.iter_mut().rev() {
            *x = (code % self.p as usize) as u32;
            code /= self.p as usize;
        }
        v
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    /// Permutation `a ↦ a·m` on codes.
    pub fn action_table(&self, m: &FpMatrix) -> Vec<u32> {
        (0..self.size)
            .map(|c| self.encode(&m.apply(&self.decode(c))) as u32)
            .collect()
    }
}

/// Element tables for a module: addition and the powers of `t`.
#[derive(Clone, Debug)]
pub struct ElementTables {
    pub index: ElemIndex,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// `act[i][a]` is the code of `a·T^i`, `i = 0..p`.
    pub act: Vec<Vec<u32>>,
}

impl ElementTables {
    pub fn new(m: &CpModule) -> Self {
        let index = ElemIndex::new(m.p(), m.n());
        let size = index.size();
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = index.add(a, b) as u32;
            }
        }
        let neg = (0..size).map(|a| index.neg(a) as u32).collect();
        let mut act = Vec::with_capacity(m.p() as usize);
        let mut pw = FpMatrix::identity(m.p(), m.n());
        for _ in 0..m.p() {
            act.push(index.action_table(&pw));
            pw = pw.dot(m.t());
        }
        ElementTables { index, add, neg, act }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.index.size()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b] as usize)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Code of `a·T^i`, `i` taken mod p.
    #[inline]
    pub fn act(&self, i: usize, a: usize) -> usize {
        self.act[i % self.act.len()][a] as usize
    }
}
