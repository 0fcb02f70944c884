//! Dense linear algebra over the prime field GF(p), p an odd prime.
//!
//! Vectors are rows and matrices act on the right: `v ↦ v·M`. Kernels are
//! left kernels `{v : v·M = 0}` and images are row spaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts odd primes small enough that `p²` products fit comfortably in `u64`.
pub fn check_odd_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p) || p > 46_337 {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a as u64, (p - 2) as u64, p as u64) as u32)
    }
}

/// Smallest generator of the cyclic group (Z/p)^×.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| pow_mod(g as u64, (phi / q) as u64, p as u64) != 1)
        })
        .unwrap_or(1)
}

/// Reduces a signed integer into `[0, p)`.
#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(FpScalar {
            value: reduce(value, p),
            p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn inv(self) -> Result<Self> {
        inv_mod(self.value, self.p)
            .map(|value| FpScalar { value, p: self.p })
            .ok_or(Error::NotAUnit(self.value, self.p))
    }

    pub fn pow(self, e: u64) -> Self {
        FpScalar {
            value: pow_mod(self.value as u64, e, self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: (self.value + o.value) % self.p,
            p: self.p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: (self.value + self.p - o.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar {
            value: ((self.value as u64 * o.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, ", self.p)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()?;
        write!(f, ")")
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Result<Self> {
        check_odd_prime(p)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&x| reduce(x, p)));
        }
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        check_odd_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Matrix whose rows are the given vectors (entries already reduced).
    pub fn from_vectors(p: u32, cols: usize, vecs: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vecs.len() * cols);
        for v in vecs {
            assert_eq!(v.len(), cols, "vector length");
            data.extend(v.iter().map(|&x| x % p));
        }
        FpMatrix {
            p,
            rows: vecs.len(),
            cols,
            data,
        }
    }

    pub fn block_diag(p: u32, blocks: &[FpMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(p, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(p: u32, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix { p, rows, cols, data }
    }

    pub fn random_invertible<R: Rng + ?Sized>(p: u32, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(p, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_same_shape(&self, o: &FpMatrix) -> Result<()> {
        if self.p != o.p {
            return Err(Error::ModulusMismatch(self.p, o.p));
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &FpMatrix) -> Result<Self> {
        self.check_same_shape(o)?;
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| (a + b) % p).collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn sub(&self, o: &FpMatrix) -> Result<Self> {
        self.check_same_shape(o)?;
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| (a + p - b) % p).collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = reduce(c, self.p) as u64;
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect();
        FpMatrix { data, ..*self }
    }

    /// `self − I`; panics on non-square input.
    pub fn minus_identity(&self) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.set(i, i, v + self.p - 1);
        }
        m
    }

    pub fn mul(&self, o: &FpMatrix) -> Result<Self> {
        if self.p != o.p {
            return Err(Error::ModulusMismatch(self.p, o.p));
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * o.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    /// Product for operands already known to be compatible.
    pub fn dot(&self, o: &FpMatrix) -> Self {
        self.mul(o).expect("compatible matrices")
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.dot(&base);
            }
            base = base.dot(&base);
            e >>= 1;
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length");
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = self.row(i);
            for (o, &m) in out.iter_mut().zip(row) {
                *o = (*o + x as u64 * m as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, m.p, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let p = self.p as u64;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| m[r * n + c] != 0) else {
                return Ok(0);
            };
            if r != c {
                for j in 0..n {
                    m.swap(r * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let piv = m[c * n + c] as u64;
            det = det * piv % p;
            let inv = inv_mod(piv as u32, self.p).unwrap() as u64;
            for r2 in c + 1..n {
                let f = m[r2 * n + c] as u64 * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    m[r2 * n + j] = ((m[r2 * n + j] as u64 + p * p - f * m[c * n + j] as u64) % p) as u32;
                }
            }
        }
        Ok(det as u32)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let w = 2 * n;
        let mut aug = vec![0u32; n * w];
        for i in 0..n {
            aug[i * w..i * w + n].copy_from_slice(self.row(i));
            aug[i * w + n + i] = 1;
        }
        let pivots = rref_in_place(&mut aug, n, w, self.p, n);
        if pivots.len() < n {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Self::zeros(self.p, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&aug[i * w + n..(i + 1) * w]);
        }
        Ok(inv)
    }

    /// Left kernel `{v : v·self = 0}`.
    pub fn kernel(&self) -> Subspace {
        let t = self.transpose();
        let (r, pivots) = t.rref();
        // Null space of selfᵀ: one basis vector per free column.
        let n = t.cols;
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let x = r.get(i, free);
                v[pc] = (self.p - x) % self.p;
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.p, n, &basis)
    }

    /// Row space `{v·self}`.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.cols, &self.row_vectors())
    }

    /// Some `x` with `x·self = b`, if one exists.
    pub fn solve_left(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols, "right-hand side length");
        // Solve selfᵀ·xᵀ = bᵀ with an augmented column.
        let (r, c) = (self.cols, self.rows);
        let w = c + 1;
        let mut aug = vec![0u32; r * w];
        for i in 0..r {
            for j in 0..c {
                aug[i * w + j] = self.get(j, i);
            }
            aug[i * w + c] = b[i] % self.p;
        }
        let pivots = rref_in_place(&mut aug, r, w, self.p, w);
        if pivots.contains(&c) {
            return None;
        }
        let mut x = vec![0u32; c];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[i * w + c];
        }
        Some(x)
    }

    /// Matrix of the induced map on the second exterior power in the basis
    /// `e_i∧e_j` (i < j, lexicographic): `(e_i∧e_j)·W = (e_i·M)∧(e_j·M)`.
    pub fn wedge_square(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let pairs = wedge_pairs(n);
        let p = self.p as u64;
        let d = pairs.len();
        let mut w = Self::zeros(self.p, d, d);
        for (r, &(i, j)) in pairs.iter().enumerate() {
            for (c, &(k, l)) in pairs.iter().enumerate() {
                let pos = self.get(i, k) as u64 * self.get(j, l) as u64 % p;
                let neg = self.get(i, l) as u64 * self.get(j, k) as u64 % p;
                w.data[r * d + c] = ((pos + p - neg) % p) as u32;
            }
        }
        Ok(w)
    }
}

/// Ordered index pairs `(i, j)`, `i < j`, of the wedge basis.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

/// Row-reduces `data` (rows × cols) in place, pivoting only in the first
/// `pivot_cols` columns. Returns the pivot columns.
fn rref_in_place(data: &mut [u32], rows: usize, cols: usize, p: u32, pivot_cols: usize) -> Vec<usize> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if sel != r {
            for j in 0..cols {
                data.swap(sel * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c], p).unwrap() as u64;
        for j in 0..cols {
            data[r * cols + j] = (data[r * cols + j] as u64 * inv % pp) as u32;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c] as u64;
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let sub = f * data[r * cols + j] as u64 % pp;
                data[i * cols + j] = ((data[i * cols + j] as u64 + pp - sub) % pp) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn vec_add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn vec_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

pub fn vec_scale(a: &[u32], c: u32, p: u32) -> Vec<u32> {
    a.iter().map(|&x| (x as u64 * c as u64 % p as u64) as u32).collect()
}

pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    (a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p as u64) as u32
}

/// Linear combination `Σ c_k·basis_k`.
pub fn combine(coeffs: &[u32], basis: &[Vec<u32>], dim: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u64; dim];
    for (&c, b) in coeffs.iter().zip(basis) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = (*o + c as u64 * x as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// Subspace of GF(p)^ambient stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(p: u32, ambient: usize, vecs: &[Vec<u32>]) -> Self {
        let m = FpMatrix::from_vectors(p, ambient, vecs);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        FpMatrix::identity(p, ambient).image()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn as_matrix(&self) -> FpMatrix {
        FpMatrix::from_vectors(self.p, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let c: Vec<u32> = self.pivots.iter().map(|&j| v[j] % self.p).collect();
        let back = combine(&c, &self.basis, self.ambient, self.p);
        let reduced: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        (back == reduced).then_some(c)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.p, self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let m = FpMatrix::from_vectors(self.p, self.ambient, &stacked);
        let k = m.kernel();
        let d = self.dim();
        let vecs: Vec<Vec<u32>> = k
            .basis()
            .iter()
            .map(|x| combine(&x[..d], &self.basis, self.ambient, self.p))
            .collect();
        Subspace::from_vectors(self.p, self.ambient, &vecs)
    }

    /// Image of the subspace under `v ↦ v·m`.
    pub fn map(&self, m: &FpMatrix) -> Subspace {
        let vecs: Vec<Vec<u32>> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::from_vectors(self.p, m.cols(), &vecs)
    }

    /// Vectors of `ambient`'s echelon basis that extend `self` to a basis of
    /// `self + ambient`, chosen greedily in order.
    pub fn complement_in(&self, ambient: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for b in ambient.basis() {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.sum(&Subspace::from_vectors(self.p, self.ambient, std::slice::from_ref(b)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, rows).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FpMatrix::from_rows(2, &[[1i64]]).is_err());
        assert!(FpMatrix::from_rows(9, &[[1i64]]).is_err());
        assert!(FpScalar::new(3, 4).is_err());
        assert_eq!(FpScalar::new(-1, 7).unwrap().value(), 6);
    }

    #[test]
    fn scalar_ops() {
        let a = FpScalar::new(3, 7).unwrap();
        let b = FpScalar::new(5, 7).unwrap();
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(a.pow(6).value(), 1);
        assert!(FpScalar::new(0, 7).unwrap().inv().is_err());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(23), 5);
    }

    #[test]
    fn matmul_small() {
        let id = FpMatrix::identity(3, 3);
        let a = m(3, &[&[1, 2, 0], &[0, 1, 1], &[2, 2, 2]]);
        assert_eq!(id.dot(&a), a);
        let u = m(3, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.dot(&u), m(3, &[&[1, 2], &[0, 1]]));
        assert!(a.mul(&u).is_err());
        assert!(a.mul(&FpMatrix::identity(5, 3)).is_err());
    }

    #[test]
    fn inverse_and_singular() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(inv.dot(&a).is_identity());
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
        assert!(FpMatrix::identity(7, 4).inverse().unwrap().is_identity());
    }

    #[test]
    fn kernel_image_solve() {
        let z = FpMatrix::zeros(5, 3, 3);
        assert_eq!(z.kernel().dim(), 3);
        let mut j = FpMatrix::identity(5, 3);
        j.set(0, 1, 1);
        j.set(1, 2, 1);
        assert_eq!(j.minus_identity().rank(), 2);
        let a = m(7, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.dim() + a.rank(), 3);
        for v in k.basis() {
            assert!(a.apply(v).iter().all(|&x| x == 0));
        }
        let b = a.apply(&[3, 0, 5]);
        let x = a.solve_left(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(a.solve_left(&[0, 0, 1]).is_none());
    }

    #[test]
    fn determinant_matches_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = FpMatrix::random(5, 3, 3, &mut rng);
            assert_eq!(a.determinant().unwrap() != 0, a.rank() == 3);
        }
        assert_eq!(m(7, &[&[0, 1], &[1, 0]]).determinant().unwrap(), 6);
    }

    #[test]
    fn subspace_ops() {
        let p = 5;
        let u = Subspace::from_vectors(p, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = Subspace::from_vectors(p, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersection(&v).dim(), 1);
        assert!(u.intersection(&v).contains(&[0, 3, 0]));
        assert_eq!(u.sum(&v).dim(), 3);
        let w = Subspace::from_vectors(p, 3, &[vec![0, 1, 0]]);
        assert!(w.is_subspace_of(&u));
        let comp = w.complement_in(&u);
        assert_eq!(comp, vec![vec![1, 0, 0]]);
        assert_eq!(u.coords(&[2, 3, 0]), Some(vec![2, 3]));
        assert_eq!(u.coords(&[2, 3, 1]), None);
    }

    #[test]
    fn wedge_identity_and_size() {
        let w = FpMatrix::identity(5, 4).wedge_square().unwrap();
        assert!(w.is_identity());
        assert_eq!(w.rows(), 6);
        assert!(FpMatrix::zeros(5, 2, 3).wedge_square().is_err());
    }
}
