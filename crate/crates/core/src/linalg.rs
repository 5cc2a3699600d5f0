//! Dense matrices over a prime field.
//!
//! Entries are stored reduced into `0..p`. Every matrix carries its field so
//! that products and reductions never need an extra argument; mixing
//! matrices over different fields is a programming error and panics.

use std::fmt;

use rand::Rng;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Largest supported characteristic; keeps every product inside `u64`.
    pub const MAX_CHAR: u64 = (1 << 31) - 1;

    /// Returns `None` unless `p` is a prime in `2..=MAX_CHAR`.
    pub fn new(p: u64) -> Option<Self> {
        if is_prime(p) && p <= Self::MAX_CHAR {
            Some(Fp { p })
        } else {
            None
        }
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A row-major matrix over [`Fp`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: Fp, n: usize, value: u64) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = value % field.p;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry mod p.
    /// `cols` is needed to give shape to matrices with no rows.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row");
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(v);
            }
        }
        m
    }

    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v % field.p;
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Fp, rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for v in m.data.iter_mut() {
            *v = field.random(rng);
        }
        m
    }

    /// A uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: Fp, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == u64::from(r == c)))
    }

    /// `Some(λ)` when the matrix equals `λ·I`. Empty matrices report `Some(0)`.
    pub fn as_scalar(&self) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let lambda = if self.rows == 0 { 0 } else { self.get(0, 0) };
        let ok = (0..self.rows).all(|r| {
            (0..self.cols).all(|c| self.get(r, c) == if r == c { lambda } else { 0 })
        });
        ok.then_some(lambda)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.p;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|v| *v = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b) % p;
                }
            }
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&acc);
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u64) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s % f.p)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation; every part must have `rows` rows.
    pub fn hstack(field: Fp, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.paste(0, offset, m);
            offset += m.cols;
        }
        out
    }

    /// Vertical concatenation; every part must have `cols` columns.
    pub fn vstack(field: Fp, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.paste(offset, 0, m);
            offset += m.rows;
        }
        out
    }

    pub fn block_diag(field: Fp, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.paste(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Copies `m` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols);
        for r in 0..m.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(&m.data[r * m.cols..(r + 1) * m.cols]);
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let v = self.data[row * self.cols + c];
                self.data[row * self.cols + c] = v * inv % p;
            }
            let pivot_row: Vec<u64> = self.data[row * self.cols + col..(row + 1) * self.cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.data[r * self.cols + col];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                let base = r * self.cols + col;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let slot = &mut self.data[base + k];
                        *slot = (*slot + neg * pv) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of `{x : self·x = 0}` as the columns of the returned matrix.
    pub fn nullspace(&self) -> Matrix {
        let mut r = self.clone();
        let pivots = r.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                out.data[pc * out.cols + j] = self.field.neg(v);
            }
        }
        out
    }

    /// Basis of the column space, chosen among the original columns.
    pub fn column_space(&self) -> Matrix {
        let pivots = self.clone().row_reduce();
        self.select_columns(&pivots)
    }

    /// Solves `self · x = b`. Returns `None` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let mut r = aug;
        let pivots = r.row_reduce();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        let mut aug = Matrix::hstack(self.field, n, &[self, &id]);
        let pivots = aug.row_reduce();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(aug.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Columns of the identity that extend the column space of `self` to the
    /// whole ambient space.
    pub fn complement(&self) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        let basis = self.column_space();
        let aug = Matrix::hstack(self.field, n, &[&basis, &id]);
        let pivots = aug.clone().row_reduce();
        let extra: Vec<usize> = pivots
            .into_iter()
            .filter(|&c| c >= basis.cols)
            .map(|c| c - basis.cols)
            .collect();
        id.select_columns(&extra)
    }

    /// For a matrix with linearly independent columns `B`, returns
    /// `(W, L, Q)` where `[B | W]` is invertible, `L·B = I` and `Q·W = I`,
    /// `Q·B = 0` (rows of the inverse of `[B | W]`).
    pub fn split_basis(&self) -> (Matrix, Matrix, Matrix) {
        let n = self.rows;
        let k = self.cols;
        let w = self.complement();
        let full = Matrix::hstack(self.field, n, &[self, &w]);
        let inv = full
            .inverse()
            .expect("split_basis requires linearly independent columns");
        let left = inv.submatrix(0..k, 0..n);
        let quot = inv.submatrix(k..n, 0..n);
        (w, left, quot)
    }

    /// Characteristic polynomial, coefficients from the constant term up.
    pub fn charpoly(&self) -> Vec<u64> {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for col in 0..n.saturating_sub(2) {
            let Some(pr) = (col + 1..n).find(|&r| h.get(r, col) != 0) else {
                continue;
            };
            if pr != col + 1 {
                for c in 0..n {
                    h.data.swap(pr * n + c, (col + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + pr, r * n + col + 1);
                }
            }
            let inv = f.inv(h.get(col + 1, col));
            for r in col + 2..n {
                let factor = f.mul(h.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(factor, h.get(col + 1, c)));
                    h.data[r * n + c] = v;
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, col + 1), f.mul(factor, h.get(rr, r)));
                    h.data[rr * n + col + 1] = v;
                }
            }
        }
        // recurrence on leading principal submatrices
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let mut next = poly::mul(f, &polys[m], &[f.neg(h.get(m, m)), 1]);
            let mut prod = 1u64;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                if prod == 0 {
                    break;
                }
                let coeff = f.mul(prod, h.get(i, m));
                let term = poly::scale(f, &polys[i], coeff);
                next = poly::sub(f, &next, &term);
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Rank of a family of equal-length vectors.
pub fn rank_of_vectors(field: Fp, len: usize, vectors: &[Vec<u64>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let mut m = Matrix::zeros(field, vectors.len(), len);
    for (r, v) in vectors.iter().enumerate() {
        m.data[r * len..(r + 1) * len].copy_from_slice(v);
    }
    m.rank()
}

/// Dense univariate polynomials over `F_p`, low-degree coefficient first.
pub mod poly {
    use super::Fp;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn mul(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn sub(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(out)
    }

    pub fn scale(f: Fp, a: &[u64], s: u64) -> Vec<u64> {
        trim(a.iter().map(|&x| f.mul(x, s)).collect())
    }

    pub fn rem(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        let db = degree(b).expect("division by zero polynomial");
        let inv = f.inv(b[db]);
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = f.mul(r[dr], inv);
            let shift = dr - db;
            for i in 0..=db {
                r[i + shift] = f.sub(r[i + shift], f.mul(c, b[i]));
            }
            r = trim(r);
        }
        r
    }

    pub fn monic(f: Fp, a: &[u64]) -> Vec<u64> {
        match degree(a) {
            Some(d) => scale(f, a, f.inv(a[d])),
            None => Vec::new(),
        }
    }

    pub fn gcd(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while degree(&y).is_some() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x)
    }

    pub fn pow_mod(f: Fp, base: &[u64], mut exp: u64, modulus: &[u64]) -> Vec<u64> {
        let mut acc = rem(f, &[1], modulus);
        let mut b = rem(f, base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &b), modulus);
            }
            b = rem(f, &mul(f, &b, &b), modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(f: Fp, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Distinct roots in `F_p`, sorted ascending.
    pub fn roots(f: Fp, a: &[u64]) -> Vec<u64> {
        let a = monic(f, a);
        let Some(d) = degree(&a) else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        let p = f.characteristic();
        if p <= 257 {
            return (0..p).filter(|&x| eval(f, &a, x) == 0).collect();
        }
        // product of the distinct linear factors: gcd(a, x^p - x)
        let xp = pow_mod(f, &[0, 1], p, &a);
        let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        split_linear(f, &g, &mut rng, &mut out);
        out.sort_unstable();
        out
    }

    fn split_linear(f: Fp, g: &[u64], rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match degree(g) {
            None | Some(0) => {}
            Some(1) => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
            Some(d) => loop {
                let shift = rng.gen_range(0..f.characteristic());
                let h = pow_mod(f, &[shift, 1], (f.characteristic() - 1) / 2, g);
                let h = sub(f, &h, &[1]);
                let k = gcd(f, g, &h);
                let dk = degree(&k).unwrap_or(0);
                if dk > 0 && dk < d {
                    split_linear(f, &k, rng, out);
                    let q = div_exact(f, g, &k);
                    split_linear(f, &q, rng, out);
                    return;
                }
            },
        }
    }

    fn div_exact(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        let db = degree(b).unwrap();
        let inv = f.inv(b[db]);
        let mut r = trim(a.to_vec());
        let da = degree(&r).unwrap();
        let mut q = vec![0; da - db + 1];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = f.mul(r[dr], inv);
            q[dr - db] = c;
            for i in 0..=db {
                r[i + dr - db] = f.sub(r[i + dr - db], f.mul(c, b[i]));
            }
            r = trim(r);
        }
        trim(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn field_rejects_composites() {
        assert!(Fp::new(1).is_none());
        assert!(Fp::new(100).is_none());
        assert!(Fp::new(2).is_some());
        assert_eq!(f101().inv(3), 34);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let f = f101();
        let m = Matrix::from_rows(f, &[vec![1, 2, 3], vec![2, 4, 6]], 3);
        assert_eq!(m.rank(), 1);
        let k = m.nullspace();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let f = f101();
        let m = Matrix::from_rows(f, &[vec![2, 1], vec![1, 1]], 2);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let b = Matrix::from_rows(f, &[vec![3], vec![2]], 1);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x), b);
        let singular = Matrix::from_rows(f, &[vec![1, 1], vec![1, 1]], 2);
        assert!(singular.inverse().is_none());
        let rhs = Matrix::from_rows(f, &[vec![1], vec![0]], 1);
        assert!(singular.solve(&rhs).is_none());
    }

    #[test]
    fn empty_shapes() {
        let f = f101();
        let m = Matrix::zeros(f, 0, 3);
        assert_eq!(m.nullspace().cols(), 3);
        assert_eq!(Matrix::zeros(f, 2, 0).rank(), 0);
        assert!(Matrix::identity(f, 0).inverse().is_some());
    }

    #[test]
    fn charpoly_of_companion() {
        let f = f101();
        // x^2 - 3x + 2 = (x-1)(x-2)
        let m = Matrix::from_rows(f, &[vec![0, -2], vec![1, 3]], 2);
        assert_eq!(m.charpoly(), vec![2, f.neg(3), 1]);
        assert_eq!(poly::roots(f, &m.charpoly()), vec![1, 2]);
    }

    #[test]
    fn roots_large_prime() {
        let f = Fp::new(1_000_003).unwrap();
        let a = poly::mul(f, &[f.neg(5), 1], &[f.neg(77), 1]);
        let a = poly::mul(f, &a, &[1, 0, 1]); // x^2+1 has no root mod 1000003 (≡ 3 mod 4)
        assert_eq!(poly::roots(f, &a), vec![5, 77]);
    }

    proptest! {
        #[test]
        fn rank_nullity(seed in any::<u64>(), r in 0usize..6, c in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Fp::new(7).unwrap();
            let m = Matrix::random(f, r, c, &mut rng);
            prop_assert_eq!(m.rank() + m.nullspace().cols(), c);
            prop_assert!(m.mul(&m.nullspace()).is_zero());
        }

        #[test]
        fn charpoly_annihilates(seed in any::<u64>(), n in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = f101();
            let m = Matrix::random(f, n, n, &mut rng);
            let cp = m.charpoly();
            let mut acc = Matrix::zeros(f, n, n);
            for (k, &c) in cp.iter().enumerate() {
                acc = acc.add(&m.pow(k as u64).scale(c));
            }
            prop_assert!(acc.is_zero());
        }
    }
}
