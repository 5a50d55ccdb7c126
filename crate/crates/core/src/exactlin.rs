//! Exact dense linear algebra over Q and F_p.
//!
//! Scalars are `BigRational`; over `F_p` every value is kept as an integer
//! in `[0, p)`. Subspaces are stored by a reduced row-echelon basis, so two
//! subspaces are equal exactly when their stored bases are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, LinError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(LinError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(BigInt::from(n)),
            Field::Prime(p) => Scalar::from_integer(BigInt::from(n.rem_euclid(*p as i64))),
        }
    }

    /// `n / d` in this field.
    pub fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Scalar, LinError> {
        if d.is_zero() {
            return Err(LinError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar::new(n.clone(), d.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(n);
                let den = self.from_bigint(d);
                let inv = self.inv(&den).ok_or(LinError::DivisionByZero)?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(n.clone()),
            Field::Prime(p) => Scalar::from_integer(n.mod_floor(&BigInt::from(*p))),
        }
    }

    fn residue(&self, x: &Scalar) -> u64 {
        x.numer().to_u64().expect("prime-field value out of range")
    }

    fn from_residue(&self, r: u64) -> Scalar {
        Scalar::from_integer(BigInt::from(r))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => self.from_residue((self.residue(a) + self.residue(b)) % p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => self.from_residue((self.residue(a) + p - self.residue(b)) % p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => self.from_residue((p - self.residue(a)) % p),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => {
                let r = (self.residue(a) as u128 * self.residue(b) as u128) % (*p as u128);
                self.from_residue(r as u64)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let (mut base, mut exp, mut acc) = (self.residue(a) as u128, p - 2, 1u128);
                let m = *p as u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Some(self.from_residue(acc as u64))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// `a + b*c`, the inner step of most loops.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        self.add(a, &self.mul(b, c))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r.iter().cloned());
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Mat::from_rows(field, cols, &rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.mul_add(&out.data[idx], a, b);
                }
            }
        }
        Ok(out)
    }

    /// Panics on shape mismatch; callers construct shapes themselves.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.mul_add(&acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(blocks: &[&Mat]) -> Mat {
        let field = blocks[0].field;
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack rows");
            m.paste(0, off, b);
            off += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&Mat]) -> Mat {
        let field = blocks[0].field;
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack cols");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Mat { field, rows, cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Copy `b` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, b: &Mat) {
        assert!(r + b.rows <= self.rows && c + b.cols <= self.cols, "paste out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r + i) * self.cols + c + j] = b.data[i * b.cols + j].clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.data[(r + i) * self.cols + c + j].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Mat { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.data[i * self.cols + j].clone();
            }
        }
        m
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let mut m = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other.data[k * other.cols + l];
                        if !b.is_zero() {
                            m.data[(i * other.rows + k) * m.cols + j * other.cols + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_pivots(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i * m.cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(&m.data[r * m.cols + c]).expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * m.cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = &m.data[r * m.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = f.mul(&factor, pv);
                    let idx = i * m.cols + j;
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Mat, usize) {
        let (m, p) = self.rref_pivots();
        (m, p.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_pivots().1.len()
    }

    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref_pivots();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            vecs.push(v);
        }
        let k = Subspace::span(f, self.cols, &vecs);
        assert_eq!(k.dim() + pivots.len(), self.cols, "rank-nullity");
        k
    }

    /// Column space as a subspace of the row-count ambient.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_rows_mat(self.transpose())
    }

    /// Any `x` with `self * x = b`, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinError> {
        if b.len() != self.rows {
            return Err(LinError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let bm = Mat::from_columns(self.field, self.rows, &[b.to_vec()]);
        let aug = Mat::hstack(&[self, &bm]);
        let (r, pivots) = aug.rref_pivots();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self * X = B` column by column.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.rows, self.rows, "solve_mat rows");
        let aug = Mat::hstack(&[self, b]);
        let (r, pivots) = aug.rref_pivots();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_mat(&Mat::identity(self.field, self.rows))
    }

    /// Characteristic polynomial coefficients, lowest degree first, monic.
    ///
    /// Hessenberg reduction followed by the usual recurrence; valid in every
    /// characteristic.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols, "charpoly of non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let piv_inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), &piv_inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(&u, h.get(m, j));
                    let x = f.sub(h.get(i, j), &t);
                    h.set(i, j, x);
                }
                for r in 0..n {
                    let t = f.mul(&u, h.get(r, i));
                    let x = f.add(h.get(r, m), &t);
                    h.set(r, m, x);
                }
            }
        }
        let hh = |i: usize, j: usize| h.get(i - 1, j - 1).clone();
        let mut p: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
        for m in 1..=n {
            let mut pm = vec![Scalar::zero(); m + 1];
            for (d, c) in p[m - 1].iter().enumerate() {
                pm[d + 1] = f.add(&pm[d + 1], c);
                pm[d] = f.sub(&pm[d], &f.mul(&hh(m, m), c));
            }
            let mut t = Scalar::one();
            for i in (1..m).rev() {
                t = f.mul(&t, &hh(i + 1, i));
                let s = f.mul(&hh(i, m), &t);
                if s.is_zero() {
                    continue;
                }
                for (d, c) in p[i - 1].iter().enumerate() {
                    pm[d] = f.sub(&pm[d], &f.mul(&s, c));
                }
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Roots in the field of a polynomial given lowest degree first.
///
/// Over F_p the roots are found by exhaustive evaluation; over Q by the
/// rational root theorem after clearing denominators.
pub fn field_roots(field: Field, poly: &[Scalar]) -> Vec<Scalar> {
    let eval = |x: &Scalar| {
        let mut acc = Scalar::zero();
        for c in poly.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    };
    match field {
        Field::Prime(p) => (0..p)
            .map(|r| field.from_i64(r as i64))
            .filter(|x| eval(x).is_zero())
            .collect(),
        Field::Rationals => {
            let mut poly = poly.to_vec();
            let mut roots = Vec::new();
            while poly.len() > 1 && poly[0].is_zero() {
                poly.remove(0);
                if !roots.contains(&Scalar::zero()) {
                    roots.push(Scalar::zero());
                }
            }
            if poly.len() <= 1 {
                return roots;
            }
            let lcm = poly.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let ints: Vec<BigInt> = poly.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
            let divisors = |n: &BigInt| -> Vec<BigInt> {
                let n = n.abs().to_u64().unwrap_or(0);
                (1..=n.min(1_000_000)).filter(|d| n.is_multiple_of(*d)).map(BigInt::from).collect()
            };
            for pn in divisors(&ints[0]) {
                for qd in divisors(ints.last().unwrap()) {
                    for sign in [1i64, -1] {
                        let x = Scalar::new(pn.clone() * sign, qd.clone());
                        if eval(&x).is_zero() && !roots.contains(&x) {
                            roots.push(x);
                        }
                    }
                }
            }
            roots
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::from_rows_mat(Mat::from_rows(field, ambient, vectors))
    }

    pub fn from_rows_mat(m: Mat) -> Self {
        let ambient = m.cols;
        let (r, pivots) = m.rref_pivots();
        let basis = r.block(0, 0, pivots.len(), ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    /// Basis rows in reduced echelon form.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Ambient × dim matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Mat {
        self.basis.transpose()
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// dim × ambient left inverse of `inclusion`, valid on the subspace.
    pub fn coords_map(&self) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, Scalar::one());
        }
        m
    }

    /// `v` minus its component along the basis, i.e. the canonical residue.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    w[j] = f.sub(&w[j], &f.mul(&c, b));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows_mat(Mat::vstack(&[&self.basis, &other.basis])))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        let f = self.field();
        let a = self.inclusion();
        let b = other.inclusion().scale(&f.from_i64(-1));
        let k = Mat::hstack(&[&a, &b]).kernel_basis();
        let vecs: Vec<Vec<Scalar>> =
            k.vectors().iter().map(|v| a.mul_vec(&v[..self.dim()])).collect();
        let out = Subspace::span(f, self.ambient, &vecs);
        debug_assert_eq!(self.dim() + other.dim(), self.sum(other)?.dim() + out.dim());
        Ok(out)
    }

    /// Non-pivot coordinates, a basis of a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    /// (ambient − dim) × ambient surjection with kernel exactly `self`.
    pub fn quotient_map(&self) -> Mat {
        let f = self.field();
        let comp = self.complement_indices();
        let mut q = Mat::zeros(f, comp.len(), self.ambient);
        for (r, &c) in comp.iter().enumerate() {
            q.set(r, c, Scalar::one());
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            for (r, &c) in comp.iter().enumerate() {
                let b = self.basis.get(i, c);
                if !b.is_zero() {
                    q.set(r, p, f.neg(b));
                }
            }
        }
        q
    }

    /// ambient × (ambient − dim) section of `quotient_map`.
    pub fn quotient_section(&self) -> Mat {
        let comp = self.complement_indices();
        let mut s = Mat::zeros(self.field(), self.ambient, comp.len());
        for (r, &c) in comp.iter().enumerate() {
            s.set(c, r, Scalar::one());
        }
        s
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain");
        m.mul(&self.inclusion()).image_basis()
    }

    /// Preimage of the subspace under a linear map.
    pub fn preimage_under(&self, m: &Mat) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain");
        self.quotient_map().mul(m).kernel_basis()
    }
}

pub fn quotient_map(ambient: usize, sub: &Subspace) -> Result<Mat, LinError> {
    if sub.ambient() != ambient {
        return Err(LinError::DimensionMismatch { expected: ambient, found: sub.ambient() });
    }
    Ok(sub.quotient_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    /// Rank by exhaustive search for the largest nonsingular minor.
    fn minor_rank(m: &Mat) -> usize {
        fn det(f: Field, m: &Mat) -> Scalar {
            let n = m.rows();
            if n == 0 {
                return f.one();
            }
            let mut acc = f.zero();
            for j in 0..n {
                let rest_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let rest_rows: Vec<usize> = (1..n).collect();
                let minor = m.select_rows(&rest_rows).select_cols(&rest_cols);
                let term = f.mul(m.get(0, j), &det(f, &minor));
                acc = if j % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let f = m.field();
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    if !det(f, &m.select_rows(&rs).select_cols(&cs)).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_identity_and_dependent_rows() {
        let id = Mat::identity(Q, 2);
        assert_eq!(id.rref(), (id.clone(), 2));
        let m = Mat::from_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rref(), (Mat::from_i64(Q, &[&[1, 2], &[0, 0]]), 1));
    }

    #[test]
    fn rank_matches_minor_oracle_over_f101() {
        let f = Field::prime(101).unwrap();
        let mut seed = 7u64;
        for _ in 0..20 {
            let data: Vec<Scalar> = (0..35)
                .map(|_| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    // sparse-ish so that rank varies
                    let r = (seed >> 33) % 101;
                    f.from_i64(if r.is_multiple_of(3) { r as i64 } else { 0 })
                })
                .collect();
            let m = Mat::from_vec(f, 5, 7, data);
            assert_eq!(m.rank(), minor_rank(&m));
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(Q, 3).kernel_basis().is_zero());
        assert!(Mat::zeros(Q, 3, 3).kernel_basis().is_full());
        let k = Mat::from_i64(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, Subspace::span(Q, 2, &[vec![q(1), q(-1)]]));
    }

    #[test]
    fn solve_and_intersect_and_quotient() {
        let b = vec![q(3), q(-2)];
        assert_eq!(Mat::identity(Q, 2).solve(&b).unwrap(), Some(b));
        let m = Mat::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[q(1), q(2)]).unwrap(), None);
        let e1 = Subspace::span(Q, 3, &[vec![q(1), q(0), q(0)]]);
        let e2 = Subspace::span(Q, 3, &[vec![q(0), q(1), q(0)]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        let qm = quotient_map(3, &e1).unwrap();
        assert_eq!((qm.rows(), qm.cols(), qm.rank()), (2, 3, 2));
        assert!(qm.mul_vec(&[q(1), q(0), q(0)]).iter().all(|x| x.is_zero()));
        assert!(quotient_map(4, &e1).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        let three = f.from_i64(3);
        assert_eq!(f.mul(&three, &f.inv(&three).unwrap()), f.one());
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn charpoly_and_roots() {
        let m = Mat::from_i64(Q, &[&[2, 1], &[0, 3]]);
        assert_eq!(m.charpoly(), vec![q(6), q(-5), q(1)]);
        let mut roots = field_roots(Q, &m.charpoly());
        roots.sort();
        assert_eq!(roots, vec![q(2), q(3)]);
    }

    fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-2i64..=2, rows * cols)
            .prop_map(move |v| Mat::from_vec(Q, rows, cols, v.into_iter().map(q).collect()))
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| small_mat(r, c))) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let (r, _) = m.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn sum_intersection_dimensions(a in small_mat(3, 5), b in small_mat(2, 5)) {
            let sa = Subspace::from_rows_mat(a);
            let sb = Subspace::from_rows_mat(b);
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), s.dim() + i.dim());
            prop_assert!(sa.contains_subspace(&i) && sb.contains_subspace(&i));
        }
    }
}
