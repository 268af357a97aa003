//! Exact dense linear algebra. Vectors are rows and matrices act on the right: `x·M`.

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense matrix over `K`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<K: Field> {
    pub field: K,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<K::E>,
}

impl<K: Field> Mat<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: &K, n: usize, c: &K::E) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Build from rows; `cols` fixes the width for the empty case.
    pub fn from_rows(field: &K, cols: usize, rows: Vec<Vec<K::E>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat { field: field.clone(), rows: r, cols, data }
    }

    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &K::E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: K::E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<K::E> {
        self.row(i).to_vec()
    }

    pub fn row_list(&self) -> Vec<Vec<K::E>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let k = &self.field;
        let mut out = Self::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                let orow = other.row(l);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !k.is_zero(b) {
                        out.data[base + j] = k.mul_add(&out.data[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let k = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect();
        Mat { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let k = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.sub(a, b)).collect();
        Mat { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &K::E) -> Self {
        let k = &self.field;
        Mat {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        Mat { field: k.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| k.neg(a)).collect() }
    }

    /// `self + c·other`
    pub fn axpy(&mut self, c: &K::E, other: &Self) {
        let k = self.field.clone();
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !k.is_zero(b) {
                *a = k.mul_add(a, c, b);
            }
        }
    }

    pub fn trace(&self) -> K::E {
        let k = &self.field;
        (0..self.rows.min(self.cols)).fold(k.zero(), |acc, i| k.add(&acc, self.get(i, i)))
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[K::E]) -> Vec<K::E> {
        assert_eq!(v.len(), self.rows, "vector-matrix shape");
        let k = &self.field;
        let mut out = vec![k.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !k.is_zero(b) {
                    out[j] = k.mul_add(&out[j], a, b);
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Mat { field: self.field.clone(), rows: self.rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: &K, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(&self.field, self.cols, idx.iter().map(|&i| self.row_vec(i)).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        Self::from_rows(&self.field, idx.len(), rows)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let k = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c));
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<K::E> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if k.is_zero(&f) {
                    continue;
                }
                let nf = k.neg(&f);
                let base = i * m.cols + c;
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !k.is_zero(pv) {
                        m.data[base + j] = k.mul_add(&m.data[base + j], &nf, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Left kernel `{x : x·M = 0}`.
    pub fn kernel(&self) -> Subspace<K> {
        let rows = self.transpose().null_space_rows();
        Subspace::from_rows(&self.field, self.rows, rows)
    }

    /// Right null space `{y : M·yᵀ = 0}` as a list of vectors.
    pub fn null_space_rows(&self) -> Vec<Vec<K::E>> {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Row space.
    pub fn row_space(&self) -> Subspace<K> {
        Subspace::from_mat(self.clone())
    }

    /// Some `x` with `x·self = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.cols != b.cols {
            return Err(Error::Shape(format!("solve: {}x{} against {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        let k = &self.field;
        // Solve Aᵀ xᵀ = bᵀ column by column via one elimination on [Aᵀ | bᵀ].
        let aug = self.transpose().hstack(&b.transpose());
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.rows) {
            return Ok(None);
        }
        let mut x = Self::zeros(k, b.rows, self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.rows {
                x.set(j, p, r.get(i, self.rows + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut result = Self::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows).is_zero()
    }
}

/// A subspace of `K^n`, stored as the canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<K: Field> {
    pub ambient: usize,
    pub basis: Mat<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: &K, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &K, ambient: usize) -> Self {
        Self::from_mat(Mat::identity(field, ambient))
    }

    pub fn from_rows(field: &K, ambient: usize, rows: Vec<Vec<K::E>>) -> Self {
        Self::from_mat(Mat::from_rows(field, ambient, rows))
    }

    pub fn from_mat(m: Mat<K>) -> Self {
        let ambient = m.cols;
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> &K {
        &self.basis.field
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn vectors(&self) -> Vec<Vec<K::E>> {
        self.basis.row_list()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_mat(self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.field().clone();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&k, self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis);
        let ker = stacked.kernel();
        let rows = ker.vectors().into_iter().map(|c| self.basis.apply(&c[..self.dim()])).collect();
        Ok(Self::from_rows(&k, self.ambient, rows))
    }

    /// Remainder of `v` after eliminating against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[K::E]) -> Vec<K::E> {
        let k = self.field();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if k.is_zero(&v[p]) {
                continue;
            }
            let c = k.neg(&v[p]);
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !k.is_zero(b) {
                    v[j] = k.mul_add(&v[j], &c, b);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K::E]) -> bool {
        let k = self.field();
        self.reduce(v).iter().all(|x| k.is_zero(x))
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[K::E]) -> Option<Vec<K::E>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates that are not pivots; their unit vectors span a complement.
    pub fn free_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of `v` modulo the subspace, in the complement given by `free_coords`.
    pub fn quotient_coords(&self, v: &[K::E]) -> Vec<K::E> {
        let r = self.reduce(v);
        self.free_coords().into_iter().map(|c| r[c].clone()).collect()
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Mat<K>) -> Self {
        Self::from_mat(self.basis.mul(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn f(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rref_examples() {
        let k = f(5);
        let (r, p) = Mat::identity(&k, 2).rref();
        assert_eq!(r, Mat::identity(&k, 2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = Mat::from_i64(&k, &[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, Mat::from_i64(&k, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = Mat::zeros(&k, 3, 3).rref();
        assert!(r.is_zero() && p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        let k = f(2);
        assert!(Mat::identity(&k, 3).kernel().is_zero());
        assert_eq!(Mat::zeros(&k, 3, 2).kernel().dim(), 3);
        let ker = Mat::from_i64(&k, &[&[1, 1], &[1, 1]]).kernel();
        assert_eq!(ker.vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let k = f(3);
        let b = Mat::from_i64(&k, &[&[1, 2]]);
        assert_eq!(Mat::identity(&k, 2).solve(&b).unwrap().unwrap(), b);
        let z = Mat::zeros(&k, 2, 2);
        assert!(z.solve(&Mat::zeros(&k, 1, 2)).unwrap().is_some());
        assert!(z.solve(&b).unwrap().is_none());
        let a = Mat::from_i64(&k, &[&[1], &[1]]);
        let x = a.solve(&Mat::from_i64(&k, &[&[2]])).unwrap().unwrap();
        assert_eq!(x.mul(&a), Mat::from_i64(&k, &[&[2]]));
        assert!(a.solve(&Mat::from_i64(&k, &[&[1, 1]])).is_err());
    }

    #[test]
    fn subspace_examples() {
        let k = f(2);
        let l1 = Subspace::from_rows(&k, 2, vec![vec![1, 0]]);
        let l2 = Subspace::from_rows(&k, 2, vec![vec![1, 1]]);
        assert!(l1.sum(&l2).unwrap().is_full());
        assert!(l1.intersection(&l2).unwrap().is_zero());
        assert_eq!(l1.sum(&l1).unwrap(), l1);
        assert_eq!(l1.intersection(&l1).unwrap(), l1);
        let a = Subspace::from_rows(&k, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = Subspace::from_rows(&k, 4, vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersection(&b).unwrap().is_zero());
    }

    #[test]
    fn inverse_and_pow() {
        let k = f(7);
        let m = Mat::from_i64(&k, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(&k, 2));
        let n = Mat::from_i64(&k, &[&[0, 1], &[0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!m.is_nilpotent());
        assert!(n.inverse().is_none());
    }
}
