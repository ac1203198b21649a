//! Exact dense linear algebra over a [`Field`].
//!
//! Gauss-Jordan elimination with deterministic pivoting (first nonzero entry
//! in column order). Prime fields take a native `u64` path; cyclotomic fields
//! go through [`Scalar`] arithmetic on normalised rationals.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::par;
use crate::scalars::{Field, FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data })
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    /// Builds a matrix from small integers (reduced into the field).
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let (n, m) = (self.rows, other.cols);
        let zero = self.field.zero();
        let rows: Vec<Vector> = par::map_range(n, |i| {
            let mut acc = vec![zero.clone(); m];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *slot = &*slot + &(a * b);
                    }
                }
            }
            acc
        });
        Matrix::from_rows(&self.field, m, rows)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).cloned().collect())
            .collect();
        Matrix::from_rows(&self.field, cols, rows)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            m.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(&self.field, self.cols, self.row_vectors())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the null space `{v : Mv = 0}`; its length is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.echelon().kernel_basis()
    }

    /// Some exact solution of `Mx = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        Ok(self.solve_many(std::slice::from_ref(&b.to_vec()))?.pop().unwrap())
    }

    /// Solves `Mx = b` for several right-hand sides with one elimination.
    pub fn solve_many(&self, rhs: &[Vector]) -> Result<Vec<Option<Vector>>> {
        for b in rhs {
            if b.len() != self.rows {
                return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
            }
        }
        let k = rhs.len();
        let rows: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(rhs.iter().map(|b| b[r].clone()));
                row
            })
            .collect();
        let ech = Echelon::from_rows(&self.field, self.cols + k, rows);
        let zero = self.field.zero();
        let out = (0..k)
            .map(|j| {
                let col = self.cols + j;
                // Inconsistent iff some row is zero on the coefficient part and
                // nonzero on this right-hand side.
                let inconsistent = ech.rows.iter().zip(&ech.pivots).any(|(row, &p)| p >= self.cols && !row[col].is_zero());
                if inconsistent {
                    return None;
                }
                let mut x = vec![zero.clone(); self.cols];
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if p < self.cols {
                        x[p] = row[col].clone();
                    }
                }
                Some(x)
            })
            .collect();
        Ok(out)
    }

    /// Whether `v` lies in the column space: `rank([M|v]) = rank(M)`.
    pub fn in_column_space(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let aug = self.hstack(&Matrix::from_columns(&self.field, self.rows, &[v.to_vec()])?)?;
        Ok(aug.rank() == self.rank())
    }

    /// Comma-separated dump in the canonical scalar format, one row per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| format!("\"{x}\"")).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }
}

/// Reduced row echelon form of a list of rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    /// Nonzero rows, each normalised to 1 at its pivot and 0 at other pivots.
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vector>) -> Echelon {
        let (rows, pivots) = match field.spec() {
            FieldSpec::Prime(p) => rref_mod(field, p, cols, rows),
            FieldSpec::Cyclotomic(_) => rref_generic(cols, rows),
        };
        Echelon { field: field.clone(), cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -&row[free];
                    }
                }
                v
            })
            .collect()
    }
}

fn to_residues(rows: &[Vector]) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| match s {
                    Scalar::Mod { value, .. } => *value,
                    Scalar::Cyclo(_) => panic!("cyclotomic scalar in a prime-field matrix"),
                })
                .collect()
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = a as u128;
    let mut e = p - 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn rref_mod(field: &Field, p: u64, cols: usize, rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let mut m = to_residues(&rows);
    let pm = p as u128;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p) as u128;
        for v in m[r][c..].iter_mut() {
            *v = (*v as u128 * inv % pm) as u64;
        }
        let pivot_row = m[r].clone();
        let eliminate = |row: &mut Vec<u64>| {
            let f = row[c];
            if f == 0 {
                return;
            }
            let f = f as u128;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    let t = (f * y as u128 % pm) as u64;
                    *x = if *x >= t { *x - t } else { *x + p - t };
                }
            }
        };
        let (head, tail) = m.split_at_mut(r);
        par::for_each_mut(head, eliminate);
        par::for_each_mut(&mut tail[1..], eliminate);
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let rows = m
        .into_iter()
        .map(|row| row.into_iter().map(|v| field.from_i64(v as i64)).collect())
        .collect();
    (rows, pivots)
}

fn rref_generic(cols: usize, mut m: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for v in m[r][c..].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = m[r].clone();
        let eliminate = |row: &mut Vector| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        };
        let (head, tail) = m.split_at_mut(r);
        par::for_each_mut(head, eliminate);
        par::for_each_mut(&mut tail[1..], eliminate);
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// A subspace of `k^n` stored by its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn span(field: &Field, ambient: usize, vectors: Vec<Vector>) -> Subspace {
        Subspace { ech: Echelon::from_rows(field, ambient, vectors) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.cols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// Echelon basis; coordinates of a member `v` in this basis are `v[pivots]`.
    pub fn basis(&self) -> &[Vector] {
        &self.ech.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    /// `v` minus its projection along the echelon basis; zero at every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.ech.rows.iter().zip(&self.ech.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates in the echelon basis, if `v` is a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.ech.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Standard basis positions complementary to the pivots; the classes of
    /// these unit vectors form a basis of the quotient.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ech.cols];
        for &p in &self.ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.ech.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.complement_positions().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis().to_vec();
        vs.extend(other.basis().iter().cloned());
        Subspace::span(&self.ech.field, self.ech.cols, vs)
    }
}

/// Ranks of many matrices, computed independently (in parallel when enabled).
pub fn batch_rank(mats: &[Matrix]) -> Vec<usize> {
    par::map(mats, Matrix::rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f5();
        assert_eq!(Matrix::identity(&f, 3).rank(), 3);
        assert_eq!(Matrix::zeros(&f, 4, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(&f, 0, 0).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let b = vec![f.from_i64(3), f.from_i64(1), f.from_i64(4)];
        assert_eq!(Matrix::identity(&f, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(&f, 3, 3).solve(&b).unwrap(), None);
        let m = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        let rhs = vec![f.from_i64(1), f.from_i64(2)];
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), rhs);
        assert_eq!(&x[0] + &(&f.from_i64(2) * &x[1]), f.one());
        assert!(matches!(m.solve(&[f.one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_examples() {
        let f = f5();
        assert!(Matrix::identity(&f, 4).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(&f, 3, 3).kernel_basis().len(), 3);
        let m = Matrix::from_i64(&f, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(&k[0][0] + &k[0][1], f.zero());
    }

    #[test]
    fn column_space_examples() {
        let f = f5();
        let m = Matrix::from_i64(&f, &[&[1], &[2]]);
        assert!(m.in_column_space(&[f.zero(), f.zero()]).unwrap());
        assert!(m.in_column_space(&[f.from_i64(2), f.from_i64(4)]).unwrap());
        assert!(!m.in_column_space(&[f.from_i64(1), f.from_i64(1)]).unwrap());
        let z = Matrix::zeros(&f, 2, 2);
        assert!(!z.in_column_space(&[f.one(), f.zero()]).unwrap());
    }

    #[test]
    fn cyclotomic_elimination() {
        let f = Field::cyclotomic(3).unwrap();
        let z = f.generator();
        // rows (1, z) and (z, z^2) are proportional
        let m = Matrix::from_rows(&f, 2, vec![vec![f.one(), z.clone()], vec![z.clone(), &z * &z]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn subspace_quotient_coordinates() {
        let f = f5();
        let s = Subspace::span(&f, 3, vec![vec![f.zero(), f.one(), f.from_i64(2)]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.complement_positions(), vec![0, 2]);
        let v = vec![f.from_i64(1), f.from_i64(1), f.from_i64(1)];
        // v - (0,1,2) = (1,0,-1)
        assert_eq!(s.quotient_coordinates(&v), vec![f.one(), f.from_i64(-1)]);
    }
}
