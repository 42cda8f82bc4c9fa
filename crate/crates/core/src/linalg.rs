//! Dense matrices and subspaces over an exact [`Field`].

use std::fmt;

use crate::field::{Field, Poly, Value};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.fmt_value(x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Value>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix::new(field, rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Value) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Value>>, cols: usize) -> Matrix {
        let r = rows.len();
        let data: Vec<Value> = rows.into_iter().flat_map(|row| {
            assert_eq!(row.len(), cols, "ragged matrix");
            row
        }).collect();
        Matrix::new(field, r, cols, data)
    }

    pub fn from_i64(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        Matrix::new(field, rows, cols, entries.iter().map(|&x| field.from_i64(x)).collect())
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Value] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Value {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Value) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Value] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Value> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(&self.field, self.rows)
    }

    pub fn mul(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.rows, "matrix product shape");
        assert!(self.field == b.field, "matrices over different fields");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..b.cols {
                    let idx = i * b.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.shape(), b.shape(), "matrix sum shape");
        let f = &self.field;
        Matrix::new(f, self.rows, self.cols, self.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, b: &Matrix) -> Matrix {
        self.add(&b.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| self.field.neg(x))
    }

    pub fn scale(&self, c: &Value) -> Matrix {
        self.map(|x| self.field.mul(x, c))
    }

    pub fn map(&self, g: impl Fn(&Value) -> Value) -> Matrix {
        Matrix::new(&self.field, self.rows, self.cols, self.data.iter().map(g).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Value]) -> Vec<Value> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(self)` for a square matrix, coefficients already in the matrix field.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let f = &self.field;
        let mut acc = Matrix::zeros(f, self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::scalar(f, self.rows, c));
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for j in 0..self.cols {
                    m.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
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

    /// Basis of `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Value>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, m.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn hstack(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.rows, b.rows, "hstack rows");
        let mut data = Vec::with_capacity(self.rows * (self.cols + b.cols));
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(b.row(r));
        }
        Matrix::new(&self.field, self.rows, self.cols + b.cols, data)
    }

    pub fn vstack(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&b.data);
        Matrix::new(&self.field, self.rows + b.rows, self.cols, data)
    }

    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, last
    /// column `-c_0, ..., -c_{e-1}`.
    pub fn companion(f: &Poly) -> Matrix {
        let field = f.field();
        let e = f.degree().expect("nonzero polynomial");
        let mut m = Matrix::zeros(field, e, e);
        for r in 1..e {
            m.set(r, r - 1, field.one());
        }
        for r in 0..e {
            m.set(r, e - 1, field.neg(&f.coeff(r)));
        }
        m
    }
}

/// A subspace of `F^n` kept as reduced echelon rows.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Value>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Field, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Value>] {
        &self.rows
    }

    fn reduce(&self, v: &[Value]) -> Vec<Value> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Value]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Value]) -> bool {
        assert_eq!(v.len(), self.ambient, "subspace vector length");
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&w) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(pos, w);
        self.pivots.insert(pos, p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_nullspace() {
        let q = Field::rationals();
        let a = Matrix::from_i64(&q, 2, 2, &[1, 2, 3, 4]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let s = Matrix::from_i64(&q, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let ns = s.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(s.mul_vec(&v).iter().all(|x| q.is_zero(x)));
        }
        assert!(Matrix::from_i64(&q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn companion_matches_hand_values() {
        let q = Field::rationals();
        let f = Poly::from_i64(&q, &[1, -3, 1]);
        assert_eq!(Matrix::companion(&f), Matrix::from_i64(&q, 2, 2, &[0, -1, 1, 3]));
        assert_eq!(Matrix::companion(&Poly::from_i64(&q, &[-2, 1])), Matrix::from_i64(&q, 1, 1, &[2]));
        assert!(Matrix::companion(&f).eval_poly(&f).is_zero());
    }

    #[test]
    fn subspace_growth() {
        let f2 = Field::prime(2).unwrap();
        let mut s = Subspace::new(&f2, 3);
        assert!(s.insert(&[Value::P(1), Value::P(1), Value::P(0)]));
        assert!(s.insert(&[Value::P(0), Value::P(1), Value::P(1)]));
        assert!(!s.insert(&[Value::P(1), Value::P(0), Value::P(1)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[Value::P(1), Value::P(0), Value::P(1)]));
    }
}
