use std::fmt;

use super::scalar::{Mode, Scalar};

/// Dense finite-dimensional vector over [`Scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct FinVector {
    entries: Vec<Scalar>,
}

impl FinVector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        FinVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        FinVector {
            entries: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[k] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Scalar) {
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> FinVector {
        FinVector::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &FinVector) -> FinVector {
        assert_eq!(self.dim(), other.dim());
        FinVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &FinVector) -> FinVector {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// ⟨self, other⟩, conjugate-linear in the second argument.
    pub fn inner(&self, other: &FinVector) -> Scalar {
        assert_eq!(self.dim(), other.dim());
        let mut acc = Scalar::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * &b.conj());
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> Scalar {
        self.inner(self)
    }

    pub fn mode(&self) -> Mode {
        if self.entries.iter().any(|e| e.mode() == Mode::Float) {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    pub fn approx_eq(&self, other: &FinVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// First index holding a nonzero entry.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct FinMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl FinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FinMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FinMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FinMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn diag(values: Vec<Scalar>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let idx = i * self.cols + j;
        self.entries[idx] = &self.entries[idx] + v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mode(&self) -> Mode {
        if self.entries.iter().any(|e| e.mode() == Mode::Float) {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    pub fn row(&self, i: usize) -> FinVector {
        FinVector::new((0..self.cols).map(|j| self.get(i, j).clone()).collect())
    }

    pub fn col(&self, j: usize) -> FinVector {
        FinVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn add(&self, other: &FinMatrix) -> FinMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FinMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FinMatrix) -> FinMatrix {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FinMatrix {
        FinMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, other: &FinMatrix) -> FinMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = FinMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &FinVector) -> FinVector {
        assert_eq!(self.cols, v.dim());
        let mut out = FinVector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v.get(j).is_zero() {
                    acc += &(a * v.get(j));
                }
            }
            out.set(i, acc);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> FinMatrix {
        FinMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> FinMatrix {
        FinMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self.get(i, j).approx_eq(&self.get(j, i).conj(), tol) {
                    return false;
                }
            }
        }
        true
    }

    pub fn submatrix(&self, row_sel: &[usize], col_sel: &[usize]) -> FinMatrix {
        FinMatrix::from_fn(row_sel.len(), col_sel.len(), |i, j| {
            self.get(row_sel[i], col_sel[j]).clone()
        })
    }

    /// u·v* as a matrix.
    pub fn outer(u: &FinVector, v: &FinVector) -> FinMatrix {
        FinMatrix::from_fn(u.dim(), v.dim(), |i, j| u.get(i) * &v.get(j).conj())
    }

    pub fn from_cols(cols: &[FinVector]) -> FinMatrix {
        let rows = cols.first().map_or(0, FinVector::dim);
        FinMatrix::from_fn(rows, cols.len(), |i, j| cols[j].get(i).clone())
    }

    pub fn approx_eq(&self, other: &FinMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn to_float(&self) -> FinMatrix {
        FinMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_float()).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> FinMatrix {
        assert!(self.is_square());
        let mut acc = FinMatrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for FinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_adjoint() {
        let m = FinMatrix::from_rows(vec![
            vec![Scalar::from_int(1), Scalar::i()],
            vec![Scalar::zero(), Scalar::from_int(2)],
        ]);
        let a = m.adjoint();
        assert_eq!(a.get(1, 0), &Scalar::complex_ratio((0, 1), (-1, 1)));
        let p = m.mul(&FinMatrix::identity(2));
        assert_eq!(p, m);
    }

    #[test]
    fn outer_rank_one() {
        let u = FinVector::basis(2, 0);
        let v = FinVector::basis(2, 1);
        let m = FinMatrix::outer(&u, &v);
        assert_eq!(m.get(0, 1), &Scalar::one());
        assert!(m.get(0, 0).is_zero());
    }
}
