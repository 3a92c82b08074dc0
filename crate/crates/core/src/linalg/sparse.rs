use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// Column-compressed matrix; used for module actions, which are mostly
/// monomial for diagram bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Columns given as `(row, value)` lists; zero values are dropped.
    pub fn from_columns(field: Field, rows: usize, columns: Vec<Vec<(usize, Scalar)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, v)| !v.is_zero());
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        SparseMatrix { field, rows, cols, columns }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { field: m.field(), rows: m.rows(), cols: m.cols(), columns }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        self.mul_vec_acc(v, &self.field.one(), &mut out);
        out
    }

    /// `out += coeff · self · v`.
    pub fn mul_vec_acc(&self, v: &[Scalar], coeff: &Scalar, out: &mut [Scalar]) {
        for (x, col) in v.iter().zip(&self.columns) {
            if x.is_zero() || col.is_empty() {
                continue;
            }
            let cx = if coeff.is_one() { x.clone() } else { coeff * x };
            for (i, a) in col {
                out[*i] += &(a * &cx);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_round_trip() {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[&[0, 2, 0], &[1, 0, 0]]);
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.nnz(), 2);
        assert_eq!(s.to_dense(), m);
        let v = vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)];
        assert_eq!(s.mul_vec(&v), m.mul_vec(&v).unwrap());
    }
}
