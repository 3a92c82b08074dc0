use super::scalar::{Field, Scalar};

/// Incrementally maintained reduced echelon basis.
///
/// Every stored row has a leading 1 at its pivot and zeros at the pivots
/// of all other rows, so reducing a vector is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Subtracts the projection onto the current span, in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut pairs: Vec<_> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace { field: self.field, ambient_dim: self.dim, basis, pivots }
    }
}

/// A subspace of `F^n` stored by its unique reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit_vector(field, ambient_dim, i)).collect();
        Subspace { field, ambient_dim, basis, pivots: (0..ambient_dim).collect() }
    }

    pub fn from_vectors(
        field: Field,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<Scalar>>,
    ) -> Self {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vectors {
            if e.rank() == ambient_dim {
                break;
            }
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn to_echelon(&self) -> Echelon {
        Echelon {
            field: self.field,
            dim: self.ambient_dim,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.to_echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.to_echelon();
        self.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.to_echelon();
        for v in &other.basis {
            e.insert(v.clone());
        }
        e.into_subspace()
    }

    /// Image of the subspace under coordinate embedding `i -> positions[i]`.
    pub fn embed(&self, positions: &[usize], ambient_dim: usize) -> Subspace {
        assert_eq!(positions.len(), self.ambient_dim);
        let vectors = self.basis.iter().map(|v| {
            let mut w = vec![self.field.zero(); ambient_dim];
            for (x, &p) in v.iter().zip(positions) {
                w[p] = x.clone();
            }
            w
        });
        Subspace::from_vectors(self.field, ambient_dim, vectors)
    }
}

pub fn unit_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_form_is_canonical() {
        let f = Field::Rational;
        let a = Subspace::from_vectors(
            f,
            3,
            vec![vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)], vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)]],
        );
        let b = Subspace::from_vectors(
            f,
            3,
            vec![vec![f.from_i64(1), f.from_i64(3), f.from_i64(4)], vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)]],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.complement_coordinates(), vec![2]);
    }

    #[test]
    fn sums_and_containment() {
        let f = Field::Prime(5);
        let x = Subspace::from_vectors(f, 2, vec![unit_vector(f, 2, 0)]);
        let y = Subspace::from_vectors(f, 2, vec![unit_vector(f, 2, 1)]);
        assert!(x.is_subspace_of(&x.sum(&y)));
        assert_eq!(x.sum(&y), Subspace::full(f, 2));
        assert!(!x.contains(&unit_vector(f, 2, 1)));
    }
}
