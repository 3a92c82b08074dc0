//! Finite-dimensional associative algebras given by structure constants,
//! their elements, and matrix representations.

use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Echelon, Field, Matrix, Scalar, SparseMatrix, Subspace};
use crate::union_find::UnionFind;

/// The Mersenne prime 2^61 - 1.
const RANK_CHECK_PRIME: u64 = (1 << 61) - 1;

/// Sparse linear combination of basis elements, sorted by index with no
/// explicit zeros, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: Vec<(usize, Scalar)>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn basis(field: Field, i: usize) -> Self {
        Element { terms: vec![(i, field.one())] }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Element { terms: merged }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Element {
            terms: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); dim];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.terms.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.terms[k].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(i, _)| *i)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::from_terms(self.terms.iter().cloned().chain(other.terms.iter().map(|(i, c)| (*i, -c))))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(i, c)| (*i, c * s)).collect() }
    }

    /// Image under a basis permutation / relabelling.
    pub fn map_basis(&self, f: impl Fn(usize) -> usize) -> Element {
        Element::from_terms(self.terms.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// Associative algebra with basis `0..dim` and a stored multiplication table.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    offsets: Vec<usize>,
    entries: Vec<(u32, Scalar)>,
    unit: Element,
}

impl Algebra {
    /// Tabulates `product(i, j)` for all basis pairs.
    pub fn from_products(
        field: Field,
        dim: usize,
        unit: Element,
        mut product: impl FnMut(usize, usize) -> Element,
    ) -> Self {
        let mut offsets = Vec::with_capacity(dim * dim + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                entries.extend(p.terms.into_iter().map(|(k, c)| (k as u32, c)));
                offsets.push(entries.len());
            }
        }
        Algebra { field, dim, offsets, entries, unit }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, Scalar)] {
        let k = i * self.dim + j;
        &self.entries[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn basis_product_element(&self, i: usize, j: usize) -> Element {
        Element { terms: self.basis_product(i, j).iter().map(|(k, c)| (*k as usize, c.clone())).collect() }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut acc = vec![self.field.zero(); self.dim];
        let mut touched = false;
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let xy = x * y;
                for (k, c) in self.basis_product(*i, *j) {
                    acc[*k as usize] += &(&xy * c);
                    touched = true;
                }
            }
        }
        if !touched {
            return Element::zero();
        }
        Element::from_dense(&acc)
    }

    /// Matrix of left multiplication by basis element `i` on the regular module.
    pub fn left_regular(&self, i: usize) -> SparseMatrix {
        let columns = (0..self.dim)
            .map(|j| self.basis_product(i, j).iter().map(|(k, c)| (*k as usize, c.clone())).collect())
            .collect();
        SparseMatrix::from_columns(self.field, self.dim, columns)
    }

    /// `tr(L_{b_c})` for every basis element.
    pub fn basis_traces(&self) -> Vec<Scalar> {
        (0..self.dim)
            .map(|c| {
                let mut t = self.field.zero();
                for k in 0..self.dim {
                    if let Some((_, v)) = self.basis_product(c, k).iter().find(|(idx, _)| *idx as usize == k) {
                        t += v;
                    }
                }
                t
            })
            .collect()
    }

    /// Gram matrix of the trace form `(a, b) ↦ tr(L_{ab})` of the regular representation.
    pub fn trace_form(&self) -> Matrix {
        let tau = self.basis_traces();
        let mut t = Matrix::zeros(self.field, self.dim, self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let mut acc = self.field.zero();
                for (c, v) in self.basis_product(a, b) {
                    let tc = &tau[*c as usize];
                    if !tc.is_zero() {
                        acc += &(v * tc);
                    }
                }
                t[(a, b)] = acc;
            }
        }
        t
    }

    /// Radical of the trace form. In characteristic 0 this is the Jacobson radical.
    pub fn jacobson_radical(&self) -> Result<Subspace> {
        if self.field.characteristic() != 0 {
            return Err(Error::unsupported(
                "trace-form radical equals the Jacobson radical only in characteristic 0",
            ));
        }
        Ok(self.trace_form_radical())
    }

    /// Nullspace of the trace form, computed block by block over the
    /// connected components of its nonzero pattern.
    pub fn trace_form_radical(&self) -> Subspace {
        let t = self.trace_form();
        let n = self.dim;
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if !t[(a, b)].is_zero() {
                    uf.union(a, b);
                }
            }
        }
        let mut e = Echelon::new(self.field, n);
        for comp in uf.classes() {
            let block = t.select(&comp, &comp);
            // full rank mod p forces full rank over ℚ
            if self.field == Field::Rational && block.rank_mod(RANK_CHECK_PRIME) == Some(comp.len()) {
                continue;
            }
            for v in block.nullspace().basis() {
                let mut w = vec![self.field.zero(); n];
                for (x, &p) in v.iter().zip(&comp) {
                    w[p] = x.clone();
                }
                e.insert(w);
            }
        }
        e.into_subspace()
    }

    /// Checks associativity on the given basis triples; returns the failures.
    pub fn associativity_failures(
        &self,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Vec<(usize, usize, usize)> {
        let f = self.field;
        triples
            .into_iter()
            .filter(|&(a, b, c)| {
                let (ea, eb, ec) = (Element::basis(f, a), Element::basis(f, b), Element::basis(f, c));
                self.multiply(&self.multiply(&ea, &eb), &ec) != self.multiply(&ea, &self.multiply(&eb, &ec))
            })
            .collect()
    }

    pub fn is_unit(&self, u: &Element) -> bool {
        (0..self.dim).all(|i| {
            let b = Element::basis(self.field, i);
            self.multiply(u, &b) == b && self.multiply(&b, u) == b
        })
    }
}

/// A left module given by one action matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    field: Field,
    dim: usize,
    actions: Vec<SparseMatrix>,
}

impl ModuleRep {
    pub fn new(field: Field, dim: usize, actions: Vec<SparseMatrix>) -> Self {
        debug_assert!(actions.iter().all(|m| m.rows() == dim && m.cols() == dim));
        ModuleRep { field, dim, actions }
    }

    pub fn regular(alg: &Algebra) -> Self {
        ModuleRep::new(alg.field(), alg.dim(), (0..alg.dim()).map(|i| alg.left_regular(i)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, basis_index: usize) -> &SparseMatrix {
        &self.actions[basis_index]
    }

    pub fn algebra_dim(&self) -> usize {
        self.actions.len()
    }

    pub fn act_vec(&self, a: &Element, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, c) in a.terms() {
            self.actions[*i].mul_vec_acc(v, c, &mut out);
        }
        out
    }

    pub fn action_matrix(&self, a: &Element) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, c) in a.terms() {
            for j in 0..self.dim {
                for (r, v) in self.actions[*i].column(j) {
                    m[(*r, j)] += &(c * v);
                }
            }
        }
        m
    }

    /// Span of `{x·w : x ∈ span(elements), w ∈ w_space}`.
    pub fn image_of(&self, elements: &[Element], w_space: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.field, self.dim);
        'outer: for x in elements {
            for w in w_space.basis() {
                if e.rank() == self.dim {
                    break 'outer;
                }
                let v = self.act_vec(x, w);
                if v.iter().any(|s| !s.is_zero()) {
                    e.insert(v);
                }
            }
        }
        e.into_subspace()
    }

    /// Radical filtration `M ⊇ J·M ⊇ J²·M ⊇ … ⊇ 0` for a nilpotent ideal `J`
    /// given by a spanning set. Returns the subspaces, starting with `M`.
    pub fn radical_filtration(&self, ideal: &[Element]) -> Vec<Subspace> {
        let mut layers = vec![Subspace::full(self.field, self.dim)];
        loop {
            let last = layers.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.image_of(ideal, last);
            if next.dim() == last.dim() {
                // not nilpotent on this module; stop rather than loop forever
                break;
            }
            layers.push(next);
        }
        layers
    }

    /// Module structure on `upper / lower` for submodules `lower ⊆ upper`.
    /// When `upper` is the whole module the quotient basis is the set of unit
    /// vectors off the pivot columns of `lower`; otherwise it is the greedy
    /// extension of `lower` by the basis of `upper`.
    pub fn subquotient(&self, upper: &Subspace, lower: &Subspace) -> ModuleRep {
        let lower_e = lower.to_echelon();
        let reps: Vec<Vec<Scalar>> = if upper.dim() == self.dim {
            lower.complement_coordinates().into_iter().map(|i| unit_vector(self.field, self.dim, i)).collect()
        } else {
            let mut ext = lower_e.clone();
            upper.basis().iter().filter(|v| ext.insert((*v).clone())).cloned().collect()
        };
        let k = reps.len();
        // coordinates of a vector of `upper` along `reps` modulo `lower`:
        // reduce by lower, then read coordinates in the echelon basis of the reduced reps
        let mut reduced_reps = Vec::with_capacity(k);
        for r in &reps {
            let mut w = r.clone();
            lower_e.reduce(&mut w);
            reduced_reps.push(w);
        }
        let coord = Coordinates::new(self.field, self.dim, &reduced_reps);
        let actions = self
            .actions
            .iter()
            .map(|act| {
                let columns = reps
                    .iter()
                    .map(|r| {
                        let mut img = act.mul_vec(r);
                        lower_e.reduce(&mut img);
                        coord.coordinates(&img).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect();
                SparseMatrix::from_columns(self.field, k, columns)
            })
            .collect();
        ModuleRep::new(self.field, k, actions)
    }

    pub fn submodule(&self, sub: &Subspace) -> ModuleRep {
        self.subquotient(sub, &Subspace::zero(self.field, self.dim))
    }

    pub fn quotient(&self, sub: &Subspace) -> ModuleRep {
        self.subquotient(&Subspace::full(self.field, self.dim), sub)
    }

    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        let e = sub.to_echelon();
        self.actions.iter().all(|a| sub.basis().iter().all(|v| e.contains(&a.mul_vec(v))))
    }
}

/// Expresses vectors lying in `span(vectors)` in terms of those vectors.
struct Coordinates {
    field: Field,
    // rows: echelonized combination [v | coefficient tag]
    echelon: Echelon,
    k: usize,
    dim: usize,
}

impl Coordinates {
    fn new(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let k = vectors.len();
        let mut echelon = Echelon::new(field, dim + k);
        for (i, v) in vectors.iter().enumerate() {
            let mut row = v.clone();
            row.extend((0..k).map(|j| if j == i { field.one() } else { field.zero() }));
            echelon.insert(row);
        }
        Coordinates { field, echelon, k, dim }
    }

    fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut row = v.to_vec();
        row.extend((0..self.k).map(|_| self.field.zero()));
        self.echelon.reduce(&mut row);
        debug_assert!(row[..self.dim].iter().all(Scalar::is_zero), "vector outside the span");
        row[self.dim..].iter().map(|c| -c).collect()
    }
}

/// Basis of `{X : ρ_target(a)·X = X·ρ_source(a) for all basis a}`, each `X`
/// a `target.dim × source.dim` matrix, in canonical echelon order of their
/// row-major flattenings.
pub fn hom_space(source: &ModuleRep, target: &ModuleRep) -> Result<Vec<Matrix>> {
    if source.field != target.field || source.algebra_dim() != target.algebra_dim() {
        return Err(Error::input("modules over different algebras"));
    }
    let field = source.field;
    let (m, n) = (source.dim, target.dim);
    let mut basis: Vec<Matrix> = Vec::new();
    for p in 0..n {
        for q in 0..m {
            let mut x = Matrix::zeros(field, n, m);
            x[(p, q)] = field.one();
            basis.push(x);
        }
    }
    for a in 0..source.algebra_dim() {
        if basis.is_empty() {
            break;
        }
        let (ra, sa) = (target.action(a), source.action(a));
        if ra.is_zero() && sa.is_zero() {
            continue;
        }
        let residuals: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|x| {
                let lhs = sparse_left_mul(ra, x);
                let rhs = sparse_right_mul(x, sa);
                let d = lhs.sub(&rhs).expect("same shape");
                d.to_rows().into_iter().flatten().collect()
            })
            .collect();
        if residuals.iter().all(|r| r.iter().all(Scalar::is_zero)) {
            continue;
        }
        let r = Matrix::from_columns(field, n * m, &residuals);
        let kernel = r.nullspace();
        basis = kernel
            .basis()
            .iter()
            .map(|y| {
                let mut acc = Matrix::zeros(field, n, m);
                for (c, x) in y.iter().zip(&basis) {
                    if !c.is_zero() {
                        acc = acc.add(&x.scale(c)).expect("same shape");
                    }
                }
                acc
            })
            .collect();
    }
    let flat = basis.iter().map(|x| x.to_rows().into_iter().flatten().collect::<Vec<_>>());
    let canon = Subspace::from_vectors(field, n * m, flat);
    Ok(canon
        .basis()
        .iter()
        .map(|v| Matrix::from_rows(field, v.chunks(m).map(<[Scalar]>::to_vec).collect()).expect("rectangular"))
        .collect())
}

/// `a · x` for sparse `a`.
pub fn sparse_left_mul(a: &SparseMatrix, x: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(x.field(), a.rows(), x.cols());
    for k in 0..a.cols() {
        for (i, v) in a.column(k) {
            for j in 0..x.cols() {
                let xv = &x[(k, j)];
                if !xv.is_zero() {
                    out[(*i, j)] += &(v * xv);
                }
            }
        }
    }
    out
}

/// `x · a` for sparse `a`.
pub fn sparse_right_mul(x: &Matrix, a: &SparseMatrix) -> Matrix {
    let mut out = Matrix::zeros(x.field(), x.rows(), a.cols());
    for j in 0..a.cols() {
        for (k, v) in a.column(j) {
            for i in 0..x.rows() {
                let xv = &x[(i, *k)];
                if !xv.is_zero() {
                    out[(i, j)] += &(xv * v);
                }
            }
        }
    }
    out
}

/// Checks that `x` intertwines the two module structures.
pub fn is_intertwiner(source: &ModuleRep, target: &ModuleRep, x: &Matrix) -> bool {
    (0..source.algebra_dim()).all(|a| {
        sparse_left_mul(target.action(a), x) == sparse_right_mul(x, source.action(a))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The dual numbers F[x]/x², basis {1, x}.
    fn dual_numbers(field: Field) -> Algebra {
        Algebra::from_products(field, 2, Element::basis(field, 0), |i, j| match (i, j) {
            (0, k) | (k, 0) => Element::basis(field, k),
            _ => Element::zero(),
        })
    }

    #[test]
    fn element_normal_form() {
        let f = Field::Rational;
        let e = Element::from_terms(vec![(3, f.one()), (1, f.from_i64(2)), (3, f.from_i64(-1))]);
        assert_eq!(e.terms(), &[(1, f.from_i64(2))]);
        assert!(Element::from_terms(vec![(0, f.zero())]).is_zero());
    }

    #[test]
    fn dual_numbers_radical() {
        let f = Field::Rational;
        let a = dual_numbers(f);
        assert!(a.is_unit(a.unit()));
        let j = a.jacobson_radical().unwrap();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&[f.zero(), f.one()]));
        assert!(dual_numbers(Field::Prime(3)).jacobson_radical().is_err());
    }

    #[test]
    fn regular_module_filtration() {
        let f = Field::Rational;
        let a = dual_numbers(f);
        let m = ModuleRep::regular(&a);
        let x = Element::basis(f, 1);
        let filt = m.radical_filtration(&[x]);
        assert_eq!(filt.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![2, 1, 0]);
        let top = m.quotient(&filt[1]);
        assert_eq!(top.dim(), 1);
        assert!(top.action(1).is_zero());
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        // End_A(A) ≅ A^op, so its dimension is dim A
        let f = Field::Rational;
        let a = dual_numbers(f);
        let m = ModuleRep::regular(&a);
        let homs = hom_space(&m, &m).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|x| is_intertwiner(&m, &m, x)));
    }
}
