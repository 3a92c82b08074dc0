use serde::Serialize;

use super::datum::CellDatum;
use crate::algebra::{Element, ModuleRep};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseMatrix, Subspace};

/// The cell module `Δ(λ)` with basis `{c^λ_s : s ∈ T(λ)}`.
#[derive(Clone, Debug)]
pub struct CellModuleRep {
    lambda: usize,
    basis_labels: Vec<String>,
    module: ModuleRep,
}

impl CellModuleRep {
    pub fn new(lambda: usize, basis_labels: Vec<String>, module: ModuleRep) -> Self {
        CellModuleRep { lambda, basis_labels, module }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn module(&self) -> &ModuleRep {
        &self.module
    }

    pub fn action(&self, basis_index: usize) -> &SparseMatrix {
        self.module.action(basis_index)
    }

    pub fn action_matrix(&self, a: &Element) -> Matrix {
        self.module.action_matrix(a)
    }
}

/// Builds `Δ(λ)`: column `s` of the action of `a` holds the coefficients of
/// `c^λ_{u t₀}` in `a·c^λ_{s t₀}` with `t₀` the first element of `T(λ)`.
pub fn cell_module(d: &CellDatum, lambda: usize) -> Result<CellModuleRep> {
    d.check_cell(lambda)?;
    let k = d.cell_size(lambda);
    let alg = d.algebra();
    let actions = (0..d.dim())
        .map(|a| {
            let columns = (0..k)
                .map(|s| {
                    alg.basis_product(a, d.index(lambda, s, 0))
                        .iter()
                        .filter_map(|(idx, c)| {
                            let b = d.triple(*idx as usize);
                            (b.cell == lambda && b.t == 0).then(|| (b.s, c.clone()))
                        })
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(d.field(), k, columns)
        })
        .collect();
    Ok(CellModuleRep::new(lambda, d.t_set(lambda).to_vec(), ModuleRep::new(d.field(), k, actions)))
}

pub fn action_matrix(d: &CellDatum, lambda: usize, a: &Element) -> Result<Matrix> {
    d.check_element(a)?;
    Ok(cell_module(d, lambda)?.action_matrix(a))
}

#[derive(Clone, Debug, Serialize)]
pub struct GramData {
    pub lambda: usize,
    pub matrix: Matrix,
    pub rank: usize,
    pub radical: Subspace,
}

/// Coefficient of `c^λ_{ub}` in `c^λ_{us}·c^λ_{tb}`, i.e. `⟨c_s, c_t⟩`
/// computed with the reference indices `u` and `b`.
pub fn gram_entry(d: &CellDatum, lambda: usize, s: usize, t: usize, u: usize, b: usize) -> Scalar {
    let target = d.index(lambda, u, b) as u32;
    d.algebra()
        .basis_product(d.index(lambda, u, s), d.index(lambda, t, b))
        .iter()
        .find(|(i, _)| *i == target)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| d.field().zero())
}

pub fn gram_matrix(d: &CellDatum, lambda: usize) -> Result<GramData> {
    d.check_cell(lambda)?;
    let k = d.cell_size(lambda);
    let mut matrix = Matrix::zeros(d.field(), k, k);
    for s in 0..k {
        for t in 0..k {
            matrix[(s, t)] = gram_entry(d, lambda, s, t, 0, 0);
        }
    }
    let radical = matrix.nullspace();
    Ok(GramData { lambda, rank: k - radical.dim(), matrix, radical })
}

/// Cells whose bilinear form is nonzero.
pub fn lambda_zero(d: &CellDatum) -> Vec<usize> {
    (0..d.num_cells())
        .filter(|&c| {
            let k = d.cell_size(c);
            (0..k).any(|s| (0..k).any(|t| !gram_entry(d, c, s, t, 0, 0).is_zero()))
        })
        .collect()
}

/// `dim L(λ)`, the rank of the Gram matrix.
pub fn simple_dim(d: &CellDatum, lambda: usize) -> Result<usize> {
    let g = gram_matrix(d, lambda)?;
    if g.rank == 0 {
        return Err(Error::domain(format!(
            "cell {} has zero bilinear form, so it indexes no simple module",
            d.label(lambda)
        )));
    }
    Ok(g.rank)
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimplicityReport {
    pub semisimple: bool,
    /// `det G(λ)` for each cell in label order.
    pub determinants: Vec<Scalar>,
}

pub fn is_semisimple(d: &CellDatum) -> Result<SemisimplicityReport> {
    let determinants = (0..d.num_cells())
        .map(|c| gram_matrix(d, c)?.matrix.det())
        .collect::<Result<Vec<_>>>()?;
    Ok(SemisimplicityReport { semisimple: determinants.iter().all(|x| !x.is_zero()), determinants })
}
