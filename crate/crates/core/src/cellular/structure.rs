use serde::Serialize;

use super::datum::CellDatum;
use super::modules::{cell_module, gram_matrix, CellModuleRep, GramData};
use crate::algebra::{self, Element, ModuleRep};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::union_find::UnionFind;

pub fn jacobson_radical(d: &CellDatum) -> Result<Subspace> {
    d.algebra().jacobson_radical()
}

#[derive(Clone, Debug, Serialize)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<Matrix>,
}

/// Intertwiners `m → n`, each a `dim n × dim m` matrix.
pub fn hom_space(d: &CellDatum, m: &CellModuleRep, n: &CellModuleRep) -> Result<HomSpace> {
    if m.module().algebra_dim() != d.dim() || n.module().algebra_dim() != d.dim() {
        return Err(Error::input("module is not over this algebra"));
    }
    let basis = algebra::hom_space(m.module(), n.module())?;
    Ok(HomSpace { dim: basis.len(), basis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyLayer {
    pub dim: usize,
    /// `(μ, multiplicity)` for every simple `L(μ)` occurring in the layer.
    pub simples: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewySeries {
    pub layers: Vec<LoewyLayer>,
}

impl LoewySeries {
    pub fn multiplicity(&self, mu: usize) -> usize {
        self.layers.iter().flat_map(|l| &l.simples).filter(|(m, _)| *m == mu).map(|(_, k)| k).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularityReport {
    /// `d_{λμ} ≠ 0 ⇒ λ ≤ μ` holds.
    pub nonzero_implies_le: bool,
    /// `d_{λμ} ≠ 0 ⇒ λ ≥ μ` holds.
    pub nonzero_implies_ge: bool,
    pub unit_diagonal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    /// Column labels: the cells in `Λ⁰`. Rows are all cells.
    pub columns: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
    pub cartan: Vec<Vec<usize>>,
    pub triangularity: TriangularityReport,
    pub loewy: Vec<LoewySeries>,
}

impl DecompositionMatrix {
    pub fn entry(&self, lambda: usize, mu: usize) -> usize {
        self.columns.iter().position(|&c| c == mu).map_or(0, |j| self.entries[lambda][j])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blocks {
    /// Linkage classes of all cells.
    pub cell_blocks: Vec<Vec<usize>>,
    /// Their nonempty intersections with `Λ⁰`.
    pub blocks: Vec<Vec<usize>>,
}

impl Blocks {
    pub fn from_classes(cell_blocks: Vec<Vec<usize>>, lambda_zero: &[usize]) -> Self {
        let blocks = cell_blocks
            .iter()
            .map(|b| b.iter().copied().filter(|c| lambda_zero.contains(c)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        Blocks { cell_blocks, blocks }
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.cell_blocks.iter().any(|c| c.contains(&a) && c.contains(&b))
    }
}

/// Data for writing a homomorphism out of `Δ(μ)` in terms of the image of
/// one generator: `c^μ_{u t₀}·c_{s₀} = g·c_u` for all `u`.
#[derive(Clone, Debug)]
struct CyclicGenerator {
    s0: usize,
    g_inv: Scalar,
    x: Vec<usize>,
}

/// Everything derived from the trace-form radical, computed once per datum.
pub struct CellularStructure<'a> {
    datum: &'a CellDatum,
    radical: Vec<Element>,
    grams: Vec<GramData>,
    cells: Vec<CellModuleRep>,
    lambda_zero: Vec<usize>,
    generators: Vec<Option<CyclicGenerator>>,
    simples: Vec<Option<ModuleRep>>,
    end_dims: Vec<usize>,
}

impl<'a> CellularStructure<'a> {
    pub fn new(d: &'a CellDatum) -> Result<Self> {
        let j = jacobson_radical(d)?;
        let radical = j.basis().iter().map(|v| Element::from_dense(v)).collect();
        let grams = (0..d.num_cells()).map(|c| gram_matrix(d, c)).collect::<Result<Vec<_>>>()?;
        let cells = (0..d.num_cells()).map(|c| cell_module(d, c)).collect::<Result<Vec<_>>>()?;
        let lambda_zero: Vec<usize> = grams.iter().filter(|g| g.rank > 0).map(|g| g.lambda).collect();
        let generators = grams
            .iter()
            .map(|g| {
                let k = g.matrix.rows();
                let (t0, s0) = (0..k).flat_map(|t| (0..k).map(move |s| (t, s))).find(|&(t, s)| !g.matrix[(t, s)].is_zero())?;
                let g_inv = g.matrix[(t0, s0)].inv().expect("nonzero");
                let x = (0..k).map(|u| d.index(g.lambda, u, t0)).collect();
                Some(CyclicGenerator { s0, g_inv, x })
            })
            .collect();
        let simples: Vec<Option<ModuleRep>> = grams
            .iter()
            .zip(&cells)
            .map(|(g, m)| (g.rank > 0).then(|| m.module().quotient(&g.radical)))
            .collect();
        let mut s = CellularStructure {
            datum: d,
            radical,
            grams,
            cells,
            lambda_zero,
            generators,
            simples,
            end_dims: Vec::new(),
        };
        s.end_dims = (0..d.num_cells())
            .map(|c| s.simples[c].as_ref().map_or(0, |l| s.hom_from_cell_module(c, l)))
            .collect();
        Ok(s)
    }

    pub fn datum(&self) -> &CellDatum {
        self.datum
    }

    pub fn radical(&self) -> &[Element] {
        &self.radical
    }

    pub fn gram(&self, lambda: usize) -> &GramData {
        &self.grams[lambda]
    }

    pub fn cell_module(&self, lambda: usize) -> &CellModuleRep {
        &self.cells[lambda]
    }

    pub fn lambda_zero(&self) -> &[usize] {
        &self.lambda_zero
    }

    /// `L(μ)`, realized on the complement of the pivot coordinates of the radical.
    pub fn simple_module(&self, mu: usize) -> Option<&ModuleRep> {
        self.simples[mu].as_ref()
    }

    pub fn end_dim(&self, mu: usize) -> usize {
        self.end_dims[mu]
    }

    /// `dim Hom_A(Δ(μ), target)` for `μ ∈ Λ⁰`, found as the space of vectors
    /// `v` killed by the annihilator of the cyclic generator `c_{s₀}`.
    pub fn hom_from_cell_module(&self, mu: usize, target: &ModuleRep) -> usize {
        let gen = self.generators[mu].as_ref().expect("cell in Λ⁰");
        let delta = self.cells[mu].module();
        let field = target.field();
        let n = target.dim();
        let mut sols: Vec<Vec<Scalar>> = (0..n).map(|i| crate::linalg::unit_vector(field, n, i)).collect();
        // images[u][j] = ρ(x_u)·sols[j]
        let mut images: Vec<Vec<Vec<Scalar>>> = Vec::new();
        let mut stale = true;
        for a in 0..self.datum.dim() {
            if sols.is_empty() {
                break;
            }
            if stale {
                images = gen.x.iter().map(|&x| sols.iter().map(|v| target.action(x).mul_vec(v)).collect()).collect();
                stale = false;
            }
            let col = delta.action(a).column(gen.s0);
            let residuals: Vec<Vec<Scalar>> = (0..sols.len())
                .map(|j| {
                    let mut r = target.action(a).mul_vec(&sols[j]);
                    for (u, c) in col {
                        let coeff = -(c * &gen.g_inv);
                        for (ri, wi) in r.iter_mut().zip(&images[*u][j]) {
                            if !wi.is_zero() {
                                *ri += &(&coeff * wi);
                            }
                        }
                    }
                    r
                })
                .collect();
            if residuals.iter().all(|r| r.iter().all(Scalar::is_zero)) {
                continue;
            }
            let kernel = Matrix::from_columns(field, n, &residuals).nullspace();
            sols = kernel
                .basis()
                .iter()
                .map(|y| {
                    let mut acc = vec![field.zero(); n];
                    for (c, v) in y.iter().zip(&sols) {
                        if !c.is_zero() {
                            for (ai, vi) in acc.iter_mut().zip(v) {
                                *ai += &(c * vi);
                            }
                        }
                    }
                    acc
                })
                .collect();
            stale = true;
        }
        sols.len()
    }

    /// Radical layers of `m` and the simple constituents of each layer.
    pub fn loewy_series(&self, m: &ModuleRep) -> Result<LoewySeries> {
        if m.algebra_dim() != self.datum.dim() || m.field() != self.datum.field() {
            return Err(Error::input("module is not over this algebra"));
        }
        let filtration = m.radical_filtration(&self.radical);
        if filtration.last().is_some_and(|s| !s.is_zero()) {
            return Err(Error::Assumption("radical does not act nilpotently on the module".into()));
        }
        let layers = filtration
            .windows(2)
            .map(|w| {
                let layer = m.subquotient(&w[0], &w[1]);
                let simples = self
                    .lambda_zero
                    .iter()
                    .filter_map(|&mu| {
                        let k = self.hom_from_cell_module(mu, &layer) / self.end_dims[mu];
                        (k > 0).then_some((mu, k))
                    })
                    .collect();
                LoewyLayer { dim: layer.dim(), simples }
            })
            .collect();
        Ok(LoewySeries { layers })
    }

    pub fn decomposition_matrix(&self) -> Result<DecompositionMatrix> {
        let d = self.datum;
        let loewy = (0..d.num_cells())
            .map(|c| self.loewy_series(self.cells[c].module()))
            .collect::<Result<Vec<_>>>()?;
        let columns = self.lambda_zero.clone();
        let entries: Vec<Vec<usize>> =
            loewy.iter().map(|l| columns.iter().map(|&mu| l.multiplicity(mu)).collect()).collect();
        let p = d.poset();
        let nonzero = || {
            entries
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, _)| (r, j)))
        };
        let triangularity = TriangularityReport {
            nonzero_implies_le: nonzero().all(|(r, j)| p.le(r, columns[j])),
            nonzero_implies_ge: nonzero().all(|(r, j)| p.le(columns[j], r)),
            unit_diagonal: columns.iter().enumerate().all(|(j, &mu)| entries[mu][j] == 1),
        };
        let k = columns.len();
        let cartan = (0..k)
            .map(|a| (0..k).map(|b| entries.iter().map(|row| row[a] * row[b]).sum()).collect())
            .collect();
        Ok(DecompositionMatrix { columns, entries, cartan, triangularity, loewy })
    }

    pub fn blocks(&self) -> Result<Blocks> {
        Ok(blocks_from_decomposition(self.datum.num_cells(), &self.decomposition_matrix()?, &self.lambda_zero))
    }
}

pub(crate) fn blocks_from_decomposition(num_cells: usize, dm: &DecompositionMatrix, lambda_zero: &[usize]) -> Blocks {
    let mut uf = UnionFind::new(num_cells);
    for (lambda, row) in dm.entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                uf.union(lambda, dm.columns[j]);
            }
        }
    }
    Blocks::from_classes(uf.classes(), lambda_zero)
}

pub fn loewy_series(d: &CellDatum, m: &CellModuleRep) -> Result<LoewySeries> {
    CellularStructure::new(d)?.loewy_series(m.module())
}

pub fn decomposition_matrix(d: &CellDatum) -> Result<DecompositionMatrix> {
    CellularStructure::new(d)?.decomposition_matrix()
}

pub fn blocks(d: &CellDatum) -> Result<Blocks> {
    CellularStructure::new(d)?.blocks()
}
