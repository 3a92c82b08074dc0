use serde::Serialize;

use super::decomposition::{IdempotentDecomposition, LocalizedAlgebra};
use crate::algebra::{hom_space, is_intertwiner};
use crate::cellular::{
    blocks_from_decomposition, cell_module, gram_matrix, is_semisimple, lambda_zero, Blocks, CellularStructure,
    SemisimplicityReport,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::union_find::UnionFind;

#[derive(Clone, Debug, Serialize)]
pub struct GramDirectSumReport {
    pub holds: bool,
    /// `T(λ)` positions sorted by colour (stable within a colour).
    pub permutation: Vec<usize>,
    pub cross_colour_zero: bool,
    pub blocks_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleEquivalenceReport {
    pub consistent: bool,
    pub parent: SemisimplicityReport,
    pub locals: Vec<(usize, SemisimplicityReport)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub holds: bool,
    pub parent_dim: usize,
    pub local_dims: Vec<(usize, usize)>,
    pub embedded_inside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleDimReport {
    pub holds: bool,
    pub rank: usize,
    pub local_ranks: Vec<(usize, usize)>,
    /// `dim e_i·L(λ)` for each colour in `I_λ`.
    pub head_dims: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalHom {
    pub matrix: Matrix,
    pub intertwines: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomVanishingReport {
    pub global_dim: usize,
    pub local_dims: Vec<(usize, usize)>,
    /// A nonzero global map restricts to a nonzero local map for some colour.
    pub nonzero_restricts: bool,
    /// All local spaces vanish exactly when the global space does.
    pub equivalence_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizedBlocks {
    pub blocks: Blocks,
    /// Set when `Λ ≠ Λ⁰`, where the result need not be the block partition.
    pub advisory: bool,
    pub warnings: Vec<String>,
}

impl<'a> IdempotentDecomposition<'a> {
    pub fn localize_all(&self) -> Result<Vec<LocalizedAlgebra>> {
        (0..self.len()).map(|i| self.localize(i)).collect()
    }

    /// `M(λ, i)`, the Gram matrix of `V(λ, i)`.
    pub fn gram_block(&self, cell: usize, i: usize) -> Result<Matrix> {
        let loc = self.local(i)?;
        gram_block_in(loc, cell, self.parent().label(cell))
    }

    pub fn check_gram_direct_sum(&self, cell: usize) -> Result<GramDirectSumReport> {
        let g = gram_matrix(self.parent(), cell)?.matrix;
        let k = g.rows();
        let colours: Vec<usize> = (0..k).map(|t| self.colour_of(cell, t)).collect::<Result<_>>()?;
        let mut permutation: Vec<usize> = (0..k).collect();
        permutation.sort_by_key(|&t| colours[t]);
        let cross_colour_zero =
            (0..k).all(|s| (0..k).all(|t| colours[s] == colours[t] || g[(s, t)].is_zero()));
        let sorted = g.select(&permutation, &permutation);
        let mut expected = Matrix::zeros(g.field(), k, k);
        let mut offset = 0;
        for &i in self.i_set(cell) {
            let m = self.gram_block(cell, i)?;
            for a in 0..m.rows() {
                for b in 0..m.cols() {
                    expected[(offset + a, offset + b)] = m[(a, b)].clone();
                }
            }
            offset += m.rows();
        }
        let blocks_match = offset == k && sorted == expected;
        Ok(GramDirectSumReport { holds: cross_colour_zero && blocks_match, permutation, cross_colour_zero, blocks_match })
    }

    pub fn check_semisimple_equivalence(&self) -> Result<SemisimpleEquivalenceReport> {
        let parent = is_semisimple(self.parent())?;
        let locals = (0..self.len())
            .map(|i| Ok((i, is_semisimple(&self.local(i)?.datum)?)))
            .collect::<Result<Vec<_>>>()?;
        let all_local = locals.iter().all(|(_, r)| r.semisimple);
        Ok(SemisimpleEquivalenceReport { consistent: parent.semisimple == all_local, parent, locals })
    }

    pub fn check_radical_decomposition(&self, cell: usize) -> Result<RadicalReport> {
        let d = self.parent();
        let rad = gram_matrix(d, cell)?.radical;
        let mut local_dims = Vec::new();
        let mut embedded_inside = true;
        for &i in self.i_set(cell) {
            let loc = self.local(i)?;
            let lc = loc.local_cell(cell).expect("colour in I_λ");
            let local_rad = gram_matrix(&loc.datum, lc)?.radical;
            local_dims.push((i, local_rad.dim()));
            let positions = &loc.t_maps[lc];
            embedded_inside &= local_rad.embed(positions, d.cell_size(cell)).is_subspace_of(&rad);
        }
        let total: usize = local_dims.iter().map(|(_, k)| k).sum();
        Ok(RadicalReport { holds: total == rad.dim() && embedded_inside, parent_dim: rad.dim(), local_dims, embedded_inside })
    }

    pub fn check_simple_dim_sum(&self, cell: usize) -> Result<SimpleDimReport> {
        let d = self.parent();
        let g = gram_matrix(d, cell)?;
        if g.rank == 0 {
            return Err(Error::domain(format!("cell {} is not in Λ⁰", d.label(cell))));
        }
        let simple = cell_module(d, cell)?.module().quotient(&g.radical);
        let mut local_ranks = Vec::new();
        let mut head_dims = Vec::new();
        for &i in self.i_set(cell) {
            local_ranks.push((i, self.gram_block(cell, i)?.rank()));
            head_dims.push((i, simple.action_matrix(self.idempotent(i)).rank()));
        }
        let total: usize = local_ranks.iter().map(|(_, r)| r).sum();
        let holds = total == g.rank && local_ranks.iter().zip(&head_dims).all(|(a, b)| a.1 == b.1);
        Ok(SimpleDimReport { holds, rank: g.rank, local_ranks, head_dims })
    }

    /// Restriction of `θ: Δ(λ) → Δ(μ)` to `V(λ, i) → V(μ, i)`.
    pub fn restrict_hom(&self, theta: &Matrix, lambda: usize, mu: usize, i: usize) -> Result<LocalHom> {
        let d = self.parent();
        if theta.rows() != d.cell_size(mu) || theta.cols() != d.cell_size(lambda) {
            return Err(Error::input("map has the wrong shape for Δ(λ) → Δ(μ)"));
        }
        let loc = self.local(i)?;
        let matrix = theta.select(&self.t_of_colour(mu, i), &self.t_of_colour(lambda, i));
        let intertwines = is_intertwiner(loc.v_module(lambda)?.module(), loc.v_module(mu)?.module(), &matrix);
        Ok(LocalHom { matrix, intertwines })
    }

    /// Extension by zero of a local map `V(λ, i) → V(μ, i)` to `Δ(λ) → Δ(μ)`,
    /// flagged by whether it intertwines the full action.
    pub fn extend_hom(&self, tau: &Matrix, lambda: usize, mu: usize, i: usize) -> Result<LocalHom> {
        let d = self.parent();
        let (rows, cols) = (self.t_of_colour(mu, i), self.t_of_colour(lambda, i));
        if tau.rows() != rows.len() || tau.cols() != cols.len() {
            return Err(Error::input("map has the wrong shape for V(λ,i) → V(μ,i)"));
        }
        let mut matrix = Matrix::zeros(d.field(), d.cell_size(mu), d.cell_size(lambda));
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                matrix[(r, c)] = tau[(a, b)].clone();
            }
        }
        let intertwines = is_intertwiner(cell_module(d, lambda)?.module(), cell_module(d, mu)?.module(), &matrix);
        Ok(LocalHom { matrix, intertwines })
    }

    pub fn hom_vanishing(&self, lambda: usize, mu: usize) -> Result<HomVanishingReport> {
        let d = self.parent();
        let global = hom_space(cell_module(d, lambda)?.module(), cell_module(d, mu)?.module())?;
        let mut local_dims = Vec::new();
        for i in 0..self.len() {
            let loc = self.local(i)?;
            let k = hom_space(loc.v_module(lambda)?.module(), loc.v_module(mu)?.module())?.len();
            local_dims.push((i, k));
        }
        let mut nonzero_restricts = true;
        for theta in &global {
            let any = (0..self.len())
                .any(|i| !theta.select(&self.t_of_colour(mu, i), &self.t_of_colour(lambda, i)).is_zero());
            nonzero_restricts &= any;
        }
        let local_zero = local_dims.iter().all(|(_, k)| *k == 0);
        Ok(HomVanishingReport {
            global_dim: global.len(),
            local_dims,
            nonzero_restricts,
            equivalence_holds: global.is_empty() == local_zero,
        })
    }

    /// Joins the cell-blocks of every corner algebra, transported to `Λ`.
    pub fn blocks_via_localization(&self) -> Result<LocalizedBlocks> {
        let d = self.parent();
        if d.field().characteristic() != 0 {
            return Err(Error::unsupported("block computation needs characteristic 0"));
        }
        let lz = lambda_zero(d);
        let mut warnings = Vec::new();
        let advisory = lz.len() != d.num_cells();
        if advisory {
            let missing: Vec<&str> = (0..d.num_cells()).filter(|c| !lz.contains(c)).map(|c| d.label(c)).collect();
            warnings.push(format!(
                "cells {} have zero bilinear form; localized linkage need not give the blocks",
                missing.join(", ")
            ));
        }
        let mut uf = UnionFind::new(d.num_cells());
        for i in 0..self.len() {
            let loc = self.local(i)?;
            let s = CellularStructure::new(&loc.datum)?;
            let local = blocks_from_decomposition(loc.datum.num_cells(), &s.decomposition_matrix()?, s.lambda_zero());
            for class in &local.cell_blocks {
                for w in class.windows(2) {
                    uf.union(loc.cells[w[0]], loc.cells[w[1]]);
                }
            }
        }
        Ok(LocalizedBlocks { blocks: Blocks::from_classes(uf.classes(), &lz), advisory, warnings })
    }
}

fn gram_block_in(loc: &LocalizedAlgebra, cell: usize, label: &str) -> Result<Matrix> {
    let lc = loc
        .local_cell(cell)
        .ok_or_else(|| Error::domain(format!("cell {label} has no rows of this colour")))?;
    Ok(gram_matrix(&loc.datum, lc)?.matrix)
}
