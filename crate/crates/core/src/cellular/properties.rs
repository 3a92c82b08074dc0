use serde::Serialize;

use super::datum::{sample_pairs, CellDatum};
use super::modules::{cell_module, gram_entry, gram_matrix};
use crate::algebra::Element;
use crate::error::Result;

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes `⟨c_s, c_t⟩` with `samples` random reference pairs `(u, b)`
/// per cell and compares with the stored Gram matrix.
pub fn check_gram_independence(d: &CellDatum, samples: usize, seed: u64) -> Result<PropertyReport> {
    let mut r = PropertyReport::default();
    for cell in 0..d.num_cells() {
        let g = gram_matrix(d, cell)?.matrix;
        let k = d.cell_size(cell);
        for (u, b) in sample_pairs(k, samples, seed ^ cell as u64) {
            for s in 0..k {
                for t in 0..k {
                    r.checked += 1;
                    if gram_entry(d, cell, s, t, u, b) != g[(s, t)] {
                        r.failures.push(format!("cell {}: entry ({s},{t}) changes with reference ({u},{b})", d.label(cell)));
                    }
                }
            }
        }
        if !g.is_symmetric() {
            r.failures.push(format!("cell {}: Gram matrix is not symmetric", d.label(cell)));
        }
    }
    Ok(r)
}

/// `ρ(ab) = ρ(a)ρ(b)` on random basis pairs and `ρ(1) = id`, on every cell module.
pub fn check_module_axiom(d: &CellDatum, pairs: usize, seed: u64) -> Result<PropertyReport> {
    let mut r = PropertyReport::default();
    let f = d.field();
    let sample = sample_pairs(d.dim(), pairs, seed);
    for cell in 0..d.num_cells() {
        let m = cell_module(d, cell)?;
        if m.action_matrix(d.unit()) != crate::linalg::Matrix::identity(f, m.dim()) {
            r.failures.push(format!("cell {}: the unit does not act as the identity", d.label(cell)));
        }
        for &(a, b) in &sample {
            r.checked += 1;
            let ab = d.multiply(&Element::basis(f, a), &Element::basis(f, b))?;
            let lhs = m.action_matrix(&ab);
            let rhs = m.action_matrix(&Element::basis(f, a)).mul(&m.action_matrix(&Element::basis(f, b)))?;
            if lhs != rhs {
                r.failures.push(format!("cell {}: action of {} {} is not multiplicative", d.label(cell), d.basis_name(a), d.basis_name(b)));
            }
        }
    }
    Ok(r)
}
