use crate::algebra::Element;
use crate::cellular::{CellDatum, CellPoset};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::split::IdempotentFamily;

/// `M_n(F)` with the single cell `n`, `c^n_{ij} = E_{ij}` and idempotents `E_{ii}`.
pub fn build_matrix_algebra(n: usize, field: Field) -> Result<(CellDatum, IdempotentFamily)> {
    if n == 0 {
        return Err(Error::input("matrix size must be at least 1"));
    }
    let poset = CellPoset::from_indices(vec![n.to_string()], &[])?;
    let t: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let unit = Element::from_terms((0..n).map(|i| (i * n + i, field.one())));
    let datum = CellDatum::from_products(poset, vec![t.clone()], field, unit, |a, b| {
        if a.t == b.s {
            Element::basis(field, a.s * n + b.t)
        } else {
            Element::zero()
        }
    })?;
    let es = (0..n).map(|i| Element::basis(field, i * n + i)).collect();
    Ok((datum, IdempotentFamily::new(t, es)))
}

/// A path in the quiver with two vertices and arrows `a12`, `a21`, read
/// left to right: `(start vertex, number of arrows)`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Path {
    start: usize,
    len: usize,
}

impl Path {
    fn end(self) -> usize {
        (self.start + self.len) % 2
    }

    fn then(self, other: Path) -> Option<Path> {
        (self.end() == other.start && self.len + other.len <= 2).then_some(Path { start: self.start, len: self.len + other.len })
    }
}

/// The six-dimensional path algebra of `1 ⇄ 2` modulo paths of length three.
///
/// Cells `λ0 > λ1 > λ2`; `c^{λ0} = a12 a21`, `c^{λ1}` the table
/// `[[e1, a12], [a21, a21 a12]]`, `c^{λ2} = e2`; idempotents `e1`, `e2`.
pub fn build_quiver_example(field: Field) -> Result<(CellDatum, IdempotentFamily)> {
    let labels = vec!["λ0".to_string(), "λ1".to_string(), "λ2".to_string()];
    let poset = CellPoset::from_indices(labels, &[(2, 1), (1, 0)])?;
    let one = |s: &str| vec![s.to_string()];
    let t_sets = vec![one("1"), vec!["1".into(), "2".into()], one("1")];
    // vertices 0 and 1 stand for 1 and 2
    let paths = [
        Path { start: 0, len: 2 }, // a12 a21
        Path { start: 0, len: 0 }, // e1
        Path { start: 0, len: 1 }, // a12
        Path { start: 1, len: 1 }, // a21
        Path { start: 1, len: 2 }, // a21 a12
        Path { start: 1, len: 0 }, // e2
    ];
    let index_of = |p: Path| paths.iter().position(|&q| q == p).expect("every short path is a basis element");
    let unit = Element::from_terms([(1, field.one()), (5, field.one())]);
    let flat = |cell: usize, s: usize, t: usize| match cell {
        0 => 0,
        1 => 1 + 2 * s + t,
        _ => 5,
    };
    let datum = CellDatum::from_products(poset, t_sets, field, unit, |a, b| {
        match paths[flat(a.cell, a.s, a.t)].then(paths[flat(b.cell, b.s, b.t)]) {
            Some(p) => Element::basis(field, index_of(p)),
            None => Element::zero(),
        }
    })?;
    let es = vec![Element::basis(field, 1), Element::basis(field, 5)];
    Ok((datum, IdempotentFamily::new(vec!["1".into(), "2".into()], es)))
}
