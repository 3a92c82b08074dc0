use std::cell::OnceCell;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Element, ModuleRep};
use crate::cellular::{cell_module, CellDatum, CellModuleRep};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// A finite family of elements `e_i`, indexed by labels.
#[derive(Clone, Debug)]
pub struct IdempotentFamily {
    pub labels: Vec<String>,
    pub elements: Vec<Element>,
}

impl IdempotentFamily {
    pub fn new(labels: Vec<String>, elements: Vec<Element>) -> Self {
        assert_eq!(labels.len(), elements.len());
        IdempotentFamily { labels, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `Σ e_i = 1`.
    SumToUnit,
    Nonzero,
    Idempotent,
    Orthogonal,
    /// Each row `(λ, t)` is fixed on the left by exactly one `e_i`.
    UniqueColour,
    StarFixed,
    /// `c^λ_{st}·e_i = c^λ_{st}` for `t` of colour `i`.
    RightUnit,
    /// Every `e_i` meets at least one cell.
    CellsNonempty,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::SumToUnit => "sum-to-unit",
            Condition::Nonzero => "nonzero",
            Condition::Idempotent => "idempotent",
            Condition::Orthogonal => "orthogonal",
            Condition::UniqueColour => "unique-colour",
            Condition::StarFixed => "star-fixed",
            Condition::RightUnit => "right-unit",
            Condition::CellsNonempty => "cells-nonempty",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionViolation {
    pub condition: Condition,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AssumptionReport {
    pub violations: Vec<AssumptionViolation>,
}

impl AssumptionReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    fn push(&mut self, condition: Condition, detail: String) {
        self.violations.push(AssumptionViolation { condition, detail });
    }
}

/// Colours `i` with `e_i·c^λ_{ts} = c^λ_{ts}` for every `s` (or only `s = first`).
fn fixing_colours(d: &CellDatum, es: &[Element], cell: usize, t: usize, all_s: bool) -> Vec<usize> {
    let k = if all_s { d.cell_size(cell) } else { 1 };
    (0..es.len())
        .filter(|&i| {
            (0..k).all(|s| {
                let c = d.basis_element(cell, t, s);
                d.algebra().multiply(&es[i], &c) == c
            })
        })
        .collect()
}

pub fn check_assumptions(d: &CellDatum, family: &IdempotentFamily) -> AssumptionReport {
    let mut r = AssumptionReport::default();
    let es = &family.elements;
    let name = |i: usize| &family.labels[i];
    if let Err(e) = es.iter().try_for_each(|x| d.check_element(x)) {
        r.push(Condition::Nonzero, format!("element not over this algebra: {e}"));
        return r;
    }
    let alg = d.algebra();
    let sum = es.iter().fold(Element::zero(), |acc, x| acc.add(x));
    if &sum != d.unit() {
        r.push(Condition::SumToUnit, "the elements do not sum to the unit".into());
    }
    for (i, e) in es.iter().enumerate() {
        if e.is_zero() {
            r.push(Condition::Nonzero, format!("e_{} is zero", name(i)));
        }
        if &alg.multiply(e, e) != e {
            r.push(Condition::Idempotent, format!("e_{} is not idempotent", name(i)));
        }
        for (j, f) in es.iter().enumerate() {
            if i != j && !alg.multiply(e, f).is_zero() {
                r.push(Condition::Orthogonal, format!("e_{} e_{} is nonzero", name(i), name(j)));
            }
        }
        if &d.star(e) != e {
            r.push(Condition::StarFixed, format!("e_{} is not fixed by the involution", name(i)));
        }
    }
    let mut seen = vec![false; es.len()];
    for cell in 0..d.num_cells() {
        for t in 0..d.cell_size(cell) {
            let fixing = fixing_colours(d, es, cell, t, true);
            if fixing.len() != 1 {
                r.push(
                    Condition::UniqueColour,
                    format!("row ({}, {}) is fixed by {} of the idempotents", d.label(cell), d.t_set(cell)[t], fixing.len()),
                );
                continue;
            }
            let i = fixing[0];
            seen[i] = true;
            for s in 0..d.cell_size(cell) {
                let c = d.basis_element(cell, s, t);
                if alg.multiply(&c, &es[i]) != c {
                    r.push(Condition::RightUnit, format!("{} e_{} != {}", d.basis_name(d.index(cell, s, t)), name(i), d.basis_name(d.index(cell, s, t))));
                }
            }
        }
    }
    for (i, s) in seen.iter().enumerate() {
        if !s {
            r.push(Condition::CellsNonempty, format!("no cell has a row of colour {}", name(i)));
        }
    }
    r
}

/// An admissible family of idempotents together with the colour of every
/// index `t ∈ T(λ)`.
#[derive(Clone, Debug)]
pub struct IdempotentDecomposition<'a> {
    parent: &'a CellDatum,
    family: IdempotentFamily,
    colour: Vec<Vec<usize>>,
    lambda_sets: Vec<Vec<usize>>,
    i_sets: Vec<Vec<usize>>,
    locals: Vec<OnceCell<LocalizedAlgebra>>,
}

impl<'a> IdempotentDecomposition<'a> {
    /// Classifies rows by testing `e_i·c^λ_{t,first} = c^λ_{t,first}`.
    pub fn new(parent: &'a CellDatum, family: IdempotentFamily) -> Result<Self> {
        for e in &family.elements {
            parent.check_element(e)?;
        }
        let mut colour = Vec::with_capacity(parent.num_cells());
        for cell in 0..parent.num_cells() {
            let mut row = Vec::with_capacity(parent.cell_size(cell));
            for t in 0..parent.cell_size(cell) {
                let fixing = fixing_colours(parent, &family.elements, cell, t, false);
                match fixing[..] {
                    [i] => row.push(i),
                    _ => {
                        return Err(Error::Assumption(format!(
                            "row ({}, {}) is fixed by {} idempotents instead of exactly one",
                            parent.label(cell),
                            parent.t_set(cell)[t],
                            fixing.len()
                        )))
                    }
                }
            }
            colour.push(row);
        }
        let n = family.len();
        let lambda_sets: Vec<Vec<usize>> =
            (0..n).map(|i| (0..parent.num_cells()).filter(|&c| colour[c].contains(&i)).collect()).collect();
        if let Some(i) = lambda_sets.iter().position(Vec::is_empty) {
            return Err(Error::Assumption(format!("no cell has a row of colour {}", family.labels[i])));
        }
        let i_sets = colour
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let locals = (0..n).map(|_| OnceCell::new()).collect();
        Ok(IdempotentDecomposition { parent, family, colour, lambda_sets, i_sets, locals })
    }

    pub fn parent(&self) -> &'a CellDatum {
        self.parent
    }

    pub fn family(&self) -> &IdempotentFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.family.labels[i]
    }

    pub fn idempotent(&self, i: usize) -> &Element {
        &self.family.elements[i]
    }

    pub fn colour_of(&self, cell: usize, t: usize) -> Result<usize> {
        self.parent.check_cell(cell)?;
        self.colour[cell]
            .get(t)
            .copied()
            .ok_or_else(|| Error::input(format!("index {t} out of range for T({})", self.parent.label(cell))))
    }

    /// `Λ_i`.
    pub fn lambda_set(&self, i: usize) -> &[usize] {
        &self.lambda_sets[i]
    }

    /// `I_λ`.
    pub fn i_set(&self, cell: usize) -> &[usize] {
        &self.i_sets[cell]
    }

    /// `T(λ, i)` as positions in `T(λ)`.
    pub fn t_of_colour(&self, cell: usize, i: usize) -> Vec<usize> {
        (0..self.parent.cell_size(cell)).filter(|&t| self.colour[cell][t] == i).collect()
    }

    pub fn localize(&self, i: usize) -> Result<LocalizedAlgebra> {
        self.local(i).cloned()
    }

    /// Like [`localize`](Self::localize), computed once per colour.
    pub fn local(&self, i: usize) -> Result<&LocalizedAlgebra> {
        if i >= self.len() {
            return Err(Error::input(format!("colour index {i} out of range")));
        }
        if let Some(l) = self.locals[i].get() {
            return Ok(l);
        }
        let l = self.build_local(i)?;
        Ok(self.locals[i].get_or_init(|| l))
    }

    fn build_local(&self, i: usize) -> Result<LocalizedAlgebra> {
        let d = self.parent;
        let cells = self.lambda_sets[i].clone();
        assert!(!cells.is_empty(), "every colour meets some cell");
        let t_maps: Vec<Vec<usize>> = cells.iter().map(|&c| self.t_of_colour(c, i)).collect();
        let t_sets = cells
            .iter()
            .zip(&t_maps)
            .map(|(&c, ts)| ts.iter().map(|&t| d.t_set(c)[t].clone()).collect())
            .collect();
        let mut embedding = Vec::new();
        for (&c, ts) in cells.iter().zip(&t_maps) {
            for &s in ts {
                for &t in ts {
                    embedding.push(d.index(c, s, t));
                }
            }
        }
        let mut to_local = vec![usize::MAX; d.dim()];
        for (l, &p) in embedding.iter().enumerate() {
            to_local[p] = l;
        }
        let pull = |x: &Element, what: &str| -> Result<Element> {
            x.terms()
                .iter()
                .map(|(p, c)| match to_local[*p] {
                    usize::MAX => Err(Error::Assumption(format!(
                        "{what} has a term {} outside the corner algebra of colour {}",
                        d.basis_name(*p),
                        self.label(i)
                    ))),
                    l => Ok((l, c.clone())),
                })
                .collect::<Result<Vec<_>>>()
                .map(Element::from_terms)
        };
        let unit = pull(self.idempotent(i), "the idempotent")?;
        let mut failure = None;
        let algebra = Algebra::from_products(d.field(), embedding.len(), unit, |a, b| {
            match pull(&d.algebra().basis_product_element(embedding[a], embedding[b]), "a product") {
                Ok(x) => x,
                Err(e) => {
                    failure.get_or_insert(e);
                    Element::zero()
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let poset = d.poset().restrict(&cells);
        let star = embedding
            .iter()
            .map(|&p| match to_local[d.star_table()[p]] {
                usize::MAX => Err(Error::Assumption(format!(
                    "the involution moves {} out of the corner algebra of colour {}",
                    d.basis_name(p),
                    self.label(i)
                ))),
                l => Ok(l),
            })
            .collect::<Result<Vec<_>>>()?;
        let datum = CellDatum::new(poset, t_sets, algebra, Some(star))?;
        Ok(LocalizedAlgebra { colour: i, datum, cells, t_maps, embedding })
    }
}

/// The corner algebra `e_i A e_i` as a cellular datum on `Λ_i`.
#[derive(Clone, Debug)]
pub struct LocalizedAlgebra {
    pub colour: usize,
    pub datum: CellDatum,
    /// Local cell → parent cell.
    pub cells: Vec<usize>,
    /// Local cell → (local index → parent index in `T(λ)`).
    pub t_maps: Vec<Vec<usize>>,
    /// Local basis → parent basis.
    pub embedding: Vec<usize>,
}

impl LocalizedAlgebra {
    pub fn local_cell(&self, parent_cell: usize) -> Option<usize> {
        self.cells.iter().position(|&c| c == parent_cell)
    }

    /// `V(λ, i)`; the zero module when `λ ∉ Λ_i`.
    pub fn v_module(&self, parent_cell: usize) -> Result<CellModuleRep> {
        match self.local_cell(parent_cell) {
            Some(c) => cell_module(&self.datum, c),
            None => {
                let f = self.datum.field();
                let actions = (0..self.datum.dim()).map(|_| SparseMatrix::zeros(f, 0, 0)).collect();
                Ok(CellModuleRep::new(usize::MAX, Vec::new(), ModuleRep::new(f, 0, actions)))
            }
        }
    }
}
