use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poset::CellPoset;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::Field;

/// Index of the basis element `c^λ_{st}`; `s` and `t` are positions in `T(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisTriple {
    pub cell: usize,
    pub s: usize,
    pub t: usize,
}

/// A cellular algebra given explicitly: poset, index sets, multiplication
/// table on the basis `c^λ_{st}` and the involution.
///
/// Basis elements are numbered by cell (in label order), then `s`, then `t`.
#[derive(Clone, Debug)]
pub struct CellDatum {
    poset: CellPoset,
    t_sets: Vec<Vec<String>>,
    offsets: Vec<usize>,
    basis: Vec<BasisTriple>,
    algebra: Algebra,
    star: Vec<usize>,
}

impl CellDatum {
    /// `star = None` uses the canonical involution `c^λ_{st} ↦ c^λ_{ts}`.
    pub fn new(poset: CellPoset, t_sets: Vec<Vec<String>>, algebra: Algebra, star: Option<Vec<usize>>) -> Result<Self> {
        if t_sets.len() != poset.len() {
            return Err(Error::input(format!(
                "{} index sets given for {} cells",
                t_sets.len(),
                poset.len()
            )));
        }
        let mut offsets = Vec::with_capacity(t_sets.len() + 1);
        let mut basis = Vec::new();
        offsets.push(0);
        for (cell, t) in t_sets.iter().enumerate() {
            for s in 0..t.len() {
                for u in 0..t.len() {
                    basis.push(BasisTriple { cell, s, t: u });
                }
            }
            offsets.push(basis.len());
        }
        if basis.len() != algebra.dim() {
            return Err(Error::input(format!(
                "algebra has dimension {} but the index sets give {} basis triples",
                algebra.dim(),
                basis.len()
            )));
        }
        let star = match star {
            Some(s) => {
                if s.len() != basis.len() || s.iter().any(|&x| x >= basis.len()) {
                    return Err(Error::input("involution table does not permute the basis"));
                }
                s
            }
            None => basis.iter().map(|b| offsets[b.cell] + b.t * t_sets[b.cell].len() + b.s).collect(),
        };
        Ok(CellDatum { poset, t_sets, offsets, basis, algebra, star })
    }

    /// Tabulates the products of basis triples and builds the datum.
    pub fn from_products(
        poset: CellPoset,
        t_sets: Vec<Vec<String>>,
        field: Field,
        unit: Element,
        mut product: impl FnMut(BasisTriple, BasisTriple) -> Element,
    ) -> Result<Self> {
        let triples: Vec<BasisTriple> = t_sets
            .iter()
            .enumerate()
            .flat_map(|(cell, t)| {
                let k = t.len();
                (0..k * k).map(move |i| BasisTriple { cell, s: i / k, t: i % k })
            })
            .collect();
        let algebra = Algebra::from_products(field, triples.len(), unit, |i, j| product(triples[i], triples[j]));
        Self::new(poset, t_sets, algebra, None)
    }

    pub fn poset(&self) -> &CellPoset {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn num_cells(&self) -> usize {
        self.poset.len()
    }

    pub fn label(&self, cell: usize) -> &str {
        self.poset.label(cell)
    }

    pub fn cell_index(&self, label: &str) -> Result<usize> {
        self.poset.index_of(label).ok_or_else(|| Error::input(format!("unknown cell {label:?}")))
    }

    pub(crate) fn check_cell(&self, cell: usize) -> Result<()> {
        if cell < self.num_cells() {
            Ok(())
        } else {
            Err(Error::input(format!("cell index {cell} out of range")))
        }
    }

    pub fn t_sets(&self) -> &[Vec<String>] {
        &self.t_sets
    }

    pub fn t_set(&self, cell: usize) -> &[String] {
        &self.t_sets[cell]
    }

    pub fn cell_size(&self, cell: usize) -> usize {
        self.t_sets[cell].len()
    }

    pub fn basis(&self) -> &[BasisTriple] {
        &self.basis
    }

    pub fn triple(&self, i: usize) -> BasisTriple {
        self.basis[i]
    }

    pub fn index(&self, cell: usize, s: usize, t: usize) -> usize {
        self.offsets[cell] + s * self.t_sets[cell].len() + t
    }

    /// Basis indices belonging to one cell.
    pub fn cell_range(&self, cell: usize) -> std::ops::Range<usize> {
        self.offsets[cell]..self.offsets[cell + 1]
    }

    pub fn basis_element(&self, cell: usize, s: usize, t: usize) -> Element {
        Element::basis(self.field(), self.index(cell, s, t))
    }

    pub fn unit(&self) -> &Element {
        self.algebra.unit()
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    pub fn star(&self, a: &Element) -> Element {
        a.map_basis(|i| self.star[i])
    }

    /// Human-readable name `c[λ](s,t)` of a basis element.
    pub fn basis_name(&self, i: usize) -> String {
        let b = self.basis[i];
        let t = &self.t_sets[b.cell];
        format!("c[{}]({},{})", self.label(b.cell), t[b.s], t[b.t])
    }

    pub(crate) fn check_element(&self, a: &Element) -> Result<()> {
        for (i, c) in a.terms() {
            if *i >= self.dim() {
                return Err(Error::input(format!("basis index {i} out of range for dimension {}", self.dim())));
            }
            if c.field() != self.field() {
                return Err(Error::input(format!("scalar over {} used with an algebra over {}", c.field(), self.field())));
            }
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.algebra.multiply(a, b))
    }

    /// Whether the basis element `i` lies in `A^{>λ}`.
    pub fn is_above(&self, i: usize, cell: usize) -> bool {
        self.poset.gt(self.basis[i].cell, cell)
    }

    /// Drops the components lying in `A^{>λ}`.
    pub fn truncate_above(&self, a: &Element, cell: usize) -> Element {
        Element::from_terms(a.terms().iter().filter(|(i, _)| !self.is_above(*i, cell)).cloned())
    }

    /// Same data with a different involution table.
    pub fn with_star(&self, star: Vec<usize>) -> Result<Self> {
        Self::new(self.poset.clone(), self.t_sets.clone(), self.algebra.clone(), Some(star))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Poset,
    BasisCount,
    IndexSets,
    Involution,
    AntiAutomorphism,
    Triangularity,
    TIndependence,
    Associativity,
    Unit,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Poset => "poset",
            Axiom::BasisCount => "basis-count",
            Axiom::IndexSets => "index-sets",
            Axiom::Involution => "involution",
            Axiom::AntiAutomorphism => "anti-automorphism",
            Axiom::Triangularity => "triangularity",
            Axiom::TIndependence => "t-independence",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub associativity_checked: usize,
    pub associativity_exhaustive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Associativity is checked on all triples up to this dimension.
    pub exhaustive_dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { exhaustive_dim: 40, samples: 20_000, seed: 0 }
    }
}

const MAX_REPORTED: usize = 10;

struct Collector {
    violations: Vec<Violation>,
    counts: Vec<(Axiom, usize)>,
}

impl Collector {
    fn push(&mut self, axiom: Axiom, detail: impl FnOnce() -> String) {
        let n = match self.counts.iter_mut().find(|(a, _)| *a == axiom) {
            Some((_, n)) => {
                *n += 1;
                *n
            }
            None => {
                self.counts.push((axiom, 1));
                1
            }
        };
        if n <= MAX_REPORTED {
            self.violations.push(Violation { axiom, detail: detail() });
        }
    }

    fn finish(mut self) -> Vec<Violation> {
        for (axiom, n) in self.counts {
            if n > MAX_REPORTED {
                self.violations.push(Violation { axiom, detail: format!("{} further violations omitted", n - MAX_REPORTED) });
            }
        }
        self.violations
    }
}

pub fn validate_cell_datum(d: &CellDatum) -> ValidationReport {
    validate_with(d, ValidationOptions::default())
}

/// Checks every cellular axiom and reports each violation found.
pub fn validate_with(d: &CellDatum, opts: ValidationOptions) -> ValidationReport {
    let mut out = Collector { violations: Vec::new(), counts: Vec::new() };
    let n = d.dim();
    let alg = d.algebra();

    if !d.poset.is_strict_order() {
        out.push(Axiom::Poset, || "relation is not a strict partial order".into());
    }
    let expected: usize = d.t_sets.iter().map(|t| t.len() * t.len()).sum();
    if expected != n {
        out.push(Axiom::BasisCount, || format!("dim {n} but sum of |T|^2 is {expected}"));
    }
    for (cell, t) in d.t_sets.iter().enumerate() {
        if t.is_empty() {
            out.push(Axiom::IndexSets, || format!("T({}) is empty", d.label(cell)));
        }
        for (i, x) in t.iter().enumerate() {
            if t[..i].contains(x) {
                out.push(Axiom::IndexSets, || format!("T({}) repeats {x:?}", d.label(cell)));
            }
        }
    }

    for (i, b) in d.basis.iter().enumerate() {
        let expect = d.index(b.cell, b.t, b.s);
        if d.star[i] != expect {
            out.push(Axiom::Involution, || format!("{} is not sent to its transpose", d.basis_name(i)));
        }
        if d.star[d.star[i]] != i {
            out.push(Axiom::Involution, || format!("star is not an involution at {}", d.basis_name(i)));
        }
    }

    for a in 0..n {
        for b in 0..n {
            let lhs = d.star(&alg.basis_product_element(a, b));
            let rhs = alg.basis_product_element(d.star[b], d.star[a]);
            if lhs != rhs {
                out.push(Axiom::AntiAutomorphism, || {
                    format!("({} * {})^* != {}^* * {}^*", d.basis_name(a), d.basis_name(b), d.basis_name(b), d.basis_name(a))
                });
            }
        }
    }

    check_cell_rule(d, &mut out);

    if !alg.is_unit(alg.unit()) {
        out.push(Axiom::Unit, || "declared unit is not a two-sided identity".into());
    }

    let exhaustive = n <= opts.exhaustive_dim;
    let triples: Vec<(usize, usize, usize)> = if exhaustive {
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect()
    } else if n == 0 {
        Vec::new()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.samples).map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))).collect()
    };
    let checked = triples.len();
    for (a, b, c) in alg.associativity_failures(triples) {
        out.push(Axiom::Associativity, || {
            format!("({} {}) {} differs from {} ({} {})", d.basis_name(a), d.basis_name(b), d.basis_name(c), d.basis_name(a), d.basis_name(b), d.basis_name(c))
        });
    }

    ValidationReport { violations: out.finish(), associativity_checked: checked, associativity_exhaustive: exhaustive }
}

/// For every basis `a` and `c^λ_{st}`: `a·c^λ_{st}` has no terms outside
/// `{c^λ_{ut}} ∪ A^{>λ}` and its `c^λ_{ut}` coefficients do not depend on `t`.
fn check_cell_rule(d: &CellDatum, out: &mut Collector) {
    let alg = d.algebra();
    for a in 0..d.dim() {
        for cell in 0..d.num_cells() {
            let k = d.cell_size(cell);
            for s in 0..k {
                let mut reference: Option<Vec<(usize, crate::linalg::Scalar)>> = None;
                for t in 0..k {
                    let target = d.index(cell, s, t);
                    let mut coeffs = Vec::new();
                    for (idx, c) in alg.basis_product(a, target) {
                        let b = d.basis[*idx as usize];
                        if b.cell == cell && b.t == t {
                            coeffs.push((b.s, c.clone()));
                        } else if !d.poset.gt(b.cell, cell) {
                            out.push(Axiom::Triangularity, || {
                                format!("{} * {} has a term {} outside the allowed span", d.basis_name(a), d.basis_name(target), d.basis_name(*idx as usize))
                            });
                        }
                    }
                    match &reference {
                        None => reference = Some(coeffs),
                        Some(r) if *r != coeffs => {
                            out.push(Axiom::TIndependence, || {
                                format!("coefficients of {} * c[{}]({}, t) depend on t", d.basis_name(a), d.label(cell), d.t_set(cell)[s])
                            });
                        }
                        _ => {}
                    }
                }
            }
        }
    }
}

/// Random pairs of basis indices, for property sampling.
pub(crate) fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect()
}
