use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::set_partition::{assemble, parse_block, restricted_growth_strings, stack, SetPartition};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::split::IdempotentFamily;

const COLOUR_NAMES: [&str; 4] = ["r", "b", "g", "y"];

pub fn colour_name(c: usize) -> String {
    COLOUR_NAMES.get(c).map_or_else(|| format!("c{c}"), |s| s.to_string())
}

pub fn parse_colour(s: &str) -> Result<usize> {
    if let Some(i) = COLOUR_NAMES.iter().position(|&n| n == s) {
        return Ok(i);
    }
    s.strip_prefix('c')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::input(format!("unknown colour tag {s:?}")))
}

/// A set-partition diagram whose blocks are each given one of `m` colours.
/// Restricting to the nodes of colour `i` gives the component `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredDiagram {
    m: usize,
    partition: SetPartition,
    block_colours: Vec<usize>,
}

impl ColouredDiagram {
    pub fn new(m: usize, partition: SetPartition, block_colours: Vec<usize>) -> Result<Self> {
        if block_colours.len() != partition.blocks().len() {
            return Err(Error::input("one colour per block required"));
        }
        if block_colours.iter().any(|&c| c >= m) {
            return Err(Error::input(format!("colour out of range for {m} colours")));
        }
        Ok(ColouredDiagram { m, partition, block_colours })
    }

    /// Diagram with node colours `node_colours`; all nodes of a block must agree.
    pub fn from_node_colours(m: usize, partition: SetPartition, node_colours: &[usize]) -> Result<Self> {
        let mut colours = Vec::with_capacity(partition.blocks().len());
        for b in partition.blocks() {
            let c = node_colours[b[0]];
            if b.iter().any(|&x| node_colours[x] != c) {
                return Err(Error::input("block with nodes of different colours"));
            }
            colours.push(c);
        }
        Self::new(m, partition, colours)
    }

    /// `1_{(A)}`: the identity diagram with top node `j` coloured `colouring[j]`.
    pub fn identity(m: usize, colouring: &[usize]) -> Self {
        let partition = SetPartition::identity(colouring.len());
        let block_colours = colouring.to_vec();
        ColouredDiagram { m, partition, block_colours }
    }

    pub fn colours(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.partition.n_top()
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn block_colours(&self) -> &[usize] {
        &self.block_colours
    }

    pub fn node_colours(&self) -> Vec<usize> {
        let mut out = vec![0; self.partition.n_top() + self.partition.n_bot()];
        for (b, &c) in self.partition.blocks().iter().zip(&self.block_colours) {
            for &x in b {
                out[x] = c;
            }
        }
        out
    }

    /// Colour of each top node.
    pub fn top(&self) -> Vec<usize> {
        let mut v = self.node_colours();
        v.truncate(self.partition.n_top());
        v
    }

    /// Colour of each bottom node.
    pub fn bot(&self) -> Vec<usize> {
        self.node_colours().split_off(self.partition.n_top())
    }

    /// `(A_0, …, A_{m-1})`: the nodes of each colour.
    pub fn colour_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.m];
        for (x, c) in self.node_colours().into_iter().enumerate() {
            sets[c].push(x);
        }
        sets
    }

    /// Component of colour `c`, relabelled as a partition diagram on
    /// `|A_c ∩ top|` top and `|A_c ∩ bottom|` bottom nodes.
    pub fn component(&self, c: usize) -> SetPartition {
        let colours = self.node_colours();
        let n_top = self.partition.n_top();
        let mut relabel = vec![usize::MAX; colours.len()];
        let (mut t, mut b) = (0, 0);
        for x in 0..colours.len() {
            if colours[x] == c {
                if x < n_top {
                    relabel[x] = t;
                    t += 1;
                } else {
                    relabel[x] = b;
                    b += 1;
                }
            }
        }
        let blocks = self
            .partition
            .blocks()
            .iter()
            .zip(&self.block_colours)
            .filter(|(_, &bc)| bc == c)
            .map(|(blk, _)| blk.iter().map(|&x| if x < n_top { relabel[x] } else { t + relabel[x] }).collect())
            .collect();
        SetPartition::new(t, b, blocks).expect("restriction of a partition")
    }

    pub fn flip(&self) -> Self {
        let flipped = self.partition.flip();
        let colours = self.node_colours();
        let (t, b) = (self.partition.n_top(), self.partition.n_bot());
        let mut swapped = colours[t..].to_vec();
        swapped.extend_from_slice(&colours[..t]);
        debug_assert_eq!(swapped.len(), t + b);
        Self::from_node_colours(self.m, flipped, &swapped).expect("flip keeps blocks monochromatic")
    }
}

/// Blocks rendered as `r:{1,2'}` joined by `|`.
impl fmt::Display for ColouredDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partition
            .blocks()
            .iter()
            .zip(&self.block_colours)
            .map(|(b, &c)| format!("{}:{}", colour_name(c), self.partition.render_block(b)))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl ColouredDiagram {
    /// Parses the text form; `m` is the number of colours in play.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(m, SetPartition::new(0, 0, Vec::new())?, Vec::new());
        }
        let mut blocks = Vec::new();
        let mut colours = Vec::new();
        for part in s.split('|') {
            let (tag, blk) = part
                .split_once(':')
                .ok_or_else(|| Error::input(format!("block {part:?} lacks a colour tag")))?;
            colours.push(parse_colour(tag.trim())?);
            blocks.push(parse_block(blk)?);
        }
        let p = assemble(&blocks)?;
        // node colours from the parsed blocks, then re-derive per canonical block
        let mut node_colours = vec![0; p.n_top() + p.n_bot()];
        for (blk, &c) in blocks.iter().zip(&colours) {
            for &(v, bottom) in blk {
                node_colours[if bottom { p.n_top() + v - 1 } else { v - 1 }] = c;
            }
        }
        Self::from_node_colours(m, p, &node_colours)
    }
}

/// `α·β`: zero unless `bot(α) = top(β)`, else `Π δ_c^{r_c}` times the
/// stacked diagram, `r_c` counting discarded components of colour `c`.
pub fn compose_coloured(
    alpha: &ColouredDiagram,
    beta: &ColouredDiagram,
    deltas: &[Scalar],
) -> Result<Option<(Scalar, ColouredDiagram)>> {
    if alpha.m != beta.m || deltas.len() != alpha.m {
        return Err(Error::input(format!(
            "{} loop parameters given for diagrams with {} and {} colours",
            deltas.len(),
            alpha.m,
            beta.m
        )));
    }
    if alpha.n() != beta.n() || alpha.partition.n_bot() != beta.partition.n_top() {
        return Err(Error::input("diagrams of different sizes"));
    }
    let middle = alpha.bot();
    if middle != beta.top() {
        return Ok(None);
    }
    let stacked = stack(&alpha.partition, &beta.partition)?;
    let mut coeff = deltas[0].field().one();
    for comp in &stacked.removed {
        coeff = &coeff * &deltas[middle[comp[0]]];
    }
    let mut colours = alpha.top();
    colours.extend(beta.bot());
    let d = ColouredDiagram::from_node_colours(alpha.m, stacked.partition, &colours)?;
    Ok(Some((coeff, d)))
}

/// All top colourings `n → {0..m}` in lexicographic order.
pub fn colourings(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every coloured diagram on `n` top and `n` bottom nodes.
pub fn all_coloured_diagrams(n: usize, m: usize) -> Vec<ColouredDiagram> {
    let mut out = Vec::new();
    for labels in restricted_growth_strings(2 * n) {
        let p = SetPartition::from_labels(n, n, &labels);
        for cs in colourings(p.blocks().len(), m) {
            out.push(ColouredDiagram { m, partition: p.clone(), block_colours: cs });
        }
    }
    out
}

/// The multi-colour partition algebra `P_{n,m}(δ_0, …, δ_{m-1})` on its
/// diagram basis, with the idempotents `1_{(A)}`.
#[derive(Clone, Debug)]
pub struct PartitionAlgebra {
    pub n: usize,
    pub m: usize,
    pub deltas: Vec<Scalar>,
    pub diagrams: Vec<ColouredDiagram>,
    pub index: HashMap<ColouredDiagram, usize>,
    pub algebra: Algebra,
    /// Diagram flip, an anti-automorphism.
    pub star: Vec<usize>,
    pub idempotents: IdempotentFamily,
    /// Top colouring of each idempotent.
    pub idempotent_colourings: Vec<Vec<usize>>,
}

fn check_deltas(field: Field, m: usize, deltas: &[Scalar]) -> Result<()> {
    if m == 0 {
        return Err(Error::input("at least one colour is required"));
    }
    if deltas.len() != m {
        return Err(Error::input(format!("{} loop parameters given for {m} colours", deltas.len())));
    }
    if deltas.iter().any(|d| d.field() != field) {
        return Err(Error::input("loop parameters over a different field"));
    }
    Ok(())
}

pub fn build_multicolour_partition(n: usize, m: usize, field: Field, deltas: &[Scalar]) -> Result<PartitionAlgebra> {
    check_deltas(field, m, deltas)?;
    let diagrams = all_coloured_diagrams(n, m);
    let index: HashMap<ColouredDiagram, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let idempotent_colourings = colourings(n, m);
    let id_elements: Vec<Element> = idempotent_colourings
        .iter()
        .map(|a| Element::basis(field, index[&ColouredDiagram::identity(m, a)]))
        .collect();
    let unit = id_elements.iter().fold(Element::zero(), |acc, e| acc.add(e));
    let algebra = Algebra::from_products(field, diagrams.len(), unit, |i, j| {
        match compose_coloured(&diagrams[i], &diagrams[j], deltas).expect("same shape") {
            None => Element::zero(),
            Some((c, d)) => Element::from_terms([(index[&d], c)]),
        }
    });
    let star = diagrams.iter().map(|d| index[&d.flip()]).collect();
    let labels = idempotent_colourings.iter().map(|a| a.iter().map(|&c| colour_name(c)).collect::<String>()).collect();
    Ok(PartitionAlgebra {
        n,
        m,
        deltas: deltas.to_vec(),
        diagrams,
        index,
        algebra,
        star,
        idempotents: IdempotentFamily::new(labels, id_elements),
        idempotent_colourings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentCheck {
    pub sum_is_unit: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub star_fixed: bool,
    /// Every diagram is fixed on the left by exactly one `1_{(A)}` and killed by the rest.
    pub unique_left_colour: bool,
    pub star_anti_automorphism: bool,
}

impl IdempotentCheck {
    pub fn holds(&self) -> bool {
        self.sum_is_unit
            && self.idempotent
            && self.orthogonal
            && self.star_fixed
            && self.unique_left_colour
            && self.star_anti_automorphism
    }
}

impl PartitionAlgebra {
    pub fn dim(&self) -> usize {
        self.diagrams.len()
    }

    /// Exhaustive check of the idempotent conditions on the diagram basis.
    pub fn check_idempotents(&self) -> IdempotentCheck {
        let alg = &self.algebra;
        let es = &self.idempotents.elements;
        let f = alg.field();
        let sum = es.iter().fold(Element::zero(), |acc, e| acc.add(e));
        let star = |x: &Element| x.map_basis(|i| self.star[i]);
        let unique_left_colour = (0..self.dim()).all(|k| {
            let b = Element::basis(f, k);
            let fixed = es.iter().filter(|e| alg.multiply(e, &b) == b).count();
            let killed = es.iter().filter(|e| alg.multiply(e, &b).is_zero()).count();
            fixed == 1 && killed == es.len() - 1
        });
        let star_anti_automorphism = (0..self.dim()).all(|a| {
            (0..self.dim()).all(|b| star(&alg.basis_product_element(a, b)) == alg.basis_product_element(self.star[b], self.star[a]))
        });
        IdempotentCheck {
            sum_is_unit: alg.is_unit(&sum),
            idempotent: es.iter().all(|e| &alg.multiply(e, e) == e),
            orthogonal: es
                .iter()
                .enumerate()
                .all(|(i, e)| es.iter().enumerate().all(|(j, g)| i == j || alg.multiply(e, g).is_zero())),
            star_fixed: es.iter().all(|e| &star(e) == e),
            unique_left_colour,
            star_anti_automorphism,
        }
    }
}
