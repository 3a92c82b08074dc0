use std::collections::HashMap;

use super::coloured::{colour_name, colourings};
use super::set_partition::{compose_set_partitions, SetPartition};
use crate::algebra::Element;
use crate::cellular::{BasisTriple, CellDatum, CellPoset};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::split::IdempotentFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Open,
    Close,
    Defect,
}

/// One row of a coloured pairing: each point is an arc end or a defect.
/// Same-colour arcs do not cross and no defect sits under an arc of its colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfDiagram {
    pub colours: Vec<usize>,
    pub marks: Vec<Mark>,
}

impl HalfDiagram {
    pub fn n(&self) -> usize {
        self.marks.len()
    }

    /// Partner of every point, `None` for defects.
    pub fn pairing(&self) -> Vec<Option<usize>> {
        let m = self.colours.iter().max().map_or(0, |c| c + 1);
        let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut out = vec![None; self.n()];
        for (x, (&c, &mk)) in self.colours.iter().zip(&self.marks).enumerate() {
            match mk {
                Mark::Open => stacks[c].push(x),
                Mark::Close => {
                    let y = stacks[c].pop().expect("balanced");
                    out[x] = Some(y);
                    out[y] = Some(x);
                }
                Mark::Defect => {}
            }
        }
        out
    }

    /// Defect positions of colour `c`, left to right.
    pub fn defects(&self, c: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.marks[x] == Mark::Defect && self.colours[x] == c).collect()
    }

    pub fn defect_counts(&self, m: usize) -> Vec<usize> {
        (0..m).map(|c| self.defects(c).len()).collect()
    }

    /// `()|`-style text; colour tags are included when `tagged`.
    pub fn render(&self, tagged: bool) -> String {
        let mut s = String::new();
        for (&c, &mk) in self.colours.iter().zip(&self.marks) {
            if tagged {
                s.push_str(&colour_name(c));
            }
            s.push(match mk {
                Mark::Open => '(',
                Mark::Close => ')',
                Mark::Defect => '|',
            });
        }
        s
    }
}

/// All valid half diagrams on `n` points with the given point colouring.
fn half_diagrams_with_colouring(colours: &[usize], m: usize) -> Vec<HalfDiagram> {
    fn go(colours: &[usize], depth: &mut Vec<usize>, marks: &mut Vec<Mark>, out: &mut Vec<HalfDiagram>) {
        let x = marks.len();
        if x == colours.len() {
            if depth.iter().all(|&d| d == 0) {
                out.push(HalfDiagram { colours: colours.to_vec(), marks: marks.clone() });
            }
            return;
        }
        let c = colours[x];
        let remaining_of_c = colours[x..].iter().filter(|&&y| y == c).count();
        // open
        if depth[c] < remaining_of_c - 1 {
            depth[c] += 1;
            marks.push(Mark::Open);
            go(colours, depth, marks, out);
            marks.pop();
            depth[c] -= 1;
        }
        if depth[c] > 0 {
            depth[c] -= 1;
            marks.push(Mark::Close);
            go(colours, depth, marks, out);
            marks.pop();
            depth[c] += 1;
        } else {
            marks.push(Mark::Defect);
            go(colours, depth, marks, out);
            marks.pop();
        }
    }
    let mut out = Vec::new();
    go(colours, &mut vec![0; m], &mut Vec::new(), &mut out);
    out
}

/// Half diagrams on `n` points with `m` colours, grouped by defect counts.
pub fn coloured_half_diagrams(n: usize, m: usize) -> Vec<HalfDiagram> {
    let mut all: Vec<HalfDiagram> = colourings(n, m).iter().flat_map(|c| half_diagrams_with_colouring(c, m)).collect();
    all.sort();
    all
}

/// A full pairing of `2n` points (`0..n` top, `n..2n` bottom) with a colour per point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    pub partner: Vec<usize>,
    pub colour: Vec<usize>,
}

impl Matching {
    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    /// Diagram with top half `s` and bottom half `t`, joining the `j`-th
    /// defects of each colour in order.
    pub fn from_halves(s: &HalfDiagram, t: &HalfDiagram, m: usize) -> Self {
        let n = s.n();
        let mut partner = vec![0; 2 * n];
        let mut colour = s.colours.clone();
        colour.extend_from_slice(&t.colours);
        for (x, p) in s.pairing().into_iter().enumerate() {
            if let Some(y) = p {
                partner[x] = y;
            }
        }
        for (x, p) in t.pairing().into_iter().enumerate() {
            if let Some(y) = p {
                partner[n + x] = n + y;
            }
        }
        for c in 0..m {
            for (a, b) in s.defects(c).into_iter().zip(t.defects(c)) {
                partner[a] = n + b;
                partner[n + b] = a;
            }
        }
        Matching { partner, colour }
    }

    /// Inverse of [`Matching::from_halves`].
    pub fn halves(&self) -> (HalfDiagram, HalfDiagram) {
        let n = self.n();
        let mark = |x: usize, same_row: bool| match (same_row, self.partner[x] > x) {
            (false, _) => Mark::Defect,
            (true, true) => Mark::Open,
            (true, false) => Mark::Close,
        };
        let top = HalfDiagram {
            colours: self.colour[..n].to_vec(),
            marks: (0..n).map(|x| mark(x, self.partner[x] < n)).collect(),
        };
        let bot = HalfDiagram {
            colours: self.colour[n..].to_vec(),
            marks: (n..2 * n).map(|x| mark(x, self.partner[x] >= n)).collect(),
        };
        (top, bot)
    }

    /// Stacks `self` over `below` by following strands through the middle
    /// row. Returns `None` when the middle colours disagree, otherwise the
    /// composite and the colours of the closed loops.
    pub fn compose(&self, below: &Matching) -> Option<(Matching, Vec<usize>)> {
        let n = self.n();
        if self.colour[n..] != below.colour[..n] {
            return None;
        }
        // global nodes: upper top 0..n, upper bottom = lower top n..2n, lower bottom 2n..3n
        // leave `node` through the diagram on the given side
        let step = |node: usize, from_upper: bool| -> usize {
            if from_upper {
                self.partner[node]
            } else {
                below.partner[node - n] + n
            }
        };
        let mut partner = vec![usize::MAX; 2 * n];
        let mut visited_mid = vec![false; n];
        let ends: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
        for &start in &ends {
            let out_start = if start < n { start } else { start - n };
            if partner[out_start] != usize::MAX {
                continue;
            }
            let mut upper = start < n;
            let mut node = start;
            loop {
                let next = step(node, upper);
                if upper && next < n || !upper && next >= 2 * n {
                    node = next;
                    break;
                }
                // next lies in the middle row; cross into the other diagram
                visited_mid[next - n] = true;
                node = next;
                upper = !upper;
            }
            let out_end = if node < n { node } else { node - n };
            partner[out_start] = out_end;
            partner[out_end] = out_start;
        }
        let mut loops = Vec::new();
        for m0 in 0..n {
            if visited_mid[m0] {
                continue;
            }
            loops.push(self.colour[n + m0]);
            let mut node = n + m0;
            let mut upper = true;
            loop {
                visited_mid[node - n] = true;
                let next = step(node, upper);
                node = next;
                upper = !upper;
                if node == n + m0 {
                    break;
                }
            }
        }
        let mut colour = self.colour[..n].to_vec();
        colour.extend_from_slice(&below.colour[n..]);
        Some((Matching { partner, colour }, loops))
    }

    pub fn to_set_partition(&self) -> SetPartition {
        let n = self.n();
        let blocks = (0..2 * n).filter(|&x| self.partner[x] > x).map(|x| vec![x, self.partner[x]]).collect();
        SetPartition::new(n, n, blocks).expect("perfect matching")
    }
}

/// Cell data of a planar diagram algebra: cells, their half diagrams, and a lookup.
struct CellLayout {
    cells: Vec<Vec<usize>>,
    halves: Vec<Vec<HalfDiagram>>,
    lookup: HashMap<HalfDiagram, (usize, usize)>,
}

impl CellLayout {
    /// Cells ordered by total defects descending, then lexicographically descending.
    fn new(all: Vec<HalfDiagram>, m: usize) -> Self {
        let mut cells: Vec<Vec<usize>> = all.iter().map(|h| h.defect_counts(m)).collect();
        cells.sort_by(|a, b| {
            let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
            sb.cmp(&sa).then(b.cmp(a))
        });
        cells.dedup();
        let mut halves = vec![Vec::new(); cells.len()];
        let mut lookup = HashMap::new();
        for h in all {
            let c = cells.iter().position(|k| *k == h.defect_counts(m)).expect("listed");
            lookup.insert(h.clone(), (c, halves[c].len()));
            halves[c].push(h);
        }
        CellLayout { cells, halves, lookup }
    }

    /// `a > b` iff `a ≠ b` and `a` has at most as many defects of every colour.
    fn poset(&self, labels: Vec<String>) -> Result<CellPoset> {
        let cells = &self.cells;
        CellPoset::from_relation(labels, |a, b| a != b && cells[b].iter().zip(&cells[a]).all(|(x, y)| x <= y))
    }

    fn t_sets(&self, tagged: bool) -> Vec<Vec<String>> {
        self.halves.iter().map(|hs| hs.iter().map(|h| h.render(tagged)).collect()).collect()
    }

    fn triple_of(&self, top: &HalfDiagram, bot: &HalfDiagram) -> BasisTriple {
        let (cell, s) = self.lookup[top];
        let (cell_t, t) = self.lookup[bot];
        debug_assert_eq!(cell, cell_t);
        BasisTriple { cell, s, t }
    }
}

/// The Temperley–Lieb algebra with its diagrams, indexed like the datum basis.
#[derive(Clone, Debug)]
pub struct TemperleyLieb {
    pub datum: CellDatum,
    pub diagrams: Vec<SetPartition>,
    pub index: HashMap<SetPartition, usize>,
}

fn halves_of_partition(p: &SetPartition) -> (HalfDiagram, HalfDiagram) {
    let n = p.n_top();
    let mut partner = vec![0; 2 * n];
    for b in p.blocks() {
        assert_eq!(b.len(), 2, "pairing diagram");
        partner[b[0]] = b[1];
        partner[b[1]] = b[0];
    }
    Matching { partner, colour: vec![0; 2 * n] }.halves()
}

/// `TL_n(δ)` with cells indexed by the number of through lines.
pub fn build_tl(n: usize, delta: &Scalar) -> Result<TemperleyLieb> {
    let field = delta.field();
    let layout = CellLayout::new(coloured_half_diagrams(n, 1), 1);
    let labels = layout.cells.iter().map(|k| k[0].to_string()).collect();
    let poset = layout.poset(labels)?;
    let mut diagrams = Vec::new();
    for hs in &layout.halves {
        for s in hs {
            for t in hs {
                diagrams.push(Matching::from_halves(s, t, 1).to_set_partition());
            }
        }
    }
    let index: HashMap<SetPartition, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let unit = Element::basis(field, index[&SetPartition::identity(n)]);
    let algebra = crate::algebra::Algebra::from_products(field, diagrams.len(), unit, |i, j| {
        let (d, loops) = compose_set_partitions(&diagrams[i], &diagrams[j]).expect("same size");
        Element::from_terms([(index[&d], delta.pow(loops as u32))])
    });
    let datum = CellDatum::new(poset, layout.t_sets(false), algebra, None)?;
    debug_assert!(diagrams.iter().enumerate().all(|(i, d)| {
        let (s, t) = halves_of_partition(d);
        let b = layout.triple_of(&s, &t);
        datum.index(b.cell, b.s, b.t) == i
    }));
    Ok(TemperleyLieb { datum, diagrams, index })
}

/// The bubble algebra with its diagrams and the idempotents `e_i`.
#[derive(Clone, Debug)]
pub struct Bubble {
    pub n: usize,
    pub m: usize,
    pub deltas: Vec<Scalar>,
    pub datum: CellDatum,
    pub diagrams: Vec<Matching>,
    pub idempotents: IdempotentFamily,
    pub idempotent_colourings: Vec<Vec<usize>>,
}

/// `T_{n,m}(δ_0, …, δ_{m-1})`: `m`-coloured pairings, planar within each colour.
pub fn build_bubble(n: usize, m: usize, field: Field, deltas: &[Scalar]) -> Result<Bubble> {
    if m == 0 {
        return Err(Error::input("at least one colour is required"));
    }
    if deltas.len() != m {
        return Err(Error::input(format!("{} loop parameters given for {m} colours", deltas.len())));
    }
    if deltas.iter().any(|d| d.field() != field) {
        return Err(Error::input("loop parameters over a different field"));
    }
    let layout = CellLayout::new(coloured_half_diagrams(n, m), m);
    let labels = layout
        .cells
        .iter()
        .map(|k| format!("({})", k.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    let poset = layout.poset(labels)?;
    let mut diagrams = Vec::new();
    for hs in &layout.halves {
        for s in hs {
            for t in hs {
                diagrams.push(Matching::from_halves(s, t, m));
            }
        }
    }
    let idx = |mt: &Matching| {
        let (s, t) = mt.halves();
        layout.triple_of(&s, &t)
    };
    let offsets: Vec<usize> = layout
        .halves
        .iter()
        .scan(0, |acc, hs| {
            let o = *acc;
            *acc += hs.len() * hs.len();
            Some(o)
        })
        .collect();
    let flat = |b: BasisTriple| offsets[b.cell] + b.s * layout.halves[b.cell].len() + b.t;
    let idempotent_colourings = colourings(n, m);
    let identity = |cols: &[usize]| {
        let mut colour = cols.to_vec();
        colour.extend_from_slice(cols);
        Matching { partner: (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect(), colour }
    };
    let id_elements: Vec<Element> =
        idempotent_colourings.iter().map(|c| Element::basis(field, flat(idx(&identity(c))))).collect();
    let unit = id_elements.iter().fold(Element::zero(), |acc, e| acc.add(e));
    let datum = CellDatum::from_products(poset, layout.t_sets(m > 1), field, unit, |a, b| {
        let (x, y) = (&diagrams[flat(a)], &diagrams[flat(b)]);
        match x.compose(y) {
            None => Element::zero(),
            Some((d, loops)) => {
                let mut coeff = field.one();
                for c in loops {
                    coeff = &coeff * &deltas[c];
                }
                Element::from_terms([(flat(idx(&d)), coeff)])
            }
        }
    })?;
    let labels = idempotent_colourings.iter().map(|c| c.iter().map(|&x| colour_name(x)).collect::<String>()).collect();
    Ok(Bubble {
        n,
        m,
        deltas: deltas.to_vec(),
        datum,
        diagrams,
        idempotents: IdempotentFamily::new(labels, id_elements),
        idempotent_colourings,
    })
}
