use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// A partition of `{1..n_top} ∪ {1'..n_bot'}`.
///
/// Nodes are stored as `0..n_top` (top) followed by `n_top..n_top+n_bot`
/// (bottom); each block is sorted and blocks are ordered by least element,
/// so equality is equality of diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n_top: usize,
    n_bot: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n_top: usize, n_bot: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let total = n_top + n_bot;
        let mut seen = vec![false; total];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::input("empty block"));
            }
            for &x in b {
                if x >= total || seen[x] {
                    return Err(Error::input(format!("node {x} is out of range or repeated")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::input("blocks do not cover every node"));
        }
        Ok(Self::canonical(n_top, n_bot, blocks))
    }

    fn canonical(n_top: usize, n_bot: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n_top, n_bot, blocks }
    }

    /// Partition from a block label per node (`labels[x]` names x's block).
    pub fn from_labels(n_top: usize, n_bot: usize, labels: &[usize]) -> Self {
        assert_eq!(labels.len(), n_top + n_bot);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot: Vec<Option<usize>> = vec![None; labels.iter().max().map_or(0, |m| m + 1)];
        for (x, &l) in labels.iter().enumerate() {
            match slot[l] {
                Some(b) => blocks[b].push(x),
                None => {
                    slot[l] = Some(blocks.len());
                    blocks.push(vec![x]);
                }
            }
        }
        Self::canonical(n_top, n_bot, blocks)
    }

    pub fn identity(n: usize) -> Self {
        SetPartition { n_top: n, n_bot: n, blocks: (0..n).map(|j| vec![j, n + j]).collect() }
    }

    pub fn n_top(&self) -> usize {
        self.n_top
    }

    pub fn n_bot(&self) -> usize {
        self.n_bot
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_top(&self, node: usize) -> bool {
        node < self.n_top
    }

    /// Block index of every node.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_top + self.n_bot];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    /// Swaps top and bottom rows.
    pub fn flip(&self) -> Self {
        let (t, b) = (self.n_top, self.n_bot);
        let map = |x: usize| if x < t { b + x } else { x - t };
        Self::canonical(b, t, self.blocks.iter().map(|blk| blk.iter().map(|&x| map(x)).collect()).collect())
    }

    /// Number of blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        self.blocks.iter().filter(|b| b[0] < self.n_top && *b.last().expect("nonempty") >= self.n_top).count()
    }

    fn node_name(&self, x: usize) -> String {
        if x < self.n_top {
            format!("{}", x + 1)
        } else {
            format!("{}'", x - self.n_top + 1)
        }
    }

    pub(crate) fn render_block(&self, b: &[usize]) -> String {
        let names: Vec<String> = b.iter().map(|&x| self.node_name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Nodes as `1,2'`, blocks as `{..}`, separated by `|`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| self.render_block(b)).collect();
        f.write_str(&parts.join("|"))
    }
}

/// Parses `{1,2'}` into `(node, is_bottom)` pairs (1-based node numbers).
pub(crate) fn parse_block(s: &str) -> Result<Vec<(usize, bool)>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::input(format!("block {s:?} is not of the form {{..}}")))?;
    inner
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (num, bottom) = match tok.strip_suffix('\'') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let v: usize = num.parse().map_err(|_| Error::input(format!("bad node {tok:?}")))?;
            if v == 0 {
                return Err(Error::input("nodes are numbered from 1"));
            }
            Ok((v, bottom))
        })
        .collect()
}

/// Builds a partition from parsed blocks; the row sizes are the largest
/// node numbers seen.
pub(crate) fn assemble(blocks: &[Vec<(usize, bool)>]) -> Result<SetPartition> {
    let n_top = blocks.iter().flatten().filter(|(_, b)| !b).map(|(v, _)| *v).max().unwrap_or(0);
    let n_bot = blocks.iter().flatten().filter(|(_, b)| *b).map(|(v, _)| *v).max().unwrap_or(0);
    let nodes = blocks
        .iter()
        .map(|b| b.iter().map(|&(v, bottom)| if bottom { n_top + v - 1 } else { v - 1 }).collect())
        .collect();
    SetPartition::new(n_top, n_bot, nodes)
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return SetPartition::new(0, 0, Vec::new());
        }
        let blocks = s.split('|').map(parse_block).collect::<Result<Vec<_>>>()?;
        assemble(&blocks)
    }
}

/// Result of stacking `α` over `β`: the composite, and the interior
/// components (as lists of middle-row positions) that were discarded.
pub(crate) struct Stacked {
    pub partition: SetPartition,
    pub removed: Vec<Vec<usize>>,
}

pub(crate) fn stack(alpha: &SetPartition, beta: &SetPartition) -> Result<Stacked> {
    if alpha.n_bot != beta.n_top {
        return Err(Error::input(format!(
            "cannot compose: {} bottom nodes over {} top nodes",
            alpha.n_bot, beta.n_top
        )));
    }
    let (a, b, c) = (alpha.n_top, alpha.n_bot, beta.n_bot);
    // α top: 0..a, middle: a..a+b, β bottom: a+b..a+b+c
    let mut uf = UnionFind::new(a + b + c);
    for blk in &alpha.blocks {
        for w in blk.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for blk in &beta.blocks {
        for w in blk.windows(2) {
            uf.union(a + w[0], a + w[1]);
        }
    }
    let mut labels = vec![usize::MAX; a + b + c];
    for (x, l) in labels.iter_mut().enumerate() {
        *l = uf.find(x);
    }
    let mut boundary = vec![false; a + b + c];
    for x in (0..a).chain(a + b..a + b + c) {
        boundary[labels[x]] = true;
    }
    let mut removed: Vec<Vec<usize>> = Vec::new();
    let mut removed_slot = vec![usize::MAX; a + b + c];
    for m in 0..b {
        let r = labels[a + m];
        if !boundary[r] {
            if removed_slot[r] == usize::MAX {
                removed_slot[r] = removed.len();
                removed.push(Vec::new());
            }
            removed[removed_slot[r]].push(m);
        }
    }
    let outer: Vec<usize> = (0..a).chain(a + b..a + b + c).map(|x| labels[x]).collect();
    Ok(Stacked { partition: SetPartition::from_labels(a, c, &outer), removed })
}

/// Stacks `α` over `β`, returning the composite and the number of interior
/// components discarded.
pub fn compose_set_partitions(alpha: &SetPartition, beta: &SetPartition) -> Result<(SetPartition, usize)> {
    let s = stack(alpha, beta)?;
    Ok((s.partition, s.removed.len()))
}

/// All set partitions of `{0..k}` as block-label vectors (restricted growth strings).
pub fn restricted_growth_strings(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for v in 0..=limit {
            prefix.push(v);
            go(prefix, max.max(v), k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), 0, k, &mut out);
    out
}

/// The basis of the partition algebra `P_n`.
pub fn all_set_partitions(n: usize) -> Vec<SetPartition> {
    restricted_growth_strings(2 * n).iter().map(|l| SetPartition::from_labels(n, n, l)).collect()
}
