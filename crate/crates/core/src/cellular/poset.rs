use crate::error::{Error, Result};

/// Finite strict partial order on cell labels, stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPoset {
    labels: Vec<String>,
    // less[a][b] ⇔ a < b
    less: Vec<Vec<bool>>,
}

impl CellPoset {
    /// Builds the order generated by `covers`, each `(a, b)` meaning `a < b`.
    pub fn from_indices(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::input(format!("duplicate cell label {l:?}")));
            }
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::input("order pair refers to an unknown cell"));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !less[i][k] {
                    continue;
                }
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::input(format!(
                "order relation is not antisymmetric: cycle through {:?}",
                labels[i]
            )));
        }
        Ok(CellPoset { labels, less })
    }

    pub fn new(labels: Vec<String>, covers: &[(&str, &str)]) -> Result<Self> {
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::input(format!("unknown cell label {s:?}")))
        };
        let pairs = covers.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_indices(labels, &pairs)
    }

    /// Order given by a comparison predicate `lt(a, b) ⇔ a < b`, which must already be transitive.
    pub fn from_relation(labels: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let pairs: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| lt(a, b)).collect();
        Self::from_indices(labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn gt(&self, a: usize, b: usize) -> bool {
        self.less[b][a]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    /// All pairs `(a, b)` with `a < b` in the closed order.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.less[a][b]).collect()
    }

    /// Covering relations of the closed order.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.order_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|c| self.less[a][c] && self.less[c][b]))
            .collect()
    }

    /// Induced order on a subset of cells, kept in the given order.
    pub fn restrict(&self, cells: &[usize]) -> CellPoset {
        let labels = cells.iter().map(|&c| self.labels[c].clone()).collect();
        let less = cells.iter().map(|&a| cells.iter().map(|&b| self.less[a][b]).collect()).collect();
        CellPoset { labels, less }
    }

    /// Irreflexivity and transitivity of the stored relation.
    pub fn is_strict_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| !self.less[a][a])
            && (0..n).all(|a| {
                (0..n).all(|b| !self.less[a][b] || (0..n).all(|c| !self.less[b][c] || self.less[a][c]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn closure_of_chain() {
        let p = CellPoset::new(labels(&["a", "b", "c"]), &[("c", "b"), ("b", "a")]).unwrap();
        assert!(p.gt(0, 2));
        assert!(p.lt(2, 0));
        assert_eq!(p.order_pairs().len(), 3);
        assert_eq!(p.covering_pairs(), vec![(1, 0), (2, 1)]);
        assert!(p.is_strict_order());
    }

    #[test]
    fn cycles_rejected() {
        let r = CellPoset::new(labels(&["a", "b"]), &[("a", "b"), ("b", "a")]);
        assert!(r.is_err());
        assert!(CellPoset::new(labels(&["a", "a"]), &[]).is_err());
        assert!(CellPoset::new(labels(&["a"]), &[("a", "z")]).is_err());
    }
}
