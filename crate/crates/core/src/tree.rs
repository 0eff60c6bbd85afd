//! Complete k-ary trees `T_{k,n}` with breadth-first edge labels.
//!
//! Edge `x_1 .. x_k` hang from the root, `x_{k+1} .. x_{k+k^2}` from the
//! first generation, and so on left to right; an edge is labelled by its head
//! node, so the children of edge `(level, index)` are
//! `(level + 1, index * k .. index * k + k)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Default cap on enumeration output size.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeSpec {
    k: u32,
    n: u32,
}

impl TreeSpec {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!(
                "branching factor k must be >= 2, got {k}"
            )));
        }
        if n < 1 {
            return Err(Error::invalid("depth n must be >= 1"));
        }
        let spec = TreeSpec { k, n };
        if spec.checked_edge_count().is_none() {
            return Err(Error::invalid(format!(
                "T_{{{k},{n}}} is too large to label"
            )));
        }
        Ok(spec)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn checked_edge_count(&self) -> Option<usize> {
        let mut total: usize = 0;
        let mut level: usize = 1;
        for _ in 0..self.n {
            level = level.checked_mul(self.k as usize)?;
            total = total.checked_add(level)?;
        }
        Some(total)
    }

    /// `sum_{i=1..n} k^i`
    pub fn edge_count(&self) -> usize {
        self.checked_edge_count().expect("checked at construction")
    }

    pub fn level_size(&self, level: u32) -> usize {
        (self.k as usize).pow(level)
    }

    pub fn leaf_count(&self) -> usize {
        self.level_size(self.n)
    }

    /// 0-based position of the first edge of `level` in label order.
    fn level_offset(&self, level: u32) -> usize {
        (1..level).map(|l| self.level_size(l)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (1..=self.n).flat_map(move |level| {
            (0..self.level_size(level)).map(move |index| EdgeId { level, index })
        })
    }

    /// 1-based variable label: `x_label`.
    pub fn label(&self, edge: EdgeId) -> usize {
        self.level_offset(edge.level) + edge.index + 1
    }

    pub fn edge_from_label(&self, label: usize) -> Option<EdgeId> {
        if label == 0 || label > self.edge_count() {
            return None;
        }
        let mut rest = label - 1;
        for level in 1..=self.n {
            let size = self.level_size(level);
            if rest < size {
                return Some(EdgeId { level, index: rest });
            }
            rest -= size;
        }
        None
    }

    pub fn parent(&self, edge: EdgeId) -> Option<EdgeId> {
        (edge.level > 1).then(|| EdgeId {
            level: edge.level - 1,
            index: edge.index / self.k as usize,
        })
    }

    pub fn children(&self, edge: EdgeId) -> impl Iterator<Item = EdgeId> {
        let k = self.k as usize;
        let has_children = edge.level < self.n;
        (0..if has_children { k } else { 0 }).map(move |c| EdgeId {
            level: edge.level + 1,
            index: edge.index * k + c,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub level: u32,
    pub index: usize,
}

/// Root-to-leaf path, one edge per level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathGenerator {
    pub edges: Vec<EdgeId>,
}

impl PathGenerator {
    pub fn labels(&self, spec: &TreeSpec) -> Vec<usize> {
        self.edges.iter().map(|&e| spec.label(e)).collect()
    }
}

/// An antichain of edges meeting every root-to-leaf path exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalCut {
    pub edges: BTreeSet<EdgeId>,
}

impl MinimalCut {
    pub fn labels(&self, spec: &TreeSpec) -> Vec<usize> {
        let mut labels: Vec<usize> = self.edges.iter().map(|&e| spec.label(e)).collect();
        labels.sort_unstable();
        labels
    }
}

pub fn enumerate_path_generators(spec: &TreeSpec, cap: usize) -> Result<Vec<PathGenerator>> {
    let leaves = spec.leaf_count();
    if leaves > cap {
        return Err(Error::Budget {
            what: "path generators",
            required: leaves as u128,
            limit: cap as u128,
        });
    }
    let paths = (0..leaves)
        .map(|leaf| {
            let mut edges: Vec<EdgeId> = (1..=spec.n())
                .rev()
                .scan(leaf, |index, level| {
                    let edge = EdgeId {
                        level,
                        index: *index,
                    };
                    *index /= spec.k() as usize;
                    Some(edge)
                })
                .collect();
            edges.reverse();
            PathGenerator { edges }
        })
        .collect();
    Ok(paths)
}

/// Number of minimal cuts: `c(1) = 1`, `c(n) = (1 + c(n-1))^k`, saturating.
pub fn minimal_cut_count(k: u32, n: u32) -> u128 {
    let mut c: u128 = 0;
    for _ in 0..n {
        c = (0..k)
            .try_fold(1u128, |acc, _| acc.checked_mul(c + 1))
            .unwrap_or(u128::MAX);
        if c == u128::MAX {
            break;
        }
    }
    c
}

/// Each child branch contributes either its top edge or a cut of its own
/// subtree; the tree's cuts are the products over the k branches.
pub fn enumerate_minimal_cuts(spec: &TreeSpec, cap: usize) -> Result<Vec<MinimalCut>> {
    let count = minimal_cut_count(spec.k(), spec.n());
    if count > cap as u128 {
        return Err(Error::Budget {
            what: "minimal cuts",
            required: count,
            limit: cap as u128,
        });
    }
    let roots: Vec<EdgeId> = (0..spec.k() as usize)
        .map(|index| EdgeId { level: 1, index })
        .collect();
    let cuts = cuts_below(spec, &roots);
    Ok(cuts
        .into_iter()
        .map(|edges| MinimalCut {
            edges: edges.into_iter().collect(),
        })
        .collect())
}

fn cuts_below(spec: &TreeSpec, branch_tops: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let mut acc: Vec<Vec<EdgeId>> = vec![Vec::new()];
    for &top in branch_tops {
        let mut options: Vec<Vec<EdgeId>> = vec![vec![top]];
        let kids: Vec<EdgeId> = spec.children(top).collect();
        if !kids.is_empty() {
            options.extend(cuts_below(spec, &kids));
        }
        acc = acc
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(opt);
                    v
                })
            })
            .collect();
    }
    acc
}

/// Edge state as a bitmask over 0-based labels (`label - 1`), for trees with
/// at most 64 edges.
pub(crate) fn percolates_mask(spec: &TreeSpec, working: u64) -> bool {
    let k = spec.k() as usize;
    // alive[i]: the head node of edge i at the current level reaches a leaf
    let mut alive: Vec<bool> = vec![true; spec.leaf_count()];
    for level in (1..=spec.n()).rev() {
        let offset = spec.level_offset(level);
        let size = spec.level_size(level);
        let reach: Vec<bool> = (0..size)
            .map(|i| alive[i] && working >> (offset + i) & 1 == 1)
            .collect();
        alive = reach.chunks(k).map(|c| c.iter().any(|&b| b)).collect();
    }
    alive[0]
}

/// True iff the working edges contain a full root-to-leaf path.
pub fn percolates(spec: &TreeSpec, working: &BTreeSet<EdgeId>) -> bool {
    // search from the root downward
    fn reach(spec: &TreeSpec, edge: EdgeId, working: &BTreeSet<EdgeId>) -> bool {
        if !working.contains(&edge) {
            return false;
        }
        if edge.level == spec.n() {
            return true;
        }
        spec.children(edge).any(|c| reach(spec, c, working))
    }
    (0..spec.k() as usize).any(|index| reach(spec, EdgeId { level: 1, index }, working))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: u32, n: u32) -> TreeSpec {
        TreeSpec::new(k, n).unwrap()
    }

    fn set(spec: &TreeSpec, labels: &[usize]) -> BTreeSet<EdgeId> {
        labels
            .iter()
            .map(|&l| spec.edge_from_label(l).unwrap())
            .collect()
    }

    #[test]
    fn counts() {
        let s = spec(2, 3);
        assert_eq!(s.edge_count(), 14);
        assert_eq!(s.leaf_count(), 8);
        assert_eq!(spec(3, 2).edge_count(), 12);
        assert!(TreeSpec::new(1, 3).is_err());
        assert!(TreeSpec::new(2, 0).is_err());
        assert!(TreeSpec::new(2, 200).is_err());
    }

    #[test]
    fn labels_are_breadth_first() {
        let s = spec(2, 3);
        let labels: Vec<usize> = s.edges().map(|e| s.label(e)).collect();
        assert_eq!(labels, (1..=14).collect::<Vec<_>>());
        // children of x_2 are x_5, x_6; children of x_6 are x_13, x_14
        let x2 = s.edge_from_label(2).unwrap();
        let kids: Vec<usize> = s.children(x2).map(|e| s.label(e)).collect();
        assert_eq!(kids, vec![5, 6]);
        let x6 = s.edge_from_label(6).unwrap();
        assert_eq!(
            s.children(x6).map(|e| s.label(e)).collect::<Vec<_>>(),
            vec![13, 14]
        );
        assert_eq!(
            s.parent(s.edge_from_label(10).unwrap()),
            s.edge_from_label(4)
        );
        assert_eq!(s.edge_from_label(15), None);
    }

    #[test]
    fn path_generator_examples() {
        let s = spec(2, 1);
        let paths = enumerate_path_generators(&s, 100).unwrap();
        let labels: Vec<Vec<usize>> = paths.iter().map(|p| p.labels(&s)).collect();
        assert_eq!(labels, vec![vec![1], vec![2]]);

        let s = spec(2, 2);
        let labels: Vec<Vec<usize>> = enumerate_path_generators(&s, 100)
            .unwrap()
            .iter()
            .map(|p| p.labels(&s))
            .collect();
        assert_eq!(labels, vec![vec![1, 3], vec![1, 4], vec![2, 5], vec![2, 6]]);

        let s = spec(3, 2);
        let paths = enumerate_path_generators(&s, 100).unwrap();
        assert_eq!(paths.len(), 9);
        assert!(paths.iter().all(|p| p.edges.len() == 2));
        assert!(matches!(
            enumerate_path_generators(&spec(3, 4), 10),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn minimal_cut_examples() {
        let s = spec(2, 1);
        let cuts = enumerate_minimal_cuts(&s, 100).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].labels(&s), vec![1, 2]);
        assert_eq!(enumerate_minimal_cuts(&spec(2, 2), 100).unwrap().len(), 4);
        assert_eq!(
            enumerate_minimal_cuts(&spec(2, 4), 1000).unwrap().len(),
            676
        );
        assert_eq!(minimal_cut_count(2, 5), 458329);
        assert!(matches!(
            enumerate_minimal_cuts(&spec(2, 5), 1000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn percolation_examples() {
        let s = spec(2, 2);
        let all: BTreeSet<EdgeId> = s.edges().collect();
        assert!(percolates(&s, &all));
        assert!(!percolates(&s, &BTreeSet::new()));
        assert!(percolates(&s, &set(&s, &[1, 4])));
        assert!(!percolates(&s, &set(&s, &[1, 5])));
        assert!(percolates_mask(&s, 0b1001));
        assert!(!percolates_mask(&s, 0b10001));
    }

    #[test]
    fn cuts_are_transversal_antichains() {
        for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let s = spec(k, n);
            let paths = enumerate_path_generators(&s, 1 << 10).unwrap();
            let cuts = enumerate_minimal_cuts(&s, 1 << 10).unwrap();
            assert_eq!(cuts.len() as u128, minimal_cut_count(k, n));
            let all: BTreeSet<EdgeId> = s.edges().collect();
            for cut in &cuts {
                for path in &paths {
                    let hits = path.edges.iter().filter(|e| cut.edges.contains(e)).count();
                    assert_eq!(hits, 1);
                }
                let rest: BTreeSet<EdgeId> = all.difference(&cut.edges).copied().collect();
                assert!(!percolates(&s, &rest));
                for e in &cut.edges {
                    let mut plus = rest.clone();
                    plus.insert(*e);
                    assert!(percolates(&s, &plus));
                }
            }
        }
    }

    #[test]
    fn mask_and_set_agree() {
        let s = spec(2, 3);
        for mask in (0u64..1 << 14).step_by(37) {
            let set: BTreeSet<EdgeId> = s
                .edges()
                .filter(|&e| mask >> (s.label(e) - 1) & 1 == 1)
                .collect();
            assert_eq!(percolates_mask(&s, mask), percolates(&s, &set), "{mask:b}");
        }
    }
}
