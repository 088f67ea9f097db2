//! Generalized Dyck paths and `a`-ary trees.

use serde::{Deserialize, Serialize};

use super::string::{Step, Walk};
use crate::error::{Error, Result};
use crate::heap::PieceLength;

/// Up-step `(1, a-1)` or down-step `(1, -1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathStep {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub a: PieceLength,
    pub steps: Vec<PathStep>,
}

impl LatticePath {
    /// Heights of all vertices, starting with 0.
    pub fn heights(&self) -> Vec<i64> {
        let up = self.a.i() - 1;
        let mut h = vec![0];
        let mut y = 0;
        for s in &self.steps {
            y += match s {
                PathStep::Up => up,
                PathStep::Down => -1,
            };
            h.push(y);
        }
        h
    }

    /// On or above the axis everywhere and back on it at the end.
    pub fn is_generalized_dyck(&self) -> bool {
        let h = self.heights();
        h.iter().all(|&y| y >= 0) && h.last() == Some(&0)
    }

    pub fn up_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == PathStep::Up).count()
    }
}

/// Planar rooted tree whose nodes all have exactly `a` ordered children.
/// Serialized as nested arrays with `null` leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AryTree {
    Leaf,
    Node(Vec<AryTree>),
}

impl AryTree {
    pub fn nodes(&self) -> usize {
        match self {
            AryTree::Leaf => 0,
            AryTree::Node(children) => 1 + children.iter().map(AryTree::nodes).sum::<usize>(),
        }
    }

    pub fn validate(&self, a: PieceLength) -> Result<()> {
        match self {
            AryTree::Leaf => Ok(()),
            AryTree::Node(children) => {
                if children.len() != a.get() as usize {
                    return Err(Error::InvalidTree(format!(
                        "node with {} children, expected {}",
                        children.len(),
                        a
                    )));
                }
                children.iter().try_for_each(|c| c.validate(a))
            }
        }
    }
}

pub fn walk_to_path(w: &Walk) -> LatticePath {
    LatticePath {
        a: w.a,
        steps: w
            .steps
            .iter()
            .map(|s| match s {
                Step::Right => PathStep::Up,
                Step::Left => PathStep::Down,
            })
            .collect(),
    }
}

pub fn path_to_walk(p: &LatticePath) -> Walk {
    Walk::new(
        p.a,
        0,
        p.steps
            .iter()
            .map(|s| match s {
                PathStep::Up => Step::Right,
                PathStep::Down => Step::Left,
            })
            .collect(),
    )
}

/// Strips the leading up-step and cuts the rest into `a` translated Dyck
/// paths joined by single down-steps; those become the children, leftmost
/// (highest) first.
pub fn dyck_to_tree(path: &LatticePath) -> Result<AryTree> {
    if !path.is_generalized_dyck() {
        return Err(Error::NotDyckPath(format!("{:?}", path.steps)));
    }
    let h = path.heights();
    Ok(subtree(&path.steps, &h, 0, path.steps.len(), path.a.i()))
}

// Tree of the Dyck segment steps[lo..hi], which starts and ends at height h[lo].
fn subtree(steps: &[PathStep], h: &[i64], lo: usize, hi: usize, a: i64) -> AryTree {
    if lo == hi {
        return AryTree::Leaf;
    }
    let base = h[lo];
    let mut children = Vec::with_capacity(a as usize);
    let mut pos = lo + 1;
    for k in (1..a).rev() {
        // child segment ends at the first down-step from base+k to base+k-1
        let mut end = pos;
        while !(steps[end] == PathStep::Down && h[end] == base + k) {
            end += 1;
        }
        children.push(subtree(steps, h, pos, end, a));
        pos = end + 1;
    }
    children.push(subtree(steps, h, pos, hi, a));
    AryTree::Node(children)
}

pub fn tree_to_dyck(tree: &AryTree, a: PieceLength) -> Result<LatticePath> {
    tree.validate(a)?;
    fn emit(t: &AryTree, out: &mut Vec<PathStep>) {
        if let AryTree::Node(children) = t {
            out.push(PathStep::Up);
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(PathStep::Down);
                }
                emit(c, out);
            }
        }
    }
    let mut steps = Vec::new();
    emit(tree, &mut steps);
    Ok(LatticePath { a, steps })
}

/// Every `a`-ary tree with `m` nodes, built directly from the recursive
/// definition (independent of the path bijection).
pub fn all_trees(a: PieceLength, m: usize) -> Vec<AryTree> {
    let k = a.get() as usize;
    let mut by_size: Vec<Vec<AryTree>> = vec![vec![AryTree::Leaf]];
    for n in 1..=m {
        let mut out = Vec::new();
        // distribute n-1 nodes over k ordered children
        fn fill(
            slot: usize,
            left: usize,
            k: usize,
            by_size: &[Vec<AryTree>],
            acc: &mut Vec<AryTree>,
            out: &mut Vec<AryTree>,
        ) {
            if slot == k {
                if left == 0 {
                    out.push(AryTree::Node(acc.clone()));
                }
                return;
            }
            for s in 0..=left {
                for t in &by_size[s] {
                    acc.push(t.clone());
                    fill(slot + 1, left - s, k, by_size, acc, out);
                    acc.pop();
                }
            }
        }
        fill(0, n - 1, k, &by_size, &mut Vec::new(), &mut out);
        by_size.push(out);
    }
    by_size.swap_remove(m)
}

/// Every generalized Dyck path with `m` up-steps.
pub fn all_dyck_paths(a: PieceLength, m: usize) -> Vec<LatticePath> {
    super::string::positive_strings(a, m)
        .iter()
        .map(|s| walk_to_path(&super::string::string_to_walk(s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijections::string::{string_to_walk, BitString};
    use std::collections::HashSet;

    fn a(n: u32) -> PieceLength {
        PieceLength::new(n).unwrap()
    }

    fn path(n: u32, s: &str) -> LatticePath {
        walk_to_path(&string_to_walk(&BitString::parse(a(n), s).unwrap()))
    }

    #[test]
    fn up_down_ends_on_axis() {
        let p = path(2, "10");
        assert_eq!(p.steps, vec![PathStep::Up, PathStep::Down]);
        assert_eq!(p.heights(), vec![0, 1, 0]);
        assert!(p.is_generalized_dyck());
    }

    #[test]
    fn empty_path_is_leaf() {
        let p = LatticePath { a: a(3), steps: vec![] };
        assert_eq!(dyck_to_tree(&p).unwrap(), AryTree::Leaf);
    }

    #[test]
    fn binary_trees_of_two_nodes() {
        use AryTree::*;
        let t1 = dyck_to_tree(&path(2, "1010")).unwrap();
        let t2 = dyck_to_tree(&path(2, "1100")).unwrap();
        assert_eq!(t1, Node(vec![Leaf, Node(vec![Leaf, Leaf])]));
        assert_eq!(t2, Node(vec![Node(vec![Leaf, Leaf]), Leaf]));
    }

    #[test]
    fn ternary_two_nodes_both_sides() {
        let trees: HashSet<_> = all_trees(a(3), 2).into_iter().collect();
        assert_eq!(trees.len(), 3);
        let from_paths: HashSet<_> = all_dyck_paths(a(3), 2)
            .iter()
            .map(|p| dyck_to_tree(p).unwrap())
            .collect();
        assert_eq!(from_paths, trees);
    }

    #[test]
    fn rejects_non_dyck() {
        assert!(dyck_to_tree(&path(2, "0110")).is_err());
        assert!(dyck_to_tree(&path(3, "10")).is_err());
    }

    #[test]
    fn tree_validation() {
        let bad = AryTree::Node(vec![AryTree::Leaf, AryTree::Leaf]);
        assert!(tree_to_dyck(&bad, a(3)).is_err());
    }

    #[test]
    fn tree_json_shape() {
        let t = AryTree::Node(vec![AryTree::Leaf, AryTree::Node(vec![AryTree::Leaf, AryTree::Leaf])]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[null,[null,null]]");
        let back: AryTree = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
