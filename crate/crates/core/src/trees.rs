//! Binary increasing trees and planar full binary trees.
//!
//! Both families share one arena representation, [`LabeledTree`], with a
//! [`TreeRole`] flag:
//!
//! * `Increasing`: `n` labelled nodes, labels `1..=n` increasing along every
//!   root-to-leaf path, each child explicitly left or right.
//! * `PlanarBinary`: unlabelled full binary trees; leaves are explicit nodes
//!   and the size is the number of internal nodes.
//!
//! `phi` reads an increasing tree by collapsing leaves into their parents,
//! which is the same as its in-order traversal. `psi` first labels the
//! internal nodes of a planar tree in pre-order and then reads them the same
//! way.
//!
//! Text format: an increasing node is `(label L:child R:child)` with absent
//! children omitted, e.g. `(1 L:(3 R:(4)) R:(2))`; a planar internal node is
//! `(L:child R:child)` and a planar leaf is `*`.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::perm::{standardize, PatternMatcher, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeRole {
    Increasing,
    PlanarBinary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub label: Option<u32>,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

impl TreeNode {
    fn is_leaf(&self) -> bool {
        self.left.is_none() && self.right.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    role: TreeRole,
    nodes: Vec<TreeNode>,
    root: usize,
}

impl LabeledTree {
    /// The planar tree with no internal node.
    pub fn leaf() -> Self {
        LabeledTree {
            role: TreeRole::PlanarBinary,
            nodes: vec![TreeNode { label: None, left: None, right: None }],
            root: 0,
        }
    }

    /// Planar tree whose root has the two given subtrees.
    pub fn join(left: &LabeledTree, right: &LabeledTree) -> Result<Self> {
        if left.role != TreeRole::PlanarBinary || right.role != TreeRole::PlanarBinary {
            return invalid("join expects planar binary trees");
        }
        let mut b = Builder::new(TreeRole::PlanarBinary);
        let root = b.push(None);
        let l = b.graft(left, left.root);
        let r = b.graft(right, right.root);
        b.nodes[root].left = Some(l);
        b.nodes[root].right = Some(r);
        Ok(b.finish(root))
    }

    /// Increasing tree from raw parts; validated.
    pub fn increasing(nodes: Vec<TreeNode>, root: usize) -> Result<Self> {
        let t = LabeledTree { role: TreeRole::Increasing, nodes, root };
        t.validate()?;
        Ok(t)
    }

    pub fn role(&self) -> TreeRole {
        self.role
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Node count for increasing trees, internal-node count for planar trees.
    pub fn size(&self) -> usize {
        match self.role {
            TreeRole::Increasing => self.nodes.len(),
            TreeRole::PlanarBinary => self.nodes.iter().filter(|n| !n.is_leaf()).count(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.root >= self.nodes.len() {
            return invalid("root index out of range");
        }
        // Every node reachable exactly once from the root.
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            if i >= self.nodes.len() || std::mem::replace(&mut seen[i], true) {
                return invalid("node arena is not a tree");
            }
            stack.extend(self.nodes[i].left);
            stack.extend(self.nodes[i].right);
        }
        if seen.iter().any(|s| !s) {
            return invalid("unreachable nodes in arena");
        }
        match self.role {
            TreeRole::Increasing => {
                let n = self.nodes.len();
                let mut labels: Vec<u32> = Vec::with_capacity(n);
                for node in &self.nodes {
                    let Some(l) = node.label else {
                        return invalid("increasing tree node without label");
                    };
                    labels.push(l);
                    for c in [node.left, node.right].into_iter().flatten() {
                        match self.nodes[c].label {
                            Some(cl) if cl > l => {}
                            _ => return invalid("labels must increase away from the root"),
                        }
                    }
                }
                labels.sort_unstable();
                if labels.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
                    return invalid("labels must be exactly 1..=n");
                }
            }
            TreeRole::PlanarBinary => {
                for node in &self.nodes {
                    if node.left.is_some() != node.right.is_some() {
                        return invalid("planar binary node with exactly one child");
                    }
                    if node.label.is_some() {
                        return invalid("planar binary trees are unlabelled");
                    }
                }
            }
        }
        Ok(())
    }

    fn in_order(&self, mut visit: impl FnMut(usize)) {
        let mut stack = Vec::new();
        let mut cur = Some(self.root);
        loop {
            while let Some(i) = cur {
                stack.push(i);
                cur = self.nodes[i].left;
            }
            let Some(i) = stack.pop() else { break };
            visit(i);
            cur = self.nodes[i].right;
        }
    }

    fn pre_order(&self, mut visit: impl FnMut(usize)) {
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            visit(i);
            stack.extend(self.nodes[i].right);
            stack.extend(self.nodes[i].left);
        }
    }

    fn find_label(&self, label: u32) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == Some(label))
    }

    fn count_below(&self, i: usize) -> usize {
        let mut count = 0;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            count += 1;
            stack.extend(self.nodes[j].left);
            stack.extend(self.nodes[j].right);
        }
        count
    }

    /// Number of nodes in the descendant subtree of `label`, itself included.
    pub fn descendant_count(&self, label: u32) -> Result<usize> {
        self.require(TreeRole::Increasing)?;
        match self.find_label(label) {
            Some(i) => Ok(self.count_below(i)),
            None => invalid(format!("label {label} not in tree")),
        }
    }

    /// Copy of the subtree rooted at arena index `i`.
    pub fn subtree_at_node(&self, i: usize) -> LabeledTree {
        let mut b = Builder::new(self.role);
        let root = b.graft(self, i);
        b.finish(root)
    }

    /// Internal-node arena indices of a planar tree.
    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !self.nodes[i].is_leaf())
    }

    fn require(&self, role: TreeRole) -> Result<()> {
        if self.role == role {
            Ok(())
        } else {
            invalid(format!("expected a {role:?} tree"))
        }
    }
}

struct Builder {
    role: TreeRole,
    nodes: Vec<TreeNode>,
}

impl Builder {
    fn new(role: TreeRole) -> Self {
        Builder { role, nodes: Vec::new() }
    }

    fn push(&mut self, label: Option<u32>) -> usize {
        self.nodes.push(TreeNode { label, left: None, right: None });
        self.nodes.len() - 1
    }

    fn graft(&mut self, src: &LabeledTree, i: usize) -> usize {
        let me = self.push(src.nodes[i].label);
        if let Some(l) = src.nodes[i].left {
            let c = self.graft(src, l);
            self.nodes[me].left = Some(c);
        }
        if let Some(r) = src.nodes[i].right {
            let c = self.graft(src, r);
            self.nodes[me].right = Some(c);
        }
        me
    }

    fn finish(self, root: usize) -> LabeledTree {
        LabeledTree { role: self.role, nodes: self.nodes, root }
    }
}

/// Leaf-collapse reading of an increasing tree.
pub fn phi(t: &LabeledTree) -> Result<Permutation> {
    t.require(TreeRole::Increasing)?;
    t.validate()?;
    let mut out = Vec::with_capacity(t.nodes.len());
    t.in_order(|i| out.push(t.nodes[i].label.expect("validated")));
    Permutation::new(out)
}

/// Increasing tree of a non-empty permutation: the minimum is the root, the
/// entries before it form the left subtree and those after it the right one.
pub fn phi_inverse(p: &Permutation) -> Result<LabeledTree> {
    if p.is_empty() {
        return invalid("phi_inverse needs a non-empty permutation");
    }
    // Cartesian tree by the usual right-spine stack.
    let e = p.entries();
    let mut nodes: Vec<TreeNode> = e.iter().map(|&v| TreeNode { label: Some(v), left: None, right: None }).collect();
    let mut spine: Vec<usize> = Vec::new();
    for i in 0..e.len() {
        let mut last = None;
        while let Some(&top) = spine.last() {
            if e[top] > e[i] {
                last = spine.pop();
            } else {
                break;
            }
        }
        nodes[i].left = last;
        if let Some(&top) = spine.last() {
            nodes[top].right = Some(i);
        }
        spine.push(i);
    }
    let root = spine[0];
    Ok(LabeledTree { role: TreeRole::Increasing, nodes, root })
}

/// Descendant subtree of the node carrying `label`, relabelled onto `1..=size`.
pub fn subtree_at(t: &LabeledTree, label: u32) -> Result<LabeledTree> {
    t.require(TreeRole::Increasing)?;
    let Some(i) = t.find_label(label) else {
        return invalid(format!("label {label} not in tree"));
    };
    let mut sub = t.subtree_at_node(i);
    let labels: Vec<u32> = sub.nodes.iter().map(|n| n.label.expect("increasing")).collect();
    let ranks = standardize(&labels)?;
    for (node, &r) in sub.nodes.iter_mut().zip(ranks.entries()) {
        node.label = Some(r);
    }
    Ok(sub)
}

/// Pre-order labelling of the internal nodes followed by the in-order reading.
pub fn psi(t: &LabeledTree) -> Result<Permutation> {
    t.require(TreeRole::PlanarBinary)?;
    t.validate()?;
    if t.size() == 0 {
        return invalid("psi needs at least one internal node");
    }
    let mut label = vec![0u32; t.nodes.len()];
    let mut next = 0;
    t.pre_order(|i| {
        if !t.nodes[i].is_leaf() {
            next += 1;
            label[i] = next;
        }
    });
    let mut out = Vec::with_capacity(t.size());
    t.in_order(|i| {
        if !t.nodes[i].is_leaf() {
            out.push(label[i]);
        }
    });
    Permutation::new(out)
}

/// Planar tree of a 312-avoider. Such a permutation splits as `α 1 β` with
/// every entry of `α` below every entry of `β`; `α` and `β` give the subtrees.
pub fn psi_inverse(p: &Permutation) -> Result<LabeledTree> {
    if p.is_empty() {
        return invalid("psi_inverse needs a non-empty permutation");
    }
    if PatternMatcher::new(&"3 1 2".parse()?)?.matches(p.entries()) {
        return invalid(format!("{p} contains 312"));
    }
    fn build(b: &mut Builder, word: &[u32]) -> usize {
        let me = b.push(None);
        if let Some((m, _)) = word.iter().enumerate().min_by_key(|(_, &v)| v) {
            let l = build(b, &word[..m]);
            let r = build(b, &word[m + 1..]);
            b.nodes[me].left = Some(l);
            b.nodes[me].right = Some(r);
        }
        me
    }
    let mut b = Builder::new(TreeRole::PlanarBinary);
    let root = build(&mut b, p.entries());
    Ok(b.finish(root))
}

/// Every internal node has at least one leaf child.
pub fn is_caterpillar(t: &LabeledTree) -> Result<bool> {
    t.require(TreeRole::PlanarBinary)?;
    Ok(t.internal_nodes().all(|i| {
        let n = &t.nodes[i];
        [n.left, n.right].into_iter().flatten().any(|c| t.nodes[c].is_leaf())
    }))
}

/// With the leaves removed, every remaining node has 0 or 2 children.
pub fn is_strictly_binary(t: &LabeledTree) -> Result<bool> {
    t.require(TreeRole::PlanarBinary)?;
    if t.size().is_multiple_of(2) {
        return invalid(format!("strictly binary shape needs odd size, got {}", t.size()));
    }
    Ok(t.internal_nodes().all(|i| {
        let n = &t.nodes[i];
        let inner = [n.left, n.right].into_iter().flatten().filter(|&c| !t.nodes[c].is_leaf()).count();
        inner != 1
    }))
}

/// Largest internal-node count over descendant subtrees accepted by `shape_test`; 0 if none.
pub fn max_subtree_size(t: &LabeledTree, shape_test: impl Fn(&LabeledTree) -> bool) -> Result<usize> {
    t.require(TreeRole::PlanarBinary)?;
    Ok(t.internal_nodes().map(|i| t.subtree_at_node(i)).filter(|s| shape_test(s)).map(|s| s.size()).max().unwrap_or(0))
}

/// All planar full binary trees with `n` internal nodes.
pub fn all_planar_trees(n: usize) -> Vec<LabeledTree> {
    let mut by_size: Vec<Vec<LabeledTree>> = vec![vec![LabeledTree::leaf()]];
    for size in 1..=n {
        let mut here = Vec::new();
        for a in 0..size {
            for l in &by_size[a] {
                for r in &by_size[size - 1 - a] {
                    here.push(LabeledTree::join(l, r).expect("planar"));
                }
            }
        }
        by_size.push(here);
    }
    by_size.swap_remove(n)
}

/// All binary increasing trees with `n ≥ 1` nodes, built by hanging node `n`
/// on each free child slot of every tree with `n - 1` nodes.
pub fn all_increasing_trees(n: usize) -> Vec<LabeledTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![LabeledTree {
        role: TreeRole::Increasing,
        nodes: vec![TreeNode { label: Some(1), left: None, right: None }],
        root: 0,
    }];
    for label in 2..=n as u32 {
        let mut next = Vec::with_capacity(level.len() * label as usize);
        for t in &level {
            for i in 0..t.nodes.len() {
                for side in [false, true] {
                    let slot = if side { t.nodes[i].right } else { t.nodes[i].left };
                    if slot.is_some() {
                        continue;
                    }
                    let mut u = t.clone();
                    u.nodes.push(TreeNode { label: Some(label), left: None, right: None });
                    let c = Some(u.nodes.len() - 1);
                    if side {
                        u.nodes[i].right = c;
                    } else {
                        u.nodes[i].left = c;
                    }
                    next.push(u);
                }
            }
        }
        level = next;
    }
    level
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &LabeledTree, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let n = &t.nodes[i];
            match t.role {
                TreeRole::PlanarBinary if n.is_leaf() => f.write_str("*"),
                TreeRole::PlanarBinary => {
                    f.write_str("(L:")?;
                    go(t, n.left.expect("full"), f)?;
                    f.write_str(" R:")?;
                    go(t, n.right.expect("full"), f)?;
                    f.write_str(")")
                }
                TreeRole::Increasing => {
                    write!(f, "({}", n.label.unwrap_or(0))?;
                    if let Some(l) = n.left {
                        f.write_str(" L:")?;
                        go(t, l, f)?;
                    }
                    if let Some(r) = n.right {
                        f.write_str(" R:")?;
                        go(t, r, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        go(self, self.root, f)
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    /// The role is inferred: a tree containing `*` leaves is planar binary.
    fn from_str(s: &str) -> Result<Self> {
        let role = if s.contains('*') { TreeRole::PlanarBinary } else { TreeRole::Increasing };
        let mut parser = Parser { src: s.as_bytes(), pos: 0, b: Builder::new(role) };
        let root = parser.node()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return invalid(format!("trailing input at byte {}", parser.pos));
        }
        let t = parser.b.finish(root);
        t.validate()?;
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    b: Builder,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            invalid(format!("expected {s:?} at byte {}", self.pos))
        }
    }

    fn node(&mut self) -> Result<usize> {
        if self.eat("*") {
            return Ok(self.b.push(None));
        }
        self.expect("(")?;
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let label = if self.pos > start {
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            Some(text.parse::<u32>().map_err(|e| Error::InvalidInput(e.to_string()))?)
        } else {
            None
        };
        let me = self.b.push(label);
        if self.eat("L:") {
            let c = self.node()?;
            self.b.nodes[me].left = Some(c);
        }
        if self.eat("R:") {
            let c = self.node()?;
            self.b.nodes[me].right = Some(c);
        }
        self.expect(")")?;
        Ok(me)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, enumerate_class, sub_permutation};
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    // Literal iterated leaf collapse, independent of the in-order shortcut.
    fn collapse(t: &LabeledTree) -> Vec<u32> {
        let mut labels: Vec<Vec<u32>> = t.nodes.iter().map(|n| vec![n.label.unwrap()]).collect();
        let mut left: Vec<Option<usize>> = t.nodes.iter().map(|n| n.left).collect();
        let mut right: Vec<Option<usize>> = t.nodes.iter().map(|n| n.right).collect();
        while left[t.root].is_some() || right[t.root].is_some() {
            let is_leaf: Vec<bool> = (0..labels.len()).map(|i| left[i].is_none() && right[i].is_none()).collect();
            for i in 0..labels.len() {
                if let Some(c) = left[i].filter(|&c| is_leaf[c]) {
                    let mut merged = labels[c].clone();
                    merged.extend(&labels[i]);
                    labels[i] = merged;
                    left[i] = None;
                }
                if let Some(c) = right[i].filter(|&c| is_leaf[c]) {
                    let tail = labels[c].clone();
                    labels[i].extend(tail);
                    right[i] = None;
                }
            }
        }
        labels[t.root].clone()
    }

    #[test]
    fn figure_one_tree() {
        let t = phi_inverse(&p("4 5 3 1 2 6 8 7")).unwrap();
        assert_eq!(t.to_string(), "(1 L:(3 L:(4 R:(5))) R:(2 R:(6 R:(7 L:(8)))))");
        assert_eq!(phi(&t).unwrap(), p("4 5 3 1 2 6 8 7"));
        assert_eq!(collapse(&t), vec![4, 5, 3, 1, 2, 6, 8, 7]);
        let sub = subtree_at(&t, 2).unwrap();
        assert_eq!(phi(&sub).unwrap(), p("1 2 4 3"));
        assert_eq!(subtree_at(&t, 1).unwrap().to_string(), t.to_string());
        assert!(subtree_at(&t, 9).is_err());
    }

    #[test]
    fn size_two_trees() {
        let left: LabeledTree = "(1 L:(2))".parse().unwrap();
        let right: LabeledTree = "(1 R:(2))".parse().unwrap();
        assert_eq!(phi(&left).unwrap(), p("2 1"));
        assert_eq!(phi(&right).unwrap(), p("1 2"));
        assert_eq!(phi(&"(1)".parse().unwrap()).unwrap(), p("1"));
    }

    #[test]
    fn collapse_matches_in_order() {
        for n in 1..=6 {
            for t in all_increasing_trees(n) {
                assert_eq!(collapse(&t), phi(&t).unwrap().into_entries());
            }
        }
    }

    #[test]
    fn phi_is_a_bijection() {
        for n in 1..=7 {
            let trees = all_increasing_trees(n);
            let images: HashSet<Permutation> = trees.iter().map(|t| phi(t).unwrap()).collect();
            assert_eq!(images.len(), trees.len());
            assert_eq!(images.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn descendants_match_sub_permutation_sizes() {
        for host in all_permutations(6) {
            let t = phi_inverse(&host).unwrap();
            for k in 1..=6 {
                let sp = sub_permutation(&host, k).unwrap();
                assert_eq!(t.descendant_count(k).unwrap(), sp.len());
            }
        }
    }

    #[test]
    fn psi_examples() {
        let one = LabeledTree::join(&LabeledTree::leaf(), &LabeledTree::leaf()).unwrap();
        assert_eq!(psi(&one).unwrap(), p("1"));
        assert_eq!(psi_inverse(&p("1")).unwrap(), one);
        assert!(psi(&LabeledTree::leaf()).is_err());
        assert!(psi_inverse(&p("3 1 2")).is_err());

        let pat = p("3 1 2");
        let images: HashSet<Permutation> = all_planar_trees(4).iter().map(|t| psi(t).unwrap()).collect();
        let av: HashSet<Permutation> = enumerate_class(4, Some(&pat)).unwrap().collect();
        assert_eq!(images.len(), 14);
        assert_eq!(images, av);
    }

    #[test]
    fn caterpillar_counts() {
        let one = LabeledTree::join(&LabeledTree::leaf(), &LabeledTree::leaf()).unwrap();
        assert!(is_caterpillar(&one).unwrap());
        let complete = LabeledTree::join(&one, &one).unwrap();
        assert!(!is_caterpillar(&complete).unwrap());
        for j in 1..=7 {
            let count = all_planar_trees(j).iter().filter(|t| is_caterpillar(t).unwrap()).count();
            assert_eq!(count, 1 << (j - 1));
        }
    }

    #[test]
    fn strictly_binary_counts() {
        let catalan = [1, 1, 2, 5, 14];
        for (m, &expected) in catalan.iter().enumerate() {
            let count = all_planar_trees(2 * m + 1).iter().filter(|t| is_strictly_binary(t).unwrap()).count();
            assert_eq!(count, expected);
        }
        let two = psi_inverse(&p("2 1")).unwrap();
        assert!(is_strictly_binary(&two).is_err());
    }

    #[test]
    fn max_subtree_of_a_caterpillar_is_itself() {
        let cat = psi_inverse(&p("1 2 3 4 5")).unwrap();
        assert!(is_caterpillar(&cat).unwrap());
        assert_eq!(max_subtree_size(&cat, |s| is_caterpillar(s).unwrap()).unwrap(), 5);
    }

    #[test]
    fn text_round_trip_and_errors() {
        for t in all_planar_trees(4).into_iter().chain(all_increasing_trees(4)) {
            let text = t.to_string();
            let back: LabeledTree = text.parse().unwrap();
            assert_eq!(back.to_string(), text);
            assert_eq!(back, t.subtree_at_node(t.root()));
        }
        assert!("(2 L:(1))".parse::<LabeledTree>().is_err());
        assert!("(1 L:(2)".parse::<LabeledTree>().is_err());
        assert!("(L:* )".parse::<LabeledTree>().is_err());
        assert!("(1 L:(3))".parse::<LabeledTree>().is_err());
    }
}
