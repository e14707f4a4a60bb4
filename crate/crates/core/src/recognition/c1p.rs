//! Consecutive-ones ordering with a PQ-tree.
//!
//! Each constraint set is applied by a recursive reduction: descend to the
//! deepest node whose subtree holds the whole set, rewrite the partial
//! children below it into empty-to-full sequences, then splice those
//! sequences into a Q-node at that root.

use thiserror::Error;

/// No ordering makes every set consecutive; `set` is the first set that could not be added.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("constraint set {set} breaks the consecutive-ones property")]
pub struct C1pFailure {
    pub set: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf(usize),
    /// Children may be permuted freely.
    P(Vec<Node>),
    /// Children order is fixed up to reversal.
    Q(Vec<Node>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Label {
    Empty,
    Partial,
    Full,
}

/// Orders `0..k` so that every set in `sets` occupies consecutive positions.
///
/// Sets with fewer than two members constrain nothing and are skipped.
pub fn order_consecutive(k: usize, sets: &[Vec<usize>]) -> Result<Vec<usize>, C1pFailure> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut root = if k == 1 {
        Node::Leaf(0)
    } else {
        Node::P((0..k).map(Node::Leaf).collect())
    };
    let mut mark = vec![false; k];
    for (index, set) in sets.iter().enumerate() {
        for &e in set {
            mark[e] = true;
        }
        let total = mark.iter().filter(|&&m| m).count();
        if total >= 2 {
            root = reduce(root, &mark, total).ok_or(C1pFailure { set: index })?;
        }
        for &e in set {
            mark[e] = false;
        }
    }
    let mut order = Vec::with_capacity(k);
    frontier(&root, &mut order);
    Ok(order)
}

/// Orders the sinks `b` so that every constraint set is consecutive.
///
/// Constraint sets are given over the same ids as `b`.
pub fn order_backbone(b: &[usize], constraint_sets: &[Vec<usize>]) -> Result<Vec<usize>, C1pFailure> {
    let max = b.iter().copied().max().map_or(0, |m| m + 1);
    let mut pos = vec![usize::MAX; max];
    for (i, &v) in b.iter().enumerate() {
        pos[v] = i;
    }
    let sets: Vec<Vec<usize>> = constraint_sets
        .iter()
        .map(|s| s.iter().map(|&v| pos[v]).collect())
        .collect();
    Ok(order_consecutive(b.len(), &sets)?.into_iter().map(|i| b[i]).collect())
}

fn frontier(node: &Node, out: &mut Vec<usize>) {
    match node {
        Node::Leaf(e) => out.push(*e),
        Node::P(cs) | Node::Q(cs) => cs.iter().for_each(|c| frontier(c, out)),
    }
}

fn count(node: &Node, mark: &[bool]) -> (usize, usize) {
    match node {
        Node::Leaf(e) => (usize::from(mark[*e]), 1),
        Node::P(cs) | Node::Q(cs) => cs.iter().fold((0, 0), |(m, l), c| {
            let (cm, cl) = count(c, mark);
            (m + cm, l + cl)
        }),
    }
}

fn label(node: &Node, mark: &[bool]) -> Label {
    match count(node, mark) {
        (0, _) => Label::Empty,
        (m, l) if m == l => Label::Full,
        _ => Label::Partial,
    }
}

fn p_node(mut cs: Vec<Node>) -> Option<Node> {
    match cs.len() {
        0 => None,
        1 => cs.pop(),
        _ => Some(Node::P(cs)),
    }
}

fn q_node(mut cs: Vec<Node>) -> Node {
    match cs.len() {
        1 => cs.pop().expect("one child"),
        2 => Node::P(cs),
        _ => Node::Q(cs),
    }
}

fn reduce(node: Node, mark: &[bool], total: usize) -> Option<Node> {
    let (is_q, mut cs) = match node {
        Node::Leaf(_) => return Some(node),
        Node::P(cs) => (false, cs),
        Node::Q(cs) => (true, cs),
    };
    if let Some(k) = cs.iter().position(|c| count(c, mark).0 == total) {
        let child = std::mem::replace(&mut cs[k], Node::Leaf(usize::MAX));
        cs[k] = reduce(child, mark, total)?;
        return Some(if is_q { Node::Q(cs) } else { Node::P(cs) });
    }
    if is_q {
        root_q(cs, mark)
    } else {
        root_p(cs, mark)
    }
}

/// Splits `cs` by label, returning (empty, partial, full) in original order.
fn split(cs: Vec<Node>, mark: &[bool]) -> (Vec<Node>, Vec<Node>, Vec<Node>) {
    let mut parts = (Vec::new(), Vec::new(), Vec::new());
    for c in cs {
        match label(&c, mark) {
            Label::Empty => parts.0.push(c),
            Label::Partial => parts.1.push(c),
            Label::Full => parts.2.push(c),
        }
    }
    parts
}

/// Rewrites a partial, non-root node as a sequence ordered from its empty
/// end to its full end, to be spliced into a Q-node above.
fn partial_sequence(node: Node, mark: &[bool]) -> Option<Vec<Node>> {
    match node {
        Node::Leaf(_) => unreachable!("a leaf is never partial"),
        Node::P(cs) => {
            let (empty, mut partial, full) = split(cs, mark);
            if partial.len() > 1 {
                return None;
            }
            let mut seq = Vec::new();
            seq.extend(p_node(empty));
            if let Some(p) = partial.pop() {
                seq.extend(partial_sequence(p, mark)?);
            }
            seq.extend(p_node(full));
            Some(seq)
        }
        Node::Q(cs) => {
            let labels: Vec<Label> = cs.iter().map(|c| label(c, mark)).collect();
            let forward = q_partial_ok(&labels);
            let (cs, labels) = if forward {
                (cs, labels)
            } else {
                let rev: Vec<Label> = labels.iter().rev().copied().collect();
                if !q_partial_ok(&rev) {
                    return None;
                }
                (cs.into_iter().rev().collect(), rev)
            };
            let mut seq = Vec::new();
            for (c, l) in cs.into_iter().zip(labels) {
                match l {
                    Label::Partial => seq.extend(partial_sequence(c, mark)?),
                    _ => seq.push(c),
                }
            }
            Some(seq)
        }
    }
}

/// E* P? F* with at least one non-empty child.
fn q_partial_ok(labels: &[Label]) -> bool {
    labels
        .windows(2)
        .all(|w| w[0] <= w[1] && !(w[0] == Label::Partial && w[1] == Label::Partial))
}

fn root_p(cs: Vec<Node>, mark: &[bool]) -> Option<Node> {
    let (empty, mut partial, full) = split(cs, mark);
    if partial.len() > 2 {
        return None;
    }
    let inner = if partial.is_empty() {
        if empty.is_empty() {
            return Some(Node::P(full));
        }
        p_node(full).expect("the pertinent root has at least two full children here")
    } else {
        let second = if partial.len() == 2 { partial.pop() } else { None };
        let first = partial.pop().expect("one partial child");
        let mut seq = partial_sequence(first, mark)?;
        seq.extend(p_node(full));
        if let Some(second) = second {
            let mut tail = partial_sequence(second, mark)?;
            tail.reverse();
            seq.extend(tail);
        }
        q_node(seq)
    };
    if empty.is_empty() {
        return Some(inner);
    }
    let mut cs = empty;
    cs.push(inner);
    Some(Node::P(cs))
}

/// E* [P] F* [P] E*, where the non-empty children form one contiguous run.
fn root_q(cs: Vec<Node>, mark: &[bool]) -> Option<Node> {
    let labels: Vec<Label> = cs.iter().map(|c| label(c, mark)).collect();
    let first = labels.iter().position(|&l| l != Label::Empty)?;
    let last = labels.iter().rposition(|&l| l != Label::Empty)?;
    if labels[first + 1..last].iter().any(|&l| l != Label::Full) {
        return None;
    }
    let mut seq = Vec::with_capacity(cs.len());
    for (k, c) in cs.into_iter().enumerate() {
        if labels[k] != Label::Partial {
            seq.push(c);
        } else if k == first {
            seq.extend(partial_sequence(c, mark)?);
        } else {
            let mut tail = partial_sequence(c, mark)?;
            tail.reverse();
            seq.extend(tail);
        }
    }
    Some(q_node(seq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consecutive(order: &[usize], set: &[usize]) -> bool {
        let pos: Vec<usize> = set.iter().map(|e| order.iter().position(|o| o == e).unwrap()).collect();
        let (lo, hi) = (pos.iter().min().unwrap(), pos.iter().max().unwrap());
        hi - lo + 1 == set.len()
    }

    fn check(k: usize, sets: &[Vec<usize>]) -> Vec<usize> {
        let order = order_consecutive(k, sets).expect("ordering exists");
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..k).collect::<Vec<_>>());
        for s in sets.iter().filter(|s| !s.is_empty()) {
            assert!(consecutive(&order, s), "{s:?} not consecutive in {order:?}");
        }
        order
    }

    #[test]
    fn path_constraints() {
        let order = check(3, &[vec![0, 1], vec![1, 2]]);
        assert!(order == vec![0, 1, 2] || order == vec![2, 1, 0]);
    }

    #[test]
    fn triangle_fails() {
        assert_eq!(
            order_consecutive(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]),
            Err(C1pFailure { set: 2 })
        );
    }

    #[test]
    fn three_sets_through_one_center_fail() {
        // c = 0 with three distinct partners.
        assert!(order_consecutive(4, &[vec![0, 1], vec![0, 2], vec![0, 3], vec![1]]).is_err());
    }

    #[test]
    fn nested_and_overlapping() {
        check(6, &[vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![1, 2], vec![4, 5]]);
        check(5, &[vec![0, 2, 4], vec![2, 4], vec![1, 3], vec![0, 1, 2, 4]]);
        check(4, &[vec![0, 1, 2, 3], vec![1, 2]]);
    }

    #[test]
    fn backbone_ids_are_mapped() {
        let order = order_backbone(&[7, 3, 5], &[vec![3, 5], vec![7, 5]]).unwrap();
        assert_eq!(order[1], 5);
    }
}
