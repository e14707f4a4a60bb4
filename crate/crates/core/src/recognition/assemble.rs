//! Backbone and leaf assembly, and reinsertion of reduced vertices.

use std::collections::HashSet;

use crate::caterpillar::Caterpillar;

use super::containment::ContainmentDag;
use super::pendant::PendantLog;
use super::twins::TwinLog;

/// A node of L with no arc into the backbone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafUnattachable(pub String);

/// Sinks of `d` (the backbone candidates) and the remaining nodes, both ascending.
pub fn backbone_and_leaves(d: &ContainmentDag) -> (Vec<usize>, Vec<usize>) {
    (0..d.node_count()).partition(|&v| d.is_sink(v))
}

/// Hangs every node of `leaves` on the first backbone vertex it has an arc to.
pub fn assemble_caterpillar(
    ordered_b: &[usize],
    leaves: &[usize],
    d: &ContainmentDag,
) -> Result<Caterpillar, LeafUnattachable> {
    let mut t = Caterpillar::path(ordered_b.iter().map(|&b| d.id(b)));
    for &l in leaves {
        let k = ordered_b
            .iter()
            .position(|&b| d.has_arc(l, b))
            .ok_or_else(|| LeafUnattachable(d.id(l).to_owned()))?;
        t.leaves[k].push(d.id(l).to_owned());
    }
    Ok(t)
}

/// One round of reductions: twin removal followed by pendant-only removal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Round {
    pub twins: TwinLog,
    pub pendants: PendantLog,
}

/// Undoes the rounds in reverse order, turning a representation of the
/// reduced graph into one of the original graph.
///
/// A pendant-only vertex becomes a leaf of the first backbone vertex, except
/// that it goes to the end of the backbone when the caterpillar is empty or
/// when it stands in for deleted twins: those twins become its leaves and
/// must not end up as siblings of it.
pub fn reinsert(t2: &Caterpillar, rounds: &[Round]) -> Caterpillar {
    let representatives: HashSet<&str> = rounds
        .iter()
        .flat_map(|r| r.twins.deleted.iter().map(|(_, rep)| rep.as_str()))
        .collect();
    let mut t = t2.clone();
    for round in rounds.iter().rev() {
        for x in round.pendants.removed.iter().rev() {
            if t.is_empty() || representatives.contains(x.as_str()) {
                t.backbone.push(x.clone());
                t.leaves.push(Vec::new());
            } else {
                t.leaves[0].push(x.clone());
            }
        }
        for (twin, rep) in round.twins.deleted.iter().rev() {
            let anchor = match t.backbone_position(rep) {
                Some(k) => k,
                None => {
                    let b = t.anchor_of(rep).expect("representative is in the caterpillar");
                    t.backbone_position(b).expect("anchor is on the backbone")
                }
            };
            t.leaves[anchor].push(twin.clone());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_attachment() {
        let d = ContainmentDag::from_arcs(ids(&["x1", "x2"]), [(0, 1)]);
        let (b, l) = backbone_and_leaves(&d);
        assert_eq!((b.clone(), l.clone()), (vec![1], vec![0]));
        let t = assemble_caterpillar(&b, &l, &d).unwrap();
        assert_eq!(t.backbone, ids(&["x2"]));
        assert_eq!(t.leaves, vec![ids(&["x1"])]);
    }

    #[test]
    fn antichain_is_all_backbone() {
        let d = ContainmentDag::from_arcs(ids(&["x1", "x2"]), []);
        assert_eq!(backbone_and_leaves(&d), (vec![0, 1], vec![]));
        let t = assemble_caterpillar(&[1, 0], &[], &d).unwrap();
        assert_eq!(t, Caterpillar::path(["x2", "x1"]));
    }

    #[test]
    fn first_eligible_sink_wins() {
        let d = ContainmentDag::from_arcs(ids(&["b1", "b2", "b3", "b4", "l"]), [(4, 1), (4, 3)]);
        let t = assemble_caterpillar(&[0, 1, 2, 3], &[4], &d).unwrap();
        assert_eq!(t.leaves[1], ids(&["l"]));
    }

    #[test]
    fn leaf_without_arc_into_backbone_fails() {
        // Not transitive: l -> m -> b, but no arc l -> b.
        let d = ContainmentDag::from_arcs(ids(&["b", "m", "l"]), [(1, 0), (2, 1)]);
        assert_eq!(
            assemble_caterpillar(&[0], &[1, 2], &d),
            Err(LeafUnattachable("l".into()))
        );
    }

    #[test]
    fn empty_reduced_graph_takes_the_first_pendant_as_backbone() {
        let round = Round {
            pendants: PendantLog {
                removed: ids(&["x1"]),
                dropped_y: vec![],
            },
            ..Default::default()
        };
        let t = reinsert(&Caterpillar::default(), &[round]);
        assert_eq!(t, Caterpillar::path(["x1"]));
    }

    #[test]
    fn twins_follow_their_representative() {
        let mut t2 = Caterpillar::path(["x1", "b"]);
        t2.leaves[1].push("r".into());
        let round = Round {
            twins: TwinLog {
                deleted: vec![("x2".into(), "x1".into()), ("r2".into(), "r".into())],
                restricted: vec![],
            },
            ..Default::default()
        };
        let t = reinsert(&t2, &[round]);
        assert_eq!(t.leaves[0], ids(&["x2"]));
        assert_eq!(t.leaves[1], ids(&["r", "r2"]));
    }

    #[test]
    fn pendant_representative_joins_the_backbone() {
        let round = Round {
            twins: TwinLog {
                deleted: vec![("p2".into(), "p".into())],
                restricted: vec![],
            },
            pendants: PendantLog {
                removed: ids(&["q", "p"]),
                dropped_y: vec![],
            },
        };
        let t = reinsert(&Caterpillar::path(["b"]), &[round]);
        assert_eq!(t.backbone, ids(&["b", "p"]));
        assert_eq!(t.leaves, vec![ids(&["q"]), ids(&["p2"])]);
    }
}
