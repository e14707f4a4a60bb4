//! Subproblem keys SP(i, j, c1, c2, c3).

use std::fmt;

use crate::color::Color;

/// Segment `b_i..b_j` painted `c2`, with `b_{i-1} = c1` and `b_{j+1} = c3`.
///
/// Indices are 1-based. `c1` is `None` exactly when `i = 1`, and `c3` is
/// `None` exactly when `j = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubproblemKey {
    pub i: usize,
    pub j: usize,
    pub c1: Option<Color>,
    pub c2: Color,
    pub c3: Option<Color>,
}

impl SubproblemKey {
    /// Whether this key is well-formed for a backbone of length `n`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        1 <= self.i
            && self.i <= self.j
            && self.j <= n
            && (self.i == 1) == self.c1.is_none()
            && (self.j == n) == self.c3.is_none()
            && self.c1 != Some(self.c2)
            && self.c3 != Some(self.c2)
    }

    /// Color patterns for a segment, in lexicographic order with `*` first.
    pub fn patterns(i: usize, j: usize, n: usize) -> impl Iterator<Item = SubproblemKey> {
        let ends = |star: bool| -> Vec<Option<Color>> {
            if star {
                vec![None]
            } else {
                Color::ALL.iter().copied().map(Some).collect()
            }
        };
        let (left, right) = (ends(i == 1), ends(j == n));
        left.into_iter().flat_map(move |c1| {
            let right = right.clone();
            Color::ALL
                .into_iter()
                .filter(move |&c2| c1 != Some(c2))
                .flat_map(move |c2| {
                    right
                        .clone()
                        .into_iter()
                        .filter(move |&c3| c3 != Some(c2))
                        .map(move |c3| SubproblemKey { i, j, c1, c2, c3 })
                })
        })
    }

    /// Every key for a backbone of length `n`: i, then j, then colors.
    pub fn all(n: usize) -> impl Iterator<Item = SubproblemKey> {
        (1..=n).flat_map(move |i| (i..=n).flat_map(move |j| Self::patterns(i, j, n)))
    }
}

impl fmt::Display for SubproblemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |c: Option<Color>| c.map_or("*".to_string(), |c| c.to_string());
        write!(
            f,
            "SP({},{},{},{},{})",
            self.i,
            self.j,
            end(self.c1),
            self.c2,
            end(self.c3)
        )
    }
}
