//! Colors, color sets, list assignments and colorings over the palette {1,2,3}.

use std::fmt;

use crate::graph::{BipartiteGraph, Vertex};

/// One of the three colors `1`, `2`, `3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

impl Color {
    pub const ALL: [Color; 3] = [Color(1), Color(2), Color(3)];

    pub fn new(value: u8) -> Option<Color> {
        (1..=3).contains(&value).then_some(Color(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    fn bit(self) -> u8 {
        1 << (self.0 - 1)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of {1,2,3}, stored as a 3-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const FULL: ColorSet = ColorSet(0b111);

    pub fn from_bits(bits: u8) -> ColorSet {
        ColorSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn single(c: Color) -> ColorSet {
        ColorSet(c.bit())
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= c.bit();
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !c.bit();
    }

    pub fn without(self, c: Color) -> ColorSet {
        ColorSet(self.0 & !c.bit())
    }

    pub fn intersect(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest color in the set.
    pub fn min(self) -> Option<Color> {
        self.iter().next()
    }

    /// Largest color in the set.
    pub fn max(self) -> Option<Color> {
        self.iter().last()
    }

    /// The only member, if the set is a singleton.
    pub fn single_color(self) -> Option<Color> {
        if self.len() == 1 {
            self.min()
        } else {
            None
        }
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut set = ColorSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

/// Admissible colors for every vertex of a graph, indexed like the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    pub x: Vec<ColorSet>,
    pub y: Vec<ColorSet>,
}

impl ListAssignment {
    /// Every vertex gets {1,2,3}.
    pub fn full(g: &BipartiteGraph) -> Self {
        Self::uniform(g, ColorSet::FULL)
    }

    pub fn uniform(g: &BipartiteGraph, set: ColorSet) -> Self {
        ListAssignment {
            x: vec![set; g.x_count()],
            y: vec![set; g.y_count()],
        }
    }

    pub fn get(&self, v: Vertex) -> ColorSet {
        match v {
            Vertex::X(i) => self.x[i],
            Vertex::Y(i) => self.y[i],
        }
    }

    pub fn set(&mut self, v: Vertex, set: ColorSet) {
        match v {
            Vertex::X(i) => self.x[i] = set,
            Vertex::Y(i) => self.y[i] = set,
        }
    }

    pub fn matches(&self, g: &BipartiteGraph) -> bool {
        self.x.len() == g.x_count() && self.y.len() == g.y_count()
    }

    /// Number of assignments in the Cartesian product of all lists, saturating.
    pub fn product_size(&self) -> u128 {
        self.x
            .iter()
            .chain(&self.y)
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }
}

/// A total color map over the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub x: Vec<Color>,
    pub y: Vec<Color>,
}

impl Coloring {
    pub fn get(&self, v: Vertex) -> Color {
        match v {
            Vertex::X(i) => self.x[i],
            Vertex::Y(i) => self.y[i],
        }
    }

    pub fn matches(&self, g: &BipartiteGraph) -> bool {
        self.x.len() == g.x_count() && self.y.len() == g.y_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    #[test]
    fn color_range() {
        assert!(Color::new(0).is_none());
        assert!(Color::new(4).is_none());
        assert_eq!(Color::new(2).map(Color::get), Some(2));
    }

    #[test]
    fn set_ops() {
        let s: ColorSet = [c(1), c(3)].into_iter().collect();
        assert_eq!(s.len(), 2);
        assert!(s.contains(c(3)) && !s.contains(c(2)));
        assert_eq!(s.min(), Some(c(1)));
        assert_eq!(s.max(), Some(c(3)));
        assert_eq!(s.without(c(1)).single_color(), Some(c(3)));
        assert!(s.is_subset(ColorSet::FULL));
        assert!(!ColorSet::FULL.is_subset(s));
        assert_eq!(ColorSet::FULL.minus(s), ColorSet::single(c(2)));
        assert_eq!(format!("{s:?}"), "{1, 3}");
    }
}
