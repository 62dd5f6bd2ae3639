//! Colours, colour sets and total colourings.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex};

/// A colour in `1..=ℓ`. Zero is never a valid colour.
pub type Colour = u8;

/// Largest supported colour universe; lists are 64-bit sets.
pub const MAX_COLOURS: u8 = 64;

/// A subset of `{1, …, 64}` stored as a bitset (bit `c - 1` for colour `c`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColourSet(u64);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// `{1, …, ℓ}`.
    pub fn universe(ell: u8) -> Self {
        debug_assert!(ell <= MAX_COLOURS);
        if ell >= 64 {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << ell) - 1)
        }
    }

    pub fn singleton(c: Colour) -> Self {
        debug_assert!((1..=MAX_COLOURS).contains(&c));
        ColourSet(1u64 << (c - 1))
    }

    pub fn from_bits(bits: u64) -> Self {
        ColourSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Colour) -> bool {
        (1..=MAX_COLOURS).contains(&c) && self.0 & (1u64 << (c - 1)) != 0
    }

    pub fn insert(&mut self, c: Colour) {
        self.0 |= Self::singleton(c).0;
    }

    pub fn remove(&mut self, c: Colour) {
        if (1..=MAX_COLOURS).contains(&c) {
            self.0 &= !(1u64 << (c - 1));
        }
    }

    pub fn without(self, c: Colour) -> Self {
        let mut s = self;
        s.remove(c);
        s
    }

    pub fn difference(self, other: ColourSet) -> Self {
        ColourSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest colour in the set.
    pub fn min(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Colour + 1)
        }
    }

    /// Largest colour in the set.
    pub fn max(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as Colour)
        }
    }

    /// The `k` smallest colours of the set (all of it if it has fewer).
    pub fn lowest(self, k: usize) -> Self {
        let mut out = ColourSet::EMPTY;
        for c in self.iter().take(k) {
            out.insert(c);
        }
        out
    }

    /// Colours in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Colour> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as Colour + 1;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut s = ColourSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A total assignment of colours to the vertices `0..n`.
///
/// Properness is checked on demand; improper colourings are representable so
/// that they can be reported.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Colouring { colours }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn set(&mut self, v: Vertex, c: Colour) {
        self.colours[v] = c;
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.colours
    }

    pub fn into_vec(self) -> Vec<Colour> {
        self.colours
    }

    /// Largest colour used, or 0 for the empty colouring.
    pub fn max_colour(&self) -> Colour {
        self.colours.iter().copied().max().unwrap_or(0)
    }

    /// First position whose colour lies outside `1..=ell`.
    pub fn out_of_range(&self, ell: u8) -> Option<Vertex> {
        self.colours.iter().position(|&c| c == 0 || c > ell)
    }

    /// Every monochromatic edge `(u, v)` with `u < v`, in edge order.
    pub fn conflicts(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        g.edges().filter(|&(u, v)| self.colours[u] == self.colours[v]).collect()
    }

    /// First monochromatic edge, if any.
    pub fn first_conflict(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        g.edges().find(|&(u, v)| self.colours[u] == self.colours[v])
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colours.len() == g.n() && self.first_conflict(g).is_none()
    }
}

impl From<Vec<Colour>> for Colouring {
    fn from(colours: Vec<Colour>) -> Self {
        Colouring { colours }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_basics() {
        let s = ColourSet::universe(10);
        assert_eq!(s.len(), 10);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(10));
        let t = s.without(1).without(3);
        assert_eq!(t.iter().collect::<Vec<_>>(), [2, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(t.lowest(3).iter().collect::<Vec<_>>(), [2, 4, 5]);
        assert!(!t.contains(0));
        assert!(!t.contains(65));
        assert_eq!(ColourSet::universe(64).len(), 64);
        assert_eq!(ColourSet::universe(64).max(), Some(64));
        assert!(ColourSet::EMPTY.min().is_none());
    }

    #[test]
    fn conflicts_on_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = Colouring::new(alloc::vec![1, 1, 2]);
        assert_eq!(f.conflicts(&g), [(0, 1)]);
        assert!(!f.is_proper(&g));
        assert!(Colouring::new(alloc::vec![1, 2, 3]).is_proper(&g));
        assert_eq!(Colouring::new(alloc::vec![1, 0, 3]).out_of_range(3), Some(1));
    }
}
