//! Pieces, heaps and pyramids.
//!
//! A heap is stored as the set of its `(offset, level)` placements, sorted by
//! level and then offset, together with the highest occupied level of every
//! unit column. Dropping a piece only needs those column maxima.

mod decompose;
mod enumerate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decompose::{decompose, recompose, DecompositionSeq, Factor, Side};
pub use enumerate::{bruteforce_pyramids, class_count, enumerate_pyramids, visit_pyramids, PyramidEnumerator};

/// Length `a >= 2` of every piece.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PieceLength(u32);

impl PieceLength {
    pub fn new(a: u32) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidPieceLength(a));
        }
        Ok(PieceLength(a))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn i(self) -> i64 {
        self.0 as i64
    }
}

impl TryFrom<u32> for PieceLength {
    type Error = Error;

    fn try_from(a: u32) -> Result<Self> {
        PieceLength::new(a)
    }
}

impl From<PieceLength> for u32 {
    fn from(a: PieceLength) -> u32 {
        a.0
    }
}

impl fmt::Display for PieceLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A piece covering `]offset, offset + a[` at `level >= 1`.
///
/// Ordered by level first, then offset, which is the canonical order of
/// pieces in a heap.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, u32)", into = "(i64, u32)")]
pub struct Piece {
    pub offset: i64,
    pub level: u32,
}

impl Piece {
    pub fn new(offset: i64, level: u32) -> Self {
        Piece { offset, level }
    }

    /// True if the open intervals of the two pieces intersect.
    pub fn overlaps(&self, other: &Piece, a: PieceLength) -> bool {
        (self.offset - other.offset).abs() < a.i()
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.level, self.offset).cmp(&(other.level, other.offset))
    }
}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(i64, u32)> for Piece {
    fn from((offset, level): (i64, u32)) -> Self {
        Piece { offset, level }
    }
}

impl From<Piece> for (i64, u32) {
    fn from(p: Piece) -> Self {
        (p.offset, p.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Heap {
    a: PieceLength,
    pieces: Vec<Piece>,
    /// Highest level occupied in each unit column `]c, c+1[`.
    tops: BTreeMap<i64, u32>,
}

impl Heap {
    pub fn empty(a: PieceLength) -> Self {
        Heap {
            a,
            pieces: Vec::new(),
            tops: BTreeMap::new(),
        }
    }

    /// Builds a heap from explicit placements, checking every heap invariant.
    pub fn from_pieces(a: PieceLength, pieces: impl IntoIterator<Item = Piece>) -> Result<Self> {
        let mut pieces: Vec<Piece> = pieces.into_iter().collect();
        pieces.sort();
        for w in pieces.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidHeap(format!(
                    "duplicate piece at offset {} level {}",
                    w[0].offset, w[0].level
                )));
            }
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.level == 0 {
                return Err(Error::InvalidHeap(format!("piece at offset {} has level 0", p.offset)));
            }
            for q in &pieces[i + 1..] {
                if q.level == p.level && p.overlaps(q, a) {
                    return Err(Error::InvalidHeap(format!(
                        "pieces at offsets {} and {} overlap on level {}",
                        p.offset, q.offset, p.level
                    )));
                }
            }
            if p.level > 1 && !pieces.iter().any(|q| q.level + 1 == p.level && q.overlaps(p, a)) {
                return Err(Error::InvalidHeap(format!(
                    "piece at offset {} level {} is unsupported",
                    p.offset, p.level
                )));
            }
        }
        let mut heap = Heap::empty(a);
        for p in &pieces {
            heap.raise_tops(p);
        }
        heap.pieces = pieces;
        Ok(heap)
    }

    /// Drops pieces at the given offsets, in order, onto an empty heap.
    pub fn from_drops(a: PieceLength, offsets: impl IntoIterator<Item = i64>) -> Self {
        let mut heap = Heap::empty(a);
        for o in offsets {
            heap.drop_in_place(o);
        }
        heap
    }

    pub fn a(&self) -> PieceLength {
        self.a
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    fn raise_tops(&mut self, p: &Piece) {
        for c in p.offset..p.offset + self.a.i() {
            let top = self.tops.entry(c).or_insert(0);
            *top = (*top).max(p.level);
        }
    }

    /// Level a piece dropped at `offset` would come to rest on.
    pub fn landing_level(&self, offset: i64) -> u32 {
        self.tops
            .range(offset..offset + self.a.i())
            .map(|(_, &l)| l)
            .max()
            .unwrap_or(0)
            + 1
    }

    /// Drops a piece at `offset` and returns where it landed.
    pub fn drop_in_place(&mut self, offset: i64) -> Piece {
        let piece = Piece::new(offset, self.landing_level(offset));
        self.raise_tops(&piece);
        let at = self.pieces.partition_point(|q| q < &piece);
        self.pieces.insert(at, piece);
        piece
    }

    pub fn drop_piece(&self, offset: i64) -> Heap {
        let mut h = self.clone();
        h.drop_in_place(offset);
        h
    }

    pub fn min_offset(&self) -> Option<i64> {
        self.pieces.iter().map(|p| p.offset).min()
    }

    pub fn max_offset(&self) -> Option<i64> {
        self.pieces.iter().map(|p| p.offset).max()
    }

    pub fn height(&self) -> u32 {
        self.pieces.last().map_or(0, |p| p.level)
    }

    /// True iff exactly one piece lies on level 1.
    pub fn is_pyramid(&self) -> bool {
        self.pieces.iter().take_while(|p| p.level == 1).count() == 1
    }

    /// Shifts every piece horizontally by `by`.
    pub fn translate(&self, by: i64) -> Heap {
        let pieces = self.pieces.iter().map(|p| Piece::new(p.offset + by, p.level));
        let mut h = Heap::empty(self.a);
        h.pieces = pieces.collect();
        for p in h.pieces.clone() {
            h.raise_tops(&p);
        }
        h
    }

    /// Mirror image under `x -> axis2 - x`: a piece at offset `o` moves to
    /// `axis2 - o - a`. Levels are unchanged.
    pub fn reflect(&self, axis2: i64) -> Heap {
        let a = self.a.i();
        let mut pieces: Vec<Piece> = self
            .pieces
            .iter()
            .map(|p| Piece::new(axis2 - p.offset - a, p.level))
            .collect();
        pieces.sort();
        let mut h = Heap::empty(self.a);
        for p in &pieces {
            h.raise_tops(p);
        }
        h.pieces = pieces;
        h
    }

    /// Drawing with one text row per level, top level first. Each piece is
    /// drawn as `[==]` spanning its `a` unit cells.
    pub fn render_ascii(&self) -> String {
        let (Some(lo), Some(hi)) = (self.min_offset(), self.max_offset()) else {
            return String::new();
        };
        let a = self.a.i();
        let width = (hi + a - lo) as usize;
        let mut out = String::new();
        for level in (1..=self.height()).rev() {
            let mut row = vec![' '; width];
            for p in self.pieces.iter().filter(|p| p.level == level) {
                let start = (p.offset - lo) as usize;
                let end = start + a as usize - 1;
                row[start] = '[';
                row[end] = ']';
                for cell in &mut row[start + 1..end] {
                    *cell = '=';
                }
            }
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// A heap with a unique bottom piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pyramid(Heap);

impl Pyramid {
    pub fn new(heap: Heap) -> Result<Self> {
        if !heap.is_pyramid() {
            let bottoms = heap.pieces.iter().filter(|p| p.level == 1).count();
            return Err(Error::NotPyramid(format!(
                "{bottoms} pieces on level 1, expected exactly one"
            )));
        }
        Ok(Pyramid(heap))
    }

    pub fn from_pieces(a: PieceLength, pieces: impl IntoIterator<Item = Piece>) -> Result<Self> {
        Pyramid::new(Heap::from_pieces(a, pieces)?)
    }

    pub fn single(a: PieceLength, offset: i64) -> Self {
        Pyramid(Heap::from_drops(a, [offset]))
    }

    pub fn heap(&self) -> &Heap {
        &self.0
    }

    pub fn into_heap(self) -> Heap {
        self.0
    }

    pub fn a(&self) -> PieceLength {
        self.0.a
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.0.pieces
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> Piece {
        self.0.pieces[0]
    }

    pub fn is_normalized(&self) -> bool {
        self.bottom().offset == 0
    }

    /// Bottom covers `]s, s+a[` and no piece reaches left of `s`.
    pub fn is_right_pyramid(&self, s: i64) -> bool {
        self.bottom().offset == s && self.0.min_offset() == Some(s)
    }

    /// Bottom covers `]s-a, s[` and no piece reaches right of `s`.
    pub fn is_left_pyramid(&self, s: i64) -> bool {
        let a = self.a().i();
        self.bottom().offset == s - a && self.0.max_offset().map(|o| o + a) == Some(s)
    }

    /// `n` such that the leftmost covered interval is `]-n, a-n[`.
    pub fn left_width(&self) -> Result<u64> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized(self.bottom().offset));
        }
        Ok((-self.0.min_offset().unwrap_or(0)) as u64)
    }

    /// Length of the projection onto the horizontal axis.
    pub fn width(&self) -> u64 {
        let lo = self.0.min_offset().unwrap_or(0);
        let hi = self.0.max_offset().unwrap_or(0);
        (hi + self.a().i() - lo) as u64
    }

    /// Translates so the bottom piece sits at offset 0.
    pub fn normalized(&self) -> Pyramid {
        Pyramid(self.0.translate(-self.bottom().offset))
    }

    pub fn translate(&self, by: i64) -> Pyramid {
        Pyramid(self.0.translate(by))
    }

    pub fn reflect(&self, axis2: i64) -> Pyramid {
        Pyramid(self.0.reflect(axis2))
    }

    pub fn render_ascii(&self) -> String {
        self.0.render_ascii()
    }
}

/// Which pyramids an enumeration should produce.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PyramidClass {
    /// All pyramids, normalized to bottom offset 0.
    General,
    /// Right `s`-pyramids.
    RightS(i64),
    /// Left `s`-pyramids.
    LeftS(i64),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32) -> PieceLength {
        PieceLength::new(n).unwrap()
    }

    fn pcs(list: &[(i64, u32)]) -> Vec<Piece> {
        list.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn piece_length_rejects_small() {
        assert!(PieceLength::new(1).is_err());
        assert!(PieceLength::new(0).is_err());
        assert_eq!(PieceLength::new(2).unwrap().get(), 2);
    }

    #[test]
    fn drop_on_empty_rests_on_level_one() {
        let h = Heap::empty(a(2)).drop_piece(0);
        assert_eq!(h.pieces(), &pcs(&[(0, 1)])[..]);
    }

    #[test]
    fn drop_overlapping_stacks() {
        let h = Heap::from_drops(a(2), [0]).drop_piece(1);
        assert_eq!(h.pieces(), &pcs(&[(0, 1), (1, 2)])[..]);
    }

    #[test]
    fn drop_disjoint_rests_beside() {
        let h = Heap::from_drops(a(2), [0]).drop_piece(2);
        assert_eq!(h.pieces(), &pcs(&[(0, 1), (2, 1)])[..]);
        assert!(!h.is_pyramid());
    }

    #[test]
    fn drop_lands_on_highest_overlap() {
        // a=3: (0,1), (2,2), then a piece at 1 overlaps both
        let h = Heap::from_drops(a(3), [0, 2, 1]);
        assert_eq!(h.pieces(), &pcs(&[(0, 1), (2, 2), (1, 3)])[..]);
    }

    #[test]
    fn from_pieces_validates() {
        assert!(Heap::from_pieces(a(2), pcs(&[(0, 1), (1, 1)])).is_err());
        assert!(Heap::from_pieces(a(2), pcs(&[(0, 1), (3, 2)])).is_err());
        assert!(Heap::from_pieces(a(2), pcs(&[(0, 1), (0, 1)])).is_err());
        assert!(Heap::from_pieces(a(2), pcs(&[(0, 0)])).is_err());
        let h = Heap::from_pieces(a(2), pcs(&[(1, 2), (0, 1)])).unwrap();
        assert_eq!(h, Heap::from_drops(a(2), [0, 1]));
    }

    #[test]
    fn is_pyramid_counts_bottom_pieces() {
        assert!(Heap::from_drops(a(2), [0]).is_pyramid());
        assert!(!Heap::from_drops(a(2), [0, 2]).is_pyramid());
        assert!(!Heap::empty(a(2)).is_pyramid());
    }

    #[test]
    fn widths() {
        let single = Pyramid::single(a(2), 0);
        assert_eq!(single.left_width().unwrap(), 0);
        assert_eq!(single.width(), 2);

        let p = Pyramid::from_pieces(a(2), pcs(&[(0, 1), (-1, 2)])).unwrap();
        assert_eq!(p.left_width().unwrap(), 1);

        let p = Pyramid::from_pieces(a(2), pcs(&[(0, 1), (1, 2)])).unwrap();
        assert_eq!(p.width(), 3);

        let p = Pyramid::from_pieces(a(3), pcs(&[(0, 1), (2, 2)])).unwrap();
        assert_eq!(p.width(), 5);
    }

    #[test]
    fn left_width_rejects_unnormalized() {
        let p = Pyramid::single(a(2), 3);
        assert_eq!(p.left_width(), Err(Error::NotNormalized(3)));
    }

    #[test]
    fn right_and_left_classes() {
        let p = Pyramid::from_pieces(a(3), pcs(&[(0, 1), (2, 2)])).unwrap();
        assert!(p.is_right_pyramid(0));
        assert!(!p.is_left_pyramid(3));
        let q = p.reflect(0);
        assert!(q.is_left_pyramid(0));
        assert_eq!(q.bottom().offset, -3);
    }

    #[test]
    fn render_single_piece() {
        assert_eq!(Pyramid::single(a(2), 0).render_ascii(), "[]\n");
        assert_eq!(Pyramid::single(a(4), 0).render_ascii(), "[==]\n");
    }

    #[test]
    fn render_shifted_stack() {
        let h = Heap::from_drops(a(2), [0, 1]);
        assert_eq!(h.render_ascii(), " []\n[]\n");
    }

    #[test]
    fn render_adjacent_pieces_are_separated() {
        let h = Heap::from_drops(a(2), [0, 2, 1]);
        assert_eq!(h.render_ascii(), " []\n[][]\n");
    }

    #[test]
    fn piece_serializes_as_pair() {
        let json = serde_json::to_string(&Piece::new(-2, 3)).unwrap();
        assert_eq!(json, "[-2,3]");
    }
}
