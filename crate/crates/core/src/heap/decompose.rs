//! Alternating right/left factorization of a pyramid.
//!
//! A normalized pyramid `p` is written uniquely as a heap product
//! `p_1 ⊙ p_2 ⊙ ... ⊙ p_r` where odd factors are right `s_i`-pyramids, even
//! factors are left `s_i`-pyramids, `s_1 = 0`, and consecutive anchors move
//! by `1..=a-1` (rightwards after a right factor, leftwards after a left one).

use super::{Heap, Piece, PieceLength, Pyramid};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// One factor: a right or left `anchor`-pyramid, stored as a standalone heap
/// (its own bottom on level 1) in absolute offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub side: Side,
    pub anchor: i64,
    pub pyramid: Pyramid,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionSeq {
    pub a: PieceLength,
    pub factors: Vec<Factor>,
}

impl DecompositionSeq {
    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.pyramid.len()).collect()
    }

    pub fn anchors(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.anchor).collect()
    }

    pub fn total_size(&self) -> usize {
        self.factors.iter().map(|f| f.pyramid.len()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.a.i();
        let Some(first) = self.factors.first() else {
            return Err(Error::InvalidDecomposition("no factors".into()));
        };
        if first.side != Side::Right || first.anchor != 0 {
            return Err(Error::InvalidDecomposition(
                "first factor must be a right 0-pyramid".into(),
            ));
        }
        for (i, f) in self.factors.iter().enumerate() {
            if f.pyramid.a() != self.a {
                return Err(Error::InvalidDecomposition(format!(
                    "factor {} has piece length {}",
                    i + 1,
                    f.pyramid.a()
                )));
            }
            let expected = if i % 2 == 0 { Side::Right } else { Side::Left };
            if f.side != expected {
                return Err(Error::InvalidDecomposition(format!(
                    "factor {} should be {:?}",
                    i + 1,
                    expected
                )));
            }
            let ok = match f.side {
                Side::Right => f.pyramid.is_right_pyramid(f.anchor),
                Side::Left => f.pyramid.is_left_pyramid(f.anchor),
            };
            if !ok {
                return Err(Error::InvalidDecomposition(format!(
                    "factor {} is not a {:?} {}-pyramid",
                    i + 1,
                    f.side,
                    f.anchor
                )));
            }
            if let Some(next) = self.factors.get(i + 1) {
                let step = match f.side {
                    Side::Right => next.anchor - f.anchor,
                    Side::Left => f.anchor - next.anchor,
                };
                if !(1..a).contains(&step) {
                    return Err(Error::InvalidDecomposition(format!(
                        "anchor step {} between factors {} and {} outside 1..={}",
                        step,
                        i + 1,
                        i + 2,
                        a - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Indices of pieces lying above `root` in the heap order (root included).
/// `pieces` must be sorted by level.
fn upper_set(pieces: &[Piece], root: usize, a: PieceLength) -> Vec<bool> {
    let mut mark = vec![false; pieces.len()];
    mark[root] = true;
    for i in root + 1..pieces.len() {
        let p = pieces[i];
        mark[i] = (root..i).any(|j| mark[j] && pieces[j].level < p.level && pieces[j].overlaps(&p, a));
    }
    mark
}

fn restack(a: PieceLength, pieces: impl Iterator<Item = Piece>) -> Heap {
    Heap::from_drops(a, pieces.map(|p| p.offset))
}

pub fn decompose(p: &Pyramid) -> Result<DecompositionSeq> {
    if !p.is_normalized() {
        return Err(Error::NotNormalized(p.bottom().offset));
    }
    let a = p.a();
    let mut factors = Vec::new();
    let mut current = p.clone();
    let mut side = Side::Right;
    let mut anchor = 0i64;
    loop {
        let pieces = current.pieces();
        // lowest piece sticking out past the anchor on the wrong side
        let stray = pieces.iter().position(|q| match side {
            Side::Right => q.offset < anchor,
            Side::Left => q.offset + a.i() > anchor,
        });
        let Some(root) = stray else {
            factors.push(Factor {
                side,
                anchor,
                pyramid: current,
            });
            break;
        };
        let upper = upper_set(pieces, root, a);
        let lower = restack(a, pieces.iter().zip(&upper).filter(|(_, &u)| !u).map(|(q, _)| *q));
        let rest = restack(a, pieces.iter().zip(&upper).filter(|(_, &u)| u).map(|(q, _)| *q));
        let next_anchor = match side {
            Side::Right => pieces[root].offset + a.i(),
            Side::Left => pieces[root].offset,
        };
        factors.push(Factor {
            side,
            anchor,
            pyramid: Pyramid::new(lower)?,
        });
        current = Pyramid::new(rest)?;
        side = side.flip();
        anchor = next_anchor;
    }
    Ok(DecompositionSeq { a, factors })
}

/// Heap product of the factors, in order.
pub fn recompose(d: &DecompositionSeq) -> Result<Pyramid> {
    d.validate()?;
    let mut heap = Heap::empty(d.a);
    for f in &d.factors {
        for q in f.pyramid.pieces() {
            heap.drop_in_place(q.offset);
        }
    }
    Pyramid::new(heap)
}
