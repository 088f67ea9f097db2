//! Strings, walks and the greedy right-pyramid codec.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::{decompose, recompose, DecompositionSeq, Factor, Heap, PieceLength, Pyramid, Side};

/// A right-step of length `a - 1` (bit `1`) or a left-step of length 1 (bit `0`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Right,
    Left,
}

impl Step {
    pub fn delta(self, a: PieceLength) -> i64 {
        match self {
            Step::Right => a.i() - 1,
            Step::Left => -1,
        }
    }

    pub fn bit(self) -> bool {
        self == Step::Right
    }

    pub fn from_bit(bit: bool) -> Step {
        if bit {
            Step::Right
        } else {
            Step::Left
        }
    }
}

/// Bit sequence `x_1 .. x_n`, printed most-significant-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitString {
    pub a: PieceLength,
    pub bits: Vec<bool>,
}

impl BitString {
    pub fn new(a: PieceLength, bits: Vec<bool>) -> Self {
        BitString { a, bits }
    }

    pub fn parse(a: PieceLength, s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::InvalidString(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString { a, bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Running values `t_1 .. t_n` with `t_s = sum_{u <= s} (a x_u - 1)`.
    pub fn running_values(&self) -> Vec<i64> {
        let a = self.a.i();
        self.bits
            .iter()
            .scan(0i64, |t, &b| {
                *t += if b { a - 1 } else { -1 };
                Some(*t)
            })
            .collect()
    }

    pub fn reversed(&self) -> BitString {
        BitString {
            a: self.a,
            bits: self.bits.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub a: PieceLength,
    pub start: i64,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn new(a: PieceLength, start: i64, steps: Vec<Step>) -> Self {
        Walk { a, start, steps }
    }

    /// Sites visited after each step (the start is not included).
    pub fn sites(&self) -> Vec<i64> {
        let a = self.a;
        self.steps
            .iter()
            .scan(self.start, |x, s| {
                *x += s.delta(a);
                Some(*x)
            })
            .collect()
    }

    /// Start followed by every visited site.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        h.push(self.start);
        h.extend(self.sites());
        h
    }

    pub fn end(&self) -> i64 {
        self.start + self.steps.iter().map(|s| s.delta(self.a)).sum::<i64>()
    }

    pub fn right_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Right).count()
    }

    /// Reflection in the end point followed by reversal: the inverse walk
    /// starts at `j` and uses the steps in reverse order.
    pub fn inverse(&self) -> Walk {
        Walk {
            a: self.a,
            start: self.end(),
            steps: self.steps.iter().rev().copied().collect(),
        }
    }

    /// Ends no lower than it starts and never dips below its start.
    pub fn is_positive(&self) -> bool {
        self.end() >= self.start && self.sites().iter().all(|&x| x >= self.start)
    }

    pub fn is_negative(&self) -> bool {
        self.inverse().is_positive()
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "1" => Ok(Step::Right),
            "L" | "l" | "0" => Ok(Step::Left),
            other => Err(Error::InvalidString(format!("unknown step {other:?}"))),
        }
    }
}

pub fn string_to_walk(s: &BitString) -> Walk {
    Walk {
        a: s.a,
        start: 0,
        steps: s.bits.iter().map(|&b| Step::from_bit(b)).collect(),
    }
}

pub fn walk_to_string(w: &Walk) -> BitString {
    BitString {
        a: w.a,
        bits: w.steps.iter().map(|s| s.bit()).collect(),
    }
}

/// Whether `s` is a positive `(am, m)`-string. Fails if the length is not `am`.
pub fn is_positive(s: &BitString, m: usize) -> Result<bool> {
    let expected = s.a.get() as usize * m;
    if s.len() != expected {
        return Err(Error::InvalidString(format!(
            "length {} is not a*m = {}",
            s.len(),
            expected
        )));
    }
    Ok(s.ones() == m && s.running_values().iter().all(|&t| t >= 0))
}

/// All positive `(am, m)`-strings, `1` ordered before `0` at each position.
pub fn positive_strings(a: PieceLength, m: usize) -> Vec<BitString> {
    fn go(a: i64, m: usize, ones: usize, t: i64, bits: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if bits.len() == a as usize * m {
            out.push(bits.clone());
            return;
        }
        if ones < m {
            bits.push(true);
            go(a, m, ones + 1, t + a - 1, bits, out);
            bits.pop();
        }
        if t >= 1 {
            bits.push(false);
            go(a, m, ones, t - 1, bits, out);
            bits.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(a.i(), m, 0, 0, &mut Vec::new(), &mut out);
    }
    out.into_iter().map(|bits| BitString::new(a, bits)).collect()
}

/// Drops a piece at `t_{s-1}` for every `x_s = 1` (with `t_0 = 0`).
pub fn string_to_right_pyramid(s: &BitString) -> Result<Pyramid> {
    let m = s.ones();
    if m == 0 || !is_positive(s, m)? {
        return Err(Error::NotPositive(s.to_string()));
    }
    let mut heap = Heap::empty(s.a);
    let mut t = 0i64;
    for &b in &s.bits {
        if b {
            heap.drop_in_place(t);
        }
        t += if b { s.a.i() - 1 } else { -1 };
    }
    Pyramid::new(heap)
}

/// Greedy scan: at each step emit `1` iff the piece of `p` at offset `t_s`
/// is the next one that can be dropped without anything below it missing.
pub fn right_pyramid_to_string(p: &Pyramid) -> Result<BitString> {
    if !p.is_right_pyramid(0) {
        return Err(Error::NotRightPyramid(format!(
            "bottom at {}, leftmost offset {}",
            p.bottom().offset,
            p.heap().min_offset().unwrap_or(0)
        )));
    }
    let a = p.a();
    let pieces = p.pieces();
    let m = pieces.len();
    // for every piece, the pieces below it that it overlaps
    let below: Vec<Vec<usize>> = pieces
        .iter()
        .map(|q| {
            (0..m)
                .filter(|&j| pieces[j].level < q.level && pieces[j].overlaps(q, a))
                .collect()
        })
        .collect();
    let mut placed = vec![false; m];
    placed[0] = true;
    let mut bits = vec![true];
    let mut t = a.i() - 1;
    let mut count = 1;
    for _ in 1..a.get() as usize * m {
        let next = (0..m).find(|&i| !placed[i] && pieces[i].offset == t && below[i].iter().all(|&j| placed[j]));
        match next {
            Some(i) => {
                placed[i] = true;
                bits.push(true);
                t += a.i() - 1;
                count += 1;
            }
            None => {
                bits.push(false);
                t -= 1;
            }
        }
        debug_assert!(t >= 0);
    }
    if count != m || t != 0 {
        return Err(Error::NotRightPyramid(format!(
            "greedy scan placed {count} of {m} pieces"
        )));
    }
    Ok(BitString::new(a, bits))
}

/// Full pyramid to `(2m, m)`-string codec for dimers: right factors encode as
/// positive strings, left factors as reversed positive strings.
pub fn encode_pyramid_a2(p: &Pyramid) -> Result<BitString> {
    let a = p.a();
    if a.get() != 2 {
        return Err(Error::UnsupportedPieceLength {
            got: a.get(),
            reason: "the full pyramid/string codec exists only for a = 2",
        });
    }
    let d = decompose(p)?;
    let mut bits = Vec::with_capacity(2 * p.len());
    for f in &d.factors {
        match f.side {
            Side::Right => bits.extend(right_pyramid_to_string(&f.pyramid.translate(-f.anchor))?.bits),
            Side::Left => {
                let right = f.pyramid.reflect(f.anchor);
                bits.extend(right_pyramid_to_string(&right)?.reversed().bits);
            }
        }
    }
    Ok(BitString::new(a, bits))
}

/// Inverse of [`encode_pyramid_a2`]: splits the walk into maximal
/// alternating non-negative / non-positive parts.
pub fn decode_pyramid_a2(s: &BitString) -> Result<Pyramid> {
    let a = s.a;
    if a.get() != 2 {
        return Err(Error::UnsupportedPieceLength {
            got: a.get(),
            reason: "the full pyramid/string codec exists only for a = 2",
        });
    }
    let m = s.ones();
    if s.is_empty() || s.len() != 2 * m || !s.bits[0] {
        return Err(Error::InvalidString(format!(
            "{s} is not a (2m, m)-string starting with 1"
        )));
    }
    let t = s.running_values();
    // split at returns to zero, then merge neighbours of the same sign
    let mut parts: Vec<(bool, Vec<bool>)> = Vec::new();
    let mut start = 0;
    for (i, &v) in t.iter().enumerate() {
        if v == 0 {
            let up = s.bits[start];
            let chunk = &s.bits[start..=i];
            match parts.last_mut() {
                Some((sign, bits)) if *sign == up => bits.extend_from_slice(chunk),
                _ => parts.push((up, chunk.to_vec())),
            }
            start = i + 1;
        }
    }
    let mut factors = Vec::with_capacity(parts.len());
    for (i, (up, bits)) in parts.into_iter().enumerate() {
        let (side, anchor) = if i % 2 == 0 { (Side::Right, 0) } else { (Side::Left, 1) };
        debug_assert_eq!(up, side == Side::Right);
        let piece = BitString::new(a, bits);
        let pyramid = match side {
            Side::Right => string_to_right_pyramid(&piece)?,
            Side::Left => string_to_right_pyramid(&piece.reversed())?.reflect(anchor),
        };
        factors.push(Factor { side, anchor, pyramid });
    }
    recompose(&DecompositionSeq { a, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32) -> PieceLength {
        PieceLength::new(n).unwrap()
    }

    fn bs(n: u32, s: &str) -> BitString {
        BitString::parse(a(n), s).unwrap()
    }

    #[test]
    fn walk_sites() {
        assert_eq!(string_to_walk(&bs(2, "10")).sites(), vec![1, 0]);
        assert_eq!(string_to_walk(&bs(3, "100")).sites(), vec![2, 1, 0]);
        let w = string_to_walk(&bs(2, "111000"));
        assert_eq!(w.sites(), vec![1, 2, 3, 2, 1, 0]);
        assert!(w.is_positive());
        assert_eq!(walk_to_string(&w), bs(2, "111000"));
    }

    #[test]
    fn positivity() {
        assert!(is_positive(&bs(2, "1100"), 2).unwrap());
        assert!(!is_positive(&bs(2, "0110"), 2).unwrap());
        assert!(is_positive(&bs(3, "110000"), 2).unwrap());
        assert!(is_positive(&bs(3, "101000"), 2).unwrap());
        assert!(is_positive(&bs(2, "101"), 2).is_err());
    }

    #[test]
    fn positive_string_counts() {
        // t_s computed by hand over all (6,2)-strings for a=3
        let got: Vec<String> = positive_strings(a(3), 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["110000", "101000", "100100"]);
        let counts: Vec<usize> = (1..=4).map(|m| positive_strings(a(3), m).len()).collect();
        assert_eq!(counts, vec![1, 3, 12, 55]);
    }

    #[test]
    fn positive_strings_start_with_one_and_end_with_zeros() {
        for s in positive_strings(a(4), 3) {
            assert!(s.bits[0]);
            assert!(s.bits[s.len() - 3..].iter().all(|&b| !b));
        }
    }

    #[test]
    fn decode_examples() {
        assert_eq!(string_to_right_pyramid(&bs(2, "10")).unwrap(), Pyramid::single(a(2), 0));
        let p = string_to_right_pyramid(&bs(2, "1010")).unwrap();
        assert_eq!(p.heap(), &Heap::from_drops(a(2), [0, 0]));
        let p = string_to_right_pyramid(&bs(2, "1100")).unwrap();
        assert_eq!(p.heap(), &Heap::from_drops(a(2), [0, 1]));
        assert!(string_to_right_pyramid(&bs(2, "0110")).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(right_pyramid_to_string(&Pyramid::single(a(2), 0)).unwrap(), bs(2, "10"));
        let stack = Pyramid::from_pieces(a(2), [(0, 1).into(), (1, 2).into(), (0, 3).into()]).unwrap();
        let s = right_pyramid_to_string(&stack).unwrap().to_string();
        assert!(["111000", "110100", "110010", "101100", "101010"].contains(&s.as_str()));
        assert_eq!(
            string_to_right_pyramid(&BitString::parse(a(2), &s).unwrap()).unwrap(),
            stack
        );
    }

    #[test]
    fn encode_rejects_non_right() {
        let p = Pyramid::from_pieces(a(2), [(0, 1).into(), (-1, 2).into()]).unwrap();
        assert!(right_pyramid_to_string(&p).is_err());
    }

    #[test]
    fn codec_a2_examples() {
        let p = decode_pyramid_a2(&bs(2, "100011")).unwrap();
        assert_eq!(p.left_width().unwrap(), 2);
        assert_eq!(encode_pyramid_a2(&p).unwrap(), bs(2, "100011"));
        let p = decode_pyramid_a2(&bs(2, "100110")).unwrap();
        assert_eq!(p.heap(), &Heap::from_drops(a(2), [0, -1, 0]));
    }

    #[test]
    fn codec_a2_rejects_other_lengths() {
        let p = Pyramid::single(a(3), 0);
        assert!(matches!(
            encode_pyramid_a2(&p),
            Err(Error::UnsupportedPieceLength { .. })
        ));
        assert!(decode_pyramid_a2(&bs(3, "100")).is_err());
        assert!(decode_pyramid_a2(&bs(2, "0110")).is_err());
    }

    #[test]
    fn inverse_walk_reverses_steps() {
        let w = Walk::new(a(3), 0, vec![Step::Right, Step::Left, Step::Left]);
        let inv = w.inverse();
        assert_eq!(inv.steps, vec![Step::Left, Step::Left, Step::Right]);
        assert!(w.is_positive());
        assert!(inv.is_negative());
    }
}
