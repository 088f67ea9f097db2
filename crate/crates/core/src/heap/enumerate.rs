//! Exhaustive pyramid generation.
//!
//! The main generator never produces a duplicate: right pyramids come from
//! positive strings through the string bijection, and general pyramids are
//! spliced from alternating right/left factors over every admissible anchor
//! sequence. `bruteforce_pyramids` is an independent check that grows heaps
//! piece by piece and deduplicates by hashing.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Heap, Piece, PieceLength, Pyramid, PyramidClass, Side};
use crate::bijections::{positive_strings, string_to_right_pyramid};
use crate::error::{Error, Result};
use crate::series::{count_a, count_b};

/// Number of pyramids of the given class and size.
pub fn class_count(a: PieceLength, m: usize, class: PyramidClass) -> BigUint {
    match class {
        PyramidClass::General => count_b(a, m),
        PyramidClass::RightS(_) | PyramidClass::LeftS(_) => count_a(a, m),
    }
}

fn check_budget(a: PieceLength, m: usize, class: PyramidClass, budget: u64) -> Result<()> {
    let n = class_count(a, m, class);
    if n.to_u64().is_none_or(|n| n > budget) {
        return Err(Error::budget(
            format!("enumerating {class:?} pyramids with a={a}, m={m}"),
            n,
            budget,
        ));
    }
    Ok(())
}

/// Pyramid generator holding the right 0-pyramids of each size up to `max_m`
/// as offset lists in drop order.
pub struct PyramidEnumerator {
    a: PieceLength,
    right: Vec<Vec<Vec<Piece>>>,
}

impl PyramidEnumerator {
    pub fn new(a: PieceLength, max_m: usize) -> Result<Self> {
        let mut right = vec![Vec::new()];
        for k in 1..=max_m {
            let list = positive_strings(a, k)
                .iter()
                .map(|s| string_to_right_pyramid(s).map(|p| p.pieces().to_vec()))
                .collect::<Result<Vec<_>>>()?;
            right.push(list);
        }
        Ok(PyramidEnumerator { a, right })
    }

    fn place(&self, base: &[Piece], side: Side, anchor: i64) -> impl Iterator<Item = i64> + '_ {
        let a = self.a.i();
        let base: Vec<i64> = base.iter().map(|p| p.offset).collect();
        base.into_iter().map(move |o| match side {
            Side::Right => o + anchor,
            Side::Left => anchor - o - a,
        })
    }

    /// Calls `visit` on every pyramid of size `m` in `class`, in the
    /// documented deterministic order.
    ///
    /// Right/left classes follow the string order of their positive strings
    /// (`1` before `0`). General pyramids are ordered by their decomposition:
    /// first factor size descending, then the factor's string order, then
    /// the next anchor ascending, and so on recursively.
    pub fn visit<F: FnMut(&Pyramid)>(&self, m: usize, class: PyramidClass, mut visit: F) {
        assert!(m >= 1 && m < self.right.len(), "size outside generator range");
        match class {
            PyramidClass::RightS(s) | PyramidClass::LeftS(s) => {
                let side = if matches!(class, PyramidClass::RightS(_)) {
                    Side::Right
                } else {
                    Side::Left
                };
                for base in &self.right[m] {
                    let heap = Heap::from_drops(self.a, self.place(base, side, s));
                    visit(&Pyramid(heap));
                }
            }
            PyramidClass::General => {
                let mut stack: Vec<(Side, i64, &[Piece])> = Vec::new();
                self.splice(m, Side::Right, 0, &mut stack, &mut visit);
            }
        }
    }

    fn splice<'s, F: FnMut(&Pyramid)>(
        &'s self,
        remaining: usize,
        side: Side,
        anchor: i64,
        stack: &mut Vec<(Side, i64, &'s [Piece])>,
        visit: &mut F,
    ) {
        let a = self.a.i();
        for size in (1..=remaining).rev() {
            for base in &self.right[size] {
                stack.push((side, anchor, base));
                if size == remaining {
                    let mut heap = Heap::empty(self.a);
                    for &(sd, an, b) in stack.iter() {
                        for o in self.place(b, sd, an) {
                            heap.drop_in_place(o);
                        }
                    }
                    visit(&Pyramid(heap));
                } else {
                    let next: Vec<i64> = match side {
                        Side::Right => (anchor + 1..anchor + a).collect(),
                        Side::Left => (anchor - a + 1..anchor).collect(),
                    };
                    for s in next {
                        self.splice(remaining - size, side.flip(), s, stack, visit);
                    }
                }
                stack.pop();
            }
        }
    }
}

/// Visits every pyramid of size `m` in `class`, refusing runs whose size
/// exceeds `budget`.
pub fn visit_pyramids<F: FnMut(&Pyramid)>(
    a: PieceLength,
    m: usize,
    class: PyramidClass,
    budget: u64,
    visit: F,
) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("pyramid size must be at least 1".into()));
    }
    check_budget(a, m, class, budget)?;
    PyramidEnumerator::new(a, m)?.visit(m, class, visit);
    Ok(())
}

pub fn enumerate_pyramids(a: PieceLength, m: usize, class: PyramidClass, budget: u64) -> Result<Vec<Pyramid>> {
    let mut out = Vec::new();
    visit_pyramids(a, m, class, budget, |p| out.push(p.clone()))?;
    Ok(out)
}

/// All normalized pyramids of size `m`, found by dropping one more piece at
/// every reachable offset onto each pyramid of size `m - 1` and discarding
/// repeats. Returned sorted by piece list.
pub fn bruteforce_pyramids(a: PieceLength, m: usize, budget: u64) -> Result<Vec<Pyramid>> {
    if m == 0 {
        return Err(Error::InvalidArgument("pyramid size must be at least 1".into()));
    }
    let mut layer: Vec<Heap> = vec![Heap::from_drops(a, [0])];
    for _ in 1..m {
        let mut seen: HashSet<Vec<Piece>> = HashSet::new();
        let mut next = Vec::new();
        for h in &layer {
            let lo = h.min_offset().unwrap_or(0) - a.i() + 1;
            let hi = h.max_offset().unwrap_or(0) + a.i() - 1;
            for o in lo..=hi {
                let child = h.drop_piece(o);
                if seen.insert(child.pieces().to_vec()) {
                    next.push(child);
                }
            }
        }
        if next.len() as u64 > budget {
            return Err(Error::budget("brute-force pyramid layer", next.len(), budget));
        }
        layer = next;
    }
    let mut out: Vec<Pyramid> = layer.into_iter().map(Pyramid).collect();
    out.sort_by(|x, y| x.pieces().cmp(y.pieces()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::binomial;
    use crate::DEFAULT_BUDGET;

    fn a(n: u32) -> PieceLength {
        PieceLength::new(n).unwrap()
    }

    fn count(a_: u32, m: usize, class: PyramidClass) -> usize {
        enumerate_pyramids(a(a_), m, class, DEFAULT_BUDGET).unwrap().len()
    }

    #[test]
    fn ten_dimer_pyramids_of_size_three() {
        assert_eq!(count(2, 3, PyramidClass::General), 10);
    }

    #[test]
    fn size_one_is_single_piece() {
        for n in 2..6 {
            let v = enumerate_pyramids(a(n), 1, PyramidClass::General, DEFAULT_BUDGET).unwrap();
            assert_eq!(v, vec![Pyramid::single(a(n), 0)]);
        }
    }

    #[test]
    fn a3_size_two_bruteforce() {
        // oracle first: drops at every offset, dedup
        let brute = bruteforce_pyramids(a(3), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(brute.len(), 5);
        assert_eq!(count(3, 2, PyramidClass::General), 5);
    }

    #[test]
    fn generators_agree_as_sets() {
        for (n, max_m) in [(2u32, 7usize), (3, 5), (4, 4), (5, 4)] {
            for m in 1..=max_m {
                let mut fast = enumerate_pyramids(a(n), m, PyramidClass::General, DEFAULT_BUDGET).unwrap();
                let brute = bruteforce_pyramids(a(n), m, DEFAULT_BUDGET).unwrap();
                fast.sort_by(|x, y| x.pieces().cmp(y.pieces()));
                assert_eq!(fast, brute, "a={n} m={m}");
                let expect = binomial(n as u64 * m as u64 - 1, m as u64 - 1);
                assert_eq!(BigUint::from(brute.len()), expect);
            }
        }
    }

    #[test]
    fn right_and_left_counts_are_fuss_catalan() {
        assert_eq!(count(2, 3, PyramidClass::RightS(0)), 5);
        assert_eq!(count(3, 4, PyramidClass::RightS(0)), 55);
        assert_eq!(count(3, 4, PyramidClass::LeftS(0)), 55);
    }

    #[test]
    fn classes_are_what_they_claim() {
        let al = a(3);
        for p in enumerate_pyramids(al, 4, PyramidClass::RightS(2), DEFAULT_BUDGET).unwrap() {
            assert!(p.is_right_pyramid(2));
        }
        for p in enumerate_pyramids(al, 4, PyramidClass::LeftS(-1), DEFAULT_BUDGET).unwrap() {
            assert!(p.is_left_pyramid(-1));
        }
    }

    #[test]
    fn mirror_maps_right_onto_left() {
        let al = a(3);
        let right = enumerate_pyramids(al, 4, PyramidClass::RightS(0), DEFAULT_BUDGET).unwrap();
        let left: HashSet<_> = enumerate_pyramids(al, 4, PyramidClass::LeftS(0), DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .collect();
        let mirrored: HashSet<_> = right.iter().map(|p| p.reflect(0)).collect();
        assert_eq!(mirrored, left);
        for p in &right {
            assert_eq!(&p.reflect(0).reflect(0), p);
        }
    }

    #[test]
    fn order_is_deterministic() {
        let x = enumerate_pyramids(a(3), 4, PyramidClass::General, DEFAULT_BUDGET).unwrap();
        let y = enumerate_pyramids(a(3), 4, PyramidClass::General, DEFAULT_BUDGET).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_pyramids(a(2), 12, PyramidClass::General, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn size_zero_rejected() {
        assert!(enumerate_pyramids(a(2), 0, PyramidClass::General, 10).is_err());
    }
}
