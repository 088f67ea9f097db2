//! Admissible compositions of walks.
//!
//! Walks use right-steps of length `a-1` and left-steps of length 1. A walk
//! from 0 to `j` in `0..=a-2` that starts with a right-step is a unique
//! concatenation of
//!
//! * `P_ii(m)`: positive walk from `i` back to `i`, never below `i`;
//! * `N_ii(m)`: negative walk from `i` back to `i`, never above `i`;
//! * `T_ij`: `i - j` left-steps, `0 <= j < i <= a-2`;
//! * `U_ik`: deletes the last `k - i` left-steps of the preceding `P_ii`,
//!
//! where only the letter pairs `PN NP PT TP NT TN PU UN` may be adjacent.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::string::{Step, Walk};
use crate::error::{Error, Result};
use crate::heap::PieceLength;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    P,
    N,
    T,
    U,
}

impl Letter {
    fn may_follow(prev: Letter, next: Letter) -> bool {
        use Letter::*;
        matches!(
            (prev, next),
            (P, N) | (N, P) | (P, T) | (T, P) | (N, T) | (T, N) | (P, U) | (U, N)
        )
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One factor. `P` and `N` carry their full step sequence; for a `P` that is
/// followed by `U` this includes the left-steps the `U` removes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompositionFactor {
    P { index: i64, steps: Vec<Step> },
    N { index: i64, steps: Vec<Step> },
    T { from: i64, to: i64 },
    U { from: i64, to: i64 },
}

impl CompositionFactor {
    pub fn letter(&self) -> Letter {
        match self {
            CompositionFactor::P { .. } => Letter::P,
            CompositionFactor::N { .. } => Letter::N,
            CompositionFactor::T { .. } => Letter::T,
            CompositionFactor::U { .. } => Letter::U,
        }
    }

    fn start(&self) -> i64 {
        match self {
            CompositionFactor::P { index, .. } | CompositionFactor::N { index, .. } => *index,
            CompositionFactor::T { from, .. } | CompositionFactor::U { from, .. } => *from,
        }
    }

    fn end(&self) -> i64 {
        match self {
            CompositionFactor::P { index, .. } | CompositionFactor::N { index, .. } => *index,
            CompositionFactor::T { to, .. } | CompositionFactor::U { to, .. } => *to,
        }
    }

    /// Number of right-steps of a `P` or `N` factor.
    pub fn size(&self) -> Option<usize> {
        match self {
            CompositionFactor::P { steps, .. } | CompositionFactor::N { steps, .. } => {
                Some(steps.iter().filter(|&&s| s == Step::Right).count())
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleComposition {
    pub a: PieceLength,
    pub factors: Vec<CompositionFactor>,
}

impl AdmissibleComposition {
    pub fn word(&self) -> String {
        self.factors.iter().map(|f| f.letter().to_string()).collect()
    }

    /// Checks factor shapes, index ranges, endpoint chaining from 0, the
    /// adjacency rule, and that every `U` has enough left-steps to delete.
    pub fn validate(&self) -> Result<()> {
        let a = self.a;
        let top = a.i() - 2;
        let bad = |msg: String| Err(Error::InvalidComposition(msg));
        let mut at = 0i64;
        for (n, f) in self.factors.iter().enumerate() {
            if f.start() != at {
                return bad(format!(
                    "factor {} starts at {} but walk is at {}",
                    n + 1,
                    f.start(),
                    at
                ));
            }
            if let Some(prev) = n.checked_sub(1).map(|p| self.factors[p].letter()) {
                if !Letter::may_follow(prev, f.letter()) {
                    return bad(format!("{}{} is not an admissible pair", prev, f.letter()));
                }
            }
            match f {
                CompositionFactor::P { index, steps } | CompositionFactor::N { index, steps } => {
                    if !(0..=top).contains(index) {
                        return bad(format!("index {index} outside 0..={top}"));
                    }
                    let w = Walk::new(a, *index, steps.clone());
                    let ok = w.right_steps() >= 1
                        && w.end() == *index
                        && if f.letter() == Letter::P {
                            w.is_positive()
                        } else {
                            w.is_negative()
                        };
                    if !ok {
                        return bad(format!("factor {} is not a valid {}", n + 1, f.letter()));
                    }
                }
                CompositionFactor::T { from, to } => {
                    if !(0 <= *to && to < from && *from <= top) {
                        return bad(format!("T_{from}{to} out of range"));
                    }
                }
                CompositionFactor::U { from, to } => {
                    if !(0 <= *from && from < to && *to <= top) {
                        return bad(format!("U_{from}{to} out of range"));
                    }
                    let Some(CompositionFactor::P { steps, .. }) = n.checked_sub(1).map(|p| &self.factors[p]) else {
                        return bad("U must follow a P".into());
                    };
                    let trailing = steps.iter().rev().take_while(|&&s| s == Step::Left).count();
                    if (trailing as i64) < to - from {
                        return bad(format!(
                            "U_{from}{to} needs {} trailing left-steps, P has {trailing}",
                            to - from
                        ));
                    }
                }
            }
            at = f.end();
        }
        Ok(())
    }
}

/// Concatenates the factors, with each `U_ik` deleting `k - i` trailing
/// left-steps of the preceding `P`.
pub fn compose_admissible(c: &AdmissibleComposition) -> Result<Walk> {
    c.validate()?;
    let mut steps = Vec::new();
    for f in &c.factors {
        match f {
            CompositionFactor::P { steps: s, .. } | CompositionFactor::N { steps: s, .. } => steps.extend_from_slice(s),
            CompositionFactor::T { from, to } => steps.extend(std::iter::repeat_n(Step::Left, (from - to) as usize)),
            CompositionFactor::U { from, to } => steps.truncate(steps.len() - (to - from) as usize),
        }
    }
    Ok(Walk::new(c.a, 0, steps))
}

/// Number of `P`/`N` factors and their sizes, in order.
pub fn composition_profile(c: &AdmissibleComposition) -> (usize, Vec<usize>) {
    let sizes: Vec<usize> = c.factors.iter().filter_map(CompositionFactor::size).collect();
    (sizes.len(), sizes)
}

/// The unique admissible composition of a walk from 0 to `j`, `0 <= j <= a-2`.
///
/// Works from the right. A trailing right-step closes an `N_jj` that starts
/// just after the last visit above `j`. A trailing left-step is handled by
/// locating the last right-step out of the negative half-line and parsing
/// what follows into maximal `P` runs separated by `T` runs, closed by a
/// `U` when the final `P` stops above `j`; the walk up to that step is then
/// the trailing-right-step case. A walk that never goes negative is
/// `P_00` (plus `U_0j` when `j > 0`).
///
/// Walks that start with a left-step and come back over 0 without landing on
/// it have no composition and produce [`Error::NoComposition`].
pub fn factorize_walk(w: &Walk) -> Result<AdmissibleComposition> {
    let a = w.a;
    if w.start != 0 {
        return Err(Error::InvalidArgument(format!("walk starts at {}, not 0", w.start)));
    }
    let j_end = w.end();
    if !(0..=a.i() - 2).contains(&j_end) {
        return Err(Error::InvalidArgument(format!(
            "walk ends at {j_end}, outside 0..={}",
            a.i() - 2
        )));
    }
    let steps = &w.steps;
    let h = w.heights();
    // factors collected back to front
    let mut rev: Vec<CompositionFactor> = Vec::new();
    let mut end = steps.len();
    let mut j = j_end;
    while end > 0 {
        if steps[end - 1] == Step::Right {
            let start = match (0..end).rev().find(|&i| h[i] > j) {
                Some(i) => i + 1,
                None if j == 0 => 0,
                None => {
                    return Err(Error::NoComposition(format!(
                        "negative part ending at step {end} never passes {j} from above"
                    )))
                }
            };
            debug_assert_eq!(h[start], j);
            rev.push(CompositionFactor::N {
                index: j,
                steps: steps[start..end].to_vec(),
            });
            end = start;
            continue;
        }
        let Some(last_neg) = (0..end).rev().find(|&i| h[i] < 0) else {
            // never negative
            let mut body = steps[..end].to_vec();
            if j > 0 {
                body.extend(std::iter::repeat_n(Step::Left, j as usize));
                rev.push(CompositionFactor::U { from: 0, to: j });
            }
            rev.push(CompositionFactor::P { index: 0, steps: body });
            break;
        };
        let resume = last_neg + 1;
        let j1 = h[resume];
        let mut tail = Vec::new();
        let mut p = resume;
        let mut c = j1;
        while p < end {
            if steps[p] == Step::Left {
                let q = (p..end).find(|&q| steps[q] != Step::Left).unwrap_or(end);
                let to = c - (q - p) as i64;
                tail.push(CompositionFactor::T { from: c, to });
                c = to;
                p = q;
                continue;
            }
            match (p + 1..=end).find(|&r| h[r] < c) {
                Some(dip) => {
                    tail.push(CompositionFactor::P {
                        index: c,
                        steps: steps[p..dip - 1].to_vec(),
                    });
                    p = dip - 1;
                }
                None => {
                    let mut body = steps[p..end].to_vec();
                    let over = h[end] - c;
                    body.extend(std::iter::repeat_n(Step::Left, over as usize));
                    tail.push(CompositionFactor::P { index: c, steps: body });
                    if over > 0 {
                        tail.push(CompositionFactor::U { from: c, to: h[end] });
                    }
                    p = end;
                }
            }
        }
        rev.extend(tail.into_iter().rev());
        end = resume;
        j = j1;
    }
    rev.reverse();
    let comp = AdmissibleComposition { a, factors: rev };
    debug_assert!(comp.validate().is_ok(), "{:?}", comp);
    Ok(comp)
}

/// Every admissible composition of `w`, found by trying every factor at
/// every position. Exponential; meant as an oracle on short walks.
pub fn all_admissible_compositions(w: &Walk) -> Vec<AdmissibleComposition> {
    struct Search<'w> {
        a: PieceLength,
        steps: &'w [Step],
        h: Vec<i64>,
        out: Vec<AdmissibleComposition>,
    }

    impl Search<'_> {
        fn go(&mut self, p: usize, prev: Option<Letter>, acc: &mut Vec<CompositionFactor>) {
            let n = self.steps.len();
            if p == n {
                self.out.push(AdmissibleComposition {
                    a: self.a,
                    factors: acc.clone(),
                });
                return;
            }
            let c = self.h[p];
            let top = self.a.i() - 2;
            let allowed = |next: Letter| prev.is_none_or(|pl| Letter::may_follow(pl, next));
            let in_range = (0..=top).contains(&c);
            if in_range && allowed(Letter::P) && prev != Some(Letter::U) {
                for q in p + 1..=n {
                    if self.h[q] < c {
                        break;
                    }
                    let seg = self.steps[p..q].to_vec();
                    if self.h[q] == c {
                        acc.push(CompositionFactor::P {
                            index: c,
                            steps: seg.clone(),
                        });
                        self.go(q, Some(Letter::P), acc);
                        acc.pop();
                    } else if self.h[q] <= top {
                        let k = self.h[q];
                        let mut full = seg;
                        full.extend(std::iter::repeat_n(Step::Left, (k - c) as usize));
                        acc.push(CompositionFactor::P { index: c, steps: full });
                        acc.push(CompositionFactor::U { from: c, to: k });
                        self.go(q, Some(Letter::U), acc);
                        acc.pop();
                        acc.pop();
                    }
                }
            }
            if in_range && allowed(Letter::N) {
                for q in p + 1..=n {
                    if self.h[q] > c {
                        break;
                    }
                    if self.h[q] == c {
                        acc.push(CompositionFactor::N {
                            index: c,
                            steps: self.steps[p..q].to_vec(),
                        });
                        self.go(q, Some(Letter::N), acc);
                        acc.pop();
                    }
                }
            }
            if in_range && prev.is_some() && allowed(Letter::T) {
                let mut q = p;
                while q < n && self.steps[q] == Step::Left && c - ((q - p) as i64 + 1) >= 0 {
                    q += 1;
                    acc.push(CompositionFactor::T {
                        from: c,
                        to: c - (q - p) as i64,
                    });
                    self.go(q, Some(Letter::T), acc);
                    acc.pop();
                }
            }
        }
    }

    if w.start != 0 {
        return Vec::new();
    }
    let mut s = Search {
        a: w.a,
        steps: &w.steps,
        h: w.heights(),
        out: Vec::new(),
    };
    s.go(0, None, &mut Vec::new());
    s.out
}

/// All walks of `a*m` steps from 0 back to 0 whose first step is a right-step.
pub fn closed_walks_starting_right(a: PieceLength, m: usize) -> Vec<Walk> {
    fn go(a: PieceLength, left_r: usize, left_l: usize, steps: &mut Vec<Step>, out: &mut Vec<Walk>) {
        if left_r == 0 && left_l == 0 {
            out.push(Walk::new(a, 0, steps.clone()));
            return;
        }
        if left_r > 0 {
            steps.push(Step::Right);
            go(a, left_r - 1, left_l, steps, out);
            steps.pop();
        }
        if left_l > 0 {
            steps.push(Step::Left);
            go(a, left_r, left_l - 1, steps, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let lefts = (a.get() as usize - 1) * m;
    go(a, m - 1, lefts, &mut vec![Step::Right], &mut out);
    out
}
