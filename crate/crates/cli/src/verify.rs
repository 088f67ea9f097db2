use clap::{Args, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use pyramids::bijections::{
    all_admissible_compositions, all_dyck_paths, closed_walks_starting_right, compose_admissible, decode_pyramid_a2,
    dyck_to_tree, encode_pyramid_a2, factorize_walk, positive_strings, right_pyramid_to_string,
    string_to_right_pyramid, string_to_walk, tree_to_dyck, walk_to_path,
};
use pyramids::heap::{enumerate_pyramids, visit_pyramids};
use pyramids::lego::{count_flat_exhaustive, count_flat_rows};
use pyramids::series::{
    count_a, count_b, fixed_point_residual, series_a_closed, series_a_recursive, series_b_bivariate, series_b_closed,
    series_b_from_a, series_c_from_b, sum_over_compositions_b,
};
use pyramids::transfer::{a3_recursion_check, compute_a_r, verify_char_poly, verify_spectral_witness};
use pyramids::{PieceLength, PyramidClass, DEFAULT_BUDGET};

use crate::output::{self, parse_range, Format, Range, SCHEMA_VERSION};
use crate::{piece_length, CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Pyramid counts against binom(am-1, m-1).
    Theorem1,
    /// Right-pyramid counts against the Fuss-Catalan numbers.
    Corollary,
    /// String, pyramid, path and tree codecs.
    Roundtrips,
    /// Unique admissible composition of closed walks.
    Factorization,
    /// Transfer-matrix identities (a >= 3).
    Transfer,
    /// Exact series identities.
    Series,
    /// Left-width histograms against the bivariate series.
    Widths,
    /// Both flat-structure counters agree and dominate the pyramid count.
    Lego,
    /// Everything above with default sizes.
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Piece lengths (default 2..5, or 3..8 for the transfer suite).
    #[arg(long, value_parser = parse_range)]
    a: Option<Range>,
    /// Sizes (defaults depend on the suite and on a).
    #[arg(long, value_parser = parse_range)]
    m: Option<Range>,
    /// Largest r for the transfer suite.
    #[arg(long, default_value_t = 12)]
    r: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Serialize)]
struct Check {
    suite: Suite,
    name: String,
    passed: bool,
}

struct Runner<'a> {
    args: &'a VerifyArgs,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn record(&mut self, suite: Suite, name: String, passed: bool) {
        self.checks.push(Check { suite, name, passed });
    }

    fn a_values(&self, default: Range) -> Vec<u32> {
        self.args.a.unwrap_or(default).iter().map(|a| a as u32).collect()
    }

    fn m_values(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.args.m {
            Some(r) => r.iter().map(|m| m as usize).collect(),
            None => default.collect(),
        }
    }

    fn run(&mut self, suite: Suite) -> CliResult<()> {
        let budget = self.args.budget;
        match suite {
            Suite::Theorem1 | Suite::Corollary => {
                for av in self.a_values(Range { lo: 2, hi: 5 }) {
                    let a = piece_length(av)?;
                    for m in self.m_values(1..=grid_max(av)) {
                        let (class, want) = if suite == Suite::Theorem1 {
                            (PyramidClass::General, count_b(a, m))
                        } else {
                            (PyramidClass::RightS(0), count_a(a, m))
                        };
                        let mut n = 0u64;
                        visit_pyramids(a, m, class, budget, |_| n += 1)?;
                        self.record(suite, format!("a={av} m={m}: {n} = {want}"), BigUint::from(n) == want);
                    }
                }
            }
            Suite::Roundtrips => {
                for av in self.a_values(Range { lo: 2, hi: 4 }) {
                    let a = piece_length(av)?;
                    for m in self.m_values(1..=(16 / av as usize).min(5)) {
                        self.roundtrips(a, m, budget)?;
                    }
                }
            }
            Suite::Factorization => {
                for av in self.a_values(Range { lo: 3, hi: 4 }) {
                    let a = piece_length(av)?;
                    for m in self.m_values(1..=12 / av as usize) {
                        let walks = closed_walks_starting_right(a, m);
                        let ok = walks.iter().all(|w| {
                            let Ok(c) = factorize_walk(w) else { return false };
                            c.validate().is_ok()
                                && compose_admissible(&c).as_ref() == Ok(w)
                                && all_admissible_compositions(w) == vec![c]
                        });
                        self.record(
                            suite,
                            format!("a={av} m={m}: {} walks factor uniquely", walks.len()),
                            ok,
                        );
                    }
                }
            }
            Suite::Transfer => {
                for av in self.a_values(Range { lo: 3, hi: 8 }) {
                    let a = piece_length(av)?;
                    let ok = (1..=self.args.r)
                        .all(|r| compute_a_r(a, r).ok() == Some(BigInt::from(av - 1).pow(r as u32 - 1)));
                    self.record(suite, format!("a={av}: a_r = (a-1)^(r-1) for r <= {}", self.args.r), ok);
                    self.record(
                        suite,
                        format!("a={av}: characteristic polynomial"),
                        verify_char_poly(a)?,
                    );
                    self.record(
                        suite,
                        format!("a={av}: eigenvector and kernel chain"),
                        verify_spectral_witness(a)?.all(),
                    );
                }
                self.record(suite, "a=3 recursion".into(), a3_recursion_check(self.args.r));
            }
            Suite::Series => {
                let order = self.args.m.map_or(200, |r| r.hi as usize);
                for av in self.a_values(Range { lo: 2, hi: 5 }) {
                    let a = piece_length(av)?;
                    self.series(a, order);
                }
            }
            Suite::Widths => {
                for av in self.a_values(Range { lo: 2, hi: 3 }) {
                    let a = piece_length(av)?;
                    let ms = self.m_values(1..=if av == 2 { 9 } else { 7 });
                    let table = series_b_bivariate(a, ms.iter().copied().max().unwrap_or(0));
                    for m in ms {
                        let mut hist: Vec<BigUint> = Vec::new();
                        visit_pyramids(a, m, PyramidClass::General, budget, |p| {
                            let n = p.left_width().expect("enumerated pyramids are normalized") as usize;
                            if hist.len() <= n {
                                hist.resize(n + 1, BigUint::zero());
                            }
                            hist[n] += 1u32;
                        })?;
                        let ok = (0..hist.len().max(table.rows[m].len()))
                            .all(|n| hist.get(n).cloned().unwrap_or_default() == table.get(m, n));
                        self.record(suite, format!("a={av} m={m}: left-width histogram"), ok);
                    }
                }
            }
            Suite::Lego => {
                for av in self.a_values(Range { lo: 2, hi: 3 }) {
                    let a = piece_length(av)?;
                    for m in self.m_values(1..=if av == 2 { 6 } else { 5 }) {
                        let x = count_flat_exhaustive(a, m, budget)?;
                        let y = count_flat_rows(a, m)?;
                        let ok = x == y && x >= count_b(a, m);
                        self.record(suite, format!("a={av} m={m}: L = {x} (rows: {y})"), ok);
                    }
                }
            }
            Suite::All => {
                for s in [
                    Suite::Theorem1,
                    Suite::Corollary,
                    Suite::Roundtrips,
                    Suite::Factorization,
                    Suite::Transfer,
                    Suite::Series,
                    Suite::Widths,
                    Suite::Lego,
                ] {
                    self.run(s)?;
                }
            }
        }
        Ok(())
    }

    fn roundtrips(&mut self, a: PieceLength, m: usize, budget: u64) -> CliResult<()> {
        let av = a.get();
        let right = enumerate_pyramids(a, m, PyramidClass::RightS(0), budget)?;
        let ok = right.iter().all(|p| {
            right_pyramid_to_string(p)
                .and_then(|s| string_to_right_pyramid(&s))
                .as_ref()
                == Ok(p)
        });
        self.record(
            Suite::Roundtrips,
            format!("a={av} m={m}: right pyramid -> string -> pyramid"),
            ok,
        );
        let strings = positive_strings(a, m);
        let ok = strings.iter().all(|s| {
            string_to_right_pyramid(s)
                .and_then(|p| right_pyramid_to_string(&p))
                .as_ref()
                == Ok(s)
        });
        self.record(
            Suite::Roundtrips,
            format!("a={av} m={m}: string -> pyramid -> string"),
            ok,
        );
        let ok = all_dyck_paths(a, m)
            .iter()
            .all(|p| dyck_to_tree(p).and_then(|t| tree_to_dyck(&t, a)).as_ref() == Ok(p))
            && strings
                .iter()
                .all(|s| walk_to_path(&string_to_walk(s)).is_generalized_dyck());
        self.record(Suite::Roundtrips, format!("a={av} m={m}: path -> tree -> path"), ok);
        if av == 2 {
            let all = enumerate_pyramids(a, m, PyramidClass::General, budget)?;
            let ok = all
                .iter()
                .all(|p| encode_pyramid_a2(p).and_then(|s| decode_pyramid_a2(&s)).as_ref() == Ok(p));
            self.record(Suite::Roundtrips, format!("a=2 m={m}: full pyramid codec"), ok);
        }
        Ok(())
    }

    fn series(&mut self, a: PieceLength, order: usize) {
        let av = a.get();
        let closed_a = series_a_closed(a, order);
        let closed_b = series_b_closed(a, order);
        let rec = series_a_recursive(a, order);
        self.record(
            Suite::Series,
            format!("a={av}: A recursion, M={order}"),
            rec == closed_a,
        );
        self.record(
            Suite::Series,
            format!("a={av}: B from A, M={order}"),
            series_b_from_a(&rec) == closed_b,
        );
        let upto = order.min(30);
        let ok = (1..=upto).all(|m| sum_over_compositions_b(a, m) == closed_b.coeffs[m]);
        self.record(Suite::Series, format!("a={av}: composition sum, m <= {upto}"), ok);
        let biv = series_b_bivariate(a, order);
        let c = series_c_from_b(&closed_b);
        let ok = (1..=order).all(|m| biv.row_sum(m) == closed_b.coeffs[m] && biv.first_moment(m) == c.coeffs[m]);
        self.record(Suite::Series, format!("a={av}: bivariate sums and C, M={order}"), ok);
        let ok = fixed_point_residual(&rec).iter().all(Zero::is_zero);
        self.record(Suite::Series, format!("a={av}: fixed-point residual, M={order}"), ok);
    }
}

fn grid_max(a: u32) -> usize {
    match a {
        2 => 10,
        3 => 8,
        4 => 7,
        5 => 6,
        _ => 4,
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let mut runner = Runner {
        args,
        checks: Vec::new(),
    };
    runner.run(args.suite)?;
    let passed = runner.checks.iter().all(|c| c.passed);
    let text = match args.format {
        Format::Json => output::json(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "suite": args.suite,
            "passed": passed,
            "checks": runner.checks,
        })),
        _ => runner
            .checks
            .iter()
            .map(|c| format!("{} {}\n", if c.passed { "pass" } else { "FAIL" }, c.name))
            .collect(),
    };
    print!("{text}");
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} of {} checks failed",
            runner.checks.iter().filter(|c| !c.passed).count(),
            runner.checks.len()
        )))
    }
}
