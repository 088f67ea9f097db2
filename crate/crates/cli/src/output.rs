use clap::ValueEnum;
use serde::Serialize;

use pyramids::Piece;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    /// `n a(n)` per line
    Bfile,
}

/// Inclusive integer range written `n` or `lo..hi`. `lo > hi` is empty.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    let r = match s.split_once("..") {
        Some((lo, hi)) => Range {
            lo: num(lo)?,
            hi: num(hi.strip_prefix('=').unwrap_or(hi))?,
        },
        None => {
            let n = num(s)?;
            Range { lo: n, hi: n }
        }
    };
    if r.lo < 0 {
        return Err(format!("{s}: values must be non-negative"));
    }
    Ok(r)
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

pub fn piece_list(pieces: &[Piece]) -> Vec<(i64, u32)> {
    pieces.iter().map(|&p| p.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), Range { lo: 3, hi: 3 });
        assert_eq!(parse_range("2..5").unwrap(), Range { lo: 2, hi: 5 });
        assert_eq!(parse_range("2..=5").unwrap(), Range { lo: 2, hi: 5 });
        assert_eq!(parse_range("5..2").unwrap().iter().count(), 0);
        assert!(parse_range("x").is_err());
        assert!(parse_range("-1..2").is_err());
    }
}
