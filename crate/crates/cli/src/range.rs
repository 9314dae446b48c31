use std::ops::RangeInclusive;
use std::str::FromStr;

/// Inclusive order range: `7`, `4..9`, `4..=9` or `4-9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    pub lo: usize,
    pub hi: usize,
}

impl OrderRange {
    pub fn iter(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad order {t:?} in range {s:?}"))
        };
        let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = s.split_once('-') {
            (num(a)?, num(b)?)
        } else {
            let n = num(s)?;
            (n, n)
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(OrderRange { lo, hi })
    }
}
