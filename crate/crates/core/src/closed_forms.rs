//! Exact parity-split cubic formulas for the Wiener index of `C_n`,
//! `H_{n,1,2}`, `H_{n,2,2}` and `H_{n,1,3}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::invariants::two_vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClosedFormId {
    C,
    H112,
    H122,
    H113,
}

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 4] = [
        ClosedFormId::C,
        ClosedFormId::H112,
        ClosedFormId::H122,
        ClosedFormId::H113,
    ];

    pub fn min_order(self) -> u64 {
        match self {
            ClosedFormId::C => 3,
            ClosedFormId::H112 => 4,
            ClosedFormId::H122 => 5,
            ClosedFormId::H113 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ClosedFormId::C => "C",
            ClosedFormId::H112 => "H112",
            ClosedFormId::H122 => "H122",
            ClosedFormId::H113 => "H113",
        }
    }

    pub fn family(self, n: usize) -> FamilySpec {
        match self {
            ClosedFormId::C => FamilySpec::Cycle { n },
            ClosedFormId::H112 => FamilySpec::Theta { n, p: 1, q: 2 },
            ClosedFormId::H122 => FamilySpec::Theta { n, p: 2, q: 2 },
            ClosedFormId::H113 => FamilySpec::Theta { n, p: 1, q: 3 },
        }
    }

    /// Coefficients `[n^3, n^2, n, 1]` of eight times the index, for odd and
    /// even `n`.
    fn coefficients(self) -> ([i64; 4], [i64; 4]) {
        match self {
            ClosedFormId::C => ([1, 0, -1, 0], [1, 0, 0, 0]),
            ClosedFormId::H112 => ([1, -1, 3, -3], [1, -1, 2, 0]),
            ClosedFormId::H122 => ([1, -1, -1, 17], [1, -1, -2, 16]),
            ClosedFormId::H113 => ([1, -2, 11, -18], [1, -2, 12, -16]),
        }
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

impl FromStr for ClosedFormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedFormId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

fn exact_div(value: i128, divisor: i128, family: &'static str, n: u64) -> Result<u64> {
    if value % divisor != 0 || value < 0 {
        return Err(Error::InexactDivision {
            family,
            n,
            divisor: divisor as u64,
        });
    }
    Ok((value / divisor) as u64)
}

/// Wiener index of the family member of order `n` from its closed form.
pub fn closed_form(id: ClosedFormId, n: u64) -> Result<u64> {
    if n < id.min_order() {
        return Err(Error::InvalidParameters(format!(
            "{id} closed form needs n >= {}, got {n}",
            id.min_order()
        )));
    }
    let (odd, even) = id.coefficients();
    let c = if n % 2 == 1 { odd } else { even };
    let x = n as i128;
    let eight_w = c[0] as i128 * x * x * x + c[1] as i128 * x * x + c[2] as i128 * x + c[3] as i128;
    exact_div(eight_w, 8, id.label(), n)
}

/// `(n / 2) * <2_n>`, the Wiener index of `C_n` from its distance vector.
pub fn cycle_identity_rhs(n: u64) -> Result<u64> {
    let angle = crate::invariants::angle_value(&two_vector(n as usize)?) as i128;
    exact_div(n as i128 * angle, 2, "C", n)
}
