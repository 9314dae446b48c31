//! Constructors for the named graphs: cycles, theta graphs `H_{n,p,q}`, the
//! two-chord cycles `I_{n,i}`, the exceptional graphs on 6 and 8 vertices,
//! and `H_{n,2,2}^+`.
//!
//! Theta graphs use hubs `0` and `1`, then the internal vertices of the
//! first, second and third path numbered consecutively. Constructions that
//! start from a Hamiltonian cycle `x_1 .. x_n` map `x_j` to vertex `j - 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exceptional {
    /// `I_{6,4}`: two triangles joined by two independent edges.
    G6First,
    /// `H_{6,1,3}` plus `x_1 x_3`.
    G6Second,
    /// `H_{6,1,3}` plus `x_2 x_5`.
    G6Third,
    /// `H_{8,1,3}` plus `x_5 x_8`.
    G8First,
}

impl Exceptional {
    pub const ALL: [Exceptional; 4] = [
        Exceptional::G6First,
        Exceptional::G6Second,
        Exceptional::G6Third,
        Exceptional::G8First,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Exceptional::G6First => "g6-1",
            Exceptional::G6Second => "g6-2",
            Exceptional::G6Third => "g6-3",
            Exceptional::G8First => "g8-1",
        }
    }

    pub fn order(self) -> usize {
        match self {
            Exceptional::G8First => 8,
            _ => 6,
        }
    }

    pub fn from_key(key: &str) -> Result<Self> {
        Exceptional::ALL
            .into_iter()
            .find(|e| e.key() == key)
            .ok_or_else(|| Error::UnknownFamily(key.to_string()))
    }
}

/// A named parametric construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilySpec {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Theta {
        n: usize,
        p: usize,
        q: usize,
    },
    IChord {
        n: usize,
        i: usize,
    },
    Exceptional(Exceptional),
    H22Plus {
        n: usize,
    },
    /// `H_{n,1,q}`, `3 <= q <= floor(n/2)`.
    ScriptH {
        n: usize,
        q: usize,
    },
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn theta_edges(n: usize, p: usize, q: usize) -> Vec<(usize, usize)> {
    let r = n + 1 - p - q;
    let mut edges = Vec::with_capacity(n + 1);
    let mut next = 2;
    for len in [p, q, r] {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    edges
}

/// `H_{n,1,3}` on the Hamiltonian cycle `x_1..x_n` with chord `x_1 x_4`.
fn h13_cycle_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = cycle_edges(n);
    edges.push((0, 3));
    edges
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Cycle { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Theta { n, .. }
            | FamilySpec::IChord { n, .. }
            | FamilySpec::H22Plus { n }
            | FamilySpec::ScriptH { n, .. } => n,
            FamilySpec::Exceptional(e) => e.order(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Cycle { n } if n < 3 => {
                Err(invalid(format!("cycle needs n >= 3, got {n}")))
            }
            FamilySpec::Complete { n } if n < 1 => {
                Err(invalid("complete graph needs n >= 1".into()))
            }
            FamilySpec::Theta { n, p, q } => {
                if p >= 1 && p <= q && q > 1 && q + p <= n && q <= n + 1 - p - q {
                    Ok(())
                } else {
                    Err(invalid(format!(
                        "H_{{{n},{p},{q}}} needs 1 <= p <= q <= n-p-q+1 and q > 1"
                    )))
                }
            }
            FamilySpec::IChord { n, i } => {
                if n >= 4 && i > 1 && i + 2 <= n {
                    Ok(())
                } else {
                    Err(invalid(format!(
                        "I_{{{n},{i}}} needs n >= 4 and 1 < i <= n-2"
                    )))
                }
            }
            FamilySpec::H22Plus { n } if n < 5 => {
                Err(invalid(format!("H_{{n,2,2}}^+ needs n >= 5, got {n}")))
            }
            FamilySpec::ScriptH { n, q } => {
                if n >= 6 && (3..=n / 2).contains(&q) {
                    Ok(())
                } else {
                    Err(invalid(format!(
                        "H_{{{n},1,{q}}} in the class needs n >= 6 and 3 <= q <= n/2"
                    )))
                }
            }
            _ => Ok(()),
        }
    }

    /// Edge list for any order, including orders beyond [`Graph`]'s limit.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        self.validate()?;
        Ok(match *self {
            FamilySpec::Cycle { n } => cycle_edges(n),
            FamilySpec::Complete { n } => (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
            FamilySpec::Theta { n, p, q } => theta_edges(n, p, q),
            FamilySpec::ScriptH { n, q } => theta_edges(n, 1, q),
            FamilySpec::IChord { n, i } => {
                let mut edges = cycle_edges(n);
                edges.push((0, 2));
                edges.push((i - 1, i + 1));
                edges
            }
            FamilySpec::H22Plus { n } => {
                let mut edges = theta_edges(n, 2, 2);
                // midpoints of the two length-2 paths
                edges.push((2, 3));
                edges
            }
            FamilySpec::Exceptional(e) => match e {
                Exceptional::G6First => FamilySpec::IChord { n: 6, i: 4 }.edges()?,
                Exceptional::G6Second => {
                    let mut edges = h13_cycle_edges(6);
                    edges.push((0, 2));
                    edges
                }
                Exceptional::G6Third => {
                    let mut edges = h13_cycle_edges(6);
                    edges.push((1, 4));
                    edges
                }
                Exceptional::G8First => {
                    let mut edges = h13_cycle_edges(8);
                    edges.push((4, 7));
                    edges
                }
            },
        })
    }

    pub fn build(&self) -> Result<Graph> {
        let edges = self.edges()?;
        Graph::new(self.order(), &edges)
    }

    /// Mathematical name, e.g. `H_{8,1,4}` or `G_6^2`.
    pub fn display_name(&self) -> String {
        match *self {
            FamilySpec::Cycle { n } => format!("C_{n}"),
            FamilySpec::Complete { n } => format!("K_{n}"),
            FamilySpec::Theta { n, p, q } => format!("H_{{{n},{p},{q}}}"),
            FamilySpec::ScriptH { n, q } => format!("H_{{{n},1,{q}}}"),
            FamilySpec::IChord { n, i } => format!("I_{{{n},{i}}}"),
            FamilySpec::H22Plus { n } => format!("H_{{{n},2,2}}^+"),
            FamilySpec::Exceptional(e) => match e {
                Exceptional::G6First => "G_6^1".into(),
                Exceptional::G6Second => "G_6^2".into(),
                Exceptional::G6Third => "G_6^3".into(),
                Exceptional::G8First => "G_8^1".into(),
            },
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle { n } => write!(f, "cycle:n={n}"),
            FamilySpec::Complete { n } => write!(f, "complete:n={n}"),
            FamilySpec::Theta { n, p, q } => write!(f, "theta:n={n},p={p},q={q}"),
            FamilySpec::ScriptH { n, q } => write!(f, "scripth:n={n},q={q}"),
            FamilySpec::IChord { n, i } => write!(f, "ichord:n={n},i={i}"),
            FamilySpec::H22Plus { n } => write!(f, "h22plus:n={n}"),
            FamilySpec::Exceptional(e) => f.write_str(e.key()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `cycle:n=9`, `theta:n=8,p=1,q=4`, `ichord:n=6,i=4`, `g6-2`,
    /// `h22plus:n=12`, `complete:n=4`, `scripth:n=8,q=3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, params) = s.split_once(':').unwrap_or((s, ""));
        let mut values: HashMap<&str, usize> = HashMap::new();
        for part in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got {part:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{key} is not a non-negative integer: {value:?}")))?;
            if values.insert(key.trim(), value).is_some() {
                return Err(invalid(format!("{key} given twice")));
            }
        }
        let expected: &[&str] = match kind {
            "cycle" | "complete" | "h22plus" => &["n"],
            "theta" => &["n", "p", "q"],
            "ichord" => &["n", "i"],
            "scripth" => &["n", "q"],
            _ => &[],
        };
        if let Some(extra) = values.keys().find(|k| !expected.contains(k)) {
            return Err(invalid(format!("unexpected parameter {extra} for {kind}")));
        }
        let get = |key: &str| {
            values
                .get(key)
                .copied()
                .ok_or_else(|| invalid(format!("{kind} needs parameter {key}")))
        };
        let spec = match kind {
            "cycle" => FamilySpec::Cycle { n: get("n")? },
            "complete" => FamilySpec::Complete { n: get("n")? },
            "theta" => FamilySpec::Theta {
                n: get("n")?,
                p: get("p")?,
                q: get("q")?,
            },
            "ichord" => FamilySpec::IChord {
                n: get("n")?,
                i: get("i")?,
            },
            "h22plus" => FamilySpec::H22Plus { n: get("n")? },
            "scripth" => FamilySpec::ScriptH {
                n: get("n")?,
                q: get("q")?,
            },
            other => FamilySpec::Exceptional(Exceptional::from_key(other)?),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    FamilySpec::Cycle { n }.build()
}

pub fn complete(n: usize) -> Result<Graph> {
    FamilySpec::Complete { n }.build()
}

pub fn theta(n: usize, p: usize, q: usize) -> Result<Graph> {
    FamilySpec::Theta { n, p, q }.build()
}

pub fn i_chord(n: usize, i: usize) -> Result<Graph> {
    FamilySpec::IChord { n, i }.build()
}

pub fn exceptional(name: &str) -> Result<Graph> {
    FamilySpec::Exceptional(Exceptional::from_key(name)?).build()
}

pub fn h22_plus(n: usize) -> Result<Graph> {
    FamilySpec::H22Plus { n }.build()
}

pub fn script_h_member(n: usize, q: usize) -> Result<Graph> {
    FamilySpec::ScriptH { n, q }.build()
}

/// Every named construction of order `n`, in display priority order
/// (cycle, complete graph, theta graphs, exceptional graphs, `H^+`,
/// two-chord cycles).
pub fn named_specs(n: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    if n >= 3 {
        specs.push(FamilySpec::Cycle { n });
    }
    if (1..=crate::graph::MAX_ORDER).contains(&n) {
        specs.push(FamilySpec::Complete { n });
    }
    for p in 1..=n {
        for q in p.max(2)..=n {
            let spec = FamilySpec::Theta { n, p, q };
            if spec.validate().is_ok() {
                specs.push(spec);
            }
        }
    }
    specs.extend(
        Exceptional::ALL
            .into_iter()
            .filter(|e| e.order() == n)
            .map(FamilySpec::Exceptional),
    );
    if n >= 5 {
        specs.push(FamilySpec::H22Plus { n });
    }
    if n >= 4 {
        specs.extend((2..=n - 2).map(|i| FamilySpec::IChord { n, i }));
    }
    specs
}

/// Canonical-form lookup of the named graphs of one order.
#[derive(Debug, Clone)]
pub struct FamilyIndex {
    order: usize,
    by_canonical: HashMap<String, Vec<FamilySpec>>,
}

impl FamilyIndex {
    pub fn new(n: usize) -> Result<Self> {
        let mut by_canonical: HashMap<String, Vec<FamilySpec>> = HashMap::new();
        for spec in named_specs(n) {
            let g = spec.build()?;
            by_canonical
                .entry(canonical_form(&g).string)
                .or_default()
                .push(spec);
        }
        Ok(FamilyIndex {
            order: n,
            by_canonical,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// All named constructions isomorphic to the graph with this canonical string.
    pub fn lookup(&self, canonical: &str) -> &[FamilySpec] {
        self.by_canonical.get(canonical).map_or(&[], Vec::as_slice)
    }

    /// Display name of the highest-priority match.
    pub fn name(&self, canonical: &str) -> Option<String> {
        self.lookup(canonical).first().map(FamilySpec::display_name)
    }
}
