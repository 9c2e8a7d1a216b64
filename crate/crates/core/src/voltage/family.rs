use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cover::VoltageGraph;
use super::graph::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Circulant,
    B1,
    B2,
    B3,
    T1,
    T2,
    T3,
    T4,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::T1,
        Family::T2,
        Family::T3,
        Family::T4,
        Family::B1,
        Family::B2,
        Family::B3,
        Family::Circulant,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Circulant => "circulant",
            Family::B1 => "b1",
            Family::B2 => "b2",
            Family::B3 => "b3",
            Family::T1 => "t1",
            Family::T2 => "t2",
            Family::T3 => "t3",
            Family::T4 => "t4",
        }
    }

    /// Number of vertex orbits under the cyclic automorphism.
    pub fn orbit_count(self) -> usize {
        match self {
            Family::Circulant => 1,
            Family::B1 | Family::B2 | Family::B3 => 2,
            Family::T1 | Family::T2 | Family::T3 | Family::T4 => 3,
        }
    }

    /// Whether the family carries a second parameter `b`.
    pub fn takes_b(self) -> bool {
        !matches!(self, Family::Circulant | Family::B2 | Family::T3)
    }

    /// Families whose construction contains an `n/2` jump.
    pub fn requires_even_n(self) -> bool {
        !matches!(self, Family::B1 | Family::B3)
    }

    /// Every valid parameter tuple of order `n`, sorted by `(a, b)`.
    pub fn enumerate(self, n: u64) -> Vec<FamilyParams> {
        if n == 0 || (self.requires_even_n() && n % 2 == 1) {
            return Vec::new();
        }
        let h = n / 2;
        let pairs: Vec<(u64, Option<u64>)> = match self {
            Family::T1 => (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, Some(b))))
                .collect(),
            Family::T2 => (1..n)
                .flat_map(|a| (1..h).map(move |b| (a, Some(b))))
                .collect(),
            Family::T3 => (0..n).map(|a| (a, None)).collect(),
            Family::T4 | Family::B3 => (1..n.div_ceil(2))
                .flat_map(|a| (a..n.div_ceil(2)).map(move |b| (a, Some(b))))
                .collect(),
            Family::B1 => (1..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, Some(b))))
                .collect(),
            Family::B2 => (1..n).map(|a| (a, None)).collect(),
            Family::Circulant => (1..h).map(|a| (a, None)).collect(),
        };
        pairs
            .into_iter()
            .filter_map(|(a, b)| FamilyParams::new(self, n, a, b).ok())
            .collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "unknown family {s:?} (expected one of t1, t2, t3, t4, b1, b2, b3, circulant)"
                ))
            })
    }
}

/// A validated family member.
///
/// T1 and T4 are symmetric in `(a, b)`, so those pairs are stored sorted;
/// every other family keeps the order it was given in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyParams {
    family: Family,
    n: u64,
    a: u64,
    b: Option<u64>,
}

impl FamilyParams {
    pub fn new(family: Family, n: u64, a: u64, b: Option<u64>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParams(format!("{family}: {msg}")));
        if n == 0 {
            return invalid("n must be positive".into());
        }
        if family.requires_even_n() && n % 2 == 1 {
            return invalid(format!("n = {n} must be even"));
        }
        let b = match (family.takes_b(), b) {
            (true, Some(b)) => Some(b),
            (true, None) => return invalid("missing parameter b".into()),
            (false, None) => None,
            (false, Some(_)) => return invalid("takes a single parameter a".into()),
        };
        let h = n / 2;
        // `2 * x < n` is the strict bound x < n/2 for odd n as well.
        let below_half = |x: u64| 2 * x < n;
        let (a, b) = match family {
            Family::T1 => {
                let b = b.unwrap();
                if a >= n || b >= n || a == b {
                    return invalid(format!("need 0 <= a, b < {n} with a != b, got ({a}, {b})"));
                }
                (a.min(b), Some(a.max(b)))
            }
            Family::T2 => {
                let b = b.unwrap();
                if a == 0 || a >= n || b == 0 || b >= h {
                    return invalid(format!("need 0 < a < {n} and 0 < b < {h}, got ({a}, {b})"));
                }
                (a, Some(b))
            }
            Family::T3 => {
                if a >= n {
                    return invalid(format!("need 0 <= a < {n}, got {a}"));
                }
                (a, None)
            }
            Family::T4 => {
                let b = b.unwrap();
                if a == 0 || b == 0 || a >= h || b >= h {
                    return invalid(format!("need 1 <= a, b < {h}, got ({a}, {b})"));
                }
                (a.min(b), Some(a.max(b)))
            }
            Family::B1 => {
                let b = b.unwrap();
                if !(0 < a && a < b && b < n) {
                    return invalid(format!("need 0 < a < b < {n}, got ({a}, {b})"));
                }
                (a, Some(b))
            }
            Family::B2 => {
                if a == 0 || a >= n {
                    return invalid(format!("need 0 < a < {n}, got {a}"));
                }
                (a, None)
            }
            Family::B3 => {
                let b = b.unwrap();
                if !(0 < a && a <= b && below_half(b)) {
                    return invalid(format!("need 0 < a <= b < n/2, got ({a}, {b})"));
                }
                (a, Some(b))
            }
            Family::Circulant => {
                if a == 0 || a >= n || 2 * a == n {
                    return invalid(format!("need 0 < a < {n} with a != {h}, got {a}"));
                }
                (a, None)
            }
        };
        Ok(FamilyParams { family, n, a, b })
    }

    pub fn tri(family: Family, n: u64, a: u64, b: u64) -> Result<Self> {
        Self::new(family, n, a, Some(b))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> Option<u64> {
        self.b
    }

    /// Graph order: `n` per orbit.
    pub fn order(&self) -> usize {
        self.family.orbit_count() * self.n as usize
    }

    /// Vertex indices of each orbit block (X, Y, Z) in cyclic order.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n as usize;
        (0..self.family.orbit_count())
            .map(|k| (k * n..(k + 1) * n).collect())
            .collect()
    }

    /// The voltage diagram of the family over `Z_n`. Base vertices are
    /// X = 0, Y = 1, Z = 2 (bicirculants X = 0, Y = 1; circulants a single
    /// vertex). Half-turn semi-edges are loops with voltage `n/2`.
    pub fn voltage_graph(&self) -> Result<VoltageGraph> {
        const X: usize = 0;
        const Y: usize = 1;
        const Z: usize = 2;
        let n = self.n;
        let h = n / 2;
        let a = self.a;
        let b = self.b.unwrap_or(0);
        let mut vg = VoltageGraph::new(self.family.orbit_count(), n)?;
        match self.family {
            Family::T1 => {
                vg.add_arc(X, Y, a)?;
                vg.add_arc(X, Y, b)?;
                vg.add_arc(X, Z, 0)?;
                vg.add_arc(Y, Z, 0)?;
                vg.add_arc(Z, Z, h)?;
            }
            Family::T2 => {
                vg.add_arc(X, X, b)?;
                vg.add_arc(X, Z, 0)?;
                vg.add_arc(Y, Y, h)?;
                vg.add_arc(Y, Z, 0)?;
                vg.add_arc_signed(Y, Z, -(a as i64))?;
            }
            Family::T3 => {
                vg.add_arc(X, X, h)?;
                vg.add_arc(X, Y, a)?;
                vg.add_arc(X, Z, 0)?;
                vg.add_arc(Y, Y, h)?;
                vg.add_arc(Y, Z, 0)?;
                vg.add_arc(Z, Z, h)?;
            }
            Family::T4 => {
                vg.add_arc(X, X, a)?;
                vg.add_arc(X, Z, 0)?;
                vg.add_arc(Y, Y, b)?;
                vg.add_arc(Y, Z, 0)?;
                vg.add_arc(Z, Z, h)?;
            }
            Family::B1 => {
                vg.add_arc(X, Y, 0)?;
                vg.add_arc(X, Y, a)?;
                vg.add_arc(X, Y, b)?;
            }
            Family::B2 => {
                vg.add_arc(X, X, h)?;
                vg.add_arc(X, Y, 0)?;
                vg.add_arc(X, Y, a)?;
                vg.add_arc(Y, Y, h)?;
            }
            Family::B3 => {
                vg.add_arc(X, Y, 0)?;
                vg.add_arc(X, X, a)?;
                vg.add_arc(Y, Y, b)?;
            }
            Family::Circulant => {
                vg.add_arc(X, X, a)?;
                vg.add_arc(X, X, h)?;
            }
        }
        Ok(vg)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            Some(b) => write!(f, "{}({}, {}, {})", self.family, self.n, self.a, b),
            None => write!(f, "{}({}, {})", self.family, self.n, self.a),
        }
    }
}

/// Builds the family member by expanding its voltage diagram. Parameter
/// choices whose cover would not be simple surface as `InvalidParams`.
pub fn build_family(params: &FamilyParams) -> Result<Graph> {
    let graph = params
        .voltage_graph()
        .and_then(|vg| vg.expand_cyclic_cover())
        .map_err(|e| match e {
            Error::CoverNotSimple(msg) | Error::InvalidVoltageGraph(msg) => {
                Error::InvalidParams(format!("{params}: degenerate parameters ({msg})"))
            }
            other => other,
        })?;
    debug_assert!(graph.is_cubic(), "{params} is not cubic");
    Ok(graph)
}
