//! Relative trisection parameters `(g, k; p, b)` and their arithmetic.
//!
//! A type records the genus `g` of the central surface, the 1-handlebody
//! genus `k` of the three sectors, and the page invariants `(p, b)` of the
//! open book induced on the boundary.  The defining constraints are
//! `g, k, p >= 0`, `b >= 1`, and `2p + b - 1 <= k <= g + p + b - 1`; the
//! Euler characteristic of the trisected 4-manifold is determined by
//! `chi = g - 3k + 3p + 2b - 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated trisection type `(g, k; p, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TrisectionType {
    g: i64,
    k: i64,
    p: i64,
    b: i64,
}

/// Euler characteristic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerChar(pub i64);

/// Page `Σ_{p,b}` of the induced open book on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Page {
    pub p: i64,
    pub b: i64,
}

impl Page {
    /// Genus of the Heegaard splitting induced by an open book with this
    /// page: `2p + b - 1`.
    pub fn heegaard_genus(&self) -> i64 {
        2 * self.p + self.b - 1
    }
}

impl TrisectionType {
    /// Validates the defining inequalities, naming the violated one on
    /// failure.
    pub fn new(g: i64, k: i64, p: i64, b: i64) -> Result<Self> {
        let fail = |violated: &str| {
            Err(Error::InvalidTrisectionType {
                tuple: format!("({g},{k};{p},{b})"),
                violated: violated.to_string(),
            })
        };
        if g < 0 {
            return fail("g >= 0");
        }
        if k < 0 {
            return fail("k >= 0");
        }
        if p < 0 {
            return fail("p >= 0");
        }
        if b < 1 {
            return fail("b >= 1");
        }
        if k < 2 * p + b - 1 {
            return fail("2p + b - 1 <= k");
        }
        if k > g + p + b - 1 {
            return fail("k <= g + p + b - 1");
        }
        Ok(TrisectionType { g, k, p, b })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `chi = g - 3k + 3p + 2b - 1`.
    pub fn euler_char(&self) -> EulerChar {
        EulerChar(self.g - 3 * self.k + 3 * self.p + 2 * self.b - 1)
    }

    pub fn page(&self) -> Page {
        Page {
            p: self.p,
            b: self.b,
        }
    }

    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.g, self.k, self.p, self.b)
    }
}

impl std::fmt::Display for TrisectionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.g, self.k, self.p, self.b)
    }
}

/// All valid types with the given genus and Euler characteristic, sorted by
/// `(k, p, b)`.
///
/// The search is finite: substituting the Euler relation into
/// `k >= 2p + b - 1` gives `3p + b <= g + 2 - chi`, which bounds both `p`
/// and `b`; for each `(p, b)` the relation determines `3k`, so a candidate
/// exists only when the resulting value is a non-negative multiple of 3.
pub fn admissible_types(g: i64, chi: i64) -> Vec<TrisectionType> {
    let mut out = Vec::new();
    if g < 0 {
        return out;
    }
    let bound = g + 2 - chi; // 3p + b <= bound
    let mut p = 0;
    while 3 * p + 1 <= bound {
        for b in 1..=(bound - 3 * p) {
            let three_k = g + 3 * p + 2 * b - 1 - chi;
            if three_k < 0 || three_k % 3 != 0 {
                continue;
            }
            if let Ok(t) = TrisectionType::new(g, three_k / 3, p, b) {
                debug_assert_eq!(t.euler_char().0, chi);
                out.push(t);
            }
        }
        p += 1;
    }
    out.sort_by_key(|t| (t.k, t.p, t.b));
    out
}

/// Largest Heegaard genus `2p + b - 1` among boundary open books of
/// admissible `(g, k; p, b)` with the given Euler characteristic, or `None`
/// when no type is admissible.
pub fn max_boundary_heegaard(g: i64, chi: i64) -> Option<i64> {
    admissible_types(g, chi)
        .iter()
        .map(|t| t.page().heegaard_genus())
        .max()
}

/// Least genus `g` whose chi = 2 types allow a boundary Heegaard genus of at
/// least `h`.  Computed by direct search; the enumeration shows the maximum
/// at genus `g` is `g - 1`, so the answer is `h + 1`.
pub fn genus_lower_bound_from_heegaard(h: i64) -> Result<i64> {
    if h < 0 {
        return Err(Error::InvalidArgument(format!(
            "Heegaard genus must be non-negative, got {h}"
        )));
    }
    for g in 1..=h + 1 {
        if max_boundary_heegaard(g, 2).is_some_and(|m| m >= h) {
            return Ok(g);
        }
    }
    unreachable!("genus h + 1 always admits a boundary Heegaard genus of h");
}
