//! Lens space bookkeeping: surgery descriptions, linear chains, and the
//! classical homeomorphism test.
//!
//! Conventions, fixed once here and relied on everywhere:
//!
//! * `L(p, q)` is the result of `-p/q`-surgery on the unknot, `p >= 0`.
//! * Integer `m`-surgery on the unknot is `-L(m, 1)`; the mirror-image
//!   distinction matters, so the sign is tracked with an explicit
//!   orientation flag rather than folded into `q` eagerly.
//! * `-L(p, q)` is orientation-preservingly homeomorphic to `L(p, p-q)`;
//!   `canonical_pq` performs that fold.
//! * A weight chain `[w_1, ..., w_n]` denotes surgery on a linear chain of
//!   unknots.  Its lens class is `r`-surgery on the unknot where `r` is the
//!   alternating (minus) continued fraction
//!   `w_1 - 1/(w_2 - 1/(... - 1/w_n))`; `cf_expand` inverts this.
//! * `p = 0` is `S¹×S²` (stored as `q = 1`), `p = 1` is `S³` (stored as
//!   `q = 0`); both are amphichiral, so their flag is forced positive.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A surgery slope `num/den`, normalized so `den >= 0` and
/// `gcd(num, den) = 1`; `1/0` is the empty (∞) surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub fn new(num: i64, den: i64) -> Result<Slope> {
        if den == 0 {
            return if num == 0 {
                Err(Error::IndeterminateSlope)
            } else {
                Ok(Slope::infinity())
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    /// The ∞ slope (no surgery).
    pub fn infinity() -> Slope {
        Slope { num: 1, den: 0 }
    }

    pub fn integer(m: i64) -> Slope {
        Slope { num: m, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 0 {
            write!(f, "∞")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A lens space `±L(p, q)` with `p >= 0`.  `S³` and `S¹×S²` are the
/// degenerate members `p = 1` and `p = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
    /// False for the reversed orientation `-L(p, q)`.
    positive: bool,
}

impl LensSpace {
    pub fn new(p: i64, q: i64, positive: bool) -> Result<LensSpace> {
        if p < 0 {
            return Err(Error::LensNotCoprime { p, q });
        }
        if p == 0 {
            // S¹×S²; only ±1 "q" values describe it.
            if q.abs() != 1 {
                return Err(Error::LensNotCoprime { p, q });
            }
            return Ok(LensSpace { p: 0, q: 1, positive: true });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::LensNotCoprime { p, q });
        }
        if p == 1 {
            return Ok(LensSpace { p: 1, q: 0, positive: true });
        }
        Ok(LensSpace {
            p,
            q: q.rem_euclid(p),
            positive,
        })
    }

    pub fn s3() -> LensSpace {
        LensSpace { p: 1, q: 0, positive: true }
    }

    pub fn s1_x_s2() -> LensSpace {
        LensSpace { p: 0, q: 1, positive: true }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn is_s3(&self) -> bool {
        self.p == 1
    }

    pub fn is_s1_x_s2(&self) -> bool {
        self.p == 0
    }

    /// `(p, q)` with the orientation flag folded in via `-L(p,q) = L(p,p-q)`.
    pub fn canonical_pq(&self) -> (i64, i64) {
        if self.positive || self.p <= 1 {
            (self.p, self.q)
        } else {
            (self.p, (self.p - self.q).rem_euclid(self.p))
        }
    }

    /// Reversed orientation.
    pub fn reversed(&self) -> LensSpace {
        if self.p <= 1 {
            *self
        } else {
            LensSpace { positive: !self.positive, ..*self }
        }
    }

    /// Whether this space is `±L(a, 1)` for some `a` (including the
    /// degenerate `S³ = L(1, 0)` and `S¹×S² = L(0, 1)` members).
    pub fn is_integer_surgery_class(&self) -> bool {
        if self.p <= 1 {
            return true;
        }
        let (p, q) = self.canonical_pq();
        q == 1 || q == p - 1
    }

    /// Order of H₁ (`None` for the infinite S¹×S² case).
    pub fn h1_order(&self) -> Option<i64> {
        if self.p == 0 {
            None
        } else {
            Some(self.p)
        }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "S¹×S²")
        } else if self.p == 1 {
            write!(f, "S³")
        } else {
            let sign = if self.positive { "" } else { "-" };
            write!(f, "{sign}L({},{})", self.p, self.q)
        }
    }
}

/// Lens class of `r`-surgery on the unknot: `-p/q`-surgery gives `L(p, q)`,
/// so integer `m`-surgery gives `-L(m, 1)`.
pub fn lens_from_surgery(r: Slope) -> Result<LensSpace> {
    let (big_p, big_q) = (-r.num(), r.den());
    if big_p == 0 {
        return Ok(LensSpace::s1_x_s2());
    }
    let positive = big_p > 0;
    let p = big_p.abs();
    LensSpace::new(p, big_q.rem_euclid(p), positive)
}

/// Lens class of surgery on a linear chain of unknots with the given
/// framings: folds the weights into the alternating continued fraction and
/// hands the resulting slope to `lens_from_surgery`.
pub fn chain_to_lens(weights: &[i64]) -> Result<LensSpace> {
    if weights.is_empty() {
        return Err(Error::EmptyChain);
    }
    // Right fold: value of w - 1/(rest) as a fraction p/q.
    let (mut p, mut q): (i128, i128) = (weights[weights.len() - 1] as i128, 1);
    for &w in weights[..weights.len() - 1].iter().rev() {
        let (np, nq) = (w as i128 * p - q, p);
        p = np;
        q = nq;
    }
    let p = i64::try_from(p).map_err(|_| Error::Formula("chain overflow".into()))?;
    let q = i64::try_from(q).map_err(|_| Error::Formula("chain overflow".into()))?;
    lens_from_surgery(Slope::new(p, q)?)
}

/// Alternating continued-fraction expansion of `num/den` (`den >= 1`):
/// the weight chain whose `chain_to_lens` slope is exactly `num/den`.
pub fn cf_expand(num: i64, den: i64) -> Result<Vec<i64>> {
    if den < 1 {
        return Err(Error::Formula(format!(
            "cf_expand needs a positive denominator, got {den}"
        )));
    }
    let (mut num, mut den) = (num, den);
    let mut weights = Vec::new();
    while den != 0 {
        let w = Integer::div_ceil(&num, &den);
        weights.push(w);
        let next_den = w * den - num;
        num = den;
        den = next_den;
        debug_assert!(den >= 0);
    }
    Ok(weights)
}

/// Unoriented homeomorphism test: after folding orientation flags,
/// `L(p, q) ≅ L(p', q')` iff `p = p'` and `q' ≡ ±q^{±1} (mod p)`.
pub fn lens_homeo(x: &LensSpace, y: &LensSpace) -> bool {
    let (px, qx) = x.canonical_pq();
    let (py, qy) = y.canonical_pq();
    if px != py {
        return false;
    }
    let p = px;
    if p <= 1 {
        return true;
    }
    let inv = mod_inverse(qx, p).expect("q is a unit mod p");
    [qx, inv, p - qx, (p - inv).rem_euclid(p)]
        .iter()
        .any(|&cand| cand.rem_euclid(p) == qy)
}

fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    let e = a.extended_gcd(&p);
    if e.gcd != 1 {
        None
    } else {
        Some(e.x.rem_euclid(p))
    }
}
