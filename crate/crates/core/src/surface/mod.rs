//! Homology-level model of curves on a compact surface `Σ_{g,b}`.
//!
//! First homology of `Σ_{g,b}` is free of rank `2g + b - 1` with ordered
//! basis `a_1, b_1, ..., a_g, b_g, d_1, ..., d_{b-1}`, where `(a_i, b_i)` are
//! the handle classes and `d_j` are boundary-parallel classes.  The
//! intersection pairing is fixed by `<a_i, b_i> = +1`, all other basis
//! pairings zero; the `d_j` lie in the radical.  Everything in this module
//! is homological: a "curve" is a primitive class, a Dehn twist is the
//! transvection it induces, and all statements proved here are necessary
//! conditions for the corresponding geometric statements, never sufficient
//! ones.

pub mod diagram;
pub mod schema;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMat;

/// The surface `Σ_{g,b}` with its fixed homology basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceModel {
    g: i64,
    b: i64,
}

/// Integer homology class in the fixed basis of a [`SurfaceModel`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub coords: Vec<i64>,
}

impl SurfaceModel {
    pub fn new(g: i64, b: i64) -> Result<Self> {
        if g < 0 {
            return Err(Error::InvalidArgument(format!("surface genus {g} < 0")));
        }
        if b < 1 {
            return Err(Error::InvalidArgument(format!(
                "surface must have at least one boundary component, got {b}"
            )));
        }
        Ok(SurfaceModel { g, b })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Rank of `H_1(Σ_{g,b})`: `2g + b - 1`.
    pub fn rank(&self) -> usize {
        (2 * self.g + self.b - 1) as usize
    }

    /// Name of basis vector `i` (`a1, b1, ..., d1, ...`).
    pub fn basis_label(&self, i: usize) -> String {
        let g = self.g as usize;
        if i < 2 * g {
            let h = i / 2 + 1;
            if i % 2 == 0 {
                format!("a{h}")
            } else {
                format!("b{h}")
            }
        } else {
            format!("d{}", i - 2 * g + 1)
        }
    }

    fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    /// Basis class `a_i` (1-indexed).
    pub fn class_a(&self, i: usize) -> CurveClass {
        let mut c = self.zero();
        c[2 * (i - 1)] = 1;
        CurveClass { coords: c }
    }

    /// Basis class `b_i` (1-indexed).
    pub fn class_b(&self, i: usize) -> CurveClass {
        let mut c = self.zero();
        c[2 * (i - 1) + 1] = 1;
        CurveClass { coords: c }
    }

    /// Boundary-parallel class `d_j` (1-indexed, `j <= b - 1`).
    pub fn class_d(&self, j: usize) -> CurveClass {
        let mut c = self.zero();
        c[2 * self.g as usize + (j - 1)] = 1;
        CurveClass { coords: c }
    }

    fn check_rank(&self, x: &CurveClass) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: x.coords.len(),
            });
        }
        Ok(())
    }

    /// Algebraic intersection number `<x, y>`.
    ///
    /// Only the handle classes contribute: `<a_i, b_i> = +1` and the
    /// boundary-parallel classes pair to zero with everything.
    pub fn pairing(&self, x: &CurveClass, y: &CurveClass) -> Result<i64> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let mut acc = 0;
        for h in 0..self.g as usize {
            let (ai, bi) = (2 * h, 2 * h + 1);
            acc += x.coords[ai] * y.coords[bi] - x.coords[bi] * y.coords[ai];
        }
        Ok(acc)
    }

    /// The full antisymmetric pairing matrix in the fixed basis.
    pub fn pairing_matrix(&self) -> IntMat {
        let n = self.rank();
        let mut j = IntMat::zeros(n, n);
        for h in 0..self.g as usize {
            j.set(2 * h, 2 * h + 1, 1);
            j.set(2 * h + 1, 2 * h, -1);
        }
        j
    }

    /// Transvection induced on homology by the `power`-fold Dehn twist along
    /// a curve in class `c`:  `x ↦ x + power * <x, c> * c`.
    ///
    /// `c` must be primitive (realizable by a simple closed curve at this
    /// level of structure).
    pub fn dehn_twist(&self, c: &CurveClass, power: i64, x: &CurveClass) -> Result<CurveClass> {
        self.check_rank(c)?;
        self.check_rank(x)?;
        c.require_primitive()?;
        let m = power * self.pairing(x, c)?;
        let coords = x
            .coords
            .iter()
            .zip(&c.coords)
            .map(|(&xi, &ci)| xi + m * ci)
            .collect();
        Ok(CurveClass { coords })
    }
}

impl std::fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.g, self.b)
    }
}

impl CurveClass {
    pub fn new(coords: Vec<i64>) -> Self {
        CurveClass { coords }
    }

    /// Gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0i64, |acc, &x| acc.gcd(&x))
    }

    /// A class is primitive when its coordinate gcd is exactly 1; the zero
    /// class is not primitive.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NonPrimitiveCurve {
                class: format!("{:?}", self.coords),
                gcd: self.content(),
            })
        }
    }

    pub fn add(&self, other: &CurveClass, sign: i64) -> CurveClass {
        CurveClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| x + sign * y)
                .collect(),
        }
    }

    /// Pretty form in the basis of `s`, e.g. `a1 + b1 - 2 d1`.
    pub fn describe(&self, s: &SurfaceModel) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let label = s.basis_label(i);
            let term = match c {
                1 => label,
                -1 => format!("-{label}"),
                _ => format!("{c} {label}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// A curve system: classes of a disjoint collection of simple closed
/// curves.  At the homology level this means every class is primitive and
/// all mutual pairings vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSystemH {
    classes: Vec<CurveClass>,
}

impl CurveSystemH {
    pub fn new(surface: &SurfaceModel, classes: Vec<CurveClass>) -> Result<Self> {
        for (idx, c) in classes.iter().enumerate() {
            surface.check_rank(c)?;
            c.require_primitive().map_err(|_| Error::NonPrimitiveCurve {
                class: format!("#{idx} = {}", c.describe(surface)),
                gcd: c.content(),
            })?;
        }
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                let p = surface.pairing(&classes[i], &classes[j])?;
                if p != 0 {
                    return Err(Error::SystemNotDisjoint { i, j, pairing: p });
                }
            }
        }
        Ok(CurveSystemH { classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CurveClass] {
        &self.classes
    }

    /// Coordinate matrix with one row per class.
    pub fn coord_matrix(&self, surface: &SurfaceModel) -> IntMat {
        let rows: Vec<Vec<i64>> = self.classes.iter().map(|c| c.coords.clone()).collect();
        if rows.is_empty() {
            IntMat::zeros(0, surface.rank())
        } else {
            IntMat::from_rows(&rows).expect("system classes share the basis rank")
        }
    }

    /// Applies the transvection of `(c, power)` to every class.  A Dehn
    /// twist is a surface diffeomorphism, so the result is again a valid
    /// system.
    pub fn twist(&self, surface: &SurfaceModel, c: &CurveClass, power: i64) -> Result<CurveSystemH> {
        let classes = self
            .classes
            .iter()
            .map(|x| surface.dehn_twist(c, power, x))
            .collect::<Result<Vec<_>>>()?;
        CurveSystemH::new(surface, classes)
    }
}

/// Handle slide at the homology level: replaces `classes[i]` by
/// `classes[i] ± classes[j]`.
///
/// Mutual pairings are preserved automatically (bilinearity plus the
/// vanishing pairings of a valid system), but primitivity of the new class
/// is not; the result is revalidated and a slide producing an imprimitive
/// class is rejected.
pub fn slide(
    surface: &SurfaceModel,
    system: &CurveSystemH,
    i: usize,
    j: usize,
    sign: i64,
) -> Result<CurveSystemH> {
    if i == j {
        return Err(Error::InvalidSlide {
            reason: format!("cannot slide class {i} over itself"),
        });
    }
    if i >= system.len() || j >= system.len() {
        return Err(Error::InvalidSlide {
            reason: format!("indices ({i},{j}) out of range for a {}-class system", system.len()),
        });
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidSlide {
            reason: format!("sign must be +1 or -1, got {sign}"),
        });
    }
    let mut classes = system.classes.clone();
    classes[i] = classes[i].add(&classes[j], sign);
    CurveSystemH::new(surface, classes).map_err(|e| Error::InvalidSlide {
        reason: format!("slide of {i} over {j} produced an invalid system: {e}"),
    })
}
