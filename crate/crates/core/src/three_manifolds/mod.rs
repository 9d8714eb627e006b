//! Boundary 3-manifold bookkeeping: first homology from linking matrices,
//! lens-space calculus, and the classification vocabulary used by the
//! genus rules.

pub mod lens;
pub mod m_three;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{smith_diagonal, IntMat};

pub use lens::{cf_expand, chain_to_lens, lens_from_surgery, lens_homeo, LensSpace, Slope};
pub use m_three::{classify_m, M3Presentation, MThreeParams};

/// A finitely generated abelian group `Z^rank ⊕ Z/t₁ ⊕ ... ⊕ Z/tₙ` with
/// `t₁ | t₂ | ... | tₙ` and every `tᵢ >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        let n = n.abs();
        match n {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            _ => AbelianGroup { rank: 0, torsion: vec![n] },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<i64> {
        if self.rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// A symmetric integer matrix presenting H₁ of a surgery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix(IntMat);

impl LinkingMatrix {
    pub fn new(mat: IntMat) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        if let Some((i, j)) = mat.symmetry_defect() {
            return Err(Error::NotSymmetric { i, j });
        }
        Ok(LinkingMatrix(mat))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        LinkingMatrix::new(IntMat::from_rows(rows)?)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        LinkingMatrix(m)
    }

    pub fn matrix(&self) -> &IntMat {
        &self.0
    }

    pub fn det(&self) -> Result<i128> {
        self.0.det()
    }
}

/// H₁ presented by a linking matrix: the cokernel, read off the Smith
/// normal form.  Rank is the number of zero invariant factors; torsion the
/// factors `>= 2`.
pub fn h1_from_linking(m: &LinkingMatrix) -> AbelianGroup {
    let n = m.matrix().rows();
    let diag = smith_diagonal(m.matrix());
    let nonzero = diag.iter().filter(|&&x| x != 0).count();
    AbelianGroup {
        rank: n - nonzero,
        torsion: diag.iter().copied().filter(|&x| x >= 2).collect(),
    }
}

/// Classification tag for a closed oriented 3-manifold, at the precision
/// the rule tables need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ManifoldKind {
    S3,
    S1xS2,
    Lens(LensSpace),
    /// Connected sum of two nontrivial lens-class summands.
    ConnSumLens { left: LensSpace, right: LensSpace },
    /// Seifert fibered over S² with three exceptional fibers.  Fiber
    /// multiplicities are recorded only when quoted from literature.
    SmallSeifert {
        e0: Option<i64>,
        fibers: Vec<i64>,
    },
    Toroidal,
    Hyperbolic,
    Unknown,
}

impl ManifoldKind {
    /// Collapses a lens space to its degenerate tags.
    pub fn from_lens(l: LensSpace) -> ManifoldKind {
        if l.is_s3() {
            ManifoldKind::S3
        } else if l.is_s1_x_s2() {
            ManifoldKind::S1xS2
        } else {
            ManifoldKind::Lens(l)
        }
    }

    pub fn is_s3(&self) -> bool {
        matches!(self, ManifoldKind::S3)
    }

    /// Whether the manifold is `±L(a,1)` for some `a` (counting `S³` and
    /// `S¹×S²` as the degenerate members).
    pub fn is_integer_lens_class(&self) -> bool {
        match self {
            ManifoldKind::S3 | ManifoldKind::S1xS2 => true,
            ManifoldKind::Lens(l) => l.is_integer_surgery_class(),
            _ => false,
        }
    }

    /// Whether the classification *excludes* every `M(a₁,a₂,a₃)`: those
    /// are lens spaces, connected sums of lens spaces, or atoroidal small
    /// Seifert spaces, so toroidal or hyperbolic manifolds are never of
    /// that form.  `Unknown` excludes nothing.
    pub fn rules_out_m_type(&self) -> bool {
        matches!(self, ManifoldKind::Toroidal | ManifoldKind::Hyperbolic)
    }
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldKind::S3 => write!(f, "S³"),
            ManifoldKind::S1xS2 => write!(f, "S¹×S²"),
            ManifoldKind::Lens(l) => write!(f, "{l}"),
            ManifoldKind::ConnSumLens { left, right } => write!(f, "{left} # {right}"),
            ManifoldKind::SmallSeifert { e0: _, fibers } if fibers.len() == 3 => {
                write!(f, "S²({},{},{})", fibers[0], fibers[1], fibers[2])
            }
            ManifoldKind::SmallSeifert { .. } => write!(f, "small Seifert fibered space"),
            ManifoldKind::Toroidal => write!(f, "toroidal"),
            ManifoldKind::Hyperbolic => write!(f, "hyperbolic"),
            ManifoldKind::Unknown => write!(f, "unknown"),
        }
    }
}

/// A classified 3-manifold: tag, H₁ when computed, and the literature
/// citation backing the classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeManifoldClass {
    pub kind: ManifoldKind,
    pub h1: Option<AbelianGroup>,
    pub citation: String,
    pub conditions: Vec<String>,
}

impl ThreeManifoldClass {
    pub fn new(kind: ManifoldKind, citation: impl Into<String>) -> Self {
        ThreeManifoldClass {
            kind,
            h1: None,
            citation: citation.into(),
            conditions: Vec::new(),
        }
    }

    pub fn with_h1(mut self, h1: AbelianGroup) -> Self {
        self.h1 = Some(h1);
        self
    }

    pub fn with_condition(mut self, condition: impl Into<String>) -> Self {
        self.conditions.push(condition.into());
        self
    }
}

impl fmt::Display for ThreeManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(h1) = &self.h1 {
            write!(f, " (H₁ = {h1})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_of_integer_surgery() {
        // [m] presents Z/|m|, rank 1 at m = 0.
        for m in -12i64..=12 {
            let got = h1_from_linking(&LinkingMatrix::diagonal(&[m]));
            assert_eq!(got, AbelianGroup::cyclic(m), "m = {m}");
        }
        assert_eq!(
            h1_from_linking(&LinkingMatrix::diagonal(&[0])),
            AbelianGroup::free(1)
        );
    }

    #[test]
    fn h1_frozen_examples() {
        let m = LinkingMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(h1_from_linking(&m), AbelianGroup::cyclic(5));

        let zero = LinkingMatrix::diagonal(&[0, 0, 0]);
        assert_eq!(h1_from_linking(&zero), AbelianGroup::free(3));

        let mixed = LinkingMatrix::from_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        let got = h1_from_linking(&mixed);
        assert_eq!(got, AbelianGroup { rank: 0, torsion: vec![2, 4] });
        assert_eq!(got.order(), Some(8));
    }

    #[test]
    fn linking_matrix_validation() {
        assert!(matches!(
            LinkingMatrix::from_rows(&[vec![1, 2], vec![3, 4]]),
            Err(Error::NotSymmetric { i: 0, j: 1 })
        ));
        assert!(matches!(
            LinkingMatrix::from_rows(&[vec![1, 2]]),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn group_display() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::free(2).to_string(), "Z^2");
        assert_eq!(AbelianGroup::cyclic(-5).to_string(), "Z/5");
        let g = AbelianGroup { rank: 1, torsion: vec![2, 10] };
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/10");
    }

    #[test]
    fn kind_predicates() {
        let l51 = LensSpace::new(5, 1, true).unwrap();
        let l72 = LensSpace::new(7, 2, true).unwrap();
        assert!(ManifoldKind::from_lens(l51).is_integer_lens_class());
        assert!(ManifoldKind::from_lens(l51.reversed()).is_integer_lens_class());
        assert!(!ManifoldKind::from_lens(l72).is_integer_lens_class());
        assert!(ManifoldKind::S1xS2.is_integer_lens_class());
        assert!(ManifoldKind::S3.is_integer_lens_class());
        assert!(!ManifoldKind::Hyperbolic.is_integer_lens_class());

        assert!(ManifoldKind::Hyperbolic.rules_out_m_type());
        assert!(ManifoldKind::Toroidal.rules_out_m_type());
        assert!(!ManifoldKind::Unknown.rules_out_m_type());
        assert!(!ManifoldKind::from_lens(l72).rules_out_m_type());
        assert!(!ManifoldKind::SmallSeifert { e0: None, fibers: vec![] }.rules_out_m_type());
    }

    #[test]
    fn from_lens_collapses_degenerates() {
        assert_eq!(ManifoldKind::from_lens(LensSpace::s3()), ManifoldKind::S3);
        assert_eq!(
            ManifoldKind::from_lens(LensSpace::s1_x_s2()),
            ManifoldKind::S1xS2
        );
        let display = ManifoldKind::from_lens(LensSpace::new(7, 2, false).unwrap()).to_string();
        assert_eq!(display, "-L(7,2)");
    }

    #[test]
    fn congruence_invariance_spot_check() {
        // U^T M U with unimodular U preserves the cokernel.
        let m = LinkingMatrix::from_rows(&[vec![6, 2], vec![2, 10]]).unwrap();
        let base = h1_from_linking(&m);
        let u = IntMat::from_rows(&[vec![1, 3], vec![0, 1]]).unwrap();
        let congruent = u.transpose().mul(m.matrix()).mul(&u);
        let after = h1_from_linking(&LinkingMatrix::new(congruent).unwrap());
        assert_eq!(base, after);
    }
}
