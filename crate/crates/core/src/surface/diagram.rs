//! Relative trisection diagrams at the homology level.
//!
//! A `(g, k; p, b)`-diagram is a triple of `(g - p)`-curve systems on
//! `Σ_{g,b}` such that each pair of systems is handle-slide diffeomorphic to
//! a standard pair.  Slides act on a pairing matrix by unimodular row and
//! column operations and diffeomorphisms preserve the intersection form, so
//! the Smith normal form of the mutual pairing matrix is an invariant of
//! the pair.  For a standard pair it is `diag(1,...,1,0,...,0)` with
//! exactly `d` ones and `s` zeros, where `s = k - (2p + b - 1)` and
//! `d = (g - p) - s`.  Matching that profile is a *necessary* condition for
//! standardness; no geometric sufficiency is claimed anywhere in this
//! module, and reports are worded accordingly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{smith_diagonal, IntMat};
use crate::surface::{CurveClass, CurveSystemH, SurfaceModel};
use crate::tris_params::TrisectionType;

/// Expected Smith profile of the mutual pairing matrix of a standard pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StandardnessProfile {
    /// Number of unit invariant factors (dual handle pairs).
    pub d: i64,
    /// Number of zero invariant factors (parallel pairs).
    pub s: i64,
}

impl StandardnessProfile {
    /// Profile determined by the type: `s = k - (2p + b - 1)`,
    /// `d = (g - p) - s`.  Both are non-negative exactly because of the
    /// defining inequalities `2p + b - 1 <= k <= g + p + b - 1`.
    pub fn for_type(t: &TrisectionType) -> StandardnessProfile {
        let s = t.k() - t.page().heegaard_genus();
        let d = (t.g() - t.p()) - s;
        debug_assert!(s >= 0 && d >= 0);
        StandardnessProfile { d, s }
    }
}

/// Outcome of a standardness check on one ordered pair of systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardnessOutcome {
    pub profile: StandardnessProfile,
    /// Diagonal of the Smith normal form of the pairing matrix.
    pub smith_diagonal: Vec<i64>,
    pub ones: i64,
    pub zeros: i64,
    pub pass: bool,
}

/// Smith-profile test for one ordered pair of curve systems against the
/// profile of `ttype`.  This is a necessary condition for the pair to be
/// slide-diffeomorphic to a standard pair, not a verification.
pub fn standardness_check(
    surface: &SurfaceModel,
    first: &CurveSystemH,
    second: &CurveSystemH,
    ttype: &TrisectionType,
) -> Result<StandardnessOutcome> {
    let expected = (ttype.g() - ttype.p()) as usize;
    for sys in [first, second] {
        if sys.len() != expected {
            return Err(Error::SystemSizeMismatch {
                expected,
                got: sys.len(),
            });
        }
    }
    let n = first.len();
    let mut pairings = IntMat::zeros(n, n);
    for (i, x) in first.classes().iter().enumerate() {
        for (j, y) in second.classes().iter().enumerate() {
            pairings.set(i, j, surface.pairing(x, y)?);
        }
    }
    let diag = smith_diagonal(&pairings);
    let ones = diag.iter().filter(|&&x| x == 1).count() as i64;
    let zeros = diag.iter().filter(|&&x| x == 0).count() as i64;
    let profile = StandardnessProfile::for_type(ttype);
    let pass = ones + zeros == n as i64 && ones == profile.d && zeros == profile.s;
    Ok(StandardnessOutcome {
        profile,
        smith_diagonal: diag,
        ones,
        zeros,
        pass,
    })
}

/// One named validation step in a diagram report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Aggregated validation report.  `pass` is the conjunction of all checks;
/// the warnings always record that the verdicts are homology-level
/// necessary conditions.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl DiagramReport {
    pub(crate) fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail,
        });
        self.pass &= pass;
    }

    pub(crate) fn absorb(&mut self, other: DiagramReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
        for w in other.warnings {
            if !self.warnings.contains(&w) {
                self.warnings.push(w);
            }
        }
    }

    pub(crate) fn new() -> Self {
        DiagramReport {
            checks: Vec::new(),
            pass: true,
            warnings: vec![
                "standardness tested at the homology level: necessary conditions only".to_string(),
            ],
        }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// A validated relative trisection diagram at the homology level.
#[derive(Debug, Clone, Serialize)]
pub struct RelTrisDiagramH {
    surface: SurfaceModel,
    ttype: TrisectionType,
    alpha: CurveSystemH,
    beta: CurveSystemH,
    gamma: CurveSystemH,
}

/// Raw diagram parts, prior to validation.
pub struct DiagramParts {
    pub surface: SurfaceModel,
    pub ttype: TrisectionType,
    pub alpha: Vec<CurveClass>,
    pub beta: Vec<CurveClass>,
    pub gamma: Vec<CurveClass>,
}

/// Runs every check on raw parts, in order: surface/type compatibility,
/// system sizes, system validity, and the three pairwise standardness
/// profiles.  Never errors: failures are recorded in the report.
pub fn validate_parts(parts: &DiagramParts) -> DiagramReport {
    let mut report = DiagramReport::new();
    let s = &parts.surface;
    let t = &parts.ttype;

    let compatible = s.g() == t.g() && s.b() == t.b();
    report.push(
        "surface-type-compatible",
        compatible,
        format!("surface {s}, type {t}"),
    );
    if !compatible {
        return report;
    }

    let expected = (t.g() - t.p()) as usize;
    for (name, classes) in [
        ("alpha-size", &parts.alpha),
        ("beta-size", &parts.beta),
        ("gamma-size", &parts.gamma),
    ] {
        report.push(
            name,
            classes.len() == expected,
            format!("{} classes, expected g - p = {expected}", classes.len()),
        );
    }
    if !report.pass {
        return report;
    }

    let mut systems = Vec::new();
    for (name, classes) in [
        ("alpha-system", &parts.alpha),
        ("beta-system", &parts.beta),
        ("gamma-system", &parts.gamma),
    ] {
        match CurveSystemH::new(s, classes.clone()) {
            Ok(sys) => {
                report.push(name, true, "primitive classes, mutual pairings zero".to_string());
                systems.push(sys);
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }
    if systems.len() != 3 {
        return report;
    }
    let (alpha, beta, gamma) = (&systems[0], &systems[1], &systems[2]);

    for (name, x, y) in [
        ("standardness-alpha-beta", alpha, beta),
        ("standardness-beta-gamma", beta, gamma),
        ("standardness-gamma-alpha", gamma, alpha),
    ] {
        match standardness_check(s, x, y, t) {
            Ok(out) => {
                let detail = if out.pass {
                    format!(
                        "necessary conditions hold: Smith profile (d,s) = ({},{})",
                        out.profile.d, out.profile.s
                    )
                } else {
                    format!(
                        "Smith diagonal {:?} incompatible with profile (d,s) = ({},{})",
                        out.smith_diagonal, out.profile.d, out.profile.s
                    )
                };
                report.push(name, out.pass, detail);
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }
    report
}

impl RelTrisDiagramH {
    /// Validates and constructs; the error carries the first failed check.
    pub fn try_new(parts: DiagramParts) -> Result<(Self, DiagramReport)> {
        let report = validate_parts(&parts);
        if !report.pass {
            let summary = report
                .first_failure()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .unwrap_or_else(|| "unknown failure".to_string());
            return Err(Error::DiagramInvalid { summary });
        }
        let diagram = RelTrisDiagramH {
            surface: parts.surface,
            ttype: parts.ttype,
            alpha: CurveSystemH::new(&parts.surface, parts.alpha)?,
            beta: CurveSystemH::new(&parts.surface, parts.beta)?,
            gamma: CurveSystemH::new(&parts.surface, parts.gamma)?,
        };
        Ok((diagram, report))
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn ttype(&self) -> &TrisectionType {
        &self.ttype
    }

    pub fn alpha(&self) -> &CurveSystemH {
        &self.alpha
    }

    pub fn beta(&self) -> &CurveSystemH {
        &self.beta
    }

    pub fn gamma(&self) -> &CurveSystemH {
        &self.gamma
    }

    pub fn parts(&self) -> DiagramParts {
        DiagramParts {
            surface: self.surface,
            ttype: self.ttype,
            alpha: self.alpha.classes().to_vec(),
            beta: self.beta.classes().to_vec(),
            gamma: self.gamma.classes().to_vec(),
        }
    }

    /// Coordinate matrix of all 3(g - p) curve classes, one row per class.
    pub fn all_classes_matrix(&self) -> IntMat {
        let mut rows = Vec::new();
        for sys in [&self.alpha, &self.beta, &self.gamma] {
            for c in sys.classes() {
                rows.push(c.coords.clone());
            }
        }
        if rows.is_empty() {
            IntMat::zeros(0, self.surface.rank())
        } else {
            IntMat::from_rows(&rows).expect("classes share the basis rank")
        }
    }
}

/// Re-runs every check on an already-constructed diagram.
pub fn diagram_validate(d: &RelTrisDiagramH) -> DiagramReport {
    validate_parts(&d.parts())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(g: i64, b: i64) -> SurfaceModel {
        SurfaceModel::new(g, b).unwrap()
    }

    fn ttype(g: i64, k: i64, p: i64, b: i64) -> TrisectionType {
        TrisectionType::new(g, k, p, b).unwrap()
    }

    #[test]
    fn profile_for_chi_two_types() {
        // (d, s) on the chi = 2 type table.
        let cases = [
            ((1, 0, 0, 1), (1, 0)),
            ((2, 1, 0, 2), (2, 0)),
            ((3, 2, 0, 3), (3, 0)),
            ((4, 3, 0, 4), (4, 0)),
            ((4, 1, 0, 1), (3, 1)),
            ((4, 2, 1, 1), (3, 0)),
        ];
        for ((g, k, p, b), (d, s)) in cases {
            let prof = StandardnessProfile::for_type(&ttype(g, k, p, b));
            assert_eq!((prof.d, prof.s), (d, s), "type ({g},{k};{p},{b})");
        }
    }

    #[test]
    fn standardness_identity_matrix_passes() {
        // (1,0;0,1): single dual pair.
        let s = surface(1, 1);
        let t = ttype(1, 0, 0, 1);
        let x = CurveSystemH::new(&s, vec![s.class_a(1)]).unwrap();
        let y = CurveSystemH::new(&s, vec![s.class_b(1)]).unwrap();
        let out = standardness_check(&s, &x, &y, &t).unwrap();
        assert!(out.pass);
        assert_eq!(out.smith_diagonal, vec![1]);

        // (2,1;0,2): two dual pairs.
        let s = surface(2, 2);
        let t = ttype(2, 1, 0, 2);
        let x = CurveSystemH::new(&s, vec![s.class_a(1), s.class_a(2)]).unwrap();
        let y = CurveSystemH::new(&s, vec![s.class_b(1), s.class_b(2)]).unwrap();
        let out = standardness_check(&s, &x, &y, &t).unwrap();
        assert!(out.pass);
        assert_eq!(out.smith_diagonal, vec![1, 1]);
    }

    #[test]
    fn standardness_zero_matrix_fails_dual_profile() {
        let s = surface(2, 2);
        let t = ttype(2, 1, 0, 2);
        let x = CurveSystemH::new(&s, vec![s.class_a(1), s.class_a(2)]).unwrap();
        let out = standardness_check(&s, &x, &x, &t).unwrap();
        assert!(!out.pass);
        assert_eq!(out.smith_diagonal, vec![0, 0]);
    }

    #[test]
    fn standardness_mixed_profile() {
        // (4,1;0,1) has profile (d,s) = (3,1).
        let s = surface(4, 1);
        let t = ttype(4, 1, 0, 1);
        let x = CurveSystemH::new(
            &s,
            vec![s.class_a(1), s.class_a(2), s.class_a(3), s.class_a(4)],
        )
        .unwrap();
        let y = CurveSystemH::new(
            &s,
            vec![s.class_b(1), s.class_b(2), s.class_b(3), s.class_a(4)],
        )
        .unwrap();
        let out = standardness_check(&s, &x, &y, &t).unwrap();
        assert_eq!((out.ones, out.zeros), (3, 1));
        assert!(out.pass);
    }

    #[test]
    fn standardness_rejects_size_mismatch() {
        let s = surface(2, 2);
        let t = ttype(2, 1, 0, 2);
        let x = CurveSystemH::new(&s, vec![s.class_a(1)]).unwrap();
        assert!(matches!(
            standardness_check(&s, &x, &x, &t),
            Err(Error::SystemSizeMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn standardness_invariant_under_slides_and_twists() {
        // Slide on either side and a global transvection (a pairing-
        // preserving basis change) leave the outcome unchanged.
        let s = surface(2, 2);
        let t = ttype(2, 1, 0, 2);
        let x = CurveSystemH::new(&s, vec![s.class_a(1), s.class_a(2)]).unwrap();
        let y = CurveSystemH::new(&s, vec![s.class_b(1), s.class_b(2)]).unwrap();
        let base = standardness_check(&s, &x, &y, &t).unwrap();

        let x_slid = crate::surface::slide(&s, &x, 0, 1, 1).unwrap();
        let out = standardness_check(&s, &x_slid, &y, &t).unwrap();
        assert_eq!(out.pass, base.pass);
        assert_eq!(out.smith_diagonal, base.smith_diagonal);

        let y_slid = crate::surface::slide(&s, &y, 1, 0, -1).unwrap();
        let out = standardness_check(&s, &x, &y_slid, &t).unwrap();
        assert_eq!(out.pass, base.pass);

        let c = s.class_a(1).add(&s.class_b(2), 1);
        let xt = x.twist(&s, &c, 3).unwrap();
        let yt = y.twist(&s, &c, 3).unwrap();
        let out = standardness_check(&s, &xt, &yt, &t).unwrap();
        assert_eq!(out.pass, base.pass);
        assert_eq!(out.smith_diagonal, base.smith_diagonal);
    }

    fn valid_parts() -> DiagramParts {
        // The (2,1;0,2) diagram with diagonal gamma curves.
        let s = surface(2, 2);
        DiagramParts {
            surface: s,
            ttype: ttype(2, 1, 0, 2),
            alpha: vec![s.class_a(1), s.class_a(2)],
            beta: vec![s.class_b(1), s.class_b(2)],
            gamma: vec![
                s.class_a(1).add(&s.class_b(1), 1),
                s.class_a(2).add(&s.class_b(2), 1).add(&s.class_d(1), 1),
            ],
        }
    }

    #[test]
    fn validate_passes_on_good_diagram() {
        let report = validate_parts(&valid_parts());
        assert!(report.pass, "{report:?}");
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("necessary conditions only")));
        let (d, report) = RelTrisDiagramH::try_new(valid_parts()).unwrap();
        assert!(report.pass);
        assert!(diagram_validate(&d).pass);
    }

    #[test]
    fn validate_fails_on_bad_gamma_pairing() {
        // Replace one gamma class so it pairs nontrivially with the other.
        let mut parts = valid_parts();
        let s = parts.surface;
        parts.gamma[1] = s.class_b(1);
        let report = validate_parts(&parts);
        assert!(!report.pass);
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "gamma-system");
    }

    #[test]
    fn validate_fails_before_curexcheck_on_bad_type() {
        // Surface (2,2) with a type whose (g,b) disagree.
        let mut parts = valid_parts();
        parts.ttype = ttype(3, 2, 0, 3);
        let report = validate_parts(&parts);
        assert!(!report.pass);
        assert_eq!(report.checks.len(), 1, "must fail before curve checks");
        assert_eq!(report.first_failure().unwrap().name, "surface-type-compatible");
    }

    #[test]
    fn validate_fails_on_wrong_system_size() {
        let mut parts = valid_parts();
        parts.alpha.pop();
        let report = validate_parts(&parts);
        assert!(!report.pass);
        assert_eq!(report.first_failure().unwrap().name, "alpha-size");
    }

    #[test]
    fn try_new_surfaces_first_failure() {
        let mut parts = valid_parts();
        let s = parts.surface;
        parts.gamma[0] = s.class_a(1); // now <gamma_0, alpha> profile breaks
        let err = RelTrisDiagramH::try_new(parts).unwrap_err();
        assert!(err.to_string().contains("standardness"), "{err}");
    }
}
