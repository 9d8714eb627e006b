//! Knot vocabulary: the four knot shapes the genus rules know about, with
//! mirror bookkeeping and the handful of coincidences between pretzel and
//! torus presentations that the rule tables need.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum KnotKind {
    Unknot,
    /// Canonical form: `2 <= p < q`, coprime; chirality lives in the
    /// mirror flag.
    Torus { p: i64, q: i64 },
    /// Twist counts stored verbatim; rotations/reversals are normalized
    /// away only inside comparisons, never in the stored value.
    Pretzel { twists: Vec<i64> },
    FigureEight,
}

/// A knot: shape plus mirror flag.  Amphichiral shapes (unknot,
/// figure-eight) keep the flag false.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KnotSpec {
    kind: KnotKind,
    mirror: bool,
}

impl KnotSpec {
    pub fn unknot() -> KnotSpec {
        KnotSpec { kind: KnotKind::Unknot, mirror: false }
    }

    pub fn figure_eight() -> KnotSpec {
        KnotSpec { kind: KnotKind::FigureEight, mirror: false }
    }

    /// Torus knot `T(p, q)`, normalized: unknot when either index is a
    /// unit, error when the indices share a factor (that is a link), sign
    /// folded into the mirror flag, indices sorted.
    pub fn torus(p: i64, q: i64) -> Result<KnotSpec> {
        Self::torus_mirrored(p, q, false)
    }

    fn torus_mirrored(p: i64, q: i64, mirror: bool) -> Result<KnotSpec> {
        if p.abs() <= 1 || q.abs() <= 1 {
            if p == 0 || q == 0 {
                // T(0, q) is a |q|-component unlink unless |q| <= 1.
                if p.abs().max(q.abs()) > 1 {
                    return Err(Error::InvalidKnot(format!(
                        "T({p},{q}) is a link, not a knot"
                    )));
                }
            }
            return Ok(KnotSpec::unknot());
        }
        if p.abs().gcd(&q.abs()) != 1 {
            return Err(Error::InvalidKnot(format!(
                "T({p},{q}) is a link, not a knot (gcd {})",
                p.abs().gcd(&q.abs())
            )));
        }
        let mirror = mirror ^ ((p < 0) ^ (q < 0));
        let (mut p, mut q) = (p.abs(), q.abs());
        if p > q {
            std::mem::swap(&mut p, &mut q);
        }
        Ok(KnotSpec { kind: KnotKind::Torus { p, q }, mirror })
    }

    pub fn pretzel(twists: Vec<i64>) -> Result<KnotSpec> {
        Self::pretzel_mirrored(twists, false)
    }

    fn pretzel_mirrored(twists: Vec<i64>, mirror: bool) -> Result<KnotSpec> {
        if twists.len() < 3 {
            return Err(Error::InvalidKnot(format!(
                "pretzel needs at least 3 strands, got {}",
                twists.len()
            )));
        }
        Ok(KnotSpec { kind: KnotKind::Pretzel { twists }, mirror })
    }

    pub fn kind(&self) -> &KnotKind {
        &self.kind
    }

    pub fn is_mirror(&self) -> bool {
        self.mirror
    }

    pub fn is_unknot(&self) -> bool {
        matches!(self.kind, KnotKind::Unknot)
    }

    /// The mirror image (identity on amphichiral shapes).
    pub fn mirrored(&self) -> KnotSpec {
        match &self.kind {
            KnotKind::Unknot | KnotKind::FigureEight => self.clone(),
            kind => KnotSpec { kind: kind.clone(), mirror: !self.mirror },
        }
    }

    /// Structural equality up to the moves that do not change the knot:
    /// pretzel rotation, reversal, and global negation (the latter paired
    /// with a mirror flip).
    pub fn same_knot(&self, other: &KnotSpec) -> bool {
        match (&self.kind, &other.kind) {
            (KnotKind::Pretzel { twists: a }, KnotKind::Pretzel { twists: b }) => {
                if a.len() != b.len() {
                    return false;
                }
                pretzel_presentations(a, self.mirror)
                    .iter()
                    .any(|(t, m)| t == b && *m == other.mirror)
            }
            _ => self == other,
        }
    }

    /// Every named form of this knot: itself plus its pretzel/torus
    /// coincidence partner when it has one (`P(-2,3,1) = T(2,5)`,
    /// `P(-2,3,3) = T(3,4)`, `P(-2,3,5) = T(3,5)`), mirrors respected.
    pub fn equivalent_forms(&self) -> Vec<KnotSpec> {
        let mut forms = vec![self.clone()];
        const PAIRS: [([i64; 3], (i64, i64)); 3] =
            [([-2, 3, 1], (2, 5)), ([-2, 3, 3], (3, 4)), ([-2, 3, 5], (3, 5))];
        match &self.kind {
            KnotKind::Pretzel { .. } => {
                for (pretzel, (p, q)) in PAIRS {
                    let probe = KnotSpec::pretzel_mirrored(pretzel.to_vec(), self.mirror)
                        .expect("3 strands");
                    if self.same_knot(&probe) {
                        let torus = KnotSpec::torus_mirrored(p, q, self.mirror)
                            .expect("coprime");
                        forms.push(torus);
                    }
                }
            }
            KnotKind::Torus { p, q } => {
                for (pretzel, (tp, tq)) in PAIRS {
                    if (*p, *q) == (tp, tq) {
                        forms.push(
                            KnotSpec::pretzel_mirrored(pretzel.to_vec(), self.mirror)
                                .expect("3 strands"),
                        );
                    }
                }
            }
            _ => {}
        }
        forms
    }

    /// Parses the CLI grammar: `U`, `T(p,q)`, `P(p1,...,pr)`, `4_1`, with
    /// an optional `mirror:` prefix.  Arguments are integer expressions
    /// evaluated against `env`, so the same grammar serves family
    /// `knot_formula` strings.
    pub fn parse_with_env(spec: &str, env: &BTreeMap<String, i64>) -> Result<KnotSpec> {
        let s = spec.trim();
        let (mirror, s) = match s.strip_prefix("mirror:") {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let bad = |msg: &str| Error::InvalidKnot(format!("{msg} in {spec:?}"));
        if s == "U" {
            return Ok(if mirror { KnotSpec::unknot().mirrored() } else { KnotSpec::unknot() });
        }
        if s == "4_1" {
            let k = KnotSpec::figure_eight();
            return Ok(if mirror { k.mirrored() } else { k });
        }
        let (head, args) = parse_call(s).ok_or_else(|| bad("expected U, 4_1, T(...), or P(...)"))?;
        let values: Vec<i64> = args
            .iter()
            .map(|a| formula::eval(a, env))
            .collect::<Result<_>>()?;
        match head {
            "T" => {
                if values.len() != 2 {
                    return Err(bad("T takes exactly two arguments"));
                }
                KnotSpec::torus_mirrored(values[0], values[1], mirror)
            }
            "P" => KnotSpec::pretzel_mirrored(values, mirror),
            _ => Err(bad("expected U, 4_1, T(...), or P(...)")),
        }
    }

    pub fn parse(spec: &str) -> Result<KnotSpec> {
        Self::parse_with_env(spec, &BTreeMap::new())
    }
}

/// All presentations `(twists, mirror)` of a pretzel reachable by
/// rotation, reversal, and global negation with a mirror flip.
fn pretzel_presentations(twists: &[i64], mirror: bool) -> Vec<(Vec<i64>, bool)> {
    let n = twists.len();
    let mut out = Vec::with_capacity(4 * n);
    let mut push_cycles = |base: &[i64], m: bool| {
        for start in 0..n {
            let rotated: Vec<i64> = (0..n).map(|i| base[(start + i) % n]).collect();
            out.push((rotated.clone(), m));
            out.push((rotated.into_iter().rev().collect(), m));
        }
    };
    push_cycles(twists, mirror);
    let negated: Vec<i64> = twists.iter().map(|t| -t).collect();
    push_cycles(&negated, !mirror);
    out
}

/// Splits `Head(a, b, ...)` into the head and top-level comma-separated
/// argument substrings.
fn parse_call(s: &str) -> Option<(&str, Vec<&str>)> {
    let open = s.find('(')?;
    let head = s[..open].trim();
    let rest = s[open + 1..].trim_end();
    let inner = rest.strip_suffix(')')?;
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(&inner[start..]);
    if depth != 0 || args.iter().any(|a| a.trim().is_empty()) {
        return None;
    }
    Some((head, args))
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirror {
            write!(f, "mirror:")?;
        }
        match &self.kind {
            KnotKind::Unknot => write!(f, "U"),
            KnotKind::FigureEight => write!(f, "4_1"),
            KnotKind::Torus { p, q } => write!(f, "T({p},{q})"),
            KnotKind::Pretzel { twists } => {
                let parts: Vec<String> = twists.iter().map(|t| t.to_string()).collect();
                write!(f, "P({})", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_canonicalization() {
        assert_eq!(KnotSpec::torus(3, 2).unwrap(), KnotSpec::torus(2, 3).unwrap());
        assert_eq!(KnotSpec::torus(1, 9).unwrap(), KnotSpec::unknot());
        assert_eq!(KnotSpec::torus(-1, 1).unwrap(), KnotSpec::unknot());
        // Negative index = mirror.
        let left = KnotSpec::torus(-2, 3).unwrap();
        assert!(left.is_mirror());
        assert_eq!(left, KnotSpec::torus(2, 3).unwrap().mirrored());
        // Double negative cancels.
        assert!(!KnotSpec::torus(-2, -3).unwrap().is_mirror());
        assert!(matches!(KnotSpec::torus(2, 4), Err(Error::InvalidKnot(_))));
        assert!(matches!(KnotSpec::torus(0, 5), Err(Error::InvalidKnot(_))));
        assert_eq!(KnotSpec::torus(0, 1).unwrap(), KnotSpec::unknot());
    }

    #[test]
    fn amphichiral_shapes_absorb_mirror() {
        assert_eq!(KnotSpec::unknot().mirrored(), KnotSpec::unknot());
        assert_eq!(KnotSpec::figure_eight().mirrored(), KnotSpec::figure_eight());
        let trefoil = KnotSpec::torus(2, 3).unwrap();
        assert_ne!(trefoil.mirrored(), trefoil);
        assert_eq!(trefoil.mirrored().mirrored(), trefoil);
    }

    #[test]
    fn pretzel_validation() {
        assert!(KnotSpec::pretzel(vec![-2, 3, 7]).is_ok());
        assert!(matches!(
            KnotSpec::pretzel(vec![3, 5]),
            Err(Error::InvalidKnot(_))
        ));
    }

    #[test]
    fn pretzel_same_knot_moves() {
        let base = KnotSpec::pretzel(vec![-2, 3, 7]).unwrap();
        // Rotation.
        assert!(base.same_knot(&KnotSpec::pretzel(vec![3, 7, -2]).unwrap()));
        // Reversal.
        assert!(base.same_knot(&KnotSpec::pretzel(vec![7, 3, -2]).unwrap()));
        // Negation is the mirror.
        let negated = KnotSpec::pretzel(vec![2, -3, -7]).unwrap();
        assert!(!base.same_knot(&negated));
        assert!(base.same_knot(&negated.mirrored()));
        assert!(base.mirrored().same_knot(&negated));
        // A different pretzel is different.
        assert!(!base.same_knot(&KnotSpec::pretzel(vec![-2, 3, 9]).unwrap()));
    }

    #[test]
    fn coincidence_table() {
        let p1 = KnotSpec::pretzel(vec![-2, 3, 1]).unwrap();
        assert!(p1
            .equivalent_forms()
            .contains(&KnotSpec::torus(2, 5).unwrap()));
        let p3 = KnotSpec::pretzel(vec![-2, 3, 3]).unwrap();
        assert!(p3
            .equivalent_forms()
            .contains(&KnotSpec::torus(3, 4).unwrap()));
        let p5 = KnotSpec::pretzel(vec![-2, 3, 5]).unwrap();
        assert!(p5
            .equivalent_forms()
            .contains(&KnotSpec::torus(3, 5).unwrap()));
        // And back: T(3,4) knows its pretzel name.
        let t34 = KnotSpec::torus(3, 4).unwrap();
        assert!(t34
            .equivalent_forms()
            .iter()
            .any(|k| k.same_knot(&p3)));
        // Rotated presentation still matches.
        let rotated = KnotSpec::pretzel(vec![3, 1, -2]).unwrap();
        assert!(rotated
            .equivalent_forms()
            .contains(&KnotSpec::torus(2, 5).unwrap()));
        // Mirrors carry through.
        let mirrored = KnotSpec::pretzel(vec![-2, 3, 3]).unwrap().mirrored();
        assert!(mirrored
            .equivalent_forms()
            .contains(&KnotSpec::torus(3, 4).unwrap().mirrored()));
        // The famous non-torus pretzel has no partner.
        let p7 = KnotSpec::pretzel(vec![-2, 3, 7]).unwrap();
        assert_eq!(p7.equivalent_forms().len(), 1);
    }

    #[test]
    fn parser_round_trips() {
        for s in ["U", "4_1", "T(2,3)", "P(-2,3,7)", "mirror:T(2,5)", "mirror:P(3,5,7)"] {
            let k = KnotSpec::parse(s).unwrap();
            assert_eq!(k.to_string(), s, "round trip of {s}");
        }
    }

    #[test]
    fn parser_normalizes() {
        assert_eq!(
            KnotSpec::parse("T(3, 2)").unwrap(),
            KnotSpec::parse("T(2,3)").unwrap()
        );
        assert_eq!(
            KnotSpec::parse("T(-2, 3)").unwrap(),
            KnotSpec::parse("mirror:T(2,3)").unwrap()
        );
        assert_eq!(KnotSpec::parse(" mirror:U ").unwrap(), KnotSpec::unknot());
        assert_eq!(KnotSpec::parse("T(1, 100)").unwrap(), KnotSpec::unknot());
    }

    #[test]
    fn parser_with_env_serves_family_formulas() {
        let env: BTreeMap<String, i64> =
            [("k".to_string(), 1), ("l".to_string(), 2)].into();
        assert_eq!(
            KnotSpec::parse_with_env("T(k + 1, k + 2)", &env).unwrap(),
            KnotSpec::torus(2, 3).unwrap()
        );
        assert_eq!(
            KnotSpec::parse_with_env("P(-2, 3, 2*l - 1)", &env).unwrap(),
            KnotSpec::pretzel(vec![-2, 3, 3]).unwrap()
        );
    }

    #[test]
    fn parser_rejects_garbage() {
        for s in ["", "K(2,3)", "T(2)", "T(2,3,4)", "T(2,)", "P()", "T(2,3", "U2", "4_2"] {
            assert!(KnotSpec::parse(s).is_err(), "{s:?} should fail");
        }
        // Unbound variables error rather than default.
        assert!(KnotSpec::parse("T(k, 2)").is_err());
    }
}
