//! Genus bounds for knot traces.
//!
//! The lower bounds come from classifying what the boundary 3-manifold can
//! be: a trace of Euler characteristic 2 with a genus-g relative trisection
//! forces an open book with a planar page on the boundary (g ≤ 3 implies at
//! most three binding components), and the closed 3-manifolds carrying such
//! open books are completely known.  Combining that with the surgery
//! classification literature gives a four-step rule chain.  The upper
//! bounds come from the diagram families in [`crate::catalog`]: a bound is
//! claimed only when a catalog family actually instantiates to the queried
//! trace, which is re-verified on every query.
//!
//! Every returned bound carries citations; statements that hold only for
//! all but finitely many framings are flagged as conditions rather than
//! asserted for a specific framing.

pub mod knot;

use serde::Serialize;
use std::fmt;

use num_integer::Integer;

use crate::catalog::Catalog;
use crate::error::Result;
use crate::three_manifolds::{
    h1_from_linking, lens_from_surgery, LinkingMatrix, ManifoldKind, Slope, ThreeManifoldClass,
};
use crate::tris_params::genus_lower_bound_from_heegaard;
use self::knot::{KnotKind, KnotSpec};

const CITE_EXISTENCE: &str =
    "Gay–Kirby 2016: every compact 4-manifold with connected boundary admits a relative trisection";
const CITE_PROPERTY_P: &str =
    "Property P (Gordon–Luecke 1989): surgery on a knot yields S³ only for the unknot with framing ±1";
const CITE_KMOS_TANGE: &str =
    "Kronheimer–Mrowka–Ozsváth–Szabó 2007, Thm 1.1; Tange 2009, Thm 9: the only integer surgeries \
     yielding ±L(a,1) are unknot surgeries and ±5-surgery on ±T(2,3)";
const CITE_PLANAR: &str =
    "Arikan 2008: a closed 3-manifold with a planar open book with at most three binding \
     components is S³, a lens space, or a small Seifert/connected-sum manifold";
const CITE_BLM: &str =
    "Boileau–Lustig–Moriah 1994, Lemma 2: even surgery on an odd symmetric pretzel with \
     gcd of twists ≠ 1 has Heegaard genus equal to the strand count";
const CITE_CP2: &str =
    "Gay–Kirby 2016: ±CP² minus a ball admits a (1,0;0,1)-relative trisection";
const CITE_UNKNOT_SURGERY: &str = "integer m-surgery on the unknot yields -L(m,1) (classical)";
const CITE_FIG8: &str =
    "Thurston: figure-eight surgeries are Seifert fibered at ±1, ±2, ±3, toroidal at 0, ±4, \
     and hyperbolic otherwise";
const CITE_PRETZEL_HYP: &str =
    "Kawauchi 1996, §2.3: P(-2,3,2n-1) is hyperbolic for n ∉ {1,2,3}; Thurston: all but \
     finitely many surgeries on a hyperbolic knot have hyperbolic boundary";

const COND_HYPERBOLIC: &str =
    "requires hyperbolic boundary; holds for all but finitely many framings";

/// A one-sided genus bound with its derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: i64,
    pub citations: Vec<String>,
    pub conditions: Vec<String>,
}

/// The oracle's verdict for one trace.
///
/// `exact` is set iff the bounds meet; a nonempty `conditions` list means
/// the verdict relies on a statement that holds for all but finitely many
/// framings and is not certified for this specific one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub lower: i64,
    pub upper: Option<i64>,
    pub exact: Option<i64>,
    pub conditions: Vec<String>,
    pub citations: Vec<String>,
}

impl fmt::Display for GenusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact, self.upper) {
            (Some(g), _) => write!(f, "exact {g}")?,
            (None, Some(u)) => write!(f, "in [{}, {u}]", self.lower)?,
            (None, None) => write!(f, "at least {} (no upper bound known)", self.lower)?,
        }
        if !self.conditions.is_empty() {
            write!(f, " [conditional: {}]", self.conditions.join("; "))?;
        }
        Ok(())
    }
}

/// When a recorded boundary classification applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FramingPredicate {
    Any,
    Eq(i64),
    Even,
    Odd,
}

impl FramingPredicate {
    pub fn matches(&self, m: i64) -> bool {
        match self {
            FramingPredicate::Any => true,
            FramingPredicate::Eq(v) => *v == m,
            FramingPredicate::Even => m % 2 == 0,
            FramingPredicate::Odd => m % 2 != 0,
        }
    }
}

/// A recorded classification of `S³_m(K)` for framings matching a
/// predicate.  The class must carry its own citation.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryFact {
    pub knot: KnotSpec,
    pub framing: FramingPredicate,
    pub class: ThreeManifoldClass,
}

impl BoundaryFact {
    pub fn new(knot: KnotSpec, framing: FramingPredicate, class: ThreeManifoldClass) -> Self {
        assert!(
            !class.citation.is_empty(),
            "a boundary fact must cite its source"
        );
        BoundaryFact { knot, framing, class }
    }
}

/// The decision engine: a catalog for upper bounds plus (optionally
/// extended) boundary classification tables for lower bounds.
#[derive(Debug, Clone)]
pub struct GenusOracle {
    catalog: Catalog,
    extra_facts: Vec<BoundaryFact>,
}

impl GenusOracle {
    pub fn new(catalog: Catalog) -> GenusOracle {
        GenusOracle { catalog, extra_facts: Vec::new() }
    }

    pub fn builtin() -> Result<GenusOracle> {
        Ok(GenusOracle::new(Catalog::builtin()?))
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// Extends the classification table.  Extra facts are consulted before
    /// the built-in ones.
    pub fn with_fact(mut self, fact: BoundaryFact) -> GenusOracle {
        self.extra_facts.push(fact);
        self
    }

    /// Classifies the boundary `S³_m(K)` as far as the encoded tables
    /// reach; `Unknown` is a valid answer.  H₁ is always attached (it
    /// needs only the framing).
    pub fn boundary_classify(&self, knot: &KnotSpec, m: i64) -> ThreeManifoldClass {
        if knot.is_mirror() {
            // S³_m(mirror K) = -S³_{-m}(K); reverse orientation of the tag.
            let base = self.boundary_classify(&knot.mirrored(), -m);
            return ThreeManifoldClass {
                kind: reversed_kind(base.kind),
                ..base
            };
        }
        let h1 = h1_from_linking(&LinkingMatrix::diagonal(&[m]));
        for fact in &self.extra_facts {
            if fact.knot.same_knot(knot) && fact.framing.matches(m) {
                return fact.class.clone().with_h1(h1);
            }
        }
        let class = match knot.kind() {
            KnotKind::Unknot => match lens_from_surgery(Slope::integer(m)) {
                Ok(lens) => {
                    ThreeManifoldClass::new(ManifoldKind::from_lens(lens), CITE_UNKNOT_SURGERY)
                }
                Err(_) => ThreeManifoldClass::new(ManifoldKind::Unknown, CITE_UNKNOT_SURGERY),
            },
            KnotKind::FigureEight => {
                let kind = match m.abs() {
                    1 => ManifoldKind::SmallSeifert { e0: None, fibers: vec![2, 3, 7] },
                    2 => ManifoldKind::SmallSeifert { e0: None, fibers: vec![2, 4, 5] },
                    3 => ManifoldKind::SmallSeifert { e0: None, fibers: vec![3, 3, 4] },
                    0 | 4 => ManifoldKind::Toroidal,
                    _ => ManifoldKind::Hyperbolic,
                };
                ThreeManifoldClass::new(kind, CITE_FIG8)
            }
            KnotKind::Pretzel { twists } => match pretzel_minus2_3_odd(twists) {
                Some(n) if !(1..=3).contains(&n) => {
                    ThreeManifoldClass::new(ManifoldKind::Hyperbolic, CITE_PRETZEL_HYP)
                        .with_condition(COND_HYPERBOLIC)
                }
                _ => unknown_class(),
            },
            KnotKind::Torus { .. } => unknown_class(),
        };
        class.with_h1(h1)
    }

    /// The maximal lower bound the rule chain certifies, with the
    /// citations of every rule that fired.
    pub fn lower_bound(&self, knot: &KnotSpec, m: i64) -> Bound {
        if knot.is_mirror() {
            // Trisection genus is invariant under orientation reversal,
            // and X_m(mirror K) is X_{-m}(K) reversed.
            return self.lower_bound(&knot.mirrored(), -m);
        }
        struct Rule {
            value: i64,
            citations: Vec<String>,
            conditions: Vec<String>,
        }
        let rule = |value: i64, cites: &[&str]| Rule {
            value,
            citations: cites.iter().map(|c| c.to_string()).collect(),
            conditions: Vec::new(),
        };

        let mut fired = vec![rule(1, &[CITE_EXISTENCE])];
        let is_unknot = knot.is_unknot();
        // A pretzel presentation containing a 0 or ±1 twist can collapse
        // (P(1,-1,x) is unknotted, P(1,1,1) is a trefoil); unless the
        // coincidence table resolves it to a torus knot, the rules that
        // need "this is not the unknot/trefoil" must stay silent.
        let uncertain = uncertain_small_pretzel(knot);

        // Boundary is S³ only for the ±1-traces of the unknot.  For
        // |m| ≠ 1 this needs no identity check at all.
        if !(m.abs() == 1 && (is_unknot || uncertain)) {
            fired.push(rule(2, &[CITE_PROPERTY_P]));
        }

        // Boundary is ±L(a,1) only for unknot traces and the 5-trace of
        // the right-handed trefoil (the left-handed case was normalized
        // to this one above).
        let trefoil_five = m == 5 && knot.same_knot(&KnotSpec::torus(2, 3).expect("knot"));
        if !(is_unknot || trefoil_five || uncertain) {
            fired.push(rule(3, &[CITE_KMOS_TANGE]));
        }

        // Toroidal or hyperbolic boundary is not a planar-open-book
        // manifold with three bindings, so genus 3 is impossible too.
        let class = self.boundary_classify(knot, m);
        if class.kind.rules_out_m_type() {
            fired.push(Rule {
                value: 4,
                citations: vec![class.citation.clone(), CITE_PLANAR.to_string()],
                conditions: class.conditions.clone(),
            });
        }

        // Heegaard genus of the boundary bounds the trisection genus from
        // below: an (N,k;p,b)-relative trisection of a χ=2 trace gives a
        // boundary Heegaard splitting of genus 2p+b-1 ≤ N-1.
        if let Some(r) = symmetric_odd_pretzel_rank(knot, m) {
            let value = genus_lower_bound_from_heegaard(r)
                .expect("strand count is a valid Heegaard genus");
            fired.push(rule(value, &[CITE_BLM]));
        }

        let best = fired.iter().map(|r| r.value).max().expect("baseline rule");
        let top: Vec<&Rule> = fired.iter().filter(|r| r.value == best).collect();
        // The bound is conditional only if every rule achieving it is.
        let conditions = if top.iter().all(|r| !r.conditions.is_empty()) {
            dedup(top.iter().flat_map(|r| r.conditions.iter().cloned()))
        } else {
            Vec::new()
        };
        Bound {
            value: best,
            citations: dedup(fired.iter().flat_map(|r| r.citations.iter().cloned())),
            conditions,
        }
    }

    /// The least genus of a certified construction for this trace, or
    /// `None` when no catalog family (and no recorded construction)
    /// realizes it.  Every family match is re-verified by instantiation.
    pub fn upper_bound(&self, knot: &KnotSpec, m: i64) -> Option<Bound> {
        if knot.is_mirror() {
            return self.upper_bound(&knot.mirrored(), -m);
        }
        let mut candidates: Vec<(i64, String)> = Vec::new();
        if knot.is_unknot() && m.abs() == 1 {
            candidates.push((1, CITE_CP2.to_string()));
        }
        for form in knot.equivalent_forms() {
            for spec in self.catalog.families() {
                let Some(values) = invert_family(spec.name(), &form, m) else {
                    continue;
                };
                let Ok(instance) = spec.instantiate(&values) else {
                    continue;
                };
                if !instance.knot.same_knot(&form) || instance.framing != m {
                    continue;
                }
                let assignments: Vec<String> = spec
                    .params()
                    .iter()
                    .zip(&values)
                    .map(|(name, v)| format!("{name}={v}"))
                    .collect();
                candidates.push((
                    spec.ttype().g(),
                    format!(
                        "family {} at ({}): {}",
                        spec.name(),
                        assignments.join(", "),
                        spec.metadata().citation
                    ),
                ));
            }
        }
        let best = candidates.iter().map(|(g, _)| *g).min()?;
        Some(Bound {
            value: best,
            citations: dedup(
                candidates
                    .into_iter()
                    .filter(|(g, _)| *g == best)
                    .map(|(_, c)| c),
            ),
            conditions: Vec::new(),
        })
    }

    /// Combines both bounds; `exact` is set when they meet, and is
    /// conditional exactly when the meeting lower bound is.
    pub fn trace_genus(&self, knot: &KnotSpec, m: i64) -> GenusResult {
        let lower = self.lower_bound(knot, m);
        let upper = self.upper_bound(knot, m);
        if let Some(u) = &upper {
            assert!(
                lower.value <= u.value,
                "internal contradiction for ({knot}, {m}): lower {} exceeds certified upper {}",
                lower.value,
                u.value
            );
        }
        let exact = upper
            .as_ref()
            .filter(|u| u.value == lower.value)
            .map(|u| u.value);
        let mut citations = lower.citations;
        if let Some(u) = &upper {
            citations.extend(u.citations.iter().cloned());
        }
        GenusResult {
            lower: lower.value,
            upper: upper.as_ref().map(|u| u.value),
            exact,
            conditions: lower.conditions,
            citations: dedup(citations),
        }
    }
}

fn unknown_class() -> ThreeManifoldClass {
    ThreeManifoldClass::new(
        ManifoldKind::Unknown,
        "no encoded classification for this surgery",
    )
}

fn reversed_kind(kind: ManifoldKind) -> ManifoldKind {
    match kind {
        ManifoldKind::Lens(l) => ManifoldKind::from_lens(l.reversed()),
        ManifoldKind::ConnSumLens { left, right } => ManifoldKind::ConnSumLens {
            left: left.reversed(),
            right: right.reversed(),
        },
        other => other,
    }
}

fn dedup(items: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

/// Whether this pretzel presentation might secretly be the unknot or a
/// trefoil: it contains a twist in `{0, ±1}` and the coincidence table
/// does not resolve it.  A pretzel with every twist of absolute value at
/// least 2 is a genuine Montesinos knot whose double branched cover has
/// three exceptional fibers, which rules out both.
fn uncertain_small_pretzel(knot: &KnotSpec) -> bool {
    match knot.kind() {
        KnotKind::Pretzel { twists } if twists.iter().any(|t| t.abs() <= 1) => knot
            .equivalent_forms()
            .iter()
            .all(|f| matches!(f.kind(), KnotKind::Pretzel { .. })),
        _ => false,
    }
}

/// Matches a 3-strand pretzel against `P(-2, 3, w)` with `w` odd (up to
/// rotation and reversal), returning `n` with `w = 2n - 1`.
fn pretzel_minus2_3_odd(twists: &[i64]) -> Option<i64> {
    if twists.len() != 3 {
        return None;
    }
    for start in 0..3 {
        for dir in [1i64, -1] {
            let arranged: Vec<i64> = (0..3)
                .map(|i| twists[(start as i64 + dir * i as i64).rem_euclid(3) as usize])
                .collect();
            if arranged[0] == -2 && arranged[1] == 3 && arranged[2].rem_euclid(2) == 1 {
                return Some((arranged[2] + 1) / 2);
            }
        }
    }
    None
}

/// Strand count of a pretzel presentation meeting the even-surgery
/// Heegaard-genus conditions: odd strand count, every twist odd, some
/// rotation palindromic, gcd of twists ≠ 1, and m even.
fn symmetric_odd_pretzel_rank(knot: &KnotSpec, m: i64) -> Option<i64> {
    if m % 2 != 0 {
        return None;
    }
    for form in knot.equivalent_forms() {
        let KnotKind::Pretzel { twists } = form.kind() else {
            continue;
        };
        let r = twists.len();
        if r % 2 == 0 || twists.iter().any(|t| t % 2 == 0) {
            continue;
        }
        let gcd = twists.iter().fold(0i64, |acc, t| acc.gcd(t));
        if gcd == 1 {
            continue;
        }
        let palindromic = (0..r).any(|s| {
            (0..r).all(|i| twists[(s + i) % r] == twists[(s + r - 1 - i) % r])
        });
        if palindromic {
            return Some(r as i64);
        }
    }
    None
}

/// Parameter values at which the named built-in family would produce the
/// given knot form with framing `m`, if any.  The caller re-verifies by
/// instantiating, so this only needs to be complete, not trusted.
fn invert_family(name: &str, form: &KnotSpec, m: i64) -> Option<Vec<i64>> {
    if form.is_mirror() {
        return None;
    }
    let fits = |v: i128| -> Option<i64> { i64::try_from(v).ok() };
    match (name, form.kind()) {
        ("unknot-m-trace", KnotKind::Unknot) => Some(vec![m]),
        ("trefoil-5-trace", KnotKind::Torus { p: 2, q: 3 }) if m == 5 => Some(vec![]),
        ("torus-pp1-trace", KnotKind::Torus { p, q }) if *q == p + 1 => {
            let k = (p - 1) as i128;
            let l = m as i128 - (k * k + 3 * k + 1);
            Some(vec![fits(k)?, fits(l)?])
        }
        ("torus-ppq1-trace", KnotKind::Torus { p, q }) if (q - 1) % p == 0 => {
            let j = ((q - 1) / p) as i128 + 2;
            let k = (p - 1) as i128;
            let quad = (j - 2).checked_mul(k.checked_mul(k)?)?;
            let lin = (2 * j - 3).checked_mul(k)?;
            let l = (m as i128).checked_sub(quad.checked_add(lin)?.checked_add(j - 2)?)?;
            Some(vec![fits(j)?, fits(k)?, fits(l)?])
        }
        ("pretzel-trace", KnotKind::Pretzel { twists }) => {
            let n = pretzel_minus2_3_odd(twists)?;
            let l = n as i128;
            let k = m as i128 - 4 * l - 4;
            Some(vec![fits(k)?, fits(l)?])
        }
        ("figure-eight-trace", KnotKind::FigureEight) => Some(vec![m.checked_add(3)?]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::three_manifolds::{AbelianGroup, LensSpace};

    fn oracle() -> GenusOracle {
        GenusOracle::builtin().unwrap()
    }

    fn knot(s: &str) -> KnotSpec {
        KnotSpec::parse(s).unwrap()
    }

    #[test]
    fn unknot_traces() {
        let o = oracle();
        for m in -30..=30 {
            let r = o.trace_genus(&KnotSpec::unknot(), m);
            let expected = if m.abs() == 1 { 1 } else { 2 };
            assert_eq!(r.exact, Some(expected), "m = {m}");
            assert!(r.conditions.is_empty());
            assert!(!r.citations.is_empty());
        }
    }

    #[test]
    fn trefoil_traces() {
        let o = oracle();
        let trefoil = knot("T(2,3)");
        assert_eq!(o.trace_genus(&trefoil, 5).exact, Some(2));
        assert_eq!(o.trace_genus(&trefoil.mirrored(), -5).exact, Some(2));
        // Every other framing of either trefoil is genus 3.
        for m in [-5, -1, 0, 1, 4, 6, 100] {
            assert_eq!(o.trace_genus(&trefoil, m).exact, Some(3), "m = {m}");
        }
        assert_eq!(o.trace_genus(&trefoil.mirrored(), 5).exact, Some(3));
    }

    #[test]
    fn consecutive_torus_traces() {
        let o = oracle();
        for p in 2..=8 {
            let k = KnotSpec::torus(p, p + 1).unwrap();
            for m in [-13, -1, 0, 5, 29] {
                let expected = if p == 2 && m == 5 { 2 } else { 3 };
                assert_eq!(o.trace_genus(&k, m).exact, Some(expected), "p = {p}, m = {m}");
                assert_eq!(
                    o.trace_genus(&k.mirrored(), -m).exact,
                    Some(expected),
                    "mirror, p = {p}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn multiple_of_p_plus_one_torus_traces() {
        let o = oracle();
        // T(p, pq+1) has a genus-4 trace for every framing; no exactness
        // is claimed unless a genus-3 family also matches.
        let r = o.trace_genus(&knot("T(3,7)"), 11);
        assert_eq!((r.lower, r.upper, r.exact), (3, Some(4), None));
        for m in [-9, 0, 2, 31] {
            let r = o.trace_genus(&knot("T(4,9)"), m);
            assert_eq!((r.lower, r.upper, r.exact), (3, Some(4), None), "m = {m}");
        }
        // T(4,11): 10 is not a multiple of 4, and no other family fits.
        let r = o.trace_genus(&knot("T(4,11)"), 3);
        assert_eq!((r.lower, r.upper), (3, None));
    }

    #[test]
    fn torus_pretzel_border_cases_stay_open() {
        let o = oracle();
        // T(5,2) and T(3,5) carry pretzel presentations with n ∈ {1,3};
        // their boundaries are Seifert fibered, so the oracle must never
        // report exact 4 for them.
        for s in ["T(2,5)", "T(3,5)", "P(-2,3,1)", "P(-2,3,5)"] {
            let k = knot(s);
            for m in -12..=12 {
                let r = o.trace_genus(&k, m);
                assert_eq!((r.lower, r.upper), (3, Some(4)), "{s}, m = {m}");
                assert_eq!(r.exact, None, "{s}, m = {m}");
            }
        }
    }

    #[test]
    fn hyperbolic_pretzel_traces_are_conditionally_exact() {
        let o = oracle();
        for s in ["P(-2,3,7)", "P(-2,3,9)", "P(-2,3,-3)", "P(3,7,-2)"] {
            let k = knot(s);
            for m in [-6, 0, 1, 17] {
                let r = o.trace_genus(&k, m);
                assert_eq!(r.exact, Some(4), "{s}, m = {m}");
                assert_eq!(r.conditions, vec![COND_HYPERBOLIC.to_string()], "{s}");
            }
        }
        // n = 2 is the torus knot T(3,4): unconditionally genus 3.
        for m in [-6, 0, 12] {
            let r = o.trace_genus(&knot("P(-2,3,3)"), m);
            assert_eq!(r.exact, Some(3), "m = {m}");
            assert!(r.conditions.is_empty());
        }
    }

    #[test]
    fn figure_eight_traces() {
        let o = oracle();
        let k = KnotSpec::figure_eight();
        for m in [-3, -2, -1, 1, 2, 3] {
            let r = o.trace_genus(&k, m);
            assert_eq!((r.lower, r.upper, r.exact), (3, Some(4), None), "m = {m}");
        }
        for m in [0, 4, -4, 5, -5, 7, 100] {
            let r = o.trace_genus(&k, m);
            assert_eq!(r.exact, Some(4), "m = {m}");
            assert!(r.conditions.is_empty(), "the surgery table is complete");
        }
    }

    #[test]
    fn figure_eight_boundary_table() {
        let o = oracle();
        let k = KnotSpec::figure_eight();
        let kind = |m: i64| o.boundary_classify(&k, m).kind;
        assert_eq!(
            kind(2),
            ManifoldKind::SmallSeifert { e0: None, fibers: vec![2, 4, 5] }
        );
        assert_eq!(
            kind(-1),
            ManifoldKind::SmallSeifert { e0: None, fibers: vec![2, 3, 7] }
        );
        assert_eq!(
            kind(-3),
            ManifoldKind::SmallSeifert { e0: None, fibers: vec![3, 3, 4] }
        );
        assert_eq!(kind(0), ManifoldKind::Toroidal);
        assert_eq!(kind(4), ManifoldKind::Toroidal);
        assert_eq!(kind(7), ManifoldKind::Hyperbolic);
        let class = o.boundary_classify(&k, 7);
        assert_eq!(class.h1, Some(AbelianGroup::cyclic(7)));
    }

    #[test]
    fn unknot_boundary_table() {
        let o = oracle();
        let u = KnotSpec::unknot();
        assert_eq!(
            o.boundary_classify(&u, 3).kind,
            ManifoldKind::Lens(LensSpace::new(3, 1, false).unwrap())
        );
        assert_eq!(
            o.boundary_classify(&u, -3).kind,
            ManifoldKind::Lens(LensSpace::new(3, 1, true).unwrap())
        );
        assert_eq!(o.boundary_classify(&u, 1).kind, ManifoldKind::S3);
        assert_eq!(o.boundary_classify(&u, 0).kind, ManifoldKind::S1xS2);
        assert_eq!(
            o.boundary_classify(&u, 5).h1,
            Some(AbelianGroup::cyclic(5))
        );
    }

    #[test]
    fn symmetric_pretzel_heegaard_rule() {
        let o = oracle();
        // P(3,3,3), even framing: Heegaard genus 3 forces genus ≥ 4.
        for m in [-6, 0, 2] {
            let r = o.trace_genus(&knot("P(3,3,3)"), m);
            assert_eq!((r.lower, r.upper), (4, None), "m = {m}");
        }
        // Odd framing: the rule does not apply.
        assert_eq!(o.trace_genus(&knot("P(3,3,3)"), 1).lower, 3);
        // gcd 1 disables it.
        assert_eq!(o.trace_genus(&knot("P(3,5,3)"), 0).lower, 3);
        // Five symmetric strands push the bound to 6.
        assert_eq!(o.trace_genus(&knot("P(5,5,5,5,5)"), 2).lower, 6);
        // Symmetry is tested up to rotation: (3,3,9,9,3) rotates to the
        // palindrome (9,3,3,3,9).
        assert_eq!(o.trace_genus(&knot("P(9,3,3,3,9)"), 0).lower, 6);
        assert_eq!(o.trace_genus(&knot("P(3,3,9,9,3)"), 0).lower, 6);
        // An even twist disables it.
        assert_eq!(o.trace_genus(&knot("P(3,3,6,3,3)"), 0).lower, 3);
    }

    #[test]
    fn unknown_knots_get_lower_only_results() {
        let o = oracle();
        let r = o.trace_genus(&knot("P(7,9,11)"), 4);
        assert_eq!((r.lower, r.upper, r.exact), (3, None, None));
        assert!(!r.citations.is_empty());
    }

    #[test]
    fn collapsible_pretzel_presentations_stay_conservative() {
        let o = oracle();
        // P(1,1,1) is a trefoil and P(1,-1,5) is unknotted; the oracle
        // cannot see that, so it must not certify bounds that would be
        // wrong for those knots.
        for s in ["P(1,1,1)", "P(1,-1,5)", "P(0,3,3)"] {
            let k = knot(s);
            assert_eq!(o.trace_genus(&k, 1).lower, 1, "{s}");
            assert_eq!(o.trace_genus(&k, 7).lower, 2, "{s}");
        }
        // A table-resolved ±1 presentation is certain: P(-2,3,1) = T(2,5).
        assert_eq!(o.trace_genus(&knot("P(-2,3,1)"), 1).lower, 3);
    }

    #[test]
    fn mirror_queries_match_reversed_framings() {
        let o = oracle();
        for s in ["T(2,3)", "T(3,4)", "T(2,5)", "P(-2,3,7)", "P(3,3,3)", "4_1", "U"] {
            let k = knot(s);
            for m in -8..=8 {
                let a = o.trace_genus(&k, m);
                let b = o.trace_genus(&k.mirrored(), -m);
                assert_eq!((a.lower, a.upper, a.exact), (b.lower, b.upper, b.exact), "{s}, m = {m}");
            }
        }
    }

    #[test]
    fn removing_families_never_changes_lower_bounds() {
        let full = oracle();
        for name in full.catalog().names().into_iter().map(str::to_string) {
            let reduced = GenusOracle::new(full.catalog().without(&name));
            for s in ["U", "T(2,3)", "T(3,4)", "T(3,7)", "P(-2,3,7)", "4_1"] {
                let k = knot(s);
                for m in [-5, 0, 5, 11] {
                    let a = full.lower_bound(&k, m);
                    let b = reduced.lower_bound(&k, m);
                    assert_eq!(a.value, b.value, "{name} removed, {s}, m = {m}");
                    let fu = full.upper_bound(&k, m).map(|b| b.value);
                    let ru = reduced.upper_bound(&k, m).map(|b| b.value);
                    // Fewer families can only weaken (raise or drop) the upper bound.
                    match (fu, ru) {
                        (Some(f), Some(r)) => assert!(f <= r, "{name}, {s}, m = {m}"),
                        (Some(_), None) | (None, None) => {}
                        (None, Some(_)) => panic!("removing a family created an upper bound"),
                    }
                }
            }
        }
    }

    #[test]
    fn extra_facts_never_lower_upper_bounds() {
        let base = oracle();
        let k = knot("P(7,9,11)");
        let fact = BoundaryFact::new(
            k.clone(),
            FramingPredicate::Eq(4),
            ThreeManifoldClass::new(ManifoldKind::Hyperbolic, "test fixture"),
        );
        let extended = oracle().with_fact(fact);
        assert_eq!(base.lower_bound(&k, 4).value, 3);
        assert_eq!(extended.lower_bound(&k, 4).value, 4);
        assert_eq!(
            base.upper_bound(&k, 4).map(|b| b.value),
            extended.upper_bound(&k, 4).map(|b| b.value)
        );
        // The predicate gates the fact.
        assert_eq!(extended.lower_bound(&k, 5).value, 3);
    }

    #[test]
    fn framing_predicates() {
        assert!(FramingPredicate::Any.matches(-7));
        assert!(FramingPredicate::Eq(3).matches(3));
        assert!(!FramingPredicate::Eq(3).matches(-3));
        assert!(FramingPredicate::Even.matches(-4));
        assert!(!FramingPredicate::Even.matches(7));
        assert!(FramingPredicate::Odd.matches(-7));
    }

    #[test]
    fn bounds_are_ordered_and_cited_on_a_grid() {
        let o = oracle();
        let knots = [
            "U", "T(2,3)", "T(3,4)", "T(2,7)", "T(3,7)", "T(4,11)",
            "P(-2,3,7)", "P(-2,3,1)", "P(3,3,3)", "P(7,9,11)", "4_1",
        ];
        for s in knots {
            for mirror in [false, true] {
                let k = if mirror { knot(s).mirrored() } else { knot(s) };
                for m in -10..=10 {
                    let r = o.trace_genus(&k, m);
                    assert!(r.lower >= 1);
                    if let Some(u) = r.upper {
                        assert!(r.lower <= u, "{k}, m = {m}");
                        assert_eq!(r.exact.is_some(), r.lower == u);
                    } else {
                        assert_eq!(r.exact, None);
                    }
                    assert!(!r.citations.is_empty(), "{k}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn upper_bound_cites_the_matching_family() {
        let o = oracle();
        let b = o.upper_bound(&knot("T(3,4)"), 12).unwrap();
        assert_eq!(b.value, 3);
        assert!(b.citations.iter().any(|c| c.contains("torus-pp1-trace")));
        let b = o.upper_bound(&KnotSpec::unknot(), 1).unwrap();
        assert_eq!(b.value, 1);
        let b = o.upper_bound(&KnotSpec::figure_eight(), -11).unwrap();
        assert_eq!(b.value, 4);
        assert!(b.citations.iter().any(|c| c.contains("figure-eight-trace")));
    }

    #[test]
    fn display_formats() {
        let o = oracle();
        assert_eq!(o.trace_genus(&knot("U"), 1).to_string(), "exact 1");
        assert_eq!(
            o.trace_genus(&knot("4_1"), 2).to_string(),
            "in [3, 4]"
        );
        assert!(o
            .trace_genus(&knot("P(3,3,3)"), 0)
            .to_string()
            .starts_with("at least 4"));
        assert!(o
            .trace_genus(&knot("P(-2,3,7)"), 0)
            .to_string()
            .contains("conditional"));
    }
}
