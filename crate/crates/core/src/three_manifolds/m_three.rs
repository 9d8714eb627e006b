//! The closed 3-manifolds `M(a₁, a₂, a₃)`: total spaces of the planar
//! open books with page a three-holed sphere and monodromy
//! `t₁^{a₁} t₂^{a₂} t₃^{a₃}` (Arikan 2008).  Every such manifold is a lens
//! space, a connected sum of two lens-class pieces, or a small Seifert
//! fibered space, and the split is decided by whether some `aᵢ ∈ {0, ±1}`.
//!
//! Classification needs a surgery presentation; that lives in the
//! `m3_linking.schema` data file and is passed in explicitly, so a caller
//! without the transcription gets a hard "transcription required" error
//! rather than a silent guess.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formula;
use crate::three_manifolds::{
    chain_to_lens, h1_from_linking, lens_from_surgery, LinkingMatrix, ManifoldKind, Slope,
    ThreeManifoldClass,
};

pub const M3_SCHEMA: &str = "m3-linking/1";

const BUILTIN: &str = include_str!("../../data/m3_linking.schema");

const CITATION: &str =
    "Arikan 2008 (planar open books with at most three binding components); \
     linking data reconstructed from the open-book description";

/// Twist exponents of the monodromy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MThreeParams {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl MThreeParams {
    pub fn new(a1: i64, a2: i64, a3: i64) -> Self {
        MThreeParams { a1, a2, a3 }
    }

    fn as_array(&self) -> [i64; 3] {
        [self.a1, self.a2, self.a3]
    }
}

#[derive(Debug, Clone, Deserialize)]
struct ComponentSlot {
    #[allow(dead_code)]
    name: String,
    #[allow(dead_code)]
    framing: String,
}

/// Parsed `m3_linking.schema`: a symbolic symmetric matrix over the params.
#[derive(Debug, Clone, Deserialize)]
pub struct M3Presentation {
    schema: String,
    pub reconstructed: bool,
    params: Vec<String>,
    #[allow(dead_code)]
    linking: Vec<String>,
    matrix: Vec<Vec<String>>,
    #[allow(dead_code)]
    components: Vec<ComponentSlot>,
}

impl M3Presentation {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let pres: M3Presentation =
            toml::from_str(text).map_err(|e| Error::Schema(format!("m3 linking schema: {e}")))?;
        if pres.schema != M3_SCHEMA {
            return Err(Error::Schema(format!(
                "m3 linking schema tag {:?}, expected {M3_SCHEMA}",
                pres.schema
            )));
        }
        if pres.params != ["a1", "a2", "a3"] {
            return Err(Error::Schema(format!(
                "m3 linking schema params {:?}, expected [a1, a2, a3]",
                pres.params
            )));
        }
        let n = pres.matrix.len();
        if n == 0 || pres.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Schema("m3 linking matrix is not square".to_string()));
        }
        Ok(pres)
    }

    /// The transcription shipped with the crate.
    pub fn builtin() -> Result<Self> {
        Self::from_toml_str(BUILTIN)
    }

    /// Evaluates the symbolic matrix at concrete twist exponents.
    pub fn evaluate(&self, params: &MThreeParams) -> Result<LinkingMatrix> {
        let env: BTreeMap<String, i64> = [
            ("a1".to_string(), params.a1),
            ("a2".to_string(), params.a2),
            ("a3".to_string(), params.a3),
        ]
        .into();
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| formula::eval(e, &env)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        LinkingMatrix::from_rows(&rows)
    }
}

/// Moves some degenerate exponent (`∈ {0, ±1}`) into the last slot.  The
/// three page boundary components are interchangeable by a diffeomorphism
/// of the three-holed sphere, so `M` is symmetric in its parameters.
fn normalize_degenerate(params: &MThreeParams) -> MThreeParams {
    let [a1, a2, a3] = params.as_array();
    let degenerate = |a: i64| a.abs() <= 1;
    if degenerate(a3) {
        MThreeParams::new(a1, a2, a3)
    } else if degenerate(a1) {
        MThreeParams::new(a3, a2, a1)
    } else if degenerate(a2) {
        MThreeParams::new(a1, a3, a2)
    } else {
        *params
    }
}

/// Classifies `M(a₁, a₂, a₃)` from the transcription: a lens class when
/// some exponent is `0` or `±1` (via the connected-sum or chain
/// reduction), otherwise a small Seifert tag.  H₁ is always attached from
/// the evaluated linking matrix.
pub fn classify_m(
    params: &MThreeParams,
    presentation: Option<&M3Presentation>,
) -> Result<ThreeManifoldClass> {
    let Some(pres) = presentation else {
        return Err(Error::TranscriptionRequired);
    };
    let linking = pres.evaluate(params)?;
    let h1 = h1_from_linking(&linking);
    let kind = reduce(&normalize_degenerate(params))?;
    let mut class = ThreeManifoldClass::new(kind, CITATION).with_h1(h1);
    if pres.reconstructed {
        class = class.with_condition(
            "surgery presentation reconstructed, not transcribed from a published picture",
        );
    }
    Ok(class)
}

fn reduce(params: &MThreeParams) -> Result<ManifoldKind> {
    let [x, y, z] = params.as_array();
    match z {
        0 => {
            // Monodromy t₁^x t₂^y on two independent annular pieces:
            // x-surgery and y-surgery summands.
            let left = lens_from_surgery(Slope::integer(x))?;
            let right = lens_from_surgery(Slope::integer(y))?;
            Ok(match (left.is_s3(), right.is_s3()) {
                (true, true) => ManifoldKind::S3,
                (true, false) => ManifoldKind::from_lens(right),
                (false, true) => ManifoldKind::from_lens(left),
                (false, false) => ManifoldKind::ConnSumLens { left, right },
            })
        }
        1 | -1 => {
            // The ±1-framed component blows down to a two-component chain
            // with weights x + z and y + z (the off-diagonal ±1 is
            // absorbed by reversing one component's orientation).
            Ok(ManifoldKind::from_lens(chain_to_lens(&[x + z, y + z])?))
        }
        _ => Ok(ManifoldKind::SmallSeifert {
            e0: None,
            fibers: Vec::new(),
        }),
    }
}

/// Convenience: classify with the shipped transcription.
pub fn classify_m_builtin(params: &MThreeParams) -> Result<ThreeManifoldClass> {
    let pres = M3Presentation::builtin()?;
    classify_m(params, Some(&pres))
}
