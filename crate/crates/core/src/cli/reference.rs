use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homological::CoproductTargets;
use crate::invariants::Profile;
use crate::series::{registry, RationalSeries};

/// A `Sq^1` identity between named classes: `Sq^1(source) = target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sq1Identity {
    pub profile: Profile,
    pub source: String,
    pub target: String,
}

/// Expected values that scenarios compare their computations against.
///
/// `Default` holds the published values. A JSON reference file may list
/// any subset of the fields; the rest keep their defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReferenceData {
    pub dickson: RationalSeries,
    pub dickson_degrees: Vec<u32>,
    pub a6: RationalSeries,
    pub a7: RationalSeries,
    pub coproduct: CoproductTargets,
    /// `(n, dim E2)` spot values.
    pub em_e2_spots: Vec<(u32, u64)>,
    /// `dim E3` for `n = 0, 1, ...`.
    pub em_e3: Vec<u64>,
    pub psu_expansion: Vec<u64>,
    pub a6_bockstein: RationalSeries,
    pub sq1_identities: Vec<Sq1Identity>,
    /// Right-hand side of the relation for `d14` among the `A_6` classes.
    pub d14_relation: String,
    /// `A_7` classes expected to restrict to zero when `x3` and `x4` are
    /// set to zero.
    pub restriction_classes: Vec<String>,
    pub mcl_closed_form: RationalSeries,
    /// `(degree, dim H*(McL))` for the low degrees.
    pub mcl_low_degrees: Vec<(u32, u64)>,
    /// Degrees of the generators `1, a7, a11, x18` multiplied by `e`, and
    /// of the polynomial generators, in the extension summand for `N`.
    pub n_module_degrees: Vec<u32>,
    pub n_polynomial_degrees: Vec<u32>,
    pub n_degree_one: u64,
}

impl Default for ReferenceData {
    fn default() -> Self {
        let sq1 = |profile, source: &str, target: &str| Sq1Identity {
            profile,
            source: source.into(),
            target: target.into(),
        };
        let mut mcl_low_degrees: Vec<(u32, u64)> = (1..=6).map(|d| (d, 0)).collect();
        mcl_low_degrees.extend([(7, 1), (8, 1)]);
        ReferenceData {
            dickson: registry::dickson_algebra(),
            dickson_degrees: vec![8, 12, 14, 15],
            a6: registry::a6_invariants(),
            a7: registry::a7_invariants(),
            coproduct: CoproductTargets::default(),
            em_e2_spots: vec![(0, 1), (1, 0), (2, 1), (3, 2), (4, 2), (5, 4), (6, 5), (8, 9)],
            em_e3: vec![1, 0, 1, 1, 0, 2, 2, 1, 3],
            psu_expansion: vec![
                1, 0, 0, 1, 0, 2, 2, 0, 3, 4, 2, 3, 5, 4, 6, 8, 5, 10, 11, 7, 15, 16, 12, 18, 22,
            ],
            a6_bockstein: registry::a6_bockstein_e2(),
            sq1_identities: vec![
                sq1(Profile::A7, "d14", "d15"),
                sq1(Profile::A7, "x20", "x21"),
                sq1(Profile::A7, "x24", "x25"),
                sq1(Profile::A6, "g5", "w3^2"),
                sq1(Profile::A6, "g9", "g5^2"),
            ],
            d14_relation: "g5*g9 + w3^2*d8 + w3^3*g5".into(),
            restriction_classes: ["x20", "x21", "x24", "x25"].map(String::from).to_vec(),
            mcl_closed_form: registry::mcl_closed_form(),
            mcl_low_degrees,
            n_module_degrees: vec![0, 7, 11, 18],
            n_polynomial_degrees: vec![1, 8, 12],
            n_degree_one: 1,
        }
    }
}

impl ReferenceData {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
