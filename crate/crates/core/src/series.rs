//! Poincare series as exact rational functions `p(t) / prod (1 - t^a)`, and
//! dimension tables obtained by combining them with integer multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `numerator(t) / prod_a (1 - t^a)` with integer numerator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: BTreeMap<u32, i64>,
    denominator: Vec<u32>,
}

impl RationalSeries {
    /// Builds a series from `(exponent, coefficient)` pairs and the exponents
    /// `a` of the `(1 - t^a)` factors. Repeated exponents are summed.
    pub fn new(numerator: &[(u32, i64)], denominator: &[u32]) -> Result<Self> {
        if let Some(&a) = denominator.iter().find(|&&a| a == 0) {
            return Err(Error::Parse(format!("denominator factor 1 - t^{a} is not invertible")));
        }
        let mut num = BTreeMap::new();
        for &(e, c) in numerator {
            *num.entry(e).or_insert(0) += c;
        }
        num.retain(|_, c| *c != 0);
        let mut den = denominator.to_vec();
        den.sort_unstable();
        Ok(RationalSeries {
            numerator: num,
            denominator: den,
        })
    }

    /// Numerator `sum t^e` over `exponents`, all with coefficient 1.
    pub fn monic(exponents: &[u32], denominator: &[u32]) -> Self {
        let num: Vec<(u32, i64)> = exponents.iter().map(|&e| (e, 1)).collect();
        Self::new(&num, denominator).expect("positive denominator exponents")
    }

    pub fn numerator(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.numerator.iter().map(|(&e, &c)| (e, c))
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    /// Taylor coefficients for degrees `0..=n_max`.
    pub fn expand(&self, n_max: u32) -> Vec<i64> {
        let n = n_max as usize;
        let mut c = vec![0i64; n + 1];
        for (&e, &v) in &self.numerator {
            if (e as usize) <= n {
                c[e as usize] += v;
            }
        }
        // dividing by (1 - t^a) is a running sum with stride a
        for &a in &self.denominator {
            let a = a as usize;
            for i in a..=n {
                c[i] += c[i - a];
            }
        }
        c
    }

    pub fn scale(&self, k: i64) -> Self {
        let num: Vec<(u32, i64)> = self.numerator().map(|(e, c)| (e, c * k)).collect();
        Self::new(&num, &self.denominator).expect("same denominator")
    }

    /// Sum over the least common multiset of denominator factors.
    pub fn add(&self, other: &RationalSeries) -> Self {
        let mut mine = self.denominator.clone();
        let mut theirs = other.denominator.clone();
        let mut common = Vec::new();
        let (mut extra_mine, mut extra_theirs) = (Vec::new(), Vec::new());
        mine.reverse();
        theirs.reverse();
        loop {
            match (mine.last(), theirs.last()) {
                (Some(&a), Some(&b)) if a == b => {
                    common.push(a);
                    mine.pop();
                    theirs.pop();
                }
                (Some(&a), Some(&b)) if a < b => {
                    extra_mine.push(a);
                    mine.pop();
                }
                (Some(_), Some(&b)) => {
                    extra_theirs.push(b);
                    theirs.pop();
                }
                (Some(&a), None) => {
                    extra_mine.push(a);
                    mine.pop();
                }
                (None, Some(&b)) => {
                    extra_theirs.push(b);
                    theirs.pop();
                }
                (None, None) => break,
            }
        }
        // a/(C M) + b/(C T) = (a T + b M) / (C M T)
        let lhs = multiply_by_factors(&self.numerator, &extra_theirs);
        let rhs = multiply_by_factors(&other.numerator, &extra_mine);
        let mut num: Vec<(u32, i64)> = lhs.into_iter().collect();
        num.extend(rhs);
        let mut den = common;
        den.extend(extra_mine);
        den.extend(extra_theirs);
        Self::new(&num, &den).expect("positive denominator exponents")
    }

    /// Parses `num: [(0,1),(18,1)] den: [8,12]`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("series literal {text:?}: {why}"));
        let rest = text.trim().strip_prefix("num:").ok_or_else(|| bad("expected \"num:\""))?;
        let (num_text, den_text) = rest.split_once("den:").ok_or_else(|| bad("expected \"den:\""))?;
        let list = |s: &str| -> Result<String> {
            let s = s.trim();
            s.strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .map(str::to_string)
                .ok_or_else(|| bad("lists must be bracketed"))
        };
        let num_body = list(num_text)?;
        let mut num = Vec::new();
        let mut rest = num_body.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let (pair, after) = inner.split_once(')').ok_or_else(|| bad("expected ')'"))?;
            let (e, c) = pair.split_once(',').ok_or_else(|| bad("pairs are (exponent,coefficient)"))?;
            let e: u32 = e.trim().parse().map_err(|_| bad("bad exponent"))?;
            let c: i64 = c.trim().parse().map_err(|_| bad("bad coefficient"))?;
            num.push((e, c));
            rest = after.trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        let den_body = list(den_text)?;
        let den = den_body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| bad("bad denominator exponent")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&num, &den)
    }
}

fn multiply_by_factors(num: &BTreeMap<u32, i64>, factors: &[u32]) -> BTreeMap<u32, i64> {
    let mut cur = num.clone();
    for &a in factors {
        let mut next = cur.clone();
        for (&e, &c) in &cur {
            *next.entry(e + a).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self.numerator().map(|(e, c)| format!("({e},{c})")).collect();
        let den: Vec<String> = self.denominator.iter().map(|a| a.to_string()).collect();
        write!(f, "num: [{}] den: [{}]", num.join(","), den.join(","))
    }
}

/// Serialized as its `num: [...] den: [...]` text.
impl Serialize for RationalSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        RationalSeries::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Taylor coefficients of `s` through `n_max`.
pub fn expand(s: &RationalSeries, n_max: u32) -> Vec<i64> {
    s.expand(n_max)
}

/// A dimension count assembled from several series with integer
/// multiplicities (an alternating sum along an exact sequence, or a direct
/// sum).
#[derive(Clone, Debug)]
pub struct StructureTheorem {
    pub name: String,
    pub terms: Vec<(i64, RationalSeries)>,
}

impl StructureTheorem {
    pub fn new(name: &str, terms: Vec<(i64, RationalSeries)>) -> Self {
        StructureTheorem {
            name: name.to_string(),
            terms,
        }
    }

    /// All terms folded into one rational function.
    pub fn as_series(&self) -> RationalSeries {
        self.terms
            .iter()
            .fold(RationalSeries::monic(&[], &[]), |acc, (k, s)| acc.add(&s.scale(*k)))
    }
}

/// Degreewise signed sum of the terms; any negative coefficient is an error.
pub fn combine(st: &StructureTheorem, n_max: u32) -> Result<DimTable> {
    let expansions: Vec<Vec<i64>> = st
        .terms
        .iter()
        .map(|(k, s)| s.expand(n_max).into_iter().map(|c| c * k).collect())
        .collect();
    let mut dims = Vec::with_capacity(n_max as usize + 1);
    for d in 0..=n_max as usize {
        let partials: Vec<i64> = expansions.iter().map(|e| e[d]).collect();
        let value: i64 = partials.iter().sum();
        if value < 0 {
            return Err(Error::NegativeDimension {
                name: st.name.clone(),
                degree: d as u32,
                value,
                partials,
            });
        }
        dims.push(value as u64);
    }
    Ok(DimTable::new(&st.name, 0, dims))
}

/// Dimensions indexed by consecutive degrees starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub name: String,
    pub degrees: Vec<u32>,
    pub dims: Vec<u64>,
}

/// A degree where two tables disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: u32,
    pub left: u64,
    pub right: u64,
}

impl DimTable {
    pub fn new(name: &str, start: u32, dims: Vec<u64>) -> Self {
        let degrees = (start..start + dims.len() as u32).collect();
        DimTable {
            name: name.to_string(),
            degrees,
            dims,
        }
    }

    /// Table of a series expansion; negative coefficients are rejected.
    pub fn from_series(name: &str, s: &RationalSeries, n_max: u32) -> Result<Self> {
        combine(&StructureTheorem::new(name, vec![(1, s.clone())]), n_max)
    }

    pub fn get(&self, degree: u32) -> Option<u64> {
        let start = *self.degrees.first()?;
        degree
            .checked_sub(start)
            .and_then(|i| self.dims.get(i as usize).copied())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dim\n");
        for (d, v) in self.degrees.iter().zip(&self.dims) {
            s.push_str(&format!("{d},{v}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: DimTable = serde_json::from_str(text)?;
        if t.degrees.len() != t.dims.len() {
            return Err(Error::DimensionMismatch(t.degrees.len(), t.dims.len()));
        }
        Ok(t)
    }
}

/// Degrees present in both tables where the values differ, in order.
pub fn compare(a: &DimTable, b: &DimTable) -> Vec<Mismatch> {
    a.degrees
        .iter()
        .zip(&a.dims)
        .filter_map(|(&d, &left)| {
            let right = b.get(d)?;
            (left != right).then_some(Mismatch {
                degree: d,
                left,
                right,
            })
        })
        .collect()
}

/// Named series and structure theorems used by the scenarios.
pub mod registry {
    use super::{RationalSeries, StructureTheorem};

    /// The radical of `H*(PSU_4(3))`: `(t^2 + t^7 + t^11 + t^14) / ((1-t^8)(1-t^12))`.
    pub fn psu_radical() -> RationalSeries {
        RationalSeries::monic(&[2, 7, 11, 14], &[8, 12])
    }

    /// The radical of `H*(McL)`: `(t^7 + t^11) / ((1-t^8)(1-t^12))`.
    pub fn mcl_radical() -> RationalSeries {
        RationalSeries::monic(&[7, 11], &[8, 12])
    }

    /// `A_6` invariants of `H*(2^4)`: `F2[w3, g5, d8, d12](1, g9, b15, g9 b15)`.
    pub fn a6_invariants() -> RationalSeries {
        RationalSeries::monic(&[0, 9, 15, 24], &[3, 5, 8, 12])
    }

    /// `A_7` invariants: the Dickson algebra tensored with the module on
    /// `1, x18, x20, x21, x24, x25, x27, x45`.
    pub fn a7_invariants() -> RationalSeries {
        RationalSeries::monic(&[0, 18, 20, 21, 24, 25, 27, 45], &[8, 12, 14, 15])
    }

    /// The Dickson algebra `F2[d8, d12, d14, d15]`.
    pub fn dickson_algebra() -> RationalSeries {
        RationalSeries::monic(&[0], &[8, 12, 14, 15])
    }

    /// Classes in the image of both copies of `2^4` for `PSU_4(3)`:
    /// `F2[d8, d12](1, w3, b15, x18)`.
    pub fn psu_double_image() -> RationalSeries {
        RationalSeries::monic(&[0, 3, 15, 18], &[8, 12])
    }

    /// Classes in the image of both copies of `2^4` for McL:
    /// `F2[d8, d12](1, x18)`.
    pub fn mcl_double_image() -> RationalSeries {
        RationalSeries::monic(&[0, 18], &[8, 12])
    }

    /// `F2[d8, d12, e](1, a7, a11, x18) e`.
    pub fn n_extension_summand() -> RationalSeries {
        RationalSeries::monic(&[1, 8, 12, 19], &[1, 8, 12])
    }

    /// `(1 + t^3)(1 + t^15) / ((1-t^8)(1-t^12))`.
    pub fn a6_bockstein_e2() -> RationalSeries {
        RationalSeries::monic(&[0, 3, 15, 18], &[8, 12])
    }

    /// `H*(McL)` in closed form: `2 A_7 + (-1 + t^7 + t^11 - t^18)/((1-t^8)(1-t^12))`.
    pub fn mcl_closed_form() -> RationalSeries {
        let correction = RationalSeries::new(&[(0, -1), (7, 1), (11, 1), (18, -1)], &[8, 12])
            .expect("valid series");
        a7_invariants().scale(2).add(&correction)
    }

    /// The Poincare series of the spectral sequence target for `PSU_4(3)`:
    /// two copies of the `A_6` invariants glued along the double image.
    pub fn psu_expansion() -> StructureTheorem {
        StructureTheorem::new(
            "psu-expansion",
            vec![(2, a6_invariants()), (-1, psu_double_image())],
        )
    }

    /// `H*(PSU_4(3))`: radical plus the glued invariants.
    pub fn psu_total() -> StructureTheorem {
        StructureTheorem::new(
            "psu-total",
            vec![(1, psu_radical()), (2, a6_invariants()), (-1, psu_double_image())],
        )
    }

    /// `H*(McL)` from its four-term exact sequence.
    pub fn mcl_total() -> StructureTheorem {
        StructureTheorem::new(
            "mcl-total",
            vec![(1, mcl_radical()), (2, a7_invariants()), (-1, mcl_double_image())],
        )
    }

    /// `H*(N)` for `N = 3.McL:2` as a direct sum of three summands.
    pub fn n_total() -> StructureTheorem {
        StructureTheorem::new(
            "n-total",
            vec![(1, mcl_radical()), (1, a7_invariants()), (1, n_extension_summand())],
        )
    }

    /// Every registered structure theorem.
    pub fn structure_theorems() -> Vec<StructureTheorem> {
        vec![psu_expansion(), psu_total(), mcl_total(), n_total()]
    }

    /// Every registered series with its name.
    pub fn series() -> Vec<(&'static str, RationalSeries)> {
        vec![
            ("psu-radical", psu_radical()),
            ("mcl-radical", mcl_radical()),
            ("a6-invariants", a6_invariants()),
            ("a7-invariants", a7_invariants()),
            ("dickson-algebra", dickson_algebra()),
            ("psu-double-image", psu_double_image()),
            ("mcl-double-image", mcl_double_image()),
            ("n-extension-summand", n_extension_summand()),
            ("a6-bockstein-e2", a6_bockstein_e2()),
            ("mcl-closed-form", mcl_closed_form()),
        ]
    }
}
