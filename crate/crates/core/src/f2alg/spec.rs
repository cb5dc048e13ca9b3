use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Polynomial,
    /// Square-zero generator.
    Exterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: GenKind,
}

impl GeneratorSpec {
    pub fn poly(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            kind: GenKind::Polynomial,
        }
    }

    pub fn ext(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            kind: GenKind::Exterior,
        }
    }
}

/// An ordered list of generators of a graded-commutative F2 algebra.
///
/// The declared order is the tie-break order of the monomial order.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    generators: Vec<GeneratorSpec>,
    exterior: Vec<bool>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g.kind {
                GenKind::Polynomial => format!("{}:{}", g.name, g.degree),
                GenKind::Exterior => format!("{}:{}e", g.name, g.degree),
            })
            .collect();
        write!(f, "AlgebraSpec[{}]", gens.join(", "))
    }
}

impl AlgebraSpec {
    pub fn new(generators: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidSpec(format!("generator {} has degree 0", g.name)));
            }
            if !is_identifier(&g.name) {
                return Err(Error::InvalidSpec(format!("bad generator name {:?}", g.name)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate generator {}", g.name)));
            }
        }
        let exterior = generators.iter().map(|g| g.kind == GenKind::Exterior).collect();
        Ok(Arc::new(AlgebraSpec {
            generators,
            exterior,
            index,
        }))
    }

    /// F2[x1, ..., xn] with every generator in degree 1.
    pub fn polynomial(n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| GeneratorSpec::poly(format!("x{i}"), 1)).collect())
            .expect("generated names are valid")
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn exterior_mask(&self) -> &[bool] {
        &self.exterior
    }

    /// True when every generator sits in degree 1.
    pub fn is_degree_one(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 1)
    }

    /// True for F2[x1..xn]: degree-1 polynomial generators only.
    pub fn is_plain_polynomial(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.degree == 1 && g.kind == GenKind::Polynomial)
    }

    pub fn same(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial: one exponent per generator, with its weighted degree cached.
///
/// Ordering is graded-lexicographic: degree first, then the exponent
/// sequence compared lexicographically in declared generator order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    /// Validates arity and exterior exponents against `alg`.
    pub fn new(alg: &AlgebraSpec, exps: &[u16]) -> Result<Self> {
        if exps.len() != alg.len() {
            return Err(Error::DimensionMismatch(exps.len(), alg.len()));
        }
        for (i, &e) in exps.iter().enumerate() {
            if alg.exterior[i] && e > 1 {
                return Err(Error::InvalidSpec(format!(
                    "exterior generator {} raised to power {e}",
                    alg.generators[i].name
                )));
            }
        }
        Ok(Self::from_parts(alg, exps.iter().copied().collect()))
    }

    pub(crate) fn from_parts(alg: &AlgebraSpec, exps: Exponents) -> Self {
        let degree = exps
            .iter()
            .zip(&alg.generators)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum();
        Monomial { degree, exps }
    }

    pub(crate) fn from_raw(degree: u32, exps: Exponents) -> Self {
        Monomial { degree, exps }
    }

    pub fn one(alg: &AlgebraSpec) -> Self {
        Monomial {
            degree: 0,
            exps: std::iter::repeat_n(0, alg.len()).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product, or `None` when an exterior exponent would exceed 1.
    #[inline]
    pub(crate) fn mul(&self, other: &Monomial, exterior: &[bool]) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (i, (a, &b)) in exps.iter_mut().zip(other.exps.iter()).enumerate() {
            *a += b;
            if exterior[i] && *a > 1 {
                return None;
            }
        }
        Some(Monomial {
            degree: self.degree + other.degree,
            exps,
        })
    }

    /// `x^a` divides `x^b` termwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn render(&self, alg: &AlgebraSpec) -> String {
        let factors: Vec<String> = self
            .exps
            .iter()
            .zip(&alg.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{e}", g.name)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// All monomials of degree `d`, in descending graded-lex order.
pub fn monomial_basis(alg: &AlgebraSpec, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps: Exponents = std::iter::repeat_n(0, alg.len()).collect();
    fill_basis(alg, 0, d, &mut exps, &mut out, d);
    out
}

fn fill_basis(
    alg: &AlgebraSpec,
    i: usize,
    remaining: u32,
    exps: &mut Exponents,
    out: &mut Vec<Monomial>,
    total: u32,
) {
    if i == alg.len() {
        if remaining == 0 {
            out.push(Monomial {
                degree: total,
                exps: exps.clone(),
            });
        }
        return;
    }
    let g = &alg.generators[i];
    let mut max = remaining / g.degree;
    if g.kind == GenKind::Exterior {
        max = max.min(1);
    }
    for e in (0..=max).rev() {
        exps[i] = e as u16;
        fill_basis(alg, i + 1, remaining - e * g.degree, exps, out, total);
    }
    exps[i] = 0;
}
