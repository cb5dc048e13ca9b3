use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use super::spec::{AlgebraSpec, Monomial};
use crate::error::{Error, Result};

/// A sum of distinct monomials with coefficient 1, sorted in descending
/// graded-lex order (leading term first).
#[derive(Clone)]
pub struct Element {
    alg: Arc<AlgebraSpec>,
    terms: Vec<Monomial>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        AlgebraSpec::same(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Element {
    pub fn zero(alg: &Arc<AlgebraSpec>) -> Self {
        Element {
            alg: alg.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(alg: &Arc<AlgebraSpec>) -> Self {
        Self::from_monomial(alg, Monomial::one(alg))
    }

    pub fn from_monomial(alg: &Arc<AlgebraSpec>, m: Monomial) -> Self {
        Element {
            alg: alg.clone(),
            terms: vec![m],
        }
    }

    /// The generator with the given name.
    pub fn generator(alg: &Arc<AlgebraSpec>, name: &str) -> Result<Self> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
        let mut exps = vec![0u16; alg.len()];
        exps[i] = 1;
        Ok(Self::from_monomial(alg, Monomial::new(alg, &exps)?))
    }

    /// Canonicalizes an arbitrary multiset of monomials: pairs cancel.
    pub fn from_terms(alg: &Arc<AlgebraSpec>, mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for m in terms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Element {
            alg: alg.clone(),
            terms: out,
        }
    }

    /// Terms already in canonical order with no repeats.
    pub(crate) fn from_sorted_unique(alg: &Arc<AlgebraSpec>, terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.alg
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// Degree of a homogeneous element; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let Some(first) = self.terms.first() else {
            return Ok(None);
        };
        let last = self.terms.last().unwrap();
        if first.degree() != last.degree() {
            return Err(Error::Inhomogeneous(first.degree(), last.degree()));
        }
        Ok(Some(first.degree()))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// The degree-`d` component.
    pub fn component(&self, d: u32) -> Element {
        let terms = self.terms.iter().filter(|m| m.degree() == d).cloned().collect();
        Element::from_sorted_unique(&self.alg, terms)
    }

    /// Drops every term above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|m| m.degree() <= max_degree)
            .cloned()
            .collect();
        Element::from_sorted_unique(&self.alg, terms)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if AlgebraSpec::same(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Sum: symmetric difference of the term sets.
    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Element::from_sorted_unique(&self.alg, out))
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.mul_upto(other, None)
    }

    /// Product, discarding terms above `max_degree` when given.
    pub fn mul_upto(&self, other: &Element, max_degree: Option<u32>) -> Result<Element> {
        self.check_same(other)?;
        let ext = self.alg.exterior_mask();
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for m in &self.terms {
            for n in &other.terms {
                if let Some(p) = m.mul(n, ext) {
                    if max_degree.is_none_or(|c| p.degree() <= c) {
                        prods.push(p);
                    }
                }
            }
        }
        Ok(Element::from_terms(&self.alg, prods))
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(&self.alg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Frobenius: squares every monomial (cross terms cancel in char 2).
    pub fn square(&self) -> Element {
        let ext = self.alg.exterior_mask();
        let terms: Vec<Monomial> = self.terms.iter().filter_map(|m| m.mul(m, ext)).collect();
        // doubling exponents preserves the order, so no resort is needed
        Element::from_sorted_unique(&self.alg, terms)
    }

    pub fn sum<'a>(alg: &Arc<AlgebraSpec>, items: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut terms = Vec::new();
        for e in items {
            assert!(AlgebraSpec::same(alg, &e.alg), "sum over mixed algebras");
            terms.extend(e.terms.iter().cloned());
        }
        Element::from_terms(alg, terms)
    }

    /// Terms joined by " + ", leading term first; "0" for zero.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|m| m.render(&self.alg))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.render())
    }
}

/// Panics if the operands live in different algebras; use
/// [`Element::try_add`] to get an error instead.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("added elements of different algebras")
    }
}

/// Panics if the operands live in different algebras; use
/// [`Element::try_mul`] to get an error instead.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplied elements of different algebras")
    }
}

#[cfg(test)]
mod tests {
    use super::super::spec::GeneratorSpec;
    use super::*;

    fn torus() -> Arc<AlgebraSpec> {
        AlgebraSpec::new(vec![
            GeneratorSpec::poly("d", 2),
            GeneratorSpec::poly("d1", 2),
            GeneratorSpec::poly("d2", 2),
            GeneratorSpec::poly("d3", 2),
            GeneratorSpec::ext("e", 1),
            GeneratorSpec::ext("e1", 1),
            GeneratorSpec::ext("e2", 1),
            GeneratorSpec::ext("e3", 1),
        ])
        .unwrap()
    }

    #[test]
    fn squares() {
        let alg = torus();
        let d = Element::generator(&alg, "d").unwrap();
        let e = Element::generator(&alg, "e").unwrap();
        assert_eq!((&d * &d).render(), "d^2");
        assert!((&e * &e).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let alg = torus();
        let g = |n: &str| Element::generator(&alg, n).unwrap();
        let lhs = &(&g("e1") + &g("e")) * &(&g("d2") + &g("d"));
        let rhs = Element::sum(
            &alg,
            [
                &(&g("e1") * &g("d2")),
                &(&g("e1") * &g("d")),
                &(&g("e") * &g("d2")),
                &(&g("e") * &g("d")),
            ],
        );
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 4);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = AlgebraSpec::polynomial(2);
        let b = AlgebraSpec::polynomial(3);
        let x = Element::generator(&a, "x1").unwrap();
        let y = Element::generator(&b, "x1").unwrap();
        assert!(matches!(x.try_add(&y), Err(Error::AlgebraMismatch)));
        assert!(matches!(x.try_mul(&y), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn homogeneity() {
        let alg = AlgebraSpec::polynomial(2);
        let x = Element::generator(&alg, "x1").unwrap();
        let inhom = &x + &x.square();
        assert!(inhom.homogeneous_degree().is_err());
        assert_eq!(inhom.component(2), x.square());
        assert_eq!(inhom.truncate(1), x);
        assert_eq!(Element::zero(&alg).homogeneous_degree().unwrap(), None);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let alg = AlgebraSpec::polynomial(3);
        let g = |n: &str| Element::generator(&alg, n).unwrap();
        let l = &(&g("x1") + &g("x2")) + &g("x3");
        let mut acc = Element::one(&alg);
        for k in 0..7 {
            assert_eq!(l.pow(k), acc);
            acc = &acc * &l;
        }
    }
}
