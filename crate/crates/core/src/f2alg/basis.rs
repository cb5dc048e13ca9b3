use std::collections::HashMap;
use std::sync::Arc;

use super::element::Element;
use super::spec::{monomial_basis, AlgebraSpec, Monomial};
use crate::error::{Error, Result};
use crate::gf2la::BitVec;

/// The monomial basis of one degree together with its index, used to move
/// between homogeneous elements and bit vectors.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    alg: Arc<AlgebraSpec>,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(alg: &Arc<AlgebraSpec>, degree: u32) -> Self {
        let monomials = monomial_basis(alg, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            alg: alg.clone(),
            degree,
            monomials,
            index,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.alg
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn vectorize(&self, a: &Element) -> Result<BitVec> {
        if !AlgebraSpec::same(&self.alg, a.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if let Some(d) = a.homogeneous_degree()? {
            if d != self.degree {
                return Err(Error::WrongDegree {
                    expected: self.degree,
                    found: d,
                });
            }
        }
        let mut v = BitVec::zeros(self.len());
        for m in a.terms() {
            v.set(self.index[m], true);
        }
        Ok(v)
    }

    pub fn devectorize(&self, v: &BitVec) -> Element {
        assert_eq!(v.len(), self.len(), "vector length does not match basis");
        // basis order is the canonical descending order
        let terms = v.ones().map(|i| self.monomials[i].clone()).collect();
        Element::from_sorted_unique(&self.alg, terms)
    }
}
