use std::sync::Arc;

use super::element::Element;
use super::spec::{AlgebraSpec, GenKind};
use crate::error::{Error, Result};

/// A ring homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<AlgebraSpec>,
    target: Arc<AlgebraSpec>,
    images: Vec<Element>,
}

impl AlgebraMap {
    /// Checks that every source generator has an image in the target, that
    /// images are homogeneous of the generator's degree, and that images of
    /// exterior generators square to zero.
    pub fn new(
        source: &Arc<AlgebraSpec>,
        target: &Arc<AlgebraSpec>,
        images: Vec<(String, Element)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Element>> = vec![None; source.len()];
        for (name, image) in images {
            let i = source
                .index_of(&name)
                .ok_or_else(|| Error::InvalidMap(format!("{name} is not a source generator")))?;
            if !AlgebraSpec::same(image.algebra(), target) {
                return Err(Error::InvalidMap(format!("image of {name} is not in the target")));
            }
            slots[i] = Some(image);
        }
        let mut out = Vec::with_capacity(source.len());
        for (g, slot) in source.generators().iter().zip(slots) {
            let image =
                slot.ok_or_else(|| Error::InvalidMap(format!("no image for {}", g.name)))?;
            match image.homogeneous_degree() {
                Ok(None) => {}
                Ok(Some(d)) if d == g.degree => {}
                Ok(Some(d)) => {
                    return Err(Error::InvalidMap(format!(
                        "image of {} has degree {d}, expected {}",
                        g.name, g.degree
                    )))
                }
                Err(_) => {
                    return Err(Error::InvalidMap(format!("image of {} is inhomogeneous", g.name)))
                }
            }
            if g.kind == GenKind::Exterior && !image.square().is_zero() {
                return Err(Error::InvalidMap(format!(
                    "image of exterior generator {} does not square to zero",
                    g.name
                )));
            }
            out.push(image);
        }
        Ok(AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images: out,
        })
    }

    /// Convenience constructor parsing each image in the target grammar.
    pub fn from_texts(
        source: &Arc<AlgebraSpec>,
        target: &Arc<AlgebraSpec>,
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let parsed = images
            .iter()
            .map(|(n, t)| Ok((n.to_string(), target.parse(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, parsed)
    }

    pub fn identity(alg: &Arc<AlgebraSpec>) -> Self {
        let images = alg
            .generators()
            .iter()
            .map(|g| Element::generator(alg, &g.name).expect("own generator"))
            .collect();
        AlgebraMap {
            source: alg.clone(),
            target: alg.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Arc<AlgebraSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraSpec> {
        &self.target
    }

    pub fn image_of(&self, name: &str) -> Option<&Element> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.apply_upto(a, None)
    }

    /// Applies the map, discarding target terms above `max_degree`.
    pub fn apply_upto(&self, a: &Element, max_degree: Option<u32>) -> Result<Element> {
        if !AlgebraSpec::same(a.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        let mut powers: Vec<Vec<Element>> = self
            .images
            .iter()
            .map(|img| vec![Element::one(&self.target), img.clone()])
            .collect();
        let mut terms = Vec::new();
        for m in a.terms() {
            let mut prod = Element::one(&self.target);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .mul_upto(&self.images[i], max_degree)?;
                    powers[i].push(next);
                }
                prod = prod.mul_upto(&powers[i][e as usize], max_degree)?;
                if prod.is_zero() {
                    break;
                }
            }
            terms.extend(prod.terms().iter().cloned());
        }
        Ok(Element::from_terms(&self.target, terms))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        if !AlgebraSpec::same(first.target(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        let images = first
            .source
            .generators()
            .iter()
            .zip(&first.images)
            .map(|(g, img)| Ok((g.name.clone(), self.apply(img)?)))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::new(&first.source, &self.target, images)
    }
}
