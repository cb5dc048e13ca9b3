//! Text grammar for elements: `x1^2*x2 + x3^3`, `1`, `0`.

use std::sync::Arc;

use super::element::Element;
use super::spec::{AlgebraSpec, Monomial};
use crate::error::{Error, Result};

impl AlgebraSpec {
    /// Parses the rendering grammar. Repeated terms cancel and a product
    /// that squares an exterior generator is zero, as in the algebra.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Element> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut terms = Vec::new();
        for term in text.split('+') {
            if let Some(m) = self.parse_term(term.trim())? {
                terms.push(m);
            }
        }
        Ok(Element::from_terms(self, terms))
    }

    fn parse_term(self: &Arc<Self>, term: &str) -> Result<Option<Monomial>> {
        match term {
            "" => return Err(Error::Parse("empty term".into())),
            "0" => return Ok(None),
            "1" => return Ok(Some(Monomial::one(self))),
            _ => {}
        }
        let mut exps = vec![0u32; self.len()];
        for factor in term.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => {
                    let p: u32 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (n.trim(), p)
                }
                None => (factor, 1),
            };
            if name == "1" && power >= 1 {
                continue;
            }
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            exps[i] += power;
        }
        let mut packed = Vec::with_capacity(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            if self.exterior_mask()[i] && e > 1 {
                return Ok(None);
            }
            packed.push(
                u16::try_from(e).map_err(|_| Error::Parse(format!("exponent {e} too large")))?,
            );
        }
        Monomial::new(self, &packed).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::super::spec::GeneratorSpec;
    use super::*;

    #[test]
    fn render_and_parse() {
        let alg = AlgebraSpec::polynomial(3);
        let e = alg.parse("x3^3 + x1^2*x2").unwrap();
        assert_eq!(e.render(), "x1^2*x2 + x3^3");
        assert_eq!(alg.parse(&e.render()).unwrap(), e);
        assert!(alg.parse("x1 + x1").unwrap().is_zero());
        assert!(alg.parse("0").unwrap().is_zero());
        assert_eq!(alg.parse("1").unwrap().render(), "1");
        assert_eq!(alg.parse("x1*x1").unwrap().render(), "x1^2");
    }

    #[test]
    fn parse_errors() {
        let alg = AlgebraSpec::polynomial(2);
        assert!(alg.parse("").is_err());
        assert!(alg.parse("x1 + ").is_err());
        assert!(alg.parse("y1").is_err());
        assert!(alg.parse("x1^a").is_err());
    }

    #[test]
    fn exterior_square_parses_to_zero() {
        let alg = AlgebraSpec::new(vec![GeneratorSpec::ext("e", 1)]).unwrap();
        assert!(alg.parse("e^2").unwrap().is_zero());
        assert!(alg.parse("e*e").unwrap().is_zero());
    }
}
