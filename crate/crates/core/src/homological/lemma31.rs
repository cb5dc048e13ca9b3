//! The coproduct of `H*(SU_4(3))` against the central `Z/4`, checked on
//! the maximal torus.
//!
//! Generators of `H*(SU_4(3)) = F2[b4, b6, b8] (x) E(x3, x5, x7)` map
//! injectively into the torus algebra `F2[d1, d2, d3] (x) E(e1, e2, e3)`;
//! the central multiplication acts there by `e_i -> e_i + e`,
//! `d_i -> d_i + d`. An identity `psi(g) = target` holds when both sides
//! agree after mapping the target into the torus algebra.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::f2alg::{AlgebraMap, AlgebraSpec, Element, GeneratorSpec};

/// The outcome of one symbolic identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// Terms present on exactly one side; empty when the identity holds.
    pub difference: String,
}

impl IdentityCheck {
    pub fn compare(name: &str, lhs: &Element, rhs: &Element) -> Result<Self> {
        let diff = lhs.try_add(rhs)?;
        Ok(IdentityCheck {
            name: name.to_string(),
            lhs: lhs.render(),
            rhs: rhs.render(),
            holds: diff.is_zero(),
            difference: if diff.is_zero() { String::new() } else { diff.render() },
        })
    }
}

/// Right-hand sides of the coproduct formulas, written in
/// `F2[d, b4, b6, b8] (x) E(e, x3, x5, x7)` where `d`, `e` come from `Z/4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductTargets {
    pub entries: Vec<(String, String)>,
}

impl Default for CoproductTargets {
    fn default() -> Self {
        let pairs = [
            ("b4", "b4"),
            ("b6", "b6"),
            ("x3", "x3"),
            ("x5", "x5"),
            ("b8", "d^4 + d^2*b4 + d*b6 + b8"),
            ("x7", "x7 + d^2*x3 + d*x5 + e*b6"),
            ("b8^2", "d^8 + d^4*b4^2 + d^2*b6^2 + b8^2"),
        ];
        CoproductTargets {
            entries: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }
}

fn torus_algebra() -> Arc<AlgebraSpec> {
    let mut gens = vec![GeneratorSpec::poly("d", 2)];
    gens.extend((1..=3).map(|i| GeneratorSpec::poly(format!("d{i}"), 2)));
    gens.push(GeneratorSpec::ext("e", 1));
    gens.extend((1..=3).map(|i| GeneratorSpec::ext(format!("e{i}"), 1)));
    AlgebraSpec::new(gens).expect("valid generators")
}

fn su_algebra() -> Arc<AlgebraSpec> {
    AlgebraSpec::new(vec![
        GeneratorSpec::poly("d", 2),
        GeneratorSpec::poly("b4", 4),
        GeneratorSpec::poly("b6", 6),
        GeneratorSpec::poly("b8", 8),
        GeneratorSpec::ext("e", 1),
        GeneratorSpec::ext("x3", 3),
        GeneratorSpec::ext("x5", 5),
        GeneratorSpec::ext("x7", 7),
    ])
    .expect("valid generators")
}

/// Torus images of the generators of `H*(SU_4(3))`, plus the `Z/4` classes.
fn su_to_torus(su: &Arc<AlgebraSpec>, torus: &Arc<AlgebraSpec>) -> Result<AlgebraMap> {
    let s1 = "d1 + d2 + d3";
    let s2 = "d1*d2 + d1*d3 + d2*d3";
    let s3 = "d1*d2*d3";
    let sigma = |text: &str| torus.parse(text);
    let b4 = sigma(s2)?.try_add(&sigma(s1)?.square())?;
    let b6 = sigma(s3)?.try_add(&sigma(s1)?.try_mul(&sigma(s2)?)?)?;
    let b8 = sigma(s3)?.try_mul(&sigma(s1)?)?;
    let x3 = torus.parse("e1*d2 + e1*d3 + e2*d1 + e2*d3 + e3*d1 + e3*d2")?;
    let x5 = torus.parse("e1*d2^2 + e1*d3^2 + e2*d1^2 + e2*d3^2 + e3*d1^2 + e3*d2^2")?;
    let x7 = torus.parse(
        "e1*d2^2*d3 + e1*d2*d3^2 + e2*d1^2*d3 + e2*d1*d3^2 + e3*d1^2*d2 + e3*d1*d2^2",
    )?;
    let images = vec![
        ("d".to_string(), torus.parse("d")?),
        ("e".to_string(), torus.parse("e")?),
        ("b4".to_string(), b4),
        ("b6".to_string(), b6),
        ("b8".to_string(), b8),
        ("x3".to_string(), x3),
        ("x5".to_string(), x5),
        ("x7".to_string(), x7),
    ];
    AlgebraMap::new(su, torus, images)
}

/// Restriction from the `U_4(3)` torus: `e4 -> e1 + e2 + e3`,
/// `d4 -> d1 + d2 + d3`.
fn u_to_torus(torus: &Arc<AlgebraSpec>) -> Result<(Arc<AlgebraSpec>, AlgebraMap)> {
    let mut gens: Vec<GeneratorSpec> = (1..=4).map(|i| GeneratorSpec::poly(format!("d{i}"), 2)).collect();
    gens.extend((1..=4).map(|i| GeneratorSpec::ext(format!("e{i}"), 1)));
    let u = AlgebraSpec::new(gens)?;
    let mut pairs: Vec<(String, String)> = (1..=3)
        .flat_map(|i| [(format!("d{i}"), format!("d{i}")), (format!("e{i}"), format!("e{i}"))])
        .collect();
    pairs.push(("d4".into(), "d1 + d2 + d3".into()));
    pairs.push(("e4".into(), "e1 + e2 + e3".into()));
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let map = AlgebraMap::from_texts(&u, torus, &refs)?;
    Ok((u, map))
}

/// `sum_i e_i f(d's other than d_i)` for the `U_4(3)` exterior generators.
fn u_exterior(u: &Arc<AlgebraSpec>, k: usize) -> Result<Element> {
    let mut terms = Vec::new();
    for i in 1..=4usize {
        let others: Vec<usize> = (1..=4).filter(|&j| j != i).collect();
        // elementary symmetric function of degree k in the other three d's
        let mut sym = Element::zero(u);
        for mask in 0u32..8 {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut prod = Element::one(u);
            for (b, j) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    prod = prod.try_mul(&u.parse(&format!("d{j}"))?)?;
                }
            }
            sym = sym.try_add(&prod)?;
        }
        terms.push(u.parse(&format!("e{i}"))?.try_mul(&sym)?);
    }
    Ok(Element::sum(u, terms.iter()))
}

/// Checks each `psi(generator) = target` from `targets`, then that the
/// torus images of `b4, b6, b8, x3, x5, x7` are the restrictions of the
/// `U_4(3)` generators.
pub fn verify_coproduct(targets: &CoproductTargets) -> Result<Vec<IdentityCheck>> {
    let torus = torus_algebra();
    let su = su_algebra();
    let phi = su_to_torus(&su, &torus)?;
    let mut psi_pairs: Vec<(String, String)> = vec![("d".into(), "d".into()), ("e".into(), "e".into())];
    for i in 1..=3 {
        psi_pairs.push((format!("d{i}"), format!("d{i} + d")));
        psi_pairs.push((format!("e{i}"), format!("e{i} + e")));
    }
    let refs: Vec<(&str, &str)> = psi_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let psi = AlgebraMap::from_texts(&torus, &torus, &refs)?;

    let mut checks = Vec::new();
    for (source, target) in &targets.entries {
        let lhs = psi.apply(&phi.apply(&su.parse(source)?)?)?;
        let rhs = phi.apply(&su.parse(target)?)?;
        checks.push(IdentityCheck::compare(&format!("psi({source}) = {target}"), &lhs, &rhs)?);
    }

    let (u, rho) = u_to_torus(&torus)?;
    let sym = |k: usize| -> Result<Element> {
        let mut s = Element::zero(&u);
        for mask in 0u32..16 {
            if mask.count_ones() as usize == k {
                let mut prod = Element::one(&u);
                for j in 0..4 {
                    if mask >> j & 1 == 1 {
                        prod = prod.try_mul(&u.parse(&format!("d{}", j + 1))?)?;
                    }
                }
                s = s.try_add(&prod)?;
            }
        }
        Ok(s)
    };
    let restrictions = [
        ("b4", sym(2)?),
        ("b6", sym(3)?),
        ("b8", sym(4)?),
        ("x3", u_exterior(&u, 1)?),
        ("x5", u_exterior(&u, 2)?),
        ("x7", u_exterior(&u, 3)?),
    ];
    for (name, u_class) in restrictions {
        let lhs = rho.apply(&u_class)?;
        let rhs = phi.apply(&su.parse(name)?)?;
        checks.push(IdentityCheck::compare(&format!("restriction of U4 class = {name}"), &lhs, &rhs)?);
    }
    Ok(checks)
}

/// [`verify_coproduct`] with the standard targets.
pub fn verify_lemma31() -> Result<Vec<IdentityCheck>> {
    verify_coproduct(&CoproductTargets::default())
}
