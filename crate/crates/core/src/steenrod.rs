//! Steenrod squares on algebras generated in degree 1.
//!
//! The total square is the ring map `x -> x + x^2` on polynomial generators
//! and `e -> e` on square-zero ones. On a monomial,
//! `Sq^k(x^a)` is the sum of `x^(a+b)` over `b` with `|b| = k` and
//! `binom(a_i, b_i)` odd, i.e. `b_i` a bitwise submask of `a_i` (Lucas).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2alg::{AlgebraSpec, DegreeBasis, Element, Exponents, GenKind, Monomial};
use crate::gf2la::{BitMatrix, Subspace};

fn check_degree_one(alg: &AlgebraSpec) -> Result<()> {
    match alg.generators().iter().find(|g| g.degree != 1) {
        Some(g) => Err(Error::UnsupportedGenerator(g.name.clone(), g.degree)),
        None => Ok(()),
    }
}

/// The full (inhomogeneous) total square `Sq = Sq^0 + Sq^1 + ...`.
pub fn total_sq(a: &Element) -> Result<Element> {
    let alg = a.algebra();
    check_degree_one(alg)?;
    let mut out = Vec::new();
    for m in a.terms() {
        let max_extra = m.degree();
        push_squares(alg, m, None, max_extra, &mut out);
    }
    Ok(Element::from_terms(alg, out))
}

/// `Sq^k(a)` for homogeneous `a`.
pub fn sq(k: u32, a: &Element) -> Result<Element> {
    let alg = a.algebra();
    check_degree_one(alg)?;
    a.homogeneous_degree()?;
    let mut out = Vec::new();
    for m in a.terms() {
        push_squares(alg, m, Some(k), k, &mut out);
    }
    Ok(Element::from_terms(alg, out))
}

/// Pushes `x^(a+b)` for every admissible `b`; with `exact = Some(k)` only
/// those with `|b| = k`, otherwise all with `|b| <= budget`.
fn push_squares(
    alg: &Arc<AlgebraSpec>,
    m: &Monomial,
    exact: Option<u32>,
    budget: u32,
    out: &mut Vec<Monomial>,
) {
    let gens = alg.generators();
    let exps = m.exponents();
    let mut cur: Exponents = exps.iter().copied().collect();
    fn rec(
        i: usize,
        left: u32,
        exact: bool,
        gens: &[crate::f2alg::GeneratorSpec],
        exps: &[u16],
        cur: &mut Exponents,
        base_degree: u32,
        budget: u32,
        out: &mut Vec<Monomial>,
    ) {
        if i == exps.len() {
            if !exact || left == 0 {
                out.push(Monomial::from_raw(base_degree + (budget - left), cur.clone()));
            }
            return;
        }
        let a = exps[i];
        if gens[i].kind == GenKind::Exterior || a == 0 {
            rec(i + 1, left, exact, gens, exps, cur, base_degree, budget, out);
            return;
        }
        // iterate over submasks b of a with b <= left
        let mut b = a;
        loop {
            if (b as u32) <= left {
                cur[i] = a + b;
                rec(i + 1, left - b as u32, exact, gens, exps, cur, base_degree, budget, out);
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & a;
        }
        cur[i] = a;
    }
    rec(
        0,
        budget,
        exact.is_some(),
        gens,
        exps,
        &mut cur,
        m.degree(),
        budget,
        out,
    );
}

/// `Sq^1` on a single monomial of a degree-1 polynomial algebra: the sum of
/// `x_i * x^a` over generators with odd exponent.
pub(crate) fn sq1_monomial(alg: &AlgebraSpec, m: &Monomial, out: &mut Vec<Monomial>) {
    let exps = m.exponents();
    for (i, &e) in exps.iter().enumerate() {
        if e % 2 == 1 && alg.generators()[i].kind == GenKind::Polynomial {
            let mut next: Exponents = exps.iter().copied().collect();
            next[i] += 1;
            out.push(Monomial::from_raw(m.degree() + 1, next));
        }
    }
}

/// Matrix of `Sq^1` restricted to `space` (a subspace of the degree-`d`
/// slice described by `source`), with columns expressed over `target`, the
/// degree-`d+1` monomial basis.
pub fn sq1_linear_map(
    space: &Subspace,
    source: &DegreeBasis,
    target: &DegreeBasis,
) -> Result<BitMatrix> {
    let alg = source.algebra();
    check_degree_one(alg)?;
    if space.ambient() != source.len() {
        return Err(Error::DimensionMismatch(space.ambient(), source.len()));
    }
    if target.degree() != source.degree() + 1 {
        return Err(Error::WrongDegree {
            expected: source.degree() + 1,
            found: target.degree(),
        });
    }
    let mut out = BitMatrix::zeros(target.len(), space.dim());
    let mut buf = Vec::new();
    for (j, v) in space.vectors().enumerate() {
        for idx in v.ones() {
            buf.clear();
            sq1_monomial(alg, &source.monomials()[idx], &mut buf);
            for t in &buf {
                let row = target.index_of(t).expect("Sq^1 stays in the next degree");
                out.flip(row, j);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2alg::GeneratorSpec;

    #[test]
    fn total_square_examples() {
        let alg = AlgebraSpec::polynomial(2);
        let x = alg.parse("x1").unwrap();
        assert_eq!(total_sq(&x).unwrap(), alg.parse("x1 + x1^2").unwrap());
        let xy = alg.parse("x1*x2").unwrap();
        assert_eq!(
            total_sq(&xy).unwrap(),
            alg.parse("x1*x2 + x1^2*x2 + x1*x2^2 + x1^2*x2^2").unwrap()
        );
        let ext = AlgebraSpec::new(vec![GeneratorSpec::ext("e", 1)]).unwrap();
        let e = ext.parse("e").unwrap();
        assert_eq!(total_sq(&e).unwrap(), e);
    }

    #[test]
    fn sq_degree_bounds() {
        let alg = AlgebraSpec::polynomial(3);
        let a = alg.parse("x1^3*x2 + x2^2*x3^2 + x1*x2*x3^2").unwrap();
        assert_eq!(sq(0, &a).unwrap(), a);
        assert_eq!(sq(4, &a).unwrap(), a.square());
        assert!(sq(5, &a).unwrap().is_zero());
    }

    #[test]
    fn rejects_higher_degree_generators() {
        let alg = AlgebraSpec::new(vec![GeneratorSpec::poly("b", 4)]).unwrap();
        assert!(matches!(
            total_sq(&alg.parse("b").unwrap()),
            Err(Error::UnsupportedGenerator(..))
        ));
        let p = AlgebraSpec::polynomial(1);
        assert!(sq(1, &p.parse("x1 + x1^2").unwrap()).is_err());
    }

    #[test]
    fn sq1_map_on_polynomial_line() {
        let alg = AlgebraSpec::polynomial(1);
        let b1 = DegreeBasis::new(&alg, 1);
        let b2 = DegreeBasis::new(&alg, 2);
        let m = sq1_linear_map(&Subspace::full(1), &b1, &b2).unwrap();
        assert_eq!(m, BitMatrix::identity(1));
    }

    #[test]
    fn sq1_monomial_agrees_with_sq() {
        let alg = AlgebraSpec::polynomial(4);
        for m in DegreeBasis::new(&alg, 5).monomials() {
            let mut buf = Vec::new();
            sq1_monomial(&alg, m, &mut buf);
            let e = Element::from_monomial(&alg, m.clone());
            assert_eq!(Element::from_terms(&alg, buf), sq(1, &e).unwrap());
        }
    }
}
