use std::sync::Arc;

use super::page::{PageEntry, PageTable};
use crate::error::{Error, Result};
use crate::f2alg::{AlgebraSpec, DegreeBasis, Element, GeneratorSpec, Monomial};
use crate::gf2la::{homology_dim, BitMatrix, BitVec, Subspace};

/// A graded-commutative algebra `free / (relations)`; square-zero relations
/// on exterior generators are built into `free`.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    free: Arc<AlgebraSpec>,
    relations: Vec<Element>,
}

impl PresentedAlgebra {
    pub fn new(free: &Arc<AlgebraSpec>, relations: Vec<Element>) -> Result<Self> {
        for r in &relations {
            if !AlgebraSpec::same(r.algebra(), free) {
                return Err(Error::AlgebraMismatch);
            }
            r.homogeneous_degree()?;
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedAlgebra {
            free: free.clone(),
            relations,
        })
    }

    /// `F2[l2, l3, l5, b4, b6] (x) E(x3, x5) / (l2*b6 + l3*x5 + l5*x3)`, with
    /// generators in total degree.
    pub fn em_e2() -> Self {
        let free = AlgebraSpec::new(vec![
            GeneratorSpec::poly("l2", 2),
            GeneratorSpec::poly("l3", 3),
            GeneratorSpec::poly("l5", 5),
            GeneratorSpec::poly("b4", 4),
            GeneratorSpec::poly("b6", 6),
            GeneratorSpec::ext("x3", 3),
            GeneratorSpec::ext("x5", 5),
        ])
        .expect("valid generators");
        let relation = free.parse("l2*b6 + l3*x5 + l5*x3").expect("valid relation");
        Self::new(&free, vec![relation]).expect("homogeneous relation")
    }

    pub fn free(&self) -> &Arc<AlgebraSpec> {
        &self.free
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// The ideal generated by the relations in degree `n`.
    fn ideal_slice(&self, basis: &DegreeBasis) -> Result<Subspace> {
        let n = basis.degree();
        let mut vectors = Vec::new();
        for r in &self.relations {
            let rd = r.homogeneous_degree()?.unwrap_or(0);
            if rd > n {
                continue;
            }
            for m in DegreeBasis::new(&self.free, n - rd).monomials() {
                let p = r.try_mul(&Element::from_monomial(&self.free, m.clone()))?;
                vectors.push(basis.vectorize(&p)?);
            }
        }
        Ok(Subspace::span(basis.len(), &vectors))
    }
}

/// A degree of a presented algebra: monomial coordinates, the ideal, and the
/// monomials off the ideal's pivots as the quotient basis.
#[derive(Clone, Debug)]
pub struct QuotientSlice {
    basis: DegreeBasis,
    ideal: Subspace,
    free_columns: Vec<usize>,
}

impl QuotientSlice {
    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }

    /// Coset representatives, one monomial per quotient basis vector.
    pub fn representatives(&self) -> Vec<&Monomial> {
        self.free_columns
            .iter()
            .map(|&k| &self.basis.monomials()[k])
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        let alg = self.basis.algebra();
        self.representatives().iter().map(|m| m.render(alg)).collect()
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn monomial_basis(&self) -> &DegreeBasis {
        &self.basis
    }

    /// Coordinates of the class of `a` in the quotient basis.
    pub fn reduce(&self, a: &Element) -> Result<BitVec> {
        let v = self.ideal.reduce(&self.basis.vectorize(a)?);
        Ok(BitVec::from_bools(
            &self.free_columns.iter().map(|&k| v.get(k)).collect::<Vec<_>>(),
        ))
    }

    /// True if `a` lies in the ideal.
    pub fn in_ideal(&self, a: &Element) -> Result<bool> {
        Ok(self.ideal.contains(&self.basis.vectorize(a)?))
    }

    /// The element with the given quotient coordinates.
    pub fn lift(&self, coords: &BitVec) -> Element {
        let mut v = BitVec::zeros(self.basis.len());
        for i in coords.ones() {
            v.set(self.free_columns[i], true);
        }
        self.basis.devectorize(&v)
    }
}

/// The degree-`n` slice of `p`.
pub fn algebra_basis(p: &PresentedAlgebra, n: u32) -> Result<QuotientSlice> {
    let basis = DegreeBasis::new(&p.free, n);
    let ideal = p.ideal_slice(&basis)?;
    let pivots = ideal.pivots();
    let free_columns = (0..basis.len()).filter(|k| pivots.binary_search(k).is_err()).collect();
    Ok(QuotientSlice {
        basis,
        ideal,
        free_columns,
    })
}

/// A derivation raising degree by one, given on generators and extended by
/// the Leibniz rule (signs vanish mod 2).
#[derive(Clone, Debug)]
pub struct DifferentialSpec {
    alg: Arc<AlgebraSpec>,
    images: Vec<Element>,
}

impl DifferentialSpec {
    /// Every generator must be given an image (possibly `0`) of degree one
    /// higher.
    pub fn new(alg: &Arc<AlgebraSpec>, images: &[(&str, &str)]) -> Result<Self> {
        let mut slots = vec![None; alg.len()];
        for (name, text) in images {
            let i = alg
                .index_of(name)
                .ok_or_else(|| Error::InvalidMap(format!("{name} is not a generator")))?;
            let image = alg.parse(text)?;
            let want = alg.generators()[i].degree + 1;
            match image.homogeneous_degree()? {
                None => {}
                Some(d) if d == want => {}
                Some(d) => {
                    return Err(Error::WrongDegree {
                        expected: want,
                        found: d,
                    })
                }
            }
            slots[i] = Some(image);
        }
        let images = slots
            .into_iter()
            .zip(alg.generators())
            .map(|(s, g)| s.ok_or_else(|| Error::InvalidMap(format!("no image for {}", g.name))))
            .collect::<Result<_>>()?;
        Ok(DifferentialSpec {
            alg: alg.clone(),
            images,
        })
    }

    /// `d2(x3) = l2^2`, `d2(b4) = l2*l3`, `d2(x5) = 0`, `d2(b6) = l2*l5`,
    /// zero on the `l`'s.
    pub fn em_d2(p: &PresentedAlgebra) -> Result<Self> {
        Self::new(
            p.free(),
            &[
                ("l2", "0"),
                ("l3", "0"),
                ("l5", "0"),
                ("x3", "l2^2"),
                ("b4", "l2*l3"),
                ("x5", "0"),
                ("b6", "l2*l5"),
            ],
        )
    }

    pub fn image_of(&self, name: &str) -> Option<&Element> {
        self.alg.index_of(name).map(|i| &self.images[i])
    }

    fn apply_monomial(&self, m: &Monomial, out: &mut Vec<Monomial>) -> Result<()> {
        for (i, &e) in m.exponents().iter().enumerate() {
            // d(g^e) = e g^(e-1) d(g); only odd exponents survive
            if e % 2 == 0 || self.images[i].is_zero() {
                continue;
            }
            let mut rest: Vec<u16> = m.exponents().to_vec();
            rest[i] -= 1;
            let rest = Element::from_monomial(&self.alg, Monomial::new(&self.alg, &rest)?);
            out.extend(rest.try_mul(&self.images[i])?.terms().iter().cloned());
        }
        Ok(())
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !AlgebraSpec::same(a.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Vec::new();
        for m in a.terms() {
            self.apply_monomial(m, &mut out)?;
        }
        Ok(Element::from_terms(&self.alg, out))
    }

    /// Checks that `d(r * m)` lies in the ideal for every relation `r` and
    /// monomial `m` with `deg(r m) <= n_max`.
    pub fn check_well_defined(&self, p: &PresentedAlgebra, n_max: u32) -> Result<()> {
        for r in p.relations() {
            let rd = r.homogeneous_degree()?.unwrap_or(0);
            for n in rd..=n_max {
                let target = algebra_basis(p, n + 1)?;
                for m in DegreeBasis::new(p.free(), n - rd).monomials() {
                    let rm = r.try_mul(&Element::from_monomial(p.free(), m.clone()))?;
                    if !target.in_ideal(&self.apply(&rm)?)? {
                        return Err(Error::IllDefinedDifferential {
                            relation: rm.render(),
                            degree: n,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `d` from the degree-`n` quotient slice to the next one.
    fn matrix(&self, src: &QuotientSlice, dst: &QuotientSlice) -> Result<BitMatrix> {
        let mut out = BitMatrix::zeros(dst.dim(), src.dim());
        for (j, m) in src.representatives().into_iter().enumerate() {
            let image = self.apply(&Element::from_monomial(&self.alg, m.clone()))?;
            for i in dst.reduce(&image)?.ones() {
                out.set(i, j, true);
            }
        }
        Ok(out)
    }
}

/// Homology of `(p, d)` in total degrees `0..=n_max`, after verifying that
/// `d` is well defined on the quotient through degree `n_max + 1`.
pub fn page_homology(p: &PresentedAlgebra, d: &DifferentialSpec, n_max: u32) -> Result<PageTable> {
    if !AlgebraSpec::same(p.free(), &d.alg) {
        return Err(Error::AlgebraMismatch);
    }
    d.check_well_defined(p, n_max + 1)?;
    let slices: Vec<QuotientSlice> = (0..=n_max + 1).map(|n| algebra_basis(p, n)).collect::<Result<_>>()?;
    let maps: Vec<BitMatrix> = (0..=n_max as usize)
        .map(|n| d.matrix(&slices[n], &slices[n + 1]))
        .collect::<Result<_>>()?;
    let mut table = PageTable::new("page-homology");
    for n in 0..=n_max as usize {
        let incoming = if n == 0 {
            BitMatrix::zeros(slices[0].dim(), 0)
        } else {
            maps[n - 1].clone()
        };
        let dim = homology_dim(&incoming, &maps[n])?;
        let reps = super::koszul::homology_representatives(&incoming, &maps[n]);
        debug_assert_eq!(reps.len(), dim);
        table.push(PageEntry {
            n: n as u32,
            s: None,
            t: None,
            dim: dim as u64,
            representatives: reps.iter().map(|v| slices[n].lift(v).render()).collect(),
        });
    }
    Ok(table)
}

/// Dimensions of `p` in degrees `0..=n_max`.
pub fn presentation_dims(p: &PresentedAlgebra, n_max: u32) -> Result<Vec<u64>> {
    (0..=n_max)
        .map(|n| algebra_basis(p, n).map(|s| s.dim() as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e2_presentation_dims() {
        let p = PresentedAlgebra::em_e2();
        let dims = presentation_dims(&p, 8).unwrap();
        assert_eq!(&dims[..7], &[1, 0, 1, 2, 2, 4, 5]);
        assert_eq!(dims[8], 9);
        let free = PresentedAlgebra::new(p.free(), Vec::new()).unwrap();
        assert_eq!(presentation_dims(&free, 8).unwrap()[8], 10);
    }

    #[test]
    fn e3_low_degrees() {
        let p = PresentedAlgebra::em_e2();
        let d = DifferentialSpec::em_d2(&p).unwrap();
        let page = page_homology(&p, &d, 8).unwrap();
        assert_eq!(page.totals().dims, vec![1, 0, 1, 1, 0, 2, 2, 1, 3]);
        assert_eq!(page.entries[2].representatives, vec!["l2".to_string()]);
    }

    #[test]
    fn ill_defined_differential_is_reported() {
        let p = PresentedAlgebra::em_e2();
        // dropping d(b6) breaks compatibility with the mixing relation
        let d = DifferentialSpec::new(
            p.free(),
            &[
                ("l2", "0"),
                ("l3", "0"),
                ("l5", "0"),
                ("x3", "l2^2"),
                ("b4", "l2*l3"),
                ("x5", "0"),
                ("b6", "0"),
            ],
        )
        .unwrap();
        match page_homology(&p, &d, 8) {
            Err(Error::IllDefinedDifferential { degree, .. }) => assert_eq!(degree, 8),
            other => panic!("expected an ill-defined differential, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_degree_image() {
        let p = PresentedAlgebra::em_e2();
        assert!(DifferentialSpec::new(p.free(), &[("x3", "l2")]).is_err());
    }
}
