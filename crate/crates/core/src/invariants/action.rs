//! Linear substitutions acting on the degree-`d` slice of `F2[x1..xn]`.
//!
//! Images are produced by a depth-first walk over monomials
//! `x_{j1} x_{j2} ... x_{jd}` with `j1 <= j2 <= ...`, multiplying in one
//! linear form per level. Partial products live in a dense bit box indexed by
//! the first `n-1` exponents (the last exponent is implied by the degree), so
//! multiplying by `x_i` is a shift and multiplying by a linear form is an XOR
//! of shifts.

use std::sync::Arc;

use super::group::{permutation_closure, MatrixGroup};
use super::matrix::GF2Matrix;
use crate::error::{Error, Result};
use crate::f2alg::{AlgebraMap, AlgebraSpec, DegreeBasis, Element};
use crate::gf2la::{iter_ones, words_for, BitMatrix, BitVec, Subspace};

/// Dense box layout beyond which the sparse substitution route is used.
const MAX_BOX_BITS: usize = 1 << 26;

struct BoxLayout {
    n: usize,
    degree: u32,
    strides: Vec<usize>,
    words: usize,
    to_basis: Vec<u32>,
}

impl BoxLayout {
    fn new(basis: &DegreeBasis, n: usize) -> Option<Self> {
        let d = basis.degree() as usize;
        let b = d + 1;
        let mut strides = Vec::with_capacity(n);
        let mut size = 1usize;
        for _ in 0..n.saturating_sub(1) {
            strides.push(size);
            size = size.checked_mul(b)?;
            if size > MAX_BOX_BITS {
                return None;
            }
        }
        strides.push(0);
        let mut to_basis = vec![u32::MAX; size];
        for (k, m) in basis.monomials().iter().enumerate() {
            let idx: usize = m
                .exponents()
                .iter()
                .zip(&strides)
                .map(|(&a, &s)| a as usize * s)
                .sum();
            to_basis[idx] = k as u32;
        }
        Some(BoxLayout {
            n,
            degree: basis.degree(),
            strides,
            words: words_for(size),
            to_basis,
        })
    }

    /// Words that can be nonzero for a product of `k` linear forms.
    fn live_words(&self, k: usize) -> usize {
        let top = self.strides[..self.n - 1].iter().copied().max().unwrap_or(0);
        (k * top / 64 + 1).min(self.words)
    }

    fn index_of(&self, exps: &[u16]) -> usize {
        exps.iter()
            .zip(&self.strides)
            .map(|(&a, &s)| a as usize * s)
            .sum()
    }
}

/// `dst ^= src << shift` over the first `len` words of `src`.
fn shift_xor(dst: &mut [u64], src: &[u64], shift: usize, len: usize) {
    let q = shift / 64;
    let r = shift % 64;
    let limit = dst.len();
    for (w, &v) in src[..len].iter().enumerate() {
        if v == 0 {
            continue;
        }
        if w + q < limit {
            dst[w + q] ^= v << r;
        }
        if r != 0 && w + q + 1 < limit {
            dst[w + q + 1] ^= v >> (64 - r);
        }
    }
}

/// Calls `f(source_index, image_indices)` for every monomial of the slice,
/// where `image_indices` are the basis positions of the image's terms.
fn for_each_image(
    g: &GF2Matrix,
    basis: &DegreeBasis,
    mut f: impl FnMut(usize, &mut dyn Iterator<Item = usize>),
) {
    let n = g.dim();
    match BoxLayout::new(basis, n) {
        Some(layout) => walk(g, &layout, &mut f),
        None => {
            let alg = basis.algebra();
            let map = substitution_map(g, alg);
            for (k, m) in basis.monomials().iter().enumerate() {
                let img = map
                    .apply(&Element::from_monomial(alg, m.clone()))
                    .expect("same algebra");
                let mut it = img.terms().iter().map(|t| basis.index_of(t).expect("degree kept"));
                f(k, &mut it);
            }
        }
    }
}

fn walk(
    g: &GF2Matrix,
    layout: &BoxLayout,
    f: &mut impl FnMut(usize, &mut dyn Iterator<Item = usize>),
) {
    let n = layout.n;
    let d = layout.degree as usize;
    let words = layout.words;
    // shifts of the image of x_j: one per variable x_i with g[i][j] = 1
    let forms: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| g.get(i, j))
                .map(|i| layout.strides[i])
                .collect()
        })
        .collect();
    let mut stack = vec![0u64; (d + 1) * words];
    stack[0] = 1;
    let mut exps = vec![0u16; n];

    struct Ctx<'a, F> {
        layout: &'a BoxLayout,
        forms: &'a [Vec<usize>],
        stack: &'a mut [u64],
        exps: &'a mut [u16],
        f: &'a mut F,
    }

    fn rec<F: FnMut(usize, &mut dyn Iterator<Item = usize>)>(ctx: &mut Ctx<'_, F>, k: usize, j0: usize) {
        let layout = ctx.layout;
        let words = layout.words;
        let d = layout.degree as usize;
        if k == d {
            let src = layout.to_basis[layout.index_of(ctx.exps)] as usize;
            let live = layout.live_words(d);
            let row = &ctx.stack[d * words..d * words + live];
            let mut it = iter_ones(row).map(|b| {
                let t = layout.to_basis[b];
                debug_assert_ne!(t, u32::MAX);
                t as usize
            });
            (ctx.f)(src, &mut it);
            return;
        }
        let src_live = layout.live_words(k);
        let dst_live = layout.live_words(k + 1);
        for j in j0..layout.n {
            {
                let (lo, hi) = ctx.stack.split_at_mut((k + 1) * words);
                let src = &lo[k * words..];
                let dst = &mut hi[..dst_live];
                dst.fill(0);
                for &s in &ctx.forms[j] {
                    shift_xor(dst, src, s, src_live);
                }
            }
            ctx.exps[j] += 1;
            rec(ctx, k + 1, j);
            ctx.exps[j] -= 1;
        }
    }

    let mut ctx = Ctx {
        layout,
        forms: &forms,
        stack: &mut stack,
        exps: &mut exps,
        f,
    };
    rec(&mut ctx, 0, 0);
}

/// The ring map `x_j -> sum_i g[i][j] x_i` on `alg = F2[x1..xn]`.
pub fn substitution_map(g: &GF2Matrix, alg: &Arc<AlgebraSpec>) -> AlgebraMap {
    let gens = alg.generators();
    let images = (0..g.dim())
        .map(|j| {
            let terms = (0..g.dim())
                .filter(|&i| g.get(i, j))
                .map(|i| Element::generator(alg, &gens[i].name).expect("own generator"))
                .collect::<Vec<_>>();
            (gens[j].name.clone(), Element::sum(alg, terms.iter()))
        })
        .collect();
    AlgebraMap::new(alg, alg, images).expect("linear substitution is a valid map")
}

fn check_polynomial(g: &GF2Matrix, alg: &AlgebraSpec) -> Result<()> {
    if !alg.is_plain_polynomial() || !alg.is_degree_one() {
        return Err(Error::InvalidSpec(
            "matrix actions need a polynomial algebra on degree-1 generators".into(),
        ));
    }
    if alg.len() != g.dim() {
        return Err(Error::DimensionMismatch(g.dim(), alg.len()));
    }
    Ok(())
}

/// `g` applied to an element of `F2[x1..xn]`.
pub fn act(g: &GF2Matrix, a: &Element) -> Result<Element> {
    check_polynomial(g, a.algebra())?;
    substitution_map(g, a.algebra()).apply(a)
}

/// The matrix of `g` on the degree-`d` slice of `F2[x1..xn]` over
/// `monomial_basis(d)`; column `k` holds the image of the `k`-th monomial.
pub fn action_on_degree(g: &GF2Matrix, d: u32) -> BitMatrix {
    let alg = AlgebraSpec::polynomial(g.dim());
    let basis = DegreeBasis::new(&alg, d);
    action_on_basis(g, &basis)
}

pub(crate) fn action_on_basis(g: &GF2Matrix, basis: &DegreeBasis) -> BitMatrix {
    let len = basis.len();
    let mut columns = BitMatrix::zeros(len, len);
    for_each_image(g, basis, |src, img| {
        for t in img {
            columns.flip(src, t);
        }
    });
    columns.transpose()
}

/// Orbits of the coordinate-permutation group generated by `perms` on the
/// monomial basis: `(orbit id per basis index, orbit count)`. Orbit ids are
/// assigned in basis order.
fn monomial_orbits(n: usize, perms: &[Vec<usize>], basis: &DegreeBasis) -> (Vec<u32>, usize) {
    let group = permutation_closure(n, perms);
    let mut orbit_of = vec![u32::MAX; basis.len()];
    let mut count = 0u32;
    let mut exps = vec![0u16; n];
    for k in 0..basis.len() {
        if orbit_of[k] != u32::MAX {
            continue;
        }
        let m = &basis.monomials()[k];
        for p in &group {
            for (j, &a) in m.exponents().iter().enumerate() {
                exps[p[j]] = a;
            }
            let image = crate::f2alg::Monomial::new(basis.algebra(), &exps).expect("valid exponents");
            orbit_of[basis.index_of(&image).expect("same degree")] = count;
        }
        count += 1;
    }
    (orbit_of, count as usize)
}

/// The degree-`d` invariants of `group`, as an echelonized subspace of the
/// slice over `monomial_basis(d)`.
///
/// Permutation generators are handled by working with orbit sums; the other
/// generators contribute the linear conditions `(g - 1) v = 0` on
/// combinations of orbit sums.
pub fn invariant_basis(group: &MatrixGroup, d: u32) -> Subspace {
    let alg = AlgebraSpec::polynomial(group.dim());
    let basis = DegreeBasis::new(&alg, d);
    invariant_subspace(group, &basis)
}

pub(crate) fn invariant_subspace(group: &MatrixGroup, basis: &DegreeBasis) -> Subspace {
    let n = group.dim();
    let len = basis.len();
    let (perms, others) = group.split_permutations();
    let (orbit_of, orbits) = monomial_orbits(n, &perms, basis);
    let mut members = vec![Vec::new(); orbits];
    for (k, &o) in orbit_of.iter().enumerate() {
        members[o as usize].push(k);
    }
    let indicator = |o: usize| -> BitVec {
        let mut v = BitVec::zeros(len);
        for &k in &members[o] {
            v.set(k, true);
        }
        v
    };
    if others.is_empty() {
        let vectors: Vec<BitVec> = (0..orbits).map(indicator).collect();
        return Subspace::span(len, &vectors);
    }
    let left = others.len() * len;
    let mut y = BitMatrix::zeros(orbits, left + orbits);
    for (gi, g) in others.iter().enumerate() {
        let offset = gi * len;
        for_each_image(g, basis, |src, img| {
            let o = orbit_of[src] as usize;
            for t in img {
                y.flip(o, offset + t);
            }
            y.flip(o, offset + src);
        });
    }
    for o in 0..orbits {
        y.set(o, left + o, true);
    }
    let rank = y.eliminate(left, false).len();
    let mut vectors = Vec::with_capacity(orbits - rank);
    for r in rank..orbits {
        let mut v = BitVec::zeros(len);
        for o in y.row_ones(r).filter(|&c| c >= left).map(|c| c - left) {
            v.xor_assign(&indicator(o));
        }
        vectors.push(v);
    }
    Subspace::span(len, &vectors)
}

/// Invariant dimensions for degrees `0..=max_degree`.
pub fn invariant_dims(group: &MatrixGroup, max_degree: u32) -> Vec<usize> {
    (0..=max_degree)
        .map(|d| invariant_basis(group, d).dim())
        .collect()
}

/// True if `g` fixes `a`.
pub fn is_fixed(g: &GF2Matrix, a: &Element) -> Result<bool> {
    Ok(&act(g, a)? == a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvection_on_degree_two() {
        // x1 -> x1 + x2
        let t = GF2Matrix::transvection(2, 1, 0).unwrap();
        let alg = AlgebraSpec::polynomial(2);
        let m = action_on_degree(&t, 2);
        let basis = DegreeBasis::new(&alg, 2);
        let image = |s: &str| {
            let v = basis.vectorize(&alg.parse(s).unwrap()).unwrap();
            basis.devectorize(&m.mul_vec(&v).unwrap()).render()
        };
        assert_eq!(image("x1^2"), "x1^2 + x2^2");
        assert_eq!(image("x1*x2"), "x1*x2 + x2^2");
        assert_eq!(image("x2^2"), "x2^2");
    }

    #[test]
    fn identity_acts_trivially() {
        for d in 0..6 {
            let m = action_on_degree(&GF2Matrix::identity(4), d);
            assert_eq!(m, BitMatrix::identity(m.rows()));
        }
    }

    #[test]
    fn box_route_matches_substitution() {
        let g = GF2Matrix::from_row_bytes(4, &[0b1011, 0b0110, 0b1100, 0b1000]).unwrap();
        assert!(g.is_invertible());
        let alg = AlgebraSpec::polynomial(4);
        for d in [1u32, 3, 7] {
            let basis = DegreeBasis::new(&alg, d);
            let fast = action_on_basis(&g, &basis);
            let map = substitution_map(&g, &alg);
            for (k, m) in basis.monomials().iter().enumerate() {
                let img = map.apply(&Element::from_monomial(&alg, m.clone())).unwrap();
                let col: Vec<usize> = (0..basis.len()).filter(|&r| fast.get(r, k)).collect();
                let want: Vec<usize> =
                    img.terms().iter().map(|t| basis.index_of(t).unwrap()).collect();
                let mut want = want;
                want.sort_unstable();
                assert_eq!(col, want, "degree {d}, monomial {}", m.render(&alg));
            }
        }
    }

    #[test]
    fn general_linear_invariants() {
        let gl = MatrixGroup::general_linear(4).unwrap();
        assert_eq!(invariant_basis(&gl, 8).dim(), 1);
        assert_eq!(invariant_basis(&gl, 7).dim(), 0);
        let trivial = MatrixGroup::trivial(3);
        assert_eq!(invariant_basis(&trivial, 4).dim(), 15);
    }

    #[test]
    fn invariants_without_permutations() {
        // the group of order 2 generated by x1 -> x1 + x2 in two variables
        let t = GF2Matrix::transvection(2, 1, 0).unwrap();
        let group = MatrixGroup::from_generators(2, vec![t]).unwrap();
        // F2[x1,x2]^{Z/2} = F2[x2, x1^2 + x1*x2]
        assert_eq!(invariant_dims(&group, 4), vec![1, 1, 2, 2, 3]);
    }
}
