//! Property checks shared by the proptest suites and the acceptance run.
//!
//! Each check drives a deterministic proptest runner for the requested
//! number of cases and returns the first counterexample as an error string.
#![allow(dead_code)]

use std::path::Path;
use std::sync::{Arc, OnceLock};

use f2coh::f2alg::{AlgebraMap, AlgebraSpec, DegreeBasis, Element, GeneratorSpec, Monomial};
use f2coh::gf2la::{BitMatrix, BitVec, Subspace};
use f2coh::invariants::{act, action_on_degree, invariant_basis, load_alternating_subgroups, GF2Matrix, MatrixGroup};
use f2coh::series::RationalSeries;
use f2coh::steenrod::{sq, total_sq};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| match e {
        TestError::Fail(reason, value) => format!("{reason} for input {value:?}"),
        TestError::Abort(reason) => format!("aborted: {reason}"),
    })
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn lib(r: f2coh::Result<Element>) -> Result<Element, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// `F2[a, b] (x) E(e, f)` with `|a| = 1, |b| = 2, |e| = 1, |f| = 3`.
pub fn mixed_algebra() -> Arc<AlgebraSpec> {
    AlgebraSpec::new(vec![
        GeneratorSpec::poly("a", 1),
        GeneratorSpec::poly("b", 2),
        GeneratorSpec::ext("e", 1),
        GeneratorSpec::ext("f", 3),
    ])
    .unwrap()
}

/// `F2[x1, x2, x3] (x) E(u)`, all in degree 1, where Steenrod squares apply.
pub fn degree_one_algebra() -> Arc<AlgebraSpec> {
    AlgebraSpec::new(vec![
        GeneratorSpec::poly("x1", 1),
        GeneratorSpec::poly("x2", 1),
        GeneratorSpec::poly("x3", 1),
        GeneratorSpec::ext("u", 1),
    ])
    .unwrap()
}

/// Raw exponent vectors; turned into elements of a fixed algebra later so
/// that shrinking stays cheap.
pub fn arb_terms(gens: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Vec<Vec<u16>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, gens), 0..=max_terms)
}

pub fn element_from(alg: &Arc<AlgebraSpec>, terms: &[Vec<u16>]) -> Element {
    let monomials = terms
        .iter()
        .map(|exps| {
            let clamped: Vec<u16> = exps
                .iter()
                .zip(alg.generators())
                .map(|(&e, g)| if g.kind == f2coh::f2alg::GenKind::Exterior { e.min(1) } else { e })
                .collect();
            Monomial::new(alg, &clamped).unwrap()
        })
        .collect();
    Element::from_terms(alg, monomials)
}

/// A homogeneous element of degree `d` picked by a bitmask over the basis.
pub fn homogeneous_from(basis: &DegreeBasis, mask: &[bool]) -> Element {
    let bits: Vec<bool> = (0..basis.len()).map(|i| mask.get(i).copied().unwrap_or(false)).collect();
    basis.devectorize(&BitVec::from_bools(&bits))
}

pub fn prop_ring_laws(cases: u32) -> Result<(), String> {
    let alg = mixed_algebra();
    let t = || arb_terms(4, 3, 5);
    run(cases, (t(), t(), t()), |(x, y, z)| {
        let (a, b, c) = (element_from(&alg, &x), element_from(&alg, &y), element_from(&alg, &z));
        let zero = Element::zero(&alg);
        let one = Element::one(&alg);
        check(lib(a.try_add(&b))? == lib(b.try_add(&a))?, "addition commutes")?;
        check(lib(a.try_add(&a))? == zero, "a + a = 0")?;
        check(lib(a.try_mul(&b))? == lib(b.try_mul(&a))?, "multiplication commutes")?;
        check(lib(a.try_mul(&one))? == a, "1 is a unit")?;
        let ab_c = lib(lib(a.try_mul(&b))?.try_mul(&c))?;
        let a_bc = lib(a.try_mul(&lib(b.try_mul(&c))?))?;
        check(ab_c == a_bc, "multiplication associates")?;
        let left = lib(a.try_mul(&lib(b.try_add(&c))?))?;
        let right = lib(lib(a.try_mul(&b))?.try_add(&lib(a.try_mul(&c))?))?;
        check(left == right, "distributivity")?;
        for name in ["e", "f"] {
            let g = Element::generator(&alg, name).unwrap();
            check(lib(g.try_mul(&g))?.is_zero(), "exterior generators square to zero")?;
        }
        Ok(())
    })
}

pub fn prop_homomorphism(cases: u32) -> Result<(), String> {
    let source = AlgebraSpec::new(vec![
        GeneratorSpec::poly("a", 1),
        GeneratorSpec::poly("b", 2),
        GeneratorSpec::poly("c", 3),
    ])
    .unwrap();
    let target = AlgebraSpec::polynomial(3);
    let bases: Vec<DegreeBasis> = (1..=3).map(|d| DegreeBasis::new(&target, d)).collect();
    let masks = prop::collection::vec(prop::collection::vec(any::<bool>(), 10), 3);
    run(cases, (masks, arb_terms(3, 3, 4), arb_terms(3, 3, 4)), |(m, x, y)| {
        let images = ["a", "b", "c"]
            .iter()
            .zip(&bases)
            .zip(&m)
            .map(|((n, b), mask)| (n.to_string(), homogeneous_from(b, mask)))
            .collect();
        let f = AlgebraMap::new(&source, &target, images).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let (a, b) = (element_from(&source, &x), element_from(&source, &y));
        let fa = lib(f.apply(&a))?;
        let fb = lib(f.apply(&b))?;
        check(lib(f.apply(&lib(a.try_mul(&b))?))? == lib(fa.try_mul(&fb))?, "f(ab) = f(a) f(b)")?;
        check(lib(f.apply(&lib(a.try_add(&b))?))? == lib(fa.try_add(&fb))?, "f(a+b) = f(a) + f(b)")?;
        check(lib(f.apply(&Element::one(&source)))? == Element::one(&target), "f(1) = 1")
    })
}

pub fn prop_cartan(cases: u32) -> Result<(), String> {
    let alg = degree_one_algebra();
    run(cases, (arb_terms(4, 3, 4), arb_terms(4, 3, 4)), |(x, y)| {
        let (a, b) = (element_from(&alg, &x), element_from(&alg, &y));
        let lhs = lib(total_sq(&lib(a.try_mul(&b))?))?;
        let rhs = lib(lib(total_sq(&a))?.try_mul(&lib(total_sq(&b))?))?;
        check(lhs == rhs, "Sq(ab) = Sq(a) Sq(b)")
    })
}

pub fn prop_cartan_graded(cases: u32) -> Result<(), String> {
    let alg = degree_one_algebra();
    let bases: Vec<DegreeBasis> = (0..=4).map(|d| DegreeBasis::new(&alg, d)).collect();
    let mask = || prop::collection::vec(any::<bool>(), 40);
    run(cases, (0usize..=4, 0usize..=4, mask(), mask(), 0u32..=8), |(da, db, ma, mb, k)| {
        let a = homogeneous_from(&bases[da], &ma);
        let b = homogeneous_from(&bases[db], &mb);
        let lhs = lib(sq(k, &lib(a.try_mul(&b))?))?;
        let mut rhs = Element::zero(&alg);
        for i in 0..=k {
            rhs = lib(rhs.try_add(&lib(lib(sq(i, &a))?.try_mul(&lib(sq(k - i, &b))?))?))?;
        }
        check(lhs == rhs, "Sq^k(ab) = sum Sq^i(a) Sq^(k-i)(b)")
    })
}

pub fn prop_sq1_sq1(cases: u32) -> Result<(), String> {
    let alg = AlgebraSpec::polynomial(4);
    let bases: Vec<DegreeBasis> = (0..=7).map(|d| DegreeBasis::new(&alg, d)).collect();
    run(cases, (0usize..=7, prop::collection::vec(any::<bool>(), 120)), |(d, m)| {
        let a = homogeneous_from(&bases[d], &m);
        check(lib(sq(1, &lib(sq(1, &a))?))?.is_zero(), "Sq^1 Sq^1 = 0")
    })
}

pub fn prop_unstable(cases: u32) -> Result<(), String> {
    let alg = degree_one_algebra();
    let bases: Vec<DegreeBasis> = (0..=6).map(|d| DegreeBasis::new(&alg, d)).collect();
    run(cases, (0usize..=6, prop::collection::vec(any::<bool>(), 84), 1u32..=4), |(d, m, extra)| {
        let a = homogeneous_from(&bases[d], &m);
        let d = d as u32;
        check(lib(sq(d + extra, &a))?.is_zero(), "Sq^k a = 0 above the degree")?;
        check(lib(sq(d, &a))? == a.square(), "Sq^|a| a = a^2")?;
        check(lib(sq(0, &a))? == a, "Sq^0 = id")
    })
}

pub fn arb_invertible() -> impl Strategy<Value = GF2Matrix> {
    any::<u16>()
        .prop_map(|bits| {
            let rows = [(bits & 0xf) as u8, (bits >> 4 & 0xf) as u8, (bits >> 8 & 0xf) as u8, (bits >> 12) as u8];
            GF2Matrix::from_row_bytes(4, &rows).unwrap()
        })
        .prop_filter("invertible", |g| g.is_invertible())
}

pub fn prop_representation(cases: u32) -> Result<(), String> {
    run(cases, (arb_invertible(), arb_invertible(), 0u32..=6), |(g, h, d)| {
        let lhs = action_on_degree(&g.mul(&h), d);
        let rhs = action_on_degree(&g, d).mul(&action_on_degree(&h, d)).unwrap();
        check(lhs == rhs, "rho(gh) = rho(g) rho(h)")?;
        check(action_on_degree(&GF2Matrix::identity(4), d) == BitMatrix::identity(lhs.rows()), "rho(1) = 1")
    })
}

pub fn prop_sq1_equivariant(cases: u32) -> Result<(), String> {
    let alg = AlgebraSpec::polynomial(4);
    let bases: Vec<DegreeBasis> = (0..=8).map(|d| DegreeBasis::new(&alg, d)).collect();
    run(
        cases,
        (arb_invertible(), 0usize..=8, prop::collection::vec(any::<bool>(), 165)),
        |(g, d, m)| {
            let a = homogeneous_from(&bases[d], &m);
            let lhs = lib(act(&g, &lib(sq(1, &a))?))?;
            let rhs = lib(sq(1, &lib(act(&g, &a))?))?;
            check(lhs == rhs, "g Sq^1 a = Sq^1 g a")
        },
    )
}

pub fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
        .prop_map(|rows| {
            let cols = rows[0].len();
            let rows: Vec<BitVec> = rows.iter().map(|r| BitVec::from_bools(r)).collect();
            BitMatrix::from_rows(cols, &rows)
        })
}

pub fn prop_rank_nullity(cases: u32) -> Result<(), String> {
    run(cases, arb_matrix(40, 90), |m| {
        let kernel = m.kernel();
        check(m.rank() + kernel.dim() == m.cols(), "rank + nullity = columns")?;
        check(m.rank() == m.transpose().rank(), "row rank = column rank")?;
        for v in kernel.vectors() {
            check(m.mul_vec(&v).unwrap().is_zero(), "kernel vectors are annihilated")?;
        }
        Ok(())
    })
}

pub fn prop_rref_idempotent(cases: u32) -> Result<(), String> {
    run(cases, arb_matrix(30, 80), |m| {
        let (rank, r) = m.rref();
        let (rank2, r2) = r.rref();
        check(rank == rank2 && r == r2, "rref(rref(M)) = rref(M)")?;
        check(Subspace::row_span(&m) == Subspace::row_span(&r), "rref keeps the row space")
    })
}

pub fn prop_subspace_dimensions(cases: u32) -> Result<(), String> {
    let vecs = |n| prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..8);
    let pair = (2usize..=24).prop_flat_map(move |n| (Just(n), vecs(n), vecs(n)));
    run(cases, pair, |(n, u, w)| {
        let span = |vs: &[Vec<bool>]| {
            let bv: Vec<BitVec> = vs.iter().map(|v| BitVec::from_bools(v)).collect();
            Subspace::span(n, &bv)
        };
        let (u, w) = (span(&u), span(&w));
        let join = u.join(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        check(join.dim() + meet.dim() == u.dim() + w.dim(), "dim(U+W) + dim(U^W) = dim U + dim W")?;
        check(meet.is_subspace_of(&u) && meet.is_subspace_of(&w), "intersection lies in both")?;
        check(u.is_subspace_of(&join) && w.is_subspace_of(&join), "join contains both")
    })
}

pub fn arb_series() -> impl Strategy<Value = RationalSeries> {
    (
        prop::collection::vec((0u32..20, -3i64..=3), 0..5),
        prop::collection::vec(1u32..13, 0..4),
    )
        .prop_map(|(num, den)| RationalSeries::new(&num, &den).unwrap())
}

pub fn prop_expand_linear(cases: u32) -> Result<(), String> {
    run(cases, (arb_series(), arb_series(), -3i64..=3, 0u32..40), |(a, b, k, n)| {
        let combined = a.add(&b.scale(k)).expand(n);
        let ea = a.expand(n);
        let eb = b.expand(n);
        let direct: Vec<i64> = ea.iter().zip(&eb).map(|(x, y)| x + k * y).collect();
        check(combined == direct, "expand(a + k b) = expand(a) + k expand(b)")?;
        check(a.expand(n).len() == n as usize + 1, "expansion length")
    })
}

struct AlternatingData {
    groups: Vec<MatrixGroup>,
    /// Invariant bases per group for degrees `0..=MAX_INVARIANT_DEGREE`.
    bases: Vec<Vec<Vec<Element>>>,
}

pub const MAX_INVARIANT_DEGREE: u32 = 12;

fn alternating() -> &'static AlternatingData {
    static DATA: OnceLock<AlternatingData> = OnceLock::new();
    DATA.get_or_init(|| {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let (a7, a6) = load_alternating_subgroups(&dir).expect("pinned fixtures load");
        let alg = AlgebraSpec::polynomial(4);
        let groups = vec![a7, a6];
        let bases = groups
            .iter()
            .map(|g| {
                (0..=MAX_INVARIANT_DEGREE)
                    .map(|d| {
                        let basis = DegreeBasis::new(&alg, d);
                        invariant_basis(g, d).vectors().map(|v| basis.devectorize(&v)).collect()
                    })
                    .collect()
            })
            .collect();
        AlternatingData { groups, bases }
    })
}

pub fn prop_invariants_fixed(cases: u32) -> Result<(), String> {
    let data = alternating();
    run(
        cases,
        (0usize..2, 0u32..=MAX_INVARIANT_DEGREE, any::<prop::sample::Index>()),
        |(which, d, pick)| {
            let group = &data.groups[which];
            let elements = group.elements().expect("fixtures load enumerated");
            let g = elements[pick.index(elements.len())];
            for inv in &data.bases[which][d as usize] {
                check(lib(act(&g, inv))? == *inv, "invariant moved by a group element")?;
            }
            Ok(())
        },
    )
}

/// Every property with its display name.
pub fn all_properties() -> Vec<(&'static str, fn(u32) -> Result<(), String>)> {
    vec![
        ("ring laws", prop_ring_laws),
        ("ring homomorphism", prop_homomorphism),
        ("Cartan formula (total square)", prop_cartan),
        ("Cartan formula (graded)", prop_cartan_graded),
        ("Sq1 Sq1 = 0", prop_sq1_sq1),
        ("unstability", prop_unstable),
        ("rho(gh) = rho(g) rho(h)", prop_representation),
        ("Sq1 equivariance", prop_sq1_equivariant),
        ("rank-nullity", prop_rank_nullity),
        ("RREF idempotence", prop_rref_idempotent),
        ("subspace dimension formula", prop_subspace_dimensions),
        ("expansion linearity", prop_expand_linear),
        ("invariants fixed by group elements", prop_invariants_fixed),
    ]
}
