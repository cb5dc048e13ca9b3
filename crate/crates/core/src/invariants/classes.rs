use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::action::{invariant_subspace, is_fixed};
use super::group::{permutation_closure, permutation_generators, MatrixGroup};
use crate::error::{Error, Result};
use crate::f2alg::{AlgebraSpec, DegreeBasis, Element, Monomial};
use crate::gf2la::{BitVec, Subspace};

/// The Dickson invariants of `F2[x1..xn]`: coefficients of `X^(2^i)` in
/// `X * prod_{v != 0} (X + l_v)` for `i = n-1, ..., 0`, of degrees
/// `2^n - 2^i`.
pub fn dickson(n: usize) -> Vec<Element> {
    let alg = AlgebraSpec::polynomial(n);
    let vars: Vec<Element> = alg
        .generators()
        .iter()
        .map(|g| Element::generator(&alg, &g.name).expect("own generator"))
        .collect();
    // coefficients of X^k, lowest first
    let mut poly = vec![Element::zero(&alg), Element::one(&alg)];
    for v in 1u32..(1 << n) {
        let form = Element::sum(
            &alg,
            vars.iter().enumerate().filter(|(i, _)| v >> i & 1 == 1).map(|(_, x)| x),
        );
        let mut next = vec![Element::zero(&alg); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] + &(c * &form);
        }
        poly = next;
    }
    debug_assert!(poly
        .iter()
        .enumerate()
        .all(|(k, c)| k.is_power_of_two() || c.is_zero()));
    (0..n).rev().map(|i| poly[1 << i].clone()).collect()
}

/// Sum of the distinct images of `m` under all permutations of the
/// variables of `F2[x1..xn]`.
pub fn perm_orbit_sum(alg: &Arc<AlgebraSpec>, m: &Monomial) -> Result<Element> {
    if !alg.is_plain_polynomial() || !alg.is_degree_one() {
        return Err(Error::InvalidSpec("orbit sums need F2[x1..xn]".into()));
    }
    let n = alg.len();
    let gens: Vec<Vec<usize>> = permutation_generators(n)?
        .iter()
        .map(|g| g.as_permutation().expect("permutation matrix"))
        .collect();
    let mut terms: Vec<Monomial> = permutation_closure(n, &gens)
        .iter()
        .map(|p| {
            let mut exps = vec![0u16; n];
            for (j, &a) in m.exponents().iter().enumerate() {
                exps[p[j]] = a;
            }
            Monomial::new(alg, &exps)
        })
        .collect::<Result<_>>()?;
    terms.sort_unstable();
    terms.dedup();
    Ok(Element::from_terms(alg, terms))
}

/// Sets `x_i = 0` for every variable index `i` (0-based) outside `keep`, and
/// rewrites the result over the polynomial algebra on the kept variables
/// (names preserved, original order).
pub fn restrict(a: &Element, keep: &[usize]) -> Result<Element> {
    let alg = a.algebra();
    if !alg.is_plain_polynomial() {
        return Err(Error::InvalidSpec("restriction needs a polynomial algebra".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&i| i >= alg.len()) {
        return Err(Error::InvalidSpec(format!("no variable with index {bad}")));
    }
    let small = AlgebraSpec::new(
        kept.iter()
            .map(|&i| alg.generators()[i].clone())
            .collect(),
    )?;
    let terms = a
        .terms()
        .iter()
        .filter(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || kept.binary_search(&i).is_ok())
        })
        .map(|m| {
            let exps: Vec<u16> = kept.iter().map(|&i| m.exponents()[i]).collect();
            Monomial::new(&small, &exps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Element::from_terms(&small, terms))
}

/// Which generator list to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Profile {
    A6,
    A7,
}

impl Profile {
    /// Named classes in extraction order with their degrees.
    pub fn names(&self) -> &'static [(&'static str, u32)] {
        match self {
            Profile::A6 => &[
                ("w3", 3),
                ("g5", 5),
                ("d8", 8),
                ("d12", 12),
                ("d14", 14),
                ("g9", 9),
                ("b15", 15),
            ],
            Profile::A7 => &[
                ("d8", 8),
                ("d12", 12),
                ("d14", 14),
                ("d15", 15),
                ("x18", 18),
                ("x20", 20),
                ("x21", 21),
                ("x24", 24),
                ("x25", 25),
                ("x27", 27),
                ("x45", 45),
            ],
        }
    }
}

/// Named invariant classes, in insertion order.
#[derive(Clone, Debug, Default)]
pub struct NamedClassTable {
    entries: Vec<(String, u32, Element)>,
}

impl NamedClassTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, element: Element) -> Result<()> {
        let degree = element
            .homogeneous_degree()?
            .ok_or_else(|| Error::NamedClass {
                name: name.into(),
                degree: 0,
                dim: 0,
                reason: "class is zero".into(),
            })?;
        self.entries.retain(|(n, _, _)| n != name);
        self.entries.push((name.to_string(), degree, element));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Element> {
        self.entries.iter().find(|(n, _, _)| n == name).map(|(_, _, e)| e)
    }

    pub fn degree_of(&self, name: &str) -> Option<u32> {
        self.entries.iter().find(|(n, _, _)| n == name).map(|(_, d, _)| *d)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _, _)| n.as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u32, &Element)> {
        self.entries.iter().map(|(n, d, e)| (n.as_str(), *d, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Names of entries not fixed by every generator of `group`.
    pub fn unfixed(&self, group: &MatrixGroup) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (name, _, e) in &self.entries {
            for g in group.generators() {
                if !is_fixed(g, e)? {
                    out.push(name.clone());
                    break;
                }
            }
        }
        Ok(out)
    }

    /// One `name degree element` line per class.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        for (name, d, e) in &self.entries {
            let _ = writeln!(s, "{name} {d} {}", e.render());
        }
        s
    }

    pub fn from_fixture(alg: &Arc<AlgebraSpec>, text: &str) -> Result<Self> {
        let mut table = Self::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, char::is_whitespace);
            let (Some(name), Some(deg), Some(body)) = (parts.next(), parts.next(), parts.next())
            else {
                return Err(Error::Parse(format!("bad named-class line {line:?}")));
            };
            let degree: u32 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree in {line:?}")))?;
            let element = alg.parse(body)?;
            match element.homogeneous_degree()? {
                Some(d) if d == degree => table.insert(name, element)?,
                found => {
                    return Err(Error::WrongDegree {
                        expected: degree,
                        found: found.unwrap_or(0),
                    })
                }
            }
        }
        Ok(table)
    }

    pub fn load(alg: &Arc<AlgebraSpec>, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_fixture(alg, &text).map_err(|e| Error::BadFixture {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }
}

/// Span in `basis` of all products `r1^e1 ... rk^ek * m` with `m` either 1
/// or one of `module`.
pub(crate) fn product_span(basis: &DegreeBasis, ring: &[&Element], module: &[&Element]) -> Result<Subspace> {
    let alg = basis.algebra();
    let d = basis.degree();
    let degree = |e: &Element| e.homogeneous_degree().ok().flatten().unwrap_or(0);
    let one = Element::one(alg);
    let mut vectors = Vec::new();
    let mut heads: Vec<&Element> = vec![&one];
    heads.extend(module.iter().copied());
    for head in heads {
        let hd = if head.is_zero() { continue } else { degree(head) };
        if hd > d {
            continue;
        }
        let mut products = Vec::new();
        ring_products(ring, 0, d - hd, head.clone(), &mut products)?;
        for p in products {
            vectors.push(basis.vectorize(&p)?);
        }
    }
    Ok(Subspace::span(basis.len(), &vectors))
}

fn ring_products(
    ring: &[&Element],
    i: usize,
    left: u32,
    acc: Element,
    out: &mut Vec<Element>,
) -> Result<()> {
    if left == 0 {
        out.push(acc);
        return Ok(());
    }
    if i == ring.len() || acc.is_zero() {
        return Ok(());
    }
    let gd = match ring[i].homogeneous_degree()? {
        Some(gd) if gd > 0 => gd,
        _ => return ring_products(ring, i + 1, left, acc, out),
    };
    let mut cur = acc;
    let mut used = 0;
    loop {
        ring_products(ring, i + 1, left - used, cur.clone(), out)?;
        if used + gd > left {
            break;
        }
        cur = cur.try_mul(ring[i])?;
        used += gd;
    }
    Ok(())
}

/// Picks an element of `space` outside `decomposables`, preferring elements
/// of `preferred`. Among the echelon basis vectors of the chosen subspace the
/// one with the latest pivot (smallest leading monomial) not lying in
/// `decomposables` wins.
fn choose_new(space: &Subspace, decomposables: &Subspace, preferred: Option<&Subspace>) -> Option<BitVec> {
    let pick = |s: &Subspace| -> Option<BitVec> {
        let rows: Vec<BitVec> = s.vectors().collect();
        rows.into_iter().rev().find(|v| !decomposables.contains(v))
    };
    preferred.and_then(|p| pick(p)).or_else(|| pick(space))
}

fn named_error(name: &str, degree: u32, dim: usize, reason: impl Into<String>) -> Error {
    Error::NamedClass {
        name: name.into(),
        degree,
        dim,
        reason: reason.into(),
    }
}

/// Extracts the named classes of `profile` from the invariants of `group`
/// (a subgroup of `GL_4(2)`), skipping classes above `max_degree`.
pub fn extract_named_classes(
    group: &MatrixGroup,
    profile: Profile,
    max_degree: Option<u32>,
) -> Result<NamedClassTable> {
    if group.dim() != 4 {
        return Err(Error::DimensionMismatch(group.dim(), 4));
    }
    let alg = AlgebraSpec::polynomial(4);
    let within = |d: u32| max_degree.map_or(true, |m| d <= m);
    let dk = dickson(4);
    let mut table = NamedClassTable::new();
    let invariants = |d: u32| -> (DegreeBasis, Subspace) {
        let basis = DegreeBasis::new(&alg, d);
        let inv = invariant_subspace(group, &basis);
        (basis, inv)
    };
    match profile {
        Profile::A6 => {
            for (name, d) in [("w3", 3u32), ("g5", 5)] {
                if !within(d) {
                    continue;
                }
                let (basis, inv) = invariants(d);
                if inv.dim() != 1 {
                    return Err(named_error(name, d, inv.dim(), "expected a unique invariant"));
                }
                table.insert(name, basis.devectorize(&inv.basis().row(0)))?;
            }
            for (name, e) in [("d8", &dk[0]), ("d12", &dk[1]), ("d14", &dk[2])] {
                let d = e.homogeneous_degree()?.unwrap_or(0);
                if within(d) {
                    table.insert(name, e.clone())?;
                }
            }
            if within(14) {
                let (basis, inv) = invariants(9);
                if inv.dim() != 2 {
                    return Err(named_error("g9", 9, inv.dim(), "expected two invariants"));
                }
                let w3 = table.get("w3").expect("extracted above").clone();
                let g5 = table.get("g5").expect("extracted above").clone();
                let rhs = dk[2]
                    .try_add(&w3.square().try_mul(&dk[0])?)?
                    .try_add(&w3.pow(3).try_mul(&g5)?)?;
                let rows: Vec<BitVec> = inv.vectors().collect();
                let mut solutions = Vec::new();
                for mask in 1u32..4 {
                    let mut v = BitVec::zeros(basis.len());
                    for (i, r) in rows.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            v.xor_assign(r);
                        }
                    }
                    let gamma = basis.devectorize(&v);
                    if g5.try_mul(&gamma)? == rhs {
                        solutions.push(gamma);
                    }
                }
                if solutions.len() != 1 {
                    return Err(named_error(
                        "g9",
                        9,
                        inv.dim(),
                        format!("{} solutions of the degree-14 relation", solutions.len()),
                    ));
                }
                table.insert("g9", solutions.pop().expect("one solution"))?;
            }
            if within(15) {
                let (basis, inv) = invariants(15);
                let ring: Vec<&Element> = ["w3", "g5", "d8", "d12", "g9"]
                    .iter()
                    .filter_map(|n| table.get(n))
                    .collect();
                let dec = product_span(&basis, &ring, &[])?;
                let v = choose_new(&inv, &dec, None).ok_or_else(|| {
                    named_error("b15", 15, inv.dim(), format!("decomposables already span {}", dec.dim()))
                })?;
                table.insert("b15", basis.devectorize(&v))?;
            }
        }
        Profile::A7 => {
            for (name, e) in ["d8", "d12", "d14", "d15"].iter().zip(&dk) {
                let d = e.homogeneous_degree()?.unwrap_or(0);
                if within(d) {
                    table.insert(name, e.clone())?;
                }
            }
            let ring: Vec<Element> = dk.clone();
            let mut module: Vec<Element> = Vec::new();
            for &(name, d) in &Profile::A7.names()[4..] {
                if !within(d) {
                    continue;
                }
                let (basis, inv) = invariants(d);
                let ring_refs: Vec<&Element> = ring.iter().collect();
                let module_refs: Vec<&Element> = module.iter().collect();
                let dec = product_span(&basis, &ring_refs, &module_refs)?;
                let vanishing = restriction_kernel(&basis, &inv, &[0, 1])?;
                let v = choose_new(&inv, &dec, Some(&vanishing)).ok_or_else(|| {
                    named_error(name, d, inv.dim(), format!("decomposables already span {}", dec.dim()))
                })?;
                let e = basis.devectorize(&v);
                table.insert(name, e.clone())?;
                module.push(e);
            }
        }
    }
    Ok(table)
}

/// Elements of `space` whose restriction to the variables `keep` vanishes.
pub(crate) fn restriction_kernel(basis: &DegreeBasis, space: &Subspace, keep: &[usize]) -> Result<Subspace> {
    // restriction is a coordinate projection onto monomials supported in `keep`
    let support: Vec<usize> = basis
        .monomials()
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || keep.contains(&i))
        })
        .map(|(k, _)| k)
        .collect();
    let mut proj = crate::gf2la::BitMatrix::zeros(support.len(), space.dim());
    for (j, v) in space.vectors().enumerate() {
        for (r, &k) in support.iter().enumerate() {
            if v.get(k) {
                proj.set(r, j, true);
            }
        }
    }
    let kernel = proj.kernel();
    let vectors: Vec<BitVec> = kernel.vectors().map(|c| space.combine(&c)).collect();
    Ok(Subspace::span(basis.len(), &vectors))
}
