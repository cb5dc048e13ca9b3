//! Ext over an exterior algebra `E(y_1, ..., y_k)` through the Koszul
//! complex.
//!
//! For a module `M` with basis labels, cochains are `m* . P` with `P` a
//! monomial in the polynomial generators `lambda_j`, and
//! `delta(m0* . P) = sum_j sum_{y_j m = m0} m* . lambda_j P`.
//! A cochain has filtration `s = deg P`, internal degree
//! `t = deg m + sum f_j alpha_j`, and total degree `n = s + t`.

use std::collections::HashMap;

use super::page::{PageEntry, PageTable};
use crate::error::{Error, Result};
use crate::gf2la::{BitMatrix, BitVec, Subspace};

/// A graded module over an exterior algebra, given on a finite basis with
/// each generator acting as a partial map on labels.
#[derive(Clone, Debug)]
pub struct KoszulModule {
    lambda_gens: Vec<(String, u32)>,
    /// `basis[t]` are the labels in internal degree `t`.
    basis: Vec<Vec<String>>,
    /// `actions[j][t][i]` is the image of label `i` of degree `t` under `y_j`.
    actions: Vec<Vec<Vec<Option<usize>>>>,
}

impl KoszulModule {
    /// Validates that actions land in the right degree, commute pairwise and
    /// square to zero on every basis label.
    pub fn new(
        lambda_gens: Vec<(String, u32)>,
        basis: Vec<Vec<String>>,
        actions: Vec<Vec<Vec<Option<usize>>>>,
    ) -> Result<Self> {
        if actions.len() != lambda_gens.len() {
            return Err(Error::DimensionMismatch(actions.len(), lambda_gens.len()));
        }
        for ((name, f), act) in lambda_gens.iter().zip(&actions) {
            if *f == 0 {
                return Err(Error::ModuleInvariant(format!("{name} has fiber degree 0")));
            }
            if act.len() != basis.len() {
                return Err(Error::DimensionMismatch(act.len(), basis.len()));
            }
            for (t, images) in act.iter().enumerate() {
                if images.len() != basis[t].len() {
                    return Err(Error::DimensionMismatch(images.len(), basis[t].len()));
                }
                for (i, img) in images.iter().enumerate() {
                    if let Some(k) = *img {
                        let target = t + *f as usize;
                        if target >= basis.len() || k >= basis[target].len() {
                            return Err(Error::ModuleInvariant(format!(
                                "{name} sends {} outside the module",
                                basis[t][i]
                            )));
                        }
                    }
                }
            }
        }
        let m = KoszulModule {
            lambda_gens,
            basis,
            actions,
        };
        m.check_relations()?;
        Ok(m)
    }

    fn apply(&self, j: usize, t: usize, i: usize) -> Option<(usize, usize)> {
        let f = self.lambda_gens[j].1 as usize;
        self.actions[j][t][i].map(|k| (t + f, k))
    }

    fn apply2(&self, j: usize, k: usize, t: usize, i: usize) -> Option<(usize, usize)> {
        self.apply(k, t, i).and_then(|(t2, i2)| self.apply(j, t2, i2))
    }

    fn check_relations(&self) -> Result<()> {
        let k = self.lambda_gens.len();
        for t in 0..self.basis.len() {
            for i in 0..self.basis[t].len() {
                for a in 0..k {
                    if let Some((t2, i2)) = self.apply2(a, a, t, i) {
                        return Err(Error::ModuleInvariant(format!(
                            "{0}{0} sends {1} to {2}, not zero",
                            self.lambda_gens[a].0, self.basis[t][i], self.basis[t2][i2]
                        )));
                    }
                    for b in a + 1..k {
                        if self.apply2(a, b, t, i) != self.apply2(b, a, t, i) {
                            return Err(Error::ModuleInvariant(format!(
                                "{} and {} do not commute on {}",
                                self.lambda_gens[a].0, self.lambda_gens[b].0, self.basis[t][i]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lambda_gens(&self) -> &[(String, u32)] {
        &self.lambda_gens
    }

    /// Largest internal degree with a basis.
    pub fn t_max(&self) -> u32 {
        self.basis.len().saturating_sub(1) as u32
    }

    pub fn labels(&self, t: u32) -> &[String] {
        self.basis.get(t as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// The image of `label` under the generator `lambda`, if nonzero.
    pub fn act(&self, lambda: &str, label: &str) -> Option<&str> {
        let j = self.lambda_gens.iter().position(|(n, _)| n == lambda)?;
        for (t, labels) in self.basis.iter().enumerate() {
            if let Some(i) = labels.iter().position(|l| l == label) {
                return self.apply(j, t, i).map(|(t2, i2)| self.basis[t2][i2].as_str());
            }
        }
        None
    }

    /// The trivial module `F2` in degree 0.
    pub fn trivial(lambda_gens: Vec<(String, u32)>) -> Result<Self> {
        let k = lambda_gens.len();
        Self::new(lambda_gens, vec![vec!["1".into()]], vec![vec![vec![None]]; k])
    }
}

/// Exponent vectors `alpha` with `sum alpha_j f_j = weight`, in a fixed order.
fn lambda_monomials(fibers: &[u32], weight: u32) -> Vec<Vec<u32>> {
    fn rec(fibers: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == fibers.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let f = fibers[i];
        let mut e = left / f;
        loop {
            cur.push(e);
            rec(fibers, i + 1, left - e * f, cur, out);
            cur.pop();
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    let mut out = Vec::new();
    rec(fibers, 0, weight, &mut Vec::new(), &mut out);
    out
}

/// Cochains of a fixed bidegree `(s, t)`: pairs (label, lambda exponents).
struct CochainBasis {
    cells: Vec<((usize, usize), Vec<u32>)>,
    index: HashMap<((usize, usize), Vec<u32>), usize>,
}

impl CochainBasis {
    fn new(m: &KoszulModule, s: u32, t: u32) -> Self {
        let fibers: Vec<u32> = m.lambda_gens.iter().map(|g| g.1).collect();
        let mut cells = Vec::new();
        for deg in 0..=t.min(m.t_max()) {
            for alpha in lambda_monomials(&fibers, t - deg) {
                if alpha.iter().sum::<u32>() != s {
                    continue;
                }
                for i in 0..m.basis[deg as usize].len() {
                    cells.push(((deg as usize, i), alpha.clone()));
                }
            }
        }
        let index = cells.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        CochainBasis { cells, index }
    }

    fn len(&self) -> usize {
        self.cells.len()
    }
}

fn render_cochain(m: &KoszulModule, cell: &((usize, usize), Vec<u32>)) -> String {
    let ((t, i), alpha) = cell;
    let mut out = format!("({})*", m.basis[*t][*i]);
    let lam: Vec<String> = alpha
        .iter()
        .zip(&m.lambda_gens)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, (name, _))| if e == 1 { name.clone() } else { format!("{name}^{e}") })
        .collect();
    if !lam.is_empty() {
        out.push(' ');
        out.push_str(&lam.join("*"));
    }
    out
}

/// Matrix of `delta: C^{s,t} -> C^{s+1,t}` (columns are sources).
fn coboundary(m: &KoszulModule, src: &CochainBasis, dst: &CochainBasis) -> BitMatrix {
    let mut out = BitMatrix::zeros(dst.len(), src.len());
    // preimages: for each generator j, label (t0, i0) <- labels (t, i) with y_j(t, i) = (t0, i0)
    for (col, ((t0, i0), alpha)) in src.cells.iter().enumerate() {
        for j in 0..m.lambda_gens.len() {
            let f = m.lambda_gens[j].1 as usize;
            if *t0 < f {
                continue;
            }
            let t = t0 - f;
            for i in 0..m.basis[t].len() {
                if m.actions[j][t][i] == Some(*i0) {
                    let mut beta = alpha.clone();
                    beta[j] += 1;
                    let row = dst.index[&((t, i), beta)];
                    out.flip(row, col);
                }
            }
        }
    }
    out
}

/// Representatives for `ker(g) / im(f)` given as columns of `f` (into the
/// source of `g`).
pub(crate) fn homology_representatives(f: &BitMatrix, g: &BitMatrix) -> Vec<BitVec> {
    let n = g.cols();
    let boundaries = Subspace::row_span(&f.transpose());
    let cycles = g.kernel();
    let mut span = boundaries.clone();
    let mut reps = Vec::new();
    for v in cycles.vectors() {
        if !span.contains(&v) {
            span = span
                .join(&Subspace::span(n, std::slice::from_ref(&v)))
                .expect("same ambient");
            reps.push(v);
        }
    }
    reps
}

/// `Ext` of `m` over its exterior algebra for `s <= s_max`, `t <= t_max`.
///
/// Only bidegrees whose internal degree lies within the module's basis are
/// meaningful; entries are listed by total degree, then `s`.
pub fn koszul_ext(m: &KoszulModule, s_max: u32, t_max: u32) -> Result<PageTable> {
    let mut table = PageTable::new("koszul-ext");
    let mut entries = Vec::new();
    for t in 0..=t_max {
        let bases: Vec<CochainBasis> = (0..=s_max + 1).map(|s| CochainBasis::new(m, s, t)).collect();
        let deltas: Vec<BitMatrix> = (0..=s_max as usize)
            .map(|s| coboundary(m, &bases[s], &bases[s + 1]))
            .collect();
        for s in 0..s_max as usize {
            if !deltas[s + 1].mul(&deltas[s])?.is_zero() {
                return Err(Error::ModuleInvariant(format!(
                    "delta squared is nonzero at (s, t) = ({s}, {t})"
                )));
            }
        }
        for s in 0..=s_max as usize {
            let incoming = if s == 0 {
                BitMatrix::zeros(bases[0].len(), 0)
            } else {
                deltas[s - 1].clone()
            };
            let reps = homology_representatives(&incoming, &deltas[s]);
            entries.push(PageEntry {
                n: s as u32 + t,
                s: Some(s as u32),
                t: Some(t),
                dim: reps.len() as u64,
                representatives: reps
                    .iter()
                    .map(|v| {
                        v.ones()
                            .map(|k| render_cochain(m, &bases[s].cells[k]))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    })
                    .collect(),
            });
        }
    }
    entries.sort_by_key(|e| (e.n, e.s));
    for e in entries {
        table.push(e);
    }
    Ok(table)
}

/// Which extension of the `e`-action to use in [`build_em_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmReading {
    /// `e` acts only on pure powers `b4^a b6^j`.
    Literal,
    /// `e` also acts on `b6^j theta` for exterior `theta` without `x7`.
    Extended,
}

/// Label of `b4^a b6^b x3^p x5^q x7^r`.
fn em_label(a: u32, b: u32, ext: [bool; 3]) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("b4", a), ("b6", b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    for (name, on) in ["x3", "x5", "x7"].iter().zip(ext) {
        if on {
            parts.push(name.to_string());
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The dual of `F2[b4, b6] (x) E(x3, x5, x7)` through internal degree
/// `t_max`, as a module over `E(e, d*, (d^2)*)` with fiber degrees 1, 2, 4:
///
/// * `e (b6^j)* = (b6^(j-1) x7)*` (times any power of `b4`),
/// * `d* (x5 theta)* = (x7 theta)*`,
/// * `(d^2)* (x3 tau)* = (x7 tau)*`,
///
/// and zero otherwise. The generators are named `l2`, `l3`, `l5` after the
/// total degree of the corresponding `lambda`.
pub fn build_em_module(t_max: u32, reading: EmReading) -> Result<KoszulModule> {
    let lambda_gens: Vec<(String, u32)> =
        vec![("l2".into(), 1), ("l3".into(), 2), ("l5".into(), 4)];
    let mut basis: Vec<Vec<String>> = vec![Vec::new(); t_max as usize + 1];
    let mut keys: Vec<Vec<(u32, u32, [bool; 3])>> = vec![Vec::new(); t_max as usize + 1];
    let degree = |a: u32, b: u32, ext: [bool; 3]| {
        4 * a + 6 * b + 3 * ext[0] as u32 + 5 * ext[1] as u32 + 7 * ext[2] as u32
    };
    for a in 0..=t_max / 4 {
        for b in 0..=t_max / 6 {
            for mask in 0u8..8 {
                let ext = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
                let t = degree(a, b, ext);
                if t <= t_max {
                    basis[t as usize].push(em_label(a, b, ext));
                    keys[t as usize].push((a, b, ext));
                }
            }
        }
    }
    let lookup = |key: (u32, u32, [bool; 3])| -> Option<usize> {
        let t = degree(key.0, key.1, key.2) as usize;
        keys.get(t)?.iter().position(|k| *k == key)
    };
    let mut actions = vec![Vec::new(); 3];
    for t in 0..=t_max as usize {
        let mut e = Vec::new();
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for &(a, b, [x3, x5, x7]) in &keys[t] {
            let e_applies = match reading {
                EmReading::Literal => b >= 1 && !x3 && !x5 && !x7,
                EmReading::Extended => b >= 1 && !x7,
            };
            e.push(if e_applies { lookup((a, b - 1, [x3, x5, true])) } else { None });
            d1.push(if x5 && !x7 { lookup((a, b, [x3, false, true])) } else { None });
            d2.push(if x3 && !x7 { lookup((a, b, [false, x5, true])) } else { None });
        }
        actions[0].push(e);
        actions[1].push(d1);
        actions[2].push(d2);
    }
    KoszulModule::new(lambda_gens, basis, actions)
}
