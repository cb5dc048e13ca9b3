use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;

use super::matrix::GF2Matrix;
use crate::error::{Error, Result};

/// A subgroup of `GL_n(2)` given by generators, optionally enumerated.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    generators: Vec<GF2Matrix>,
    elements: Option<Vec<GF2Matrix>>,
}

/// `|GL_n(2)| = prod_{i<n} (2^n - 2^i)`.
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

fn check_generators(n: usize, gens: &[GF2Matrix]) -> Result<()> {
    for g in gens {
        if g.dim() != n {
            return Err(Error::DimensionMismatch(g.dim(), n));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    Ok(())
}

impl MatrixGroup {
    /// A group described by generators only; nothing is enumerated.
    pub fn from_generators(n: usize, generators: Vec<GF2Matrix>) -> Result<Self> {
        if n == 0 || n > GF2Matrix::MAX_DIM {
            return Err(Error::MatrixTooLarge(n));
        }
        check_generators(n, &generators)?;
        Ok(MatrixGroup {
            n,
            generators,
            elements: None,
        })
    }

    /// Breadth-first closure of the generators. Elements are stored sorted.
    pub fn closure(n: usize, generators: Vec<GF2Matrix>) -> Result<Self> {
        let mut g = Self::from_generators(n, generators)?;
        g.enumerate();
        Ok(g)
    }

    pub fn trivial(n: usize) -> Self {
        MatrixGroup {
            n,
            generators: Vec::new(),
            elements: Some(vec![GF2Matrix::identity(n)]),
        }
    }

    /// `GL_n(2)` from the coordinate permutations and one transvection.
    pub fn general_linear(n: usize) -> Result<Self> {
        let mut gens = permutation_generators(n)?;
        if n >= 2 {
            gens.push(GF2Matrix::transvection(n, 1, 0)?);
        }
        Self::from_generators(n, gens)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[GF2Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[GF2Matrix]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<u64> {
        self.elements.as_ref().map(|e| e.len() as u64)
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub fn enumerate(&mut self) {
        if self.elements.is_some() {
            return;
        }
        let id = GF2Matrix::identity(self.n);
        let mut seen: HashSet<GF2Matrix> = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<GF2Matrix> = seen.into_iter().collect();
        elements.sort_unstable();
        debug_assert_eq!(gl_order(self.n) % elements.len() as u64, 0);
        self.elements = Some(elements);
    }

    /// Enumerates if needed and returns the element list.
    pub fn enumerated(&mut self) -> &[GF2Matrix] {
        self.enumerate();
        self.elements.as_deref().expect("just enumerated")
    }

    pub fn contains(&self, g: &GF2Matrix) -> Option<bool> {
        self.elements.as_ref().map(|e| e.binary_search(g).is_ok())
    }

    /// A uniformly random element of an enumerated group.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<GF2Matrix> {
        self.elements
            .as_ref()
            .map(|e| e[rng.gen_range(0..e.len())])
    }

    /// Conjugacy classes of an enumerated group, each sorted, listed in order
    /// of their least element.
    pub fn conjugacy_classes(&self) -> Option<Vec<Vec<GF2Matrix>>> {
        let elements = self.elements.as_ref()?;
        let inverses: Vec<GF2Matrix> = elements
            .iter()
            .map(|h| h.inverse().expect("group elements are invertible"))
            .collect();
        let mut classified: HashSet<GF2Matrix> = HashSet::new();
        let mut classes = Vec::new();
        for x in elements {
            if classified.contains(x) {
                continue;
            }
            let mut class: Vec<GF2Matrix> = elements
                .iter()
                .zip(&inverses)
                .map(|(h, hi)| h.mul(x).mul(hi))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            class.sort_unstable();
            classified.extend(class.iter().copied());
            classes.push(class);
        }
        Some(classes)
    }

    /// True when the normal closure of every nontrivial conjugacy class is the
    /// whole group. Requires enumeration; `None` otherwise.
    pub fn simplicity_certificate(&self) -> Option<bool> {
        let order = self.order()?;
        if order == 1 {
            return Some(false);
        }
        let id = GF2Matrix::identity(self.n);
        for class in self.conjugacy_classes()? {
            if class[0] == id {
                continue;
            }
            let mut closure = MatrixGroup {
                n: self.n,
                generators: class,
                elements: None,
            };
            closure.enumerate();
            if closure.order() != Some(order) {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Some `h` among `candidates` with `h G h^-1 = other`, where `other` must
    /// be enumerated and of the same order as `self`.
    pub fn conjugator_to(&self, other: &MatrixGroup, candidates: &[GF2Matrix]) -> Option<GF2Matrix> {
        let same_order = match (self.order(), other.order()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        };
        if !same_order {
            return None;
        }
        candidates.iter().copied().find(|h| {
            let hi = h.inverse().expect("group elements are invertible");
            self.generators
                .iter()
                .all(|g| other.contains(&h.mul(g).mul(&hi)) == Some(true))
        })
    }

    /// Permutation generators of the group, each as `j -> perm[j]`, together
    /// with the indices of the generators that are not permutation matrices.
    pub(crate) fn split_permutations(&self) -> (Vec<Vec<usize>>, Vec<GF2Matrix>) {
        let mut perms = Vec::new();
        let mut others = Vec::new();
        for g in &self.generators {
            match g.as_permutation() {
                Some(p) => perms.push(p),
                None => others.push(*g),
            }
        }
        (perms, others)
    }

    /// Fixture text: `"n k"`, then `k` blocks of `n` rows of `0`/`1`.
    pub fn to_fixture(&self, comment: &str) -> String {
        let mut s = String::new();
        for line in comment.lines() {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "{} {}", self.n, self.generators.len());
        for g in &self.generators {
            s.push_str(&g.to_text());
        }
        s
    }

    pub fn from_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group fixture".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [n, k] = nums[..] else {
            return Err(Error::Parse(format!("header must be \"n k\", got {header:?}")));
        };
        if n == 0 || n > GF2Matrix::MAX_DIM {
            return Err(Error::MatrixTooLarge(n));
        }
        let mut gens = Vec::with_capacity(k);
        for _ in 0..k {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse("group fixture ends early".into()))?;
                if line.len() != n || !line.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(Error::Parse(format!("bad matrix row {line:?}")));
                }
                rows.push(
                    line.bytes()
                        .enumerate()
                        .fold(0u8, |acc, (j, b)| acc | (((b - b'0') as u8) << j)),
                );
            }
            gens.push(GF2Matrix::from_row_bytes(n, &rows)?);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content {extra:?}")));
        }
        Self::from_generators(n, gens)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::FixtureMissing {
                path: path.to_path_buf(),
            },
            _ => Error::Io(e),
        })?;
        Self::from_fixture(&text).map_err(|e| Error::BadFixture {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }
}

/// A transposition and an `n`-cycle: generators of the coordinate
/// permutation group `S_n`.
pub fn permutation_generators(n: usize) -> Result<Vec<GF2Matrix>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
    Ok(vec![GF2Matrix::permutation(&swap)?, GF2Matrix::permutation(&cycle)?])
}

/// Closure of a set of permutations of `0..n` (maps `j -> p[j]`).
pub(crate) fn permutation_closure(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::from([(id.clone(), ())]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone(), ()).is_none() {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out.sort();
    out
}
