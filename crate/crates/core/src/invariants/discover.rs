use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group::MatrixGroup;
use super::matrix::GF2Matrix;
use crate::error::{Error, Result};

/// Random elements tried per target before giving up on a seed.
pub const TRIALS_PER_SEED: usize = 2000;

pub const A7_FIXTURE: &str = "a7.txt";
pub const A6_FIXTURE: &str = "a6.txt";

/// The even coordinate permutations of `F2^4`, as two generators.
///
/// Under `GL_4(2) = A_8` the coordinate permutations form an `S_4` with
/// orbits of sizes 2 and 6 on the eight points, so the even ones fix a point
/// and sit inside a point stabilizer `A_7` (and inside an `A_6`).
pub fn even_coordinate_permutations() -> Vec<GF2Matrix> {
    vec![
        GF2Matrix::permutation(&[1, 2, 0, 3]).expect("3-cycle"),
        GF2Matrix::permutation(&[1, 0, 3, 2]).expect("double transposition"),
    ]
}

fn search(
    ambient: &MatrixGroup,
    order: u64,
    rng: &mut ChaCha8Rng,
) -> Option<MatrixGroup> {
    let base = even_coordinate_permutations();
    for _ in 0..TRIALS_PER_SEED {
        let g = ambient.random_element(rng)?;
        let mut gens = base.clone();
        gens.push(g);
        let mut h = MatrixGroup::from_generators(4, gens).ok()?;
        h.enumerate();
        if h.order() == Some(order) && h.simplicity_certificate() == Some(true) {
            return Some(h);
        }
    }
    None
}

/// Finds simple subgroups `A_7` and `A_6 < A_7` of `GL_4(2)`, each generated
/// by the even coordinate permutations plus one random element.
///
/// The search is seeded; each stage tries [`TRIALS_PER_SEED`] elements.
pub fn find_alternating_subgroups(seed: u64) -> Result<(MatrixGroup, MatrixGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gl = MatrixGroup::general_linear(4)?;
    gl.enumerate();
    let exhausted = |wanted: &str| Error::SearchExhausted {
        first: seed,
        last: seed,
        wanted: wanted.into(),
    };
    let a7 = search(&gl, 2520, &mut rng).ok_or_else(|| exhausted("A7 (order 2520)"))?;
    let a6 = search(&a7, 360, &mut rng).ok_or_else(|| exhausted("A6 (order 360)"))?;
    Ok((a7, a6))
}

/// Reads and verifies a group fixture: the closure must have `order` and
/// pass the simplicity certificate.
pub fn load_verified(path: &Path, order: u64) -> Result<MatrixGroup> {
    let mut g = MatrixGroup::load(path)?;
    if g.dim() != 4 {
        return Err(Error::BadFixture {
            path: path.to_path_buf(),
            reason: format!("dimension {} instead of 4", g.dim()),
        });
    }
    g.enumerate();
    let found = g.order().unwrap_or(0);
    if found != order {
        return Err(Error::BadFixture {
            path: path.to_path_buf(),
            reason: format!("group order {found}, expected {order}"),
        });
    }
    if g.simplicity_certificate() != Some(true) {
        return Err(Error::BadFixture {
            path: path.to_path_buf(),
            reason: "group is not simple".into(),
        });
    }
    Ok(g)
}

/// Loads the pinned `A_7` and `A_6` from `dir`.
pub fn load_alternating_subgroups(dir: &Path) -> Result<(MatrixGroup, MatrixGroup)> {
    let a7 = load_verified(&dir.join(A7_FIXTURE), 2520)?;
    let a6 = load_verified(&dir.join(A6_FIXTURE), 360)?;
    Ok((a7, a6))
}

/// Runs discovery and writes both fixtures into `dir`.
pub fn discover_and_save(dir: &Path, seed: u64) -> Result<(MatrixGroup, MatrixGroup)> {
    let (a7, a6) = find_alternating_subgroups(seed)?;
    std::fs::create_dir_all(dir)?;
    let note = |name: &str, order: u64| {
        format!("{name} inside GL(4,2), order {order}\nfound by `f2coh discover --seed {seed}`")
    };
    std::fs::write(dir.join(A7_FIXTURE), a7.to_fixture(&note("A7", 2520)))?;
    std::fs::write(dir.join(A6_FIXTURE), a6.to_fixture(&note("A6", 360)))?;
    Ok((a7, a6))
}
