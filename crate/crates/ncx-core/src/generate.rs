//! Seeded random inputs for tests and the self-test suite: complexes with a
//! known block decomposition, chain maps sampled from the full solution
//! space of the commutation constraints, twisted short exact sequences, and
//! pullback data.
//!
//! Everything is driven by a caller-supplied ChaCha generator so runs are
//! reproducible from a single seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chainmap::ChainMap;
use crate::complex::{mu, NComplex};
use crate::field::{FieldSpec, Scalar};
use crate::homotopy::FamilyLayout;
use crate::matrix::Matrix;
use crate::qis::ShortExactSeq;

/// The deterministic generator used throughout; one seed pins a whole run.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform scalar from a small pool: integers in [-3, 3] over Q, the full
/// field over F_p.
pub fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => FieldSpec::rat(rng.gen_range(-3..=3), 1),
        FieldSpec::PrimeField { p } => Scalar::Mod(rng.gen_range(0..p)),
    }
}

pub fn random_matrix(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    rng: &mut ChaCha8Rng,
) -> Matrix {
    let mut m = Matrix::zero(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(field, rng));
        }
    }
    m
}

/// Rejection-sampled invertible matrix; dimensions here are tiny, so the
/// retry loop terminates almost immediately.
pub fn random_invertible(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    if dim == 0 {
        return Matrix::identity(field, 0);
    }
    loop {
        let m = random_matrix(field, dim, dim, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Change basis independently in every degree; the result is isomorphic to
/// the input but no longer visibly a block sum.
pub fn conjugate(x: &NComplex, rng: &mut ChaCha8Rng) -> NComplex {
    if x.is_zero() {
        return x.clone();
    }
    let gs: BTreeMap<i64, Matrix> = x
        .support()
        .map(|i| (i, random_invertible(x.field, x.dim(i), rng)))
        .collect();
    let diffs: Vec<Matrix> = (x.min_degree..x.max_degree())
        .map(|i| gs[&(i + 1)].mul(&x.diff(i)).mul(&gs[&i].inverse()))
        .collect();
    let y = NComplex::new(x.n, x.field, x.min_degree, x.dims.clone(), diffs)
        .expect("conjugation preserves d^N = 0");
    debug_assert!(y.validate().is_ok());
    y
}

/// A random complex together with the block decomposition it was built from.
#[derive(Clone, Debug)]
pub struct GeneratedComplex {
    pub complex: NComplex,
    /// `(amplitude, top degree, multiplicity)`, sorted; includes the
    /// contractible length-N blocks.
    pub blocks: Vec<(usize, i64, usize)>,
}

/// Direct sum of up to `max_blocks` random blocks with top degrees in
/// `[lo, hi]`, conjugated by random degreewise isomorphisms.
pub fn random_complex(
    n: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_blocks: usize,
    rng: &mut ChaCha8Rng,
) -> GeneratedComplex {
    let count = rng.gen_range(0..=max_blocks);
    let mut tally: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut acc = NComplex::zero(n, field);
    for _ in 0..count {
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(lo..=hi);
        acc = acc.direct_sum(&mu(n, field, r, s, 1).unwrap()).unwrap();
        *tally.entry((r, s)).or_insert(0) += 1;
    }
    let blocks = tally.into_iter().map(|((r, s), m)| (r, s, m)).collect();
    GeneratedComplex {
        complex: conjugate(&acc, rng),
        blocks,
    }
}

/// The homology table a block multiset must produce — the ground truth that
/// generated complexes are checked against.
pub fn implied_table(
    n: usize,
    blocks: &[(usize, i64, usize)],
) -> BTreeMap<(i64, usize), usize> {
    let mut t = BTreeMap::new();
    for &(r, s, mult) in blocks {
        for (key, m) in crate::mor::mu_table(n, r, s, mult) {
            *t.entry(key).or_insert(0) += m;
        }
    }
    t
}

/// A uniform element of the space of chain maps `X -> Y` (coefficients from
/// the scalar pool on a solution-space basis).
pub fn random_chain_map(x: &NComplex, y: &NComplex, rng: &mut ChaCha8Rng) -> ChainMap {
    let mut f = ChainMap::zero_map(x, y);
    for b in crate::homotopy::chainmap_space_basis(x, y) {
        f = f.add(&b.scale(&random_scalar(x.field, rng)));
    }
    f
}

/// The d^N-obstruction of an upper-triangular twist: for a degree-raising
/// family `h^i : Z^i -> X^{i+1}`, the `(X, Z)` block of the N-th power of
/// `[[d_X, h], [0, d_Z]]`.
fn twist_defect(
    x: &NComplex,
    z: &NComplex,
    h: &BTreeMap<i64, Matrix>,
) -> BTreeMap<i64, Matrix> {
    let n = x.n as i64;
    let mut out = BTreeMap::new();
    for i in z.support() {
        if z.dim(i) == 0 || x.dim(i + n) == 0 {
            continue;
        }
        let mut acc = Matrix::zero(x.field, x.dim(i + n), z.dim(i));
        for b in 0..n {
            let h_m = h.get(&(i + b)).cloned().unwrap_or_else(|| {
                Matrix::zero(x.field, x.dim(i + b + 1), z.dim(i + b))
            });
            let left = x.power(i + b + 1, (n - 1 - b) as usize);
            let right = z.power(i, b as usize);
            acc = acc.add(&left.mul(&h_m).mul(&right));
        }
        out.insert(i, acc);
    }
    out
}

/// A short exact sequence with random ends and a random extension class:
/// the middle is `X ⊕ Z` with differential `[[d_X, h], [0, d_Z]]` for `h`
/// drawn from the kernel of the d^N-obstruction, then conjugated.
pub fn random_ses(
    n: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_blocks: usize,
    rng: &mut ChaCha8Rng,
) -> ShortExactSeq {
    let x = random_complex(n, field, lo, hi, max_blocks, rng).complex;
    let z = random_complex(n, field, lo, hi, max_blocks, rng).complex;
    let h = if x.is_zero() || z.is_zero() {
        BTreeMap::new()
    } else {
        let hl = FamilyLayout::new(&z, &x, 1);
        let dl = FamilyLayout::new(&z, &x, n as i64);
        let t = hl.operator_to(&dl, &z, |fam| twist_defect(&x, &z, fam));
        let kernel = t.kernel_basis();
        let coeffs: Vec<Scalar> = (0..kernel.dim())
            .map(|_| random_scalar(field, rng))
            .collect();
        hl.from_vec(&z, &kernel.basis.mul_vec(&coeffs))
    };
    let (wlo, whi) = match (x.is_zero(), z.is_zero()) {
        (true, true) => (0, -1), // empty window: the zero sequence
        (false, true) => (x.min_degree, x.max_degree()),
        (true, false) => (z.min_degree, z.max_degree()),
        (false, false) => (
            x.min_degree.min(z.min_degree),
            x.max_degree().max(z.max_degree()),
        ),
    };
    let dims: Vec<usize> = (wlo..=whi).map(|i| x.dim(i) + z.dim(i)).collect();
    let diffs: Vec<Matrix> = (wlo..whi)
        .map(|i| {
            let mut blocks = vec![(0, 0, x.diff(i)), (1, 1, z.diff(i))];
            if let Some(hm) = h.get(&i) {
                blocks.push((0, 1, hm.clone()));
            }
            Matrix::from_blocks(
                field,
                &[x.dim(i + 1), z.dim(i + 1)],
                &[x.dim(i), z.dim(i)],
                &blocks,
            )
        })
        .collect();
    let y = NComplex::new(n, field, wlo, dims, diffs)
        .expect("component shapes agree on the shared window");
    debug_assert!(y.validate().is_ok(), "twist escaped the d^N kernel");
    // Hide the block structure of the middle without disturbing exactness.
    let gs: BTreeMap<i64, Matrix> = (wlo..=whi)
        .map(|i| (i, random_invertible(field, y.dim(i), rng)))
        .collect();
    let y = {
        let diffs: Vec<Matrix> = (wlo..whi)
            .map(|i| gs[&(i + 1)].mul(&y.diff(i)).mul(&gs[&i].inverse()))
            .collect();
        NComplex::new(n, field, wlo, y.dims.clone(), diffs).unwrap()
    };
    let alpha = ChainMap::from_fn(x.clone(), y.clone(), |i| {
        let incl = Matrix::from_blocks(
            field,
            &[x.dim(i), z.dim(i)],
            &[x.dim(i)],
            &[(0, 0, Matrix::identity(field, x.dim(i)))],
        );
        gs[&i].mul(&incl)
    });
    let beta = ChainMap::from_fn(y.clone(), z.clone(), |i| {
        let proj = Matrix::from_blocks(
            field,
            &[z.dim(i)],
            &[x.dim(i), z.dim(i)],
            &[(0, 1, Matrix::identity(field, z.dim(i)))],
        );
        proj.mul(&gs[&i].inverse())
    });
    ShortExactSeq::new(alpha, beta).expect("twisted sum is degreewise exact")
}

/// Random pullback data `(X, u, i)`: a complex, a map `u : k^m -> X^i`, and
/// the degree it lands in (drawn from a window slightly wider than the
/// support, so trivial zones also occur).
pub fn random_elementary(
    n: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_blocks: usize,
    rng: &mut ChaCha8Rng,
) -> (NComplex, Matrix, i64) {
    let x = random_complex(n, field, lo, hi, max_blocks, rng).complex;
    let i = rng.gen_range(lo - 1..=hi + 1);
    let m = rng.gen_range(0..=2);
    let u = random_matrix(field, x.dim(i), m, rng);
    (x, u, i)
}
