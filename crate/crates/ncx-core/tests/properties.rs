//! Randomized structural invariants, complementing the deterministic unit
//! tests and the full acceptance suite.

use proptest::prelude::*;

use ncx_core::chainmap::ChainMap;
use ncx_core::complex::mu;
use ncx_core::field::{FieldSpec, Scalar};
use ncx_core::generate::{random_chain_map, random_complex, random_matrix, rng};
use ncx_core::mor::mu_table;
use ncx_core::qis::induced_homology_map;
use ncx_core::triangles::{cosuspend, suspend};

fn field_of(use_fp: bool) -> FieldSpec {
    if use_fp {
        FieldSpec::fp(5).unwrap()
    } else {
        FieldSpec::Rationals
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Canonical scalar strings survive a render/parse round trip.
    #[test]
    fn scalar_round_trip(num in -30i64..=30, den in 1i64..=12, use_fp: bool) {
        let field = field_of(use_fp);
        let s = match field {
            FieldSpec::Rationals => FieldSpec::rat(num, den),
            FieldSpec::PrimeField { p } => Scalar::Mod(num.rem_euclid(p as i64) as u64),
        };
        prop_assert_eq!(field.parse_scalar(&field.render_scalar(&s)).unwrap(), s);
    }

    /// Rank plus kernel dimension is the number of columns.
    #[test]
    fn rank_plus_nullity_is_width(seed: u64, rows in 0usize..=5, cols in 0usize..=5, use_fp: bool) {
        let m = random_matrix(field_of(use_fp), rows, cols, &mut rng(seed));
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), cols);
    }

    /// Shifting degrees translates every homology table entry.
    #[test]
    fn degree_shift_translates_homology(seed: u64, n in 2usize..=4, t in -3i64..=3, use_fp: bool) {
        let x = random_complex(n, field_of(use_fp), -1, 1, 3, &mut rng(seed)).complex;
        let y = x.theta_shift(t);
        for i in -6..=6i64 {
            for r in 1..n {
                prop_assert_eq!(y.homology_dim(i, r), x.homology_dim(i + t, r));
            }
        }
    }

    /// Homology is additive across direct sums.
    #[test]
    fn direct_sum_adds_homology(seed: u64, n in 2usize..=4, use_fp: bool) {
        let field = field_of(use_fp);
        let mut rg = rng(seed);
        let a = random_complex(n, field, -1, 1, 2, &mut rg).complex;
        let b = random_complex(n, field, -1, 1, 2, &mut rg).complex;
        let mut expected = a.homology_table();
        for (k, v) in b.homology_table() {
            *expected.entry(k).or_insert(0) += v;
        }
        prop_assert_eq!(a.direct_sum(&b).unwrap().homology_table(), expected);
    }

    /// Suspending and cosuspending back preserves the homology table.
    #[test]
    fn suspension_round_trip_is_invisible_to_homology(seed: u64, n in 2usize..=4, use_fp: bool) {
        let x = random_complex(n, field_of(use_fp), -1, 1, 3, &mut rng(seed)).complex;
        prop_assert_eq!(cosuspend(&suspend(&x)).homology_table(), x.homology_table());
    }

    /// Every block complex realizes its closed-form homology table.
    #[test]
    fn block_homology_matches_the_closed_form(
        n in 2usize..=5, r in 1usize..=5, s in -2i64..=2, m in 1usize..=2, use_fp: bool,
    ) {
        prop_assume!(r <= n);
        let x = mu(n, field_of(use_fp), r, s, m).unwrap();
        prop_assert_eq!(x.homology_table(), mu_table(n, r, s, m));
    }

    /// Passing to homology is functorial: H(g ∘ f) = H(g) · H(f) in every
    /// degree and amplitude.
    #[test]
    fn induced_maps_compose(seed: u64, n in 2usize..=4, use_fp: bool) {
        let field = field_of(use_fp);
        let mut rg = rng(seed);
        let x = random_complex(n, field, -1, 1, 2, &mut rg).complex;
        let y = random_complex(n, field, -1, 1, 2, &mut rg).complex;
        let z = random_complex(n, field, -1, 1, 2, &mut rg).complex;
        let f = random_chain_map(&x, &y, &mut rg);
        let g = random_chain_map(&y, &z, &mut rg);
        let gf = ChainMap::compose(&g, &f).unwrap();
        for i in -4..=3i64 {
            for r in 1..n {
                let hf = induced_homology_map(&f, i, r).unwrap();
                let hg = induced_homology_map(&g, i, r).unwrap();
                let hgf = induced_homology_map(&gf, i, r).unwrap();
                prop_assert_eq!(&hgf, &hg.mul(&hf));
            }
        }
    }
}
