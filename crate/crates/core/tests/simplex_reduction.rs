mod common;

use common::*;
use latticeface_core::integrality::{generality_level, integrality_level};
use latticeface_core::polytope::DEFAULT_CELL_BUDGET as B;
use latticeface_core::reduction::{apply_affine, find_w, reduce_to_full_general};
use latticeface_core::simplex::{power_sum, svol_simplex_slices, verify_signed_identity, zero_lemma_sweep};
use latticeface_core::volume::{lattice_volume, svol};
use latticeface_core::{Polytope, Rat, Sublattice};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

/// A random integral full-dimensional simplex in fully general position.
fn general_simplex(rng: &mut rand::rngs::StdRng, d: usize) -> Points {
    loop {
        let s = random_simplex(rng, d, 3);
        if generality_level(&polytope(&s)).is_full() {
            return s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn power_sum_reflection(k in 1usize..=10, n in -500i64..=500, d in 1i64..=60) {
        let x = q(n, d);
        let sign = if k % 2 == 1 { r(1) } else { r(-1) };
        prop_assert_eq!(power_sum(k, &x), sign * power_sum(k, &(-x.clone() - r(1))));
    }

    #[test]
    fn power_sum_matches_literal_sums(k in 0u32..=6, n in 0i64..=50) {
        prop_assert_eq!(power_sum(k as usize, &r(n)), literal_power_sum(k, n));
    }

    #[test]
    fn signed_identities_hold(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = rng.gen_range(1..=3);
        let s = polytope(&general_simplex(&mut rng, d));
        let report = verify_signed_identity(&s).unwrap();
        prop_assert!(report.hypotheses_hold() && report.equal);
        for z in zero_lemma_sweep(&s, 2).unwrap() {
            prop_assert!(z.equal);
        }
        let slices = svol_simplex_slices(&s).unwrap();
        prop_assert_eq!(&slices, &lattice_volume(&s).unwrap());
        // Slicing a segment at its lattice points counts them instead.
        if d >= 2 {
            prop_assert_eq!(slices, svol(&s, 1, &Sublattice::full(d), B).unwrap());
        }
    }

    #[test]
    fn chosen_w_avoids_every_hyperplane(seed in any::<u64>(), m in 1usize..=4, count in 1usize..=5) {
        let mut rng = rng(seed);
        let vs: Vec<Vec<Rat>> = (0..count)
            .map(|_| loop {
                let v: Vec<Rat> = (0..m).map(|_| r(rng.gen_range(-3..=3))).collect();
                if v.iter().any(|x| !x.is_zero()) { break v; }
            })
            .collect();
        let w = find_w(&vs).unwrap();
        prop_assert_eq!(w[0].clone(), 1.into());
        for v in &vs {
            let dot = v.iter().zip(&w).fold(Rat::zero(), |acc, (a, b)| acc + a * Rat::from_integer(b.clone()));
            prop_assert!(!dot.is_zero());
        }
    }

    #[test]
    fn reduction_keeps_volumes(seed in any::<u64>(), extra in 0usize..=1) {
        let mut rng = rng(seed);
        let d = rng.gen_range(1..=3);
        let base = random_simplex(&mut rng, d, 3);
        let p = polytope(&embed(&mut rng, &base, extra));
        let int = integrality_level(&p).max_level;
        let gen = generality_level(&p).max_level;
        let ks: Vec<usize> = (1..=d).filter(|&k| int >= k as i64 - 1 && gen >= k as i64).collect();
        prop_assume!(!ks.is_empty());
        let k = ks[rng.gen_range(0..ks.len())];
        let red = reduce_to_full_general(&p, k).unwrap();
        prop_assert_eq!(red.q.ambient_dim(), d);
        prop_assert!(red.generality.is_full());
        prop_assert!(red.integrality.max_level >= k as i64 - 1);
        prop_assert_eq!(lattice_volume(&red.q).unwrap(), lattice_volume(&p).unwrap());
        prop_assert_eq!(
            svol(&red.q, k, &Sublattice::full(d), B).unwrap(),
            svol(&p, k, &p.lin_lattice(), B).unwrap()
        );
        // The map sends P onto Q followed by zeros.
        let image = apply_affine(&p, &red.map).unwrap();
        let truncated = Polytope::new(d, image.vertices().iter().map(|v| v[..d].to_vec()).collect()).unwrap();
        prop_assert_eq!(truncated, red.q);
    }
}
