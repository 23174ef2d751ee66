use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qinv_core::gate_invariants::{from_bell, m_matrix};
use qinv_core::linalg::{c64, max_abs4, unitarity_defect};
use qinv_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn invariants_ignore_local_gates_and_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let m = sample::random_unitary4(&mut rng);
        let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let l = sample::random_local(&mut rng) * m * sample::random_local(&mut rng) * phase;
        let (a, b) = (makhlin_invariants(&m).unwrap(), makhlin_invariants(&l).unwrap());
        assert!((a.g1 - b.g1).norm() < 1e-10);
        assert!((a.g2 - b.g2).abs() < 1e-10);
    }
}

#[test]
fn m_matrix_is_symmetric_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let m = m_matrix(&sample::random_unitary4(&mut rng));
        assert!(max_abs4(&(m - m.transpose())) < 1e-12);
        assert!(unitarity_defect(&m) < 1e-12);
    }
}

#[test]
fn named_gates_classify() {
    let names = ["identity", "cnot", "swap", "sqrt-swap"];
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            let same = gates_equivalent(&gates::named(a).unwrap(), &gates::named(b).unwrap(), 1e-9).unwrap();
            assert_eq!(same, i == j, "{a} vs {b}");
        }
    }
    assert!(is_local_gate(&gates::identity()).unwrap());
    assert!(!is_local_gate(&gates::swap()).unwrap());
    assert!(!is_local_gate(&gates::cnot()).unwrap());
}

#[test]
fn sqrt_swap_adjoint_has_conjugate_g1() {
    // The adjoint of √SWAP lies in a different class, with conjugate G1.
    let s = gates::sqrt_swap();
    let (a, b) = (makhlin_invariants(&s).unwrap(), makhlin_invariants(&s.adjoint()).unwrap());
    assert!((a.g1 - b.g1.conj()).norm() < 1e-12);
    assert!(!gates_equivalent(&s, &s.adjoint(), 1e-6).unwrap());
    assert!(is_perfect_entangler(&s.adjoint()).unwrap());
}

#[test]
fn witnesses_for_structured_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let families = [HamiltonianFamily::heisenberg(), HamiltonianFamily::xy(), HamiltonianFamily::yy()];
    for h in &families {
        for k in 0..16 {
            let m = evolve(h, k as f64 * PI / 8.0);
            let l = sample::random_local(&mut rng) * m * sample::random_local(&mut rng) * c64(0.0, 1.0);
            let w = synthesize_witness(&m, &l).unwrap();
            assert!(w.residual(&m, &l) < 1e-7, "{:?} k={k}", h.kind);
        }
    }
}

#[test]
fn bell_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let u = sample::random_unitary4(&mut rng);
    assert!(max_abs4(&(from_bell(&to_bell(&u)) - u)) < 1e-14);
}

#[test]
fn perfect_entanglers_reach_a_maximally_entangled_state() {
    // Brute-force oracle: max |Ent| over product inputs reaches 1/2 exactly for perfect entanglers.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let u = sample::random_unitary4(&mut rng);
        let perfect = is_perfect_entangler(&u).unwrap();
        let mut best = 0.0f64;
        for _ in 0..4000 {
            let p = linalg::kron(&sample::random_su2(&mut rng), &sample::random_su2(&mut rng));
            let psi: [Complex64; 4] = std::array::from_fn(|i| (0..4).map(|j| u[(i, j)] * p[(j, 0)]).sum());
            best = best.max(ent_form(&psi).unwrap().norm());
        }
        if perfect {
            assert!(best > 0.45, "perfect entangler only reached {best}");
        } else {
            assert!(best < 0.5 - 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sample::random_unitary4(&mut rng);
        let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let l = sample::random_local(&mut rng) * m * sample::random_local(&mut rng) * phase;
        let w = synthesize_witness(&m, &l).unwrap();
        prop_assert!(w.residual(&m, &l) < 1e-7);
        prop_assert!((0.0..2.0 * PI).contains(&w.phase));
    }

    #[test]
    fn kron_factor_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample::random_local(&mut rng) * Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let pair = kron_factor(&u).unwrap();
        prop_assert!(max_abs4(&(pair.to_matrix() - u)) < 1e-8);
        prop_assert!((0.0..PI).contains(&pair.phase));
    }
}
