use std::f64::consts::PI;

use qinv_core::*;

fn check_windows_against_fine_grid(h: &HamiltonianFamily, t_max: f64) {
    let windows = entangler_windows(h, t_max);
    let n = 100_000;
    for k in 0..=n {
        let t = t_max * k as f64 / n as f64;
        // Skip points within the edge resolution of a reported boundary.
        if windows.iter().any(|&(lo, hi)| (t - lo).abs() < 1e-6 || (t - hi).abs() < 1e-6) {
            continue;
        }
        let inside = windows.iter().any(|&(lo, hi)| lo <= t && t <= hi);
        let pointwise = is_perfect_entangler(&evolve(h, t)).unwrap();
        assert_eq!(inside, pointwise, "{:?} at t = {t}", h.kind);
    }
}

#[test]
fn windows_agree_with_pointwise_predicate() {
    check_windows_against_fine_grid(&HamiltonianFamily::xy(), 4.0 * PI);
    check_windows_against_fine_grid(&HamiltonianFamily::yy(), 4.0 * PI);
    check_windows_against_fine_grid(&HamiltonianFamily::heisenberg(), 4.0 * PI);
    check_windows_against_fine_grid(&HamiltonianFamily::josephson(1.2), 10.0);
}

#[test]
fn xy_windows_repeat() {
    let w = entangler_windows(&HamiltonianFamily::xy(), 4.0 * PI);
    let expected = [(0.5 * PI, 1.5 * PI), (2.5 * PI, 3.5 * PI)];
    assert_eq!(w.len(), 2);
    for (got, want) in w.iter().zip(expected) {
        assert!((got.0 - want.0).abs() < 1e-6 && (got.1 - want.1).abs() < 1e-6);
    }
}

#[test]
fn every_root_reproduces_the_target() {
    let targets = [gates::cnot(), gates::swap(), gates::sqrt_swap(), gates::sqrt_swap().adjoint()];
    let families = [
        HamiltonianFamily::heisenberg(),
        HamiltonianFamily::xy(),
        HamiltonianFamily::yy(),
        HamiltonianFamily::josephson(1.1991512512843723),
    ];
    for h in &families {
        for target in &targets {
            let r = solve_time(h, target, 4.0 * PI).unwrap();
            assert_eq!(r.verdict == Verdict::OneStep, !r.times.is_empty());
            for &(t, _) in &r.times {
                assert!(gates_equivalent(&evolve(h, t), target, 1e-6).unwrap(), "{:?} t = {t}", h.kind);
            }
        }
    }
}

#[test]
fn xy_reaches_neither_cnot_nor_swap() {
    let h = HamiltonianFamily::xy();
    assert_eq!(solve_time(&h, &gates::cnot(), 4.0 * PI).unwrap().verdict, Verdict::AtLeastTwo);
    assert_eq!(solve_time(&h, &gates::swap(), 4.0 * PI).unwrap().verdict, Verdict::AtLeastTwo);
}

#[test]
fn heisenberg_swap_roots_are_periodic() {
    let r = solve_time(&HamiltonianFamily::heisenberg(), &gates::swap(), 4.0 * PI).unwrap();
    let times: Vec<f64> = r.times.iter().map(|&(t, _)| t).collect();
    assert_eq!(times.len(), 2, "{times:?}");
    assert!((times[0] - PI).abs() < 1e-9 && (times[1] - 3.0 * PI).abs() < 1e-9);
}

#[test]
fn josephson_time_yields_cnot_class() {
    for s in josephson_alpha(5, 50.0) {
        let inv = makhlin_invariants(&evolve(&HamiltonianFamily::josephson(s.alpha), s.t)).unwrap();
        assert!(inv.g1.norm() < 1e-6 && (inv.g2 - 1.0).abs() < 1e-6);
        assert!((s.t - josephson_time(s.n, s.alpha)).abs() < 1e-15);
    }
}
