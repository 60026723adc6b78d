use optical_bloch::sweep::{
    detect_revivals, detect_revivals_analytic, figure_preset, sweep_omega_time, with_workers, GridAxis, Observable,
    DEFAULT_REVIVAL_THRESHOLD,
};
use optical_bloch::{equilibrium_state, interference, optimal_rabi, purity, BlochVector, Solution, SystemParams};

fn fig1(omega: f64) -> SystemParams {
    SystemParams::on_resonance(1.5, 0.5, omega, 0.0).unwrap()
}

fn fig5(omega: f64) -> SystemParams {
    SystemParams::on_resonance(1.5, 0.5, omega, 1.0).unwrap()
}

/// First time χ drops to `level`, by a fine scan plus bisection.
fn first_purity_crossing(p: &SystemParams, level: f64) -> f64 {
    let s = Solution::new(p, &BlochVector::GROUND).unwrap();
    let chi = |t: f64| purity(&s.at(t).unwrap());
    let dt = 1e-3;
    let mut t = 0.0;
    while chi(t + dt) > level {
        t += dt;
        assert!(t < 100.0, "never reaches {level}");
    }
    let (mut a, mut b) = (t, t + dt);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if chi(m) > level {
            a = m;
        } else {
            b = m;
        }
    }
    b
}

fn crossing_times(omegas: impl Iterator<Item = f64>) -> Vec<f64> {
    omegas.map(|w| first_purity_crossing(&fig1(w), 0.6)).collect()
}

#[test]
fn purity_decay_speeds_up_with_drive() {
    let times = crossing_times((0..=84).map(|i| 0.1 + 0.05 * i as f64));
    assert!(times.windows(2).all(|w| w[1] <= w[0]), "{times:?}");
    let sparse = crossing_times([0.2, 2.0 / 3.0, 1.0, 2.0, 5.0].into_iter());
    assert!(sparse.windows(2).all(|w| w[1] <= w[0]), "{sparse:?}");
}

#[test]
fn purity_crossing_turns_around_at_strong_drive() {
    // past Ω ≈ 4.35 the first crossing moves later again
    let times = crossing_times((0..=13).map(|i| 4.35 + 0.05 * i as f64));
    assert!(times.windows(2).all(|w| w[1] >= w[0]), "{times:?}");
    assert!(times[13] - times[0] > 0.02);
}

#[test]
fn asymptotic_coherence_is_unimodal_in_drive() {
    let omega_r = optimal_rabi(&fig5(0.0).relaxation, 1.0).omega_r;
    let step = 0.01;
    let z: Vec<f64> = (0..=600)
        .map(|i| interference(&equilibrium_state(&fig5(i as f64 * step)).unwrap().0))
        .collect();
    let peak = z.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!((peak as f64 * step - omega_r).abs() <= step);
    assert!(z[..=peak].windows(2).all(|w| w[1] >= w[0]));
    assert!(z[peak..].windows(2).all(|w| w[1] <= w[0]));
}

/// Upward and downward threshold crossings from a plain sign-change scan.
fn sign_changes(p: &SystemParams, threshold: f64, t_max: f64, n: usize) -> Vec<(f64, bool)> {
    let s = Solution::new(p, &BlochVector::GROUND).unwrap();
    let f = |t: f64| interference(&s.at(t).unwrap()) - threshold;
    let dt = t_max / (n - 1) as f64;
    let mut out = Vec::new();
    let mut prev = f(0.0) >= 0.0;
    for i in 1..n {
        let now = f(i as f64 * dt) >= 0.0;
        if now != prev {
            out.push((i as f64 * dt, now));
        }
        prev = now;
    }
    out
}

#[test]
fn revival_detection_matches_fine_sign_change_scan() {
    let t_max = 20.0;
    let n = 2001;
    let axis = GridAxis::linear(0.0, t_max, n).unwrap();
    let fine_dt = t_max / (10 * (n - 1)) as f64;
    for omega in [0.5, 1.0, 1.15, 2.3, 3.0, 4.0, 6.0] {
        for threshold in [DEFAULT_REVIVAL_THRESHOLD, 1e-2] {
            let p = fig5(omega);
            let report = detect_revivals_analytic(
                &Solution::new(&p, &BlochVector::GROUND).unwrap(),
                Observable::Zeta,
                &axis,
                threshold,
            )
            .unwrap();
            let crossings = sign_changes(&p, threshold, t_max, 10 * (n - 1) + 1);
            // a revival opens at each upward crossing after the first downward one
            let first_drop = crossings.iter().position(|c| !c.1);
            let ups: Vec<f64> = match first_drop {
                Some(i) => crossings[i..].iter().filter(|c| c.1).map(|c| c.0).collect(),
                None => vec![],
            };
            assert_eq!(report.intervals.len(), ups.len(), "omega {omega} threshold {threshold}");
            for (iv, up) in report.intervals.iter().zip(&ups) {
                assert!((iv.start - up).abs() <= fine_dt, "omega {omega}: {} vs {up}", iv.start);
            }
        }
    }
}

#[test]
fn sampled_and_analytic_revival_detection_agree() {
    let p = fig5(4.0);
    let s = Solution::new(&p, &BlochVector::GROUND).unwrap();
    let axis = GridAxis::linear(0.0, 20.0, 20001).unwrap();
    let series: Vec<(f64, f64)> = axis
        .values()
        .iter()
        .map(|&t| (t, interference(&s.at(t).unwrap())))
        .collect();
    let a = detect_revivals(&series, 1e-2).unwrap();
    let b = detect_revivals_analytic(&s, Observable::Zeta, &axis, 1e-2).unwrap();
    assert_eq!(a.intervals.len(), b.intervals.len());
    for (x, y) in a.intervals.iter().zip(&b.intervals) {
        assert!((x.start - y.start).abs() < 1e-6 && (x.end - y.end).abs() < 1e-6);
    }
}

/// At the first gray-level boundary ζ = 0.01 the Fig. 5 phenomenology shows
/// up as described: a short transient revival at strong drive and a
/// permanent one near the optimal drive.
#[test]
fn revivals_at_first_gray_boundary() {
    let axis = GridAxis::linear(0.0, 20.0, 4001).unwrap();
    let report = |omega: f64| {
        detect_revivals_analytic(
            &Solution::new(&fig5(omega), &BlochVector::GROUND).unwrap(),
            Observable::Zeta,
            &axis,
            1e-2,
        )
        .unwrap()
    };
    let strong = report(4.0);
    let transient: Vec<_> = strong.transient().collect();
    assert_eq!(transient.len(), 1);
    assert!((transient[0].duration() - 0.4).abs() <= 0.2, "{:?}", transient[0]);

    let mid = report(2.3);
    let persistent = mid.persistent().expect("persistent revival");
    assert!((persistent.start - 2.5).abs() <= 1.0);
    assert_eq!(mid.transient().count(), 0);
}

#[test]
fn maps_are_worker_count_independent() {
    let preset = figure_preset("fig5a").unwrap();
    let one = with_workers(1, || preset.render_map(64, 48, None, None).unwrap());
    let many = with_workers(7, || preset.render_map(64, 48, None, None).unwrap());
    assert_eq!(one.values.len(), many.values.len());
    assert!(one
        .values
        .iter()
        .zip(&many.values)
        .all(|(a, b)| a.to_bits() == b.to_bits()));
}

#[test]
fn map_cells_equal_direct_evaluation() {
    let base = fig5(0.0);
    let omegas = GridAxis::linear(0.0, 6.0, 13).unwrap();
    let times = GridAxis::linear(0.0, 4.0, 9).unwrap();
    let map = sweep_omega_time(&base, &omegas, &times, Observable::Chi, &BlochVector::GROUND).unwrap();
    for iy in 0..omegas.n {
        let s = Solution::new(&base.with_omega(omegas.value(iy)).unwrap(), &BlochVector::GROUND).unwrap();
        for ix in 0..times.n {
            assert_eq!(
                map.get(iy, ix).to_bits(),
                purity(&s.at(times.value(ix)).unwrap()).to_bits()
            );
        }
    }
}
