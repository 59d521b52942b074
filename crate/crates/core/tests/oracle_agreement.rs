use ptchain::analysis::ipr_report;
use ptchain::oracles::*;
use ptchain::{solve_power_law, Mode};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn uniform_chain_matches_dispersion() {
    for n in [2, 3, 10, 101, 500, 1200] {
        for t0 in [0.5, 1.0, 2.5] {
            let sol = solve_power_law(t0, 0.0, n, Mode::ValuesOnly).unwrap();
            assert!(max_diff(&sol.spectrum.values, &uniform_spectrum(n, t0)) <= 1e-10 * 2.0 * t0, "N {n}");
        }
    }
}

#[test]
fn linear_chain_matches_equal_spacing() {
    for n in [2, 5, 64, 500, 1500] {
        let sol = solve_power_law(1.0, 1.0, n, Mode::ValuesOnly).unwrap();
        let norm = sol.reduced.matrix.norm_inf();
        assert!(max_diff(&sol.spectrum.values, &linear_spectrum(n, 1.0)) <= 1e-8 * norm, "N {n}");
    }
}

#[test]
fn linear_chain_ground_state_matches_binomial() {
    for n in [2, 7, 100, 500, 1000] {
        let sol = solve_power_law(1.0, 1.0, n, Mode::Full).unwrap();
        let overlap: f64 = hermitian_ground_state_alpha1::<f64>(n)
            .iter()
            .zip(sol.spectrum.vector(0).unwrap())
            .map(|(a, b)| a * b)
            .sum();
        assert!(overlap.abs() >= 1.0 - 1e-10, "N {n}: {overlap}");
    }
}

#[test]
fn uniform_chain_iprs() {
    for n in [10, 11, 100, 333, 500] {
        let sol = solve_power_law(1.0, 0.0, n, Mode::Full).unwrap();
        let report = ipr_report(&sol.spectrum).unwrap();
        for (i, x) in report.per_state.iter().enumerate() {
            let expected = if n % 2 == 1 && i == n / 2 { 2.0 } else { 1.5 } / (n as f64 + 1.0);
            assert!((x - expected).abs() <= 1e-10, "N {n}, state {i}: {x}");
        }
    }
}

#[test]
fn gaussian_profile_of_the_ground_state() {
    for n in [200, 500, 1000] {
        assert!(ground_state_gaussian_deviation(n) <= 0.02, "N {n}");
    }
}

#[test]
fn verification_suite_passes() {
    let results = run_suite(Suite::All, 20231).unwrap();
    let failed: Vec<_> = results.iter().filter(|r| r.status == CaseStatus::Fail).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(results.iter().any(|r| r.status == CaseStatus::Info));
}
