use fhaim_core::aim::eigenfunction_via_alpha;
use fhaim_core::exactalg::{int, rat, to_f64};
use fhaim_core::oracle::{discretize, eigen_count_below, lowest_eigenvalues, Grid};
use fhaim_core::oscillator::{
    bound_state_info, eigen_polynomial, oscillator_seed, residual_check, spectrum_closed_dimensionless,
    spectrum_closed_physical, ModelParams, SignConvention,
};
use fhaim_core::Error;

#[test]
fn closed_form_physical_matches_dimensionless() {
    for (w, l) in [(10, 1), (1, 0), (3, 2)] {
        let (omega, lambda) = (int(w), int(l));
        for n in 0..6 {
            let phys = spectrum_closed_physical(n, &omega, &lambda).unwrap();
            let dim = spectrum_closed_dimensionless(n, &(&lambda / &omega));
            assert_eq!(phys, &omega * dim / int(2));
        }
    }
    let e: Vec<_> = (0..4).map(|n| spectrum_closed_physical(n, &int(10), &int(1)).unwrap()).collect();
    assert_eq!(e, vec![int(5), int(14), int(22), int(29)]);
}

#[test]
fn series_solutions_are_exact_and_match_alpha_reconstruction() {
    let lt = rat(1, 10);
    let state = oscillator_seed(&lt, SignConvention::Corrected).unwrap().iterates(6).pop().unwrap();
    let grid: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
    for n in 0..4 {
        let ef = eigen_polynomial(n, &lt).unwrap();
        assert!(residual_check(&ef).is_zero());
        let en = spectrum_closed_dimensionless(n, &lt);
        let via = eigenfunction_via_alpha(&state, &en, &grid).unwrap();
        let mut scale = None;
        for (tau, v) in grid.iter().zip(&via) {
            let f = ef.poly_f64(*tau);
            if f.abs() < 1e-3 {
                continue;
            }
            let s = *scale.get_or_insert(v / f);
            assert!((v / f - s).abs() <= 1e-8 * s.abs(), "n = {n}, τ = {tau}");
        }
    }
}

#[test]
fn census_agrees_with_oracle_quarter() {
    let p = ModelParams::from_lambda_tilde(rat(1, 4)).unwrap();
    let info = bound_state_info(&p.lambda_tilde()).unwrap();
    assert_eq!(info.max_normalizable_n, Some(3));
    let op = discretize(&p, Grid::new(60.0, 24_000).unwrap());
    assert_eq!(eigen_count_below(&op, to_f64(&info.continuum_edge) / 2.0), 4);
    assert!(matches!(
        eigen_polynomial(4, &rat(1, 4)).unwrap().normalized(1e-10),
        Err(Error::NotNormalizable { n: 4, .. })
    ));
}

#[test]
fn harmonic_oracle_control() {
    let p = ModelParams::new(int(1), int(0)).unwrap();
    let r = lowest_eigenvalues(&discretize(&p, Grid::new(10.0, 8000).unwrap()), 3, 1e-10).unwrap();
    for (n, e) in r.eigenvalues.iter().enumerate() {
        assert!((e - (n as f64 + 0.5)).abs() < 1e-4);
    }
}
