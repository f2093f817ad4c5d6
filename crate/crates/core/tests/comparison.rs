use colorhom::enveloping::{
    check_confluence, check_hopf_axioms, check_psi, Enveloping, PSI_SAMPLES,
};
use colorhom::fixtures;
use colorhom::gmodules::GradedBimodule;
use colorhom::grading::DegreeWindow;
use colorhom::hochschild::{
    centralizer_dim, check_bar_squared, compare_theorem5, hochschild_dims, truncate_enveloping,
    AlgebraBimodule, BarComplex,
};

#[test]
fn theorem5_on_finite_enveloping_algebras() {
    for k in [1, 2] {
        let u = Enveloping::new(fixtures::abelian_odd(k));
        for m in [
            GradedBimodule::regular(&u, 64).unwrap(),
            GradedBimodule::trivial(u.lie()),
        ] {
            let r = compare_theorem5(&u, &m, 3, &DegreeWindow::All).unwrap();
            assert!(r.all_equal, "abelian_odd_{k}\n{r}");
        }
    }
}

#[test]
fn comparison_rejects_infinite_enveloping_algebra() {
    let u = Enveloping::new(fixtures::heis3());
    let err =
        compare_theorem5(&u, &GradedBimodule::trivial(u.lie()), 1, &DegreeWindow::All).unwrap_err();
    assert!(err.to_string().contains("even generator z"), "{err}");
}

#[test]
fn hh0_matches_centralizer_on_abelian_odd_2() {
    let u = Enveloping::new(fixtures::abelian_odd(2));
    let a = truncate_enveloping(&u, 64).unwrap();
    let m = AlgebraBimodule::regular(&a);
    let t = hochschild_dims(&a, &m, 0, &DegreeWindow::All).unwrap();
    for h in a.group().elements().unwrap() {
        assert_eq!(t.get(0, &h), Some(centralizer_dim(&a, &m, &h)));
    }
    let c = check_bar_squared(&a, &m, 2, &DegreeWindow::All, BarComplex::Normalized).unwrap();
    assert!(c.passed());
}

#[test]
fn rewriting_and_hopf_structure() {
    for name in ["heis3", "glcolor"] {
        let u = Enveloping::new(fixtures::lie_by_name(name).unwrap());
        let r = check_confluence(&u, 4);
        assert!(r.passed(), "{r}");
    }
    let r = check_hopf_axioms(&Enveloping::new(fixtures::heis3()), 3);
    assert!(r.passed(), "{r}");
    let r = check_hopf_axioms(&Enveloping::new(fixtures::abelian_odd(2)), 4);
    assert!(r.passed(), "{r}");
    let r = check_psi(&Enveloping::new(fixtures::heis3()), 3, PSI_SAMPLES, 7);
    assert!(r.passed(), "{r}");
}
