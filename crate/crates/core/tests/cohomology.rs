use std::collections::BTreeMap;

use colorhom::ce_cohomology::{
    ce_block, chain_element, check_delta_squared, check_koszul_identities,
    check_koszul_identities_with, homotopy_check, koszul_d, lie_cohomology_dims,
    lie_cohomology_total, WedgeMonomial,
};
use colorhom::enveloping::{Enveloping, PbwMonomial};
use colorhom::fixtures;
use colorhom::gmodules::{adjoint_module, shift, GradedBimodule, GradedModule};
use colorhom::grading::DegreeWindow;
use colorhom::{ColorLieAlgebra, ExactMatrix, GroupElement};

fn g(e: &[i64]) -> GroupElement {
    GroupElement {
        exponents: e.to_vec(),
    }
}

/// δ^n rebuilt from the Koszul differential: (δf)(w) = f(d_{n+1}(1 ⊗ w)), with f
/// extended U-linearly, f(u ⊗ w') = u.f(w').
fn delta_via_koszul(u: &Enveloping, m: &GradedModule, n: usize, h: &GroupElement) -> ExactMatrix {
    let lie = u.lie();
    let block = ce_block(lie, m, n, h);
    let mh = shift(lie, m, h);
    let mut mat = ExactMatrix::zeros(lie.field(), block.codomain.len(), block.domain.len());
    let rows: BTreeMap<(&WedgeMonomial, usize), usize> = block
        .codomain
        .iter()
        .enumerate()
        .map(|(r, (w, j))| ((w, *j), r))
        .collect();
    let mut seen = Vec::new();
    for (w, _) in &block.codomain {
        if seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let chain = koszul_d(u, n + 1, &chain_element(u, PbwMonomial::unit(), w.clone())).unwrap();
        for ((mono, w1), c) in &chain {
            let act = mh.act_monomial(mono);
            for (col, (wd, j)) in block.domain.iter().enumerate() {
                if wd != w1 {
                    continue;
                }
                for r_m in 0..mh.dim() {
                    let v = act.get(r_m, *j);
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(&r) = rows.get(&(w, r_m)) {
                        mat.add_at(r, col, &(c * v));
                    }
                }
            }
        }
    }
    mat
}

fn oracle_dims(u: &Enveloping, m: &GradedModule, n_max: usize, h: &GroupElement) -> Vec<usize> {
    let rk: Vec<(usize, usize)> = (0..=n_max)
        .map(|n| delta_via_koszul(u, m, n, h).rank_kernel())
        .collect();
    (0..=n_max)
        .map(|n| rk[n].1 - if n == 0 { 0 } else { rk[n - 1].0 })
        .collect()
}

fn table_row(t: &colorhom::report::DimTable, n_max: usize, h: &GroupElement) -> Vec<usize> {
    (0..=n_max).map(|n| t.get(n, h).unwrap()).collect()
}

#[test]
fn abelian_odd_1_trivial_counting() {
    // zero differential: H^n_h = 1 exactly when x^{∧n} has the degree of the shift
    let l = fixtures::abelian_odd(1);
    let k = GradedModule::trivial(&l);
    let t = lie_cohomology_dims(&l, &k, 5, &DegreeWindow::All).unwrap();
    for n in 0..=5 {
        for h in [0i64, 1] {
            let expected = usize::from(n as i64 % 2 == h);
            assert_eq!(t.get(n, &g(&[h])), Some(expected), "n={n} h={h}");
        }
    }
}

#[test]
fn heis3_matches_koszul_oracle() {
    let u = Enveloping::new(fixtures::heis3());
    let lie = u.lie();
    for m in [
        GradedModule::trivial(lie),
        fixtures::heis3_step2(),
        GradedModule::lie_adjoint(lie),
    ] {
        let t = lie_cohomology_dims(lie, &m, 2, &DegreeWindow::All).unwrap();
        for h in [g(&[0]), g(&[1])] {
            assert_eq!(table_row(&t, 2, &h), oracle_dims(&u, &m, 2, &h), "h={h}");
        }
    }
}

#[test]
fn glcolor_matches_koszul_oracle() {
    let u = Enveloping::new(fixtures::glcolor());
    let lie = u.lie();
    for m in [GradedModule::trivial(lie), GradedModule::lie_adjoint(lie)] {
        let t = lie_cohomology_dims(lie, &m, 2, &DegreeWindow::All).unwrap();
        for h in lie.group().elements().unwrap() {
            assert_eq!(table_row(&t, 2, &h), oracle_dims(&u, &m, 2, &h), "h={h}");
        }
    }
}

#[test]
fn frozen_tables() {
    let heis = fixtures::heis3();
    let t =
        lie_cohomology_dims(&heis, &GradedModule::trivial(&heis), 2, &DegreeWindow::All).unwrap();
    assert_eq!(table_row(&t, 2, &g(&[0])), vec![1, 0, 2]);
    assert_eq!(table_row(&t, 2, &g(&[1])), vec![0, 2, 0]);
    let gl = fixtures::glcolor();
    let t = lie_cohomology_dims(&gl, &GradedModule::trivial(&gl), 2, &DegreeWindow::All).unwrap();
    assert_eq!(t.total(0), 1);
    assert_eq!(t.total(1), 0);
    assert_eq!(t.total(2), 0);
}

fn shipped_modules(l: &ColorLieAlgebra, name: &str) -> Vec<GradedModule> {
    let mut out = vec![GradedModule::trivial(l), GradedModule::lie_adjoint(l)];
    if name == "heis3" {
        out.push(fixtures::heis3_step2());
    }
    if let Ok(reg) = GradedBimodule::regular(&Enveloping::new(l.clone()), 64) {
        out.push(reg.as_left().clone());
        out.push(adjoint_module(l, &reg));
    }
    out
}

#[test]
fn delta_squares_to_zero() {
    for name in ["abelian_odd_1", "abelian_odd_2", "heis3", "glcolor"] {
        let l = fixtures::lie_by_name(name).unwrap();
        for m in shipped_modules(&l, name) {
            let c = check_delta_squared(&l, &m, 3, &DegreeWindow::All).unwrap();
            assert!(c.passed(), "{name}: {c:?}");
        }
    }
}

#[test]
fn per_degree_sum_matches_one_pass() {
    let l = fixtures::abelian_odd(1);
    for m in shipped_modules(&l, "abelian_odd_1") {
        let t = lie_cohomology_dims(&l, &m, 2, &DegreeWindow::All).unwrap();
        let total = lie_cohomology_total(&l, &m, 2);
        for (n, &dim) in total.iter().enumerate() {
            assert_eq!(t.total(n), dim, "n={n}");
        }
    }
}

#[test]
fn koszul_identities_and_homotopy() {
    for name in ["heis3", "abelian_odd_2", "glcolor"] {
        let u = Enveloping::new(fixtures::lie_by_name(name).unwrap());
        let r = check_koszul_identities(&u, 3, 2);
        assert!(r.passed(), "{r}");
        let r = homotopy_check(&u, 3);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn corrupted_differential_is_caught() {
    let u = Enveloping::new(fixtures::heis3());
    let corrupt = |e: &colorhom::ce_cohomology::KoszulChainElement| {
        let n = e.keys().next().map_or(0, |(_, w)| w.len());
        let d = koszul_d(&u, n, e).unwrap();
        if n == 2 {
            d.negated()
        } else {
            d
        }
    };
    let r = check_koszul_identities_with(&u, 2, 1, &corrupt);
    let c = r.check("sigma_d_homotopy").unwrap();
    assert!(!c.passed());
    assert!(c.witness.is_some());
}
