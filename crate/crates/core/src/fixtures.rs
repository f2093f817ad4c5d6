//! Small color Lie algebras and modules used by tests, benches and the CLI.

use crate::color_lie::{BasisVector, BracketEntry, ColorLieAlgebra, LieElement};
use crate::grading::{Bicharacter, GroupElement, GroupSpec};

fn bv(name: &str, exps: &[i64]) -> BasisVector {
    BasisVector {
        name: name.to_string(),
        degree: GroupElement {
            exponents: exps.to_vec(),
        },
    }
}

/// `k` odd generators over Z_2 with the super sign rule and zero bracket.
pub fn abelian_odd(k: usize) -> ColorLieAlgebra {
    let basis = (1..=k).map(|i| bv(&format!("x{i}"), &[1])).collect();
    ColorLieAlgebra::from_brackets(Bicharacter::super_z2(), basis, Vec::new())
        .expect("fixture is well formed")
}

/// Odd x, y and even central z over Z_2 with `[x, y] = [y, x] = z`.
pub fn heis3() -> ColorLieAlgebra {
    let chi = Bicharacter::super_z2();
    let f = chi.field();
    let basis = vec![bv("x", &[1]), bv("y", &[1]), bv("z", &[0])];
    let entries = vec![BracketEntry {
        left: 0,
        right: 1,
        value: LieElement::basis(f, 2),
    }];
    ColorLieAlgebra::from_brackets(chi, basis, entries).expect("fixture is well formed")
}

/// Z_2 × Z_2 with ε(a, b) = (-1)^{a_1 b_2 + a_2 b_1}: all degrees are even but
/// the sign rule is not a super one. Brackets are symmetric:
/// `[e1, e2] = e3`, `[e2, e3] = e1`, `[e3, e1] = e2`.
pub fn glcolor() -> ColorLieAlgebra {
    let chi = Bicharacter::new(GroupSpec::new(vec![2, 2]), 2, vec![vec![0, 1], vec![1, 0]])
        .expect("valid shape");
    let f = chi.field();
    let basis = vec![bv("e1", &[1, 0]), bv("e2", &[0, 1]), bv("e3", &[1, 1])];
    let entry = |left, right, k| BracketEntry {
        left,
        right,
        value: LieElement::basis(f, k),
    };
    let entries = vec![entry(0, 1, 2), entry(1, 2, 0), entry(2, 0, 1)];
    ColorLieAlgebra::from_brackets(chi, basis, entries).expect("fixture is well formed")
}

/// Looks up a Lie algebra fixture by its shipped name (`abelian_odd_<k>`, `heis3`, `glcolor`).
pub fn lie_by_name(name: &str) -> Option<ColorLieAlgebra> {
    match name {
        "heis3" => Some(heis3()),
        "glcolor" => Some(glcolor()),
        _ => name
            .strip_prefix("abelian_odd_")
            .and_then(|k| k.parse().ok())
            .map(abelian_odd),
    }
}

/// Two-dimensional heis3-module: `v0` in degree 0, `v1` in degree 1, with
/// `x.v0 = y.v0 = v1` and everything else zero.
pub fn heis3_step2() -> crate::gmodules::GradedModule {
    use crate::scalars::ExactMatrix;
    let lie = heis3();
    let f = lie.field();
    let mut raise = ExactMatrix::zeros(f, 2, 2);
    raise.set(1, 0, f.one());
    crate::gmodules::GradedModule::new(
        f,
        vec![bv("v0", &[0]), bv("v1", &[1])],
        vec![raise.clone(), raise, ExactMatrix::zeros(f, 2, 2)],
    )
    .expect("fixture is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_lie::validate_color_lie;
    use crate::gmodules::validate_module;

    #[test]
    fn fixtures_validate() {
        for name in ["abelian_odd_1", "abelian_odd_2", "heis3", "glcolor"] {
            let l = lie_by_name(name).unwrap();
            assert!(validate_color_lie(&l).passed(), "{name}");
        }
        assert!(validate_module(&heis3(), &heis3_step2()).passed());
        assert!(lie_by_name("nope").is_none());
    }
}
