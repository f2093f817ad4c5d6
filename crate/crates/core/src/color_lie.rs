//! Color Lie algebras given by a homogeneous basis and structure constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{Bicharacter, GroupElement, GroupSpec};
use crate::lincomb::LinComb;
use crate::report::{Check, ValidationReport};
use crate::scalars::{CyclotomicField, Scalar};

/// Sparse vector over the basis of a color Lie algebra.
pub type LieElement = LinComb<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    pub name: String,
    pub degree: GroupElement,
}

/// A bracket entry `[left, right] = value` as supplied by a loader.
#[derive(Debug, Clone)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub value: LieElement,
}

#[derive(Clone)]
pub struct ColorLieAlgebra {
    chi: Bicharacter,
    basis: Vec<BasisVector>,
    /// `structure[i][j] = [x_i, x_j]`.
    structure: Vec<Vec<LieElement>>,
    /// `eps[i][j]` is k with ε(|x_i|, |x_j|) = ζ_N^k.
    eps: Vec<Vec<u32>>,
    odd: Vec<bool>,
}

impl ColorLieAlgebra {
    /// Builds the algebra from a full bracket table.
    pub fn new(
        chi: Bicharacter,
        basis: Vec<BasisVector>,
        structure: Vec<Vec<LieElement>>,
    ) -> Result<Self> {
        let n = basis.len();
        for b in &basis {
            if !chi.group.conforms(&b.degree) {
                return Err(Error::Invalid(format!(
                    "degree {} of basis vector {:?} does not belong to the group {:?}",
                    b.degree, b.name, chi.group.orders
                )));
            }
        }
        if structure.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: structure.len(),
            });
        }
        for row in &structure {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for v in row {
                check_vector(&chi, n, v)?;
            }
        }
        let eps: Vec<Vec<u32>> = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| chi.exponent(&a.degree, &b.degree))
                    .collect()
            })
            .collect();
        let odd = (0..n)
            .map(|i| 2 * eps[i][i] == chi.root_order && chi.root_order > 1)
            .collect();
        Ok(ColorLieAlgebra {
            chi,
            basis,
            structure,
            eps,
            odd,
        })
    }

    /// Builds the algebra from bracket entries, filling each missing `[x_j, x_i]`
    /// from a supplied `[x_i, x_j]` by ε-antisymmetry. Entries supplied in both
    /// orders are kept as given, so the validator sees them.
    pub fn from_brackets(
        chi: Bicharacter,
        basis: Vec<BasisVector>,
        entries: Vec<BracketEntry>,
    ) -> Result<Self> {
        let n = basis.len();
        let field = chi.field();
        let mut table: Vec<Vec<Option<LieElement>>> = vec![vec![None; n]; n];
        for e in entries {
            for idx in [e.left, e.right] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        size: n,
                    });
                }
            }
            check_vector(&chi, n, &e.value)?;
            match &mut table[e.left][e.right] {
                Some(existing) => existing.add_assign(&e.value),
                slot => *slot = Some(e.value),
            }
        }
        let mut structure = vec![vec![LieElement::zero(field); n]; n];
        for i in 0..n {
            for j in 0..n {
                structure[i][j] = match (&table[i][j], &table[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(v)) if i != j => {
                        let s = -chi.eval(&basis[i].degree, &basis[j].degree);
                        v.scaled(&s)
                    }
                    _ => LieElement::zero(field),
                };
            }
        }
        Self::new(chi, basis, structure)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi
    }

    pub fn group(&self) -> &GroupSpec {
        &self.chi.group
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.chi.field()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Exponent of ε(|x_i|, |x_j|).
    pub fn eps_exp(&self, i: usize, j: usize) -> u32 {
        self.eps[i][j]
    }

    pub fn eps(&self, i: usize, j: usize) -> Scalar {
        self.field().root(self.eps[i][j] as i64)
    }

    /// ε(|x_i|, |x_i|) = -1.
    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    pub fn root_order(&self) -> u32 {
        self.chi.root_order
    }

    /// Exponent of ε(g, h) for arbitrary degrees.
    pub fn eps_exp_deg(&self, g: &GroupElement, h: &GroupElement) -> u32 {
        self.chi.exponent(g, h)
    }

    /// Degree of the word `x_{w_1} ⋯ x_{w_k}`.
    pub fn word_degree(&self, word: &[usize]) -> GroupElement {
        self.group().product(word.iter().map(|&i| self.degree(i)))
    }

    /// Exponent of χ(|x_a|, |x_b|) summed over all pairs `a ∈ left`, `b ∈ right`.
    pub fn eps_exp_words(&self, left: &[usize], right: &[usize]) -> u32 {
        let n = self.chi.root_order;
        if n == 1 {
            return 0;
        }
        let mut acc = 0u32;
        for &a in left {
            for &b in right {
                acc = (acc + self.eps[a][b]) % n;
            }
        }
        acc
    }

    /// `[x_i, x_j]` on basis vectors.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &LieElement {
        &self.structure[i][j]
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        for k in a.keys().chain(b.keys()) {
            if *k >= self.dim() {
                return Err(Error::IndexOutOfRange {
                    index: *k,
                    size: self.dim(),
                });
            }
        }
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.field());
        for (&i, ca) in a {
            for (&j, cb) in b {
                out.add_scaled(&self.structure[i][j], &(ca * cb));
            }
        }
        out
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        LieElement::basis(self.field(), i)
    }

    pub fn format_element(&self, v: &LieElement) -> String {
        v.display_with(|&i| self.name(i).to_string())
    }

    /// Every ordered pair (i, j) with a nonzero bracket.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &LieElement)> {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let v = &self.structure[i][j];
                (!v.is_zero()).then_some((i, j, v))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.nonzero_brackets().next().is_none()
    }
}

fn check_vector(chi: &Bicharacter, n: usize, v: &LieElement) -> Result<()> {
    if v.field().order() != chi.root_order {
        return Err(Error::FieldMismatch(chi.root_order, v.field().order()));
    }
    for &k in v.keys() {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
    }
    Ok(())
}

impl std::fmt::Debug for ColorLieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColorLieAlgebra")
            .field("chi", &self.chi)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

/// Exhaustive check of degree compatibility, ε-antisymmetry and the ε-Jacobi identity.
pub fn validate_color_lie(l: &ColorLieAlgebra) -> ValidationReport {
    let mut report = ValidationReport::new("color_lie");
    let n = l.dim();
    let group = l.group();

    let mut grading = Check::new("grading");
    for i in 0..n {
        for j in 0..n {
            let target = group.mul(l.degree(i), l.degree(j));
            for (&k, _) in l.bracket_basis(i, j) {
                grading.record(l.degree(k) == &target, || {
                    format!(
                        "[{}, {}] has a {} component of degree {}, expected degree {}",
                        l.name(i),
                        l.name(j),
                        l.name(k),
                        l.degree(k),
                        target
                    )
                });
            }
        }
    }
    report.push(grading);

    let mut antisym = Check::new("antisymmetry");
    for i in 0..n {
        for j in i..n {
            let lhs = l.bracket_basis(i, j);
            let rhs = l.bracket_basis(j, i).scaled(&-l.eps(i, j));
            let residual = lhs.minus(&rhs);
            antisym.record(residual.is_zero(), || {
                format!(
                    "({}, {}): [a,b] + eps(|a|,|b|)[b,a] = {}",
                    l.name(i),
                    l.name(j),
                    l.format_element(&residual)
                )
            });
        }
    }
    report.push(antisym);

    let mut even_sq = Check::new("even_square");
    for i in (0..n).filter(|&i| !l.is_odd(i)) {
        let v = l.bracket_basis(i, i);
        even_sq.record(v.is_zero(), || {
            format!(
                "[{0}, {0}] = {1} for even {0}",
                l.name(i),
                l.format_element(v)
            )
        });
    }
    report.push(even_sq);

    let mut jacobi = Check::new("jacobi");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let residual = jacobi_residual(l, a, b, c);
                jacobi.record(residual.is_zero(), || {
                    format!(
                        "({}, {}, {}): residual {}",
                        l.name(a),
                        l.name(b),
                        l.name(c),
                        l.format_element(&residual)
                    )
                });
            }
        }
    }
    report.push(jacobi);
    report
}

/// ε(|c|,|a|)[a,[b,c]] + ε(|a|,|b|)[b,[c,a]] + ε(|b|,|c|)[c,[a,b]].
pub fn jacobi_residual(l: &ColorLieAlgebra, a: usize, b: usize, c: usize) -> LieElement {
    let term = |x: usize, y: usize, z: usize, coeff: Scalar| {
        l.bracket_unchecked(&l.basis_element(x), l.bracket_basis(y, z))
            .scaled(&coeff)
    };
    let mut r = term(a, b, c, l.eps(c, a));
    r.add_assign(&term(b, c, a, l.eps(a, b)));
    r.add_assign(&term(c, a, b, l.eps(b, c)));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn heis3_brackets() {
        let l = fixtures::heis3();
        let [x, y, z] = [0, 1, 2].map(|i| l.basis_element(i));
        assert_eq!(l.bracket(&x, &y).unwrap(), z);
        assert!(l.bracket(&z, &x).unwrap().is_zero());
        assert_eq!(l.bracket(&x.plus(&y), &x).unwrap(), z);
    }

    #[test]
    fn out_of_range_index() {
        let l = fixtures::heis3();
        let bad = LieElement::basis(l.field(), 7);
        assert_eq!(
            l.bracket(&bad, &l.basis_element(0)).unwrap_err(),
            Error::IndexOutOfRange { index: 7, size: 3 }
        );
    }

    #[test]
    fn fixtures_validate() {
        for l in [
            fixtures::abelian_odd(1),
            fixtures::abelian_odd(3),
            fixtures::heis3(),
            fixtures::glcolor(),
        ] {
            let rep = validate_color_lie(&l);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn wrong_sign_antisymmetry_fails() {
        let base = fixtures::heis3();
        let f = base.field();
        let z = LieElement::basis(f, 2);
        let entries = vec![
            BracketEntry {
                left: 0,
                right: 1,
                value: z.clone(),
            },
            BracketEntry {
                left: 1,
                right: 0,
                value: z.negated(),
            },
        ];
        let l = ColorLieAlgebra::from_brackets(base.chi().clone(), base.basis().to_vec(), entries)
            .unwrap();
        let rep = validate_color_lie(&l);
        let c = rep.check("antisymmetry").unwrap();
        assert!(!c.passed());
        assert!(c.witness.as_ref().unwrap().starts_with("(x, y)"));
    }

    #[test]
    fn loader_completes_antisymmetry() {
        let l = fixtures::heis3();
        assert_eq!(l.bracket_basis(1, 0), &LieElement::basis(l.field(), 2));
        let g = fixtures::glcolor();
        assert_eq!(g.bracket_basis(1, 0), g.bracket_basis(0, 1));
    }
}
