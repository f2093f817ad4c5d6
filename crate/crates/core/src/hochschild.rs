//! Graded Hochschild cohomology of finite-dimensional graded algebras through
//! the bar complex, and the comparison with Chevalley–Eilenberg cohomology of
//! the adjoint module.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::ce_cohomology::lie_cohomology_dims;
use crate::color_lie::BasisVector;
use crate::enveloping::{Enveloping, PbwMonomial, UElement};
use crate::error::{Error, Result};
use crate::gmodules::{adjoint_module, shift_bimodule, GradedBimodule};
use crate::grading::{DegreeWindow, GroupElement, GroupSpec};
use crate::report::{Check, DimTable, ValidationReport};
use crate::scalars::{CyclotomicField, ExactMatrix, Scalar};

/// Finite-dimensional G-graded algebra with a basis containing the unit.
#[derive(Clone, Debug)]
pub struct FiniteGradedAlgebra {
    field: &'static CyclotomicField,
    group: GroupSpec,
    basis: Vec<BasisVector>,
    /// `products[i][j]` = b_i b_j as sparse (index, coefficient) pairs.
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: usize,
    hopf: Option<HopfData>,
}

/// Coproduct, counit and antipode of a truncated U(L) in the algebra basis.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub coproduct: Vec<Vec<((usize, usize), Scalar)>>,
    pub counit: Vec<Scalar>,
    pub antipode: ExactMatrix,
}

impl FiniteGradedAlgebra {
    pub fn new(
        field: &'static CyclotomicField,
        group: GroupSpec,
        basis: Vec<BasisVector>,
        products: Vec<Vec<Vec<(usize, Scalar)>>>,
        unit: usize,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n {
            return Err(Error::UnitNotBasisVector);
        }
        if products.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: products.len(),
            });
        }
        for row in &products {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for terms in row {
                for (k, c) in terms {
                    if *k >= n {
                        return Err(Error::IndexOutOfRange { index: *k, size: n });
                    }
                    if c.field() != field {
                        return Err(Error::FieldMismatch(field.order(), c.field().order()));
                    }
                }
            }
        }
        for b in &basis {
            if !group.conforms(&b.degree) {
                return Err(Error::Invalid(format!(
                    "degree {} of {} is not an element of the group",
                    b.degree, b.name
                )));
            }
        }
        let a = FiniteGradedAlgebra {
            field,
            group,
            basis,
            products,
            unit,
            hopf: None,
        };
        for i in 0..n {
            let one = vec![(i, field.one())];
            if a.products[unit][i] != one || a.products[i][unit] != one {
                return Err(Error::UnitNotBasisVector);
            }
        }
        Ok(a)
    }

    /// The ground field 𝕂 as a one-dimensional algebra concentrated in degree e.
    pub fn ground(field: &'static CyclotomicField, group: GroupSpec) -> Self {
        let e = group.identity();
        FiniteGradedAlgebra::new(
            field,
            group,
            vec![BasisVector {
                name: "1".into(),
                degree: e,
            }],
            vec![vec![vec![(0, field.one())]]],
            0,
        )
        .expect("ground field is a valid algebra")
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.basis[i].degree
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    pub fn hopf(&self) -> Option<&HopfData> {
        self.hopf.as_ref()
    }

    /// Matrix of left multiplication by b_i.
    pub fn left_multiplication(&self, i: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim(), self.dim());
        for j in 0..self.dim() {
            for (k, c) in &self.products[i][j] {
                m.add_at(*k, j, c);
            }
        }
        m
    }

    /// Matrix of right multiplication by b_i.
    pub fn right_multiplication(&self, i: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim(), self.dim());
        for j in 0..self.dim() {
            for (k, c) in &self.products[j][i] {
                m.add_at(*k, j, c);
            }
        }
        m
    }

    fn mul_vec(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ci) in a {
            for (j, cj) in b {
                for (k, ck) in &self.products[*i][*j] {
                    let v = &(ci * cj) * ck;
                    let e = out.entry(*k).or_insert_with(|| self.field.zero());
                    *e = &*e + &v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Associativity, unit laws and multiplicative grading, checked on all basis triples.
pub fn validate_algebra(a: &FiniteGradedAlgebra) -> ValidationReport {
    let mut report = ValidationReport::new("algebra");
    let mut assoc = Check::new("associativity");
    let mut grading = Check::new("grading");
    let n = a.dim();
    let name = |i: usize| a.basis[i].name.as_str();
    for i in 0..n {
        for j in 0..n {
            let d = a.group.mul(a.degree(i), a.degree(j));
            for (k, _) in a.product(i, j) {
                grading.record(a.degree(*k) == &d, || {
                    format!(
                        "{}·{} has a component {} of the wrong degree",
                        name(i),
                        name(j),
                        name(*k)
                    )
                });
            }
            for k in 0..n {
                let l = a.mul_vec(a.product(i, j), &[(k, a.field.one())]);
                let r = a.mul_vec(&[(i, a.field.one())], a.product(j, k));
                assoc.record(l == r, || {
                    format!("({}, {}, {})", name(i), name(j), name(k))
                });
            }
        }
    }
    report.push(assoc);
    report.push(grading);
    report
}

/// U(L) as a finite-dimensional algebra in its PBW basis, with Δ, ε and S.
pub fn truncate_enveloping(u: &Enveloping, cap: usize) -> Result<FiniteGradedAlgebra> {
    let f = u.field();
    let monos = u.finite_basis(cap)?;
    let index: HashMap<&PbwMonomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let sparse = |x: &UElement| -> Vec<(usize, Scalar)> {
        x.iter().map(|(m, c)| (index[m], c.clone())).collect()
    };
    let products = monos
        .iter()
        .map(|a| {
            monos
                .iter()
                .map(|b| sparse(&u.mul_monomials(a, b)))
                .collect()
        })
        .collect();
    let basis = monos
        .iter()
        .map(|m| BasisVector {
            name: u.format_monomial(m),
            degree: u.monomial_degree(m),
        })
        .collect();
    let unit = index[&PbwMonomial::unit()];
    let mut a = FiniteGradedAlgebra::new(f, u.lie().group().clone(), basis, products, unit)?;
    let coproduct = monos
        .iter()
        .map(|m| {
            u.coproduct_monomial(m)
                .iter()
                .map(|((l, r), c)| ((index[l], index[r]), c.clone()))
                .collect()
        })
        .collect();
    let counit = monos
        .iter()
        .map(|m| u.counit(&UElement::basis(f, m.clone())))
        .collect();
    let mut antipode = ExactMatrix::zeros(f, monos.len(), monos.len());
    for (j, m) in monos.iter().enumerate() {
        for (k, c) in &u.antipode_monomial(m) {
            antipode.set(index[k], j, c.clone());
        }
    }
    a.hopf = Some(HopfData {
        coproduct,
        counit,
        antipode,
    });
    Ok(a)
}

/// Bimodule over a finite algebra: one left and one right matrix per algebra basis vector.
#[derive(Clone, Debug)]
pub struct AlgebraBimodule {
    basis: Vec<BasisVector>,
    left: Vec<ExactMatrix>,
    right: Vec<ExactMatrix>,
}

impl AlgebraBimodule {
    pub fn new(
        a: &FiniteGradedAlgebra,
        basis: Vec<BasisVector>,
        left: Vec<ExactMatrix>,
        right: Vec<ExactMatrix>,
    ) -> Result<Self> {
        for mats in [&left, &right] {
            if mats.len() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: mats.len(),
                });
            }
            for m in mats.iter() {
                if m.field() != a.field() {
                    return Err(Error::FieldMismatch(a.field().order(), m.field().order()));
                }
                for found in [m.rows(), m.cols()] {
                    if found != basis.len() {
                        return Err(Error::DimensionMismatch {
                            expected: basis.len(),
                            found,
                        });
                    }
                }
            }
        }
        Ok(AlgebraBimodule { basis, left, right })
    }

    /// A U(L)-bimodule seen over the truncated U(L) built from the same PBW basis.
    pub fn from_enveloping(
        u: &Enveloping,
        a: &FiniteGradedAlgebra,
        m: &GradedBimodule,
        cap: usize,
    ) -> Result<Self> {
        let monos = u.finite_basis(cap)?;
        if monos.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: monos.len(),
            });
        }
        let left = monos
            .iter()
            .map(|mo| m.as_left().act_monomial(mo))
            .collect();
        let right = monos.iter().map(|mo| m.right_monomial(mo)).collect();
        AlgebraBimodule::new(a, m.basis().to_vec(), left, right)
    }

    /// 𝕂 with both actions through the augmentation.
    pub fn trivial(a: &FiniteGradedAlgebra, augmentation: &[Scalar]) -> Result<Self> {
        if augmentation.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: augmentation.len(),
            });
        }
        let mats: Vec<ExactMatrix> = augmentation
            .iter()
            .map(|c| ExactMatrix::from_rows(a.field(), 1, vec![vec![c.clone()]]).expect("1x1"))
            .collect();
        AlgebraBimodule::new(
            a,
            vec![BasisVector {
                name: "1".into(),
                degree: a.group().identity(),
            }],
            mats.clone(),
            mats,
        )
    }

    /// A acting on itself on both sides.
    pub fn regular(a: &FiniteGradedAlgebra) -> Self {
        AlgebraBimodule {
            basis: a.basis.clone(),
            left: (0..a.dim()).map(|i| a.left_multiplication(i)).collect(),
            right: (0..a.dim()).map(|i| a.right_multiplication(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.basis[i].degree
    }

    pub fn left(&self, i: usize) -> &ExactMatrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &ExactMatrix {
        &self.right[i]
    }

    /// M[h]: a vector of degree d gets degree h⁻¹d.
    pub fn shifted(&self, group: &GroupSpec, h: &GroupElement) -> Self {
        let hinv = group.inv(h);
        AlgebraBimodule {
            basis: self
                .basis
                .iter()
                .map(|b| BasisVector {
                    name: b.name.clone(),
                    degree: group.mul(&hinv, &b.degree),
                })
                .collect(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

/// Bimodule axioms over A: action laws on both sides, unit, commuting actions, grading.
pub fn validate_algebra_bimodule(a: &FiniteGradedAlgebra, m: &AlgebraBimodule) -> ValidationReport {
    let f = a.field();
    let mut report = ValidationReport::new("algebra_bimodule");
    let mut left = Check::new("left_action");
    let mut right = Check::new("right_action");
    let mut unit = Check::new("unit");
    let mut commute = Check::new("actions_commute");
    let mut grading = Check::new("grading");
    let n = a.dim();
    let combo = |mats: &[ExactMatrix], terms: &[(usize, Scalar)]| {
        let mut out = ExactMatrix::zeros(f, m.dim(), m.dim());
        for (k, c) in terms {
            out = out.checked_add(&mats[*k].scaled(c)).expect("square");
        }
        out
    };
    let id = ExactMatrix::identity(f, m.dim());
    unit.record(m.left[a.unit] == id && m.right[a.unit] == id, || {
        "unit acts nontrivially".into()
    });
    for i in 0..n {
        for j in 0..n {
            let l = m.left[i].checked_mul(&m.left[j]).expect("square");
            left.record(l == combo(&m.left, a.product(i, j)), || {
                format!("({}, {})", a.basis[i].name, a.basis[j].name)
            });
            let r = m.right[j].checked_mul(&m.right[i]).expect("square");
            right.record(r == combo(&m.right, a.product(i, j)), || {
                format!("({}, {})", a.basis[i].name, a.basis[j].name)
            });
            let lr = m.left[i].checked_mul(&m.right[j]).expect("square");
            let rl = m.right[j].checked_mul(&m.left[i]).expect("square");
            commute.record(lr == rl, || {
                format!("({}, {})", a.basis[i].name, a.basis[j].name)
            });
        }
        for (mat, side) in [(&m.left[i], "left"), (&m.right[i], "right")] {
            for c in 0..m.dim() {
                for r in 0..m.dim() {
                    if mat.get(r, c).is_zero() {
                        continue;
                    }
                    let d = match side {
                        "left" => a.group.mul(a.degree(i), m.degree(c)),
                        _ => a.group.mul(m.degree(c), a.degree(i)),
                    };
                    grading.record(m.degree(r) == &d, || {
                        format!(
                            "{side} action of {} sends {} to {}",
                            a.basis[i].name, m.basis[c].name, m.basis[r].name
                        )
                    });
                }
            }
        }
    }
    for c in [left, right, unit, commute, grading] {
        report.push(c);
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BarComplex {
    /// Cochains vanishing whenever an argument is the unit.
    #[default]
    Normalized,
    Unnormalized,
}

/// Hochschild differential b^n restricted to degree-e cochains into M[h].
#[derive(Debug, Clone)]
pub struct BarCochainBlock {
    pub n: usize,
    pub h: GroupElement,
    /// Pairs (word of algebra basis indices, module index).
    pub domain: Vec<(Vec<usize>, usize)>,
    pub codomain: Vec<(Vec<usize>, usize)>,
    pub matrix: ExactMatrix,
}

fn bar_letters(a: &FiniteGradedAlgebra, kind: BarComplex) -> Vec<usize> {
    (0..a.dim())
        .filter(|&i| kind == BarComplex::Unnormalized || i != a.unit)
        .collect()
}

fn bar_words(letters: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    words
}

fn word_degree(a: &FiniteGradedAlgebra, w: &[usize]) -> GroupElement {
    w.iter()
        .fold(a.group.identity(), |acc, &i| a.group.mul(&acc, a.degree(i)))
}

fn bar_basis(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n: usize,
    kind: BarComplex,
) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for w in bar_words(&bar_letters(a, kind), n) {
        let d = word_degree(a, &w);
        for j in 0..m.dim() {
            if m.degree(j) == &d {
                out.push((w.clone(), j));
            }
        }
    }
    out
}

/// (b f)(a_1, …, a_{n+1}) = a_1 f(a_2, …) + Σ_i (-1)^i f(…, a_i a_{i+1}, …) + (-1)^{n+1} f(a_1, …, a_n) a_{n+1}.
fn bar_matrix(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n: usize,
    kind: BarComplex,
    domain: &[(Vec<usize>, usize)],
    codomain: &[(Vec<usize>, usize)],
) -> ExactMatrix {
    let f = a.field();
    let mut mat = ExactMatrix::zeros(f, codomain.len(), domain.len());
    let mut cols: HashMap<&[usize], Vec<(usize, usize)>> = HashMap::new();
    for (c, (w, j)) in domain.iter().enumerate() {
        cols.entry(w.as_slice()).or_default().push((c, *j));
    }
    let rows: HashMap<(&[usize], usize), usize> = codomain
        .iter()
        .enumerate()
        .map(|(r, (w, j))| ((w.as_slice(), *j), r))
        .collect();
    let words: BTreeSet<&Vec<usize>> = codomain.iter().map(|(w, _)| w).collect();
    let one = f.one();
    let sign = |k: usize| {
        if k.is_multiple_of(2) {
            f.one()
        } else {
            -f.one()
        }
    };
    for w in words {
        // outer terms act on the module value
        for (act, sub, s) in [
            (&m.left[w[0]], &w[1..], one.clone()),
            (&m.right[w[n]], &w[..n], sign(n + 1)),
        ] {
            let Some(cs) = cols.get(sub) else { continue };
            for &(c, j) in cs {
                for r_m in 0..m.dim() {
                    let v = act.get(r_m, j);
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(&r) = rows.get(&(w.as_slice(), r_m)) {
                        mat.add_at(r, c, &(&s * v));
                    }
                }
            }
        }
        for i in 0..n {
            let s = sign(i + 1);
            for (k, ck) in a.product(w[i], w[i + 1]) {
                if kind == BarComplex::Normalized && *k == a.unit {
                    continue;
                }
                let mut sub = w[..i].to_vec();
                sub.push(*k);
                sub.extend_from_slice(&w[i + 2..]);
                let Some(cs) = cols.get(sub.as_slice()) else {
                    continue;
                };
                for &(c, j) in cs {
                    if let Some(&r) = rows.get(&(w.as_slice(), j)) {
                        mat.add_at(r, c, &(&s * ck));
                    }
                }
            }
        }
    }
    mat
}

pub fn bar_block(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n: usize,
    h: &GroupElement,
    kind: BarComplex,
) -> BarCochainBlock {
    let mh = m.shifted(a.group(), h);
    let domain = bar_basis(a, &mh, n, kind);
    let codomain = bar_basis(a, &mh, n + 1, kind);
    let matrix = bar_matrix(a, &mh, n, kind, &domain, &codomain);
    BarCochainBlock {
        n,
        h: h.clone(),
        domain,
        codomain,
        matrix,
    }
}

/// Degrees h with a nonzero cochain space in some degree ≤ `n_max + 1`.
pub fn bar_support(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n_max: usize,
    kind: BarComplex,
) -> Vec<GroupElement> {
    let g = a.group();
    let letters: BTreeSet<GroupElement> = bar_letters(a, kind)
        .iter()
        .map(|&i| a.degree(i).clone())
        .collect();
    let mut level: BTreeSet<GroupElement> = [g.identity()].into();
    let mut all = level.clone();
    for _ in 0..=n_max {
        level = level
            .iter()
            .flat_map(|d| letters.iter().map(move |l| g.mul(d, l)))
            .collect();
        all.extend(level.iter().cloned());
    }
    let mut out = BTreeSet::new();
    for d in &all {
        for j in 0..m.dim() {
            out.insert(g.mul(m.degree(j), &g.inv(d)));
        }
    }
    out.into_iter().collect()
}

pub fn bar_complex(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n_max: usize,
    window: &DegreeWindow,
    kind: BarComplex,
) -> Result<Vec<BarCochainBlock>> {
    let hs = window.resolve(a.group(), || bar_support(a, m, n_max, kind))?;
    let jobs: Vec<(usize, GroupElement)> = hs
        .iter()
        .flat_map(|h| (0..=n_max).map(move |n| (n, h.clone())))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(n, h)| bar_block(a, m, *n, h, kind))
        .collect())
}

/// dim HH^n_gr(A, M[h]) per (n, h), from the bar complex of the given kind.
pub fn hochschild_dims_with(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n_max: usize,
    window: &DegreeWindow,
    kind: BarComplex,
) -> Result<DimTable> {
    let blocks = bar_complex(a, m, n_max, window, kind)?;
    let ranks: Vec<(usize, usize)> = blocks.par_iter().map(|b| b.matrix.rank_kernel()).collect();
    let by_key: BTreeMap<(usize, GroupElement), (usize, usize)> = blocks
        .iter()
        .zip(ranks)
        .map(|(b, rk)| ((b.n, b.h.clone()), rk))
        .collect();
    let mut table = DimTable::new();
    for ((n, h), (_, ker)) in &by_key {
        let prev = if *n == 0 {
            0
        } else {
            by_key[&(n - 1, h.clone())].0
        };
        table.insert(*n, h.clone(), ker - prev);
    }
    Ok(table)
}

/// dim HH^n_gr(A, M[h]) per (n, h), from the normalized bar complex.
pub fn hochschild_dims(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n_max: usize,
    window: &DegreeWindow,
) -> Result<DimTable> {
    hochschild_dims_with(a, m, n_max, window, BarComplex::Normalized)
}

/// b^{n+1} ∘ b^n = 0 on every block.
pub fn check_bar_squared(
    a: &FiniteGradedAlgebra,
    m: &AlgebraBimodule,
    n_max: usize,
    window: &DegreeWindow,
    kind: BarComplex,
) -> Result<Check> {
    let blocks = bar_complex(a, m, n_max + 1, window, kind)?;
    let by_key: BTreeMap<(usize, GroupElement), &BarCochainBlock> =
        blocks.iter().map(|b| ((b.n, b.h.clone()), b)).collect();
    let mut check = Check::new("bar_squared");
    for ((n, h), b) in &by_key {
        if *n > n_max {
            continue;
        }
        let next = by_key[&(n + 1, h.clone())];
        let prod = next
            .matrix
            .checked_mul(&b.matrix)
            .expect("composable blocks");
        check.record(prod.is_zero(), || {
            format!("b^{}∘b^{n} ≠ 0 at h = {h}", n + 1)
        });
    }
    Ok(check)
}

/// dim {m ∈ M_h : a.m = m.a for all a}, by a direct linear solve.
pub fn centralizer_dim(a: &FiniteGradedAlgebra, m: &AlgebraBimodule, h: &GroupElement) -> usize {
    let f = a.field();
    let support: Vec<usize> = (0..m.dim()).filter(|&j| m.degree(j) == h).collect();
    if support.is_empty() {
        return 0;
    }
    let mut blocks = Vec::new();
    for i in 0..a.dim() {
        let diff = m.left[i].checked_sub(&m.right[i]).expect("square");
        let mut b = ExactMatrix::zeros(f, m.dim(), support.len());
        for (c, &j) in support.iter().enumerate() {
            for r in 0..m.dim() {
                b.set(r, c, diff.get(r, j).clone());
            }
        }
        blocks.push(b);
    }
    let stacked = ExactMatrix::vstack(f, support.len(), &blocks).expect("equal widths");
    stacked.rank_kernel().1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonCell {
    pub n: usize,
    pub h: GroupElement,
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

/// HH^n(U(L), M)_h against H^n(L, ad(M[h])) for each cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub all_equal: bool,
    pub cells: Vec<ComparisonCell>,
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hw = self
            .cells
            .iter()
            .map(|c| c.h.to_string().len())
            .max()
            .unwrap_or(1)
            .max(1);
        writeln!(
            f,
            "{:>3}  {:>hw$}  {:>5}  {:>5}  equal",
            "n", "h", "HH", "H"
        )?;
        for c in &self.cells {
            writeln!(
                f,
                "{:>3}  {:>hw$}  {:>5}  {:>5}  {}",
                c.n,
                c.h.to_string(),
                c.lhs,
                c.rhs,
                if c.equal { "yes" } else { "NO" }
            )?;
        }
        writeln!(f, "all_equal: {}", self.all_equal)
    }
}

/// Default cap on dim U(L) for the comparison.
pub const ENVELOPING_CAP: usize = 256;

/// Computes HH^n_gr(U(L), M[h]) through the bar complex and H^n_gr(L, ad(M[h]))
/// through the cochain complex, shifting before taking the adjoint.
pub fn compare_theorem5(
    u: &Enveloping,
    m: &GradedBimodule,
    n_max: usize,
    window: &DegreeWindow,
) -> Result<ComparisonReport> {
    let lie = u.lie();
    let a = truncate_enveloping(u, ENVELOPING_CAP)?;
    let am = AlgebraBimodule::from_enveloping(u, &a, m, ENVELOPING_CAP)?;
    let hs = window.resolve(lie.group(), || {
        bar_support(&a, &am, n_max, BarComplex::Normalized)
    })?;
    let list = DegreeWindow::List(hs.clone());
    let lhs = hochschild_dims(&a, &am, n_max, &list)?;
    let e = lie.group().identity();
    let rhs: Vec<DimTable> = hs
        .par_iter()
        .map(|h| {
            let ad = adjoint_module(lie, &shift_bimodule(lie, m, h));
            lie_cohomology_dims(lie, &ad, n_max, &DegreeWindow::List(vec![e.clone()]))
        })
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    for (h, table) in hs.iter().zip(&rhs) {
        for n in 0..=n_max {
            let l = lhs.get(n, h).unwrap_or(0);
            let r = table.get(n, &e).unwrap_or(0);
            cells.push(ComparisonCell {
                n,
                h: h.clone(),
                lhs: l,
                rhs: r,
                equal: l == r,
            });
        }
    }
    cells.sort_by(|x, y| (x.n, &x.h).cmp(&(y.n, &y.h)));
    Ok(ComparisonReport {
        all_equal: cells.iter().all(|c| c.equal),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gmodules::GradedBimodule;

    fn env(k: usize) -> Enveloping {
        Enveloping::new(fixtures::abelian_odd(k))
    }

    #[test]
    fn truncations() {
        let a1 = truncate_enveloping(&env(1), 64).unwrap();
        assert_eq!(a1.dim(), 2);
        assert!(validate_algebra(&a1).passed());
        let a2 = truncate_enveloping(&env(2), 64).unwrap();
        assert_eq!(a2.dim(), 4);
        assert!(validate_algebra(&a2).passed());
        assert!(a2.hopf().is_some());
        let heis = Enveloping::new(fixtures::heis3());
        assert!(matches!(
            truncate_enveloping(&heis, 64),
            Err(Error::NotFiniteDimensional { .. })
        ));
    }

    #[test]
    fn hh0_is_centralizer() {
        let u = env(1);
        let a = truncate_enveloping(&u, 64).unwrap();
        let m = AlgebraBimodule::regular(&a);
        assert!(validate_algebra_bimodule(&a, &m).passed());
        let e = a.group().identity();
        let t = hochschild_dims(&a, &m, 0, &DegreeWindow::All).unwrap();
        assert_eq!(t.get(0, &e), Some(1));
        for h in a.group().elements().unwrap() {
            assert_eq!(t.get(0, &h), Some(centralizer_dim(&a, &m, &h)));
        }
    }

    #[test]
    fn ground_field() {
        let g = GroupSpec::new(vec![2]);
        let k = FiniteGradedAlgebra::ground(CyclotomicField::rationals(), g);
        let m = AlgebraBimodule::regular(&k);
        let t = hochschild_dims(&k, &m, 3, &DegreeWindow::All).unwrap();
        let e = k.group().identity();
        assert_eq!(t.get(0, &e), Some(1));
        for n in 1..=3 {
            assert_eq!(t.total(n), 0);
        }
    }

    #[test]
    fn normalized_matches_unnormalized() {
        let u = env(1);
        let a = truncate_enveloping(&u, 64).unwrap();
        let m = AlgebraBimodule::regular(&a);
        let n =
            hochschild_dims_with(&a, &m, 3, &DegreeWindow::All, BarComplex::Normalized).unwrap();
        let un =
            hochschild_dims_with(&a, &m, 3, &DegreeWindow::All, BarComplex::Unnormalized).unwrap();
        assert_eq!(n, un);
        for kind in [BarComplex::Normalized, BarComplex::Unnormalized] {
            assert!(check_bar_squared(&a, &m, 2, &DegreeWindow::All, kind)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn enveloping_bimodule_matches_regular() {
        let u = env(2);
        let a = truncate_enveloping(&u, 64).unwrap();
        let m = GradedBimodule::regular(&u, 64).unwrap();
        let am = AlgebraBimodule::from_enveloping(&u, &a, &m, 64).unwrap();
        let reg = AlgebraBimodule::regular(&a);
        for i in 0..a.dim() {
            assert_eq!(am.left(i), reg.left(i));
            assert_eq!(am.right(i), reg.right(i));
        }
    }

    #[test]
    fn comparison_on_abelian_odd_1() {
        let u = env(1);
        for m in [
            GradedBimodule::regular(&u, 64).unwrap(),
            GradedBimodule::trivial(u.lie()),
        ] {
            let r = compare_theorem5(&u, &m, 3, &DegreeWindow::All).unwrap();
            assert!(r.all_equal, "{r}");
            assert_eq!(r.cells.len(), 8);
        }
    }
}
