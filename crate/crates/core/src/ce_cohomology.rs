//! The ε-exterior algebra, the color Koszul complex U(L) ⊗ ∧_ε L, its filtration
//! homotopy, and the Chevalley–Eilenberg cochain complex Hom_gr(∧^n_ε L, M[h]).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::color_lie::ColorLieAlgebra;
use crate::enveloping::{Enveloping, PbwMonomial};
use crate::error::{Error, Result};
use crate::gmodules::{shift, GradedModule};
use crate::grading::{DegreeWindow, GroupElement};
use crate::lincomb::LinComb;
use crate::report::{Check, DimTable, ValidationReport};
use crate::scalars::{ExactMatrix, Scalar};

/// `x_{l_1} ∧ ⋯ ∧ x_{l_n}`: non-decreasing, strictly increasing at even indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WedgeMonomial(Vec<usize>);

impl WedgeMonomial {
    pub fn empty() -> Self {
        WedgeMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for WedgeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for WedgeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.0)
    }
}

pub type WedgeElement = LinComb<WedgeMonomial>;
pub type KoszulChainElement = LinComb<(PbwMonomial, WedgeMonomial)>;

/// All wedge monomials of length `n`.
pub fn wedge_basis(lie: &ColorLieAlgebra, n: usize) -> Vec<WedgeMonomial> {
    let mut words = vec![Vec::<usize>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &words {
            let start = w.last().copied().unwrap_or(0);
            for i in start..lie.dim() {
                if w.last() == Some(&i) && !lie.is_odd(i) {
                    continue;
                }
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        words = next;
    }
    words.into_iter().map(WedgeMonomial).collect()
}

/// Sorts a wedge word using `u ∧ v = -ε(|u|, |v|) v ∧ u`; returns `None` when
/// the word vanishes (an even letter repeated).
pub fn wedge_sort(lie: &ColorLieAlgebra, word: &[usize]) -> Option<(Scalar, WedgeMonomial)> {
    let mut w = word.to_vec();
    let n = lie.root_order();
    let mut exp = 0u32;
    let mut negate = false;
    // insertion sort with adjacent swaps
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            exp = (exp + lie.eps_exp(w[j - 1], w[j])) % n;
            negate = !negate;
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && !lie.is_odd(p[0])) {
        return None;
    }
    let mut c = lie.field().root(exp as i64);
    if negate {
        c = -c;
    }
    Some((c, WedgeMonomial(w)))
}

pub fn wedge_normalize(lie: &ColorLieAlgebra, word: &[usize], coeff: Scalar) -> WedgeElement {
    let mut out = WedgeElement::zero(lie.field());
    if let Some((s, m)) = wedge_sort(lie, word) {
        out.add_term(m, &s * &coeff);
    }
    out
}

/// ε_i = ∏_{h<i} ε(|x_h|, |x_i|) as an exponent, for 0-based position `i`.
fn eps_prefix(lie: &ColorLieAlgebra, x: &[usize], i: usize) -> u32 {
    lie.eps_exp_words(&x[..i], &x[i..=i])
}

fn without(x: &[usize], skip: &[usize]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(p, _)| !skip.contains(p))
        .map(|(_, &v)| v)
        .collect()
}

/// `(-1)^k ζ^e`.
fn signed_root(lie: &ColorLieAlgebra, negative: bool, e: u32) -> Scalar {
    let c = lie.field().root((e % lie.root_order()) as i64);
    if negative {
        -c
    } else {
        c
    }
}

/// Which parts of the Koszul differential to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DPart {
    Full,
    /// The first sum only: the principal symbol used on W^p.
    Leading,
}

fn koszul_d_basis(
    u: &Enveloping,
    mono: &PbwMonomial,
    w: &WedgeMonomial,
    part: DPart,
) -> KoszulChainElement {
    let lie = u.lie();
    let f = u.field();
    let x = w.indices();
    let n = x.len();
    let mut out = KoszulChainElement::zero(f);
    for i in 0..n {
        // (-1)^{i+1} with 1-based i is + for 0-based even positions
        let c = signed_root(lie, i % 2 == 1, eps_prefix(lie, x, i));
        let mut word = mono.indices().to_vec();
        word.push(x[i]);
        let rest = WedgeMonomial(without(x, &[i]));
        for (m, cm) in &u.nf(&word) {
            out.add_term((m.clone(), rest.clone()), &c * cm);
        }
    }
    if part == DPart::Leading {
        return out;
    }
    for i in 0..n {
        for j in i + 1..n {
            // (-1)^{i+j} is unchanged by the 0-based shift of both indices
            let e = eps_prefix(lie, x, i) + eps_prefix(lie, x, j) + lie.eps_exp(x[j], x[i]);
            let c = signed_root(lie, (i + j) % 2 == 1, e);
            let rest = without(x, &[i, j]);
            for (&k, ck) in lie.bracket_basis(x[i], x[j]) {
                let mut word = vec![k];
                word.extend_from_slice(&rest);
                if let Some((s, wm)) = wedge_sort(lie, &word) {
                    out.add_term((mono.clone(), wm), &(&c * ck) * &s);
                }
            }
        }
    }
    out
}

fn check_chain_degree(elt: &KoszulChainElement, n: usize) -> Result<()> {
    for (_, w) in elt.keys() {
        if w.len() != n {
            return Err(Error::WrongChainDegree {
                expected: n,
                found: w.len(),
            });
        }
    }
    Ok(())
}

/// d_n: C_n → C_{n-1}, with d_0 = 0.
pub fn koszul_d(u: &Enveloping, n: usize, elt: &KoszulChainElement) -> Result<KoszulChainElement> {
    check_chain_degree(elt, n)?;
    Ok(apply_d(u, elt))
}

fn apply_d(u: &Enveloping, elt: &KoszulChainElement) -> KoszulChainElement {
    elt.map_linear(|(m, w)| koszul_d_basis(u, m, w, DPart::Full))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaSigma {
    Theta,
    Sigma,
}

/// θ(y)(u ⊗ ⟨x⟩) = -ε(|y|, |u|) uy ⊗ ⟨x⟩ + Σ_i ε(|y|, |u||x_1|⋯|x_{i-1}|) u ⊗ ⟨…, [y, x_i], …⟩.
fn theta_basis(
    u: &Enveloping,
    y: usize,
    mono: &PbwMonomial,
    w: &WedgeMonomial,
) -> KoszulChainElement {
    let lie = u.lie();
    let f = u.field();
    let x = w.indices();
    let mut out = KoszulChainElement::zero(f);
    let c = signed_root(lie, true, lie.eps_exp_words(&[y], mono.indices()));
    let mut word = mono.indices().to_vec();
    word.push(y);
    for (m, cm) in &u.nf(&word) {
        out.add_term((m.clone(), w.clone()), &c * cm);
    }
    for i in 0..x.len() {
        let e = lie.eps_exp_words(&[y], mono.indices()) + lie.eps_exp_words(&[y], &x[..i]);
        let c = signed_root(lie, false, e);
        for (&k, ck) in lie.bracket_basis(y, x[i]) {
            let mut word = x.to_vec();
            word[i] = k;
            if let Some((s, wm)) = wedge_sort(lie, &word) {
                out.add_term((mono.clone(), wm), &(&c * ck) * &s);
            }
        }
    }
    out
}

/// σ(y)(u ⊗ ⟨x⟩) = ε(|y|, |u|) u ⊗ ⟨y, x⟩.
fn sigma_basis(
    u: &Enveloping,
    y: usize,
    mono: &PbwMonomial,
    w: &WedgeMonomial,
) -> KoszulChainElement {
    let lie = u.lie();
    let mut out = KoszulChainElement::zero(u.field());
    let c = signed_root(lie, false, lie.eps_exp_words(&[y], mono.indices()));
    let mut word = vec![y];
    word.extend_from_slice(w.indices());
    if let Some((s, wm)) = wedge_sort(lie, &word) {
        out.add_term((mono.clone(), wm), &c * &s);
    }
    out
}

/// θ(y) or σ(y) applied to a chain, basis index `y`.
pub fn koszul_theta_sigma(
    u: &Enveloping,
    y: usize,
    elt: &KoszulChainElement,
    which: ThetaSigma,
) -> Result<KoszulChainElement> {
    if y >= u.lie().dim() {
        return Err(Error::IndexOutOfRange {
            index: y,
            size: u.lie().dim(),
        });
    }
    Ok(apply_ts(u, y, elt, which))
}

fn apply_ts(
    u: &Enveloping,
    y: usize,
    elt: &KoszulChainElement,
    which: ThetaSigma,
) -> KoszulChainElement {
    elt.map_linear(|(m, w)| match which {
        ThetaSigma::Theta => theta_basis(u, y, m, w),
        ThetaSigma::Sigma => sigma_basis(u, y, m, w),
    })
}

/// Applies a Lie element through a basis-indexed operator, linearly.
fn apply_lie(
    elt: &KoszulChainElement,
    v: &crate::color_lie::LieElement,
    mut op: impl FnMut(usize, &KoszulChainElement) -> KoszulChainElement,
) -> KoszulChainElement {
    let mut out = KoszulChainElement::zero(elt.field());
    for (&k, c) in v {
        out.add_scaled(&op(k, elt), c);
    }
    out
}

/// Basis of C_n with PBW length at most `pbw_cap`.
pub fn chain_basis(u: &Enveloping, n: usize, pbw_cap: usize) -> Vec<(PbwMonomial, WedgeMonomial)> {
    let mons = u.pbw_monomials(pbw_cap);
    let wedges = wedge_basis(u.lie(), n);
    let mut out = Vec::with_capacity(mons.len() * wedges.len());
    for m in &mons {
        for w in &wedges {
            out.push((m.clone(), w.clone()));
        }
    }
    out
}

pub fn format_chain(u: &Enveloping, c: &KoszulChainElement) -> String {
    c.display_with(|(m, w)| {
        let names: Vec<&str> = w.indices().iter().map(|&i| u.lie().name(i)).collect();
        format!("{}⊗<{}>", u.format_monomial(m), names.join(","))
    })
}

/// Differential used by [`check_koszul_identities_with`]; tests substitute
/// corrupted versions to confirm that the checks notice.
pub type Differential<'a> = dyn Fn(&KoszulChainElement) -> KoszulChainElement + Sync + 'a;

pub fn check_koszul_identities(u: &Enveloping, n_max: usize, pbw_cap: usize) -> ValidationReport {
    check_koszul_identities_with(u, n_max, pbw_cap, &|e| apply_d(u, e))
}

/// Evaluates θθ (e1.1), σ/θ (e'1.2), σd + dσ = -θ (e1.3), θd = dθ (e1.5) and
/// d∘d = 0 on every basis element of C_n, n ≤ `n_max`, with PBW length ≤ `pbw_cap`.
pub fn check_koszul_identities_with(
    u: &Enveloping,
    n_max: usize,
    pbw_cap: usize,
    d: &Differential<'_>,
) -> ValidationReport {
    let lie = u.lie();
    let gens = lie.dim();
    let mut report = ValidationReport::new("koszul");
    let mut e11 = Check::new("theta_bracket");
    let mut e12 = Check::new("sigma_bracket");
    let mut e13 = Check::new("sigma_d_homotopy");
    let mut e15 = Check::new("theta_commutes_with_d");
    let mut dd = Check::new("d_squared");
    let f = u.field();
    let th = |y: usize, e: &KoszulChainElement| apply_ts(u, y, e, ThetaSigma::Theta);
    let sg = |y: usize, e: &KoszulChainElement| apply_ts(u, y, e, ThetaSigma::Sigma);
    for n in 0..=n_max {
        for (m, w) in chain_basis(u, n, pbw_cap) {
            let e = KoszulChainElement::basis(f, (m, w));
            let show = || format_chain(u, &e);
            for x in 0..gens {
                for y in 0..gens {
                    let eps = lie.eps(x, y);
                    let br = lie.bracket_basis(x, y);
                    let lhs = th(x, &th(y, &e)).minus(&th(y, &th(x, &e)).scaled(&eps));
                    let rhs = apply_lie(&e, br, th);
                    e11.record(lhs == rhs, || {
                        format!("x={}, y={}, on {}", lie.name(x), lie.name(y), show())
                    });
                    if n < n_max {
                        let lhs = apply_lie(&e, br, sg);
                        let rhs = th(x, &sg(y, &e)).minus(&sg(y, &th(x, &e)).scaled(&eps));
                        e12.record(lhs == rhs, || {
                            format!("x={}, y={}, on {}", lie.name(x), lie.name(y), show())
                        });
                    }
                }
            }
            if n < n_max {
                for y in 0..gens {
                    let lhs = sg(y, &d(&e)).plus(&d(&sg(y, &e)));
                    let rhs = th(y, &e).negated();
                    e13.record(lhs == rhs, || {
                        format!(
                            "y={}, on {}: residual {}",
                            lie.name(y),
                            show(),
                            format_chain(u, &lhs.minus(&rhs))
                        )
                    });
                }
            }
            if n >= 1 {
                for y in 0..gens {
                    let lhs = th(y, &d(&e));
                    let rhs = d(&th(y, &e));
                    e15.record(lhs == rhs, || format!("y={}, on {}", lie.name(y), show()));
                }
            }
            if n >= 2 {
                let r = d(&d(&e));
                dd.record(r.is_zero(), || {
                    format!("on {}: d(d(c)) = {}", show(), format_chain(u, &r))
                });
            }
        }
    }
    for c in [e11, e12, e13, e15, dd] {
        report.push(c);
    }
    report
}

fn check_piece(elt: &KoszulChainElement, p: usize) -> Result<()> {
    for (m, w) in elt.keys() {
        if m.len() + w.len() != p {
            return Err(Error::NotInFiltrationPiece {
                p,
                pbw_len: m.len(),
                wedge_len: w.len(),
            });
        }
    }
    Ok(())
}

fn drop_below(elt: KoszulChainElement, p: usize) -> KoszulChainElement {
    elt.filtered(|(m, w)| m.len() + w.len() >= p)
}

/// d^p on W^p: the first sum of d, reduced mod F_{p-1}C.
pub fn homotopy_d(
    u: &Enveloping,
    p: usize,
    elt: &KoszulChainElement,
) -> Result<KoszulChainElement> {
    check_piece(elt, p)?;
    Ok(drop_below(
        elt.map_linear(|(m, w)| koszul_d_basis(u, m, w, DPart::Leading)),
        p,
    ))
}

/// t^p(e_{k_1}⋯e_{k_m} ⊗ ⟨l⟩) = Σ_i ∏_{h>i} ε(|e_{k_i}|, |e_{k_h}|) e_{k_1}⋯ê_{k_i}⋯e_{k_m} ⊗ ⟨e_{k_i}, l⟩.
pub fn homotopy_t(
    u: &Enveloping,
    p: usize,
    elt: &KoszulChainElement,
) -> Result<KoszulChainElement> {
    check_piece(elt, p)?;
    let lie = u.lie();
    let out = elt.map_linear(|(m, w)| {
        let k = m.indices();
        let mut acc = KoszulChainElement::zero(u.field());
        for i in 0..k.len() {
            let c = signed_root(lie, false, lie.eps_exp_words(&k[i..=i], &k[i + 1..]));
            let rest = PbwMonomial::new(lie, without(k, &[i])).expect("sub-monomial is ordered");
            let mut word = vec![k[i]];
            word.extend_from_slice(w.indices());
            if let Some((s, wm)) = wedge_sort(lie, &word) {
                acc.add_term((rest, wm), &c * &s);
            }
        }
        acc
    });
    Ok(drop_below(out, p))
}

/// d^p t^p + t^p d^p = p·Id on every basis element of W^p, 1 ≤ p ≤ `p_max`.
pub fn homotopy_check(u: &Enveloping, p_max: usize) -> ValidationReport {
    let f = u.field();
    let mut report = ValidationReport::new("homotopy");
    let mut check = Check::new("dt_plus_td");
    for p in 1..=p_max {
        let scale = f.from_int(p as i64);
        for n in 0..=p {
            for (m, w) in chain_basis(u, n, p - n) {
                if m.len() != p - n {
                    continue;
                }
                let e = KoszulChainElement::basis(f, (m, w));
                let dt = homotopy_d(u, p, &homotopy_t(u, p, &e).expect("in W^p")).expect("in W^p");
                let td = homotopy_t(u, p, &homotopy_d(u, p, &e).expect("in W^p")).expect("in W^p");
                let lhs = dt.plus(&td);
                let rhs = e.scaled(&scale);
                check.record(lhs == rhs, || {
                    format!(
                        "p={p}, on {}: (dt+td) = {}",
                        format_chain(u, &e),
                        format_chain(u, &lhs)
                    )
                });
            }
        }
    }
    report.push(check);
    report
}

/// Matrix of δ^n and its bases, for one internal degree h.
#[derive(Debug, Clone)]
pub struct CochainBlock {
    pub n: usize,
    pub h: GroupElement,
    /// Pairs (w, j): the cochain sending w to m_j and other basis wedges to 0.
    pub domain: Vec<(WedgeMonomial, usize)>,
    pub codomain: Vec<(WedgeMonomial, usize)>,
    pub matrix: ExactMatrix,
}

/// Cochain basis of Hom_gr(∧^n L, M): pairs (w, j) with deg m_j = deg w.
/// With `graded = false`, every pair (the full Hom space).
fn cochain_basis(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n: usize,
    graded: bool,
) -> Vec<(WedgeMonomial, usize)> {
    let mut out = Vec::new();
    for w in wedge_basis(lie, n) {
        let d = lie.word_degree(w.indices());
        for j in 0..m.dim() {
            if !graded || m.degree(j) == &d {
                out.push((w.clone(), j));
            }
        }
    }
    out
}

/// δ^n evaluated on a wedge word of length n+1: a list of terms
/// `coeff · [x.] f(w')`, where `x` is an optional acting generator.
fn delta_terms(lie: &ColorLieAlgebra, x: &[usize]) -> Vec<(WedgeMonomial, Scalar, Option<usize>)> {
    let mut terms = Vec::new();
    let n1 = x.len();
    for i in 0..n1 {
        let c = signed_root(lie, i % 2 == 1, eps_prefix(lie, x, i));
        terms.push((WedgeMonomial(without(x, &[i])), c, Some(x[i])));
    }
    for i in 0..n1 {
        for j in i + 1..n1 {
            let e = eps_prefix(lie, x, i) + eps_prefix(lie, x, j) + lie.eps_exp(x[j], x[i]);
            let c = signed_root(lie, (i + j) % 2 == 1, e);
            let rest = without(x, &[i, j]);
            for (&k, ck) in lie.bracket_basis(x[i], x[j]) {
                let mut word = vec![k];
                word.extend_from_slice(&rest);
                if let Some((s, wm)) = wedge_sort(lie, &word) {
                    terms.push((wm, &(&c * ck) * &s, None));
                }
            }
        }
    }
    terms
}

fn delta_matrix(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    domain: &[(WedgeMonomial, usize)],
    codomain: &[(WedgeMonomial, usize)],
) -> ExactMatrix {
    let f = lie.field();
    let mut mat = ExactMatrix::zeros(f, codomain.len(), domain.len());
    let mut col_index: BTreeMap<&WedgeMonomial, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, (w, j)) in domain.iter().enumerate() {
        col_index.entry(w).or_default().push((c, *j));
    }
    let mut row_index: BTreeMap<(&WedgeMonomial, usize), usize> = BTreeMap::new();
    for (r, (w, j)) in codomain.iter().enumerate() {
        row_index.insert((w, *j), r);
    }
    let row_wedges: BTreeSet<&WedgeMonomial> = codomain.iter().map(|(w, _)| w).collect();
    for w2 in row_wedges {
        for (w1, coeff, act) in delta_terms(lie, w2.indices()) {
            let Some(cols) = col_index.get(&w1) else {
                continue;
            };
            for &(c, j) in cols {
                match act {
                    None => {
                        if let Some(&r) = row_index.get(&(w2, j)) {
                            mat.add_at(r, c, &coeff);
                        }
                    }
                    Some(x) => {
                        let a = m.action(x);
                        for r_m in 0..m.dim() {
                            let v = a.get(r_m, j);
                            if v.is_zero() {
                                continue;
                            }
                            if let Some(&r) = row_index.get(&(w2, r_m)) {
                                mat.add_at(r, c, &(&coeff * v));
                            }
                        }
                    }
                }
            }
        }
    }
    mat
}

/// δ^n: Hom_gr(∧^n L, M[h]) → Hom_gr(∧^{n+1} L, M[h]).
pub fn ce_delta(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n: usize,
    h: &GroupElement,
) -> ExactMatrix {
    ce_block(lie, m, n, h).matrix
}

pub fn ce_block(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n: usize,
    h: &GroupElement,
) -> CochainBlock {
    let mh = shift(lie, m, h);
    let domain = cochain_basis(lie, &mh, n, true);
    let codomain = cochain_basis(lie, &mh, n + 1, true);
    let matrix = delta_matrix(lie, &mh, &domain, &codomain);
    CochainBlock {
        n,
        h: h.clone(),
        domain,
        codomain,
        matrix,
    }
}

/// Internal degrees h for which some cochain of degree ≤ `n_max + 1` exists.
pub fn ce_support(lie: &ColorLieAlgebra, m: &GradedModule, n_max: usize) -> Vec<GroupElement> {
    let g = lie.group();
    let mut out = BTreeSet::new();
    for n in 0..=n_max + 1 {
        let degs: BTreeSet<GroupElement> = wedge_basis(lie, n)
            .iter()
            .map(|w| lie.word_degree(w.indices()))
            .collect();
        for d in &degs {
            for md in m.degree_support() {
                out.insert(g.mul(&md, &g.inv(d)));
            }
        }
    }
    out.into_iter().collect()
}

/// All blocks δ^n, 0 ≤ n ≤ `n_max`, over the degree window.
pub fn ce_complex(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n_max: usize,
    window: &DegreeWindow,
) -> Result<Vec<CochainBlock>> {
    let hs = window.resolve(lie.group(), || ce_support(lie, m, n_max))?;
    let jobs: Vec<(usize, GroupElement)> = hs
        .iter()
        .flat_map(|h| (0..=n_max).map(move |n| (n, h.clone())))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(n, h)| ce_block(lie, m, *n, h))
        .collect())
}

/// dim H^n(L, M)_h = dim ker δ^n - rank δ^{n-1}, over the degree window.
pub fn lie_cohomology_dims(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n_max: usize,
    window: &DegreeWindow,
) -> Result<DimTable> {
    let blocks = ce_complex(lie, m, n_max, window)?;
    let ranks: Vec<(usize, usize)> = blocks.par_iter().map(|b| b.matrix.rank_kernel()).collect();
    let mut by_key: BTreeMap<(usize, GroupElement), (usize, usize)> = BTreeMap::new();
    for (b, rk) in blocks.iter().zip(ranks) {
        by_key.insert((b.n, b.h.clone()), rk);
    }
    let mut table = DimTable::new();
    for ((n, h), (_, ker)) in &by_key {
        let prev_rank = if *n == 0 {
            0
        } else {
            by_key[&(n - 1, h.clone())].0
        };
        table.insert(*n, h.clone(), ker - prev_rank);
    }
    Ok(table)
}

/// Cohomology of the full complex Hom_𝕂(∧^n L, M) computed in one pass, with
/// no splitting by internal degree. Entry n is the total dimension in degree n.
pub fn lie_cohomology_total(lie: &ColorLieAlgebra, m: &GradedModule, n_max: usize) -> Vec<usize> {
    let mats: Vec<ExactMatrix> = (0..=n_max)
        .map(|n| {
            let domain = cochain_basis(lie, m, n, false);
            let codomain = cochain_basis(lie, m, n + 1, false);
            delta_matrix(lie, m, &domain, &codomain)
        })
        .collect();
    let rk: Vec<(usize, usize)> = mats.par_iter().map(ExactMatrix::rank_kernel).collect();
    (0..=n_max)
        .map(|n| rk[n].1 - if n == 0 { 0 } else { rk[n - 1].0 })
        .collect()
}

/// δ^{n+1} ∘ δ^n = 0 on every block of the window.
pub fn check_delta_squared(
    lie: &ColorLieAlgebra,
    m: &GradedModule,
    n_max: usize,
    window: &DegreeWindow,
) -> Result<Check> {
    let blocks = ce_complex(lie, m, n_max + 1, window)?;
    let mut by_key: BTreeMap<(usize, GroupElement), &CochainBlock> = BTreeMap::new();
    for b in &blocks {
        by_key.insert((b.n, b.h.clone()), b);
    }
    let mut check = Check::new("delta_squared");
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
            format!("δ^{}∘δ^{n} ≠ 0 at h = {h}", n + 1)
        });
    }
    Ok(check)
}

/// Maps a PBW/wedge pair to the element `u ⊗ ⟨w⟩` with coefficient 1.
pub fn chain_element(u: &Enveloping, m: PbwMonomial, w: WedgeMonomial) -> KoszulChainElement {
    KoszulChainElement::basis(u.field(), (m, w))
}

/// A wedge monomial from raw indices, checked against the ordering rule.
pub fn wedge_monomial(lie: &ColorLieAlgebra, indices: Vec<usize>) -> Result<WedgeMonomial> {
    match wedge_sort(lie, &indices) {
        Some((c, w)) if c.is_one() && w.indices() == indices.as_slice() => Ok(w),
        _ => Err(Error::Invalid(format!(
            "{indices:?} is not an ordered wedge monomial"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn heis() -> Enveloping {
        Enveloping::new(fixtures::heis3())
    }

    fn ch(u: &Enveloping, m: &[usize], w: &[usize]) -> KoszulChainElement {
        chain_element(
            u,
            PbwMonomial::new(u.lie(), m.to_vec()).unwrap(),
            wedge_monomial(u.lie(), w.to_vec()).unwrap(),
        )
    }

    #[test]
    fn wedge_bases() {
        let l = fixtures::heis3();
        let names = |n| -> Vec<Vec<usize>> {
            wedge_basis(&l, n)
                .into_iter()
                .map(|w| w.indices().to_vec())
                .collect()
        };
        assert_eq!(names(1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            names(2),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]
        );
        let a = fixtures::abelian_odd(1);
        for n in 0..5 {
            assert_eq!(wedge_basis(&a, n).len(), 1);
        }
    }

    #[test]
    fn wedge_relations() {
        let l = fixtures::heis3();
        let one = l.field().one();
        let yx = wedge_normalize(&l, &[1, 0], one.clone());
        assert_eq!(
            yx,
            WedgeElement::basis(l.field(), WedgeMonomial(vec![0, 1]))
        );
        assert!(wedge_normalize(&l, &[2, 2], one.clone()).is_zero());
        assert_eq!(
            wedge_normalize(&l, &[0, 0], one),
            WedgeElement::basis(l.field(), WedgeMonomial(vec![0, 0]))
        );
    }

    #[test]
    fn differential_examples() {
        let u = heis();
        let d1 = koszul_d(&u, 1, &ch(&u, &[1], &[0])).unwrap();
        // y·x = -x.y + z
        assert_eq!(format_chain(&u, &d1), "z⊗<> - x.y⊗<>");
        let d2 = koszul_d(&u, 2, &ch(&u, &[], &[0, 1])).unwrap();
        assert_eq!(format_chain(&u, &d2), "-1⊗<z> + x⊗<y> + y⊗<x>");
        assert!(koszul_d(&u, 1, &d2).unwrap().is_zero());
        assert!(koszul_d(&u, 0, &ch(&u, &[0], &[])).unwrap().is_zero());
        assert!(matches!(
            koszul_d(&u, 1, &d2.plus(&ch(&u, &[], &[]))),
            Err(Error::WrongChainDegree { .. })
        ));
    }

    #[test]
    fn theta_sigma_examples() {
        let u = heis();
        let s = koszul_theta_sigma(&u, 0, &ch(&u, &[], &[]), ThetaSigma::Sigma).unwrap();
        assert_eq!(s, ch(&u, &[], &[0]));
        let t = koszul_theta_sigma(&u, 0, &ch(&u, &[], &[1]), ThetaSigma::Theta).unwrap();
        assert_eq!(format_chain(&u, &t), "1⊗<z> - x⊗<y>");
        let t = koszul_theta_sigma(&u, 2, &ch(&u, &[], &[]), ThetaSigma::Theta).unwrap();
        assert_eq!(format_chain(&u, &t), "-z⊗<>");
    }

    #[test]
    fn homotopy_examples() {
        let u = heis();
        let f = u.field();
        let e = ch(&u, &[], &[0, 1]);
        let dt = homotopy_d(&u, 2, &homotopy_t(&u, 2, &e).unwrap()).unwrap();
        let td = homotopy_t(&u, 2, &homotopy_d(&u, 2, &e).unwrap()).unwrap();
        assert_eq!(dt.plus(&td), e.scaled(&f.from_int(2)));
        let x = ch(&u, &[0], &[]);
        assert_eq!(homotopy_t(&u, 1, &x).unwrap(), ch(&u, &[], &[0]));
        assert!(matches!(
            homotopy_t(&u, 2, &x),
            Err(Error::NotInFiltrationPiece {
                p: 2,
                pbw_len: 1,
                wedge_len: 0
            })
        ));
    }

    #[test]
    fn identities_on_heis3_small() {
        let u = heis();
        let rep = check_koszul_identities(&u, 2, 2);
        assert!(rep.passed(), "{rep}");
        let rep = homotopy_check(&u, 2);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn delta_on_trivial_module() {
        let l = fixtures::heis3();
        let k = GradedModule::trivial(&l);
        let e = l.group().identity();
        assert!(ce_delta(&l, &k, 0, &e).is_zero());
        let d1 = ce_delta(&l, &k, 1, &e);
        assert_eq!(d1.cols(), 1);
        assert_eq!(d1.rank(), 1);
        let a = fixtures::abelian_odd(2);
        let ka = GradedModule::trivial(&a);
        for n in 0..4 {
            for h in a.group().elements().unwrap() {
                assert!(ce_delta(&a, &ka, n, &h).is_zero());
            }
        }
    }

    #[test]
    fn h0_of_trivial_module() {
        for l in [fixtures::heis3(), fixtures::glcolor()] {
            let k = GradedModule::trivial(&l);
            let t = lie_cohomology_dims(&l, &k, 0, &DegreeWindow::All).unwrap();
            assert_eq!(t.get(0, &l.group().identity()), Some(1));
            assert_eq!(t.total(0), 1);
        }
    }
}
