//! The universal enveloping algebra U(L) in its PBW basis, with the color Hopf structure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::color_lie::ColorLieAlgebra;
use crate::error::{Error, Result};
use crate::grading::{Bicharacter, GroupElement};
use crate::lincomb::LinComb;
use crate::report::{Check, ValidationReport};
use crate::scalars::{CyclotomicField, Scalar};

/// Ordered monomial `x_{k_1} ⋯ x_{k_m}`: non-decreasing, strictly increasing at odd indices.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PbwMonomial(Vec<usize>);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Checks the ordering rule against `lie`.
    pub fn new(lie: &ColorLieAlgebra, indices: Vec<usize>) -> Result<Self> {
        for &i in &indices {
            if i >= lie.dim() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: lie.dim(),
                });
            }
        }
        if !is_pbw(lie, &indices) {
            return Err(Error::Invalid(format!(
                "{indices:?} is not an ordered PBW monomial"
            )));
        }
        Ok(PbwMonomial(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type UElement = LinComb<PbwMonomial>;
pub type TensorUElement = LinComb<(PbwMonomial, PbwMonomial)>;
pub type TripleTensor = LinComb<(PbwMonomial, PbwMonomial, PbwMonomial)>;

fn is_pbw(lie: &ColorLieAlgebra, w: &[usize]) -> bool {
    w.windows(2)
        .all(|p| p[0] < p[1] || (p[0] == p[1] && !lie.is_odd(p[0])))
}

/// First position `p` where `w[p], w[p+1]` is a redex, if any.
fn first_redex(lie: &ColorLieAlgebra, w: &[usize]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&p| is_redex(lie, w, p))
}

fn is_redex(lie: &ColorLieAlgebra, w: &[usize], p: usize) -> bool {
    w[p] > w[p + 1] || (w[p] == w[p + 1] && lie.is_odd(w[p]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiDirection {
    Forward,
    Inverse,
}

/// U(L) for a fixed color Lie algebra, caching normal forms of words.
pub struct Enveloping {
    lie: ColorLieAlgebra,
    cache: Mutex<HashMap<Vec<usize>, UElement>>,
}

impl Clone for Enveloping {
    fn clone(&self) -> Self {
        Enveloping::new(self.lie.clone())
    }
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping")
            .field("lie", &self.lie)
            .finish()
    }
}

impl Enveloping {
    pub fn new(lie: ColorLieAlgebra) -> Self {
        Enveloping {
            lie,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &ColorLieAlgebra {
        &self.lie
    }

    pub fn chi(&self) -> &Bicharacter {
        self.lie.chi()
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.lie.field()
    }

    pub fn one(&self) -> UElement {
        UElement::basis(self.field(), PbwMonomial::unit())
    }

    pub fn generator(&self, i: usize) -> UElement {
        UElement::basis(self.field(), PbwMonomial(vec![i]))
    }

    pub fn monomial_degree(&self, m: &PbwMonomial) -> GroupElement {
        self.lie.word_degree(&m.0)
    }

    /// Exponent of ε(|m1|, |m2|).
    fn eps_exp(&self, m1: &[usize], m2: &[usize]) -> u32 {
        self.lie.eps_exp_words(m1, m2)
    }

    fn rescale(&self, c: &Scalar, k: u32) -> Scalar {
        if k == 0 {
            c.clone()
        } else {
            c.mul_root(k as i64)
        }
    }

    fn chi_exp(&self, chi: &Bicharacter, m1: &PbwMonomial, m2: &PbwMonomial) -> u32 {
        if chi == self.lie.chi() {
            self.eps_exp(&m1.0, &m2.0)
        } else {
            chi.exponent(&self.monomial_degree(m1), &self.monomial_degree(m2))
        }
    }

    fn check_chi(&self, chi: &Bicharacter) {
        assert_eq!(
            chi.root_order,
            self.lie.root_order(),
            "bicharacter must take values in the algebra's field"
        );
    }

    /// Rewrites `coeff · x_{w_1} ⋯ x_{w_k}` into the PBW basis.
    pub fn normal_form(&self, word: &[usize], coeff: Scalar) -> Result<UElement> {
        for &i in word {
            if i >= self.lie.dim() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.lie.dim(),
                });
            }
        }
        Ok(self.nf(word).scaled(&coeff))
    }

    /// Normal form of a word with coefficient 1, leftmost redex first.
    pub(crate) fn nf(&self, word: &[usize]) -> UElement {
        let Some(p) = first_redex(&self.lie, word) else {
            return UElement::basis(self.field(), PbwMonomial(word.to_vec()));
        };
        if let Some(hit) = self.cache.lock().expect("cache lock").get(word) {
            return hit.clone();
        }
        let mut out = UElement::zero(self.field());
        for (w, c) in self.rewrite_at(word, p) {
            out.add_scaled(&self.nf(&w), &c);
        }
        self.cache
            .lock()
            .expect("cache lock")
            .insert(word.to_vec(), out.clone());
        out
    }

    /// One rewrite step at the redex `(w[p], w[p+1])`, as a list of words with coefficients.
    pub fn rewrite_at(&self, word: &[usize], p: usize) -> Vec<(Vec<usize>, Scalar)> {
        let (j, i) = (word[p], word[p + 1]);
        let mut out = Vec::new();
        let splice = |mid: &[usize]| {
            let mut w = word[..p].to_vec();
            w.extend_from_slice(mid);
            w.extend_from_slice(&word[p + 2..]);
            w
        };
        let f = self.field();
        if j > i {
            // x_j x_i = ε(|x_j|, |x_i|) x_i x_j + [x_j, x_i]
            out.push((splice(&[i, j]), self.lie.eps(j, i)));
            for (&k, c) in self.lie.bracket_basis(j, i) {
                out.push((splice(&[k]), c.clone()));
            }
        } else {
            // odd square: x_i x_i = ½ [x_i, x_i]
            let half = f.from_ratio(1, 2).expect("nonzero denominator");
            for (&k, c) in self.lie.bracket_basis(i, i) {
                out.push((splice(&[k]), c * &half));
            }
        }
        out
    }

    pub fn multiply(&self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::zero(self.field());
        for (ma, ca) in a {
            for (mb, cb) in b {
                out.add_scaled(&self.mul_monomials(ma, mb), &(ca * cb));
            }
        }
        out
    }

    pub fn mul_monomials(&self, a: &PbwMonomial, b: &PbwMonomial) -> UElement {
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        self.nf(&w)
    }

    /// `a ·^χ b = χ(|a|, |b|) a b` on homogeneous parts.
    pub fn twisted_product(&self, a: &UElement, b: &UElement, chi: &Bicharacter) -> UElement {
        self.check_chi(chi);
        let mut out = UElement::zero(self.field());
        for (ma, ca) in a {
            for (mb, cb) in b {
                let c = self.rescale(&(ca * cb), self.chi_exp(chi, ma, mb));
                out.add_scaled(&self.mul_monomials(ma, mb), &c);
            }
        }
        out
    }

    /// `a ·_χ b = χ(|a|, |b|) b a` on homogeneous parts.
    pub fn twisted_opposite(&self, a: &UElement, b: &UElement, chi: &Bicharacter) -> UElement {
        self.check_chi(chi);
        let mut out = UElement::zero(self.field());
        for (ma, ca) in a {
            for (mb, cb) in b {
                let c = self.rescale(&(ca * cb), self.chi_exp(chi, ma, mb));
                out.add_scaled(&self.mul_monomials(mb, ma), &c);
            }
        }
        out
    }

    /// `(a ⊗ b) * (a' ⊗ b') = χ(|b|, |a'|) a a' ⊗ b b'`.
    pub fn lusztig_multiply(
        &self,
        t1: &TensorUElement,
        t2: &TensorUElement,
        chi: &Bicharacter,
    ) -> TensorUElement {
        self.check_chi(chi);
        let mut out = TensorUElement::zero(self.field());
        for ((a, b), c1) in t1 {
            for ((a2, b2), c2) in t2 {
                let c = self.rescale(&(c1 * c2), self.chi_exp(chi, b, a2));
                let left = self.mul_monomials(a, a2);
                let right = self.mul_monomials(b, b2);
                for (l, cl) in &left {
                    for (r, cr) in &right {
                        out.add_term((l.clone(), r.clone()), &(&c * cl) * cr);
                    }
                }
            }
        }
        out
    }

    /// Δ on a PBW monomial: the product of `1 ⊗ x + x ⊗ 1` over its letters.
    ///
    /// Each subset of positions goes to the left factor; the sign collects
    /// ε(|x_i|, |x_j|) for every right-factor letter i preceding a left-factor letter j.
    pub fn coproduct_monomial(&self, m: &PbwMonomial) -> TensorUElement {
        let f = self.field();
        let k = m.0.len();
        let mut out = TensorUElement::zero(f);
        for mask in 0u64..(1u64 << k) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut e = 0u32;
            for (pos, &letter) in m.0.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    e += self.eps_exp(&right, &[letter]);
                    left.push(letter);
                } else {
                    right.push(letter);
                }
            }
            let n = self.lie.root_order();
            out.add_term(
                (PbwMonomial(left), PbwMonomial(right)),
                f.root((e % n) as i64),
            );
        }
        out
    }

    pub fn coproduct(&self, u: &UElement) -> TensorUElement {
        let mut out = TensorUElement::zero(self.field());
        for (m, c) in u {
            out.add_scaled(&self.coproduct_monomial(m), c);
        }
        out
    }

    pub fn counit(&self, u: &UElement) -> Scalar {
        u.coeff(&PbwMonomial::unit())
    }

    /// S(x_{k_1} ⋯ x_{k_m}) = (-1)^m ∏_{i<j} ε(|x_{k_i}|, |x_{k_j}|) x_{k_m} ⋯ x_{k_1}.
    pub fn antipode_monomial(&self, m: &PbwMonomial) -> UElement {
        let e = self.pair_exp(&m.0, false);
        self.reversed_signed(m, e)
    }

    /// S⁻¹(x_{k_1} ⋯ x_{k_m}) = (-1)^m ∏_{i<j} ε(|x_{k_j}|, |x_{k_i}|)⁻¹ x_{k_m} ⋯ x_{k_1}.
    pub fn inverse_antipode_monomial(&self, m: &PbwMonomial) -> UElement {
        let n = self.lie.root_order();
        let e = (n - self.pair_exp(&m.0, true)) % n;
        self.reversed_signed(m, e)
    }

    /// Σ_{i<j} of the exponent of ε(|x_{k_i}|, |x_{k_j}|), or of ε(|x_{k_j}|, |x_{k_i}|) if `swapped`.
    fn pair_exp(&self, w: &[usize], swapped: bool) -> u32 {
        let n = self.lie.root_order();
        let mut e = 0u32;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                e += if swapped {
                    self.lie.eps_exp(w[j], w[i])
                } else {
                    self.lie.eps_exp(w[i], w[j])
                };
            }
        }
        e % n
    }

    fn reversed_signed(&self, m: &PbwMonomial, e: u32) -> UElement {
        let f = self.field();
        let mut rev = m.0.clone();
        rev.reverse();
        let mut c = f.root(e as i64);
        if m.0.len() % 2 == 1 {
            c = -c;
        }
        self.nf(&rev).scaled(&c)
    }

    pub fn antipode(&self, u: &UElement) -> UElement {
        u.map_linear(|m| self.antipode_monomial(m))
    }

    pub fn inverse_antipode(&self, u: &UElement) -> UElement {
        u.map_linear(|m| self.inverse_antipode_monomial(m))
    }

    /// Ψ(a ⊗ a') = Σ a S(a'_1) ⊗ a'_2 and Ψ⁻¹(a ⊗ a') = Σ a a'_1 ⊗ a'_2.
    pub fn psi(&self, t: &TensorUElement, dir: PsiDirection) -> TensorUElement {
        let mut out = TensorUElement::zero(self.field());
        for ((a, a2), c) in t {
            for ((p, q), cd) in &self.coproduct_monomial(a2) {
                let mid = match dir {
                    PsiDirection::Forward => self.antipode_monomial(p),
                    PsiDirection::Inverse => UElement::basis(self.field(), p.clone()),
                };
                let left = self.multiply(&UElement::basis(self.field(), a.clone()), &mid);
                let s = c * cd;
                for (l, cl) in &left {
                    out.add_term((l.clone(), q.clone()), &s * cl);
                }
            }
        }
        out
    }

    /// Right action of U on (U ⊗ U)^χ: `(a ⊗ a') b = (a ⊗ a') * Δ(b)`.
    pub fn tensor_right_action(&self, t: &TensorUElement, b: &UElement) -> TensorUElement {
        let chi = self.lie.chi().clone();
        self.lusztig_multiply(t, &self.coproduct(b), &chi)
    }

    /// Free right action on V ⊗ U: `(v ⊗ a) b = v ⊗ a b`.
    pub fn free_right_action(&self, t: &TensorUElement, b: &UElement) -> TensorUElement {
        let mut out = TensorUElement::zero(self.field());
        for ((v, a), c) in t {
            let ab = self.multiply(&UElement::basis(self.field(), a.clone()), b);
            for (m, cm) in &ab {
                out.add_term((v.clone(), m.clone()), c * cm);
            }
        }
        out
    }

    /// All PBW monomials of length at most `max_len`, in the monomial order.
    pub fn pbw_monomials(&self, max_len: usize) -> Vec<PbwMonomial> {
        let mut out = vec![PbwMonomial::unit()];
        let mut frontier = vec![Vec::<usize>::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for i in start..self.lie.dim() {
                    if let Some(&last) = w.last() {
                        if last == i && self.lie.is_odd(i) {
                            continue;
                        }
                    }
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(PbwMonomial));
            frontier = next;
        }
        out.sort();
        out
    }

    /// The full PBW basis when U(L) is finite-dimensional.
    ///
    /// Enumerates monomials by length and fails once more than `cap` have been
    /// produced without the enumeration closing.
    pub fn finite_basis(&self, cap: usize) -> Result<Vec<PbwMonomial>> {
        let mut out = vec![PbwMonomial::unit()];
        let mut frontier = vec![Vec::<usize>::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for i in start..self.lie.dim() {
                    if w.last() == Some(&i) && self.lie.is_odd(i) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(PbwMonomial));
            if out.len() > cap {
                let obstruction = match (0..self.lie.dim()).find(|&i| !self.lie.is_odd(i)) {
                    Some(i) => format!(
                        "powers of the even generator {} are linearly independent",
                        self.lie.name(i)
                    ),
                    None => "the PBW basis has more monomials than the cap".to_string(),
                };
                return Err(Error::NotFiniteDimensional { cap, obstruction });
            }
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    pub fn format_monomial(&self, m: &PbwMonomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let names: Vec<&str> = m.0.iter().map(|&i| self.lie.name(i)).collect();
        names.join(".")
    }

    pub fn format_u(&self, u: &UElement) -> String {
        u.display_with(|m| self.format_monomial(m))
    }

    pub fn format_tensor(&self, t: &TensorUElement) -> String {
        t.display_with(|(a, b)| format!("{}⊗{}", self.format_monomial(a), self.format_monomial(b)))
    }

    fn triple_left(&self, t: &TensorUElement) -> TripleTensor {
        let mut out = TripleTensor::zero(self.field());
        for ((p, q), c) in t {
            for ((r, s), cd) in &self.coproduct_monomial(p) {
                out.add_term((r.clone(), s.clone(), q.clone()), c * cd);
            }
        }
        out
    }

    fn triple_right(&self, t: &TensorUElement) -> TripleTensor {
        let mut out = TripleTensor::zero(self.field());
        for ((p, q), c) in t {
            for ((r, s), cd) in &self.coproduct_monomial(q) {
                out.add_term((p.clone(), r.clone(), s.clone()), c * cd);
            }
        }
        out
    }

    /// Σ f(a_1) g(a_2) style contraction of a tensor into U through the product.
    fn contract(
        &self,
        t: &TensorUElement,
        left: impl Fn(&PbwMonomial) -> UElement,
        right: impl Fn(&PbwMonomial) -> UElement,
    ) -> UElement {
        let mut out = UElement::zero(self.field());
        for ((p, q), c) in t {
            out.add_scaled(&self.multiply(&left(p), &right(q)), c);
        }
        out
    }
}

pub fn normal_form(u: &Enveloping, word: &[usize], coeff: Scalar) -> Result<UElement> {
    u.normal_form(word, coeff)
}

pub fn u_multiply(u: &Enveloping, a: &UElement, b: &UElement) -> UElement {
    u.multiply(a, b)
}

pub fn twisted_product(u: &Enveloping, a: &UElement, b: &UElement, chi: &Bicharacter) -> UElement {
    u.twisted_product(a, b, chi)
}

pub fn lusztig_multiply(
    u: &Enveloping,
    t1: &TensorUElement,
    t2: &TensorUElement,
    chi: &Bicharacter,
) -> TensorUElement {
    u.lusztig_multiply(t1, t2, chi)
}

pub fn coproduct(u: &Enveloping, a: &UElement) -> TensorUElement {
    u.coproduct(a)
}

pub fn counit(u: &Enveloping, a: &UElement) -> Scalar {
    u.counit(a)
}

pub fn antipode(u: &Enveloping, a: &UElement) -> UElement {
    u.antipode(a)
}

pub fn psi_map(u: &Enveloping, t: &TensorUElement, dir: PsiDirection) -> TensorUElement {
    u.psi(t, dir)
}

/// Checks that every rewrite choice on every word of length ≤ `max_len` leads to
/// the same normal form as the leftmost strategy.
///
/// By induction on the rewrite order this certifies that all maximal rewrite
/// sequences of these words agree.
pub fn check_confluence(u: &Enveloping, max_len: usize) -> ValidationReport {
    let lie = u.lie();
    let mut report = ValidationReport::new("pbw_confluence");
    let mut check = Check::new("confluence");
    let mut words = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..lie.dim() {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        for w in &next {
            let reference = u.nf(w);
            for p in 0..w.len() - 1 {
                if !is_redex(lie, w, p) {
                    continue;
                }
                let mut via = UElement::zero(u.field());
                for (v, c) in u.rewrite_at(w, p) {
                    via.add_scaled(&u.nf(&v), &c);
                }
                check.record(via == reference, || {
                    let names: Vec<&str> = w.iter().map(|&i| lie.name(i)).collect();
                    format!(
                        "word {} rewritten at position {p} gives {}, leftmost strategy gives {}",
                        names.join("."),
                        u.format_u(&via),
                        u.format_u(&reference)
                    )
                });
            }
        }
        words = next;
    }
    report.push(check);
    report
}

/// Number of random triples used for the Ψ right-module check.
pub const PSI_SAMPLES: usize = 100;

/// Exhaustive Hopf axiom checks on PBW monomials of length ≤ `max_word_len`.
pub fn check_hopf_axioms(u: &Enveloping, max_word_len: usize) -> ValidationReport {
    let f = u.field();
    let chi = u.chi().clone();
    let mons = u.pbw_monomials(max_word_len);
    let mut report = ValidationReport::new("hopf");
    let show = |m: &PbwMonomial| u.format_monomial(m);

    let mut coassoc = Check::new("coassociativity");
    let mut counit_l = Check::new("counit_left");
    let mut counit_r = Check::new("counit_right");
    let mut t3_l = Check::new("antipode_left");
    let mut t3_r = Check::new("antipode_right");
    let mut involution = Check::new("antipode_involution");
    let mut inv = Check::new("inverse_antipode_is_inverse");
    for m in &mons {
        let a = UElement::basis(f, m.clone());
        let d = u.coproduct_monomial(m);
        let lhs = u.triple_left(&d);
        let rhs = u.triple_right(&d);
        coassoc.record(lhs == rhs, || format!("a = {}", show(m)));

        let mut l = UElement::zero(f);
        let mut r = UElement::zero(f);
        for ((p, q), c) in &d {
            l.add_scaled(
                &UElement::basis(f, q.clone()),
                &(c * &u.counit(&UElement::basis(f, p.clone()))),
            );
            r.add_scaled(
                &UElement::basis(f, p.clone()),
                &(c * &u.counit(&UElement::basis(f, q.clone()))),
            );
        }
        counit_l.record(l == a, || {
            format!("a = {}: (ε⊗id)Δ(a) = {}", show(m), u.format_u(&l))
        });
        counit_r.record(r == a, || {
            format!("a = {}: (id⊗ε)Δ(a) = {}", show(m), u.format_u(&r))
        });

        let expected = u.one().scaled(&u.counit(&a));
        let s_left = u.contract(
            &d,
            |p| u.antipode_monomial(p),
            |q| UElement::basis(f, q.clone()),
        );
        let s_right = u.contract(
            &d,
            |p| UElement::basis(f, p.clone()),
            |q| u.antipode_monomial(q),
        );
        t3_l.record(s_left == expected, || {
            format!("a = {}: Σ S(a_1)a_2 = {}", show(m), u.format_u(&s_left))
        });
        t3_r.record(s_right == expected, || {
            format!("a = {}: Σ a_1 S(a_2) = {}", show(m), u.format_u(&s_right))
        });

        let ss = u.antipode(&u.antipode_monomial(m));
        involution.record(ss == a, || {
            format!("a = {}: S(S(a)) = {}", show(m), u.format_u(&ss))
        });
        let a1 = u.inverse_antipode(&u.antipode_monomial(m));
        let a2 = u.antipode(&u.inverse_antipode_monomial(m));
        inv.record(a1 == a && a2 == a, || {
            format!(
                "a = {}: S⁻¹S(a) = {}, SS⁻¹(a) = {}",
                show(m),
                u.format_u(&a1),
                u.format_u(&a2)
            )
        });
    }

    let mut multiplicative = Check::new("coproduct_multiplicative");
    let mut lemma3 = Check::new("antipode_antihomomorphism");
    let mut remark2 = Check::new("inverse_antipode_identity");
    for m1 in &mons {
        for m2 in &mons {
            let a = UElement::basis(f, m1.clone());
            let b = UElement::basis(f, m2.clone());
            let ab = u.mul_monomials(m1, m2);
            let lhs = u.coproduct(&ab);
            let rhs =
                u.lusztig_multiply(&u.coproduct_monomial(m1), &u.coproduct_monomial(m2), &chi);
            multiplicative.record(lhs == rhs, || {
                format!(
                    "({}, {}): Δ(ab) - Δ(a)*Δ(b) = {}",
                    show(m1),
                    show(m2),
                    u.format_tensor(&lhs.minus(&rhs))
                )
            });

            // S(aa') = S(a) ·_χ S(a')
            let s_ab = u.antipode(&ab);
            let tw = u.twisted_opposite(&u.antipode(&a), &u.antipode(&b), &chi);
            lemma3.record(s_ab == tw, || {
                format!(
                    "({}, {}): S(ab) - S(a)·_χS(b) = {}",
                    show(m1),
                    show(m2),
                    u.format_u(&s_ab.minus(&tw))
                )
            });

            // S⁻¹(a) S⁻¹(a') = χ(|a|,|a'|) S⁻¹(a'a)
            let lhs = u.multiply(&u.inverse_antipode(&a), &u.inverse_antipode(&b));
            let e = u.eps_exp(m1.indices(), m2.indices());
            let rhs = u
                .inverse_antipode(&u.mul_monomials(m2, m1))
                .scaled(&f.root(e as i64));
            remark2.record(lhs == rhs, || {
                format!(
                    "({}, {}): residual {}",
                    show(m1),
                    show(m2),
                    u.format_u(&lhs.minus(&rhs))
                )
            });
        }
    }
    for c in [
        coassoc,
        counit_l,
        counit_r,
        t3_l,
        t3_r,
        multiplicative,
        lemma3,
        involution,
        inv,
        remark2,
    ] {
        report.push(c);
    }
    report
}

/// Ψ∘Ψ⁻¹ = Ψ⁻¹∘Ψ = Id on basis tensors of total length ≤ `max_len`, and the
/// right-module morphism identity Ψ((a⊗a')b) = Ψ(a⊗a')b on seeded random
/// monomial triples.
pub fn check_psi(u: &Enveloping, max_len: usize, samples: usize, seed: u64) -> ValidationReport {
    let f = u.field();
    let mons = u.pbw_monomials(max_len);
    let mut report = ValidationReport::new("psi");
    let mut round = Check::new("psi_round_trip");
    for a in &mons {
        for b in &mons {
            if a.len() + b.len() > max_len {
                continue;
            }
            let t = TensorUElement::basis(f, (a.clone(), b.clone()));
            let fwd = u.psi(&u.psi(&t, PsiDirection::Inverse), PsiDirection::Forward);
            let bwd = u.psi(&u.psi(&t, PsiDirection::Forward), PsiDirection::Inverse);
            round.record(fwd == t && bwd == t, || {
                format!(
                    "{}: ΨΨ⁻¹ = {}, Ψ⁻¹Ψ = {}",
                    u.format_tensor(&t),
                    u.format_tensor(&fwd),
                    u.format_tensor(&bwd)
                )
            });
        }
    }
    report.push(round);

    let mut morph = Check::new("psi_module_morphism");
    let pool = u.pbw_monomials(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let (a, a2, b) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let coeff = f.from_int(rng.gen_range(1..=5));
        let t = TensorUElement::single((a, a2), coeff);
        let bu = UElement::basis(f, b);
        let lhs = u.psi(&u.tensor_right_action(&t, &bu), PsiDirection::Forward);
        let rhs = u.free_right_action(&u.psi(&t, PsiDirection::Forward), &bu);
        morph.record(lhs == rhs, || {
            format!(
                "t = {}, b = {}: residual {}",
                u.format_tensor(&t),
                u.format_u(&bu),
                u.format_tensor(&lhs.minus(&rhs))
            )
        });
    }
    report.push(morph);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn heis() -> Enveloping {
        Enveloping::new(fixtures::heis3())
    }

    fn mono(u: &Enveloping, idx: &[usize]) -> UElement {
        u.nf(idx)
    }

    #[test]
    fn normal_form_examples() {
        let u = heis();
        let one = u.field().one();
        let yx = u.normal_form(&[1, 0], one.clone()).unwrap();
        assert_eq!(u.format_u(&yx), "z - x.y");
        assert!(u.normal_form(&[0, 0], one.clone()).unwrap().is_zero());
        assert_eq!(u.format_u(&u.normal_form(&[0, 1], one).unwrap()), "x.y");
        assert!(u.normal_form(&[5], u.field().one()).is_err());
    }

    #[test]
    fn twisted_products() {
        let u = heis();
        let chi = u.chi().clone();
        let (x, y) = (u.generator(0), u.generator(1));
        assert_eq!(u.format_u(&u.twisted_product(&x, &y, &chi)), "-x.y");
        assert_eq!(u.twisted_product(&u.one(), &y, &chi), y);
        assert_eq!(u.format_u(&u.twisted_opposite(&x, &y, &chi)), "-z + x.y");
    }

    #[test]
    fn lusztig_examples() {
        let u = heis();
        let f = u.field();
        let chi = u.chi().clone();
        let e = PbwMonomial::unit();
        let x = PbwMonomial(vec![0]);
        let y = PbwMonomial(vec![1]);
        let t = |a: &PbwMonomial, b: &PbwMonomial| TensorUElement::basis(f, (a.clone(), b.clone()));
        let r = u.lusztig_multiply(&t(&e, &x), &t(&y, &e), &chi);
        assert_eq!(r, t(&y, &x).negated());
        let r = u.lusztig_multiply(&t(&x, &e), &t(&e, &y), &chi);
        assert_eq!(r, t(&x, &y));
        assert_eq!(u.lusztig_multiply(&t(&e, &e), &t(&x, &y), &chi), t(&x, &y));
    }

    #[test]
    fn coproduct_examples() {
        let u = heis();
        assert_eq!(u.format_tensor(&u.coproduct(&u.one())), "1⊗1");
        assert_eq!(u.format_tensor(&u.coproduct(&u.generator(0))), "1⊗x + x⊗1");
        let xy = mono(&u, &[0, 1]);
        assert_eq!(
            u.format_tensor(&u.coproduct(&xy)),
            "1⊗x.y + x⊗y - y⊗x + x.y⊗1"
        );
    }

    #[test]
    fn counit_and_antipode_examples() {
        let u = heis();
        let f = u.field();
        assert!(u.counit(&u.one()).is_one());
        assert!(u.counit(&u.generator(0)).is_zero());
        let v = u.one().scaled(&f.from_int(3)).plus(&mono(&u, &[0, 1]));
        assert_eq!(u.counit(&v), f.from_int(3));
        assert_eq!(u.antipode(&u.one()), u.one());
        assert_eq!(u.antipode(&u.generator(0)), u.generator(0).negated());
        assert_eq!(u.format_u(&u.antipode(&mono(&u, &[0, 1]))), "-z + x.y");
    }

    #[test]
    fn psi_examples() {
        let u = heis();
        let f = u.field();
        let t = TensorUElement::basis(f, (PbwMonomial::unit(), PbwMonomial(vec![0])));
        assert_eq!(
            u.format_tensor(&u.psi(&t, PsiDirection::Inverse)),
            "1⊗x + x⊗1"
        );
        assert_eq!(
            u.format_tensor(&u.psi(&t, PsiDirection::Forward)),
            "1⊗x - x⊗1"
        );
        let back = u.psi(&u.psi(&t, PsiDirection::Inverse), PsiDirection::Forward);
        assert_eq!(back, t);
    }

    #[test]
    fn pbw_enumeration() {
        let u = heis();
        let names: Vec<String> = u
            .pbw_monomials(2)
            .iter()
            .map(|m| u.format_monomial(m))
            .collect();
        assert_eq!(names, ["1", "x", "y", "z", "x.y", "x.z", "y.z", "z.z"]);
        let a = Enveloping::new(fixtures::abelian_odd(2));
        assert_eq!(a.pbw_monomials(5).len(), 4);
    }

    #[test]
    fn confluence_and_hopf_on_fixtures() {
        for lie in [fixtures::heis3(), fixtures::glcolor()] {
            let u = Enveloping::new(lie);
            let rep = check_confluence(&u, 4);
            assert!(rep.passed(), "{rep}");
        }
        let rep = check_hopf_axioms(&heis(), 3);
        assert!(rep.passed(), "{rep}");
    }
}
