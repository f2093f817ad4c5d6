//! Finitely generated abelian grading groups and bicharacters valued in roots of unity.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Check, ValidationReport};
use crate::scalars::{CyclotomicField, Scalar};

/// `Z_{m_1} × … × Z_{m_r}`, where an order of 0 stands for a copy of `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

/// Exponent vector, reduced into `[0, m_i)` on finite factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub exponents: Vec<i64>,
}

impl GroupElement {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub enum GroupOp<'a> {
    Compose(&'a GroupElement, &'a GroupElement),
    Inverse(&'a GroupElement),
    Identity,
}

pub fn group_op(spec: &GroupSpec, op: GroupOp<'_>) -> Result<GroupElement> {
    match op {
        GroupOp::Compose(g, h) => spec.compose(g, h),
        GroupOp::Inverse(g) => spec.inverse(g),
        GroupOp::Identity => Ok(spec.identity()),
    }
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Self {
        GroupSpec { orders }
    }

    pub fn trivial() -> Self {
        GroupSpec { orders: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&m| m > 0)
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &m| (m > 0).then(|| acc * m as u64))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.rank()],
        }
    }

    /// Builds an element from raw exponents, reducing on finite factors.
    pub fn element(&self, exponents: &[i64]) -> Result<GroupElement> {
        if exponents.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: exponents.len(),
            });
        }
        Ok(self.reduce(exponents.to_vec()))
    }

    fn reduce(&self, mut exps: Vec<i64>) -> GroupElement {
        for (e, &m) in exps.iter_mut().zip(&self.orders) {
            if m > 0 {
                *e = e.rem_euclid(m as i64);
            }
        }
        GroupElement { exponents: exps }
    }

    pub fn conforms(&self, g: &GroupElement) -> bool {
        g.rank() == self.rank()
            && g.exponents
                .iter()
                .zip(&self.orders)
                .all(|(&e, &m)| m == 0 || (0..m as i64).contains(&e))
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        Ok(())
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// Unchecked composition for elements already known to conform.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.reduce(
            g.exponents
                .iter()
                .zip(&h.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        self.reduce(g.exponents.iter().map(|a| -a).collect())
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// All elements in lexicographic order, or `None` for an infinite group.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..m as i64).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        Some(
            out.into_iter()
                .map(|exponents| GroupElement { exponents })
                .collect(),
        )
    }

    /// Uniform on finite factors, `[-span, span]` on infinite ones.
    pub fn sample(&self, rng: &mut impl Rng, span: i64) -> GroupElement {
        GroupElement {
            exponents: self
                .orders
                .iter()
                .map(|&m| {
                    if m > 0 {
                        rng.gen_range(0..m as i64)
                    } else {
                        rng.gen_range(-span..=span)
                    }
                })
                .collect(),
        }
    }
}

/// Which internal degrees h a computation ranges over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeWindow {
    /// Every element of a finite group; for an infinite group, the degrees the
    /// computation can reach.
    All,
    List(Vec<GroupElement>),
}

impl DegreeWindow {
    /// Resolves the window; `reachable` supplies the support for infinite groups.
    pub fn resolve(
        &self,
        group: &GroupSpec,
        reachable: impl FnOnce() -> Vec<GroupElement>,
    ) -> Result<Vec<GroupElement>> {
        let mut out = match self {
            DegreeWindow::All => match group.elements() {
                Some(all) => all,
                None => reachable(),
            },
            DegreeWindow::List(list) => {
                let mut v = Vec::with_capacity(list.len());
                for g in list {
                    v.push(group.element(&g.exponents)?);
                }
                v
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// χ(g_i, g_j) = ζ_N^{E[i][j]} on the generators of `group`, extended biadditively.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Bicharacter {
    pub group: GroupSpec,
    pub root_order: u32,
    pub exponents: Vec<Vec<i64>>,
    #[serde(skip)]
    field: &'static CyclotomicField,
}

impl Bicharacter {
    pub fn new(group: GroupSpec, root_order: u32, exponents: Vec<Vec<i64>>) -> Result<Self> {
        let field = CyclotomicField::get(root_order)?;
        let r = group.rank();
        if exponents.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: exponents.len(),
            });
        }
        for row in &exponents {
            if row.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: row.len(),
                });
            }
        }
        Ok(Bicharacter {
            group,
            root_order,
            exponents,
            field,
        })
    }

    /// ε(i, j) = (-1)^{ij} on Z_2.
    pub fn super_z2() -> Self {
        Self::new(GroupSpec::new(vec![2]), 2, vec![vec![1]]).expect("valid shape")
    }

    pub fn trivial(group: GroupSpec) -> Self {
        let r = group.rank();
        Self::new(group, 1, vec![vec![0; r]; r]).expect("valid shape")
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    /// The exponent k in χ(g, h) = ζ_N^k, reduced into `[0, N)`.
    pub fn exponent(&self, g: &GroupElement, h: &GroupElement) -> u32 {
        let n = self.root_order as i64;
        let mut acc = 0i64;
        for (i, gi) in g.exponents.iter().enumerate() {
            if *gi == 0 {
                continue;
            }
            let mut row = 0i64;
            for (j, hj) in h.exponents.iter().enumerate() {
                row = (row + self.exponents[i][j].rem_euclid(n) * hj.rem_euclid(n)) % n;
            }
            acc = (acc + gi.rem_euclid(n) * row) % n;
        }
        acc as u32
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Scalar {
        self.field.root(self.exponent(g, h) as i64)
    }

    /// ε(g, g) as ±1, or `None` when it is not a square root of unity.
    pub fn parity(&self, g: &GroupElement) -> Option<i8> {
        let k = self.exponent(g, g);
        if k == 0 {
            Some(1)
        } else if 2 * k == self.root_order {
            Some(-1)
        } else {
            None
        }
    }

    fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.group.identity();
        g.exponents[i] = 1;
        g
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bicharacter")
            .field("orders", &self.group.orders)
            .field("root_order", &self.root_order)
            .field("exponents", &self.exponents)
            .finish()
    }
}

pub fn chi_eval(chi: &Bicharacter, g: &GroupElement, h: &GroupElement) -> Scalar {
    chi.eval(g, h)
}

/// Largest finite group for which bilinearity is checked on every triple.
const EXHAUSTIVE_LIMIT: u64 = 16;
const SAMPLED_TRIPLES: usize = 256;

pub fn validate_bicharacter(chi: &Bicharacter) -> ValidationReport {
    let mut report = ValidationReport::new("bicharacter");
    let n = chi.root_order as i64;
    let r = chi.group.rank();

    let mut antisym = Check::new("antisymmetry");
    for i in 0..r {
        for j in i..r {
            let s = (chi.exponents[i][j] + chi.exponents[j][i]).rem_euclid(n);
            antisym.record(s == 0, || {
                format!("generators ({i}, {j}): chi(g_i,g_j)chi(g_j,g_i) = w^{s}")
            });
        }
    }
    report.push(antisym);

    let mut well = Check::new("well_definedness");
    for i in 0..r {
        for j in 0..r {
            let e = chi.exponents[i][j];
            for (slot, m) in [(i, chi.group.orders[i]), (j, chi.group.orders[j])] {
                if m == 0 {
                    continue;
                }
                let ok = (m as i64 * e).rem_euclid(n) == 0;
                well.record(ok, || {
                    format!(
                        "E[{i}][{j}] = {e}: order {m} of factor {slot} times E is not 0 mod {n}"
                    )
                });
            }
        }
    }
    report.push(well);

    let triples: Vec<[GroupElement; 3]> = match chi.group.elements() {
        Some(all) if chi.group.cardinality().unwrap_or(u64::MAX) <= EXHAUSTIVE_LIMIT => {
            let mut v = Vec::new();
            for a in &all {
                for b in &all {
                    for c in &all {
                        v.push([a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
            v
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..SAMPLED_TRIPLES)
                .map(|_| {
                    [
                        chi.group.sample(&mut rng, 4),
                        chi.group.sample(&mut rng, 4),
                        chi.group.sample(&mut rng, 4),
                    ]
                })
                .collect()
        }
    };
    let mut left = Check::new("bilinearity_left");
    let mut right = Check::new("bilinearity_right");
    for [g, h, k] in &triples {
        let gh = chi.group.mul(g, h);
        let hk = chi.group.mul(h, k);
        let l = (chi.exponent(g, k) + chi.exponent(h, k)) as i64 % n;
        left.record(chi.exponent(&gh, k) as i64 == l, || {
            format!("chi({g}{h}, {k}) != chi({g},{k}) chi({h},{k})")
        });
        let rr = (chi.exponent(g, h) + chi.exponent(g, k)) as i64 % n;
        right.record(chi.exponent(g, &hk) as i64 == rr, || {
            format!("chi({g}, {h}{k}) != chi({g},{h}) chi({g},{k})")
        });
    }
    report.push(left);
    report.push(right);

    let mut parity = Check::new("parity");
    for i in 0..r {
        let g = chi.generator(i);
        let p = chi.parity(&g);
        parity.record(p.is_some(), || {
            format!("eps({g},{g}) = w^{} is not +1 or -1", chi.exponent(&g, &g))
        });
        if let Some(p) = p {
            report.note(format!("parity{g}"), if p > 0 { "+1" } else { "-1" });
        }
    }
    report.push(parity);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &GroupSpec, e: &[i64]) -> GroupElement {
        g.element(e).unwrap()
    }

    #[test]
    fn group_law() {
        let z2 = GroupSpec::new(vec![2]);
        let one = el(&z2, &[1]);
        assert_eq!(
            group_op(&z2, GroupOp::Compose(&one, &one)).unwrap(),
            el(&z2, &[0])
        );
        let z23 = GroupSpec::new(vec![2, 3]);
        let g = el(&z23, &[1, 2]);
        assert_eq!(
            group_op(&z23, GroupOp::Inverse(&g)).unwrap().exponents,
            vec![1, 1]
        );
        assert_eq!(
            group_op(&z23, GroupOp::Identity).unwrap().exponents,
            vec![0, 0]
        );
        assert!(z23.compose(&g, &one).is_err());
    }

    #[test]
    fn elements_are_lexicographic() {
        let g = GroupSpec::new(vec![2, 2]);
        let e: Vec<Vec<i64>> = g
            .elements()
            .unwrap()
            .into_iter()
            .map(|x| x.exponents)
            .collect();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(GroupSpec::new(vec![0]).elements().is_none());
        assert_eq!(GroupSpec::trivial().elements().unwrap().len(), 1);
    }

    #[test]
    fn chi_values() {
        let s = Bicharacter::super_z2();
        let one = el(&s.group, &[1]);
        let e = s.group.identity();
        assert_eq!(s.eval(&one, &one), s.field().from_int(-1));
        assert!(s.eval(&e, &one).is_one());
        let z3 = Bicharacter::new(GroupSpec::new(vec![3]), 3, vec![vec![1]]).unwrap();
        let a = el(&z3.group, &[1]);
        let b = el(&z3.group, &[2]);
        assert_eq!(z3.eval(&a, &b), z3.field().root(2));
    }

    #[test]
    fn super_bicharacter_validates() {
        let rep = validate_bicharacter(&Bicharacter::super_z2());
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.notes["parity(1)"], "-1");
    }

    #[test]
    fn trivial_bicharacter_is_even() {
        let rep = validate_bicharacter(&Bicharacter::trivial(GroupSpec::new(vec![3, 0])));
        assert!(rep.passed(), "{rep}");
        assert!(rep.notes.values().all(|v| v == "+1"));
    }

    #[test]
    fn ill_defined_bicharacter_fails() {
        let chi = Bicharacter::new(GroupSpec::new(vec![2]), 4, vec![vec![1]]).unwrap();
        let rep = validate_bicharacter(&chi);
        assert!(!rep.check("well_definedness").unwrap().passed());
        assert!(!rep.check("bilinearity_left").unwrap().passed());
    }

    #[test]
    fn shape_is_checked() {
        assert!(Bicharacter::new(GroupSpec::new(vec![2]), 2, vec![vec![1, 0]]).is_err());
        assert!(Bicharacter::new(GroupSpec::new(vec![2]), 0, vec![vec![1]]).is_err());
    }
}
