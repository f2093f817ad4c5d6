use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::scalars::{CyclotomicField, Scalar};

/// Finite linear combination of basis keys with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    field: &'static CyclotomicField,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(field: &'static CyclotomicField) -> Self {
        LinComb {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: K, coeff: Scalar) -> Self {
        let mut out = Self::zero(coeff.field());
        out.add_term(key, coeff);
        out
    }

    pub fn basis(field: &'static CyclotomicField, key: K) -> Self {
        Self::single(key, field.one())
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c);
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, s);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-self.field.one())
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero(self.field);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Human-readable form such as `x.y - 1/2*z`, with keys rendered by `name`.
    pub fn display_with(&self, mut name: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let lit = c.to_string();
            let (neg, mag) = match lit.strip_prefix('-') {
                Some(rest) if !rest.contains([' ']) => (true, rest.to_string()),
                _ => (false, lit),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let key = name(k);
            if mag == "1" {
                out.push_str(&key);
            } else if mag.contains(' ') {
                out.push_str(&format!("({mag})*{key}"));
            } else {
                out.push_str(&format!("{mag}*{key}"));
            }
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> IntoIterator for LinComb<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c})*{k:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
