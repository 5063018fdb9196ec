use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::lr::lr_product;
use super::partition::Partition;
use crate::coefficients::LambdaScalar;

/// A finite combination `Σ c_λ s_λ` with scalar coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, LambdaScalar>,
}

impl SchurExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(lambda: Partition) -> Self {
        Self::term(lambda, LambdaScalar::one())
    }

    pub fn term(lambda: Partition, c: LambdaScalar) -> Self {
        let mut x = Self::zero();
        x.add_term(lambda, c);
        x
    }

    pub fn from_integers(map: &BTreeMap<Partition, i64>) -> Self {
        let mut x = Self::zero();
        for (k, &c) in map {
            x.add_term(k.clone(), LambdaScalar::from_int(c));
        }
        x
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LambdaScalar> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> LambdaScalar {
        self.terms.get(lambda).cloned().unwrap_or_default()
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

    pub fn add_term(&mut self, lambda: Partition, c: LambdaScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The common size of all keys, if the expansion is homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut sizes = self.terms.keys().map(Partition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LambdaScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let k = BigInt::from(c);
        let mut out = Self::zero();
        for (key, x) in &self.terms {
            out.add_term(key.clone(), x.scale(&k));
        }
        out
    }

    /// Product in the Schur basis.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Partition, LambdaScalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (rho, &n) in lr_product(a, b).iter() {
                    let term = c.scale(&BigInt::from(n));
                    let slot = acc.entry(rho.clone()).or_default();
                    *slot = &*slot + &term;
                }
            }
        }
        let mut out = Self::zero();
        for (k, c) in acc {
            out.add_term(k, c);
        }
        out
    }

    /// Applies `f` to each `(key, coefficient)`; zero results are dropped.
    pub fn map_terms(&self, mut f: impl FnMut(&Partition, &LambdaScalar) -> LambdaScalar) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(k, c));
        }
        out
    }

    /// Keys minimal in dominance order among keys of the same size.
    pub fn dominance_minimal_keys(&self) -> Vec<Partition> {
        self.terms
            .keys()
            .filter(|k| {
                !self.terms.keys().any(|o| o != *k && o.size() == k.size() && o.dominance_leq(k).unwrap_or(false))
            })
            .cloned()
            .collect()
    }
}
