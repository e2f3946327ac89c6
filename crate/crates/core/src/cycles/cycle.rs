use std::collections::BTreeMap;
use std::fmt;

use super::varset::VarSet;
use crate::scalar::{Field, Scalar};

/// Formal combination `Σ m_S [V(S)]` of coordinate subspaces with exact
/// masses in `Q·(2πi)^k`.
///
/// Masses with different powers of `2πi` on the same support are kept apart;
/// they never cancel each other.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cycle<F> {
    masses: BTreeMap<(VarSet, i32), F>,
}

impl<F: Field> Cycle<F> {
    pub fn zero() -> Self {
        Cycle {
            masses: BTreeMap::new(),
        }
    }

    pub fn single(support: VarSet, mass: Scalar<F>) -> Self {
        let mut c = Self::zero();
        c.add_mass(support, mass);
        c
    }

    pub fn add_mass(&mut self, support: VarSet, mass: Scalar<F>) {
        if mass.is_zero() {
            return;
        }
        let key = (support, mass.tpi);
        let v = self.masses.remove(&key).unwrap_or_else(F::zero) + mass.rat;
        if !v.is_zero() {
            self.masses.insert(key, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, m) in other.iter() {
            out.add_mass(s, m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar<F>) -> Self {
        let mut out = Self::zero();
        for (s, m) in self.iter() {
            out.add_mass(s, m.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarSet, Scalar<F>)> + '_ {
        self.masses
            .iter()
            .map(|(&(s, tpi), r)| (s, Scalar::new(r.clone(), tpi)))
    }

    pub fn supports(&self) -> Vec<VarSet> {
        let mut v: Vec<VarSet> = self.masses.keys().map(|&(s, _)| s).collect();
        v.dedup();
        v
    }

    /// Mass on `support` when it is a single scalar.
    pub fn mass(&self, support: VarSet) -> Option<Scalar<F>> {
        let mut it = self.iter().filter(|(s, _)| *s == support);
        let first = it.next().map(|(_, m)| m);
        match it.next() {
            Some(_) => None,
            None => Some(first.unwrap_or_else(Scalar::zero)),
        }
    }

    /// Every mass is a positive integer with the `2πi` units cleared.
    pub fn is_effective_integral(&self) -> bool {
        self.iter().all(|(_, m)| m.is_positive_integer())
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut items: Vec<(VarSet, Scalar<F>)> = self.iter().collect();
        // lower codimension first, then declaration order
        items.sort_by_key(|(s, m)| (s.len(), std::cmp::Reverse(s.0), m.tpi));
        let mut out = String::new();
        for (i, (s, m)) in items.into_iter().enumerate() {
            let neg = m.rat.is_negative();
            let abs = Scalar::new(if neg { -m.rat.clone() } else { m.rat.clone() }, m.tpi);
            let sep = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            if abs == Scalar::one() {
                out.push_str(&s.render(names));
            } else {
                out.push_str(&format!("{}·{}", abs, s.render(names)));
            }
        }
        out
    }
}

impl<F: Field> Default for Cycle<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> fmt::Debug for Cycle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle({})", self.render(&[]))
    }
}

/// Exact equality of supports and masses.
pub fn cycle_equal<F: Field>(a: &Cycle<F>, b: &Cycle<F>) -> bool {
    a == b
}
