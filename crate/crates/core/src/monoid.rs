//! Finite commutative monoids and the unit groups of their principal ideals.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::abelian::{decompose_with, Decomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("no identity element")]
    NoIdentity,
}

/// A finite commutative monoid on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommMonoid {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl CommMonoid {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 {
            return Err(MonoidError::BadTable("empty".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(MonoidError::BadTable("rows must have length n with entries < n".into()));
            }
        }
        for a in 0..n {
            for b in 0..a {
                if table[a][b] != table[b][a] {
                    return Err(MonoidError::NotCommutative(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x))
            .ok_or(MonoidError::NoIdentity)?;
        Ok(Self { table, identity })
    }

    /// The group `Z/m` written multiplicatively on `0..m` (element `k` is `g^k`).
    pub fn cyclic_group(m: usize) -> Self {
        let t = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::from_table(t).expect("cyclic group")
    }

    pub fn direct_product(a: &CommMonoid, b: &CommMonoid) -> Self {
        let m = b.len();
        let t = (0..a.len() * m)
            .map(|x| (0..a.len() * m).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table(t).expect("direct product")
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.table[e][e] == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// `a ∈ eA` for an idempotent `e`.
    pub fn in_ideal(&self, e: usize, a: usize) -> bool {
        self.table[e][a] == a
    }

    /// Absorbing element, if any.
    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&z| (0..self.len()).all(|x| self.table[z][x] == z))
    }

    /// Every element has an inverse `b` with `aba = a`, `bab = b`.
    pub fn is_inverse(&self) -> bool {
        (0..self.len()).all(|a| {
            (0..self.len()).any(|b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
        })
    }

    /// Units of the ideal `eA`: `{a ∈ eA : ∃ b ∈ eA, ab = e}`.
    pub fn unit_elements(&self, e: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.in_ideal(e, a) && (0..self.len()).any(|b| self.in_ideal(e, b) && self.mul(a, b) == e))
            .collect()
    }

    pub fn unit_group(&self, e: usize) -> UnitGroup {
        UnitGroup::new(self, e)
    }

    /// Smallest submonoid containing `gens` (and the identity).
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.len()];
        inside[self.identity] = true;
        let mut list = vec![self.identity];
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                list.push(g);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let p = self.mul(a, list[j]);
                if !inside[p] {
                    inside[p] = true;
                    list.push(p);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Restriction to a multiplicatively closed subset containing the identity.
    /// Returns the submonoid on `0..subset.len()` (in the given order).
    pub fn restrict(&self, subset: &[usize]) -> Option<CommMonoid> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut t = vec![vec![0; subset.len()]; subset.len()];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                t[i][j] = *pos.get(&self.mul(a, b))?;
            }
        }
        CommMonoid::from_table(t).ok()
    }
}

/// The unit group `U(eA)` with its invariant-factor decomposition.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    pub idem: usize,
    /// Monoid indices of the units, ascending.
    pub elements: Vec<usize>,
    local: HashMap<usize, usize>,
    inverses: Vec<usize>,
    pub decomposition: Decomposition,
}

impl UnitGroup {
    fn new(m: &CommMonoid, e: usize) -> Self {
        let elements = m.unit_elements(e);
        let local: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let inverses = elements
            .iter()
            .map(|&a| *elements.iter().find(|&&b| m.mul(a, b) == e).unwrap())
            .collect();
        let id = local[&e];
        let decomposition = decompose_with(elements.len(), id, |x, y| local[&m.mul(elements[x], elements[y])])
            .expect("unit group of a commutative monoid is an abelian group");
        Self {
            idem: e,
            elements,
            local,
            inverses,
            decomposition,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.local.contains_key(&a)
    }

    pub fn moduli(&self) -> &[u64] {
        self.decomposition.presentation.invariant_factors()
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[self.local[&a]]
    }

    pub fn coords(&self, a: usize) -> &[u64] {
        &self.decomposition.coords[self.local[&a]]
    }

    pub fn element(&self, coords: &[u64]) -> usize {
        self.elements[self.decomposition.element(coords)]
    }

    pub fn generators(&self) -> Vec<usize> {
        self.decomposition.generators.iter().map(|&g| self.elements[g]).collect()
    }
}

/// Per-idempotent cache of unit groups. Keyed by idempotent only, so one
/// cache must serve a single monoid.
#[derive(Debug, Clone, Default)]
pub struct UnitGroupCache {
    groups: HashMap<usize, Arc<UnitGroup>>,
}

impl UnitGroupCache {
    pub fn get(&mut self, m: &CommMonoid, e: usize) -> Arc<UnitGroup> {
        self.groups.entry(e).or_insert_with(|| Arc::new(m.unit_group(e))).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// {1, -1, e, -e} with e idempotent.
    fn sign() -> CommMonoid {
        let t = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 2, 3], vec![3, 2, 3, 2]];
        CommMonoid::from_table(t).unwrap()
    }

    #[test]
    fn unit_groups_of_sign_monoid() {
        let m = sign();
        assert_eq!(m.idempotents(), vec![0, 2]);
        let u = m.unit_group(2);
        assert_eq!(u.elements, vec![2, 3]);
        assert_eq!(u.moduli(), &[2]);
        assert_eq!(u.inverse(3), 3);
        assert_eq!(m.unit_group(0).elements, vec![0, 1]);
        assert!(m.is_inverse());
        assert_eq!(m.generated(&[2]), vec![0, 2]);
    }

    #[test]
    fn zero_ideal_has_trivial_units() {
        // {1, 0}
        let m = CommMonoid::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.zero(), Some(1));
        assert_eq!(m.unit_group(1).elements, vec![1]);
        assert!(m.unit_group(1).moduli().is_empty());
    }

    #[test]
    fn rejects_noncommutative() {
        let left_zero = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(CommMonoid::from_table(left_zero), Err(MonoidError::NotCommutative(..))));
    }
}
