//! The Exel monoid `S(G)` realized as pairs `(X, g)` with `X ⊆ G` a finite
//! subset containing `1` and `g`, and `(X, g)(Y, h) = (X ∪ gY, gh)`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::semigroup::{Congruence, InvSemigroup};

/// Largest group for which the Exel monoid is materialized.
pub const MAX_EXEL_GROUP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExelError {
    #[error("group of order {0} exceeds the Exel monoid limit of {MAX_EXEL_GROUP}")]
    GroupTooLarge(usize),
    #[error("relation ({which}) violated at x = {x}, y = {y}")]
    RelationViolated { x: usize, y: usize, which: &'static str },
    #[error("the induced map is not a homomorphism")]
    NotHomomorphism,
    #[error("the induced map is not surjective")]
    NotSurjective,
    #[error("assignment has wrong length or targets")]
    BadAssignment,
}

/// An element `(X, g)` of `S(G)`; `X` is a bitmask over group indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExelElement {
    pub set: u32,
    pub g: usize,
}

#[derive(Debug, Clone)]
pub struct ExelMonoid {
    group: FiniteGroup,
    elements: Vec<ExelElement>,
    index: HashMap<ExelElement, usize>,
    semigroup: InvSemigroup,
    bracket: Vec<usize>,
}

impl ExelMonoid {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn semigroup(&self) -> &InvSemigroup {
        &self.semigroup
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> ExelElement {
        self.elements[i]
    }

    pub fn elements(&self) -> &[ExelElement] {
        &self.elements
    }

    pub fn index_of(&self, e: ExelElement) -> Option<usize> {
        self.index.get(&e).copied()
    }

    /// Index of `[x] = ({1, x}, x)`.
    pub fn bracket(&self, x: usize) -> usize {
        self.bracket[x]
    }

    /// Index of `ε_x = [x][x⁻¹] = ({1, x}, 1)`.
    pub fn epsilon(&self, x: usize) -> usize {
        let s = &self.semigroup;
        s.mul(self.bracket[x], self.bracket[self.group.inv(x)])
    }

    /// Canonical form `ε_{x_1} .. ε_{x_n} [y]`, returned as `(xs ascending, y)`.
    pub fn canonical_form(&self, i: usize) -> (Vec<usize>, usize) {
        let ExelElement { set, g } = self.elements[i];
        let one = self.group.identity();
        let xs = (0..self.group.order())
            .filter(|&x| set & (1 << x) != 0 && x != one && x != g)
            .collect();
        (xs, g)
    }

    /// `σ` on `S(G)`: same group component.
    pub fn sigma(&self) -> Congruence {
        let labels: Vec<usize> = self.elements.iter().map(|e| e.g).collect();
        Congruence::from_labels(&labels)
    }
}

/// Builds `S(G)` with elements ordered by `(|X|, X, g)`.
pub fn build_exel(group: &FiniteGroup) -> Result<ExelMonoid, ExelError> {
    let n = group.order();
    if n > MAX_EXEL_GROUP {
        return Err(ExelError::GroupTooLarge(n));
    }
    let one = group.identity();
    let mut elements: Vec<ExelElement> = Vec::new();
    for set in 0u32..(1 << n) {
        if set & (1 << one) == 0 {
            continue;
        }
        for g in 0..n {
            if set & (1 << g) != 0 {
                elements.push(ExelElement { set, g });
            }
        }
    }
    elements.sort_by_key(|e| (e.set.count_ones(), e.set, e.g));
    let index: HashMap<ExelElement, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let translate = |g: usize, set: u32| -> u32 {
        let mut out = 0;
        for y in 0..n {
            if set & (1 << y) != 0 {
                out |= 1 << group.mul(g, y);
            }
        }
        out
    };
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let p = ExelElement {
                        set: a.set | translate(a.g, b.set),
                        g: group.mul(a.g, b.g),
                    };
                    index[&p]
                })
                .collect()
        })
        .collect();
    let semigroup = InvSemigroup::validate(table).expect("S(G) is an inverse monoid");
    let bracket = (0..n)
        .map(|x| index[&ExelElement { set: (1 << one) | (1 << x), g: x }])
        .collect();
    Ok(ExelMonoid {
        group: group.clone(),
        elements,
        index,
        semigroup,
        bracket,
    })
}

/// Outcome of checking `Γ: G → S` against the defining relations of `S(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiReport {
    /// `π: S(G) → S`, indexed like the Exel monoid.
    pub pi: Vec<usize>,
    pub surjective: bool,
    pub kernel_in_sigma: bool,
}

/// Extends `Γ` to `π: S(G) → S` and checks the relations, surjectivity and `ker π ⊆ σ`.
pub fn validate_epi(exel: &ExelMonoid, s: &InvSemigroup, gamma: &[usize]) -> Result<EpiReport, ExelError> {
    let g = exel.group();
    let n = g.order();
    if gamma.len() != n || gamma.iter().any(|&x| x >= s.len()) {
        return Err(ExelError::BadAssignment);
    }
    let m = |a: usize, b: usize| s.mul(a, b);
    let one = g.identity();
    for x in 0..n {
        for y in 0..n {
            let xi = g.inv(x);
            let xy = g.mul(x, y);
            if m(m(gamma[xi], gamma[x]), gamma[y]) != m(gamma[xi], gamma[xy]) {
                return Err(ExelError::RelationViolated { x, y, which: "[x⁻¹][x][y] = [x⁻¹][xy]" });
            }
            let yi = g.inv(y);
            if m(m(gamma[x], gamma[y]), gamma[yi]) != m(gamma[xy], gamma[yi]) {
                return Err(ExelError::RelationViolated { x, y, which: "[x][y][y⁻¹] = [xy][y⁻¹]" });
            }
        }
        if m(gamma[x], gamma[one]) != gamma[x] {
            return Err(ExelError::RelationViolated { x, y: one, which: "[x][1] = [x]" });
        }
    }
    // π(ε_{x_1}..ε_{x_n}[y]) = Γ(x_1)Γ(x_1⁻¹)..Γ(y).
    let pi: Vec<usize> = (0..exel.len())
        .map(|i| {
            let (xs, y) = exel.canonical_form(i);
            let mut acc = gamma[y];
            for &x in xs.iter().rev() {
                acc = m(m(gamma[x], gamma[g.inv(x)]), acc);
            }
            acc
        })
        .collect();
    let t = exel.semigroup();
    for a in 0..exel.len() {
        for b in 0..exel.len() {
            if pi[t.mul(a, b)] != m(pi[a], pi[b]) {
                return Err(ExelError::NotHomomorphism);
            }
        }
    }
    let mut hit = vec![false; s.len()];
    for &p in &pi {
        hit[p] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    let kernel_in_sigma = (0..exel.len()).all(|a| {
        (0..exel.len()).all(|b| pi[a] != pi[b] || exel.element(a).g == exel.element(b).g)
    });
    Ok(EpiReport {
        pi,
        surjective,
        kernel_in_sigma,
    })
}

/// Strict version of [`validate_epi`]: errors unless `π` is onto.
pub fn validate_surjective_epi(exel: &ExelMonoid, s: &InvSemigroup, gamma: &[usize]) -> Result<EpiReport, ExelError> {
    let r = validate_epi(exel, s, gamma)?;
    if !r.surjective {
        return Err(ExelError::NotSurjective);
    }
    Ok(r)
}

/// Searches all maps `G → S` for an epimorphism `S(G) → S` with kernel in `σ`.
pub fn find_epi_with_kernel_in_sigma(exel: &ExelMonoid, s: &InvSemigroup) -> Option<Vec<usize>> {
    let n = exel.group().order();
    let total = (s.len() as u64).checked_pow(n as u32)?;
    let mut gamma = vec![0usize; n];
    for mut code in 0..total {
        for slot in gamma.iter_mut() {
            *slot = (code % s.len() as u64) as usize;
            code /= s.len() as u64;
        }
        if let Ok(r) = validate_epi(exel, s, &gamma) {
            if r.surjective && r.kernel_in_sigma {
                return Some(gamma.clone());
            }
        }
    }
    None
}

/// Result of comparing "max-generated F-inverse" with "quotient of `S(S/σ)` with kernel in σ".
#[derive(Debug, Clone, Serialize)]
pub struct EpiCharacterization {
    pub max_generated_f_inverse: bool,
    pub epi_found: Option<Vec<usize>>,
}

impl EpiCharacterization {
    pub fn agrees(&self) -> bool {
        self.max_generated_f_inverse == self.epi_found.is_some()
    }
}

pub fn characterize(s: &InvSemigroup) -> Result<EpiCharacterization, ExelError> {
    let c = s.classify();
    let (_, g) = s.min_group_congruence();
    let exel = build_exel(&g)?;
    Ok(EpiCharacterization {
        max_generated_f_inverse: c.f_inverse && c.max_generated,
        epi_found: find_epi_with_kernel_in_sigma(&exel, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (g, size) in [(FiniteGroup::cyclic(2), 3), (FiniteGroup::cyclic(3), 8), (FiniteGroup::klein(), 20)] {
            let e = build_exel(&g).unwrap();
            assert_eq!(e.len(), size);
            assert_eq!(e.semigroup().idempotents().len(), 1 << (g.order() - 1));
        }
    }

    #[test]
    fn too_large() {
        assert_eq!(build_exel(&FiniteGroup::cyclic(13)).unwrap_err(), ExelError::GroupTooLarge(13));
    }

    #[test]
    fn quotient_by_sigma_is_the_group() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::s3()] {
            let e = build_exel(&g).unwrap();
            let (sigma, q) = e.semigroup().min_group_congruence();
            assert_eq!(sigma, e.sigma());
            assert!(q.isomorphism_to(&g).is_some());
        }
    }

    #[test]
    fn canonical_form_reconstructs() {
        let g = FiniteGroup::klein();
        let e = build_exel(&g).unwrap();
        let s = e.semigroup();
        for i in 0..e.len() {
            let (xs, y) = e.canonical_form(i);
            let mut acc = e.bracket(y);
            for &x in xs.iter().rev() {
                acc = s.mul(e.epsilon(x), acc);
            }
            assert_eq!(acc, i);
        }
    }

    #[test]
    fn group_onto_itself() {
        let g = FiniteGroup::cyclic(2);
        let e = build_exel(&g).unwrap();
        let s = InvSemigroup::from_group(&g);
        let r = validate_epi(&e, &s, &[0, 1]).unwrap();
        assert!(r.surjective && r.kernel_in_sigma);
        // Collapsing to the identity is not surjective onto Z2.
        assert_eq!(validate_surjective_epi(&e, &s, &[0, 0]).unwrap_err(), ExelError::NotSurjective);
    }

    #[test]
    fn relation_violation_detected() {
        let g = FiniteGroup::cyclic(2);
        let e = build_exel(&g).unwrap();
        // Z2 ∪ {0}; Γ(1) = 0 breaks [x][1] = [x].
        let s = InvSemigroup::validate(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]).unwrap();
        assert!(matches!(validate_epi(&e, &s, &[2, 1]), Err(ExelError::RelationViolated { .. })));
        // Exhaustive search over all 3^2 assignments finds no epi with kernel in σ.
        assert!(find_epi_with_kernel_in_sigma(&e, &s).is_none());
    }
}
