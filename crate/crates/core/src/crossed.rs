//! Crossed products `A∗_θG`, λ-semidirect products `L(A, S)`, the congruence
//! `ρ`, semidirect products `A⋊S`, strictification and standardness.

use serde::Serialize;
use thiserror::Error;

use crate::partial_module::{PartialGModule, SModule, SModuleError};
use crate::semigroup::{check_associative, congruence_closure, find_isomorphism, quotient_table, Congruence, InvSemigroup, SemigroupError};

/// Isomorphism searches are attempted only up to this many elements.
pub const ISO_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("α is not surjective onto E(A)")]
    AlphaNotSurjective,
    #[error("S is not E-unitary, so standardness has no criterion here")]
    NotEUnitary,
    #[error("π does not map S into S′")]
    BadProjection,
    #[error("strictified data is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    SModule(#[from] SModuleError),
}

/// A finite semigroup whose elements are pairs `aδ_s` (monoid index, label index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSemigroup {
    pub elements: Vec<(usize, usize)>,
    pub table: Vec<Vec<usize>>,
}

impl PairSemigroup {
    fn build<F: Fn((usize, usize), (usize, usize)) -> (usize, usize)>(elements: Vec<(usize, usize)>, mul: F) -> Self {
        let index = |p: (usize, usize)| elements.binary_search(&p).expect("product stays in the carrier");
        let table = elements
            .iter()
            .map(|&p| elements.iter().map(|&q| index(mul(p, q))).collect())
            .collect();
        Self { elements, table }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: (usize, usize)) -> Option<usize> {
        self.elements.binary_search(&p).ok()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn is_associative(&self) -> bool {
        check_associative(&self.table).is_ok()
    }
}

/// `A∗_θG`: elements `aδ_x` with `a ∈ 1_xA`, sorted by `(a, x)`, and
/// `aδ_x·bδ_y = aθ_x(1_{x⁻¹}b)δ_{xy}`.
pub fn crossed_product(m: &PartialGModule) -> PairSemigroup {
    crossed_product_on(m, |_| true)
}

/// `E(A)∗_θG`.
pub fn idempotent_crossed_product(m: &PartialGModule) -> PairSemigroup {
    crossed_product_on(m, |a| m.monoid().is_idempotent(a))
}

fn crossed_product_on<P: Fn(usize) -> bool>(m: &PartialGModule, keep: P) -> PairSemigroup {
    let a = m.monoid();
    let g = m.group();
    let mut elements: Vec<(usize, usize)> = (0..a.len())
        .filter(|&b| keep(b))
        .flat_map(|b| (0..g.order()).map(move |x| (b, x)))
        .filter(|&(b, x)| a.in_ideal(m.unit_idem(x), b))
        .collect();
    elements.sort_unstable();
    PairSemigroup::build(elements, |(b, x), (c, y)| (a.mul(b, m.transport(x, c)), g.mul(x, y)))
}

/// `L(A, S)`, `ρ` and `A⋊S = L(A, S)/ρ`.
#[derive(Debug, Clone)]
pub struct Semidirect {
    pub lambda_product: PairSemigroup,
    pub rho: Congruence,
    pub quotient: Vec<Vec<usize>>,
    /// `L(A, S)` element index to `A⋊S` class.
    pub projection: Vec<usize>,
}

impl Semidirect {
    pub fn quotient_semigroup(&self) -> Result<InvSemigroup, SemigroupError> {
        InvSemigroup::validate(self.quotient.clone())
    }

    /// Class of `aδ_s` in `A⋊S`.
    pub fn class_of(&self, a: usize, s: usize) -> Option<usize> {
        self.lambda_product.index_of((a, s)).map(|i| self.projection[i])
    }
}

/// `L(A, S)`: elements `aδ_s` with `a ∈ α(ss⁻¹)A` and `aδ_s·bδ_t = aλ_s(b)δ_{st}`.
pub fn lambda_product(sm: &SModule) -> PairSemigroup {
    let a = sm.monoid();
    let s = sm.semigroup();
    let mut elements: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|b| (0..s.len()).map(move |u| (b, u)))
        .filter(|&(b, u)| a.in_ideal(sm.alpha_dom(u), b))
        .collect();
    elements.sort_unstable();
    PairSemigroup::build(elements, |(b, u), (c, t)| (a.mul(b, sm.lambda(u, c)), s.mul(u, t)))
}

/// `ρ` from the criterion: `aδ_s ρ bδ_t` iff `a = b ∈ α(uu⁻¹)A` for some `u ≤ s, t`.
pub fn rho_by_criterion(sm: &SModule, l: &PairSemigroup) -> Congruence {
    let a = sm.monoid();
    let s = sm.semigroup();
    let labels: Vec<usize> = (0..l.len())
        .map(|i| {
            let (b, u) = l.elements[i];
            (0..=i)
                .find(|&j| {
                    let (c, t) = l.elements[j];
                    b == c && (0..s.len()).any(|w| s.leq(w, u) && s.leq(w, t) && a.in_ideal(sm.alpha_dom(w), b))
                })
                .unwrap()
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// `ρ` as the congruence generated by `aδ_s ∼ aδ_t` for `s ≤ t`.
pub fn rho_by_closure(sm: &SModule, l: &PairSemigroup) -> Congruence {
    let s = sm.semigroup();
    let mut pairs = Vec::new();
    for (i, &(b, u)) in l.elements.iter().enumerate() {
        for t in 0..s.len() {
            if t != u && s.leq(u, t) {
                if let Some(j) = l.index_of((b, t)) {
                    pairs.push((i, j));
                }
            }
        }
    }
    congruence_closure(&l.table, &pairs)
}

/// On idempotents `aδ_e, bδ_f` of `L(A, S)`, `ρ` relates them exactly when `a = b`.
pub fn rho_matches_coefficients_on_idempotents(l: &PairSemigroup, rho: &Congruence) -> bool {
    let idem: Vec<usize> = (0..l.len()).filter(|&i| l.mul(i, i) == i).collect();
    idem.iter()
        .all(|&i| idem.iter().all(|&j| rho.related(i, j) == (l.elements[i].0 == l.elements[j].0)))
}

pub fn semidirect(sm: &SModule) -> Semidirect {
    let l = lambda_product(sm);
    let rho = rho_by_criterion(sm, &l);
    let (quotient, projection) = quotient_table(&l.table, &rho);
    Semidirect {
        lambda_product: l,
        rho,
        quotient,
        projection,
    }
}

/// `π: S → S′ ⊆ A⋊S` with the strict module `(A, λ̃, α̃)` over `S′`.
#[derive(Debug, Clone)]
pub struct Strictification {
    pub semidirect: Semidirect,
    /// `S′` as a semigroup; element `i` is the `A⋊S` class `classes[i]`.
    pub s_prime: InvSemigroup,
    pub classes: Vec<usize>,
    /// `π(s)` as an index into `S′`.
    pub pi: Vec<usize>,
    pub module: SModule,
}

/// `φ(s) = α(ss⁻¹)δ_s` followed by `ρ♮`.
pub fn strictify(sm: &SModule) -> Result<Strictification, CrossedError> {
    if !sm.alpha_surjective() {
        return Err(CrossedError::AlphaNotSurjective);
    }
    let s = sm.semigroup();
    let a = sm.monoid();
    let sd = semidirect(sm);
    let raw: Vec<usize> = (0..s.len())
        .map(|u| sd.class_of(sm.alpha_dom(u), u).expect("α(ss⁻¹)δ_s lies in L(A, S)"))
        .collect();
    let mut classes = raw.clone();
    classes.sort_unstable();
    classes.dedup();
    let pi: Vec<usize> = raw.iter().map(|c| classes.binary_search(c).unwrap()).collect();
    let table: Vec<Vec<usize>> = classes
        .iter()
        .map(|&c| {
            classes
                .iter()
                .map(|&d| classes.binary_search(&sd.quotient[c][d]).map_err(|_| CrossedError::BadProjection))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let s_prime = InvSemigroup::validate(table)?;
    let k = classes.len();
    let mut lambda = vec![Vec::new(); k];
    let mut alpha = vec![None; k];
    for u in 0..s.len() {
        let row = sm.lambda_table()[u].clone();
        let p = pi[u];
        if lambda[p].is_empty() {
            lambda[p] = row;
        } else if lambda[p] != row {
            return Err(CrossedError::Inconsistent(format!("λ̃ is not well defined at π({u})")));
        }
        if s.is_idempotent(u) {
            let v = sm.alpha(u);
            match alpha[p] {
                None => alpha[p] = Some(v),
                Some(w) if w == v => {}
                Some(_) => return Err(CrossedError::Inconsistent(format!("α̃ is not well defined at π({u})"))),
            }
        }
    }
    let module = SModule::new(s_prime.clone(), a.clone(), lambda, alpha)?;
    if !module.is_strict() {
        return Err(CrossedError::Inconsistent("α̃ is not an isomorphism E(S′) → E(A)".into()));
    }
    Ok(Strictification {
        semidirect: sd,
        s_prime,
        classes,
        pi,
        module,
    })
}

/// Standardness of an epi-strict module given by `π: S → S′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Standardness {
    pub e_unitary: bool,
    pub kernel_in_sigma: bool,
    pub standard: bool,
    /// `η: S′ → S/σ` with `η∘π = σ♮`, as σ-class labels.
    pub eta: Option<Vec<usize>>,
}

/// `ker π ⊆ σ` always yields `η`; when `S` is E-unitary it is also necessary.
pub fn standardness(s: &InvSemigroup, pi: &[usize], s_prime_len: usize) -> Result<Standardness, CrossedError> {
    if pi.len() != s.len() || pi.iter().any(|&p| p >= s_prime_len) {
        return Err(CrossedError::BadProjection);
    }
    let (sigma, _) = s.min_group_congruence();
    let e_unitary = s.classify().e_unitary;
    let n = s.len();
    let kernel_in_sigma = (0..n).all(|u| (0..n).all(|t| pi[u] != pi[t] || sigma.related(u, t)));
    if !kernel_in_sigma && !e_unitary {
        return Err(CrossedError::NotEUnitary);
    }
    let eta = kernel_in_sigma.then(|| {
        let mut eta = vec![usize::MAX; s_prime_len];
        for u in 0..n {
            eta[pi[u]] = sigma.class_of(u);
        }
        eta
    });
    Ok(Standardness {
        e_unitary,
        kernel_in_sigma,
        standard: kernel_in_sigma,
        eta,
    })
}

/// Isomorphism between two small semigroup tables, if one exists.
pub fn isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.len() > ISO_LIMIT {
        return None;
    }
    find_isomorphism(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::FiniteGroup;
    use crate::semigroup::InvSemigroup;

    #[test]
    fn crossed_product_of_sign_module() {
        let m = fixtures::sign_module();
        let c = crossed_product(&m);
        assert_eq!(c.len(), 6);
        assert!(c.is_associative());
        let e = idempotent_crossed_product(&m);
        assert_eq!(e.elements, vec![(0, 0), (2, 0), (2, 1)]);
        assert!(InvSemigroup::validate(e.table.clone()).is_ok());
    }

    #[test]
    fn trivial_group_crossed_product_is_a() {
        let a = crate::monoid::CommMonoid::cyclic_group(4);
        let m = PartialGModule::trivial(FiniteGroup::cyclic(1), a.clone());
        let c = crossed_product(&m);
        assert_eq!(c.table, a.table().to_vec());
    }

    #[test]
    fn rho_example_on_z2_with_zero() {
        let s = fixtures::z2_with_zero();
        let sm = SModule::self_module(&s).unwrap();
        let l = lambda_product(&sm);
        let rho = rho_by_criterion(&sm, &l);
        let i = l.index_of((1, 1)).unwrap();
        let j = l.index_of((1, 0)).unwrap();
        assert!(!rho.related(i, j));
        assert_eq!(rho, rho_by_closure(&sm, &l));
        // 0δ_1 and 0δ_0 are distinct idempotents in one ρ-class.
        assert!(!rho.is_idempotent_separating(&l.table));
        assert!(rho_matches_coefficients_on_idempotents(&l, &rho));
    }

    #[test]
    fn group_rho_is_equality() {
        let g = FiniteGroup::cyclic(3);
        let m = PartialGModule::trivial(g, crate::monoid::CommMonoid::cyclic_group(2));
        let (_, sm) = m.to_s_module().unwrap();
        let s = InvSemigroup::from_group(&FiniteGroup::cyclic(3));
        // Restrict to the group: λ_[x] only.
        let exel = crate::exel::build_exel(m.group()).unwrap();
        let brackets: Vec<usize> = (0..3).map(|x| exel.bracket(x)).collect();
        let lambda = brackets.iter().map(|&b| sm.lambda_table()[b].clone()).collect();
        let alpha = (0..3).map(|x| (x == 0).then_some(0)).collect();
        let gm = SModule::new(s, sm.monoid().clone(), lambda, alpha).unwrap();
        let sd = semidirect(&gm);
        assert_eq!(sd.rho.count(), sd.lambda_product.len());
    }

    #[test]
    fn semidirect_over_exel_matches_crossed_product() {
        for m in [fixtures::sign_module(), fixtures::exel_semilattice_module(&fixtures::z3())] {
            let (_, sm) = m.to_s_module().unwrap();
            let sd = semidirect(&sm);
            assert_eq!(sd.rho, rho_by_closure(&sm, &sd.lambda_product));
            assert!(rho_matches_coefficients_on_idempotents(&sd.lambda_product, &sd.rho));
            // 𝒮(G) is E-unitary: ρ is "same coefficient and σ-related".
            let (sigma, _) = sm.semigroup().min_group_congruence();
            let l = &sd.lambda_product;
            for i in 0..l.len() {
                for j in 0..l.len() {
                    let ((a, u), (b, t)) = (l.elements[i], l.elements[j]);
                    assert_eq!(sd.rho.related(i, j), a == b && sigma.related(u, t));
                }
            }
            let c = crossed_product(&m);
            assert!(isomorphic(&sd.quotient, &c.table).is_some());
        }
    }

    #[test]
    fn strictify_sign_module() {
        let m = fixtures::sign_module();
        let (exel, sm) = m.to_s_module().unwrap();
        let st = strictify(&sm).unwrap();
        assert_eq!(st.s_prime.len(), 3);
        let e = idempotent_crossed_product(&m);
        assert!(isomorphic(st.s_prime.table(), &e.table).is_some());
        // Clause (ii): λ̃∘π = λ and α̃∘π = α.
        for u in 0..exel.len() {
            assert_eq!(st.module.lambda_table()[st.pi[u]], sm.lambda_table()[u]);
            if exel.semigroup().is_idempotent(u) {
                assert_eq!(st.module.alpha(st.pi[u]), sm.alpha(u));
            }
        }
        let std = standardness(exel.semigroup(), &st.pi, st.s_prime.len()).unwrap();
        assert!(std.standard);
        // η(π([y])) = y.
        let eta = std.eta.unwrap();
        let (sigma, _) = exel.semigroup().min_group_congruence();
        for y in 0..2 {
            assert_eq!(eta[st.pi[exel.bracket(y)]], sigma.class_of(exel.bracket(y)));
        }
    }

    #[test]
    fn classical_module_collapses_to_group() {
        let m = PartialGModule::trivial(FiniteGroup::klein(), crate::monoid::CommMonoid::cyclic_group(3));
        let (_, sm) = m.to_s_module().unwrap();
        let st = strictify(&sm).unwrap();
        assert_eq!(st.s_prime.len(), 4);
        assert!(isomorphic(st.s_prime.table(), FiniteGroup::klein().table()).is_some());
    }

    #[test]
    fn non_standard_projection() {
        let s = InvSemigroup::from_group(&FiniteGroup::cyclic(2));
        let std = standardness(&s, &[0, 0], 1).unwrap();
        assert!(!std.standard);
        assert!(std.eta.is_none());
        let id = standardness(&s, &[0, 1], 2).unwrap();
        assert_eq!(id.eta, Some(vec![0, 1]));
    }

    #[test]
    fn strictify_requires_surjective_alpha() {
        let m = fixtures::sign_module_with_absorbing();
        let (_, sm) = m.to_s_module().unwrap();
        assert_eq!(strictify(&sm).unwrap_err(), CrossedError::AlphaNotSurjective);
    }
}
