//! Unital partial `G`-modules, `S`-modules `(λ, α)` over inverse semigroups,
//! unital actions by partial isomorphisms, and morphisms.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::exel::{build_exel, ExelError, ExelMonoid};
use crate::group::FiniteGroup;
use crate::monoid::{CommMonoid, MonoidError};
use crate::semigroup::InvSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("malformed module: {0}")]
    BadShape(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("1_1 must be the identity of A and θ_1 the identity map")]
    IdentityAxiomFailed,
    #[error("θ_x(A_x⁻¹ A_y) ≠ A_x A_xy at x = {0}, y = {1}")]
    RangeAxiomFailed(usize, usize),
    #[error("θ_x θ_y ≠ θ_xy on A_y⁻¹ A_y⁻¹x⁻¹ at x = {0}, y = {1}")]
    CocycleAxiomFailed(usize, usize),
    #[error("1_x is not a central idempotent at x = {0}")]
    NotCentralIdempotent(usize),
    #[error("θ_x is not an isomorphism 1_x⁻¹A → 1_xA at x = {0}")]
    NotIso(usize),
    #[error(transparent)]
    Exel(#[from] ExelError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SModuleError {
    #[error("malformed S-module: {0}")]
    BadShape(String),
    #[error("S-module axiom failed: {0}")]
    AxiomFailed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("map has the wrong length or targets")]
    BadShape,
    #[error("map is not multiplicative")]
    NotMultiplicative,
    #[error("φ(1_x) ≠ 1'_x at x = {0}")]
    IdempotentMismatch(usize),
    #[error("φ θ_x ≠ θ'_x φ on A_x⁻¹ at x = {0}")]
    EquivarianceFailed(usize),
    #[error("modules are over different groups")]
    GroupMismatch,
}

/// A unital partial `G`-module: a commutative monoid `A` with idempotents
/// `1_x` and isomorphisms `θ_x: 1_{x⁻¹}A → 1_xA`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGModule {
    group: FiniteGroup,
    monoid: CommMonoid,
    unit_idems: Vec<usize>,
    /// `theta[x][a]` is defined exactly on `a ∈ 1_{x⁻¹}A`.
    theta: Vec<Vec<Option<usize>>>,
}

impl PartialGModule {
    pub fn new(
        group: FiniteGroup,
        monoid: CommMonoid,
        unit_idems: Vec<usize>,
        theta: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, ModuleError> {
        let n = group.order();
        let m = monoid.len();
        if unit_idems.len() != n || unit_idems.iter().any(|&e| e >= m) {
            return Err(ModuleError::BadShape("unit_idems must have one entry per group element".into()));
        }
        if theta.len() != n || theta.iter().any(|t| t.len() != m || t.iter().flatten().any(|&b| b >= m)) {
            return Err(ModuleError::BadShape("theta must have one table of length |A| per group element".into()));
        }
        for x in 0..n {
            if !monoid.is_idempotent(unit_idems[x]) {
                return Err(ModuleError::NotCentralIdempotent(x));
            }
        }
        let module = Self {
            group,
            monoid,
            unit_idems,
            theta,
        };
        module.check_axioms()?;
        Ok(module)
    }

    /// Global module: every `1_x` is the identity and `θ_x` is the automorphism `action[x]`.
    pub fn global(group: FiniteGroup, monoid: CommMonoid, action: Vec<Vec<usize>>) -> Result<Self, ModuleError> {
        let n = group.order();
        let one = monoid.identity();
        let theta = action.into_iter().map(|row| row.into_iter().map(Some).collect()).collect();
        Self::new(group, monoid, vec![one; n], theta)
    }

    /// Global module with trivial action.
    pub fn trivial(group: FiniteGroup, monoid: CommMonoid) -> Self {
        let id: Vec<usize> = (0..monoid.len()).collect();
        let action = vec![id; group.order()];
        Self::global(group, monoid, action).expect("trivial action is a module")
    }

    fn check_axioms(&self) -> Result<(), ModuleError> {
        let g = &self.group;
        let a = &self.monoid;
        let n = g.order();
        let m = a.len();
        let one = g.identity();
        if self.unit_idems[one] != a.identity() || (0..m).any(|b| self.theta[one][b] != Some(b)) {
            return Err(ModuleError::IdentityAxiomFailed);
        }
        for x in 0..n {
            let dom = self.unit_idems[g.inv(x)];
            let ran = self.unit_idems[x];
            let mut hit = vec![false; m];
            for b in 0..m {
                match (a.in_ideal(dom, b), self.theta[x][b]) {
                    (true, Some(c)) => {
                        if !a.in_ideal(ran, c) || std::mem::replace(&mut hit[c], true) {
                            return Err(ModuleError::NotIso(x));
                        }
                    }
                    (false, None) => {}
                    _ => return Err(ModuleError::NotIso(x)),
                }
            }
            if (0..m).any(|c| a.in_ideal(ran, c) && !hit[c]) {
                return Err(ModuleError::NotIso(x));
            }
            if self.theta[x][dom] != Some(ran) {
                return Err(ModuleError::NotIso(x));
            }
            for b in (0..m).filter(|&b| a.in_ideal(dom, b)) {
                for c in (0..m).filter(|&c| a.in_ideal(dom, c)) {
                    if self.theta[x][a.mul(b, c)] != Some(a.mul(self.theta[x][b].unwrap(), self.theta[x][c].unwrap())) {
                        return Err(ModuleError::NotIso(x));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                // θ_x(A_{x⁻¹}A_y) = A_x A_{xy}.
                let src = a.mul(self.unit_idems[g.inv(x)], self.unit_idems[y]);
                let dst = a.mul(self.unit_idems[x], self.unit_idems[g.mul(x, y)]);
                let image: Vec<usize> = (0..m)
                    .filter(|&b| a.in_ideal(src, b))
                    .map(|b| self.theta[x][b].unwrap())
                    .collect();
                let mut image_sorted = image.clone();
                image_sorted.sort_unstable();
                let target: Vec<usize> = (0..m).filter(|&b| a.in_ideal(dst, b)).collect();
                if image_sorted != target {
                    return Err(ModuleError::RangeAxiomFailed(x, y));
                }
                // θ_x θ_y = θ_{xy} on A_{y⁻¹} A_{y⁻¹x⁻¹}.
                let yi = g.inv(y);
                let dom = a.mul(self.unit_idems[yi], self.unit_idems[g.mul(yi, g.inv(x))]);
                let xy = g.mul(x, y);
                for b in (0..m).filter(|&b| a.in_ideal(dom, b)) {
                    let via = self.theta[y][b].and_then(|c| self.theta[x][c]);
                    if via != self.theta[xy][b] {
                        return Err(ModuleError::CocycleAxiomFailed(x, y));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn monoid(&self) -> &CommMonoid {
        &self.monoid
    }

    pub fn unit_idem(&self, x: usize) -> usize {
        self.unit_idems[x]
    }

    pub fn unit_idems(&self) -> &[usize] {
        &self.unit_idems
    }

    pub fn theta_table(&self) -> &[Vec<Option<usize>>] {
        &self.theta
    }

    /// `θ_x(a)` for `a ∈ 1_{x⁻¹}A`.
    pub fn theta(&self, x: usize, a: usize) -> usize {
        self.theta[x][a].expect("θ_x applied outside its domain")
    }

    /// `θ_x(1_{x⁻¹} a)`, defined for every `a`.
    pub fn transport(&self, x: usize, a: usize) -> usize {
        let d = self.unit_idems[self.group.inv(x)];
        self.theta(x, self.monoid.mul(d, a))
    }

    /// `1_{x_1} 1_{x_1 x_2} .. 1_{x_1 .. x_n}` (the identity `1_A` for the empty tuple).
    pub fn tuple_idem(&self, xs: &[usize]) -> usize {
        let mut e = self.monoid.identity();
        let mut p = self.group.identity();
        for &x in xs {
            p = self.group.mul(p, x);
            e = self.monoid.mul(e, self.unit_idems[p]);
        }
        e
    }

    /// Checks the eq. `θ_x(A_{x⁻¹}A_{y_1}A_{y_2}) = A_x A_{xy_1} A_{xy_2}` over all triples.
    pub fn check_triple_ranges(&self) -> bool {
        let g = &self.group;
        let a = &self.monoid;
        let n = g.order();
        let e = |x: usize| self.unit_idems[x];
        (0..n).all(|x| {
            (0..n).all(|y1| {
                (0..n).all(|y2| {
                    let src = a.mul(a.mul(e(g.inv(x)), e(y1)), e(y2));
                    let dst = a.mul(a.mul(e(x), e(g.mul(x, y1))), e(g.mul(x, y2)));
                    self.theta[x][src] == Some(dst)
                })
            })
        })
    }

    /// Submonoid generated by the `1_x`.
    pub fn generated_idempotents(&self) -> Vec<usize> {
        self.monoid.generated(&self.unit_idems)
    }

    /// `A` is inverse and `E(A)` is generated by the `1_x`.
    pub fn is_inverse_module(&self) -> bool {
        self.monoid.is_inverse() && self.generated_idempotents() == self.monoid.idempotents()
    }

    /// Relabels along `subset` (which must be a submodule), returning the restricted module.
    fn restrict(&self, subset: &[usize]) -> Result<Self, ModuleError> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let monoid = self
            .monoid
            .restrict(subset)
            .ok_or_else(|| ModuleError::BadShape("subset is not a submonoid".into()))?;
        let unit_idems = self
            .unit_idems
            .iter()
            .map(|e| pos.get(e).copied().ok_or_else(|| ModuleError::BadShape("1_x outside subset".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let theta = self
            .theta
            .iter()
            .map(|row| {
                subset
                    .iter()
                    .map(|&a| match row[a] {
                        Some(b) => pos.get(&b).copied().map(Some).ok_or_else(|| ModuleError::BadShape("θ leaves subset".into())),
                        None => Ok(None),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.group.clone(), monoid, unit_idems, theta)
    }

    /// Submodule of idempotents `E(A)`.
    pub fn idempotent_submodule(&self) -> (Self, Vec<usize>) {
        let subset = self.monoid.idempotents();
        let m = self.restrict(&subset).expect("E(A) is a submodule");
        (m, subset)
    }

    /// `Ã`: the union of `U(1_{x_1}..1_{x_n}A)`, with the embedding into `A`.
    pub fn make_tilde(&self) -> (Self, Vec<usize>) {
        let mut subset: Vec<usize> = self
            .generated_idempotents()
            .into_iter()
            .flat_map(|e| self.monoid.unit_elements(e))
            .collect();
        subset.sort_unstable();
        subset.dedup();
        let m = self.restrict(&subset).expect("Ã is a submodule");
        (m, subset)
    }

    /// The `S(G)`-module `(λ, α)` attached to this partial module.
    pub fn to_s_module(&self) -> Result<(ExelMonoid, SModule), ModuleError> {
        let exel = build_exel(&self.group)?;
        let a = &self.monoid;
        let s = exel.semigroup();
        let lambda: Vec<Vec<usize>> = (0..exel.len())
            .map(|i| {
                let (xs, y) = exel.canonical_form(i);
                let e = xs.iter().fold(a.identity(), |acc, &x| a.mul(acc, self.unit_idems[x]));
                (0..a.len()).map(|b| a.mul(e, self.transport(y, b))).collect()
            })
            .collect();
        let alpha: Vec<Option<usize>> = (0..exel.len())
            .map(|i| {
                if !s.is_idempotent(i) {
                    return None;
                }
                let set = exel.element(i).set;
                Some(
                    (0..self.group.order())
                        .filter(|&x| set & (1 << x) != 0)
                        .fold(a.identity(), |acc, x| a.mul(acc, self.unit_idems[x])),
                )
            })
            .collect();
        let sm = SModule::new(s.clone(), a.clone(), lambda, alpha).map_err(|e| ModuleError::BadShape(e.to_string()))?;
        Ok((exel, sm))
    }

    /// Inverse of [`to_s_module`](Self::to_s_module).
    pub fn from_s_module(exel: &ExelMonoid, sm: &SModule) -> Result<Self, ModuleError> {
        let g = exel.group();
        let a = sm.monoid();
        let unit_idems: Vec<usize> = (0..g.order()).map(|x| sm.alpha(exel.epsilon(x))).collect();
        let theta = (0..g.order())
            .map(|x| {
                let d = unit_idems[g.inv(x)];
                (0..a.len())
                    .map(|b| a.in_ideal(d, b).then(|| sm.lambda(exel.bracket(x), b)))
                    .collect()
            })
            .collect();
        Self::new(g.clone(), a.clone(), unit_idems, theta)
    }
}

/// A module `(λ, α)` over an inverse semigroup `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SModule {
    semigroup: InvSemigroup,
    monoid: CommMonoid,
    lambda: Vec<Vec<usize>>,
    /// Defined on idempotents of `S`.
    alpha: Vec<Option<usize>>,
}

impl SModule {
    pub fn new(
        semigroup: InvSemigroup,
        monoid: CommMonoid,
        lambda: Vec<Vec<usize>>,
        alpha: Vec<Option<usize>>,
    ) -> Result<Self, SModuleError> {
        let n = semigroup.len();
        let m = monoid.len();
        if lambda.len() != n || lambda.iter().any(|r| r.len() != m || r.iter().any(|&b| b >= m)) {
            return Err(SModuleError::BadShape("lambda must be |S| rows of length |A|".into()));
        }
        if alpha.len() != n
            || (0..n).any(|s| semigroup.is_idempotent(s) != alpha[s].is_some())
            || alpha.iter().flatten().any(|&b| b >= m)
        {
            return Err(SModuleError::BadShape("alpha must be defined exactly on E(S)".into()));
        }
        let sm = Self {
            semigroup,
            monoid,
            lambda,
            alpha,
        };
        sm.check_axioms()?;
        Ok(sm)
    }

    fn check_axioms(&self) -> Result<(), SModuleError> {
        let s = &self.semigroup;
        let a = &self.monoid;
        let fail = |m: &str| Err(SModuleError::AxiomFailed(m.to_string()));
        for u in 0..s.len() {
            for b in 0..a.len() {
                for c in 0..a.len() {
                    if self.lambda[u][a.mul(b, c)] != a.mul(self.lambda[u][b], self.lambda[u][c]) {
                        return fail("λ_s is not an endomorphism");
                    }
                }
            }
            for t in 0..s.len() {
                let st = s.mul(u, t);
                if (0..a.len()).any(|b| self.lambda[st][b] != self.lambda[u][self.lambda[t][b]]) {
                    return fail("λ_st ≠ λ_s λ_t");
                }
            }
        }
        let idem = s.idempotents();
        for &e in &idem {
            let ae = self.alpha[e].unwrap();
            if !a.is_idempotent(ae) {
                return fail("α(e) is not idempotent");
            }
            for &f in &idem {
                if self.alpha[s.mul(e, f)] != Some(a.mul(ae, self.alpha[f].unwrap())) {
                    return fail("α is not a homomorphism");
                }
            }
            if (0..a.len()).any(|b| self.lambda[e][b] != a.mul(ae, b)) {
                return fail("λ_e ≠ α(e)·");
            }
            for u in 0..s.len() {
                let ses = s.mul(s.mul(u, e), s.inv(u));
                if Some(self.lambda[u][ae]) != self.alpha[ses] {
                    return fail("λ_s(α(e)) ≠ α(ses⁻¹)");
                }
            }
        }
        if let Some(one) = s.identity() {
            if self.alpha[one] != Some(a.identity()) {
                return fail("α(1) ≠ 1");
            }
        }
        Ok(())
    }

    pub fn semigroup(&self) -> &InvSemigroup {
        &self.semigroup
    }

    pub fn monoid(&self) -> &CommMonoid {
        &self.monoid
    }

    pub fn lambda(&self, s: usize, a: usize) -> usize {
        self.lambda[s][a]
    }

    pub fn lambda_table(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    pub fn alpha(&self, e: usize) -> usize {
        self.alpha[e].expect("α applied to a non-idempotent")
    }

    pub fn alpha_table(&self) -> &[Option<usize>] {
        &self.alpha
    }

    /// `α(ss⁻¹)`.
    pub fn alpha_dom(&self, s: usize) -> usize {
        self.alpha(self.semigroup.dom(s))
    }

    /// `α` is injective on `E(S)` with image `E(A)`.
    pub fn is_strict(&self) -> bool {
        let mut img: Vec<usize> = self.alpha.iter().flatten().copied().collect();
        let k = img.len();
        img.sort_unstable();
        img.dedup();
        img.len() == k && img == self.monoid.idempotents()
    }

    /// `α(E(S)) = E(A)`.
    pub fn alpha_surjective(&self) -> bool {
        let mut img: Vec<usize> = self.alpha.iter().flatten().copied().collect();
        img.sort_unstable();
        img.dedup();
        img == self.monoid.idempotents()
    }

    /// `S` acting on itself by `λ_s(t) = ss⁻¹t`, `α = id` (requires `S` commutative).
    pub fn self_module(s: &InvSemigroup) -> Result<Self, SModuleError> {
        let monoid = CommMonoid::from_table(s.table().to_vec())
            .map_err(|e| SModuleError::BadShape(format!("S is not a commutative monoid: {e}")))?;
        let lambda = (0..s.len()).map(|u| (0..s.len()).map(|t| s.mul(s.dom(u), t)).collect()).collect();
        let alpha = (0..s.len()).map(|e| s.is_idempotent(e).then_some(e)).collect();
        Self::new(s.clone(), monoid, lambda, alpha)
    }
}

/// A unital action of `S` on `A` by isomorphisms between unital ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialAction {
    /// `τ_s` defined on `dom[s] A` with values in `ran[s] A`.
    pub dom: Vec<usize>,
    pub ran: Vec<usize>,
    pub map: Vec<Vec<Option<usize>>>,
}

impl PartialAction {
    pub fn check(&self, s: &InvSemigroup, a: &CommMonoid) -> Result<(), SModuleError> {
        let fail = |m: String| Err(SModuleError::AxiomFailed(m));
        for u in 0..s.len() {
            for b in 0..a.len() {
                let inside = a.in_ideal(self.dom[u], b);
                match self.map[u][b] {
                    Some(c) if inside && a.in_ideal(self.ran[u], c) => {}
                    None if !inside => {}
                    _ => return fail(format!("τ_{u} has the wrong domain or range")),
                }
            }
            if self.map[u][self.dom[u]] != Some(self.ran[u]) {
                return fail(format!("τ_{u} is not unital"));
            }
            for t in 0..s.len() {
                let st = s.mul(u, t);
                for b in 0..a.len() {
                    let via = self.map[t][b].and_then(|c| self.map[u][c]);
                    if via != self.map[st][b] {
                        return fail(format!("τ_{st} ≠ τ_{u} τ_{t}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `τ_s = λ_s` restricted to `α(s⁻¹s)A`.
    pub fn from_s_module(sm: &SModule) -> Self {
        let s = sm.semigroup();
        let a = sm.monoid();
        let dom: Vec<usize> = (0..s.len()).map(|u| sm.alpha(s.ran(u))).collect();
        let ran: Vec<usize> = (0..s.len()).map(|u| sm.alpha(s.dom(u))).collect();
        let map = (0..s.len())
            .map(|u| (0..a.len()).map(|b| a.in_ideal(dom[u], b).then(|| sm.lambda(u, b))).collect())
            .collect();
        Self { dom, ran, map }
    }

    /// `λ_s(a) = τ_s(1_{s⁻¹}a)`, `α(e) = 1_e`.
    pub fn to_s_module(&self, s: &InvSemigroup, a: &CommMonoid) -> Result<SModule, SModuleError> {
        self.check(s, a)?;
        let lambda = (0..s.len())
            .map(|u| (0..a.len()).map(|b| self.map[u][a.mul(self.dom[u], b)].unwrap()).collect())
            .collect();
        let alpha = (0..s.len()).map(|e| s.is_idempotent(e).then(|| self.ran[e])).collect();
        SModule::new(s.clone(), a.clone(), lambda, alpha)
    }

    /// `τ_s(1_{s⁻¹} 1_t) = 1_{st}` for all `s, t`.
    pub fn unit_transport_lemma(&self, s: &InvSemigroup, a: &CommMonoid) -> bool {
        (0..s.len()).all(|u| {
            (0..s.len()).all(|t| {
                let b = a.mul(self.dom[u], self.ran[t]);
                self.map[u][b] == Some(self.ran[s.mul(u, t)])
            })
        })
    }
}

/// Checks that `phi: A → A'` is a morphism of partial `G`-modules.
pub fn validate_morphism(m: &PartialGModule, m2: &PartialGModule, phi: &[usize]) -> Result<(), MorphismError> {
    let a = m.monoid();
    let b = m2.monoid();
    if m.group() != m2.group() {
        return Err(MorphismError::GroupMismatch);
    }
    if phi.len() != a.len() || phi.iter().any(|&y| y >= b.len()) {
        return Err(MorphismError::BadShape);
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            if phi[a.mul(x, y)] != b.mul(phi[x], phi[y]) {
                return Err(MorphismError::NotMultiplicative);
            }
        }
    }
    let g = m.group();
    for x in 0..g.order() {
        if phi[m.unit_idem(x)] != m2.unit_idem(x) {
            return Err(MorphismError::IdempotentMismatch(x));
        }
    }
    for x in 0..g.order() {
        let d = m.unit_idem(g.inv(x));
        for c in (0..a.len()).filter(|&c| a.in_ideal(d, c)) {
            if phi[m.theta(x, c)] != m2.theta(x, phi[c]) {
                return Err(MorphismError::EquivarianceFailed(x));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sign_module_validates() {
        let m = fixtures::sign_module();
        assert!(m.is_inverse_module());
        assert!(m.check_triple_ranges());
    }

    #[test]
    fn swapping_theta_is_not_iso() {
        let m = fixtures::sign_module();
        let mut theta = m.theta_table().to_vec();
        theta[1][2] = Some(3);
        theta[1][3] = Some(2);
        let err = PartialGModule::new(m.group().clone(), m.monoid().clone(), m.unit_idems().to_vec(), theta).unwrap_err();
        assert_eq!(err, ModuleError::NotIso(1));
    }

    #[test]
    fn non_idempotent_unit_rejected() {
        let m = fixtures::sign_module();
        let err = PartialGModule::new(m.group().clone(), m.monoid().clone(), vec![0, 1], m.theta_table().to_vec()).unwrap_err();
        assert_eq!(err, ModuleError::NotCentralIdempotent(1));
    }

    #[test]
    fn identity_axiom() {
        let m = fixtures::sign_module();
        let mut theta = m.theta_table().to_vec();
        theta[0][0] = Some(1);
        theta[0][1] = Some(0);
        let err = PartialGModule::new(m.group().clone(), m.monoid().clone(), m.unit_idems().to_vec(), theta).unwrap_err();
        assert_eq!(err, ModuleError::IdentityAxiomFailed);
    }

    #[test]
    fn s_module_roundtrip() {
        for m in [fixtures::sign_module(), fixtures::gf3_partial_module().module().clone(), fixtures::exel_semilattice_module(&FiniteGroup::cyclic(3))] {
            let (exel, sm) = m.to_s_module().unwrap();
            let back = PartialGModule::from_s_module(&exel, &sm).unwrap();
            assert_eq!(back, m);
            let tau = PartialAction::from_s_module(&sm);
            assert!(tau.unit_transport_lemma(sm.semigroup(), sm.monoid()));
            assert_eq!(tau.to_s_module(sm.semigroup(), sm.monoid()).unwrap(), sm);
        }
    }

    #[test]
    fn tilde_drops_extra_idempotents() {
        let m = fixtures::sign_module_with_absorbing();
        let (t, emb) = m.make_tilde();
        assert_eq!(emb, vec![0, 1, 2, 3]);
        assert_eq!(t.monoid().len(), 4);
        let (t2, emb2) = t.make_tilde();
        assert_eq!(t2, t);
        assert_eq!(emb2, vec![0, 1, 2, 3]);
    }

    #[test]
    fn inverse_module_detection() {
        assert!(fixtures::sign_module().is_inverse_module());
        // {1, e, f, ef} with only 1_g = e.
        let g = FiniteGroup::cyclic(2);
        let a = CommMonoid::from_table(vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ])
        .unwrap();
        let theta = vec![
            (0..4).map(Some).collect(),
            vec![None, Some(1), None, Some(3)],
        ];
        let m = PartialGModule::new(g, a, vec![0, 1], theta).unwrap();
        assert!(!m.is_inverse_module());
    }

    #[test]
    fn morphisms() {
        let sign = fixtures::sign_module();
        let pm1 = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(2));
        validate_morphism(&sign, &pm1, &[0, 1, 0, 1]).unwrap();
        assert_eq!(validate_morphism(&sign, &pm1, &[0, 1, 1, 0]).unwrap_err(), MorphismError::NotMultiplicative);
        // Z3 trivial -> Z3 with inversion: identity map is not equivariant.
        let z3 = CommMonoid::cyclic_group(3);
        let triv = PartialGModule::trivial(FiniteGroup::cyclic(2), z3.clone());
        let inv = PartialGModule::global(FiniteGroup::cyclic(2), z3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(validate_morphism(&triv, &inv, &[0, 1, 2]).unwrap_err(), MorphismError::EquivarianceFailed(1));
        // The sign module has 1_g = e, which a map to the trivial module sends to 1.
        let to_sign = validate_morphism(&pm1, &sign, &[0, 1]);
        assert_eq!(to_sign.unwrap_err(), MorphismError::IdempotentMismatch(1));
    }

    #[test]
    fn self_module_of_z2_with_zero() {
        let s = InvSemigroup::validate(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]).unwrap();
        let sm = SModule::self_module(&s).unwrap();
        assert!(sm.is_strict());
    }
}
