//! Cohomology of max-generated F-inverse monoids as partial group cohomology,
//! and the module `Â = ⊔_{e∈E(S)} A_e` built from a global `G`-module.

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{cohomology, Cochain, CochainGroup, CohomologyError, CohomologyGroup, DEFAULT_BUDGET};
use crate::exel::{build_exel, validate_epi, ExelError, ExelMonoid};
use crate::group::FiniteGroup;
use crate::monoid::{CommMonoid, MonoidError, UnitGroupCache};
use crate::partial_module::{ModuleError, PartialGModule, SModule, SModuleError};
use crate::resolution::ResolutionError;
use crate::semigroup::{Congruence, InvSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("S is not a max-generated F-inverse monoid: {0}")]
    NotMaxGeneratedFInverse(String),
    #[error("the S-module is not strict")]
    NotStrict,
    #[error("A is not a global G-module over a group: {0}")]
    NotAGModule(String),
    #[error("the coefficient group does not match S/σ")]
    GroupMismatch,
    #[error("cochain map does not commute with the coboundaries in degree {0}")]
    NotAChainMap(usize),
    #[error("the conjugation identity for ε fails at {0:?}")]
    EpsilonConjugation(Vec<usize>),
    #[error(transparent)]
    Exel(#[from] ExelError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    SModule(#[from] SModuleError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// `G = S/σ` and the epimorphism `π: 𝒮(G) → S` with `π([x]) = max x`.
#[derive(Debug, Clone)]
pub struct FInverseData {
    pub semigroup: InvSemigroup,
    pub sigma: Congruence,
    pub group: FiniteGroup,
    /// `Γ(x) = π([x])`, the maximum of the σ-class `x`.
    pub maxima: Vec<usize>,
    pub exel: ExelMonoid,
    pub pi: Vec<usize>,
}

impl FInverseData {
    pub fn new(s: &InvSemigroup) -> Result<Self, BridgeError> {
        let c = s.classify();
        if !(c.f_inverse && c.max_generated) {
            return Err(BridgeError::NotMaxGeneratedFInverse(c.reason.unwrap_or_default()));
        }
        let (sigma, group) = s.min_group_congruence();
        let maxima = s.sigma_class_maxima(&sigma).expect("F-inverse");
        let exel = build_exel(&group)?;
        let report = validate_epi(&exel, s, &maxima)?;
        debug_assert!(report.surjective && report.kernel_in_sigma);
        Ok(Self {
            semigroup: s.clone(),
            sigma,
            group,
            maxima,
            exel,
            pi: report.pi,
        })
    }

    /// `ε_{x⃗} = Γ(x₁)⋯Γ(xₙ)Γ(xₙ)⁻¹⋯Γ(x₁)⁻¹`.
    pub fn epsilon(&self, xs: &[usize]) -> usize {
        let s = &self.semigroup;
        let mut acc = s.identity().expect("monoid");
        for &x in xs.iter().rev() {
            let gx = self.maxima[x];
            acc = s.mul(s.mul(gx, acc), s.inv(gx));
        }
        acc
    }

    /// `Γ(x₁)ε_{(x₂,…)}Γ(x₁)⁻¹ = ε_{(x₁,x₂,…)}` for all tuples of length `1..=len`.
    pub fn check_epsilon_conjugation(&self, len: usize) -> Result<(), BridgeError> {
        let g = &self.group;
        let s = &self.semigroup;
        for n in 1..=len {
            for t in 0..g.tuple_count(n) {
                let xs = g.tuple(t, n);
                let gx = self.maxima[xs[0]];
                if s.mul(s.mul(gx, self.epsilon(&xs[1..])), s.inv(gx)) != self.epsilon(&xs) {
                    return Err(BridgeError::EpsilonConjugation(xs));
                }
            }
        }
        Ok(())
    }
}

/// The inverse partial `G`-module with `1_x = α(π(ε_x))` and
/// `θ_x(a) = λ_{π([x])}(a)` on `1_{x⁻¹}A`.
pub fn pull_back(f: &FInverseData, sm: &SModule) -> Result<PartialGModule, BridgeError> {
    if !sm.is_strict() {
        return Err(BridgeError::NotStrict);
    }
    let s = &f.semigroup;
    let a = sm.monoid();
    let g = &f.group;
    let unit_idems: Vec<usize> = (0..g.order()).map(|x| sm.alpha(s.dom(f.maxima[x]))).collect();
    let theta = (0..g.order())
        .map(|x| {
            let d = unit_idems[g.inv(x)];
            (0..a.len())
                .map(|b| a.in_ideal(d, b).then(|| sm.lambda(f.maxima[x], b)))
                .collect()
        })
        .collect();
    Ok(PartialGModule::new(g.clone(), a.clone(), unit_idems, theta)?)
}

/// `Hⁿ_S(A) ≅ Hⁿ(G, A)` for a strict module over a max-generated F-inverse monoid.
pub fn cohomology_of_finverse(s: &InvSemigroup, sm: &SModule, n: usize, budget: usize) -> Result<(PartialGModule, CohomologyGroup), BridgeError> {
    let f = FInverseData::new(s)?;
    let m = pull_back(&f, sm)?;
    let h = cohomology(&m, n, budget)?;
    Ok((m, h))
}

/// `Â` with carrier pairs `a_e`, element `(e, a)` at index `pos(e)·|A| + a`.
#[derive(Debug, Clone)]
pub struct HatModule {
    pub data: FInverseData,
    /// Idempotents of `S` in increasing order.
    pub idempotents: Vec<usize>,
    /// `φ: S → G` into the coefficient group's labelling.
    pub phi: Vec<usize>,
    /// `S/σ` label to coefficient-group label.
    pub group_iso: Vec<usize>,
    pub coefficients: PartialGModule,
    pub module: SModule,
}

impl HatModule {
    pub fn element(&self, e: usize, a: usize) -> usize {
        let pos = self.idempotents.binary_search(&e).expect("idempotent of S");
        pos * self.coefficients.monoid().len() + a
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        let k = self.coefficients.monoid().len();
        (self.idempotents[i / k], i % k)
    }

    /// The partial `G`-module induced by `Â` over `G = S/σ`.
    pub fn partial_module(&self) -> Result<PartialGModule, BridgeError> {
        pull_back(&self.data, &self.module)
    }

    /// `f̂(x⃗) = f(x⃗)_{ε_{x⃗}}`, with `x⃗` read in the `S/σ` labelling.
    pub fn hat_cochain(&self, f: &Cochain) -> Cochain {
        let g = &self.data.group;
        let h = self.coefficients.group();
        let values = (0..g.tuple_count(f.degree))
            .map(|t| {
                let xs = g.tuple(t, f.degree);
                let ys: Vec<usize> = xs.iter().map(|&x| self.group_iso[x]).collect();
                self.element(self.data.epsilon(&xs), f.values[h.tuple_index(&ys)])
            })
            .collect();
        Cochain { degree: f.degree, values }
    }
}

/// Builds `Â` with `a_e b_f = (ab)_{ef}`, `λ_s(a_e) = (φ(s)a)_{ses⁻¹}`, `α(e) = 1_e`.
pub fn hat_module(s: &InvSemigroup, a: &PartialGModule) -> Result<HatModule, BridgeError> {
    let am = a.monoid();
    if a.unit_idems().iter().any(|&e| e != am.identity()) {
        return Err(BridgeError::NotAGModule("some 1_x is not the identity".into()));
    }
    if am.unit_elements(am.identity()).len() != am.len() {
        return Err(BridgeError::NotAGModule("A is not a group".into()));
    }
    let data = FInverseData::new(s)?;
    let group_iso = data.group.isomorphism_to(a.group()).ok_or(BridgeError::GroupMismatch)?;
    let phi: Vec<usize> = (0..s.len()).map(|u| group_iso[data.sigma.class_of(u)]).collect();
    let idempotents = s.idempotents();
    let k = am.len();
    let size = idempotents.len() * k;
    let pos = |e: usize| idempotents.binary_search(&e).unwrap();
    let table: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let (e, x) = (idempotents[i / k], i % k);
                    let (f, y) = (idempotents[j / k], j % k);
                    pos(s.mul(e, f)) * k + am.mul(x, y)
                })
                .collect()
        })
        .collect();
    InvSemigroup::validate(table.clone())?;
    let monoid = CommMonoid::from_table(table)?;
    let lambda: Vec<Vec<usize>> = (0..s.len())
        .map(|u| {
            (0..size)
                .map(|i| {
                    let (e, x) = (idempotents[i / k], i % k);
                    let ses = s.mul(s.mul(u, e), s.inv(u));
                    pos(ses) * k + a.theta(phi[u], x)
                })
                .collect()
        })
        .collect();
    let alpha: Vec<Option<usize>> = (0..s.len())
        .map(|u| s.is_idempotent(u).then(|| pos(u) * k + am.identity()))
        .collect();
    let module = SModule::new(s.clone(), monoid, lambda, alpha)?;
    if !module.is_strict() {
        return Err(BridgeError::NotStrict);
    }
    Ok(HatModule {
        data,
        idempotents,
        phi,
        group_iso,
        coefficients: a.clone(),
        module,
    })
}

/// Checks that `f ↦ f̂` is a bijective cochain map `Cⁿ(G, A) → Cⁿ(G, Â)` for
/// degrees `0..=n`; exhaustive when `|Cᵏ| ≤ 10⁴`, otherwise on generators.
pub fn check_hat_cochain_iso(hat: &HatModule, n: usize) -> Result<(), BridgeError> {
    let a = &hat.coefficients;
    let m = hat.partial_module()?;
    hat.data.check_epsilon_conjugation(n + 1)?;
    let mut ca = UnitGroupCache::default();
    let mut cm = UnitGroupCache::default();
    for k in 0..=n {
        let src = CochainGroup::new(a, k, DEFAULT_BUDGET, &mut ca)?;
        let dst = CochainGroup::new(a, k + 1, DEFAULT_BUDGET, &mut ca)?;
        let hsrc = CochainGroup::new(&m, k, DEFAULT_BUDGET, &mut cm)?;
        let hdst = CochainGroup::new(&m, k + 1, DEFAULT_BUDGET, &mut cm)?;
        if src.order() != hsrc.order() {
            return Err(BridgeError::NotAChainMap(k));
        }
        let cochains: Vec<Cochain> = if src.order() <= 10_000 {
            (0..src.order()).map(|i| src.nth(i)).collect()
        } else {
            let r = src.moduli().len();
            (0..r)
                .map(|j| {
                    let mut x = vec![0u64; r];
                    x[j] = 1;
                    src.from_coords(&x)
                })
                .collect()
        };
        let mut seen = std::collections::BTreeSet::new();
        for f in &cochains {
            let fh = hat.hat_cochain(f);
            if !hsrc.contains(&fh) {
                return Err(BridgeError::NotAChainMap(k));
            }
            let lhs = crate::cohomology::coboundary(&m, &hsrc, &hdst, &fh);
            let rhs = hat.hat_cochain(&crate::cohomology::coboundary(a, &src, &dst, f));
            if lhs != rhs {
                return Err(BridgeError::NotAChainMap(k));
            }
            seen.insert(fh.values);
        }
        if seen.len() != cochains.len() {
            return Err(BridgeError::NotAChainMap(k));
        }
    }
    Ok(())
}

/// Summary comparing `Hⁿ(G, A)` with `Hⁿ(G, Â)`.
#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    pub degree: usize,
    pub classical: Option<Vec<u64>>,
    pub direct: Vec<u64>,
    pub hat_direct: Vec<u64>,
    pub hat_resolution: Vec<u64>,
    pub hat_order: usize,
}

impl BridgeReport {
    pub fn agrees(&self) -> bool {
        self.classical.as_ref().is_none_or(|c| *c == self.direct) && self.direct == self.hat_direct && self.hat_direct == self.hat_resolution
    }
}

pub fn bridge_report(s: &InvSemigroup, a: &PartialGModule, n: usize, budget: usize) -> Result<BridgeReport, BridgeError> {
    let hat = hat_module(s, a)?;
    let m = hat.partial_module()?;
    let classical = classical::cohomology(a.group(), a.monoid(), &classical::action_of(a), n, classical::DEFAULT_LIMIT);
    let direct = cohomology(a, n, budget)?.invariant_factors().to_vec();
    let hat_direct = cohomology(&m, n, budget)?.invariant_factors().to_vec();
    let hat_resolution = crate::resolution::cohomology_via_resolution(&m, n, budget)
?
        .invariant_factors()
        .to_vec();
    Ok(BridgeReport {
        degree: n,
        classical,
        direct,
        hat_direct,
        hat_resolution,
        hat_order: hat.module.monoid().len(),
    })
}

/// Classical group cohomology by exhaustive enumeration over the bar complex,
/// independent of the partial-module code paths.
pub mod classical {
    use crate::abelian::invariant_factors_from_torsion;
    use crate::group::FiniteGroup;
    use crate::monoid::CommMonoid;
    use crate::partial_module::PartialGModule;
    use std::collections::HashSet;

    /// Largest number of cochains enumerated in one degree.
    pub const DEFAULT_LIMIT: u128 = 1_000_000;

    /// `θ_x` tables of a global module.
    pub fn action_of(m: &PartialGModule) -> Vec<Vec<usize>> {
        (0..m.group().order())
            .map(|x| (0..m.monoid().len()).map(|a| m.theta(x, a)).collect())
            .collect()
    }

    fn inverses(a: &CommMonoid) -> Vec<usize> {
        let one = a.identity();
        (0..a.len())
            .map(|x| (0..a.len()).find(|&y| a.mul(x, y) == one).expect("A is a group"))
            .collect()
    }

    /// `(δf)(x₁,…,xₙ₊₁) = x₁·f(x₂,…) · Π f(…,xᵢxᵢ₊₁,…)^{(-1)^i} · f(x₁,…,xₙ)^{(-1)^{n+1}}`.
    pub fn coboundary(g: &FiniteGroup, a: &CommMonoid, action: &[Vec<usize>], f: &[usize], n: usize) -> Vec<usize> {
        let inv = inverses(a);
        let pow = |v: usize, sign: bool| if sign { v } else { inv[v] };
        (0..g.tuple_count(n + 1))
            .map(|t| {
                let xs = g.tuple(t, n + 1);
                let mut acc = action[xs[0]][f[g.tuple_index(&xs[1..])]];
                for i in 0..n {
                    let mut ys = xs.clone();
                    ys[i] = g.mul(xs[i], xs[i + 1]);
                    ys.remove(i + 1);
                    acc = a.mul(acc, pow(f[g.tuple_index(&ys)], (i + 1) % 2 == 0));
                }
                a.mul(acc, pow(f[g.tuple_index(&xs[..n])], (n + 1).is_multiple_of(2)))
            })
            .collect()
    }

    fn decode(mut code: u128, len: usize, base: usize) -> Vec<usize> {
        (0..len)
            .map(|_| {
                let v = (code % base as u128) as usize;
                code /= base as u128;
                v
            })
            .collect()
    }

    /// Invariant factors of `Hⁿ(G, A)` for a finite abelian group `A` with
    /// `G` acting by `action`, or `None` above `limit` cochains.
    pub fn cohomology(g: &FiniteGroup, a: &CommMonoid, action: &[Vec<usize>], n: usize, limit: u128) -> Option<Vec<u64>> {
        let k = a.len();
        let len_n = g.tuple_count(n);
        let size_n = (k as u128).checked_pow(len_n as u32)?;
        let size_below = if n == 0 { 1 } else { (k as u128).checked_pow(g.tuple_count(n - 1) as u32)? };
        if size_n > limit || size_below > limit {
            return None;
        }
        let one = a.identity();
        let cocycles: Vec<Vec<usize>> = (0..size_n)
            .map(|c| decode(c, len_n, k))
            .filter(|f| coboundary(g, a, action, f, n).iter().all(|&v| v == one))
            .collect();
        let boundaries: HashSet<Vec<usize>> = if n == 0 {
            std::iter::once(vec![one]).collect()
        } else {
            let len_b = g.tuple_count(n - 1);
            (0..size_below).map(|c| coboundary(g, a, action, &decode(c, len_b, k), n - 1)).collect()
        };
        let order = (cocycles.len() / boundaries.len()) as u64;
        let power = |f: &[usize], d: u64| -> Vec<usize> {
            f.iter()
                .map(|&v| (0..d).fold(one, |acc, _| a.mul(acc, v)))
                .collect()
        };
        Some(invariant_factors_from_torsion(order, |d| {
            (cocycles.iter().filter(|f| boundaries.contains(&power(f, d))).count() / boundaries.len()) as u64
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::idempotent_crossed_product;
    use crate::fixtures;
    use crate::resolution::Resolution;

    fn sign_s_prime() -> (InvSemigroup, SModule) {
        let m = fixtures::sign_module();
        let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
        let s = r.s_prime().clone();
        let lambda = (0..s.len()).map(|u| (0..m.monoid().len()).map(|a| r.lambda(u, a)).collect()).collect();
        let el = idempotent_crossed_product(&m).elements;
        let alpha = (0..s.len()).map(|u| s.is_idempotent(u).then(|| el[u].0)).collect();
        (s.clone(), SModule::new(s, m.monoid().clone(), lambda, alpha).unwrap())
    }

    #[test]
    fn classical_values() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let a2 = CommMonoid::cyclic_group(2);
        let a3 = CommMonoid::cyclic_group(3);
        let triv = |g: &FiniteGroup, a: &CommMonoid| vec![(0..a.len()).collect::<Vec<_>>(); g.order()];
        assert_eq!(classical::cohomology(&z2, &a2, &triv(&z2, &a2), 1, 1000), Some(vec![2]));
        assert_eq!(classical::cohomology(&z2, &a2, &triv(&z2, &a2), 2, 1000), Some(vec![2]));
        assert_eq!(classical::cohomology(&z3, &a3, &triv(&z3, &a3), 2, 100_000), Some(vec![3]));
        assert_eq!(classical::cohomology(&z2, &a3, &triv(&z2, &a3), 2, 1000), Some(vec![]));
        // ℤ₃ with inversion over ℤ₂: H¹ = ℤ₃-kernel of (1 + g) mod image of (g - 1) = 0.
        let inv = vec![vec![0, 1, 2], vec![0, 2, 1]];
        assert_eq!(classical::cohomology(&z2, &a3, &inv, 1, 1000), Some(vec![]));
        assert_eq!(classical::cohomology(&z2, &a3, &inv, 0, 1000), Some(vec![]));
    }

    #[test]
    fn finverse_group_case() {
        // GF(3)* ≅ ℤ₂ as a trivial module over the group ℤ₂.
        let s = InvSemigroup::from_group(&FiniteGroup::cyclic(2));
        let a = CommMonoid::cyclic_group(2);
        let lambda = vec![(0..2).collect(), (0..2).collect()];
        let sm = SModule::new(s.clone(), a, lambda, vec![Some(0), None]).unwrap();
        let (_, h) = cohomology_of_finverse(&s, &sm, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
    }

    #[test]
    fn finverse_sign_s_prime() {
        let (s, sm) = sign_s_prime();
        assert_eq!(s.len(), 3);
        let (m, h) = cohomology_of_finverse(&s, &sm, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
        assert!(m.group().isomorphism_to(&FiniteGroup::cyclic(2)).is_some());
    }

    #[test]
    fn semilattice_is_rejected() {
        let s = InvSemigroup::validate(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let sm = SModule::self_module(&s).unwrap();
        assert!(matches!(cohomology_of_finverse(&s, &sm, 1, DEFAULT_BUDGET), Err(BridgeError::NotMaxGeneratedFInverse(_))));
    }

    #[test]
    fn hat_module_counts() {
        let (s, _) = sign_s_prime();
        let a = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(2));
        let hat = hat_module(&s, &a).unwrap();
        assert_eq!(hat.module.monoid().len(), 4);
        let exel = fixtures::exel_z2();
        let hat = hat_module(exel.semigroup(), &a).unwrap();
        assert_eq!(hat.idempotents.len(), 2);
        let g = InvSemigroup::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(hat_module(&g, &a).unwrap().module.monoid().len(), 2);
        let trivial = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(1));
        let hat = hat_module(exel.semigroup(), &trivial).unwrap();
        assert!(hat.module.monoid().idempotents().len() == hat.module.monoid().len());
    }

    #[test]
    fn hat_bridge_agrees() {
        let exel = fixtures::exel_z2();
        for k in [2, 3] {
            let a = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(k));
            let hat = hat_module(exel.semigroup(), &a).unwrap();
            check_hat_cochain_iso(&hat, 2).unwrap();
            for n in 0..=2 {
                let r = bridge_report(exel.semigroup(), &a, n, DEFAULT_BUDGET).unwrap();
                assert!(r.agrees(), "{r:?}");
                assert!(r.classical.is_some());
            }
        }
    }

    #[test]
    fn representatives_match_under_hat() {
        let exel = fixtures::exel_z2();
        let a = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(2));
        let hat = hat_module(exel.semigroup(), &a).unwrap();
        let m = hat.partial_module().unwrap();
        let h = cohomology(&a, 2, DEFAULT_BUDGET).unwrap();
        let hh = cohomology(&m, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
        for f in &h.representatives {
            let fh = hat.hat_cochain(f);
            assert!(hh.is_cocycle(&fh));
            assert_ne!(hh.class_of(&fh), hh.class_of(&hh.cochains.identity()));
        }
        assert_eq!(hat.hat_cochain(&h.cochains.identity()), hh.cochains.identity());
    }
}
