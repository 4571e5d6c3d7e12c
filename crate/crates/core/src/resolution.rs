//! The free resolution `Rₙ = F(Vₙ)` of `ℤ_{S′}` over `S′ = E(A)∗_θG`, its
//! contracting homotopy, and cohomology computed as `f ↦ f∘∂ₙ₊₁`.
//!
//! Elements of `Rₙ` are sparse formal sums of generators `(s, x⃗)` with
//! `s⁻¹s ≤ ε_{x⃗}`, all lying in one component `ss⁻¹`. Notation is additive in
//! `Rₙ` and multiplicative in `A`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::IntHom;
use crate::cohomology::{cohomology_from_complex, Cochain, CochainGroup, CohomologyError, CohomologyGroup, Complex};
use crate::crossed::idempotent_crossed_product;
use crate::monoid::UnitGroupCache;
use crate::partial_module::PartialGModule;
use crate::semigroup::{InvSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("the partial module is not inverse")]
    NotInverseModule,
    #[error("degree {degree} needs {tuples} tuples, over the budget {budget}")]
    BudgetExceeded { degree: usize, tuples: usize, budget: usize },
    #[error("homotopy identity fails in degree {degree} at generator (s = {s}, tuple = {tuple:?})")]
    HomotopyFailed { degree: usize, s: usize, tuple: Vec<usize> },
    #[error("∂∘∂ ≠ 0 in degree {0}")]
    NotAComplex(usize),
    #[error("η property fails: {0}")]
    EtaFailed(String),
    #[error("cochain/morphism dictionary fails in degree {0}")]
    HomMismatch(usize),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// An element of one component of `Rₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeElement {
    pub degree: usize,
    /// Idempotent `e ∈ S′` with the element in `F_e`.
    pub component: usize,
    /// `(s, tuple index) ↦ coefficient`, zero coefficients dropped.
    pub terms: BTreeMap<(usize, usize), i64>,
}

impl FreeElement {
    pub fn zero(degree: usize, component: usize) -> Self {
        Self {
            degree,
            component,
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, key: (usize, usize), c: i64) {
        let v = self.terms.entry(key).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }
}

/// `n_e ∈ (ℤ_{S′})_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrivialElement {
    pub component: usize,
    pub value: i64,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    module: PartialGModule,
    s_prime: InvSemigroup,
    /// `S′` element `i` is `(e, y)` with `e ∈ E(A)`, `e ≤ 1_y`.
    elements: Vec<(usize, usize)>,
    gamma: Vec<usize>,
    budget: usize,
}

impl Resolution {
    pub fn new(m: &PartialGModule, budget: usize) -> Result<Self, ResolutionError> {
        if !m.is_inverse_module() {
            return Err(ResolutionError::NotInverseModule);
        }
        let sp = idempotent_crossed_product(m);
        let s_prime = InvSemigroup::validate(sp.table.clone())?;
        let g = m.group();
        let gamma = (0..g.order())
            .map(|x| sp.index_of((m.unit_idem(x), x)).expect("1_xδ_x ∈ S′"))
            .collect();
        Ok(Self {
            module: m.clone(),
            s_prime,
            elements: sp.elements,
            gamma,
            budget,
        })
    }

    pub fn module(&self) -> &PartialGModule {
        &self.module
    }

    pub fn s_prime(&self) -> &InvSemigroup {
        &self.s_prime
    }

    pub fn s_prime_elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    /// `Γ(x) = 1_xδ_x`.
    pub fn gamma(&self, x: usize) -> usize {
        self.gamma[x]
    }

    /// `η(eδ_y) = y`.
    pub fn eta(&self, s: usize) -> usize {
        self.elements[s].1
    }

    fn index(&self, e: usize, y: usize) -> usize {
        self.elements.binary_search(&(e, y)).expect("element of S′")
    }

    /// `ε_{(x₁,…,xₙ)} = ε_{x₁}ε_{x₁x₂}⋯ε_{x₁⋯xₙ}`, with `ε_{()} = 1`.
    pub fn epsilon(&self, xs: &[usize]) -> usize {
        self.index(self.module.tuple_idem(xs), self.module.group().identity())
    }

    fn check_budget(&self, degree: usize) -> Result<usize, ResolutionError> {
        let n = self.module.group().order();
        let tuples = n.checked_pow(degree as u32).unwrap_or(usize::MAX);
        if tuples > self.budget {
            return Err(ResolutionError::BudgetExceeded {
                degree,
                tuples,
                budget: self.budget,
            });
        }
        Ok(tuples)
    }

    /// The component `T_e` of `Vₙ` for every `e`, as tuple indices.
    pub fn ess_set(&self, degree: usize) -> Result<BTreeMap<usize, Vec<usize>>, ResolutionError> {
        let count = self.check_budget(degree)?;
        let g = self.module.group();
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in 0..count {
            out.entry(self.epsilon(&g.tuple(t, degree))).or_default().push(t);
        }
        Ok(out)
    }

    /// Generators `(s, x⃗)` of `Rₙ`: `s⁻¹s ≤ ε_{x⃗}`.
    pub fn generators(&self, degree: usize) -> Result<Vec<(usize, usize)>, ResolutionError> {
        let count = self.check_budget(degree)?;
        let g = self.module.group();
        let s = &self.s_prime;
        let eps: Vec<usize> = (0..count).map(|t| self.epsilon(&g.tuple(t, degree))).collect();
        Ok((0..s.len())
            .flat_map(|u| (0..count).map(move |t| (u, t)))
            .filter(|&(u, t)| s.leq(s.ran(u), eps[t]))
            .collect())
    }

    pub fn generator(&self, degree: usize, s: usize, t: usize) -> FreeElement {
        let mut f = FreeElement::zero(degree, self.s_prime.dom(s));
        f.push((s, t), 1);
        f
    }

    /// `ι(x⃗) = (ε_{x⃗}, x⃗)`.
    pub fn basic(&self, xs: &[usize]) -> FreeElement {
        let t = self.module.group().tuple_index(xs);
        self.generator(xs.len(), self.epsilon(xs), t)
    }

    /// `λ_u(s, t) = (us, t)`.
    pub fn act(&self, u: usize, x: &FreeElement) -> FreeElement {
        let s = &self.s_prime;
        let comp = s.mul(s.mul(u, x.component), s.inv(u));
        let mut out = FreeElement::zero(x.degree, comp);
        for (&(v, t), &c) in &x.terms {
            out.push((s.mul(u, v), t), c);
        }
        out
    }

    /// Sum in `F_{ee′}`: `(s, t) + (s′, t′) = (e′s, t) + (es′, t′)`.
    pub fn add(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        let s = &self.s_prime;
        let mut out = self.act(y.component, x);
        for (&k, &c) in &self.act(x.component, y).terms {
            out.push(k, c);
        }
        out.component = s.mul(x.component, y.component);
        out
    }

    pub fn scale(&self, k: i64, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(x.degree, x.component);
        if k != 0 {
            for (&key, &c) in &x.terms {
                out.push(key, k * c);
            }
        }
        out
    }

    /// `∂ₙ` on the basic generator of `x⃗`, `n ≥ 1`.
    fn boundary_basic(&self, xs: &[usize]) -> FreeElement {
        let g = self.module.group();
        let s = &self.s_prime;
        let n = xs.len();
        let e = self.epsilon(xs);
        let mut out = FreeElement::zero(n - 1, e);
        let head = s.mul(self.gamma[xs[0]], self.epsilon(&xs[1..]));
        out.push((head, g.tuple_index(&xs[1..])), 1);
        for i in 0..n - 1 {
            let mut merged = xs.to_vec();
            merged[i] = g.mul(xs[i], xs[i + 1]);
            merged.remove(i + 1);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            out.push((e, g.tuple_index(&merged)), sign);
        }
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        out.push((e, g.tuple_index(&xs[..n - 1])), sign);
        out
    }

    /// `∂ₙ(s, x⃗) = λ_s(∂ₙ ι(x⃗))`, extended additively.
    pub fn boundary(&self, x: &FreeElement) -> FreeElement {
        assert!(x.degree > 0, "use boundary0 in degree 0");
        let g = self.module.group();
        let mut out = FreeElement::zero(x.degree - 1, x.component);
        for (&(u, t), &c) in &x.terms {
            let img = self.act(u, &self.boundary_basic(&g.tuple(t, x.degree)));
            for (&k, &v) in &img.terms {
                out.push(k, c * v);
            }
        }
        out
    }

    /// `∂₀(s, ()) = 1_{ss⁻¹}`.
    pub fn boundary0(&self, x: &FreeElement) -> TrivialElement {
        TrivialElement {
            component: x.component,
            value: x.terms.values().sum(),
        }
    }

    /// `σₙ(s, x⃗) = (ss⁻¹, (η(s), x⃗))`, additive on each component.
    pub fn homotopy(&self, x: &FreeElement) -> FreeElement {
        let g = self.module.group();
        let mut out = FreeElement::zero(x.degree + 1, x.component);
        for (&(u, t), &c) in &x.terms {
            let mut xs = vec![self.eta(u)];
            xs.extend(g.tuple(t, x.degree));
            out.push((self.s_prime.dom(u), g.tuple_index(&xs)), c);
        }
        out
    }

    /// `σ₋₁(n_e) = n(e, ())`.
    pub fn homotopy_minus1(&self, z: &TrivialElement) -> FreeElement {
        let mut out = FreeElement::zero(0, z.component);
        out.push((z.component, 0), z.value);
        out
    }

    /// The three properties of `η`: `η(Γ(x)) = x`, `ss⁻¹Γ(η(s)) = s`, `sΓ(η(s)⁻¹) = ss⁻¹`.
    pub fn check_eta(&self) -> Result<(), ResolutionError> {
        let g = self.module.group();
        let s = &self.s_prime;
        for x in 0..g.order() {
            if self.eta(self.gamma[x]) != x {
                return Err(ResolutionError::EtaFailed(format!("η(Γ({x})) ≠ {x}")));
            }
        }
        for u in 0..s.len() {
            let y = self.eta(u);
            if s.mul(s.dom(u), self.gamma[y]) != u {
                return Err(ResolutionError::EtaFailed(format!("ss⁻¹Γ(η(s)) ≠ s at {u}")));
            }
            if s.mul(u, self.gamma[g.inv(y)]) != s.dom(u) {
                return Err(ResolutionError::EtaFailed(format!("sΓ(η(s)⁻¹) ≠ ss⁻¹ at {u}")));
            }
        }
        Ok(())
    }

    /// Verifies `∂σ + σ∂ = id`, `∂∂ = 0` and `∂₀∂₁ = 0` on all generators up to `max_degree`.
    pub fn check_homotopy(&self, max_degree: usize) -> Result<HomotopyReport, ResolutionError> {
        self.check_eta()?;
        let g = self.module.group();
        let mut checked = Vec::new();
        for n in 0..=max_degree {
            self.check_budget(n + 1)?;
            let gens = self.generators(n)?;
            for &(u, t) in &gens {
                let x = self.generator(n, u, t);
                let up = self.boundary(&self.homotopy(&x));
                let down = if n == 0 {
                    self.homotopy_minus1(&self.boundary0(&x))
                } else {
                    self.homotopy(&self.boundary(&x))
                };
                let mut total = up;
                for (&k, &c) in &down.terms {
                    total.push(k, c);
                }
                if total.terms != x.terms {
                    return Err(ResolutionError::HomotopyFailed {
                        degree: n,
                        s: u,
                        tuple: g.tuple(t, n),
                    });
                }
                if n >= 2 && !self.boundary(&self.boundary(&x)).terms.is_empty() {
                    return Err(ResolutionError::NotAComplex(n));
                }
                if n == 1 && self.boundary0(&self.boundary(&x)).value != 0 {
                    return Err(ResolutionError::NotAComplex(1));
                }
            }
            checked.push(gens.len());
        }
        Ok(HomotopyReport {
            s_prime_order: self.s_prime.len(),
            generators_checked: checked,
        })
    }

    /// `φ̌(Σ c (s, t)) = Π λ_s(f(t))^c` in `U(α(e)A)`.
    pub fn evaluate(&self, f: &Cochain, x: &FreeElement, cache: &mut UnitGroupCache) -> usize {
        let a = self.module.monoid();
        let e = self.elements[x.component].0;
        let unit = cache.get(a, e);
        let mut acc = e;
        for (&(u, t), &c) in &x.terms {
            let v = self.lambda(u, f.values[t]);
            debug_assert!(unit.contains(v), "λ_s(f(t)) lies in U(α(ss⁻¹)A)");
            let base = if c < 0 { unit.inverse(v) } else { v };
            for _ in 0..c.unsigned_abs() {
                acc = a.mul(acc, base);
            }
        }
        acc
    }

    /// `λ_{eδ_y}(a) = e·θ_y(1_{y⁻¹}a)`.
    pub fn lambda(&self, s: usize, a: usize) -> usize {
        let (e, y) = self.elements[s];
        self.module.monoid().mul(e, self.module.transport(y, a))
    }

    /// `δⁿf = f∘∂ₙ₊₁` evaluated on basic generators.
    pub fn coboundary(&self, f: &Cochain, cache: &mut UnitGroupCache) -> Result<Cochain, ResolutionError> {
        let n = f.degree;
        let count = self.check_budget(n + 1)?;
        let g = self.module.group();
        let values = (0..count)
            .map(|t| {
                let img = self.boundary(&self.basic(&g.tuple(t, n + 1)));
                self.evaluate(f, &img, cache)
            })
            .collect();
        Ok(Cochain { degree: n + 1, values })
    }

    /// Checks the `Hom_π(Rₙ, A) ≅ Cⁿ` dictionary on the generators of the cochain group:
    /// the extension of `f` is `S′`-equivariant, lands in `U(α(ss⁻¹)A)`, and
    /// pointwise products correspond.
    pub fn check_hom_dictionary(&self, c: &CochainGroup, cache: &mut UnitGroupCache) -> Result<(), ResolutionError> {
        let n = c.degree();
        let gens = self.generators(n)?;
        let a = self.module.monoid();
        let s = &self.s_prime;
        let k = c.moduli().len();
        let basis: Vec<Cochain> = (0..k)
            .map(|j| {
                let mut x = vec![0u64; k];
                x[j] = 1;
                c.from_coords(&x)
            })
            .collect();
        for f in &basis {
            for &(u, t) in &gens {
                let val = self.evaluate(f, &self.generator(n, u, t), cache);
                if !cache.get(a, self.elements[s.dom(u)].0).contains(val) {
                    return Err(ResolutionError::HomMismatch(n));
                }
                for w in 0..s.len() {
                    let lhs = self.lambda(w, val);
                    let rhs = self.evaluate(f, &self.act(w, &self.generator(n, u, t)), cache);
                    if lhs != rhs {
                        return Err(ResolutionError::HomMismatch(n));
                    }
                }
            }
        }
        for f in &basis {
            for h in &basis {
                let fh = c.mul(&self.module, f, h);
                for &(u, t) in &gens {
                    let x = self.generator(n, u, t);
                    let lhs = self.evaluate(&fh, &x, cache);
                    let rhs = a.mul(self.evaluate(f, &x, cache), self.evaluate(h, &x, cache));
                    if lhs != rhs {
                        return Err(ResolutionError::HomMismatch(n));
                    }
                }
            }
        }
        Ok(())
    }

    fn coboundary_matrix(&self, src: &CochainGroup, dst: &CochainGroup, cache: &mut UnitGroupCache) -> Result<IntHom, ResolutionError> {
        let k = src.moduli().len();
        let columns = (0..k)
            .map(|j| {
                let mut x = vec![0u64; k];
                x[j] = 1;
                let d = self.coboundary(&src.from_coords(&x), cache)?;
                Ok(dst.to_coords(&d))
            })
            .collect::<Result<Vec<_>, ResolutionError>>()?;
        Ok(IntHom::from_columns(src.moduli().to_vec(), dst.moduli().to_vec(), &columns))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomotopyReport {
    pub s_prime_order: usize,
    /// Generator counts of `R₀, R₁, …` on which the identity was verified.
    pub generators_checked: Vec<usize>,
}

/// `Hⁿ(G, A)` via `f ↦ f∘∂ₙ₊₁`. Non-inverse modules are replaced by `Ã`,
/// which has the same cochain groups.
pub fn cohomology_via_resolution(m: &PartialGModule, n: usize, budget: usize) -> Result<CohomologyGroup, ResolutionError> {
    let tilde;
    let module = if m.is_inverse_module() {
        m
    } else {
        tilde = m.make_tilde().0;
        &tilde
    };
    let r = Resolution::new(module, budget)?;
    r.check_budget(n + 1)?;
    let mut cache = UnitGroupCache::default();
    let above = CochainGroup::new(module, n + 1, budget, &mut cache)?;
    let at = CochainGroup::new(module, n, budget, &mut cache)?;
    let below = if n > 0 { Some(CochainGroup::new(module, n - 1, budget, &mut cache)?) } else { None };
    let outgoing = r.coboundary_matrix(&at, &above, &mut cache)?;
    let incoming = match &below {
        Some(b) => r.coboundary_matrix(b, &at, &mut cache)?,
        None => IntHom::zero(vec![], at.moduli().to_vec()),
    };
    Ok(cohomology_from_complex(Complex {
        below,
        at,
        above,
        incoming,
        outgoing,
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{coboundary, cohomology, DEFAULT_BUDGET};
    use crate::fixtures;
    use crate::group::FiniteGroup;
    use crate::monoid::CommMonoid;

    #[test]
    fn sign_module_ess_sets() {
        let r = Resolution::new(&fixtures::sign_module(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.s_prime().len(), 3);
        let v1 = r.ess_set(1).unwrap();
        let one = r.epsilon(&[]);
        let eg = r.epsilon(&[1]);
        assert_eq!(v1[&one], vec![0]);
        assert_eq!(v1[&eg], vec![1]);
        let d = r.boundary(&r.basic(&[1]));
        let mut expect = FreeElement::zero(0, eg);
        expect.push((r.gamma(1), 0), 1);
        expect.push((eg, 0), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn boundary_squares_to_zero_on_z2_pairs() {
        let r = Resolution::new(&fixtures::sign_module(), DEFAULT_BUDGET).unwrap();
        for t in 0..4 {
            let xs = FiniteGroup::cyclic(2).tuple(t, 2);
            assert!(r.boundary(&r.boundary(&r.basic(&xs))).terms.is_empty());
        }
    }

    #[test]
    fn homotopy_on_fixtures() {
        for (_, m) in fixtures::bundled_modules() {
            let m = if m.is_inverse_module() { m } else { m.make_tilde().0 };
            let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
            let rep = r.check_homotopy(3).unwrap();
            assert_eq!(rep.generators_checked.len(), 4);
        }
    }

    #[test]
    fn resolution_coboundary_matches_direct() {
        for (name, m) in fixtures::bundled_modules() {
            let mut cache = UnitGroupCache::default();
            let m = if m.is_inverse_module() { m } else { m.make_tilde().0 };
            let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
            for n in 0..3 {
                let src = CochainGroup::new(&m, n, DEFAULT_BUDGET, &mut cache).unwrap();
                let dst = CochainGroup::new(&m, n + 1, DEFAULT_BUDGET, &mut cache).unwrap();
                let k = src.moduli().len();
                for j in 0..k {
                    let mut x = vec![0u64; k];
                    x[j] = 1;
                    let f = src.from_coords(&x);
                    assert_eq!(r.coboundary(&f, &mut cache).unwrap(), coboundary(&m, &src, &dst, &f), "{name} n={n} f={f:?}");
                }
                r.check_hom_dictionary(&src, &mut cache).unwrap();
            }
        }
    }

    #[test]
    fn two_routes_agree() {
        for (name, m) in fixtures::bundled_modules() {
            for n in 0..=2 {
                let direct = cohomology(&m, n, DEFAULT_BUDGET).unwrap();
                let via = cohomology_via_resolution(&m, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(direct.invariant_factors(), via.invariant_factors(), "{name} n={n}");
            }
        }
    }

    #[test]
    fn hom_in_degree_zero_is_units() {
        let m = fixtures::sign_module();
        let mut cache = UnitGroupCache::default();
        let c0 = CochainGroup::new(&m, 0, DEFAULT_BUDGET, &mut cache).unwrap();
        assert_eq!(c0.moduli(), &[2]);
        let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.generators(0).unwrap().len(), r.s_prime().len());
    }

    #[test]
    fn global_module_gives_group() {
        let m = PartialGModule::trivial(FiniteGroup::cyclic(3), CommMonoid::cyclic_group(2));
        let r = Resolution::new(&m, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.s_prime().len(), 3);
        assert!((0..3).all(|x| r.epsilon(&[x]) == r.epsilon(&[])));
    }

    #[test]
    fn rejects_non_inverse() {
        let m = fixtures::gf3_partial_module().module().clone();
        assert_eq!(Resolution::new(&m, DEFAULT_BUDGET).unwrap_err(), ResolutionError::NotInverseModule);
        assert!(cohomology_via_resolution(&m, 1, DEFAULT_BUDGET).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let r = Resolution::new(&fixtures::sign_module(), 4).unwrap();
        assert!(matches!(r.generators(3), Err(ResolutionError::BudgetExceeded { .. })));
    }
}
