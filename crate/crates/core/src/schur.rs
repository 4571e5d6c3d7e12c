//! Twistings of adjusted `K`-linear partial modules over small finite fields,
//! their correspondence with normalized 2-cocycles, and the Schur-multiplier
//! components `R(G, A) ≅ H²(G, A)`.
//!
//! Only the multiplicative structure of `K` matters here: `K = {0} ∪ ⟨α⟩`
//! with `α` a generator of `K*`. Field elements are indexed `0` for zero and
//! `k` for `α^{k-1}`, so `1` is the unit. For prime `q` with `α` chosen as
//! the least primitive root this matches integer labels only when `q = 3`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{cohomology, Cochain, CohomologyError, DEFAULT_BUDGET};
use crate::group::FiniteGroup;
use crate::monoid::CommMonoid;
use crate::partial_module::{ModuleError, PartialGModule};
use crate::semigroup::closure;

/// Largest number of candidate twistings enumerated.
pub const TWISTING_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("GF({0}) is not a supported field (q must be a prime power at most 9)")]
    UnsupportedField(usize),
    #[error("not a K-semigroup with zero: {0}")]
    NotKSemigroup(String),
    #[error("A is not K-cancellative")]
    NotCancellative,
    #[error("θ_x is not K-linear at x = {0}")]
    ThetaNotKMap(usize),
    #[error("A is not generated by the elements α·1_x")]
    NotAdjusted,
    #[error("twisting zero pattern does not match A at ({0}, {1})")]
    ZeroPatternMismatch(usize, usize),
    #[error("twisting is not normalized at x = {0}")]
    NotNormalized(usize),
    #[error("twisting cocycle identity fails at ({0}, {1}, {2})")]
    CocycleFailed(usize, usize, usize),
    #[error("twistings have different domains")]
    DomainMismatch,
    #[error("enumeration of {0} candidates exceeds the budget")]
    BudgetExceeded(u64),
    #[error("cochain is not a normalized 2-cocycle")]
    NotNormalizedCocycle,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `GF(q)` as `{0} ∪ K*` with `K*` cyclic of order `q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiniteField {
    q: usize,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self, SchurError> {
        if matches!(q, 2 | 3 | 4 | 5 | 7 | 8 | 9) {
            Ok(Self { q })
        } else {
            Err(SchurError::UnsupportedField(q))
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            0
        } else {
            1 + (a - 1 + b - 1) % (self.q - 1)
        }
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        1 + (self.q - 1 - (a - 1)) % (self.q - 1)
    }

    pub fn units(&self) -> std::ops::Range<usize> {
        1..self.q
    }
}

/// An adjusted `K`-linear partial module: a partial `G`-module whose monoid
/// carries a `K`-action `scalar[k][a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLinearModule {
    module: PartialGModule,
    field: FiniteField,
    scalar: Vec<Vec<usize>>,
    zero: usize,
}

impl KLinearModule {
    pub fn new(module: PartialGModule, field: FiniteField, scalar: Vec<Vec<usize>>) -> Result<Self, SchurError> {
        let a = module.monoid();
        let m = a.len();
        let q = field.order();
        if scalar.len() != q || scalar.iter().any(|r| r.len() != m || r.iter().any(|&b| b >= m)) {
            return Err(SchurError::NotKSemigroup("scalar table must be q rows of length |A|".into()));
        }
        let zero = a.zero().ok_or_else(|| SchurError::NotKSemigroup("A has no zero".into()))?;
        for b in 0..m {
            if scalar[1][b] != b {
                return Err(SchurError::NotKSemigroup("1·a ≠ a".into()));
            }
            if scalar[0][b] != zero {
                return Err(SchurError::NotKSemigroup("0·a ≠ 0".into()));
            }
            for k in 0..q {
                for l in 0..q {
                    if scalar[field.mul(k, l)][b] != scalar[k][scalar[l][b]] {
                        return Err(SchurError::NotKSemigroup("(αβ)a ≠ α(βa)".into()));
                    }
                }
                for c in 0..m {
                    let lhs = scalar[k][a.mul(b, c)];
                    if lhs != a.mul(scalar[k][b], c) || lhs != a.mul(b, scalar[k][c]) {
                        return Err(SchurError::NotKSemigroup("α(ab) ≠ (αa)b".into()));
                    }
                }
            }
        }
        for b in (0..m).filter(|&b| b != zero) {
            let images: BTreeSet<usize> = (0..q).map(|k| scalar[k][b]).collect();
            if images.len() != q {
                return Err(SchurError::NotCancellative);
            }
        }
        let g = module.group();
        for x in 0..g.order() {
            let d = module.unit_idem(g.inv(x));
            for b in (0..m).filter(|&b| a.in_ideal(d, b)) {
                for k in 0..q {
                    if module.theta(x, scalar[k][b]) != scalar[k][module.theta(x, b)] {
                        return Err(SchurError::ThetaNotKMap(x));
                    }
                }
            }
        }
        let gens: Vec<usize> = module
            .unit_idems()
            .iter()
            .flat_map(|&e| (0..q).map(move |k| (k, e)))
            .map(|(k, e)| scalar[k][e])
            .collect();
        if closure(a.table(), &gens).len() != m {
            return Err(SchurError::NotAdjusted);
        }
        Ok(Self {
            module,
            field,
            scalar,
            zero,
        })
    }

    pub fn module(&self) -> &PartialGModule {
        &self.module
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn scalar_table(&self) -> &[Vec<usize>] {
        &self.scalar
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn scale(&self, k: usize, a: usize) -> usize {
        self.scalar[k][a]
    }

    /// The unique `α` with `a = α·e`, for a nonzero idempotent `e`.
    pub fn scalar_of(&self, e: usize, a: usize) -> Option<usize> {
        self.field.units().find(|&k| self.scalar[k][e] == a)
    }

    /// `1_x 1_{xy}` for the pair with tuple index `t`.
    fn pair_idem(&self, t: usize) -> usize {
        let g = self.module.group();
        self.module.tuple_idem(&g.tuple(t, 2))
    }

    /// Pairs `(x, y)` with `A_x A_{xy} ≠ 0`, as tuple indices.
    pub fn domain(&self) -> Vec<usize> {
        let g = self.module.group();
        (0..g.tuple_count(2)).filter(|&t| self.pair_idem(t) != self.zero).collect()
    }

    /// Triples `(x, y, z)` with `A_x A_{xy} A_{xyz} = 0`.
    pub fn zero_triples(&self) -> BTreeSet<usize> {
        let g = self.module.group();
        (0..g.tuple_count(3))
            .filter(|&t| self.module.tuple_idem(&g.tuple(t, 3)) == self.zero)
            .collect()
    }

    pub fn validate_twisting(&self, sigma: &[usize]) -> Result<(), SchurError> {
        let g = self.module.group();
        let n = g.order();
        let one = g.identity();
        let f = &self.field;
        let idx = |x: usize, y: usize| g.tuple_index(&[x, y]);
        if sigma.len() != n * n || sigma.iter().any(|&s| s >= f.order()) {
            return Err(SchurError::ZeroPatternMismatch(0, 0));
        }
        for t in 0..n * n {
            if (sigma[t] == 0) != (self.pair_idem(t) == self.zero) {
                let xs = g.tuple(t, 2);
                return Err(SchurError::ZeroPatternMismatch(xs[0], xs[1]));
            }
        }
        for x in 0..n {
            if self.module.unit_idem(x) != self.zero && (sigma[idx(x, one)] != 1 || sigma[idx(one, x)] != 1) {
                return Err(SchurError::NotNormalized(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.module.tuple_idem(&[x, y, z]) == self.zero {
                        continue;
                    }
                    let xy = g.mul(x, y);
                    let lhs = f.mul(sigma[idx(x, y)], sigma[idx(xy, z)]);
                    let rhs = f.mul(sigma[idx(y, z)], sigma[idx(x, g.mul(y, z))]);
                    if lhs != rhs {
                        return Err(SchurError::CocycleFailed(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// `σ_f` with `f(x, y) = σ_f(x, y) 1_x 1_{xy}`.
    pub fn twisting_of_cocycle(&self, f: &Cochain) -> Result<Vec<usize>, SchurError> {
        if f.degree != 2 || !crate::cohomology::is_normalized(&self.module, f) {
            return Err(SchurError::NotNormalizedCocycle);
        }
        let sigma = (0..f.values.len())
            .map(|t| {
                let e = self.pair_idem(t);
                if e == self.zero {
                    Ok(0)
                } else {
                    self.scalar_of(e, f.values[t]).ok_or(SchurError::NotNormalizedCocycle)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.validate_twisting(&sigma).map_err(|_| SchurError::NotNormalizedCocycle)?;
        Ok(sigma)
    }

    /// `g_τ(x, y) = τ(x, y) 1_x 1_{xy}`.
    pub fn cocycle_of_twisting(&self, tau: &[usize]) -> Result<Cochain, SchurError> {
        self.validate_twisting(tau)?;
        Ok(Cochain {
            degree: 2,
            values: tau.iter().enumerate().map(|(t, &k)| self.scale(k, self.pair_idem(t))).collect(),
        })
    }

    /// All twistings related to `A`, by exhaustive search over the free pairs.
    pub fn enumerate_twistings(&self) -> Result<Vec<Vec<usize>>, SchurError> {
        let g = self.module.group();
        let one = g.identity();
        let n = g.order();
        let base: Vec<usize> = (0..n * n)
            .map(|t| if self.pair_idem(t) == self.zero { 0 } else { 1 })
            .collect();
        let free: Vec<usize> = (0..n * n)
            .filter(|&t| {
                let xs = g.tuple(t, 2);
                base[t] != 0 && xs[0] != one && xs[1] != one
            })
            .collect();
        search_twistings(&self.field, &base, &free, |s| self.validate_twisting(s).is_ok())
    }
}

fn search_twistings<F: Fn(&[usize]) -> bool>(
    field: &FiniteField,
    base: &[usize],
    free: &[usize],
    accept: F,
) -> Result<Vec<Vec<usize>>, SchurError> {
    let units = (field.order() - 1) as u64;
    let total = units.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    if total > TWISTING_BUDGET {
        return Err(SchurError::BudgetExceeded(total));
    }
    let mut out = Vec::new();
    let mut s = base.to_vec();
    for mut code in 0..total {
        for &t in free {
            s[t] = 1 + (code % units) as usize;
            code /= units;
        }
        if accept(&s) {
            out.push(s.clone());
        }
    }
    Ok(out)
}

/// Searches `η: G → K*` with `σ(x,y) = η(x) η(xy)⁻¹ η(y) τ(x,y)`.
pub fn twisting_equivalence(g: &FiniteGroup, field: &FiniteField, sigma: &[usize], tau: &[usize]) -> Result<Option<Vec<usize>>, SchurError> {
    let n = g.order();
    if sigma.len() != tau.len() || sigma.iter().zip(tau).any(|(&a, &b)| (a == 0) != (b == 0)) {
        return Err(SchurError::DomainMismatch);
    }
    let units = field.order() - 1;
    let total = (units as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > TWISTING_BUDGET {
        return Err(SchurError::BudgetExceeded(total));
    }
    let mut eta = vec![1usize; n];
    for mut code in 0..total {
        for slot in eta.iter_mut() {
            *slot = 1 + (code % units as u64) as usize;
            code /= units as u64;
        }
        let ok = (0..n * n).all(|t| {
            let (x, y) = (t / n, t % n);
            let xy = g.mul(x, y);
            let rhs = field.mul(field.mul(field.mul(eta[x], field.inv(eta[xy])), eta[y]), tau[t]);
            sigma[t] == rhs
        });
        if ok {
            return Ok(Some(eta));
        }
    }
    Ok(None)
}

/// Partition of twistings into `∼`-classes; each class is listed by its members.
pub fn twisting_classes(g: &FiniteGroup, field: &FiniteField, twistings: &[Vec<usize>]) -> Result<Vec<Vec<Vec<usize>>>, SchurError> {
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    'outer: for s in twistings {
        for class in classes.iter_mut() {
            if twisting_equivalence(g, field, s, &class[0])?.is_some() {
                class.push(s.clone());
                continue 'outer;
            }
        }
        classes.push(vec![s.clone()]);
    }
    Ok(classes)
}

/// `R(G, A)` compared with `H²(G, A)`.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub domain: Vec<(usize, usize)>,
    pub twistings: usize,
    pub classes: usize,
    pub class_representatives: Vec<Vec<usize>>,
    pub h2_invariant_factors: Vec<u64>,
    pub h2_order: u64,
}

impl ComponentReport {
    pub fn consistent(&self) -> bool {
        self.classes as u64 == self.h2_order
    }
}

pub fn component_r(km: &KLinearModule) -> Result<ComponentReport, SchurError> {
    let g = km.module().group();
    let twistings = km.enumerate_twistings()?;
    let classes = twisting_classes(g, &km.field(), &twistings)?;
    let h2 = cohomology(km.module(), 2, DEFAULT_BUDGET)?;
    Ok(ComponentReport {
        domain: km.domain().into_iter().map(|t| (t / g.order(), t % g.order())).collect(),
        twistings: twistings.len(),
        classes: classes.len(),
        class_representatives: classes.into_iter().map(|c| c[0].clone()).collect(),
        h2_invariant_factors: h2.invariant_factors().to_vec(),
        h2_order: h2.presentation.order(),
    })
}

/// Domains `D ⊆ G×G` compatible with some partial module: `(1,1) ∈ D`,
/// `(x,1) ∈ D ⇔ (1,x) ∈ D`, `(x,y) ∈ D ⇒ (x,1), (xy,1) ∈ D`, and `D` is
/// invariant under `(x,y) ↦ (xy, y⁻¹)` and `(x,y) ↦ (x⁻¹, xy)`.
pub fn candidate_domains(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let one = g.identity();
    let idx = |x: usize, y: usize| x * n + y;
    let mut out = Vec::new();
    if n * n > 20 {
        return out;
    }
    for mask in 0u64..(1 << (n * n)) {
        let has = |x: usize, y: usize| mask & (1 << idx(x, y)) != 0;
        if !has(one, one) {
            continue;
        }
        let ok = (0..n).all(|x| has(x, one) == has(one, x))
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    !has(x, y)
                        || (has(x, one)
                            && has(g.mul(x, y), one)
                            && has(g.mul(x, y), g.inv(y))
                            && has(g.inv(x), g.mul(x, y)))
                })
            });
        if ok {
            out.push((0..n * n).filter(|&t| mask & (1 << t) != 0).collect());
        }
    }
    out
}

/// Normalized functions on `D` satisfying the cocycle identity on every
/// triple whose four pairs lie in `D`.
pub fn candidate_twistings(g: &FiniteGroup, field: &FiniteField, domain: &[usize]) -> Result<Vec<Vec<usize>>, SchurError> {
    let n = g.order();
    let one = g.identity();
    let mut base = vec![0usize; n * n];
    for &t in domain {
        base[t] = 1;
    }
    let free: Vec<usize> = domain.iter().copied().filter(|&t| t / n != one && t % n != one).collect();
    let idx = |x: usize, y: usize| x * n + y;
    search_twistings(field, &base, &free, |s| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let xy = g.mul(x, y);
                    let yz = g.mul(y, z);
                    let pairs = [idx(x, y), idx(xy, z), idx(y, z), idx(x, yz)];
                    pairs.iter().any(|&p| s[p] == 0)
                        || field.mul(s[pairs[0]], s[pairs[1]]) == field.mul(s[pairs[2]], s[pairs[3]])
                })
            })
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainCoverage {
    pub domain: Vec<(usize, usize)>,
    pub classes: usize,
    pub covered: usize,
    pub uncovered: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub domains: Vec<DomainCoverage>,
    /// Pairs of catalog modules with equal zero-triple sets but different twisting sets.
    pub triple_zero_violations: Vec<(usize, usize)>,
    pub components_consistent: bool,
}

impl CoverageReport {
    pub fn fully_covered(&self) -> bool {
        self.domains.iter().all(|d| d.uncovered.is_empty())
    }
}

/// Compares the candidate twisting classes of every domain with those realized
/// by the catalog modules.
pub fn coverage_check(g: &FiniteGroup, field: &FiniteField, catalog: &[KLinearModule]) -> Result<CoverageReport, SchurError> {
    let n = g.order();
    let mut realized: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut twisting_sets = Vec::new();
    let mut components_consistent = true;
    for km in catalog {
        let tw = km.enumerate_twistings()?;
        realized.entry(km.domain()).or_default().extend(tw.iter().cloned());
        let r = component_r(km)?;
        components_consistent &= r.consistent();
        twisting_sets.push(tw.into_iter().collect::<BTreeSet<_>>());
    }
    let mut triple_zero_violations = Vec::new();
    for i in 0..catalog.len() {
        for j in i + 1..catalog.len() {
            if catalog[i].zero_triples() == catalog[j].zero_triples() && twisting_sets[i] != twisting_sets[j] {
                triple_zero_violations.push((i, j));
            }
        }
    }
    let mut domains = Vec::new();
    for d in candidate_domains(g) {
        let cands = candidate_twistings(g, field, &d)?;
        let classes = twisting_classes(g, field, &cands)?;
        let have = realized.get(&d).cloned().unwrap_or_default();
        let mut uncovered = Vec::new();
        for class in &classes {
            if !class.iter().any(|s| have.contains(s)) {
                uncovered.push(class[0].clone());
            }
        }
        domains.push(DomainCoverage {
            domain: d.iter().map(|&t| (t / n, t % n)).collect(),
            classes: classes.len(),
            covered: classes.len() - uncovered.len(),
            uncovered,
        });
    }
    Ok(CoverageReport {
        domains,
        triple_zero_violations,
        components_consistent,
    })
}

/// Builds the adjusted module `K·E` from a semilattice with top and zero, the
/// markings `1_x ∈ E` and a partial action `θ^E` on `E`. Elements are
/// `(k, f)` for `k ∈ K*`, `f ∈ E∖{0}` (in that order, `k` fastest), then zero.
pub fn module_from_semilattice(
    g: &FiniteGroup,
    field: FiniteField,
    e_table: &[Vec<usize>],
    e_zero: usize,
    marks: &[usize],
    theta_e: &[Vec<Option<usize>>],
) -> Result<KLinearModule, SchurError> {
    let q = field.order();
    let nonzero: Vec<usize> = (0..e_table.len()).filter(|&f| f != e_zero).collect();
    let units = q - 1;
    let m = nonzero.len() * units + 1;
    let zero = m - 1;
    let pos = |f: usize| nonzero.iter().position(|&h| h == f);
    let enc = |k: usize, f: usize| match pos(f) {
        Some(p) => p * units + (k - 1),
        None => zero,
    };
    let dec = |a: usize| -> Option<(usize, usize)> { (a != zero).then(|| (a % units + 1, nonzero[a / units])) };
    let table: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| match (dec(a), dec(b)) {
                    (Some((j, f)), Some((k, h))) => enc(field.mul(j, k), e_table[f][h]),
                    _ => zero,
                })
                .collect()
        })
        .collect();
    let monoid = CommMonoid::from_table(table).map_err(ModuleError::from)?;
    let unit_idems: Vec<usize> = marks.iter().map(|&f| enc(1, f)).collect();
    let theta: Vec<Vec<Option<usize>>> = (0..g.order())
        .map(|x| {
            (0..m)
                .map(|a| match dec(a) {
                    Some((k, f)) => theta_e[x][f].map(|h| enc(k, h)),
                    None => Some(zero),
                })
                .collect()
        })
        .collect();
    let module = PartialGModule::new(g.clone(), monoid, unit_idems, theta)?;
    let scalar: Vec<Vec<usize>> = (0..q)
        .map(|k| {
            (0..m)
                .map(|a| match dec(a) {
                    Some((j, f)) if k != 0 => enc(field.mul(k, j), f),
                    _ => zero,
                })
                .collect()
        })
        .collect();
    KLinearModule::new(module, field, scalar)
}

fn semilattices_with_top_and_zero(m: usize) -> Vec<Vec<Vec<usize>>> {
    // Element 0 is the top, m-1 the zero; middle products are enumerated.
    let mid: Vec<usize> = (1..m.saturating_sub(1)).collect();
    let pairs: Vec<(usize, usize)> = mid
        .iter()
        .flat_map(|&a| mid.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .collect();
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let total = m.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut t = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                t[a][b] = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else if a == m - 1 || b == m - 1 {
                    m - 1
                } else if a == b {
                    a
                } else {
                    0
                };
            }
        }
        for &(a, b) in &pairs {
            let v = code % m;
            code /= m;
            t[a][b] = v;
            t[b][a] = v;
        }
        let ok = (0..m).all(|a| {
            (0..m).all(|b| {
                let ab = t[a][b];
                t[ab][a] == ab && t[ab][b] == ab && (0..m).all(|c| t[ab][c] == t[a][t[b][c]])
            })
        });
        if ok {
            out.push(t);
        }
    }
    out
}

/// All semilattice isomorphisms `dom·E → ran·E` (as partial maps on `E`).
fn ideal_isos(t: &[Vec<usize>], dom: usize, ran: usize) -> Vec<Vec<Option<usize>>> {
    let m = t.len();
    let d: Vec<usize> = (0..m).filter(|&f| t[dom][f] == f).collect();
    let r: Vec<usize> = (0..m).filter(|&f| t[ran][f] == f).collect();
    let mut out = Vec::new();
    if d.len() != r.len() {
        return out;
    }
    let mut perm: Vec<usize> = (0..r.len()).collect();
    loop {
        let map = |f: usize| r[perm[d.iter().position(|&h| h == f).unwrap()]];
        let ok = d.iter().all(|&a| d.iter().all(|&b| map(t[a][b]) == t[map(a)][map(b)]));
        if ok {
            let mut row = vec![None; m];
            for &f in &d {
                row[f] = Some(map(f));
            }
            out.push(row);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

type CatalogKey = (Vec<Vec<usize>>, Vec<usize>, Vec<Vec<Option<usize>>>);

/// Every adjusted `K`-linear partial `G`-module with at most `max_carrier`
/// elements, up to relabelling of the idempotents.
pub fn adjusted_catalog(g: &FiniteGroup, field: FiniteField, max_carrier: usize) -> Result<Vec<KLinearModule>, SchurError> {
    let units = field.order() - 1;
    let one = g.identity();
    let n = g.order();
    let mut seen: BTreeSet<CatalogKey> = BTreeSet::new();
    let mut out = Vec::new();
    let mut m = 2;
    while (m - 1) * units < max_carrier {
        for t in semilattices_with_top_and_zero(m) {
            let zero = m - 1;
            // Markings with 1_1 = top.
            let total = m.pow(n as u32 - 1);
            for mut code in 0..total {
                let marks: Vec<usize> = (0..n)
                    .map(|x| {
                        if x == one {
                            0
                        } else {
                            let v = code % m;
                            code /= m;
                            v
                        }
                    })
                    .collect();
                let mut gens = marks.clone();
                gens.push(zero);
                if closure(&t, &gens).len() != m {
                    continue;
                }
                let options: Vec<Vec<Vec<Option<usize>>>> = (0..n)
                    .map(|x| {
                        if x == one {
                            vec![(0..m).map(Some).collect()]
                        } else {
                            ideal_isos(&t, marks[g.inv(x)], marks[x])
                        }
                    })
                    .collect();
                let count: usize = options.iter().map(|o| o.len()).product();
                for mut c in 0..count {
                    let theta: Vec<Vec<Option<usize>>> = options
                        .iter()
                        .map(|o| {
                            let k = c % o.len();
                            c /= o.len();
                            o[k].clone()
                        })
                        .collect();
                    let key = canonical_key(&t, &marks, &theta);
                    if seen.contains(&key) {
                        continue;
                    }
                    if let Ok(km) = module_from_semilattice(g, field, &t, zero, &marks, &theta) {
                        seen.insert(key);
                        out.push(km);
                    }
                }
            }
        }
        m += 1;
    }
    Ok(out)
}

fn canonical_key(t: &[Vec<usize>], marks: &[usize], theta: &[Vec<Option<usize>>]) -> CatalogKey {
    let m = t.len();
    let mid: Vec<usize> = (1..m - 1).collect();
    let mut perm: Vec<usize> = (0..mid.len()).collect();
    let mut best: Option<CatalogKey> = None;
    loop {
        let mut p: Vec<usize> = (0..m).collect();
        for (i, &a) in mid.iter().enumerate() {
            p[a] = mid[perm[i]];
        }
        let mut pt = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                pt[p[a]][p[b]] = p[t[a][b]];
            }
        }
        let pm: Vec<usize> = marks.iter().map(|&f| p[f]).collect();
        let pth: Vec<Vec<Option<usize>>> = theta
            .iter()
            .map(|row| {
                let mut r = vec![None; m];
                for a in 0..m {
                    r[p[a]] = row[a].map(|b| p[b]);
                }
                r
            })
            .collect();
        let key = (pt, pm, pth);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}
