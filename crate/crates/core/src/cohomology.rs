//! Partial group cohomology `Hⁿ(G, A)` of a unital partial `G`-module.
//!
//! An `n`-cochain assigns to each tuple `(x_1, .., x_n)` (lexicographic
//! order) a unit of the ideal `A_{(x)} = 1_{x_1} 1_{x_1x_2} .. 1_{x_1..x_n} A`.
//! Each component group is decomposed into invariant factors, so `Cⁿ` is a
//! cyclic product and `δⁿ` an [`IntHom`] assembled from three kinds of
//! component maps: θ-transport, idempotent restriction, and negation.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{invariant_factors_from_torsion, subquotient, AbelianPresentation, IntHom, LatticeError, Subquotient};
use crate::monoid::{UnitGroup, UnitGroupCache};
use crate::partial_module::{MorphismError, PartialGModule};

/// Default limit on the number of tuples in any cochain group touched.
pub const DEFAULT_BUDGET: usize = 100_000;
/// Brute-force enumeration runs only when `|Cⁿ⁻¹|·|Cⁿ|·|Cⁿ⁺¹|` is at most this.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cochain group of degree {degree} has {tuples} tuples, over the budget of {budget}")]
    BudgetExceeded { degree: usize, tuples: usize, budget: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("cochain has the wrong degree or a value outside its component")]
    BadCochain,
    #[error("coboundary matrix disagrees with direct evaluation at degree {0}")]
    MatrixMismatch(usize),
    #[error("a cochain component is the zero ideal of A")]
    ZeroIdeal,
}

/// Values of an `n`-cochain, one monoid element per tuple (lexicographic order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<usize>,
}

/// `Cⁿ(G, A)` as a product of unit groups.
#[derive(Debug, Clone)]
pub struct CochainGroup {
    degree: usize,
    components: Vec<Arc<UnitGroup>>,
    offsets: Vec<usize>,
    moduli: Vec<u64>,
}

impl CochainGroup {
    pub fn new(m: &PartialGModule, degree: usize, budget: usize, cache: &mut UnitGroupCache) -> Result<Self, CohomologyError> {
        let g = m.group();
        let tuples = g.order().checked_pow(degree as u32).unwrap_or(usize::MAX);
        if tuples > budget {
            return Err(CohomologyError::BudgetExceeded { degree, tuples, budget });
        }
        let mut components = Vec::with_capacity(tuples);
        let mut offsets = Vec::with_capacity(tuples);
        let mut moduli = Vec::new();
        for t in 0..tuples {
            let e = m.tuple_idem(&g.tuple(t, degree));
            let u = cache.get(m.monoid(), e);
            offsets.push(moduli.len());
            moduli.extend_from_slice(u.moduli());
            components.push(u);
        }
        Ok(Self {
            degree,
            components,
            offsets,
            moduli,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn component(&self, t: usize) -> &UnitGroup {
        &self.components[t]
    }

    pub fn tuple_count(&self) -> usize {
        self.components.len()
    }

    pub fn offset(&self, t: usize) -> usize {
        self.offsets[t]
    }

    /// Number of elements, saturating.
    pub fn order(&self) -> u128 {
        self.components
            .iter()
            .fold(1u128, |acc, u| acc.saturating_mul(u.order() as u128))
    }

    pub fn presentation(&self) -> AbelianPresentation {
        AbelianPresentation::from_moduli(&self.moduli)
    }

    /// The cochain `e_n(x) = 1_{x_1} 1_{x_1x_2} ..`.
    pub fn identity(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.components.iter().map(|u| u.idem).collect(),
        }
    }

    pub fn contains(&self, f: &Cochain) -> bool {
        f.degree == self.degree
            && f.values.len() == self.components.len()
            && f.values.iter().zip(&self.components).all(|(&v, u)| u.contains(v))
    }

    pub fn to_coords(&self, f: &Cochain) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.moduli.len());
        for (u, &v) in self.components.iter().zip(&f.values) {
            out.extend_from_slice(u.coords(v));
        }
        out
    }

    pub fn from_coords(&self, x: &[u64]) -> Cochain {
        let values = self
            .components
            .iter()
            .zip(&self.offsets)
            .map(|(u, &o)| u.element(&x[o..o + u.moduli().len()]))
            .collect();
        Cochain {
            degree: self.degree,
            values,
        }
    }

    /// The `k`-th element in mixed-radix order over the coordinates.
    pub fn nth(&self, mut k: u128) -> Cochain {
        let x: Vec<u64> = self
            .moduli
            .iter()
            .map(|&m| {
                let c = (k % m as u128) as u64;
                k /= m as u128;
                c
            })
            .collect();
        self.from_coords(&x)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Cochain {
        let x: Vec<u64> = self.moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        self.from_coords(&x)
    }

    /// Pointwise product.
    pub fn mul(&self, m: &PartialGModule, f: &Cochain, g: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            values: f.values.iter().zip(&g.values).map(|(&a, &b)| m.monoid().mul(a, b)).collect(),
        }
    }

    /// Pointwise inverse in the component groups.
    pub fn inv(&self, f: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            values: f.values.iter().zip(&self.components).map(|(&a, u)| u.inverse(a)).collect(),
        }
    }

    /// Pointwise power.
    pub fn pow(&self, m: &PartialGModule, f: &Cochain, k: u64) -> Cochain {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(m, &acc, f);
        }
        acc
    }

    /// Tuples whose component is the zero ideal of a monoid with more than one element.
    pub fn zero_components(&self, m: &PartialGModule) -> Vec<usize> {
        match m.monoid().zero() {
            Some(z) if m.monoid().len() > 1 => (0..self.components.len()).filter(|&t| self.components[t].idem == z).collect(),
            _ => vec![],
        }
    }
}

/// One term of `δⁿ` contributing to an output tuple.
#[derive(Debug, Clone, Copy)]
enum Term {
    /// `θ_{x_1}(1_{x_1⁻¹} f(x_2, .., x_{n+1}))`.
    Transport { source: usize, by: usize },
    /// `e_out · f(source)` raised to `sign`.
    Restrict { source: usize, sign: i64 },
}

fn terms(m: &PartialGModule, n: usize, out: usize) -> Vec<Term> {
    let g = m.group();
    let xs = g.tuple(out, n + 1);
    let mut v = vec![Term::Transport {
        source: g.tuple_index(&xs[1..]),
        by: xs[0],
    }];
    for i in 1..=n {
        let mut ys = Vec::with_capacity(n);
        ys.extend_from_slice(&xs[..i - 1]);
        ys.push(g.mul(xs[i - 1], xs[i]));
        ys.extend_from_slice(&xs[i + 1..]);
        v.push(Term::Restrict {
            source: g.tuple_index(&ys),
            sign: if i % 2 == 0 { 1 } else { -1 },
        });
    }
    v.push(Term::Restrict {
        source: g.tuple_index(&xs[..n]),
        sign: if (n + 1).is_multiple_of(2) { 1 } else { -1 },
    });
    v
}

/// `δⁿ f` evaluated pointwise from the defining formula.
pub fn coboundary(m: &PartialGModule, src: &CochainGroup, dst: &CochainGroup, f: &Cochain) -> Cochain {
    let n = src.degree();
    let a = m.monoid();
    let values = (0..dst.tuple_count())
        .map(|t| {
            let out = dst.component(t);
            let e = out.idem;
            let mut acc = e;
            for term in terms(m, n, t) {
                let v = match term {
                    Term::Transport { source, by } => m.transport(by, f.values[source]),
                    Term::Restrict { source, sign } => {
                        let r = a.mul(e, f.values[source]);
                        if sign < 0 {
                            out.inverse(r)
                        } else {
                            r
                        }
                    }
                };
                acc = a.mul(acc, v);
            }
            acc
        })
        .collect();
    Cochain {
        degree: n + 1,
        values,
    }
}

/// `δⁿ` as an integer matrix between the coordinate groups of `Cⁿ` and `Cⁿ⁺¹`.
pub fn coboundary_matrix(m: &PartialGModule, src: &CochainGroup, dst: &CochainGroup) -> IntHom {
    let n = src.degree();
    let a = m.monoid();
    let rows = dst.moduli().len();
    let cols = src.moduli().len();
    let blocks: Vec<Vec<(usize, usize, i64)>> = (0..dst.tuple_count())
        .into_par_iter()
        .map(|t| {
            let out = dst.component(t);
            let mut entries = Vec::new();
            for term in terms(m, n, t) {
                let (source, sign) = match term {
                    Term::Transport { source, .. } => (source, 1),
                    Term::Restrict { source, sign } => (source, sign),
                };
                let comp = src.component(source);
                for (j, gen) in comp.generators().into_iter().enumerate() {
                    let image = match term {
                        Term::Transport { by, .. } => m.transport(by, gen),
                        Term::Restrict { .. } => a.mul(out.idem, gen),
                    };
                    for (r, &c) in out.coords(image).iter().enumerate() {
                        entries.push((dst.offset(t) + r, src.offset(source) + j, sign * c as i64));
                    }
                }
            }
            entries
        })
        .collect();
    let mut matrix = vec![vec![0u64; cols]; rows];
    for (r, c, v) in blocks.into_iter().flatten() {
        let md = dst.moduli()[r] as i64;
        matrix[r][c] = ((matrix[r][c] as i64 + v).rem_euclid(md)) as u64;
    }
    IntHom {
        source: src.moduli().to_vec(),
        target: dst.moduli().to_vec(),
        matrix,
    }
}

/// Compares the assembled matrix with pointwise evaluation on every basis cochain.
pub fn check_matrix(m: &PartialGModule, src: &CochainGroup, dst: &CochainGroup, d: &IntHom) -> Result<(), CohomologyError> {
    let k = src.moduli().len();
    for j in 0..k {
        let mut x = vec![0u64; k];
        x[j] = 1;
        let f = src.from_coords(&x);
        let direct = dst.to_coords(&coboundary(m, src, dst, &f));
        if direct != d.apply(&x) {
            return Err(CohomologyError::MatrixMismatch(src.degree()));
        }
    }
    Ok(())
}

/// The cochain groups and coboundaries around degree `n`.
#[derive(Debug, Clone)]
pub struct Complex {
    pub below: Option<CochainGroup>,
    pub at: CochainGroup,
    pub above: CochainGroup,
    pub incoming: IntHom,
    pub outgoing: IntHom,
}

impl Complex {
    pub fn new(m: &PartialGModule, n: usize, budget: usize) -> Result<Self, CohomologyError> {
        let mut cache = UnitGroupCache::default();
        let above = CochainGroup::new(m, n + 1, budget, &mut cache)?;
        let at = CochainGroup::new(m, n, budget, &mut cache)?;
        let below = if n > 0 { Some(CochainGroup::new(m, n - 1, budget, &mut cache)?) } else { None };
        let outgoing = coboundary_matrix(m, &at, &above);
        check_matrix(m, &at, &above, &outgoing)?;
        let incoming = match &below {
            Some(b) => {
                let d = coboundary_matrix(m, b, &at);
                check_matrix(m, b, &at, &d)?;
                d
            }
            None => IntHom::zero(vec![], at.moduli().to_vec()),
        };
        Ok(Self {
            below,
            at,
            above,
            incoming,
            outgoing,
        })
    }
}

/// `Hⁿ(G, A)` with representatives and a class map.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub presentation: AbelianPresentation,
    pub representatives: Vec<Cochain>,
    pub cochains: CochainGroup,
    subquotient: Subquotient,
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> &[u64] {
        self.presentation.invariant_factors()
    }

    pub fn is_cocycle(&self, f: &Cochain) -> bool {
        self.cochains.contains(f) && self.subquotient.in_kernel(&self.cochains.to_coords(f))
    }

    /// Coordinates of the class of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Option<Vec<u64>> {
        if !self.cochains.contains(f) {
            return None;
        }
        self.subquotient.class_of(&self.cochains.to_coords(f))
    }

    pub fn cohomologous(&self, f: &Cochain, g: &Cochain) -> Option<bool> {
        Some(self.class_of(f)? == self.class_of(g)?)
    }
}

pub fn cohomology(m: &PartialGModule, n: usize, budget: usize) -> Result<CohomologyGroup, CohomologyError> {
    let c = Complex::new(m, n, budget)?;
    cohomology_from_complex(c)
}

/// `ker outgoing / im incoming` for an assembled complex (any route).
pub fn cohomology_from_complex(c: Complex) -> Result<CohomologyGroup, CohomologyError> {
    let sq = subquotient(&c.outgoing, &c.incoming)?;
    let representatives = sq.generators.iter().map(|x| c.at.from_coords(x)).collect();
    Ok(CohomologyGroup {
        degree: c.at.degree(),
        presentation: sq.presentation.clone(),
        representatives,
        cochains: c.at,
        subquotient: sq,
    })
}

/// Invariant factors of `Hⁿ` by exhaustive enumeration and direct evaluation
/// of `δ`, or `None` when `|Cⁿ⁻¹|·|Cⁿ|·|Cⁿ⁺¹|` exceeds `limit`.
pub fn brute_force_cohomology(m: &PartialGModule, n: usize, limit: u128) -> Result<Option<Vec<u64>>, CohomologyError> {
    let mut cache = UnitGroupCache::default();
    let at = CochainGroup::new(m, n, DEFAULT_BUDGET, &mut cache)?;
    let above = CochainGroup::new(m, n + 1, DEFAULT_BUDGET, &mut cache)?;
    let below = if n > 0 { Some(CochainGroup::new(m, n - 1, DEFAULT_BUDGET, &mut cache)?) } else { None };
    let size = at
        .order()
        .saturating_mul(above.order())
        .saturating_mul(below.as_ref().map_or(1, |b| b.order()));
    if size > limit {
        return Ok(None);
    }
    let kernel: Vec<Cochain> = (0..at.order())
        .into_par_iter()
        .map(|k| at.nth(k))
        .filter(|f| coboundary(m, &at, &above, f) == above.identity())
        .collect();
    let image: std::collections::HashSet<Cochain> = match &below {
        Some(b) => (0..b.order()).map(|k| coboundary(m, b, &at, &b.nth(k))).collect(),
        None => std::iter::once(at.identity()).collect(),
    };
    let order = (kernel.len() / image.len()) as u64;
    Ok(Some(invariant_factors_from_torsion(order, |d| {
        let c = kernel.iter().filter(|f| image.contains(&at.pow(m, f, d))).count();
        (c / image.len()) as u64
    })))
}

/// Applies `φ` pointwise to a cochain.
pub fn push_cochain(phi: &[usize], f: &Cochain) -> Cochain {
    Cochain {
        degree: f.degree,
        values: f.values.iter().map(|&v| phi[v]).collect(),
    }
}

/// The map `Hⁿ(A) → Hⁿ(A')` induced by a module morphism, in invariant-factor coordinates.
pub fn induced_map(
    m: &PartialGModule,
    m2: &PartialGModule,
    phi: &[usize],
    n: usize,
    budget: usize,
) -> Result<(CohomologyGroup, CohomologyGroup, IntHom), CohomologyError> {
    crate::partial_module::validate_morphism(m, m2, phi)?;
    let h = cohomology(m, n, budget)?;
    let h2 = cohomology(m2, n, budget)?;
    let cols: Vec<Vec<u64>> = h
        .representatives
        .iter()
        .map(|f| h2.class_of(&push_cochain(phi, f)).ok_or(CohomologyError::BadCochain))
        .collect::<Result<_, _>>()?;
    let map = IntHom::from_columns(h.invariant_factors().to_vec(), h2.invariant_factors().to_vec(), &cols);
    Ok((h, h2, map))
}

/// Checks `φ ∘ δ = δ' ∘ φ` on every basis cochain of degree `n`.
pub fn morphism_commutes_with_coboundary(m: &PartialGModule, m2: &PartialGModule, phi: &[usize], n: usize) -> Result<bool, CohomologyError> {
    let mut c1 = UnitGroupCache::default();
    let mut c2 = UnitGroupCache::default();
    let src = CochainGroup::new(m, n, DEFAULT_BUDGET, &mut c1)?;
    let dst = CochainGroup::new(m, n + 1, DEFAULT_BUDGET, &mut c1)?;
    let src2 = CochainGroup::new(m2, n, DEFAULT_BUDGET, &mut c2)?;
    let dst2 = CochainGroup::new(m2, n + 1, DEFAULT_BUDGET, &mut c2)?;
    let k = src.moduli().len();
    for j in 0..=k {
        let mut x = vec![0u64; k];
        if j < k {
            x[j] = 1;
        }
        let f = src.from_coords(&x);
        let lhs = push_cochain(phi, &coboundary(m, &src, &dst, &f));
        let rhs = coboundary(m2, &src2, &dst2, &push_cochain(phi, &f));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a 2-cocycle as `f = f̃ · δ¹g` with `f̃` normalized and `g(x) = f(1,1)·1_x`.
pub fn normalize_2cocycle(m: &PartialGModule, f: &Cochain) -> Result<(Cochain, Cochain), CohomologyError> {
    let mut cache = UnitGroupCache::default();
    let c2 = CochainGroup::new(m, 2, DEFAULT_BUDGET, &mut cache)?;
    if !c2.contains(f) {
        return Err(CohomologyError::BadCochain);
    }
    let g = m.group();
    let a = m.monoid();
    let one = g.identity();
    let f11 = f.values[g.tuple_index(&[one, one])];
    let gcoch = Cochain {
        degree: 1,
        values: (0..g.order()).map(|x| a.mul(f11, m.unit_idem(x))).collect(),
    };
    let values = (0..c2.tuple_count())
        .map(|t| {
            let x = g.tuple(t, 2)[0];
            let u = c2.component(t);
            let s = a.mul(u.idem, m.transport(x, f11));
            a.mul(f.values[t], u.inverse(s))
        })
        .collect();
    Ok((Cochain { degree: 2, values }, gcoch))
}

/// `f(1, x) = f(x, 1) = 1_x` for all `x`.
pub fn is_normalized(m: &PartialGModule, f: &Cochain) -> bool {
    let g = m.group();
    let one = g.identity();
    (0..g.order()).all(|x| {
        f.values[g.tuple_index(&[one, x])] == m.unit_idem(x) && f.values[g.tuple_index(&[x, one])] == m.unit_idem(x)
    })
}

/// Summary of `Hⁿ` for reports.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub representatives: Vec<Vec<usize>>,
    pub zero_ideal_tuples: Vec<usize>,
}

pub fn report(m: &PartialGModule, h: &CohomologyGroup) -> CohomologyReport {
    CohomologyReport {
        degree: h.degree,
        invariant_factors: h.invariant_factors().to_vec(),
        representatives: h.representatives.iter().map(|f| f.values.clone()).collect(),
        zero_ideal_tuples: h.cochains.zero_components(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::FiniteGroup;
    use crate::monoid::CommMonoid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sign_module_cohomology() {
        let m = fixtures::sign_module();
        assert_eq!(cohomology(&m, 0, DEFAULT_BUDGET).unwrap().invariant_factors(), &[2]);
        assert_eq!(cohomology(&m, 1, DEFAULT_BUDGET).unwrap().invariant_factors(), &[2]);
        // δ¹g(g,g) = g(g)²g(1)⁻¹ = e·g(1)⁻¹, so f(g,g) = -e is not a normalized coboundary.
        assert_eq!(cohomology(&m, 2, DEFAULT_BUDGET).unwrap().invariant_factors(), &[2]);
        assert_eq!(brute_force_cohomology(&m, 2, BRUTE_FORCE_LIMIT), Ok(Some(vec![2])));
    }

    #[test]
    fn sign_module_delta0() {
        // δ⁰(-1) is the identity cochain e_1.
        let m = fixtures::sign_module();
        let mut cache = UnitGroupCache::default();
        let c0 = CochainGroup::new(&m, 0, DEFAULT_BUDGET, &mut cache).unwrap();
        let c1 = CochainGroup::new(&m, 1, DEFAULT_BUDGET, &mut cache).unwrap();
        let minus_one = Cochain { degree: 0, values: vec![1] };
        assert_eq!(coboundary(&m, &c0, &c1, &minus_one), c1.identity());
    }

    #[test]
    fn global_gf3_units() {
        // GF(3)* ≅ Z2 with trivial Z2 action.
        let m = PartialGModule::trivial(FiniteGroup::cyclic(2), CommMonoid::cyclic_group(2));
        assert_eq!(cohomology(&m, 1, DEFAULT_BUDGET).unwrap().invariant_factors(), &[2]);
        assert_eq!(cohomology(&m, 2, DEFAULT_BUDGET).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn budget_is_enforced() {
        let m = fixtures::sign_module();
        let err = cohomology(&m, 3, 8).unwrap_err();
        assert!(matches!(err, CohomologyError::BudgetExceeded { .. }));
    }

    #[test]
    fn brute_force_agrees_on_small_modules() {
        for m in fixtures::bundled_modules().into_iter().map(|(_, m)| m) {
            for n in 0..=2 {
                let Some(bf) = brute_force_cohomology(&m, n, BRUTE_FORCE_LIMIT).unwrap() else { continue };
                assert_eq!(cohomology(&m, n, DEFAULT_BUDGET).unwrap().invariant_factors(), &bf[..]);
            }
        }
    }

    #[test]
    fn representatives_are_cocycles_with_unit_classes() {
        let m = fixtures::sign_module();
        let h = cohomology(&m, 1, DEFAULT_BUDGET).unwrap();
        for (i, f) in h.representatives.iter().enumerate() {
            assert!(h.is_cocycle(f));
            let mut e = vec![0; h.representatives.len()];
            e[i] = 1;
            assert_eq!(h.class_of(f), Some(e));
        }
    }

    #[test]
    fn normalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [fixtures::sign_module(), PartialGModule::trivial(FiniteGroup::cyclic(3), CommMonoid::cyclic_group(3))] {
            let c = Complex::new(&m, 2, DEFAULT_BUDGET).unwrap();
            let h = cohomology(&m, 2, DEFAULT_BUDGET).unwrap();
            let below = c.below.as_ref().unwrap();
            for _ in 0..20 {
                // Random cocycle: representative combination times a coboundary.
                let mut f = c.at.identity();
                for r in &h.representatives {
                    let k = rng.gen_range(0..4);
                    f = c.at.mul(&m, &f, &c.at.pow(&m, r, k));
                }
                let b = coboundary(&m, below, &c.at, &below.random(&mut rng));
                f = c.at.mul(&m, &f, &b);
                let (ft, g) = normalize_2cocycle(&m, &f).unwrap();
                assert!(is_normalized(&m, &ft));
                let dg = coboundary(&m, below, &c.at, &g);
                assert_eq!(c.at.mul(&m, &ft, &dg), f);
            }
        }
    }

    #[test]
    fn induced_maps_compose() {
        let g = FiniteGroup::cyclic(2);
        let z2 = PartialGModule::trivial(g.clone(), CommMonoid::cyclic_group(2));
        let z4 = PartialGModule::trivial(g.clone(), CommMonoid::cyclic_group(4));
        let sign = fixtures::sign_module();
        // sign -> Z2 (forget e), Z2 -> Z4 (-1 -> g^2), composite sign -> Z4.
        let p = [0, 1, 0, 1];
        let i = [0, 2];
        let pi: Vec<usize> = p.iter().map(|&x| i[x]).collect();
        for n in 0..=2 {
            assert!(morphism_commutes_with_coboundary(&sign, &z2, &p, n).unwrap());
            let (_, _, a) = induced_map(&sign, &z2, &p, n, DEFAULT_BUDGET).unwrap();
            let (_, _, b) = induced_map(&z2, &z4, &i, n, DEFAULT_BUDGET).unwrap();
            let (_, _, c) = induced_map(&sign, &z4, &pi, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(b.compose(&a).unwrap(), c);
        }
    }
}
