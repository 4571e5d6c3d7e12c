//! The cross-route invariant suite behind `parcoh verify`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bridge::bridge_report;
use crate::cohomology::{brute_force_cohomology, check_matrix, coboundary, coboundary_matrix, cohomology, CochainGroup, CohomologyError, BRUTE_FORCE_LIMIT};
use crate::crossed::{crossed_product, isomorphic, lambda_product, rho_by_closure, rho_by_criterion, semidirect, ISO_LIMIT};
use crate::exel::{build_exel, characterize};
use crate::fixtures;
use crate::monoid::{CommMonoid, UnitGroupCache};
use crate::partial_module::{PartialGModule, SModule};
use crate::resolution::{cohomology_via_resolution, Resolution, ResolutionError};
use crate::schur::{component_r, twisting_equivalence, KLinearModule};

/// Cochain groups up to this order are checked exhaustively, larger ones on
/// `RANDOM_SAMPLES` seeded random cochains.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000;
pub const RANDOM_SAMPLES: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check would exceed the budget.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    fn push(&mut self, check: &str, subject: &str, outcome: Result<String, Outcome>) {
        let (status, detail) = match outcome {
            Ok(d) => (Status::Pass, d),
            Err(Outcome::Fail(d)) => (Status::Fail, d),
            Err(Outcome::Skipped(d)) => (Status::Skipped, d),
        };
        self.checks.push(Check {
            check: check.to_string(),
            subject: subject.to_string(),
            status,
            detail,
        });
    }
}

enum Outcome {
    Fail(String),
    Skipped(String),
}

impl From<CohomologyError> for Outcome {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::BudgetExceeded { .. } => Outcome::Skipped(e.to_string()),
            e => Outcome::Fail(e.to_string()),
        }
    }
}

impl From<ResolutionError> for Outcome {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::BudgetExceeded { .. } => Outcome::Skipped(e.to_string()),
            ResolutionError::Cohomology(c) => c.into(),
            e => Outcome::Fail(e.to_string()),
        }
    }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), Outcome> {
    if ok {
        Ok(())
    } else {
        Err(Outcome::Fail(detail()))
    }
}

/// `δⁿ⁺¹δⁿf = e` and matrix-versus-direct agreement for `n ≤ max_degree`.
fn nilpotency(m: &PartialGModule, max_degree: usize, budget: usize) -> Result<String, Outcome> {
    let mut cache = UnitGroupCache::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut counts = Vec::new();
    for n in 0..=max_degree {
        let c0 = CochainGroup::new(m, n, budget, &mut cache)?;
        let c1 = CochainGroup::new(m, n + 1, budget, &mut cache)?;
        let c2 = CochainGroup::new(m, n + 2, budget, &mut cache)?;
        check_matrix(m, &c0, &c1, &coboundary_matrix(m, &c0, &c1))?;
        let e = c2.identity();
        let exhaustive = c0.order() <= EXHAUSTIVE_LIMIT;
        let total = if exhaustive { c0.order() as usize } else { RANDOM_SAMPLES };
        for k in 0..total {
            let f = if exhaustive { c0.nth(k as u128) } else { c0.random(&mut rng) };
            ensure(coboundary(m, &c1, &c2, &coboundary(m, &c0, &c1, &f)) == e, || format!("δδf ≠ e in degree {n} for {:?}", f.values))?;
        }
        counts.push(total);
    }
    Ok(format!("cochains checked per degree {counts:?}"))
}

fn two_routes(m: &PartialGModule, n: usize, budget: usize) -> Result<String, Outcome> {
    let direct = cohomology(m, n, budget)?;
    let resolved = cohomology_via_resolution(m, n, budget)?;
    ensure(direct.invariant_factors() == resolved.invariant_factors(), || {
        format!("direct {:?} vs resolution {:?}", direct.invariant_factors(), resolved.invariant_factors())
    })?;
    Ok(format!("H^{n} = {:?}", direct.invariant_factors()))
}

fn oracle(m: &PartialGModule, n: usize, budget: usize) -> Result<String, Outcome> {
    let h = cohomology(m, n, budget)?;
    match brute_force_cohomology(m, n, BRUTE_FORCE_LIMIT)? {
        None => Err(Outcome::Skipped("cochain groups too large to enumerate".into())),
        Some(b) => {
            ensure(b == h.invariant_factors(), || format!("SNF {:?} vs enumeration {b:?}", h.invariant_factors()))?;
            Ok(format!("H^{n} = {b:?}"))
        }
    }
}

fn tilde(m: &PartialGModule, n: usize, budget: usize) -> Result<String, Outcome> {
    let (t, _) = m.make_tilde();
    let a = cohomology(m, n, budget)?;
    let b = cohomology(&t, n, budget)?;
    ensure(a.invariant_factors() == b.invariant_factors(), || format!("A {:?} vs Ã {:?}", a.invariant_factors(), b.invariant_factors()))?;
    Ok(format!("|A| = {}, |Ã| = {}", m.monoid().len(), t.monoid().len()))
}

fn homotopy(m: &PartialGModule, max_degree: usize, budget: usize) -> Result<String, Outcome> {
    let t;
    let m = if m.is_inverse_module() {
        m
    } else {
        t = m.make_tilde().0;
        &t
    };
    let r = Resolution::new(m, budget)?.check_homotopy(max_degree)?;
    Ok(format!("|S′| = {}, generators {:?}", r.s_prime_order, r.generators_checked))
}

/// `ρ` from the lower-bound criterion equals the generated congruence.
fn rho(sm: &SModule) -> Result<String, Outcome> {
    let l = lambda_product(sm);
    let a = rho_by_criterion(sm, &l);
    ensure(a == rho_by_closure(sm, &l), || "criterion and closure disagree".into())?;
    Ok(format!("|L(A,S)| = {}, classes {}", l.len(), a.count()))
}

fn crossed_iso(m: &PartialGModule) -> Result<String, Outcome> {
    if !m.is_inverse_module() {
        return Err(Outcome::Skipped("not an inverse partial module".into()));
    }
    let c = crossed_product(m);
    if c.len() > ISO_LIMIT {
        return Err(Outcome::Skipped(format!("|A∗G| = {} exceeds {ISO_LIMIT}", c.len())));
    }
    let (_, sm) = m.to_s_module().map_err(|e| Outcome::Fail(e.to_string()))?;
    let sd = semidirect(&sm);
    ensure(isomorphic(&sd.quotient, &c.table).is_some(), || "A⋊S(G) and A∗G are not isomorphic".into())?;
    Ok(format!("|A∗G| = {}", c.len()))
}

/// Every check on one partial module, degrees `0..=max_degree`.
pub fn verify_module(report: &mut VerifyReport, name: &str, m: &PartialGModule, max_degree: usize, budget: usize) {
    report.push("coboundary-nilpotency", name, nilpotency(m, max_degree, budget));
    for n in 0..=max_degree {
        report.push(&format!("two-route-h{n}"), name, two_routes(m, n, budget));
        report.push(&format!("brute-force-h{n}"), name, oracle(m, n, budget));
        report.push(&format!("tilde-h{n}"), name, tilde(m, n, budget));
    }
    report.push("contracting-homotopy", name, homotopy(m, max_degree + 1, budget));
    report.push("crossed-product-iso", name, crossed_iso(m));
    match m.to_s_module() {
        Ok((_, sm)) => report.push("rho-criterion", name, rho(&sm)),
        Err(e) => report.push("rho-criterion", name, Err(Outcome::Skipped(e.to_string()))),
    }
}

/// `g_{σ_f} = f`, `σ_{g_τ} = τ`, cohomologous ⇔ equivalent, and class count `= |H²|`.
fn schur(km: &KLinearModule) -> Result<String, Outcome> {
    let m = km.module();
    let g = m.group();
    let fail = |e: crate::schur::SchurError| Outcome::Fail(e.to_string());
    let twistings = km.enumerate_twistings().map_err(fail)?;
    let h = cohomology(m, 2, crate::cohomology::DEFAULT_BUDGET)?;
    let cocycles = twistings.iter().map(|t| km.cocycle_of_twisting(t)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
    for (t, f) in twistings.iter().zip(&cocycles) {
        ensure(h.is_cocycle(f), || format!("g_τ is not a cocycle for τ = {t:?}"))?;
        ensure(km.twisting_of_cocycle(f).map_err(fail)? == *t, || format!("σ_(g_τ) ≠ τ for τ = {t:?}"))?;
    }
    for (i, s) in twistings.iter().enumerate() {
        for (j, t) in twistings.iter().enumerate() {
            let equivalent = twisting_equivalence(g, &km.field(), s, t).map_err(fail)?.is_some();
            let cohomologous = h.cohomologous(&cocycles[i], &cocycles[j]) == Some(true);
            ensure(equivalent == cohomologous, || format!("twistings {i} and {j}: equivalent {equivalent}, cohomologous {cohomologous}"))?;
        }
    }
    let r = component_r(km).map_err(fail)?;
    ensure(r.consistent(), || format!("{} classes but |H²| = {}", r.classes, r.h2_order))?;
    Ok(format!("{} twistings, {} classes", r.twistings, r.classes))
}

pub fn verify_kmodule(report: &mut VerifyReport, name: &str, km: &KLinearModule) {
    report.push("schur-correspondence", name, schur(km));
}

fn exel_facts() -> Result<String, Outcome> {
    let mut sizes = Vec::new();
    for g in [fixtures::z2(), fixtures::z3(), fixtures::klein()] {
        let e = build_exel(&g).map_err(|e| Outcome::Fail(e.to_string()))?;
        let s = e.semigroup();
        ensure(s.idempotents().len() == 1 << (g.order() - 1), || "|E(S(G))| ≠ 2^(|G|-1)".into())?;
        let (_, q) = s.min_group_congruence();
        ensure(q.isomorphism_to(&g).is_some(), || "S(G)/σ is not G".into())?;
        sizes.push(e.len());
    }
    ensure(sizes == [3, 8, 20], || format!("sizes {sizes:?}"))?;
    Ok(format!("|S(G)| = {sizes:?}"))
}

fn catalog() -> Result<String, Outcome> {
    let mut positive = 0;
    let entries = fixtures::curated_catalog();
    for (name, s) in &entries {
        let c = characterize(s).map_err(|e| Outcome::Fail(e.to_string()))?;
        ensure(c.agrees(), || format!("{name}: max-generated F-inverse {} but epi {:?}", c.max_generated_f_inverse, c.epi_found))?;
        positive += usize::from(c.max_generated_f_inverse);
    }
    Ok(format!("{} semigroups, {positive} max-generated F-inverse", entries.len()))
}

fn bridge(k: usize, max_degree: usize, budget: usize) -> Result<String, Outcome> {
    let s = fixtures::exel_z2();
    let a = PartialGModule::trivial(fixtures::z2(), CommMonoid::cyclic_group(k));
    let mut values = Vec::new();
    for n in 0..=max_degree {
        let r = bridge_report(s.semigroup(), &a, n, budget).map_err(|e| Outcome::Fail(e.to_string()))?;
        ensure(r.agrees() && r.classical.is_some(), || format!("{r:?}"))?;
        values.push(r.direct);
    }
    Ok(format!("H^n = {values:?}"))
}

/// Everything over the bundled fixtures.
pub fn verify_fixtures(budget: usize) -> VerifyReport {
    let mut report = VerifyReport::default();
    for (name, m) in fixtures::bundled_modules() {
        verify_module(&mut report, &name, &m, 2, budget);
    }
    verify_kmodule(&mut report, "gf3-partial", &fixtures::gf3_partial_module());
    verify_kmodule(&mut report, "gf3-global", &fixtures::gf3_global_module());
    let z2z = SModule::self_module(&fixtures::z2_with_zero()).expect("self module");
    report.push("rho-criterion", "z2-with-zero", rho(&z2z));
    report.push("exel-monoid", "z2,z3,z2xz2", exel_facts());
    report.push("finverse-characterization", "curated-catalog", catalog());
    for k in [2, 3] {
        report.push("hat-bridge", &format!("trivial-z{k}-over-z2"), bridge(k, 2, budget));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_module_passes() {
        let mut r = VerifyReport::default();
        verify_module(&mut r, "sign", &fixtures::sign_module(), 2, crate::cohomology::DEFAULT_BUDGET);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn tight_budget_skips_instead_of_failing() {
        let mut r = VerifyReport::default();
        verify_module(&mut r, "klein", &PartialGModule::trivial(fixtures::klein(), CommMonoid::cyclic_group(2)), 2, 20);
        assert!(r.passed());
        assert!(r.checks.iter().any(|c| c.status == Status::Skipped));
    }

    #[test]
    fn schur_checks_pass() {
        let mut r = VerifyReport::default();
        verify_kmodule(&mut r, "gf3-partial", &fixtures::gf3_partial_module());
        assert_eq!(r.checks[0].status, Status::Pass, "{:?}", r.checks[0]);
    }
}
