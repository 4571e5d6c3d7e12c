//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use parcoh_core::bridge::{bridge_report, check_hat_cochain_iso, classical, hat_module};
use parcoh_core::cohomology::{coboundary, cohomology, is_normalized, CochainGroup, DEFAULT_BUDGET};
use parcoh_core::crossed::{crossed_product, isomorphic, lambda_product, rho_by_closure, rho_by_criterion, semidirect, ISO_LIMIT};
use parcoh_core::exel::{build_exel, characterize};
use parcoh_core::fixtures;
use parcoh_core::group::FiniteGroup;
use parcoh_core::monoid::{CommMonoid, UnitGroupCache};
use parcoh_core::partial_module::{PartialGModule, SModule};
use parcoh_core::resolution::{cohomology_via_resolution, Resolution};
use parcoh_core::schur::{component_r, twisting_equivalence, KLinearModule};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn factors(m: &PartialGModule, n: usize) -> Result<Vec<u64>, String> {
    Ok(cohomology(m, n, DEFAULT_BUDGET).map_err(err)?.invariant_factors().to_vec())
}

fn nilpotency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut exhaustive, mut sampled) = (0u128, 0u128);
    for (name, m) in fixtures::bundled_modules() {
        let mut cache = UnitGroupCache::default();
        let groups: Vec<CochainGroup> = (0..=4).map(|n| CochainGroup::new(&m, n, DEFAULT_BUDGET, &mut cache)).collect::<Result<_, _>>().map_err(err)?;
        for n in 0..=2 {
            let (c0, c1, c2) = (&groups[n], &groups[n + 1], &groups[n + 2]);
            let e = c2.identity();
            let all = c0.order() <= 10_000;
            let count = if all { c0.order() } else { 500 };
            for k in 0..count {
                let f = if all { c0.nth(k) } else { c0.random(&mut rng) };
                ensure(coboundary(&m, c1, c2, &coboundary(&m, c0, c1, &f)) == e, || format!("{name}: δδf ≠ e in degree {n}"))?;
            }
            if all {
                exhaustive += count;
            } else {
                sampled += count;
            }
        }
    }
    Ok(format!("{exhaustive} cochains exhaustively, {sampled} sampled"))
}

fn criterion_modules() -> Vec<(String, PartialGModule)> {
    let mut out = vec![
        ("sign".to_string(), fixtures::sign_module()),
        ("gf3-partial".to_string(), fixtures::gf3_partial_module().module().clone()),
    ];
    out.extend(fixtures::global_trivial_modules());
    out
}

fn two_routes() -> Outcome {
    let mut count = 0;
    for (name, m) in criterion_modules() {
        for n in 0..=2 {
            let direct = factors(&m, n)?;
            let resolved = cohomology_via_resolution(&m, n, DEFAULT_BUDGET).map_err(err)?;
            ensure(direct == resolved.invariant_factors(), || format!("{name} H^{n}: {direct:?} vs {:?}", resolved.invariant_factors()))?;
            count += 1;
        }
    }
    let sign: Vec<Vec<u64>> = (0..=2).map(|n| factors(&fixtures::sign_module(), n)).collect::<Result<_, _>>()?;
    ensure(sign == [vec![2], vec![2], vec![2]], || format!("sign module H^0..2 = {sign:?}"))?;
    Ok(format!("{count} groups agree"))
}

fn classical_reduction() -> Outcome {
    let expect = [(2, 2, 1, vec![2]), (2, 2, 2, vec![2]), (3, 3, 2, vec![3]), (2, 3, 2, vec![]), (3, 2, 1, vec![])];
    for (g, a, n, h) in expect {
        let m = PartialGModule::trivial(FiniteGroup::cyclic(g), CommMonoid::cyclic_group(a));
        let c = classical::cohomology(m.group(), m.monoid(), &classical::action_of(&m), n, classical::DEFAULT_LIMIT);
        ensure(c.as_ref() == Some(&h), || format!("classical H^{n}(Z{g}, Z{a}) = {c:?}"))?;
        ensure(factors(&m, n)? == h, || format!("partial H^{n}(Z{g}, Z{a}) ≠ {h:?}"))?;
    }
    let mut compared = 0;
    for (name, m) in fixtures::global_trivial_modules() {
        for n in 0..=2 {
            if let Some(c) = classical::cohomology(m.group(), m.monoid(), &classical::action_of(&m), n, classical::DEFAULT_LIMIT) {
                ensure(c == factors(&m, n)?, || format!("{name} H^{n}: classical {c:?}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} bundled cases within the enumeration limit"))
}

fn homotopy() -> Outcome {
    let mut generators = 0;
    for (name, m) in fixtures::bundled_modules() {
        let m = if m.is_inverse_module() { m } else { m.make_tilde().0 };
        let r = Resolution::new(&m, DEFAULT_BUDGET).map_err(err)?;
        let report = r.check_homotopy(3).map_err(|e| format!("{name}: {e}"))?;
        generators += report.generators_checked.iter().sum::<usize>();
    }
    Ok(format!("{generators} generators"))
}

fn exel_facts() -> Outcome {
    for (g, size) in [(fixtures::z2(), 3), (fixtures::z3(), 8), (fixtures::klein(), 20)] {
        let e = build_exel(&g).map_err(err)?;
        let pairs = (0u32..1 << g.order())
            .filter(|s| s & 1 << g.identity() != 0)
            .map(|s| s.count_ones() as usize)
            .sum::<usize>();
        ensure(e.len() == size && pairs == size, || format!("|S(G)| = {} for |G| = {}", e.len(), g.order()))?;
        let idem = e.semigroup().idempotents().len();
        ensure(idem == 1 << (g.order() - 1), || format!("|E(S(G))| = {idem}"))?;
        let (_, q) = e.semigroup().min_group_congruence();
        ensure(q.isomorphism_to(&g).is_some(), || "S(G)/σ ≇ G".into())?;
    }
    Ok("sizes 3, 8, 20".into())
}

fn bundled_s_modules() -> Result<Vec<(String, SModule)>, String> {
    let mut out = vec![("z2-with-zero".to_string(), SModule::self_module(&fixtures::z2_with_zero()).map_err(err)?)];
    for (name, m) in fixtures::bundled_modules() {
        if m.group().order() <= 3 {
            out.push((name, m.to_s_module().map_err(err)?.1));
        }
    }
    Ok(out)
}

fn rho() -> Outcome {
    let s = fixtures::z2_with_zero();
    let sm = SModule::self_module(&s).map_err(err)?;
    let l = lambda_product(&sm);
    let r = rho_by_criterion(&sm, &l);
    let (a_a, a_1) = (l.index_of((1, 1)).unwrap(), l.index_of((1, 0)).unwrap());
    ensure(!r.related(a_a, a_1), || "(aδ_a, aδ_1) ∈ ρ".into())?;
    ensure(s.sigma_related(1, 0), || "(a, 1) ∉ σ".into())?;
    let modules = bundled_s_modules()?;
    for (name, sm) in &modules {
        let l = lambda_product(sm);
        ensure(rho_by_criterion(sm, &l) == rho_by_closure(sm, &l), || format!("{name}: criterion ≠ closure"))?;
    }
    Ok(format!("example reproduced, {} S-modules", modules.len()))
}

fn crossed_iso() -> Outcome {
    let mut count = 0;
    for (name, m) in fixtures::bundled_modules() {
        if !m.is_inverse_module() {
            continue;
        }
        let c = crossed_product(&m);
        if c.len() > ISO_LIMIT {
            continue;
        }
        let sd = semidirect(&m.to_s_module().map_err(err)?.1);
        ensure(isomorphic(&sd.quotient, &c.table).is_some(), || format!("{name}: no isomorphism"))?;
        count += 1;
    }
    ensure(count >= 10, || format!("only {count} modules in range"))?;
    Ok(format!("{count} modules"))
}

fn schur_one(name: &str, km: &KLinearModule) -> Result<usize, String> {
    let m = km.module();
    let h = cohomology(m, 2, DEFAULT_BUDGET).map_err(err)?;
    let c2 = &h.cochains;
    let mut normalized = 0;
    for k in 0..c2.order() {
        let f = c2.nth(k);
        if h.is_cocycle(&f) && is_normalized(m, &f) {
            let s = km.twisting_of_cocycle(&f).map_err(err)?;
            ensure(km.cocycle_of_twisting(&s).map_err(err)? == f, || format!("{name}: g_(σ_f) ≠ f"))?;
            normalized += 1;
        }
    }
    let twistings = km.enumerate_twistings().map_err(err)?;
    let cocycles = twistings.iter().map(|t| km.cocycle_of_twisting(t)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    for (t, f) in twistings.iter().zip(&cocycles) {
        ensure(km.twisting_of_cocycle(f).map_err(err)? == *t, || format!("{name}: σ_(g_τ) ≠ τ"))?;
    }
    for i in 0..twistings.len() {
        for j in 0..twistings.len() {
            let eq = twisting_equivalence(m.group(), &km.field(), &twistings[i], &twistings[j]).map_err(err)?.is_some();
            ensure(eq == (h.cohomologous(&cocycles[i], &cocycles[j]) == Some(true)), || format!("{name}: pair ({i}, {j})"))?;
        }
    }
    let r = component_r(km).map_err(err)?;
    ensure(r.classes as u64 == h.presentation.order(), || format!("{name}: {} classes, |H²| = {}", r.classes, h.presentation.order()))?;
    ensure(normalized == twistings.len(), || format!("{name}: |NZ²| = {normalized}, {} twistings", twistings.len()))?;
    Ok(twistings.len())
}

fn schur() -> Outcome {
    let a = schur_one("gf3-partial", &fixtures::gf3_partial_module())?;
    let b = schur_one("gf3-global", &fixtures::gf3_global_module())?;
    Ok(format!("{a} and {b} twistings"))
}

fn finverse_catalog() -> Outcome {
    let catalog = fixtures::curated_catalog();
    let mut positive = 0;
    for (name, s) in &catalog {
        let c = characterize(s).map_err(err)?;
        ensure(c.agrees(), || format!("{name}: {c:?}"))?;
        positive += usize::from(c.max_generated_f_inverse);
    }
    ensure(positive > 0 && positive < catalog.len(), || "catalog is one-sided".into())?;
    Ok(format!("{} semigroups, {positive} positive", catalog.len()))
}

fn bridge() -> Outcome {
    let exel = fixtures::exel_z2();
    let mut values = Vec::new();
    for k in [2, 3] {
        let a = PartialGModule::trivial(fixtures::z2(), CommMonoid::cyclic_group(k));
        check_hat_cochain_iso(&hat_module(exel.semigroup(), &a).map_err(err)?, 2).map_err(err)?;
        for n in 0..=2 {
            let r = bridge_report(exel.semigroup(), &a, n, DEFAULT_BUDGET).map_err(err)?;
            ensure(r.classical.is_some() && r.agrees(), || format!("Z{k}, n = {n}: {r:?}"))?;
            values.push(r.direct);
        }
    }
    Ok(format!("H^0..2 = {values:?}"))
}

fn tilde() -> Outcome {
    let mut count = 0;
    for (name, m) in fixtures::bundled_modules() {
        let (t, _) = m.make_tilde();
        for n in 0..=2 {
            ensure(factors(&m, n)? == factors(&t, n)?, || format!("{name} H^{n}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} groups agree"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("coboundary nilpotency", nilpotency, Some(10)),
        ("two-route cohomology", two_routes, Some(60)),
        ("classical reduction", classical_reduction, None),
        ("homotopy identity", homotopy, Some(10)),
        ("Exel monoid facts", exel_facts, None),
        ("rho-congruence", rho, None),
        ("crossed-product isomorphism", crossed_iso, None),
        ("Schur round-trip", schur, None),
        ("F-inverse characterization", finverse_catalog, None),
        ("hat bridge", bridge, None),
        ("tilde invariance", tilde, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(l)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(*l) {
                outcome = Err(format!("took {elapsed:.2?}, limit {l} s"));
            }
        }
        match outcome {
            Ok(d) => println!("PASS {:>2} {name}: {d} ({elapsed:.2?})", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
