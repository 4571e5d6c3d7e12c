//! Small bundled groups, semigroups and modules used by tests, benches and the CLI.

use crate::exel::{build_exel, ExelMonoid};
use crate::group::FiniteGroup;
use crate::monoid::CommMonoid;
use crate::partial_module::PartialGModule;
use crate::schur::{module_from_semilattice, FiniteField, KLinearModule};
use crate::semigroup::{check_associative, find_isomorphism, InvSemigroup};

pub fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

pub fn z3() -> FiniteGroup {
    FiniteGroup::cyclic(3)
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::klein()
}

pub fn s3() -> FiniteGroup {
    FiniteGroup::s3()
}

pub fn group_by_name(name: &str) -> Option<FiniteGroup> {
    match name {
        "z2" => Some(z2()),
        "z3" => Some(z3()),
        "z4" => Some(FiniteGroup::cyclic(4)),
        "klein" | "z2xz2" => Some(klein()),
        "s3" => Some(s3()),
        _ => None,
    }
}

/// `A = {1, -1, e, -e}` over `ℤ₂` with `1_g = e` and `θ_g` the identity on `eA`.
pub fn sign_module() -> PartialGModule {
    let a = CommMonoid::from_table(vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 2, 3],
        vec![3, 2, 3, 2],
    ])
    .expect("sign carrier is a monoid");
    let theta = vec![(0..4).map(Some).collect(), vec![None, None, Some(2), Some(3)]];
    PartialGModule::new(z2(), a, vec![0, 2], theta).expect("sign module is valid")
}

/// The sign module with an absorbing idempotent `z` (index 4) fixed by `θ_g`.
pub fn sign_module_with_absorbing() -> PartialGModule {
    let a = CommMonoid::from_table(vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 2, 4],
        vec![2, 3, 2, 3, 4],
        vec![3, 2, 3, 2, 4],
        vec![4, 4, 4, 4, 4],
    ])
    .expect("carrier is a monoid");
    let theta = vec![(0..5).map(Some).collect(), vec![None, None, Some(2), Some(3), Some(4)]];
    PartialGModule::new(z2(), a, vec![0, 2], theta).expect("module is valid")
}

/// `{1, 2, e, 2e, 0}` over `GF(3)` and `ℤ₂` with `1_g = e`, in that index order.
pub fn gf3_partial_module() -> KLinearModule {
    let e = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
    let theta = vec![
        vec![Some(0), Some(1), Some(2)],
        vec![None, Some(1), Some(2)],
    ];
    module_from_semilattice(&z2(), FiniteField::new(3).unwrap(), &e, 2, &[0, 1], &theta).expect("GF(3) partial module is adjusted")
}

/// `{1, 2, 0}` over `GF(3)` with trivial global `ℤ₂`-action.
pub fn gf3_global_module() -> KLinearModule {
    let e = vec![vec![0, 1], vec![1, 1]];
    let theta = vec![vec![Some(0), Some(1)], vec![Some(0), Some(1)]];
    module_from_semilattice(&z2(), FiniteField::new(3).unwrap(), &e, 1, &[0, 0], &theta).expect("GF(3) global module is adjusted")
}

/// Subsets of `G` containing `1` under union, with `1_x = {1, x}` and
/// `θ_x(X) = xX`. Elements are indexed by increasing bitmask.
pub fn exel_semilattice_module(g: &FiniteGroup) -> PartialGModule {
    exel_semilattice_module_with_coefficients(g, 1)
}

/// The semilattice module times a trivially acted cyclic group `ℤ_m`;
/// element `(X, c)` has index `pos(X)·m + c`.
pub fn exel_semilattice_module_with_coefficients(g: &FiniteGroup, m: usize) -> PartialGModule {
    let n = g.order();
    assert!(n <= 8, "semilattice module is limited to groups of order at most 8");
    let one = g.identity();
    let masks: Vec<u32> = (0u32..1 << n).filter(|s| s & (1 << one) != 0).collect();
    let pos = |s: u32| masks.binary_search(&s).expect("mask contains identity");
    let len = masks.len() * m;
    let enc = |s: u32, c: usize| pos(s) * m + c;
    let table: Vec<Vec<usize>> = (0..len)
        .map(|a| (0..len).map(|b| enc(masks[a / m] | masks[b / m], (a % m + b % m) % m)).collect())
        .collect();
    let monoid = CommMonoid::from_table(table).expect("union semilattice is a monoid");
    let unit_idems: Vec<usize> = (0..n).map(|x| enc((1 << one) | (1 << x), 0)).collect();
    let translate = |x: usize, s: u32| -> u32 {
        (0..n).filter(|&y| s & (1 << y) != 0).fold(0, |acc, y| acc | (1 << g.mul(x, y)))
    };
    let theta = (0..n)
        .map(|x| {
            (0..len)
                .map(|a| {
                    let s = masks[a / m];
                    (s & (1 << g.inv(x)) != 0).then(|| enc(translate(x, s), a % m))
                })
                .collect()
        })
        .collect();
    PartialGModule::new(g.clone(), monoid, unit_idems, theta).expect("semilattice module is valid")
}

/// Named modules that the tests and `verify --fixtures` sweep over.
pub fn bundled_modules() -> Vec<(String, PartialGModule)> {
    let mut out = vec![
        ("sign".to_string(), sign_module()),
        ("gf3-partial".to_string(), gf3_partial_module().module().clone()),
        ("gf3-global".to_string(), gf3_global_module().module().clone()),
        ("exel-semilattice-z2".to_string(), exel_semilattice_module(&z2())),
        ("exel-semilattice-z3".to_string(), exel_semilattice_module(&z3())),
        ("exel-semilattice-z2-coeff-z2".to_string(), exel_semilattice_module_with_coefficients(&z2(), 2)),
    ];
    out.extend(global_trivial_modules());
    out
}

/// Trivial global modules `A ∈ {ℤ₂, ℤ₃, ℤ₄, ℤ₂²}` over `G ∈ {ℤ₂, ℤ₃, ℤ₂²}`.
pub fn global_trivial_modules() -> Vec<(String, PartialGModule)> {
    let coeffs = [
        ("z2", CommMonoid::cyclic_group(2)),
        ("z3", CommMonoid::cyclic_group(3)),
        ("z4", CommMonoid::cyclic_group(4)),
        ("z2xz2", CommMonoid::direct_product(&CommMonoid::cyclic_group(2), &CommMonoid::cyclic_group(2))),
    ];
    let groups = [("z2", z2()), ("z3", z3()), ("z2xz2", klein())];
    let mut out = Vec::new();
    for (gn, g) in &groups {
        for (an, a) in &coeffs {
            out.push((format!("trivial-{an}-over-{gn}"), PartialGModule::trivial(g.clone(), a.clone())));
        }
    }
    out
}

/// `ℤ₂ ∪ {0}`: a group with an adjoined zero, index 2.
pub fn z2_with_zero() -> InvSemigroup {
    InvSemigroup::validate(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]).expect("Z2 with zero is inverse")
}

/// `𝒮(ℤ₂)`.
pub fn exel_z2() -> ExelMonoid {
    build_exel(&z2()).expect("Z2 is small")
}

/// Groups of order at most 6, one per isomorphism class.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=6).map(|n| (format!("z{n}"), FiniteGroup::cyclic(n))).collect();
    out.insert(4, ("z2xz2".to_string(), klein()));
    out.push(("s3".to_string(), s3()));
    out
}

/// Semilattices on `1..=max` elements, one per isomorphism class.
pub fn semilattices(max: usize) -> Vec<InvSemigroup> {
    let mut out: Vec<InvSemigroup> = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let total = n.pow(pairs.len() as u32);
        for mut code in 0..total {
            let mut t: Vec<Vec<usize>> = (0..n).map(|i| vec![i; n]).collect();
            for &(i, j) in &pairs {
                t[i][j] = code % n;
                t[j][i] = code % n;
                code /= n;
            }
            if check_associative(&t).is_err() {
                continue;
            }
            if out.iter().any(|s| s.len() == n && find_isomorphism(s.table(), &t).is_some()) {
                continue;
            }
            out.push(InvSemigroup::validate(t).expect("commutative idempotent semigroups are inverse"));
        }
    }
    out
}

/// The inverse semigroups on which "max-generated F-inverse" is compared
/// with "quotient of `𝒮(S/σ)` with kernel in σ".
pub fn curated_catalog() -> Vec<(String, InvSemigroup)> {
    let mut out: Vec<(String, InvSemigroup)> = small_groups()
        .into_iter()
        .map(|(name, g)| (format!("group-{name}"), InvSemigroup::from_group(&g)))
        .collect();
    for (i, s) in semilattices(4).into_iter().enumerate() {
        out.push((format!("semilattice-{}-{i}", s.len()), s));
    }
    out.push(("exel-z2".to_string(), exel_z2().semigroup().clone()));
    out.push(("exel-z3".to_string(), build_exel(&z3()).expect("Z3 is small").semigroup().clone()));
    out.push(("z2-with-zero".to_string(), z2_with_zero()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(bundled_modules().len(), 18);
        assert_eq!(exel_z2().len(), 3);
        assert_eq!(exel_semilattice_module(&z3()).monoid().len(), 4);
        assert_eq!(exel_semilattice_module_with_coefficients(&z2(), 3).monoid().len(), 6);
        let gf3 = gf3_partial_module();
        // {e, 2e} = {1·e, 2·e}
        assert_eq!(gf3.scale(1, 2), 2);
        assert_eq!(gf3.scale(2, 2), 3);
        assert_eq!(gf3.module().monoid().unit_elements(2), vec![2, 3]);
    }

    #[test]
    fn catalog_counts() {
        // Semilattices up to isomorphism: 1, 1, 2, 5 on 1..4 elements.
        let counts: Vec<usize> = (1..=4).map(|n| semilattices(4).iter().filter(|s| s.len() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5]);
        assert_eq!(small_groups().len(), 8);
        assert_eq!(curated_catalog().len(), 8 + 9 + 3);
    }
}
