//! Finite abelian groups as products of cyclic groups, integer homomorphisms
//! between them, and subquotients `ker Z / im B`.
//!
//! A "cyclic product" is a list of moduli `[m_1, .., m_k]` standing for
//! `Z/m_1 x .. x Z/m_k`; its elements are coordinate vectors with
//! `0 <= x_i < m_i`. An [`AbelianPresentation`] is the normalized special case
//! of invariant factors (each `> 1`, each dividing the next).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snf::{self, gcd, smith_normal_form, Matrix, SnfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the Cayley table is not a group")]
    NotAGroup,
    #[error("the group is not abelian")]
    NotAbelian,
    #[error("image of the incoming map is not contained in the kernel of the outgoing map")]
    ImageNotInKernel,
    #[error("homomorphism shapes do not match")]
    ShapeMismatch,
    #[error("matrix does not define a homomorphism (column {0})")]
    NotWellDefined(usize),
    #[error(transparent)]
    Snf(#[from] SnfError),
}

/// Invariant-factor description of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianPresentation {
    factors: Vec<u64>,
}

impl AbelianPresentation {
    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    /// Normalizes an arbitrary product of cyclic groups to invariant factors.
    pub fn from_moduli(moduli: &[u64]) -> Self {
        if moduli.is_empty() {
            return Self::trivial();
        }
        let k = moduli.len();
        let a: Matrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { moduli[i] as i128 } else { 0 }).collect())
            .collect();
        let s = smith_normal_form(&a, k, 0).expect("diagonal SNF cannot overflow");
        let mut factors: Vec<u64> = s.diag.iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
        factors.sort_unstable();
        Self { factors }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// A homomorphism between cyclic products, given by an integer matrix whose
/// column `j` is the image of the `j`-th source generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntHom {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    /// `target.len()` rows, `source.len()` columns, row `i` reduced mod `target[i]`.
    pub matrix: Vec<Vec<u64>>,
}

impl IntHom {
    pub fn zero(source: Vec<u64>, target: Vec<u64>) -> Self {
        let matrix = vec![vec![0; source.len()]; target.len()];
        Self { source, target, matrix }
    }

    pub fn from_columns(source: Vec<u64>, target: Vec<u64>, columns: &[Vec<u64>]) -> Self {
        let mut h = Self::zero(source, target);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                h.matrix[i][j] = x % h.target[i];
            }
        }
        h
    }

    /// Checks `m_j * column_j == 0` in the target for every source generator.
    pub fn check(&self) -> Result<(), LatticeError> {
        if self.matrix.len() != self.target.len()
            || self.matrix.iter().any(|r| r.len() != self.source.len())
        {
            return Err(LatticeError::ShapeMismatch);
        }
        for (j, &m) in self.source.iter().enumerate() {
            for (i, &t) in self.target.iter().enumerate() {
                if !(self.matrix[i][j] as u128 * m as u128).is_multiple_of(t as u128) {
                    return Err(LatticeError::NotWellDefined(j));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(&self.target)
            .map(|(row, &t)| {
                let mut s: u128 = 0;
                for (a, &b) in row.iter().zip(x) {
                    s = (s + *a as u128 * b as u128) % t as u128;
                }
                s as u64
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntHom) -> Result<IntHom, LatticeError> {
        if other.target != self.source {
            return Err(LatticeError::ShapeMismatch);
        }
        let cols: Vec<Vec<u64>> = (0..other.source.len())
            .map(|j| {
                let col: Vec<u64> = other.matrix.iter().map(|r| r[j]).collect();
                self.apply(&col)
            })
            .collect();
        Ok(IntHom::from_columns(other.source.clone(), self.target.clone(), &cols))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x == 0))
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a as i128, b as i128) as u64 * b
}

/// Invariant-factor decomposition of a finite abelian group, with coordinate maps.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub presentation: AbelianPresentation,
    /// Coordinates of each element (index into the group's element list).
    pub coords: Vec<Vec<u64>>,
    /// Element index of each invariant-factor generator.
    pub generators: Vec<usize>,
    lookup: HashMap<Vec<u64>, usize>,
}

impl Decomposition {
    pub fn element(&self, coords: &[u64]) -> usize {
        let key: Vec<u64> = coords
            .iter()
            .zip(self.presentation.invariant_factors())
            .map(|(&c, &d)| c % d)
            .collect();
        self.lookup[&key]
    }

    pub fn rank(&self) -> usize {
        self.presentation.invariant_factors().len()
    }
}

/// Decomposes an abelian group given by `n` elements, a multiplication
/// closure and the identity index.
pub fn decompose_with<F>(n: usize, identity: usize, mul: F) -> Result<Decomposition, LatticeError>
where
    F: Fn(usize, usize) -> usize,
{
    // Greedy generating set; `old` holds coordinates w.r.t. the chosen generators.
    let mut gens: Vec<usize> = Vec::new();
    let mut old: Vec<Option<Vec<i128>>> = vec![None; n];
    let mut members: Vec<usize> = vec![identity];
    old[identity] = Some(vec![]);
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for g in 0..n {
        if old[g].is_some() {
            continue;
        }
        let r = gens.len();
        gens.push(g);
        for c in old.iter_mut().flatten() {
            c.push(0);
        }
        // Smallest k with g^k in the current subgroup.
        let mut power = g;
        let mut k = 1i128;
        while old[power].is_none() {
            power = mul(power, g);
            k += 1;
            if k as usize > n + 1 {
                return Err(LatticeError::NotAGroup);
            }
        }
        let mut rel = old[power].clone().unwrap();
        for x in rel.iter_mut() {
            *x = -*x;
        }
        rel[r] = k;
        relations.push(rel);
        // New subgroup = old * {g^0..g^{k-1}}.
        let base = members.clone();
        let mut gp = g;
        for e in 1..k {
            for &m in &base {
                let x = mul(m, gp);
                if old[x].is_some() {
                    return Err(LatticeError::NotAGroup);
                }
                let mut c = old[m].clone().unwrap();
                c[r] = e;
                old[x] = Some(c);
                members.push(x);
            }
            gp = mul(gp, g);
        }
    }
    if members.len() != n {
        return Err(LatticeError::NotAGroup);
    }
    let r = gens.len();
    // Relations as columns: Z^r / col-span(rel) = group.
    let rel: Matrix = (0..r)
        .map(|i| (0..r).map(|j| relations[j].get(i).copied().unwrap_or(0)).collect())
        .collect();
    let s = smith_normal_form(&rel, r, 0)?;
    let mut keep: Vec<(usize, u64)> = Vec::new();
    for (i, &d) in s.diag.iter().enumerate() {
        if d.abs() > 1 {
            keep.push((i, d.unsigned_abs() as u64));
        }
    }
    let presentation = AbelianPresentation {
        factors: keep.iter().map(|&(_, d)| d).collect(),
    };
    let coords: Vec<Vec<u64>> = (0..n)
        .map(|x| {
            let o = old[x].as_ref().unwrap();
            let y = snf::mat_vec(&s.u, o, 0);
            keep.iter().map(|&(i, d)| y[i].rem_euclid(d as i128) as u64).collect()
        })
        .collect();
    let pow = |x: usize, mut e: i128| {
        let mut acc = identity;
        e = e.rem_euclid(n.max(1) as i128);
        for _ in 0..e {
            acc = mul(acc, x);
        }
        acc
    };
    let generators: Vec<usize> = keep
        .iter()
        .map(|&(i, _)| {
            let mut acc = identity;
            for (j, &gj) in gens.iter().enumerate() {
                acc = mul(acc, pow(gj, s.u_inv[j][i]));
            }
            acc
        })
        .collect();
    let lookup = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect::<HashMap<_, _>>();
    if lookup.len() != n {
        return Err(LatticeError::NotAGroup);
    }
    Ok(Decomposition {
        presentation,
        coords,
        generators,
        lookup,
    })
}

/// Invariant factors of an abelian group given by its Cayley table, plus the
/// element <-> coordinate bijection.
pub fn decompose(table: &[Vec<usize>]) -> Result<Decomposition, LatticeError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(LatticeError::NotAGroup);
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(LatticeError::NotAGroup)?;
    for row in table {
        let mut seen = vec![false; n];
        for &x in row {
            if std::mem::replace(&mut seen[x], true) {
                return Err(LatticeError::NotAGroup);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(LatticeError::NotAGroup);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..a {
            if table[a][b] != table[b][a] {
                return Err(LatticeError::NotAbelian);
            }
        }
    }
    decompose_with(n, identity, |a, b| table[a][b])
}

/// `ker Z / im B` with a basis of representatives and a class map.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub presentation: AbelianPresentation,
    /// One ambient representative per invariant factor.
    pub generators: Vec<Vec<u64>>,
    ambient: Vec<u64>,
    n: i128,
    k_u: Matrix,
    k_diag: Vec<i128>,
    q_u: Matrix,
    /// Row of `q_u` and the modulus for each kept invariant factor.
    q_keep: Vec<(usize, i128)>,
}

impl Subquotient {
    pub fn ambient(&self) -> &[u64] {
        &self.ambient
    }

    /// Coordinates in `ker Z` basis, or `None` if `x` is not in the kernel.
    fn kernel_coords(&self, x: &[u64]) -> Option<Vec<i128>> {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        let y = snf::mat_vec(&self.k_u, &xi, self.n);
        let mut c = Vec::with_capacity(self.k_diag.len());
        for (i, &yi) in y.iter().enumerate() {
            if i < self.k_diag.len() {
                let d = self.k_diag[i];
                if yi % d != 0 {
                    return None;
                }
                c.push(yi / d);
            } else if yi != 0 {
                return None;
            }
        }
        Some(c)
    }

    /// Class of a kernel element in the invariant-factor coordinates of the subquotient.
    pub fn class_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.kernel_coords(x)?;
        let y = snf::mat_vec(&self.q_u, &c, self.n);
        Some(
            self.q_keep
                .iter()
                .map(|&(i, h)| y[i].rem_euclid(h) as u64)
                .collect(),
        )
    }

    pub fn in_kernel(&self, x: &[u64]) -> bool {
        self.kernel_coords(x).is_some()
    }
}

/// Computes `ker z / im b`, where `b: U -> X` and `z: X -> W` share the ambient `X`.
pub fn subquotient(z: &IntHom, b: &IntHom) -> Result<Subquotient, LatticeError> {
    z.check()?;
    b.check()?;
    if z.source != b.target {
        return Err(LatticeError::ShapeMismatch);
    }
    let ambient = z.source.clone();
    let k = ambient.len();
    let l = z.target.len();
    // im B ⊆ ker Z.
    for j in 0..b.source.len() {
        let col: Vec<u64> = b.matrix.iter().map(|r| r[j]).collect();
        if z.apply(&col).iter().any(|&v| v != 0) {
            return Err(LatticeError::ImageNotInKernel);
        }
    }
    let n = ambient.iter().chain(&z.target).fold(1u64, |a, &m| lcm(a, m)) as i128;
    // Kernel of [Z | diag(t)] over Z/N, projected to the first k coordinates.
    let aug: Matrix = (0..l)
        .map(|i| {
            let mut row: Vec<i128> = z.matrix[i].iter().map(|&v| v as i128).collect();
            row.extend((0..l).map(|j| if i == j { z.target[i] as i128 } else { 0 }));
            row
        })
        .collect();
    let mut kgens: Vec<Vec<i128>> = Vec::new();
    if l > 0 {
        let s = smith_normal_form(&aug, k + l, n)?;
        let rank = s.rank();
        for i in 0..k + l {
            let scale = if i < rank { n / s.diag[i] } else { 1 };
            let v: Vec<i128> = (0..k).map(|r| (s.v[r][i] * scale).rem_euclid(n)).collect();
            kgens.push(v);
        }
    } else {
        for i in 0..k {
            kgens.push((0..k).map(|r| i128::from(r == i)).collect());
        }
    }
    for (j, &m) in ambient.iter().enumerate() {
        kgens.push((0..k).map(|r| if r == j { m as i128 % n } else { 0 }).collect());
    }
    let g = kgens.len();
    let kmat: Matrix = (0..k).map(|r| (0..g).map(|c| kgens[c][r]).collect()).collect();
    let ks = smith_normal_form(&kmat, g, n)?;
    let r = ks.rank();
    let k_diag: Vec<i128> = ks.diag[..r].to_vec();
    let mut sq = Subquotient {
        presentation: AbelianPresentation::trivial(),
        generators: vec![],
        ambient: ambient.clone(),
        n,
        k_u: ks.u.clone(),
        k_diag: k_diag.clone(),
        q_u: vec![],
        q_keep: vec![],
    };
    // Relations on kernel coordinates: orders of basis vectors and images of B.
    let mut rel_cols: Vec<Vec<i128>> = Vec::new();
    for (i, &d) in k_diag.iter().enumerate() {
        rel_cols.push((0..r).map(|t| if t == i { n / d } else { 0 }).collect());
    }
    let mut bgens: Vec<Vec<u64>> = (0..b.source.len())
        .map(|j| b.matrix.iter().map(|row| row[j]).collect())
        .collect();
    for (j, &m) in ambient.iter().enumerate() {
        bgens.push((0..k).map(|t| if t == j { m } else { 0 }).collect());
    }
    for bg in &bgens {
        let c = sq.kernel_coords(bg).ok_or(LatticeError::ImageNotInKernel)?;
        rel_cols.push(c);
    }
    let nc = rel_cols.len();
    let rel: Matrix = (0..r).map(|t| (0..nc).map(|c| rel_cols[c][t]).collect()).collect();
    let qs = smith_normal_form(&rel, nc, n)?;
    let mut keep = Vec::new();
    for i in 0..r {
        let h = if qs.diag[i] == 0 { n } else { gcd(qs.diag[i], n) };
        if h > 1 {
            keep.push((i, h));
        }
    }
    let generators: Vec<Vec<u64>> = keep
        .iter()
        .map(|&(i, _)| {
            let mut x = vec![0i128; k];
            for j in 0..r {
                let cj = qs.u_inv[j][i];
                for (row, xv) in x.iter_mut().enumerate() {
                    *xv = (*xv + cj * k_diag[j] % n * ks.u_inv[row][j]).rem_euclid(n);
                }
            }
            x.iter()
                .zip(&ambient)
                .map(|(&v, &m)| (v.rem_euclid(m as i128)) as u64)
                .collect()
        })
        .collect();
    sq.presentation = AbelianPresentation {
        factors: keep.iter().map(|&(_, h)| h as u64).collect(),
    };
    sq.generators = generators;
    sq.q_u = qs.u;
    sq.q_keep = keep;
    Ok(sq)
}

/// Invariant factors of a finite abelian group from the counts
/// `|{x : x^d = 1}|` for every divisor `d` of the exponent. `count(d)` must
/// return that number.
pub fn invariant_factors_from_torsion<F: Fn(u64) -> u64>(order: u64, count: F) -> Vec<u64> {
    // For each prime p: |H[p^j]| = p^{sum_i min(j, e_i)}.
    let mut factors_by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut rest = order;
    let mut p = 2u64;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            // s_j = log_p |H[p^j]|; number of cyclic factors with exponent >= j is s_j - s_{j-1}.
            let mut s = vec![0u32];
            for j in 1..=e {
                let c = count(p.pow(j));
                s.push(c.ilog(p));
            }
            let ge: Vec<u32> = (1..=e as usize).map(|j| s[j] - s[j - 1]).collect();
            let mut exps = Vec::new();
            for j in 1..=e as usize {
                let next = if j < e as usize { ge[j] } else { 0 };
                for _ in 0..(ge[j - 1] - next) {
                    exps.push(j as u32);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            factors_by_prime.push((p, exps));
        }
        p += 1;
    }
    let width = factors_by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width)
        .map(|i| {
            factors_by_prime
                .iter()
                .map(|(p, e)| e.get(i).map_or(1, |&x| p.pow(x)))
                .product()
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    fn product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let (n, m) = (a.len(), b.len());
        (0..n * m)
            .map(|x| (0..n * m).map(|y| a[x / m][y / m] * m + b[x % m][y % m]).collect())
            .collect()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&cyclic(6)).unwrap().presentation.invariant_factors(), &[6]);
        assert!(decompose(&cyclic(1)).unwrap().presentation.is_trivial());
        let klein = product(&cyclic(2), &cyclic(2));
        assert_eq!(decompose(&klein).unwrap().presentation.invariant_factors(), &[2, 2]);
        let z2z6 = product(&cyclic(2), &cyclic(6));
        assert_eq!(decompose(&z2z6).unwrap().presentation.invariant_factors(), &[2, 6]);
    }

    #[test]
    fn decompose_rejects() {
        let s3 = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ];
        assert_eq!(decompose(&s3).unwrap_err(), LatticeError::NotAbelian);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(decompose(&bad).unwrap_err(), LatticeError::NotAGroup);
    }

    #[test]
    fn decomposition_coordinates_are_a_homomorphism() {
        let t = product(&product(&cyclic(2), &cyclic(4)), &cyclic(3));
        let d = decompose(&t).unwrap();
        assert_eq!(d.presentation.invariant_factors(), &[2, 12]);
        let f = d.presentation.invariant_factors();
        for a in 0..t.len() {
            for b in 0..t.len() {
                let sum: Vec<u64> = (0..f.len()).map(|i| (d.coords[a][i] + d.coords[b][i]) % f[i]).collect();
                assert_eq!(d.coords[t[a][b]], sum);
            }
            assert_eq!(d.element(&d.coords[a]), a);
        }
        for (i, &g) in d.generators.iter().enumerate() {
            let mut e = vec![0; f.len()];
            e[i] = 1;
            assert_eq!(d.coords[g], e);
        }
    }

    #[test]
    fn subquotient_examples() {
        // zero map out of Z4, doubling into Z4: Z4 / 2Z4 = Z2.
        let z = IntHom::zero(vec![4], vec![]);
        let b = IntHom::from_columns(vec![4], vec![4], &[vec![2]]);
        assert_eq!(subquotient(&z, &b).unwrap().presentation.invariant_factors(), &[2]);
        let z = IntHom::zero(vec![2, 2], vec![]);
        let b = IntHom::zero(vec![], vec![2, 2]);
        assert_eq!(subquotient(&z, &b).unwrap().presentation.invariant_factors(), &[2, 2]);
        let z = IntHom::from_columns(vec![2, 2], vec![2, 2], &[vec![1, 0], vec![0, 1]]);
        assert!(subquotient(&z, &b).unwrap().presentation.is_trivial());
        let z = IntHom::from_columns(vec![4], vec![4], &[vec![1]]);
        let b = IntHom::from_columns(vec![4], vec![4], &[vec![1]]);
        assert_eq!(subquotient(&z, &b).unwrap_err(), LatticeError::ImageNotInKernel);
    }

    #[test]
    fn subquotient_class_map() {
        // ker of Z6 -> Z3 (x mod 3) is {0,3}; modulo nothing that is Z2.
        let z = IntHom::from_columns(vec![6], vec![3], &[vec![1]]);
        let b = IntHom::zero(vec![], vec![6]);
        let sq = subquotient(&z, &b).unwrap();
        assert_eq!(sq.presentation.invariant_factors(), &[2]);
        assert!(sq.in_kernel(&[3]));
        assert!(!sq.in_kernel(&[1]));
        assert_eq!(sq.class_of(&sq.generators[0]), Some(vec![1]));
        assert_eq!(sq.class_of(&[0]), Some(vec![0]));
    }

    #[test]
    fn torsion_counts() {
        // Z2 x Z12: |H[2]| = 4, |H[4]| = 8, |H[3]| = 3.
        let f = invariant_factors_from_torsion(24, |d| match d {
            2 => 4,
            4 => 8,
            8 => 8,
            3 => 3,
            _ => 1,
        });
        assert_eq!(f, vec![2, 12]);
    }

    /// Brute force `ker z / im b` by enumerating the ambient group.
    fn brute(z: &IntHom, b: &IntHom) -> Vec<u64> {
        let amb = &z.source;
        let total: u64 = amb.iter().product();
        let elems: Vec<Vec<u64>> = (0..total)
            .map(|mut i| {
                amb.iter()
                    .map(|&m| {
                        let c = i % m;
                        i /= m;
                        c
                    })
                    .collect()
            })
            .collect();
        let ker: Vec<&Vec<u64>> = elems.iter().filter(|x| z.apply(x).iter().all(|&v| v == 0)).collect();
        let src_total: u64 = b.source.iter().product();
        let img: std::collections::HashSet<Vec<u64>> = (0..src_total)
            .map(|mut i| {
                let x: Vec<u64> = b
                    .source
                    .iter()
                    .map(|&m| {
                        let c = i % m;
                        i /= m;
                        c
                    })
                    .collect();
                b.apply(&x)
            })
            .collect();
        let order = ker.len() as u64 / img.len() as u64;
        invariant_factors_from_torsion(order, |d| {
            let c = ker
                .iter()
                .filter(|x| {
                    let p: Vec<u64> = x.iter().zip(amb).map(|(&v, &m)| v * d % m).collect();
                    img.contains(&p)
                })
                .count() as u64;
            c / img.len() as u64
        })
    }

    proptest! {
        #[test]
        fn subquotient_matches_brute_force(
            amb in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(6)], 1..4),
            tgt in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4)], 0..3),
            src in proptest::collection::vec(prop_oneof![Just(2u64), Just(4), Just(12)], 0..3),
            raw in proptest::collection::vec(0u64..12, 30),
        ) {
            // Build z well-defined by scaling entries, then b inside ker z.
            let mut z = IntHom::zero(amb.clone(), tgt.clone());
            for i in 0..tgt.len() {
                for j in 0..amb.len() {
                    let step = tgt[i] / gcd(tgt[i] as i128, amb[j] as i128) as u64;
                    z.matrix[i][j] = raw[i * 4 + j] * step % tgt[i];
                }
            }
            let total: u64 = amb.iter().product();
            let kernel: Vec<Vec<u64>> = (0..total).map(|mut i| amb.iter().map(|&m| { let c = i % m; i /= m; c }).collect())
                .filter(|x: &Vec<u64>| z.apply(x).iter().all(|&v| v == 0)).collect();
            // Columns of b: kernel elements whose order divides the source modulus.
            let mut cols = Vec::new();
            for (j, &m) in src.iter().enumerate() {
                let pick = kernel.iter().cycle().skip(raw[20 + j] as usize).find(|x| x.iter().zip(&amb).all(|(&v, &a)| v * m % a == 0)).unwrap();
                cols.push(pick.clone());
            }
            let b = IntHom::from_columns(src.clone(), amb.clone(), &cols);
            let sq = subquotient(&z, &b).unwrap();
            prop_assert_eq!(sq.presentation.invariant_factors().to_vec(), brute(&z, &b));
            for (i, g) in sq.generators.iter().enumerate() {
                let mut e = vec![0; sq.generators.len()];
                e[i] = 1;
                prop_assert_eq!(sq.class_of(g), Some(e));
            }
        }
    }
}
