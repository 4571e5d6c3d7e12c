//! Smith normal form over `Z` (modulus 0) or over `Z/N` (modulus `N > 0`).
//!
//! The returned transforms satisfy `U * A * V = D`, and `U_inv` is the
//! inverse of `U`. Over `Z/N` every nonzero diagonal entry is a divisor of
//! `N`. Each nonzero entry divides the next one, so the nonzero entries form
//! a divisibility chain, and the zero entries come after them. Pivots are
//! chosen by minimal norm, with ties broken by lowest row and then lowest
//! column. The norm is `|a|` over `Z` and `gcd(a, N)` over `Z/N`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnfError {
    #[error("integer overflow during Smith normal form")]
    Overflow,
}

pub type Matrix = Vec<Vec<i128>>;

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub modulus: i128,
    pub rows: usize,
    pub cols: usize,
    /// Diagonal of `D`, of length `min(rows, cols)`.
    pub diag: Vec<i128>,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|&&d| d != 0).count()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of a unit `u` modulo `n`.
pub fn mod_inverse(u: i128, n: i128) -> Option<i128> {
    let (g, s, _) = ext_gcd(u.rem_euclid(n), n);
    (g == 1).then(|| s.rem_euclid(n))
}

struct Engine {
    n: i128,
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
}

impl Engine {
    fn red(&self, x: i128) -> i128 {
        if self.n > 0 {
            x.rem_euclid(self.n)
        } else {
            x
        }
    }

    fn lin(&self, a: i128, x: i128, b: i128, y: i128) -> Result<i128, SnfError> {
        if self.n > 0 {
            let n = self.n;
            let p = (a.rem_euclid(n) * x.rem_euclid(n)).rem_euclid(n);
            let q = (b.rem_euclid(n) * y.rem_euclid(n)).rem_euclid(n);
            Ok((p + q).rem_euclid(n))
        } else {
            let p = a.checked_mul(x).ok_or(SnfError::Overflow)?;
            let q = b.checked_mul(y).ok_or(SnfError::Overflow)?;
            p.checked_add(q).ok_or(SnfError::Overflow)
        }
    }

    fn norm(&self, x: i128) -> i128 {
        if self.n > 0 {
            gcd(x, self.n)
        } else {
            x.abs()
        }
    }

    fn divides(&self, p: i128, x: i128) -> bool {
        x % p == 0
    }

    /// Rows i, j become (a r_i + b r_j, c r_i + d r_j); the block must be unimodular.
    fn row_op(&mut self, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<(), SnfError> {
        for m in [0usize, 1] {
            let mat = if m == 0 { &self.a } else { &self.u };
            let cols = mat[i].len();
            let mut ni = vec![0; cols];
            let mut nj = vec![0; cols];
            for k in 0..cols {
                let (x, y) = (mat[i][k], mat[j][k]);
                ni[k] = self.lin(a, x, b, y)?;
                nj[k] = self.lin(c, x, d, y)?;
            }
            let mat = if m == 0 { &mut self.a } else { &mut self.u };
            mat[i] = ni;
            mat[j] = nj;
        }
        // U_inv picks up the inverse block on columns: [[d, -b], [-c, a]].
        for r in 0..self.u_inv.len() {
            let (x, y) = (self.u_inv[r][i], self.u_inv[r][j]);
            let ni = self.lin(d, x, -c, y)?;
            let nj = self.lin(-b, x, a, y)?;
            self.u_inv[r][i] = ni;
            self.u_inv[r][j] = nj;
        }
        Ok(())
    }

    /// Columns i, j become (a c_i + b c_j, c c_i + d c_j).
    fn col_op(&mut self, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<(), SnfError> {
        for m in [0usize, 1] {
            let rows = if m == 0 { self.a.len() } else { self.v.len() };
            for r in 0..rows {
                let mat = if m == 0 { &self.a } else { &self.v };
                let (x, y) = (mat[r][i], mat[r][j]);
                let ni = self.lin(a, x, b, y)?;
                let nj = self.lin(c, x, d, y)?;
                let mat = if m == 0 { &mut self.a } else { &mut self.v };
                mat[r][i] = ni;
                mat[r][j] = nj;
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut() {
                row.swap(i, j);
            }
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// Multiplies row `i` by the unit `s` (with inverse `s_inv`).
    fn scale_row(&mut self, i: usize, s: i128, s_inv: i128) -> Result<(), SnfError> {
        for k in 0..self.a[i].len() {
            self.a[i][k] = self.lin(s, self.a[i][k], 0, 0)?;
        }
        for k in 0..self.u[i].len() {
            self.u[i][k] = self.lin(s, self.u[i][k], 0, 0)?;
        }
        for r in 0..self.u_inv.len() {
            self.u_inv[r][i] = self.lin(s_inv, self.u_inv[r][i], 0, 0)?;
        }
        Ok(())
    }

    /// Makes the pivot at (t, t) a divisor of `N` (or positive over `Z`).
    fn normalize_pivot(&mut self, t: usize) -> Result<(), SnfError> {
        let p = self.a[t][t];
        if self.n > 0 {
            let g = gcd(p, self.n);
            if p == g {
                return Ok(());
            }
            let (a1, n1) = (p / g, self.n / g);
            let mut u = a1;
            while gcd(u, self.n) != 1 {
                u += n1;
            }
            let u_inv = mod_inverse(u, self.n).expect("unit");
            self.scale_row(t, u_inv, u)
        } else if p < 0 {
            self.scale_row(t, -1, -1)
        } else {
            Ok(())
        }
    }

    fn run(&mut self) -> Result<Vec<i128>, SnfError> {
        let rows = self.a.len();
        let cols = if rows == 0 { 0 } else { self.a[0].len() };
        let steps = rows.min(cols);
        for t in 0..steps {
            let mut best: Option<(i128, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = self.a[i][j];
                    if x != 0 {
                        let nm = self.norm(x);
                        if best.is_none_or(|(b, _, _)| nm < b) {
                            best = Some((nm, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.normalize_pivot(t)?;
                for i in t + 1..rows {
                    let b = self.a[i][t];
                    if b == 0 {
                        continue;
                    }
                    let p = self.a[t][t];
                    if self.divides(p, b) {
                        self.row_op(t, i, 1, 0, -(b / p), 1)?;
                    } else {
                        let (g, s, u) = ext_gcd(p, b);
                        self.row_op(t, i, s, u, -(b / g), p / g)?;
                        self.normalize_pivot(t)?;
                    }
                }
                for j in t + 1..cols {
                    let b = self.a[t][j];
                    if b == 0 {
                        continue;
                    }
                    let p = self.a[t][t];
                    if self.divides(p, b) {
                        self.col_op(t, j, 1, 0, -(b / p), 1)?;
                    } else {
                        let (g, s, u) = ext_gcd(p, b);
                        self.col_op(t, j, s, u, -(b / g), p / g)?;
                        // Column pivot changes are not row-normalized; re-check.
                        self.normalize_pivot(t)?;
                    }
                }
                if (t + 1..rows).any(|i| self.a[i][t] != 0) {
                    continue;
                }
                let p = self.a[t][t];
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !self.divides(p, self.a[i][j]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => self.row_op(t, i, 1, 1, 0, 1)?,
                    None => break,
                }
            }
        }
        Ok((0..steps).map(|i| self.red(self.a[i][i])).collect())
    }
}

/// Computes the Smith normal form of `a` (rows x cols) over `Z` (modulus 0) or `Z/modulus`.
pub fn smith_normal_form(a: &Matrix, cols: usize, modulus: i128) -> Result<SmithForm, SnfError> {
    let rows = a.len();
    let n = modulus;
    let a: Matrix = a
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), cols);
            r.iter()
                .map(|&x| if n > 0 { x.rem_euclid(n) } else { x })
                .collect()
        })
        .collect();
    let mut e = Engine {
        n,
        a,
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
    };
    if n > 0 {
        for m in [&mut e.u, &mut e.u_inv, &mut e.v] {
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(n);
                }
            }
        }
    }
    let diag = e.run()?;
    Ok(SmithForm {
        modulus,
        rows,
        cols,
        diag,
        u: e.u,
        u_inv: e.u_inv,
        v: e.v,
    })
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize, modulus: i128) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = 0i128;
                    for k in 0..inner {
                        s += row[k] * b[k][j];
                        if modulus > 0 {
                            s = s.rem_euclid(modulus);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[i128], modulus: i128) -> Vec<i128> {
    a.iter()
        .map(|row| {
            let mut s = 0i128;
            for (k, &r) in row.iter().enumerate() {
                s += r * x[k];
                if modulus > 0 {
                    s = s.rem_euclid(modulus);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &Matrix, cols: usize, n: i128) -> SmithForm {
        let s = smith_normal_form(a, cols, n).unwrap();
        let rows = a.len();
        let d = mat_mul(&mat_mul(&s.u, a, rows, cols, n), &s.v, cols, cols, n);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j { s.diag[i] } else { 0 };
                let got = if n > 0 { d[i][j].rem_euclid(n) } else { d[i][j] };
                assert_eq!(got, want, "D mismatch at ({i},{j})");
            }
        }
        let id = mat_mul(&s.u, &s.u_inv, rows, rows, n);
        let want: Matrix = identity(rows)
            .into_iter()
            .map(|r| r.into_iter().map(|x| if n > 0 { x.rem_euclid(n) } else { x }).collect())
            .collect();
        assert_eq!(id, want);
        let nz: Vec<i128> = s.diag.iter().copied().filter(|&x| x != 0).collect();
        for w in nz.windows(2) {
            assert_eq!(w[1] % w[0], 0, "chain broken: {:?}", s.diag);
        }
        s
    }

    #[test]
    fn integer_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = check(&a, 3, 0);
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn modular_example() {
        // diag(2, 3) over Z/6 is Z/6 / ((2) + (3)) ... each entry reduces to its gcd with 6.
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = check(&a, 2, 6);
        assert_eq!(s.diag, vec![1, 0]);
    }

    #[test]
    fn modulus_one_is_all_zero() {
        let a = vec![vec![5, 7]];
        let s = check(&a, 2, 1);
        assert_eq!(s.diag, vec![0]);
    }

    proptest! {
        #[test]
        fn transforms_reconstruct(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i128..10, 25), n in prop_oneof![Just(0i128), 2i128..13]) {
            let a: Matrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            check(&a, cols, n);
        }
    }
}
