//! Finite groups given by Cayley tables.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group on `0..n`. The identity need not be element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::BadTable("empty".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::BadTable("rows must have length n with entries < n".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self { n, table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(t).expect("cyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.n;
        let t = (0..a.n * m)
            .map(|x| (0..a.n * m).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table(t).expect("direct product")
    }

    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// The symmetric group on three letters, elements ordered by permutation rank.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let t = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(t).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// All `n`-tuples in lexicographic order, decoded from an index.
    pub fn tuple(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        t
    }

    pub fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    pub fn tuple_count(&self, len: usize) -> usize {
        self.n.pow(len as u32)
    }

    /// Finds a bijection `self -> other` preserving multiplication.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        crate::semigroup::find_isomorphism(&self.table, &other.table)
    }
}
