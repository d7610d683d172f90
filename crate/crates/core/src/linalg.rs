//! Dense exact linear algebra over the cyclotomic field `Q(ε)`.
//!
//! Used for representation matrices, commutant/intertwiner systems, and
//! Poisson matrix ranks. Matrices are small; plain Gaussian elimination over
//! the field is exact and fast enough. Generalized permutation (monomial)
//! matrices get a dedicated commutant algorithm that scales to tensor
//! products of clock/shift blocks without solving a dense system.

use std::fmt;

use crate::scalar::CycScalar;

/// Dense matrix over `Q(ε)`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMat {
    l: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycScalar>,
}

impl CycMat {
    pub fn zeros(l: u32, rows: usize, cols: usize) -> Self {
        CycMat {
            l,
            rows,
            cols,
            data: vec![CycScalar::zero(l); rows * cols],
        }
    }

    pub fn identity(l: u32, n: usize) -> Self {
        let mut m = Self::zeros(l, n, n);
        for i in 0..n {
            m[(i, i)] = CycScalar::one(l);
        }
        m
    }

    pub fn from_fn(l: u32, rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycScalar) -> Self {
        let mut m = Self::zeros(l, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.mul(c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.add(y);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.sub(y);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.l, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].add(&a.mul(b));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.l, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out[(i * other.rows + p, j * other.cols + q)] = a.mul(&other[(p, q)]);
                    }
                }
            }
        }
        out
    }

    /// Matrix power with negative exponents via the inverse.
    pub fn pow(&self, k: i64) -> Self {
        assert_eq!(self.rows, self.cols);
        if k < 0 {
            return self
                .inverse()
                .expect("negative power of a singular matrix")
                .pow(-k);
        }
        let mut acc = Self::identity(self.l, self.rows);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Rank by Gaussian elimination over `Q(ε)`.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let pivot = (rank..a.rows).find(|&i| !a[(i, c)].is_zero());
            let Some(p) = pivot else { continue };
            a.swap_rows(rank, p);
            let inv = a[(rank, c)].inv();
            for i in 0..a.rows {
                if i == rank || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].mul(&inv);
                for j in c..a.cols {
                    let v = a[(i, j)].sub(&f.mul(&a[(rank, j)]));
                    a[(i, j)] = v;
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel `{v : A·v = 0}`, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<CycScalar>> {
        let l = self.l;
        let mut a = self.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let pivot = (r..a.rows).find(|&i| !a[(i, c)].is_zero());
            let Some(p) = pivot else { continue };
            a.swap_rows(r, p);
            let inv = a[(r, c)].inv();
            for j in c..a.cols {
                let v = a[(r, j)].mul(&inv);
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = a[(i, j)].sub(&f.mul(&a[(r, j)]));
                    a[(i, j)] = v;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..a.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![CycScalar::zero(l); a.cols];
            v[free] = CycScalar::one(l);
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a[(row, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.l, n);
        for c in 0..n {
            let pivot = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(c, pivot);
            inv.swap_rows(c, pivot);
            let f = a[(c, c)].inv();
            for j in 0..n {
                let v = a[(c, j)].mul(&f);
                a[(c, j)] = v;
                let v = inv[(c, j)].mul(&f);
                inv[(c, j)] = v;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let v = a[(i, j)].sub(&f.mul(&a[(c, j)]));
                    a[(i, j)] = v;
                    let v = inv[(i, j)].sub(&f.mul(&inv[(c, j)]));
                    inv[(i, j)] = v;
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Decompose as a generalized permutation matrix: `A·e_j = scale[j]·e_{perm[j]}`
    /// with every `scale[j]` nonzero and `perm` a permutation. Returns `None`
    /// for anything else (including singular monomial patterns).
    pub fn as_monomial(&self) -> Option<MonomialMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut scale = Vec::with_capacity(n);
        let mut row_used = vec![false; n];
        for j in 0..n {
            let mut hit = None;
            for i in 0..n {
                if !self[(i, j)].is_zero() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(i);
                }
            }
            let i = hit?;
            if row_used[i] {
                return None;
            }
            row_used[i] = true;
            perm[j] = i;
            scale.push(self[(i, j)].clone());
        }
        Some(MonomialMat { perm, scale })
    }
}

impl std::ops::Index<(usize, usize)> for CycMat {
    type Output = CycScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CycScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CycMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// An invertible generalized permutation matrix: column `j` maps to
/// `scale[j]·e_{perm[j]}`.
#[derive(Debug, Clone)]
pub struct MonomialMat {
    pub perm: Vec<usize>,
    pub scale: Vec<CycScalar>,
}

/// Dimension over `Q(ε)` of the joint commutant `{X : X·A = A·X for all A}`
/// of a family of invertible monomial matrices.
///
/// For monomial `A` the commutant condition reads
/// `X[σ(i), σ(j)] = d_i·d_j^{−1}·X[i, j]`, so entries are constant up to
/// scalars along orbits of index pairs; an orbit contributes one dimension
/// exactly when every loop has trivial holonomy. Weighted union-find.
pub fn monomial_commutant_dimension(n: usize, gens: &[MonomialMat], l: u32) -> usize {
    let pairs = n * n;
    let mut uf = WeightedUf::new(pairs, l);
    for g in gens {
        for i in 0..n {
            for j in 0..n {
                let p = i * n + j;
                let q = g.perm[i] * n + g.perm[j];
                let m = g.scale[i].mul(&g.scale[j].inv());
                uf.union(p, q, &m);
            }
        }
    }
    uf.live_roots()
}

/// Weighted union-find over `Q(ε)^*`: tracks `value[p] = ratio[p] · value[root]`
/// and kills classes whose loops have nontrivial holonomy.
struct WeightedUf {
    parent: Vec<usize>,
    ratio: Vec<CycScalar>,
    dead: Vec<bool>,
}

impl WeightedUf {
    fn new(n: usize, l: u32) -> Self {
        WeightedUf {
            parent: (0..n).collect(),
            ratio: vec![CycScalar::one(l); n],
            dead: vec![false; n],
        }
    }

    fn find(&mut self, p: usize) -> (usize, CycScalar) {
        if self.parent[p] == p {
            return (p, self.ratio[p].clone());
        }
        let (root, r) = self.find(self.parent[p]);
        self.ratio[p] = self.ratio[p].mul(&r);
        self.parent[p] = root;
        (root, self.ratio[p].clone())
    }

    /// Impose `value[q] = m · value[p]`.
    fn union(&mut self, p: usize, q: usize, m: &CycScalar) {
        let (rp, wp) = self.find(p);
        let (rq, wq) = self.find(q);
        if rp == rq {
            // Loop: holonomy must be trivial, otherwise the class is zero.
            if wq != m.mul(&wp) {
                self.dead[rp] = true;
            }
            return;
        }
        // value[rq] = value[q]/wq = m·wp/wq · value[rp].
        self.parent[rq] = rp;
        self.ratio[rq] = m.mul(&wp).mul(&wq.inv());
        if self.dead[rq] {
            self.dead[rp] = true;
        }
    }

    fn live_roots(&mut self) -> usize {
        let n = self.parent.len();
        let mut count = 0;
        for p in 0..n {
            let (r, _) = self.find(p);
            if r == p && !self.dead[r] {
                count += 1;
            }
        }
        count
    }
}

/// Dimension of the joint commutant by the dense route: stack `X·A − A·X = 0`
/// for every generator and take the nullspace dimension.
pub fn dense_commutant_dimension(n: usize, gens: &[CycMat], l: u32) -> usize {
    intertwiner_nullspace(n, gens, gens, l).len()
}

/// Basis of `{X : X·A_k = B_k·X}` as flattened row-major matrices; with
/// `A = B` this is the commutant.
pub fn intertwiner_nullspace(
    n: usize,
    a_gens: &[CycMat],
    b_gens: &[CycMat],
    l: u32,
) -> Vec<Vec<CycScalar>> {
    assert_eq!(a_gens.len(), b_gens.len());
    let unknowns = n * n;
    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for (a, b) in a_gens.iter().zip(b_gens) {
        // (X·A − B·X)[i][j] = Σ_k X[i][k]·A[k][j] − B[i][k]·X[k][j].
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![CycScalar::zero(l); unknowns];
                for k in 0..n {
                    let c = &a[(k, j)];
                    if !c.is_zero() {
                        let v = row[i * n + k].add(c);
                        row[i * n + k] = v;
                    }
                    let c = &b[(i, k)];
                    if !c.is_zero() {
                        let v = row[k * n + j].sub(c);
                        row[k * n + j] = v;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        // No constraints: everything commutes.
        let mut basis = Vec::new();
        for p in 0..unknowns {
            let mut v = vec![CycScalar::zero(l); unknowns];
            v[p] = CycScalar::one(l);
            basis.push(v);
        }
        return basis;
    }
    let nrows = rows.len();
    let mut system = CycMat::zeros(l, nrows, unknowns);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            system[(i, j)] = c;
        }
    }
    system.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn cyc(l: u32, n: i64) -> CycScalar {
        CycScalar::from_i64(l, n)
    }

    #[test]
    fn rank_and_nullspace() {
        let l = 5;
        let m = CycMat::from_fn(l, 3, 3, |i, j| cyc(l, ((i + j) % 3) as i64));
        let r = m.rank();
        let ns = m.nullspace();
        assert_eq!(r + ns.len(), 3);
        for v in &ns {
            for i in 0..3 {
                let mut acc = CycScalar::zero(l);
                for j in 0..3 {
                    acc = acc.add(&m[(i, j)].mul(&v[j]));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let l = 3;
        let mut m = CycMat::identity(l, 3);
        m[(0, 1)] = CycScalar::eps(l);
        m[(1, 2)] = cyc(l, 2);
        m[(2, 0)] = CycScalar::eps_pow(l, 2).scale(&rat(3));
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), CycMat::identity(l, 3));
    }

    #[test]
    fn monomial_commutant_of_clock_and_shift_is_scalars() {
        // Clock diag(1, eps, eps^2) and cyclic shift generate M_3, so the
        // commutant is one-dimensional.
        let l = 3;
        let clock = MonomialMat {
            perm: vec![0, 1, 2],
            scale: (0..3).map(|k| CycScalar::eps_pow(l, k)).collect(),
        };
        let shift = MonomialMat {
            perm: vec![1, 2, 0],
            scale: vec![CycScalar::one(l); 3],
        };
        assert_eq!(monomial_commutant_dimension(3, &[clock, shift], l), 1);
    }

    #[test]
    fn monomial_commutant_matches_dense() {
        let l = 4;
        // Clock alone: commutant is all diagonal matrices (dimension 4).
        let clock_m = MonomialMat {
            perm: vec![0, 1, 2, 3],
            scale: (0..4).map(|k| CycScalar::eps_pow(l, k)).collect(),
        };
        let clock_d = CycMat::from_fn(l, 4, 4, |i, j| {
            if i == j {
                CycScalar::eps_pow(l, i as i64)
            } else {
                CycScalar::zero(l)
            }
        });
        assert_eq!(monomial_commutant_dimension(4, &[clock_m], l), 4);
        assert_eq!(dense_commutant_dimension(4, &[clock_d], l), 4);
    }
}
