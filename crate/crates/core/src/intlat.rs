//! Integer matrix and lattice algorithms: Smith normal form, alternating
//! normal form of skew-symmetric matrices, Hermite form and kernel bases,
//! congruence solving with lifting, and minor gcd tests for admissibility.
//!
//! Everything here is exact over `Z`. Matrices are small (desk scale), so
//! the implementations favor transparency over asymptotics; determinants and
//! minors accumulate in `i128`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntLatError {
    #[error("matrix dimension {0} exceeds the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
}

/// No lift of the residue solution exists over `Z`; demonstrates failure of
/// the coprimality hypothesis on the elementary divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotLiftable;

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if self[(i, i)] != 0 {
                return false;
            }
            for j in 0..i {
                if self[(i, j)] != -self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let swap = (k + 1..n).find(|&i| a[i][k] != 0);
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular and `d` diagonal with a divisibility chain.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).take_while(|&i| self.d[(i, i)] != 0).count()
    }

    /// The nonzero diagonal entries (elementary divisors).
    pub fn elementary_divisors(&self) -> Vec<i64> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d[(i, i)])
            .filter(|&x| x != 0)
            .collect()
    }

    /// Exact reconstruction identity `u * a * v = d`.
    pub fn verify(&self, a: &IntMat) -> bool {
        self.u.is_unimodular() && self.v.is_unimodular() && self.u.mul(a).mul(&self.v) == self.d
    }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        loop {
            // Pivot: minimal |entry| in the trailing submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d[(i, j)] != 0
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(d, u, v);
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);
            if d[(t, t)] < 0 {
                negate_row(&mut d, &mut u, t);
            }
            let p = d[(t, t)];

            // Reduce column t and row t modulo the pivot.
            let mut clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)] != 0 {
                    let f = d[(i, t)].div_euclid(p);
                    add_row(&mut d, &mut u, i, t, -f);
                    if d[(i, t)] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)] != 0 {
                    let f = d[(t, j)].div_euclid(p);
                    add_col(&mut d, &mut v, j, t, -f);
                    if d[(t, j)] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // a smaller entry appeared; repick the pivot
            }

            // Pivot must divide the trailing block for the divisibility chain.
            let mut offender = None;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if d[(i, j)] % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    add_row(&mut d, &mut u, t, i, 1);
                    continue;
                }
                None => break,
            }
        }
    }
    finish_snf(d, u, v)
}

fn finish_snf(d: IntMat, u: IntMat, v: IntMat) -> Snf {
    debug_assert!({
        let n = d.rows.min(d.cols);
        (1..n).all(|i| d[(i - 1, i - 1)] == 0 || d[(i, i)] % d[(i - 1, i - 1)] == 0)
    });
    Snf { u, d, v }
}

fn swap_rows(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let t = d[(a, j)];
        d[(a, j)] = d[(b, j)];
        d[(b, j)] = t;
    }
    for j in 0..u.cols {
        let t = u[(a, j)];
        u[(a, j)] = u[(b, j)];
        u[(b, j)] = t;
    }
}

fn swap_cols(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let t = d[(i, a)];
        d[(i, a)] = d[(i, b)];
        d[(i, b)] = t;
    }
    for i in 0..v.rows {
        let t = v[(i, a)];
        v[(i, a)] = v[(i, b)];
        v[(i, b)] = t;
    }
}

fn negate_row(d: &mut IntMat, u: &mut IntMat, i: usize) {
    for j in 0..d.cols {
        d[(i, j)] = -d[(i, j)];
    }
    for j in 0..u.cols {
        u[(i, j)] = -u[(i, j)];
    }
}

/// `row_a += f * row_b` on `d`, mirrored on `u`.
fn add_row(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize, f: i64) {
    for j in 0..d.cols {
        d[(a, j)] += f * d[(b, j)];
    }
    for j in 0..u.cols {
        u[(a, j)] += f * u[(b, j)];
    }
}

/// `col_a += f * col_b` on `d`, mirrored on `v`.
fn add_col(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize, f: i64) {
    for i in 0..d.rows {
        d[(i, a)] += f * d[(i, b)];
    }
    for i in 0..v.rows {
        v[(i, a)] += f * v[(i, b)];
    }
}

// ---------------------------------------------------------------------------
// Kernel and Hermite form
// ---------------------------------------------------------------------------

/// Basis of the integer kernel `{n : A·n = 0}`, as column vectors.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols).map(|j| snf.v.col(j)).collect()
}

/// Row-style Hermite normal form of the lattice spanned by the given rows:
/// the canonical upper-echelon basis. Zero rows are dropped.
pub fn hermite_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if a[i][c] != 0 && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            a.swap(r, p);
            let pv = a[r][c];
            let mut again = false;
            for i in r + 1..a.len() {
                if a[i][c] != 0 {
                    let f = a[i][c].div_euclid(pv);
                    for j in 0..cols {
                        a[i][j] -= f * a[r][j];
                    }
                    if a[i][c] != 0 {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                for j in 0..cols {
                    a[r][j] = -a[r][j];
                }
            }
            let pv = a[r][c];
            for i in 0..r {
                let f = a[i][c].div_euclid(pv);
                if f != 0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[r][j];
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

// ---------------------------------------------------------------------------
// Alternating normal form
// ---------------------------------------------------------------------------

/// Normal form of an integer skew-symmetric matrix under unimodular
/// congruence: `Wᵀ S W` is block-diagonal with `r` blocks
/// `[[0, d_i], [−d_i, 0]]`, `d_1 | d_2 | … | d_r`, followed by a `t×t` zero
/// block, `2r + t = M`.
#[derive(Debug, Clone)]
pub struct AlternatingForm {
    pub w: IntMat,
    pub d: Vec<i64>,
    pub t: usize,
}

impl AlternatingForm {
    pub fn rank(&self) -> usize {
        2 * self.d.len()
    }

    /// The block form `Wᵀ S W` this normal form asserts.
    pub fn block_matrix(&self, m: usize) -> IntMat {
        let mut b = IntMat::zeros(m, m);
        for (k, &dk) in self.d.iter().enumerate() {
            b[(2 * k, 2 * k + 1)] = dk;
            b[(2 * k + 1, 2 * k)] = -dk;
        }
        b
    }

    /// Exact reconstruction: `det W = ±1` and `Wᵀ S W` in block form with the
    /// divisibility chain.
    pub fn verify(&self, s: &IntMat) -> bool {
        let m = s.rows;
        self.w.is_unimodular()
            && 2 * self.d.len() + self.t == m
            && self.d.iter().all(|&x| x > 0)
            && self.d.windows(2).all(|w| w[1] % w[0] == 0)
            && self.w.transpose().mul(s).mul(&self.w) == self.block_matrix(m)
    }
}

/// Alternating normal form by skew-symmetric elimination over `Z` with
/// hyperbolic pivoting; the divisibility chain is enforced during pivoting.
pub fn alternating_normal_form(s: &IntMat) -> AlternatingForm {
    assert!(s.is_skew_symmetric(), "input must be skew-symmetric");
    let m = s.rows;
    let mut a = s.clone();
    let mut w = IntMat::identity(m);

    // Congruence primitives: every column operation on `a` is paired with the
    // same row operation, and recorded in `w` (column side only).
    let swap = |a: &mut IntMat, w: &mut IntMat, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..m {
            let t = a[(r, i)];
            a[(r, i)] = a[(r, j)];
            a[(r, j)] = t;
        }
        for c in 0..m {
            let t = a[(i, c)];
            a[(i, c)] = a[(j, c)];
            a[(j, c)] = t;
        }
        for r in 0..m {
            let t = w[(r, i)];
            w[(r, i)] = w[(r, j)];
            w[(r, j)] = t;
        }
    };
    let addmul = |a: &mut IntMat, w: &mut IntMat, dst: usize, src: usize, f: i64| {
        if f == 0 {
            return;
        }
        for r in 0..m {
            a[(r, dst)] += f * a[(r, src)];
        }
        for c in 0..m {
            a[(dst, c)] += f * a[(src, c)];
        }
        for r in 0..m {
            w[(r, dst)] += f * w[(r, src)];
        }
    };
    let negate = |a: &mut IntMat, w: &mut IntMat, i: usize| {
        for r in 0..m {
            a[(r, i)] = -a[(r, i)];
        }
        for c in 0..m {
            a[(i, c)] = -a[(i, c)];
        }
        for r in 0..m {
            w[(r, i)] = -w[(r, i)];
        }
    };

    let mut d = Vec::new();
    let mut t0 = 0;
    'outer: while t0 + 1 < m {
        'pivot: loop {
            // Minimal nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t0..m {
                for j in i + 1..m {
                    if a[(i, j)] != 0
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            swap(&mut a, &mut w, t0, pi);
            swap(&mut a, &mut w, t0 + 1, pj);
            if a[(t0, t0 + 1)] < 0 {
                negate(&mut a, &mut w, t0);
            }
            let p = a[(t0, t0 + 1)];
            debug_assert!(p > 0);

            // Clear rows t0 and t0+1 beyond the pivot pair.
            let mut exact = true;
            for k in t0 + 2..m {
                let top = a[(t0, k)];
                if top != 0 {
                    // col_k -= (top div p) * col_{t0+1} kills a[t0][k] mod p.
                    addmul(&mut a, &mut w, k, t0 + 1, -top.div_euclid(p));
                    if a[(t0, k)] != 0 {
                        exact = false;
                    }
                }
                let sec = a[(t0 + 1, k)];
                if sec != 0 {
                    // a[t0+1][t0] = -p, so col_k += (sec div p) * col_{t0}.
                    addmul(&mut a, &mut w, k, t0, sec.div_euclid(p));
                    if a[(t0 + 1, k)] != 0 {
                        exact = false;
                    }
                }
            }
            if !exact {
                continue 'pivot; // strictly smaller entries exist now
            }

            // Divisibility: the pivot must divide the trailing block.
            for i in t0 + 2..m {
                for j in i + 1..m {
                    if a[(i, j)] % p != 0 {
                        // Merge row/col i into the pivot pair and re-reduce.
                        addmul(&mut a, &mut w, t0 + 1, i, 1);
                        continue 'pivot;
                    }
                }
            }
            d.push(p);
            t0 += 2;
            break 'pivot;
        }
    }
    let t = m - 2 * d.len();
    let form = AlternatingForm { w, d, t };
    debug_assert!(form.verify(s));
    form
}

// ---------------------------------------------------------------------------
// Congruence lifting and minor tests
// ---------------------------------------------------------------------------

/// Given `S·n ≡ 0 (mod l)`, find `m ≡ n (mod l)` with `S·m = 0` over `Z`.
///
/// A lift always exists when `l` is coprime to the elementary divisors of
/// `S`; when it does not, [`NotLiftable`] is returned as a witness.
pub fn solve_and_lift_congruence(
    s: &IntMat,
    l: u32,
    n: &[i64],
) -> Result<Vec<i64>, NotLiftable> {
    assert_eq!(s.cols, n.len(), "residue vector length mismatch");
    let l = l as i64;
    let sn = s.mul_vec(n);
    assert!(
        sn.iter().all(|x| x % l == 0),
        "precondition violated: S*n != 0 mod l"
    );
    // m = n + l*k needs S*k = -(S*n)/l, an integer linear system.
    let c: Vec<i64> = sn.iter().map(|x| -x / l).collect();
    let snf = smith_normal_form(s);
    let rank = snf.rank();
    let uc = snf.u.mul_vec(&c);
    let mut wvec = vec![0i64; s.cols];
    for (i, &uci) in uc.iter().enumerate() {
        if i < rank {
            let di = snf.d[(i, i)];
            if uci % di != 0 {
                return Err(NotLiftable);
            }
            wvec[i] = uci / di;
        } else if uci != 0 {
            return Err(NotLiftable);
        }
    }
    let k = snf.v.mul_vec(&wvec);
    Ok(n.iter().zip(&k).map(|(a, b)| a + l * b).collect())
}

/// Enumeration bound for [`minor_coprimality`].
pub const MINOR_ENUM_BOUND: usize = 12;

/// Outcome of the minor gcd test: either every nonzero minor is coprime to
/// `l`, or a witness minor with `gcd(l, minor) > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorVerdict {
    Coprime,
    Witness { size: usize, minor: i128 },
}

impl MinorVerdict {
    pub fn is_coprime(&self) -> bool {
        matches!(self, MinorVerdict::Coprime)
    }
}

/// True iff `gcd(l, μ) = 1` for every nonzero minor `μ` of `s`, all sizes.
/// On failure returns the witness minor.
pub fn minor_coprimality(s: &IntMat, l: u32) -> Result<MinorVerdict, IntLatError> {
    let m = s.rows.max(s.cols);
    if m > MINOR_ENUM_BOUND {
        return Err(IntLatError::TooLarge(m, MINOR_ENUM_BOUND));
    }
    let l = l as i128;
    for k in 1..=s.rows.min(s.cols) {
        for rows in combinations(s.rows, k) {
            for cols in combinations(s.cols, k) {
                let minor = s.submatrix(&rows, &cols).det();
                if minor != 0 && gcd_i128(l, minor.abs()) != 1 {
                    return Ok(MinorVerdict::Witness { size: k, minor });
                }
            }
        }
    }
    Ok(MinorVerdict::Coprime)
}

/// The suffix submatrix on columns `j..M` (all rows), as used by the
/// per-suffix elementary-divisor lifting test.
pub fn suffix_submatrix(s: &IntMat, j: usize) -> IntMat {
    let rows: Vec<usize> = (0..s.rows).collect();
    let cols: Vec<usize> = (j..s.cols).collect();
    s.submatrix(&rows, &cols)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Rightmost index that can still be incremented.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn snf_identity() {
        let a = IntMat::identity(3);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(snf.d, IntMat::identity(3));
    }

    #[test]
    fn snf_already_diagonal() {
        let a = mat(&[&[2, 0], &[0, 4]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(snf.elementary_divisors(), vec![2, 4]);
    }

    #[test]
    fn snf_symplectic_block() {
        let a = mat(&[&[0, 1], &[-1, 0]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        assert_eq!(snf.elementary_divisors(), vec![1, 1]);
    }

    #[test]
    fn snf_rectangular() {
        let a = mat(&[&[2, 4, 6], &[4, 8, 10]]);
        let snf = smith_normal_form(&a);
        assert!(snf.verify(&a));
        let divs = snf.elementary_divisors();
        assert_eq!(divs.len(), 2);
        assert!(divs[1] % divs[0] == 0);
    }

    #[test]
    fn snf_divisors_invariant_under_unimodular_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_mat(&mut rng, 3, 3, 4);
            let base = smith_normal_form(&a).elementary_divisors();
            for _ in 0..10 {
                let u = random_unimodular(&mut rng, 3);
                let v = random_unimodular(&mut rng, 3);
                let b = u.mul(&a).mul(&v);
                assert_eq!(smith_normal_form(&b).elementary_divisors(), base);
            }
        }
    }

    fn random_mat(rng: &mut ChaCha8Rng, r: usize, c: usize, bound: i64) -> IntMat {
        let mut m = IntMat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m[(i, j)] = rng.gen_range(-bound..=bound);
            }
        }
        m
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
        let mut m = IntMat::identity(n);
        let mut helper = IntMat::identity(n);
        for _ in 0..12 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                let f = rng.gen_range(-2..=2);
                add_row(&mut m, &mut helper, i, j, f);
            }
        }
        assert!(m.is_unimodular());
        m
    }

    #[test]
    fn kernel_examples() {
        // Nonsingular matrix: empty kernel.
        assert!(kernel_basis(&mat(&[&[0, 1], &[-1, 0]])).is_empty());
        // Zero matrix: the whole of Z^2.
        let k = kernel_basis(&IntMat::zeros(2, 2));
        assert_eq!(hermite_basis(&k), vec![vec![1, 0], vec![0, 1]]);
        // Third coordinate free.
        let k = kernel_basis(&mat(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert_eq!(hermite_basis(&k), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn alternating_form_symplectic() {
        let s = mat(&[&[0, 1], &[-1, 0]]);
        let f = alternating_normal_form(&s);
        assert!(f.verify(&s));
        assert_eq!(f.d, vec![1]);
        assert_eq!(f.t, 0);
    }

    #[test]
    fn alternating_form_zero() {
        let s = IntMat::zeros(3, 3);
        let f = alternating_normal_form(&s);
        assert!(f.verify(&s));
        assert!(f.d.is_empty());
        assert_eq!(f.t, 3);
    }

    #[test]
    fn alternating_form_mixed_four_by_four() {
        let s = mat(&[
            &[0, 2, 0, 1],
            &[-2, 0, 0, 0],
            &[0, 0, 0, 3],
            &[-1, 0, -3, 0],
        ]);
        let f = alternating_normal_form(&s);
        assert!(f.verify(&s));
        assert_eq!(f.rank(), 4);
        // The d_i agree with the SNF elementary divisors, which pair up.
        let divs = smith_normal_form(&s).elementary_divisors();
        let mut paired = Vec::new();
        for c in divs.chunks(2) {
            assert_eq!(c[0], c[1]);
            paired.push(c[0]);
        }
        assert_eq!(f.d, paired);
    }

    #[test]
    fn alternating_form_random_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for m in [2usize, 3, 4, 5, 6] {
            for _ in 0..20 {
                let mut s = IntMat::zeros(m, m);
                for i in 0..m {
                    for j in i + 1..m {
                        let x = rng.gen_range(-3..=3);
                        s[(i, j)] = x;
                        s[(j, i)] = -x;
                    }
                }
                let f = alternating_normal_form(&s);
                assert!(f.verify(&s), "failed on {:?}", s);
                assert_eq!(f.rank(), smith_normal_form(&s).rank());
            }
        }
    }

    #[test]
    fn lift_examples() {
        // Zero residue lifts to zero.
        let s = mat(&[&[0, 1], &[-1, 0]]);
        assert_eq!(solve_and_lift_congruence(&s, 5, &[0, 0]), Ok(vec![0, 0]));
        // Kernel over Z is 0 but (1,0) is a mod-2 solution: not liftable.
        let s2 = mat(&[&[0, 2], &[-2, 0]]);
        assert_eq!(solve_and_lift_congruence(&s2, 2, &[1, 0]), Err(NotLiftable));
        // S = 0: everything is a solution.
        let z = IntMat::zeros(2, 2);
        assert_eq!(solve_and_lift_congruence(&z, 3, &[2, 1]), Ok(vec![2, 1]));
    }

    #[test]
    fn lift_brute_force_within_bounds() {
        // For l coprime to all elementary divisors of every suffix of S,
        // every residue solution lifts; checked by enumeration.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..15 {
            let m = rng.gen_range(1..=3usize);
            let mut s = IntMat::zeros(m, m);
            for i in 0..m {
                for j in i + 1..m {
                    let x = rng.gen_range(-3i64..=3);
                    s[(i, j)] = x;
                    s[(j, i)] = -x;
                }
            }
            for l in 2..=7u32 {
                let divisors = smith_normal_form(&s).elementary_divisors();
                if divisors.iter().any(|d| gcd_i128(l as i128, *d as i128) != 1) {
                    continue;
                }
                let li = l as i64;
                let mut counts = vec![0i64; m];
                loop {
                    let sn = s.mul_vec(&counts);
                    if sn.iter().all(|x| x % li == 0) {
                        let lifted = solve_and_lift_congruence(&s, l, &counts)
                            .expect("lift must exist when l is coprime to divisors");
                        assert!(s.mul_vec(&lifted).iter().all(|&x| x == 0));
                        for (a, b) in lifted.iter().zip(&counts) {
                            assert_eq!(a.rem_euclid(li), b.rem_euclid(li));
                        }
                    }
                    // Odometer over [0, l)^m.
                    let mut i = 0;
                    loop {
                        if i == m {
                            break;
                        }
                        counts[i] += 1;
                        if counts[i] < li {
                            break;
                        }
                        counts[i] = 0;
                        i += 1;
                    }
                    if i == m {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn minor_coprimality_examples() {
        let s = mat(&[&[0, 1], &[-1, 0]]);
        assert!(minor_coprimality(&s, 6).unwrap().is_coprime());
        let s2 = mat(&[&[0, 2], &[-2, 0]]);
        match minor_coprimality(&s2, 2).unwrap() {
            MinorVerdict::Witness { minor, .. } => assert_eq!(minor.abs() % 2, 0),
            MinorVerdict::Coprime => panic!("expected witness"),
        }
        // Nonzero minors of [[0,6],[-6,0]] are {±6, 36}; all coprime to 5.
        let s3 = mat(&[&[0, 6], &[-6, 0]]);
        assert!(minor_coprimality(&s3, 5).unwrap().is_coprime());
        assert!(!minor_coprimality(&s3, 3).unwrap().is_coprime());
    }

    #[test]
    fn minor_bound_enforced() {
        let s = IntMat::zeros(13, 13);
        assert!(matches!(
            minor_coprimality(&s, 2),
            Err(IntLatError::TooLarge(13, _))
        ));
    }

    #[test]
    fn suffix_submatrices_inherit_coprimality() {
        // Minors of a suffix submatrix are minors of the full matrix, so the
        // matrix-level gcd test implies the per-suffix elementary-divisor
        // hypothesis; lifting then succeeds suffix by suffix.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let m = rng.gen_range(2..=4usize);
            let mut s = IntMat::zeros(m, m);
            for i in 0..m {
                for j in i + 1..m {
                    let v = rng.gen_range(-3i64..=3);
                    s[(i, j)] = v;
                    s[(j, i)] = -v;
                }
            }
            for l in 2..=7u32 {
                if !minor_coprimality(&s, l).unwrap().is_coprime() {
                    continue;
                }
                for j in 0..m {
                    let suffix = suffix_submatrix(&s, j);
                    assert_eq!(suffix.cols, m - j);
                    let divisors = smith_normal_form(&suffix).elementary_divisors();
                    assert!(divisors
                        .iter()
                        .all(|d| gcd_i128(l as i128, *d as i128) == 1));
                    // Every residue solution of the suffix system lifts.
                    let li = l as i64;
                    let cols = m - j;
                    let mut counts = vec![0i64; cols];
                    'residues: loop {
                        let sn = suffix.mul_vec(&counts);
                        if sn.iter().all(|x| x % li == 0) {
                            let lifted = solve_and_lift_congruence(&suffix, l, &counts)
                                .expect("suffix lift must exist");
                            assert!(suffix.mul_vec(&lifted).iter().all(|&x| x == 0));
                        }
                        let mut idx = 0;
                        loop {
                            if idx == cols {
                                break 'residues;
                            }
                            counts[idx] += 1;
                            if counts[idx] < li {
                                break;
                            }
                            counts[idx] = 0;
                            idx += 1;
                        }
                    }
                }
            }
        }
    }
}
