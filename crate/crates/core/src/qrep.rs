//! Construction and verification of irreducible representations of quantum
//! tori at `ε` via clock/shift matrices, commutant-based irreducibility, and
//! the `l^{rank/2}` dimension formula.
//!
//! A central character is given by `l`-th roots `ν_i` for the hyperbolic
//! generators (so `χ(y_i^l) = ν_i^l`) and central values `α_j` for the
//! generic-center generators. Working with the roots directly keeps every
//! scalar inside `Q(ε)` instead of adjoining radicals.

use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::intlat::{smith_normal_form, IntMat};
use crate::linalg::{
    dense_commutant_dimension, intertwiner_nullspace, monomial_commutant_dimension, CycMat,
};
use crate::orealg::OreAlgebra;
use crate::qadjoint::SpecElement;
use crate::qtorus::{torus_decompose, TorusAlgebra, TorusDecomposition};
use crate::scalar::CycScalar;

/// Hard cap on commutant systems: `N²` unknowns.
pub const COMMUTANT_UNKNOWN_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("commutant system too large: {0} unknowns exceed {COMMUTANT_UNKNOWN_BOUND}")]
    TooLarge(usize),
}

/// A central character on a decomposed torus: root assignments `ν_k` for the
/// `2r` hyperbolic generators and central values `α_j` for the `t`
/// generic-center generators. All values must be invertible (nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    pub nu: Vec<CycScalar>,
    pub alpha: Vec<CycScalar>,
}

impl CentralCharacter {
    pub fn new(nu: Vec<CycScalar>, alpha: Vec<CycScalar>) -> Result<Self, RepError> {
        if nu.iter().chain(alpha.iter()).any(|v| v.is_zero()) {
            return Err(RepError::BadParameters(
                "character values must be nonzero".into(),
            ));
        }
        Ok(CentralCharacter { nu, alpha })
    }

    pub fn all_ones(l: u32, two_r: usize, t: usize) -> Self {
        CentralCharacter {
            nu: vec![CycScalar::one(l); two_r],
            alpha: vec![CycScalar::one(l); t],
        }
    }
}

/// The algebra a representation belongs to.
#[derive(Debug, Clone)]
pub enum RepAlgebra {
    Torus(Arc<TorusAlgebra>),
    Ore(Arc<OreAlgebra>),
}

impl RepAlgebra {
    pub fn root_order(&self) -> u32 {
        match self {
            RepAlgebra::Torus(t) => t.root_order(),
            RepAlgebra::Ore(o) => o.root_order(),
        }
    }

    fn generator_count(&self) -> usize {
        match self {
            RepAlgebra::Torus(t) => t.generators(),
            RepAlgebra::Ore(o) => o.total_generators(),
        }
    }
}

/// Data pinning how a built torus representation realizes the decomposition:
/// the images of the `y` and `z` generators, used to verify the character.
#[derive(Debug, Clone)]
pub struct CharacterData {
    pub decomposition: TorusDecomposition,
    pub character: CentralCharacter,
    pub y_matrices: Vec<CycMat>,
    pub z_matrices: Vec<CycMat>,
}

/// An exact matrix representation: one `N×N` matrix over `Q(ε)` per
/// generator, plus optional character data and a verification flag.
#[derive(Debug, Clone)]
pub struct Rep {
    pub dimension: usize,
    pub matrices: Vec<CycMat>,
    pub algebra: RepAlgebra,
    pub character: Option<CharacterData>,
    pub verified: bool,
}

impl Rep {
    /// Wrap user-supplied matrices (unverified).
    pub fn from_matrices(algebra: RepAlgebra, matrices: Vec<CycMat>) -> Result<Self, RepError> {
        let count = algebra.generator_count();
        if matrices.len() != count {
            return Err(RepError::BadParameters(format!(
                "{} matrices for {} generators",
                matrices.len(),
                count
            )));
        }
        let n = matrices.first().map_or(0, |m| m.rows);
        if matrices.iter().any(|m| m.rows != n || m.cols != n) {
            return Err(RepError::BadParameters("matrices must be square, same size".into()));
        }
        Ok(Rep {
            dimension: n,
            matrices,
            algebra,
            character: None,
            verified: false,
        })
    }
}

/// Outcome of relation-by-relation verification.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub failures: Vec<String>,
}

// ---------------------------------------------------------------------------
// Clock/shift blocks
// ---------------------------------------------------------------------------

/// The `l×l` clock/shift pair realizing `Y₁Y₂ = ε^d·Y₂Y₁` with
/// `Y₁ = ν₁·diag(1, ε^d, …, ε^{(l−1)d})` and `Y₂ = ν₂·(cyclic shift)`;
/// both satisfy `Y_i^l = ν_i^l·I`. Requires `gcd(d, l) = 1`.
pub fn clock_shift_block(
    l: u32,
    d: i64,
    nu1: &CycScalar,
    nu2: &CycScalar,
) -> Result<(CycMat, CycMat), RepError> {
    if d.gcd(&(l as i64)) != 1 {
        return Err(RepError::BadParameters(format!(
            "gcd(d, l) = gcd({}, {}) != 1",
            d, l
        )));
    }
    if nu1.is_zero() || nu2.is_zero() {
        return Err(RepError::BadParameters("roots must be nonzero".into()));
    }
    let n = l as usize;
    let clock = CycMat::from_fn(l, n, n, |i, j| {
        if i == j {
            CycScalar::eps_pow(l, d * i as i64).mul(nu1)
        } else {
            CycScalar::zero(l)
        }
    });
    let shift = CycMat::from_fn(l, n, n, |i, j| {
        if i == (j + 1) % n {
            nu2.clone()
        } else {
            CycScalar::zero(l)
        }
    });
    Ok((clock, shift))
}

// ---------------------------------------------------------------------------
// Building torus irreps
// ---------------------------------------------------------------------------

/// Build the irreducible representation of the torus at `ε` with central
/// character `χ`: the tensor product of one clock/shift block per hyperbolic
/// pair, the generic-center generators acting by `α_j`, and each original
/// generator realized through the exponent change of basis with its cocycle
/// scalar. The result has dimension `l^r` and passes [`verify_rep`].
pub fn build_torus_irrep(
    torus: &Arc<TorusAlgebra>,
    chi: &CentralCharacter,
) -> Result<Rep, RepError> {
    let l = torus.root_order();
    let m = torus.generators();
    // Requires l coprime to the elementary divisors of S.
    let divisors = smith_normal_form(torus.matrix()).elementary_divisors();
    if let Some(bad) = divisors.iter().find(|d| d.gcd(&(l as i64)) != 1) {
        return Err(RepError::BadParameters(format!(
            "l = {} shares a factor with elementary divisor {}",
            l, bad
        )));
    }
    let dec = torus_decompose(torus);
    let r = dec.d().len();
    let t = dec.z_exponents.len();
    if chi.nu.len() != 2 * r || chi.alpha.len() != t {
        return Err(RepError::BadParameters(format!(
            "character shape ({}, {}) does not match decomposition (2r = {}, t = {})",
            chi.nu.len(),
            chi.alpha.len(),
            2 * r,
            t
        )));
    }
    let dim = (l as usize).pow(r as u32);
    if dim * dim > COMMUTANT_UNKNOWN_BOUND {
        return Err(RepError::TooLarge(dim * dim));
    }

    // Tensor factors: block b contributes the clock to y_{2b} and the shift
    // to y_{2b+1} (0-based), matching y_{2b} y_{2b+1} = q^{d_b} y_{2b+1} y_{2b}.
    let mut y_matrices: Vec<CycMat> = Vec::with_capacity(2 * r);
    for b in 0..r {
        let (clock, shift) = clock_shift_block(l, dec.d()[b], &chi.nu[2 * b], &chi.nu[2 * b + 1])?;
        for mat in [clock, shift] {
            let mut full = CycMat::identity(l, 1);
            for factor in 0..r {
                let piece = if factor == b {
                    mat.clone()
                } else {
                    CycMat::identity(l, l as usize)
                };
                full = full.kron(&piece);
            }
            y_matrices.push(full);
        }
    }
    let z_matrices: Vec<CycMat> = chi
        .alpha
        .iter()
        .map(|a| CycMat::identity(l, dim).scale(a))
        .collect();

    // Original generators: u_i = ε^{−γ}·Π_k ρ(w_k)^{c_k} where c = W^{−1}e_i
    // and q^γ is the cocycle of re-ordering the monomial product.
    let winv = unimodular_inverse(&dec.form.w);
    let mut matrices = Vec::with_capacity(m);
    for i in 0..m {
        let c = winv.col(i);
        let parts: Vec<(Vec<i64>, i64)> = (0..m)
            .map(|k| {
                let expo = if k < 2 * r {
                    dec.y_exponents[k].clone()
                } else {
                    dec.z_exponents[k - 2 * r].clone()
                };
                (expo, c[k])
            })
            .collect();
        let (total_expo, gamma) = ordered_product_cocycle(torus, &parts);
        debug_assert_eq!(total_expo, {
            let mut e = vec![0i64; m];
            e[i] = 1;
            e
        });
        let mut mat = CycMat::identity(l, dim).scale(&CycScalar::eps_pow(l, -gamma));
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            let base = if k < 2 * r {
                &y_matrices[k]
            } else {
                &z_matrices[k - 2 * r]
            };
            mat = mat.mul(&base.pow(ck));
        }
        matrices.push(mat);
    }

    let rep = Rep {
        dimension: dim,
        matrices,
        algebra: RepAlgebra::Torus(torus.clone()),
        character: Some(CharacterData {
            decomposition: dec,
            character: chi.clone(),
            y_matrices,
            z_matrices,
        }),
        verified: false,
    };
    let outcome = verify_rep(&rep);
    if !outcome.pass {
        return Err(RepError::BadParameters(format!(
            "constructed representation failed verification: {:?}",
            outcome.failures
        )));
    }
    Ok(Rep {
        verified: true,
        ..rep
    })
}

/// Exact inverse of a unimodular integer matrix via cofactors.
fn unimodular_inverse(w: &IntMat) -> IntMat {
    let n = w.rows;
    let det = w.det();
    assert!(det.abs() == 1, "matrix is not unimodular");
    let mut inv = IntMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = w.submatrix(&rows, &cols).det();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[(i, j)] = (sign as i128 * minor * det) as i64;
        }
    }
    inv
}

/// Normal-order the product `Π_k u^{g_k·m_k}` symbolically: returns the total
/// exponent and the accumulated `q`-cocycle exponent `γ`.
fn ordered_product_cocycle(torus: &TorusAlgebra, parts: &[(Vec<i64>, i64)]) -> (Vec<i64>, i64) {
    let m = torus.generators();
    let mut gamma = 0i64;
    let mut acc = vec![0i64; m];
    for (g, mult) in parts {
        let (step, reps): (Vec<i64>, i64) = if *mult >= 0 {
            (g.clone(), *mult)
        } else {
            let neg: Vec<i64> = g.iter().map(|x| -x).collect();
            // (u^g)^{-1} = q^{-κ(g, −g)}·u^{−g}.
            gamma -= mult.abs() * torus.kappa(g, &neg);
            (neg, -mult)
        };
        for _ in 0..reps {
            gamma += torus.kappa(&acc, &step);
            for (a, b) in acc.iter_mut().zip(&step) {
                *a += b;
            }
        }
    }
    (acc, gamma)
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Check every defining relation of the underlying algebra exactly, the
/// invertibility of generators that must be invertible, and (when character
/// data is attached) the central character. Failures are data, not errors.
pub fn verify_rep(rep: &Rep) -> VerifyOutcome {
    let mut failures = Vec::new();
    let l = rep.algebra.root_order();
    match &rep.algebra {
        RepAlgebra::Torus(t) => {
            let m = t.generators();
            for i in 0..m {
                if !rep.matrices[i].is_invertible() {
                    failures.push(format!("generator u_{} is not invertible", i + 1));
                }
            }
            for i in 0..m {
                for j in (i + 1)..m {
                    let lhs = rep.matrices[i].mul(&rep.matrices[j]);
                    let rhs = rep.matrices[j]
                        .mul(&rep.matrices[i])
                        .scale(&CycScalar::eps_pow(l, t.matrix()[(i, j)]));
                    if lhs != rhs {
                        failures.push(format!(
                            "relation u_{} u_{} = eps^{} u_{} u_{} fails",
                            i + 1,
                            j + 1,
                            t.matrix()[(i, j)],
                            j + 1,
                            i + 1
                        ));
                    }
                }
            }
            if let Some(cd) = &rep.character {
                for (k, y) in cd.y_matrices.iter().enumerate() {
                    let target = CycMat::identity(l, rep.dimension)
                        .scale(&cd.character.nu[k].pow(l as i64));
                    if y.pow(l as i64) != target {
                        failures.push(format!("y_{}^l is not the scalar nu^l", k + 1));
                    }
                }
                for (j, z) in cd.z_matrices.iter().enumerate() {
                    let target =
                        CycMat::identity(l, rep.dimension).scale(&cd.character.alpha[j]);
                    if z != &target {
                        failures.push(format!("z_{} does not act by alpha_{}", j + 1, j + 1));
                    }
                }
            }
        }
        RepAlgebra::Ore(alg) => {
            let n = alg.skew_count();
            let total = alg.total_generators();
            for i in n..total {
                if !rep.matrices[i].is_invertible() {
                    failures.push(format!("invertible generator x_{} maps to a singular matrix", i + 1));
                }
            }
            for i in 0..total {
                for j in (i + 1)..total {
                    let lhs = rep.matrices[i].mul(&rep.matrices[j]);
                    let mut rhs = rep.matrices[j]
                        .mul(&rep.matrices[i])
                        .scale(&CycScalar::eps_pow(l, alg.matrix()[(i, j)]));
                    let tail = alg.relation(i, j);
                    if !tail.is_empty() {
                        let tail_eps = crate::qadjoint::specialize(
                            &crate::orealg::OreElement::from_terms(alg, tail),
                        );
                        rhs = rhs.add(&evaluate_spec_element(rep, &tail_eps));
                    }
                    if lhs != rhs {
                        failures.push(format!(
                            "relation x_{} x_{} = eps^{} x_{} x_{} + r fails",
                            i + 1,
                            j + 1,
                            alg.matrix()[(i, j)],
                            j + 1,
                            i + 1
                        ));
                    }
                }
            }
        }
    }
    VerifyOutcome {
        pass: failures.is_empty(),
        failures,
    }
}

/// Image of a specialized element under the representation:
/// `Σ_t c_t · Π_k ρ(x_k)^{t_k}` in PBW order.
pub fn evaluate_spec_element(rep: &Rep, el: &SpecElement) -> CycMat {
    let l = rep.algebra.root_order();
    let mut out = CycMat::zeros(l, rep.dimension, rep.dimension);
    for (t, c) in el.terms() {
        let mut mono = CycMat::identity(l, rep.dimension).scale(c);
        for (k, &e) in t.iter().enumerate() {
            if e != 0 {
                mono = mono.mul(&rep.matrices[k].pow(e));
            }
        }
        out = out.add(&mono);
    }
    out
}

// ---------------------------------------------------------------------------
// Commutant and conjugacy
// ---------------------------------------------------------------------------

/// Dimension over `Q(ε)` of `{X : X·ρ(g) = ρ(g)·X for all generators}`;
/// `1` exactly when the representation is irreducible (split case). Uses the
/// orbit method when every generator matrix is an invertible generalized
/// permutation, and a dense exact nullspace otherwise.
pub fn commutant_dimension(rep: &Rep) -> Result<usize, RepError> {
    let n = rep.dimension;
    if n * n > COMMUTANT_UNKNOWN_BOUND {
        return Err(RepError::TooLarge(n * n));
    }
    let l = rep.algebra.root_order();
    let monomials: Option<Vec<_>> = rep.matrices.iter().map(|m| m.as_monomial()).collect();
    if let Some(gens) = monomials {
        return Ok(monomial_commutant_dimension(n, &gens, l));
    }
    Ok(dense_commutant_dimension(n, &rep.matrices, l))
}

/// Exact intertwiner test: do the two representations admit an invertible
/// `X` with `X·ρ₁(g) = ρ₂(g)·X` for all generators?
pub fn reps_conjugate(rep1: &Rep, rep2: &Rep) -> Result<bool, RepError> {
    if rep1.dimension != rep2.dimension || rep1.matrices.len() != rep2.matrices.len() {
        return Ok(false);
    }
    let n = rep1.dimension;
    if n * n > COMMUTANT_UNKNOWN_BOUND {
        return Err(RepError::TooLarge(n * n));
    }
    let l = rep1.algebra.root_order();
    let basis = intertwiner_nullspace(n, &rep1.matrices, &rep2.matrices, l);
    // For the representations at hand the space is at most one-dimensional;
    // check each basis vector for invertibility.
    for v in &basis {
        let x = CycMat::from_fn(l, n, n, |i, j| v[i * n + j].clone());
        if x.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The dimension `l^{rank(S)/2}` an irreducible representation over this
/// exponent matrix must have. Requires `l` coprime to the elementary
/// divisors.
pub fn rep_dimension_formula(s: &IntMat, l: u32) -> Result<u64, RepError> {
    let snf = smith_normal_form(s);
    if let Some(bad) = snf
        .elementary_divisors()
        .iter()
        .find(|d| d.gcd(&(l as i64)) != 1)
    {
        return Err(RepError::BadParameters(format!(
            "l = {} shares a factor with elementary divisor {}",
            l, bad
        )));
    }
    let rank = snf.rank();
    assert!(rank.is_multiple_of(2), "skew-symmetric matrices have even rank");
    Ok((l as u64).pow((rank / 2) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QLaurent;

    fn quantum_plane(l: u32) -> Arc<TorusAlgebra> {
        TorusAlgebra::new(l, IntMat::from_rows(vec![vec![0, 1], vec![-1, 0]]))
    }

    #[test]
    fn clock_shift_two_by_two() {
        let one = CycScalar::one(2);
        let (clock, shift) = clock_shift_block(2, 1, &one, &one).unwrap();
        // diag(1, −1) and the swap matrix; Y₁Y₂ = −Y₂Y₁.
        assert_eq!(clock[(0, 0)], CycScalar::one(2));
        assert_eq!(clock[(1, 1)], CycScalar::from_i64(2, -1));
        assert_eq!(shift[(1, 0)], CycScalar::one(2));
        assert_eq!(shift[(0, 1)], CycScalar::one(2));
        let lhs = clock.mul(&shift);
        let rhs = shift.mul(&clock).scale(&CycScalar::from_i64(2, -1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn clock_shift_l_th_powers_are_scalars() {
        let l = 3;
        let nu1 = CycScalar::eps(l);
        let nu2 = CycScalar::from_i64(l, 2);
        let (clock, shift) = clock_shift_block(l, 1, &nu1, &nu2).unwrap();
        assert_eq!(
            clock.pow(l as i64),
            CycMat::identity(l, 3).scale(&nu1.pow(3))
        );
        assert_eq!(
            shift.pow(l as i64),
            CycMat::identity(l, 3).scale(&nu2.pow(3))
        );
    }

    #[test]
    fn clock_shift_rejects_shared_factor() {
        let one = CycScalar::one(4);
        assert!(matches!(
            clock_shift_block(4, 2, &one, &one),
            Err(RepError::BadParameters(_))
        ));
    }

    #[test]
    fn build_quantum_plane_irrep() {
        let t = quantum_plane(3);
        let chi = CentralCharacter::all_ones(3, 2, 0);
        let rep = build_torus_irrep(&t, &chi).unwrap();
        assert_eq!(rep.dimension, 3);
        assert!(rep.verified);
        assert!(verify_rep(&rep).pass);
        assert_eq!(commutant_dimension(&rep).unwrap(), 1);
    }

    #[test]
    fn zero_matrix_torus_gives_one_dimensional_reps() {
        let t = TorusAlgebra::new(5, IntMat::zeros(3, 3));
        let chi = CentralCharacter::new(
            vec![],
            vec![
                CycScalar::from_i64(5, 2),
                CycScalar::eps(5),
                CycScalar::from_i64(5, -1),
            ],
        )
        .unwrap();
        let rep = build_torus_irrep(&t, &chi).unwrap();
        assert_eq!(rep.dimension, 1);
        // u_i acts by the central value alpha_i (up to the hermite basis of
        // the kernel, which is the identity here).
        assert!(verify_rep(&rep).pass);
        assert_eq!(commutant_dimension(&rep).unwrap(), 1);
    }

    #[test]
    fn build_full_rank_four_by_four() {
        let s = IntMat::from_rows(vec![
            vec![0, 1, 1, 1],
            vec![-1, 0, 1, 1],
            vec![-1, -1, 0, 1],
            vec![-1, -1, -1, 0],
        ]);
        let t = TorusAlgebra::new(5, s);
        let chi = CentralCharacter::all_ones(5, 4, 0);
        let rep = build_torus_irrep(&t, &chi).unwrap();
        assert_eq!(rep.dimension, 25);
        assert!(rep.verified);
        assert_eq!(commutant_dimension(&rep).unwrap(), 1);
        assert_eq!(rep_dimension_formula(t.matrix(), 5).unwrap(), 25);
    }

    #[test]
    fn direct_sum_has_commutant_dimension_four() {
        let t = quantum_plane(3);
        let chi = CentralCharacter::all_ones(3, 2, 0);
        let rep = build_torus_irrep(&t, &chi).unwrap();
        let n = rep.dimension;
        let doubled: Vec<CycMat> = rep
            .matrices
            .iter()
            .map(|m| {
                CycMat::from_fn(3, 2 * n, 2 * n, |i, j| {
                    if i < n && j < n {
                        m[(i, j)].clone()
                    } else if i >= n && j >= n {
                        m[(i - n, j - n)].clone()
                    } else {
                        CycScalar::zero(3)
                    }
                })
            })
            .collect();
        let sum = Rep::from_matrices(RepAlgebra::Torus(t.clone()), doubled).unwrap();
        assert!(verify_rep(&sum).pass);
        assert_eq!(commutant_dimension(&sum).unwrap(), 4);
    }

    #[test]
    fn example_weyl_matrices_verify_at_minus_one() {
        // x ↦ [[0,0],[1,0]], y ↦ [[0,1],[0,0]] at ε = −1 satisfy xy + yx = 1.
        let alg =
            crate::orealg::OreAlgebra::instantiate(&crate::orealg::OreSpecData::weyl(), 2).unwrap();
        let l = 2;
        let zero = CycScalar::zero(l);
        let one = CycScalar::one(l);
        let x = CycMat::from_fn(l, 2, 2, |i, j| {
            if (i, j) == (1, 0) {
                one.clone()
            } else {
                zero.clone()
            }
        });
        let y = CycMat::from_fn(l, 2, 2, |i, j| {
            if (i, j) == (0, 1) {
                one.clone()
            } else {
                zero.clone()
            }
        });
        let rep = Rep::from_matrices(RepAlgebra::Ore(alg.clone()), vec![x.clone(), y.clone()]).unwrap();
        assert!(verify_rep(&rep).pass);
        // The relation only sees the products xy and yx, so scaling the two
        // matrices inversely (here both by −1) still passes; negating y
        // alone flips the sign of the unit and fails; transposing x makes
        // both products vanish and fails.
        let minus = CycScalar::from_i64(l, -1);
        let rep2 = Rep::from_matrices(
            RepAlgebra::Ore(alg.clone()),
            vec![x.scale(&minus), y.scale(&minus)],
        )
        .unwrap();
        assert!(verify_rep(&rep2).pass);
        let rep3 = Rep::from_matrices(
            RepAlgebra::Ore(alg.clone()),
            vec![x.clone(), y.scale(&minus)],
        )
        .unwrap();
        assert!(!verify_rep(&rep3).pass);
        let x_t = CycMat::from_fn(l, 2, 2, |i, j| x[(j, i)].clone());
        let rep4 = Rep::from_matrices(RepAlgebra::Ore(alg), vec![x_t, y]).unwrap();
        assert!(!verify_rep(&rep4).pass);
    }

    #[test]
    fn character_determinacy_small_cases() {
        // Equal characters, different root choices: the representations are
        // conjugate (solved through the exact intertwiner system).
        for l in [2u32, 3] {
            let t = quantum_plane(l);
            let chi1 = CentralCharacter::all_ones(l, 2, 0);
            // nu' = eps·nu has the same l-th power.
            let chi2 = CentralCharacter::new(
                vec![CycScalar::eps(l), CycScalar::one(l)],
                vec![],
            )
            .unwrap();
            let rep1 = build_torus_irrep(&t, &chi1).unwrap();
            let rep2 = build_torus_irrep(&t, &chi2).unwrap();
            assert!(reps_conjugate(&rep1, &rep2).unwrap(), "l = {}", l);
        }
    }

    #[test]
    fn different_characters_are_not_conjugate() {
        let l = 3;
        let t = quantum_plane(l);
        let chi1 = CentralCharacter::all_ones(l, 2, 0);
        let chi2 = CentralCharacter::new(
            vec![CycScalar::from_i64(l, 2), CycScalar::one(l)],
            vec![],
        )
        .unwrap();
        let rep1 = build_torus_irrep(&t, &chi1).unwrap();
        let rep2 = build_torus_irrep(&t, &chi2).unwrap();
        assert!(!reps_conjugate(&rep1, &rep2).unwrap());
    }

    #[test]
    fn dimension_formula_consistency() {
        // rep_dimension_formula = dimension of build_torus_irrep =
        // l^{(generic Poisson rank)/2}.
        for (l, s) in [
            (3u32, vec![vec![0, 1], vec![-1, 0]]),
            (5, vec![vec![0, 2], vec![-2, 0]]),
            (7, vec![vec![0, 1], vec![-1, 0]]),
        ] {
            let t = TorusAlgebra::new(l, IntMat::from_rows(s));
            let chi = CentralCharacter::all_ones(l, 2, 0);
            let rep = build_torus_irrep(&t, &chi).unwrap();
            let formula = rep_dimension_formula(t.matrix(), l).unwrap();
            assert_eq!(rep.dimension as u64, formula);
            let ore = crate::orealg::OreAlgebra::from_torus(&t);
            let gens: Vec<Vec<i64>> = (0..2)
                .map(|i| {
                    let mut e = vec![0i64; 2];
                    e[i] = l as i64;
                    e
                })
                .collect();
            let rank = crate::qadjoint::generic_poisson_rank(&ore, &gens).unwrap();
            assert_eq!(formula, (l as u64).pow((rank / 2) as u32));
        }
    }

    #[test]
    fn commutant_bound_is_enforced() {
        // 101² unknowns exceed the cap.
        let t = TorusAlgebra::new(2, IntMat::zeros(1, 1));
        let big = CycMat::identity(2, 101);
        let rep = Rep::from_matrices(RepAlgebra::Torus(t), vec![big]).unwrap();
        assert!(matches!(
            commutant_dimension(&rep),
            Err(RepError::TooLarge(_))
        ));
    }

    #[test]
    fn dimension_formula_rejects_bad_l() {
        let s = IntMat::from_rows(vec![vec![0, 2], vec![-2, 0]]);
        assert!(matches!(
            rep_dimension_formula(&s, 2),
            Err(RepError::BadParameters(_))
        ));
        assert_eq!(rep_dimension_formula(&s, 3).unwrap(), 3);
    }

    #[test]
    fn built_rep_respects_u_monomial_realization() {
        // The ordered product cocycle: re-expressing u_i through the y/z
        // matrices must reproduce a representation of the original torus,
        // which verify_rep already checks; spot-check a product identity
        // u_1 u_2 = eps^{s_12} u_2 u_1 numerically on a skewed example.
        let s = IntMat::from_rows(vec![vec![0, 3], vec![-3, 0]]);
        let t = TorusAlgebra::new(5, s);
        let chi = CentralCharacter::new(
            vec![CycScalar::from_i64(5, 2), CycScalar::eps(5)],
            vec![],
        )
        .unwrap();
        let rep = build_torus_irrep(&t, &chi).unwrap();
        let lhs = rep.matrices[0].mul(&rep.matrices[1]);
        let rhs = rep.matrices[1]
            .mul(&rep.matrices[0])
            .scale(&CycScalar::eps_pow(5, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torus_kappa_is_accessible_for_products() {
        // ordered_product_cocycle against direct torus multiplication.
        let t = quantum_plane(5);
        let parts = vec![(vec![1, 1], 2i64), (vec![0, 1], -1i64)];
        let (expo, gamma) = ordered_product_cocycle(&t, &parts);
        let u11 = crate::qtorus::TorusElement::monomial(&t, vec![1, 1], QLaurent::one(5));
        let inv_u2 = crate::qtorus::TorusElement::monomial(
            &t,
            vec![0, -1],
            QLaurent::q_pow(5, -t.kappa(&[0, 1], &[0, -1])),
        );
        let prod = u11.mul(&u11).mul(&inv_u2);
        let (e, c) = prod.as_monomial().unwrap();
        assert_eq!(e, expo);
        assert_eq!(c, QLaurent::q_pow(5, gamma));
    }
}
