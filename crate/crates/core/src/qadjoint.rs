//! Specialization at `q = ε`, the quantum adjoint action
//! `D_u(a) = ((u·ā − ā·u)/(q−ε)) mod (q−ε)`, the derivations `θ_i` and `Δ_i`,
//! the Poisson bracket on the center, and Poisson matrix ranks at exact
//! characters.
//!
//! Specialized elements carry `CycScalar` coefficients; their arithmetic is
//! implemented by lifting to the `q`-symbolic algebra, multiplying there, and
//! reducing; the reduction map is a ring homomorphism, so this is exact and
//! keeps one multiplication engine authoritative.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::CycMat;
use crate::orealg::{
    apply_delta_pow, apply_tau_pow, CheckOutcome, OreAlgebra, OreElement, OreError,
};
use crate::scalar::{q_binomial, CycScalar, QLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjointError {
    #[error("element is not central at eps: commutator with x_{0} is not divisible by (q - eps)")]
    NotCentral(usize),
    #[error("division by (q - eps) failed: the l-th power hypothesis does not hold")]
    NotDivisible,
    #[error("character point is inconsistent: {0}")]
    InconsistentPoint(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error(transparent)]
    Ore(#[from] OreError),
}

/// `m̲ = ((q^{ml}−1)/(q−ε))|_{q=ε} = m·l·ε^{−1}`, the θ-eigenvalue attached
/// to a τ-weight `m`.
pub fn underline(l: u32, m: i64) -> CycScalar {
    CycScalar::from_i64(l, m * l as i64).mul(&CycScalar::eps_pow(l, -1))
}

// ---------------------------------------------------------------------------
// SpecElement
// ---------------------------------------------------------------------------

/// An element of `R_ε = R mod (q−ε)`: multidegree map with `CycScalar`
/// coefficients, tied to the same algebra presentation.
#[derive(Clone)]
pub struct SpecElement {
    algebra: Arc<OreAlgebra>,
    terms: BTreeMap<Vec<i64>, CycScalar>,
}

impl SpecElement {
    pub fn zero(alg: &Arc<OreAlgebra>) -> Self {
        SpecElement {
            algebra: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<OreAlgebra>) -> Self {
        Self::monomial(alg, vec![0; alg.total_generators()], CycScalar::one(alg.root_order()))
    }

    pub fn monomial(alg: &Arc<OreAlgebra>, expo: Vec<i64>, coeff: CycScalar) -> Self {
        let mut out = Self::zero(alg);
        out.insert(expo, coeff);
        out
    }

    pub fn algebra(&self) -> &Arc<OreAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, expo: Vec<i64>, coeff: CycScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&coeff);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.insert(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SpecElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (t, a) in &self.terms {
            out.insert(t.clone(), a.mul(c));
        }
        out
    }

    /// A preimage under the reduction map: the same terms with constant
    /// coefficients.
    pub fn lift(&self) -> OreElement {
        let _l = self.algebra.root_order();
        let mut terms = crate::orealg::TermMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.clone(), QLaurent::constant(c.clone()));
        }
        OreElement::from_terms(&self.algebra, terms)
    }

    /// Product in `R_ε`, computed by lift–multiply–reduce.
    pub fn mul(&self, other: &Self) -> Self {
        specialize(&self.lift().mul(&other.lift()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for SpecElement {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra && self.terms == other.terms
    }
}

impl Eq for SpecElement {}

impl fmt::Debug for SpecElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (j, &e) in t.iter().enumerate() {
                if e != 0 {
                    write!(f, "*x{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// The reduction map `ρ_ε : R → R_ε`: evaluate every coefficient at `ε`.
pub fn specialize(a: &OreElement) -> SpecElement {
    let mut out = SpecElement::zero(a.algebra());
    for (t, c) in a.terms() {
        out.insert(t.clone(), c.eval_at_eps());
    }
    out
}

// ---------------------------------------------------------------------------
// Central witnesses and the adjoint action
// ---------------------------------------------------------------------------

/// An element `u` of `R` certified to be central modulo `(q−ε)`: every
/// generator commutator divides exactly by `(q−ε)`. The divided commutators
/// are kept as the certificate. Certification recomputes them rather than
/// trusting the caller.
#[derive(Clone)]
pub struct CentralWitness {
    u: OreElement,
    certificate: Vec<OreElement>,
}

impl CentralWitness {
    pub fn certify(u: OreElement) -> Result<Self, AdjointError> {
        let alg = u.algebra().clone();
        let mut certificate = Vec::new();
        for j in 0..alg.total_generators() {
            let g = OreElement::generator(&alg, j);
            let comm = u.mul(&g).sub(&g.mul(&u));
            let divided = div_q_minus_eps_element(&comm).ok_or(AdjointError::NotCentral(j + 1))?;
            certificate.push(divided);
        }
        Ok(CentralWitness { u, certificate })
    }

    pub fn element(&self) -> &OreElement {
        &self.u
    }

    pub fn certificate(&self) -> &[OreElement] {
        &self.certificate
    }

    /// The witness for `u^{k}`.
    pub fn pow(&self, k: u32) -> Result<Self, AdjointError> {
        Self::certify(self.u.pow(k))
    }
}

fn div_q_minus_eps_element(a: &OreElement) -> Option<OreElement> {
    let mut terms = crate::orealg::TermMap::new();
    for (t, c) in a.terms() {
        match c.div_q_minus_eps() {
            Ok(q) => {
                terms.insert(t.clone(), q);
            }
            Err(_) => return None,
        }
    }
    Some(OreElement::from_terms(a.algebra(), terms))
}

/// The quantum adjoint action `D_u(a) = ((u·ā − ā·u)/(q−ε))|_ε` for a
/// certified `u` and `a ∈ R_ε`. Independent of the chosen preimage `ā`.
pub fn quantum_adjoint(u: &CentralWitness, a: &SpecElement) -> SpecElement {
    let lifted = a.lift();
    let comm = u.u.mul(&lifted).sub(&lifted.mul(&u.u));
    let divided = div_q_minus_eps_element(&comm)
        .expect("commutator with a certified central element must divide by (q - eps)");
    specialize(&divided)
}

/// `θ_i = (τ_i^l − id)/(q−ε)` at `ε`: scales a monomial of τ_i-weight `w`
/// by `w·l·ε^{−1}`.
pub fn theta(i: usize, a: &SpecElement) -> SpecElement {
    let alg = a.algebra();
    let l = alg.root_order();
    let mut out = SpecElement::zero(alg);
    for (t, c) in a.terms() {
        let w = alg.weight(i, t);
        out.insert(t.clone(), c.mul(&underline(l, w)));
    }
    out
}

/// `Δ_i = δ_i^l/(q−ε)` at `ε`, defined on elements supported above `x_i`.
pub fn big_delta(i: usize, a: &SpecElement) -> Result<SpecElement, AdjointError> {
    let alg = a.algebra();
    let l = alg.root_order();
    let dl = apply_delta_pow(i, l, &a.lift())?;
    let divided = div_q_minus_eps_element(&dl).ok_or(AdjointError::NotDivisible)?;
    Ok(specialize(&divided))
}

/// The Poisson bracket `{u_ε, v_ε} = D_u(v_ε)` on the center of `R_ε`.
/// Antisymmetry against `−D_v(u_ε)` is checked on every call.
pub fn poisson_bracket(u: &CentralWitness, v: &CentralWitness) -> SpecElement {
    let lhs = quantum_adjoint(u, &specialize(v.element()));
    let rhs = quantum_adjoint(v, &specialize(u.element()));
    assert_eq!(
        lhs,
        rhs.neg(),
        "Poisson bracket antisymmetry failed: D_u(v) != -D_v(u)"
    );
    lhs
}

/// Closed-form torus adjoint `D̄_{u_i^l}(u_j) = s_ij·l·ε^{−1}·u_j·u_i^l` on
/// the `n = 0` presentation; an independent code path against
/// [`quantum_adjoint`].
pub fn torus_fast_adjoint(alg: &Arc<OreAlgebra>, i: usize, j: usize) -> SpecElement {
    assert_eq!(alg.skew_count(), 0, "fast formula is for quantum tori");
    let l = alg.root_order();
    let m = alg.total_generators();
    let s_ij = alg.matrix()[(i, j)];
    let mut expo = vec![0i64; m];
    expo[j] += 1;
    expo[i] += l as i64;
    // u_j·u_i^l normal-orders with cocycle κ(e_j, l·e_i).
    let mut ej = vec![0i64; m];
    ej[j] = 1;
    let mut li = vec![0i64; m];
    li[i] = l as i64;
    let kappa = kappa_of(alg, &ej, &li);
    let coeff = CycScalar::from_i64(l, s_ij * l as i64)
        .mul(&CycScalar::eps_pow(l, -1))
        .mul(&CycScalar::eps_pow(l, kappa));
    SpecElement::monomial(alg, expo, coeff)
}

fn kappa_of(alg: &OreAlgebra, a: &[i64], b: &[i64]) -> i64 {
    let total = alg.total_generators();
    let mut acc = 0;
    for j in 1..total {
        if a[j] == 0 {
            continue;
        }
        for i in 0..j {
            acc += alg.matrix()[(j, i)] * a[j] * b[i];
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Poisson matrices and ranks at characters
// ---------------------------------------------------------------------------

/// The symbolic bracket matrix of a list of central monomial generators,
/// together with its exact evaluation at a character point.
#[derive(Debug, Clone)]
pub struct PoissonMatrix {
    pub gens: Vec<Vec<i64>>,
    pub matrix: CycMat,
}

/// The value a character assigns to `u^{Σ m_i g_i}` given its values on the
/// listed generators: the symbolic product `Π (u^{g_i})^{m_i}` equals
/// `q^{Γ}·u^{Σ m_i g_i}`, so the monomial's value is `ε^{−Γ}·Π χ_i^{m_i}`.
fn character_value_of(
    alg: &OreAlgebra,
    gens: &[Vec<i64>],
    point: &[CycScalar],
    combo: &[i64],
) -> CycScalar {
    let l = alg.root_order();
    let m = alg.total_generators();
    let mut gamma: i64 = 0;
    let mut acc_expo = vec![0i64; m];
    for (idx, &mult) in combo.iter().enumerate() {
        let (g, reps) = if mult >= 0 {
            (gens[idx].clone(), mult)
        } else {
            // (u^g)^{-1} = q^{-κ(g,−g)} u^{-g}.
            let neg: Vec<i64> = gens[idx].iter().map(|x| -x).collect();
            gamma -= mult.abs() * kappa_of(alg, &gens[idx], &neg);
            (neg, -mult)
        };
        for _ in 0..reps {
            gamma += kappa_of(alg, &acc_expo, &g);
            for (a, b) in acc_expo.iter_mut().zip(&g) {
                *a += b;
            }
        }
    }
    let mut value = CycScalar::eps_pow(l, -gamma);
    for (idx, &mult) in combo.iter().enumerate() {
        value = value.mul(&point[idx].pow(mult));
    }
    value
}

/// Evaluate the Poisson matrix `M_x(i,j) = {u^{g_i}, u^{g_j}}(x)` of central
/// monomial generators at an exact character point, and return its rank over
/// `Q(ε)`. The point's consistency is checked against every integer relation
/// among the listed generators.
pub fn poisson_matrix_rank(
    alg: &Arc<OreAlgebra>,
    gens: &[Vec<i64>],
    point: &[CycScalar],
) -> Result<(PoissonMatrix, usize), AdjointError> {
    assert_eq!(alg.skew_count(), 0, "Poisson matrices live on torus strata");
    assert_eq!(gens.len(), point.len(), "one value per generator");
    let l = alg.root_order();
    if gens.is_empty() {
        return Ok((
            PoissonMatrix {
                gens: Vec::new(),
                matrix: CycMat::zeros(l, 0, 0),
            },
            0,
        ));
    }
    if point.iter().any(|v| v.is_zero()) {
        return Err(AdjointError::InconsistentPoint(
            "character values must be nonzero".into(),
        ));
    }
    // Certify centrality of every generator monomial.
    let witnesses: Vec<CentralWitness> = gens
        .iter()
        .map(|g| {
            let el = monomial_element(alg, g);
            CentralWitness::certify(el)
        })
        .collect::<Result<_, _>>()?;
    // Consistency: for every integer relation Σ m_i g_i = 0 among the listed
    // generators, the assigned values must satisfy the cocycle identity.
    let m = alg.total_generators();
    let mat = crate::intlat::IntMat::from_rows(
        (0..m)
            .map(|row| gens.iter().map(|g| g[row]).collect())
            .collect(),
    );
    for rel in crate::intlat::kernel_basis(&mat) {
        let v = character_value_of(alg, gens, point, &rel);
        if !v.is_one() {
            return Err(AdjointError::InconsistentPoint(format!(
                "relation {:?} among generators maps to {} != 1",
                rel, v
            )));
        }
    }
    // Bracket matrix evaluated at the point.
    let k = gens.len();
    let mut matrix = CycMat::zeros(l, k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            let bracket = quantum_adjoint(&witnesses[i], &specialize(witnesses[j].element()));
            let entry = match bracket.terms().iter().next() {
                None => CycScalar::zero(l),
                Some((expo, coeff)) => {
                    assert_eq!(bracket.terms().len(), 1, "central bracket is monomial");
                    let expect: Vec<i64> = gens[i].iter().zip(&gens[j]).map(|(a, b)| a + b).collect();
                    assert_eq!(expo, &expect, "bracket exponent mismatch");
                    // u^{g_i+g_j} evaluates to ε^{−κ(g_i,g_j)}·χ_i·χ_j.
                    let kap = kappa_of(alg, &gens[i], &gens[j]);
                    coeff
                        .mul(&CycScalar::eps_pow(l, -kap))
                        .mul(&point[i])
                        .mul(&point[j])
                }
            };
            matrix[(i, j)] = entry.clone();
            matrix[(j, i)] = entry.neg();
        }
    }
    let rank = matrix.rank();
    Ok((PoissonMatrix {
        gens: gens.to_vec(),
        matrix,
    }, rank))
}

fn monomial_element(alg: &Arc<OreAlgebra>, expo: &[i64]) -> OreElement {
    OreElement::monomial(alg, expo.to_vec(), QLaurent::one(alg.root_order()))
}

/// Rank at a generic point: the all-ones character plus a few random nonzero
/// characters, taking the maximum. For torus centers this attains `rank S`.
pub fn generic_poisson_rank(alg: &Arc<OreAlgebra>, gens: &[Vec<i64>]) -> Result<usize, AdjointError> {
    let l = alg.root_order();
    let ones = vec![CycScalar::one(l); gens.len()];
    let mut best = poisson_matrix_rank(alg, gens, &ones)?.1;
    for seed in 0..5u64 {
        let point = random_character(l, gens.len(), seed);
        let (_, r) = poisson_matrix_rank(alg, gens, &point)?;
        best = best.max(r);
    }
    Ok(best)
}

/// A deterministic nonzero character on an independent generator list.
pub fn random_character(l: u32, count: usize, seed: u64) -> Vec<CycScalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15));
    (0..count)
        .map(|_| {
            let base = match rng.gen_range(0..4) {
                0 => CycScalar::from_i64(l, 2),
                1 => CycScalar::from_i64(l, 3),
                2 => CycScalar::from_i64(l, 1),
                _ => CycScalar::from_i64(l, 5),
            };
            base.mul(&CycScalar::eps_pow(l, rng.gen_range(0..l as i64)))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

/// Verify `D_u` is a derivation: `D_u(ab) = D_u(a)·b + a·D_u(b)`.
pub fn check_derivation(u: &CentralWitness, a: &SpecElement, b: &SpecElement) -> CheckOutcome {
    let lhs = quantum_adjoint(u, &a.mul(b));
    let rhs = quantum_adjoint(u, a).mul(b).add(&a.mul(&quantum_adjoint(u, b)));
    if lhs == rhs {
        CheckOutcome::pass("adjoint-derivation")
    } else {
        CheckOutcome::fail("adjoint-derivation", format!("{:?} != {:?}", lhs, rhs))
    }
}

/// Representative independence: `D_{u+(q−ε)r}(a) − D_u(a) = r_ε·a − a·r_ε`.
pub fn check_representative_independence(
    u: &CentralWitness,
    r: &OreElement,
    a: &SpecElement,
) -> Result<CheckOutcome, AdjointError> {
    let alg = u.element().algebra();
    let l = alg.root_order();
    let q_minus_eps = QLaurent::q(l).sub(&QLaurent::constant(CycScalar::eps(l)));
    let u1 = CentralWitness::certify(u.element().add(&r.scale(&q_minus_eps)))?;
    let lhs = quantum_adjoint(&u1, a).sub(&quantum_adjoint(u, a));
    let r_eps = specialize(r);
    let rhs = r_eps.mul(a).sub(&a.mul(&r_eps));
    Ok(if lhs == rhs {
        CheckOutcome::pass("preimage-independence")
    } else {
        CheckOutcome::fail("preimage-independence", format!("{:?} != {:?}", lhs, rhs))
    })
}

/// Product rule for witnesses: `D_{uv}(a) = D_u(a)·v_ε + u_ε·D_v(a)`.
pub fn check_product_rule(
    u: &CentralWitness,
    v: &CentralWitness,
    a: &SpecElement,
) -> Result<CheckOutcome, AdjointError> {
    let uv = CentralWitness::certify(u.element().mul(v.element()))?;
    let lhs = quantum_adjoint(&uv, a);
    let rhs = quantum_adjoint(u, a)
        .mul(&specialize(v.element()))
        .add(&specialize(u.element()).mul(&quantum_adjoint(v, a)));
    Ok(if lhs == rhs {
        CheckOutcome::pass("adjoint-product-rule")
    } else {
        CheckOutcome::fail("adjoint-product-rule", format!("{:?} != {:?}", lhs, rhs))
    })
}

/// Bracket antisymmetry, and `{a, a} = 0` across preimages.
pub fn check_bracket_antisymmetry(u: &CentralWitness, v: &CentralWitness) -> CheckOutcome {
    let b_uv = poisson_bracket(u, v); // asserts antisymmetry internally
    let _ = b_uv;
    let self_bracket = quantum_adjoint(u, &specialize(u.element()));
    if self_bracket.is_zero() {
        CheckOutcome::pass("bracket-antisymmetry")
    } else {
        CheckOutcome::fail("bracket-antisymmetry", format!("{{a,a}} = {:?} != 0", self_bracket))
    }
}

/// `τ D_u = ε^m D_u τ` for a τ_i-homogeneous witness of weight `m`.
pub fn check_tau_adjoint_commutation(
    i: usize,
    u: &CentralWitness,
    a: &SpecElement,
) -> Result<CheckOutcome, AdjointError> {
    let alg = u.element().algebra();
    let l = alg.root_order();
    let weight = tau_weight_of(i, u.element()).ok_or_else(|| {
        AdjointError::UnsupportedInput("witness is not tau-homogeneous".into())
    })?;
    let lhs = tau_at_eps(i, &quantum_adjoint(u, a));
    let rhs = quantum_adjoint(u, &tau_at_eps(i, a)).scale(&CycScalar::eps_pow(l, weight));
    Ok(if lhs == rhs {
        CheckOutcome::pass("tau-adjoint-twist")
    } else {
        CheckOutcome::fail("tau-adjoint-twist", format!("{:?} != {:?}", lhs, rhs))
    })
}

/// `θ D_u = D_u (θ + m̲)` for a τ_i-homogeneous witness of weight `m`.
pub fn check_theta_adjoint_commutation(
    i: usize,
    u: &CentralWitness,
    a: &SpecElement,
) -> Result<CheckOutcome, AdjointError> {
    let alg = u.element().algebra();
    let l = alg.root_order();
    let weight = tau_weight_of(i, u.element()).ok_or_else(|| {
        AdjointError::UnsupportedInput("witness is not tau-homogeneous".into())
    })?;
    let lhs = theta(i, &quantum_adjoint(u, a));
    let rhs = quantum_adjoint(u, &theta(i, a))
        .add(&quantum_adjoint(u, a).scale(&underline(l, weight)));
    Ok(if lhs == rhs {
        CheckOutcome::pass("theta-adjoint-shift")
    } else {
        CheckOutcome::fail("theta-adjoint-shift", format!("{:?} != {:?}", lhs, rhs))
    })
}

fn tau_weight_of(i: usize, u: &OreElement) -> Option<i64> {
    let alg = u.algebra();
    let mut it = u.terms().keys();
    let first = it.next()?;
    let w = alg.weight(i, first);
    for t in it {
        if alg.weight(i, t) != w {
            return None;
        }
    }
    Some(w)
}

/// `τ_i` on a specialized element: scales a weight-`w` monomial by `ε^w`.
pub fn tau_at_eps(i: usize, a: &SpecElement) -> SpecElement {
    let alg = a.algebra();
    let l = alg.root_order();
    let mut out = SpecElement::zero(alg);
    for (t, c) in a.terms() {
        let w = alg.weight(i, t);
        out.insert(t.clone(), c.mul(&CycScalar::eps_pow(l, w)));
    }
    out
}

/// Term-by-term expansion of the adjoint of `x_i^l`:
/// `D_{x_i^l}(a) = θ_i(a)·x_ε^l + Σ_{k=1}^{l−1} [binom(l,k)_{q^{s_i}}/(q−ε)]_ε
/// ·τ^{l−k}(δ^k(a))·x_ε^{l−k} + Δ_i(a)`.
pub fn check_adjoint_expansion(
    alg: &Arc<OreAlgebra>,
    i: usize,
    a: &SpecElement,
) -> Result<CheckOutcome, AdjointError> {
    let l = alg.root_order();
    let ln = l as i64;
    let s = alg.skew_constant(i);
    let xi = OreElement::generator(alg, i);
    let u = CentralWitness::certify(xi.pow(l))?;
    let lhs = quantum_adjoint(&u, a);

    let xpow_eps = |k: i64| -> SpecElement {
        let mut e = vec![0i64; alg.total_generators()];
        e[i] = k;
        SpecElement::monomial(alg, e, CycScalar::one(l))
    };
    let mut rhs = theta(i, a).mul(&xpow_eps(ln));
    for k in 1..ln {
        let binom = q_binomial(l, ln, k, s);
        let coeff = binom
            .div_q_minus_eps()
            .map_err(|_| {
                AdjointError::UnsupportedInput(
                    "binom(l,k) does not vanish at eps; need gcd(s, l) = 1".into(),
                )
            })?
            .eval_at_eps();
        let term = apply_tau_pow(i, ln - k, &apply_delta_pow(i, k as u32, &a.lift())?);
        rhs = rhs.add(&specialize(&term).mul(&xpow_eps(ln - k)).scale(&coeff));
    }
    rhs = rhs.add(&big_delta(i, a)?);
    Ok(if lhs == rhs {
        CheckOutcome::pass("adjoint-expansion")
    } else {
        CheckOutcome::fail("adjoint-expansion", format!("{:?} != {:?}", lhs, rhs))
    })
}

/// Jacobi identity for the bracket on a triple of certified witnesses.
pub fn check_jacobi(
    u: &CentralWitness,
    v: &CentralWitness,
    w: &CentralWitness,
) -> Result<CheckOutcome, AdjointError> {
    // {u, {v, w}} + {v, {w, u}} + {w, {u, v}} = 0; inner brackets are
    // applied as D of the outer witness to the inner value.
    let t1 = quantum_adjoint(u, &poisson_bracket(v, w));
    let t2 = quantum_adjoint(v, &poisson_bracket(w, u));
    let t3 = quantum_adjoint(w, &poisson_bracket(u, v));
    let total = t1.add(&t2).add(&t3);
    Ok(if total.is_zero() {
        CheckOutcome::pass("jacobi")
    } else {
        CheckOutcome::fail("jacobi", format!("cyclic sum {:?}", total))
    })
}

/// Named property dispatch for the CLI verification suite.
pub fn property_check(
    alg: &Arc<OreAlgebra>,
    name: &str,
    seed: u64,
    maxdeg: i64,
) -> Result<Vec<CheckOutcome>, AdjointError> {
    let l = alg.root_order();
    let total = alg.total_generators();
    let mut out = Vec::new();
    // Standard central witnesses: the l-th powers of all generators.
    let witnesses: Vec<CentralWitness> = (0..total)
        .map(|i| CentralWitness::certify(OreElement::generator(alg, i).pow(l)))
        .collect::<Result<_, _>>()?;
    let rand_spec = |s: u64| specialize(&crate::orealg::random_element(alg, s, maxdeg));
    match name {
        "adjoint-derivation" => {
            for (i, u) in witnesses.iter().enumerate() {
                let a = rand_spec(seed ^ (i as u64));
                let b = rand_spec(seed.rotate_left(13) ^ (i as u64));
                out.push(check_derivation(u, &a, &b));
            }
        }
        "preimage-independence" => {
            for (i, u) in witnesses.iter().enumerate() {
                let r = crate::orealg::random_element(alg, seed.rotate_left(5) ^ (i as u64), maxdeg);
                let a = rand_spec(seed ^ (i as u64));
                out.push(check_representative_independence(u, &r, &a)?);
            }
        }
        "adjoint-product-rule" => {
            for i in 0..witnesses.len() {
                let v = &witnesses[(i + 1) % witnesses.len()];
                let a = rand_spec(seed ^ (i as u64));
                out.push(check_product_rule(&witnesses[i], v, &a)?);
            }
        }
        "bracket-antisymmetry" => {
            for i in 0..witnesses.len() {
                let v = &witnesses[(i + 1) % witnesses.len()];
                out.push(check_bracket_antisymmetry(&witnesses[i], v));
            }
        }
        "tau-adjoint-twist" => {
            for (i, u) in witnesses.iter().enumerate() {
                for tau_idx in 0..total {
                    let a = rand_spec(seed ^ ((i * 31 + tau_idx) as u64));
                    out.push(check_tau_adjoint_commutation(tau_idx, u, &a)?);
                }
            }
        }
        "theta-adjoint-shift" => {
            for (i, u) in witnesses.iter().enumerate() {
                for tau_idx in 0..total {
                    let a = rand_spec(seed ^ ((i * 37 + tau_idx) as u64));
                    out.push(check_theta_adjoint_commutation(tau_idx, u, &a)?);
                }
            }
        }
        "adjoint-expansion" => {
            for i in 0..alg.skew_count() {
                let a = specialize(&crate::orealg::random_element_above(
                    alg,
                    seed ^ (i as u64),
                    maxdeg,
                    i + 1,
                ));
                out.push(check_adjoint_expansion(alg, i, &a)?);
            }
        }
        "jacobi" => {
            // All unordered triples for small generator counts; degenerate
            // triples with a repeated witness otherwise still exercise the
            // cyclic sum.
            if witnesses.len() >= 3 {
                for i in 0..witnesses.len() {
                    for j in (i + 1)..witnesses.len() {
                        for k in (j + 1)..witnesses.len() {
                            out.push(check_jacobi(&witnesses[i], &witnesses[j], &witnesses[k])?);
                        }
                    }
                }
            } else if witnesses.len() == 2 {
                out.push(check_jacobi(&witnesses[0], &witnesses[1], &witnesses[0])?);
            }
        }
        other => {
            return Err(AdjointError::UnsupportedInput(format!(
                "unknown property '{}'",
                other
            )))
        }
    }
    Ok(out)
}

/// The property names [`property_check`] understands.
pub const PROPERTY_NAMES: &[&str] = &[
    "adjoint-derivation",
    "preimage-independence",
    "adjoint-product-rule",
    "bracket-antisymmetry",
    "tau-adjoint-twist",
    "theta-adjoint-shift",
    "adjoint-expansion",
    "jacobi",
];
