//! Local Boltzmann weights and exact checkers for the local identities.
//!
//! Leg convention: in a two-leg operator the first factor is the left tensor
//! slot and the most significant index digit, so a pair of states `(s1, s2)`
//! has 0-based index `2·(s1−1) + (s2−1)`.

use crate::error::{Error, Result};
use crate::exact_arith::{ExactMatrix, ExactVector, Rational};

/// Normalized six-vertex weight matrix `(θ + P)/(θ + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub theta: Rational,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    pub theta: Rational,
    pub q: Rational,
    pub matrix: ExactMatrix,
}

/// `S = [[0, 1], [−1, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMatrix {
    pub matrix: ExactMatrix,
}

impl SMatrix {
    pub fn new() -> Self {
        SMatrix { matrix: ExactMatrix::from_ints(&[&[0, 1], &[-1, 0]]) }
    }

    pub fn inverse(&self) -> ExactMatrix {
        self.matrix.scale(&-Rational::one())
    }
}

impl Default for SMatrix {
    fn default() -> Self {
        Self::new()
    }
}

/// The singlet `Y = (0, 1, −1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletVector {
    pub vector: ExactVector,
}

impl SingletVector {
    pub fn new() -> Self {
        SingletVector { vector: ExactVector::from_ints(&[0, 1, -1, 0]) }
    }

    /// `Y Yᵗ`.
    pub fn outer(&self) -> ExactMatrix {
        let y = ExactMatrix::column(&self.vector);
        y.mul(&y.transpose()).expect("4x1 times 1x4")
    }
}

impl Default for SingletVector {
    fn default() -> Self {
        Self::new()
    }
}

pub fn permutation() -> ExactMatrix {
    ExactMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
}

/// `A = (I − P)/2`.
pub fn antisymmetrizer() -> ExactMatrix {
    let half = Rational::new(1, 2).expect("1/2");
    ExactMatrix::identity(4).sub(&permutation()).expect("4x4").scale(&half)
}

pub fn r_matrix(theta: &Rational) -> Result<RMatrix> {
    let norm = theta + 1;
    if norm.is_zero() {
        return Err(Error::Pole(format!("R-matrix normalization at theta = {theta}")));
    }
    let matrix = ExactMatrix::identity(4).scale(theta).add(&permutation()).expect("4x4");
    let matrix = matrix.scale(&norm.recip()?);
    Ok(RMatrix { theta: theta.clone(), matrix })
}

/// `diag(1, (q − θ)/(q + θ))`.
pub fn k_matrix(theta: &Rational, q: &Rational) -> Result<KMatrix> {
    let norm = q + theta;
    if norm.is_zero() {
        return Err(Error::Pole(format!("K-matrix normalization at q + theta = 0 (theta = {theta})")));
    }
    let lower = (q - theta).checked_div(&norm)?;
    Ok(KMatrix {
        theta: theta.clone(),
        q: q.clone(),
        matrix: ExactMatrix::diagonal(&[Rational::one(), lower]),
    })
}

/// Unnormalized Lax operator `z + P` on (site ⊗ auxiliary).
pub fn lax(z: &Rational) -> ExactMatrix {
    ExactMatrix::identity(4).scale(z).add(&permutation()).expect("4x4")
}

/// Conjugate-representation Lax operator `z + 1 − Σ e_ab ⊗ e_ab`.
pub fn lax_conjugate(z: &Rational) -> ExactMatrix {
    let mut sum = ExactMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            sum[(2 * a + a, 2 * b + b)] = Rational::one();
        }
    }
    ExactMatrix::identity(4).scale(&(z + 1)).sub(&sum).expect("4x4")
}

/// Embed a two-leg operator into `n` two-dimensional spaces, its first leg on
/// space `first` and second leg on space `second` (0-based, space 0 most
/// significant).
pub fn embed_pair(op: &ExactMatrix, first: usize, second: usize, n: usize) -> ExactMatrix {
    assert!(first != second && first < n && second < n);
    let dim = 1 << n;
    let bit = |idx: usize, space: usize| (idx >> (n - 1 - space)) & 1;
    let mut out = ExactMatrix::zeros(dim, dim);
    for col in 0..dim {
        let local_col = 2 * bit(col, first) + bit(col, second);
        let base = col & !(1 << (n - 1 - first)) & !(1 << (n - 1 - second));
        for local_row in 0..4 {
            let x = &op[(local_row, local_col)];
            if x.is_zero() {
                continue;
            }
            let row = base | ((local_row >> 1) << (n - 1 - first)) | ((local_row & 1) << (n - 1 - second));
            out[(row, col)] = x.clone();
        }
    }
    out
}

/// Embed a one-leg operator on `space` among `n` spaces.
pub fn embed_single(op: &ExactMatrix, space: usize, n: usize) -> ExactMatrix {
    (0..n).fold(ExactMatrix::identity(1), |acc, s| {
        if s == space {
            acc.tensor(op)
        } else {
            acc.tensor(&ExactMatrix::identity(2))
        }
    })
}

/// Transpose in the first leg only.
pub fn partial_transpose_first(op: &ExactMatrix) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[(2 * b + c, 2 * a + d)] = op[(2 * a + c, 2 * b + d)].clone();
                }
            }
        }
    }
    out
}

fn product(factors: &[&ExactMatrix]) -> ExactMatrix {
    let (first, rest) = factors.split_first().expect("nonempty");
    rest.iter().fold((*first).clone(), |acc, m| acc.mul(m).expect("conformable"))
}

/// Yang–Baxter equation for the normalized R-matrix on three spaces.
pub fn check_ybe(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Result<bool> {
    let r12 = embed_pair(&r_matrix(&(theta1 - theta2))?.matrix, 0, 1, 3);
    let r13 = embed_pair(&r_matrix(&(theta1 - theta3))?.matrix, 0, 2, 3);
    let r23 = embed_pair(&r_matrix(&(theta2 - theta3))?.matrix, 1, 2, 3);
    Ok(product(&[&r12, &r13, &r23]) == product(&[&r23, &r13, &r12]))
}

/// [`check_ybe`] for all eight sign-flip variants `θ_i → ±θ_i`.
pub fn check_ybe_all_signs(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Result<bool> {
    for mask in 0..8u8 {
        let flip = |bit: u8, t: &Rational| if mask & bit != 0 { -t } else { t.clone() };
        if !check_ybe(&flip(1, theta1), &flip(2, theta2), &flip(4, theta3))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R(θ1−θ2) K1(θ1) R(θ1+θ2) K2(θ2) = K2(θ2) R(θ1+θ2) K1(θ1) R(θ1−θ2)`.
pub fn check_bybe(theta1: &Rational, theta2: &Rational, q: &Rational) -> Result<bool> {
    let r_minus = r_matrix(&(theta1 - theta2))?.matrix;
    let r_plus = r_matrix(&(theta1 + theta2))?.matrix;
    let i2 = ExactMatrix::identity(2);
    let k1 = k_matrix(theta1, q)?.matrix.tensor(&i2);
    let k2 = i2.tensor(&k_matrix(theta2, q)?.matrix);
    Ok(product(&[&r_minus, &k1, &r_plus, &k2]) == product(&[&k2, &r_plus, &k1, &r_minus]))
}

/// `L(z) L(−z) = (1 − z²)` for the plain and the conjugate Lax operator.
pub fn check_unitarity(z: &Rational) -> bool {
    let expected = ExactMatrix::identity(4).scale(&(Rational::one() - z * z));
    let plain = lax(z).mul(&lax(&-z)).expect("4x4");
    let conj = lax_conjugate(z).mul(&lax_conjugate(&-z)).expect("4x4");
    plain == expected && conj == expected
}

/// Site-space transpose: `Lᵗ(z) = −L̄(−z−1)`.
pub fn check_transpose(z: &Rational) -> bool {
    partial_transpose_first(&lax(z)) == lax_conjugate(&(-z - 1)).scale(&-Rational::one())
}

/// The two bootstrap identities on spaces `(a, b, site)`:
/// `L_a(z) L_b(z−1) (Y_ab ⊗ I) = (z+1)(z−1) (Y_ab ⊗ I)` and the same with
/// `a ↔ b` in the Lax factors.
pub fn check_bootstrap(z: &Rational) -> (bool, bool) {
    let (a, b, site) = (0, 1, 2);
    let y_id = ExactMatrix::column(&SingletVector::new().vector).tensor(&ExactMatrix::identity(2));
    let expected = y_id.scale(&((z + 1) * (z - 1)));
    let zm1 = z - 1;
    let la = |w: &Rational| embed_pair(&lax(w), site, a, 3);
    let lb = |w: &Rational| embed_pair(&lax(w), site, b, 3);
    let first = product(&[&la(z), &lb(&zm1), &y_id]);
    let second = product(&[&lb(z), &la(&zm1), &y_id]);
    (first == expected, second == expected)
}

/// `L(0) = P`, `L(−1) = −2A = −Y Yᵗ`, `A = Y Yᵗ / 2` and `A² = A`.
pub fn check_special_points() -> bool {
    let a = antisymmetrizer();
    let yy = SingletVector::new().outer();
    let half = Rational::new(1, 2).expect("1/2");
    lax(&Rational::zero()) == permutation()
        && lax(&-Rational::one()) == a.scale(&Rational::from_integer(-2))
        && lax(&-Rational::one()) == yy.scale(&-Rational::one())
        && a == yy.scale(&half)
        && a.mul(&a).expect("4x4") == a
}

/// `(S ⊗ I) L(z) (S⁻¹ ⊗ I) = L̄(z)` with `S` on the site leg.
pub fn check_similarity(z: &Rational) -> bool {
    let s = SMatrix::new();
    let i2 = ExactMatrix::identity(2);
    let left = s.matrix.tensor(&i2);
    let right = s.inverse().tensor(&i2);
    product(&[&left, &lax(z), &right]) == lax_conjugate(z)
}
