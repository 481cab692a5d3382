//! Coupling-derived scalar and matrix data.
//!
//! Everything downstream of the coupling lives here: the 2x2 transfer
//! matrices acting on per-crossing coefficient vectors, their closed-form
//! exponentials, the SU(2) skein coefficients `a`, `b` and the bracket
//! variable `q`, the GL(n) resolution coefficients with their framing
//! factors, and the derived HOMFLY parameters.
//!
//! States are coefficient pairs `(c_flat, c_smooth)` acted on by the printed
//! matrices; applying the exponential to `(1, 0)` reproduces the skein
//! coefficients of a crossing. The coupling `lambda` may be any nonzero
//! complex number and enters only through `beta = 1/(2 lambda)`.

use num_complex::Complex64;

use crate::error::EvalError;

/// The coupling, stored as `beta = 1/(2 lambda)`.
///
/// `beta = 0` (infinite coupling) is allowed and degenerates every crossing
/// operator to the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    beta: Complex64,
}

impl Coupling {
    pub fn from_beta(beta: Complex64) -> Self {
        Coupling { beta }
    }

    pub fn from_beta_re(beta: f64) -> Self {
        Coupling { beta: Complex64::new(beta, 0.0) }
    }

    pub fn from_lambda(lambda: Complex64) -> Result<Self, EvalError> {
        if lambda.norm() == 0.0 {
            return Err(EvalError::ZeroLambda);
        }
        Ok(Coupling { beta: Complex64::new(0.5, 0.0) / lambda })
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `lambda = 1/(2 beta)`; fails at `beta = 0`.
    pub fn lambda(&self) -> Result<Complex64, EvalError> {
        if self.beta.norm() == 0.0 {
            return Err(EvalError::ZeroLambda);
        }
        Ok(Complex64::new(0.5, 0.0) / self.beta)
    }
}

/// A dense 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2([
            [Complex64::new(m[0][0], 0.0), Complex64::new(m[0][1], 0.0)],
            [Complex64::new(m[1][0], 0.0), Complex64::new(m[1][1], 0.0)],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (out_row, lhs_row) in out.iter_mut().zip(&self.0) {
            for (j, cell) in out_row.iter_mut().enumerate() {
                for (l, rhs_row) in lhs_row.iter().zip(&rhs.0) {
                    *cell += l * rhs_row[j];
                }
            }
        }
        Mat2(out)
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = self.0;
        for (out_row, rhs_row) in out.iter_mut().zip(&rhs.0) {
            for (cell, r) in out_row.iter_mut().zip(rhs_row) {
                *cell += r;
            }
        }
        Mat2(out)
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Mat2(out)
    }

    pub fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (
            self.0[0][0] * v.0 + self.0[0][1] * v.1,
            self.0[1][0] * v.0 + self.0[1][1] * v.1,
        )
    }

    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// The SU(2) transfer matrix `M = [[-1, 1], [2, 1]]` with `M^2 = 3 I`.
pub fn su2_matrix() -> Mat2 {
    Mat2::from_real([[-1.0, 1.0], [2.0, 1.0]])
}

/// Exponential of a traceless 2x2 matrix times `beta`.
///
/// A traceless `M` satisfies `M^2 = c I` with `c = -det M`, so
/// `exp(beta M) = cosh(beta sqrt(c)) I + sinh(beta sqrt(c))/sqrt(c) M`,
/// with the `c -> 0` limit `I + beta M`. Both cosh and sinh/sqrt are even
/// in `sqrt(c)`, so the branch of the square root drops out.
pub fn traceless_exp(m: &Mat2, beta: Complex64) -> Result<Mat2, EvalError> {
    let tr = m.trace().norm();
    if tr > 1e-12 * (1.0 + m.max_norm()) {
        return Err(EvalError::NotTraceless(tr));
    }
    let c = -m.det();
    let (ch, sh_over_root) = cosh_sinh_ratio(beta, c);
    Ok(Mat2::identity().scale(ch).add(&m.scale(sh_over_root)))
}

/// `(cosh(beta sqrt(c)), sinh(beta sqrt(c))/sqrt(c))` with the degenerate
/// `c -> 0` limit `(1, beta)` handled by series.
fn cosh_sinh_ratio(beta: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let z2 = beta * beta * c;
    if z2.norm() < 1e-24 {
        // sinh(x)/x = 1 + x^2/6 + ..., cosh(x) = 1 + x^2/2 + ...
        let one = Complex64::new(1.0, 0.0);
        return (one + z2 / 2.0, beta * (one + z2 / 6.0));
    }
    let root = c.sqrt();
    let z = beta * root;
    (z.cosh(), z.sinh() / root)
}

/// The SU(2) coupling data: skein coefficients and bracket variable.
#[derive(Clone, Copy, Debug)]
pub struct SkeinCoeffs {
    /// `a = -cosh(sqrt(3) beta) - sinh(sqrt(3) beta)/sqrt(3)`
    pub a: Complex64,
    /// `b = -cosh(sqrt(3) beta) + sinh(sqrt(3) beta)/sqrt(3)`
    pub b: Complex64,
    /// principal square root of `a b`
    pub sqrt_ab: Complex64,
    /// `q = a / sqrt(a b)`; branch-dependent, unlike `q + 1/q` and `delta`
    pub q: Complex64,
    /// loop value `delta = -(q^2 + q^-2)`
    pub delta: Complex64,
}

/// SU(2) coefficients of the coupling.
pub fn su2_coeffs(coupling: Coupling) -> SkeinCoeffs {
    let beta = coupling.beta();
    let root3 = Complex64::new(3.0f64.sqrt(), 0.0);
    let ch = (beta * root3).cosh();
    let sh = (beta * root3).sinh();
    let a = -ch - sh / root3;
    let b = -ch + sh / root3;
    let sqrt_ab = (a * b).sqrt();
    let q = a / sqrt_ab;
    let q2 = q * q;
    let delta = -(q2 + q2.inv());
    SkeinCoeffs { a, b, sqrt_ab, q, delta }
}

/// The GL(n) transfer data: `(M~_n, M_n, Delta_n)` with
/// `M~_n = [[0,1],[2,n]]`, `M_n` its traceless part, `M_n^2 = Delta_n I`,
/// `Delta_n = n^2/4 + 2`.
pub fn gln_matrices(n: u32) -> Result<(Mat2, Mat2, f64), EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroRank);
    }
    let nf = n as f64;
    let mtilde = Mat2::from_real([[0.0, 1.0], [2.0, nf]]);
    let m = Mat2::from_real([[-nf / 2.0, 1.0], [2.0, nf / 2.0]]);
    let delta = nf * nf / 4.0 + 2.0;
    Ok((mtilde, m, delta))
}

/// Per-crossing resolution coefficients for the SU(2) engine: the column
/// `exp(sign beta M) (1, 0)`, without any framing factor.
pub fn su2_resolution_coeffs(coupling: Coupling, sign: i64) -> (Complex64, Complex64) {
    let beta = coupling.beta();
    let e = sign as f64;
    let root3 = Complex64::new(3.0f64.sqrt(), 0.0);
    let ch = (beta * root3).cosh();
    let sh = (beta * root3).sinh();
    let c_flat = ch - e * sh / root3;
    let c_smooth = e * 2.0 * sh / root3;
    (c_flat, c_smooth)
}

/// Per-crossing resolution coefficients for the GL(n)/U(n) engine: the
/// column `exp(sign beta M~_n) (1, 0)`, framing factor `e^{sign beta n/2}`
/// included.
pub fn gln_resolution_coeffs(
    n: u32,
    coupling: Coupling,
    sign: i64,
) -> Result<(Complex64, Complex64), EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroRank);
    }
    let beta = coupling.beta();
    let e = sign as f64;
    let nf = n as f64;
    let root = Complex64::new((nf * nf / 4.0 + 2.0).sqrt(), 0.0);
    let ch = (beta * root).cosh();
    let sh = (beta * root).sinh();
    let framing = (beta * (e * nf / 2.0)).exp();
    let c_flat = framing * (ch - e * (nf / 2.0) * sh / root);
    let c_smooth = framing * e * 2.0 * sh / root;
    Ok((c_flat, c_smooth))
}

/// The framing factor `e^{beta n/2}` for one positive crossing.
pub fn framing_factor(n: u32, coupling: Coupling) -> Complex64 {
    (coupling.beta() * (n as f64 / 2.0)).exp()
}

/// Derived HOMFLY parameters `(q_n, z_n)` for the standard-form relation
/// `q_n <L+> - q_n^-1 <L-> = z_n <L0>`.
///
/// With `T = tanh(beta sqrt(Delta_n))`, `r = (n / (2 sqrt(Delta_n))) T` and
/// `N = sqrt(1 - r^2)`:
///
/// `q_n = e^{-beta n/2} (1 + r) / N`, `z_n = (4 / sqrt(Delta_n))
/// sinh(beta sqrt(Delta_n)) / N`.
///
/// The pair satisfies `q_n C+_s - q_n^-1 C-_s = z_n` and
/// `q_n C+_f - q_n^-1 C-_f = 0` against the raw resolution coefficients
/// `(C+-_f, C+-_s)` of [`gln_resolution_coeffs`]; the test suite pins this
/// identity numerically over random couplings.
pub fn homfly_params(n: u32, coupling: Coupling) -> Result<(Complex64, Complex64), EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroRank);
    }
    let beta = coupling.beta();
    let nf = n as f64;
    let root = Complex64::new((nf * nf / 4.0 + 2.0).sqrt(), 0.0);
    let t = (beta * root).tanh();
    let r = t * (nf / 2.0) / root;
    let one = Complex64::new(1.0, 0.0);
    let n2 = one - r * r;
    if n2.norm() < 1e-14 {
        return Err(EvalError::DegenerateNormalizer);
    }
    let norm = n2.sqrt();
    let q = (-beta * (nf / 2.0)).exp() * (one + r) / norm;
    let z = (beta * root).sinh() * 4.0 / root / norm;
    Ok((q, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-10;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// 40-term power-series oracle for the matrix exponential.
    fn exp_series(m: &Mat2, beta: Complex64) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut term = Mat2::identity();
        for j in 1..40 {
            term = term.mul(&m.scale(beta / j as f64));
            acc = acc.add(&term);
        }
        acc
    }

    fn assert_mat_close(a: &Mat2, b: &Mat2, tol: f64) {
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (a.0[i][j] - b.0[i][j]).norm() < tol,
                    "entry ({i},{j}): {:?} vs {:?}",
                    a.0[i][j],
                    b.0[i][j]
                );
            }
        }
    }

    #[test]
    fn su2_matrix_squares_to_three() {
        let m = su2_matrix();
        let m2 = m.mul(&m);
        assert_mat_close(&m2, &Mat2::identity().scale(c(3.0, 0.0)), 1e-14);
    }

    #[test]
    fn exp_matches_series_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let y = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let m = Mat2([[x, y], [z, -x]]);
            let beta = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
            let got = traceless_exp(&m, beta).unwrap();
            assert_mat_close(&got, &exp_series(&m, beta), TOL);
        }
    }

    #[test]
    fn exp_at_zero_is_identity() {
        let got = traceless_exp(&su2_matrix(), c(0.0, 0.0)).unwrap();
        assert_mat_close(&got, &Mat2::identity(), 1e-15);
    }

    #[test]
    fn exp_rotation_case() {
        // M = [[0,1],[-1,0]] has c = -1; beta = pi/2 rotates by a quarter turn
        let m = Mat2::from_real([[0.0, 1.0], [-1.0, 0.0]]);
        let got = traceless_exp(&m, c(std::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        assert_mat_close(&got, &m, 1e-12);
        assert_mat_close(&got, &exp_series(&m, c(std::f64::consts::FRAC_PI_2, 0.0)), TOL);
    }

    #[test]
    fn exp_rejects_trace() {
        let m = Mat2::from_real([[1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(traceless_exp(&m, c(1.0, 0.0)), Err(EvalError::NotTraceless(_))));
    }

    #[test]
    fn exp_inverse_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let x = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let y = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let m = Mat2([[x, y], [z, -x]]);
            let beta = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
            let prod = traceless_exp(&m, beta)
                .unwrap()
                .mul(&traceless_exp(&m, -beta).unwrap());
            assert_mat_close(&prod, &Mat2::identity(), TOL);
        }
    }

    #[test]
    fn coeffs_at_zero_coupling() {
        let s = su2_coeffs(Coupling::from_beta_re(0.0));
        assert!((s.a - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((s.b - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((s.sqrt_ab - c(1.0, 0.0)).norm() < 1e-14);
        assert!((s.q - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((s.delta - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn coeff_sum_and_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let beta = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
            let s = su2_coeffs(Coupling::from_beta(beta));
            let root3 = c(3.0f64.sqrt(), 0.0);
            assert!((s.a + s.b + (beta * root3).cosh() * 2.0).norm() < TOL);
            assert!((s.b - s.a - (beta * root3).sinh() * 2.0 / root3).norm() < TOL);
            // parity: beta -> -beta swaps a and b
            let sm = su2_coeffs(Coupling::from_beta(-beta));
            assert!((s.a - sm.b).norm() < TOL);
            assert!((s.b - sm.a).norm() < TOL);
            // q sqrt_ab = a and sqrt_ab^2 = ab
            assert!((s.q * s.sqrt_ab - s.a).norm() < TOL);
            assert!((s.sqrt_ab * s.sqrt_ab - s.a * s.b).norm() < TOL);
            // ab = cosh^2 - sinh^2/3
            let ch = (beta * root3).cosh();
            let sh = (beta * root3).sinh();
            assert!((s.a * s.b - (ch * ch - sh * sh / 3.0)).norm() < TOL);
        }
    }

    #[test]
    fn beta_value_crosschecks_exponential() {
        // a and b against the matrix exponential applied to (1, 0):
        // a = -(f + s), b = -f for a positive crossing
        let coupling = Coupling::from_beta_re(0.1);
        let s = su2_coeffs(coupling);
        let e = traceless_exp(&su2_matrix(), c(0.1, 0.0)).unwrap();
        let (f, sm) = e.apply((c(1.0, 0.0), c(0.0, 0.0)));
        assert!((s.a + f + sm).norm() < 1e-12);
        assert!((s.b + f).norm() < 1e-12);
    }

    #[test]
    fn gln_matrix_shapes() {
        let (mt2, m2, d2) = gln_matrices(2).unwrap();
        assert_eq!(d2, 3.0);
        assert_mat_close(&m2, &su2_matrix(), 1e-15);
        assert_mat_close(
            &mt2,
            &Mat2::from_real([[0.0, 1.0], [2.0, 2.0]]),
            1e-15,
        );
        let (_, m1, d1) = gln_matrices(1).unwrap();
        assert_eq!(d1, 2.25);
        assert_eq!(d1.sqrt(), 1.5);
        assert_mat_close(&m1.mul(&m1), &Mat2::identity().scale(c(2.25, 0.0)), 1e-14);
        assert!(gln_matrices(0).is_err());
        for n in 1..=6 {
            let (_, m, d) = gln_matrices(n).unwrap();
            assert_mat_close(&m.mul(&m), &Mat2::identity().scale(c(d, 0.0)), 1e-12);
        }
    }

    #[test]
    fn resolution_coeffs_against_matrix_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let beta = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.4..0.4));
            let coupling = Coupling::from_beta(beta);
            for n in 1..=4u32 {
                for sign in [1i64, -1] {
                    let (mtilde, _, _) = gln_matrices(n).unwrap();
                    // oracle: series exponential of sign*beta*M~ applied to (1,0)
                    let e = exp_series(&mtilde, beta * sign as f64);
                    let (f, s) = e.apply((c(1.0, 0.0), c(0.0, 0.0)));
                    let (cf, cs) = gln_resolution_coeffs(n, coupling, sign).unwrap();
                    assert!((cf - f).norm() < TOL, "flat n={n} sign={sign}");
                    assert!((cs - s).norm() < TOL, "smooth n={n} sign={sign}");
                }
            }
            // su2 pair = gln pair at n = 2 with the framing factor stripped
            for sign in [1i64, -1] {
                let (cf, cs) = gln_resolution_coeffs(2, coupling, sign).unwrap();
                let (sf, ss) = su2_resolution_coeffs(coupling, sign);
                let framing = (beta * sign as f64).exp();
                assert!((cf - framing * sf).norm() < TOL);
                assert!((cs - framing * ss).norm() < TOL);
            }
        }
    }

    #[test]
    fn rank_one_coefficients_sum_to_abelian_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let beta = c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.4..0.4));
            for sign in [1i64, -1] {
                let (f, s) = gln_resolution_coeffs(1, Coupling::from_beta(beta), sign).unwrap();
                let expect = (beta * 2.0 * sign as f64).exp();
                assert!((f + s - expect).norm() < TOL);
            }
        }
    }

    #[test]
    fn coefficient_pair_round_trips_through_inverse() {
        // exp(-sign beta M~) maps the pair exp(sign beta M~)(1,0) back to (1,0)
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let beta = c(rng.gen_range(-0.8..0.8), rng.gen_range(-0.3..0.3));
            let coupling = Coupling::from_beta(beta);
            for n in 1..=4u32 {
                for sign in [1i64, -1] {
                    let pair = gln_resolution_coeffs(n, coupling, sign).unwrap();
                    let (_, mn, _) = gln_matrices(n).unwrap();
                    let e = sign as f64;
                    let inv_framing = (-beta * (e * n as f64 / 2.0)).exp();
                    let back = traceless_exp(&mn, -beta * e)
                        .unwrap()
                        .scale(inv_framing)
                        .apply(pair);
                    assert!((back.0 - c(1.0, 0.0)).norm() < TOL, "n={n} sign={sign}");
                    assert!(back.1.norm() < TOL, "n={n} sign={sign}");
                }
            }
        }
    }

    #[test]
    fn beta_zero_coeffs_are_identity() {
        for n in 1..=4 {
            for sign in [1i64, -1] {
                let (f, s) =
                    gln_resolution_coeffs(n, Coupling::from_beta_re(0.0), sign).unwrap();
                assert_eq!(f, c(1.0, 0.0));
                assert_eq!(s.norm(), 0.0);
            }
        }
    }

    #[test]
    fn homfly_params_satisfy_defining_identity() {
        // q_n C+ - q_n^-1 C- = z_n on the smooth part, 0 on the flat part,
        // for 20 random (n, beta) pairs including complex couplings
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for k in 0..20 {
            let beta = if k < 14 {
                c(rng.gen_range(-1.0..1.0), 0.0)
            } else {
                c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.4..0.4))
            };
            let n = rng.gen_range(1..=4u32);
            let coupling = Coupling::from_beta(beta);
            let (q, z) = homfly_params(n, coupling).unwrap();
            let (fp, sp) = gln_resolution_coeffs(n, coupling, 1).unwrap();
            let (fm, sm) = gln_resolution_coeffs(n, coupling, -1).unwrap();
            let flat = q * fp - fm / q;
            let smooth = q * sp - sm / q;
            assert!(flat.norm() < TOL, "flat residual {flat} at n={n} beta={beta}");
            assert!((smooth - z).norm() < TOL, "smooth residual at n={n} beta={beta}");
        }
    }

    #[test]
    fn homfly_params_degenerate_at_zero() {
        let (q, z) = homfly_params(3, Coupling::from_beta_re(0.0)).unwrap();
        assert!((q - c(1.0, 0.0)).norm() < 1e-14);
        assert!(z.norm() < 1e-14);
    }

    #[test]
    fn lambda_beta_round_trip() {
        let coupling = Coupling::from_lambda(c(2.0, 1.0)).unwrap();
        let lam = coupling.lambda().unwrap();
        assert!((lam - c(2.0, 1.0)).norm() < 1e-15);
        assert!((coupling.beta() * lam * 2.0 - c(1.0, 0.0)).norm() < 1e-15);
        assert!(Coupling::from_lambda(c(0.0, 0.0)).is_err());
        assert!(Coupling::from_beta_re(0.0).lambda().is_err());
    }
}
