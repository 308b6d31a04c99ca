//! Left-invariant data on a Lie group: structure constants, a constant
//! metric, and the Boeckx family of non-Sasakian (κ,μ) Lie algebras.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Field;

/// Index layout of the global basis `(ξ, X₁,…,X_n, Y₁,…,Y_n)`.
///
/// `x(i)` and `y(i)` are 1-based like the usual notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    pub n: usize,
}

impl Basis {
    pub const XI: usize = 0;

    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn xi(&self) -> usize {
        Self::XI
    }

    pub fn x(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        i
    }

    pub fn y(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        self.n + i
    }

    pub fn label(&self, index: usize) -> String {
        match index {
            0 => "xi".to_string(),
            i if i <= self.n => format!("X{i}"),
            i => format!("Y{}", i - self.n),
        }
    }

    pub fn unit<S: Field>(&self, index: usize) -> Vector<S> {
        Vector::unit(self.dim(), index)
    }
}

/// A finite-dimensional Lie algebra with a left-invariant metric, given in a
/// fixed basis `e_0..e_{d-1}`: `[e_i, e_j] = Σ_k c^k_ij e_k`, `g(e_i, e_j) = G_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    constants: Vec<S>,
    metric: Matrix<S>,
}

impl<S: Field> LieAlgebra<S> {
    /// Builds an algebra from an explicit table, `constants[(i·d + j)·d + k] = c^k_ij`.
    ///
    /// Only antisymmetry and the metric's shape are checked; Jacobi is left to
    /// [`check_jacobi`] so that faulty tables can be constructed and diagnosed.
    pub fn from_constants(dim: usize, constants: Vec<S>, metric: Matrix<S>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        if metric.rows() != dim || metric.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: metric.rows() });
        }
        if !metric.is_symmetric() {
            return Err(Error::InvalidParameter("metric must be symmetric".into()));
        }
        let algebra = Self { dim, constants, metric };
        if let Some((i, j, k)) = algebra.antisymmetry_violation() {
            return Err(Error::Structure { identity: "bracket antisymmetry".into(), witness: vec![i, j, k] });
        }
        Ok(algebra)
    }

    fn zero(dim: usize, metric: Matrix<S>) -> Self {
        Self { dim, constants: vec![S::zero(); dim * dim * dim], metric }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Matrix<S> {
        &self.metric
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Sets `[e_i, e_j]` to `value` and `[e_j, e_i]` to `-value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &Vector<S>) {
        for k in 0..self.dim {
            let d = self.dim;
            self.constants[(i * d + j) * d + k] = value[k].clone();
            self.constants[(j * d + i) * d + k] = -value[k].clone();
        }
    }

    /// Overwrites a single constant `c^k_ij` (and its antisymmetric partner).
    /// Used to inject faults.
    pub fn with_constant(mut self, i: usize, j: usize, k: usize, value: S) -> Self {
        let d = self.dim;
        self.constants[(i * d + j) * d + k] = value.clone();
        self.constants[(j * d + i) * d + k] = -value;
        self
    }

    /// Same structure constants, different metric.
    pub fn with_metric(&self, metric: Matrix<S>) -> Result<Self> {
        Self::from_constants(self.dim, self.constants.clone(), metric)
    }

    /// `[e_i, e_j]` as a vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector<S> {
        let start = (i * self.dim + j) * self.dim;
        Vector::new(self.constants[start..start + self.dim].to_vec())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &Vector<S>, v: &Vector<S>) -> Result<Vector<S>> {
        for w in [u, v] {
            if w.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: w.dim() });
            }
        }
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() || i == j {
                    continue;
                }
                out.axpy(&(u[i].clone() * v[j].clone()), &self.basis_bracket(i, j));
            }
        }
        Ok(out)
    }

    pub fn inner(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        u.dot(&self.metric.apply(v))
    }

    fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let sum = self.constant(i, j, k).clone() + self.constant(j, i, k).clone();
                    if !sum.is_negligible() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Outcome of a Jacobi sweep over all basis triples `i < j < k`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport<S> {
    pub max_residual: S,
    pub violations: Vec<(usize, usize, usize)>,
}

impl<S: Field> JacobiReport<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `Σ_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj)` for every
/// triple and output index. The cyclic sum is totally antisymmetric, so
/// triples with `i < j < k` cover everything.
pub fn check_jacobi<S: Field>(algebra: &LieAlgebra<S>) -> JacobiReport<S> {
    let d = algebra.dim();
    let mut max_residual = S::zero();
    let mut violations = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let mut residual = Vector::zeros(d);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for m in 0..d {
                        let outer = algebra.constant(a, b, m);
                        if outer.is_zero() {
                            continue;
                        }
                        let inner = algebra.basis_bracket(m, c);
                        residual.axpy(outer, &inner);
                    }
                }
                let worst = residual.max_abs();
                if !residual.is_negligible() {
                    violations.push((i, j, k));
                }
                if worst > max_residual {
                    max_residual = worst;
                }
            }
        }
    }
    JacobiReport { max_residual, violations }
}

/// Boeckx's Lie algebra model of a non-Sasakian (κ,μ)-space with `I ≤ -1`,
/// with the orthonormal left-invariant metric.
#[derive(Debug, Clone, PartialEq)]
pub struct BoeckxModel<S> {
    pub n: usize,
    pub alpha: S,
    pub beta: S,
    pub algebra: LieAlgebra<S>,
}

impl<S: Field> BoeckxModel<S> {
    pub fn basis(&self) -> Basis {
        Basis::new(self.n)
    }
}

/// Builds the `(2n+1)`-dimensional model for parameters `α ≥ 0`, `β² > α²`.
///
/// Brackets not set below vanish.
pub fn build_boeckx_model<S: Field>(n: usize, alpha: S, beta: S) -> Result<BoeckxModel<S>> {
    if n < 2 {
        return Err(Error::UnsupportedDimension { n });
    }
    let degenerate = |reason: &str| Error::DegenerateModel {
        alpha: alpha.to_string(),
        beta: beta.to_string(),
        reason: reason.to_string(),
    };
    if alpha.is_negative() {
        return Err(degenerate("alpha must be non-negative"));
    }
    if beta.clone() * beta.clone() <= alpha.clone() * alpha.clone() {
        return Err(degenerate("beta^2 must exceed alpha^2"));
    }

    let basis = Basis::new(n);
    let dim = basis.dim();
    let mut algebra = LieAlgebra::zero(dim, Matrix::identity(dim));
    let (a, b) = (alpha.clone(), beta.clone());
    let half = S::half();
    let two = S::two();
    let a2 = half.clone() * a.clone() * a.clone();
    let b2 = half.clone() * b.clone() * b.clone();
    let ab = half * a.clone() * b.clone();

    let combo = |terms: &[(usize, S)]| {
        let mut v = Vector::<S>::zeros(dim);
        for (idx, coef) in terms {
            v[*idx] = v[*idx].clone() + coef.clone();
        }
        v
    };
    let (xi, x, y) = (basis.xi(), |i| basis.x(i), |i| basis.y(i));

    // [ξ, ·]
    algebra.set_bracket(xi, x(1), &combo(&[(x(2), -ab.clone()), (y(1), -a2.clone())]));
    algebra.set_bracket(xi, x(2), &combo(&[(x(1), ab.clone()), (y(2), -a2.clone())]));
    algebra.set_bracket(xi, y(1), &combo(&[(x(1), b2.clone()), (y(2), -ab.clone())]));
    algebra.set_bracket(xi, y(2), &combo(&[(x(2), b2.clone()), (y(1), ab.clone())]));
    for i in 3..=n {
        algebra.set_bracket(xi, x(i), &combo(&[(y(i), -a2.clone())]));
        algebra.set_bracket(xi, y(i), &combo(&[(x(i), b2.clone())]));
    }

    // [X₁, X_i] = αX_i, [Y₂, Y_i] = βY_i
    for i in 2..=n {
        algebra.set_bracket(x(1), x(i), &combo(&[(x(i), a.clone())]));
    }
    for i in (1..=n).filter(|&i| i != 2) {
        algebra.set_bracket(y(2), y(i), &combo(&[(y(i), b.clone())]));
    }

    // [X_i, Y_j]
    algebra.set_bracket(x(1), y(1), &combo(&[(x(2), -b.clone()), (xi, two.clone())]));
    algebra.set_bracket(x(2), y(1), &combo(&[(x(1), b.clone()), (y(2), -a.clone())]));
    algebra.set_bracket(x(2), y(2), &combo(&[(y(1), a.clone()), (xi, two.clone())]));
    for i in 3..=n {
        algebra.set_bracket(x(2), y(i), &combo(&[(x(i), b.clone())]));
        algebra.set_bracket(x(i), y(1), &combo(&[(y(i), -a.clone())]));
        algebra.set_bracket(
            x(i),
            y(i),
            &combo(&[(x(2), -b.clone()), (y(1), a.clone()), (xi, two.clone())]),
        );
    }

    Ok(BoeckxModel { n, alpha, beta, algebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_rational::BigRational;

    fn vec_of(basis: Basis, terms: &[(usize, i64)]) -> Vector<BigRational> {
        let mut v = Vector::zeros(basis.dim());
        for &(i, c) in terms {
            v[i] = int(c);
        }
        v
    }

    #[test]
    fn bracket_rows_alpha_zero_beta_two() {
        let m = build_boeckx_model(2, int(0), int(2)).unwrap();
        let b = m.basis();
        assert_eq!(m.algebra.basis_bracket(b.xi(), b.y(1)), vec_of(b, &[(b.x(1), 2)]));
        assert_eq!(m.algebra.basis_bracket(b.x(1), b.y(1)), vec_of(b, &[(b.x(2), -2), (b.xi(), 2)]));
        assert_eq!(m.algebra.basis_bracket(b.x(2), b.y(2)), vec_of(b, &[(b.xi(), 2)]));
    }

    #[test]
    fn bracket_rows_alpha_one_beta_three() {
        let m = build_boeckx_model(2, int(1), int(3)).unwrap();
        let b = m.basis();
        assert_eq!(m.algebra.basis_bracket(b.x(2), b.y(1)), vec_of(b, &[(b.x(1), 3), (b.y(2), -1)]));
    }

    #[test]
    fn higher_index_mixed_bracket() {
        let m = build_boeckx_model(3, int(1), int(3)).unwrap();
        let b = m.basis();
        assert_eq!(
            m.algebra.basis_bracket(b.x(3), b.y(3)),
            vec_of(b, &[(b.x(2), -3), (b.y(1), 1), (b.xi(), 2)])
        );
    }

    #[test]
    fn bracket_examples() {
        let m = build_boeckx_model(3, int(1), int(3)).unwrap();
        let b = m.basis();
        let u = vec_of(b, &[(0, 1), (2, -3), (5, 7)]);
        assert!(m.algebra.bracket(&u, &u).unwrap().is_negligible());
        let x1: Vector<BigRational> = b.unit(b.x(1));
        assert!(m.algebra.bracket(&x1, &b.unit(b.y(2))).unwrap().is_negligible());
        // [Y₂, Y₁] = βY₁ gives [Y₁, Y₂] = -βY₁
        assert_eq!(
            m.algebra.bracket(&b.unit(b.y(1)), &b.unit(b.y(2))).unwrap(),
            vec_of(b, &[(b.y(1), -3)])
        );
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let m = build_boeckx_model(2, int(0), int(2)).unwrap();
        let err = m.algebra.bracket(&Vector::zeros(5), &Vector::zeros(7)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 5, found: 7 });
    }

    #[test]
    fn rejects_small_dimension_and_degenerate_parameters() {
        assert_eq!(build_boeckx_model(1, int(0), int(2)).unwrap_err(), Error::UnsupportedDimension { n: 1 });
        assert!(matches!(build_boeckx_model(2, int(1), int(1)), Err(Error::DegenerateModel { .. })));
        assert!(matches!(build_boeckx_model(2, int(2), int(1)), Err(Error::DegenerateModel { .. })));
        assert!(matches!(build_boeckx_model(2, int(-1), int(3)), Err(Error::DegenerateModel { .. })));
    }

    #[test]
    fn jacobi_holds_on_models() {
        for (n, a, b) in [(2, 0, 2), (3, 1, 3), (4, 2, 3)] {
            let m = build_boeckx_model(n, int(a), int(b)).unwrap();
            let report = check_jacobi(&m.algebra);
            assert!(report.holds(), "n={n} a={a} b={b}: {:?}", report.violations);
            assert_eq!(report.max_residual, int(0));
        }
    }

    #[test]
    fn jacobi_flags_corrupted_constant() {
        let m = build_boeckx_model(2, int(1), int(3)).unwrap();
        let b = m.basis();
        let (i, j) = (b.x(1), b.y(1));
        let bad = m.algebra.clone().with_constant(i, j, b.x(2), int(5));
        let report = check_jacobi(&bad);
        assert!(!report.holds());
        assert!(report.max_residual > int(0));
        for &(p, q, r) in &report.violations {
            let t = [p, q, r];
            assert!(t.contains(&i) || t.contains(&j), "unexpected witness {t:?}");
        }
    }

    #[test]
    fn from_constants_rejects_asymmetric_table() {
        let mut c = vec![int(0); 27];
        // c^2_{01} set without its antisymmetric partner
        c[5] = int(1);
        let err = LieAlgebra::from_constants(3, c, Matrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::Structure { .. }));
    }

    #[test]
    fn labels() {
        let b = Basis::new(3);
        assert_eq!(b.label(0), "xi");
        assert_eq!(b.label(b.x(3)), "X3");
        assert_eq!(b.label(b.y(1)), "Y1");
    }
}
