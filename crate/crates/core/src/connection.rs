//! Levi-Civita connection and Riemann curvature of a left-invariant metric.
//!
//! For left-invariant fields the metric coefficients are constant, so the
//! Koszul formula reduces to
//! `2 g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
//! Curvature uses `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{inner, solve_diagonal_metric, Matrix, Vector};
use crate::scalar::Field;

/// `∇_{e_i} e_j = Σ_k Γ^k_ij e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable<S> {
    dim: usize,
    gamma: Vec<S>,
}

impl<S: Field> ConnectionTable<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^k_ij`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &S {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_derivative(&self, i: usize, j: usize) -> Vector<S> {
        let start = (i * self.dim + j) * self.dim;
        Vector::new(self.gamma[start..start + self.dim].to_vec())
    }

    /// Matrix of `Y ↦ ∇_u Y` on left-invariant fields: column `j` is `∇_u e_j`.
    pub fn derivative_matrix(&self, u: &Vector<S>) -> Matrix<S> {
        let d = self.dim;
        let mut m = Matrix::<S>::zeros(d, d);
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    let g = self.coefficient(i, j, k);
                    if !g.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + u[i].clone() * g.clone();
                    }
                }
            }
        }
        m
    }

    /// `∇_u v` for left-invariant `u`, `v`.
    pub fn nabla(&self, u: &Vector<S>, v: &Vector<S>) -> Vector<S> {
        self.derivative_matrix(u).apply(v)
    }
}

/// Koszul formula on left-invariant fields.
pub fn levi_civita<S: Field>(algebra: &LieAlgebra<S>) -> Result<ConnectionTable<S>> {
    let d = algebra.dim();
    let g = algebra.metric();
    // lowered[(i,j,k)] = g([e_i, e_j], e_k)
    let mut lowered = vec![S::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let row = g.apply(&algebra.basis_bracket(i, j));
            for k in 0..d {
                lowered[(i * d + j) * d + k] = row[k].clone();
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| lowered[(i * d + j) * d + k].clone();
    let half = S::half();
    let mut gamma = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let rhs: Vec<S> =
                (0..d).map(|k| half.clone() * (at(i, j, k) - at(j, k, i) + at(k, i, j))).collect();
            let rhs = Vector::new(rhs);
            let solved = if g.is_diagonal() { solve_diagonal_metric(g, &rhs)? } else { g.solve(&rhs)? };
            gamma.extend(solved.into_components());
        }
    }
    Ok(ConnectionTable { dim: d, gamma })
}

/// Residual of `∇_{e_i}e_j − ∇_{e_j}e_i − [e_i,e_j]`; first failing pair, if any.
pub fn torsion_violation<S: Field>(algebra: &LieAlgebra<S>, conn: &ConnectionTable<S>) -> Option<(usize, usize)> {
    let d = algebra.dim();
    (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let t = &(&conn.basis_derivative(i, j) - &conn.basis_derivative(j, i)) - &algebra.basis_bracket(i, j);
            !t.is_negligible()
        })
}

/// First `(i, j, k)` with `g(∇_i e_j, e_k) + g(e_j, ∇_i e_k) ≠ 0`.
pub fn metric_violation<S: Field>(
    algebra: &LieAlgebra<S>,
    conn: &ConnectionTable<S>,
) -> Option<(usize, usize, usize)> {
    let d = algebra.dim();
    let g = algebra.metric();
    for i in 0..d {
        let lowered = g * &conn.derivative_matrix(&Vector::unit(d, i));
        // lowered[(k, j)] = g(e_k, ∇_i e_j); compatibility means antisymmetric
        for j in 0..d {
            for k in j..d {
                let s = lowered[(k, j)].clone() + lowered[(j, k)].clone();
                if !s.is_negligible() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// `R(e_i, e_j) e_k = Σ_l R^l_ijk e_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTable<S> {
    dim: usize,
    table: Vec<S>,
    metric: Matrix<S>,
}

impl<S: Field> CurvatureTable<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Matrix<S> {
        &self.metric
    }

    /// `R(e_i, e_j) e_k`.
    pub fn basis_value(&self, i: usize, j: usize, k: usize) -> Vector<S> {
        let start = ((i * self.dim + j) * self.dim + k) * self.dim;
        Vector::new(self.table[start..start + self.dim].to_vec())
    }

    /// `R^l_ijk`.
    pub fn component(&self, l: usize, i: usize, j: usize, k: usize) -> &S {
        &self.table[((i * self.dim + j) * self.dim + k) * self.dim + l]
    }

    /// `R(u, v) w` by trilinearity.
    pub fn apply(&self, u: &Vector<S>, v: &Vector<S>, w: &Vector<S>) -> Vector<S> {
        let d = self.dim;
        let mut out = Vector::zeros(d);
        for i in (0..d).filter(|&i| !u[i].is_zero()) {
            for j in (0..d).filter(|&j| !v[j].is_zero() && j != i) {
                let uv = u[i].clone() * v[j].clone();
                for k in (0..d).filter(|&k| !w[k].is_zero()) {
                    out.axpy(&(uv.clone() * w[k].clone()), &self.basis_value(i, j, k));
                }
            }
        }
        out
    }

    /// `R(X,Y,Z,W) = g(R(X,Y)Z, W)`.
    pub fn lowered(&self, x: &Vector<S>, y: &Vector<S>, z: &Vector<S>, w: &Vector<S>) -> S {
        self.apply(x, y, z).dot(&self.metric.apply(w))
    }
}

pub fn riemann<S: Field>(algebra: &LieAlgebra<S>, conn: &ConnectionTable<S>) -> CurvatureTable<S> {
    let d = algebra.dim();
    let nabla: Vec<Matrix<S>> = (0..d).map(|i| conn.derivative_matrix(&Vector::unit(d, i))).collect();
    let mut table = Vec::with_capacity(d * d * d * d);
    for i in 0..d {
        for j in 0..d {
            // ∇_i∇_j − ∇_j∇_i − ∇_[e_i,e_j]
            let bracket_op = conn.derivative_matrix(&algebra.basis_bracket(i, j));
            let op = &(&(&nabla[i] * &nabla[j]) - &(&nabla[j] * &nabla[i])) - &bracket_op;
            for k in 0..d {
                table.extend(op.column(k).into_components());
            }
        }
    }
    CurvatureTable { dim: d, table, metric: algebra.metric().clone() }
}

/// Symmetry defects of a curvature table; `None` fields mean the identity holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CurvatureSymmetries {
    pub antisymmetry: Option<(usize, usize, usize)>,
    pub bianchi: Option<(usize, usize, usize)>,
    pub pair_symmetry: Option<(usize, usize, usize, usize)>,
}

impl CurvatureSymmetries {
    pub fn hold(&self) -> bool {
        self.antisymmetry.is_none() && self.bianchi.is_none() && self.pair_symmetry.is_none()
    }
}

pub fn curvature_symmetries<S: Field>(curv: &CurvatureTable<S>) -> CurvatureSymmetries {
    let d = curv.dim();
    let mut out = CurvatureSymmetries::default();
    let g = curv.metric();
    let lowered = |i, j, k, l| curv.basis_value(i, j, k).dot(&g.column(l));
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if out.antisymmetry.is_none() && !(&curv.basis_value(i, j, k) + &curv.basis_value(j, i, k)).is_negligible() {
                    out.antisymmetry = Some((i, j, k));
                }
                if out.bianchi.is_none() {
                    let s = &(&curv.basis_value(i, j, k) + &curv.basis_value(j, k, i)) + &curv.basis_value(k, i, j);
                    if !s.is_negligible() {
                        out.bianchi = Some((i, j, k));
                    }
                }
                if out.pair_symmetry.is_none() {
                    for l in 0..d {
                        if !(lowered(i, j, k, l) - lowered(k, l, i, j)).is_negligible() {
                            out.pair_symmetry = Some((i, j, k, l));
                            break;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `∇_X T` for a left-invariant (1,1)-tensor `T`:
/// `(∇_X T)Y = ∇_X(TY) − T(∇_X Y)`.
pub fn covariant_derivative_11<S: Field>(
    conn: &ConnectionTable<S>,
    tensor: &Matrix<S>,
    x: &Vector<S>,
) -> Result<Matrix<S>> {
    let d = conn.dim();
    if tensor.rows() != d || tensor.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: tensor.rows() });
    }
    if x.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: x.dim() });
    }
    let n = conn.derivative_matrix(x);
    Ok(&(&n * tensor) - &(tensor * &n))
}

/// `K(u,v) = R(u,v,v,u) / (|u|²|v|² − g(u,v)²)`.
pub fn sectional_curvature<S: Field>(
    curv: &CurvatureTable<S>,
    metric: &Matrix<S>,
    u: &Vector<S>,
    v: &Vector<S>,
) -> Result<S> {
    let uu = inner(u, u, metric)?;
    let vv = inner(v, v, metric)?;
    let uv = inner(u, v, metric)?;
    let area = uu * vv - uv.clone() * uv;
    if area.is_negligible() {
        return Err(Error::DegeneratePlane);
    }
    let num = curv.apply(u, v, v).dot(&metric.apply(u));
    Ok(num / area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_boeckx_model;
    use crate::scalar::int;
    use num_rational::BigRational;

    fn model(n: usize, a: i64, b: i64) -> (LieAlgebra<BigRational>, ConnectionTable<BigRational>, crate::lie::Basis) {
        let m = build_boeckx_model(n, int(a), int(b)).unwrap();
        let c = levi_civita(&m.algebra).unwrap();
        (m.algebra.clone(), c, m.basis())
    }

    #[test]
    fn x_and_y_connection_rows() {
        let (_, c, b) = model(3, 1, 3);
        let (alpha, beta) = (int(1), int(3));
        let e = |i| b.unit::<BigRational>(i);
        assert_eq!(c.nabla(&e(b.x(2)), &e(b.x(1))), e(b.x(2)).scale(&-alpha.clone()));
        assert_eq!(c.nabla(&e(b.x(2)), &e(b.x(2))), e(b.x(1)).scale(&alpha));
        assert_eq!(c.nabla(&e(b.y(1)), &e(b.y(1))), e(b.y(2)).scale(&beta));
        assert_eq!(c.nabla(&e(b.y(1)), &e(b.y(2))), e(b.y(1)).scale(&-beta));
    }

    #[test]
    fn torsion_free_and_metric() {
        for (n, a, bb) in [(2, 0, 2), (3, 1, 3), (4, 2, 3)] {
            let (alg, c, _) = model(n, a, bb);
            assert_eq!(torsion_violation(&alg, &c), None);
            assert_eq!(metric_violation(&alg, &c), None);
        }
    }

    #[test]
    fn curvature_symmetries_hold() {
        let (alg, c, _) = model(2, 1, 3);
        let r = riemann(&alg, &c);
        assert!(curvature_symmetries(&r).hold());
        let xi = Vector::unit(5, 0);
        let v = Vector::new(vec![int(1), int(2), int(-1), int(0), int(4)]);
        assert!(r.apply(&xi, &xi, &v).is_negligible());
    }

    #[test]
    fn covariant_derivative_of_identity_vanishes() {
        let (_, c, b) = model(3, 1, 3);
        for i in 0..b.dim() {
            let x = b.unit(i);
            assert!(covariant_derivative_11(&c, &Matrix::identity(b.dim()), &x).unwrap().is_negligible());
        }
        assert!(covariant_derivative_11(&c, &Matrix::identity(3), &b.unit(0)).is_err());
    }

    #[test]
    fn sectional_curvature_rejects_dependent_vectors() {
        let (alg, c, b) = model(2, 0, 2);
        let r = riemann(&alg, &c);
        let u = b.unit::<BigRational>(b.x(1));
        let err = sectional_curvature(&r, alg.metric(), &u, &u.scale(&int(3))).unwrap_err();
        assert_eq!(err, Error::DegeneratePlane);
    }
}
