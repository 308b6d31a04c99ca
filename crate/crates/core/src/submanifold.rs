//! Legendrian distributions on a Boeckx model and the extrinsic geometry of
//! their integral submanifolds.
//!
//! Everything is evaluated at the identity on left-invariant frames. Frame
//! vectors are kept unnormalized; tangent data is expressed in frame
//! coordinates by solving against the Gram matrix `W_ab = g(v_a, v_b)`.

use crate::connection::{levi_civita, riemann, ConnectionTable, CurvatureTable};
use crate::contact::{ContactStructure, ModelInvariants};
use crate::error::{Error, Result};
use crate::lie::{Basis, LieAlgebra};
use crate::linalg::{rank, Matrix, Vector};
use crate::report::{CheckRecord, Tally};
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZChoice {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistributionKind<S> {
    /// `{X₁,…,X_n}`.
    XAll,
    /// `{Y₁,…,Y_n}`.
    YAll,
    /// `{X₁, Y₂, Z₃,…,Z_n}` with `Z_i ∈ {X_i, Y_i}`.
    Mixed { z_choices: Vec<ZChoice> },
    /// `{cX_i + dY_i}`.
    Diagonal { c: S, d: S },
    /// Arbitrary spanning vectors, for negative controls.
    Custom,
}

impl<S> DistributionKind<S> {
    pub fn label(&self) -> &'static str {
        match self {
            Self::XAll => "x",
            Self::YAll => "y",
            Self::Mixed { .. } => "mixed",
            Self::Diagonal { .. } => "diag",
            Self::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<S> {
    pub kind: DistributionKind<S>,
    pub vectors: Vec<Vector<S>>,
}

/// Z-choices realizing `dim(TN ∩ E(λ)) = k` for the mixed kind, `1 ≤ k ≤ n−1`.
pub fn mixed_with_k(n: usize, k: usize) -> Result<Vec<ZChoice>> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("mixed kind needs 1 <= k <= n-1, got k = {k}, n = {n}")));
    }
    Ok((3..=n).map(|i| if i < k + 2 { ZChoice::X } else { ZChoice::Y }).collect())
}

pub fn build_distribution<S: Field>(n: usize, kind: DistributionKind<S>) -> Result<Distribution<S>> {
    let b = Basis::new(n);
    let vectors = match &kind {
        DistributionKind::XAll => (1..=n).map(|i| b.unit(b.x(i))).collect(),
        DistributionKind::YAll => (1..=n).map(|i| b.unit(b.y(i))).collect(),
        DistributionKind::Mixed { z_choices } => {
            if n < 2 || z_choices.len() != n - 2 {
                return Err(Error::InvalidDistribution(format!(
                    "mixed kind needs n - 2 = {} z-choices, got {}",
                    n.saturating_sub(2),
                    z_choices.len()
                )));
            }
            let mut v = vec![b.unit(b.x(1)), b.unit(b.y(2))];
            for (i, z) in (3..=n).zip(z_choices) {
                v.push(b.unit(match z {
                    ZChoice::X => b.x(i),
                    ZChoice::Y => b.y(i),
                }));
            }
            v
        }
        DistributionKind::Diagonal { c, d } => {
            if c.is_zero() || d.is_zero() {
                return Err(Error::DegenerateDiagonal);
            }
            (1..=n)
                .map(|i| {
                    let mut v = b.unit(b.x(i)).scale(c);
                    v[b.y(i)] = d.clone();
                    v
                })
                .collect()
        }
        DistributionKind::Custom => {
            return Err(Error::InvalidDistribution("use custom_distribution for explicit spans".into()))
        }
    };
    Ok(Distribution { kind, vectors })
}

pub fn custom_distribution<S: Field>(vectors: Vec<Vector<S>>) -> Distribution<S> {
    Distribution { kind: DistributionKind::Custom, vectors }
}

/// `n` independent vectors with `η = 0` and `Φ = 0` on every pair.
pub fn legendrian_record<S: Field>(cs: &ContactStructure<S>, dist: &Distribution<S>) -> CheckRecord {
    let mut t = Tally::new("legendrian");
    for (a, v) in dist.vectors.iter().enumerate() {
        t.scalar(&[a], &cs.eta_of(v));
        for (b, w) in dist.vectors.iter().enumerate().skip(a + 1) {
            t.scalar(&[a, b], &cs.fundamental_form(v, w));
        }
    }
    let independent = dist.vectors.len() == cs.n && rank(&dist.vectors) == cs.n;
    if independent {
        t.finish()
    } else {
        CheckRecord::verdict("legendrian", false, None)
    }
}

pub fn is_legendrian<S: Field>(cs: &ContactStructure<S>, dist: &Distribution<S>) -> bool {
    legendrian_record(cs, dist).passed()
}

/// Outcome of the involutivity test; `offending` is the part of the
/// witness bracket outside the span.
#[derive(Debug, Clone, PartialEq)]
pub struct Involutivity<S> {
    pub witness: Option<(usize, usize)>,
    pub offending: Option<Vector<S>>,
}

impl<S> Involutivity<S> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_involutive<S: Field>(algebra: &LieAlgebra<S>, dist: &Distribution<S>) -> Result<Involutivity<S>> {
    let frame = Frame::new(algebra.metric().clone(), dist.vectors.clone())?;
    for a in 0..frame.len() {
        for b in a + 1..frame.len() {
            let br = algebra.bracket(&frame.vectors[a], &frame.vectors[b])?;
            let off = frame.normal(&br);
            if !off.is_negligible() {
                return Ok(Involutivity { witness: Some((a, b)), offending: Some(off) });
            }
        }
    }
    Ok(Involutivity { witness: None, offending: None })
}

/// Spanning vectors with their Gram matrix and metric projections.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<S> {
    pub vectors: Vec<Vector<S>>,
    pub gram: Matrix<S>,
    metric: Matrix<S>,
}

impl<S: Field> Frame<S> {
    pub fn new(metric: Matrix<S>, vectors: Vec<Vector<S>>) -> Result<Self> {
        let gram = Matrix::from_rows(
            vectors.iter().map(|v| vectors.iter().map(|w| v.dot(&metric.apply(w))).collect()).collect(),
        )?;
        if rank(&vectors) != vectors.len() {
            return Err(Error::InvalidDistribution("spanning vectors are linearly dependent".into()));
        }
        Ok(Self { vectors, gram, metric })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn g(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        u.dot(&self.metric.apply(v))
    }

    /// Frame coordinates of the tangent projection of `w`.
    pub fn coords(&self, w: &Vector<S>) -> Vector<S> {
        let rhs = Vector::new(self.vectors.iter().map(|v| self.g(v, w)).collect());
        self.gram.solve(&rhs).expect("Gram matrix of an independent frame is invertible")
    }

    pub fn to_ambient(&self, coords: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zeros(self.metric.rows());
        for (c, v) in coords.iter().zip(&self.vectors) {
            out.axpy(c, v);
        }
        out
    }

    pub fn tangent(&self, w: &Vector<S>) -> Vector<S> {
        self.to_ambient(&self.coords(w))
    }

    pub fn normal(&self, w: &Vector<S>) -> Vector<S> {
        w - &self.tangent(w)
    }

    /// Applies a frame-coordinate operator to a tangent ambient vector.
    pub fn apply_op(&self, op: &Matrix<S>, w: &Vector<S>) -> Vector<S> {
        self.to_ambient(&op.apply(&self.coords(w)))
    }

    pub fn gram_inverse(&self) -> Matrix<S> {
        let n = self.len();
        let cols: Vec<_> = (0..n).map(|j| self.gram.solve(&Vector::unit(n, j)).expect("invertible")).collect();
        Matrix::from_columns(&cols).expect("square")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification<S> {
    TotallyGeodesic,
    TotallyUmbilical { v: Vec<S> },
    Generic,
}

impl<S> Classification<S> {
    pub fn label(&self) -> &'static str {
        match self {
            Self::TotallyGeodesic => "totally_geodesic",
            Self::TotallyUmbilical { .. } => "totally_umbilical",
            Self::Generic => "generic",
        }
    }
}

/// `(sin θ, cos θ, a, b)` with `a = λ cos θ`, `b = λ sin θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaData<S> {
    pub sin: S,
    pub cos: S,
    pub a: S,
    pub b: S,
}

pub fn theta_parametrization<S: Field>(c: &S, d: &S, lambda: &S) -> Result<ThetaData<S>> {
    if c.is_zero() || d.is_zero() {
        return Err(Error::DegenerateDiagonal);
    }
    let norm = c.clone() * c.clone() + d.clone() * d.clone();
    let sin = (c.clone() * c.clone() - d.clone() * d.clone()) / norm.clone();
    let cos = -(S::two() * c.clone() * d.clone()) / norm;
    Ok(ThetaData { a: lambda.clone() * cos.clone(), b: lambda.clone() * sin.clone(), sin, cos })
}

/// Extrinsic and intrinsic data of the integral submanifold of a
/// Legendrian involutive distribution.
#[derive(Debug, Clone)]
pub struct SubmanifoldGeometry<S> {
    pub frame: Frame<S>,
    /// `σ(v_a, v_b)`, ambient normal vectors.
    pub sigma: Vec<Vec<Vector<S>>>,
    pub mean_curvature: Vector<S>,
    /// Frame-coordinate matrices: column `b` holds the coordinates of `h₁v_b`, `h₂v_b`.
    pub h1: Matrix<S>,
    pub h2: Matrix<S>,
    pub classification: Classification<S>,
    /// `N̄_a`: column `b` holds the coordinates of `∇̄_{v_a} v_b` (tangent projection).
    pub nabla_bar: Vec<Matrix<S>>,
    /// The distribution as a Lie algebra with the induced metric.
    pub leaf_algebra: LieAlgebra<S>,
    pub leaf_connection: ConnectionTable<S>,
    pub leaf_curvature: CurvatureTable<S>,
}

impl<S: Field> SubmanifoldGeometry<S> {
    pub fn n(&self) -> usize {
        self.frame.len()
    }

    /// `σ(X, Y)` for tangent ambient vectors.
    pub fn sigma_of(&self, x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
        let (cx, cy) = (self.frame.coords(x), self.frame.coords(y));
        let mut out = Vector::zeros(x.dim());
        for a in 0..self.n() {
            for b in 0..self.n() {
                let f = cx[a].clone() * cy[b].clone();
                if !f.is_zero() {
                    out.axpy(&f, &self.sigma[a][b]);
                }
            }
        }
        out
    }

    /// `∇̄_{v_a}` as a frame-coordinate matrix applied to a tangent ambient vector.
    pub fn nabla_bar_of(&self, a: usize, y: &Vector<S>) -> Vector<S> {
        self.frame.apply_op(&self.nabla_bar[a], y)
    }

    pub fn h1_of(&self, y: &Vector<S>) -> Vector<S> {
        self.frame.apply_op(&self.h1, y)
    }

    pub fn h2_of(&self, y: &Vector<S>) -> Vector<S> {
        self.frame.apply_op(&self.h2, y)
    }

    /// Lowered intrinsic curvature `R̄(v_a, v_b, v_c, v_d)`.
    pub fn intrinsic(&self, a: usize, b: usize, c: usize, d: usize) -> S {
        let n = self.n();
        let e = |i| Vector::unit(n, i);
        self.leaf_curvature.lowered(&e(a), &e(b), &e(c), &e(d))
    }

    /// Intrinsic sectional curvature of the plane `v_a ∧ v_b`.
    pub fn intrinsic_sectional(&self, a: usize, b: usize) -> S {
        let w = &self.frame.gram;
        let area = w[(a, a)].clone() * w[(b, b)].clone() - w[(a, b)].clone() * w[(a, b)].clone();
        self.intrinsic(a, b, b, a) / area
    }

    /// Constant `K` with `R̄(X,Y,Z,W) = K(g(X,W)g(Y,Z) − g(X,Z)g(Y,W))` on all
    /// frame quadruples drawn from `indices`, if one exists.
    pub fn space_form_constant(&self, indices: &[usize]) -> Option<S> {
        if indices.len() < 2 {
            return None;
        }
        let k = self.intrinsic_sectional(indices[0], indices[1]);
        let w = &self.frame.gram;
        for &a in indices {
            for &b in indices {
                for &c in indices {
                    for &d in indices {
                        let expected = k.clone()
                            * (w[(a, d)].clone() * w[(b, c)].clone() - w[(a, c)].clone() * w[(b, d)].clone());
                        if !(self.intrinsic(a, b, c, d) - expected).is_negligible() {
                            return None;
                        }
                    }
                }
            }
        }
        Some(k)
    }
}

/// σ, h₁/h₂, ∇̄, classification and the intrinsic curvature of the leaf.
pub fn second_fundamental_form<S: Field>(
    algebra: &LieAlgebra<S>,
    conn: &ConnectionTable<S>,
    cs: &ContactStructure<S>,
    dist: &Distribution<S>,
) -> Result<SubmanifoldGeometry<S>> {
    let inv = check_involutive(algebra, dist)?;
    if let Some(w) = inv.witness {
        return Err(Error::NotInvolutive { witness: w });
    }
    let leg = legendrian_record(cs, dist);
    if !leg.passed() {
        return Err(Error::InvalidDistribution(format!(
            "not Legendrian (witness {:?})",
            leg.witness_indices.unwrap_or_default()
        )));
    }
    let frame = Frame::new(algebra.metric().clone(), dist.vectors.clone())?;
    let n = frame.len();

    let derivs: Vec<Matrix<S>> = frame.vectors.iter().map(|v| conn.derivative_matrix(v)).collect();
    let mut sigma = Vec::with_capacity(n);
    let mut nabla_bar = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut cols = Vec::with_capacity(n);
        for b in 0..n {
            let nab = derivs[a].apply(&frame.vectors[b]);
            let c = frame.coords(&nab);
            row.push(&nab - &frame.to_ambient(&c));
            cols.push(c);
        }
        sigma.push(row);
        nabla_bar.push(Matrix::from_columns(&cols)?);
    }

    let (h1, h2) = split_h(cs, &frame)?;
    let (mean_curvature, classification) = classify(&frame, &sigma);

    let mut constants = vec![S::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            let c = frame.coords(&algebra.bracket(&frame.vectors[a], &frame.vectors[b])?);
            for k in 0..n {
                constants[(a * n + b) * n + k] = c[k].clone();
            }
        }
    }
    let leaf_algebra = LieAlgebra::from_constants(n, constants, frame.gram.clone())?;
    let leaf_connection = levi_civita(&leaf_algebra)?;
    let leaf_curvature = riemann(&leaf_algebra, &leaf_connection);

    Ok(SubmanifoldGeometry {
        frame,
        sigma,
        mean_curvature,
        h1,
        h2,
        classification,
        nabla_bar,
        leaf_algebra,
        leaf_connection,
        leaf_curvature,
    })
}

/// `hX = h₁X + φh₂X`: `h₁` is the tangent part, `h₂X = −φ((hX)⊥)`.
/// Fails if `(hX)⊥` has a ξ-component or `h₂X` is not tangent.
pub fn split_h<S: Field>(cs: &ContactStructure<S>, frame: &Frame<S>) -> Result<(Matrix<S>, Matrix<S>)> {
    let mut c1 = Vec::with_capacity(frame.len());
    let mut c2 = Vec::with_capacity(frame.len());
    for (a, v) in frame.vectors.iter().enumerate() {
        let hv = cs.h.apply(v);
        let coords = frame.coords(&hv);
        let normal = &hv - &frame.to_ambient(&coords);
        if !cs.eta_of(&normal).is_negligible() {
            return Err(Error::Structure { identity: "normal part of h has no xi-component".into(), witness: vec![a] });
        }
        let h2v = -&cs.phi.apply(&normal);
        if !frame.normal(&h2v).is_negligible() {
            return Err(Error::Structure { identity: "h2 maps tangents to tangents".into(), witness: vec![a] });
        }
        c1.push(coords);
        c2.push(frame.coords(&h2v));
    }
    Ok((Matrix::from_columns(&c1)?, Matrix::from_columns(&c2)?))
}

/// Mean curvature `H = (1/n) Σ W^{ab} σ(v_a, v_b)` and the classification.
fn classify<S: Field>(frame: &Frame<S>, sigma: &[Vec<Vector<S>>]) -> (Vector<S>, Classification<S>) {
    let n = frame.len();
    let dim = sigma[0][0].dim();
    if sigma.iter().flatten().all(Vector::is_negligible) {
        return (Vector::zeros(dim), Classification::TotallyGeodesic);
    }
    let winv = frame.gram_inverse();
    let mut h = Vector::zeros(dim);
    for a in 0..n {
        for b in 0..n {
            h.axpy(&winv[(a, b)], &sigma[a][b]);
        }
    }
    let h = h.scale(&(S::one() / S::from_usize(n).expect("small integer")));
    let umbilical =
        (0..n).all(|a| (0..n).all(|b| (&sigma[a][b] - &h.scale(&frame.gram[(a, b)])).is_negligible()));
    let class = if umbilical {
        Classification::TotallyUmbilical { v: h.components().to_vec() }
    } else {
        Classification::Generic
    };
    (h, class)
}

/// `(dim TN ∩ E(λ), dim TN ∩ E(−λ))`.
pub fn tn_split_dims<S: Field>(cs: &ContactStructure<S>, frame: &Frame<S>) -> (usize, usize) {
    let dim_for = |ev: S| {
        let shifted: Vec<_> = frame.vectors.iter().map(|v| &cs.h.apply(v) - &v.scale(&ev)).collect();
        frame.len() - rank(&shifted)
    };
    (dim_for(cs.lambda.clone()), dim_for(-cs.lambda.clone()))
}

/// Indices of frame vectors lying in `E(λ)` and in `E(−λ)`.
pub fn eigen_frame_indices<S: Field>(cs: &ContactStructure<S>, frame: &Frame<S>) -> (Vec<usize>, Vec<usize>) {
    let in_eigenspace = |v: &Vector<S>, ev: &S| (&cs.h.apply(v) - &v.scale(ev)).is_negligible();
    let lambda = cs.lambda.clone();
    let plus = (0..frame.len()).filter(|&a| in_eigenspace(&frame.vectors[a], &lambda)).collect();
    let minus = (0..frame.len()).filter(|&a| in_eigenspace(&frame.vectors[a], &-lambda.clone())).collect();
    (plus, minus)
}

fn is_symmetric_in_gram<S: Field>(gram: &Matrix<S>, op: &Matrix<S>) -> bool {
    (gram * op).is_symmetric()
}

/// Legendrian condition, σ symmetry, the h decomposition identities and the
/// identity relating σ's ξ-component to h₂.
pub fn decomposition_records<S: Field>(
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
    dist: &Distribution<S>,
    geom: &SubmanifoldGeometry<S>,
) -> Vec<CheckRecord> {
    let n = geom.n();
    let f = &geom.frame;
    let v = &f.vectors;
    let mut out = vec![legendrian_record(cs, dist)];

    let mut t = Tally::new("sigma_symmetric");
    for a in 0..n {
        for b in a + 1..n {
            t.compare(&[a, b], &geom.sigma[a][b], &geom.sigma[b][a]);
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("sigma_normal");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                t.scalar(&[a, b, c], &f.g(&geom.sigma[a][b], &v[c]));
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("h_decomposition");
    for a in 0..n {
        let rhs = &geom.h1_of(&v[a]) + &cs.phi.apply(&geom.h2_of(&v[a]));
        t.compare(&[a], &cs.h.apply(&v[a]), &rhs);
    }
    out.push(t.finish());

    out.push(CheckRecord::verdict("h1_symmetric", is_symmetric_in_gram(&f.gram, &geom.h1), None));
    out.push(CheckRecord::verdict("h2_symmetric", is_symmetric_in_gram(&f.gram, &geom.h2), None));

    let id = Matrix::identity(n);
    let lhs = &(&geom.h1 * &geom.h1) + &(&geom.h2 * &geom.h2);
    let rhs = id.scale(&(S::one() - inv.kappa.clone()));
    let mut t = Tally::new("h1_h2_squares");
    for b in 0..n {
        t.compare(&[b], &lhs.column(b), &rhs.column(b));
    }
    out.push(t.finish());

    let comm = &(&geom.h1 * &geom.h2) - &(&geom.h2 * &geom.h1);
    let mut t = Tally::new("h1_h2_commute");
    for b in 0..n {
        t.vector(&[b], &comm.column(b));
    }
    out.push(t.finish());

    let mut t = Tally::new("sigma_xi_h2");
    for a in 0..n {
        for b in 0..n {
            let val = cs.g(&geom.sigma[a][b], &cs.xi) + cs.g(&v[a], &geom.h2_of(&v[b]));
            t.scalar(&[a, b], &val);
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("phi_sigma_tangent");
    for a in 0..n {
        for b in 0..n {
            t.vector(&[a, b], &f.normal(&cs.phi.apply(&geom.sigma[a][b])));
        }
    }
    out.push(t.finish());
    out
}

/// Weingarten-type identities and the covariant derivatives of `h₁`, `h₂`.
pub fn weingarten_records<S: Field>(
    conn: &ConnectionTable<S>,
    cs: &ContactStructure<S>,
    geom: &SubmanifoldGeometry<S>,
) -> Vec<CheckRecord> {
    let n = geom.n();
    let f = &geom.frame;
    let v = &f.vectors;
    let phi = |w: &Vector<S>| cs.phi.apply(w);
    let mut out = Vec::new();

    // A_{φY}X = −φσ(X,Y), with A from g(σ(X,Z),V) = g(A_V X, Z) ...
    let mut t = Tally::new("shape_operator_phi_gram");
    for a in 0..n {
        for b in 0..n {
            let normal = phi(&v[b]);
            let rhs = Vector::new((0..n).map(|c| f.g(&geom.sigma[a][c], &normal)).collect());
            let shape = f.to_ambient(&f.gram.solve(&rhs).expect("invertible"));
            t.compare(&[a, b], &shape, &-&phi(&geom.sigma[a][b]));
        }
    }
    out.push(t.finish());

    // ... and from the Weingarten formula A_V X = −(∇_X V)ᵀ.
    let mut t = Tally::new("shape_operator_phi_weingarten");
    for a in 0..n {
        for b in 0..n {
            let shape = -&f.tangent(&conn.nabla(&v[a], &phi(&v[b])));
            t.compare(&[a, b], &shape, &-&phi(&geom.sigma[a][b]));
        }
    }
    out.push(t.finish());

    // ∇⊥_X φY = φ∇̄_X Y + g(X, Y + h₁Y)ξ
    let mut t = Tally::new("normal_connection_phi");
    for a in 0..n {
        for b in 0..n {
            let lhs = f.normal(&conn.nabla(&v[a], &phi(&v[b])));
            let mut rhs = phi(&geom.nabla_bar_of(a, &v[b]));
            rhs.axpy(&f.g(&v[a], &(&v[b] + &geom.h1_of(&v[b]))), &cs.xi);
            t.compare(&[a, b], &lhs, &rhs);
        }
    }
    out.push(t.finish());

    let mut t1 = Tally::new("nabla_bar_h1");
    let mut t2 = Tally::new("nabla_bar_h2");
    for a in 0..n {
        let nb = &geom.nabla_bar[a];
        let d1 = &(nb * &geom.h1) - &(&geom.h1 * nb);
        let d2 = &(nb * &geom.h2) - &(&geom.h2 * nb);
        for b in 0..n {
            let phi_sigma = phi(&geom.sigma[a][b]);
            let lhs1 = f.apply_op(&d1, &v[b]);
            let rhs1 = -&(&phi(&geom.sigma_of(&v[a], &geom.h2_of(&v[b]))) + &geom.h2_of(&phi_sigma));
            t1.compare(&[a, b], &lhs1, &rhs1);
            let lhs2 = f.apply_op(&d2, &v[b]);
            let rhs2 = &phi(&geom.sigma_of(&v[a], &geom.h1_of(&v[b]))) + &geom.h1_of(&phi_sigma);
            t2.compare(&[a, b], &lhs2, &rhs2);
        }
    }
    out.push(t1.finish());
    out.push(t2.finish());
    out
}

/// Induced connection by two routes (tangent projection and Koszul on the
/// leaf algebra), then the Gauss and Codazzi equations on all frame tuples.
pub fn gauss_codazzi_residuals<S: Field>(
    conn: &ConnectionTable<S>,
    curv: &CurvatureTable<S>,
    geom: &SubmanifoldGeometry<S>,
) -> Vec<CheckRecord> {
    let n = geom.n();
    let f = &geom.frame;
    let v = &f.vectors;
    let mut out = Vec::new();

    let mut t = Tally::new("induced_connection");
    for a in 0..n {
        for b in 0..n {
            let intrinsic = geom.leaf_connection.basis_derivative(a, b);
            t.compare(&[a, b], &geom.nabla_bar[a].column(b), &intrinsic);
            // ∇_X Y = ∇̄_X Y + σ(X,Y)
            let split = &f.to_ambient(&intrinsic) + &geom.sigma[a][b];
            t.compare(&[a, b], &conn.nabla(&v[a], &v[b]), &split);
        }
    }
    out.push(t.finish());

    let mut gauss = Tally::new("gauss_equation");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let r = curv.apply(&v[a], &v[b], &v[c]);
                for d in 0..n {
                    let lhs = f.g(&r, &v[d]);
                    let s = &geom.sigma;
                    let rhs = geom.intrinsic(a, b, c, d) - f.g(&s[a][d], &s[b][c]) + f.g(&s[a][c], &s[b][d]);
                    gauss.compare_scalar(&[a, b, c, d], &lhs, &rhs);
                }
            }
        }
    }
    out.push(gauss.finish());

    // (∇_X σ)(Y,Z) = ∇⊥_X σ(Y,Z) − σ(∇̄_X Y, Z) − σ(Y, ∇̄_X Z)
    let nabla_sigma = |x: usize, y: usize, z: usize| {
        let mut out = f.normal(&conn.nabla(&v[x], &geom.sigma[y][z]));
        out.axpy(&-S::one(), &geom.sigma_of(&geom.nabla_bar_of(x, &v[y]), &v[z]));
        out.axpy(&-S::one(), &geom.sigma_of(&v[y], &geom.nabla_bar_of(x, &v[z])));
        out
    };
    let mut codazzi = Tally::new("codazzi_equation");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = f.normal(&curv.apply(&v[a], &v[b], &v[c]));
                let rhs = &nabla_sigma(a, b, c) - &nabla_sigma(b, a, c);
                codazzi.compare(&[a, b, c], &lhs, &rhs);
            }
        }
    }
    out.push(codazzi.finish());
    out
}

/// Compact description of a leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmanifoldSummary<S> {
    pub kind: String,
    pub involutive: bool,
    pub classification: String,
    pub v: Option<Vec<S>>,
    pub h1_eigenvalue: Option<S>,
    pub h2_eigenvalue: Option<S>,
    pub tn_split: (usize, usize),
    /// Space-form constant of the whole leaf, if it is one.
    pub leaf_curvature: Option<S>,
    pub leaf_curvature_plus: Option<S>,
    pub leaf_curvature_minus: Option<S>,
    pub theta: Option<ThetaData<S>>,
}

pub fn summarize<S: Field>(
    cs: &ContactStructure<S>,
    dist: &Distribution<S>,
    geom: &SubmanifoldGeometry<S>,
) -> Result<SubmanifoldSummary<S>> {
    let all: Vec<usize> = (0..geom.n()).collect();
    let (plus, minus) = eigen_frame_indices(cs, &geom.frame);
    let theta = match &dist.kind {
        DistributionKind::Diagonal { c, d } => Some(theta_parametrization(c, d, &cs.lambda)?),
        _ => None,
    };
    Ok(SubmanifoldSummary {
        kind: dist.kind.label().into(),
        involutive: true,
        classification: geom.classification.label().into(),
        v: match &geom.classification {
            Classification::TotallyUmbilical { v } => Some(v.clone()),
            _ => None,
        },
        h1_eigenvalue: geom.h1.as_scalar_multiple(),
        h2_eigenvalue: geom.h2.as_scalar_multiple(),
        tn_split: tn_split_dims(cs, &geom.frame),
        leaf_curvature: geom.space_form_constant(&all),
        leaf_curvature_plus: geom.space_form_constant(&plus),
        leaf_curvature_minus: geom.space_form_constant(&minus),
        theta,
    })
}
