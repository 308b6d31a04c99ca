//! Contact metric structure `(φ, ξ, η, g)` on a Lie algebra model, the
//! operator `h = ½ L_ξ φ`, the (κ,μ) invariants and the identities every
//! (κ,μ)-space satisfies.
//!
//! Left-invariant conventions used throughout:
//! - `dη(X,Y) = −½ η([X,Y])`, so the contact condition reads
//!   `g(X, φY) = −½ η([X,Y])`;
//! - `(L_ξ φ)X = [ξ, φX] − φ[ξ, X]`.

use crate::connection::{covariant_derivative_11, sectional_curvature, ConnectionTable, CurvatureTable};
use crate::error::{Error, Result};
use crate::lie::{Basis, BoeckxModel, LieAlgebra};
use crate::linalg::{rank, Matrix, Vector};
use crate::report::{CheckRecord, Tally};
use crate::scalar::Field;

/// Contact metric structure together with its `h` operator.
///
/// `eta` holds covector components: `η(v) = eta · v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactStructure<S> {
    pub n: usize,
    pub phi: Matrix<S>,
    pub xi: Vector<S>,
    pub eta: Vector<S>,
    pub metric: Matrix<S>,
    pub h: Matrix<S>,
    /// Eigenvalue of `h` on `X₁,…,X_n`.
    pub lambda: S,
}

impl<S: Field> ContactStructure<S> {
    /// Validates the contact metric axioms against `algebra` and computes `h`.
    pub fn new(algebra: &LieAlgebra<S>, n: usize, phi: Matrix<S>, xi: Vector<S>, eta: Vector<S>) -> Result<Self> {
        let basis = Basis::new(n);
        if algebra.dim() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: algebra.dim() });
        }
        let metric = algebra.metric().clone();
        let mut cs = Self { n, phi, xi, eta, metric, h: Matrix::zeros(basis.dim(), basis.dim()), lambda: S::zero() };
        if let Some(bad) = contact_axiom_records(algebra, &cs).into_iter().find(|r| !r.passed()) {
            return Err(Error::Structure { identity: bad.identity_id, witness: bad.witness_indices.unwrap_or_default() });
        }
        let (h, lambda) = compute_h(algebra, &cs)?;
        cs.h = h;
        cs.lambda = lambda;
        Ok(cs)
    }

    pub fn basis(&self) -> Basis {
        Basis::new(self.n)
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn eta_of(&self, v: &Vector<S>) -> S {
        self.eta.dot(v)
    }

    pub fn g(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        u.dot(&self.metric.apply(v))
    }

    pub fn phi_h(&self) -> Matrix<S> {
        &self.phi * &self.h
    }

    /// `Φ(u,v) = g(u, φv)`.
    pub fn fundamental_form(&self, u: &Vector<S>, v: &Vector<S>) -> S {
        self.g(u, &self.phi.apply(v))
    }
}

/// The structure on a Boeckx model: `φξ = 0`, `φX_i = Y_i`, `φY_i = −X_i`,
/// `η` the metric dual of `ξ`.
pub fn build_contact_structure<S: Field>(model: &BoeckxModel<S>) -> Result<ContactStructure<S>> {
    let basis = model.basis();
    let d = basis.dim();
    let mut phi = Matrix::zeros(d, d);
    for i in 1..=model.n {
        phi[(basis.y(i), basis.x(i))] = S::one();
        phi[(basis.x(i), basis.y(i))] = -S::one();
    }
    let xi = basis.unit(basis.xi());
    let eta = model.algebra.metric().apply(&xi);
    ContactStructure::new(&model.algebra, model.n, phi, xi, eta)
}

/// Records for the almost contact metric axioms and the contact condition.
pub fn contact_axiom_records<S: Field>(algebra: &LieAlgebra<S>, cs: &ContactStructure<S>) -> Vec<CheckRecord> {
    let d = cs.dim();
    let e = |i| Vector::<S>::unit(d, i);
    let g = &cs.metric;
    let mut out = Vec::new();

    let mut t = Tally::new("eta_of_xi");
    t.compare_scalar(&[], &cs.eta_of(&cs.xi), &S::one());
    out.push(t.finish());

    let mut t = Tally::new("eta_metric_dual");
    t.compare(&[], &cs.eta, &g.apply(&cs.xi));
    out.push(t.finish());

    let mut t = Tally::new("phi_xi");
    t.vector(&[], &cs.phi.apply(&cs.xi));
    out.push(t.finish());

    let mut t = Tally::new("eta_phi");
    t.vector(&[], &cs.phi.transpose().apply(&cs.eta));
    out.push(t.finish());

    // φ² = −Id + η⊗ξ, i.e. φ²v = −v + η(v)ξ
    let phi2 = &cs.phi * &cs.phi;
    let target = &Matrix::outer(&cs.xi, &cs.eta) - &Matrix::identity(d);
    let mut t = Tally::new("phi_squared");
    for j in 0..d {
        t.compare(&[j], &phi2.column(j), &target.column(j));
    }
    out.push(t.finish());

    let mut t = Tally::new("compatible_metric");
    for i in 0..d {
        for j in i..d {
            let lhs = cs.g(&cs.phi.apply(&e(i)), &cs.phi.apply(&e(j)));
            let rhs = g[(i, j)].clone() - cs.eta[i].clone() * cs.eta[j].clone();
            t.compare_scalar(&[i, j], &lhs, &rhs);
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("contact_condition");
    for i in 0..d {
        for j in i + 1..d {
            let lhs = cs.fundamental_form(&e(i), &e(j));
            let rhs = d_eta(algebra, cs, &e(i), &e(j));
            t.compare_scalar(&[i, j], &lhs, &rhs);
        }
    }
    out.push(t.finish());

    let columns: Vec<_> = (0..d).map(|j| cs.phi.column(j)).collect();
    out.push(CheckRecord::verdict("phi_rank", rank(&columns) == 2 * cs.n, None));
    out
}

/// `dη(u,v) = −½ η([u,v])` on left-invariant fields.
pub fn d_eta<S: Field>(algebra: &LieAlgebra<S>, cs: &ContactStructure<S>, u: &Vector<S>, v: &Vector<S>) -> S {
    let bracket = algebra.bracket(u, v).expect("dimensions match the algebra");
    -(S::half() * cs.eta_of(&bracket))
}

/// `h = ½ L_ξ φ` and its eigenvalue `λ` on `X₁`.
///
/// Fails unless `h` is symmetric, kills `ξ`, anticommutes with `φ`, and acts
/// as `λ` on every `X_i` and `−λ` on every `Y_i` with `λ > 0`.
pub fn compute_h<S: Field>(algebra: &LieAlgebra<S>, cs: &ContactStructure<S>) -> Result<(Matrix<S>, S)> {
    let d = cs.dim();
    let basis = cs.basis();
    let half = S::half();
    let columns = (0..d)
        .map(|j| {
            let x = Vector::unit(d, j);
            let a = algebra.bracket(&cs.xi, &cs.phi.apply(&x))?;
            let b = cs.phi.apply(&algebra.bracket(&cs.xi, &x)?);
            Ok((&a - &b).scale(&half))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = Matrix::from_columns(&columns)?;

    let structural = |identity: &str, witness: Vec<usize>| Error::Structure { identity: identity.into(), witness };
    let gh = &cs.metric * &h;
    if !gh.is_symmetric() {
        return Err(structural("h symmetric", vec![]));
    }
    if !h.apply(&cs.xi).is_negligible() {
        return Err(structural("h xi = 0", vec![basis.xi()]));
    }
    if !(&(&h * &cs.phi) + &(&cs.phi * &h)).is_negligible() {
        return Err(structural("h phi = -phi h", vec![]));
    }
    let x1 = basis.unit(basis.x(1));
    let lambda = cs.g(&h.apply(&x1), &x1) / cs.g(&x1, &x1);
    if !lambda.is_positive() {
        return Err(structural("h eigenvalue lambda > 0", vec![basis.x(1)]));
    }
    for i in 1..=cs.n {
        for (idx, ev) in [(basis.x(i), lambda.clone()), (basis.y(i), -lambda.clone())] {
            let v = basis.unit(idx);
            if !(&h.apply(&v) - &v.scale(&ev)).is_negligible() {
                return Err(structural("h eigenstructure", vec![idx]));
            }
        }
    }
    Ok((h, lambda))
}

/// `(κ, μ, λ, I_M)` of a non-Sasakian (κ,μ)-space.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelInvariants<S> {
    pub kappa: S,
    pub mu: S,
    pub lambda: S,
    pub boeckx_i: S,
}

/// `I = (1 − μ/2) / √(1 − κ)`; needs `1 − κ` to be a perfect square in `S`.
pub fn boeckx_invariant<S: Field>(kappa: &S, mu: &S) -> Result<S> {
    let gap = S::one() - kappa.clone();
    if !gap.is_positive() {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} is not < 1")));
    }
    let root = gap.sqrt_exact().ok_or_else(|| Error::NoExactRoot(gap.to_string()))?;
    Ok((S::one() - mu.clone() / S::two()) / root)
}

/// Solves κ, μ from the probes `R(X₁,ξ)ξ = (κ + μλ)X₁` and
/// `R(Y₁,ξ)ξ = (κ − μλ)Y₁`, then re-verifies the (κ,μ) condition on every
/// basis pair and `λ² = 1 − κ`.
pub fn extract_kappa_mu<S: Field>(curv: &CurvatureTable<S>, cs: &ContactStructure<S>) -> Result<ModelInvariants<S>> {
    let basis = cs.basis();
    let probe = |idx: usize| {
        let v = basis.unit(idx);
        cs.g(&curv.apply(&v, &cs.xi, &cs.xi), &v) / cs.g(&v, &v)
    };
    let p = probe(basis.x(1));
    let q = probe(basis.y(1));
    let kappa = (p.clone() + q.clone()) / S::two();
    let mu = (p - q) / (S::two() * cs.lambda.clone());
    let lambda = cs.lambda.clone();
    let boeckx_i = (S::one() - mu.clone() / S::two()) / lambda.clone();
    let inv = ModelInvariants { kappa, mu, lambda, boeckx_i };

    let record = kappa_mu_condition(curv, cs, &inv);
    if let Some(w) = record.witness_indices {
        return Err(Error::NotKappaMu { witness: (w[0], w[1]) });
    }
    if !(inv.lambda.clone() * inv.lambda.clone() - (S::one() - inv.kappa.clone())).is_negligible() {
        return Err(Error::Structure { identity: "lambda^2 = 1 - kappa".into(), witness: vec![] });
    }
    Ok(inv)
}

/// `R(X,Y)ξ = κ(η(Y)X − η(X)Y) + μ(η(Y)hX − η(X)hY)` on all basis pairs.
pub fn kappa_mu_condition<S: Field>(
    curv: &CurvatureTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
) -> CheckRecord {
    let d = cs.dim();
    let mut t = Tally::new("kappa_mu_condition");
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (Vector::unit(d, i), Vector::unit(d, j));
            let lhs = curv.apply(&x, &y, &cs.xi);
            let (ex, ey) = (cs.eta_of(&x), cs.eta_of(&y));
            let mut rhs = x.scale(&(inv.kappa.clone() * ey.clone()));
            rhs.axpy(&-(inv.kappa.clone() * ex.clone()), &y);
            rhs.axpy(&(inv.mu.clone() * ey), &cs.h.apply(&x));
            rhs.axpy(&-(inv.mu.clone() * ex), &cs.h.apply(&y));
            t.compare(&[i, j], &lhs, &rhs);
        }
    }
    t.finish()
}

/// Closed-form curvature of a non-Sasakian (κ,μ)-space in terms of
/// `g, φ, h, η, ξ`, valid for all vectors (not only those orthogonal to ξ).
pub fn closed_form_curvature<S: Field>(
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    z: &Vector<S>,
) -> Vector<S> {
    let CurvatureTerms { mut out, k1, m1, ex, ey, ez, hx, hy } = closed_form_core(cs, inv, x, y, z);
    let g = |a: &Vector<S>, b: &Vector<S>| cs.g(a, b);

    // μ g(φX,Y) φZ
    out.axpy(&(inv.mu.clone() * g(&cs.phi.apply(x), y)), &cs.phi.apply(z));
    // −η(X)η(Z)(k₁Y + m₁hY) + η(Y)η(Z)(k₁X + m₁hX)
    let exz = ex.clone() * ez.clone();
    let eyz = ey.clone() * ez;
    out.axpy(&-(exz.clone() * k1.clone()), y);
    out.axpy(&-(exz * m1.clone()), &hy);
    out.axpy(&(eyz.clone() * k1.clone()), x);
    out.axpy(&(eyz * m1.clone()), &hx);
    // + η(X)(k₁g(Y,Z) + m₁g(hY,Z))ξ − η(Y)(k₁g(X,Z) + m₁g(hX,Z))ξ
    let cx = ex * (k1.clone() * g(y, z) + m1.clone() * g(&hy, z));
    let cy = ey * (k1 * g(x, z) + m1 * g(&hx, z));
    out.axpy(&(cx - cy), &cs.xi);
    out
}

/// The closed form as it is commonly transcribed: no `μ g(φX,Y)φZ` term and
/// η-terms `−η(X)η(Z)(..Y..) − η(Y)η(Z)(..X..) − η(Y)(..)ξ`. It is not
/// antisymmetric in `X, Y`; kept only to quantify the discrepancy.
pub fn transcribed_closed_form_curvature<S: Field>(
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    z: &Vector<S>,
) -> Vector<S> {
    let CurvatureTerms { mut out, k1, m1, ex, ey, ez, hx, hy } = closed_form_core(cs, inv, x, y, z);
    let g = |a: &Vector<S>, b: &Vector<S>| cs.g(a, b);
    let exz = ex * ez.clone();
    let eyz = ey.clone() * ez;
    out.axpy(&-(exz.clone() * k1.clone()), y);
    out.axpy(&-(exz * m1.clone()), &hy);
    out.axpy(&-(eyz.clone() * k1.clone()), x);
    out.axpy(&-(eyz * m1.clone()), &hx);
    let cy = ey * (k1 * g(x, z) + m1 * g(&hx, z));
    out.axpy(&-cy, &cs.xi);
    out
}

struct CurvatureTerms<S> {
    out: Vector<S>,
    k1: S,
    m1: S,
    ex: S,
    ey: S,
    ez: S,
    hx: Vector<S>,
    hy: Vector<S>,
}

/// Terms shared by both closed forms: everything except the η-corrections
/// and the `φZ` term.
fn closed_form_core<S: Field>(
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    z: &Vector<S>,
) -> CurvatureTerms<S> {
    let (kappa, mu) = (inv.kappa.clone(), inv.mu.clone());
    let one = S::one();
    let half_mu = mu.clone() / S::two();
    let f = one.clone() - half_mu.clone();
    let p = f.clone() / (one.clone() - kappa.clone());
    let q = (kappa.clone() - half_mu.clone()) / (one.clone() - kappa.clone());
    let k1 = kappa - one.clone() + half_mu.clone();
    let m1 = mu - one;
    let g = |a: &Vector<S>, b: &Vector<S>| cs.g(a, b);

    let hx = cs.h.apply(x);
    let hy = cs.h.apply(y);
    let px = cs.phi.apply(x);
    let py = cs.phi.apply(y);
    let phx = cs.phi.apply(&hx);
    let phy = cs.phi.apply(&hy);
    let (gyz, gxz) = (g(y, z), g(x, z));
    let (ghxz, ghyz) = (g(&hx, z), g(&hy, z));

    let mut out = Vector::zeros(cs.dim());
    // (1 − μ/2)(g(Y,Z)X − g(X,Z)Y)
    out.axpy(&(f.clone() * gyz.clone()), x);
    out.axpy(&-(f * gxz.clone()), y);
    // g(Y,Z)hX − g(X,Z)hY − g(hX,Z)Y + g(hY,Z)X
    out.axpy(&gyz, &hx);
    out.axpy(&-gxz, &hy);
    out.axpy(&-ghxz.clone(), y);
    out.axpy(&ghyz, x);
    // p (g(hY,Z)hX − g(hX,Z)hY)
    out.axpy(&(p.clone() * ghyz), &hx);
    out.axpy(&-(p * ghxz), &hy);
    // −μ/2 (g(φY,Z)φX − g(φX,Z)φY)
    out.axpy(&-(half_mu.clone() * g(&py, z)), &px);
    out.axpy(&(half_mu * g(&px, z)), &py);
    // q (g(φhY,Z)φhX − g(φhX,Z)φhY)
    out.axpy(&(q.clone() * g(&phy, z)), &phx);
    out.axpy(&-(q * g(&phx, z)), &phy);

    CurvatureTerms { out, k1, m1, ex: cs.eta_of(x), ey: cs.eta_of(y), ez: cs.eta_of(z), hx, hy }
}

/// Compares the computed curvature with [`closed_form_curvature`] on every
/// basis triple (hence every `(2n+1)⁴` component).
pub fn closed_form_record<S: Field>(
    curv: &CurvatureTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
) -> CheckRecord {
    closed_form_tally("curvature_closed_form", curv, cs, inv, closed_form_curvature).finish()
}

/// Number of basis triples on which the transcribed closed form disagrees.
pub fn transcribed_closed_form_mismatches<S: Field>(
    curv: &CurvatureTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
) -> usize {
    let d = cs.dim();
    let mut count = 0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (Vector::unit(d, i), Vector::unit(d, j), Vector::unit(d, k));
                let diff = &curv.apply(&x, &y, &z) - &transcribed_closed_form_curvature(cs, inv, &x, &y, &z);
                if !diff.is_negligible() {
                    count += 1;
                }
            }
        }
    }
    count
}

type ClosedForm<S> =
    fn(&ContactStructure<S>, &ModelInvariants<S>, &Vector<S>, &Vector<S>, &Vector<S>) -> Vector<S>;

fn closed_form_tally<S: Field>(
    id: &str,
    curv: &CurvatureTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
    form: ClosedForm<S>,
) -> Tally<S> {
    let d = cs.dim();
    let mut t = Tally::new(id);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (Vector::unit(d, i), Vector::unit(d, j), Vector::unit(d, k));
                t.compare(&[i, j, k], &curv.apply(&x, &y, &z), &form(cs, inv, &x, &y, &z));
            }
        }
    }
    t
}

/// `∇_X ξ = −φX − φhX` for every basis `X`.
pub fn reeb_derivative_record<S: Field>(conn: &ConnectionTable<S>, cs: &ContactStructure<S>) -> CheckRecord {
    let d = cs.dim();
    let rhs = (&cs.phi + &cs.phi_h()).scale(&-S::one());
    let mut t = Tally::new("nabla_xi");
    for i in 0..d {
        let x = Vector::unit(d, i);
        t.compare(&[i], &conn.nabla(&x, &cs.xi), &rhs.apply(&x));
    }
    t.finish()
}

/// `h² = (κ − 1)φ²` on every basis vector.
pub fn h_squared_record<S: Field>(cs: &ContactStructure<S>, inv: &ModelInvariants<S>) -> CheckRecord {
    let d = cs.dim();
    let lhs = &cs.h * &cs.h;
    let rhs = (&cs.phi * &cs.phi).scale(&(inv.kappa.clone() - S::one()));
    let mut t = Tally::new("h_squared");
    for j in 0..d {
        t.compare(&[j], &lhs.column(j), &rhs.column(j));
    }
    t.finish()
}

/// `(∇_X φ)Y = g(X, Y + hY)ξ − η(Y)(X + hX)`.
pub fn nabla_phi_record<S: Field>(conn: &ConnectionTable<S>, cs: &ContactStructure<S>) -> CheckRecord {
    let d = cs.dim();
    let mut t = Tally::new("nabla_phi");
    for i in 0..d {
        let x = Vector::unit(d, i);
        let dphi = covariant_derivative_11(conn, &cs.phi, &x).expect("square tensor");
        let hx = cs.h.apply(&x);
        for j in 0..d {
            let y = Vector::unit(d, j);
            let mut rhs = cs.xi.scale(&cs.g(&x, &(&y + &cs.h.apply(&y))));
            rhs.axpy(&-cs.eta_of(&y), &(&x + &hx));
            t.compare(&[i, j], &dphi.apply(&y), &rhs);
        }
    }
    t.finish()
}

/// `(∇_X h)Y = ((1−κ)g(X,φY) − g(X,φhY))ξ − η(Y)((1−κ)φX + φhX) − μη(X)φhY`.
pub fn nabla_h_record<S: Field>(
    conn: &ConnectionTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
) -> CheckRecord {
    let d = cs.dim();
    let gap = S::one() - inv.kappa.clone();
    let phi_h = cs.phi_h();
    let mut t = Tally::new("nabla_h");
    for i in 0..d {
        let x = Vector::unit(d, i);
        let dh = covariant_derivative_11(conn, &cs.h, &x).expect("square tensor");
        let px = cs.phi.apply(&x);
        let phx = phi_h.apply(&x);
        for j in 0..d {
            let y = Vector::unit(d, j);
            let phy = phi_h.apply(&y);
            let coef = gap.clone() * cs.g(&x, &cs.phi.apply(&y)) - cs.g(&x, &phy);
            let mut rhs = cs.xi.scale(&coef);
            let mut tail = px.scale(&gap);
            tail.axpy(&S::one(), &phx);
            rhs.axpy(&-cs.eta_of(&y), &tail);
            rhs.axpy(&-(inv.mu.clone() * cs.eta_of(&x)), &phy);
            t.compare(&[i, j], &dh.apply(&y), &rhs);
        }
    }
    t.finish()
}

/// Sectional curvature of every basis plane orthogonal to ξ:
/// `2(1+λ) − μ` on `E(λ)`, `2(1−λ) − μ` on `E(−λ)`, and
/// `−(κ+μ) g(X,φY)²` (normalized) on mixed planes.
pub fn sectional_record<S: Field>(curv: &CurvatureTable<S>, cs: &ContactStructure<S>, inv: &ModelInvariants<S>) -> CheckRecord {
    let basis = cs.basis();
    let n = cs.n;
    let two = S::two();
    let plus = two.clone() * (S::one() + cs.lambda.clone()) - inv.mu.clone();
    let minus = two * (S::one() - cs.lambda.clone()) - inv.mu.clone();
    let mut t = Tally::new("sectional_curvature");
    let mut check = |a: usize, b: usize, expected: S| {
        let (u, v) = (basis.unit(a), basis.unit(b));
        let k = sectional_curvature(curv, &cs.metric, &u, &v).expect("basis plane");
        t.compare_scalar(&[a, b], &k, &expected);
    };
    for i in 1..=n {
        for j in i + 1..=n {
            check(basis.x(i), basis.x(j), plus.clone());
            check(basis.y(i), basis.y(j), minus.clone());
        }
        for j in 1..=n {
            let (u, v) = (basis.unit(basis.x(i)), basis.unit(basis.y(j)));
            let c = cs.g(&u, &cs.phi.apply(&v));
            let expected = -(inv.kappa.clone() + inv.mu.clone()) * c.clone() * c / (cs.g(&u, &u) * cs.g(&v, &v));
            check(basis.x(i), basis.y(j), expected);
        }
    }
    t.finish()
}

/// `λ² = 1 − κ` and `I_M = (1 − μ/2)/λ`, the latter compared with the
/// exact-root formula when `1 − κ` is a perfect square.
pub fn invariant_records<S: Field>(inv: &ModelInvariants<S>) -> Vec<CheckRecord> {
    let mut t = Tally::new("lambda_squared");
    t.compare_scalar(&[], &(inv.lambda.clone() * inv.lambda.clone()), &(S::one() - inv.kappa.clone()));
    let mut u = Tally::new("boeckx_invariant");
    match boeckx_invariant(&inv.kappa, &inv.mu) {
        Ok(i) => u.compare_scalar(&[], &i, &inv.boeckx_i),
        Err(_) => u.scalar(&[], &S::one()),
    }
    vec![t.finish(), u.finish()]
}

/// Every identity a (κ,μ)-space satisfies, checked on the computed tensors.
pub fn verify_identities<S: Field>(
    conn: &ConnectionTable<S>,
    curv: &CurvatureTable<S>,
    cs: &ContactStructure<S>,
    inv: &ModelInvariants<S>,
) -> Vec<CheckRecord> {
    let mut out = vec![
        kappa_mu_condition(curv, cs, inv),
        h_squared_record(cs, inv),
        nabla_phi_record(conn, cs),
        nabla_h_record(conn, cs, inv),
        closed_form_record(curv, cs, inv),
        reeb_derivative_record(conn, cs),
        sectional_record(curv, cs, inv),
    ];
    out.extend(invariant_records(inv));
    out
}

/// `N_φ(u,v) = φ²[u,v] + [φu,φv] − φ[φu,v] − φ[u,φv] + 2dη(u,v)ξ` on basis
/// pairs; `table[i][j] = N_φ(e_i, e_j)`.
pub fn nijenhuis<S: Field>(algebra: &LieAlgebra<S>, cs: &ContactStructure<S>) -> Vec<Vec<Vector<S>>> {
    let d = cs.dim();
    let phi2 = &cs.phi * &cs.phi;
    let br = |u: &Vector<S>, v: &Vector<S>| algebra.bracket(u, v).expect("dimensions match");
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let (u, v) = (Vector::unit(d, i), Vector::unit(d, j));
                    let (pu, pv) = (cs.phi.apply(&u), cs.phi.apply(&v));
                    let mut out = phi2.apply(&br(&u, &v));
                    out.axpy(&S::one(), &br(&pu, &pv));
                    out.axpy(&-S::one(), &cs.phi.apply(&br(&pu, &v)));
                    out.axpy(&-S::one(), &cs.phi.apply(&br(&u, &pv)));
                    out.axpy(&(S::two() * d_eta(algebra, cs, &u, &v)), &cs.xi);
                    out
                })
                .collect()
        })
        .collect()
}

/// Passes when `N_φ` has a non-zero entry (the structure is not normal).
pub fn nijenhuis_record<S: Field>(table: &[Vec<Vector<S>>]) -> CheckRecord {
    let witness = table.iter().enumerate().find_map(|(i, row)| {
        row.iter().enumerate().find(|(_, v)| !v.is_negligible()).map(|(j, _)| vec![i, j])
    });
    CheckRecord {
        identity_id: "nijenhuis_nonzero".into(),
        status: if witness.is_some() { crate::report::Status::Pass } else { crate::report::Status::Fail },
        witness_indices: witness,
        residual: "0".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{levi_civita, riemann};
    use crate::lie::build_boeckx_model;
    use crate::scalar::{int, ratio};
    use num_rational::BigRational;

    struct Setup {
        model: BoeckxModel<BigRational>,
        conn: ConnectionTable<BigRational>,
        curv: CurvatureTable<BigRational>,
        cs: ContactStructure<BigRational>,
    }

    fn setup(n: usize, a: i64, b: i64) -> Setup {
        let model = build_boeckx_model(n, int(a), int(b)).unwrap();
        let conn = levi_civita(&model.algebra).unwrap();
        let curv = riemann(&model.algebra, &conn);
        let cs = build_contact_structure(&model).unwrap();
        Setup { model, conn, curv, cs }
    }

    #[test]
    fn fundamental_form_matches_d_eta_on_x1_y1() {
        let s = setup(2, 0, 2);
        let b = s.model.basis();
        let (x1, y1) = (b.unit(b.x(1)), b.unit(b.y(1)));
        assert_eq!(s.cs.fundamental_form(&x1, &y1), int(-1));
        assert_eq!(d_eta(&s.model.algebra, &s.cs, &x1, &y1), int(-1));
    }

    #[test]
    fn phi_squares_to_minus_identity_off_xi() {
        let s = setup(3, 1, 3);
        let b = s.model.basis();
        let x3 = b.unit::<BigRational>(b.x(3));
        assert_eq!(s.cs.phi.apply(&s.cs.phi.apply(&x3)), -&x3);
        for i in 0..b.dim() {
            assert_eq!(s.cs.eta_of(&s.cs.phi.apply(&b.unit(i))), int(0));
        }
    }

    #[test]
    fn h_on_alpha_zero_beta_two() {
        let s = setup(2, 0, 2);
        let b = s.model.basis();
        assert_eq!(s.cs.lambda, int(1));
        assert_eq!(s.cs.h.apply(&b.unit(b.x(1))), b.unit(b.x(1)));
        assert!(s.cs.h.apply(&s.cs.xi).is_negligible());
        for i in 1..=2 {
            assert_eq!(s.cs.h.apply(&b.unit(b.y(i))), b.unit::<BigRational>(b.y(i)).scale(&int(-1)));
        }
    }

    #[test]
    fn invariants_alpha_zero_beta_two() {
        let s = setup(2, 0, 2);
        let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        assert_eq!((inv.kappa, inv.mu, inv.lambda, inv.boeckx_i), (int(0), int(4), int(1), int(-1)));
    }

    #[test]
    fn invariants_alpha_one_beta_three() {
        let s = setup(2, 1, 3);
        let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        assert_eq!((inv.kappa, inv.mu, inv.lambda, inv.boeckx_i), (int(-3), int(7), int(2), ratio(-5, 4)));
    }

    #[test]
    fn invariants_do_not_depend_on_dimension() {
        let a = setup(2, 0, 2);
        let b = setup(3, 0, 2);
        assert_eq!(extract_kappa_mu(&a.curv, &a.cs).unwrap(), extract_kappa_mu(&b.curv, &b.cs).unwrap());
    }

    #[test]
    fn identities_hold() {
        for (n, a, b) in [(2, 0, 2), (3, 1, 3)] {
            let s = setup(n, a, b);
            let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
            for r in verify_identities(&s.conn, &s.curv, &s.cs, &inv) {
                assert!(r.passed(), "n={n} a={a} b={b}: {r:?}");
            }
        }
    }

    #[test]
    fn perturbed_mu_breaks_closed_form() {
        let s = setup(2, 0, 2);
        let mut inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        inv.mu += int(1);
        let r = closed_form_record(&s.curv, &s.cs, &inv);
        assert!(!r.passed());
        assert!(r.witness_indices.is_some());
    }

    #[test]
    fn transcribed_closed_form_disagrees() {
        let s = setup(2, 1, 3);
        let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        assert!(transcribed_closed_form_mismatches(&s.curv, &s.cs, &inv) > 0);
    }

    #[test]
    fn nabla_phi_on_x1() {
        let s = setup(2, 0, 2);
        let b = s.model.basis();
        let x = b.unit(b.x(1));
        let dphi = covariant_derivative_11(&s.conn, &s.cs.phi, &x).unwrap();
        let hx = s.cs.h.apply(&x);
        for j in 0..b.dim() {
            let y = b.unit(j);
            let mut rhs = s.cs.xi.scale(&s.cs.g(&x, &(&y + &s.cs.h.apply(&y))));
            rhs.axpy(&-s.cs.eta_of(&y), &(&x + &hx));
            assert_eq!(dphi.apply(&y), rhs);
        }
    }

    #[test]
    fn nabla_h_along_xi_uses_mu_term() {
        let s = setup(2, 1, 3);
        let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        let b = s.model.basis();
        let dh = covariant_derivative_11(&s.conn, &s.cs.h, &s.cs.xi).unwrap();
        // For Y ⊥ ξ the only surviving term is −μ φhY.
        for j in 1..b.dim() {
            let y = b.unit(j);
            let expected = s.cs.phi_h().apply(&y).scale(&-inv.mu.clone());
            assert_eq!(dh.apply(&y), expected);
            assert!(!expected.is_negligible());
        }
    }

    #[test]
    fn sectional_values() {
        let s = setup(3, 1, 3);
        let inv = extract_kappa_mu(&s.curv, &s.cs).unwrap();
        let b = s.model.basis();
        let k = |u, v| sectional_curvature(&s.curv, &s.cs.metric, &b.unit(u), &b.unit(v)).unwrap();
        assert_eq!(k(b.x(1), b.x(2)), int(2) * (int(1) + int(2)) - int(7));
        assert_eq!(k(b.y(1), b.y(3)), int(2) * (int(1) - int(2)) - int(7));
        assert_eq!(k(b.x(2), b.y(2)), -(inv.kappa.clone() + inv.mu.clone()));
        assert_eq!(k(b.x(1), b.y(3)), int(0));
    }

    #[test]
    fn structure_is_not_normal() {
        let s = setup(2, 0, 2);
        let table = nijenhuis(&s.model.algebra, &s.cs);
        assert!(nijenhuis_record(&table).passed());
        for (i, row) in table.iter().enumerate() {
            assert!(row[i].is_negligible());
        }
    }

    #[test]
    fn boeckx_invariant_formula() {
        assert_eq!(boeckx_invariant(&int(-3), &int(7)).unwrap(), ratio(-5, 4));
        assert!(boeckx_invariant(&int(1), &int(2)).is_err());
        assert!(matches!(boeckx_invariant(&int(-1), &int(2)), Err(Error::NoExactRoot(_))));
    }

    #[test]
    fn rejects_non_contact_phi() {
        let model = build_boeckx_model(2, int(0), int(2)).unwrap();
        let cs = build_contact_structure(&model).unwrap();
        let flipped = cs.phi.scale(&int(-1));
        let err = ContactStructure::new(&model.algebra, 2, flipped, cs.xi.clone(), cs.eta.clone()).unwrap_err();
        assert!(matches!(err, Error::Structure { ref identity, .. } if identity == "contact_condition"), "{err:?}");
    }
}
