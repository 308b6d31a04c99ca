//! Verification pipelines behind the CLI subcommands.

use anyhow::{bail, Context, Result};
use kmu_core::connection::{curvature_symmetries, levi_civita, metric_violation, riemann, torsion_violation};
use kmu_core::contact::{
    build_contact_structure, contact_axiom_records, extract_kappa_mu, nijenhuis, nijenhuis_record,
    transcribed_closed_form_mismatches, verify_identities,
};
use kmu_core::deformation::verify_deformation;
use kmu_core::lie::{build_boeckx_model, check_jacobi};
use kmu_core::reference::{diagonal_mismatches, reference_connection_record};
use kmu_core::report::{CheckRecord, Note, Tally};
use kmu_core::scalar::int;
use kmu_core::submanifold::{
    build_distribution, decomposition_records, gauss_codazzi_residuals, second_fundamental_form, summarize,
    weingarten_records, DistributionKind, ZChoice,
};
use kmu_core::{Connection, Contact, Curvature, Invariants, Model, Scalar};
use rayon::prelude::*;

use crate::descriptor::{Model as Resolved, SweepDescriptor};
use crate::report::{
    q, DeformationOut, ModelEcho, PredictedOut, RejectedPoint, Report, SubmanifoldOut, SweepReport,
    SweepRow, SweepSummary, TableEntry, TablesDump,
};

/// Diagonal parameters used for the reference connection tables.
pub fn reference_diagonals() -> Vec<(Scalar, Scalar)> {
    vec![(int(1), int(1)), (int(2), int(1)), (int(1), int(3))]
}

/// Everything computed for one model, plus its records and notes.
pub struct Analysis {
    pub model: Model,
    pub conn: Connection,
    pub curv: Curvature,
    pub cs: Contact,
    pub inv: Invariants,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<Note>,
}

/// Lie algebra → Jacobi → connection → curvature → contact structure →
/// (κ, μ) extraction → identities.
pub fn analyze(n: usize, alpha: &Scalar, beta: &Scalar) -> Result<Analysis> {
    let model = build_boeckx_model(n, alpha.clone(), beta.clone()).context("stage: build model")?;
    let mut records = Vec::new();

    let jacobi = check_jacobi(&model.algebra);
    records.push(CheckRecord::verdict(
        "jacobi",
        jacobi.holds(),
        jacobi.violations.first().map(|&(i, j, k)| vec![i, j, k]),
    ));

    let conn = levi_civita(&model.algebra).context("stage: connection")?;
    let torsion = torsion_violation(&model.algebra, &conn);
    records.push(CheckRecord::verdict("torsion_free", torsion.is_none(), torsion.map(|(i, j)| vec![i, j])));
    let metric = metric_violation(&model.algebra, &conn);
    records.push(CheckRecord::verdict("metric_compatible", metric.is_none(), metric.map(|(i, j, k)| vec![i, j, k])));

    let curv = riemann(&model.algebra, &conn);
    let sym = curvature_symmetries(&curv);
    records.push(CheckRecord::verdict("curvature_antisymmetry", sym.antisymmetry.is_none(), sym.antisymmetry.map(|(i, j, k)| vec![i, j, k])));
    records.push(CheckRecord::verdict("first_bianchi", sym.bianchi.is_none(), sym.bianchi.map(|(i, j, k)| vec![i, j, k])));
    records.push(CheckRecord::verdict(
        "curvature_pair_symmetry",
        sym.pair_symmetry.is_none(),
        sym.pair_symmetry.map(|(i, j, k, l)| vec![i, j, k, l]),
    ));

    let cs = build_contact_structure(&model).context("stage: contact structure")?;
    records.extend(contact_axiom_records(&model.algebra, &cs));
    let inv = extract_kappa_mu(&curv, &cs).context("stage: (kappa, mu) extraction")?;
    records.extend(verify_identities(&conn, &curv, &cs, &inv));
    records.extend(formula_records(&model, &inv));
    records.push(reference_connection_record(&conn, &model, &inv.lambda, &reference_diagonals()));
    records.push(nijenhuis_record(&nijenhuis(&model.algebra, &cs)));

    let notes = model_notes(&model, &conn, &curv, &cs, &inv);
    Ok(Analysis { model, conn, curv, cs, inv, records, notes })
}

/// Extracted invariants against the closed forms in α, β.
fn formula_records(model: &Model, inv: &Invariants) -> Vec<CheckRecord> {
    let (a2, b2) = (model.alpha.clone() * &model.alpha, model.beta.clone() * &model.beta);
    let gap = b2.clone() - &a2;
    let mut t = Tally::new("invariant_formulas");
    t.compare_scalar(&[0], &inv.kappa, &(int(1) - gap.clone() * &gap / int(16)));
    t.compare_scalar(&[1], &inv.mu, &(int(2) + (a2.clone() + &b2) / int(2)));
    t.compare_scalar(&[2], &inv.lambda, &(gap.clone() / int(4)));
    t.compare_scalar(&[3], &inv.boeckx_i, &expected_boeckx_i(&model.alpha, &model.beta));
    vec![t.finish()]
}

pub fn expected_boeckx_i(alpha: &Scalar, beta: &Scalar) -> Scalar {
    let (a2, b2) = (alpha.clone() * alpha, beta.clone() * beta);
    -(b2.clone() + &a2) / (b2 - a2)
}

fn model_notes(model: &Model, conn: &Connection, curv: &Curvature, cs: &Contact, inv: &Invariants) -> Vec<Note> {
    let half_gap = (model.beta.clone() * &model.beta - model.alpha.clone() * &model.alpha) / int(2);
    let one_minus_kappa = int(1) - inv.kappa.clone();
    let broken = diagonal_mismatches(conn, model, &half_gap, &int(1), &int(1));
    let mut notes = vec![Note::new(
        "lambda",
        format!(
            "h has eigenvalue lambda = (beta^2 - alpha^2)/4 = {} on X_i; the value (beta^2 - alpha^2)/2 = {} gives \
             lambda^2 = {} instead of 1 - kappa = {} and breaks {} entries of the diagonal connection table",
            q(&inv.lambda),
            q(&half_gap),
            q(&(half_gap.clone() * &half_gap)),
            q(&one_minus_kappa),
            broken
        ),
    )];
    let mismatches = transcribed_closed_form_mismatches(curv, cs, inv);
    if mismatches > 0 {
        notes.push(Note::new(
            "curvature_closed_form",
            format!(
                "the commonly transcribed closed form (no mu g(phi X, Y) phi Z term, eta-terms with flipped signs) \
                 disagrees with the computed curvature on {mismatches} of {} basis triples; the corrected form is \
                 the one checked",
                cs.dim().pow(3)
            ),
        ));
    }
    notes
}

fn echo(desc: &Resolved, a: Option<&Scalar>) -> ModelEcho {
    ModelEcho { n: desc.n, alpha: q(&desc.alpha), beta: q(&desc.beta), deformation_a: a.map(q) }
}

fn deformation_section(an: &Analysis, a: &Scalar) -> Result<(DeformationOut, Vec<Note>)> {
    let out = verify_deformation(&an.model.algebra, &an.cs, &an.inv, a).context("stage: deformation")?;
    let section = DeformationOut {
        a: q(&out.a),
        before: (&out.before).into(),
        after: (&out.after).into(),
        predicted: PredictedOut { kappa: q(&out.predicted_kappa), mu: q(&out.predicted_mu) },
        records: out.records,
    };
    Ok((section, out.notes))
}

fn kind_params(kind: &DistributionKind<Scalar>) -> Vec<String> {
    match kind {
        DistributionKind::Mixed { z_choices } => z_choices
            .iter()
            .map(|z| match z {
                ZChoice::X => "x".to_string(),
                ZChoice::Y => "y".to_string(),
            })
            .collect(),
        DistributionKind::Diagonal { c, d } => vec![q(c), q(d)],
        _ => Vec::new(),
    }
}

/// Builds the leaf of `kind` and runs every submanifold check on it.
pub fn submanifold_section(an: &Analysis, kind: DistributionKind<Scalar>) -> Result<SubmanifoldOut> {
    let params = kind_params(&kind);
    let dist = build_distribution(an.model.n, kind).context("stage: distribution")?;
    let geom = match second_fundamental_form(&an.model.algebra, &an.conn, &an.cs, &dist) {
        Ok(g) => g,
        Err(kmu_core::Error::NotInvolutive { witness }) => {
            return Ok(SubmanifoldOut {
                kind: dist.kind.label().into(),
                params,
                involutive: false,
                involutivity_witness: Some([witness.0, witness.1]),
                classification: None,
                v: None,
                h1_eigenvalue: None,
                h2_eigenvalue: None,
                tn_split: None,
                leaf_curvature: None,
                leaf_curvature_plus: None,
                leaf_curvature_minus: None,
                theta: None,
                records: vec![CheckRecord::verdict("involutive", false, Some(vec![witness.0, witness.1]))],
            })
        }
        Err(e) => return Err(e).context("stage: second fundamental form"),
    };
    let mut records = vec![CheckRecord::verdict("involutive", true, None)];
    records.extend(decomposition_records(&an.cs, &an.inv, &dist, &geom));
    records.extend(weingarten_records(&an.conn, &an.cs, &geom));
    records.extend(gauss_codazzi_residuals(&an.conn, &an.curv, &geom));
    let summary = summarize(&an.cs, &dist, &geom)?;
    Ok(SubmanifoldOut::from_summary(params, &summary, records))
}

fn base_report(desc: &Resolved, an: &Analysis, a: Option<&Scalar>) -> Report {
    Report {
        model: echo(desc, a),
        invariants: (&an.inv).into(),
        records: an.records.clone(),
        deformation: None,
        submanifolds: Vec::new(),
        notes: an.notes.clone(),
        pass: false,
    }
}

/// Full verification of a descriptor, including its optional deformation
/// and submanifold blocks.
pub fn cmd_verify(desc: &Resolved) -> Result<Report> {
    let an = analyze(desc.n, &desc.alpha, &desc.beta)?;
    let mut report = base_report(desc, &an, desc.deformation_a.as_ref());
    if let Some(a) = &desc.deformation_a {
        let (section, notes) = deformation_section(&an, a)?;
        report.deformation = Some(section);
        report.notes.extend(notes);
    }
    for kind in &desc.submanifolds {
        report.submanifolds.push(submanifold_section(&an, kind.clone())?);
    }
    Ok(report.seal())
}

/// Deformation by `a` (falling back to the descriptor's `deformation_a`).
pub fn cmd_deform(desc: &Resolved, a: Option<&Scalar>) -> Result<Report> {
    let a = a.or(desc.deformation_a.as_ref()).context("no deformation parameter: pass --a or set deformation_a")?;
    let an = analyze(desc.n, &desc.alpha, &desc.beta)?;
    let mut report = base_report(desc, &an, Some(a));
    let (section, notes) = deformation_section(&an, a)?;
    report.deformation = Some(section);
    report.notes.extend(notes);
    Ok(report.seal())
}

pub fn cmd_submanifold(desc: &Resolved, kind: DistributionKind<Scalar>) -> Result<Report> {
    let an = analyze(desc.n, &desc.alpha, &desc.beta)?;
    let mut report = base_report(desc, &an, None);
    report.submanifolds.push(submanifold_section(&an, kind)?);
    Ok(report.seal())
}

fn sweep_row(n: usize, alpha: &Scalar, beta: &Scalar) -> std::result::Result<SweepRow, String> {
    if beta <= alpha {
        return Err("beta must exceed alpha".into());
    }
    let an = analyze(n, alpha, beta).map_err(|e| format!("{e:#}"))?;
    let expected = expected_boeckx_i(alpha, beta);
    let mut failed: Vec<CheckRecord> = an.records.into_iter().filter(|r| !r.passed()).collect();
    if an.inv.boeckx_i > int(-1) {
        failed.push(CheckRecord::verdict("boeckx_invariant_at_most_minus_one", false, None));
    }
    Ok(SweepRow {
        n,
        alpha: q(alpha),
        beta: q(beta),
        invariants: (&an.inv).into(),
        expected_boeckx_i: q(&expected),
        pass: failed.is_empty(),
        failed_records: failed,
    })
}

/// Threads for sweeps: `KMU_THREADS` if set to a positive integer, otherwise
/// rayon's default (all cores).
pub fn sweep_threads() -> Option<usize> {
    std::env::var("KMU_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// One row per grid point (sorted by `(n, α, β)`), rejected rows listed
/// separately, and summary checks over the whole grid.
pub fn cmd_sweep(grid: &SweepDescriptor) -> Result<SweepReport> {
    let mut points = grid.points()?;
    points.sort();
    points.dedup();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = sweep_threads() {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().context("building the sweep thread pool")?;
    let results: Vec<_> = pool.install(|| {
        points.par_iter().map(|(n, a, b)| ((*n, a.clone(), b.clone()), sweep_row(*n, a, b))).collect()
    });

    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut rejected = Vec::new();
    let mut t_formula = Tally::<Scalar>::new("boeckx_invariant_formula");
    let mut equality_ok = true;
    for (idx, ((n, a, b), res)) in results.into_iter().enumerate() {
        match res {
            Ok(row) => {
                let expected = expected_boeckx_i(&a, &b);
                let got = kmu_core::scalar::parse_rational(&row.invariants.boeckx_i)?;
                t_formula.compare_scalar(&[idx], &got, &expected);
                if (got == int(-1)) != (a == int(0)) {
                    equality_ok = false;
                }
                values.push(got);
                rows.push(row);
            }
            Err(reason) => rejected.push(RejectedPoint { n, alpha: q(&a), beta: q(&b), reason }),
        }
    }
    if rows.is_empty() {
        bail!("no admissible grid points (every row has beta <= alpha or is degenerate)");
    }
    values.sort();
    let mut distinct = values.clone();
    distinct.dedup();
    let max = values.last().cloned().expect("rows is non-empty");
    let records = vec![
        t_formula.finish(),
        CheckRecord::verdict("boeckx_invariant_at_most_minus_one", max <= int(-1), None),
        CheckRecord::verdict("minus_one_iff_alpha_zero", equality_ok, None),
    ];
    let summary = SweepSummary {
        min_boeckx_i: q(&values[0]),
        max_boeckx_i: q(&max),
        distinct_boeckx_i: distinct.iter().map(q).collect(),
        records,
    };
    let pass = rows.iter().all(|r| r.pass) && summary.records.iter().all(CheckRecord::passed);
    Ok(SweepReport { points: rows, rejected, summary, pass })
}

/// Non-zero connection coefficients and curvature components.
pub fn dump_tables(desc: &Resolved) -> Result<TablesDump> {
    let model = build_boeckx_model(desc.n, desc.alpha.clone(), desc.beta.clone()).context("stage: build model")?;
    let conn = levi_civita(&model.algebra).context("stage: connection")?;
    let curv = riemann(&model.algebra, &conn);
    let basis = model.basis();
    let d = basis.dim();
    let mut connection = Vec::new();
    let mut curvature = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let g = conn.coefficient(i, j, k);
                if *g != int(0) {
                    connection.push(TableEntry { index: vec![i, j, k], value: q(g) });
                }
                for l in 0..d {
                    let r = curv.component(l, i, j, k);
                    if *r != int(0) {
                        curvature.push(TableEntry { index: vec![i, j, k, l], value: q(r) });
                    }
                }
            }
        }
    }
    Ok(TablesDump { model: echo(desc, None), basis: (0..d).map(|i| basis.label(i)).collect(), connection, curvature })
}
