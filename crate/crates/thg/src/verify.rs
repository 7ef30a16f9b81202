//! Full verification runs: per-model structural checks, the implication
//! audits, cross-model comparisons and the literature examples.

use thg_core::fox::{fox_sequence_check, gottlieb_fox_index, gottlieb_fox_invariants, is_n_gottlieb, prop26_crosscheck};
use thg_core::rhodes::{
    classify, compute_g0, equivariant_g1_check, equivariant_n_gottlieb, gottlieb_rhodes_invariants, oprea_check, prop37_check,
    rhodes_split_check, sigma1_group, sigma_invariants, theorem31_audit,
};
use thg_core::{
    CayleyGroup, CheckReport, Determined, Error, ErrorKind, FgAbelian, Pi1, SpaceModel, TransformationModel,
    Verdict,
};
use thg_core::report::{Source, Status};

use crate::catalog::{sphere_template, Catalog, TEMPLATE_SAMPLES};
use crate::schema::{load_document, serialize, Document};

/// The reports of one run, in a fixed order.
#[derive(Clone, Debug, Default)]
pub struct Run {
    pub reports: Vec<CheckReport>,
}

impl Run {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().map(|r| r.count(status)).sum()
    }

    pub fn entries(&self) -> usize {
        self.reports.iter().map(|r| r.entries.len()).sum()
    }
}

/// Turns a failed computation into a report entry.
fn error_status(e: &Error) -> Status {
    match e.kind {
        ErrorKind::NotApplicable => Status::NotApplicable,
        ErrorKind::InvariantViolation => Status::Violation,
        _ => Status::Fail,
    }
}

fn push_error(report: &mut CheckReport, item: impl Into<String>, e: &Error, rule: &str) {
    report.push(item, error_status(e), e.to_string(), rule, Source::Computed);
}

/// Appends a computed report, or an entry describing why it could not be computed.
fn absorb(run: &mut Run, check: &str, subject: &str, rule: &str, r: thg_core::Result<CheckReport>) {
    match r {
        Ok(rep) => run.reports.push(rep),
        Err(e) => {
            let mut rep = CheckReport::new(check, subject);
            push_error(&mut rep, "computation", &e, rule);
            run.reports.push(rep);
        }
    }
}

fn bound(max_n: u32, truncation: u32) -> u32 {
    max_n.min(truncation)
}

fn validation_report(subject: &str, warnings: &[String]) -> CheckReport {
    let mut rep = CheckReport::new("model-validation", subject);
    if warnings.is_empty() {
        rep.push("invariants", Status::Pass, "all model invariants hold", "model-invariants", Source::Computed);
    }
    for w in warnings {
        rep.push("G_1 central", Status::Fail, w.clone(), "gottlieb-1-is-central", Source::Literature);
    }
    rep
}

fn round_trip_report(catalog: &Catalog, doc: &Document) -> CheckReport {
    let mut rep = CheckReport::new("round-trip", doc.name());
    let rule = "load-serialize-identity";
    let text = serialize(doc);
    let resolve = catalog.resolver();
    match load_document(&text, &resolve) {
        Ok((again, _)) => {
            rep.push("model", Status::from_bool(&again == doc), "reloaded model equals the original", rule, Source::Computed);
            rep.push(
                "text",
                Status::from_bool(serialize(&again) == text),
                "canonical serialization is a fixed point",
                rule,
                Source::Computed,
            );
        }
        Err(e) => push_error(&mut rep, "reload", &e, rule),
    }
    rep
}

/// Structural checks on a space through degree `max_n`.
pub fn verify_space(run: &mut Run, x: &SpaceModel, max_n: u32) {
    let top = bound(max_n, x.truncation);
    for n in 2..=top {
        absorb(run, "fox-sequence", &format!("{} n={n}", x.name), "fox-split-exact-sequence", fox_sequence_check(x, n));
    }
    absorb(run, "gottlieb-vs-gottlieb-fox", &x.name, "gottlieb-iff-gottlieb-fox", prop26_crosscheck(x, top));
}

fn sigma_report(tg: &TransformationModel, top: u32) -> CheckReport {
    let mut rep = CheckReport::new("sigma-two-ways", tg.name.clone());
    let rule = "rhodes-group-is-orbit-torus-group";
    for n in 1..=top {
        match sigma_invariants(tg, n) {
            Ok(s) => rep.push(
                format!("n={n}"),
                Status::from_bool(s.agree()),
                format!(
                    "orbit order {} rank {}; extension order {} rank {}",
                    s.orbit.finite_order, s.orbit.free_rank, s.extension.finite_order, s.extension.free_rank
                ),
                rule,
                Source::Literature,
            ),
            Err(e) => push_error(&mut rep, format!("n={n}"), &e, rule),
        }
    }
    rep
}

fn g0_report(tg: &TransformationModel) -> thg_core::Result<CheckReport> {
    let g0 = compute_g0(tg)?;
    let mut rep = CheckReport::new("g0", tg.name.clone());
    for v in &g0.verdicts {
        let status = match v.membership {
            thg_core::rhodes::Membership::Undetermined => Status::Indeterminate,
            _ => Status::Pass,
        };
        let detail = match v.membership {
            thg_core::rhodes::Membership::InG0 => "in G0",
            thg_core::rhodes::Membership::NotInG0 => "not in G0",
            thg_core::rhodes::Membership::Undetermined => "undetermined",
        };
        rep.push(v.element.clone(), status, detail, v.rule, Source::Computed);
    }
    Ok(rep)
}

/// Compares the orbit space with an independently recorded model of it.
fn orbit_comparison(tg: &TransformationModel, recorded: &SpaceModel, top: u32) -> thg_core::Result<CheckReport> {
    let orbit = tg.orbit_space()?;
    let mut rep = CheckReport::new("orbit-vs-recorded-model", format!("{} vs {}", tg.name, recorded.name));
    let rule = "orbit-space-data-consistency";
    let same_pi1 = match (&orbit.pi1, &recorded.pi1) {
        (Pi1::Finite(a), Pi1::Finite(b)) => a.is_isomorphic(b)?,
        (a, b) => {
            a.order() == b.order() && a.hirsch_length() == b.hirsch_length() && a.abelianization()? == b.abelianization()?
        }
    };
    rep.push("pi_1", Status::from_bool(same_pi1), format!("{} vs {}", orbit.pi1.label(), recorded.pi1.label()), rule, Source::Computed);
    let top = top.min(recorded.truncation);
    for i in 2..=top {
        let (a, b) = (orbit.pi_abelian(i)?, recorded.pi_abelian(i)?);
        rep.push(format!("pi_{i}"), Status::from_bool(a == b), format!("{a} vs {b}"), rule, Source::Computed);
    }
    for i in 1..=top {
        let (a, b) = (orbit.gottlieb_index(i)?, recorded.gottlieb_index(i)?);
        let status = match (&a, &b) {
            (Some(x), Some(y)) => Status::from_bool(x == y),
            _ => Status::Indeterminate,
        };
        let show = |v: &Option<thg_core::ExtNat>| v.as_ref().map_or("unknown".to_string(), ToString::to_string);
        rep.push(format!("[pi_{i} : G_{i}]"), status, format!("{} vs {}", show(&a), show(&b)), rule, Source::Computed);
    }
    Ok(rep)
}

/// Checks on a transformation group through degree `max_n`.
pub fn verify_transformation(run: &mut Run, catalog: &Catalog, tg: &TransformationModel, max_n: u32) {
    let name = tg.name.as_str();
    let top = bound(max_n, tg.space.truncation);
    absorb(run, "g0", name, "g0-rules", g0_report(tg));
    if !tg.free {
        return;
    }
    run.reports.push(sigma_report(tg, top));
    for n in 2..=top {
        absorb(run, "rhodes-sequence", &format!("{name} n={n}"), "rhodes-split-exact-sequence", rhodes_split_check(tg, n));
    }
    audit_transformation(run, tg, max_n);
    if let Some(other) = &tg.orbit_model {
        let rule = "orbit-space-data-consistency";
        match catalog.space(other) {
            Some(recorded) => {
                let r = orbit_comparison(tg, &recorded, tg.space.truncation);
                absorb(run, "orbit-vs-recorded-model", name, rule, r)
            }
            None => {
                let mut rep = CheckReport::new("orbit-vs-recorded-model", name);
                rep.push("recorded model", Status::Fail, format!("no catalog space {other:?}"), rule, Source::Computed);
                run.reports.push(rep);
            }
        }
    }
}

/// Every check on one catalog entry.
pub fn verify_document(run: &mut Run, catalog: &Catalog, doc: &Document, warnings: &[String], max_n: u32) {
    run.reports.push(validation_report(doc.name(), warnings));
    run.reports.push(round_trip_report(catalog, doc));
    match doc {
        Document::Space(x) => verify_space(run, x, max_n),
        Document::Transformation { model, .. } => verify_transformation(run, catalog, model, max_n),
    }
}

/// The whole catalog, the sphere template samples, and the literature examples.
pub fn verify_all(catalog: &Catalog, max_n: u32) -> Run {
    let mut run = Run::default();
    rejections(&mut run, catalog);
    for e in catalog.entries() {
        verify_document(&mut run, catalog, &e.document, &e.warnings, max_n);
    }
    for &n in TEMPLATE_SAMPLES {
        if catalog.get(&format!("s{n}")).is_some() {
            continue;
        }
        if let Some(x) = sphere_template(n) {
            let warnings = x.validate().unwrap_or_default();
            verify_document(&mut run, catalog, &Document::Space(x), &warnings, max_n);
        }
    }
    run.reports.push(literature_examples(catalog, max_n));
    run
}

/// Catalog files that failed an invariant at load time.
pub fn rejections(run: &mut Run, catalog: &Catalog) {
    for (file, e) in catalog.rejected() {
        let mut rep = CheckReport::new("model-validation", file);
        push_error(&mut rep, "load", e, "model-invariants");
        run.reports.push(rep);
    }
}

/// Records one expected value; a missing model makes the entry not applicable.
fn expect(report: &mut CheckReport, item: &str, rule: &str, f: impl FnOnce() -> thg_core::Result<(bool, String)>) {
    match f() {
        Ok((ok, detail)) => report.push(item, Status::from_bool(ok), detail, rule, Source::Literature),
        Err(e) if e.kind == ErrorKind::NotFound => report.push(item, Status::NotApplicable, e.message, rule, Source::Literature),
        Err(e) => push_error(report, item, &e, rule),
    }
}

fn transformation(catalog: &Catalog, name: &str) -> thg_core::Result<TransformationModel> {
    catalog
        .transformations()
        .into_iter()
        .find(|t| t.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| Error::not_found(format!("model {name} is not in the catalog")))
}

fn space(catalog: &Catalog, name: &str) -> thg_core::Result<SpaceModel> {
    catalog
        .space(name)
        .ok_or_else(|| Error::not_found(format!("model {name} is not in the catalog")))
}

fn g0_order(tg: &TransformationModel) -> thg_core::Result<Option<usize>> {
    Ok(match compute_g0(tg)?.determined() {
        Determined::Known(s) => Some(s.order()),
        Determined::Indeterminate(_) => None,
    })
}

/// Expected values for the worked examples in the literature.
pub fn literature_examples(catalog: &Catalog, max_n: u32) -> CheckReport {
    let mut report = CheckReport::new("literature-examples", "catalog");
    let r = &mut report;
    let quaternion = transformation(catalog, "rp3-z2z2");
    let rp = |f: &dyn Fn(&TransformationModel) -> thg_core::Result<(bool, String)>| {
        quaternion.clone().and_then(|t| f(&t))
    };
    expect(r, "rp3-z2z2 sigma_1 is Q8", "quaternion-rhodes-group", || {
        rp(&|t| {
            let s = sigma1_group(t)?;
            Ok((s.is_isomorphic(&CayleyGroup::quaternion())?, s.label().to_string()))
        })
    });
    expect(r, "rp3-z2z2 Gsigma_1 is Q8, non-abelian", "quaternion-rhodes-group", || {
        rp(&|t| match gottlieb_rhodes_invariants(t, 1)? {
            Determined::Known(gr) => {
                let real = gr.realized.as_ref();
                let ok = real.is_some_and(|r| r.order() == 8 && r.is_isomorphic(&CayleyGroup::quaternion()).unwrap_or(false))
                    && gr.abelian == Some(false);
                Ok((ok, format!("order {}, abelian {:?}", gr.summary.finite_order, gr.abelian)))
            }
            Determined::Indeterminate(r) => Ok((false, r)),
        })
    });
    expect(r, "rp3-z2z2 Gtau_1 is Z2", "quaternion-rhodes-group", || {
        rp(&|t| match gottlieb_fox_invariants(&t.space, 1)? {
            Determined::Known(s) => {
                let ok = s.layer_product() == Some(FgAbelian::cyclic(2)) && s.free_rank == 0;
                Ok((ok, thg_core::fox::describe_layers(&s)))
            }
            Determined::Indeterminate(r) => Ok((false, r)),
        })
    });
    expect(r, "rp3-z2z2 G0 = G", "quaternion-rhodes-group", || {
        rp(&|t| {
            let w = compute_g0(t)?.is_whole();
            Ok((w == Verdict::True, format!("G0 = G: {w}")))
        })
    });

    for (name, whole) in [("s3-z4", true), ("s3-q8", true), ("s1-z2", true), ("s2-z2", false), ("t3-z2", false), ("s3xs3xs3-z2", false)] {
        let expected = if whole { "G0 = G" } else { "G0 = {e}" };
        expect(r, &format!("{name} {expected}"), "g0-examples", || {
            let t = transformation(catalog, name)?;
            let order = g0_order(&t)?;
            let want = if whole { t.group.order() } else { 1 };
            Ok((order == Some(want), format!("|G0| = {order:?}, |G| = {}", t.group.order())))
        });
    }

    expect(r, "t3-z2 gottlieb-fox but not gottlieb-rhodes", "torus-involution", || {
        let t = transformation(catalog, "t3-z2")?;
        let c = classify(&t, bound(max_n, t.space.truncation))?;
        Ok((
            c.gottlieb_fox == Verdict::True && c.gottlieb_rhodes == Verdict::False,
            format!("gottlieb-fox {}, gottlieb-rhodes {}", c.gottlieb_fox, c.gottlieb_rhodes),
        ))
    });
    expect(r, "t3-z2 orbit center Z, abelianization Z + Z2 + Z2", "torus-involution", || {
        let t = transformation(catalog, "t3-z2")?;
        let o = t.orbit_space()?;
        let Pi1::Virt(v) = &o.pi1 else {
            return Ok((false, format!("orbit fundamental group {}", o.pi1.label())));
        };
        let center = v.center_group()?;
        let ab = v.abelianization()?;
        let want = FgAbelian::canonical_form(1, &[2, 2])?;
        Ok((
            center == Some(FgAbelian::free(1)) && ab == want,
            format!("center {center:?}, abelianization {ab}"),
        ))
    });

    expect(r, "s3xs3xs3-z2 equivariantly gottlieb, not gottlieb-rhodes", "product-of-spheres-involution", || {
        let t = transformation(catalog, "s3xs3xs3-z2")?;
        let c = classify(&t, bound(max_n, t.space.truncation))?;
        Ok((
            c.equivariant_gottlieb == Verdict::True && c.gottlieb_rhodes == Verdict::False,
            format!("equivariant {}, gottlieb-rhodes {}", c.equivariant_gottlieb, c.gottlieb_rhodes),
        ))
    });
    expect(r, "s3xs3xs3-z2 orbit pi_1 = Z2, pi_3 = Z^3", "product-of-spheres-involution", || {
        let t = transformation(catalog, "s3xs3xs3-z2")?;
        let o = t.orbit_space()?;
        let pi3 = o.pi_abelian(3)?;
        Ok((
            o.pi1.order() == thg_core::ExtNat::from(2usize) && pi3 == FgAbelian::free(3),
            format!("pi_1 {}, pi_3 {pi3}", o.pi1.label()),
        ))
    });

    expect(r, "s3-z4 equivariantly n-gottlieb for every n", "sphere-space-forms", || {
        let t = transformation(catalog, "s3-z4")?;
        let o = t.orbit_space()?;
        let top = bound(max_n, t.space.truncation);
        let verdicts: Vec<Verdict> = (1..=top)
            .map(|n| equivariant_n_gottlieb(&t, &o, n).map(|j| j.verdict))
            .collect::<thg_core::Result<_>>()?;
        Ok((verdicts.iter().all(|v| *v == Verdict::True), format!("{verdicts:?}")))
    });
    expect(r, "s3-mod-z4 is 1-gottlieb", "sphere-space-forms", || {
        let x = space(catalog, "s3-mod-z4")?;
        let v = is_n_gottlieb(&x, 1)?;
        Ok((v == Verdict::True, format!("{v}")))
    });
    expect(r, "s3-mod-q8 is not 1-gottlieb, index 4", "sphere-space-forms", || {
        let x = space(catalog, "s3-mod-q8")?;
        let v = is_n_gottlieb(&x, 1)?;
        let (fox, idx) = gottlieb_fox_index(&x, 1)?;
        Ok((
            v == Verdict::False && fox == Verdict::False && idx == thg_core::ExtNat::from(4usize),
            format!("gottlieb {v}, gottlieb-fox {fox}, index {idx}"),
        ))
    });
    expect(r, "Q8 / {1,-1} is Z2xZ2", "quaternion-rhodes-group", || {
        let q8 = CayleyGroup::quaternion();
        let quotient = q8.quotient(&q8.center())?;
        Ok((quotient.is_isomorphic(&CayleyGroup::klein())?, format!("{:?}", quotient.identify())))
    });
    for name in ["s3xs3xs3-z2", "s3-q8"] {
        expect(r, &format!("{name} n=1 counterexample recorded"), "equivariant-gottlieb-implies-orbit-gottlieb", || {
            let t = transformation(catalog, name)?;
            let audit = theorem31_audit(&t, 1)?;
            let k = audit.count(Status::DocumentedException);
            Ok((k == 1 && audit.count(Status::Violation) == 0, format!("{k} documented exception(s)")))
        });
    }
    report
}

/// Audits of one transformation group.
pub fn audit_transformation(run: &mut Run, tg: &TransformationModel, max_n: u32) {
    let name = tg.name.as_str();
    let top = bound(max_n, tg.space.truncation);
    absorb(run, "orbit-gottlieb-audit", name, "equivariant-gottlieb-implies-orbit-gottlieb", theorem31_audit(tg, top));
    absorb(run, "classification-audit", name, "gottlieb-rhodes-iff-gottlieb-fox-and-g0", classify(tg, top).map(|c| c.audit));
    if tg.space.aspherical {
        absorb(run, "aspherical-orbit-gottlieb", name, "aspherical-orbit-gottlieb-iff-gottlieb-rhodes", prop37_check(tg, top));
        if tg.equivariant_gottlieb1.is_some() {
            absorb(run, "equivariant-g1", name, "aspherical-equivariant-g1-is-fixed-lattice", equivariant_g1_check(tg));
        }
    }
    if matches!(tg.sphere_dimension, Some(d) if d % 2 == 1 && d >= 3) {
        absorb(run, "odd-sphere-orbit-g1", name, "odd-sphere-orbit-g1-is-center", oprea_check(tg));
    }
}
