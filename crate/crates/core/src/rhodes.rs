//! Rhodes groups of a free action, the subgroup `G0` of group elements
//! homotopic to the identity, evaluation subgroups, and audits of the
//! implications between the Gottlieb-type conditions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, ErrorKind, Result};
use crate::extnat::ExtNat;
use crate::abelian::FgAbelian;
use crate::fingroup::{CayleyGroup, Subgroup};
use crate::matrix::IntMatrix;
use crate::fox::{
    describe_layers, gottlieb_fox_index, gottlieb_fox_invariants, is_n_gottlieb, loop_tau_invariants,
    split_entries, tau_invariants,
};
use crate::model::{Pi1, SpaceModel, SubgroupData, TransformationModel};
use crate::report::{CheckReport, Determined, Judgement, Source, Status, Verdict};
use crate::tower::{BaseInfo, TowerSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Membership {
    InG0,
    NotInG0,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct G0Verdict {
    pub element: String,
    pub membership: Membership,
    pub rule: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Result {
    pub group: CayleyGroup,
    pub verdicts: Vec<G0Verdict>,
}

impl G0Result {
    /// Elements known to lie in `G0`.
    pub fn subgroup(&self) -> Subgroup {
        Subgroup::from_indices(
            self.verdicts
                .iter()
                .enumerate()
                .filter(|(_, v)| v.membership == Membership::InG0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn is_determined(&self) -> bool {
        self.verdicts.iter().all(|v| v.membership != Membership::Undetermined)
    }

    pub fn determined(&self) -> Determined<Subgroup> {
        if self.is_determined() {
            Determined::Known(self.subgroup())
        } else {
            let open: Vec<&str> = self
                .verdicts
                .iter()
                .filter(|v| v.membership == Membership::Undetermined)
                .map(|v| v.element.as_str())
                .collect();
            Determined::Indeterminate(format!("G0 membership undetermined for {}", open.join(", ")))
        }
    }

    /// Whether `G0 = G`; false as soon as one element is known to be outside.
    pub fn is_whole(&self) -> Verdict {
        Verdict::all(self.verdicts.iter().map(|v| match v.membership {
            Membership::InG0 => Verdict::True,
            Membership::NotInG0 => Verdict::False,
            Membership::Undetermined => Verdict::Indeterminate,
        }))
    }

    pub fn label(&self) -> String {
        let s = self.subgroup();
        match self.group.restrict(&s) {
            Ok(g) => g.identify().unwrap_or_else(|| g.label().to_string()),
            Err(_) => format!("order {}", s.order()),
        }
    }
}

/// Decides, element by element, whether the action of `g` is freely
/// homotopic to the identity. The first rule that applies wins.
pub fn compute_g0(tg: &TransformationModel) -> Result<G0Result> {
    let g = &tg.group;
    let explicit = match &tg.g0_explicit {
        Some(names) => Some(crate::model::resolve_elements(g, names)?),
        None => None,
    };
    let mut verdicts = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let (membership, rule) = if x == g.identity() {
            (Membership::InG0, "identity-element")
        } else if let Some(s) = &explicit {
            let m = if s.contains(x) { Membership::InG0 } else { Membership::NotInG0 };
            (m, "explicit-model-data")
        } else if !tg.trivial_on_higher(x)? || tg.inner_on_pi1(x).ok() == Some(false) {
            (Membership::NotInG0, "homotopic-maps-induce-equal-homomorphisms")
        } else if tg.space.aspherical && tg.inner_on_pi1(x).ok() == Some(true) {
            (Membership::InG0, "aspherical-maps-classified-by-pi1")
        } else if let (Some(d), true) = (tg.sphere_dimension, tg.free) {
            if d % 2 == 1 {
                (Membership::InG0, "odd-sphere-lefschetz")
            } else {
                (Membership::NotInG0, "even-sphere-degree")
            }
        } else {
            (Membership::Undetermined, "no-applicable-rule")
        };
        verdicts.push(G0Verdict {
            element: g.name(x).to_string(),
            membership,
            rule,
        });
    }
    let result = G0Result {
        group: g.clone(),
        verdicts,
    };
    if result.is_determined() && !g.is_subgroup(result.subgroup().elements()) {
        return Err(Error::violation("elements homotopic to the identity do not form a subgroup"));
    }
    Ok(result)
}

fn require_free(tg: &TransformationModel) -> Result<()> {
    if !tg.free {
        return Err(Error::unsupported("Rhodes groups are only computed for free actions"));
    }
    Ok(())
}

fn base_info(g: &CayleyGroup) -> BaseInfo {
    BaseInfo {
        label: g.label().to_string(),
        order: g.order(),
    }
}

/// The n-th Rhodes group computed twice: as the torus group of the orbit
/// space, and as the extension of the torus group of `X` by `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SigmaInvariants {
    pub orbit: TowerSummary,
    pub extension: TowerSummary,
}

impl SigmaInvariants {
    pub fn agree(&self) -> bool {
        self.orbit.finite_order == self.extension.finite_order && self.orbit.free_rank == self.extension.free_rank
    }
}

fn sigma_extension(tg: &TransformationModel, n: u32) -> Result<TowerSummary> {
    let tau = tau_invariants(&tg.space, n)?;
    Ok(TowerSummary::new(
        format!("sigma_{n}({}, {})", tg.space.name, tg.group.label()),
        Some(base_info(&tg.group)),
        tau.layers,
        tau.is_direct_product && tg.group.order() == 1,
    ))
}

pub fn sigma_invariants(tg: &TransformationModel, n: u32) -> Result<SigmaInvariants> {
    require_free(tg)?;
    let orbit_space = tg.orbit_space()?;
    sigma_with_orbit(tg, &orbit_space, n)
}

fn sigma_with_orbit(tg: &TransformationModel, orbit_space: &SpaceModel, n: u32) -> Result<SigmaInvariants> {
    let mut orbit = tau_invariants(orbit_space, n)?;
    orbit.name = format!("tau_{n}({})", orbit_space.name);
    let s = SigmaInvariants {
        orbit,
        extension: sigma_extension(tg, n)?,
    };
    if !s.agree() {
        return Err(Error::violation(format!(
            "orbit-space and extension computations disagree: {} vs {}",
            s.orbit.finite_order, s.extension.finite_order
        )));
    }
    Ok(s)
}

/// The first Rhodes group as an explicit table.
pub fn sigma1_group(tg: &TransformationModel) -> Result<CayleyGroup> {
    let table = tg.sigma1_extension()?.to_cayley()?;
    let label = table.identify().unwrap_or_else(|| table.label().to_string());
    let table = table.with_label(label);
    if tg.free {
        if let Pi1::Finite(p) = &tg.orbit_space()?.pi1 {
            if !table.is_isomorphic(p)? {
                return Err(Error::violation("first Rhodes group differs from the orbit fundamental group"));
            }
        }
    }
    Ok(table)
}

/// Invariant-level check of the split exact sequence
/// `tau_{n-1}(Omega X) -> sigma_n -> sigma_{n-1}`, along both computations.
pub fn rhodes_split_check(tg: &TransformationModel, n: u32) -> Result<CheckReport> {
    require_free(tg)?;
    if n < 2 {
        return Err(Error::invalid("the sequence starts at n = 2"));
    }
    let orbit_space = tg.orbit_space()?;
    let whole = sigma_with_orbit(tg, &orbit_space, n)?;
    let quotient = sigma_with_orbit(tg, &orbit_space, n - 1)?;
    let kernel = loop_tau_invariants(&tg.space, n)?;
    let mut report = CheckReport::new("rhodes-sequence", format!("{} n={n}", tg.name));
    let rule = "rhodes-split-exact-sequence";
    report.push(
        format!("n={n} base"),
        Status::from_bool(whole.extension.base == quotient.extension.base),
        format!("quotient of both over {}", tg.group.label()),
        rule,
        Source::Computed,
    );
    split_entries(&mut report, &format!("n={n}"), &whole.extension, &kernel, &quotient.extension, rule);
    let orbit_kernel = loop_tau_invariants(&orbit_space, n)?;
    split_entries(
        &mut report,
        &format!("n={n} orbit path"),
        &whole.orbit,
        &orbit_kernel,
        &quotient.orbit,
        rule,
    );
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GottliebRhodes {
    /// Layers of the torus evaluation subgroup over `G0`.
    pub summary: TowerSummary,
    /// Element-level group when `n = 1` and the group is small and finite.
    pub realized: Option<CayleyGroup>,
    pub abelian: Option<bool>,
    /// Index in the Rhodes group.
    pub index: ExtNat,
}

pub fn gottlieb_rhodes_invariants(tg: &TransformationModel, n: u32) -> Result<Determined<GottliebRhodes>> {
    require_free(tg)?;
    let gtau = match gottlieb_fox_invariants(&tg.space, n)? {
        Determined::Known(s) => s,
        Determined::Indeterminate(r) => return Ok(Determined::Indeterminate(r)),
    };
    let g0 = compute_g0(tg)?;
    let sub = match g0.determined() {
        Determined::Known(s) => s,
        Determined::Indeterminate(r) => return Ok(Determined::Indeterminate(r)),
    };
    let g0_group = tg.group.restrict(&sub)?;
    let summary = TowerSummary::new(
        format!("Gsigma_{n}({}, {})", tg.space.name, tg.group.label()),
        Some(BaseInfo {
            label: g0.label(),
            order: sub.order(),
        }),
        gtau.layers.clone(),
        false,
    );
    let (_, tau_index) = gottlieb_fox_index(&tg.space, n)?;
    let index = &tau_index * &ExtNat::from(tg.group.order() / sub.order());

    let mut realized = None;
    if n == 1 && tau_index.is_one() {
        if let Ok(ext) = tg.sigma1_extension() {
            let restricted = ext.restrict_base(&sub)?;
            if restricted.can_tabulate() {
                let t = restricted.to_cayley()?;
                if ExtNat::from(t.order()) != summary.finite_order {
                    return Err(Error::violation("realized evaluation subgroup has the wrong order"));
                }
                let label = t.identify().unwrap_or_else(|| t.label().to_string());
                realized = Some(t.with_label(label));
            }
        }
    }
    let abelian = match &realized {
        Some(t) => Some(t.is_abelian()),
        None if g0_group.order() == 1 => {
            let all = gtau.layers.iter().all(|l| l.group.abelian.is_some());
            if all {
                Some(true)
            } else {
                None
            }
        }
        None => None,
    };
    Ok(Determined::Known(GottliebRhodes {
        summary,
        realized,
        abelian,
        index,
    }))
}

/// Whether `G_n(X/G)` pulled back along the covering is all of `pi_n(X)`,
/// i.e. the equivariant n-Gottlieb condition for a free action.
pub fn equivariant_n_gottlieb(tg: &TransformationModel, orbit: &SpaceModel, n: u32) -> Result<Judgement> {
    if n >= 2 {
        return Ok(Judgement::new(is_n_gottlieb(orbit, n)?, "pullback-of-orbit-gottlieb-group"));
    }
    if let Some(d) = &tg.equivariant_gottlieb1 {
        let v = match d {
            SubgroupData::Full => Verdict::True,
            _ => {
                let mut probe = tg.space.clone();
                probe.gottlieb.insert(1, d.clone());
                Verdict::from_bool(probe.gottlieb_index(1)?.map_or(false, |i| i.is_one()))
            }
        };
        return Ok(Judgement::new(v, "explicit-model-data"));
    }
    if tg.space.pi1.is_trivial() {
        return Ok(Judgement::new(Verdict::True, "simply-connected"));
    }
    Ok(Judgement::new(Verdict::Indeterminate, "no-equivariant-data-in-degree-1"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DegreeVerdicts {
    pub n: u32,
    pub gottlieb: Judgement,
    pub gottlieb_fox: Judgement,
    pub gottlieb_rhodes: Judgement,
    pub equivariant_gottlieb: Judgement,
    pub orbit_gottlieb: Judgement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Classification {
    pub subject: String,
    pub max_n: u32,
    pub g0_is_g: Judgement,
    pub degrees: Vec<DegreeVerdicts>,
    pub gottlieb: Verdict,
    pub gottlieb_fox: Verdict,
    pub gottlieb_rhodes: Verdict,
    pub equivariant_gottlieb: Verdict,
    pub orbit_gottlieb: Verdict,
    pub audit: CheckReport,
}

pub fn classify(tg: &TransformationModel, max_n: u32) -> Result<Classification> {
    require_free(tg)?;
    if max_n == 0 || max_n > tg.space.truncation {
        return Err(Error::insufficient(format!(
            "max n = {max_n} outside 1..={}",
            tg.space.truncation
        )));
    }
    let orbit = tg.orbit_space()?;
    let g0 = compute_g0(tg)?;
    let whole = g0.is_whole();
    let g0_is_g = Judgement::new(whole, "G0 rules");
    let mut degrees = Vec::new();
    let mut audit = CheckReport::new("classification-audit", tg.name.clone());
    for n in 1..=max_n {
        let gottlieb = Judgement::new(is_n_gottlieb(&tg.space, n)?, "G_n = pi_n");
        let (fox, product) = gottlieb_fox_index(&tg.space, n)?;
        let gottlieb_fox = Judgement::new(fox, format!("layer index product {product}"));
        let gottlieb_rhodes = Judgement::new(fox.and(whole), "gottlieb-fox and G0 = G");
        let equivariant_gottlieb = equivariant_n_gottlieb(tg, &orbit, n)?;
        let orbit_gottlieb = Judgement::new(is_n_gottlieb(&orbit, n)?, "G_n(X/G) = pi_n(X/G)");
        audit.push(
            format!("n={n} gottlieb-rhodes implies G0 = G"),
            Status::implication(gottlieb_rhodes.verdict, whole),
            format!("{} => {}", gottlieb_rhodes.verdict, whole),
            "gottlieb-rhodes-iff-gottlieb-fox-and-g0",
            Source::Literature,
        );
        audit.push(
            format!("n={n} gottlieb-rhodes implies gottlieb-fox"),
            Status::implication(gottlieb_rhodes.verdict, fox),
            format!("{} => {}", gottlieb_rhodes.verdict, fox),
            "gottlieb-rhodes-iff-gottlieb-fox-and-g0",
            Source::Literature,
        );
        degrees.push(DegreeVerdicts {
            n,
            gottlieb,
            gottlieb_fox,
            gottlieb_rhodes,
            equivariant_gottlieb,
            orbit_gottlieb,
        });
    }
    let all = |f: fn(&DegreeVerdicts) -> Verdict| Verdict::all(degrees.iter().map(f));
    let gottlieb = all(|d| d.gottlieb.verdict);
    let gottlieb_fox = all(|d| d.gottlieb_fox.verdict);
    audit.push(
        format!("gottlieb iff gottlieb-fox through n={max_n}"),
        Status::equivalence(gottlieb, gottlieb_fox),
        format!("{gottlieb} <=> {gottlieb_fox}"),
        "gottlieb-iff-gottlieb-fox",
        Source::Literature,
    );
    Ok(Classification {
        subject: tg.name.clone(),
        max_n,
        g0_is_g,
        gottlieb,
        gottlieb_fox,
        gottlieb_rhodes: all(|d| d.gottlieb_rhodes.verdict),
        equivariant_gottlieb: all(|d| d.equivariant_gottlieb.verdict),
        orbit_gottlieb: all(|d| d.orbit_gottlieb.verdict),
        degrees,
        audit,
    })
}

/// Evaluates the three implications between equivariant Gottlieb
/// conditions on `X` and Gottlieb conditions on `X/G`.
pub fn theorem31_audit(tg: &TransformationModel, max_n: u32) -> Result<CheckReport> {
    require_free(tg)?;
    let orbit = tg.orbit_space()?;
    let max_n = max_n.min(tg.space.truncation);
    let mut report = CheckReport::new("orbit-gottlieb-audit", tg.name.clone());
    for n in 1..=max_n {
        let equivariant = equivariant_n_gottlieb(tg, &orbit, n)?.verdict;
        let quotient = is_n_gottlieb(&orbit, n)?;

        let mut status = Status::implication(equivariant, quotient);
        let mut detail = format!("equivariant {n}-gottlieb {equivariant} => X/G {n}-gottlieb {quotient}");
        if n == 1 && status == Status::Violation {
            status = Status::DocumentedException;
            detail.push_str(" (the implication is only claimed for n >= 2)");
        }
        report.push(
            format!("n={n} implication (1)"),
            status,
            detail,
            "equivariant-gottlieb-implies-orbit-gottlieb",
            Source::Literature,
        );

        report.push(
            format!("n={n} implication (2)"),
            Status::implication(quotient, equivariant),
            format!("X/G {n}-gottlieb {quotient} => equivariant {n}-gottlieb {equivariant}"),
            "orbit-gottlieb-implies-equivariant-gottlieb",
            Source::Literature,
        );
    }
    let rule = "aspherical-equivariant-1-gottlieb-implies-orbit-1-gottlieb";
    if !tg.space.aspherical {
        report.push(
            "n=1 implication (3)",
            Status::NotApplicable,
            "space is not aspherical",
            rule,
            Source::Literature,
        );
        return Ok(report);
    }
    let equivariant = equivariant_n_gottlieb(tg, &orbit, 1)?.verdict;
    let quotient = is_n_gottlieb(&orbit, 1)?;
    report.push(
        "n=1 implication (3)",
        Status::implication(equivariant, quotient),
        format!("equivariant 1-gottlieb {equivariant} => X/G 1-gottlieb {quotient}"),
        rule,
        Source::Literature,
    );
    if equivariant == Verdict::True {
        let ab = orbit.pi1.abelianization()?;
        let rank_ok = orbit.pi1.is_abelian() && ab.is_finite() == (tg.space.pi1.hirsch_length() == 0)
            && ab.torsion().is_empty()
            && ab.rank() == tg.space.pi1.hirsch_length();
        report.push(
            "n=1 rank",
            Status::from_bool(rank_ok),
            format!(
                "pi_1(X/G) abelian {} with abelianization {ab}, pi_1(X) rank {}",
                orbit.pi1.is_abelian(),
                tg.space.pi1.hirsch_length()
            ),
            "orbit-group-free-abelian-of-same-rank",
            Source::Literature,
        );
    }
    Ok(report)
}

/// For aspherical `X`: `X/G` Gottlieb through `max_n` iff `X` is
/// Gottlieb-Rhodes through `max_n`.
pub fn prop37_check(tg: &TransformationModel, max_n: u32) -> Result<CheckReport> {
    require_free(tg)?;
    if !tg.space.aspherical {
        return Err(Error::not_applicable("the space is not aspherical"));
    }
    let c = classify(tg, max_n.min(tg.space.truncation))?;
    let orbit = tg.orbit_space()?;
    let center = match &orbit.pi1 {
        Pi1::Virt(v) => describe_layers(&v.center_summary()?),
        Pi1::Finite(g) => format!("order {}", g.center().order()),
        Pi1::Abelian(a) => format!("{a}"),
    };
    let mut report = CheckReport::new("aspherical-orbit-gottlieb", tg.name.clone());
    report.push(
        format!("through n={}", c.max_n),
        Status::equivalence(c.orbit_gottlieb, c.gottlieb_rhodes),
        format!(
            "X/G gottlieb {} <=> X gottlieb-rhodes {}; center of pi_1(X/G) = {center}",
            c.orbit_gottlieb, c.gottlieb_rhodes
        ),
        "aspherical-orbit-gottlieb-iff-gottlieb-rhodes",
        Source::Literature,
    );
    Ok(report)
}

/// For aspherical `X` with a free action, the equivariant `G_1(X)` is the
/// part of `pi_1(X)` that is central in `pi_1(X/G)`: the lattice fixed by
/// every element of `G`. Compares that with the recorded subgroup.
pub fn equivariant_g1_check(tg: &TransformationModel) -> Result<CheckReport> {
    require_free(tg)?;
    if !tg.space.aspherical {
        return Err(Error::not_applicable("the space is not aspherical"));
    }
    let Some(recorded) = &tg.equivariant_gottlieb1 else {
        return Err(Error::not_applicable("no equivariant G_1 data recorded"));
    };
    let ext = tg.sigma1_extension()?;
    let layer = ext.layer().clone();
    let fixed = ext.center()?.layer_generators;
    let given = match recorded {
        SubgroupData::Full | SubgroupData::Center => IntMatrix::identity(layer.ngens()),
        SubgroupData::Trivial => IntMatrix::zeros(0, layer.ngens()),
        SubgroupData::Generators(m) => m.clone(),
        SubgroupData::Elements(_) => {
            return Err(Error::invalid("element names need a finite fundamental group").at("equivariant_gottlieb1"))
        }
    };
    let same = spans_within(&layer, &given, &fixed)? && spans_within(&layer, &fixed, &given)?;
    let mut report = CheckReport::new("equivariant-g1", tg.name.clone());
    report.push(
        "recorded G_1 = pi_1(X) fixed by G",
        Status::from_bool(same),
        format!(
            "recorded {} vs fixed lattice {}",
            layer.subgroup_structure(&given)?,
            layer.subgroup_structure(&fixed)?
        ),
        "aspherical-equivariant-g1-is-fixed-lattice",
        Source::Computed,
    );
    Ok(report)
}

fn spans_within(a: &FgAbelian, inner: &IntMatrix, outer: &IntMatrix) -> Result<bool> {
    for v in inner.row_vecs() {
        if !a.contains(outer, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a free action on an odd sphere of dimension at least 3: `G_1` of the
/// orbit space is the center of `G`.
pub fn oprea_check(tg: &TransformationModel) -> Result<CheckReport> {
    require_free(tg)?;
    match tg.sphere_dimension {
        Some(d) if d % 2 == 1 && d >= 3 => {}
        _ => return Err(Error::not_applicable("needs a free action on an odd sphere of dimension >= 3")),
    }
    let orbit = tg.orbit_space()?;
    let mut report = CheckReport::new("odd-sphere-orbit-g1", tg.name.clone());
    let rule = "odd-sphere-orbit-g1-is-center";
    let table = match &orbit.pi1 {
        Pi1::Finite(t) => t.clone(),
        _ => return Err(Error::unsupported("orbit fundamental group is not a finite table")),
    };
    let center_g = tg.group.center();
    let Some(iso) = table.find_isomorphism(&tg.group)? else {
        return Err(Error::violation("orbit fundamental group is not isomorphic to G"));
    };
    match orbit.gottlieb1_subgroup() {
        Ok(Some(s)) => {
            let mut image: Vec<usize> = s.elements().iter().map(|&x| iso[x]).collect();
            image.sort_unstable();
            let ok = image == center_g.elements();
            report.push(
                "G_1(X/G) = Z(G)",
                Status::from_bool(ok),
                format!("|G_1| = {}, |Z(G)| = {}", s.order(), center_g.order()),
                rule,
                Source::Literature,
            );
        }
        Ok(None) => report.push(
            "G_1(X/G) = Z(G)",
            Status::Indeterminate,
            "no Gottlieb data for the orbit space in degree 1",
            rule,
            Source::Literature,
        ),
        Err(e) if e.kind == ErrorKind::Unsupported => report.push(
            "G_1(X/G) = Z(G)",
            Status::NotApplicable,
            e.message,
            rule,
            Source::Literature,
        ),
        Err(e) => return Err(e),
    }
    Ok(report)
}
