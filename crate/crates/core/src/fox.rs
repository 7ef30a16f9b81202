//! Torus homotopy groups at the level of invariants: binomial layer
//! multiplicities, the loop-space kernel, evaluation subgroups, and the
//! n-Gottlieb predicates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::model::SpaceModel;
use crate::report::{CheckReport, Determined, Source, Status, Verdict};
use crate::tower::{Layer, LayerGroup, TowerSummary};

/// `C(a, b)`, zero outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
    }
    acc as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MultiplicityTriple {
    pub n: u32,
    pub i: u32,
    /// Multiplicity of `pi_i` in the loop-space kernel, `C(n-2, i-2)`.
    pub alpha: u64,
    /// `C(n-1, i-2)`.
    pub beta: u64,
    /// Multiplicity of `pi_i` in the n-th torus group, `C(n-1, i-1)`.
    pub gamma: u64,
}

pub fn multiplicities(n: u32, i: u32) -> Result<MultiplicityTriple> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::invalid(format!("need 1 <= i <= n, got n = {n}, i = {i}")));
    }
    let (n64, i64_) = (i64::from(n), i64::from(i));
    Ok(MultiplicityTriple {
        n,
        i,
        alpha: binomial(n64 - 2, i64_ - 2),
        beta: binomial(n64 - 1, i64_ - 2),
        gamma: binomial(n64 - 1, i64_ - 1),
    })
}

fn check_n(x: &SpaceModel, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > x.truncation {
        return Err(Error::insufficient(format!(
            "n = {n} exceeds the truncation {} of {}",
            x.truncation, x.name
        )));
    }
    Ok(())
}

fn layers_with(x: &SpaceModel, n: u32, from: u32, mult: impl Fn(u32) -> u64) -> Result<Vec<Layer>> {
    let mut layers = Vec::new();
    for i in from..=n {
        layers.push(Layer {
            degree: i,
            group: x.pi_group(i)?,
            multiplicity: mult(i),
        });
    }
    Ok(layers)
}

/// Layer multiplicities of the n-th torus group built level by level:
/// each step adds the loop-space kernel to the previous group.
pub fn recursive_multiplicities(n: u32) -> BTreeMap<u32, u64> {
    let mut acc = BTreeMap::new();
    acc.insert(1, 1);
    for m in 2..=n {
        for i in 2..=m {
            let alpha = binomial(i64::from(m) - 2, i64::from(i) - 2);
            *acc.entry(i).or_insert(0) += alpha;
        }
    }
    acc
}

/// The n-th torus homotopy group: `pi_i` with multiplicity `C(n-1, i-1)`.
pub fn tau_invariants(x: &SpaceModel, n: u32) -> Result<TowerSummary> {
    check_n(x, n)?;
    let layers = layers_with(x, n, 1, |i| binomial(i64::from(n) - 1, i64::from(i) - 1))?;
    let recursive = recursive_multiplicities(n);
    for l in &layers {
        if recursive.get(&l.degree).copied().unwrap_or(0) != l.multiplicity {
            return Err(Error::violation(format!(
                "flattened and recursive multiplicities differ at degree {}",
                l.degree
            )));
        }
    }
    let direct = x.whitehead_trivial() && x.pi1_action_trivial();
    Ok(TowerSummary::new(format!("tau_{n}({})", x.name), None, layers, direct))
}

/// The kernel `tau_{n-1}` of the loop space: `pi_i` with multiplicity
/// `C(n-2, i-2)`, `2 <= i <= n`.
pub fn loop_tau_invariants(x: &SpaceModel, n: u32) -> Result<TowerSummary> {
    if n < 2 {
        return Err(Error::invalid("the loop-space kernel needs n >= 2"));
    }
    check_n(x, n)?;
    let layers = layers_with(x, n, 2, |i| binomial(i64::from(n) - 2, i64::from(i) - 2))?;
    Ok(TowerSummary::new(
        format!("tau_{}(Omega {})", n - 1, x.name),
        None,
        layers,
        true,
    ))
}

/// The evaluation subgroup of the n-th torus group: `G_i` with
/// multiplicity `C(n-1, i-1)`.
pub fn gottlieb_fox_invariants(x: &SpaceModel, n: u32) -> Result<Determined<TowerSummary>> {
    check_n(x, n)?;
    let mut layers = Vec::new();
    let mut missing = Vec::new();
    for i in 1..=n {
        match x.gottlieb_group(i)? {
            Some(group) => layers.push(Layer {
                degree: i,
                group,
                multiplicity: binomial(i64::from(n) - 1, i64::from(i) - 1),
            }),
            None => missing.push(format!("{i}")),
        }
    }
    if !missing.is_empty() {
        return Ok(Determined::Indeterminate(format!(
            "no Gottlieb data for {} in degree {}",
            x.name,
            missing.join(", ")
        )));
    }
    Ok(Determined::Known(TowerSummary::new(
        format!("Gtau_{n}({})", x.name),
        None,
        layers,
        true,
    )))
}

/// Whether `G_n = pi_n`.
pub fn is_n_gottlieb(x: &SpaceModel, n: u32) -> Result<Verdict> {
    check_n(x, n)?;
    Ok(match x.gottlieb_index(n)? {
        Some(idx) => Verdict::from_bool(idx.is_one()),
        None => Verdict::Indeterminate,
    })
}

/// The evaluation subgroup of the n-th torus group is everything, decided
/// through the layer indices: `prod_i [pi_i : G_i]^gamma_i = 1`. Returns
/// the verdict and the known part of that product.
pub fn gottlieb_fox_index(x: &SpaceModel, n: u32) -> Result<(Verdict, ExtNat)> {
    check_n(x, n)?;
    let mut product = ExtNat::one();
    let mut unknown = false;
    for i in 1..=n {
        let gamma = binomial(i64::from(n) - 1, i64::from(i) - 1);
        match x.gottlieb_index(i)? {
            Some(idx) => product = &product * &idx.pow(gamma),
            None => unknown = true,
        }
    }
    let verdict = if !product.is_one() {
        Verdict::False
    } else if unknown {
        Verdict::Indeterminate
    } else {
        Verdict::True
    };
    Ok((verdict, product))
}

/// Multiset of layers keyed by degree and group invariants.
fn layer_multiset(s: &TowerSummary) -> BTreeMap<(u32, LayerKey), u64> {
    let mut out = BTreeMap::new();
    for l in &s.layers {
        if l.multiplicity == 0 {
            continue;
        }
        *out.entry((l.degree, LayerKey::of(&l.group))).or_insert(0) += l.multiplicity;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct LayerKey(LayerGroup);

impl LayerKey {
    fn of(g: &LayerGroup) -> Self {
        let mut g = g.clone();
        g.label = String::new();
        LayerKey(g)
    }
}

/// Checks `whole = kernel + quotient` for layers, free rank, and order.
pub(crate) fn split_entries(
    report: &mut CheckReport,
    item: &str,
    whole: &TowerSummary,
    kernel: &TowerSummary,
    quotient: &TowerSummary,
    rule: &str,
) {
    let mut expected = layer_multiset(kernel);
    for (k, v) in layer_multiset(quotient) {
        *expected.entry(k).or_insert(0) += v;
    }
    let ok = layer_multiset(whole) == expected;
    report.push(
        format!("{item} layers"),
        Status::from_bool(ok),
        format!(
            "{} = {} + {}",
            describe_layers(whole),
            describe_layers(kernel),
            describe_layers(quotient)
        ),
        rule,
        Source::Computed,
    );
    let ok = whole.free_rank == kernel.free_rank + quotient.free_rank;
    report.push(
        format!("{item} free rank"),
        Status::from_bool(ok),
        format!("{} = {} + {}", whole.free_rank, kernel.free_rank, quotient.free_rank),
        rule,
        Source::Computed,
    );
    let product = &kernel.finite_order * &quotient.finite_order;
    report.push(
        format!("{item} order"),
        Status::from_bool(whole.finite_order == product),
        format!("{} = {} * {}", whole.finite_order, kernel.finite_order, quotient.finite_order),
        rule,
        Source::Computed,
    );
}

pub fn describe_layers(s: &TowerSummary) -> String {
    let mut parts: Vec<String> = s
        .layers
        .iter()
        .filter(|l| l.multiplicity > 0 && !l.group.is_trivial())
        .map(|l| {
            if l.multiplicity == 1 {
                format!("{}", l.group.label)
            } else {
                format!("({})^{}", l.group.label, l.multiplicity)
            }
        })
        .collect();
    if let Some(b) = &s.base {
        parts.push(format!("over {}", b.label));
    }
    if parts.is_empty() {
        return String::from("0");
    }
    parts.join(" + ")
}

/// Invariant-level check of the split exact sequence
/// `tau_{n-1}(Omega X) -> tau_n(X) -> tau_{n-1}(X)`.
pub fn fox_sequence_check(x: &SpaceModel, n: u32) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::invalid("the sequence starts at n = 2"));
    }
    let whole = tau_invariants(x, n)?;
    let kernel = loop_tau_invariants(x, n)?;
    let quotient = tau_invariants(x, n - 1)?;
    let mut report = CheckReport::new("fox-sequence", format!("{} n={n}", x.name));
    split_entries(&mut report, &format!("n={n}"), &whole, &kernel, &quotient, "fox-split-exact-sequence");
    Ok(report)
}

/// For each `n <= max_n`, compares "G_k = pi_k for all k <= n" with the
/// torus-group condition computed through the multiplicity decomposition.
pub fn prop26_crosscheck(x: &SpaceModel, max_n: u32) -> Result<CheckReport> {
    check_n(x, max_n)?;
    let mut report = CheckReport::new("gottlieb-vs-gottlieb-fox", x.name.clone());
    let mut cumulative = Verdict::True;
    for n in 1..=max_n {
        cumulative = cumulative.and(is_n_gottlieb(x, n)?);
        let (fox, product) = gottlieb_fox_index(x, n)?;
        report.push(
            format!("n={n}"),
            Status::equivalence(cumulative, fox),
            format!("gottlieb through {n}: {cumulative}; index product {product}: {fox}"),
            "gottlieb-iff-gottlieb-fox",
            Source::Literature,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_examples() {
        let m = multiplicities(3, 2).unwrap();
        assert_eq!(m.gamma, 2);
        let m = multiplicities(4, 2).unwrap();
        assert_eq!((m.alpha, m.beta, m.gamma), (1, 1, 3));
        assert_eq!(m.beta + m.gamma, binomial(4, 1));
        let m = multiplicities(1, 1).unwrap();
        assert_eq!((m.alpha, m.gamma), (0, 1));
        assert!(multiplicities(2, 3).is_err());
        assert!(multiplicities(0, 0).is_err());
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(29, 14), 77_558_760);
    }

    #[test]
    fn recursion_matches_flattening() {
        for n in 1..=12u32 {
            let rec = recursive_multiplicities(n);
            for i in 1..=n {
                assert_eq!(rec[&i], binomial(i64::from(n) - 1, i64::from(i) - 1));
            }
        }
    }
}
