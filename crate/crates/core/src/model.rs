//! Homotopy data of spaces and of finite transformation groups acting on
//! them, validation of that data, and the orbit space of a free action.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{subgroup_index, FgAbelian};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::fingroup::{CayleyGroup, Subgroup};
use crate::matrix::IntMatrix;
use crate::tower::{LayerElement, LayerGroup, VirtAbelian};

/// The fundamental group in whichever form the data supplies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1 {
    Finite(CayleyGroup),
    Abelian(FgAbelian),
    Virt(VirtAbelian),
}

impl Pi1 {
    /// Tabulates finite extensions (labelled by isomorphism type when
    /// recognised) and unwraps extensions over the trivial group.
    pub fn from_virt(v: VirtAbelian) -> Result<Pi1> {
        if v.base().order() == 1 {
            return Ok(Pi1::Abelian(v.layer().clone()));
        }
        if v.can_tabulate() {
            let table = v.to_cayley()?;
            let label = table.identify().unwrap_or_else(|| table.label().to_string());
            return Ok(Pi1::Finite(table.with_label(label)));
        }
        Ok(Pi1::Virt(v))
    }

    pub fn order(&self) -> ExtNat {
        match self {
            Pi1::Finite(g) => ExtNat::from(g.order()),
            Pi1::Abelian(a) => a.order(),
            Pi1::Virt(v) => v.order(),
        }
    }

    pub fn hirsch_length(&self) -> usize {
        match self {
            Pi1::Finite(_) => 0,
            Pi1::Abelian(a) => a.rank(),
            Pi1::Virt(v) => v.hirsch_length(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Pi1::Finite(g) => g.is_abelian(),
            Pi1::Abelian(_) => true,
            Pi1::Virt(v) => v.is_abelian(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Pi1::Finite(g) => g.label().to_string(),
            Pi1::Abelian(a) => format!("{a}"),
            Pi1::Virt(v) => format!("{}.{}", v.layer(), v.base().label()),
        }
    }

    pub fn layer_group(&self) -> LayerGroup {
        match self {
            Pi1::Finite(g) => LayerGroup::finite(g),
            Pi1::Abelian(a) => LayerGroup::abelian(a),
            Pi1::Virt(v) => LayerGroup::virt(v, &self.label()),
        }
    }

    pub fn abelianization(&self) -> Result<FgAbelian> {
        match self {
            Pi1::Finite(g) => Ok(g.abelianization()),
            Pi1::Abelian(a) => Ok(a.clone()),
            Pi1::Virt(v) => v.abelianization(),
        }
    }

    /// The group as an abelian layer with coordinates, when it is one.
    pub fn as_layer(&self) -> Option<FgAbelian> {
        match self {
            Pi1::Abelian(a) => Some(a.clone()),
            Pi1::Finite(g) if g.order() == 1 => Some(FgAbelian::trivial()),
            _ => None,
        }
    }

    fn ambient(&self) -> Ambient<'_> {
        match self {
            Pi1::Finite(g) => Ambient::Finite(g),
            Pi1::Abelian(a) => Ambient::Abelian(a),
            Pi1::Virt(v) => Ambient::Virt(v),
        }
    }

    /// Index of the center.
    pub fn center_index(&self) -> Result<ExtNat> {
        self.ambient().index(&SubgroupData::Center)
    }
}

/// A subgroup of a homotopy group, as given in model data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupData {
    Full,
    Trivial,
    Center,
    /// Rows are generators in the ambient group's coordinates.
    Generators(IntMatrix),
    /// Element names of a finite ambient group.
    Elements(Vec<String>),
}

#[derive(Clone, Copy)]
enum Ambient<'a> {
    Abelian(&'a FgAbelian),
    Finite(&'a CayleyGroup),
    Virt(&'a VirtAbelian),
}

impl Ambient<'_> {
    fn order(&self) -> ExtNat {
        match self {
            Ambient::Abelian(a) => a.order(),
            Ambient::Finite(g) => ExtNat::from(g.order()),
            Ambient::Virt(v) => v.order(),
        }
    }

    fn finite_subgroup(g: &CayleyGroup, data: &SubgroupData) -> Result<Subgroup> {
        Ok(match data {
            SubgroupData::Full => g.whole(),
            SubgroupData::Trivial => g.trivial_subgroup(),
            SubgroupData::Center => g.center(),
            SubgroupData::Elements(names) => resolve_elements(g, names)?,
            SubgroupData::Generators(_) => {
                return Err(Error::invalid("generator matrices need an abelian ambient group"))
            }
        })
    }

    fn index(&self, data: &SubgroupData) -> Result<ExtNat> {
        match (self, data) {
            (_, SubgroupData::Full) => Ok(ExtNat::one()),
            (_, SubgroupData::Trivial) => Ok(self.order()),
            (Ambient::Abelian(_), SubgroupData::Center) => Ok(ExtNat::one()),
            (Ambient::Abelian(a), SubgroupData::Generators(m)) => subgroup_index(a, m),
            (Ambient::Finite(g), d) => {
                let s = Self::finite_subgroup(g, d)?;
                Ok(ExtNat::from(g.order() / s.order()))
            }
            (Ambient::Virt(v), SubgroupData::Center) => v.center_index(),
            (_, d) => Err(Error::unsupported(format!(
                "subgroup {} cannot be read in this ambient group",
                describe(d)
            ))),
        }
    }

    fn group(&self, data: &SubgroupData) -> Result<LayerGroup> {
        match (self, data) {
            (Ambient::Abelian(a), SubgroupData::Full | SubgroupData::Center) => Ok(LayerGroup::abelian(a)),
            (_, SubgroupData::Trivial) => Ok(LayerGroup::abelian(&FgAbelian::trivial())),
            (Ambient::Abelian(a), SubgroupData::Generators(m)) => Ok(LayerGroup::abelian(&a.subgroup_structure(m)?)),
            (Ambient::Finite(g), d) => {
                let s = Self::finite_subgroup(g, d)?;
                let sub = g.restrict(&s)?;
                let label = sub.identify().unwrap_or_else(|| sub.label().to_string());
                Ok(LayerGroup::finite(&sub.with_label(label)))
            }
            (Ambient::Virt(v), SubgroupData::Full) => Ok(LayerGroup::virt(v, &format!("{}.{}", v.layer(), v.base().label()))),
            (Ambient::Virt(v), SubgroupData::Center) => Ok(v.center_summary()?.layers[0].group.clone()),
            (_, d) => Err(Error::unsupported(format!(
                "subgroup {} cannot be read in this ambient group",
                describe(d)
            ))),
        }
    }
}

fn describe(d: &SubgroupData) -> &'static str {
    match d {
        SubgroupData::Full => "full",
        SubgroupData::Trivial => "trivial",
        SubgroupData::Center => "center",
        SubgroupData::Generators(_) => "generators",
        SubgroupData::Elements(_) => "elements",
    }
}

pub fn resolve_elements(g: &CayleyGroup, names: &[String]) -> Result<Subgroup> {
    let mut idx = Vec::with_capacity(names.len());
    for (k, n) in names.iter().enumerate() {
        idx.push(
            g.index_of(n)
                .ok_or_else(|| Error::not_found(format!("no element named {n:?}")).at(k))?,
        );
    }
    if !g.is_subgroup(&idx) {
        return Err(Error::violation("listed elements do not form a subgroup"));
    }
    Ok(Subgroup::from_indices(idx))
}

/// One Whitehead product `[left, right] = value` with `left` in degree
/// `degrees.0`, `right` in degree `degrees.1` and `value` in degree
/// `degrees.0 + degrees.1 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub degrees: (u32, u32),
    pub left: Vec<BigInt>,
    pub right: Vec<BigInt>,
    pub value: Vec<BigInt>,
}

/// `Trivial` asserts that every Whitehead product landing within the
/// truncation vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Whitehead {
    Trivial,
    Pairings(Vec<Pairing>),
}

/// Action of the fundamental group on higher homotopy groups: per named
/// element (element name, `e<k>` for the k-th abelian coordinate generator,
/// or a base element name for an extension), per degree, a matrix.
/// Elements not listed act trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Action {
    Trivial,
    Matrices(BTreeMap<String, BTreeMap<u32, IntMatrix>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    pub name: String,
    pub truncation: u32,
    pub aspherical: bool,
    pub pi1: Pi1,
    /// Degrees `2..=truncation`; aspherical models may omit entries.
    pub pi: BTreeMap<u32, FgAbelian>,
    pub gottlieb: BTreeMap<u32, SubgroupData>,
    pub whitehead: Whitehead,
    pub pi1_action: Pi1Action,
    pub note: Option<String>,
}

impl SpaceModel {
    fn check_degree(&self, i: u32) -> Result<()> {
        if i == 0 {
            return Err(Error::invalid("degrees start at 1"));
        }
        if i > self.truncation {
            return Err(Error::insufficient(format!(
                "degree {i} exceeds the truncation {} of {}",
                self.truncation, self.name
            )));
        }
        Ok(())
    }

    /// `pi_i` for `i >= 2`.
    pub fn pi_abelian(&self, i: u32) -> Result<FgAbelian> {
        self.check_degree(i)?;
        if i == 1 {
            return Err(Error::invalid("degree 1 is the fundamental group"));
        }
        match self.pi.get(&i) {
            Some(a) => Ok(a.clone()),
            None if self.aspherical => Ok(FgAbelian::trivial()),
            None => Err(Error::insufficient(format!("{} has no data for pi_{i}", self.name))),
        }
    }

    pub fn pi_group(&self, i: u32) -> Result<LayerGroup> {
        self.check_degree(i)?;
        if i == 1 {
            return Ok(self.pi1.layer_group());
        }
        Ok(LayerGroup::abelian(&self.pi_abelian(i)?))
    }

    pub fn pi_order(&self, i: u32) -> Result<ExtNat> {
        Ok(self.pi_group(i)?.order)
    }

    fn ambient_index(&self, i: u32, data: &SubgroupData) -> Result<ExtNat> {
        if i == 1 {
            return self.pi1.ambient().index(data);
        }
        let a = self.pi_abelian(i)?;
        Ambient::Abelian(&a).index(data)
    }

    /// `[pi_i : G_i]`, or `None` when the model has no Gottlieb data in that
    /// degree. A trivial `pi_i` forces index 1.
    pub fn gottlieb_index(&self, i: u32) -> Result<Option<ExtNat>> {
        self.check_degree(i)?;
        if self.pi_order(i)?.is_one() {
            return Ok(Some(ExtNat::one()));
        }
        match self.gottlieb.get(&i) {
            None => Ok(None),
            Some(d) => self.ambient_index(i, d).map(Some).map_err(|e| e.at(format!("gottlieb.{i}"))),
        }
    }

    pub fn gottlieb_group(&self, i: u32) -> Result<Option<LayerGroup>> {
        self.check_degree(i)?;
        if self.pi_order(i)?.is_one() {
            return Ok(Some(self.pi_group(i)?));
        }
        let Some(d) = self.gottlieb.get(&i) else {
            return Ok(None);
        };
        let g = if i == 1 {
            self.pi1.ambient().group(d)?
        } else {
            let a = self.pi_abelian(i)?;
            Ambient::Abelian(&a).group(d)?
        };
        Ok(Some(g))
    }

    /// `G_1` as a subgroup of a finite fundamental group.
    pub fn gottlieb1_subgroup(&self) -> Result<Option<Subgroup>> {
        let Pi1::Finite(g) = &self.pi1 else {
            return Err(Error::unsupported("fundamental group is not a finite table"));
        };
        if g.order() == 1 {
            return Ok(Some(g.whole()));
        }
        match self.gottlieb.get(&1) {
            None => Ok(None),
            Some(d) => Ambient::finite_subgroup(g, d).map(Some),
        }
    }

    pub fn whitehead_trivial(&self) -> bool {
        match &self.whitehead {
            Whitehead::Trivial => true,
            Whitehead::Pairings(p) => p.iter().all(|x| x.value.iter().all(Zero::is_zero)),
        }
    }

    pub fn pi1_action_trivial(&self) -> bool {
        match &self.pi1_action {
            Pi1Action::Trivial => true,
            Pi1Action::Matrices(m) => m.iter().all(|(_, per)| {
                per.iter()
                    .all(|(i, mat)| self.pi_abelian(*i).map_or(false, |a| a.is_identity_endomorphism(mat)))
            }),
        }
    }

    fn action_key_valid(&self, key: &str) -> bool {
        let generator = |n: usize| {
            key.strip_prefix('e')
                .and_then(|d| d.parse::<usize>().ok())
                .map_or(false, |k| k >= 1 && k <= n)
        };
        match &self.pi1 {
            Pi1::Finite(g) => g.index_of(key).is_some(),
            Pi1::Abelian(a) => generator(a.ngens()),
            Pi1::Virt(v) => v.base().index_of(key).is_some() || generator(v.layer().ngens()),
        }
    }

    /// Checks every invariant of the data; returns warnings for conditions
    /// that are suspicious but not contradictory.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        if self.truncation == 0 {
            return Err(Error::invalid("truncation must be at least 1").at("truncation"));
        }
        for (&i, a) in &self.pi {
            if i < 2 || i > self.truncation {
                return Err(Error::invalid(format!("degree {i} outside 2..={}", self.truncation)).at(format!("pi.{i}")));
            }
            if self.aspherical && !a.is_trivial() {
                return Err(Error::violation(format!("aspherical space with nontrivial pi_{i} = {a}")).at(format!("pi.{i}")));
            }
        }
        if !self.aspherical {
            for i in 2..=self.truncation {
                if !self.pi.contains_key(&i) {
                    return Err(Error::insufficient(format!("missing pi_{i}")).at("pi"));
                }
            }
        }
        for (&i, d) in &self.gottlieb {
            let path = format!("gottlieb.{i}");
            if i == 0 || i > self.truncation {
                return Err(Error::invalid(format!("degree {i} outside 1..={}", self.truncation)).at(path));
            }
            self.ambient_index(i, d).map_err(|e| e.at(&path))?;
            if i == 1 {
                if let Pi1::Finite(g) = &self.pi1 {
                    let s = Ambient::finite_subgroup(g, d).map_err(|e| e.at(&path))?;
                    let z = g.center();
                    if !s.elements().iter().all(|&x| z.contains(x)) {
                        warnings.push(format!(
                            "{}: G_1 has order {} but the center of pi_1 has order {}",
                            self.name,
                            s.order(),
                            z.order()
                        ));
                    }
                }
            }
        }
        if let Whitehead::Pairings(pairs) = &self.whitehead {
            for (k, p) in pairs.iter().enumerate() {
                let path = format!("whitehead.pairings.{k}");
                let (i, j) = p.degrees;
                if i < 2 || j < 2 {
                    return Err(Error::unsupported("pairings with the fundamental group belong in pi1_action").at(path));
                }
                let target = i + j - 1;
                if target > self.truncation {
                    return Err(Error::insufficient(format!("value degree {target} exceeds the truncation")).at(path));
                }
                let (a, b, c) = (self.pi_abelian(i)?, self.pi_abelian(j)?, self.pi_abelian(target)?);
                if p.left.len() != a.ngens() || p.right.len() != b.ngens() || p.value.len() != c.ngens() {
                    return Err(Error::invalid("pairing coordinates do not match the groups").at(path));
                }
                if c.is_zero_element(&p.value) {
                    continue;
                }
                for (deg, elt, grp) in [(i, &p.left, &a), (j, &p.right, &b)] {
                    if self.in_gottlieb(deg, grp, elt)? {
                        return Err(Error::violation(format!(
                            "nonzero Whitehead product with a Gottlieb element of degree {deg}"
                        ))
                        .at(path));
                    }
                }
            }
        }
        if let Pi1Action::Matrices(m) = &self.pi1_action {
            for (key, per) in m {
                let path = format!("pi1_action.{key}");
                if !self.action_key_valid(key) {
                    return Err(Error::not_found(format!("no fundamental group element {key:?}")).at(path));
                }
                for (&i, mat) in per {
                    let a = self.pi_abelian(i).map_err(|e| e.at(&path))?;
                    check_automorphism(&a, mat).map_err(|e| e.at(format!("{path}.{i}")))?;
                }
            }
        }
        Ok(warnings)
    }

    fn in_gottlieb(&self, i: u32, ambient: &FgAbelian, v: &[BigInt]) -> Result<bool> {
        if ambient.is_zero_element(v) {
            return Ok(false);
        }
        Ok(match self.gottlieb.get(&i) {
            None | Some(SubgroupData::Trivial) => false,
            Some(SubgroupData::Full) | Some(SubgroupData::Center) => true,
            Some(SubgroupData::Generators(m)) => ambient.contains(m, v)?,
            Some(SubgroupData::Elements(_)) => false,
        })
    }
}

/// A square matrix that is a well-defined endomorphism with an inverse
/// modulo the torsion (unit determinant on the free block, units on the
/// torsion coordinates).
pub fn check_automorphism(a: &FgAbelian, m: &IntMatrix) -> Result<()> {
    let n = a.ngens();
    if m.rows() != n || m.cols() != n {
        return Err(Error::invalid(format!("matrix must be {n}x{n}")));
    }
    if !a.is_well_defined_endomorphism(m) {
        return Err(Error::violation("matrix does not respect the torsion moduli"));
    }
    // injective and onto: the image of the coordinate generators spans
    if !subgroup_index(a, &m.transpose())?.is_one() {
        return Err(Error::violation("matrix is not onto"));
    }
    if a.is_finite() {
        return Ok(());
    }
    let r = a.rank();
    let mut free = IntMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            free.set(i, j, m.get(i, j).clone());
        }
    }
    if !free.is_unimodular() {
        return Err(Error::violation("matrix is not invertible on the free part"));
    }
    Ok(())
}

/// How a group element acts in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// Columns are images of coordinate generators.
    Matrix(IntMatrix),
    /// Image index of each element of a finite fundamental group.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationModel {
    pub name: String,
    pub space: SpaceModel,
    pub group: CayleyGroup,
    pub free: bool,
    /// Indexed by group element, then degree; absent entries are identities.
    pub action: Vec<BTreeMap<u32, Automorphism>>,
    /// `cocycle[q][r]` in the coordinates of `pi_1(X)`.
    pub cocycle: Option<Vec<Vec<LayerElement>>>,
    pub g0_explicit: Option<Vec<String>>,
    pub sphere_dimension: Option<u32>,
    /// `G_1` of the orbit space, in the orbit fundamental group.
    pub orbit_gottlieb1: Option<SubgroupData>,
    /// The equivariant Gottlieb group in degree 1, inside `pi_1(X)`.
    pub equivariant_gottlieb1: Option<SubgroupData>,
    /// Name of a standalone catalog model of the orbit space.
    pub orbit_model: Option<String>,
}

impl TransformationModel {
    /// The action of `g` on `pi_i` for `i >= 2`, or on an abelian `pi_1`.
    pub fn action_matrix(&self, g: usize, i: u32) -> Result<IntMatrix> {
        let n = if i == 1 {
            self.space
                .pi1
                .as_layer()
                .ok_or_else(|| Error::unsupported("fundamental group has no coordinates"))?
                .ngens()
        } else {
            self.space.pi_abelian(i)?.ngens()
        };
        match self.action[g].get(&i) {
            None => Ok(IntMatrix::identity(n)),
            Some(Automorphism::Matrix(m)) => Ok(m.clone()),
            Some(Automorphism::Permutation(_)) => Err(Error::invalid("expected a matrix")),
        }
    }

    fn pi1_permutation(&self, g: usize) -> Result<Vec<usize>> {
        let Pi1::Finite(p) = &self.space.pi1 else {
            return Err(Error::invalid("expected a matrix"));
        };
        match self.action[g].get(&1) {
            None => Ok((0..p.order()).collect()),
            Some(Automorphism::Permutation(v)) => Ok(v.clone()),
            Some(Automorphism::Matrix(_)) => Err(Error::invalid("expected an element permutation")),
        }
    }

    /// Whether `g` induces the identity on every `pi_i`, `2 <= i <= truncation`.
    pub fn trivial_on_higher(&self, g: usize) -> Result<bool> {
        for i in 2..=self.space.truncation {
            let a = self.space.pi_abelian(i)?;
            if !a.is_identity_endomorphism(&self.action_matrix(g, i)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `g` induces an inner automorphism of `pi_1` (the identity
    /// for abelian groups).
    pub fn inner_on_pi1(&self, g: usize) -> Result<bool> {
        match &self.space.pi1 {
            Pi1::Abelian(a) => Ok(a.is_identity_endomorphism(&self.action_matrix(g, 1)?)),
            Pi1::Finite(p) => Ok(p.inner_witness(&self.pi1_permutation(g)?).is_some()),
            Pi1::Virt(_) => Err(Error::unsupported("actions on extension fundamental groups")),
        }
    }

    /// The extension of `G` by `pi_1(X)` through the action and cocycle.
    pub fn sigma1_extension(&self) -> Result<VirtAbelian> {
        let layer = self
            .space
            .pi1
            .as_layer()
            .ok_or_else(|| Error::unsupported("fundamental group of the space must be abelian with coordinates"))?;
        if self.cocycle.is_none() && !layer.is_trivial() {
            return Err(Error::invalid("a cocycle is required when the fundamental group is nontrivial").at("cocycle"));
        }
        let q = self.group.order();
        let mut action = Vec::with_capacity(q);
        for g in 0..q {
            action.push(if layer.is_trivial() {
                IntMatrix::identity(0)
            } else {
                self.action_matrix(g, 1)?
            });
        }
        let cocycle = if layer.is_trivial() { None } else { self.cocycle.clone() };
        VirtAbelian::new(self.group.clone(), layer, action, cocycle).map_err(|e| e.at("cocycle"))
    }

    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = self.space.validate().map_err(|e| e.at("space"))?;
        let q = self.group.order();
        if self.action.len() != q {
            return Err(Error::invalid("action table does not cover the group").at("action"));
        }
        for g in 0..q {
            let path = format!("action.{}", self.group.name(g));
            for (&i, aut) in &self.action[g] {
                let dpath = format!("{path}.{i}");
                if i == 0 || i > self.space.truncation {
                    return Err(Error::invalid(format!("degree {i} outside 1..={}", self.space.truncation)).at(dpath));
                }
                match (i, aut, &self.space.pi1) {
                    (1, Automorphism::Permutation(p), Pi1::Finite(pg)) => {
                        if !pg.is_automorphism(p) {
                            return Err(Error::violation("not an automorphism of the fundamental group").at(dpath));
                        }
                    }
                    (1, Automorphism::Matrix(m), _) => {
                        let a = self.space.pi1.as_layer().ok_or_else(|| {
                            Error::invalid("matrix action needs an abelian fundamental group").at(&dpath)
                        })?;
                        check_automorphism(&a, m).map_err(|e| e.at(&dpath))?;
                    }
                    (_, Automorphism::Matrix(m), _) if i >= 2 => {
                        check_automorphism(&self.space.pi_abelian(i)?, m).map_err(|e| e.at(&dpath))?;
                    }
                    _ => return Err(Error::invalid("unsupported automorphism encoding").at(dpath)),
                }
            }
        }
        self.check_homomorphism()?;
        if self.free && (self.cocycle.is_some() || self.space.pi1.is_trivial()) {
            let ext = self.sigma1_extension()?;
            if self.space.aspherical && ext.is_torsion_free()? == Some(false) {
                return Err(Error::violation(
                    "extension has torsion, impossible for a free action on an aspherical space",
                )
                .at("cocycle"));
            }
        } else if !self.free && self.cocycle.is_some() {
            warnings.push(format!("{}: cocycle given for a non-free action is ignored", self.name));
        }
        if let Some(names) = &self.g0_explicit {
            let s = resolve_elements(&self.group, names).map_err(|e| e.at("g0"))?;
            for &g in s.elements() {
                if !self.trivial_on_higher(g)? || !self.inner_on_pi1(g).unwrap_or(true) {
                    return Err(Error::violation(format!(
                        "{} acts nontrivially on homotopy but is listed as homotopic to the identity",
                        self.group.name(g)
                    ))
                    .at("g0"));
                }
            }
        }
        if let Some(d) = self.sphere_dimension {
            self.check_sphere(d).map_err(|e| e.at("sphere_dimension"))?;
        }
        if let Some(d) = &self.equivariant_gottlieb1 {
            self.space.ambient_index(1, d).map_err(|e| e.at("equivariant_gottlieb1"))?;
        }
        if self.orbit_gottlieb1.is_some() && self.free {
            self.orbit_space()?;
        }
        Ok(warnings)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let q = self.group.order();
        let e = self.group.identity();
        for i in 1..=self.space.truncation {
            if i == 1 && matches!(self.space.pi1, Pi1::Finite(_)) {
                let ident: Vec<usize> = (0..self.pi1_permutation(e)?.len()).collect();
                if self.pi1_permutation(e)? != ident {
                    return Err(Error::violation("identity must act trivially").at("action"));
                }
                for a in 0..q {
                    for b in 0..q {
                        let (pa, pb) = (self.pi1_permutation(a)?, self.pi1_permutation(b)?);
                        let composed: Vec<usize> = (0..pa.len()).map(|x| pa[pb[x]]).collect();
                        if composed != self.pi1_permutation(self.group.mul(a, b))? {
                            return Err(Error::violation("action on pi_1 is not a homomorphism").at("action"));
                        }
                    }
                }
                continue;
            }
            let ambient = if i == 1 {
                match self.space.pi1.as_layer() {
                    Some(a) => a,
                    None => continue,
                }
            } else {
                self.space.pi_abelian(i)?
            };
            if !ambient.is_identity_endomorphism(&self.action_matrix(e, i)?) {
                return Err(Error::violation(format!("identity must act trivially on pi_{i}")).at("action"));
            }
            for a in 0..q {
                for b in 0..q {
                    let composed = self.action_matrix(a, i)?.mul(&self.action_matrix(b, i)?)?;
                    if !ambient.endomorphisms_equal(&composed, &self.action_matrix(self.group.mul(a, b), i)?) {
                        return Err(Error::violation(format!(
                            "action on pi_{i} is not a homomorphism at ({}, {})",
                            self.group.name(a),
                            self.group.name(b)
                        ))
                        .at("action"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_sphere(&self, d: u32) -> Result<()> {
        if d == 0 {
            return Err(Error::invalid("sphere dimension must be positive"));
        }
        let s = &self.space;
        let top = d.min(s.truncation);
        for i in 1..top {
            if !s.pi_order(i)?.is_one() {
                return Err(Error::violation(format!("a {d}-sphere has trivial pi_{i}")));
            }
        }
        if d <= s.truncation && s.pi_group(d)?.abelian != Some(FgAbelian::free(1)) {
            return Err(Error::violation(format!("a {d}-sphere has pi_{d} = Z")));
        }
        Ok(())
    }

    /// The orbit space `X/G` of a free action.
    pub fn orbit_space(&self) -> Result<SpaceModel> {
        if !self.free {
            return Err(Error::unsupported("orbit spaces are only modelled for free actions"));
        }
        let x = &self.space;
        let ext = self.sigma1_extension()?;
        let pi1 = Pi1::from_virt(ext)?;

        let mut pi1_action = Pi1Action::Trivial;
        let mut per_element: BTreeMap<String, BTreeMap<u32, IntMatrix>> = BTreeMap::new();
        let own_trivial = x.pi1_action_trivial() || x.pi1.is_trivial();
        for g in 0..self.group.order() {
            for i in 2..=x.truncation {
                let a = x.pi_abelian(i)?;
                let m = self.action_matrix(g, i)?;
                if a.is_identity_endomorphism(&m) {
                    continue;
                }
                if !own_trivial {
                    return Err(Error::unsupported(
                        "orbit spaces of spaces whose fundamental group already acts on higher homotopy",
                    ));
                }
                match &pi1 {
                    Pi1::Finite(t) => {
                        for (idx, name) in t.names().iter().enumerate() {
                            if base_of(t, idx, &self.group, x)? == g {
                                per_element.entry(name.clone()).or_default().insert(i, m.clone());
                            }
                        }
                    }
                    _ => {
                        per_element
                            .entry(self.group.name(g).to_string())
                            .or_default()
                            .insert(i, m.clone());
                    }
                }
            }
        }
        if !per_element.is_empty() {
            pi1_action = Pi1Action::Matrices(per_element);
        } else if !own_trivial {
            return Err(Error::unsupported(
                "orbit spaces of spaces whose fundamental group already acts on higher homotopy",
            ));
        }

        let mut gottlieb: BTreeMap<u32, SubgroupData> =
            x.gottlieb.iter().filter(|(&i, _)| i >= 2).map(|(&i, d)| (i, d.clone())).collect();
        if x.aspherical {
            gottlieb.insert(1, SubgroupData::Center);
        } else if let Some(d) = &self.orbit_gottlieb1 {
            gottlieb.insert(1, d.clone());
        }
        let orbit = SpaceModel {
            name: format!("{}/{}", x.name, self.group.label()),
            truncation: x.truncation,
            aspherical: x.aspherical,
            pi1,
            pi: x.pi.clone(),
            gottlieb,
            whitehead: x.whitehead.clone(),
            pi1_action,
            note: None,
        };
        orbit.validate().map_err(|e| e.at("orbit"))?;
        if let Some(d) = &self.orbit_gottlieb1 {
            self.check_orbit_gottlieb1(&orbit, d).map_err(|e| e.at("orbit_gottlieb1"))?;
        }
        Ok(orbit)
    }

    /// Elements of `G_1` are central and act trivially on higher homotopy.
    fn check_orbit_gottlieb1(&self, orbit: &SpaceModel, d: &SubgroupData) -> Result<()> {
        let Pi1::Finite(t) = &orbit.pi1 else {
            return match d {
                SubgroupData::Center | SubgroupData::Trivial => Ok(()),
                _ => Err(Error::unsupported("orbit Gottlieb data for an infinite fundamental group")),
            };
        };
        let s = Ambient::finite_subgroup(t, d)?;
        let z = t.center();
        for &x in s.elements() {
            if !z.contains(x) {
                return Err(Error::violation(format!("{} is not central", t.name(x))));
            }
            let g = base_of(t, x, &self.group, &self.space)?;
            if !self.trivial_on_higher(g)? {
                return Err(Error::violation(format!(
                    "{} acts nontrivially on higher homotopy",
                    t.name(x)
                )));
            }
        }
        Ok(())
    }
}

/// Image in `G` of an element of a tabulated orbit fundamental group.
fn base_of(t: &CayleyGroup, idx: usize, group: &CayleyGroup, x: &SpaceModel) -> Result<usize> {
    let name = t.name(idx);
    if x.pi1.is_trivial() {
        return group
            .index_of(name)
            .ok_or_else(|| Error::not_found(format!("no group element {name:?}")));
    }
    let base = name
        .rsplit_once(';')
        .and_then(|(_, b)| b.strip_suffix(']'))
        .ok_or_else(|| Error::invalid(format!("unexpected element name {name:?}")))?;
    group
        .index_of(base)
        .ok_or_else(|| Error::not_found(format!("no group element {base:?}")))
}

pub fn identity_actions(q: usize) -> Vec<BTreeMap<u32, Automorphism>> {
    vec![BTreeMap::new(); q]
}
