//! Abelian-by-finite groups `1 -> A -> E -> Q -> 1` given by an action of the
//! finite quotient `Q` on the abelian kernel `A` and a normalized 2-cocycle,
//! plus [`TowerSummary`], the invariant-level description used for torus and
//! Rhodes groups.
//!
//! Elements are pairs `(a, q)` with product
//! `(a, q)(b, r) = (a + q·b + c(q, r), qr)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{cokernel, subgroup_index, FgAbelian};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::fingroup::{CayleyGroup, Subgroup, MAX_SEARCH_ORDER};
use crate::matrix::IntMatrix;

pub type LayerElement = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtAbelian {
    base: CayleyGroup,
    layer: FgAbelian,
    /// Indexed by base element; `action[q] · b` is `q·b`.
    action: Vec<IntMatrix>,
    /// `cocycle[q][r]`, reduced.
    cocycle: Vec<Vec<LayerElement>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerElement {
    pub layer: LayerElement,
    pub base: usize,
}

/// The center of a [`VirtAbelian`]: its intersection with the layer (the
/// subgroup fixed by every action matrix) and the base elements that carry
/// a central lift, each with one such lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterData {
    pub layer_generators: IntMatrix,
    pub layer_part: FgAbelian,
    pub base_lifts: Vec<TowerElement>,
}

impl CenterData {
    pub fn order(&self) -> ExtNat {
        &self.layer_part.order() * &ExtNat::from(self.base_lifts.len())
    }

    pub fn hirsch_length(&self) -> usize {
        self.layer_part.rank()
    }
}

impl VirtAbelian {
    /// Validates the action (a homomorphism into layer automorphisms) and
    /// the cocycle (normalized, satisfying the cocycle identity). A missing
    /// cocycle means the split extension.
    pub fn new(
        base: CayleyGroup,
        layer: FgAbelian,
        action: Vec<IntMatrix>,
        cocycle: Option<Vec<Vec<LayerElement>>>,
    ) -> Result<Self> {
        let q = base.order();
        let n = layer.ngens();
        if action.len() != q {
            return Err(Error::invalid(format!(
                "action lists {} matrices for a base of order {q}",
                action.len()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::invalid(format!("action matrix must be {n}x{n}")).at(base.name(i)));
            }
            if !layer.is_well_defined_endomorphism(m) {
                return Err(Error::violation("action matrix is not well defined on the torsion coordinates")
                    .at(base.name(i)));
            }
        }
        if !layer.is_identity_endomorphism(&action[base.identity()]) {
            return Err(Error::violation("identity element must act trivially").at(base.name(base.identity())));
        }
        for a in 0..q {
            for b in 0..q {
                let composed = action[a].mul(&action[b])?;
                if !layer.endomorphisms_equal(&composed, &action[base.mul(a, b)]) {
                    return Err(Error::violation(format!(
                        "action is not a homomorphism at ({}, {})",
                        base.name(a),
                        base.name(b)
                    )));
                }
            }
        }
        let cocycle = match cocycle {
            None => vec![vec![layer.zero_element(); q]; q],
            Some(c) => {
                if c.len() != q || c.iter().any(|row| row.len() != q) {
                    return Err(Error::invalid(format!("cocycle table must be {q}x{q}")));
                }
                let mut reduced = Vec::with_capacity(q);
                for row in c {
                    let mut out = Vec::with_capacity(q);
                    for v in row {
                        if v.len() != n {
                            return Err(Error::invalid(format!("cocycle values need {n} coordinates")));
                        }
                        out.push(layer.reduce(&v));
                    }
                    reduced.push(out);
                }
                reduced
            }
        };
        let g = VirtAbelian {
            base,
            layer,
            action,
            cocycle,
        };
        g.check_cocycle()?;
        Ok(g)
    }

    fn check_cocycle(&self) -> Result<()> {
        let e = self.base.identity();
        let q = self.base.order();
        for x in 0..q {
            if !self.layer.is_zero_element(&self.cocycle[e][x]) || !self.layer.is_zero_element(&self.cocycle[x][e]) {
                return Err(Error::violation(format!(
                    "cocycle is not normalized at {}",
                    self.base.name(x)
                )));
            }
        }
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    // a·c(b, c) + c(a, bc) = c(a, b) + c(ab, c)
                    let lhs = self.layer.add(
                        &self.act(a, &self.cocycle[b][c]),
                        &self.cocycle[a][self.base.mul(b, c)],
                    );
                    let rhs = self
                        .layer
                        .add(&self.cocycle[a][b], &self.cocycle[self.base.mul(a, b)][c]);
                    if lhs != rhs {
                        return Err(Error::violation(format!(
                            "cocycle identity fails at ({}, {}, {})",
                            self.base.name(a),
                            self.base.name(b),
                            self.base.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Split extension (zero cocycle).
    pub fn split(base: CayleyGroup, layer: FgAbelian, action: Vec<IntMatrix>) -> Result<Self> {
        Self::new(base, layer, action, None)
    }

    /// Direct product `layer x base` with trivial action and zero cocycle.
    pub fn direct(base: CayleyGroup, layer: FgAbelian) -> Self {
        let n = layer.ngens();
        let action = vec![IntMatrix::identity(n); base.order()];
        Self::new(base, layer, action, None).expect("trivial extension is valid")
    }

    pub fn base(&self) -> &CayleyGroup {
        &self.base
    }

    pub fn layer(&self) -> &FgAbelian {
        &self.layer
    }

    pub fn action(&self, q: usize) -> &IntMatrix {
        &self.action[q]
    }

    pub fn cocycle(&self, q: usize, r: usize) -> &LayerElement {
        &self.cocycle[q][r]
    }

    pub fn order(&self) -> ExtNat {
        &self.layer.order() * &ExtNat::from(self.base.order())
    }

    /// Rank of a free abelian subgroup of finite index.
    pub fn hirsch_length(&self) -> usize {
        self.layer.rank()
    }

    fn act(&self, q: usize, a: &[BigInt]) -> LayerElement {
        self.layer.reduce(&self.action[q].apply(a))
    }

    pub fn element(&self, layer: &[BigInt], base: usize) -> Result<TowerElement> {
        if layer.len() != self.layer.ngens() || base >= self.base.order() {
            return Err(Error::invalid("element does not belong to this group"));
        }
        Ok(TowerElement {
            layer: self.layer.reduce(layer),
            base,
        })
    }

    pub fn identity(&self) -> TowerElement {
        TowerElement {
            layer: self.layer.zero_element(),
            base: self.base.identity(),
        }
    }

    fn check(&self, x: &TowerElement) -> Result<()> {
        if x.layer.len() != self.layer.ngens() || x.base >= self.base.order() {
            return Err(Error::invalid("element coordinates do not match the group"));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
        self.check(x)?;
        self.check(y)?;
        let twisted = self.act(x.base, &y.layer);
        let sum = self.layer.add(&self.layer.add(&x.layer, &twisted), &self.cocycle[x.base][y.base]);
        Ok(TowerElement {
            layer: sum,
            base: self.base.mul(x.base, y.base),
        })
    }

    /// `(a, q)^-1 = (-(q^-1·(a + c(q, q^-1))), q^-1)`
    pub fn inverse(&self, x: &TowerElement) -> Result<TowerElement> {
        self.check(x)?;
        let qi = self.base.inv(x.base);
        let shifted = self.layer.add(&x.layer, &self.cocycle[x.base][qi]);
        Ok(TowerElement {
            layer: self.layer.neg(&self.act(qi, &shifted)),
            base: qi,
        })
    }

    pub fn conjugate(&self, g: &TowerElement, x: &TowerElement) -> Result<TowerElement> {
        self.multiply(&self.multiply(g, x)?, &self.inverse(g)?)
    }

    pub fn same_element(&self, x: &TowerElement, y: &TowerElement) -> bool {
        x.base == y.base && self.layer.reduce(&x.layer) == self.layer.reduce(&y.layer)
    }

    pub fn is_abelian(&self) -> bool {
        let q = self.base.order();
        self.base.is_abelian()
            && self.action.iter().all(|m| self.layer.is_identity_endomorphism(m))
            && (0..q).all(|a| (0..q).all(|b| self.cocycle[a][b] == self.cocycle[b][a]))
    }

    /// The center, solved exactly: the layer part is the common fixed
    /// subgroup of the action, and a base element `q` carries a central lift
    /// `(a, q)` iff `q` is central in the base, acts trivially, and
    /// `(r - 1)·a = c(q, r) - c(r, q)` is solvable for every `r`.
    pub fn center(&self) -> Result<CenterData> {
        let q = self.base.order();
        let n = self.layer.ngens();
        let mut stacked = IntMatrix::zeros(0, n);
        let mut moduli = Vec::with_capacity(q * n);
        let layer_moduli = self.layer.moduli();
        for r in 0..q {
            let shifted = minus_identity(&self.action[r]);
            for row in 0..n {
                stacked.push_row(shifted.row(row));
            }
            moduli.extend(layer_moduli.iter().cloned());
        }
        let layer_generators = self.layer.kernel_into(&stacked, &moduli)?;
        let layer_part = self.layer.subgroup_structure(&layer_generators)?;

        let base_center = self.base.center();
        let mut base_lifts = Vec::new();
        for &b in base_center.elements() {
            if b == self.base.identity() {
                base_lifts.push(self.identity());
                continue;
            }
            if !self.layer.is_identity_endomorphism(&self.action[b]) {
                // conjugating the layer by this lift moves some element
                continue;
            }
            let mut rhs = Vec::with_capacity(q * n);
            for r in 0..q {
                rhs.extend(self.layer.sub(&self.cocycle[b][r], &self.cocycle[r][b]));
            }
            if let Some(a) = self.layer.solve_into(&stacked, &moduli, &rhs)? {
                base_lifts.push(TowerElement { layer: a, base: b });
            }
        }
        Ok(CenterData {
            layer_generators,
            layer_part,
            base_lifts,
        })
    }

    /// Isomorphism type of the center when it is determined by the data at
    /// hand: when no non-identity base element lifts, or the group is finite.
    pub fn center_group(&self) -> Result<Option<FgAbelian>> {
        let c = self.center()?;
        if c.base_lifts.len() == 1 {
            return Ok(Some(c.layer_part));
        }
        if self.can_tabulate() {
            let table = self.to_cayley()?;
            let z = table.center();
            return Ok(Some(table.restrict(&z)?.abelian_invariants()?));
        }
        Ok(None)
    }

    pub fn center_summary(&self) -> Result<TowerSummary> {
        let c = self.center()?;
        let group = match self.center_group()? {
            Some(a) => LayerGroup::abelian(&a),
            None => LayerGroup {
                label: format!("center (layer part {})", c.layer_part),
                order: c.order(),
                hirsch: c.hirsch_length(),
                abelian: None,
                profile: None,
            },
        };
        Ok(TowerSummary::new(
            "center",
            None,
            vec![Layer {
                degree: 1,
                group,
                multiplicity: 1,
            }],
            true,
        ))
    }

    /// Index of the center: `[A : A^Q] · |Q| / #(lifted base elements)`.
    pub fn center_index(&self) -> Result<ExtNat> {
        let c = self.center()?;
        let layer_index = subgroup_index(&self.layer, &c.layer_generators)?;
        let base_index = self.base.order() / c.base_lifts.len();
        Ok(&layer_index * &ExtNat::from(base_index))
    }

    /// Abelianization from the presentation on the layer coordinates and one
    /// generator `x_q` per base element, with relations `q·a = a` and
    /// `x_q + x_r = x_qr + c(q, r)`.
    pub fn abelianization(&self) -> Result<FgAbelian> {
        let q = self.base.order();
        if q > MAX_SEARCH_ORDER {
            return Err(Error::unsupported("base order above the search limit"));
        }
        let n = self.layer.ngens();
        let width = n + q;
        let mut rel = IntMatrix::zeros(0, width);
        let rank = self.layer.rank();
        for (j, d) in self.layer.torsion().iter().enumerate() {
            let mut row = vec![BigInt::zero(); width];
            row[rank + j] = d.clone();
            rel.push_row(&row);
        }
        for r in 0..q {
            let shifted = minus_identity(&self.action[r]);
            for j in 0..n {
                let mut row = vec![BigInt::zero(); width];
                for i in 0..n {
                    row[i] = shifted.get(i, j).clone();
                }
                rel.push_row(&row);
            }
        }
        for a in 0..q {
            for b in 0..q {
                let mut row = vec![BigInt::zero(); width];
                row[n + a] += 1;
                row[n + b] += 1;
                row[n + self.base.mul(a, b)] -= 1;
                for (i, v) in self.cocycle[a][b].iter().enumerate() {
                    row[i] -= v;
                }
                rel.push_row(&row);
            }
        }
        cokernel(width, &[] as &[BigInt], &rel)
    }

    pub fn can_tabulate(&self) -> bool {
        self.layer.is_finite()
            && self
                .order()
                .to_u64()
                .map_or(false, |o| o as usize <= MAX_SEARCH_ORDER)
    }

    pub fn power(&self, x: &TowerElement, k: usize) -> Result<TowerElement> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Whether every element outside the layer has infinite order, decided
    /// for a torsion-free layer: `(a, q)^m = (N a + s, e)` with `m` the order
    /// of `q`, `N` the norm of the action of `q` and `s` the layer part of
    /// `(0, q)^m`, so a torsion element over `q` exists iff `N a = -s` is solvable.
    /// `None` when the layer has torsion.
    pub fn is_torsion_free(&self) -> Result<Option<bool>> {
        if !self.layer.torsion().is_empty() {
            return Ok(None);
        }
        let n = self.layer.ngens();
        for q in 0..self.base.order() {
            if q == self.base.identity() {
                continue;
            }
            let m = self.base.element_order(q);
            let mut norm = IntMatrix::zeros(n, n);
            let mut power = IntMatrix::identity(n);
            for _ in 0..m {
                for r in 0..n {
                    for c in 0..n {
                        let v = norm.get(r, c) + power.get(r, c);
                        norm.set(r, c, v);
                    }
                }
                power = power.mul(&self.action[q])?;
            }
            let lift = TowerElement {
                layer: self.layer.zero_element(),
                base: q,
            };
            let s = self.power(&lift, m)?.layer;
            let target = self.layer.moduli();
            if self.layer.solve_into(&norm, &target, &self.layer.neg(&s))?.is_some() {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }

    /// Element names: base names when the layer is trivial, otherwise `[a1,a2;q]`.
    pub fn element_name(&self, x: &TowerElement) -> String {
        if self.layer.is_trivial() {
            return self.base.name(x.base).to_string();
        }
        let coords: Vec<String> = x.layer.iter().map(ToString::to_string).collect();
        format!("[{};{}]", coords.join(","), self.base.name(x.base))
    }

    /// Enumerates all elements, base-major.
    pub fn elements(&self) -> Result<Vec<TowerElement>> {
        let layer_elems = self.layer.elements()?;
        let mut out = Vec::with_capacity(layer_elems.len() * self.base.order());
        for b in 0..self.base.order() {
            for a in &layer_elems {
                out.push(TowerElement {
                    layer: a.clone(),
                    base: b,
                });
            }
        }
        Ok(out)
    }

    /// The group as an explicit multiplication table.
    pub fn to_cayley(&self) -> Result<CayleyGroup> {
        if !self.layer.is_finite() {
            return Err(Error::unsupported("cannot tabulate an infinite layer"));
        }
        if !self.can_tabulate() {
            return Err(Error::unsupported(format!(
                "group order {} exceeds the table limit {MAX_SEARCH_ORDER}",
                self.order()
            )));
        }
        let elems = self.elements()?;
        let index: BTreeMap<&TowerElement, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut rows = Vec::with_capacity(elems.len());
        for x in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for y in &elems {
                let p = self.multiply(x, y)?;
                row.push(index[&p]);
            }
            rows.push(row);
        }
        let names = elems.iter().map(|x| self.element_name(x)).collect();
        let label = if self.layer.is_trivial() {
            self.base.label().to_string()
        } else {
            format!("{}.{}", self.layer, self.base.label())
        };
        CayleyGroup::from_table(label, names, rows)
    }

    /// Index in [`to_cayley`](Self::to_cayley) of an element.
    pub fn table_index(&self, x: &TowerElement) -> Result<usize> {
        let elems = self.elements()?;
        let x = self.element(&x.layer, x.base)?;
        elems
            .iter()
            .position(|e| *e == x)
            .ok_or_else(|| Error::invalid("element not found"))
    }

    /// Exactness of kernel/quotient sizes: the tabulated order (finite case)
    /// equals `|layer|·|base|`; in the infinite case both sides are infinite.
    pub fn extension_order_check(&self) -> bool {
        let expected = &self.layer.order() * &ExtNat::from(self.base.order());
        if self.can_tabulate() {
            return self
                .to_cayley()
                .map_or(false, |t| ExtNat::from(t.order()) == expected);
        }
        let counted = if self.layer.is_finite() {
            ExtNat::from(self.elements().map_or(0, |e| e.len()))
        } else {
            ExtNat::Infinite
        };
        counted == expected
    }

    /// The preimage of a base subgroup: same layer, restricted base.
    pub fn restrict_base(&self, sub: &Subgroup) -> Result<VirtAbelian> {
        let base = self.base.restrict(sub)?;
        let idx = sub.elements();
        let action = idx.iter().map(|&q| self.action[q].clone()).collect();
        let cocycle = idx
            .iter()
            .map(|&a| idx.iter().map(|&b| self.cocycle[a][b].clone()).collect())
            .collect();
        VirtAbelian::new(base, self.layer.clone(), action, Some(cocycle))
    }

    /// Projection to the base, as element indices of the tabulated group.
    pub fn projection_table(&self) -> Result<Vec<usize>> {
        Ok(self.elements()?.into_iter().map(|x| x.base).collect())
    }
}

fn minus_identity(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows().min(m.cols()) {
        let v = out.get(i, i) - 1;
        out.set(i, i, v);
    }
    out
}

/// Invariants of one layer group: order, Hirsch length, and the canonical
/// form when abelian. Non-abelian finite layers also carry their element-order profile.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LayerGroup {
    pub label: String,
    pub order: ExtNat,
    pub hirsch: usize,
    pub abelian: Option<FgAbelian>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub profile: Option<Vec<(usize, usize)>>,
}

impl LayerGroup {
    pub fn abelian(a: &FgAbelian) -> Self {
        LayerGroup {
            label: format!("{a}"),
            order: a.order(),
            hirsch: a.rank(),
            abelian: Some(a.clone()),
            profile: None,
        }
    }

    pub fn finite(g: &CayleyGroup) -> Self {
        if g.is_abelian() {
            let a = g.abelianization();
            let mut l = Self::abelian(&a);
            l.label = g.label().to_string();
            return l;
        }
        LayerGroup {
            label: g.label().to_string(),
            order: ExtNat::from(g.order()),
            hirsch: 0,
            abelian: None,
            profile: Some(g.order_profile()),
        }
    }

    pub fn virt(v: &VirtAbelian, label: &str) -> Self {
        if v.is_abelian() {
            if let Ok(a) = v.abelianization() {
                let mut l = Self::abelian(&a);
                l.label = label.to_string();
                return l;
            }
        }
        LayerGroup {
            label: label.to_string(),
            order: v.order(),
            hirsch: v.hirsch_length(),
            abelian: None,
            profile: None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Equality of invariants, ignoring the display label.
    pub fn same_invariants(&self, other: &LayerGroup) -> bool {
        self.order == other.order
            && self.hirsch == other.hirsch
            && self.abelian == other.abelian
            && self.profile == other.profile
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Layer {
    pub degree: u32,
    pub group: LayerGroup,
    pub multiplicity: u64,
}

/// A finite quotient sitting on top of the layers (`G` for Rhodes groups, `G0` for their evaluation subgroups).
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BaseInfo {
    pub label: String,
    pub order: usize,
}

/// Invariant-level description of an iterated extension: abelian or finite
/// layers with multiplicities, optionally over a finite base.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TowerSummary {
    pub name: String,
    pub base: Option<BaseInfo>,
    pub layers: Vec<Layer>,
    pub is_direct_product: bool,
    pub finite_order: ExtNat,
    pub free_rank: usize,
}

impl TowerSummary {
    pub fn new(name: impl Into<String>, base: Option<BaseInfo>, layers: Vec<Layer>, is_direct_product: bool) -> Self {
        let mut order = base.as_ref().map_or(ExtNat::one(), |b| ExtNat::from(b.order));
        let mut free_rank = 0;
        for l in &layers {
            order = &order * &l.group.order.pow(l.multiplicity);
            free_rank += l.group.hirsch * l.multiplicity as usize;
        }
        TowerSummary {
            name: name.into(),
            base,
            layers,
            is_direct_product,
            finite_order: order,
            free_rank,
        }
    }

    /// Product of the layers when all of them are abelian.
    pub fn layer_product(&self) -> Option<FgAbelian> {
        let mut acc = FgAbelian::trivial();
        for l in &self.layers {
            let a = l.group.abelian.as_ref()?;
            acc = acc.direct_product(&a.power(l.multiplicity as usize));
        }
        Some(acc)
    }

    pub fn multiplicity(&self, degree: u32) -> u64 {
        self.layers
            .iter()
            .filter(|l| l.degree == degree)
            .map(|l| l.multiplicity)
            .sum()
    }

    pub fn layer(&self, degree: u32) -> Option<&Layer> {
        self.layers.iter().find(|l| l.degree == degree)
    }

    pub fn base_order(&self) -> usize {
        self.base.as_ref().map_or(1, |b| b.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Z^3 by Z2, t acting by diag(1, -1, -1), c(t, t) = e1.
    fn t3_group() -> VirtAbelian {
        let base = CayleyGroup::cyclic(2);
        let action = vec![
            IntMatrix::identity(3),
            IntMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        ];
        let z = big(&[0, 0, 0]);
        let cocycle = vec![vec![z.clone(), z.clone()], vec![z, big(&[1, 0, 0])]];
        VirtAbelian::new(base, FgAbelian::free(3), action, Some(cocycle)).unwrap()
    }

    #[test]
    fn free_involution_squares_to_translation() {
        let g = t3_group();
        let t = g.element(&big(&[0, 0, 0]), 1).unwrap();
        assert_eq!(g.multiply(&t, &t).unwrap(), g.element(&big(&[1, 0, 0]), 0).unwrap());
        let e2 = g.element(&big(&[0, 1, 0]), 0).unwrap();
        assert_eq!(
            g.conjugate(&t, &e2).unwrap(),
            g.element(&big(&[0, -1, 0]), 0).unwrap()
        );
        let x = g.element(&big(&[3, -2, 5]), 1).unwrap();
        assert_eq!(g.multiply(&g.identity(), &x).unwrap(), x);
        assert_eq!(g.multiply(&x, &g.inverse(&x).unwrap()).unwrap(), g.identity());
        assert_eq!(g.multiply(&g.inverse(&x).unwrap(), &x).unwrap(), g.identity());
    }

    #[test]
    fn t3_center_and_abelianization() {
        let g = t3_group();
        let c = g.center().unwrap();
        assert_eq!(c.layer_part, FgAbelian::free(1));
        assert_eq!(c.base_lifts.len(), 1);
        let z = FgAbelian::free(3);
        assert!(z.contains(&c.layer_generators, &big(&[1, 0, 0])).unwrap());
        assert_eq!(g.center_index().unwrap(), ExtNat::Infinite);
        assert_eq!(
            g.abelianization().unwrap(),
            FgAbelian::canonical_form(1, &[2, 2]).unwrap()
        );
        assert!(g.extension_order_check());
        assert!(!g.is_abelian());
        assert_eq!(g.is_torsion_free().unwrap(), Some(true));
        let split = VirtAbelian::split(g.base().clone(), FgAbelian::free(3), vec![g.action(0).clone(), g.action(1).clone()]).unwrap();
        assert_eq!(split.is_torsion_free().unwrap(), Some(false));
        assert_eq!(g.to_cayley().unwrap_err().kind, crate::error::ErrorKind::Unsupported);
    }

    #[test]
    fn direct_extension_is_abelian() {
        let g = VirtAbelian::direct(CayleyGroup::cyclic(3), FgAbelian::free(1));
        assert!(g.is_abelian());
        let c = g.center().unwrap();
        assert_eq!(c.base_lifts.len(), 3);
        assert!(g.center_index().unwrap().is_one());
        assert_eq!(
            g.abelianization().unwrap(),
            FgAbelian::canonical_form(1, &[3]).unwrap()
        );
    }

    #[test]
    fn rejects_bad_data() {
        let base = CayleyGroup::cyclic(2);
        // not a homomorphism: t acts by 2 on Z
        let bad = VirtAbelian::split(
            base.clone(),
            FgAbelian::free(1),
            vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[2]])],
        );
        assert!(bad.is_err());
        // unnormalized cocycle
        let z = big(&[0]);
        let bad = VirtAbelian::new(
            base.clone(),
            FgAbelian::free(1),
            vec![IntMatrix::identity(1); 2],
            Some(vec![vec![big(&[1]), z.clone()], vec![z.clone(), z.clone()]]),
        );
        assert!(bad.is_err());
        // c(t, t) = e1 under t -> -1 violates the cocycle identity
        let bad = VirtAbelian::new(
            base,
            FgAbelian::free(1),
            vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[-1]])],
            Some(vec![vec![z.clone(), z.clone()], vec![z, big(&[1])]]),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn trivial_layer_tabulates_to_base() {
        let g = VirtAbelian::direct(CayleyGroup::quaternion(), FgAbelian::trivial());
        let t = g.to_cayley().unwrap();
        assert!(t.is_isomorphic(&CayleyGroup::quaternion()).unwrap());
        assert_eq!(t.names(), CayleyGroup::quaternion().names());
        let g = VirtAbelian::direct(CayleyGroup::trivial(), FgAbelian::cyclic(2));
        assert!(g.to_cayley().unwrap().is_isomorphic(&CayleyGroup::cyclic(2)).unwrap());
    }

    #[test]
    fn summary_orders() {
        let z2 = FgAbelian::cyclic(2);
        let s = TowerSummary::new(
            "x",
            Some(BaseInfo { label: "Z4".into(), order: 4 }),
            vec![
                Layer { degree: 1, group: LayerGroup::abelian(&z2), multiplicity: 3 },
                Layer { degree: 3, group: LayerGroup::abelian(&FgAbelian::free(1)), multiplicity: 2 },
            ],
            true,
        );
        assert_eq!(s.finite_order, ExtNat::Infinite);
        assert_eq!(s.free_rank, 2);
        assert_eq!(s.layer_product().unwrap(), FgAbelian::canonical_form(2, &[2, 2, 2]).unwrap());
    }
}
