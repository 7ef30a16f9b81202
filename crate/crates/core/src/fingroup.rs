//! Finite groups stored as multiplication tables.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::FgAbelian;
use crate::error::{Error, Result};

/// Largest order for which associativity is checked on construction and
/// isomorphism search is attempted.
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    label: String,
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

/// A subgroup, as sorted element indices of a parent [`CayleyGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_indices(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self, parent: &CayleyGroup) -> bool {
        self.elements.len() == parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

impl CayleyGroup {
    /// Validates a table given as rows of element indices.
    pub fn from_table(label: impl Into<String>, names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::invalid("a group needs at least one element"));
        }
        let mut seen = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate element name {name:?}")));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("multiplication table must be {n}x{n}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            for &v in row {
                if v >= n {
                    return Err(Error::invalid(format!("table entry {v} out of range")));
                }
                table.push(v);
            }
        }
        let latin = (0..n).all(|i| {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            (0..n).all(|j| {
                let r = table[i * n + j];
                let c = table[j * n + i];
                !core::mem::replace(&mut row_seen[r], true) && !core::mem::replace(&mut col_seen[c], true)
            })
        });
        if !latin {
            return Err(Error::invalid("multiplication table is not a Latin square"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::invalid("no two-sided identity"))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n)
                .find(|&y| table[x * n + y] == identity && table[y * n + x] == identity)
                .ok_or_else(|| Error::invalid(format!("element {} has no inverse", names[x])))?;
        }
        if n <= MAX_SEARCH_ORDER {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b];
                    for c in 0..n {
                        if table[ab * n + c] != table[a * n + table[b * n + c]] {
                            return Err(Error::invalid(format!(
                                "associativity fails for ({}, {}, {})",
                                names[a], names[b], names[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(CayleyGroup {
            label: label.into(),
            names,
            table,
            identity,
            inverses,
        })
    }

    /// Builds a group from a product rule on `0..n`; used by catalog constructors.
    fn from_rule(label: &str, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = names.len();
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(label, names, rows).expect("catalog group tables are valid")
    }

    pub fn trivial() -> Self {
        Self::from_rule("trivial", vec!["e".to_string()], |_, _| 0)
    }

    /// Cyclic group with elements `e, g, g^2, ...`.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1, "cyclic group of order 0");
        let names = (0..k)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let label = if k == 1 { "trivial".to_string() } else { format!("Z{k}") };
        Self::from_rule(&label, names, |a, b| (a + b) % k)
    }

    /// Klein four-group with elements `e, a, b, ab`.
    pub fn klein() -> Self {
        let names = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        Self::from_rule("Z2xZ2", names, |x, y| x ^ y)
    }

    /// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // element 2u + s is (-1)^s times unit u, units ordered 1, i, j, k
        fn unit_mul(u: usize, v: usize) -> (usize, usize) {
            match (u, v) {
                (0, w) | (w, 0) => (w, 0),
                (a, b) if a == b => (0, 1),
                (1, 2) => (3, 0),
                (2, 3) => (1, 0),
                (3, 1) => (2, 0),
                (2, 1) => (3, 1),
                (3, 2) => (1, 1),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_rule("Q8", names, |x, y| {
            let (w, s) = unit_mul(x / 2, y / 2);
            2 * w + ((x % 2 + y % 2 + s) % 2)
        })
    }

    /// Dihedral group of order 8, `r^4 = s^2 = 1`, `s r s = r^-1`.
    pub fn dihedral4() -> Self {
        let names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        // index 4b + a is r^a s^b
        Self::from_rule("D4", names, |x, y| {
            let (a, b) = (x % 4, x / 4);
            let (c, d) = (y % 4, y / 4);
            let c = if b == 1 { (4 - c) % 4 } else { c };
            4 * ((b + d) % 2) + (a + c) % 4
        })
    }

    /// Catalog lookup: `trivial`, `Z(k)` / `Zk`, `Z2xZ2`, `Q8`, `D4`, and
    /// `x`-separated products of those.
    pub fn from_catalog(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(g) = Self::catalog_atom(name) {
            return Ok(g);
        }
        let factors = split_product(name);
        if factors.len() > 1 {
            let mut groups = Vec::new();
            for f in &factors {
                groups.push(
                    Self::catalog_atom(f)
                        .ok_or_else(|| Error::not_found(format!("unknown catalog group {f:?}")))?,
                );
            }
            let mut g = CayleyGroup::product_of(&groups);
            g.label = name.to_string();
            return Ok(g);
        }
        Err(Error::not_found(format!("unknown catalog group {name:?}")))
    }

    fn catalog_atom(name: &str) -> Option<Self> {
        match name {
            "trivial" | "1" => return Some(Self::trivial()),
            "Z2xZ2" | "V4" => return Some(Self::klein()),
            "Q8" => return Some(Self::quaternion()),
            "D4" => return Some(Self::dihedral4()),
            _ => {}
        }
        let digits = name
            .strip_prefix("Z(")
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| name.strip_prefix('Z'))?;
        let k: usize = digits.parse().ok()?;
        if k == 0 || k > 4096 {
            return None;
        }
        let mut g = Self::cyclic(k);
        if k > 1 {
            g.label = name.to_string();
        }
        Some(g)
    }

    /// Direct product with tuple element names `(x,y,...)`.
    pub fn product_of(groups: &[CayleyGroup]) -> CayleyGroup {
        let orders: Vec<usize> = groups.iter().map(CayleyGroup::order).collect();
        let n: usize = orders.iter().product();
        let decode = |mut i: usize| -> Vec<usize> {
            let mut digits = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                digits[k] = i % orders[k];
                i /= orders[k];
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().zip(&orders).fold(0, |acc, (d, o)| acc * o + d);
        let names = (0..n)
            .map(|i| {
                let parts: Vec<&str> = decode(i)
                    .iter()
                    .zip(groups)
                    .map(|(&d, g)| g.name(d))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let label = groups.iter().map(|g| g.label.as_str()).collect::<Vec<_>>().join("x");
        Self::from_rule(&label, names, |a, b| {
            let (da, db) = (decode(a), decode(b));
            let prod: Vec<usize> = groups
                .iter()
                .enumerate()
                .map(|(k, g)| g.mul(da[k], db[k]))
                .collect();
            encode(&prod)
        })
    }

    pub fn direct_product(&self, other: &CayleyGroup) -> CayleyGroup {
        Self::product_of(&[self.clone(), other.clone()])
    }

    /// A conventional name for the isomorphism type when one is known:
    /// products of cyclic groups for abelian groups, `Q8` and `D4` otherwise.
    pub fn identify(&self) -> Option<String> {
        if self.order() == 1 {
            return Some("trivial".to_string());
        }
        if self.is_abelian() {
            let a = self.abelianization();
            let parts: Vec<String> = a.torsion().iter().map(|d| format!("Z{d}")).collect();
            return Some(parts.join("x"));
        }
        if self.order() == 8 {
            for g in [Self::quaternion(), Self::dihedral4()] {
                if self.is_isomorphic(&g).ok()? {
                    return Some(g.label.clone());
                }
            }
        }
        None
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| self.table[a * n..(a + 1) * n].to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted `(element order, count)` pairs.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..self.order() {
            *counts.entry(self.element_order(a)).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_indices((0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_indices(vec![self.identity])
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        Subgroup::from_indices(
            (0..n)
                .filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
                .collect(),
        )
    }

    /// Smallest subgroup containing `seeds`.
    pub fn subgroup_generated(&self, seeds: &[usize]) -> Subgroup {
        let n = self.order();
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s < n).collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                // finite group: closure under right multiplication suffices
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_indices((0..n).filter(|&i| member[i]).collect())
    }

    /// Whether `elements` is closed under products and contains the identity.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let s = Subgroup::from_indices(elements.to_vec());
        s.contains(self.identity)
            && s.elements.iter().all(|&a| s.elements.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        (0..self.order()).all(|g| sub.elements.iter().all(|&x| sub.contains(self.conjugate(g, x))))
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// Quotient by a normal subgroup; cosets are named by their smallest-index member.
    pub fn quotient(&self, sub: &Subgroup) -> Result<CayleyGroup> {
        if !self.is_subgroup(&sub.elements) {
            return Err(Error::invalid("not a subgroup"));
        }
        if !self.is_normal(sub) {
            return Err(Error::invalid("subgroup is not normal"));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &h in &sub.elements {
                coset_of[self.mul(x, h)] = id;
            }
        }
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        CayleyGroup::from_table(format!("{}/N", self.label), names, rows)
    }

    /// The subgroup as a group in its own right, keeping element names.
    pub fn restrict(&self, sub: &Subgroup) -> Result<CayleyGroup> {
        if !self.is_subgroup(&sub.elements) {
            return Err(Error::invalid("not a subgroup"));
        }
        let pos = |x: usize| sub.elements.binary_search(&x).expect("closed");
        let names = sub.elements.iter().map(|&i| self.names[i].clone()).collect();
        let rows = sub
            .elements
            .iter()
            .map(|&a| sub.elements.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        CayleyGroup::from_table(format!("<{}>", self.label), names, rows)
    }

    /// Invariant factors of an abelian group, read off from the number of
    /// solutions of `x^(p^j) = 1` for each prime `p`.
    pub fn abelian_invariants(&self) -> Result<FgAbelian> {
        if !self.is_abelian() {
            return Err(Error::invalid("group is not abelian"));
        }
        let n = self.order();
        let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let mut prime_powers: Vec<u64> = Vec::new();
        for p in prime_factors(n) {
            // s[j] = log_p #{x : x^(p^j) = 1}, for j up to the p-adic valuation of n
            let mut valuation = 0;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                valuation += 1;
            }
            let mut s = vec![0usize];
            let mut pj = 1usize;
            for _ in 0..valuation {
                pj *= p;
                let mut count = orders.iter().filter(|&&o| pj % o == 0).count();
                let mut e = 0;
                while count > 1 {
                    count /= p;
                    e += 1;
                }
                s.push(e);
            }
            // number of cyclic factors of exponent >= j is s[j] - s[j-1]
            let at_least: Vec<usize> = (1..s.len()).map(|j| s[j] - s[j - 1]).collect();
            for j in 0..at_least.len() {
                let next = at_least.get(j + 1).copied().unwrap_or(0);
                for _ in 0..at_least[j].saturating_sub(next) {
                    prime_powers.push((p as u64).pow(j as u32 + 1));
                }
            }
        }
        FgAbelian::canonical_form(0, &prime_powers)
    }

    pub fn abelianization(&self) -> FgAbelian {
        let comm = self.commutator_subgroup();
        self.quotient(&comm)
            .and_then(|q| q.abelian_invariants())
            .expect("quotient by the commutator subgroup is abelian")
    }

    /// Whether the permutation `map` of elements is an automorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &m in map {
            if m >= n || core::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// Some `g` with `map(x) = g x g^-1` for all `x`.
    pub fn inner_witness(&self, map: &[usize]) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&g| (0..n).all(|x| map[x] == self.conjugate(g, x)))
    }

    fn fingerprint(&self) -> (usize, Vec<(usize, usize)>, usize, FgAbelian) {
        (
            self.order(),
            self.order_profile(),
            self.center().order(),
            self.abelianization(),
        )
    }

    /// Isomorphism test for groups of order at most [`MAX_SEARCH_ORDER`].
    pub fn is_isomorphic(&self, other: &CayleyGroup) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    /// An isomorphism `self -> other` as an element map, found by fingerprint
    /// pruning and backtracking over generator images.
    pub fn find_isomorphism(&self, other: &CayleyGroup) -> Result<Option<Vec<usize>>> {
        if self.order() > MAX_SEARCH_ORDER || other.order() > MAX_SEARCH_ORDER {
            return Err(Error::unsupported(format!(
                "isomorphism search is limited to order {MAX_SEARCH_ORDER}"
            )));
        }
        if self.fingerprint() != other.fingerprint() {
            return Ok(None);
        }
        let gens = self.generating_sequence();
        let mut images = Vec::with_capacity(gens.len());
        Ok(self.extend_images(other, &gens, &mut images))
    }

    /// Greedy generating sequence, highest element orders first.
    fn generating_sequence(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| core::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for a in by_order {
            if !span.contains(a) {
                gens.push(a);
                span = self.subgroup_generated(&gens);
                if span.is_whole(self) {
                    break;
                }
            }
        }
        gens
    }

    fn extend_images(&self, other: &CayleyGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        let level = images.len();
        let partial = self.extend_map(other, &gens[..level], images)?;
        if level == gens.len() {
            return Some(partial.into_iter().map(|x| x.expect("generators span")).collect());
        }
        let want = self.element_order(gens[level]);
        let used: Vec<bool> = {
            let mut u = vec![false; other.order()];
            for y in partial.iter().flatten() {
                u[*y] = true;
            }
            u
        };
        for cand in 0..other.order() {
            if used[cand] || other.element_order(cand) != want {
                continue;
            }
            images.push(cand);
            if let Some(f) = self.extend_images(other, gens, images) {
                return Some(f);
            }
            images.pop();
        }
        None
    }

    /// Extends generator images to a homomorphism on the generated subgroup,
    /// failing on inconsistency or non-injectivity.
    fn extend_map(&self, other: &CayleyGroup, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
        let mut f = vec![None; self.order()];
        let mut hit = vec![false; other.order()];
        f[self.identity] = Some(other.identity);
        hit[other.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            let fx = f[x].expect("queued elements are mapped");
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(fx, img);
                match f[y] {
                    Some(existing) if existing != fy => return None,
                    Some(_) => {}
                    None => {
                        if core::mem::replace(&mut hit[fy], true) {
                            return None;
                        }
                        f[y] = Some(fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(f)
    }
}

/// Splits `AxBxC` at top-level `x` separators.
fn split_product(name: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in name.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push(&name[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&name[start..]);
    parts
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyGroup({}, order {})", self.label, self.order())
    }
}

impl fmt::Display for CayleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> CayleyGroup {
        CayleyGroup::from_catalog("Q8").unwrap()
    }

    fn idx(g: &CayleyGroup, names: &[&str]) -> Vec<usize> {
        let mut v: Vec<usize> = names.iter().map(|n| g.index_of(n).unwrap()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn quaternion_relations() {
        let g = q8();
        let i = g.index_of("i").unwrap();
        let j = g.index_of("j").unwrap();
        let k = g.index_of("k").unwrap();
        let m1 = g.index_of("-1").unwrap();
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), g.index_of("-k").unwrap());
        assert_eq!(g.mul(i, i), m1);
        assert_eq!(g.mul(k, k), m1);
        assert_eq!(g.mul(m1, m1), g.identity());
        let involutions = (0..8)
            .filter(|&x| x != g.identity() && g.mul(x, x) == g.identity())
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn catalog_names() {
        assert_eq!(CayleyGroup::from_catalog("Z(1)").unwrap().order(), 1);
        assert_eq!(CayleyGroup::from_catalog("trivial").unwrap().order(), 1);
        let v = CayleyGroup::from_catalog("Z2xZ2").unwrap();
        assert_eq!(v.order_profile(), vec![(1, 1), (2, 3)]);
        assert_eq!(CayleyGroup::from_catalog("Z(6)").unwrap().order(), 6);
        let p = CayleyGroup::from_catalog("Z2xZ2xZ2").unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.is_abelian());
        assert_eq!(CayleyGroup::from_catalog("Z(4)xQ8").unwrap().order(), 32);
        assert_eq!(
            CayleyGroup::from_catalog("Q9").unwrap_err().kind,
            crate::error::ErrorKind::NotFound
        );
        assert!(CayleyGroup::from_catalog("Z(0)").is_err());
    }

    #[test]
    fn centers() {
        let g = q8();
        assert_eq!(g.center().elements(), idx(&g, &["1", "-1"]).as_slice());
        let v = CayleyGroup::klein();
        assert!(v.center().is_whole(&v));
        let t = CayleyGroup::trivial();
        assert!(t.center().is_whole(&t));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(q8().abelianization(), FgAbelian::canonical_form(0, &[2, 2]).unwrap());
        assert_eq!(CayleyGroup::cyclic(6).abelianization(), FgAbelian::cyclic(6));
        assert_eq!(
            CayleyGroup::klein().abelianization(),
            FgAbelian::canonical_form(0, &[2, 2]).unwrap()
        );
        assert_eq!(
            CayleyGroup::dihedral4().abelianization(),
            FgAbelian::canonical_form(0, &[2, 2]).unwrap()
        );
        let z2z4 = CayleyGroup::from_catalog("Z2xZ4").unwrap();
        assert_eq!(z2z4.abelianization(), FgAbelian::canonical_form(0, &[2, 4]).unwrap());
        assert!(CayleyGroup::trivial().abelianization().is_trivial());
    }

    #[test]
    fn quotients() {
        let g = q8();
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_isomorphic(&CayleyGroup::klein()).unwrap());
        let same = g.quotient(&g.trivial_subgroup()).unwrap();
        assert!(same.is_isomorphic(&g).unwrap());
        assert_eq!(g.quotient(&g.whole()).unwrap().order(), 1);
        // <s> is not normal in D4
        let d = CayleyGroup::dihedral4();
        let s = d.subgroup_generated(&[d.index_of("s").unwrap()]);
        assert_eq!(d.quotient(&s).unwrap_err().kind, crate::error::ErrorKind::InvalidInput);
    }

    #[test]
    fn isomorphism_negatives() {
        let g = q8();
        assert!(!g.is_isomorphic(&CayleyGroup::from_catalog("Z2xZ2xZ2").unwrap()).unwrap());
        assert!(!g.is_isomorphic(&CayleyGroup::dihedral4()).unwrap());
        assert!(g.is_isomorphic(&g).unwrap());
        let d = CayleyGroup::dihedral4();
        assert_eq!(d.order_profile(), vec![(1, 1), (2, 5), (4, 2)]);
        let big = CayleyGroup::cyclic(65);
        assert_eq!(big.is_isomorphic(&big).unwrap_err().kind, crate::error::ErrorKind::Unsupported);
    }

    #[test]
    fn isomorphism_between_presentations() {
        // Z6 and Z2xZ3 have different element names but are isomorphic
        let a = CayleyGroup::cyclic(6);
        let b = CayleyGroup::from_catalog("Z2xZ3").unwrap();
        let f = a.find_isomorphism(&b).unwrap().unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(f[a.mul(x, y)], b.mul(f[x], f[y]));
            }
        }
    }

    #[test]
    fn generated_subgroups() {
        let g = q8();
        let s = g.subgroup_generated(&[g.index_of("i").unwrap()]);
        assert_eq!(s.elements(), idx(&g, &["1", "i", "-1", "-i"]).as_slice());
        assert!(g.subgroup_generated(&[]).is_trivial());
        assert!(g.subgroup_generated(&(0..8).collect::<Vec<_>>()).is_whole(&g));
    }

    #[test]
    fn abelian_flags() {
        assert!(!q8().is_abelian());
        assert!(CayleyGroup::cyclic(4).is_abelian());
        assert!(CayleyGroup::trivial().is_abelian());
    }

    #[test]
    fn table_validation() {
        let names = vec!["e".to_string(), "a".to_string()];
        assert!(CayleyGroup::from_table("bad", names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(CayleyGroup::from_table("ok", names, vec![vec![0, 1], vec![1, 0]]).is_ok());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names: Vec<String> = (0..5).map(|i| alloc::format!("x{i}")).collect();
        assert!(CayleyGroup::from_table("loop", names, loop5).is_err());
    }

    #[test]
    fn inner_automorphisms() {
        let g = q8();
        let i = g.index_of("i").unwrap();
        let conj: Vec<usize> = (0..8).map(|x| g.conjugate(i, x)).collect();
        assert!(g.is_automorphism(&conj));
        assert!(g.inner_witness(&conj).is_some());
        // swapping i and j (with signs) is an outer automorphism of Q8
        fn swap(n: &str) -> &str {
            match n {
            "i" => "j",
            "-i" => "-j",
            "j" => "i",
            "-j" => "-i",
            "k" => "-k",
            "-k" => "k",
            other => other,
            }
        }
        let outer: Vec<usize> = (0..8).map(|x| g.index_of(swap(g.name(x))).unwrap()).collect();
        assert!(g.is_automorphism(&outer));
        assert!(g.inner_witness(&outer).is_none());
    }
}
