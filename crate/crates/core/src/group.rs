//! Finite groups stored as dense multiplication tables.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use std::fmt;

/// Index of an element inside a [`Group`]'s carrier. The identity is always 0.
pub type Elem = usize;

/// Where a group value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Presentation,
    Product,
    Quotient,
    Corpus,
    Construction,
}

/// An immutable finite group given by its full multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    elt_order: Vec<u32>,
    source: Source,
    gens: Vec<(String, Elem)>,
    label: String,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("source", &self.source)
            .finish()
    }
}

/// Hard limit imposed by the `u16` table entries.
pub const MAX_TABLE_ORDER: usize = 1 << 15;

impl Group {
    /// Builds a group from a row-major table. Validates identity at index 0,
    /// closure and inverses; associativity is checked with [`Group::verify_associative`].
    pub fn from_table(
        order: usize,
        table: Vec<u16>,
        source: Source,
        gens: Vec<(String, Elem)>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if order == 0 || order > MAX_TABLE_ORDER || table.len() != order * order {
            return Err(Error::ConstructionInvalid(format!(
                "table of length {} for order {order}",
                table.len()
            )));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::ConstructionInvalid(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::ConstructionInvalid("table entry out of range".into()));
        }
        let mut inv = vec![u16::MAX; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            match row.iter().position(|&v| v == 0) {
                Some(y) => inv[x] = y as u16,
                None => {
                    return Err(Error::ConstructionInvalid(format!("element {x} has no inverse")))
                }
            }
        }
        let mut elt_order = vec![0u32; order];
        for x in 0..order {
            let mut k = 1u32;
            let mut acc = x;
            while acc != 0 {
                acc = table[acc * order + x] as usize;
                k += 1;
                if k as usize > order {
                    return Err(Error::ConstructionInvalid(format!(
                        "element {x} has no finite order"
                    )));
                }
            }
            elt_order[x] = k;
        }
        let mut g = Group {
            order,
            table,
            inv,
            elt_order,
            source,
            gens,
            label: label.into(),
        };
        if g.gens.is_empty() {
            g.gens = g
                .small_generating_set()
                .into_iter()
                .enumerate()
                .map(|(i, x)| (format!("g{}", i + 1), x))
                .collect();
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    /// Named generators (declaration order).
    pub fn gens(&self) -> &[(String, Elem)] {
        &self.gens
    }

    pub fn gen_elems(&self) -> Vec<Elem> {
        self.gens.iter().map(|(_, x)| *x).collect()
    }

    pub fn gen(&self, name: &str) -> Option<Elem> {
        self.gens.iter().find(|(n, _)| n == name).map(|(_, x)| *x)
    }

    pub fn with_gen_names(mut self, names: &[&str]) -> Self {
        for (g, n) in self.gens.iter_mut().zip(names) {
            g.0 = n.to_string();
        }
        self
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elt_order(&self, a: Elem) -> u32 {
        self.elt_order[a]
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let n = self.elt_order[a] as i64;
        let mut e = e.rem_euclid(n);
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn commute(&self, x: Elem, y: Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.gen_elems();
        g.iter().all(|&a| g.iter().all(|&b| self.commute(a, b)))
    }

    pub fn exponent(&self) -> u64 {
        self.elt_order
            .iter()
            .fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// The prime `p` when the order is a power of `p` (and > 1).
    pub fn prime(&self) -> Option<u32> {
        prime_power_base(self.order as u64).map(|(p, _)| p as u32)
    }

    pub fn is_p_group(&self) -> bool {
        self.prime().is_some()
    }

    /// Subgroup generated by `gens`, as an element set.
    pub fn closure(&self, gens: &[Elem]) -> ElemSet {
        let mut set = ElemSet::from_iter(self.order, [0]);
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// A generating set found greedily in index order.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = ElemSet::from_iter(self.order, [0]);
        // prefer elements of large order so that few are needed
        let mut cand: Vec<Elem> = self.elements().collect();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.elt_order[x]), x));
        for x in cand {
            if span.len() == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Light's associativity test against the generating set; equivalent
    /// to full associativity once the table is closed with identity.
    pub fn verify_associative(&self) -> bool {
        let gens = self.gen_elems();
        let span = self.closure(&gens);
        if span.len() != self.order {
            return false;
        }
        for &g in &gens {
            for x in self.elements() {
                let xg = self.mul(x, g);
                for y in self.elements() {
                    if self.mul(self.mul(y, x), g) != self.mul(y, xg) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn count_of_order(&self, k: u32) -> usize {
        self.elt_order.iter().filter(|&&o| o == k).count()
    }

    /// The trivial group.
    pub fn trivial() -> Group {
        Group::from_table(1, vec![0], Source::Construction, vec![], "1")
            .expect("trivial group is valid")
    }

    /// Direct product with componentwise multiplication; element `(g, h)` has
    /// index `g * |H| + h`.
    pub fn direct_product(g: &Group, h: &Group, cap: usize) -> Result<Group> {
        let n = g.order * h.order;
        if n > cap.min(MAX_TABLE_ORDER) {
            return Err(Error::UnsupportedOrder { order: n, cap });
        }
        let m = h.order;
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            let (a1, a2) = (a / m, a % m);
            for b in 0..n {
                let (b1, b2) = (b / m, b % m);
                table[a * n + b] = (g.mul(a1, b1) * m + h.mul(a2, b2)) as u16;
            }
        }
        let clash = g.gens.iter().any(|(x, _)| h.gens.iter().any(|(y, _)| x == y));
        let mut gens: Vec<(String, Elem)> = Vec::new();
        for (name, x) in &g.gens {
            let name = if clash { format!("{name}1") } else { name.clone() };
            gens.push((name, x * m));
        }
        for (name, y) in &h.gens {
            let name = if clash { format!("{name}2") } else { name.clone() };
            gens.push((name, *y));
        }
        Group::from_table(
            n,
            table,
            Source::Product,
            gens,
            format!("{}x{}", g.label, h.label),
        )
    }

    /// Central product `(G x H) / <(zg, zh)>` over central involutions.
    pub fn central_product(g: &Group, zg: Elem, h: &Group, zh: Elem, cap: usize) -> Result<Group> {
        for (grp, z) in [(g, zg), (h, zh)] {
            let central = grp.gen_elems().iter().all(|&x| grp.commute(x, z));
            if grp.elt_order(z) != 2 || !central {
                return Err(Error::NotCentralInvolution(z));
            }
        }
        let n = g.order * h.order;
        if n / 2 > cap.min(MAX_TABLE_ORDER) {
            return Err(Error::UnsupportedOrder { order: n / 2, cap });
        }
        let prod = Group::direct_product(g, h, usize::MAX)?;
        let z = zg * h.order + zh;
        let nsub = prod.closure(&[z]);
        let (q, _) = prod.quotient(&nsub)?;
        Ok(q.with_source(Source::Product)
            .with_label(format!("{}*{}", g.label, h.label)))
    }

    /// Quotient by a normal subgroup given as an element set. Cosets are
    /// numbered by their least element, so the result is deterministic.
    /// Returns the quotient and the projection (element -> coset index).
    pub fn quotient(&self, n: &ElemSet) -> Result<(Group, Vec<Elem>)> {
        if !n.contains(0) || self.closure(&n.iter().collect::<Vec<_>>()) != *n {
            return Err(Error::NotNormal);
        }
        for &g in &self.gen_elems() {
            if n.iter().any(|x| !n.contains(self.conj(x, g))) {
                return Err(Error::NotNormal);
            }
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if proj[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for y in n.iter() {
                proj[self.mul(x, y)] = id;
            }
        }
        let k = reps.len();
        let mut table = vec![0u16; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * k + j] = proj[self.mul(a, b)] as u16;
            }
        }
        let mut gens = Vec::new();
        for (name, x) in &self.gens {
            if proj[*x] != 0 {
                gens.push((name.clone(), proj[*x]));
            }
        }
        let q = Group::from_table(
            k,
            table,
            Source::Quotient,
            gens,
            format!("{}/N{}", self.label, n.len()),
        )?;
        Ok((q, proj))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The cyclic group of order `n` with generator 1 and `i * j = i + j mod n`.
pub fn cyclic(n: usize) -> Group {
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
    let gens = if n > 1 { vec![("x".to_string(), 1)] } else { vec![] };
    Group::from_table(n, table, Source::Construction, gens, format!("C{n}"))
        .expect("cyclic table is a group")
}

/// `(p, k)` with `n = p^k`, `k >= 1`, when `n` is a prime power.
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut acc = 1;
    while m % p == 0 {
        m /= p;
        acc *= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        let mut t = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = ((a + b) % n) as u16;
            }
        }
        Group::from_table(n, t, Source::Construction, vec![], format!("C{n}")).unwrap()
    }

    #[test]
    fn klein_four_as_product() {
        let c2 = cyclic(2);
        let v = Group::direct_product(&c2, &c2, 4096).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.count_of_order(2), 3);
        assert!(v.verify_associative());
    }

    #[test]
    fn central_product_of_c2s_collapses() {
        let c2 = cyclic(2);
        let g = Group::central_product(&c2, 1, &c2, 1, 4096).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn central_product_rejects_non_involution() {
        let c4 = cyclic(4);
        assert_eq!(
            Group::central_product(&c4, 1, &c4, 2, 4096).unwrap_err(),
            Error::NotCentralInvolution(1)
        );
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let c4 = cyclic(4);
        let g = Group::direct_product(&c4, &c4, 4096).unwrap();
        let omega: Vec<Elem> = g.elements().filter(|&x| g.elt_order(x) <= 2).collect();
        let n = g.closure(&omega);
        let (q, proj) = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.count_of_order(2), 3);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(proj[g.mul(x, y)], q.mul(proj[x], proj[y]));
            }
        }
    }

    #[test]
    fn identity_quotient() {
        let g = cyclic(8);
        let (q, proj) = g.quotient(&g.closure(&[])).unwrap();
        assert_eq!(q.order(), 8);
        assert!(proj.iter().enumerate().all(|(i, &p)| i == p));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(64), Some((2, 6)));
        assert_eq!(prime_power_base(81), Some((3, 4)));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(7), Some((7, 1)));
        assert_eq!(p_part(96, 2), 32);
    }
}
