//! Partial maps on the elements of a base group, and groups of such maps.

use crate::group::{Elem, Group};
use std::collections::HashMap;

/// Value marking elements outside a map's domain.
pub const UNDEF: u16 = u16::MAX;

/// A map defined on part of the base group, stored over all its elements.
pub type PMap = Vec<u16>;

pub fn identity_on(n: usize, dom: &[Elem]) -> PMap {
    let mut m = vec![UNDEF; n];
    for &x in dom {
        m[x] = x as u16;
    }
    m
}

/// First `a`, then `b`, on the domain of `a`.
pub fn compose(a: &PMap, b: &PMap) -> PMap {
    a.iter()
        .map(|&y| if y == UNDEF { UNDEF } else { b[y as usize] })
        .collect()
}

pub fn invert(a: &PMap) -> PMap {
    let mut out = vec![UNDEF; a.len()];
    for (x, &y) in a.iter().enumerate() {
        if y != UNDEF {
            out[y as usize] = x as u16;
        }
    }
    out
}

/// `x -> h^-1 x h` restricted to `dom`.
pub fn conjugation_on(g: &Group, h: Elem, dom: &[Elem]) -> PMap {
    let mut m = vec![UNDEF; g.order()];
    for &x in dom {
        m[x] = g.conj(x, h) as u16;
    }
    m
}

/// `α φ α^-1` for a full automorphism `α` of the base group.
pub fn conjugate_by(phi: &PMap, alpha: &PMap) -> PMap {
    let mut out = vec![UNDEF; phi.len()];
    for (x, &y) in phi.iter().enumerate() {
        if y != UNDEF {
            out[alpha[x] as usize] = alpha[y as usize];
        }
    }
    out
}

pub fn order_of(a: &PMap, dom: &[Elem]) -> u64 {
    let mut cur: PMap = a.clone();
    let mut k = 1u64;
    while !dom.iter().all(|&x| cur[x] as usize == x) {
        cur = compose(&cur, a);
        k += 1;
    }
    k
}

/// A group of automorphisms of one subgroup `S` of the base group, each
/// stored as a [`PMap`] on `S` and keyed by the images of `S`'s generators.
#[derive(Clone, Debug)]
pub struct MapGroup {
    pub dom: Vec<Elem>,
    pub dom_gens: Vec<Elem>,
    pub elems: Vec<PMap>,
    index: HashMap<Vec<u16>, usize>,
    /// Generators found while building, a subset of `elems`.
    pub gens: Vec<PMap>,
}

impl MapGroup {
    pub fn trivial(n: usize, dom: &[Elem], dom_gens: &[Elem]) -> Self {
        let id = identity_on(n, dom);
        let mut g = MapGroup {
            dom: dom.to_vec(),
            dom_gens: dom_gens.to_vec(),
            elems: Vec::new(),
            index: HashMap::new(),
            gens: Vec::new(),
        };
        g.push(id);
        g
    }

    pub fn key(&self, m: &PMap) -> Vec<u16> {
        self.dom_gens.iter().map(|&x| m[x]).collect()
    }

    fn push(&mut self, m: PMap) -> bool {
        let k = self.key(&m);
        if self.index.contains_key(&k) {
            return false;
        }
        self.index.insert(k, self.elems.len());
        self.elems.push(m);
        true
    }

    pub fn contains(&self, m: &PMap) -> bool {
        self.index.contains_key(&self.key(m))
    }

    pub fn contains_key(&self, k: &[u16]) -> bool {
        self.index.contains_key(k)
    }

    pub fn position(&self, m: &PMap) -> Option<usize> {
        self.index.get(&self.key(m)).copied()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Adds a generator and closes up. Returns false if it was already in.
    pub fn add_generator(&mut self, g: PMap) -> bool {
        if self.contains(&g) {
            return false;
        }
        self.gens.push(g);
        let mut i = 0;
        // every old element times every generator, then new elements likewise
        while i < self.elems.len() {
            let e = self.elems[i].clone();
            i += 1;
            for k in 0..self.gens.len() {
                let p = compose(&e, &self.gens[k]);
                self.push(p);
            }
        }
        true
    }

    pub fn generated(n: usize, dom: &[Elem], dom_gens: &[Elem], gens: &[PMap]) -> Self {
        let mut g = MapGroup::trivial(n, dom, dom_gens);
        for x in gens {
            g.add_generator(x.clone());
        }
        g
    }

    pub fn is_subgroup_of(&self, other: &MapGroup) -> bool {
        self.elems.iter().all(|m| other.contains(m))
    }

    pub fn same_as(&self, other: &MapGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Sorted generator-image keys, a canonical fingerprint of the set.
    pub fn sorted_keys(&self) -> Vec<Vec<u16>> {
        let mut ks: Vec<Vec<u16>> = self.index.keys().cloned().collect();
        ks.sort_unstable();
        ks
    }

    /// Elements `a` with `a x a^-1` in `x_group` for every generator `x`
    /// of `x_group`.
    pub fn normalizer_of(&self, x_gens: &[PMap], x_group: &MapGroup) -> Vec<PMap> {
        self.elems
            .iter()
            .filter(|a| {
                let ai = invert(a);
                x_gens.iter().all(|x| {
                    let c = compose(&compose(&ai, x), a);
                    x_group.contains(&c)
                })
            })
            .cloned()
            .collect()
    }
}
