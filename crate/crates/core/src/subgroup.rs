//! Subgroups of a table group and their enumeration.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Source};
use std::collections::{HashMap, HashSet};

/// A subgroup of some parent [`Group`]: member bitset plus generators.
/// The parent is not stored; every operation takes it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElemSet,
    gens: Vec<Elem>,
}

impl Subgroup {
    pub fn generated(g: &Group, gens: &[Elem]) -> Self {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&x| x != 0).collect();
        Subgroup {
            members: g.closure(&gens),
            gens,
        }
    }

    /// Wraps a member set that is already known to be a subgroup.
    pub fn from_members(g: &Group, members: ElemSet) -> Self {
        let gens = generators_of(g, &members);
        Subgroup { members, gens }
    }

    pub fn trivial(g: &Group) -> Self {
        Subgroup {
            members: ElemSet::from_iter(g.order(), [0]),
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &Group) -> Self {
        Subgroup {
            members: ElemSet::full(g.order()),
            gens: g.gen_elems(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn intersect(&self, g: &Group, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(g, self.members.intersection(&other.members))
    }

    /// The subgroup generated by both.
    pub fn join(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&x| !self.contains(x)));
        Subgroup::generated(g, &gens)
    }

    /// `x^-1 S x`.
    pub fn conjugate(&self, g: &Group, x: Elem) -> Subgroup {
        Subgroup {
            members: ElemSet::from_iter(g.order(), self.members.iter().map(|s| g.conj(s, x))),
            gens: self.gens.iter().map(|&s| g.conj(s, x)).collect(),
        }
    }

    pub fn is_normal(&self, g: &Group) -> bool {
        g.gen_elems()
            .iter()
            .all(|&x| self.gens.iter().all(|&s| self.contains(g.conj(s, x))))
    }

    /// The subgroup as a group in its own right, with the embedding into
    /// the parent (element `i` of the result maps to `embed[i]`).
    pub fn to_group(&self, g: &Group) -> (Group, Vec<Elem>) {
        let embed: Vec<Elem> = self.members.iter().collect();
        let mut index = HashMap::with_capacity(embed.len());
        for (i, &x) in embed.iter().enumerate() {
            index.insert(x, i);
        }
        let n = embed.len();
        let mut table = vec![0u16; n * n];
        for (i, &x) in embed.iter().enumerate() {
            for (j, &y) in embed.iter().enumerate() {
                table[i * n + j] = index[&g.mul(x, y)] as u16;
            }
        }
        let gens = self
            .gens
            .iter()
            .enumerate()
            .map(|(k, x)| (format!("s{}", k + 1), index[x]))
            .collect();
        let h = Group::from_table(n, table, Source::Construction, gens, format!("sub{n}"))
            .expect("subgroup table is a group");
        (h, embed)
    }
}

/// Greedy generators for a subgroup given by its members.
fn generators_of(g: &Group, members: &ElemSet) -> Vec<Elem> {
    let mut elems: Vec<Elem> = members.iter().collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.elt_order(x)), x));
    let mut gens = Vec::new();
    let mut span = ElemSet::from_iter(g.order(), [0]);
    let target = members.len();
    for x in elems {
        if span.len() == target {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &Group, gens: &[Elem]) -> Subgroup {
    let ggens = g.gen_elems();
    let mut h = Subgroup::generated(g, gens);
    loop {
        let extra: Vec<Elem> = h
            .gens
            .iter()
            .flat_map(|&s| ggens.iter().map(move |&x| (s, x)))
            .map(|(s, x)| g.conj(s, x))
            .filter(|&y| !h.contains(y))
            .collect();
        if extra.is_empty() {
            return h;
        }
        let mut gs = h.gens.clone();
        gs.push(extra[0]);
        h = Subgroup::generated(g, &gs);
    }
}

/// `[A, B]` for subgroups with at least one of them normal, generated as
/// the normal closure of commutators of generators.
pub fn commutator(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let comms: Vec<Elem> = a
        .gens
        .iter()
        .flat_map(|&x| b.gens.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.comm(x, y))
        .filter(|&c| c != 0)
        .collect();
    // closure under conjugation by both A and B
    let mut h = Subgroup::generated(g, &comms);
    loop {
        let conj_by: Vec<Elem> = a.gens.iter().chain(&b.gens).copied().collect();
        let extra = h
            .gens
            .iter()
            .flat_map(|&s| conj_by.iter().map(move |&x| (s, x)))
            .map(|(s, x)| g.conj(s, x))
            .find(|&y| !h.contains(y));
        match extra {
            None => return h,
            Some(y) => {
                let mut gs = h.gens.clone();
                gs.push(y);
                h = Subgroup::generated(g, &gs);
            }
        }
    }
}

pub fn centralizer(g: &Group, s: &Subgroup) -> Subgroup {
    let members = ElemSet::from_iter(
        g.order(),
        g.elements().filter(|&x| s.gens.iter().all(|&y| g.commute(x, y))),
    );
    Subgroup::from_members(g, members)
}

pub fn normalizer(g: &Group, s: &Subgroup) -> Subgroup {
    let members = ElemSet::from_iter(
        g.order(),
        g.elements()
            .filter(|&x| s.gens.iter().all(|&y| s.contains(g.conj(y, x)))),
    );
    Subgroup::from_members(g, members)
}

/// Conjugacy classes of elements, each sorted, ordered by least element.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<Elem>> {
    let gens = g.gen_elems();
    let mut seen = ElemSet::empty(g.order());
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x);
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            i += 1;
            for &h in &gens {
                let z = g.conj(y, h);
                if seen.insert(z) {
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// A conjugacy class of subgroups: a canonical representative (least
/// member set) and all members of the class.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Every subgroup of a p-group, built layer by layer: each subgroup of
/// order `p^(i+1)` is `<M, x>` for some subgroup `M` of order `p^i`
/// normalized by `x` with `x^p` in `M`.
pub fn all_subgroups_flat(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration",
            order: g.order(),
            cap,
        });
    }
    let p = g
        .prime()
        .ok_or_else(|| Error::Precondition("subgroup enumeration needs a p-group".into()))?
        as i64;
    let mut all = vec![Subgroup::trivial(g)];
    let mut layer = vec![Subgroup::trivial(g)];
    while !layer.is_empty() {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut next = Vec::new();
        for m in &layer {
            for x in g.elements() {
                if m.contains(x) || !m.contains(g.pow(x, p)) {
                    continue;
                }
                if !m.gens.iter().all(|&y| m.contains(g.conj(y, x))) {
                    continue;
                }
                // <M, x> = M ∪ Mx ∪ ... ∪ Mx^(p-1)
                let mut members = m.members.clone();
                let mut xk = 0;
                for _ in 1..p {
                    xk = g.mul(xk, x);
                    for y in m.members.iter() {
                        members.insert(g.mul(y, xk));
                    }
                }
                if seen.insert(members.clone()) {
                    let mut gens = m.gens.clone();
                    gens.push(x);
                    next.push(Subgroup { members, gens });
                }
            }
        }
        next.sort_by(|a, b| a.members.cmp(&b.members));
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

/// Subgroups of a p-group grouped into conjugacy classes, ordered by
/// subgroup order and then by representative.
pub fn all_subgroups(g: &Group, cap: usize) -> Result<Vec<SubgroupClass>> {
    let flat = all_subgroups_flat(g, cap)?;
    let gens = g.gen_elems();
    let mut done: HashSet<ElemSet> = HashSet::new();
    let mut classes = Vec::new();
    for s in flat {
        if done.contains(&s.members) {
            continue;
        }
        let mut members = vec![s.clone()];
        done.insert(s.members.clone());
        let mut i = 0;
        while i < members.len() {
            let cur = members[i].clone();
            i += 1;
            for &x in &gens {
                let c = cur.conjugate(g, x);
                if done.insert(c.members.clone()) {
                    members.push(c);
                }
            }
        }
        members.sort_by(|a, b| a.members.cmp(&b.members));
        classes.push(SubgroupClass {
            rep: members[0].clone(),
            members,
        });
    }
    classes.sort_by(|a, b| {
        (a.rep.order(), &a.rep.members).cmp(&(b.rep.order(), &b.rep.members))
    });
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{collect, PcPresentation, Word};

    fn dihedral(n: u32) -> Group {
        let mut p = PcPresentation::new("D");
        let t = p.gen("t", 2);
        let r = p.gen("r", 1 << (n - 1));
        p.conj(r, t, Word::gen(r, -1));
        collect(&p, 4096).unwrap()
    }

    #[test]
    fn klein_four_subgroups() {
        let v4 = Group::direct_product(&crate::group::cyclic(2), &crate::group::cyclic(2), 64).unwrap();
        let classes = all_subgroups(&v4, 64).unwrap();
        let sizes: Vec<(usize, usize)> = classes.iter().map(|c| (c.rep.order(), c.size())).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 1), (2, 1), (2, 1), (4, 1)]);
    }

    #[test]
    fn d8_subgroup_count() {
        // D8 has 10 subgroups in 8 classes
        let d8 = dihedral(3);
        let flat = all_subgroups_flat(&d8, 64).unwrap();
        assert_eq!(flat.len(), 10);
        assert_eq!(all_subgroups(&d8, 64).unwrap().len(), 8);
    }

    #[test]
    fn normalizer_and_centralizer_of_reflection() {
        let d8 = dihedral(3);
        let t = d8.gen("t").unwrap();
        let s = Subgroup::generated(&d8, &[t]);
        assert_eq!(centralizer(&d8, &s).order(), 4);
        assert_eq!(normalizer(&d8, &s).order(), 4);
        assert!(!s.is_normal(&d8));
    }

    #[test]
    fn to_group_round_trip() {
        let d16 = dihedral(4);
        let r = d16.gen("r").unwrap();
        let s = Subgroup::generated(&d16, &[r]);
        let (h, embed) = s.to_group(&d16);
        assert_eq!(h.order(), 8);
        assert!(h.is_abelian());
        for x in h.elements() {
            for y in h.elements() {
                assert_eq!(embed[h.mul(x, y)], d16.mul(embed[x], embed[y]));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = dihedral(7);
        assert!(matches!(all_subgroups(&d, 64), Err(Error::CapExceeded { .. })));
    }
}
