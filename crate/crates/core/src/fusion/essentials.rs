use super::maps::{compose, conjugate_by, conjugation_on, invert, order_of, MapGroup, PMap, UNDEF};
use super::{FusionSystem, Lattice};
use crate::autos::automorphism_group;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{prime_power_base, Elem};
use std::collections::HashSet;

/// A `P`-class of subgroups that could be essential, with the automizers it
/// could carry in a saturated system.
#[derive(Clone, Debug)]
pub struct EssentialCandidate {
    /// Lattice index of the class representative.
    pub subgroup: usize,
    pub class_size: usize,
    pub aut_order: usize,
    /// `Aut(U)` as maps on `U`.
    pub full: MapGroup,
    /// Subgroups `A` of `Aut(U)` with `Aut_P(U)` Sylow in `A` and
    /// `A/Inn(U)` having a strongly p-embedded subgroup.
    pub automizers: Vec<MapGroup>,
}

/// Representatives of the `P`-classes of proper nontrivial subgroups.
pub(crate) fn p_class_reps(lat: &Lattice) -> Vec<(usize, usize)> {
    let g = &lat.group;
    let gens = g.gen_elems();
    let mut seen = vec![false; lat.len()];
    let mut out = Vec::new();
    for s in 0..lat.len() {
        if seen[s] {
            continue;
        }
        let mut class = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < class.len() {
            let cur = class[i];
            i += 1;
            for &h in &gens {
                let c = lat.index_of(&lat.subs[cur].conjugate(g, h));
                if !seen[c] {
                    seen[c] = true;
                    class.push(c);
                }
            }
        }
        out.push((s, class.len()));
    }
    out
}

/// Whether `A/Inn(U)` has a strongly p-embedded subgroup, tested through the
/// overgroups `U < Q <= N_P(U)`, whose automizers are the nontrivial
/// p-subgroups of the Sylow subgroup `Aut_P(U)/Inn(U)`.
pub(crate) fn has_strongly_embedded(lat: &Lattice, u: usize, a: &MapGroup) -> bool {
    let g = &lat.group;
    let n = g.order();
    let dom = lat.elements(u);
    let usub = &lat.subs[u];
    let nu = &lat.subs[lat.normalizers[u]];
    if nu.order() == usub.order() {
        return false;
    }
    let mut m = lat.inn(u);
    for qs in &lat.subs {
        if qs.order() <= usub.order() || !usub.is_subgroup_of(qs) || !qs.is_subgroup_of(nu) {
            continue;
        }
        let x_gens: Vec<PMap> = qs.gens().iter().map(|&h| conjugation_on(g, h, &dom)).collect();
        let x = MapGroup::generated(n, &dom, usub.gens(), &x_gens);
        for b in a.normalizer_of(&x_gens, &x) {
            m.add_generator(b);
        }
        if m.order() == a.order() {
            return false;
        }
    }
    m.order() < a.order()
}

/// `Aut(U)` for a lattice member, as maps on `U`.
pub(crate) fn full_automorphisms(lat: &Lattice, u: usize, caps: &Caps) -> Result<MapGroup> {
    let g = &lat.group;
    let n = g.order();
    let s = &lat.subs[u];
    let (ug, embed) = s.to_group(g);
    let aut = automorphism_group(&ug, caps)?;
    let dom = lat.elements(u);
    let mut full = MapGroup::trivial(n, &dom, s.gens());
    for m in &aut.gens {
        let mut pm = vec![UNDEF; n];
        for (i, &x) in embed.iter().enumerate() {
            pm[x] = embed[m.apply(i)] as u16;
        }
        full.add_generator(pm);
    }
    debug_assert_eq!(full.order() as u64, aut.order);
    Ok(full)
}

/// Elements of `full` of order prime to `p`, one for each class of the
/// relation "generates the same group together with `base`", computed from
/// the cosets `x base` of the cyclic subgroup generated by `x`.
pub(crate) fn p_prime_elements(base: &MapGroup, full: &MapGroup, p: u64) -> Vec<PMap> {
    let mut coset = vec![usize::MAX; full.order()];
    let mut next = 0;
    for i in 0..full.order() {
        if coset[i] != usize::MAX {
            continue;
        }
        for t in &base.elems {
            let j = full.position(&compose(&full.elems[i], t)).expect("closed group");
            coset[j] = next;
        }
        next += 1;
    }
    let mut seen: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();
    for x in &full.elems {
        let k = order_of(x, &full.dom);
        if k == 1 || k % p == 0 {
            continue;
        }
        let mut key = usize::MAX;
        let mut xe = x.clone();
        for e in 1..k {
            if crate::group::gcd(e, k) == 1 {
                key = key.min(coset[full.position(&xe).expect("closed group")]);
            }
            xe = compose(&xe, x);
        }
        if seen.insert(key) {
            out.push(x.clone());
        }
    }
    out
}

/// Overgroups of `base` inside `full` obtained by adjoining p'-elements and
/// keeping `base` as a Sylow p-subgroup.
pub(crate) fn p_prime_extensions(base: &MapGroup, full: &MapGroup, p: u64) -> Vec<MapGroup> {
    let odd = p_prime_elements(base, full, p);
    let target = base.order();
    let mut seen: HashSet<Vec<Vec<u16>>> = HashSet::from([base.sorted_keys()]);
    let mut out = vec![base.clone()];
    let mut i = 0;
    while i < out.len() {
        let a = out[i].clone();
        i += 1;
        for x in &odd {
            if a.contains(x) {
                continue;
            }
            let mut b = a.clone();
            b.add_generator(x.clone());
            if crate::group::p_part(b.order() as u64, p) != target as u64 {
                continue;
            }
            if seen.insert(b.sorted_keys()) {
                out.push(b);
            }
        }
    }
    out
}

/// Overgroups of a normal subgroup `base` of `full` in which `base` has
/// p'-index, one from each conjugacy class under `full`. Each is reached by
/// a chain adjoining one element normalizing the previous group, as
/// p'-quotients here are solvable.
pub(crate) fn p_prime_overgroups_of_normal(base: &MapGroup, full: &MapGroup, p: u64) -> Vec<MapGroup> {
    let odd = p_prime_elements(base, full, p);
    let mut reps = vec![base.clone()];
    let mut seen: HashSet<Vec<Vec<u16>>> = HashSet::from([base.sorted_keys()]);
    let mut i = 0;
    while i < reps.len() {
        let a = reps[i].clone();
        i += 1;
        for x in &odd {
            if a.contains(x) {
                continue;
            }
            let xi = invert(x);
            let normalizes = a.gens.iter().all(|g| a.contains(&compose(&compose(&xi, g), x)));
            if !normalizes {
                continue;
            }
            let mut b = a.clone();
            b.add_generator(x.clone());
            if !seen.insert(b.sorted_keys()) {
                continue;
            }
            if !reps.iter().any(|r| conjugate_groups(full, &b, r)) {
                reps.push(b);
            }
        }
    }
    reps
}

/// Whether some element of `full` conjugates `a` into `b`.
pub(crate) fn conjugate_groups(full: &MapGroup, a: &MapGroup, b: &MapGroup) -> bool {
    a.order() == b.order()
        && full
            .elems
            .iter()
            .any(|beta| a.gens.iter().all(|x| b.contains(&conjugate_by(x, beta))))
}

pub(crate) fn candidates_in(lat: &Lattice, caps: &Caps) -> Result<Vec<EssentialCandidate>> {
    let p = lat.group.prime().unwrap_or(2) as u64;
    let whole = lat.whole();
    let mut out = Vec::new();
    for (u, size) in p_class_reps(lat) {
        if u == 0 || u == whole || !lat.is_centric_in_p(u) {
            continue;
        }
        let full = full_automorphisms(lat, u, caps)?;
        let order = full.order();
        if order == 1 || prime_power_base(order as u64).is_some_and(|(q, _)| q == p) {
            continue;
        }
        let t = lat.aut_p(u);
        let automizers: Vec<MapGroup> = p_prime_extensions(&t, &full, p)
            .into_iter()
            .filter(|a| a.order() > t.order() && has_strongly_embedded(lat, u, a))
            .collect();
        if automizers.is_empty() {
            continue;
        }
        out.push(EssentialCandidate {
            subgroup: u,
            class_size: size,
            aut_order: order,
            full,
            automizers,
        });
    }
    Ok(out)
}

/// Candidate essential classes of a p-group: centric, with `Aut(U)` not a
/// p-group and at least one admissible automizer.
pub fn essential_candidates(p: &crate::group::Group, caps: &Caps) -> Result<Vec<EssentialCandidate>> {
    let lat = Lattice::new(p, caps)?;
    candidates_in(&lat, caps)
}

/// F-essential classes, each with a fully normalized member.
pub fn essential_classes(f: &FusionSystem) -> Vec<(usize, usize)> {
    let lat = f.lattice();
    let c = f.generate();
    let whole = lat.whole();
    let mut out = Vec::new();
    for (ci, cl) in c.classes.iter().enumerate() {
        let rep = cl.members[0];
        if rep == 0 || rep == whole {
            continue;
        }
        if !cl.members.iter().all(|&s| lat.is_centric_in_p(s)) {
            continue;
        }
        let u = fully_normalized(lat, &cl.members);
        let a = f.aut_f(u);
        if has_strongly_embedded(lat, u, &a) {
            out.push((ci, u));
        }
    }
    out
}

/// First member with the largest normalizer.
pub(crate) fn fully_normalized(lat: &Lattice, members: &[usize]) -> usize {
    let mut best = members[0];
    for &s in members {
        if lat.subs[lat.normalizers[s]].order() > lat.subs[lat.normalizers[best]].order() {
            best = s;
        }
    }
    best
}

/// Restriction to `U` of the elements of a group of automorphisms of `P`
/// that leave `U` invariant.
pub(crate) fn stabilizer_restrictions(lat: &Lattice, grp: &MapGroup, u: usize) -> Vec<PMap> {
    let dom: Vec<Elem> = lat.elements(u);
    grp.elems
        .iter()
        .filter(|a| lat.image(a, u) == u)
        .map(|a| {
            let mut m = vec![UNDEF; a.len()];
            for &x in &dom {
                m[x] = a[x];
            }
            m
        })
        .collect()
}
