//! Saturated fusion systems on small p-groups, stored by their generating
//! automizer data and closed up on demand.

mod enumerate;
mod essentials;
pub mod maps;
mod ops;
mod saturation;

pub use enumerate::{
    enumerate_saturated, identify_base, iso_tag, realizing_label, summarize, EssentialSummary, FusionSummary,
};
pub use essentials::{essential_candidates, essential_classes, EssentialCandidate};
pub use maps::{MapGroup, PMap, UNDEF};
pub use ops::{fusion_center, is_strongly_closed, quotient_fusion, resistance_check, strongly_closed_subgroups};
pub use saturation::{is_saturated, ClassCheck, Failure, SaturationVerdict};

use crate::autos::Automorphism;
use crate::caps::Caps;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::subgroup::{all_subgroups_flat, centralizer, normalizer, Subgroup};
use maps::{compose, conjugation_on, identity_on, invert};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Every subgroup of the base group with normalizers and centralizers.
#[derive(Debug)]
pub struct Lattice {
    pub group: Group,
    pub subs: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    pub normalizers: Vec<usize>,
    pub centralizers: Vec<usize>,
}

impl Lattice {
    pub fn new(g: &Group, caps: &Caps) -> Result<Self> {
        if g.order() > caps.fusion {
            return Err(Error::CapExceeded {
                what: "fusion system",
                order: g.order(),
                cap: caps.fusion,
            });
        }
        let mut subs = all_subgroups_flat(g, caps.fusion.max(caps.subgroups))?;
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        let index: HashMap<ElemSet, usize> =
            subs.iter().enumerate().map(|(i, s)| (s.members().clone(), i)).collect();
        let normalizers = subs.iter().map(|s| index[normalizer(g, s).members()]).collect();
        let centralizers = subs.iter().map(|s| index[centralizer(g, s).members()]).collect();
        Ok(Lattice {
            group: g.clone(),
            subs,
            index,
            normalizers,
            centralizers,
        })
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn whole(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn find(&self, members: &ElemSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn index_of(&self, s: &Subgroup) -> usize {
        self.index[s.members()]
    }

    pub fn elements(&self, s: usize) -> Vec<Elem> {
        self.subs[s].elements()
    }

    /// Image of subgroup `s` under a map defined on it.
    pub fn image(&self, map: &PMap, s: usize) -> usize {
        let n = self.group.order();
        let set = ElemSet::from_iter(n, self.subs[s].members().iter().map(|x| map[x] as usize));
        self.index[&set]
    }

    /// `Aut_P(S)` restricted to `S`.
    pub fn aut_p(&self, s: usize) -> MapGroup {
        let g = &self.group;
        let dom = self.elements(s);
        let nz = &self.subs[self.normalizers[s]];
        let gens: Vec<PMap> = nz.gens().iter().map(|&h| conjugation_on(g, h, &dom)).collect();
        MapGroup::generated(g.order(), &dom, self.subs[s].gens(), &gens)
    }

    /// `Inn(S)` as maps on `S`.
    pub fn inn(&self, s: usize) -> MapGroup {
        let g = &self.group;
        let dom = self.elements(s);
        let gens: Vec<PMap> = self.subs[s].gens().iter().map(|&h| conjugation_on(g, h, &dom)).collect();
        MapGroup::generated(g.order(), &dom, self.subs[s].gens(), &gens)
    }

    /// Whether every `P`-conjugate of `s` contains its centralizer.
    pub fn is_centric_in_p(&self, s: usize) -> bool {
        self.subs[self.centralizers[s]].is_subgroup_of(&self.subs[s])
    }
}

/// Generating automizer for one essential subgroup.
#[derive(Clone, Debug)]
pub struct EssentialData {
    pub subgroup: usize,
    pub automizer: Vec<PMap>,
}

/// A fusion system on `P` given by `Aut_F(P)` and automizers of essential
/// subgroups.
#[derive(Clone, Debug)]
pub struct FusionSystem {
    lattice: Arc<Lattice>,
    aut_p: Vec<PMap>,
    essentials: Vec<EssentialData>,
    closure: OnceLock<Arc<Closure>>,
}

/// The materialized category: element and subgroup partitions, transporters
/// from each class representative, and the automizer of each representative.
#[derive(Debug)]
pub struct Closure {
    /// Per element, the smallest element of its F-class.
    pub elem_class: Vec<Elem>,
    /// Per subgroup, its F-class and position within it.
    pub class_of: Vec<usize>,
    pub pos_in_class: Vec<usize>,
    pub classes: Vec<FClass>,
}

#[derive(Debug)]
pub struct FClass {
    pub members: Vec<usize>,
    /// `transporters[i]` maps the representative `members[0]` onto `members[i]`.
    pub transporters: Vec<PMap>,
    pub inverse_transporters: Vec<PMap>,
    /// `Aut_F` of the representative.
    pub aut: MapGroup,
}

impl FusionSystem {
    /// `F_P(P)`.
    pub fn trivial_system(p: &Group, caps: &Caps) -> Result<Self> {
        let lattice = Arc::new(Lattice::new(p, caps)?);
        Ok(FusionSystem::from_parts(lattice, Vec::new(), Vec::new()))
    }

    /// A system generated by `Inn(P)`, the given automorphisms of `P`, and
    /// essential automizers. Generating maps must be automorphisms of their
    /// subgroups.
    pub fn from_parts(lattice: Arc<Lattice>, extra_aut: Vec<PMap>, essentials: Vec<EssentialData>) -> Self {
        let g = &lattice.group;
        let all: Vec<Elem> = g.elements().collect();
        let mut aut_p: Vec<PMap> = g.gen_elems().iter().map(|&h| conjugation_on(g, h, &all)).collect();
        aut_p.extend(extra_aut);
        FusionSystem {
            lattice,
            aut_p,
            essentials,
            closure: OnceLock::new(),
        }
    }

    pub fn with_automorphisms(p: &Group, auts: &[Automorphism], caps: &Caps) -> Result<Self> {
        let lattice = Arc::new(Lattice::new(p, caps)?);
        let extra = auts.iter().map(|a| a.perm().to_vec()).collect();
        Ok(FusionSystem::from_parts(lattice, extra, Vec::new()))
    }

    /// A system generated by `Inn(P)` and the full automorphism group of
    /// each listed subgroup.
    pub fn with_full_automizers(p: &Group, subgroups: &[Subgroup], caps: &Caps) -> Result<Self> {
        let lattice = Arc::new(Lattice::new(p, caps)?);
        let mut essentials = Vec::new();
        for s in subgroups {
            let u = lattice.index_of(s);
            let full = essentials::full_automorphisms(&lattice, u, caps)?;
            essentials.push(EssentialData {
                subgroup: u,
                automizer: full.gens.clone(),
            });
        }
        Ok(FusionSystem::from_parts(lattice, Vec::new(), essentials))
    }

    pub fn base(&self) -> &Group {
        &self.lattice.group
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn aut_p_generators(&self) -> &[PMap] {
        &self.aut_p
    }

    pub fn essential_data(&self) -> &[EssentialData] {
        &self.essentials
    }

    /// Materializes the closure (idempotent).
    pub fn generate(&self) -> &Closure {
        self.closure.get_or_init(|| Arc::new(Closure::build(self)))
    }

    /// `Aut_F(P)`.
    pub fn aut_f_p(&self) -> &MapGroup {
        let c = self.generate();
        &c.classes[c.class_of[self.lattice.whole()]].aut
    }

    /// `Aut_F(S)` for any subgroup, as maps on `S`.
    pub fn aut_f(&self, s: usize) -> MapGroup {
        let c = self.generate();
        let cl = &c.classes[c.class_of[s]];
        let i = c.pos_in_class[s];
        if i == 0 {
            return cl.aut.clone();
        }
        let (t, ti) = (&cl.transporters[i], &cl.inverse_transporters[i]);
        let gens: Vec<PMap> = cl.aut.elems.iter().map(|a| compose(&compose(ti, a), t)).collect();
        let n = self.lattice.group.order();
        MapGroup::generated(n, &self.lattice.elements(s), self.lattice.subs[s].gens(), &gens)
    }

    /// Whether an automorphism of subgroup `s` lies in `Aut_F(s)`.
    pub fn contains_aut(&self, s: usize, map: &PMap) -> bool {
        let c = self.generate();
        let cl = &c.classes[c.class_of[s]];
        let i = c.pos_in_class[s];
        if i == 0 {
            return cl.aut.contains(map);
        }
        cl.aut.contains(&compose(&compose(&cl.transporters[i], map), &cl.inverse_transporters[i]))
    }

    /// Restrictions to `from` of all F-morphisms from `from` into `P`, keyed
    /// by images of `from`'s generators.
    pub fn hom_images(&self, from: usize) -> Vec<Vec<u16>> {
        let c = self.generate();
        let cl = &c.classes[c.class_of[from]];
        let ti = &cl.inverse_transporters[c.pos_in_class[from]];
        let gens = self.lattice.subs[from].gens();
        let mut out = Vec::new();
        for a in &cl.aut.elems {
            for t in &cl.transporters {
                out.push(gens.iter().map(|&x| t[a[ti[x] as usize] as usize]).collect());
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of F-classes of nontrivial elements of order 2 (or order p).
    pub fn involution_classes(&self) -> usize {
        let c = self.generate();
        let g = &self.lattice.group;
        let p = g.prime().unwrap_or(2);
        let mut reps: Vec<Elem> = g
            .elements()
            .filter(|&x| g.elt_order(x) == p)
            .map(|x| c.elem_class[x])
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    }

    /// Element classes as sorted lists of elements.
    pub fn element_classes(&self) -> Vec<Vec<Elem>> {
        let c = self.generate();
        let mut by: HashMap<Elem, Vec<Elem>> = HashMap::new();
        for (x, &r) in c.elem_class.iter().enumerate() {
            by.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<Elem>> = by.into_values().collect();
        out.sort();
        out
    }

    /// Number of F-classes of essential subgroups.
    pub fn essential_rank(&self) -> usize {
        essential_classes(self).len()
    }
}

impl Closure {
    fn build(f: &FusionSystem) -> Closure {
        let lat = &f.lattice;
        let g = &lat.group;
        let n = g.order();

        // generating morphisms as (domain, map)
        let whole = lat.whole();
        let mut gens: Vec<(usize, PMap)> = Vec::new();
        for a in &f.aut_p {
            gens.push((whole, a.clone()));
        }
        for e in &f.essentials {
            for a in &e.automizer {
                gens.push((e.subgroup, a.clone()));
            }
        }
        // inverses as well, so that orbits are found by forward search
        let inv: Vec<(usize, PMap)> = gens.iter().map(|(d, a)| (*d, invert(a))).collect();
        gens.extend(inv);

        // element classes: union-find over generator edges
        let mut parent: Vec<Elem> = (0..n).collect();
        fn find(p: &mut [Elem], x: Elem) -> Elem {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (_, a) in &gens {
            for (x, &y) in a.iter().enumerate() {
                if y != UNDEF {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y as usize));
                    if rx != ry {
                        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                        parent[hi] = lo;
                    }
                }
            }
        }
        let elem_class: Vec<Elem> = (0..n).map(|x| find(&mut parent, x)).collect();

        // subgroup classes: search from each unvisited subgroup, applying
        // every generator whose domain contains the current subgroup
        let contained: Vec<Vec<usize>> = (0..lat.len())
            .map(|s| {
                gens.iter()
                    .enumerate()
                    .filter(|(_, (d, _))| lat.subs[s].is_subgroup_of(&lat.subs[*d]))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut class_of = vec![usize::MAX; lat.len()];
        let mut pos_in_class = vec![0; lat.len()];
        let mut classes = Vec::new();
        for start in 0..lat.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let ci = classes.len();
            let dom = lat.elements(start);
            let mut members = vec![start];
            let mut transporters = vec![identity_on(n, &dom)];
            class_of[start] = ci;
            // Schreier generators of Aut_F(start), deduplicated by key
            let mut aut = MapGroup::trivial(n, &dom, lat.subs[start].gens());
            let mut i = 0;
            while i < members.len() {
                let s = members[i];
                let t = transporters[i].clone();
                i += 1;
                for &gi in &contained[s] {
                    let a = &gens[gi].1;
                    let ta = restrict(&compose(&t, a), &dom);
                    let img = lat.image(&ta, start);
                    if class_of[img] == usize::MAX {
                        class_of[img] = ci;
                        pos_in_class[img] = members.len();
                        members.push(img);
                        transporters.push(ta);
                    } else {
                        let back = invert(&transporters[pos_in_class[img]]);
                        let loop_map = compose(&ta, &back);
                        aut.add_generator(restrict(&loop_map, &dom));
                    }
                }
            }
            let inverse_transporters = transporters.iter().map(invert).collect();
            classes.push(FClass {
                members,
                transporters,
                inverse_transporters,
                aut,
            });
        }
        Closure {
            elem_class,
            class_of,
            pos_in_class,
            classes,
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

fn restrict(a: &PMap, dom: &[Elem]) -> PMap {
    let mut out = vec![UNDEF; a.len()];
    for &x in dom {
        out[x] = a[x];
    }
    out
}

#[cfg(test)]
mod tests;
