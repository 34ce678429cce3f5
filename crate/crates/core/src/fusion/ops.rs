use super::maps::{PMap, UNDEF};
use super::{EssentialData, FusionSystem, Lattice};
use crate::caps::Caps;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::invariants::center;
use crate::subgroup::Subgroup;
use std::collections::VecDeque;
use std::sync::Arc;

/// `Z(F)`: the central elements that no morphism of `F` moves.
pub fn fusion_center(f: &FusionSystem) -> Subgroup {
    let g = f.base();
    let c = f.generate();
    let z = center(g);
    let fixed: Vec<usize> = z
        .elements()
        .into_iter()
        .filter(|&x| c.elem_class.iter().filter(|&&r| r == c.elem_class[x]).count() == 1)
        .collect();
    Subgroup::generated(g, &fixed)
}

/// Whether no morphism of `F` maps an element of `z` outside `z`.
pub fn is_strongly_closed(f: &FusionSystem, z: &Subgroup) -> bool {
    let c = f.generate();
    (0..c.elem_class.len()).all(|x| !z.contains(c.elem_class[x]) || z.contains(x))
        && z.elements().iter().all(|&x| z.contains(c.elem_class[x]))
}

/// Lattice indices of all strongly closed subgroups.
pub fn strongly_closed_subgroups(f: &FusionSystem) -> Vec<usize> {
    let lat = f.lattice();
    (0..lat.len()).filter(|&s| is_strongly_closed(f, &lat.subs[s])).collect()
}

/// Whether `q` has a central series of strongly closed subgroups,
/// `1 = Q0 < ... < Qn = Q` with `[Q_i, Q] <= Q_(i-1)`. For strongly closed
/// `q` this decides whether `F` is the normalizer of `q`. Returns false when
/// `q` is not strongly closed.
pub fn resistance_check(f: &FusionSystem, q: &Subgroup) -> bool {
    if !is_strongly_closed(f, q) {
        return false;
    }
    let lat = f.lattice();
    let g = &lat.group;
    let closed: Vec<usize> = strongly_closed_subgroups(f)
        .into_iter()
        .filter(|&s| lat.subs[s].is_subgroup_of(q))
        .collect();
    let target = lat.index_of(q);
    let mut seen = vec![false; lat.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(s) = queue.pop_front() {
        if s == target {
            return true;
        }
        let below = &lat.subs[s];
        for &t in &closed {
            if seen[t] || lat.subs[t].order() <= below.order() || !below.is_subgroup_of(&lat.subs[t]) {
                continue;
            }
            let central = lat.subs[t]
                .gens()
                .iter()
                .all(|&x| q.gens().iter().all(|&y| below.contains(g.comm(x, y))));
            if central {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    false
}

/// The system induced on `P/Z` for `Z <= Z(F)`.
pub fn quotient_fusion(f: &FusionSystem, z: &Subgroup, caps: &Caps) -> Result<FusionSystem> {
    let zf = fusion_center(f);
    if !z.is_subgroup_of(&zf) {
        return Err(Error::NotCentralInF);
    }
    let g = f.base();
    let (qg, proj) = g.quotient(z.members())?;
    let lat = Arc::new(Lattice::new(&qg, caps)?);
    let m = qg.order();
    let push = |a: &PMap| -> PMap {
        let mut out = vec![UNDEF; m];
        for (x, &y) in a.iter().enumerate() {
            if y != UNDEF {
                out[proj[x]] = proj[y as usize] as u16;
            }
        }
        out
    };
    let extra: Vec<PMap> = f.aut_p_generators().iter().map(&push).collect();
    let mut essentials = Vec::new();
    for e in f.essential_data() {
        let s = &f.lattice().subs[e.subgroup];
        let image = ElemSet::from_iter(m, s.members().iter().map(|x| proj[x]));
        let sub = lat.find(&image).expect("image subgroup");
        essentials.push(EssentialData {
            subgroup: sub,
            automizer: e.automizer.iter().map(&push).collect(),
        });
    }
    Ok(FusionSystem::from_parts(lat, extra, essentials))
}
