use super::essentials::{
    candidates_in, essential_classes, full_automorphisms, p_prime_overgroups_of_normal, stabilizer_restrictions,
};
use super::maps::{conjugate_by, MapGroup};
use super::ops::fusion_center;
use super::saturation::is_saturated;
use super::{EssentialData, FusionSystem, Lattice};
use crate::autos::is_isomorphic;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::families::{build, catalogue, Family, FamilySpec};
use crate::group::Group;
use crate::invariants::{abelian_invariants, fingerprint};
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

/// Every saturated fusion system on `p` up to conjugation by `Aut(P)`.
///
/// Candidates are `Aut_F(P)` between `Inn(P)` and an overgroup of odd index,
/// together with an optional admissible automizer for each candidate
/// essential class. Each candidate is closed up and checked, and survivors
/// are reduced to one per `Aut(P)`-orbit.
pub fn enumerate_saturated(p: &Group, caps: &Caps) -> Result<Vec<FusionSystem>> {
    let lat = Arc::new(Lattice::new(p, caps)?);
    let prime = p.prime().unwrap_or(2) as u64;
    let whole = lat.whole();
    let full = full_automorphisms(&lat, whole, caps)?;
    let inn = lat.inn(whole);
    let aut_choices = p_prime_overgroups_of_normal(&inn, &full, prime);
    let candidates = candidates_in(&lat, caps)?;

    let mut combos: Vec<(usize, Vec<Option<usize>>)> = Vec::new();
    for (ai, ap) in aut_choices.iter().enumerate() {
        let options: Vec<Vec<Option<usize>>> = candidates
            .iter()
            .map(|c| {
                let stab = stabilizer_restrictions(&lat, ap, c.subgroup);
                let mut opts = vec![None];
                for (k, a) in c.automizers.iter().enumerate() {
                    if stab.iter().all(|m| a.contains(m)) {
                        opts.push(Some(k));
                    }
                }
                opts
            })
            .collect();
        let mut partial: Vec<Vec<Option<usize>>> = vec![Vec::new()];
        for opts in &options {
            let mut next = Vec::with_capacity(partial.len() * opts.len());
            for pre in &partial {
                for &o in opts {
                    let mut v = pre.clone();
                    v.push(o);
                    next.push(v);
                }
            }
            partial = next;
            if partial.len() as u64 > caps.budget {
                return Err(Error::BudgetExhausted { budget: caps.budget });
            }
        }
        combos.extend(partial.into_iter().map(|v| (ai, v)));
    }

    let survivors: Vec<FusionSystem> = combos
        .par_iter()
        .filter_map(|(ai, choice)| {
            let essentials = choice
                .iter()
                .zip(&candidates)
                .filter_map(|(o, c)| {
                    o.map(|k| EssentialData {
                        subgroup: c.subgroup,
                        automizer: c.automizers[k].gens.clone(),
                    })
                })
                .collect();
            let f = FusionSystem::from_parts(lat.clone(), aut_choices[*ai].gens.clone(), essentials);
            is_saturated(&f).saturated.then_some(f)
        })
        .collect();

    let mut kept: Vec<(Key, FusionSystem)> = Vec::new();
    for f in survivors {
        let key = Key::of(&f);
        if kept.iter().any(|(k, g)| *k == key && equivalent(&full, &f, g)) {
            continue;
        }
        kept.push((key, f));
    }
    kept.sort_by_key(|(k, _)| (k.rank, k.aut_order));
    Ok(kept.into_iter().map(|(_, f)| f).collect())
}

/// Cheap invariants that must agree between conjugate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Key {
    rank: usize,
    aut_order: usize,
    classes: usize,
    elem_class_sizes: Vec<usize>,
}

impl Key {
    fn of(f: &FusionSystem) -> Key {
        let mut sizes: Vec<usize> = f.element_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        Key {
            rank: f.essential_rank(),
            aut_order: f.aut_f_p().order(),
            classes: f.generate().class_count(),
            elem_class_sizes: sizes,
        }
    }
}

/// Whether some automorphism of `P` carries `f` onto `g`: it must send the
/// generators of `f` into `g`, and then equal class counts and automizer
/// orders force equality.
fn equivalent(full: &MapGroup, f: &FusionSystem, g: &FusionSystem) -> bool {
    let lat = f.lattice();
    let whole = lat.whole();
    let cf = f.generate();
    let cg = g.generate();
    if cf.class_count() != cg.class_count() {
        return false;
    }
    full.elems.iter().any(|beta| {
        let gens_ok = f.aut_p_generators().iter().all(|a| g.contains_aut(whole, &conjugate_by(a, beta)))
            && f.essential_data().iter().all(|e| {
                let v = lat.image(beta, e.subgroup);
                e.automizer.iter().all(|a| g.contains_aut(v, &conjugate_by(a, beta)))
            });
        gens_ok
            && cf.classes.iter().all(|cl| {
                let v = lat.image(beta, cl.members[0]);
                cg.classes[cg.class_of[v]].aut.order() == cl.aut.order()
            })
    })
}

/// One essential class in a report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EssentialSummary {
    pub order: usize,
    pub tag: String,
    pub class_size: usize,
    pub automizer_order: usize,
}

/// Report record for a fusion system.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FusionSummary {
    pub base: String,
    pub fingerprint: String,
    pub rank: usize,
    pub essentials: Vec<EssentialSummary>,
    pub center_order: usize,
    pub involution_classes: usize,
    pub out_order: usize,
    pub label: Option<String>,
}

impl fmt::Display for FusionSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self
            .essentials
            .iter()
            .map(|e| format!("{}/{}/aut{}", e.tag, e.class_size, e.automizer_order))
            .collect();
        write!(
            f,
            "rk={} center={} involution-classes={} out={} essentials=[{}] label={}",
            self.rank,
            self.center_order,
            self.involution_classes,
            self.out_order,
            es.join(","),
            self.label.as_deref().unwrap_or("-")
        )
    }
}

pub fn summarize(f: &FusionSystem, caps: &Caps) -> FusionSummary {
    let lat = f.lattice();
    let c = f.generate();
    let essentials: Vec<EssentialSummary> = essential_classes(f)
        .into_iter()
        .map(|(ci, u)| {
            let (ug, _) = lat.subs[u].to_group(&lat.group);
            EssentialSummary {
                order: ug.order(),
                tag: iso_tag(&ug, caps),
                class_size: c.classes[ci].members.len(),
                automizer_order: c.classes[ci].aut.order(),
            }
        })
        .collect();
    let inn = lat.inn(lat.whole()).order();
    let mut s = FusionSummary {
        base: lat.group.label().to_string(),
        fingerprint: fingerprint(&lat.group).to_string(),
        rank: essentials.len(),
        essentials,
        center_order: fusion_center(f).order(),
        involution_classes: f.involution_classes(),
        out_order: f.aut_f_p().order() / inn,
        label: None,
    };
    s.label = realizing_label(&s, identify_base(&lat.group, caps));
    s
}

/// Short isomorphism type name for a small group.
pub fn iso_tag(g: &Group, caps: &Caps) -> String {
    if g.is_abelian() {
        let inv = abelian_invariants(g);
        if inv == [2, 2] {
            return "V4".into();
        }
        if inv.is_empty() {
            return "1".into();
        }
        return inv.iter().map(|k| format!("C{k}")).collect::<Vec<_>>().join("x");
    }
    let Some(log) = g.order().checked_ilog2().filter(|&k| 1usize << k == g.order()) else {
        return format!("order{}", g.order());
    };
    for spec in catalogue(log) {
        if spec.order() != g.order() as u64 || spec.family == Family::Cnm || spec.family == Family::Cyclic {
            continue;
        }
        let Ok(h) = build(&spec, caps.order) else { continue };
        if matches!(is_isomorphic(g, &h, caps), Ok(Some(_))) {
            return match spec.to_string().as_str() {
                "D:3" => "D8".into(),
                "Q:3" => "Q8".into(),
                "QCstar:3,2" => "C4*Q8".into(),
                s => s.into(),
            };
        }
    }
    format!("order{}", g.order())
}

/// The family among dihedral, semidihedral, quaternion, wreathed,
/// homocyclic and Suzuki-type that `g` belongs to, if any.
pub fn identify_base(g: &Group, caps: &Caps) -> Option<Family> {
    let log = g.order().checked_ilog2().filter(|&k| 1usize << k == g.order())?;
    let wanted = [
        Family::Dihedral,
        Family::Semidihedral,
        Family::Quaternion,
        Family::Wreathed,
        Family::Cnm,
        Family::Suz,
    ];
    let mut specs: Vec<FamilySpec> = catalogue(log)
        .into_iter()
        .filter(|s| wanted.contains(&s.family) && s.order() == g.order() as u64)
        .filter(|s| s.family != Family::Cnm || s.params[0] == s.params[1])
        .collect();
    if log == 6 {
        specs.extend("Suz".parse::<FamilySpec>().ok());
    }
    let fp = fingerprint(g);
    specs.into_iter().find_map(|s| {
        let h = build(&s, caps.order).ok()?;
        if fingerprint(&h) != fp {
            return None;
        }
        matches!(is_isomorphic(g, &h, caps), Ok(Some(_))).then_some(s.family)
    })
}

/// Name of a finite group realizing the system, matched from its base
/// family and essential data.
pub fn realizing_label(s: &FusionSummary, family: Option<Family>) -> Option<String> {
    if s.rank == 0 {
        return Some(if s.out_order == 1 { "P".into() } else { format!("P:C{}", s.out_order) });
    }
    let tags: Vec<&str> = s.essentials.iter().map(|e| e.tag.as_str()).collect();
    let label = match (family?, s.rank) {
        (Family::Dihedral, 1) => "PGL2(q)",
        (Family::Dihedral, 2) => "PSL2(q)",
        (Family::Semidihedral, 1) if tags == ["V4"] => "PSL2(q^2).2",
        (Family::Semidihedral, 1) => "GL2(q)",
        (Family::Semidihedral, 2) => "PSL3(q)",
        (Family::Quaternion, 1) => "SL2(q).2",
        (Family::Quaternion, 2) => "SL2(q)",
        (Family::Wreathed, 1) if !tags[0].contains('*') => "(CxC):S3",
        (Family::Wreathed, 1) => "GL2(q)",
        (Family::Wreathed, 2) => "PSL3(q)",
        _ => return None,
    };
    Some(label.into())
}
