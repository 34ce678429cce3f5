use super::essentials::fully_normalized;
use super::maps::{compose, conjugation_on, invert, PMap};
use super::FusionSystem;
use crate::elemset::ElemSet;
use crate::group::p_part;
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Result of checking one F-class at its fully normalized member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCheck {
    pub class: usize,
    pub representative: usize,
    pub fully_automized: bool,
    pub receptive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub class: usize,
    pub subgroup: usize,
    pub axiom: &'static str,
    /// An isomorphism onto the checked member that does not extend.
    pub morphism: Option<PMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub saturated: bool,
    pub witnesses: Vec<ClassCheck>,
    pub first_failure: Option<Failure>,
}

impl fmt::Display for SaturationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "saturated ({} classes checked)", self.witnesses.len()),
            Some(fail) => write!(
                f,
                "not saturated: {} fails at class {} (subgroup {})",
                fail.axiom, fail.class, fail.subgroup
            ),
        }
    }
}

/// Checks that every F-class has a fully normalized member that is fully
/// automized and receptive.
pub fn is_saturated(f: &FusionSystem) -> SaturationVerdict {
    let lat = f.lattice();
    let g = &lat.group;
    let p = g.prime().unwrap_or(2) as u64;
    let c = f.generate();
    let mut witnesses = Vec::new();
    let mut first_failure = None;
    // restriction sets of Hom_F(N, P) to a subgroup of N
    let mut cache: HashMap<(usize, usize), HashSet<Vec<u16>>> = HashMap::new();

    for (ci, cl) in c.classes.iter().enumerate() {
        let t = fully_normalized(lat, &cl.members);
        let aut_t = f.aut_f(t);
        let autp_t = lat.aut_p(t);
        let fully_automized = p_part(aut_t.order() as u64, p) == autp_t.order() as u64;
        let mut receptive = true;
        let mut bad = None;
        let pos_t = c.pos_in_class[t];
        let to_t = &cl.transporters[pos_t];
        'members: for (j, &t2) in cl.members.iter().enumerate() {
            let from_rep = &cl.inverse_transporters[j];
            let dom2 = lat.elements(t2);
            let n2 = lat.elements(lat.normalizers[t2]);
            let gens2 = lat.subs[t2].gens();
            for sigma in &cl.aut.elems {
                let phi = compose(&compose(from_rep, sigma), to_t);
                let phi_inv = invert(&phi);
                let mut nphi = ElemSet::empty(g.order());
                for &h in &n2 {
                    let ch = conjugation_on(g, h, &dom2);
                    if autp_t.contains(&compose(&compose(&phi_inv, &ch), &phi)) {
                        nphi.insert(h);
                    }
                }
                if nphi.len() == dom2.len() {
                    continue;
                }
                let ni = lat.find(&nphi).expect("extension control subgroup");
                let set = cache.entry((ni, t2)).or_insert_with(|| restrictions(f, ni, t2));
                let key: Vec<u16> = gens2.iter().map(|&x| phi[x]).collect();
                if !set.contains(&key) {
                    receptive = false;
                    bad = Some(phi);
                    break 'members;
                }
            }
        }
        if first_failure.is_none() && (!fully_automized || !receptive) {
            first_failure = Some(Failure {
                class: ci,
                subgroup: t,
                axiom: if fully_automized { "receptive" } else { "fully automized" },
                morphism: if fully_automized { bad } else { None },
            });
        }
        witnesses.push(ClassCheck {
            class: ci,
            representative: t,
            fully_automized,
            receptive,
        });
    }
    SaturationVerdict {
        saturated: first_failure.is_none(),
        witnesses,
        first_failure,
    }
}

/// Images of the generators of `sub` under all F-morphisms `N -> P`.
fn restrictions(f: &FusionSystem, n: usize, sub: usize) -> HashSet<Vec<u16>> {
    let c = f.generate();
    let cl = &c.classes[c.class_of[n]];
    let ti = &cl.inverse_transporters[c.pos_in_class[n]];
    let gens = f.lattice().subs[sub].gens();
    let pre: Vec<usize> = gens.iter().map(|&x| ti[x] as usize).collect();
    let mut out = HashSet::new();
    for a in &cl.aut.elems {
        let mid: Vec<usize> = pre.iter().map(|&y| a[y] as usize).collect();
        for t in &cl.transporters {
            out.insert(mid.iter().map(|&y| t[y]).collect());
        }
    }
    out
}
