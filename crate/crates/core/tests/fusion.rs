use pgfusion::autos::all_automorphisms;
use pgfusion::families::{build, catalogue, Family, FamilySpec};
use pgfusion::fusion::{
    enumerate_saturated, essential_candidates, essential_classes, fusion_center, identify_base, is_saturated,
    is_strongly_closed, quotient_fusion, resistance_check, summarize, FusionSystem, PMap, UNDEF,
};
use pgfusion::invariants::{center, omega};
use pgfusion::metacyclic::metacyclic_catalogue;
use pgfusion::subgroup::{conjugacy_classes, Subgroup};
use pgfusion::{Caps, ElemSet, Group};
use std::collections::BTreeSet;
use std::sync::Arc;

fn grp(s: &str) -> Group {
    build(&s.parse::<FamilySpec>().unwrap(), 4096).unwrap()
}

fn sub(g: &Group, words: &[&[(&str, i64)]]) -> Subgroup {
    let xs: Vec<usize> = words
        .iter()
        .map(|w| w.iter().fold(0, |acc, &(n, e)| g.mul(acc, g.pow(g.gen(n).unwrap(), e))))
        .collect();
    Subgroup::generated(g, &xs)
}

const SMALL: [&str; 9] = ["Cnm:1,1", "D:3", "Q:3", "D:4", "SD:4", "Q:4", "Cnm:2,2", "QCstar:3,2", "wr:2"];

/// Every generating map of `f`, as a partial map on `P`.
fn generators(f: &FusionSystem) -> Vec<PMap> {
    let mut out = f.aut_p_generators().to_vec();
    for e in f.essential_data() {
        out.extend(e.automizer.iter().cloned());
    }
    out
}

/// Element classes as the transitive closure (Warshall) of the relation
/// `x ~ a(x)` over all generating maps.
fn warshall_classes(f: &FusionSystem) -> Vec<Vec<usize>> {
    let n = f.base().order();
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for a in generators(f) {
        for (x, &y) in a.iter().enumerate() {
            if y != UNDEF {
                r[x][y as usize] = true;
                r[y as usize][x] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    let set: BTreeSet<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| r[x][y]).collect()).collect();
    set.into_iter().collect()
}

fn all_systems() -> Vec<(String, Vec<FusionSystem>)> {
    SMALL
        .iter()
        .map(|s| (s.to_string(), enumerate_saturated(&grp(s), &Caps::default()).unwrap()))
        .collect()
}

#[test]
fn element_classes_match_orbit_oracle() {
    for (s, fs) in all_systems() {
        for (i, f) in fs.iter().enumerate() {
            let mut ours = f.element_classes();
            ours.sort();
            assert_eq!(ours, warshall_classes(f), "{s} system {i}");
        }
    }
}

#[test]
fn hom_images_of_cyclic_subgroups_agree_with_element_classes() {
    for (s, fs) in all_systems() {
        for f in &fs {
            let g = f.base();
            let lat = f.lattice();
            let classes = f.element_classes();
            for x in g.elements().skip(1) {
                let cyc = Subgroup::generated(g, &[x]);
                let u = lat.index_of(&cyc);
                // hom_images lists generator images; find a generator and x as its power
                let gens = lat.subs[u].gens();
                let k = gens.iter().position(|&y| g.elt_order(y) == g.elt_order(x)).unwrap();
                let e = (1..=g.elt_order(x) as i64).find(|&e| g.pow(gens[k], e) == x).unwrap();
                let mut images: Vec<usize> = f.hom_images(u).iter().map(|im| g.pow(im[k] as usize, e)).collect();
                images.sort_unstable();
                images.dedup();
                let class = classes.iter().find(|c| c.contains(&x)).unwrap();
                assert_eq!(&images, class, "{s}: element {x}");
            }
        }
    }
}

#[test]
fn stored_automizers_are_injective_homomorphisms() {
    for (s, fs) in all_systems() {
        for f in &fs {
            let g = f.base();
            let lat = f.lattice();
            for u in 0..lat.len() {
                let a = f.aut_f(u);
                let dom = lat.elements(u);
                for m in &a.elems {
                    let imgs: BTreeSet<u16> = dom.iter().map(|&x| m[x]).collect();
                    assert_eq!(imgs.len(), dom.len(), "{s}");
                    assert!(dom.iter().all(|&x| lat.subs[u].contains(m[x] as usize)));
                    for &x in &dom {
                        for &y in &dom {
                            assert_eq!(m[g.mul(x, y)] as usize, g.mul(m[x] as usize, m[y] as usize), "{s}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn regenerating_changes_nothing() {
    for (s, fs) in all_systems() {
        for f in &fs {
            let again = FusionSystem::from_parts(
                Arc::clone(f.lattice()),
                f.aut_f_p().elems.clone(),
                f.essential_data().to_vec(),
            );
            assert_eq!(again.element_classes(), f.element_classes(), "{s}");
            assert_eq!(again.generate().class_count(), f.generate().class_count(), "{s}");
            assert_eq!(again.aut_f_p().order(), f.aut_f_p().order(), "{s}");
            assert!(is_saturated(&again).saturated);
        }
    }
}

#[test]
fn essentials_satisfy_the_sylow_axiom_and_rank_is_at_most_two() {
    for (s, fs) in all_systems() {
        for f in &fs {
            let lat = f.lattice();
            let ess = essential_classes(f);
            assert!(ess.len() <= 2, "{s}");
            for (_, u) in ess {
                let index = f.aut_f(u).order() / lat.aut_p(u).order();
                assert_eq!(index % 2, 1, "{s}: Aut_P(U) not Sylow");
                assert!(index > 1);
            }
            assert!(is_saturated(f).saturated);
        }
    }
}

/// A coarse conjugation-invariant: element classes, `|Aut_F(P)|` and the
/// essential subgroups with their automizer orders.
fn signature(f: &FusionSystem, perm: &[u16]) -> (Vec<Vec<usize>>, usize, Vec<(Vec<usize>, usize)>) {
    let lat = f.lattice();
    let mut classes: Vec<Vec<usize>> = f
        .element_classes()
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&x| perm[x] as usize).collect();
            v.sort_unstable();
            v
        })
        .collect();
    classes.sort();
    let mut ess: Vec<(Vec<usize>, usize)> = Vec::new();
    for (ci, _) in essential_classes(f) {
        for &m in &f.generate().classes[ci].members {
            let mut v: Vec<usize> = lat.elements(m).iter().map(|&x| perm[x] as usize).collect();
            v.sort_unstable();
            ess.push((v, f.aut_f(m).order()));
        }
    }
    ess.sort();
    (classes, f.aut_f_p().order(), ess)
}

#[test]
fn enumerated_systems_are_pairwise_non_conjugate() {
    let caps = Caps::default();
    for (s, fs) in all_systems() {
        let auts = all_automorphisms(fs[0].base(), &caps).unwrap();
        let id: Vec<u16> = (0..fs[0].base().order() as u16).collect();
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let target = signature(&fs[j], &id);
                for a in &auts {
                    assert_ne!(signature(&fs[i], a.perm()), target, "{s}: systems {i} and {j} are conjugate");
                }
            }
        }
    }
}

#[test]
fn center_free_systems_live_on_the_listed_bases() {
    let caps = Caps::default();
    let allowed = [Family::Dihedral, Family::Semidihedral, Family::Wreathed, Family::Cnm, Family::Suz];
    for spec in catalogue(5) {
        let g = build(&spec, caps.order).unwrap();
        if g.order() < 4 {
            continue;
        }
        for f in enumerate_saturated(&g, &caps).unwrap() {
            if fusion_center(&f).order() == 1 {
                let fam = identify_base(&g, &caps);
                assert!(fam.is_some_and(|x| allowed.contains(&x)), "{spec}: {fam:?}");
            }
        }
    }
}

#[test]
fn fusion_center_is_strongly_closed_by_scan() {
    for (s, fs) in all_systems() {
        for f in &fs {
            let z = fusion_center(f);
            assert!(is_strongly_closed(f, &z));
            // no generating map moves an element of Z(F) at all
            for a in generators(f) {
                for x in z.elements() {
                    let y = a[x];
                    assert!(y == UNDEF || y as usize == x, "{s}");
                }
            }
        }
    }
}

#[test]
fn dihedral_examples() {
    let caps = Caps::default();
    let g = grp("D:4");
    let v1 = sub(&g, &[&[("t", 1)], &[("r", 4)]]);
    let v2 = sub(&g, &[&[("r", 1), ("t", 1)], &[("r", 4)]]);
    let both = FusionSystem::with_full_automizers(&g, &[v1.clone(), v2], &caps).unwrap();
    assert!(is_saturated(&both).saturated);
    assert_eq!(both.involution_classes(), 1);
    assert_eq!(fusion_center(&both).order(), 1);
    let one = FusionSystem::with_full_automizers(&g, &[v1], &caps).unwrap();
    assert!(is_saturated(&one).saturated);
    assert_eq!(one.essential_rank(), 1);
    assert_eq!(summarize(&one, &caps).label.as_deref(), Some("PGL2(q)"));
    // an involution outside the center is fused out of any subgroup it generates
    let c2 = sub(&g, &[&[("t", 1)]]);
    assert!(!is_strongly_closed(&both, &c2));
    assert!(!resistance_check(&both, &Subgroup::whole(&g)));
}

#[test]
fn extra_automizer_on_abelian_subgroup_is_not_saturated() {
    let caps = Caps::default();
    let g = grp("Cnm:2,2");
    let x = sub(&g, &[&[("x", 1)]]);
    let f = FusionSystem::with_full_automizers(&g, &[x], &caps).unwrap();
    assert!(!is_saturated(&f).saturated);
}

#[test]
fn semidihedral_and_quaternion_rows() {
    let caps = Caps::default();
    let fs = enumerate_saturated(&grp("SD:4"), &caps).unwrap();
    let top = fs.iter().find(|f| f.essential_rank() == 2).unwrap();
    assert_eq!(summarize(top, &caps).label.as_deref(), Some("PSL3(q)"));
    let fs = enumerate_saturated(&grp("Q:4"), &caps).unwrap();
    let one = fs.iter().find(|f| f.essential_rank() == 1).unwrap();
    let s = summarize(one, &caps);
    assert_eq!(s.essentials[0].tag, "Q8");
    assert!(fs.iter().all(|f| fusion_center(f).order() == 2));
}

#[test]
fn essential_candidate_classes() {
    let caps = Caps::default();
    let wr = grp("wr:2");
    let c = essential_candidates(&wr, &caps).unwrap();
    let mut tags: Vec<String> = c
        .iter()
        .map(|e| {
            let members = ElemSet::from_iter(wr.order(), e.full.dom.iter().copied());
            let (h, _) = Subgroup::from_members(&wr, members).to_group(&wr);
            pgfusion::fusion::iso_tag(&h, &caps)
        })
        .collect();
    tags.sort();
    assert_eq!(tags, ["C4*Q8", "C4xC4"]);
    assert!(essential_candidates(&grp("Mod:5"), &caps).unwrap().is_empty());
}

#[test]
fn quotient_of_trivial_system_is_trivial() {
    let caps = Caps::default();
    for s in ["D:4", "Q:4", "wr:2", "QCstar:3,2"] {
        let g = grp(s);
        let f = FusionSystem::trivial_system(&g, &caps).unwrap();
        let z = center(&g);
        let q = quotient_fusion(&f, &z, &caps).unwrap();
        let (qg, _) = g.quotient(z.members()).unwrap();
        let mut want = conjugacy_classes(&qg);
        for c in want.iter_mut() {
            c.sort_unstable();
        }
        want.sort();
        assert_eq!(q.element_classes(), want, "{s}");
        assert_eq!(q.essential_rank(), 0);
    }
}

#[test]
fn suzuki_systems_are_resistant() {
    let caps = Caps::default();
    let g = grp("suz");
    let fs = enumerate_saturated(&g, &caps).unwrap();
    assert_eq!(fs.len(), 4);
    let om = omega(&g, 1);
    for f in &fs {
        assert!(is_strongly_closed(f, &om));
        assert!(resistance_check(f, &Subgroup::whole(&g)));
    }
}

#[test]
fn metacyclic_two_groups_carry_only_the_trivial_system() {
    let caps = Caps::default();
    let excluded = [Family::Dihedral, Family::Semidihedral, Family::Quaternion, Family::Cnm];
    let mut checked = 0;
    for g in metacyclic_catalogue(2, 6, &caps).unwrap() {
        if g.order() < 2 || identify_base(&g, &caps).is_some_and(|f| excluded.contains(&f)) {
            continue;
        }
        let fs = enumerate_saturated(&g, &caps).unwrap();
        assert_eq!(fs.len(), 1, "{}", g.label());
        assert_eq!(fs[0].aut_f_p().order(), fs[0].lattice().inn(fs[0].lattice().whole()).order());
        assert_eq!(fs[0].essential_rank(), 0);
        checked += 1;
    }
    assert!(checked > 10);
}

fn odd_metacyclic_resistance(p: u64, max_log: u32, min_order: usize) {
    let caps = Caps::parse("fusion=625,subgroups=625,aut=625").unwrap();
    let mut checked = 0;
    for g in metacyclic_catalogue(p, max_log, &caps).unwrap() {
        if g.is_abelian() || g.order() < min_order {
            continue;
        }
        let fs = enumerate_saturated(&g, &caps).unwrap();
        assert!(!fs.is_empty());
        for f in &fs {
            assert!(resistance_check(f, &Subgroup::whole(&g)), "{}", g.label());
        }
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn odd_metacyclic_groups_are_resistant() {
    odd_metacyclic_resistance(3, 4, 1);
    odd_metacyclic_resistance(5, 3, 1);
}

#[test]
#[ignore = "several minutes"]
fn odd_metacyclic_groups_of_order_625_are_resistant() {
    odd_metacyclic_resistance(5, 4, 625);
}
