use super::*;
use crate::families::build;

fn grp(s: &str) -> Group {
    build(&s.parse().unwrap(), 4096).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn trivial_system_involution_classes() {
    for (s, k) in [("C:1", 1), ("D:4", 3), ("SD:4", 2), ("Q:4", 1)] {
        let f = FusionSystem::trivial_system(&grp(s), &caps()).unwrap();
        assert_eq!(f.involution_classes(), k, "{s}");
        assert!(is_saturated(&f).saturated, "{s}");
        assert_eq!(f.essential_rank(), 0);
    }
}

#[test]
fn trivial_closure_is_conjugation() {
    let g = grp("D:4");
    let f = FusionSystem::trivial_system(&g, &caps()).unwrap();
    let mut ours = f.element_classes();
    let mut classes = crate::subgroup::conjugacy_classes(&g);
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    ours.sort();
    assert_eq!(ours, classes);
}

#[test]
fn counts_on_small_targets() {
    for (s, n, ranks) in [
        ("D:4", 3, vec![0, 1, 2]),
        ("SD:4", 4, vec![0, 1, 1, 2]),
        ("Q:4", 3, vec![0, 1, 2]),
        ("Cnm:2,2", 2, vec![0, 0]),
        ("Mod:4", 1, vec![0]),
        ("Mod:5", 1, vec![0]),
    ] {
        let fs = enumerate_saturated(&grp(s), &caps()).unwrap();
        let rs: Vec<usize> = fs.iter().map(|f| f.essential_rank()).collect();
        assert_eq!(fs.len(), n, "{s}: {rs:?}");
        assert_eq!(rs, ranks, "{s}");
    }
}

#[test]
fn dihedral_rank_two_fuses_all_involutions() {
    let fs = enumerate_saturated(&grp("D:4"), &caps()).unwrap();
    let top = fs.iter().find(|f| f.essential_rank() == 2).unwrap();
    assert_eq!(top.involution_classes(), 1);
    assert_eq!(fusion_center(top).order(), 1);
    let s = summarize(top, &caps());
    assert_eq!(s.label.as_deref(), Some("PSL2(q)"));
    let p = Subgroup::whole(top.base());
    assert!(!resistance_check(top, &p));
    let one = fs.iter().find(|f| f.essential_rank() == 1).unwrap();
    assert_eq!(summarize(one, &caps()).label.as_deref(), Some("PGL2(q)"));
}

#[test]
fn quaternion_quotient_lands_on_dihedral() {
    let fs = enumerate_saturated(&grp("Q:4"), &caps()).unwrap();
    for f in &fs {
        assert_eq!(fusion_center(f).order(), 2);
    }
    let top = fs.iter().find(|f| f.essential_rank() == 2).unwrap();
    let z = fusion_center(top);
    let q = quotient_fusion(top, &z, &caps()).unwrap();
    assert_eq!(q.base().order(), 8);
    assert!(is_saturated(&q).saturated);
    let s = summarize(&q, &caps());
    assert_eq!(s.rank, 2);
    assert!(s.essentials.iter().all(|e| e.tag == "V4"));
}

#[test]
fn candidates() {
    let c = essential_candidates(&grp("SD:4"), &caps()).unwrap();
    let mut orders: Vec<usize> = c.iter().map(|e| e.full.dom.len()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![4, 8]);
    assert!(essential_candidates(&grp("Mod:5"), &caps()).unwrap().is_empty());
}

#[test]
fn noncentral_subgroup_is_not_quotiented() {
    let g = grp("D:4");
    let fs = enumerate_saturated(&g, &caps()).unwrap();
    let z = crate::invariants::center(&g);
    assert!(matches!(quotient_fusion(&fs[2], &z, &caps()), Err(Error::NotCentralInF)));
    let t = quotient_fusion(&fs[0], &z, &caps()).unwrap();
    assert_eq!(t.aut_f_p().order(), 4);
}
