//! Structural facts about 2-groups, phrased as checks that return the
//! violations found. An empty list means the property holds.

use crate::autos::{
    automorphism_group, commutator_subgroup_with, find_odd_automorphism, is_isomorphic, is_transitive_on_maximals,
    Automorphism,
};
use crate::caps::Caps;
use crate::error::Result;
use crate::families::{build, FamilySpec};
use crate::group::{prime_power_base, Group};
use crate::invariants::{
    abelian_invariants, count_involutions, fingerprint, generator_rank, is_metacyclic, maximal_subgroups, omega,
    p_rank, FrattiniCoords,
};
use crate::subgroup::{all_subgroups_flat, centralizer, Subgroup};

/// The automorphisms acting trivially on `G/Φ(G)` form a 2-group.
pub fn burnside_kernel(g: &Group, caps: &Caps) -> Result<Vec<String>> {
    let aut = automorphism_group(g, caps)?;
    let fc = FrattiniCoords::new(g);
    let kernel = aut
        .elements
        .iter()
        .filter(|imgs| {
            imgs.iter()
                .zip(&aut.basis)
                .all(|(&y, &x)| fc.coords[y as usize] == fc.coords[x])
        })
        .count() as u64;
    let ok = kernel == 1 || prime_power_base(kernel).is_some_and(|(p, _)| p == 2);
    Ok(if ok {
        Vec::new()
    } else {
        vec![format!("{}: kernel on G/Phi has order {kernel}", g.label())]
    })
}

/// Two-generator groups with an odd-order automorphism have `Aut(G)`
/// transitive on their three maximal subgroups.
pub fn transitive_on_maximals(g: &Group, caps: &Caps) -> Result<Vec<String>> {
    if generator_rank(g) != 2 || find_odd_automorphism(g, caps)?.odd_orders().is_empty() {
        return Ok(Vec::new());
    }
    let aut = automorphism_group(g, caps)?;
    Ok(if is_transitive_on_maximals(g, &aut) {
        Vec::new()
    } else {
        vec![format!("{}: maximal subgroups not permuted transitively", g.label())]
    })
}

/// Whether `g` is dihedral (including `V4`) or semidihedral.
pub fn is_dihedral_or_semidihedral(g: &Group, caps: &Caps) -> Result<bool> {
    let Some(log) = g.order().checked_ilog2().filter(|&k| 1usize << k == g.order() && k >= 2) else {
        return Ok(false);
    };
    let fp = fingerprint(g);
    for tag in ["D", "SD"] {
        let Ok(spec) = format!("{tag}:{log}").parse::<FamilySpec>() else { continue };
        let h = build(&spec, caps.order)?;
        if fingerprint(&h) == fp && is_isomorphic(g, &h, caps)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A 2-group with a self-centralizing four-group is dihedral or
/// semidihedral.
pub fn self_centralizing_four_group(g: &Group, caps: &Caps) -> Result<Vec<String>> {
    let invs: Vec<usize> = g.elements().filter(|&x| g.elt_order(x) == 2).collect();
    let mut found = None;
    'outer: for (i, &x) in invs.iter().enumerate() {
        for &y in &invs[i + 1..] {
            if g.commute(x, y) {
                let v = Subgroup::generated(g, &[x, y]);
                if centralizer(g, &v).order() == 4 {
                    found = Some((x, y));
                    break 'outer;
                }
            }
        }
    }
    Ok(match found {
        Some((x, y)) if !is_dihedral_or_semidihedral(g, caps)? => {
            vec![format!("{}: <{x}, {y}> is self-centralizing", g.label())]
        }
        _ => Vec::new(),
    })
}

fn involutions_in(g: &Group, s: &Subgroup) -> Vec<usize> {
    s.elements().into_iter().filter(|&x| g.elt_order(x) == 2).collect()
}

/// A 2-group of 2-rank 2 has a subgroup of index at most 2 with exactly
/// three involutions, all central in it, unless it is dihedral or
/// semidihedral, and then it has a cyclic maximal subgroup.
pub fn rank_two_three_involutions(g: &Group, caps: &Caps) -> Result<Vec<String>> {
    if p_rank(g) != 2 {
        return Ok(Vec::new());
    }
    let maxes = maximal_subgroups(g);
    if is_dihedral_or_semidihedral(g, caps)? {
        let cyclic = maxes
            .iter()
            .any(|m| m.elements().iter().any(|&x| g.elt_order(x) as usize == m.order()));
        return Ok(if cyclic {
            Vec::new()
        } else {
            vec![format!("{}: no cyclic maximal subgroup", g.label())]
        });
    }
    let mut cands = vec![Subgroup::whole(g)];
    cands.extend(maxes);
    let good = cands.iter().any(|q| {
        let invs = involutions_in(g, q);
        invs.len() == 3 && invs.iter().all(|&x| q.gens().iter().all(|&y| g.commute(x, y)))
    });
    Ok(if good {
        Vec::new()
    } else {
        vec![format!("{}: no subgroup of index <= 2 with three central involutions", g.label())]
    })
}

/// For `Q` normal with `G/Q` a four-group and all three maximal subgroups
/// over `Q` having three involutions: one involution in `Q` forces seven in
/// `G`, otherwise `Q` and `G` both have three.
pub fn three_or_seven(g: &Group) -> Vec<String> {
    let maxes = maximal_subgroups(g);
    let inv = |s: &Subgroup| involutions_in(g, s).len();
    let total = count_involutions(g);
    let mut quads: Vec<Subgroup> = Vec::new();
    for i in 0..maxes.len() {
        for j in i + 1..maxes.len() {
            let q = maxes[i].intersect(g, &maxes[j]);
            if !quads.iter().any(|r| r.members() == q.members()) {
                quads.push(q);
            }
        }
    }
    let mut out = Vec::new();
    for q in quads {
        if maxes.iter().filter(|m| q.is_subgroup_of(m)).any(|m| inv(m) != 3) {
            continue;
        }
        let ok = match inv(&q) {
            1 => total == 7,
            k => k == 3 && total == 3,
        };
        if !ok {
            out.push(format!("{}: Q with {} involutions, G with {total}", g.label(), inv(&q)));
        }
    }
    out
}

/// For `φ` of odd order and each `φ`-invariant maximal `Q`:
/// `[G,φ] = [Q,φ]` and `G = [Q,φ] C_G([Q,φ])`; when `|G| >= 2^8`,
/// `[G,φ]` is quaternion of order 8.
pub fn commutator_with_invariant_maximal(g: &Group, phi: &Automorphism, caps: &Caps) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let gp = commutator_subgroup_with(g, phi);
    for q in maximal_subgroups(g) {
        if !q.gens().iter().all(|&x| q.contains(phi.apply(x))) {
            continue;
        }
        let (qg, embed) = q.to_group(g);
        let index: std::collections::HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let perm: Vec<usize> = embed.iter().map(|&x| index[&phi.apply(x)]).collect();
        let phi_q = Automorphism::from_perm(&qg, perm)?;
        let qp_local = commutator_subgroup_with(&qg, &phi_q);
        let qp = Subgroup::generated(g, &qp_local.gens().iter().map(|&x| embed[x]).collect::<Vec<_>>());
        if qp.members() != gp.members() {
            out.push(format!("{}: [G,phi] has order {} but [Q,phi] has order {}", g.label(), gp.order(), qp.order()));
            continue;
        }
        let c = centralizer(g, &qp);
        let prod = qp.order() * c.order() / qp.intersect(g, &c).order();
        if prod != g.order() {
            out.push(format!("{}: [Q,phi] C_G([Q,phi]) has order {prod}", g.label()));
        }
    }
    if g.order() >= 256 {
        let (h, _) = gp.to_group(g);
        let q8 = build(&"Q:3".parse::<FamilySpec>()?, caps.order)?;
        if is_isomorphic(&h, &q8, caps)?.is_none() {
            out.push(format!("{}: [G,phi] of order {} is not Q8", g.label(), gp.order()));
        }
    }
    Ok(out)
}

/// Runs [`commutator_with_invariant_maximal`] for each odd-order witness
/// of a 2-rank 2 group.
pub fn odd_automorphism_commutators(g: &Group, caps: &Caps) -> Result<Vec<String>> {
    if p_rank(g) != 2 {
        return Ok(Vec::new());
    }
    let report = find_odd_automorphism(g, caps)?;
    let mut out = Vec::new();
    for q in report.odd_orders() {
        let w = report.witness(q).expect("found orders carry witnesses");
        let phi = w.to_automorphism(g).expect("witness extends");
        out.extend(commutator_with_invariant_maximal(g, &phi, caps)?);
    }
    Ok(out)
}

/// With three involutions and a normal `W ≅ C4 x C4`, `C_G(W)` is
/// metacyclic and `Ω_2(C_G(W)) = W`. Returns the violations and the number
/// of such `W` examined.
pub fn normal_c4xc4_centralizers(g: &Group, caps: &Caps) -> Result<(Vec<String>, usize)> {
    if count_involutions(g) != 3 {
        return Ok((Vec::new(), 0));
    }
    let mut out = Vec::new();
    let mut seen = 0;
    for w in all_subgroups_flat(g, caps.subgroups.max(g.order()))? {
        if w.order() != 16 || !w.is_normal(g) {
            continue;
        }
        let (wg, _) = w.to_group(g);
        if abelian_invariants(&wg) != [4, 4] || !wg.is_abelian() {
            continue;
        }
        seen += 1;
        let c = centralizer(g, &w);
        let (cg, embed) = c.to_group(g);
        if !is_metacyclic(&cg) {
            out.push(format!("{}: C_G(W) is not metacyclic", g.label()));
        }
        let o2 = omega(&cg, 2);
        let o2: Vec<usize> = o2.elements().into_iter().map(|x| embed[x]).collect();
        if o2.len() != w.order() || !o2.iter().all(|&x| w.contains(x)) {
            out.push(format!("{}: Omega_2(C_G(W)) has order {}", g.label(), o2.len()));
        }
    }
    Ok((out, seen))
}

/// The number of maximal subgroups is `2^d - 1`.
pub fn maximal_count(g: &Group) -> Vec<String> {
    let d = generator_rank(g);
    let n = maximal_subgroups(g).len();
    if n + 1 == 1 << d {
        Vec::new()
    } else {
        vec![format!("{}: {n} maximal subgroups with d = {d}", g.label())]
    }
}
