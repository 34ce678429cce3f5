//! The verification suite behind `verify-paper`: named checks grouped by
//! tag, each passing, failing or skipped under the caps in force.

use crate::autos::{find_odd_automorphism, gl4_fixed_point_scan, is_isomorphic};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::families::{build, catalogue, expected_fingerprint, Family, FamilySpec};
use crate::fusion::{
    enumerate_saturated, fusion_center, identify_base, is_strongly_closed, quotient_fusion, resistance_check,
    summarize, FusionSystem,
};
use crate::group::Group;
use crate::invariants::{count_involutions, derived, higman_check, omega};
use crate::metacyclic::metacyclic_catalogue;
use crate::properties;
use crate::subgroup::Subgroup;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIPPED",
        })
    }
}

type Runner = Box<dyn Fn(&Caps) -> Result<(bool, String)> + Send + Sync>;

pub struct Check {
    pub criterion: u8,
    pub tag: &'static str,
    pub name: String,
    run: Runner,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub criterion: u8,
    pub tag: &'static str,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
    pub millis: u128,
}

impl Check {
    fn new(
        criterion: u8,
        tag: &'static str,
        name: impl Into<String>,
        run: impl Fn(&Caps) -> Result<(bool, String)> + Send + Sync + 'static,
    ) -> Self {
        Check {
            criterion,
            tag,
            name: name.into(),
            run: Box::new(run),
        }
    }

    /// Caps too small for the check turn into a skip, never a pass.
    pub fn run(&self, caps: &Caps) -> CheckResult {
        let start = Instant::now();
        let (outcome, detail) = match (self.run)(caps) {
            Ok((true, d)) => (Outcome::Pass, d),
            Ok((false, d)) => (Outcome::Fail, d),
            Err(e @ (Error::CapExceeded { .. } | Error::UnsupportedOrder { .. })) => (Outcome::Skipped, e.to_string()),
            Err(e) => (Outcome::Fail, format!("error: {e}")),
        };
        CheckResult {
            criterion: self.criterion,
            tag: self.tag,
            name: self.name.clone(),
            outcome,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }

    /// `filter` is a tag, a criterion number, or a prefix of the name.
    pub fn selected_by(&self, filter: &str) -> bool {
        filter == self.tag || filter == self.criterion.to_string() || self.name.starts_with(filter)
    }
}

pub struct Report {
    pub scope: String,
    pub results: Vec<CheckResult>,
}

impl Report {
    /// True when no executed check failed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome != Outcome::Fail)
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.results.iter().filter(|r| r.outcome == o).count()
    }

    /// Per-criterion outcome: failed if any check failed, skipped if every
    /// check was skipped, passed otherwise.
    pub fn criterion_outcome(&self, c: u8) -> Option<Outcome> {
        let rs: Vec<_> = self.results.iter().filter(|r| r.criterion == c).collect();
        if rs.is_empty() {
            None
        } else if rs.iter().any(|r| r.outcome == Outcome::Fail) {
            Some(Outcome::Fail)
        } else if rs.iter().all(|r| r.outcome == Outcome::Skipped) {
            Some(Outcome::Skipped)
        } else {
            Some(Outcome::Pass)
        }
    }

    /// Plain text, without timings, so reruns diff cleanly.
    pub fn render(&self) -> String {
        let mut s = format!("scope: {}\n", self.scope);
        for r in &self.results {
            s += &format!("{:<7} [{}] {:<18} {}: {}\n", r.outcome.to_string(), r.criterion, r.tag, r.name, r.detail);
        }
        s += &format!(
            "total: {} passed, {} failed, {} skipped\n",
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Skipped)
        );
        s
    }
}

fn spec(s: &str) -> FamilySpec {
    s.parse().expect("built-in spec")
}

fn group(s: &str, caps: &Caps) -> Result<Group> {
    build(&spec(s), caps.order)
}

fn systems(s: &str, caps: &Caps) -> Result<Vec<FusionSystem>> {
    let g = group(s, caps)?;
    if g.order() > caps.fusion {
        return Err(Error::CapExceeded {
            what: "fusion",
            order: g.order(),
            cap: caps.fusion,
        });
    }
    enumerate_saturated(&g, caps)
}

fn ranks(fs: &[FusionSystem]) -> Vec<usize> {
    let mut r: Vec<usize> = fs.iter().map(FusionSystem::essential_rank).collect();
    r.sort_unstable();
    r
}

fn verdict(ok: bool, detail: String) -> Result<(bool, String)> {
    Ok((ok, detail))
}

/// Targets of the fusion counts with their expected numbers of systems.
pub const FUSION_COUNTS: [(&str, &str, usize); 8] = [
    ("D:4", "D16", 3),
    ("SD:4", "SD16", 4),
    ("Q:4", "Q16", 3),
    ("Cnm:2,2", "C4xC4", 2),
    ("wr:2", "C4 wr C2", 4),
    ("suz", "Suz", 4),
    ("Mod:4", "Mod4", 1),
    ("Mod:5", "Mod5", 1),
];

fn fusion_counts() -> Vec<Check> {
    FUSION_COUNTS
        .iter()
        .map(|&(s, name, want)| {
            Check::new(1, "fusion-counts", format!("{name} has {want} saturated systems"), move |caps| {
                let fs = systems(s, caps)?;
                let labels: Vec<String> = fs
                    .iter()
                    .map(|f| summarize(f, caps).label.unwrap_or_else(|| "?".into()))
                    .collect();
                verdict(fs.len() == want, format!("found {} [{}]", fs.len(), labels.join(", ")))
            })
        })
        .collect()
}

fn essential_rank() -> Vec<Check> {
    vec![
        Check::new(2, "essential-rank", "every counted system has rank at most 2", |caps| {
            let mut seen = Vec::new();
            let mut ok = true;
            for &(s, name, _) in &FUSION_COUNTS {
                let r = ranks(&systems(s, caps)?);
                ok &= r.iter().all(|&k| k <= 2);
                seen.push(format!("{name}:{r:?}"));
            }
            verdict(ok, seen.join(" "))
        }),
        Check::new(2, "essential-rank", "SD16 ranks are {0,1,1,2}", |caps| {
            let r = ranks(&systems("SD:4", caps)?);
            verdict(r == [0, 1, 1, 2], format!("{r:?}"))
        }),
        Check::new(2, "essential-rank", "D16 rank 1 fuses two involution classes, rank 2 all three", |caps| {
            let fs = systems("D:4", caps)?;
            let shape: Vec<(usize, usize)> = fs.iter().map(|f| (f.essential_rank(), f.involution_classes())).collect();
            verdict(shape == [(0, 3), (1, 2), (2, 1)], format!("(rank, involution classes) {shape:?}"))
        }),
    ]
}

/// Negative controls: maximal class of order at least 16, modular, and the
/// direct product Q8 x D8.
fn negative_controls(max_log: u32) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = catalogue(max_log)
        .into_iter()
        .filter(|s| match s.family {
            Family::Dihedral | Family::Semidihedral | Family::Quaternion => s.params[0] >= 4,
            Family::Modular => true,
            _ => false,
        })
        .collect();
    out.push(spec("QD:3,3"));
    out
}

fn odd_automorphisms() -> Vec<Check> {
    let mut out = Vec::new();
    for s in catalogue(7) {
        let want = expected_fingerprint(&s).expect("catalogue specs are valid").odd_orders;
        let name = format!("{s} odd orders {want:?}");
        out.push(Check::new(3, "odd-automorphisms", name, move |caps| {
            let g = build(&s, caps.order)?;
            let got = find_odd_automorphism(&g, caps)?;
            let (found, open) = (got.odd_orders(), got.undecided());
            verdict(found == want && open.is_empty(), format!("found {found:?}, undecided {open:?}"))
        }));
    }
    for s in negative_controls(7) {
        let name = format!("control {s} has none");
        out.push(Check::new(3, "odd-automorphisms", name, move |caps| {
            let g = build(&s, caps.order)?;
            let got = find_odd_automorphism(&g, caps)?;
            let found = got.odd_orders();
            let witness = found
                .first()
                .and_then(|&q| got.witness(q))
                .map(|w| format!(" witness {w}"))
                .unwrap_or_default();
            verdict(found.is_empty() && got.undecided().is_empty(), format!("found {found:?}{witness}"))
        }));
    }
    out
}

fn table_row() -> Vec<Check> {
    vec![Check::new(
        4,
        "table-row",
        "order 64 with three involutions and an odd automorphism",
        |caps| {
            let want = ["Cnm:3,3", "QC:3,3", "Y:6", "Qnm:3,3", "suz"];
            let mut classes: Vec<(Group, Vec<String>)> = Vec::new();
            for s in catalogue(6).into_iter().filter(|s| s.order() == 64) {
                let g = build(&s, caps.order)?;
                if count_involutions(&g) != 3 || find_odd_automorphism(&g, caps)?.odd_orders().is_empty() {
                    continue;
                }
                let mut placed = false;
                for (h, names) in classes.iter_mut() {
                    if is_isomorphic(&g, h, caps)?.is_some() {
                        names.push(s.to_string());
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    classes.push((g, vec![s.to_string()]));
                }
            }
            let ok = classes.len() == want.len()
                && want
                    .iter()
                    .all(|w| classes.iter().filter(|(_, ns)| ns.iter().any(|n| n == w)).count() == 1)
                && classes.iter().all(|(_, ns)| want.iter().filter(|w| ns.iter().any(|n| n == *w)).count() == 1);
            let shown: Vec<String> = classes.iter().map(|(_, ns)| ns.join("=")).collect();
            verdict(ok, format!("{} classes: {}", classes.len(), shown.join(", ")))
        },
    )]
}

fn suzuki() -> Vec<Check> {
    vec![
        Check::new(5, "suzuki", "Suz has exponent 4, class 2 and Omega1 = Z = Phi = P'", |caps| {
            let g = group("suz", caps)?;
            verdict(higman_check(&g), format!("order {}", g.order()))
        }),
        Check::new(5, "suzuki", "every system on Suz is resistant via 1 < Omega1 < P", |caps| {
            let fs = systems("suz", caps)?;
            let g = fs[0].base().clone();
            let om = omega(&g, 1);
            let whole = Subgroup::whole(&g);
            // [P, P] <= Omega1 and [Omega1, P] = 1 make it a central series
            let central = derived(&g).is_subgroup_of(&om)
                && om.gens().iter().all(|&x| g.elements().all(|y| g.commute(x, y)));
            let mut ok = central;
            for f in &fs {
                ok &= is_strongly_closed(f, &om) && resistance_check(f, &whole);
            }
            verdict(ok, format!("{} systems, |Omega1| = {}", fs.len(), om.order()))
        }),
    ]
}

fn gl4() -> Vec<Check> {
    vec![Check::new(6, "gl4", "GL4(2) fixed points of elements of order 3 and 5", |_| {
        let start = Instant::now();
        let s = gl4_fixed_point_scan();
        let secs = start.elapsed().as_secs_f64();
        verdict(
            s.passed() && secs <= 5.0,
            format!(
                "{} elements; order 3: {} ({} fixed-point-free, {} fixing a plane); order 5: {} ({} fixed-point-free); {} exceptions",
                s.elements,
                s.order3,
                s.order3_fixed_free,
                s.order3_fixing_plane,
                s.order5,
                s.order5_fixed_free,
                s.exceptions.len()
            ),
        )
    })]
}

fn xy() -> Vec<Check> {
    let mut out = vec![Check::new(7, "xy-isomorphism", "X6 is isomorphic to Y6", |caps| {
        let (x, y) = (group("X:6", caps)?, group("Y:6", caps)?);
        match is_isomorphic(&x, &y, caps)? {
            Some(w) => verdict(w.verify(&x, &y), format!("witness {w}")),
            None => verdict(false, "no isomorphism".into()),
        }
    })];
    for n in [7u32, 8] {
        out.push(Check::new(7, "xy-isomorphism", format!("X{n} is not isomorphic to Y{n}"), move |caps| {
            let (x, y) = (group(&format!("X:{n}"), caps)?, group(&format!("Y:{n}"), caps)?);
            verdict(is_isomorphic(&x, &y, caps)?.is_none(), format!("order {}", x.order()))
        }));
    }
    out
}

fn metacyclic_fusion() -> Vec<Check> {
    vec![Check::new(
        8,
        "metacyclic-fusion",
        "metacyclic groups of order <= 64 outside D, SD, Q and homocyclic carry only F_P(P)",
        |caps| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for g in metacyclic_catalogue(2, 6, caps)? {
                if g.order() < 2 || g.order() > caps.fusion {
                    continue;
                }
                let fam = identify_base(&g, caps);
                if matches!(
                    fam,
                    Some(Family::Dihedral | Family::Semidihedral | Family::Quaternion | Family::Cnm)
                ) {
                    continue;
                }
                checked += 1;
                let fs = enumerate_saturated(&g, caps)?;
                let trivial = fs.len() == 1 && fs[0].essential_rank() == 0 && summarize(&fs[0], caps).out_order == 1;
                if !trivial {
                    bad.push(format!("{} ({} systems)", g.label(), fs.len()));
                }
            }
            verdict(bad.is_empty(), format!("{checked} groups checked; exceptions: {bad:?}"))
        },
    )]
}

/// Runs `prop` over the catalogue up to `2^max_log`, collecting violations.
fn over_catalogue(
    max_log: u32,
    caps: &Caps,
    prop: impl Fn(&Group, &Caps) -> Result<Vec<String>>,
) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut n = 0;
    for s in catalogue(max_log) {
        let g = build(&s, caps.order)?;
        n += 1;
        bad.extend(prop(&g, caps)?);
    }
    verdict(bad.is_empty(), format!("{n} groups; violations: {bad:?}"))
}

fn property_checks() -> Vec<Check> {
    vec![
        Check::new(9, "properties", "automorphisms trivial on G/Phi form a 2-group", |caps| {
            over_catalogue(6, caps, properties::burnside_kernel)
        }),
        Check::new(9, "properties", "two-generator groups with odd automorphisms are transitive on maximals", |caps| {
            over_catalogue(6, caps, properties::transitive_on_maximals)
        }),
        Check::new(9, "properties", "a self-centralizing four-group forces dihedral or semidihedral", |caps| {
            over_catalogue(6, caps, properties::self_centralizing_four_group)
        }),
        Check::new(9, "properties", "2-rank 2 gives three central involutions in index <= 2", |caps| {
            over_catalogue(7, caps, properties::rank_two_three_involutions)
        }),
        Check::new(9, "properties", "three or seven involutions over a four-group quotient", |caps| {
            over_catalogue(7, caps, |g, _| Ok(properties::three_or_seven(g)))
        }),
        Check::new(9, "properties", "QC_{3,5}: [P,phi] = [Q,phi] = Q8 and P = [Q,phi] C_P([Q,phi])", |caps| {
            let g = group("QC:3,5", caps)?;
            let v = properties::odd_automorphism_commutators(&g, caps)?;
            verdict(v.is_empty(), format!("violations: {v:?}"))
        }),
        Check::new(9, "properties", "QC_{3,3}: C(W) metacyclic with Omega2 = W for normal W = C4 x C4", |caps| {
            let g = group("QC:3,3", caps)?;
            let (v, seen) = properties::normal_c4xc4_centralizers(&g, caps)?;
            verdict(v.is_empty() && seen > 0, format!("{seen} subgroups W; violations: {v:?}"))
        }),
        Check::new(9, "properties", "Q16 rank 2 system modulo Z(F) lies on D8", |caps| {
            let fs = systems("Q:4", caps)?;
            let f = fs.iter().find(|f| f.essential_rank() == 2).ok_or(Error::Precondition("no rank 2 system".into()))?;
            let z = fusion_center(f);
            let q = quotient_fusion(f, &z, caps)?;
            let d8 = group("D:3", caps)?;
            let iso = is_isomorphic(q.base(), &d8, caps)?.is_some();
            let sat = crate::fusion::is_saturated(&q).saturated;
            verdict(
                iso && sat && q.essential_rank() == 2,
                format!("|Z(F)| = {}, quotient order {}, rank {}", z.order(), q.base().order(), q.essential_rank()),
            )
        }),
    ]
}

/// Every check, in criterion order.
pub fn checks() -> Vec<Check> {
    let mut v = fusion_counts();
    v.extend(essential_rank());
    v.extend(odd_automorphisms());
    v.extend(table_row());
    v.extend(suzuki());
    v.extend(gl4());
    v.extend(xy());
    v.extend(metacyclic_fusion());
    v.extend(property_checks());
    v
}

/// Runs the checks selected by `only` (all when empty).
pub fn verify_paper(caps: &Caps, only: &[String]) -> Report {
    let selected: Vec<Check> = checks()
        .into_iter()
        .filter(|c| only.is_empty() || only.iter().any(|f| c.selected_by(f)))
        .collect();
    let scope = if only.is_empty() {
        "all checks; exhaustive order-2^n completeness needs an external group database export and is not run".into()
    } else {
        format!("only {}", only.join(", "))
    };
    Report {
        scope,
        results: selected.iter().map(|c| c.run(caps)).collect(),
    }
}
