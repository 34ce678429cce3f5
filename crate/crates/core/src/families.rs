//! Named 2-group families and their expected invariants.

use crate::error::{Error, Result};
use crate::field::F16;
use crate::group::{Group, Source};
use crate::presentation::{collect, PcPresentation, Word};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic,
    Cnm,
    Dihedral,
    Semidihedral,
    Quaternion,
    Modular,
    Wreathed,
    Qnm,
    QCnm,
    QDnm,
    QCstar,
    QDstar,
    X,
    Y,
    Q8wrC2,
    Suz,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Cyclic,
        Family::Cnm,
        Family::Dihedral,
        Family::Semidihedral,
        Family::Quaternion,
        Family::Modular,
        Family::Wreathed,
        Family::Qnm,
        Family::QCnm,
        Family::QDnm,
        Family::QCstar,
        Family::QDstar,
        Family::X,
        Family::Y,
        Family::Q8wrC2,
        Family::Suz,
    ];

    /// Name used in the text form.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::Cnm => "Cnm",
            Family::Dihedral => "D",
            Family::Semidihedral => "SD",
            Family::Quaternion => "Q",
            Family::Modular => "Mod",
            Family::Wreathed => "wr",
            Family::Qnm => "Qnm",
            Family::QCnm => "QC",
            Family::QDnm => "QD",
            Family::QCstar => "QCstar",
            Family::QDstar => "QDstar",
            Family::X => "X",
            Family::Y => "Y",
            Family::Q8wrC2 => "Q8wrC2",
            Family::Suz => "suz",
        }
    }

    fn arity(self) -> usize {
        match self {
            Family::Q8wrC2 | Family::Suz => 0,
            Family::Cnm
            | Family::Qnm
            | Family::QCnm
            | Family::QDnm
            | Family::QCstar
            | Family::QDstar => 2,
            _ => 1,
        }
    }
}

/// A family member: `Family` plus its integer parameters. Parameters are
/// exponents: `D:4` is the dihedral group of order 16, `QC:3,2` is
/// `Q8 x C4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<u32>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[u32]) -> Result<Self> {
        let spec = FamilySpec {
            family,
            params: params.to_vec(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn n(&self) -> u32 {
        self.params[0]
    }

    fn m(&self) -> u32 {
        self.params[1]
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.family;
        if self.params.len() != f.arity() {
            return Err(Error::ParamOutOfRange(format!(
                "{} takes {} parameter(s), got {}",
                f.tag(),
                f.arity(),
                self.params.len()
            )));
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::ParamOutOfRange(format!("{}: {what}", self)))
            }
        };
        match f {
            Family::Cyclic => need(self.n() >= 1, "needs n >= 1"),
            Family::Cnm => need(self.n() >= 1 && self.m() >= 1, "needs n, m >= 1"),
            Family::Dihedral => need(self.n() >= 2, "needs n >= 2"),
            Family::Semidihedral => need(self.n() >= 4, "needs n >= 4"),
            Family::Quaternion => need(self.n() >= 3, "needs n >= 3"),
            Family::Modular => need(self.n() >= 4, "needs n >= 4"),
            Family::Wreathed => need(self.n() >= 1, "needs n >= 1"),
            Family::Qnm => need(self.n() >= 3 && self.m() >= 3, "needs n, m >= 3"),
            Family::QCnm => need(self.n() >= 3 && self.m() >= 1, "needs n >= 3, m >= 1"),
            Family::QDnm => need(self.n() >= 3 && self.m() >= 2, "needs n >= 3, m >= 2"),
            Family::QCstar => need(self.n() >= 3 && self.m() >= 2, "needs n >= 3, m >= 2"),
            Family::QDstar => need(self.n() >= 3 && self.m() >= 3, "needs n >= 3, m >= 3"),
            Family::X | Family::Y => need(self.n() >= 6, "needs n >= 6"),
            Family::Q8wrC2 | Family::Suz => Ok(()),
        }
    }

    /// log2 of the group order.
    pub fn log_order(&self) -> u32 {
        match self.family {
            Family::Cyclic
            | Family::Dihedral
            | Family::Semidihedral
            | Family::Quaternion
            | Family::Modular
            | Family::X
            | Family::Y => self.n(),
            Family::Cnm | Family::Qnm | Family::QCnm | Family::QDnm => self.n() + self.m(),
            Family::QCstar | Family::QDstar => self.n() + self.m() - 1,
            Family::Wreathed => 2 * self.n() + 1,
            Family::Q8wrC2 => 7,
            Family::Suz => 6,
        }
    }

    pub fn order(&self) -> u64 {
        1u64 << self.log_order()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.tag())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", ps.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b)),
            None => (s, None),
        };
        let family = Family::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == name || (*f == Family::Suz && name == "Suz"))
            .ok_or_else(|| Error::ParamOutOfRange(format!("unknown family `{name}`")))?;
        let params = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::ParamOutOfRange(format!("bad parameter `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        FamilySpec::new(family, &params)
    }
}

/// Builds a family member, subject to the order cap.
pub fn build(spec: &FamilySpec, cap: usize) -> Result<Group> {
    spec.validate()?;
    let order = spec.order();
    if order > cap as u64 {
        return Err(Error::UnsupportedOrder {
            order: order.min(usize::MAX as u64) as usize,
            cap,
        });
    }
    let label = spec.to_string();
    let g = match spec.family {
        Family::Cyclic => collect(&cyclic_pres(spec.n()), cap)?,
        Family::Cnm => Group::direct_product(
            &collect(&cyclic_named("x", spec.n()), cap)?,
            &collect(&cyclic_named("y", spec.m()), cap)?,
            cap,
        )?,
        Family::Dihedral => collect(&dihedral(spec.n()), cap)?,
        Family::Semidihedral => collect(&semidihedral(spec.n()), cap)?,
        Family::Quaternion => collect(&quaternion(spec.n()), cap)?,
        Family::Modular => collect(&modular(spec.n()), cap)?,
        Family::Wreathed => collect(&wreathed(spec.n()), cap)?,
        Family::Qnm => Group::direct_product(
            &collect(&quaternion(spec.n()), cap)?,
            &collect(&quaternion(spec.m()), cap)?,
            cap,
        )?,
        Family::QCnm => Group::direct_product(
            &collect(&quaternion(spec.n()), cap)?,
            &collect(&cyclic_named("c", spec.m()), cap)?,
            cap,
        )?,
        Family::QDnm => Group::direct_product(
            &collect(&quaternion(spec.n()), cap)?,
            &collect(&dihedral(spec.m()), cap)?,
            cap,
        )?,
        Family::QCstar => {
            let q = collect(&quaternion(spec.n()), cap)?;
            let c = collect(&cyclic_named("c", spec.m()), cap)?;
            let zq = quaternion_center(&q, spec.n());
            let zc = c.pow(c.gen("c").expect("generator"), 1 << (spec.m() - 1));
            Group::central_product(&q, zq, &c, zc, cap)?
        }
        Family::QDstar => {
            let q = collect(&quaternion(spec.n()), cap)?;
            let d = collect(&dihedral(spec.m()), cap)?;
            let zq = quaternion_center(&q, spec.n());
            let zd = d.pow(d.gen("r").expect("generator"), 1 << (spec.m() - 2));
            Group::central_product(&q, zq, &d, zd, cap)?
        }
        Family::X => collect(&xy(spec.n(), true), cap)?,
        Family::Y => collect(&xy(spec.n(), false), cap)?,
        Family::Q8wrC2 => collect(&q8_wr_c2(), cap)?,
        Family::Suz => suz()?,
    };
    Ok(g.with_label(label))
}

fn quaternion_center(q: &Group, n: u32) -> usize {
    q.pow(q.gen("a").expect("generator"), 1 << (n - 2))
}

fn cyclic_pres(n: u32) -> PcPresentation {
    cyclic_named("x", n)
}

fn cyclic_named(name: &str, n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("C{}", 1u64 << n));
    p.gen(name, 1 << n);
    p
}

/// `<t, r | t^2 = r^(2^(n-1)) = 1, r^t = r^-1>`.
pub fn dihedral(n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("D{}", 1u64 << n));
    let t = p.gen("t", 2);
    let r = p.gen("r", 1 << (n - 1));
    p.conj(r, t, Word::gen(r, -1));
    p
}

/// `r^t = r^(2^(n-2) - 1)`.
pub fn semidihedral(n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("SD{}", 1u64 << n));
    let t = p.gen("t", 2);
    let r = p.gen("r", 1 << (n - 1));
    p.conj(r, t, Word::gen(r, (1 << (n - 2)) - 1));
    p
}

/// `<a, b | a^(2^(n-1)) = 1, b^2 = a^(2^(n-2)), a^b = a^-1>`.
pub fn quaternion(n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("Q{}", 1u64 << n));
    let b = p.gen("b", 2);
    let a = p.gen("a", 1 << (n - 1));
    p.power(b, Word::gen(a, 1 << (n - 2)));
    p.conj(a, b, Word::gen(a, -1));
    p
}

/// `<x, y | x^(2^(n-1)) = y^2 = 1, x^y = x^(2^(n-2)+1)>`.
pub fn modular(n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("Mod{n}"));
    let y = p.gen("y", 2);
    let x = p.gen("x", 1 << (n - 1));
    p.conj(x, y, Word::gen(x, (1 << (n - 2)) + 1));
    p
}

/// `C_(2^n) wr C2` with base `<a, b>` and `a^t = b`.
pub fn wreathed(n: u32) -> PcPresentation {
    let mut p = PcPresentation::new(format!("C{}wrC2", 1u64 << n));
    let t = p.gen("t", 2);
    let a = p.gen("a", 1 << n);
    let b = p.gen("b", 1 << n);
    p.conj(a, t, Word::gen(b, 1));
    p.conj(b, t, Word::gen(a, 1));
    p
}

/// `X_n` (`twisted`) or `Y_n`: `<a, b> = Q8`, `c` of order `2^(n-4)`
/// central in `<a, b, c>`, and `d` centralizing `<a, b>` with
/// `d^-1 c d = c^-1 a^2`, `d^2 = c^(2^(n-5))` for `X_n`, and
/// `d^-1 c d = c^-1`, `d^2 = a^2 c^(2^(n-5))` for `Y_n`.
pub fn xy(n: u32, twisted: bool) -> PcPresentation {
    let name = if twisted { "X" } else { "Y" };
    let mut p = PcPresentation::new(format!("{name}{n}"));
    let d = p.gen("d", 2);
    let b = p.gen("b", 2);
    let c = p.gen("c", 1 << (n - 4));
    let a = p.gen("a", 4);
    let z = 1i64 << (n - 5);
    if twisted {
        p.power(d, Word::gen(c, z));
        p.conj(c, d, Word::gen(c, -1).then(a, 2));
    } else {
        p.power(d, Word::gen(c, z).then(a, 2));
        p.conj(c, d, Word::gen(c, -1));
    }
    p.power(b, Word::gen(a, 2));
    p.conj(a, b, Word::gen(a, -1));
    p
}

/// `Q8 wr C2` with factors `<a1, b1>`, `<a2, b2>` swapped by `t`.
pub fn q8_wr_c2() -> PcPresentation {
    let mut p = PcPresentation::new("Q8wrC2");
    let t = p.gen("t", 2);
    let b1 = p.gen("b1", 2);
    let b2 = p.gen("b2", 2);
    let a1 = p.gen("a1", 4);
    let a2 = p.gen("a2", 4);
    p.power(b1, Word::gen(a1, 2));
    p.power(b2, Word::gen(a2, 2));
    p.conj(b1, t, Word::gen(b2, 1));
    p.conj(b2, t, Word::gen(b1, 1));
    p.conj(a1, t, Word::gen(a2, 1));
    p.conj(a2, t, Word::gen(a1, 1));
    p.conj(a1, b1, Word::gen(a1, -1));
    p.conj(a2, b2, Word::gen(a2, -1));
    p
}

/// Pairs `(α, β)` over F16 with `β + β^4 = α^5`, multiplied by
/// `(α, β)(γ, δ) = (α + γ, β + δ + α^4 γ)`.
pub fn suz() -> Result<Group> {
    let mut carrier = Vec::new();
    for a in F16::all() {
        for b in F16::all() {
            if b + b.pow(4) == a.pow(5) {
                carrier.push((a, b));
            }
        }
    }
    carrier.sort_by_key(|&(a, b)| (a.bits(), b.bits()));
    if carrier.len() != 64 || carrier[0] != (F16::ZERO, F16::ZERO) {
        return Err(Error::ConstructionInvalid(format!(
            "carrier has {} elements",
            carrier.len()
        )));
    }
    let index = |x: (F16, F16)| carrier.iter().position(|&y| y == x);
    let n = carrier.len();
    let mut table = vec![0u16; n * n];
    for (i, &(a, b)) in carrier.iter().enumerate() {
        for (j, &(c, d)) in carrier.iter().enumerate() {
            let prod = (a + c, b + d + a.pow(4) * c);
            let k = index(prod).ok_or_else(|| {
                Error::ConstructionInvalid("carrier is not closed under the product".into())
            })?;
            table[i * n + j] = k as u16;
        }
    }
    Group::from_table(n, table, Source::Construction, Vec::new(), "suz")
}

/// What a family member must look like.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFingerprint {
    pub order: u64,
    pub involutions: u64,
    pub p_rank: u32,
    /// Primes `q` for which an automorphism of order `q` exists.
    pub odd_orders: Vec<u32>,
}

pub fn expected_fingerprint(spec: &FamilySpec) -> Result<ExpectedFingerprint> {
    spec.validate()?;
    let p2 = |k: u32| 1u64 << k;
    let (involutions, rank, odd): (u64, u32, Vec<u32>) = match spec.family {
        Family::Cyclic => (1, 1, vec![]),
        Family::Cnm => (3, 2, if spec.n() == spec.m() { vec![3] } else { vec![] }),
        Family::Dihedral => {
            let n = spec.n();
            (p2(n - 1) + 1, 2, if n == 2 { vec![3] } else { vec![] })
        }
        Family::Semidihedral => (p2(spec.n() - 2) + 1, 2, vec![]),
        Family::Quaternion => (1, 1, if spec.n() == 3 { vec![3] } else { vec![] }),
        Family::Modular => (3, 2, vec![]),
        Family::Wreathed => (3 + p2(spec.n()), 2, vec![]),
        Family::Qnm => (3, 2, if spec.n() == 3 || spec.m() == 3 { vec![3] } else { vec![] }),
        Family::QCnm => (3, 2, if spec.n() == 3 { vec![3] } else { vec![] }),
        Family::QDnm => {
            let d_invs = if spec.m() == 2 { 3 } else { p2(spec.m() - 1) + 1 };
            // Q x V4 has an order-3 automorphism on the V4 factor
            let odd = if spec.n() == 3 || spec.m() == 2 { vec![3] } else { vec![] };
            (2 * (d_invs + 1) - 1, 3, odd)
        }
        Family::QCstar => (p2(spec.n() - 1) + 3, 2, if spec.n() == 3 { vec![3] } else { vec![] }),
        Family::QDstar => {
            let odd = match (spec.n(), spec.m()) {
                (3, 3) => vec![3, 5],
                (3, _) => vec![3],
                // Q_(2^n) * D8 is isomorphic to Q8 * D_(2^n)
                (_, 3) => vec![3],
                _ => vec![],
            };
            (p2(spec.m() - 1) + p2(spec.n() - 1) + 3, 2, odd)
        }
        Family::X | Family::Y => (3, 2, vec![3]),
        Family::Q8wrC2 => (11, 2, vec![3]),
        Family::Suz => (3, 2, vec![3, 5]),
    };
    Ok(ExpectedFingerprint {
        order: spec.order(),
        involutions,
        p_rank: rank,
        odd_orders: odd,
    })
}

/// Every family member of order at most `2^max_log`, at the parameter
/// ranges used by the classification catalogue.
pub fn catalogue(max_log: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    let mut push = |f: Family, ps: &[u32]| {
        if let Ok(s) = FamilySpec::new(f, ps) {
            if s.log_order() <= max_log {
                out.push(s);
            }
        }
    };
    for n in 1..=max_log {
        push(Family::Cyclic, &[n]);
        push(Family::Dihedral, &[n]);
        push(Family::Semidihedral, &[n]);
        push(Family::Quaternion, &[n]);
        push(Family::Modular, &[n]);
        push(Family::Wreathed, &[n]);
        push(Family::X, &[n]);
        push(Family::Y, &[n]);
        for m in 1..=max_log {
            if m >= n {
                push(Family::Cnm, &[n, m]);
            }
            if m >= n {
                push(Family::Qnm, &[n, m]);
            }
            push(Family::QCnm, &[n, m]);
            push(Family::QDnm, &[n, m]);
            push(Family::QCstar, &[n, m]);
            push(Family::QDstar, &[n, m]);
        }
    }
    push(Family::Q8wrC2, &[]);
    push(Family::Suz, &[]);
    out.sort();
    out
}
