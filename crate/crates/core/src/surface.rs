//! Invariants of closed r-spin surfaces.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lambda_frobenius::LambdaFrobenius;
use crate::scalars::{gcd, CycScalar};
use crate::superlinalg::SuperMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RSpinTorus {
    pub r: u32,
    pub a: u32,
    pub b: u32,
}

impl RSpinTorus {
    pub fn new(r: u32, a: i64, b: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parse("r must be positive".into()));
        }
        let m = r as i64;
        Ok(RSpinTorus {
            r,
            a: a.rem_euclid(m) as u32,
            b: b.rem_euclid(m) as u32,
        })
    }
}

impl fmt::Display for RSpinTorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "torus r={} a={} b={}", self.r, self.a, self.b)
    }
}

impl FromStr for RSpinTorus {
    type Err = Error;

    /// `torus r=8 a=4 b=6`
    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_fields(s, "torus")?;
        let r = get_int(&fields, "r", s)?;
        let a = get_int(&fields, "a", s)?;
        let b = get_int(&fields, "b", s)?;
        if r <= 0 {
            return Err(Error::Parse(format!("r must be positive in `{s}`")));
        }
        RSpinTorus::new(r as u32, a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RSpinClosedSurface {
    pub r: u32,
    pub genus: u32,
    pub handles: Vec<(u32, u32)>,
}

impl RSpinClosedSurface {
    pub fn new(r: u32, handles: &[(i64, i64)]) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parse("r must be positive".into()));
        }
        let m = r as i64;
        Ok(RSpinClosedSurface {
            r,
            genus: handles.len() as u32,
            handles: handles
                .iter()
                .map(|&(a, b)| (a.rem_euclid(m) as u32, b.rem_euclid(m) as u32))
                .collect(),
        })
    }

    /// `r | 2g - 2`.
    pub fn is_admissible(&self) -> bool {
        (2 * self.genus as i64 - 2).rem_euclid(self.r as i64) == 0
    }
}

impl fmt::Display for RSpinClosedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hol: Vec<String> = self
            .handles
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(
            f,
            "surface r={} genus={} holonomies=[{}]",
            self.r,
            self.genus,
            hol.join(",")
        )
    }
}

impl FromStr for RSpinClosedSurface {
    type Err = Error;

    /// `surface r=2 genus=2 holonomies=[(0,1),(1,1)]`
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        let body = s
            .trim()
            .strip_prefix("surface")
            .ok_or_else(|| bad("expected `surface`"))?;
        let (head, hol) = match body.find("holonomies=") {
            Some(i) => (&body[..i], Some(&body[i + "holonomies=".len()..])),
            None => (body, None),
        };
        let fields = parse_fields(head, "")?;
        let r = get_int(&fields, "r", s)?;
        if r <= 0 {
            return Err(bad("r must be positive"));
        }
        let handles = match hol {
            Some(h) => parse_pairs(h).ok_or_else(|| bad("malformed holonomies"))?,
            None => Vec::new(),
        };
        if let Some(g) = fields.get("genus") {
            let g: usize = g.parse().map_err(|_| bad("malformed genus"))?;
            if hol.is_none() && g > 0 {
                return Err(bad("missing holonomies"));
            }
            if g != handles.len() {
                return Err(bad("genus does not match the number of holonomy pairs"));
            }
        }
        RSpinClosedSurface::new(r as u32, &handles)
    }
}

fn parse_fields(s: &str, keyword: &str) -> Result<BTreeMap<String, String>> {
    let mut tokens = s.split_whitespace();
    if !keyword.is_empty() && tokens.next() != Some(keyword) {
        return Err(Error::Parse(format!("expected `{keyword}` in `{s}`")));
    }
    let mut out = BTreeMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn get_int(fields: &BTreeMap<String, String>, key: &str, src: &str) -> Result<i64> {
    fields
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing `{key}` in `{src}`")))?
        .parse()
        .map_err(|_| Error::Parse(format!("malformed `{key}` in `{src}`")))
}

fn parse_pairs(s: &str) -> Option<Vec<(i64, i64)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let inner = inner.strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split("),(")
        .map(|p| {
            let (a, b) = p.split_once(',')?;
            Some((a.parse().ok()?, b.parse().ok()?))
        })
        .collect()
}

/// Positive divisors of `r` in increasing order.
pub fn divisors(r: u32) -> Vec<u32> {
    (1..=r).filter(|d| r % d == 0).collect()
}

/// `gcd(a, b, r)`, so that `T(0,0)` is represented by `r`.
pub fn torus_normal_form(t: &RSpinTorus) -> u32 {
    gcd(gcd(t.a as u64, t.b as u64), t.r as u64) as u32
}

fn check_r(alg: &LambdaFrobenius, r: u32) -> Result<()> {
    if alg.r() != r {
        return Err(Error::RMismatch {
            algebra: alg.r(),
            surface: r,
        });
    }
    Ok(())
}

/// `p_{-a} ∘ (N_{-a}^{1-b} ⊗ 1) ∘ c_{-a}`.
pub fn evaluate_torus(alg: &LambdaFrobenius, t: &RSpinTorus) -> Result<CycScalar> {
    check_r(alg, t.r)?;
    let a = -(t.a as i64);
    Ok(alg.loop_trace(a, &alg.nakayama_pow(a, 1 - t.b as i64)))
}

/// Which leg of the saddle receives the Nakayama insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HandleSplitting {
    /// `μ_{a,c-a-1} (N_a^{1-b} ⊗ 1) Δ_{a,c-a-1}`
    #[default]
    Left,
    /// `μ_{c-a-1,a} (1 ⊗ N_a^{1-b}) Δ_{c-a-1,a}`
    Right,
}

/// The handle operator `C_c → C_{c-2}` for holonomies `(a, b)`.
pub fn handle_operator(
    alg: &LambdaFrobenius,
    c: i64,
    a: i64,
    b: i64,
    splitting: HandleSplitting,
) -> SuperMap {
    let twist = alg.nakayama_pow(a, 1 - b);
    let rest = c - a - 1;
    let id = SuperMap::identity(alg.order(), alg.space(rest));
    let composite = match splitting {
        HandleSplitting::Left => alg
            .mu(a, rest)
            .compose(&twist.tensor(&id))
            .and_then(|m| m.compose(alg.delta(a, rest))),
        HandleSplitting::Right => alg
            .mu(rest, a)
            .compose(&id.tensor(&twist))
            .and_then(|m| m.compose(alg.delta(rest, a))),
    };
    composite.expect("handle operator shapes")
}

pub fn evaluate_surface(alg: &LambdaFrobenius, s: &RSpinClosedSurface) -> Result<CycScalar> {
    evaluate_surface_with(alg, s, HandleSplitting::Left)
}

/// `ε ∘ K_{a_g,b_g} ∘ … ∘ K_{a_1,b_1} ∘ η`.
pub fn evaluate_surface_with(
    alg: &LambdaFrobenius,
    s: &RSpinClosedSurface,
    splitting: HandleSplitting,
) -> Result<CycScalar> {
    check_r(alg, s.r)?;
    if !s.is_admissible() {
        return Err(Error::Inadmissible(format!(
            "r={} does not divide 2g-2={}",
            s.r,
            2 * s.genus as i64 - 2
        )));
    }
    let mut state = alg.eta().clone();
    let mut c = 1i64;
    for &(a, b) in &s.handles {
        let k = handle_operator(alg, c, a as i64, b as i64, splitting);
        state = k.compose(&state)?;
        c -= 2;
    }
    debug_assert_eq!(alg.idx(c), alg.idx(-1));
    Ok(alg
        .eps()
        .compose(&state)?
        .as_scalar()
        .expect("closed surface gives a scalar"))
}

/// `d ↦ T(d, 0)` for every positive divisor `d` of `r`.
pub fn all_torus_invariants(alg: &LambdaFrobenius) -> BTreeMap<u32, CycScalar> {
    let r = alg.r();
    divisors(r)
        .into_iter()
        .map(|d| {
            let t = RSpinTorus::new(r, d as i64, 0).expect("positive r");
            (d, evaluate_torus(alg, &t).expect("same r"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_frobenius::trivial;

    #[test]
    fn normal_forms() {
        let nf = |r, a, b| torus_normal_form(&RSpinTorus::new(r, a, b).unwrap());
        assert_eq!(nf(8, 4, 6), 2);
        assert_eq!(nf(5, 0, 0), 5);
        assert_eq!(nf(6, 2, 3), 1);
        assert_eq!(nf(6, -2, 0), 2);
    }

    #[test]
    fn parse_torus_and_surface() {
        let t: RSpinTorus = "torus r=8 a=4 b=6".parse().unwrap();
        assert_eq!(t, RSpinTorus::new(8, 4, 6).unwrap());
        assert_eq!(t.to_string().parse::<RSpinTorus>().unwrap(), t);
        let s: RSpinClosedSurface = "surface r=2 genus=2 holonomies=[(0,1),(1,1)]"
            .parse()
            .unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.handles, vec![(0, 1), (1, 1)]);
        assert_eq!(s.to_string().parse::<RSpinClosedSurface>().unwrap(), s);
        assert!("surface r=2 genus=3 holonomies=[(0,1)]"
            .parse::<RSpinClosedSurface>()
            .is_err());
        assert!("torus r=2 a=1".parse::<RSpinTorus>().is_err());
        assert!("torus r=0 a=1 b=0".parse::<RSpinTorus>().is_err());
    }

    #[test]
    fn trivial_algebra_values() {
        let alg = trivial(6, 1);
        let table = all_torus_invariants(&alg);
        assert_eq!(table.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert!(table.values().all(CycScalar::is_one));
        let one = trivial(1, 1);
        let s = RSpinClosedSurface::new(1, &[(0, 0), (0, 0)]).unwrap();
        assert!(evaluate_surface(&one, &s).unwrap().is_one());
    }

    #[test]
    fn admissibility_and_r_mismatch() {
        let alg = trivial(3, 1);
        let s = RSpinClosedSurface::new(3, &[(0, 0), (0, 0)]).unwrap();
        assert!(matches!(
            evaluate_surface(&alg, &s),
            Err(Error::Inadmissible(_))
        ));
        let t = RSpinTorus::new(4, 0, 0).unwrap();
        assert_eq!(
            evaluate_torus(&alg, &t),
            Err(Error::RMismatch {
                algebra: 3,
                surface: 4
            })
        );
        let sphere = RSpinClosedSurface::new(2, &[]).unwrap();
        assert!(sphere.is_admissible());
        assert!(!RSpinClosedSurface::new(3, &[]).unwrap().is_admissible());
    }
}
