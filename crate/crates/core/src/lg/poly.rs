//! Multivariate polynomials over `Q(ζ_r)` with named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::CycScalar;

pub type Monomial = Vec<u32>;

/// Graded reverse lexicographic order on exponent vectors.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Strips trailing primes: `x''` → `x`.
pub fn base_name(var: &str) -> &str {
    var.trim_end_matches('\'')
}

pub fn primed(var: &str) -> String {
    format!("{var}'")
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    order: u32,
    terms: BTreeMap<Monomial, CycScalar>,
}

impl Poly {
    /// Variables are sorted; duplicates are rejected.
    pub fn zero(vars: &[String], order: u32) -> Self {
        let mut v = vars.to_vec();
        v.sort();
        v.dedup();
        Poly {
            vars: v,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: CycScalar) -> Self {
        let mut p = Self::zero(vars, c.order());
        let n = p.vars.len();
        p.insert(vec![0; n], c);
        p
    }

    pub fn var(vars: &[String], order: u32, name: &str) -> Result<Self> {
        let mut p = Self::zero(vars, order);
        let i = p
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.insert(e, CycScalar::one(order));
        Ok(p)
    }

    pub fn monomial(vars: &[String], exps: Monomial, c: CycScalar) -> Self {
        let mut p = Self::zero(vars, c.order());
        assert_eq!(exps.len(), p.vars.len(), "exponent length");
        p.insert(exps, c);
        p
    }

    pub fn from_terms(
        vars: &[String],
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, CycScalar)>,
    ) -> Self {
        let mut p = Self::zero(vars, order);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn insert(&mut self, m: Monomial, c: CycScalar) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: CycScalar) {
        let cur = self.terms.remove(&m);
        let v = match cur {
            Some(x) => &x + &c,
            None => c,
        };
        self.insert(m, v);
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, m: &[u32]) -> CycScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.order))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Weighted degree of every term, if they all agree.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| {
            m.iter()
                .zip(weights)
                .map(|(&e, &w)| e as i64 * w)
                .sum::<i64>()
        });
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().max_by(|a, b| grevlex(a.0, b.0))
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &[String]) -> Result<Poly> {
        let target = Self::zero(vars, self.order);
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target.index_of(v).ok_or_else(|| {
                    Error::Parse(format!("variable `{v}` is not in the target ring"))
                })
            })
            .collect::<Result<_>>()?;
        let n = target.vars.len();
        let mut out = target;
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (k, &x) in m.iter().enumerate() {
                e[map[k]] = x;
            }
            out.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Drops variables whose exponent is zero in every term.
    pub fn trimmed(&self) -> Poly {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        let keep: Vec<usize> = used.iter().map(|v| self.index_of(v).unwrap()).collect();
        let mut out = Poly::zero(&used, self.order);
        for (m, c) in &self.terms {
            out.insert(keep.iter().map(|&i| m[i]).collect(), c.clone());
        }
        out
    }

    pub fn embed(&self, order: u32) -> Result<Poly> {
        let mut out = Poly::zero(&self.vars, order);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.embed(order)?);
        }
        Ok(out)
    }

    fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut all = self.vars.clone();
        all.extend(other.vars.iter().cloned());
        (
            self.with_vars(&all).expect("superset"),
            other.with_vars(&all).expect("superset"),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.vars != other.vars {
            let (a, b) = self.aligned(other);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&CycScalar::from_int(self.order, -1))
    }

    pub fn scale(&self, c: &CycScalar) -> Poly {
        let mut out = Poly::zero(&self.vars, self.order);
        for (m, x) in &self.terms {
            out.insert(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.vars != other.vars {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let mut out = Poly::zero(&self.vars, self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32], c: &CycScalar) -> Poly {
        let mut out = Poly::zero(&self.vars, self.order);
        for (m1, c1) in &self.terms {
            out.insert(m1.iter().zip(m).map(|(a, b)| a + b).collect(), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(&self.vars, CycScalar::one(self.order));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        let i = self
            .index_of(var)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{var}`")))?;
        let mut out = Poly::zero(&self.vars, self.order);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut e = m.clone();
                e[i] -= 1;
                out.insert(e, c * &CycScalar::from_int(self.order, m[i] as i64));
            }
        }
        Ok(out)
    }

    /// Substitutes `var ↦ c · var`.
    pub fn scale_variable(&self, var: &str, c: &CycScalar) -> Poly {
        let Some(i) = self.index_of(var) else {
            return self.clone();
        };
        let mut out = Poly::zero(&self.vars, self.order);
        for (m, x) in &self.terms {
            let f = c.pow(m[i] as i64).expect("nonzero power");
            out.insert(m.clone(), x * &f);
        }
        out
    }

    /// Replaces variable names via `f`, keeping exponents. The image names
    /// must be distinct.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Poly {
        let new_names: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        let mut out = Poly::zero(&new_names, self.order);
        assert_eq!(out.vars.len(), new_names.len(), "renaming merged variables");
        let pos: Vec<usize> = new_names.iter().map(|v| out.index_of(v).unwrap()).collect();
        for (m, c) in &self.terms {
            let mut e = vec![0; m.len()];
            for (k, &x) in m.iter().enumerate() {
                e[pos[k]] = x;
            }
            out.insert(e, c.clone());
        }
        out
    }

    /// Exact division by a polynomial; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (num, den) = self.aligned(divisor);
        let (lm, lc) = den.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = num.clone();
        let mut quot = Poly::zero(&num.vars, num.order);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !divides(&lm, &m) {
                return None;
            }
            let e: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let f = c.try_div(&lc).expect("nonzero leading coefficient");
            quot.add_term(e.clone(), f.clone());
            rem = rem.sub(&den.mul_monomial(&e, &f));
        }
        Some(quot)
    }

    /// `(W(x_1,…,x_{i-1},x'_i,…,x'_n) − W(x_1,…,x_i,x'_{i+1},…,x'_n)) / (x'_i − x_i)`
    /// over the ring with primed copies of every variable.
    pub fn difference_quotient(&self, i: usize) -> Poly {
        let n = self.vars.len();
        assert!(i < n, "variable index out of range");
        let mixed = |k: usize| {
            // variables with index >= k are primed
            self.rename(|v| {
                let j = self.index_of(v).unwrap();
                if j >= k {
                    primed(v)
                } else {
                    v.to_string()
                }
            })
        };
        let ring: Vec<String> = self
            .vars
            .iter()
            .flat_map(|v| [v.clone(), primed(v)])
            .collect();
        let up = mixed(i).with_vars(&ring).expect("ring");
        let down = mixed(i + 1).with_vars(&ring).expect("ring");
        let x = &self.vars[i];
        let step = Poly::var(&ring, self.order, &primed(x))
            .unwrap()
            .sub(&Poly::var(&ring, self.order, x).unwrap());
        up.sub(&down)
            .div_exact(&step)
            .expect("difference quotient divides exactly")
    }

    /// Parses `x^3 + y^3`, `2*x*y - 3/2 x^2`, `x'^2`. Coefficients are rational.
    pub fn parse(s: &str, order: u32) -> Result<Poly> {
        parse_poly(s, order)
    }

    fn fmt_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn monomial_string(&self, m: &[u32]) -> String {
        self.fmt_monomial(m)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grevlex(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mon = self.fmt_monomial(m);
            let mut coef = c.to_string();
            let single = c.as_rational().is_some();
            let negative = single && coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef = if single { coef } else { format!("({coef})") };
            match (coef.as_str(), mon.as_str()) {
                (c, "1") => write!(f, "{c}")?,
                ("1", m) => write!(f, "{m}")?,
                (c, m) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(z_{})[{}]", self.order, self.vars.join(","))
    }
}

fn parse_poly(s: &str, order: u32) -> Result<Poly> {
    let bad = |why: &str| Error::Parse(format!("{why} in polynomial `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut raw_terms: Vec<(i64, &str)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    let mut sign = 1;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
    }
    let mut seg = start;
    for i in start..=bytes.len() {
        if i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && i > seg && bytes[i - 1] != b'^')
        {
            let term = &compact[seg..i];
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            raw_terms.push((sign, term));
            if i < bytes.len() {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
            }
            seg = i + 1;
        }
    }
    let mut parsed: Vec<(BigRational, Vec<(String, u32)>)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for (sign, term) in raw_terms {
        let mut coef = BigRational::from_integer(sign.into());
        let mut powers = Vec::new();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            let digits = factor
                .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                .unwrap_or(factor.len());
            let (num, rest) = factor.split_at(digits);
            if !num.is_empty() {
                let q: BigRational = num.parse().map_err(|_| bad("malformed coefficient"))?;
                coef *= q;
            }
            if rest.is_empty() {
                continue;
            }
            let (name, exp) = match rest.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("malformed exponent"))?),
                None => (rest, 1),
            };
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && base_name(name)
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(bad(&format!("invalid variable `{name}`")));
            }
            names.push(name.to_string());
            powers.push((name.to_string(), exp));
        }
        parsed.push((coef, powers));
    }
    let mut p = Poly::zero(&names, order);
    for (coef, powers) in parsed {
        let mut e = vec![0; p.nvars()];
        for (name, k) in powers {
            e[p.index_of(&name).unwrap()] += k;
        }
        p.add_term(e, CycScalar::from_rational(order, coef));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^3 + y^3").to_string(), "x^3 + y^3");
        assert_eq!(p("y^3+x^3").vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(p("2x*y - 3/2*x^2").to_string(), "-3/2*x^2 + 2*x*y");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("-x'^2 + 1").to_string(), "-x'^2 + 1");
        assert!(Poly::parse("x^", 1).is_err());
        assert!(Poly::parse("3 +", 1).is_err());
        assert!(Poly::parse("", 1).is_err());
    }

    #[test]
    fn derivative_and_difference_quotient() {
        assert_eq!(p("x^3").partial_derivative("x").unwrap(), p("3*x^2"));
        let q = p("x^3").difference_quotient(0);
        assert_eq!(q, p("x'^2 + x'*x + x^2").with_vars(q.vars()).unwrap());
        let w = p("x^2 + y^2");
        let q1 = w.difference_quotient(1);
        assert_eq!(q1.trimmed(), p("y' + y"));
        let q0 = w.difference_quotient(0);
        assert_eq!(q0.trimmed(), p("x' + x"));
    }

    #[test]
    fn difference_quotients_telescope() {
        for w in ["x^3 + y^3", "x^2*y + y^4", "x^4 + x*y^2 + z^3"] {
            let w = p(w);
            let ring: Vec<String> = w
                .vars()
                .iter()
                .flat_map(|v| [v.clone(), primed(v)])
                .collect();
            let mut sum = Poly::zero(&ring, 1);
            for (i, v) in w.vars().iter().enumerate() {
                let step = Poly::var(&ring, 1, &primed(v))
                    .unwrap()
                    .sub(&Poly::var(&ring, 1, v).unwrap());
                sum = sum.add(&w.difference_quotient(i).mul(&step));
            }
            let wp = w.rename(primed).with_vars(&ring).unwrap();
            assert_eq!(sum, wp.sub(&w.with_vars(&ring).unwrap()));
        }
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2 - y^2").div_exact(&p("x - y")), Some(p("x + y")));
        assert_eq!(p("x^2 + 1").div_exact(&p("x - 1")), None);
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(grevlex(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(grevlex(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(grevlex(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn weighted_degree() {
        let w = p("x^3 + y^6");
        assert_eq!(w.weighted_degree(&[2, 1]), Some(6));
        assert_eq!(w.weighted_degree(&[1, 1]), None);
    }
}
