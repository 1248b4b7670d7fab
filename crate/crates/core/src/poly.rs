//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable rings differ: {left:?} vs {right:?}")]
    RingMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{0} is not a valid coefficient")]
    BadCoefficient(String),
}

pub type Exponents = Vec<u32>;

/// Exact coefficients.
pub type Rational = BigRational;

/// A polynomial over `Q` in a fixed, named set of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-2/5"` and the like.
pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::BadCoefficient(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name)?;
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Exponents, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
        p.add_term(exps, c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::RingMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `∂/∂(var)`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * rational(i64::from(e[var])));
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; all images share one target ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.vars.clone();
        for im in images {
            first.check_ring(im)?;
        }
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut m = Self::constant(&target, c.clone());
            for (im, &k) in images.iter().zip(e) {
                if k > 0 {
                    m = m.try_mul(&im.pow(k))?;
                }
            }
            out = out.try_add(&m)?;
        }
        Ok(out)
    }

    /// The same polynomial with its variables renamed position by position.
    pub fn with_vars<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, PolyError> {
        if names.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: names.len(),
            });
        }
        Ok(Self {
            vars: names.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        })
    }

    /// Moves into `target` through a name map; unmapped names keep their name.
    pub fn rename<S: AsRef<str>>(
        &self,
        map: &BTreeMap<String, String>,
        target: &[S],
    ) -> Result<Self, PolyError> {
        let images = self
            .vars
            .iter()
            .map(|v| {
                let name = map.get(v).unwrap_or(v);
                Poly::var(target, name)
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.substitute(&images)
    }

    /// Reduction mod `p`, if no denominator is divisible by `p`.
    pub fn mod_p(&self, p: u64) -> Option<ModPPoly> {
        let pb = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let num = (c.numer() % &pb + &pb) % &pb;
                let den = (c.denom() % &pb + &pb) % &pb;
                let num = num.to_u64()?;
                let den = den.to_u64()?;
                if den == 0 {
                    return None;
                }
                Some((e.clone(), num * inv_mod(den, p) % p))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ModPPoly {
            p,
            terms: terms.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// A polynomial reduced modulo a small prime, for fast evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPPoly {
    p: u64,
    terms: Vec<(Exponents, u64)>,
}

impl ModPPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates at `point`, using a table of powers `pows[var][k] = x_var^k`.
    pub fn eval_with(&self, pows: &[Vec<u64>]) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = m * pows[v][k as usize] % p;
                }
            }
            acc = (acc + m) % p;
        }
        acc
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let pows = power_table(point, self.max_exponent(), self.p);
        self.eval_with(&pows)
    }
}

pub fn power_table(point: &[u64], max_exp: u32, p: u64) -> Vec<Vec<u64>> {
    point
        .iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(max_exp as usize + 1);
            let mut acc = 1 % p;
            for _ in 0..=max_exp {
                row.push(acc);
                acc = acc * (x % p) % p;
            }
            row
        })
        .collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first, then reverse lexicographic within a degree.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| match k {
                    1 => self.vars[v].clone(),
                    _ => format!("{}^{k}", self.vars[v]),
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let body = mono.join("*");
            match (abs.is_one(), body.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: [&str; 2] = ["s", "t"];

    #[test]
    fn arithmetic_and_display() {
        let s = Poly::var(&V, "s").unwrap();
        let t = Poly::var(&V, "t").unwrap();
        let p = &(&s + &t).pow(2) - &Poly::one(&V);
        assert_eq!(p.to_string(), "s^2 + 2*s*t + t^2 - 1");
        assert_eq!(p.derivative(0).to_string(), "2*s + 2*t");
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert!(!p.is_homogeneous(2));
    }

    #[test]
    fn substitution() {
        let s = Poly::var(&V, "s").unwrap();
        let t = Poly::var(&V, "t").unwrap();
        let p = &s * &t;
        let w = ["u"];
        let u = Poly::var(&w, "u").unwrap();
        let q = p.substitute(&[u.clone(), u.pow(2)]).unwrap();
        assert_eq!(q, u.pow(3));
    }

    #[test]
    fn rationals_and_mod_p() {
        assert_eq!(
            parse_rational("-2/4").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let half = Poly::constant(&V, parse_rational("1/2").unwrap());
        assert_eq!(half.mod_p(7).unwrap().eval(&[0, 0]), 4);
        assert!(half.mod_p(2).is_none());
        let neg = Poly::constant(&V, rational(-1));
        assert_eq!(neg.mod_p(5).unwrap().eval(&[1, 1]), 4);
    }
}
