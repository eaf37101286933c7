//! Multivariate polynomials `k[x1..xn]` and their derivations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact_algebra::scalar::{Field, Scalar};

/// Exponent vector of a monomial; its length is the ring arity.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// The commutative base algebra `A = k[x1..xn]` (`n = 0` means `A = k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    field: Field,
    vars: Vec<String>,
}

impl BaseRing {
    pub fn new(field: Field, vars: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::config(format!(
                    "invalid or duplicate variable name '{v}'"
                )));
            }
        }
        Ok(BaseRing { field, vars })
    }

    /// `A = k`.
    pub fn ground(field: Field) -> Self {
        BaseRing {
            field,
            vars: Vec::new(),
        }
    }

    pub fn with_vars(field: Field, vars: &[&str]) -> Self {
        BaseRing::new(field, vars.iter().map(|s| s.to_string()).collect())
            .expect("valid variable names")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.field.one(), self.nvars())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(c, self.nvars())
    }

    pub fn int(&self, v: i64) -> Poly {
        Poly::constant(self.field.from_i64(v), self.nvars())
    }

    /// The generator `x_j`.
    pub fn var(&self, j: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[j] = 1;
        Poly::monomial(self.field.one(), e)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Checks that `p > cutoff` in positive characteristic over a polynomial base.
    pub fn check_cutoff(&self, cutoff: usize) -> Result<()> {
        if let Field::Prime(p) = self.field {
            if self.nvars() > 0 && (p as usize) <= cutoff {
                return Err(Error::config(format!(
                    "characteristic {p} must exceed the degree cutoff {cutoff} over a polynomial base"
                )));
            }
        }
        Ok(())
    }
}

/// A polynomial with exact coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Poly::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(c: Scalar, exps: Monomial) -> Self {
        let mut p = Poly::zero(c.field(), exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The constant term, or `None` if the polynomial is not constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.iter().all(|&e| e == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; `None` encodes the `-inf` degree of zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    /// `Some(d)` if every term has total degree `d`; zero is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degs = self.terms.keys().map(|m| monomial_degree(m));
        match degs.next() {
            None => Some(None),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(Some(d))
                } else {
                    None
                }
            }
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn partial(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if m[j] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[j] -= 1;
            out.add_term(e, c * &self.field.from_i64(m[j] as i64));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::constant(self.field.one(), self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m) {
                t = &t * &x.pow(*e);
            }
            acc += &t;
        }
        acc
    }

    fn check_compat(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
    }

    /// Renders with the given variable names, terms in descending monomial order.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let is_const = m.iter().all(|&e| e == 0);
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (j, &e) in m.iter().enumerate() {
                let name = names
                    .get(j)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", j + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_compat(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_compat(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_compat(rhs);
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-self.field.one())
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

/// A `k`-derivation of `A`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    images: Vec<Poly>,
}

impl Derivation {
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        let n = images.len();
        if images.iter().any(|p| p.nvars() != n) {
            return Err(Error::config(
                "derivation images must live in the ring they differentiate",
            ));
        }
        Ok(Derivation { images })
    }

    pub fn zero(ring: &BaseRing) -> Self {
        Derivation {
            images: vec![ring.zero(); ring.nvars()],
        }
    }

    /// `d/dx_j`.
    pub fn partial(ring: &BaseRing, j: usize) -> Self {
        let mut images = vec![ring.zero(); ring.nvars()];
        images[j] = ring.one();
        Derivation { images }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// `d(p) = sum_j (dp/dx_j) d(x_j)`, with an arity check.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.nvars() {
            return Err(Error::config(format!(
                "arity mismatch: derivation on {} variables applied to a polynomial in {}",
                self.nvars(),
                p.nvars()
            )));
        }
        Ok(self.act(p))
    }

    /// Unchecked variant of [`Derivation::apply`] for data validated upstream.
    pub fn act(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.field(), p.nvars());
        for (j, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let dp = p.partial(j);
            if !dp.is_zero() {
                out = &out + &(&dp * img);
            }
        }
        out
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `f * D`.
    pub fn times(&self, f: &Poly) -> Derivation {
        Derivation {
            images: self.images.iter().map(|p| f * p).collect(),
        }
    }

    /// `[D1, D2] = D1 D2 - D2 D1`, evaluated on generators.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        Derivation {
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(d1x, d2x)| &self.act(d2x) - &other.act(d1x))
                .collect(),
        }
    }

    /// The degree shift `s` with `deg D(x_j) = 1 + s` for every nonzero image,
    /// when all images are homogeneous and agree.
    pub fn degree_shift(&self) -> Option<Option<i64>> {
        let mut shift = None;
        for img in &self.images {
            match img.homogeneous_degree()? {
                None => {}
                Some(d) => {
                    let s = d as i64 - 1;
                    if shift.is_some_and(|t| t != s) {
                        return None;
                    }
                    shift = Some(s);
                }
            }
        }
        Some(shift)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (j, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let name = names
                .get(j)
                .cloned()
                .unwrap_or_else(|| format!("x{}", j + 1));
            parts.push(format!("({})*d/d{}", img.display_with(names), name));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qx() -> BaseRing {
        BaseRing::with_vars(Field::Rational, &["x"])
    }

    #[test]
    fn d_dx_of_square() {
        let r = qx();
        let x = r.var(0);
        let d = Derivation::partial(&r, 0);
        assert_eq!(d.apply(&x.pow(2)).unwrap(), &r.int(2) * &x);
    }

    #[test]
    fn zero_derivation_kills_everything() {
        let r = qx();
        let p = &r.var(0).pow(5) + &r.int(3);
        assert!(Derivation::zero(&r).apply(&p).unwrap().is_zero());
    }

    #[test]
    fn euler_operator_on_cubic() {
        // x d/dx (x^3 + 1) = 3 x^3, expanded term by term.
        let r = qx();
        let x = r.var(0);
        let euler = Derivation::new(vec![x.clone()]).unwrap();
        let p = &x.pow(3) + &r.one();
        let expected: Poly = p.terms().fold(r.zero(), |acc, (m, c)| {
            let k = m[0] as i64;
            &acc + &Poly::monomial(c * &r.field().from_i64(k), m.clone())
        });
        assert_eq!(euler.apply(&p).unwrap(), expected);
        assert_eq!(expected, &r.int(3) * &x.pow(3));
    }

    #[test]
    fn arity_mismatch_is_a_config_error() {
        let r = qx();
        let r2 = BaseRing::with_vars(Field::Rational, &["x", "y"]);
        let d = Derivation::partial(&r, 0);
        assert!(matches!(d.apply(&r2.var(1)), Err(Error::Config(_))));
    }

    #[test]
    fn commutator_of_euler_and_d() {
        let r = qx();
        let x = r.var(0);
        let euler = Derivation::new(vec![x]).unwrap();
        let d = Derivation::partial(&r, 0);
        // [x d, d] = -d
        let c = euler.commutator(&d);
        assert_eq!(c.images()[0], r.int(-1));
    }

    #[test]
    fn display_is_readable() {
        let r = BaseRing::with_vars(Field::Rational, &["x", "y"]);
        let p = &(&r.int(2) * &r.var(0).pow(2)) - &(&r.var(0) * &r.var(1));
        let p = &p + &r.int(-1);
        assert_eq!(p.display_with(r.vars()), "2*x^2 - x*y - 1");
    }
}
