//! The skew enveloping algebra of the free algebroid: words in the
//! generators with coefficients in `A`, subject to `s f = f s + a(s)(f)`.
//!
//! Elements are kept in normal order, every coefficient to the left of
//! every generator, so a product is normalized by moving coefficients
//! leftwards through words.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::{
    parse_expression, BaseRing, Derivation, ExprTarget, Field, Poly, Scalar,
};
use crate::free_lie::lyndon::Word;

/// `sum f_w w` in normal order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SkewElement {
    terms: BTreeMap<Word, Poly>,
}

impl SkewElement {
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[usize]) -> Option<&Poly> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree: the longest word present.
    pub fn word_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    fn add_term(&mut self, w: Word, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = &*e + &f;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }
}

/// A factor of a formal product: a coefficient or a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkewFactor {
    Coefficient(Poly),
    Generator(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewAlgebra {
    ring: BaseRing,
    names: Vec<String>,
    anchors: Vec<Derivation>,
}

impl SkewAlgebra {
    pub fn new(ring: &BaseRing, names: Vec<String>, anchors: Vec<Derivation>) -> Result<Self> {
        if names.len() != anchors.len() {
            return Err(Error::input("one anchor per generator is required"));
        }
        if anchors.iter().any(|d| d.nvars() != ring.nvars()) {
            return Err(Error::config("anchor derivation has the wrong arity"));
        }
        Ok(SkewAlgebra {
            ring: ring.clone(),
            names,
            anchors,
        })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn anchors(&self) -> &[Derivation] {
        &self.anchors
    }

    pub fn zero(&self) -> SkewElement {
        SkewElement::default()
    }

    pub fn coefficient(&self, f: Poly) -> SkewElement {
        let mut out = SkewElement::default();
        out.add_term(Vec::new(), f);
        out
    }

    pub fn one(&self) -> SkewElement {
        self.coefficient(self.ring.one())
    }

    pub fn generator(&self, s: usize) -> SkewElement {
        let mut out = SkewElement::default();
        out.add_term(vec![s], self.ring.one());
        out
    }

    pub fn add(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        let mut out = u.clone();
        for (w, f) in &v.terms {
            out.add_term(w.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        let mut out = u.clone();
        for (w, f) in &v.terms {
            out.add_term(w.clone(), -f);
        }
        out
    }

    /// `w f` in normal order: peel the last letter `s` off `w` and use
    /// `s f = f s + a(s)(f)`.
    fn move_left(&self, w: &[usize], f: &Poly, out: &mut Vec<(Poly, Word)>) {
        if f.is_zero() {
            return;
        }
        match w.split_last() {
            None => out.push((f.clone(), Vec::new())),
            Some((&s, rest)) => {
                let start = out.len();
                self.move_left(rest, f, out);
                for (_, word) in &mut out[start..] {
                    word.push(s);
                }
                self.move_left(rest, &self.anchors[s].act(f), out);
            }
        }
    }

    pub fn mul(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        let mut out = SkewElement::default();
        for (w, f) in &u.terms {
            for (x, g) in &v.terms {
                let mut moved = Vec::new();
                self.move_left(w, g, &mut moved);
                for (h, mut word) in moved {
                    word.extend_from_slice(x);
                    out.add_term(word, f * &h);
                }
            }
        }
        out
    }

    /// Normal form of a formal product of factors.
    pub fn product(&self, factors: &[SkewFactor]) -> SkewElement {
        factors.iter().fold(self.one(), |acc, fac| {
            let x = match fac {
                SkewFactor::Coefficient(p) => self.coefficient(p.clone()),
                SkewFactor::Generator(s) => self.generator(*s),
            };
            self.mul(&acc, &x)
        })
    }

    /// Normal form of a formal sum of products.
    pub fn normal_form(&self, terms: &[Vec<SkewFactor>]) -> SkewElement {
        terms
            .iter()
            .fold(self.zero(), |acc, t| self.add(&acc, &self.product(t)))
    }

    /// The action on `A` through the anchor: generators act as their
    /// derivations, the rightmost first.
    pub fn act(&self, u: &SkewElement, f: &Poly) -> Poly {
        let mut out = self.ring.zero();
        for (w, c) in &u.terms {
            let mut g = f.clone();
            for &s in w.iter().rev() {
                g = self.anchors[s].act(&g);
            }
            out = &out + &(c * &g);
        }
        out
    }

    /// `eps(u) = u(1)`.
    pub fn augmentation(&self, u: &SkewElement) -> Poly {
        self.act(u, &self.ring.one())
    }

    /// Membership in the left ideal generated by the generators: every word
    /// has length at least one.
    pub fn in_augmentation_ideal(&self, u: &SkewElement) -> bool {
        u.terms.keys().all(|w| !w.is_empty())
    }

    pub fn display(&self, u: &SkewElement) -> String {
        if u.is_zero() {
            return "0".to_string();
        }
        let vars = self.ring.vars();
        let mut entries: Vec<(&Word, &Poly)> = u.terms.iter().collect();
        entries.sort_by(|a, b| (b.0.len(), a.0).cmp(&(a.0.len(), b.0)));
        let mut out = String::new();
        for (k, (w, f)) in entries.into_iter().enumerate() {
            let word = w
                .iter()
                .map(|&s| self.names[s].as_str())
                .collect::<Vec<_>>()
                .join("*");
            let coeff = f.display_with(vars);
            let compound = f.num_terms() > 1;
            let neg = !compound && coeff.starts_with('-');
            let mag = if neg { coeff[1..].to_string() } else { coeff };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let term = match (w.is_empty(), mag.as_str()) {
                (true, _) if compound && k > 0 => format!("({mag})"),
                (true, _) => mag,
                (false, "1") => word,
                (false, _) if compound => format!("({mag})*{word}"),
                (false, _) => format!("{mag}*{word}"),
            };
            out.push_str(&term);
        }
        out
    }

    /// Checks that `sum_s u_s s = 0` forces every `u_s = 0` on the part of
    /// the algebra with words of length `< max_len` and coefficients of
    /// degree `<= max_degree`: the map `(u_s) -> sum u_s s` has full rank on
    /// the monomial basis.
    pub fn generators_free_on(&self, max_len: usize, max_degree: u32) -> bool {
        let q = self.names.len();
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut frontier = words.clone();
        for _ in 1..max_len {
            frontier = frontier
                .iter()
                .flat_map(|w| (0..q).map(move |s| [w.as_slice(), &[s]].concat()))
                .collect();
            words.extend(frontier.iter().cloned());
        }
        let monos: Vec<Poly> = (0..=max_degree)
            .flat_map(|d| crate::exact_algebra::monomials_of_degree(self.ring.nvars(), d))
            .map(|m| Poly::monomial(self.ring.field().one(), m))
            .collect();
        let mut columns: BTreeMap<(Word, Vec<u32>), usize> = BTreeMap::new();
        let mut cols = Vec::new();
        for s in 0..q {
            for w in &words {
                for m in &monos {
                    let u = self.mul(
                        &self.mul(&self.coefficient(m.clone()), &self.word(w)),
                        &self.generator(s),
                    );
                    let mut col = crate::exact_algebra::SparseVec::new();
                    for (word, f) in &u.terms {
                        for (mono, c) in f.terms() {
                            let n = columns.len();
                            let idx = *columns.entry((word.clone(), mono.clone())).or_insert(n);
                            col.insert(idx, c.clone());
                        }
                    }
                    cols.push(col);
                }
            }
        }
        let m = crate::exact_algebra::ExactMatrix::from_columns(
            self.ring.field(),
            columns.len(),
            &cols,
        );
        m.rank() == cols.len()
    }

    pub fn word(&self, w: &[usize]) -> SkewElement {
        let mut out = SkewElement::default();
        out.add_term(w.to_vec(), self.ring.one());
        out
    }
}

/// Expressions in generators and ring variables, e.g. `s*x - x*s`.
impl ExprTarget for SkewAlgebra {
    type Value = SkewElement;

    fn field(&self) -> Field {
        self.ring.field()
    }

    fn scalar(&self, c: Scalar) -> SkewElement {
        self.coefficient(self.ring.constant(c))
    }

    fn ident(&self, name: &str) -> Result<SkewElement> {
        if let Some(s) = self.names.iter().position(|n| n == name) {
            return Ok(self.generator(s));
        }
        self.ring
            .var_index(name)
            .map(|j| self.coefficient(self.ring.var(j)))
            .ok_or_else(|| Error::input(format!("'{name}' is neither a generator nor a variable")))
    }

    fn add(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        SkewAlgebra::add(self, a, b)
    }

    fn mul(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        SkewAlgebra::mul(self, a, b)
    }
}

impl SkewAlgebra {
    /// Normal form of an expression such as `s*x - x*s`.
    pub fn parse(&self, text: &str) -> Result<SkewElement> {
        parse_expression(self, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> SkewAlgebra {
        let ring = BaseRing::with_vars(Field::Rational, &["x"]);
        SkewAlgebra::new(&ring, vec!["s".into()], vec![Derivation::partial(&ring, 0)]).unwrap()
    }

    #[test]
    fn reordering() {
        let a = line();
        let x = a.ring().var(0);
        let sx = a.product(&[SkewFactor::Generator(0), SkewFactor::Coefficient(x.clone())]);
        assert_eq!(a.display(&sx), "x*s + 1");
        let sxx = a.product(&[SkewFactor::Generator(0), SkewFactor::Coefficient(x.pow(2))]);
        assert_eq!(a.display(&sxx), "x^2*s + 2*x");
        let xs = a.product(&[SkewFactor::Coefficient(x), SkewFactor::Generator(0)]);
        assert_eq!(a.display(&xs), "x*s");
    }

    #[test]
    fn parsed_commutator_is_the_anchor() {
        let a = line();
        assert_eq!(a.display(&a.parse("s*x - x*s").unwrap()), "1");
        assert_eq!(a.parse("s*x^2").unwrap(), a.parse("x^2*s + 2*x").unwrap());
        assert!(a.parse("t").is_err());
    }

    #[test]
    fn augmentation_examples() {
        let a = line();
        let x = a.ring().var(0);
        let s = a.generator(0);
        assert!(a.augmentation(&s).is_zero());
        assert!(a.in_augmentation_ideal(&s));
        let sx = a.mul(&s, &a.coefficient(x.clone()));
        assert_eq!(a.augmentation(&sx), a.ring().one());
        assert!(!a.in_augmentation_ideal(&sx));
        assert_eq!(a.augmentation(&a.coefficient(x.clone())), x);
    }

    #[test]
    fn generators_act_freely() {
        assert!(line().generators_free_on(3, 2));
    }
}
