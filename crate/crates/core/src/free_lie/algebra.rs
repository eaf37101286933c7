//! The free Lie algebra on a finite alphabet, in the Lyndon basis, up to a
//! bracket-length cutoff.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact_algebra::{Field, Scalar};
use crate::free_lie::lyndon::{
    bracketing, is_lyndon, lyndon_by_length, standard_factorization, Word,
};

/// A Lie element as coefficients on Lyndon words.
pub type LieElement = BTreeMap<Word, Scalar>;

/// A bracket expression over the alphabet, with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Letter(usize),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    Sum(Vec<(i64, LieExpr)>),
}

#[derive(Debug)]
pub struct FreeLieAlgebra {
    field: Field,
    names: Vec<String>,
    cutoff: usize,
    memo: RefCell<HashMap<(Word, Word), LieElement>>,
}

impl Clone for FreeLieAlgebra {
    fn clone(&self) -> Self {
        FreeLieAlgebra {
            field: self.field,
            names: self.names.clone(),
            cutoff: self.cutoff,
            memo: RefCell::new(HashMap::new()),
        }
    }
}

fn add_into(acc: &mut LieElement, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let zero = c.field().zero();
    let e = acc.entry(w.clone()).or_insert(zero);
    *e += &c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

impl FreeLieAlgebra {
    pub fn new(field: Field, names: Vec<String>, cutoff: usize) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::input("the generating set must not be empty"));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = names
            .iter()
            .find(|n| n.is_empty() || !seen.insert(n.as_str()))
        {
            return Err(Error::input(format!(
                "invalid or duplicate generator name '{dup}'"
            )));
        }
        if cutoff == 0 {
            return Err(Error::config(
                "the bracket-length cutoff must be at least 1",
            ));
        }
        Ok(FreeLieAlgebra {
            field,
            names,
            cutoff,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Lyndon words up to the cutoff, by length and then lexicographically.
    pub fn basis(&self) -> Vec<Word> {
        lyndon_by_length(self.names.len(), self.cutoff)
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn letter(&self, i: usize) -> LieElement {
        BTreeMap::from([(vec![i], self.field.one())])
    }

    /// The basis element of a Lyndon word.
    pub fn word(&self, w: &[usize]) -> Result<LieElement> {
        if !is_lyndon(w) || w.iter().any(|&a| a >= self.names.len()) {
            return Err(Error::input(format!(
                "{w:?} is not a Lyndon word over the alphabet"
            )));
        }
        self.check_length(w.len())?;
        Ok(BTreeMap::from([(w.to_vec(), self.field.one())]))
    }

    fn check_length(&self, len: usize) -> Result<()> {
        if len > self.cutoff {
            return Err(Error::Truncation(format!(
                "bracket of length {len} exceeds the cutoff {}",
                self.cutoff
            )));
        }
        Ok(())
    }

    /// `[P(u), P(v)]` in the Lyndon basis.
    pub fn bracket_words(&self, u: &[usize], v: &[usize]) -> Result<LieElement> {
        self.check_length(u.len() + v.len())?;
        if u == v {
            return Ok(LieElement::new());
        }
        if u > v {
            return Ok(self
                .bracket_words(v, u)?
                .into_iter()
                .map(|(w, c)| (w, -c))
                .collect());
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = match standard_factorization(u) {
            // uv is Lyndon with standard factorization (u, v)
            None => BTreeMap::from([([u, v].concat(), self.field.one())]),
            Some((_, u2)) if u2 >= v => BTreeMap::from([([u, v].concat(), self.field.one())]),
            // [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
            Some((u1, u2)) => {
                let left = self.bracket(&self.word_unchecked(u1), &self.bracket_words(u2, v)?)?;
                let right = self.bracket(&self.word_unchecked(u2), &self.bracket_words(u1, v)?)?;
                let mut acc = left;
                for (w, c) in right {
                    add_into(&mut acc, w, -c);
                }
                acc
            }
        };
        self.memo.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    fn word_unchecked(&self, w: &[usize]) -> LieElement {
        BTreeMap::from([(w.to_vec(), self.field.one())])
    }

    /// Bilinear extension of [`FreeLieAlgebra::bracket_words`].
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        let mut acc = LieElement::new();
        for (u, a) in x {
            for (v, b) in y {
                for (w, c) in self.bracket_words(u, v)? {
                    add_into(&mut acc, w, &(a * b) * &c);
                }
            }
        }
        Ok(acc)
    }

    pub fn add(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut acc = x.clone();
        for (w, c) in y {
            add_into(&mut acc, w.clone(), c.clone());
        }
        acc
    }

    pub fn scale(&self, x: &LieElement, c: &Scalar) -> LieElement {
        x.iter()
            .map(|(w, a)| (w.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect()
    }

    pub fn evaluate(&self, e: &LieExpr) -> Result<LieElement> {
        match e {
            LieExpr::Letter(i) => {
                if *i >= self.names.len() {
                    return Err(Error::input(format!("letter index {i} out of range")));
                }
                Ok(self.letter(*i))
            }
            LieExpr::Bracket(a, b) => self.bracket(&self.evaluate(a)?, &self.evaluate(b)?),
            LieExpr::Sum(terms) => {
                let mut acc = LieElement::new();
                for (c, t) in terms {
                    let v = self.scale(&self.evaluate(t)?, &self.field.from_i64(*c));
                    acc = self.add(&acc, &v);
                }
                Ok(acc)
            }
        }
    }

    /// Parses `[a,[a,b]] - 2*[b,c] + a`.
    pub fn parse(&self, text: &str) -> Result<LieExpr> {
        let mut p = ExprParser {
            s: text.as_bytes(),
            i: 0,
            names: &self.names,
        };
        let e = p.sum()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(Error::input(format!(
                "unexpected text at offset {} in '{text}'",
                p.i
            )));
        }
        Ok(e)
    }

    pub fn display(&self, x: &LieElement) -> String {
        display_lie(x, &self.names)
    }
}

/// Writes a Lie element with standard bracketings, shortest words first.
pub fn display_lie(x: &LieElement, names: &[String]) -> String {
    if x.is_empty() {
        return "0".to_string();
    }
    let mut words: Vec<(&Word, &Scalar)> = x.iter().collect();
    words.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
    let mut out = String::new();
    for (k, (w, c)) in words.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&bracketing(w, names));
    }
    out
}

struct ExprParser<'a> {
    s: &'a [u8],
    i: usize,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::input(format!(
                "expected '{}' at offset {}",
                c as char, self.i
            )))
        }
    }

    fn sum(&mut self) -> Result<LieExpr> {
        let mut terms = Vec::new();
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.i += 1;
            sign = -1;
        }
        loop {
            let mut coeff = 1i64;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                coeff = digits
                    .parse()
                    .map_err(|_| Error::input(format!("bad coefficient '{digits}'")))?;
                self.expect(b'*')?;
            }
            terms.push((sign * coeff, self.atom()?));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.i += 1;
        }
        if terms.len() == 1 && terms[0].0 == 1 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(LieExpr::Sum(terms))
    }

    fn atom(&mut self) -> Result<LieExpr> {
        match self.peek() {
            Some(b'[') => {
                self.i += 1;
                let a = self.sum()?;
                self.expect(b',')?;
                let b = self.sum()?;
                self.expect(b']')?;
                Ok(LieExpr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.i += 1;
                let a = self.sum()?;
                self.expect(b')')?;
                Ok(a)
            }
            _ => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                self.names
                    .iter()
                    .position(|n| n == name)
                    .map(LieExpr::Letter)
                    .ok_or_else(|| Error::input(format!("unknown generator '{name}'")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(q: usize, n: usize) -> FreeLieAlgebra {
        let names = ["a", "b", "c", "d"][..q]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FreeLieAlgebra::new(Field::Rational, names, n).unwrap()
    }

    // Associative expansion of a Lie element, the independent oracle.
    fn expand(x: &LieElement, f: Field) -> BTreeMap<Word, Scalar> {
        fn poly(w: &[usize], f: Field) -> BTreeMap<Word, Scalar> {
            match standard_factorization(w) {
                None => BTreeMap::from([(w.to_vec(), f.one())]),
                Some((u, v)) => {
                    let (pu, pv) = (poly(u, f), poly(v, f));
                    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
                    for (a, ca) in &pu {
                        for (b, cb) in &pv {
                            let c = ca * cb;
                            *out.entry([a.as_slice(), b].concat()).or_insert(f.zero()) += &c;
                            *out.entry([b.as_slice(), a].concat()).or_insert(f.zero()) -= &c;
                        }
                    }
                    out.retain(|_, c| !c.is_zero());
                    out
                }
            }
        }
        let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in x {
            for (m, d) in poly(w, f) {
                *out.entry(m).or_insert(f.zero()) += &(c * &d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn small_brackets() {
        let l = free(2, 4);
        let (a, b) = (l.letter(0), l.letter(1));
        assert!(l.bracket(&a, &a).unwrap().is_empty());
        assert_eq!(l.bracket(&a, &b).unwrap(), l.word(&[0, 1]).unwrap());
        let aba = l.bracket(&l.bracket(&a, &b).unwrap(), &a).unwrap();
        assert_eq!(l.display(&aba), "-[a,[a,b]]");
    }

    #[test]
    fn truncation_is_explicit() {
        let l = free(2, 2);
        let ab = l.word(&[0, 1]).unwrap();
        assert!(matches!(
            l.bracket(&l.letter(0), &ab),
            Err(Error::Truncation(_))
        ));
    }

    #[test]
    fn brackets_agree_with_associative_expansion() {
        let f = Field::Rational;
        for q in 2..=3 {
            let l = free(q, 6);
            let basis = l.basis();
            for u in &basis {
                for v in &basis {
                    if u.len() + v.len() > 6 {
                        continue;
                    }
                    let br = l.bracket_words(u, v).unwrap();
                    let lhs = expand(&br, f);
                    let (pu, pv) = (
                        expand(&l.word(u).unwrap(), f),
                        expand(&l.word(v).unwrap(), f),
                    );
                    let mut rhs: BTreeMap<Word, Scalar> = BTreeMap::new();
                    for (a, ca) in &pu {
                        for (b, cb) in &pv {
                            *rhs.entry([a.as_slice(), b].concat()).or_insert(f.zero()) +=
                                &(ca * cb);
                            *rhs.entry([b.as_slice(), a].concat()).or_insert(f.zero()) -=
                                &(ca * cb);
                        }
                    }
                    rhs.retain(|_, c| !c.is_zero());
                    assert_eq!(lhs, rhs, "[{u:?}, {v:?}]");
                }
            }
        }
    }

    #[test]
    fn parse_and_evaluate() {
        let l = free(2, 4);
        let e = l.parse("[[a,b],a] + 2*[a,b] - b").unwrap();
        let v = l.evaluate(&e).unwrap();
        assert_eq!(l.display(&v), "-b + 2*[a,b] - [a,[a,b]]");
        assert!(l.parse("[a,q]").is_err());
    }
}
