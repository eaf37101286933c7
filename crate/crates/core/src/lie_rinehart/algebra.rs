//! Free Lie–Rinehart algebras with a global frame.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::{BaseRing, Derivation, Field, FreeGrading, Poly};
use crate::lie_rinehart::validation::ValidationReport;

/// An element of a free module `A^r`, as its coordinates in the frame.
pub type Element = Vec<Poly>;

/// A Lie–Rinehart algebra `L = A^r` given by structure constants and anchor.
///
/// Brackets are stored only for frame pairs `i < j`, so antisymmetry holds
/// by construction. The bracket of arbitrary elements follows from the
/// Leibniz rule `{s, f t} = f {s, t} + a(s)(f) t`.
#[derive(Clone, Debug)]
pub struct LieRinehartAlgebra {
    ring: BaseRing,
    names: Vec<String>,
    constants: BTreeMap<(usize, usize), Element>,
    anchor: Vec<Derivation>,
    weights: Option<Vec<i64>>,
}

// Explicit weights equal to the inferred ones describe the same algebra.
impl PartialEq for LieRinehartAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.names == other.names
            && self.constants == other.constants
            && self.anchor == other.anchor
            && (self.weights == other.weights || self.weights().ok() == other.weights().ok())
    }
}

impl Eq for LieRinehartAlgebra {}

/// Incremental constructor for [`LieRinehartAlgebra`].
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    ring: BaseRing,
    names: Vec<String>,
    constants: BTreeMap<(usize, usize), Element>,
    anchor: Vec<Derivation>,
    weights: Option<Vec<i64>>,
}

impl AlgebraBuilder {
    pub fn new(ring: &BaseRing, names: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if n.is_empty() || !seen.insert(n.as_str()) {
                return Err(Error::input(format!(
                    "invalid or duplicate frame name '{n}'"
                )));
            }
            if ring.var_index(n).is_some() {
                return Err(Error::input(format!(
                    "frame name '{n}' clashes with a ring variable"
                )));
            }
        }
        let r = names.len();
        Ok(AlgebraBuilder {
            ring: ring.clone(),
            names,
            constants: BTreeMap::new(),
            anchor: vec![Derivation::zero(ring); r],
            weights: None,
        })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.names.len() {
            return Err(Error::input(format!(
                "frame index {i} out of range for rank {}",
                self.names.len()
            )));
        }
        Ok(())
    }

    fn check_element(&self, v: &[Poly]) -> Result<()> {
        if v.len() != self.names.len() {
            return Err(Error::input(format!(
                "element has {} coordinates, expected {}",
                v.len(),
                self.names.len()
            )));
        }
        if v.iter()
            .any(|p| p.nvars() != self.ring.nvars() || p.field() != self.ring.field())
        {
            return Err(Error::config("coefficient lives in a different ring"));
        }
        Ok(())
    }

    /// Sets `{e_i, e_j}`. Giving both orders of a pair, the same pair twice,
    /// or a nonzero diagonal entry is rejected.
    pub fn bracket(&mut self, i: usize, j: usize, value: Element) -> Result<&mut Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_element(&value)?;
        let nonzero = value.iter().any(|p| !p.is_zero());
        if i == j {
            if nonzero {
                return Err(Error::input(format!(
                    "bracket of '{}' with itself must vanish",
                    self.names[i]
                )));
            }
            return Ok(self);
        }
        let (key, value) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.iter().map(|p| -p).collect())
        };
        if self.constants.contains_key(&key) {
            return Err(Error::input(format!(
                "bracket of ('{}', '{}') specified twice",
                self.names[key.0], self.names[key.1]
            )));
        }
        if nonzero {
            self.constants.insert(key, value);
        } else {
            // remember that the pair was given, as an explicit zero
            self.constants
                .insert(key, vec![self.ring.zero(); self.names.len()]);
        }
        Ok(self)
    }

    /// Integer shorthand: `{e_i, e_j} = sum c * e_k`.
    pub fn bracket_int(&mut self, i: usize, j: usize, terms: &[(usize, i64)]) -> Result<&mut Self> {
        let mut v = vec![self.ring.zero(); self.names.len()];
        for &(k, c) in terms {
            self.check_index(k)?;
            v[k] = &v[k] + &self.ring.int(c);
        }
        self.bracket(i, j, v)
    }

    pub fn anchor(&mut self, i: usize, d: Derivation) -> Result<&mut Self> {
        self.check_index(i)?;
        if d.nvars() != self.ring.nvars() {
            return Err(Error::config("anchor derivation has the wrong arity"));
        }
        self.anchor[i] = d;
        Ok(self)
    }

    pub fn weights(&mut self, weights: Vec<i64>) -> Result<&mut Self> {
        if weights.len() != self.names.len() {
            return Err(Error::input("one weight per frame element is required"));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn build(&self) -> LieRinehartAlgebra {
        let constants = self
            .constants
            .iter()
            .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        LieRinehartAlgebra {
            ring: self.ring.clone(),
            names: self.names.clone(),
            constants,
            anchor: self.anchor.clone(),
            weights: self.weights.clone(),
        }
    }
}

fn default_names(prefix: &str, r: usize) -> Vec<String> {
    (0..r).map(|i| format!("{prefix}{}", i + 1)).collect()
}

impl LieRinehartAlgebra {
    pub fn builder(ring: &BaseRing, names: Vec<String>) -> Result<AlgebraBuilder> {
        AlgebraBuilder::new(ring, names)
    }

    /// The abelian algebra of rank `r` with zero anchor.
    pub fn abelian(ring: &BaseRing, r: usize) -> Self {
        AlgebraBuilder::new(ring, default_names("e", r))
            .expect("fresh names")
            .build()
    }

    /// A Lie algebra over the ground field from an integer bracket table
    /// `(i, j, [(k, c)])` meaning `{e_i, e_j} = sum c e_k`.
    pub fn lie_algebra(
        field: Field,
        names: &[&str],
        table: &[(usize, usize, &[(usize, i64)])],
    ) -> Result<Self> {
        let ring = BaseRing::ground(field);
        let mut b = AlgebraBuilder::new(&ring, names.iter().map(|s| s.to_string()).collect())?;
        for (i, j, terms) in table {
            b.bracket_int(*i, *j, terms)?;
        }
        Ok(b.build())
    }

    /// `sl2` with frame `(h, e, f)`.
    pub fn sl2(field: Field) -> Self {
        Self::lie_algebra(
            field,
            &["h", "e", "f"],
            &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
        )
        .expect("sl2 table")
    }

    /// The Heisenberg algebra with frame `(x, y, z)` and `{x, y} = z`.
    pub fn heisenberg(field: Field) -> Self {
        Self::lie_algebra(field, &["x", "y", "z"], &[(0, 1, &[(2, 1)])]).expect("h3 table")
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn anchor(&self, i: usize) -> &Derivation {
        &self.anchor[i]
    }

    pub fn anchors(&self) -> &[Derivation] {
        &self.anchor
    }

    pub fn has_zero_anchor(&self) -> bool {
        self.anchor.iter().all(Derivation::is_zero)
    }

    pub fn explicit_weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    /// Copy of this algebra with the given frame weights.
    pub fn with_weights(&self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.rank() {
            return Err(Error::input("one weight per frame element is required"));
        }
        let mut out = self.clone();
        out.weights = Some(weights);
        Ok(out)
    }

    /// Copy of this algebra with the frame renamed.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self> {
        AlgebraBuilder::new(&self.ring, names.clone())?;
        if names.len() != self.rank() {
            return Err(Error::input("one name per frame element is required"));
        }
        let mut out = self.clone();
        out.names = names;
        Ok(out)
    }

    /// Nonzero structure constants `{e_i, e_j}` for `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.constants.iter()
    }

    pub fn zero_element(&self) -> Element {
        vec![self.ring.zero(); self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = self.ring.one();
        v
    }

    /// `{e_i, e_j}` for any ordered pair.
    pub fn frame_bracket(&self, i: usize, j: usize) -> Element {
        if i < j {
            self.constants
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| self.zero_element())
        } else if i > j {
            match self.constants.get(&(j, i)) {
                Some(v) => v.iter().map(|p| -p).collect(),
                None => self.zero_element(),
            }
        } else {
            self.zero_element()
        }
    }

    /// Coefficient of `e_k` in `{e_i, e_j}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Poly {
        if i < j {
            self.constants
                .get(&(i, j))
                .map(|v| v[k].clone())
                .unwrap_or_else(|| self.ring.zero())
        } else if i > j {
            self.constants
                .get(&(j, i))
                .map(|v| -&v[k])
                .unwrap_or_else(|| self.ring.zero())
        } else {
            self.ring.zero()
        }
    }

    /// The bracket of arbitrary elements:
    /// `{f e_i, g e_j} = f g {e_i, e_j} + f a(e_i)(g) e_j - g a(e_j)(f) e_i`.
    pub fn bracket(&self, u: &[Poly], v: &[Poly]) -> Element {
        let mut out = self.zero_element();
        for (i, f) in u.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in v.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                if i != j {
                    let key = if i < j { (i, j) } else { (j, i) };
                    if let Some(c) = self.constants.get(&key) {
                        let fg = f * g;
                        for (k, ck) in c.iter().enumerate() {
                            if ck.is_zero() {
                                continue;
                            }
                            let t = &fg * ck;
                            out[k] = if i < j { &out[k] + &t } else { &out[k] - &t };
                        }
                    }
                }
                let ag = self.anchor[i].act(g);
                if !ag.is_zero() {
                    out[j] = &out[j] + &(f * &ag);
                }
                let af = self.anchor[j].act(f);
                if !af.is_zero() {
                    out[i] = &out[i] - &(g * &af);
                }
            }
        }
        out
    }

    /// `a(u) = sum u_i a(e_i)`.
    pub fn anchor_of(&self, u: &[Poly]) -> Derivation {
        let mut d = Derivation::zero(&self.ring);
        for (ui, ai) in u.iter().zip(&self.anchor) {
            if !ui.is_zero() && !ai.is_zero() {
                d = d.add(&ai.times(ui));
            }
        }
        d
    }

    /// Frame weights: the explicit ones, or inferred from the anchor shifts
    /// and the structure constants. Over the ground field the default is 0.
    /// Fails with [`Error::NotGraded`] when the data is not homogeneous.
    pub fn weights(&self) -> Result<Vec<i64>> {
        let w = match &self.weights {
            Some(w) => w.clone(),
            None if self.ring.nvars() == 0 => vec![0; self.rank()],
            None => self.infer_weights()?,
        };
        self.check_weights(&w)?;
        Ok(w)
    }

    fn infer_weights(&self) -> Result<Vec<i64>> {
        let r = self.rank();
        let mut w: Vec<Option<i64>> = vec![None; r];
        for (i, a) in self.anchor.iter().enumerate() {
            match a.degree_shift() {
                None => {
                    return Err(Error::NotGraded(format!(
                        "anchor of '{}' is not homogeneous",
                        self.names[i]
                    )))
                }
                Some(Some(s)) => w[i] = Some(s),
                Some(None) => {}
            }
        }
        // constraints w_k = w_i + w_j - deg c_ij^k
        let mut cons = Vec::new();
        for (&(i, j), v) in &self.constants {
            for (k, c) in v.iter().enumerate() {
                match c.homogeneous_degree() {
                    None => {
                        return Err(Error::NotGraded(format!(
                            "structure constant of ('{}', '{}') on '{}' is not homogeneous",
                            self.names[i], self.names[j], self.names[k]
                        )))
                    }
                    Some(Some(d)) => cons.push((i, j, k, d as i64)),
                    Some(None) => {}
                }
            }
        }
        loop {
            let mut changed = false;
            for &(i, j, k, d) in &cons {
                match (w[i], w[j], w[k]) {
                    (Some(a), Some(b), None) => {
                        w[k] = Some(a + b - d);
                        changed = true;
                    }
                    (Some(a), None, Some(c)) => {
                        w[j] = Some(c + d - a);
                        changed = true;
                    }
                    (None, Some(b), Some(c)) => {
                        w[i] = Some(c + d - b);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                match w.iter().position(Option::is_none) {
                    Some(i) => w[i] = Some(0),
                    None => break,
                }
            }
        }
        Ok(w.into_iter().map(|x| x.unwrap_or(0)).collect())
    }

    fn check_weights(&self, w: &[i64]) -> Result<()> {
        for (i, a) in self.anchor.iter().enumerate() {
            match a.degree_shift() {
                Some(None) => {}
                Some(Some(s)) if s == w[i] => {}
                _ => {
                    return Err(Error::NotGraded(format!(
                        "anchor of '{}' does not shift degrees by its weight {}",
                        self.names[i], w[i]
                    )))
                }
            }
        }
        for (&(i, j), v) in &self.constants {
            for (k, c) in v.iter().enumerate() {
                let expected = w[i] + w[j] - w[k];
                match c.homogeneous_degree() {
                    Some(None) => {}
                    Some(Some(d)) if d as i64 == expected => {}
                    _ => {
                        return Err(Error::NotGraded(format!(
                            "structure constant of ('{}', '{}') on '{}' is not homogeneous of degree {}",
                            self.names[i], self.names[j], self.names[k], expected
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// The grading of `L` as a free module.
    pub fn grading(&self) -> Result<FreeGrading> {
        Ok(FreeGrading::new(self.ring.nvars(), self.weights()?))
    }

    pub fn display_element(&self, u: &[Poly]) -> String {
        display_vector(&self.ring, &self.names, u)
    }

    /// Checks the axioms: structural antisymmetry, Jacobi on frame triples
    /// (anchor terms included through the Leibniz rule), the anchor being a
    /// Lie morphism on frame pairs, and homogeneity when weights are given.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.pass("antisymmetry");
        let r = self.rank();

        let mut morphism_witness = None;
        'pairs: for i in 0..r {
            for j in i + 1..r {
                let lhs = self.anchor_of(&self.frame_bracket(i, j));
                let rhs = self.anchor[i].commutator(&self.anchor[j]);
                if lhs != rhs {
                    morphism_witness = Some(format!(
                        "({}, {}): a(bracket) = {} but [a, a] = {}",
                        self.names[i],
                        self.names[j],
                        lhs.display_with(self.ring.vars()),
                        rhs.display_with(self.ring.vars())
                    ));
                    break 'pairs;
                }
            }
        }

        let mut jacobi_witness = None;
        'triples: for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (ei, ej, ek) = (
                        self.basis_element(i),
                        self.basis_element(j),
                        self.basis_element(k),
                    );
                    let t1 = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let t2 = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let t3 = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let sum: Element = (0..r).map(|l| &(&t1[l] + &t2[l]) + &t3[l]).collect();
                    if sum.iter().any(|p| !p.is_zero()) {
                        jacobi_witness = Some(format!(
                            "({}, {}, {}): jacobiator = {}",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.display_element(&sum)
                        ));
                        break 'triples;
                    }
                }
            }
        }
        report.record("jacobi", jacobi_witness);
        report.record("anchor_morphism", morphism_witness);
        if self.weights.is_some() {
            report.record("grading", self.weights().err().map(|e| e.to_string()));
        }
        report
    }
}

/// Renders `sum u_i * name_i`, e.g. `2*e + (x + 1)*f`.
pub fn display_vector(ring: &BaseRing, names: &[String], u: &[Poly]) -> String {
    let mut parts = Vec::new();
    for (i, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = c.display_with(ring.vars());
        let term = if c.num_terms() > 1 {
            format!("({coeff})*{}", names[i])
        } else if coeff == "1" {
            names[i].clone()
        } else if coeff == "-1" {
            format!("-{}", names[i])
        } else {
            format!("{coeff}*{}", names[i])
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// The transformation algebroid `A (x) g` of a Lie algebra `g` acting on `A`
/// through `action`, with `{1 (x) xi, 1 (x) eta} = 1 (x) [xi, eta]` and
/// anchor `a(f (x) xi) = f action(xi)`.
///
/// `action` must be a Lie morphism into `Der(A)` for the commutator
/// `[D1, D2] = D1 D2 - D2 D1`; the first failing pair is reported.
pub fn transformation_algebroid(
    g: &LieRinehartAlgebra,
    ring: &BaseRing,
    action: Vec<Derivation>,
) -> Result<LieRinehartAlgebra> {
    if g.ring().nvars() != 0 {
        return Err(Error::input(
            "the acting Lie algebra must be defined over the ground field",
        ));
    }
    if g.field() != ring.field() {
        return Err(Error::config(
            "the Lie algebra and the ring use different fields",
        ));
    }
    if action.len() != g.rank() {
        return Err(Error::input(format!(
            "{} derivations given for a Lie algebra of rank {}",
            action.len(),
            g.rank()
        )));
    }
    let mut b = AlgebraBuilder::new(ring, g.names().to_vec())?;
    for (&(i, j), v) in g.structure_constants() {
        let lifted: Element = v
            .iter()
            .map(|c| ring.constant(c.as_constant().unwrap_or_else(|| ring.field().zero())))
            .collect();
        b.bracket(i, j, lifted)?;
    }
    for (i, d) in action.into_iter().enumerate() {
        b.anchor(i, d)?;
    }
    let out = b.build();
    let r = out.rank();
    for i in 0..r {
        for j in i + 1..r {
            let lhs = out.anchor_of(&out.frame_bracket(i, j));
            let rhs = out.anchor(i).commutator(out.anchor(j));
            if lhs != rhs {
                return Err(Error::precondition(format!(
                    "the action is not a Lie morphism on the pair ({}, {}): image of the bracket is {} but the commutator is {}",
                    g.name(i),
                    g.name(j),
                    lhs.display_with(ring.vars()),
                    rhs.display_with(ring.vars())
                )));
            }
        }
    }
    Ok(out)
}
