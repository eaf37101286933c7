//! Session files: a field, a base ring, and named algebroids,
//! representations, extensions and outer actions.
//!
//! Everything is JSON. Polynomials are written as strings (`"2*x^2 - y"`)
//! or integers, matrices as lists of rows.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact_algebra::{BaseRing, Derivation, Field, Poly};
use crate::extensions::ExtensionTriple;
use crate::free_lie::{free_lie_rinehart, FreeLieRinehart};
use crate::lie_rinehart::{
    Element, LieRinehartAlgebra, PolyMatrix, Representation, ValidationReport,
};

pub const DEFAULT_CUTOFF: usize = 6;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u32,
    },
}

impl FieldSpec {
    pub fn resolve(&self) -> Result<Field> {
        match self {
            FieldSpec::Name(s) => parse_field(s),
            FieldSpec::Prime { fp } => Field::prime(*fp),
        }
    }
}

/// `"Q"` or `"F<p>"`.
pub fn parse_field(text: &str) -> Result<Field> {
    match text.trim() {
        "Q" => Ok(Field::Rational),
        t => match t.strip_prefix('F').and_then(|p| p.parse::<u32>().ok()) {
            Some(p) => Field::prime(p),
            None => Err(Error::config(format!(
                "unknown field '{t}'; use \"Q\" or {{\"Fp\": p}}"
            ))),
        },
    }
}

/// A polynomial literal: a string or an integer.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

impl Lit {
    pub fn to_poly(&self, ring: &BaseRing) -> Result<Poly> {
        match self {
            Lit::Int(v) => Ok(ring.int(*v)),
            Lit::Text(s) => ring.parse(s),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default)]
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub anchors: BTreeMap<String, BTreeMap<String, Lit>>,
    /// Longest bracket kept; the session cutoff when omitted.
    #[serde(default)]
    pub length: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidSpec {
    /// `"sl2"` (frame h, e, f) or `"heisenberg"` (frame x, y, z).
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub abelian: Option<usize>,
    #[serde(default)]
    pub frame: Option<Vec<String>>,
    /// `"a,b" -> {c: coefficient}`.
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, Lit>>,
    /// `c[i][j][k]`, the `e_k` coefficient of `{e_i, e_j}`.
    #[serde(default)]
    pub structure_constants: Option<Vec<Vec<Vec<Lit>>>>,
    /// `a -> {x: coefficient of d/dx}`.
    #[serde(default)]
    pub anchors: BTreeMap<String, BTreeMap<String, Lit>>,
    #[serde(default)]
    pub weights: Option<BTreeMap<String, i64>>,
    #[serde(default)]
    pub free: Option<FreeSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub algebroid: String,
    #[serde(default)]
    pub trivial: Option<usize>,
    #[serde(default)]
    pub adjoint: bool,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    /// Frame name -> matrix of the action, rows first.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Lit>>>,
    #[serde(default)]
    pub weights: Option<BTreeMap<String, i64>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CocycleValue {
    pub pair: Vec<usize>,
    pub coeffs: Vec<Lit>,
}

/// `{"deg": 2, "values": [{"pair": [i, j], "coeffs": [...]}]}`, with frame
/// indices counted from 0.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CocycleLiteral {
    pub deg: usize,
    pub values: Vec<CocycleValue>,
}

impl CocycleLiteral {
    /// Values on increasing pairs, `len` coefficients each; a decreasing
    /// pair is stored with the opposite sign.
    pub fn pairs(
        &self,
        ring: &BaseRing,
        rank: usize,
        len: usize,
    ) -> Result<BTreeMap<(usize, usize), Element>> {
        if self.deg != 2 {
            return Err(Error::input(format!(
                "expected a 2-cochain, got degree {}",
                self.deg
            )));
        }
        let mut out = BTreeMap::new();
        for v in &self.values {
            let (i, j, sign) = match v.pair[..] {
                [i, j] if i < j && j < rank => (i, j, 1),
                [i, j] if j < i && i < rank => (j, i, -1),
                _ => {
                    return Err(Error::input(format!(
                        "cocycle pair {:?} is not a pair of distinct frame indices below {rank}",
                        v.pair
                    )))
                }
            };
            if v.coeffs.len() != len {
                return Err(Error::input(format!(
                    "cocycle value on {:?} has {} coefficients, expected {len}",
                    v.pair,
                    v.coeffs.len()
                )));
            }
            let s = ring.int(sign);
            let vals = v
                .coeffs
                .iter()
                .map(|c| Ok(&c.to_poly(ring)? * &s))
                .collect::<Result<Vec<_>>>()?;
            if out.insert((i, j), vals).is_some() {
                return Err(Error::input(format!(
                    "cocycle pair {:?} given twice",
                    v.pair
                )));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    #[serde(default)]
    pub quotient: Option<String>,
    #[serde(default)]
    pub kernel: Option<String>,
    #[serde(default)]
    pub lift: BTreeMap<String, Vec<Vec<Lit>>>,
    #[serde(default)]
    pub cocycle: Option<CocycleLiteral>,
    /// Semidirect product with the module of a representation.
    #[serde(default)]
    pub representation: Option<String>,
    /// Read from an algebroid and the frame elements spanning the kernel.
    #[serde(default)]
    pub algebroid: Option<String>,
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
}

/// A lift of an outer action, not necessarily a genuine action.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterActionSpec {
    pub quotient: String,
    pub kernel: String,
    #[serde(default)]
    pub lift: BTreeMap<String, Vec<Vec<Lit>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub ring: RingSpec,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub algebroids: BTreeMap<String, AlgebroidSpec>,
    #[serde(default)]
    pub representations: BTreeMap<String, RepresentationSpec>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    #[serde(default)]
    pub outer_actions: BTreeMap<String, OuterActionSpec>,
}

#[derive(Clone, Debug)]
pub struct OuterAction {
    pub quotient: LieRinehartAlgebra,
    pub kernel: LieRinehartAlgebra,
    pub lift: Vec<PolyMatrix>,
}

#[derive(Clone, Debug)]
pub struct NamedRepresentation {
    pub algebroid: String,
    pub rep: Representation,
}

/// Overrides from the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<Field>,
    pub cutoff: Option<usize>,
}

/// A loaded session. In strict mode every failed validation is an error;
/// otherwise the reports are kept in `reports` for the caller.
#[derive(Clone, Debug)]
pub struct Session {
    pub field: Field,
    pub ring: BaseRing,
    pub cutoff: usize,
    pub digest: String,
    pub algebroids: BTreeMap<String, LieRinehartAlgebra>,
    pub free: BTreeMap<String, FreeLieRinehart>,
    pub representations: BTreeMap<String, NamedRepresentation>,
    pub extensions: BTreeMap<String, ExtensionTriple>,
    pub outer_actions: BTreeMap<String, OuterAction>,
    /// `(kind, name) -> report`, in load order.
    pub reports: Vec<(String, String, ValidationReport)>,
}

fn context(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Config(m) => Error::Config(format!("{path}: {m}")),
        Error::Input(m) => Error::Input(format!("{path}: {m}")),
        Error::Precondition(m) => Error::Precondition(format!("{path}: {m}")),
        Error::Truncation(m) => Error::Truncation(format!("{path}: {m}")),
        Error::NotGraded(m) => Error::NotGraded(format!("{path}: {m}")),
        Error::Unsupported(m) => Error::Unsupported(format!("{path}: {m}")),
    }
}

fn derivation(ring: &BaseRing, spec: &BTreeMap<String, Lit>) -> Result<Derivation> {
    let mut images = vec![ring.zero(); ring.nvars()];
    for (var, lit) in spec {
        let j = ring
            .var_index(var)
            .ok_or_else(|| Error::input(format!("unknown variable '{var}'")))?;
        images[j] = lit.to_poly(ring)?;
    }
    Derivation::new(images)
}

fn matrix(ring: &BaseRing, rows: &[Vec<Lit>], n: usize) -> Result<PolyMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!("expected a {n}x{n} matrix")));
    }
    rows.iter()
        .map(|r| r.iter().map(|l| l.to_poly(ring)).collect())
        .collect()
}

fn weights_in_order(names: &[String], spec: &BTreeMap<String, i64>) -> Result<Vec<i64>> {
    if let Some(k) = spec.keys().find(|k| !names.contains(k)) {
        return Err(Error::input(format!("weight given for unknown name '{k}'")));
    }
    Ok(names
        .iter()
        .map(|n| spec.get(n).copied().unwrap_or(0))
        .collect())
}

fn index_of(alg: &LieRinehartAlgebra, name: &str) -> Result<usize> {
    alg.index_of(name)
        .ok_or_else(|| Error::input(format!("'{name}' is not a frame element")))
}

fn build_algebroid(
    ring: &BaseRing,
    spec: &AlgebroidSpec,
    cutoff: usize,
) -> Result<(LieRinehartAlgebra, Option<FreeLieRinehart>)> {
    if let Some(f) = &spec.free {
        if spec.builtin.is_some()
            || spec.abelian.is_some()
            || spec.frame.is_some()
            || !spec.brackets.is_empty()
            || spec.structure_constants.is_some()
            || !spec.anchors.is_empty()
            || spec.weights.is_some()
        {
            return Err(Error::input(
                "a free algebroid block takes no other frame data",
            ));
        }
        let mut anchors = vec![Derivation::zero(ring); f.generators.len()];
        for (g, d) in &f.anchors {
            let i =
                f.generators.iter().position(|n| n == g).ok_or_else(|| {
                    Error::input(format!("anchor given for unknown generator '{g}'"))
                })?;
            anchors[i] = derivation(ring, d)?;
        }
        let free = free_lie_rinehart(
            ring,
            f.generators.clone(),
            anchors,
            f.length.unwrap_or(cutoff),
        )?;
        return Ok((free.algebra().clone(), Some(free)));
    }
    let (names, table): (Vec<String>, Vec<(usize, usize, Vec<(usize, i64)>)>) =
        match (&spec.builtin, spec.abelian) {
            (Some(b), None) => match b.as_str() {
                "sl2" => (
                    vec!["h".into(), "e".into(), "f".into()],
                    vec![
                        (0, 1, vec![(1, 2)]),
                        (0, 2, vec![(2, -2)]),
                        (1, 2, vec![(0, 1)]),
                    ],
                ),
                "heisenberg" => (
                    vec!["x".into(), "y".into(), "z".into()],
                    vec![(0, 1, vec![(2, 1)])],
                ),
                other => {
                    return Err(Error::input(format!(
                        "unknown builtin '{other}'; known: sl2, heisenberg"
                    )))
                }
            },
            (None, Some(r)) => (
                spec.frame
                    .clone()
                    .unwrap_or_else(|| (0..r).map(|i| format!("e{}", i + 1)).collect()),
                Vec::new(),
            ),
            (None, None) => (
                spec.frame
                    .clone()
                    .ok_or_else(|| Error::input("missing 'frame'"))?,
                Vec::new(),
            ),
            (Some(_), Some(_)) => {
                return Err(Error::input("'builtin' and 'abelian' are exclusive"))
            }
        };
    if let (Some(r), Some(f)) = (spec.abelian, &spec.frame) {
        if f.len() != r {
            return Err(Error::input(format!(
                "'abelian' says rank {r} but the frame has {} names",
                f.len()
            )));
        }
    }
    if spec.builtin.is_some() && spec.frame.as_ref().is_some_and(|f| *f != names) {
        return Err(Error::input("a builtin algebra has a fixed frame"));
    }
    let r = names.len();
    let mut b = LieRinehartAlgebra::builder(ring, names.clone())?;
    for (i, j, terms) in &table {
        b.bracket_int(*i, *j, terms)?;
    }
    let find = |n: &str| -> Result<usize> {
        names
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| Error::input(format!("'{n}' is not a frame element")))
    };
    if !spec.brackets.is_empty() && (spec.abelian.is_some() || spec.structure_constants.is_some()) {
        return Err(Error::input(
            "'brackets' cannot be combined with 'abelian' or 'structure_constants'",
        ));
    }
    for (key, value) in &spec.brackets {
        let (a, c) = key
            .split_once(',')
            .ok_or_else(|| Error::input(format!("bracket key '{key}' must look like \"a,b\"")))?;
        let (i, j) = (find(a.trim())?, find(c.trim())?);
        let mut v = vec![ring.zero(); r];
        for (k, lit) in value {
            v[find(k)?] = lit.to_poly(ring)?;
        }
        b.bracket(i, j, v)
            .map_err(context(&format!("brackets[\"{key}\"]")))?;
    }
    if let Some(c) = &spec.structure_constants {
        if c.len() != r
            || c.iter()
                .any(|row| row.len() != r || row.iter().any(|v| v.len() != r))
        {
            return Err(Error::input(format!(
                "structure_constants must be {r}x{r}x{r}"
            )));
        }
        let c: Vec<Vec<Element>> = c
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|l| l.to_poly(ring)).collect())
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        for i in 0..r {
            if c[i][i].iter().any(|p| !p.is_zero()) {
                return Err(Error::input(format!(
                    "structure_constants[{i}][{i}] must vanish (antisymmetry)"
                )));
            }
            for j in i + 1..r {
                if (0..r).any(|k| c[j][i][k] != -&c[i][j][k]) {
                    return Err(Error::input(format!(
                        "structure_constants[{i}][{j}] and [{j}][{i}] are not opposite (antisymmetry)"
                    )));
                }
                b.bracket(i, j, c[i][j].clone())?;
            }
        }
    }
    for (name, d) in &spec.anchors {
        let i = find(name)?;
        b.anchor(
            i,
            derivation(ring, d).map_err(context(&format!("anchors[\"{name}\"]")))?,
        )?;
    }
    if let Some(w) = &spec.weights {
        b.weights(weights_in_order(&names, w)?)?;
    }
    Ok((b.build(), None))
}

fn build_representation(
    ring: &BaseRing,
    alg: &LieRinehartAlgebra,
    spec: &RepresentationSpec,
) -> Result<Representation> {
    let kinds = [spec.trivial.is_some(), spec.adjoint, spec.basis.is_some()];
    if kinds.iter().filter(|&&k| k).count() != 1 {
        return Err(Error::input(
            "give exactly one of 'trivial', 'adjoint' or 'basis'",
        ));
    }
    if let Some(m) = spec.trivial {
        return Ok(Representation::trivial(alg, m));
    }
    if spec.adjoint {
        return Ok(Representation::adjoint(alg));
    }
    let basis = spec.basis.clone().unwrap_or_default();
    let m = basis.len();
    let mut matrices = vec![vec![vec![ring.zero(); m]; m]; alg.rank()];
    for (name, rows) in &spec.action {
        let i = index_of(alg, name)?;
        matrices[i] = matrix(ring, rows, m).map_err(context(&format!("action[\"{name}\"]")))?;
    }
    let weights = spec
        .weights
        .as_ref()
        .map(|w| weights_in_order(&basis, w))
        .transpose()?;
    Representation::new(alg, basis, matrices, weights)
}

fn lift_matrices(
    ring: &BaseRing,
    q: &LieRinehartAlgebra,
    l: &LieRinehartAlgebra,
    spec: &BTreeMap<String, Vec<Vec<Lit>>>,
) -> Result<Vec<PolyMatrix>> {
    let r = l.rank();
    let mut lift = vec![vec![vec![ring.zero(); r]; r]; q.rank()];
    for (name, rows) in spec {
        let i = index_of(q, name)?;
        lift[i] = matrix(ring, rows, r).map_err(context(&format!("lift[\"{name}\"]")))?;
    }
    Ok(lift)
}

impl Session {
    pub fn from_json(text: &str, overrides: &Overrides, strict: bool) -> Result<Session> {
        let file: SessionFile =
            serde_json::from_str(text).map_err(|e| Error::input(format!("session file: {e}")))?;
        let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
        Session::from_file(file, digest, overrides, strict)
    }

    pub fn from_file(
        file: SessionFile,
        digest: String,
        overrides: &Overrides,
        strict: bool,
    ) -> Result<Session> {
        let field = match overrides.field {
            Some(f) => f,
            None => file.field.resolve().map_err(context("field"))?,
        };
        let cutoff = overrides.cutoff.or(file.cutoff).unwrap_or(DEFAULT_CUTOFF);
        let ring = BaseRing::new(field, file.ring.vars.clone()).map_err(context("ring"))?;
        ring.check_cutoff(cutoff)?;

        let mut seen = BTreeSet::new();
        let all = file
            .algebroids
            .keys()
            .chain(file.representations.keys())
            .chain(file.extensions.keys())
            .chain(file.outer_actions.keys());
        for name in all {
            if !seen.insert(name.clone()) {
                return Err(Error::input(format!(
                    "the name '{name}' is used for two session entries"
                )));
            }
        }

        let mut s = Session {
            field,
            ring: ring.clone(),
            cutoff,
            digest,
            algebroids: BTreeMap::new(),
            free: BTreeMap::new(),
            representations: BTreeMap::new(),
            extensions: BTreeMap::new(),
            outer_actions: BTreeMap::new(),
            reports: Vec::new(),
        };
        for (name, spec) in &file.algebroids {
            let path = format!("algebroids.{name}");
            let (alg, free) = build_algebroid(&ring, spec, cutoff).map_err(context(&path))?;
            s.check(strict, "algebroid", name, alg.validate())?;
            s.algebroids.insert(name.clone(), alg);
            if let Some(f) = free {
                s.free.insert(name.clone(), f);
            }
        }
        for (name, spec) in &file.representations {
            let path = format!("representations.{name}");
            let alg = s
                .algebroid(&spec.algebroid)
                .map_err(context(&path))?
                .clone();
            let rep = build_representation(&ring, &alg, spec).map_err(context(&path))?;
            s.check(strict, "representation", name, rep.validate(&alg))?;
            s.representations.insert(
                name.clone(),
                NamedRepresentation {
                    algebroid: spec.algebroid.clone(),
                    rep,
                },
            );
        }
        for (name, spec) in &file.outer_actions {
            let path = format!("outer_actions.{name}");
            let q = s.algebroid(&spec.quotient).map_err(context(&path))?.clone();
            let l = s.algebroid(&spec.kernel).map_err(context(&path))?.clone();
            let lift = lift_matrices(&ring, &q, &l, &spec.lift).map_err(context(&path))?;
            s.outer_actions.insert(
                name.clone(),
                OuterAction {
                    quotient: q,
                    kernel: l,
                    lift,
                },
            );
        }
        for (name, spec) in &file.extensions {
            let path = format!("extensions.{name}");
            let t = s.build_extension(spec).map_err(context(&path))?;
            s.check(strict, "extension", name, t.validate())?;
            s.extensions.insert(name.clone(), t);
        }
        Ok(s)
    }

    fn check(
        &mut self,
        strict: bool,
        kind: &str,
        name: &str,
        report: ValidationReport,
    ) -> Result<()> {
        if strict && !report.passed() {
            return Err(Error::input(format!(
                "{kind} '{name}' fails validation: {}",
                report.summary()
            )));
        }
        self.reports
            .push((kind.to_string(), name.to_string(), report));
        Ok(())
    }

    fn build_extension(&self, spec: &ExtensionSpec) -> Result<ExtensionTriple> {
        let ring = &self.ring;
        match (&spec.representation, &spec.algebroid) {
            (Some(rep), None) => {
                if spec.quotient.is_some()
                    || spec.kernel.is_some()
                    || !spec.lift.is_empty()
                    || spec.ideal.is_some()
                {
                    return Err(Error::input(
                        "a semidirect block takes only 'representation' and 'cocycle'",
                    ));
                }
                let r = self.representation(rep)?;
                let q = self.algebroid(&r.algebroid)?;
                let base = ExtensionTriple::from_representation(q, &r.rep)?;
                let rho = match &spec.cocycle {
                    Some(c) => c.pairs(ring, q.rank(), base.kernel_rank())?,
                    None => BTreeMap::new(),
                };
                ExtensionTriple::new(q, &base.kernel, base.lift, rho)
            }
            (None, Some(alg)) => {
                if spec.quotient.is_some()
                    || spec.kernel.is_some()
                    || !spec.lift.is_empty()
                    || spec.cocycle.is_some()
                {
                    return Err(Error::input(
                        "an extension read from an algebroid takes only 'algebroid' and 'ideal'",
                    ));
                }
                let e = self.algebroid(alg)?;
                let ideal = spec
                    .ideal
                    .as_ref()
                    .ok_or_else(|| Error::input("missing 'ideal'"))?;
                let idx = ideal
                    .iter()
                    .map(|n| index_of(e, n))
                    .collect::<Result<Vec<_>>>()?;
                ExtensionTriple::from_extension(e, &idx)
            }
            (None, None) => {
                let qn = spec
                    .quotient
                    .as_ref()
                    .ok_or_else(|| Error::input("missing 'quotient'"))?;
                let kn = spec
                    .kernel
                    .as_ref()
                    .ok_or_else(|| Error::input("missing 'kernel'"))?;
                let (q, l) = (self.algebroid(qn)?, self.algebroid(kn)?);
                let lift = lift_matrices(ring, q, l, &spec.lift)?;
                let rho = match &spec.cocycle {
                    Some(c) => c.pairs(ring, q.rank(), l.rank())?,
                    None => BTreeMap::new(),
                };
                ExtensionTriple::new(q, l, lift, rho)
            }
            (Some(_), Some(_)) => Err(Error::input(
                "'representation' and 'algebroid' are exclusive",
            )),
        }
    }

    pub fn algebroid(&self, name: &str) -> Result<&LieRinehartAlgebra> {
        self.algebroids
            .get(name)
            .ok_or_else(|| Error::input(format!("no algebroid named '{name}'")))
    }

    pub fn free_algebroid(&self, name: &str) -> Result<&FreeLieRinehart> {
        self.free.get(name).ok_or_else(|| {
            Error::input(format!(
                "no free algebroid named '{name}' (declare it with a 'free' block)"
            ))
        })
    }

    pub fn representation(&self, name: &str) -> Result<&NamedRepresentation> {
        self.representations
            .get(name)
            .ok_or_else(|| Error::input(format!("no representation named '{name}'")))
    }

    /// A named representation of `algebroid`, or the keywords `trivial`
    /// (rank 1) and `adjoint`.
    pub fn module_for(&self, algebroid: &str, name: Option<&str>) -> Result<Representation> {
        let alg = self.algebroid(algebroid)?;
        match name {
            None | Some("trivial") if !self.representations.contains_key("trivial") => {
                Ok(Representation::trivial(alg, 1))
            }
            Some("adjoint") if !self.representations.contains_key("adjoint") => {
                Ok(Representation::adjoint(alg))
            }
            Some(n) => {
                let r = self.representation(n)?;
                if r.algebroid != algebroid {
                    return Err(Error::input(format!(
                        "representation '{n}' is a module over '{}', not '{algebroid}'",
                        r.algebroid
                    )));
                }
                Ok(r.rep.clone())
            }
            None => Ok(Representation::trivial(alg, 1)),
        }
    }

    pub fn extension(&self, name: &str) -> Result<&ExtensionTriple> {
        self.extensions
            .get(name)
            .ok_or_else(|| Error::input(format!("no extension named '{name}'")))
    }

    pub fn outer_action(&self, name: &str) -> Result<&OuterAction> {
        self.outer_actions
            .get(name)
            .ok_or_else(|| Error::input(format!("no outer action named '{name}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Session> {
        Session::from_json(text, &Overrides::default(), true)
    }

    #[test]
    fn minimal_session() {
        let s =
            load(r#"{"field": "Q", "ring": {"vars": []}, "algebroids": {"ab2": {"abelian": 2}}}"#)
                .unwrap();
        assert_eq!(s.algebroid("ab2").unwrap().rank(), 2);
        assert_eq!(s.cutoff, DEFAULT_CUTOFF);
        assert_eq!(s.digest.len(), 64);
    }

    #[test]
    fn diagonal_structure_constant_is_rejected() {
        let text = r#"{"field": "Q", "algebroids": {"bad": {"frame": ["a", "b"],
            "structure_constants": [[[0, 0], [0, 1]], [[0, -1], [0, 1]]]}}}"#;
        let err = load(text).unwrap_err();
        assert!(err.to_string().contains("antisymmetry"), "{err}");
    }

    #[test]
    fn dangling_reference_names_the_missing_entry() {
        let text = r#"{"field": "Q", "algebroids": {"q": {"abelian": 2}},
            "extensions": {"e": {"quotient": "q", "kernel": "nowhere"}}}"#;
        let err = load(text).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(err.to_string().contains("nowhere"), "{err}");
    }

    #[test]
    fn finite_fields_and_cutoffs() {
        let s = load(r#"{"field": {"Fp": 5}, "algebroids": {"a": {"builtin": "sl2"}}}"#).unwrap();
        assert_eq!(s.field, Field::prime(5).unwrap());
        assert!(load(r#"{"field": {"Fp": 6}}"#).is_err());
        // over a polynomial base the characteristic must exceed the cutoff
        assert!(load(r#"{"field": {"Fp": 5}, "ring": {"vars": ["x"]}}"#).is_err());
        assert!(load(r#"{"field": {"Fp": 7}, "ring": {"vars": ["x"]}}"#).is_ok());
    }

    #[test]
    fn invalid_algebra_is_kept_in_lenient_mode() {
        let text = r#"{"field": "Q", "ring": {"vars": ["t"]}, "algebroids": {"a": {"frame": ["u", "v"],
            "brackets": {"u,v": {"v": 1}}, "anchors": {"u": {"t": "t"}, "v": {"t": "t"}}}}}"#;
        assert!(load(text).is_err());
        let s = Session::from_json(text, &Overrides::default(), false).unwrap();
        assert!(!s.reports[0].2.passed());
    }

    #[test]
    fn extensions_of_every_shape() {
        let text = r#"{"field": "Q",
            "algebroids": {"q": {"frame": ["x", "y"], "abelian": 2}, "line": {"frame": ["z"], "abelian": 1},
                           "h": {"builtin": "heisenberg"}},
            "representations": {"triv": {"algebroid": "q", "trivial": 1}},
            "extensions": {
                "heis": {"quotient": "q", "kernel": "line",
                         "cocycle": {"deg": 2, "values": [{"pair": [0, 1], "coeffs": ["1"]}]}},
                "split": {"representation": "triv"},
                "read": {"algebroid": "h", "ideal": ["z"]}}}"#;
        let s = load(text).unwrap();
        assert_eq!(
            s.extension("heis").unwrap().rho_pair(1, 0),
            vec![s.ring.int(-1)]
        );
        assert!(s.extension("split").unwrap().rho.is_empty());
        assert_eq!(s.extension("read").unwrap().quotient_rank(), 2);
    }
}
