//! Free Lie–Rinehart algebras `A (x) Lie(S)` truncated at a bracket length,
//! their universal property, and presentations of a given algebra as a
//! quotient of a free one.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{
    extend_basis, slice_degrees, slice_matrix, BaseRing, Derivation, FreeGrading, Poly, SparseVec,
};
use crate::free_lie::algebra::FreeLieAlgebra;
use crate::free_lie::lyndon::{bracketing, standard_factorization, Word};
use crate::lie_rinehart::{display_vector, Element, LieRinehartAlgebra, ValidationReport};

/// The free algebroid on `S` modulo brackets longer than the cutoff.
///
/// Frame: the Lyndon words up to the cutoff, named by their bracketings.
/// The anchor of `P(w) = [P(u), P(v)]` is the commutator of the anchors of
/// `u` and `v`; the quotient is a Lie–Rinehart algebra only when the
/// anchors of any two frame elements whose lengths add past the cutoff
/// commute, which is checked.
#[derive(Clone, Debug)]
pub struct FreeLieRinehart {
    free: FreeLieAlgebra,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    generator_anchors: Vec<Derivation>,
    algebra: LieRinehartAlgebra,
}

/// Builds the truncated free algebroid on `names` with anchors `anchors`.
pub fn free_lie_rinehart(
    ring: &BaseRing,
    names: Vec<String>,
    anchors: Vec<Derivation>,
    cutoff: usize,
) -> Result<FreeLieRinehart> {
    if anchors.len() != names.len() {
        return Err(Error::input("one anchor per generator is required"));
    }
    if anchors.iter().any(|d| d.nvars() != ring.nvars()) {
        return Err(Error::config("anchor derivation has the wrong arity"));
    }
    let free = FreeLieAlgebra::new(ring.field(), names, cutoff)?;
    let words = free.basis();
    let index: HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let frame_names: Vec<String> = words.iter().map(|w| bracketing(w, free.names())).collect();

    let mut word_anchor: Vec<Derivation> = Vec::with_capacity(words.len());
    for w in &words {
        let d = match standard_factorization(w) {
            None => anchors[w[0]].clone(),
            Some((u, v)) => word_anchor[index[u]].commutator(&word_anchor[index[v]]),
        };
        word_anchor.push(d);
    }
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate().skip(i + 1) {
            if u.len() + v.len() > cutoff && !word_anchor[i].commutator(&word_anchor[j]).is_zero() {
                return Err(Error::precondition(format!(
                    "anchors of '{}' and '{}' do not commute, so the anchor does not descend to the truncation at length {cutoff}",
                    frame_names[i], frame_names[j]
                )));
            }
        }
    }

    let mut b = LieRinehartAlgebra::builder(ring, frame_names)?;
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate().skip(i + 1) {
            if u.len() + v.len() > cutoff {
                continue;
            }
            let br = free.bracket_words(u, v)?;
            if br.is_empty() {
                continue;
            }
            let mut value = vec![ring.zero(); words.len()];
            for (w, c) in br {
                value[index[&w]] = ring.constant(c);
            }
            b.bracket(i, j, value)?;
        }
    }
    for (i, d) in word_anchor.into_iter().enumerate() {
        b.anchor(i, d)?;
    }
    // letters weigh their anchor shift, or -1 with zero anchor
    let letter_weights: Option<Vec<i64>> = anchors
        .iter()
        .map(|d| match d.degree_shift() {
            Some(Some(s)) => Some(s),
            Some(None) => Some(-1),
            None => None,
        })
        .collect();
    if let Some(lw) = letter_weights {
        b.weights(
            words
                .iter()
                .map(|w| w.iter().map(|&a| lw[a]).sum())
                .collect(),
        )?;
    }
    let algebra = b.build();
    Ok(FreeLieRinehart {
        free,
        words,
        index,
        generator_anchors: anchors,
        algebra,
    })
}

impl FreeLieRinehart {
    pub fn algebra(&self) -> &LieRinehartAlgebra {
        &self.algebra
    }

    pub fn free(&self) -> &FreeLieAlgebra {
        &self.free
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn cutoff(&self) -> usize {
        self.free.cutoff()
    }

    pub fn generator_anchors(&self) -> &[Derivation] {
        &self.generator_anchors
    }

    /// Frame ranks by bracket length.
    pub fn graded_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.cutoff()];
        for w in &self.words {
            out[w.len() - 1] += 1;
        }
        out
    }

    /// Cochains of weight `d` with `d - min_module_weight <= cutoff` only
    /// involve brackets that the truncation leaves untouched, provided every
    /// generator has negative weight. Returns that bound on `d`, or `None`
    /// when some generator has weight `>= 0` (its anchor does not lower
    /// degrees) and no slice is provably safe.
    pub fn safe_degree_bound(&self, min_module_weight: i64) -> Option<i64> {
        let w = self.algebra.explicit_weights()?;
        let letters_negative = self
            .words
            .iter()
            .zip(w)
            .filter(|(word, _)| word.len() == 1)
            .all(|(_, &x)| x <= -1);
        letters_negative.then_some(self.cutoff() as i64 + min_module_weight)
    }
}

/// The morphism `L_{A,S} -> L` induced by images of the generators, with a
/// report on the properties it must have within the truncation.
#[derive(Clone, Debug)]
pub struct InducedMorphism {
    /// Image of each frame word, in the target frame.
    pub images: Vec<Element>,
    pub report: ValidationReport,
}

impl InducedMorphism {
    /// `g(sum f_k x_k) = sum f_k g(x_k)`.
    pub fn apply(&self, target: &LieRinehartAlgebra, u: &[Poly]) -> Element {
        let mut out = target.zero_element();
        for (fk, img) in u.iter().zip(&self.images) {
            if fk.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(img) {
                *o = &*o + &(fk * c);
            }
        }
        out
    }
}

pub fn induced_morphism(
    free: &FreeLieRinehart,
    target: &LieRinehartAlgebra,
    generator_images: &[Element],
) -> Result<InducedMorphism> {
    let names = free.free.names();
    if generator_images.len() != names.len() {
        return Err(Error::input("one image per generator is required"));
    }
    if target.ring() != free.algebra.ring() {
        return Err(Error::config("the target lives over a different base ring"));
    }
    for (s, img) in generator_images.iter().enumerate() {
        if img.len() != target.rank() {
            return Err(Error::input(format!(
                "image of '{}' has the wrong length",
                names[s]
            )));
        }
        if target.anchor_of(img) != free.generator_anchors[s] {
            return Err(Error::precondition(format!(
                "the image of '{}' does not have the prescribed anchor",
                names[s]
            )));
        }
    }
    let mut images: Vec<Element> = Vec::with_capacity(free.words.len());
    for w in &free.words {
        let img = match standard_factorization(w) {
            None => generator_images[w[0]].clone(),
            Some((u, v)) => target.bracket(&images[free.index[u]], &images[free.index[v]]),
        };
        images.push(img);
    }
    let g = InducedMorphism {
        images,
        report: ValidationReport::default(),
    };
    let alg = &free.algebra;
    let mut report = ValidationReport::default();

    let gen_witness = (0..names.len())
        .find(|&s| g.images[free.index[&vec![s]]] != generator_images[s])
        .map(|s| names[s].clone());
    report.record("extends_generator_map", gen_witness);

    let anchor_witness = (0..alg.rank())
        .find(|&i| target.anchor_of(&g.images[i]) != *alg.anchor(i))
        .map(|i| alg.name(i).to_string());
    report.record("anchor_compatible", anchor_witness);

    let mut bracket_witness = None;
    'pairs: for i in 0..alg.rank() {
        for j in i + 1..alg.rank() {
            if free.words[i].len() + free.words[j].len() > free.cutoff() {
                continue;
            }
            let lhs = g.apply(target, &alg.frame_bracket(i, j));
            let rhs = target.bracket(&g.images[i], &g.images[j]);
            if lhs != rhs {
                bracket_witness = Some(format!("({}, {})", alg.name(i), alg.name(j)));
                break 'pairs;
            }
        }
    }
    report.record("bracket_preserving", bracket_witness);
    Ok(InducedMorphism { report, ..g })
}

/// Kernel data of `A (x) Lie(S) -> L` at one bracket length and weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationLevel {
    pub length: usize,
    pub degree: i64,
    /// Dimension of the length-`length` part of the free side in this slice.
    pub free_dim: usize,
    /// Kernel restricted to brackets of exactly this length.
    pub homogeneous_kernel: usize,
    /// Kernel on brackets of length at most `length`, modulo the kernel
    /// on shorter ones.
    pub filtered_kernel: usize,
    pub image_rank: usize,
    pub target_dim: usize,
}

/// An element of the free side, as `A`-coefficients on Lyndon words.
pub type FreeElement = BTreeMap<Word, Poly>;

#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub generators: Vec<String>,
    pub anchors: Vec<Derivation>,
    pub cutoff: usize,
    pub exhaustive: bool,
    pub levels: Vec<PresentationLevel>,
    /// New kernel elements per length, from the filtered computation.
    pub relations: BTreeMap<usize, Vec<FreeElement>>,
    /// Kernel elements homogeneous in bracket length.
    pub homogeneous_relations: BTreeMap<usize, Vec<FreeElement>>,
    pub surjective: bool,
}

impl FreePresentation {
    pub fn homogeneous_kernel_dims(&self) -> Vec<usize> {
        self.sum_by_length(|l| l.homogeneous_kernel)
    }

    pub fn filtered_kernel_dims(&self) -> Vec<usize> {
        self.sum_by_length(|l| l.filtered_kernel)
    }

    fn sum_by_length(&self, f: impl Fn(&PresentationLevel) -> usize) -> Vec<usize> {
        let mut out = vec![0; self.cutoff];
        for l in &self.levels {
            out[l.length - 1] += f(l);
        }
        out
    }

    pub fn display(&self, ring: &BaseRing, x: &FreeElement) -> String {
        display_free_element(ring, &self.generators, x)
    }
}

/// Writes `sum f_w [w]` with bracketed Lyndon words.
pub fn display_free_element(ring: &BaseRing, names: &[String], x: &FreeElement) -> String {
    let words: Vec<&Word> = x.keys().collect();
    let labels: Vec<String> = words.iter().map(|w| bracketing(w, names)).collect();
    let coeffs: Vec<Poly> = words.iter().map(|w| x[*w].clone()).collect();
    display_vector(ring, &labels, &coeffs)
}

/// Presents `L` as a quotient of the free algebroid on its own frame, with
/// the kernel computed per bracket length (up to `cutoff`) and weight slice.
pub fn present_as_quotient(target: &LieRinehartAlgebra, cutoff: usize) -> Result<FreePresentation> {
    let ring = target.ring();
    let names = target.names().to_vec();
    let free = FreeLieAlgebra::new(ring.field(), names.clone(), cutoff)?;
    let words = free.basis();
    let lw = target.weights()?;
    let word_weight = |w: &Word| -> i64 { w.iter().map(|&a| lw[a]).sum() };

    // images of the Lyndon words under the evaluation map
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut images: Vec<Element> = Vec::with_capacity(words.len());
    for (k, w) in words.iter().enumerate() {
        let img = match standard_factorization(w) {
            None => target.basis_element(w[0]),
            Some((u, v)) => target.bracket(&images[index[u]], &images[index[v]]),
        };
        index.insert(w.clone(), k);
        images.push(img);
    }

    let target_grading = target.grading()?;
    let by_length = |max_len: usize, exact: bool| -> Vec<usize> {
        (0..words.len())
            .filter(|&k| words[k].len() <= max_len && (!exact || words[k].len() == max_len))
            .collect()
    };
    let all = FreeGrading::new(ring.nvars(), words.iter().map(word_weight).collect());
    let degrees = slice_degrees(&[&all, &target_grading], cutoff as i64);

    let field = ring.field();
    let mut levels = Vec::new();
    let mut relations: BTreeMap<usize, Vec<FreeElement>> = BTreeMap::new();
    let mut homogeneous_relations: BTreeMap<usize, Vec<FreeElement>> = BTreeMap::new();
    let mut surjective = true;
    for &d in &degrees {
        let mut previous_kernel: Vec<SparseVec> = Vec::new();
        for len in 1..=cutoff {
            let mut pieces = Vec::new();
            for exact in [true, false] {
                let cols = by_length(len, exact);
                let grading = FreeGrading::new(
                    ring.nvars(),
                    cols.iter().map(|&k| word_weight(&words[k])).collect(),
                );
                let (mat, src, tgt) =
                    slice_matrix(ring, &grading, &target_grading, d, |c, mono| {
                        images[cols[c]].iter().map(|p| mono * p).collect()
                    })?;
                pieces.push((cols, mat, src, tgt));
            }
            let to_element =
                |cols: &[usize], src: &crate::exact_algebra::SliceBasis, v: &SparseVec| {
                    let mut out = FreeElement::new();
                    for (i, c) in v {
                        let (comp, mono) = &src.labels[*i];
                        out.entry(words[cols[*comp]].clone())
                            .or_insert_with(|| ring.zero())
                            .add_term(mono.clone(), c.clone());
                    }
                    out
                };
            let (hcols, hmat, hsrc, _) = &pieces[0];
            let (fcols, fmat, fsrc, ftgt) = &pieces[1];
            let hker = hmat.kernel_basis();
            let fker = fmat.kernel_basis();
            let rank = fmat.rank();
            // the slice of the shorter words is a prefix of this one
            let new: Vec<usize> = extend_basis(field, fsrc.len(), &previous_kernel, &fker);
            let filtered_kernel = fker.len() - previous_kernel.len();
            debug_assert_eq!(new.len(), filtered_kernel);
            if hsrc.is_empty() && fsrc.is_empty() && ftgt.is_empty() {
                previous_kernel = fker;
                continue;
            }
            surjective &= rank == ftgt.len();
            levels.push(PresentationLevel {
                length: len,
                degree: d,
                free_dim: hsrc.len(),
                homogeneous_kernel: hker.len(),
                filtered_kernel,
                image_rank: rank,
                target_dim: ftgt.len(),
            });
            homogeneous_relations
                .entry(len)
                .or_default()
                .extend(hker.iter().map(|v| to_element(hcols, hsrc, v)));
            relations
                .entry(len)
                .or_default()
                .extend(new.iter().map(|&i| to_element(fcols, fsrc, &fker[i])));
            previous_kernel = fker;
        }
    }
    relations.retain(|_, v| !v.is_empty());
    homogeneous_relations.retain(|_, v| !v.is_empty());
    Ok(FreePresentation {
        generators: names,
        anchors: target.anchors().to_vec(),
        cutoff,
        exhaustive: ring.nvars() == 0,
        levels,
        relations,
        homogeneous_relations,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Field;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn graded_ranks_follow_witt() {
        let ring = BaseRing::ground(Field::Rational);
        let f = free_lie_rinehart(
            &ring,
            names(&["s1", "s2"]),
            vec![Derivation::zero(&ring); 2],
            3,
        )
        .unwrap();
        assert_eq!(f.graded_ranks(), vec![2, 1, 2]);
        assert!(f.algebra().validate().passed());
    }

    #[test]
    fn line_generator() {
        let ring = BaseRing::with_vars(Field::Rational, &["t"]);
        let f = free_lie_rinehart(&ring, names(&["s"]), vec![Derivation::partial(&ring, 0)], 4)
            .unwrap();
        assert_eq!(f.algebra().rank(), 1);
        assert_eq!(*f.algebra().anchor(0), Derivation::partial(&ring, 0));
    }

    #[test]
    fn noncommuting_anchors_are_rejected() {
        let ring = BaseRing::with_vars(Field::Rational, &["x"]);
        let x = ring.var(0);
        let anchors = vec![
            Derivation::partial(&ring, 0),
            Derivation::new(vec![x]).unwrap(),
        ];
        let err = free_lie_rinehart(&ring, names(&["s1", "s2"]), anchors, 3).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
    }

    #[test]
    fn commuting_anchors_validate() {
        let ring = BaseRing::with_vars(Field::Rational, &["x", "y"]);
        let anchors = vec![Derivation::partial(&ring, 0), Derivation::partial(&ring, 1)];
        let f = free_lie_rinehart(&ring, names(&["s1", "s2"]), anchors, 3).unwrap();
        assert!(
            f.algebra().validate().passed(),
            "{}",
            f.algebra().validate().summary()
        );
        assert_eq!(f.safe_degree_bound(0), Some(3));
    }

    #[test]
    fn universal_property_into_sl2() {
        let sl2 = LieRinehartAlgebra::sl2(Field::Rational);
        let ring = sl2.ring().clone();
        let f = free_lie_rinehart(
            &ring,
            names(&["a", "b", "c"]),
            vec![Derivation::zero(&ring); 3],
            3,
        )
        .unwrap();
        // a -> e, b -> f, c -> h
        let imgs: Vec<Element> = [1, 2, 0].iter().map(|&i| sl2.basis_element(i)).collect();
        let g = induced_morphism(&f, &sl2, &imgs).unwrap();
        assert!(g.report.passed(), "{}", g.report.summary());
        // [a,b] -> [e,f] = h
        let ab = f.word_index(&[0, 1]).unwrap();
        assert_eq!(g.images[ab], sl2.basis_element(0));
    }

    #[test]
    fn presentations() {
        let ring = BaseRing::ground(Field::Rational);
        let ab = LieRinehartAlgebra::abelian(&ring, 2);
        let p = present_as_quotient(&ab, 3).unwrap();
        assert!(p.surjective);
        assert_eq!(p.homogeneous_kernel_dims()[1], 1);

        let sl2 = LieRinehartAlgebra::sl2(Field::Rational);
        let p = present_as_quotient(&sl2, 2).unwrap();
        assert_eq!(p.filtered_kernel_dims(), vec![0, 3]);
        assert_eq!(p.homogeneous_kernel_dims(), vec![0, 0]);
        let shown: Vec<String> = p.relations[&2]
            .iter()
            .map(|r| p.display(&ring, r))
            .collect();
        assert!(shown.contains(&"-h + [e,f]".to_string()), "{shown:?}");

        let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
        let p = present_as_quotient(&h3, 2).unwrap();
        assert_eq!(p.homogeneous_kernel_dims(), vec![0, 2]);
        assert_eq!(p.filtered_kernel_dims(), vec![0, 3]);
    }
}
