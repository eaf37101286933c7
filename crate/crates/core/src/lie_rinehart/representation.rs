//! Representations `rho(e_i) = N_i + a(e_i) id` on free modules `A^m`.

use crate::error::{Error, Result};
use crate::exact_algebra::{FreeGrading, Poly};
use crate::lie_rinehart::algebra::{display_vector, LieRinehartAlgebra};
use crate::lie_rinehart::validation::ValidationReport;

/// Square matrix over `A`, row-major.
pub type PolyMatrix = Vec<Vec<Poly>>;

/// A representation of a Lie–Rinehart algebra on `A^m`.
///
/// Each frame element acts by `N_i + a(e_i)` (the anchor applied entrywise),
/// so the Leibniz condition `rho(x)(f m) = f rho(x)(m) + a(x)(f) m` holds by
/// construction and only flatness needs checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    names: Vec<String>,
    matrices: Vec<PolyMatrix>,
    weights: Option<Vec<i64>>,
}

impl Representation {
    pub fn new(
        alg: &LieRinehartAlgebra,
        names: Vec<String>,
        matrices: Vec<PolyMatrix>,
        weights: Option<Vec<i64>>,
    ) -> Result<Self> {
        let m = names.len();
        if matrices.len() != alg.rank() {
            return Err(Error::input(format!(
                "{} action matrices given for an algebra of rank {}",
                matrices.len(),
                alg.rank()
            )));
        }
        for (i, n) in matrices.iter().enumerate() {
            if n.len() != m || n.iter().any(|row| row.len() != m) {
                return Err(Error::input(format!(
                    "action matrix of '{}' is not {m}x{m}",
                    alg.name(i)
                )));
            }
            if n.iter()
                .flatten()
                .any(|p| p.nvars() != alg.ring().nvars() || p.field() != alg.field())
            {
                return Err(Error::config(
                    "action matrix entry lives in a different ring",
                ));
            }
        }
        if let Some(w) = &weights {
            if w.len() != m {
                return Err(Error::input("one weight per module generator is required"));
            }
        }
        Ok(Representation {
            names,
            matrices,
            weights,
        })
    }

    /// `A^m` with `rho(x) = a(x)` on each coordinate.
    pub fn trivial(alg: &LieRinehartAlgebra, m: usize) -> Self {
        let zero = vec![vec![alg.ring().zero(); m]; m];
        let names = if m == 1 {
            vec!["m".to_string()]
        } else {
            (0..m).map(|b| format!("m{}", b + 1)).collect()
        };
        Representation {
            names,
            matrices: vec![zero; alg.rank()],
            weights: Some(vec![0; m]),
        }
    }

    /// `N_i = ad(e_i)` on the frame. This is a representation when the
    /// anchor vanishes (and is validated like any other otherwise).
    pub fn adjoint(alg: &LieRinehartAlgebra) -> Self {
        let r = alg.rank();
        let matrices = (0..r)
            .map(|i| {
                (0..r)
                    .map(|row| {
                        (0..r)
                            .map(|col| alg.structure_constant(i, col, row))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Representation {
            names: alg.names().to_vec(),
            matrices,
            weights: alg.weights().ok(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, i: usize) -> &PolyMatrix {
        &self.matrices[i]
    }

    pub fn explicit_weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    /// `rho(e_i)(v)`.
    pub fn act(&self, alg: &LieRinehartAlgebra, i: usize, v: &[Poly]) -> Vec<Poly> {
        let n = &self.matrices[i];
        let a = alg.anchor(i);
        (0..self.rank())
            .map(|row| {
                let mut acc = a.act(&v[row]);
                for (col, vc) in v.iter().enumerate() {
                    if !vc.is_zero() && !n[row][col].is_zero() {
                        acc = &acc + &(&n[row][col] * vc);
                    }
                }
                acc
            })
            .collect()
    }

    /// `rho(x)(v)` for an arbitrary element `x`.
    pub fn act_element(&self, alg: &LieRinehartAlgebra, x: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let mut out = vec![alg.ring().zero(); self.rank()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let w = self.act(alg, i, v);
            for (o, wi) in out.iter_mut().zip(&w) {
                *o = &*o + &(xi * wi);
            }
        }
        out
    }

    /// Generator weights: explicit, or propagated from the action matrices
    /// (entry `(b', b)` of `N_i` has degree `u_b + w_i - u_b'`).
    pub fn weights(&self, alg: &LieRinehartAlgebra) -> Result<Vec<i64>> {
        let w = alg.weights()?;
        let m = self.rank();
        let u = match &self.weights {
            Some(u) => u.clone(),
            None if alg.ring().nvars() == 0 => vec![0; m],
            None => {
                let mut u: Vec<Option<i64>> = vec![None; m];
                let mut cons = Vec::new();
                for (i, n) in self.matrices.iter().enumerate() {
                    for (row, r) in n.iter().enumerate() {
                        for (col, p) in r.iter().enumerate() {
                            if let Some(Some(d)) = p.homogeneous_degree() {
                                cons.push((row, col, w[i] - d as i64));
                            }
                        }
                    }
                }
                loop {
                    let mut changed = false;
                    for &(row, col, delta) in &cons {
                        match (u[row], u[col]) {
                            (None, Some(c)) => {
                                u[row] = Some(c + delta);
                                changed = true;
                            }
                            (Some(r), None) => {
                                u[col] = Some(r - delta);
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                    if !changed {
                        match u.iter().position(Option::is_none) {
                            Some(b) => u[b] = Some(0),
                            None => break,
                        }
                    }
                }
                u.into_iter().map(|x| x.unwrap_or(0)).collect()
            }
        };
        for (i, n) in self.matrices.iter().enumerate() {
            for (row, r) in n.iter().enumerate() {
                for (col, p) in r.iter().enumerate() {
                    let expected = u[col] + w[i] - u[row];
                    match p.homogeneous_degree() {
                        Some(None) => {}
                        Some(Some(d)) if d as i64 == expected => {}
                        _ => {
                            return Err(Error::NotGraded(format!(
                                "action of '{}' has an entry at ({}, {}) that is not homogeneous of degree {expected}",
                                alg.name(i),
                                self.names[row],
                                self.names[col]
                            )))
                        }
                    }
                }
            }
        }
        Ok(u)
    }

    pub fn grading(&self, alg: &LieRinehartAlgebra) -> Result<FreeGrading> {
        Ok(FreeGrading::new(alg.ring().nvars(), self.weights(alg)?))
    }

    fn basis_vector(&self, alg: &LieRinehartAlgebra, b: usize, coeff: Poly) -> Vec<Poly> {
        let mut v = vec![alg.ring().zero(); self.rank()];
        v[b] = coeff;
        v
    }

    /// Checks `rho({e_i, e_j}) = [rho(e_i), rho(e_j)]` on every generator
    /// `m_b` and on `x_k m_b`.
    pub fn validate(&self, alg: &LieRinehartAlgebra) -> ValidationReport {
        let mut report = ValidationReport::default();
        let ring = alg.ring();
        let mut probes: Vec<Poly> = vec![ring.one()];
        probes.extend((0..ring.nvars()).map(|k| ring.var(k)));
        let r = alg.rank();
        let mut witness = None;
        'outer: for i in 0..r {
            for j in i + 1..r {
                let br = alg.frame_bracket(i, j);
                for b in 0..self.rank() {
                    for f in &probes {
                        let v = self.basis_vector(alg, b, f.clone());
                        let lhs = self.act_element(alg, &br, &v);
                        let ij = self.act(alg, i, &self.act(alg, j, &v));
                        let ji = self.act(alg, j, &self.act(alg, i, &v));
                        let rhs: Vec<Poly> = ij.iter().zip(&ji).map(|(a, b)| a - b).collect();
                        if lhs != rhs {
                            let diff: Vec<Poly> =
                                lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                            witness = Some(format!(
                                "({}, {}) on {}: defect {}",
                                alg.name(i),
                                alg.name(j),
                                display_vector(ring, &self.names, &v),
                                display_vector(ring, &self.names, &diff)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.record("flatness", witness);
        if self.weights.is_some() || ring.nvars() > 0 {
            if let Err(e) = self.weights(alg) {
                if self.weights.is_some() {
                    report.record("grading", Some(e.to_string()));
                }
            }
        }
        report
    }
}
