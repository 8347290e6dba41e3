//! Degreewise-finite 2-cosemisimplicial objects in the 2-category of finite
//! K-linear categories: hexagon checking, canonical connectors evaluated
//! through coherer words, the derived cochain complex with its coboundary of
//! whiskered coface images, reference- and base-object-invariance, the dual
//! path-space complex, and exact cohomology.

use crate::field::Field;
use crate::graph::FaceTuple;
use crate::lincat::{basis_vec, LinCategory, LinFunctor};
use crate::linalg::{columns, vec_add, vec_neg, Mat, SolveOutcome};
use crate::words::{canonical_word, CohererWord, Letter};
use crate::{Error, Result};
use std::collections::HashMap;

/// Access interface for a 2-cosemisimplicial object in `Cat_K` whose
/// categories are presented degreewise. Morphisms are passed around as raw
/// coordinate vectors in the hom space of the ambient category (for derived
/// models this is the full componentwise coordinate space; `hom_basis` cuts
/// out the actual hom space).
pub trait Csso<F: Field> {
    /// Categories `C^0 ... C^max_degree` are available.
    fn max_degree(&self) -> usize;
    fn object_count(&self, n: usize) -> usize;
    /// `F^i_n` on objects: `|C^{n-1}| -> |C^n|`, `0 <= i <= n`.
    fn coface_obj(&self, n: usize, i: usize, a: usize) -> usize;
    fn hom_dim(&self, n: usize, a: usize, b: usize) -> usize;
    /// `g . f` in `C^n` for `f: a -> b`, `g: b -> c`.
    fn compose(&self, n: usize, a: usize, b: usize, c: usize, g: &[F], f: &[F]) -> Vec<F>;
    fn identity(&self, n: usize, a: usize) -> Vec<F>;
    /// `F^i_n` on a morphism `m: a -> b` of `C^{n-1}`.
    fn coface_mor(&self, n: usize, i: usize, a: usize, b: usize, m: &[F]) -> Vec<F>;
    /// Component of the coherer `tau^n_{ij}: F^j_{n+1} F^i_n => F^i_{n+1} F^{j-1}_n`
    /// at an object `a` of `C^{n-1}`; a morphism of `C^{n+1}`.
    fn coherer_component(&self, n: usize, i: usize, j: usize, a: usize) -> Vec<F>;
    /// Component of the enhancement `phi: F^1_1 => F^0_1` at `a` in `C^0`;
    /// `None` when the object is not enhanced.
    fn phi_component(&self, a: usize) -> Option<Vec<F>>;
    /// Basis of `Hom_{C^n}(a, b)` inside the raw coordinate space.
    fn hom_basis(&self, n: usize, a: usize, b: usize) -> Vec<Vec<F>>;

    fn is_enhanced(&self) -> bool {
        self.object_count(0) > 0 && self.phi_component(0).is_some()
    }

    /// Inverse of `m: a -> b` in `C^n` by exact solve.
    fn invert(&self, n: usize, a: usize, b: usize, m: &[F]) -> Result<Vec<F>> {
        let dba = self.hom_dim(n, b, a);
        let cols: Vec<Vec<F>> =
            (0..dba).map(|c| self.compose(n, a, b, a, &basis_vec(dba, c), m)).collect();
        let sys = columns(&cols, self.hom_dim(n, a, a));
        let g = match sys.solve(&self.identity(n, a)) {
            SolveOutcome::Solved { particular, .. } => particular,
            SolveOutcome::Inconsistent => return Err(Error::NotInvertible),
        };
        if self.compose(n, b, a, b, m, &g) != self.identity(n, b) {
            return Err(Error::NotInvertible);
        }
        Ok(g)
    }

    /// Object reached from `x0` in `C^{s-1}` by the coface path of a tuple.
    fn path_object(&self, t: &FaceTuple, x0: usize) -> usize {
        let mut cur = x0;
        for (q, &i) in t.entries.iter().enumerate() {
            cur = self.coface_obj(t.s + q, i, cur);
        }
        cur
    }
}

/// An explicitly tabulated 2-cosemisimplicial object.
#[derive(Clone, Debug)]
pub struct ExplicitCsso<F: Field> {
    /// `C^0 ... C^N`.
    pub categories: Vec<LinCategory<F>>,
    /// `cofaces[n-1][i]` is `F^i_n : C^{n-1} -> C^n` for `1 <= n <= N`.
    pub cofaces: Vec<Vec<LinFunctor<F>>>,
    /// `coherers[(n,i,j)][a]` is the component of `tau^n_{ij}` at object `a`.
    pub coherers: HashMap<(usize, usize, usize), Vec<Vec<F>>>,
    /// Components of `phi` per object of `C^0`, when enhanced.
    pub phi: Option<Vec<Vec<F>>>,
}

impl<F: Field> ExplicitCsso<F> {
    pub fn coface(&self, n: usize, i: usize) -> &LinFunctor<F> {
        &self.cofaces[n - 1][i]
    }

    /// Structural validation: functors are functorial, coherers natural and
    /// invertible, plus the hexagons and the phi relation via `check_csso`.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n_max = self.max_degree();
        for n in 1..=n_max {
            for (i, f) in self.cofaces[n - 1].iter().enumerate() {
                for msg in f.validate(&self.categories[n - 1], &self.categories[n]) {
                    bad.push(format!("coface F^{i}_{n}: {msg}"));
                }
            }
            if self.cofaces[n - 1].len() != n + 1 {
                bad.push(format!("level {n} must have {} cofaces", n + 1));
            }
        }
        for (&(n, i, j), comps) in &self.coherers {
            let src_cat = &self.categories[n - 1];
            for a in 0..src_cat.object_count() {
                let top = self.coface_obj(n + 1, j, self.coface_obj(n, i, a));
                let bot = self.coface_obj(n + 1, i, self.coface_obj(n, j - 1, a));
                let comp = &comps[a];
                if self.invert(n + 1, top, bot, comp).is_err() {
                    bad.push(format!("coherer ({n},{i},{j}) not invertible at object {a}"));
                }
                for b in 0..src_cat.object_count() {
                    for e in 0..src_cat.hom_dim(a, b) {
                        let m = basis_vec(src_cat.hom_dim(a, b), e);
                        let top_b = self.coface_obj(n + 1, j, self.coface_obj(n, i, b));
                        let bot_b = self.coface_obj(n + 1, i, self.coface_obj(n, j - 1, b));
                        let up = self.coface_mor(
                            n + 1,
                            j,
                            self.coface_obj(n, i, a),
                            self.coface_obj(n, i, b),
                            &self.coface_mor(n, i, a, b, &m),
                        );
                        let down = self.coface_mor(
                            n + 1,
                            i,
                            self.coface_obj(n, j - 1, a),
                            self.coface_obj(n, j - 1, b),
                            &self.coface_mor(n, j - 1, a, b, &m),
                        );
                        let lhs = self.compose(n + 1, top, top_b, bot_b, &comps[b], &up);
                        let rhs = self.compose(n + 1, top, bot, bot_b, &down, comp);
                        if lhs != rhs {
                            bad.push(format!(
                                "coherer ({n},{i},{j}) not natural at basis {e} of hom({a},{b})"
                            ));
                        }
                    }
                }
            }
        }
        bad.extend(check_csso(self));
        bad
    }
}

impl<F: Field> Csso<F> for ExplicitCsso<F> {
    fn max_degree(&self) -> usize {
        self.categories.len() - 1
    }
    fn object_count(&self, n: usize) -> usize {
        self.categories[n].object_count()
    }
    fn coface_obj(&self, n: usize, i: usize, a: usize) -> usize {
        self.cofaces[n - 1][i].apply_obj(a)
    }
    fn hom_dim(&self, n: usize, a: usize, b: usize) -> usize {
        self.categories[n].hom_dim(a, b)
    }
    fn compose(&self, n: usize, a: usize, b: usize, c: usize, g: &[F], f: &[F]) -> Vec<F> {
        self.categories[n].compose(a, b, c, g, f)
    }
    fn identity(&self, n: usize, a: usize) -> Vec<F> {
        self.categories[n].identity(a)
    }
    fn coface_mor(&self, n: usize, i: usize, a: usize, b: usize, m: &[F]) -> Vec<F> {
        self.cofaces[n - 1][i].apply_mor(&self.categories[n], a, b, m)
    }
    fn coherer_component(&self, n: usize, i: usize, j: usize, a: usize) -> Vec<F> {
        self.coherers[&(n, i, j)][a].clone()
    }
    fn phi_component(&self, a: usize) -> Option<Vec<F>> {
        self.phi.as_ref().map(|p| p[a].clone())
    }
    fn hom_basis(&self, n: usize, a: usize, b: usize) -> Vec<Vec<F>> {
        (0..self.hom_dim(n, a, b)).map(|i| basis_vec(self.hom_dim(n, a, b), i)).collect()
    }
}

/// Evaluate all hexagon coherence diagrams within the model's degree range,
/// plus the phi relation when enhanced. Returns the violations.
pub fn check_csso<F: Field, M: Csso<F>>(m: &M) -> Vec<String> {
    let mut bad = Vec::new();
    let n_max = m.max_degree();
    for n in 1..=n_max.saturating_sub(2) {
        for i in 0..=n + 2 {
            for j in i + 1..=n + 2 {
                for k in j + 1..=n + 2 {
                    for a in 0..m.object_count(n - 1) {
                        if let Some(msg) = hexagon_violation(m, n, i, j, k, a) {
                            bad.push(msg);
                        }
                    }
                }
            }
        }
    }
    if m.is_enhanced() && n_max >= 2 {
        for a in 0..m.object_count(0) {
            if let Some(msg) = phi_relation_violation(m, a) {
                bad.push(msg);
            }
        }
    }
    bad
}

fn hexagon_violation<F: Field, M: Csso<F>>(
    m: &M,
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    a: usize,
) -> Option<String> {
    let fi = m.coface_obj(n, i, a);
    let fj1 = m.coface_obj(n, j - 1, a);
    let fk2 = m.coface_obj(n, k - 2, a);
    let v0 = m.coface_obj(n + 2, k, m.coface_obj(n + 1, j, fi));
    let v1 = m.coface_obj(n + 2, k, m.coface_obj(n + 1, i, fj1));
    let v2 = m.coface_obj(n + 2, i, m.coface_obj(n + 1, k - 1, fj1));
    let v3 = m.coface_obj(n + 2, i, m.coface_obj(n + 1, j - 1, fk2));
    let w1 = m.coface_obj(n + 2, j, m.coface_obj(n + 1, k - 1, fi));
    let w2 = m.coface_obj(n + 2, j, m.coface_obj(n + 1, i, fk2));

    // top path: 1_{F^k} o tau^n_{ij}, then tau^{n+1}_{ik} o 1_{F^{j-1}},
    // then 1_{F^i} o tau^n_{j-1,k-1}
    let e1 = {
        let c = m.coherer_component(n, i, j, a);
        let src = m.coface_obj(n + 1, j, fi);
        let dst = m.coface_obj(n + 1, i, fj1);
        m.coface_mor(n + 2, k, src, dst, &c)
    };
    let e2 = m.coherer_component(n + 1, i, k, fj1);
    let e3 = {
        let c = m.coherer_component(n, j - 1, k - 1, a);
        let src = m.coface_obj(n + 1, k - 1, fj1);
        let dst = m.coface_obj(n + 1, j - 1, fk2);
        m.coface_mor(n + 2, i, src, dst, &c)
    };
    let top = {
        let s1 = m.compose(n + 2, v0, v1, v2, &e2, &e1);
        m.compose(n + 2, v0, v2, v3, &e3, &s1)
    };

    // bottom path: tau^{n+1}_{jk} o 1_{F^i}, then 1_{F^j} o tau^n_{i,k-1},
    // then tau^{n+1}_{ij} o 1_{F^{k-2}}
    let f1 = m.coherer_component(n + 1, j, k, fi);
    let f2 = {
        let c = m.coherer_component(n, i, k - 1, a);
        let src = m.coface_obj(n + 1, k - 1, fi);
        let dst = m.coface_obj(n + 1, i, fk2);
        m.coface_mor(n + 2, j, src, dst, &c)
    };
    let f3 = m.coherer_component(n + 1, i, j, fk2);
    let bottom = {
        let s1 = m.compose(n + 2, v0, w1, w2, &f2, &f1);
        m.compose(n + 2, v0, w2, v3, &f3, &s1)
    };

    (top != bottom).then(|| format!("hexagon ({i},{j},{k}) at level {n} fails on object {a}"))
}

fn phi_relation_violation<F: Field, M: Csso<F>>(m: &M, a: usize) -> Option<String> {
    let phi = m.phi_component(a)?;
    let f1a = m.coface_obj(1, 1, a);
    let f0a = m.coface_obj(1, 0, a);
    // LHS: tau^1_{01} . (1_{F^1_2} o phi) . tau^1_{12}
    let t12 = m.coherer_component(1, 1, 2, a);
    let v0 = m.coface_obj(2, 2, f1a);
    let v1 = m.coface_obj(2, 1, f1a);
    let v2 = m.coface_obj(2, 1, f0a);
    let v3 = m.coface_obj(2, 0, f0a);
    let whisk1 = m.coface_mor(2, 1, f1a, f0a, &phi);
    let t01 = m.coherer_component(1, 0, 1, a);
    let lhs = {
        let s1 = m.compose(2, v0, v1, v2, &whisk1, &t12);
        m.compose(2, v0, v2, v3, &t01, &s1)
    };
    // RHS: (1_{F^0_2} o phi) . tau^1_{02} . (1_{F^2_2} o phi)
    let w1 = m.coface_obj(2, 2, f0a);
    let w2 = m.coface_obj(2, 0, f1a);
    let whisk2 = m.coface_mor(2, 2, f1a, f0a, &phi);
    let t02 = m.coherer_component(1, 0, 2, a);
    let whisk0 = m.coface_mor(2, 0, f1a, f0a, &phi);
    let rhs = {
        let s1 = m.compose(2, v0, w1, w2, &t02, &whisk2);
        m.compose(2, v0, w2, v3, &whisk0, &s1)
    };
    (lhs != rhs).then(|| format!("phi relation fails at object {a}"))
}

// ---------------------------------------------------------------------------
// word evaluation and canonical connectors
// ---------------------------------------------------------------------------

/// Evaluate one letter at a base object `x0` of `C^{s-1}`: the whiskered
/// coherer (or phi) component, inverted for backward letters. Returns the
/// endpoint objects and the morphism in `C^{s+k}`.
fn evaluate_letter<F: Field, M: Csso<F>>(
    m: &M,
    letter: &Letter,
    x0: usize,
) -> Result<(usize, usize, Vec<F>)> {
    let fwd_src = &letter.edge.source;
    let s = fwd_src.s;
    let k = fwd_src.k();
    if s + k > m.max_degree() {
        return Err(Error::DegreeError { needed: s + k, max: m.max_degree() });
    }
    let (mut cur_src, mut cur_dst, mut val, start) = match letter.edge.kind {
        crate::graph::EdgeKind::Phi => {
            let phi = m.phi_component(x0).ok_or_else(|| {
                Error::Connectivity(format!("{fwd_src:?}"), format!("{:?}", letter.edge.target))
            })?;
            let a = m.coface_obj(1, 1, x0);
            let b = m.coface_obj(1, 0, x0);
            (a, b, phi, 1usize)
        }
        crate::graph::EdgeKind::Coherer { laterality, i, j } => {
            // base object below the coherer: apply entries 0..laterality-1
            let mut y = x0;
            for q in 0..laterality - 1 {
                y = m.coface_obj(s + q, fwd_src.entries[q], y);
            }
            let lvl = s + laterality - 1;
            let comp = m.coherer_component(lvl, i, j, y);
            let a = m.coface_obj(lvl + 1, j, m.coface_obj(lvl, i, y));
            let b = m.coface_obj(lvl + 1, i, m.coface_obj(lvl, j - 1, y));
            (a, b, comp, laterality + 1)
        }
    };
    // whisker with the cofaces above the move (equal in source and target)
    for q in start..=k {
        let idx = fwd_src.entries[q];
        debug_assert_eq!(idx, letter.edge.target.entries[q]);
        let ns = m.coface_obj(s + q, idx, cur_src);
        let nd = m.coface_obj(s + q, idx, cur_dst);
        val = m.coface_mor(s + q, idx, cur_src, cur_dst, &val);
        cur_src = ns;
        cur_dst = nd;
    }
    if letter.inverse {
        let inv = m.invert(s + k, cur_src, cur_dst, &val)?;
        Ok((cur_dst, cur_src, inv))
    } else {
        Ok((cur_src, cur_dst, val))
    }
}

/// Evaluate a coherer word at a base object: the component at `x0` of the
/// composite of whiskered coherers it denotes, a morphism of `C^{s+k}`.
pub fn evaluate_word_at<F: Field, M: Csso<F>>(
    m: &M,
    w: &CohererWord,
    x0: usize,
) -> Result<Vec<F>> {
    w.validate()?;
    let level = w.source.s + w.source.k();
    if level > m.max_degree() {
        return Err(Error::DegreeError { needed: level, max: m.max_degree() });
    }
    let src_obj = m.path_object(&w.source, x0);
    let mut cur_obj = src_obj;
    let mut acc = m.identity(level, src_obj);
    for letter in &w.letters {
        let (a, b, val) = evaluate_letter(m, letter, x0)?;
        debug_assert_eq!(a, cur_obj, "letter endpoints drift");
        acc = m.compose(level, src_obj, a, b, &val, &acc);
        cur_obj = b;
    }
    debug_assert_eq!(cur_obj, m.path_object(&w.target, x0));
    Ok(acc)
}

/// Evaluate a word at every object of `C^{s-1}`: the full natural
/// transformation it denotes, component by component.
pub fn evaluate_word<F: Field, M: Csso<F>>(m: &M, w: &CohererWord) -> Result<Vec<Vec<F>>> {
    (0..m.object_count(w.source.s - 1)).map(|x0| evaluate_word_at(m, w, x0)).collect()
}

/// The canonical connector between two parallel coface paths, evaluated at a
/// base object. With an enhanced model it may cross components through phi;
/// otherwise unreachable pairs surface as connectivity errors.
pub fn canonical_connector<F: Field, M: Csso<F>>(
    m: &M,
    from: &FaceTuple,
    to: &FaceTuple,
    x0: usize,
) -> Result<Vec<F>> {
    let enhanced = m.is_enhanced() && from.s == 1;
    let word = canonical_word(from, to, enhanced)?
        .ok_or_else(|| Error::Connectivity(format!("{from:?}"), format!("{to:?}")))?;
    evaluate_word_at(m, &word, x0)
}

/// Like `canonical_connector` but never using phi expansions; for the dual
/// path-space complex over plain objects.
pub fn plain_connector<F: Field, M: Csso<F>>(
    m: &M,
    from: &FaceTuple,
    to: &FaceTuple,
    x0: usize,
) -> Result<Vec<F>> {
    let word = canonical_word(from, to, false)?
        .ok_or_else(|| Error::Connectivity(format!("{from:?}"), format!("{to:?}")))?;
    evaluate_word_at(m, &word, x0)
}

// ---------------------------------------------------------------------------
// reference choices and the derived complex
// ---------------------------------------------------------------------------

/// A base object of `C^0` plus, for every degree `n >= 1`, the index tuples
/// defining the domain and codomain reference objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceChoice {
    pub base_object: usize,
    /// `mu[n-1]` has length `n`, entries `mu[n-1][q-1] in 0..=q`.
    pub mu: Vec<Vec<usize>>,
    pub nu: Vec<Vec<usize>>,
}

impl ReferenceChoice {
    /// The references recovering the deformation complex of an iterate tower:
    /// `mu^n = (1, 2, ..., n)`, `nu^n = (0, 1, ..., n-1)`.
    pub fn standard(max_degree: usize) -> Self {
        ReferenceChoice {
            base_object: 0,
            mu: (1..=max_degree).map(|n| (1..=n).collect()).collect(),
            nu: (1..=max_degree).map(|n| (0..n).collect()).collect(),
        }
    }

    pub fn validate(&self, max_degree: usize, object_count0: usize) -> Result<()> {
        if self.base_object >= object_count0 {
            return Err(Error::InvalidArgument("base object out of range".into()));
        }
        if self.mu.len() < max_degree || self.nu.len() < max_degree {
            return Err(Error::InvalidArgument("reference tuples missing degrees".into()));
        }
        for (v, name) in [(&self.mu, "mu"), (&self.nu, "nu")] {
            for (n, t) in v.iter().enumerate().take(max_degree) {
                if t.len() != n + 1 {
                    return Err(Error::InvalidArgument(format!(
                        "{name} tuple for degree {} must have length {}",
                        n + 1,
                        n + 1
                    )));
                }
                for (q, &e) in t.iter().enumerate() {
                    if e > q + 1 {
                        return Err(Error::InvalidArgument(format!(
                            "{name}^{}_{} = {e} exceeds bound {}",
                            n + 1,
                            q + 1,
                            q + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mu_tuple(&self, n: usize) -> FaceTuple {
        FaceTuple::new(1, self.mu[n - 1].clone()).unwrap()
    }

    pub fn nu_tuple(&self, n: usize) -> FaceTuple {
        FaceTuple::new(1, self.nu[n - 1].clone()).unwrap()
    }
}

/// A cochain complex of exact modules extracted from a 2-cosemisimplicial
/// object: module bases, coboundary matrices, and the certified d^2 = 0.
#[derive(Clone, Debug)]
pub struct DerivedComplex<F: Field> {
    /// Lowest degree carrying a module (1 for the full complex, 2 for the
    /// dual path-space complex).
    pub start_degree: usize,
    /// `modules[d]` is the basis of `M^{start_degree + d}` in raw coordinates.
    pub modules: Vec<Vec<Vec<F>>>,
    /// Reference objects `(X_n, X'_n)` per stored degree.
    pub objects: Vec<(usize, usize)>,
    /// `deltas[d]: M^{start+d} -> M^{start+d+1}` in the module bases.
    pub deltas: Vec<Mat<F>>,
    /// Exact certificate that consecutive coboundaries compose to zero.
    pub dd_is_zero: bool,
}

impl<F: Field> DerivedComplex<F> {
    pub fn module_dim(&self, degree: usize) -> usize {
        self.modules[degree - self.start_degree].len()
    }

    pub fn delta(&self, from_degree: usize) -> &Mat<F> {
        &self.deltas[from_degree - self.start_degree]
    }

    /// `dim H^n = dim ker(delta out of n) - rank(delta into n)` for every
    /// degree where both are known (all but the top degree).
    pub fn cohomology_dims(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in 0..self.modules.len().saturating_sub(1) {
            let degree = self.start_degree + d;
            let dim = self.modules[d].len();
            let out_rank = self.deltas[d].rank();
            let kernel = dim - out_rank;
            let in_rank = if d == 0 { 0 } else { self.deltas[d - 1].rank() };
            out.push((degree, kernel - in_rank));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "start_degree": self.start_degree,
            "module_dims": self.modules.iter().map(|m| m.len()).collect::<Vec<_>>(),
            "delta_shapes": self.deltas.iter().map(|d| [d.rows, d.cols]).collect::<Vec<_>>(),
            "deltas": self.deltas.iter().map(|d| {
                (0..d.rows).flat_map(|r| {
                    (0..d.cols).filter(|&c| !d[(r,c)].is_zero())
                        .map(|c| serde_json::json!([r, c, d[(r,c)].to_string_repr()]))
                        .collect::<Vec<_>>()
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "dd_is_zero": self.dd_is_zero,
            "cohomology_dims": self.cohomology_dims(),
        })
    }
}

/// Express raw vectors in a module basis; errors if some vector is outside
/// the span.
fn in_basis<F: Field>(basis: &[Vec<F>], raw_dim: usize, vectors: &[Vec<F>]) -> Result<Mat<F>> {
    let b = columns(basis, raw_dim);
    let v = columns(vectors, raw_dim);
    b.express_in_columns(&v)
        .ok_or_else(|| Error::Invalid("coboundary image escapes the module".into()))
}

type Connector<'a, F> = dyn Fn(&FaceTuple, &FaceTuple, usize) -> Result<Vec<F>> + 'a;

/// Shared assembly for the derived complexes: modules `Hom(X_n, X'_n)` and
/// coboundaries `sum_i (sign i) alpha_i . F^i_n(phi) . beta_i` over the given
/// range of coface indices.
fn build_complex_with<F: Field, M: Csso<F>>(
    m: &M,
    refs: &ReferenceChoice,
    start_degree: usize,
    term_range: impl Fn(usize) -> std::ops::RangeInclusive<usize>,
    term_sign: impl Fn(usize) -> bool,
    connector: &Connector<'_, F>,
    budget: usize,
) -> Result<DerivedComplex<F>> {
    let n_max = m.max_degree();
    refs.validate(n_max, m.object_count(0))?;
    let x0 = refs.base_object;

    let mut modules = Vec::new();
    let mut objects = Vec::new();
    let mut raw_dims = Vec::new();
    let mut total = 0usize;
    for n in start_degree..=n_max {
        let xn = m.path_object(&refs.mu_tuple(n), x0);
        let xn2 = m.path_object(&refs.nu_tuple(n), x0);
        let dim = m.hom_dim(n, xn, xn2);
        total += dim;
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        modules.push(m.hom_basis(n, xn, xn2));
        objects.push((xn, xn2));
        raw_dims.push(dim);
    }

    let mut deltas = Vec::new();
    for n in start_degree + 1..=n_max {
        let d = n - start_degree;
        let (xn, xn2) = objects[d];
        let (xp, xp2) = objects[d - 1];
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for i in term_range(n) {
            let mut from_nu = refs.nu[n - 2].clone();
            from_nu.push(i);
            alphas.push(connector(&FaceTuple::new(1, from_nu)?, &refs.nu_tuple(n), x0)?);
            let mut to_mu = refs.mu[n - 2].clone();
            to_mu.push(i);
            betas.push(connector(&refs.mu_tuple(n), &FaceTuple::new(1, to_mu)?, x0)?);
        }
        let cols: Vec<Vec<F>> = modules[d - 1]
            .iter()
            .map(|phi| {
                let mut acc = vec![F::zero(); raw_dims[d]];
                for (t, i) in term_range(n).enumerate() {
                    let fi_xp = m.coface_obj(n, i, xp);
                    let fi_xp2 = m.coface_obj(n, i, xp2);
                    let fphi = m.coface_mor(n, i, xp, xp2, phi);
                    let partial = m.compose(n, xn, fi_xp, fi_xp2, &fphi, &betas[t]);
                    let term = m.compose(n, xn, fi_xp2, xn2, &alphas[t], &partial);
                    acc = if term_sign(i) {
                        vec_add(&acc, &term)
                    } else {
                        vec_add(&acc, &vec_neg(&term))
                    };
                }
                acc
            })
            .collect();
        deltas.push(in_basis(&modules[d], raw_dims[d], &cols)?);
    }

    let dd_is_zero = deltas.windows(2).all(|w| w[1].mul(&w[0]).is_zero());
    Ok(DerivedComplex { start_degree, modules, objects, deltas, dd_is_zero })
}

/// The derived cochain complex of an enhanced object: modules
/// `M^n = Hom(X_n, X'_n)` and coboundary
/// `delta(phi) = sum_{i=0}^n (-1)^i alpha_i . F^i_n(phi) . beta_i`, with the
/// connectors evaluated through canonical enhanced words. The result carries
/// an exact `d^2 = 0` certificate; non-enhanced objects are refused, since
/// the connectors would not exist.
pub fn build_complex<F: Field, M: Csso<F>>(
    m: &M,
    refs: &ReferenceChoice,
    budget: usize,
) -> Result<DerivedComplex<F>> {
    if !m.is_enhanced() {
        return Err(Error::InvalidArgument(
            "the full derived complex needs an enhancement".into(),
        ));
    }
    if m.max_degree() < 2 {
        return Err(Error::DegreeError { needed: 2, max: m.max_degree() });
    }
    let connector =
        move |from: &FaceTuple, to: &FaceTuple, x0: usize| canonical_connector(m, from, to, x0);
    let complex = build_complex_with(m, refs, 1, |n| 0..=n, |i| i % 2 == 0, &connector, budget)?;
    if !complex.dd_is_zero {
        return Err(Error::Invalid("derived complex does not square to zero".into()));
    }
    Ok(complex)
}

/// The dual path-space complex: starts at degree 2 and omits the outer
/// cofaces, `delta = sum_{i=1}^{n-1} (-1)^{i+1} [term i]`. No enhancement is
/// needed, but the reference tuples must keep every term inside a single
/// component; violations surface as connectivity errors naming the pair.
pub fn dual_path_complex<F: Field, M: Csso<F>>(
    m: &M,
    refs: &ReferenceChoice,
    budget: usize,
) -> Result<DerivedComplex<F>> {
    if m.max_degree() < 3 {
        return Err(Error::DegreeError { needed: 3, max: m.max_degree() });
    }
    let connector =
        move |from: &FaceTuple, to: &FaceTuple, x0: usize| plain_connector(m, from, to, x0);
    let complex =
        build_complex_with(m, refs, 2, |n| 1..=n - 1, |i| i % 2 == 1, &connector, budget)?;
    if !complex.dd_is_zero {
        return Err(Error::Invalid("dual path complex does not square to zero".into()));
    }
    Ok(complex)
}

/// A degreewise isomorphism of derived complexes commuting with both
/// coboundaries, verified exactly.
#[derive(Clone, Debug)]
pub struct ComplexIso<F: Field> {
    pub maps: Vec<Mat<F>>,
}

/// The reference-change isomorphism: conjugation by canonical connectors
/// between the old and new reference objects.
pub fn complex_isomorphism<F: Field, M: Csso<F>>(
    m: &M,
    refs1: &ReferenceChoice,
    refs2: &ReferenceChoice,
    c1: &DerivedComplex<F>,
    c2: &DerivedComplex<F>,
) -> Result<ComplexIso<F>> {
    if refs1.base_object != refs2.base_object {
        return Err(Error::InvalidArgument(
            "reference change keeps the base object; use base_change_isomorphism".into(),
        ));
    }
    let x0 = refs1.base_object;
    let n_max = m.max_degree();
    let mut maps = Vec::new();
    for n in 1..=n_max {
        let d = n - 1;
        let (x1, x1p) = c1.objects[d];
        let (x2, x2p) = c2.objects[d];
        let pre = canonical_connector(m, &refs2.mu_tuple(n), &refs1.mu_tuple(n), x0)?;
        let post = canonical_connector(m, &refs1.nu_tuple(n), &refs2.nu_tuple(n), x0)?;
        let raw_dim = m.hom_dim(n, x2, x2p);
        let images: Vec<Vec<F>> = c1.modules[d]
            .iter()
            .map(|phi| {
                let part = m.compose(n, x2, x1, x1p, phi, &pre);
                m.compose(n, x2, x1p, x2p, &post, &part)
            })
            .collect();
        maps.push(in_basis(&c2.modules[d], raw_dim, &images)?);
    }
    verify_complex_iso(c1, c2, &maps)?;
    Ok(ComplexIso { maps })
}

/// The base-object-change isomorphism along an isomorphism `h: X -> Y` of
/// `C^0`: conjugation by the coface images of `h`.
pub fn base_change_isomorphism<F: Field, M: Csso<F>>(
    m: &M,
    refs_x: &ReferenceChoice,
    refs_y: &ReferenceChoice,
    h: &[F],
    c1: &DerivedComplex<F>,
    c2: &DerivedComplex<F>,
) -> Result<ComplexIso<F>> {
    if refs_x.mu != refs_y.mu || refs_x.nu != refs_y.nu {
        return Err(Error::InvalidArgument(
            "base change uses the same reference tuples at a new object".into(),
        ));
    }
    let (x0, y0) = (refs_x.base_object, refs_y.base_object);
    let h_inv = m.invert(0, x0, y0, h)?;
    let n_max = m.max_degree();
    let mut maps = Vec::new();
    for n in 1..=n_max {
        let d = n - 1;
        let (x1, x1p) = c1.objects[d];
        let (y1, y1p) = c2.objects[d];
        // F^{mu}(h^{-1}): Y_n -> X_n and F^{nu}(h): X'_n -> Y'_n
        let pre = apply_path_mor(m, &refs_x.mu_tuple(n), y0, x0, &h_inv);
        let post = apply_path_mor(m, &refs_x.nu_tuple(n), x0, y0, h);
        let raw_dim = m.hom_dim(n, y1, y1p);
        let images: Vec<Vec<F>> = c1.modules[d]
            .iter()
            .map(|phi| {
                let part = m.compose(n, y1, x1, x1p, phi, &pre);
                m.compose(n, y1, x1p, y1p, &post, &part)
            })
            .collect();
        maps.push(in_basis(&c2.modules[d], raw_dim, &images)?);
    }
    verify_complex_iso(c1, c2, &maps)?;
    Ok(ComplexIso { maps })
}

/// Image of a morphism of `C^{s-1}` under the coface path of a tuple.
pub fn apply_path_mor<F: Field, M: Csso<F>>(
    m: &M,
    t: &FaceTuple,
    a: usize,
    b: usize,
    mor: &[F],
) -> Vec<F> {
    let mut cur_a = a;
    let mut cur_b = b;
    let mut val = mor.to_vec();
    for (q, &i) in t.entries.iter().enumerate() {
        let n = t.s + q;
        let na = m.coface_obj(n, i, cur_a);
        let nb = m.coface_obj(n, i, cur_b);
        val = m.coface_mor(n, i, cur_a, cur_b, &val);
        cur_a = na;
        cur_b = nb;
    }
    val
}

fn verify_complex_iso<F: Field>(
    c1: &DerivedComplex<F>,
    c2: &DerivedComplex<F>,
    maps: &[Mat<F>],
) -> Result<()> {
    for (d, delta1) in c1.deltas.iter().enumerate() {
        let lhs = maps[d + 1].mul(delta1);
        let rhs = c2.deltas[d].mul(&maps[d]);
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "isomorphism square at degree {} does not commute",
                c1.start_degree + d
            )));
        }
    }
    for (d, f) in maps.iter().enumerate() {
        if f.rows != f.cols || f.rank() != f.rows {
            return Err(Error::Invalid(format!("degree {} map is not invertible", d + 1)));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// a family of explicit enhanced objects over one-object algebras
// ---------------------------------------------------------------------------

/// Data for an explicitly tabulated enhanced object over a single commutative
/// algebra: `C^0` an indiscrete two-object algebra category (so base-object
/// change is testable), higher categories one-object; all cofaces at one
/// level equal, which reduces the hexagons to a solvable family of units.
pub struct AlgebraCssoSpec<F: Field> {
    pub algebra: crate::lincat::Algebra<F>,
    /// Matrix of the algebra endomorphism `rho_n` per level `1..=N`.
    pub rhos: Vec<Mat<F>>,
    /// `w_1(1), w_1(2)`; the hexagons force `w_{n+1}(j) = rho_{n+2}(w_n(j))`
    /// below the top index.
    pub w1: (Vec<F>, Vec<F>),
    /// The free unit `w_{n}(n+1)` for `n = 2..N-1`.
    pub w_free: Vec<Vec<F>>,
    pub phi: Option<Vec<F>>,
}

pub fn algebra_csso<F: Field>(
    spec: &AlgebraCssoSpec<F>,
    max_degree: usize,
) -> Result<ExplicitCsso<F>> {
    let alg = &spec.algebra;
    if !alg.is_commutative() {
        return Err(Error::InvalidArgument(
            "the algebra family needs a commutative algebra".into(),
        ));
    }
    let c0 = LinCategory::indiscrete_with_algebra(vec!["X".into(), "Y".into()], alg);
    let cn = LinCategory::one_object(alg);
    let mut categories = vec![c0];
    categories.extend(std::iter::repeat(cn).take(max_degree));

    let mut cofaces = Vec::new();
    for n in 1..=max_degree {
        let rho = &spec.rhos[n - 1];
        let mut hom_maps = HashMap::new();
        if n == 1 {
            for x in 0..2 {
                for y in 0..2 {
                    hom_maps.insert((x, y), rho.clone());
                }
            }
        } else {
            hom_maps.insert((0, 0), rho.clone());
        }
        let obj_map = vec![0; categories[n - 1].object_count()];
        let f = LinFunctor { obj_map, hom_maps };
        cofaces.push(vec![f; n + 1]);
    }

    // w[n-1][j-1] = w_n(j) for j = 1..=n+1
    let mut w: Vec<Vec<Vec<F>>> = vec![vec![spec.w1.0.clone(), spec.w1.1.clone()]];
    for n in 2..max_degree {
        let rho = &spec.rhos[n]; // rho_{n+1}
        let mut row: Vec<Vec<F>> = w[n - 2].iter().map(|v| rho.mul_vec(v)).collect();
        let free = spec
            .w_free
            .get(n - 2)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("missing free unit".into()))?;
        row.push(free);
        w.push(row);
    }
    for row in &w {
        for v in row {
            if alg.inv(v).is_none() {
                return Err(Error::InvalidArgument("coherer unit not invertible".into()));
            }
        }
    }

    let mut coherers = HashMap::new();
    for n in 1..max_degree {
        let objs = categories[n - 1].object_count();
        for i in 0..=n {
            for j in i + 1..=n + 1 {
                coherers.insert((n, i, j), vec![w[n - 1][j - 1].clone(); objs]);
            }
        }
    }

    let phi = spec.phi.as_ref().map(|p| vec![p.clone(); 2]);
    Ok(ExplicitCsso { categories, cofaces, coherers, phi })
}

/// Random valid enhanced object over `K[x]/(x^3)`. The construction solves
/// the hexagons and the phi relation by design; validity is still checked
/// independently in the tests.
pub fn random_algebra_csso<F: Field>(
    max_degree: usize,
    rng: &mut impl rand::Rng,
) -> Result<ExplicitCsso<F>> {
    let alg = crate::lincat::Algebra::<F>::truncated_poly(3);
    fn rand_unit<F: Field>(rng: &mut impl rand::Rng) -> Vec<F> {
        vec![
            F::from_i64(1 + rng.gen_range(0..2)),
            F::from_i64(rng.gen_range(-1..=1)),
            F::from_i64(rng.gen_range(-1..=1)),
        ]
    }
    fn rand_rho<F: Field>(rng: &mut impl rand::Rng) -> Mat<F> {
        // x -> c x + d x^2 with c nonzero, so x^2 -> c^2 x^2
        let c = F::from_i64(1 + rng.gen_range(0..2));
        let d = F::from_i64(rng.gen_range(-1..=1));
        let mut m = Mat::zero(3, 3);
        m[(0, 0)] = F::one();
        m[(1, 1)] = c.clone();
        m[(2, 1)] = d;
        m[(2, 2)] = c.mul(&c);
        m
    }
    let rhos: Vec<Mat<F>> = (0..max_degree).map(|_| rand_rho(rng)).collect();
    let phi = rand_unit(rng);
    // the phi relation pins w_1(1) = rho_2(phi)
    let w11 = rhos[1].mul_vec(&phi);
    let w12 = rand_unit(rng);
    let w_free: Vec<Vec<F>> = (2..max_degree).map(|_| rand_unit(rng)).collect();
    algebra_csso(
        &AlgebraCssoSpec { algebra: alg, rhos, w1: (w11, w12), w_free, phi: Some(phi) },
        max_degree,
    )
}

/// The all-identity tower over a one-object ground-field category: every
/// coface the identity, every coherer an identity 2-morphism.
pub fn identity_csso<F: Field>(max_degree: usize) -> ExplicitCsso<F> {
    let spec = AlgebraCssoSpec {
        algebra: crate::lincat::Algebra::<F>::ground(),
        rhos: (0..max_degree).map(|_| Mat::identity(1)).collect(),
        w1: (vec![F::one()], vec![F::one()]),
        w_free: (2..max_degree).map(|_| vec![F::one()]).collect(),
        phi: Some(vec![F::one()]),
    };
    algebra_csso(&spec, max_degree).expect("identity tower is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use rand::SeedableRng;

    fn ft(entries: &[usize]) -> FaceTuple {
        FaceTuple::new(1, entries.to_vec()).unwrap()
    }

    #[test]
    fn identity_tower_is_valid() {
        let m = identity_csso::<Rat>(4);
        assert!(m.validate().is_empty());
        assert!(m.is_enhanced());
    }

    #[test]
    fn random_towers_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
            let bad = m.validate();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn perturbed_coherer_pinpointed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
        m.coherers.get_mut(&(1, 0, 1)).unwrap()[0][1] =
            m.coherers[&(1, 0, 1)][0][1].add(&Rat::one());
        let bad = check_csso(&m);
        assert!(
            bad.iter().any(|s| s.contains("hexagon") || s.contains("phi relation")),
            "{bad:?}"
        );
    }

    #[test]
    fn word_evaluation_identity_cases() {
        let m = identity_csso::<Rat>(4);
        let w = CohererWord::empty(true, ft(&[1, 2, 0]));
        assert_eq!(evaluate_word_at(&m, &w, 0).unwrap(), vec![Rat::one()]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let word = crate::words::random_word(&ft(&[1, 2, 3]), true, 9, &mut rng);
        assert_eq!(evaluate_word_at(&m, &word, 0).unwrap(), vec![Rat::one()]);
    }

    #[test]
    fn parallel_words_evaluate_equal_in_random_models() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let models: Vec<_> =
            (0..3).map(|_| random_algebra_csso::<Rat>(4, &mut rng).unwrap()).collect();
        for k in 2..=3 {
            let g = crate::graph::build(1, k, true).unwrap();
            for _ in 0..25 {
                let start =
                    g.vertices[rand::Rng::gen_range(&mut rng, 0..g.vertices.len())].clone();
                let (w1, w2) =
                    crate::words::random_parallel_pair(&start, true, 10, &mut rng).unwrap();
                for m in &models {
                    for x0 in 0..2 {
                        let v1 = evaluate_word_at(m, &w1, x0).unwrap();
                        let v2 = evaluate_word_at(m, &w2, x0).unwrap();
                        assert_eq!(v1, v2);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_word_round_trip_evaluates_to_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
        let from = ft(&[1, 2, 1]);
        let to = ft(&[0, 0, 2]);
        let there = canonical_word(&from, &to, true).unwrap().unwrap();
        let back = canonical_word(&to, &from, true).unwrap().unwrap();
        let v1 = evaluate_word_at(&m, &there, 0).unwrap();
        let v2 = evaluate_word_at(&m, &back, 0).unwrap();
        let src = m.path_object(&from, 0);
        let mid = m.path_object(&to, 0);
        let round = m.compose(3, src, mid, src, &v2, &v1);
        assert_eq!(round, m.identity(3, src));
    }

    #[test]
    fn connector_identity_and_connectivity_error() {
        let m = identity_csso::<Rat>(3);
        let t = ft(&[1, 1]);
        assert_eq!(canonical_connector(&m, &t, &t, 0).unwrap(), vec![Rat::one()]);
        let mut plain = m.clone();
        plain.phi = None;
        let err = canonical_connector(&plain, &ft(&[1, 1]), &ft(&[0, 0]), 0);
        assert!(matches!(err, Err(Error::Connectivity(_, _))));
    }

    #[test]
    fn derived_complex_identity_tower() {
        // all-identity tower: the coboundary telescopes to zero or an
        // isomorphism according to the parity of the term count
        let m = identity_csso::<Rat>(4);
        let refs = ReferenceChoice::standard(4);
        let c = build_complex(&m, &refs, 10_000).unwrap();
        assert!(c.dd_is_zero);
        for (d, delta) in c.deltas.iter().enumerate() {
            let n = 2 + d; // delta: M^{n-1} -> M^n has n+1 terms
            if n % 2 == 0 {
                assert_eq!(delta[(0, 0)], Rat::one(), "delta into degree {n}");
            } else {
                assert!(delta[(0, 0)].is_zero(), "delta into degree {n}");
            }
        }
    }

    #[test]
    fn derived_complex_squares_to_zero_on_random_models() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..3 {
            let m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
            let refs = ReferenceChoice::standard(4);
            let c = build_complex(&m, &refs, 10_000).unwrap();
            assert!(c.dd_is_zero);
            let refs2 = ReferenceChoice {
                base_object: 0,
                mu: vec![vec![1], vec![0, 2], vec![1, 0, 3], vec![0, 1, 1, 2]],
                nu: vec![vec![0], vec![1, 1], vec![0, 2, 0], vec![1, 2, 3, 0]],
            };
            let c2 = build_complex(&m, &refs2, 10_000).unwrap();
            assert!(c2.dd_is_zero);
            let iso = complex_isomorphism(&m, &refs, &refs2, &c, &c2).unwrap();
            assert_eq!(iso.maps.len(), 4);
        }
    }

    #[test]
    fn reference_change_is_identity_for_equal_refs() {
        let m = identity_csso::<Rat>(3);
        let refs = ReferenceChoice::standard(3);
        let c = build_complex(&m, &refs, 10_000).unwrap();
        let iso = complex_isomorphism(&m, &refs, &refs, &c, &c).unwrap();
        for f in &iso.maps {
            assert_eq!(*f, Mat::identity(f.rows));
        }
    }

    #[test]
    fn base_object_change_commutes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
        let refs_x = ReferenceChoice::standard(4);
        let refs_y = ReferenceChoice { base_object: 1, ..ReferenceChoice::standard(4) };
        let cx = build_complex(&m, &refs_x, 10_000).unwrap();
        let cy = build_complex(&m, &refs_y, 10_000).unwrap();
        let h = vec![Rat::one(), Rat::one(), Rat::zero()];
        base_change_isomorphism(&m, &refs_x, &refs_y, &h, &cx, &cy).unwrap();
    }

    #[test]
    fn dual_path_complex_needs_connected_references() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let m = random_algebra_csso::<Rat>(4, &mut rng).unwrap();
        let refs = ReferenceChoice {
            base_object: 0,
            mu: (1..=4).map(|n| vec![1; n]).collect(),
            nu: (1..=4).map(|n| vec![1; n]).collect(),
        };
        let c = dual_path_complex(&m, &refs, 10_000).unwrap();
        assert!(c.dd_is_zero);
        assert_eq!(c.start_degree, 2);
        // nu^2 = (1,1) but nu^3 = (0,0,0): the term F^i_3(X'_2) for i = 1,2
        // lies in a different component than X'_3
        let bad_refs = ReferenceChoice {
            base_object: 0,
            mu: (1..=4).map(|n| vec![1; n]).collect(),
            nu: vec![vec![1], vec![1, 1], vec![0, 0, 0], vec![1, 1, 1, 1]],
        };
        assert!(matches!(
            dual_path_complex(&m, &bad_refs, 10_000),
            Err(Error::Connectivity(_, _))
        ));
    }

    #[test]
    fn dual_path_identity_tower_parity() {
        let m = identity_csso::<Rat>(4);
        let refs = ReferenceChoice {
            base_object: 0,
            mu: (1..=4).map(|n| vec![1; n]).collect(),
            nu: (1..=4).map(|n| vec![1; n]).collect(),
        };
        let c = dual_path_complex(&m, &refs, 10_000).unwrap();
        // delta_3 has 2 terms with opposite signs; delta_4 has 3
        assert!(c.deltas[0][(0, 0)].is_zero());
        assert_eq!(c.deltas[1][(0, 0)], Rat::one());
    }

    #[test]
    fn cohomology_of_identity_tower() {
        let m = identity_csso::<Rat>(4);
        let refs = ReferenceChoice::standard(4);
        let c = build_complex(&m, &refs, 10_000).unwrap();
        assert_eq!(c.cohomology_dims(), vec![(1, 0), (2, 0), (3, 0)]);
    }
}
