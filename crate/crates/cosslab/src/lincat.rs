//! Finite K-linear categories with explicit hom bases and composition
//! tensors, K-linear functors, multifunctors (finite models of functors out
//! of a product of categories), natural transformations, strict K-linear
//! 2-categories, and the exact Nat-space solver.
//!
//! Conventions: the composition functor `c_{x,y,z}: C(x,y) x C(y,z) -> C(x,z)`
//! takes its first argument first, so `c(f, g) = g . f`. Vertical composition
//! of coordinates is written `compose(g, f)` = "g after f" throughout.

use crate::field::Field;
use crate::linalg::{columns, vec_is_zero, Mat, SolveOutcome};
use crate::par::maybe_par_map;
use crate::{Error, Result};
use std::collections::HashMap;

/// A finite-dimensional associative unital algebra with explicit structure
/// constants; `mult[a][b]` is the coordinate vector of `e_a * e_b`.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<F>>>,
    pub unit: Vec<F>,
}

impl<F: Field> Algebra<F> {
    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Algebra { dim: 1, mult: vec![vec![vec![F::one()]]], unit: vec![F::one()] }
    }

    /// The dual numbers `K[x]/(x^2)` with basis `(1, x)`.
    pub fn dual_numbers() -> Self {
        Self::truncated_poly(2)
    }

    /// Truncated polynomials `K[x]/(x^n)` with basis `(1, x, ..., x^{n-1})`.
    pub fn truncated_poly(n: usize) -> Self {
        let mut mult = vec![vec![vec![F::zero(); n]; n]; n];
        for (a, row) in mult.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                if a + b < n {
                    cell[a + b] = F::one();
                }
            }
        }
        let mut unit = vec![F::zero(); n];
        unit[0] = F::one();
        Algebra { dim: n, mult, unit }
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&xy.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| {
                self.mul(&basis_vec(self.dim, a), &basis_vec(self.dim, b))
                    == self.mul(&basis_vec(self.dim, b), &basis_vec(self.dim, a))
            })
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for a in 0..self.dim {
            let ea = basis_vec::<F>(self.dim, a);
            for b in 0..self.dim {
                let eb = basis_vec(self.dim, b);
                for c in 0..self.dim {
                    let ec = basis_vec(self.dim, c);
                    let lhs = self.mul(&self.mul(&ea, &eb), &ec);
                    let rhs = self.mul(&ea, &self.mul(&eb, &ec));
                    if lhs != rhs {
                        bad.push(format!("algebra associativity fails on ({a},{b},{c})"));
                    }
                }
            }
            if self.mul(&self.unit, &ea) != ea || self.mul(&ea, &self.unit) != ea {
                bad.push(format!("algebra unit fails on {a}"));
            }
        }
        bad
    }

    /// Invert an element, when possible, by solving the linear system.
    pub fn inv(&self, a: &[F]) -> Option<Vec<F>> {
        let m = Mat::from_fn(self.dim, self.dim, |r, c| self.mul(a, &basis_vec(self.dim, c))[r].clone());
        let x = match m.solve(&self.unit) {
            SolveOutcome::Solved { particular, .. } => particular,
            SolveOutcome::Inconsistent => return None,
        };
        (self.mul(&x, a) == self.unit && self.mul(a, &x) == self.unit).then_some(x)
    }
}

/// Unit coordinate vector.
pub fn basis_vec<F: Field>(dim: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = F::one();
    v
}

/// A finite K-linear category: objects, a basis for every hom space, and
/// exact composition structure constants.
#[derive(Clone, Debug)]
pub struct LinCategory<F: Field> {
    pub objects: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    /// `comp[(x,y,z)]`, when present, maps basis pairs to the coordinates of
    /// `g . f` in `hom(x,z)`; indexed `[g][f]`.
    comp: HashMap<(usize, usize, usize), Vec<Vec<Vec<F>>>>,
    identities: Vec<Vec<F>>,
}

impl<F: Field> LinCategory<F> {
    pub fn new(
        objects: Vec<String>,
        hom_dims: Vec<Vec<usize>>,
        comp: HashMap<(usize, usize, usize), Vec<Vec<Vec<F>>>>,
        identities: Vec<Vec<F>>,
    ) -> Self {
        LinCategory { objects, hom_dims, comp, identities }
    }

    /// One object with endomorphism algebra `alg`.
    pub fn one_object(alg: &Algebra<F>) -> Self {
        LinCategory::discrete_with_end(vec!["*".into()], alg)
    }

    /// Several objects, `End = alg` for each, zero homs between distinct
    /// objects.
    pub fn discrete_with_end(objects: Vec<String>, alg: &Algebra<F>) -> Self {
        let n = objects.len();
        let mut hom_dims = vec![vec![0; n]; n];
        let mut comp = HashMap::new();
        let mut identities = Vec::new();
        for x in 0..n {
            hom_dims[x][x] = alg.dim;
            comp.insert((x, x, x), alg.mult.clone());
            identities.push(alg.unit.clone());
        }
        LinCategory { objects, hom_dims, comp, identities }
    }

    /// All objects isomorphic: every hom space a copy of `alg`, with
    /// composition the algebra multiplication (an indiscrete `alg`-category).
    pub fn indiscrete_with_algebra(objects: Vec<String>, alg: &Algebra<F>) -> Self {
        let n = objects.len();
        let hom_dims = vec![vec![alg.dim; n]; n];
        let mut comp = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.insert((x, y, z), alg.mult.clone());
                }
            }
        }
        let identities = vec![alg.unit.clone(); n];
        LinCategory { objects, hom_dims, comp, identities }
    }

    /// All homs one-dimensional where `allowed(x, y)`, composites of basis
    /// elements the basis element (a linearized preorder). `allowed` must be
    /// reflexive and transitive.
    pub fn thin(objects: Vec<String>, allowed: impl Fn(usize, usize) -> bool) -> Self {
        let n = objects.len();
        let mut hom_dims = vec![vec![0; n]; n];
        let mut comp = HashMap::new();
        let mut identities = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if allowed(x, y) {
                    hom_dims[x][y] = 1;
                }
            }
        }
        for x in 0..n {
            assert_eq!(hom_dims[x][x], 1, "thin category must be reflexive");
            identities.push(vec![F::one()]);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if hom_dims[x][y] == 1 && hom_dims[y][z] == 1 {
                        assert_eq!(hom_dims[x][z], 1, "thin category must be transitive");
                        comp.insert((x, y, z), vec![vec![vec![F::one()]]]);
                    }
                }
            }
        }
        LinCategory { objects, hom_dims, comp, identities }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_dims[x][y]
    }

    pub fn identity(&self, x: usize) -> Vec<F> {
        self.identities[x].clone()
    }

    pub fn zero_mor(&self, x: usize, y: usize) -> Vec<F> {
        vec![F::zero(); self.hom_dim(x, y)]
    }

    pub fn comp_tensor(&self, x: usize, y: usize, z: usize) -> Option<&Vec<Vec<Vec<F>>>> {
        self.comp.get(&(x, y, z))
    }

    pub fn comp_tensor_mut(&mut self, x: usize, y: usize, z: usize) -> Option<&mut Vec<Vec<Vec<F>>>> {
        self.comp.get_mut(&(x, y, z))
    }

    /// `g . f` for `f: x -> y`, `g: y -> z` in coordinates.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[F], f: &[F]) -> Vec<F> {
        debug_assert_eq!(f.len(), self.hom_dim(x, y), "compose: f coordinate length");
        debug_assert_eq!(g.len(), self.hom_dim(y, z), "compose: g coordinate length");
        let mut out = vec![F::zero(); self.hom_dim(x, z)];
        let Some(tensor) = self.comp.get(&(x, y, z)) else {
            return out;
        };
        for (gi, gc) in g.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            for (fi, fc) in f.iter().enumerate() {
                if fc.is_zero() {
                    continue;
                }
                let w = gc.mul(fc);
                for (k, c) in tensor[gi][fi].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&w.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Inverse of `m: x -> y`, or an error when not invertible.
    pub fn invert(&self, x: usize, y: usize, m: &[F]) -> Result<Vec<F>> {
        let dyx = self.hom_dim(y, x);
        let a = Mat::from_fn(self.hom_dim(x, x), dyx, |r, c| {
            self.compose(x, y, x, &basis_vec(dyx, c), m)[r].clone()
        });
        let g = match a.solve(&self.identity(x)) {
            SolveOutcome::Solved { particular, .. } => particular,
            SolveOutcome::Inconsistent => return Err(Error::NotInvertible),
        };
        if self.compose(y, x, y, m, &g) != self.identity(y) {
            return Err(Error::NotInvertible);
        }
        Ok(g)
    }

    /// Exact check of associativity and unit laws on all basis elements.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.object_count();
        for x in 0..n {
            if self.identities[x].len() != self.hom_dim(x, x) {
                bad.push(format!("identity coordinates of {x} have wrong length"));
                continue;
            }
            for y in 0..n {
                for b in 0..self.hom_dim(x, y) {
                    let f = basis_vec(self.hom_dim(x, y), b);
                    if self.compose(x, x, y, &f, &self.identity(x)) != f {
                        bad.push(format!("right unit fails on basis {b} of hom({x},{y})"));
                    }
                    if self.compose(x, y, y, &self.identity(y), &f) != f {
                        bad.push(format!("left unit fails on basis {b} of hom({x},{y})"));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        for bf in 0..self.hom_dim(x, y) {
                            for bg in 0..self.hom_dim(y, z) {
                                for bh in 0..self.hom_dim(z, t) {
                                    let f = basis_vec(self.hom_dim(x, y), bf);
                                    let g = basis_vec(self.hom_dim(y, z), bg);
                                    let h = basis_vec(self.hom_dim(z, t), bh);
                                    let gf = self.compose(x, y, z, &g, &f);
                                    let hg = self.compose(y, z, t, &h, &g);
                                    let lhs = self.compose(x, z, t, &h, &gf);
                                    let rhs = self.compose(x, y, t, &hg, &f);
                                    if lhs != rhs {
                                        bad.push(format!(
                                            "associativity fails on basis ({bf},{bg},{bh}) of objects ({x},{y},{z},{t})"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        bad
    }
}

/// A K-linear functor between finite K-linear categories: an object map and a
/// matrix per hom space.
#[derive(Clone, Debug)]
pub struct LinFunctor<F: Field> {
    pub obj_map: Vec<usize>,
    /// `hom_maps[(x,y)]`: matrix from `hom_src(x,y)` coordinates to
    /// `hom_dst(F x, F y)` coordinates.
    pub hom_maps: HashMap<(usize, usize), Mat<F>>,
}

impl<F: Field> LinFunctor<F> {
    pub fn identity(c: &LinCategory<F>) -> Self {
        let n = c.object_count();
        let mut hom_maps = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if c.hom_dim(x, y) > 0 {
                    hom_maps.insert((x, y), Mat::identity(c.hom_dim(x, y)));
                }
            }
        }
        LinFunctor { obj_map: (0..n).collect(), hom_maps }
    }

    pub fn apply_obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn apply_mor(&self, dst: &LinCategory<F>, x: usize, y: usize, m: &[F]) -> Vec<F> {
        match self.hom_maps.get(&(x, y)) {
            Some(mat) => mat.mul_vec(m),
            None => dst.zero_mor(self.apply_obj(x), self.apply_obj(y)),
        }
    }

    /// `other . self` (apply `self` first).
    pub fn then(&self, src: &LinCategory<F>, mid: &LinCategory<F>, other: &LinFunctor<F>) -> LinFunctor<F> {
        let n = self.obj_map.len();
        let obj_map: Vec<usize> = (0..n).map(|x| other.apply_obj(self.apply_obj(x))).collect();
        let mut hom_maps = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if src.hom_dim(x, y) == 0 {
                    continue;
                }
                let first = &self.hom_maps[&(x, y)];
                let key = (self.apply_obj(x), self.apply_obj(y));
                match other.hom_maps.get(&key) {
                    Some(second) => {
                        hom_maps.insert((x, y), second.mul(first));
                    }
                    None => {
                        assert_eq!(mid.hom_dim(key.0, key.1), 0);
                    }
                }
            }
        }
        LinFunctor { obj_map, hom_maps }
    }

    /// Functoriality check: identities and all basis composites.
    pub fn validate(&self, src: &LinCategory<F>, dst: &LinCategory<F>) -> Vec<String> {
        let mut bad = Vec::new();
        let n = src.object_count();
        for x in 0..n {
            let fx = self.apply_obj(x);
            if self.apply_mor(dst, x, x, &src.identity(x)) != dst.identity(fx) {
                bad.push(format!("functor does not preserve id of {x}"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for bf in 0..src.hom_dim(x, y) {
                        for bg in 0..src.hom_dim(y, z) {
                            let f = basis_vec(src.hom_dim(x, y), bf);
                            let g = basis_vec(src.hom_dim(y, z), bg);
                            let lhs = self.apply_mor(dst, x, z, &src.compose(x, y, z, &g, &f));
                            let rhs = dst.compose(
                                self.apply_obj(x),
                                self.apply_obj(y),
                                self.apply_obj(z),
                                &self.apply_mor(dst, y, z, &g),
                                &self.apply_mor(dst, x, y, &f),
                            );
                            if lhs != rhs {
                                bad.push(format!(
                                    "functor breaks composition on basis ({bf},{bg}) of ({x},{y},{z})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        bad
    }
}

// ---------------------------------------------------------------------------
// tensor utilities for multifunctors
// ---------------------------------------------------------------------------

/// All object tuples of a list of categories, lexicographic.
pub fn object_tuples<F: Field>(srcs: &[&LinCategory<F>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in srcs {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..c.object_count() {
                let mut t = prefix.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Dimension of the tensor product `hom(a_1,b_1) (x) ... (x) hom(a_m,b_m)`.
pub fn tensor_dim<F: Field>(srcs: &[&LinCategory<F>], a: &[usize], b: &[usize]) -> usize {
    srcs.iter().zip(a.iter().zip(b)).map(|(c, (&x, &y))| c.hom_dim(x, y)).product()
}

/// Multi-indices of the tensor basis, lexicographic; their position in this
/// enumeration is the tensor coordinate index.
pub fn tensor_multi_indices<F: Field>(
    srcs: &[&LinCategory<F>],
    a: &[usize],
    b: &[usize],
) -> Vec<Vec<usize>> {
    let dims: Vec<usize> =
        srcs.iter().zip(a.iter().zip(b)).map(|(c, (&x, &y))| c.hom_dim(x, y)).collect();
    let mut out = vec![Vec::new()];
    for d in dims {
        let mut next = Vec::new();
        for prefix in &out {
            for e in 0..d {
                let mut t = prefix.clone();
                t.push(e);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Tensor coordinates of a pure tensor of coordinate vectors.
pub fn tensor_of<F: Field>(parts: &[Vec<F>]) -> Vec<F> {
    let mut out = vec![F::one()];
    for p in parts {
        let mut next = Vec::with_capacity(out.len() * p.len());
        for a in &out {
            for b in p {
                next.push(a.mul(b));
            }
        }
        out = next;
    }
    out
}

/// Position of a multi-index in the lexicographic tensor basis.
pub fn tensor_pos<F: Field>(
    srcs: &[&LinCategory<F>],
    a: &[usize],
    b: &[usize],
    multi: &[usize],
) -> usize {
    let mut pos = 0;
    for (i, c) in srcs.iter().enumerate() {
        pos = pos * c.hom_dim(a[i], b[i]) + multi[i];
    }
    pos
}

/// A K-multilinear functor `C_1 x ... x C_m -> D`, stored on basis tuples.
#[derive(Clone, Debug)]
pub struct MultiFunctor<F: Field> {
    pub arity: usize,
    pub obj_map: HashMap<Vec<usize>, usize>,
    /// Per (source tuple, target tuple): matrix from tensor coordinates to
    /// `hom_dst(H a, H b)` coordinates.
    pub mor_maps: HashMap<(Vec<usize>, Vec<usize>), Mat<F>>,
}

impl<F: Field> MultiFunctor<F> {
    pub fn apply_obj(&self, t: &[usize]) -> usize {
        self.obj_map[t]
    }

    pub fn apply_mor(
        &self,
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        a: &[usize],
        b: &[usize],
        tensor: &[F],
    ) -> Vec<F> {
        let out_dim = dst.hom_dim(self.apply_obj(a), self.apply_obj(b));
        match self.mor_maps.get(&(a.to_vec(), b.to_vec())) {
            Some(mat) => mat.mul_vec(tensor),
            None => {
                debug_assert!(
                    tensor_dim(srcs, a, b) == 0 || out_dim == 0 || vec_is_zero(tensor),
                    "missing multifunctor morphism map"
                );
                vec![F::zero(); out_dim]
            }
        }
    }

    /// Build from closures; enumerates everything eagerly. `mor` receives
    /// (source tuple, target tuple, basis multi-index).
    pub fn build(
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        obj: impl Fn(&[usize]) -> usize,
        mor: impl Fn(&[usize], &[usize], &[usize]) -> Vec<F>,
    ) -> Self {
        let tuples = object_tuples(srcs);
        let obj_map: HashMap<Vec<usize>, usize> =
            tuples.iter().map(|t| (t.clone(), obj(t))).collect();
        let mut mor_maps = HashMap::new();
        for a in &tuples {
            for b in &tuples {
                let td = tensor_dim(srcs, a, b);
                let out_dim = dst.hom_dim(obj_map[a], obj_map[b]);
                if td == 0 || out_dim == 0 {
                    continue;
                }
                let multis = tensor_multi_indices(srcs, a, b);
                let cols: Vec<Vec<F>> = multis.iter().map(|mi| mor(a, b, mi)).collect();
                mor_maps.insert((a.clone(), b.clone()), columns(&cols, out_dim));
            }
        }
        MultiFunctor { arity: srcs.len(), obj_map, mor_maps }
    }

    /// From a plain functor (arity 1).
    pub fn from_functor(src: &LinCategory<F>, dst: &LinCategory<F>, f: &LinFunctor<F>) -> Self {
        MultiFunctor::build(
            &[src],
            dst,
            |t| f.apply_obj(t[0]),
            |a, b, multi| {
                f.apply_mor(dst, a[0], b[0], &basis_vec(src.hom_dim(a[0], b[0]), multi[0]))
            },
        )
    }

    /// Identity-preservation and composite-preservation on basis tuples.
    pub fn validate(&self, srcs: &[&LinCategory<F>], dst: &LinCategory<F>) -> Vec<String> {
        let mut bad = Vec::new();
        let tuples = object_tuples(srcs);
        for t in &tuples {
            let ids: Vec<Vec<F>> = srcs.iter().zip(t).map(|(c, &x)| c.identity(x)).collect();
            let got = self.apply_mor(srcs, dst, t, t, &tensor_of(&ids));
            if got != dst.identity(self.apply_obj(t)) {
                bad.push(format!("multifunctor breaks identity at {t:?}"));
            }
        }
        for a in &tuples {
            for b in &tuples {
                if tensor_dim(srcs, a, b) == 0 {
                    continue;
                }
                for c in &tuples {
                    if tensor_dim(srcs, b, c) == 0 {
                        continue;
                    }
                    for u in tensor_multi_indices(srcs, a, b) {
                        for v in tensor_multi_indices(srcs, b, c) {
                            let parts: Vec<Vec<F>> = srcs
                                .iter()
                                .enumerate()
                                .map(|(i, cat)| {
                                    cat.compose(
                                        a[i],
                                        b[i],
                                        c[i],
                                        &basis_vec(cat.hom_dim(b[i], c[i]), v[i]),
                                        &basis_vec(cat.hom_dim(a[i], b[i]), u[i]),
                                    )
                                })
                                .collect();
                            let lhs = self.apply_mor(srcs, dst, a, c, &tensor_of(&parts));
                            let fu = self.apply_mor(
                                srcs,
                                dst,
                                a,
                                b,
                                &basis_vec(tensor_dim(srcs, a, b), tensor_pos(srcs, a, b, &u)),
                            );
                            let fv = self.apply_mor(
                                srcs,
                                dst,
                                b,
                                c,
                                &basis_vec(tensor_dim(srcs, b, c), tensor_pos(srcs, b, c, &v)),
                            );
                            let rhs = dst.compose(
                                self.apply_obj(a),
                                self.apply_obj(b),
                                self.apply_obj(c),
                                &fv,
                                &fu,
                            );
                            if lhs != rhs {
                                bad.push(format!(
                                    "multifunctor breaks composition at {a:?} -> {b:?} -> {c:?}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        bad
    }
}

/// A natural transformation between two multifunctors of equal signature,
/// stored as one component per source object tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform<F: Field> {
    pub components: HashMap<Vec<usize>, Vec<F>>,
}

impl<F: Field> NatTransform<F> {
    pub fn identity_of(
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        h: &MultiFunctor<F>,
    ) -> Self {
        let components = object_tuples(srcs)
            .into_iter()
            .map(|t| {
                let id = dst.identity(h.apply_obj(&t));
                (t, id)
            })
            .collect();
        NatTransform { components }
    }

    pub fn component(&self, t: &[usize]) -> &[F] {
        &self.components[t]
    }

    /// Vertical composition `other . self` (self applied first), for
    /// transforms `self: h0 => h1` and `other: h1 => h2`.
    pub fn then(
        &self,
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        h0: &MultiFunctor<F>,
        h1: &MultiFunctor<F>,
        h2: &MultiFunctor<F>,
        other: &NatTransform<F>,
    ) -> NatTransform<F> {
        let components = object_tuples(srcs)
            .into_iter()
            .map(|t| {
                let v = dst.compose(
                    h0.apply_obj(&t),
                    h1.apply_obj(&t),
                    h2.apply_obj(&t),
                    other.component(&t),
                    self.component(&t),
                );
                (t, v)
            })
            .collect();
        NatTransform { components }
    }

    /// Exact naturality check against every basis morphism tuple.
    pub fn is_natural(
        &self,
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        h: &MultiFunctor<F>,
        h2: &MultiFunctor<F>,
    ) -> bool {
        let tuples = object_tuples(srcs);
        for a in &tuples {
            for b in &tuples {
                let td = tensor_dim(srcs, a, b);
                if td == 0 {
                    continue;
                }
                for pos in 0..td {
                    let tensor = basis_vec(td, pos);
                    let hm = h.apply_mor(srcs, dst, a, b, &tensor);
                    let h2m = h2.apply_mor(srcs, dst, a, b, &tensor);
                    let lhs = dst.compose(
                        h.apply_obj(a),
                        h.apply_obj(b),
                        h2.apply_obj(b),
                        self.component(b),
                        &hm,
                    );
                    let rhs = dst.compose(
                        h.apply_obj(a),
                        h2.apply_obj(a),
                        h2.apply_obj(b),
                        &h2m,
                        self.component(a),
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Coordinate layout for spaces of (indexed) natural transformations: one
/// block of `hom(H t, H' t)` coordinates per source object tuple.
#[derive(Clone, Debug)]
pub struct NatLayout {
    pub tuples: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl NatLayout {
    pub fn new<F: Field>(
        srcs: &[&LinCategory<F>],
        dst: &LinCategory<F>,
        h: &MultiFunctor<F>,
        h2: &MultiFunctor<F>,
    ) -> Self {
        let tuples = object_tuples(srcs);
        let dims: Vec<usize> =
            tuples.iter().map(|t| dst.hom_dim(h.apply_obj(t), h2.apply_obj(t))).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d;
        }
        NatLayout { tuples, dims, offsets, total }
    }

    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        self.tuples.iter().position(|x| x == t)
    }

    pub fn block<'v, F: Field>(&self, v: &'v [F], i: usize) -> &'v [F] {
        &v[self.offsets[i]..self.offsets[i] + self.dims[i]]
    }

    pub fn pack<F: Field>(&self, nat: &NatTransform<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.total];
        for (i, t) in self.tuples.iter().enumerate() {
            let c = nat.component(t);
            assert_eq!(c.len(), self.dims[i]);
            v[self.offsets[i]..self.offsets[i] + self.dims[i]].clone_from_slice(c);
        }
        v
    }

    pub fn unpack<F: Field>(&self, v: &[F]) -> NatTransform<F> {
        assert_eq!(v.len(), self.total);
        let components = self
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), self.block(v, i).to_vec()))
            .collect();
        NatTransform { components }
    }
}

/// Exact basis of the space of natural transformations `H => H2`, obtained by
/// solving the homogeneous naturality system over the component coordinates.
pub fn nat_space<F: Field>(
    srcs: &[&LinCategory<F>],
    dst: &LinCategory<F>,
    h: &MultiFunctor<F>,
    h2: &MultiFunctor<F>,
) -> (NatLayout, Vec<Vec<F>>) {
    let layout = NatLayout::new(srcs, dst, h, h2);
    let pairs: Vec<(usize, usize)> = (0..layout.tuples.len())
        .flat_map(|a| (0..layout.tuples.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| tensor_dim(srcs, &layout.tuples[a], &layout.tuples[b]) > 0)
        .collect();
    let row_blocks = maybe_par_map(&pairs, |&(ai, bi)| {
        let a = &layout.tuples[ai];
        let b = &layout.tuples[bi];
        let td = tensor_dim(srcs, a, b);
        let out_dim = dst.hom_dim(h.apply_obj(a), h2.apply_obj(b));
        let mut rows: Vec<Vec<F>> = Vec::new();
        if out_dim == 0 {
            return rows;
        }
        for pos in 0..td {
            let tensor = basis_vec(td, pos);
            let hm = h.apply_mor(srcs, dst, a, b, &tensor);
            let h2m = h2.apply_mor(srcs, dst, a, b, &tensor);
            let mut block = vec![vec![F::zero(); layout.total]; out_dim];
            // + theta_b . h(u)  (components of hom(H a, H2 b))
            for c in 0..layout.dims[bi] {
                let e = basis_vec(layout.dims[bi], c);
                let val =
                    dst.compose(h.apply_obj(a), h.apply_obj(b), h2.apply_obj(b), &e, &hm);
                for (r, x) in val.iter().enumerate() {
                    block[r][layout.offsets[bi] + c] = block[r][layout.offsets[bi] + c].add(x);
                }
            }
            // - h2(u) . theta_a
            for c in 0..layout.dims[ai] {
                let e = basis_vec(layout.dims[ai], c);
                let val =
                    dst.compose(h.apply_obj(a), h2.apply_obj(a), h2.apply_obj(b), &h2m, &e);
                for (r, x) in val.iter().enumerate() {
                    block[r][layout.offsets[ai] + c] = block[r][layout.offsets[ai] + c].sub(x);
                }
            }
            rows.extend(block.into_iter().filter(|r| !vec_is_zero(r)));
        }
        rows
    });
    let rows: Vec<Vec<F>> = row_blocks.into_iter().flatten().collect();
    let basis = if rows.is_empty() {
        (0..layout.total).map(|i| basis_vec(layout.total, i)).collect()
    } else {
        Mat::from_rows(rows).nullspace()
    };
    (layout, basis)
}

// ---------------------------------------------------------------------------
// strict K-linear 2-categories
// ---------------------------------------------------------------------------

/// A strict K-linear 2-category with finitely many objects; hom-categories
/// `hom[x][y]` may be empty, and composition is given by K-bilinear
/// multifunctors `C(x,y) x C(y,z) -> C(x,z)`.
#[derive(Clone, Debug)]
pub struct Lin2Category<F: Field> {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<LinCategory<F>>>,
    pub comp: HashMap<(usize, usize, usize), MultiFunctor<F>>,
    /// Object index of the identity 1-morphism inside `hom[x][x]`.
    pub id_mor: Vec<usize>,
}

impl<F: Field> Lin2Category<F> {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom_cat(&self, x: usize, y: usize) -> &LinCategory<F> {
        &self.hom[x][y]
    }

    /// `g . f` on 1-morphisms (`f: x -> y` first).
    pub fn compose1(&self, x: usize, y: usize, z: usize, f: usize, g: usize) -> usize {
        self.comp[&(x, y, z)].apply_obj(&[f, g])
    }

    /// Composite of a 1-morphism path `f_1 : x_0 -> x_1, ..., f_n : x_{n-1} -> x_n`.
    pub fn compose_path(&self, xs: &[usize], fs: &[usize]) -> usize {
        assert_eq!(xs.len(), fs.len() + 1);
        let mut acc = fs[0];
        for i in 1..fs.len() {
            acc = self.compose1(xs[0], xs[i], xs[i + 1], acc, fs[i]);
        }
        acc
    }

    /// Horizontal composite of 2-morphisms `alpha: f => f2` (in `hom(x,y)`)
    /// and `beta: g => g2` (in `hom(y,z)`), giving `beta o alpha : g.f => g2.f2`.
    #[allow(clippy::too_many_arguments)]
    pub fn hcomp(
        &self,
        x: usize,
        y: usize,
        z: usize,
        f: usize,
        f2: usize,
        g: usize,
        g2: usize,
        alpha: &[F],
        beta: &[F],
    ) -> Vec<F> {
        let srcs = [&self.hom[x][y], &self.hom[y][z]];
        let c = &self.comp[&(x, y, z)];
        let tensor = tensor_of(&[alpha.to_vec(), beta.to_vec()]);
        c.apply_mor(&srcs, &self.hom[x][z], &[f, g], &[f2, g2], &tensor)
    }

    /// Exhaustive validation of hom-categories, composition functoriality,
    /// strict associativity on 1-morphisms and basis 2-morphisms, and strict
    /// units.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.object_count();
        for x in 0..n {
            for y in 0..n {
                for msg in self.hom[x][y].validate() {
                    bad.push(format!("hom({x},{y}): {msg}"));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.hom[x][y].object_count() == 0 || self.hom[y][z].object_count() == 0 {
                        continue;
                    }
                    let srcs = [&self.hom[x][y], &self.hom[y][z]];
                    for msg in self.comp[&(x, y, z)].validate(&srcs, &self.hom[x][z]) {
                        bad.push(format!("comp({x},{y},{z}): {msg}"));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        bad.extend(self.check_assoc_block(x, y, z, t));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let cxy = &self.hom[x][y];
                for f in 0..cxy.object_count() {
                    if self.compose1(x, x, y, self.id_mor[x], f) != f {
                        bad.push(format!("left unit 1-morphism fails at ({x},{y}) obj {f}"));
                    }
                    if self.compose1(x, y, y, f, self.id_mor[y]) != f {
                        bad.push(format!("right unit 1-morphism fails at ({x},{y}) obj {f}"));
                    }
                    for f2 in 0..cxy.object_count() {
                        for b in 0..cxy.hom_dim(f, f2) {
                            let alpha = basis_vec(cxy.hom_dim(f, f2), b);
                            let idx = self.id_mor[x];
                            let idy = self.id_mor[y];
                            let right = self.hcomp(
                                x, x, y, idx, idx, f, f2,
                                &self.hom[x][x].identity(idx),
                                &alpha,
                            );
                            let left = self.hcomp(
                                x, y, y, f, f2, idy, idy,
                                &alpha,
                                &self.hom[y][y].identity(idy),
                            );
                            if right != alpha || left != alpha {
                                bad.push(format!(
                                    "whiskering by an identity 1-morphism not strict at ({x},{y})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        bad
    }

    fn check_assoc_block(&self, x: usize, y: usize, z: usize, t: usize) -> Vec<String> {
        let mut bad = Vec::new();
        let (cxy, cyz, czt) = (&self.hom[x][y], &self.hom[y][z], &self.hom[z][t]);
        if cxy.object_count() == 0 || cyz.object_count() == 0 || czt.object_count() == 0 {
            return bad;
        }
        for f in 0..cxy.object_count() {
            for g in 0..cyz.object_count() {
                for h in 0..czt.object_count() {
                    let gf = self.compose1(x, y, z, f, g);
                    let hg = self.compose1(y, z, t, g, h);
                    if self.compose1(x, z, t, gf, h) != self.compose1(x, y, t, f, hg) {
                        bad.push(format!(
                            "1-morphism associativity fails at ({x},{y},{z},{t}) objs ({f},{g},{h})"
                        ));
                        continue;
                    }
                    for bf in 0..cxy.hom_dim(f, f) {
                        for bg in 0..cyz.hom_dim(g, g) {
                            for bh in 0..czt.hom_dim(h, h) {
                                let a = basis_vec(cxy.hom_dim(f, f), bf);
                                let b = basis_vec(cyz.hom_dim(g, g), bg);
                                let c = basis_vec(czt.hom_dim(h, h), bh);
                                let ba = self.hcomp(x, y, z, f, f, g, g, &a, &b);
                                let lhs = self.hcomp(x, z, t, gf, gf, h, h, &ba, &c);
                                let cb = self.hcomp(y, z, t, g, g, h, h, &b, &c);
                                let rhs = self.hcomp(x, y, t, f, f, hg, hg, &a, &cb);
                                if lhs != rhs {
                                    bad.push(format!(
                                        "2-morphism associativity fails at ({x},{y},{z},{t})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        bad
    }

    /// Interchange on supplied data: (b2 . b1) o (a2 . a1) = (b2 o a2) . (b1 o a1),
    /// `.` vertical and `o` horizontal.
    #[allow(clippy::too_many_arguments)]
    pub fn check_interchange(
        &self,
        x: usize,
        y: usize,
        z: usize,
        f: &[usize; 3],
        g: &[usize; 3],
        a1: &[F],
        a2: &[F],
        b1: &[F],
        b2: &[F],
    ) -> bool {
        let cxy = &self.hom[x][y];
        let cyz = &self.hom[y][z];
        let a21 = cxy.compose(f[0], f[1], f[2], a2, a1);
        let b21 = cyz.compose(g[0], g[1], g[2], b2, b1);
        let lhs = self.hcomp(x, y, z, f[0], f[2], g[0], g[2], &a21, &b21);
        let h1 = self.hcomp(x, y, z, f[0], f[1], g[0], g[1], a1, b1);
        let h2 = self.hcomp(x, y, z, f[1], f[2], g[1], g[2], a2, b2);
        let comp0 = self.compose1(x, y, z, f[0], g[0]);
        let comp1 = self.compose1(x, y, z, f[1], g[1]);
        let comp2 = self.compose1(x, y, z, f[2], g[2]);
        let rhs = self.hom[x][z].compose(comp0, comp1, comp2, &h2, &h1);
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn ground_cat() -> LinCategory<Rat> {
        LinCategory::one_object(&Algebra::<Rat>::ground())
    }

    #[test]
    fn one_object_category_is_valid() {
        assert!(ground_cat().validate().is_empty());
        let dual = LinCategory::one_object(&Algebra::<Rat>::dual_numbers());
        assert!(dual.validate().is_empty());
    }

    #[test]
    fn broken_associativity_is_reported_with_the_triple() {
        let mut c = LinCategory::one_object(&Algebra::<Rat>::truncated_poly(3));
        // corrupt x . x^2 to 1 while x^2 . x stays 0: then (x.x).x^2 = 0 but
        // x.(x.x^2) = x, a genuine associativity failure
        c.comp_tensor_mut(0, 0, 0).unwrap()[1][2] =
            vec![Rat::one(), Rat::zero(), Rat::zero()];
        let bad = c.validate();
        assert!(!bad.is_empty());
        assert!(bad.iter().any(|m| m.contains("associativity")), "{bad:?}");
    }

    #[test]
    fn algebra_inverse() {
        let a = Algebra::<Rat>::dual_numbers();
        let inv = a.inv(&[Rat::one(), Rat::one()]).unwrap();
        assert_eq!(inv, vec![Rat::one(), Rat::int(-1)]);
        assert!(a.inv(&[Rat::zero(), Rat::one()]).is_none());
        assert!(a.validate().is_empty());
        assert!(a.is_commutative());
    }

    #[test]
    fn morphism_inversion_in_category() {
        let c = LinCategory::one_object(&Algebra::<Rat>::dual_numbers());
        let m = vec![Rat::int(2), Rat::int(3)];
        let inv = c.invert(0, 0, &m).unwrap();
        assert_eq!(c.compose(0, 0, 0, &inv, &m), c.identity(0));
        assert!(c.invert(0, 0, &[Rat::zero(), Rat::one()]).is_err());
    }

    #[test]
    fn nat_space_of_identity_on_ground_is_one_dimensional() {
        let c = ground_cat();
        let h = MultiFunctor::from_functor(&c, &c, &LinFunctor::identity(&c));
        let (layout, basis) = nat_space(&[&c], &c, &h, &h);
        assert_eq!(layout.total, 1);
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn nat_space_contains_identity() {
        let alg = Algebra::<Rat>::dual_numbers();
        let c = LinCategory::discrete_with_end(vec!["e".into(), "v".into()], &alg);
        let h = MultiFunctor::from_functor(&c, &c, &LinFunctor::identity(&c));
        let (layout, basis) = nat_space(&[&c], &c, &h, &h);
        let idt = NatTransform::identity_of(&[&c], &c, &h);
        let packed = layout.pack(&idt);
        let m = columns(&basis, layout.total);
        assert!(m.solve(&packed).is_consistent());
        assert_eq!(layout.total, 4);
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn nat_space_with_cross_homs_cuts_dimensions() {
        // poset category x <= y: Nat(Id, Id) forces equal components, so the
        // space is 1-dimensional inside a 2-dimensional component space.
        let c = LinCategory::<Rat>::thin(vec!["x".into(), "y".into()], |a, b| a <= b);
        let h = MultiFunctor::from_functor(&c, &c, &LinFunctor::identity(&c));
        let (layout, basis) = nat_space(&[&c], &c, &h, &h);
        assert_eq!(layout.total, 2);
        assert_eq!(basis.len(), 1);
        let nat = layout.unpack(&basis[0]);
        assert!(nat.is_natural(&[&c], &c, &h, &h));
    }

    #[test]
    fn multifunctor_validate_catches_broken_functors() {
        let c = ground_cat();
        let broken = MultiFunctor::build(&[&c], &c, |_| 0, |_, _, _| vec![Rat::int(2)]);
        assert!(!broken.validate(&[&c], &c).is_empty());
    }

    #[test]
    fn functor_composition_identity_law() {
        let c = LinCategory::one_object(&Algebra::<Rat>::dual_numbers());
        let id = LinFunctor::identity(&c);
        let comp = id.then(&c, &c, &id);
        assert!(comp.validate(&c, &c).is_empty());
        assert_eq!(comp.obj_map, id.obj_map);
    }
}
