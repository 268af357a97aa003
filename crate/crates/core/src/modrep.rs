//! Finite-dimensional left modules as representations.
//!
//! A module stores one vector space per vertex and one matrix per algebra generator. Since paths
//! compose left to right, a generator `g` with `g = e_s g e_t` maps the vertex-`t` component to the
//! vertex-`s` component; with row vectors this is a `dims[t] × dims[s]` matrix `A_g` and `g·m = m·A_g`.
//! The JSON format stores the transpose (`dims[s] × dims[t]`, acting on column vectors).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Coeff, Ideal};
use crate::decomp;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug)]
pub struct FdModule<K: Field> {
    pub algebra: Arc<Algebra<K>>,
    pub dims: Vec<usize>,
    /// `action[g]` is the `dims[t] × dims[s]` matrix of generator `algebra.gens[g]`.
    pub action: Vec<Mat<K>>,
}

/// A module homomorphism, one block `dims_M[i] × dims_N[i]` per vertex.
#[derive(Clone, Debug)]
pub struct ModuleMap<K: Field> {
    pub source: FdModule<K>,
    pub target: FdModule<K>,
    pub blocks: Vec<Mat<K>>,
}

/// A submodule, one subspace of each vertex component.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule<K: Field> {
    pub parts: Vec<Subspace<K>>,
}

/// An indecomposable (when `local`) summand with its inclusion.
#[derive(Clone, Debug)]
pub struct Summand<K: Field> {
    pub module: FdModule<K>,
    pub incl: ModuleMap<K>,
    pub local: bool,
}

/// The radical of the algebra, read off the basis when possible.
pub fn algebra_radical<K: Field>(a: &Algebra<K>) -> Result<Ideal<K>> {
    if a.radical_adapted {
        if let Some(j) = a.structural_radical() {
            return Ok(j);
        }
    }
    a.radical()
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

/// Basis elements spanning each component `e_j A e_i` of `A e_i`.
pub fn projective_basis<K: Field>(a: &Algebra<K>, i: usize) -> Vec<Vec<usize>> {
    let mut comps = vec![Vec::new(); a.n_vertices()];
    for b in 0..a.dim() {
        if a.tgt[b] == i {
            comps[a.src[b]].push(b);
        }
    }
    comps
}

impl<K: Field> PartialEq for FdModule<K> {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.action == other.action && self.algebra.same_structure(&other.algebra)
    }
}

impl<K: Field> FdModule<K> {
    /// Validate shapes and relations.
    pub fn new(algebra: Arc<Algebra<K>>, dims: Vec<usize>, action: Vec<Mat<K>>) -> Result<Self> {
        if dims.len() != algebra.n_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                algebra.n_vertices()
            )));
        }
        if action.len() != algebra.gens.len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} generators",
                action.len(),
                algebra.gens.len()
            )));
        }
        for (g, m) in action.iter().enumerate() {
            let b = algebra.gens[g];
            let (s, t) = (algebra.src[b], algebra.tgt[b]);
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(Error::InvalidModule(format!(
                    "generator {} needs a {}x{} matrix, got {}x{}",
                    algebra.labels[b], dims[s], dims[t], m.cols, m.rows
                )));
            }
        }
        let m = FdModule { algebra, dims, action };
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn raw(algebra: Arc<Algebra<K>>, dims: Vec<usize>, action: Vec<Mat<K>>) -> Self {
        FdModule { algebra, dims, action }
    }

    fn check_relations(&self) -> Result<()> {
        let a = &self.algebra;
        let k = self.field();
        for rel in &a.relations {
            let mut acc = Mat::zeros(k, self.dims[rel.tgt], self.dims[rel.src]);
            for (c, w) in &rel.terms {
                acc.axpy(c, &self.word_block(w, rel.src));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {} is violated", rel.name)));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &K {
        &self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.dims)
    }

    pub fn zero(algebra: &Arc<Algebra<K>>) -> Self {
        let dims = vec![0; algebra.n_vertices()];
        let action = algebra.gens.iter().map(|_| Mat::zeros(&algebra.field, 0, 0)).collect();
        FdModule::raw(algebra.clone(), dims, action)
    }

    fn gen_ends(&self, g: usize) -> (usize, usize) {
        let b = self.algebra.gens[g];
        (self.algebra.src[b], self.algebra.tgt[b])
    }

    /// Action of a word on the component at its end, as a `dims[tgt] × dims[src]` block; an empty word is the identity of `dims[vertex]`.
    pub fn word_block(&self, w: &[usize], vertex: usize) -> Mat<K> {
        let k = self.field();
        let Some((&last, rest)) = w.split_last() else {
            return Mat::identity(k, self.dims[vertex]);
        };
        let mut acc = self.action[last].clone();
        for &g in rest.iter().rev() {
            acc = acc.mul(&self.action[g]);
        }
        acc
    }

    /// Action of basis element `b` from the `tgt(b)` component to the `src(b)` component.
    pub fn basis_block(&self, b: usize) -> Mat<K> {
        self.word_block(&self.algebra.words[b], self.algebra.src[b])
    }

    /// Action of the `(i, j)` Peirce component of an algebra element, `M_j → M_i`.
    pub fn element_block(&self, x: &[K::E], i: usize, j: usize) -> Mat<K> {
        let a = &self.algebra;
        let k = self.field();
        let mut acc = Mat::zeros(k, self.dims[j], self.dims[i]);
        for (b, c) in x.iter().enumerate() {
            if !k.is_zero(c) && a.src[b] == i && a.tgt[b] == j {
                acc.axpy(c, &self.basis_block(b));
            }
        }
        acc
    }

    /// Action of an algebra element on the whole space.
    pub fn element_total(&self, x: &[K::E]) -> Mat<K> {
        let n = self.algebra.n_vertices();
        let off = self.offsets();
        let mut out = Mat::zeros(self.field(), self.dim(), self.dim());
        for i in 0..n {
            for j in 0..n {
                if self.dims[i] > 0 && self.dims[j] > 0 {
                    out.set_block(off[j], off[i], &self.element_block(x, i, j));
                }
            }
        }
        out
    }

    pub fn simple(algebra: &Arc<Algebra<K>>, i: usize) -> Self {
        let mut dims = vec![0; algebra.n_vertices()];
        dims[i] = 1;
        Self::zero_action(algebra, dims)
    }

    /// The semisimple module with the given dimension vector.
    pub fn zero_action(algebra: &Arc<Algebra<K>>, dims: Vec<usize>) -> Self {
        let action = algebra
            .gens
            .iter()
            .map(|&b| Mat::zeros(&algebra.field, dims[algebra.tgt[b]], dims[algebra.src[b]]))
            .collect();
        FdModule::raw(algebra.clone(), dims, action)
    }

    /// Module on a set of basis elements, with generator action read off the multiplication table.
    fn from_basis_set(algebra: &Arc<Algebra<K>>, comps: Vec<Vec<usize>>) -> Self {
        let a = algebra;
        let k = &a.field;
        let mut pos = vec![usize::MAX; a.dim()];
        for comp in &comps {
            for (p, &b) in comp.iter().enumerate() {
                pos[b] = p;
            }
        }
        let dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        let action = a
            .gens
            .iter()
            .map(|&g| {
                let (s, t) = (a.src[g], a.tgt[g]);
                let mut m = Mat::zeros(k, dims[t], dims[s]);
                for (row, &b) in comps[t].iter().enumerate() {
                    for (r, c) in a.mul_basis(g, b) {
                        m.set(row, pos[*r], c.clone());
                    }
                }
                m
            })
            .collect();
        FdModule::raw(a.clone(), dims, action)
    }

    /// `P_i = A e_i`.
    pub fn projective(algebra: &Arc<Algebra<K>>, i: usize) -> Self {
        Self::from_basis_set(algebra, projective_basis(algebra, i))
    }

    /// `A` as a left module; component `j` is `e_j A`.
    pub fn regular(algebra: &Arc<Algebra<K>>) -> Self {
        let mut comps = vec![Vec::new(); algebra.n_vertices()];
        for b in 0..algebra.dim() {
            comps[algebra.src[b]].push(b);
        }
        Self::from_basis_set(algebra, comps)
    }

    /// `I_i = D(e_i A)`, the dual of the projective of the opposite algebra.
    pub fn injective(algebra: &Arc<Algebra<K>>, i: usize) -> Self {
        let op = Arc::new(algebra.opposite());
        FdModule::projective(&op, i).dual(algebra)
    }

    /// Vector-space dual, a module over `target`, which must be the opposite of this module's algebra.
    pub fn dual(&self, target: &Arc<Algebra<K>>) -> Self {
        let action = self.action.iter().map(|m| m.transpose()).collect();
        FdModule::raw(target.clone(), self.dims.clone(), action)
    }

    pub fn direct_sum(mods: &[&FdModule<K>]) -> Result<Self> {
        let Some(first) = mods.first() else {
            return Err(Error::Shape("empty direct sum".into()));
        };
        let a = &first.algebra;
        let n = a.n_vertices();
        let dims: Vec<usize> = (0..n).map(|i| mods.iter().map(|m| m.dims[i]).sum()).collect();
        let action = (0..a.gens.len())
            .map(|g| Mat::block_diag(&a.field, &mods.iter().map(|m| m.action[g].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(FdModule::raw(a.clone(), dims, action))
    }

    /// `M^r`.
    pub fn power(&self, r: usize) -> Self {
        if r == 0 {
            return FdModule::zero(&self.algebra);
        }
        let copies: Vec<&FdModule<K>> = (0..r).map(|_| self).collect();
        FdModule::direct_sum(&copies).expect("nonempty")
    }

    /// Inclusions into and projections from a direct sum built by [`FdModule::direct_sum`].
    pub fn sum_maps(mods: &[&FdModule<K>], sum: &FdModule<K>) -> (Vec<ModuleMap<K>>, Vec<ModuleMap<K>>) {
        let k = sum.field();
        let n = sum.dims.len();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut start = vec![0usize; n];
        for m in mods {
            let mut ib = Vec::new();
            let mut pb = Vec::new();
            for i in 0..n {
                let mut b = Mat::zeros(k, m.dims[i], sum.dims[i]);
                b.set_block(0, start[i], &Mat::identity(k, m.dims[i]));
                pb.push(b.transpose());
                ib.push(b);
                start[i] += m.dims[i];
            }
            incl.push(ModuleMap { source: (*m).clone(), target: sum.clone(), blocks: ib });
            proj.push(ModuleMap { source: sum.clone(), target: (*m).clone(), blocks: pb });
        }
        (incl, proj)
    }

    /// Smallest submodule containing the given vectors (per vertex).
    pub fn generated(&self, parts: Vec<Subspace<K>>) -> Submodule<K> {
        let mut parts = parts;
        loop {
            let mut changed = false;
            for g in 0..self.action.len() {
                let (s, t) = self.gen_ends(g);
                if parts[t].is_zero() || self.dims[s] == 0 {
                    continue;
                }
                let img = parts[t].image(&self.action[g]);
                if !parts[s].contains_space(&img) {
                    parts[s] = parts[s].sum(&img).expect("same ambient");
                    changed = true;
                }
            }
            if !changed {
                return Submodule { parts };
            }
        }
    }

    /// Whether the graded subspace is closed under the action.
    pub fn is_submodule(&self, u: &Submodule<K>) -> bool {
        (0..self.action.len()).all(|g| {
            let (s, t) = self.gen_ends(g);
            u.parts[s].contains_space(&u.parts[t].image(&self.action[g]))
        })
    }

    /// The submodule as a module, with its inclusion.
    pub fn sub_module(&self, u: &Submodule<K>) -> (FdModule<K>, ModuleMap<K>) {
        let k = self.field();
        let dims: Vec<usize> = u.parts.iter().map(|p| p.dim()).collect();
        let action = (0..self.action.len())
            .map(|g| {
                let (s, t) = self.gen_ends(g);
                let bt = &u.parts[t].basis;
                let bs = &u.parts[s].basis;
                if dims[t] == 0 || dims[s] == 0 {
                    return Mat::zeros(k, dims[t], dims[s]);
                }
                bs.solve(&bt.mul(&self.action[g])).expect("shapes agree").expect("subspace is a submodule")
            })
            .collect();
        let sub = FdModule::raw(self.algebra.clone(), dims, action);
        let blocks = u.parts.iter().map(|p| p.basis.clone()).collect();
        (sub.clone(), ModuleMap { source: sub, target: self.clone(), blocks })
    }

    /// The quotient module, with its projection.
    pub fn quotient(&self, u: &Submodule<K>) -> (FdModule<K>, ModuleMap<K>) {
        let k = self.field();
        let n = self.dims.len();
        let free: Vec<Vec<usize>> = u.parts.iter().map(|p| p.free_coords()).collect();
        let dims: Vec<usize> = free.iter().map(|f| f.len()).collect();
        let reduce_rows = |m: &Mat<K>, i: usize| -> Mat<K> {
            let rows = (0..m.rows).map(|r| u.parts[i].quotient_coords(m.row(r))).collect();
            Mat::from_rows(k, dims[i], rows)
        };
        let action = (0..self.action.len())
            .map(|g| {
                let (s, t) = self.gen_ends(g);
                reduce_rows(&self.action[g].select_rows(&free[t]), s)
            })
            .collect();
        let q = FdModule::raw(self.algebra.clone(), dims.clone(), action);
        let blocks = (0..n).map(|i| reduce_rows(&Mat::identity(k, self.dims[i]), i)).collect();
        (q.clone(), ModuleMap { source: self.clone(), target: q, blocks })
    }

    /// `J·M`.
    pub fn radical_sub(&self) -> Result<Submodule<K>> {
        let k = self.field();
        let a = &self.algebra;
        let n = a.n_vertices();
        let mut rows: Vec<Vec<Vec<K::E>>> = vec![Vec::new(); n];
        if a.radical_adapted {
            for g in 0..self.action.len() {
                let (s, _) = self.gen_ends(g);
                rows[s].extend(self.action[g].row_list());
            }
        } else {
            let j = algebra_radical(a)?;
            for x in j.basis.vectors() {
                for i in 0..n {
                    for t in 0..n {
                        if self.dims[i] > 0 && self.dims[t] > 0 {
                            rows[i].extend(self.element_block(&x, i, t).row_list());
                        }
                    }
                }
            }
        }
        let parts = rows.into_iter().enumerate().map(|(i, r)| Subspace::from_rows(k, self.dims[i], r)).collect();
        Ok(Submodule { parts })
    }

    /// `{m : J m = 0}`.
    pub fn socle_sub(&self) -> Result<Submodule<K>> {
        let k = self.field();
        let a = &self.algebra;
        let n = a.n_vertices();
        let mut cols: Vec<Vec<Mat<K>>> = vec![Vec::new(); n];
        if a.radical_adapted {
            for g in 0..self.action.len() {
                let (_, t) = self.gen_ends(g);
                cols[t].push(self.action[g].clone());
            }
        } else {
            let j = algebra_radical(a)?;
            for x in j.basis.vectors() {
                for i in 0..n {
                    for t in 0..n {
                        cols[t].push(self.element_block(&x, i, t));
                    }
                }
            }
        }
        let parts = cols
            .into_iter()
            .enumerate()
            .map(|(t, ms)| {
                let mut big = Mat::zeros(k, self.dims[t], 0);
                for m in ms {
                    big = big.hstack(&m);
                }
                big.kernel()
            })
            .collect();
        Ok(Submodule { parts })
    }

    pub fn radical_module(&self) -> Result<(FdModule<K>, ModuleMap<K>)> {
        Ok(self.sub_module(&self.radical_sub()?))
    }

    pub fn top(&self) -> Result<(FdModule<K>, ModuleMap<K>)> {
        Ok(self.quotient(&self.radical_sub()?))
    }

    pub fn socle(&self) -> Result<(FdModule<K>, ModuleMap<K>)> {
        Ok(self.sub_module(&self.socle_sub()?))
    }

    fn require_basic(&self) -> Result<()> {
        let a = &self.algebra;
        if a.radical_adapted {
            return Ok(());
        }
        let j = algebra_radical(a)?;
        if a.dim() - j.dim() != a.n_vertices() {
            return Err(Error::Unsupported("simple modules are not one-dimensional at each vertex".into()));
        }
        Ok(())
    }

    /// Multiplicity of each simple in `top(M)`.
    pub fn top_multiplicities(&self) -> Result<Vec<usize>> {
        self.require_basic()?;
        let rad = self.radical_sub()?;
        Ok(self.dims.iter().zip(&rad.parts).map(|(d, r)| d - r.dim()).collect())
    }

    /// Multiplicity of each simple in `soc(M)`.
    pub fn socle_multiplicities(&self) -> Result<Vec<usize>> {
        self.require_basic()?;
        Ok(self.socle_sub()?.parts.iter().map(|p| p.dim()).collect())
    }

    /// Dimensions of the radical layers `J^i M / J^{i+1} M`.
    pub fn radical_layers(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let rad = cur.radical_sub()?;
            out.push(cur.dims.iter().zip(&rad.parts).map(|(d, r)| d - r.dim()).collect());
            if rad.dim() == cur.dim() {
                break;
            }
            cur = cur.sub_module(&rad).0;
        }
        Ok(out)
    }

    /// Projective cover `P ↠ M` with `P = ⊕ P_i^{top multiplicity}`.
    pub fn projective_cover(&self) -> Result<(FdModule<K>, ModuleMap<K>)> {
        self.require_basic()?;
        let a = &self.algebra;
        let k = self.field();
        let n = a.n_vertices();
        let rad = self.radical_sub()?;
        let mut summands = Vec::new();
        let mut blocks: Vec<Mat<K>> = (0..n).map(|j| Mat::zeros(k, 0, self.dims[j])).collect();
        for i in 0..n {
            let comps = projective_basis(a, i);
            let p = FdModule::projective(&self.algebra, i);
            for c in rad.parts[i].free_coords() {
                let mut m = vec![k.zero(); self.dims[i]];
                m[c] = k.one();
                for j in 0..n {
                    let rows = comps[j].iter().map(|&b| self.basis_block(b).apply(&m)).collect();
                    blocks[j] = blocks[j].vstack(&Mat::from_rows(k, self.dims[j], rows));
                }
                summands.push(p.clone());
            }
        }
        let cover = if summands.is_empty() {
            FdModule::zero(&self.algebra)
        } else {
            FdModule::direct_sum(&summands.iter().collect::<Vec<_>>())?
        };
        Ok((cover.clone(), ModuleMap { source: cover, target: self.clone(), blocks }))
    }

    pub fn is_projective(&self) -> Result<bool> {
        let (p, _) = self.projective_cover()?;
        Ok(p.dim() == self.dim())
    }

    pub fn dims_string(&self) -> String {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl<K: Field> Submodule<K> {
    pub fn zero(m: &FdModule<K>) -> Self {
        Submodule { parts: m.dims.iter().map(|&d| Subspace::zero(m.field(), d)).collect() }
    }

    pub fn full(m: &FdModule<K>) -> Self {
        Submodule { parts: m.dims.iter().map(|&d| Subspace::full(m.field(), d)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains_space(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Submodule { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(b).expect("same ambient")).collect() }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Submodule {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersection(b).expect("same ambient")).collect(),
        }
    }

    /// Image under a module map out of the ambient module.
    pub fn image(&self, f: &ModuleMap<K>) -> Self {
        Submodule { parts: self.parts.iter().zip(&f.blocks).map(|(p, b)| p.image(b)).collect() }
    }

    /// Preimage under a module map into the ambient module.
    pub fn preimage(&self, f: &ModuleMap<K>) -> Submodule<K> {
        let k = f.source.field();
        let parts = f
            .blocks
            .iter()
            .zip(&self.parts)
            .map(|(b, p)| {
                // x·B ∈ P  ⟺  x·B·C = 0 for C spanning the annihilator of P.
                let ann = Mat::from_rows(k, p.ambient, p.basis.null_space_rows()).transpose();
                if ann.cols == 0 {
                    Subspace::full(k, b.rows)
                } else {
                    b.mul(&ann).kernel()
                }
            })
            .collect();
        Submodule { parts }
    }
}

impl<K: Field> ModuleMap<K> {
    pub fn zero(source: &FdModule<K>, target: &FdModule<K>) -> Self {
        let k = source.field();
        let blocks = source.dims.iter().zip(&target.dims).map(|(&a, &b)| Mat::zeros(k, a, b)).collect();
        ModuleMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(m: &FdModule<K>) -> Self {
        let blocks = m.dims.iter().map(|&d| Mat::identity(m.field(), d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), blocks }
    }

    /// Checks the commuting squares `A^M_g f_s = f_t A^N_g`.
    pub fn is_valid(&self) -> bool {
        let (m, n) = (&self.source, &self.target);
        (0..m.action.len()).all(|g| {
            let (s, t) = m.gen_ends(g);
            m.action[g].mul(&self.blocks[s]) == self.blocks[t].mul(&n.action[g])
        })
    }

    /// `self` then `other`.
    pub fn then(&self, other: &ModuleMap<K>) -> ModuleMap<K> {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleMap { source: self.source.clone(), target: other.target.clone(), blocks }
    }

    pub fn add(&self, other: &ModuleMap<K>) -> ModuleMap<K> {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: &K::E) -> ModuleMap<K> {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_injective()
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total(&self) -> Mat<K> {
        let k = self.source.field();
        let mut out = Mat::zeros(k, self.source.dim(), self.target.dim());
        let (os, ot) = (self.source.offsets(), self.target.offsets());
        for (i, b) in self.blocks.iter().enumerate() {
            out.set_block(os[i], ot[i], b);
        }
        out
    }

    /// Blocks flattened vertex by vertex.
    pub fn flatten(&self) -> Vec<K::E> {
        self.blocks.iter().flat_map(|b| b.data.iter().cloned()).collect()
    }

    pub fn from_flat(source: &FdModule<K>, target: &FdModule<K>, v: &[K::E]) -> Self {
        let k = source.field();
        let mut blocks = Vec::new();
        let mut pos = 0;
        for (&a, &b) in source.dims.iter().zip(&target.dims) {
            blocks.push(Mat { field: k.clone(), rows: a, cols: b, data: v[pos..pos + a * b].to_vec() });
            pos += a * b;
        }
        ModuleMap { source: source.clone(), target: target.clone(), blocks }
    }

    /// Linear combination of maps with common source and target.
    pub fn combination(source: &FdModule<K>, target: &FdModule<K>, maps: &[ModuleMap<K>], coeffs: &[K::E]) -> Self {
        let mut out = ModuleMap::zero(source, target);
        for (f, c) in maps.iter().zip(coeffs) {
            for (o, b) in out.blocks.iter_mut().zip(&f.blocks) {
                o.axpy(c, b);
            }
        }
        out
    }

    pub fn kernel_sub(&self) -> Submodule<K> {
        Submodule { parts: self.blocks.iter().map(|b| b.kernel()).collect() }
    }

    pub fn image_sub(&self) -> Submodule<K> {
        Submodule { parts: self.blocks.iter().map(|b| b.row_space()).collect() }
    }

    pub fn kernel(&self) -> (FdModule<K>, ModuleMap<K>) {
        self.source.sub_module(&self.kernel_sub())
    }

    pub fn image(&self) -> (FdModule<K>, ModuleMap<K>) {
        self.target.sub_module(&self.image_sub())
    }

    pub fn cokernel(&self) -> (FdModule<K>, ModuleMap<K>) {
        self.target.quotient(&self.image_sub())
    }

    /// Factor a map through a submodule of the target containing its image.
    pub fn corestrict(&self, incl: &ModuleMap<K>) -> Option<ModuleMap<K>> {
        let mut blocks = Vec::new();
        for (f, i) in self.blocks.iter().zip(&incl.blocks) {
            if f.rows == 0 || i.rows == 0 {
                if !f.is_zero() {
                    return None;
                }
                blocks.push(Mat::zeros(&f.field, f.rows, i.rows));
                continue;
            }
            blocks.push(i.solve(f).ok()??);
        }
        Some(ModuleMap { source: self.source.clone(), target: incl.source.clone(), blocks })
    }

    /// The map `h` with `self = proj then h`, for `proj` surjective and `Ker proj ⊆ Ker self`.
    pub fn descend(&self, proj: &ModuleMap<K>) -> Option<ModuleMap<K>> {
        let mut blocks = Vec::new();
        for (f, p) in self.blocks.iter().zip(&proj.blocks) {
            if p.cols == 0 || f.cols == 0 {
                if !f.is_zero() {
                    return None;
                }
                blocks.push(Mat::zeros(&f.field, p.cols, f.cols));
                continue;
            }
            blocks.push(p.transpose().solve(&f.transpose()).ok()??.transpose());
        }
        Some(ModuleMap { source: proj.target.clone(), target: self.target.clone(), blocks })
    }

    /// Some `h` with `self = h then g` (a lift of `self` along `g`), when one exists.
    pub fn factor_through(&self, g: &ModuleMap<K>) -> Option<ModuleMap<K>> {
        let basis = hom_space(&self.source, &g.source);
        if basis.is_empty() {
            return if self.is_zero() { Some(ModuleMap::zero(&self.source, &g.source)) } else { None };
        }
        let k = self.source.field();
        let rows: Vec<Vec<K::E>> = basis.iter().map(|h| h.then(g).flatten()).collect();
        let target = self.flatten();
        if target.is_empty() {
            return Some(ModuleMap::zero(&self.source, &g.source));
        }
        let a = Mat::from_rows(k, target.len(), rows);
        let x = a.solve(&Mat::from_rows(k, target.len(), vec![target])).ok()??;
        Some(ModuleMap::combination(&self.source, &g.source, &basis, x.row(0)))
    }
}

/// Basis of `Hom_A(M, N)`, solving the commuting-square equations.
pub fn hom_space<K: Field>(m: &FdModule<K>, n: &FdModule<K>) -> Vec<ModuleMap<K>> {
    let k = m.field();
    let nv = m.dims.len();
    let mut var_off = vec![0usize; nv + 1];
    for i in 0..nv {
        var_off[i + 1] = var_off[i] + m.dims[i] * n.dims[i];
    }
    let nvars = var_off[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |i: usize, a: usize, c: usize| var_off[i] + a * n.dims[i] + c;
    let mut eqs: Vec<Vec<K::E>> = Vec::new();
    for g in 0..m.action.len() {
        let (s, t) = m.gen_ends(g);
        let (am, an) = (&m.action[g], &n.action[g]);
        for a in 0..m.dims[t] {
            for c in 0..n.dims[s] {
                let mut row = vec![k.zero(); nvars];
                for b in 0..m.dims[s] {
                    let x = am.get(a, b);
                    if !k.is_zero(x) {
                        let v = var(s, b, c);
                        row[v] = k.add(&row[v], x);
                    }
                }
                for b in 0..n.dims[t] {
                    let x = an.get(b, c);
                    if !k.is_zero(x) {
                        let v = var(t, a, b);
                        row[v] = k.sub(&row[v], x);
                    }
                }
                if row.iter().any(|x| !k.is_zero(x)) {
                    eqs.push(row);
                }
            }
        }
    }
    let sols = if eqs.is_empty() {
        Mat::identity(k, nvars).row_list()
    } else {
        Mat::from_rows(k, nvars, eqs).null_space_rows()
    };
    sols.iter().map(|v| ModuleMap::from_flat(m, n, v)).collect()
}

pub fn hom_dim<K: Field>(m: &FdModule<K>, n: &FdModule<K>) -> usize {
    hom_space(m, n).len()
}

/// `tr_V(M) = Σ Im f` over `f ∈ Hom(V, M)`.
pub fn trace<K: Field>(v: &FdModule<K>, m: &FdModule<K>) -> Submodule<K> {
    hom_space(v, m).iter().fold(Submodule::zero(m), |acc, f| acc.sum(&f.image_sub()))
}

/// `Rej_S(M) = ⋂ Ker f` over `f ∈ Hom(M, S)`.
pub fn reject<K: Field>(m: &FdModule<K>, s: &FdModule<K>) -> Submodule<K> {
    hom_space(m, s).iter().fold(Submodule::full(m), |acc, f| acc.intersection(&f.kernel_sub()))
}

/// Split `M` into summands via idempotents of `End(M)`.
pub fn decompose<K: Field, R: Rng + ?Sized>(m: &FdModule<K>, rng: &mut R) -> Vec<Summand<K>> {
    if m.is_zero() {
        return Vec::new();
    }
    let k = m.field();
    let endo: Vec<Mat<K>> = hom_space(m, m).iter().map(|f| f.total()).collect();
    let off = m.offsets();
    let mut out = Vec::new();
    for piece in decomp::decompose_space(k, m.dim(), &endo, rng) {
        let parts = (0..m.dims.len())
            .map(|i| {
                let cols: Vec<usize> = (off[i]..off[i + 1]).collect();
                Subspace::from_mat(piece.basis.select_cols(&cols))
            })
            .collect();
        let sub = Submodule { parts };
        debug_assert_eq!(sub.dim(), piece.basis.rows, "summands are graded");
        let (module, incl) = m.sub_module(&sub);
        out.push(Summand { module, incl, local: piece.local });
    }
    out.sort_by_key(|s| (s.module.dim(), s.module.dims.clone()));
    out
}

/// Whether two modules with local endomorphism rings are isomorphic: some `f·g` is invertible.
pub fn indecomposables_isomorphic<K: Field>(x: &FdModule<K>, y: &FdModule<K>) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let fs = hom_space(x, y);
    let gs = hom_space(y, x);
    fs.iter().any(|f| gs.iter().any(|g| !f.then(g).total().is_nilpotent()))
}

/// Isomorphism test: random invertible homs, then Krull–Schmidt matching of summands.
pub fn is_isomorphic<K: Field, R: Rng + ?Sized>(m: &FdModule<K>, n: &FdModule<K>, rng: &mut R) -> Verdict {
    if m.dims != n.dims {
        return Verdict::refuted(
            "dimension vectors differ",
            Witness::new(format!("{} vs {}", m.dims_string(), n.dims_string())),
        );
    }
    let k = m.field();
    let hmn = hom_space(m, n);
    let (dmm, dnn) = (hom_dim(m, m), hom_dim(n, n));
    if hmn.len() != dmm || dmm != dnn {
        return Verdict::refuted(
            "Hom dimensions differ",
            Witness::new(format!("dim Hom(M,N) = {}, dim End(M) = {dmm}, dim End(N) = {dnn}", hmn.len())),
        );
    }
    for _ in 0..16 {
        let coeffs: Vec<K::E> = hmn.iter().map(|_| k.random(rng)).collect();
        if ModuleMap::combination(m, n, &hmn, &coeffs).is_iso() {
            return Verdict::proven("explicit invertible homomorphism");
        }
    }
    let dm = decompose(m, rng);
    let dn = decompose(n, rng);
    if dm.iter().chain(&dn).any(|s| !s.local) {
        return Verdict::unknown("no invertible homomorphism found and decomposition incomplete");
    }
    let mut used = vec![false; dn.len()];
    for s in &dm {
        let hit = (0..dn.len()).find(|&j| !used[j] && indecomposables_isomorphic(&s.module, &dn[j].module));
        match hit {
            Some(j) => used[j] = true,
            None => {
                return Verdict::refuted(
                    "indecomposable summands differ",
                    Witness::new(format!("summand of dimension vector {} has no partner", s.module.dims_string())),
                )
            }
        }
    }
    if used.iter().all(|&u| u) {
        Verdict::proven("matching indecomposable summands")
    } else {
        Verdict::refuted("indecomposable summands differ", Witness::new("unmatched summand of the second module"))
    }
}

/// Module file contents: dimensions by vertex name, matrices by generator name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Coeff>>>,
}

pub fn render_coeff<K: Field>(k: &K, x: &K::E) -> Coeff {
    let s = k.render(x);
    match s.parse::<i64>() {
        Ok(n) => Coeff::Int(n),
        Err(_) => Coeff::Text(s),
    }
}

impl<K: Field> FdModule<K> {
    pub fn from_json(algebra: &Arc<Algebra<K>>, j: &ModuleJson) -> Result<Self> {
        let a = algebra;
        let k = &a.field;
        let mut dims = vec![0; a.n_vertices()];
        for (name, &d) in &j.dims {
            let v = a.vertex_index(name).ok_or_else(|| Error::InvalidModule(format!("unknown vertex {name}")))?;
            dims[v] = d;
        }
        let mut action: Vec<Mat<K>> = a.gens.iter().map(|&b| Mat::zeros(k, dims[a.tgt[b]], dims[a.src[b]])).collect();
        for (name, rows) in &j.arrows {
            let g = a
                .gens
                .iter()
                .position(|&b| a.labels[b] == *name)
                .ok_or_else(|| Error::InvalidModule(format!("unknown arrow {name}")))?;
            let b = a.gens[g];
            let (ds, dt) = (dims[a.src[b]], dims[a.tgt[b]]);
            let shape_err = || Error::InvalidModule(format!("arrow {name} needs a {ds}x{dt} matrix"));
            if rows.len() != ds && !(ds == 0 && rows.is_empty()) {
                return Err(shape_err());
            }
            let mut m = Mat::zeros(k, ds, dt);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != dt {
                    return Err(shape_err());
                }
                for (c, x) in row.iter().enumerate() {
                    m.set(r, c, k.parse(&x.as_text())?);
                }
            }
            action[g] = m.transpose();
        }
        FdModule::new(algebra.clone(), dims, action)
    }

    pub fn to_json(&self) -> ModuleJson {
        let a = &self.algebra;
        let k = self.field();
        let dims = a.vertex_labels.iter().cloned().zip(self.dims.iter().cloned()).collect();
        let arrows = a
            .gens
            .iter()
            .zip(&self.action)
            .map(|(&b, m)| {
                let t = m.transpose();
                let rows = (0..t.rows).map(|r| t.row(r).iter().map(|x| render_coeff(k, x)).collect()).collect();
                (a.labels[b].clone(), rows)
            })
            .collect();
        ModuleJson { dims, arrows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, presentation};
    use crate::field::{Fp, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2() -> Arc<Algebra<Fp>> {
        let k = Fp::new(101).unwrap();
        let p = presentation(k.spec(), &["1", "2"], &[("a", "1", "2")], &[]);
        build_algebra(&k, &p, None).unwrap()
    }

    pub(crate) fn ex82<K: Field>(k: &K) -> Arc<Algebra<K>> {
        let p = presentation(
            k.spec(),
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "1", "2"), ("gamma", "2", "3"), ("delta", "2", "3")],
            &[
                &[("1", &["alpha", "delta"])],
                &[("1", &["beta", "gamma"])],
                &[("1", &["alpha", "gamma"]), ("-1", &["beta", "delta"])],
            ],
        );
        build_algebra(k, &p, None).unwrap()
    }

    #[test]
    fn projective_dims() {
        let k = Fp::new(101).unwrap();
        let r = ex82(&k);
        let dims: Vec<usize> = (0..3).map(|i| FdModule::projective(&r, i).dim()).collect();
        assert_eq!(dims, vec![1, 3, 4]);
        assert_eq!(FdModule::regular(&r).dim(), 8);
        let a = a2();
        assert_eq!(FdModule::projective(&a, 0).dims, vec![1, 0]);
        assert_eq!(FdModule::injective(&a, 1).dims, vec![0, 1]);
        assert_eq!(FdModule::injective(&a, 0).dims, vec![1, 1]);
    }

    #[test]
    fn hom_examples() {
        let a = a2();
        let p1 = FdModule::projective(&a, 0);
        let p2 = FdModule::projective(&a, 1);
        assert_eq!(hom_dim(&p1, &p2), 1);
        assert_eq!(hom_dim(&p2, &p1), 0);
        let s1 = FdModule::simple(&a, 0);
        let s2 = FdModule::simple(&a, 1);
        assert_eq!(hom_dim(&s2, &s1), 0);
        assert_eq!(hom_dim(&s1, &s1), 1);
        for f in hom_space(&p1, &p2) {
            assert!(f.is_valid());
        }
    }

    #[test]
    fn cover_and_kernel() {
        let a = a2();
        let s2 = FdModule::simple(&a, 1);
        let (p, epi) = s2.projective_cover().unwrap();
        assert_eq!(p.dims, vec![1, 1]);
        assert!(epi.is_valid() && epi.is_surjective());
        let (ker, _) = epi.kernel();
        assert_eq!(ker.dims, vec![1, 0]);
        let k = Fp::new(101).unwrap();
        let r = ex82(&k);
        let s3 = FdModule::simple(&r, 2);
        let (p3, epi) = s3.projective_cover().unwrap();
        assert_eq!(p3.dim(), 4);
        assert_eq!(epi.kernel().0.dim(), 3);
    }

    #[test]
    fn socle_of_regular() {
        let k = Fp::new(101).unwrap();
        let r = ex82(&k);
        let reg = FdModule::regular(&r);
        assert_eq!(reg.socle_sub().unwrap().dims(), vec![4, 0, 0]);
        assert_eq!(reg.top_multiplicities().unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn decompose_regular() {
        let k = Fp::new(101).unwrap();
        let r = ex82(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let parts = decompose(&FdModule::regular(&r), &mut rng);
        let dims: Vec<usize> = parts.iter().map(|s| s.module.dim()).collect();
        assert_eq!(dims, vec![1, 3, 4]);
        for (i, s) in parts.iter().enumerate() {
            assert!(s.local);
            assert!(is_isomorphic(&s.module, &FdModule::projective(&r, i), &mut rng).is_proven());
        }
    }

    #[test]
    fn decompose_rational_double() {
        let k = Rationals;
        let r = ex82(&k);
        let p = FdModule::projective(&r, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let parts = decompose(&p.power(2), &mut rng);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|s| s.local && s.module.dims == p.dims));
    }

    #[test]
    fn trace_and_reject() {
        let a = a2();
        let p2 = FdModule::projective(&a, 1);
        let s1 = FdModule::simple(&a, 0);
        assert_eq!(trace(&p2, &p2).dim(), 2);
        assert_eq!(trace(&s1, &p2).dims(), vec![1, 0]);
        assert_eq!(reject(&p2, &FdModule::zero(&a)).dim(), 2);
        assert_eq!(reject(&p2, &FdModule::simple(&a, 1)).dims(), vec![1, 0]);
    }

    #[test]
    fn json_round_trip_and_relation_error() {
        let k = Fp::new(101).unwrap();
        let r = ex82(&k);
        let p3 = FdModule::projective(&r, 2);
        let j = p3.to_json();
        assert_eq!(FdModule::from_json(&r, &j).unwrap(), p3);
        let bad: ModuleJson = serde_json::from_str(
            r#"{"dims": {"1": 1, "2": 1, "3": 1},
                "arrows": {"alpha": [[1]], "delta": [[1]]}}"#,
        )
        .unwrap();
        match FdModule::from_json(&r, &bad) {
            Err(Error::InvalidModule(msg)) => assert!(msg.contains("relation")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quotient_and_cokernel() {
        let a = a2();
        let p2 = FdModule::projective(&a, 1);
        let p1 = FdModule::projective(&a, 0);
        let f = &hom_space(&p1, &p2)[0];
        let (c, proj) = f.cokernel();
        assert_eq!(c.dims, vec![0, 1]);
        assert!(f.then(&proj).is_zero());
        assert!(proj.is_valid());
    }
}
