//! Finite-dimensional algebras with a Peirce basis.
//!
//! Every algebra has a basis whose first `n` elements are orthogonal idempotents
//! `e_1..e_n` summing to 1, and every basis element `b` satisfies `b = e_src b e_tgt`.
//! Paths compose left to right: the path `[α, δ]` means α then δ.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Mat, Subspace};

/// Sparse vector over the basis.
pub type Sparse<K> = Vec<(usize, <K as Field>::E)>;

/// A field selector in presentation files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rational: Option<bool>,
}

impl FieldJson {
    pub fn spec(&self) -> Result<FieldSpec> {
        match (self.prime, self.rational) {
            (Some(p), None) => Ok(FieldSpec::Prime(p)),
            (None, Some(true)) => Ok(FieldSpec::Rational),
            _ => Err(Error::Parse("field must be {\"prime\": p} or {\"rational\": true}".into())),
        }
    }

    pub fn from_spec(s: FieldSpec) -> Self {
        match s {
            FieldSpec::Prime(p) => FieldJson { prime: Some(p), rational: None },
            FieldSpec::Rational => FieldJson { prime: None, rational: Some(true) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// A scalar as written in a file: a JSON integer or a string `"a"` / `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn as_text(&self) -> String {
        match self {
            Coeff::Int(n) => n.to_string(),
            Coeff::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Coeff,
    pub path: Vec<String>,
}

/// A quiver with relations, exactly as stored in algebra files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverPresentation {
    pub field: FieldJson,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<Term>>,
}

/// A quiver with vertices indexed `0..n` and arrows `(name, from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, usize, usize)>,
}

impl Quiver {
    pub fn has_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, _, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(_, s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen < n
    }

    /// Length of the longest path; `None` when there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        if self.has_cycle() {
            return None;
        }
        let n = self.vertices.len();
        let mut best = vec![0usize; n];
        for _ in 0..n {
            for &(_, s, t) in &self.arrows {
                best[s] = best[s].max(best[t] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(_, s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

impl QuiverPresentation {
    pub fn quiver(&self) -> Result<Quiver> {
        let index: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != self.vertices.len() {
            return Err(Error::Parse("duplicate vertex name".into()));
        }
        let mut names = BTreeSet::new();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            let f = *index
                .get(a.from.as_str())
                .ok_or_else(|| Error::Parse(format!("arrow {}: unknown vertex {}", a.name, a.from)))?;
            let t = *index
                .get(a.to.as_str())
                .ok_or_else(|| Error::Parse(format!("arrow {}: unknown vertex {}", a.name, a.to)))?;
            if !names.insert(a.name.clone()) {
                return Err(Error::Parse(format!("duplicate arrow name {}", a.name)));
            }
            arrows.push((a.name.clone(), f, t));
        }
        Ok(Quiver { vertices: self.vertices.clone(), arrows })
    }
}

/// A path: source vertex, target vertex and arrow indices (left to right).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    fn order_key(&self) -> (usize, Vec<usize>, usize) {
        (self.arrows.len(), self.arrows.clone(), self.src)
    }
}

/// A module-validation relation: a combination of generator words that must act as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<K: Field> {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    /// `(coefficient, word)`; a word lists generator positions, empty for the idempotent at `src`.
    pub terms: Vec<(K::E, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Quiver(QuiverPresentation),
    Quotient,
    Opposite,
    TrivialExtension,
    Raw,
}

/// A finite-dimensional algebra given by structure constants on a Peirce basis.
#[derive(Clone, Debug)]
pub struct Algebra<K: Field> {
    pub field: K,
    pub vertex_labels: Vec<String>,
    pub labels: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    table: Vec<Vec<Sparse<K>>>,
    /// Basis indices of the generators used to present modules.
    pub gens: Vec<usize>,
    /// Each basis element as a word in the generators (positions into `gens`).
    pub words: Vec<Vec<usize>>,
    pub relations: Vec<Relation<K>>,
    pub provenance: Provenance,
    /// The non-idempotent basis spans a nilpotent ideal, so it is the radical and the algebra is basic and split.
    pub radical_adapted: bool,
}

impl<K: Field> PartialEq for Algebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vertex_labels == other.vertex_labels
            && self.src == other.src
            && self.tgt == other.tgt
            && self.table == other.table
    }
}

impl<K: Field> Algebra<K> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn is_idempotent_index(&self, b: usize) -> bool {
        b < self.n_vertices()
    }

    /// Product of two basis elements as a sparse vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse<K> {
        &self.table[i][j]
    }

    pub fn unit_vec(&self, i: usize) -> Vec<K::E> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[K::E], y: &[K::E]) -> Vec<K::E> {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if k.is_zero(b) || self.tgt[i] != self.src[j] {
                    continue;
                }
                let ab = k.mul(a, b);
                for (r, c) in &self.table[i][j] {
                    out[*r] = k.mul_add(&out[*r], &ab, c);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication `y ↦ b·y` in the row convention (`y·L`).
    pub fn left_mult_matrix(&self, b: usize) -> Mat<K> {
        let mut m = Mat::zeros(&self.field, self.dim(), self.dim());
        for j in 0..self.dim() {
            for (r, c) in &self.table[b][j] {
                m.set(j, *r, c.clone());
            }
        }
        m
    }

    /// Build from raw structure constants, validating the Peirce and unit axioms and associativity.
    /// Generators are all non-idempotent basis elements; relations are the multiplication table.
    pub fn from_structure(
        field: K,
        vertex_labels: Vec<String>,
        labels: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        table: Vec<Vec<Sparse<K>>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        let dim = labels.len();
        let gens: Vec<usize> = (n..dim).collect();
        let words = (0..dim).map(|b| if b < n { Vec::new() } else { vec![b - n] }).collect();
        let mut alg = Algebra {
            field,
            vertex_labels,
            labels,
            src,
            tgt,
            table,
            gens,
            words,
            relations: Vec::new(),
            provenance,
            radical_adapted: false,
        };
        alg.validate()?;
        alg.relations = alg.table_relations();
        alg.radical_adapted = alg.structural_radical().is_some();
        Ok(alg)
    }

    fn table_relations(&self) -> Vec<Relation<K>> {
        let k = &self.field;
        let n = self.n_vertices();
        let mut rels = Vec::new();
        for (gi, &g) in self.gens.iter().enumerate() {
            for (hi, &h) in self.gens.iter().enumerate() {
                if self.tgt[g] != self.src[h] {
                    continue;
                }
                let mut terms = vec![(k.one(), vec![gi, hi])];
                for (r, c) in &self.table[g][h] {
                    let w = if *r < n { Vec::new() } else { self.words[*r].clone() };
                    terms.push((k.neg(c), w));
                }
                rels.push(Relation {
                    name: format!("{}*{}", self.labels[g], self.labels[h]),
                    src: self.src[g],
                    tgt: self.tgt[h],
                    terms,
                });
            }
        }
        rels
    }

    fn validate(&self) -> Result<()> {
        let k = &self.field;
        let n = self.n_vertices();
        let dim = self.dim();
        let bad = |m: String| Err(Error::Shape(m));
        if self.src.len() != dim || self.tgt.len() != dim || self.table.len() != dim {
            return bad("basis data length".into());
        }
        for i in 0..n {
            if self.src[i] != i || self.tgt[i] != i {
                return bad(format!("idempotent {i} misplaced"));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let p = &self.table[i][j];
                if self.tgt[i] != self.src[j] && !p.is_empty() {
                    return bad(format!("product {i}*{j} violates Peirce grading"));
                }
                for (r, _) in p {
                    if self.src[*r] != self.src[i] || self.tgt[*r] != self.tgt[j] {
                        return bad(format!("product {i}*{j} leaves its Peirce block"));
                    }
                }
            }
        }
        for v in 0..n {
            for b in 0..dim {
                let expect_l: Sparse<K> = if self.src[b] == v { vec![(b, k.one())] } else { Vec::new() };
                let expect_r: Sparse<K> = if self.tgt[b] == v { vec![(b, k.one())] } else { Vec::new() };
                if self.table[v][b] != expect_l || self.table[b][v] != expect_r {
                    return bad(format!("idempotent {v} does not act as a unit on basis element {b}"));
                }
            }
        }
        self.check_associative()
    }

    fn check_associative(&self) -> Result<()> {
        let k = &self.field;
        let dim = self.dim();
        let n = self.n_vertices();
        for i in n..dim {
            for j in n..dim {
                if self.tgt[i] != self.src[j] || self.table[i][j].is_empty() {
                    continue;
                }
                for l in n..dim {
                    if self.tgt[j] != self.src[l] {
                        continue;
                    }
                    let mut lhs = vec![k.zero(); dim];
                    for (r, c) in &self.table[i][j] {
                        for (s, d) in &self.table[*r][l] {
                            lhs[*s] = k.mul_add(&lhs[*s], c, d);
                        }
                    }
                    let mut rhs = vec![k.zero(); dim];
                    for (r, c) in &self.table[j][l] {
                        for (s, d) in &self.table[i][*r] {
                            rhs[*s] = k.mul_add(&rhs[*s], c, d);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Shape(format!("associativity fails on ({i},{j},{l})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> Self {
        let dim = self.dim();
        let table = (0..dim).map(|i| (0..dim).map(|j| self.table[j][i].clone()).collect()).collect();
        let words = self.words.iter().map(|w| w.iter().rev().cloned().collect()).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                src: r.tgt,
                tgt: r.src,
                terms: r.terms.iter().map(|(c, w)| (c.clone(), w.iter().rev().cloned().collect())).collect(),
            })
            .collect();
        Algebra {
            field: self.field.clone(),
            vertex_labels: self.vertex_labels.clone(),
            labels: self.labels.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            table,
            gens: self.gens.clone(),
            words,
            relations,
            provenance: Provenance::Opposite,
            radical_adapted: self.radical_adapted,
        }
    }

    /// Indices of basis elements in the Peirce block `e_i A e_j`.
    pub fn block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.src[b] == i && self.tgt[b] == j).collect()
    }

    /// Cartan matrix `c_ij = dim e_i A e_j`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut c = vec![vec![0; n]; n];
        for b in 0..self.dim() {
            c[self.src[b]][self.tgt[b]] += 1;
        }
        c
    }

    /// Dimension of the center, as the common kernel of the commutator maps.
    pub fn center_dim(&self) -> usize {
        let k = &self.field;
        let dim = self.dim();
        let mut m = Mat::zeros(k, dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for (r, c) in &self.table[i][j] {
                    let cur = m.get(i, j * dim + r).clone();
                    m.set(i, j * dim + r, k.add(&cur, c));
                }
                for (r, c) in &self.table[j][i] {
                    let cur = m.get(i, j * dim + r).clone();
                    m.set(i, j * dim + r, k.sub(&cur, c));
                }
            }
        }
        dim - m.rank()
    }

    /// Products `x·y` over bases of two subspaces, spanned.
    pub fn product_space(&self, x: &Subspace<K>, y: &Subspace<K>) -> Subspace<K> {
        let mut rows = Vec::new();
        for a in x.vectors() {
            for b in y.vectors() {
                rows.push(self.mul(&a, &b));
            }
        }
        Subspace::from_rows(&self.field, self.dim(), rows)
    }

    /// The Jacobson radical via the trace form; needs characteristic 0 or above the dimension.
    pub fn radical(&self) -> Result<Ideal<K>> {
        let k = &self.field;
        let dim = self.dim();
        let p = k.characteristic();
        if p != 0 && p <= dim as u64 {
            return Err(Error::CharTooSmall { char: p, dim });
        }
        let traces: Vec<K::E> = (0..dim)
            .map(|b| {
                let mut t = k.zero();
                for l in 0..dim {
                    for (r, c) in &self.table[b][l] {
                        if *r == l {
                            t = k.add(&t, c);
                        }
                    }
                }
                t
            })
            .collect();
        let mut gram = Mat::zeros(k, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut s = k.zero();
                for (r, c) in &self.table[i][j] {
                    s = k.mul_add(&s, c, &traces[*r]);
                }
                gram.set(i, j, s);
            }
        }
        let j = gram.kernel();
        let ideal = Ideal { basis: j };
        assert!(self.is_nilpotent_space(&ideal.basis), "trace-form radical must be nilpotent");
        Ok(ideal)
    }

    /// Span of the non-idempotent basis elements, when it is a nilpotent two-sided ideal.
    pub fn structural_radical(&self) -> Option<Ideal<K>> {
        let n = self.n_vertices();
        let dim = self.dim();
        let rows: Vec<Vec<K::E>> = (n..dim).map(|b| self.unit_vec(b)).collect();
        let s = Subspace::from_rows(&self.field, dim, rows);
        if self.is_nilpotent_space(&s) {
            Some(Ideal { basis: s })
        } else {
            None
        }
    }

    fn is_nilpotent_space(&self, s: &Subspace<K>) -> bool {
        let mut power = s.clone();
        for _ in 0..=self.dim() {
            if power.is_zero() {
                return true;
            }
            let next = self.product_space(&power, s);
            if next.dim() == power.dim() {
                return next.is_zero();
            }
            power = next;
        }
        power.is_zero()
    }

    /// Dimension of `e_i U e_j` for a Peirce-graded subspace `U`.
    pub fn block_dim(&self, u: &Subspace<K>, i: usize, j: usize) -> usize {
        let cols = self.block(i, j);
        if cols.is_empty() || u.is_zero() {
            return 0;
        }
        u.basis.select_cols(&cols).rank()
    }

    /// Gabriel quiver via the trace-form radical.
    pub fn gabriel_quiver(&self) -> Result<GabrielQuiver> {
        let j = self.radical()?;
        Ok(self.gabriel_quiver_with(&j))
    }

    pub fn gabriel_quiver_with(&self, j: &Ideal<K>) -> GabrielQuiver {
        let n = self.n_vertices();
        let j2 = self.product_space(&j.basis, &j.basis);
        let cartan = self.cartan();
        let mut basic_split = true;
        let mut arrows = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let jd = self.block_dim(&j.basis, a, b);
                let top = cartan[a][b] - jd;
                if (a == b && top != 1) || (a != b && top != 0) {
                    basic_split = false;
                }
                arrows[a][b] = jd - self.block_dim(&j2, a, b);
            }
        }
        GabrielQuiver { vertices: n, arrows, basic_split }
    }

    pub fn invariants(&self) -> Result<AlgebraInvariants> {
        let j = self.radical()?;
        let q = self.gabriel_quiver_with(&j);
        Ok(AlgebraInvariants {
            dim: self.dim(),
            simples: self.n_vertices(),
            radical_dim: j.dim(),
            cartan: self.cartan(),
            quiver: q,
            center_dim: self.center_dim(),
        })
    }

    /// Two-sided ideal `ReR` for `e` a sum of vertex idempotents.
    pub fn idempotent_ideal(&self, e: &[usize]) -> Ideal<K> {
        let dim = self.dim();
        let mut rows = Vec::new();
        for i in 0..dim {
            if !e.contains(&self.tgt[i]) {
                continue;
            }
            for j in 0..dim {
                if self.src[j] != self.tgt[i] {
                    continue;
                }
                let mut v = vec![self.field.zero(); dim];
                for (r, c) in &self.table[i][j] {
                    v[*r] = c.clone();
                }
                rows.push(v);
            }
        }
        Ideal { basis: Subspace::from_rows(&self.field, dim, rows) }
    }

    /// Whether a subspace is closed under left and right multiplication by the basis.
    pub fn is_two_sided(&self, u: &Subspace<K>) -> bool {
        for x in u.vectors() {
            for b in 0..self.dim() {
                let bv = self.unit_vec(b);
                if !u.contains(&self.mul(&bv, &x)) || !u.contains(&self.mul(&x, &bv)) {
                    return false;
                }
            }
        }
        true
    }

    /// `A/I`. Vertices whose idempotent lies in `I` are dropped.
    pub fn quotient(&self, i: &Ideal<K>) -> Result<Self> {
        let k = &self.field;
        let n = self.n_vertices();
        let dim = self.dim();
        let free = i.basis.free_coords();
        let kept_vertices: Vec<usize> = (0..n).filter(|v| free.contains(v)).collect();
        for v in 0..n {
            let in_ideal = i.basis.contains(&self.unit_vec(v));
            if in_ideal == kept_vertices.contains(&v) {
                return Err(Error::Unsupported("quotient by an ideal meeting a non-local corner".into()));
            }
        }
        let new_vertex: HashMap<usize, usize> = kept_vertices.iter().enumerate().map(|(a, &v)| (v, a)).collect();
        let new_index: HashMap<usize, usize> = free.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut table = Vec::with_capacity(free.len());
        for &a in &free {
            let mut row = Vec::with_capacity(free.len());
            for &b in &free {
                let mut v = vec![k.zero(); dim];
                for (r, c) in &self.table[a][b] {
                    v[*r] = c.clone();
                }
                let red = i.basis.reduce(&v);
                let sparse: Sparse<K> = red
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !k.is_zero(c))
                    .map(|(r, c)| (new_index[&r], c))
                    .collect();
                row.push(sparse);
            }
            table.push(row);
        }
        Algebra::from_structure(
            k.clone(),
            kept_vertices.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            free.iter().map(|&b| self.labels[b].clone()).collect(),
            free.iter().map(|&b| new_vertex[&self.src[b]]).collect(),
            free.iter().map(|&b| new_vertex[&self.tgt[b]]).collect(),
            table,
            Provenance::Quotient,
        )
    }

    /// Structure-constant equality after a basis permutation of `other` into `self`.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.src == other.src && self.tgt == other.tgt && self.table == other.table
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|v| v == name)
    }
}

/// A two-sided ideal, as a subspace of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<K: Field> {
    pub basis: Subspace<K>,
}

impl<K: Field> Ideal<K> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
    pub fn is_idempotent(&self, a: &Algebra<K>) -> bool {
        a.product_space(&self.basis, &self.basis) == self.basis
    }
}

/// Gabriel quiver data: `arrows[i][j]` counts arrows `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GabrielQuiver {
    pub vertices: usize,
    pub arrows: Vec<Vec<usize>>,
    pub basic_split: bool,
}

impl GabrielQuiver {
    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().flatten().sum()
    }

    /// Equality up to relabelling the vertices.
    pub fn isomorphic(&self, other: &Self) -> bool {
        if self.vertices != other.vertices || self.basic_split != other.basic_split {
            return false;
        }
        let n = self.vertices;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == other.arrows[perm[i]][perm[j]])) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    /// Build from an arrow list on `n` vertices.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, usize)]) -> Self {
        let mut a = vec![vec![0; n]; n];
        for &(i, j, c) in arrows {
            a[i][j] += c;
        }
        GabrielQuiver { vertices: n, arrows: a, basic_split: true }
    }

    /// Multiset of `(count)` for each ordered vertex pair with arrows, sorted.
    pub fn arrow_multiplicities(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.arrows.iter().flatten().cloned().filter(|&c| c > 0).collect();
        v.sort_unstable();
        v
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Isomorphism invariants reported for algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub simples: usize,
    pub radical_dim: usize,
    pub cartan: Vec<Vec<usize>>,
    pub quiver: GabrielQuiver,
    pub center_dim: usize,
}

impl AlgebraInvariants {
    /// Agreement of all invariants up to vertex relabelling.
    pub fn matches(&self, other: &Self) -> bool {
        if self.dim != other.dim
            || self.simples != other.simples
            || self.radical_dim != other.radical_dim
            || self.center_dim != other.center_dim
            || !self.quiver.isomorphic(&other.quiver)
        {
            return false;
        }
        let n = self.simples;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|i| (0..n).all(|j| self.cartan[i][j] == other.cartan[perm[i]][perm[j]]))
                && (0..n).all(|i| (0..n).all(|j| self.quiver.arrows[i][j] == other.quiver.arrows[perm[i]][perm[j]]))
            {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

/// Build `KQ/I` from a presentation over the given field.
///
/// Spans `{p·r·q}` over all paths of length at most `max_len`, reduces by elimination with
/// pivots on the largest path in degree-then-lexicographic order, and keeps the remaining
/// paths as basis.
pub fn build_algebra<K: Field>(k: &K, pres: &QuiverPresentation, max_len: Option<usize>) -> Result<Arc<Algebra<K>>> {
    let quiver = pres.quiver()?;
    let n = quiver.vertices.len();
    let arrow_index: HashMap<&str, usize> = quiver.arrows.iter().enumerate().map(|(i, a)| (a.0.as_str(), i)).collect();

    // Parse relations.
    let mut rels: Vec<Vec<(K::E, Path)>> = Vec::new();
    let mut homogeneous = true;
    for (ri, rel) in pres.relations.iter().enumerate() {
        let mut terms = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        for t in rel {
            if t.path.len() < 2 {
                return Err(Error::NotAdmissible(format!("relation {} has a path of length {}", ri + 1, t.path.len())));
            }
            let mut arrows = Vec::new();
            for name in &t.path {
                let a = *arrow_index
                    .get(name.as_str())
                    .ok_or_else(|| Error::Parse(format!("relation {}: unknown arrow {name}", ri + 1)))?;
                arrows.push(a);
            }
            for w in arrows.windows(2) {
                if quiver.arrows[w[0]].2 != quiver.arrows[w[1]].1 {
                    return Err(Error::Parse(format!("relation {}: path {:?} is not composable", ri + 1, t.path)));
                }
            }
            let s = quiver.arrows[arrows[0]].1;
            let e = quiver.arrows[*arrows.last().unwrap()].2;
            match ends {
                None => ends = Some((s, e)),
                Some(se) if se != (s, e) => {
                    return Err(Error::Parse(format!("relation {}: paths are not parallel", ri + 1)));
                }
                _ => {}
            }
            let c = k.parse(&t.coeff.as_text())?;
            terms.push((c, Path { src: s, tgt: e, arrows }));
        }
        if let Some(first) = terms.first() {
            let l = first.1.arrows.len();
            if terms.iter().any(|t| t.1.arrows.len() != l) {
                homogeneous = false;
            }
        }
        rels.push(terms);
    }

    let cyclic = quiver.has_cycle();
    if cyclic && !homogeneous {
        return Err(Error::NotAdmissible(
            "non-homogeneous relations on a quiver with oriented cycles are not supported".into(),
        ));
    }
    let longest = quiver.longest_path();
    let max_len = match (max_len, longest) {
        (Some(m), _) => m,
        (None, Some(l)) => l + 1,
        (None, None) => {
            return Err(Error::NotFiniteDimensional("quiver has oriented cycles; a max_len is required".into()));
        }
    };
    if max_len == 0 {
        return Err(Error::Parse("max_len must be at least 1".into()));
    }

    // Enumerate paths of length ≤ max_len.
    let mut paths: Vec<Path> = (0..n).map(|v| Path { src: v, tgt: v, arrows: Vec::new() }).collect();
    let mut frontier: Vec<Path> = paths.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.1 == p.tgt {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { src: p.src, tgt: a.2, arrows });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
        if paths.len() > 200_000 {
            return Err(Error::NotFiniteDimensional(format!("more than 200000 paths of length ≤ {max_len}")));
        }
    }
    paths.sort_by_key(|p| p.order_key());
    let np = paths.len();
    let pos: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    // Column c holds the path of rank np-1-c, so pivots fall on leading terms.
    let col = |i: usize| np - 1 - i;

    let concat = |a: &Path, b: &Path| -> Option<Path> {
        if a.tgt != b.src {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend(b.arrows.iter().cloned());
        Some(Path { src: a.src, tgt: b.tgt, arrows })
    };

    let mut gens_rows = Vec::new();
    for rel in &rels {
        let Some((_, first)) = rel.first() else { continue };
        for p in paths.iter().filter(|p| p.tgt == first.src) {
            for q in paths.iter().filter(|q| q.src == first.tgt) {
                let mut v = vec![k.zero(); np];
                let mut any = false;
                for (c, t) in rel {
                    let w = concat(&concat(p, t).unwrap(), q).unwrap();
                    if let Some(&i) = pos.get(&w) {
                        v[col(i)] = k.add(&v[col(i)], c);
                        any = true;
                    }
                }
                if any {
                    gens_rows.push(v);
                }
            }
        }
    }
    let ideal = Subspace::from_rows(k, np, gens_rows);

    // Every path of length max_len must lie in the ideal.
    for (i, p) in paths.iter().enumerate() {
        if p.arrows.len() == max_len {
            let mut v = vec![k.zero(); np];
            v[col(i)] = k.one();
            if !ideal.contains(&v) {
                let hint = match longest {
                    Some(l) => format!("acyclic quiver: max_len = {} suffices", l + 1),
                    None => "quiver has oriented cycles: the algebra may be infinite-dimensional".into(),
                };
                return Err(Error::NotFiniteDimensional(format!(
                    "a path of length {max_len} survives reduction; {hint}"
                )));
            }
        }
    }

    // Standard monomials, ascending.
    let mut is_pivot = vec![false; np];
    for &c in &ideal.pivots {
        is_pivot[np - 1 - c] = true;
    }
    let basis_paths: Vec<usize> = (0..np).filter(|&i| !is_pivot[i]).collect();
    let basis_index: HashMap<usize, usize> = basis_paths.iter().enumerate().map(|(b, &i)| (i, b)).collect();

    let normal_form = |w: &Path| -> Sparse<K> {
        let Some(&i) = pos.get(w) else {
            return Vec::new();
        };
        let mut v = vec![k.zero(); np];
        v[col(i)] = k.one();
        let r = ideal.reduce(&v);
        r.into_iter().enumerate().filter(|(_, c)| !k.is_zero(c)).map(|(c, x)| (basis_index[&(np - 1 - c)], x)).collect()
    };

    let dim = basis_paths.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if let Some(w) = concat(&paths[basis_paths[a]], &paths[basis_paths[b]]) {
                table[a][b] = normal_form(&w);
            }
        }
    }

    let label = |p: &Path| -> String {
        if p.arrows.is_empty() {
            format!("e{}", quiver.vertices[p.src])
        } else {
            p.arrows.iter().map(|&a| quiver.arrows[a].0.clone()).collect::<Vec<_>>().join("*")
        }
    };
    let bp: Vec<&Path> = basis_paths.iter().map(|&i| &paths[i]).collect();
    let gens: Vec<usize> = (0..quiver.arrows.len())
        .map(|a| {
            let p = Path { src: quiver.arrows[a].1, tgt: quiver.arrows[a].2, arrows: vec![a] };
            basis_index[&pos[&p]]
        })
        .collect();
    let relations = rels
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(ri, r)| Relation {
            name: format!("relation {} ({})", ri + 1, r.iter().map(|(_, p)| label(p)).collect::<Vec<_>>().join(", ")),
            src: r[0].1.src,
            tgt: r[0].1.tgt,
            terms: r.iter().map(|(c, p)| (c.clone(), p.arrows.clone())).collect(),
        })
        .collect();
    let alg = Algebra {
        field: k.clone(),
        vertex_labels: quiver.vertices.clone(),
        labels: bp.iter().map(|p| label(p)).collect(),
        src: bp.iter().map(|p| p.src).collect(),
        tgt: bp.iter().map(|p| p.tgt).collect(),
        table,
        gens,
        words: bp.iter().map(|p| p.arrows.clone()).collect(),
        relations,
        provenance: Provenance::Quiver(pres.clone()),
        radical_adapted: false,
    };
    alg.validate()?;
    let mut alg = alg;
    alg.radical_adapted = alg.structural_radical().is_some();
    Ok(Arc::new(alg))
}

/// Presentation helper for tests and embedded examples.
pub fn presentation(
    field: FieldSpec,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(&str, &[&str])]],
) -> QuiverPresentation {
    QuiverPresentation {
        field: FieldJson::from_spec(field),
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|(n, f, t)| ArrowSpec { name: n.to_string(), from: f.to_string(), to: t.to_string() })
            .collect(),
        relations: relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, p)| Term {
                        coeff: Coeff::Text(c.to_string()),
                        path: p.iter().map(|s| s.to_string()).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}
