//! Randomized invariants over random representations and random matrices.

use std::sync::Arc;

use heartforge_core::algebra::Algebra;
use heartforge_core::examples::{kronecker, linear};
use heartforge_core::homological::{ext_dim, min_presentation, syzygy, tensor};
use heartforge_core::modrep::{hom_dim, hom_space, trace};
use heartforge_core::torsion::TorsionPair;
use heartforge_core::{FdModule, Field, Fp, Mat, Rationals};
use proptest::prelude::*;

fn gf() -> Fp {
    Fp::new(101).unwrap()
}

/// A representation of a relation-free quiver algebra from a dimension vector and a stream of entries.
fn representation(a: &Arc<Algebra<Fp>>, dims: &[usize], entries: &[u64]) -> FdModule<Fp> {
    let mut it = entries.iter().cycle();
    let action = a
        .gens
        .iter()
        .map(|&b| {
            let (r, c) = (dims[a.tgt[b]], dims[a.src[b]]);
            Mat::from_rows(&a.field, c, (0..r).map(|_| (0..c).map(|_| *it.next().unwrap()).collect()).collect())
        })
        .collect();
    FdModule::new(a.clone(), dims.to_vec(), action).unwrap()
}

fn algebra(choice: usize) -> Arc<Algebra<Fp>> {
    match choice {
        0 => kronecker(&gf()).unwrap(),
        1 => linear(&gf(), 3).unwrap(),
        _ => linear(&gf(), 4).unwrap(),
    }
}

prop_compose! {
    fn module()(choice in 0usize..3, raw_dims in prop::collection::vec(0usize..=2, 4),
                entries in prop::collection::vec(0u64..101, 1..24)) -> FdModule<Fp> {
        let a = algebra(choice);
        representation(&a, &raw_dims[..a.n_vertices()], &entries)
    }
}

prop_compose! {
    fn module_pair()(choice in 0usize..3, d1 in prop::collection::vec(0usize..=2, 4), d2 in prop::collection::vec(0usize..=2, 4),
                     e1 in prop::collection::vec(0u64..101, 1..24), e2 in prop::collection::vec(0u64..101, 1..24))
                     -> (FdModule<Fp>, FdModule<Fp>) {
        let a = algebra(choice);
        let n = a.n_vertices();
        (representation(&a, &d1[..n], &e1), representation(&a, &d2[..n], &e2))
    }
}

fn matrix(rows: usize, cols: usize, entries: &[u64]) -> Mat<Fp> {
    let k = Fp::new(7).unwrap();
    let mut it = entries.iter().cycle();
    Mat::from_rows(&k, cols, (0..rows).map(|_| (0..cols).map(|_| *it.next().unwrap() % 7).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity_and_rref(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(0u64..7, 1..36)) {
        let m = matrix(rows, cols, &entries);
        let (r, pivots) = m.rref();
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.rows);
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_is_consistent(n in 1usize..5, entries in prop::collection::vec(0u64..7, 1..25), rhs in prop::collection::vec(0u64..7, 1..5)) {
        let a = matrix(n, n, &entries);
        let x = matrix(1, n, &rhs);
        let b = x.mul(&a);
        // x·a = b has the solution x; whatever solve returns must satisfy the equation.
        let sol = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(sol.mul(&a), b.clone());
        // A right-hand side outside the row space has no solution.
        if a.rank() < n {
            let outside = (0..n).map(|i| Mat::identity(&a.field, n).select_rows(&[i])).find(|e| !a.row_space().contains(e.row(0)));
            if let Some(e) = outside {
                prop_assert!(a.solve(&e).unwrap().is_none());
            }
        }
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), Mat::identity(&a.field, n));
        }
    }

    #[test]
    fn rational_parse_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let q = Rationals;
        let x = q.parse(&format!("{num}/{den}")).unwrap();
        prop_assert_eq!(q.parse(&q.render(&x)).unwrap(), x.clone());
        if !q.is_zero(&x) {
            prop_assert!(q.is_one(&q.mul(&x, &q.inv(&x))));
        }
    }

    #[test]
    fn hom_from_projectives_counts_vertex_spaces(m in module()) {
        for i in 0..m.dims.len() {
            prop_assert_eq!(hom_dim(&FdModule::projective(&m.algebra, i), &m), m.dims[i]);
        }
        let ends = hom_space(&m, &m);
        prop_assert!(ends.iter().all(|f| f.is_valid()));
        prop_assert!(!m.is_zero() || ends.is_empty());
    }

    #[test]
    fn torsion_radical_properties(m in module()) {
        let a = m.algebra.clone();
        let n = a.n_vertices();
        for mask in 0..1usize << n {
            let e: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let tp = TorsionPair::ttf_from_idempotent(&a, &e).unwrap();
            let (tm, _) = tp.t_module(&m);
            let (fm, _) = tp.free_quotient(&m);
            prop_assert_eq!(tp.t_sub(&tm).dim(), tm.dim());
            prop_assert!(tp.t_sub(&fm).is_zero());
            prop_assert_eq!(tm.dim() + fm.dim(), m.dim());
            prop_assert_eq!(hom_dim(&tm, &fm), 0);
        }
    }

    #[test]
    fn ext_is_additive_and_shifts((m, n) in module_pair()) {
        let sum = FdModule::direct_sum(&[&m, &n]).unwrap();
        prop_assert_eq!(ext_dim(1, &sum, &n).unwrap(), ext_dim(1, &m, &n).unwrap() + ext_dim(1, &n, &n).unwrap());
        prop_assert_eq!(ext_dim(1, &m, &sum).unwrap(), ext_dim(1, &m, &m).unwrap() + ext_dim(1, &m, &n).unwrap());
        // The algebras here are hereditary, so Ext^2 vanishes and syzygies are projective.
        prop_assert_eq!(ext_dim(2, &m, &n).unwrap(), 0);
        prop_assert!(syzygy(&m, 1).unwrap().is_projective().unwrap());
    }

    #[test]
    fn presentations_are_exact(m in module()) {
        let pres = min_presentation(&m).unwrap();
        let (coker, _) = pres.d.cokernel();
        prop_assert_eq!(coker.dims, m.dims.clone());
        prop_assert_eq!(trace(&m, &m).dim(), m.dim());
    }

    #[test]
    fn tensor_with_regular_is_identity(m in module()) {
        let op = Arc::new(m.algebra.opposite());
        let t = tensor(&FdModule::regular(&op), &m).unwrap();
        prop_assert_eq!(t.dim, m.dim());
        let s_dim = FdModule::simple(&op, 0);
        let top = m.top_multiplicities().unwrap();
        prop_assert_eq!(tensor(&s_dim, &m).unwrap().dim, top[0]);
    }
}
