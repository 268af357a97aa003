//! Invariants of constructed progenerators of hearts.

use std::sync::Arc;

use heartforge_core::algebra::{build_algebra, presentation, Algebra};
use heartforge_core::examples::{kronecker, linear, stacked_kronecker};
use heartforge_core::heart::{
    check_standard_conditions, hom_in_heart, hom_to_shift1, hom_to_shift2, ttf_progenerator, StandardComplex,
};
use heartforge_core::torsion::{corpus, CorpusConfig, TorsionPair};
use heartforge_core::{FdModule, Field, Fp, Submodule};

fn algebras() -> Vec<Arc<Algebra<Fp>>> {
    let k = Fp::new(101).unwrap();
    let zero_rel =
        presentation(k.spec(), &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[&[("1", &["a", "b"])]]);
    vec![
        linear(&k, 2).unwrap(),
        linear(&k, 3).unwrap(),
        kronecker(&k).unwrap(),
        stacked_kronecker(&k).unwrap(),
        build_algebra(&k, &zero_rel, None).unwrap(),
    ]
}

fn idempotent_pairs(a: &Arc<Algebra<Fp>>) -> Vec<TorsionPair<Fp>> {
    let n = a.n_vertices();
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .map(|e| TorsionPair::ttf_from_idempotent(a, &e).unwrap())
        .collect()
}

#[test]
fn ttf_progenerators_satisfy_all_standard_conditions() {
    for a in algebras() {
        for tp in idempotent_pairs(&a) {
            let g = ttf_progenerator(&tp).unwrap();
            let report = check_standard_conditions(&g, &tp, CorpusConfig::default()).unwrap();
            assert!(report.progenerator, "e = {:?}: {:?}", tp.idempotent(), report.conditions);
            assert!(g.in_heart(&tp));
        }
    }
}

#[test]
fn obstruction_spaces_vanish_on_the_corpus() {
    for a in algebras() {
        let mods = corpus(&a, CorpusConfig::default());
        for tp in idempotent_pairs(&a) {
            let g = ttf_progenerator(&tp).unwrap();
            for m in &mods {
                let (t, _) = tp.t_module(m);
                let (f, _) = tp.free_quotient(m);
                assert_eq!(hom_to_shift1(&g, &t), 0, "Hom(G, T[1]) for T = {:?}", t.dims);
                assert_eq!(hom_to_shift2(&g, &f), 0, "Hom(G, F[2]) for F = {:?}", f.dims);
            }
        }
    }
}

/// `X ⊕ F ↪ Q ⊕ F → P` with `F` mapped to zero: the same object of the derived category.
fn pad_with_free(g: &StandardComplex<Fp>, free: &FdModule<Fp>) -> StandardComplex<Fp> {
    let q2 = FdModule::direct_sum(&[&g.q, free]).unwrap();
    let (incl, proj) = FdModule::sum_maps(&[&g.q, free], &q2);
    let d = proj[0].then(&g.d);
    let x = Submodule::full(free).image(&incl[1]).sum(&g.incl.image_sub().image(&incl[0]));
    StandardComplex::with_x(d, &x).unwrap()
}

#[test]
fn hom_in_heart_ignores_free_padding() {
    for a in algebras() {
        let free = FdModule::projective(&a, 0);
        for tp in idempotent_pairs(&a) {
            let g = ttf_progenerator(&tp).unwrap();
            let padded = pad_with_free(&g, &free);
            let base = hom_in_heart(&g, &g).dim();
            assert_eq!(hom_in_heart(&padded, &g).dim(), base);
            assert_eq!(hom_in_heart(&g, &padded).dim(), base);
            assert_eq!(hom_in_heart(&padded, &padded).dim(), base);
        }
    }
}
