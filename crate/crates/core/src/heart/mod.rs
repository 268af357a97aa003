//! Two-term complexes in the heart of a torsion pair, their endomorphism rings and progenerators.

pub mod complex;
pub mod conditions;
pub mod endring;
pub mod progenerator;

pub use complex::*;
pub use conditions::*;
pub use endring::*;
pub use progenerator::*;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{linear, stacked_kronecker};
    use crate::field::Fp;
    use crate::modrep::{hom_space, FdModule};

    #[test]
    fn end_ring_of_regular_stalk() {
        let k = Fp::new(101).unwrap();
        for r in [linear(&k, 3).unwrap(), stacked_kronecker(&k).unwrap()] {
            let g = StandardComplex::stalk0(&FdModule::regular(&r)).unwrap();
            let s = end_ring(&g, 0).unwrap();
            assert_eq!(s.algebra.dim(), r.dim());
            assert_eq!(s.algebra.cartan(), r.cartan());
            assert!(s.algebra.gabriel_quiver().unwrap().isomorphic(&r.gabriel_quiver().unwrap()));
        }
    }

    #[test]
    fn stalk_homs_match_module_homs() {
        let k = Fp::new(101).unwrap();
        let r = stacked_kronecker(&k).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (pi, pj) = (FdModule::projective(&r, i), FdModule::projective(&r, j));
                let h = hom_in_heart(&StandardComplex::stalk0(&pi).unwrap(), &StandardComplex::stalk0(&pj).unwrap());
                assert_eq!(h.dim(), hom_space(&pi, &pj).len());
                let (si, sj) = (FdModule::simple(&r, i), FdModule::simple(&r, j));
                let h1 = hom_in_heart(&StandardComplex::stalk1(&si).unwrap(), &StandardComplex::stalk1(&sj).unwrap());
                assert_eq!(h1.dim(), usize::from(i == j));
            }
        }
    }

    use crate::algebra::GabrielQuiver;
    use crate::examples::kronecker;
    use crate::torsion::{CorpusConfig, TorsionPair};

    fn report(r: &std::sync::Arc<crate::algebra::Algebra<Fp>>, e: &[usize]) -> TtfReport {
        let tp = TorsionPair::ttf_from_idempotent(r, e).unwrap();
        ttf_report(&tp, CorpusConfig::default()).unwrap().0
    }

    #[test]
    fn linear_ttf_reports() {
        let k = Fp::new(101).unwrap();
        for (n, dim) in [(3, 4), (4, 7)] {
            let rep = report(&linear(&k, n).unwrap(), &[n - 1]);
            assert_eq!(rep.end_ring.dim, dim);
            assert_eq!(rep.end_ring.simples, n);
            assert!(rep.verdicts.standard_conditions.progenerator, "{:?}", rep.verdicts.standard_conditions);
            assert_eq!(rep.theorem, LEFT_SPLIT);
            assert!(rep.cross_check.unwrap().matches);
            let arrows: Vec<(usize, usize, usize)> = (1..n - 1).map(|i| (i, i + 1, 1)).collect();
            assert!(rep.end_ring.quiver.isomorphic(&GabrielQuiver::from_arrows(n, &arrows)));
            assert_ne!(rep.end_ring.center_dim, rep.algebra_center_dim);
        }
    }

    #[test]
    fn stacked_kronecker_reports() {
        let k = Fp::new(101).unwrap();
        let r = stacked_kronecker(&k).unwrap();
        let tp = TorsionPair::ttf_from_idempotent(&r, &[0]).unwrap();
        let st = stalk_progenerator_check(&tp, 0).unwrap();
        assert!(st.verdict.is_proven(), "{:?}", st.verdict);
        assert_eq!(st.cross_check, Some(true));
        let s = st.ring.unwrap();
        assert_eq!(s.dim(), 8);
        assert!(s.gabriel_quiver().unwrap().isomorphic(&GabrielQuiver::from_arrows(3, &[(1, 2, 2), (2, 0, 1)])));

        // Here a/t(a) = S2^3 and Ext^1(S3, S2) is 2-dimensional, so the heart is K × Kronecker, not semisimple.
        let tp_b = TorsionPair::ttf_from_idempotent(&r, &[1]).unwrap();
        let (b, b_algebra) = ttf_report(&tp_b, CorpusConfig::default()).unwrap();
        assert_eq!(b.theorem, STALK_SUM);
        assert_eq!((b.end_ring.dim, b.end_ring.simples, b.end_ring.radical_dim), (5, 3, 2));
        let via_ttf = end_ring(&ttf_progenerator(&tp_b).unwrap(), 0).unwrap();
        assert!(via_ttf.algebra.invariants().unwrap().matches(&b_algebra.invariants().unwrap()));
        assert!(b.verdicts.standard_conditions.progenerator, "{:?}", b.verdicts.standard_conditions);

        let tp = TorsionPair::ttf_from_idempotent(&r, &[0, 1]).unwrap();
        let st = stalk_progenerator_check(&tp, 0).unwrap();
        assert!(st.verdict.is_refuted());
        assert!(st.verdict.witness.unwrap().description.contains("Ext^2(S3, S1)"));
        let c = report(&r, &[0, 1]);
        assert_eq!(c.end_ring.dim, 10);
        assert!(c.verdicts.standard_conditions.progenerator, "{:?}", c.verdicts.standard_conditions);
        assert!(c.end_ring.quiver.isomorphic(&GabrielQuiver::from_arrows(3, &[(1, 2, 3), (2, 0, 2)])));
    }

    #[test]
    fn degenerate_ttf() {
        let k = Fp::new(101).unwrap();
        let r = kronecker(&k).unwrap();
        let all = report(&r, &[0, 1]);
        assert_eq!(all.end_ring.dim, 4);
        let none = report(&r, &[]);
        assert_eq!(none.end_ring.dim, 4);
        assert!(none.verdicts.standard_conditions.progenerator);
    }
}
