//! Acceptance suite: one PASS/FAIL line per criterion, written straight to stdout so it survives output capture.

use std::collections::HashMap;

use rand::Rng;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use heartforge_core::algebra::{presentation, Algebra, GabrielQuiver};
use heartforge_core::decomp::seeded_rng;
use heartforge_core::examples::{kronecker, linear, stacked_kronecker};
use heartforge_core::heart::{
    check_conditions_135, end_ring, in_sigma, stalk_progenerator_check, ttf_progenerator, ttf_report, EndRingSummary,
    StandardComplex,
};
use heartforge_core::homological::{ext_dim, syzygy, PdBound};
use heartforge_core::modrep::{hom_dim, hom_space};
use heartforge_core::torsion::{corpus, regular_mod_ideal, CorpusConfig, TorsionPair};
use heartforge_core::trivext::build_from_quiver;
use heartforge_core::{FdModule, Field, Fp, Mat, ModuleMap, Rationals, Status, Submodule};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, t: Duration, limit: u64) -> Result<(), String> {
    ensure(t.as_secs_f64() < limit as f64, || format!("{label} took {:.2} s, limit {limit} s", t.as_secs_f64()))
}

fn gf() -> Fp {
    Fp::new(101).unwrap()
}

fn cfg() -> CorpusConfig {
    CorpusConfig::default()
}

fn ttf_pair<K: Field>(r: &Arc<Algebra<K>>, e: &[usize]) -> Result<TorsionPair<K>, String> {
    TorsionPair::ttf_from_idempotent(r, e).map_err(err)
}

// Criterion 1: the left-split example on the linear quiver.
fn linear_case<K: Field>(k: &K, n: usize) -> Outcome {
    let start = Instant::now();
    let r = linear(k, n).map_err(err)?;
    let (rep, _) = ttf_report(&ttf_pair(&r, &[n - 1])?, cfg()).map_err(err)?;
    let s = &rep.end_ring;
    let arrows: Vec<(usize, usize, usize)> = (1..n - 1).map(|i| (i, i + 1, 1)).collect();
    let want_dim = 1 + n * (n - 1) / 2;
    ensure(s.dim == want_dim, || format!("n={n}: dim {} ≠ {want_dim}", s.dim))?;
    ensure(s.simples == n, || format!("n={n}: {} simples", s.simples))?;
    ensure(s.quiver.isomorphic(&GabrielQuiver::from_arrows(n, &arrows)), || {
        format!("n={n}: quiver {:?}", s.quiver.arrows)
    })?;
    ensure(s.center_dim != rep.algebra_center_dim, || format!("n={n}: centers agree"))?;
    within(&format!("n={n}"), start.elapsed(), 5)?;
    Ok(format!("n={n} {}: dim {}, center {} vs {}", k.spec(), s.dim, s.center_dim, rep.algebra_center_dim))
}

fn criterion1() -> Outcome {
    let mut parts = Vec::new();
    for n in [3, 4] {
        parts.push(linear_case(&gf(), n)?);
        parts.push(linear_case(&Rationals, n)?);
    }
    Ok(parts.join("; "))
}

// Criterion 2: stalk criterion for e = e₁ on the stacked Kronecker algebra.
fn criterion2() -> Outcome {
    let start = Instant::now();
    let r = stacked_kronecker(&gf()).map_err(err)?;
    let st = stalk_progenerator_check(&ttf_pair(&r, &[0])?, 0).map_err(err)?;
    ensure(st.verdict.status == Status::Proven, || format!("stalk criterion {:?}", st.verdict))?;
    let s = EndRingSummary::of(st.ring.as_ref().ok_or("no triangular ring")?).map_err(err)?;
    let gamma = GabrielQuiver::from_arrows(3, &[(1, 2, 2), (2, 0, 1)]);
    ensure((s.dim, s.simples) == (8, 3), || format!("dim {}, simples {}", s.dim, s.simples))?;
    ensure(s.quiver.isomorphic(&gamma), || format!("quiver {:?}", s.quiver.arrows))?;
    within("e1", start.elapsed(), 5)?;
    Ok(format!("Proven; dim 8, 3 simples, arrows 2→3 ×2, 3→1 ×1 ({:.2} s)", start.elapsed().as_secs_f64()))
}

// Criterion 3: e = e₂. The computed heart is K × Kronecker; the semisimple expectation is not attainable.
fn criterion3() -> Outcome {
    let k = gf();
    let r = stacked_kronecker(&k).map_err(err)?;
    let tp = ttf_pair(&r, &[1])?;
    let (rep, s_alg) = ttf_report(&tp, cfg()).map_err(err)?;
    let s = &rep.end_ring;
    // Pin the computed answer and its certificate so that the failure is reproducible.
    assert_eq!((s.dim, s.simples, s.radical_dim), (5, 3, 2));
    assert!(s.quiver.isomorphic(&GabrielQuiver::from_arrows(3, &[(1, 2, 2)])));
    assert!(rep.verdicts.standard_conditions.progenerator);
    let via_ttf = end_ring(&ttf_progenerator(&tp).map_err(err)?, 0).map_err(err)?;
    assert!(via_ttf.algebra.invariants().unwrap().matches(&s_alg.invariants().unwrap()));
    let ext = ext_dim(1, &FdModule::simple(&r, 2), &FdModule::simple(&r, 1)).map_err(err)?;
    assert_eq!(ext, 2);
    if (s.dim, s.radical_dim, s.simples) == (3, 0, 3) {
        return Ok("dim 3, radical 0".into());
    }
    Err(format!(
        "expected dim 3, radical 0, 3 simples; computed dim {}, radical {}, {} simples (K × Kronecker). \
         Here a/t(a) ≅ S2^3, not S1^3, and dim Ext^1(S3, S2) = {ext}, so S3[0] and S2[1] are non-isomorphic \
         indecomposable projectives of the heart with a nonzero morphism between them; two independent progenerators \
         give the same ring and satisfy all five standard conditions",
        s.dim, s.radical_dim, s.simples
    ))
}

// Criterion 4: e = e₁ + e₂. The stalk criterion fails, the TTF progenerator complex still works.
fn criterion4() -> Outcome {
    let start = Instant::now();
    let r = stacked_kronecker(&gf()).map_err(err)?;
    let tp = ttf_pair(&r, &[0, 1])?;
    let st = stalk_progenerator_check(&tp, 0).map_err(err)?;
    ensure(st.verdict.status == Status::Refuted, || format!("stalk criterion {:?}", st.verdict))?;
    let w = st.verdict.witness.as_ref().ok_or("no witness")?;
    ensure(w.description.contains("Ext^2(S3, S1)"), || format!("witness {}", w.description))?;
    let (quotient, _) = regular_mod_ideal(&r, &r.idempotent_ideal(&[0, 1]));
    let e2 = ext_dim(2, &quotient, &FdModule::simple(&r, 0)).map_err(err)?;
    ensure(e2 > 0, || "Ext^2(R/a, S1) vanishes".into())?;
    let (rep, _) = ttf_report(&tp, cfg()).map_err(err)?;
    let s = &rep.end_ring;
    let want = GabrielQuiver::from_arrows(3, &[(1, 2, 3), (2, 0, 2)]);
    ensure((s.dim, s.simples) == (10, 3), || format!("dim {}, simples {}", s.dim, s.simples))?;
    ensure(s.quiver.isomorphic(&want), || format!("quiver {:?}", s.quiver.arrows))?;
    ensure(rep.verdicts.standard_conditions.progenerator, || "standard conditions not all proven".into())?;
    within("e1+e2", start.elapsed(), 10)?;
    Ok(format!("stalk Refuted (Ext^2(R/a, S1) = {e2}); dim 10, arrows 2→3 ×3, 3→1 ×2"))
}

fn kronecker_pipeline<K: Field>(k: &K) -> Result<heartforge_core::trivext::TrivExtReport<K>, String> {
    let p = presentation(k.spec(), &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]);
    build_from_quiver(k, &p, 0, true, cfg()).map_err(err)
}

// Criterion 5: trivial-extension pipeline on the Kronecker quiver.
fn criterion5() -> Outcome {
    let start = Instant::now();
    let rep = kronecker_pipeline(&gf())?;
    let elapsed = start.elapsed();
    ensure(rep.r.dim() == 8, || format!("dim R = {}", rep.r.dim()))?;
    ensure(rep.all_facts_proven(), || format!("facts {:?}", rep.facts))?;
    ensure(rep.tilting.status == Status::Refuted, || format!("tilting {:?}", rep.tilting))?;
    ensure(rep.heart_progen.progenerator, || format!("conditions {:?}", rep.heart_progen))?;
    within("pipeline", elapsed, 10)?;
    // Syzygy descent: Ω¹V = S1^5 and Ω²V ≅ V^5, so the resolution is periodic.
    let dims: Vec<Vec<usize>> = (0..4).map(|i| syzygy(&rep.v_over_r, i).unwrap().dims).collect();
    assert_eq!(dims, vec![vec![1, 3], vec![5, 0], vec![5, 15], vec![25, 0]]);
    assert_eq!(rep.pd_v, PdBound::GreaterThan(3));
    assert!(rep.pd_infinite);
    if rep.pd_v == PdBound::Exact(2) {
        return Ok("all clauses hold".into());
    }
    Err(format!(
        "dim R = 8, pipeline facts Proven, 1-tilting Refuted and V[0] satisfies all standard conditions ({:.2} s); \
         but pd_R(V) = 2 is not attainable: syzygy dimension vectors {:?} give Ω²V ≅ V^5, so pd_R(V) = ∞",
        elapsed.as_secs_f64(),
        dims
    ))
}

struct Counter {
    checks: usize,
    failures: Vec<String>,
}

impl Counter {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn property_algebras(k: &Fp) -> Vec<(&'static str, Arc<Algebra<Fp>>)> {
    let rad2 = presentation(
        k.spec(),
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
        &[&[("1", &["a", "b"])]],
    );
    vec![
        ("A2", linear(k, 2).unwrap()),
        ("A3", linear(k, 3).unwrap()),
        ("A4", linear(k, 4).unwrap()),
        ("Kronecker", kronecker(k).unwrap()),
        ("stacked Kronecker", stacked_kronecker(k).unwrap()),
        ("triangle with zero relation", heartforge_core::algebra::build_algebra(k, &rad2, None).unwrap()),
    ]
}

fn torsion_pairs(a: &Arc<Algebra<Fp>>) -> Vec<TorsionPair<Fp>> {
    let n = a.n_vertices();
    let mut out: Vec<TorsionPair<Fp>> = (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .map(|e| TorsionPair::ttf_from_idempotent(a, &e).unwrap())
        .collect();
    // Gen(D(A)) is a torsion class whenever D(A) is tilting, which holds for hereditary algebras.
    if a.relations.is_empty() {
        let op = Arc::new(a.opposite());
        out.push(TorsionPair::generated_by(&FdModule::regular(&op).dual(a)));
    }
    out
}

/// Seeded random modules: random representations when there are no relations, otherwise quotients of
/// `P_i ⊕ P_j` by a submodule generated by one random vector.
fn random_modules(a: &Arc<Algebra<Fp>>, count: usize, seed: u64) -> Vec<FdModule<Fp>> {
    let k = &a.field;
    let n = a.n_vertices();
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = if a.relations.is_empty() {
            let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let action = a
                .gens
                .iter()
                .map(|&b| {
                    let (r, c) = (dims[a.tgt[b]], dims[a.src[b]]);
                    Mat::from_rows(k, c, (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..k.p())).collect()).collect())
                })
                .collect();
            FdModule::new(a.clone(), dims, action).unwrap()
        } else {
            let p = direct_sum(
                &FdModule::projective(a, rng.gen_range(0..n)),
                &FdModule::projective(a, rng.gen_range(0..n)),
            );
            let v = rng.gen_range(0..n);
            let vec: Vec<u64> = (0..p.dims[v]).map(|_| rng.gen_range(0..k.p())).collect();
            let parts = (0..n)
                .map(|w| {
                    let rows = if w == v { vec![vec.clone()] } else { Vec::new() };
                    heartforge_core::Subspace::from_rows(k, p.dims[w], rows)
                })
                .collect();
            let u = p.generated(parts);
            p.quotient(&u).0
        };
        if !m.is_zero() {
            out.push(m);
        }
    }
    out
}

fn direct_sum(m: &FdModule<Fp>, n: &FdModule<Fp>) -> FdModule<Fp> {
    FdModule::direct_sum(&[m, n]).unwrap()
}

// Criterion 6: seeded property suites over a deterministic corpus.
fn criterion6() -> Outcome {
    let k = gf();
    let mut c = Counter { checks: 0, failures: Vec::new() };
    let mut modules = 0;
    let algebras = property_algebras(&k);
    for (name, a) in &algebras {
        let mut mods = corpus(a, CorpusConfig { depth: 2, seed: 0 });
        mods.extend(random_modules(a, 30, 7));
        modules += mods.len();
        for m in &mods {
            for i in 0..a.n_vertices() {
                let h = hom_dim(&FdModule::projective(a, i), m);
                c.check(h == m.dims[i], || {
                    format!("{name}: dim Hom(Re{i}, M) = {h} ≠ {} for M {:?}", m.dims[i], m.dims)
                });
            }
        }
        for tp in torsion_pairs(a) {
            let tms: Vec<FdModule<Fp>> = mods.iter().map(|m| tp.t_module(m).0).collect();
            let frees: Vec<FdModule<Fp>> = mods.iter().map(|m| tp.free_quotient(m).0).collect();
            for (m, (tm, fm)) in mods.iter().zip(tms.iter().zip(&frees)) {
                c.check(tp.t_sub(tm).dim() == tm.dim(), || format!("{name}: t(t(M)) ≠ t(M) for {:?}", m.dims));
                c.check(tp.t_sub(fm).is_zero(), || format!("{name}: t(M/t(M)) ≠ 0 for {:?}", m.dims));
            }
            for tm in tms.iter().filter(|t| !t.is_zero()).step_by(2) {
                for fm in frees.iter().filter(|f| !f.is_zero()).step_by(2) {
                    c.check(hom_dim(tm, fm) == 0, || {
                        format!("{name}: Hom(t(M), N/t(N)) ≠ 0 for {:?}, {:?}", tm.dims, fm.dims)
                    });
                }
            }
        }
        // Ext checks on a deterministic sample of pairs and triples.
        let len = mods.len();
        for s in 0..len.min(40) {
            let (m, n, l) = (&mods[s], &mods[(3 * s + 1) % len], &mods[(7 * s + 2) % len]);
            let e = |x: &FdModule<Fp>, y: &FdModule<Fp>, d: usize| ext_dim(d, x, y).unwrap();
            c.check(e(&direct_sum(m, n), l, 1) == e(m, l, 1) + e(n, l, 1), || {
                format!("{name}: Ext^1 not additive in the first argument")
            });
            c.check(e(l, &direct_sum(m, n), 1) == e(l, m, 1) + e(l, n, 1), || {
                format!("{name}: Ext^1 not additive in the second argument")
            });
            let omega = syzygy(m, 1).unwrap();
            c.check(e(m, n, 2) == e(&omega, n, 1), || {
                format!("{name}: Ext^2(M, N) ≠ Ext^1(ΩM, N) for {:?}, {:?}", m.dims, n.dims)
            });
            // 0 → Hom(M, N) → Hom(P, N) → Hom(ΩM, N) → Ext^1(M, N) → 0 with P the projective cover.
            let (p, _) = m.projective_cover().unwrap();
            let via_homs = hom_dim(&omega, n) + hom_dim(m, n) - hom_dim(&p, n);
            c.check(e(m, n, 1) == via_homs, || {
                format!("{name}: Ext^1 ≠ long exact sequence count for {:?}, {:?}", m.dims, n.dims)
            });
        }
    }
    ensure(modules >= 200 && algebras.len() >= 5, || {
        format!("only {modules} modules over {} algebras", algebras.len())
    })?;
    ensure(c.failures.is_empty(), || c.failures.join("; "))?;
    Ok(format!("{} checks over {modules} corpus modules on {} algebras, 0 failures", c.checks, algebras.len()))
}

/// Number of equivalence classes of extensions `0 → S_j → E → S_i → 0`, by enumerating every module structure on
/// `S_j ⊕ S_i` with `S_j` a submodule and identifying structures related by `[[1, 0], [φ, 1]]`.
fn extension_classes(a: &Arc<Algebra<Fp>>, i: usize, j: usize) -> usize {
    let k = &a.field;
    let p = k.p();
    let n = a.n_vertices();
    let sj: Vec<usize> = (0..n).map(|v| usize::from(v == j)).collect();
    let si: Vec<usize> = (0..n).map(|v| usize::from(v == i)).collect();
    let dims: Vec<usize> = (0..n).map(|v| sj[v] + si[v]).collect();
    // Each generator may only send the S_i-part at its target into the S_j-part at its source.
    let slots: Vec<(usize, usize, usize)> = a
        .gens
        .iter()
        .enumerate()
        .filter_map(|(g, &b)| {
            let (s, t) = (a.src[b], a.tgt[b]);
            (si[t] == 1 && sj[s] == 1).then_some((g, sj[t], 0))
        })
        .collect();
    let build = |vals: &[u64]| -> Option<Vec<Mat<Fp>>> {
        let mut action: Vec<Mat<Fp>> = a.gens.iter().map(|&b| Mat::zeros(k, dims[a.tgt[b]], dims[a.src[b]])).collect();
        for (&(g, r, c), &x) in slots.iter().zip(vals) {
            action[g].set(r, c, x);
        }
        FdModule::new(a.clone(), dims.clone(), action.clone()).ok().map(|_| action)
    };
    let all = |len: usize| -> Vec<Vec<u64>> {
        (0..p.pow(len as u32))
            .map(|mut x| {
                (0..len)
                    .map(|_| {
                        let d = x % p;
                        x /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    };
    let structures: Vec<Vec<Mat<Fp>>> = all(slots.len()).iter().filter_map(|v| build(v)).collect();
    // φ_v : (S_i)_v → (S_j)_v is nonzero only at a vertex where both are nonzero.
    let phi_vertices: Vec<usize> = (0..n).filter(|&v| si[v] == 1 && sj[v] == 1).collect();
    let transforms: Vec<Vec<Mat<Fp>>> = all(phi_vertices.len())
        .iter()
        .map(|vals| {
            (0..n)
                .map(|v| {
                    let mut t = Mat::identity(k, dims[v]);
                    if let Some(pos) = phi_vertices.iter().position(|&w| w == v) {
                        t.set(1, 0, vals[pos]);
                    }
                    t
                })
                .collect()
        })
        .collect();
    let equivalent = |x: &[Mat<Fp>], y: &[Mat<Fp>]| {
        transforms
            .iter()
            .any(|t| a.gens.iter().enumerate().all(|(g, &b)| x[g].mul(&t[a.src[b]]) == t[a.tgt[b]].mul(&y[g])))
    };
    let mut reps: Vec<&Vec<Mat<Fp>>> = Vec::new();
    for s in &structures {
        if !reps.iter().any(|r| equivalent(r, s)) {
            reps.push(s);
        }
    }
    reps.len()
}

fn ext_oracle() -> Result<usize, String> {
    let k = Fp::new(2).unwrap();
    let mut checked = 0;
    for a in [linear(&k, 2).unwrap(), linear(&k, 3).unwrap(), kronecker(&k).unwrap(), stacked_kronecker(&k).unwrap()] {
        for i in 0..a.n_vertices() {
            for j in 0..a.n_vertices() {
                let d = ext_dim(1, &FdModule::simple(&a, i), &FdModule::simple(&a, j)).map_err(err)?;
                let classes = extension_classes(&a, i, j);
                ensure(classes == 1 << d, || format!("Ext^1(S{}, S{}): {classes} classes, dim {d}", i + 1, j + 1))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn submodule_key(u: &Submodule<Fp>) -> Vec<Vec<Vec<u64>>> {
    u.parts.iter().map(|s| s.vectors()).collect()
}

/// Exhaustive search for `h : (Q/X)^2 → R/t(R)` with `(R/t(R))/h(H^-1 ⊕ H^-1) ∈ σ[V]`.
fn condition5_search(g: &StandardComplex<Fp>, tp: &TorsionPair<Fp>) -> Option<Status> {
    let k = *g.q.field();
    let p = k.p();
    let rt = tp.regular_mod_t();
    let (qx, proj) = g.q_mod_x();
    let h_in = g.d.kernel_sub().image(&proj);
    let hs = hom_space(&qx, &rt);
    if hs.len() > 4 {
        return None;
    }
    let maps: Vec<ModuleMap<Fp>> = (0..p.pow(hs.len() as u32))
        .map(|mut x| {
            let coeffs: Vec<u64> = (0..hs.len())
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect();
            ModuleMap::combination(&qx, &rt, &hs, &coeffs)
        })
        .collect();
    let images: Vec<Submodule<Fp>> = maps.iter().map(|f| h_in.image(f)).collect();
    let v = g.h0();
    let mut memo: HashMap<Vec<Vec<Vec<u64>>>, Option<bool>> = HashMap::new();
    let (mut any_true, mut any_unknown) = (false, false);
    for a in &images {
        for b in &images {
            let u = a.sum(b);
            let verdict = *memo.entry(submodule_key(&u)).or_insert_with(|| in_sigma(&v, &rt.quotient(&u).0));
            match verdict {
                Some(true) => any_true = true,
                None => any_unknown = true,
                Some(false) => {}
            }
        }
    }
    Some(if any_true {
        Status::Proven
    } else if any_unknown {
        Status::Unknown
    } else {
        Status::Refuted
    })
}

fn condition5_oracle() -> Result<(usize, usize), String> {
    let k = Fp::new(3).unwrap();
    let (mut compared, mut refuted) = (0, 0);
    for a in [linear(&k, 2).unwrap(), linear(&k, 3).unwrap(), kronecker(&k).unwrap(), stacked_kronecker(&k).unwrap()] {
        let n = a.n_vertices();
        for mask in 0..1usize << n {
            let e: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let tp = ttf_pair(&a, &e)?;
            let base = ttf_progenerator(&tp).map_err(err)?;
            let mut candidates = vec![base.clone()];
            // Same differential with the smallest and the largest admissible X.
            candidates.push(StandardComplex::with_x(base.d.clone(), &Submodule::zero(&base.q)).map_err(err)?);
            candidates.push(StandardComplex::with_x(base.d.clone(), &base.d.kernel_sub()).map_err(err)?);
            for i in 0..n {
                candidates.push(StandardComplex::stalk0(&FdModule::simple(&a, i)).map_err(err)?);
            }
            for g in &candidates {
                let Some(oracle) = condition5_search(g, &tp) else { continue };
                let engine = check_conditions_135(g, &tp, cfg()).map_err(err)?[2].status;
                ensure(engine == oracle, || {
                    format!("e = {e:?}, complex {:?}: engine {engine}, search {oracle}", g.dims())
                })?;
                compared += 1;
                refuted += usize::from(oracle == Status::Refuted);
            }
        }
    }
    Ok((compared, refuted))
}

/// `End_R(P)^op` from module maps, compared with `end_ring(P[0])` on its own basis.
fn end_ring_oracle() -> Result<usize, String> {
    let k = gf();
    let mut checked = 0;
    for a in [linear(&k, 3).unwrap(), kronecker(&k).unwrap(), stacked_kronecker(&k).unwrap()] {
        let n = a.n_vertices();
        let mut ps = vec![FdModule::regular(&a)];
        for i in 0..n {
            ps.push(FdModule::projective(&a, i));
            for j in i + 1..n {
                ps.push(direct_sum(&FdModule::projective(&a, i), &FdModule::projective(&a, j)));
            }
        }
        for p in &ps {
            let s = end_ring(&StandardComplex::stalk0(p).map_err(err)?, 0).map_err(err)?;
            let objs: Vec<&FdModule<Fp>> = s.objects.iter().map(|o| &o.p).collect();
            ensure(s.multiplicities.iter().all(|&m| m == 1), || "multiplicity-free input".into())?;
            let total: Vec<usize> = (0..n).map(|v| objs.iter().map(|o| o.dims[v]).sum()).collect();
            ensure(total == p.dims, || format!("summands {total:?} do not add up to {:?}", p.dims))?;
            let alg = &s.algebra;
            let maps: Vec<&ModuleMap<Fp>> = s.basis.iter().map(|c| &c.p).collect();
            // The basis elements in each Peirce block form a basis of the corresponding Hom space.
            for x in 0..objs.len() {
                for y in 0..objs.len() {
                    let block: Vec<usize> = (0..alg.dim()).filter(|&b| alg.src[b] == x && alg.tgt[b] == y).collect();
                    let hom = hom_space(objs[x], objs[y]).len();
                    let flat: Vec<Vec<u64>> = block.iter().map(|&b| maps[b].flatten()).collect();
                    let width = flat.first().map_or(0, Vec::len);
                    let r = if flat.is_empty() { 0 } else { Mat::from_rows(&k, width, flat).rank() };
                    ensure(block.len() == hom && r == hom, || {
                        format!("block ({x}, {y}): {} elements, rank {r}, Hom dim {hom}", block.len())
                    })?;
                }
            }
            // x·y in S equals "x then y" as module maps.
            for x in 0..alg.dim() {
                for y in 0..alg.dim() {
                    let prod = alg.mul(&alg.unit_vec(x), &alg.unit_vec(y));
                    if alg.tgt[x] != alg.src[y] {
                        ensure(prod.iter().all(|c| *c == 0), || {
                            format!("product of non-composable {x}, {y} is nonzero")
                        })?;
                        continue;
                    }
                    let (from, to) = (objs[alg.src[x]], objs[alg.tgt[y]]);
                    let want = maps[x].then(maps[y]).flatten();
                    let mut got = ModuleMap::zero(from, to);
                    for (b, c) in prod.iter().enumerate() {
                        if *c != 0 {
                            got = got.add(&maps[b].scale(c));
                        }
                    }
                    ensure(got.flatten() == want, || format!("structure constant mismatch at ({x}, {y})"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

// Criterion 7: oracle equivalences on tiny instances.
fn criterion7() -> Outcome {
    let ext = ext_oracle()?;
    let (c5, c5_refuted) = condition5_oracle()?;
    ensure(c5 > 0, || "no condition-5 instance was small enough".into())?;
    let constants = end_ring_oracle()?;
    Ok(format!(
        "Ext^1 vs GF(2) enumeration on {ext} simple pairs; condition 5 vs exhaustive search on {c5} complexes \
         ({c5_refuted} refuted); {constants} structure constants of End_R(P)^op"
    ))
}

/// Integer invariants of every golden example over one field.
fn golden_invariants<K: Field>(k: &K) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let summary = |s: &EndRingSummary| serde_json::to_string(s).unwrap();
    for n in [3, 4] {
        let (rep, _) = ttf_report(&ttf_pair(&linear(k, n).map_err(err)?, &[n - 1])?, cfg()).map_err(err)?;
        out.push(format!("8.1 n={n}: {} center {}", summary(&rep.end_ring), rep.algebra_center_dim));
    }
    let r = stacked_kronecker(k).map_err(err)?;
    for e in [vec![0], vec![1], vec![0, 1]] {
        let tp = ttf_pair(&r, &e)?;
        let st = stalk_progenerator_check(&tp, 0).map_err(err)?.summary().map_err(err)?;
        let (rep, _) = ttf_report(&tp, cfg()).map_err(err)?;
        let conditions: Vec<Status> = rep.verdicts.standard_conditions.conditions.iter().map(|v| v.status).collect();
        out.push(format!(
            "8.2 e={e:?}: stalk {} {} ttf {} conditions {conditions:?}",
            st.verdict.status,
            st.end_ring.as_ref().map(summary).unwrap_or_default(),
            summary(&rep.end_ring)
        ));
    }
    let t = kronecker_pipeline(k)?;
    let facts: Vec<Status> = t.facts.iter().map(|v| v.status).collect();
    let conditions: Vec<Status> = t.heart_progen.conditions.iter().map(|v| v.status).collect();
    out.push(format!(
        "8.3: dim {} v {:?} facts {facts:?} pd {} infinite {} tilting {} conditions {conditions:?} presentation {:?}",
        t.r.dim(),
        t.v_over_r.dims,
        t.pd_v,
        t.pd_infinite,
        t.tilting.status,
        t.presentation_check.as_ref().map(|p| (p.presentation_dim, p.trivial_extension_dim, p.matches))
    ));
    Ok(out)
}

// Criterion 8: GF(101) and Q agree on every golden example.
fn criterion8() -> Outcome {
    let fp = golden_invariants(&gf())?;
    let q = golden_invariants(&Rationals)?;
    for (a, b) in fp.iter().zip(&q) {
        ensure(a == b, || format!("GF(101): {a}\nQ: {b}"))?;
    }
    ensure(fp.len() == q.len(), || "different number of examples".into())?;
    Ok(format!("{} golden invariant sets identical over GF(101) and Q", fp.len()))
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        (1, "left-split TTF decomposition on the linear quiver", criterion1),
        (2, "sum of stalk complexes, e = e1", criterion2),
        (3, "semisimple heart for e = e2", criterion3),
        (4, "stalk obstruction and TTF progenerator complex, e = e1 + e2", criterion4),
        (5, "trivial-extension non-tilting pair on the Kronecker quiver", criterion5),
        (6, "property suites on the sample corpus", criterion6),
        (7, "oracle equivalences on tiny instances", criterion7),
        (8, "cross-field determinism of the golden examples", criterion8),
    ];
    // Criteria whose mandated values contradict the mathematics; they are expected to report FAIL.
    let unattainable = [3, 5];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => emit(&format!("criterion {n} PASS  {title} [{secs:.2} s]: {detail}")),
            Err(why) => emit(&format!("criterion {n} FAIL  {title} [{secs:.2} s]: {why}")),
        }
        if result.is_ok() == unattainable.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with an unexpected outcome: {unexpected:?}");
}
