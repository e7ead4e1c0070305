//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal.
//! The process fails when any criterion fails, except a criterion listed in
//! `KNOWN_FAILURES` whose failure matches its documented shape exactly.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittmod::cover::{
    cover_bound_report, kv_element_with, kv_generators, reduce_to_box, theta_kernel_report,
    Certificate, KvIndex,
};
use wittmod::exact::{RatMatrix, Rational};
use wittmod::kweight::KWeightModule;
use wittmod::par::Exec;
use wittmod::series::{check_vab_annihilation, find_ann_degree, AnnFamily};
use wittmod::tensormod::{
    build_l, check_closure, check_module_axiom, convolution_dim, factor_combinations,
    hc_brute_force, hc_classify_n2, published_list_verdict, GlnSpec, HcVerdict, QSet,
    SubspaceByWeight, TensorModule, Window,
};
use wittmod::uea::{
    big_omega_identity_residue, check_basis_change, check_big_omega_identity,
    check_big_omega_recursion, check_omega_identification, check_omega_recursion,
    check_pi2_homomorphism, check_propagation_steps, check_t_centralizer, NormalOrderer, OmegaSpec,
    PropagationIndices, WeightBox, WittModule,
};
use wittmod::witt::{AWLieElem, MultiIndex, PolyA, TildeElem, WittElem, WittGen};

/// Criterion 13: the stated `n^2 (m+1) r` bound undercounts the box at `n = 2`.
const KNOWN_FAILURES: &[u32] = &[13];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a known failure: whether it failed in exactly the documented way.
    documented: bool,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        documented: false,
    }
}

fn o() -> NormalOrderer {
    NormalOrderer::default()
}

fn gens(n: usize, lo: u32, hi: u32) -> Vec<WittGen> {
    MultiIndex::all_up_to(n, hi)
        .into_iter()
        .filter(|a| a.total() >= lo)
        .flat_map(|a| (0..n).map(move |i| WittGen::new(a.clone(), i)))
        .collect()
}

// ---- 1 -------------------------------------------------------------------

fn rand_index(rng: &mut ChaCha8Rng, n: usize, d: u32) -> MultiIndex {
    let all = MultiIndex::all_up_to(n, d);
    all[rng.random_range(0..all.len())].clone()
}

fn rand_coeff(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-6..=6i64), rng.random_range(1..=3i64))
}

fn rand_field(rng: &mut ChaCha8Rng, n: usize) -> WittElem {
    let k = rng.random_range(1..=3);
    WittElem::from_terms(
        n,
        (0..k)
            .map(|_| {
                (
                    WittGen::new(rand_index(rng, n, 4), rng.random_range(0..n)),
                    rand_coeff(rng),
                )
            })
            .collect::<Vec<_>>(),
    )
}

fn rand_fn(rng: &mut ChaCha8Rng, n: usize) -> PolyA {
    let mut f = PolyA::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        f.add_term(rand_index(rng, n, 4), rand_coeff(rng));
    }
    f
}

fn rand_aw(rng: &mut ChaCha8Rng, n: usize) -> AWLieElem {
    let mut x = AWLieElem::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        let g = WittGen::new(rand_index(rng, n, 4), rng.random_range(0..n));
        x = x.plus(&AWLieElem::monomial(
            rand_index(rng, n, 4),
            g,
            rand_coeff(rng),
        ));
    }
    x
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=3 {
        for _ in 0..200 {
            total += 3;
            let (x, y, z) = (
                rand_field(&mut rng, n),
                rand_field(&mut rng, n),
                rand_field(&mut rng, n),
            );
            let b = |a: &WittElem, c: &WittElem| a.bracket(c).unwrap();
            if !b(&x, &y).plus(&b(&y, &x)).is_zero()
                || !b(&x, &b(&y, &z))
                    .plus(&b(&y, &b(&z, &x)))
                    .plus(&b(&z, &b(&x, &y)))
                    .is_zero()
            {
                bad.push(format!("witt n={n}"));
            }
            let t = |r: &mut ChaCha8Rng| {
                TildeElem::from_field(rand_field(r, n))
                    .plus(&TildeElem::from_function(rand_fn(r, n)))
            };
            let (x, y, z) = (t(&mut rng), t(&mut rng), t(&mut rng));
            let b = |a: &TildeElem, c: &TildeElem| a.bracket(c).unwrap();
            if !b(&x, &y).plus(&b(&y, &x)).is_zero()
                || !b(&x, &b(&y, &z))
                    .plus(&b(&y, &b(&z, &x)))
                    .plus(&b(&z, &b(&x, &y)))
                    .is_zero()
            {
                bad.push(format!("tilde n={n}"));
            }
            let (x, y, z) = (
                rand_aw(&mut rng, n),
                rand_aw(&mut rng, n),
                rand_aw(&mut rng, n),
            );
            let b = |a: &AWLieElem, c: &AWLieElem| a.bracket(c).unwrap();
            if !b(&x, &y).plus(&b(&y, &x)).is_zero()
                || !b(&x, &b(&y, &z))
                    .plus(&b(&y, &b(&z, &x)))
                    .plus(&b(&z, &b(&x, &y)))
                    .is_zero()
            {
                bad.push(format!("awlie n={n}"));
            }
        }
    }
    ok(
        bad.is_empty(),
        match bad.first() {
            Some(b) => format!(
                "{total} triples, {} nonzero residues, first {b:?}",
                bad.len()
            ),
            None => format!("{total} triples, 0 nonzero residues"),
        },
    )
}

// ---- 2-5 -----------------------------------------------------------------

fn criterion_2() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 1..=3 {
        for g in gens(n, 0, 5) {
            count += 1;
            bad += usize::from(!check_basis_change(&g.alpha, g.dir).pass);
        }
    }
    ok(bad == 0, format!("{count} (alpha, i), {bad} residues"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 1..=3 {
        let gs = gens(n, 1, 4);
        let gammas = MultiIndex::all_up_to(n, 3);
        let res: Vec<(usize, usize)> = Exec::Parallel.map(&gs, |g| {
            let mut c = 0;
            let mut b = 0;
            for j in 0..n {
                for gamma in &gammas {
                    c += 1;
                    b += usize::from(
                        !check_t_centralizer(&g.alpha, g.dir, j, gamma, &o())
                            .unwrap()
                            .pass,
                    );
                }
            }
            (c, b)
        });
        count += res.iter().map(|r| r.0).sum::<usize>();
        bad += res.iter().map(|r| r.1).sum::<usize>();
    }
    ok(
        bad == 0,
        format!("{count} (alpha, i, j, gamma), {bad} nonzero"),
    )
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 1..=2 {
        let gs = gens(n, 1, 3);
        let res: Vec<(usize, usize)> = Exec::Parallel.map(&gs, |x| {
            let b = gs
                .iter()
                .filter(|y| {
                    !check_pi2_homomorphism(&x.alpha, x.dir, &y.alpha, y.dir, &o())
                        .unwrap()
                        .pass
                })
                .count();
            (gs.len(), b)
        });
        count += res.iter().map(|r| r.0).sum::<usize>();
        bad += res.iter().map(|r| r.1).sum::<usize>();
    }
    ok(bad == 0, format!("{count} pairs, {bad} residues"))
}

fn unit_matrix(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m.set(i, j, Rational::from(1));
    m
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 1..=4 {
        let deg0 = gens(n, 1, 1);
        for x in &deg0 {
            let ex = WittElem::generator(x.clone());
            let i = x.alpha.entries().iter().position(|&a| a == 1).unwrap();
            // oracle: t_i d_j goes to the matrix unit E_ij
            bad += usize::from(ex.pi_gl3().unwrap() != unit_matrix(n, i, x.dir));
            for y in &deg0 {
                count += 1;
                let ey = WittElem::generator(y.clone());
                let lhs = ex.bracket(&ey).unwrap().pi_gl3().unwrap();
                let rhs = ex.pi_gl3().unwrap().commutator(&ey.pi_gl3().unwrap());
                bad += usize::from(lhs != rhs);
            }
        }
    }
    ok(
        bad == 0,
        format!("{count} degree-0 pairs, {bad} disagreements"),
    )
}

// ---- 6-8 -----------------------------------------------------------------

fn criterion_6() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for m in 0..=5 {
        for k in 0..=3u32 {
            for s in 0..=3u32 {
                count += 3;
                bad += usize::from(!check_omega_recursion(m, k, s, &o()).unwrap().pass);
                bad += usize::from(!check_omega_identification(m + 1, k, s, &o()).unwrap().pass);
                let big = i64::from(m) + i64::from(k);
                bad += usize::from(
                    !check_big_omega_recursion(m, big, i64::from(s) - 1, &o())
                        .unwrap()
                        .pass,
                );
            }
        }
    }
    ok(
        bad == 0,
        format!("{count} identities up to m = 6, {bad} residues"),
    )
}

fn criterion_7() -> Outcome {
    let cases: Vec<(u32, u32)> = (0..=2).flat_map(|k| (0..=2).map(move |s| (k, s))).collect();
    let bad = Exec::Parallel
        .map(&cases, |&(k, s)| {
            !check_big_omega_identity(2, k, s, &o()).unwrap().pass
        })
        .iter()
        .filter(|b| **b)
        .count();
    let control = big_omega_identity_residue(2, 0, 0, &Rational::from(2), &o()).unwrap();
    ok(
        bad == 0 && !control.is_zero(),
        format!(
            "9 cases, {bad} residues; wrong coefficient leaves {} terms",
            control.len()
        ),
    )
}

/// `x v_s` in `V_{a,b}` at numeric `a, b`, straight from the action formula.
fn vab_act(
    a: &Rational,
    b: &Rational,
    g: &WittGen,
    v: &BTreeMap<i64, Rational>,
) -> BTreeMap<i64, Rational> {
    let k = i64::from(g.alpha.get(0)) - 1;
    let mut out = BTreeMap::new();
    for (s, c) in v {
        let coeff = a.clone() + &Rational::from(*s) + &(b.clone() * &Rational::from(k));
        *out.entry(s + k).or_insert_with(|| Rational::from(0)) += &(coeff * c);
    }
    out.retain(|_, c| *c != Rational::from(0));
    out
}

fn criterion_8() -> Outcome {
    let w = WeightBox::new(vec![0], 12);
    let mut bad = Vec::new();
    for k in 0..=3 {
        for s in 0..=3 {
            let r = check_vab_annihilation(3, k, s, &w, &o()).unwrap();
            if !r.pass || r.checked == 0 {
                bad.push(format!("({k},{s})"));
            }
        }
    }
    let witness = !check_vab_annihilation(2, 0, 0, &w, &o()).unwrap().pass;
    // oracle: the unordered pair expansion applied with the raw action formula
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut oracle_bad = 0;
    for _ in 0..20 {
        let (a, b) = (rand_coeff(&mut rng), rand_coeff(&mut rng));
        let k = rng.random_range(0..=3);
        let s = rng.random_range(0..=3);
        let start: BTreeMap<i64, Rational> = [(rng.random_range(-5..=5), Rational::from(1))].into();
        let mut total: BTreeMap<i64, Rational> = BTreeMap::new();
        for (c, g1, g2) in (OmegaSpec::Omega1 { k, s, m: 3 }).pairs().unwrap() {
            for (i, x) in vab_act(&a, &b, &g1, &vab_act(&a, &b, &g2, &start)) {
                *total.entry(i).or_insert_with(|| Rational::from(0)) += &(c.clone() * &x);
            }
        }
        oracle_bad += usize::from(total.values().any(|x| *x != Rational::from(0)));
    }
    ok(
        bad.is_empty() && witness && oracle_bad == 0,
        format!("omega3 failures {bad:?}; omega2_(0,0) witness {witness}; numeric oracle misses {oracle_bad}/20"),
    )
}

// ---- 9-11 ----------------------------------------------------------------

fn module_specs(n: usize) -> Vec<GlnSpec> {
    let mut v: Vec<GlnSpec> = (0..=n).map(|k| GlnSpec::Ext { k }).collect();
    let psi = if n >= 2 {
        [vec![2], vec![0; n - 2]].concat()
    } else {
        Vec::new()
    };
    v.push(GlnSpec::Hw {
        psi,
        b: Rational::from(1),
    });
    v
}

fn criterion_9_10() -> (Outcome, Outcome) {
    let lambda = Rational::new(1, 2);
    let mut axiom_bad = Vec::new();
    let mut dims_bad = Vec::new();
    let mut modules = 0;
    for n in 1..=2 {
        for p in factor_combinations(n, &lambda) {
            for spec in module_specs(n) {
                modules += 1;
                let f = TensorModule::from_spec(p.clone(), &spec).unwrap();
                let w = Window::around_anchor(&f, 4);
                let r = check_module_axiom(&f, &w, 3, Exec::Parallel).unwrap();
                if !r.pass || r.checked == 0 {
                    axiom_bad.push(f.label());
                }
                for nu in w.bbox().points() {
                    if w.weight_space_dim(&nu).unwrap() != convolution_dim(&f, &nu) {
                        dims_bad.push(format!("{} at {nu:?}", f.label()));
                    }
                }
            }
        }
    }
    let natural =
        TensorModule::from_spec(KWeightModule::polynomial(2), &GlnSpec::Ext { k: 1 }).unwrap();
    let w = Window::around_anchor(&natural, 4);
    let nu = natural
        .offset_of(&[Rational::from(1), Rational::from(1)])
        .unwrap();
    // oracle: t^(0,1) ⊗ e_1 and t^(1,0) ⊗ e_2
    let d11 = w.weight_space_dim(&nu).unwrap();
    (
        ok(
            axiom_bad.is_empty(),
            format!("{modules} modules at radius 4, |alpha| <= 3; failing {axiom_bad:?}"),
        ),
        ok(
            dims_bad.is_empty() && d11 == 2,
            format!(
                "{modules} windows, {} mismatches; dim F_(1,1) = {d11}",
                dims_bad.len()
            ),
        ),
    )
}

fn criterion_11() -> Outcome {
    let lambda = Rational::new(1, 2);
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for p in factor_combinations(n, &lambda) {
            for l in 1..=n {
                count += 1;
                let f = TensorModule::from_spec(p.clone(), &GlnSpec::Ext { k: l }).unwrap();
                let w = Window::around_anchor(&f, 4);
                let s = build_l(&f, &w).unwrap();
                let r = check_closure(&f, &w, &s, 3, Exec::Parallel).unwrap();
                if !r.pass || r.checked == 0 {
                    bad.push(f.label());
                }
            }
        }
    }
    // negative control: a random line at one interior weight
    let f = TensorModule::from_spec(KWeightModule::polynomial(2), &GlnSpec::Ext { k: 1 }).unwrap();
    let w = Window::around_anchor(&f, 4);
    let nu = vec![w.bbox().center[0], w.bbox().center[1]];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let dim = w.basis(&nu).len();
    let mut s = SubspaceByWeight::zero(&w);
    s.insert(&nu, (0..dim).map(|_| rand_coeff(&mut rng)).collect());
    let control = !check_closure(&f, &w, &s, 3, Exec::Parallel).unwrap().pass;
    ok(
        bad.is_empty() && control,
        format!("{count} (P, l) with n <= 3, failing {bad:?}; random subspace rejected {control}"),
    )
}

// ---- 12-14 ---------------------------------------------------------------

fn criterion_12() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=2usize {
        let small = MultiIndex::all_up_to(n, 1);
        for m in 0..=2 {
            for j in 0..n {
                for l in 0..n {
                    for p in 0..n {
                        for (ai, alpha) in small.iter().enumerate() {
                            let beta = &small[(ai + 1) % small.len()];
                            let gamma = &small[(ai + 2) % small.len()];
                            for (k, s) in [(0, 0), (1, 0), (1, 1)] {
                                cases.push(PropagationIndices {
                                    m,
                                    j,
                                    l,
                                    p,
                                    alpha: alpha.clone(),
                                    beta: beta.clone(),
                                    gamma: gamma.clone(),
                                    k,
                                    s,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let res: Vec<(usize, usize)> = Exec::Parallel.map(&cases, |idx| {
        let r = check_propagation_steps(idx, &o()).unwrap();
        (r.len(), r.iter().filter(|x| !x.pass).count())
    });
    let identities: usize = res.iter().map(|r| r.0).sum();
    let bad: usize = res.iter().map(|r| r.1).sum();
    let f =
        TensorModule::from_spec(KWeightModule::polynomial(1), &"hw:1/3".parse().unwrap()).unwrap();
    let found = find_ann_degree(
        &f,
        &AnnFamily::Omega1 { max_k: 2, max_s: 2 },
        &WeightBox::new(vec![6], 6),
        8,
        &o(),
        Exec::Parallel,
    );
    let m = found.as_ref().map(|r| r.m).ok();
    ok(bad == 0 && m.is_some(), format!("{} index sets, {identities} identities, {bad} residues; F(C[t], hw:1/3) annihilated at m = {m:?}", cases.len()))
}

struct CoverCase {
    module: TensorModule,
    family: AnnFamily,
    center: Vec<i64>,
}

fn criterion_13() -> Outcome {
    let cases = vec![
        CoverCase {
            module: TensorModule::from_spec(KWeightModule::polynomial(1), &"hw:1".parse().unwrap())
                .unwrap(),
            family: AnnFamily::Omega1 { max_k: 2, max_s: 2 },
            center: vec![6],
        },
        CoverCase {
            module: TensorModule::from_spec(
                KWeightModule::polynomial(2),
                &"ext:1".parse().unwrap(),
            )
            .unwrap(),
            family: AnnFamily::OmegaN { n: 2, max_index: 1 },
            center: vec![8, 8],
        },
    ];
    let margin = 3;
    let mut lines = Vec::new();
    let (mut kv_ok, mut red_ok, mut stated_ok, mut box_ok, mut n1_stated) =
        (true, true, true, true, true);
    for case in &cases {
        let f = &case.module;
        let n = f.rank();
        let cert = Certificate::search(
            f,
            &case.family,
            &WeightBox::new(case.center.clone(), 8),
            6,
            &o(),
            Exec::Parallel,
        )
        .unwrap();
        let m = cert.m;
        let window = WeightBox::new(case.center.clone(), 3);
        let vectors: Vec<_> = window
            .points()
            .iter()
            .flat_map(|p| f.weight_basis(p))
            .take(4)
            .collect();
        let unit = MultiIndex::zero(n).plus_unit(0, 1);
        let mut reductions = 0;
        for alpha in MultiIndex::box_up_to(n, m + 2) {
            for l in 0..n {
                for p in 0..n {
                    let e = reduce_to_box(&alpha, l, &unit, p, m);
                    for v in &vectors {
                        reductions += 1;
                        red_ok &= e.check_consistency(f, Some(&cert), v).unwrap() == (true, true);
                    }
                    for j in (0..n).filter(|&j| alpha.get(j) >= m) {
                        let idx = KvIndex {
                            alpha: alpha.clone(),
                            beta: unit.clone(),
                            j,
                            l,
                            p,
                        };
                        let g =
                            kv_generators(f, Some(&cert), m, &idx, &vectors[0], margin).unwrap();
                        kv_ok &= g.validation.pass;
                    }
                }
            }
        }
        // negative control: perturbed binomial signs leave the kernel
        let idx = KvIndex {
            alpha: MultiIndex::zero(n).plus_unit(0, m + 1),
            beta: unit.clone(),
            j: 0,
            l: 0,
            p: 0,
        };
        let mut signs: Vec<Rational> = (0..=m)
            .map(|i| {
                Rational::binomial(u64::from(m), u64::from(i))
                    * &Rational::from(if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        signs[1] = signs[1].clone() * &Rational::from(-1);
        kv_ok &= !theta_kernel_report(
            f,
            &kv_element_with(f, &idx, &signs, &vectors[0]).unwrap(),
            margin,
        )
        .pass;
        let r = cover_bound_report(f, m, &window);
        let observed = r.params["observed"].as_u64().unwrap();
        let box_bound = r.params["box_bound"].as_u64().unwrap();
        stated_ok &= r.pass;
        box_ok &= observed <= box_bound;
        if n == 1 {
            n1_stated &= r.pass;
        }
        lines.push(format!(
            "n={n} m={m}: {reductions} reductions; observed {observed}, stated bound {}, |S| r = {box_bound}",
            r.params["stated_bound"]
        ));
    }
    let pass = kv_ok && red_ok && stated_ok;
    Outcome {
        pass,
        detail: format!(
            "kv generators {kv_ok}, reductions {red_ok}; {}",
            lines.join("; ")
        ),
        documented: kv_ok && red_ok && n1_stated && !stated_ok && box_ok,
    }
}

fn criterion_14() -> Outcome {
    let mut bad = Vec::new();
    for q1 in QSet::ALL {
        for q2 in QSet::ALL {
            for q3 in QSet::ALL {
                let v = hc_classify_n2(q1, q2, q3);
                let agree = v == published_list_verdict(q1, q2, q3)
                    && [10, 20].iter().all(|&r| hc_brute_force(q1, q2, q3, r) == v);
                if !agree {
                    bad.push(format!("({q1},{q2},{q3})"));
                }
            }
        }
    }
    let hc = QSet::ALL
        .iter()
        .flat_map(|&a| {
            QSet::ALL
                .iter()
                .flat_map(move |&b| QSet::ALL.iter().map(move |&c| (a, b, c)))
        })
        .filter(|&(a, b, c)| hc_classify_n2(a, b, c) == HcVerdict::HarishChandra)
        .count();
    ok(
        bad.is_empty(),
        format!("27 triples, {hc} Harish-Chandra; disagreements {bad:?}"),
    )
}

type Row = (u32, Outcome, Duration, Duration);

fn timed(rows: &mut Vec<Row>, id: u32, limit: u64, f: impl FnOnce() -> Outcome) {
    let t = Instant::now();
    let r = f();
    rows.push((id, r, t.elapsed(), Duration::from_secs(limit)));
}

fn main() {
    let mut results: Vec<Row> = Vec::new();
    timed(&mut results, 1, 10, criterion_1);
    timed(&mut results, 2, 10, criterion_2);
    timed(&mut results, 3, 10, criterion_3);
    timed(&mut results, 4, 30, criterion_4);
    timed(&mut results, 5, 10, criterion_5);
    timed(&mut results, 6, 60, criterion_6);
    timed(&mut results, 7, 60, criterion_7);
    timed(&mut results, 8, 10, criterion_8);
    let t = Instant::now();
    let (c9, c10) = criterion_9_10();
    results.push((9, c9, t.elapsed(), Duration::from_secs(60)));
    timed(&mut results, 10, 60, || c10);
    timed(&mut results, 11, 300, criterion_11);
    timed(&mut results, 12, 300, criterion_12);
    timed(&mut results, 13, 300, criterion_13);
    timed(&mut results, 14, 10, criterion_14);

    let mut unexpected = Vec::new();
    for (id, r, elapsed, limit) in &results {
        let in_time = elapsed <= limit;
        let pass = r.pass && in_time;
        println!(
            "{} criterion {id:>2} ({:.2}s/{}s): {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            r.detail
        );
        if !pass && !(KNOWN_FAILURES.contains(id) && r.documented && in_time) {
            unexpected.push(*id);
        }
    }
    for id in KNOWN_FAILURES {
        if let Some((_, r, _, _)) = results.iter().find(|x| x.0 == *id) {
            if r.pass {
                println!("note: criterion {id} is listed as a known failure but passed");
            } else {
                println!("note: criterion {id} fails as documented");
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
