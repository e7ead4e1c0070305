use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use wittmod::cover::{cover_bound_report, kv_generators, reduce_to_box, Certificate, KvIndex};
use wittmod::exact::Rational;
use wittmod::kweight::KWeightModule;
use wittmod::par::Exec;
use wittmod::report::CheckReport;
use wittmod::series::{
    check_vab_annihilation, find_ann_degree, AnnFamily, VabModule, SUBSCRIPT_NOTE,
};
use wittmod::tensormod::{
    build_l, check_closure, check_module_axiom, convolution_dim, factor_combinations, GlnSpec,
    TensorModule, Window,
};
use wittmod::uea::{
    check_basis_change, check_big_omega_recursion, check_omega_identification,
    check_omega_recursion, check_pi2_homomorphism, check_t_centralizer, IdentityReport,
    NormalOrderer, UeaError, WeightBox, WittModule,
};
use wittmod::witt::{AWLieElem, MultiIndex, PolyA, TildeElem, WittElem, WittGen};

pub struct Config {
    pub n: usize,
    pub deg: u32,
    pub radius: i64,
    pub kmax: u32,
    pub smax: u32,
    pub p: Option<KWeightModule>,
    pub m: Option<GlnSpec>,
    pub seed: u64,
    pub orderer: NormalOrderer,
    pub exec: Exec,
}

pub type SuiteResult = Result<Vec<CheckReport>, String>;

fn fold(
    check: &str,
    params: serde_json::Value,
    items: Vec<Result<IdentityReport, UeaError>>,
) -> Result<CheckReport, String> {
    let mut r = CheckReport::new(check, params);
    for item in items {
        let item = item.map_err(|e| e.to_string())?;
        r.record(item.pass, || {
            format!("{} residue {}", item.indices, item.residue_term_count)
        });
    }
    Ok(r)
}

fn gens(n: usize, d: u32) -> Vec<WittGen> {
    MultiIndex::all_up_to(n, d)
        .into_iter()
        .flat_map(|a| (0..n).map(move |i| WittGen::new(a.clone(), i)))
        .collect()
}

fn random_index(rng: &mut ChaCha8Rng, n: usize, d: u32) -> MultiIndex {
    let all = MultiIndex::all_up_to(n, d);
    all[rng.random_range(0..all.len())].clone()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from(rng.random_range(1..=5i64) * if rng.random_bool(0.5) { 1 } else { -1 })
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, d: u32) -> WittElem {
    let terms: Vec<(WittGen, Rational)> = (0..rng.random_range(1..=3))
        .map(|_| {
            (
                WittGen::new(random_index(rng, n, d), rng.random_range(0..n)),
                random_coeff(rng),
            )
        })
        .collect();
    WittElem::from_terms(n, terms)
}

fn random_function(rng: &mut ChaCha8Rng, n: usize, d: u32) -> PolyA {
    let mut f = PolyA::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        f.add_term(random_index(rng, n, d), random_coeff(rng));
    }
    f
}

fn random_aw(rng: &mut ChaCha8Rng, n: usize, d: u32) -> AWLieElem {
    let mut x = AWLieElem::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        let g = WittGen::new(random_index(rng, n, d), rng.random_range(0..n));
        x = x.plus(&AWLieElem::monomial(
            random_index(rng, n, d),
            g,
            random_coeff(rng),
        ));
    }
    x
}

/// Antisymmetry and Jacobi on seeded random triples.
fn bracket_laws(cfg: &Config, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (n, d) = (cfg.n, cfg.deg);
    let mut out = Vec::new();
    macro_rules! law {
        ($name:expr, $gen:expr, $br:expr, $zero:expr) => {{
            let mut r = CheckReport::new($name, json!({ "n": n, "deg": d, "samples": samples, "seed": cfg.seed }));
            for _ in 0..samples {
                let (x, y, z) = ($gen(&mut rng), $gen(&mut rng), $gen(&mut rng));
                let br = $br;
                let anti = br(&x, &y).plus(&br(&y, &x));
                let jac = br(&x, &br(&y, &z)).plus(&br(&y, &br(&z, &x))).plus(&br(&z, &br(&x, &y)));
                r.record(anti == $zero && jac == $zero, || format!("{x} | {y} | {z}"));
            }
            out.push(r);
        }};
    }
    law!(
        "witt_bracket_laws",
        |r: &mut ChaCha8Rng| random_field(r, n, d),
        |a: &WittElem, b: &WittElem| a.bracket(b).expect("same rank"),
        WittElem::zero(n)
    );
    law!(
        "tilde_bracket_laws",
        |r: &mut ChaCha8Rng| TildeElem::from_field(random_field(r, n, d))
            .plus(&TildeElem::from_function(random_function(r, n, d))),
        |a: &TildeElem, b: &TildeElem| a.bracket(b).expect("same rank"),
        TildeElem::zero(n)
    );
    law!(
        "awlie_bracket_laws",
        |r: &mut ChaCha8Rng| random_aw(r, n, d),
        |a: &AWLieElem, b: &AWLieElem| a.bracket(b).expect("same rank"),
        AWLieElem::zero(n)
    );
    Ok(out)
}

pub fn identities(cfg: &Config) -> SuiteResult {
    let (n, d, o) = (cfg.n, cfg.deg, &cfg.orderer);
    let mut out = bracket_laws(cfg, 200)?;
    let alphas = MultiIndex::all_up_to(n, d);
    let pairs: Vec<(MultiIndex, usize)> = alphas
        .iter()
        .flat_map(|a| (0..n).map(move |i| (a.clone(), i)))
        .collect();
    out.push(fold(
        "basis_change",
        json!({ "n": n, "deg": d }),
        cfg.exec.map(&pairs, |(a, i)| Ok(check_basis_change(a, *i))),
    )?);
    let cd = d.min(3);
    // X_{alpha,i} is only defined as an element of T for alpha != 0
    let small: Vec<(MultiIndex, usize)> = pairs
        .iter()
        .filter(|(a, _)| (1..=cd).contains(&a.total()))
        .cloned()
        .collect();
    let gammas = MultiIndex::all_up_to(n, cd);
    out.push(fold(
        "t_centralizer",
        json!({ "n": n, "deg": cd }),
        cfg.exec.flat_map(&small, |(a, i)| {
            (0..n)
                .flat_map(|j| gammas.iter().map(move |g| (j, g)))
                .map(|(j, g)| check_t_centralizer(a, *i, j, g, o))
                .collect()
        }),
    )?);
    let hd = d.min(2);
    let hom: Vec<(MultiIndex, usize)> = pairs
        .iter()
        .filter(|(a, _)| (1..=hd).contains(&a.total()))
        .cloned()
        .collect();
    out.push(fold(
        "pi2_homomorphism",
        json!({ "n": n, "deg": hd }),
        cfg.exec.flat_map(&hom, |(a, i)| {
            hom.iter()
                .map(|(b, j)| check_pi2_homomorphism(a, *i, b, *j, o))
                .collect()
        }),
    )?);
    let mut pi3 = CheckReport::new("pi3_commutator", json!({ "n": n }));
    let deg0 = gens(n, 2)
        .into_iter()
        .filter(|g| g.alpha.total() >= 1)
        .collect::<Vec<_>>();
    for x in &deg0 {
        for y in &deg0 {
            let (ex, ey) = (
                WittElem::generator(x.clone()),
                WittElem::generator(y.clone()),
            );
            let lhs = ex
                .bracket(&ey)
                .and_then(|b| b.pi_gl3())
                .map_err(|e| e.to_string())?;
            let rhs = ex
                .pi_gl3()
                .map_err(|e| e.to_string())?
                .commutator(&ey.pi_gl3().map_err(|e| e.to_string())?);
            pi3.record(lhs == rhs, || format!("{x}, {y}"));
        }
    }
    out.push(pi3);
    let mks: Vec<(u32, u32, u32)> = (0..=d.min(4))
        .flat_map(|m| (0..=3).flat_map(move |k| (0..=3).map(move |s| (m, k, s))))
        .collect();
    out.push(fold(
        "omega_recursion",
        json!({ "m_max": d.min(4) }),
        cfg.exec
            .map(&mks, |&(m, k, s)| check_omega_recursion(m, k, s, o)),
    )?);
    out.push(fold(
        "big_omega_recursion",
        json!({ "m_max": d.min(4) }),
        cfg.exec.map(&mks, |&(m, k, s)| {
            check_big_omega_recursion(m, i64::from(m + k), i64::from(s), o)
        }),
    )?);
    out.push(fold(
        "omega_identification",
        json!({ "m_max": d.min(4) }),
        cfg.exec
            .map(&mks, |&(m, k, s)| check_omega_identification(m, k, s, o)),
    )?);
    Ok(out)
}

fn module_specs(n: usize) -> Vec<GlnSpec> {
    let mut v: Vec<GlnSpec> = (0..=n).map(|k| GlnSpec::Ext { k }).collect();
    let mut psi = vec![0; n - 1];
    if let Some(first) = psi.first_mut() {
        *first = 2;
    }
    v.push(GlnSpec::Hw {
        psi,
        b: Rational::from(1),
    });
    v
}

pub fn modules(cfg: &Config) -> SuiteResult {
    let n = cfg.n;
    let ps = match &cfg.p {
        Some(p) => vec![p.clone()],
        None => factor_combinations(n, &Rational::new(1, 2)),
    };
    let ms = match &cfg.m {
        Some(m) => vec![m.clone()],
        None => module_specs(n),
    };
    let mut out = Vec::new();
    for p in &ps {
        for m in &ms {
            let f = TensorModule::from_spec(p.clone(), m).map_err(|e| e.to_string())?;
            let w = Window::around_anchor(&f, cfg.radius);
            out.push(check_module_axiom(&f, &w, cfg.deg, cfg.exec).map_err(|e| e.to_string())?);
            let mut dims = CheckReport::new(
                "weight_dims",
                json!({ "module": f.label(), "radius": cfg.radius }),
            );
            for nu in w.bbox().points() {
                let got = w.weight_space_dim(&nu).map_err(|e| e.to_string())?;
                dims.record(got == convolution_dim(&f, &nu), || format!("{nu:?}: {got}"));
            }
            out.push(dims);
            if matches!(m, GlnSpec::Ext { k } if *k >= 1) {
                let l = build_l(&f, &w).map_err(|e| e.to_string())?;
                out.push(check_closure(&f, &w, &l, cfg.deg, cfg.exec).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

pub fn series(cfg: &Config) -> SuiteResult {
    let o = &cfg.orderer;
    let window = WeightBox::new(vec![0], 12);
    let mut out = Vec::new();
    for k in 0..=cfg.kmax {
        for s in 0..=cfg.smax {
            out.push(check_vab_annihilation(3, k, s, &window, o).map_err(|e| e.to_string())?);
        }
    }
    let fam = AnnFamily::Omega1 {
        max_k: cfg.kmax,
        max_s: cfg.smax,
    };
    let found = find_ann_degree(&VabModule::generic(), &fam, &window, 6, o, cfg.exec)
        .map_err(|e| e.to_string())?;
    let mut min = CheckReport::new(
        "series_minimal_degree",
        json!({ "family": fam, "m": found.m }),
    );
    min.record(found.m == 3, || {
        format!("least annihilating degree is {}", found.m)
    });
    let note = format!(
        "m={} minimal; witness below: {}; {SUBSCRIPT_NOTE}",
        found.m,
        found.witness.unwrap_or_default()
    );
    out.push(min.with_note(note));
    Ok(out)
}

fn cover_for<M: WittModule>(
    cfg: &Config,
    module: &M,
    family: AnnFamily,
    center: Vec<i64>,
    label: &str,
) -> SuiteResult
where
    M::Basis: Clone,
{
    let n = module.rank();
    let cert_window = WeightBox::new(center.clone(), 8);
    let cert = Certificate::search(module, &family, &cert_window, 6, &cfg.orderer, cfg.exec)
        .map_err(|e| e.to_string())?;
    let m = cert.m;
    let window = WeightBox::new(center, cfg.radius.min(3));
    let vectors: Vec<M::Basis> = window
        .points()
        .iter()
        .flat_map(|p| module.weight_basis(p))
        .collect();
    let margin = 3;
    let mut kv = CheckReport::new(
        "kv_generators",
        json!({ "module": label, "m": m, "margin": margin }),
    );
    let mut red = CheckReport::new(
        "reduce_to_box",
        json!({ "module": label, "m": m, "max_entry": m + 2 }),
    );
    let unit = MultiIndex::zero(n).plus_unit(0, 1);
    for alpha in MultiIndex::box_up_to(n, m + 2) {
        for l in 0..n {
            for p in 0..n {
                let e = reduce_to_box(&alpha, l, &unit, p, m);
                for v in vectors.iter().take(4) {
                    let ok = e
                        .check_consistency(module, Some(&cert), v)
                        .map_err(|e| e.to_string())?;
                    red.record(ok == (true, true), || {
                        format!("t^{alpha} d_{} ⊗ t^{unit} d_{}: {ok:?}", l + 1, p + 1)
                    });
                }
                for j in (0..n).filter(|&j| alpha.get(j) >= m) {
                    let idx = KvIndex {
                        alpha: alpha.clone(),
                        beta: unit.clone(),
                        j,
                        l,
                        p,
                    };
                    for v in vectors.iter().take(2) {
                        let g = kv_generators(module, Some(&cert), m, &idx, v, margin)
                            .map_err(|e| e.to_string())?;
                        kv.record(g.validation.pass, || format!("{idx:?}"));
                    }
                }
            }
        }
    }
    Ok(vec![kv, red, cover_bound_report(module, m, &window)])
}

pub fn cover(cfg: &Config) -> SuiteResult {
    let mut out = Vec::new();
    let d1 = TensorModule::from_spec(KWeightModule::polynomial(1), &"hw:1".parse().expect("spec"))
        .map_err(|e| e.to_string())?;
    out.extend(cover_for(
        cfg,
        &d1,
        AnnFamily::Omega1 { max_k: 2, max_s: 2 },
        vec![6],
        &d1.label(),
    )?);
    if cfg.n >= 2 {
        let f = TensorModule::from_spec(
            KWeightModule::polynomial(2),
            &"ext:1".parse().expect("spec"),
        )
        .map_err(|e| e.to_string())?;
        out.extend(cover_for(
            cfg,
            &f,
            AnnFamily::OmegaN { n: 2, max_index: 1 },
            vec![8, 8],
            &f.label(),
        )?);
    }
    Ok(out)
}
