//! Acceptance suite: one line per criterion.
//!
//! Corpus criteria need MovieLens-100K `u.data`, found through
//! `REPUTE_MOVIELENS` or `data/ml-100k/u.data` at the workspace root, and are
//! skipped when it is absent. Criteria 5 and 7 are known to fail (see the
//! README); they are evaluated as stated and reported, but only fail the run
//! when `REPUTE_ACCEPTANCE_STRICT=1`. Any other failure fails the run.

use std::path::PathBuf;
use std::process::Command;

use rand::Rng as _;
use repute::correlate::correlate;
use repute::files::{load_triples, TripleFileFormat};
use repute::sweep::{run_sweep, SweepSettings};
use repute_core::methods::{self, igr_rank_observed};
use repute_core::metrics;
use repute_core::seed::{rng_from_seed, Rng};
use repute_core::{inject, IrErrorNorm, Method, MethodConfig, RatingDataset, RatingScale, SpamKind, SpamSpec};

const EXPECTED_RED: [u8; 2] = [5, 7];
const REALIZATIONS: usize = 20;
const SEED: u64 = 20;

#[derive(Clone, Copy, PartialEq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

struct Report {
    rows: Vec<(u8, Status)>,
}

impl Report {
    fn record(&mut self, n: u8, status: Status, title: &str, detail: String) {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!("[{tag}] {n:>2} {title}: {detail}");
        self.rows.push((n, status));
    }

    fn check(&mut self, n: u8, title: &str, ok: bool, detail: String) {
        self.record(n, if ok { Status::Pass } else { Status::Fail }, title, detail);
    }
}

fn info(msg: String) {
    println!("       info: {msg}");
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn corpus() -> Option<RatingDataset> {
    let path = std::env::var_os("REPUTE_MOVIELENS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data"));
    if !path.exists() {
        return None;
    }
    Some(load_triples(&path, TripleFileFormat::default(), RatingScale::five_star()).expect("corpus loads"))
}

fn random_dataset(rng: &mut Rng, max_users: usize, max_objects: usize) -> RatingDataset {
    let m = rng.random_range(2..=max_users);
    let n = rng.random_range(2..=max_objects);
    let density = rng.random_range(0.15..0.8);
    let mut t = Vec::new();
    for u in 0..m {
        let mut any = false;
        for o in 0..n {
            if rng.random_bool(density) {
                t.push((format!("{u}"), format!("{o}"), rng.random_range(1..=5) as f64));
                any = true;
            }
        }
        if !any {
            t.push((format!("{u}"), format!("{}", rng.random_range(0..n)), rng.random_range(1..=5) as f64));
        }
    }
    RatingDataset::from_triples(t, RatingScale::five_star()).unwrap()
}

fn sweep(d: &RatingDataset, methods: &[Method], attack: SpamKind, ratios: &[f64]) -> repute::sweep::SweepReport {
    let settings = SweepSettings {
        methods: methods.to_vec(),
        attack,
        ratios: ratios.to_vec(),
        realizations: REALIZATIONS,
        seed: SEED,
        config: MethodConfig::default(),
        subgroups: false,
    };
    let report = run_sweep(d, &settings, true).unwrap();
    assert_eq!(report.failures(), 0);
    report
}

fn corpus_criteria(r: &mut Report, d: Option<&RatingDataset>) {
    let titles = [
        "dataset statistics",
        "IR degree preference",
        "self-consistency",
        "trend following",
        "Simpson diversity at 100 bins",
        "random spamming AUC",
        "malicious spamming AUC",
        "malicious spamming recall at p=0.02",
    ];
    let Some(d) = d else {
        for (i, t) in titles.iter().enumerate() {
            r.record(i as u8 + 1, Status::Skip, t, "MovieLens-100K not found".into());
        }
        return;
    };

    let s = d.sparsity();
    r.check(
        1,
        titles[0],
        (d.user_count(), d.object_count(), d.rating_count()) == (943, 1682, 100_000) && within(s, 0.0630, 1e-4),
        format!("m={} n={} l={} S={s:.5}", d.user_count(), d.object_count(), d.rating_count()),
    );

    let cfg = MethodConfig::default();
    let rows: Vec<_> = correlate(d, &Method::ALL, &cfg, 100, None).into_iter().map(|o| o.unwrap()).collect();
    let row = |m: Method| rows.iter().find(|x| x.method == m).unwrap();
    let rho = |v: Option<f64>| v.unwrap_or(f64::NAN);

    let ir_k = rho(row(Method::Ir).rho_degree);
    r.check(2, titles[1], within(ir_k, 0.8759, 0.05), format!("rho(k,R) IR={ir_k:.4} (target 0.8759 +- 0.05)"));
    let literal = MethodConfig { ir_error: IrErrorNorm::Mean, ..cfg };
    let lit = correlate(d, &[Method::Ir], &literal, 100, None).pop().unwrap().unwrap();
    info(format!(
        "IR with the plain mean squared error: rho(delta,R)={:.4} rho(k,R)={:.4} rho(phi,R)={:.4}",
        rho(lit.rho_delta),
        rho(lit.rho_degree),
        rho(lit.rho_phi)
    ));

    let gr = rho(row(Method::Gr).rho_delta);
    let igr = rho(row(Method::Igr).rho_delta);
    let others = [Method::Ir, Method::Cr, Method::Rr].map(|m| rho(row(m).rho_delta));
    let ordered = others.iter().all(|&o| gr < o && igr < o);
    r.check(
        3,
        titles[2],
        within(gr, -0.8166, 0.05) && within(igr, -0.8201, 0.05) && ordered,
        format!(
            "rho(delta,R) GR={gr:.4} IGR={igr:.4}; IR={:.4} CR={:.4} RR={:.4}",
            others[0], others[1], others[2]
        ),
    );

    let (gp, ip, irp) = (rho(row(Method::Gr).rho_phi), rho(row(Method::Igr).rho_phi), rho(row(Method::Ir).rho_phi));
    r.check(
        4,
        titles[3],
        within(gp, 0.2141, 0.06) && within(ip, 0.2048, 0.06) && within(irp, -0.4746, 0.06),
        format!("rho(phi,R) GR={gp:.4} IGR={ip:.4} IR={irp:.4}"),
    );

    let simpson = |m: Method| rho(row(m).simpson);
    let (sc, sg, si) = (simpson(Method::Cr), simpson(Method::Gr), simpson(Method::Igr));
    r.check(
        5,
        titles[4],
        within(sc, 0.9343, 0.03) && within(sg, 0.90, 0.04) && within(si, 0.90, 0.04),
        format!("1-D CR={sc:.4} (0.9343 +- 0.03) GR={sg:.4} IGR={si:.4} (0.90 +- 0.04)"),
    );
    let twenty: Vec<String> = Method::ALL
        .iter()
        .map(|&m| {
            let rep = m.rank(d, &cfg).unwrap();
            format!("{m}={:.4}", metrics::simpson_diversity(rep.values(), 20).unwrap())
        })
        .collect();
    info(format!("1-D with 20 bins: {}", twenty.join(" ")));

    let report = sweep(d, &Method::ALL, SpamKind::Random, &[0.1]);
    let auc = |m: Method| report.summary(m, 0.1, "auc").unwrap().0;
    let (a_gr, a_igr, a_cr, a_rr, a_ir) = (auc(Method::Gr), auc(Method::Igr), auc(Method::Cr), auc(Method::Rr), auc(Method::Ir));
    r.check(
        6,
        titles[5],
        within(a_gr, 0.96, 0.03) && within(a_igr, 0.96, 0.03) && within(a_cr, 0.92, 0.03) && within(a_rr, 0.92, 0.03) && a_ir < a_cr.min(a_rr),
        format!("mean AUC over {REALIZATIONS}: GR={a_gr:.4} IGR={a_igr:.4} CR={a_cr:.4} RR={a_rr:.4} IR={a_ir:.4}"),
    );

    let ratios = [0.1, 0.2, 0.3];
    let report = sweep(d, &[Method::Gr, Method::Igr], SpamKind::Malicious, &ratios);
    let mean = |m: Method, p: f64| report.summary(m, p, "auc").unwrap().0;
    let igr_ok = ratios.iter().all(|&p| mean(Method::Igr, p) > 0.95);
    let robust = mean(Method::Igr, 0.3) >= mean(Method::Gr, 0.3);
    let detail: Vec<String> = ratios
        .iter()
        .map(|&p| format!("p={p}: IGR={:.4} GR={:.4}", mean(Method::Igr, p), mean(Method::Gr, p)))
        .collect();
    r.check(7, titles[6], igr_ok && robust, detail.join("; "));

    let four = [Method::Gr, Method::Igr, Method::Cr, Method::Rr];
    let report = sweep(d, &four, SpamKind::Malicious, &[0.02]);
    let recall = |m: Method| report.summary(m, 0.02, "recall").unwrap().0;
    let (rg, ri, rc, rr) = (recall(Method::Gr), recall(Method::Igr), recall(Method::Cr), recall(Method::Rr));
    r.check(
        8,
        titles[7],
        within(rg, 0.8, 0.12) && within(ri, 0.8, 0.12) && rc < 0.2 && rr < 0.2,
        format!("mean recall GR={rg:.4} IGR={ri:.4} CR={rc:.4} RR={rr:.4}"),
    );
}

fn degeneration(r: &mut Report) {
    let mut rng = rng_from_seed(9);
    let cfg = MethodConfig::default();
    let mut bad = 0;
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    for _ in 0..50 {
        let d = random_dataset(&mut rng, 30, 20);
        let gr = methods::gr_rank(&d, &cfg).unwrap();
        let igr = methods::igr_rank(&d, &MethodConfig { max_iterations: 1, ..cfg }).unwrap();
        let rr = methods::cr_rr_rank(&d, &MethodConfig { rr_theta: 1.0, ..cfg });
        let cr = methods::cr_rank(&d, &cfg);
        let rr_ok = match (&rr, &cr) {
            (Ok(a), Ok(b)) => bits(a.values()) == bits(b.values()) && a.iterations == b.iterations,
            (a, b) => a == b,
        };
        if bits(gr.values()) != bits(igr.values()) || !rr_ok {
            bad += 1;
        }
    }
    r.check(9, "degeneration identities", bad == 0, format!("{bad} of 50 datasets differ"));
}

fn brute_auc(scores: &[f64], mask: &[bool]) -> f64 {
    let (mut lower, mut tied, mut pairs) = (0u64, 0u64, 0u64);
    for i in (0..scores.len()).filter(|&i| mask[i]) {
        for j in (0..scores.len()).filter(|&j| !mask[j]) {
            pairs += 1;
            if scores[i] < scores[j] {
                lower += 1;
            } else if scores[i] == scores[j] {
                tied += 1;
            }
        }
    }
    (2 * lower + tied) as f64 / (2 * pairs) as f64
}

fn auc_oracle(r: &mut Report) {
    let mut rng = rng_from_seed(10);
    let (mut mismatches, mut worst) = (0, 0.0f64);
    for trial in 0..100 {
        let m = rng.random_range(2..=200);
        let levels = rng.random_range(1..=m);
        let scores: Vec<f64> = (0..m).map(|_| rng.random_range(0..levels) as f64).collect();
        let mut mask: Vec<bool> = (0..m).map(|_| rng.random_bool(0.3)).collect();
        mask[0] = true;
        mask[m - 1] = false;
        let exact = metrics::auc(&scores, &mask).unwrap();
        if exact != brute_auc(&scores, &mask) {
            mismatches += 1;
        }
        if trial % 10 == 0 {
            let spam: Vec<f64> = (0..m).filter(|&i| mask[i]).map(|i| scores[i]).collect();
            let normal: Vec<f64> = (0..m).filter(|&i| !mask[i]).map(|i| scores[i]).collect();
            let n = 100_000;
            let mut acc = 0.0;
            for _ in 0..n {
                let (s, o) = (spam[rng.random_range(0..spam.len())], normal[rng.random_range(0..normal.len())]);
                acc += if s < o { 1.0 } else if s == o { 0.5 } else { 0.0 };
            }
            worst = worst.max((acc / n as f64 - exact).abs());
        }
    }
    r.check(
        10,
        "AUC oracle",
        mismatches == 0 && worst < 0.01,
        format!("{mismatches} of 100 differ from pair enumeration; sampled estimator off by at most {worst:.4}"),
    );
}

fn reward_normalization(r: &mut Report) {
    let mut rng = rng_from_seed(11);
    let mut worst = 0.0f64;
    let mut tables = 0;
    for _ in 0..50 {
        let d = random_dataset(&mut rng, 40, 25);
        let cfg = MethodConfig { max_iterations: 25, ..Default::default() };
        igr_rank_observed(&d, &cfg, |_, t| {
            tables += 1;
            for a in 0..t.object_count() {
                worst = worst.max((t.column(a).map(|c| c.2).sum::<f64>() - 1.0).abs());
            }
        })
        .unwrap();
    }
    r.check(11, "reward normalization", worst <= 1e-9, format!("max |sum - 1| = {worst:.2e} over {tables} iterations"));
}

fn random_baseline(r: &mut Report) {
    let mut rng = rng_from_seed(12);
    let (m, d) = (200, 20);
    let mask: Vec<bool> = (0..m).map(|i| i < d).collect();
    let total: f64 = (0..1000)
        .map(|_| {
            let scores: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            metrics::auc(&scores, &mask).unwrap()
        })
        .sum();
    let mean = total / 1000.0;
    r.check(12, "random-reputation baseline", within(mean, 0.5, 0.02), format!("mean AUC {mean:.4} over 1000 trials"));
}

fn injection_soundness(r: &mut Report) {
    let mut rng = rng_from_seed(13);
    let mut bad = Vec::new();
    let mut runs = 0;
    for seed in 0..100u64 {
        let d = random_dataset(&mut rng, 80, 30);
        for kind in [SpamKind::Malicious, SpamKind::Random] {
            let p = rng.random_range(0.05..0.5);
            if ((p * d.user_count() as f64).floor() as usize) == 0 {
                continue;
            }
            runs += 1;
            let x = inject(&d, SpamSpec::new(kind, p, seed).unwrap()).unwrap();
            let a = &x.attacked;
            let mask = x.mask();
            let topology = a.users() == d.users()
                && a.objects() == d.objects()
                && a.edge_users() == d.edge_users()
                && a.edge_objects() == d.edge_objects()
                && a.user_degrees() == d.user_degrees()
                && a.object_degrees() == d.object_degrees();
            let d_ok = x.spammer_count() == (p * d.user_count() as f64).floor() as usize
                && mask.iter().filter(|&&s| s).count() == x.spammer_count();
            let (lo, hi) = (d.scale().lowest_level(), d.scale().highest_level());
            let labels = (0..d.user_count()).all(|u| {
                d.user_edges(u).all(|e| {
                    let (old, new) = (d.edge_levels()[e], a.edge_levels()[e]);
                    if !mask[u] {
                        old == new
                    } else {
                        kind == SpamKind::Random || new == lo || new == hi
                    }
                })
            });
            if !(topology && d_ok && labels) {
                bad.push(format!("{kind} seed {seed}"));
            }
        }
    }
    r.check(13, "injection soundness", bad.is_empty() && runs >= 190, format!("{runs} injections, {} unsound {bad:?}", bad.len()));
}

fn determinism(r: &mut Report) {
    let mut rng = rng_from_seed(14);
    let d = random_dataset(&mut rng, 120, 40);
    let settings = SweepSettings {
        methods: Method::ALL.to_vec(),
        attack: SpamKind::Malicious,
        ratios: vec![0.1, 0.25],
        realizations: 6,
        seed: 3,
        config: MethodConfig::default(),
        subgroups: true,
    };
    let a = run_sweep(&d, &settings, true).unwrap().table().to_string_lossy();
    let b = run_sweep(&d, &settings, true).unwrap().table().to_string_lossy();
    let c = run_sweep(&d, &settings, false).unwrap().table().to_string_lossy();

    // End to end through the binary with a plan file.
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("ratings.tsv");
    repute::files::write_dataset(&data, &d).unwrap();
    let plan = dir.path().join("plan.txt");
    std::fs::write(
        &plan,
        format!("dataset = {}\nmethod = all\nattack = random\np = 0.1,0.2\nrealizations = 4\nseed = 8\nsubgroups = true\n", data.display()),
    )
    .unwrap();
    let run = |extra: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_repute"))
            .args(["sweep", "--plan"])
            .arg(&plan)
            .args(extra)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let (x, y, z) = (run(&[]), run(&[]), run(&["--sequential"]));
    let ok = a == b && a == c && x == y && x == z && !x.is_empty();
    r.check(
        14,
        "determinism",
        ok,
        format!("library re-run {}, parallel vs sequential {}, CLI plan re-run {}", a == b, a == c, x == y && x == z),
    );
}

/// Seven users, two objects: one user alone in its group decays by a
/// constant factor every IGR step and never settles.
fn adversarial() -> RatingDataset {
    let t = [("0", "1", 3.0), ("1", "1", 2.0), ("3", "1", 2.0), ("5", "0", 1.0), ("6", "1", 2.0), ("9", "0", 1.0), ("9", "1", 4.0), ("10", "0", 2.0)];
    RatingDataset::from_triples(t, RatingScale::five_star()).unwrap()
}

fn convergence(r: &mut Report, d: Option<&RatingDataset>) {
    let cfg = MethodConfig::default();
    let flagged = {
        let rep = methods::igr_rank(&adversarial(), &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("adv.tsv");
        repute::files::write_dataset(&path, &adversarial()).unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_repute"))
            .args(["rank", "--method", "igr", "--strict"])
            .arg(&path)
            .output()
            .unwrap()
            .status;
        !rep.converged && rep.iterations == cfg.max_iterations && status.code() == Some(3)
    };
    let Some(d) = d else {
        r.record(15, Status::Skip, "convergence bookkeeping", format!("MovieLens-100K not found; adversarial case flagged: {flagged}"));
        return;
    };
    let mut parts = Vec::new();
    let mut ok = flagged;
    for m in [Method::Igr, Method::Ir, Method::Cr, Method::Rr] {
        let rep = m.rank(d, &cfg).unwrap();
        let change = rep.final_change.unwrap_or(f64::NAN);
        ok &= rep.converged && change < 1e-4 && rep.iterations <= 1000;
        parts.push(format!("{m}: {} iterations, change {change:.2e}", rep.iterations));
    }
    parts.push(format!("adversarial IGR flagged unconverged: {flagged}"));
    r.check(15, "convergence bookkeeping", ok, parts.join("; "));
}

fn main() {
    let mut report = Report { rows: Vec::new() };
    let d = corpus();
    corpus_criteria(&mut report, d.as_ref());
    degeneration(&mut report);
    auc_oracle(&mut report);
    reward_normalization(&mut report);
    random_baseline(&mut report);
    injection_soundness(&mut report);
    determinism(&mut report);
    convergence(&mut report, d.as_ref());

    let count = |s: Status| report.rows.iter().filter(|r| r.1 == s).count();
    let unexpected: Vec<u8> = report
        .rows
        .iter()
        .filter(|r| r.1 == Status::Fail && !EXPECTED_RED.contains(&r.0))
        .map(|r| r.0)
        .collect();
    for n in EXPECTED_RED {
        if report.rows.iter().any(|r| r.0 == n && r.1 == Status::Pass) {
            println!("note: criterion {n} was expected to fail but passed");
        }
    }
    println!(
        "acceptance: {} passed, {} failed ({} known), {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Fail) - unexpected.len(),
        count(Status::Skip)
    );
    let strict = std::env::var("REPUTE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if !unexpected.is_empty() || (strict && count(Status::Fail) > 0) {
        std::process::exit(1);
    }
}
