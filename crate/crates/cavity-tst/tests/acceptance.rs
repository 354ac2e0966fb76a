//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use cavity_tst::csv::write_csv;
use cavity_tst::preset::{preset, NAMES};
use cavity_tst::sweep::{run_all, Column, RunConfig, SweepSpec, SweepVariable};
use cavity_tst_core::hessian::{barrier_hessian, well_hessian};
use cavity_tst_core::model::coupling_g;
use cavity_tst_core::perturbation::{barrier_freqs_pert, optimal_cavity_frequency, zpe_shift_pert};
use cavity_tst_core::rates::{branching_ratio, kappa_centroid};
use cavity_tst_core::spectrum::{
    barrier_spectrum, eig_symmetric, eigvals_2x2, frequency_sum_exact, well_spectrum, DEFAULT_TOL,
};
use cavity_tst_core::{
    CavitySetup, ChannelSpec, CorrectionBreakdown, CouplingMode, Error, ReactionParams, SharedConditions,
    SymmetricMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rp(omega_b: f64, eta: f64, eta_b: f64) -> ReactionParams {
    ReactionParams { omega: 1.0, omega_b, e_a: 0.0, eta, eta_b }
}

fn cs(omega_c: f64, beta: f64) -> CavitySetup {
    CavitySetup { omega_c, n_molecules: 1, mode: CouplingMode::Incoherent, beta }
}

fn breakdown(p: &ReactionParams, c: &CavitySetup) -> CorrectionBreakdown {
    CorrectionBreakdown::compute(p, c).expect("valid point")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Inclusive grid `start, start + step, ..., stop`.
fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

/// Minimum of a unimodal function on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Grid argmin refined by golden section between the neighbouring nodes.
fn argmin_on(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> f64 {
    let xs = grid(lo, hi, step);
    let i = (0..xs.len()).min_by(|&i, &j| f(xs[i]).total_cmp(&f(xs[j]))).unwrap();
    let a = xs[i.saturating_sub(1)];
    let b = xs[(i + 1).min(xs.len() - 1)];
    golden_min(f, a, b)
}

fn c1_oracle_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let m = SymmetricMatrix::new_2x2(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let (hi, lo) = eigvals_2x2(&m).unwrap();
        let mut it = eig_symmetric(&m, DEFAULT_TOL).unwrap();
        it.sort_by(|a, b| b.total_cmp(a));
        worst = worst.max((hi - it[0]).abs()).max((lo - it[1]).abs());
    }
    outcome(worst <= 1e-12, format!("max |closed - iterative| = {worst:.3e} over 10^4 matrices (tol 1e-12)"))
}

fn random_params(rng: &mut ChaCha8Rng) -> (ReactionParams, f64) {
    let p = ReactionParams {
        omega: 1.0,
        omega_b: rng.gen_range(0.25..2.0),
        e_a: 0.0,
        eta: rng.gen_range(0.0..0.2),
        eta_b: rng.gen_range(0.0..0.2),
    };
    (p, rng.gen_range(0.1..4.0))
}

fn c2_det_trace(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (p, wc) = random_params(rng);
        let n = rng.gen_range(2..=64u32);
        let mode = if rng.gen_bool(0.5) { CouplingMode::Coherent } else { CouplingMode::Incoherent };
        let (w2, b2, c2) = (p.omega * p.omega, p.omega_b * p.omega_b, wc * wc);
        let g = coupling_g(p.eta, p.omega, wc).unwrap();
        let gb = coupling_g(p.eta_b, p.omega, wc).unwrap();
        let nf = f64::from(n);
        let mut check = |m: &SymmetricMatrix, det: f64, tr: f64| {
            let ev = eig_symmetric(m, DEFAULT_TOL).unwrap();
            let prod: f64 = ev.iter().product();
            let sum: f64 = ev.iter().sum();
            worst = worst.max(rel(m.determinant(), det)).max(rel(prod, det));
            worst = worst.max(rel(m.trace(), tr)).max(rel(sum, tr));
        };
        let (m, _) = well_hessian(&p, &cs(wc, 10.0)).unwrap();
        check(&m, w2 * c2, w2 + g * g * c2 + c2);
        let (m, _) = barrier_hessian(&p, &cs(wc, 10.0)).unwrap();
        check(&m, -b2 * c2, -b2 + gb * gb * c2 + c2);
        let setup = CavitySetup { n_molecules: n, mode, ..cs(wc, 10.0) };
        let (m, _) = well_hessian(&p, &setup).unwrap();
        check(&m, w2 * c2, w2 + nf * g * g * c2 + c2);
        let (m, _) = barrier_hessian(&p, &setup).unwrap();
        match mode {
            CouplingMode::Coherent => check(&m, -b2 * c2, -b2 + nf * gb * gb * c2 + c2),
            CouplingMode::Incoherent => {
                check(&m, -b2 * w2 * c2, -b2 + gb * gb * c2 + w2 + (nf - 1.0) * g * g * c2 + c2)
            }
        }
    }
    outcome(worst <= 1e-12, format!("max relative deviation = {worst:.3e} over 10^3 draws (tol 1e-12)"))
}

fn c3_frequency_sum(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (p, wc) = random_params(rng);
        let setup = CavitySetup { n_molecules: rng.gen_range(1..=64), ..cs(wc, 10.0) };
        let ws = well_spectrum(&p, &setup).unwrap();
        worst = worst.max(rel(frequency_sum_exact(&p, &setup).unwrap(), ws.lambda_plus + ws.lambda_minus));
    }
    outcome(worst <= 1e-12, format!("max relative deviation = {worst:.3e} over 10^3 draws (tol 1e-12)"))
}

fn c4_test_point() -> Outcome {
    let (p, c) = (rp(0.5, 0.1, 0.1), cs(1.0, 10.0));
    let ws = well_spectrum(&p, &c).unwrap();
    let bs = barrier_spectrum(&p, &c).unwrap();
    let b = breakdown(&p, &c);
    let checks = [
        ("lambda_plus", ws.lambda_plus, 1.104988, 1e-5),
        ("lambda_minus", ws.lambda_minus, 0.904988, 1e-5),
        ("lambda_b", bs.stable[0], 1.015972, 1e-5),
        ("lambda_unstable", bs.lambda_unstable, 0.492138, 1e-5),
        ("S", b.s_shift, -0.005996, 1e-5),
        ("kappa", b.kappa, 0.9704, 1e-3),
        ("kappa_gh", b.kappa_gh, 0.98428, 1e-4),
        ("kappa_zpe", b.kappa_zpe, 0.97046, 1e-4),
        ("kappa_centroid", b.kappa_centroid.unwrap_or(f64::NAN), 0.908, 2e-3),
    ];
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, got, want, tol)| (got - want).abs().is_nan() || (got - want).abs() > *tol)
        .map(|(name, got, want, _)| format!("{name}={got:.6} (want {want})"))
        .collect();
    if bad.is_empty() {
        outcome(true, format!("all {} values within tolerance", checks.len()))
    } else {
        outcome(false, bad.join(", "))
    }
}

fn c5_perturbation() -> Outcome {
    let (mut worst_s, mut at_s) = (0.0f64, (0.0, 0.0));
    let mut worst_l = 0.0f64;
    for eta in [0.01, 0.025, 0.05, 0.075, 0.1] {
        for wc in grid(0.2, 3.0, 0.005) {
            let (p, c) = (rp(0.5, eta, eta), cs(wc, 10.0));
            let exact = breakdown(&p, &c).s_shift;
            let e = (zpe_shift_pert(&p, &c).unwrap() - exact).abs() / exact.abs().max(1e-6);
            if e > worst_s {
                (worst_s, at_s) = (e, (eta, wc));
            }
            let lu = barrier_spectrum(&p, &c).unwrap().lambda_unstable;
            worst_l = worst_l.max((barrier_freqs_pert(&p, &c).unwrap().1 - lu).abs() / p.omega_b);
        }
    }
    outcome(
        worst_s <= 0.05 && worst_l <= 0.01,
        format!(
            "max S relative error = {worst_s:.3e} at eta={}, omega_c={:.3} (tol 5e-2); \
             max lambda_unstable error / omega_b = {worst_l:.3e} (tol 1e-2)",
            at_s.0, at_s.1
        ),
    )
}

fn c6_gh_minimum() -> Outcome {
    let mut worst = 0.0f64;
    for eta_b in [0.05, 0.1] {
        for omega_b in [0.5, 1.5] {
            let p = rp(omega_b, 0.1, eta_b);
            let lu = |wc: f64| barrier_spectrum(&p, &cs(wc, 10.0)).unwrap().lambda_unstable;
            let argmin = golden_min(lu, 0.02, 4.0);
            worst = worst.max((argmin - optimal_cavity_frequency(&p).unwrap()).abs());
        }
    }
    let anchor = optimal_cavity_frequency(&rp(0.5, 0.1, 0.1)).unwrap();
    let anchor_ok = (anchor - 0.409902).abs() <= 1e-4;
    outcome(
        worst <= 1e-4 && anchor_ok,
        format!(
            "max |argmin - root| = {worst:.3e} (tol 1e-4); root at eta_b=0.1, omega_b=0.5 is {anchor:.6} \
             (anchor 0.409902)"
        ),
    )
}

fn c7_resonance() -> Outcome {
    let p = rp(0.5, 0.1, 0.1);
    let kappa = |wc: f64| breakdown(&p, &cs(wc, 10.0)).kappa;
    let argmin = argmin_on(kappa, 0.25, 4.0, 0.005);
    let mut worst = 0.0f64;
    for wc in grid(0.25, 4.0, 0.005) {
        let b = breakdown(&p, &cs(wc, 0.1));
        worst = worst.max(rel(b.kappa, b.kappa_gh));
    }
    outcome(
        (0.8..=1.2).contains(&argmin) && worst <= 0.02,
        format!("argmin kappa at beta=10: omega_c = {argmin:.6} (want [0.8, 1.2]); max |kappa/kappa_gh - 1| at beta=0.1 = {worst:.3e} (tol 2e-2)"),
    )
}

fn c8_enhancement() -> Outcome {
    let p = rp(1.5, 0.1, 0.1);
    let kappa = |wc: f64| breakdown(&p, &cs(wc, 10.0)).kappa;
    let at_one = kappa(1.0);
    let argmax = argmin_on(|wc| -kappa(wc), 0.25, 4.0, 0.005);
    outcome(
        at_one > 1.0 && (0.8..=1.2).contains(&argmax),
        format!("kappa(omega_c=1) = {at_one:.6} (want > 1); argmax = {argmax:.4} (want [0.8, 1.2])"),
    )
}

fn c9_collectivity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_scale = 0.0f64;
    for _ in 0..200 {
        let (eta, eta_b) = (rng.gen_range(0.0..0.1), rng.gen_range(0.0..0.1));
        let wc = rng.gen_range(0.2..4.0);
        let n = rng.gen_range(1..=64u32);
        let coherent = CavitySetup { n_molecules: n, mode: CouplingMode::Coherent, ..cs(wc, 10.0) };
        let k_n = breakdown(&rp(0.5, eta, eta_b), &coherent).kappa;
        let s = f64::from(n).sqrt();
        let k_1 = breakdown(&rp(0.5, eta * s, eta_b * s), &cs(wc, 10.0)).kappa;
        worst_scale = worst_scale.max((k_n - k_1).abs());
    }
    let mut worst_ratio = 0.0f64;
    for eta in [0.05, 0.1] {
        let p = rp(0.5, eta, eta);
        for wc in grid(0.25, 4.0, 0.05) {
            let g = coupling_g(eta, 1.0, wc).unwrap();
            let s1 = breakdown(&p, &cs(wc, 10.0)).s_shift;
            for n in [2u32, 4, 8, 16, 32, 64] {
                let c = CavitySetup { n_molecules: n, ..cs(wc, 10.0) };
                let bound = 10.0 * f64::from(n) * g.powi(4);
                worst_ratio = worst_ratio.max((breakdown(&p, &c).s_shift - s1).abs() / bound);
            }
        }
    }
    let p = rp(0.5, 0.1, 0.1);
    let at16 = |mode| breakdown(&p, &CavitySetup { n_molecules: 16, mode, ..cs(1.0, 10.0) }).kappa;
    let (dc, di) = ((at16(CouplingMode::Coherent) - 1.0).abs(), (at16(CouplingMode::Incoherent) - 1.0).abs());
    outcome(
        worst_scale <= 1e-12 && worst_ratio <= 1.0 && dc > 10.0 * di,
        format!(
            "coherent vs rescaled single: {worst_scale:.3e} (tol 1e-12); max |S(N)-S(1)| / (10 N g^4) = \
             {worst_ratio:.3e} (want <= 1); N=16 |kappa-1| coherent {dc:.3e} vs incoherent {di:.3e}"
        ),
    )
}

fn c10_selectivity() -> Outcome {
    let ch1 = ChannelSpec { omega_b: 0.5, eta_b: 0.1, e_a: 0.0 };
    let phi = |eta_b2: f64, wc: f64| {
        let shared = SharedConditions {
            omega: 1.0,
            eta: 0.1,
            omega_c: wc,
            beta: 5.0,
            n_molecules: 1,
            mode: CouplingMode::Incoherent,
        };
        branching_ratio(&ch1, &ChannelSpec { omega_b: 1.2, eta_b: eta_b2, e_a: 0.0 }, &shared).unwrap()
    };
    let (lo, hi) = (phi(0.12, 0.1), phi(0.12, 4.0));
    let max_equal = grid(0.005, 4.0, 0.005).into_iter().map(|wc| phi(0.1, wc)).fold(f64::MIN, f64::max);
    let shared = SharedConditions {
        omega: 1.0,
        eta: 0.1,
        omega_c: 1.3,
        beta: 5.0,
        n_molecules: 1,
        mode: CouplingMode::Incoherent,
    };
    let same = branching_ratio(&ch1, &ch1, &shared).unwrap();
    outcome(
        lo < 0.5 && hi > 0.5 && max_equal < 0.5 && same == 0.5,
        format!(
            "eta_b2=0.12: phi1(0.1) = {lo:.6}, phi1(4) = {hi:.6}; eta_b2=0.1: max phi1 = {max_equal:.6}; \
             identical channels: {same}"
        ),
    )
}

fn c11_crossover(rng: &mut ChaCha8Rng) -> Outcome {
    let mut mismatches = 0;
    for _ in 0..2000 {
        let p = rp(rng.gen_range(0.1..2.0), rng.gen_range(0.0..0.2), rng.gen_range(0.0..0.2));
        let c = cs(rng.gen_range(0.1..4.0), rng.gen_range(0.5..40.0));
        let ws = well_spectrum(&p, &c).unwrap();
        let bs = barrier_spectrum(&p, &c).unwrap();
        let expect = p.omega_b.max(bs.lambda_unstable) * c.beta / 2.0 >= std::f64::consts::PI;
        let got =
            matches!(kappa_centroid(&ws, &bs, c.beta, p.omega, p.omega_b), Err(Error::CrossoverTemperature { .. }));
        if got != expect {
            mismatches += 1;
        }
    }
    let mut cfg =
        RunConfig::new(rp(0.5, 0.1, 0.1), cs(1.0, 10.0), SweepSpec::linear(SweepVariable::Beta, 1.0, 20.0, 96));
    cfg.include_centroid = true;
    cfg.columns = cfg.default_columns();
    let table = run_all(std::slice::from_ref(&cfg), None).unwrap();
    let (bi, ci, si) = (
        table.column_index(Column::Value).unwrap(),
        table.column_index(Column::KappaCentroid).unwrap(),
        table.column_index(Column::Status).unwrap(),
    );
    let mut marked = 0;
    let mut sweep_ok = table.rows.len() == 96;
    for row in &table.rows {
        let beta = match row[bi] {
            cavity_tst::sweep::Cell::Num(b) => b,
            _ => f64::NAN,
        };
        let lu = barrier_spectrum(&cfg.reaction, &cs(1.0, beta)).unwrap().lambda_unstable;
        let crossed = 0.5f64.max(lu) * beta / 2.0 >= std::f64::consts::PI;
        let status = matches!(&row[si], cavity_tst::sweep::Cell::Text(s) if s.contains("crossover"));
        let empty = row[ci] == cavity_tst::sweep::Cell::Empty;
        sweep_ok &= status == crossed && empty == crossed;
        marked += usize::from(status);
    }
    outcome(
        mismatches == 0 && sweep_ok && marked > 0,
        format!(
            "{mismatches} mismatches over 2000 draws; beta sweep 1..20 completed with {marked} of {} rows \
             marked crossover",
            table.rows.len()
        ),
    )
}

fn c12_robustness() -> Outcome {
    let mut worst = 0.0f64;
    let mut finite = true;
    for wc in grid(0.25, 4.0, 0.25) {
        for omega_b in [0.5, 1.5] {
            let b = breakdown(&rp(omega_b, 0.1, 0.1), &cs(wc, 1e4));
            finite &= b.kappa.is_finite() && b.kappa > 0.0;
            worst = worst.max(rel(b.kappa, b.kappa_zpe));
        }
    }
    outcome(
        finite && worst <= 1e-6,
        format!("beta=1e4: all finite = {finite}; max |kappa/kappa_zpe - 1| = {worst:.3e} (tol 1e-6)"),
    )
}

fn csv_bytes(name: &str, threads: Option<usize>) -> Vec<u8> {
    let table = preset(name).unwrap().run(threads).unwrap();
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).unwrap();
    buf
}

fn c13_determinism() -> Outcome {
    let start = Instant::now();
    let mut differing = Vec::new();
    for name in NAMES {
        let reference = csv_bytes(name, Some(1));
        let same = [Some(1), Some(4), None].into_iter().all(|t| csv_bytes(name, t) == reference);
        if !same {
            differing.push(name);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        differing.is_empty(),
        format!(
            "{} presets x 4 runs (threads 1, 1, 4, default) in {secs:.2} s; differing: {:?}",
            NAMES.len(),
            differing
        ),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let results = [
        ("1 oracle equivalence", c1_oracle_equivalence(&mut rng)),
        ("2 determinant/trace invariance", c2_det_trace(&mut rng)),
        ("3 frequency-sum identity", c3_frequency_sum(&mut rng)),
        ("4 test-point regression", c4_test_point()),
        ("5 perturbation calibration", c5_perturbation()),
        ("6 Grote-Hynes minimum", c6_gh_minimum()),
        ("7 quantum resonance location", c7_resonance()),
        ("8 enhancement regime", c8_enhancement()),
        ("9 collectivity contrast", c9_collectivity(&mut rng)),
        ("10 selectivity switch", c10_selectivity()),
        ("11 centroid crossover", c11_crossover(&mut rng)),
        ("12 numerical robustness", c12_robustness()),
        ("13 determinism", c13_determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
