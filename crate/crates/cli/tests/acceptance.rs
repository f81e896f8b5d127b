//! Acceptance criteria, one PASS/FAIL line each, plus diagnostic lines for
//! the comparisons that are expected to disagree.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rayon::prelude::*;

use qwig_core::branching::{branch_candidates, index_sets, BranchingData};
use qwig_core::invariants::{chi_c1, chi_v};
use qwig_core::oracle::extract::Setup;
use qwig_core::oracle::realize::realize;
use qwig_core::oracle::suite::{run_suite, Status, Suite, SuiteOptions, SuiteReport};
use qwig_core::superweight::{check_generic, Signature, Weight};
use qwig_core::wigner::{
    coupled_table, gamma, gamma_unshifted_phase, linear_residuals, mu, omega, omega_classical, omega_coupled,
    omega_coupled_unshifted, Form, MuConvention, Variant, WignerError,
};
use qwig_core::QFraction;

const VARIANTS: [Variant; 2] = [Variant::Lower, Variant::Raise];

fn sig(m: usize, n: usize) -> Signature {
    Signature::new(m, n).expect("valid signature")
}

/// Counters for one pass over the sweep.
#[derive(Default, Debug)]
struct Tally {
    weights: usize,
    generic_weights: usize,
    branchings: usize,
    /// Tables skipped because the shifted subalgebra roots coincide.
    degenerate_tables: usize,
    sum_fail: Vec<String>,
    vanish_checked: usize,
    vanish_fail: Vec<String>,
    residuals: usize,
    residuals_undefined: usize,
    residual_fail: Vec<String>,
    forms: usize,
    form_fail: Vec<String>,
    mu_forms: usize,
    mu_form_fail: Vec<String>,
    limits: usize,
    limit_fail: Vec<String>,
    chi_v_fail: Vec<String>,
    // diagnostics
    unshifted_gamma: usize,
    unshifted_gamma_differ: usize,
    unshifted_coupled: usize,
    unshifted_coupled_differ: usize,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.weights += o.weights;
        self.generic_weights += o.generic_weights;
        self.branchings += o.branchings;
        self.degenerate_tables += o.degenerate_tables;
        self.sum_fail.extend(o.sum_fail);
        self.vanish_checked += o.vanish_checked;
        self.vanish_fail.extend(o.vanish_fail);
        self.residuals += o.residuals;
        self.residuals_undefined += o.residuals_undefined;
        self.residual_fail.extend(o.residual_fail);
        self.forms += o.forms;
        self.form_fail.extend(o.form_fail);
        self.mu_forms += o.mu_forms;
        self.mu_form_fail.extend(o.mu_form_fail);
        self.limits += o.limits;
        self.limit_fail.extend(o.limit_fail);
        self.chi_v_fail.extend(o.chi_v_fail);
        self.unshifted_gamma += o.unshifted_gamma;
        self.unshifted_gamma_differ += o.unshifted_gamma_differ;
        self.unshifted_coupled += o.unshifted_coupled;
        self.unshifted_coupled_differ += o.unshifted_coupled_differ;
        self
    }
}

/// Every dominant integral weight with components in `[-2, 3]`.
fn sweep_weights(s: Signature) -> Vec<Weight> {
    let d = s.d();
    let mut out = Vec::new();
    let mut cur = vec![-2i64; d];
    loop {
        let w = Weight::from_ints(s, &cur).expect("integral weight");
        if w.is_dominant() {
            out.push(w);
        }
        let mut p = d;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if cur[p] < 3 {
                cur[p] += 1;
                for c in cur.iter_mut().skip(p + 1) {
                    *c = -2;
                }
                break;
            }
        }
    }
}

/// `V(L -/+ e_k)` has no subalgebra component `L0`, so the coefficient that
/// couples them must vanish.
fn excluded_vanishes(b: &BranchingData, variant: Variant, k: usize) -> bool {
    let mut l = b.lam_ints.clone();
    l[k - 1] += match variant {
        Variant::Lower => -1,
        Variant::Raise => 1,
    };
    let shifted = Weight::from_ints(b.sig(), &l).expect("integral weight");
    !shifted.is_dominant() || index_sets(&shifted, &b.lam0).is_err()
}

fn check_branching(b: &BranchingData, t: &mut Tally) {
    let tag = |v: Variant| format!("{} / {} {v}", b.lam, b.lam0);
    for v in VARIANTS {
        let rp = match omega(b, v, Form::RootProduct) {
            Ok(x) => x,
            Err(WignerError::DegenerateRoots(_)) => {
                t.degenerate_tables += 1;
                continue;
            }
            Err(e) => panic!("{}: {e}", tag(v)),
        };
        // 1. sum rule
        if rp.sum() != QFraction::from_int(1) {
            t.sum_fail.push(format!("{}: sum {}", tag(v), rp.sum()));
        }
        // 2. vanishing on the excluded set
        let excluded = match v {
            Variant::Lower => &b.i0bar,
            Variant::Raise => &b.i0,
        };
        for &k in excluded {
            t.vanish_checked += 1;
            if rp.entries.contains_key(&(k, None)) || !excluded_vanishes(b, v, k) {
                t.vanish_fail.push(format!("{}: k={k}", tag(v)));
            }
        }
        // 3. linear systems
        match linear_residuals(b, v) {
            Ok(rs) => {
                for (r, x) in rs {
                    match x {
                        None => t.residuals_undefined += 1,
                        Some(x) => {
                            t.residuals += 1;
                            if !x.is_zero_value() {
                                t.residual_fail.push(format!("{}: r={r} residual {x}", tag(v)));
                            }
                        }
                    }
                }
            }
            Err(e) => t.residual_fail.push(format!("{}: {e}", tag(v))),
        }
        // 4. form equivalence for omega and the coupled table
        t.forms += 1;
        match omega(b, v, Form::QNumberPhase) {
            Ok(qp) if qp.entries == rp.entries => {}
            Ok(_) => t.form_fail.push(format!("{}: omega forms differ", tag(v))),
            Err(e) => t.form_fail.push(format!("{}: omega q-phase {e}", tag(v))),
        }
        match coupled_table(b, v, Form::RootProduct) {
            Ok(crp) => {
                t.forms += 1;
                match coupled_table(b, v, Form::QNumberPhase) {
                    Ok(cqp) if cqp.entries == crp.entries => {}
                    Ok(_) => t.form_fail.push(format!("{}: coupled forms differ", tag(v))),
                    Err(e) => t.form_fail.push(format!("{}: coupled q-phase {e}", tag(v))),
                }
                for (&(k, r), val) in &crp.entries {
                    let r = r.expect("coupled key");
                    t.unshifted_coupled += 1;
                    match omega_coupled_unshifted(b, k, r, v) {
                        Ok(u) if &u == val => {}
                        _ => t.unshifted_coupled_differ += 1,
                    }
                    debug_assert_eq!(omega_coupled(b, k, r, v, Form::RootProduct).as_ref(), Ok(val));
                }
                // mu and gamma, indexed by the admissible r
                let rs: Vec<usize> = match v {
                    Variant::Lower => b.i0.iter().chain(&b.i1).copied().collect(),
                    Variant::Raise => b.i0bar.iter().chain(&b.i1).copied().collect(),
                };
                for r in rs {
                    t.mu_forms += 1;
                    let a = mu(b, r, v, Form::RootProduct, MuConvention::CoupledLabel);
                    let q = mu(b, r, v, Form::QNumberPhase, MuConvention::CoupledLabel);
                    if a.is_err() || a != q {
                        t.mu_form_fail.push(format!("{}: mu_{r} {a:?} vs {q:?}", tag(v)));
                    }
                    let g = gamma(b, r, v, Form::RootProduct);
                    if g != gamma(b, r, v, Form::QNumberPhase) {
                        t.mu_form_fail.push(format!("{}: gamma_{r} forms differ", tag(v)));
                    }
                    t.unshifted_gamma += 1;
                    if gamma_unshifted_phase(b, r, v) != g {
                        t.unshifted_gamma_differ += 1;
                    }
                }
            }
            Err(WignerError::DegenerateRoots(_)) => t.degenerate_tables += 1,
            Err(e) => t.form_fail.push(format!("{}: coupled {e}", tag(v))),
        }
        // 9. classical limit of omega~
        if v == Variant::Raise {
            let cl = omega_classical(b, v).expect("same roots as the table");
            for (&(k, _), val) in &rp.entries {
                t.limits += 1;
                match val.limit_q1() {
                    Ok(x) if Some(&x) == cl.get(&k) => {}
                    other => t.limit_fail.push(format!("{}: k={k} limit {other:?} vs {:?}", tag(v), cl.get(&k))),
                }
            }
        }
    }
}

fn check_weight(lam: &Weight) -> Tally {
    let mut t = Tally { weights: 1, ..Default::default() };
    let prod = chi_v(lam, false).expect("dominant") * chi_v(lam, true).expect("dominant");
    if prod != QFraction::from_int(1) {
        t.chi_v_fail.push(format!("{lam}: {prod}"));
    }
    if !check_generic(lam).expect("dominant").generic() {
        return t;
    }
    t.generic_weights = 1;
    for l0 in branch_candidates(lam).expect("dominant") {
        let b = index_sets(lam, &l0).expect("candidate interlaces");
        t.branchings += 1;
        check_branching(&b, &mut t);
    }
    t
}

/// Sum rules alone: the count of generic branchings and any failures.
fn sum_rule_sweep(weights: &[Weight]) -> (usize, Vec<String>) {
    weights
        .par_iter()
        .filter(|lam| check_generic(lam).expect("dominant").generic())
        .flat_map_iter(|lam| {
            let cands = branch_candidates(lam).expect("dominant");
            cands.into_iter().map(move |l0| index_sets(lam, &l0).expect("candidate interlaces"))
        })
        .map(|b| {
            let mut fails = Vec::new();
            let mut generic = false;
            for v in VARIANTS {
                match omega(&b, v, Form::RootProduct) {
                    Ok(t) => {
                        generic = true;
                        if t.sum() != QFraction::from_int(1) {
                            fails.push(format!("{} / {} {v}: sum {}", b.lam, b.lam0, t.sum()));
                        }
                    }
                    Err(WignerError::DegenerateRoots(_)) => {}
                    Err(e) => fails.push(format!("{} / {} {v}: {e}", b.lam, b.lam0)),
                }
            }
            (usize::from(generic), fails)
        })
        .reduce(|| (0, Vec::new()), |mut a, b| {
            a.0 += b.0;
            a.1.extend(b.1);
            a
        })
}

trait ExactZero {
    fn is_zero_value(&self) -> bool;
}

impl ExactZero for QFraction {
    fn is_zero_value(&self) -> bool {
        *self == QFraction::from_int(0)
    }
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed += 1;
        }
    }

    fn diag(&self, id: &str, detail: String) {
        println!("DIAG {id}: {detail}");
    }
}

fn first(v: &[String]) -> String {
    v.first().cloned().map(|s| format!("; first: {s}")).unwrap_or_default()
}

fn suite_counts(reports: &[SuiteReport]) -> (usize, usize, usize, Vec<String>) {
    let mut pass = 0;
    let mut skip = 0;
    let mut fail = 0;
    let mut notes = Vec::new();
    for r in reports {
        for c in &r.cases {
            match (c.status, c.diagnostic) {
                (Status::Pass, _) => pass += 1,
                (Status::Skip, _) => skip += 1,
                (Status::Fail, true) => {}
                (Status::Fail, false) => {
                    fail += 1;
                    notes.push(format!("gl({}|{}) {} {}", r.m, r.n, c.check, c.inputs));
                }
            }
        }
    }
    (pass, skip, fail, notes)
}

fn exact_suites(suites: &[Suite], sigs: &[Signature]) -> Vec<SuiteReport> {
    let opts = SuiteOptions::default();
    sigs.iter().flat_map(|&s| suites.iter().map(move |&x| run_suite(s, x, &opts))).collect()
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_qwig")).args(args).output().expect("qwig runs");
    assert!(out.status.success(), "qwig {args:?} failed");
    out.stdout
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    let small = [sig(1, 1), sig(2, 1), sig(1, 2)];

    let weights: Vec<Weight> = (1..=3).flat_map(|m| (1..=2).map(move |n| sig(m, n))).flat_map(sweep_weights).collect();

    // 1. the sum-rule sweep on its own, against the runtime target
    let t0 = Instant::now();
    let (count, sum_fail) = sum_rule_sweep(&weights);
    let secs = t0.elapsed().as_secs_f64();
    rep.line(
        "1 (sum rules)",
        sum_fail.is_empty() && count >= 1000 && secs < 60.0,
        format!("{count} generic branchings, both kinds, {secs:.1}s{}", first(&sum_fail)),
    );

    // full cross-check sweep for criteria 1-4, 8 (chi_v) and 9
    let t0 = Instant::now();
    let t = weights.par_iter().map(check_weight).reduce(Tally::default, Tally::merge);
    let secs = t0.elapsed().as_secs_f64();
    rep.diag(
        "sweep",
        format!(
            "{} dominant weights, {} generic, {} branchings, {} degenerate tables skipped, {secs:.1}s",
            t.weights, t.generic_weights, t.branchings, t.degenerate_tables
        ),
    );
    rep.line("1 (sum rules, all tables)", t.sum_fail.is_empty(), format!("{} failures{}", t.sum_fail.len(), first(&t.sum_fail)));
    rep.line(
        "2 (vanishing rules)",
        t.vanish_fail.is_empty() && t.vanish_checked > 0,
        format!("{} excluded indices checked{}", t.vanish_checked, first(&t.vanish_fail)),
    );
    rep.line(
        "3 (linear systems)",
        t.residual_fail.is_empty() && t.residuals > 0,
        format!("{} residuals zero, {} undefined (a_k = s_r){}", t.residuals, t.residuals_undefined, first(&t.residual_fail)),
    );
    rep.line(
        "4 (form equivalence)",
        t.form_fail.is_empty() && t.forms > 0,
        format!("{} omega/coupled tables agree{}", t.forms, first(&t.form_fail)),
    );
    rep.line(
        "4 (mu shift convention)",
        t.mu_form_fail.is_empty() && t.mu_forms > 0,
        format!("{} mu entries agree across forms{}", t.mu_forms, first(&t.mu_form_fail)),
    );
    rep.diag(
        "4 unshifted gamma phase",
        format!("{} of {} differ from the root-product form", t.unshifted_gamma_differ, t.unshifted_gamma),
    );
    rep.diag(
        "4 unshifted coupled q-numbers",
        format!("{} of {} differ from the root-product form", t.unshifted_coupled_differ, t.unshifted_coupled),
    );

    // 5. characteristic identities on realized modules
    let t0 = Instant::now();
    let reports = exact_suites(&[Suite::Charid], &small);
    let secs = t0.elapsed().as_secs_f64();
    let (p, s, f, notes) = suite_counts(&reports);
    rep.line(
        "5 (characteristic identities)",
        f == 0 && p > 0 && secs < 120.0,
        format!("{p} pass, {s} degenerate skipped, {f} fail, {secs:.1}s{}", first(&notes)),
    );

    // 6. oracle equality
    let reports = exact_suites(&[Suite::Wigner, Suite::Coupled], &small);
    let (p, s, f, notes) = suite_counts(&reports);
    let two = QFraction::qnum(2);
    let w = realize::<QFraction>(sig(1, 1), &[1, 0], ()).expect("vector module");
    let got = Setup::new(&w, &[1, 0], Variant::Raise).and_then(|st| st.wigner(&[1])).map(|r| r.values);
    let want = vec![Some(QFraction::qhalf(-2).checked_div(&two).unwrap()), Some(QFraction::qhalf(2).checked_div(&two).unwrap())];
    let example = got.as_ref().ok() == Some(&want);
    rep.line(
        "6 (oracle equality)",
        f == 0 && p > 0 && example,
        format!("{p} pass, {s} skipped, {f} fail, gl(1|1) vector table {}{}", if example { "matches" } else { "differs" }, first(&notes)),
    );

    // 7. R-matrix identities
    let mut reports = exact_suites(&[Suite::Qybe, Suite::Coproduct], &small);
    for q0 in [0.7, 2.0] {
        let opts = SuiteOptions { numeric: Some(q0), ..Default::default() };
        reports.push(run_suite(sig(2, 2), Suite::Qybe, &opts));
        reports.push(run_suite(sig(2, 2), Suite::Coproduct, &opts));
    }
    let (p, _, f, notes) = suite_counts(&reports);
    let worst = reports.iter().filter(|r| r.numeric.is_some()).flat_map(|r| &r.cases).map(|c| c.residual).fold(0.0, f64::max);
    rep.line(
        "7 (R-matrix identities)",
        f == 0 && p > 0,
        format!("{p} pass, {f} fail, gl(2|2) worst relative residual {worst:.1e}{}", first(&notes)),
    );

    // 8. invariants
    let reports = exact_suites(&[Suite::Invariants], &small);
    let (p, _, f, notes) = suite_counts(&reports);
    let mut zero_fail = Vec::new();
    for m in 0..=4 {
        for n in 0..=4 {
            let Ok(s) = Signature::new(m, n) else { continue };
            let v = chi_c1(&Weight::zero(s), false).expect("zero weight");
            if v != QFraction::from_int(0) {
                zero_fail.push(format!("gl({m}|{n}): {v}"));
            }
        }
    }
    rep.line(
        "8 (invariant eigenvalues)",
        f == 0 && p > 0 && zero_fail.is_empty() && t.chi_v_fail.is_empty(),
        format!(
            "{p} supertraces match, chi_C1(0) = 0 {}, chi_v reciprocity on {} weights{}{}{}",
            if zero_fail.is_empty() { "everywhere" } else { "fails" },
            t.weights,
            first(&notes),
            first(&zero_fail),
            first(&t.chi_v_fail)
        ),
    );
    let tilde: Vec<_> = reports.iter().flat_map(|r| &r.cases).filter(|c| c.diagnostic).collect();
    let tilde_differ = tilde.iter().filter(|c| c.status == Status::Fail).count();
    rep.diag(
        "8 C1~ closed form vs Atilde supertrace",
        format!(
            "{tilde_differ} of {} differ{}",
            tilde.len(),
            tilde.iter().find(|c| c.status == Status::Fail).and_then(|c| c.note.clone()).map(|n| format!("; e.g. {n}")).unwrap_or_default()
        ),
    );

    // 9. classical limit
    rep.line(
        "9 (classical limit)",
        t.limit_fail.is_empty() && t.limits > 0,
        format!("{} limits equal the classical product{}", t.limits, first(&t.limit_fail)),
    );

    // 10. determinism
    let cases: [&[&str]; 4] = [
        &["wigner", "--weight", "1,0|0", "--lower", "0,0", "--kind", "lower"],
        &["wigner", "--weight", "2,1|1", "--lower", "2,0", "--kind", "raise", "--coupled", "--form", "both"],
        &["invariants", "--weight", "1,0|0"],
        &["verify", "--m", "2", "--n", "1", "--suite", "all", "--kmax", "2"],
    ];
    let same = cases.iter().all(|a| run_cli(a) == run_cli(a));
    rep.line("10 (determinism)", same, format!("{} invocations run twice", cases.len()));

    println!("{} criteria failed", rep.failed);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
