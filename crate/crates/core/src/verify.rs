//! Seeded bulk verification suites.
//!
//! Trial `k` of a run draws every random quantity from
//! [`trial_rng`]`(seed, k)`, so a failure is reproduced by its suite, seed
//! and offset alone. Trials run in parallel and are merged back in offset
//! order, which keeps reports independent of scheduling.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::antilinear::{AntiLinearMap, Conjugation};
use crate::cnormal::{
    cartesian_equivalences, cjp_factor, cjp_synthesize, conjugation_positive_factorization, is_c_normal_battery,
    reassemble_conjugation, skew_structure, spectral_commutation_check,
};
use crate::douglas::{anti_unitarity_residual, antilinear_polar, cnormal_polar, douglas_solve};
use crate::error::{Error, Result};
use crate::inequalities::{product_singular_bound, self_commutator_bound, singular_value_sandwich};
use crate::json::MatrixJson;
use crate::matrix::CMatrix;
use crate::random::{
    cjp_instance, commuting_conjugation_positive, complex_gaussian, normal_anticommuting, normal_cnormal, trial_rng,
    CjpOptions, TrialRng,
};
use crate::tolerance::Tolerance;

/// Absolute ceiling on relative residuals asserted by the suites.
const RESIDUAL_CEILING: f64 = 1e-8;
const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Battery,
    Douglas,
    Polar,
    Cartesian,
    Structure,
    Inequalities,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] =
        [Suite::Battery, Suite::Douglas, Suite::Polar, Suite::Cartesian, Suite::Structure, Suite::Inequalities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Battery => "battery",
            Suite::Douglas => "douglas",
            Suite::Polar => "polar",
            Suite::Cartesian => "cartesian",
            Suite::Structure => "structure",
            Suite::Inequalities => "inequalities",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::INDIVIDUAL.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// Inclusive dimension range.
    pub dim_range: (usize, usize),
    pub tol: Tolerance,
    pub suite: Suite,
}

impl RunConfig {
    pub fn new(suite: Suite, seed: u64, trials: usize, dim_range: (usize, usize)) -> Self {
        Self { seed, trials, dim_range, tol: Tolerance::default(), suite }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.dim_range;
        if lo < 1 || lo > hi || hi > MAX_DIM {
            return Err(Error::Domain(format!("dimension range ({lo}, {hi}) must satisfy 1 ≤ min ≤ max ≤ {MAX_DIM}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub suite: Suite,
    pub seed_offset: u64,
    /// The matrices of the failing instance.
    pub instance: Vec<MatrixJson>,
    pub assertion: String,
    /// `None` when the operation itself returned an error.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub dim_range: (usize, usize),
    pub failures: Vec<Failure>,
    /// Kept apart from the deterministic fields.
    pub timing: Timing,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(config: &RunConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let mut failures = Vec::new();
    for suite in config.suite.members() {
        let per_trial: Vec<Vec<Failure>> = (0..config.trials as u64)
            .into_par_iter()
            .map(|offset| run_trial(suite, offset, config))
            .collect();
        failures.extend(per_trial.into_iter().flatten());
    }
    Ok(SuiteReport {
        suite: config.suite,
        seed: config.seed,
        trials: config.trials,
        dim_range: config.dim_range,
        failures,
        timing: Timing { wall_time_secs: start.elapsed().as_secs_f64() },
    })
}

struct Trial<'a> {
    suite: Suite,
    offset: u64,
    tol: &'a Tolerance,
    instance: Vec<MatrixJson>,
    failures: Vec<Failure>,
}

impl<'a> Trial<'a> {
    fn record(&mut self, name: &str, m: &CMatrix) {
        self.instance.push(MatrixJson::from_matrix(m).named(name));
    }

    fn fail(&mut self, assertion: String, residual: Option<f64>) {
        self.failures.push(Failure {
            suite: self.suite,
            seed_offset: self.offset,
            instance: self.instance.clone(),
            assertion,
            residual,
        });
    }

    fn expect(&mut self, assertion: &str, ok: bool, residual: f64) {
        if !ok {
            self.fail(assertion.to_string(), Some(residual));
        }
    }

    /// `residual ≤ ceiling·max(scale, 1)`.
    fn small(&mut self, assertion: &str, residual: f64, scale: f64, ceiling: f64) {
        self.expect(assertion, residual <= ceiling * scale.max(1.0), residual);
    }

    fn ok<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{what}: {}: {e}", e.kind_name()), None);
                None
            }
        }
    }
}

fn run_trial(suite: Suite, offset: u64, config: &RunConfig) -> Vec<Failure> {
    let mut rng = trial_rng(config.seed, offset);
    let n = rng.random_range(config.dim_range.0..=config.dim_range.1);
    let mut trial = Trial { suite, offset, tol: &config.tol, instance: Vec::new(), failures: Vec::new() };
    match suite {
        Suite::Battery => battery_trial(&mut trial, n, &mut rng),
        Suite::Douglas => douglas_trial(&mut trial, n, &mut rng),
        Suite::Polar => polar_trial(&mut trial, n, &mut rng),
        Suite::Cartesian => cartesian_trial(&mut trial, n, &mut rng),
        Suite::Structure => structure_trial(&mut trial, n, &mut rng),
        Suite::Inequalities => inequality_trial(&mut trial, n, &mut rng),
        Suite::All => unreachable!("expanded by run_suite"),
    }
    trial.failures
}

/// Even offsets: C-normal `C∘J∘P`; odd offsets: Ginibre `T`.
fn battery_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let (t, conj, expect_cnormal) = if trial.offset % 2 == 0 {
        let inst = cjp_instance(n, CjpOptions::default(), rng);
        trial.record("C", inst.conj.matrix());
        trial.record("J", inst.j.matrix());
        trial.record("P", &inst.p);
        let Some(t) = trial.ok("cjp_synthesize", cjp_synthesize(&inst.conj, &inst.j, &inst.p, &tol)) else {
            return;
        };
        (t, inst.conj, true)
    } else {
        let conj = Conjugation::random(n, rng);
        trial.record("C", conj.matrix());
        (complex_gaussian(n, n, rng), conj, false)
    };
    trial.record("T", &t);
    let Some(r) = trial.ok("battery", is_c_normal_battery(&t, &conj, &tol)) else { return };
    let worst = r.residuals.iter().copied().fold(0.0, f64::max);
    trial.expect(&format!("conditions agree (disagreeing: {:?})", r.disagreements()), r.coherent(), worst);
    if expect_cnormal {
        trial.expect("synthesized operator is C-normal", r.verdict, r.residuals[0]);
    }
}

/// `A = B·X` with `B` of random rank.
fn douglas_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let rank = rng.random_range(1..=n);
    let b = complex_gaussian(n, rank, rng) * complex_gaussian(rank, n, rng);
    let x = complex_gaussian(n, n, rng);
    let a = &b * &x;
    trial.record("A", &a);
    trial.record("B", &b);
    let Some(sol) = trial.ok("douglas_solve", douglas_solve(&a, &b, &tol)) else { return };
    let Some(r) = trial.ok("residuals", sol.residuals(&a, &b, &tol)) else { return };
    trial.small("A = B·C", r.reconstruction, a.norm(), RESIDUAL_CEILING);
    trial.small("ker C = ker A", r.kernel, 1.0, RESIDUAL_CEILING);
    trial.small("ran C ⊆ ran B*", r.range, sol.factor.norm(), RESIDUAL_CEILING);
    trial.expect("‖C‖² = k_min", r.norm <= 1e-7, r.norm);
}

fn polar_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let rank = rng.random_range(1..=n);
    let m = complex_gaussian(n, rank, rng) * complex_gaussian(rank, n, rng);
    trial.record("A", &m);
    let a = AntiLinearMap::new(m.clone()).expect("finite square matrix");
    if let Some(p) = trial.ok("antilinear_polar", antilinear_polar(&a, &tol)) {
        let rec = (p.reconstruct().matrix() - &m).norm();
        trial.expect("A = J∘|A|", rec <= 1e-9 * m.norm().max(f64::MIN_POSITIVE) + tol.eps_abs, rec);
        if let (Some(kj), Some(ka)) = (
            trial.ok("kernel", p.isometry_part.map.kernel_projector(&tol)),
            trial.ok("kernel", a.kernel_projector(&tol)),
        ) {
            trial.small("ker J = ker A", (kj - ka).norm(), 1.0, RESIDUAL_CEILING);
        }
    }

    let inst = cjp_instance(n, CjpOptions::default(), rng);
    trial.record("T", &inst.t);
    trial.record("C", inst.conj.matrix());
    if let Some(p) = trial.ok("cnormal_polar", cnormal_polar(&inst.t, &inst.conj, &tol, false)) {
        trial.small("T = C∘J∘|T|", p.reconstruction_residual(&inst.t, &inst.conj), inst.t.norm(), 1e-9);
        trial.small("J|T| = |T|J", p.commutation_residual(), inst.t.norm(), RESIDUAL_CEILING);
    }
    if let Some(p) = trial.ok("cnormal_polar extended", cnormal_polar(&inst.t, &inst.conj, &tol, true)) {
        trial.small("extended J anti-unitary", anti_unitarity_residual(&p.j), 1.0, 1e-9);
        trial.small("extended T = C∘J∘|T|", p.reconstruction_residual(&inst.t, &inst.conj), inst.t.norm(), 1e-9);
        trial.small("extended J|T| = |T|J", p.commutation_residual(), inst.t.norm(), RESIDUAL_CEILING);
    }
}

fn cartesian_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let inst = cjp_instance(n, CjpOptions::default(), rng);
    trial.record("T", &inst.t);
    trial.record("C", inst.conj.matrix());
    if let Some(r) = trial.ok("cartesian_equivalences", cartesian_equivalences(&inst.t, &inst.conj, &tol)) {
        for check in &r.checks {
            let ok = check.passed && check.relative() <= RESIDUAL_CEILING;
            trial.expect(&check.name, ok, check.residual);
        }
    }
    let g = complex_gaussian(n, n, rng);
    trial.record("G", &g);
    if let Some(r) = trial.ok("cartesian_equivalences", cartesian_equivalences(&g, &inst.conj, &tol)) {
        trial.expect("generic: four conditions agree", r.coherent(), 0.0);
    }
}

fn structure_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let inst = normal_anticommuting(n, rng);
    trial.record("T_skew", &inst.t);
    trial.record("C_skew", inst.conj.matrix());
    if let Some(s) = trial.ok("skew_structure", skew_structure(&inst.t, &inst.conj, &tol)) {
        trial.small("W*TW = T₁ ⊕ (−T₁*) ⊕ iT₃", s.reconstruction.residual, inst.t.norm(), RESIDUAL_CEILING);
        trial.small("T₃ Hermitian", s.hermitian.residual, inst.t.norm(), 1e-9);
        trial.expect("C swaps the half-plane eigenspaces", s.swap.passed, s.swap.residual);
        trial.expect(
            "partition sizes",
            s.partition.positive.len() == inst.paired && s.partition.imaginary.len() == inst.imaginary,
            0.0,
        );
    }

    let (t, conj) = normal_cnormal(n, rng);
    trial.record("T_normal", &t);
    trial.record("C_normal", conj.matrix());
    if let Some(r) = trial.ok("spectral_commutation", spectral_commutation_check(&t, &conj, &tol)) {
        trial.expect("normal: C commutes with E(T*T)", r.conj_commutes, r.conj_check.residual);
        trial.expect("normal: C∘T commutes with E(T*T)", r.ct_commutes, r.ct_check.residual);
        trial.small("normal: projector residuals", r.conj_check.residual.max(r.ct_check.residual), 1.0, RESIDUAL_CEILING);
    }

    let cjp = cjp_instance(n, CjpOptions::default(), rng);
    trial.record("T_cjp", &cjp.t);
    trial.record("C_cjp", cjp.conj.matrix());
    if let Some(r) = trial.ok("spectral_commutation", spectral_commutation_check(&cjp.t, &cjp.conj, &tol)) {
        trial.expect("C-normal: C∘T commutes with E(T*T)", r.ct_commutes, r.ct_check.residual);
    }
    if let Some((j, p)) = trial.ok("cjp_factor", cjp_factor(&cjp.t, &cjp.conj, &tol)) {
        if let Some(back) = trial.ok("cjp_synthesize", cjp_synthesize(&cjp.conj, &j, &p, &tol)) {
            trial.small("factor then synthesize", (&back - &cjp.t).norm(), cjp.t.norm(), RESIDUAL_CEILING);
        }
    }

    let pair = commuting_conjugation_positive(n, rng);
    trial.record("P_pair", &pair.p);
    trial.record("C_pair", pair.conj.matrix());
    if let Some(blocks) = trial.ok("conjugation_blocks", conjugation_positive_factorization(&pair.p, &pair.conj, &tol)) {
        for b in &blocks {
            let (sym, uni) = b.symmetric_unitary_residuals();
            trial.small("block symmetric", sym, 1.0, RESIDUAL_CEILING);
            trial.small("block unitary", uni, 1.0, RESIDUAL_CEILING);
        }
        let back = reassemble_conjugation(&blocks);
        trial.small("blocks reassemble to C", (back - pair.conj.matrix()).norm(), 1.0, RESIDUAL_CEILING);
    }
}

/// C-normal `C∘J∘P` for the three reports; a C-symmetric part for the
/// tight case of the singular-value sandwich.
fn inequality_trial(trial: &mut Trial, n: usize, rng: &mut TrialRng) {
    let tol = *trial.tol;
    let inst = cjp_instance(n, CjpOptions::default(), rng);
    trial.record("T", &inst.t);
    trial.record("C", inst.conj.matrix());
    let (t, conj) = (&inst.t, &inst.conj);
    let floor = -RESIDUAL_CEILING;
    if let Some(r) = trial.ok("singular_value_sandwich", singular_value_sandwich(t, conj, &tol)) {
        trial.expect("sandwich lower", r.lower.min_slack() >= floor, r.lower.min_slack());
        trial.expect("sandwich upper", r.upper.min_slack() >= floor, r.upper.min_slack());
        trial.expect("|T| = (|A|²+|B|²)^½", r.modulus_chain.passed, r.modulus_chain.residual);
        trial.expect("[|A|, |B|] = 0", r.moduli_commute.passed, r.moduli_commute.residual);
    }
    if let Some(r) = trial.ok("product_singular_bound", product_singular_bound(t, conj, &tol)) {
        trial.expect("2 s(AB*) ≤ s(T*T ⊕ TT*)", r.passed && r.min_slack() >= floor, r.min_slack());
    }
    if let Some(r) = trial.ok("self_commutator_bound", self_commutator_bound(t, conj, &tol)) {
        trial.expect("self-commutator bound", r.passed && r.min_slack() >= floor, r.min_slack());
    }

    let g = complex_gaussian(n, n, rng);
    let sym = (&g + conj.sandwich(&g.adjoint())).scale(0.5);
    trial.record("T_sym", &sym);
    if let Some(r) = trial.ok("singular_value_sandwich", singular_value_sandwich(&sym, conj, &tol)) {
        let worst = r.upper.slack.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
        trial.small("B = 0: s(T) = s(|A|)", worst, r.upper.rhs.first().copied().unwrap_or(0.0), 1e-9);
    }
}
