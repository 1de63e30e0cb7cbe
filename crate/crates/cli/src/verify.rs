//! Named verification suites. Each identity is checked instance by instance
//! in increasing size; the first failing instance is the reported
//! counterexample.

use fockhall_core::fock::*;
use fockhall_core::hall::{
    canonical_basis_hall, central_c, gamma_d, gamma_monomial, h_form, kappa_form, monomial_of_word,
    mul_semisimple_left, mul_semisimple_right, HallElement, SemisimpleWord,
};
use fockhall_core::quiver::{
    covering, deg_leq, dominates, is_n_regular, m_of_partition, multisegments, radical_layers, tau_shift, DimVector,
    Multisegment, Partition, QuiverKind,
};
use fockhall_core::ring::{gauss_binomial, LaurentPoly};
use fockhall_core::wedge::{act_wedge, heisenberg_b, kappa, kappa_inv, Generator, Sign, WedgeVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::grades_of_total;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::render::Output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    Relations,
    Gamma,
    FockTriangularity,
    Decomposition,
    Schiffmann,
    All,
}

impl SuiteName {
    fn label(self) -> &'static str {
        match self {
            Self::Relations => "relations",
            Self::Gamma => "gamma",
            Self::FockTriangularity => "fock-triangularity",
            Self::Decomposition => "decomposition",
            Self::Schiffmann => "schiffmann",
            Self::All => "all",
        }
    }
}

pub struct Check {
    pub suite: &'static str,
    pub identity: &'static str,
    pub instances: usize,
    pub counterexample: Option<String>,
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.counterexample.is_some())
    }

    pub fn output(&self, cfg: &RunConfig) -> Output {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "suite": c.suite,
                    "identity": c.identity,
                    "instances": c.instances,
                    "status": if c.counterexample.is_none() { "pass" } else { "fail" },
                    "counterexample": c.counterexample,
                })
            })
            .collect();
        let json = json!({
            "n": cfg.n, "max_size": cfg.max_size, "t": cfg.t_max, "seed": cfg.seed,
            "passed": self.passed(), "checks": checks,
        });
        let mut out = Output::new(json, vec!["status", "suite", "identity", "instances", "counterexample"]);
        for c in &self.checks {
            out.row(vec![
                if c.counterexample.is_none() { "PASS" } else { "FAIL" }.into(),
                c.suite.into(),
                c.identity.into(),
                c.instances.to_string(),
                c.counterexample.clone().unwrap_or_default(),
            ]);
        }
        out
    }
}

type Verdict = Result<Option<String>, CliError>;

/// Counts an instance; returns the formatted counterexample if it fails.
macro_rules! expect {
    ($count:expr, $cond:expr, $($msg:tt)+) => {{
        *$count += 1;
        if !$cond {
            return Ok(Some(format!($($msg)+)));
        }
    }};
}

struct Runner<'a> {
    cfg: &'a RunConfig,
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn check(&mut self, identity: &'static str, body: impl FnOnce(&RunConfig, &mut usize) -> Verdict) -> Result<(), CliError> {
        let mut instances = 0;
        let counterexample = body(self.cfg, &mut instances)?;
        self.checks.push(Check { suite: self.suite, identity, instances, counterexample });
        Ok(())
    }
}

pub fn run(cfg: &RunConfig, suite: SuiteName) -> Result<Report, CliError> {
    let suites = match suite {
        SuiteName::All => vec![
            SuiteName::Relations,
            SuiteName::Gamma,
            SuiteName::FockTriangularity,
            SuiteName::Decomposition,
            SuiteName::Schiffmann,
        ],
        one => vec![one],
    };
    let mut checks = Vec::new();
    for s in suites {
        let mut runner = Runner { cfg, suite: s.label(), checks: Vec::new() };
        match s {
            SuiteName::Relations => relations(&mut runner)?,
            SuiteName::Gamma => gamma(&mut runner)?,
            SuiteName::FockTriangularity => fock_triangularity(&mut runner)?,
            SuiteName::Decomposition => decomposition(&mut runner)?,
            SuiteName::Schiffmann => schiffmann(&mut runner)?,
            SuiteName::All => unreachable!(),
        }
        checks.extend(runner.checks);
    }
    Ok(Report { checks })
}

fn hay(g: &Generator, x: &FockVector, n: i64) -> Result<FockVector, CliError> {
    Ok(act_hayashi(g, x, n)?)
}

fn ket(lam: &Partition) -> FockVector {
    FockVector::basis(lam.clone())
}

fn partitions(cfg: &RunConfig) -> Vec<Partition> {
    Partition::all_up_to(cfg.max_size)
}

fn cartan(i: i64, j: i64, n: i64) -> i64 {
    if i == j {
        2
    } else if n == 2 {
        -2
    } else if (i - j).rem_euclid(n) == 1 || (j - i).rem_euclid(n) == 1 {
        -1
    } else {
        0
    }
}

fn serre(xi: &Generator, xj: &Generator, a: i64, x: &FockVector, n: i64) -> Result<FockVector, CliError> {
    let top = 1 - a;
    let mut out = FockVector::zero();
    for k in 0..=top {
        let mut y = x.clone();
        for _ in 0..k {
            y = hay(xi, &y, n)?;
        }
        y = hay(xj, &y, n)?;
        for _ in 0..top - k {
            y = hay(xi, &y, n)?;
        }
        let c = gauss_binomial(top, k)?;
        out.add_scaled(&y, &if k % 2 == 0 { c } else { -c });
    }
    Ok(out)
}

fn relations(r: &mut Runner) -> Result<(), CliError> {
    r.check("[E_i, F_j] = δ_ij (K_i − K_i⁻¹)/(v − v⁻¹)", |cfg, count| {
        let n = cfg.n;
        let vv = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        for lam in partitions(cfg) {
            let x = ket(&lam);
            for i in 0..n {
                for j in 0..n {
                    let ef = &hay(&Generator::e(i), &hay(&Generator::f(j), &x, n)?, n)? - &hay(&Generator::f(j), &hay(&Generator::e(i), &x, n)?, n)?;
                    let mut expected = FockVector::zero();
                    if i == j {
                        let k = &hay(&Generator::k(i), &x, n)? - &hay(&Generator::k_inv(i), &x, n)?;
                        for (mu, c) in k.iter() {
                            expected.add_term(mu.clone(), &c.div_exact(&vv)?);
                        }
                    }
                    expect!(count, ef == expected, "i = {i}, j = {j}, λ = {lam}");
                }
            }
        }
        Ok(None)
    })?;
    r.check("K_i E_j K_i⁻¹ = v^{a_ij} E_j and K_i F_j K_i⁻¹ = v^{−a_ij} F_j", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let x = ket(&lam);
            for i in 0..n {
                for j in 0..n {
                    let a = cartan(i, j, n);
                    let conj = |g: &Generator| -> Result<FockVector, CliError> {
                        hay(&Generator::k(i), &hay(g, &hay(&Generator::k_inv(i), &x, n)?, n)?, n)
                    };
                    let e = hay(&Generator::e(j), &x, n)?;
                    let f = hay(&Generator::f(j), &x, n)?;
                    expect!(count, conj(&Generator::e(j))? == e.scale(&LaurentPoly::v_pow(a)), "E: i = {i}, j = {j}, λ = {lam}");
                    expect!(count, conj(&Generator::f(j))? == f.scale(&LaurentPoly::v_pow(-a)), "F: i = {i}, j = {j}, λ = {lam}");
                }
            }
        }
        Ok(None)
    })?;
    r.check("quantum Serre relations for E and F", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let x = ket(&lam);
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    let a = cartan(i, j, n);
                    expect!(count, serre(&Generator::e(i), &Generator::e(j), a, &x, n)?.is_zero(), "E: i = {i}, j = {j}, λ = {lam}");
                    expect!(count, serre(&Generator::f(i), &Generator::f(j), a, &x, n)?.is_zero(), "F: i = {i}, j = {j}, λ = {lam}");
                }
            }
        }
        Ok(None)
    })?;
    r.check("[z_t^+, z_s^-] = δ_ts · t v^t Σ_{k<n} v^{2tk}", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let x = ket(&lam);
            for t in 1..=cfg.t_max {
                for s in 1..=cfg.t_max {
                    let ab = act_z(t, Sign::Plus, &act_z(s, Sign::Minus, &x, n)?, n)?;
                    let ba = act_z(s, Sign::Minus, &act_z(t, Sign::Plus, &x, n)?, n)?;
                    let expected = if t == s {
                        let scalar = (0..n).fold(LaurentPoly::zero(), |acc, k| &acc + &LaurentPoly::monomial(t, t + 2 * t * k));
                        x.scale(&scalar)
                    } else {
                        FockVector::zero()
                    };
                    expect!(count, &ab - &ba == expected, "t = {t}, s = {s}, λ = {lam}");
                }
            }
        }
        Ok(None)
    })?;
    r.check("[E_i, z_t^-] = [F_i, z_t^+] = 0 and K_i commutes with z_t^±", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let x = ket(&lam);
            for t in 1..=cfg.t_max {
                for i in 0..n {
                    for (g, s) in [(Generator::e(i), Sign::Minus), (Generator::f(i), Sign::Plus), (Generator::k(i), Sign::Plus), (Generator::k(i), Sign::Minus)] {
                        let lhs = hay(&g, &act_z(t, s, &x, n)?, n)?;
                        let rhs = act_z(t, s, &hay(&g, &x, n)?, n)?;
                        expect!(count, lhs == rhs, "{g:?} against z_{t}^{s:?}, λ = {lam}");
                    }
                }
            }
        }
        Ok(None)
    })?;
    r.check("c_t commutes with every u_i (grades tδ + ε_i ≤ max-size)", |cfg, count| {
        let n = cfg.n;
        for t in (1..=cfg.t_max).filter(|t| t * n < cfg.max_size) {
            let c = central_c(t, n)?;
            for i in 0..n {
                let e = DimVector::unit(i);
                expect!(count, mul_semisimple_left(&e, &c)? == mul_semisimple_right(&c, &e)?, "t = {t}, i = {i}");
            }
        }
        Ok(None)
    })?;
    r.check("z_t^+ = v^t·B_t^+ and z_t^- = B_t^- on κ(λ)", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let x = WedgeVector::basis(kappa(&lam));
            for t in 1..=cfg.t_max {
                let zp = act_wedge(&Generator::Z(t, Sign::Plus), &x, n)?;
                let zm = act_wedge(&Generator::Z(t, Sign::Minus), &x, n)?;
                expect!(count, zp == heisenberg_b(t, Sign::Plus, &x, n)?.scale(&LaurentPoly::v_pow(t)), "z_{t}^+ on κ({lam})");
                expect!(count, zm == heisenberg_b(t, Sign::Minus, &x, n)?, "z_{t}^- on κ({lam})");
            }
        }
        Ok(None)
    })?;
    r.check("partition and wedge routes agree for every generator", |cfg, count| {
        let n = cfg.n;
        let mut gens = vec![Generator::KDelta(1), Generator::KDelta(-1)];
        for t in 1..=cfg.t_max {
            gens.extend([Generator::Z(t, Sign::Plus), Generator::Z(t, Sign::Minus)]);
        }
        for i in 0..n {
            gens.extend([Generator::e(i), Generator::f(i), Generator::k(i), Generator::k_inv(i)]);
        }
        for d in 1..=2 {
            for alpha in grades_of_total(n, d) {
                gens.extend([Generator::Tilde(alpha.clone(), Sign::Plus), Generator::Tilde(alpha, Sign::Minus)]);
            }
        }
        for lam in partitions(cfg) {
            for g in &gens {
                let direct = hay(g, &ket(&lam), n)?;
                let w = act_wedge(g, &WedgeVector::basis(kappa(&lam)), n)?;
                let mut routed = FockVector::zero();
                for (m, c) in w.iter() {
                    routed.add_term(kappa_inv(m)?, c);
                }
                expect!(count, direct == routed, "{g:?} on λ = {lam}");
            }
        }
        Ok(None)
    })
}

/// A random lift of `grade` to the line, each unit placed within one period
/// of its residue.
fn random_lift(grade: &DimVector, n: i64, rng: &mut ChaCha8Rng) -> DimVector {
    let mut d = DimVector::zero();
    for (r, c) in grade.iter() {
        for _ in 0..c {
            d.add_at(r + n * rng.random_range(-1..=1), 1);
        }
    }
    d
}

fn random_letter(n: i64, rng: &mut ChaCha8Rng) -> DimVector {
    loop {
        let d = DimVector::from_pairs((0..n).map(|i| (i, rng.random_range(0..=1))));
        if !d.is_zero() {
            return d;
        }
    }
}

const SPOT_CHECKS: usize = 16;

fn gamma(r: &mut Runner) -> Result<(), CliError> {
    r.check("γ_d of a word monomial equals the lifted-word formula (seeded spot checks)", |cfg, count| {
        let n = cfg.n;
        let kind = QuiverKind::cyclic(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        if cfg.max_size == 0 {
            return Ok(None);
        }
        for _ in 0..SPOT_CHECKS {
            let mut letters = vec![random_letter(n, &mut rng)];
            while letters.len() < 3 && rng.random_bool(0.5) {
                letters.push(random_letter(n, &mut rng));
            }
            let word = SemisimpleWord::new(letters)?;
            if word.grade().total() > cfg.max_size {
                continue;
            }
            let x = monomial_of_word(kind, &word)?;
            for _ in 0..3 {
                let d = random_lift(&word.grade(), n, &mut rng);
                expect!(count, gamma_d(&d, &x)? == gamma_monomial(&d, n, &word)?, "word {:?}, d = {d:?}", word.letters());
            }
        }
        Ok(None)
    })?;
    r.check("γ_d(ũ_m) is ≤_deg-triangular and commutes with translation by n (seeded spot checks)", |cfg, count| {
        let n = cfg.n;
        let kind = QuiverKind::cyclic(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
        if cfg.max_size == 0 {
            return Ok(None);
        }
        for _ in 0..SPOT_CHECKS {
            let total = rng.random_range(1..=cfg.max_size.min(4));
            let grades = grades_of_total(n, total);
            let grade = &grades[rng.random_range(0..grades.len())];
            let ms = multisegments(kind, grade);
            let m = &ms[rng.random_range(0..ms.len())];
            let d = random_lift(grade, n, &mut rng);
            let g = gamma_d(&d, &HallElement::u_tilde(m))?;
            for (z, _) in g.terms() {
                expect!(count, deg_leq(&covering(z, n)?, m), "γ_{d:?}(ũ_{m}) reaches {z}");
            }
            let line = QuiverKind::InfiniteLine;
            let shifted = gamma_d(&d.shift(n, line), &HallElement::u_tilde(m))?;
            let moved = HallElement::from_tilde(line, d.shift(n, line), g.tilde_terms().into_iter().map(|(z, c)| (tau_shift(&z, n), c)));
            expect!(count, shifted == moved, "translation of γ_{d:?}(ũ_{m})");
        }
        Ok(None)
    })?;
    r.check("leading coefficient of γ on partition modules", |cfg, count| {
        let n = cfg.n;
        let kind = QuiverKind::cyclic(n)?;
        for lam in Partition::all_up_to(cfg.max_size.min(5)).into_iter().filter(|l| !l.is_empty()) {
            let minf = m_of_partition(&lam, QuiverKind::InfiniteLine);
            let layers = radical_layers(&minf);
            let mut expected = -layers.iter().map(|a| h_form(a, n)).sum::<i64>();
            for s in 0..layers.len() {
                for t in s + 1..layers.len() {
                    expected += kappa_form(&layers[s], &layers[t], n);
                }
            }
            let g = gamma_d(&minf.dim_vector(), &HallElement::u_tilde(&m_of_partition(&lam, kind)))?;
            expect!(count, g.tilde_coeff(&minf) == LaurentPoly::v_pow(expected), "λ = {lam}");
        }
        Ok(None)
    })
}

fn cyclic_multisegments(n: i64, max: i64) -> Result<Vec<Multisegment>, CliError> {
    let kind = QuiverKind::cyclic(n)?;
    Ok((1..=max).flat_map(|k| grades_of_total(n, k)).flat_map(|g| multisegments(kind, &g)).collect())
}

fn fock_triangularity(r: &mut Runner) -> Result<(), CliError> {
    r.check("line partition modules create |λ⟩ from the vacuum", |cfg, count| {
        for lam in partitions(cfg) {
            let got = act_pbw_inf(&m_of_partition(&lam, QuiverKind::InfiniteLine), Sign::Minus, &vacuum())?;
            expect!(count, got == ket(&lam), "λ = {lam}");
        }
        Ok(None)
    })?;
    r.check("ũ_{m_λ}^-|∅⟩ = |λ⟩ + strictly dominance-lower terms", |cfg, count| {
        let kind = QuiverKind::cyclic(cfg.n)?;
        for lam in partitions(cfg) {
            let got = act_hall(&HallElement::u_tilde(&m_of_partition(&lam, kind)), Sign::Minus, &vacuum())?;
            let lower = got.keys().all(|mu| mu == &lam || dominates(&lam, mu));
            expect!(count, got.coeff(&lam).is_one() && lower, "λ = {lam}");
        }
        Ok(None)
    })?;
    r.check("ũ_m^-|∅⟩ only reaches |μ⟩ with m_μ ≤_deg m", |cfg, count| {
        for m in cyclic_multisegments(cfg.n, cfg.max_size)? {
            let got = act_hall(&HallElement::u_tilde(&m), Sign::Minus, &vacuum())?;
            for mu in got.keys() {
                expect!(count, deg_leq(&m_of_partition(mu, m.kind()), &m), "m = {m} reaches μ = {mu}");
            }
        }
        Ok(None)
    })?;
    r.check("bar involution: unitriangular and squares to the identity", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let b = bar_fock(&ket(&lam), n)?;
            let shape = b.coeff(&lam).is_one() && b.keys().all(|mu| mu == &lam || dominates(&lam, mu));
            expect!(count, shape && bar_fock(&b, n)? == ket(&lam), "λ = {lam}");
        }
        Ok(None)
    })?;
    r.check("b_λ is bar-invariant with off-diagonal coefficients in v⁻¹ℤ[v⁻¹]", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg) {
            let b = canonical_basis(&lam, n)?;
            let shape = b.coeff(&lam).is_one()
                && b.iter().all(|(mu, c)| mu == &lam || (dominates(&lam, mu) && c.in_neg_span()));
            expect!(count, shape && bar_fock(&b, n)? == b, "λ = {lam}");
        }
        Ok(None)
    })?;
    r.check("ladder vectors of n-regular λ are unitriangular", |cfg, count| {
        let n = cfg.n;
        for lam in partitions(cfg).into_iter().filter(|l| is_n_regular(l, n)) {
            let a = ladder_vector(&lam, n)?;
            expect!(count, a.coeff(&lam).is_one() && a.keys().all(|mu| mu == &lam || dominates(&lam, mu)), "λ = {lam}");
        }
        Ok(None)
    })
}

fn decomposition(r: &mut Runner) -> Result<(), CliError> {
    r.check("#{λ of content β} = Σ_m p(m)·#{n-regular μ of content β − mδ}", |cfg, count| {
        for k in 0..=cfg.max_size {
            for beta in grades_of_total(cfg.n, k) {
                let (lhs, rhs) = decomposition_census(&beta, cfg.n)?;
                expect!(count, lhs == rhs, "β = {}: {lhs} ≠ {rhs}", beta.to_json());
            }
        }
        Ok(None)
    })?;
    r.check("θ(λ) + σ(λ) = 0", |cfg, count| {
        for lam in partitions(cfg) {
            expect!(count, theta(&lam, cfg.n) + sigma(&lam, cfg.n) == 0, "λ = {lam}");
        }
        Ok(None)
    })
}

fn schiffmann(r: &mut Runner) -> Result<(), CliError> {
    r.check("Hall canonical basis element of m_λ sends |∅⟩ to b_λ", |cfg, count| {
        let kind = QuiverKind::cyclic(cfg.n)?;
        for lam in partitions(cfg) {
            let m = m_of_partition(&lam, kind);
            let basis = canonical_basis_hall(kind, &m.dim_vector())?;
            let got = act_hall(&basis[&m], Sign::Minus, &vacuum())?;
            expect!(count, got == canonical_basis(&lam, cfg.n)?, "λ = {lam}");
        }
        Ok(None)
    })
}
