//! The acceptance suite: eight criteria, each a batch of exact checks over
//! fixed examples plus a seeded random grid.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    burnside_irreducible, classify, criterion, criterion_violations, det_fingerprint, find_intertwiner,
    l_matrix_all_routes, l_matrix_diagonal, IntertwinerOutcome, Route,
};
use crate::linalg::Matrix;
use crate::modrep::{
    central_character, commutation_check, ladder_check, make_e, make_o, poly_intertwining_check, quotient_check,
    verify_relations, verma_ladder_check, w_basis_check, Ladder, ModuleRep,
};
use crate::params::{canonical_orbit_rep, orbit_act, HeckeParams, ParamQuadruple, Parity, SignTriple, TwistElement};
use crate::report::Report;
use crate::sampling::Sampler;
use crate::scalar::{Backend, Field, RatFun, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed_da4a;

const EVEN_DS: [usize; 4] = [1, 3, 5, 7];
const ODD_DS: [usize; 4] = [0, 2, 4, 6];
const EVEN_DS_5: [usize; 3] = [1, 3, 5];
const ODD_DS_4: [usize; 3] = [0, 2, 4];
const EVEN_DS_3: [usize; 2] = [1, 3];
const ODD_DS_2: [usize; 2] = [0, 2];
const VERMA_DEPTH: usize = 12;
const POLY_DEPTH: usize = 10;
const MIN_ADVERSARIAL: usize = 20;

/// Suite parameters. `grid = None` uses the pinned per-criterion sample
/// counts; `Some(n)` uses `n` random samples per parity everywhere, and
/// `Some(0)` leaves only the fixed structural examples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub grid: Option<usize>,
    pub backend: Backend,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            grid: None,
            backend: Backend::Rational,
            workers: 1,
        }
    }
}

impl SuiteConfig {
    fn count(&self, pinned: usize) -> usize {
        self.grid.unwrap_or(pinned)
    }

    fn sampler<F: Field>(&self, id: u8, q: F) -> Sampler<F> {
        Sampler::new(self.seed ^ (u64::from(id)).wrapping_mul(0x9e37_79b9_7f4a_7c15), q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    /// `criterion N: PASS|FAIL name (samples, checks)`.
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} {} ({} samples, {} checks, {} failures)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.samples,
            self.checks,
            self.failures.len()
        )
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "defining relations"),
    (2, "central characters and determinant fingerprints"),
    (3, "irreducibility criteria match Burnside closure"),
    (4, "L-matrix route agreement"),
    (5, "isomorphisms between families"),
    (6, "classification round-trip"),
    (7, "universal module identities"),
    (8, "formal q subset"),
];

/// Criteria run for a backend: all eight on rationals, only the formal-q
/// subset on rational functions.
pub fn criteria_for(backend: Backend) -> Vec<u8> {
    match backend {
        Backend::Rational => (1..=8).collect(),
        Backend::Ratfun => vec![8],
    }
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionOutcome {
    let mut t = Tally::default();
    match id {
        1 => relations(&mut t, cfg, &mut cfg.sampler(1, two()), &EVEN_DS, &ODD_DS, 100, &structural()),
        2 => characters(&mut t, cfg, &mut cfg.sampler(2, two()), &EVEN_DS, &ODD_DS, 100, &structural()),
        3 => oracle(&mut t, cfg),
        4 => lmatrix(&mut t, cfg),
        5 => isomorphisms(&mut t, cfg),
        6 => round_trip(&mut t, cfg),
        7 => universal(&mut t, cfg, &mut cfg.sampler(7, two()), &EVEN_DS, &ODD_DS, 20, &structural()),
        8 => symbolic(&mut t, cfg),
        _ => t.fail(format!("unknown criterion {id}")),
    }
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, n)| n)
        .to_string();
    CriterionOutcome {
        id,
        name,
        passed: t.failures.is_empty(),
        samples: t.samples,
        checks: t.checks,
        failures: t.failures,
    }
}

/// Runs every criterion for the configured backend. With `workers > 1`
/// criteria run on separate threads; results come back in criterion order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    let ids = criteria_for(cfg.backend);
    if cfg.workers <= 1 {
        return ids.into_iter().map(|id| run_criterion(id, cfg)).collect();
    }
    let mut out = Vec::with_capacity(ids.len());
    for chunk in ids.chunks(cfg.workers) {
        std::thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|&id| s.spawn(move || run_criterion(id, cfg))).collect();
            out.extend(handles.into_iter().map(|h| h.join().expect("criterion thread panicked")));
        });
    }
    out
}

#[derive(Default)]
struct Tally {
    samples: usize,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.check(false, || msg);
    }

    fn report(&mut self, ctx: &str, r: &Report) {
        for c in &r.checks {
            self.check(c.passed, || match &c.detail {
                Some(d) => format!("{ctx}: {} ({d})", c.name),
                None => format!("{ctx}: {}", c.name),
            });
        }
    }

    fn ok<T>(&mut self, ctx: &str, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{ctx}: {e}"));
                None
            }
        }
    }
}

fn two() -> Rational {
    Rational::from(2)
}

fn r(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

fn quad(k: [&str; 4], d: usize, parity: Parity) -> ParamQuadruple<Rational> {
    ParamQuadruple::new(two(), k.map(r), d, parity).expect("structural example is valid")
}

/// Fixed irreducible examples run at every grid size.
fn structural() -> Vec<ParamQuadruple<Rational>> {
    vec![
        quad(["1/2", "1", "3", "1"], 1, Parity::Even),
        quad(["1/4", "2", "1/3", "-3/2"], 3, Parity::Even),
        quad(["1", "1", "1", "1/2"], 0, Parity::Odd),
        quad(["1", "1", "3", "1/24"], 2, Parity::Odd),
    ]
}

/// Fixed examples violating exactly one irreducibility condition.
fn structural_reducible() -> Vec<ParamQuadruple<Rational>> {
    vec![
        quad(["1/2", "2", "3", "1/6"], 1, Parity::Even),
        quad(["1", "1", "1/2", "1/4"], 2, Parity::Odd),
    ]
}

fn structural_formal() -> Vec<ParamQuadruple<RatFun>> {
    let q = RatFun::q();
    let c = |n: i64| RatFun::from_int(n);
    vec![
        ParamQuadruple::even(q.clone(), [q.pow(-1), c(1), c(3), c(1)], 1),
        ParamQuadruple::odd(q.clone(), [c(1), c(1), c(1), q.pow(-1)], 0),
        ParamQuadruple::odd(q.clone(), [c(1), c(1), c(3), q.pow(-3) / c(3)], 2),
    ]
    .into_iter()
    .map(|p| p.expect("structural example is valid"))
    .collect()
}

fn construct<F: Field>(p: &ParamQuadruple<F>) -> crate::Result<ModuleRep<F>> {
    match p.parity() {
        Parity::Even => make_e(p),
        Parity::Odd => make_o(p),
    }
}

fn label<F: Field>(p: &ParamQuadruple<F>) -> String {
    let k: Vec<String> = p.k().iter().map(ToString::to_string).collect();
    format!("{} d={} q={} k=({})", p.parity(), p.d(), p.q(), k.join(","))
}

/// Structural examples followed by `n` random samples per parity.
fn grid<F: Field>(
    s: &mut Sampler<F>,
    fixed: &[ParamQuadruple<F>],
    even: &[usize],
    odd: &[usize],
    n: usize,
) -> Vec<ParamQuadruple<F>> {
    let mut out = fixed.to_vec();
    out.extend((0..n).map(|i| s.even(even[i % even.len()])));
    out.extend((0..n).map(|i| s.odd(odd[i % odd.len()])));
    out
}

fn intertwines<F: Field>(t: &Matrix<F>, a: &ModuleRep<F>, b: &ModuleRep<F>) -> bool {
    t.det().is_ok_and(|d| !d.is_zero()) && (0..4).all(|i| t * &a.t[i] == &b.t[i] * t)
}

fn relations<F: Field>(
    t: &mut Tally,
    cfg: &SuiteConfig,
    s: &mut Sampler<F>,
    even: &[usize],
    odd: &[usize],
    pinned: usize,
    fixed: &[ParamQuadruple<F>],
) {
    for p in grid(s, fixed, even, odd, cfg.count(pinned)) {
        t.samples += 1;
        let ctx = label(&p);
        if let Some(m) = t.ok(&ctx, construct(&p)) {
            t.check(m.dim == p.dim(), || format!("{ctx}: dimension {}", m.dim));
            t.report(&ctx, &verify_relations(&m));
        }
    }
}

fn characters<F: Field>(
    t: &mut Tally,
    cfg: &SuiteConfig,
    s: &mut Sampler<F>,
    even: &[usize],
    odd: &[usize],
    pinned: usize,
    fixed: &[ParamQuadruple<F>],
) {
    for p in grid(s, fixed, even, odd, cfg.count(pinned)) {
        t.samples += 1;
        let ctx = label(&p);
        let Some(m) = t.ok(&ctx, construct(&p)) else { continue };
        let want_chi: [F; 4] = std::array::from_fn(|i| p.hecke().c(i));
        let want_fp: [F; 4] = match p.parity() {
            Parity::Even => [p.qp(-(p.d() as i64) - 1), F::one(), F::one(), F::one()],
            Parity::Odd => p.k().clone(),
        };
        for e in TwistElement::all() {
            let me = m.twisted(e);
            let rot = |a: &[F; 4]| -> [F; 4] { std::array::from_fn(|i| a[(i + e.value() as usize) % 4].clone()) };
            if let Some(chi) = t.ok(&ctx, central_character(&me)) {
                t.check(chi == rot(&want_chi), || format!("{ctx}: central character of twist {e}"));
            }
            if let Some(fp) = t.ok(&ctx, det_fingerprint(&me)) {
                t.check(fp == rot(&want_fp), || format!("{ctx}: determinant fingerprint of twist {e}"));
            }
        }
    }
}

fn universal<F: Field>(
    t: &mut Tally,
    cfg: &SuiteConfig,
    s: &mut Sampler<F>,
    even: &[usize],
    odd: &[usize],
    pinned: usize,
    fixed: &[ParamQuadruple<F>],
) {
    let quads = grid(s, fixed, even, odd, cfg.count(pinned));
    let mut hecke: Vec<HeckeParams<F>> = quads.iter().take(2).map(ParamQuadruple::hecke).collect();
    hecke.extend((0..cfg.count(pinned).min(3)).map(|_| s.hecke()));
    for h in &hecke {
        t.samples += 1;
        let k: Vec<String> = h.k.iter().map(ToString::to_string).collect();
        let ctx = format!("M q={} k=({})", h.q, k.join(","));
        t.report(&ctx, &verma_ladder_check(h, VERMA_DEPTH));
        t.report(&ctx, &poly_intertwining_check(h, POLY_DEPTH));
    }
    for p in quads {
        t.samples += 1;
        let ctx = label(&p);
        let Some(m) = t.ok(&ctx, construct(&p)) else { continue };
        for e in TwistElement::all() {
            t.report(&format!("{ctx} twist {e}"), &commutation_check(&m.twisted(e)));
        }
        for which in [Ladder::X, Ladder::Y] {
            if let Some(rep) = t.ok(&ctx, ladder_check(&m, which)) {
                t.report(&ctx, &rep);
            }
        }
        if let Some(rep) = t.ok(&ctx, quotient_check(&m)) {
            t.report(&ctx, &rep);
        }
        if p.parity() == Parity::Even {
            if let Some(rep) = t.ok(&ctx, w_basis_check(&m)) {
                t.report(&ctx, &rep);
            }
        }
    }
}

fn oracle(t: &mut Tally, cfg: &SuiteConfig) {
    let mut s = cfg.sampler(3, two());
    let n = cfg.count(200);
    let mut samples: Vec<(ParamQuadruple<Rational>, bool)> = structural().into_iter().map(|p| (p, false)).collect();
    samples.extend(structural_reducible().into_iter().map(|p| (p, true)));
    for (parity, ds) in [(Parity::Even, EVEN_DS_5), (Parity::Odd, ODD_DS_4)] {
        let mut adversarial = 0;
        for i in 0..n {
            let d = ds[i % ds.len()];
            let p = if i % 4 == 3 { s.adversarial(parity, d) } else { None };
            match p {
                Some(p) => {
                    adversarial += 1;
                    samples.push((p, true));
                }
                None => samples.push((s.sample(parity, d), false)),
            }
        }
        if cfg.grid.is_none() {
            t.check(adversarial >= MIN_ADVERSARIAL, || {
                format!("{parity}: only {adversarial} adversarial samples")
            });
        }
    }
    for (p, adversarial) in samples {
        t.samples += 1;
        let ctx = label(&p);
        if adversarial {
            let v = criterion_violations(&p);
            t.check(v.len() == 1, || format!("{ctx}: adversarial sample violates {v:?}"));
        }
        let Some(m) = t.ok(&ctx, construct(&p)) else { continue };
        let (Some(c), Some(b)) = (t.ok(&ctx, criterion(&p)), t.ok(&ctx, burnside_irreducible(&m))) else {
            continue;
        };
        t.check(c == b, || format!("{ctx}: criterion {c} but Burnside {b}"));
    }
}

fn lmatrix(t: &mut Tally, cfg: &SuiteConfig) {
    let mut s = cfg.sampler(4, two());
    let n = cfg.count(20);
    let mut samples = structural();
    samples.extend(structural_reducible());
    for (parity, ds) in [(Parity::Even, EVEN_DS_5), (Parity::Odd, ODD_DS_4)] {
        for i in 0..n {
            let d = ds[i % ds.len()];
            let adv = if i % 3 == 2 { s.adversarial(parity, d) } else { None };
            samples.push(adv.unwrap_or_else(|| s.sample(parity, d)));
        }
    }
    for p in samples {
        t.samples += 1;
        let ctx = label(&p);
        let Some(holds) = t.ok(&ctx, criterion(&p)) else { continue };
        let Some(routes) = t.ok(&ctx, l_matrix_all_routes(&p)) else { continue };
        let closed = routes.iter().any(|l| l.route == Route::ClosedForm);
        let want_closed = p.parity() == Parity::Even || holds;
        t.check(closed == want_closed, || format!("{ctx}: closed-form route present = {closed}"));
        t.check(routes.len() >= 2, || format!("{ctx}: only {} routes ran", routes.len()));
        let l = &routes[0];
        t.check(l.is_lower_triangular(), || format!("{ctx}: L has nonzero entries above the diagonal"));
        let diag = l.diagonal();
        if want_closed {
            t.check(diag == l_matrix_diagonal(&p), || format!("{ctx}: diagonal differs from its product formula"));
        }
        let nonvanishing = diag.iter().all(|x| !x.is_zero());
        t.check(nonvanishing == holds, || {
            format!("{ctx}: diagonal nonvanishing = {nonvanishing} but criterion = {holds}")
        });
    }
}

fn expect_found(t: &mut Tally, ctx: &str, a: &ModuleRep<Rational>, b: &ModuleRep<Rational>) {
    match t.ok(ctx, find_intertwiner(a, b)) {
        Some(IntertwinerOutcome::Found(m)) => t.check(intertwines(&m, a, b), || format!("{ctx}: bad certificate")),
        Some(other) => t.fail(format!("{ctx}: expected an intertwiner, got {other:?}")),
        None => {}
    }
}

fn expect_none(t: &mut Tally, ctx: &str, a: &ModuleRep<Rational>, b: &ModuleRep<Rational>) {
    if let Some(out) = t.ok(ctx, find_intertwiner(a, b)) {
        t.check(out == IntertwinerOutcome::None, || format!("{ctx}: expected no intertwiner, got {out:?}"));
    }
}

fn isomorphisms(t: &mut Tally, cfg: &SuiteConfig) {
    let mut s = cfg.sampler(5, two());
    let n = cfg.count(20);
    let fixed = structural();
    let mut even: Vec<_> = fixed.iter().filter(|p| p.parity() == Parity::Even).cloned().collect();
    let mut odd: Vec<_> = fixed.iter().filter(|p| p.parity() == Parity::Odd).cloned().collect();
    even.extend((0..n).map(|i| s.irreducible(Parity::Even, EVEN_DS_5[i % 3])));
    odd.extend((0..n).map(|i| s.irreducible(Parity::Odd, ODD_DS_4[i % 3])));

    for (idx, p) in even.iter().enumerate() {
        t.samples += 1;
        let ctx = label(p);
        let Some(a) = t.ok(&ctx, make_e(p)) else { continue };
        for j in 0..3 {
            let mut signs = [1i8; 3];
            signs[j] = -1;
            let Some(b) = t.ok(&ctx, orbit_act(p, SignTriple::new(signs)).and_then(|q| make_e(&q))) else {
                continue;
            };
            expect_found(t, &format!("{ctx} vs k{} inverted", j + 1), &a, &b);
        }
        for e in TwistElement::all() {
            let c = format!("{ctx} vs own twist {e}");
            if e == TwistElement::IDENTITY {
                expect_found(t, &c, &a, &a.twisted(e));
            } else {
                expect_none(t, &c, &a, &a.twisted(e));
            }
        }
        // Injectivity: another sample of the same d in a different orbit.
        if let Some(other) = even[idx + 1..].iter().find(|o| o.d() == p.d()) {
            let (Some(c1), Some(c2)) = (t.ok(&ctx, canonical_orbit_rep(p)), t.ok(&ctx, canonical_orbit_rep(other)))
            else {
                continue;
            };
            if c1 != c2 {
                if let Some(b) = t.ok(&ctx, make_e(other)) {
                    expect_none(t, &format!("{ctx} vs {}", label(other)), &a, &b);
                }
            }
        }
    }

    for (idx, p) in odd.iter().enumerate() {
        t.samples += 1;
        let ctx = label(p);
        let Some(a) = t.ok(&ctx, make_o(p)) else { continue };
        for shift in 1..4usize {
            let k: [Rational; 4] = std::array::from_fn(|i| p.k()[(i + shift) % 4].clone());
            let e = TwistElement::new(4 - shift as i64);
            let Some(b) = t.ok(&ctx, p.with_k(k).and_then(|q| make_o(&q))) else { continue };
            expect_found(t, &format!("{ctx} vs rotation {shift} twisted by {e}"), &a, &b.twisted(e));
        }
        let Some(fp) = t.ok(&ctx, det_fingerprint(&a)) else { continue };
        let mut others: Vec<ModuleRep<Rational>> = TwistElement::all()
            .into_iter()
            .filter(|e| *e != TwistElement::IDENTITY)
            .map(|e| a.twisted(e))
            .collect();
        if let Some(o) = odd[idx + 1..].iter().find(|o| o.d() == p.d()) {
            if let Some(b) = t.ok(&ctx, make_o(o)) {
                others.push(b);
            }
        }
        for b in others {
            let Some(fb) = t.ok(&ctx, det_fingerprint(&b)) else { continue };
            if fb != fp {
                expect_none(t, &format!("{ctx} vs determinant-distinct {}", b.label), &a, &b);
            }
        }
    }
}

fn round_trip(t: &mut Tally, cfg: &SuiteConfig) {
    let mut s = cfg.sampler(6, two());
    let n = cfg.count(50);
    let mut samples = structural();
    samples.extend((0..n).map(|i| s.irreducible(Parity::Even, EVEN_DS_5[i % 3])));
    samples.extend((0..n).map(|i| s.irreducible(Parity::Odd, ODD_DS_4[i % 3])));
    for p in samples {
        t.samples += 1;
        let ctx = label(&p);
        let Some(m) = t.ok(&ctx, construct(&p)) else { continue };
        match p.parity() {
            Parity::Even => {
                let Some(canon) = t.ok(&ctx, canonical_orbit_rep(&p)) else { continue };
                for e in TwistElement::all() {
                    let me = m.twisted(e);
                    if let Some(res) = t.ok(&format!("{ctx} twist {e}"), classify(&me)) {
                        t.check(res.twist == e && res.params == canon, || {
                            format!("{ctx} twist {e}: recovered twist {} params {}", res.twist, label(&res.params))
                        });
                        t.check(intertwines(&res.certificate, &me, &make_e(&canon).unwrap().twisted(e)), || {
                            format!("{ctx} twist {e}: certificate does not intertwine")
                        });
                    }
                }
            }
            Parity::Odd => {
                if let Some(res) = t.ok(&ctx, classify(&m)) {
                    t.check(res.twist == TwistElement::IDENTITY && res.params == p, || {
                        format!("{ctx}: recovered {}", label(&res.params))
                    });
                    t.check(intertwines(&res.certificate, &m, &m), || format!("{ctx}: certificate does not intertwine"));
                }
            }
        }
    }
}

fn symbolic(t: &mut Tally, cfg: &SuiteConfig) {
    let fixed = structural_formal();
    let s = || cfg.sampler(8, RatFun::q());
    relations(t, cfg, &mut s(), &EVEN_DS_3, &ODD_DS_2, 12, &fixed);
    characters(t, cfg, &mut s(), &EVEN_DS_3, &ODD_DS_2, 12, &fixed);
    universal(t, cfg, &mut s(), &EVEN_DS_3, &ODD_DS_2, 4, &fixed);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn structural_only() -> SuiteConfig {
        SuiteConfig {
            grid: Some(0),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn structural_checks_pass() {
        let cfg = structural_only();
        for o in run_suite(&cfg) {
            assert!(o.passed, "{}: {:?}", o.line(), o.failures);
            assert!(o.checks > 0, "{}", o.line());
        }
    }

    #[test]
    fn small_grid_is_reproducible() {
        let cfg = SuiteConfig {
            grid: Some(3),
            ..SuiteConfig::default()
        };
        let a = run_criterion(3, &cfg);
        let b = run_criterion(3, &cfg);
        assert!(a.passed, "{:?}", a.failures);
        assert_eq!(a, b);
    }
}
