//! Verification sweeps with line-oriented reports.
//!
//! Every suite is a list of independent cases indexed `0..n`. Cases are
//! split into fixed blocks that run on the current rayon pool; block results
//! are merged in block order, so reports do not depend on the worker count.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, SquareClass};
use crate::group::{BruhatForm, TwistedGroup};
use crate::matrix::Matrix;
use crate::ree::Ree;
use crate::suzuki::Suzuki;

const BLOCK: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every case in the parameter space.
    Exhaustive,
    /// `count` cases drawn with a seeded generator.
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Suzuki cell identities, one case per ε.
    Lemma1,
    /// Ree cell identities, one case per λ covering all four identities.
    Lemma2,
    /// Normal form round trip; exhaustive runs also hash every element.
    Bruhat,
    /// Four-factor round trip with the `U, U⁻, U, U⁻` pattern.
    Factor,
    /// Closure of the generating set against the enumerated group.
    Closure,
    /// Every Suzuki element preserves the symplectic form.
    Form,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Bruhat,
        Suite::Factor,
        Suite::Closure,
        Suite::Form,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Bruhat => "bruhat",
            Suite::Factor => "factor",
            Suite::Closure => "closure",
            Suite::Form => "form",
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
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: Suite,
    pub q: u64,
    pub cases: u64,
    pub failures: u64,
    /// Inputs and matrices of the first failing case.
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SUITE {} q={} cases={} failures={} ms={}",
            self.suite,
            self.q,
            self.cases,
            self.failures,
            self.elapsed.as_millis()
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\nWITNESS {}", w.trim_end())?;
        }
        Ok(())
    }
}

/// Failure count and first witness over `0..n`.
fn sweep<F>(n: u64, check: F) -> (u64, Option<String>)
where
    F: Fn(u64) -> Option<String> + Sync,
{
    let blocks = n.div_ceil(BLOCK);
    let results: Vec<(u64, Option<String>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut failures = 0;
            let mut first = None;
            for i in b * BLOCK..((b + 1) * BLOCK).min(n) {
                if let Some(w) = check(i) {
                    failures += 1;
                    first.get_or_insert_with(|| format!("case={i} {w}"));
                }
            }
            (failures, first)
        })
        .collect();
    results
        .into_iter()
        .fold((0, None), |(n, w), (bn, bw)| (n + bn, w.or(bw)))
}

fn run<F>(suite: Suite, q: u64, cases: u64, check: F) -> VerificationReport
where
    F: Fn(u64) -> Option<String> + Sync,
{
    let start = Instant::now();
    let (failures, witness) = sweep(cases, check);
    VerificationReport {
        suite,
        q,
        cases,
        failures,
        witness,
        elapsed: start.elapsed(),
    }
}

/// The generator for case `index` of a sampled run.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Fails with `TooLarge` unless whole-group sweeps are allowed for `g`.
pub fn check_exhaustive<G: TwistedGroup>(g: &G) -> Result<()> {
    let q = g.order_q();
    if q > G::EXHAUSTIVE_MAX_Q {
        return Err(Error::TooLarge(format!(
            "{} q={q} has {} elements; exhaustive runs need q <= {}",
            G::NAME,
            g.group_order(),
            G::EXHAUSTIVE_MAX_Q
        )));
    }
    Ok(())
}

/// Nonzero field element for case `index`: the `index`-th one in exhaustive
/// mode, a random one otherwise.
fn nonzero_case<G: TwistedGroup>(g: &G, mode: Mode, index: u64) -> FieldElement {
    let f = g.field();
    match mode {
        Mode::Exhaustive => f.from_int(index + 1).expect("below q"),
        Mode::Sample { seed, .. } => f.random_nonzero(&mut case_rng(seed, index)),
    }
}

fn nonzero_count(q: u64, mode: Mode) -> u64 {
    match mode {
        Mode::Exhaustive => q - 1,
        Mode::Sample { count, .. } => count,
    }
}

fn form_case<G: TwistedGroup>(g: &G, mode: Mode, index: u64) -> BruhatForm<G::Params> {
    match mode {
        Mode::Exhaustive => g.form_at(index),
        Mode::Sample { seed, .. } => g.random_form(&mut case_rng(seed, index)),
    }
}

fn element_count<G: TwistedGroup>(g: &G, mode: Mode) -> Result<u64> {
    match mode {
        Mode::Exhaustive => {
            check_exhaustive(g)?;
            Ok(g.indexable_order().expect("exhaustive groups are small"))
        }
        Mode::Sample { count, .. } => Ok(count),
    }
}

fn pair_witness(label: String, lhs: &Matrix, rhs: &Matrix) -> String {
    format!("{label}\nlhs\n{}rhs\n{}", lhs.to_text(), rhs.to_text())
}

fn int(g: &impl TwistedGroup, x: FieldElement) -> u64 {
    g.field().to_int(x)
}

/// Weyl-cell and torus-cell identities for every ε, plus `g₁[0][0] = ε`.
pub fn lemma1(g: &Suzuki, mode: Mode) -> VerificationReport {
    let q = g.order_q();
    run(Suite::Lemma1, q, nonzero_count(q, mode), |i| {
        let eps = nonzero_case(g, mode, i);
        let label = format!("suzuki q={q} eps={}", int(g, eps));
        let (lhs, rhs) = match g.weyl_cell_identity(eps) {
            Ok(pair) => pair,
            Err(e) => return Some(format!("{label} weyl cell: {e}")),
        };
        if lhs != rhs {
            return Some(pair_witness(format!("{label} weyl cell"), &lhs, &rhs));
        }
        let (lhs, rhs) = match g.torus_cell_identity(eps) {
            Ok(pair) => pair,
            Err(e) => return Some(format!("{label} torus cell: {e}")),
        };
        if lhs != rhs {
            return Some(pair_witness(format!("{label} torus cell"), &lhs, &rhs));
        }
        let corner = g.torus_g1(eps).get(0, 0);
        (corner != eps).then(|| format!("{label} g1[0][0]={}", int(g, corner)))
    })
}

/// The four Ree cell identities (weyl and torus cell, ε = ±λ²) for every λ.
pub fn lemma2(g: &Ree, mode: Mode) -> VerificationReport {
    let q = g.order_q();
    run(Suite::Lemma2, q, nonzero_count(q, mode), |i| {
        let lambda = nonzero_case(g, mode, i);
        for class in [SquareClass::Square, SquareClass::MinusSquare] {
            let label = format!("ree q={q} lambda={} {class:?}", int(g, lambda));
            let checks = [
                ("weyl cell", g.weyl_cell_identity(lambda, class)),
                ("torus cell", g.torus_cell_identity(lambda, class)),
            ];
            for (cell, result) in checks {
                match result {
                    Ok((lhs, rhs)) if lhs == rhs => {}
                    Ok((lhs, rhs)) => {
                        return Some(pair_witness(format!("{label} {cell}"), &lhs, &rhs))
                    }
                    Err(e) => return Some(format!("{label} {cell}: {e}")),
                }
            }
        }
        None
    })
}

/// `bruhat(rebuild(form)) = form`. Exhaustive runs also check that the
/// enumeration yields `group_order()` distinct matrices.
pub fn bruhat<G: TwistedGroup>(g: &G, mode: Mode) -> Result<VerificationReport> {
    let cases = element_count(g, mode)?;
    let mut report = run(Suite::Bruhat, g.order_q(), cases, |i| {
        let form = form_case(g, mode, i);
        let shown = g.describe_form(&form);
        let m = match g.rebuild(&form) {
            Ok(m) => m,
            Err(e) => return Some(format!("{shown}: {e}")),
        };
        match g.bruhat(&m) {
            Ok(back) if back == form => None,
            Ok(back) => Some(format!(
                "{shown} decomposed as {}\n{}",
                g.describe_form(&back),
                m.to_text()
            )),
            Err(e) => Some(format!("{shown}: {e}\n{}", m.to_text())),
        }
    });
    if mode == Mode::Exhaustive {
        let start = Instant::now();
        let distinct = distinct_elements(g).len() as u64;
        if distinct != cases {
            report.failures += 1;
            report
                .witness
                .get_or_insert_with(|| format!("{distinct} distinct matrices, expected {cases}"));
        }
        report.elapsed += start.elapsed();
    }
    Ok(report)
}

/// Every element of `g`, hashed.
pub fn distinct_elements<G: TwistedGroup>(g: &G) -> HashSet<Matrix> {
    g.elements().collect()
}

/// `factor(g)` multiplies back to `g` with the `U, U⁻, U, U⁻` pattern.
pub fn factor<G: TwistedGroup>(g: &G, mode: Mode) -> Result<VerificationReport> {
    let cases = element_count(g, mode)?;
    Ok(run(Suite::Factor, g.order_q(), cases, |i| {
        let form = form_case(g, mode, i);
        let m = g.rebuild(&form).ok()?;
        match g.factor(&m) {
            Ok(fac) if g.check_factorization(&m, &fac) => None,
            Ok(fac) => Some(format!(
                "{}\n{}",
                g.describe_form(&form),
                fac.to_text(G::NAME)
            )),
            Err(e) => Some(format!("{}: {e}\n{}", g.describe_form(&form), m.to_text())),
        }
    }))
}

/// Breadth-first closure of the generating set under right multiplication.
pub fn closure_of(generators: &[Matrix]) -> HashSet<Matrix> {
    let mut seen = HashSet::new();
    let mut frontier: Vec<Matrix> = generators.to_vec();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in generators {
                let y = x * s;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// The closure of `generators()` has `group_order()` elements and contains
/// every enumerated element. Always exhaustive.
pub fn closure<G: TwistedGroup>(g: &G) -> Result<VerificationReport> {
    check_exhaustive(g)?;
    let start = Instant::now();
    let closed = closure_of(&g.generators());
    let order = g.indexable_order().expect("exhaustive groups are small");
    let mut report = run(Suite::Closure, g.order_q(), order, |i| {
        let form = g.form_at(i);
        let m = g.rebuild(&form).ok()?;
        (!closed.contains(&m))
            .then(|| format!("{} not generated\n{}", g.describe_form(&form), m.to_text()))
    });
    if closed.len() as u64 != order {
        report.failures += 1;
        report.witness.get_or_insert_with(|| {
            format!("closure has {} elements, expected {order}", closed.len())
        });
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Every element preserves `Φ = (δ_{i,−j})`.
pub fn form(g: &Suzuki, mode: Mode) -> Result<VerificationReport> {
    let cases = element_count(g, mode)?;
    Ok(run(Suite::Form, g.order_q(), cases, |i| {
        let form = form_case(g, mode, i);
        let m = g.rebuild(&form).ok()?;
        match m.preserves_symplectic_form() {
            Ok(true) => None,
            _ => Some(format!("{}\n{}", g.describe_form(&form), m.to_text())),
        }
    }))
}

/// A group handle for suites that accept either family.
pub enum AnyGroup {
    Suzuki(Suzuki),
    Ree(Ree),
}

impl AnyGroup {
    pub fn name(&self) -> &'static str {
        match self {
            AnyGroup::Suzuki(_) => Suzuki::NAME,
            AnyGroup::Ree(_) => Ree::NAME,
        }
    }

    /// Runs one suite; `Err` when the suite does not apply to this group or
    /// an exhaustive run is too large.
    pub fn run_suite(&self, suite: Suite, mode: Mode) -> Result<VerificationReport> {
        let unsupported =
            || Error::Parse(format!("suite {suite} does not apply to {}", self.name()));
        match (self, suite) {
            (AnyGroup::Suzuki(g), Suite::Lemma1) => Ok(lemma1(g, mode)),
            (AnyGroup::Ree(g), Suite::Lemma2) => Ok(lemma2(g, mode)),
            (AnyGroup::Suzuki(g), Suite::Form) => form(g, mode),
            (AnyGroup::Suzuki(g), Suite::Bruhat) => bruhat(g, mode),
            (AnyGroup::Ree(g), Suite::Bruhat) => bruhat(g, mode),
            (AnyGroup::Suzuki(g), Suite::Factor) => factor(g, mode),
            (AnyGroup::Ree(g), Suite::Factor) => factor(g, mode),
            (AnyGroup::Suzuki(g), Suite::Closure) => closure(g),
            (AnyGroup::Ree(g), Suite::Closure) => closure(g),
            _ => Err(unsupported()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma3".parse::<Suite>().is_err());
    }

    #[test]
    fn report_line() {
        let r = VerificationReport {
            suite: Suite::Bruhat,
            q: 8,
            cases: 29120,
            failures: 0,
            witness: None,
            elapsed: Duration::from_millis(12),
        };
        assert_eq!(
            r.to_string(),
            "SUITE bruhat q=8 cases=29120 failures=0 ms=12"
        );
    }

    #[test]
    fn sweep_merges_in_block_order() {
        let (n, w) = sweep(1000, |i| (i % 300 == 299).then(|| i.to_string()));
        assert_eq!((n, w.as_deref()), (3, Some("case=299 299")));
    }

    #[test]
    fn small_suites_pass() {
        let sz = Suzuki::with_order(2).unwrap();
        assert_eq!(lemma1(&sz, Mode::Exhaustive).cases, 1);
        for suite in [
            Suite::Lemma1,
            Suite::Bruhat,
            Suite::Factor,
            Suite::Closure,
            Suite::Form,
        ] {
            let r = AnyGroup::Suzuki(sz.clone())
                .run_suite(suite, Mode::Exhaustive)
                .unwrap();
            assert!(r.passed(), "{r}");
        }
        let ree = Ree::with_order(3).unwrap();
        let r = lemma2(&ree, Mode::Exhaustive);
        assert_eq!((r.cases, r.failures), (2, 0));
    }

    #[test]
    fn oversize_and_mismatched_requests() {
        let g = AnyGroup::Suzuki(Suzuki::with_order(32).unwrap());
        assert!(matches!(
            g.run_suite(Suite::Bruhat, Mode::Exhaustive),
            Err(Error::TooLarge(_))
        ));
        assert!(g.run_suite(Suite::Lemma2, Mode::Exhaustive).is_err());
        let sample = Mode::Sample { count: 50, seed: 1 };
        assert!(g.run_suite(Suite::Factor, sample).unwrap().passed());
    }
}
