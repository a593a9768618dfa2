//! Seeded verification suites: `product`, `bialgebra` and `hopf`.

use std::fmt;
use std::str::FromStr;

use crate::base::BaseInstance;
use crate::error::{Error, Result};
use crate::hopf::{square_operator, CheckOutcome, HopfContext};
use crate::operators::{check_mrb, free_operator};
use crate::product::MrbContext;
use crate::random::{random_element, rng};
use crate::rational::Rational;
use crate::stuffle::{closed_form_trivial, stuffle_product};
use crate::tensor::MrbElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Product,
    Bialgebra,
    Hopf,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(Suite::Product),
            "bialgebra" => Ok(Suite::Bialgebra),
            "hopf" => Ok(Suite::Hopf),
            other => Err(Error::Parse(format!(
                "unknown suite `{other}` (expected product, bialgebra or hopf)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Product => "product",
            Suite::Bialgebra => "bialgebra",
            Suite::Hopf => "hopf",
        })
    }
}

/// Sample budgets; the defaults are the full sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { seed, samples: 200 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{verdict}")
    }
}

pub fn run(suite: Suite, cfg: SuiteConfig) -> SuiteReport {
    let checks = match suite {
        Suite::Product => product_checks(cfg),
        Suite::Bialgebra => bialgebra_checks(cfg),
        Suite::Hopf => hopf_checks(cfg),
    };
    SuiteReport {
        suite,
        seed: cfg.seed,
        checks,
    }
}

fn bases() -> [BaseInstance; 2] {
    [BaseInstance::Trivial, BaseInstance::polynomial(["x", "y"])]
}

fn weights() -> [Rational; 3] {
    [Rational::from(-1), Rational::zero(), Rational::from(2)]
}

/// Recursive and stuffle products agree on random pairs.
pub fn engine_equivalence(samples: usize, seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("recursive = stuffle");
    for (i, inst) in bases().into_iter().enumerate() {
        for (j, kappa) in weights().into_iter().enumerate() {
            let ctx = MrbContext::new(inst.clone(), kappa);
            let mut r = rng(seed ^ ((i as u64) << 8 | j as u64));
            for _ in 0..samples {
                let a = random_element(&mut r, &inst, 4, 2);
                let b = random_element(&mut r, &inst, 4, 2);
                let rec = ctx.diamond(&a, &b).unwrap();
                let stu = stuffle_product(&ctx, &a, &b).unwrap();
                out.record(rec == stu, || {
                    format!(
                        "{inst}, kappa = {}: ({a}) * ({b}) differs by {}",
                        ctx.kappa(),
                        rec.sub(&stu).unwrap()
                    )
                });
            }
        }
    }
    out
}

/// Associativity and commutativity of `⋄`.
pub fn ring_laws(samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut assoc = CheckOutcome::new("associativity");
    let mut comm = CheckOutcome::new("commutativity");
    for (i, inst) in bases().into_iter().enumerate() {
        for (j, kappa) in weights().into_iter().enumerate() {
            let ctx = MrbContext::new(inst.clone(), kappa);
            let mut r = rng(seed.wrapping_add(1000) ^ ((i as u64) << 8 | j as u64));
            for _ in 0..samples {
                let a = random_element(&mut r, &inst, 3, 2);
                let b = random_element(&mut r, &inst, 3, 2);
                let c = random_element(&mut r, &inst, 3, 2);
                let ab = ctx.diamond(&a, &b).unwrap();
                let ba = ctx.diamond(&b, &a).unwrap();
                comm.record(ab == ba, || {
                    format!("{inst}: ({a}) * ({b}) != ({b}) * ({a})")
                });
                let left = ctx.diamond(&ab, &c).unwrap();
                let right = ctx.diamond(&a, &ctx.diamond(&b, &c).unwrap()).unwrap();
                assoc.record(left == right, || {
                    format!(
                        "{inst}: (ab)c - a(bc) = {} for a = {a}, b = {b}, c = {c}",
                        left.sub(&right).unwrap()
                    )
                });
            }
        }
    }
    vec![assoc, comm]
}

/// The operator identity for `P` and for `id ⊗ P`.
pub fn operator_identities(samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut p = CheckOutcome::new("P_A identity");
    let mut sq = CheckOutcome::new("id(x)P_A identity on the square");
    for inst in bases() {
        for kappa in weights() {
            let ctx = MrbContext::new(inst.clone(), kappa);
            for (target, report) in [
                (&mut p, check_mrb(&free_operator(&ctx), samples, seed)),
                (
                    &mut sq,
                    check_mrb(&square_operator(&ctx), samples / 2, seed),
                ),
            ] {
                target.cases += report.samples;
                target.failures.extend(report.failures.iter().map(|w| {
                    format!(
                        "{inst}, kappa = {}: u = {}, v = {}, defect = {}",
                        ctx.kappa(),
                        w.u,
                        w.v,
                        w.defect
                    )
                }));
            }
        }
    }
    vec![p, sq]
}

/// `u_m ⋄ u_n` against the binomial formula, `0 ≤ m, n ≤ 6`.
pub fn closed_form(kappa: &Rational) -> CheckOutcome {
    let mut out = CheckOutcome::new(format!("closed form, kappa = {kappa}"));
    let ctx = MrbContext::new(BaseInstance::Trivial, kappa.clone());
    for m in 0..=6 {
        for n in 0..=6 {
            let got = ctx.diamond(&MrbElement::u(m), &MrbElement::u(n)).unwrap();
            let want = closed_form_trivial(m, n, kappa);
            out.record(got == want, || {
                format!("u_{m} * u_{n} = {got}, formula gives {want}")
            });
        }
    }
    out
}

fn product_checks(cfg: SuiteConfig) -> Vec<CheckOutcome> {
    let mut checks = vec![engine_equivalence(cfg.samples, cfg.seed)];
    checks.extend(ring_laws(cfg.samples, cfg.seed));
    checks.extend(operator_identities(cfg.samples, cfg.seed));
    checks.push(closed_form(&Rational::from(-1)));
    checks
}

fn hopf_bases() -> [(BaseInstance, usize); 2] {
    [
        (BaseInstance::Trivial, 5),
        (BaseInstance::polynomial(["x"]), 4),
    ]
}

fn relabel(mut c: CheckOutcome, inst: &BaseInstance) -> CheckOutcome {
    c.name = format!("{} [{inst}]", c.name);
    c
}

fn bialgebra_checks(cfg: SuiteConfig) -> Vec<CheckOutcome> {
    let samples = cfg.samples.div_ceil(2);
    let mut checks = Vec::new();
    for (inst, deg) in hopf_bases() {
        let h = HopfContext::new(inst.clone(), Rational::one()).expect("bialgebra base");
        for c in h.verify_bialgebra(samples, cfg.seed, deg) {
            checks.push(relabel(c, &inst));
        }
        checks.push(relabel(h.check_cocycle(samples, cfg.seed, deg), &inst));
    }
    checks
}

fn hopf_checks(cfg: SuiteConfig) -> Vec<CheckOutcome> {
    let samples = cfg.samples.div_ceil(2);
    let mut checks = Vec::new();
    for (inst, deg) in hopf_bases() {
        let h = HopfContext::new(inst.clone(), Rational::one()).expect("bialgebra base");
        checks.push(relabel(h.check_antipode(deg), &inst));
        let filtration_deg = if inst == BaseInstance::Trivial {
            6
        } else {
            deg
        };
        checks.push(relabel(
            h.check_filtration(samples, cfg.seed, filtration_deg),
            &inst,
        ));

        let mut hom = CheckOutcome::new("antipode multiplicative");
        let mut r = rng(cfg.seed.wrapping_add(7));
        for _ in 0..samples.min(30) {
            let a = crate::random::random_element_of_degree(&mut r, &inst, 3, 2);
            let b = crate::random::random_element_of_degree(&mut r, &inst, 3, 2);
            let lhs = h.antipode(&h.mrb().diamond(&a, &b).unwrap()).unwrap();
            let rhs = h
                .mrb()
                .diamond(&h.antipode(&a).unwrap(), &h.antipode(&b).unwrap())
                .unwrap();
            hom.record(lhs == rhs, || {
                format!(
                    "a = {a}, b = {b}: S(ab) - S(a)S(b) = {}",
                    lhs.sub(&rhs).unwrap()
                )
            });
        }
        checks.push(relabel(hom, &inst));
    }
    checks
}
